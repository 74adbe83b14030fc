//! Brute-force invariant spaces by exact linear algebra, the generator
//! families of each algebra, relation-ideal checks through substitution
//! kernels, and per-degree generation verdicts.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liesuper::{build_family, BilinearForm, FamilyTag, LieFamily, MatrixElement};
use crate::linalg::{RatVec, RowReducer};
use crate::superalg::{
    p_t, pair_product, AlgebraKind, Family, Generator, Monomial, PairFamily, Polynomial,
};
use crate::supercomb::{
    enumerate_semistandard, self_pairing_sign_exponent, sequence_parity, IndexRange, Parity, SuperIndex,
    YoungTableau,
};
use crate::symgroup::{SymmetrizerVariant, DEFAULT_SYMMETRIZER_CAP};
use crate::tensorspace::{all_sequences, c_tilde, tilde, SlSetup, TensorElement};

/// Environment variable overriding the default monomial cap.
pub const MAX_MONOMIALS_ENV: &str = "SUPERINV_MAX_MONOMIALS";

/// Resource limits for the oracle computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_monomials: usize,
    pub max_entries: usize,
    pub symmetrizer: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_monomials: 20_000, max_entries: 2_000_000, symmetrizer: DEFAULT_SYMMETRIZER_CAP }
    }
}

impl Caps {
    /// Defaults, with the monomial cap taken from the environment if set.
    pub fn from_env() -> Self {
        let mut c = Self::default();
        if let Some(v) = std::env::var(MAX_MONOMIALS_ENV).ok().and_then(|s| s.parse().ok()) {
            c.max_monomials = v;
        }
        c
    }
}

/// Assigns column indices to monomials on demand.
#[derive(Debug, Default, Clone)]
pub struct MonomialIndex {
    map: HashMap<Monomial, usize>,
    list: Vec<Monomial>,
}

impl MonomialIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, m: &Monomial) -> usize {
        if let Some(&i) = self.map.get(m) {
            return i;
        }
        let i = self.list.len();
        self.map.insert(m.clone(), i);
        self.list.push(m.clone());
        i
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.map.get(m).copied()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.list[i]
    }

    pub fn vectorize(&mut self, p: &Polynomial) -> RatVec {
        p.terms().iter().map(|(m, c)| (self.index(m), c.clone())).collect()
    }

    pub fn polynomial(&self, v: &RatVec) -> Polynomial {
        let mut p = Polynomial::zero();
        for (&i, c) in v {
            p.add_term(self.list[i].clone(), c.clone());
        }
        p
    }
}

/// Span of polynomials, kept in reduced echelon form.
#[derive(Debug, Default, Clone)]
pub struct PolySpan {
    index: MonomialIndex,
    red: RowReducer,
}

impl PolySpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: &Polynomial) -> bool {
        let v = self.index.vectorize(p);
        self.red.insert_rational(&v)
    }

    pub fn contains(&mut self, p: &Polynomial) -> bool {
        let v = self.index.vectorize(p);
        self.red.contains(&v)
    }

    pub fn rank(&self) -> usize {
        self.red.rank()
    }
}

pub fn span_rank(polys: &[Polynomial]) -> usize {
    let mut s = PolySpan::new();
    for p in polys {
        s.insert(p);
    }
    s.rank()
}

/// A family acting on a polynomial algebra, optionally together with the
/// reflection `e_n ↦ -e_n` of the last even basis vector (the extension
/// under which the osp scalar products are the only invariants).
#[derive(Debug, Clone)]
pub struct InvariantSetting {
    pub family: LieFamily,
    pub algebra: AlgebraKind,
    pub reflection: bool,
}

impl InvariantSetting {
    /// `𝔄^{p,q}_{k,l} = S(U⊗V ⊕ V*⊗W)` with `U = (k|l)`, `W = (p|q)`.
    pub fn mixed(tag: FamilyTag, v: IndexRange, u: IndexRange, w: IndexRange) -> Result<Self> {
        Ok(Self { family: build_family(tag, v)?, algebra: AlgebraKind::Mixed { v, u, w }, reflection: false })
    }

    /// `S(V*⊗W)`, the reduced setting for the form-preserving families.
    pub fn covariant(tag: FamilyTag, v: IndexRange, w: IndexRange) -> Result<Self> {
        Self::mixed(tag, v, IndexRange::new(0, 0), w)
    }

    pub fn with_reflection(mut self) -> Self {
        self.reflection = true;
        self
    }

    pub fn v(&self) -> IndexRange {
        self.family.range
    }

    fn reflected_index(&self) -> Option<SuperIndex> {
        (self.reflection && self.v().even > 0).then(|| SuperIndex::even(self.v().even as u32))
    }

    /// Sign of the reflection on a monomial.
    fn reflection_sign(&self, m: &Monomial) -> i32 {
        let Some(r) = self.reflected_index() else { return 1 };
        let count = m.factors().iter().filter(|g| v_index(g) == Some(r)).count();
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Whether every family element (and the reflection, if present)
    /// fixes `p`.
    pub fn is_invariant(&self, p: &Polynomial) -> bool {
        if self.family.basis.iter().any(|x| !x.act_on_polynomial(p).is_zero()) {
            return false;
        }
        p.terms().keys().all(|m| self.reflection_sign(m) == 1)
    }
}

fn v_index(g: &Generator) -> Option<SuperIndex> {
    match g.family {
        Family::Uv => Some(g.col),
        Family::Vw => Some(g.row),
        _ => None,
    }
}

/// Diagonal elements spanning `g ∩ diag`.
pub fn diagonal_part(family: &LieFamily) -> Vec<MatrixElement> {
    let idx = family.range.indices();
    let mut eqs: BTreeMap<(SuperIndex, SuperIndex), RatVec> = BTreeMap::new();
    for (k, x) in family.basis.iter().enumerate() {
        for (&(r, c), v) in x.entries() {
            if r != c {
                eqs.entry((r, c)).or_default().insert(k, v.clone());
            }
        }
    }
    let mut red = RowReducer::new();
    for row in eqs.values() {
        red.insert_rational(row);
    }
    let _ = idx;
    red.nullspace(family.basis.len())
        .into_iter()
        .map(|v| {
            let mut h = MatrixElement::zero(family.range);
            for (k, c) in v {
                h = h.add(&family.basis[k].scale(&c));
            }
            h
        })
        .collect()
}

fn monomial_weight(h: &MatrixElement, m: &Monomial) -> BigRational {
    let mut w = BigRational::zero();
    for g in m.factors() {
        match g.family {
            Family::Uv => w += h.entry(g.col, g.col),
            Family::Vw => w -= h.entry(g.row, g.row),
            _ => {}
        }
    }
    w
}

/// Multiset of the indices the family does not touch: `U` rows and `W`
/// columns for the mixed algebra, all indices otherwise.
fn outer_content(m: &Monomial) -> Vec<(u8, SuperIndex)> {
    let mut c: Vec<(u8, SuperIndex)> = Vec::new();
    for g in m.factors() {
        match g.family {
            Family::Uv => c.push((0, g.row)),
            Family::Vw => c.push((1, g.col)),
            Family::Uw => {
                c.push((0, g.row));
                c.push((1, g.col));
            }
            Family::S2w | Family::E2w => {
                c.push((1, g.row));
                c.push((1, g.col));
            }
            Family::Custom(_) => c.push((2, g.row)),
        }
    }
    c.sort();
    c
}

/// The invariants of one degree.
#[derive(Debug, Clone)]
pub struct InvariantSpace {
    pub degree: usize,
    pub basis: Vec<Polynomial>,
    /// Monomials surviving the weight filter.
    pub candidates: usize,
    /// Nonzero entries of the stacked action matrices.
    pub entries: usize,
}

impl InvariantSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Exact nullspace of the stacked action of all family elements on the
/// degree-`d` monomials, restricted to zero weight for `g ∩ diag` and split
/// into blocks of fixed outer content.
pub fn invariant_space_bruteforce(setting: &InvariantSetting, degree: usize, caps: &Caps) -> Result<InvariantSpace> {
    let total = setting.algebra.count_monomials(degree);
    if total > caps.max_monomials {
        return Err(Error::CapExceeded { what: format!("degree-{degree} monomial basis"), needed: total, cap: caps.max_monomials });
    }
    let diag = diagonal_part(&setting.family);
    let mut blocks: BTreeMap<Vec<(u8, SuperIndex)>, Vec<Monomial>> = BTreeMap::new();
    let mut candidates = 0;
    for m in setting.algebra.monomials(degree) {
        if diag.iter().any(|h| !monomial_weight(h, &m).is_zero()) || setting.reflection_sign(&m) != 1 {
            continue;
        }
        candidates += 1;
        blocks.entry(outer_content(&m)).or_default().push(m);
    }
    let mut basis = Vec::new();
    let mut entries = 0usize;
    for mons in blocks.values() {
        let mut rows: HashMap<(usize, Monomial), RatVec> = HashMap::new();
        for (col, m) in mons.iter().enumerate() {
            let single = Polynomial::product(m.factors(), BigRational::one());
            for (xi, x) in setting.family.basis.iter().enumerate() {
                for (out, c) in x.act_on_polynomial(&single).terms() {
                    rows.entry((xi, out.clone())).or_default().insert(col, c.clone());
                    entries += 1;
                }
            }
        }
        if entries > caps.max_entries {
            return Err(Error::CapExceeded { what: "action matrix entries".into(), needed: entries, cap: caps.max_entries });
        }
        let mut red = RowReducer::new();
        let mut keys: Vec<&(usize, Monomial)> = rows.keys().collect();
        keys.sort();
        for k in keys {
            red.insert_rational(&rows[k]);
        }
        for v in red.nullspace(mons.len()) {
            let mut p = Polynomial::zero();
            for (c, x) in v {
                p.add_term(mons[c].clone(), x);
            }
            basis.push(p);
        }
    }
    Ok(InvariantSpace { degree, basis, candidates, entries })
}

/// Scalar products `(v_r^*, v_s) = Σ_i x_{ri} x^*_{is}` for `gl`/`sl`.
pub fn gl_scalar_products(v: IndexRange, u: IndexRange, w: IndexRange) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for r in u.indices() {
        for s in w.indices() {
            out.push(gl_scalar_product(v, r, s));
        }
    }
    out
}

pub fn gl_scalar_product(v: IndexRange, r: SuperIndex, s: SuperIndex) -> Polynomial {
    let mut p = Polynomial::zero();
    for i in v.indices() {
        p.add_assign(&Polynomial::product(&[Generator::uv(r, i), Generator::vw(i, s)], BigRational::one()));
    }
    p
}

/// `(v_s, v_t) = Σ_{a,b} ω_{ab} (-1)^{p(b)p(s)} x^*_{as} x^*_{bt}` for an
/// invariant form `ω`.
pub fn form_scalar_product(form: &BilinearForm, s: SuperIndex, t: SuperIndex) -> Polynomial {
    let mut p = Polynomial::zero();
    for (&(a, b), c) in form {
        let sign = if b.parity.is_odd() && s.parity.is_odd() { -c.clone() } else { c.clone() };
        p.add_assign(&Polynomial::product(&[Generator::vw(a, s), Generator::vw(b, t)], sign));
    }
    p
}

/// The pe scalar product exactly as printed:
/// `Σ_i (-1)^{p(s)} (x^*_{is} x^*_{īt} + x^*_{īs} x^*_{it})`.
pub fn pe_scalar_product_printed(v: IndexRange, s: SuperIndex, t: SuperIndex) -> Polynomial {
    let sg = if s.parity.is_odd() { -BigRational::one() } else { BigRational::one() };
    let mut p = Polynomial::zero();
    for i in 1..=v.even as u32 {
        let (e, o) = (SuperIndex::even(i), SuperIndex::odd(i));
        p.add_assign(&Polynomial::product(&[Generator::vw(e, s), Generator::vw(o, t)], sg.clone()));
        p.add_assign(&Polynomial::product(&[Generator::vw(o, s), Generator::vw(e, t)], sg.clone()));
    }
    p
}

/// All scalar products of the family over `s ≤ t` (osp, pe, spe) or over
/// `U × W` (gl, sl).
pub fn scalar_products(setting: &InvariantSetting) -> Result<Vec<Polynomial>> {
    match setting.algebra {
        AlgebraKind::Mixed { v, u, w } => match setting.family.tag {
            FamilyTag::Gl | FamilyTag::Sl => Ok(gl_scalar_products(v, u, w)),
            FamilyTag::Osp | FamilyTag::Pe | FamilyTag::Spe => {
                let form = setting.family.form().expect("form family");
                let idx = w.indices();
                let mut out = Vec::new();
                for (a, &s) in idx.iter().enumerate() {
                    for &t in &idx[a..] {
                        let p = form_scalar_product(&form, s, t);
                        if !p.is_zero() {
                            out.push(p);
                        }
                    }
                }
                Ok(out)
            }
        },
        _ => Err(Error::Unsupported("scalar products live in the mixed algebra".into())),
    }
}

/// All products of the generators with total degree `degree`.
pub fn generated_products(generators: &[Polynomial], degree: usize) -> Vec<Polynomial> {
    let gens: Vec<(usize, &Polynomial)> =
        generators.iter().filter(|g| !g.is_zero()).filter_map(|g| g.degree().map(|d| (d, g))).filter(|(d, _)| *d > 0).collect();
    let mut out = Vec::new();
    fn rec(gens: &[(usize, &Polynomial)], start: usize, left: usize, acc: Polynomial, out: &mut Vec<Polynomial>) {
        if left == 0 {
            if !acc.is_zero() {
                out.push(acc);
            }
            return;
        }
        for i in start..gens.len() {
            let (d, g) = gens[i];
            if d <= left {
                let next = acc.mul(g);
                if !next.is_zero() {
                    rec(gens, i, left - d, next, out);
                }
            }
        }
    }
    if degree == 0 {
        return vec![Polynomial::one()];
    }
    rec(&gens, 0, degree, Polynomial::one(), &mut out);
    out
}

/// A reduced basis of the span of the degree-`degree` products.
pub fn generated_subspace(generators: &[Polynomial], degree: usize) -> Vec<Polynomial> {
    let mut index = MonomialIndex::new();
    let mut red = RowReducer::new();
    for p in generated_products(generators, degree) {
        let v = index.vectorize(&p);
        red.insert_rational(&v);
    }
    red.rows()
        .map(|(_, row)| {
            let v: RatVec = row.iter().map(|(&c, x)| (c, BigRational::from_integer(x.clone()))).collect();
            index.polynomial(&v)
        })
        .collect()
}

/// Outcome of comparing the generated span with the oracle at one degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenerationVerdict {
    pub degree: usize,
    pub oracle_dim: usize,
    pub generated_dim: usize,
    pub equal: bool,
    /// All generated products are invariant (they lie in the oracle span).
    pub sound: bool,
    pub witness: Option<String>,
}

pub fn check_generation_at(
    setting: &InvariantSetting,
    generators: &[Polynomial],
    degree: usize,
    caps: &Caps,
) -> Result<GenerationVerdict> {
    let oracle = invariant_space_bruteforce(setting, degree, caps)?;
    let products = generated_products(generators, degree);
    let mut gen_span = PolySpan::new();
    for p in &products {
        gen_span.insert(p);
    }
    let generated_dim = gen_span.rank();
    let mut oracle_span = PolySpan::new();
    for p in &oracle.basis {
        oracle_span.insert(p);
    }
    let sound = products.iter().all(|p| oracle_span.contains(p));
    let witness = oracle.basis.iter().find(|p| !gen_span.contains(p)).map(|p| p.to_string());
    Ok(GenerationVerdict {
        degree,
        oracle_dim: oracle.dim(),
        generated_dim,
        equal: sound && generated_dim == oracle.dim(),
        sound,
        witness,
    })
}

pub fn check_generation(
    setting: &InvariantSetting,
    generators: &[Polynomial],
    degrees: impl IntoIterator<Item = usize>,
    caps: &Caps,
) -> Result<Vec<GenerationVerdict>> {
    degrees.into_iter().map(|d| check_generation_at(setting, generators, d, caps)).collect()
}

/// Kernel of an algebra homomorphism on the degree-`degree` part of
/// `source`, computed block by block on outer content.
pub fn substitution_kernel(
    source: &AlgebraKind,
    degree: usize,
    image: &mut dyn FnMut(&Generator) -> Polynomial,
    caps: &Caps,
) -> Result<Vec<Polynomial>> {
    let total = source.count_monomials(degree);
    if total > caps.max_monomials {
        return Err(Error::CapExceeded { what: format!("degree-{degree} source monomials"), needed: total, cap: caps.max_monomials });
    }
    let mut cache: HashMap<Generator, Polynomial> = HashMap::new();
    let mut blocks: BTreeMap<Vec<(u8, SuperIndex)>, Vec<Monomial>> = BTreeMap::new();
    for m in source.monomials(degree) {
        blocks.entry(outer_content(&m)).or_default().push(m);
    }
    let mut kernel = Vec::new();
    let mut entries = 0usize;
    for mons in blocks.values() {
        let mut index = MonomialIndex::new();
        let mut cols: Vec<RatVec> = Vec::with_capacity(mons.len());
        for m in mons {
            let mut acc = Polynomial::one();
            for g in m.factors() {
                let img = cache.entry(*g).or_insert_with(|| image(g)).clone();
                acc = acc.mul(&img);
            }
            let v = index.vectorize(&acc);
            entries += v.len();
            cols.push(v);
        }
        if entries > caps.max_entries {
            return Err(Error::CapExceeded { what: "substitution matrix entries".into(), needed: entries, cap: caps.max_entries });
        }
        // rows = target monomials, columns = source monomials
        let mut rows: BTreeMap<usize, RatVec> = BTreeMap::new();
        for (c, v) in cols.iter().enumerate() {
            for (&r, x) in v {
                rows.entry(r).or_default().insert(c, x.clone());
            }
        }
        let mut red = RowReducer::new();
        for row in rows.values() {
            red.insert_rational(row);
        }
        for v in red.nullspace(mons.len()) {
            let mut p = Polynomial::zero();
            for (c, x) in v {
                p.add_term(mons[c].clone(), x);
            }
            kernel.push(p);
        }
    }
    Ok(kernel)
}

/// Result of a relation-ideal check at one degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelReport {
    pub degree: usize,
    pub relations: usize,
    pub vanishing: usize,
    pub relation_rank: usize,
    pub kernel_dim: usize,
}

impl KernelReport {
    pub fn all_vanish(&self) -> bool {
        self.vanishing == self.relations
    }

    pub fn spans_kernel(&self) -> bool {
        self.all_vanish() && self.relation_rank == self.kernel_dim
    }
}

/// Substitutes every relation, counts the vanishing ones, and compares the
/// span of the relations with the kernel at `degree`.
pub fn relation_kernel_check(
    source: &AlgebraKind,
    degree: usize,
    relations: &[Polynomial],
    image: &mut dyn FnMut(&Generator) -> Polynomial,
    caps: &Caps,
) -> Result<KernelReport> {
    let mut cache: HashMap<Generator, Polynomial> = HashMap::new();
    let mut vanishing = 0;
    for r in relations {
        let s = r.substitute(&mut |g: &Generator| cache.entry(*g).or_insert_with(|| image(g)).clone());
        if s.is_zero() {
            vanishing += 1;
        }
    }
    let kernel = substitution_kernel(source, degree, image, caps)?;
    Ok(KernelReport {
        degree,
        relations: relations.len(),
        vanishing,
        relation_rank: span_rank(relations),
        kernel_dim: kernel.len(),
    })
}

/// `z_{rs} ↦ (v_r^*, v_s)`.
pub fn gl_substitution(v: IndexRange) -> impl FnMut(&Generator) -> Polynomial {
    move |g: &Generator| gl_scalar_product(v, g.row, g.col)
}

/// `x_{st} ↦ (v_s, v_t)` (or `y_{st}`) for a form family.
pub fn form_substitution(form: BilinearForm) -> impl FnMut(&Generator) -> Polynomial {
    move |g: &Generator| form_scalar_product(&form, g.row, g.col)
}

/// `P_t(I,J)` over `t`-semistandard `I ∈ R_U`, `J ∈ R_W`.
pub fn determinantal_relations(t: &YoungTableau, u: IndexRange, w: IndexRange, cap: usize) -> Result<Vec<Polynomial>> {
    let is = enumerate_semistandard(t, u);
    let js = enumerate_semistandard(t, w);
    let mut out = Vec::new();
    for i in &is {
        for j in &js {
            out.push(p_t(t, i, j, SymmetrizerVariant::Plain, PairFamily::Uw, cap)?);
        }
    }
    Ok(out)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sgn(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// `F_k(I,J) = Σ_L (-1)^{α(L,L)} P̃_s(I, I_k*L) P̃_t(L*J_k, J)` with `I`
/// `s`-semistandard in `R_U` and `J` `t`-semistandard in `R_W`.
pub fn f_plus(setup: &SlSetup, i: &[SuperIndex], j: &[SuperIndex], cap: usize) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for l in all_sequences(setup.range(), setup.n * setup.m) {
        let mut left = setup.ik.clone();
        left.extend_from_slice(&l);
        let mut right = l.clone();
        right.extend_from_slice(&setup.jk);
        let a = p_t(&setup.s, i, &left, SymmetrizerVariant::Tilde, PairFamily::Uv, cap)?;
        if a.is_zero() {
            continue;
        }
        let b = p_t(&setup.t, &right, j, SymmetrizerVariant::Tilde, PairFamily::Vw, cap)?;
        let s = sgn(self_pairing_sign_exponent(&l) % 2 == 1);
        out.add_assign(&a.mul(&b).scale(&s));
    }
    Ok(out)
}

/// Sign of `F_{-k}`: as printed, or with the extra `(-1)^{p(L)}` carried
/// by the dual tensor expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FSign {
    Printed,
    Amended,
}

/// `F_{-k}(Î,Ĵ) = Σ_L (-1)^{α(L,L)+p(L)(p(Î)+p(Ĵ))} P_s(I_k*L, Ĵ) P_t(Î, L*J_k)`
/// with `Î` `t`-semistandard in `R_U` and `Ĵ` `s`-semistandard in `R_W`.
pub fn f_minus(setup: &SlSetup, ihat: &[SuperIndex], jhat: &[SuperIndex], sign: FSign, cap: usize) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    let pij = sequence_parity(ihat) + sequence_parity(jhat);
    for l in all_sequences(setup.range(), setup.n * setup.m) {
        let mut left = setup.ik.clone();
        left.extend_from_slice(&l);
        let mut right = l.clone();
        right.extend_from_slice(&setup.jk);
        let a = p_t(&setup.s, &left, jhat, SymmetrizerVariant::Plain, PairFamily::Vw, cap)?;
        if a.is_zero() {
            continue;
        }
        let b = p_t(&setup.t, ihat, &right, SymmetrizerVariant::Plain, PairFamily::Uv, cap)?;
        let pl = sequence_parity(&l).bit() as usize;
        let mut e = self_pairing_sign_exponent(&l) + pl * pij.bit() as usize;
        if sign == FSign::Amended {
            e += pl;
        }
        out.add_assign(&a.mul(&b).scale(&sgn(e % 2 == 1)));
    }
    Ok(out)
}

/// All `F_{±k}` for one `k`, over the semistandard index sets.
pub fn f_family(setup: &SlSetup, u: IndexRange, w: IndexRange, sign: FSign, cap: usize) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for i in enumerate_semistandard(&setup.s, u) {
        for j in enumerate_semistandard(&setup.t, w) {
            let f = f_plus(setup, &i, &j, cap)?;
            if !f.is_zero() {
                out.push(f);
            }
        }
    }
    for ih in enumerate_semistandard(&setup.t, u) {
        for jh in enumerate_semistandard(&setup.s, w) {
            let f = f_minus(setup, &ih, &jh, sign, cap)?;
            if !f.is_zero() {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// `V → V*`, `e_i ↦ c(i, ĩ) e^*_ĩ`, applied slot-wise and followed by the
/// pairing with `w_J`: the polynomial shadow `R(J)` of a tensor in
/// `V^{⊗N}` inside `S(V*⊗W)`.
pub fn polynomial_shadow(range: IndexRange, tensor: &TensorElement, j: &[SuperIndex]) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (word, c) in tensor.terms() {
        if word.len() != j.len() {
            return Err(Error::LengthMismatch { expected: word.len(), got: j.len() });
        }
        let mut k = c.clone();
        let mut dual = Vec::with_capacity(word.len());
        for slot in word {
            if c_tilde(range, slot.index) < 0 {
                k = -k;
            }
            dual.push(tilde(range, slot.index));
        }
        out.add_assign(&pair_product(PairFamily::Vw, &dual, j)?.scale(&k));
    }
    Ok(out)
}

/// Entries of a `𝒯_2` tableau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T2Tableau {
    /// `cells[i][j]` is `i` (even) or `j̄` (odd); the diagonal is odd.
    pub cells: Vec<Vec<SuperIndex>>,
}

impl T2Tableau {
    /// The matrix `a_{ij} = p(l_{ij})` with the diagonal set to zero.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.cells.len();
        (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { self.cells[i][j].parity.bit() }).collect()).collect()
    }

    /// Column-wise reading.
    pub fn sequence(&self) -> Vec<SuperIndex> {
        let n = self.cells.len();
        (0..n).flat_map(|j| (0..n).map(move |i| (i, j))).map(|(i, j)| self.cells[i][j]).collect()
    }

    pub fn n_even(&self) -> usize {
        self.cells.iter().flatten().filter(|x| !x.parity.is_odd()).count()
    }

    /// `m(L) = Σ_{i even} a_{ij}` (rows numbered from 1).
    pub fn m_value(&self) -> usize {
        let a = self.matrix();
        a.iter().enumerate().filter(|(i, _)| (i + 1) % 2 == 0).map(|(_, r)| r.iter().map(|&x| x as usize).sum::<usize>()).sum()
    }

    /// `m_k(L) = ((n+k)!)^n / Π (n+k-l_i)!`.
    pub fn m_k(&self, k: usize) -> BigInt {
        let n = self.cells.len();
        let f = |x: usize| (1..=x).fold(BigInt::one(), |a, b| a * BigInt::from(b));
        let num = f(n + k).pow(n as u32);
        let den = self.matrix().iter().map(|r| f(n + k - r.iter().map(|&x| x as usize).sum::<usize>())).fold(BigInt::one(), |a, b| a * b);
        num / den
    }
}

/// `𝒯_2` by construction from the tournament matrices.
pub fn t2_tableaux(n: usize) -> Vec<T2Tableau> {
    crate::liesuper::tournament_matrices(n)
        .into_iter()
        .map(|a| {
            let cells = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j || a[i][j] == 1 {
                                SuperIndex::odd(j as u32 + 1)
                            } else {
                                SuperIndex::even(i as u32 + 1)
                            }
                        })
                        .collect()
                })
                .collect();
            T2Tableau { cells }
        })
        .collect()
}

/// `𝒯_2` by filtering all fillings with entries `i` or `j̄` against the
/// stated constraints (oracle for [`t2_tableaux`]).
pub fn t2_tableaux_bruteforce(n: usize) -> Vec<T2Tableau> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0..1u64 << cells.len() {
        let grid: Vec<Vec<SuperIndex>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if mask >> (i * n + j) & 1 == 1 {
                            SuperIndex::odd(j as u32 + 1)
                        } else {
                            SuperIndex::even(i as u32 + 1)
                        }
                    })
                    .collect()
            })
            .collect();
        let diag_odd = (0..n).all(|i| grid[i][i] == SuperIndex::odd(i as u32 + 1));
        let conj = (0..n).all(|i| (0..n).all(|j| i == j || grid[j][i] == grid[i][j].conjugate()));
        if diag_odd && conj {
            out.push(T2Tableau { cells: grid });
        }
    }
    out
}

use crate::liesuper::SignConvention;

/// `Σ_{L∈𝒯_2} coefficient(L) v^*_L ⊗ v^*_{tail}` passed through `e_t`.
fn t2_sum(
    n: usize,
    tail: &[SuperIndex],
    t: &YoungTableau,
    coeff: &dyn Fn(&T2Tableau) -> BigRational,
    cap: usize,
) -> Result<TensorElement> {
    let e_t = crate::symgroup::young_symmetrizer(t, SymmetrizerVariant::Plain, cap)?;
    let mut inner = TensorElement::zero();
    for l in t2_tableaux(n) {
        let mut seq = l.sequence();
        seq.extend_from_slice(tail);
        inner.add_term(crate::tensorspace::covector_word(&seq), coeff(&l));
    }
    crate::tensorspace::apply_group_block(&e_t, &inner, 0)
}

/// Sign of the first `𝒯_2` family: as printed, with `(-1)^{k m(L)}`, or
/// without that factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum T2Sign {
    Printed,
    Amended,
}

fn t2_eps(l: &T2Tableau) -> usize {
    crate::liesuper::a_norm(&l.matrix(), SignConvention::Literal) + l.n_even()
}

fn t2_plus_coeff(l: &T2Tableau, k: usize, m_index: usize, sign: T2Sign) -> BigRational {
    let extra = match sign {
        T2Sign::Printed => k * l.m_value(),
        T2Sign::Amended => 0,
    };
    sgn((extra + t2_eps(l)) % 2 == 1) * BigRational::from_integer(l.m_k(m_index))
}

fn t2_minus_coeff(l: &T2Tableau) -> BigRational {
    sgn(t2_eps(l) % 2 == 1) * BigRational::from_integer(l.m_k(0))
}

/// The spe tensor invariants: the constructive element
/// `Y^- e_t(v^*_{J_n} ⊗ v^*_{J_k})` on the `(n+k)×n` tableau `t`, the first
/// closed family on `t` in both sign forms, and the second closed family
/// `e_s(Σ ε(L) m_0(L) v^*_L ⊗ v^*_{I_k})` on the `n×(n+k)` tableau `s`.
#[derive(Debug, Clone)]
pub struct SpeTensorInvariants {
    pub n: usize,
    pub k: usize,
    pub constructive: TensorElement,
    pub closed_plus: TensorElement,
    pub closed_plus_amended: TensorElement,
    pub closed_minus: TensorElement,
}

pub fn spe_tensor_invariants(n: usize, k: usize, cap: usize) -> Result<SpeTensorInvariants> {
    if n < 2 {
        return Err(Error::InvalidDimensions(format!("need n >= 2, got {n}")));
    }
    let setup = SlSetup::new(n, n, k)?;
    let t = &setup.t;
    // J_n ⊗ J_k fills column j of t with j̄
    let mut w = crate::tensorspace::covector_word(&(1..=n as u32).flat_map(|j| std::iter::repeat_n(SuperIndex::odd(j), n)).collect::<Vec<_>>());
    w.extend(crate::tensorspace::covector_word(&setup.jk));
    let e_t = crate::symgroup::young_symmetrizer(t, SymmetrizerVariant::Plain, cap)?;
    let mut constructive = crate::tensorspace::apply_group_block(&e_t, &TensorElement::basis(w), 0)?;
    for y in crate::liesuper::yminus_factors(n).iter().rev() {
        constructive = crate::tensorspace::gl_action_tensor(y, &constructive);
    }
    let closed_plus = t2_sum(n, &setup.jk, t, &|l| t2_plus_coeff(l, k, k, T2Sign::Printed), cap)?;
    let closed_plus_amended = t2_sum(n, &setup.jk, t, &|l| t2_plus_coeff(l, k, k, T2Sign::Amended), cap)?;
    let closed_minus = t2_sum(n, &setup.ik, &setup.s, &t2_minus_coeff, cap)?;
    Ok(SpeTensorInvariants { n, k, constructive, closed_plus, closed_plus_amended, closed_minus })
}

/// `PPf_k(J) = Σ_L (-1)^{(k-1)m(L)} ε(L) m_{k-1}(L) P_t(L*J_k, J)` over
/// `t`-semistandard `J`, with `t` the `(n+k)×n` tableau.
pub fn ppf_plus(n: usize, k: usize, w: IndexRange, sign: T2Sign, cap: usize) -> Result<Vec<Polynomial>> {
    if k == 0 {
        return Err(Error::InvalidDimensions("PPf_k needs k >= 1".into()));
    }
    let setup = SlSetup::new(n, n, k)?;
    let mut out = Vec::new();
    for j in enumerate_semistandard(&setup.t, w) {
        let mut p = Polynomial::zero();
        for l in t2_tableaux(n) {
            let mut left = l.sequence();
            left.extend_from_slice(&setup.jk);
            let c = t2_plus_coeff(&l, k - 1, k - 1, sign);
            p.add_assign(&p_t(&setup.t, &left, &j, SymmetrizerVariant::Plain, PairFamily::Vw, cap)?.scale(&c));
        }
        if !p.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Pairings of the first `𝒯_2` tensor family with `t`-semistandard `J`:
/// `Σ_L (-1)^{k m(L)} ε(L) m_k(L) P_t(L*J_k, J)`, defined for every `k ≥ 0`.
pub fn t2_family_polynomials(n: usize, k: usize, w: IndexRange, sign: T2Sign, cap: usize) -> Result<Vec<Polynomial>> {
    let setup = SlSetup::new(n, n, k)?;
    let mut out = Vec::new();
    for j in enumerate_semistandard(&setup.t, w) {
        let mut p = Polynomial::zero();
        for l in t2_tableaux(n) {
            let mut left = l.sequence();
            left.extend_from_slice(&setup.jk);
            let c = t2_plus_coeff(&l, k, k, sign);
            p.add_assign(&p_t(&setup.t, &left, &j, SymmetrizerVariant::Plain, PairFamily::Vw, cap)?.scale(&c));
        }
        if !p.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

/// `PPf_{-k}(J) = Σ_L ε(L) m_0(L) P_s(L*I_{k+1}, J)` over `s`-semistandard
/// `J`, with `s` the `n×(n+k+1)` tableau.
pub fn ppf_minus(n: usize, k: usize, w: IndexRange, cap: usize) -> Result<Vec<Polynomial>> {
    let setup = SlSetup::new(n, n, k + 1)?;
    let mut out = Vec::new();
    for j in enumerate_semistandard(&setup.s, w) {
        let mut p = Polynomial::zero();
        for l in t2_tableaux(n) {
            let mut left = l.sequence();
            left.extend_from_slice(&setup.ik);
            p.add_assign(&p_t(&setup.s, &left, &j, SymmetrizerVariant::Plain, PairFamily::Vw, cap)?.scale(&t2_minus_coeff(&l)));
        }
        if !p.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Dimension of the invariants of `family` inside the span of the given
/// tensors (assumed stable under the family).
pub fn tensor_invariant_dim(family: &LieFamily, span: &[TensorElement]) -> usize {
    let mut index: HashMap<Vec<crate::tensorspace::Slot>, usize> = HashMap::new();
    let mut idx = |w: &Vec<crate::tensorspace::Slot>| {
        let n = index.len();
        *index.entry(w.clone()).or_insert(n)
    };
    let mut red = RowReducer::new();
    for t in span {
        let v: RatVec = t.terms().iter().map(|(w, c)| (idx(w), c.clone())).collect();
        red.insert_rational(&v);
    }
    let mut reverse: Vec<Vec<crate::tensorspace::Slot>> = vec![Vec::new(); index.len()];
    for (w, &i) in &index {
        reverse[i] = w.clone();
    }
    let basis: Vec<TensorElement> = red
        .rows()
        .map(|(_, row)| {
            let mut t = TensorElement::zero();
            for (&c, x) in row {
                t.add_term(reverse[c].clone(), BigRational::from_integer(x.clone()));
            }
            t
        })
        .collect();
    let mut rows: BTreeMap<(usize, Vec<crate::tensorspace::Slot>), RatVec> = BTreeMap::new();
    for (col, b) in basis.iter().enumerate() {
        for (xi, x) in family.basis.iter().enumerate() {
            for (w, c) in crate::tensorspace::gl_action_tensor(x, b).terms() {
                rows.entry((xi, w.clone())).or_default().insert(col, c.clone());
            }
        }
    }
    let mut red2 = RowReducer::new();
    for r in rows.values() {
        red2.insert_rational(r);
    }
    basis.len() - red2.rank()
}

/// All words of a slot pattern (`true` = dual slot).
pub fn tensor_words(range: IndexRange, pattern: &[bool]) -> Vec<TensorElement> {
    all_sequences(range, pattern.len())
        .into_iter()
        .map(|seq| {
            TensorElement::basis(
                seq.iter()
                    .zip(pattern)
                    .map(|(&i, &d)| if d { crate::tensorspace::Slot::covector(i) } else { crate::tensorspace::Slot::vector(i) })
                    .collect(),
            )
        })
        .collect()
}

/// Sorted set of polynomial parities, for diagnostics.
pub fn parities(ps: &[Polynomial]) -> BTreeSet<Option<Parity>> {
    ps.iter().map(|p| p.parity()).collect()
}

/// Helper for tests and reports: `n` as a rational.
pub fn rational(n: i64) -> BigRational {
    q(n)
}

/// Invariants of `family` in `e_t V^{⊗a} ⊗ e_s V*^{⊗b}` with `a = |t|`,
/// `b = |s|`.
pub fn isotypic_invariant_dim(family: &LieFamily, t: &YoungTableau, s: &YoungTableau, cap: usize) -> Result<usize> {
    let e1 = crate::symgroup::young_symmetrizer(t, SymmetrizerVariant::Plain, cap)?;
    let e2 = crate::symgroup::young_symmetrizer(s, SymmetrizerVariant::Plain, cap)?;
    let pattern: Vec<bool> = std::iter::repeat_n(false, t.size()).chain(std::iter::repeat_n(true, s.size())).collect();
    let span = tensor_words(family.range, &pattern)
        .iter()
        .map(|w| crate::tensorspace::symmetrizer_pair_apply(&e1, &e2, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(tensor_invariant_dim(family, &span))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercomb::{Partition, SuperIndex as S};

    fn r(a: usize, b: usize) -> IndexRange {
        IndexRange::new(a, b)
    }

    #[test]
    fn gl10_examples() {
        let st = InvariantSetting::mixed(FamilyTag::Gl, r(1, 0), r(1, 0), r(1, 0)).unwrap();
        let caps = Caps::default();
        assert_eq!(invariant_space_bruteforce(&st, 1, &caps).unwrap().dim(), 0);
        let sp = invariant_space_bruteforce(&st, 2, &caps).unwrap();
        assert_eq!(sp.dim(), 1);
        let x = Polynomial::product(&[Generator::uv(S::even(1), S::even(1)), Generator::vw(S::even(1), S::even(1))], q(1));
        assert_eq!(span_rank(&[sp.basis[0].clone(), x]), 1);
    }

    #[test]
    fn scalar_products_are_invariant() {
        for (t, v, u, w) in [
            (FamilyTag::Gl, r(1, 1), r(1, 1), r(1, 1)),
            (FamilyTag::Gl, r(2, 1), r(1, 1), r(0, 2)),
            (FamilyTag::Osp, r(1, 2), r(0, 0), r(2, 1)),
            (FamilyTag::Osp, r(2, 2), r(0, 0), r(1, 1)),
            (FamilyTag::Pe, r(1, 1), r(0, 0), r(2, 1)),
            (FamilyTag::Pe, r(2, 2), r(0, 0), r(1, 1)),
        ] {
            let st = InvariantSetting::mixed(t, v, u, w).unwrap();
            for p in scalar_products(&st).unwrap() {
                assert!(st.is_invariant(&p), "{t} {p}");
            }
        }
    }

    #[test]
    fn printed_pe_product_fails_for_odd_s() {
        let st = InvariantSetting::covariant(FamilyTag::Pe, r(1, 1), r(1, 1)).unwrap();
        let (e, o) = (S::even(1), S::odd(1));
        assert!(st.is_invariant(&pe_scalar_product_printed(r(1, 1), e, e)));
        assert!(!st.is_invariant(&pe_scalar_product_printed(r(1, 1), o, e)));
    }

    #[test]
    fn scalar_product_symmetry() {
        let form = crate::liesuper::osp_form(r(1, 2)).unwrap();
        let w = r(1, 2).indices();
        for &s in &w {
            for &t in &w {
                let a = form_scalar_product(&form, s, t);
                let b = form_scalar_product(&form, t, s);
                let sg = sgn(s.parity.is_odd() && t.parity.is_odd());
                assert_eq!(a, b.scale(&sg));
            }
        }
    }

    #[test]
    fn generated_examples() {
        assert!(generated_products(&[], 3).is_empty());
        let st = InvariantSetting::mixed(FamilyTag::Gl, r(1, 1), r(1, 1), r(1, 1)).unwrap();
        let gens = scalar_products(&st).unwrap();
        let v = check_generation_at(&st, &gens, 2, &Caps::default()).unwrap();
        assert!(v.equal, "{v:?}");
    }

    #[test]
    fn gl10_minor_relation() {
        let t = YoungTableau::row_filled(&Partition::new(vec![1, 1]).unwrap());
        let rels = determinantal_relations(&t, r(2, 0), r(2, 0), 100).unwrap();
        assert_eq!(rels.len(), 1);
        let src = AlgebraKind::UW { u: r(2, 0), w: r(2, 0) };
        let rep = relation_kernel_check(&src, 2, &rels, &mut gl_substitution(r(1, 0)), &Caps::default()).unwrap();
        assert!(rep.spans_kernel(), "{rep:?}");
        assert_eq!(rep.kernel_dim, 1);
    }

    #[test]
    fn t2_enumeration_matches_filter() {
        for n in 2..=3 {
            let a = t2_tableaux(n);
            let b = t2_tableaux_bruteforce(n);
            assert_eq!(a.len(), b.len());
            for x in &a {
                assert!(b.contains(x));
            }
        }
    }

    #[test]
    fn tensor_invariants_only_for_balanced_patterns() {
        let gl = build_family(FamilyTag::Gl, r(1, 1)).unwrap();
        assert_eq!(tensor_invariant_dim(&gl, &tensor_words(r(1, 1), &[false, true, true])), 0);
        assert_eq!(tensor_invariant_dim(&gl, &tensor_words(r(1, 1), &[false, true])), 1);
    }

    #[test]
    fn f_family_sl11() {
        let st = InvariantSetting::mixed(FamilyTag::Sl, r(1, 1), r(1, 1), r(1, 1)).unwrap();
        let setup = SlSetup::new(1, 1, 1).unwrap();
        let amended = f_family(&setup, r(1, 1), r(1, 1), FSign::Amended, 1000).unwrap();
        assert_eq!(amended.len(), 8);
        assert!(amended.iter().all(|p| st.is_invariant(p)));
        let printed = f_family(&setup, r(1, 1), r(1, 1), FSign::Printed, 1000).unwrap();
        assert_eq!(printed.iter().filter(|p| st.is_invariant(p)).count(), 4);
        let mut gens = scalar_products(&st).unwrap();
        gens.extend(amended);
        for d in 1..=4 {
            assert!(check_generation_at(&st, &gens, d, &Caps::default()).unwrap().equal);
        }
    }

    #[test]
    fn spe_closed_forms_n2() {
        let spe = build_family(FamilyTag::Spe, r(2, 2)).unwrap();
        for k in 0..=2 {
            let x = spe_tensor_invariants(2, k, 100_000).unwrap();
            assert!(crate::tensorspace::annihilated_by(&spe.basis, &x.constructive));
            assert_eq!(crate::tensorspace::proportionality(&x.constructive, &x.closed_plus_amended), Some(q(1)));
            assert_eq!(crate::tensorspace::proportionality(&x.constructive, &x.closed_plus).is_some(), k % 2 == 0);
            assert!(crate::tensorspace::annihilated_by(&spe.basis, &x.closed_minus));
        }
    }

    #[test]
    fn spe2_generation_needs_square_family() {
        let w = r(1, 2);
        let st = InvariantSetting::covariant(FamilyTag::Spe, r(2, 2), w).unwrap();
        let mut gens = scalar_products(&st).unwrap();
        gens.extend(ppf_plus(2, 1, w, T2Sign::Amended, 100_000).unwrap());
        let v = check_generation_at(&st, &gens, 4, &Caps::default()).unwrap();
        assert_eq!((v.oracle_dim, v.generated_dim), (12, 8));
        assert!(v.witness.is_some());
        let sq = t2_family_polynomials(2, 0, w, T2Sign::Printed, 100_000).unwrap();
        assert!(sq.iter().all(|p| st.is_invariant(p)));
        gens.extend(sq);
        assert!(check_generation_at(&st, &gens, 4, &Caps::default()).unwrap().equal);
    }

    #[test]
    fn osp_shadow_of_nabla() {
        let nab = crate::tensorspace::nabla_construct(r(1, 2), 1000).unwrap();
        let st = InvariantSetting::covariant(FamilyTag::Osp, r(1, 2), r(2, 1)).unwrap();
        let s = YoungTableau::row_filled(&Partition::new(vec![3]).unwrap());
        let mut gens = scalar_products(&st).unwrap();
        for j in enumerate_semistandard(&s, r(2, 1)) {
            let p = polynomial_shadow(r(1, 2), &nab.full, &j).unwrap();
            assert!(st.is_invariant(&p));
            gens.push(p);
        }
        let v = check_generation_at(&st, &gens, 3, &Caps::default()).unwrap();
        assert!(v.equal && v.oracle_dim == 7, "{v:?}");
    }
}

