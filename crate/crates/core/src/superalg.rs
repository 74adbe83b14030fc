//! Free supercommutative polynomial algebras with declared generator parities,
//! and the named polynomial families built from them by symmetrization:
//! the signed products `Z(I,J)`, the determinantal polynomials `P_t`, the
//! even Pfaffians `Pf_t` and the periplectic Pfaffians `PPf_t`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::supercomb::{
    enumerate_semistandard, koszul, IndexRange, Parity, Partition, SuperIndex, SuperSequence, YoungTableau,
};
use crate::symgroup::{apply_to_word, young_symmetrizer, SymmetrizerVariant};

/// The family a generator symbol belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `z_{ij} = u_i ⊗ w_j` in `S(U⊗W)`.
    Uw,
    /// `x_{ri} = u_r ⊗ e_i` in `S(U⊗V)`.
    Uv,
    /// `x*_{is} = e_i^* ⊗ w_s` in `S(V*⊗W)`.
    Vw,
    /// `x_{st}`, image of `w_s ⊗ w_t` in `S(S²W)`.
    S2w,
    /// `y_{st}` in `E(S²W) = S(Π S²W)`.
    E2w,
    /// Free symbols with an explicit parity.
    Custom(u8),
}

/// A generator of a free supercommutative algebra: a family tag, two indices
/// and the parity the family dictates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub family: Family,
    pub row: SuperIndex,
    pub col: SuperIndex,
    pub parity: Parity,
}

impl Generator {
    pub fn uw(i: SuperIndex, j: SuperIndex) -> Self {
        Self { family: Family::Uw, row: i, col: j, parity: i.parity + j.parity }
    }

    pub fn uv(r: SuperIndex, i: SuperIndex) -> Self {
        Self { family: Family::Uv, row: r, col: i, parity: r.parity + i.parity }
    }

    pub fn vw(i: SuperIndex, s: SuperIndex) -> Self {
        Self { family: Family::Vw, row: i, col: s, parity: i.parity + s.parity }
    }

    pub fn custom(tag: u8, row: SuperIndex, col: SuperIndex, parity: Parity) -> Self {
        Self { family: Family::Custom(tag), row, col, parity }
    }

    /// Canonical symbol for `x_{st}` (or `y_{st}` when `exterior`) together with
    /// the sign relating it to the requested order; `None` when the symbol
    /// vanishes (`s = t` odd).
    ///
    /// The square is super-symmetric: `x_{ts} = (-1)^{p(s)p(t)} x_{st}`. The
    /// exterior variant carries the extra parity shift.
    pub fn square(exterior: bool, s: SuperIndex, t: SuperIndex) -> Option<(Self, i32)> {
        if s == t && s.parity.is_odd() {
            return None;
        }
        let (a, b, sign) = if s <= t { (s, t, 1) } else { (t, s, koszul(s.parity, t.parity)) };
        let (family, parity) = if exterior {
            (Family::E2w, a.parity + b.parity + Parity::Odd)
        } else {
            (Family::S2w, a.parity + b.parity)
        };
        Some((Self { family, row: a, col: b, parity }, sign))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Uw => "z",
            Family::Uv => "x",
            Family::Vw => "x*",
            Family::S2w => "xs",
            Family::E2w => "y",
            Family::Custom(_) => "E",
        };
        write!(f, "{}[{},{}]", name, self.row, self.col)
    }
}

/// A sorted product of generators; odd generators appear at most once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn parity(&self) -> Parity {
        self.0.iter().fold(Parity::Even, |a, g| a + g.parity)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", s.join("*"))
    }
}

/// Sorts a product of generators into canonical order. Returns the monomial
/// and the Koszul sign of the reordering, or `None` when an odd generator
/// repeats.
pub fn normalize(factors: &[Generator]) -> Option<(Monomial, i32)> {
    let mut odd_inversions = 0usize;
    for (a, fa) in factors.iter().enumerate() {
        if !fa.parity.is_odd() {
            continue;
        }
        for fb in &factors[a + 1..] {
            if fb.parity.is_odd() {
                if fb == fa {
                    return None;
                }
                if fb < fa {
                    odd_inversions += 1;
                }
            }
        }
    }
    let mut sorted = factors.to_vec();
    sorted.sort();
    Some((Monomial(sorted), if odd_inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// A sparse exact-rational element of a free supercommutative algebra.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn generator(g: Generator) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial(vec![g]), BigRational::one());
        p
    }

    /// The ordered product `g_1 g_2 ... g_k` with coefficient `c`.
    pub fn product(factors: &[Generator], c: BigRational) -> Self {
        let mut p = Self::zero();
        if let Some((m, sign)) = normalize(factors) {
            p.add_term(m, if sign > 0 { c } else { -c });
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut f = ma.0.clone();
                f.extend_from_slice(&mb.0);
                if let Some((m, sign)) = normalize(&f) {
                    let c = ca * cb;
                    out.add_term(m, if sign > 0 { c } else { -c });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| acc.mul(self))
    }

    /// Parity when homogeneous; `None` for zero or mixed polynomials.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Degree when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Algebra homomorphism given on generators. Each monomial is replaced by
    /// the ordered product of the images of its factors, so the images must
    /// have the parity of the generator they replace.
    pub fn substitute(&self, image: &mut dyn FnMut(&Generator) -> Polynomial) -> Polynomial {
        let mut cache: HashMap<Generator, Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for g in &m.0 {
                let img = cache.entry(*g).or_insert_with(|| image(g));
                acc = acc.mul(img);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Descriptor of one of the polynomial algebras used here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    /// `S(U⊗V ⊕ V*⊗W)` with `U = (k|l)` and `W = (p|q)`.
    Mixed { v: IndexRange, u: IndexRange, w: IndexRange },
    /// `S(U⊗W)`.
    UW { u: IndexRange, w: IndexRange },
    /// `S(S²W)`.
    SymSquare { w: IndexRange },
    /// `E(S²W) = S(Π S²W)`.
    ExtSquare { w: IndexRange },
}

impl AlgebraKind {
    /// Generators in increasing order.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens = Vec::new();
        match *self {
            AlgebraKind::Mixed { v, u, w } => {
                for r in u.indices() {
                    for i in v.indices() {
                        gens.push(Generator::uv(r, i));
                    }
                }
                for i in v.indices() {
                    for s in w.indices() {
                        gens.push(Generator::vw(i, s));
                    }
                }
            }
            AlgebraKind::UW { u, w } => {
                for i in u.indices() {
                    for j in w.indices() {
                        gens.push(Generator::uw(i, j));
                    }
                }
            }
            AlgebraKind::SymSquare { w } | AlgebraKind::ExtSquare { w } => {
                let ext = matches!(self, AlgebraKind::ExtSquare { .. });
                let idx = w.indices();
                for (a, &s) in idx.iter().enumerate() {
                    for &t in &idx[a..] {
                        if let Some((g, _)) = Generator::square(ext, s, t) {
                            gens.push(g);
                        }
                    }
                }
            }
        }
        gens.sort();
        gens
    }

    /// All monomials of the given degree.
    pub fn monomials(&self, degree: usize) -> Vec<Monomial> {
        monomials_in(&self.generators(), degree)
    }

    pub fn count_monomials(&self, degree: usize) -> usize {
        count_monomials_in(&self.generators(), degree)
    }
}

/// All monomials of a degree in the given (sorted, distinct) generators.
pub fn monomials_in(gens: &[Generator], degree: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(gens: &[Generator], start: usize, left: usize, cur: &mut Vec<Generator>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        for i in start..gens.len() {
            let g = gens[i];
            cur.push(g);
            let next = if g.parity.is_odd() { i + 1 } else { i };
            rec(gens, next, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(gens, 0, degree, &mut cur, &mut out);
    out
}

/// Number of monomials of a degree: even generators may repeat, odd ones not.
pub fn count_monomials_in(gens: &[Generator], degree: usize) -> usize {
    let even = gens.iter().filter(|g| !g.parity.is_odd()).count();
    let odd = gens.len() - even;
    (0..=degree.min(odd)).map(|j| binomial(odd, j) * multichoose(even, degree - j)).sum()
}

/// Both sides of the decomposition of `S^N(U⊗W)` into `U^λ ⊗ W^λ`: the
/// monomial count, and `Σ_λ #SSYT_U(λ)·#SSYT_W(λ)` over all `λ ⊢ N`.
pub fn cauchy_sides(u: IndexRange, w: IndexRange, degree: usize) -> (usize, usize) {
    let lhs = AlgebraKind::UW { u, w }.count_monomials(degree);
    let rhs = crate::supercomb::enumerate_partitions(degree, None, None)
        .iter()
        .map(|p| {
            let t = YoungTableau::row_filled(p);
            enumerate_semistandard(&t, u).len() * enumerate_semistandard(&t, w).len()
        })
        .sum();
    (lhs, rhs)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn multichoose(n: usize, k: usize) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    binomial(n + k - 1, k)
}

/// Which pairing product a [`z_of`]-style construction produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairFamily {
    Uw,
    Uv,
    Vw,
}

impl PairFamily {
    fn make(self, i: SuperIndex, j: SuperIndex) -> Generator {
        match self {
            PairFamily::Uw => Generator::uw(i, j),
            PairFamily::Uv => Generator::uv(i, j),
            PairFamily::Vw => Generator::vw(i, j),
        }
    }
}

/// `Z(I,J) = (-1)^{α(I,J)} Π_α z_{i_α j_α}` with `α(I,J) = Σ_{α>β} p(i_α)p(j_β)`.
pub fn pair_product(family: PairFamily, left: &[SuperIndex], right: &[SuperIndex]) -> Result<Polynomial> {
    if left.len() != right.len() {
        return Err(Error::LengthMismatch { expected: left.len(), got: right.len() });
    }
    let mut exponent = 0usize;
    let mut odd_right_before = 0usize;
    for (a, i) in left.iter().enumerate() {
        if a > 0 && right[a - 1].parity.is_odd() {
            odd_right_before += 1;
        }
        if i.parity.is_odd() {
            exponent += odd_right_before;
        }
    }
    let gens: Vec<Generator> = left.iter().zip(right).map(|(&i, &j)| family.make(i, j)).collect();
    let c = if exponent.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    Ok(Polynomial::product(&gens, c))
}

/// `Z(I,J)` in `S(U⊗W)`.
pub fn z_of(i: &[SuperIndex], j: &[SuperIndex]) -> Result<Polynomial> {
    pair_product(PairFamily::Uw, i, j)
}

/// `P_t(I,J) = Σ ε(τ) c(I,(στ)^{-1}) Z(στI, J)` (or with `τσ` for the tilde
/// variant): the image of `e_t(v_I) ⊗ w_J` in the symmetric algebra.
pub fn p_t(
    t: &YoungTableau,
    left: &[SuperIndex],
    right: &[SuperIndex],
    variant: SymmetrizerVariant,
    family: PairFamily,
    cap: usize,
) -> Result<Polynomial> {
    if left.len() != t.size() || right.len() != t.size() {
        return Err(Error::LengthMismatch { expected: t.size(), got: left.len().max(right.len()) });
    }
    let e = young_symmetrizer(t, variant, cap)?;
    let words = apply_to_word(&e, left)?;
    let mut out = Polynomial::zero();
    for (w, c) in words {
        out.add_assign(&pair_product(family, &w, right)?.scale(&c));
    }
    Ok(out)
}

/// `X(I) = x_{i_1 i_2} ... x_{i_{2k-1} i_{2k}}` in `S(S²W)`.
pub fn x_of(seq: &[SuperIndex]) -> Result<Polynomial> {
    square_product(false, seq)
}

/// `Y(I) = (-1)^β y_{i_1 i_2} ... y_{i_{2k-1} i_{2k}}` in `E(S²W)`, with
/// `β = Σ_α (k-α)(p(i_{2α-1}) + p(i_{2α}))`.
pub fn y_of(seq: &[SuperIndex]) -> Result<Polynomial> {
    square_product(true, seq)
}

fn square_product(exterior: bool, seq: &[SuperIndex]) -> Result<Polynomial> {
    if !seq.len().is_multiple_of(2) {
        return Err(Error::LengthMismatch { expected: seq.len() + 1, got: seq.len() });
    }
    let k = seq.len() / 2;
    let mut sign = 1i32;
    let mut gens = Vec::with_capacity(k);
    let mut beta = 0usize;
    for (a, pair) in seq.chunks(2).enumerate() {
        let Some((g, s)) = Generator::square(exterior, pair[0], pair[1]) else {
            return Ok(Polynomial::zero());
        };
        sign *= s;
        gens.push(g);
        beta += (k - 1 - a) * (pair[0].parity.bit() as usize + pair[1].parity.bit() as usize);
    }
    if exterior && beta % 2 == 1 {
        sign = -sign;
    }
    let c = BigRational::from_integer(sign.into());
    Ok(Polynomial::product(&gens, c))
}

fn symmetrized(
    t: &YoungTableau,
    seq: &[SuperIndex],
    cap: usize,
    f: fn(&[SuperIndex]) -> Result<Polynomial>,
) -> Result<Polynomial> {
    if seq.len() != t.size() {
        return Err(Error::LengthMismatch { expected: t.size(), got: seq.len() });
    }
    let e = young_symmetrizer(t, SymmetrizerVariant::Plain, cap)?;
    let mut out = Polynomial::zero();
    for (w, c) in apply_to_word(&e, seq)? {
        out.add_assign(&f(&w)?.scale(&c));
    }
    Ok(out)
}

/// Even Pfaffian `Pf_t(I) = Σ ε(τ) c(I,(στ)^{-1}) X(στI)`; every row of `t`
/// must have even length.
pub fn pf_t(t: &YoungTableau, seq: &[SuperIndex], cap: usize) -> Result<Polynomial> {
    if t.shape().parts().iter().any(|p| p % 2 != 0) {
        return Err(Error::InvalidShape(format!("{} has a row of odd length", t.shape())));
    }
    symmetrized(t, seq, cap, x_of)
}

/// Periplectic Pfaffian `PPf_t(I) = Σ ε(τ) c(I,(στ)^{-1}) Y(στI)`.
pub fn ppf_t(t: &YoungTableau, seq: &[SuperIndex], cap: usize) -> Result<Polynomial> {
    ppf_arms(t.shape())?;
    symmetrized(t, seq, cap, y_of)
}

/// Arms of a shape of Frobenius form `(α_1..α_p | α_1-1..α_p-1)`.
pub fn ppf_arms(shape: &Partition) -> Result<Vec<usize>> {
    let (arms, legs) = shape.frobenius();
    if arms.is_empty() || arms.iter().zip(&legs).any(|(a, l)| *a != l + 1) {
        return Err(Error::InvalidShape(format!("{shape} is not of the form (α|α-1) in Frobenius coordinates")));
    }
    Ok(arms)
}

/// Shape `(α_1..α_p | α_1-1..α_p-1)` with the numbering used by the
/// periplectic Pfaffian: hook by hook, the cells of the column part (diagonal
/// included, top to bottom) receive the odd numbers `1, 3, 5, ...` and the
/// cells right of the diagonal (left to right) receive the even numbers
/// `2, 4, 6, ...`. Pair `(2a-1, 2a)` thus joins the `a`-th column cell with
/// the `a`-th row cell.
pub fn ppf_tableau(arms: &[usize]) -> Result<YoungTableau> {
    if arms.is_empty() || arms.contains(&0) || arms.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidShape(format!("arms {arms:?} must be strictly decreasing and positive")));
    }
    let mut rows_len = vec![0usize; 0];
    // row i has i cells of earlier legs, then diagonal, then arm
    let total_rows = arms[0]; // leg of first hook is α_1 - 1, plus the diagonal row
    for i in 0..total_rows {
        let mut len = 0;
        for (h, &a) in arms.iter().enumerate() {
            if h == i {
                len = h + 1 + a;
            } else if h < i && i < h + a {
                len = len.max(h + 1);
            }
        }
        rows_len.push(len);
    }
    let shape = Partition::from_parts_lenient(rows_len)?;
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
    let mut odd = 1;
    let mut even = 2;
    for (h, &a) in arms.iter().enumerate() {
        for r in h..h + a {
            rows[r][h] = odd;
            odd += 2;
        }
        for c in h + 1..h + 1 + a {
            rows[h][c] = even;
            even += 2;
        }
    }
    YoungTableau::from_rows(rows)
}

/// Semistandard sequences for `t` over `range` (the "t-standard" sequences of
/// the generation statements).
pub fn admissible_sequences(t: &YoungTableau, range: IndexRange) -> Vec<SuperSequence> {
    enumerate_semistandard(t, range)
}
