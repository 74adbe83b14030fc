//! Matrix Lie superalgebras `gl`, `sl`, `osp`, `pe`, `spe` on a superspace
//! `V = (n|m)`: bases, brackets and the derivation actions on vectors,
//! covectors and the polynomial algebras.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{primitive_row, RatVec, RowReducer};
use crate::superalg::{normalize, Family, Generator, Monomial, Polynomial};
use crate::supercomb::{IndexRange, Parity, SuperIndex};

/// A sparse supermatrix on `V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixElement {
    range: IndexRange,
    entries: BTreeMap<(SuperIndex, SuperIndex), BigRational>,
}

fn sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

impl MatrixElement {
    pub fn zero(range: IndexRange) -> Self {
        Self { range, entries: BTreeMap::new() }
    }

    /// Matrix unit `E_{rc}`.
    pub fn unit(range: IndexRange, r: SuperIndex, c: SuperIndex) -> Self {
        let mut x = Self::zero(range);
        x.set(r, c, BigRational::one());
        x
    }

    pub fn range(&self) -> IndexRange {
        self.range
    }

    pub fn entries(&self) -> &BTreeMap<(SuperIndex, SuperIndex), BigRational> {
        &self.entries
    }

    pub fn entry(&self, r: SuperIndex, c: SuperIndex) -> BigRational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, r: SuperIndex, c: SuperIndex, v: BigRational) {
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    fn add_at(&mut self, r: SuperIndex, c: SuperIndex, v: BigRational) {
        let cur = self.entry(r, c);
        self.set(r, c, cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parity of a homogeneous matrix; zero counts as even, `None` if mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.entries.keys().map(|(r, c)| r.parity + c.parity);
        let Some(first) = it.next() else { return Some(Parity::Even) };
        it.all(|p| p == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_at(r, c, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero(self.range);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, v * k);
        }
        out
    }

    /// Ordinary matrix product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.range);
        for (&(r, k), a) in &self.entries {
            for (&(k2, c), b) in other.entries.range((k, SuperIndex { parity: Parity::Even, value: 0 })..) {
                if k2 != k {
                    break;
                }
                out.add_at(r, c, a * b);
            }
        }
        out
    }

    /// `[X,Y] = XY - (-1)^{p(X)p(Y)} YX`, extended bilinearly to mixed inputs.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.range);
        for (a, xa) in self.homogeneous_parts() {
            for (b, yb) in other.homogeneous_parts() {
                let s = sign(a.is_odd() && b.is_odd());
                out = out.add(&xa.mul(&yb)).sub(&yb.mul(&xa).scale(&s));
            }
        }
        out
    }

    /// Splits into even and odd parts (nonzero ones only).
    pub fn homogeneous_parts(&self) -> Vec<(Parity, MatrixElement)> {
        let mut even = Self::zero(self.range);
        let mut odd = Self::zero(self.range);
        for (&(r, c), v) in &self.entries {
            if (r.parity + c.parity).is_odd() {
                odd.set(r, c, v.clone());
            } else {
                even.set(r, c, v.clone());
            }
        }
        [(Parity::Even, even), (Parity::Odd, odd)].into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// `str X = Σ_even X_ii - Σ_odd X_īī`.
    pub fn supertrace(&self) -> BigRational {
        self.range
            .indices()
            .into_iter()
            .map(|i| self.entry(i, i) * sign(i.parity.is_odd()))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `X e_j = Σ_i X_{ij} e_i`.
    pub fn act_on_vector(&self, j: SuperIndex) -> Vec<(SuperIndex, BigRational)> {
        self.entries.iter().filter(|((_, c), _)| *c == j).map(|(&(r, _), v)| (r, v.clone())).collect()
    }

    /// `X e_j^* = -Σ_k (-1)^{p(X_{jk}) p(j)} X_{jk} e_k^*`.
    pub fn act_on_covector(&self, j: SuperIndex) -> Vec<(SuperIndex, BigRational)> {
        self.entries
            .range((j, SuperIndex { parity: Parity::Even, value: 0 })..)
            .take_while(|((r, _), _)| *r == j)
            .map(|(&(_, k), v)| {
                let px = j.parity + k.parity;
                (k, -(v * sign(px.is_odd() && j.parity.is_odd())))
            })
            .collect()
    }

    /// Action on one generator of a polynomial algebra (a linear combination
    /// of generators). Only the `V` and `V*` slots of `x_{ri}`, `x*_{is}` are
    /// acted on; all other families are inert.
    pub fn act_on_generator(&self, g: &Generator) -> Vec<(Generator, BigRational)> {
        match g.family {
            Family::Uv => {
                let (r, i) = (g.row, g.col);
                self.act_on_vector(i)
                    .into_iter()
                    .map(|(k, v)| {
                        let px = k.parity + i.parity;
                        (Generator::uv(r, k), v * sign(px.is_odd() && r.parity.is_odd()))
                    })
                    .collect()
            }
            Family::Vw => {
                let (i, s) = (g.row, g.col);
                self.act_on_covector(i).into_iter().map(|(k, v)| (Generator::vw(k, s), v)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Derivation action on a polynomial with the super-Leibniz rule
    /// `X(fg) = (Xf)g + (-1)^{p(X)p(f)} f(Xg)`.
    pub fn act_on_polynomial(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (px, xp) in self.homogeneous_parts() {
            for (m, c) in f.terms() {
                act_on_monomial_into(&xp, px, m, c, &mut out);
            }
        }
        out
    }
}

fn act_on_monomial_into(x: &MatrixElement, px: Parity, m: &Monomial, c: &BigRational, out: &mut Polynomial) {
    let factors = m.factors();
    let mut prefix = Parity::Even;
    for (a, g) in factors.iter().enumerate() {
        let s = sign(px.is_odd() && prefix.is_odd());
        for (h, v) in x.act_on_generator(g) {
            let mut f = factors.to_vec();
            f[a] = h;
            if let Some((mon, ns)) = normalize(&f) {
                let coeff = c * &v * &s * sign(ns < 0);
                out.add_term(mon, coeff);
            }
        }
        prefix = prefix + g.parity;
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.entries.iter().map(|((r, c), v)| format!("({v})E[{r},{c}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The matrix superalgebra families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    Gl,
    Sl,
    Osp,
    Pe,
    Spe,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::Gl => "gl",
            FamilyTag::Sl => "sl",
            FamilyTag::Osp => "osp",
            FamilyTag::Pe => "pe",
            FamilyTag::Spe => "spe",
        };
        f.write_str(s)
    }
}

/// `g = g_- ⊕ g_0 ⊕ g_+` with `g_-` inside `Hom(V_0, V_1)` and `g_+` inside
/// `Hom(V_1, V_0)`.
#[derive(Debug, Clone)]
pub struct Grading {
    pub minus: Vec<MatrixElement>,
    pub zero: Vec<MatrixElement>,
    pub plus: Vec<MatrixElement>,
}

#[derive(Debug, Clone)]
pub struct LieFamily {
    pub tag: FamilyTag,
    pub range: IndexRange,
    pub basis: Vec<MatrixElement>,
    pub grading: Option<Grading>,
}

/// A covariant 2-tensor `Σ ω_{ab} e_a^* ⊗ e_b^*`.
pub type BilinearForm = BTreeMap<(SuperIndex, SuperIndex), BigRational>;

/// The even form preserved by `osp(n|2r)`:
/// `Σ_i e_i^*⊗e_{n-i+1}^* + Σ_{j≤r} (e_{m-j+1}^*⊗e_j^* - e_j^*⊗e_{m-j+1}^*)` (odd
/// indices in the second sum).
pub fn osp_form(range: IndexRange) -> Result<BilinearForm> {
    let (n, m) = (range.even, range.odd);
    if m % 2 != 0 {
        return Err(Error::InvalidDimensions(format!("osp needs an even odd dimension, got ({n}|{m})")));
    }
    let mut w = BilinearForm::new();
    for i in 1..=n {
        w.insert((SuperIndex::even(i as u32), SuperIndex::even((n - i + 1) as u32)), BigRational::one());
    }
    for j in 1..=m / 2 {
        let a = SuperIndex::odd((m - j + 1) as u32);
        let b = SuperIndex::odd(j as u32);
        w.insert((a, b), BigRational::one());
        w.insert((b, a), -BigRational::one());
    }
    Ok(w)
}

/// The odd form preserved by `pe(n)`: `Σ_i (e_i^*⊗e_ī^* + e_ī^*⊗e_i^*)`.
pub fn pe_form(range: IndexRange) -> Result<BilinearForm> {
    if range.even != range.odd {
        return Err(Error::InvalidDimensions(format!("pe needs dims (n|n), got ({}|{})", range.even, range.odd)));
    }
    let mut w = BilinearForm::new();
    for i in 1..=range.even as u32 {
        w.insert((SuperIndex::even(i), SuperIndex::odd(i)), BigRational::one());
        w.insert((SuperIndex::odd(i), SuperIndex::even(i)), BigRational::one());
    }
    Ok(w)
}

/// `X·ω` for the tensor action on `V*⊗V*`.
pub fn act_on_form(x: &MatrixElement, w: &BilinearForm) -> BilinearForm {
    let mut out = BilinearForm::new();
    let mut add = |k: (SuperIndex, SuperIndex), v: BigRational| {
        let e = out.entry(k).or_insert_with(BigRational::zero);
        *e += v;
    };
    for (px, xp) in x.homogeneous_parts() {
        for (&(a, b), c) in w {
            for (k, v) in xp.act_on_covector(a) {
                add((k, b), c * v);
            }
            let s = sign(px.is_odd() && a.parity.is_odd());
            for (k, v) in xp.act_on_covector(b) {
                add((a, k), c * v * &s);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn gl_units(range: IndexRange, parity: Parity) -> Vec<MatrixElement> {
    let idx = range.indices();
    let mut out = Vec::new();
    for &r in &idx {
        for &c in &idx {
            if r.parity + c.parity == parity {
                out.push(MatrixElement::unit(range, r, c));
            }
        }
    }
    out
}

/// Solves `X·ω = 0` (and `str X = 0` if asked) over the units of one parity.
fn solve_form_algebra(range: IndexRange, w: &BilinearForm, parity: Parity, traceless: bool) -> Vec<MatrixElement> {
    let units = gl_units(range, parity);
    let mut eqs: BTreeMap<(SuperIndex, SuperIndex), RatVec> = BTreeMap::new();
    for (col, u) in units.iter().enumerate() {
        for (k, v) in act_on_form(u, w) {
            eqs.entry(k).or_default().insert(col, v);
        }
    }
    let mut red = RowReducer::new();
    for row in eqs.values() {
        red.insert_rational(row);
    }
    if traceless {
        let row: RatVec = units
            .iter()
            .enumerate()
            .map(|(c, u)| (c, u.supertrace()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        red.insert_rational(&row);
    }
    red.nullspace(units.len())
        .iter()
        .map(|v| {
            let ints = primitive_row(v);
            let mut x = MatrixElement::zero(range);
            for (c, k) in ints {
                x = x.add(&units[c].scale(&BigRational::from_integer(k)));
            }
            x
        })
        .collect()
}

fn sl_basis(range: IndexRange) -> Vec<MatrixElement> {
    let idx = range.indices();
    let mut out = Vec::new();
    for &r in &idx {
        for &c in &idx {
            if r != c {
                out.push(MatrixElement::unit(range, r, c));
            }
        }
    }
    // consecutive diagonal differences with zero supertrace
    for w in idx.windows(2) {
        let (a, b) = (w[0], w[1]);
        let s = sign(a.parity != b.parity);
        let h = MatrixElement::unit(range, a, a).sub(&MatrixElement::unit(range, b, b).scale(&s));
        out.push(h);
    }
    out.sort();
    out
}

fn split_grading(basis: &[MatrixElement]) -> Grading {
    let mut g = Grading { minus: Vec::new(), zero: Vec::new(), plus: Vec::new() };
    for x in basis {
        let lower = x.entries.keys().all(|(r, c)| r.parity.is_odd() && !c.parity.is_odd());
        let upper = x.entries.keys().all(|(r, c)| !r.parity.is_odd() && c.parity.is_odd());
        match x.parity() {
            Some(Parity::Even) => g.zero.push(x.clone()),
            _ if lower => g.minus.push(x.clone()),
            _ if upper => g.plus.push(x.clone()),
            _ => {}
        }
    }
    g
}

/// Builds a basis of the requested family. Form-preserving families are
/// obtained by exact nullspace computation over the matrix units.
pub fn build_family(tag: FamilyTag, range: IndexRange) -> Result<LieFamily> {
    let basis = match tag {
        FamilyTag::Gl => {
            let mut b = gl_units(range, Parity::Even);
            b.extend(gl_units(range, Parity::Odd));
            b
        }
        FamilyTag::Sl => sl_basis(range),
        FamilyTag::Osp => {
            let w = osp_form(range)?;
            let mut b = solve_form_algebra(range, &w, Parity::Even, false);
            b.extend(solve_form_algebra(range, &w, Parity::Odd, false));
            b
        }
        FamilyTag::Pe | FamilyTag::Spe => {
            let w = pe_form(range)?;
            let traceless = tag == FamilyTag::Spe;
            let mut b = solve_form_algebra(range, &w, Parity::Even, traceless);
            b.extend(solve_form_algebra(range, &w, Parity::Odd, traceless));
            b
        }
    };
    let grading = (tag != FamilyTag::Osp).then(|| split_grading(&basis));
    Ok(LieFamily { tag, range, basis, grading })
}

impl LieFamily {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The defining form, for the form-preserving families.
    pub fn form(&self) -> Option<BilinearForm> {
        match self.tag {
            FamilyTag::Osp => osp_form(self.range).ok(),
            FamilyTag::Pe | FamilyTag::Spe => pe_form(self.range).ok(),
            _ => None,
        }
    }

    /// Whether `x` lies in the span of the basis.
    pub fn contains(&self, x: &MatrixElement) -> bool {
        let idx = self.range.indices();
        let pos = |r: &SuperIndex, c: &SuperIndex| {
            idx.iter().position(|a| a == r).unwrap() * idx.len() + idx.iter().position(|a| a == c).unwrap()
        };
        let vec = |m: &MatrixElement| -> RatVec { m.entries.iter().map(|((r, c), v)| (pos(r, c), v.clone())).collect() };
        let mut red = RowReducer::new();
        for b in &self.basis {
            red.insert_rational(&vec(b));
        }
        red.contains(&vec(x))
    }

    /// Diagonal basis elements (a Cartan subalgebra for every family here
    /// except `osp`, whose diagonal elements are still enough for weights).
    pub fn diagonal(&self) -> Vec<MatrixElement> {
        self.basis.iter().filter(|x| x.entries.keys().all(|(r, c)| r == c)).cloned().collect()
    }
}

/// `Y^- = Π_{i<j}(E_{ī,j} - E_{j̄,i})` as a matrix list (the factors), `n ≥ 2`.
pub fn yminus_factors(n: usize) -> Vec<MatrixElement> {
    let range = IndexRange::new(n, n);
    let mut out = Vec::new();
    for i in 1..=n as u32 {
        for j in i + 1..=n as u32 {
            let a = MatrixElement::unit(range, SuperIndex::odd(i), SuperIndex::even(j));
            let b = MatrixElement::unit(range, SuperIndex::odd(j), SuperIndex::even(i));
            out.push(a.sub(&b));
        }
    }
    out
}

/// Anticommuting symbol standing for `E_{ī,j}`.
pub fn e_symbol(i: u32, j: u32) -> Generator {
    Generator::custom(0, SuperIndex::odd(i), SuperIndex::even(j), Parity::Odd)
}

/// Reading of the recursive sign `|A|` used in the sum form of `Y^-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignConvention {
    /// Base value `|A| = 0` at `n = 2`; the correction term sums `a_{ij}` over
    /// all `i > j`.
    Literal,
    /// Base value `|A| = a_{21}` at `n = 2`; the correction term sums only the
    /// last row, `a_{nj}` with `j < n`, the rows above being counted inside
    /// `|A^*|`. Moving the pairs `(i,n)` to the end of the product passes
    /// `C(n-1,3)` odd factors, which replaces the `n(n-1)(n-2)/6` term.
    Corrected,
}

/// 0/1 matrices with zero diagonal and `a_{ij} + a_{ji} = 1` off it.
pub fn tournament_matrices(n: usize) -> Vec<Vec<Vec<u8>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0..1usize << pairs.len())
        .map(|mask| {
            let mut a = vec![vec![0u8; n]; n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    a[i][j] = 1;
                } else {
                    a[j][i] = 1;
                }
            }
            a
        })
        .collect()
}

/// The recursive exponent `|A|` (only its parity matters).
pub fn a_norm(a: &[Vec<u8>], conv: SignConvention) -> usize {
    let n = a.len();
    if n <= 1 {
        return 0;
    }
    if n == 2 {
        return match conv {
            SignConvention::Literal => 0,
            SignConvention::Corrected => a[1][0] as usize,
        };
    }
    let star: Vec<Vec<u8>> = a[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    let last = n - 1;
    // A*_i: entries of A* strictly below row i (1-based i)
    let below = |i: usize| -> usize { star[i..].iter().flatten().map(|&x| x as usize).sum() };
    let mut e = a_norm(&star, conv);
    for i in 0..n - 2 {
        e += a[i][last] as usize * below(i + 1);
    }
    for i in 0..last {
        for j in 0..i {
            e += (a[i][last] * a[last][j]) as usize;
        }
    }
    e += match conv {
        SignConvention::Literal => (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| a[i][j] as usize).sum::<usize>(),
        SignConvention::Corrected => (0..last).map(|j| a[last][j] as usize).sum(),
    };
    e + match conv {
        SignConvention::Literal => n * (n - 1) * (n - 2) / 6,
        SignConvention::Corrected => (n - 1) * (n - 2) * (n - 3) / 6,
    }
}

/// `E_A = Π E_{ī,j}^{a_{ij}}` over rows left to right, then downwards.
pub fn e_of(a: &[Vec<u8>]) -> Polynomial {
    let mut gens = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x == 1 {
                gens.push(e_symbol(i as u32 + 1, j as u32 + 1));
            }
        }
    }
    Polynomial::product(&gens, BigRational::one())
}

/// Both sides of the expansion of `Y^-` in the exterior algebra on the
/// symbols `E_{ī,j}`.
#[derive(Debug, Clone)]
pub struct YminusExpansion {
    pub n: usize,
    pub product: Polynomial,
    pub sum: Polynomial,
    /// `product - sum`, term by term.
    pub diff: Polynomial,
}

pub fn yminus_expansion(n: usize, conv: SignConvention) -> Result<YminusExpansion> {
    if n < 2 {
        return Err(Error::InvalidDimensions(format!("Y^- needs n >= 2, got {n}")));
    }
    let mut product = Polynomial::one();
    for i in 1..=n as u32 {
        for j in i + 1..=n as u32 {
            let f = Polynomial::generator(e_symbol(i, j)).sub(&Polynomial::generator(e_symbol(j, i)));
            product = product.mul(&f);
        }
    }
    let mut sum = Polynomial::zero();
    for a in tournament_matrices(n) {
        let s = sign(a_norm(&a, conv) % 2 == 1);
        sum.add_assign(&e_of(&a).scale(&s));
    }
    let diff = product.sub(&sum);
    Ok(YminusExpansion { n, product, sum, diff })
}

/// Weight of a homogeneous element under a diagonal matrix `h`, i.e. the
/// scalar `λ` with `[h, X] = λ X`, if it exists.
pub fn weight_under(h: &MatrixElement, x: &MatrixElement) -> Option<BigRational> {
    let br = h.bracket(x);
    let (&k, v) = x.entries.iter().next()?;
    let lambda = br.entry(k.0, k.1) / v;
    (br == x.scale(&lambda)).then_some(lambda)
}

/// Sum of the weights of a list of root vectors under `h`.
pub fn total_weight(h: &MatrixElement, xs: &[MatrixElement]) -> Option<BigRational> {
    xs.iter().map(|x| weight_under(h, x)).sum()
}

/// Largest absolute coefficient, for diagnostics.
pub fn max_abs_entry(x: &MatrixElement) -> BigRational {
    x.entries.values().map(|v| v.abs()).max().unwrap_or_else(BigRational::zero)
}
