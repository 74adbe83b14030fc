//! Permutations, the sign cocycle, the symmetric-group action on words and
//! Young symmetrizers.
//!
//! Composition convention: `(στ)(x) = σ(τ(x))`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::supercomb::{Graded, YoungTableau};

/// A bijection of `{0..k}` stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Self { images: (0..k).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidTableau(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds from 1-based images, e.g. `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidTableau("one-based images cannot contain 0".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    pub fn transposition(k: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(a, b);
        Self { images }
    }

    /// The cycle `a_0 -> a_1 -> ... -> a_r -> a_0` (0-based points).
    pub fn cycle(k: usize, points: &[usize]) -> Self {
        let mut images: Vec<usize> = (0..k).collect();
        for w in 0..points.len() {
            images[points[w]] = points[(w + 1) % points.len()];
        }
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inversions(&self) -> usize {
        let n = self.images.len();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.images[a] > self.images[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `ε(σ) = (-1)^{#inversions}`.
    pub fn sign(&self) -> i32 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Extends to `S_total` acting on positions `offset..offset+degree`.
    pub fn embed(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<usize> = (0..total).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset + x;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// All of `S_k` in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// `(σI)_α = i_{σ^{-1}(α)}`.
pub fn act_on_sequence<T: Copy>(sigma: &Permutation, seq: &[T]) -> Result<Vec<T>> {
    if seq.len() != sigma.degree() {
        return Err(Error::LengthMismatch { expected: sigma.degree(), got: seq.len() });
    }
    let mut out = seq.to_vec();
    for (a, &x) in seq.iter().enumerate() {
        out[sigma.apply(a)] = x;
    }
    Ok(out)
}

/// The sign `c(I, σ)` with `x_{σ^{-1}I} = c(I,σ) x_I` in a free
/// supercommutative algebra: `-1` per pair of odd letters whose relative
/// order `σ^{-1}` reverses.
pub fn cocycle<T: Graded>(seq: &[T], sigma: &Permutation) -> Result<i32> {
    if seq.len() != sigma.degree() {
        return Err(Error::LengthMismatch { expected: sigma.degree(), got: seq.len() });
    }
    // word w_α = i_{σ(α)}; count inversions of σ among odd letters
    let n = seq.len();
    let mut count = 0usize;
    for a in 0..n {
        if !seq[sigma.apply(a)].parity().is_odd() {
            continue;
        }
        for b in a + 1..n {
            if sigma.apply(a) > sigma.apply(b) && seq[sigma.apply(b)].parity().is_odd() {
                count += 1;
            }
        }
    }
    Ok(if count.is_multiple_of(2) { 1 } else { -1 })
}

/// A sparse rational combination of permutations of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    degree: usize,
    terms: BTreeMap<Permutation, BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn identity(degree: usize) -> Self {
        Self::from_permutation(Permutation::identity(degree))
    }

    pub fn from_permutation(p: Permutation) -> Self {
        let degree = p.degree();
        let mut terms = BTreeMap::new();
        terms.insert(p, BigRational::one());
        Self { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Permutation, c: BigRational) {
        assert_eq!(p.degree(), self.degree);
        let e = self.terms.entry(p).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        Self { degree: self.degree, terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut acc: BTreeMap<Permutation, BigRational> = BTreeMap::new();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                *acc.entry(g.compose(h)).or_insert_with(BigRational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Self { degree: self.degree, terms: acc }
    }

    /// Extends every permutation to act on `offset..offset+degree` inside `S_total`.
    pub fn embed(&self, offset: usize, total: usize) -> Self {
        Self {
            degree: total,
            terms: self.terms.iter().map(|(p, c)| (p.embed(offset, total), c.clone())).collect(),
        }
    }

    /// Antipode `Σ c_g g^{-1}`.
    pub fn antipode(&self) -> Self {
        Self { degree: self.degree, terms: self.terms.iter().map(|(p, c)| (p.inverse(), c.clone())).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetrizerVariant {
    /// `Σ ε(τ) στ`
    Plain,
    /// `Σ ε(τ) τσ`
    Tilde,
}

/// Default cap on `|R_t|·|C_t|`.
pub const DEFAULT_SYMMETRIZER_CAP: usize = 2_000_000;

/// Fully expanded Young symmetrizer of `t`.
pub fn young_symmetrizer(t: &YoungTableau, variant: SymmetrizerVariant, cap: usize) -> Result<GroupAlgebraElement> {
    let rows = t.row_subgroup();
    let cols = t.column_subgroup();
    let needed = rows.order().saturating_mul(cols.order());
    if needed > cap {
        return Err(Error::CapExceeded { what: format!("symmetrizer of {t}"), needed, cap });
    }
    let rs = rows.elements();
    let cs = cols.elements();
    let mut acc: BTreeMap<Permutation, BigRational> = BTreeMap::new();
    for tau in &cs {
        let eps = BigRational::from_integer(tau.sign().into());
        for sigma in &rs {
            let g = match variant {
                SymmetrizerVariant::Plain => sigma.compose(tau),
                SymmetrizerVariant::Tilde => tau.compose(sigma),
            };
            *acc.entry(g).or_insert_with(BigRational::zero) += &eps;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(GroupAlgebraElement { degree: t.size(), terms: acc })
}

/// Signed alternating sum `Σ_{π∈reps} ε(π) π`.
pub fn signed_sum(reps: &[Permutation], degree: usize) -> GroupAlgebraElement {
    let mut g = GroupAlgebraElement::zero(degree);
    for p in reps {
        g.add_term(p.clone(), BigRational::from_integer(p.sign().into()));
    }
    g
}

/// Formal combination of words.
pub type WordCombination<T> = BTreeMap<Vec<T>, BigRational>;

/// `σ v_I = c(I, σ^{-1}) v_{σI}`, extended linearly to group-algebra elements.
pub fn apply_to_word<T: Graded + Copy + Ord>(g: &GroupAlgebraElement, word: &[T]) -> Result<WordCombination<T>> {
    if word.len() != g.degree() {
        return Err(Error::LengthMismatch { expected: g.degree(), got: word.len() });
    }
    let mut out: WordCombination<T> = BTreeMap::new();
    for (sigma, c) in g.terms() {
        let sign = cocycle(word, &sigma.inverse())?;
        let w = act_on_sequence(sigma, word)?;
        let e = out.entry(w).or_insert_with(BigRational::zero);
        if sign > 0 {
            *e += c;
        } else {
            *e -= c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Applies `g` to every word of a combination.
pub fn apply_to_combination<T: Graded + Copy + Ord>(
    g: &GroupAlgebraElement,
    comb: &WordCombination<T>,
) -> Result<WordCombination<T>> {
    let mut out: WordCombination<T> = BTreeMap::new();
    for (w, c) in comb {
        for (w2, c2) in apply_to_word(g, w)? {
            *out.entry(w2).or_insert_with(BigRational::zero) += c * c2;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercomb::{Partition, SuperIndex};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn composition_and_inverse() {
        let s = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        let t = Permutation::transposition(3, 0, 1);
        assert_eq!(s.compose(&t).apply(0), s.apply(t.apply(0)));
        assert!(s.compose(&s.inverse()).is_identity());
        assert_eq!(s.sign(), 1);
        assert_eq!(t.sign(), -1);
        assert_eq!(all_permutations(4).len(), 24);
    }

    #[test]
    fn sequence_action() {
        let x = SuperIndex::even(1);
        let y = SuperIndex::even(2);
        let z = SuperIndex::even(3);
        assert_eq!(act_on_sequence(&Permutation::identity(2), &[x, y]).unwrap(), vec![x, y]);
        assert_eq!(act_on_sequence(&Permutation::transposition(2, 0, 1), &[x, y]).unwrap(), vec![y, x]);
        // σ = (1 2 3): σ(1)=2, σ(2)=3, σ(3)=1; (σI)_α = i_{σ^{-1}(α)}
        let c = Permutation::cycle(3, &[0, 1, 2]);
        assert_eq!(act_on_sequence(&c, &[x, y, z]).unwrap(), vec![z, x, y]);
        assert!(act_on_sequence(&c, &[x]).is_err());
    }

    #[test]
    fn cocycle_examples() {
        let e1 = SuperIndex::even(1);
        let e2 = SuperIndex::even(2);
        let o1 = SuperIndex::odd(1);
        let o2 = SuperIndex::odd(2);
        for p in all_permutations(3) {
            assert_eq!(cocycle(&[e1, e2, e1], &p).unwrap(), 1);
        }
        assert_eq!(cocycle(&[o1, o2], &Permutation::transposition(2, 0, 1)).unwrap(), -1);
        assert_eq!(cocycle(&[o1, e2], &Permutation::transposition(2, 0, 1)).unwrap(), 1);
    }

    #[test]
    fn symmetrizers_of_two_cells() {
        let row = YoungTableau::row_filled(&Partition::new(vec![2]).unwrap());
        let col = YoungTableau::row_filled(&Partition::new(vec![1, 1]).unwrap());
        let sw = Permutation::transposition(2, 0, 1);
        let e_row = young_symmetrizer(&row, SymmetrizerVariant::Plain, 100).unwrap();
        assert_eq!(e_row.terms()[&Permutation::identity(2)], q(1));
        assert_eq!(e_row.terms()[&sw], q(1));
        let e_col = young_symmetrizer(&col, SymmetrizerVariant::Plain, 100).unwrap();
        assert_eq!(e_col.terms()[&sw], q(-1));
        assert!(young_symmetrizer(&row, SymmetrizerVariant::Plain, 1).is_err());
    }

    #[test]
    fn apply_examples() {
        let o1 = SuperIndex::odd(1);
        let e1 = SuperIndex::even(1);
        let col = YoungTableau::row_filled(&Partition::new(vec![1, 1]).unwrap());
        let row = YoungTableau::row_filled(&Partition::new(vec![2]).unwrap());
        let e_col = young_symmetrizer(&col, SymmetrizerVariant::Plain, 100).unwrap();
        let r = apply_to_word(&e_col, &[o1, o1]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[&vec![o1, o1]], q(2));
        let e_row = young_symmetrizer(&row, SymmetrizerVariant::Plain, 100).unwrap();
        let r = apply_to_word(&e_row, &[e1, e1]).unwrap();
        assert_eq!(r[&vec![e1, e1]], q(2));
        let id = apply_to_word(&GroupAlgebraElement::identity(2), &[e1, o1]).unwrap();
        assert_eq!(id[&vec![e1, o1]], q(1));
    }

    #[test]
    fn quasi_idempotent_hook() {
        let t = YoungTableau::row_filled(&Partition::new(vec![2, 1]).unwrap());
        for v in [SymmetrizerVariant::Plain, SymmetrizerVariant::Tilde] {
            let e = young_symmetrizer(&t, v, 100).unwrap();
            let sq = e.mul(&e);
            assert_eq!(sq, e.scale(&q(3)));
        }
    }
}
