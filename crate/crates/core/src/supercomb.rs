//! Partitions, Young tableaux, the ordered super-alphabet and semistandard
//! sequences.
//!
//! Indices come in two copies, even and odd. Every even index precedes every
//! odd one; inside a copy the natural order applies.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symgroup::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn from_bit(b: u8) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        Self::from_bit(self.bit() + 1)
    }
}

// addition in Z/2
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

/// Anything carrying a Z/2 degree.
pub trait Graded {
    fn parity(&self) -> Parity;
}

/// Sign `(-1)^(a*b)` for two parities.
pub fn koszul(a: Parity, b: Parity) -> i32 {
    if a.is_odd() && b.is_odd() {
        -1
    } else {
        1
    }
}

/// An element of the ordered super-alphabet: a positive integer tagged even
/// or odd. Field order gives the derived total order (parity first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SuperIndex {
    pub parity: Parity,
    pub value: u32,
}

impl SuperIndex {
    pub fn even(value: u32) -> Self {
        assert!(value > 0, "super-indices are positive");
        Self { parity: Parity::Even, value }
    }

    pub fn odd(value: u32) -> Self {
        assert!(value > 0, "super-indices are positive");
        Self { parity: Parity::Odd, value }
    }

    /// Same value in the other copy.
    pub fn conjugate(self) -> Self {
        Self { parity: self.parity.flip(), value: self.value }
    }
}

impl Graded for SuperIndex {
    fn parity(&self) -> Parity {
        self.parity
    }
}

impl fmt::Display for SuperIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity {
            Parity::Even => write!(f, "{}", self.value),
            Parity::Odd => write!(f, "{}'", self.value),
        }
    }
}

impl std::str::FromStr for SuperIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (body, odd) = match s.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let value: u32 = body.parse().map_err(|_| Error::OutOfRange(s.to_string()))?;
        if value == 0 {
            return Err(Error::OutOfRange(s.to_string()));
        }
        Ok(if odd { SuperIndex::odd(value) } else { SuperIndex::even(value) })
    }
}

/// `{1..even} ∪ {1'..odd'}`, i.e. the basis labels of a superspace of
/// dimension `(even|odd)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct IndexRange {
    pub even: usize,
    pub odd: usize,
}

impl IndexRange {
    pub fn new(even: usize, odd: usize) -> Self {
        Self { even, odd }
    }

    pub fn len(&self) -> usize {
        self.even + self.odd
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, i: SuperIndex) -> bool {
        match i.parity {
            Parity::Even => (i.value as usize) <= self.even,
            Parity::Odd => (i.value as usize) <= self.odd,
        }
    }

    /// All indices in increasing order.
    pub fn indices(&self) -> Vec<SuperIndex> {
        (1..=self.even as u32)
            .map(SuperIndex::even)
            .chain((1..=self.odd as u32).map(SuperIndex::odd))
            .collect()
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidShape(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("parts not weakly decreasing: {parts:?}")));
        }
        Ok(Self(parts))
    }

    /// Drops trailing zeros, then validates.
    pub fn from_parts_lenient(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if rows == 0 || cols == 0 {
            Self(Vec::new())
        } else {
            Self(vec![cols; rows])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    /// Part `i` (0-based); zero beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition((0..cols).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.rows()).all(|i| self.part(i) >= other.part(i))
    }

    /// Frobenius coordinates `(arms | legs)`.
    pub fn frobenius(&self) -> (Vec<usize>, Vec<usize>) {
        let conj = self.conjugate();
        let mut arms = Vec::new();
        let mut legs = Vec::new();
        let mut i = 0;
        while self.part(i) > i {
            arms.push(self.part(i) - i - 1);
            legs.push(conj.part(i) - i - 1);
            i += 1;
        }
        (arms, legs)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `size` with at most `max_rows` rows and parts at most
/// `max_cols`, in decreasing lexicographic order.
pub fn enumerate_partitions(size: usize, max_rows: Option<usize>, max_cols: Option<usize>) -> Vec<Partition> {
    fn rec(rem: usize, cap: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, max_cols.unwrap_or(size), max_rows.unwrap_or(size), &mut Vec::new(), &mut out);
    out
}

/// A partition shape with a bijective numbering of its cells by `1..=size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YoungTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    /// Builds a tableau from its rows; entries must be a bijection onto `1..=size`.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect())?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for &e in rows.iter().flatten() {
            if e == 0 || e > n || seen[e] {
                return Err(Error::InvalidTableau(format!("entries of {rows:?} are not a bijection onto 1..={n}")));
            }
            seen[e] = true;
        }
        Ok(Self { shape, rows })
    }

    /// Builds a tableau and insists that it is standard.
    pub fn standard_from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Self::from_rows(rows)?;
        if !t.is_standard() {
            return Err(Error::InvalidTableau(format!("{:?} is not standard", t.rows)));
        }
        Ok(t)
    }

    /// Fills the shape row by row with `1, 2, ...`.
    pub fn row_filled(shape: &Partition) -> Self {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let r: Vec<usize> = (next..next + len).collect();
                next += len;
                r
            })
            .collect();
        Self { shape: shape.clone(), rows }
    }

    /// Fills the shape column by column with `1, 2, ...`.
    pub fn column_filled(shape: &Partition) -> Self {
        let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
        let conj = shape.conjugate();
        let mut next = 1;
        for c in 0..conj.rows() {
            for row in rows.iter_mut().take(conj.part(c)) {
                row[c] = next;
                next += 1;
            }
        }
        Self { shape: shape.clone(), rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.rows[row][col]
    }

    /// Entries of column `c`, top to bottom.
    pub fn column(&self, c: usize) -> Vec<usize> {
        self.rows.iter().filter(|r| r.len() > c).map(|r| r[c]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.shape.part(0)).map(|c| self.column(c)).collect()
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]));
        rows_ok && cols_ok
    }

    /// The tableau `σt`: every entry `a` replaced by `σ(a)`.
    pub fn relabel(&self, sigma: &Permutation) -> YoungTableau {
        let rows = self.rows.iter().map(|r| r.iter().map(|&a| sigma.apply(a - 1) + 1).collect()).collect();
        YoungTableau { shape: self.shape.clone(), rows }
    }

    /// Adds `offset` to every entry (used to embed a tableau into a larger
    /// position range).
    pub fn shifted_entries(&self, offset: usize) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.iter().map(|&a| a + offset).collect()).collect()
    }

    /// Places `items[α-1]` in the cell numbered `α`.
    pub fn fill<T: Copy>(&self, items: &[T]) -> Result<Vec<Vec<T>>> {
        if items.len() != self.size() {
            return Err(Error::LengthMismatch { expected: self.size(), got: items.len() });
        }
        Ok(self.rows.iter().map(|r| r.iter().map(|&a| items[a - 1]).collect()).collect())
    }

    /// Row stabilizer as a Young subgroup on positions `0..size`.
    pub fn row_subgroup(&self) -> YoungSubgroup {
        YoungSubgroup::new(self.size(), self.rows.iter().map(|r| r.iter().map(|a| a - 1).collect()).collect())
    }

    /// Column stabilizer as a Young subgroup on positions `0..size`.
    pub fn column_subgroup(&self) -> YoungSubgroup {
        YoungSubgroup::new(self.size(), self.columns().iter().map(|c| c.iter().map(|a| a - 1).collect()).collect())
    }
}

impl fmt::Display for YoungTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// All standard tableaux of the given shape, in lexicographic order of their
/// row readings.
pub fn enumerate_standard_tableaux(shape: &Partition) -> Vec<YoungTableau> {
    let n = shape.size();
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|_| Vec::new()).collect();
    let mut out = Vec::new();
    // Place 1..n one at a time; each number goes to the end of a row whose
    // length is below the shape and below the row above.
    fn rec(k: usize, n: usize, shape: &Partition, rows: &mut Vec<Vec<usize>>, out: &mut Vec<YoungTableau>) {
        if k > n {
            out.push(YoungTableau { shape: shape.clone(), rows: rows.clone() });
            return;
        }
        for r in 0..rows.len() {
            let len = rows[r].len();
            if len < shape.part(r) && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(k);
                rec(k + 1, n, shape, rows, out);
                rows[r].pop();
            }
        }
    }
    rec(1, n, shape, &mut rows, &mut out);
    out.sort_by_key(|a| a.rows.concat());
    out
}

/// An ordered list of super-indices (a word over the super-alphabet).
pub type SuperSequence = Vec<SuperIndex>;

/// Total parity of a sequence.
pub fn sequence_parity(seq: &[SuperIndex]) -> Parity {
    seq.iter().fold(Parity::Even, |acc, i| acc + i.parity)
}

pub fn sequence_in_range(seq: &[SuperIndex], range: IndexRange) -> bool {
    seq.iter().all(|&i| range.contains(i))
}

/// `Σ_{α<β} p(l_α)p(l_β)`.
pub fn self_pairing_sign_exponent(seq: &[SuperIndex]) -> usize {
    let mut odd_seen = 0;
    let mut total = 0;
    for i in seq {
        if i.parity.is_odd() {
            total += odd_seen;
            odd_seen += 1;
        }
    }
    total
}

/// Parses `"1,1',2"` into a sequence.
pub fn parse_sequence(s: &str) -> Result<SuperSequence> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse()).collect()
}

pub fn format_sequence(seq: &[SuperIndex]) -> String {
    seq.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Whether `seq` is `t`-semistandard: entries weakly increase along rows and
/// down columns, even entries strictly increase down columns and odd entries
/// strictly increase along rows.
pub fn is_semistandard(t: &YoungTableau, seq: &[SuperIndex]) -> Result<bool> {
    let filled = t.fill(seq)?;
    for (r, row) in filled.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            if c > 0 && !right_ok(row[c - 1], x) {
                return Ok(false);
            }
            if r > 0 && !below_ok(filled[r - 1][c], x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn right_ok(left: SuperIndex, x: SuperIndex) -> bool {
    left < x || (left == x && !x.parity.is_odd())
}

fn below_ok(above: SuperIndex, x: SuperIndex) -> bool {
    above < x || (above == x && x.parity.is_odd())
}

/// All `t`-semistandard sequences with entries in `range`, in lexicographic
/// order of the sequences.
pub fn enumerate_semistandard(t: &YoungTableau, range: IndexRange) -> Vec<SuperSequence> {
    let n = t.size();
    let letters = range.indices();
    // cell coordinates of each position, and its left/upper neighbor positions
    let mut cell = vec![(0usize, 0usize); n];
    for (r, row) in t.rows().iter().enumerate() {
        for (c, &a) in row.iter().enumerate() {
            cell[a - 1] = (r, c);
        }
    }
    // Fill in reading order (row by row) so neighbors are assigned first.
    let order: Vec<usize> = t.rows().iter().flatten().map(|a| a - 1).collect();
    let mut grid: Vec<Vec<Option<SuperIndex>>> = t.rows().iter().map(|r| vec![None; r.len()]).collect();
    let mut out = Vec::new();
    fn rec(
        k: usize,
        order: &[usize],
        cell: &[(usize, usize)],
        letters: &[SuperIndex],
        grid: &mut Vec<Vec<Option<SuperIndex>>>,
        out: &mut Vec<SuperSequence>,
    ) {
        if k == order.len() {
            let mut seq = vec![letters[0]; order.len()];
            for (pos, &(r, c)) in cell.iter().enumerate() {
                seq[pos] = grid[r][c].expect("filled");
            }
            out.push(seq);
            return;
        }
        let (r, c) = cell[order[k]];
        for &x in letters {
            if c > 0 && !right_ok(grid[r][c - 1].expect("left"), x) {
                continue;
            }
            if r > 0 && !below_ok(grid[r - 1][c].expect("above"), x) {
                continue;
            }
            grid[r][c] = Some(x);
            rec(k + 1, order, cell, letters, grid, out);
            grid[r][c] = None;
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    if letters.is_empty() {
        return Vec::new();
    }
    rec(0, &order, &cell, &letters, &mut grid, &mut out);
    out.sort();
    out
}

/// A Young subgroup of `S_n`: the product of the full symmetric groups on
/// disjoint blocks of positions (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungSubgroup {
    degree: usize,
    blocks: Vec<Vec<usize>>,
}

impl YoungSubgroup {
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Self {
        let blocks = blocks.into_iter().filter(|b| b.len() > 1).collect();
        Self { degree, blocks }
    }

    pub fn trivial(degree: usize) -> Self {
        Self { degree, blocks: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().map(|b| (1..=b.len()).product::<usize>()).product()
    }

    /// Adjacent transpositions inside each block.
    pub fn generators(&self) -> Vec<Permutation> {
        self.blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| Permutation::transposition(self.degree, w[0], w[1])))
            .collect()
    }

    /// Whether `self` is contained in `big` (every block inside one block of `big`).
    pub fn is_subgroup_of(&self, big: &YoungSubgroup) -> bool {
        self.degree == big.degree
            && self.blocks.iter().all(|b| big.blocks.iter().any(|bb| b.iter().all(|x| bb.contains(x))))
    }

    /// Product of two subgroups acting on disjoint supports.
    pub fn product(&self, other: &YoungSubgroup) -> Result<YoungSubgroup> {
        if self.degree != other.degree {
            return Err(Error::LengthMismatch { expected: self.degree, got: other.degree });
        }
        let mine: HashSet<usize> = self.blocks.iter().flatten().copied().collect();
        if other.blocks.iter().flatten().any(|x| mine.contains(x)) {
            return Err(Error::NotSubgroup("supports overlap".into()));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Ok(YoungSubgroup::new(self.degree, blocks))
    }

    /// All elements, in lexicographic order of their image vectors.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for block in &self.blocks {
            let perms = crate::symgroup::all_permutations(block.len());
            let mut next = Vec::with_capacity(out.len() * perms.len());
            for g in &out {
                for p in &perms {
                    let mut images = g.images().to_vec();
                    for (i, &src) in block.iter().enumerate() {
                        images[src] = g.apply(block[p.apply(i)]);
                    }
                    next.push(Permutation::from_images(images).expect("bijective"));
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetSide {
    /// Cosets `gH`.
    Left,
    /// Cosets `Hg`.
    Right,
}

/// One representative per coset of `small` in `big`, chosen as the
/// lexicographically smallest element of its coset.
pub fn coset_representatives(big: &YoungSubgroup, small: &YoungSubgroup, side: CosetSide) -> Result<Vec<Permutation>> {
    if !small.is_subgroup_of(big) {
        return Err(Error::NotSubgroup(format!("{:?} is not inside {:?}", small.blocks, big.blocks)));
    }
    let small_elems = small.elements();
    let mut covered: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for g in big.elements() {
        if covered.contains(&g) {
            continue;
        }
        for h in &small_elems {
            let x = match side {
                CosetSide::Left => g.compose(h),
                CosetSide::Right => h.compose(&g),
            };
            covered.insert(x);
        }
        reps.push(g);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn order_even_before_odd() {
        assert!(SuperIndex::even(5) < SuperIndex::odd(1));
        assert!(SuperIndex::odd(1) < SuperIndex::odd(2));
        assert_ne!(SuperIndex::even(1), SuperIndex::odd(1));
    }

    #[test]
    fn parse_roundtrip() {
        let s = parse_sequence("1,1',2").unwrap();
        assert_eq!(s, vec![SuperIndex::even(1), SuperIndex::odd(1), SuperIndex::even(2)]);
        assert_eq!(format_sequence(&s), "1,1',2");
        assert!(parse_sequence("0").is_err());
    }

    #[test]
    fn partitions_small() {
        assert_eq!(enumerate_partitions(0, None, None), vec![p(&[])]);
        assert_eq!(enumerate_partitions(3, None, None), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(enumerate_partitions(4, Some(2), None), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(enumerate_partitions(4, None, Some(2)), vec![p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
    }

    #[test]
    fn partitions_match_composition_filter() {
        // oracle: weakly decreasing compositions
        fn compositions(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=n {
                for mut rest in compositions(n - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        for n in 0..=8 {
            let mut oracle: Vec<Vec<usize>> =
                compositions(n).into_iter().filter(|c| c.windows(2).all(|w| w[0] >= w[1])).collect();
            oracle.sort_by(|a, b| b.cmp(a));
            let got: Vec<Vec<usize>> = enumerate_partitions(n, None, None).iter().map(|p| p.parts().to_vec()).collect();
            assert_eq!(got, oracle);
        }
    }

    #[test]
    fn standard_tableaux_counts_match_filter() {
        // Brute force every bijective filling and keep the standard ones.
        for n in 1..=6 {
            for shape in enumerate_partitions(n, None, None) {
                let mut count = 0;
                for perm in crate::symgroup::all_permutations(n) {
                    let mut it = perm.images().iter().map(|x| x + 1);
                    let rows: Vec<Vec<usize>> =
                        shape.parts().iter().map(|&l| (0..l).map(|_| it.next().unwrap()).collect()).collect();
                    if YoungTableau::from_rows(rows).unwrap().is_standard() {
                        count += 1;
                    }
                }
                assert_eq!(enumerate_standard_tableaux(&shape).len(), count, "shape {shape}");
            }
        }
        assert_eq!(enumerate_standard_tableaux(&p(&[1, 1])).len(), 1);
        assert_eq!(enumerate_standard_tableaux(&p(&[2, 1])).len(), 2);
        assert_eq!(enumerate_standard_tableaux(&p(&[2, 2])).len(), 2);
    }

    #[test]
    fn semistandard_rules() {
        let row = YoungTableau::row_filled(&p(&[2]));
        let col = YoungTableau::row_filled(&p(&[1, 1]));
        let e1 = SuperIndex::even(1);
        let o1 = SuperIndex::odd(1);
        assert!(is_semistandard(&row, &[e1, e1]).unwrap());
        assert!(!is_semistandard(&row, &[o1, o1]).unwrap());
        assert!(!is_semistandard(&col, &[e1, e1]).unwrap());
        assert!(is_semistandard(&col, &[o1, o1]).unwrap());
        assert!(is_semistandard(&row, &[e1]).is_err());
    }

    #[test]
    fn semistandard_enumeration() {
        for k in 1..=4 {
            let row = YoungTableau::row_filled(&p(&[k]));
            assert_eq!(enumerate_semistandard(&row, IndexRange::new(1, 1)).len(), 2);
        }
        let col = YoungTableau::row_filled(&p(&[1, 1]));
        assert!(enumerate_semistandard(&col, IndexRange::new(1, 0)).is_empty());
        let cell = YoungTableau::row_filled(&p(&[1]));
        assert_eq!(enumerate_semistandard(&cell, IndexRange::new(2, 3)).len(), 5);
    }

    #[test]
    fn semistandard_enumeration_matches_filter() {
        for shape in [p(&[2, 1]), p(&[2, 2]), p(&[3, 1]), p(&[1, 1, 1])] {
            for t in enumerate_standard_tableaux(&shape) {
                for range in [IndexRange::new(1, 1), IndexRange::new(2, 1), IndexRange::new(0, 2)] {
                    let letters = range.indices();
                    let n = shape.size();
                    let mut count = 0;
                    let total = letters.len().pow(n as u32);
                    for code in 0..total {
                        let mut c = code;
                        let seq: Vec<SuperIndex> = (0..n)
                            .map(|_| {
                                let x = letters[c % letters.len()];
                                c /= letters.len();
                                x
                            })
                            .collect();
                        if is_semistandard(&t, &seq).unwrap() {
                            count += 1;
                        }
                    }
                    assert_eq!(enumerate_semistandard(&t, range).len(), count);
                }
            }
        }
    }

    #[test]
    fn hook_bound_for_emptiness() {
        // empty iff λ_{n+1} > m
        for n in 0..=2 {
            for m in 0..=2 {
                for size in 1..=5 {
                    for shape in enumerate_partitions(size, None, None) {
                        let t = YoungTableau::row_filled(&shape);
                        let empty = enumerate_semistandard(&t, IndexRange::new(n, m)).is_empty();
                        assert_eq!(empty, shape.part(n) > m, "shape {shape} range ({n}|{m})");
                    }
                }
            }
        }
    }

    #[test]
    fn stabilizer_orders() {
        let row3 = YoungTableau::row_filled(&p(&[3]));
        assert_eq!(row3.row_subgroup().order(), 6);
        assert_eq!(row3.column_subgroup().order(), 1);
        let col3 = YoungTableau::row_filled(&p(&[1, 1, 1]));
        assert_eq!(col3.column_subgroup().order(), 6);
        assert_eq!(col3.row_subgroup().order(), 1);
        let t = YoungTableau::row_filled(&p(&[2, 1]));
        assert_eq!(t.row_subgroup().elements().len(), 2);
        assert_eq!(t.column_subgroup().elements().len(), 2);
        assert_eq!(t.row_subgroup().generators().len(), 1);
    }

    #[test]
    fn coset_counts() {
        let s2 = YoungSubgroup::new(2, vec![vec![0, 1]]);
        assert_eq!(coset_representatives(&s2, &s2, CosetSide::Left).unwrap(), vec![Permutation::identity(2)]);
        assert_eq!(coset_representatives(&s2, &YoungSubgroup::trivial(2), CosetSide::Right).unwrap().len(), 2);
        assert!(coset_representatives(&YoungSubgroup::trivial(2), &s2, CosetSide::Left).is_err());
        // (n+1)×m rectangle split after row n
        for (n, m) in [(1, 2), (2, 2), (2, 1)] {
            let t = YoungTableau::column_filled(&Partition::rectangle(n + 1, m));
            let big = t.column_subgroup();
            let top: Vec<Vec<usize>> = t.columns().iter().map(|c| c[..n].iter().map(|a| a - 1).collect()).collect();
            let small = YoungSubgroup::new(t.size(), top);
            let reps = coset_representatives(&big, &small, CosetSide::Right).unwrap();
            assert_eq!(reps.len(), big.order() / small.order());
            // union of cosets recovers the group
            let mut all: Vec<Permutation> =
                reps.iter().flat_map(|g| small.elements().into_iter().map(move |h| h.compose(g))).collect();
            all.sort();
            all.dedup();
            assert_eq!(all, big.elements());
        }
    }

    #[test]
    fn frobenius_coordinates() {
        assert_eq!(p(&[2]).frobenius(), (vec![1], vec![0]));
        assert_eq!(p(&[3, 1]).frobenius(), (vec![2], vec![1]));
        assert_eq!(p(&[3, 3]).frobenius(), (vec![2, 1], vec![1, 0]));
    }
}
