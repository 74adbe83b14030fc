//! Exact linear algebra over the rationals.
//!
//! Two independent routes are provided. [`RowReducer`] is an incremental,
//! sparse, fraction-free reducer: rows are kept as primitive integer vectors
//! and every elimination step is an integer cross-multiplication followed by
//! content removal. It maintains a fully reduced echelon form, so ranks,
//! membership tests and nullspaces fall out directly. [`bareiss_rank`] is the
//! classical dense Bareiss elimination and serves as a cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse integer row: column index to nonzero entry.
pub type IntRow = BTreeMap<usize, BigInt>;

/// Sparse rational vector.
pub type RatVec = BTreeMap<usize, BigRational>;

/// Clears denominators and divides by the content, leaving a primitive
/// integer vector whose leading entry is positive.
pub fn primitive_row(v: &RatVec) -> IntRow {
    let mut lcm = BigInt::one();
    for c in v.values() {
        lcm = lcm.lcm(c.denom());
    }
    let mut row: IntRow = v
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&k, c)| (k, c.numer() * (&lcm / c.denom())))
        .collect();
    normalize_int_row(&mut row);
    row
}

fn normalize_int_row(row: &mut IntRow) {
    row.retain(|_, c| !c.is_zero());
    let mut g = BigInt::zero();
    for c in row.values() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for c in row.values_mut() {
            *c = &*c / &g;
        }
    }
    if let Some((_, lead)) = row.iter().next() {
        if lead.is_negative() {
            for c in row.values_mut() {
                *c = -&*c;
            }
        }
    }
}

/// Incremental fraction-free row reducer maintaining a reduced echelon form.
///
/// Every stored row has a pivot column, and the pivot columns of the other
/// rows are zero in it.
#[derive(Debug, Clone, Default)]
pub struct RowReducer {
    rows: BTreeMap<usize, IntRow>,
}

impl RowReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &IntRow)> {
        self.rows.iter()
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        // Only pivots present in the row need clearing; since stored rows are
        // fully reduced, clearing one pivot never reintroduces another.
        let hits: Vec<usize> = row.keys().copied().filter(|k| self.rows.contains_key(k)).collect();
        for p in hits {
            let Some(a) = row.get(&p).cloned() else { continue };
            let prow = &self.rows[&p];
            let b = &prow[&p];
            let g = a.gcd(b);
            let fa = b / &g;
            let fb = &a / &g;
            let mut out = IntRow::new();
            for (k, c) in &row {
                out.insert(*k, c * &fa);
            }
            for (k, c) in prow {
                let e = out.entry(*k).or_insert_with(BigInt::zero);
                *e -= c * &fb;
            }
            out.retain(|_, c| !c.is_zero());
            row = out;
        }
        normalize_int_row(&mut row);
        row
    }

    /// Inserts a row; returns `true` when it enlarged the row space.
    pub fn insert(&mut self, row: IntRow) -> bool {
        let row = self.reduce(row);
        let Some((&pivot, _)) = row.iter().next() else {
            return false;
        };
        // Back-reduce the existing rows so the echelon form stays reduced.
        let keys: Vec<usize> = self.rows.keys().copied().collect();
        for k in keys {
            let existing = &self.rows[&k];
            if let Some(a) = existing.get(&pivot).cloned() {
                let b = &row[&pivot];
                let g = a.gcd(b);
                let fa = b / &g;
                let fb = &a / &g;
                let mut out = IntRow::new();
                for (c, v) in existing {
                    out.insert(*c, v * &fa);
                }
                for (c, v) in &row {
                    let e = out.entry(*c).or_insert_with(BigInt::zero);
                    *e -= v * &fb;
                }
                normalize_int_row(&mut out);
                self.rows.insert(k, out);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn insert_rational(&mut self, v: &RatVec) -> bool {
        self.insert(primitive_row(v))
    }

    /// Whether the vector lies in the current row space.
    pub fn contains(&self, v: &RatVec) -> bool {
        self.reduce(primitive_row(v)).is_empty()
    }

    /// Basis of `{x : r·x = 0 for every stored row r}` inside the coordinate
    /// space of dimension `ncols`, one primitive integer vector per free column.
    pub fn nullspace(&self, ncols: usize) -> Vec<RatVec> {
        let mut out = Vec::new();
        for free in 0..ncols {
            if self.rows.contains_key(&free) {
                continue;
            }
            let mut v = RatVec::new();
            v.insert(free, BigRational::one());
            for (&p, row) in &self.rows {
                if let Some(c) = row.get(&free) {
                    v.insert(p, -BigRational::new(c.clone(), row[&p].clone()));
                }
            }
            let prim = primitive_row(&v);
            out.push(prim.into_iter().map(|(k, c)| (k, BigRational::from_integer(c))).collect());
        }
        out
    }
}

/// Rank of a family of sparse rational vectors.
pub fn rank_of<'a>(vectors: impl IntoIterator<Item = &'a RatVec>) -> usize {
    let mut r = RowReducer::new();
    for v in vectors {
        r.insert_rational(v);
    }
    r.rank()
}

/// Dense Bareiss fraction-free elimination; returns the rank.
pub fn bareiss_rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Densifies sparse rational vectors into an integer matrix (each row scaled
/// to a primitive integer vector).
pub fn to_dense_int(vectors: &[RatVec], ncols: usize) -> Vec<Vec<BigInt>> {
    vectors
        .iter()
        .map(|v| {
            let p = primitive_row(v);
            let mut row = vec![BigInt::zero(); ncols];
            for (k, c) in p {
                row[k] = c;
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(entries: &[(usize, i64)]) -> RatVec {
        entries.iter().map(|&(k, c)| (k, BigRational::from_integer(c.into()))).collect()
    }

    #[test]
    fn rank_and_nullspace_small() {
        let rows = vec![rv(&[(0, 1), (1, 2), (2, 3)]), rv(&[(0, 2), (1, 4), (2, 6)]), rv(&[(1, 1), (2, 1)])];
        let mut r = RowReducer::new();
        for v in &rows {
            r.insert_rational(v);
        }
        assert_eq!(r.rank(), 2);
        let ns = r.nullspace(3);
        assert_eq!(ns.len(), 1);
        for v in &rows {
            let dot: BigRational = v.iter().map(|(k, c)| c * ns[0].get(k).cloned().unwrap_or_default()).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(bareiss_rank(&to_dense_int(&rows, 3)), 2);
    }

    #[test]
    fn membership() {
        let mut r = RowReducer::new();
        r.insert_rational(&rv(&[(0, 1), (1, 1)]));
        assert!(r.contains(&rv(&[(0, 3), (1, 3)])));
        assert!(!r.contains(&rv(&[(0, 1)])));
        assert!(r.contains(&RatVec::new()));
    }

    #[test]
    fn rational_entries_are_scaled() {
        let half = BigRational::new(1.into(), 2.into());
        let v: RatVec = [(0, half.clone()), (2, -half)].into_iter().collect();
        let p = primitive_row(&v);
        assert_eq!(p[&0], BigInt::from(1));
        assert_eq!(p[&2], BigInt::from(-1));
    }
}
