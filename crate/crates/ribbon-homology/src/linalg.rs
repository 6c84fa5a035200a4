//! Exact rational sparse matrices and rank computation.
//!
//! Two independent elimination routines are kept deliberately: the sparse
//! pivoted one used by the homology engine and a dense textbook one used
//! as its oracle. They share no code path beyond the scalar type.

use crate::scalar::Q;
use num::Zero;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A sparse matrix over ℚ with explicit dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Set entry (r, c); zero values delete the entry.
    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Add to entry (r, c).
    pub fn add(&mut self, r: usize, c: usize, v: &Q) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let cur = self.entries.remove(&(r, c)).unwrap_or_else(Q::zero);
        let next = cur + v;
        if !next.is_zero() {
            self.entries.insert((r, c), next);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Q)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Matrix product self · other (for composition checks).
    pub fn multiply(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for ((r, k), v) in &self.entries {
            for ((_, c), w) in other.entries.range((*k, 0)..(*k + 1, 0)) {
                out.add(*r, *c, &(v * w));
            }
        }
        out
    }

    /// Exact rank by sparse Gaussian elimination. Pivot selection favors
    /// the column with the fewest live entries, then the shortest row in
    /// it, to limit fill-in.
    pub fn rank_sparse(&self) -> usize {
        // Row-major working copy.
        let mut rows: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].insert(*c, v.clone());
        }
        let mut live: Vec<usize> = (0..self.rows).filter(|&r| !rows[r].is_empty()).collect();
        let mut rank = 0usize;
        while !live.is_empty() {
            // Column occupancy among live rows.
            let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
            for &r in &live {
                for c in rows[r].keys() {
                    *col_count.entry(*c).or_insert(0) += 1;
                }
            }
            let (&pivot_col, _) = col_count
                .iter()
                .min_by_key(|(c, n)| (**n, **c))
                .expect("live rows are nonempty");
            // Shortest live row containing the pivot column.
            let pivot_row = *live
                .iter()
                .filter(|&&r| rows[r].contains_key(&pivot_col))
                .min_by_key(|&&r| (rows[r].len(), r))
                .expect("column count came from live rows");
            let pivot_val = rows[pivot_row][&pivot_col].clone();
            let pivot_entries: Vec<(usize, Q)> = rows[pivot_row]
                .iter()
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            rank += 1;
            live.retain(|&r| r != pivot_row);
            rows[pivot_row].clear();
            for &r in &live {
                if let Some(lead) = rows[r].get(&pivot_col).cloned() {
                    let factor = lead / &pivot_val;
                    for (c, v) in &pivot_entries {
                        let cur = rows[r].remove(c).unwrap_or_else(Q::zero);
                        let next = cur - &factor * v;
                        if !next.is_zero() {
                            rows[r].insert(*c, next);
                        }
                    }
                }
            }
            live.retain(|&r| !rows[r].is_empty());
        }
        rank
    }

    /// Exact rank by dense elimination with first-nonzero pivoting: the
    /// independent oracle for `rank_sparse`.
    pub fn rank_dense(&self) -> usize {
        let mut m: Vec<Vec<Q>> = vec![vec![Q::zero(); self.cols]; self.rows];
        for ((r, c), v) in &self.entries {
            m[*r][*c] = v.clone();
        }
        let mut rank = 0usize;
        let mut row = 0usize;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let pivot = m[row][col].clone();
            for r in (row + 1)..self.rows {
                if !m[r][col].is_zero() {
                    let factor = &m[r][col] / &pivot;
                    for c in col..self.cols {
                        let sub = &factor * &m[row][c];
                        m[r][c] = &m[r][c] - &sub;
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    /// Serialize as triplet lines `row col numerator/denominator`, one per
    /// nonzero entry, preceded by a `rows cols` header line.
    pub fn to_triplet_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.rows, self.cols);
        for ((r, c), v) in &self.entries {
            let _ = writeln!(out, "{r} {c} {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, q_ratio};

    #[test]
    fn ranks_agree_on_small_matrices() {
        let mut m = SparseMatrix::new(3, 4);
        m.set(0, 0, q(2));
        m.set(0, 2, q(1));
        m.set(1, 0, q(4));
        m.set(1, 2, q(2)); // row 1 = 2 × row 0
        m.set(2, 1, q_ratio(1, 3));
        m.set(2, 3, q(5));
        assert_eq!(m.rank_sparse(), 2);
        assert_eq!(m.rank_dense(), 2);

        let empty = SparseMatrix::new(5, 5);
        assert_eq!(empty.rank_sparse(), 0);
        assert_eq!(empty.rank_dense(), 0);
    }

    #[test]
    fn rank_full_and_product() {
        let mut a = SparseMatrix::new(2, 2);
        a.set(0, 0, q(1));
        a.set(0, 1, q(2));
        a.set(1, 0, q(3));
        a.set(1, 1, q(4));
        assert_eq!(a.rank_sparse(), 2);
        assert_eq!(a.rank_dense(), 2);
        // a · a⁻¹-like composition sanity: multiply by adjugate/det.
        let mut adj = SparseMatrix::new(2, 2);
        adj.set(0, 0, q_ratio(4, -2));
        adj.set(0, 1, q_ratio(-2, -2));
        adj.set(1, 0, q_ratio(-3, -2));
        adj.set(1, 1, q_ratio(1, -2));
        let prod = a.multiply(&adj);
        assert_eq!(prod.get(0, 0), q(1));
        assert_eq!(prod.get(1, 1), q(1));
        assert_eq!(prod.get(0, 1), q(0));
        assert_eq!(prod.get(1, 0), q(0));
    }

    #[test]
    fn triplet_round_trip_shape() {
        let mut m = SparseMatrix::new(2, 3);
        m.set(1, 2, q_ratio(7, 3));
        let text = m.to_triplet_text();
        assert!(text.starts_with("2 3\n"));
        assert!(text.contains("1 2 7/3"));
    }
}
