//! Smith normal form with unimodular transforms.
//!
//! Pivoting always takes the entry of smallest absolute value in the
//! remaining submatrix, ties broken by `(row, col)`. This keeps the
//! output deterministic and entry growth modest on the small, sparse
//! boundary matrices this crate works with.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// `d_1 | d_2 | …`, zeros trailing.
///
/// The inverses of both transforms are tracked alongside, since nearly
/// every consumer needs to move vectors in both directions.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl SnfDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Diagonal entry `i`, zero past the rank.
    pub fn diagonal_entry(&self, i: usize) -> BigInt {
        if i < self.rank {
            self.d[(i, i)].clone()
        } else {
            BigInt::zero()
        }
    }

    /// Solves `A x = b` over the integers, returning one solution if any exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.u.cols(), "right-hand side has wrong length");
        let ub = self.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.v.rows()];
        for (i, c) in ub.iter().enumerate() {
            if i < self.rank {
                let (q, r) = c.div_rem(&self.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Basis of the integer kernel `{x : A x = 0}` as matrix columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        let n = self.v.cols();
        let cols: Vec<usize> = (self.rank..n).collect();
        self.v.select_columns(&cols)
    }
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_columns(a, b);
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        self.d.swap_columns(a, b);
        self.v.swap_columns(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row[t] += k row[s]`
    fn add_row(&mut self, t: usize, s: usize, k: &BigInt) {
        self.d.add_row_multiple(t, s, k);
        self.u.add_row_multiple(t, s, k);
        self.u_inv.add_column_multiple(s, t, &-k);
    }

    /// `col[t] += k col[s]`
    fn add_column(&mut self, t: usize, s: usize, k: &BigInt) {
        self.d.add_column_multiple(t, s, k);
        self.v.add_column_multiple(t, s, k);
        self.v_inv.add_row_multiple(s, t, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_column(i);
    }

    fn smallest_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.d[(bi, bj)].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` below/right of the pivot. Returns false
    /// when a nonzero remainder was left behind.
    fn eliminate(&mut self, t: usize) -> bool {
        let mut clean = true;
        let pivot = self.d[(t, t)].clone();
        for i in t + 1..self.d.rows() {
            if self.d[(i, t)].is_zero() {
                continue;
            }
            let q = self.d[(i, t)].div_floor(&pivot);
            self.add_row(i, t, &-q);
            if !self.d[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..self.d.cols() {
            if self.d[(t, j)].is_zero() {
                continue;
            }
            let q = self.d[(t, j)].div_floor(&pivot);
            self.add_column(j, t, &-q);
            if !self.d[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let pivot = &self.d[(t, t)];
        for i in t + 1..self.d.rows() {
            for j in t + 1..self.d.cols() {
                if !self.d[(i, j)].is_multiple_of(pivot) {
                    return Some(i);
                }
            }
        }
        None
    }
}

pub fn snf(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        while let Some((pi, pj)) = r.smallest_pivot(t) {
            r.swap_rows(t, pi);
            r.swap_columns(t, pj);
            if !r.eliminate(t) {
                continue;
            }
            if let Some(i) = r.first_non_multiple(t) {
                r.add_row(t, i, &BigInt::from(1));
                continue;
            }
            break;
        }
        if r.d[(t, t)].is_zero() {
            break;
        }
        if r.d[(t, t)].is_negative() {
            r.negate_row(t);
        }
        rank = t + 1;
    }
    SnfDecomposition {
        u: r.u,
        d: r.d,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        rank,
    }
}
