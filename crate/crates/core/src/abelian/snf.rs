use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Result of a Smith normal form computation: `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries `d_0 | d_1 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form over the integers with arbitrary-precision entries.
///
/// Pivots are chosen by minimal absolute value. Every row operation is
/// mirrored in `u`, every column operation in `v` (and inversely in
/// `v_inv`), so the returned matrices satisfy `u * m * v == d` exactly.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    let swap_rows = |a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
        a.swap_rows(i, j);
        u.swap_rows(i, j);
    };
    let swap_cols = |a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i, j| {
        a.swap_cols(i, j);
        v.swap_cols(i, j);
        v_inv.swap_rows(i, j);
    };

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_position(&a, t, t..rows, t..cols) else {
            break;
        };
        swap_rows(&mut a, &mut u, t, pi);
        swap_cols(&mut a, &mut v, &mut v_inv, t, pj);

        loop {
            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                // v_inv <- E^{-1} v_inv, where E adds q * col t to col j
                v_inv.add_row_multiple(t, j, &-q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder now sits in row t or column t
                let col_best = min_abs_position(&a, t, t..rows, t..t + 1);
                let row_best = min_abs_position(&a, t, t..t + 1, t..cols);
                let best = match (col_best, row_best) {
                    (Some(c), Some(r)) => {
                        if a[c].abs() <= a[r].abs() {
                            c
                        } else {
                            r
                        }
                    }
                    (Some(c), None) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!("pivot row and column vanished"),
                };
                swap_rows(&mut a, &mut u, t, best.0);
                swap_cols(&mut a, &mut v, &mut v_inv, t, best.1);
                continue;
            }
            // row and column t are clear; enforce divisibility of the rest
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    Snf { u, d: a, v, v_inv }
}

fn min_abs_position(
    a: &IntMatrix,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}
