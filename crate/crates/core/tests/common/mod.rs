#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use spin_ed::qform2::{Gf2k, QForm};

pub fn gf(k: u32) -> Arc<Gf2k> {
    Arc::new(Gf2k::new(k).unwrap())
}

pub fn random_form<R: Rng>(rng: &mut R, f: &Arc<Gf2k>, blocks: usize, diag: usize) -> QForm {
    let q = f.order();
    let bs: Vec<(u32, u32)> = (0..blocks).map(|_| (rng.gen_range(0..q), rng.gen_range(0..q))).collect();
    let ds: Vec<u32> = (0..diag).map(|_| rng.gen_range(1..q)).collect();
    QForm::concrete(f, &bs, &ds).unwrap()
}

/// Every block-plus-diagonal form with the given shape.
pub fn all_forms(f: &Arc<Gf2k>, blocks: usize, diag: usize, nonzero_diag: bool) -> Vec<QForm> {
    let q = f.order();
    let lo = u32::from(nonzero_diag);
    let slots = 2 * blocks + diag;
    let mut out = Vec::new();
    let mut idx = vec![0u32; slots];
    for (i, v) in idx.iter_mut().enumerate() {
        if i >= 2 * blocks {
            *v = lo;
        }
    }
    loop {
        let bs: Vec<(u32, u32)> = (0..blocks).map(|i| (idx[2 * i], idx[2 * i + 1])).collect();
        out.push(QForm::concrete(f, &bs, &idx[2 * blocks..]).unwrap());
        let mut i = slots;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < q {
                break;
            }
            idx[i] = if i >= 2 * blocks { lo } else { 0 };
        }
    }
}

/// Number of vectors `v` with `q(v) = 0`.
pub fn zero_count(q: &QForm) -> usize {
    q.all_vectors()
        .unwrap()
        .filter(|v| q.evaluate(v).unwrap() == 0)
        .count()
}

/// Value table of `q` indexed by the odometer order of vectors.
fn values(q: &QForm) -> Vec<u32> {
    q.all_vectors().unwrap().map(|v| q.evaluate(&v).unwrap()).collect()
}

fn index_of(order: u32, v: &[u32]) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * order as usize + x as usize)
}

/// Searches all linear maps `M` for `q2(x) = q1(Mx)`; `M` is invertible
/// automatically when both forms are nonsingular of the same dimension, but
/// the rank is checked anyway. Only for tiny sizes.
pub fn brute_isometric(f: &Gf2k, q1: &QForm, q2: &QForm) -> bool {
    let n = q1.dim();
    if n != q2.dim() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let order = f.order();
    let v1 = values(q1);
    let v2 = values(q2);
    // columns: images of the standard basis; build M column by column with
    // pruning on q1(column) = q2(e_i)
    let basis_vals: Vec<u32> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            v2[index_of(order, &e)]
        })
        .collect();
    let vectors: Vec<Vec<u32>> = spin_ed::qform2::form::VectorIter::new(order, n).collect();
    let candidates: Vec<Vec<&Vec<u32>>> = basis_vals
        .iter()
        .map(|&t| vectors.iter().filter(|v| v1[index_of(order, v)] == t).collect())
        .collect();
    let mut cols: Vec<&Vec<u32>> = Vec::with_capacity(n);
    search(f, &candidates, &mut cols, &vectors, &v1, &v2, order)
}

fn search<'a>(
    f: &Gf2k,
    candidates: &[Vec<&'a Vec<u32>>],
    cols: &mut Vec<&'a Vec<u32>>,
    vectors: &[Vec<u32>],
    v1: &[u32],
    v2: &[u32],
    order: u32,
) -> bool {
    let n = candidates.len();
    if cols.len() == n {
        if rank(f, cols) != n {
            return false;
        }
        return vectors.iter().all(|x| {
            let mut y = vec![0u32; n];
            for (j, c) in cols.iter().enumerate() {
                for i in 0..n {
                    y[i] ^= f.mul(c[i], x[j]);
                }
            }
            v1[index_of(order, &y)] == v2[index_of(order, x)]
        });
    }
    for &c in &candidates[cols.len()] {
        cols.push(c);
        if search(f, candidates, cols, vectors, v1, v2, order) {
            return true;
        }
        cols.pop();
    }
    false
}

fn rank(f: &Gf2k, cols: &[&Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = cols.iter().map(|c| (*c).clone()).collect();
    let n = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, p);
        let inv = f.inv(m[r][col]).unwrap();
        let pivot: Vec<u32> = m[r].iter().map(|&x| f.mul(x, inv)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let k = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x ^= f.mul(k, p);
                }
            }
        }
        m[r] = pivot;
        r += 1;
    }
    r
}
