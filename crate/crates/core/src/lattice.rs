//! Integer lattices: Hermite normal form, kernels, and integer linear systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Row echelon form H = U·M with U unimodular. H is in Hermite normal form:
/// pivots positive, entries above each pivot reduced into [0, pivot).
pub fn echelon_with_transform(m: &IntMatrix, ncols: usize) -> (IntMatrix, IntMatrix) {
    let nrows = m.len();
    let mut h: IntMatrix = m.to_vec();
    let mut u: IntMatrix = (0..nrows)
        .map(|i| {
            (0..nrows)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        loop {
            let best = (pivot_row..nrows)
                .filter(|&r| !h[r][col].is_zero())
                .min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()));
            let Some(best) = best else { break };
            h.swap(pivot_row, best);
            u.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..nrows {
                if h[r][col].is_zero() {
                    continue;
                }
                let f = h[r][col].div_floor(&h[pivot_row][col]);
                sub_row(&mut h, r, pivot_row, &f);
                sub_row(&mut u, r, pivot_row, &f);
                if !h[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < nrows && !h[pivot_row][col].is_zero() {
            if h[pivot_row][col].is_negative() {
                negate_row(&mut h, pivot_row);
                negate_row(&mut u, pivot_row);
            }
            for r in 0..pivot_row {
                let f = h[r][col].div_floor(&h[pivot_row][col]);
                if !f.is_zero() {
                    sub_row(&mut h, r, pivot_row, &f);
                    sub_row(&mut u, r, pivot_row, &f);
                }
            }
            pivot_row += 1;
        }
    }
    (h, u)
}

fn sub_row(m: &mut IntMatrix, target: usize, source: usize, f: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src) {
        *t -= f * s;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Canonical basis (nonzero HNF rows) of the lattice spanned by the rows.
pub fn hnf_basis(rows: &IntMatrix, ncols: usize) -> IntMatrix {
    let (h, _) = echelon_with_transform(rows, ncols);
    h.into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

pub fn rank(rows: &IntMatrix, ncols: usize) -> usize {
    hnf_basis(rows, ncols).len()
}

/// Index of a full-rank lattice in ℤ^n, or None when the rank is deficient.
pub fn index_in_full(rows: &IntMatrix, ncols: usize) -> Option<BigInt> {
    let basis = hnf_basis(rows, ncols);
    if basis.len() < ncols {
        return None;
    }
    let mut det = BigInt::one();
    for r in &basis {
        det *= r.iter().find(|x| !x.is_zero()).expect("nonzero row");
    }
    Some(det.abs())
}

/// Integer basis of {x : x·M = 0}, M given by rows.
pub fn left_kernel(rows: &IntMatrix, ncols: usize) -> IntMatrix {
    let (h, u) = echelon_with_transform(rows, ncols);
    let basis: IntMatrix = h
        .iter()
        .zip(u)
        .filter(|(r, _)| r.iter().all(|x| x.is_zero()))
        .map(|(_, t)| t)
        .collect();
    if basis.is_empty() {
        return basis;
    }
    let n = basis[0].len();
    hnf_basis(&basis, n)
}

/// Some integer solution z of A·z = c, if one exists.
pub fn solve_integer_system(a: &IntMatrix, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    if nrows == 0 {
        return Some(Vec::new());
    }
    let at: IntMatrix = (0..ncols)
        .map(|j| (0..nrows).map(|i| a[i][j].clone()).collect())
        .collect();
    let (h, u) = echelon_with_transform(&at, nrows);
    // A·U^T = H^T; solve H^T w = c column by column.
    let mut w = vec![BigInt::zero(); ncols];
    let pivots: Vec<Option<usize>> = h
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()))
        .collect();
    for j in 0..nrows {
        let mut rest = c[j].clone();
        let mut pivot_here = None;
        for (i, p) in pivots.iter().enumerate() {
            match p {
                Some(pc) if *pc < j => rest -= &h[i][j] * &w[i],
                Some(pc) if *pc == j => pivot_here = Some(i),
                _ => {}
            }
        }
        match pivot_here {
            Some(i) => {
                let (qt, r) = rest.div_rem(&h[i][j]);
                if !r.is_zero() {
                    return None;
                }
                w[i] = qt;
            }
            None => {
                if !rest.is_zero() {
                    return None;
                }
            }
        }
    }
    let z = (0..ncols)
        .map(|k| (0..ncols).map(|i| &u[i][k] * &w[i]).sum())
        .collect();
    Some(z)
}

/// Outcome of solving a rational linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalSolution {
    Unique(Vec<BigRational>),
    Underdetermined(Vec<BigRational>),
    Inconsistent,
}

/// Solves A·x = b over ℚ by Gauss-Jordan elimination.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational], nvars: usize) -> RationalSolution {
    let mut rows: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            r.iter()
                .cloned()
                .chain(std::iter::once(v.clone()))
                .collect()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let src = rows[r].clone();
                for (x, s) in rows[i].iter_mut().zip(src) {
                    *x = x.clone() - f.clone() * s;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[nvars].is_zero()) {
        return RationalSolution::Inconsistent;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = rows[i][nvars].clone();
    }
    if pivot_cols.len() == nvars {
        RationalSolution::Unique(x)
    } else {
        RationalSolution::Underdetermined(x)
    }
}

/// Rank of a rational matrix.
pub fn rational_rank(a: &[Vec<BigRational>], ncols: usize) -> usize {
    if a.is_empty() {
        return 0;
    }
    let mut rows: Vec<Vec<BigRational>> = a.to_vec();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if !rows[i][col].is_zero() {
                let f = rows[i][col].clone() / rows[r][col].clone();
                let src = rows[r].clone();
                for (x, s) in rows[i].iter_mut().zip(src) {
                    *x = x.clone() - f.clone() * s;
                }
            }
        }
        r += 1;
    }
    r
}
