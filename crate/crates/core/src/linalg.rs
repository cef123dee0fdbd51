//! Exact linear algebra over the rationals.
//!
//! Dense routines are plain Gauss-Jordan on `Vec<Vec<Rational>>`; sizes here are
//! tiny (ambient dimensions at most a few dozen). The sparse rank routine backs
//! the cohomology dimension counts, where cochain spaces grow into the thousands
//! but rows stay short.

use crate::scalars::Rational;
use num::traits::{One, Zero};
use std::collections::BTreeMap;

pub type Vector = Vec<Rational>;
pub type Matrix = Vec<Vector>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            let mut row = zero_vector(n);
            row[i] = Rational::one();
            row
        })
        .collect()
}

pub fn transpose(m: &Matrix, ncols: usize) -> Matrix {
    let mut out = vec![zero_vector(m.len()); ncols];
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = v.clone();
        }
    }
    out
}

pub fn mat_vec(m: &Matrix, v: &Vector) -> Vector {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(Rational::zero(), |s, t| s + t))
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let ncols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zero_vector(ncols);
            for (k, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for (j, w) in b[k].iter().enumerate() {
                    if !w.is_zero() {
                        out[j] = &out[j] + &(v * w);
                    }
                }
            }
            out
        })
        .collect()
}

pub fn dot(a: &Vector, b: &Vector) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rational::zero(), |s, t| s + t)
}

pub fn scale_vec(v: &Vector, c: &Rational) -> Vector {
    v.iter().map(|a| a * c).collect()
}

pub fn add_vec(a: &Vector, b: &Vector) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &Vector, b: &Vector) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Reduced row echelon form with zero rows dropped; returns the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut rows: Matrix = m.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        rows[r] = scale_vec(&rows[r], &inv);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                rows[i] = sub_vec(&rows[i], &scale_vec(&rows[r], &f));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).0.len()
}

/// Basis of the right kernel {x : m x = 0}. `ncols` is required because the
/// matrix may have no rows.
pub fn kernel_basis(m: &Matrix, ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let mut basis = Vec::new();
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; ncols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v = zero_vector(ncols);
        v[free] = Rational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of m x = rhs with free variables set to zero, or None.
pub fn solve(m: &Matrix, rhs: &Vector) -> Option<Vector> {
    assert_eq!(m.len(), rhs.len());
    let ncols = m.first().map_or(0, Vec::len);
    if m.is_empty() {
        return Some(zero_vector(ncols));
    }
    let aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = zero_vector(ncols);
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn mat_inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    assert!(m.iter().all(|r| r.len() == n), "inverse needs a square matrix");
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(identity(n)[i].iter().cloned());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[..n.min(pivots.len())] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Subspace of Q^ambient held as a canonical (reduced row echelon) basis, so
/// equal subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: identity(ambient) }
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
        }
        let (basis, _) = rref(&vectors.to_vec());
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of v in the canonical basis, or None when v lies outside.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient);
        let cols = transpose(&self.basis, self.ambient);
        solve(&cols, v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // x = a·A = b·B: kernel of [A^T | -B^T] gives the (a, b) pairs.
        let p = self.dim();
        let q = other.dim();
        if p == 0 || q == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut sys: Matrix = Vec::with_capacity(self.ambient);
        for i in 0..self.ambient {
            let mut row = Vec::with_capacity(p + q);
            for a in &self.basis {
                row.push(a[i].clone());
            }
            for b in &other.basis {
                row.push(-b[i].clone());
            }
            sys.push(row);
        }
        let vectors: Vec<Vector> = kernel_basis(&sys, p + q)
            .into_iter()
            .map(|k| {
                let mut v = zero_vector(self.ambient);
                for (a, row) in k[..p].iter().zip(&self.basis) {
                    v = add_vec(&v, &scale_vec(row, a));
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vectors)
    }
}

/// Rank of a sparse matrix given as rows of (column, value) maps.
pub fn sparse_rank(mut rows: Vec<BTreeMap<usize, Rational>>) -> usize {
    let mut rank = 0;
    // pivot column -> index of the row reduced at that column
    let mut pivot_rows: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    while let Some(mut row) = rows.pop() {
        loop {
            row.retain(|_, v| !v.is_zero());
            let Some((&col, _)) = row.iter().next() else { break };
            if let Some(pivot) = pivot_rows.get(&col) {
                let f = row[&col].clone();
                for (j, w) in pivot {
                    let e = row.entry(*j).or_insert_with(Rational::zero);
                    *e = &*e - &(&f * w);
                }
            } else {
                let inv = row[&col].recip();
                let normalized: BTreeMap<usize, Rational> =
                    row.iter().map(|(j, v)| (*j, v * &inv)).filter(|(_, v)| !v.is_zero()).collect();
                pivot_rows.insert(col, normalized);
                rank += 1;
                break;
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()
    }

    #[test]
    fn rref_normalizes() {
        let (r, pivots) = rref(&m(&[&[2, 4, 0], &[1, 2, 1], &[3, 6, 1]]));
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r, m(&[&[1, 2, 0], &[0, 0, 1]]));
    }

    #[test]
    fn kernel_and_solve_agree() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|c| c.is_zero()));
        }
        let x = solve(&a, &vec![rat_int(6), rat_int(12)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![rat_int(6), rat_int(12)]);
        assert!(solve(&a, &vec![rat_int(1), rat_int(0)]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[1, 2], &[3, 5]]);
        let inv = mat_inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(mat_inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn subspace_operations() {
        let u = Subspace::span(3, &[vec![rat_int(1), rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(0), rat_int(1)]]);
        let v = Subspace::span(3, &[vec![rat_int(1), rat_int(1), rat_int(1)]]);
        assert!(u.contains(&vec![rat_int(2), rat_int(2), rat_int(7)]));
        assert!(!u.contains(&vec![rat_int(1), rat_int(0), rat_int(0)]));
        assert_eq!(u.intersect(&v), v);
        assert_eq!(u.sum(&v), u);
        let coords = u.coordinates(&vec![rat(1, 2), rat(1, 2), rat_int(3)]).unwrap();
        assert_eq!(coords, vec![rat(1, 2), rat_int(3)]);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        let rows = a
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect::<BTreeMap<_, _>>()
            })
            .collect();
        assert_eq!(sparse_rank(rows), rank(&a));
    }
}
