//! Finite-dimensional Lie algebras given by structure constants.
//!
//! The table `c[i][j][k]` encodes [x_i, x_j] = Σ_k c[i][j][k] x_k in a fixed
//! ordered basis. Construction validates antisymmetry and the Jacobi identity
//! and reports the first violating index triple 1-based, matching the index
//! convention used in all serialized data.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::scalars::{rat_int, Rational};
use num::traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = names.len();
        if c.len() != n || c.iter().any(|p| p.len() != n || p.iter().any(|q| q.len() != n)) {
            return Err(Error::config(format!("structure constant table must be {n}x{n}x{n}")));
        }
        let g = LieAlgebra { names, c };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(Error::validation(format!(
                            "antisymmetry violated at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let mut acc = linalg::zero_vector(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket_vectors(&basis_vec(n, a), &basis_vec(n, b));
                        let term = self.bracket_vectors(&inner, &basis_vec(n, c));
                        acc = linalg::add_vec(&acc, &term);
                    }
                    if acc.iter().any(|v| !v.is_zero()) {
                        return Err(Error::validation(format!(
                            "Jacobi identity violated at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Coefficients of [x_i, x_j] in the basis.
    pub fn bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.c[i][j]
    }

    pub fn bracket_vectors(&self, u: &Vector, v: &Vector) -> Vector {
        let n = self.dim();
        let mut out = linalg::zero_vector(n);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, ck) in self.c[i][j].iter().enumerate() {
                    if !ck.is_zero() {
                        out[k] = &out[k] + &(&ab * ck);
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad_v acting on column vectors: (ad_v) w = [v, w].
    pub fn ad_matrix(&self, v: &Vector) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket_vectors(v, &basis_vec(n, j))).collect();
        linalg::transpose(&cols, n)
    }

    /// Center {z : [z, x_k] = 0 for all k}.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut sys: Matrix = Vec::new();
        for k in 0..n {
            for comp in 0..n {
                sys.push((0..n).map(|i| self.c[i][k][comp].clone()).collect());
            }
        }
        Subspace::span(n, &linalg::kernel_basis(&sys, n))
    }

    /// Whether the matrix (columns = images of basis vectors) is a Lie algebra
    /// automorphism: invertible and bracket-compatible.
    pub fn is_automorphism(&self, m: &Matrix) -> bool {
        let n = self.dim();
        if linalg::mat_inverse(m).is_none() {
            return false;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.bracket_vectors(&column(m, i), &column(m, j));
                let rhs = linalg::mat_vec(m, &self.c[i][j].to_vec());
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the matrix is a derivation: d[x,y] = [dx,y] + [x,dy] on the basis.
    pub fn is_derivation(&self, m: &Matrix) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = linalg::mat_vec(m, &self.c[i][j].to_vec());
                let rhs = linalg::add_vec(
                    &self.bracket_vectors(&column(m, i), &basis_vec(n, j)),
                    &self.bracket_vectors(&basis_vec(n, i), &column(m, j)),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Basis of the derivation algebra, as matrices.
    pub fn derivation_basis(&self) -> Vec<Matrix> {
        let n = self.dim();
        // unknowns d[a][b] (row a, column b) flattened as a*n + b
        let mut sys: Matrix = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for comp in 0..n {
                    let mut row = linalg::zero_vector(n * n);
                    // d applied to [x_i, x_j]
                    for (k, ck) in self.c[i][j].iter().enumerate() {
                        if !ck.is_zero() {
                            row[comp * n + k] = &row[comp * n + k] + ck;
                        }
                    }
                    // minus [d x_i, x_j]: d x_i = Σ_a d[a][i] x_a
                    for a in 0..n {
                        let cc = &self.c[a][j][comp];
                        if !cc.is_zero() {
                            row[a * n + i] = &row[a * n + i] - cc;
                        }
                    }
                    // minus [x_i, d x_j]
                    for a in 0..n {
                        let cc = &self.c[i][a][comp];
                        if !cc.is_zero() {
                            row[a * n + j] = &row[a * n + j] - cc;
                        }
                    }
                    sys.push(row);
                }
            }
        }
        linalg::kernel_basis(&sys, n * n)
            .into_iter()
            .map(|flat| (0..n).map(|a| flat[a * n..(a + 1) * n].to_vec()).collect())
            .collect()
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        let basis = s.basis();
        basis.iter().enumerate().all(|(i, u)| {
            basis[i + 1..].iter().all(|v| self.bracket_vectors(u, v).iter().all(Rational::is_zero))
        })
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let n = self.dim();
        s.basis()
            .iter()
            .all(|u| (0..n).all(|k| s.contains(&self.bracket_vectors(&basis_vec(n, k), u))))
    }
}

pub fn basis_vec(n: usize, i: usize) -> Vector {
    let mut v = linalg::zero_vector(n);
    v[i] = rat_int(1);
    v
}

pub fn column(m: &Matrix, j: usize) -> Vector {
    m.iter().map(|row| row[j].clone()).collect()
}

fn empty_table(n: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::zero(); n]; n]; n]
}

fn set_bracket(c: &mut [Vec<Vec<Rational>>], i: usize, j: usize, k: usize, v: Rational) {
    c[i][j][k] = v.clone();
    c[j][i][k] = -v;
}

pub fn abelian(n: usize) -> LieAlgebra {
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    LieAlgebra::new(names, empty_table(n)).expect("abelian table is valid")
}

/// Heisenberg algebra of rank m: basis e1..em, f1..fm, c with [e_i, f_i] = c.
pub fn heisenberg(m: usize) -> LieAlgebra {
    let n = 2 * m + 1;
    let mut names: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
    names.extend((1..=m).map(|i| format!("f{i}")));
    names.push("c".to_string());
    let mut c = empty_table(n);
    for i in 0..m {
        set_bracket(&mut c, i, m + i, n - 1, rat_int(1));
    }
    LieAlgebra::new(names, c).expect("heisenberg table is valid")
}

/// Index of the central generator c in [`heisenberg`].
pub fn heisenberg_center(m: usize) -> usize {
    2 * m
}

/// Value of the symplectic form on the first 2m Heisenberg generators:
/// [u, v] = form(u, v) · c for u, v in the span of the e's and f's.
pub fn heisenberg_form(g: &LieAlgebra, u: &Vector, v: &Vector) -> Rational {
    let w = g.bracket_vectors(u, v);
    w[g.dim() - 1].clone()
}

/// Two-step algebra from a symmetric tensor: basis l1..lb, m1..mb, x1..xb with
/// [l_i, m_j] = Σ_k c_{ijk} x_k. The tensor must be symmetric under every
/// permutation of (i, j, k).
pub fn two_step(b: usize, coeffs: &[Vec<Vec<Rational>>]) -> Result<LieAlgebra> {
    if coeffs.len() != b || coeffs.iter().any(|p| p.len() != b || p.iter().any(|q| q.len() != b)) {
        return Err(Error::config(format!("coefficient tensor must be {b}x{b}x{b}")));
    }
    for i in 0..b {
        for j in 0..b {
            for k in 0..b {
                if coeffs[i][j][k] != coeffs[j][i][k] || coeffs[i][j][k] != coeffs[i][k][j] {
                    return Err(Error::validation(format!(
                        "coefficient tensor not symmetric at ({}, {}, {})",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    let n = 3 * b;
    let mut names: Vec<String> = (1..=b).map(|i| format!("l{i}")).collect();
    names.extend((1..=b).map(|i| format!("m{i}")));
    names.extend((1..=b).map(|i| format!("x{i}")));
    let mut c = empty_table(n);
    for i in 0..b {
        for j in 0..b {
            for k in 0..b {
                if !coeffs[i][j][k].is_zero() {
                    c[i][b + j][2 * b + k] = coeffs[i][j][k].clone();
                    c[b + j][i][2 * b + k] = -coeffs[i][j][k].clone();
                }
            }
        }
    }
    LieAlgebra::new(names, c)
}

/// The rank-one two-step algebra with [l, m] = x.
pub fn two_step_rank_one() -> LieAlgebra {
    two_step(1, &[vec![vec![rat_int(1)]]]).expect("rank-one table is valid")
}

pub fn sl2() -> LieAlgebra {
    let names = vec!["e".to_string(), "h".to_string(), "f".to_string()];
    let mut c = empty_table(3);
    // [e, f] = h, [h, e] = 2e, [h, f] = -2f
    set_bracket(&mut c, 0, 2, 1, rat_int(1));
    set_bracket(&mut c, 1, 0, 0, rat_int(2));
    set_bracket(&mut c, 1, 2, 2, rat_int(-2));
    LieAlgebra::new(names, c).expect("sl2 table is valid")
}

/// The nonabelian two-dimensional algebra [x, y] = y.
pub fn solvable2() -> LieAlgebra {
    let names = vec!["x".to_string(), "y".to_string()];
    let mut c = empty_table(2);
    set_bracket(&mut c, 0, 1, 1, rat_int(1));
    LieAlgebra::new(names, c).expect("solvable2 table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn families_validate() {
        assert_eq!(heisenberg(2).dim(), 5);
        assert_eq!(abelian(4).dim(), 4);
        assert_eq!(sl2().dim(), 3);
        assert_eq!(two_step_rank_one().dim(), 3);
        assert_eq!(solvable2().dim(), 2);
    }

    #[test]
    fn antisymmetry_violation_is_located() {
        let mut c = empty_table(2);
        c[0][1][0] = rat_int(1);
        let err = LieAlgebra::new(vec!["a".into(), "b".into()], c).unwrap_err();
        assert_eq!(err, Error::Validation("antisymmetry violated at (1, 2)".into()));
    }

    #[test]
    fn jacobi_violation_is_located() {
        // [x1,x2]=x3, [x1,x3]=x1 fails Jacobi on (1,2,3)
        let mut c = empty_table(3);
        set_bracket(&mut c, 0, 1, 2, rat_int(1));
        set_bracket(&mut c, 0, 2, 0, rat_int(1));
        let names = vec!["x1".into(), "x2".into(), "x3".into()];
        let err = LieAlgebra::new(names, c).unwrap_err();
        assert_eq!(err, Error::Validation("Jacobi identity violated at (1, 2, 3)".into()));
    }

    #[test]
    fn heisenberg_brackets_and_center() {
        let g = heisenberg(2);
        let e1 = basis_vec(5, 0);
        let f1 = basis_vec(5, 2);
        let f2 = basis_vec(5, 3);
        assert_eq!(g.bracket_vectors(&e1, &f1), basis_vec(5, 4));
        assert!(g.bracket_vectors(&e1, &f2).iter().all(Rational::is_zero));
        assert_eq!(g.center(), Subspace::span(5, &[basis_vec(5, 4)]));
        assert_eq!(heisenberg_form(&g, &e1, &f1), rat_int(1));
        assert_eq!(heisenberg_form(&g, &f1, &e1), rat_int(-1));
    }

    #[test]
    fn sl2_has_trivial_center_and_inner_derivations() {
        let g = sl2();
        assert_eq!(g.center().dim(), 0);
        assert_eq!(g.derivation_basis().len(), 3);
        for v in [basis_vec(3, 0), basis_vec(3, 1), basis_vec(3, 2)] {
            assert!(g.is_derivation(&g.ad_matrix(&v)));
        }
    }

    #[test]
    fn automorphism_detection() {
        let g = heisenberg(1);
        // e -> 2e, f -> f, c -> 2c is an automorphism; scaling c alone is not.
        let mut good = linalg::identity(3);
        good[0][0] = rat_int(2);
        good[2][2] = rat_int(2);
        assert!(g.is_automorphism(&good));
        let mut bad = linalg::identity(3);
        bad[2][2] = rat_int(2);
        assert!(!g.is_automorphism(&bad));
        // singular matrices are rejected even if bracket-compatible
        let zero = vec![vec![rat(0, 1); 3]; 3];
        assert!(!g.is_automorphism(&zero));
    }

    #[test]
    fn two_step_requires_symmetry() {
        let mut t = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        t[0][1][0] = rat_int(1);
        assert!(two_step(2, &t).is_err());
        t[1][0][0] = rat_int(1);
        t[0][0][1] = rat_int(1);
        assert!(two_step(2, &t).is_ok());
    }

    #[test]
    fn ad_matrix_acts_as_bracket() {
        let g = sl2();
        let h = basis_vec(3, 1);
        let ad_h = g.ad_matrix(&h);
        assert_eq!(linalg::mat_vec(&ad_h, &basis_vec(3, 0)), linalg::scale_vec(&basis_vec(3, 0), &rat_int(2)));
        assert_eq!(linalg::mat_vec(&ad_h, &basis_vec(3, 2)), linalg::scale_vec(&basis_vec(3, 2), &rat_int(-2)));
    }
}
