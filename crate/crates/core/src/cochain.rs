//! The coalgebra cochain complex on tensor powers of U(g).
//!
//! The differential is the simplicial one,
//! ∂(X) = 1⊗X + Σ_{i=1}^n (-1)^i Δ_i(X) + (-1)^{n+1} X⊗1,
//! which at n = 1 reads ∂(a) = a⊗1 + 1⊗a - Δ(a). In PBW coordinates the
//! coproduct is the multinomial expansion, so the whole complex depends only
//! on the dimension of g, never on the bracket; the bracket re-enters through
//! invariance requirements on the inputs.
//!
//! ∂ preserves total PBW degree exactly, which is what makes the degree-wise
//! solver and the degree-capped rank counts exact rather than truncations.

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::Rational;
use crate::uea::{mono_degree, split_mono, Ctx, Elem, Mono};
use num::traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Simplicial differential; arity grows by one.
pub fn differential(x: &Elem) -> Elem {
    let n = x.arity();
    let mut acc = x.embed(n + 1, &(1..=n).collect::<Vec<_>>());
    for i in 1..=n {
        let piece = x.coproduct_at(i - 1);
        acc = if i % 2 == 1 { acc.sub(&piece) } else { acc.add(&piece) };
    }
    let last = x.embed(n + 1, &(0..n).collect::<Vec<_>>());
    acc = if (n + 1) % 2 == 1 { acc.sub(&last) } else { acc.add(&last) };
    acc
}

pub fn is_cocycle(x: &Elem) -> bool {
    differential(x).is_zero()
}

/// Result of splitting a 2-cocycle x as Alt₂(x) + ∂(witness).
#[derive(Clone, Debug, PartialEq)]
pub struct CoboundarySplit {
    /// The antisymmetrization Alt₂(x).
    pub skew: Elem,
    /// An element a with ∂(a) = x - Alt₂(x); canonical in that its degree-one
    /// part is zero, which pins it down exactly (solutions differ by
    /// primitives).
    pub witness: Elem,
}

/// Splits a 2-cocycle as its antisymmetrization plus an exact part and solves
/// for the witness in closed form.
///
/// The witness is read off degree by degree: in PBW coordinates the bidegree
/// (1, d-1) component of ∂(a) determines the degree-d part of a through the
/// symmetric-algebra merge of exponent vectors, scaled by -1/d. The candidate
/// is then verified exactly against the input, so a non-coboundary input is
/// always rejected.
///
/// With `require_invariant` the skew part is additionally checked to be
/// invariant, which is the obstruction to normalizing a twist coefficient
/// inside the invariant skews. The witness itself may be non-invariant (it
/// absorbs arbitrary gauge directions), but for an invariant input it is
/// automatically invariant because the canonical solution is unique.
pub fn solve_coboundary(x: &Elem, require_invariant: bool) -> Result<CoboundarySplit> {
    if x.arity() != 2 {
        return Err(Error::config("coboundary solve needs a two-tensor".to_string()));
    }
    if !is_cocycle(x) {
        return Err(Error::domain("input is not a 2-cocycle".to_string()));
    }
    let ctx = x.ctx().clone();
    let skew = x.alt2();
    let y = x.sub(&skew);

    let mut witness = Elem::zero(&ctx, 1);
    let unit_tuple = vec![vec![0u32; ctx.dim()]; 2];
    for (tuple, coef) in y.terms() {
        if *tuple == unit_tuple {
            // ∂(λ·1) = λ·1⊗1
            witness = witness.add(&Elem::from_terms(
                &ctx,
                1,
                [(vec![vec![0u32; ctx.dim()]], coef.clone())],
            ));
            continue;
        }
        if mono_degree(&tuple[0]) != 1 {
            continue;
        }
        let d = 1 + mono_degree(&tuple[1]);
        if d < 2 {
            continue;
        }
        let merged: Mono = tuple[0].iter().zip(&tuple[1]).map(|(a, b)| a + b).collect();
        let scale = -Rational::new(num::BigInt::one(), num::BigInt::from(d));
        witness = witness.add(&Elem::from_terms(&ctx, 1, [(vec![merged], coef.scale(&scale))]));
    }

    if differential(&witness) != y {
        return Err(Error::domain(
            "input is not a coboundary: the symmetric part has no exact witness".to_string(),
        ));
    }
    if require_invariant && !skew.is_invariant() {
        return Err(Error::validation(
            "skew part of the cocycle is not invariant".to_string(),
        ));
    }
    Ok(CoboundarySplit { skew, witness })
}

fn monomials_of_degree(dim: usize, d: u32) -> Vec<Mono> {
    fn rec(dim: usize, d: u32, prefix: &mut Mono, out: &mut Vec<Mono>) {
        if prefix.len() == dim - 1 {
            let mut m = prefix.clone();
            m.push(d);
            out.push(m);
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(dim, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    rec(dim, d, &mut Vec::new(), &mut out);
    out
}

fn tuples_of_degree(dim: usize, arity: usize, d: u32) -> Vec<Vec<Mono>> {
    fn rec(dim: usize, arity: usize, d: u32, prefix: &mut Vec<Mono>, out: &mut Vec<Vec<Mono>>) {
        if prefix.len() == arity - 1 {
            for m in monomials_of_degree(dim, d) {
                let mut t = prefix.clone();
                t.push(m);
                out.push(t);
            }
            return;
        }
        for e in 0..=d {
            for m in monomials_of_degree(dim, e) {
                prefix.push(m);
                rec(dim, arity, d - e, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(dim, arity, d, &mut Vec::new(), &mut out);
    out
}

/// Differential of a PBW basis cochain over bare rationals; the h-adic and
/// Lie structure play no role here.
fn diff_tuple(tuple: &[Mono]) -> BTreeMap<Vec<Mono>, Rational> {
    let n = tuple.len();
    let dim = tuple[0].len();
    let empty: Mono = vec![0; dim];
    let mut acc: BTreeMap<Vec<Mono>, Rational> = BTreeMap::new();
    let mut add = |t: Vec<Mono>, c: Rational| {
        let e = acc.entry(t).or_insert_with(Rational::zero);
        *e = &*e + &c;
    };
    let mut front = vec![empty.clone()];
    front.extend_from_slice(tuple);
    add(front, Rational::one());
    for i in 1..=n {
        let sign = if i % 2 == 1 { -Rational::one() } else { Rational::one() };
        for (left, w) in split_mono(&tuple[i - 1]) {
            let mut right = tuple[i - 1].clone();
            for (r, l) in right.iter_mut().zip(&left) {
                *r -= l;
            }
            let mut t = Vec::with_capacity(n + 1);
            t.extend_from_slice(&tuple[..i - 1]);
            t.push(left);
            t.push(right);
            t.extend_from_slice(&tuple[i..]);
            add(t, &sign * &Rational::from_integer(w));
        }
    }
    let mut back = tuple.to_vec();
    back.push(empty);
    let sign = if (n + 1) % 2 == 1 { -Rational::one() } else { Rational::one() };
    add(back, sign);
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// Rank of ∂ out of the degree-d part of the arity-n cochain space.
/// Arity 0 is the scalars, concentrated in degree 0 with zero differential.
fn diff_rank(dim: usize, n: usize, d: u32) -> usize {
    if n == 0 {
        return 0;
    }
    let source = tuples_of_degree(dim, n, d);
    let mut col_index: BTreeMap<Vec<Mono>, usize> = BTreeMap::new();
    let mut rows = Vec::with_capacity(source.len());
    for t in &source {
        let image = diff_tuple(t);
        let mut row = BTreeMap::new();
        for (tt, c) in image {
            let next = col_index.len();
            let j = *col_index.entry(tt).or_insert(next);
            row.insert(j, c);
        }
        rows.push(row);
    }
    linalg::sparse_rank(rows)
}

fn cochain_dim(dim: usize, n: usize, d: u32) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    tuples_of_degree(dim, n, d).len()
}

/// Dimension of H^n of the coalgebra complex summed over total degrees up to
/// `degree_cap`. The cohomology is concentrated in degree n, where it has
/// dimension dim Λⁿ g, so any cap ≥ n returns exactly that number.
pub fn cohomology_dimension(ctx: &Arc<Ctx>, n: usize, degree_cap: u32) -> usize {
    assert!(n >= 1, "cohomology degree must be at least 1");
    let dim = ctx.dim();
    let mut total = 0usize;
    for d in 0..=degree_cap {
        let c_n = cochain_dim(dim, n, d);
        let rank_out = diff_rank(dim, n, d);
        let rank_in = diff_rank(dim, n - 1, d);
        total += c_n - rank_out - rank_in;
    }
    total
}

/// Number of linearly independent components of Λⁿ of an m-dimensional space;
/// the expected concentrated cohomology dimension.
pub fn lambda_dim(m: usize, n: usize) -> usize {
    let b = crate::scalars::binomial(m as u64, n as u64);
    let digits = b.to_string();
    digits.parse().expect("binomial fits in usize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;
    use crate::scalars::rat;

    fn abctx() -> Arc<Ctx> {
        Ctx::new(lie::abelian(2), 4)
    }

    fn hctx() -> Arc<Ctx> {
        Ctx::new(lie::heisenberg(1), 4)
    }

    #[test]
    fn differential_squares_to_zero() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        for x in [
            e.mul(&f).add(&f.pow(3).scale(&rat(2, 3))),
            e.tensor(&f.mul(&f)).sub(&f.tensor(&e)),
        ] {
            assert!(differential(&differential(&x)).is_zero());
        }
    }

    #[test]
    fn primitives_and_unit_behave_as_expected() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        assert!(differential(&e).is_zero());
        let one = Elem::unit(&ctx, 1);
        assert_eq!(differential(&one), Elem::unit(&ctx, 2));
    }

    #[test]
    fn coboundary_of_a_product_splits_back() {
        // ∂(-xy) = x⊗y + y⊗x in the abelian algebra
        let ctx = abctx();
        let x = Elem::generator(&ctx, 0);
        let y = Elem::generator(&ctx, 1);
        let sym = x.tensor(&y).add(&y.tensor(&x));
        let split = solve_coboundary(&sym, false).unwrap();
        assert!(split.skew.is_zero());
        assert_eq!(split.witness, x.mul(&y).neg());
        assert_eq!(differential(&split.witness), sym);
    }

    #[test]
    fn central_cube_witness() {
        // β(c⊗c² + c²⊗c) has witness -β/3 c³ and it is invariant
        let ctx = hctx();
        let c = Elem::generator(&ctx, 2);
        let beta = rat(5, 7);
        let sym = c.tensor(&c.pow(2)).add(&c.pow(2).tensor(&c)).scale(&beta);
        let split = solve_coboundary(&sym, true).unwrap();
        assert_eq!(split.witness, c.pow(3).scale(&(-beta / rat(3, 1))));
    }

    #[test]
    fn mixed_cocycle_recovers_skew_and_witness() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let c = Elem::generator(&ctx, 2);
        let skew_in = e.tensor(&c).sub(&c.tensor(&e)).scale(&rat(3, 2));
        let a = e.mul(&f).add(&c.pow(2).scale(&rat(1, 4)));
        let x = skew_in.add(&differential(&a));
        let split = solve_coboundary(&x, false).unwrap();
        assert_eq!(split.skew, skew_in);
        assert_eq!(split.witness, a);
        // with an added primitive the witness is unchanged: primitives are
        // invisible to ∂
        let x2 = skew_in.add(&differential(&a.add(&e.scale(&rat(9, 5)))));
        assert_eq!(solve_coboundary(&x2, false).unwrap().witness, a);
    }

    #[test]
    fn h_scaled_input_scales_the_witness() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let a = e.mul(&f);
        let x = differential(&a).shift_h(2);
        let split = solve_coboundary(&x, false).unwrap();
        assert_eq!(split.witness, a.shift_h(2));
    }

    #[test]
    fn non_coboundary_is_rejected() {
        let ctx = abctx();
        let x = Elem::generator(&ctx, 0);
        let y = Elem::generator(&ctx, 1);
        // symmetric but not a cocycle: x²⊗y + y⊗x² fails the cocycle test
        let bad = x.pow(2).tensor(&y).add(&y.tensor(&x.pow(2)));
        assert!(matches!(solve_coboundary(&bad, false), Err(Error::Domain(_))));
    }

    #[test]
    fn constant_term_is_recovered() {
        let ctx = abctx();
        let x = Elem::generator(&ctx, 0);
        let lam = rat(7, 3);
        let a = x.pow(2).add(&Elem::unit(&ctx, 1).scale(&lam));
        let split = solve_coboundary(&differential(&a), false).unwrap();
        assert_eq!(split.witness, a);
    }

    #[test]
    fn cohomology_concentrates_in_lambda() {
        let ctx = abctx();
        assert_eq!(cohomology_dimension(&ctx, 1, 3), 2);
        assert_eq!(cohomology_dimension(&ctx, 2, 3), 1);
        let ctx3 = hctx();
        assert_eq!(cohomology_dimension(&ctx3, 1, 2), 3);
        assert_eq!(cohomology_dimension(&ctx3, 2, 2), 3);
        assert_eq!(cohomology_dimension(&ctx3, 3, 3), 1);
    }

    #[test]
    fn lambda_dim_is_binomial() {
        assert_eq!(lambda_dim(5, 2), 10);
        assert_eq!(lambda_dim(3, 3), 1);
        assert_eq!(lambda_dim(3, 4), 0);
    }
}
