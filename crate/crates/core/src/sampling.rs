//! Seeded random generators for property tests and the self-test suite.
//! Everything is driven by a ChaCha stream cipher so runs are reproducible
//! from a single seed, and all outputs are exact rationals with small
//! numerators and denominators.

use crate::error::Result;
use crate::geom;
use crate::lie;
use crate::linalg::{identity, mat_mul, Matrix};
use crate::scalars::{rat, HSeries, Rational};
use crate::twist::{gauge_twist, reconstruct, TwistedEndo};
use crate::uea::{Ctx, Elem, Mono};
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// The reproducible generator used throughout.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in [-num_bound, num_bound] and denominator in
/// [1, den_bound].
pub fn random_rational(rng: &mut ChaCha8Rng, num_bound: i64, den_bound: i64) -> Rational {
    let num = rng.gen_range(-num_bound..=num_bound);
    let den = rng.gen_range(1..=den_bound);
    rat(num, den)
}

/// A monomial of total degree between 1 and max_degree.
pub fn random_monomial(rng: &mut ChaCha8Rng, dim: usize, max_degree: u32) -> Mono {
    let degree = rng.gen_range(1..=max_degree);
    let mut m = vec![0u32; dim];
    for _ in 0..degree {
        m[rng.gen_range(0..dim)] += 1;
    }
    m
}

/// An h-free tensor built from a few random monomials.
pub fn random_elem(
    ctx: &Arc<Ctx>,
    rng: &mut ChaCha8Rng,
    arity: usize,
    max_degree: u32,
    terms: usize,
) -> Elem {
    let mut out = Elem::zero(ctx, arity);
    for _ in 0..terms {
        let tuple: Vec<Mono> = (0..arity)
            .map(|_| random_monomial(rng, ctx.dim(), max_degree))
            .collect();
        let c = random_rational(rng, 3, 2);
        out = out.add(&Elem::from_terms(
            ctx,
            arity,
            [(tuple, HSeries::constant(ctx.h_order(), c))],
        ));
    }
    out
}

/// A random element of the invariant-skew space (possibly zero).
pub fn random_invariant_skew(ctx: &Arc<Ctx>, rng: &mut ChaCha8Rng) -> Elem {
    let basis = geom::invariant_skew2_basis(ctx);
    let mut out = Elem::zero(ctx, 2);
    for b in &basis {
        let c = random_rational(rng, 2, 2);
        if !c.is_zero() {
            out = out.add(&b.scale(&c));
        }
    }
    out
}

/// A product of exponentials of central monomials at positive h-orders:
/// gauges of this shape commute with everything.
pub fn random_central_gauge(ctx: &Arc<Ctx>, rng: &mut ChaCha8Rng) -> Result<Elem> {
    let center = ctx.lie().center();
    let mut out = Elem::unit(ctx, 1);
    if center.dim() == 0 {
        return Ok(out);
    }
    for l in 1..=ctx.h_order() {
        if rng.gen_bool(0.5) {
            continue;
        }
        let mut z = Elem::zero(ctx, 1);
        for b in center.basis() {
            let c = random_rational(rng, 2, 2);
            if !c.is_zero() {
                z = z.add(&Elem::lie_element(ctx, b).scale(&c));
            }
        }
        if z.is_zero() {
            continue;
        }
        let d = rng.gen_range(1..=2);
        out = out.mul(&z.pow(d).shift_h(l).exp()?);
    }
    Ok(out)
}

/// A counit-one gauge exp(x h + ...) with x running over random monomials of
/// positive degree; not central in general.
pub fn random_gauge(ctx: &Arc<Ctx>, rng: &mut ChaCha8Rng) -> Result<Elem> {
    let mut log = Elem::zero(ctx, 1);
    for l in 1..=ctx.h_order() {
        if rng.gen_bool(0.4) {
            continue;
        }
        let x = random_elem(ctx, rng, 1, 2, 2);
        log = log.add(&x.shift_h(l));
    }
    log.exp()
}

/// Exact exponential of a nilpotent matrix.
fn nilpotent_exp(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut out = identity(n);
    let mut power = identity(n);
    let mut k = 1u64;
    loop {
        power = mat_mul(&power, m);
        if power.iter().all(|row| row.iter().all(|c| c.is_zero())) {
            return Some(out);
        }
        if k > n as u64 + 1 {
            return None;
        }
        let inv = Rational::new(num::BigInt::from(1), crate::scalars::factorial(k));
        for (orow, prow) in out.iter_mut().zip(&power) {
            for (o, p) in orow.iter_mut().zip(prow) {
                *o += p * &inv;
            }
        }
        k += 1;
    }
}

/// A random Lie-algebra automorphism: a product of exponentials of nilpotent
/// inner derivations, mixed with unimodular integer moves when the algebra
/// is abelian (where any invertible matrix works).
pub fn random_automorphism(ctx: &Arc<Ctx>, rng: &mut ChaCha8Rng) -> Matrix {
    let alg = ctx.lie();
    let n = ctx.dim();
    let mut m = identity(n);
    let mut any_inner = false;
    for i in 0..n {
        let ad = alg.ad_matrix(&lie::basis_vec(n, i));
        let c = random_rational(rng, 2, 2);
        if c.is_zero() {
            continue;
        }
        let scaled: Matrix = ad
            .iter()
            .map(|row| row.iter().map(|x| x * &c).collect())
            .collect();
        if let Some(e) = nilpotent_exp(&scaled) {
            if !e.iter().enumerate().all(|(r, row)| {
                row.iter()
                    .enumerate()
                    .all(|(cc, v)| (r == cc && v.is_one()) || (r != cc && v.is_zero()))
            }) {
                any_inner = true;
            }
            if rng.gen_bool(0.7) {
                m = mat_mul(&m, &e);
            }
        }
    }
    if !any_inner {
        // abelian-like: apply a few unimodular elementary moves
        for _ in 0..(2 * n) {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let c = rat(rng.gen_range(-2..=2), 1);
            if c.is_zero() {
                continue;
            }
            let mut el = identity(n);
            el[i][j] = c;
            if alg.is_automorphism(&el) {
                m = mat_mul(&m, &el);
            }
        }
    }
    debug_assert!(alg.is_automorphism(&m));
    m
}

/// A reconstructed invariant twist from random skew coefficients.
pub fn random_invariant_twist(ctx: &Arc<Ctx>, rng: &mut ChaCha8Rng) -> Result<Elem> {
    let xs: Vec<Elem> = (1..=ctx.h_order())
        .map(|_| random_invariant_skew(ctx, rng))
        .collect();
    reconstruct(ctx, &xs)
}

/// A random twist in the orbit of the invariant ones: a reconstructed
/// invariant twist moved by a random counit-one gauge.
pub fn random_twist(ctx: &Arc<Ctx>, rng: &mut ChaCha8Rng) -> Result<Elem> {
    let f = random_invariant_twist(ctx, rng)?;
    let a = random_gauge(ctx, rng)?;
    gauge_twist(&a, &f)
}

/// A random twisted endomorphism: automorphism ∘ invariant twist, moved by a
/// random gauge.
pub fn random_twisted_endo(ctx: &Arc<Ctx>, rng: &mut ChaCha8Rng) -> Result<TwistedEndo> {
    let m = random_automorphism(ctx, rng);
    let base = TwistedEndo::from_invariant_twist(ctx, random_invariant_twist(ctx, rng)?)?
        .compose(&TwistedEndo::from_matrix(ctx, &m)?)?;
    let a = random_gauge(ctx, rng)?;
    base.gauge(&a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::separate;

    #[test]
    fn seeded_streams_are_reproducible() {
        let ctx = Ctx::new(lie::heisenberg(1), 4);
        let mut r1 = rng_from_seed(7);
        let mut r2 = rng_from_seed(7);
        assert_eq!(
            random_elem(&ctx, &mut r1, 2, 3, 3),
            random_elem(&ctx, &mut r2, 2, 3, 3)
        );
        assert_eq!(
            random_twist(&ctx, &mut r1).unwrap(),
            random_twist(&ctx, &mut r2).unwrap()
        );
    }

    #[test]
    fn random_objects_satisfy_their_contracts() {
        for alg in [lie::heisenberg(1), lie::two_step_rank_one(), lie::sl2()] {
            let ctx = Ctx::new(alg, 3);
            let mut rng = rng_from_seed(11);
            for _ in 0..5 {
                let m = random_automorphism(&ctx, &mut rng);
                assert!(ctx.lie().is_automorphism(&m));
                let skew = random_invariant_skew(&ctx, &mut rng);
                assert!(skew.is_invariant());
                let g = random_central_gauge(&ctx, &mut rng).unwrap();
                assert!(g.counit().is_one());
                assert!(g.is_invariant());
                let a = random_gauge(&ctx, &mut rng).unwrap();
                assert!(a.counit().is_one());
                let f = random_twist(&ctx, &mut rng).unwrap();
                crate::twist::check_twist(&f).unwrap();
            }
        }
    }

    #[test]
    fn random_twisted_endos_separate() {
        let ctx = Ctx::new(lie::heisenberg(1), 3);
        let mut rng = rng_from_seed(3);
        for _ in 0..3 {
            let t = random_twisted_endo(&ctx, &mut rng).unwrap();
            separate(&t).unwrap();
        }
    }
}
