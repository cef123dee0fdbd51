//! Truncated universal enveloping algebras and their tensor powers.
//!
//! Elements live in U(g)^{⊗k}[h]/(h^{N+1}) with exact rational coefficients.
//! The basis is PBW: monomials are exponent vectors over the ordered Lie basis,
//! and products are straightened through the recursion
//! x_j x_i = x_i x_j + [x_j, x_i] (j > i), memoized per context.
//!
//! The coalgebra structure is the bialgebra one with primitive generators:
//! on a PBW monomial the coproduct is the exact multinomial expansion, which
//! preserves total degree; the antipode reverses the word and flips the sign
//! by degree parity.

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Vector;
use crate::scalars::{binomial, factorial, HSeries, Rational};
use itertools::Itertools;
use num::traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// PBW exponent vector; length equals the Lie algebra dimension.
pub type Mono = Vec<u32>;

/// h-free linear combination of PBW monomials, used internally by straightening.
type LinComb = Arc<Vec<(Mono, Rational)>>;

pub fn mono_degree(m: &Mono) -> u32 {
    m.iter().sum()
}

fn top_index(m: &Mono) -> Option<usize> {
    m.iter().rposition(|&e| e > 0)
}

/// Shared computation context: the Lie algebra, the truncation order N of
/// Q[h]/(h^{N+1}), and straightening caches.
pub struct Ctx {
    lie: LieAlgebra,
    h_order: usize,
    gen_cache: Mutex<HashMap<(Mono, usize), LinComb>>,
    mul_cache: Mutex<HashMap<(Mono, Mono), LinComb>>,
    antipode_cache: Mutex<HashMap<Mono, LinComb>>,
}

impl Ctx {
    pub fn new(lie: LieAlgebra, h_order: usize) -> Arc<Ctx> {
        Arc::new(Ctx {
            lie,
            h_order,
            gen_cache: Mutex::new(HashMap::new()),
            mul_cache: Mutex::new(HashMap::new()),
            antipode_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn h_order(&self) -> usize {
        self.h_order
    }

    /// Contexts agree when they present the same algebra at the same order;
    /// elements of agreeing contexts may be mixed freely.
    pub fn agrees_with(&self, other: &Ctx) -> bool {
        std::ptr::eq(self, other) || (self.h_order == other.h_order && self.lie == other.lie)
    }

    fn empty_mono(&self) -> Mono {
        vec![0; self.dim()]
    }

    /// Straightened product m · x_i as a PBW combination.
    fn mono_times_gen(&self, m: &Mono, i: usize) -> LinComb {
        if let Some(hit) = self.gen_cache.lock().unwrap().get(&(m.clone(), i)) {
            return hit.clone();
        }
        let result: LinComb = match top_index(m) {
            Some(j) if j > i => {
                // m = m' x_j with j the top generator; then
                // m x_i = (m' x_i) x_j + m' [x_j, x_i].
                let mut rest = m.clone();
                rest[j] -= 1;
                let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
                for (mu, c) in self.mono_times_gen(&rest, i).iter() {
                    for (nu, d) in self.mono_times_gen(mu, j).iter() {
                        let e = acc.entry(nu.clone()).or_insert_with(Rational::zero);
                        *e = &*e + &(c * d);
                    }
                }
                for (k, ck) in self.lie.bracket(j, i).iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    for (nu, d) in self.mono_times_gen(&rest, k).iter() {
                        let e = acc.entry(nu.clone()).or_insert_with(Rational::zero);
                        *e = &*e + &(ck * d);
                    }
                }
                acc.retain(|_, v| !v.is_zero());
                Arc::new(acc.into_iter().collect())
            }
            _ => {
                let mut out = m.clone();
                out[i] += 1;
                Arc::new(vec![(out, Rational::one())])
            }
        };
        self.gen_cache.lock().unwrap().insert((m.clone(), i), result.clone());
        result
    }

    /// Straightened product of two PBW monomials.
    fn mono_product(&self, a: &Mono, b: &Mono) -> LinComb {
        if mono_degree(b) == 0 {
            return Arc::new(vec![(a.clone(), Rational::one())]);
        }
        if mono_degree(a) == 0 {
            return Arc::new(vec![(b.clone(), Rational::one())]);
        }
        if let Some(hit) = self.mul_cache.lock().unwrap().get(&(a.clone(), b.clone())) {
            return hit.clone();
        }
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        acc.insert(a.clone(), Rational::one());
        for (i, &e) in b.iter().enumerate() {
            for _ in 0..e {
                let mut next: BTreeMap<Mono, Rational> = BTreeMap::new();
                for (mu, c) in &acc {
                    for (nu, d) in self.mono_times_gen(mu, i).iter() {
                        let t = next.entry(nu.clone()).or_insert_with(Rational::zero);
                        *t = &*t + &(c * d);
                    }
                }
                next.retain(|_, v| !v.is_zero());
                acc = next;
            }
        }
        let result: LinComb = Arc::new(acc.into_iter().collect());
        self.mul_cache.lock().unwrap().insert((a.clone(), b.clone()), result.clone());
        result
    }

    /// Antipode of a PBW monomial: (-1)^deg times the reversed word.
    fn mono_antipode(&self, m: &Mono) -> LinComb {
        if let Some(hit) = self.antipode_cache.lock().unwrap().get(m) {
            return hit.clone();
        }
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        acc.insert(self.empty_mono(), Rational::one());
        for (i, &e) in m.iter().enumerate().rev() {
            for _ in 0..e {
                let mut next: BTreeMap<Mono, Rational> = BTreeMap::new();
                for (mu, c) in &acc {
                    for (nu, d) in self.mono_times_gen(mu, i).iter() {
                        let t = next.entry(nu.clone()).or_insert_with(Rational::zero);
                        *t = &*t + &(c * d);
                    }
                }
                next.retain(|_, v| !v.is_zero());
                acc = next;
            }
        }
        let sign = if mono_degree(m) % 2 == 1 { -Rational::one() } else { Rational::one() };
        let result: LinComb =
            Arc::new(acc.into_iter().map(|(mu, c)| (mu, c * sign.clone())).collect());
        self.antipode_cache.lock().unwrap().insert(m.clone(), result.clone());
        result
    }
}

impl fmt::Debug for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ctx").field("dim", &self.dim()).field("h_order", &self.h_order).finish()
    }
}

/// Element of U(g)^{⊗arity}[h]/(h^{N+1}): a finite sum of monomial tuples with
/// truncated-series coefficients. Zero coefficients are never stored.
#[derive(Clone)]
pub struct Elem {
    ctx: Arc<Ctx>,
    arity: usize,
    terms: BTreeMap<Vec<Mono>, HSeries>,
}

impl Elem {
    pub fn zero(ctx: &Arc<Ctx>, arity: usize) -> Elem {
        assert!(arity >= 1, "tensor arity must be at least 1");
        Elem { ctx: ctx.clone(), arity, terms: BTreeMap::new() }
    }

    pub fn unit(ctx: &Arc<Ctx>, arity: usize) -> Elem {
        Elem::scalar(ctx, arity, HSeries::one(ctx.h_order()))
    }

    pub fn scalar(ctx: &Arc<Ctx>, arity: usize, c: HSeries) -> Elem {
        assert_eq!(c.order(), ctx.h_order(), "series order differs from context order");
        let mut e = Elem::zero(ctx, arity);
        e.add_term(vec![ctx.empty_mono(); arity], c);
        e
    }

    pub fn generator(ctx: &Arc<Ctx>, i: usize) -> Elem {
        assert!(i < ctx.dim(), "generator index out of range");
        let mut m = ctx.empty_mono();
        m[i] = 1;
        let mut e = Elem::zero(ctx, 1);
        e.add_term(vec![m], HSeries::one(ctx.h_order()));
        e
    }

    /// Degree-one element Σ v_i x_i.
    pub fn lie_element(ctx: &Arc<Ctx>, v: &Vector) -> Elem {
        assert_eq!(v.len(), ctx.dim());
        let mut e = Elem::zero(ctx, 1);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let mut m = ctx.empty_mono();
                m[i] = 1;
                e.add_term(vec![m], HSeries::constant(ctx.h_order(), c.clone()));
            }
        }
        e
    }

    pub fn from_terms(
        ctx: &Arc<Ctx>,
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<Mono>, HSeries)>,
    ) -> Elem {
        let mut e = Elem::zero(ctx, arity);
        for (t, c) in terms {
            e.add_term(t, c);
        }
        e
    }

    fn add_term(&mut self, tuple: Vec<Mono>, c: HSeries) {
        assert_eq!(tuple.len(), self.arity);
        debug_assert!(tuple.iter().all(|m| m.len() == self.ctx.dim()));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Mono>, &HSeries)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, tuple: &[Mono]) -> HSeries {
        self.terms.get(tuple).cloned().unwrap_or_else(|| HSeries::zero(self.ctx.h_order()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_unit_elem(&self) -> bool {
        self == &Elem::unit(&self.ctx, self.arity)
    }

    fn check_agreement(&self, other: &Elem) {
        assert!(self.ctx.agrees_with(&other.ctx), "elements from different contexts");
        assert_eq!(self.arity, other.arity, "tensor arities differ");
    }

    pub fn add(&self, other: &Elem) -> Elem {
        self.check_agreement(other);
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Elem {
        Elem {
            ctx: self.ctx.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Elem {
        if c.is_zero() {
            return Elem::zero(&self.ctx, self.arity);
        }
        Elem {
            ctx: self.ctx.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(t, s)| (t.clone(), s.scale(c))).collect(),
        }
    }

    pub fn scale_series(&self, c: &HSeries) -> Elem {
        let mut out = Elem::zero(&self.ctx, self.arity);
        for (t, s) in &self.terms {
            out.add_term(t.clone(), s * c);
        }
        out
    }

    /// Multiplication by h^l.
    pub fn shift_h(&self, l: usize) -> Elem {
        let mut out = Elem::zero(&self.ctx, self.arity);
        for (t, s) in &self.terms {
            out.add_term(t.clone(), s.shift(l));
        }
        out
    }

    /// The rational coefficient of h^l, reinterpreted at h^0.
    pub fn h_coeff(&self, l: usize) -> Elem {
        let mut out = Elem::zero(&self.ctx, self.arity);
        for (t, s) in &self.terms {
            out.add_term(t.clone(), HSeries::constant(self.ctx.h_order(), s.coeff(l).clone()));
        }
        out
    }

    /// Whether every coefficient is constant in h.
    pub fn is_h_free(&self) -> bool {
        self.terms.values().all(|s| s.coeffs()[1..].iter().all(Rational::is_zero))
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        self.check_agreement(other);
        let mut out = Elem::zero(&self.ctx, self.arity);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let c = c1 * c2;
                if c.is_zero() {
                    continue;
                }
                let parts: Vec<LinComb> =
                    (0..self.arity).map(|s| self.ctx.mono_product(&t1[s], &t2[s])).collect();
                let mut partial: Vec<(Vec<Mono>, Rational)> =
                    vec![(Vec::with_capacity(self.arity), Rational::one())];
                for part in &parts {
                    let mut next = Vec::with_capacity(partial.len() * part.len());
                    for (prefix, r) in &partial {
                        for (mu, q) in part.iter() {
                            let mut t = prefix.clone();
                            t.push(mu.clone());
                            next.push((t, r * q));
                        }
                    }
                    partial = next;
                }
                for (t, r) in partial {
                    out.add_term(t, c.scale(&r));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Elem) -> Elem {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> Elem {
        let mut acc = Elem::unit(&self.ctx, self.arity);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Outer tensor product; arities add.
    pub fn tensor(&self, other: &Elem) -> Elem {
        assert!(self.ctx.agrees_with(&other.ctx), "elements from different contexts");
        let mut out = Elem::zero(&self.ctx, self.arity + other.arity);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let mut t = t1.clone();
                t.extend(t2.iter().cloned());
                out.add_term(t, c1 * c2);
            }
        }
        out
    }

    /// exp of an element that vanishes at h^0; the series stops at the
    /// truncation order.
    pub fn exp(&self) -> Result<Elem> {
        if !self.h_coeff(0).is_zero() {
            return Err(Error::domain("exp needs an element that vanishes at h^0".to_string()));
        }
        let order = self.ctx.h_order();
        let mut acc = Elem::unit(&self.ctx, self.arity);
        let mut term = Elem::unit(&self.ctx, self.arity);
        for j in 1..=order as u64 {
            term = term.mul(self);
            acc = acc.add(&term.scale(&Rational::from_integer(factorial(j)).recip()));
        }
        Ok(acc)
    }

    /// log of an element with h^0 part exactly the unit.
    pub fn log(&self) -> Result<Elem> {
        let v = self.sub(&Elem::unit(&self.ctx, self.arity));
        if !v.h_coeff(0).is_zero() {
            return Err(Error::domain("log needs an element with h^0 part equal to 1".to_string()));
        }
        let order = self.ctx.h_order();
        let mut acc = Elem::zero(&self.ctx, self.arity);
        let mut pw = Elem::unit(&self.ctx, self.arity);
        for j in 1..=order as i64 {
            pw = pw.mul(&v);
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&pw.scale(&crate::scalars::rat(sign, j)));
        }
        Ok(acc)
    }

    /// Inverse of a unit: the h^0 part must be a nonzero scalar multiple of 1,
    /// which characterizes invertibility here since U(g) has only scalar units.
    pub fn inverse(&self) -> Result<Elem> {
        let h0 = self.h_coeff(0);
        let unit_tuple = vec![self.ctx.empty_mono(); self.arity];
        let lambda = h0.coeff_of(&unit_tuple).coeff(0).clone();
        if lambda.is_zero() || h0.term_count() != 1 {
            return Err(Error::domain(
                "element is not invertible: h^0 part is not a nonzero scalar".to_string(),
            ));
        }
        let inv_lambda = lambda.recip();
        // self = lambda (1 - w) with w ≡ 0 mod h
        let w = Elem::unit(&self.ctx, self.arity).sub(&self.scale(&inv_lambda));
        let mut acc = Elem::unit(&self.ctx, self.arity);
        let mut pw = Elem::unit(&self.ctx, self.arity);
        for _ in 1..=self.ctx.h_order() {
            pw = pw.mul(&w);
            acc = acc.add(&pw);
        }
        Ok(acc.scale(&inv_lambda))
    }

    /// Pull-back along a permutation of tensor slots: slot s of the result is
    /// slot perm[s] of the input.
    pub fn permute(&self, perm: &[usize]) -> Elem {
        assert_eq!(perm.len(), self.arity);
        let mut seen = vec![false; self.arity];
        for &p in perm {
            assert!(p < self.arity && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut out = Elem::zero(&self.ctx, self.arity);
        for (t, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| t[p].clone()).collect(), c.clone());
        }
        out
    }

    /// Places the k factors at the given strictly increasing positions of a
    /// wider tensor power, padding the rest with 1.
    pub fn embed(&self, arity: usize, positions: &[usize]) -> Elem {
        assert_eq!(positions.len(), self.arity);
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "positions must increase");
        assert!(positions.iter().all(|&p| p < arity), "position out of range");
        let mut out = Elem::zero(&self.ctx, arity);
        for (t, c) in &self.terms {
            let mut tuple = vec![self.ctx.empty_mono(); arity];
            for (s, &p) in positions.iter().enumerate() {
                tuple[p] = t[s].clone();
            }
            out.add_term(tuple, c.clone());
        }
        out
    }

    /// Coproduct applied to one slot; arity grows by one. On a PBW monomial
    /// this is the multinomial expansion Σ ∏ C(e_i, a_i) (x^a ⊗ x^{e-a}),
    /// exactly degree-preserving.
    pub fn coproduct_at(&self, pos: usize) -> Elem {
        assert!(pos < self.arity);
        let mut out = Elem::zero(&self.ctx, self.arity + 1);
        for (t, c) in &self.terms {
            let m = &t[pos];
            for (left, w) in split_mono(m) {
                let mut right = m.clone();
                for (r, l) in right.iter_mut().zip(&left) {
                    *r -= l;
                }
                let mut tuple = Vec::with_capacity(self.arity + 1);
                tuple.extend_from_slice(&t[..pos]);
                tuple.push(left);
                tuple.push(right);
                tuple.extend_from_slice(&t[pos + 1..]);
                out.add_term(tuple, c.scale(&Rational::from_integer(w)));
            }
        }
        out
    }

    /// Counit applied to one slot; arity shrinks by one.
    pub fn counit_at(&self, pos: usize) -> Elem {
        assert!(self.arity >= 2, "counit_at needs arity at least 2");
        assert!(pos < self.arity);
        let mut out = Elem::zero(&self.ctx, self.arity - 1);
        for (t, c) in &self.terms {
            if mono_degree(&t[pos]) == 0 {
                let mut tuple = t.clone();
                tuple.remove(pos);
                out.add_term(tuple, c.clone());
            }
        }
        out
    }

    /// Counit applied to every slot.
    pub fn counit(&self) -> HSeries {
        let unit_tuple = vec![self.ctx.empty_mono(); self.arity];
        self.coeff_of(&unit_tuple)
    }

    /// Antipode applied to one slot.
    pub fn antipode_at(&self, pos: usize) -> Elem {
        assert!(pos < self.arity);
        let mut out = Elem::zero(&self.ctx, self.arity);
        for (t, c) in &self.terms {
            for (mu, r) in self.ctx.mono_antipode(&t[pos]).iter() {
                let mut tuple = t.clone();
                tuple[pos] = mu.clone();
                out.add_term(tuple, c.scale(r));
            }
        }
        out
    }

    /// Applies the algebra map determined by generator images to one slot.
    /// Images must be arity-1 elements over an agreeing context.
    pub fn apply_at(&self, pos: usize, images: &[Elem]) -> Elem {
        assert!(pos < self.arity);
        assert_eq!(images.len(), self.ctx.dim(), "one image per generator");
        for im in images {
            assert_eq!(im.arity, 1);
            assert!(self.ctx.agrees_with(&im.ctx), "image from a different context");
        }
        let mut power_cache: HashMap<(usize, u32), Elem> = HashMap::new();
        let mut out = Elem::zero(&self.ctx, self.arity);
        for (t, c) in &self.terms {
            let mut value = Elem::unit(&self.ctx, 1);
            for (i, &e) in t[pos].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = power_cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                value = value.mul(&pw);
            }
            for (vt, vc) in &value.terms {
                let mut tuple = t.clone();
                tuple[pos] = vt[0].clone();
                out.add_term(tuple, c * vc);
            }
        }
        out
    }

    /// Applies the algebra map to every slot.
    pub fn apply_all(&self, images: &[Elem]) -> Elem {
        let mut acc = self.clone();
        for pos in 0..self.arity {
            acc = acc.apply_at(pos, images);
        }
        acc
    }

    /// Sum over slots of the generator placed in one slot: the iterated
    /// coproduct of a primitive element.
    pub fn primitive_embedding(ctx: &Arc<Ctx>, arity: usize, i: usize) -> Elem {
        let g = Elem::generator(ctx, i);
        let mut acc = Elem::zero(ctx, arity);
        for pos in 0..arity {
            acc = acc.add(&g.embed(arity, &[pos]));
        }
        acc
    }

    /// Whether the element commutes with the image of U(g) under the iterated
    /// coproduct, i.e. with Σ_slots x_i for every generator.
    pub fn is_invariant(&self) -> bool {
        (0..self.ctx.dim()).all(|i| {
            let d = Elem::primitive_embedding(&self.ctx, self.arity, i);
            self.commutator(&d).is_zero()
        })
    }

    /// Antisymmetrization (x - x_21)/2 of a two-tensor.
    pub fn alt2(&self) -> Elem {
        assert_eq!(self.arity, 2, "alt2 needs arity 2");
        self.sub(&self.permute(&[1, 0])).scale(&crate::scalars::rat(1, 2))
    }

    /// Full antisymmetrization over all slots, normalized by 1/arity!.
    pub fn alternate(&self) -> Elem {
        let mut acc = Elem::zero(&self.ctx, self.arity);
        for perm in (0..self.arity).permutations(self.arity) {
            let mut inv = 0;
            for a in 0..perm.len() {
                for b in (a + 1)..perm.len() {
                    if perm[a] > perm[b] {
                        inv += 1;
                    }
                }
            }
            let signed = if inv % 2 == 0 { self.permute(&perm) } else { self.permute(&perm).neg() };
            acc = acc.add(&signed);
        }
        acc.scale(&Rational::from_integer(factorial(self.arity as u64)).recip())
    }

    /// Total PBW degree of the largest term.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|t| t.iter().map(mono_degree).sum()).max().unwrap_or(0)
    }

    /// The part of total PBW degree d.
    pub fn graded_piece(&self, d: u32) -> Elem {
        let mut out = Elem::zero(&self.ctx, self.arity);
        for (t, c) in &self.terms {
            if t.iter().map(mono_degree).sum::<u32>() == d {
                out.add_term(t.clone(), c.clone());
            }
        }
        out
    }

    /// For arity 2: the part with slot degrees exactly (p, q).
    pub fn bigraded_piece(&self, p: u32, q: u32) -> Elem {
        assert_eq!(self.arity, 2);
        let mut out = Elem::zero(&self.ctx, 2);
        for (t, c) in &self.terms {
            if mono_degree(&t[0]) == p && mono_degree(&t[1]) == q {
                out.add_term(t.clone(), c.clone());
            }
        }
        out
    }
}

/// All ways to split a monomial as left ⊗ right with the multinomial weight
/// of the left part.
pub(crate) fn split_mono(m: &Mono) -> Vec<(Mono, num::BigInt)> {
    let mut out: Vec<(Mono, num::BigInt)> = vec![(vec![0; m.len()], num::BigInt::one())];
    for (i, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for (left, w) in &out {
            for a in 0..=e {
                let mut l = left.clone();
                l[i] = a;
                next.push((l, w * binomial(e as u64, a as u64)));
            }
        }
        out = next;
    }
    out
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.agrees_with(&other.ctx) && self.arity == other.arity && self.terms == other.terms
    }
}

impl Eq for Elem {}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.ctx.lie.names();
        let mut first = true;
        for (t, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono_str: Vec<String> = t
                .iter()
                .map(|m| {
                    let parts: Vec<String> = m
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| {
                            if e == 1 {
                                names[i].clone()
                            } else {
                                format!("{}^{}", names[i], e)
                            }
                        })
                        .collect();
                    if parts.is_empty() { "1".to_string() } else { parts.join(" ") }
                })
                .collect();
            let body = mono_str.join(" ⊗ ");
            let cs = c.to_string();
            if cs == "1" {
                write!(f, "{body}")?;
            } else if cs == "-1" {
                write!(f, "-{body}")?;
            } else if c.coeffs().iter().filter(|v| !v.is_zero()).count() == 1 && !cs.contains(' ') {
                write!(f, "{cs} {body}")?;
            } else {
                write!(f, "({cs}) {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;
    use crate::scalars::{rat, rat_int};

    fn hctx() -> Arc<Ctx> {
        Ctx::new(lie::heisenberg(1), 4)
    }

    fn sl2ctx() -> Arc<Ctx> {
        Ctx::new(lie::sl2(), 4)
    }

    #[test]
    fn heisenberg_straightening() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let c = Elem::generator(&ctx, 2);
        // f e = e f - c
        let fe = f.mul(&e);
        assert_eq!(fe, e.mul(&f).sub(&c));
        // c is central
        assert!(c.commutator(&e).is_zero());
        assert!(c.commutator(&f).is_zero());
    }

    #[test]
    fn sl2_straightening_matches_hand_computation() {
        let ctx = sl2ctx();
        let e = Elem::generator(&ctx, 0);
        let h = Elem::generator(&ctx, 1);
        let f = Elem::generator(&ctx, 2);
        // f^2 e = e f^2 - 2 h f - 2 f
        let lhs = f.mul(&f).mul(&e);
        let rhs = e
            .mul(&f)
            .mul(&f)
            .sub(&h.mul(&f).scale(&rat_int(2)))
            .sub(&f.scale(&rat_int(2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative() {
        let ctx = sl2ctx();
        let e = Elem::generator(&ctx, 0);
        let h = Elem::generator(&ctx, 1);
        let f = Elem::generator(&ctx, 2);
        let a = e.add(&f.scale(&rat(1, 2)));
        let b = h.mul(&f).add(&Elem::unit(&ctx, 1));
        let c = f.mul(&e).sub(&h.scale(&rat_int(3)));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn coproduct_is_an_algebra_map() {
        let ctx = sl2ctx();
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let a = Elem::generator(&ctx, i);
            let b = Elem::generator(&ctx, j);
            let ab = b.mul(&a).mul(&b);
            assert_eq!(
                ab.coproduct_at(0),
                b.coproduct_at(0).mul(&a.coproduct_at(0)).mul(&b.coproduct_at(0))
            );
        }
    }

    #[test]
    fn coproduct_is_coassociative_and_counital() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let x = e.mul(&e).mul(&f).add(&f.scale(&rat(2, 3)));
        let d = x.coproduct_at(0);
        assert_eq!(d.coproduct_at(0), d.coproduct_at(1));
        assert_eq!(d.counit_at(0), x);
        assert_eq!(d.counit_at(1), x);
    }

    #[test]
    fn coproduct_preserves_degree_with_multinomial_weights() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let e3 = e.pow(3);
        let d = e3.coproduct_at(0);
        // Δ(e^3) = Σ C(3,k) e^k ⊗ e^{3-k}
        let mut expected = Elem::zero(&ctx, 2);
        for k in 0..=3u32 {
            let mut l = ctx.empty_mono();
            l[0] = k;
            let mut r = ctx.empty_mono();
            r[0] = 3 - k;
            expected.add_term(
                vec![l, r],
                HSeries::constant(4, Rational::from_integer(binomial(3, k as u64))),
            );
        }
        assert_eq!(d, expected);
        assert_eq!(d.max_degree(), 3);
        assert_eq!(d.graded_piece(3), d);
    }

    #[test]
    fn antipode_is_a_convolution_inverse() {
        // μ (S ⊗ I) Δ = η ε on products of generators, checked in sl2 where
        // straightening corrections are nontrivial.
        let ctx = sl2ctx();
        let e = Elem::generator(&ctx, 0);
        let h = Elem::generator(&ctx, 1);
        let f = Elem::generator(&ctx, 2);
        for x in [f.mul(&e), f.mul(&f).mul(&e), h.mul(&f).mul(&e), e.add(&Elem::unit(&ctx, 1))] {
            let d = x.coproduct_at(0).antipode_at(0);
            // multiply the two slots together: embed as arity-1 via product
            let mut prod = Elem::zero(&ctx, 1);
            for (t, c) in d.terms() {
                for (mu, r) in ctx.mono_product(&t[0], &t[1]).iter() {
                    prod.add_term(vec![mu.clone()], c.scale(r));
                }
            }
            assert_eq!(prod, Elem::scalar(&ctx, 1, x.counit()));
        }
    }

    #[test]
    fn exp_log_and_inverse_round_trip() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let a = e.mul(&f).shift_h(1).add(&f.scale(&rat(1, 3)).shift_h(2));
        let u = a.exp().unwrap();
        assert_eq!(u.log().unwrap(), a);
        assert!(u.mul(&u.inverse().unwrap()).is_unit_elem());
        assert!(u.inverse().unwrap().mul(&u).is_unit_elem());
        let bad = e.exp();
        assert!(bad.is_err());
    }

    #[test]
    fn invariance_of_symmetric_tensors() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let c = Elem::generator(&ctx, 2);
        // e ⊗ f - f ⊗ e + c-terms is the standard invariant two-tensor shape;
        // here c ⊗ c is invariant (central), e ⊗ f alone is not.
        assert!(c.tensor(&c).is_invariant());
        assert!(!e.tensor(&f).is_invariant());
        let skew = e.tensor(&c).sub(&c.tensor(&e));
        assert!(skew.is_invariant());
    }

    #[test]
    fn permute_and_embed_compose() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let t = e.tensor(&f);
        assert_eq!(t.permute(&[1, 0]), f.tensor(&e));
        let wide = t.embed(3, &[0, 2]);
        assert_eq!(wide, e.tensor(&Elem::unit(&ctx, 1)).tensor(&f));
        assert_eq!(t.permute(&[1, 0]).permute(&[1, 0]), t);
    }

    #[test]
    fn apply_images_is_an_algebra_map() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let c = Elem::generator(&ctx, 2);
        // e -> e + h f, f -> f, c -> c (a valid deformation of identity)
        let images = vec![e.add(&f.shift_h(1)), f.clone(), c.clone()];
        let x = e.mul(&f);
        let y = f.mul(&e);
        let fx = x.apply_at(0, &images);
        let fy = y.apply_at(0, &images);
        // images of products are products of images
        assert_eq!(fx, images[0].mul(&images[1]));
        assert_eq!(fy, images[1].mul(&images[0]));
    }

    #[test]
    fn alt2_extracts_the_skew_part() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let sym = e.tensor(&f).add(&f.tensor(&e));
        let skew = e.tensor(&f).sub(&f.tensor(&e));
        assert!(sym.alt2().is_zero());
        assert_eq!(skew.alt2(), skew);
        assert_eq!(skew.alternate(), skew);
    }

    #[test]
    fn display_is_readable() {
        let ctx = hctx();
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let x = e.mul(&e).mul(&f).scale(&rat(1, 2)).shift_h(1);
        assert_eq!(x.to_string(), "(1/2 h) e1^2 f1");
        assert_eq!(e.tensor(&f).to_string(), "e1 ⊗ f1");
        assert_eq!(Elem::zero(&ctx, 1).to_string(), "0");
    }
}
