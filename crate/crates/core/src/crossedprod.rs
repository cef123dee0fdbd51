//! Crossed products of the enveloping algebra with a lattice of invariant
//! skew two-tensors. Each lattice point X carries the twist F_X = exp(-Xh);
//! the failure of X ↦ F_X to be additive is measured by the central scalars
//! θ(X,Y) = exp(-a(X,Y)h²/2) built from the central pairing of supports, and
//! these satisfy the group 2-cocycle identity. The resulting algebra has
//! group-like-up-to-twist generators e_X with Δ(e_X) = (e_X⊗e_X)F_X.
//!
//! A second, infinitesimal model adjoins logarithms l_X of the e_X: curved
//! primitives with Δ(l_X) = l_X⊗1 + 1⊗l_X + C_X and central commutators
//! [l_X, l_Y] fixed by the curvature commutators. Both models are verified
//! by direct computation.

use crate::cochain::{is_cocycle, solve_coboundary};
use crate::error::{Error, Result};
use crate::geom;
use crate::scalars::{rat, HSeries, Rational};
use crate::uea::{Ctx, Elem, Mono};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A finite-rank lattice of invariant skew two-tensors.
#[derive(Debug)]
pub struct Lattice {
    ctx: Arc<Ctx>,
    gens: Vec<Elem>,
}

impl Lattice {
    /// Validates that every generator is an invariant skew two-tensor whose
    /// support carries the central pairing.
    pub fn new(ctx: &Arc<Ctx>, gens: Vec<Elem>) -> Result<Arc<Lattice>> {
        for (i, g) in gens.iter().enumerate() {
            geom::classify(g).map_err(|e| {
                Error::validation(format!("lattice generator {}: {}", i + 1, e))
            })?;
        }
        Ok(Arc::new(Lattice { ctx: ctx.clone(), gens }))
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    /// The skew tensor at a lattice point: X_m = Σ mᵢ Xᵢ.
    pub fn x_of(&self, m: &[i64]) -> Result<Elem> {
        if m.len() != self.gens.len() {
            return Err(Error::config("lattice point has the wrong rank"));
        }
        let mut acc = Elem::zero(&self.ctx, 2);
        for (c, g) in m.iter().zip(&self.gens) {
            if *c != 0 {
                acc = acc.add(&g.scale(&rat(*c, 1)));
            }
        }
        Ok(acc)
    }

    /// The twist attached to a lattice point: F_m = exp(-X_m h).
    pub fn f_of(&self, m: &[i64]) -> Result<Elem> {
        self.x_of(m)?.scale(&rat(-1, 1)).shift_h(1).exp()
    }

    /// The central pairing a(X_m, X_n) with a⊗1 + 1⊗a - Δa = [X_m, X_n].
    pub fn pairing(&self, m: &[i64], n: &[i64]) -> Result<Elem> {
        let x = self.x_of(m)?;
        let y = self.x_of(n)?;
        if x.is_zero() || y.is_zero() {
            return Ok(Elem::zero(&self.ctx, 1));
        }
        Ok(geom::three_vector(&x, &y)?.a)
    }

    /// The central scalar θ(m,n) = exp(-a(X_m, X_n) h²/2).
    pub fn theta(&self, m: &[i64], n: &[i64]) -> Result<Elem> {
        self.pairing(m, n)?.scale(&rat(-1, 2)).shift_h(2).exp()
    }

    /// Verifies, over all pairs and triples of the given points, the group
    /// 2-cocycle identity θ(p,q)θ(p+q,r) = θ(q,r)θ(p,q+r) and the exchange
    /// relation F_q F_p Δθ(p,q) = (θ(p,q)⊗θ(p,q)) F_{p+q}.
    pub fn verify_action(&self, points: &[Vec<i64>]) -> Result<()> {
        let add =
            |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        for p in points {
            for q in points {
                let theta = self.theta(p, q)?;
                let lhs = self
                    .f_of(q)?
                    .mul(&self.f_of(p)?)
                    .mul(&theta.coproduct_at(0));
                let rhs = theta.tensor(&theta).mul(&self.f_of(&add(p, q))?);
                if lhs != rhs {
                    return Err(Error::validation(format!(
                        "exchange relation fails at {:?}, {:?}",
                        p, q
                    )));
                }
            }
        }
        for p in points {
            for q in points {
                for r in points {
                    let lhs = self.theta(p, q)?.mul(&self.theta(&add(p, q), r)?);
                    let rhs = self.theta(q, r)?.mul(&self.theta(p, &add(q, r))?);
                    if lhs != rhs {
                        return Err(Error::validation(format!(
                            "cocycle identity fails at {:?}, {:?}, {:?}",
                            p, q, r
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// An element of the crossed product: a sum of tensors u·e_m with u in the
/// enveloping algebra and m a lattice point per slot.
#[derive(Clone, Debug)]
pub struct CrossedElem {
    lat: Arc<Lattice>,
    arity: usize,
    terms: BTreeMap<Vec<Vec<i64>>, Elem>,
}

impl PartialEq for CrossedElem {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.terms == other.terms
    }
}

impl CrossedElem {
    pub fn zero(lat: &Arc<Lattice>, arity: usize) -> Self {
        CrossedElem {
            lat: lat.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(lat: &Arc<Lattice>, arity: usize) -> Self {
        Self::from_elem(lat, &Elem::unit(lat.ctx(), arity))
    }

    /// An element of the plain enveloping part (all lattice keys zero).
    pub fn from_elem(lat: &Arc<Lattice>, u: &Elem) -> Self {
        let key = vec![vec![0i64; lat.rank()]; u.arity()];
        let mut terms = BTreeMap::new();
        if !u.is_zero() {
            terms.insert(key, u.clone());
        }
        CrossedElem {
            lat: lat.clone(),
            arity: u.arity(),
            terms,
        }
    }

    /// The group element e_m as a one-tensor.
    pub fn group_like(lat: &Arc<Lattice>, m: Vec<i64>) -> Result<Self> {
        if m.len() != lat.rank() {
            return Err(Error::config("lattice point has the wrong rank"));
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![m], Elem::unit(lat.ctx(), 1));
        Ok(CrossedElem {
            lat: lat.clone(),
            arity: 1,
            terms,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self == &Self::unit(&self.lat, self.arity)
    }

    fn insert(&mut self, key: Vec<Vec<i64>>, val: Elem) {
        let entry = self
            .terms
            .remove(&key)
            .unwrap_or_else(|| Elem::zero(self.lat.ctx(), self.arity));
        let sum = entry.add(&val);
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.lat, &other.lat) && self.arity == other.arity);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.lat, &other.lat) && self.arity == other.arity);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert(k.clone(), v.scale(&rat(-1, 1)));
        }
        out
    }

    /// Product: lattice keys add slotwise, and each slot contributes the
    /// central scalar θ(m_s, n_s).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert!(Arc::ptr_eq(&self.lat, &other.lat) && self.arity == other.arity);
        let mut out = Self::zero(&self.lat, self.arity);
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                let mut val = v1.mul(v2);
                let mut key = Vec::with_capacity(self.arity);
                for s in 0..self.arity {
                    key.push(k1[s].iter().zip(&k2[s]).map(|(a, b)| a + b).collect());
                    let theta = self.lat.theta(&k1[s], &k2[s])?;
                    if !theta.is_unit_elem() {
                        val = val.mul(&theta.embed(self.arity, &[s]));
                    }
                }
                out.insert(key, val);
            }
        }
        Ok(out)
    }

    /// Coproduct in one slot: Δ(u e_m) = Δ(u)(e_m⊗e_m)F_m.
    pub fn coproduct_at(&self, pos: usize) -> Result<Self> {
        assert!(pos < self.arity);
        let mut out = Self::zero(&self.lat, self.arity + 1);
        for (k, v) in &self.terms {
            let mut key: Vec<Vec<i64>> = Vec::with_capacity(self.arity + 1);
            key.extend(k[..=pos].iter().cloned());
            key.extend(k[pos..].iter().cloned());
            let f = self.lat.f_of(&k[pos])?;
            let val = v
                .coproduct_at(pos)
                .mul(&f.embed(self.arity + 1, &[pos, pos + 1]));
            out.insert(key, val);
        }
        Ok(out)
    }

    /// Counit in one slot: ε(e_m) = 1.
    pub fn counit_at(&self, pos: usize) -> Self {
        assert!(pos < self.arity);
        let mut out = Self::zero(&self.lat, self.arity - 1);
        for (k, v) in &self.terms {
            let mut key = k.clone();
            key.remove(pos);
            out.insert(key, v.counit_at(pos));
        }
        out
    }
}

/// The infinitesimal extension: generators l_i with
/// Δ(l_i) = l_i⊗1 + 1⊗l_i + C_i and central commutators [l_i, l_j] solved
/// from the curvature commutators.
#[derive(Debug)]
pub struct Extension {
    ctx: Arc<Ctx>,
    curvatures: Vec<Elem>,
    commutators: Vec<Vec<Elem>>,
}

impl Extension {
    /// Builds the extension from counital 2-cocycle curvatures. The
    /// commutator [l_i, l_j] is the canonical solution κ of
    /// κ⊗1 + 1⊗κ - Δκ = -[C_i, C_j]; it must exist and be central.
    pub fn new(ctx: &Arc<Ctx>, curvatures: Vec<Elem>) -> Result<Arc<Extension>> {
        let k = curvatures.len();
        for (i, c) in curvatures.iter().enumerate() {
            if c.arity() != 2 {
                return Err(Error::config("curvatures must be two-tensors"));
            }
            if !c.counit_at(0).is_zero() || !c.counit_at(1).is_zero() {
                return Err(Error::validation(format!(
                    "curvature {} is not counital",
                    i + 1
                )));
            }
            if !is_cocycle(c) {
                return Err(Error::validation(format!(
                    "curvature {} is not a 2-cocycle",
                    i + 1
                )));
            }
        }
        let zero = Elem::zero(ctx, 1);
        let mut commutators = vec![vec![zero; k]; k];
        for i in 0..k {
            for j in (i + 1)..k {
                let w = curvatures[i].commutator(&curvatures[j]).scale(&rat(-1, 1));
                let split = solve_coboundary(&w, false).map_err(|e| {
                    Error::validation(format!(
                        "curvatures {} and {} do not close into an extension: {}",
                        i + 1,
                        j + 1,
                        e
                    ))
                })?;
                if !split.skew.is_zero() {
                    return Err(Error::validation(format!(
                        "curvature commutator {} , {} has a skew residue",
                        i + 1,
                        j + 1
                    )));
                }
                if !split.witness.is_invariant() {
                    return Err(Error::validation(format!(
                        "commutator of generators {} and {} is not central",
                        i + 1,
                        j + 1
                    )));
                }
                commutators[i][j] = split.witness.clone();
                commutators[j][i] = split.witness.scale(&rat(-1, 1));
            }
        }
        Ok(Arc::new(Extension {
            ctx: ctx.clone(),
            curvatures,
            commutators,
        }))
    }

    /// The extension attached to a lattice: curvatures C_i = -X_i h, so that
    /// exponentials of the l_i would reproduce the group elements e_m.
    pub fn from_lattice(lat: &Lattice) -> Result<Arc<Extension>> {
        Self::new(
            lat.ctx(),
            lat.gens()
                .iter()
                .map(|g| g.scale(&rat(-1, 1)).shift_h(1))
                .collect(),
        )
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.curvatures.len()
    }

    pub fn curvature(&self, i: usize) -> &Elem {
        &self.curvatures[i]
    }

    /// [l_i, l_j], a central element.
    pub fn commutator(&self, i: usize, j: usize) -> &Elem {
        &self.commutators[i][j]
    }
}

/// Exponent vector over the extension generators.
pub type LMono = Vec<u32>;

/// A tensor over the extended algebra: each slot holds an enveloping
/// monomial together with a straightened word in the l-generators.
#[derive(Clone, Debug)]
pub struct ExtElem {
    ext: Arc<Extension>,
    arity: usize,
    terms: BTreeMap<Vec<(Mono, LMono)>, HSeries>,
}

impl PartialEq for ExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.terms == other.terms
    }
}

fn lword_of(lm: &LMono) -> Vec<usize> {
    let mut w = Vec::new();
    for (i, &e) in lm.iter().enumerate() {
        for _ in 0..e {
            w.push(i);
        }
    }
    w
}

fn lmono_of(word: &[usize], rank: usize) -> LMono {
    let mut m = vec![0u32; rank];
    for &i in word {
        m[i] += 1;
    }
    m
}

/// Straightens a word in the l-generators into ascending order; each
/// adjacent transposition of a descent contributes the central commutator.
fn straighten_lword(ext: &Extension, word: &[usize]) -> Vec<(LMono, Elem)> {
    let descent = (0..word.len().saturating_sub(1)).find(|&p| word[p] > word[p + 1]);
    match descent {
        None => vec![(lmono_of(word, ext.rank()), Elem::unit(ext.ctx(), 1))],
        Some(p) => {
            let mut swapped = word.to_vec();
            swapped.swap(p, p + 1);
            let mut out = straighten_lword(ext, &swapped);
            let kappa = ext.commutator(word[p], word[p + 1]);
            if !kappa.is_zero() {
                let mut shorter = word.to_vec();
                shorter.drain(p..p + 2);
                for (lm, coef) in straighten_lword(ext, &shorter) {
                    out.push((lm, coef.mul(kappa)));
                }
            }
            out
        }
    }
}

impl ExtElem {
    pub fn zero(ext: &Arc<Extension>, arity: usize) -> Self {
        ExtElem {
            ext: ext.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(ext: &Arc<Extension>, arity: usize) -> Self {
        Self::from_elem(ext, &Elem::unit(ext.ctx(), arity))
    }

    /// Embeds a plain tensor (no l-letters).
    pub fn from_elem(ext: &Arc<Extension>, u: &Elem) -> Self {
        let rank = ext.rank();
        let mut out = Self::zero(ext, u.arity());
        for (t, c) in u.terms() {
            let key: Vec<(Mono, LMono)> =
                t.iter().map(|m| (m.clone(), vec![0u32; rank])).collect();
            out.insert(key, c.clone());
        }
        out
    }

    /// The generator l_i as a one-tensor.
    pub fn l_gen(ext: &Arc<Extension>, i: usize) -> Self {
        assert!(i < ext.rank());
        let mut lm = vec![0u32; ext.rank()];
        lm[i] = 1;
        let mut out = Self::zero(ext, 1);
        out.insert(
            vec![(vec![0u32; ext.ctx().dim()], lm)],
            HSeries::one(ext.ctx().h_order()),
        );
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, key: Vec<(Mono, LMono)>, c: HSeries) {
        let entry = self
            .terms
            .remove(&key)
            .unwrap_or_else(|| HSeries::zero(self.ext.ctx().h_order()));
        let sum = &entry + &c;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.ext, &other.ext) && self.arity == other.arity);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.ext, &other.ext) && self.arity == other.arity);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.scale(&rat(-1, 1)));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExtElem {
            ext: self.ext.clone(),
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, s)| (k.clone(), s.scale(c)))
                .collect(),
        }
    }

    /// Per-slot product: the enveloping parts multiply through the usual
    /// straightening, the l-words straighten with central corrections, and
    /// the two parts commute with each other.
    fn slot_product(&self, a: &(Mono, LMono), b: &(Mono, LMono)) -> Vec<(Mono, LMono, HSeries)> {
        let ctx = self.ext.ctx();
        let one = HSeries::one(ctx.h_order());
        let ua = Elem::from_terms(ctx, 1, [(vec![a.0.clone()], one.clone())]);
        let ub = Elem::from_terms(ctx, 1, [(vec![b.0.clone()], one)]);
        let base = ua.mul(&ub);
        let mut word = lword_of(&a.1);
        word.extend(lword_of(&b.1));
        let mut out = Vec::new();
        for (lm, coef) in straighten_lword(&self.ext, &word) {
            let u = base.mul(&coef);
            for (t, c) in u.terms() {
                out.push((t[0].clone(), lm.clone(), c.clone()));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.ext, &other.ext) && self.arity == other.arity);
        let mut out = Self::zero(&self.ext, self.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                // cartesian product of the per-slot expansions
                let mut partial: Vec<(Vec<(Mono, LMono)>, HSeries)> =
                    vec![(Vec::with_capacity(self.arity), c1 * c2)];
                for s in 0..self.arity {
                    let expansion = self.slot_product(&k1[s], &k2[s]);
                    let mut next = Vec::with_capacity(partial.len() * expansion.len());
                    for (key, coef) in &partial {
                        for (m, lm, c) in &expansion {
                            let mut key2 = key.clone();
                            key2.push((m.clone(), lm.clone()));
                            next.push((key2, coef * c));
                        }
                    }
                    partial = next;
                }
                for (key, coef) in partial {
                    out.insert(key, coef);
                }
            }
        }
        out
    }

    /// Δ(l_i) = l_i⊗1 + 1⊗l_i + C_i as a two-tensor.
    fn coproduct_of_gen(ext: &Arc<Extension>, i: usize) -> ExtElem {
        let l = Self::l_gen(ext, i);
        let unit = Self::unit(ext, 1);
        l.tensor(&unit)
            .add(&unit.tensor(&l))
            .add(&Self::from_elem(ext, ext.curvature(i)))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.ext, &other.ext));
        let mut out = Self::zero(&self.ext, self.arity + other.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut key = k1.clone();
                key.extend(k2.iter().cloned());
                out.insert(key, c1 * c2);
            }
        }
        out
    }

    /// Coproduct in one slot; on l-words it is the ordered product of the
    /// generator coproducts, which the commutation relations make
    /// well-defined on straightened words.
    pub fn coproduct_at(&self, pos: usize) -> Self {
        assert!(pos < self.arity);
        let ctx = self.ext.ctx();
        let mut out = Self::zero(&self.ext, self.arity + 1);
        for (k, c) in &self.terms {
            let (mono, lm) = &k[pos];
            let pure = Elem::from_terms(
                ctx,
                1,
                [(vec![mono.clone()], HSeries::one(ctx.h_order()))],
            )
            .coproduct_at(0);
            let mut d = Self::from_elem(&self.ext, &pure);
            for i in lword_of(lm) {
                d = d.mul(&Self::coproduct_of_gen(&self.ext, i));
            }
            for (dk, dc) in &d.terms {
                let mut key: Vec<(Mono, LMono)> = Vec::with_capacity(self.arity + 1);
                key.extend(k[..pos].iter().cloned());
                key.extend(dk.iter().cloned());
                key.extend(k[pos + 1..].iter().cloned());
                out.insert(key, c * dc);
            }
        }
        out
    }

    /// Counit in one slot: ε kills every generator and every l-letter.
    pub fn counit_at(&self, pos: usize) -> Self {
        assert!(pos < self.arity);
        let mut out = Self::zero(&self.ext, self.arity - 1);
        for (k, c) in &self.terms {
            let (mono, lm) = &k[pos];
            if mono.iter().any(|&e| e != 0) || lm.iter().any(|&e| e != 0) {
                continue;
            }
            let mut key = k.clone();
            key.remove(pos);
            out.insert(key, c.clone());
        }
        out
    }
}

/// Verifies the defining relations of the extension by direct computation:
/// coassociativity and counit axioms on each generator, the commutator
/// relation [Δl_i, Δl_j] = Δ([l_i, l_j]), and multiplicativity of the
/// coproduct on quadratic words.
pub fn verify_extension(ext: &Arc<Extension>) -> Result<()> {
    for i in 0..ext.rank() {
        let l = ExtElem::l_gen(ext, i);
        let d = l.coproduct_at(0);
        if d.coproduct_at(0) != d.coproduct_at(1) {
            return Err(Error::validation(format!(
                "coproduct of generator {} is not coassociative",
                i + 1
            )));
        }
        if d.counit_at(0) != l || d.counit_at(1) != l {
            return Err(Error::validation(format!(
                "counit axiom fails on generator {}",
                i + 1
            )));
        }
    }
    for i in 0..ext.rank() {
        for j in 0..ext.rank() {
            let li = ExtElem::l_gen(ext, i);
            let lj = ExtElem::l_gen(ext, j);
            let di = li.coproduct_at(0);
            let dj = lj.coproduct_at(0);
            let bracket = di.mul(&dj).sub(&dj.mul(&di));
            let kappa = ExtElem::from_elem(ext, &ext.commutator(i, j).coproduct_at(0));
            if bracket != kappa {
                return Err(Error::validation(format!(
                    "commutator relation fails on generators {} and {}",
                    i + 1,
                    j + 1
                )));
            }
            let prod = li.mul(&lj);
            if prod.coproduct_at(0) != di.mul(&dj) {
                return Err(Error::validation(format!(
                    "coproduct is not multiplicative on generators {} and {}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;

    fn heisenberg_lattice() -> Arc<Lattice> {
        let ctx = Ctx::new(lie::heisenberg(1), 4);
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        let c = Elem::generator(&ctx, 2);
        let x = e.tensor(&c).sub(&c.tensor(&e));
        let y = f.tensor(&c).sub(&c.tensor(&f));
        Lattice::new(&ctx, vec![x, y]).unwrap()
    }

    fn cube(ctx: &Arc<Ctx>) -> Elem {
        Elem::generator(ctx, 2).pow(3)
    }

    #[test]
    fn theta_of_the_standard_pair_is_frozen() {
        let lat = heisenberg_lattice();
        let ctx = lat.ctx().clone();
        // a((1,0),(0,1)) = -c³/3, so θ = exp(c³h²/6)
        let a = lat.pairing(&[1, 0], &[0, 1]).unwrap();
        assert_eq!(a, cube(&ctx).scale(&rat(-1, 3)));
        let theta = lat.theta(&[1, 0], &[0, 1]).unwrap();
        let expected = cube(&ctx).scale(&rat(1, 6)).shift_h(2).exp().unwrap();
        assert_eq!(theta, expected);
        // θ is antisymmetric: θ(n,m) = θ(m,n)⁻¹
        let back = lat.theta(&[0, 1], &[1, 0]).unwrap();
        assert!(theta.mul(&back).is_unit_elem());
        // zero points contribute nothing
        assert!(lat.theta(&[1, 0], &[0, 0]).unwrap().is_unit_elem());
        assert!(lat.theta(&[2, 3], &[2, 3]).unwrap().is_unit_elem());
    }

    #[test]
    fn lattice_relations_hold_on_sample_points() {
        let lat = heisenberg_lattice();
        let points: Vec<Vec<i64>> =
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![-1, 2], vec![1, 1]];
        lat.verify_action(&points).unwrap();
    }

    #[test]
    fn crossed_product_is_associative_and_unital() {
        let lat = heisenberg_lattice();
        let ctx = lat.ctx().clone();
        let ep = CrossedElem::group_like(&lat, vec![1, 0]).unwrap();
        let eq = CrossedElem::group_like(&lat, vec![0, 1]).unwrap();
        let er = CrossedElem::group_like(&lat, vec![1, -1]).unwrap();
        let u = CrossedElem::from_elem(&lat, &Elem::generator(&ctx, 0));
        let one = CrossedElem::unit(&lat, 1);
        for a in [&ep, &eq, &er, &u] {
            assert_eq!(a.mul(&one).unwrap(), *a);
            assert_eq!(one.mul(a).unwrap(), *a);
            for b in [&ep, &eq, &er, &u] {
                for c in [&ep, &eq, &er, &u] {
                    let left = a.mul(b).unwrap().mul(c).unwrap();
                    let right = a.mul(&b.mul(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
        // the product of opposite group elements is the central scalar
        let prod = ep.mul(&eq).unwrap();
        let theta = lat.theta(&[1, 0], &[0, 1]).unwrap();
        let mut expected = CrossedElem::group_like(&lat, vec![1, 1]).unwrap();
        expected = CrossedElem::from_elem(&lat, &theta).mul(&expected).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn crossed_coproduct_is_multiplicative_and_coassociative() {
        let lat = heisenberg_lattice();
        let ctx = lat.ctx().clone();
        let ep = CrossedElem::group_like(&lat, vec![1, 0]).unwrap();
        let eq = CrossedElem::group_like(&lat, vec![0, 1]).unwrap();
        let u = CrossedElem::from_elem(&lat, &Elem::generator(&ctx, 1));
        for a in [&ep, &eq, &u] {
            // coassociativity
            let d = a.coproduct_at(0).unwrap();
            assert_eq!(d.coproduct_at(0).unwrap(), d.coproduct_at(1).unwrap());
            // counit axioms
            assert_eq!(d.counit_at(0), *a);
            assert_eq!(d.counit_at(1), *a);
            for b in [&ep, &eq, &u] {
                let lhs = a.mul(b).unwrap().coproduct_at(0).unwrap();
                let rhs = a
                    .coproduct_at(0)
                    .unwrap()
                    .mul(&b.coproduct_at(0).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn extension_commutators_are_frozen() {
        let lat = heisenberg_lattice();
        let ctx = lat.ctx().clone();
        let ext = Extension::from_lattice(&lat).unwrap();
        // [l₁, l₂] = c³h²/3, matching the symplectic pairing of supports
        let expected = cube(&ctx).scale(&rat(1, 3)).shift_h(2);
        assert_eq!(ext.commutator(0, 1), &expected);
        assert_eq!(ext.commutator(1, 0), &expected.scale(&rat(-1, 1)));
        assert!(ext.commutator(0, 0).is_zero());
        verify_extension(&ext).unwrap();
    }

    #[test]
    fn l_words_straighten_with_central_corrections() {
        let lat = heisenberg_lattice();
        let ext = Extension::from_lattice(&lat).unwrap();
        let l0 = ExtElem::l_gen(&ext, 0);
        let l1 = ExtElem::l_gen(&ext, 1);
        let kappa = ExtElem::from_elem(&ext, ext.commutator(1, 0));
        // l₁ l₀ = l₀ l₁ + [l₁, l₀]
        assert_eq!(l1.mul(&l0), l0.mul(&l1).add(&kappa));
        // squares commute with nothing to correct
        assert_eq!(l0.mul(&l0).mul(&l1), l0.mul(&l0.mul(&l1)));
        // associativity across a correction
        let w1 = l1.mul(&l0).mul(&l0);
        let w2 = l1.mul(&l0.mul(&l0));
        assert_eq!(w1, w2);
    }

    #[test]
    fn degenerate_curvatures_give_a_plain_extension() {
        // an abelian algebra has zero pairing: all commutators vanish
        let ctx = Ctx::new(lie::abelian(3), 4);
        let g0 = Elem::generator(&ctx, 0);
        let g1 = Elem::generator(&ctx, 1);
        let x = g0.tensor(&g1).sub(&g1.tensor(&g0));
        let lat = Lattice::new(&ctx, vec![x]).unwrap();
        let ext = Extension::from_lattice(&lat).unwrap();
        assert!(ext.commutator(0, 0).is_zero());
        verify_extension(&ext).unwrap();
        lat.verify_action(&[vec![0], vec![1], vec![-2]]).unwrap();
    }

    #[test]
    fn invalid_lattices_and_curvatures_are_rejected() {
        let ctx = Ctx::new(lie::heisenberg(1), 4);
        let e = Elem::generator(&ctx, 0);
        let f = Elem::generator(&ctx, 1);
        // e∧f is not invariant
        let bad = e.tensor(&f).sub(&f.tensor(&e));
        assert!(Lattice::new(&ctx, vec![bad]).is_err());
        // a non-counital curvature is rejected
        let unit2 = Elem::unit(&ctx, 2);
        assert!(Extension::new(&ctx, vec![unit2]).is_err());
    }
}
