//! Polynomials over `F_{q²}`: tilde conjugation, factorization, and the
//! SCIM / M̃-power / M-power classification.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{self, FieldDesc, FieldElem, PrimePower};

/// Dense polynomial, constant term first, with no trailing zeros.
///
/// Polynomials handed out by classification and factorization are monic;
/// intermediate results of the Euclidean machinery need not be.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElem::ONE
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElem::ONE
    }
}

/// Orders by degree, then lexicographically on coefficient indices from the
/// constant term upward.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyClass {
    /// Irreducible, monic, `f = f̃`.
    Scim,
    /// Irreducible with `f(0) ≠ 0` and `f ≠ f̃`.
    PairMember,
    /// The polynomial `t`.
    LinearT,
    Reducible,
}

/// The ring `F_{q²}[t]`.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Arc<FieldDesc>,
}

impl PolyRing {
    pub fn new(q: PrimePower) -> Result<Self> {
        let field = gf::field_for(q, 1, gf::DEFAULT_FIELD_BOUND)?;
        Ok(PolyRing { field })
    }

    pub fn from_q(q: u64) -> Result<Self> {
        Self::new(PrimePower::from_q(q)?)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldDesc> {
        Arc::clone(&self.field)
    }

    pub fn base(&self) -> PrimePower {
        self.field.base()
    }

    /// `q²`, the size of the coefficient field.
    pub fn field_size(&self) -> u64 {
        self.field.size()
    }

    pub fn one(&self) -> Poly {
        Poly::from_coeffs(vec![FieldElem::ONE])
    }

    pub fn x(&self) -> Poly {
        Poly::from_coeffs(vec![FieldElem::ZERO, FieldElem::ONE])
    }

    pub fn constant(&self, c: FieldElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `t - c`.
    pub fn linear(&self, c: FieldElem) -> Poly {
        Poly::from_coeffs(vec![self.field.neg(c), FieldElem::ONE])
    }

    /// Builds a monic polynomial from its lower coefficients.
    pub fn monic_from_lower(&self, lower: &[FieldElem]) -> Poly {
        let mut c = lower.to_vec();
        c.push(FieldElem::ONE);
        Poly::from_coeffs(c)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly, c: FieldElem) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, a: &Poly, e: usize) -> Poly {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match self.field.inv(a.leading()) {
            Some(inv) => self.scale(a, inv),
            None => Poly::zero(),
        }
    }

    /// Quotient and remainder; panics if `b` is zero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let db = b.degree();
        let lead_inv = f.inv(b.leading()).expect("nonzero leading coefficient");
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + db], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, bj));
            }
        }
        rem.truncate(db);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).1
    }

    /// Division that must be exact; used after a gcd.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Poly {
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut result = self.rem(&self.one(), m);
        let mut base = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mulmod(&result, &base, m);
            }
            base = self.mulmod(&base, &base, m);
            e >>= 1;
        }
        result
    }

    pub fn eval(&self, a: &Poly, x: FieldElem) -> FieldElem {
        let f = &self.field;
        a.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `f(x^M)`.
    pub fn compose_power(&self, a: &Poly, m: usize) -> Poly {
        if m == 0 {
            let s = a.coeffs.iter().fold(FieldElem::ZERO, |acc, &c| self.field.add(acc, c));
            return self.constant(s);
        }
        let mut out = vec![FieldElem::ZERO; a.degree() * m + 1];
        for (i, &c) in a.coeffs.iter().enumerate() {
            out[i * m] = c;
        }
        Poly::from_coeffs(out)
    }

    /// Coefficientwise conjugation `a ↦ a^q`.
    pub fn conj_poly(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.field.conj(c)).collect())
    }

    /// `f̃(t) = conj(f(0))^{-1} t^d f̄(1/t)`.
    pub fn tilde(&self, a: &Poly) -> Result<Poly> {
        let c0 = a.coeff(0);
        if a.is_zero() || c0.is_zero() {
            return Err(Error::InvalidArgument(
                "tilde conjugate needs a nonzero constant term".into(),
            ));
        }
        let f = &self.field;
        let scale = f.inv(f.conj(c0)).expect("nonzero");
        let coeffs = a
            .coeffs
            .iter()
            .rev()
            .map(|&c| f.mul(f.conj(c), scale))
            .collect();
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Ben-Or test: no factor of degree `i ≤ n/2` divides `x^(Q^i) - x`.
    pub fn is_irreducible(&self, a: &Poly) -> bool {
        let n = a.degree();
        if a.is_zero() || n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = self.x();
        let qsize = self.field_size();
        let mut h = self.rem(&x, a);
        for _ in 0..n / 2 {
            h = self.powmod(&h, qsize, a);
            let g = self.gcd(a, &self.sub(&h, &x));
            if g.degree() > 0 {
                return false;
            }
        }
        true
    }

    fn pth_root(&self, a: &Poly) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let back = f.degree() as u64 - 1;
        Poly::from_coeffs(
            a.coeffs
                .iter()
                .step_by(p)
                .map(|&c| f.frobenius_pow(c, p as u64, back))
                .collect(),
        )
    }

    /// Squarefree decomposition of a monic polynomial: pairwise coprime
    /// squarefree parts with multiplicities.
    pub fn squarefree(&self, a: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        self.squarefree_into(&self.monic(a), 1, &mut out);
        out
    }

    fn squarefree_into(&self, a: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) {
        if a.degree() == 0 {
            return;
        }
        let p = self.field.characteristic() as usize;
        let da = self.derivative(a);
        if da.is_zero() {
            self.squarefree_into(&self.pth_root(a), scale * p, out);
            return;
        }
        let mut c = self.gcd(a, &da);
        let mut w = self.div_exact(a, &c);
        let mut i = 1;
        while w.degree() > 0 {
            let y = self.gcd(&w, &c);
            let z = self.div_exact(&w, &y);
            if z.degree() > 0 {
                out.push((z, i * scale));
            }
            i += 1;
            c = self.div_exact(&c, &y);
            w = y;
        }
        if c.degree() > 0 {
            self.squarefree_into(&self.pth_root(&c), scale * p, out);
        }
    }

    /// Distinct-degree splitting of a monic squarefree polynomial into
    /// products of irreducibles of a common degree.
    pub fn distinct_degree(&self, a: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let x = self.x();
        let qsize = self.field_size();
        let mut g = self.monic(a);
        let mut h = self.rem(&x, &g);
        let mut i = 0;
        while g.degree() >= 2 * (i + 1) {
            i += 1;
            h = self.powmod(&h, qsize, &g);
            let fac = self.gcd(&g, &self.sub(&h, &x));
            if fac.degree() > 0 {
                g = self.div_exact(&g, &fac);
                h = self.rem(&h, &g);
                out.push((fac, i));
            }
        }
        if g.degree() > 0 {
            let d = g.degree();
            out.push((g, d));
        }
        out
    }

    /// Splits a product of distinct irreducibles of degree `d`. Splitting
    /// polynomials are tried in a fixed enumeration order, so the outcome
    /// does not depend on any random source.
    pub fn equal_degree(&self, a: &Poly, d: usize) -> Vec<Poly> {
        let mut out = Vec::new();
        self.equal_degree_into(&self.monic(a), d, &mut out);
        out.sort();
        out
    }

    fn equal_degree_into(&self, a: &Poly, d: usize, out: &mut Vec<Poly>) {
        let n = a.degree();
        if n == d {
            out.push(a.clone());
            return;
        }
        let qsize = self.field_size() as u128;
        let mut counter = qsize;
        loop {
            let cand = self.poly_from_counter(counter, n);
            counter += 1;
            let b = self.split_map(&cand, a, d);
            let g = self.gcd(a, &b);
            if g.degree() > 0 && g.degree() < n {
                let h = self.div_exact(a, &g);
                self.equal_degree_into(&g, d, out);
                self.equal_degree_into(&h, d, out);
                return;
            }
        }
    }

    fn poly_from_counter(&self, mut counter: u128, max_len: usize) -> Poly {
        let qsize = self.field_size() as u128;
        let mut coeffs = Vec::with_capacity(max_len);
        while counter > 0 && coeffs.len() < max_len {
            coeffs.push(FieldElem::from_index((counter % qsize) as u32));
            counter /= qsize;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Odd characteristic: `a^((Q^d-1)/2) - 1`; characteristic 2: the
    /// absolute trace of `a` in `F_{Q^d}`. Both are taken mod `m`.
    fn split_map(&self, a: &Poly, m: &Poly, d: usize) -> Poly {
        let f = &self.field;
        let qsize = self.field_size();
        let a = self.rem(a, m);
        if f.characteristic() == 2 {
            let steps = f.degree() * d;
            let mut cur = a.clone();
            let mut acc = a;
            for _ in 1..steps {
                cur = self.mulmod(&cur, &cur, m);
                acc = self.add(&acc, &cur);
            }
            acc
        } else {
            // a^(1 + Q + ... + Q^(d-1)) lies in F_Q, then raise to (Q-1)/2
            let mut cur = a.clone();
            let mut norm = a;
            for _ in 1..d {
                cur = self.powmod(&cur, qsize, m);
                norm = self.mulmod(&norm, &cur, m);
            }
            let r = self.powmod(&norm, (qsize - 1) / 2, m);
            self.sub(&r, &self.one())
        }
    }

    /// Complete factorization of a monic polynomial of degree ≥ 1 into monic
    /// irreducibles with multiplicities, ordered by degree then coefficients.
    pub fn factor(&self, a: &Poly) -> Vec<(Poly, usize)> {
        let mut out: BTreeMap<Poly, usize> = BTreeMap::new();
        for (part, mult) in self.squarefree(a) {
            for (block, d) in self.distinct_degree(&part) {
                for g in self.equal_degree(&block, d) {
                    *out.entry(g).or_insert(0) += mult;
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn classify(&self, a: &Poly) -> PolyClass {
        let a = self.monic(a);
        if a.degree() == 0 {
            return PolyClass::Reducible;
        }
        if a.coeff(0).is_zero() {
            return if a.degree() == 1 {
                PolyClass::LinearT
            } else {
                PolyClass::Reducible
            };
        }
        if !self.is_irreducible(&a) {
            return PolyClass::Reducible;
        }
        match self.tilde(&a) {
            Ok(t) if t == a => PolyClass::Scim,
            _ => PolyClass::PairMember,
        }
    }

    /// SCIM `f` of degree `d` such that `f(x^M)` has a SCIM factor of degree `d`.
    pub fn is_mtilde_power(&self, a: &Poly, m: u64) -> Result<bool> {
        check_power_exponent(m)?;
        if self.classify(a) != PolyClass::Scim {
            return Err(Error::InvalidArgument(
                "M̃-power test needs a SCIM polynomial".into(),
            ));
        }
        let d = a.degree();
        let composed = self.compose_power(a, m as usize);
        Ok(self
            .factor(&composed)
            .iter()
            .any(|(g, _)| g.degree() == d && self.classify(g) == PolyClass::Scim))
    }

    /// Pair member `f` of degree `d` such that `f(x^M)` has an irreducible
    /// factor of degree `d`.
    pub fn is_m_power_pair(&self, a: &Poly, m: u64) -> Result<bool> {
        check_power_exponent(m)?;
        if self.classify(a) != PolyClass::PairMember {
            return Err(Error::InvalidArgument(
                "M-power pair test needs an irreducible non-self-conjugate polynomial".into(),
            ));
        }
        let d = a.degree();
        let composed = self.compose_power(a, m as usize);
        Ok(self.factor(&composed).iter().any(|(g, _)| g.degree() == d))
    }

    /// All monic polynomials of degree `d`, in counter order.
    pub fn monic_polys(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let qsize = self.field_size() as u128;
        let count = qsize.pow(d as u32);
        (0..count).map(move |mut n| {
            let mut lower = Vec::with_capacity(d);
            for _ in 0..d {
                lower.push(FieldElem::from_index((n % qsize) as u32));
                n /= qsize;
            }
            self.monic_from_lower(&lower)
        })
    }

    /// Monic polynomials of degree `d` with the given classification, found
    /// by exhaustive scan.
    pub fn polys_of_class(&self, d: usize, class: PolyClass) -> Vec<Poly> {
        self.monic_polys(d)
            .filter(|f| match class {
                // cheap filter before the irreducibility test
                PolyClass::Scim => {
                    !f.coeff(0).is_zero() && self.tilde(f).is_ok_and(|t| &t == f) && self.is_irreducible(f)
                }
                _ => self.classify(f) == class,
            })
            .collect()
    }

    pub fn irreducible_polys(&self, d: usize) -> Vec<Poly> {
        self.monic_polys(d).filter(|f| self.is_irreducible(f)).collect()
    }

    /// Multiplicative order of the roots of an irreducible `f` with
    /// `f(0) ≠ 0`, located in `F_{q^{2d}}`.
    pub fn root_order(&self, a: &Poly) -> Result<u64> {
        let roots = self.roots_in_splitting_field(a)?;
        let (ext, root) = roots;
        ext.order_of(root)
            .ok_or_else(|| Error::InvalidArgument("zero root has no multiplicative order".into()))
    }

    /// Least-index root of an irreducible `f` in `F_{q^{2 deg f}}`.
    pub fn roots_in_splitting_field(&self, a: &Poly) -> Result<(Arc<FieldDesc>, FieldElem)> {
        if !self.is_irreducible(a) {
            return Err(Error::InvalidArgument("polynomial is not irreducible".into()));
        }
        let ext = gf::field_for(self.base(), a.degree() as u32, gf::DEFAULT_FIELD_BOUND)?;
        let emb = gf::embed(&self.field, &ext)?;
        let lifted: Vec<FieldElem> = a.coeffs.iter().map(|&c| emb.apply(c)).collect();
        let root = ext
            .elements()
            .find(|&r| {
                lifted
                    .iter()
                    .rev()
                    .fold(FieldElem::ZERO, |acc, &c| ext.add(ext.mul(acc, r), c))
                    .is_zero()
            })
            .ok_or_else(|| Error::Inconsistency("irreducible polynomial without a root".into()))?;
        Ok((ext, root))
    }
}

fn check_power_exponent(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("power exponent M = {m} must be ≥ 2")));
    }
    Ok(())
}

/// Predicted factorization pattern of `f(x^m)` for an irreducible `f` of
/// degree `d` over `F_Q` whose roots have order `t`.
///
/// With `m = m₁m₂`, `gcd(m₁, t) = 1` and every prime of `m₂` dividing `t`,
/// each divisor `e | m₁` contributes `d·m₂·φ(e)/ord(e·m₂·t)` factors of
/// degree `ord(e·m₂·t)`, where `ord(s)` is the order of `Q` modulo `s`.
/// Entries are `(degree, count)`, one per `e` in increasing order.
pub fn butler_pattern(d: u64, t: u64, m: u64, qsize: u64) -> Result<Vec<(u64, u64)>> {
    if m == 0 || t == 0 || d == 0 {
        return Err(Error::InvalidArgument("butler_pattern needs d, t, m ≥ 1".into()));
    }
    if arith::gcd(m, qsize) != 1 {
        return Err(Error::Hypothesis(format!("gcd(m, Q) = gcd({m}, {qsize}) ≠ 1")));
    }
    let mut m2 = 1;
    let mut m1 = m;
    for r in arith::prime_factors(m) {
        if t % r == 0 {
            while m1 % r == 0 {
                m1 /= r;
                m2 *= r;
            }
        }
    }
    arith::divisors(m1)
        .into_iter()
        .map(|e| {
            let s = e * m2 * t;
            let deg = arith::multiplicative_order(qsize, s)
                .ok_or_else(|| Error::Hypothesis(format!("gcd(Q, {s}) ≠ 1")))?;
            let total = d * m2 * arith::euler_phi(e);
            if total % deg != 0 {
                return Err(Error::Inconsistency(format!(
                    "factor count {total}/{deg} is not integral"
                )));
            }
            Ok((deg, total / deg))
        })
        .collect()
}

/// Collapses a pattern into `degree → number of factors`.
pub fn degree_multiset(pattern: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for &(deg, count) in pattern {
        if count > 0 {
            *out.entry(deg).or_insert(0) += count;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64) -> PolyRing {
        PolyRing::from_q(q).unwrap()
    }

    fn elem_of_order(r: &PolyRing, order: u64) -> FieldElem {
        r.field()
            .elements()
            .find(|&a| r.field().order_of(a) == Some(order))
            .unwrap()
    }

    #[test]
    fn tilde_examples() {
        for q in [2, 3] {
            let r = ring(q);
            let f = r.linear(FieldElem::ONE);
            assert_eq!(r.tilde(&f).unwrap(), f);
        }
        let r = ring(2);
        for g in r.field().elements().filter(|&a| r.field().is_norm_one(a, 1)) {
            let f = r.linear(g);
            assert_eq!(r.tilde(&f).unwrap(), f);
        }
        let r = ring(3);
        let f9 = r.field();
        let g = elem_of_order(&r, 8);
        let f = r.linear(g);
        let expected = r.linear(f9.inv(f9.pow(g, 3)).unwrap());
        assert_eq!(r.tilde(&f).unwrap(), expected);
        assert_ne!(r.tilde(&f).unwrap(), f);
        assert!(r.tilde(&r.x()).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let r = ring(2);
        for c in r.field().elements() {
            assert!(r.is_irreducible(&r.linear(c)));
        }
        assert_eq!(r.irreducible_polys(2).len(), 6);
        let t3 = r.sub(&r.compose_power(&r.x(), 3), &r.one());
        assert!(!r.is_irreducible(&t3));
        let g = r.field().generator();
        let candidate = r.monic_from_lower(&[g, FieldElem::ONE]);
        let has_root = r.field().elements().any(|a| r.eval(&candidate, a).is_zero());
        assert_eq!(r.is_irreducible(&candidate), !has_root);
    }

    #[test]
    fn factor_examples() {
        let r = ring(2);
        let t3 = r.sub(&r.compose_power(&r.x(), 3), &r.one());
        let fs = r.factor(&t3);
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|(g, m)| g.degree() == 1 && *m == 1));
        let roots: Vec<_> = r.field().elements().filter(|&a| r.eval(&t3, a).is_zero()).collect();
        assert_eq!(roots.len(), 3);

        let quad = &r.irreducible_polys(2)[0];
        assert_eq!(r.factor(quad), vec![(quad.clone(), 1)]);

        let tm1 = r.linear(FieldElem::ONE);
        assert_eq!(r.factor(&r.mul(&tm1, &tm1)), vec![(tm1, 2)]);
    }

    #[test]
    fn factor_reassembles_products() {
        for q in [2, 3] {
            let r = ring(q);
            let irr: Vec<Poly> = (1..=2).flat_map(|d| r.irreducible_polys(d)).step_by(3).collect();
            for (i, a) in irr.iter().enumerate().take(8) {
                for b in irr.iter().skip(i).take(5) {
                    for e in 1..=3 {
                        let f = r.mul(&r.pow(a, e), b);
                        let fs = r.factor(&f);
                        let back = fs
                            .iter()
                            .fold(r.one(), |acc, (g, m)| r.mul(&acc, &r.pow(g, *m)));
                        assert_eq!(back, f);
                        assert!(fs.iter().all(|(g, _)| r.is_irreducible(g) && g.is_monic()));
                        assert!(fs.windows(2).all(|w| w[0].0 < w[1].0));
                    }
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let r = ring(3);
        assert_eq!(r.classify(&r.linear(FieldElem::ONE)), PolyClass::Scim);
        assert_eq!(r.classify(&r.linear(elem_of_order(&r, 8))), PolyClass::PairMember);
        assert_eq!(r.classify(&r.x()), PolyClass::LinearT);
        assert_eq!(r.classify(&r.mul(&r.x(), &r.x())), PolyClass::Reducible);
    }

    #[test]
    fn compose_power_examples() {
        let r = ring(3);
        let c = r.field().generator();
        assert_eq!(
            r.compose_power(&r.linear(FieldElem::ONE), 3),
            r.sub(&r.compose_power(&r.x(), 3), &r.one())
        );
        assert_eq!(
            r.compose_power(&r.linear(c), 2),
            r.sub(&r.mul(&r.x(), &r.x()), &r.constant(c))
        );
        for f in r.monic_polys(2).step_by(7) {
            for m in 1..5 {
                assert_eq!(r.compose_power(&f, m).degree(), 2 * m);
            }
        }
    }

    #[test]
    fn mtilde_power_examples() {
        let r = ring(2);
        assert!(r.is_mtilde_power(&r.linear(FieldElem::ONE), 2).unwrap());
        for g in r.field().elements().filter(|&a| r.field().is_norm_one(a, 1) && a != FieldElem::ONE) {
            assert!(!r.is_mtilde_power(&r.linear(g), 3).unwrap());
        }
        let cubics = r.polys_of_class(3, PolyClass::Scim);
        assert_eq!(cubics.len(), 2);
        for f in &cubics {
            assert!(!r.is_mtilde_power(f, 3).unwrap());
        }
        assert!(r.is_mtilde_power(&r.x(), 2).is_err());
        assert!(r.is_mtilde_power(&r.linear(FieldElem::ONE), 1).is_err());
    }

    #[test]
    fn m_power_pair_examples() {
        let r = ring(3);
        let f = r.linear(elem_of_order(&r, 8));
        assert!(r.is_m_power_pair(&f, 5).unwrap());
        assert!(!r.is_m_power_pair(&f, 2).unwrap());
        assert!(r.is_m_power_pair(&r.linear(FieldElem::ONE), 2).is_err());
    }

    #[test]
    fn m_power_pair_is_tilde_invariant() {
        for q in [2, 3] {
            let r = ring(q);
            for d in 1..=2 {
                for f in r.polys_of_class(d, PolyClass::PairMember) {
                    let ft = r.tilde(&f).unwrap();
                    for m in [2, 3, 5] {
                        assert_eq!(
                            r.is_m_power_pair(&f, m).unwrap(),
                            r.is_m_power_pair(&ft, m).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn tilde_involution_and_irreducibility() {
        for q in [2, 3] {
            let r = ring(q);
            for d in 1..=3 {
                for f in r.monic_polys(d).filter(|f| !f.coeff(0).is_zero()) {
                    let t = r.tilde(&f).unwrap();
                    assert_eq!(r.tilde(&t).unwrap(), f);
                    assert_eq!(r.is_irreducible(&f), r.is_irreducible(&t));
                }
            }
        }
    }

    #[test]
    fn scim_degrees_are_odd() {
        for q in [2, 3] {
            let r = ring(q);
            for d in 1..=4 {
                if q == 3 && d == 4 {
                    continue; // 9^4 polynomials: covered in the integration suite
                }
                let n = r.polys_of_class(d, PolyClass::Scim).len();
                assert_eq!(n == 0, d % 2 == 0, "q={q} d={d}");
            }
        }
    }

    #[test]
    fn butler_examples() {
        assert_eq!(butler_pattern(1, 1, 3, 4).unwrap(), vec![(1, 1), (1, 2)]);
        assert_eq!(butler_pattern(1, 3, 3, 4).unwrap(), vec![(3, 1)]);
        assert_eq!(butler_pattern(1, 1, 1, 4).unwrap(), vec![(1, 1)]);
        assert!(matches!(butler_pattern(1, 1, 2, 4), Err(Error::Hypothesis(_))));

        let r = ring(2);
        let t3 = r.compose_power(&r.linear(FieldElem::ONE), 3);
        assert!(r.factor(&t3).iter().all(|(g, _)| g.degree() == 1));
        let g = elem_of_order(&r, 3);
        let xg = r.compose_power(&r.linear(g), 3);
        assert!(r.is_irreducible(&xg));
    }

    #[test]
    fn root_orders() {
        let r = ring(2);
        assert_eq!(r.root_order(&r.linear(FieldElem::ONE)).unwrap(), 1);
        for f in r.irreducible_polys(2) {
            let t = r.root_order(&f).unwrap();
            assert!(t == 5 || t == 15, "order {t}");
        }
    }
}
