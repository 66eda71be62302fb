//! Finite fields `F_{q^{2k}}` with the `q`-power conjugation.
//!
//! A field is modelled as `F_p[x]/(m)` where `m` is the lexicographically
//! least monic irreducible of degree `2kl` over `F_p` (coefficients compared
//! from the constant term upward). Elements are encoded as the base-`p`
//! integer of their coordinate vector, so they are `Copy` and hash cheaply;
//! all arithmetic goes through the owning [`FieldDesc`], which keeps
//! discrete-log tables.

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;

use crate::arith;
use crate::error::{Error, Result};

/// Largest field (number of elements) built unless the caller raises the bound.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 256;

/// `q = p^l` with `p` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u64,
    l: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, l: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if l == 0 {
            return Err(Error::InvalidArgument("prime power exponent must be ≥ 1".into()));
        }
        let q = arith::checked_pow(p, l as u64)
            .ok_or_else(|| Error::Overflow(format!("{p}^{l}")))?;
        Ok(Self { p, l, q })
    }

    /// Parses `q` itself, recovering `p` and `l`.
    pub fn from_q(q: u64) -> Result<Self> {
        let primes = arith::prime_factors(q);
        if q < 2 || primes.len() != 1 {
            return Err(Error::NotPrimePower(q));
        }
        let p = primes[0];
        let mut l = 0;
        let mut rest = q;
        while rest > 1 {
            rest /= p;
            l += 1;
        }
        Ok(Self { p, l, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl std::fmt::Display for PrimePower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// An element of some [`FieldDesc`]; meaningless without it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Base-`p` encoding of the coordinate vector.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn from_index(i: u32) -> Self {
        FieldElem(i)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field `F_{q^{2k}}` together with its arithmetic tables.
pub struct FieldDesc {
    base: PrimePower,
    k: u32,
    degree: usize,
    modulus: Vec<u32>,
    size: u32,
    digit_pow: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl std::fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldDesc")
            .field("q", &self.base.q)
            .field("k", &self.k)
            .field("size", &self.size)
            .field("modulus", &self.modulus)
            .finish()
    }
}

static FIELD_CACHE: Lazy<Mutex<HashMap<(u64, u32, u32), Arc<FieldDesc>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// `F_{q^{2k}}` for `q = p^l`, with the default size bound.
pub fn make_field(p: u64, l: u32, k: u32) -> Result<Arc<FieldDesc>> {
    make_field_bounded(p, l, k, DEFAULT_FIELD_BOUND)
}

pub fn make_field_bounded(p: u64, l: u32, k: u32, bound: u64) -> Result<Arc<FieldDesc>> {
    let base = PrimePower::new(p, l)?;
    field_for(base, k, bound)
}

/// `F_{q^{2k}}` for an already validated `q`.
pub fn field_for(base: PrimePower, k: u32, bound: u64) -> Result<Arc<FieldDesc>> {
    if k == 0 {
        return Err(Error::InvalidArgument("extension degree k must be ≥ 1".into()));
    }
    let degree = 2 * k as u64 * base.l as u64;
    let size = arith::checked_pow_u128(base.p as u128, degree)
        .filter(|&s| s <= bound as u128 && s <= u32::MAX as u128)
        .ok_or_else(|| {
            Error::BoundExceeded(format!(
                "field F_{{{}^{}}} exceeds the enumeration bound {bound}",
                base.q,
                2 * k
            ))
        })?;
    let key = (base.p, base.l, k);
    if let Some(f) = FIELD_CACHE.lock().get(&key) {
        return Ok(Arc::clone(f));
    }
    let field = Arc::new(FieldDesc::build(base, k, degree as usize, size as u32));
    FIELD_CACHE.lock().entry(key).or_insert_with(|| Arc::clone(&field));
    Ok(field)
}

impl FieldDesc {
    fn build(base: PrimePower, k: u32, degree: usize, size: u32) -> Self {
        let p = base.p as u32;
        let modulus = least_irreducible(p, degree);
        let digit_pow: Vec<u32> = (0..=degree).map(|i| p.pow(i as u32)).collect();
        let mut field = FieldDesc {
            base,
            k,
            degree,
            modulus,
            size,
            digit_pow,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        field.build_log_tables();
        if p != 2 && size <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    table[(a * size + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(table);
        }
        field
    }

    fn build_log_tables(&mut self) {
        let order = self.size - 1;
        let order_primes = arith::prime_factors(order as u64);
        let generator = (1..self.size)
            .map(|i| self.coords_of(i))
            .find(|g| {
                order_primes
                    .iter()
                    .all(|&r| !is_one(&self.slow_pow(g, order as u64 / r)))
            })
            .expect("a finite field has a primitive element");
        let last = generator.iter().rposition(|&c| c != 0).unwrap_or(0);
        let p = self.base.p as u32;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; self.size as usize];
        let mut cur = vec![0u32; self.degree];
        cur[0] = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            let e = self.encode(&cur);
            *slot = e;
            log[e as usize] = i as u32;
            // cur *= generator, one monomial at a time
            let mut acc = vec![0u32; self.degree];
            let mut shifted = cur.clone();
            for (j, &g) in generator.iter().enumerate().take(last + 1) {
                if g != 0 {
                    for (a, s) in acc.iter_mut().zip(&shifted) {
                        *a = (*a + g * s) % p;
                    }
                }
                if j < last {
                    self.mul_by_x(&mut shifted);
                }
            }
            cur = acc;
        }
        self.exp = exp;
        self.log = log;
    }

    fn mul_by_x(&self, v: &mut [u32]) {
        let p = self.base.p as u32;
        let carry = v[self.degree - 1];
        for i in (1..self.degree).rev() {
            v[i] = v[i - 1];
        }
        v[0] = 0;
        if carry != 0 {
            for (vi, &mi) in v.iter_mut().zip(&self.modulus) {
                *vi = (*vi + p - (carry * mi) % p) % p;
            }
        }
    }

    fn slow_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.base.p as u32;
        let mut acc = vec![0u32; self.degree];
        let mut shifted = a.to_vec();
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                for (x, s) in acc.iter_mut().zip(&shifted) {
                    *x = (*x + bj * s) % p;
                }
            }
            if j + 1 < b.len() {
                self.mul_by_x(&mut shifted);
            }
        }
        acc
    }

    fn slow_pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut result = vec![0u32; self.degree];
        result[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.slow_mul(&result, &base);
            }
            base = self.slow_mul(&base, &base);
            e >>= 1;
        }
        result
    }

    fn encode(&self, coords: &[u32]) -> u32 {
        coords
            .iter()
            .zip(&self.digit_pow)
            .map(|(c, w)| c * w)
            .sum()
    }

    fn coords_of(&self, idx: u32) -> Vec<u32> {
        let p = self.base.p as u32;
        let mut v = Vec::with_capacity(self.degree);
        let mut rest = idx;
        for _ in 0..self.degree {
            v.push(rest % p);
            rest /= p;
        }
        v
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.base.p as u32;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for w in &self.digit_pow[..self.degree] {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn base(&self) -> PrimePower {
        self.base
    }

    /// The field is `F_{q^{2k}}`.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn characteristic(&self) -> u64 {
        self.base.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u64 {
        self.size as u64
    }

    /// Monic modulus over `F_p`, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// Image of an integer under `Z → F_p ⊆ F`.
    pub fn from_int(&self, c: i64) -> FieldElem {
        let p = self.base.p as i64;
        FieldElem(c.rem_euclid(p) as u32)
    }

    pub fn coords(&self, a: FieldElem) -> Vec<u32> {
        self.coords_of(a.0)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElem> {
        let p = self.base.p as u32;
        if coords.len() > self.degree || coords.iter().any(|&c| c >= p) {
            return Err(Error::InvalidArgument(format!(
                "coordinate vector {coords:?} does not describe an element of F_{}",
                self.size
            )));
        }
        Ok(FieldElem(self.encode(coords)))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size).map(FieldElem)
    }

    /// A fixed primitive element.
    pub fn generator(&self) -> FieldElem {
        FieldElem(self.exp[1 % self.exp.len()])
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.base.p == 2 {
            FieldElem(a.0 ^ b.0)
        } else if let Some(t) = &self.add_table {
            FieldElem(t[(a.0 * self.size + b.0) as usize])
        } else {
            FieldElem(self.add_digits(a.0, b.0))
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.base.p == 2 {
            return a;
        }
        let p = self.base.p as u32;
        let mut rest = a.0;
        let mut out = 0;
        for w in &self.digit_pow[..self.degree] {
            out += ((p - rest % p) % p) * w;
            rest /= p;
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let order = self.size - 1;
        let e = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % order as u64;
        FieldElem(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            return None;
        }
        let order = self.size - 1;
        let e = (order - self.log[a.0 as usize]) % order;
        Some(FieldElem(self.exp[e as usize]))
    }

    /// `a / b`; panics on `b = 0`.
    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b).expect("division by zero in finite field"))
    }

    pub fn pow(&self, a: FieldElem, e: u128) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let order = (self.size - 1) as u128;
        let l = self.log[a.0 as usize] as u128;
        FieldElem(self.exp[(l * (e % order) % order) as usize])
    }

    /// Discrete log with respect to [`FieldDesc::generator`].
    pub fn log(&self, a: FieldElem) -> Option<u64> {
        (a.0 != 0).then(|| self.log[a.0 as usize] as u64)
    }

    /// Multiplicative order; `None` for zero.
    pub fn order_of(&self, a: FieldElem) -> Option<u64> {
        let order = self.size as u64 - 1;
        self.log(a).map(|l| order / arith::gcd(l, order))
    }

    /// `a^(base^j)`, computed with the exponent reduced modulo the group order.
    pub fn frobenius_pow(&self, a: FieldElem, base: u64, j: u64) -> FieldElem {
        let order = (self.size - 1) as u128;
        if a.0 == 0 {
            return a;
        }
        let e = arith::pow_mod(base as u128, j as u128, order);
        let l = self.log[a.0 as usize] as u128;
        FieldElem(self.exp[(l * e % order) as usize])
    }

    /// The conjugation `a ↦ a^q`.
    pub fn conj(&self, a: FieldElem) -> FieldElem {
        self.frobenius_pow(a, self.base.q, 1)
    }

    /// `a^(q^d + 1) = 1`; zero is never norm-one. Meaningful when `a`
    /// lies in the `F_{q^{2d}}` subfield.
    pub fn is_norm_one(&self, a: FieldElem, d: u64) -> bool {
        if a.0 == 0 {
            return false;
        }
        let order = (self.size - 1) as u128;
        let e = (arith::pow_mod(self.base.q as u128, d as u128, order) + 1) % order;
        self.pow(a, e) == FieldElem::ONE
    }

    /// `θ_M(a) = a^M`.
    pub fn power_map(&self, a: FieldElem, m: u64) -> FieldElem {
        self.pow(a, m as u128)
    }

    /// Whether `a` lies in the subfield with `sub_size` elements.
    pub fn lies_in(&self, a: FieldElem, sub_size: u64) -> bool {
        self.pow(a, sub_size as u128) == a
    }

    /// Degree of `a` over the subfield with `sub_size` elements: the least
    /// `j ≥ 1` with `a^(sub_size^j) = a`.
    pub fn degree_over(&self, a: FieldElem, sub_size: u64) -> u64 {
        let mut j = 1;
        let mut cur = self.frobenius_pow(a, sub_size, 1);
        while cur != a {
            cur = self.frobenius_pow(cur, sub_size, 1);
            j += 1;
        }
        j
    }
}

fn is_one(v: &[u32]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// Field embedding `sub ↪ sup`, stored as an image table.
#[derive(Clone, Debug)]
pub struct Embedding {
    image: Vec<FieldElem>,
}

impl Embedding {
    pub fn apply(&self, a: FieldElem) -> FieldElem {
        self.image[a.0 as usize]
    }

    /// All images, indexed by the source element.
    pub fn images(&self) -> &[FieldElem] {
        &self.image
    }
}

/// Embeds `sub` into `sup` by sending the generator of `sub`'s modulus to
/// the least-index root of that modulus in `sup`.
pub fn embed(sub: &FieldDesc, sup: &FieldDesc) -> Result<Embedding> {
    if sub.characteristic() != sup.characteristic() || sup.degree % sub.degree != 0 {
        return Err(Error::InvalidArgument(format!(
            "F_{} is not a subfield of F_{}",
            sub.size, sup.size
        )));
    }
    let root = sup
        .elements()
        .find(|&r| {
            let mut acc = FieldElem::ZERO;
            for &c in sub.modulus.iter().rev() {
                acc = sup.add(sup.mul(acc, r), FieldElem(c));
            }
            acc.is_zero()
        })
        .ok_or_else(|| Error::Inconsistency("subfield modulus has no root".into()))?;
    let mut powers = Vec::with_capacity(sub.degree);
    let mut cur = FieldElem::ONE;
    for _ in 0..sub.degree {
        powers.push(cur);
        cur = sup.mul(cur, root);
    }
    let image = sub
        .elements()
        .map(|a| {
            sub.coords(a)
                .iter()
                .zip(&powers)
                .fold(FieldElem::ZERO, |acc, (&c, &w)| {
                    sup.add(acc, sup.mul(FieldElem(c), w))
                })
        })
        .collect();
    Ok(Embedding { image })
}

// Polynomials over F_p as dense coefficient vectors, used only to find moduli.

fn least_irreducible(p: u32, degree: usize) -> Vec<u32> {
    let count = (p as u64).pow(degree as u32);
    (0..count)
        .map(|n| {
            // constant term is the most significant digit of the counter
            let mut c = vec![0u32; degree + 1];
            let mut rest = n;
            for j in (0..degree).rev() {
                c[j] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            c[degree] = 1;
            c
        })
        .find(|f| prime_poly_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    arith::pow_mod(a as u128, (p - 2) as u128, p as u128) as u32
}

fn pp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] * lead_inv) % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (c * mi) % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn pp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    pp_rem(&out, m, p)
}

fn pp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = pp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or: `f` is irreducible iff `gcd(f, x^(p^i) - x) = 1` for `i ≤ deg/2`.
fn prime_poly_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..n / 2 {
        // h ← h^p mod f
        let mut acc = vec![1u32];
        for _ in 0..p {
            acc = pp_mulmod(&acc, &h, f, p);
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if pp_gcd(f, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_pow(f: &FieldDesc, a: FieldElem, e: u64) -> FieldElem {
        (0..e).fold(FieldElem::ONE, |acc, _| f.mul(acc, a))
    }

    #[test]
    fn field_sizes() {
        assert_eq!(make_field(2, 1, 1).unwrap().size(), 4);
        assert_eq!(make_field(3, 1, 1).unwrap().size(), 9);
        assert_eq!(make_field(2, 1, 3).unwrap().size(), 64);
        assert_eq!(make_field(2, 2, 1).unwrap().size(), 16);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(make_field(4, 1, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            make_field_bounded(3, 1, 4, 1 << 10),
            Err(Error::BoundExceeded(_))
        ));
        assert!(matches!(PrimePower::from_q(6), Err(Error::NotPrimePower(6))));
        assert_eq!(PrimePower::from_q(9).unwrap(), PrimePower::new(3, 2).unwrap());
    }

    #[test]
    fn moduli_are_deterministic_and_least() {
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        assert_eq!(make_field(2, 1, 1).unwrap().modulus(), &[1, 1, 1]);
        // over F_3 the least in constant-first order is x^2 + 1
        assert_eq!(make_field(3, 1, 1).unwrap().modulus(), &[1, 0, 1]);
        let a = FieldDesc::build(PrimePower::new(2, 1).unwrap(), 3, 6, 64);
        assert_eq!(a.modulus(), make_field(2, 1, 3).unwrap().modulus());
    }

    #[test]
    fn tables_agree_with_coordinate_multiplication() {
        for (p, l, k) in [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 2), (5, 1, 1)] {
            let f = make_field(p, l, k).unwrap();
            for a in f.elements() {
                for b in f.elements().step_by(3) {
                    let slow = f.slow_mul(&f.coords(a), &f.coords(b));
                    assert_eq!(f.mul(a, b), f.from_coords(&slow).unwrap());
                }
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for (p, l, k) in [(2, 1, 1), (3, 1, 1), (2, 1, 2)] {
            let f = make_field(p, l, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
                assert_eq!(f.mul(a, FieldElem::ONE), a);
                if let Some(ai) = f.inv(a) {
                    assert_eq!(f.mul(a, ai), FieldElem::ONE);
                }
                for b in f.elements() {
                    for c in f.elements().step_by(5) {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn subfield_embedding_of_f4_in_f64() {
        let small = make_field(2, 1, 1).unwrap();
        let big = make_field(2, 1, 3).unwrap();
        let emb = embed(&small, &big).unwrap();
        let images: std::collections::BTreeSet<_> = emb.images().iter().copied().collect();
        assert_eq!(images.len(), 4);
        for &e in emb.images() {
            assert_eq!(brute_pow(&big, e, 4), e);
        }
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(emb.apply(small.mul(a, b)), big.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(small.add(a, b)), big.add(emb.apply(a), emb.apply(b)));
            }
        }
    }

    #[test]
    fn conj_examples() {
        let f9 = make_field(3, 1, 1).unwrap();
        assert_eq!(f9.conj(FieldElem::ZERO), FieldElem::ZERO);
        assert_eq!(f9.conj(FieldElem::ONE), FieldElem::ONE);
        let g = f9.generator();
        assert_eq!(f9.order_of(g), Some(8));
        assert_eq!(f9.conj(g), brute_pow(&f9, g, 3));
        for a in f9.elements() {
            assert_eq!(f9.conj(f9.conj(a)), a);
        }
    }

    #[test]
    fn conj_is_an_automorphism() {
        for (p, l, k) in [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 1), (2, 1, 3)] {
            let f = make_field(p, l, k).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
                    assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
                }
            }
        }
    }

    #[test]
    fn conj_fixed_set_is_the_base_field() {
        for (p, l) in [(2, 1), (3, 1), (2, 2)] {
            let f = make_field(p, l, 1).unwrap();
            let fixed = f.elements().filter(|&a| f.conj(a) == a).count() as u64;
            assert_eq!(fixed, f.base().q());
        }
    }

    #[test]
    fn norm_one_circle_sizes() {
        for q in [2u64, 3] {
            for d in 1..=3u32 {
                if q.pow(2 * d) > 4096 {
                    continue;
                }
                let f = make_field(q, 1, d).unwrap();
                let n = f.elements().filter(|&a| f.is_norm_one(a, d as u64)).count() as u64;
                assert_eq!(n, q.pow(d) + 1, "q={q} d={d}");
            }
        }
        let f4 = make_field(2, 1, 1).unwrap();
        assert!(f4.is_norm_one(FieldElem::ONE, 1));
        assert!(!f4.is_norm_one(FieldElem::ZERO, 1));
    }

    #[test]
    fn power_map_on_small_circles() {
        let f4 = make_field(2, 1, 1).unwrap();
        let circle: Vec<_> = f4.elements().filter(|&a| f4.is_norm_one(a, 1)).collect();
        assert_eq!(circle.len(), 3);
        for &a in &circle {
            assert_eq!(f4.power_map(a, 1), a);
            assert_eq!(f4.power_map(a, 3), FieldElem::ONE);
        }
        let squares: std::collections::BTreeSet<_> =
            circle.iter().map(|&a| f4.power_map(a, 2)).collect();
        assert_eq!(squares.len(), 3);
    }

    #[test]
    fn power_map_composes() {
        for (p, l, k) in [(2, 1, 1), (3, 1, 1), (2, 1, 2), (3, 1, 2)] {
            let f = make_field(p, l, k).unwrap();
            for a in f.elements() {
                for m in 1..7u64 {
                    for n in 1..7u64 {
                        assert_eq!(
                            f.power_map(f.power_map(a, n), m),
                            f.power_map(a, m * n)
                        );
                    }
                    assert_eq!(f.power_map(a, m), brute_pow(&f, a, m));
                }
            }
        }
    }
}
