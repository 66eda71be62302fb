//! The six generating functions for `M`-th powers in `U(n, q)`, by family
//! (separable, cyclic, semisimple) and by what is counted (conjugacy
//! classes, or elements as a proportion of `|U(n, q)|`).

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::arith;
use crate::counts;
use crate::error::{Error, Result};
use crate::gf::PrimePower;
use crate::oracle::{ClassFamily, ConjugacyDatum, FactorKind};
use crate::series::{binom_factor, euler_factor, group_order_gl, group_order_u, rat_from_biguint, Series};

pub const DEFAULT_TRUNCATION: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesKind {
    Classes,
    Elements,
}

impl SeriesKind {
    pub fn short_name(self) -> &'static str {
        match self {
            SeriesKind::Classes => "classes",
            SeriesKind::Elements => "elements",
        }
    }
}

/// The per-degree exponents of one generating function, indexed by `d`
/// (entry 0 unused). `step` is the `M` of the `z^{dM}` factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCounts {
    pub q: PrimePower,
    pub t: usize,
    pub step: u64,
    pub scim: Vec<u64>,
    pub pairs: Vec<u64>,
    pub scim_rest: Vec<u64>,
    pub pairs_rest: Vec<u64>,
}

impl FactorCounts {
    /// `Ñ_M`, `R̃_M`, `S̃′_M`, `S′_M` for `d ≤ T`.
    pub fn for_power(q: PrimePower, m: u64, t: usize) -> Result<Self> {
        let mut c = Self::empty(q, t, m);
        for d in 1..=t {
            let rec = counts::CountRecord::compute(q, d as u64, m)?;
            c.scim[d] = rec.n_tilde_m;
            c.pairs[d] = rec.r_tilde_m;
            c.scim_rest[d] = rec.s_tilde_prime;
            c.pairs_rest[d] = rec.s_prime;
        }
        Ok(c)
    }

    /// `Ñ` and `R̃` in place of `Ñ_M` and `R̃_M`, nothing left over: the
    /// series then count every matrix of the family.
    pub fn unrestricted(q: PrimePower, t: usize) -> Result<Self> {
        let mut c = Self::empty(q, t, 1);
        for d in 1..=t {
            c.scim[d] = counts::count_scim(q, d as u64)?;
            c.pairs[d] = counts::count_pairs(q, d as u64)?;
        }
        Ok(c)
    }

    fn empty(q: PrimePower, t: usize, step: u64) -> Self {
        FactorCounts {
            q,
            t,
            step,
            scim: vec![0; t + 1],
            pairs: vec![0; t + 1],
            scim_rest: vec![0; t + 1],
            pairs_rest: vec![0; t + 1],
        }
    }

    fn q_pow(&self, e: usize) -> BigUint {
        Pow::pow(BigUint::from(self.q.q()), e)
    }
}

fn exponent(e: u64) -> Result<i64> {
    i64::try_from(e).map_err(|_| Error::Overflow(format!("exponent {e}")))
}

fn product(t: usize, factors: impl IntoIterator<Item = Result<Series>>) -> Result<Series> {
    factors.into_iter().try_fold(Series::one(t), |acc, f| acc.mul(&f?))
}

/// Product over `d` of `(1 + z^d)^{a_d}·(1 + z^{2d})^{b_d}`.
pub fn sep_class_from(c: &FactorCounts) -> Result<Series> {
    let t = c.t;
    let one = BigRational::one();
    product(
        t,
        (1..=t).flat_map(|d| {
            let one = one.clone();
            [
                exponent(c.scim[d]).map(|e| binom_factor(d, &one, e, t)),
                exponent(c.pairs[d]).map(|e| binom_factor(2 * d, &one, e, t)),
            ]
        }),
    )
}

/// `(1 + z^d/(q^d+1))^{a_d}·(1 + z^{2d}/(q^{2d}−1))^{b_d}`.
pub fn sep_elem_from(c: &FactorCounts) -> Result<Series> {
    let t = c.t;
    product(
        t,
        (1..=t).flat_map(|d| {
            let scim_c = rat_from_biguint(&(c.q_pow(d) + 1u32)).recip();
            let pair_c = rat_from_biguint(&(c.q_pow(2 * d) - 1u32)).recip();
            [
                exponent(c.scim[d]).map(|e| binom_factor(d, &scim_c, e, t)),
                exponent(c.pairs[d]).map(|e| binom_factor(2 * d, &pair_c, e, t)),
            ]
        }),
    )
}

/// `(1 − z^d)^{−a_d}·(1 − z^{2d})^{−b_d}`, and with nonzero leftover counts
/// also `(1 − z^{dM})^{−a′_d}·(1 − z^{2dM})^{−b′_d}`.
fn unbounded_class_from(c: &FactorCounts) -> Result<Series> {
    let t = c.t;
    let one = BigRational::one();
    let step = c.step as usize;
    product(
        t,
        (1..=t).flat_map(|d| {
            let one = one.clone();
            [
                exponent(c.scim[d]).map(|e| binom_factor(d, &one, -e, t)),
                exponent(c.pairs[d]).map(|e| binom_factor(2 * d, &one, -e, t)),
                exponent(c.scim_rest[d]).map(|e| binom_factor(d * step, &one, -e, t)),
                exponent(c.pairs_rest[d]).map(|e| binom_factor(2 * d * step, &one, -e, t)),
            ]
        }),
    )
}

pub fn cyc_class_from(c: &FactorCounts) -> Result<Series> {
    unbounded_class_from(&FactorCounts {
        scim_rest: vec![0; c.t + 1],
        pairs_rest: vec![0; c.t + 1],
        ..c.clone()
    })
}

/// `1 + z^k/(c·(1 − (z/q)^k))` raised to `e`.
fn cyc_elem_factor(k: usize, c: &BigUint, qk: &BigUint, e: u64, t: usize) -> Result<Series> {
    if e == 0 || k > t {
        return Ok(Series::one(t));
    }
    let geometric = binom_factor(k, &rat_from_biguint(qk).recip(), -1, t);
    let base = Series::one(t).add(&geometric.shift(k).scale(&rat_from_biguint(c).recip()))?;
    Ok(base.pow(e))
}

pub fn cyc_elem_from(c: &FactorCounts) -> Result<Series> {
    let t = c.t;
    product(
        t,
        (1..=t).flat_map(|d| {
            let qd = c.q_pow(d);
            let q2d = c.q_pow(2 * d);
            [
                cyc_elem_factor(d, &(&qd + 1u32), &qd, c.scim[d], t),
                cyc_elem_factor(2 * d, &(&q2d - 1u32), &q2d, c.pairs[d], t),
            ]
        }),
    )
}

pub fn ss_class_from(c: &FactorCounts) -> Result<Series> {
    unbounded_class_from(c)
}

/// Euler factors with centralizer orders `|U(m, q^d)|`, `|GL(m, q^{2d})|`,
/// and at step `M` the orders `|U(mM, q^d)|`, `|GL(mM, q^{2d})|`.
pub fn ss_elem_from(c: &FactorCounts) -> Result<Series> {
    let t = c.t;
    let step = c.step as usize;
    let mut acc = Series::one(t);
    for d in 1..=t {
        let qd = c.q_pow(d);
        let q2d = c.q_pow(2 * d);
        let u = |s: usize| {
            let qd = qd.clone();
            move |m: usize| rat_from_biguint(&group_order_u((m * s) as u32, &qd))
        };
        let gl = |s: usize| {
            let q2d = q2d.clone();
            move |m: usize| rat_from_biguint(&group_order_gl((m * s) as u32, &q2d))
        };
        let parts = [
            (c.scim[d], d, 1, euler_factor(d, 1, t, u(1))),
            (c.pairs[d], 2 * d, 1, euler_factor(2 * d, 1, t, gl(1))),
            (c.scim_rest[d], d, step, euler_factor(d, step.max(1), t, u(step.max(1)))),
            (c.pairs_rest[d], 2 * d, step, euler_factor(2 * d, step.max(1), t, gl(step.max(1)))),
        ];
        for (e, k, s, factor) in parts {
            if e == 0 || k * s > t {
                continue;
            }
            acc = acc.mul(&factor?.pow(e))?;
        }
    }
    Ok(acc)
}

fn check_m(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("M = {m} must be ≥ 2")));
    }
    Ok(())
}

fn check_coprime(q: PrimePower, m: u64) -> Result<()> {
    check_m(m)?;
    if arith::gcd(m, q.q()) != 1 {
        return Err(Error::Hypothesis(format!("needs gcd(M, q) = 1, got M = {m}, q = {q}")));
    }
    Ok(())
}

fn check_semisimple(q: PrimePower, m: u64) -> Result<()> {
    check_coprime(q, m)?;
    if !arith::is_prime(m) {
        return Err(Error::Hypothesis(format!("semisimple series need M prime, got M = {m}")));
    }
    Ok(())
}

pub fn sep_class_series(q: PrimePower, m: u64, t: usize) -> Result<Series> {
    check_m(m)?;
    sep_class_from(&FactorCounts::for_power(q, m, t)?)
}

pub fn sep_elem_series(q: PrimePower, m: u64, t: usize) -> Result<Series> {
    check_m(m)?;
    sep_elem_from(&FactorCounts::for_power(q, m, t)?)
}

pub fn cyc_class_series(q: PrimePower, m: u64, t: usize) -> Result<Series> {
    check_coprime(q, m)?;
    cyc_class_from(&FactorCounts::for_power(q, m, t)?)
}

pub fn cyc_elem_series(q: PrimePower, m: u64, t: usize) -> Result<Series> {
    check_coprime(q, m)?;
    cyc_elem_from(&FactorCounts::for_power(q, m, t)?)
}

pub fn ss_class_series(q: PrimePower, m: u64, t: usize) -> Result<Series> {
    check_semisimple(q, m)?;
    ss_class_from(&FactorCounts::for_power(q, m, t)?)
}

pub fn ss_elem_series(q: PrimePower, m: u64, t: usize) -> Result<Series> {
    check_semisimple(q, m)?;
    ss_elem_from(&FactorCounts::for_power(q, m, t)?)
}

/// One of the six series, with its hypotheses checked up front.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesRequest {
    pub q: PrimePower,
    pub m: u64,
    pub t: usize,
    pub family: ClassFamily,
    pub kind: SeriesKind,
}

impl SeriesRequest {
    pub fn validate(&self) -> Result<()> {
        match self.family {
            ClassFamily::Separable => check_m(self.m),
            ClassFamily::Cyclic => check_coprime(self.q, self.m),
            ClassFamily::Semisimple => check_semisimple(self.q, self.m),
        }
    }

    pub fn compute(&self) -> Result<Series> {
        self.validate()?;
        series_from(self.family, self.kind, &FactorCounts::for_power(self.q, self.m, self.t)?)
    }
}

pub fn series_from(family: ClassFamily, kind: SeriesKind, c: &FactorCounts) -> Result<Series> {
    match (family, kind) {
        (ClassFamily::Separable, SeriesKind::Classes) => sep_class_from(c),
        (ClassFamily::Separable, SeriesKind::Elements) => sep_elem_from(c),
        (ClassFamily::Cyclic, SeriesKind::Classes) => cyc_class_from(c),
        (ClassFamily::Cyclic, SeriesKind::Elements) => cyc_elem_from(c),
        (ClassFamily::Semisimple, SeriesKind::Classes) => ss_class_from(c),
        (ClassFamily::Semisimple, SeriesKind::Elements) => ss_elem_from(c),
    }
}

/// `|C_U(A)|` for a class of separable, cyclic or semisimple shape.
pub fn centralizer_order(datum: &ConjugacyDatum, q: PrimePower) -> Result<BigUint> {
    let kind = datum.kind();
    if !kind.cyclic && !kind.semisimple {
        return Err(Error::InvalidArgument(format!(
            "centralizer order needs a separable, cyclic or semisimple datum, got {datum}"
        )));
    }
    let qb = BigUint::from(q.q());
    let mut acc = BigUint::one();
    for (phi, entry) in datum.assignments() {
        let d = phi.degree();
        let parts = &entry.partition;
        let m = parts.len();
        acc *= match (entry.kind, kind.cyclic) {
            (FactorKind::SelfConjugate, true) => {
                let m = parts[0];
                let qd: BigUint = Pow::pow(&qb, d);
                Pow::pow(&qb, d * (m - 1)) * (qd + 1u32)
            }
            (FactorKind::Pair, true) => {
                let m = parts[0];
                let q2d: BigUint = Pow::pow(&qb, 2 * d);
                Pow::pow(&qb, 2 * d * (m - 1)) * (q2d - 1u32)
            }
            (FactorKind::SelfConjugate, false) => group_order_u(m as u32, &Pow::pow(&qb, d)),
            (FactorKind::Pair, false) => group_order_gl(m as u32, &Pow::pow(&qb, 2 * d)),
        };
    }
    Ok(acc)
}
