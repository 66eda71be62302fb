//! Counts of the polynomial families that feed the generating functions.
//!
//! | symbol      | meaning                                                  |
//! |-------------|----------------------------------------------------------|
//! | `Ñ(q,d)`    | SCIM polynomials of degree `d` over `F_{q²}`             |
//! | `Ñ_M(q,d)`  | those that are M̃-power                                   |
//! | `R̃(q,d)`    | unordered pairs `{g, g̃}`, `g ≠ g̃` irreducible, `g(0) ≠ 0` |
//! | `R̃_M(q,d)`  | pairs whose members are M-power                          |
//! | `S̃′_M(d,q)` | `Ñ − Ñ_M`                                                |
//! | `S′_M(d,q)` | `R̃ − R̃_M`                                                |
//!
//! All four have closed forms. `R̃_M` can also be counted by enumerating
//! roots in `F_{q^{2d}}`, which the tests use as a cross-check.

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{self, PrimePower};
use crate::polyalg::{PolyClass, PolyRing};

pub use crate::arith::mobius;

fn pow_i128(base: u64, exp: u64) -> Result<i128> {
    arith::checked_pow_u128(base as u128, exp)
        .filter(|&v| v <= i128::MAX as u128)
        .map(|v| v as i128)
        .ok_or_else(|| Error::Overflow(format!("{base}^{exp}")))
}

fn to_count(v: i128, what: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Inconsistency(format!("{what} evaluated to {v}")))
}

fn check_m(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("M = {m} must be ≥ 2")));
    }
    Ok(())
}

fn check_d(d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree d must be ≥ 1".into()));
    }
    Ok(())
}

/// `Ñ(q,d) = (1/d) Σ_{l|d} μ(l)(q^{d/l} + 1)` for odd `d`, 0 for even `d`.
pub fn count_scim(q: PrimePower, d: u64) -> Result<u64> {
    check_d(d)?;
    if d % 2 == 0 {
        return Ok(0);
    }
    let mut sum = 0i128;
    for l in arith::divisors(d) {
        sum += mobius(l) as i128 * (pow_i128(q.q(), d / l)? + 1);
    }
    if sum % d as i128 != 0 {
        return Err(Error::Inconsistency(format!("Ñ({q},{d}): {sum} not divisible by {d}")));
    }
    to_count(sum / d as i128, "Ñ")
}

/// `Ñ_M(q,d)` for odd `d` (0 for even `d`). SCIM roots of degree `d` are the
/// elements of `μ_{q^d+1}` of exact degree `d`, and the qualifying ones lie in
/// `θ_M(μ_{q^d+1})`, of order `P = (q^d+1)/gcd(M, q^d+1)`; so
/// `Ñ_M = (1/d) Σ_{e|d} μ(d/e)·gcd(q^e + 1, P)`.
pub fn count_mtilde_scim(q: PrimePower, d: u64, m: u64) -> Result<u64> {
    check_d(d)?;
    check_m(m)?;
    if d % 2 == 0 {
        return Ok(0);
    }
    let norm_one = pow_i128(q.q(), d)? as u128 + 1;
    let image = norm_one / arith::gcd_u128(m as u128, norm_one);
    let mut sum = 0i128;
    for e in arith::divisors(d) {
        let sub = pow_i128(q.q(), e)? as u128 + 1;
        sum += mobius(d / e) as i128 * arith::gcd_u128(sub, image) as i128;
    }
    if sum % d as i128 != 0 {
        return Err(Error::Inconsistency(format!("Ñ_{m}({q},{d}): {sum} not divisible by {d}")));
    }
    to_count(sum / d as i128, "Ñ_M")
}

/// The scaled-gcd form
/// `(1/(d·gcd(M, q^{2d}-1))) Σ_{l|d} μ(l)·gcd(M(q^{2d/l}-1), q^d+1)` for odd
/// `d`. It agrees with [`count_mtilde_scim`] for `q ∈ {2, 3}`, `M ≤ 6`, but
/// not in general (`q = 4, M = 3, d = 1` gives 5/3); a non-integral value is
/// reported as an error.
pub fn count_mtilde_scim_scaled(q: PrimePower, d: u64, m: u64) -> Result<u64> {
    check_d(d)?;
    check_m(m)?;
    if d % 2 == 0 {
        return Ok(0);
    }
    let qd1 = pow_i128(q.q(), d)? as u128 + 1;
    let mut sum = 0i128;
    for l in arith::divisors(d) {
        let inner = (pow_i128(q.q(), 2 * d / l)? as u128 - 1)
            .checked_mul(m as u128)
            .ok_or_else(|| Error::Overflow(format!("M(q^(2d/l) - 1) for q={q}, d={d}")))?;
        sum += mobius(l) as i128 * arith::gcd_u128(inner, qd1) as i128;
    }
    let den = d as i128 * arith::gcd_u128(m as u128, pow_i128(q.q(), 2 * d)? as u128 - 1) as i128;
    if sum % den != 0 {
        return Err(Error::Inconsistency(format!(
            "scaled form of Ñ_{m}({q},{d}): {sum} not divisible by {den}"
        )));
    }
    to_count(sum / den, "Ñ_M")
}

/// Necklace count of monic irreducibles of degree `d` over `F_Q`.
pub fn count_irreducible(qsize: u64, d: u64) -> Result<u64> {
    check_d(d)?;
    let mut sum = 0i128;
    for l in arith::divisors(d) {
        sum += mobius(l) as i128 * pow_i128(qsize, d / l)?;
    }
    to_count(sum / d as i128, "irreducible count")
}

/// `R̃(q,d)`: pairs `{g, g̃}` of distinct irreducibles of degree `d` with
/// nonzero constant term.
pub fn count_pairs(q: PrimePower, d: u64) -> Result<u64> {
    let irreducible = count_irreducible(q.q() * q.q(), d)?;
    let linear_t = u64::from(d == 1);
    let rest = irreducible
        .checked_sub(linear_t + count_scim(q, d)?)
        .ok_or_else(|| Error::Inconsistency(format!("more SCIM than irreducibles at d={d}")))?;
    if rest % 2 != 0 {
        return Err(Error::Inconsistency(format!(
            "{rest} non-self-conjugate irreducibles of degree {d} cannot form pairs"
        )));
    }
    Ok(rest / 2)
}

/// `R̃_M(q,d)` in closed form. With `N_e = q^{2e} − 1`, `g = gcd(M, N_d)` and
/// `P` the `M`-th powers in `F_{q^{2d}}^*` (a subgroup of order `N_d/g`),
/// the pair roots that are `M`-th powers number
/// `Σ_{e|d} μ(d/e)·gcd(N_e, N_d/g)`, less for odd `d` the self-conjugate
/// ones `Σ_{e|d} μ(d/e)·gcd(q^e + 1, N_d/g)`; each pair has `2d` roots.
pub fn count_mpower_pairs(q: PrimePower, d: u64, m: u64) -> Result<u64> {
    check_d(d)?;
    check_m(m)?;
    let n_of = |e: u64| -> Result<u128> { Ok(pow_i128(q.q(), 2 * e)? as u128 - 1) };
    let n_d = n_of(d)?;
    let p_order = n_d / arith::gcd_u128(m as u128, n_d);
    let mut roots = 0i128;
    for e in arith::divisors(d) {
        let mu = mobius(d / e) as i128;
        roots += mu * arith::gcd_u128(n_of(e)?, p_order) as i128;
        if d % 2 == 1 {
            let norm_one = pow_i128(q.q(), e)? as u128 + 1;
            roots -= mu * arith::gcd_u128(norm_one, p_order) as i128;
        }
    }
    let den = 2 * d as i128;
    if roots % den != 0 {
        return Err(Error::Inconsistency(format!(
            "R̃_{m}({q},{d}): {roots} roots do not split into pairs"
        )));
    }
    to_count(roots / den, "R̃_M")
}

/// `R̃_M(q,d)` by enumerating the roots of degree-`d` irreducibles in
/// `F_{q^{2d}}`: a pair member qualifies iff its root is an `M`-th power
/// there, i.e. iff `g(x^M)` has an irreducible factor of degree `d`.
pub fn count_mpower_pairs_by_roots(q: PrimePower, d: u64, m: u64, bound: u64) -> Result<u64> {
    check_d(d)?;
    check_m(m)?;
    let k = u32::try_from(d).map_err(|_| Error::Overflow(format!("degree {d}")))?;
    let field = gf::field_for(q, k, bound)?;
    let qsize = q.q() * q.q();

    let mut is_power = vec![false; field.size() as usize];
    for b in field.elements().skip(1) {
        is_power[field.power_map(b, m).index() as usize] = true;
    }

    let mut roots = 0u64;
    for a in field.elements().skip(1) {
        if field.degree_over(a, qsize) != d {
            continue;
        }
        // a is a root of a SCIM polynomial iff a^{-q} is a Galois conjugate of a
        let tilde_root = field.inv(field.conj(a)).expect("nonzero");
        let self_conjugate = (0..d).any(|j| field.frobenius_pow(a, qsize, j) == tilde_root);
        if !self_conjugate && is_power[a.index() as usize] {
            roots += 1;
        }
    }
    if roots % (2 * d) != 0 {
        return Err(Error::Inconsistency(format!(
            "{roots} qualifying roots do not split into pairs of degree {d}"
        )));
    }
    Ok(roots / (2 * d))
}

/// `S̃′_M(d,q) = Ñ(q,d) − Ñ_M(q,d)`: SCIM polynomials that are not M̃-power.
pub fn s_tilde_prime(q: PrimePower, d: u64, m: u64) -> Result<u64> {
    let all = count_scim(q, d)?;
    let powers = count_mtilde_scim(q, d, m)?;
    all.checked_sub(powers)
        .ok_or_else(|| Error::Inconsistency(format!("Ñ_{m}({q},{d}) = {powers} exceeds Ñ = {all}")))
}

/// `S′_M(d,q) = R̃(q,d) − R̃_M(q,d)`: pairs that are not M-power.
pub fn s_prime(q: PrimePower, d: u64, m: u64) -> Result<u64> {
    let all = count_pairs(q, d)?;
    let powers = count_mpower_pairs(q, d, m)?;
    all.checked_sub(powers)
        .ok_or_else(|| Error::Inconsistency(format!("R̃_{m}({q},{d}) = {powers} exceeds R̃ = {all}")))
}

/// Number of SCIM polynomials of degree `d`, by exhaustive classification.
pub fn enumerate_scim(ring: &PolyRing, d: usize) -> u64 {
    ring.polys_of_class(d, PolyClass::Scim).len() as u64
}

/// Number of M̃-power SCIM polynomials of degree `d`, by factoring `f(x^M)`
/// for every SCIM `f`.
pub fn enumerate_mtilde_scim(ring: &PolyRing, d: usize, m: u64) -> Result<u64> {
    let mut n = 0;
    for f in ring.polys_of_class(d, PolyClass::Scim) {
        if ring.is_mtilde_power(&f, m)? {
            n += 1;
        }
    }
    Ok(n)
}

/// `R̃_M` by factoring `g(x^M)` for every pair member `g`.
pub fn enumerate_mpower_pairs(ring: &PolyRing, d: usize, m: u64) -> Result<u64> {
    let mut n = 0;
    for g in ring.polys_of_class(d, PolyClass::PairMember) {
        if ring.is_m_power_pair(&g, m)? {
            n += 1;
        }
    }
    if n % 2 != 0 {
        return Err(Error::Inconsistency("pair members not closed under tilde".into()));
    }
    Ok(n / 2)
}

/// One row of the count table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRecord {
    pub q: u64,
    pub d: u64,
    pub m: u64,
    pub n_tilde: u64,
    pub n_tilde_m: u64,
    pub r_tilde: u64,
    pub r_tilde_m: u64,
    pub s_tilde_prime: u64,
    pub s_prime: u64,
}

impl CountRecord {
    pub fn compute(q: PrimePower, d: u64, m: u64) -> Result<Self> {
        let n_tilde = count_scim(q, d)?;
        let n_tilde_m = count_mtilde_scim(q, d, m)?;
        let r_tilde = count_pairs(q, d)?;
        let r_tilde_m = count_mpower_pairs(q, d, m)?;
        let rec = CountRecord {
            q: q.q(),
            d,
            m,
            n_tilde,
            n_tilde_m,
            r_tilde,
            r_tilde_m,
            s_tilde_prime: n_tilde.wrapping_sub(n_tilde_m),
            s_prime: r_tilde.wrapping_sub(r_tilde_m),
        };
        rec.check()?;
        Ok(rec)
    }

    pub fn check(&self) -> Result<()> {
        let ok = self.n_tilde_m <= self.n_tilde
            && self.r_tilde_m <= self.r_tilde
            && self.s_tilde_prime == self.n_tilde - self.n_tilde_m
            && self.s_prime == self.r_tilde - self.r_tilde_m;
        if ok {
            Ok(())
        } else {
            Err(Error::Inconsistency(format!("count record invariants fail: {self:?}")))
        }
    }
}

/// `true` when every nonzero element of `F_{q^{2d}}` is an `M`-th power.
pub fn power_map_is_bijective(q: PrimePower, d: u64, m: u64) -> Result<bool> {
    let order = pow_i128(q.q(), 2 * d)? as u128 - 1;
    Ok(arith::gcd_u128(m as u128, order) == 1)
}
