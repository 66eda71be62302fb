//! Truncated power series with exact rational coefficients, and the orders
//! of the finite unitary and general linear groups.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Power series `Σ_{n ≤ T} a_n z^n` over `Q`, truncated at `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(t: usize) -> Self {
        Series { coeffs: vec![BigRational::zero(); t + 1] }
    }

    pub fn one(t: usize) -> Self {
        Self::monomial(BigRational::one(), 0, t)
    }

    /// `c·z^n`, or zero if `n > t`.
    pub fn monomial(c: BigRational, n: usize, t: usize) -> Self {
        let mut s = Self::zero(t);
        if n <= t {
            s.coeffs[n] = c;
        }
        s
    }

    /// Takes coefficients `a_0, a_1, …`, padding or truncating to `t`.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, t: usize) -> Self {
        coeffs.resize(t + 1, BigRational::zero());
        Series { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn same_truncation(&self, other: &Series) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::InvalidArgument(format!(
                "truncation mismatch: {} vs {}",
                self.truncation(),
                other.truncation()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.same_truncation(other)?;
        Ok(Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `z^k`, dropping what falls past the truncation.
    pub fn shift(&self, k: usize) -> Series {
        let t = self.truncation();
        let mut s = Self::zero(t);
        for n in k..=t {
            s.coeffs[n] = self.coeffs[n - k].clone();
        }
        s
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.same_truncation(other)?;
        let t = self.truncation();
        let mut out = Self::zero(t);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=t - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Series {
        let mut result = Self::one(self.truncation());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("equal truncation");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("equal truncation");
            }
        }
        result
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

fn binomial(n: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// `(1 + c·z^d)^e` for `e ≥ 0`; `(1 − c·z^d)^e` for `e < 0`.
pub fn binom_factor(d: usize, c: &BigRational, e: i64, t: usize) -> Series {
    assert!(d >= 1, "binom_factor needs d ≥ 1");
    let mut s = Series::zero(t);
    let mut c_pow = BigRational::one();
    for k in 0..=(t / d) as u64 {
        let coeff = if e >= 0 {
            binomial(&BigInt::from(e), k)
        } else {
            // (1 - x)^{-n} = Σ C(n + k - 1, k) x^k
            binomial(&BigInt::from(-e + k as i64 - 1), k)
        };
        if coeff.is_zero() {
            break;
        }
        s.coeffs[k as usize * d] = BigRational::from_integer(coeff) * &c_pow;
        c_pow *= c;
    }
    s
}

/// `1 + Σ_{m ≥ 1, d·m·step ≤ T} z^{d·m·step} / denom(m)`.
pub fn euler_factor<F>(d: usize, step: usize, t: usize, denom: F) -> Result<Series>
where
    F: Fn(usize) -> BigRational,
{
    if d == 0 || step == 0 {
        return Err(Error::InvalidArgument("euler_factor needs d, step ≥ 1".into()));
    }
    let mut s = Series::one(t);
    let mut m = 1;
    while d * m * step <= t {
        let den = denom(m);
        if den.is_zero() {
            return Err(Error::InvalidArgument(format!("zero denominator at m = {m}")));
        }
        s.coeffs[d * m * step] = den.recip();
        m += 1;
    }
    Ok(s)
}

/// `|U(n, q)| = q^{n(n-1)/2} Π_{i=1..n} (q^i − (−1)^i)`, the unitary group
/// over `F_{q²}`.
pub fn group_order_u(n: u32, q: &BigUint) -> BigUint {
    let qi = BigInt::from(q.clone());
    let mut acc = num_traits::pow(qi.clone(), (n as usize * n.saturating_sub(1) as usize) / 2);
    let mut qpow = BigInt::one();
    for i in 1..=n {
        qpow *= &qi;
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        acc *= &qpow - sign;
    }
    acc.to_biguint().expect("group orders are positive")
}

/// `|GL(m, Q)| = Π_{i=0..m-1} (Q^m − Q^i)`.
pub fn group_order_gl(m: u32, qsize: &BigUint) -> BigUint {
    let qm = num_traits::pow(qsize.clone(), m as usize);
    let mut acc = BigUint::one();
    let mut qi = BigUint::one();
    for _ in 0..m {
        acc *= &qm - &qi;
        qi *= qsize;
    }
    acc
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_biguint(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_series(v: &[i64], t: usize) -> Series {
        Series::from_coeffs(v.iter().map(|&x| rat(x, 1)).collect(), t)
    }

    #[test]
    fn ring_operations() {
        let s = int_series(&[3, 1, 4, 1, 5, 9], 5);
        assert_eq!(Series::one(5).mul(&s).unwrap(), s);
        let a = int_series(&[1, 1], 5);
        let b = int_series(&[1, -1], 5);
        assert_eq!(a.mul(&b).unwrap(), int_series(&[1, 0, -1], 5));
        assert!(s.add(&s.neg()).unwrap().is_zero());
        assert!(s.add(&Series::one(4)).is_err());
        assert_eq!(a.shift(5), int_series(&[0, 0, 0, 0, 0, 1], 5));
    }

    #[test]
    fn binomial_factor_examples() {
        assert_eq!(binom_factor(1, &rat(1, 1), 2, 3), int_series(&[1, 2, 1], 3));
        assert_eq!(binom_factor(2, &rat(1, 1), -1, 6), int_series(&[1, 0, 1, 0, 1, 0, 1], 6));
        assert_eq!(
            binom_factor(1, &rat(1, 3), 1, 2),
            Series::from_coeffs(vec![rat(1, 1), rat(1, 3)], 2)
        );
        assert_eq!(binom_factor(3, &rat(1, 1), 0, 5), Series::one(5));
    }

    #[test]
    fn binomial_factor_inverse_pairs() {
        for d in 1..4 {
            for c in [rat(1, 1), rat(1, 3), rat(-2, 5)] {
                for e in 0..5i64 {
                    // (1 + cz^d)^e · (1 + cz^d)^{-e} expressed with the negated constant
                    let a = binom_factor(d, &c, e, 10);
                    let b = binom_factor(d, &(-c.clone()), -e, 10);
                    assert_eq!(a.mul(&b).unwrap(), Series::one(10), "d={d} e={e}");
                }
            }
        }
    }

    #[test]
    fn power_matches_repeated_product() {
        let s = int_series(&[1, 2, 0, -1], 8);
        let mut acc = Series::one(8);
        for e in 0..7 {
            assert_eq!(s.pow(e), acc);
            acc = acc.mul(&s).unwrap();
        }
    }

    #[test]
    fn unitary_orders() {
        let two = BigUint::from(2u32);
        assert_eq!(group_order_u(0, &two), BigUint::one());
        assert_eq!(group_order_u(1, &two), BigUint::from(3u32));
        assert_eq!(group_order_u(2, &two), BigUint::from(18u32));
        assert_eq!(group_order_u(3, &two), BigUint::from(648u32));
        assert_eq!(group_order_u(1, &BigUint::from(3u32)), BigUint::from(4u32));
        assert_eq!(group_order_u(2, &BigUint::from(3u32)), BigUint::from(96u32));
        // needs more than 64 bits
        assert!(group_order_u(12, &BigUint::from(3u32)).bits() > 64);
    }

    #[test]
    fn linear_orders() {
        assert_eq!(group_order_gl(1, &BigUint::from(4u32)), BigUint::from(3u32));
        assert_eq!(group_order_gl(2, &BigUint::from(4u32)), BigUint::from(180u32));
        assert_eq!(group_order_gl(0, &BigUint::from(7u32)), BigUint::one());
    }

    #[test]
    fn euler_factor_examples() {
        let u = |m: usize| rat_from_biguint(&group_order_u(m as u32, &BigUint::from(2u32)));
        assert_eq!(
            euler_factor(1, 1, 2, u).unwrap(),
            Series::from_coeffs(vec![rat(1, 1), rat(1, 3), rat(1, 18)], 2)
        );
        assert_eq!(euler_factor(2, 3, 5, u).unwrap(), Series::one(5));
        let u3 = |m: usize| rat_from_biguint(&group_order_u(3 * m as u32, &BigUint::from(2u32)));
        assert_eq!(
            euler_factor(1, 3, 3, u3).unwrap(),
            Series::from_coeffs(vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 648)], 3)
        );
        assert!(euler_factor(1, 1, 2, |_| rat(0, 1)).is_err());
    }
}
