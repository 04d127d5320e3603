//! Exact arithmetic in `Q` and the cyclotomic fields `Q(zeta_n)`.
//!
//! A [`Scalar`] is an element of `Q[x]/(Phi_n(x))` written in the power basis
//! `1, zeta_n, ..., zeta_n^(phi(n)-1)`. Operands of different orders are
//! embedded into `Q(zeta_lcm)` before combining. Results whose only nonzero
//! coefficient is the constant term are normalized back to order 1.

mod cyclotomic;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use cyclotomic::{
    inverse_mod_phi, lcm, poly_mul, power_table, reduce_mod_phi, totient, Poly,
};

pub use parse::parse_scalar;

/// Largest cyclotomic order accepted from user input.
pub const MAX_ORDER: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("cyclotomic order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u64),
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
}

/// An exact element of `Q(zeta_order)`.
#[derive(Clone)]
pub struct Scalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            order: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::from_rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar {
            order: 1,
            coeffs: vec![r],
        }
    }

    /// Builds `sum_i coeffs[i] * zeta_order^i`; any length is accepted and
    /// reduced modulo `Phi_order`.
    pub fn from_power_basis(order: u32, coeffs: Vec<BigRational>) -> Result<Self, ScalarError> {
        check_order(order as u64)?;
        let coeffs = if coeffs.is_empty() {
            vec![BigRational::zero()]
        } else {
            coeffs
        };
        let raw = reduce_mod_phi(coeffs, order);
        Ok(Self::canonical_from(order, raw))
    }

    /// `zeta_n^k` with `zeta_n = exp(2 pi i / n)`.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self, ScalarError> {
        check_order(n as u64)?;
        let k = k.rem_euclid(n as i64) as u64;
        let g = (n as u64).gcd(&k);
        let (n, k) = ((n as u64 / g) as u32, k / g);
        Ok(Self::reduced_root(n, k))
    }

    /// `zeta_n^k` for `gcd(n, k) = 1`, written in the smallest field that
    /// contains it.
    fn reduced_root(n: u32, k: u64) -> Self {
        match n {
            1 => Self::one(),
            2 => Self::from_integer(-1),
            _ if n % 4 == 2 => {
                // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
                let m = n / 2;
                let e = (k * ((m as u64 + 1) / 2)) % m as u64;
                let base = Self::reduced_root(m, e);
                if k % 2 == 1 {
                    -base
                } else {
                    base
                }
            }
            _ => Self::canonical_from(n, power_table(n)[k as usize].clone()),
        }
    }

    fn canonical_from(order: u32, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), totient(order));
        if coeffs.iter().skip(1).all(Zero::is_zero) {
            return Scalar {
                order: 1,
                coeffs: vec![coeffs.into_iter().next().unwrap()],
            };
        }
        if order % 4 == 2 {
            // Q(zeta_{2m}) = Q(zeta_m) for odd m; rewrite in the smaller field.
            let m = order / 2;
            let mut acc = Scalar::zero();
            for (i, c) in coeffs.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let root = Self::root_of_unity(order, i as i64).expect("valid order");
                acc = &acc + &root.scale(&c);
            }
            debug_assert!(acc.order == 1 || acc.order == m || m % acc.order == 0);
            return acc;
        }
        Scalar { order, coeffs }
    }

    /// Order `n` of the cyclotomic field this value is stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients in `Q(zeta_order)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    /// Power-basis coefficients after embedding into `Q(zeta_m)`; `order` must divide `m`.
    pub fn embed(&self, m: u32) -> Vec<BigRational> {
        assert!(
            m % self.order == 0,
            "cannot embed order {} into order {m}",
            self.order
        );
        if self.order == m {
            return self.coeffs.clone();
        }
        let step = (m / self.order) as usize;
        let table = power_table(m);
        let mut out = vec![BigRational::zero(); totient(m)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(table[i * step].iter()) {
                if !t.is_zero() {
                    *o += c * t;
                }
            }
        }
        out
    }

    fn scale(&self, r: &BigRational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn combine(&self, other: &Scalar, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Scalar {
        let m = lcm(self.order, other.order);
        let a = self.embed(m);
        let b = other.embed(m);
        let coeffs = a.iter().zip(b.iter()).map(|(x, y)| f(x, y)).collect();
        Self::canonical_from(m, coeffs)
    }

    fn multiply(&self, other: &Scalar) -> Scalar {
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let m = lcm(self.order, other.order);
        let prod: Poly = poly_mul(&self.embed(m), &other.embed(m));
        Self::canonical_from(m, reduce_mod_phi(prod, m))
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Scalar::from_rational(r.recip()));
        }
        let inv = inverse_mod_phi(&self.coeffs, self.order).ok_or(ScalarError::DivisionByZero)?;
        Ok(Self::canonical_from(self.order, inv))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power by square-and-multiply. Negative exponents invert first.
    pub fn pow(&self, m: i64) -> Result<Scalar, ScalarError> {
        if m < 0 && self.is_zero() {
            return Err(ScalarError::ZeroToNegativePower);
        }
        let mut base = if m < 0 { self.inv()? } else { self.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Writes this value as `c * zeta_n^k` when it is a rational multiple of a
    /// root of unity, with `(n, k)` in lowest terms and `n` not `2 mod 4`.
    pub fn as_monomial(&self) -> Option<(BigRational, u32, u64)> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some((r.clone(), 1, 0));
        }
        let table = power_table(self.order);
        for (k, t) in table.iter().enumerate() {
            let lead = t.iter().position(|c| !c.is_zero())?;
            if self.coeffs[lead].is_zero() {
                continue;
            }
            let c = &self.coeffs[lead] / &t[lead];
            if t.iter().zip(&self.coeffs).all(|(x, y)| &(x * &c) == y) {
                return Some(canonical_monomial(c, self.order, k as u64));
            }
        }
        None
    }
}

fn canonical_monomial(c: BigRational, n: u32, k: u64) -> (BigRational, u32, u64) {
    let g = (n as u64).gcd(&k);
    let (n, k) = ((n as u64 / g) as u32, k / g);
    match n {
        1 => (c, 1, 0),
        2 => (-c, 1, 0),
        _ if n % 4 == 2 => {
            let m = n / 2;
            let e = (k * ((m as u64 + 1) / 2)) % m as u64;
            let c = if k % 2 == 1 { -c } else { c };
            canonical_monomial(c, m, e)
        }
        _ => (c, n, k),
    }
}

fn check_order(n: u64) -> Result<(), ScalarError> {
    if n == 0 {
        Err(ScalarError::ZeroOrder)
    } else if n > MAX_ORDER as u64 {
        Err(ScalarError::OrderTooLarge(n))
    } else {
        Ok(())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() || other.is_rational() {
            // canonical form keeps rationals at order 1
            return false;
        }
        let m = lcm(self.order, other.order);
        self.embed(m) == other.embed(m)
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.order == rhs.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Scalar::canonical_from(self.order, coeffs);
        }
        self.combine(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if self.order == rhs.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect();
            return Scalar::canonical_from(self.order, coeffs);
        }
        self.combine(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.multiply(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_term(c: &BigRational, n: u32, k: u64) -> String {
    if n == 1 || k == 0 {
        return fmt_rational(c);
    }
    let root = if k == 1 {
        format!("zeta({n})")
    } else {
        format!("zeta({n})^{k}")
    };
    if c.is_one() {
        root
    } else if (-c).is_one() {
        format!("-{root}")
    } else {
        format!("{}*{root}", fmt_rational(c))
    }
}

/// Prints in the scalar grammar: a single product `c*zeta(n)^k` when the
/// value is a rational multiple of a root of unity, otherwise a sum of such
/// products over the power basis.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if let Some((c, n, k)) = self.as_monomial() {
            return f.write_str(&fmt_term(&c, n, k));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = fmt_term(c, self.order, i as u64);
            if first {
                f.write_str(&term)?;
                first = false;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, "-{rest}")?;
            } else {
                write!(f, "+{term}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl std::str::FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

/// Converts a big integer exponent to a residue modulo `n`.
pub(crate) fn residue(e: &BigInt, n: u32) -> u64 {
    e.mod_floor(&BigInt::from(n)).to_u64().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d).unwrap()
    }

    fn zeta(n: u32, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn cube_roots_multiply_to_one() {
        assert_eq!(zeta(3, 1) * zeta(3, 2), Scalar::one());
    }

    #[test]
    fn inverse_of_zeta3_in_power_basis() {
        let inv = zeta(3, 1).inv().unwrap();
        // zeta_3^2 = -1 - zeta_3 modulo x^2 + x + 1
        let expected =
            Scalar::from_power_basis(3, vec![BigRational::from_integer((-1).into()); 2]).unwrap();
        assert_eq!(inv, expected);
        assert_eq!(inv, zeta(3, 2));
        assert!((&inv * &zeta(3, 1)).is_one());
    }

    #[test]
    fn roots_of_unity_values() {
        assert_eq!(zeta(2, 1), Scalar::from_integer(-1));
        assert_eq!(zeta(4, 2), Scalar::from_integer(-1));
        assert!(zeta(8, 1).pow(8).unwrap().is_one());
        assert_eq!(zeta(4, 2).order(), 1);
        // zeta_6 = -zeta_3^2 lives in Q(zeta_3)
        assert_eq!(zeta(6, 1).order(), 3);
        assert_eq!(zeta(6, 1), -zeta(3, 2));
        assert_eq!(zeta(6, 1).pow(6).unwrap(), Scalar::one());
    }

    #[test]
    fn pow_cases() {
        assert_eq!(Scalar::from_integer(-1).pow(3).unwrap(), Scalar::from_integer(-1));
        assert_eq!(zeta(3, 1).pow(-1).unwrap(), zeta(3, 2));
        assert!(q(7, 3).pow(0).unwrap().is_one());
        assert_eq!(
            Scalar::zero().pow(-2),
            Err(ScalarError::ZeroToNegativePower)
        );
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
        assert_eq!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn mixed_orders_embed_into_lcm() {
        let s = zeta(3, 1) * zeta(4, 1);
        assert_eq!(s.order(), 12);
        assert_eq!(s, zeta(12, 7));
        // zeta_8^2 computed in Q(zeta_8) equals zeta_4
        let z = zeta(8, 1) * zeta(8, 1);
        assert_eq!(z.order(), 8);
        assert_eq!(z, zeta(4, 1));
        assert_eq!(z.to_string(), "zeta(4)");
    }

    #[test]
    fn printing() {
        assert_eq!(q(5, 6).to_string(), "5/6");
        assert_eq!(Scalar::from_integer(-3).to_string(), "-3");
        assert_eq!((-zeta(8, 3)).to_string(), "-zeta(8)^3");
        assert_eq!((q(2, 3) * zeta(8, 3)).to_string(), "2/3*zeta(8)^3");
        assert_eq!((Scalar::one() + zeta(8, 1)).to_string(), "1+zeta(8)");
        assert_eq!((Scalar::one() - zeta(8, 1)).to_string(), "1-zeta(8)");
        assert_eq!(zeta(3, 2).to_string(), "zeta(3)^2");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn cyclotomic_relation_holds() {
        for n in [3u32, 5, 8, 9, 12] {
            let z = zeta(n, 1);
            let phi = super::cyclotomic::cyclotomic_poly(n);
            let mut acc = Scalar::zero();
            for (i, c) in phi.iter().enumerate() {
                let c = Scalar::from_rational(BigRational::from_integer(c.clone()));
                acc = acc + c * z.pow(i as i64).unwrap();
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta_{n}) != 0");
        }
    }
}
