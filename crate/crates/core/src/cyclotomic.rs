//! Exact arithmetic in the ring of integers Z[ζ_p] of the p-th cyclotomic field.
//!
//! Elements are kept in the integral basis 1, ζ, …, ζ^{p-2}; a product is
//! first formed on all p powers of ζ and then folded back with
//! 1 + ζ + ⋯ + ζ^{p-1} = 0. For p = 2 the ring is just Z (ζ = −1).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// Folds a vector of coefficients of ζ^0..ζ^{p-1} into canonical form.
    pub fn canonicalize(p: u32, raw: &[BigInt]) -> CycInt {
        assert_eq!(raw.len(), p as usize, "need one coefficient per power of zeta");
        let last = &raw[p as usize - 1];
        let coeffs = raw[..p as usize - 1].iter().map(|c| c - last).collect();
        CycInt { p, coeffs }
    }

    /// `Σ_j counts[j] ζ^j` for a length-p integer vector.
    pub fn from_counts(p: u32, counts: &[i64]) -> CycInt {
        assert_eq!(counts.len(), p as usize, "need one count per power of zeta");
        let last = counts[p as usize - 1];
        let coeffs = counts[..p as usize - 1].iter().map(|&c| BigInt::from(c - last)).collect();
        CycInt { p, coeffs }
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> CycInt {
        let mut coeffs = vec![BigInt::zero(); p as usize - 1];
        coeffs[0] = n.into();
        CycInt { p, coeffs }
    }

    pub fn zero(p: u32) -> CycInt {
        CycInt::from_int(p, 0)
    }

    pub fn one(p: u32) -> CycInt {
        CycInt::from_int(p, 1)
    }

    /// `ζ^k`, any integer k.
    pub fn zeta_pow(p: u32, k: i64) -> CycInt {
        let mut raw = vec![BigInt::zero(); p as usize];
        raw[k.rem_euclid(p as i64) as usize] = BigInt::one();
        CycInt::canonicalize(p, &raw)
    }

    pub fn zeta(p: u32) -> CycInt {
        CycInt::zeta_pow(p, 1)
    }

    /// Builds from canonical coefficients (length p − 1).
    pub fn from_coeffs(p: u32, coeffs: Vec<BigInt>) -> Result<CycInt> {
        if coeffs.len() != p as usize - 1 {
            return Err(Error::LengthMismatch { left: coeffs.len(), right: p as usize - 1 });
        }
        Ok(CycInt { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(ToPrimitive::to_i64)
    }

    pub fn equals_rational(&self, n: impl Into<BigInt>) -> bool {
        self.as_integer() == Some(&n.into())
    }

    fn check(&self, other: &CycInt) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch { left: self.p, right: other.p });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let p = self.p as usize;
        let mut raw = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                raw[(i + j) % p] += a * b;
            }
        }
        Ok(CycInt::canonicalize(self.p, &raw))
    }

    pub fn scale(&self, n: impl Into<BigInt>) -> CycInt {
        let n = n.into();
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c * &n).collect() }
    }

    /// The automorphism ζ ↦ ζ^a.
    pub fn galois_sigma(&self, a: i64) -> Result<CycInt> {
        let p = self.p as i64;
        let a = a.rem_euclid(p);
        if a == 0 {
            return Err(Error::ZeroIndex);
        }
        let mut raw = vec![BigInt::zero(); p as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[(j as i64 * a % p) as usize] += c;
        }
        Ok(CycInt::canonicalize(self.p, &raw))
    }

    /// Complex conjugation, σ_{p-1}.
    pub fn conj(&self) -> CycInt {
        self.galois_sigma(self.p as i64 - 1).expect("p - 1 is a unit")
    }

    /// `Σ_{a ∈ F_p^*} σ_a(self)`, the trace down to Q.
    pub fn galois_sum(&self) -> Result<BigInt> {
        let mut acc = CycInt::zero(self.p);
        for a in 1..self.p as i64 {
            acc = acc + self.galois_sigma(a)?;
        }
        acc.as_integer().cloned().ok_or(Error::NonRationalResult)
    }

    /// `Π_a σ_a(self)`, a rational integer.
    pub fn norm(&self) -> BigInt {
        let mut acc = self.clone();
        for a in 2..self.p as i64 {
            acc = acc * self.galois_sigma(a).expect("nonzero index");
        }
        acc.as_integer().cloned().expect("norm is rational")
    }

    /// Divides every coefficient by `n`, failing unless all divide exactly.
    pub fn div_exact_int(&self, n: &BigInt) -> Result<CycInt> {
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return Err(Error::ExactDivisionFailed);
            }
            coeffs.push(q);
        }
        Ok(CycInt { p: self.p, coeffs })
    }

    /// `self / d` when the quotient lies in Z[ζ_p].
    ///
    /// Multiplies by the conjugates of `d` so the denominator becomes the
    /// rational norm N(d), then divides coefficientwise.
    pub fn exact_div(&self, d: &CycInt) -> Result<CycInt> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = self.clone();
        let mut norm = d.clone();
        for a in 2..self.p as i64 {
            let s = d.galois_sigma(a)?;
            num = num * s.clone();
            norm = norm * s;
        }
        let n = norm.as_integer().cloned().expect("norm is rational");
        num.div_exact_int(&n)
    }

    /// Numeric value under ζ ↦ e^{2πik/p}; for tests and diagnostics only.
    pub fn embed(&self, k: u32) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / self.p as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let ang = theta * j as f64;
            (re + c * ang.cos(), im + c * ang.sin())
        })
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                self.$checked(&rhs).expect("cyclotomic prime mismatch")
            }
        }
        impl<'a> $tr<&'a CycInt> for &'a CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &'a CycInt) -> CycInt {
                self.$checked(rhs).expect("cyclotomic prime mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            match j {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}·z")?,
                _ => write!(f, "{mag}·z^{j}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Coefficients go to JSON as numbers when they fit in i64, else as strings.
fn big_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

#[derive(Serialize, Deserialize)]
struct CycIntRepr {
    p: u32,
    coeffs: Vec<serde_json::Value>,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycIntRepr { p: self.p, coeffs: self.coeffs.iter().map(big_to_json).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycIntRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
                serde_json::Value::String(s) => s.parse().ok(),
                _ => None,
            })
            .collect::<Option<Vec<BigInt>>>()
            .ok_or_else(|| de::Error::custom("coefficients must be integers"))?;
        if repr.p < 2 {
            return Err(de::Error::custom("p must be prime"));
        }
        CycInt::from_coeffs(repr.p, coeffs).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_forms() {
        assert!(CycInt::canonicalize(3, &big(&[1, 1, 1])).is_zero());
        assert_eq!(CycInt::canonicalize(3, &big(&[0, 0, 1])).coeffs(), big(&[-1, -1]).as_slice());
        assert!(CycInt::canonicalize(2, &big(&[5, 3])).equals_rational(2));
    }

    #[test]
    fn ring_examples() {
        let z = CycInt::zeta(3);
        assert_eq!(&z * &z, CycInt::from_coeffs(3, big(&[-1, -1])).unwrap());
        let all: CycInt = (0..5).map(|k| CycInt::zeta_pow(5, k)).fold(CycInt::zero(5), |a, b| a + b);
        assert!(((CycInt::zeta(5) - CycInt::one(5)) * all).is_zero());
        let x = CycInt::from_coeffs(3, big(&[4, -7])).unwrap();
        assert_eq!(&x + &CycInt::zero(3), x);
        assert_eq!(x.checked_add(&CycInt::one(5)), Err(Error::PrimeMismatch { left: 3, right: 5 }));
    }

    #[test]
    fn galois_examples() {
        let z = CycInt::zeta(3);
        assert_eq!(z.galois_sigma(1).unwrap(), z);
        assert_eq!(z.galois_sigma(2).unwrap(), CycInt::zeta_pow(3, 2));
        assert_eq!(z.galois_sigma(0), Err(Error::ZeroIndex));
        assert_eq!(z.galois_sum().unwrap(), BigInt::from(-1));
        assert_eq!(CycInt::from_int(7, 5).galois_sum().unwrap(), BigInt::from(30));
        assert_eq!(CycInt::from_int(2, -9).galois_sum().unwrap(), BigInt::from(-9));
        assert!(!CycInt::zeta(5).equals_rational(0));
    }

    #[test]
    fn norms_and_division() {
        for p in [2u32, 3, 5, 7] {
            let d = CycInt::zeta(p) - CycInt::one(p);
            let expected = if p == 2 { -2 } else { p as i64 };
            assert_eq!(d.norm(), BigInt::from(expected));
            let x = CycInt::from_coeffs(p, big(&vec![3; p as usize - 1])).unwrap();
            assert_eq!((&x * &d).exact_div(&d).unwrap(), x);
        }
        let three = CycInt::from_int(5, 3);
        assert_eq!(CycInt::one(5).exact_div(&three), Err(Error::ExactDivisionFailed));
    }

    #[test]
    fn display_and_json() {
        let x = CycInt::from_coeffs(5, big(&[3, 0, -2, 1])).unwrap();
        assert_eq!(x.to_string(), "3 - 2·z^2 + 1·z^3");
        assert_eq!(CycInt::zero(3).to_string(), "0");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"p":5,"coeffs":[3,0,-2,1]}"#);
        assert_eq!(serde_json::from_str::<CycInt>(&json).unwrap(), x);
        let huge = CycInt::from_int(2, BigInt::from(10).pow(30));
        let back: CycInt = serde_json::from_str(&serde_json::to_string(&huge).unwrap()).unwrap();
        assert_eq!(back, huge);
    }
}
