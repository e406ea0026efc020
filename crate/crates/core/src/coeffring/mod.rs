//! Exact scalars: rationals, integer polynomials in L (or t), the localized
//! ring of motivic classes, Gaussian multinomials and evaluation maps.

mod motivic;
mod poly;

pub use motivic::{cyclotomic, is_admissible_denominator, MotivicScalar};
pub use poly::IntPoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Rational from a pair of machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"num/den"`, always with an explicit denominator.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::validation("rational", format!("cannot parse {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Coefficients usable in twisted series and class functions.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_rational_int(n: &BigInt) -> Self;
    /// Integer power, negative exponents allowed for invertible elements.
    fn powi(&self, n: i64) -> Result<Self>;
    fn neg(&self) -> Self;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational_int(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 && Zero::is_zero(self) {
            return Err(Error::domain("negative power of zero"));
        }
        Ok(num_traits::Pow::pow(self.clone(), n as i32))
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(rational_to_string(self))
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(BigInt::from(n.as_i64().unwrap()))),
            _ => Err(Error::validation("value", "expected a rational string")),
        }
    }
}

impl Scalar for MotivicScalar {
    fn zero() -> Self {
        MotivicScalar::zero()
    }
    fn one() -> Self {
        MotivicScalar::one()
    }
    fn is_zero(&self) -> bool {
        MotivicScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MotivicScalar::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MotivicScalar::mul(self, other)
    }
    fn from_rational_int(n: &BigInt) -> Self {
        MotivicScalar::from_int(n.clone())
    }
    fn powi(&self, n: i64) -> Result<Self> {
        self.pow(n)
    }
    fn neg(&self) -> Self {
        MotivicScalar::neg(self)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("motivic scalars serialize")
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::validation("value", e.to_string()))
    }
}

/// `(L^n - 1)(L^{n-1} - 1)...(L - 1)`.
pub fn q_factorial(n: u32) -> IntPoly {
    (1..=n).fold(IntPoly::one(), |acc, i| &acc * &IntPoly::x_pow_minus_one(i))
}

/// `|GL_N|` as a polynomial: `L^{N(N-1)/2} * prod_{n=1}^{N} (L^n - 1)`.
pub fn gl_order_poly(n: u32) -> IntPoly {
    q_factorial(n).shift(n * n.saturating_sub(1) / 2)
}

/// The class of GL_N in the Grothendieck ring.
pub fn gl_class(n: u32) -> MotivicScalar {
    MotivicScalar::from_poly(gl_order_poly(n))
}

fn check_composition(r: u32, delta: &[u32]) -> Result<()> {
    if delta.contains(&0) {
        return Err(Error::validation("delta", "entries must be positive"));
    }
    let s: u32 = delta.iter().sum();
    if s != r {
        return Err(Error::validation(
            "delta",
            format!("entries sum to {s}, expected r = {r}"),
        ));
    }
    Ok(())
}

/// Gaussian multinomial `[r]! / prod [delta_i]!`, the point count of the
/// partial flag variety of type `delta`.
pub fn gaussian_multinomial(r: u32, delta: &[u32]) -> Result<IntPoly> {
    check_composition(r, delta)?;
    let den = delta
        .iter()
        .fold(IntPoly::one(), |acc, &d| &acc * &q_factorial(d));
    q_factorial(r)
        .div_exact(&den)
        .ok_or_else(|| Error::consistency("Gaussian multinomial division was not exact"))
}

/// Order of the parabolic subgroup of block upper-triangular matrices of type `delta`:
/// `L^{sum_{i<j} delta_i delta_j} * prod |GL_{delta_i}|`.
pub fn parabolic_order_poly(delta: &[u32]) -> IntPoly {
    let mut off = 0u32;
    for i in 0..delta.len() {
        for j in i + 1..delta.len() {
            off += delta[i] * delta[j];
        }
    }
    delta
        .iter()
        .fold(IntPoly::one(), |acc, &d| &acc * &gl_order_poly(d))
        .shift(off)
}

/// Ordinary multinomial coefficient `r! / prod delta_i!`.
pub fn multinomial(delta: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut n = 0u32;
    for &d in delta {
        for k in 1..=d {
            n += 1;
            acc = acc * BigInt::from(n) / BigInt::from(k);
        }
    }
    acc
}
