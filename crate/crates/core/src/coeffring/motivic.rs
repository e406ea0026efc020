use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntPoly, Rational};
use crate::error::{Error, Result};

/// Element of Z[L][L^-1, (L^n - 1)^-1] stored as a reduced fraction.
///
/// Canonical form: gcd(num, den) = 1, the denominator is primitive with a
/// positive leading coefficient, and it is a product of L and cyclotomic
/// polynomials (hence monic). The numerator keeps its integer content.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MotivicScalar {
    num: IntPoly,
    den: IntPoly,
}

#[derive(Deserialize)]
struct RawScalar {
    num: IntPoly,
    den: IntPoly,
}

impl<'de> Deserialize<'de> for MotivicScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawScalar::deserialize(d)?;
        MotivicScalar::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

fn cyclotomic_cache() -> &'static Mutex<BTreeMap<u32, IntPoly>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// The m-th cyclotomic polynomial.
pub fn cyclotomic(m: u32) -> IntPoly {
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut p = IntPoly::x_pow_minus_one(m);
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p
                .div_exact(&cyclotomic(d))
                .expect("cyclotomic factors divide x^m - 1");
        }
    }
    cyclotomic_cache().lock().unwrap().insert(m, p.clone());
    p
}

fn euler_phi(mut m: u32) -> u32 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// True iff `den` (primitive, positive leading coefficient) divides some
/// `L^a * prod (L^{n_i} - 1)`, i.e. is L^a times a product of cyclotomic polynomials.
pub fn is_admissible_denominator(den: &IntPoly) -> bool {
    let v = match den.valuation() {
        Some(v) => v,
        None => return false,
    };
    let mut rem = IntPoly::from_map(den.terms().map(|(e, c)| (e - v, c.clone())).collect());
    if !rem.is_monic() {
        return false;
    }
    let deg = rem.degree().unwrap_or(0);
    if deg == 0 {
        return true;
    }
    // phi(m) >= sqrt(m/2), so phi(m) <= deg forces m <= 2 deg^2.
    let bound = 2 * deg * deg + 2;
    for m in 1..=bound {
        if euler_phi(m) > rem.degree().unwrap_or(0) {
            continue;
        }
        let c = cyclotomic(m);
        while let Some(q) = rem.div_exact(&c) {
            rem = q;
        }
        if rem.is_one() {
            return true;
        }
    }
    rem.is_one()
}

impl MotivicScalar {
    /// Normalizes `num/den` and checks the denominator shape.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        let s = Self::normalize(num, den)?;
        if !is_admissible_denominator(&s.den) {
            return Err(Error::domain(format!(
                "denominator {} is not a product of L and (L^n - 1) factors",
                s.den.to_string_var("L")
            )));
        }
        Ok(s)
    }

    fn normalize(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den).primitive_part();
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let mut c = den.content();
        if den.leading_coeff().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            den = den.div_scalar_exact(&c).expect("content divides");
            num = num.div_scalar_exact(&c).ok_or_else(|| {
                Error::domain(format!(
                    "denominator has integer content {c}, which is not invertible"
                ))
            })?;
        }
        Ok(MotivicScalar { num, den })
    }

    /// Normalization for results of ring operations on admissible inputs,
    /// whose denominators are admissible by construction.
    fn normalized(num: IntPoly, den: IntPoly) -> Self {
        Self::normalize(num, den).expect("ring operations preserve admissible denominators")
    }

    pub fn zero() -> Self {
        MotivicScalar {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    /// The Lefschetz class L (equivalently t).
    pub fn l() -> Self {
        Self::from_poly(IntPoly::var())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_poly(IntPoly::constant(n))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        MotivicScalar {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// `L^n` for any integer `n`.
    pub fn l_pow(n: i64) -> Self {
        if n >= 0 {
            Self::from_poly(IntPoly::monomial(1, n as u32))
        } else {
            MotivicScalar {
                num: IntPoly::one(),
                den: IntPoly::monomial(1, (-n) as u32),
            }
        }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&IntPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(&self.num + &other.num, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::normalized(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MotivicScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Division; the quotient's denominator must again be admissible.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().div(self)
    }

    /// Integer power; negative exponents require an invertible base.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = n.unsigned_abs() as u32;
        Ok(MotivicScalar {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Specializes L to the rational `x`.
    pub fn evaluate_at(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::domain(format!(
                "denominator {} vanishes at {x}",
                self.den.to_string_var("L")
            )));
        }
        Ok(self.num.eval(x) / d)
    }

    /// The counting measure: substitutes L = q.
    pub fn evaluate(&self, q: u64) -> Result<Rational> {
        self.evaluate_at(&Rational::from_integer(BigInt::from(q)))
    }

    pub fn to_string_var(&self, var: &str) -> String {
        let n = self.num.to_string_var(var);
        if self.den.is_one() {
            return n;
        }
        let wrap = |s: String, p: &IntPoly| {
            if p.terms().count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{}/{}",
            wrap(n, &self.num),
            wrap(self.den.to_string_var(var), &self.den)
        )
    }
}

impl fmt::Display for MotivicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("L"))
    }
}

impl fmt::Debug for MotivicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MotivicScalar({})", self.to_string_var("L"))
    }
}

impl From<IntPoly> for MotivicScalar {
    fn from(p: IntPoly) -> Self {
        Self::from_poly(p)
    }
}
