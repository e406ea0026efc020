use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// Stored sparsely; zero coefficients are never kept, so the zero polynomial
/// is the empty map and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// The variable itself (L or t, depending on context).
    pub fn var() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::monomial(c.into(), 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: u32) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        IntPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients `c[0] + c[1] x + ...`.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(c: &[T]) -> Self {
        let mut p = IntPoly::zero();
        for (i, v) in c.iter().enumerate() {
            p.add_term(i as u32, v.clone().into());
        }
        p
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: u32) -> Self {
        &IntPoly::monomial(1, n) - &IntPoly::one()
    }

    pub fn from_map(map: BTreeMap<u32, BigInt>) -> Self {
        let coeffs = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        IntPoly { coeffs }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.values().next_back().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    fn add_term(&mut self, exp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: u32) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides every coefficient by `c`, returning `None` unless all divisions are exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut out = BTreeMap::new();
        for (e, v) in &self.coeffs {
            let (qt, r) = v.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.insert(*e, qt);
        }
        Some(IntPoly { coeffs: out })
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c).expect("content divides every coefficient")
    }

    /// Division with remainder, valid whenever each step's leading coefficient is
    /// divisible by `lc(d)` (always the case for monic `d`). Returns `None` otherwise.
    pub fn div_rem(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dd = d.degree()?;
        let lc = d.leading_coeff();
        let mut rem = self.clone();
        let mut quot = IntPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let (c, r) = rem.leading_coeff().div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let term = IntPoly::monomial(c, rd - dd);
            rem = &rem - &(&term * d);
            quot = &quot + &term;
        }
        Some((quot, rem))
    }

    /// Exact quotient `self / d` in Z[x], or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        match self.div_rem(d) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder: `lc(d)^k * self mod d` with `k = deg self - deg d + 1`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.leading_coeff();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff();
            rem = &rem.scale(&lc) - &d.shift(rd - dd).scale(&c);
        }
        rem
    }

    /// Greatest common divisor in Z[x], normalized primitive with positive
    /// leading coefficient times the gcd of the contents.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&content)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut last = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (e, c) in self.coeffs.iter().rev() {
            acc *= num_traits::pow(x.clone(), (last - e) as usize);
            acc += c;
            last = *e;
        }
        acc * num_traits::pow(x.clone(), last as usize)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut last = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (e, c) in self.coeffs.iter().rev() {
            acc *= num_traits::pow(x.clone(), (last - e) as usize);
            acc += Rational::from_integer(c.clone());
            last = *e;
        }
        acc * num_traits::pow(x.clone(), last as usize)
    }

    /// Coefficient vector reversed (`x^d p(1/x)`), used by the palindromic check.
    pub fn reversed(&self) -> IntPoly {
        let d = match self.degree() {
            Some(d) => d,
            None => return IntPoly::zero(),
        };
        IntPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (d - e, c.clone())).collect(),
        }
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.to_string_var("x"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                *acc.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        IntPoly::from_map(acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Emitted in numeric exponent order, not string order.
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            m.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (e, c) in raw {
            let e: u32 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            map.insert(e, c);
        }
        Ok(IntPoly::from_map(map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c)
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[1, 0, 3]).degree(), Some(2));
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (x^2-1) and (x^3-1) share x-1.
        let g = IntPoly::x_pow_minus_one(2).gcd(&IntPoly::x_pow_minus_one(3));
        assert_eq!(g, p(&[-1, 1]));
        let a = &p(&[1, 1]) * &p(&[2, 0, 3]);
        let b = &p(&[1, 1]) * &p(&[5, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn gcd_keeps_common_content() {
        assert_eq!(p(&[4, 4]).gcd(&p(&[6, 6])), p(&[2, 2]));
    }

    #[test]
    fn exact_division() {
        let a = &p(&[-1, 1]) * &p(&[1, 1, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[-1, 1])), None);
    }

    #[test]
    fn evaluation() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.eval_int(&BigInt::from(2)), BigInt::from(17));
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(f.eval(&half), Rational::new(11.into(), 4.into()));
        assert_eq!(p(&[0, 0, 1]).eval_int(&BigInt::from(3)), BigInt::from(9));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(p(&[1, 1]).to_string(), "t+1");
        assert_eq!(p(&[0, -2, 0, 1]).to_string_var("L"), "L^3-2L");
        let json = serde_json::to_string(&p(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 5, 0, 7])).unwrap();
        assert_eq!(json, r#"{"0":"1","10":"5","12":"7"}"#);
        let back: IntPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 5, 0, 7]));
    }
}
