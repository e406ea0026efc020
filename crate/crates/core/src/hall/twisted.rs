use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{bilinear, DEFAULT_TRUNCATION};
use crate::coeffring::{MotivicScalar, Rational, Scalar};
use crate::error::{Error, Result};

/// Truncated series `sum_alpha c_alpha T^alpha` over effective dimension vectors,
/// multiplied by `T^a T^b = zeta^{chi_op(a,b)} T^{a+b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedSeries<C: Scalar> {
    chi_op: Vec<Vec<i64>>,
    trunc: usize,
    zeta: C,
    coeffs: BTreeMap<Vec<usize>, C>,
}

impl TwistedSeries<Rational> {
    /// Counting model: `zeta = 1/q`.
    pub fn counting(chi_op: Vec<Vec<i64>>, q: u32, trunc: usize) -> Self {
        TwistedSeries::zero_with(chi_op, Rational::new(BigInt::from(1), BigInt::from(q)), trunc)
    }
}

impl TwistedSeries<MotivicScalar> {
    /// Motivic model: `zeta = L^{-1}`.
    pub fn motivic(chi_op: Vec<Vec<i64>>, trunc: usize) -> Self {
        TwistedSeries::zero_with(chi_op, MotivicScalar::l_pow(-1), trunc)
    }

    /// Applies `L -> q` coefficientwise, giving a counting series.
    pub fn evaluate(&self, q: u32) -> Result<TwistedSeries<Rational>> {
        let mut out = TwistedSeries::counting(self.chi_op.clone(), q, self.trunc);
        for (a, c) in &self.coeffs {
            out.insert(a.clone(), c.evaluate(q as u64)?)?;
        }
        Ok(out)
    }
}

impl<C: Scalar> TwistedSeries<C> {
    pub fn zero_with(chi_op: Vec<Vec<i64>>, zeta: C, trunc: usize) -> Self {
        TwistedSeries {
            chi_op,
            trunc,
            zeta,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn default_truncation(chi_op: Vec<Vec<i64>>, zeta: C) -> Self {
        TwistedSeries::zero_with(chi_op, zeta, DEFAULT_TRUNCATION)
    }

    /// `T^0`.
    pub fn unit_like(&self) -> Self {
        let mut u = self.empty_like();
        u.coeffs.insert(vec![0; self.rank()], C::one());
        u
    }

    pub fn empty_like(&self) -> Self {
        TwistedSeries::zero_with(self.chi_op.clone(), self.zeta.clone(), self.trunc)
    }

    /// `c T^alpha` in the same context.
    pub fn monomial_like(&self, alpha: Vec<usize>, c: C) -> Result<Self> {
        let mut m = self.empty_like();
        m.insert(alpha, c)?;
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.chi_op.len()
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn chi_op(&self) -> &[Vec<i64>] {
        &self.chi_op
    }

    pub fn zeta(&self) -> &C {
        &self.zeta
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, C> {
        &self.coeffs
    }

    pub fn coeff(&self, alpha: &[usize]) -> C {
        self.coeffs.get(alpha).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c` to the coefficient of `T^alpha`; terms above the truncation are dropped.
    pub fn insert(&mut self, alpha: Vec<usize>, c: C) -> Result<()> {
        if alpha.len() != self.rank() {
            return Err(Error::validation(
                "alpha",
                format!("expected {} entries, got {}", self.rank(), alpha.len()),
            ));
        }
        if alpha.iter().sum::<usize>() > self.trunc {
            return Ok(());
        }
        let v = self.coeff(&alpha).add(&c);
        if v.is_zero() {
            self.coeffs.remove(&alpha);
        } else {
            self.coeffs.insert(alpha, v);
        }
        Ok(())
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.chi_op != other.chi_op || self.trunc != other.trunc || self.zeta != other.zeta {
            return Err(Error::validation("series", "twisted series live in different contexts"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.insert(a.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.empty_like();
        for (a, v) in &self.coeffs {
            let w = v.mul(c);
            if !w.is_zero() {
                out.coeffs.insert(a.clone(), w);
            }
        }
        out
    }

    /// `(a b)(gamma) = sum_{alpha + beta = gamma} zeta^{chi_op(alpha, beta)} a(alpha) b(beta)`.
    pub fn twisted_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.empty_like();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let gamma: Vec<usize> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                if gamma.iter().sum::<usize>() > self.trunc {
                    continue;
                }
                let twist = self.zeta.powi(bilinear(&self.chi_op, a, b))?;
                out.insert(gamma, twist.mul(x).mul(y))?;
            }
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(a, c)| json!({"alpha": a, "value": c.to_json()}))
            .collect();
        json!({
            "chi_op": self.chi_op,
            "trunc": self.trunc,
            "zeta": self.zeta.to_json(),
            "coeffs": coeffs,
        })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::validation("series", m.to_string());
        let chi_op: Vec<Vec<i64>> = serde_json::from_value(v["chi_op"].clone()).map_err(|e| bad(&e.to_string()))?;
        if chi_op.iter().any(|r| r.len() != chi_op.len()) {
            return Err(bad("chi_op must be square"));
        }
        let trunc = v["trunc"].as_u64().ok_or_else(|| bad("missing trunc"))? as usize;
        let zeta = C::from_json(&v["zeta"])?;
        let mut out = TwistedSeries::zero_with(chi_op, zeta, trunc);
        for term in v["coeffs"].as_array().ok_or_else(|| bad("missing coeffs"))? {
            let alpha: Vec<usize> =
                serde_json::from_value(term["alpha"].clone()).map_err(|e| bad(&e.to_string()))?;
            if alpha.iter().sum::<usize>() > trunc {
                return Err(bad("term above truncation"));
            }
            out.insert(alpha, C::from_json(&term["value"])?)?;
        }
        Ok(out)
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for TwistedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(a, c)| {
                let exps: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                format!("({c}) T^({})", exps.join(","))
            })
            .collect();
        write!(f, "{} + O(|alpha| > {})", terms.join(" + "), self.trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;
    use crate::hall::chi_op_matrix;
    use crate::protoexact::Quiver;

    #[test]
    fn vect_square() {
        let s = TwistedSeries::counting(chi_op_matrix(&Quiver::a1()), 2, 6);
        let t = s.monomial_like(vec![1], rat(1, 1)).unwrap();
        let tt = t.twisted_mul(&t).unwrap();
        assert_eq!(tt.coeff(&[2]), rat(1, 2));
        assert_eq!(s.unit_like().twisted_mul(&t).unwrap(), t);
        assert_eq!(t.twisted_mul(&s.unit_like()).unwrap(), t);
    }

    #[test]
    fn a2_twist_ratio_is_l() {
        let s = TwistedSeries::motivic(chi_op_matrix(&Quiver::a2()), 6);
        let e1 = s.monomial_like(vec![1, 0], MotivicScalar::one()).unwrap();
        let e2 = s.monomial_like(vec![0, 1], MotivicScalar::one()).unwrap();
        let ab = e1.twisted_mul(&e2).unwrap().coeff(&[1, 1]);
        let ba = e2.twisted_mul(&e1).unwrap().coeff(&[1, 1]);
        assert_eq!(ba.div(&ab).unwrap(), MotivicScalar::l());
    }

    #[test]
    fn truncation_and_context() {
        let s = TwistedSeries::counting(chi_op_matrix(&Quiver::a1()), 3, 2);
        let t = s.monomial_like(vec![2], rat(1, 1)).unwrap();
        assert!(t.twisted_mul(&t).unwrap().is_zero());
        let other = TwistedSeries::counting(chi_op_matrix(&Quiver::a1()), 2, 2);
        assert!(t.twisted_mul(&other).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = TwistedSeries::motivic(chi_op_matrix(&Quiver::a2()), 4);
        let c = MotivicScalar::from_int(2).div(&crate::coeffring::gl_class(1)).unwrap();
        let x = s.monomial_like(vec![1, 1], c).unwrap();
        let back = TwistedSeries::<MotivicScalar>::from_json_value(&x.to_json_value()).unwrap();
        assert_eq!(back, x);
    }
}
