use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::coeffring::{gaussian_multinomial, parabolic_order_poly, MotivicScalar, Rational};
use crate::error::{Error, Result};
use crate::field::field;
use crate::linalg::{general_linear_group, Subspace};
use crate::protoexact::flags_of_type;

/// Type of a filtration of an `r`-dimensional space: graded dimensions `delta` and
/// strictly decreasing integer weights, `weights[k]` belonging to the `k`-th graded piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagType {
    pub r: usize,
    pub delta: Vec<usize>,
    pub weights: Vec<i64>,
}

impl FlagType {
    pub fn new(delta: Vec<usize>, weights: Vec<i64>) -> Result<Self> {
        if delta.is_empty() || delta.contains(&0) {
            return Err(Error::validation("delta", "entries must be positive"));
        }
        if weights.len() != delta.len() {
            return Err(Error::validation("weights", "need one weight per graded piece"));
        }
        if weights.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::validation("weights", "weights must be strictly decreasing"));
        }
        Ok(FlagType {
            r: delta.iter().sum(),
            delta,
            weights,
        })
    }

    /// Weights `n-1, ..., 1, 0`.
    pub fn unweighted(delta: Vec<usize>) -> Result<Self> {
        let n = delta.len() as i64;
        FlagType::new(delta, (0..n).rev().collect())
    }

    pub fn delta_u32(&self) -> Vec<u32> {
        self.delta.iter().map(|&d| d as u32).collect()
    }

    /// `sum_k weights[k] * v[k]`.
    pub fn degree(&self, v: &[usize]) -> i64 {
        self.weights.iter().zip(v).map(|(w, &x)| w * x as i64).sum()
    }

    pub fn to_json_value(&self) -> Value {
        json!({"r": self.r, "delta": self.delta, "weights": self.weights})
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let delta: Vec<usize> =
            serde_json::from_value(v["delta"].clone()).map_err(|e| Error::validation("delta", e.to_string()))?;
        let ft = match v.get("weights") {
            Some(w) => FlagType::new(
                delta,
                serde_json::from_value(w.clone()).map_err(|e| Error::validation("weights", e.to_string()))?,
            )?,
            None => FlagType::unweighted(delta)?,
        };
        if let Some(r) = v.get("r") {
            if r.as_u64() != Some(ft.r as u64) {
                return Err(Error::validation("r", "does not equal the sum of delta"));
            }
        }
        Ok(ft)
    }
}

/// Class of the groupoid of flags of type `delta`: `[GL_r / P_delta] / [GL_r] = 1 / [P_delta]`
/// written as `gaussian(r; delta) / [P_delta]`.
pub fn flag_groupoid_class(ft: &FlagType) -> Result<MotivicScalar> {
    let g = gaussian_multinomial(ft.r as u32, &ft.delta_u32())?;
    MotivicScalar::new(g, parabolic_order_poly(&ft.delta_u32()))
}

/// Number of flags of type `delta` in `F_q^r`, by enumeration.
pub fn flag_count_bruteforce(delta: &[usize], q: u32, budget: Budget) -> Result<usize> {
    Ok(flags_of_type(q, delta, budget)?.len())
}

/// `sum over flags of 1/|Stab(flag)|` with stabilizers found by running through `GL_r(F_q)`.
pub fn flag_groupoid_count_bruteforce(delta: &[usize], q: u32, budget: Budget) -> Result<Rational> {
    let f = field(q)?;
    let r: usize = delta.iter().sum();
    budget.check_pow("general linear group", q as u64, (r * r) as u64)?;
    let flags = flags_of_type(q, delta, budget)?;
    let group = general_linear_group(r, &f);
    let mut total = Rational::zero();
    for fl in &flags {
        let stab = group
            .iter()
            .filter(|g| {
                fl.steps.iter().all(|s| {
                    let imgs: Vec<Vec<u32>> = s.vectors().iter().map(|v| g.apply(v, &f)).collect();
                    Subspace::span(&imgs, r, &f) == *s
                })
            })
            .count();
        total += Rational::new(BigInt::one(), BigInt::from(BigUint::from(stab)));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{gl_class, rat};

    #[test]
    fn flag_classes() {
        let ft = FlagType::unweighted(vec![2]).unwrap();
        assert_eq!(flag_groupoid_class(&ft).unwrap(), MotivicScalar::one().div(&gl_class(2)).unwrap());
        let ft = FlagType::unweighted(vec![1, 1]).unwrap();
        let c = flag_groupoid_class(&ft).unwrap();
        assert_eq!(c.evaluate(2).unwrap(), rat(3, 2));
        assert_eq!(c.evaluate(2).unwrap(), flag_groupoid_count_bruteforce(&[1, 1], 2, Budget::default()).unwrap());
        assert_eq!(c.evaluate(3).unwrap(), flag_groupoid_count_bruteforce(&[1, 1], 3, Budget::default()).unwrap());
        let ft = FlagType::unweighted(vec![1, 2]).unwrap();
        assert_eq!(
            flag_groupoid_class(&ft).unwrap().evaluate(2).unwrap(),
            flag_groupoid_count_bruteforce(&[1, 2], 2, Budget::default()).unwrap()
        );
    }

    #[test]
    fn flag_type_validation() {
        assert!(FlagType::new(vec![1, 1], vec![0, 1]).is_err());
        assert!(FlagType::new(vec![1, 0], vec![1, 0]).is_err());
        assert!(FlagType::new(vec![1, 1], vec![1]).is_err());
        let ft = FlagType::from_json_value(&json!({"delta": [1, 2], "weights": [3, -1]})).unwrap();
        assert_eq!(ft.r, 3);
        assert_eq!(FlagType::from_json_value(&ft.to_json_value()).unwrap(), ft);
    }
}
