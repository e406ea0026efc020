use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{slope_of, sub, HnType, Slope, StabilityData};
use crate::budget::Budget;
use crate::coeffring::Rational;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::protoexact::{closed_subspace_tuples, enumerate_reps, subquotient, Quiver, QuiverRep};

fn dims(spaces: &[Subspace]) -> Vec<usize> {
    spaces.iter().map(|s| s.dim()).collect()
}

fn contains_all(e: &QuiverRep, big: &[Subspace], small: &[Subspace]) -> bool {
    big.iter().zip(small).all(|(b, s)| b.contains_subspace(s, e.field()))
}

/// Every proper nonzero subobject has slope at most the slope of `E`.
pub fn is_semistable(e: &QuiverRep, s: &StabilityData, budget: Budget) -> Result<bool> {
    s.check_dim(e.dim())?;
    if e.is_zero() {
        return Ok(true);
    }
    let mu = slope_of(e.dim(), s)?;
    for u in closed_subspace_tuples(e, None, budget)? {
        let d = dims(&u);
        if d.iter().all(|&x| x == 0) || d == e.dim() {
            continue;
        }
        if slope_of(&d, s)? > mu {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Harder-Narasimhan flag `0 < F_1 < ... < F_n = E`.
#[derive(Clone, Debug)]
pub struct HnFiltration {
    /// Nonzero steps, the last being `E`.
    pub steps: Vec<Vec<Subspace>>,
    pub hn_type: HnType,
    pub slopes: Vec<Slope>,
}

/// Builds the HN flag by repeatedly taking, above the current step `F`, the subobject
/// `U` maximizing `mu(U/F)` and then the rank of `U/F`. Raises a consistency error if
/// that choice is not unique or the resulting type is not strictly decreasing.
pub fn hn_filtration(e: &QuiverRep, s: &StabilityData, budget: Budget) -> Result<HnFiltration> {
    s.check_dim(e.dim())?;
    let subs = closed_subspace_tuples(e, None, budget)?;
    let mut current: Vec<Subspace> = e.dim().iter().map(|&d| Subspace::zero(d)).collect();
    let mut steps = Vec::new();
    let mut parts = Vec::new();
    let mut slopes = Vec::new();
    while dims(&current) != e.dim() {
        let base = dims(&current);
        let mut best: Option<(Slope, i64, usize)> = None;
        let mut ties = 0;
        for (i, u) in subs.iter().enumerate() {
            let d = dims(u);
            if d == base || !contains_all(e, u, &current) {
                continue;
            }
            let gr = sub(&d, &base);
            let key = (slope_of(&gr, s)?, s.rank(&gr));
            match &best {
                Some((m, r, _)) if (m, r) > (&key.0, &key.1) => {}
                Some((m, r, _)) if (m, r) == (&key.0, &key.1) => ties += 1,
                _ => {
                    best = Some((key.0, key.1, i));
                    ties = 0;
                }
            }
        }
        let (mu, _, i) = best.ok_or_else(|| Error::consistency("no subobject above the current HN step"))?;
        if ties > 0 {
            return Err(Error::consistency("maximal destabilizing subobject is not unique"));
        }
        if let Some(prev) = slopes.last() {
            if mu >= *prev {
                return Err(Error::consistency("HN slopes are not strictly decreasing"));
            }
        }
        parts.push(sub(&dims(&subs[i]), &base));
        slopes.push(mu);
        current = subs[i].clone();
        steps.push(current.clone());
    }
    Ok(HnFiltration {
        steps,
        hn_type: HnType(parts),
        slopes,
    })
}

impl HnFiltration {
    /// The subquotients `F_i / F_{i-1}` as representations.
    pub fn subquotients(&self, e: &QuiverRep) -> Vec<QuiverRep> {
        let mut lower: Vec<Subspace> = e.dim().iter().map(|&d| Subspace::zero(d)).collect();
        let mut out = Vec::new();
        for step in &self.steps {
            out.push(subquotient(e, &lower, step));
            lower = step.clone();
        }
        out
    }
}

fn inv_aut(a: &num_bigint::BigUint) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(a.clone()))
}

/// Groupoid counts of the HN strata of `R(Q, alpha)` over F_q, classified by `hn_filtration`.
pub fn hn_stratum_counts(
    quiver: &Arc<Quiver>,
    alpha: &[usize],
    s: &StabilityData,
    q: u32,
    budget: Budget,
) -> Result<BTreeMap<HnType, Rational>> {
    s.check_dim(alpha)?;
    let table = enumerate_reps(quiver, alpha, q, budget)?;
    let mut out: BTreeMap<HnType, Rational> = BTreeMap::new();
    for (e, aut) in table.reps().iter().zip(table.aut_orders()) {
        let t = hn_filtration(e, s, budget)?.hn_type;
        *out.entry(t).or_insert_with(Rational::zero) += inv_aut(aut);
    }
    Ok(out)
}

/// `sum 1/|Aut E|` over semistable classes of dimension `alpha`, by exhaustive search.
pub fn count_semistable_bruteforce(
    quiver: &Arc<Quiver>,
    alpha: &[usize],
    s: &StabilityData,
    q: u32,
    budget: Budget,
) -> Result<Rational> {
    s.check_dim(alpha)?;
    let table = enumerate_reps(quiver, alpha, q, budget)?;
    let mut total = Rational::zero();
    for (e, aut) in table.reps().iter().zip(table.aut_orders()) {
        if is_semistable(e, s, budget)? {
            total += inv_aut(aut);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::a2())
    }

    fn rep(json: &str) -> QuiverRep {
        QuiverRep::from_json(a2(), json).unwrap()
    }

    #[test]
    fn semistability_on_a2() {
        let s = StabilityData::with_theta(vec![1, 0]);
        let b = Budget::default();
        assert!(is_semistable(&rep(r#"{"q":2,"dim":[1,1],"mats":[[[1]]]}"#), &s, b).unwrap());
        assert!(!is_semistable(&rep(r#"{"q":2,"dim":[1,1],"mats":[[[0]]]}"#), &s, b).unwrap());
        assert!(is_semistable(&QuiverRep::simple(a2(), 2, 1).unwrap(), &s, b).unwrap());
    }

    #[test]
    fn filtration_of_zero_map() {
        let s = StabilityData::with_theta(vec![1, 0]);
        let e = rep(r#"{"q":2,"dim":[1,1],"mats":[[[0]]]}"#);
        let h = hn_filtration(&e, &s, Budget::default()).unwrap();
        assert_eq!(h.hn_type, HnType(vec![vec![1, 0], vec![0, 1]]));
        assert_eq!(h.steps.len(), 2);
        let gr = h.subquotients(&e);
        assert_eq!(gr[0].dim(), &[1, 0]);
        assert_eq!(gr[1].dim(), &[0, 1]);
        let ss = rep(r#"{"q":2,"dim":[1,1],"mats":[[[1]]]}"#);
        assert_eq!(hn_filtration(&ss, &s, Budget::default()).unwrap().steps.len(), 1);
    }

    #[test]
    fn direct_sum_splits_by_slope() {
        // S_2 has slope 0, S_1 + S_1 slope 1 under theta = (1, 0): the flag starts with S_1^2.
        let s = StabilityData::with_theta(vec![1, 0]);
        let e = QuiverRep::with_zero_maps(a2(), 3, vec![2, 1]).unwrap();
        let h = hn_filtration(&e, &s, Budget::default()).unwrap();
        assert_eq!(h.hn_type, HnType(vec![vec![2, 0], vec![0, 1]]));
    }

    #[test]
    fn semistable_counts_on_a2() {
        let s = StabilityData::with_theta(vec![1, 0]);
        let b = Budget::default();
        assert_eq!(count_semistable_bruteforce(&a2(), &[1, 1], &s, 2, b).unwrap(), rat(1, 1));
        assert_eq!(count_semistable_bruteforce(&a2(), &[1, 1], &s, 3, b).unwrap(), rat(1, 2));
        let flat = StabilityData::with_theta(vec![0, 0]);
        assert_eq!(count_semistable_bruteforce(&a2(), &[1, 1], &flat, 3, b).unwrap(), rat(3, 4));
    }
}
