//! Stability conditions on quiver representations and filtered vector spaces:
//! slopes, semistability, Harder-Narasimhan filtrations and types, the HN
//! recursion with its inversion, flag varieties and period domains.

mod flags;
mod hn;
mod period;
mod recursion;

pub use flags::{flag_count_bruteforce, flag_groupoid_class, flag_groupoid_count_bruteforce, FlagType};
pub use hn::{count_semistable_bruteforce, hn_filtration, hn_stratum_counts, is_semistable, HnFiltration};
pub use period::{
    period_domain_bruteforce, period_domain_count, period_domain_polynomial, period_domain_terms, BaseField,
    PeriodMode, PeriodTerm,
};
pub use recursion::{semistable_motivic_class, semistable_motivic_classes, Method};
pub(crate) use period::semistable_flags;
pub(crate) use recursion::{inversion_class, recursive_classes};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::coeffring::Rational;
use crate::error::{Error, Result};

/// Degree weights `theta` and positive rank weights on the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StabilityData {
    pub theta: Vec<i64>,
    pub rank_weights: Vec<i64>,
}

impl StabilityData {
    pub fn new(theta: Vec<i64>, rank_weights: Vec<i64>) -> Result<Self> {
        if theta.len() != rank_weights.len() {
            return Err(Error::validation("rank", "theta and rank weights differ in length"));
        }
        if rank_weights.iter().any(|&r| r <= 0) {
            return Err(Error::validation("rank", "rank weights must be positive"));
        }
        Ok(StabilityData { theta, rank_weights })
    }

    /// Rank weights all equal to one.
    pub fn with_theta(theta: Vec<i64>) -> Self {
        let n = theta.len();
        StabilityData {
            theta,
            rank_weights: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn degree(&self, alpha: &[usize]) -> i64 {
        self.theta.iter().zip(alpha).map(|(t, &a)| t * a as i64).sum()
    }

    pub fn rank(&self, alpha: &[usize]) -> i64 {
        self.rank_weights.iter().zip(alpha).map(|(r, &a)| r * a as i64).sum()
    }

    pub fn check_dim(&self, alpha: &[usize]) -> Result<()> {
        if alpha.len() != self.len() {
            return Err(Error::validation(
                "alpha",
                format!("expected {} entries, got {}", self.len(), alpha.len()),
            ));
        }
        Ok(())
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let theta: Vec<i64> =
            serde_json::from_value(v["theta"].clone()).map_err(|e| Error::validation("theta", e.to_string()))?;
        if v.get("rank").is_none() {
            return Ok(StabilityData::with_theta(theta));
        }
        let rank: Vec<i64> =
            serde_json::from_value(v["rank"].clone()).map_err(|e| Error::validation("rank", e.to_string()))?;
        StabilityData::new(theta, rank)
    }

    pub fn to_json_value(&self) -> Value {
        json!({"theta": self.theta, "rank": self.rank_weights})
    }
}

/// Exact slope; rank-zero nonzero classes would sit at the top element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Slope::Finite(a), Slope::Finite(b)) => a.cmp(b),
            (Slope::Finite(_), Slope::Infinite) => Ordering::Less,
            (Slope::Infinite, Slope::Finite(_)) => Ordering::Greater,
            (Slope::Infinite, Slope::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

/// `mu(alpha) = deg(alpha) / rk(alpha)`.
pub fn slope_of(alpha: &[usize], s: &StabilityData) -> Result<Slope> {
    s.check_dim(alpha)?;
    if alpha.iter().all(|&a| a == 0) {
        return Err(Error::validation("alpha", "the slope of the zero class is undefined"));
    }
    let rk = s.rank(alpha);
    if rk == 0 {
        return Ok(Slope::Infinite);
    }
    Ok(Slope::Finite(Rational::new(BigInt::from(s.degree(alpha)), BigInt::from(rk))))
}

/// Ordered tuple of nonzero classes with strictly decreasing slopes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HnType(pub Vec<Vec<usize>>);

impl HnType {
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_json_value(&self) -> Value {
        json!(self.0)
    }
}

impl fmt::Display for HnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|p| {
                let xs: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Nonzero vectors `beta <= alpha` entrywise, in increasing order.
pub(crate) fn nonzero_subvectors(alpha: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=a).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out.sort();
    out
}

pub(crate) fn sub(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// All decompositions `alpha = alpha_1 + ... + alpha_n` into nonzero classes with
/// `mu(alpha_1) > ... > mu(alpha_n)`, ordered by length and then lexicographically.
pub fn hn_types(alpha: &[usize], s: &StabilityData) -> Result<Vec<HnType>> {
    s.check_dim(alpha)?;
    if alpha.iter().all(|&a| a == 0) {
        return Ok(vec![HnType(vec![])]);
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    hn_rec(alpha, None, s, &mut prefix, &mut out)?;
    out.sort_by(|a: &HnType, b: &HnType| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn hn_rec(
    rest: &[usize],
    bound: Option<&Slope>,
    s: &StabilityData,
    prefix: &mut Vec<Vec<usize>>,
    out: &mut Vec<HnType>,
) -> Result<()> {
    if rest.iter().all(|&a| a == 0) {
        out.push(HnType(prefix.clone()));
        return Ok(());
    }
    for beta in nonzero_subvectors(rest) {
        let mu = slope_of(&beta, s)?;
        if bound.is_none_or(|b| mu < *b) {
            prefix.push(beta.clone());
            hn_rec(&sub(rest, &beta), Some(&mu), s, prefix, out)?;
            prefix.pop();
        }
    }
    Ok(())
}

/// Ordered decompositions `alpha = alpha_1 + ... + alpha_m` into nonzero vectors with
/// `mu(alpha_1 + ... + alpha_i) > mu(alpha)` for every `i < m`, as used by the
/// inversion of the HN recursion. `slope` must be defined on nonzero vectors.
pub(crate) fn inversion_decompositions<F>(alpha: &[usize], slope: &F) -> Vec<Vec<Vec<usize>>>
where
    F: Fn(&[usize]) -> Slope,
{
    let mut out = Vec::new();
    if alpha.iter().all(|&a| a == 0) {
        out.push(vec![]);
        return out;
    }
    let target = slope(alpha);
    let mut prefix = Vec::new();
    let zero = vec![0; alpha.len()];
    inv_rec(alpha, &zero, &target, slope, &mut prefix, &mut out);
    out
}

fn inv_rec<F>(
    rest: &[usize],
    acc: &[usize],
    target: &Slope,
    slope: &F,
    prefix: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) where
    F: Fn(&[usize]) -> Slope,
{
    for beta in nonzero_subvectors(rest) {
        let remaining = sub(rest, &beta);
        let acc2: Vec<usize> = acc.iter().zip(&beta).map(|(x, y)| x + y).collect();
        prefix.push(beta);
        if remaining.iter().all(|&a| a == 0) {
            out.push(prefix.clone());
        } else if slope(&acc2) > *target {
            inv_rec(&remaining, &acc2, target, slope, prefix, out);
        }
        prefix.pop();
    }
}
