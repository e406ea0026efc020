use std::sync::Arc;

use num_bigint::{BigInt, BigUint};


use super::{inversion_decompositions, FlagType, Slope};
use crate::budget::Budget;
use crate::coeffring::{gaussian_multinomial, multinomial, IntPoly, Rational};
use crate::error::{Error, Result};
use crate::field::{field, is_prime, FiniteField};
use crate::linalg::{all_subspaces, Subspace};
use crate::protoexact::{flags_of_type, FilteredSpace, PointedSet};

/// The base over which the fixed space and its subobjects are rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseField {
    /// Subobjects are the F_q-rational subspaces.
    Fq(u32),
    /// Subobjects are the coordinate subspaces (subsets of a basis).
    F1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodMode {
    BruteForce,
    Recursion,
    /// Both, with a consistency error when they differ.
    Checked,
}

/// One summand of the alternating sum over HN decompositions of a flag type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodTerm {
    /// Graded dimension vectors `tau_1, ..., tau_m` of the pieces.
    pub parts: Vec<Vec<usize>>,
    /// `(-1)^{m-1}`.
    pub sign: i64,
    /// Exponent of `t` from the affine fibres.
    pub twist: u32,
    /// `prod_i gaussian(|tau_i|; nonzero parts of tau_i)`.
    pub flag_factor: IntPoly,
    /// Sizes `|tau_i|` of the rational flag the pieces sit on.
    pub eta: Vec<usize>,
}

fn filtered_slope(ft: &FlagType, v: &[usize]) -> Slope {
    let rk: usize = v.iter().sum();
    Slope::Finite(Rational::new(BigInt::from(ft.degree(v)), BigInt::from(rk)))
}

/// `d_ij = sum_{k<l} tau_j[k] tau_i[l]` summed over `i < j`.
fn fibre_dimension(parts: &[Vec<usize>]) -> u32 {
    let mut d = 0;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for k in 0..parts[j].len() {
                for l in k + 1..parts[i].len() {
                    d += parts[j][k] * parts[i][l];
                }
            }
        }
    }
    d as u32
}

/// Terms of the inversion formula for the semistable locus of flags of type `ft`.
pub fn period_domain_terms(ft: &FlagType) -> Result<Vec<PeriodTerm>> {
    let slope = |v: &[usize]| filtered_slope(ft, v);
    let mut out = Vec::new();
    for parts in inversion_decompositions(&ft.delta, &slope) {
        let mut flag_factor = IntPoly::one();
        for p in &parts {
            let nz: Vec<u32> = p.iter().filter(|&&x| x > 0).map(|&x| x as u32).collect();
            let size: u32 = nz.iter().sum();
            flag_factor = &flag_factor * &gaussian_multinomial(size, &nz)?;
        }
        out.push(PeriodTerm {
            sign: if parts.len() % 2 == 1 { 1 } else { -1 },
            twist: fibre_dimension(&parts),
            flag_factor,
            eta: parts.iter().map(|p| p.iter().sum()).collect(),
            parts,
        });
    }
    Ok(out)
}

/// Number of rational flags of type `eta`: `gaussian(r; eta)(q)` or the multinomial.
pub(crate) fn rational_flag_count(base: BaseField, eta: &[usize]) -> Result<BigInt> {
    let r: u32 = eta.iter().map(|&x| x as u32).sum();
    let parts: Vec<u32> = eta.iter().map(|&x| x as u32).collect();
    Ok(match base {
        BaseField::Fq(q) => gaussian_multinomial(r, &parts)?.eval_int(&BigInt::from(q)),
        BaseField::F1 => multinomial(&parts),
    })
}

/// Polynomial `P(t)` counting semistable flags: `P(q^m)` counts flags over F_{q^m} that are
/// semistable against F_q-rational subspaces; over F_1, `P(1)` counts semistable coordinate
/// flags and `P(q)` counts F_q-flags semistable against coordinate subspaces.
pub fn period_domain_polynomial(ft: &FlagType, base: BaseField) -> Result<IntPoly> {
    let mut total = IntPoly::zero();
    for term in period_domain_terms(ft)? {
        let c = rational_flag_count(base, &term.eta)? * term.sign;
        total = &total + &term.flag_factor.shift(term.twist).scale(&c);
    }
    Ok(total)
}

fn is_power_of(n: u32, q: u32) -> bool {
    let mut x = n as u64;
    while x > 1 && x.is_multiple_of(q as u64) {
        x /= q as u64;
    }
    x == 1
}

/// Semistability of a flag `steps` (cumulative, last = whole space) against the given subspaces.
fn flag_is_semistable(ft: &FlagType, steps: &[Subspace], tests: &[Subspace], f: &FiniteField) -> bool {
    let total = ft.degree(&ft.delta);
    tests.iter().all(|w| {
        let mut prev = 0;
        let mut deg = 0;
        for (k, s) in steps.iter().enumerate() {
            let d = s.intersection_dim(w, f);
            deg += ft.weights[k] * (d - prev) as i64;
            prev = d;
        }
        deg * (ft.r as i64) <= total * (w.dim() as i64)
    })
}

/// Subspaces of F_`points`^r that a flag over `base` is tested against: the proper nonzero
/// F_q-rational subspaces, or the proper nonzero coordinate subspaces.
pub(crate) fn test_subspaces(r: usize, base: BaseField, points: u32) -> Result<(Arc<FiniteField>, Vec<Subspace>)> {
    let rows: Vec<Vec<Vec<u32>>> = match base {
        BaseField::Fq(q) => {
            if !is_power_of(points, q) {
                return Err(Error::validation("points", format!("{points} is not a power of {q}")));
            }
            if points != q && !is_prime(q) {
                return Err(Error::validation("q", "extension-field points need a prime base field"));
            }
            let fq = field(q)?;
            all_subspaces(r, &fq)
                .into_iter()
                .filter(|w| w.dim() > 0 && w.dim() < r)
                .map(|w| w.basis.to_rows())
                .collect()
        }
        BaseField::F1 => (1..(1u32 << r) - 1)
            .map(|mask| {
                (0..r)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| {
                        let mut v = vec![0; r];
                        v[i] = 1;
                        v
                    })
                    .collect()
            })
            .collect(),
    };
    let f = field(points)?;
    let tests = rows.iter().map(|rows| Subspace::span(rows, r, &f)).collect();
    Ok((f, tests))
}

/// Flags of type `ft` over F_`points` that are semistable against the subspaces of
/// [`test_subspaces`].
pub(crate) fn semistable_flags(ft: &FlagType, base: BaseField, points: u32, budget: Budget) -> Result<Vec<FilteredSpace>> {
    let (f, tests) = test_subspaces(ft.r, base, points)?;
    Ok(flags_of_type(points, &ft.delta, budget)?
        .into_iter()
        .filter(|fl| flag_is_semistable(ft, &fl.steps, &tests, &f))
        .collect())
}

/// Counts semistable flags of type `ft` with coordinates in F_`points`, by enumeration.
///
/// For `BaseField::Fq(q)`, `points` must be a power of `q`, and `q` must be prime when the
/// two differ. For `BaseField::F1`, `points = 1` counts coordinate flags against subsets and
/// a prime power counts F_points-flags against coordinate subspaces.
pub fn period_domain_bruteforce(ft: &FlagType, base: BaseField, points: u32, budget: Budget) -> Result<BigUint> {
    if base == BaseField::F1 && points == 1 {
        return Ok(coordinate_flag_count(ft));
    }
    Ok(BigUint::from(semistable_flags(ft, base, points, budget)?.len()))
}

fn coordinate_flag_count(ft: &FlagType) -> BigUint {
    let r = ft.r;
    let total = ft.degree(&ft.delta);
    let flags = PointedSet { size: r }.flags_of_type(&ft.delta);
    let count = flags
        .iter()
        .filter(|blocks| {
            (1..(1u32 << r) - 1).all(|mask| {
                let mut gr = vec![0usize; ft.delta.len()];
                for (i, &b) in blocks.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        gr[b] += 1;
                    }
                }
                ft.degree(&gr) * (r as i64) <= total * mask.count_ones() as i64
            })
        })
        .count();
    BigUint::from(count)
}

/// Number of semistable flags at the base: `t -> q` over F_q, `t -> 1` over F_1.
pub fn period_domain_count(ft: &FlagType, base: BaseField, mode: PeriodMode, budget: Budget) -> Result<BigInt> {
    let (t, points) = match base {
        BaseField::Fq(q) => (q, q),
        BaseField::F1 => (1, 1),
    };
    let rec = || -> Result<BigInt> { Ok(period_domain_polynomial(ft, base)?.eval_int(&BigInt::from(t))) };
    let brute = || -> Result<BigInt> { Ok(BigInt::from(period_domain_bruteforce(ft, base, points, budget)?)) };
    match mode {
        PeriodMode::Recursion => rec(),
        PeriodMode::BruteForce => brute(),
        PeriodMode::Checked => {
            let (a, b) = (rec()?, brute()?);
            if a != b {
                return Err(Error::consistency(format!(
                    "period domain recursion gives {a} but enumeration gives {b}"
                )));
            }
            Ok(a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn ft(delta: Vec<usize>, w: Vec<i64>) -> FlagType {
        FlagType::new(delta, w).unwrap()
    }

    #[test]
    fn projective_line() {
        let t = ft(vec![1, 1], vec![1, 0]);
        let p = period_domain_polynomial(&t, BaseField::Fq(2)).unwrap();
        assert_eq!(p, IntPoly::from_coeffs(&[-2, 1]));
        let p1 = period_domain_polynomial(&t, BaseField::F1).unwrap();
        assert_eq!(p1, IntPoly::from_coeffs(&[-1, 1]));
        let b = Budget::default();
        assert_eq!(period_domain_bruteforce(&t, BaseField::Fq(2), 4, b).unwrap(), BigUint::from(2u32));
        assert_eq!(period_domain_bruteforce(&t, BaseField::F1, 3, b).unwrap(), BigUint::from(2u32));
        assert_eq!(period_domain_count(&t, BaseField::Fq(3), PeriodMode::Checked, b).unwrap(), BigInt::zero());
        assert_eq!(period_domain_count(&t, BaseField::F1, PeriodMode::Checked, b).unwrap(), BigInt::zero());
    }

    #[test]
    fn trivial_type_counts_everything() {
        let t = ft(vec![3], vec![5]);
        let b = Budget::default();
        assert_eq!(period_domain_count(&t, BaseField::Fq(2), PeriodMode::Checked, b).unwrap(), BigInt::one());
        assert_eq!(period_domain_polynomial(&t, BaseField::F1).unwrap(), IntPoly::one());
    }

    #[test]
    fn f1_plane_in_three_space() {
        let t = ft(vec![1, 2], vec![1, 0]);
        let p = period_domain_polynomial(&t, BaseField::F1).unwrap();
        assert_eq!(p, IntPoly::from_coeffs(&[1, -2, 1]));
        let b = Budget::default();
        for q in [2u32, 3] {
            let expect = p.eval_int(&BigInt::from(q));
            let got = period_domain_bruteforce(&t, BaseField::F1, q, b).unwrap();
            assert_eq!(BigInt::from(got), expect);
        }
    }

    #[test]
    fn extension_points_match_polynomial() {
        let b = Budget::default();
        for (delta, w) in [(vec![1, 1], vec![1, 0]), (vec![1, 2], vec![1, 0]), (vec![2, 1], vec![1, 0]), (vec![1, 1, 1], vec![2, 1, 0])] {
            let t = ft(delta, w);
            let p = period_domain_polynomial(&t, BaseField::Fq(2)).unwrap();
            let got = period_domain_bruteforce(&t, BaseField::Fq(2), 4, b).unwrap();
            assert_eq!(BigInt::from(got), p.eval_int(&BigInt::from(4)), "{t:?}");
        }
    }
}
