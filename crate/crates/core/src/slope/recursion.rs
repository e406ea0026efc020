use std::collections::BTreeMap;

use super::{hn_types, inversion_decompositions, nonzero_subvectors, slope_of, StabilityData};
use crate::coeffring::MotivicScalar;
use crate::error::{Error, Result};
use crate::hall::{bilinear, chi_op_matrix, motivic_class_total};
use crate::protoexact::Quiver;

/// How the class of the semistable locus is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Subtract the proper HN strata from the total class, by induction on dimension.
    Recursive,
    /// Alternating sum over decompositions with destabilizing partial sums.
    Inversion,
}

/// `L^{-sum_{i<j} chi_op(alpha_i, alpha_j)}`, or the transposed pairing when `reversed`.
fn twist(chi: &[Vec<i64>], parts: &[Vec<usize>], reversed: bool) -> MotivicScalar {
    let mut e = 0;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            e += if reversed {
                bilinear(chi, &parts[j], &parts[i])
            } else {
                bilinear(chi, &parts[i], &parts[j])
            };
        }
    }
    MotivicScalar::l_pow(-e)
}

pub(crate) fn recursive_classes(
    quiver: &Quiver,
    alpha: &[usize],
    s: &StabilityData,
    reversed: bool,
) -> Result<BTreeMap<Vec<usize>, MotivicScalar>> {
    let chi = chi_op_matrix(quiver);
    let mut memo: BTreeMap<Vec<usize>, MotivicScalar> = BTreeMap::new();
    let mut targets = nonzero_subvectors(alpha);
    targets.sort_by_key(|b| b.iter().sum::<usize>());
    for beta in targets {
        let mut value = motivic_class_total(quiver, &beta)?;
        for t in hn_types(&beta, s)? {
            if t.len() < 2 {
                continue;
            }
            let mut term = twist(&chi, t.parts(), reversed);
            for p in t.parts() {
                term = term.mul(&memo[p]);
            }
            value = value.sub(&term);
        }
        memo.insert(beta, value);
    }
    Ok(memo)
}

pub(crate) fn inversion_class(quiver: &Quiver, alpha: &[usize], s: &StabilityData) -> Result<MotivicScalar> {
    let chi = chi_op_matrix(quiver);
    let slope = |a: &[usize]| slope_of(a, s).expect("nonzero vectors of the right length");
    let mut total = MotivicScalar::zero();
    for parts in inversion_decompositions(alpha, &slope) {
        let mut term = twist(&chi, &parts, false);
        for p in &parts {
            term = term.mul(&motivic_class_total(quiver, p)?);
        }
        if parts.len() % 2 == 0 {
            term = term.neg();
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// Class of the stack of semistable representations of dimension `alpha`. The other
/// method is evaluated as well and a disagreement is reported as a consistency error.
pub fn semistable_motivic_class(
    quiver: &Quiver,
    alpha: &[usize],
    s: &StabilityData,
    method: Method,
) -> Result<MotivicScalar> {
    quiver.check_dim(alpha)?;
    s.check_dim(alpha)?;
    if alpha.iter().all(|&a| a == 0) {
        return Ok(MotivicScalar::one());
    }
    let rec = recursive_classes(quiver, alpha, s, false)?.remove(alpha).expect("alpha is a target");
    let inv = inversion_class(quiver, alpha, s)?;
    if rec != inv {
        return Err(Error::consistency(format!(
            "HN recursion gives {rec} but the inversion formula gives {inv} at {alpha:?}"
        )));
    }
    Ok(match method {
        Method::Recursive => rec,
        Method::Inversion => inv,
    })
}

/// Classes of the semistable loci for every nonzero `beta <= alpha`, by the recursion.
pub fn semistable_motivic_classes(
    quiver: &Quiver,
    alpha: &[usize],
    s: &StabilityData,
) -> Result<BTreeMap<Vec<usize>, MotivicScalar>> {
    quiver.check_dim(alpha)?;
    s.check_dim(alpha)?;
    recursive_classes(quiver, alpha, s, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{gl_class, rat};

    #[test]
    fn a2_semistable_class() {
        let s = StabilityData::with_theta(vec![1, 0]);
        let c = semistable_motivic_class(&Quiver::a2(), &[1, 1], &s, Method::Recursive).unwrap();
        assert_eq!(c, MotivicScalar::one().div(&gl_class(1)).unwrap());
        assert_eq!(c.evaluate(2).unwrap(), rat(1, 1));
        assert_eq!(c.evaluate(3).unwrap(), rat(1, 2));
    }

    #[test]
    fn transposed_twist_disagrees_with_counts() {
        let s = StabilityData::with_theta(vec![1, 0]);
        let wrong = recursive_classes(&Quiver::a2(), &[1, 1], &s, true).unwrap();
        assert_eq!(wrong[&vec![1, 1]], MotivicScalar::zero());
    }

    #[test]
    fn constant_theta_gives_total() {
        let s = StabilityData::with_theta(vec![2, 2]);
        let q = Quiver::kronecker(2);
        for alpha in [[1usize, 2], [2, 1]] {
            let c = semistable_motivic_class(&q, &alpha, &s, Method::Inversion).unwrap();
            assert_eq!(c, motivic_class_total(&q, &alpha).unwrap());
        }
        let c = semistable_motivic_class(&Quiver::a2(), &[1, 0], &StabilityData::with_theta(vec![1, 0]), Method::Recursive)
            .unwrap();
        assert_eq!(c, MotivicScalar::one().div(&gl_class(1)).unwrap());
    }
}
