use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{chi_op_matrix, HallElement, TwistedSeries};
use crate::budget::Budget;
use crate::coeffring::{gl_class, MotivicScalar, Rational};
use crate::error::Result;
use crate::protoexact::{
    dimension_vectors, enumerate_reps, ext1_dim, hom_dim, subobjects_of_dim, ClassKey, Quiver, QuiverRep, RepCategory,
};

fn inv(n: &BigUint) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n.clone()))
}

/// `1_A -> T^{dim A} / |Aut A|`, extended linearly; truncated at the category bound.
pub fn integrate_counting(phi: &HallElement) -> Result<TwistedSeries<Rational>> {
    let cat = phi.category();
    let mut out = TwistedSeries::counting(chi_op_matrix(cat.quiver()), cat.q(), cat.bound());
    for (k, v) in phi.coeffs() {
        out.insert(k.dim.clone(), v * inv(cat.aut_order(k)?))?;
    }
    Ok(out)
}

/// Class of the moduli stack `[R(Q, alpha) / GL_alpha]`:
/// `L^{sum_a alpha_s alpha_t} / prod_i [GL_{alpha_i}]`.
pub fn motivic_class_total(quiver: &Quiver, alpha: &[usize]) -> Result<MotivicScalar> {
    quiver.check_dim(alpha)?;
    let mut den = MotivicScalar::one();
    for &a in alpha {
        den = den.mul(&gl_class(a as u32));
    }
    MotivicScalar::l_pow(quiver.rep_space_dim(alpha) as i64).div(&den)
}

/// `sum_alpha [R(Q, alpha) / GL_alpha] T^alpha` up to total dimension `trunc`.
pub fn motivic_series(quiver: &Quiver, trunc: usize) -> Result<TwistedSeries<MotivicScalar>> {
    let mut out = TwistedSeries::motivic(chi_op_matrix(quiver), trunc);
    for alpha in dimension_vectors(quiver.num_vertices(), trunc) {
        let c = motivic_class_total(quiver, &alpha)?;
        out.insert(alpha, c)?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct IntegrationEntry {
    pub left: ClassKey,
    pub right: ClassKey,
    /// Coefficient of `int(1_A * 1_B)` at `dim A + dim B`.
    pub integral_of_product: Rational,
    /// Coefficient of `int(1_A) * int(1_B)` in the twisted ring.
    pub product_of_integrals: Rational,
}

impl IntegrationEntry {
    pub fn passed(&self) -> bool {
        self.integral_of_product == self.product_of_integrals
    }
}

#[derive(Clone, Debug)]
pub struct IntegrationReport {
    pub entries: Vec<IntegrationEntry>,
}

impl IntegrationReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed())
    }
}

/// Checks `int(1_A * 1_B) = int(1_A) * int(1_B)` for every pair of classes whose
/// total dimension fits the category bound.
pub fn verify_integration_morphism(cat: &Arc<RepCategory>) -> Result<IntegrationReport> {
    let classes = cat.classes();
    let mut entries = Vec::new();
    for a in &classes {
        let fa = HallElement::basis(cat.clone(), a.clone())?;
        let ia = integrate_counting(&fa)?;
        for b in &classes {
            let total: usize = a.dim.iter().chain(&b.dim).sum();
            if total > cat.bound() {
                continue;
            }
            let fb = HallElement::basis(cat.clone(), b.clone())?;
            let lhs = integrate_counting(&fa.product(&fb)?)?;
            let rhs = ia.twisted_mul(&integrate_counting(&fb)?)?;
            let gamma: Vec<usize> = a.dim.iter().zip(&b.dim).map(|(x, y)| x + y).collect();
            // Both sides are concentrated in degree gamma; anything else is a failure.
            let stray = lhs.coeffs().keys().chain(rhs.coeffs().keys()).any(|k| *k != gamma);
            let mut entry = IntegrationEntry {
                left: a.clone(),
                right: b.clone(),
                integral_of_product: lhs.coeff(&gamma),
                product_of_integrals: rhs.coeff(&gamma),
            };
            if stray {
                entry.product_of_integrals = &entry.integral_of_product + Rational::one();
            }
            entries.push(entry);
        }
    }
    Ok(IntegrationReport { entries })
}

#[derive(Clone, Debug)]
pub struct RiedtmannReport {
    /// `sum_E g^E_{A,B} / |Aut E|`, with `g^E_{A,B}` the number of subobjects of `E`
    /// isomorphic to `A` with quotient isomorphic to `B`.
    pub middle_term_sum: Rational,
    /// `q^{ext1(B,A) - hom(B,A)} / (|Aut A| |Aut B|)`.
    pub predicted: Rational,
    pub ext1: usize,
    pub hom: usize,
}

impl RiedtmannReport {
    pub fn passed(&self) -> bool {
        self.middle_term_sum == self.predicted
    }
}

/// Counting form of the fibre formula for extensions `0 -> A -> E -> B -> 0`.
pub fn riedtmann_fibre_check(a: &QuiverRep, b: &QuiverRep, budget: Budget) -> Result<RiedtmannReport> {
    a.check_same_context(b)?;
    let quiver = a.quiver();
    let q = a.q();
    let ta = enumerate_reps(quiver, a.dim(), q, budget)?;
    let tb = enumerate_reps(quiver, b.dim(), q, budget)?;
    let (ia, ib) = (ta.identify(a)?, tb.identify(b)?);
    let gamma: Vec<usize> = a.dim().iter().zip(b.dim()).map(|(x, y)| x + y).collect();
    let te = enumerate_reps(quiver, &gamma, q, budget)?;
    let mut sum = Rational::zero();
    for (e, aut) in te.reps().iter().zip(te.aut_orders()) {
        let mut g = 0u64;
        for s in subobjects_of_dim(e, a.dim(), budget)? {
            if ta.identify(&s.sub)? == ia && tb.identify(&s.quot)? == ib {
                g += 1;
            }
        }
        sum += Rational::from_integer(BigInt::from(g)) * inv(aut);
    }
    let ext1 = ext1_dim(b, a)?;
    let hom = hom_dim(b, a)?;
    let power = num_traits::Pow::pow(
        Rational::from_integer(BigInt::from(q)),
        ext1 as i32 - hom as i32,
    );
    let predicted = power * inv(&ta.aut_orders()[ia]) * inv(&tb.aut_orders()[ib]);
    Ok(RiedtmannReport {
        middle_term_sum: sum,
        predicted,
        ext1,
        hom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;

    #[test]
    fn vect_integrals() {
        let c = Arc::new(RepCategory::new(Arc::new(Quiver::a1()), 2, 2, Budget::default()).unwrap());
        let one = HallElement::basis(c.clone(), ClassKey { dim: vec![1], index: 0 }).unwrap();
        assert_eq!(integrate_counting(&one).unwrap().coeff(&[1]), rat(1, 1));
        let two = HallElement::basis(c.clone(), ClassKey { dim: vec![2], index: 0 }).unwrap();
        assert_eq!(integrate_counting(&two).unwrap().coeff(&[2]), rat(1, 6));
        assert!(integrate_counting(&HallElement::zero(c)).unwrap().is_zero());
    }

    #[test]
    fn motivic_totals() {
        let l = MotivicScalar::l();
        let lm1 = gl_class(1);
        assert_eq!(motivic_class_total(&Quiver::a1(), &[1]).unwrap(), MotivicScalar::one().div(&lm1).unwrap());
        assert_eq!(
            motivic_class_total(&Quiver::a2(), &[1, 1]).unwrap(),
            l.div(&lm1.mul(&lm1)).unwrap()
        );
        assert_eq!(motivic_class_total(&Quiver::kronecker(2), &[0, 0]).unwrap(), MotivicScalar::one());
        let s = motivic_series(&Quiver::a2(), 2).unwrap();
        assert_eq!(s.coeffs().len(), 6);
    }

    #[test]
    fn morphism_on_small_categories() {
        for (quiver, q, bound) in [(Quiver::a1(), 2, 3), (Quiver::a2(), 2, 2), (Quiver::kronecker(2), 3, 2)] {
            let c = Arc::new(RepCategory::new(Arc::new(quiver), q, bound, Budget::default()).unwrap());
            let report = verify_integration_morphism(&c).unwrap();
            assert!(report.all_passed());
            assert!(!report.entries.is_empty());
        }
    }

    #[test]
    fn fibre_formula_on_simples() {
        let q = Arc::new(Quiver::a2());
        let s1 = QuiverRep::simple(q.clone(), 2, 0).unwrap();
        let s2 = QuiverRep::simple(q.clone(), 2, 1).unwrap();
        let r = riedtmann_fibre_check(&s1, &s2, Budget::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.predicted, rat(1, 1));
        let r = riedtmann_fibre_check(&s2, &s1, Budget::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.predicted, rat(2, 1));
        let z = QuiverRep::zero(q, 2).unwrap();
        let r = riedtmann_fibre_check(&z, &z, Budget::default()).unwrap();
        assert_eq!((r.middle_term_sum.clone(), r.predicted.clone()), (rat(1, 1), rat(1, 1)));
    }
}
