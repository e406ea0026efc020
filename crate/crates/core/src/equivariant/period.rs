use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};

use super::parabolic::{gl_parabolic, sym_parabolic, Parabolic};
use super::ClassFunction;
use crate::budget::Budget;
use crate::coeffring::{gaussian_multinomial, MotivicScalar};
use crate::error::{Error, Result};
use crate::field::{field, is_prime};
use crate::group::{general_linear, symmetric_group, FiniteGroup, MatrixGroup, PermutationGroup};
use crate::linalg::{Matrix, Subspace};
use crate::slope::{period_domain_terms, semistable_flags, BaseField, FlagType};

/// The group of rational automorphisms of the fixed space: `GL_r(F_q)` or `S_r`.
#[derive(Clone, Debug)]
pub enum AmbientGroup {
    General(MatrixGroup),
    Symmetric(PermutationGroup),
}

impl AmbientGroup {
    pub fn for_base(r: usize, base: BaseField, budget: Budget) -> Result<Self> {
        Ok(match base {
            BaseField::Fq(q) => AmbientGroup::General(general_linear(r, q, budget)?),
            BaseField::F1 => AmbientGroup::Symmetric(symmetric_group(r)?),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        match self {
            AmbientGroup::General(g) => &g.group,
            AmbientGroup::Symmetric(s) => &s.group,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            AmbientGroup::General(g) => g.mats.first().map_or(0, |m| m.rows),
            AmbientGroup::Symmetric(s) => s.perms.first().map_or(0, |p| p.len()),
        }
    }

    pub fn parabolic(&self, eta: &[usize], budget: Budget) -> Result<Parabolic> {
        match self {
            AmbientGroup::General(g) => gl_parabolic(g, eta, budget),
            AmbientGroup::Symmetric(s) => sym_parabolic(s, eta),
        }
    }

    /// Element `g` as a matrix acting on column vectors (permutation matrices for `S_r`).
    pub fn matrix(&self, g: usize) -> Matrix {
        match self {
            AmbientGroup::General(gl) => gl.mats[g].clone(),
            AmbientGroup::Symmetric(s) => {
                let p = &s.perms[g];
                let mut m = Matrix::zeros(p.len(), p.len());
                for (i, &j) in p.iter().enumerate() {
                    m.set(j, i, 1);
                }
                m
            }
        }
    }
}

/// `Ind_{P_eta}^G` of the inflation of the external product of the given Levi characters.
pub fn parabolic_induction(p: &Parabolic, levi_characters: &[ClassFunction]) -> Result<ClassFunction> {
    if levi_characters.len() != p.factors.len() {
        return Err(Error::validation("levi_characters", "need one character per Levi factor"));
    }
    let mut ext = levi_characters[0].clone();
    for chi in &levi_characters[1..] {
        ext = ext.external_product(chi);
    }
    if **ext.group() != *p.levi {
        return Err(Error::validation("levi_characters", "characters do not live on the Levi factors"));
    }
    ext.inflate(p.subgroup.group.clone(), &p.projection)?.induce(&p.subgroup)
}

/// Class function of the semistable flags of type `ft` under the rational automorphism group:
/// the alternating sum of `t^twist` times parabolic inductions of the flag characters of the
/// graded pieces. Its value at the identity is the period domain polynomial.
pub fn equivariant_period_domain(ft: &FlagType, base: BaseField, budget: Budget) -> Result<ClassFunction> {
    let ambient = AmbientGroup::for_base(ft.r, base, budget)?;
    equivariant_period_domain_on(ft, &ambient, budget)
}

/// Same as [`equivariant_period_domain`] with a prebuilt ambient group.
pub fn equivariant_period_domain_on(ft: &FlagType, ambient: &AmbientGroup, budget: Budget) -> Result<ClassFunction> {
    if ambient.rank() != ft.r {
        return Err(Error::validation("r", "flag type and group have different ranks"));
    }
    let g = ambient.group().clone();
    let mut parabolics: BTreeMap<Vec<usize>, Parabolic> = BTreeMap::new();
    let mut total = ClassFunction::zero(g);
    for term in period_domain_terms(ft)? {
        if !parabolics.contains_key(&term.eta) {
            parabolics.insert(term.eta.clone(), ambient.parabolic(&term.eta, budget)?);
        }
        let p = &parabolics[&term.eta];
        let levi_characters = term
            .parts
            .iter()
            .zip(&p.factors)
            .map(|(tau, factor)| {
                let nz: Vec<u32> = tau.iter().filter(|&&x| x > 0).map(|&x| x as u32).collect();
                let size = nz.iter().sum();
                let flags = MotivicScalar::from_poly(gaussian_multinomial(size, &nz)?);
                Ok(ClassFunction::constant(factor.clone(), flags))
            })
            .collect::<Result<Vec<_>>>()?;
        let induced = parabolic_induction(p, &levi_characters)?;
        let coeff = MotivicScalar::l_pow(term.twist as i64).scale_int(&BigInt::from(term.sign));
        total = total.add(&induced.scale(&coeff))?;
    }
    Ok(total)
}

fn element_order(g: &FiniteGroup, x: usize) -> usize {
    let (mut y, mut k) = (x, 1);
    while y != g.identity() {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// Number of semistable flags `x` of type `ft` over an algebraic closure with `g F(x) = x`,
/// `F` the `q`-Frobenius. These lie over F_{q^k} with `k` the order of `g`. Requires `q` prime.
pub fn twisted_fixed_point_count(
    ft: &FlagType,
    ambient: &AmbientGroup,
    g: usize,
    q: u32,
    budget: Budget,
) -> Result<BigUint> {
    if !is_prime(q) {
        return Err(Error::validation("q", "twisted fixed points need a prime field"));
    }
    let base = match ambient {
        AmbientGroup::General(gl) if gl.q == q => BaseField::Fq(q),
        AmbientGroup::General(_) => return Err(Error::validation("q", "does not match the group's field")),
        AmbientGroup::Symmetric(_) => BaseField::F1,
    };
    let k = element_order(ambient.group(), g) as u32;
    let points = q
        .checked_pow(k)
        .ok_or_else(|| Error::validation("g", "element order too large for explicit field extensions"))?;
    let m = ambient.matrix(g);
    let f = field(points)?;
    let flags = semistable_flags(ft, base, points, budget)?;
    let count = flags
        .iter()
        .filter(|fl| {
            fl.steps.iter().all(|s| {
                let moved: Vec<Vec<u32>> = s
                    .vectors()
                    .iter()
                    .map(|v| {
                        let fv: Vec<u32> = v.iter().map(|&x| f.frobenius(x)).collect();
                        m.apply(&fv, &f)
                    })
                    .collect();
                Subspace::span(&moved, ft.r, &f) == *s
            })
        })
        .count();
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Rational;
    use crate::slope::period_domain_polynomial;

    fn ft(delta: Vec<usize>, w: Vec<i64>) -> FlagType {
        FlagType::new(delta, w).unwrap()
    }

    #[test]
    fn identity_value_is_the_period_polynomial() {
        let b = Budget::default();
        let cases = [
            (ft(vec![1, 1], vec![1, 0]), BaseField::Fq(2)),
            (ft(vec![1, 1], vec![1, 0]), BaseField::Fq(3)),
            (ft(vec![1, 2], vec![1, 0]), BaseField::Fq(2)),
            (ft(vec![1, 1, 1], vec![2, 1, 0]), BaseField::Fq(2)),
            (ft(vec![1, 1, 1], vec![3, 1, 0]), BaseField::F1),
            (ft(vec![2, 2], vec![1, 0]), BaseField::F1),
        ];
        for (t, base) in cases {
            let f = equivariant_period_domain(&t, base, b).unwrap();
            let id = f.value_at_class(f.group().identity_class());
            let p = period_domain_polynomial(&t, base).unwrap();
            assert_eq!(*id, MotivicScalar::from_poly(p), "{t:?} over {base:?}");
        }
    }

    #[test]
    fn projective_line_over_f1() {
        let f = equivariant_period_domain(&ft(vec![1, 1], vec![1, 0]), BaseField::F1, Budget::default()).unwrap();
        let t = MotivicScalar::l();
        let one = MotivicScalar::one();
        assert_eq!(f.values(), &[t.sub(&one), t.add(&one)]);
    }

    fn check_fixed_points(t: &FlagType, ambient: &AmbientGroup, q: u32, max_order: usize) {
        let b = Budget::default();
        let f = equivariant_period_domain_on(t, ambient, b).unwrap();
        let g = ambient.group();
        let tq = Rational::from_integer(BigInt::from(q));
        for c in 0..g.num_classes() {
            let rep = g.classes()[c][0];
            if element_order(g, rep) > max_order {
                continue;
            }
            let expect = f.value_at_class(c).evaluate_at(&tq).unwrap();
            let got = twisted_fixed_point_count(t, ambient, rep, q, b).unwrap();
            assert_eq!(expect, Rational::from_integer(BigInt::from(got)), "{t:?} class {}", g.class_labels()[c]);
        }
    }

    #[test]
    fn values_count_twisted_frobenius_fixed_points() {
        let b = Budget::default();
        let gl22 = AmbientGroup::for_base(2, BaseField::Fq(2), b).unwrap();
        check_fixed_points(&ft(vec![1, 1], vec![1, 0]), &gl22, 2, 6);
        let gl23 = AmbientGroup::for_base(2, BaseField::Fq(3), b).unwrap();
        check_fixed_points(&ft(vec![1, 1], vec![1, 0]), &gl23, 3, 4);
        let gl32 = AmbientGroup::for_base(3, BaseField::Fq(2), b).unwrap();
        check_fixed_points(&ft(vec![1, 2], vec![1, 0]), &gl32, 2, 4);
        let s3 = AmbientGroup::for_base(3, BaseField::F1, b).unwrap();
        check_fixed_points(&ft(vec![1, 2], vec![1, 0]), &s3, 2, 3);
        check_fixed_points(&ft(vec![1, 1, 1], vec![2, 1, 0]), &s3, 2, 3);
        check_fixed_points(&ft(vec![1, 1, 1], vec![2, 1, 0]), &s3, 3, 2);
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let b = Budget::default();
        let s3 = AmbientGroup::for_base(3, BaseField::F1, b).unwrap();
        assert!(equivariant_period_domain_on(&ft(vec![1, 1], vec![1, 0]), &s3, b).is_err());
    }
}
