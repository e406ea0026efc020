use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use motivic_hall::budget::Budget;
use motivic_hall::coeffring::{gaussian_multinomial, multinomial, rat, IntPoly, MotivicScalar, Rational};
use motivic_hall::equivariant::{frobenius_reciprocity_holds, ClassFunction};
use motivic_hall::group::{symmetric_group, young_subgroup};
use motivic_hall::hall::{chi_op_matrix, HallElement, TwistedSeries};
use motivic_hall::linalg::Matrix;
use motivic_hall::protoexact::{
    count_quotients, enumerate_reps, ext1_dim_cokernel, gl_alpha_order, hom_dim, subobjects, Quiver, QuiverRep,
    RepCategory,
};
use motivic_hall::slope::{period_domain_bruteforce, period_domain_polynomial, BaseField, FlagType};

fn acyclic_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=3)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let k = pairs.len();
            (Just(n), Just(pairs), prop::collection::vec(0usize..=2, k))
        })
        .prop_map(|(n, pairs, mult)| {
            let arrows = pairs
                .iter()
                .zip(&mult)
                .flat_map(|(&p, &m)| std::iter::repeat_n(p, m))
                .collect();
            Quiver::new((1..=n).map(|i| i.to_string()).collect(), arrows).unwrap()
        })
}

/// A quiver with a random representation of total dimension at most 3 over F_q.
fn small_rep(q: u32) -> impl Strategy<Value = QuiverRep> {
    (acyclic_quiver(), prop::collection::vec(0usize..=2, 3))
        .prop_map(|(quiver, dims)| {
            let n = quiver.num_vertices();
            let mut dim: Vec<usize> = dims[..n].to_vec();
            while dim.iter().sum::<usize>() > 3 {
                let i = dim.iter().position(|&d| d > 0).unwrap();
                dim[i] -= 1;
            }
            (Arc::new(quiver), dim)
        })
        .prop_flat_map(move |(quiver, dim)| {
            let sizes: Vec<usize> = quiver.arrows().iter().map(|&(s, t)| dim[s] * dim[t]).collect();
            let entries = sizes.iter().sum::<usize>();
            (Just(quiver), Just(dim), Just(sizes), prop::collection::vec(0..q, entries))
        })
        .prop_map(move |(quiver, dim, sizes, data)| {
            let mut off = 0;
            let mats = quiver
                .arrows()
                .iter()
                .zip(&sizes)
                .map(|(&(s, t), &len)| {
                    let mut m = Matrix::zeros(dim[t], dim[s]);
                    m.data.copy_from_slice(&data[off..off + len]);
                    off += len;
                    m
                })
                .collect();
            QuiverRep::new(quiver, q, dim, mats).unwrap()
        })
}

fn small_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-3i64..=3, 0..4).prop_map(|c| IntPoly::from_coeffs(&c))
}

fn series_terms(n: usize) -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..=2, n), -3i64..=3), 0..4)
}

fn build_series(chi: &[Vec<i64>], terms: &[(Vec<usize>, i64)]) -> TwistedSeries<MotivicScalar> {
    let mut s = TwistedSeries::motivic(chi.to_vec(), 6);
    for (a, c) in terms {
        let m = s.monomial_like(a.clone(), MotivicScalar::from_int(*c)).unwrap();
        s = s.add(&m).unwrap();
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_form_is_bilinear(
        quiver in acyclic_quiver(),
        x in prop::collection::vec(-3i64..=3, 3),
        y in prop::collection::vec(-3i64..=3, 3),
        z in prop::collection::vec(-3i64..=3, 3),
    ) {
        let n = quiver.num_vertices();
        let (x, y, z) = (&x[..n], &y[..n], &z[..n]);
        let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let e = |a: &[i64], b: &[i64]| quiver.euler_form(a, b).unwrap();
        prop_assert_eq!(e(&sum, z), e(x, z) + e(y, z));
        prop_assert_eq!(e(z, &sum), e(z, x) + e(z, y));
    }

    #[test]
    fn hom_minus_ext_is_the_euler_form(a in small_rep(2), seed in 0u32..4) {
        // Second representation: same quiver, dimension vector shifted by the seed.
        let quiver = a.quiver().clone();
        let n = quiver.num_vertices();
        let mut dim = vec![0usize; n];
        dim[seed as usize % n] = 1 + (seed as usize % 2);
        let b = QuiverRep::with_zero_maps(quiver.clone(), 2, dim).unwrap();
        for (x, y) in [(&a, &b), (&b, &a), (&a, &a)] {
            let chi = quiver.euler_form(
                &x.dim().iter().map(|&d| d as i64).collect::<Vec<_>>(),
                &y.dim().iter().map(|&d| d as i64).collect::<Vec<_>>(),
            ).unwrap();
            let lhs = hom_dim(x, y).unwrap() as i64 - ext1_dim_cokernel(x, y).unwrap() as i64;
            prop_assert_eq!(lhs, chi);
        }
    }

    #[test]
    fn subobjects_and_quotients_correspond(e in small_rep(2)) {
        let b = Budget::default();
        let subs = subobjects(&e, b).unwrap();
        prop_assert_eq!(count_quotients(&e, b).unwrap(), subs.len());
        for s in &subs {
            let total: Vec<usize> = s.sub.dim().iter().zip(s.quot.dim()).map(|(x, y)| x + y).collect();
            prop_assert_eq!(&total[..], e.dim());
        }
    }

    #[test]
    fn twisted_product_is_associative(
        n in 1usize..=2,
        quiver_seed in 0usize..3,
        ta in series_terms(2),
        tb in series_terms(2),
        tc in series_terms(2),
    ) {
        let quiver = match (n, quiver_seed) {
            (1, _) => Quiver::a1(),
            (_, 0) => Quiver::a2(),
            (_, k) => Quiver::kronecker(k + 1),
        };
        let n = quiver.num_vertices();
        let chi = chi_op_matrix(&quiver);
        let trim = |t: &[(Vec<usize>, i64)]| -> Vec<(Vec<usize>, i64)> {
            t.iter().map(|(a, c)| (a[..n].to_vec(), *c)).collect()
        };
        let (a, b, c) = (build_series(&chi, &trim(&ta)), build_series(&chi, &trim(&tb)), build_series(&chi, &trim(&tc)));
        let left = a.twisted_mul(&b).unwrap().twisted_mul(&c).unwrap();
        let right = a.twisted_mul(&b.twisted_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.evaluate(3).unwrap(), a.evaluate(3).unwrap().twisted_mul(&b.evaluate(3).unwrap()).unwrap().twisted_mul(&c.evaluate(3).unwrap()).unwrap());
    }

    #[test]
    fn evaluation_is_a_ring_map(p in small_poly(), r in small_poly(), q in 2u64..6) {
        let a = MotivicScalar::from_poly(p);
        let b = MotivicScalar::from_poly(r).add(&MotivicScalar::l_pow(-2));
        let ev = |x: &MotivicScalar| x.evaluate(q).unwrap();
        prop_assert_eq!(ev(&a.mul(&b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&a.add(&b)), ev(&a) + ev(&b));
        prop_assert_eq!(a.mul(&b).sub(&b.mul(&a)), MotivicScalar::zero());
    }

    #[test]
    fn gaussian_multinomial_specializes(delta in prop::collection::vec(1u32..=3, 1..4)) {
        let r: u32 = delta.iter().sum();
        let g = gaussian_multinomial(r, &delta).unwrap();
        prop_assert_eq!(g.eval_int(&BigInt::from(1)), multinomial(&delta));
        let mut rev = delta.clone();
        rev.reverse();
        prop_assert_eq!(g, gaussian_multinomial(r, &rev).unwrap());
    }

    #[test]
    fn f1_period_polynomial_counts_coordinate_flags(
        delta in prop::collection::vec(1usize..=2, 1..4),
        gaps in prop::collection::vec(1i64..=4, 3),
    ) {
        let m = delta.len();
        let mut w = vec![0i64; m];
        for k in (0..m.saturating_sub(1)).rev() {
            w[k] = w[k + 1] + gaps[k];
        }
        let ft = FlagType::new(delta, w).unwrap();
        let p = period_domain_polynomial(&ft, BaseField::F1).unwrap();
        let brute = period_domain_bruteforce(&ft, BaseField::F1, 1, Budget::default()).unwrap();
        prop_assert_eq!(p.eval_int(&BigInt::from(1)), BigInt::from(brute));
    }

    #[test]
    fn frobenius_reciprocity_on_random_class_functions(
        eta_idx in 0usize..4,
        f_vals in prop::collection::vec(-3i64..=3, 8),
        chi_vals in prop::collection::vec(-3i64..=3, 5),
    ) {
        let s4 = symmetric_group(4).unwrap();
        let eta = [vec![2, 2], vec![3, 1], vec![1, 2, 1], vec![2, 1, 1]][eta_idx].clone();
        let h = young_subgroup(&s4, &eta).unwrap();
        let f = ClassFunction::from_integers(h.group.clone(), &f_vals[..h.group.num_classes()]).unwrap();
        let chi = ClassFunction::from_integers(s4.group.clone(), &chi_vals).unwrap();
        prop_assert!(frobenius_reciprocity_holds(&f, &chi, &h).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orbits_fill_the_representation_space(
        quiver_idx in 0usize..3,
        alpha in prop::collection::vec(0usize..=2, 2),
        q in 2u32..=3,
    ) {
        let quiver = Arc::new([Quiver::a1(), Quiver::a2(), Quiver::kronecker(2)][quiver_idx].clone());
        let n = quiver.num_vertices();
        let alpha = &alpha[..n];
        prop_assume!(alpha.iter().sum::<usize>() <= 3);
        let t = enumerate_reps(&quiver, alpha, q, Budget::default()).unwrap();
        let total: u64 = t.orbit_sizes().iter().sum();
        prop_assert_eq!(BigUint::from(total), BigUint::from(q).pow(quiver.rep_space_dim(alpha) as u32));
        let gl = gl_alpha_order(alpha, q);
        for (o, aut) in t.orbit_sizes().iter().zip(t.aut_orders()) {
            prop_assert_eq!(BigUint::from(*o) * aut, gl.clone());
        }
    }

    #[test]
    fn hall_product_is_associative(
        quiver_idx in 0usize..2,
        picks in prop::collection::vec((0usize..64, -2i64..=2), 3),
    ) {
        let quiver = Arc::new([Quiver::a2(), Quiver::kronecker(2)][quiver_idx].clone());
        let cat = Arc::new(RepCategory::new(quiver, 2, 3, Budget::default()).unwrap());
        let classes: Vec<_> = cat.classes().into_iter().filter(|k| k.dim.iter().sum::<usize>() == 1 || k.dim.iter().sum::<usize>() == 0).collect();
        let elems: Vec<HallElement> = picks
            .iter()
            .map(|(i, c)| {
                let k = classes[i % classes.len()].clone();
                HallElement::basis(cat.clone(), k).unwrap().scale(&rat(*c, 1))
            })
            .collect();
        let left = elems[0].product(&elems[1]).unwrap().product(&elems[2]).unwrap();
        let right = elems[0].product(&elems[1].product(&elems[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn hall_associativity_on_all_small_triples() {
    for quiver in [Quiver::a1(), Quiver::a2(), Quiver::kronecker(2)] {
        let cat = Arc::new(RepCategory::new(Arc::new(quiver), 2, 3, Budget::default()).unwrap());
        let classes = cat.classes();
        let size = |k: &motivic_hall::protoexact::ClassKey| k.dim.iter().sum::<usize>();
        for a in &classes {
            for b in &classes {
                for c in &classes {
                    if size(a) + size(b) + size(c) > 3 {
                        continue;
                    }
                    let x = HallElement::basis(cat.clone(), a.clone()).unwrap();
                    let y = HallElement::basis(cat.clone(), b.clone()).unwrap();
                    let z = HallElement::basis(cat.clone(), c.clone()).unwrap();
                    let left = x.product(&y).unwrap().product(&z).unwrap();
                    let right = x.product(&y.product(&z).unwrap()).unwrap();
                    assert_eq!(left, right, "classes {a}, {b}, {c}");
                }
            }
        }
    }
    let _ = Rational::from_integer(BigInt::from(0));
}
