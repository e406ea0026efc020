//! Class functions on finite groups, symmetric group characters, parabolic induction and
//! the equivariant count of semistable flags.

mod characters;
mod class_function;
mod parabolic;
mod period;

pub use characters::{class_size, decompose, murnaghan_nakayama, sym_character_table, CharacterTable, MAX_CHARACTER_TABLE};
pub use class_function::{dimension_at, frobenius_reciprocity_holds, ClassFunction};
pub use parabolic::{gl_parabolic, sym_parabolic, Parabolic};
pub use period::{
    equivariant_period_domain, equivariant_period_domain_on, parabolic_induction, twisted_fixed_point_count,
    AmbientGroup,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{rat, MotivicScalar, Rational};
    use crate::group::{symmetric_group, young_subgroup, FiniteGroup, Subgroup};
    use std::sync::Arc;

    fn ints(f: &ClassFunction) -> Vec<Rational> {
        f.values().iter().map(|v| v.evaluate(1).unwrap()).collect()
    }

    #[test]
    fn induced_trivial_characters() {
        let s3 = symmetric_group(3).unwrap();
        let h = young_subgroup(&s3, &[2, 1]).unwrap();
        let ind = ClassFunction::trivial(h.group.clone()).induce(&h).unwrap();
        assert_eq!(ints(&ind), vec![rat(3, 1), rat(1, 1), rat(0, 1)]);

        let s2 = symmetric_group(2).unwrap();
        let h = young_subgroup(&s2, &[1, 1]).unwrap();
        let ind = ClassFunction::trivial(h.group.clone()).induce(&h).unwrap();
        assert_eq!(ints(&ind), vec![rat(2, 1), rat(0, 1)]);
    }

    #[test]
    fn sign_times_sign() {
        let s2 = symmetric_group(2).unwrap();
        let sign = ClassFunction::from_integers(s2.group.clone(), &[1, -1]).unwrap();
        let ext = sign.external_product(&sign);
        let by_element: Vec<Rational> = (0..4).map(|g| ext.value_at(g).evaluate(1).unwrap()).collect();
        assert_eq!(by_element, vec![rat(1, 1), rat(-1, 1), rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn dimensions() {
        let s3 = symmetric_group(3).unwrap();
        let t = MotivicScalar::l();
        let f = ClassFunction::new(s3.group.clone(), vec![t.add(&MotivicScalar::one()), t.clone(), MotivicScalar::zero()])
            .unwrap();
        assert_eq!(dimension_at(&f, &rat(2, 1)).unwrap(), rat(3, 1));
        assert_eq!(dimension_at(&f, &rat(1, 1)).unwrap(), rat(2, 1));
    }

    #[test]
    fn character_tables_are_orthonormal() {
        for r in 0..=MAX_CHARACTER_TABLE {
            let t = sym_character_table(r).unwrap();
            assert!(t.is_orthonormal(), "S_{r}");
            let sum_sq: i64 = t.degrees().iter().map(|d| d * d).sum();
            assert_eq!(sum_sq as u64, t.order());
        }
        let t = sym_character_table(3).unwrap();
        assert_eq!(t.values, vec![vec![1, 1, 1], vec![2, 0, -1], vec![1, -1, 1]]);
        assert!(sym_character_table(MAX_CHARACTER_TABLE + 1).is_err());
    }

    #[test]
    fn table_matches_explicit_class_functions() {
        let s4 = symmetric_group(4).unwrap();
        let t = sym_character_table(4).unwrap();
        for i in 0..t.rows.len() {
            for j in 0..t.rows.len() {
                let a = t.character(i, &s4).unwrap();
                let b = t.character(j, &s4).unwrap();
                let ip = a.inner_product_at(&b, &rat(1, 1)).unwrap();
                assert_eq!(ip, rat((i == j) as i64, 1));
            }
        }
    }

    #[test]
    fn permutation_character_decomposes() {
        let s3 = symmetric_group(3).unwrap();
        let t = sym_character_table(3).unwrap();
        let h = young_subgroup(&s3, &[2, 1]).unwrap();
        let ind = ClassFunction::trivial(h.group.clone()).induce(&h).unwrap();
        let mult = decompose(&ind, &t, &s3).unwrap();
        assert_eq!(mult, vec![MotivicScalar::one(), MotivicScalar::one(), MotivicScalar::zero()]);
    }

    #[test]
    fn reciprocity_and_transitivity() {
        let s4 = symmetric_group(4).unwrap();
        let t = sym_character_table(4).unwrap();
        let h = young_subgroup(&s4, &[2, 1, 1]).unwrap();
        let sign_h = t.character(t.rows.len() - 1, &s4).unwrap().restrict(&h).unwrap();
        for i in 0..t.rows.len() {
            let chi = t.character(i, &s4).unwrap();
            assert!(frobenius_reciprocity_holds(&sign_h, &chi, &h).unwrap());
        }
        // S_2 x S_1 x S_1 inside S_2 x S_2 inside S_4.
        let k = young_subgroup(&s4, &[2, 2]).unwrap();
        let mid = Subgroup::from_elements(k.group.clone(), &[0, 2], "S_2xS_1xS_1").unwrap();
        let h_in_k: Vec<usize> = mid.embed.iter().map(|&x| k.embed[x]).collect();
        assert!(h_in_k.iter().all(|&g| h.contains(g)));
        let f = ClassFunction::trivial(mid.group.clone());
        let two_step = f.induce(&mid).unwrap().induce(&k).unwrap();
        let composite = Subgroup::from_embedding(s4.group.clone(), mid.group.clone(), h_in_k).unwrap();
        let direct = f.induce(&composite).unwrap();
        assert_eq!(two_step, direct);
    }

    #[test]
    fn json_round_trip() {
        let s3 = symmetric_group(3).unwrap();
        let f = ClassFunction::new(s3.group.clone(), vec![MotivicScalar::l(), MotivicScalar::one(), MotivicScalar::zero()])
            .unwrap();
        let v = f.to_json_value();
        assert_eq!(ClassFunction::from_json_value(s3.group.clone(), &v).unwrap(), f);
        let other = Arc::new(FiniteGroup::trivial());
        assert!(ClassFunction::from_json_value(other, &v).is_err());
    }
}
