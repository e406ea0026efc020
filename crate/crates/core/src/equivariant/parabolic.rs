use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{general_linear, symmetric_group, young_subgroup, FiniteGroup, MatrixGroup, PermutationGroup, Subgroup};
use crate::linalg::Matrix;

/// Standard parabolic `P_eta` stabilizing the coordinate flag with pieces `eta`, with its
/// Levi quotient `L = prod_i G_{eta_i}` and the projection `P -> L`.
#[derive(Clone, Debug)]
pub struct Parabolic {
    pub eta: Vec<usize>,
    pub subgroup: Subgroup,
    /// Factors of the Levi quotient, in block order.
    pub factors: Vec<Arc<FiniteGroup>>,
    /// Left-nested direct product of `factors`; the last factor is least significant.
    pub levi: Arc<FiniteGroup>,
    /// `projection[p]` is the Levi element of the `p`-th element of `subgroup.group`.
    pub projection: Vec<usize>,
}

fn check_eta(eta: &[usize], r: usize) -> Result<()> {
    if eta.is_empty() || eta.contains(&0) || eta.iter().sum::<usize>() != r {
        return Err(Error::validation("eta", format!("{eta:?} is not a composition of {r} with positive parts")));
    }
    Ok(())
}

fn block_starts(eta: &[usize]) -> Vec<usize> {
    let mut starts = Vec::with_capacity(eta.len());
    let mut s = 0;
    for &e in eta {
        starts.push(s);
        s += e;
    }
    starts
}

fn nested_product(factors: &[Arc<FiniteGroup>]) -> FiniteGroup {
    let mut product = (*factors[0]).clone();
    for f in &factors[1..] {
        product = FiniteGroup::direct_product(&product, f);
    }
    product
}

/// Block upper triangular matrices in `GL_r(F_q)`.
pub fn gl_parabolic(gl: &MatrixGroup, eta: &[usize], budget: Budget) -> Result<Parabolic> {
    let r = gl.mats.first().map_or(0, |m| m.rows);
    check_eta(eta, r)?;
    let starts = block_starts(eta);
    let block_of: Vec<usize> = eta.iter().enumerate().flat_map(|(b, &e)| std::iter::repeat_n(b, e)).collect();
    let elements: Vec<usize> = (0..gl.mats.len())
        .filter(|&x| {
            let m = &gl.mats[x];
            (0..r).all(|i| (0..r).all(|j| block_of[i] <= block_of[j] || m.get(i, j) == 0))
        })
        .collect();
    let name = format!("P_{}", eta.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","));
    let subgroup = Subgroup::from_elements(gl.group.clone(), &elements, &name)?;
    let factor_groups: Vec<MatrixGroup> =
        eta.iter().map(|&e| general_linear(e, gl.q, budget)).collect::<Result<_>>()?;
    let factors: Vec<Arc<FiniteGroup>> = factor_groups.iter().map(|g| g.group.clone()).collect();
    let levi = Arc::new(nested_product(&factors));
    let projection = elements
        .iter()
        .map(|&x| {
            let m = &gl.mats[x];
            let mut idx = 0;
            for (b, &e) in eta.iter().enumerate() {
                let s = starts[b];
                let rows: Vec<Vec<u32>> = (0..e).map(|i| (0..e).map(|j| m.get(s + i, s + j)).collect()).collect();
                let k = factor_groups[b]
                    .index_of(&Matrix::from_rows(&rows, e))
                    .expect("diagonal blocks of an invertible block triangular matrix are invertible");
                idx = idx * factor_groups[b].mats.len() + k;
            }
            idx
        })
        .collect();
    Ok(Parabolic {
        eta: eta.to_vec(),
        subgroup,
        factors,
        levi,
        projection,
    })
}

/// Young subgroup `S_eta` of `S_r`, which is its own Levi quotient.
pub fn sym_parabolic(sr: &PermutationGroup, eta: &[usize]) -> Result<Parabolic> {
    let r = sr.perms.first().map_or(0, |p| p.len());
    check_eta(eta, r)?;
    let subgroup = young_subgroup(sr, eta)?;
    let factors: Vec<Arc<FiniteGroup>> =
        eta.iter().map(|&e| Ok(symmetric_group(e)?.group)).collect::<Result<_>>()?;
    let levi = subgroup.group.clone();
    let projection = (0..levi.order()).collect();
    Ok(Parabolic {
        eta: eta.to_vec(),
        subgroup,
        factors,
        levi,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{multinomial, parabolic_order_poly};
    use num_bigint::BigInt;

    #[test]
    fn parabolic_orders_match_formula() {
        let b = Budget::default();
        for (r, q) in [(2usize, 2u32), (2, 3), (3, 2)] {
            let gl = general_linear(r, q, b).unwrap();
            for eta in [vec![r], vec![1, r - 1], vec![r - 1, 1]] {
                let eta: Vec<usize> = eta.into_iter().filter(|&e| e > 0).collect();
                let p = gl_parabolic(&gl, &eta, b).unwrap();
                let parts: Vec<u32> = eta.iter().map(|&e| e as u32).collect();
                let expect = parabolic_order_poly(&parts).eval_int(&BigInt::from(q));
                assert_eq!(BigInt::from(p.subgroup.group.order()), expect, "r={r} q={q} eta={eta:?}");
                assert_eq!(p.projection.len(), p.subgroup.group.order());
            }
        }
        let gl = general_linear(3, 2, b).unwrap();
        let borel = gl_parabolic(&gl, &[1, 1, 1], b).unwrap();
        assert_eq!(borel.subgroup.group.order(), 8);
        assert_eq!(borel.levi.order(), 1);
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let b = Budget::default();
        let gl = general_linear(3, 2, b).unwrap();
        let p = gl_parabolic(&gl, &[2, 1], b).unwrap();
        let h = &p.subgroup.group;
        assert_eq!(p.levi.order(), 6);
        for x in 0..h.order() {
            for y in 0..h.order() {
                assert_eq!(p.projection[h.mul(x, y)], p.levi.mul(p.projection[x], p.projection[y]));
            }
        }
    }

    #[test]
    fn young_subgroup_index_is_multinomial() {
        let s4 = symmetric_group(4).unwrap();
        for eta in [vec![4], vec![2, 2], vec![1, 2, 1], vec![1, 1, 1, 1]] {
            let p = sym_parabolic(&s4, &eta).unwrap();
            let parts: Vec<u32> = eta.iter().map(|&e| e as u32).collect();
            assert_eq!(BigInt::from(p.subgroup.index()), multinomial(&parts));
            assert_eq!(*p.levi, nested_product(&p.factors));
        }
        assert!(sym_parabolic(&s4, &[2, 1]).is_err());
    }
}
