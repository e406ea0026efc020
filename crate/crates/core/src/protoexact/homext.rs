use num_bigint::BigUint;

use super::QuiverRep;
use crate::budget::Budget;
use crate::error::Result;
use crate::field::Elem;
use crate::linalg::Matrix;

/// Linear system whose kernel is Hom(A, B): unknowns are the vertex maps
/// `phi_v` (row-major, vertex by vertex), one equation block per arrow
/// `phi_t A_a - B_a phi_s = 0`.
fn intertwiner_system(a: &QuiverRep, b: &QuiverRep) -> (Matrix, Vec<usize>) {
    let f = a.field();
    let n = a.dim().len();
    let mut offsets = Vec::with_capacity(n);
    let mut cols = 0;
    for v in 0..n {
        offsets.push(cols);
        cols += b.dim()[v] * a.dim()[v];
    }
    let rows: usize = a.quiver().arrows().iter().map(|&(s, t)| b.dim()[t] * a.dim()[s]).sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut r = 0;
    for (k, &(s, t)) in a.quiver().arrows().iter().enumerate() {
        let (am, bm) = (&a.mats()[k], &b.mats()[k]);
        let (bs, bt, as_) = (b.dim()[s], b.dim()[t], a.dim()[s]);
        let at = a.dim()[t];
        for i in 0..bt {
            for j in 0..as_ {
                // (phi_t A)_{ij} = sum_l phi_t[i,l] A[l,j]
                for l in 0..at {
                    let c = offsets[t] + i * at + l;
                    let v = f.add(m.get(r, c), am.get(l, j));
                    m.set(r, c, v);
                }
                // -(B phi_s)_{ij} = -sum_l B[i,l] phi_s[l,j]
                for l in 0..bs {
                    let c = offsets[s] + l * as_ + j;
                    let v = f.sub(m.get(r, c), bm.get(i, l));
                    m.set(r, c, v);
                }
                r += 1;
            }
        }
    }
    (m, offsets)
}

/// Dimension of Hom(A, B) over F_q.
pub fn hom_dim(a: &QuiverRep, b: &QuiverRep) -> Result<usize> {
    a.check_same_context(b)?;
    let (m, _) = intertwiner_system(a, b);
    Ok(m.cols - m.rank(a.field()))
}

/// Dimension of Ext^1(A, B), via the hereditary Euler identity `hom - ext = psi`.
pub fn ext1_dim(a: &QuiverRep, b: &QuiverRep) -> Result<usize> {
    let h = hom_dim(a, b)? as i64;
    let x: Vec<i64> = a.dim().iter().map(|&d| d as i64).collect();
    let y: Vec<i64> = b.dim().iter().map(|&d| d as i64).collect();
    let psi = a.quiver().euler_form(&x, &y)?;
    Ok((h - psi) as usize)
}

/// Dimension of Ext^1(A, B) as the cokernel of the intertwiner map
/// `oplus_v Hom(A_v, B_v) -> oplus_a Hom(A_s, B_t)`; independent of the Euler form.
pub fn ext1_dim_cokernel(a: &QuiverRep, b: &QuiverRep) -> Result<usize> {
    a.check_same_context(b)?;
    let (m, _) = intertwiner_system(a, b);
    Ok(m.rows - m.rank(a.field()))
}

/// Splits a flat solution vector into vertex matrices `B_v x A_v`.
fn unflatten(a: &QuiverRep, b: &QuiverRep, offsets: &[usize], x: &[Elem]) -> Vec<Matrix> {
    (0..a.dim().len())
        .map(|v| {
            let (r, c) = (b.dim()[v], a.dim()[v]);
            Matrix {
                rows: r,
                cols: c,
                data: x[offsets[v]..offsets[v] + r * c].to_vec(),
            }
        })
        .collect()
}

/// Every automorphism of `E`, found as the invertible elements of End(E).
pub fn automorphisms(e: &QuiverRep, budget: Budget) -> Result<Vec<Vec<Matrix>>> {
    let f = e.field();
    let (m, offsets) = intertwiner_system(e, e);
    let basis = m.nullspace(f);
    let q = f.q() as u64;
    let count = budget.check_pow("endomorphism enumeration", q, basis.len() as u64)?;
    let mut out = Vec::new();
    let mut x = vec![0; m.cols];
    for mut idx in 0..count {
        x.iter_mut().for_each(|v| *v = 0);
        for b in &basis {
            let c = (idx % q) as Elem;
            idx /= q;
            if c == 0 {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = f.add(*xi, f.mul(c, *bi));
            }
        }
        let maps = unflatten(e, e, &offsets, &x);
        if maps.iter().all(|g| g.is_invertible(f)) {
            out.push(maps);
        }
    }
    Ok(out)
}

/// `|Aut(E)|` by enumerating End(E).
pub fn automorphism_count(e: &QuiverRep, budget: Budget) -> Result<BigUint> {
    Ok(BigUint::from(automorphisms(e, budget)?.len()))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::protoexact::Quiver;

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::a2())
    }

    #[test]
    fn simple_reps_of_a2() {
        let s1 = QuiverRep::simple(a2(), 2, 0).unwrap();
        let s2 = QuiverRep::simple(a2(), 2, 1).unwrap();
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(ext1_dim(&s1, &s1).unwrap(), 0);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim_cokernel(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 0);
        let z = QuiverRep::zero(a2(), 2).unwrap();
        assert_eq!(hom_dim(&z, &s1).unwrap(), 0);
        assert_eq!(ext1_dim(&z, &s1).unwrap(), 0);
    }

    #[test]
    fn automorphisms_of_vector_spaces() {
        let q = Arc::new(Quiver::a1());
        let v = QuiverRep::with_zero_maps(q.clone(), 3, vec![2]).unwrap();
        assert_eq!(automorphisms(&v, Budget::default()).unwrap().len(), 48);
        let v = QuiverRep::with_zero_maps(q, 2, vec![3]).unwrap();
        assert_eq!(automorphisms(&v, Budget::default()).unwrap().len(), 168);
    }

    #[test]
    fn automorphisms_of_nonsplit_a2() {
        let rep = QuiverRep::from_json(a2(), r#"{"q":3,"dim":[1,1],"mats":[[[1]]]}"#).unwrap();
        assert_eq!(automorphisms(&rep, Budget::default()).unwrap().len(), 2);
        let split = QuiverRep::with_zero_maps(a2(), 3, vec![1, 1]).unwrap();
        assert_eq!(automorphisms(&split, Budget::default()).unwrap().len(), 4);
    }
}
