use num_bigint::BigUint;

use super::QuiverRep;
use crate::budget::Budget;
use crate::error::Result;
use crate::field::FiniteField;
use crate::linalg::{all_subspaces, subspaces_of_dim, Matrix, Subspace};

/// A subrepresentation `B <= E` given by vertexwise subspaces, with `B` and `E/B`
/// written in the induced bases.
#[derive(Clone, Debug)]
pub struct Subobject {
    pub spaces: Vec<Subspace>,
    pub sub: QuiverRep,
    pub quot: QuiverRep,
}

/// Whether a tuple of vertex subspaces is closed under all arrows.
pub fn is_arrow_closed(e: &QuiverRep, spaces: &[Subspace]) -> bool {
    let f = e.field();
    e.quiver().arrows().iter().enumerate().all(|(k, &(s, t))| {
        (0..spaces[s].dim()).all(|i| {
            let img = e.mats()[k].apply(spaces[s].basis.row(i), f);
            spaces[t].contains(&img, f)
        })
    })
}

/// Tuples of arrow-closed subspaces; `dims` restricts the dimension vector.
pub fn closed_subspace_tuples(
    e: &QuiverRep,
    dims: Option<&[usize]>,
    budget: Budget,
) -> Result<Vec<Vec<Subspace>>> {
    let f = e.field();
    let n = e.dim().len();
    let candidates: Vec<Vec<Subspace>> = (0..n)
        .map(|v| match dims {
            Some(d) => subspaces_of_dim(e.dim()[v], d[v], f),
            None => all_subspaces(e.dim()[v], f),
        })
        .collect();
    let total = candidates
        .iter()
        .fold(BigUint::from(1u32), |acc, c| acc * BigUint::from(c.len()));
    budget.check("subobject enumeration", &total)?;
    let mut out = Vec::new();
    let mut current: Vec<Subspace> = Vec::with_capacity(n);
    backtrack(e, &candidates, &mut current, &mut out);
    Ok(out)
}

fn backtrack(
    e: &QuiverRep,
    candidates: &[Vec<Subspace>],
    current: &mut Vec<Subspace>,
    out: &mut Vec<Vec<Subspace>>,
) {
    let v = current.len();
    if v == candidates.len() {
        out.push(current.clone());
        return;
    }
    let f = e.field();
    for u in &candidates[v] {
        current.push(u.clone());
        // Check every arrow whose endpoints are both assigned and one of them is v.
        let ok = e.quiver().arrows().iter().enumerate().all(|(k, &(s, t))| {
            if s.max(t) != v {
                return true;
            }
            (0..current[s].dim()).all(|i| {
                let img = e.mats()[k].apply(current[s].basis.row(i), f);
                current[t].contains(&img, f)
            })
        });
        if ok {
            backtrack(e, candidates, current, out);
        }
        current.pop();
    }
}

/// Restriction of `E` to arrow-closed subspaces, in their echelon bases.
pub fn restrict(e: &QuiverRep, spaces: &[Subspace]) -> QuiverRep {
    let f = e.field();
    let dim: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let mats = e
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| {
            let mut m = Matrix::zeros(dim[t], dim[s]);
            for j in 0..dim[s] {
                let img = e.mats()[k].apply(spaces[s].basis.row(j), f);
                for (i, c) in spaces[t].coords(&img).into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            m
        })
        .collect();
    QuiverRep::from_parts(e.quiver().clone(), e.field().clone(), dim, mats)
}

/// Quotient `E / U` in the basis of standard vectors on non-pivot columns.
pub fn quotient(e: &QuiverRep, spaces: &[Subspace]) -> QuiverRep {
    let f = e.field();
    let comps: Vec<Vec<usize>> = spaces.iter().map(|s| s.complement_columns()).collect();
    let dim: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    let mats = e
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| {
            let mut m = Matrix::zeros(dim[t], dim[s]);
            for (j, &col) in comps[s].iter().enumerate() {
                let mut basis_vec = vec![0; e.dim()[s]];
                basis_vec[col] = 1;
                let img = e.mats()[k].apply(&basis_vec, f);
                for (i, c) in spaces[t].project(&img, f).into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            m
        })
        .collect();
    QuiverRep::from_parts(e.quiver().clone(), e.field().clone(), dim, mats)
}

/// Image of the arrow-closed `upper` in `E / lower` (requires `lower <= upper`).
pub fn image_in_quotient(lower: &[Subspace], upper: &[Subspace], f: &FiniteField) -> Vec<Subspace> {
    lower
        .iter()
        .zip(upper)
        .map(|(lo, up)| {
            let vs: Vec<Vec<u32>> = up.vectors().iter().map(|v| lo.project(v, f)).collect();
            Subspace::span(&vs, lo.ambient - lo.dim(), f)
        })
        .collect()
}

/// The subquotient `upper / lower` of `E`.
pub fn subquotient(e: &QuiverRep, lower: &[Subspace], upper: &[Subspace]) -> QuiverRep {
    let q = quotient(e, lower);
    let img = image_in_quotient(lower, upper, e.field());
    restrict(&q, &img)
}

/// All subrepresentations of `E` with their quotients, including `0` and `E`.
pub fn subobjects(e: &QuiverRep, budget: Budget) -> Result<Vec<Subobject>> {
    Ok(closed_subspace_tuples(e, None, budget)?
        .into_iter()
        .map(|spaces| Subobject {
            sub: restrict(e, &spaces),
            quot: quotient(e, &spaces),
            spaces,
        })
        .collect())
}

/// Subrepresentations of a fixed dimension vector.
pub fn subobjects_of_dim(e: &QuiverRep, beta: &[usize], budget: Budget) -> Result<Vec<Subobject>> {
    e.quiver().check_dim(beta)?;
    if beta.iter().zip(e.dim()).any(|(b, d)| b > d) {
        return Ok(vec![]);
    }
    Ok(closed_subspace_tuples(e, Some(beta), budget)?
        .into_iter()
        .map(|spaces| Subobject {
            sub: restrict(e, &spaces),
            quot: quotient(e, &spaces),
            spaces,
        })
        .collect())
}

/// Number of quotient representations `E -> E/K`: subspace tuples `K` for which
/// the arrow maps descend to `E/K`.
pub fn count_quotients(e: &QuiverRep, budget: Budget) -> Result<usize> {
    let f = e.field();
    let n = e.dim().len();
    let candidates: Vec<Vec<Subspace>> = (0..n).map(|v| all_subspaces(e.dim()[v], f)).collect();
    let total = candidates
        .iter()
        .fold(BigUint::from(1u32), |acc, c| acc * BigUint::from(c.len()));
    budget.check("quotient enumeration", &total)?;
    // A map E_v -> E_v/K_v descends along arrows iff f_a(K_s) maps to zero in E_t/K_t.
    let mut count = 0;
    let mut idx = vec![0usize; n];
    loop {
        let ks: Vec<&Subspace> = (0..n).map(|v| &candidates[v][idx[v]]).collect();
        let descends = e.quiver().arrows().iter().enumerate().all(|(k, &(s, t))| {
            ks[s].vectors().iter().all(|v| {
                let img = e.mats()[k].apply(v, f);
                ks[t].project(&img, f).iter().all(|&x| x == 0)
            })
        });
        if descends {
            count += 1;
        }
        let mut v = 0;
        loop {
            if v == n {
                return Ok(count);
            }
            idx[v] += 1;
            if idx[v] < candidates[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}
