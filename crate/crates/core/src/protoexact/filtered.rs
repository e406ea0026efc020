use std::sync::Arc;

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::coeffring::gaussian_multinomial;
use crate::error::{Error, Result};
use crate::field::{field, FiniteField};
use crate::linalg::{subspaces_of_dim, Subspace};

/// A chain of subspaces `0 <= S_1 <= ... <= S_k = F_q^r` in echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilteredSpace {
    pub q: u32,
    pub r: usize,
    /// Increasing steps, the last being the whole space.
    pub steps: Vec<Subspace>,
}

impl FilteredSpace {
    pub fn new(q: u32, r: usize, steps: Vec<Subspace>) -> Result<Self> {
        let f = field(q)?;
        if steps.last().map(|s| s.dim()) != Some(r) {
            return Err(Error::validation("steps", "last step must be the whole space"));
        }
        for s in &steps {
            if s.ambient != r {
                return Err(Error::validation("steps", "subspace has the wrong ambient dimension"));
            }
        }
        for w in steps.windows(2) {
            if !w[1].contains_subspace(&w[0], &f) {
                return Err(Error::validation("steps", "steps are not nested"));
            }
        }
        Ok(FilteredSpace { q, r, steps })
    }

    pub fn field(&self) -> Arc<FiniteField> {
        field(self.q).expect("validated on construction")
    }

    /// Dimensions of the graded pieces `S_i / S_{i-1}`.
    pub fn grading(&self) -> Vec<usize> {
        let mut prev = 0;
        self.steps
            .iter()
            .map(|s| {
                let d = s.dim() - prev;
                prev = s.dim();
                d
            })
            .collect()
    }
}

/// Every flag in `F_q^r` whose graded pieces have the dimensions `delta`, by exhaustive
/// enumeration of subspaces.
pub fn flags_of_type(q: u32, delta: &[usize], budget: Budget) -> Result<Vec<FilteredSpace>> {
    let r: usize = delta.iter().sum();
    if delta.contains(&0) {
        return Err(Error::validation("delta", "entries must be positive"));
    }
    let f = field(q)?;
    let parts: Vec<u32> = delta.iter().map(|&d| d as u32).collect();
    let expected = gaussian_multinomial(r as u32, &parts)?.eval_int(&num_bigint::BigInt::from(q));
    let expected = expected.to_biguint().unwrap_or_default();
    budget.check("flag enumeration", &(expected * BigUint::from(r.max(1))))?;
    let mut chains: Vec<Vec<Subspace>> = vec![vec![]];
    let mut dim = 0;
    for &d in delta {
        dim += d;
        let layer = subspaces_of_dim(r, dim, &f);
        let mut next = Vec::new();
        for c in &chains {
            for s in &layer {
                if c.last().is_none_or(|prev| s.contains_subspace(prev, &f)) {
                    let mut n = c.clone();
                    n.push(s.clone());
                    next.push(n);
                }
            }
        }
        chains = next;
    }
    Ok(chains
        .into_iter()
        .map(|steps| FilteredSpace { q, r, steps })
        .collect())
}

/// A finite pointed set `{*, 1, ..., size}`; subobjects are subsets of the non-base points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PointedSet {
    pub size: usize,
}

impl PointedSet {
    /// Subsets as bitmasks.
    pub fn subsets(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.size)
    }

    /// Ordered set partitions with block sizes `delta` (flags of coordinate subsets),
    /// as a block index per point.
    pub fn flags_of_type(&self, delta: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut remaining = delta.to_vec();
        let mut current = Vec::with_capacity(self.size);
        fill(&mut remaining, &mut current, self.size, &mut out);
        out
    }
}

fn fill(remaining: &mut [usize], current: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
    if current.len() == n {
        if remaining.iter().all(|&x| x == 0) {
            out.push(current.clone());
        }
        return;
    }
    for b in 0..remaining.len() {
        if remaining[b] > 0 {
            remaining[b] -= 1;
            current.push(b);
            fill(remaining, current, n, out);
            current.pop();
            remaining[b] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_flags_in_plane() {
        assert_eq!(flags_of_type(2, &[1, 1], Budget::default()).unwrap().len(), 3);
        assert_eq!(flags_of_type(3, &[1, 1], Budget::default()).unwrap().len(), 4);
        assert_eq!(flags_of_type(2, &[1, 2], Budget::default()).unwrap().len(), 7);
        let fl = &flags_of_type(2, &[1, 1, 1], Budget::default()).unwrap();
        assert_eq!(fl.len(), 21);
        assert_eq!(fl[0].grading(), vec![1, 1, 1]);
    }

    #[test]
    fn nesting_is_validated() {
        let f = field(2).unwrap();
        let a = Subspace::span(&[vec![1, 0]], 2, &f);
        let b = Subspace::span(&[vec![0, 1]], 2, &f);
        assert!(FilteredSpace::new(2, 2, vec![a.clone(), Subspace::full(2)]).is_ok());
        assert!(FilteredSpace::new(2, 2, vec![a, b]).is_err());
    }

    #[test]
    fn pointed_flags_are_multinomial() {
        assert_eq!(PointedSet { size: 3 }.flags_of_type(&[1, 2]).len(), 3);
        assert_eq!(PointedSet { size: 4 }.flags_of_type(&[1, 1, 2]).len(), 12);
        assert_eq!(PointedSet { size: 0 }.flags_of_type(&[]).len(), 1);
    }
}
