use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::budget::Budget;
use crate::coeffring::Rational;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// Hecke algebra of a pair `(G, K)` on the basis of double cosets `K g K`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    /// Elements of each double coset, the first one being its representative.
    pub double_cosets: Vec<Vec<usize>>,
    /// `constants[i][j][k]`: coefficient of basis element `k` in `e_i * e_j`.
    pub constants: Vec<Vec<Vec<Rational>>>,
    pub subgroup_order: usize,
}

impl HeckeAlgebra {
    pub fn rank(&self) -> usize {
        self.double_cosets.len()
    }

    /// Index of the double coset containing `K`.
    pub fn unit_index(&self) -> usize {
        0
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.rank();
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().take(n) {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate().take(n) {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, s) in out.iter_mut().zip(&self.constants[i][j]) {
                    *o += &c * s;
                }
            }
        }
        out
    }

    /// Exhaustive check of `(e_i e_j) e_k = e_i (e_j e_k)` on basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.rank();
        let basis = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::from_integer(BigInt::from(1));
            v
        };
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let left = self.product(&self.product(&basis(i), &basis(j)), &basis(k));
                    let right = self.product(&basis(i), &self.product(&basis(j), &basis(k)));
                    left == right
                })
            })
        })
    }
}

fn coset_of(g: &FiniteGroup, k: &Subgroup, x: usize) -> Vec<usize> {
    let mut c: Vec<usize> = k.embed.iter().map(|&h| g.mul(x, h)).collect();
    c.sort_unstable();
    c
}

/// Splits `G` into double cosets `K g K`, ordered by their least element
/// (so the first one is `K`).
pub fn double_cosets(k: &Subgroup) -> Vec<Vec<usize>> {
    let g = &k.ambient;
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut d = Vec::new();
        for &a in &k.embed {
            for &b in &k.embed {
                let y = g.mul(g.mul(a, x), b);
                if !seen[y] {
                    seen[y] = true;
                    d.push(y);
                }
            }
        }
        d.sort_unstable();
        out.push(d);
    }
    // K contains the identity; move its double coset to the front.
    let e = g.identity();
    let pos = out.iter().position(|d| d.contains(&e)).expect("identity lies in some double coset");
    let unit = out.remove(pos);
    out.insert(0, unit);
    out
}

/// Structure constants of the Hecke algebra of `(G, K)` obtained by counting on the
/// nerve of `G` acting on `F = G/K`: orbits of `G` on `F^2` index the basis and
/// orbits on `F^3` carry the transfer weights `|Stab(a,c)| / |Stab(a,b,c)|`.
pub fn hecke_structure_constants(k: &Subgroup, budget: Budget) -> Result<HeckeAlgebra> {
    let g = k.ambient.clone();
    let n = g.order();
    let m = k.index();
    budget.check("Hecke nerve", &(num_bigint::BigUint::from(m).pow(3) * n))?;
    // Points of F with the action of G.
    let transversal = k.left_transversal();
    let mut point_of = vec![usize::MAX; n];
    for (i, &t) in transversal.iter().enumerate() {
        for x in coset_of(&g, k, t) {
            point_of[x] = i;
        }
    }
    if point_of.contains(&usize::MAX) {
        return Err(Error::consistency("left transversal does not cover the group"));
    }
    let act = |x: usize, p: usize| point_of[g.mul(x, transversal[p])];

    let dc = double_cosets(k);
    let mut dc_of = vec![0usize; n];
    for (i, d) in dc.iter().enumerate() {
        for &x in d {
            dc_of[x] = i;
        }
    }
    // The G-orbit of (xK, yK) is the double coset of x^{-1} y.
    let pair_orbit = |a: usize, b: usize| dc_of[g.mul(g.inv(transversal[a]), transversal[b])];

    let stabilizer = |pts: &[usize]| (0..n).filter(|&x| pts.iter().all(|&p| act(x, p) == p)).count();

    let r = dc.len();
    let mut constants = vec![vec![vec![Rational::zero(); r]; r]; r];
    // Orbits on F^3: each meets {a = base point}; reduce further by Stab(a).
    let base = point_of[g.identity()];
    let stab_base: Vec<usize> = (0..n).filter(|&x| act(x, base) == base).collect();
    let mut seen: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    for b in 0..m {
        for c in 0..m {
            if seen.contains_key(&(b, c)) {
                continue;
            }
            for &x in &stab_base {
                seen.insert((act(x, b), act(x, c)), ());
            }
            let i = pair_orbit(base, b);
            let j = pair_orbit(b, c);
            let kk = pair_orbit(base, c);
            let w = Rational::new(
                BigInt::from(stabilizer(&[base, c])),
                BigInt::from(stabilizer(&[base, b, c])),
            );
            constants[i][j][kk] += w;
        }
    }
    Ok(HeckeAlgebra {
        double_cosets: dc,
        constants,
        subgroup_order: k.group.order(),
    })
}

/// Structure constants from convolution of double-coset indicators:
/// `c^k_{ij} = #{h in D_i : h^{-1} g_k in D_j} / |K|`.
pub fn hecke_convolution_oracle(k: &Subgroup) -> Vec<Vec<Vec<Rational>>> {
    let g = &k.ambient;
    let dc = double_cosets(k);
    let r = dc.len();
    let mut dc_of = vec![0usize; g.order()];
    for (i, d) in dc.iter().enumerate() {
        for &x in d {
            dc_of[x] = i;
        }
    }
    let order = BigInt::from(k.group.order());
    let mut out = vec![vec![vec![Rational::zero(); r]; r]; r];
    for (i, di) in dc.iter().enumerate() {
        for (kk, dk) in dc.iter().enumerate() {
            let gk = dk[0];
            let mut counts = vec![0usize; r];
            for &h in di {
                counts[dc_of[g.mul(g.inv(h), gk)]] += 1;
            }
            for (j, cnt) in counts.into_iter().enumerate() {
                out[i][j][kk] = Rational::new(BigInt::from(cnt), order.clone());
            }
        }
    }
    out
}
