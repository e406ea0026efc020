use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{Quiver, QuiverRep};
use crate::budget::Budget;
use crate::coeffring::{gl_order_poly, Rational};
use crate::error::{Error, Result};
use crate::field::{field, Elem, FiniteField};
use crate::linalg::Matrix;

/// `|GL_alpha(F_q)| = prod_i |GL_{alpha_i}(F_q)|`.
pub fn gl_alpha_order(alpha: &[usize], q: u32) -> BigUint {
    alpha.iter().fold(BigUint::one(), |acc, &n| {
        let v = gl_order_poly(n as u32).eval_int(&BigInt::from(q));
        acc * v.to_biguint().expect("group orders are positive")
    })
}

/// Isomorphism classes of representations of dimension `alpha` over F_q,
/// with automorphism group orders and a point-to-class lookup.
#[derive(Clone, Debug)]
pub struct IsoClassTable {
    quiver: Arc<Quiver>,
    alpha: Vec<usize>,
    q: u32,
    reps: Vec<QuiverRep>,
    aut_orders: Vec<BigUint>,
    orbit_sizes: Vec<u64>,
    class_of: Vec<u32>,
}

/// Mixed-radix codec between matrix tuples and point indices; the first
/// coordinate is most significant, so index order is lexicographic order.
struct PointCodec {
    q: u64,
    len: usize,
}

impl PointCodec {
    fn encode(&self, coords: &[Elem]) -> u64 {
        coords.iter().fold(0u64, |acc, &c| acc * self.q + c as u64)
    }

    fn decode(&self, mut idx: u64, out: &mut [Elem]) {
        for slot in out.iter_mut().rev() {
            *slot = (idx % self.q) as Elem;
            idx /= self.q;
        }
        debug_assert_eq!(out.len(), self.len);
    }
}

/// Generators of GL_n(F_q): elementary transvections with every nonzero
/// scalar and one diagonal scaling by a primitive element.
fn gl_generators(n: usize, f: &FiniteField) -> Vec<(Matrix, Matrix)> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for c in 1..f.q() {
                let mut g = Matrix::identity(n);
                g.set(i, j, c);
                let inv = g.inverse(f).expect("transvections are invertible");
                gens.push((g, inv));
            }
        }
    }
    if n > 0 && f.q() > 2 {
        let mut g = Matrix::identity(n);
        g.set(0, 0, f.primitive());
        let inv = g.inverse(f).expect("invertible");
        gens.push((g, inv));
    }
    gens
}

impl IsoClassTable {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[QuiverRep] {
        &self.reps
    }

    pub fn aut_orders(&self) -> &[BigUint] {
        &self.aut_orders
    }

    pub fn orbit_sizes(&self) -> &[u64] {
        &self.orbit_sizes
    }

    /// Index of the class of `rep`, which must have dimension `alpha`.
    pub fn identify(&self, rep: &QuiverRep) -> Result<usize> {
        if rep.dim() != self.alpha.as_slice() || rep.q() != self.q || **rep.quiver() != *self.quiver {
            return Err(Error::validation("representation", "does not belong to this table"));
        }
        let codec = PointCodec {
            q: self.q as u64,
            len: self.quiver.rep_space_dim(&self.alpha),
        };
        Ok(self.class_of[codec.encode(&rep.coordinates()) as usize] as usize)
    }

    /// Homotopy cardinality `sum 1/|Aut|` of the groupoid of representations.
    pub fn groupoid_count(&self) -> Rational {
        self.aut_orders.iter().fold(Rational::zero(), |acc, a| {
            acc + Rational::new(BigInt::one(), BigInt::from(a.clone()))
        })
    }
}

/// Enumerates isomorphism classes of representations of dimension `alpha` by
/// exhaustive orbit search; the canonical representative of each class is its
/// lexicographically minimal point.
pub fn enumerate_reps(quiver: &Arc<Quiver>, alpha: &[usize], q: u32, budget: Budget) -> Result<IsoClassTable> {
    quiver.check_dim(alpha)?;
    let f = field(q)?;
    let dim_v = quiver.rep_space_dim(alpha);
    let points = budget.check_pow("representation space", q as u64, dim_v as u64)?;
    let codec = PointCodec {
        q: q as u64,
        len: dim_v,
    };
    let arrows = quiver.arrows();
    let mut offsets = Vec::with_capacity(arrows.len());
    let mut o = 0;
    for &(s, t) in arrows {
        offsets.push(o);
        o += alpha[s] * alpha[t];
    }
    let gens: Vec<(usize, Matrix, Matrix)> = (0..alpha.len())
        .flat_map(|v| gl_generators(alpha[v], &f).into_iter().map(move |(g, gi)| (v, g, gi)))
        .collect();

    let mut class_of = vec![u32::MAX; points as usize];
    let mut reps = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut point = vec![0 as Elem; dim_v];
    let mut moved = vec![0 as Elem; dim_v];
    let mut queue = VecDeque::new();
    for start in 0..points {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        let cls = reps.len() as u32;
        class_of[start as usize] = cls;
        queue.push_back(start);
        let mut size = 0u64;
        while let Some(idx) = queue.pop_front() {
            size += 1;
            codec.decode(idx, &mut point);
            for (v, g, gi) in &gens {
                moved.copy_from_slice(&point);
                act_on_point(&f, quiver, alpha, &offsets, *v, g, gi, &point, &mut moved);
                let j = codec.encode(&moved);
                if class_of[j as usize] == u32::MAX {
                    class_of[j as usize] = cls;
                    queue.push_back(j);
                }
            }
        }
        codec.decode(start, &mut point);
        let mats = arrows
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| Matrix {
                rows: alpha[t],
                cols: alpha[s],
                data: point[offsets[k]..offsets[k] + alpha[s] * alpha[t]].to_vec(),
            })
            .collect();
        reps.push(QuiverRep::from_parts(quiver.clone(), f.clone(), alpha.to_vec(), mats));
        orbit_sizes.push(size);
    }
    let gl = gl_alpha_order(alpha, q);
    let aut_orders = orbit_sizes
        .iter()
        .map(|&s| {
            let s = BigUint::from(s);
            if !(&gl % &s).is_zero() {
                return Err(Error::consistency("orbit size does not divide |GL_alpha|"));
            }
            Ok(&gl / s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IsoClassTable {
        quiver: quiver.clone(),
        alpha: alpha.to_vec(),
        q,
        reps,
        aut_orders,
        orbit_sizes,
        class_of,
    })
}

/// Applies the generator `g` at vertex `v`: `f_a -> g f_a` for arrows into `v`
/// and `f_a -> f_a g^{-1}` for arrows out of `v`.
#[allow(clippy::too_many_arguments)]
fn act_on_point(
    f: &FiniteField,
    quiver: &Quiver,
    alpha: &[usize],
    offsets: &[usize],
    v: usize,
    g: &Matrix,
    gi: &Matrix,
    point: &[Elem],
    out: &mut [Elem],
) {
    for (k, &(s, t)) in quiver.arrows().iter().enumerate() {
        if s != v && t != v {
            continue;
        }
        let (rows, cols) = (alpha[t], alpha[s]);
        let mut m = Matrix {
            rows,
            cols,
            data: point[offsets[k]..offsets[k] + rows * cols].to_vec(),
        };
        if t == v {
            m = g.mul(&m, f);
        }
        if s == v {
            m = m.mul(gi, f);
        }
        out[offsets[k]..offsets[k] + rows * cols].copy_from_slice(&m.data);
    }
}

/// Key of an isomorphism class inside a [`RepCategory`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub dim: Vec<usize>,
    pub index: usize,
}

impl std::fmt::Display for ClassKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d: Vec<String> = self.dim.iter().map(|x| x.to_string()).collect();
        write!(f, "({})#{}", d.join(","), self.index)
    }
}

/// All isomorphism classes of representations of total dimension at most `bound`,
/// precomputed once and immutable afterwards.
#[derive(Clone, Debug)]
pub struct RepCategory {
    quiver: Arc<Quiver>,
    q: u32,
    bound: usize,
    budget: Budget,
    tables: BTreeMap<Vec<usize>, IsoClassTable>,
}

/// Effective dimension vectors with `n` entries and total at most `bound`, in increasing order.
pub fn dimension_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur[i] = d;
            rec(i + 1, left - d, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out.sort();
    out
}

impl RepCategory {
    pub fn new(quiver: Arc<Quiver>, q: u32, bound: usize, budget: Budget) -> Result<Self> {
        let mut tables = BTreeMap::new();
        for alpha in dimension_vectors(quiver.num_vertices(), bound) {
            let table = enumerate_reps(&quiver, &alpha, q, budget)?;
            tables.insert(alpha, table);
        }
        Ok(RepCategory {
            quiver,
            q,
            bound,
            budget,
            tables,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn table(&self, alpha: &[usize]) -> Result<&IsoClassTable> {
        self.tables.get(alpha).ok_or_else(|| {
            Error::validation(
                "dimension vector",
                format!("{alpha:?} is not enumerated in this category (bound {})", self.bound),
            )
        })
    }

    pub fn tables(&self) -> impl Iterator<Item = &IsoClassTable> {
        self.tables.values()
    }

    /// Every class key, ordered by dimension vector then index.
    pub fn classes(&self) -> Vec<ClassKey> {
        self.tables
            .iter()
            .flat_map(|(alpha, t)| {
                (0..t.len()).map(move |i| ClassKey {
                    dim: alpha.clone(),
                    index: i,
                })
            })
            .collect()
    }

    pub fn rep(&self, key: &ClassKey) -> Result<&QuiverRep> {
        self.table(&key.dim)?
            .reps()
            .get(key.index)
            .ok_or_else(|| Error::validation("class", format!("no class {key}")))
    }

    pub fn aut_order(&self, key: &ClassKey) -> Result<&BigUint> {
        self.table(&key.dim)?
            .aut_orders()
            .get(key.index)
            .ok_or_else(|| Error::validation("class", format!("no class {key}")))
    }

    pub fn identify(&self, rep: &QuiverRep) -> Result<ClassKey> {
        let table = self.table(rep.dim())?;
        Ok(ClassKey {
            dim: rep.dim().to_vec(),
            index: table.identify(rep)?,
        })
    }

    pub fn zero_class(&self) -> ClassKey {
        ClassKey {
            dim: vec![0; self.quiver.num_vertices()],
            index: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;

    #[test]
    fn a2_dimension_one_one() {
        let q = Arc::new(Quiver::a2());
        let t = enumerate_reps(&q, &[1, 1], 2, Budget::default()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.aut_orders(), &[BigUint::from(1u32), BigUint::from(1u32)]);
        assert_eq!(t.reps()[0].mats()[0].data, vec![0]);
        let t = enumerate_reps(&q, &[1, 1], 3, Budget::default()).unwrap();
        assert_eq!(t.aut_orders(), &[BigUint::from(4u32), BigUint::from(2u32)]);
        assert_eq!(t.groupoid_count(), rat(3, 4));
    }

    #[test]
    fn single_vertex() {
        let q = Arc::new(Quiver::a1());
        let t = enumerate_reps(&q, &[1], 3, Budget::default()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.aut_orders()[0], BigUint::from(2u32));
    }

    #[test]
    fn kronecker_classes_over_f2() {
        // Pencils of 1x1 matrices (a,b) up to scaling: zero and the 3 points of P^1.
        let q = Arc::new(Quiver::kronecker(2));
        let t = enumerate_reps(&q, &[1, 1], 2, Budget::default()).unwrap();
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn budget_overflow_is_an_error() {
        let q = Arc::new(Quiver::kronecker(2));
        let err = enumerate_reps(&q, &[2, 2], 3, Budget(1000)).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn category_over_empty_quiver() {
        let c = RepCategory::new(Arc::new(Quiver::empty()), 2, 3, Budget::default()).unwrap();
        assert_eq!(c.classes().len(), 1);
        assert_eq!(c.zero_class(), ClassKey { dim: vec![], index: 0 });
    }

    #[test]
    fn dimension_vector_listing() {
        assert_eq!(dimension_vectors(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(dimension_vectors(0, 3), vec![Vec::<usize>::new()]);
        assert_eq!(dimension_vectors(3, 2).len(), 10);
    }
}
