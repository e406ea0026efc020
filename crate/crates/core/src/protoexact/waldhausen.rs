use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{automorphisms, closed_subspace_tuples, subquotient, ClassKey, QuiverRep, RepCategory};
use crate::coeffring::Rational;
use crate::error::Result;
use crate::linalg::{Matrix, Subspace};

/// A finite exact category truncated at some size: finitely many object classes,
/// each with its finite lattice of admissible subobjects and automorphism group.
pub trait ExactModel {
    type Obj;
    type Sub: Clone + Eq + Hash;
    type Class: Clone + Ord + Debug;
    type Auto;

    fn name(&self) -> String;
    /// Object classes with representatives and automorphism group orders.
    fn objects(&self) -> Vec<(Self::Class, &Self::Obj, BigUint)>;
    fn subobjects(&self, e: &Self::Obj) -> Result<Vec<Self::Sub>>;
    /// `small <= big` as subobjects of `e`.
    fn includes(&self, e: &Self::Obj, small: &Self::Sub, big: &Self::Sub) -> bool;
    fn zero_sub(&self, e: &Self::Obj) -> Self::Sub;
    fn full_sub(&self, e: &Self::Obj) -> Self::Sub;
    /// Class of `upper / lower`.
    fn subquotient_class(&self, e: &Self::Obj, lower: &Self::Sub, upper: &Self::Sub) -> Result<Self::Class>;
    fn automorphisms(&self, e: &Self::Obj) -> Result<Vec<Self::Auto>>;
    fn act(&self, e: &Self::Obj, g: &Self::Auto, s: &Self::Sub) -> Self::Sub;
    fn zero_class(&self) -> Self::Class;
}

/// One connected component of the groupoid of n-cells: a flag
/// `0 = A_0 <= A_1 <= ... <= A_n = E` up to isomorphism.
#[derive(Clone, Debug)]
pub struct CellComponent<C> {
    pub n: usize,
    /// Class of `A_j / A_i` for `0 <= i < j <= n`.
    pub subquotients: BTreeMap<(usize, usize), C>,
    pub aut_order: BigUint,
}

impl<C: Clone> CellComponent<C> {
    /// Consecutive subquotients `(A_1, A_2/A_1, ..., A_n/A_{n-1})`.
    pub fn grading(&self) -> Vec<C> {
        (0..self.n).map(|i| self.subquotients[&(i, i + 1)].clone()).collect()
    }

    pub fn part(&self, i: usize, j: usize) -> &C {
        &self.subquotients[&(i, j)]
    }

    pub fn weight(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.aut_order.clone()))
    }
}

/// Finite groupoid described by its components and automorphism orders.
#[derive(Clone, Debug)]
pub struct FiniteGroupoidSummary<C> {
    pub components: Vec<CellComponent<C>>,
}

impl<C: Clone> FiniteGroupoidSummary<C> {
    /// `sum 1/|Aut|` over components.
    pub fn homotopy_cardinality(&self) -> Rational {
        self.components.iter().fold(Rational::zero(), |acc, c| acc + c.weight())
    }

    pub fn cardinality_where(&self, pred: impl Fn(&CellComponent<C>) -> bool) -> Rational {
        self.components
            .iter()
            .filter(|c| pred(c))
            .fold(Rational::zero(), |acc, c| acc + c.weight())
    }
}

/// The groupoid `S_n` of the Waldhausen construction, restricted to the objects
/// of the model: flags of admissible subobjects up to isomorphism.
pub fn waldhausen_cells<M: ExactModel>(model: &M, n: usize) -> Result<FiniteGroupoidSummary<M::Class>> {
    if n == 0 {
        return Ok(FiniteGroupoidSummary {
            components: vec![CellComponent {
                n: 0,
                subquotients: BTreeMap::new(),
                aut_order: BigUint::one(),
            }],
        });
    }
    let mut components = Vec::new();
    for (_, e, _) in model.objects() {
        let subs = model.subobjects(e)?;
        let index: HashMap<M::Sub, usize> = subs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let zero = index[&model.zero_sub(e)];
        let full = index[&model.full_sub(e)];
        // Chains U_1 <= ... <= U_{n-1} as index tuples.
        let mut chains: Vec<Vec<usize>> = vec![vec![]];
        for _ in 1..n {
            let mut next = Vec::new();
            for c in &chains {
                let last = c.last().copied().unwrap_or(zero);
                for (j, s) in subs.iter().enumerate() {
                    if model.includes(e, &subs[last], s) {
                        let mut d = c.clone();
                        d.push(j);
                        next.push(d);
                    }
                }
            }
            chains = next;
        }
        let autos = model.automorphisms(e)?;
        let moved: Vec<Vec<usize>> = autos
            .iter()
            .map(|g| subs.iter().map(|s| index[&model.act(e, g, s)]).collect())
            .collect();
        let chain_index: HashMap<Vec<usize>, usize> =
            chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let mut seen = vec![false; chains.len()];
        for (ci, chain) in chains.iter().enumerate() {
            if seen[ci] {
                continue;
            }
            let mut orbit = 0usize;
            for perm in &moved {
                let image: Vec<usize> = chain.iter().map(|&s| perm[s]).collect();
                let k = chain_index[&image];
                if !seen[k] {
                    seen[k] = true;
                    orbit += 1;
                }
            }
            let mut flag = vec![zero];
            flag.extend(chain.iter().copied());
            flag.push(full);
            let mut subquotients = BTreeMap::new();
            for i in 0..=n {
                for j in i + 1..=n {
                    let c = model.subquotient_class(e, &subs[flag[i]], &subs[flag[j]])?;
                    subquotients.insert((i, j), c);
                }
            }
            components.push(CellComponent {
                n,
                subquotients,
                aut_order: BigUint::from(autos.len() / orbit),
            });
        }
    }
    Ok(FiniteGroupoidSummary { components })
}

/// Which 2-Segal map a comparison belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SegalMap {
    /// `S_3 -> S_{012} x_{S_{02}} S_{023}`.
    Lower,
    /// `S_3 -> S_{013} x_{S_{13}} S_{123}`.
    Upper,
}

/// Homotopy cardinalities of both sides over one component of the target.
#[derive(Clone, Debug)]
pub struct SegalEntry<C> {
    pub map: SegalMap,
    /// Grading `(M1, M2, M3)` of the 3-flag.
    pub grading: [C; 3],
    /// Class of the glued edge: `A_2` for the lower map, `A_3/A_1` for the upper.
    pub glued: C,
    pub source: Rational,
    pub target: Rational,
}

impl<C> SegalEntry<C> {
    pub fn passed(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug)]
pub struct SegalReport<C> {
    pub model: String,
    pub entries: Vec<SegalEntry<C>>,
}

impl<C> SegalReport<C> {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed())
    }
}

type Key3<C> = (C, C, C);
type Key4<C> = (C, C, C, C);

fn add_mass<K: Ord>(map: &mut BTreeMap<K, Rational>, k: K, w: Rational) {
    *map.entry(k).or_insert_with(Rational::zero) += w;
}

/// Compares the homotopy cardinality of `S_3` with that of the fibre products
/// `S_2 x_{S_1} S_2` for both 2-Segal maps, component by component.
pub fn verify_2segal_counting<M: ExactModel>(model: &M) -> Result<SegalReport<M::Class>> {
    let s1 = waldhausen_cells(model, 1)?;
    let s2 = waldhausen_cells(model, 2)?;
    let s3 = waldhausen_cells(model, 3)?;
    let aut: BTreeMap<M::Class, BigUint> = s1
        .components
        .iter()
        .map(|c| (c.part(0, 1).clone(), c.aut_order.clone()))
        .collect();

    let mut lower_src: BTreeMap<Key4<M::Class>, Rational> = BTreeMap::new();
    let mut upper_src: BTreeMap<Key4<M::Class>, Rational> = BTreeMap::new();
    for c in &s3.components {
        let g = c.grading();
        let w = c.weight();
        add_mass(&mut lower_src, (g[0].clone(), g[1].clone(), g[2].clone(), c.part(0, 2).clone()), w.clone());
        add_mass(&mut upper_src, (g[0].clone(), g[1].clone(), g[2].clone(), c.part(1, 3).clone()), w);
    }

    // Masses of 2-cells keyed by (top, sub, quotient).
    let mut two: BTreeMap<Key3<M::Class>, Rational> = BTreeMap::new();
    for c in &s2.components {
        add_mass(&mut two, (c.part(0, 2).clone(), c.part(0, 1).clone(), c.part(1, 2).clone()), c.weight());
    }
    let mut lower_tgt: BTreeMap<Key4<M::Class>, Rational> = BTreeMap::new();
    let mut upper_tgt: BTreeMap<Key4<M::Class>, Rational> = BTreeMap::new();
    for ((top_x, m1, m2), wx) in &two {
        for ((_, sub_y, m3), wy) in &two {
            // Lower: x = (A_1 <= A_2) with top c, y = (A_2 <= A_3) with sub c.
            if sub_y == top_x {
                let a = Rational::from_integer(BigInt::from(aut[top_x].clone()));
                add_mass(&mut lower_tgt, (m1.clone(), m2.clone(), m3.clone(), top_x.clone()), a * wx * wy);
            }
        }
    }
    for ((_, m1, c), wx) in &two {
        for ((top_y, m2, m3), wy) in &two {
            // Upper: x = (A_1 <= A_3) with quotient c, y = (A_2/A_1 <= A_3/A_1) with top c.
            if top_y == c {
                let a = Rational::from_integer(BigInt::from(aut[c].clone()));
                add_mass(&mut upper_tgt, (m1.clone(), m2.clone(), m3.clone(), c.clone()), a * wx * wy);
            }
        }
    }

    let mut entries = Vec::new();
    for (map, src, tgt) in [
        (SegalMap::Lower, &lower_src, &lower_tgt),
        (SegalMap::Upper, &upper_src, &upper_tgt),
    ] {
        let mut keys: Vec<&Key4<M::Class>> = src.keys().chain(tgt.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            entries.push(SegalEntry {
                map,
                grading: [k.0.clone(), k.1.clone(), k.2.clone()],
                glued: k.3.clone(),
                source: src.get(k).cloned().unwrap_or_else(Rational::zero),
                target: tgt.get(k).cloned().unwrap_or_else(Rational::zero),
            });
        }
    }
    Ok(SegalReport {
        model: model.name(),
        entries,
    })
}

/// `rep_{F_q}(Q)` truncated at the category's dimension bound.
pub struct RepModel<'a> {
    pub category: &'a RepCategory,
}

impl ExactModel for RepModel<'_> {
    type Obj = QuiverRep;
    type Sub = Vec<Subspace>;
    type Class = ClassKey;
    type Auto = Vec<Matrix>;

    fn name(&self) -> String {
        format!(
            "rep_F{}(quiver with {} vertices, {} arrows), bound {}",
            self.category.q(),
            self.category.quiver().num_vertices(),
            self.category.quiver().arrows().len(),
            self.category.bound()
        )
    }

    fn objects(&self) -> Vec<(ClassKey, &QuiverRep, BigUint)> {
        self.category
            .classes()
            .into_iter()
            .map(|k| {
                let rep = self.category.rep(&k).expect("listed class");
                let aut = self.category.aut_order(&k).expect("listed class").clone();
                (k, rep, aut)
            })
            .collect()
    }

    fn subobjects(&self, e: &QuiverRep) -> Result<Vec<Vec<Subspace>>> {
        closed_subspace_tuples(e, None, self.category.budget())
    }

    fn includes(&self, e: &QuiverRep, small: &Vec<Subspace>, big: &Vec<Subspace>) -> bool {
        small.iter().zip(big).all(|(s, b)| b.contains_subspace(s, e.field()))
    }

    fn zero_sub(&self, e: &QuiverRep) -> Vec<Subspace> {
        e.dim().iter().map(|&d| Subspace::zero(d)).collect()
    }

    fn full_sub(&self, e: &QuiverRep) -> Vec<Subspace> {
        e.dim().iter().map(|&d| Subspace::full(d)).collect()
    }

    fn subquotient_class(&self, e: &QuiverRep, lower: &Vec<Subspace>, upper: &Vec<Subspace>) -> Result<ClassKey> {
        self.category.identify(&subquotient(e, lower, upper))
    }

    fn automorphisms(&self, e: &QuiverRep) -> Result<Vec<Vec<Matrix>>> {
        automorphisms(e, self.category.budget())
    }

    fn act(&self, e: &QuiverRep, g: &Vec<Matrix>, s: &Vec<Subspace>) -> Vec<Subspace> {
        let f = e.field();
        s.iter()
            .zip(g)
            .map(|(u, gv)| {
                let imgs: Vec<Vec<u32>> = u.vectors().iter().map(|v| gv.apply(v, f)).collect();
                Subspace::span(&imgs, u.ambient, f)
            })
            .collect()
    }

    fn zero_class(&self) -> ClassKey {
        self.category.zero_class()
    }
}

/// Finite pointed sets of size at most `bound` (the F_1 model): subobjects are
/// subsets, quotients collapse a subset to the base point, automorphisms are permutations.
pub struct PointedSetModel {
    pub bound: usize,
    sizes: Vec<usize>,
}

impl PointedSetModel {
    pub fn new(bound: usize) -> Self {
        PointedSetModel {
            bound,
            sizes: (0..=bound).collect(),
        }
    }
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..r {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=k {
                let mut q: Vec<usize> = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

impl ExactModel for PointedSetModel {
    type Obj = usize;
    type Sub = u32;
    type Class = usize;
    type Auto = Vec<usize>;

    fn name(&self) -> String {
        format!("pointed sets of size <= {}", self.bound)
    }

    fn objects(&self) -> Vec<(usize, &usize, BigUint)> {
        self.sizes
            .iter()
            .map(|r| (*r, r, (1..=*r).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))))
            .collect()
    }

    fn subobjects(&self, e: &usize) -> Result<Vec<u32>> {
        Ok((0..(1u32 << e)).collect())
    }

    fn includes(&self, _: &usize, small: &u32, big: &u32) -> bool {
        small & !big == 0
    }

    fn zero_sub(&self, _: &usize) -> u32 {
        0
    }

    fn full_sub(&self, e: &usize) -> u32 {
        (1u32 << e) - 1
    }

    fn subquotient_class(&self, _: &usize, lower: &u32, upper: &u32) -> Result<usize> {
        Ok((upper & !lower).count_ones() as usize)
    }

    fn automorphisms(&self, e: &usize) -> Result<Vec<Vec<usize>>> {
        Ok(permutations(*e))
    }

    fn act(&self, _: &usize, g: &Vec<usize>, s: &u32) -> u32 {
        (0..g.len()).filter(|&i| s >> i & 1 == 1).fold(0, |acc, i| acc | 1 << g[i])
    }

    fn zero_class(&self) -> usize {
        0
    }
}
