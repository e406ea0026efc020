//! Finite groups given by multiplication tables, with conjugacy classes,
//! subgroups, direct products, symmetric groups and GL_r(F_q).

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::field;
use crate::linalg::{general_linear_group, Matrix};

/// Sort key and display label for the class of an element.
type ClassLabeling<'a> = dyn Fn(&FiniteGroup, usize) -> (Vec<u32>, String) + 'a;

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    class_labels: Vec<String>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table && self.class_of == other.class_of
    }
}

impl FiniteGroup {
    /// Validates a user-supplied table: Latin square, identity, associativity.
    pub fn from_table(name: &str, rows: &[Vec<usize>], budget: Budget) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::validation("group", "empty multiplication table"));
        }
        budget.check("associativity check", &num_bigint::BigUint::from((n as u64).pow(3)))?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::validation("group", format!("row {i} has length {}, expected {n}", r.len())));
            }
            let mut seen = vec![false; n];
            for &x in r {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::validation("group", format!("row {i} is not a permutation of 0..{n}")));
                }
            }
        }
        let table: Vec<u32> = rows.iter().flatten().map(|&x| x as u32).collect();
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| Error::validation("group", "no identity element"))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::validation("group", format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Self::build(name.to_string(), n, table, identity, None))
    }

    /// Construction from a table already known to define a group.
    fn build(
        name: String,
        n: usize,
        table: Vec<u32>,
        identity: usize,
        labeling: Option<&ClassLabeling<'_>>,
    ) -> Self {
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] as usize == identity {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let mut g = FiniteGroup {
            name,
            n,
            table,
            inverse,
            identity,
            classes: vec![],
            class_of: vec![usize::MAX; n],
            class_labels: vec![],
        };
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if g.class_of[x] != usize::MAX {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|y| g.conj(y, x)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &y in &cls {
                g.class_of[y] = classes.len();
            }
            classes.push(cls);
        }
        // Optional relabelling and reordering of classes by a sort key.
        let mut keyed: Vec<(Vec<u32>, String, Vec<usize>)> = classes
            .into_iter()
            .enumerate()
            .map(|(i, c)| match labeling {
                Some(lab) => {
                    let (k, l) = lab(&g, c[0]);
                    (k, l, c)
                }
                None => (vec![i as u32], format!("C{i}"), c),
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        g.classes = Vec::with_capacity(keyed.len());
        g.class_labels = Vec::with_capacity(keyed.len());
        for (i, (_, label, c)) in keyed.into_iter().enumerate() {
            for &y in &c {
                g.class_of[y] = i;
            }
            g.classes.push(c);
            g.class_labels.push(label);
        }
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `x^{-1} g x`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    pub fn identity_class(&self) -> usize {
        self.class_of[self.identity]
    }

    /// Class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(self.inv(self.classes[c][0]))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Direct product with elements `(a, b)` indexed `a * |B| + b`; classes are
    /// pairs of classes in lexicographic order.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.n, b.n);
        let n = na * nb;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
            }
        }
        let identity = a.identity * nb + b.identity;
        let name = format!("{}x{}", a.name, b.name);
        let lab = |_: &FiniteGroup, x: usize| {
            let (ca, cb) = (a.class_of(x / nb), b.class_of(x % nb));
            (
                vec![ca as u32, cb as u32],
                format!("({},{})", a.class_labels[ca], b.class_labels[cb]),
            )
        };
        FiniteGroup::build(name, n, table, identity, Some(&lab))
    }

    /// The trivial group.
    pub fn trivial() -> FiniteGroup {
        FiniteGroup::build("1".into(), 1, vec![0], 0, None)
    }
}

/// Partitions of `n` as weakly decreasing part lists, in increasing lexicographic order
/// (so `1^n` comes first and `(n)` last).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Compact label such as `1^3`, `21`, `31^2`; the empty partition is `0`.
pub fn partition_label(p: &[usize]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    let mut i = 0;
    while i < p.len() {
        let mut j = i;
        while j < p.len() && p[j] == p[i] {
            j += 1;
        }
        s.push_str(&p[i].to_string());
        if j - i > 1 {
            s.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    s
}

/// Cycle type of a permutation, parts in decreasing order.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub const MAX_EXPLICIT_SYMMETRIC: usize = 6;

/// Explicit symmetric group together with its permutations (`perm[i]` is the image of `i`).
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    pub group: Arc<FiniteGroup>,
    pub perms: Vec<Vec<usize>>,
}

fn all_permutations(r: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

/// S_r with conjugacy classes ordered by cycle type as in [`partitions`].
pub fn symmetric_group(r: usize) -> Result<PermutationGroup> {
    if r > MAX_EXPLICIT_SYMMETRIC {
        return Err(Error::validation("r", format!("explicit S_r is limited to r <= {MAX_EXPLICIT_SYMMETRIC}")));
    }
    let perms = all_permutations(r);
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = perms.len();
    let mut table = vec![0u32; n * n];
    for (a, pa) in perms.iter().enumerate() {
        for (b, pb) in perms.iter().enumerate() {
            // (a*b)(i) = a(b(i)).
            let c: Vec<usize> = (0..r).map(|i| pa[pb[i]]).collect();
            table[a * n + b] = index[&c] as u32;
        }
    }
    let order = partitions(r);
    let lab = |_: &FiniteGroup, x: usize| {
        let ct = cycle_type(&perms[x]);
        let pos = order.iter().position(|p| *p == ct).expect("cycle type is a partition");
        (vec![pos as u32], partition_label(&ct))
    };
    let group = FiniteGroup::build(format!("S_{r}"), n, table, 0, Some(&lab));
    Ok(PermutationGroup {
        group: Arc::new(group),
        perms,
    })
}

/// Explicit general linear group with its matrices.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub group: Arc<FiniteGroup>,
    pub mats: Vec<Matrix>,
    pub q: u32,
}

impl MatrixGroup {
    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.mats.binary_search(m).ok()
    }
}

/// GL_r(F_q) by multiplication table, elements in lexicographic order of entries.
pub fn general_linear(r: usize, q: u32, budget: Budget) -> Result<MatrixGroup> {
    let f = field(q)?;
    let raw = budget.check_pow("GL_r enumeration", q as u64, (r * r) as u64)?;
    budget.check("GL_r multiplication table", &num_bigint::BigUint::from(raw).pow(2))?;
    let mats = general_linear_group(r, &f);
    let n = mats.len();
    let mut table = vec![0u32; n * n];
    for (a, ma) in mats.iter().enumerate() {
        for (b, mb) in mats.iter().enumerate() {
            let c = ma.mul(mb, &f);
            table[a * n + b] = mats.binary_search(&c).expect("closed under products") as u32;
        }
    }
    let identity = mats.binary_search(&Matrix::identity(r)).expect("identity is invertible");
    let group = FiniteGroup::build(format!("GL_{r}(F_{q})"), n, table, identity, None);
    Ok(MatrixGroup {
        group: Arc::new(group),
        mats,
        q,
    })
}

/// A subgroup `H <= G` given as an abstract group with an injective homomorphism into `G`.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub ambient: Arc<FiniteGroup>,
    pub group: Arc<FiniteGroup>,
    pub embed: Vec<usize>,
    to_sub: Vec<Option<usize>>,
}

impl Subgroup {
    /// Validates that `embed` is an injective homomorphism.
    pub fn from_embedding(ambient: Arc<FiniteGroup>, group: Arc<FiniteGroup>, embed: Vec<usize>) -> Result<Self> {
        if embed.len() != group.order() || embed.iter().any(|&x| x >= ambient.order()) {
            return Err(Error::validation("subgroup", "embedding has the wrong size or range"));
        }
        let mut to_sub = vec![None; ambient.order()];
        for (h, &g) in embed.iter().enumerate() {
            if to_sub[g].replace(h).is_some() {
                return Err(Error::validation("subgroup", "embedding is not injective"));
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if embed[group.mul(a, b)] != ambient.mul(embed[a], embed[b]) {
                    return Err(Error::validation("subgroup", "embedding is not a homomorphism"));
                }
            }
        }
        Ok(Subgroup {
            ambient,
            group,
            embed,
            to_sub,
        })
    }

    /// Subgroup generated by listing its elements; rejects non-closed sets.
    pub fn from_elements(ambient: Arc<FiniteGroup>, elements: &[usize], name: &str) -> Result<Self> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.iter().any(|&x| x >= ambient.order()) {
            return Err(Error::validation("subgroup", "element index out of range"));
        }
        let mut to_sub = vec![None; ambient.order()];
        for (i, &g) in elems.iter().enumerate() {
            to_sub[g] = Some(i);
        }
        if to_sub[ambient.identity()].is_none() {
            return Err(Error::validation("subgroup", "does not contain the identity"));
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let c = ambient.mul(a, b);
                let k = to_sub[c].ok_or_else(|| {
                    Error::validation("subgroup", format!("not closed: {a}*{b} = {c} is missing"))
                })?;
                table[i * n + j] = k as u32;
            }
        }
        let identity = to_sub[ambient.identity()].unwrap();
        let group = FiniteGroup::build(name.to_string(), n, table, identity, None);
        Ok(Subgroup {
            ambient,
            group: Arc::new(group),
            embed: elems,
            to_sub,
        })
    }

    pub fn whole(g: Arc<FiniteGroup>) -> Self {
        let n = g.order();
        Subgroup {
            ambient: g.clone(),
            group: g,
            embed: (0..n).collect(),
            to_sub: (0..n).map(Some).collect(),
        }
    }

    /// Index in `H` of an ambient element, if it lies in `H`.
    pub fn locate(&self, g: usize) -> Option<usize> {
        self.to_sub[g]
    }

    pub fn contains(&self, g: usize) -> bool {
        self.to_sub[g].is_some()
    }

    pub fn index(&self) -> usize {
        self.ambient.order() / self.group.order()
    }

    /// One representative per left coset `xH`.
    pub fn left_transversal(&self) -> Vec<usize> {
        let g = &self.ambient;
        let mut covered = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for &h in &self.embed {
                covered[g.mul(x, h)] = true;
            }
        }
        reps
    }
}

/// Young subgroup `S_eta = S_{eta_1} x ... x S_{eta_m}` of S_r acting on consecutive blocks.
pub fn young_subgroup(sr: &PermutationGroup, eta: &[usize]) -> Result<Subgroup> {
    let r: usize = eta.iter().sum();
    if r != sr.perms.first().map_or(0, |p| p.len()) || eta.contains(&0) {
        return Err(Error::validation("eta", "must be a composition of r with positive parts"));
    }
    let factors: Vec<PermutationGroup> = eta.iter().map(|&e| symmetric_group(e)).collect::<Result<_>>()?;
    let mut product = (*factors[0].group).clone();
    for f in &factors[1..] {
        product = FiniteGroup::direct_product(&product, &f.group);
    }
    let index: HashMap<&Vec<usize>, usize> = sr.perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let sizes: Vec<usize> = factors.iter().map(|f| f.perms.len()).collect();
    let embed = (0..product.order())
        .map(|mut x| {
            // Decode the mixed-radix index (last factor least significant).
            let mut parts = vec![0; factors.len()];
            for k in (0..factors.len()).rev() {
                parts[k] = x % sizes[k];
                x /= sizes[k];
            }
            let mut perm = Vec::with_capacity(r);
            let mut off = 0;
            for (k, f) in factors.iter().enumerate() {
                perm.extend(f.perms[parts[k]].iter().map(|&i| i + off));
                off += eta[k];
            }
            index[&perm]
        })
        .collect();
    let name = eta.iter().map(|e| format!("S_{e}")).collect::<Vec<_>>().join("x");
    product.name = name;
    Subgroup::from_embedding(sr.group.clone(), Arc::new(product), embed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_classes() {
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(s3.group.order(), 6);
        assert_eq!(s3.group.class_labels(), &["1^3", "21", "3"]);
        let sizes: Vec<usize> = (0..3).map(|c| s3.group.class_size(c)).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let s4 = symmetric_group(4).unwrap();
        assert_eq!(s4.group.class_labels(), &["1^4", "21^2", "2^2", "31", "4"]);
    }

    #[test]
    fn class_sizes_sum_to_order() {
        for r in 0..=5 {
            let s = symmetric_group(r).unwrap();
            let total: usize = s.group.classes().iter().map(|c| c.len()).sum();
            assert_eq!(total, s.group.order());
        }
        let gl = general_linear(2, 3, Budget::default()).unwrap();
        assert_eq!(gl.group.order(), 48);
        assert_eq!(gl.group.num_classes(), 8);
        let total: usize = gl.group.classes().iter().map(|c| c.len()).sum();
        assert_eq!(total, 48);
    }

    #[test]
    fn table_validation() {
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert!(FiniteGroup::from_table("Z2", &z2, Budget::default()).is_ok());
        assert!(FiniteGroup::from_table("bad", &[vec![0, 1], vec![0, 1]], Budget::default()).is_err());
        assert!(FiniteGroup::from_table("bad", &[vec![0, 1]], Budget::default()).is_err());
        // A Latin square without associativity (order-3 loop with non-associative products).
        let loop3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::from_table("Z3", &loop3, Budget::default()).is_ok());
        let quasi = vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]];
        assert!(FiniteGroup::from_table("quasi", &quasi, Budget::default()).is_err());
    }

    #[test]
    fn subgroups() {
        let s3 = symmetric_group(3).unwrap();
        let h = young_subgroup(&s3, &[2, 1]).unwrap();
        assert_eq!(h.group.order(), 2);
        assert_eq!(h.left_transversal().len(), 3);
        assert!(Subgroup::from_elements(s3.group.clone(), &[0, 1, 2], "x").is_err());
        let k = young_subgroup(&s3, &[1, 1, 1]).unwrap();
        assert_eq!(k.group.order(), 1);
    }

    #[test]
    fn products_label_pairs_of_classes() {
        let s2 = symmetric_group(2).unwrap();
        let p = FiniteGroup::direct_product(&s2.group, &s2.group);
        assert_eq!(p.class_labels(), &["(1^2,1^2)", "(1^2,2)", "(2,1^2)", "(2,2)"]);
    }

    #[test]
    fn labels() {
        assert_eq!(partition_label(&[3, 1, 1]), "31^2");
        assert_eq!(partition_label(&[2, 2]), "2^2");
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(0), vec![Vec::<usize>::new()]);
    }
}
