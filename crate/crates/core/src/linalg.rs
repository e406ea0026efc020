//! Dense matrices and subspaces over a finite field.

use crate::field::{Elem, FiniteField};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix, f: &FiniteField) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Elem], f: &FiniteField) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &FiniteField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.rref(f).1.len()
    }

    pub fn is_invertible(&self, f: &FiniteField) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis of the right null space `{x : self x = 0}`, one vector per free column.
    pub fn nullspace(&self, f: &FiniteField) -> Vec<Vec<Elem>> {
        let (red, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(red.get(i, fc));
                }
                v
            })
            .collect()
    }
}

/// Subspace of `F^n` given by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub ambient: usize,
    /// `dim x ambient`, in reduced row echelon form.
    pub basis: Matrix,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Matrix::zeros(0, n),
            pivots: vec![],
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Matrix::identity(n),
            pivots: (0..n).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(vectors: &[Vec<Elem>], n: usize, f: &FiniteField) -> Self {
        let m = Matrix::from_rows(vectors, n);
        let (red, pivots) = m.rref(f);
        let k = pivots.len();
        let basis = Matrix {
            rows: k,
            cols: n,
            data: red.data[..k * n].to_vec(),
        };
        Subspace {
            ambient: n,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.to_rows()
    }

    /// Reduces `v` modulo the subspace; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[Elem], f: &FiniteField) -> Vec<Elem> {
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.sub(*o, f.mul(c, self.basis.get(i, j)));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Elem], f: &FiniteField) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace, f: &FiniteField) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i), f))
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the echelon basis.
    pub fn coords(&self, v: &[Elem]) -> Vec<Elem> {
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }

    /// Columns that index the quotient `F^n / U`.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Image of `v` in the quotient, in the basis of complement standard vectors.
    pub fn project(&self, v: &[Elem], f: &FiniteField) -> Vec<Elem> {
        let r = self.reduce(v, f);
        self.complement_columns().iter().map(|&c| r[c]).collect()
    }

    pub fn sum(&self, other: &Subspace, f: &FiniteField) -> Subspace {
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Subspace::span(&vs, self.ambient, f)
    }

    pub fn intersection_dim(&self, other: &Subspace, f: &FiniteField) -> usize {
        self.dim() + other.dim() - self.sum(other, f).dim()
    }

    /// Same subspace viewed inside an extension field (the echelon basis is unchanged
    /// because prime-field entries embed as themselves).
    pub fn is_defined_over_prime_field(&self, f: &FiniteField) -> bool {
        self.basis.data.iter().all(|&x| f.in_prime_field(x))
    }
}

/// All `k`-dimensional subspaces of `F^n`, in a fixed deterministic order.
pub fn subspaces_of_dim(n: usize, k: usize, f: &FiniteField) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free positions: (row i, column c) with c > pivots[i] and c not a pivot.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let p = pivots.clone();
                (p[i] + 1..n).filter(move |c| !p.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let q = f.q() as u64;
        let count = q.pow(free.len() as u32);
        for mut idx in 0..count {
            let mut m = Matrix::zeros(k, n);
            for (i, &pc) in pivots.iter().enumerate() {
                m.set(i, pc, 1);
            }
            for &(i, c) in free.iter().rev() {
                m.set(i, c, (idx % q) as Elem);
                idx /= q;
            }
            out.push(Subspace {
                ambient: n,
                basis: m,
                pivots: pivots.clone(),
            });
        }
        // Next combination of pivot columns.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Every subspace of `F^n`, by increasing dimension.
pub fn all_subspaces(n: usize, f: &FiniteField) -> Vec<Subspace> {
    (0..=n).flat_map(|k| subspaces_of_dim(n, k, f)).collect()
}

/// Every invertible `n x n` matrix, in lexicographic order of entries.
pub fn general_linear_group(n: usize, f: &FiniteField) -> Vec<Matrix> {
    let q = f.q() as u64;
    let total = q.pow((n * n) as u32);
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut data = vec![0; n * n];
        for slot in data.iter_mut().rev() {
            *slot = (idx % q) as Elem;
            idx /= q;
        }
        let m = Matrix {
            rows: n,
            cols: n,
            data,
        };
        if m.is_invertible(f) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn gauss_count(n: usize, k: usize, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow((n - i) as u32) - 1;
            den *= q.pow((i + 1) as u32) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2u32, 3, 4] {
            let f = FiniteField::new(q).unwrap();
            for n in 0..=3 {
                for k in 0..=n {
                    let subs = subspaces_of_dim(n, k, &f);
                    assert_eq!(subs.len() as u64, gauss_count(n, k, q as u64), "n={n} k={k} q={q}");
                    let mut sorted = subs.clone();
                    sorted.sort();
                    sorted.dedup();
                    assert_eq!(sorted.len(), subs.len());
                }
            }
        }
    }

    #[test]
    fn gl_orders() {
        let f2 = FiniteField::new(2).unwrap();
        let f3 = FiniteField::new(3).unwrap();
        assert_eq!(general_linear_group(2, &f2).len(), 6);
        assert_eq!(general_linear_group(2, &f3).len(), 48);
        assert_eq!(general_linear_group(3, &f2).len(), 168);
    }

    #[test]
    fn inverse_and_nullspace() {
        let f = FiniteField::new(5).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2], vec![3, 4]], 2);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f), Matrix::identity(2));
        let s = Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 1]], 3);
        for v in s.nullspace(&f) {
            assert!(s.apply(&v, &f).iter().all(|&x| x == 0));
        }
        assert_eq!(s.nullspace(&f).len(), 3 - s.rank(&f));
    }

    #[test]
    fn projection_kills_subspace() {
        let f = FiniteField::new(3).unwrap();
        let u = Subspace::span(&[vec![1, 2, 0]], 3, &f);
        assert_eq!(u.project(&[2, 1, 0], &f), vec![0, 0]);
        assert_eq!(u.project(&[0, 0, 1], &f), vec![0, 1]);
        assert!(u.contains(&[2, 1, 0], &f));
        assert_eq!(u.coords(&[2, 1, 0]), vec![2]);
    }
}
