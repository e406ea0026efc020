use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::ClassFunction;
use crate::coeffring::Rational;
use crate::error::{Error, Result};
use crate::group::{partition_label, partitions, PermutationGroup};

/// Largest `r` for which the character table of S_r is computed.
pub const MAX_CHARACTER_TABLE: usize = 8;

/// Irreducible characters of S_r: rows indexed by partitions in decreasing order
/// (trivial first), columns by cycle types in increasing order (identity first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub r: usize,
    pub rows: Vec<Vec<usize>>,
    pub columns: Vec<Vec<usize>>,
    pub class_sizes: Vec<u64>,
    pub values: Vec<Vec<i64>>,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `r! / prod_k k^{m_k} m_k!` for cycle type `mu`.
pub fn class_size(mu: &[usize]) -> u64 {
    let r: usize = mu.iter().sum();
    let mut denom = 1u64;
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &k in mu {
        *counts.entry(k).or_default() += 1;
    }
    for (k, m) in counts {
        denom *= (k as u64).pow(m as u32) * factorial(m);
    }
    factorial(r) / denom
}

/// `chi^lambda(mu)` by removing rim hooks of lengths `mu_1, mu_2, ...` from the beta-set of `lambda`.
pub fn murnaghan_nakayama(lambda: &[usize], mu: &[usize]) -> i64 {
    let k = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + k - 1 - i).collect();
    let mut memo = HashMap::new();
    mn_rec(beta, mu, &mut memo)
}

fn mn_rec(beta: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&m, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < m || beta.contains(&(b - m)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - m && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = b - m;
        next.sort_unstable_by(|a, b| b.cmp(a));
        total += sign * mn_rec(next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Character table of S_r by the Murnaghan-Nakayama rule.
pub fn sym_character_table(r: usize) -> Result<CharacterTable> {
    if r > MAX_CHARACTER_TABLE {
        return Err(Error::validation("r", format!("character tables are limited to r <= {MAX_CHARACTER_TABLE}")));
    }
    let columns = partitions(r);
    let mut rows = columns.clone();
    rows.reverse();
    let values = rows
        .iter()
        .map(|l| columns.iter().map(|m| murnaghan_nakayama(l, m)).collect())
        .collect();
    Ok(CharacterTable {
        r,
        class_sizes: columns.iter().map(|m| class_size(m)).collect(),
        rows,
        columns,
        values,
    })
}

impl CharacterTable {
    pub fn order(&self) -> u64 {
        factorial(self.r)
    }

    /// `<chi_i, chi_j> = (1/r!) sum_c |c| chi_i(c) chi_j(c)`; characters of S_r are real.
    pub fn inner_product(&self, i: usize, j: usize) -> Rational {
        let s: i64 = (0..self.columns.len())
            .map(|c| self.class_sizes[c] as i64 * self.values[i][c] * self.values[j][c])
            .sum();
        Rational::new(BigInt::from(s), BigInt::from(self.order()))
    }

    /// Rows are orthonormal and the column sizes add up to `r!`.
    pub fn is_orthonormal(&self) -> bool {
        let n = self.rows.len();
        self.class_sizes.iter().sum::<u64>() == self.order()
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    let expect = if i == j { 1 } else { 0 };
                    self.inner_product(i, j) == Rational::from_integer(BigInt::from(expect))
                })
            })
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.values.iter().map(|row| row[0]).collect()
    }

    /// The `i`-th irreducible as a class function on an explicit S_r.
    pub fn character(&self, i: usize, sr: &PermutationGroup) -> Result<ClassFunction> {
        let g = &sr.group;
        let labels: Vec<String> = self.columns.iter().map(|m| partition_label(m)).collect();
        if g.class_labels() != labels.as_slice() {
            return Err(Error::validation("group", "classes of the group do not match the table columns"));
        }
        ClassFunction::from_integers(Arc::clone(g), &self.values[i])
    }

    pub fn row_labels(&self) -> Vec<String> {
        self.rows.iter().map(|p| partition_label(p)).collect()
    }

    pub fn column_labels(&self) -> Vec<String> {
        self.columns.iter().map(|p| partition_label(p)).collect()
    }
}

/// Multiplicities of the irreducibles in `f` on S_r; each must be an exact polynomial in `t`.
pub fn decompose(f: &ClassFunction, table: &CharacterTable, sr: &PermutationGroup) -> Result<Vec<crate::coeffring::MotivicScalar>> {
    let order = BigInt::from(table.order());
    (0..table.rows.len())
        .map(|i| {
            let chi = table.character(i, sr)?;
            let s = f.scaled_inner_product(&chi)?;
            let num = s
                .numerator()
                .div_scalar_exact(&order)
                .ok_or_else(|| Error::domain("multiplicity is not integral"))?;
            crate::coeffring::MotivicScalar::new(num, s.denominator().clone())
        })
        .collect()
}
