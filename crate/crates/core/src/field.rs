//! Small finite fields GF(p^k) with log/antilog multiplication.
//!
//! An element is an integer in `0..q` whose base-p digits (least significant
//! first) are the coefficients of a polynomial modulo a fixed irreducible.
//! For prime `q` these are the usual residues.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub type Elem = u32;

pub const MAX_FIELD_SIZE: u32 = 1 << 16;

#[derive(Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut n, mut k) = (q, 0);
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1).then_some((p, k))
}

pub fn is_prime(n: u32) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

/// Polynomials over F_p as ascending coefficient vectors, used only while
/// building the tables.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate() {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - c) * m % p) % p;
            }
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn poly_rem_is_zero(a: &[u32], d: &[u32], p: u32) -> bool {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let inv_lc = (1..p).find(|x| x * d[dd] % p == 1).unwrap();
    while r.len() > dd {
        let c = r[r.len() - 1] * inv_lc % p;
        let shift = r.len() - 1 - dd;
        for (i, &m) in d.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * m % p) % p;
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn monic_polys(p: u32, deg: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(deg);
    (0..count).map(move |mut n| {
        let mut v = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            v.push(n % p);
            n /= p;
        }
        v.push(1);
        v
    })
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| !poly_rem_is_zero(f, &g, p)))
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::validation("q", format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::validation(
                "q",
                format!("field size {q} exceeds the supported maximum {MAX_FIELD_SIZE}"),
            ));
        }
        let modulus = monic_polys(p, k)
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        let to_digits = |mut x: u32| {
            let mut v = vec![0u32; k as usize];
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let from_digits = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let slow_pow = |g: u32, mut e: u32| {
            let mut base = to_digits(g);
            let mut acc = to_digits(1);
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mulmod(&acc, &base, &modulus, p);
                }
                base = poly_mulmod(&base, &base, &modulus, p);
                e >>= 1;
            }
            from_digits(&acc)
        };
        let factors = prime_factors(q - 1);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&l| slow_pow(g, (q - 1) / l) != 1))
            .expect("the multiplicative group is cyclic");
        let gen_digits = to_digits(generator);
        let mut exp = Vec::with_capacity(2 * (q as usize - 1));
        let mut log = vec![0u32; q as usize];
        let mut cur = to_digits(1);
        for i in 0..q - 1 {
            let x = from_digits(&cur);
            exp.push(x);
            log[x as usize] = i;
            cur = poly_mulmod(&cur, &gen_digits, &modulus, p);
        }
        let first: Vec<Elem> = exp.clone();
        exp.extend(first);
        Ok(FiniteField { p, k, q, exp, log })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Elements of the prime subfield are exactly `0..p`.
    pub fn in_prime_field(&self, x: Elem) -> bool {
        x < self.p
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// The absolute Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        self.exp[1 % self.exp.len().max(1)]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
}

fn field_cache() -> &'static Mutex<BTreeMap<u32, Arc<FiniteField>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<FiniteField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Shared field of size `q`; tables are built once per size.
pub fn field(q: u32) -> Result<Arc<FiniteField>> {
    if let Some(f) = field_cache().lock().unwrap().get(&q) {
        return Ok(f.clone());
    }
    let f = Arc::new(FiniteField::new(q)?);
    field_cache().lock().unwrap().insert(q, f.clone());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
        assert!(FiniteField::new(0).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs, "distributivity in GF({q})");
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = FiniteField::new(9).unwrap();
        let fixed: Vec<Elem> = f.elements().filter(|&x| f.frobenius(x) == x).collect();
        assert_eq!(fixed, vec![0, 1, 2]);
        for x in f.elements() {
            assert_eq!(f.frobenius(f.frobenius(x)), x);
        }
    }

    #[test]
    fn prime_field_is_modular_arithmetic() {
        let f = FiniteField::new(7).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(f.mul(a, b), a * b % 7);
                assert_eq!(f.add(a, b), (a + b) % 7);
            }
        }
    }
}
