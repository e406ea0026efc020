//! Fixed parameter grids that rerun the library's identities against brute force.
//!
//! | suite          | default grid |
//! |----------------|--------------|
//! | `2segal`       | A_1, A_2 over F_2, F_3 with total dimension <= 3; pointed sets of size <= 3 |
//! | `assoc`        | A_1, A_2, Kronecker(2): Hall associativity and unit, dimension <= 3 over F_2 and <= 2 over F_3; Hecke algebras of (S_3, S_2), (S_4, S_3), (S_4, S_2 x S_2), (GL_2(F_2), B) |
//! | `integration`  | same contexts as `assoc`: integration morphism, counting measure, closed form for A_1 |
//! | `recursion`    | A_1, A_2, Kronecker(2) over F_2, F_3, dimension <= 3, three stability conditions |
//! | `periodic`     | flag counts for r <= 4 over F_2, F_3; period domains for r = 2 over F_q and r <= 4 over F_1 |
//! | `characters`   | S_r tables for r <= 6, reciprocity and transitivity of induction for r <= 5 |
//!
//! Flags of the front end (`quiver`, `q`, `bound`) replace the corresponding axis of a grid.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::coeffring::{gaussian_multinomial, rational_to_string, MotivicScalar, Rational};
use crate::equivariant::{
    equivariant_period_domain, frobenius_reciprocity_holds, sym_character_table, ClassFunction,
};
use crate::error::{Error, Result};
use crate::group::{general_linear, partitions, symmetric_group, young_subgroup, Subgroup};
use crate::hall::{bilinear, chi_op_matrix, integrate_counting, motivic_class_total, verify_integration_morphism, HallElement};
use crate::protoexact::{
    automorphism_count, dimension_vectors, enumerate_reps, flags_of_type, hecke_convolution_oracle,
    hecke_structure_constants, verify_2segal_counting, PointedSetModel, Quiver, RepCategory, RepModel,
};
use crate::slope::{
    count_semistable_bruteforce, hn_stratum_counts, period_domain_bruteforce, period_domain_polynomial, BaseField,
    FlagType, StabilityData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    TwoSegal,
    Assoc,
    Integration,
    Recursion,
    Periodic,
    Characters,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::TwoSegal,
        Suite::Assoc,
        Suite::Integration,
        Suite::Recursion,
        Suite::Periodic,
        Suite::Characters,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::TwoSegal => "2segal",
            Suite::Assoc => "assoc",
            Suite::Integration => "integration",
            Suite::Recursion => "recursion",
            Suite::Periodic => "periodic",
            Suite::Characters => "characters",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::validation("suite", format!("unknown suite {s:?}")))
    }
}

/// One comparison: which identity, at which parameters, and both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    pub params: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn compare(identity: &str, params: String, left: String, right: String) -> Self {
        let passed = left == right;
        Check {
            identity: identity.to_string(),
            params,
            passed,
            detail: if passed { left } else { format!("{left} != {right}") },
        }
    }

    fn holds(identity: &str, params: String, passed: bool) -> Self {
        Check {
            identity: identity.to_string(),
            params,
            passed,
            detail: String::new(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {} ({})", self.identity, self.params)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json_value(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"identity": c.identity, "params": c.params, "passed": c.passed, "detail": c.detail}))
            .collect();
        json!({
            "suite": self.suite.name(),
            "passed": self.all_passed(),
            "total": self.checks.len(),
            "failed": self.failures().count(),
            "checks": checks,
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "suite {}: {} checks, {} failed", self.suite.name(), self.checks.len(), failed)
    }
}

/// Overrides for the default grids.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub quivers: Option<Vec<(String, Arc<Quiver>)>>,
    pub q: Option<Vec<u32>>,
    pub bound: Option<usize>,
    pub budget: Budget,
}

impl SuiteConfig {
    fn quivers(&self, default: &[&str]) -> Vec<(String, Arc<Quiver>)> {
        self.quivers.clone().unwrap_or_else(|| {
            default
                .iter()
                .map(|&name| {
                    let q = match name {
                        "A_1" => Quiver::a1(),
                        "A_2" => Quiver::a2(),
                        _ => Quiver::kronecker(2),
                    };
                    (name.to_string(), Arc::new(q))
                })
                .collect()
        })
    }

    fn fields(&self) -> Vec<u32> {
        self.q.clone().unwrap_or_else(|| vec![2, 3])
    }

    /// Default total dimension: 3 over F_2, 2 otherwise.
    fn bound_for(&self, q: u32) -> usize {
        self.bound.unwrap_or(if q == 2 { 3 } else { 2 })
    }
}

const ALL_QUIVERS: [&str; 3] = ["A_1", "A_2", "Kronecker(2)"];

fn rat_str(r: &Rational) -> String {
    rational_to_string(r)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::TwoSegal => two_segal(cfg)?,
        Suite::Assoc => assoc(cfg)?,
        Suite::Integration => integration(cfg)?,
        Suite::Recursion => recursion(cfg)?,
        Suite::Periodic => periodic(cfg)?,
        Suite::Characters => characters(cfg)?,
    };
    Ok(SuiteReport { suite, checks })
}

fn two_segal(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let bound = cfg.bound.unwrap_or(3);
    for (name, quiver) in cfg.quivers(&["A_1", "A_2"]) {
        for q in cfg.fields() {
            let cat = RepCategory::new(quiver.clone(), q, bound, cfg.budget)?;
            let report = verify_2segal_counting(&RepModel { category: &cat })?;
            for e in &report.entries {
                out.push(Check::compare(
                    &format!("2-Segal {:?} map is a counting equivalence", e.map),
                    format!("rep {name} over F_{q}, grading {}, {}, {}, glued {}", e.grading[0], e.grading[1], e.grading[2], e.glued),
                    rat_str(&e.source),
                    rat_str(&e.target),
                ));
            }
        }
    }
    if cfg.quivers.is_none() {
        for size in 0..=bound {
            let report = verify_2segal_counting(&PointedSetModel::new(size))?;
            for e in &report.entries {
                out.push(Check::compare(
                    &format!("2-Segal {:?} map is a counting equivalence", e.map),
                    format!("pointed sets of size <= {size}, grading {:?}, glued {}", e.grading, e.glued),
                    rat_str(&e.source),
                    rat_str(&e.target),
                ));
            }
        }
    }
    Ok(out)
}

fn categories(cfg: &SuiteConfig) -> Result<Vec<(String, Arc<RepCategory>)>> {
    let mut out = Vec::new();
    for (name, quiver) in cfg.quivers(&ALL_QUIVERS) {
        for q in cfg.fields() {
            let cat = RepCategory::new(quiver.clone(), q, cfg.bound_for(q), cfg.budget)?;
            out.push((format!("{name} over F_{q}"), Arc::new(cat)));
        }
    }
    Ok(out)
}

fn assoc(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (ctx, cat) in categories(cfg)? {
        let classes = cat.classes();
        let basis: Vec<HallElement> =
            classes.iter().map(|k| HallElement::basis(cat.clone(), k.clone())).collect::<Result<_>>()?;
        let unit = HallElement::unit(cat.clone());
        let size = |i: usize| classes[i].dim.iter().sum::<usize>();
        for (i, a) in basis.iter().enumerate() {
            out.push(Check::holds(
                "Hall product unit",
                format!("{ctx}, class {}", classes[i]),
                unit.product(a)? == *a && a.product(&unit)? == *a,
            ));
            for (j, b) in basis.iter().enumerate() {
                for (k, c) in basis.iter().enumerate() {
                    if size(i) + size(j) + size(k) > cat.bound() {
                        continue;
                    }
                    let left = a.product(b)?.product(c)?;
                    let right = a.product(&b.product(c)?)?;
                    out.push(Check::holds(
                        "Hall product associativity",
                        format!("{ctx}, classes {}, {}, {}", classes[i], classes[j], classes[k]),
                        left == right,
                    ));
                }
            }
        }
    }
    if cfg.quivers.is_none() {
        out.extend(hecke_checks(cfg.budget)?);
    }
    Ok(out)
}

/// Hecke algebras of `(S_3, S_2)`, `(S_4, S_3)`, `(S_4, S_2 x S_2)` and `(GL_2(F_2), B)`.
pub fn hecke_checks(budget: Budget) -> Result<Vec<Check>> {
    let mut pairs: Vec<(String, Subgroup)> = Vec::new();
    let s3 = symmetric_group(3)?;
    pairs.push(("(S_3, S_2)".into(), young_subgroup(&s3, &[2, 1])?));
    let s4 = symmetric_group(4)?;
    pairs.push(("(S_4, S_3)".into(), young_subgroup(&s4, &[3, 1])?));
    pairs.push(("(S_4, S_2xS_2)".into(), young_subgroup(&s4, &[2, 2])?));
    let gl = general_linear(2, 2, budget)?;
    pairs.push((
        "(GL_2(F_2), B)".into(),
        crate::equivariant::gl_parabolic(&gl, &[1, 1], budget)?.subgroup,
    ));
    let mut out = Vec::new();
    for (name, k) in pairs {
        let h = hecke_structure_constants(&k, budget)?;
        out.push(Check::holds("Hecke algebra associativity", name.clone(), h.is_associative()));
        out.push(Check::holds(
            "Hecke structure constants equal double coset convolution",
            name,
            h.constants == hecke_convolution_oracle(&k),
        ));
    }
    Ok(out)
}

fn integration(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (ctx, cat) in categories(cfg)? {
        let report = verify_integration_morphism(&cat)?;
        for e in &report.entries {
            out.push(Check::compare(
                "integration map is an algebra morphism",
                format!("{ctx}, classes {}, {}", e.left, e.right),
                rat_str(&e.integral_of_product),
                rat_str(&e.product_of_integrals),
            ));
        }
        let q = cat.q();
        for alpha in dimension_vectors(cat.quiver().num_vertices(), cat.bound()) {
            let motivic = motivic_class_total(cat.quiver(), &alpha)?.evaluate(q as u64)?;
            let brute = cat.table(&alpha)?.groupoid_count();
            out.push(Check::compare(
                "counting measure of the stack of representations",
                format!("{ctx}, dimension {alpha:?}"),
                rat_str(&motivic),
                rat_str(&brute),
            ));
        }
        if cat.quiver().num_vertices() == 1 && cat.quiver().arrows().is_empty() {
            out.extend(closed_form_checks(&ctx, &cat)?);
        }
    }
    Ok(out)
}

/// `int 1_{F_q^d} = T^d / ((q^d - 1)(q^d - q) ... (q^d - q^{d-1}))` on the one-vertex quiver.
fn closed_form_checks(ctx: &str, cat: &Arc<RepCategory>) -> Result<Vec<Check>> {
    let q = BigInt::from(cat.q());
    let mut out = Vec::new();
    for d in 1..=cat.bound() {
        let table = cat.table(&[d])?;
        let rep = &table.reps()[0];
        let series = integrate_counting(&HallElement::indicator(cat.clone(), rep)?)?;
        let qd = num_traits::pow(q.clone(), d);
        let denom: BigInt = (0..d).map(|i| &qd - num_traits::pow(q.clone(), i)).product();
        let closed = Rational::new(BigInt::one(), denom);
        let aut = automorphism_count(rep, cat.budget())?;
        out.push(Check::compare(
            "integral of a vector space indicator equals the GL_d closed form",
            format!("{ctx}, d = {d}"),
            rat_str(&series.coeff(&[d])),
            rat_str(&closed),
        ));
        out.push(Check::compare(
            "GL_d closed form equals inverse automorphism count",
            format!("{ctx}, d = {d}"),
            rat_str(&closed),
            rat_str(&Rational::new(BigInt::one(), BigInt::from(aut))),
        ));
    }
    Ok(out)
}

/// Stability conditions of the recursion grid for quivers with `n` vertices.
pub fn theta_grid(n: usize) -> Vec<StabilityData> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    if n == 1 {
        out = vec![vec![1], vec![0], vec![-1]];
    } else {
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = 1;
            out.push(v);
        }
        let mut v = vec![0; n];
        v[0] = 1;
        v[n - 1] = -1;
        out.push(v);
    }
    out.into_iter().map(StabilityData::with_theta).collect()
}

fn recursion(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let bound = cfg.bound.unwrap_or(3);
    for (name, quiver) in cfg.quivers(&ALL_QUIVERS) {
        let chi = chi_op_matrix(&quiver);
        for s in theta_grid(quiver.num_vertices()) {
            let top = vec![bound; quiver.num_vertices()];
            let memo = crate::slope::recursive_classes(&quiver, &top, &s, false)?;
            for alpha in dimension_vectors(quiver.num_vertices(), bound) {
                if alpha.iter().all(|&a| a == 0) {
                    continue;
                }
                let params = |q: Option<u32>| match q {
                    Some(q) => format!("{name} over F_{q}, theta {:?}, dimension {alpha:?}", s.theta),
                    None => format!("{name}, theta {:?}, dimension {alpha:?}", s.theta),
                };
                let rec = &memo[&alpha];
                let inv = crate::slope::inversion_class(&quiver, &alpha, &s)?;
                out.push(Check::compare(
                    "HN recursion agrees with the inversion formula",
                    params(None),
                    rec.to_string(),
                    inv.to_string(),
                ));
                for q in cfg.fields() {
                    let brute = count_semistable_bruteforce(&quiver, &alpha, &s, q, cfg.budget)?;
                    out.push(Check::compare(
                        "semistable class counts semistable representations",
                        params(Some(q)),
                        rat_str(&rec.evaluate(q as u64)?),
                        rat_str(&brute),
                    ));
                    let strata = hn_stratum_counts(&quiver, &alpha, &s, q, cfg.budget)?;
                    let total = enumerate_reps(&quiver, &alpha, q, cfg.budget)?.groupoid_count();
                    let sum = strata.values().fold(Rational::zero(), |acc, x| acc + x);
                    out.push(Check::compare(
                        "HN strata partition the stack of representations",
                        params(Some(q)),
                        rat_str(&sum),
                        rat_str(&total),
                    ));
                    for (t, count) in &strata {
                        let mut e = 0;
                        for i in 0..t.len() {
                            for j in i + 1..t.len() {
                                e += bilinear(&chi, &t.parts()[i], &t.parts()[j]);
                            }
                        }
                        let mut predicted = MotivicScalar::l_pow(-e);
                        for p in t.parts() {
                            predicted = predicted.mul(&memo[p]);
                        }
                        out.push(Check::compare(
                            "HN stratum count is the twisted product of semistable counts",
                            format!("{}, type {t}", params(Some(q))),
                            rat_str(count),
                            rat_str(&predicted.evaluate(q as u64)?),
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn compositions(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=r {
        for mut rest in compositions(r - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Two weight vectors per composition length: `(m-1, ..., 1, 0)` and `(2^{m-1}-1, ..., 1, 0)`,
/// with `(5, -1)` standing in for the second when `m = 2`.
pub fn weight_grid(m: usize) -> Vec<Vec<i64>> {
    let linear: Vec<i64> = (0..m as i64).rev().collect();
    let second: Vec<i64> = if m == 2 {
        vec![5, -1]
    } else {
        (0..m as u32).rev().map(|k| (1i64 << k) - 1).collect()
    };
    if m <= 1 || second == linear {
        vec![linear]
    } else {
        vec![linear, second]
    }
}

fn periodic(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let max_r = cfg.bound.unwrap_or(4);
    for q in cfg.fields() {
        for r in 1..=max_r {
            for delta in compositions(r) {
                let parts: Vec<u32> = delta.iter().map(|&d| d as u32).collect();
                let formula = gaussian_multinomial(r as u32, &parts)?.eval_int(&BigInt::from(q));
                let brute = flags_of_type(q, &delta, cfg.budget)?.len();
                out.push(Check::compare(
                    "flag variety count is the Gaussian multinomial",
                    format!("F_{q}, delta {delta:?}"),
                    formula.to_string(),
                    brute.to_string(),
                ));
            }
        }
    }
    for q in cfg.fields() {
        for (delta, weights) in [(vec![1, 1], vec![1, 0]), (vec![1, 1], vec![5, -1]), (vec![2], vec![0])] {
            let ft = FlagType::new(delta, weights)?;
            out.extend(period_checks(&ft, BaseField::Fq(q), cfg.budget)?);
        }
    }
    for r in 1..=max_r.min(4) {
        for delta in compositions(r) {
            for weights in weight_grid(delta.len()) {
                let ft = FlagType::new(delta.clone(), weights)?;
                out.extend(period_checks(&ft, BaseField::F1, cfg.budget)?);
            }
        }
    }
    Ok(out)
}

fn period_checks(ft: &FlagType, base: BaseField, budget: Budget) -> Result<Vec<Check>> {
    let (t, points, label) = match base {
        BaseField::Fq(q) => (q, q, format!("F_{q}")),
        BaseField::F1 => (1, 1, "F_1".to_string()),
    };
    let params = format!("{label}, delta {:?}, weights {:?}", ft.delta, ft.weights);
    let poly = period_domain_polynomial(ft, base)?;
    let brute = BigInt::from(period_domain_bruteforce(ft, base, points, budget)?);
    let mut out = vec![Check::compare(
        "period domain count from the HN inversion formula",
        params.clone(),
        poly.eval_int(&BigInt::from(t)).to_string(),
        brute.to_string(),
    )];
    let f = equivariant_period_domain(ft, base, budget)?;
    let id = f.value_at_class(f.group().identity_class()).evaluate(t as u64)?;
    out.push(Check::compare(
        "equivariant period domain at the identity counts semistable flags",
        params.clone(),
        rat_str(&id),
        rat_str(&Rational::from_integer(brute.clone())),
    ));
    // A second specialization: F_{q^2}-points, or F_2-points against coordinate subspaces.
    let (t2, points2) = match base {
        BaseField::Fq(q) if crate::field::is_prime(q) => (q * q, q * q),
        BaseField::Fq(_) => return Ok(out),
        BaseField::F1 => (2, 2),
    };
    let brute2 = period_domain_bruteforce(ft, base, points2, budget)?;
    out.push(Check::compare(
        "period domain polynomial counts semistable flags over a larger field",
        format!("{params}, {points2} points"),
        poly.eval_int(&BigInt::from(t2)).to_string(),
        BigUint::to_string(&brute2),
    ));
    Ok(out)
}

fn characters(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let max_r = cfg.bound.unwrap_or(6);
    let one = Rational::one();
    for r in 1..=max_r.min(crate::equivariant::MAX_CHARACTER_TABLE) {
        let table = sym_character_table(r)?;
        out.push(Check::holds("row orthogonality of the S_r character table", format!("r = {r}"), table.is_orthonormal()));
        let n = table.rows.len();
        let order = table.order() as i64;
        let columns_ok = (0..n).all(|a| {
            (0..n).all(|b| {
                let s: i64 = (0..n).map(|i| table.values[i][a] * table.values[i][b]).sum();
                let expect = if a == b { order / table.class_sizes[a] as i64 } else { 0 };
                s == expect
            })
        });
        out.push(Check::holds("column orthogonality of the S_r character table", format!("r = {r}"), columns_ok));
        if r > crate::group::MAX_EXPLICIT_SYMMETRIC {
            continue;
        }
        let sr = symmetric_group(r)?;
        let chars: Vec<ClassFunction> = (0..n).map(|i| table.character(i, &sr)).collect::<Result<_>>()?;
        let explicit_ok = chars.iter().enumerate().all(|(i, a)| {
            chars.iter().enumerate().all(|(j, b)| {
                let expect = if i == j { one.clone() } else { Rational::zero() };
                a.inner_product_at(b, &one).map(|x| x == expect).unwrap_or(false)
            })
        });
        out.push(Check::holds(
            "orthonormality of irreducible characters on explicit S_r",
            format!("r = {r}"),
            explicit_ok,
        ));
        if r > 5.min(max_r) {
            continue;
        }
        for eta in partitions(r).into_iter().rev() {
            if eta.len() < 2 {
                continue;
            }
            let h = young_subgroup(&sr, &eta)?;
            let basis = young_basis(&eta)?;
            let holds = basis.iter().all(|f| {
                chars.iter().all(|chi| frobenius_reciprocity_holds(f, chi, &h).unwrap_or(false))
            });
            out.push(Check::holds("Frobenius reciprocity", format!("S_{eta:?} in S_{r}"), holds));
            // Split the first part of eta into (1, eta_1 - 1) or merge: S_{1, eta_1 - 1, ...} <= S_eta.
            if eta[0] >= 2 {
                let mut finer = vec![1, eta[0] - 1];
                finer.extend_from_slice(&eta[1..]);
                out.push(Check::holds(
                    "transitivity of induction",
                    format!("S_{finer:?} <= S_{eta:?} <= S_{r}"),
                    induction_is_transitive(&sr, &finer, &eta, &table)?,
                ));
            }
        }
    }
    Ok(out)
}

/// External products of irreducible characters of the factors of `S_eta`.
fn young_basis(eta: &[usize]) -> Result<Vec<ClassFunction>> {
    let mut out: Vec<ClassFunction> = Vec::new();
    for (k, &e) in eta.iter().enumerate() {
        let se = symmetric_group(e)?;
        let table = sym_character_table(e)?;
        let chars: Vec<ClassFunction> = (0..table.rows.len()).map(|i| table.character(i, &se)).collect::<Result<_>>()?;
        out = if k == 0 {
            chars
        } else {
            out.iter().flat_map(|a| chars.iter().map(move |b| a.external_product(b))).collect()
        };
    }
    Ok(out)
}

fn induction_is_transitive(
    sr: &crate::group::PermutationGroup,
    finer: &[usize],
    coarse: &[usize],
    table: &crate::equivariant::CharacterTable,
) -> Result<bool> {
    let k = young_subgroup(sr, coarse)?;
    let h = young_subgroup(sr, finer)?;
    let inside: Vec<usize> = (0..k.group.order()).filter(|&x| h.contains(k.embed[x])).collect();
    let mid = Subgroup::from_elements(k.group.clone(), &inside, "middle")?;
    let composite: Vec<usize> = mid.embed.iter().map(|&x| k.embed[x]).collect();
    let direct_sub = Subgroup::from_embedding(sr.group.clone(), mid.group.clone(), composite)?;
    for i in 0..table.rows.len() {
        let f = table.character(i, sr)?.restrict(&direct_sub)?;
        let two_step = f.induce(&mid)?.induce(&k)?;
        if two_step != f.induce(&direct_sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn trivial_assoc_grid_passes() {
        let cfg = SuiteConfig {
            bound: Some(1),
            ..Default::default()
        };
        let r = run_suite(Suite::Assoc, &cfg).unwrap();
        assert!(r.all_passed(), "{r}");
        assert!(r.checks.len() > 10);
    }

    #[test]
    fn small_grids_pass() {
        let cfg = SuiteConfig {
            bound: Some(2),
            q: Some(vec![2]),
            ..Default::default()
        };
        for s in [Suite::Integration, Suite::Recursion, Suite::Periodic, Suite::Characters] {
            let r = run_suite(s, &cfg).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn grids() {
        assert_eq!(compositions(3).len(), 4);
        assert_eq!(weight_grid(3), vec![vec![2, 1, 0], vec![3, 1, 0]]);
        assert_eq!(weight_grid(1), vec![vec![0]]);
        assert_eq!(theta_grid(2).len(), 3);
    }

    #[test]
    fn failure_lines_name_identity_and_parameters() {
        let c = Check::compare("HN strata partition the stack of representations", "A_2 over F_2".into(), "1".into(), "2".into());
        assert!(!c.passed);
        assert_eq!(c.to_string(), "[FAIL] HN strata partition the stack of representations (A_2 over F_2): 1 != 2");
    }
}
