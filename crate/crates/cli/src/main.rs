use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use motivic_hall::budget::{Budget, DEFAULT_BUDGET};
use motivic_hall::coeffring::{gaussian_multinomial, parabolic_order_poly, rational_to_string, MotivicScalar};
use motivic_hall::equivariant::{equivariant_period_domain, gl_parabolic, sym_parabolic};
use motivic_hall::error::{Error, Result};
use motivic_hall::group::{general_linear, symmetric_group, Subgroup};
use motivic_hall::hall::{euler_form, integrate_counting, motivic_class_total, HallElement};
use motivic_hall::protoexact::{
    enumerate_reps, hecke_convolution_oracle, hecke_structure_constants, Quiver, QuiverRep, RepCategory,
};
use motivic_hall::slope::{
    count_semistable_bruteforce, hn_filtration, hn_types, period_domain_count, period_domain_polynomial,
    period_domain_terms, semistable_motivic_class, BaseField, FlagType, Method, PeriodMode, StabilityData,
};
use motivic_hall::suites::{run_suite, Suite, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "mhall", version, about = "Exact Hall algebra, HN recursion and period domain computations")]
struct Cli {
    /// Print JSON instead of plain-text tables.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum number of raw points an enumeration may visit.
    #[arg(long, global = true, env = "HALL_BUDGET")]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler form chi(x, y) of a quiver.
    Euler {
        #[arg(long)]
        quiver: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<i64>,
    },
    /// Isomorphism classes of representations of a given dimension vector over F_q.
    Enumerate {
        #[arg(long)]
        quiver: String,
        #[arg(long, value_delimiter = ',')]
        dim: Vec<usize>,
        #[arg(long)]
        q: u32,
    },
    /// Hall product of two elements (representation or Hall element JSON files).
    HallProduct {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        q: u32,
        /// Largest total dimension of the precomputed category.
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Counting integral of a Hall element into the twisted series ring.
    Integrate {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        element: String,
    },
    /// Motivic class of the stack of representations of dimension `dim`.
    Motivic {
        #[arg(long)]
        quiver: String,
        #[arg(long, value_delimiter = ',')]
        dim: Vec<usize>,
        /// Also evaluate at t = q.
        #[arg(long)]
        q: Option<u32>,
    },
    /// HN types of a dimension vector for a stability condition.
    HnType {
        #[arg(long)]
        quiver: String,
        #[arg(long, value_delimiter = ',')]
        dim: Vec<usize>,
        #[command(flatten)]
        stability: StabilityArgs,
    },
    /// HN filtration of an explicit representation.
    HnFiltration {
        #[arg(long)]
        quiver: String,
        /// Representation JSON file.
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        stability: StabilityArgs,
    },
    /// Motivic class of the semistable locus, optionally checked against brute force at q.
    Semistable {
        #[arg(long)]
        quiver: String,
        #[arg(long, value_delimiter = ',')]
        dim: Vec<usize>,
        #[command(flatten)]
        stability: StabilityArgs,
        #[arg(long, value_enum, default_value = "recursive")]
        method: MethodArg,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Class of the flag variety of type delta and the order of the parabolic.
    Flag {
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',')]
        delta: Vec<usize>,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Semistable flags of a weighted type: polynomial, terms and count.
    PeriodDomain {
        #[command(flatten)]
        flag: FlagArgs,
        #[arg(long, value_enum, default_value = "checked")]
        mode: ModeArg,
    },
    /// Class function of the semistable flags under GL_r(F_q) or S_r.
    Equivariant {
        #[command(flatten)]
        flag: FlagArgs,
    },
    /// Hecke algebra of S_r with a Young subgroup, or GL_r(F_q) with a parabolic.
    Hecke {
        /// Block sizes of the subgroup.
        #[arg(long, value_delimiter = ',')]
        eta: Vec<usize>,
        /// Use GL_r(F_q) instead of S_r.
        #[arg(long)]
        q: Option<u32>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u32>>,
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(clap::Args, Debug)]
struct StabilityArgs {
    /// Stability JSON file; overrides --theta.
    #[arg(long)]
    stability: Option<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    theta: Option<Vec<i64>>,
}

#[derive(clap::Args, Debug)]
struct FlagArgs {
    #[arg(long, value_delimiter = ',')]
    delta: Vec<usize>,
    /// Strictly decreasing weights; default n-1, ..., 0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<i64>>,
    /// Base field size; omit with --f1.
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    f1: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Recursive,
    Inversion,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Bruteforce,
    Recursion,
    Checked,
}

/// Output of a command: JSON plus the plain-text rendering.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.push(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    for r in rows {
        out.push(line(r.iter().map(|s| s.as_str()).collect()));
    }
    out.join("\n")
}

fn read_json(path: &str, field: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::validation(field, format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::validation(field, format!("{path}: malformed JSON: {e}")))
}

/// A quiver JSON file, or one of the names `a1`, `a2`, `kronecker`, `kronecker:m`, `linear:n`.
fn load_quiver(spec: &str) -> Result<Arc<Quiver>> {
    if Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::validation("quiver", format!("{spec}: {e}")))?;
        return Ok(Arc::new(Quiver::from_json(&text)?));
    }
    let named = |n: Option<&str>, default: usize| -> Result<usize> {
        n.map_or(Ok(default), |s| s.parse().map_err(|_| Error::validation("quiver", format!("bad size in {spec:?}"))))
    };
    let (name, arg) = match spec.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let q = match name {
        "a1" => Quiver::a1(),
        "a2" => Quiver::a2(),
        "kronecker" => Quiver::kronecker(named(arg, 2)?),
        "linear" => Quiver::linear(named(arg, 2)?),
        _ => return Err(Error::validation("quiver", format!("{spec:?} is neither a readable file nor a known quiver"))),
    };
    Ok(Arc::new(q))
}

fn stability(args: &StabilityArgs, n: usize) -> Result<StabilityData> {
    let s = match (&args.stability, &args.theta) {
        (Some(path), _) => StabilityData::from_json_value(&read_json(path, "stability")?)?,
        (None, Some(theta)) => StabilityData::with_theta(theta.clone()),
        (None, None) => return Err(Error::validation("theta", "give --theta or --stability")),
    };
    if s.len() != n {
        return Err(Error::validation("theta", format!("expected {n} entries, got {}", s.len())));
    }
    Ok(s)
}

fn flag_type(args: &FlagArgs) -> Result<(FlagType, BaseField)> {
    let ft = match &args.weights {
        Some(w) => FlagType::new(args.delta.clone(), w.clone())?,
        None => FlagType::unweighted(args.delta.clone())?,
    };
    let base = match (args.q, args.f1) {
        (Some(_), true) => return Err(Error::validation("q", "--q and --f1 are exclusive")),
        (Some(q), false) => BaseField::Fq(q),
        (None, true) => BaseField::F1,
        (None, false) => return Err(Error::validation("q", "give --q or --f1")),
    };
    Ok((ft, base))
}

fn base_label(base: BaseField) -> String {
    match base {
        BaseField::Fq(q) => format!("F_{q}"),
        BaseField::F1 => "F_1".into(),
    }
}

fn scalar_json(s: &MotivicScalar) -> Value {
    json!({"value": serde_json::to_value(s).expect("serializable"), "display": s.to_string_var("t")})
}

fn load_element(cat: &Arc<RepCategory>, path: &str, field: &str) -> Result<HallElement> {
    let v = read_json(path, field)?;
    if v.get("coeffs").is_some() {
        return HallElement::from_json_value(cat.clone(), &v);
    }
    let rep = QuiverRep::from_json_value(cat.quiver().clone(), v)?;
    if rep.q() != cat.q() {
        return Err(Error::validation(field, "representation is over a different field"));
    }
    HallElement::indicator(cat.clone(), &rep)
}

fn element_text(e: &HallElement) -> String {
    let cat = e.category();
    let rows: Vec<Vec<String>> = e
        .coeffs()
        .iter()
        .map(|(k, v)| {
            let rep = cat.rep(k).map(|r| r.to_json_value().to_string()).unwrap_or_default();
            vec![k.to_string(), rational_to_string(v), rep]
        })
        .collect();
    table(&["class", "coefficient", "representative"], &rows)
}

fn run(cli: &Cli) -> Result<Output> {
    let budget = Budget(cli.budget.unwrap_or(DEFAULT_BUDGET));
    match &cli.command {
        Command::Euler { quiver, x, y } => {
            let q = load_quiver(quiver)?;
            let v = euler_form(&q, x, y)?;
            Ok(Output::new(json!({"x": x, "y": y, "euler": v}), v.to_string()))
        }
        Command::Enumerate { quiver, dim, q } => {
            let quiver = load_quiver(quiver)?;
            let t = enumerate_reps(&quiver, dim, *q, budget)?;
            let mut rows = Vec::new();
            let mut classes = Vec::new();
            for (i, rep) in t.reps().iter().enumerate() {
                rows.push(vec![
                    i.to_string(),
                    t.aut_orders()[i].to_string(),
                    t.orbit_sizes()[i].to_string(),
                    rep.to_json_value().to_string(),
                ]);
                classes.push(json!({
                    "rep": rep.to_json_value(),
                    "aut": t.aut_orders()[i].to_string(),
                    "orbit": t.orbit_sizes()[i],
                }));
            }
            let count = rational_to_string(&t.groupoid_count());
            let text = format!("{}\ngroupoid count: {count}", table(&["#", "|Aut|", "orbit", "representation"], &rows));
            Ok(Output::new(json!({"dim": dim, "q": q, "classes": classes, "groupoid_count": count}), text))
        }
        Command::HallProduct { quiver, q, bound, left, right } => {
            let cat = Arc::new(RepCategory::new(load_quiver(quiver)?, *q, *bound, budget)?);
            let a = load_element(&cat, left, "left")?;
            let b = load_element(&cat, right, "right")?;
            let p = a.product(&b)?;
            Ok(Output::new(p.to_json_value(), element_text(&p)))
        }
        Command::Integrate { quiver, q, bound, element } => {
            let cat = Arc::new(RepCategory::new(load_quiver(quiver)?, *q, *bound, budget)?);
            let e = load_element(&cat, element, "element")?;
            let s = integrate_counting(&e)?;
            Ok(Output::new(s.to_json_value(), s.to_string()))
        }
        Command::Motivic { quiver, dim, q } => {
            let quiver = load_quiver(quiver)?;
            let c = motivic_class_total(&quiver, dim)?;
            let mut j = json!({"dim": dim, "class": scalar_json(&c)});
            let mut text = c.to_string();
            if let Some(q) = q {
                let v = rational_to_string(&c.evaluate(*q as u64)?);
                text = format!("{text}\nat L = {q}: {v}");
                j["evaluated"] = json!({"q": q, "value": v});
            }
            Ok(Output::new(j, text))
        }
        Command::HnType { quiver, dim, stability: sa } => {
            let quiver = load_quiver(quiver)?;
            quiver.check_dim(dim)?;
            let s = stability(sa, quiver.num_vertices())?;
            let types = hn_types(dim, &s)?;
            let text = types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n");
            let j: Vec<Value> = types.iter().map(|t| t.to_json_value()).collect();
            Ok(Output::new(json!({"dim": dim, "stability": s.to_json_value(), "types": j}), text))
        }
        Command::HnFiltration { quiver, rep, stability: sa } => {
            let quiver = load_quiver(quiver)?;
            let e = QuiverRep::from_json_value(quiver.clone(), read_json(rep, "rep")?)?;
            let s = stability(sa, quiver.num_vertices())?;
            let hn = hn_filtration(&e, &s, budget)?;
            let subs = hn.subquotients(&e);
            let rows: Vec<Vec<String>> = subs
                .iter()
                .zip(&hn.slopes)
                .map(|(r, mu)| vec![format!("{:?}", r.dim()), mu.to_string(), r.to_json_value().to_string()])
                .collect();
            let pieces: Vec<Value> = subs
                .iter()
                .zip(&hn.slopes)
                .map(|(r, mu)| json!({"dim": r.dim(), "slope": mu.to_string(), "rep": r.to_json_value()}))
                .collect();
            let text = format!("type {}\n{}", hn.hn_type, table(&["dim", "slope", "subquotient"], &rows));
            Ok(Output::new(json!({"type": hn.hn_type.to_json_value(), "subquotients": pieces}), text))
        }
        Command::Semistable { quiver, dim, stability: sa, method, q } => {
            let quiver = load_quiver(quiver)?;
            let s = stability(sa, quiver.num_vertices())?;
            let m = match method {
                MethodArg::Recursive => Method::Recursive,
                MethodArg::Inversion => Method::Inversion,
            };
            let c = semistable_motivic_class(&quiver, dim, &s, m)?;
            let mut j = json!({"dim": dim, "stability": s.to_json_value(), "class": scalar_json(&c)});
            let mut text = c.to_string();
            if let Some(q) = q {
                let v = c.evaluate(*q as u64)?;
                let brute = count_semistable_bruteforce(&quiver, dim, &s, *q, budget)?;
                if v != brute {
                    return Err(Error::consistency(format!(
                        "semistable class gives {} at q = {q} but enumeration gives {}",
                        rational_to_string(&v),
                        rational_to_string(&brute)
                    )));
                }
                text = format!("{text}\nat L = {q}: {} (enumeration: {})", rational_to_string(&v), rational_to_string(&brute));
                j["evaluated"] = json!({"q": q, "value": rational_to_string(&v), "bruteforce": rational_to_string(&brute)});
            }
            Ok(Output::new(j, text))
        }
        Command::Flag { r, delta, q } => {
            if delta.iter().sum::<usize>() != *r {
                return Err(Error::validation("delta", format!("entries must sum to r = {r}")));
            }
            let parts: Vec<u32> = delta.iter().map(|&d| d as u32).collect();
            let g = gaussian_multinomial(*r as u32, &parts)?;
            let p = parabolic_order_poly(&parts);
            let mut j = json!({
                "r": r, "delta": delta,
                "flags": {"value": g, "display": g.to_string_var("t")},
                "parabolic_order": {"value": p, "display": p.to_string_var("t")},
            });
            let mut text = format!("{}\nparabolic order: {}", g.to_string_var("t"), p.to_string_var("t"));
            if let Some(q) = q {
                let x = num_bigint::BigInt::from(*q);
                let (gv, pv) = (g.eval_int(&x), p.eval_int(&x));
                text = format!("{text}\nat t = {q}: {gv} flags, parabolic order {pv}");
                j["evaluated"] = json!({"q": q, "flags": gv.to_string(), "parabolic_order": pv.to_string()});
            }
            Ok(Output::new(j, text))
        }
        Command::PeriodDomain { flag, mode } => {
            let (ft, base) = flag_type(flag)?;
            let poly = period_domain_polynomial(&ft, base)?;
            let mode = match mode {
                ModeArg::Bruteforce => PeriodMode::BruteForce,
                ModeArg::Recursion => PeriodMode::Recursion,
                ModeArg::Checked => PeriodMode::Checked,
            };
            let count = period_domain_count(&ft, base, mode, budget)?;
            let terms = period_domain_terms(&ft)?;
            let rows: Vec<Vec<String>> = terms
                .iter()
                .map(|t| {
                    vec![
                        format!("{:?}", t.parts),
                        t.sign.to_string(),
                        t.twist.to_string(),
                        t.flag_factor.to_string_var("t"),
                        format!("{:?}", t.eta),
                    ]
                })
                .collect();
            let tj: Vec<Value> = terms
                .iter()
                .map(|t| json!({"parts": t.parts, "sign": t.sign, "twist": t.twist, "flag_factor": t.flag_factor, "eta": t.eta}))
                .collect();
            let text = format!(
                "{}\npolynomial: {}\ncount over {}: {count}",
                table(&["parts", "sign", "twist", "flags", "eta"], &rows),
                poly.to_string_var("t"),
                base_label(base)
            );
            Ok(Output::new(
                json!({
                    "type": ft.to_json_value(), "base": base_label(base), "terms": tj,
                    "polynomial": {"value": poly, "display": poly.to_string_var("t")},
                    "count": count.to_string(),
                }),
                text,
            ))
        }
        Command::Equivariant { flag } => {
            let (ft, base) = flag_type(flag)?;
            let f = equivariant_period_domain(&ft, base, budget)?;
            let g = f.group();
            let rows: Vec<Vec<String>> = (0..g.num_classes())
                .map(|c| vec![g.class_labels()[c].clone(), g.class_size(c).to_string(), f.value_at_class(c).to_string_var("t")])
                .collect();
            let text = format!("{} on {}\n{}", ft.to_json_value(), g.name(), table(&["class", "size", "value"], &rows));
            Ok(Output::new(json!({"type": ft.to_json_value(), "base": base_label(base), "character": f.to_json_value()}), text))
        }
        Command::Hecke { eta, q } => {
            let r: usize = eta.iter().sum();
            let k: Subgroup = match q {
                Some(q) => gl_parabolic(&general_linear(r, *q, budget)?, eta, budget)?.subgroup,
                None => sym_parabolic(&symmetric_group(r)?, eta)?.subgroup,
            };
            let h = hecke_structure_constants(&k, budget)?;
            let oracle = hecke_convolution_oracle(&k);
            if h.constants != oracle {
                return Err(Error::consistency("Hecke structure constants differ from double coset convolution"));
            }
            let assoc = h.is_associative();
            let n = h.rank();
            let mut rows = Vec::new();
            let mut products = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let c: Vec<String> = h.constants[i][j].iter().map(rational_to_string).collect();
                    rows.push(vec![format!("e{i} * e{j}"), c.join(" ")]);
                    products.push(json!({"left": i, "right": j, "coeffs": c}));
                }
            }
            let reps: Vec<usize> = h.double_cosets.iter().map(|d| d[0]).collect();
            let sizes: Vec<usize> = h.double_cosets.iter().map(|d| d.len()).collect();
            let text = format!(
                "{} in {}: {n} double cosets of sizes {sizes:?}\n{}\nassociative: {assoc}",
                k.group.name(),
                k.ambient.name(),
                table(&["product", "coefficients"], &rows)
            );
            Ok(Output {
                json: json!({
                    "group": k.ambient.name(), "subgroup": k.group.name(), "double_coset_representatives": reps,
                    "double_coset_sizes": sizes, "products": products, "associative": assoc,
                }),
                text,
                ok: assoc,
            })
        }
        Command::Verify { suite, quiver, q, bound } => {
            let suite: Suite = suite.parse()?;
            let quivers = match quiver {
                Some(spec) => Some(vec![(spec.clone(), load_quiver(spec)?)]),
                None => None,
            };
            let cfg = SuiteConfig {
                quivers,
                q: q.clone(),
                bound: *bound,
                budget,
            };
            let report = run_suite(suite, &cfg)?;
            Ok(Output {
                json: report.to_json_value(),
                text: report.to_string(),
                ok: report.all_passed(),
            })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation { .. } | Error::Domain(_) => 2,
        Error::Budget { .. } => 3,
        Error::Consistency(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_aligned() {
        let t = table(&["a", "bb"], &[vec!["xxx".into(), "y".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxxx  y");
    }

    #[test]
    fn named_quivers() {
        assert_eq!(load_quiver("a2").unwrap().num_vertices(), 2);
        assert_eq!(load_quiver("kronecker:3").unwrap().arrows().len(), 3);
        assert!(load_quiver("nope").is_err());
    }
}
