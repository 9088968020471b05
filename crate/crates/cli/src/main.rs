//! `monalg`: command-line front end.
//!
//! JSON arguments may be given inline or as `@path`. Exit codes: 0 success,
//! 1 mathematical failure, 2 input error, 3 inconclusive within bounds.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monalg::algebra::MilnorSquare;
use monalg::classgroup::{
    brute_force_i, diagram_thm_check, ker_main_trivial, main_theorem_smoke, standard_squares, verify_lemma46,
    verify_six_term, FiniteExtension, FiniteRing, Status,
};
use monalg::coeffring::{Elem, RingSpec};
use monalg::error::Error;
use monalg::ideal::MonomialIdeal;
use monalg::intlin::binom_det;
use monalg::io::{element_terms, parse_algebra, parse_element, parse_element_in, parse_extension, parse_ideal, parse_monoid, parse_subring, MonoidJson, TermJson};
use monalg::monoid::{is_subintegral_extension, subintegral_closure, AffineMonoid, PowerCertificate, Vector, Verdict};
use monalg::subint::{check_thm35, is_weakly_subintegral, Thm35Status, WeakOutcome};
use monalg::verify::{run_all, run_suite, SuiteReport, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "monalg", version, about = "Subintegrality, nilpotents and invertible modules over monoid algebras")]
struct Cli {
    /// Seed for randomized suites and samplers.
    #[arg(long, global = true, env = "MONALG_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    bounds: Bounds,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Search bounds; each has an environment override.
#[derive(Args, Clone, Copy)]
struct Bounds {
    /// Degree bound for tabulations and closures.
    #[arg(long, global = true, env = "MONALG_DEGREE", default_value_t = 12)]
    degree: i64,
    /// Largest multiple tried in power profiles.
    #[arg(long, global = true, env = "MONALG_J_MAX", default_value_t = 64)]
    j_max: u32,
    /// Largest weak-subintegrality length tried.
    #[arg(long, global = true, env = "MONALG_P_MAX", default_value_t = 4)]
    p_max: usize,
    /// Largest power tried by the nilpotence oracle.
    #[arg(long, global = true, env = "MONALG_K_MAX", default_value_t = 16)]
    k_max: u32,
    /// Largest root index tried for radicals.
    #[arg(long, global = true, env = "MONALG_N_MAX", default_value_t = 16)]
    n_max: u32,
}

impl Bounds {
    fn json(&self) -> Value {
        json!({"degree": self.degree, "j_max": self.j_max, "p_max": self.p_max, "k_max": self.k_max, "n_max": self.n_max})
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Affine monoids and their extensions.
    Monoid {
        #[command(subcommand)]
        verb: MonoidVerb,
    },
    /// Monomial ideals.
    Ideal {
        #[command(subcommand)]
        verb: IdealVerb,
    },
    /// Elements of quotients `R[M]/I`.
    Algebra {
        #[command(subcommand)]
        verb: AlgebraVerb,
    },
    /// Subintegrality of ring elements and extensions.
    Check {
        #[command(subcommand)]
        verb: CheckVerb,
    },
    /// Invertible modules and exact sequences.
    Class {
        #[command(subcommand)]
        verb: ClassVerb,
    },
    /// Determinants.
    Det {
        #[command(subcommand)]
        verb: DetVerb,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        verb: VerifyVerb,
    },
}

#[derive(Args)]
struct ExtArgs {
    /// `{"sub": <monoid>, "super": <monoid>}`.
    #[arg(long, conflicts_with_all = ["sub", "sup"])]
    ext: Option<String>,
    /// Smaller monoid.
    #[arg(long)]
    sub: Option<String>,
    /// Larger monoid.
    #[arg(long = "super")]
    sup: Option<String>,
}

impl ExtArgs {
    fn load(&self) -> Result<(AffineMonoid, AffineMonoid), Error> {
        match (&self.ext, &self.sub, &self.sup) {
            (Some(e), _, _) => parse_extension(&read(e)?),
            (None, Some(a), Some(b)) => Ok((parse_monoid(&read(a)?)?, parse_monoid(&read(b)?)?)),
            _ => Err(Error::Input("give --ext or both --sub and --super".into())),
        }
    }
}

#[derive(Subcommand)]
enum MonoidVerb {
    /// Generators, positivity and faces.
    Info {
        #[arg(long)]
        monoid: String,
    },
    /// Subintegral closure up to the degree bound.
    Closure(ExtArgs),
    /// Whether the extension is subintegral.
    Subintegral(ExtArgs),
}

#[derive(Subcommand)]
enum IdealVerb {
    /// Radical generators, cross-checked against powers.
    Radical {
        #[arg(long)]
        ideal: String,
    },
    /// Every prime ideal of the host monoid.
    Primes {
        #[arg(long)]
        ideal: String,
    },
    /// Minimal primes of the radical.
    Decompose {
        #[arg(long)]
        ideal: String,
    },
}

#[derive(Subcommand)]
enum AlgebraVerb {
    /// Nilpotence by criterion and by powering.
    Nil {
        #[arg(long)]
        element: String,
    },
    /// Unit test with a verified inverse.
    Unit {
        #[arg(long)]
        element: String,
    },
    /// Glue elements of `R[M]/J` and `R[M]/P` to `R[M]/(J ∩ P)`.
    Patch {
        /// Ring and monoid; any ideal given here is ignored.
        #[arg(long)]
        algebra: String,
        /// Generators of `J`.
        #[arg(long)]
        j: String,
        /// Generators of `P`.
        #[arg(long)]
        p: String,
        /// Terms of the element modulo `J`.
        #[arg(long)]
        f1: String,
        /// Terms of the element modulo `P`.
        #[arg(long)]
        f2: String,
    },
}

#[derive(Subcommand)]
enum CheckVerb {
    /// Whether `b² ∈ A` and `b³ ∈ A`.
    Elementary {
        #[arg(long)]
        subring: String,
        /// Element terms, or a full element object.
        #[arg(long)]
        element: String,
    },
    /// Search for a weak-subintegrality witness.
    Weak {
        #[arg(long)]
        subring: String,
        #[arg(long)]
        element: String,
    },
    /// Monoid subintegrality against weak subintegrality of monomials.
    Thm35 {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        ext: ExtArgs,
    },
}

#[derive(Args)]
struct FinitePair {
    /// The larger finite ring, e.g. `Dual(Z/2)`.
    #[arg(long)]
    ring: String,
    /// The subring, e.g. `Z/2`.
    #[arg(long = "sub-ring")]
    sub_ring: String,
}

#[derive(Subcommand)]
enum ClassVerb {
    /// Enumerate all invertible modules of a finite extension.
    Brute(FinitePair),
    /// Units, modules and the exact sequence joining them.
    Sixterm(FinitePair),
    /// Exact sequence of the built-in finite Milnor squares.
    Lemma46,
    /// Whether the comparison kernel is trivial, with a witness otherwise.
    Kermain {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        ext: ExtArgs,
        /// Ideal generators in the larger monoid.
        #[arg(long, default_value = "[]")]
        ideal: String,
    },
    /// Property checks for a pair of monoid algebra extensions.
    MainSmoke {
        #[arg(long = "sub-ring")]
        sub_ring: String,
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long, default_value = "[]")]
        ideal: String,
    },
    /// Exponential modules over a ring containing Q.
    Diagram {
        #[arg(long = "sub-ring", default_value = "Q")]
        sub_ring: String,
        #[arg(long, default_value = "Dual(Q)")]
        ring: String,
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value = "[]")]
        ideal: String,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum DetVerb {
    /// `det [binom(a_i, j)]` for strictly increasing positive `a_i`.
    Binom {
        #[arg(required = true)]
        a: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum VerifyVerb {
    /// Run every suite.
    All,
    /// Run one suite by number.
    Suite { id: usize },
}

/// What a verb produced.
struct Outcome {
    case: String,
    status: Status,
    text: String,
    certificates: Value,
}

fn ok(case: &str, text: impl Into<String>, certificates: Value) -> Outcome {
    Outcome { case: case.into(), status: Status::Pass, text: text.into(), certificates }
}

fn read(arg: &str) -> Result<String, Error> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn vec_text(v: &[i64]) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

fn gens_of(text: &str) -> Result<Vec<Vector>, Error> {
    monalg::io::from_json(&read(text)?)
}

fn ideal_in(n: &AffineMonoid, text: &str) -> Result<MonomialIdeal, Error> {
    MonomialIdeal::new(n, gens_of(text)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn finite_pair(p: &FinitePair) -> Result<FiniteExtension, Error> {
    let b = RingSpec::parse(&p.ring)?;
    let a = RingSpec::parse(&p.sub_ring)?;
    if !b.embeds(&a) {
        return Err(Error::Input(format!("{a} is not a subring of {b}")));
    }
    let (ring, elems) = FiniteRing::from_spec(&b)?;
    let sub: Vec<Elem> = a.enumerate()?.iter().map(|c| b.embed(&a, c)).collect::<Result<_, _>>()?;
    let idx: Vec<usize> = (0..elems.len()).filter(|&i| sub.contains(&elems[i])).collect();
    FiniteExtension::new(ring, &idx)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let b = cli.bounds;
    match &cli.cmd {
        Cmd::Monoid { verb } => match verb {
            MonoidVerb::Info { monoid } => {
                let m = parse_monoid(&read(monoid)?)?;
                let faces = m.faces()?;
                let text = format!(
                    "dim {}, {} generators, {}, {} faces",
                    m.dim(),
                    m.generators().len(),
                    if m.is_positive() { "positive" } else { "not positive" },
                    faces.len()
                );
                Ok(ok(
                    "monoid info",
                    text,
                    json!({"monoid": MonoidJson::of(&m), "positive": m.is_positive(), "functional": m.functional(), "faces": faces}),
                ))
            }
            MonoidVerb::Closure(e) => {
                let (m, n) = e.load()?;
                let c = subintegral_closure(&m, &n, b.degree, b.j_max)?;
                let text = format!(
                    "{} elements of degree <= {}: {}",
                    c.elements.len(),
                    c.degree_bound,
                    c.elements.iter().map(|x| vec_text(x)).collect::<Vec<_>>().join(" ")
                );
                Ok(ok("monoid closure", text, to_value(&c)))
            }
            MonoidVerb::Subintegral(e) => {
                let (m, n) = e.load()?;
                let v = is_subintegral_extension(&m, &n, b.j_max)?;
                let text = match v.status {
                    Verdict::Yes => "Yes".to_string(),
                    Verdict::No => {
                        let c = v.generators.iter().find(|c| c.verdict == Verdict::No).expect("a failing generator");
                        match &c.certificate {
                            PowerCertificate::Obstructed { gcd, lattice_index: 0 } => {
                                format!("No (witness z={}, outside the cone, gcd {gcd})", vec_text(&c.element))
                            }
                            PowerCertificate::Obstructed { gcd, .. } => {
                                format!("No (witness z={}, gcd {gcd})", vec_text(&c.element))
                            }
                            other => format!("No ({other:?})"),
                        }
                    }
                    Verdict::UnknownWithinBound => "Unknown within bound".to_string(),
                };
                let status = if v.status == Verdict::UnknownWithinBound { Status::Inconclusive } else { Status::Pass };
                Ok(Outcome { case: "monoid subintegral".into(), status, text, certificates: to_value(&v) })
            }
        },
        Cmd::Ideal { verb } => match verb {
            IdealVerb::Radical { ideal } => {
                let i = parse_ideal(&read(ideal)?)?;
                let r = i.radical(b.n_max, b.degree)?;
                let g = r.ideal.generators().to_vec();
                Ok(ok(
                    "ideal radical",
                    format!("radical generators {}", g.iter().map(|x| vec_text(x)).collect::<Vec<_>>().join(" ")),
                    json!({"generators": g, "checked_degree": r.checked_degree, "max_root_index": r.max_root_index}),
                ))
            }
            IdealVerb::Primes { ideal } => {
                let i = parse_ideal(&read(ideal)?)?;
                let ps = i.host().prime_ideals()?;
                let gens: Vec<Vec<Vector>> = ps.iter().map(|p| p.generators().to_vec()).collect();
                let containing: Vec<bool> =
                    ps.iter().map(|p| i.generators().iter().all(|g| p.contains(g).unwrap_or(false))).collect();
                Ok(ok(
                    "ideal primes",
                    format!("{} prime ideals, {} contain the ideal", ps.len(), containing.iter().filter(|&&c| c).count()),
                    json!({"primes": gens, "contains_ideal": containing}),
                ))
            }
            IdealVerb::Decompose { ideal } => {
                let i = parse_ideal(&read(ideal)?)?;
                let r = i.radical(b.n_max, b.degree)?;
                let ps = r.ideal.prime_decomposition(b.degree)?;
                let gens: Vec<Vec<Vector>> = ps.iter().map(|p| p.generators().to_vec()).collect();
                Ok(ok(
                    "ideal decompose",
                    format!("radical is the intersection of {} primes", ps.len()),
                    json!({"radical": r.ideal.generators(), "primes": gens}),
                ))
            }
        },
        Cmd::Algebra { verb } => match verb {
            AlgebraVerb::Nil { element } => {
                let (alg, f) = parse_element(&read(element)?)?;
                let v = alg.is_nilpotent(&f, b.k_max)?;
                let text = match (v.nilpotent, v.index) {
                    (true, Some(k)) => format!("nilpotent, f^{k} = 0"),
                    (true, None) => "nilpotent".to_string(),
                    _ => "not nilpotent".to_string(),
                };
                Ok(ok("algebra nil", text, to_value(&v)))
            }
            AlgebraVerb::Unit { element } => {
                let (alg, f) = parse_element(&read(element)?)?;
                if alg.is_unit(&f)? {
                    let g = alg.inverse(&f)?;
                    Ok(ok(
                        "algebra unit",
                        format!("unit, inverse {}", alg.format(&g)),
                        json!({"unit": true, "inverse": element_terms(&alg, &g)}),
                    ))
                } else {
                    Ok(ok("algebra unit", "not a unit", json!({"unit": false})))
                }
            }
            AlgebraVerb::Patch { algebra, j, p, f1, f2 } => {
                let base = parse_algebra(&read(algebra)?)?;
                let n = base.monoid().clone();
                let sq = MilnorSquare::new(base.ring().clone(), ideal_in(&n, j)?, ideal_in(&n, p)?)?;
                let g1 = parse_element_in(&sq.left, &read(f1)?)?;
                let g2 = parse_element_in(&sq.right, &read(f2)?)?;
                let h = sq.patch(&g1, &g2)?;
                if sq.project(&h)? != (g1, g2) {
                    return Err(Error::Invariant("patched element does not project back".into()));
                }
                Ok(ok("algebra patch", sq.top.format(&h), json!({"patched": element_terms(&sq.top, &h)})))
            }
        },
        Cmd::Check { verb } => match verb {
            CheckVerb::Elementary { subring, element } => {
                let a = parse_subring(&read(subring)?)?;
                let f = parse_element_in(a.ambient(), &read(element)?)?;
                let e = a.is_elementary_subintegral(&f)?;
                let inside = a.contains(&f)?;
                Ok(ok(
                    "check elementary",
                    format!("{}{}", if e { "elementary" } else { "not elementary" }, if inside { " (already in A)" } else { "" }),
                    json!({"elementary": e, "in_subring": inside}),
                ))
            }
            CheckVerb::Weak { subring, element } => {
                let a = parse_subring(&read(subring)?)?;
                let alg = a.ambient();
                let f = parse_element_in(alg, &read(element)?)?;
                match is_weakly_subintegral(&a, &f, b.p_max)? {
                    WeakOutcome::Found(w) => {
                        let cs: Vec<Vec<TermJson>> = w.c.iter().map(|c| element_terms(alg, c)).collect();
                        let shown: Vec<String> = w.c.iter().map(|c| alg.format(c)).collect();
                        Ok(ok(
                            "check weak",
                            format!("weakly subintegral, p = {}, c = [{}]", w.p, shown.join(", ")),
                            json!({"found": true, "p": w.p, "c": cs}),
                        ))
                    }
                    WeakOutcome::NotFound { p_checked, bound_exhausted, support_complete } => {
                        let status = if bound_exhausted { Status::Inconclusive } else { Status::Pass };
                        Ok(Outcome {
                            case: "check weak".into(),
                            status,
                            text: format!("no witness with p <= {p_checked}"),
                            certificates: json!({"found": false, "p_checked": p_checked, "bound_exhausted": bound_exhausted, "support_complete": support_complete}),
                        })
                    }
                }
            }
            CheckVerb::Thm35 { ring, ext } => {
                let r = RingSpec::parse(ring)?;
                let (m, n) = ext.load()?;
                let rep = check_thm35(&r, &m, &n, b.j_max, b.p_max, b.degree)?;
                let status = match rep.status {
                    Thm35Status::Violation => Status::Fail,
                    Thm35Status::Inconclusive => Status::Inconclusive,
                    _ => Status::Pass,
                };
                Ok(Outcome {
                    case: "check thm35".into(),
                    status,
                    text: format!("{:?}: monoid {:?}, all generators weakly subintegral: {}", rep.status, rep.monoid, rep.weak_all),
                    certificates: to_value(&rep),
                })
            }
        },
        Cmd::Class { verb } => match verb {
            ClassVerb::Brute(p) => {
                let ext = finite_pair(p)?;
                let g = brute_force_i(&ext)?;
                let modules: Vec<Vec<String>> = g
                    .modules
                    .iter()
                    .map(|s| monalg::classgroup::finite::members(s).iter().map(|&i| ext.ring.label(i).to_string()).collect())
                    .collect();
                Ok(ok("class brute", format!("|I| = {}", g.order()), json!({"order": g.order(), "modules": modules})))
            }
            ClassVerb::Sixterm(p) => {
                let r = verify_six_term(&finite_pair(p)?)?;
                Ok(Outcome {
                    case: "class sixterm".into(),
                    status: Status::of(r.exact),
                    text: format!("|U(A)| = {}, |U(B)| = {}, |I| = {}, exact: {}", r.units_a, r.units_b, r.i_order, r.exact),
                    certificates: to_value(&r),
                })
            }
            ClassVerb::Lemma46 => {
                let mut reports = Vec::new();
                for sq in standard_squares()? {
                    reports.push(verify_lemma46(&sq)?);
                }
                let exact = reports.iter().all(|r| r.exact);
                let text = reports
                    .iter()
                    .map(|r| format!("{}: orders {:?}, exact {}", r.name, r.group_orders, r.exact))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Outcome { case: "class lemma46".into(), status: Status::of(exact), text, certificates: to_value(&reports) })
            }
            ClassVerb::Kermain { ring, ext, ideal } => {
                let r = RingSpec::parse(ring)?;
                let (m, n) = ext.load()?;
                let rep = ker_main_trivial(&r, &m, &n, &ideal_in(&n, ideal)?, b.degree)?;
                let text = match &rep.witness {
                    Some(w) => format!("nontrivial, witness {w}"),
                    None => "trivial".to_string(),
                };
                Ok(ok("class kermain", text, to_value(&rep)))
            }
            ClassVerb::MainSmoke { sub_ring, ring, ext, ideal } => {
                let (m, n) = ext.load()?;
                let rep = main_theorem_smoke(&RingSpec::parse(sub_ring)?, &RingSpec::parse(ring)?, &m, &n, &ideal_in(&n, ideal)?, b.degree)?;
                let text = rep
                    .checks
                    .iter()
                    .map(|c| format!("{}: {:?} ({})", c.name, c.status, c.detail))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Outcome { case: "class main-smoke".into(), status: rep.status, text, certificates: to_value(&rep) })
            }
            ClassVerb::Diagram { sub_ring, ring, monoid, ideal, samples } => {
                let m = parse_monoid(&read(monoid)?)?;
                let rep = diagram_thm_check(&RingSpec::parse(sub_ring)?, &RingSpec::parse(ring)?, &m, &ideal_in(&m, ideal)?, b.degree, *samples, cli.seed)?;
                Ok(Outcome {
                    case: "class diagram".into(),
                    status: rep.status,
                    text: format!(
                        "{} samples: homomorphism {}, injective {}, in closure {}",
                        rep.samples, rep.homomorphism, rep.injective, rep.lands_in_closure
                    ),
                    certificates: to_value(&rep),
                })
            }
        },
        Cmd::Det { verb: DetVerb::Binom { a } } => {
            let d = binom_det(a)?;
            Ok(ok("det binom", d.to_string(), json!({"a": a, "det": d.to_string()})))
        }
        Cmd::Verify { verb } => {
            let reports: Vec<SuiteReport> = match verb {
                VerifyVerb::All => run_all(cli.seed),
                VerifyVerb::Suite { id } => vec![run_suite(*id, cli.seed)?],
            };
            let status = reports.iter().fold(Status::Pass, |s, r| s.combine(r.status));
            let text = reports
                .iter()
                .map(|r| {
                    let mut line = format!(
                        "[{:>2}] {:<13} {} ({} cases, {:.2}s)",
                        r.id,
                        format!("{:?}", r.status).to_lowercase(),
                        r.case,
                        r.cases,
                        r.elapsed.as_secs_f64()
                    );
                    for f in &r.failures {
                        line.push_str(&format!("\n     {f}"));
                    }
                    line
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome { case: "verify".into(), status, text, certificates: to_value(&reports) })
        }
    }
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    let (code, report, text) = match out {
        Ok(o) => {
            let report = json!({"case": o.case, "status": o.status, "certificates": o.certificates, "bounds": cli.bounds.json(), "seed": cli.seed});
            (exit_code(o.status), report, o.text)
        }
        Err(e) => {
            let (code, status) = match &e {
                Error::Input(_) | Error::Capability(_) => (2, "error"),
                Error::Bound(_) => (3, "inconclusive"),
                Error::Invariant(_) => (1, "fail"),
            };
            let report = json!({"case": "error", "status": status, "error": e.to_string(), "bounds": cli.bounds.json()});
            eprintln!("{e}");
            (code, report, String::new())
        }
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("json")),
        Format::Text if !text.is_empty() => println!("{text}"),
        Format::Text => {}
    }
    ExitCode::from(code)
}
