//! `sepinv`: construct and verify separating invariants from the command line.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage or input
//! error, 3 a size cap was hit.

use std::fs;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use sepinv::graphs::{self, Fingerprinter};
use sepinv::multisym::{self, TauVector};
use sepinv::sepcore::{self, BuildOptions, Method};
use sepinv::{Error, FieldSpec, Group, GroupJson, OrbitDecomp, Poly, SigmaSpec};

#[derive(Parser)]
#[command(name = "sepinv", version, about = "Separating invariants over finite fields")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Maximum number of points of V enumerated for orbits.
    #[arg(long, default_value_t = sepinv::DEFAULT_POINT_CAP, global = true)]
    cap_points: u64,
    /// Maximum group order built by closure.
    #[arg(long, default_value_t = sepinv::DEFAULT_ORDER_CAP, global = true)]
    cap_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field order; alternatively give --p and --e.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    e: Option<u32>,
    /// Comma-separated modulus coefficients, constant term first.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args, Clone)]
struct GroupArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Named group (trivial, sym:N, edge-sym:N, monomial-full:N) or a group JSON file.
    #[arg(long)]
    group: String,
    /// Dimension, needed for `trivial`.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a finite field and optionally apply one operation.
    Field {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = ["add", "sub", "mul", "div", "inv", "neg", "pow"])]
        op: Option<String>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
    },
    /// Enumerate the orbits of a group on F_q^n.
    Orbits {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Build a separating set of size gamma from orbit indicators.
    Construct {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Norm)]
        method: MethodArg,
        #[arg(long, default_value_t = sepcore::DEFAULT_EXPANSION_CAP)]
        expansion_cap: usize,
        /// Fail instead of keeping norms unexpanded above the cap.
        #[arg(long)]
        no_lazy: bool,
        /// Compare the JSON output with this file.
        #[arg(long)]
        golden: Option<String>,
    },
    /// Check that a set of polynomials is invariant and separating.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        set_file: String,
    },
    /// Enumerate inclusion-minimal separating subsets of a set of polynomials.
    MinimalSubsets {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        set_file: String,
        #[arg(long, default_value_t = 20)]
        max_size: usize,
    },
    /// Least degree whose homogeneous invariants separate all orbits.
    Betasep {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Simple graphs on 4 or 5 vertices.
    Graphs {
        #[arg(long)]
        n: usize,
        #[command(subcommand)]
        action: GraphsAction,
    },
    /// Isomorphism fingerprint of a simple graph given as lines `i j`.
    Fingerprint {
        #[arg(long)]
        n: usize,
        /// Edge list file, or `-` for standard input.
        #[arg(long, default_value = "-")]
        edges: String,
    },
    /// Multisymmetric invariants over GF(2).
    Multisym {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[command(subcommand)]
        action: MultisymAction,
    },
    /// Symmetric functions over GF(3) (and GF(4) with --f4).
    F3Remark {
        #[arg(long)]
        n: Option<usize>,
        /// Check {s1, s2, s3} over GF(4) with n = 3 instead.
        #[arg(long)]
        f4: bool,
    },
}

#[derive(Subcommand)]
enum GraphsAction {
    /// Recompute the evaluation matrix, minimal subsets and beta_sep.
    Report {
        /// `builtin` for the embedded reference data, or a JSON file.
        #[arg(long)]
        golden: Option<String>,
    },
    /// Print the built-in invariants.
    Invariants,
}

#[derive(Subcommand)]
enum MultisymAction {
    /// Check that S_(n,m) separates and is inclusion-minimal.
    Verify,
    /// List S_(n,m).
    List,
    /// Evaluate conditions A, A', B and C for two tau vectors.
    Conditions {
        #[arg(long, value_delimiter = ',')]
        tau: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        theta: Vec<usize>,
    },
    /// Evaluate sigma_t(alpha) at e_tau.
    Sigma {
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        tau: Vec<usize>,
    },
    /// Exhaustive equivalence of the four conditions.
    KeyLemma,
    /// Degree bound and sigma(n), with a brute-force beta_sep for small cases.
    Corollary,
    /// Power-of-two reduction for separating pairs e_a, e_b.
    Claim1,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Norm,
    Reynolds,
    Monomial,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Norm => Method::Norm,
            MethodArg::Reynolds => Method::Reynolds,
            MethodArg::Monomial => Method::Monomial,
        }
    }
}

/// Invariant-set file: polynomial texts with the field and variable count.
#[derive(Serialize, Deserialize)]
struct SetFile {
    spec: FieldSpec,
    n: usize,
    invariants: Vec<String>,
}

enum Failure {
    Check(String),
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_cap() {
            return Failure::Cap(e.to_string());
        }
        match e {
            Error::GoldenMismatch(_) | Error::WitnessValidationFailed(_) | Error::NotInvariant { .. } => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, String, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(t) = std::env::var("SEPINV_THREADS") {
        match t.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: SEPINV_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli) {
        Ok((value, text, ok)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
                Format::Text => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("cap exceeded: {m}");
            ExitCode::from(3)
        }
    }
}

fn field_spec(args: &FieldArgs) -> Result<FieldSpec, Failure> {
    let modulus = match &args.modulus {
        Some(s) => Some(
            s.split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| usage(format!("bad modulus coefficient {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let spec = match (args.q, args.p, args.e) {
        (Some(q), None, None) if modulus.is_none() => FieldSpec::of_order(q)?,
        (Some(q), None, None) => {
            let (p, e) = prime_power(q).ok_or_else(|| usage(format!("{q} is not a prime power")))?;
            FieldSpec::new(p, e, modulus.as_deref())?
        }
        (None, Some(p), e) => FieldSpec::new(p, e.unwrap_or(1), modulus.as_deref())?,
        _ => return Err(usage("give either --q or --p [--e]")),
    };
    Ok(spec)
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

fn load_group(args: &GroupArgs, cli: &Cli) -> Result<Group, Failure> {
    if Path::new(&args.group).is_file() {
        let text = fs::read_to_string(&args.group).map_err(|e| usage(format!("{}: {e}", args.group)))?;
        let gj: GroupJson = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", args.group)))?;
        return Ok(gj.into_group(cli.cap_order)?);
    }
    let spec = field_spec(&args.field)?;
    let group = Group::named(&args.group, &spec, args.n, cli.cap_order)?;
    if let Some(n) = args.n {
        if n != group.n() {
            return Err(usage(format!("--n {n} does not match the group dimension {}", group.n())));
        }
    }
    Ok(group)
}

fn load_set(path: &str, group: &Group) -> Result<Vec<Poly>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    let set: SetFile = serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    if set.spec != *group.spec() || set.n != group.n() {
        return Err(usage(format!("{path}: field or dimension differs from the group")));
    }
    Ok(set.invariants.iter().map(|t| Poly::parse(t, set.n, &set.spec)).collect::<Result<_, _>>()?)
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(e.to_string()))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn compare_golden(value: &Value, path: &str) -> Result<bool, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    let golden: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    Ok(golden == *value)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Field { field, op, a, b } => cmd_field(field, op.as_deref(), *a, *b),
        Command::Orbits { group } => cmd_orbits(cli, group),
        Command::Construct { group, method, expansion_cap, no_lazy, golden } => {
            cmd_construct(cli, group, (*method).into(), *expansion_cap, !no_lazy, golden.as_deref())
        }
        Command::Verify { group, set_file } => cmd_verify(cli, group, set_file),
        Command::MinimalSubsets { group, set_file, max_size } => cmd_minimal(cli, group, set_file, *max_size),
        Command::Betasep { group, max_degree } => cmd_betasep(cli, group, *max_degree),
        Command::Graphs { n, action } => cmd_graphs(*n, action),
        Command::Fingerprint { n, edges } => cmd_fingerprint(*n, edges),
        Command::Multisym { n, m, action } => cmd_multisym(*n, *m, action),
        Command::F3Remark { n, f4 } => cmd_f3(*n, *f4),
    }
}

fn cmd_field(args: &FieldArgs, op: Option<&str>, a: Option<u64>, b: Option<u64>) -> Outcome {
    let spec = field_spec(args)?;
    let mut value = json!({
        "p": spec.p(),
        "e": spec.e(),
        "q": spec.q(),
        "modulus": spec.modulus(),
    });
    let mut text = format!("{spec:?}\n");
    if let Some(op) = op {
        let a = spec.element(a.ok_or_else(|| usage("--a is required with --op"))?)?;
        let need_b = || b.ok_or_else(|| usage("--b is required for this operation"));
        let r = match op {
            "add" => spec.add(a, spec.element(need_b()?)?),
            "sub" => spec.sub(a, spec.element(need_b()?)?),
            "mul" => spec.mul(a, spec.element(need_b()?)?),
            "div" => spec.div(a, spec.element(need_b()?)?)?,
            "inv" => spec.inv(a)?,
            "neg" => spec.neg(a),
            _ => spec.pow(a, need_b()?),
        };
        value["result"] = json!(r.index());
        value["result_poly"] = json!(spec.display_elem(r));
        text.push_str(&format!("{op} -> {} ({})\n", r.index(), spec.display_elem(r)));
    } else if spec.q() <= 256 {
        let elems: Vec<String> = spec.elements().map(|x| spec.display_elem(x)).collect();
        text.push_str(&format!("elements: {}\n", elems.join(", ")));
        value["elements"] = json!(elems);
    }
    Ok((value, text, true))
}

fn cmd_orbits(cli: &Cli, args: &GroupArgs) -> Outcome {
    let group = load_group(args, cli)?;
    let dec = OrbitDecomp::new(&group, cli.cap_points)?;
    let reps: Vec<Vec<u32>> = dec.reps().iter().map(|r| r.iter().map(|x| x.index()).collect()).collect();
    let value = json!({
        "order": group.order(),
        "n": group.n(),
        "k": dec.k(),
        "orbit_sizes": dec.orbit_sizes(),
        "orbit_reps": reps,
    });
    let mut text = format!("|G| = {}, n = {}, k = {}\n", group.order(), group.n(), dec.k());
    for (r, s) in reps.iter().zip(dec.orbit_sizes()) {
        text.push_str(&format!("{r:?} size {s}\n"));
    }
    Ok((value, text, true))
}

fn certificate_text(cert: &sepcore::SepCertificate) -> String {
    let mut t = format!(
        "method {:?}, gamma {}, size {}, separating {}\n",
        cert.method, cert.gamma, cert.size, cert.separating
    );
    if let Some(d) = cert.degree_bound_claimed {
        t.push_str(&format!("degree bound {d}\n"));
    }
    if let Some(d) = cert.degree_bound_observed {
        t.push_str(&format!("observed degree {d}\n"));
    }
    for (i, inv) in cert.invariants.iter().enumerate() {
        t.push_str(&format!("t{} = {inv}\n", i + 1));
    }
    t
}

fn cmd_construct(cli: &Cli, args: &GroupArgs, method: Method, cap: usize, lazy: bool, golden: Option<&str>) -> Outcome {
    let group = load_group(args, cli)?;
    let dec = OrbitDecomp::new(&group, cli.cap_points)?;
    let cert = sepcore::build_separating(&group, &dec, method, BuildOptions { expansion_cap: cap, allow_lazy: lazy })?;
    let value = to_value(&cert.to_json());
    let mut ok = cert.separating;
    if let Some(path) = golden {
        let same = compare_golden(&value, path)?;
        if !same {
            eprintln!("output differs from {path}");
        }
        ok &= same;
    }
    Ok((value, certificate_text(&cert), ok))
}

fn cmd_verify(cli: &Cli, args: &GroupArgs, set_file: &str) -> Outcome {
    let group = load_group(args, cli)?;
    let invs = load_set(set_file, &group)?;
    let dec = OrbitDecomp::new(&group, cli.cap_points)?;
    let cert = sepcore::check_separating(&invs, &group, &dec)?;
    let mut value = to_value(&cert.to_json());
    let unseparated = cert.unseparated_pairs();
    value["unseparated_pairs"] = to_value(&unseparated);
    let mut text = certificate_text(&cert);
    for (a, b) in &unseparated {
        text.push_str(&format!("orbits {a} and {b} not separated\n"));
    }
    Ok((value, text, cert.separating))
}

fn cmd_minimal(cli: &Cli, args: &GroupArgs, set_file: &str, max_size: usize) -> Outcome {
    let group = load_group(args, cli)?;
    let invs = load_set(set_file, &group)?;
    let dec = OrbitDecomp::new(&group, cli.cap_points)?;
    let subsets = sepcore::minimal_subsets(&invs, &group, &dec, max_size)?;
    let value = json!({ "k": dec.k(), "minimal_subsets": subsets });
    let mut text = String::new();
    for s in &subsets {
        let labels: Vec<String> = s.iter().map(|i| format!("#{}", i + 1)).collect();
        text.push_str(&format!("{{{}}}\n", labels.join(", ")));
    }
    Ok((value, text, true))
}

fn cmd_betasep(cli: &Cli, args: &GroupArgs, max_degree: u32) -> Outcome {
    let group = load_group(args, cli)?;
    let dec = OrbitDecomp::new(&group, cli.cap_points)?;
    let b = sepcore::beta_sep(&group, &dec, max_degree, None)?;
    let text = match b.value {
        Some(v) => format!("beta_sep = {v}\n"),
        None => format!("beta_sep > {max_degree}\n"),
    };
    let mut value = to_value(&b);
    value["result"] = match b.value {
        Some(v) => json!(v),
        None => json!(format!("> {max_degree}")),
    };
    Ok((value, text, true))
}

fn cmd_graphs(n: usize, action: &GraphsAction) -> Outcome {
    match action {
        GraphsAction::Invariants => {
            let named = graphs::builtin_invariants(n)?;
            let list: Vec<Value> = named.iter().map(|ni| json!({"label": ni.label, "poly": ni.poly.to_string()})).collect();
            let text: String = named.iter().map(|ni| format!("{} = {}\n", ni.label, ni.poly)).collect();
            Ok((json!({ "n": n, "invariants": list }), text, true))
        }
        GraphsAction::Report { golden } => {
            let report = graphs::theorem_report(n)?;
            let value = to_value(&report);
            let ok = match golden.as_deref() {
                None => report.all_pass(),
                Some("builtin") => {
                    report.verify()?;
                    true
                }
                Some(path) => compare_golden(&value, path)? && report.all_pass(),
            };
            let mut text = format!("n = {}, k = {}, gamma = {}\n", report.n, report.k, report.gamma);
            for (label, row) in report.row_labels.iter().zip(&report.matrix) {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                text.push_str(&format!("{label:>4}: {}\n", cells.join(" ")));
            }
            for s in &report.minimal_subsets {
                text.push_str(&format!("minimal: {{{}}}\n", s.join(", ")));
            }
            match report.beta_sep.value {
                Some(v) => text.push_str(&format!("beta_sep = {v}\n")),
                None => text.push_str(&format!("beta_sep > {}\n", report.beta_sep.d_max)),
            }
            for (name, pass) in &report.checks {
                text.push_str(&format!("{name}: {}\n", if *pass { "pass" } else { "FAIL" }));
            }
            Ok((value, text, ok))
        }
    }
}

fn cmd_fingerprint(n: usize, edges: &str) -> Outcome {
    let text = read_input(edges)?;
    let list = graphs::parse_edge_list(&text, n)?;
    let fp = Fingerprinter::new(n)?.fingerprint(&list)?;
    let bits: String = fp.iter().map(u8::to_string).collect();
    Ok((json!({ "n": n, "fingerprint": fp }), format!("{bits}\n"), true))
}

fn tau_arg(v: &[usize]) -> TauVector {
    TauVector(v.to_vec())
}

fn cmd_multisym(n: usize, m: usize, action: &MultisymAction) -> Outcome {
    match action {
        MultisymAction::Verify => {
            let r = multisym::verify_s_nm(n, m)?;
            let ok = r.separating && r.minimal;
            let mut text = format!(
                "S_({n},{m}): {} invariants over {} orbits, separating {}, minimal {}\n",
                r.size, r.tau_count, r.separating, r.minimal
            );
            for w in &r.witnesses {
                text.push_str(&format!("without {}: {} vs {} ({})\n", w.removed, w.tau, w.theta, w.source));
            }
            Ok((to_value(&r), text, ok))
        }
        MultisymAction::List => {
            let set = multisym::build_s_nm(n, m);
            let text: String = set.iter().map(|s| format!("{s}\n")).collect();
            Ok((json!({ "n": n, "m": m, "invariants": set }), text, true))
        }
        MultisymAction::Conditions { tau, theta } => {
            let r = multisym::conditions(&tau_arg(tau), &tau_arg(theta), n, m)?;
            let text = format!(
                "deltas {:?}\nA {}\nA' {}\nB {}\nC {}\n",
                r.deltas, r.holds_a, r.holds_a_prime, r.holds_b, r.holds_c
            );
            let ok = r.consistent();
            Ok((to_value(&r), text, ok))
        }
        MultisymAction::Sigma { t, alpha, tau } => {
            let s = SigmaSpec::new(*t, alpha.clone());
            let pt = multisym::e_tau(&tau_arg(tau), m, n)?;
            let v = multisym::sigma_eval(&s, &pt)?;
            Ok((json!({ "sigma": s, "point": pt.to_string(), "value": v.index() }), format!("{s} at {pt} = {v}\n"), true))
        }
        MultisymAction::KeyLemma => {
            let r = multisym::key_lemma_exhaustive(n, m)?;
            let text = format!("{} tau vectors, classes {:?}, equivalent {}\n", r.tau_count, r.classes, r.equivalent);
            let ok = r.equivalent;
            Ok((to_value(&r), text, ok))
        }
        MultisymAction::Corollary => {
            let r = multisym::corollary_report(n, m)?;
            let brute = r.beta_brute_force.as_ref().and_then(|b| b.value);
            let ok = r.max_degree == r.beta_formula
                && r.sigma_n == r.sigma_formula
                && r.beta_brute_force.as_ref().is_none_or(|b| b.value == Some(r.beta_formula as u32));
            let text = format!(
                "max degree {} (formula {}), brute-force beta_sep {:?}, sigma(n) {} (formula {})\n",
                r.max_degree, r.beta_formula, brute, r.sigma_n, r.sigma_formula
            );
            Ok((to_value(&r), text, ok))
        }
        MultisymAction::Claim1 => {
            let ok = multisym::claim1_check(n);
            Ok((json!({ "n": n, "holds": ok }), format!("claim holds up to n = {n}: {ok}\n"), ok))
        }
    }
}

fn cmd_f3(n: Option<usize>, f4: bool) -> Outcome {
    let r = if f4 {
        multisym::f4_remark_check()?
    } else {
        multisym::f3_remark_check(n.ok_or_else(|| usage("--n is required unless --f4 is given"))?)?
    };
    let text = format!(
        "members s_{:?}; {} orbits, gamma {}; separating {}, minimal {}, size = gamma {}\n",
        r.members, r.orbits, r.gamma, r.separating, r.minimal, r.size_equals_gamma
    );
    let ok = r.separating && r.minimal;
    Ok((to_value(&r), text, ok))
}
