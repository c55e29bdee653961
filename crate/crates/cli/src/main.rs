//! `ahecke`: verification suites, the star-equation solver, rank-one
//! classification and Gelfand-Graev determination from the command line.
//!
//! Exit status: 0 when everything checked holds, 1 when a verification
//! fails, 2 for usage errors (bad flags, invalid parameters, unparsable
//! input).

use std::process::ExitCode;

use affine_hecke::{
    classify, determine, gen, param_constants, parse_coefficient, parse_poly, solver_report, verify_relations,
    CaseTag, Classification, Error, Exec, GGCase, GGInput, GGReport, HeckeElement, HeckeParams, LaurentPoly,
    RelationReport, SolverReport, T0Exponent,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "ahecke", version, about = "Exact computations in affine Hecke algebras with unequal parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Seed for randomized property panels.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExponentArg {
    Standard,
    RemarkB,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
#[allow(clippy::upper_case_acronyms)]
enum GGCaseArg {
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "II", alias = "ii")]
    II,
    #[value(name = "III", alias = "iii")]
    III,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: u32,
    #[arg(long, default_value_t = 0)]
    r: u32,
    #[arg(long, default_value_t = 0)]
    s: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the quadratic, braid and Bernstein relations as exact identities.
    VerifyRelations {
        #[arg(long, value_enum, default_value_t = CaseArg::C)]
        case: CaseArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = ExponentArg::Standard)]
        t0_exponent: ExponentArg,
        /// Random associativity checks `(ab)c = a(bc)`; 0 disables the panel.
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Enumerate Laurent polynomial solutions of the rank-one equation.
    SolveStar {
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[arg(long, allow_hyphen_values = true)]
        min: i32,
        #[arg(long, allow_hyphen_values = true)]
        max: i32,
    },
    /// Classify the module structure with `T_n . 1 = f`.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        /// Polynomial in `X`, e.g. `-1` or `v^3*X^-1 + q^2 - 1`.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Scalar of `T_1 .. T_{n-1}` on `1`; defaults to `q^t` when n > 1.
        #[arg(long, allow_hyphen_values = true)]
        lambda_a: Option<String>,
    },
    /// Determine the Gelfand-Graev module in one of the three cases.
    Gg {
        #[arg(long, value_enum)]
        case: GGCaseArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, default_value = "0")]
        beta: String,
    },
}

/// Why a command did not succeed.
enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotASolution(_) => {
                eprintln!("error: {e}");
                Failure::Verification
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct PanelReport {
    seed: u64,
    samples: usize,
    passed: bool,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct VerifyOutput {
    relations: RelationReport,
    random_panel: PanelReport,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match run(&cli, exec) {
        Ok((text, json, ok)) => {
            match cli.format {
                Format::Text => print!("{text}"),
                Format::Json => println!("{json}"),
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

type Rendered = (String, String, bool);

fn run(cli: &Cli, exec: Exec) -> Result<Rendered, Failure> {
    match &cli.command {
        Command::VerifyRelations { case, params, t0_exponent, samples } => {
            let tag = match case {
                CaseArg::A => CaseTag::A,
                CaseArg::C => CaseTag::C,
            };
            let p = HeckeParams::new(tag, params.n, params.t, params.r, params.s)?;
            let exponent = match t0_exponent {
                ExponentArg::Standard => T0Exponent::Standard,
                ExponentArg::RemarkB => T0Exponent::RemarkB,
            };
            let relations = verify_relations(p, exponent, exec)?;
            let random_panel = associativity_panel(p, cli.seed, *samples)?;
            let ok = relations.all_passed && random_panel.passed;
            let out = VerifyOutput { relations, random_panel };
            Ok((render_verify(&out), to_json(&out), ok))
        }
        Command::SolveStar { t, r, s, min, max } => {
            if min > max {
                return Err(Failure::Usage(format!("empty window [{min}, {max}]")));
            }
            let k = param_constants(*t, *r, *s)?;
            let report = solver_report(&k, *min, *max, exec)?;
            let ok = report.matches_catalogue && report.solutions.iter().all(|e| e.family.is_some());
            Ok((render_solver(&report), to_json(&report), ok))
        }
        Command::Classify { params, f, lambda_a } => {
            let p = HeckeParams::type_c(params.n, params.t, params.r, params.s)?;
            let f = parse_poly(f, 1)?;
            let la = match lambda_a {
                Some(text) => Some(parse_coefficient(text)?),
                None if p.n > 1 => Some(p.constants().qt),
                None => None,
            };
            let c = classify(p, &f, la)?;
            let ok = c.isomorphism_verified;
            Ok((render_classification(&c), to_json(&c), ok))
        }
        Command::Gg { case, n, t, alpha, beta } => {
            let case = match case {
                GGCaseArg::I => GGCase::I,
                GGCaseArg::II => GGCase::II,
                GGCaseArg::III => GGCase::III,
            };
            let input = GGInput::new(case, *n, *t, parse_rational(alpha)?, parse_rational(beta)?)?;
            let report = determine(&input)?;
            let ok = report.module_cross_check;
            Ok((render_gg(&report), to_json(&report), ok))
        }
    }
}

fn parse_rational(text: &str) -> Result<BigRational, Failure> {
    text.trim().parse::<BigRational>().map_err(|e| Failure::Usage(format!("bad rational {text:?}: {e}")))
}

/// A random word in the generators times a random monomial with a small
/// integer coefficient.
fn random_element(p: HeckeParams, rng: &mut ChaCha8Rng) -> Result<HeckeElement, Error> {
    let mut gens = p.finite_generators();
    if p.case_tag == CaseTag::C {
        gens.insert(0, 0);
    }
    let mut h = HeckeElement::one(p);
    for _ in 0..rng.random_range(1..=2) {
        if let Some(&i) = gens.get(rng.random_range(0..gens.len().max(1))) {
            h = h.mul(&gen(p, i)?)?;
        }
    }
    let e: Vec<i32> = (0..p.n).map(|_| rng.random_range(-1..=1)).collect();
    let c = affine_hecke::Coefficient::from_int(rng.random_range(1..=3));
    h.mul(&HeckeElement::from_poly(p, LaurentPoly::monomial(e, c)))
}

fn associativity_panel(p: HeckeParams, seed: u64, samples: usize) -> Result<PanelReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for idx in 0..samples {
        let a = random_element(p, &mut rng)?;
        let b = random_element(p, &mut rng)?;
        let c = random_element(p, &mut rng)?;
        if a.mul(&b)?.mul(&c)? != a.mul(&b.mul(&c)?)? {
            failures.push(format!("sample {idx}: (ab)c != a(bc) for a = {a}, b = {b}, c = {c}"));
        }
    }
    Ok(PanelReport { seed, samples, passed: failures.is_empty(), failures })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn describe_params(p: &HeckeParams) -> String {
    match p.case_tag {
        CaseTag::A => format!("case A, n = {}, t = {}", p.n, p.t),
        CaseTag::C => format!("case C, n = {}, t = {}, r = {}, s = {}", p.n, p.t, p.r, p.s),
    }
}

fn render_verify(out: &VerifyOutput) -> String {
    let rel = &out.relations;
    let mut s = format!("params: {}\n", describe_params(&rel.params));
    if let Some(e) = rel.t0_v_exponent {
        s += &format!("T0 exponent: {:?} (v^{e})\n", rel.t0_exponent);
    }
    for check in &rel.checks {
        s += &format!("{} {}\n", mark(check.passed), check.name);
        if let Some(d) = &check.difference {
            s += &format!("    difference: {d}\n");
        }
    }
    for note in &rel.notes {
        s += &format!("note: {note}\n");
    }
    let panel = &out.random_panel;
    s += &format!("{} random associativity panel (seed {}, {} samples)\n", mark(panel.passed), panel.seed, panel.samples);
    for f in &panel.failures {
        s += &format!("    {f}\n");
    }
    let passed = rel.checks.iter().filter(|c| c.passed).count();
    s += &format!("result: {passed}/{} relations hold\n", rel.checks.len());
    s
}

fn render_solver(r: &SolverReport) -> String {
    let mut s = format!("star equation for t = {}, r = {}, s = {}, window [{}, {}]\n", r.t, r.r, r.s, r.window.0, r.window.1);
    for e in &r.solutions {
        let fam = e.family.as_deref().unwrap_or("unidentified");
        s += &format!("  [{fam}] {}  (degrees {}..{})\n", e.poly, e.min_degree, e.max_degree);
    }
    for note in &r.notes {
        s += &format!("note: {note}\n");
    }
    s += &format!("{} solutions; catalogue match: {}\n", r.solutions.len(), r.matches_catalogue);
    s
}

fn render_table<'a>(it: impl Iterator<Item = (&'a String, &'a affine_hecke::Coefficient)>) -> String {
    it.map(|(g, v)| format!("{g} -> {v}")).collect::<Vec<_>>().join(", ")
}

fn render_classification(c: &Classification) -> String {
    let mut s = format!("f = {}\nfamily: {}\nstructure: {}\nshift: {}\n", c.input, c.family, c.structure, c.shift);
    s += &format!("T_n on g_1: {}\n", c.tn_on_g1);
    if let Some(mu) = &c.mu {
        s += &format!("T_0 eigenvalue: {mu}\n");
    }
    s += &format!("eigenvalues on g_1: {}\n", render_table(c.eigenvalues.iter()));
    s += &format!("isomorphism verified: {}\n", c.isomorphism_verified);
    for note in &c.notes {
        s += &format!("note: {note}\n");
    }
    s
}

fn render_gg(r: &GGReport) -> String {
    let mut s = format!("case {}, n = {}, t = {}, alpha = {}, beta = {} (r = {}, s = {})\n", r.case, r.n, r.t, r.alpha, r.beta, r.r, r.s);
    s += &format!("pi: {}\n", render_table(r.pi.iter()));
    if let Some(pm) = &r.pi_minus {
        s += &format!("pi^-: {}\n", render_table(pm.iter()));
    }
    s += &format!("structure: {}\n", r.structure);
    s += &format!("module cross-check: {}\n", r.module_cross_check);
    for nz in &r.normalizations {
        s += &format!("normalization e = {}, f = {}: {}\n", nz.e, nz.f, nz.structure);
    }
    for note in &r.notes {
        s += &format!("note: {note}\n");
    }
    s
}
