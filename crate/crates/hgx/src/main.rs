use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::rc::Rc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hgx::files::{self, InputError, Source};
use hgx::report::{exit_code, to_json};
use hgx_core::cocycle::{check_cocycle, compare_with_original, deform};
use hgx_core::comodule::{check_comodule_algebra, check_strong_connection, galois_check, ComoduleAlgebra, Galois, Sampling, StrongConnection};
use hgx_core::hopf::check_bialgebra_axioms;
use hgx_core::ncalg::{check_confluence, check_map_well_defined, Alg, Algebra, Tensor, Word};
use hgx_core::pushfwd::{check_descent, check_pf_algebra, galois_object_pf, pf_galois_check, PushForward};
use hgx_core::report::{Report, Witness};
use hgx_core::suites::run::{bialgebroid_checks, run, Break, Suite, SuiteConfig};
use hgx_core::twist::{check_twisting_conditions, TwistingMap};

/// Exact verification of twisting maps, push-forward Hopf–Galois extensions
/// and their bialgebroids.
#[derive(Parser)]
#[command(name = "hgx", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Degree bound for bounded checks.
    #[arg(long, global = true)]
    degree: Option<u32>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on sampled cases per check.
    #[arg(long, global = true, default_value_t = 200)]
    max_cases: usize,
    /// Write the report as JSON.
    #[arg(long, visible_alias = "report", global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Translation map table to use instead of solving for τ.
    #[arg(long, global = true)]
    load_tau: Option<PathBuf>,
    /// Write the translation map on H-words up to the degree bound.
    #[arg(long, global = true)]
    save_tau: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check (Oeq), (C1), (C2), normality and well-definedness of ψ.
    CheckTwisting {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check the push-forward C ⊗_B A of a comodule algebra.
    Pushforward {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        twist: PathBuf,
    },
    /// Build and check the Ehresmann–Schauenburg bialgebroid, and that of a push-forward when given.
    Bialgebroid {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, requires = "twist")]
        map: Option<PathBuf>,
        #[arg(long, requires = "map")]
        twist: Option<PathBuf>,
    },
    /// Run a built-in suite.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// q = ζ_n^k.
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        s: i64,
        #[arg(long, default_value_t = 1)]
        alpha_m: u32,
        /// Run with a deliberately broken input.
        #[arg(long = "break", value_enum)]
        broken: Option<BreakArg>,
    },
    /// Deform a Galois object by a 2-cocycle on H.
    Deform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// Also compare every deformed table with the undeformed one.
        #[arg(long)]
        compare: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Taft,
    Theta,
    Total,
    Cocycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum BreakArg {
    AlphaOrder,
}

const EXIT_INPUT: u8 = 64;
const DEFAULT_DEGREE: u32 = 4;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, InputError> {
    threads()?;
    let c = &cli.common;
    let start = Instant::now();
    let mut report = match &cli.cmd {
        Cmd::CheckTwisting { input } => check_twisting(c, input)?,
        Cmd::Pushforward { input, map, twist } => pushforward(c, input, map, twist)?,
        Cmd::Bialgebroid { input, map, twist } => bialgebroid(c, input, map.as_deref().zip(twist.as_deref()))?,
        Cmd::Suite { name, n, k, s, alpha_m, broken } => {
            let suite = match name {
                SuiteName::Taft => Suite::Taft,
                SuiteName::Theta => Suite::Theta,
                SuiteName::Total => Suite::Total,
                SuiteName::Cocycle => Suite::Cocycle,
            };
            let cfg = SuiteConfig {
                n: *n,
                k: *k,
                s: *s,
                m: *alpha_m,
                d: c.degree.unwrap_or(DEFAULT_DEGREE),
                seed: c.seed,
                max_cases: c.max_cases,
                broken: broken.map(|BreakArg::AlphaOrder| Break::AlphaOrder),
                ..SuiteConfig::new(suite)
            };
            run(&cfg).map_err(|e| usage(e.to_string()))?
        }
        Cmd::Deform { input, cocycle, compare } => deform_cmd(c, input, cocycle, *compare)?,
    };
    if c.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    print!("{report}");
    if let Some(out) = &c.out {
        std::fs::write(out, to_json(&report)).map_err(|e| io_error(out, e))?;
    }
    Ok(exit_code(&report) as u8)
}

/// Runs are single-threaded; the variable is validated so that scripts
/// setting it behave the same everywhere.
fn threads() -> Result<usize, InputError> {
    match std::env::var("HGX_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => v.trim().parse::<usize>().ok().filter(|&t| t >= 1).ok_or_else(|| InputError {
            file: "HGX_THREADS".into(),
            line: 0,
            column: None,
            message: format!("expected a positive integer, found `{v}`"),
        }),
    }
}

fn usage(message: String) -> InputError {
    InputError { file: "<command line>".into(), line: 0, column: None, message }
}

fn io_error(path: &Path, e: std::io::Error) -> InputError {
    InputError { file: path.display().to_string(), line: 0, column: None, message: e.to_string() }
}

fn sampling(c: &Common) -> Sampling {
    Sampling { seed: c.seed, max_cases: c.max_cases }
}

fn new_report(name: &str, c: &Common, files: &[(&str, &Path)]) -> (Report, u32) {
    let d = c.degree.unwrap_or(DEFAULT_DEGREE);
    let mut r = Report::new(name);
    for (k, p) in files {
        r.config(k, p.display());
    }
    r.config("degree", d);
    r.config("seed", c.seed);
    r.config("max-cases", c.max_cases);
    (r, d)
}

fn confluence(report: &mut Report, algs: &[&Alg], d: u32) {
    for a in algs {
        let alg = Algebra::new(a.pres().clone()).expect("presentation was validated on load");
        report.absorb(&format!("confluence {}", a.name()), check_confluence(&alg, 2 * d));
    }
}

fn check_twisting(c: &Common, input: &Path) -> Result<Report, InputError> {
    let src = Source::read(input)?;
    let p = src.decode(files::twisting_problem)?;
    let (mut r, d) = new_report("check-twisting", c, &[("input", input)]);
    confluence(&mut r, &[&p.a, &p.c], d);
    let (tr, _) = check_twisting_conditions(&p.psi, d);
    r.absorb("psi", tr);
    Ok(r)
}

struct Loaded {
    ca: Rc<ComoduleAlgebra>,
    galois: Rc<Galois>,
}

fn load_bundle(c: &Common, input: &Path, d: u32) -> Result<Loaded, InputError> {
    let src = Source::read(input)?;
    let ca = src.decode(files::bundle)?;
    let mut g = Galois::new(ca.clone(), d);
    if let Some(p) = &c.load_tau {
        let tsrc = Source::read(p)?;
        g = g.with_tau_table(tsrc.decode(|v| files::tau_table(&ca, v))?);
    }
    Ok(Loaded { ca, galois: Rc::new(g) })
}

fn bundle_checks(r: &mut Report, l: &Loaded, d: u32) {
    let ca = &l.ca;
    let mut algs = vec![&ca.a, &ca.h.h];
    algs.extend(ca.b.as_ref());
    confluence(r, &algs, d);
    r.absorb("H", check_bialgebra_axioms(&ca.h, d));
    r.absorb("comodule", check_comodule_algebra(ca, d));
    r.absorb("galois", galois_check(&l.galois, d));
}

fn save_tau(c: &Common, l: &Loaded, d: u32) -> Result<(), InputError> {
    let Some(path) = &c.save_tau else { return Ok(()) };
    let mut table: BTreeMap<Word, Tensor> = BTreeMap::new();
    for w in l.ca.h.test_words(d) {
        let t = l.galois.tau(&w).map_err(|e| usage(format!("cannot save tau: {e}")))?;
        table.insert(w, t);
    }
    std::fs::write(path, files::to_text(&files::tau_json(&l.ca, &table))).map_err(|e| io_error(path, e))
}

fn load_pushforward(l: &Loaded, map: &Path, twist: &Path, d: u32) -> Result<Rc<PushForward>, InputError> {
    let msrc = Source::read(map)?;
    let m = msrc.decode(|v| files::map_file(v, l.ca.b_gens.len()))?;
    let tsrc = Source::read(twist)?;
    let psi: TwistingMap = tsrc.decode(|v| {
        let psi = v.get("psi").ok_or_else(|| hgx::codec::Bad::new("missing `psi`"))?;
        files::twisting_map(&l.ca.a, &m.c, psi)
    })?;
    let name = format!("{} (x)_B {}", m.c.name(), l.ca.name);
    Ok(Rc::new(PushForward::new(&name, l.ca.clone(), m.c, m.f_gens, Rc::new(psi), d)))
}

fn pushforward(c: &Common, input: &Path, map: &Path, twist: &Path) -> Result<Report, InputError> {
    let (mut r, d) = new_report("pushforward", c, &[("input", input), ("map", map), ("twist", twist)]);
    let l = load_bundle(c, input, d)?;
    let pf = load_pushforward(&l, map, twist, d)?;
    bundle_checks(&mut r, &l, d);
    confluence(&mut r, &[&pf.c], d);
    if l.ca.b_gens.is_empty() {
        let (_, pr) = galois_object_pf(l.ca.clone(), pf.c.clone(), pf.psi.clone(), d, sampling(c));
        r.absorb("push-forward", pr);
    } else {
        if let Some(f) = pf.f_map() {
            r.absorb("F", check_map_well_defined(&f, d));
        }
        let (tr, _) = check_twisting_conditions(&pf.psi, d);
        r.absorb("psi", tr);
        r.absorb("descent", check_descent(&pf, d, sampling(c)));
        r.absorb("algebra", check_pf_algebra(&pf, d, sampling(c)));
        r.absorb("push-forward galois", pf_galois_check(&pf, &l.galois, d, sampling(c)));
    }
    save_tau(c, &l, d)?;
    Ok(r)
}

fn bialgebroid(c: &Common, input: &Path, pf_files: Option<(&Path, &Path)>) -> Result<Report, InputError> {
    let mut paths = vec![("input", input)];
    if let Some((m, t)) = pf_files {
        paths.extend([("map", m), ("twist", t)]);
    }
    let (mut r, d) = new_report("bialgebroid", c, &paths);
    let l = load_bundle(c, input, d)?;
    let pf = pf_files.map(|(m, t)| load_pushforward(&l, m, t, d)).transpose()?;
    bundle_checks(&mut r, &l, d);
    bialgebroid_checks(&mut r, l.galois.clone(), pf, d, sampling(c));
    save_tau(c, &l, d)?;
    Ok(r)
}

fn deform_cmd(c: &Common, input: &Path, cocycle: &Path, compare: bool) -> Result<Report, InputError> {
    let (mut r, d) = new_report("deform", c, &[("input", input), ("cocycle", cocycle)]);
    let l = load_bundle(c, input, d)?;
    let csrc = Source::read(cocycle)?;
    let sigma = Rc::new(csrc.decode(|v| files::cocycle(&l.ca.h, v))?);
    bundle_checks(&mut r, &l, d);
    r.absorb("sigma", check_cocycle(&sigma, d));
    match StrongConnection::from_tau(&l.galois, &l.ca.h.test_words(d)) {
        Ok(ell) => {
            let (er, _) = check_strong_connection(&l.galois, &ell, d);
            r.absorb("ell", er);
            match deform(&l.ca, &ell, &sigma, d) {
                Ok((def, dr)) => {
                    r.absorb("deformation", dr);
                    if compare {
                        r.absorb("compare", compare_with_original(&l.ca, &ell, &def, d));
                    }
                }
                Err(e) => r.assert("deformation", false, Some(d), || Witness { input: sigma.name.clone(), residue: e.to_string() }),
            }
        }
        Err(e) => r.assert("ell from tau", false, Some(d), || Witness { input: l.ca.name.clone(), residue: e.to_string() }),
    }
    save_tau(c, &l, d)?;
    Ok(r)
}
