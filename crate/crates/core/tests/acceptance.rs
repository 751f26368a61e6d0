//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cell::OnceCell;
use std::rc::Rc;
use std::time::{Duration, Instant};

use hgx_core::comodule::{
    check_comodule_algebra, check_total, check_triviality_total, coinvariants, galois_check, Galois, Sampling, TotalAlgebra,
};
use hgx_core::hopf::check_bialgebra_axioms;
use hgx_core::ncalg::{check_confluence, Alg, Algebra, Word};
use hgx_core::pushfwd::galois_object_pf;
use hgx_core::report::{Report, Status};
use hgx_core::suites::run::{self, broken_alpha, product_formula, taft_coaction_closed_form, Break, Suite, SuiteConfig};
use hgx_core::suites::{data, theta};
use hgx_core::twist::check_twisting_conditions;

/// Wall-clock limit per Taft configuration.
const TAFT_CONFIG_LIMIT: Duration = Duration::from_secs(10);
/// Wall-clock limit for the θ total-space checks at d = 4.
const THETA_TOTAL_LIMIT: Duration = Duration::from_secs(300);
const THETA_D: u32 = 4;
const SEED: u64 = 0;
const MAX_CASES: usize = 200;

const COMPLETE: Sampling = Sampling { seed: SEED, max_cases: usize::MAX };

type Outcome = Result<String, String>;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// (n, k) with q = ζ_n^k primitive, n ∈ {2, 3}.
fn taft_params() -> Vec<(u32, i64)> {
    [2u32, 3].iter().flat_map(|&n| (1..n as i64).filter(move |&k| gcd(k, n as i64) == 1).map(move |k| (n, k))).collect()
}

fn ga_xb(a: u32, b: u32) -> Word {
    Word::from([vec![0u8; a as usize], vec![1u8; b as usize]].concat())
}

fn failure(r: &Report) -> String {
    r.failures()
        .next()
        .map(|e| match &e.witness {
            Some(w) => format!("{}: {} -> {}", e.name, w.input, w.residue),
            None => format!("{}: {}", e.name, e.status),
        })
        .unwrap_or_default()
}

fn require(r: &Report, what: &str) -> Result<(), String> {
    if r.passed() { Ok(()) } else { Err(format!("{what}: {}", failure(r))) }
}

/// Every entry whose name starts with `prefix` passes, and there is one.
fn require_prefix(r: &Report, prefix: &str) -> Result<usize, String> {
    let hits: Vec<_> = r.entries.iter().filter(|e| e.name.starts_with(prefix)).collect();
    if hits.is_empty() {
        return Err(format!("{}: no entries `{prefix}`", r.name));
    }
    match hits.iter().find(|e| !e.passed()) {
        Some(e) => Err(format!("{}: {} is {}", r.name, e.name, e.status)),
        None => Ok(hits.len()),
    }
}

fn require_entry(r: &Report, name: &str) -> Result<(), String> {
    match r.entry(name) {
        Some(e) if e.passed() => Ok(()),
        Some(e) => Err(format!("{}: {name} is {}", r.name, e.status)),
        None => Err(format!("{}: missing `{name}`", r.name)),
    }
}

fn suite(s: Suite, f: impl FnOnce(&mut SuiteConfig)) -> Report {
    let mut cfg = SuiteConfig::new(s);
    cfg.seed = SEED;
    cfg.max_cases = MAX_CASES;
    f(&mut cfg);
    run::run(&cfg).expect("valid config")
}

#[derive(Default)]
struct Shared {
    taft: [OnceCell<Report>; 2],
    theta: OnceCell<Report>,
    cocycle: OnceCell<Report>,
}

impl Shared {
    fn taft(&self, n: u32) -> &Report {
        self.taft[n as usize - 2].get_or_init(|| suite(Suite::Taft, |c| c.n = n))
    }

    fn theta(&self) -> &Report {
        self.theta.get_or_init(|| suite(Suite::Theta, |c| c.d = THETA_D))
    }

    fn cocycle(&self) -> &Report {
        self.cocycle.get_or_init(|| suite(Suite::Cocycle, |c| c.n = 2))
    }
}

fn taft_completeness(_: &Shared) -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for (n, k) in taft_params() {
        for s in [0, 1] {
            let t = Instant::now();
            let cfg = format!("n={n} k={k} s={s}");
            let d = 2 * n;
            let h = data::taft(n, k);
            let ca = data::taft_comodule(n, k, s);
            require(&check_bialgebra_axioms(&h, d), &format!("{cfg} hopf"))?;
            require(&check_comodule_algebra(&ca, d), &format!("{cfg} comodule"))?;
            let (basis, r) = coinvariants(&ca, d).map_err(|e| format!("{cfg} coinvariants: {e}"))?;
            require(&r, &format!("{cfg} coinvariants"))?;
            if basis.len() != 1 || !basis[0].terms().all(|(w, _)| w.is_empty()) {
                return Err(format!("{cfg}: coinvariants have dimension {}", basis.len()));
            }
            let g = Galois::new(ca, d);
            require(&galois_check(&g, d), &format!("{cfg} galois"))?;
            let want = (n as usize).pow(4);
            match g.chi_rank(0) {
                Ok((r, c)) if r == want && c == want => {}
                other => return Err(format!("{cfg}: chi rank {other:?}, want {want}")),
            }
            let el = t.elapsed();
            if el >= TAFT_CONFIG_LIMIT {
                return Err(format!("{cfg}: {el:.1?} exceeds {TAFT_CONFIG_LIMIT:?}"));
            }
            slowest = slowest.max(el);
            count += 1;
        }
    }
    Ok(format!("{count} configurations, slowest {slowest:.2?}"))
}

fn q_binomial(_: &Shared) -> Outcome {
    let mut words = 0;
    for (n, k) in taft_params() {
        let q = data::root(n, k);
        for s in [0, 1] {
            let ca = data::taft_comodule(n, k, s);
            for a in 0..n {
                for b in 0..n {
                    let got = ca.coact_word(&ga_xb(a, b)).map_err(|e| e.to_string())?;
                    if got != taft_coaction_closed_form(n, &q, a, b) {
                        return Err(format!("n={n} k={k} s={s}: G^{a} X^{b}"));
                    }
                    words += 1;
                }
            }
        }
    }
    Ok(format!("{words} basis words"))
}

fn twisting_classification(_: &Shared) -> Outcome {
    let mut maps = 0;
    for (n, k) in taft_params() {
        let q = data::root(n, k);
        let d = 2 * n;
        for s in [0, 1] {
            let ca = data::taft_comodule(n, k, s);
            let c = data::cyclic(n);
            for m in 0..n {
                let cfg = format!("n={n} k={k} s={s} m={m}");
                let psi = data::alpha_m(ca.a.clone(), c.clone(), &q, m);
                let (r, flags) = check_twisting_conditions(&psi, 2 * d);
                require(&r, &cfg)?;
                if !flags.all() {
                    return Err(format!("{cfg}: {flags:?}"));
                }
                let pf = product_formula(&psi, n, &q, m, s);
                if !pf.passed() {
                    return Err(format!("{cfg}: {}", pf.name));
                }
                let (_, r) = galois_object_pf(ca.clone(), c.clone(), Rc::new(psi), d, COMPLETE);
                require_entry(&r, "descent/psi is H-colinear").map_err(|e| format!("{cfg}: {e}"))?;
                maps += 1;
            }
            let (r, _) = check_twisting_conditions(&broken_alpha(&ca), n + 1);
            match r.entry("well-defined on relations") {
                Some(e) if e.status == Status::Fail && e.witness.as_ref().is_some_and(|w| !w.residue.is_empty()) => {}
                _ => return Err(format!("n={n} k={k} s={s}: alpha^n != id was not rejected with a witness")),
            }
        }
    }
    Ok(format!("{maps} twisting maps, negative control rejected"))
}

fn pushforward_galois(_: &Shared) -> Outcome {
    let mut count = 0;
    for (n, k) in taft_params() {
        let q = data::root(n, k);
        let d = 2 * n;
        let ca = data::taft_comodule(n, k, 1);
        let cs: [Alg; 2] = [data::cyclic(n), data::taft(n, k).h.clone()];
        for c in cs {
            let psi = Rc::new(data::alpha_m(ca.a.clone(), c.clone(), &q, 1));
            let (_, r) = galois_object_pf(ca.clone(), c, psi, d, COMPLETE);
            require_entry(&r, "galois/coinvariants = C (x)_B 1")?;
            require_entry(&r, "galois/chi^psi bijective")?;
            require_entry(&r, "galois/chi^psi(tau^psi(h)) = (1 (x) 1) (x) h")?;
            require(&r, &r.name)?;
            count += 1;
        }
    }
    Ok(format!("{count} push-forwards"))
}

fn total_space(_: &Shared) -> Outcome {
    for n in [2, 3] {
        for s in [0, 1] {
            let t = TotalAlgebra::new(Rc::new(Galois::new(data::taft_comodule(n, 1, s), 2 * n)));
            require(&check_total(&t, 2 * n, COMPLETE), &format!("A_s n={n} s={s}"))?;
            require(&check_triviality_total(&t, 2 * n, COMPLETE), &format!("A_s n={n} s={s}"))?;
        }
    }
    let start = Instant::now();
    let ca = theta::theta_comodule();
    let g = Rc::new(Galois::new(ca.clone(), THETA_D).with_tau_table(theta::theta_tau_table(&ca)));
    let t = TotalAlgebra::new(g);
    let sampling = Sampling { seed: SEED, max_cases: MAX_CASES };
    require(&check_total(&t, THETA_D, sampling), "theta total")?;
    require(&check_triviality_total(&t, THETA_D, sampling), "theta triviality")?;
    let el = start.elapsed();
    if el >= THETA_TOTAL_LIMIT {
        return Err(format!("theta at d = {THETA_D}: {el:.1?} exceeds {THETA_TOTAL_LIMIT:?}"));
    }
    Ok(format!("A_s complete for n = 2, 3; theta at d = {THETA_D} in {el:.1?}"))
}

fn theta_identities(sh: &Shared) -> Outcome {
    let r = sh.theta();
    require_entry(r, "z g = mu^e g z and x central")?;
    require_prefix(r, "p/")?;
    require_prefix(r, "S^3 cleaving/")?;
    require_entry(r, "S^2 quotient/A I in I A")?;
    require_entry(r, "S^2 quotient/iso/g g^-1 = id on A/I_A")?;
    require_entry(r, "S^3 quotient/iso/g g^-1 = id on A/I_A")?;
    Ok(format!("d = {THETA_D}"))
}

fn bialgebroid(sh: &Shared) -> Outcome {
    let mut entries = 0;
    for n in [2, 3] {
        let r = sh.taft(n);
        for p in ["L/", "M/", "gamma/", "L~/", "gamma~/"] {
            entries += require_prefix(r, p)?;
        }
        if !r.entries.iter().any(|e| e.name.starts_with("gamma~/") && e.name.contains("bijective") && e.passed()) {
            return Err(format!("n={n}: no passing gamma~ bijectivity entry"));
        }
    }
    Ok(format!("{entries} entries for n = 2, 3"))
}

fn cocycle(sh: &Shared) -> Outcome {
    let r = sh.cocycle();
    for p in ["sigma/", "bicharacter/", "trivial/"] {
        require_prefix(r, p)?;
    }
    require_entry(r, "ell_sigma has (prop-ell)")?;
    require(r, &r.name)?;
    Ok(format!("{} entries", r.entries.len()))
}

fn frames(sh: &Shared) -> Outcome {
    let r = sh.theta();
    for q in ["S^3", "S^2"] {
        require_entry(r, &format!("frames {q}/Gram matrix equals p"))?;
        require_entry(r, &format!("F(p) {q}/F(p)/p^2 = p"))?;
    }
    Ok("both quotient maps".into())
}

fn infrastructure(sh: &Shared) -> Outcome {
    let mut presentations: Vec<(Alg, u32)> = Vec::new();
    for n in [2u32, 3] {
        let d = 2 * n;
        for k in (1..n as i64).filter(|&k| gcd(k, n as i64) == 1) {
            presentations.push((data::taft(n, k).h.clone(), 2 * d));
            for s in [0, 1] {
                presentations.push((data::taft_comodule(n, k, s).a.clone(), 2 * d));
            }
        }
        presentations.push((data::cyclic(n), 2 * d));
        presentations.push((data::group_algebra(n, "g").h.clone(), 2 * d));
    }
    for a in [theta::s7(), theta::s7_mod_x(), theta::s4(), theta::s3(), theta::s2(), theta::su2().h.clone()] {
        presentations.push((a, 2 * THETA_D));
    }
    for (a, bound) in &presentations {
        let alg = Algebra::new(a.pres().clone()).map_err(|e| format!("{}: {e}", a.name()))?;
        require(&check_confluence(&alg, *bound), &format!("confluence {}", a.name()))?;
    }

    // The θ part of the total suite is rerun at d = 2 to keep this short.
    let runs: Vec<(&str, Box<dyn Fn() -> Report>, Option<&Report>)> = vec![
        ("taft n=2", Box::new(|| suite(Suite::Taft, |c| c.n = 2)), Some(sh.taft(2))),
        ("taft n=3", Box::new(|| suite(Suite::Taft, |c| c.n = 3)), Some(sh.taft(3))),
        ("theta", Box::new(|| suite(Suite::Theta, |c| c.d = THETA_D)), Some(sh.theta())),
        ("cocycle", Box::new(|| suite(Suite::Cocycle, |c| c.n = 2)), Some(sh.cocycle())),
        ("total d=2", Box::new(|| suite(Suite::Total, |c| c.d = 2)), None),
    ];
    let mut controls = 0;
    for (name, f, first) in &runs {
        let a = match first {
            Some(r) => format!("{r}"),
            None => format!("{}", f()),
        };
        let r = f();
        if format!("{r}") != a {
            return Err(format!("{name}: reports differ between runs"));
        }
        for e in r.entries.iter().filter(|e| e.name.starts_with("negative control:")) {
            if !e.passed() {
                return Err(format!("{name}: {} not rejected", e.name));
            }
            controls += 1;
        }
    }
    let broken = suite(Suite::Taft, |c| c.broken = Some(Break::AlphaOrder));
    if broken.passed() || broken.failures().any(|e| e.witness.as_ref().is_none_or(|w| w.residue.is_empty())) {
        return Err("taft --break alpha-order: failures without witnesses".into());
    }
    Ok(format!("{} presentations confluent, {} suites reproducible, {controls} negative controls", presentations.len(), runs.len()))
}

fn main() {
    let criteria: [(&str, fn(&Shared) -> Outcome); 10] = [
        ("Taft completeness", taft_completeness),
        ("q-binomial coaction", q_binomial),
        ("twisting classification", twisting_classification),
        ("push-forward Galois", pushforward_galois),
        ("total-space triviality", total_space),
        ("theta-sphere identities", theta_identities),
        ("bialgebroid suite", bialgebroid),
        ("cocycle deformation", cocycle),
        ("frames and F(p)", frames),
        ("infrastructure", infrastructure),
    ];
    let sh = Shared::default();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f(&sh);
        let el = t.elapsed();
        let (tag, detail) = match &out {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag} {name} ({el:.1?}): {detail}", i + 1);
        failed += out.is_err() as usize;
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
