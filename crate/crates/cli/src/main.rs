mod oracle;
mod report;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holonomy_core::arith::{QJson, Q};
use holonomy_core::bbw::{parabolic_from_node, twisted_conormal_cohomology, FiberModel};
use holonomy_core::cache::{cache_path, load, load_or_build, CacheStatus};
use holonomy_core::curvature::*;
use holonomy_core::poisson::{
    phi_from_model, run_poisson_suite, Poisson, PoissonCheck, PoissonOptions,
};
use holonomy_core::rep::{oracle_rep, SymplecticModel};
use holonomy_core::sparse::SparseVec;
use holonomy_core::{Caps, Error};
use serde_json::{json, Value};

use report::Report;
use suites::Suite;

#[derive(Parser)]
#[command(
    name = "holonomy",
    version,
    about = "Exact checks for E7 acting on its 56-dimensional module"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Directory holding cached models.
    #[arg(long, global = true, default_value = ".holonomy-cache")]
    cache_dir: PathBuf,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Brute-force ambient limit, or `bruteforce=N,plethysm=M`.
    #[arg(long, global = true, default_value = "20000", value_parser = parse_caps)]
    caps: Caps,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of a summary.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long, default_value = "E7")]
    algebra: String,
    #[arg(long, default_value_t = 7)]
    node: usize,
}

#[derive(Args, Clone)]
struct SampleArgs {
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Random observable triples per point for the Jacobi check.
    #[arg(long, default_value_t = 20)]
    triples: usize,
    #[arg(long, default_value_t = 3)]
    admissible_points: usize,
    #[arg(long, default_value_t = 20)]
    rank_points: usize,
    #[arg(long, default_value_t = 20)]
    u0_points: usize,
    #[arg(long, default_value_t = 6)]
    jet_directions: usize,
}

impl SampleArgs {
    fn options(&self, seed: u64, checks: Vec<PoissonCheck>) -> PoissonOptions {
        PoissonOptions {
            seed,
            points: self.points,
            triples: self.triples,
            admissible_points: self.admissible_points,
            rank_points: self.rank_points,
            u0_points: self.u0_points,
            jet_directions: self.jet_directions,
            checks,
            ..PoissonOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build (or load) the cached model.
    Build {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Run verification suites against the cached model.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "invariants,curvature,bbw,poisson"
        )]
        suite: Vec<Suite>,
        /// Random quadruples for the quartic identity.
        #[arg(long, default_value_t = 100)]
        quartic_samples: usize,
        #[command(flatten)]
        samples: SampleArgs,
        /// Replace phi2 by a deliberately broken fixture.
        #[arg(long)]
        corrupt_phi: bool,
    },
    /// Brute-force oracle suites on small representations.
    Oracle {
        /// Comma-separated names: sl2-sym<k>, so<n>, gl<n>, zero<n>, sl2c-sym<k>.
        #[arg(long, value_delimiter = ',', default_value = oracle::DEFAULT_ORACLES)]
        oracles: Vec<String>,
    },
    /// Cohomology of L (x) Sym^k N* on the flag variety of a node.
    Bbw {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "L*S^kN")]
        bundle: String,
        #[arg(long)]
        k: usize,
    },
    /// Poisson structure checks for phi2 + tau <,>.
    Poisson {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_rational)]
        tau: Q,
        #[arg(long, value_delimiter = ',', default_value = "jacobi,admissible,rank,u0,jet", value_parser = parse_check)]
        check: Vec<PoissonCheck>,
        #[command(flatten)]
        samples: SampleArgs,
    },
    /// Curvature-type spaces, by formula for the model or brute force for an oracle.
    Curvature {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value = "k")]
        space: Space,
        /// Brute-force this oracle representation instead of the model.
        #[arg(long)]
        oracle: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Space {
    G1,
    K,
    K1,
    P1,
}

fn parse_caps(s: &str) -> Result<Caps, String> {
    let mut caps = Caps::default();
    let positive = |v: &str| match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("caps must be positive integers, got {v:?}")),
    };
    if !s.contains('=') {
        caps.bruteforce = positive(s)?;
        return Ok(caps);
    }
    for part in s.split(',') {
        match part.split_once('=') {
            Some(("bruteforce", v)) => caps.bruteforce = positive(v)?,
            Some(("plethysm", v)) => caps.plethysm = positive(v)?,
            _ => return Err(format!("unknown cap {part:?}")),
        }
    }
    Ok(caps)
}

fn parse_rational(s: &str) -> Result<Q, String> {
    Q::from_str(s.trim()).map_err(|_| format!("not a rational number: {s:?}"))
}

fn parse_check(s: &str) -> Result<PoissonCheck, String> {
    PoissonCheck::from_str(s).map_err(|e| e.to_string())
}

/// Failure that ends the run before a report is produced.
enum Abort {
    Usage(String),
    Check(String),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) | Error::SolutionSpace { .. } => Abort::Check(e.to_string()),
            _ => Abort::Usage(e.to_string()),
        }
    }
}

fn caps_json(c: &Caps) -> Value {
    json!({"bruteforce": c.bruteforce, "plethysm": c.plethysm})
}

fn status_name(s: &CacheStatus) -> &'static str {
    match s {
        CacheStatus::Hit => "hit",
        CacheStatus::Built => "built",
        CacheStatus::Rebuilt(_) => "rebuilt",
    }
}

fn model_from_cache(
    g: &Global,
    model: &ModelArgs,
) -> Result<(SymplecticModel, CacheStatus), Abort> {
    let (m, status) = load_or_build(&g.cache_dir, &model.algebra, model.node)?;
    if let CacheStatus::Rebuilt(why) = &status {
        eprintln!("warning: cache was unusable ({why}); rebuilt");
    }
    Ok((m, status))
}

fn cmd_build(g: &Global, model: &ModelArgs) -> Result<Report, Abort> {
    let (m, status) = model_from_cache(g, model)?;
    let path = cache_path(&g.cache_dir, &model.algebra, model.node);
    let mut r = Report::new(
        "build",
        g.seed,
        json!({"algebra": model.algebra, "node": model.node}),
    );
    r.cache = Some(status_name(&status).into());
    let rs = m.algebra.root_system();
    r.check("root count", rs.num_roots() + rs.rank() == m.dim_g());
    r.check("adjoint dimension", m.adjoint.dim() == m.dim_g());
    r.check("cache reloads", load(&path).is_ok());
    r.payload = json!({
        "algebra": m.label(),
        "node": m.node,
        "roots": rs.num_roots(),
        "dims": [m.dim_g(), m.dim_v()],
        "mu": QJson::from(&m.mu),
        "cache_file": path.file_name().map(|f| f.to_string_lossy().into_owned()),
    });
    Ok(r)
}

fn cmd_verify(
    g: &Global,
    model: &ModelArgs,
    suites: &[Suite],
    quartic_samples: usize,
    samples: &SampleArgs,
    corrupt_phi: bool,
) -> Result<Report, Abort> {
    let path = cache_path(&g.cache_dir, &model.algebra, model.node);
    if !path.exists() {
        return Err(Abort::Usage(format!(
            "no cached model at {}; run `holonomy build --algebra {} --node {}` first",
            path.display(),
            model.algebra,
            model.node
        )));
    }
    let m = load(&path).map_err(|e| {
        Abort::Usage(format!(
            "cached model at {} is unusable ({e}); run `holonomy build` to rebuild it",
            path.display()
        ))
    })?;
    let mut suites = suites.to_vec();
    suites.sort_unstable();
    suites.dedup();
    let config = json!({
        "algebra": model.algebra,
        "node": model.node,
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "caps": caps_json(&g.caps),
        "quartic_samples": quartic_samples,
        "corrupt_phi": corrupt_phi,
    });
    let mut r = Report::new("verify", g.seed, config);
    let mut data = serde_json::Map::new();
    for s in suites {
        let out = match s {
            Suite::Invariants => suites::invariants(&m, g.seed, quartic_samples),
            Suite::Curvature => suites::curvature(&m),
            Suite::Bbw => suites::bbw(&m, &g.caps)?,
            Suite::Poisson => suites::poisson(
                &m,
                &samples.options(g.seed, PoissonCheck::ALL.to_vec()),
                corrupt_phi,
            )?,
        };
        r.extend(s.name(), out.checks);
        data.insert(s.name().into(), out.data);
    }
    r.payload = Value::Object(data);
    Ok(r)
}

fn cmd_oracle(g: &Global, names: &[String]) -> Result<Report, Abort> {
    let names: Vec<&str> = names
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    let mut r = Report::new(
        "oracle",
        g.seed,
        json!({"oracles": names, "caps": caps_json(&g.caps)}),
    );
    let mut entries = Vec::new();
    for name in names {
        let e = oracle::run(name, &g.caps)?;
        match &e.refusal {
            Some(why) => {
                eprintln!("refused {name}: {why}");
                r.check(format!("{name}: within caps"), false);
            }
            None => r.extend(name, e.checks.clone()),
        }
        entries.push(e);
    }
    r.payload = json!({ "oracles": entries });
    Ok(r)
}

fn parse_bundle(s: &str, k: usize) -> Result<usize, Abort> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let power = compact
        .strip_prefix("L*S^")
        .and_then(|rest| rest.strip_suffix('N'))
        .ok_or_else(|| Abort::Usage(format!("unsupported bundle {s:?} (expected \"L*S^kN\")")))?;
    match power {
        "k" => Ok(k),
        p => match p.parse::<usize>() {
            Ok(n) if n == k => Ok(n),
            _ => Err(Abort::Usage(format!("bundle {s:?} does not match --k {k}"))),
        },
    }
}

fn cmd_bbw(g: &Global, model: &ModelArgs, bundle: &str, k: usize) -> Result<Report, Abort> {
    let k = parse_bundle(bundle, k)?;
    let config = json!({"algebra": model.algebra, "node": model.node, "bundle": bundle, "k": k, "caps": caps_json(&g.caps)});
    let mut r = Report::new("bbw", g.seed, config);
    let rs = holonomy_core::lie::RootSystem::from_dynkin(&model.algebra)?;
    let par = parabolic_from_node(&rs, model.node)?;
    let mut res = twisted_conormal_cohomology(&par, k, &g.caps, None)?;
    if res.table.is_none() {
        let (m, status) = model_from_cache(g, model)?;
        r.cache = Some(status_name(&status).into());
        let fiber = FiberModel::from_model(&m)?;
        res = twisted_conormal_cohomology(&par, k, &g.caps, Some(&fiber))?;
    }
    r.check("euler characteristic", res.euler_matches);
    r.check("cohomology determined", res.table.is_some());
    r.payload = json!({
        "k": k,
        "rank": res.rank,
        "dim_x": par.dim_x(),
        "resolved_trivial": res.resolved_trivial,
        "graded": res.graded.report(&rs)?,
        "cohomology": res.table.as_ref().map(|t| t.report(&rs)).transpose()?,
    });
    Ok(r)
}

fn cmd_poisson(
    g: &Global,
    model: &ModelArgs,
    tau: &Q,
    checks: &[PoissonCheck],
    samples: &SampleArgs,
) -> Result<Report, Abort> {
    let (m, status) = model_from_cache(g, model)?;
    let opts = samples.options(g.seed, checks.to_vec());
    let config = json!({
        "algebra": model.algebra,
        "node": model.node,
        "tau": QJson::from(tau),
        "checks": checks,
        "points": opts.points,
        "triples": opts.triples,
    });
    let mut r = Report::new("poisson", g.seed, config);
    r.cache = Some(status_name(&status).into());
    let pois = Poisson::new(&m, phi_from_model(&m, tau.clone()));
    let report = run_poisson_suite(&pois, &opts)?;
    r.extend("poisson", report.checks.clone());
    r.payload = serde_json::to_value(&report).map_err(Error::from)?;
    Ok(r)
}

fn space_report(
    space: &str,
    ambient: usize,
    dim: usize,
    method: &'static str,
    checks: Vec<CheckResult>,
) -> SpaceReport {
    SpaceReport {
        space: space.into(),
        ambient_dim: ambient,
        computed_dim: dim,
        method,
        residual_checks: checks,
    }
}

fn oracle_space(name: &str, space: Space, caps: &Caps) -> Result<SpaceReport, Abort> {
    let rep = oracle_rep(name)?;
    let (dg, n) = (rep.algebra_dim(), rep.dim());
    let pairs = n * (n - 1) / 2;
    Ok(match space {
        Space::G1 => {
            let g1 = prolongation(&rep, caps)?;
            let ok = spencer_boundary(&rep, &g1)
                .iter()
                .all(|r| bianchi_failures(&rep, r) == 0);
            space_report(
                "g1",
                n * n * n,
                g1.dim(),
                "bruteforce",
                vec![CheckResult::new("boundary lies in K", ok)],
            )
        }
        Space::K => {
            let k = curvature_space_bruteforce(&rep, caps)?;
            let ok = k.iter().all(|r| bianchi_failures(&rep, r) == 0);
            space_report(
                "K",
                dg * pairs,
                k.len(),
                "bruteforce",
                vec![CheckResult::new("first bianchi", ok)],
            )
        }
        Space::K1 => {
            let k = curvature_space_bruteforce(&rep, caps)?;
            let k1 = second_curvature_bruteforce(&rep, &k, caps)?;
            let ok = k1.iter().all(|s| s.second_bianchi_failures() == 0);
            space_report(
                "K1",
                dg * n * pairs,
                k1.len(),
                "bruteforce",
                vec![CheckResult::new("second bianchi", ok)],
            )
        }
        Space::P1 => {
            let p1 = p1_bruteforce(&rep, caps)?;
            let ok = p1.iter().all(|p| p.symmetry_failures() == 0);
            space_report(
                "P1",
                dg * dg * pairs,
                p1.len(),
                "bruteforce",
                vec![CheckResult::new("symmetric", ok)],
            )
        }
    })
}

fn model_space(m: &SymplecticModel, space: Space) -> Result<SpaceReport, Abort> {
    let (dg, n) = (m.dim_g(), m.dim_v());
    let pairs = n * (n - 1) / 2;
    let table = curvature_table(m);
    Ok(match space {
        Space::G1 => {
            return Err(Abort::Usage(
                "g1 is only available for oracle representations (use --oracle)".into(),
            ))
        }
        Space::K => {
            let all: Vec<usize> = (0..dg).collect();
            let checks = vec![
                CheckResult::new(
                    "first bianchi",
                    bianchi_failures_table(m, &table).is_empty(),
                ),
                CheckResult::new(
                    "equivariant",
                    equivariance_failures(m, &table, &all).is_empty(),
                ),
            ];
            space_report("K", dg * pairs, stacked_rank(&table), "formula", checks)
        }
        Space::K1 => {
            let ok = (0..n).all(|w| second_bianchi_failures_basis(m, &table, w) == 0);
            let k1: Vec<_> = (0..n)
                .map(|w| second_curvature_element(m, &table, &SparseVec::unit(w)))
                .collect();
            let checks = vec![CheckResult::new("second bianchi", ok)];
            space_report(
                "K1",
                dg * n * pairs,
                second_stacked_rank(&k1),
                "formula",
                checks,
            )
        }
        Space::P1 => {
            let phi = phi2_element(m, &table);
            let all: Vec<usize> = (0..dg).collect();
            let unique = p1_invariant_solve(m, &m.algebra.simple_generators()).is_ok();
            let checks = vec![
                CheckResult::new("symmetric", phi.symmetry_failures() == 0),
                CheckResult::new("invariant", phi_invariance_failures(m, &phi, &all) == 0),
                CheckResult::new("phi2' isomorphism", stacked_rank(phi.slices()) == dg),
                CheckResult::new(
                    "phi2'' isomorphism",
                    second_stacked_rank(&phi2_double_prime(m, &phi)) == n,
                ),
            ];
            space_report(
                "P1 invariants",
                dg * dg * pairs,
                usize::from(unique),
                "formula",
                checks,
            )
        }
    })
}

fn cmd_curvature(
    g: &Global,
    model: &ModelArgs,
    space: Space,
    oracle: Option<&str>,
) -> Result<Report, Abort> {
    let config = json!({
        "algebra": model.algebra,
        "node": model.node,
        "space": format!("{space:?}").to_lowercase(),
        "oracle": oracle,
        "caps": caps_json(&g.caps),
    });
    let mut r = Report::new("curvature", g.seed, config);
    let rep = match oracle {
        Some(name) => oracle_space(name, space, &g.caps)?,
        None => {
            let (m, status) = model_from_cache(g, model)?;
            r.cache = Some(status_name(&status).into());
            model_space(&m, space)?
        }
    };
    r.extend(&rep.space, rep.residual_checks.clone());
    r.payload = serde_json::to_value(&rep).map_err(Error::from)?;
    Ok(r)
}

fn run(cli: &Cli) -> Result<Report, Abort> {
    let g = &cli.global;
    match &cli.command {
        Command::Build { model } => cmd_build(g, model),
        Command::Verify {
            model,
            suite,
            quartic_samples,
            samples,
            corrupt_phi,
        } => cmd_verify(g, model, suite, *quartic_samples, samples, *corrupt_phi),
        Command::Oracle { oracles } => cmd_oracle(g, oracles),
        Command::Bbw { model, bundle, k } => cmd_bbw(g, model, bundle, *k),
        Command::Poisson {
            model,
            tau,
            check,
            samples,
        } => cmd_poisson(g, model, tau, check, samples),
        Command::Curvature {
            model,
            space,
            oracle,
        } => cmd_curvature(g, model, *space, oracle.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r.finish(),
        Err(Abort::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Abort::Check(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Some(path) = &cli.global.out {
        if let Err(e) = report.write(path) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.global.json {
        let _ = writeln!(std::io::stdout(), "{}", report.to_json());
    } else {
        report.print_summary();
        eprintln!("elapsed {:.2?}", start.elapsed());
    }
    let refused = report
        .checks
        .iter()
        .any(|c| !c.pass && c.name.ends_with("within caps"));
    if refused {
        ExitCode::from(2)
    } else if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
