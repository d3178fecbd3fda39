//! `darkstate`: construct, solve for and verify multipartite dark states.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit status is 0 when the
//! requested check passes, 1 when it fails and 2 on any error.

use std::fmt::Write as _;
use std::io::{Read, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use darkstate_core::construction::{
    four_qubit_dark_pair, p_all_state, pair_singlet, psi3, psi4, qutrit_semidark_example,
    werner_state,
};
use darkstate_core::dfs::{dfs_experiment, ChannelSpec, Noise};
use darkstate_core::hilbert::{space_dim, DensityJson, StateJson};
use darkstate_core::numkernel::{c, DEFAULT_TOL};
use darkstate_core::solver::{
    dark_basis, dark_dimension_oracle, semidark_basis, semidark_dimension_oracle, solve,
    SubspaceKind,
};
use darkstate_core::verify::{
    annihilation_residuals, collapse_darkness_check, density_invariance, invariance_random,
    CollapseOutcome, Group, PhaseConvention,
};
use darkstate_core::{seeded_rng, Error, C64};

/// Largest `d^N` the solver subcommands accept.
const SOLVE_CAP: usize = 4096;
const CHECK_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "darkstate",
    version,
    about = "Dark and semi-dark states of N d-level systems"
)]
struct Cli {
    /// Seed for every random draw; drawn from entropy and printed when omitted.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Numerical tolerance (solver default 1e-9, sampled checks 1e-8).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Machine-readable output for `dims` and `solve`; other commands always emit JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one of the named states as JSON.
    Construct(ConstructArgs),
    /// Dark and semi-dark dimensions for N = 1..max-n, with oracle columns.
    Dims {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        max_n: usize,
    },
    /// Orthonormal basis of the dark or semi-dark subspace.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Kind::Dark)]
        kind: Kind,
    },
    /// Sampled invariance test of a state or density-matrix file (`-` for stdin).
    Verify {
        file: String,
        #[arg(long, value_enum, default_value_t = Kind::Dark)]
        mode: Kind,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Collapse a dark N-party state onto a dark M-party state and test the remnant.
    Collapse {
        state_n: String,
        state_m: String,
        /// 1-based sites of the N-party state, in the order of the M-party sites.
        #[arg(long, value_delimiter = ',', required = true)]
        parties: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Logical qubit in the four-qubit dark pair under collective noise.
    DfsSim {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = GroupArg::Sud)]
        group: GroupArg,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    name: StateName,
    /// Local dimension, for `p-all` and `werner`.
    #[arg(long)]
    d: Option<usize>,
    /// Flip-operator weight, for `werner`.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Which of the two four-qubit dark states, for `dark-pair`.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    which: u8,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateName {
    PairSinglet,
    PAll,
    Psi3,
    Psi4,
    DarkPair,
    QutritExample,
    Werner,
}

/// `dark` tests SU(d), `semidark` the spin SU(2) subgroup.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Dark,
    Semidark,
}

impl Kind {
    fn group(self) -> Group {
        match self {
            Kind::Dark => Group::Sud,
            Kind::Semidark => Group::Su2,
        }
    }

    fn subspace(self) -> SubspaceKind {
        match self {
            Kind::Dark => SubspaceKind::Dark,
            Kind::Semidark => SubspaceKind::Semidark,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Su2,
    Sud,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Su2 => Group::Su2,
            GroupArg::Sud => Group::Sud,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum InputFile {
    State(StateJson),
    Density(DensityJson),
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

type Run = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Run {
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidTolerance(tol).into());
        }
    }
    match &cli.command {
        Command::Construct(args) => construct(args),
        Command::Dims { d, max_n } => dims(cli, *d, *max_n),
        Command::Solve { n, d, kind } => solve_cmd(cli, *n, *d, *kind),
        Command::Verify { file, mode, trials } => verify(cli, file, *mode, *trials),
        Command::Collapse {
            state_n,
            state_m,
            parties,
            trials,
        } => collapse(cli, state_n, state_m, parties, *trials),
        Command::DfsSim { samples, group } => dfs_sim(cli, *samples, *group),
    }
}

/// Write to stdout; a reader that went away early is not an error.
fn print_out(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::Usage(format!("cannot write output: {e}")))
        }
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Usage(format!("cannot serialize output: {e}")))?;
    print_out(&(text + "\n"))
}

fn seed(cli: &Cli) -> u64 {
    cli.seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed: {s}");
        s
    })
}

fn require(opt: Option<usize>, flag: &str, name: &str) -> Result<usize, Failure> {
    opt.ok_or_else(|| Failure::Usage(format!("`{name}` needs --{flag}")))
}

fn construct(args: &ConstructArgs) -> Run {
    let state = match args.name {
        StateName::PairSinglet => pair_singlet(),
        StateName::PAll => p_all_state(require(args.d, "d", "p-all")?)?,
        StateName::Psi3 => psi3(),
        StateName::Psi4 => psi4(),
        StateName::DarkPair => {
            let (a, b) = four_qubit_dark_pair();
            if args.which == 1 {
                a
            } else {
                b
            }
        }
        StateName::QutritExample => qutrit_semidark_example(),
        StateName::Werner => {
            let d = require(args.d, "d", "werner")?;
            let beta = args
                .beta
                .ok_or_else(|| Failure::Usage("`werner` needs --beta".into()))?;
            emit(&DensityJson::from_density(&werner_state(d, beta)?))?;
            return Ok(true);
        }
    };
    emit(&StateJson::from_state(&state))?;
    Ok(true)
}

fn check_cap(d: usize, n: usize) -> Result<(), Failure> {
    let dim = space_dim(d, n).map_err(Failure::Core)?;
    if dim > SOLVE_CAP {
        return Err(Error::SizeCap {
            d,
            n,
            cap: SOLVE_CAP,
        }
        .into());
    }
    Ok(())
}

#[derive(Serialize)]
struct DimsRow {
    n: usize,
    semidark: usize,
    dark: usize,
    semidark_oracle: u64,
    dark_oracle: u64,
    mismatch: bool,
}

fn dims(cli: &Cli, d: usize, max_n: usize) -> Run {
    if max_n == 0 {
        return Err(Error::NoSites.into());
    }
    check_cap(d, max_n)?;
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    let mut rows = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let semidark = semidark_basis(n, d, tol)?.dim();
        let dark = dark_basis(n, d, tol)?.dim();
        let semidark_oracle = semidark_dimension_oracle(n, d)?;
        let dark_oracle = dark_dimension_oracle(n, d)?;
        rows.push(DimsRow {
            n,
            semidark,
            dark,
            semidark_oracle,
            dark_oracle,
            mismatch: semidark as u64 != semidark_oracle || dark as u64 != dark_oracle,
        });
    }
    let ok = rows.iter().all(|r| !r.mismatch);
    if cli.json {
        emit(&json!({ "d": d, "tol": tol, "rows": rows }))?;
    } else {
        let mut t = format!("d = {d}\n");
        let _ = writeln!(
            t,
            "{:>3} {:>9} {:>6} {:>16} {:>12}",
            "N", "semidark", "dark", "semidark-oracle", "dark-oracle"
        );
        for r in &rows {
            let _ = writeln!(
                t,
                "{:>3} {:>9} {:>6} {:>16} {:>12}{}",
                r.n,
                r.semidark,
                r.dark,
                r.semidark_oracle,
                r.dark_oracle,
                if r.mismatch { "  MISMATCH" } else { "" }
            );
        }
        print_out(&t)?;
    }
    if !ok {
        eprintln!("numeric and oracle dimensions disagree");
    }
    Ok(ok)
}

fn solve_cmd(cli: &Cli, n: usize, d: usize, kind: Kind) -> Run {
    check_cap(d, n)?;
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    let sub = solve(kind.subspace(), n, d, tol)?;
    if !sub.tol_stable {
        eprintln!("warning: dimension changes when tol is scaled by 10 or 1/10");
    }
    if cli.json {
        let basis: Vec<StateJson> = sub.basis.iter().map(StateJson::from_state).collect();
        emit(&json!({
            "d": d,
            "n": n,
            "kind": sub.kind,
            "dim": sub.dim(),
            "tol": tol,
            "tol_stable": sub.tol_stable,
            "max_residual": sub.max_residual,
            "j0_residual": sub.j0_residual,
            "full_family_residual": sub.full_family_residual,
            "basis": basis,
        }))?;
    } else {
        let mut t = format!(
            "{} subspace, d = {d}, N = {n}: dimension {}\n",
            sub.kind,
            sub.dim()
        );
        let _ = writeln!(
            t,
            "max residual {:.3e}, J0 residual {:.3e}",
            sub.max_residual, sub.j0_residual
        );
        if let Some(r) = sub.full_family_residual {
            let _ = writeln!(t, "full SU(d) ladder residual {r:.3e}");
        }
        for (i, v) in sub.basis.iter().enumerate() {
            let _ = writeln!(t, "vector {i}:");
            for (b, a) in v.terms(1e-12) {
                let labels: Vec<String> = b.labels().iter().map(|l| l.to_string()).collect();
                let _ = writeln!(t, "  {:+.6}{:+.6}i  |{}>", a.re, a.im, labels.join(","));
            }
        }
        print_out(&t)?;
    }
    Ok(true)
}

fn read_input(path: &str) -> Result<InputFile, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(PathBuf::from(path))
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?
    };
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{path}: not a state or density file ({e})")))
}

fn read_state(path: &str) -> Result<darkstate_core::StateVector, Failure> {
    match read_input(path)? {
        InputFile::State(s) => Ok(s.to_state(true)?),
        InputFile::Density(_) => Err(Failure::Usage(format!("{path}: expected a pure state"))),
    }
}

fn group_name(g: Group) -> &'static str {
    match g {
        Group::Su2 => "su2",
        Group::Sud => "sud",
    }
}

fn verify(cli: &Cli, file: &str, mode: Kind, trials: usize) -> Run {
    let input = read_input(file)?;
    let seed = seed(cli);
    let tol = cli.tol.unwrap_or(CHECK_TOL);
    let group = mode.group();
    let mut rng = seeded_rng(seed);
    let (kind, residual, verdict) = match input {
        InputFile::State(s) => {
            let psi = s.to_state(true)?;
            let residual = annihilation_residuals(&psi, group)?;
            let verdict = invariance_random(
                &psi,
                group,
                trials,
                tol,
                PhaseConvention::Insensitive,
                &mut rng,
            )?;
            ("state", Some(residual), verdict)
        }
        InputFile::Density(d) => {
            let rho = d.to_density()?;
            (
                "density",
                None,
                density_invariance(&rho, group, trials, tol, &mut rng)?,
            )
        }
    };
    let pass = verdict.pass;
    emit(&json!({
        "input": kind,
        "mode": if mode == Kind::Dark { "dark" } else { "semidark" },
        "group": group_name(group),
        "seed": seed,
        "pass": pass,
        "annihilation_residual": residual,
        "verdict": verdict,
    }))?;
    Ok(pass)
}

fn collapse(cli: &Cli, state_n: &str, state_m: &str, parties: &[usize], trials: usize) -> Run {
    let psi_n = read_state(state_n)?;
    let phi_m = read_state(state_m)?;
    if parties.contains(&0) {
        return Err(Failure::Usage("--parties are 1-based".into()));
    }
    let zero_based: Vec<usize> = parties.iter().map(|p| p - 1).collect();
    let seed = seed(cli);
    let tol = cli.tol.unwrap_or(CHECK_TOL);
    let mut rng = seeded_rng(seed);
    let report = collapse_darkness_check(&psi_n, &phi_m, &zero_based, trials, tol, &mut rng)?;
    let remnant: Value = serde_json::to_value(StateJson::from_state(&report.remnant))
        .map_err(|e| Failure::Usage(e.to_string()))?;
    emit(&json!({
        "seed": seed,
        "parties": parties,
        "remnant": remnant,
        "norm": report.remnant_norm,
        "outcome": report.outcome,
        "verdict": report.verdict,
    }))?;
    Ok(report.outcome != CollapseOutcome::NotDark)
}

/// Logical inputs of the simulation: the poles, four equator points and one
/// generic state of the logical Bloch sphere.
fn logical_inputs() -> Vec<(C64, C64)> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        (c(1.0, 0.0), c(0.0, 0.0)),
        (c(0.0, 0.0), c(1.0, 0.0)),
        (c(h, 0.0), c(h, 0.0)),
        (c(h, 0.0), c(-h, 0.0)),
        (c(h, 0.0), c(0.0, h)),
        (c(h, 0.0), c(0.0, -h)),
        (c(0.6, 0.0), c(0.0, 0.8)),
    ]
}

fn dfs_sim(cli: &Cli, samples: usize, group: GroupArg) -> Run {
    let seed = seed(cli);
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    let spec = ChannelSpec::new(Noise::Collective(group.into()), samples)?;
    let report = dfs_experiment(&logical_inputs(), &spec, &mut seeded_rng(seed))?;
    let pass = report.encoded_min_fidelity >= 1.0 - tol;
    emit(&json!({
        "seed": seed,
        "samples": report.samples,
        "group": group_name(group.into()),
        "encoded_min_fidelity": report.encoded_min_fidelity,
        "encoded_mean_fidelity": report.encoded_mean_fidelity,
        "bare_mean_fidelity": report.bare_mean_fidelity,
        "bare_min_fidelity": report.bare_min_fidelity,
        "max_shot_deviation": report.max_shot_deviation,
        "baseline": report.baseline,
        "records": report.records,
    }))?;
    Ok(pass)
}
