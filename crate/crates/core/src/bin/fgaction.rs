use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use fgaction::chain::{
    chain_recurrent_set, cr_core, is_isolated_cr, spectral_decomposition, ssp_profile, weak_chain_classes, Certificate,
    SspOptions, ThresholdLadder, WeakMode,
};
use fgaction::document::{load_path, LoadedAction};
use fgaction::dynamics::{expansive_constant, generator_consistency, separation_table, shadowing_profile};
use fgaction::gh::{
    gh_action_distance, gh_space_distance, strong_gh_distance, synthesize_semiconjugacy, CandidateMap, Engine,
    GhOptions, StabilityParams,
};
use fgaction::report::{AnalysisReport, CertificateKind, InputRef};
use fgaction::{fixtures, scalar, validate_cover, Error, GroupAction, Scalar, Semantics};

/// Exact analyses of group actions on finite metric spaces.
///
/// Inputs are action files (TOML) or built-in fixtures written `fixture:NAME`.
/// Reports are JSON on stdout or in `--out`. Exit status: 0 when the analysis
/// completed (negative verdicts included), 2 on invalid input, 3 when a budget
/// ran out and the report only holds certified bounds.
#[derive(Parser)]
#[command(name = "fgaction", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Pseudo-orbit / chain scale.
    #[arg(long, global = true)]
    delta: Option<String>,
    /// Tracing / transitivity scale.
    #[arg(long, global = true)]
    epsilon: Option<String>,
    /// Stability scale η.
    #[arg(long, global = true)]
    eta: Option<String>,
    /// Cayley ball radius; defaults to the whole realized group.
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Half-length of sequential pseudo-orbit windows.
    #[arg(long, global = true, default_value_t = 2)]
    window: usize,
    /// Node budget for searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Comma-separated δ values replacing the realized distance ladder.
    #[arg(long, global = true)]
    ladder: Option<String>,
    /// Seed for sampled windows when an exhaustive search exceeds the budget.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 256)]
    samples: usize,
    /// `realized` or `presented`.
    #[arg(long, global = true, default_value = "realized")]
    semantics: String,
    /// Comma-separated map table (point indices), e.g. for `stability`.
    #[arg(long, global = true)]
    map: Option<String>,
    /// Exhaustive, branch-and-bound or auto map search.
    #[arg(long, global = true, default_value = "auto")]
    engine: String,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate an action file.
    Validate { input: String },
    /// List the Cayley ball up to `--horizon`.
    Ball { input: String },
    /// Separation table summary and expansive constant.
    Expansive { input: String },
    /// Ball-cover generators at each radius (ladder probes by default).
    GeneratorCheck { input: String },
    /// Shadowing profile at `--epsilon`.
    Shadowing { input: String },
    /// Chain recurrent set at `--delta`, or the core over the ladder.
    Cr { input: String },
    /// Weak-chain classes at `--delta`, transitivity at `--epsilon`.
    WeakClasses { input: String },
    /// Sequential shadowing profile at `--epsilon` and `--window`.
    Ssp { input: String },
    /// Spectral decomposition check.
    Decompose { input: String },
    /// Gromov-Hausdorff distance of the two spaces.
    GhSpace { first: String, second: String },
    /// Symmetric equivariant distance of two actions.
    GhAction { first: String, second: String },
    /// Strong equivariant distance (maps from the second space to the first).
    GhStrong { first: String, second: String },
    /// Semiconjugacy from the second action to the first along `--map`.
    Stability { first: String, second: String },
    /// Validate the `[covering]` section of COVER against BASE.
    CoverCheck { base: String, cover: String },
    /// List built-in fixtures.
    Fixtures,
}

enum Failure {
    Input(Error),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Input(other),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn load(spec: &str) -> Outcome<(LoadedAction, InputRef)> {
    let loaded = match spec.strip_prefix("fixture:") {
        Some(name) => fixtures::load(name)?,
        None => load_path(std::path::Path::new(spec))?,
    };
    let r = InputRef::of(&loaded, spec);
    Ok((loaded, r))
}

fn number(flag: &str, value: &Option<String>) -> Outcome<Scalar> {
    let text = value
        .as_ref()
        .ok_or_else(|| Failure::Input(Error::InvalidParameter(format!("--{flag} is required"))))?;
    Ok(scalar::parse(text)?)
}

fn list<T: std::str::FromStr>(text: &str) -> Outcome<Vec<T>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Failure::Input(Error::InvalidNumber(t.to_string()))))
        .collect()
}

impl Opts {
    fn horizon(&self) -> usize {
        self.horizon.unwrap_or(usize::MAX)
    }

    fn semantics(&self) -> Outcome<Semantics> {
        Ok(self.semantics.parse()?)
    }

    fn ladder(&self, action: &GroupAction) -> Outcome<ThresholdLadder> {
        match &self.ladder {
            None => Ok(ThresholdLadder::for_action(action)),
            Some(text) => {
                let values = text.split(',').map(scalar::parse).collect::<Result<Vec<_>, _>>()?;
                Ok(ThresholdLadder::from_values(values))
            }
        }
    }

    fn gh(&self) -> Outcome<GhOptions> {
        let engine = match self.engine.as_str() {
            "auto" => Engine::Auto,
            "exhaustive" => Engine::Exhaustive,
            "branch-and-bound" | "bnb" => Engine::BranchAndBound,
            other => return Err(Failure::Input(Error::InvalidParameter(format!("unknown engine `{other}`")))),
        };
        Ok(GhOptions { budget: self.budget, engine })
    }

    fn ssp(&self) -> SspOptions {
        SspOptions { budget: self.budget, seed: self.seed, samples: self.samples }
    }

    fn base_params(&self, report: AnalysisReport) -> Outcome<AnalysisReport> {
        Ok(report
            .parameter("semantics", self.semantics()?)
            .parameter("horizon", self.horizon.map_or(json!("group"), |k| json!(k)))
            .parameter("budget", self.budget))
    }
}

fn horizon_cert(limited: bool) -> CertificateKind {
    if limited {
        CertificateKind::HorizonLimited
    } else {
        CertificateKind::Exact
    }
}

fn text(v: &Scalar) -> String {
    scalar::format(v)
}

#[derive(Serialize)]
struct ValidateSummary {
    points: usize,
    generators: usize,
    labels: Vec<String>,
    realized_elements: usize,
    non_identity_elements: usize,
    commutative: bool,
    relations: usize,
    order: fgaction::PresentedOrder,
    covering: Option<serde_json::Value>,
}

fn run(cli: &Cli) -> Outcome<String> {
    let o = &cli.opts;
    let report = match &cli.command {
        Command::Fixtures => {
            let names: Vec<&str> = fixtures::names().collect();
            return Ok(serde_json::to_string_pretty(&names).expect("names serialize") + "\n");
        }
        Command::Validate { input } => {
            let (f, r) = load(input)?;
            let a = &f.action;
            let group = a.group();
            let covering = f.covering.as_ref().map(|c| json!({ "delta0": text(&c.delta0()), "points": c.projection().len() }));
            AnalysisReport::new("validate", vec![r]).results(ValidateSummary {
                points: a.space().len(),
                generators: a.generators().len(),
                labels: a.generators().labels().to_vec(),
                realized_elements: group.len(),
                non_identity_elements: group.non_identity().count(),
                commutative: a.is_commutative(),
                relations: a.generators().relations().len(),
                order: a.generators().order(),
                covering,
            })
        }
        Command::Ball { input } => {
            let (f, r) = load(input)?;
            let a = &f.action;
            let ball = a.cayley_ball(o.horizon());
            let elements: Vec<_> = ball
                .elements()
                .iter()
                .map(|g| {
                    json!({
                        "word": g.witness().display(a.generators()).to_string(),
                        "length": g.length(),
                        "table": g.table().table()[..a.space().len()].to_vec(),
                    })
                })
                .collect();
            o.base_params(AnalysisReport::new("ball", vec![r]))?
                .certify(horizon_cert(!ball.is_saturated()))
                .results(json!({ "size": ball.len(), "saturated": ball.is_saturated(), "elements": elements }))
        }
        Command::Expansive { input } => {
            let (f, r) = load(input)?;
            let table = separation_table(&f.action, o.budget);
            let c = expansive_constant(&table)?;
            let cert = if table.all_exact() { CertificateKind::Exact } else { CertificateKind::BudgetBracket };
            AnalysisReport::new("expansive", vec![r]).parameter("budget", o.budget).certify(cert).results(json!({
                "expansive_constant": c.map(|c| text(&c)),
                "pair_orbits": table.orbit_count(),
                "separation_exact": table.all_exact(),
            }))
        }
        Command::GeneratorCheck { input } => {
            let (f, r) = load(input)?;
            let radii = o.ladder(&f.action)?.probes();
            let g = generator_consistency(&f.action, &radii)?;
            AnalysisReport::new("generator-check", vec![r]).results(g)
        }
        Command::Shadowing { input } => {
            let (f, r) = load(input)?;
            let eps = number("epsilon", &o.epsilon)?;
            let ladder = o.ladder(&f.action)?;
            let p = shadowing_profile(&f.action, o.horizon(), eps, &ladder, o.budget)?;
            let cert = if !p.exact { CertificateKind::BudgetBracket } else { horizon_cert(p.horizon_limited) };
            o.base_params(AnalysisReport::new("shadowing", vec![r]))?
                .parameter("epsilon", text(&eps))
                .certify(cert)
                .results(p)
        }
        Command::Cr { input } => {
            let (f, r) = load(input)?;
            let sem = o.semantics()?;
            let report = o.base_params(AnalysisReport::new("cr", vec![r]))?;
            match &o.delta {
                Some(_) => {
                    let delta = number("delta", &o.delta)?;
                    let cr = chain_recurrent_set(&f.action, o.horizon(), delta, sem, o.budget)?;
                    let cert = if cr.unknown.is_empty() { CertificateKind::Exact } else { CertificateKind::BudgetBracket };
                    report.parameter("delta", text(&delta)).certify(cert).results(cr)
                }
                None => {
                    let ladder = o.ladder(&f.action)?;
                    let core = cr_core(&f.action, o.horizon(), sem, &ladder, o.budget)?;
                    let iso = is_isolated_cr(&f.action, o.horizon(), sem, o.budget)?;
                    let cert = if !core.exact { CertificateKind::BudgetBracket } else { horizon_cert(core.horizon_limited) };
                    report.certify(cert).results(json!({ "core": core, "isolation": iso }))
                }
            }
        }
        Command::WeakClasses { input } => {
            let (f, r) = load(input)?;
            let delta = number("delta", &o.delta)?;
            let eps = o.epsilon.as_ref().map_or(Ok(delta), |_| number("epsilon", &o.epsilon))?;
            let d = weak_chain_classes(&f.action, delta, eps, WeakMode::CycleMembership, o.semantics()?)?;
            AnalysisReport::new("weak-classes", vec![r])
                .parameter("delta", text(&delta))
                .parameter("epsilon", text(&eps))
                .parameter("semantics", o.semantics()?)
                .results(d)
        }
        Command::Ssp { input } => {
            let (f, r) = load(input)?;
            let eps = number("epsilon", &o.epsilon)?;
            let ladder = o.ladder(&f.action)?;
            let p = ssp_profile(&f.action, eps, o.window, o.horizon(), o.semantics()?, &ladder, o.ssp())?;
            let cert = ssp_cert(p.certificate, p.horizon_limited);
            o.base_params(AnalysisReport::new("ssp", vec![r]))?
                .parameter("epsilon", text(&eps))
                .parameter("window", o.window)
                .parameter("seed", o.seed)
                .certify(cert)
                .results(p)
        }
        Command::Decompose { input } => {
            let (f, r) = load(input)?;
            let eps = number("epsilon", &o.epsilon)?;
            let delta = match &o.delta {
                Some(_) => number("delta", &o.delta)?,
                None => ThresholdLadder::for_action(&f.action).finest_probe(),
            };
            let s = spectral_decomposition(
                &f.action,
                delta,
                eps,
                o.window,
                o.horizon(),
                o.semantics()?,
                WeakMode::CycleMembership,
                o.ssp(),
            )?;
            let cert = ssp_cert(s.ssp.certificate, s.ssp.horizon_limited);
            o.base_params(AnalysisReport::new("decompose", vec![r]))?
                .parameter("delta", text(&delta))
                .parameter("epsilon", text(&eps))
                .parameter("window", o.window)
                .certify(cert)
                .results(json!({ "verified": s.verified(), "report": s }))
        }
        Command::GhSpace { first, second } => {
            let (a, ra) = load(first)?;
            let (b, rb) = load(second)?;
            let g = gh_space_distance(a.action.space(), b.action.space(), o.gh()?);
            gh_report("gh-space", vec![ra, rb], o, g.exact).results(g)
        }
        Command::GhStrong { first, second } => {
            let (a, ra) = load(first)?;
            let (b, rb) = load(second)?;
            let g = strong_gh_distance(&a.action, &b.action, o.gh()?)?;
            gh_report("gh-strong", vec![ra, rb], o, g.exact).results(g)
        }
        Command::GhAction { first, second } => {
            let (a, ra) = load(first)?;
            let (b, rb) = load(second)?;
            let g = gh_action_distance(&a.action, &b.action, o.gh()?)?;
            gh_report("gh-action", vec![ra, rb], o, g.exact()).results(json!({ "value": text(&g.value()), "detail": g }))
        }
        Command::Stability { first, second } => {
            let (a, ra) = load(first)?;
            let (b, rb) = load(second)?;
            let epsilon = number("epsilon", &o.epsilon)?;
            let eta = number("eta", &o.eta)?;
            let i = match &o.map {
                Some(t) => CandidateMap::new(b.action.space(), a.action.space(), list(t)?)?,
                None => CandidateMap::identity(b.action.space().len()),
            };
            let s = synthesize_semiconjugacy(&a.action, &b.action, &i, StabilityParams { epsilon, eta, budget: o.budget })?;
            AnalysisReport::new("stability", vec![ra, rb])
                .parameter("epsilon", text(&epsilon))
                .parameter("eta", text(&eta))
                .parameter("map", &i.table)
                .results(json!({ "certified": s.certified(), "semiconjugacy": s }))
        }
        Command::CoverCheck { base, cover } => {
            let (b, rb) = load(base)?;
            let (c, rc) = load(cover)?;
            let pi = c.covering.clone().ok_or_else(|| {
                Failure::Input(Error::Document(format!("{cover}: no [covering] section")))
            })?;
            let report = validate_cover(&pi, &b.action, &c.action)?;
            AnalysisReport::new("cover-check", vec![rb, rc])
                .parameter("delta0", text(&pi.delta0()))
                .results(json!({ "valid": report.is_valid(), "report": report }))
        }
    };
    if report.certificate == CertificateKind::BudgetBracket {
        let json = report.to_json();
        emit(&json, o)?;
        return Err(Failure::Budget("budget exhausted; report holds certified bounds".into()));
    }
    Ok(report.to_json())
}

fn ssp_cert(c: Certificate, limited: bool) -> CertificateKind {
    match c {
        Certificate::LowerBound => CertificateKind::BudgetBracket,
        Certificate::Sampled => CertificateKind::Sampled,
        Certificate::Exact => horizon_cert(limited),
    }
}

fn gh_report(name: &str, inputs: Vec<InputRef>, o: &Opts, exact: bool) -> AnalysisReport {
    AnalysisReport::new(name, inputs)
        .parameter("budget", o.budget)
        .parameter("engine", &o.engine)
        .certify(if exact { CertificateKind::Exact } else { CertificateKind::BudgetBracket })
}

fn emit(json: &str, o: &Opts) -> Outcome<()> {
    match &o.out {
        Some(path) => std::fs::write(path, json)
            .map_err(|e| Failure::Input(Error::Document(format!("{}: {e}", path.display())))),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|json| emit(&json, &cli.opts)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget: {msg}");
            ExitCode::from(3)
        }
    }
}
