//! `decostab` — semistability checks, Jordan-Hölder filtrations, GIT point
//! stability, theorem-verification suites and δ-strata tables for decorated
//! generalized parabolic bundle models.
//!
//! Exit codes: 0 = (semi)stable / all checks clean, 1 = unstable or a
//! negative domain answer, 2 = input or validation error.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use decostab::document::ModelDocument;
use decostab::enumerate::{
    enumerate_models, run_suite, CheckRecord, EnumerationBounds, Suite, VerifyOptions,
};
use decostab::gitpoint::{
    default_l0, default_m0, equivalence_check, is_git_semistable_point, linearization_ratios,
    point_from_bundle,
};
use decostab::jh::jordan_holder;
use decostab::model::{BundleModel, SubIdx, WeightedFiltration};
use decostab::rational::{format_q, parse_q, qi};
use decostab::stability::{
    is_2dgpb_semistable, is_dgpb_semistable, is_fr_semistable, mu_subsheaf, p_one_step, WeightGrid,
};
use decostab::{Error, Q};

#[derive(Parser)]
#[command(
    name = "decostab",
    version,
    about = "Exact semistability calculator for decorated generalized parabolic bundles",
    after_help = "Model documents and report records are documented in docs/schema.md; \
                  DECOSTAB_THREADS caps the verification workers."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a model document for (semi)stability.
    Check(CheckArgs),
    /// Compute the Jordan-Hölder filtration and graded object.
    Jh(JhArgs),
    /// GIT point stability and the equivalence with bundle semistability.
    Git(GitArgs),
    /// Run the exhaustive verification suites.
    Verify(VerifyArgs),
    /// Verdicts across a δ grid with the exact wall locations.
    Strata(StrataArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Dgpb,
    #[value(name = "2dgpb")]
    TwoDgpb,
    Fr,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessFormat {
    Human,
    Json,
}

fn q_arg(s: &str) -> Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

#[derive(Args)]
struct CheckArgs {
    /// Model document (JSON).
    file: String,
    /// Stability parameter δ as "p/q".
    #[arg(long, value_parser = q_arg)]
    delta: Q,
    /// Second parameter for --mode 2dgpb (defaults to δ).
    #[arg(long, value_parser = q_arg)]
    delta2: Option<Q>,
    #[arg(long, value_enum, default_value = "dgpb")]
    mode: Mode,
    /// Require strict stability for exit code 0.
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value = "human")]
    witness_format: WitnessFormat,
    /// Weight numerators 1..=N for the filtration sweep.
    #[arg(long, default_value_t = 3)]
    weight_max: i64,
}

#[derive(Args)]
struct JhArgs {
    file: String,
    #[arg(long, value_parser = q_arg)]
    delta: Q,
}

#[derive(Args)]
struct GitArgs {
    file: String,
    /// Section twist m (default: the document's value, else the model m0).
    #[arg(long)]
    m: Option<i64>,
    /// Sampled twists l, comma separated (default: l0, 2*l0, 4*l0).
    #[arg(long, value_delimiter = ',')]
    l_samples: Option<Vec<i64>>,
    /// δ (default: the document's value, else 1).
    #[arg(long, value_parser = q_arg)]
    delta: Option<Q>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = 3)]
    r_max: u32,
    /// Absolute bound for bundle and subobject degrees.
    #[arg(long = "d-max", default_value_t = 2)]
    d_max: i64,
    /// Genus values, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    genus: Vec<u32>,
    /// Lower end of the qdim range (with --qdim-max; default pins dim R = r).
    #[arg(long)]
    qdim_min: Option<u32>,
    #[arg(long)]
    qdim_max: Option<u32>,
    #[arg(long, default_value_t = 3)]
    a_max: u32,
    #[arg(long, default_value_t = 3)]
    weight_max: i64,
    #[arg(long, default_value_t = 6)]
    catalog_max: usize,
}

impl BoundsArgs {
    fn to_bounds(&self) -> Result<EnumerationBounds, Error> {
        let qdim_range = match (self.qdim_min, self.qdim_max) {
            (None, None) => None,
            (Some(lo), Some(hi)) if lo <= hi => Some((lo, hi)),
            _ => {
                return Err(Error::Validation(
                    "qdim-min and qdim-max must be given together, with min <= max".into(),
                ))
            }
        };
        Ok(EnumerationBounds {
            r_max: self.r_max.max(1),
            d_abs_max: self.d_max.max(0),
            genus_set: self.genus.clone(),
            qdim_range,
            a_max: self.a_max.max(1),
            weight_max: self.weight_max.max(1),
            catalog_max: self.catalog_max.max(2),
        })
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// δ values for the fr, jh and git suites.
    #[arg(long, value_delimiter = ',', value_parser = q_arg, default_value = "1/2,1,2")]
    deltas: Vec<Q>,
    /// δ values for the Segre verdict comparison.
    #[arg(long, value_delimiter = ',', value_parser = q_arg, default_value = "1/2,1")]
    segre_deltas: Vec<Q>,
    /// Fixed m for the git suite (default: per-model m0).
    #[arg(long)]
    m: Option<i64>,
    /// Fixed l samples for the git suite.
    #[arg(long, value_delimiter = ',')]
    l_samples: Option<Vec<i64>>,
    /// Write the JSON-lines report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct StrataArgs {
    #[command(flatten)]
    bounds: BoundsArgs,
    /// δ grid, comma separated "p/q" values.
    #[arg(long, value_delimiter = ',', value_parser = q_arg, default_value = "1/2,1,2")]
    delta_grid: Vec<Q>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Check(args) => cmd_check(args),
        Cmd::Jh(args) => cmd_jh(args),
        Cmd::Git(args) => cmd_git(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Strata(args) => cmd_strata(args),
    }
}

fn load(path: &str) -> Result<ModelDocument, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Validation(format!("{path}: {e}")))?;
    ModelDocument::from_json(&text)
}

fn filtration_human(model: &BundleModel, filt: &WeightedFiltration) -> String {
    let mut parts = vec!["0".to_string()];
    for (&step, &w) in filt.steps.iter().zip(&filt.weights) {
        let s = model.sub(step);
        parts.push(format!(
            "{}({},{},{};k{})[α={}]",
            s.id,
            s.rank,
            s.degree,
            s.qdim,
            model.kappa(step),
            format_q(w)
        ));
    }
    parts.push("E".to_string());
    parts.join(" ⊂ ")
}

fn subobject_human(model: &BundleModel, f: SubIdx) -> String {
    let s = model.sub(f);
    format!(
        "{}({},{},{};k{})",
        s.id,
        s.rank,
        s.degree,
        s.qdim,
        model.kappa(f)
    )
}

fn filtration_json(model: &BundleModel, filt: &WeightedFiltration) -> serde_json::Value {
    let steps: Vec<serde_json::Value> = filt
        .steps
        .iter()
        .zip(&filt.weights)
        .map(|(&step, &w)| {
            let s = model.sub(step);
            serde_json::json!({
                "id": s.id,
                "rank": s.rank,
                "degree": s.degree,
                "qdim": s.qdim,
                "kappa": model.kappa(step),
                "weight": format_q(w),
            })
        })
        .collect();
    serde_json::json!({ "steps": steps })
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, Error> {
    let doc = load(&args.file)?;
    let model = doc.build_model()?;
    let grid = WeightGrid::new((1..=args.weight_max.max(1)).map(qi).collect())?;

    let (verdict, margin, witness_human, witness_json) = match args.mode {
        Mode::Dgpb => {
            let j = is_dgpb_semistable(&model, args.delta, &grid)?;
            let (h, js) = match &j.witness {
                Some(w) => (
                    Some(filtration_human(&model, w)),
                    Some(filtration_json(&model, w)),
                ),
                None => (None, None),
            };
            (j.verdict, j.margin, h, js)
        }
        Mode::TwoDgpb => {
            let second = doc.build_second(&model)?.ok_or_else(|| {
                Error::Validation("mode 2dgpb needs a second_decoration in the document".into())
            })?;
            let delta2 = args.delta2.unwrap_or(args.delta);
            let j = is_2dgpb_semistable(&model, &second, args.delta, delta2, &grid)?;
            let (h, js) = match &j.witness {
                Some(w) => (
                    Some(filtration_human(&model, w)),
                    Some(filtration_json(&model, w)),
                ),
                None => (None, None),
            };
            (j.verdict, j.margin, h, js)
        }
        Mode::Fr => {
            let j = is_fr_semistable(&model, args.delta);
            let (h, js) = match j.witness {
                Some(f) => (
                    Some(subobject_human(&model, f)),
                    Some(serde_json::json!({ "subobject": model.sub(f).id })),
                ),
                None => (None, None),
            };
            (j.verdict, j.margin, h, js)
        }
    };

    match args.witness_format {
        WitnessFormat::Human => {
            println!("verdict: {}", verdict.label());
            match margin {
                Some(v) => println!("functional minimum: {}", format_q(v)),
                None => println!("functional minimum: none (no proper subobject)"),
            }
            if let Some(w) = witness_human {
                println!("witness: {w}");
            }
        }
        WitnessFormat::Json => {
            let out = serde_json::json!({
                "verdict": verdict,
                "margin": margin.map(format_q),
                "witness": witness_json,
            });
            println!("{out}");
        }
    }

    let pass = if args.strict {
        verdict.is_stable()
    } else {
        verdict.is_semistable()
    };
    Ok(ExitCode::from(if pass { 0 } else { 1 }))
}

fn cmd_jh(args: JhArgs) -> Result<ExitCode, Error> {
    let doc = load(&args.file)?;
    let model = doc.build_model()?;
    match jordan_holder(&model, args.delta) {
        Ok(jh) => {
            println!("fr-slope: {}", format_q(jh.slope));
            let filt = WeightedFiltration::new(jh.steps.clone(), vec![qi(1); jh.steps.len()]);
            println!("filtration: {}", filtration_human(&model, &filt));
            println!("gr factors:");
            for f in jh.graded.factors() {
                println!(
                    "  rank {} degree {} qdim {} eps {}",
                    f.rank, f.degree, f.qdim, f.epsilon
                );
            }
            Ok(ExitCode::from(0))
        }
        Err(e @ (Error::NotSemistable | Error::CatalogIncomplete)) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e),
    }
}

fn cmd_git(args: GitArgs) -> Result<ExitCode, Error> {
    let doc = load(&args.file)?;
    let model = doc.build_model()?;
    let git = doc.git.clone().unwrap_or_default();
    let delta = args.delta.or(git.delta).unwrap_or_else(|| qi(1));
    let m = args
        .m
        .or(git.m)
        .unwrap_or_else(|| default_m0(&model, delta));
    let l0 = default_l0(m);
    let l_samples = args
        .l_samples
        .or(git.l_samples)
        .unwrap_or_else(|| vec![l0, 2 * l0, 4 * l0]);

    let ratios = linearization_ratios(&model, m, l_samples[0], delta)?;
    println!(
        "m = {m}, l samples = {l_samples:?}, δ = {}",
        format_q(delta)
    );
    println!(
        "linearization ratios: n2/n1 = {}, n3/n1 = {}",
        format_q(ratios.n2_over_n1),
        format_q(ratios.n3_over_n1)
    );

    let point = point_from_bundle(&model, m, l_samples[0], delta)?;
    let judgement = is_git_semistable_point(&point);
    match judgement.margin {
        Some(v) => println!(
            "point verdict: {} (margin {})",
            judgement.verdict.label(),
            format_q(v)
        ),
        None => println!(
            "point verdict: {} (no nontrivial subspace)",
            judgement.verdict.label()
        ),
    }
    if let Some(idx) = judgement.witness {
        println!("violating subspace: Y' from {}", point.subspaces[idx].id);
    }

    let report = equivalence_check(&model, m, &l_samples, delta)?;
    println!(
        "equivalence rows: {} checked, {}",
        report.rows.len(),
        if report.all_agree {
            "all signs agree"
        } else {
            "DISAGREEMENT"
        }
    );
    for row in &report.rows {
        println!(
            "  F={} l={}: substituted {} ≤ {} | leading {} ≤ {} | fr {} ≤ {} | {}",
            row.sub_id,
            row.l,
            format_q(row.substituted_lhs),
            format_q(row.substituted_rhs),
            format_q(row.leading_lhs),
            format_q(row.leading_rhs),
            format_q(row.fr_lhs),
            format_q(row.fr_rhs),
            if row.agree { "agree" } else { "DISAGREE" }
        );
    }

    let pass = judgement.verdict.is_semistable() && report.all_agree;
    Ok(ExitCode::from(if pass { 0 } else { 1 }))
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let suite: Suite = args.suite.parse()?;
    let bounds = args.bounds.to_bounds()?;
    let options = VerifyOptions {
        deltas: args.deltas.clone(),
        segre_deltas: args.segre_deltas.clone(),
        m: args.m,
        l_samples: args.l_samples.clone(),
    };

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => {
            Box::new(fs::File::create(path).map_err(|e| Error::Validation(format!("{path}: {e}")))?)
        }
        None => Box::new(std::io::stdout().lock()),
    };
    let mut write_error = None;
    let mut sink = |record: &CheckRecord| {
        if write_error.is_some() {
            return;
        }
        let line = serde_json::to_string(record).expect("records always serialize");
        if let Err(e) = writeln!(out, "{line}") {
            write_error = Some(e);
        }
    };
    let summaries = run_suite(suite, &bounds, &options, &mut sink)?;
    if let Some(e) = write_error {
        return Err(Error::Validation(format!("report write failed: {e}")));
    }
    let mut violations = 0;
    for s in &summaries {
        eprintln!(
            "suite {}: checked={} violations={}",
            s.suite, s.checked, s.violations
        );
        violations += s.violations;
    }
    Ok(ExitCode::from(if violations == 0 { 0 } else { 1 }))
}

fn cmd_strata(args: StrataArgs) -> Result<ExitCode, Error> {
    let bounds = args.bounds.to_bounds()?;
    if args.delta_grid.is_empty() {
        return Err(Error::Validation("delta-grid must be nonempty".into()));
    }
    for &d in &args.delta_grid {
        if d <= qi(0) {
            return Err(Error::Validation(
                "delta-grid values must be positive".into(),
            ));
        }
    }
    let grid = WeightGrid::new((1..=bounds.weight_max).map(qi).collect())?;
    for model in enumerate_models(&bounds) {
        let mut cells = Vec::new();
        for &delta in &args.delta_grid {
            let j = is_dgpb_semistable(&model, delta, &grid)?;
            cells.push(format!("{}:{}", format_q(delta), j.verdict.label()));
        }
        // walls: δ where the one-step functional P(F) + δ μ(F, E) flips sign
        let mut walls = Vec::new();
        for f in model.proper() {
            let p = p_one_step(&model, f);
            let mu = mu_subsheaf(&model, f);
            if mu != qi(0) {
                let wall = -p / mu;
                if wall > qi(0) {
                    walls.push((wall, model.sub(f).id.clone()));
                }
            }
        }
        walls.sort();
        walls.dedup();
        let wall_text = if walls.is_empty() {
            "none".to_string()
        } else {
            walls
                .iter()
                .map(|(w, id)| format!("{}({})", format_q(*w), id))
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!(
            "{} | {} | walls: {}",
            model.brief(),
            cells.join(" "),
            wall_text
        );
    }
    Ok(ExitCode::from(0))
}
