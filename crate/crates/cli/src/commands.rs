use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;

use torelli_sieve::finite::{cayley_spectral_gap, reducible_density, FiniteGroupSpec, SpectralGap};
use torelli_sieve::poly::Factorizer;
use torelli_sieve::prym::PrymModule;
use torelli_sieve::surface::{humphries_letters, McgWord, SurfaceModel};
use torelli_sieve::walk::{
    check_sieve_conditions, congruence_generators, default_schedule, run_walks, validate_admissible, AdmissibleSet,
    ClassifierSet, Representation, SieveOptions, SieveReport, WalkExperiment,
};
use torelli_sieve::{Error, IntMatrix};

use crate::config::ExperimentConfig;
use crate::output::{Outputs, Stamp};
use crate::CliError;

/// Errors raised while turning the configuration into inputs.
fn setup(e: Error) -> CliError {
    match e {
        Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        _ => CliError::Config(e.to_string()),
    }
}

/// Errors raised by the computation itself.
fn run(e: Error) -> CliError {
    match e {
        Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        _ => CliError::Runtime(e.to_string()),
    }
}

pub struct Run {
    pub outputs: Outputs,
    pub stdout: String,
}

fn stamp(cfg: &ExperimentConfig) -> Stamp {
    Stamp::new(cfg.hash(), cfg.seed)
}

fn admissible_set(cfg: &ExperimentConfig) -> Result<AdmissibleSet, CliError> {
    let set = match &cfg.words {
        None => AdmissibleSet::standard(cfg.representation, cfg.genus).map_err(setup)?,
        Some(words) => {
            let words = words.iter().map(|w| w.parse::<McgWord>()).collect::<Result<Vec<_>, _>>().map_err(setup)?;
            let mut set = AdmissibleSet::from_words(cfg.representation, cfg.genus, &words).map_err(setup)?;
            if cfg.symmetrize {
                set = set.symmetrized().map_err(setup)?;
            }
            if cfg.include_identity {
                set = set.with_identity();
            }
            set
        }
    };
    let set = if cfg.attest_odd_relation { set.attest_odd_relation() } else { set };
    validate_admissible(&set).map_err(setup)?;
    Ok(set)
}

#[derive(Serialize)]
struct WalkSummary<'a> {
    #[serde(flatten)]
    stamp: &'a Stamp,
    representation: Representation,
    genus: usize,
    generators: usize,
    walks: u64,
    max_steps: usize,
    stride: usize,
    classifiers: String,
    alpha: Option<f64>,
    c: Option<f64>,
    alpha_ci: Option<[f64; 2]>,
    confidence: Option<f64>,
    bootstrap_reps: usize,
    used_k: Vec<usize>,
    dropped_k: Vec<usize>,
    fit_error: Option<String>,
    indeterminate: u64,
    indeterminate_rate: f64,
}

pub fn walk(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Run, CliError> {
    let set = admissible_set(cfg)?;
    let classifiers: ClassifierSet = cfg.classifiers.iter().copied().collect();
    let generators = set.len();
    let mut e = WalkExperiment::new(set, default_schedule(cfg.max_steps, cfg.stride), cfg.walks, cfg.seed, classifiers)
        .map_err(setup)?;
    e.factorizer = Factorizer { recombination_budget: cfg.budget.recombination, ..Factorizer::default() };
    e.bootstrap_reps = cfg.bootstrap_reps;
    let est = run_walks(&e).map_err(run)?;

    let stamp = stamp(cfg);
    let fit = est.fit.as_ref();
    let summary = WalkSummary {
        stamp: &stamp,
        representation: cfg.representation,
        genus: cfg.genus,
        generators,
        walks: cfg.walks,
        max_steps: cfg.max_steps,
        stride: cfg.stride,
        classifiers: classifiers.to_string(),
        alpha: fit.map(|f| f.alpha),
        c: fit.map(|f| f.c),
        alpha_ci: fit.map(|f| [f.alpha_ci_low, f.alpha_ci_high]),
        confidence: fit.map(|f| f.confidence),
        bootstrap_reps: cfg.bootstrap_reps,
        used_k: fit.map(|f| f.used_k.clone()).unwrap_or_default(),
        dropped_k: fit.map(|f| f.dropped_k.clone()).unwrap_or_default(),
        fit_error: est.fit_error.clone(),
        indeterminate: est.total_indeterminate(),
        indeterminate_rate: est.indeterminate_rate(),
    };
    let mut outputs = Outputs::new(out_dir);
    outputs.add_csv(&cfg.output.walk_csv, &stamp, &est.rows)?;
    outputs.add_json(&cfg.output.walk_json, &summary)?;

    let mut stdout = format!("{} walk, genus {}, {} walks, classifiers {}\n", cfg.representation, cfg.genus, cfg.walks, classifiers);
    for r in &est.rows {
        stdout += &format!("k={:<4} hits={:<7} proportion={:.5}\n", r.k, r.hits, r.proportion);
    }
    match fit {
        Some(f) => stdout += &format!("alpha = {:.5} [{:.5}, {:.5}], c = {:.4}\n", f.alpha, f.alpha_ci_low, f.alpha_ci_high, f.c),
        None => stdout += &format!("no decay fit: {}\n", est.fit_error.as_deref().unwrap_or("unknown")),
    }
    Ok(Run { outputs, stdout })
}

#[derive(Serialize)]
struct CensusRow {
    spec: String,
    method: String,
    total: u64,
    reducible: u64,
    density: f64,
    ci_low: f64,
    ci_high: f64,
    seed: Option<u64>,
}

pub fn census(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Run, CliError> {
    let c = &cfg.census;
    let spec = FiniteGroupSpec::new(c.n, c.p, c.projective).map_err(setup)?;
    let r = reducible_density(&spec, c.method, c.samples, cfg.seed, &cfg.budget.finite()).map_err(run)?;
    let row = CensusRow {
        spec: spec.to_string(),
        method: r.method.to_string(),
        total: r.total,
        reducible: r.reducible,
        density: r.density,
        ci_low: r.ci_low,
        ci_high: r.ci_high,
        seed: r.seed,
    };
    let stdout = format!("{}: {} reducible density {:.6} ({} of {})\n", row.spec, row.method, r.density, r.reducible, r.total);
    let mut outputs = Outputs::new(out_dir);
    outputs.add_csv(&cfg.output.census_csv, &stamp(cfg), &[row])?;
    Ok(Run { outputs, stdout })
}

#[derive(Serialize)]
struct GapSummary<'a> {
    #[serde(flatten)]
    stamp: &'a Stamp,
    representation: Representation,
    genus: usize,
    group: String,
    #[serde(flatten)]
    gap: &'a SpectralGap,
    tolerance: f64,
    heuristic: bool,
}

pub fn gap(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Run, CliError> {
    let (spec, gens) = congruence_generators(cfg.representation, cfg.genus, cfg.gap.p).map_err(setup)?;
    let gap = cayley_spectral_gap(&gens, &spec, &cfg.budget.finite(), cfg.gap.tolerance).map_err(run)?;
    let stamp = stamp(cfg);
    let summary = GapSummary {
        stamp: &stamp,
        representation: cfg.representation,
        genus: cfg.genus,
        group: spec.to_string(),
        gap: &gap,
        tolerance: cfg.gap.tolerance,
        heuristic: true,
    };
    let stdout = format!(
        "{spec}: spectral gap {:.6} (lambda_2 = {:.6}, {} vertices, degree {}, {} iterations)\n",
        gap.gap, gap.lambda2, gap.nodes, gap.degree, gap.iterations
    );
    let mut outputs = Outputs::new(out_dir);
    outputs.add_json(&cfg.output.gap_json, &summary)?;
    Ok(Run { outputs, stdout })
}

#[derive(Serialize)]
struct SieveSummary<'a> {
    #[serde(flatten)]
    stamp: &'a Stamp,
    condition1: Option<bool>,
    condition1_heuristic: bool,
    condition2: bool,
    condition3: bool,
    condition4: bool,
    report: &'a SieveReport,
}

pub fn check_sieve(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Run, CliError> {
    if cfg.representation != Representation::Prym {
        return Err(CliError::Config("check-sieve works with the prym representation".into()));
    }
    let opts = SieveOptions {
        budget: cfg.budget.finite(),
        exhaustive_up_to: cfg.sieve.exhaustive_up_to,
        census_samples: cfg.sieve.census_samples,
        seed: cfg.seed,
        gap_prime: cfg.sieve.spectral_gap.then_some(cfg.gap.p),
        gap_tolerance: cfg.gap.tolerance,
    };
    PrymModule::new(cfg.genus).map_err(setup)?;
    let report = check_sieve_conditions(cfg.genus, &cfg.primes, &opts).map_err(run)?;
    let stamp = stamp(cfg);
    let text = report.to_string();
    let summary = SieveSummary {
        stamp: &stamp,
        condition1: report.condition1(),
        condition1_heuristic: true,
        condition2: report.condition2(),
        condition3: report.condition3(),
        condition4: report.condition4(),
        report: &report,
    };
    let mut outputs = Outputs::new(out_dir);
    outputs.add_text(&cfg.output.sieve_txt, &stamp, &text);
    outputs.add_json(&cfg.output.sieve_json, &summary)?;
    Ok(Run { outputs, stdout: text })
}

/// `z1 + 4 z-1` style rendering of a coordinate vector.
fn combination(coords: &[BigInt], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in coords.iter().zip(labels) {
        if c.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        let negative = c.sign() == num_bigint::Sign::Minus;
        let mag = c.magnitude().to_string();
        let term = if mag == "1" { label.clone() } else { format!("{mag} {label}") };
        match (out.is_empty(), negative) {
            (true, false) => out += &term,
            (true, true) => out += &format!("-{term}"),
            (false, false) => out += &format!(" + {term}"),
            (false, true) => out += &format!(" - {term}"),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn dump_matrix(out: &mut String, title: &str, m: &IntMatrix, labels: &[String]) {
    *out += &format!("{title}\n{m}");
    for (k, label) in labels.iter().enumerate() {
        *out += &format!("  {label} -> {}\n", combination(&m.column(k), labels));
    }
    out.push('\n');
}

pub fn rep_dump(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Run, CliError> {
    let mut text = String::new();
    match cfg.representation {
        Representation::Prym => {
            let m = PrymModule::new(cfg.genus).map_err(setup)?;
            let labels = m.labels();
            text += &format!("prym representation, genus {}, basis {}\n\n", cfg.genus, labels.join(" "));
            dump_matrix(&mut text, "form (z_i, z_j)", m.form().gram(), &labels);
            for (w, img) in m.standard_generators().map_err(run)? {
                dump_matrix(&mut text, &format!("rho({w})"), img.matrix(), &labels);
            }
        }
        Representation::Homology => {
            let s = SurfaceModel::new(cfg.genus).map_err(setup)?;
            let labels = s.labels();
            text += &format!("homology representation, genus {}, basis {}\n\n", cfg.genus, labels.join(" "));
            dump_matrix(&mut text, "form (x, y)", s.form().gram(), &labels);
            for l in humphries_letters(cfg.genus) {
                dump_matrix(&mut text, &l.to_string(), &s.letter_matrix(l).map_err(run)?, &labels);
            }
        }
    }
    let mut outputs = Outputs::new(out_dir);
    outputs.add_text(&cfg.output.rep_dump, &stamp(cfg), &text);
    Ok(Run { outputs, stdout: text })
}
