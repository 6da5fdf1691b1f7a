//! Random walks on representation images of mapping classes, classified by
//! pseudo-Anosov proxy conditions, with exponential-decay fits.

mod classify;
mod fit;
mod sieve;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use classify::{classify_pa_proxy, classify_polynomial, fires_any, Classifier, ClassifierSet};
pub use fit::{fit_decay, fit_log_linear, DecayFit};
pub use sieve::{check_sieve_conditions, congruence_generators, GapEvidence, PairCheck, PrimeCheck, SieveOptions, SieveReport};

use crate::error::{Error, Result};
use crate::finite::wilson_interval;
use crate::linalg::IntMatrix;
use crate::poly::Factorizer;
use crate::prym::PrymModule;
use crate::surface::{homology_matrix, humphries_letters, McgWord, SurfaceModel};

/// Which linear image of the mapping class group the walk runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    /// Action on `H_1(S; Z)`, in `Sp(2g, Z)`.
    Homology,
    /// Prym representation of the Torelli group, in `PSp(2g-2, Z)`.
    Prym,
}

impl Representation {
    pub fn is_projective(self) -> bool {
        matches!(self, Representation::Prym)
    }

    pub fn dim(self, genus: usize) -> usize {
        match self {
            Representation::Homology => 2 * genus,
            Representation::Prym => 2 * genus.saturating_sub(1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Representation::Homology => "homology",
            Representation::Prym => "prym",
        }
    }

    /// Image of a word, sign-canonical in the projective case.
    pub fn image(self, genus: usize, w: &McgWord) -> Result<IntMatrix> {
        match self {
            Representation::Homology => homology_matrix(w, &SurfaceModel::new(genus)?),
            Representation::Prym => Ok(PrymModule::new(genus)?.rho_word(w)?.into_matrix()),
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "homology" => Ok(Representation::Homology),
            "prym" => Ok(Representation::Prym),
            other => Err(Error::InvalidArgument(format!("unknown representation `{other}`"))),
        }
    }
}

/// A finite generating multiset for the walk, given by representation images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    elements: Vec<IntMatrix>,
    labels: Vec<String>,
    projective: bool,
    odd_relation_attested: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityIssue {
    MissingInverse { label: String },
    NoOddRelation,
}

impl fmt::Display for AdmissibilityIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibilityIssue::MissingInverse { label } => write!(f, "inverse of `{label}` is missing"),
            AdmissibilityIssue::NoOddRelation => {
                f.write_str("no identity element and no attested odd relation (Cayley graph may be bipartite)")
            }
        }
    }
}

impl AdmissibleSet {
    pub fn new(elements: Vec<IntMatrix>, labels: Vec<String>, projective: bool) -> Result<Self> {
        if elements.len() != labels.len() {
            return Err(Error::DimensionMismatch { left: elements.len(), right: labels.len() });
        }
        if let Some(first) = elements.first() {
            if let Some(bad) = elements.iter().find(|m| m.dim() != first.dim()) {
                return Err(Error::DimensionMismatch { left: first.dim(), right: bad.dim() });
            }
        }
        let elements = if projective { elements.iter().map(IntMatrix::projective_canonical).collect() } else { elements };
        Ok(Self { elements, labels, projective, odd_relation_attested: false })
    }

    /// Images of the given words.
    pub fn from_words(rep: Representation, genus: usize, words: &[McgWord]) -> Result<Self> {
        let elements = words.iter().map(|w| rep.image(genus, w)).collect::<Result<Vec<_>>>()?;
        let labels = words.iter().map(|w| if w.is_empty() { "1".to_string() } else { w.to_string() }).collect();
        Self::new(elements, labels, rep.is_projective())
    }

    /// The identity, the standard generators and their inverses:
    /// Humphries twists for homology, the standard Torelli words for Prym.
    pub fn standard(rep: Representation, genus: usize) -> Result<Self> {
        let words: Vec<McgWord> = match rep {
            Representation::Homology => {
                SurfaceModel::new(genus)?;
                humphries_letters(genus).into_iter().map(McgWord::from).collect()
            }
            Representation::Prym => PrymModule::new(genus)?.standard_words(),
        };
        let mut all = vec![McgWord::empty()];
        for w in words {
            all.push(w.inverse());
            all.push(w);
        }
        Self::from_words(rep, genus, &all)
    }

    /// Adds the missing inverses.
    pub fn symmetrized(mut self) -> Result<Self> {
        for issue in self.issues() {
            if let AdmissibilityIssue::MissingInverse { label } = issue {
                let i = self.labels.iter().position(|l| *l == label).expect("label from this set");
                let inv = self.elements[i].inverse()?;
                self.elements.push(if self.projective { inv.projective_canonical() } else { inv });
                self.labels.push(format!("({label})^-1"));
            }
        }
        Ok(self)
    }

    /// Adds the identity if absent.
    pub fn with_identity(mut self) -> Self {
        if !self.contains_identity() {
            if let Some(d) = self.elements.first().map(IntMatrix::dim) {
                self.elements.push(IntMatrix::identity(d));
                self.labels.push("1".into());
            }
        }
        self
    }

    /// Records that the set satisfies an odd relation even without the identity.
    pub fn attest_odd_relation(mut self) -> Self {
        self.odd_relation_attested = true;
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.elements.first().map(IntMatrix::dim)
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn contains_identity(&self) -> bool {
        self.elements.iter().any(IntMatrix::is_identity)
    }

    fn normalize(&self, m: IntMatrix) -> IntMatrix {
        if self.projective {
            m.projective_canonical()
        } else {
            m
        }
    }

    fn issues(&self) -> Vec<AdmissibilityIssue> {
        let present: HashSet<&IntMatrix> = self.elements.iter().collect();
        let mut out = Vec::new();
        for (m, label) in self.elements.iter().zip(&self.labels) {
            let has_inverse = m.inverse().is_ok_and(|inv| present.contains(&self.normalize(inv)));
            if !has_inverse {
                out.push(AdmissibilityIssue::MissingInverse { label: label.clone() });
            }
        }
        if !self.contains_identity() && !self.odd_relation_attested {
            out.push(AdmissibilityIssue::NoOddRelation);
        }
        out
    }
}

/// Every admissibility violation of `s`; empty means admissible.
pub fn admissibility_issues(s: &AdmissibleSet) -> Result<Vec<AdmissibilityIssue>> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(s.issues())
}

pub fn validate_admissible(s: &AdmissibleSet) -> Result<()> {
    let issues = admissibility_issues(s)?;
    if issues.is_empty() {
        Ok(())
    } else {
        Err(Error::NotAdmissible(issues.iter().map(ToString::to_string).collect()))
    }
}

/// Steps `stride, 2 stride, ...` up to `max_steps`.
pub fn default_schedule(max_steps: usize, stride: usize) -> Vec<usize> {
    if stride == 0 {
        return Vec::new();
    }
    (stride..=max_steps).step_by(stride).collect()
}

#[derive(Clone, Debug)]
pub struct WalkExperiment {
    pub generators: AdmissibleSet,
    pub schedule: Vec<usize>,
    pub walks: u64,
    pub seed: u64,
    pub classifiers: ClassifierSet,
    pub factorizer: Factorizer,
    pub bootstrap_reps: usize,
}

impl WalkExperiment {
    pub fn new(generators: AdmissibleSet, schedule: Vec<usize>, walks: u64, seed: u64, classifiers: ClassifierSet) -> Result<Self> {
        let e = Self { generators, schedule, walks, seed, classifiers, factorizer: Factorizer::default(), bootstrap_reps: 1000 };
        e.check()?;
        Ok(e)
    }

    fn check(&self) -> Result<()> {
        if self.schedule.is_empty() || self.schedule.contains(&0) {
            return Err(Error::InvalidArgument("step schedule must be nonempty with every k >= 1".into()));
        }
        if self.walks == 0 || self.walks > u32::MAX as u64 {
            return Err(Error::InvalidArgument(format!("walk count {} out of range", self.walks)));
        }
        if *self.schedule.iter().max().expect("nonempty") > u32::MAX as usize {
            return Err(Error::InvalidArgument("step count out of range".into()));
        }
        Ok(())
    }
}

/// Per-step tally of walk outcomes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KRow {
    pub k: usize,
    pub hits: u64,
    /// Walks run at this step, including indeterminate ones.
    pub n: u64,
    /// `hits / (n - indeterminate)`.
    pub proportion: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub indeterminate: u64,
}

impl KRow {
    pub fn new(k: usize, hits: u64, n: u64, indeterminate: u64) -> Self {
        let det = n - indeterminate;
        let proportion = if det == 0 { 0.0 } else { hits as f64 / det as f64 };
        let (ci_low, ci_high) = wilson_interval(hits, det, 1.959_963_984_540_054);
        Self { k, hits, n, proportion, ci_low, ci_high, indeterminate }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayEstimate {
    pub seed: u64,
    pub rows: Vec<KRow>,
    pub fit: Option<DecayFit>,
    /// Why the fit is missing, when it is.
    pub fit_error: Option<String>,
}

impl DecayEstimate {
    pub fn total_walks(&self) -> u64 {
        self.rows.iter().map(|r| r.n).sum()
    }

    pub fn total_indeterminate(&self) -> u64 {
        self.rows.iter().map(|r| r.indeterminate).sum()
    }

    pub fn indeterminate_rate(&self) -> f64 {
        self.total_indeterminate() as f64 / self.total_walks().max(1) as f64
    }
}

/// Random generator indices of walk number `walk` observed at step `k`.
/// Every `(seed, k, walk)` triple has its own ChaCha stream.
pub fn walk_indices(seed: u64, k: usize, walk: u64, set_len: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((k as u64) << 32) | walk);
    (0..k).map(|_| rng.random_range(0..set_len)).collect()
}

/// Nonzero entries of `g - I`, so that right multiplication by `g` is a
/// sparse update. Transvection-type generators have very few.
#[derive(Clone, Debug)]
struct SparseStep {
    entries: Vec<(usize, usize, BigInt)>,
    targets: Vec<usize>,
}

impl SparseStep {
    fn new(g: &IntMatrix) -> Self {
        let n = g.dim();
        let mut entries = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let d = g.get(r, c) - if r == c { BigInt::one() } else { BigInt::zero() };
                if !d.is_zero() {
                    entries.push((r, c, d));
                }
            }
        }
        let mut targets: Vec<usize> = entries.iter().map(|e| e.1).collect();
        targets.sort_unstable();
        targets.dedup();
        Self { entries, targets }
    }

    /// `w <- w g` for a row-major `n x n` matrix `w`.
    fn apply(&self, w: &mut [BigInt], n: usize, scratch: &mut Vec<BigInt>) {
        if self.entries.is_empty() {
            return;
        }
        scratch.clear();
        scratch.resize(n * self.targets.len(), BigInt::zero());
        for (k, c, d) in &self.entries {
            let t = self.targets.binary_search(c).expect("target listed");
            for r in 0..n {
                let x = &w[r * n + k];
                if !x.is_zero() {
                    scratch[t * n + r] += x * d;
                }
            }
        }
        for (t, &c) in self.targets.iter().enumerate() {
            for r in 0..n {
                let delta = std::mem::take(&mut scratch[t * n + r]);
                w[r * n + c] += delta;
            }
        }
    }
}

struct Walker {
    dim: usize,
    steps: Vec<SparseStep>,
}

impl Walker {
    fn new(set: &AdmissibleSet) -> Result<Self> {
        let dim = set.dim().ok_or(Error::EmptySet)?;
        Ok(Self { dim, steps: set.elements().iter().map(SparseStep::new).collect() })
    }

    fn product(&self, indices: &[usize]) -> IntMatrix {
        let n = self.dim;
        let mut w: Vec<BigInt> = IntMatrix::identity(n).entries().to_vec();
        let mut scratch = Vec::new();
        for &i in indices {
            self.steps[i].apply(&mut w, n, &mut scratch);
        }
        IntMatrix::from_entries(n, w).expect("square")
    }
}

/// Product of the generators at `indices`, in order, by sparse updates.
pub fn walk_matrix(set: &AdmissibleSet, indices: &[usize]) -> Result<IntMatrix> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= set.len()) {
        return Err(Error::IndexOutOfRange(format!("generator index {bad} of {}", set.len())));
    }
    Ok(Walker::new(set)?.product(indices))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Hit,
    Miss,
    Indeterminate,
}

/// Runs the experiment with the proxy classifiers and fits the decay.
pub fn run_walks(e: &WalkExperiment) -> Result<DecayEstimate> {
    let classifiers = e.classifiers;
    let factorizer = e.factorizer;
    run_walks_with(e, move |m: &IntMatrix| fires_any(&m.char_poly(), classifiers, &factorizer))
}

/// Runs the experiment with an arbitrary membership predicate for the
/// target set; predicate errors are tallied as indeterminate.
pub fn run_walks_with<F>(e: &WalkExperiment, predicate: F) -> Result<DecayEstimate>
where
    F: Fn(&IntMatrix) -> Result<bool> + Sync,
{
    e.check()?;
    validate_admissible(&e.generators)?;
    let walker = Walker::new(&e.generators)?;
    let len = e.generators.len();
    let mut rows = Vec::with_capacity(e.schedule.len());
    for &k in &e.schedule {
        let outcomes: Vec<Outcome> = (0..e.walks)
            .into_par_iter()
            .map(|w| {
                let m = walker.product(&walk_indices(e.seed, k, w, len));
                match predicate(&m) {
                    Ok(true) => Outcome::Hit,
                    Ok(false) => Outcome::Miss,
                    Err(_) => Outcome::Indeterminate,
                }
            })
            .collect();
        let hits = outcomes.iter().filter(|&&o| o == Outcome::Hit).count() as u64;
        let indeterminate = outcomes.iter().filter(|&&o| o == Outcome::Indeterminate).count() as u64;
        rows.push(KRow::new(k, hits, e.walks, indeterminate));
    }
    let (fit, fit_error) = match fit_decay(&rows, e.bootstrap_reps, e.seed) {
        Ok(f) => (Some(f), None),
        Err(err) => (None, Some(err.to_string())),
    };
    Ok(DecayEstimate { seed: e.seed, rows, fit, fit_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transvection_pair() -> AdmissibleSet {
        let u = IntMatrix::from_rows(&[[1, 1], [0, 1]]).unwrap();
        let ui = u.inverse().unwrap();
        AdmissibleSet::new(vec![IntMatrix::identity(2), u, ui], vec!["1".into(), "u".into(), "u^-1".into()], false).unwrap()
    }

    #[test]
    fn admissibility_diagnostics() {
        assert!(validate_admissible(&transvection_pair()).is_ok());
        let u = IntMatrix::from_rows(&[[1, 1], [0, 1]]).unwrap();
        let lone = AdmissibleSet::new(vec![u.clone()], vec!["u".into()], false).unwrap();
        let issues = admissibility_issues(&lone).unwrap();
        assert!(issues.contains(&AdmissibilityIssue::MissingInverse { label: "u".into() }));
        let pair = AdmissibleSet::new(vec![u.clone(), u.inverse().unwrap()], vec!["u".into(), "v".into()], false).unwrap();
        assert_eq!(admissibility_issues(&pair).unwrap(), vec![AdmissibilityIssue::NoOddRelation]);
        assert!(validate_admissible(&pair.clone().attest_odd_relation()).is_ok());
        assert!(validate_admissible(&pair.with_identity()).is_ok());
        assert!(validate_admissible(&lone.symmetrized().unwrap().with_identity()).is_ok());
        let empty = AdmissibleSet::new(vec![], vec![], false).unwrap();
        assert_eq!(validate_admissible(&empty), Err(Error::EmptySet));
    }

    #[test]
    fn projective_inverse_up_to_sign() {
        // -u^-1 stands in for u^-1 in PSp
        let u = IntMatrix::from_rows(&[[1, 1], [0, 1]]).unwrap();
        let neg_inv = u.inverse().unwrap().neg();
        let s = AdmissibleSet::new(vec![u.clone(), neg_inv.clone()], vec!["u".into(), "v".into()], true).unwrap();
        assert!(validate_admissible(&s.attest_odd_relation()).is_ok());
        let s = AdmissibleSet::new(vec![u, neg_inv], vec!["u".into(), "v".into()], false).unwrap();
        assert_eq!(admissibility_issues(&s).unwrap().len(), 3);
    }

    #[test]
    fn standard_sets_are_admissible() {
        for g in 2..=4 {
            let s = AdmissibleSet::standard(Representation::Homology, g).unwrap();
            assert_eq!(s.len(), 1 + 2 * (3 * g - 1));
            validate_admissible(&s).unwrap();
        }
        let s = AdmissibleSet::standard(Representation::Prym, 3).unwrap();
        assert_eq!(s.len(), 17);
        validate_admissible(&s).unwrap();
        assert!(AdmissibleSet::standard(Representation::Prym, 2).is_err());
    }

    #[test]
    fn sparse_product_matches_dense() {
        let s = AdmissibleSet::standard(Representation::Prym, 3).unwrap();
        for w in 0..20 {
            let idx = walk_indices(7, 30, w, s.len());
            let dense = idx.iter().fold(IntMatrix::identity(4), |acc, &i| acc.multiply(&s.elements()[i]).unwrap());
            assert_eq!(walk_matrix(&s, &idx).unwrap(), dense);
        }
    }

    #[test]
    fn trivial_target_sets() {
        let e = WalkExperiment::new(transvection_pair(), vec![5, 10, 15], 50, 1, ClassifierSet::empty()).unwrap();
        let all = run_walks_with(&e, |_| Ok(true)).unwrap();
        assert!(all.rows.iter().all(|r| r.proportion == 1.0));
        let none = run_walks(&e).unwrap();
        assert!(none.rows.iter().all(|r| r.hits == 0 && r.proportion == 0.0));
        assert!(none.fit.is_none() && none.fit_error.is_some());
    }

    #[test]
    fn predicate_errors_are_indeterminate() {
        let e = WalkExperiment::new(transvection_pair(), vec![3], 40, 1, ClassifierSet::empty()).unwrap();
        let est = run_walks_with(&e, |_| Err(Error::BudgetExceeded { what: "test", limit: 0 })).unwrap();
        assert_eq!(est.rows[0].indeterminate, 40);
        assert_eq!(est.indeterminate_rate(), 1.0);
    }

    #[test]
    fn experiment_validation() {
        assert!(WalkExperiment::new(transvection_pair(), vec![], 10, 1, ClassifierSet::all()).is_err());
        assert!(WalkExperiment::new(transvection_pair(), vec![5], 0, 1, ClassifierSet::all()).is_err());
        assert_eq!(default_schedule(20, 5), vec![5, 10, 15, 20]);
        assert_eq!(default_schedule(100, 5).len(), 20);
    }

    #[test]
    fn walks_are_reproducible() {
        let s = AdmissibleSet::standard(Representation::Prym, 3).unwrap();
        let e = WalkExperiment::new(s, vec![5, 10, 15, 20], 200, 11, ClassifierSet::only(Classifier::Reducible)).unwrap();
        assert_eq!(run_walks(&e).unwrap(), run_walks(&e).unwrap());
    }
}
