use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{
    cayley_spectral_gap, group_order, reducible_density, Budget, CensusMethod, CensusResult, FiniteGroupSpec, SpectralGap,
};
use crate::linalg::ModMatrix;
use crate::prym::PrymModule;
use super::{AdmissibleSet, Representation};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveOptions {
    pub budget: Budget,
    /// Censuses of groups up to this order are exhaustive; larger ones are sampled.
    pub exhaustive_up_to: u64,
    pub census_samples: u64,
    pub seed: u64,
    /// Prime at which the Cayley-graph spectral gap is computed, if any.
    pub gap_prime: Option<u64>,
    pub gap_tolerance: f64,
}

impl Default for SieveOptions {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            exhaustive_up_to: 100_000,
            census_samples: 100_000,
            seed: 1,
            gap_prime: Some(3),
            gap_tolerance: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub p: u64,
    /// `|PSp(2g-2, F_p)|` in decimal.
    pub order: String,
    pub order_within_bound: bool,
    pub simple: bool,
    pub census: CensusResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairCheck {
    pub p: u64,
    pub q: u64,
    pub orders_differ: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapEvidence {
    pub p: u64,
    pub gap: SpectralGap,
    pub heuristic: bool,
}

/// The four sieve conditions for the congruence quotients
/// `Gamma_p = PSp(2g-2, F_p)` of the Prym image.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveReport {
    pub genus: usize,
    /// Exponent `d = (2g-2)^2` in the bound `|Gamma_p| <= p^d`.
    pub exponent: u32,
    pub primes: Vec<PrimeCheck>,
    pub pairs: Vec<PairCheck>,
    pub gap: Option<GapEvidence>,
    /// `1 - max` upper confidence bound of the reducible densities.
    pub density_margin: f64,
}

impl SieveReport {
    pub fn condition1(&self) -> Option<bool> {
        self.gap.as_ref().map(|g| g.gap.gap > 0.0)
    }

    pub fn condition2(&self) -> bool {
        self.primes.iter().all(|c| c.order_within_bound)
    }

    pub fn condition3(&self) -> bool {
        self.pairs.iter().all(|c| c.orders_differ) && self.primes.iter().all(|c| c.simple)
    }

    pub fn condition4(&self) -> bool {
        self.density_margin > 0.0
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for SieveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.genus - 1;
        writeln!(f, "sieve conditions for genus {} (Gamma_p = PSp({},F_p))", self.genus, 2 * n)?;
        match &self.gap {
            Some(g) => writeln!(
                f,
                "condition 1 [{}] spectral gap at p={}: {:.6} over {} vertices, degree {} (heuristic evidence, not a proof)",
                status(g.gap.gap > 0.0),
                g.p,
                g.gap.gap,
                g.gap.nodes,
                g.gap.degree
            )?,
            None => writeln!(f, "condition 1 [SKIP] no spectral gap requested")?,
        }
        writeln!(f, "condition 2 [{}] |Gamma_p| <= p^{}:", status(self.condition2()), self.exponent)?;
        for c in &self.primes {
            writeln!(f, "  p={}: |Gamma_p| = {} ({})", c.p, c.order, if c.order_within_bound { "ok" } else { "too large" })?;
        }
        writeln!(f, "condition 3 [{}] pairwise distinct simple quotients:", status(self.condition3()))?;
        for c in &self.pairs {
            writeln!(f, "  p={}, q={}: orders {}", c.p, c.q, if c.orders_differ { "differ" } else { "coincide" })?;
        }
        writeln!(f, "condition 4 [{}] reducible density <= 1 - c with c = {:.4}:", status(self.condition4()), self.density_margin)?;
        for c in &self.primes {
            let r = &c.census;
            writeln!(
                f,
                "  p={}: {} density {:.6} [{:.6}, {:.6}] ({} of {})",
                c.p, r.method, r.density, r.ci_low, r.ci_high, r.reducible, r.total
            )?;
        }
        Ok(())
    }
}

/// `PSp(2n, F_p)` is simple except for `(n, p)` in `{(1, 2), (1, 3), (2, 2)}`.
fn psp_is_simple(n: usize, p: u64) -> bool {
    !matches!((n, p), (1, 2) | (1, 3) | (2, 2))
}

/// Standard generators of `rep` reduced mod `p`, with their inverses,
/// together with the finite group they live in: `PSp(2g-2, F_p)` for Prym,
/// `Sp(2g, F_p)` for homology.
pub fn congruence_generators(rep: Representation, genus: usize, p: u64) -> Result<(FiniteGroupSpec, Vec<ModMatrix>)> {
    let spec = FiniteGroupSpec::new(rep.dim(genus) / 2, p, rep.is_projective())?;
    let set = AdmissibleSet::standard(rep, genus)?;
    let mut out = Vec::new();
    for m in set.elements().iter().filter(|m| !m.is_identity()) {
        out.push(spec.normalize_matrix(&m.reduce_mod(p)?));
    }
    Ok((spec, out))
}

pub fn check_sieve_conditions(genus: usize, primes: &[u64], opts: &SieveOptions) -> Result<SieveReport> {
    PrymModule::new(genus)?;
    if primes.is_empty() {
        return Err(Error::InvalidArgument("at least one prime is required".into()));
    }
    let n = genus - 1;
    let exponent = ((2 * n) * (2 * n)) as u32;
    let mut checks = Vec::new();
    for &p in primes {
        let spec = FiniteGroupSpec::new(n, p, true)?;
        let order = group_order(&spec);
        let method = if order <= BigUint::from(opts.exhaustive_up_to) { CensusMethod::Exhaustive } else { CensusMethod::Sampled };
        let census = reducible_density(&spec, method, opts.census_samples, opts.seed ^ p, &opts.budget)?;
        checks.push(PrimeCheck {
            p,
            order_within_bound: order <= BigUint::from(p).pow(exponent),
            order: order.to_string(),
            simple: psp_is_simple(n, p),
            census,
        });
    }
    let mut pairs = Vec::new();
    for (i, a) in checks.iter().enumerate() {
        for b in &checks[i + 1..] {
            pairs.push(PairCheck { p: a.p, q: b.p, orders_differ: a.order != b.order });
        }
    }
    let density_margin = 1.0 - checks.iter().map(|c| c.census.ci_high).fold(0.0, f64::max);
    let gap = match opts.gap_prime {
        Some(p) => {
            let (spec, gens) = congruence_generators(Representation::Prym, genus, p)?;
            let gap = cayley_spectral_gap(&gens, &spec, &opts.budget, opts.gap_tolerance)?;
            Some(GapEvidence { p, gap, heuristic: true })
        }
        None => None,
    };
    Ok(SieveReport { genus, exponent, primes: checks, pairs, gap, density_margin })
}
