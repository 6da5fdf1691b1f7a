//! Finite symplectic groups `Sp(2n, F_p)` and `PSp(2n, F_p)`: orders,
//! exactly uniform sampling, subgroup closure, reducible-characteristic-
//! polynomial censuses, and Cayley-graph spectral gaps.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_inv};
use crate::error::{Error, Result};
use crate::linalg::{canonicalize_sign, decode_key, encode_key, mul_into, ModMatrix, SymplecticForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteGroupSpec {
    /// Half the matrix size: the group is `Sp(2n, F_p)`.
    pub n: usize,
    pub p: u64,
    /// Work in `PSp`, identifying `M` with `-M`.
    pub projective: bool,
}

impl FiniteGroupSpec {
    pub fn new(n: usize, p: u64, projective: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("symplectic half-rank must be >= 1".into()));
        }
        if !is_prime(p) || p > u8::MAX as u64 {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Self { n, p, projective })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `-I` and `I` coincide in `PSp` only when `p` is odd; in
    /// characteristic two the projective quotient is trivial.
    fn identifies_signs(&self) -> bool {
        self.projective && self.p > 2
    }

    fn normalize(&self, entries: &mut [u32]) {
        if self.identifies_signs() {
            canonicalize_sign(entries, self.p as u32);
        }
    }

    pub fn normalize_matrix(&self, m: &ModMatrix) -> ModMatrix {
        if self.identifies_signs() {
            m.projective_canonical()
        } else {
            m.clone()
        }
    }
}

impl fmt::Display for FiniteGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = if self.projective { "PSp" } else { "Sp" };
        write!(f, "{prefix}({},F_{})", self.dim(), self.p)
    }
}

/// Size limits; exceeding one is reported as an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub exhaustive: u64,
    pub bfs: u64,
    pub spectral: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { exhaustive: 10_000_000, bfs: 10_000_000, spectral: 10_000_000 }
    }
}

/// `p^(n^2) prod_{i=1..n} (p^(2i) - 1)`, halved for `PSp` when `p` is odd.
pub fn group_order(spec: &FiniteGroupSpec) -> BigUint {
    let p = BigUint::from(spec.p);
    let n = spec.n as u32;
    let mut order = p.pow(n * n);
    for i in 1..=n {
        order *= p.pow(2 * i) - BigUint::one();
    }
    if spec.identifies_signs() {
        order /= 2u32;
    }
    order
}

/// Transvections along `a_i`, `b_i` and `a_i - a_{i+1}`; they generate
/// `Sp(2n, Z)` and therefore every `Sp(2n, F_p)`.
pub fn standard_generators(spec: &FiniteGroupSpec) -> Vec<ModMatrix> {
    let dim = spec.dim();
    let form = SymplecticForm::standard(dim).expect("even dim");
    let unit = |k: usize| {
        let mut v = vec![BigInt::from(0); dim];
        v[k] = BigInt::from(1);
        v
    };
    let mut vecs: Vec<Vec<BigInt>> = (0..dim).map(unit).collect();
    for i in 0..spec.n.saturating_sub(1) {
        let mut v = unit(2 * i);
        v[2 * i + 2] = BigInt::from(-1);
        vecs.push(v);
    }
    vecs.iter()
        .map(|v| {
            let t = form.transvection(v).expect("dims agree").reduce_mod(spec.p).expect("prime");
            spec.normalize_matrix(&t)
        })
        .collect()
}

fn omega(x: &[u64], y: &[u64], p: u64) -> u64 {
    let mut acc = 0u64;
    for i in (0..x.len()).step_by(2) {
        acc = (acc + x[i] * y[i + 1] + (p - x[i + 1]) * y[i]) % p;
    }
    acc
}

/// Exactly uniform element, built column by column as a random symplectic
/// basis `e_1, f_1, ..., e_n, f_n`: `e_k` uniform nonzero in the symplectic
/// complement of the pairs chosen so far, `f_k` uniform there among vectors
/// with `(e_k, f_k) = 1`.
pub fn uniform_sample<R: Rng + ?Sized>(spec: &FiniteGroupSpec, rng: &mut R) -> ModMatrix {
    let dim = spec.dim();
    let p = spec.p;
    let mut pairs: Vec<(Vec<u64>, Vec<u64>)> = Vec::with_capacity(spec.n);
    // Projecting a uniform vector onto the complement of the chosen pairs
    // is a linear surjection, so the image is uniform on the complement.
    let project = |v: &mut Vec<u64>, pairs: &[(Vec<u64>, Vec<u64>)]| {
        for (e, f) in pairs {
            let vf = omega(v, f, p);
            let ve = omega(v, e, p);
            for k in 0..dim {
                v[k] = (v[k] + (p - vf) * e[k] + ve * f[k]) % p;
            }
        }
    };
    let random_vec = |rng: &mut R| -> Vec<u64> { (0..dim).map(|_| rng.random_range(0..p)).collect() };
    for _ in 0..spec.n {
        let e = loop {
            let mut v = random_vec(rng);
            project(&mut v, &pairs);
            if v.iter().any(|&x| x != 0) {
                break v;
            }
        };
        let f = loop {
            let mut v = random_vec(rng);
            project(&mut v, &pairs);
            let c = omega(&e, &v, p);
            if c != 0 {
                let inv = mod_inv(c, p);
                break v.into_iter().map(|x| x * inv % p).collect::<Vec<_>>();
            }
        };
        pairs.push((e, f));
    }
    let mut entries = vec![0u32; dim * dim];
    for (k, (e, f)) in pairs.iter().enumerate() {
        for r in 0..dim {
            entries[r * dim + 2 * k] = e[r] as u32;
            entries[r * dim + 2 * k + 1] = f[r] as u32;
        }
    }
    spec.normalize(&mut entries);
    ModMatrix::from_entries(dim, p as u32, entries).expect("valid entries")
}

/// Multiplicative hasher for packed matrix keys.
#[derive(Default)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x100000001b3);
        }
    }

    fn write_u128(&mut self, k: u128) {
        let x = (k as u64) ^ ((k >> 64) as u64).rotate_left(31);
        let h = x.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        self.0 = h ^ (h >> 29);
    }
}

type KeySet = HashSet<u128, BuildHasherDefault<KeyHasher>>;
type KeyMap = HashMap<u128, u32, BuildHasherDefault<KeyHasher>>;

/// Subgroup generated by a set of matrices, in breadth-first order from
/// the identity.
#[derive(Debug, Clone)]
pub struct Closure {
    spec: FiniteGroupSpec,
    elements: Vec<u128>,
    members: KeySet,
}

impl Closure {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn spec(&self) -> &FiniteGroupSpec {
        &self.spec
    }

    pub fn contains(&self, m: &ModMatrix) -> bool {
        self.spec.normalize_matrix(m).key().is_some_and(|k| self.members.contains(&k))
    }

    pub fn keys(&self) -> &[u128] {
        &self.elements
    }

    pub fn matrix(&self, i: usize) -> ModMatrix {
        ModMatrix::from_key(self.elements[i], self.spec.dim(), self.spec.p as u32)
    }

    pub fn iter(&self) -> impl Iterator<Item = ModMatrix> + '_ {
        (0..self.len()).map(|i| self.matrix(i))
    }
}

fn key_of(m: &ModMatrix) -> Result<u128> {
    m.key().ok_or_else(|| Error::InvalidArgument(format!("{}x{} matrices mod {} do not pack into 128 bits", m.dim(), m.dim(), m.modulus())))
}

fn check_generators(gens: &[ModMatrix], spec: &FiniteGroupSpec) -> Result<()> {
    for g in gens {
        if g.dim() != spec.dim() || g.modulus() as u64 != spec.p {
            return Err(Error::InvalidArgument(format!("generator does not live in {spec}")));
        }
        if !g.is_symplectic() && !(spec.identifies_signs() && g.neg().is_symplectic()) {
            return Err(Error::InvalidArgument(format!("generator is not in {spec}")));
        }
    }
    Ok(())
}

/// Closes `gens` under right multiplication starting from the identity.
pub fn bfs_closure(gens: &[ModMatrix], spec: &FiniteGroupSpec, budget: &Budget) -> Result<Closure> {
    check_generators(gens, spec)?;
    let dim = spec.dim();
    let p = spec.p as u32;
    let gen_entries: Vec<Vec<u32>> = gens.iter().map(|g| g.entries().to_vec()).collect();
    let identity = key_of(&ModMatrix::identity(dim, p))?;
    let mut members = KeySet::default();
    let mut elements = vec![identity];
    members.insert(identity);
    let mut cur = vec![0u32; dim * dim];
    let mut next = vec![0u32; dim * dim];
    let mut head = 0;
    while head < elements.len() {
        decode_key(elements[head], p, &mut cur);
        head += 1;
        for g in &gen_entries {
            mul_into(&cur, g, dim, p, &mut next);
            spec.normalize(&mut next);
            let key = encode_key(&next, p).expect("packing checked on identity");
            if members.insert(key) {
                elements.push(key);
                if elements.len() as u64 > budget.bfs {
                    return Err(Error::BudgetExceeded { what: "subgroup closure", limit: budget.bfs });
                }
            }
        }
    }
    Ok(Closure { spec: *spec, elements, members })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMethod {
    Exhaustive,
    Sampled,
}

impl fmt::Display for CensusMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CensusMethod::Exhaustive => "exhaustive",
            CensusMethod::Sampled => "sampled",
        })
    }
}

/// Fraction of group elements with characteristic polynomial reducible over `F_p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusResult {
    pub spec: FiniteGroupSpec,
    pub method: CensusMethod,
    pub total: u64,
    pub reducible: u64,
    pub density: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub half_width: f64,
    pub seed: Option<u64>,
}

impl CensusResult {
    /// Binomial standard error of the density.
    pub fn std_error(&self) -> f64 {
        (self.density * (1.0 - self.density) / self.total as f64).sqrt()
    }
}

/// Wilson score interval for `hits` out of `n` at normal quantile `z`.
pub fn wilson_interval(hits: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let phat = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

const Z95: f64 = 1.959_963_984_540_054;
const CENSUS_CHUNK: u64 = 4096;

fn has_reducible_char_poly(m: &ModMatrix) -> bool {
    !m.char_poly().is_irreducible()
}

pub fn reducible_density(
    spec: &FiniteGroupSpec,
    method: CensusMethod,
    samples: u64,
    seed: u64,
    budget: &Budget,
) -> Result<CensusResult> {
    let (total, reducible) = match method {
        CensusMethod::Exhaustive => {
            let order = group_order(spec);
            if order > BigUint::from(budget.exhaustive) {
                return Err(Error::BudgetExceeded { what: "exhaustive census", limit: budget.exhaustive });
            }
            let closure = bfs_closure(&standard_generators(spec), spec, budget)?;
            let dim = spec.dim();
            let p = spec.p as u32;
            let reducible = closure
                .keys()
                .par_iter()
                .filter(|&&k| has_reducible_char_poly(&ModMatrix::from_key(k, dim, p)))
                .count() as u64;
            (closure.len() as u64, reducible)
        }
        CensusMethod::Sampled => {
            if samples == 0 {
                return Err(Error::InvalidArgument("sampled census needs at least one sample".into()));
            }
            let chunks = samples.div_ceil(CENSUS_CHUNK);
            let reducible: u64 = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c);
                    let len = CENSUS_CHUNK.min(samples - c * CENSUS_CHUNK);
                    (0..len).filter(|_| has_reducible_char_poly(&uniform_sample(spec, &mut rng))).count() as u64
                })
                .sum();
            (samples, reducible)
        }
    };
    let density = reducible as f64 / total as f64;
    let (ci_low, ci_high, seed) = match method {
        CensusMethod::Exhaustive => (density, density, None),
        CensusMethod::Sampled => {
            let (lo, hi) = wilson_interval(reducible, total, Z95);
            (lo, hi, Some(seed))
        }
    };
    Ok(CensusResult {
        spec: *spec,
        method,
        total,
        reducible,
        density,
        ci_low,
        ci_high,
        half_width: (ci_high - ci_low) / 2.0,
        seed,
    })
}

/// Second eigenvalue of the normalized Cayley-graph adjacency operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralGap {
    pub nodes: u64,
    pub degree: usize,
    pub lambda2: f64,
    /// `1 - lambda2`.
    pub gap: f64,
    pub iterations: u64,
    pub residual: f64,
}

const MAX_POWER_ITERATIONS: u64 = 2_000_000;

/// Spectral gap of the Cayley graph of the group generated by a symmetric
/// generating multiset, by power iteration of `(I + A) / 2` on the
/// orthogonal complement of the constants. Iteration stops once the
/// eigenvector residual drops below `tol`.
pub fn cayley_spectral_gap(gens: &[ModMatrix], spec: &FiniteGroupSpec, budget: &Budget, tol: f64) -> Result<SpectralGap> {
    if gens.is_empty() {
        return Err(Error::EmptySet);
    }
    check_generators(gens, spec)?;
    let normalized: Vec<ModMatrix> = gens.iter().map(|g| spec.normalize_matrix(g)).collect();
    let keys: HashSet<u128> = normalized.iter().map(key_of).collect::<Result<_>>()?;
    for g in &normalized {
        let inv = spec.normalize_matrix(&g.inverse().expect("group element"));
        if !keys.contains(&key_of(&inv)?) {
            return Err(Error::NotSymmetric);
        }
    }
    let limited = Budget { bfs: budget.bfs.min(budget.spectral), ..*budget };
    let closure = bfs_closure(&normalized, spec, &limited).map_err(|e| match e {
        Error::BudgetExceeded { .. } => Error::BudgetExceeded { what: "spectral gap graph", limit: budget.spectral },
        other => other,
    })?;
    let n = closure.len();
    let k = normalized.len();
    let index: KeyMap = closure.keys().iter().enumerate().map(|(i, &key)| (key, i as u32)).collect();
    let dim = spec.dim();
    let p = spec.p as u32;
    let gen_entries: Vec<Vec<u32>> = normalized.iter().map(|g| g.entries().to_vec()).collect();
    let neighbors: Vec<u32> = closure
        .keys()
        .par_iter()
        .flat_map_iter(|&key| {
            let mut cur = vec![0u32; dim * dim];
            let mut next = vec![0u32; dim * dim];
            decode_key(key, p, &mut cur);
            gen_entries
                .iter()
                .map(|g| {
                    mul_into(&cur, g, dim, p, &mut next);
                    spec.normalize(&mut next);
                    index[&encode_key(&next, p).expect("packs")]
                })
                .collect::<Vec<_>>()
        })
        .collect();

    if n == 1 {
        return Ok(SpectralGap { nodes: 1, degree: k, lambda2: 0.0, gap: 1.0, iterations: 0, residual: 0.0 });
    }

    let apply = |x: &[f64], out: &mut [f64]| {
        out.par_iter_mut().enumerate().for_each(|(v, o)| {
            let s: f64 = neighbors[v * k..(v + 1) * k].iter().map(|&u| x[u as usize]).sum();
            *o = 0.5 * (x[v] + s / k as f64);
        });
    };
    let project = |x: &mut [f64]| {
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x5e7c);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    project(&mut x);
    let mut y = vec![0.0; n];
    let mut mu = 0.0;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < MAX_POWER_ITERATIONS {
        iterations += 1;
        apply(&x, &mut y);
        mu = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        residual = x.iter().zip(&y).map(|(a, b)| (b - mu * a).powi(2)).sum::<f64>().sqrt();
        std::mem::swap(&mut x, &mut y);
        project(&mut x);
        if residual < tol {
            break;
        }
    }
    let lambda2 = 2.0 * mu - 1.0;
    Ok(SpectralGap { nodes: n as u64, degree: k, lambda2, gap: 1.0 - lambda2, iterations, residual })
}

/// `|G| <= p^d`, exactly.
pub fn order_at_most_power(spec: &FiniteGroupSpec, d: u32) -> bool {
    group_order(spec) <= BigUint::from(spec.p).pow(d)
}

pub fn order_u64(spec: &FiniteGroupSpec) -> Option<u64> {
    group_order(spec).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, p: u64, proj: bool) -> FiniteGroupSpec {
        FiniteGroupSpec::new(n, p, proj).unwrap()
    }

    /// Every 2x2 determinant-one matrix mod p.
    fn sl2_exhaustive(p: u32) -> Vec<ModMatrix> {
        let mut out = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a * d + p * p - b * c) % p == 1 {
                            out.push(ModMatrix::from_entries(2, p, vec![a, b, c, d]).unwrap());
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn orders_match_enumeration() {
        assert_eq!(sl2_exhaustive(3).len(), 24);
        assert_eq!(sl2_exhaustive(2).len(), 6);
        assert_eq!(group_order(&spec(1, 3, false)), BigUint::from(24u32));
        assert_eq!(group_order(&spec(1, 2, false)), BigUint::from(6u32));
        assert_eq!(group_order(&spec(2, 3, false)), BigUint::from(51840u32));
        assert_eq!(group_order(&spec(2, 3, true)), BigUint::from(25920u32));
        assert_eq!(group_order(&spec(2, 5, false)), BigUint::from(9_360_000u32));
        assert_eq!(group_order(&spec(2, 2, true)), BigUint::from(720u32));
    }

    #[test]
    fn closure_sizes() {
        let s = spec(1, 3, false);
        assert_eq!(bfs_closure(&[ModMatrix::identity(2, 3)], &s, &Budget::default()).unwrap().len(), 1);
        assert_eq!(bfs_closure(&standard_generators(&s), &s, &Budget::default()).unwrap().len(), 24);
        let s4 = spec(2, 3, false);
        assert_eq!(bfs_closure(&standard_generators(&s4), &s4, &Budget::default()).unwrap().len(), 51840);
    }

    #[test]
    fn closure_budget_is_reported() {
        let s4 = spec(2, 3, false);
        let tight = Budget { bfs: 1000, ..Budget::default() };
        assert!(matches!(
            bfs_closure(&standard_generators(&s4), &s4, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn closure_rejects_non_group_elements() {
        let s = spec(1, 3, false);
        let bad = ModMatrix::from_entries(2, 3, vec![2, 0, 0, 1]).unwrap();
        assert!(bfs_closure(&[bad], &s, &Budget::default()).is_err());
    }

    #[test]
    fn samples_are_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (n, p) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 7)] {
            let s = spec(n, p, false);
            for _ in 0..200 {
                assert!(uniform_sample(&s, &mut rng).is_symplectic());
            }
        }
    }

    #[test]
    fn sampler_hits_all_of_sl2_f3() {
        let s = spec(1, 3, false);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let seen: HashSet<ModMatrix> = (0..1000).map(|_| uniform_sample(&s, &mut rng)).collect();
        assert_eq!(seen.len(), 24);
        assert!(sl2_exhaustive(3).iter().all(|m| seen.contains(m)));
    }

    #[test]
    fn census_of_sl2_f2() {
        let r = reducible_density(&spec(1, 2, false), CensusMethod::Exhaustive, 0, 0, &Budget::default()).unwrap();
        assert_eq!((r.reducible, r.total), (4, 6));
        // oracle: the two order-3 elements have char poly x^2 + x + 1
        let irreducible = sl2_exhaustive(2).iter().filter(|m| (m.get(0, 0) + m.get(1, 1)) % 2 == 1).count();
        assert_eq!(irreducible, 2);
    }

    #[test]
    fn identity_char_poly_is_reducible() {
        assert!(has_reducible_char_poly(&ModMatrix::identity(4, 5)));
        assert!(has_reducible_char_poly(&ModMatrix::identity(2, 2)));
    }

    #[test]
    fn census_budget() {
        let tight = Budget { exhaustive: 100, ..Budget::default() };
        assert!(matches!(
            reducible_density(&spec(2, 3, false), CensusMethod::Exhaustive, 0, 0, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn wilson_interval_contains_estimate() {
        let (lo, hi) = wilson_interval(30, 100, Z95);
        assert!(lo < 0.3 && 0.3 < hi);
        assert!((lo - 0.2189).abs() < 1e-3 && (hi - 0.3958).abs() < 1e-3);
    }

    #[test]
    fn complete_graph_gap() {
        let s = spec(1, 3, false);
        let all: Vec<ModMatrix> = sl2_exhaustive(3).into_iter().filter(|m| !m.is_identity()).collect();
        let gap = cayley_spectral_gap(&all, &s, &Budget::default(), 1e-9).unwrap();
        assert!((gap.gap - 24.0 / 23.0).abs() < 1e-6, "{gap:?}");
    }

    #[test]
    fn cycle_gap() {
        // Z/13 as the unipotent upper-triangular subgroup of SL(2, F_13)
        let p = 13u32;
        let s = spec(1, p as u64, false);
        let u = ModMatrix::from_entries(2, p, vec![1, 1, 0, 1]).unwrap();
        let gens = vec![u.clone(), u.inverse().unwrap()];
        let gap = cayley_spectral_gap(&gens, &s, &Budget::default(), 1e-9).unwrap();
        let expected = 1.0 - (2.0 * std::f64::consts::PI / 13.0).cos();
        assert_eq!(gap.nodes, 13);
        assert!((gap.gap - expected).abs() < 1e-6, "{gap:?} vs {expected}");
    }

    #[test]
    fn asymmetric_generators_are_rejected() {
        let s = spec(1, 13, false);
        let u = ModMatrix::from_entries(2, 13, vec![1, 1, 0, 1]).unwrap();
        assert_eq!(cayley_spectral_gap(&[u], &s, &Budget::default(), 1e-6).unwrap_err(), Error::NotSymmetric);
    }
}
