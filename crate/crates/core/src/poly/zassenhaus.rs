//! Rational factorization of monic integer polynomials: modular
//! irreducibility certificates first, then Hensel lifting and Zassenhaus
//! recombination when no certificate exists.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{factor_mod_p, IntPolynomial, ModPolynomial};
use crate::arith::primes;
use crate::error::{Error, Result};

/// Tuning for rational factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorizer {
    /// Number of primes (not dividing the discriminant) tried for an
    /// irreducibility certificate before the full factorization runs.
    pub certificate_primes: usize,
    /// Primes scanned while looking for good ones.
    pub prime_scan_limit: usize,
    /// Seed for the randomized equal-degree splitting.
    pub split_seed: u64,
    /// Maximum number of factor subsets tried during recombination.
    pub recombination_budget: u64,
}

impl Default for Factorizer {
    fn default() -> Self {
        Self {
            certificate_primes: 10,
            prime_scan_limit: 200,
            split_seed: 0x5eed,
            recombination_budget: 1 << 20,
        }
    }
}

/// Outcome of the certificate search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `f mod p` is irreducible.
    IrreducibleModP(u64),
    /// Every good prime showed a nontrivial mod-p factorization.
    Inconclusive,
    /// No prime in the scan range keeps `f` squarefree, so `f` has a
    /// repeated factor over `Q`.
    NotSquarefree,
}

struct GoodPrime {
    p: u64,
    factor_degrees: Vec<usize>,
}

impl Factorizer {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.split_seed)
    }

    fn check_input(f: &IntPolynomial) -> Result<usize> {
        let n = f.degree().ok_or(Error::ZeroPolynomial)?;
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        Ok(n)
    }

    /// Scans primes keeping the ones where `f` stays squarefree, stopping at
    /// the first irreducible reduction.
    fn scan(&self, f: &IntPolynomial) -> (Certificate, Vec<GoodPrime>) {
        let mut good = Vec::new();
        for p in primes().take(self.prime_scan_limit) {
            let fp = f.reduce_mod(p);
            if !fp.is_squarefree() {
                continue;
            }
            let factor_degrees: Vec<usize> = fp
                .distinct_degree()
                .into_iter()
                .flat_map(|(g, d)| std::iter::repeat_n(d, g.degree().unwrap() / d))
                .collect();
            if factor_degrees.len() == 1 {
                return (Certificate::IrreducibleModP(p), good);
            }
            good.push(GoodPrime { p, factor_degrees });
            if good.len() >= self.certificate_primes {
                break;
            }
        }
        let cert = if good.is_empty() {
            Certificate::NotSquarefree
        } else {
            Certificate::Inconclusive
        };
        (cert, good)
    }

    /// Irreducibility certificate search only.
    pub fn certificate(&self, f: &IntPolynomial) -> Result<Certificate> {
        Self::check_input(f)?;
        if f.degree() == Some(1) {
            return Ok(Certificate::IrreducibleModP(2));
        }
        Ok(self.scan(f).0)
    }

    /// Whether a monic `f` of degree at least one factors nontrivially over `Q`.
    pub fn is_reducible_q(&self, f: &IntPolynomial) -> Result<bool> {
        let n = Self::check_input(f)?;
        if n == 1 {
            return Ok(false);
        }
        if f.coeff(0).is_zero() {
            return Ok(true);
        }
        let (cert, good) = self.scan(f);
        match cert {
            Certificate::IrreducibleModP(_) => Ok(false),
            Certificate::NotSquarefree => self.has_factor_squarefree(f, &[]),
            Certificate::Inconclusive => {
                if !possible_degrees(&good, n) {
                    return Ok(false);
                }
                self.has_factor_squarefree(f, &good)
            }
        }
    }

    fn has_factor_squarefree(&self, f: &IntPolynomial, good: &[GoodPrime]) -> Result<bool> {
        let g = f.gcd(&f.derivative());
        if g.degree().unwrap_or(0) > 0 {
            return Ok(true);
        }
        Ok(self.zassenhaus(f, good, true)?.len() > 1)
    }

    /// Complete factorization of a monic polynomial over `Q` into monic
    /// irreducible integer polynomials with multiplicities.
    pub fn factor_q(&self, f: &IntPolynomial) -> Result<Vec<(IntPolynomial, u32)>> {
        Self::check_input(f)?;
        let mut out = Vec::new();
        for (part, mult) in squarefree_decomposition(f) {
            let (_, good) = self.scan(&part);
            for g in self.zassenhaus(&part, &good, false)? {
                out.push((g, mult));
            }
        }
        out.sort_by(|(a, _), (b, _)| {
            a.degree().cmp(&b.degree()).then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
        });
        Ok(out)
    }

    /// Zassenhaus on a squarefree monic polynomial. With `stop_early` the
    /// returned list is `[g, f/g]` for the first proper factor found.
    fn zassenhaus(&self, f: &IntPolynomial, good: &[GoodPrime], stop_early: bool) -> Result<Vec<IntPolynomial>> {
        let n = f.degree().unwrap();
        if n <= 1 {
            return Ok(vec![f.clone()]);
        }
        let p = match good.iter().min_by_key(|g| (g.factor_degrees.len(), std::cmp::Reverse(g.p))) {
            Some(g) => g.p,
            None => primes()
                .take(self.prime_scan_limit * 10)
                .find(|&p| f.reduce_mod(p).is_squarefree())
                .ok_or(Error::BudgetExceeded { what: "good prime search", limit: self.prime_scan_limit as u64 * 10 })?,
        };
        let fp = f.reduce_mod(p);
        let local = factor_mod_p(&fp, &mut self.rng())?;
        let local: Vec<ModPolynomial> = local.factors.into_iter().map(|(g, _)| g).collect();
        if local.len() == 1 {
            return Ok(vec![f.clone()]);
        }

        // any monic factor of f has coefficients bounded by 2^n |f|_2
        let bound = (BigInt::one() << n) * f.norm2_ceil();
        let pb = BigInt::from(p);
        let mut modulus = pb.clone();
        let mut k = 1u32;
        while modulus <= &bound * 2 {
            modulus *= &pb;
            k += 1;
        }
        let lifted = hensel_lift(f, &local, p, k);
        let half = &modulus >> 1;

        let mut remaining: Vec<usize> = (0..lifted.len()).collect();
        let mut rest = f.clone();
        let mut found = Vec::new();
        let mut tried = 0u64;
        let mut size = 1;
        'outer: while 2 * size <= remaining.len() {
            for subset in remaining.iter().copied().combinations(size) {
                tried += 1;
                if tried > self.recombination_budget {
                    return Err(Error::BudgetExceeded { what: "Zassenhaus recombination", limit: self.recombination_budget });
                }
                let mut cand = IntPolynomial::one();
                for &i in &subset {
                    cand = symmetric_mod(&cand.mul(&lifted[i]), &modulus, &half);
                }
                // constant terms must divide before a full trial division is worth it
                let c0 = cand.coeff(0);
                if !c0.is_zero() && !rest.coeff(0).is_multiple_of(&c0) {
                    continue;
                }
                if let Some(q) = rest.checked_div(&cand) {
                    found.push(cand);
                    rest = q;
                    remaining.retain(|i| !subset.contains(i));
                    if stop_early {
                        found.push(rest);
                        return Ok(found);
                    }
                    continue 'outer;
                }
            }
            size += 1;
        }
        found.push(rest);
        Ok(found)
    }
}

/// Intersects the achievable proper factor degrees across good primes.
fn possible_degrees(good: &[GoodPrime], n: usize) -> bool {
    let mut possible = vec![true; n + 1];
    for g in good {
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &d in &g.factor_degrees {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for (slot, s) in possible.iter_mut().zip(sums) {
            *slot &= s;
        }
    }
    (1..n).any(|d| possible[d])
}

fn symmetric_mod(f: &IntPolynomial, modulus: &BigInt, half: &BigInt) -> IntPolynomial {
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(modulus);
                if &r > half {
                    r - modulus
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn lift_mod(f: &ModPolynomial) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce_coeffs(f: &IntPolynomial, modulus: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(modulus)).collect())
}

/// Lifts a factorization `f = g0 * h0 (mod p)` of a monic `f` into monic
/// `g`, `h` with `f = g * h (mod p^k)`.
fn hensel_pair(f: &IntPolynomial, g0: &ModPolynomial, h0: &ModPolynomial, p: u64, k: u32) -> (IntPolynomial, IntPolynomial) {
    let (one, s, t) = g0.ext_gcd(h0);
    debug_assert!(one.is_one(), "factors must be coprime mod p");
    let pb = BigInt::from(p);
    let mut g = lift_mod(g0);
    let mut h = lift_mod(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let err = f.sub(&g.mul(&h));
        let e = IntPolynomial::new(err.coeffs().iter().map(|c| c / &pj).collect()).reduce_mod(p);
        let (q, r) = t.mul(&e).div_rem(g0).expect("nonzero factor");
        let dh = s.mul(&e).add(&q.mul(h0));
        let next = &pj * &pb;
        g = reduce_coeffs(&g.add(&lift_mod(&r).scale(&pj)), &next);
        h = reduce_coeffs(&h.add(&lift_mod(&dh).scale(&pj)), &next);
        pj = next;
    }
    (g, h)
}

/// Multifactor Hensel lifting by recursive splitting into two products.
fn hensel_lift(f: &IntPolynomial, factors: &[ModPolynomial], p: u64, k: u32) -> Vec<IntPolynomial> {
    if factors.len() == 1 {
        let modulus = BigInt::from(p).pow(k);
        return vec![reduce_coeffs(f, &modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[ModPolynomial]| fs.iter().fold(ModPolynomial::one(p), |a, b| a.mul(b));
    let (g, h) = hensel_pair(f, &prod(left), &prod(right), p, k);
    let mut out = hensel_lift(&g, left, p, k);
    out.extend(hensel_lift(&h, right, p, k));
    out
}

/// Yun's squarefree decomposition over `Q` of a monic integer polynomial.
fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.checked_div(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.checked_div(&y).expect("gcd divides");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.checked_div(&y).expect("gcd divides");
        w = y;
    }
    out
}

/// Default-configured reducibility test over `Q`.
pub fn is_reducible_q(f: &IntPolynomial) -> Result<bool> {
    Factorizer::default().is_reducible_q(f)
}

pub fn factor_q(f: &IntPolynomial) -> Result<Vec<(IntPolynomial, u32)>> {
    Factorizer::default().factor_q(f)
}
