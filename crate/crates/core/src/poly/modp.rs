use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{is_prime, mod_inv, prime_factors};
use crate::error::{Error, Result};

/// Dense polynomial over the prime field `F_p`, constant term first.
///
/// Coefficients are kept reduced in `[0, p)` and trailing zeros are trimmed.
/// The modulus must stay below `2^32` so products fit in a `u64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPolynomial {
    coeffs: Vec<u64>,
    p: u64,
}

impl ModPolynomial {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        debug_assert!(p >= 2 && p < (1 << 32));
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs, p }
    }

    pub fn from_i64(coeffs: &[i64], p: u64) -> Self {
        let pi = p as i64;
        Self::new(coeffs.iter().map(|c| c.rem_euclid(pi) as u64).collect(), p)
    }

    pub fn zero(p: u64) -> Self {
        Self { coeffs: Vec::new(), p }
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::new(vec![c], p)
    }

    pub fn one(p: u64) -> Self {
        Self::constant(1, p)
    }

    pub fn x(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(), self.p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n).map(|i| self.coeff(i) + self.p - other.coeff(i)).collect(),
            self.p,
        )
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * (c % self.p) % self.p).collect(), self.p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(out, self.p)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let p = self.p;
        let inv = mod_inv(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd] * inv % p;
            rem[i + dd] = 0;
            if q == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - q * d % p) % p;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot, p), Self::new(rem, p)))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).expect("nonzero divisor").1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }

    /// Scales to leading coefficient one, returning `(unit, monic)`.
    pub fn make_monic(&self) -> (u64, Self) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let lead = self.leading();
        (lead, self.scale(mod_inv(lead, self.p)))
    }

    pub fn monic(&self) -> Self {
        self.make_monic().1
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let (lead, g) = r0.make_monic();
        if lead == 0 {
            return (g, s0, t0);
        }
        let inv = mod_inv(lead, p);
        (g, s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (i as u64 % self.p) * c % self.p)
                .collect(),
            self.p,
        )
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if exp.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    fn pow_p_mod(&self, modulus: &Self) -> Self {
        self.pow_mod(&BigUint::from(self.p), modulus)
    }

    /// Squarefree iff coprime to its derivative (for a monic input this is
    /// the same as `p` not dividing the discriminant).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).is_one(),
        }
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let x = Self::x(self.p);
        // x^(p^k) mod f for k = 0..=n
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.rem(&f));
        for k in 1..=n {
            let next = frob[k - 1].pow_p_mod(&f);
            frob.push(next);
        }
        if frob[n] != x.rem(&f) {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|q| {
            let k = n / q as usize;
            f.gcd(&frob[k].sub(&x)).is_one()
        })
    }

    /// `f^(1/p)` for a polynomial whose exponents are all multiples of `p`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        // a -> a^(1/p) is the identity on F_p
        Self::new(self.coeffs.iter().step_by(p).copied().collect(), self.p)
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with
    /// `f = prod g^e`, each `g` squarefree, monic, and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        self.sqf_into(1, &mut out);
        out
    }

    fn sqf_into(&self, mult: u32, out: &mut Vec<(Self, u32)>) {
        if self.degree().unwrap_or(0) == 0 {
            return;
        }
        let f = self.monic();
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i * mult));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w);
        }
        if !c.is_one() {
            c.pth_root().sqf_into(mult * self.p as u32, out);
        }
    }

    /// Distinct-degree factorization of a squarefree monic polynomial.
    /// Returns `(g_d, d)` where `g_d` is the product of all irreducible
    /// factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while let Some(deg) = f.degree() {
            d += 1;
            if deg < 2 * d {
                if deg > 0 {
                    out.push((f.clone(), deg));
                }
                break;
            }
            h = h.pow_p_mod(&f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a squarefree monic product of irreducibles of degree `d` into
    /// its factors (Cantor-Zassenhaus; trace map in characteristic two).
    pub fn equal_degree_split<R: Rng + ?Sized>(&self, d: usize, rng: &mut R) -> Vec<Self> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.clone()];
        }
        let p = self.p;
        let exp = if p == 2 {
            BigUint::zero()
        } else {
            (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32)
        };
        loop {
            let a = Self::new((0..n).map(|_| rng.random_range(0..p)).collect(), p);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                let mut term = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    term = term.mul_mod(&term, self);
                    acc = acc.add(&term);
                }
                acc
            } else {
                a.pow_mod(&exp, self).sub(&Self::one(p))
            };
            let g = self.gcd(&b);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let rest = self.div_exact(&g);
                let mut parts = g.equal_degree_split(d, rng);
                parts.extend(rest.equal_degree_split(d, rng));
                return parts;
            }
        }
    }

    pub fn to_string_var(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Debug for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) mod {}", self.to_string_var(), self.p)
    }
}

impl fmt::Display for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var())
    }
}

/// Complete factorization over `F_p`: `f = unit * prod factor^mult`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModFactorization {
    pub unit: u64,
    pub factors: Vec<(ModPolynomial, u32)>,
}

impl ModFactorization {
    pub fn product(&self, p: u64) -> ModPolynomial {
        self.factors
            .iter()
            .fold(ModPolynomial::constant(self.unit, p), |acc, (g, e)| {
                (0..*e).fold(acc, |a, _| a.mul(g))
            })
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e as usize).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factors a nonzero polynomial over `F_p` into monic irreducibles.
pub fn factor_mod_p<R: Rng + ?Sized>(f: &ModPolynomial, rng: &mut R) -> Result<ModFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_prime(f.modulus()) {
        return Err(Error::InvalidModulus(f.modulus()));
    }
    let (unit, monic) = f.make_monic();
    let mut factors = Vec::new();
    for (part, mult) in monic.squarefree_decomposition() {
        for (block, d) in part.distinct_degree() {
            for g in block.equal_degree_split(d, rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
            .then(ea.cmp(eb))
    });
    // merge equal factors reported from different squarefree layers
    let mut merged: Vec<(ModPolynomial, u32)> = Vec::with_capacity(factors.len());
    for (g, e) in factors {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(ModFactorization { unit, factors: merged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn m(c: &[i64], p: u64) -> ModPolynomial {
        ModPolynomial::from_i64(c, p)
    }

    #[test]
    fn x2_plus_1_mod_2_is_a_square() {
        let fac = factor_mod_p(&m(&[1, 0, 1], 2), &mut rng()).unwrap();
        assert_eq!(fac.factors, vec![(m(&[1, 1], 2), 2)]);
    }

    #[test]
    fn x2_x_1_mod_2_is_irreducible() {
        let f = m(&[1, 1, 1], 2);
        let fac = factor_mod_p(&f, &mut rng()).unwrap();
        assert!(fac.is_irreducible());
        assert!(f.is_irreducible());
    }

    #[test]
    fn x4_plus_1_mod_3_splits_into_two_quadratics() {
        let fac = factor_mod_p(&m(&[1, 0, 0, 0, 1], 3), &mut rng()).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(g, e)| g.degree() == Some(2) && *e == 1));
        // oracle: the only monic quadratics over F_3 dividing x^4+1
        let mut quadratics = Vec::new();
        for b in 0..3 {
            for c in 0..3 {
                let q = ModPolynomial::new(vec![c, b, 1], 3);
                if m(&[1, 0, 0, 0, 1], 3).rem(&q).is_zero() {
                    quadratics.push(q);
                }
            }
        }
        let found: Vec<_> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(found, quadratics);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(
            factor_mod_p(&ModPolynomial::zero(5), &mut rng()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn non_prime_modulus_is_rejected() {
        assert_eq!(
            factor_mod_p(&m(&[1, 1], 4), &mut rng()),
            Err(Error::InvalidModulus(4))
        );
    }

    #[test]
    fn char_p_repeated_factors() {
        // (x+1)^3 (x^2+x+1)^2 over F_3 has a p-th power layer
        let f = m(&[1, 1], 3).mul(&m(&[1, 1], 3)).mul(&m(&[1, 1], 3)).mul(&m(&[2, 0, 1], 3));
        let fac = factor_mod_p(&f, &mut rng()).unwrap();
        assert_eq!(fac.product(3), f);
        assert!(fac.factors.iter().all(|(g, _)| g.is_irreducible()));
        // x^2 + 2 = (x+1)(x+2) mod 3, so x+1 appears with multiplicity 4
        assert_eq!(fac.factors, vec![(m(&[1, 1], 3), 4), (m(&[2, 1], 3), 1)]);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = m(&[1, 2, 0, 1], 7);
        let b = m(&[3, 1, 1], 7);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_one());
    }

    #[test]
    fn rabin_matches_exhaustive_for_small_degrees() {
        // count monic irreducibles of degree 3 over F_3: (27 - 3) / 3 = 8
        let count = (0..27u64)
            .filter(|k| ModPolynomial::new(vec![k % 3, (k / 3) % 3, k / 9, 1], 3).is_irreducible())
            .count();
        assert_eq!(count, 8);
        // degree 4 over F_2: (16 - 4) / 4 = 3
        let count = (0..16u64)
            .filter(|k| {
                ModPolynomial::new(vec![k & 1, (k >> 1) & 1, (k >> 2) & 1, (k >> 3) & 1, 1], 2)
                    .is_irreducible()
            })
            .count();
        assert_eq!(count, 3);
    }
}
