//! Cyclotomic and power-substitution tests on characteristic polynomials.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_integer::Integer;
use num_traits::Zero;

use super::IntPolynomial;
use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};

/// The `m`-th cyclotomic polynomial, by dividing `x^m - 1` by every
/// `Phi_d` with `d | m`, `d < m`.
pub fn cyclotomic(m: u64) -> Result<IntPolynomial> {
    static CACHE: OnceLock<RwLock<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    if m == 0 {
        return Err(Error::CyclotomicIndex);
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.read().expect("cache lock").get(&m) {
        return Ok(f.clone());
    }
    let mut f = IntPolynomial::monomial(m as usize).sub(&IntPolynomial::one());
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        f = f.checked_div(&cyclotomic(d)?).expect("cyclotomic factor divides x^m - 1");
    }
    cache.write().expect("cache lock").insert(m, f.clone());
    Ok(f)
}

/// Every `m` with `phi(m) <= n`, ascending. `phi(m) >= sqrt(m / 2)` bounds the scan.
pub fn orders_with_phi_at_most(n: u64) -> Vec<u64> {
    (1..=2 * n * n + 2).filter(|&m| euler_phi(m) <= n).collect()
}

/// Smallest `m` such that `f` has a primitive `m`-th root of unity as a root.
///
/// Since `Phi_m` is irreducible over `Q`, `gcd(f, Phi_m)` is nontrivial
/// exactly when `Phi_m` divides `f`, which is an exact division here.
pub fn has_root_of_unity_root(f: &IntPolynomial) -> Result<Option<u64>> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    static ORDERS: OnceLock<RwLock<HashMap<u64, Vec<u64>>>> = OnceLock::new();
    let orders = ORDERS.get_or_init(Default::default);
    let known = orders.read().expect("cache lock").get(&(n as u64)).cloned();
    let ms = match known {
        Some(ms) => ms,
        None => {
            let ms = orders_with_phi_at_most(n as u64);
            orders.write().expect("cache lock").insert(n as u64, ms.clone());
            ms
        }
    };
    for m in ms {
        let phi = cyclotomic(m)?;
        let (_, r) = f.div_rem_monic(&phi)?;
        if r.is_zero() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Largest `d >= 2` with `f(x) = g(x^d)`, together with `g`.
pub fn power_substitution(f: &IntPolynomial) -> Option<(usize, IntPolynomial)> {
    let n = f.degree()?;
    let d = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, c)| *i > 0 && !c.is_zero())
        .fold(0usize, |acc, (i, _)| acc.gcd(&i));
    if d < 2 {
        return None;
    }
    debug_assert_eq!(n % d, 0);
    let g = IntPolynomial::new(f.coeffs().iter().step_by(d).cloned().collect());
    Some((d, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(12).unwrap(), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(0), Err(Error::CyclotomicIndex));
    }

    #[test]
    fn cyclotomics_multiply_to_x_m_minus_1() {
        for m in 1..=30u64 {
            let prod = divisors(m)
                .into_iter()
                .fold(IntPolynomial::one(), |acc, d| acc.mul(&cyclotomic(d).unwrap()));
            assert_eq!(prod, IntPolynomial::monomial(m as usize).sub(&IntPolynomial::one()));
        }
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(has_root_of_unity_root(&p(&[1, -1, 1])).unwrap(), Some(6));
        assert_eq!(has_root_of_unity_root(&p(&[-1, 1])).unwrap(), Some(1));
        assert_eq!(has_root_of_unity_root(&p(&[1, -3, 1])).unwrap(), None);
    }

    #[test]
    fn phi_at_most_two() {
        assert_eq!(orders_with_phi_at_most(2), vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn power_substitution_examples() {
        assert_eq!(power_substitution(&p(&[1, 0, 3, 0, 1])), Some((2, p(&[1, 3, 1]))));
        assert_eq!(power_substitution(&p(&[1, 0, 0, 1, 1])), None);
        assert_eq!(power_substitution(&p(&[2, 0, 0, 0, 0, 0, 1])), Some((6, p(&[2, 1]))));
        assert_eq!(power_substitution(&p(&[1, -4, 6, -4, 1])), None);
    }
}
