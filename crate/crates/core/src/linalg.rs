//! Exact square matrices over `Z` and `F_p`, the standard symplectic form,
//! and characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime, mod_inv};
use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, ModPolynomial};

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { BigInt::one() } else { BigInt::zero() })
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: vec![BigInt::zero(); dim * dim] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { dim, entries }
    }

    pub fn from_entries(dim: usize, entries: Vec<BigInt>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::NotSquare { dim });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.as_ref().len() != dim) {
            return Err(Error::NotSquare { dim });
        }
        Ok(Self::from_fn(dim, |r, c| BigInt::from(rows[r].as_ref()[c])))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.dim + c]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.dim).map(|r| self.get(r, c).clone()).collect()
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim != other {
            return Err(Error::DimensionMismatch { left: self.dim, right: other });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let n = self.dim;
        let mut out = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.entries[k * n + c];
                    if !b.is_zero() {
                        out[r * n + c] += a * b;
                    }
                }
            }
        }
        Ok(Self { dim: n, entries: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        Ok(Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim;
        self.entries.iter().enumerate().all(|(i, a)| {
            if i / n == i % n {
                a.is_one()
            } else {
                a.is_zero()
            }
        })
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_dim(v.len())?;
        Ok((0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * &v[c]).sum())
            .collect())
    }

    /// Largest entry size in bits.
    pub fn max_bits(&self) -> u64 {
        self.entries.iter().map(|a| a.bits()).max().unwrap_or(0)
    }

    /// Faddeev-LeVerrier: returns the characteristic polynomial together
    /// with the last auxiliary matrix `M_n`, which satisfies `A M_n = -c_0 I`.
    fn faddeev_leverrier(&self) -> (IntPolynomial, Self) {
        let n = self.dim;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zero(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.multiply(&m).expect("same dim");
            for i in 0..n {
                next.entries[i * n + i] += &coeffs[n - k + 1];
            }
            let am = self.multiply(&next).expect("same dim");
            // exact division by construction
            let (q, r) = am.trace().div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero());
            coeffs[n - k] = -q;
            m = next;
        }
        (IntPolynomial::new(coeffs), m)
    }

    /// `det(xI - A)`, monic of degree `dim`.
    pub fn char_poly(&self) -> IntPolynomial {
        self.faddeev_leverrier().0
    }

    pub fn determinant(&self) -> BigInt {
        let c0 = self.char_poly().coeff(0);
        if self.dim % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<Self> {
        let (chi, m) = self.faddeev_leverrier();
        let c0 = chi.coeff(0);
        // A^{-1} = -M_n / c_0
        if c0.is_one() {
            Ok(m.neg())
        } else if (-&c0).is_one() {
            Ok(m)
        } else {
            let det = if self.dim % 2 == 0 { c0 } else { -c0 };
            Err(Error::NotUnimodular { det: det.to_string() })
        }
    }

    /// Integer power; negative exponents go through the exact inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.dim);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.multiply(&sq)?;
            }
        }
        Ok(acc)
    }

    pub fn reduce_mod(&self, p: u64) -> Result<ModMatrix> {
        if p < 2 || !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidModulus(p));
        }
        let pb = BigInt::from(p);
        let entries = self
            .entries
            .iter()
            .map(|a| a.mod_floor(&pb).to_u32().expect("residue fits"))
            .collect();
        Ok(ModMatrix { dim: self.dim, p: p as u32, entries })
    }

    /// `A^T J A == J` exactly.
    pub fn is_symplectic(&self, form: &SymplecticForm) -> Result<bool> {
        self.check_dim(form.dim())?;
        let lhs = self.transpose().multiply(&form.gram)?.multiply(self)?;
        Ok(lhs == form.gram)
    }

    /// Canonical sign representative: first nonzero entry positive.
    pub fn projective_canonical(&self) -> Self {
        match self.entries.iter().find(|a| !a.is_zero()) {
            Some(a) if a.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c).to_i64()).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| format!("{:>width$}", cells[r * self.dim + c]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Alternating unimodular form given by its Gram matrix `J`, with
/// `(x, y) = x^T J y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    gram: IntMatrix,
}

impl SymplecticForm {
    /// Diagonal blocks `[[0, 1], [-1, 0]]`: the basis is ordered
    /// `e_1, f_1, e_2, f_2, ...` with `(e_i, f_i) = 1`.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::InvalidForm("dimension must be even and positive"));
        }
        let gram = IntMatrix::from_fn(dim, |r, c| {
            if r % 2 == 0 && c == r + 1 {
                BigInt::one()
            } else if r % 2 == 1 && c + 1 == r {
                -BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        Ok(Self { gram })
    }

    /// Validates antisymmetry and unimodularity.
    pub fn from_gram(gram: IntMatrix) -> Result<Self> {
        if gram.transpose() != gram.neg() {
            return Err(Error::InvalidForm("gram matrix is not antisymmetric"));
        }
        if !gram.determinant().is_one() {
            return Err(Error::InvalidForm("gram matrix is not unimodular"));
        }
        Ok(Self { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.dim
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        let jy = self.gram.apply(y)?;
        if x.len() != jy.len() {
            return Err(Error::DimensionMismatch { left: x.len(), right: jy.len() });
        }
        Ok(x.iter().zip(&jy).map(|(a, b)| a * b).sum())
    }

    /// Transvection `h -> h + (h, v) v` as a matrix.
    pub fn transvection(&self, v: &[BigInt]) -> Result<IntMatrix> {
        self.symmetric_transvection(v, v, 1)
    }

    /// `h -> h + c((h, u) w + (h, w) u)` when `u != w`, and
    /// `h -> h + c (h, u) u` when `u == w`.
    pub fn symmetric_transvection(&self, u: &[BigInt], w: &[BigInt], c: i64) -> Result<IntMatrix> {
        let n = self.dim();
        if u.len() != n || w.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: u.len().max(w.len()) });
        }
        let c = BigInt::from(c);
        let mut out = IntMatrix::identity(n);
        for col in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[col] = BigInt::one();
            let hu = self.pair(&e, u)?;
            let (hw, same) = if u == w { (BigInt::zero(), true) } else { (self.pair(&e, w)?, false) };
            for row in 0..n {
                let mut delta = &hu * &w[row];
                if !same {
                    delta += &hw * &u[row];
                }
                out.entries[row * n + col] += &c * delta;
            }
        }
        Ok(out)
    }
}

/// Square matrix over `F_p` with entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModMatrix {
    dim: usize,
    p: u32,
    entries: Vec<u32>,
}

impl ModMatrix {
    pub fn identity(dim: usize, p: u32) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % p;
        }
        Self { dim, p, entries }
    }

    pub fn from_entries(dim: usize, p: u32, entries: Vec<u32>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::NotSquare { dim });
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidModulus(p as u64));
        }
        Ok(Self { dim, p, entries: entries.into_iter().map(|a| a % p).collect() })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R], p: u32) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.as_ref().len() != dim) {
            return Err(Error::NotSquare { dim });
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|a| a.rem_euclid(p as i64) as u32))
            .collect();
        Self::from_entries(dim, p, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.dim + c]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.p != other.p {
            return Err(Error::InvalidArgument(format!("moduli {} and {} differ", self.p, other.p)));
        }
        let mut out = vec![0u32; self.dim * self.dim];
        mul_into(&self.entries, &other.entries, self.dim, self.p, &mut out);
        Ok(Self { dim: self.dim, p: self.p, entries: out })
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self {
            dim: self.dim,
            p,
            entries: self.entries.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[c * n + r] = self.entries[r * n + c];
            }
        }
        Self { dim: n, p: self.p, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim, self.p)
    }

    /// Gauss-Jordan inverse over `F_p`; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let p = self.p as u64;
        let mut a: Vec<u64> = self.entries.iter().map(|&x| x as u64).collect();
        let mut inv: Vec<u64> = Self::identity(n, self.p).entries.iter().map(|&x| x as u64).collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                    inv.swap(piv * n + c, col * n + c);
                }
            }
            let s = mod_inv(a[col * n + col], p);
            for c in 0..n {
                a[col * n + c] = a[col * n + c] * s % p;
                inv[col * n + c] = inv[col * n + c] * s % p;
            }
            for r in 0..n {
                let f = a[r * n + col];
                if r == col || f == 0 {
                    continue;
                }
                for c in 0..n {
                    a[r * n + c] = (a[r * n + c] + p * p - f * a[col * n + c]) % p;
                    inv[r * n + c] = (inv[r * n + c] + p * p - f * inv[col * n + c]) % p;
                }
            }
        }
        Some(Self { dim: n, p: self.p, entries: inv.into_iter().map(|x| x as u32).collect() })
    }

    /// `A^T J A == J` over `F_p` for the standard form.
    pub fn is_symplectic(&self) -> bool {
        if self.dim % 2 != 0 {
            return false;
        }
        let j = standard_form_mod(self.dim, self.p);
        let lhs = self.transpose().multiply(&j).and_then(|m| m.multiply(self));
        lhs.is_ok_and(|m| m == j)
    }

    /// Characteristic polynomial over `F_p` via Hessenberg reduction.
    pub fn char_poly(&self) -> ModPolynomial {
        let n = self.dim;
        let p = self.p as u64;
        let mut h: Vec<u64> = self.entries.iter().map(|&x| x as u64).collect();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i * n + m - 1] != 0) else { continue };
            if i != m {
                for c in 0..n {
                    h.swap(i * n + c, m * n + c);
                }
                for r in 0..n {
                    h.swap(r * n + i, r * n + m);
                }
            }
            let pivot_inv = mod_inv(h[m * n + m - 1], p);
            for j in m + 1..n {
                let u = h[j * n + m - 1] * pivot_inv % p;
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    h[j * n + c] = (h[j * n + c] + p * p - u * h[m * n + c]) % p;
                }
                for r in 0..n {
                    h[r * n + m] = (h[r * n + m] + u * h[r * n + j]) % p;
                }
            }
        }
        let mut polys = vec![ModPolynomial::one(p)];
        for m in 1..=n {
            let lin = ModPolynomial::new(vec![(p - h[(m - 1) * n + m - 1]) % p, 1], p);
            let mut pm = lin.mul(&polys[m - 1]);
            let mut t = 1u64;
            for i in (1..m).rev() {
                t = t * h[i * n + i - 1] % p;
                let coef = h[(i - 1) * n + m - 1] * t % p;
                pm = pm.sub(&polys[i - 1].scale(coef));
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    /// Sign representative for `PSp`: first nonzero entry in `[1, (p-1)/2]`.
    pub fn projective_canonical(&self) -> Self {
        let mut out = self.clone();
        canonicalize_sign(&mut out.entries, self.p);
        out
    }

    /// Base-`p` packing of the entries; `None` if it does not fit in 128 bits.
    pub fn key(&self) -> Option<u128> {
        encode_key(&self.entries, self.p)
    }

    pub fn from_key(key: u128, dim: usize, p: u32) -> Self {
        let mut entries = vec![0u32; dim * dim];
        decode_key(key, p, &mut entries);
        Self { dim, p, entries }
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::from_fn(self.dim, |r, c| BigInt::from(self.get(r, c)))
    }
}

pub fn standard_form_mod(dim: usize, p: u32) -> ModMatrix {
    let mut entries = vec![0; dim * dim];
    for i in (0..dim).step_by(2) {
        entries[i * dim + i + 1] = 1;
        entries[(i + 1) * dim + i] = p - 1;
    }
    ModMatrix { dim, p, entries }
}

pub(crate) fn mul_into(a: &[u32], b: &[u32], n: usize, p: u32, out: &mut [u32]) {
    let p = p as u64;
    for r in 0..n {
        for c in 0..n {
            let mut acc = 0u64;
            for k in 0..n {
                acc += a[r * n + k] as u64 * b[k * n + c] as u64;
            }
            out[r * n + c] = (acc % p) as u32;
        }
    }
}

pub(crate) fn canonicalize_sign(entries: &mut [u32], p: u32) {
    if let Some(&first) = entries.iter().find(|&&a| a != 0) {
        if first > p / 2 {
            for a in entries.iter_mut() {
                if *a != 0 {
                    *a = p - *a;
                }
            }
        }
    }
}

pub(crate) fn encode_key(entries: &[u32], p: u32) -> Option<u128> {
    let mut key: u128 = 0;
    for &a in entries.iter().rev() {
        key = key.checked_mul(p as u128)?.checked_add(a as u128)?;
    }
    // the leading digit may be p-1: check the full range fits
    (p as u128).checked_pow(entries.len() as u32).map(|_| key)
}

pub(crate) fn decode_key(mut key: u128, p: u32, out: &mut [u32]) {
    for a in out.iter_mut() {
        *a = (key % p as u128) as u32;
        key /= p as u128;
    }
}
