//! The Prym representation of the Torelli group.
//!
//! Cutting the surface along `b_g` and gluing two copies crosswise gives a
//! double cover of genus `2g - 1`. The kernel of the induced map on first
//! homology is a free module of rank `2g - 2` with basis
//! `z_1, z_{-1}, ..., z_{g-1}, z_{1-g}` (differences of the two lifts of
//! `a_i` and `b_i`) and a form equal to half the intersection form
//! upstairs: `(z_i, z_{-i}) = 1` for `i > 0`, all other basis pairings zero
//! except the antisymmetric partners.
//!
//! Torelli elements act on this module up to the deck involution, so the
//! representation lands in `PSp(2g - 2, Z)`. The named Torelli twists have
//! images given by fourth powers of elementary symplectic transformations;
//! conjugating frames `Delta_i` act by the sheetwise lift of the quarter
//! turn of handle `i`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finite::{bfs_closure, group_order, Budget, FiniteGroupSpec};
use crate::linalg::{IntMatrix, SymplecticForm};
use crate::poly::IntPolynomial;
use crate::surface::{homology_matrix, is_torelli, Generator, Letter, McgWord, SurfaceModel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrymModule {
    genus: usize,
    form: SymplecticForm,
    surface: SurfaceModel,
}

impl PrymModule {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 3 {
            return Err(Error::InvalidGenus { genus, reason: "the Prym representation needs genus at least 3" });
        }
        Ok(Self {
            genus,
            form: SymplecticForm::standard(2 * genus - 2)?,
            surface: SurfaceModel::new(genus)?,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus - 2
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    /// Signed basis indices in order: `1, -1, 2, -2, ..., g-1, 1-g`.
    pub fn basis_indices(&self) -> Vec<i64> {
        (1..self.genus as i64).flat_map(|i| [i, -i]).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis_indices().into_iter().map(|k| format!("z{k}")).collect()
    }

    fn check_index(&self, k: i64) -> Result<()> {
        if k == 0 || k.unsigned_abs() as usize >= self.genus {
            return Err(Error::IndexOutOfRange(format!("z{k} for genus {}", self.genus)));
        }
        Ok(())
    }

    /// Position of `z_k` in the ordered basis.
    pub fn position(&self, k: i64) -> Result<usize> {
        self.check_index(k)?;
        let i = k.unsigned_abs() as usize - 1;
        Ok(if k > 0 { 2 * i } else { 2 * i + 1 })
    }

    pub fn z(&self, k: i64) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[self.position(k)?] = BigInt::one();
        Ok(v)
    }

    /// `T_i : h -> h + (h, z_{-i}) z_{-i}`.
    pub fn elementary_t(&self, i: i64) -> Result<IntMatrix> {
        self.form.transvection(&self.z(-i)?)
    }

    /// `T_{i,j} : h -> h + (h, z_{-i}) z_{-j} + (h, z_{-j}) z_{-i}` for `i != +-j`.
    pub fn elementary_t_pair(&self, i: i64, j: i64) -> Result<IntMatrix> {
        if i == j || i == -j {
            return Err(Error::InvalidArgument(format!("T_{{{i},{j}}} needs i != +-j")));
        }
        self.form.symmetric_transvection(&self.z(-i)?, &self.z(-j)?, 1)
    }

    /// Action of `Delta_i` on the module: `z_i -> z_{-i}`, `z_{-i} -> -z_i`.
    /// The handle-`i` block of the homology action, applied on both sheets.
    pub fn delta_frame(&self, i: usize) -> Result<IntMatrix> {
        self.check_index(i as i64)?;
        let full = homology_matrix(&Letter::new(Generator::Delta(i)).into(), &self.surface)?;
        let r = self.rank();
        Ok(IntMatrix::from_fn(r, |row, col| full.get(row, col).clone()))
    }

    /// `T_i^4`.
    pub fn t_image(&self, i: usize) -> Result<IntMatrix> {
        self.elementary_t(i as i64)?.pow(4)
    }

    /// `T_i^4 T_j^4 T_{i,j}^{-4}`.
    pub fn r_image(&self, i: usize, j: usize) -> Result<IntMatrix> {
        let (i, j) = (i as i64, j as i64);
        self.elementary_t(i)?
            .pow(4)?
            .multiply(&self.elementary_t(j)?.pow(4)?)?
            .multiply(&self.elementary_t_pair(i, j)?.pow(-4)?)
    }

    /// Image of a single Torelli letter.
    pub fn rho_generator(&self, l: Letter) -> Result<PrymImage> {
        self.surface.validate(&l.into())?;
        let m = match l.generator {
            Generator::TorelliT(i) => self.t_image(i)?,
            Generator::TorelliR(i, j) => self.r_image(i, j)?,
            _ => return Err(Error::NoPrymImage(l.to_string())),
        };
        let m = if l.inverse { m.inverse()? } else { m };
        Ok(PrymImage::new(m))
    }

    fn letter_image(&self, l: Letter) -> Result<IntMatrix> {
        match l.generator {
            Generator::Delta(i) => {
                if i >= self.genus {
                    return Err(Error::NoPrymImage(l.to_string()));
                }
                let d = self.delta_frame(i)?;
                if l.inverse {
                    d.inverse()
                } else {
                    Ok(d)
                }
            }
            _ => Ok(self.rho_generator(l)?.matrix),
        }
    }

    /// Image of a Torelli word built from Torelli letters and `Delta_i`
    /// frames (`i < g`), as the ordered product of letter images.
    pub fn rho_word(&self, w: &McgWord) -> Result<PrymImage> {
        self.surface.validate(w)?;
        if let Some(bad) = w.letters().iter().find(|l| {
            !(l.generator.is_torelli() || matches!(l.generator, Generator::Delta(i) if i < self.genus))
        }) {
            return Err(Error::NoPrymImage(bad.to_string()));
        }
        if !is_torelli(w, &self.surface)? {
            return Err(Error::NoPrymImage(format!("{w} (not in the Torelli group)")));
        }
        let m = w
            .letters()
            .iter()
            .try_fold(IntMatrix::identity(self.rank()), |acc, &l| acc.multiply(&self.letter_image(l)?))?;
        Ok(PrymImage::new(m))
    }

    /// Torelli words whose images are `T_{+-i}^4` and
    /// `T_{+-i}^4 T_{+-j}^4 T_{+-i,+-j}^{-4}` for all `1 <= i < j < g`.
    pub fn standard_words(&self) -> Vec<McgWord> {
        let g = self.genus;
        let letter = |gen| McgWord::from(Letter::new(gen));
        let delta = |i| letter(Generator::Delta(i));
        let mut out = Vec::new();
        for i in 1..g {
            let t = letter(Generator::TorelliT(i));
            out.push(t.clone());
            out.push(t.conjugate_by(&delta(i)));
        }
        for i in 1..g {
            for j in i + 1..g {
                let r = letter(Generator::TorelliR(i, j));
                let di = delta(i).inverse();
                let dj = delta(j).inverse();
                out.push(r.clone());
                out.push(r.conjugate_by(&di));
                out.push(r.conjugate_by(&dj));
                out.push(r.conjugate_by(&di.concat(&dj)));
            }
        }
        out
    }

    pub fn standard_generators(&self) -> Result<Vec<(McgWord, PrymImage)>> {
        self.standard_words()
            .into_iter()
            .map(|w| self.rho_word(&w).map(|img| (w, img)))
            .collect()
    }

    pub fn cover_catalog(&self) -> CoverCatalog {
        CoverCatalog::new(self.genus)
    }
}

/// Element of `PSp(2g-2, Z)` stored by its sign-canonical lift (first
/// nonzero entry positive).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrymImage {
    matrix: IntMatrix,
}

impl PrymImage {
    pub fn new(m: IntMatrix) -> Self {
        Self { matrix: m.projective_canonical() }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.matrix.multiply(&other.matrix)?))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self::new(self.matrix.inverse()?))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Characteristic polynomial of the canonical lift; the other lift has `f(-x)`.
    pub fn char_poly(&self) -> IntPolynomial {
        self.matrix.char_poly()
    }
}

/// The double covers of a genus-`g` surface, one per nonzero class in
/// `H^1(S, Z/2)`. Only the cover obtained by cutting along `b_g` is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCatalog {
    pub genus: usize,
    pub count: BigUint,
    pub implemented: &'static str,
}

impl CoverCatalog {
    pub fn new(genus: usize) -> Self {
        Self {
            genus,
            count: (BigUint::one() << (2 * genus)) - BigUint::one(),
            implemented: "cut along b_g, two copies glued crosswise",
        }
    }
}

/// Result of closing the mod-`p` generator images under multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteIndexReport {
    pub p: u64,
    pub closure_size: u64,
    pub group_order: BigUint,
    pub full: bool,
}

/// Closes the images of `gens` in `PSp(2g-2, F_p)` and compares with the group order.
pub fn closure_report(m: &PrymModule, gens: &[IntMatrix], p: u64, budget: &Budget) -> Result<FiniteIndexReport> {
    if p < 3 {
        return Err(Error::InvalidModulus(p));
    }
    let spec = FiniteGroupSpec::new(m.genus - 1, p, true)?;
    let reduced = gens.iter().map(|g| g.reduce_mod(p)).collect::<Result<Vec<_>>>()?;
    let closure = bfs_closure(&reduced, &spec, budget)?;
    let order = group_order(&spec);
    let size = closure.len() as u64;
    Ok(FiniteIndexReport { p, closure_size: size, full: BigUint::from(size) == order, group_order: order })
}

/// Whether the mod-`p` images of every standard generator generate all of
/// `PSp(2g-2, F_p)`.
pub fn image_generates_finite_index_mod_p(m: &PrymModule, p: u64, budget: &Budget) -> Result<FiniteIndexReport> {
    let gens: Vec<IntMatrix> = m.standard_generators()?.into_iter().map(|(_, img)| img.into_matrix()).collect();
    closure_report(m, &gens, p, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(g: usize) -> PrymModule {
        PrymModule::new(g).unwrap()
    }

    fn w(text: &str) -> McgWord {
        text.parse().unwrap()
    }

    fn apply(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
        a.apply(v).unwrap()
    }

    fn add(a: &[BigInt], b: &[BigInt], c: i64) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y * BigInt::from(c)).collect()
    }

    #[test]
    fn genus_below_three_is_rejected() {
        assert!(matches!(PrymModule::new(2), Err(Error::InvalidGenus { .. })));
    }

    #[test]
    fn elementary_t_examples() {
        let m = m(3);
        let t1 = m.elementary_t(1).unwrap();
        let (z1, zm1, z2) = (m.z(1).unwrap(), m.z(-1).unwrap(), m.z(2).unwrap());
        assert_eq!(apply(&t1, &z1), add(&z1, &zm1, 1));
        assert_eq!(apply(&t1, &zm1), zm1);
        assert_eq!(apply(&t1, &z2), z2);
        assert_eq!(t1.char_poly(), IntPolynomial::from_i64(&[-1, 1]).pow(4));
        assert!(m.elementary_t(3).is_err());
        assert!(m.elementary_t(0).is_err());
    }

    #[test]
    fn elementary_pair_examples() {
        let m = m(3);
        let t12 = m.elementary_t_pair(1, 2).unwrap();
        let (z1, zm1, zm2) = (m.z(1).unwrap(), m.z(-1).unwrap(), m.z(-2).unwrap());
        assert_eq!(apply(&t12, &z1), add(&z1, &zm2, 1));
        assert_eq!(apply(&t12, &zm1), zm1);
        assert!(t12.is_symplectic(m.form()).unwrap());
        assert!(m.elementary_t_pair(1, -1).is_err());
        assert!(m.elementary_t_pair(2, 2).is_err());
    }

    #[test]
    fn fourth_power_of_t1() {
        let m = m(3);
        let img = m.rho_generator("t1".parse().unwrap()).unwrap();
        let (z1, zm1) = (m.z(1).unwrap(), m.z(-1).unwrap());
        assert_eq!(apply(img.matrix(), &z1), add(&z1, &zm1, 4));
        let t1 = m.elementary_t(1).unwrap();
        let repeated = t1.multiply(&t1).unwrap().multiply(&t1).unwrap().multiply(&t1).unwrap();
        assert_eq!(img.matrix(), &repeated);
        assert_eq!(repeated.get(m.position(-1).unwrap(), m.position(1).unwrap()), &BigInt::from(4));
    }

    #[test]
    fn t1_inverse_has_minus_one() {
        let m = m(3);
        let inv = m.elementary_t(1).unwrap().inverse().unwrap();
        let (z1, zm1) = (m.z(1).unwrap(), m.z(-1).unwrap());
        assert_eq!(apply(&inv, &z1), add(&z1, &zm1, -1));
    }

    #[test]
    fn t1_fourth_power_reduces_to_identity_mod_2() {
        let m = m(3);
        assert!(m.t_image(1).unwrap().reduce_mod(2).unwrap().is_identity());
    }

    #[test]
    fn rho_on_words() {
        let m = m(4);
        assert!(m.rho_word(&McgWord::empty()).unwrap().is_identity());
        assert!(m.rho_word(&w("t1 t1^-1")).unwrap().is_identity());
        let prod = m.t_image(1).unwrap().multiply(&m.t_image(2).unwrap()).unwrap();
        assert_eq!(m.rho_word(&w("t1 t2")).unwrap(), PrymImage::new(prod));
    }

    #[test]
    fn rho_rejects_non_torelli() {
        let m = m(3);
        assert!(matches!(m.rho_word(&w("Da1")), Err(Error::NoPrymImage(_))));
        assert!(matches!(m.rho_word(&w("Delta1 t1")), Err(Error::NoPrymImage(_))));
        assert!(matches!(m.rho_word(&w("Delta3 t1 Delta3^-1")), Err(Error::NoPrymImage(_))));
        assert!(matches!(m.rho_generator("Delta1".parse().unwrap()), Err(Error::NoPrymImage(_))));
    }

    #[test]
    fn delta_conjugate_of_t_gives_t_minus_i() {
        let m = m(3);
        for i in 1..3usize {
            let word = w(&format!("Delta{i} t{i} Delta{i}^-1"));
            let expected = m.elementary_t(-(i as i64)).unwrap().pow(4).unwrap();
            assert_eq!(m.rho_word(&word).unwrap(), PrymImage::new(expected));
        }
    }

    #[test]
    fn r_image_is_fourth_power_of_difference_transvection() {
        // the two lifts of r have classes +-(z_{-j} - z_{-i}) and each twist
        // contributes the square of the transvection along that class
        let m = m(4);
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let v = add(&m.z(-j).unwrap(), &m.z(-i).unwrap(), -1);
            let tv = m.form().transvection(&v).unwrap().pow(4).unwrap();
            assert_eq!(m.r_image(i as usize, j as usize).unwrap(), tv);
        }
    }

    #[test]
    fn cover_count() {
        assert_eq!(CoverCatalog::new(3).count, BigUint::from(63u32));
        assert_eq!(m(4).cover_catalog().count, BigUint::from(255u32));
    }

    #[test]
    fn standard_generator_count() {
        // 2(g-1) t-type and 4 C(g-1, 2) r-type words
        assert_eq!(m(3).standard_words().len(), 8);
        assert_eq!(m(4).standard_words().len(), 18);
    }

    #[test]
    fn single_generator_is_not_enough() {
        let m = m(3);
        let report = closure_report(&m, &[m.t_image(1).unwrap()], 3, &Budget::default()).unwrap();
        assert!(!report.full);
        assert_eq!(report.closure_size, 3);
    }

    #[test]
    fn full_image_mod_3() {
        let m = m(3);
        let report = image_generates_finite_index_mod_p(&m, 3, &Budget::default()).unwrap();
        assert_eq!(report.closure_size, 25920);
        assert!(report.full);
    }
}
