//! Closed surfaces of genus `g`, their first homology with the intersection
//! form, and the homological action of words in Dehn twists.
//!
//! Homology is written in the basis `a_1, b_1, ..., a_g, b_g` with
//! `(a_i, b_j) = delta_ij` and `(a_i, a_j) = (b_i, b_j) = 0`. A Dehn twist
//! about a curve with class `t` acts as the transvection `h -> h + (h, t) t`.
//!
//! Words are read left to right and their matrix is the product of the
//! letter matrices in word order: `[w_1, ..., w_n]` maps to
//! `M(w_1) * ... * M(w_n)`, acting on column vectors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, SymplecticForm};

/// Genus-`g` surface with its symplectic homology lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    genus: usize,
    form: SymplecticForm,
}

impl SurfaceModel {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidGenus { genus, reason: "surfaces need genus at least 2" });
        }
        Ok(Self { genus, form: SymplecticForm::standard(2 * genus)? })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    pub fn labels(&self) -> Vec<String> {
        (1..=self.genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
    }

    fn check_handle(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.genus {
            return Err(Error::IndexOutOfRange(format!("handle {i} for genus {}", self.genus)));
        }
        Ok(())
    }

    pub fn a(&self, i: usize) -> Result<HomologyClass> {
        self.check_handle(i)?;
        Ok(HomologyClass::basis(self.rank(), 2 * (i - 1)))
    }

    pub fn b(&self, i: usize) -> Result<HomologyClass> {
        self.check_handle(i)?;
        Ok(HomologyClass::basis(self.rank(), 2 * (i - 1) + 1))
    }

    /// Chain curve between handles `i` and `i+1`, with class `a_i - a_{i+1}`.
    pub fn c(&self, i: usize) -> Result<HomologyClass> {
        if i == 0 || i >= self.genus {
            return Err(Error::IndexOutOfRange(format!("chain curve {i} for genus {}", self.genus)));
        }
        Ok(self.a(i)?.sub(&self.a(i + 1)?))
    }

    /// Homology class of the curve a twist letter is about, `None` for
    /// letters that are not single twists about a homologically nontrivial curve.
    pub fn twist_curve(&self, g: Generator) -> Result<Option<HomologyClass>> {
        match g {
            Generator::TwistA(i) => self.a(i).map(Some),
            Generator::TwistB(i) => self.b(i).map(Some),
            Generator::TwistC(i) => self.c(i).map(Some),
            _ => Ok(None),
        }
    }

    /// Checks every index in the word against the genus.
    pub fn validate(&self, w: &McgWord) -> Result<()> {
        for l in w.letters() {
            match l.generator {
                Generator::TwistA(i) | Generator::TwistB(i) | Generator::Delta(i) => self.check_handle(i)?,
                Generator::TwistC(i) => {
                    self.c(i)?;
                }
                Generator::TorelliT(i) => {
                    if i == 0 || i >= self.genus {
                        return Err(Error::IndexOutOfRange(format!("t{i} for genus {}", self.genus)));
                    }
                }
                Generator::TorelliR(i, j) => {
                    if i == 0 || j == 0 || i >= self.genus || j >= self.genus || i == j {
                        return Err(Error::IndexOutOfRange(format!("r{i},{j} for genus {}", self.genus)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of one letter on `H_1(S, Z)`.
    pub fn letter_matrix(&self, l: Letter) -> Result<IntMatrix> {
        let m = match l.generator {
            Generator::TorelliT(_) | Generator::TorelliR(..) => IntMatrix::identity(self.rank()),
            Generator::Delta(i) => {
                let ta = self.form.transvection(self.a(i)?.coords())?;
                let tb = self.form.transvection(self.b(i)?.coords())?;
                // D_b D_a D_b, a palindrome so the composition order is moot
                tb.multiply(&ta)?.multiply(&tb)?
            }
            g => {
                let v = self.twist_curve(g)?.expect("twist letter");
                self.form.transvection(v.coords())?
            }
        };
        if l.inverse {
            m.inverse()
        } else {
            Ok(m)
        }
    }
}

/// Vector of integer coordinates in the `a_1, b_1, ...` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass(Vec<BigInt>);

impl HomologyClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![BigInt::zero(); rank])
    }

    pub fn basis(rank: usize, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); rank];
        v[k] = BigInt::one();
        Self(v)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self(self.0.iter().map(|a| a * s).collect())
    }
}

/// `h -> h + (h, t) t`.
pub fn twist_action(h: &HomologyClass, t: &HomologyClass, form: &SymplecticForm) -> Result<HomologyClass> {
    if h.0.len() != t.0.len() {
        return Err(Error::DimensionMismatch { left: h.0.len(), right: t.0.len() });
    }
    let c = form.pair(&h.0, &t.0)?;
    Ok(h.add(&t.scale(&c)))
}

/// Named mapping classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Twist about `a_i`.
    TwistA(usize),
    /// Twist about `b_i`.
    TwistB(usize),
    /// Twist about the chain curve with class `a_i - a_{i+1}`.
    TwistC(usize),
    /// Twist about the null-homologous curve around handle `i` that lifts to
    /// the double cover as two curves with classes `+-z_{-i}`.
    TorelliT(usize),
    /// Twist about the null-homologous curve through handles `i`, `j`
    /// whose lifts have classes `+-(z_{-j} - z_{-i})`.
    TorelliR(usize, usize),
    /// `D_{b_i} D_{a_i} D_{b_i}`, rotating handle `i` by a quarter turn on homology.
    Delta(usize),
}

impl Generator {
    pub fn is_torelli(self) -> bool {
        matches!(self, Generator::TorelliT(_) | Generator::TorelliR(..))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator) -> Self {
        Self { generator, inverse: false }
    }

    pub fn inv(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generator {
            Generator::TwistA(i) => write!(f, "Da{i}")?,
            Generator::TwistB(i) => write!(f, "Db{i}")?,
            Generator::TwistC(i) => write!(f, "Dc{i}")?,
            Generator::TorelliT(i) => write!(f, "t{i}")?,
            Generator::TorelliR(i, j) if i < 10 && j < 10 => write!(f, "r{i}{j}")?,
            Generator::TorelliR(i, j) => write!(f, "r{i},{j}")?,
            Generator::Delta(i) => write!(f, "Delta{i}")?,
        }
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        let unknown = || Error::UnknownLetter(token.to_string());
        let (body, inverse) = match token.split_once('^') {
            Some((b, "-1")) => (b, true),
            Some((b, "1")) => (b, false),
            Some(_) => return Err(unknown()),
            None => (token, false),
        };
        let split = body.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
        let (name, digits) = body.split_at(split);
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let generator = match name {
            "Da" => Generator::TwistA(num(digits)?),
            "Db" => Generator::TwistB(num(digits)?),
            "Dc" => Generator::TwistC(num(digits)?),
            "t" => Generator::TorelliT(num(digits)?),
            "Delta" => Generator::Delta(num(digits)?),
            "r" => match digits.split_once([',', '_']) {
                Some((i, j)) => Generator::TorelliR(num(i)?, num(j)?),
                None if digits.len() == 2 => Generator::TorelliR(num(&digits[..1])?, num(&digits[1..])?),
                None => return Err(unknown()),
            },
            _ => return Err(unknown()),
        };
        Ok(Letter { generator, inverse })
    }
}

/// Word in the named generators, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct McgWord(Vec<Letter>);

impl McgWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `u w u^-1`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.concat(self).concat(&u.inverse())
    }
}

impl FromStr for McgWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(Self)
    }
}

impl fmt::Display for McgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", tokens.join(" "))
    }
}

impl From<Letter> for McgWord {
    fn from(l: Letter) -> Self {
        Self(vec![l])
    }
}

/// Image of a word in `Sp(2g, Z)`.
pub fn homology_matrix(w: &McgWord, s: &SurfaceModel) -> Result<IntMatrix> {
    s.validate(w)?;
    w.letters()
        .iter()
        .try_fold(IntMatrix::identity(s.rank()), |acc, &l| acc.multiply(&s.letter_matrix(l)?))
}

/// Whether the word acts trivially on homology.
pub fn is_torelli(w: &McgWord, s: &SurfaceModel) -> Result<bool> {
    Ok(homology_matrix(w, s)?.is_identity())
}

/// Twist letters whose transvections generate `Sp(2g, Z)`: twists about
/// every `a_i`, `b_i`, and chain curve `c_i`.
pub fn humphries_letters(genus: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 1..=genus {
        out.push(Letter::new(Generator::TwistA(i)));
        out.push(Letter::new(Generator::TwistB(i)));
    }
    for i in 1..genus {
        out.push(Letter::new(Generator::TwistC(i)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: usize) -> SurfaceModel {
        SurfaceModel::new(g).unwrap()
    }

    fn w(text: &str) -> McgWord {
        text.parse().unwrap()
    }

    #[test]
    fn twist_action_examples() {
        let s = s(2);
        let (a1, b1, a2) = (s.a(1).unwrap(), s.b(1).unwrap(), s.a(2).unwrap());
        assert_eq!(twist_action(&b1, &a1, s.form()).unwrap(), b1.sub(&a1));
        assert_eq!(twist_action(&a2, &a1, s.form()).unwrap(), a2);
        assert_eq!(twist_action(&a1, &b1, s.form()).unwrap(), a1.add(&b1));
        assert!(twist_action(&HomologyClass::zero(3), &a1, s.form()).is_err());
    }

    #[test]
    fn parse_and_print_round_trip() {
        let text = "Da1 Db1 Da1 t1 r12 Delta2^-1 Dc1 r3,12";
        assert_eq!(w(text).to_string(), text);
        assert_eq!(w("r1_2"), w("r12"));
        assert!(matches!("Dx1".parse::<Letter>(), Err(Error::UnknownLetter(_))));
        assert!(matches!("t1^2".parse::<Letter>(), Err(Error::UnknownLetter(_))));
        assert!(matches!("r123".parse::<Letter>(), Err(Error::UnknownLetter(_))));
    }

    #[test]
    fn empty_word_is_identity() {
        assert_eq!(homology_matrix(&McgWord::empty(), &s(3)).unwrap(), IntMatrix::identity(6));
    }

    #[test]
    fn torelli_letters_act_trivially() {
        let s = s(3);
        assert_eq!(homology_matrix(&w("t1"), &s).unwrap(), IntMatrix::identity(6));
        assert!(is_torelli(&w("t1"), &s).unwrap());
        assert!(is_torelli(&w("r12 t2^-1"), &s).unwrap());
        assert!(!is_torelli(&w("Da1"), &s).unwrap());
        assert!(is_torelli(&w("Delta1 t1 Delta1^-1"), &s).unwrap());
    }

    #[test]
    fn delta_rotates_handle() {
        let s = s(3);
        let m = homology_matrix(&w("Delta1"), &s).unwrap();
        let a1 = s.a(1).unwrap();
        let b1 = s.b(1).unwrap();
        assert_eq!(m.apply(a1.coords()).unwrap(), b1.coords());
        assert_eq!(m.apply(b1.coords()).unwrap(), a1.neg().coords());
    }

    #[test]
    fn index_validation() {
        let s = s(3);
        assert!(homology_matrix(&w("Da4"), &s).is_err());
        assert!(homology_matrix(&w("Dc3"), &s).is_err());
        assert!(homology_matrix(&w("t3"), &s).is_err());
        assert!(homology_matrix(&w("r11"), &s).is_err());
        assert!(SurfaceModel::new(1).is_err());
    }

    #[test]
    fn inverse_letters_cancel() {
        let s = s(3);
        let word = w("Da1 Dc2 Delta3 Db2^-1");
        let m = homology_matrix(&word.concat(&word.inverse()), &s).unwrap();
        assert!(m.is_identity());
    }
}
