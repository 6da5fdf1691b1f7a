use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::poly::{has_root_of_unity_root, power_substitution, Factorizer, IntPolynomial};

/// Algebraic conditions on a characteristic polynomial that an element
/// must avoid to be a pseudo-Anosov candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classifier {
    /// `f` is reducible over `Q`.
    Reducible,
    /// `f` has a root of unity as a root.
    RootOfUnity,
    /// `f(x) = g(x^d)` for some `d >= 2`.
    PowerSubstitution,
}

impl Classifier {
    pub const ALL: [Classifier; 3] = [Classifier::Reducible, Classifier::RootOfUnity, Classifier::PowerSubstitution];

    pub fn name(self) -> &'static str {
        match self {
            Classifier::Reducible => "reducible",
            Classifier::RootOfUnity => "root-of-unity",
            Classifier::PowerSubstitution => "power-substitution",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Classifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" | "reducible" => Ok(Classifier::Reducible),
            "b" | "root-of-unity" | "unity" => Ok(Classifier::RootOfUnity),
            "c" | "power-substitution" | "power" => Ok(Classifier::PowerSubstitution),
            other => Err(Error::InvalidArgument(format!("unknown classifier `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassifierSet(u8);

impl ClassifierSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn all() -> Self {
        Classifier::ALL.into_iter().collect()
    }

    pub fn only(c: Classifier) -> Self {
        Self(c.bit())
    }

    pub fn with(self, c: Classifier) -> Self {
        Self(self.0 | c.bit())
    }

    pub fn contains(self, c: Classifier) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Classifier> {
        Classifier::ALL.into_iter().filter(move |&c| self.contains(c))
    }
}

impl FromIterator<Classifier> for ClassifierSet {
    fn from_iter<I: IntoIterator<Item = Classifier>>(iter: I) -> Self {
        iter.into_iter().fold(Self::empty(), Self::with)
    }
}

impl fmt::Display for ClassifierSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        let names: Vec<_> = self.iter().map(Classifier::name).collect();
        f.write_str(&names.join("+"))
    }
}

fn fires(c: Classifier, f: &IntPolynomial, factorizer: &Factorizer) -> Result<bool> {
    match c {
        Classifier::Reducible => factorizer.is_reducible_q(f),
        Classifier::RootOfUnity => Ok(has_root_of_unity_root(f)?.is_some()),
        Classifier::PowerSubstitution => Ok(power_substitution(f).is_some()),
    }
}

/// Cheapest tests first.
const EVALUATION_ORDER: [Classifier; 3] = [Classifier::PowerSubstitution, Classifier::RootOfUnity, Classifier::Reducible];

/// The selected conditions that hold for `f`.
pub fn classify_polynomial(f: &IntPolynomial, selected: ClassifierSet, factorizer: &Factorizer) -> Result<ClassifierSet> {
    let mut fired = ClassifierSet::empty();
    for c in EVALUATION_ORDER.into_iter().filter(|&c| selected.contains(c)) {
        if fires(c, f, factorizer)? {
            fired = fired.with(c);
        }
    }
    Ok(fired)
}

/// Whether any selected condition holds for `f`; stops at the first hit.
pub fn fires_any(f: &IntPolynomial, selected: ClassifierSet, factorizer: &Factorizer) -> Result<bool> {
    for c in EVALUATION_ORDER.into_iter().filter(|&c| selected.contains(c)) {
        if fires(c, f, factorizer)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The selected conditions that hold for the characteristic polynomial of `mat`.
pub fn classify_pa_proxy(mat: &IntMatrix, selected: ClassifierSet, factorizer: &Factorizer) -> Result<ClassifierSet> {
    classify_polynomial(&mat.char_poly(), selected, factorizer)
}
