//! Integer and prime-field polynomials: factorization over `F_p` and `Q`,
//! plus the cyclotomic and power-substitution tests used by the
//! pseudo-Anosov proxy classifier.

mod conditions;
mod int;
mod modp;
mod zassenhaus;

pub use conditions::{cyclotomic, has_root_of_unity_root, orders_with_phi_at_most, power_substitution};
pub use int::IntPolynomial;
pub use modp::{factor_mod_p, ModFactorization, ModPolynomial};
pub use zassenhaus::{factor_q, is_reducible_q, Certificate, Factorizer};
