//! Kapranov zeta functions on the stack ring.
//!
//! A class `a = b q^m / (1 - q^n)` has
//! `ζ_a(T) = ∏_{i ≥ 0} ζ_b(q^{m+in} T)`, whose `T^k` coefficient is a sum
//! over partitions of `k` of `R`-function values times products of the
//! symmetric powers `σ^j b`. [`zeta_class`] peels one denominator factor at
//! a time and applies that layer formula recursively, bottoming out at the
//! polynomial case `ζ_{L^s}(T) = 1/(1 - L^s T)`.

mod engine;
mod oracle;
mod partition;
mod rfun;
mod sigma;

pub use engine::{
    sigma_power, zeta_base, zeta_class, zeta_class_with, zeta_opposite, zeta_prop_formal,
    zeta_prop_layer,
};
pub use oracle::{funceq_check, funceq_compare, psi_prefix_oracle, FuncEqReport, PsiReport};
pub use partition::{partitions, Partition};
pub use rfun::{
    closed_form_taylor, q_vars, r_closed, r_multi, r_multi_definition_oracle, r_taylor_oracle,
    ClosedFormVariant,
};
pub use sigma::FormalSigma;

/// Size caps for the combinatorial parts of the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZetaConfig {
    /// Largest `k` for which `R_k` is evaluated through its permutation sum.
    pub cap_k: usize,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self { cap_k: 8 }
    }
}
