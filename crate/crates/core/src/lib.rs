//! Exact arithmetic in the Grothendieck ring of stacks localized at `L` and
//! `L^n - 1`, Kapranov zeta functions of arbitrary classes, power structures,
//! and the Hodge–Deligne realization.

pub mod algebra;
pub mod class;
pub mod error;
pub mod hodge;
pub mod json;
pub mod power;
pub mod ring;
pub mod series;
pub mod verify;
pub mod zeta;

pub use algebra::{ExactRational, IntLaurent, MultiPoly};
pub use class::{DenomForm, HdRealization, MotivicClass};
pub use error::{Error, Result};
pub use ring::Ring;
pub use series::TruncatedSeries;
pub use zeta::ZetaConfig;
