//! Isomorph-free generation of codes with prescribed weights.

mod canonical;
mod classify;
mod database;
mod extend;
mod residual;

pub use canonical::{canonical_form, CanonicalForm, CanonicalKey};
pub use classify::{classify, ClassifyParams, IsoMode};
pub use database::{CodeDatabase, CodeRecord};
pub use extend::{extensions, for_each_extension, ExtensionProblem, ExtensionView};
pub use residual::{lift, residual_prescribed_search, ResidualOutput, ResidualSearchParams};
