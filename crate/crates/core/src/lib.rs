//! Exact computation of braid complexes of braids over Soergel
//! bimodules, their triply graded Hochschild homology, and the link
//! invariants and trace identities built from it.
//!
//! Pipeline: a [`CoxeterSystem`] gives a [`Realization`]; braid words become
//! minimized [`BimoduleComplex`]es; [`hochschild`] turns those into
//! [`TriGradedTable`]s; [`invariants`] reads off `X`, `Y` and trace values.
//! [`hecke`] and [`homfly`] are independent decategorified oracles.

pub mod coxeter;
mod entries;
pub mod elim;
pub mod error;
pub mod hilbert;
pub mod matrix;
pub mod poly;
pub mod realization;
pub mod scalar;
pub mod hecke;
pub mod laurent;
pub mod soergel;
pub mod complexes;
pub mod hochschild;
pub mod homfly;
pub mod invariants;

pub use complexes::{braid_complex, BimoduleComplex};
pub use coxeter::{BraidWord, CoxeterSystem, Letter};
pub use error::{Error, Result};
pub use hecke::{HeckeAlgebra, HeckeElt, TraceValue};
pub use hilbert::{GradedDims, Numerator};
pub use hochschild::{hh_table, TriGradedTable};
pub use homfly::{homfly_oracle, SkeinValue};
pub use invariants::{CheckReport, Conventions, Engine, InvariantSeries, Tables, Witness};
pub use laurent::{Laurent, RationalSeries};
pub use poly::MultiPoly;
pub use realization::Realization;
pub use scalar::{Gaussian, Q};
pub use soergel::Soergel;
