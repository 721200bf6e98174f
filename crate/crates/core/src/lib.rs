//! Finite quantaloids, their diagonal quantaloids, quantaloid-enriched
//! categories and generalised partial metric spaces, all with exact tables.

pub mod corpus;
pub mod diagonals;
pub mod enriched;
pub mod error;
pub mod io;
pub mod lattice;
pub mod parmet;
pub mod properties;
pub mod quantaloid;
pub mod report;

pub use diagonals::{check_lax_functor, is_diagonal, Diagonals, LaxFunctor, LaxityReport};
pub use error::{QcatError, Result};
pub use lattice::HomLattice;
pub use parmet::ExtValue;
pub use properties::analyze_properties;
pub use quantaloid::{validate_quantaloid, Arrow, FiniteQuantaloid};
pub use report::{PropertyReport, Witness, WitnessValue};
