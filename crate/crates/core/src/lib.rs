//! Numerical toolkit for scalar generalized Nevanlinna functions with one
//! negative square.
//!
//! A function of the class factors as a rational term, carrying its zero and
//! pole of nonpositive type, times an ordinary Nevanlinna function given by
//! integral representation data. On top of that representation the crate
//! locates the unique zero of nonpositive type of every member of the
//! fractional linear family, classifies the local behavior at real zeros,
//! traces the full parameter path over the extended reals, and provides the
//! closed-form geometry available for purely rational factors and for paths
//! confined to the extended real line.

pub mod error;
pub mod extended;
pub mod factor;
pub mod jet;
pub mod limits;
pub mod measure;
pub mod n1;
pub mod nevanlinna;
pub mod quad;

pub use error::{Error, Result};
pub use extended::{chordal, chordal_real, ExtendedPoint, ExtendedReal, Tau, TauParameter};
pub use factor::FactorForm;
pub use measure::{MeasureTerm, Weight};
pub use n1::{make_q, ComplexMap, Moebius, N1Function};
pub use nevanlinna::{GapList, NevanlinnaFunction, Side};
