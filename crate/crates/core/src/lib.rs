//! Twisted Alexander polynomials, Reidemeister torsion and Ruelle zeta asymptotics.

pub mod complexes;
pub mod corpus;
pub mod error;
pub mod foxcalc;
pub mod knots;
pub mod laurent;
pub mod linalg;
pub mod mapping_torus;
pub mod numeric;
pub mod ring;
pub mod ruelle;
pub mod scalars;
pub mod verify;

pub use complexes::{BasedComplex, Complex, ScalarComplex};
pub use error::{Error, ErrorKind, Result};
pub use laurent::{LaurentPoly, RatFunc};
pub use linalg::{MatK, MatKt, MatLambda, Matrix};
pub use ring::{Domain, Field, Ring};
pub use scalars::CycloNumber;
