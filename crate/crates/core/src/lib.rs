//! Brauer-type eigenvalue shifts for matrix polynomials and matrix Laurent
//! polynomials, canonical factorizations and their updates under shifts, and
//! shift-accelerated solution of unilateral matrix equations.

pub mod eigen;
pub mod equations;
pub mod error;
pub mod factorizations;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod random;
pub mod shifts;
pub mod spectra;
pub mod types;

pub use error::{Error, Result};
pub use poly::{LaurentPoly, MatrixFunction, MatrixPoly};
pub use types::{CMatrix, CVector, Complex, EigenPair, Eigenvalue};
