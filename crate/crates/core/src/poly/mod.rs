//! Polynomial arithmetic over finite fields and the integers.

mod bivariate;
mod dense;
mod intpoly;
pub(crate) mod kernel;
mod laurent;
mod linalg;
mod resultant;

pub use bivariate::{BiPoly, XyPoly};
pub use dense::Poly;
pub use intpoly::IntPoly;
pub use laurent::LaurentPoly;
pub use linalg::Matrix;
pub use resultant::resultant;
