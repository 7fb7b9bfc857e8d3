//! Exact construction and verification of the Drinfeld modular polynomial
//! `Phi_T(X, Y)` over `F_q[T]`, with the finite-field, polynomial and
//! combinatorial machinery it rests on.

pub mod combinat;
pub mod drinfeld;
pub mod error;
pub mod ff;
pub mod poly;
pub mod rng;
pub mod runner;

pub use drinfeld::{expand_phi, ModularPoly};
pub use error::{Error, Result};
pub use ff::{make_field, FieldElement, FieldSpec};
pub use poly::{BiPoly, IntPoly, LaurentPoly, Poly, XyPoly};
