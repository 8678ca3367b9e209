//! Chern–Simons link invariants for SU(2)_K and SU(N)_K evaluated at roots
//! of unity, with numerical checks of level-rank duality.
//!
//! The crate is organised bottom-up: Young diagram combinatorics
//! ([`young`]), scalar WZW data ([`wzw`]), modular data ([`modular`]),
//! torus-family link invariants ([`torus`]), SU(2) recoupling data
//! ([`racah`]), plat-presented hyperbolic links ([`hyperbolic`]), the
//! fundamental-representation braid trace ([`hecke`]), a Kauffman bracket
//! state sum ([`oracle`]), minimal-model cosets ([`coset`]) and the
//! q → q⁻¹ transposition symmetry ([`symmetry`]).

pub mod coset;
pub mod error;
pub mod hecke;
pub mod hyperbolic;
pub mod modular;
pub mod oracle;
pub mod racah;
pub mod symmetry;
pub mod torus;
pub mod wzw;
pub mod young;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use wzw::SpinLabel;
pub use young::{TheoryParams, YoungDiagram};
