//! Finite-dimensional algebraic quantum groups: Hopf structure derived from
//! structure constants, integrals and modular data, the dual pair, Fourier
//! transforms, the regular representation and GNS modular theory, plus an
//! exact backend for functions on discrete groups.

pub mod algebra;
pub mod check;
pub mod discrete;
pub mod duality;
pub mod error;
pub mod fourier;
pub mod gns;
pub mod groups;
pub mod heisenberg;
pub mod hopf;
pub mod integrals;
pub mod io;
pub mod numerics;
pub mod presets;
pub mod regular;

pub use algebra::{tensor_algebra, AlgebraElement, FiniteDimAlgebra, ValidationReport};
pub use check::{Check, Status};
pub use error::{Error, Result};
pub use groups::FiniteGroup;
pub use numerics::{ComplexMatrix, ComplexVector, Tolerance};
pub use hopf::{verify_hopf, HopfData};
pub use integrals::IntegralData;
pub use duality::{DualConvention, DualPair};
pub use fourier::Fourier;
pub use heisenberg::HeisenbergRep;
pub use regular::RegularRep;
pub use gns::{GnsData, GnsSpace, TomitaData};
pub use discrete::{DiscreteQuantumGroup, GroupOracle, Integers};
pub use io::{AlgebraFile, Preset};
