//! Construction of the fermionic signature operator for the massive Dirac
//! equation in ultrastatic and de Sitter space-times, by mode decomposition.
//!
//! The library works at the level of single spatial modes, where the Dirac
//! equation reduces to a 2x2 system for the amplitudes `(u1, u2)`.  It
//! provides
//!
//! * the two inner products in mode variables and smooth mass profiles
//!   ([`core`]-level vocabulary: [`SpinorPair`], [`MassProfile`],
//!   [`QuadratureRule`]),
//! * exact frequency splitting and spectral evolution for ultrastatic
//!   space-times ([`ultrastatic`]),
//! * adaptive evolution of de Sitter modes with certified extraction of the
//!   in/out asymptotic coefficients ([`desitter`]),
//! * the mass-integration operator and a brute-force time-domain pairing
//!   oracle ([`massosc`]),
//! * assembly and spectral analysis of the signature operator per mode
//!   ([`signature`]).

pub mod error;
pub mod halfint;
pub mod interval;
pub mod mat2;
pub mod ode;
pub mod profile;
pub mod quadrature;
pub mod spinor;

pub mod desitter;
pub mod massosc;
pub mod signature;
pub mod ultrastatic;

pub use error::Error;
pub use halfint::{HalfInt, ModeIndex};
pub use interval::MassInterval;
pub use mat2::Mat2;
pub use profile::{MassProfile, ProfileKind};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use spinor::{mode_scalar_product, mode_spacetime_density, SpinorPair};

pub use desitter::{AsymptoticData, DeSitterMode, ScatteringPair};
pub use massosc::{MassFamily, PairingResult};
pub use signature::{SignatureMatrix, SpectralSplit};
pub use ultrastatic::{FrequencyData, UltrastaticModel};

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
