//! Sampling density compensation and inversion for nonequispaced Fourier transforms.
//!
//! The crate is organized around a small set of geometric types ([`fourier::Bandwidth`],
//! [`fourier::SamplingSet`]) and provides exact direct transforms, a fast approximate
//! transform ([`nfft`]), weight computation schemes ([`dcf`]), sampling grid generators
//! ([`grids`]), and test signals ([`signals`]).

pub mod dcf;
pub mod error;
pub mod fourier;
pub mod grids;
pub mod io;
pub mod nfft;
pub mod signals;
pub mod solver;

pub use error::{Error, Result};
