#![no_std]
extern crate alloc;

pub mod commutator;
pub mod duality;
pub mod error;
pub mod exponents;
pub mod ext;
pub mod fft;
pub mod grid;
pub mod lebesgue;
pub mod littlewood_paley;
pub mod mixed;
pub mod sampling;
pub mod solve;

pub use error::{Error, Result};
pub use exponents::{ExponentField, Family, SmoothnessField};
pub use ext::{Exponent, Extended};
pub use grid::{Field, Grid};
pub use littlewood_paley::ResolutionOfUnity;
pub use mixed::FieldSequence;
