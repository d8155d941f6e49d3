//! Modular data, fusion rings and modular invariants of the SU(2)_k WZW
//! models and the unitary Virasoro minimal models (`c < 1`), together with the
//! A-D-E classification of their local extensions.

pub mod ade;
pub mod classification;
pub mod cli;
pub mod error;
pub mod fusion;
pub mod invariants;
pub mod modular_data;

pub use error::{Error, Result};
