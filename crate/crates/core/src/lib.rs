//! Bonahon–Dreyer coordinates of Fuchsian representations of closed surface
//! groups in `PSL(n,R)`, evaluated on developed hyperbolic surfaces through
//! Veronese flags.

pub mod bd;
pub mod cli;
pub mod error;
pub mod flags;
pub mod hyperbolic;
pub mod multilinear;
pub mod pants;
pub mod sampling;
pub mod veronese;

pub use error::{Error, Result};
