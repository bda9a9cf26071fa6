//! Legendrian contact DGAs of (−1)-closures of positive braids, cobordism maps
//! for decomposable fillings, loop monodromies and the orbit distinguisher.

pub mod braid;
pub mod cli;
pub mod cobordism;
pub mod dga;
pub mod distinguisher;
pub mod error;
pub mod fillings;
pub mod fuzz;
pub mod json;
pub mod laurent;
pub mod map;
pub mod matrix;
pub mod monodromy;
pub mod nc;
pub mod presets;
pub mod ring;
pub mod spec;
pub mod symbol;
pub mod worked;

pub use error::{Error, Result};
