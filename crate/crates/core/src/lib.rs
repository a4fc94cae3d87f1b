pub mod analysis;
pub mod config;
pub mod error;
pub mod hilbert;
pub mod io;
pub mod kernels;
pub mod mesh;
pub mod pipeline;
pub mod presets;
pub mod profiles;
pub mod solver;
pub mod spline;
pub mod traveling_wave;

pub use error::{Error, Result};
