pub mod bdequiv;
pub mod config;
pub mod equidecomp;
pub mod error;
pub mod exactnum;
pub mod hadwiger;
pub mod intsolve;
pub mod modelset;
pub mod report;
pub mod scheme;
pub mod vector;
pub mod window;

pub use error::{Error, Result};
pub use exactnum::{Context, ExactNumber, GeneratorContext, Sign};
