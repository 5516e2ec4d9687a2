//! Exact real arithmetic over finitely many irrational generators.

mod context;
mod number;
mod parse;

pub use context::{
    Context, Generator, GeneratorContext, GeneratorKind, MIN_OPAQUE_DIGITS, PRECISION_LEVELS,
};
pub use number::{sort_exact, ExactNumber, Sign};
pub use parse::{parse_coeff_vector, parse_expr, parse_interval, parse_rational};
