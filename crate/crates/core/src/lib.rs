//! Prime and k-almost-prime zeta functions, translated Erdős sums
//! f(ℕ_k, h) = Σ_{Ω(n)=k} 1/(n(log n + h)), and the constants and inequality
//! chains built on them.

pub mod almost_prime;
pub mod bounds;
pub mod context;
pub mod enumerator;
pub mod error;
pub mod prime_zeta;
pub mod quadrature;
pub mod roots;
pub mod special;
pub mod translated;
pub mod verify;

#[cfg(test)]
mod proptests;

pub use context::{make_context, round_f64_for_display, round_for_display, NumericContext};
pub use error::{Error, Result};
pub use special::{Arg, EvalResult, Work};
