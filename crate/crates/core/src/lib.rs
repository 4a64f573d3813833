//! Free Omega-Rota-Baxter systems, their rewriting rules and the
//! Gröbner-Shirshov check.

pub mod eds;
pub mod error;
pub mod gsb;
pub mod omega_file;
pub mod order;
pub mod rewrite;
pub mod sample;
pub mod syntax;
pub mod systems;
pub mod terms;

pub use error::{Error, Result};
pub use terms::{GenId, OmegaId, Operator, Polynomial, Prime, Rational, Signature, StarWord, Tag, Word};
