//! A typed λ-calculus engine for monadic natural-language semantics.

pub mod grammar;
pub mod kernel;
pub mod model;
pub mod monads;
pub mod signature;
pub mod syntax;
pub mod term;
pub mod transformers;
pub mod translation;
pub mod types;

pub use kernel::{EqMode, KernelError, NormalMode, TypeEnv};
pub use signature::Signature;
pub use term::Term;
pub use types::Type;
