//! Built-in theories and golden files of their tensor products; the
//! regression anchor for the rest of the crate.

mod builtins;
pub mod fuzz;
mod golden;

pub use builtins::{builtin, BuiltinId, BUILTIN_IDS};
pub use golden::{golden_compare, golden_for, transcribe_judgment, Golden, GoldenDiff};
