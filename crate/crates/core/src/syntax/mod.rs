//! Purely structural layer: alphabets, expressions, precontexts, judgments,
//! pretheories, substitution and the textual file format. No derivability
//! logic lives here.

mod alpha;
mod alphabet;
mod expr;
mod judgment;
mod parse;
mod print;
mod theory;

pub use alpha::{alpha_equal, alpha_equal_exprs};
pub use alphabet::{Alphabet, Sym, SymKind, Var};
pub use expr::{classify, substitute, Class, Expr};
pub use judgment::{Judgment, Precontext};
pub use parse::{parse_judgment, parse_judgment_file, parse_theory, SyntaxError};
pub use print::{print_expr, print_judgment, print_theory};
pub use theory::{Pretheory, TheoryError};
