//! The tensor product machinery: tensor alphabets, the mutually recursive
//! term operations (x)_t and (*)_t, the sort operation (x)_s, tensor
//! precontexts, the judgment product for the ten defined table cells, the
//! theory product, and morphism tensors. The starred variants used by the
//! symmetry apparatus share the same recursion with the two
//! compound-by-compound clauses exchanged.

mod judgment_ops;
mod morphism_ops;
mod operand;
mod term_ops;
mod theory_ops;

pub use judgment_ops::{tensor_context, tensor_judgment, tensor_sort};
pub use morphism_ops::{
    tensor_morphism, tensor_morphism_left, tensor_morphism_right, tensor_section_left,
    tensor_section_right, tuple_product,
};
pub use operand::{TensorError, TensorOperand, TensorPlan};
pub use term_ops::{blackcircle_term, star_blackcircle_term, star_tensor_term, tensor_term, Mode};
pub use theory_ops::{tensor_alphabet, tensor_theory};

use crate::syntax::Judgment;

/// The judgment product along the starred recursion; used by the symmetry
/// apparatus.
pub fn tensor_judgment_star(
    j: &Judgment,
    j2: &Judgment,
    plan: &TensorPlan,
) -> Result<Option<Judgment>, TensorError> {
    judgment_ops::tensor_judgment_in_mode(term_ops::Mode::Star, j, j2, plan)
}
