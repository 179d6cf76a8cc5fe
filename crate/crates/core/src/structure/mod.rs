//! Associativity and symmetry apparatus: triple-alphabet reassociation,
//! the labelled box products, the starred term operations with the two
//! compound clauses exchanged, the swap interpretation, and executable
//! cross-derivability checks.

mod boxprod;
mod checks;
mod interp;
mod reassoc;

pub use boxprod::{box_product, BoxOperand, BoxVariant, Labelled};
pub use checks::{check_associativity, check_symmetry, CrossReport};
pub use interp::{apply_interpretation, swap_interpretation, Interpretation};
pub use reassoc::{reassociate_expr, reassociate_judgment, unreassociate_expr, unreassociate_judgment};

pub use crate::tensor::{star_blackcircle_term, star_tensor_term};

use crate::syntax::Judgment;
use crate::tensor::{TensorError, TensorPlan};

/// The judgment product with the starred term operations.
pub fn star_tensor_judgment(
    j: &Judgment,
    j2: &Judgment,
    plan: &TensorPlan,
) -> Result<Option<Judgment>, TensorError> {
    crate::tensor::tensor_judgment_star(j, j2, plan)
}
