use std::sync::Arc;

use crate::syntax::{Alphabet, Pretheory};

use super::judgment_ops::tensor_judgment;
use super::operand::{TensorError, TensorPlan};

/// The pair alphabet of two alphabets: pair variables, sort-by-sort pair
/// sorts, and the disjoint union of sort-by-term and term-by-sort pair
/// terms.
pub fn tensor_alphabet(left: &Pretheory, right: &Pretheory) -> Arc<Alphabet> {
    Arc::new(Alphabet::tensor(left.alphabet().clone(), right.alphabet().clone()))
}

/// The tensor product pretheory: axioms are the defined products
/// `J (.) J'` over all axiom pairs, in left-major order with sort axioms
/// first so the printed form declares before use. The introduction
/// discipline is checked on construction.
pub fn tensor_theory(left: &Pretheory, right: &Pretheory) -> Result<Pretheory, TensorError> {
    let plan = TensorPlan::new(left, right);
    let mut sorts = Vec::new();
    let mut terms = Vec::new();
    let mut eqs = Vec::new();
    for j in left.axioms() {
        for j2 in right.axioms() {
            if let Some(prod) = tensor_judgment(j, j2, &plan)? {
                match &prod {
                    crate::syntax::Judgment::Sort(..) => sorts.push(prod),
                    crate::syntax::Judgment::Term(..) => terms.push(prod),
                    _ => eqs.push(prod),
                }
            }
        }
    }
    let mut axioms = sorts;
    axioms.extend(terms);
    axioms.extend(eqs);
    let name = format!("{}_x_{}", left.name(), right.name());
    Ok(Pretheory::new(name, tensor_alphabet(left, right), axioms)?)
}
