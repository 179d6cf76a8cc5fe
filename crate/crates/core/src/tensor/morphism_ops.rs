use crate::syntax::{Expr, Precontext, Pretheory};

use super::operand::{TensorError, TensorOperand, TensorPlan};
use super::term_ops::tensor_term;

/// Lexicographically reindexed entrywise products of two operand tuples.
pub fn tuple_product(
    ls: &[TensorOperand],
    rs: &[TensorOperand],
    plan: &TensorPlan,
) -> Result<Vec<Expr>, TensorError> {
    let mut out = Vec::with_capacity(ls.len() * rs.len());
    for l in ls {
        for r in rs {
            out.push(tensor_term(l, r, plan)?);
        }
    }
    Ok(out)
}

fn morphism_ops(
    f: &[Expr],
    x: &Precontext,
    theory: &Pretheory,
) -> Result<Vec<TensorOperand>, TensorError> {
    f.iter().map(|fi| TensorOperand::canonical(x, fi.clone(), theory)).collect()
}

fn context_ops(y: &Precontext) -> Vec<TensorOperand> {
    (0..y.len()).map(|j| TensorOperand::entry_term(y, j)).collect()
}

/// `f (x) Y : X (x) Y -> A (x) Y` for a morphism `f : X -> A`: the entries
/// are `f_i^{S(f_i)} (x) y_j^{Y_j}`.
pub fn tensor_morphism_right(
    f: &[Expr],
    x: &Precontext,
    y: &Precontext,
    plan: &TensorPlan,
) -> Result<Vec<Expr>, TensorError> {
    tuple_product(&morphism_ops(f, x, plan.left)?, &context_ops(y), plan)
}

/// `X (x) g : X (x) Y -> X (x) B` for a morphism `g : Y -> B`.
pub fn tensor_morphism_left(
    x: &Precontext,
    g: &[Expr],
    y: &Precontext,
    plan: &TensorPlan,
) -> Result<Vec<Expr>, TensorError> {
    tuple_product(&context_ops(x), &morphism_ops(g, y, plan.right)?, plan)
}

/// `f (x) g : X (x) Y -> A (x) B`.
pub fn tensor_morphism(
    f: &[Expr],
    x: &Precontext,
    g: &[Expr],
    y: &Precontext,
    plan: &TensorPlan,
) -> Result<Vec<Expr>, TensorError> {
    tuple_product(&morphism_ops(f, x, plan.left)?, &morphism_ops(g, y, plan.right)?, plan)
}

/// `(x_1, ..., x_m, u^U) (x) Y`: tensoring a section of a display map on
/// the left with a context.
pub fn tensor_section_right(
    u: &Expr,
    u_sort: &Expr,
    x: &Precontext,
    y: &Precontext,
    plan: &TensorPlan,
) -> Result<Vec<Expr>, TensorError> {
    let mut ops = context_ops(x);
    ops.push(TensorOperand::term(x.clone(), u.clone(), u_sort.clone())?);
    tuple_product(&ops, &context_ops(y), plan)
}

/// `X (x) (y_1, ..., y_n, v^V)`.
pub fn tensor_section_left(
    x: &Precontext,
    v: &Expr,
    v_sort: &Expr,
    y: &Precontext,
    plan: &TensorPlan,
) -> Result<Vec<Expr>, TensorError> {
    let mut ops = context_ops(y);
    ops.push(TensorOperand::term(y.clone(), v.clone(), v_sort.clone())?);
    tuple_product(&context_ops(x), &ops, plan)
}
