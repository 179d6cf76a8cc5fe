use crate::syntax::{substitute, Expr, Judgment, Precontext, Sym, Var};

use super::operand::{TensorError, TensorOperand, TensorPlan};
use super::term_ops::{canonical_ops, ops_product, t_op, Circle, Mode, Side};

/// The sort operation `(x)_s` on two augmented sort judgments: the pair
/// head applied to the lexicographic `(k+1)(l+1) - 1` entry list (the
/// "incomplete matrix").
pub fn tensor_sort(
    l: &TensorOperand,
    r: &TensorOperand,
    plan: &TensorPlan,
) -> Result<Expr, TensorError> {
    tensor_sort_in_mode(Mode::Plain, l, r, plan)
}

pub(crate) fn tensor_sort_in_mode(
    mode: Mode,
    l: &TensorOperand,
    r: &TensorOperand,
    plan: &TensorPlan,
) -> Result<Expr, TensorError> {
    let (TensorOperand::AugSort { ctx: xctx, sort: u, .. }, TensorOperand::AugSort { ctx: yctx, sort: v, .. }) =
        (l, r)
    else {
        return Err(TensorError::OperandShape);
    };
    let (Expr::App(s_head, s_args), Expr::App(t_head, t_args)) = (u, v) else {
        return Err(TensorError::Classify);
    };
    let mut left_ops = canonical_ops(xctx, s_args, plan, Side::Left)?;
    left_ops.push(l.clone());
    let mut right_ops = canonical_ops(yctx, t_args, plan, Side::Right)?;
    right_ops.push(r.clone());
    let mut entries = ops_product(mode, &left_ops, &right_ops, plan)?;
    entries.pop(); // the final x(x)y slot stays open
    Ok(Expr::App(Sym::pair(s_head.clone(), t_head.clone()), entries))
}

/// The tensor precontext `X (x) Y`: the pairs `(x_i.y_j : X_i (x) Y_j)` in
/// lexicographic (row-major) order, each entry sort over the truncations.
pub fn tensor_context(
    x: &Precontext,
    y: &Precontext,
    plan: &TensorPlan,
) -> Result<Precontext, TensorError> {
    tensor_context_in_mode(Mode::Plain, x, y, plan)
}

pub(crate) fn tensor_context_in_mode(
    mode: Mode,
    x: &Precontext,
    y: &Precontext,
    plan: &TensorPlan,
) -> Result<Precontext, TensorError> {
    let mut entries = Vec::with_capacity(x.len() * y.len());
    for i in 0..x.len() {
        let xi = TensorOperand::entry_aug(x, i);
        for j in 0..y.len() {
            let yj = TensorOperand::entry_aug(y, j);
            let sort = tensor_sort_in_mode(mode, &xi, &yj, plan)?;
            entries.push((Var::pair(x.var(i).clone(), y.var(j).clone()), sort));
        }
    }
    Precontext::new(entries).map_err(TensorError::ContextBuild)
}

/// The judgment product `J (.) J'` for the ten defined cells of the
/// product table; `None` is the value of the six undefined cells.
pub fn tensor_judgment(
    j: &Judgment,
    j2: &Judgment,
    plan: &TensorPlan,
) -> Result<Option<Judgment>, TensorError> {
    tensor_judgment_in_mode(Mode::Plain, j, j2, plan)
}

pub(crate) fn tensor_judgment_in_mode(
    mode: Mode,
    j: &Judgment,
    j2: &Judgment,
    plan: &TensorPlan,
) -> Result<Option<Judgment>, TensorError> {
    use Judgment::*;
    let tt = |l: &TensorOperand, r: &TensorOperand| t_op(Circle::Tensor, mode, l, r, plan);
    let bb = |l: &TensorOperand, r: &TensorOperand| t_op(Circle::Black, mode, l, r, plan);

    let out = match (j, j2) {
        (Sort(x, u), Sort(y, v)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), u.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), v.clone(), fy.clone())?;
            let x2 = x.extended(fx, u.clone()).map_err(TensorError::ContextBuild)?;
            let y2 = y.extended(fy, v.clone()).map_err(TensorError::ContextBuild)?;
            let ctx = tensor_context_in_mode(mode, &x2, &y2, plan)?.parent();
            Some(Sort(ctx, tensor_sort_in_mode(mode, &augl, &augr, plan)?))
        }
        (Sort(x, u), Term(y, v, vs)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), u.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), vs.clone(), fy.clone())?;
            let vop = TensorOperand::term(y.clone(), v.clone(), vs.clone())?;
            let x2 = x.extended(fx, u.clone()).map_err(TensorError::ContextBuild)?;
            let ctx = tensor_context_in_mode(mode, &x2, y, plan)?;
            let term = tt(&augl, &vop)?;
            let uv = tensor_sort_in_mode(mode, &augl, &augr, plan)?;
            let bindings = left_entry_bindings(mode, x, &vop, &fy, plan)?;
            Some(Term(ctx, term, substitute(&uv, &bindings)))
        }
        (Term(x, u, us), Sort(y, v)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), us.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), v.clone(), fy.clone())?;
            let uop = TensorOperand::term(x.clone(), u.clone(), us.clone())?;
            let y2 = y.extended(fy, v.clone()).map_err(TensorError::ContextBuild)?;
            let ctx = tensor_context_in_mode(mode, x, &y2, plan)?;
            let term = tt(&uop, &augr)?;
            let uv = tensor_sort_in_mode(mode, &augl, &augr, plan)?;
            let bindings = right_entry_bindings(mode, y, &uop, &fx, plan)?;
            Some(Term(ctx, term, substitute(&uv, &bindings)))
        }
        (Term(x, u, us), Term(y, v, vs)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), us.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), vs.clone(), fy.clone())?;
            let uop = TensorOperand::term(x.clone(), u.clone(), us.clone())?;
            let vop = TensorOperand::term(y.clone(), v.clone(), vs.clone())?;
            let ctx = tensor_context_in_mode(mode, x, y, plan)?;
            let lhs = tt(&uop, &vop)?;
            let rhs = bb(&uop, &vop)?;
            let uv = tensor_sort_in_mode(mode, &augl, &augr, plan)?;
            let mut bindings = left_entry_bindings(mode, x, &vop, &fy, plan)?;
            bindings.extend(right_entry_bindings(mode, y, &uop, &fx, plan)?);
            Some(TermEq(ctx, lhs, rhs, substitute(&uv, &bindings)))
        }
        (Sort(x, u), SortEq(y, v, v2)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), u.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), v.clone(), fy.clone())?;
            let augr2 = TensorOperand::aug_sort(y.clone(), v2.clone(), fy.clone())?;
            let x2 = x.extended(fx, u.clone()).map_err(TensorError::ContextBuild)?;
            let y2 = y.extended(fy, v.clone()).map_err(TensorError::ContextBuild)?;
            let ctx = tensor_context_in_mode(mode, &x2, &y2, plan)?.parent();
            Some(SortEq(
                ctx,
                tensor_sort_in_mode(mode, &augl, &augr, plan)?,
                tensor_sort_in_mode(mode, &augl, &augr2, plan)?,
            ))
        }
        (SortEq(x, u, u2), Sort(y, v)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), u.clone(), fx.clone())?;
            let augl2 = TensorOperand::aug_sort(x.clone(), u2.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), v.clone(), fy.clone())?;
            let x2 = x.extended(fx, u.clone()).map_err(TensorError::ContextBuild)?;
            let y2 = y.extended(fy, v.clone()).map_err(TensorError::ContextBuild)?;
            let ctx = tensor_context_in_mode(mode, &x2, &y2, plan)?.parent();
            Some(SortEq(
                ctx,
                tensor_sort_in_mode(mode, &augl, &augr, plan)?,
                tensor_sort_in_mode(mode, &augl2, &augr, plan)?,
            ))
        }
        (Sort(x, u), TermEq(y, v, v2, vs)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), u.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), vs.clone(), fy.clone())?;
            let vop = TensorOperand::term(y.clone(), v.clone(), vs.clone())?;
            let vop2 = TensorOperand::term(y.clone(), v2.clone(), vs.clone())?;
            let x2 = x.extended(fx, u.clone()).map_err(TensorError::ContextBuild)?;
            let ctx = tensor_context_in_mode(mode, &x2, y, plan)?;
            let lhs = tt(&augl, &vop)?;
            let rhs = tt(&augl, &vop2)?;
            let uv = tensor_sort_in_mode(mode, &augl, &augr, plan)?;
            let bindings = left_entry_bindings(mode, x, &vop, &fy, plan)?;
            Some(TermEq(ctx, lhs, rhs, substitute(&uv, &bindings)))
        }
        (TermEq(x, u, u2, us), Sort(y, v)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), us.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), v.clone(), fy.clone())?;
            let uop = TensorOperand::term(x.clone(), u.clone(), us.clone())?;
            let uop2 = TensorOperand::term(x.clone(), u2.clone(), us.clone())?;
            let y2 = y.extended(fy, v.clone()).map_err(TensorError::ContextBuild)?;
            let ctx = tensor_context_in_mode(mode, x, &y2, plan)?;
            let lhs = tt(&uop, &augr)?;
            let rhs = tt(&uop2, &augr)?;
            let uv = tensor_sort_in_mode(mode, &augl, &augr, plan)?;
            let bindings = right_entry_bindings(mode, y, &uop, &fx, plan)?;
            Some(TermEq(ctx, lhs, rhs, substitute(&uv, &bindings)))
        }
        (SortEq(x, u, u2), Term(y, v, vs)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), u.clone(), fx.clone())?;
            let augl2 = TensorOperand::aug_sort(x.clone(), u2.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), vs.clone(), fy.clone())?;
            let vop = TensorOperand::term(y.clone(), v.clone(), vs.clone())?;
            let x2 = x.extended(fx, u.clone()).map_err(TensorError::ContextBuild)?;
            let ctx = tensor_context_in_mode(mode, &x2, y, plan)?;
            let lhs = tt(&augl, &vop)?;
            let rhs = tt(&augl2, &vop)?;
            let uv = tensor_sort_in_mode(mode, &augl, &augr, plan)?;
            let bindings = left_entry_bindings(mode, x, &vop, &fy, plan)?;
            Some(TermEq(ctx, lhs, rhs, substitute(&uv, &bindings)))
        }
        (Term(x, u, us), SortEq(y, v, v2)) => {
            let (fx, fy) = (plan.fresh_left(x), plan.fresh_right(y));
            let augl = TensorOperand::aug_sort(x.clone(), us.clone(), fx.clone())?;
            let augr = TensorOperand::aug_sort(y.clone(), v.clone(), fy.clone())?;
            let augr2 = TensorOperand::aug_sort(y.clone(), v2.clone(), fy.clone())?;
            let uop = TensorOperand::term(x.clone(), u.clone(), us.clone())?;
            let y2 = y.extended(fy, v.clone()).map_err(TensorError::ContextBuild)?;
            let ctx = tensor_context_in_mode(mode, x, &y2, plan)?;
            let lhs = tt(&uop, &augr)?;
            let rhs = tt(&uop, &augr2)?;
            let uv = tensor_sort_in_mode(mode, &augl, &augr, plan)?;
            let bindings = right_entry_bindings(mode, y, &uop, &fx, plan)?;
            Some(TermEq(ctx, lhs, rhs, substitute(&uv, &bindings)))
        }
        _ => None,
    };
    Ok(out)
}

/// Bindings `[x_i (x) v | x_i.y]` eliminating the fresh right variable.
fn left_entry_bindings(
    mode: Mode,
    x: &Precontext,
    vop: &TensorOperand,
    fy: &Var,
    plan: &TensorPlan,
) -> Result<Vec<(Expr, Var)>, TensorError> {
    (0..x.len())
        .map(|i| {
            let xi = TensorOperand::entry_aug(x, i);
            Ok((
                t_op(Circle::Tensor, mode, &xi, vop, plan)?,
                Var::pair(x.var(i).clone(), fy.clone()),
            ))
        })
        .collect()
}

/// Bindings `[u (x) y_j | x.y_j]` eliminating the fresh left variable.
fn right_entry_bindings(
    mode: Mode,
    y: &Precontext,
    uop: &TensorOperand,
    fx: &Var,
    plan: &TensorPlan,
) -> Result<Vec<(Expr, Var)>, TensorError> {
    (0..y.len())
        .map(|j| {
            let yj = TensorOperand::entry_aug(y, j);
            Ok((
                t_op(Circle::Tensor, mode, uop, &yj, plan)?,
                Var::pair(fx.clone(), y.var(j).clone()),
            ))
        })
        .collect()
}
