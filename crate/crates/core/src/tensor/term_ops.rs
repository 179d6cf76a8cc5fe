use std::cell::Cell;

use crate::syntax::{substitute, Expr, Sym, Var};

use super::operand::{TensorError, TensorOperand, TensorPlan};

// The recursion is founded on derivation heights (which strictly decrease
// along every recursive call for derivable operands); the guard turns an
// ill-founded input into an error instead of divergence.
const RECURSION_GUARD: u32 = 4096;

thread_local! {
    static DEPTH: Cell<u32> = const { Cell::new(0) };
}

struct DepthGuard;

impl DepthGuard {
    fn enter() -> Result<DepthGuard, TensorError> {
        let d = DEPTH.with(|c| {
            let d = c.get() + 1;
            c.set(d);
            d
        });
        if d > RECURSION_GUARD {
            DEPTH.with(|c| c.set(c.get() - 1));
            return Err(TensorError::RecursionGuard);
        }
        Ok(DepthGuard)
    }
}

impl Drop for DepthGuard {
    fn drop(&mut self) {
        DEPTH.with(|c| c.set(c.get() - 1));
    }
}

/// Which recursion the compound-by-compound clauses follow. `Star` is the
/// symmetry apparatus's variant with the two substitution formulas
/// exchanged; everywhere else the procedures agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Circle {
    Tensor,
    Black,
}

/// The term operation `J (x)_t J'`.
pub fn tensor_term(
    l: &TensorOperand,
    r: &TensorOperand,
    plan: &TensorPlan,
) -> Result<Expr, TensorError> {
    t_op(Circle::Tensor, Mode::Plain, l, r, plan)
}

/// The term operation `J (*)_t J'`: the compound-by-compound formula
/// expands the left factor first; all other cases agree with `tensor_term`.
pub fn blackcircle_term(
    l: &TensorOperand,
    r: &TensorOperand,
    plan: &TensorPlan,
) -> Result<Expr, TensorError> {
    t_op(Circle::Black, Mode::Plain, l, r, plan)
}

pub fn star_tensor_term(
    l: &TensorOperand,
    r: &TensorOperand,
    plan: &TensorPlan,
) -> Result<Expr, TensorError> {
    t_op(Circle::Tensor, Mode::Star, l, r, plan)
}

pub fn star_blackcircle_term(
    l: &TensorOperand,
    r: &TensorOperand,
    plan: &TensorPlan,
) -> Result<Expr, TensorError> {
    t_op(Circle::Black, Mode::Star, l, r, plan)
}

pub(super) fn t_op(
    circle: Circle,
    mode: Mode,
    l: &TensorOperand,
    r: &TensorOperand,
    plan: &TensorPlan,
) -> Result<Expr, TensorError> {
    let _guard = DepthGuard::enter()?;
    match (l.var_head(), r.var_head()) {
        // case (i): a pair variable
        (Some(x), Some(y)) => Ok(Expr::Var(Var::pair(x.clone(), y.clone()))),
        // case (ii): variable against a compound term
        (Some(_), None) => {
            let TensorOperand::Term { ctx: yctx, term: v, sort: _ } = r else { unreachable!() };
            let Expr::App(t, t_args) = v else { unreachable!() };
            let Expr::App(s_head, s_args) = l.sort() else {
                return Err(TensorError::Classify);
            };
            let mut left_ops = canonical_ops(l.ctx(), s_args, plan, Side::Left)?;
            left_ops.push(l.clone());
            let right_ops = canonical_ops(yctx, t_args, plan, Side::Right)?;
            let entries = ops_product(mode, &left_ops, &right_ops, plan)?;
            Ok(Expr::App(Sym::pair(s_head.clone(), t.clone()), entries))
        }
        // case (iii): compound term against a variable
        (None, Some(_)) => {
            let TensorOperand::Term { ctx: xctx, term: u, sort: _ } = l else { unreachable!() };
            let Expr::App(s, s_args) = u else { unreachable!() };
            let Expr::App(t_head, t_args) = r.sort() else {
                return Err(TensorError::Classify);
            };
            let left_ops = canonical_ops(xctx, s_args, plan, Side::Left)?;
            let mut right_ops = canonical_ops(r.ctx(), t_args, plan, Side::Right)?;
            right_ops.push(r.clone());
            let entries = ops_product(mode, &left_ops, &right_ops, plan)?;
            Ok(Expr::App(Sym::pair(s.clone(), t_head.clone()), entries))
        }
        // case (iv): both compound
        (None, None) => {
            let expand_right_first = match (circle, mode) {
                (Circle::Tensor, Mode::Plain) | (Circle::Black, Mode::Star) => true,
                (Circle::Black, Mode::Plain) | (Circle::Tensor, Mode::Star) => false,
            };
            if expand_right_first {
                // (<>): (x^U (x) v)[u (x) y_j | x.y_j]
                let x = plan.fresh_left(l.ctx());
                let aug = TensorOperand::aug_sort(l.ctx().clone(), l.sort().clone(), x.clone())?;
                let body = t_op(Circle::Tensor, mode, &aug, r, plan)?;
                let yctx = r.ctx();
                let bindings: Vec<(Expr, Var)> = (0..yctx.len())
                    .map(|j| {
                        let yj = TensorOperand::entry_aug(yctx, j);
                        Ok((
                            t_op(Circle::Tensor, mode, l, &yj, plan)?,
                            Var::pair(x.clone(), yctx.var(j).clone()),
                        ))
                    })
                    .collect::<Result<_, TensorError>>()?;
                Ok(substitute(&body, &bindings))
            } else {
                // (<*>): (u (x) y^V)[x_i (x) v | x_i.y]
                let y = plan.fresh_right(r.ctx());
                let aug = TensorOperand::aug_sort(r.ctx().clone(), r.sort().clone(), y.clone())?;
                let body = t_op(Circle::Tensor, mode, l, &aug, plan)?;
                let xctx = l.ctx();
                let bindings: Vec<(Expr, Var)> = (0..xctx.len())
                    .map(|i| {
                        let xi = TensorOperand::entry_aug(xctx, i);
                        Ok((
                            t_op(Circle::Tensor, mode, &xi, r, plan)?,
                            Var::pair(xctx.var(i).clone(), y.clone()),
                        ))
                    })
                    .collect::<Result<_, TensorError>>()?;
                Ok(substitute(&body, &bindings))
            }
        }
    }
}

pub(super) enum Side {
    Left,
    Right,
}

/// Arguments as term operands at their canonical sorts.
pub(super) fn canonical_ops(
    ctx: &crate::syntax::Precontext,
    args: &[Expr],
    plan: &TensorPlan,
    side: Side,
) -> Result<Vec<TensorOperand>, TensorError> {
    let theory = match side {
        Side::Left => plan.left,
        Side::Right => plan.right,
    };
    args.iter().map(|a| TensorOperand::canonical(ctx, a.clone(), theory)).collect()
}

/// The lexicographically ordered family `(l_i (x) r_j)` of length m*n.
pub(super) fn ops_product(
    mode: Mode,
    ls: &[TensorOperand],
    rs: &[TensorOperand],
    plan: &TensorPlan,
) -> Result<Vec<Expr>, TensorError> {
    let mut out = Vec::with_capacity(ls.len() * rs.len());
    for l in ls {
        for r in rs {
            out.push(t_op(Circle::Tensor, mode, l, r, plan)?);
        }
    }
    Ok(out)
}
