use crate::syntax::{Expr, Precontext, Sym};
use crate::tensor::{blackcircle_term, tensor_term, TensorError, TensorOperand, TensorPlan};

/// A labelled sort `U{x}` or `U{u}`: the sort expression with one extra
/// final slot, carrying its context explicitly (omission of the context is
/// print-time only). Removing the final slot recovers `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelled {
    pub ctx: Precontext,
    pub sort: Expr,
    pub last: Expr,
}

impl Labelled {
    /// The filled expression `T(alpha_1, ..., alpha_k, last)`.
    pub fn as_expr(&self) -> Result<Expr, TensorError> {
        match &self.sort {
            Expr::App(h, args) => {
                let mut args = args.clone();
                args.push(self.last.clone());
                Ok(Expr::App(h.clone(), args))
            }
            Expr::Var(_) => Err(TensorError::Classify),
        }
    }

    /// The operand for the final slot: a variable not in the context is an
    /// augmented sort judgment, anything else a term judgment.
    fn last_operand(&self) -> Result<TensorOperand, TensorError> {
        match &self.last {
            Expr::Var(v) if self.ctx.lookup(v).is_none() => {
                TensorOperand::aug_sort(self.ctx.clone(), self.sort.clone(), v.clone())
            }
            e => TensorOperand::term(self.ctx.clone(), e.clone(), self.sort.clone()),
        }
    }
}

/// One side of a box product: a labelled sort, or a compound term.
#[derive(Debug, Clone)]
pub enum BoxOperand {
    Full(Labelled),
    Term { ctx: Precontext, term: Expr },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxVariant {
    /// All entries tensored.
    Box,
    /// Final column and corner use the black circle.
    BlackSquare,
    /// Final column black, corner tensored; only defined on two labelled
    /// sorts.
    Half,
}

/// The labelled matrix products of the reassociation machinery. The full
/// grid is kept (no corner slot is dropped); entries come from the term
/// operations of the tensor module.
pub fn box_product(
    l: &BoxOperand,
    r: &BoxOperand,
    variant: BoxVariant,
    plan: &TensorPlan,
) -> Result<Expr, TensorError> {
    match (l, r) {
        (BoxOperand::Full(lu), BoxOperand::Full(rv)) => {
            let (Expr::App(lh, largs), Expr::App(rh, rargs)) = (&lu.sort, &rv.sort) else {
                return Err(TensorError::Classify);
            };
            let mut rows = ops(&lu.ctx, largs, plan, true)?;
            rows.push(lu.last_operand()?);
            let mut cols = ops(&rv.ctx, rargs, plan, false)?;
            cols.push(rv.last_operand()?);
            let last_col = cols.len() - 1;
            let last_row = rows.len() - 1;
            let mut entries = Vec::new();
            for (i, lop) in rows.iter().enumerate() {
                for (j, rop) in cols.iter().enumerate() {
                    let black = match variant {
                        BoxVariant::Box => false,
                        BoxVariant::BlackSquare => j == last_col,
                        BoxVariant::Half => j == last_col && i != last_row,
                    };
                    entries.push(entry(lop, rop, black, plan)?);
                }
            }
            Ok(Expr::App(Sym::pair(lh.clone(), rh.clone()), entries))
        }
        (BoxOperand::Term { ctx, term }, BoxOperand::Full(rv)) => {
            if variant == BoxVariant::Half {
                return Err(TensorError::OperandShape);
            }
            let Expr::App(lh, largs) = term else { return Err(TensorError::OperandShape) };
            let Expr::App(rh, rargs) = &rv.sort else { return Err(TensorError::Classify) };
            let rows = ops(ctx, largs, plan, true)?;
            let mut cols = ops(&rv.ctx, rargs, plan, false)?;
            cols.push(rv.last_operand()?);
            let last_col = cols.len() - 1;
            let mut entries = Vec::new();
            for lop in &rows {
                for (j, rop) in cols.iter().enumerate() {
                    let black = variant == BoxVariant::BlackSquare && j == last_col;
                    entries.push(entry(lop, rop, black, plan)?);
                }
            }
            Ok(Expr::App(Sym::pair(lh.clone(), rh.clone()), entries))
        }
        (BoxOperand::Full(lu), BoxOperand::Term { ctx, term }) => {
            if variant == BoxVariant::Half {
                return Err(TensorError::OperandShape);
            }
            let Expr::App(lh, largs) = &lu.sort else { return Err(TensorError::Classify) };
            let Expr::App(rh, rargs) = term else { return Err(TensorError::OperandShape) };
            let mut rows = ops(&lu.ctx, largs, plan, true)?;
            rows.push(lu.last_operand()?);
            let cols = ops(ctx, rargs, plan, false)?;
            let last_col = cols.len().checked_sub(1);
            let mut entries = Vec::new();
            for lop in &rows {
                for (j, rop) in cols.iter().enumerate() {
                    let black = variant == BoxVariant::BlackSquare && Some(j) == last_col;
                    entries.push(entry(lop, rop, black, plan)?);
                }
            }
            Ok(Expr::App(Sym::pair(lh.clone(), rh.clone()), entries))
        }
        _ => Err(TensorError::OperandShape),
    }
}

fn ops(
    ctx: &Precontext,
    args: &[Expr],
    plan: &TensorPlan,
    left: bool,
) -> Result<Vec<TensorOperand>, TensorError> {
    let theory = if left { plan.left } else { plan.right };
    args.iter().map(|a| TensorOperand::canonical(ctx, a.clone(), theory)).collect()
}

fn entry(
    l: &TensorOperand,
    r: &TensorOperand,
    black: bool,
    plan: &TensorPlan,
) -> Result<Expr, TensorError> {
    if black {
        blackcircle_term(l, r, plan)
    } else {
        tensor_term(l, r, plan)
    }
}
