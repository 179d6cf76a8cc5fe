use std::sync::Arc;

use thiserror::Error;

use crate::kernel::canonical_sort;
use crate::syntax::{Alphabet, Expr, Judgment, Precontext, Pretheory, TheoryError, Var};

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("operand shape violates the variable/context disambiguation")]
    OperandShape,
    #[error("expression does not classify as required")]
    Classify,
    #[error("no canonical sort: {0}")]
    Canonical(String),
    #[error("tensor context failed scoping: {0}")]
    ContextBuild(String),
    #[error("operands must be sort or term judgments")]
    NotTensorable,
    #[error("term operation recursion exceeded its guard; operands are not height-founded")]
    RecursionGuard,
    #[error("product pretheory broke the introduction discipline: {0}")]
    Discipline(#[from] TheoryError),
}

/// An operand of the term operations: either an augmented sort judgment
/// `(X |- U sort, x)` with `x` not occurring in `X`, or a term judgment
/// `X |- u : U`. A bare variable head is a term judgment exactly when the
/// variable occurs in the context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorOperand {
    AugSort { ctx: Precontext, sort: Expr, var: Var },
    Term { ctx: Precontext, term: Expr, sort: Expr },
}

impl TensorOperand {
    pub fn aug_sort(ctx: Precontext, sort: Expr, var: Var) -> Result<TensorOperand, TensorError> {
        if ctx.lookup(&var).is_some() {
            return Err(TensorError::OperandShape);
        }
        Ok(TensorOperand::AugSort { ctx, sort, var })
    }

    pub fn term(ctx: Precontext, term: Expr, sort: Expr) -> Result<TensorOperand, TensorError> {
        if let Expr::Var(v) = &term {
            if ctx.lookup(v).is_none() {
                return Err(TensorError::OperandShape);
            }
        }
        Ok(TensorOperand::Term { ctx, term, sort })
    }

    /// A term operand typed at its canonical sort (the `u` shorthand for
    /// `u^{S(u)}`).
    pub fn canonical(
        ctx: &Precontext,
        term: Expr,
        theory: &Pretheory,
    ) -> Result<TensorOperand, TensorError> {
        let sort = canonical_sort(ctx, &term, theory)
            .map_err(|e| TensorError::Canonical(e.to_string()))?;
        TensorOperand::term(ctx.clone(), term, sort)
    }

    /// Entry i of a context as the augmented sort judgment
    /// `(truncate(X,i) |- X_i sort, x_i)`.
    pub fn entry_aug(ctx: &Precontext, i: usize) -> TensorOperand {
        TensorOperand::AugSort {
            ctx: ctx.truncate(i).expect("entry index in range"),
            sort: ctx.sort(i).clone(),
            var: ctx.var(i).clone(),
        }
    }

    /// Entry i of a context as the term judgment `X |- x_i : X_i` over the
    /// whole context.
    pub fn entry_term(ctx: &Precontext, i: usize) -> TensorOperand {
        TensorOperand::Term {
            ctx: ctx.clone(),
            term: Expr::Var(ctx.var(i).clone()),
            sort: ctx.sort(i).clone(),
        }
    }

    pub fn from_judgment(j: &Judgment, theory: &Pretheory) -> Result<TensorOperand, TensorError> {
        match j {
            Judgment::Sort(ctx, u) => {
                let fresh = theory.fresh_var(ctx);
                TensorOperand::aug_sort(ctx.clone(), u.clone(), fresh)
            }
            Judgment::Term(ctx, u, s) => TensorOperand::term(ctx.clone(), u.clone(), s.clone()),
            _ => Err(TensorError::NotTensorable),
        }
    }

    pub fn ctx(&self) -> &Precontext {
        match self {
            TensorOperand::AugSort { ctx, .. } | TensorOperand::Term { ctx, .. } => ctx,
        }
    }

    pub fn sort(&self) -> &Expr {
        match self {
            TensorOperand::AugSort { sort, .. } | TensorOperand::Term { sort, .. } => sort,
        }
    }

    /// The head variable when the operand is variable-headed: the augmented
    /// variable, or a term judgment whose term is a variable.
    pub fn var_head(&self) -> Option<&Var> {
        match self {
            TensorOperand::AugSort { var, .. } => Some(var),
            TensorOperand::Term { term: Expr::Var(v), .. } => Some(v),
            TensorOperand::Term { .. } => None,
        }
    }
}

type FreshChoice = Arc<dyn Fn(&Precontext) -> Var + Send + Sync>;

/// The two factor theories, the pair alphabet, and the deterministic
/// fresh-variable choosers (overridable, since any admissible choice agrees
/// up to renaming).
pub struct TensorPlan<'a> {
    pub left: &'a Pretheory,
    pub right: &'a Pretheory,
    pub alphabet: Arc<Alphabet>,
    fresh_left: Option<FreshChoice>,
    fresh_right: Option<FreshChoice>,
}

impl<'a> TensorPlan<'a> {
    pub fn new(left: &'a Pretheory, right: &'a Pretheory) -> TensorPlan<'a> {
        let alphabet = Arc::new(Alphabet::tensor(left.alphabet().clone(), right.alphabet().clone()));
        TensorPlan { left, right, alphabet, fresh_left: None, fresh_right: None }
    }

    pub fn with_fresh_choices(
        mut self,
        left: Option<FreshChoice>,
        right: Option<FreshChoice>,
    ) -> Self {
        self.fresh_left = left;
        self.fresh_right = right;
        self
    }

    pub fn fresh_left(&self, ctx: &Precontext) -> Var {
        match &self.fresh_left {
            Some(f) => f(ctx),
            None => self.left.fresh_var(ctx),
        }
    }

    pub fn fresh_right(&self, ctx: &Precontext) -> Var {
        match &self.fresh_right {
            Some(f) => f(ctx),
            None => self.right.fresh_var(ctx),
        }
    }
}
