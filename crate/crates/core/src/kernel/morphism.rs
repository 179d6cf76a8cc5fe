//! Context morphisms and the derived judgment forms built on top of the
//! five primitive ones: partial terms, context equality, premorphisms and
//! premorphism equality, each checked componentwise.

use crate::syntax::{substitute, Expr, Judgment, Precontext, Pretheory, Var};

use super::rules::KernelError;
use super::search::{DerivResult, Prover};

/// Bindings renaming/substituting the variables of `ctx` by `exprs`
/// (full-length prefix).
pub fn morphism_bindings(ctx: &Precontext, exprs: &[Expr]) -> Vec<(Expr, Var)> {
    ctx.vars().into_iter().zip(exprs.iter().cloned()).map(|(v, e)| (e, v)).collect()
}

/// Apply a morphism `f : Y -> X` to a standard judgment over `X`,
/// producing the substituted judgment over `Y`.
pub fn substitute_judgment(j: &Judgment, f: &[Expr], y: &Precontext) -> Option<Judgment> {
    let x = j.context();
    if f.len() != x.len() {
        return None;
    }
    let b = morphism_bindings(x, f);
    Some(match j {
        Judgment::Ctx(_) => return None,
        Judgment::Sort(_, u) => Judgment::Sort(y.clone(), substitute(u, &b)),
        Judgment::Term(_, u, s) => {
            Judgment::Term(y.clone(), substitute(u, &b), substitute(s, &b))
        }
        Judgment::SortEq(_, u, v) => {
            Judgment::SortEq(y.clone(), substitute(u, &b), substitute(v, &b))
        }
        Judgment::TermEq(_, u, v, s) => Judgment::TermEq(
            y.clone(),
            substitute(u, &b),
            substitute(v, &b),
            substitute(s, &b),
        ),
    })
}

/// Componentwise report for morphism-shaped checks.
#[derive(Debug)]
pub struct ComponentReport {
    pub source_ctx: DerivResult,
    pub target_ctx: DerivResult,
    pub components: Vec<(Judgment, DerivResult)>,
}

impl ComponentReport {
    pub fn all_derivable(&self) -> bool {
        self.source_ctx.is_derivable()
            && self.target_ctx.is_derivable()
            && self.components.iter().all(|(_, r)| r.is_derivable())
    }
}

/// Is `f : X -> Y` a context morphism? For each i the component judgment is
/// `X |- f_i : Y_i[f_1|y_1, ..., f_{i-1}|y_{i-1}]`.
pub fn check_morphism(
    f: &[Expr],
    x: &Precontext,
    y: &Precontext,
    prover: &Prover,
) -> Result<ComponentReport, KernelError> {
    if f.len() != y.len() {
        return Err(KernelError::LengthMismatch { expected: y.len(), got: f.len() });
    }
    let mut components = Vec::new();
    for i in 0..f.len() {
        let expected = substitute(y.sort(i), &prefix(y, f, i));
        let j = Judgment::Term(x.clone(), f[i].clone(), expected);
        let r = prover.result(&j);
        components.push((j, r));
    }
    Ok(ComponentReport {
        source_ctx: prover.result(&Judgment::Ctx(x.clone())),
        target_ctx: prover.result(&Judgment::Ctx(y.clone())),
        components,
    })
}

/// Componentwise composite `(g o f)_i = g_i[f]` of `f : X -> Y` and
/// `g : Y -> Z`.
pub fn compose(g: &[Expr], f: &[Expr], y: &Precontext) -> Vec<Expr> {
    let b = morphism_bindings(y, f);
    g.iter().map(|gi| substitute(gi, &b)).collect()
}

pub fn identity_morphism(x: &Precontext) -> Vec<Expr> {
    x.vars().into_iter().map(Expr::Var).collect()
}

/// `X == Y ctx`: equal lengths, both contexts derivable, and for each i the
/// judgment `truncate(X, i-1) |- X_i == Y_i[x_1|y_1, ...] sort`.
pub fn check_ctx_eq(
    x: &Precontext,
    y: &Precontext,
    prover: &Prover,
) -> Result<ComponentReport, KernelError> {
    if x.len() != y.len() {
        return Err(KernelError::LengthMismatch { expected: x.len(), got: y.len() });
    }
    let mut components = Vec::new();
    for i in 0..x.len() {
        let rename: Vec<(Expr, Var)> = (0..i)
            .map(|k| (Expr::Var(x.var(k).clone()), y.var(k).clone()))
            .collect();
        let yi = substitute(y.sort(i), &rename);
        let j = Judgment::SortEq(x.truncate(i).unwrap(), x.sort(i).clone(), yi);
        let r = prover.result(&j);
        components.push((j, r));
    }
    Ok(ComponentReport {
        source_ctx: prover.result(&Judgment::Ctx(x.clone())),
        target_ctx: prover.result(&Judgment::Ctx(y.clone())),
        components,
    })
}

/// `f == g : X -> Y`: both premorphisms plus `X |- f_i == g_i : Y_i[f..]`
/// componentwise.
pub fn check_mor_eq(
    f: &[Expr],
    g: &[Expr],
    x: &Precontext,
    y: &Precontext,
    prover: &Prover,
) -> Result<ComponentReport, KernelError> {
    if f.len() != y.len() || g.len() != y.len() {
        return Err(KernelError::LengthMismatch { expected: y.len(), got: f.len().max(g.len()) });
    }
    let mut components = Vec::new();
    for i in 0..f.len() {
        let expected = substitute(y.sort(i), &prefix(y, f, i));
        let j = Judgment::TermEq(x.clone(), f[i].clone(), g[i].clone(), expected);
        let r = prover.result(&j);
        components.push((j, r));
    }
    let fr = check_morphism(f, x, y, prover)?;
    let gr = check_morphism(g, x, y, prover)?;
    let mut all = fr.components;
    all.extend(gr.components);
    all.extend(components);
    Ok(ComponentReport { source_ctx: fr.source_ctx, target_ctx: fr.target_ctx, components: all })
}

fn prefix(ctx: &Precontext, exprs: &[Expr], upto: usize) -> Vec<(Expr, Var)> {
    (0..upto).map(|k| (exprs[k].clone(), ctx.var(k).clone())).collect()
}

/// Per-axiom derivability report; the verdict "theory" requires every
/// axiom derivable.
#[derive(Debug)]
pub struct TheoryReport {
    pub per_axiom: Vec<(Judgment, DerivResult)>,
}

impl TheoryReport {
    pub fn is_theory(&self) -> bool {
        self.per_axiom.iter().all(|(_, r)| r.is_derivable())
    }

    pub fn unknown_count(&self) -> usize {
        self.per_axiom.iter().filter(|(_, r)| !r.is_derivable()).count()
    }
}

/// A pretheory is a theory when every axiom is derivable. Axioms are
/// searched in parallel over a shared memo table.
pub fn is_theory(theory: &Pretheory, prover: &Prover) -> TheoryReport {
    use rayon::prelude::*;
    let per_axiom = theory
        .axioms()
        .par_iter()
        .map(|ax| (ax.clone(), prover.result(ax)))
        .collect();
    TheoryReport { per_axiom }
}
