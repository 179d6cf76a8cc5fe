//! Small seeded generators for contexts and context morphisms over a
//! theory; the randomized ends of the test suites draw from here.

use rand::prelude::*;

use crate::kernel::prefix_bindings;
use crate::syntax::{substitute, Expr, Precontext, Pretheory, Sym, SymKind};

/// Grow a derivable context entry by entry: each new entry's sort is an
/// introduction axiom instantiated type-correctly by earlier variables.
pub fn random_context(theory: &Pretheory, rng: &mut impl Rng, max_len: usize) -> Precontext {
    let sorts: Vec<Sym> = theory.alphabet().sort_syms();
    let mut ctx = Precontext::empty();
    let target = rng.gen_range(0..=max_len);
    for _ in 0..target * 3 {
        if ctx.len() >= target {
            break;
        }
        let head = sorts.choose(rng).unwrap().clone();
        if let Some(args) = instantiate(theory, rng, &ctx, &head) {
            let sort = Expr::App(head, args);
            let fresh = theory.fresh_var(&ctx);
            ctx = ctx.extended(fresh, sort).expect("generated entry is in scope");
        }
    }
    ctx
}

/// Pick arguments for a symbol's introduction context out of `ctx`'s
/// variables, left to right; None when some position has no candidate.
pub fn instantiate(
    theory: &Pretheory,
    rng: &mut impl Rng,
    ctx: &Precontext,
    head: &Sym,
) -> Option<Vec<Expr>> {
    let a_ctx = match head.kind() {
        SymKind::Sort => theory.sort_axiom(head)?.0.clone(),
        SymKind::Term => theory.term_axiom(head)?.0.clone(),
    };
    let mut args: Vec<Expr> = Vec::with_capacity(a_ctx.len());
    for i in 0..a_ctx.len() {
        let expected = substitute(a_ctx.sort(i), &prefix_bindings(&a_ctx, &args, i));
        let candidates: Vec<Expr> = ctx
            .entries()
            .iter()
            .filter(|(_, s)| *s == expected)
            .map(|(v, _)| Expr::Var(v.clone()))
            .collect();
        args.push(candidates.choose(rng)?.clone());
    }
    Some(args)
}

/// A random context morphism from `x` into the introduction context of a
/// random sort or term symbol; the components are variables of `x`, chosen
/// type-correctly, so the result is a genuine morphism whenever `x` is a
/// context.
pub fn random_morphism_into_axiom(
    theory: &Pretheory,
    rng: &mut impl Rng,
    x: &Precontext,
) -> Option<(Precontext, Vec<Expr>)> {
    let mut symbols = theory.alphabet().sort_syms();
    symbols.extend(theory.alphabet().term_syms());
    for _ in 0..10 {
        let head = symbols.choose(rng)?.clone();
        let a_ctx = match head.kind() {
            SymKind::Sort => theory.sort_axiom(&head)?.0.clone(),
            SymKind::Term => theory.term_axiom(&head)?.0.clone(),
        };
        if let Some(args) = instantiate(theory, rng, x, &head) {
            return Some((a_ctx, args));
        }
    }
    None
}

/// A random term over `ctx` together with its canonical sort: a variable,
/// or one application of a term symbol to type-correct variables.
pub fn random_term(
    theory: &Pretheory,
    rng: &mut impl Rng,
    ctx: &Precontext,
) -> Option<(Expr, Expr)> {
    let terms = theory.alphabet().term_syms();
    let apply = !terms.is_empty() && rng.gen_bool(0.5);
    if apply {
        for _ in 0..8 {
            let head = terms.choose(rng)?.clone();
            if let Some(args) = instantiate(theory, rng, ctx, &head) {
                let (a_ctx, _, target) = theory.term_axiom(&head)?;
                let sort = substitute(target, &prefix_bindings(a_ctx, &args, args.len()));
                return Some((Expr::App(head, args), sort));
            }
        }
    }
    let i = (0..ctx.len()).choose(rng)?;
    Some((Expr::Var(ctx.var(i).clone()), ctx.sort(i).clone()))
}
