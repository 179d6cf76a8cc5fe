use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use super::alphabet::{Alphabet, Sym, SymKind, Var};
use super::expr::{classify, Class, Expr};
use super::judgment::{Judgment, Precontext};

#[derive(Debug, Error)]
pub enum TheoryError {
    #[error("{0} has no introduction axiom for symbol `{1}`")]
    MissingIntroduction(String, String),
    #[error("duplicate introduction axiom for symbol `{0}`")]
    DuplicateIntroduction(String),
    #[error("introduction axiom for `{0}` must apply the symbol to exactly the context variables")]
    MalformedIntroduction(String),
    #[error("axiom is not over the theory's alphabet")]
    ForeignSymbol,
    #[error("ill-formed {0} expression in axiom")]
    IllFormed(&'static str),
    #[error("invalid context in axiom: {0}")]
    BadContext(String),
}

/// An alphabet together with axioms obeying the one-introduction-axiom-per-
/// symbol discipline. Arities live here (read off the introduction axioms),
/// not on symbols, so raw alphabets stay theory-independent.
#[derive(Debug, Clone)]
pub struct Pretheory {
    name: String,
    alphabet: Arc<Alphabet>,
    axioms: Vec<Judgment>,
    sort_intro: HashMap<Sym, usize>,
    term_intro: HashMap<Sym, usize>,
}

impl Pretheory {
    pub fn new(
        name: impl Into<String>,
        alphabet: Arc<Alphabet>,
        axioms: Vec<Judgment>,
    ) -> Result<Pretheory, TheoryError> {
        let name = name.into();
        let mut sort_intro = HashMap::new();
        let mut term_intro = HashMap::new();

        for (i, ax) in axioms.iter().enumerate() {
            check_over_alphabet(ax, &alphabet)?;
            match ax {
                Judgment::Ctx(_) => return Err(TheoryError::IllFormed("context")),
                Judgment::Sort(ctx, u) => {
                    let head = intro_head(ctx, u, &alphabet, SymKind::Sort)?;
                    if sort_intro.insert(head.clone(), i).is_some() {
                        return Err(TheoryError::DuplicateIntroduction(alphabet.sym_name(&head)));
                    }
                }
                Judgment::Term(ctx, u, sort) => {
                    if classify(sort) != Class::Sort {
                        return Err(TheoryError::IllFormed("sort"));
                    }
                    let head = intro_head(ctx, u, &alphabet, SymKind::Term)?;
                    if term_intro.insert(head.clone(), i).is_some() {
                        return Err(TheoryError::DuplicateIntroduction(alphabet.sym_name(&head)));
                    }
                }
                Judgment::SortEq(_, u, v) => {
                    if classify(u) != Class::Sort || classify(v) != Class::Sort {
                        return Err(TheoryError::IllFormed("sort"));
                    }
                }
                Judgment::TermEq(_, u, v, sort) => {
                    if classify(u) != Class::Term || classify(v) != Class::Term {
                        return Err(TheoryError::IllFormed("term"));
                    }
                    if classify(sort) != Class::Sort {
                        return Err(TheoryError::IllFormed("sort"));
                    }
                }
            }
        }

        for s in alphabet.sort_syms().into_iter().chain(alphabet.term_syms()) {
            let table = if s.is_sort() { &sort_intro } else { &term_intro };
            if !table.contains_key(&s) {
                return Err(TheoryError::MissingIntroduction(name.clone(), alphabet.sym_name(&s)));
            }
        }

        let theory = Pretheory { name, alphabet, axioms, sort_intro, term_intro };

        // second pass once arities are known: every application in every
        // axiom (context sorts included) must match its introduction arity
        for ax in &theory.axioms {
            for (_, s) in ax.context().entries() {
                if classify(s) != Class::Sort {
                    return Err(TheoryError::BadContext("entry is not a sort expression".into()));
                }
                theory.check_arities(s)?;
            }
            for e in ax.parts() {
                theory.check_arities(e)?;
            }
        }

        Ok(theory)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn axioms(&self) -> &[Judgment] {
        &self.axioms
    }

    /// The introduction axiom of a sort symbol: (context, full sort expression).
    pub fn sort_axiom(&self, s: &Sym) -> Option<(&Precontext, &Expr)> {
        let i = *self.sort_intro.get(s)?;
        match &self.axioms[i] {
            Judgment::Sort(ctx, u) => Some((ctx, u)),
            _ => None,
        }
    }

    /// The introduction axiom of a term symbol: (context, term, target sort).
    pub fn term_axiom(&self, t: &Sym) -> Option<(&Precontext, &Expr, &Expr)> {
        let i = *self.term_intro.get(t)?;
        match &self.axioms[i] {
            Judgment::Term(ctx, u, sort) => Some((ctx, u, sort)),
            _ => None,
        }
    }

    pub fn arity(&self, s: &Sym) -> Option<usize> {
        match s.kind() {
            SymKind::Sort => self.sort_axiom(s).map(|(ctx, _)| ctx.len()),
            SymKind::Term => self.term_axiom(s).map(|(ctx, _, _)| ctx.len()),
        }
    }

    pub fn introduction_judgment(&self, s: &Sym) -> Option<&Judgment> {
        let i = match s.kind() {
            SymKind::Sort => *self.sort_intro.get(s)?,
            SymKind::Term => *self.term_intro.get(s)?,
        };
        Some(&self.axioms[i])
    }

    pub fn sort_eq_axioms(&self) -> impl Iterator<Item = &Judgment> {
        self.axioms.iter().filter(|a| matches!(a, Judgment::SortEq(..)))
    }

    pub fn term_eq_axioms(&self) -> impl Iterator<Item = &Judgment> {
        self.axioms.iter().filter(|a| matches!(a, Judgment::TermEq(..)))
    }

    pub fn has_sort_eq_axioms(&self) -> bool {
        self.sort_eq_axioms().next().is_some()
    }

    pub fn fresh_var(&self, ctx: &Precontext) -> Var {
        self.alphabet.fresh_var(&ctx.vars())
    }

    fn check_arities(&self, e: &Expr) -> Result<(), TheoryError> {
        if let Expr::App(h, args) = e {
            match self.arity(h) {
                Some(n) if n == args.len() => {}
                _ => return Err(TheoryError::IllFormed("arity")),
            }
            for a in args {
                self.check_arities(a)?;
            }
        }
        Ok(())
    }
}

fn intro_head(
    ctx: &Precontext,
    u: &Expr,
    alphabet: &Alphabet,
    kind: SymKind,
) -> Result<Sym, TheoryError> {
    let want = match classify(u) {
        Class::Sort => SymKind::Sort,
        Class::Term => SymKind::Term,
        Class::IllFormed => return Err(TheoryError::IllFormed("introduction")),
    };
    if want != kind {
        return Err(TheoryError::IllFormed("introduction"));
    }
    match u {
        Expr::App(head, args) => {
            let ok = args.len() == ctx.len()
                && args
                    .iter()
                    .zip(ctx.entries())
                    .all(|(a, (x, _))| matches!(a, Expr::Var(v) if v == x));
            if ok {
                Ok(head.clone())
            } else {
                Err(TheoryError::MalformedIntroduction(alphabet.sym_name(head)))
            }
        }
        Expr::Var(_) => Err(TheoryError::IllFormed("introduction")),
    }
}

fn check_over_alphabet(j: &Judgment, alphabet: &Alphabet) -> Result<(), TheoryError> {
    fn check_expr(e: &Expr, alphabet: &Alphabet) -> Result<(), TheoryError> {
        match e {
            Expr::Var(v) => {
                if alphabet.owns_var(v) {
                    Ok(())
                } else {
                    Err(TheoryError::ForeignSymbol)
                }
            }
            Expr::App(h, args) => {
                if !alphabet.owns_sym(h) {
                    return Err(TheoryError::ForeignSymbol);
                }
                args.iter().try_for_each(|a| check_expr(a, alphabet))
            }
        }
    }
    for (v, s) in j.context().entries() {
        if !alphabet.owns_var(v) {
            return Err(TheoryError::ForeignSymbol);
        }
        check_expr(s, alphabet)?;
    }
    j.parts().into_iter().try_for_each(|e| check_expr(e, alphabet))
}
