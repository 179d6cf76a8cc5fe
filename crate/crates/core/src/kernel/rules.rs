//! The inference rule schemas and their validators.
//!
//! Twenty rules make up the modified system; five primed variants give
//! Cartmell's original presentation (the remaining fifteen are shared).
//! Later sections of source material drift between capitalizations like
//! "(T-sub)" and "(t-sub)"; those are the same rules, no aliases exist
//! beyond the names below.

use thiserror::Error;

use crate::syntax::{substitute, Expr, Judgment, Precontext, Pretheory, Sym, SymKind, Var};

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("judgment is not over the theory's alphabet")]
    AlphabetMismatch,
    #[error("variable `{0}` not bound in context")]
    UnboundVariable(String),
    #[error("unknown or non-term head symbol")]
    UnknownSymbol,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    Ctx,
    S1,
    S2,
    S3,
    T1,
    T2,
    T3,
    SeqT,
    SeqTeq,
    Var,
    SortAx,
    TermAx,
    SeqAx,
    TeqAx,
    SortSub,
    TermSub,
    SeqSub1,
    SeqSub2,
    TeqSub1,
    TeqSub2,
    // Cartmell's variants
    CSeqTeq,
    CVar,
    CTermSub,
    CSeqSub,
    CTeqSub,
}

pub const MODIFIED_RULES: [RuleName; 20] = [
    RuleName::Ctx,
    RuleName::S1,
    RuleName::S2,
    RuleName::S3,
    RuleName::T1,
    RuleName::T2,
    RuleName::T3,
    RuleName::SeqT,
    RuleName::SeqTeq,
    RuleName::Var,
    RuleName::SortAx,
    RuleName::TermAx,
    RuleName::SeqAx,
    RuleName::TeqAx,
    RuleName::SortSub,
    RuleName::TermSub,
    RuleName::SeqSub1,
    RuleName::SeqSub2,
    RuleName::TeqSub1,
    RuleName::TeqSub2,
];

pub const CARTMELL_RULES: [RuleName; 18] = [
    RuleName::Ctx,
    RuleName::S1,
    RuleName::S2,
    RuleName::S3,
    RuleName::T1,
    RuleName::T2,
    RuleName::T3,
    RuleName::SeqT,
    RuleName::SortAx,
    RuleName::TermAx,
    RuleName::SeqAx,
    RuleName::TeqAx,
    RuleName::SortSub,
    RuleName::CSeqTeq,
    RuleName::CVar,
    RuleName::CTermSub,
    RuleName::CSeqSub,
    RuleName::CTeqSub,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ruleset {
    #[default]
    Modified,
    Cartmell,
}

impl Ruleset {
    pub fn rules(&self) -> &'static [RuleName] {
        match self {
            Ruleset::Modified => &MODIFIED_RULES,
            Ruleset::Cartmell => &CARTMELL_RULES,
        }
    }

    pub fn contains(&self, r: RuleName) -> bool {
        self.rules().contains(&r)
    }
}

impl RuleName {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleName::Ctx => "ctx",
            RuleName::S1 => "s1",
            RuleName::S2 => "s2",
            RuleName::S3 => "s3",
            RuleName::T1 => "t1",
            RuleName::T2 => "t2",
            RuleName::T3 => "t3",
            RuleName::SeqT => "seq/t",
            RuleName::SeqTeq => "seq/teq",
            RuleName::Var => "var",
            RuleName::SortAx => "s-a",
            RuleName::TermAx => "t-a",
            RuleName::SeqAx => "seq-a",
            RuleName::TeqAx => "teq-a",
            RuleName::SortSub => "s-sub",
            RuleName::TermSub => "t-sub",
            RuleName::SeqSub1 => "seq-sub-1",
            RuleName::SeqSub2 => "seq-sub-2",
            RuleName::TeqSub1 => "teq-sub-1",
            RuleName::TeqSub2 => "teq-sub-2",
            RuleName::CSeqTeq => "seq/teq'",
            RuleName::CVar => "var'",
            RuleName::CTermSub => "t-sub'",
            RuleName::CSeqSub => "seq-sub'",
            RuleName::CTeqSub => "teq-sub'",
        }
    }

    pub fn parse_name(s: &str) -> Option<RuleName> {
        MODIFIED_RULES
            .iter()
            .chain(CARTMELL_RULES.iter())
            .copied()
            .find(|r| r.as_str() == s)
    }
}

/// Bindings substituting the first `upto` variables of `ctx` by `exprs`.
pub fn prefix_bindings(ctx: &Precontext, exprs: &[Expr], upto: usize) -> Vec<(Expr, Var)> {
    (0..upto)
        .map(|k| (exprs[k].clone(), ctx.var(k).clone()))
        .collect()
}

fn head_of(e: &Expr) -> Option<(&Sym, &[Expr])> {
    match e {
        Expr::App(h, args) => Some((h, args)),
        Expr::Var(_) => None,
    }
}

/// True iff `(premises, conclusion)` is an instance of `rule`'s schema over
/// `theory`, including the axiom lookups and substitution equalities the
/// `-a` and `-sub` families demand. Errs only when a judgment is not over
/// the theory's alphabet.
pub fn validate_step(
    rule: RuleName,
    premises: &[Judgment],
    conclusion: &Judgment,
    theory: &Pretheory,
) -> Result<bool, KernelError> {
    for j in premises.iter().chain(std::iter::once(conclusion)) {
        if !over_alphabet(j, theory) {
            return Err(KernelError::AlphabetMismatch);
        }
    }
    Ok(matches(rule, premises, conclusion, theory))
}

fn over_alphabet(j: &Judgment, theory: &Pretheory) -> bool {
    fn expr_ok(e: &Expr, theory: &Pretheory) -> bool {
        match e {
            Expr::Var(v) => theory.alphabet().owns_var(v),
            Expr::App(h, args) => {
                theory.alphabet().owns_sym(h) && args.iter().all(|a| expr_ok(a, theory))
            }
        }
    }
    j.context()
        .entries()
        .iter()
        .all(|(v, s)| theory.alphabet().owns_var(v) && expr_ok(s, theory))
        && j.parts().into_iter().all(|e| expr_ok(e, theory))
}

fn matches(rule: RuleName, prem: &[Judgment], concl: &Judgment, th: &Pretheory) -> bool {
    use Judgment::*;
    match rule {
        RuleName::Ctx => match concl {
            Ctx(y) if y.is_empty() => prem.is_empty(),
            Ctx(y) => {
                let n = y.len() - 1;
                prem.len() == 1
                    && prem[0] == Sort(y.truncate(n).unwrap(), y.sort(n).clone())
            }
            _ => false,
        },
        RuleName::S1 => match concl {
            SortEq(x, u, v) => u == v && prem == [Sort(x.clone(), u.clone())],
            _ => false,
        },
        RuleName::S2 => match concl {
            SortEq(x, u, v) => prem == [SortEq(x.clone(), v.clone(), u.clone())],
            _ => false,
        },
        RuleName::S3 => match (concl, prem) {
            (SortEq(x, u, v), [SortEq(x1, u1, w1), SortEq(x2, w2, v2)]) => {
                x1 == x && x2 == x && u1 == u && v2 == v && w1 == w2
            }
            _ => false,
        },
        RuleName::T1 => match concl {
            TermEq(x, u, v, s) => u == v && prem == [Term(x.clone(), u.clone(), s.clone())],
            _ => false,
        },
        RuleName::T2 => match concl {
            TermEq(x, u, v, s) => prem == [TermEq(x.clone(), v.clone(), u.clone(), s.clone())],
            _ => false,
        },
        RuleName::T3 => match (concl, prem) {
            (TermEq(x, u, v, s), [TermEq(x1, u1, w1, s1), TermEq(x2, w2, v2, s2)]) => {
                x1 == x && x2 == x && s1 == s && s2 == s && u1 == u && v2 == v && w1 == w2
            }
            _ => false,
        },
        RuleName::SeqT => match (concl, prem) {
            (Term(x, u, v2), [SortEq(x1, u1, v1), Term(x2, u2, s2)]) => {
                x1 == x && x2 == x && v1 == v2 && u2 == u && s2 == u1
            }
            _ => false,
        },
        RuleName::SeqTeq => match (concl, prem) {
            (
                TermEq(x, u, v, s1),
                [SortEq(xa, s0a, s1a), TermEq(xb, ub, vb, s0b), Term(xc, uc, s1c), Term(xd, vd, s1d)],
            ) => {
                xa == x
                    && xb == x
                    && xc == x
                    && xd == x
                    && s1a == s1
                    && s1c == s1
                    && s1d == s1
                    && s0a == s0b
                    && ub == u
                    && vb == v
                    && uc == u
                    && vd == v
            }
            _ => false,
        },
        RuleName::CSeqTeq => match (concl, prem) {
            (TermEq(x, u, v, s1), [SortEq(xa, s0a, s1a), TermEq(xb, ub, vb, s0b)]) => {
                xa == x && xb == x && s1a == s1 && s0a == s0b && ub == u && vb == v
            }
            _ => false,
        },
        RuleName::Var => match concl {
            Term(x, Expr::Var(v), s) => {
                x.lookup(v) == Some(s) && prem == [Sort(x.clone(), s.clone())]
            }
            _ => false,
        },
        RuleName::CVar => match concl {
            Term(x, Expr::Var(v), s) => x.lookup(v) == Some(s) && prem == [Ctx(x.clone())],
            _ => false,
        },
        RuleName::SortAx => match concl {
            Sort(x, u) => {
                let Some((t, _)) = head_of(u) else { return false };
                th.introduction_judgment(t) == Some(concl)
                    && prem.len() == x.len() + 1
                    && prem[0] == Ctx(x.clone())
                    && (0..x.len()).all(|i| {
                        prem[1 + i]
                            == Term(x.clone(), Expr::Var(x.var(i).clone()), x.sort(i).clone())
                    })
            }
            _ => false,
        },
        RuleName::TermAx => match concl {
            Term(x, u, s) => {
                let Some((t, _)) = head_of(u) else { return false };
                th.introduction_judgment(t) == Some(concl)
                    && prem.len() == x.len() + 1
                    && prem[0] == Sort(x.clone(), s.clone())
                    && (0..x.len()).all(|i| {
                        prem[1 + i]
                            == Term(x.clone(), Expr::Var(x.var(i).clone()), x.sort(i).clone())
                    })
            }
            _ => false,
        },
        RuleName::SeqAx => match concl {
            SortEq(x, u, v) => {
                th.axioms().contains(concl)
                    && prem == [Sort(x.clone(), u.clone()), Sort(x.clone(), v.clone())]
            }
            _ => false,
        },
        RuleName::TeqAx => match concl {
            TermEq(x, u, v, s) => {
                th.axioms().contains(concl)
                    && prem
                        == [Term(x.clone(), u.clone(), s.clone()), Term(x.clone(), v.clone(), s.clone())]
            }
            _ => false,
        },
        RuleName::SortSub => match concl {
            Sort(y, u) => {
                let Some((t, f)) = head_of(u) else { return false };
                if t.kind() != SymKind::Sort {
                    return false;
                }
                let Some((a_ctx, _)) = th.sort_axiom(t) else { return false };
                let n = a_ctx.len();
                if f.len() != n || prem.len() != n + 2 {
                    return false;
                }
                prem[0] == *th.introduction_judgment(t).unwrap()
                    && prem[1] == Ctx(y.clone())
                    && typed_args_match(&prem[2..], y, a_ctx, f)
            }
            _ => false,
        },
        RuleName::TermSub => match concl {
            Term(y, u, s) => {
                let Some((t, f)) = head_of(u) else { return false };
                if t.kind() != SymKind::Term {
                    return false;
                }
                let Some((a_ctx, _, target)) = th.term_axiom(t) else { return false };
                let n = a_ctx.len();
                if f.len() != n || prem.len() != n + 2 {
                    return false;
                }
                let expected = substitute(target, &prefix_bindings(a_ctx, f, n));
                *s == expected
                    && prem[0] == *th.introduction_judgment(t).unwrap()
                    && prem[1] == Sort(y.clone(), expected)
                    && typed_args_match(&prem[2..], y, a_ctx, f)
            }
            _ => false,
        },
        RuleName::CTermSub => match concl {
            Term(y, u, s) => {
                let Some((t, f)) = head_of(u) else { return false };
                if t.kind() != SymKind::Term {
                    return false;
                }
                let Some((a_ctx, _, target)) = th.term_axiom(t) else { return false };
                let n = a_ctx.len();
                if f.len() != n || prem.len() != n + 1 {
                    return false;
                }
                let expected = substitute(target, &prefix_bindings(a_ctx, f, n));
                *s == expected
                    && prem[0] == *th.introduction_judgment(t).unwrap()
                    && typed_args_match(&prem[1..], y, a_ctx, f)
            }
            _ => false,
        },
        RuleName::SeqSub1 => {
            // premises: axiom J, J' = Y |- U[f] sort, J'' = Y |- U'[f] sort, J_1..J_n
            let SortEq(y, lhs, rhs) = concl else { return false };
            if prem.len() < 3 {
                return false;
            }
            let SortEq(a_ctx, u, u2) = &prem[0] else { return false };
            if !th.axioms().contains(&prem[0]) {
                return false;
            }
            let n = a_ctx.len();
            if prem.len() != n + 3 {
                return false;
            }
            let Some(f) = read_args(&prem[3..]) else { return false };
            let b = prefix_bindings(a_ctx, &f, n);
            *lhs == substitute(u, &b)
                && *rhs == substitute(u2, &b)
                && prem[1] == Sort(y.clone(), lhs.clone())
                && prem[2] == Sort(y.clone(), rhs.clone())
                && typed_args_match(&prem[3..], y, a_ctx, &f)
        }
        RuleName::SeqSub2 => {
            // axiom J = sort axiom of T; conclusion T(f) == T(g)
            let SortEq(y, lhs, rhs) = concl else { return false };
            let (Some((t1, f)), Some((t2, g))) = (head_of(lhs), head_of(rhs)) else {
                return false;
            };
            if t1 != t2 || t1.kind() != SymKind::Sort {
                return false;
            }
            let Some(a_ctx) = th.sort_axiom(t1).map(|(c, _)| c) else { return false };
            let n = a_ctx.len();
            if f.len() != n || g.len() != n || prem.len() != n + 3 {
                return false;
            }
            prem[0] == *th.introduction_judgment(t1).unwrap()
                && prem[1] == Sort(y.clone(), lhs.clone())
                && prem[2] == Sort(y.clone(), rhs.clone())
                && eq_args_match(&prem[3..], y, a_ctx, f, g)
        }
        RuleName::TeqSub1 => {
            let TermEq(y, lhs, rhs, s) = concl else { return false };
            if prem.len() < 3 {
                return false;
            }
            let TermEq(a_ctx, u, u2, us) = &prem[0] else { return false };
            if !th.axioms().contains(&prem[0]) {
                return false;
            }
            let n = a_ctx.len();
            if prem.len() != n + 3 {
                return false;
            }
            let Some(f) = read_args(&prem[3..]) else { return false };
            let b = prefix_bindings(a_ctx, &f, n);
            *lhs == substitute(u, &b)
                && *rhs == substitute(u2, &b)
                && *s == substitute(us, &b)
                && prem[1] == Term(y.clone(), lhs.clone(), s.clone())
                && prem[2] == Term(y.clone(), rhs.clone(), s.clone())
                && typed_args_match(&prem[3..], y, a_ctx, &f)
        }
        RuleName::TeqSub2 => {
            // axiom J = term axiom of t; conclusion t(f) == t(g) : U[f]
            let TermEq(y, lhs, rhs, s) = concl else { return false };
            let (Some((t1, f)), Some((t2, g))) = (head_of(lhs), head_of(rhs)) else {
                return false;
            };
            if t1 != t2 || t1.kind() != SymKind::Term {
                return false;
            }
            let Some((a_ctx, _, target)) = th.term_axiom(t1) else { return false };
            let n = a_ctx.len();
            if f.len() != n || g.len() != n || prem.len() != n + 3 {
                return false;
            }
            let expected = substitute(target, &prefix_bindings(a_ctx, f, n));
            *s == expected
                && prem[0] == *th.introduction_judgment(t1).unwrap()
                && prem[1] == Term(y.clone(), lhs.clone(), expected.clone())
                && prem[2] == Term(y.clone(), rhs.clone(), expected)
                && eq_args_match(&prem[3..], y, a_ctx, f, g)
        }
        RuleName::CSeqSub => {
            // J any derivable sort equality; conclusion U[f] == U'[g]
            let SortEq(y, lhs, rhs) = concl else { return false };
            if prem.is_empty() {
                return false;
            }
            let SortEq(a_ctx, u, u2) = &prem[0] else { return false };
            let n = a_ctx.len();
            if prem.len() != n + 1 {
                return false;
            }
            let Some((f, g)) = read_eq_args(&prem[1..]) else { return false };
            *lhs == substitute(u, &prefix_bindings(a_ctx, &f, n))
                && *rhs == substitute(u2, &prefix_bindings(a_ctx, &g, n))
                && eq_args_match(&prem[1..], y, a_ctx, &f, &g)
        }
        RuleName::CTeqSub => {
            let TermEq(y, lhs, rhs, s) = concl else { return false };
            if prem.is_empty() {
                return false;
            }
            let TermEq(a_ctx, u, u2, us) = &prem[0] else { return false };
            let n = a_ctx.len();
            if prem.len() != n + 1 {
                return false;
            }
            let Some((f, g)) = read_eq_args(&prem[1..]) else { return false };
            let bf = prefix_bindings(a_ctx, &f, n);
            *lhs == substitute(u, &bf)
                && *rhs == substitute(u2, &prefix_bindings(a_ctx, &g, n))
                && *s == substitute(us, &bf)
                && eq_args_match(&prem[1..], y, a_ctx, &f, &g)
        }
    }
}

/// Read f_i from premises shaped `Y |- f_i : _`.
fn read_args(prems: &[Judgment]) -> Option<Vec<Expr>> {
    prems
        .iter()
        .map(|p| match p {
            Judgment::Term(_, f, _) => Some(f.clone()),
            _ => None,
        })
        .collect()
}

fn read_eq_args(prems: &[Judgment]) -> Option<(Vec<Expr>, Vec<Expr>)> {
    let mut f = Vec::new();
    let mut g = Vec::new();
    for p in prems {
        match p {
            Judgment::TermEq(_, a, b, _) => {
                f.push(a.clone());
                g.push(b.clone());
            }
            _ => return None,
        }
    }
    Some((f, g))
}

/// Premises `Y |- f_i : A_i[f_1|a_1, ..., f_{i-1}|a_{i-1}]`.
fn typed_args_match(prems: &[Judgment], y: &Precontext, a_ctx: &Precontext, f: &[Expr]) -> bool {
    prems.iter().enumerate().all(|(i, p)| {
        let expected = substitute(a_ctx.sort(i), &prefix_bindings(a_ctx, f, i));
        *p == Judgment::Term(y.clone(), f[i].clone(), expected)
    })
}

/// Premises `Y |- f_i == g_i : A_i[f_1|a_1, ..., f_{i-1}|a_{i-1}]`.
fn eq_args_match(
    prems: &[Judgment],
    y: &Precontext,
    a_ctx: &Precontext,
    f: &[Expr],
    g: &[Expr],
) -> bool {
    prems.iter().enumerate().all(|(i, p)| {
        let expected = substitute(a_ctx.sort(i), &prefix_bindings(a_ctx, f, i));
        *p == Judgment::TermEq(y.clone(), f[i].clone(), g[i].clone(), expected)
    })
}

/// The canonical sort of a term in a context: the context entry for a
/// variable, or the introduction axiom's target substituted by the head's
/// arguments.
pub fn canonical_sort(
    ctx: &Precontext,
    u: &Expr,
    theory: &Pretheory,
) -> Result<Expr, KernelError> {
    match u {
        Expr::Var(v) => ctx
            .lookup(v)
            .cloned()
            .ok_or_else(|| KernelError::UnboundVariable(theory.alphabet().var_name(v))),
        Expr::App(t, args) => {
            if t.kind() != SymKind::Term {
                return Err(KernelError::UnknownSymbol);
            }
            let (a_ctx, _, target) = theory.term_axiom(t).ok_or(KernelError::UnknownSymbol)?;
            if a_ctx.len() != args.len() {
                return Err(KernelError::LengthMismatch { expected: a_ctx.len(), got: args.len() });
            }
            Ok(substitute(target, &prefix_bindings(a_ctx, args, args.len())))
        }
    }
}
