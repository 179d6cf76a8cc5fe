//! Exact minimal heights by backward iterative deepening.
//!
//! Exactness is relative to a finite expression universe: the
//! non-syntax-directed rules (transitivity, sort conversion, and the
//! substitution rules with unconstrained components) draw their invented
//! expressions from subexpressions of the goal and the axioms plus one
//! round of substitution instances, size-capped by the budget. Within that
//! universe the computed heights are the minima of the D_n stratification.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use crate::syntax::{classify, substitute, Class, Expr, Judgment, Precontext, Pretheory, SymKind, Var};

use super::rules::{canonical_sort, prefix_bindings};
use super::search::SearchBudget;

pub struct ExactEngine<'t> {
    theory: &'t Pretheory,
    budget: SearchBudget,
    sorts: Vec<Expr>,
    terms: Vec<Expr>,
    memo: RefCell<HashMap<Judgment, Bounds>>,
}

#[derive(Clone, Copy, Default)]
struct Bounds {
    min_true: Option<u32>,
    max_false: u32,
}

impl<'t> ExactEngine<'t> {
    pub fn new(goal: &Judgment, theory: &'t Pretheory, budget: SearchBudget) -> ExactEngine<'t> {
        let (sorts, terms) = build_universe(goal, theory, budget.universe);
        ExactEngine { theory, budget, sorts, terms, memo: RefCell::new(HashMap::new()) }
    }

    /// Smallest h with the goal concluded by a step in D_h, or None within
    /// the budget and universe.
    pub fn exact_height(&self, goal: &Judgment) -> Option<u32> {
        (1..=self.budget.max_height).find(|h| self.can(goal, *h))
    }

    /// Height of a precontext: 0 when empty, otherwise the height of the
    /// final entry's sort judgment over the truncated context.
    pub fn context_height(&self, x: &Precontext) -> Option<u32> {
        if x.is_empty() {
            return Some(0);
        }
        let n = x.len() - 1;
        self.exact_height(&Judgment::Sort(x.truncate(n).unwrap(), x.sort(n).clone()))
    }

    /// Partial term judgment: minimum over candidate sorts (the canonical
    /// sort plus the universe) of the height of `X |- u : U`.
    pub fn partial_term_height(&self, x: &Precontext, u: &Expr) -> Option<u32> {
        let canon = canonical_sort(x, u, self.theory).ok();
        self.min_over_sorts(canon, |s| Judgment::Term(x.clone(), u.clone(), s))
            .map(|(h, _)| h)
    }

    pub fn partial_term_eq_height(&self, x: &Precontext, u: &Expr, v: &Expr) -> Option<u32> {
        let canon = canonical_sort(x, u, self.theory).ok();
        self.min_over_sorts(canon, |s| Judgment::TermEq(x.clone(), u.clone(), v.clone(), s))
            .map(|(h, _)| h)
    }

    fn min_over_sorts(
        &self,
        extra: Option<Expr>,
        mk: impl Fn(Expr) -> Judgment,
    ) -> Option<(u32, Expr)> {
        let mut best: Option<(u32, Expr)> = None;
        for s in extra.iter().chain(self.sorts.iter()) {
            if let Some(h) = self.exact_height(&mk(s.clone())) {
                if best.as_ref().is_none_or(|(b, _)| h < *b) {
                    best = Some((h, s.clone()));
                }
            }
        }
        best
    }

    /// Context equality: the maximum of both context heights and the
    /// componentwise sort equalities over the truncations.
    pub fn ctx_eq_height(&self, x: &Precontext, y: &Precontext) -> Option<u32> {
        if x.len() != y.len() {
            return None;
        }
        let mut h = self.context_height(x)?.max(self.context_height(y)?);
        for i in 0..x.len() {
            let rename: Vec<(Expr, Var)> = (0..i)
                .map(|k| (Expr::Var(x.var(k).clone()), y.var(k).clone()))
                .collect();
            let yi = substitute(y.sort(i), &rename);
            h = h.max(self.exact_height(&Judgment::SortEq(
                x.truncate(i).unwrap(),
                x.sort(i).clone(),
                yi,
            ))?);
        }
        Some(h)
    }

    /// Premorphism equality: the maximum of both morphism heights and the
    /// componentwise term equalities.
    pub fn mor_eq_height(
        &self,
        f: &[Expr],
        g: &[Expr],
        x: &Precontext,
        y: &Precontext,
    ) -> Option<u32> {
        let mut h = self.morphism_height(f, x, y)?.max(self.morphism_height(g, x, y)?);
        for i in 0..f.len() {
            let expected = substitute(y.sort(i), &prefix_bindings(y, f, i));
            h = h.max(self.exact_height(&Judgment::TermEq(
                x.clone(),
                f[i].clone(),
                g[i].clone(),
                expected,
            ))?);
        }
        Some(h)
    }

    /// Morphism height: max of both context heights and the component
    /// typing judgments.
    pub fn morphism_height(&self, f: &[Expr], x: &Precontext, y: &Precontext) -> Option<u32> {
        if f.len() != y.len() {
            return None;
        }
        let mut h = self.context_height(x)?.max(self.context_height(y)?);
        for i in 0..f.len() {
            let expected = substitute(y.sort(i), &prefix_bindings(y, f, i));
            h = h.max(self.exact_height(&Judgment::Term(x.clone(), f[i].clone(), expected))?);
        }
        Some(h)
    }

    fn can(&self, j: &Judgment, h: u32) -> bool {
        if h == 0 {
            return false;
        }
        {
            let memo = self.memo.borrow();
            if let Some(b) = memo.get(j) {
                if b.min_true.is_some_and(|t| t <= h) {
                    return true;
                }
                if h <= b.max_false {
                    return false;
                }
            }
        }
        let out = self.can_uncached(j, h);
        let mut memo = self.memo.borrow_mut();
        let b = memo.entry(j.clone()).or_default();
        if out {
            b.min_true = Some(b.min_true.map_or(h, |t| t.min(h)));
        } else {
            b.max_false = b.max_false.max(h);
        }
        out
    }

    fn all(&self, prems: &[Judgment], h: u32) -> bool {
        prems.iter().all(|p| self.can(p, h))
    }

    fn can_uncached(&self, j: &Judgment, h: u32) -> bool {
        let p = h - 1; // premises must be concluded in D_{h-1}
        match j {
            Judgment::Ctx(x) => {
                if x.is_empty() {
                    return true; // zero-premise (ctx) is in every D_h, h >= 1
                }
                let n = x.len() - 1;
                self.can(&Judgment::Sort(x.truncate(n).unwrap(), x.sort(n).clone()), p)
            }
            Judgment::Sort(x, u) => {
                let Expr::App(t, f) = u else { return false };
                if t.kind() != SymKind::Sort {
                    return false;
                }
                let Some(intro) = self.theory.introduction_judgment(t) else { return false };
                // (s-a)
                if intro == j && self.can(&Judgment::Ctx(x.clone()), p) && self.var_typings(x, p) {
                    return true;
                }
                // (s-sub)
                let Some((a_ctx, _)) = self.theory.sort_axiom(t) else { return false };
                if f.len() != a_ctx.len() {
                    return false;
                }
                self.can(intro, p)
                    && self.can(&Judgment::Ctx(x.clone()), p)
                    && self.typed_args(x, &a_ctx.clone(), f, p)
            }
            Judgment::Term(x, u, s) => {
                // (var)
                if let Expr::Var(v) = u {
                    if x.lookup(v) == Some(s) && self.can(&Judgment::Sort(x.clone(), s.clone()), p)
                    {
                        return true;
                    }
                }
                // (t-a) / (t-sub)
                if let Expr::App(t, f) = u {
                    if t.kind() == SymKind::Term {
                        if let Some(intro) = self.theory.introduction_judgment(t) {
                            if intro == j
                                && self.can(&Judgment::Sort(x.clone(), s.clone()), p)
                                && self.var_typings(x, p)
                            {
                                return true;
                            }
                            if let Some((a_ctx, _, target)) = self.theory.term_axiom(t) {
                                let (a_ctx, target) = (a_ctx.clone(), target.clone());
                                if f.len() == a_ctx.len()
                                    && *s == substitute(&target, &prefix_bindings(&a_ctx, f, f.len()))
                                    && self.can(intro, p)
                                    && self.can(&Judgment::Sort(x.clone(), s.clone()), p)
                                    && self.typed_args(x, &a_ctx, f, p)
                                {
                                    return true;
                                }
                            }
                        }
                    }
                }
                // (seq/t): u : U' and U' == s for a universe sort U'
                self.sorts.iter().any(|u2| {
                    u2 != s
                        && self.can(&Judgment::SortEq(x.clone(), u2.clone(), s.clone()), p)
                        && self.can(&Judgment::Term(x.clone(), u.clone(), u2.clone()), p)
                })
            }
            Judgment::SortEq(x, u, v) => {
                // (s1)
                if u == v && self.can(&Judgment::Sort(x.clone(), u.clone()), p) {
                    return true;
                }
                // (seq-a)
                if self.theory.axioms().contains(j)
                    && self.all(
                        &[Judgment::Sort(x.clone(), u.clone()), Judgment::Sort(x.clone(), v.clone())],
                        p,
                    )
                {
                    return true;
                }
                // (seq-sub-1)
                if self.seq_sub1(x, u, v, p) {
                    return true;
                }
                // (seq-sub-2)
                if let (Expr::App(t1, f), Expr::App(t2, g)) = (u, v) {
                    if t1 == t2 && t1.kind() == SymKind::Sort {
                        if let Some((a_ctx, _)) = self.theory.sort_axiom(t1) {
                            let a_ctx = a_ctx.clone();
                            if f.len() == a_ctx.len()
                                && self.can(self.theory.introduction_judgment(t1).unwrap(), p)
                                && self.can(&Judgment::Sort(x.clone(), u.clone()), p)
                                && self.can(&Judgment::Sort(x.clone(), v.clone()), p)
                                && self.eq_args(x, &a_ctx, f, g, p)
                            {
                                return true;
                            }
                        }
                    }
                }
                // (s2)
                if self.can(&Judgment::SortEq(x.clone(), v.clone(), u.clone()), p) {
                    return true;
                }
                // (s3)
                self.sorts.iter().any(|w| {
                    w != u
                        && w != v
                        && self.can(&Judgment::SortEq(x.clone(), u.clone(), w.clone()), p)
                        && self.can(&Judgment::SortEq(x.clone(), w.clone(), v.clone()), p)
                })
            }
            Judgment::TermEq(x, u, v, s) => {
                // (t1)
                if u == v && self.can(&Judgment::Term(x.clone(), u.clone(), s.clone()), p) {
                    return true;
                }
                // (teq-a)
                if self.theory.axioms().contains(j)
                    && self.all(
                        &[
                            Judgment::Term(x.clone(), u.clone(), s.clone()),
                            Judgment::Term(x.clone(), v.clone(), s.clone()),
                        ],
                        p,
                    )
                {
                    return true;
                }
                // (teq-sub-1)
                if self.teq_sub1(x, u, v, s, p) {
                    return true;
                }
                // (teq-sub-2)
                if let (Expr::App(t1, f), Expr::App(t2, g)) = (u, v) {
                    if t1 == t2 && t1.kind() == SymKind::Term {
                        if let Some((a_ctx, _, target)) = self.theory.term_axiom(t1) {
                            let (a_ctx, target) = (a_ctx.clone(), target.clone());
                            if f.len() == a_ctx.len()
                                && *s == substitute(&target, &prefix_bindings(&a_ctx, f, f.len()))
                                && self.can(self.theory.introduction_judgment(t1).unwrap(), p)
                                && self.can(&Judgment::Term(x.clone(), u.clone(), s.clone()), p)
                                && self.can(&Judgment::Term(x.clone(), v.clone(), s.clone()), p)
                                && self.eq_args(x, &a_ctx, f, g, p)
                            {
                                return true;
                            }
                        }
                    }
                }
                // (t2)
                if self.can(&Judgment::TermEq(x.clone(), v.clone(), u.clone(), s.clone()), p) {
                    return true;
                }
                // (t3)
                if self.terms.iter().any(|w| {
                    w != u
                        && w != v
                        && self.can(&Judgment::TermEq(x.clone(), u.clone(), w.clone(), s.clone()), p)
                        && self.can(&Judgment::TermEq(x.clone(), w.clone(), v.clone(), s.clone()), p)
                }) {
                    return true;
                }
                // (seq/teq)
                self.sorts.iter().any(|s0| {
                    s0 != s
                        && self.can(&Judgment::SortEq(x.clone(), s0.clone(), s.clone()), p)
                        && self.can(&Judgment::TermEq(x.clone(), u.clone(), v.clone(), s0.clone()), p)
                        && self.can(&Judgment::Term(x.clone(), u.clone(), s.clone()), p)
                        && self.can(&Judgment::Term(x.clone(), v.clone(), s.clone()), p)
                })
            }
        }
    }

    fn var_typings(&self, x: &Precontext, p: u32) -> bool {
        (0..x.len()).all(|i| {
            self.can(
                &Judgment::Term(x.clone(), Expr::Var(x.var(i).clone()), x.sort(i).clone()),
                p,
            )
        })
    }

    fn typed_args(&self, x: &Precontext, a_ctx: &Precontext, f: &[Expr], p: u32) -> bool {
        (0..f.len()).all(|i| {
            let expected = substitute(a_ctx.sort(i), &prefix_bindings(a_ctx, f, i));
            self.can(&Judgment::Term(x.clone(), f[i].clone(), expected), p)
        })
    }

    fn eq_args(&self, x: &Precontext, a_ctx: &Precontext, f: &[Expr], g: &[Expr], p: u32) -> bool {
        (0..f.len()).all(|i| {
            let expected = substitute(a_ctx.sort(i), &prefix_bindings(a_ctx, f, i));
            self.can(
                &Judgment::TermEq(x.clone(), f[i].clone(), g[i].clone(), expected),
                p,
            )
        })
    }

    fn seq_sub1(&self, x: &Precontext, u: &Expr, v: &Expr, p: u32) -> bool {
        let axioms: Vec<Judgment> = self.theory.sort_eq_axioms().cloned().collect();
        axioms.iter().any(|ax| {
            let Judgment::SortEq(a_ctx, l, r) = ax else { return false };
            for f in self.match_instances(a_ctx, &[(l, u), (r, v)]) {
                if self.can(ax, p)
                    && self.can(&Judgment::Sort(x.clone(), u.clone()), p)
                    && self.can(&Judgment::Sort(x.clone(), v.clone()), p)
                    && self.typed_args(x, a_ctx, &f, p)
                {
                    return true;
                }
            }
            false
        })
    }

    fn teq_sub1(&self, x: &Precontext, u: &Expr, v: &Expr, s: &Expr, p: u32) -> bool {
        let axioms: Vec<Judgment> = self.theory.term_eq_axioms().cloned().collect();
        axioms.iter().any(|ax| {
            let Judgment::TermEq(a_ctx, l, r, ls) = ax else { return false };
            for f in self.match_instances(a_ctx, &[(l, u), (r, v), (ls, s)]) {
                if self.can(ax, p)
                    && self.can(&Judgment::Term(x.clone(), u.clone(), s.clone()), p)
                    && self.can(&Judgment::Term(x.clone(), v.clone(), s.clone()), p)
                    && self.typed_args(x, a_ctx, &f, p)
                {
                    return true;
                }
            }
            false
        })
    }

    /// All substitution tuples for `a_ctx` matching the pattern/target
    /// pairs; at most one unconstrained variable is enumerated over the
    /// universe to keep the instance space finite.
    fn match_instances(
        &self,
        a_ctx: &Precontext,
        pairs: &[(&Expr, &Expr)],
    ) -> Vec<Vec<Expr>> {
        let mut b = std::collections::BTreeMap::new();
        for (pat, target) in pairs {
            if !super::search_match(pat, target, a_ctx, &mut b) {
                return Vec::new();
            }
        }
        let unbound: Vec<Var> =
            a_ctx.vars().into_iter().filter(|v| !b.contains_key(v)).collect();
        match unbound.len() {
            0 => vec![a_ctx.vars().iter().map(|v| b[v].clone()).collect()],
            1 => self
                .terms
                .iter()
                .map(|t| {
                    a_ctx
                        .vars()
                        .iter()
                        .map(|v| if *v == unbound[0] { t.clone() } else { b[v].clone() })
                        .collect()
                })
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Subexpressions of the goal and axioms, one substitution round deep,
/// split into sort and term expressions and capped in size.
fn build_universe(goal: &Judgment, theory: &Pretheory, size_cap: usize) -> (Vec<Expr>, Vec<Expr>) {
    let mut base: BTreeSet<Expr> = BTreeSet::new();
    let mut seed = |j: &Judgment| {
        for (_, s) in j.context().entries() {
            for e in s.subexprs() {
                base.insert(e.clone());
            }
        }
        for part in j.parts() {
            for e in part.subexprs() {
                base.insert(e.clone());
            }
        }
    };
    seed(goal);
    for ax in theory.axioms() {
        seed(ax);
    }
    // canonical sorts of base terms in the goal context are natural
    // intermediates for (seq/t)
    let ctx = goal.context().clone();
    let canon: Vec<Expr> = base
        .iter()
        .filter(|e| classify(e) == Class::Term)
        .filter_map(|e| canonical_sort(&ctx, e, theory).ok())
        .collect();
    base.extend(canon);

    // one round of substitution instances of axiom expressions by base terms
    let base_terms: Vec<Expr> = base
        .iter()
        .filter(|e| classify(e) == Class::Term && e.size() <= size_cap)
        .cloned()
        .collect();
    let mut extra = Vec::new();
    const INSTANCE_CAP: usize = 4000;
    for ax in theory.axioms() {
        let a_ctx = ax.context();
        if a_ctx.is_empty() {
            continue;
        }
        let mut tuples: Vec<Vec<Expr>> = vec![Vec::new()];
        for _ in 0..a_ctx.len() {
            let mut next = Vec::new();
            for t in &tuples {
                for e in &base_terms {
                    let mut t2 = t.clone();
                    t2.push(e.clone());
                    next.push(t2);
                    if next.len() > INSTANCE_CAP {
                        break;
                    }
                }
                if next.len() > INSTANCE_CAP {
                    break;
                }
            }
            tuples = next;
        }
        for tuple in tuples {
            let b: Vec<(Expr, Var)> = tuple
                .into_iter()
                .zip(a_ctx.vars())
                .collect();
            for part in ax.parts() {
                let inst = substitute(part, &b);
                if inst.size() <= size_cap {
                    extra.push(inst);
                }
            }
        }
    }
    base.extend(extra);

    let mut sorts = Vec::new();
    let mut terms = Vec::new();
    for e in base {
        if e.size() > size_cap {
            continue;
        }
        match classify(&e) {
            Class::Sort => sorts.push(e),
            Class::Term => terms.push(e),
            Class::IllFormed => {}
        }
    }
    (sorts, terms)
}
