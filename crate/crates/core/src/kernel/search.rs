//! Goal-directed bounded proof search.
//!
//! Sort and term goals are syntax-directed (the head symbol fixes the axiom
//! and the substitution components). Equality goals run a bidirectional
//! rewrite search over the theory's equality axioms, then the found path is
//! certified step by step and chained with transitivity. Derivability is
//! only semi-decidable, so a failed search reports `Unknown`, never
//! "not derivable".

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use dashmap::DashMap;

use crate::syntax::{substitute, Expr, Judgment, Precontext, Pretheory, SymKind, Var};

use super::derivation::{check_derivation, Derivation};
use super::rules::{canonical_sort, prefix_bindings, RuleName, Ruleset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_height: u32,
    /// Size bound (in expression nodes) for invented intermediate
    /// expressions, and the per-side node cap of the rewrite search.
    pub universe: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        // Corpus tensor axioms sit in strata around 80-90: every context
        // entry costs two strata through (ctx)/(s-sub) plus two more per
        // level of sort dependency, so 21-entry contexts alone pass 70.
        SearchBudget { max_height: 160, universe: 200 }
    }
}

impl SearchBudget {
    pub fn with_height(max_height: u32) -> Self {
        SearchBudget { max_height, ..Default::default() }
    }
}

#[derive(Debug, Clone)]
pub enum DerivResult {
    Derivable { cert: Arc<Derivation>, height_ub: u32 },
    Unknown,
}

impl DerivResult {
    pub fn is_derivable(&self) -> bool {
        matches!(self, DerivResult::Derivable { .. })
    }

    pub fn height_ub(&self) -> Option<u32> {
        match self {
            DerivResult::Derivable { height_ub, .. } => Some(*height_ub),
            DerivResult::Unknown => None,
        }
    }
}

/// Search for a derivation of `goal`. A `Derivable` answer has been
/// re-validated through `check_derivation` and its tree height respects the
/// budget.
pub fn derive(
    goal: &Judgment,
    theory: &Pretheory,
    budget: SearchBudget,
    ruleset: Ruleset,
) -> DerivResult {
    let prover = Prover::new(theory, budget, ruleset);
    prover.result(goal)
}

/// A prover with its memo tables; reuse one across many goals over the same
/// theory to share work. Shared maps make per-goal parallelism safe: values
/// are deterministic, so racing writers are benign.
type PathKey = (Precontext, Expr, Expr);
type Path = Arc<Vec<(Expr, RewriteStep)>>;

pub struct Prover<'t> {
    theory: &'t Pretheory,
    budget: SearchBudget,
    ruleset: Ruleset,
    hits: DashMap<Judgment, Arc<Derivation>>,
    fails: DashMap<Judgment, u32>,
    paths: DashMap<PathKey, Option<Path>>,
}

thread_local! {
    static IN_PROGRESS: std::cell::RefCell<std::collections::HashSet<Judgment>> =
        std::cell::RefCell::new(std::collections::HashSet::new());
    // counts depth-cap hits and cycle cuts; a failure that saw neither below
    // it is final and safe to memoize
    static POISON: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

fn poison() {
    POISON.with(|p| p.set(p.get() + 1));
}


#[derive(Clone)]
pub(crate) struct RewriteStep {
    pos: Vec<usize>,
    axiom: usize,
    forward: bool,
    bindings: Vec<(Expr, Var)>,
}

impl<'t> Prover<'t> {
    pub fn new(theory: &'t Pretheory, budget: SearchBudget, ruleset: Ruleset) -> Prover<'t> {
        Prover {
            theory,
            budget,
            ruleset,
            hits: DashMap::new(),
            fails: DashMap::new(),
            paths: DashMap::new(),
        }
    }

    pub fn budget(&self) -> SearchBudget {
        self.budget
    }

    /// The recursion guard; certificate heights are bounded separately by
    /// the budget, this only keeps failing branches finite.
    fn depth_cap(&self) -> u32 {
        self.budget.max_height.saturating_mul(2).max(128)
    }

    pub fn result(&self, goal: &Judgment) -> DerivResult {
        // seed the context prefixes bottom-up so deep contexts do not eat
        // the recursion budget linearly
        let x = goal.context();
        for i in 0..=x.len() {
            let sub = x.truncate(i).unwrap();
            if i > 0 {
                let entry =
                    Judgment::Sort(x.truncate(i - 1).unwrap(), x.sort(i - 1).clone());
                self.prove(&entry, self.depth_cap());
            }
            self.prove(&Judgment::Ctx(sub), self.depth_cap());
        }
        match self.prove(goal, self.depth_cap()) {
            Some(cert) if check_derivation(&cert, self.theory) => {
                let height_ub = cert.height();
                if height_ub <= self.budget.max_height {
                    DerivResult::Derivable { cert, height_ub }
                } else {
                    DerivResult::Unknown
                }
            }
            _ => DerivResult::Unknown,
        }
    }

    pub fn prove(&self, goal: &Judgment, rem: u32) -> Option<Arc<Derivation>> {
        if rem == 0 {
            poison();
            return None;
        }
        if let Some(hit) = self.hits.get(goal) {
            return Some(hit.clone());
        }
        if self.fails.contains_key(goal) {
            return None;
        }
        // cut cyclic regress; the cycle's entry point retries other rules
        let fresh = IN_PROGRESS.with(|s| s.borrow_mut().insert(goal.clone()));
        if !fresh {
            poison();
            return None;
        }
        let poison_before = POISON.with(|p| p.get());
        let out = match goal {
            Judgment::Ctx(x) => self.prove_ctx(x, rem),
            Judgment::Sort(x, u) => self.prove_sort(x, u, rem),
            Judgment::Term(x, u, s) => self.prove_term(x, u, s, rem),
            Judgment::SortEq(x, u, v) => self.prove_seq(x, u, v, rem),
            Judgment::TermEq(x, u, v, s) => self.prove_teq(x, u, v, s, rem),
        };
        IN_PROGRESS.with(|s| s.borrow_mut().remove(goal));
        match &out {
            Some(cert) => {
                self.hits.insert(goal.clone(), cert.clone());
            }
            None => {
                // only a failure whose exploration never hit the depth cap
                // or a cycle cut is final
                if POISON.with(|p| p.get()) == poison_before {
                    self.fails.insert(goal.clone(), 0);
                }
            }
        }
        out
    }

    fn node(&self, rule: RuleName, concl: Judgment, prems: Vec<Arc<Derivation>>) -> Arc<Derivation> {
        Arc::new(Derivation::new(rule, concl, prems))
    }

    fn prove_ctx(&self, x: &Precontext, rem: u32) -> Option<Arc<Derivation>> {
        let goal = Judgment::Ctx(x.clone());
        if x.is_empty() {
            return Some(self.node(RuleName::Ctx, goal, vec![]));
        }
        let n = x.len() - 1;
        let prem = Judgment::Sort(x.truncate(n).unwrap(), x.sort(n).clone());
        let d = self.prove(&prem, rem - 1)?;
        Some(self.node(RuleName::Ctx, goal, vec![d]))
    }

    fn prove_sort(&self, x: &Precontext, u: &Expr, rem: u32) -> Option<Arc<Derivation>> {
        let goal = Judgment::Sort(x.clone(), u.clone());
        let Expr::App(t, f) = u else { return None };
        if t.kind() != SymKind::Sort {
            return None;
        }
        let intro = self.theory.introduction_judgment(t)?.clone();
        if intro == goal {
            // (s-a)
            let mut prems = vec![self.prove(&Judgment::Ctx(x.clone()), rem - 1)?];
            for i in 0..x.len() {
                let p = Judgment::Term(x.clone(), Expr::Var(x.var(i).clone()), x.sort(i).clone());
                prems.push(self.prove(&p, rem - 1)?);
            }
            return Some(self.node(RuleName::SortAx, goal, prems));
        }
        // (s-sub)
        let (a_ctx, _) = self.theory.sort_axiom(t)?;
        if f.len() != a_ctx.len() {
            return None;
        }
        let a_ctx = a_ctx.clone();
        let mut prems = vec![
            self.prove(&intro, rem - 1)?,
            self.prove(&Judgment::Ctx(x.clone()), rem - 1)?,
        ];
        for i in 0..f.len() {
            let expected = substitute(a_ctx.sort(i), &prefix_bindings(&a_ctx, f, i));
            prems.push(self.prove(&Judgment::Term(x.clone(), f[i].clone(), expected), rem - 1)?);
        }
        Some(self.node(RuleName::SortSub, goal, prems))
    }

    fn prove_term(&self, x: &Precontext, u: &Expr, s: &Expr, rem: u32) -> Option<Arc<Derivation>> {
        let goal = Judgment::Term(x.clone(), u.clone(), s.clone());
        let canon = canonical_sort(x, u, self.theory).ok()?;
        if canon == *s {
            match u {
                Expr::Var(_) => {
                    // (var) / (var)'
                    let (rule, prem) = match self.ruleset {
                        Ruleset::Modified => {
                            (RuleName::Var, Judgment::Sort(x.clone(), s.clone()))
                        }
                        Ruleset::Cartmell => (RuleName::CVar, Judgment::Ctx(x.clone())),
                    };
                    let d = self.prove(&prem, rem - 1)?;
                    return Some(self.node(rule, goal, vec![d]));
                }
                Expr::App(t, f) => {
                    let intro = self.theory.introduction_judgment(t)?.clone();
                    if intro == goal {
                        // (t-a)
                        let mut prems = vec![self.prove(&Judgment::Sort(x.clone(), s.clone()), rem - 1)?];
                        for i in 0..x.len() {
                            let p = Judgment::Term(
                                x.clone(),
                                Expr::Var(x.var(i).clone()),
                                x.sort(i).clone(),
                            );
                            prems.push(self.prove(&p, rem - 1)?);
                        }
                        return Some(self.node(RuleName::TermAx, goal, prems));
                    }
                    // (t-sub) / (t-sub)'
                    let (a_ctx, _, _) = self.theory.term_axiom(t)?;
                    let a_ctx = a_ctx.clone();
                    if f.len() != a_ctx.len() {
                        return None;
                    }
                    let mut prems = vec![self.prove(&intro, rem - 1)?];
                    if self.ruleset == Ruleset::Modified {
                        prems.push(self.prove(&Judgment::Sort(x.clone(), s.clone()), rem - 1)?);
                    }
                    for i in 0..f.len() {
                        let expected = substitute(a_ctx.sort(i), &prefix_bindings(&a_ctx, f, i));
                        prems.push(self.prove(
                            &Judgment::Term(x.clone(), f[i].clone(), expected),
                            rem - 1,
                        )?);
                    }
                    let rule = match self.ruleset {
                        Ruleset::Modified => RuleName::TermSub,
                        Ruleset::Cartmell => RuleName::CTermSub,
                    };
                    return Some(self.node(rule, goal, prems));
                }
            }
        }
        // sort differs from the canonical one: (seq/t) from u : S(u)
        let seq = self.prove(&Judgment::SortEq(x.clone(), canon.clone(), s.clone()), rem - 1)?;
        let at_canon = self.prove(&Judgment::Term(x.clone(), u.clone(), canon), rem - 1)?;
        Some(self.node(RuleName::SeqT, goal, vec![seq, at_canon]))
    }

    fn prove_seq(&self, x: &Precontext, u: &Expr, v: &Expr, rem: u32) -> Option<Arc<Derivation>> {
        let goal = Judgment::SortEq(x.clone(), u.clone(), v.clone());
        if u == v {
            let d = self.prove(&Judgment::Sort(x.clone(), u.clone()), rem - 1)?;
            return Some(self.node(RuleName::S1, goal, vec![d]));
        }
        if self.theory.axioms().contains(&goal) && self.ruleset == Ruleset::Modified {
            let du = self.prove(&Judgment::Sort(x.clone(), u.clone()), rem - 1)?;
            let dv = self.prove(&Judgment::Sort(x.clone(), v.clone()), rem - 1)?;
            return Some(self.node(RuleName::SeqAx, goal, vec![du, dv]));
        }
        if self.theory.axioms().contains(&goal) && self.ruleset == Ruleset::Cartmell {
            let du = self.prove(&Judgment::Sort(x.clone(), u.clone()), rem - 1)?;
            let dv = self.prove(&Judgment::Sort(x.clone(), v.clone()), rem - 1)?;
            return Some(self.node(RuleName::SeqAx, goal, vec![du, dv]));
        }
        if self.theory.has_sort_eq_axioms() {
            if let Some(d) = self.seq_axiom_instance(x, u, v, rem) {
                return Some(d);
            }
        }
        // head congruence
        if let (Expr::App(t1, f), Expr::App(t2, g)) = (u, v) {
            if t1 == t2 && t1.kind() == SymKind::Sort && f.len() == g.len() {
                if let Some(d) = self.seq_congruence(x, u, v, rem) {
                    return Some(d);
                }
            }
        }
        // transitive chains through one axiom instance at a time
        if self.theory.has_sort_eq_axioms() {
            return self.seq_chain(x, u, v, rem);
        }
        None
    }

    /// (s3) with the middle sort reached from `u` by instantiating one
    /// sort-equality axiom (either orientation).
    fn seq_chain(&self, x: &Precontext, u: &Expr, v: &Expr, rem: u32) -> Option<Arc<Derivation>> {
        if rem < 2 {
            poison();
            return None;
        }
        let axioms: Vec<Judgment> = self.theory.sort_eq_axioms().cloned().collect();
        for ax in &axioms {
            let Judgment::SortEq(a_ctx, l, r) = ax else { continue };
            for (pat, other) in [(l, r), (r, l)] {
                let mut b = BTreeMap::new();
                if !match_pattern(pat, u, a_ctx, &mut b) || b.len() != a_ctx.len() {
                    continue;
                }
                let bindings: Vec<(Expr, Var)> =
                    b.iter().map(|(var, e)| (e.clone(), var.clone())).collect();
                let mid = substitute(other, &bindings);
                if mid == *u {
                    continue;
                }
                let Some(rest) = self.prove(&Judgment::SortEq(x.clone(), mid.clone(), v.clone()), rem - 1)
                else {
                    continue;
                };
                let first =
                    self.prove(&Judgment::SortEq(x.clone(), u.clone(), mid.clone()), rem - 1)?;
                let goal = Judgment::SortEq(x.clone(), u.clone(), v.clone());
                return Some(self.node(RuleName::S3, goal, vec![first, rest]));
            }
        }
        None
    }

    /// (seq-sub-1), or its Cartmell counterpart, instantiating a
    /// sort-equality axiom; both orientations are attempted.
    fn seq_axiom_instance(
        &self,
        x: &Precontext,
        u: &Expr,
        v: &Expr,
        rem: u32,
    ) -> Option<Arc<Derivation>> {
        let axioms: Vec<Judgment> = self.theory.sort_eq_axioms().cloned().collect();
        for ax in &axioms {
            let Judgment::SortEq(a_ctx, l, r) = ax else { continue };
            for (flip, pat_l, pat_r) in [(false, l, r), (true, r, l)] {
                let mut b = BTreeMap::new();
                if match_pattern(pat_l, u, a_ctx, &mut b)
                    && match_pattern(pat_r, v, a_ctx, &mut b)
                    && b.len() == a_ctx.len()
                {
                    let f: Vec<Expr> =
                        a_ctx.vars().iter().map(|a| b[a].clone()).collect();
                    let straight = if flip { (v, u) } else { (u, v) };
                    let d = self.seq_sub1(x, ax, a_ctx, &f, straight, rem)?;
                    if flip {
                        let goal = Judgment::SortEq(x.clone(), u.clone(), v.clone());
                        return Some(self.node(RuleName::S2, goal, vec![d]));
                    }
                    return Some(d);
                }
            }
        }
        None
    }

    fn seq_sub1(
        &self,
        x: &Precontext,
        ax: &Judgment,
        a_ctx: &Precontext,
        f: &[Expr],
        sides: (&Expr, &Expr),
        rem: u32,
    ) -> Option<Arc<Derivation>> {
        let (lhs, rhs) = sides;
        let goal = Judgment::SortEq(x.clone(), lhs.clone(), rhs.clone());
        match self.ruleset {
            Ruleset::Modified => {
                let mut prems = vec![
                    self.prove(ax, rem - 1)?,
                    self.prove(&Judgment::Sort(x.clone(), lhs.clone()), rem - 1)?,
                    self.prove(&Judgment::Sort(x.clone(), rhs.clone()), rem - 1)?,
                ];
                for i in 0..f.len() {
                    let expected = substitute(a_ctx.sort(i), &prefix_bindings(a_ctx, f, i));
                    prems.push(self.prove(
                        &Judgment::Term(x.clone(), f[i].clone(), expected),
                        rem - 1,
                    )?);
                }
                Some(self.node(RuleName::SeqSub1, goal, prems))
            }
            Ruleset::Cartmell => {
                // (seq-sub)' with equal substitution tuples
                let mut prems = vec![self.prove(ax, rem - 1)?];
                for i in 0..f.len() {
                    let expected = substitute(a_ctx.sort(i), &prefix_bindings(a_ctx, f, i));
                    let typed = self.prove(
                        &Judgment::Term(x.clone(), f[i].clone(), expected.clone()),
                        rem - 2,
                    )?;
                    let refl = Judgment::TermEq(x.clone(), f[i].clone(), f[i].clone(), expected);
                    prems.push(self.node(RuleName::T1, refl, vec![typed]));
                }
                Some(self.node(RuleName::CSeqSub, goal, prems))
            }
        }
    }

    /// T(f) == T(g) from componentwise term equalities.
    fn seq_congruence(&self, x: &Precontext, u: &Expr, v: &Expr, rem: u32) -> Option<Arc<Derivation>> {
        let goal = Judgment::SortEq(x.clone(), u.clone(), v.clone());
        let (Expr::App(t, f), Expr::App(_, g)) = (u, v) else { return None };
        let (a_ctx, _) = self.theory.sort_axiom(t)?;
        let a_ctx = a_ctx.clone();
        if f.len() != a_ctx.len() {
            return None;
        }
        let mut args = Vec::new();
        for i in 0..f.len() {
            let expected = substitute(a_ctx.sort(i), &prefix_bindings(&a_ctx, f, i));
            let p = Judgment::TermEq(x.clone(), f[i].clone(), g[i].clone(), expected);
            args.push(self.prove(&p, rem - 1)?);
        }
        match self.ruleset {
            Ruleset::Modified => {
                let mut prems = vec![
                    self.prove(self.theory.introduction_judgment(t)?, rem - 1)?,
                    self.prove(&Judgment::Sort(x.clone(), u.clone()), rem - 1)?,
                    self.prove(&Judgment::Sort(x.clone(), v.clone()), rem - 1)?,
                ];
                prems.extend(args);
                Some(self.node(RuleName::SeqSub2, goal, prems))
            }
            Ruleset::Cartmell => {
                // (seq-sub)' over the reflexivity of the introduction axiom
                let intro = self.theory.introduction_judgment(t)?.clone();
                let Judgment::Sort(ac, au) = &intro else { return None };
                let refl = Judgment::SortEq(ac.clone(), au.clone(), au.clone());
                let refl_cert =
                    self.node(RuleName::S1, refl, vec![self.prove(&intro, rem - 2)?]);
                let mut prems = vec![refl_cert];
                prems.extend(args);
                Some(self.node(RuleName::CSeqSub, goal, prems))
            }
        }
    }

    fn prove_teq(&self, x: &Precontext, u: &Expr, v: &Expr, s: &Expr, rem: u32) -> Option<Arc<Derivation>> {
        let goal = Judgment::TermEq(x.clone(), u.clone(), v.clone(), s.clone());
        if u == v {
            let d = self.prove(&Judgment::Term(x.clone(), u.clone(), s.clone()), rem - 1)?;
            return Some(self.node(RuleName::T1, goal, vec![d]));
        }
        if self.theory.axioms().contains(&goal) {
            let du = self.prove(&Judgment::Term(x.clone(), u.clone(), s.clone()), rem - 1)?;
            let dv = self.prove(&Judgment::Term(x.clone(), v.clone(), s.clone()), rem - 1)?;
            return Some(self.node(RuleName::TeqAx, goal, vec![du, dv]));
        }
        // find a rewrite path and certify it, chaining with (t3)
        let path = self.rewrite_path(x, u, v)?;
        let mut acc: Option<(Expr, Arc<Derivation>)> = None; // u == w_i : s so far
        let mut current = u.clone();
        for (next, step) in path.iter() {
            let step_cert = self.certify_step(x, &current, step, rem.saturating_sub(1))?;
            let step_at_s = self.convert_sort(step_cert, s, rem.saturating_sub(1))?;
            acc = Some(match acc {
                None => (next.clone(), step_at_s),
                Some((_, prev)) => {
                    let concl =
                        Judgment::TermEq(x.clone(), u.clone(), next.clone(), s.clone());
                    (next.clone(), self.node(RuleName::T3, concl, vec![prev, step_at_s]))
                }
            });
            current = next.clone();
        }
        let (reached, cert) = acc?;
        (reached == *v).then_some(cert)
    }

    /// Convert an equality certificate to an equality at sort `s` via
    /// (seq/teq) when its sort differs.
    fn convert_sort(&self, d: Arc<Derivation>, s: &Expr, rem: u32) -> Option<Arc<Derivation>> {
        let Judgment::TermEq(x, u, v, t) = &d.conclusion else { return None };
        if t == s {
            return Some(d);
        }
        if rem == 0 {
            poison();
            return None;
        }
        let goal = Judgment::TermEq(x.clone(), u.clone(), v.clone(), s.clone());
        let seq = self.prove(&Judgment::SortEq(x.clone(), t.clone(), s.clone()), rem - 1)?;
        match self.ruleset {
            Ruleset::Modified => {
                let du = self.prove(&Judgment::Term(x.clone(), u.clone(), s.clone()), rem - 1)?;
                let dv = self.prove(&Judgment::Term(x.clone(), v.clone(), s.clone()), rem - 1)?;
                Some(self.node(RuleName::SeqTeq, goal, vec![seq, d, du, dv]))
            }
            Ruleset::Cartmell => Some(self.node(RuleName::CSeqTeq, goal, vec![seq, d])),
        }
    }

    /// Certify one rewrite step at the position's natural sort.
    fn certify_step(
        &self,
        x: &Precontext,
        w: &Expr,
        step: &RewriteStep,
        rem: u32,
    ) -> Option<Arc<Derivation>> {
        if rem == 0 {
            poison();
            return None;
        }
        self.certify_at(x, w, &step.pos, step, rem)
    }

    fn certify_at(
        &self,
        x: &Precontext,
        w: &Expr,
        pos: &[usize],
        step: &RewriteStep,
        rem: u32,
    ) -> Option<Arc<Derivation>> {
        if rem == 0 {
            poison();
            return None;
        }
        if pos.is_empty() {
            return self.certify_root(x, w, step, rem);
        }
        let Expr::App(t, args) = w else { return None };
        let k = pos[0];
        let inner = self.certify_at(x, args.get(k)?, &pos[1..], step, rem - 1)?;
        let Judgment::TermEq(_, _, inner_rhs, _) = inner.conclusion.clone() else { return None };

        let (a_ctx, _, target) = self.theory.term_axiom(t)?;
        let (a_ctx, target) = (a_ctx.clone(), target.clone());
        if args.len() != a_ctx.len() {
            return None;
        }
        let expected_k = substitute(a_ctx.sort(k), &prefix_bindings(&a_ctx, args, k));
        let inner_at = self.convert_sort(inner, &expected_k, rem - 1)?;

        let mut new_args = args.clone();
        new_args[k] = inner_rhs;
        let w2 = Expr::App(t.clone(), new_args.clone());
        let natural = substitute(&target, &prefix_bindings(&a_ctx, args, args.len()));
        let goal = Judgment::TermEq(x.clone(), w.clone(), w2.clone(), natural.clone());

        let mut eq_args = Vec::new();
        for i in 0..args.len() {
            if i == k {
                eq_args.push(inner_at.clone());
            } else {
                let expected = substitute(a_ctx.sort(i), &prefix_bindings(&a_ctx, args, i));
                let typed = self.prove(
                    &Judgment::Term(x.clone(), args[i].clone(), expected.clone()),
                    rem - 2,
                )?;
                let refl =
                    Judgment::TermEq(x.clone(), args[i].clone(), args[i].clone(), expected);
                eq_args.push(self.node(RuleName::T1, refl, vec![typed]));
            }
        }
        match self.ruleset {
            Ruleset::Modified => {
                let mut prems = vec![
                    self.prove(self.theory.introduction_judgment(t)?, rem - 1)?,
                    self.prove(&Judgment::Term(x.clone(), w.clone(), natural.clone()), rem - 1)?,
                    self.prove(&Judgment::Term(x.clone(), w2.clone(), natural), rem - 1)?,
                ];
                prems.extend(eq_args);
                Some(self.node(RuleName::TeqSub2, goal, prems))
            }
            Ruleset::Cartmell => {
                // (teq-sub)' over the reflexivity of the introduction axiom
                let intro = self.theory.introduction_judgment(t)?.clone();
                let Judgment::Term(ac, au, asort) = &intro else { return None };
                let refl = Judgment::TermEq(ac.clone(), au.clone(), au.clone(), asort.clone());
                let refl_cert = self.node(RuleName::T1, refl, vec![self.prove(&intro, rem - 2)?]);
                let mut prems = vec![refl_cert];
                prems.extend(eq_args);
                Some(self.node(RuleName::CTeqSub, goal, prems))
            }
        }
    }

    fn certify_root(
        &self,
        x: &Precontext,
        w: &Expr,
        step: &RewriteStep,
        rem: u32,
    ) -> Option<Arc<Derivation>> {
        let ax = self.theory.term_eq_axioms().nth(step.axiom)?.clone();
        let Judgment::TermEq(a_ctx, l, r, ls) = &ax else { return None };
        let f: Vec<Expr> = a_ctx
            .vars()
            .iter()
            .map(|a| {
                step.bindings
                    .iter()
                    .find(|(_, var)| var == a)
                    .map(|(e, _)| e.clone())
            })
            .collect::<Option<_>>()?;
        let lhs = substitute(l, &step.bindings);
        let rhs = substitute(r, &step.bindings);
        let sort = substitute(ls, &step.bindings);
        let from = if step.forward { &lhs } else { &rhs };
        if from != w {
            return None;
        }
        let straight = Judgment::TermEq(x.clone(), lhs.clone(), rhs.clone(), sort.clone());
        let cert = match self.ruleset {
            Ruleset::Modified => {
                let mut prems = vec![
                    self.prove(&ax, rem - 1)?,
                    self.prove(&Judgment::Term(x.clone(), lhs.clone(), sort.clone()), rem - 1)?,
                    self.prove(&Judgment::Term(x.clone(), rhs.clone(), sort.clone()), rem - 1)?,
                ];
                for i in 0..f.len() {
                    let expected = substitute(a_ctx.sort(i), &prefix_bindings(a_ctx, &f, i));
                    prems.push(self.prove(
                        &Judgment::Term(x.clone(), f[i].clone(), expected),
                        rem - 1,
                    )?);
                }
                self.node(RuleName::TeqSub1, straight, prems)
            }
            Ruleset::Cartmell => {
                let mut prems = vec![self.prove(&ax, rem - 1)?];
                for i in 0..f.len() {
                    let expected = substitute(a_ctx.sort(i), &prefix_bindings(a_ctx, &f, i));
                    let typed = self.prove(
                        &Judgment::Term(x.clone(), f[i].clone(), expected.clone()),
                        rem - 2,
                    )?;
                    let refl = Judgment::TermEq(x.clone(), f[i].clone(), f[i].clone(), expected);
                    prems.push(self.node(RuleName::T1, refl, vec![typed]));
                }
                self.node(RuleName::CTeqSub, straight, prems)
            }
        };
        if step.forward {
            Some(cert)
        } else {
            let goal = Judgment::TermEq(x.clone(), rhs, lhs, sort);
            Some(self.node(RuleName::T2, goal, vec![cert]))
        }
    }

    fn rewrite_path(&self, x: &Precontext, u: &Expr, v: &Expr) -> Option<Path> {
        let key = (x.clone(), u.clone(), v.clone());
        if let Some(hit) = self.paths.get(&key) {
            return hit.clone();
        }
        let out = self.rewrite_path_uncached(x, u, v).map(Arc::new);
        self.paths.insert(key, out.clone());
        out
    }

    /// Bidirectional breadth-first search over single-step rewrites by the
    /// term-equality axioms (both orientations, all positions). Returns the
    /// steps turning `u` into `v`.
    fn rewrite_path_uncached(
        &self,
        x: &Precontext,
        u: &Expr,
        v: &Expr,
    ) -> Option<Vec<(Expr, RewriteStep)>> {
        type Parents = BTreeMap<Expr, Option<(Expr, RewriteStep)>>;
        let mut from_u: Parents = BTreeMap::new();
        let mut from_v: Parents = BTreeMap::new();
        from_u.insert(u.clone(), None);
        from_v.insert(v.clone(), None);
        let mut qu = VecDeque::from([u.clone()]);
        let mut qv = VecDeque::from([v.clone()]);
        let cap = self.budget.universe.max(8);

        let meet = 'bfs: loop {
            if let Some(m) = from_u.keys().find(|k| from_v.contains_key(*k)) {
                break Some(m.clone());
            }
            if qu.is_empty() && qv.is_empty() {
                break None;
            }
            let expand_u = !qu.is_empty() && (qv.is_empty() || qu.len() <= qv.len());
            let (queue, mine, theirs) = if expand_u {
                (&mut qu, &mut from_u, &from_v)
            } else {
                (&mut qv, &mut from_v, &from_u)
            };
            let Some(w) = queue.pop_front() else {
                break None;
            };
            for (w2, step) in self.rewrite_moves(x, &w) {
                if mine.len() >= cap {
                    break 'bfs mine
                        .keys()
                        .find(|k| theirs.contains_key(*k))
                        .cloned();
                }
                if !mine.contains_key(&w2) {
                    let found = theirs.contains_key(&w2);
                    mine.insert(w2.clone(), Some((w.clone(), step)));
                    qu_or(queue, w2.clone());
                    if found {
                        break 'bfs Some(w2);
                    }
                }
            }
        }?;

        // stitch: u -> meet (forward links), then meet -> v (reversed links)
        let mut forward_half = Vec::new();
        let mut cur = meet.clone();
        while let Some(Some((prev, step))) = from_u.get(&cur).map(|o| o.as_ref()) {
            forward_half.push((cur.clone(), clone_step(step)));
            cur = prev.clone();
        }
        forward_half.reverse();

        let mut back_half = Vec::new();
        let mut cur = meet;
        while let Some(Some((prev, step))) = from_v.get(&cur).map(|o| o.as_ref()) {
            // the stored step turned `prev` into `cur`; we need the inverse
            let inv = RewriteStep {
                pos: step.pos.clone(),
                axiom: step.axiom,
                forward: !step.forward,
                bindings: step.bindings.clone(),
            };
            back_half.push((prev.clone(), inv));
            cur = prev.clone();
        }

        forward_half.extend(back_half);
        Some(forward_half)
    }

    fn rewrite_moves(&self, x: &Precontext, w: &Expr) -> Vec<(Expr, RewriteStep)> {
        let mut out = Vec::new();
        let axioms: Vec<Judgment> = self.theory.term_eq_axioms().cloned().collect();
        let mut positions = Vec::new();
        collect_positions(w, &mut Vec::new(), &mut positions);
        for pos in &positions {
            let sub = at_position(w, pos).unwrap();
            for (idx, ax) in axioms.iter().enumerate() {
                let Judgment::TermEq(a_ctx, l, r, ls) = ax else { continue };
                for (forward, pat, other) in [(true, l, r), (false, r, l)] {
                    let mut b = BTreeMap::new();
                    if !match_pattern(pat, sub, a_ctx, &mut b) {
                        continue;
                    }
                    if b.len() < a_ctx.len() {
                        // complete leftover variables from the canonical sort
                        if let Ok(cs) = canonical_sort(x, sub, self.theory) {
                            lenient_match(ls, &cs, a_ctx, &mut b);
                        }
                    }
                    if b.len() < a_ctx.len() {
                        continue;
                    }
                    let bindings: Vec<(Expr, Var)> =
                        b.iter().map(|(var, e)| (e.clone(), var.clone())).collect();
                    let replacement = substitute(other, &bindings);
                    let w2 = replace_at(w, pos, &replacement);
                    if w2.size() <= self.budget.universe {
                        out.push((
                            w2,
                            RewriteStep { pos: pos.clone(), axiom: idx, forward, bindings },
                        ));
                    }
                }
            }
        }
        out
    }
}

fn qu_or(q: &mut VecDeque<Expr>, e: Expr) {
    q.push_back(e);
}

fn clone_step(s: &RewriteStep) -> RewriteStep {
    RewriteStep {
        pos: s.pos.clone(),
        axiom: s.axiom,
        forward: s.forward,
        bindings: s.bindings.clone(),
    }
}

fn collect_positions(e: &Expr, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(prefix.clone());
    if let Expr::App(_, args) = e {
        for (i, a) in args.iter().enumerate() {
            prefix.push(i);
            collect_positions(a, prefix, out);
            prefix.pop();
        }
    }
}

fn at_position<'a>(e: &'a Expr, pos: &[usize]) -> Option<&'a Expr> {
    let mut cur = e;
    for &k in pos {
        match cur {
            Expr::App(_, args) => cur = args.get(k)?,
            Expr::Var(_) => return None,
        }
    }
    Some(cur)
}

fn replace_at(e: &Expr, pos: &[usize], replacement: &Expr) -> Expr {
    if pos.is_empty() {
        return replacement.clone();
    }
    match e {
        Expr::App(h, args) => {
            let mut args = args.clone();
            args[pos[0]] = replace_at(&args[pos[0]], &pos[1..], replacement);
            Expr::App(h.clone(), args)
        }
        Expr::Var(_) => e.clone(),
    }
}

/// First-order matching of an axiom-side pattern (variables of `a_ctx` are
/// the metavariables) against a ground expression; non-linear occurrences
/// must agree.
pub(crate) fn match_pattern(
    pat: &Expr,
    target: &Expr,
    a_ctx: &Precontext,
    bindings: &mut BTreeMap<Var, Expr>,
) -> bool {
    match pat {
        Expr::Var(a) => {
            if a_ctx.lookup(a).is_some() {
                match bindings.get(a) {
                    Some(bound) => bound == target,
                    None => {
                        bindings.insert(a.clone(), target.clone());
                        true
                    }
                }
            } else {
                matches!(target, Expr::Var(t) if t == a)
            }
        }
        Expr::App(h, args) => match target {
            Expr::App(h2, args2) if h == h2 && args.len() == args2.len() => args
                .iter()
                .zip(args2)
                .all(|(p, t)| match_pattern(p, t, a_ctx, bindings)),
            _ => false,
        },
    }
}

/// Best-effort walk that only binds still-unbound metavariables where the
/// shapes align; never fails.
fn lenient_match(pat: &Expr, target: &Expr, a_ctx: &Precontext, bindings: &mut BTreeMap<Var, Expr>) {
    match (pat, target) {
        (Expr::Var(a), t) => {
            if a_ctx.lookup(a).is_some() && !bindings.contains_key(a) {
                bindings.insert(a.clone(), t.clone());
            }
        }
        (Expr::App(h, args), Expr::App(h2, args2)) if h == h2 && args.len() == args2.len() => {
            for (p, t) in args.iter().zip(args2) {
                lenient_match(p, t, a_ctx, bindings);
            }
        }
        _ => {}
    }
}
