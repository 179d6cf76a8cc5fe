//! The built-in theories and their shipped goldens.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gat_core::corpus::{builtin, fuzz, golden_compare, golden_for, BuiltinId, BUILTIN_IDS};
use gat_core::kernel::{is_theory, Prover, Ruleset, SearchBudget};
use gat_core::syntax::{parse_theory, print_theory};
use gat_core::tensor::{tensor_context, tensor_theory, TensorPlan};

#[test]
fn every_builtin_is_a_theory() {
    for id in BUILTIN_IDS {
        let t = builtin(id);
        let prover = Prover::new(&t, SearchBudget::default(), Ruleset::Modified);
        let report = is_theory(&t, &prover);
        assert!(report.is_theory(), "{} has {} unknown axioms", t.name(), report.unknown_count());
    }
}

#[test]
fn builtin_round_trips() {
    for id in BUILTIN_IDS {
        let t = builtin(id);
        let printed = print_theory(&t);
        let back = parse_theory(&printed).unwrap();
        assert_eq!(back.axioms(), t.axioms(), "{} did not round trip", t.name());
        assert_eq!(print_theory(&back), printed);
    }
}

#[test]
fn graph_golden_is_exact() {
    let g = builtin(BuiltinId::Graph);
    let gg = tensor_theory(&g, &g).unwrap();
    let golden = golden_for(BuiltinId::Graph, BuiltinId::Graph).unwrap();
    assert_eq!(golden.expected.axioms().len(), 4);
    let diff = golden_compare(&gg, &golden);
    assert!(diff.is_exact(), "missing {:?} unexpected {:?}", diff.missing, diff.unexpected);
}

#[test]
fn cat_golden_is_exact() {
    let c = builtin(BuiltinId::Cat);
    let cc = tensor_theory(&c, &c).unwrap();
    let golden = golden_for(BuiltinId::Cat, BuiltinId::Cat).unwrap();
    assert_eq!(golden.expected.axioms().len(), 28);
    let diff = golden_compare(&cc, &golden);
    assert!(diff.is_exact(), "missing {:?} unexpected {:?}", diff.missing, diff.unexpected);
}

#[test]
fn permuted_context_entries_mismatch() {
    // deliberately permuting two differently-sorted context entries breaks
    // the comparison (alpha equality is positional inside contexts)
    let g = builtin(BuiltinId::Graph);
    let gg = tensor_theory(&g, &g).unwrap();
    let golden_text = "\
theory broken
sort OO ( )
sort OA ( xx:OO, xy:OO )
sort AO ( xx:OO, yx:OO )
sort AA ( xx:OO, xy:OO, yx:OO, xk:OA(xx,xy), yy:OO, yk:OA(yx,yy), kx:AO(xx,yx), ky:AO(xy,yy) )
";
    let golden =
        gat_core::corpus::Golden::load(golden_text, "OO = O*O\nOA = O*A\nAO = A*O\nAA = A*A\n")
            .unwrap();
    let diff = golden_compare(&gg, &golden);
    // the first three still match; the entry-permuted AA does not
    assert_eq!(diff.matched.len(), 3);
    assert_eq!(diff.missing.len(), 1);
}

#[test]
fn length_multiplicativity_on_builtin_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (a, b) in [
        (BuiltinId::Graph, BuiltinId::Cat),
        (BuiltinId::Cat, BuiltinId::Display),
        (BuiltinId::Arrow, BuiltinId::MonoidLawvere),
    ] {
        let ta = builtin(a);
        let tb = builtin(b);
        let plan = TensorPlan::new(&ta, &tb);
        for _ in 0..20 {
            let x = fuzz::random_context(&ta, &mut rng, 5);
            let y = fuzz::random_context(&tb, &mut rng, 5);
            let t = tensor_context(&x, &y, &plan).unwrap();
            assert_eq!(t.len(), x.len() * y.len());
        }
    }
}

#[test]
fn type_signature_sort_count_is_the_product() {
    // the object-level bijection surrogate: sort symbols of the product of
    // two type signatures count as the product of the factors'
    let s = builtin(BuiltinId::SimplexSignature2);
    let ss = tensor_theory(&s, &s).unwrap();
    let n = s.alphabet().sort_syms().len();
    assert_eq!(ss.alphabet().sort_syms().len(), n * n);
    assert_eq!(ss.alphabet().term_syms().len(), 0);
}

#[test]
fn tensor_alphabet_counts_match_products_on_all_pairs() {
    for a in BUILTIN_IDS {
        for b in BUILTIN_IDS {
            let ta = builtin(a);
            let tb = builtin(b);
            let prod = tensor_theory(&ta, &tb).unwrap();
            let (s1, t1) = (ta.alphabet().sort_syms().len(), ta.alphabet().term_syms().len());
            let (s2, t2) = (tb.alphabet().sort_syms().len(), tb.alphabet().term_syms().len());
            assert_eq!(prod.alphabet().sort_syms().len(), s1 * s2);
            assert_eq!(prod.alphabet().term_syms().len(), s1 * t2 + t1 * s2);
        }
    }
}

#[test]
fn arrow_tensor_cat_is_the_theory_of_functors() {
    // tensoring the walking arrow with categories yields two copies of the
    // category axioms plus an action on objects and arrows that laxly
    // commutes with composition and identities
    use gat_core::syntax::{parse_judgment, print_judgment};
    let a = builtin(BuiltinId::Arrow);
    let c = builtin(BuiltinId::Cat);
    let ac = tensor_theory(&a, &c).unwrap();
    assert_eq!(ac.axioms().len(), 18, "2x7 copies + 4 phi axioms");

    // the object action: x:S*O |- phi*O(x) : T*O
    let phi_o = ac.alphabet().resolve_sym("phi*O").unwrap();
    let (ctx, _, target) = ac.term_axiom(&phi_o).unwrap();
    assert_eq!(ctx.len(), 1);
    assert_eq!(print_judgment(&gat_core::syntax::Judgment::Sort(ctx.clone(), target.clone()), ac.alphabet()),
        "x.x:S*O |- T*O sort");

    // the arrow action lands in T*A over the image objects
    let phi_a = ac.alphabet().resolve_sym("phi*A").unwrap();
    let (ctx, _, target) = ac.term_axiom(&phi_a).unwrap();
    let line = print_judgment(
        &gat_core::syntax::Judgment::Sort(ctx.clone(), target.clone()),
        ac.alphabet(),
    );
    assert_eq!(
        line,
        "x.x:S*O, x.y:S*O, x.z:S*A(x.x,x.y) |- T*A(phi*O(x.x),phi*O(x.y)) sort"
    );

    // functoriality on composition arrives as a term equality axiom
    let expected = parse_judgment(
        "x.x:S*O, x.y:S*O, x.z:S*O, x.f:S*A(x.x,x.y), x.g:S*A(x.y,x.z) |- \
         T*comp(phi*O(x.x),phi*O(x.y),phi*O(x.z),phi*A(x.x,x.y,x.f),phi*A(x.y,x.z,x.g)) \
         == phi*A(x.x,x.z,S*comp(x.x,x.y,x.z,x.f,x.g)) : T*A(phi*O(x.x),phi*O(x.z))",
        &ac,
    )
    .unwrap();
    assert!(
        ac.axioms().iter().any(|ax| gat_core::syntax::alpha_equal(ax, &expected)),
        "functoriality-on-composition axiom missing"
    );
}

#[test]
fn interchange_axiom_derives_under_variable_renaming() {
    // derivability is invariant under renaming to any other admissible
    // pair variables, not just the ones the product construction chose
    use gat_core::kernel::{derive, Ruleset, SearchBudget};
    use gat_core::syntax::{substitute, Expr, Judgment, Precontext, Var};
    let c = builtin(BuiltinId::Cat);
    let cc = tensor_theory(&c, &c).unwrap();
    let ax = cc
        .axioms()
        .iter()
        .rev()
        .find(|a| matches!(a, Judgment::TermEq(ctx, ..) if ctx.len() == 25))
        .expect("the interchange axiom has the 5x5 context");
    // rename every context variable to a distant pair variable
    let ctx = ax.context();
    let renames: Vec<(Expr, Var)> = ctx
        .vars()
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let fresh = Var::pair(Var::Atom(50 + i as u32), Var::Atom(90));
            (Expr::Var(fresh), v)
        })
        .collect();
    let new_ctx = Precontext::new(
        ctx.entries()
            .iter()
            .zip(&renames)
            .map(|((_, s), (nv, _))| {
                let Expr::Var(nv) = nv else { unreachable!() };
                (nv.clone(), substitute(s, &renames))
            })
            .collect(),
    )
    .unwrap();
    let Judgment::TermEq(_, u, v, s) = ax else { unreachable!() };
    let goal = Judgment::TermEq(
        new_ctx,
        substitute(u, &renames),
        substitute(v, &renames),
        substitute(s, &renames),
    );
    let r = derive(&goal, &cc, SearchBudget::default(), Ruleset::Modified);
    assert!(r.is_derivable(), "renamed interchange axiom must derive");
}
