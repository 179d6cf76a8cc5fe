//! Kernel behavior on the graph and category theories: search, certificate
//! checking, exact heights, morphisms.

use gat_core::kernel::{
    check_derivation, check_morphism, compose, derive, height_ub, identity_morphism, is_theory,
    DerivResult, ExactEngine, Prover, Ruleset, SearchBudget,
};
use gat_core::syntax::{parse_judgment, parse_theory, Judgment, Precontext, Pretheory};

const GRAPH: &str = "\
theory graph
sort O ( )
sort A ( x:O, y:O )
";

const CAT: &str = "\
theory cat
sort O ( )
sort A ( x:O, y:O )
term comp ( x:O, y:O, z:O, f:A(x,y), g:A(y,z) ) : A(x,z)
term id ( x:O ) : A(x,x)
eqterm ( x:O, y:O, z:O, w:O, f:A(x,y), g:A(y,z), h:A(z,w) ) : comp(x,y,w,f,comp(y,z,w,g,h)) == comp(x,z,w,comp(x,y,z,f,g),h) : A(x,w)
eqterm ( x:O, y:O, f:A(x,y) ) : comp(x,x,y,id(x),f) == f : A(x,y)
eqterm ( x:O, y:O, f:A(x,y) ) : comp(x,y,y,f,id(y)) == f : A(x,y)
";

fn graph() -> Pretheory {
    parse_theory(GRAPH).unwrap()
}

fn cat() -> Pretheory {
    parse_theory(CAT).unwrap()
}

fn derives(theory: &Pretheory, text: &str) -> DerivResult {
    let goal = parse_judgment(text, theory).unwrap();
    derive(&goal, theory, SearchBudget::default(), Ruleset::Modified)
}

#[test]
fn empty_ctx_has_height_one() {
    let t = graph();
    let goal = Judgment::Ctx(Precontext::empty());
    match derive(&goal, &t, SearchBudget::default(), Ruleset::Modified) {
        DerivResult::Derivable { height_ub, .. } => assert_eq!(height_ub, 1),
        DerivResult::Unknown => panic!("empty context must derive"),
    }
    assert_eq!(height_ub(&goal, &t, SearchBudget::default()), Some(1));
}

#[test]
fn o_sort_exact_height_two() {
    // the only inference is (s-a) atop (ctx)
    let t = graph();
    let goal = parse_judgment("|- O sort", &t).unwrap();
    assert_eq!(height_ub(&goal, &t, SearchBudget::default()), Some(2));
    match derives(&t, "|- O sort") {
        DerivResult::Derivable { height_ub, .. } => assert_eq!(height_ub, 2),
        DerivResult::Unknown => panic!("|- O sort must derive"),
    }
}

#[test]
fn weakened_sorts_and_variables() {
    // (s-sub) carries the `Y ctx` premise, so weakening costs a stratum:
    // ht(x:O ctx) = 3, ht(x:O |- O sort) = 4, ht(x:O |- x:O) = 5.
    let t = graph();
    let b = SearchBudget::default();
    let ctx = parse_judgment("x:O |- ctx-ok", &t).unwrap();
    assert_eq!(height_ub(&ctx, &t, b), Some(3));
    let weak = parse_judgment("x:O |- O sort", &t).unwrap();
    assert_eq!(height_ub(&weak, &t, b), Some(4));
    let var = parse_judgment("x:O |- x : O", &t).unwrap();
    assert_eq!(height_ub(&var, &t, b), Some(5));
}

#[test]
fn context_height_formula() {
    // ht(X ctx) = ht(X) + 1
    let t = graph();
    let engine = ExactEngine::new(
        &parse_judgment("x:O, y:O |- ctx-ok", &t).unwrap(),
        &t,
        SearchBudget::default(),
    );
    let ctx = parse_judgment("x:O, y:O |- ctx-ok", &t).unwrap();
    let Judgment::Ctx(x) = &ctx else { unreachable!() };
    let h_ctx = engine.exact_height(&ctx).unwrap();
    let h_x = engine.context_height(x).unwrap();
    assert_eq!(h_ctx, h_x + 1);
}

#[test]
fn arity_mismatch_blocks_every_rule() {
    let t = graph();
    // A expects two arguments; no rule applies at any budget
    let x = parse_judgment("x:O |- x : O", &t).unwrap();
    let Judgment::Term(ctx, var, _) = x else { unreachable!() };
    let bad_sort = gat_core::syntax::Expr::App(
        match t.alphabet().lookup_sym("A").unwrap() {
            s => s,
        },
        vec![gat_core::syntax::Expr::Var(ctx.var(0).clone())],
    );
    let goal = Judgment::Sort(ctx.clone(), bad_sort);
    assert!(!derive(&goal, &t, SearchBudget::default(), Ruleset::Modified).is_derivable());
    let _ = var;
}

#[test]
fn cat_is_a_theory() {
    let t = cat();
    let prover = Prover::new(&t, SearchBudget::default(), Ruleset::Modified);
    let report = is_theory(&t, &prover);
    assert!(report.is_theory(), "all 7 axioms must be derivable");
    assert_eq!(report.per_axiom.len(), 7);
}

#[test]
fn non_theories_are_reported() {
    // shrinking A's introduction context leaves a consistent pretheory;
    // a two-argument use of A is then blocked at every budget
    let text = "theory bad\nsort O ( )\nsort A ( x:O )\n";
    let t = parse_theory(text).unwrap();
    assert!(parse_judgment("x:O |- A(x) sort", &t).is_ok());

    // an axiom whose target mentions a variable outside its context is a
    // legal pretheory that fails the theory check
    let text = "theory loose\nsort O ( )\nsort A ( x:O, y:O )\nterm f ( x:O ) : A(x,y)\n";
    let t = parse_theory(text).unwrap();
    let prover = Prover::new(&t, SearchBudget::default(), Ruleset::Modified);
    let report = is_theory(&t, &prover);
    assert!(!report.is_theory());
    assert_eq!(report.unknown_count(), 1, "only the loose axiom fails");
}

#[test]
fn unitality_rewrites_beyond_axioms() {
    let t = cat();
    // not an axiom: both unit laws specialized at an identity
    for line in [
        "x:O |- comp(x,x,x,id(x),id(x)) == id(x) : A(x,x)",
        "x:O, y:O, f:A(x,y) |- comp(x,x,y,id(x),f) == f : A(x,y)",
        "x:O, y:O, f:A(x,y) |- f == comp(x,x,y,id(x),f) : A(x,y)",
    ] {
        let r = derives(&t, line);
        assert!(r.is_derivable(), "expected derivable: {line}");
    }
}

#[test]
fn transitivity_chain_through_two_axioms() {
    let t = cat();
    // id(x) . id(x) == id(x) by left unit, and also by right unit; chain
    // forces an intermediate step
    let r = derives(
        &t,
        "x:O, y:O, f:A(x,y) |- comp(x,x,y,id(x),comp(x,x,y,id(x),f)) == f : A(x,y)",
    );
    assert!(r.is_derivable());
}

#[test]
fn certificates_revalidate() {
    let t = cat();
    let goal = parse_judgment("x:O |- comp(x,x,x,id(x),id(x)) == id(x) : A(x,x)", &t).unwrap();
    match derive(&goal, &t, SearchBudget::default(), Ruleset::Modified) {
        DerivResult::Derivable { cert, height_ub } => {
            assert!(check_derivation(&cert, &t));
            assert_eq!(cert.height(), height_ub);
        }
        DerivResult::Unknown => panic!("expected derivable"),
    }
}

#[test]
fn cartmell_matches_modified_on_basics() {
    let t = cat();
    for line in [
        "|- O sort",
        "x:O |- x : O",
        "x:O |- id(x) : A(x,x)",
        "x:O, y:O, f:A(x,y) |- comp(x,x,y,id(x),f) == f : A(x,y)",
        "x:O |- comp(x,x,x,id(x),id(x)) == id(x) : A(x,x)",
    ] {
        let goal = parse_judgment(line, &t).unwrap();
        let m = derive(&goal, &t, SearchBudget::default(), Ruleset::Modified);
        let c = derive(&goal, &t, SearchBudget::default(), Ruleset::Cartmell);
        assert!(m.is_derivable(), "modified failed on {line}");
        assert!(c.is_derivable(), "cartmell failed on {line}");
        if let DerivResult::Derivable { cert, .. } = &c {
            assert!(check_derivation(cert, &t), "cartmell cert invalid for {line}");
        }
    }
}

#[test]
fn morphism_checks() {
    let t = graph();
    let prover = Prover::new(&t, SearchBudget::default(), Ruleset::Modified);

    // identity tuple on (x:O, y:O)
    let two = parse_judgment("x:O, y:O |- ctx-ok", &t).unwrap();
    let Judgment::Ctx(two) = two else { unreachable!() };
    let id2 = identity_morphism(&two);
    let r = check_morphism(&id2, &two, &two, &prover).unwrap();
    assert!(r.all_derivable());

    // empty tuple into the empty context from anything
    let r = check_morphism(&[], &two, &Precontext::empty(), &prover).unwrap();
    assert!(r.all_derivable());

    // diagonal (x, x): (x:O) -> (a:O, b:O)
    let one = parse_judgment("x:O |- ctx-ok", &t).unwrap();
    let Judgment::Ctx(one) = one else { unreachable!() };
    let x = gat_core::syntax::Expr::Var(one.var(0).clone());
    let r = check_morphism(&[x.clone(), x.clone()], &one, &two, &prover).unwrap();
    assert!(r.all_derivable());

    // composition with identities
    let diag = vec![x.clone(), x];
    assert_eq!(compose(&id2, &diag, &two), diag);
    assert_eq!(compose(&diag, &identity_morphism(&one), &one), diag);
}

const WITH_SORT_EQS: &str = "\
theory seqy
sort B ( )
sort C ( )
sort D ( x:B )
sort E ( x:B )
term b ( ) : B
term c ( ) : C
eqsort ( ) : B == C
eqsort ( x:B ) : D(x) == E(x)
";

#[test]
fn sort_equality_axioms_drive_conversion() {
    let t = parse_theory(WITH_SORT_EQS).unwrap();
    for ruleset in [Ruleset::Modified, Ruleset::Cartmell] {
        // the theory itself holds together
        let prover = Prover::new(&t, SearchBudget::default(), ruleset);
        let report = is_theory(&t, &prover);
        assert!(report.is_theory(), "{ruleset:?}: {} unknown", report.unknown_count());

        for line in [
            // terms travel along the sort equality, in both orientations
            "|- b : C",
            "|- c : B",
            // instantiated sort-equality axiom plus symmetry
            "|- D(b) sort",
            "|- D(c) sort",
            "|- D(b) == E(b) sort",
            "|- E(b) == D(b) sort",
            "y:B |- D(y) == E(y) sort",
            // a term inhabits the other side of a parametrized equality
            "y:B, d:D(y) |- d : E(y)",
        ] {
            let goal = parse_judgment(line, &t).unwrap();
            let r = derive(&goal, &t, SearchBudget::default(), ruleset);
            assert!(r.is_derivable(), "{ruleset:?} failed on {line}");
            if let DerivResult::Derivable { cert, .. } = r {
                assert!(check_derivation(&cert, &t), "{ruleset:?} cert invalid for {line}");
            }
        }
    }
}

#[test]
fn sort_equality_exact_heights() {
    let t = parse_theory(WITH_SORT_EQS).unwrap();
    let b = SearchBudget { max_height: 24, universe: 12 };
    // ht(|- B == C sort) = 3: (seq-a) atop the two sort axioms (height 2)
    let goal = parse_judgment("|- B == C sort", &t).unwrap();
    assert_eq!(height_ub(&goal, &t, b), Some(3));
    // the reversed equality costs one more stratum through (s2)
    let goal = parse_judgment("|- C == B sort", &t).unwrap();
    assert_eq!(height_ub(&goal, &t, b), Some(4));
    // conversion: ht(|- b : C) = 5 via (seq/t) from ht(b : B) = 3 and the
    // equality at height 3... the larger premise plus one
    let direct = parse_judgment("|- b : B", &t).unwrap();
    let converted = parse_judgment("|- b : C", &t).unwrap();
    let hd = height_ub(&direct, &t, b).unwrap();
    let hc = height_ub(&converted, &t, b).unwrap();
    assert!(hc > hd, "conversion costs strata: {hc} vs {hd}");
}

#[test]
fn sort_equality_chains_through_two_axioms() {
    let text = "\
theory chainy
sort B ( )
sort C ( )
sort F ( )
term b ( ) : B
eqsort ( ) : B == C
eqsort ( ) : C == F
";
    let t = parse_theory(text).unwrap();
    for line in ["|- B == F sort", "|- F == B sort", "|- b : F"] {
        let goal = parse_judgment(line, &t).unwrap();
        let r = derive(&goal, &t, SearchBudget::default(), Ruleset::Modified);
        assert!(r.is_derivable(), "failed on {line}");
        if let DerivResult::Derivable { cert, .. } = r {
            assert!(check_derivation(&cert, &t));
        }
    }
}
