//! Property tests for the structural layer: simultaneous substitution,
//! classification, and the textual round trip.

use proptest::prelude::*;

use gat_core::corpus::{builtin, BuiltinId};
use gat_core::syntax::{
    classify, parse_judgment, print_judgment, substitute, Class, Expr, Judgment, Sym, Var,
};

fn arb_term(depth: u32) -> impl Strategy<Value = Expr> {
    let leaf = (0u32..6).prop_map(|i| Expr::Var(Var::Atom(i)));
    leaf.prop_recursive(depth, 24, 3, |inner| {
        (0u32..3, proptest::collection::vec(inner, 0..3))
            .prop_map(|(id, args)| Expr::App(Sym::term(id), args))
    })
}

proptest! {
    #[test]
    fn substitution_is_homomorphic(e in arb_term(3), u in arb_term(2)) {
        let b = vec![(u, Var::Atom(0))];
        if let Expr::App(h, args) = &e {
            let whole = substitute(&e, &b);
            let parts = Expr::App(
                h.clone(),
                args.iter().map(|a| substitute(a, &b)).collect(),
            );
            prop_assert_eq!(whole, parts);
        }
    }

    #[test]
    fn substitution_is_simultaneous(e in arb_term(3), u in arb_term(2), v in arb_term(2)) {
        let x = Var::Atom(0);
        let y = Var::Atom(1);
        // when y does not occur in u, simultaneous equals sequential
        prop_assume!(!u.contains_var(&y));
        let simultaneous = substitute(&e, &[(u.clone(), x.clone()), (v.clone(), y.clone())]);
        let sequential = substitute(&substitute(&e, &[(u, x)]), &[(v, y)]);
        prop_assert_eq!(simultaneous, sequential);
    }

    #[test]
    fn terms_stay_terms_under_substitution(e in arb_term(3), u in arb_term(2)) {
        prop_assume!(classify(&e) == Class::Term);
        prop_assume!(classify(&u) == Class::Term);
        let out = substitute(&e, &[(u, Var::Atom(0))]);
        prop_assert_eq!(classify(&out), Class::Term);
    }
}

#[test]
fn judgment_print_parse_round_trip() {
    // printing is a normal form: parse o print is the identity on the
    // corpus theories' axioms, in every judgment form
    for id in [BuiltinId::Graph, BuiltinId::Cat, BuiltinId::MonoidLawvere] {
        let t = builtin(id);
        for ax in t.axioms() {
            let line = print_judgment(ax, t.alphabet());
            let back = parse_judgment(&line, &t).unwrap();
            assert_eq!(&back, ax, "{line}");
        }
        for ax in t.axioms() {
            let ctx = Judgment::Ctx(ax.context().clone());
            let line = print_judgment(&ctx, t.alphabet());
            assert_eq!(parse_judgment(&line, &t).unwrap(), ctx);
        }
    }
}
