use super::alphabet::Var;
use super::expr::Expr;
use super::judgment::{Judgment, Precontext};

/// Judgment equality up to a kind-preserving bijection of variables that is
/// consistent with context entry order: the i-th context variable of `a`
/// must correspond to the i-th of `b`. Variables outside the contexts must
/// agree on the nose.
pub fn alpha_equal(a: &Judgment, b: &Judgment) -> bool {
    let (xa, xb) = (a.context(), b.context());
    if xa.len() != xb.len() {
        return false;
    }
    if std::mem::discriminant(a) != std::mem::discriminant(b) {
        return false;
    }
    let map: Vec<(Var, Var)> = xa
        .vars()
        .into_iter()
        .zip(xb.vars())
        .collect();
    if !ctx_alpha(xa, xb, &map) {
        return false;
    }
    let pa = a.parts();
    let pb = b.parts();
    pa.len() == pb.len() && pa.iter().zip(pb).all(|(ea, eb)| exprs_match(ea, eb, &map))
}

/// Expression equality under an explicit variable correspondence; variables
/// absent from the correspondence must be equal.
pub fn alpha_equal_exprs(a: &Expr, b: &Expr, map: &[(Var, Var)]) -> bool {
    exprs_match(a, b, map)
}

fn ctx_alpha(xa: &Precontext, xb: &Precontext, map: &[(Var, Var)]) -> bool {
    xa.entries()
        .iter()
        .zip(xb.entries())
        .all(|((_, sa), (_, sb))| exprs_match(sa, sb, map))
}

fn exprs_match(a: &Expr, b: &Expr, map: &[(Var, Var)]) -> bool {
    match (a, b) {
        (Expr::Var(va), Expr::Var(vb)) => match map.iter().find(|(x, _)| x == va) {
            Some((_, y)) => y == vb,
            None => va == vb,
        },
        (Expr::App(ha, aa), Expr::App(hb, ab)) => {
            ha == hb && aa.len() == ab.len() && aa.iter().zip(ab).all(|(x, y)| exprs_match(x, y, map))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alphabet::Sym;

    fn o() -> Expr {
        Expr::App(Sym::sort(0), vec![])
    }

    fn v(i: u32) -> Expr {
        Expr::Var(Var::Atom(i))
    }

    #[test]
    fn renaming_is_alpha_equal() {
        // (x:O |- O sort) vs (a:O |- O sort)
        let ja = Judgment::Sort(Precontext::new(vec![(Var::Atom(0), o())]).unwrap(), o());
        let jb = Judgment::Sort(Precontext::new(vec![(Var::Atom(7), o())]).unwrap(), o());
        assert!(alpha_equal(&ja, &jb));
    }

    #[test]
    fn argument_swap_is_not() {
        let a = Sym::sort(1);
        let ctx = Precontext::new(vec![(Var::Atom(0), o()), (Var::Atom(1), o())]).unwrap();
        let ja = Judgment::Sort(ctx.clone(), Expr::App(a.clone(), vec![v(0), v(1)]));
        let jb = Judgment::Sort(ctx, Expr::App(a, vec![v(1), v(0)]));
        assert!(!alpha_equal(&ja, &jb));
    }
}
