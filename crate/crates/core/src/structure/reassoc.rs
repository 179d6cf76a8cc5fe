use crate::syntax::{Expr, Judgment, Precontext, Sym, Var};

/// Rebracket `((a,b),c)`-shaped symbols and variables to `(a,(b,c))`,
/// identifying the two triple alphabets; argument order is untouched.
pub fn reassociate_expr(e: &Expr) -> Result<Expr, String> {
    map_expr(e, &reassoc_var, &reassoc_sym)
}

/// The inverse identification.
pub fn unreassociate_expr(e: &Expr) -> Result<Expr, String> {
    map_expr(e, &unreassoc_var, &unreassoc_sym)
}

pub fn reassociate_judgment(j: &Judgment) -> Result<Judgment, String> {
    map_judgment(j, &reassoc_var, &reassoc_sym)
}

pub fn unreassociate_judgment(j: &Judgment) -> Result<Judgment, String> {
    map_judgment(j, &unreassoc_var, &unreassoc_sym)
}

fn reassoc_var(v: &Var) -> Result<Var, String> {
    match v {
        Var::Pair(ab, c) => match &**ab {
            Var::Pair(a, b) => Ok(Var::pair(
                (**a).clone(),
                Var::pair((**b).clone(), (**c).clone()),
            )),
            Var::Atom(_) => Err("variable is not left-nested".into()),
        },
        Var::Atom(_) => Err("variable is not a triple".into()),
    }
}

fn unreassoc_var(v: &Var) -> Result<Var, String> {
    match v {
        Var::Pair(a, bc) => match &**bc {
            Var::Pair(b, c) => Ok(Var::pair(
                Var::pair((**a).clone(), (**b).clone()),
                (**c).clone(),
            )),
            Var::Atom(_) => Err("variable is not right-nested".into()),
        },
        Var::Atom(_) => Err("variable is not a triple".into()),
    }
}

fn reassoc_sym(s: &Sym) -> Result<Sym, String> {
    match s {
        Sym::Pair(ab, c) => match &**ab {
            Sym::Pair(a, b) => Ok(Sym::pair(
                (**a).clone(),
                Sym::pair((**b).clone(), (**c).clone()),
            )),
            Sym::Atom { .. } => Err("symbol is not left-nested".into()),
        },
        Sym::Atom { .. } => Err("symbol is not a triple".into()),
    }
}

fn unreassoc_sym(s: &Sym) -> Result<Sym, String> {
    match s {
        Sym::Pair(a, bc) => match &**bc {
            Sym::Pair(b, c) => Ok(Sym::pair(
                Sym::pair((**a).clone(), (**b).clone()),
                (**c).clone(),
            )),
            Sym::Atom { .. } => Err("symbol is not right-nested".into()),
        },
        Sym::Atom { .. } => Err("symbol is not a triple".into()),
    }
}

fn map_expr(
    e: &Expr,
    vf: &dyn Fn(&Var) -> Result<Var, String>,
    sf: &dyn Fn(&Sym) -> Result<Sym, String>,
) -> Result<Expr, String> {
    match e {
        Expr::Var(v) => Ok(Expr::Var(vf(v)?)),
        Expr::App(h, args) => Ok(Expr::App(
            sf(h)?,
            args.iter().map(|a| map_expr(a, vf, sf)).collect::<Result<_, _>>()?,
        )),
    }
}

fn map_judgment(
    j: &Judgment,
    vf: &dyn Fn(&Var) -> Result<Var, String>,
    sf: &dyn Fn(&Sym) -> Result<Sym, String>,
) -> Result<Judgment, String> {
    let ctx = Precontext::new(
        j.context()
            .entries()
            .iter()
            .map(|(v, s)| Ok((vf(v)?, map_expr(s, vf, sf)?)))
            .collect::<Result<Vec<_>, String>>()?,
    )?;
    Ok(match j {
        Judgment::Ctx(_) => Judgment::Ctx(ctx),
        Judgment::Sort(_, u) => Judgment::Sort(ctx, map_expr(u, vf, sf)?),
        Judgment::Term(_, u, s) => Judgment::Term(ctx, map_expr(u, vf, sf)?, map_expr(s, vf, sf)?),
        Judgment::SortEq(_, u, v) => {
            Judgment::SortEq(ctx, map_expr(u, vf, sf)?, map_expr(v, vf, sf)?)
        }
        Judgment::TermEq(_, u, v, s) => Judgment::TermEq(
            ctx,
            map_expr(u, vf, sf)?,
            map_expr(v, vf, sf)?,
            map_expr(s, vf, sf)?,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_on_variables() {
        let triple = Var::pair(Var::pair(Var::Atom(0), Var::Atom(1)), Var::Atom(2));
        let e = Expr::Var(triple.clone());
        let there = reassociate_expr(&e).unwrap();
        assert_eq!(unreassociate_expr(&there).unwrap(), e);
    }

    #[test]
    fn involution_on_symbols() {
        let s = Sym::pair(Sym::pair(Sym::sort(0), Sym::sort(1)), Sym::term(0));
        let e = Expr::App(s, vec![]);
        let there = reassociate_expr(&e).unwrap();
        assert_eq!(unreassociate_expr(&there).unwrap(), e);
    }

    #[test]
    fn atoms_rejected() {
        assert!(reassociate_expr(&Expr::Var(Var::Atom(0))).is_err());
    }
}
