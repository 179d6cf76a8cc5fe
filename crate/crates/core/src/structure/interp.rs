use std::collections::HashMap;
use std::sync::Arc;

use crate::syntax::{substitute, Expr, Judgment, Precontext, Pretheory, Sym, SymKind, Var};
use crate::tensor::tensor_theory;

type VarMap = Arc<dyn Fn(&Var) -> Option<Var> + Send + Sync>;
type SymbolImages = HashMap<Sym, (Vec<Var>, Expr)>;

/// A preinterpretation with an explicit variable map: each symbol maps to
/// an expression over the parameter variables of its introduction axiom.
pub struct Interpretation {
    var_map: VarMap,
    symbols: SymbolImages,
}

impl Interpretation {
    pub fn new(var_map: VarMap, symbols: SymbolImages) -> Interpretation {
        Interpretation { var_map, symbols }
    }

    pub fn apply_expr(&self, e: &Expr) -> Result<Expr, String> {
        match e {
            Expr::Var(v) => (self.var_map)(v)
                .map(Expr::Var)
                .ok_or_else(|| "variable outside the interpretation's domain".to_string()),
            Expr::App(h, args) => {
                let (params, body) = self
                    .symbols
                    .get(h)
                    .ok_or_else(|| "symbol outside the interpretation's domain".to_string())?;
                if params.len() != args.len() {
                    return Err("arity mismatch in interpretation".into());
                }
                let images = args
                    .iter()
                    .map(|a| self.apply_expr(a))
                    .collect::<Result<Vec<_>, _>>()?;
                let bindings: Vec<(Expr, Var)> =
                    images.into_iter().zip(params.iter().cloned()).collect();
                Ok(substitute(body, &bindings))
            }
        }
    }
}

/// Total recursive rewrite of a judgment along the interpretation.
pub fn apply_interpretation(i: &Interpretation, j: &Judgment) -> Result<Judgment, String> {
    let ctx = Precontext::new(
        j.context()
            .entries()
            .iter()
            .map(|(v, s)| {
                Ok((
                    (i.var_map)(v).ok_or("variable outside the interpretation's domain")?,
                    i.apply_expr(s)?,
                ))
            })
            .collect::<Result<Vec<_>, String>>()?,
    )?;
    Ok(match j {
        Judgment::Ctx(_) => Judgment::Ctx(ctx),
        Judgment::Sort(_, u) => Judgment::Sort(ctx, i.apply_expr(u)?),
        Judgment::Term(_, u, s) => Judgment::Term(ctx, i.apply_expr(u)?, i.apply_expr(s)?),
        Judgment::SortEq(_, u, v) => Judgment::SortEq(ctx, i.apply_expr(u)?, i.apply_expr(v)?),
        Judgment::TermEq(_, u, v, s) => {
            Judgment::TermEq(ctx, i.apply_expr(u)?, i.apply_expr(v)?, i.apply_expr(s)?)
        }
    })
}

fn swap_var(v: &Var) -> Option<Var> {
    match v {
        Var::Pair(a, b) => Some(Var::pair((**b).clone(), (**a).clone())),
        Var::Atom(_) => None,
    }
}

/// The symbol-transposing preinterpretation of `A (x) B` in `B (x) A`: a
/// pair variable or symbol swaps its components and its argument matrix is
/// transposed, per the asymmetric lexicographic layout.
pub fn swap_interpretation(left: &Pretheory, right: &Pretheory) -> Interpretation {
    let ab = tensor_theory(left, right).expect("factors are theories");
    let mut symbols = HashMap::new();
    for sym in ab
        .alphabet()
        .sort_syms()
        .into_iter()
        .chain(ab.alphabet().term_syms())
    {
        let Sym::Pair(a, b) = &sym else { unreachable!("tensor alphabets hold pair symbols") };
        let swapped = Sym::pair((**b).clone(), (**a).clone());
        let params: Vec<Var> = match sym.kind() {
            SymKind::Sort => ab.sort_axiom(&sym).unwrap().0.vars(),
            SymKind::Term => ab.term_axiom(&sym).unwrap().0.vars(),
        };
        // grid shape: rows from the left factor, columns from the right;
        // sort-by-sort grids drop the final corner slot
        let m = arity_in(left, a);
        let n = arity_in(right, b);
        let (rows, cols, incomplete) = match (a.kind(), b.kind()) {
            (SymKind::Sort, SymKind::Sort) => (m + 1, n + 1, true),
            (SymKind::Sort, SymKind::Term) => (m + 1, n, false),
            (SymKind::Term, SymKind::Sort) => (m, n + 1, false),
            (SymKind::Term, SymKind::Term) => unreachable!(),
        };
        let mut grid = vec![vec![None; cols]; rows];
        let mut it = params.iter();
        for (i, row) in grid.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if incomplete && i == rows - 1 && j == cols - 1 {
                    continue;
                }
                *slot = Some(it.next().expect("arity matches grid").clone());
            }
        }
        // the body transposes argument positions; the variable map alone
        // swaps variable identities
        let mut body_args = Vec::new();
        for j in 0..cols {
            for (i, row) in grid.iter().enumerate() {
                if incomplete && i == rows - 1 && j == cols - 1 {
                    continue;
                }
                let v = row[j].as_ref().expect("grid slot filled");
                body_args.push(Expr::Var(v.clone()));
            }
        }
        symbols.insert(sym.clone(), (params, Expr::App(swapped, body_args)));
    }
    Interpretation::new(Arc::new(swap_var), symbols)
}

fn arity_in(theory: &Pretheory, sym: &Sym) -> usize {
    theory.arity(sym).expect("factor symbol has an introduction axiom")
}
