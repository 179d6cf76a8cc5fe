use super::alphabet::{Sym, Var};

/// An expression over a sort-and-term alphabet: a variable or a symbol
/// applied to a list of expressions. Expressions are immutable values with
/// structural equality and hashing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Var(Var),
    App(Sym, Vec<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Term,
    Sort,
    IllFormed,
}

impl Expr {
    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn app(head: Sym, args: Vec<Expr>) -> Expr {
        Expr::App(head, args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Expr::Var(_))
    }

    pub fn size(&self) -> usize {
        match self {
            Expr::Var(_) => 1,
            Expr::App(_, args) => 1 + args.iter().map(Expr::size).sum::<usize>(),
        }
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        match self {
            Expr::Var(w) => w == v,
            Expr::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// Variables occurring in the expression, in first-occurrence order.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::App(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    /// All subexpressions, including self.
    pub fn subexprs(&self) -> Vec<&Expr> {
        let mut out = vec![self];
        if let Expr::App(_, args) = self {
            for a in args {
                out.extend(a.subexprs());
            }
        }
        out
    }
}

/// Classify an expression: a term iff no sort symbol occurs anywhere; a
/// sort iff the head is a sort symbol and every argument is a term.
pub fn classify(e: &Expr) -> Class {
    fn is_term(e: &Expr) -> bool {
        match e {
            Expr::Var(_) => true,
            Expr::App(h, args) => !h.is_sort() && args.iter().all(is_term),
        }
    }
    match e {
        Expr::Var(_) => Class::Term,
        Expr::App(h, args) => {
            if h.is_sort() {
                if args.iter().all(is_term) {
                    Class::Sort
                } else {
                    Class::IllFormed
                }
            } else if args.iter().all(is_term) {
                Class::Term
            } else {
                Class::IllFormed
            }
        }
    }
}

/// Simultaneous substitution: replace every occurrence of each listed
/// variable by the paired expression. Expressions have no binders, so no
/// capture is possible; variables without a binding stay untouched.
pub fn substitute(e: &Expr, bindings: &[(Expr, Var)]) -> Expr {
    match e {
        Expr::Var(v) => bindings
            .iter()
            .find(|(_, x)| x == v)
            .map(|(u, _)| u.clone())
            .unwrap_or_else(|| e.clone()),
        Expr::App(h, args) => Expr::App(
            h.clone(),
            args.iter().map(|a| substitute(a, bindings)).collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Expr {
        Expr::Var(Var::Atom(i))
    }

    #[test]
    fn swap_is_simultaneous() {
        // substitute(x, [(y,x),(x,y)]) -> y and substitute(y, same) -> x
        let x = Var::Atom(0);
        let y = Var::Atom(1);
        let bindings = vec![(v(1), x.clone()), (v(0), y.clone())];
        assert_eq!(substitute(&v(0), &bindings), v(1));
        assert_eq!(substitute(&v(1), &bindings), v(0));
    }

    #[test]
    fn single_replacement() {
        // substitute(A(x,y), [(f, x)]) -> A(f,y)
        let a = Sym::sort(0);
        let e = Expr::app(a.clone(), vec![v(0), v(1)]);
        let f = v(5);
        let out = substitute(&e, &[(f.clone(), Var::Atom(0))]);
        assert_eq!(out, Expr::app(a, vec![f, v(1)]));
    }

    #[test]
    fn identity_bindings() {
        let a = Sym::sort(0);
        let e = Expr::app(a, vec![v(0), v(2)]);
        let b: Vec<(Expr, Var)> = (0..5).map(|i| (v(i), Var::Atom(i))).collect();
        assert_eq!(substitute(&e, &b), e);
    }

    #[test]
    fn classify_cases() {
        let a = Sym::sort(0);
        let b = Sym::sort(1);
        let id = Sym::term(0);
        assert_eq!(classify(&v(0)), Class::Term);
        // A(x, id(y)) with A sort, id term -> sort
        let e = Expr::app(a.clone(), vec![v(0), Expr::app(id, vec![v(1)])]);
        assert_eq!(classify(&e), Class::Sort);
        // A(B(x)) nested sort symbol -> ill-formed
        let e = Expr::app(a, vec![Expr::app(b, vec![v(0)])]);
        assert_eq!(classify(&e), Class::IllFormed);
    }
}
