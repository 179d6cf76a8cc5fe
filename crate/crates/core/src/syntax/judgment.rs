use super::alphabet::Var;
use super::expr::Expr;

/// A scoped list of (variable, sort expression) entries. Entry i's sort may
/// only mention variables among entries 0..i-1, and variables are pairwise
/// distinct; `Precontext::new` enforces both.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Precontext {
    entries: Vec<(Var, Expr)>,
}

impl Precontext {
    pub fn empty() -> Precontext {
        Precontext { entries: Vec::new() }
    }

    pub fn new(entries: Vec<(Var, Expr)>) -> Result<Precontext, String> {
        let ctx = Precontext { entries };
        ctx.check()?;
        Ok(ctx)
    }

    fn check(&self) -> Result<(), String> {
        for (i, (x, sort)) in self.entries.iter().enumerate() {
            if self.entries[..i].iter().any(|(y, _)| y == x) {
                return Err(format!("duplicate context variable at entry {i}"));
            }
            for v in sort.vars() {
                if !self.entries[..i].iter().any(|(y, _)| *y == v) {
                    return Err(format!("entry {i} mentions a variable not bound earlier"));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Var, Expr)] {
        &self.entries
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.entries[i].0
    }

    pub fn sort(&self, i: usize) -> &Expr {
        &self.entries[i].1
    }

    pub fn vars(&self) -> Vec<Var> {
        self.entries.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn lookup(&self, v: &Var) -> Option<&Expr> {
        self.entries.iter().find(|(x, _)| x == v).map(|(_, s)| s)
    }

    /// First i entries.
    pub fn truncate(&self, i: usize) -> Result<Precontext, String> {
        if i > self.entries.len() {
            return Err(format!("truncation index {i} out of range"));
        }
        Ok(Precontext { entries: self.entries[..i].to_vec() })
    }

    /// Drop the last entry; identity on the empty precontext.
    pub fn parent(&self) -> Precontext {
        if self.entries.is_empty() {
            self.clone()
        } else {
            Precontext { entries: self.entries[..self.entries.len() - 1].to_vec() }
        }
    }

    /// Extend by one entry, revalidating scope.
    pub fn extended(&self, v: Var, sort: Expr) -> Result<Precontext, String> {
        let mut entries = self.entries.clone();
        entries.push((v, sort));
        Precontext::new(entries)
    }
}

/// The five primitive judgment forms. Derived forms (partial terms, context
/// equality, morphisms, morphism equality) are handled by the kernel on top
/// of these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Judgment {
    /// X ctx
    Ctx(Precontext),
    /// X |- U sort
    Sort(Precontext, Expr),
    /// X |- u : U
    Term(Precontext, Expr, Expr),
    /// X |- U == V sort
    SortEq(Precontext, Expr, Expr),
    /// X |- u == v : U
    TermEq(Precontext, Expr, Expr, Expr),
}

impl Judgment {
    pub fn context(&self) -> &Precontext {
        match self {
            Judgment::Ctx(x)
            | Judgment::Sort(x, _)
            | Judgment::Term(x, _, _)
            | Judgment::SortEq(x, _, _)
            | Judgment::TermEq(x, _, _, _) => x,
        }
    }

    pub fn is_standard(&self) -> bool {
        !matches!(self, Judgment::Ctx(_))
    }

    /// Expressions carried besides the context, in display order.
    pub fn parts(&self) -> Vec<&Expr> {
        match self {
            Judgment::Ctx(_) => vec![],
            Judgment::Sort(_, u) => vec![u],
            Judgment::Term(_, u, s) => vec![u, s],
            Judgment::SortEq(_, u, v) => vec![u, v],
            Judgment::TermEq(_, u, v, s) => vec![u, v, s],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alphabet::Sym;

    fn o() -> Expr {
        Expr::App(Sym::sort(0), vec![])
    }

    #[test]
    fn scoping_enforced() {
        let x = Var::Atom(0);
        let y = Var::Atom(1);
        let a = Sym::sort(1);
        // (x:O, y:A(x)) fine; (y:A(x), x:O) out of scope
        assert!(Precontext::new(vec![
            (x.clone(), o()),
            (y.clone(), Expr::App(a.clone(), vec![Expr::Var(x.clone())]))
        ])
        .is_ok());
        assert!(Precontext::new(vec![
            (y.clone(), Expr::App(a, vec![Expr::Var(x.clone())])),
            (x.clone(), o())
        ])
        .is_err());
        assert!(Precontext::new(vec![(x.clone(), o()), (x, o())]).is_err());
    }

    #[test]
    fn truncate_basics() {
        let x = Var::Atom(0);
        let y = Var::Atom(1);
        let ctx = Precontext::new(vec![(x, o()), (y, o())]).unwrap();
        assert_eq!(ctx.truncate(0).unwrap(), Precontext::empty());
        assert_eq!(ctx.truncate(2).unwrap(), ctx);
        assert!(ctx.truncate(3).is_err());
        assert_eq!(ctx.parent().len(), 1);
    }
}
