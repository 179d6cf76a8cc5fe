use std::fmt;
use std::sync::Arc;

/// A variable: either an interned index into an atomic alphabet's
/// enumeration, or an ordered pair of factor variables (tensor alphabets).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Atom(u32),
    Pair(Arc<Var>, Arc<Var>),
}

impl Var {
    pub fn pair(left: Var, right: Var) -> Var {
        Var::Pair(Arc::new(left), Arc::new(right))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymKind {
    Sort,
    Term,
}

/// A sort or term symbol. Pair symbols combine per the tensor alphabet:
/// (sort,sort) is a sort, (sort,term) and (term,sort) are terms. A
/// (term,term) pair does not exist and `Sym::pair` rejects it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Atom { kind: SymKind, id: u32 },
    Pair(Arc<Sym>, Arc<Sym>),
}

impl Sym {
    pub fn sort(id: u32) -> Sym {
        Sym::Atom { kind: SymKind::Sort, id }
    }

    pub fn term(id: u32) -> Sym {
        Sym::Atom { kind: SymKind::Term, id }
    }

    pub fn pair(left: Sym, right: Sym) -> Sym {
        assert!(
            !(left.kind() == SymKind::Term && right.kind() == SymKind::Term),
            "term*term pair symbols do not exist in a tensor alphabet"
        );
        Sym::Pair(Arc::new(left), Arc::new(right))
    }

    pub fn kind(&self) -> SymKind {
        match self {
            Sym::Atom { kind, .. } => *kind,
            Sym::Pair(l, r) => match (l.kind(), r.kind()) {
                (SymKind::Sort, SymKind::Sort) => SymKind::Sort,
                _ => SymKind::Term,
            },
        }
    }

    pub fn is_sort(&self) -> bool {
        self.kind() == SymKind::Sort
    }
}

/// Cantor pairing, used to enumerate pair variables deterministically.
fn cantor(i: u64, j: u64) -> u64 {
    (i + j) * (i + j + 1) / 2 + j
}

fn cantor_inv(k: u64) -> (u64, u64) {
    let mut w = 0u64;
    while cantor(w + 1, 0) <= k {
        w += 1;
    }
    let j = k - cantor(w, 0);
    (w - j, j)
}

/// A sort-and-term alphabet. Atomic alphabets intern their symbol and
/// variable names; tensor alphabets are pairs of factors and derive
/// everything from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alphabet {
    Atomic {
        var_names: Vec<String>,
        sorts: Vec<String>,
        terms: Vec<String>,
    },
    Tensor {
        left: Arc<Alphabet>,
        right: Arc<Alphabet>,
    },
}

impl Alphabet {
    pub fn new_atomic() -> Alphabet {
        Alphabet::Atomic { var_names: Vec::new(), sorts: Vec::new(), terms: Vec::new() }
    }

    pub fn tensor(left: Arc<Alphabet>, right: Arc<Alphabet>) -> Alphabet {
        Alphabet::Tensor { left, right }
    }

    /// The i-th variable in the alphabet's fixed enumeration. Atomic
    /// alphabets enumerate by index; tensor alphabets enumerate pairs in
    /// Cantor order so that the enumeration stays total.
    pub fn var_at(&self, i: u32) -> Var {
        match self {
            Alphabet::Atomic { .. } => Var::Atom(i),
            Alphabet::Tensor { left, right } => {
                let (a, b) = cantor_inv(i as u64);
                Var::pair(left.var_at(a as u32), right.var_at(b as u32))
            }
        }
    }

    /// Lowest-index variable of the enumeration not occurring in `used`.
    pub fn fresh_var(&self, used: &[Var]) -> Var {
        for i in 0.. {
            let v = self.var_at(i);
            if !used.contains(&v) {
                return v;
            }
        }
        unreachable!()
    }

    pub fn owns_var(&self, v: &Var) -> bool {
        match (self, v) {
            (Alphabet::Atomic { .. }, Var::Atom(_)) => true,
            (Alphabet::Tensor { left, right }, Var::Pair(a, b)) => {
                left.owns_var(a) && right.owns_var(b)
            }
            _ => false,
        }
    }

    pub fn owns_sym(&self, s: &Sym) -> bool {
        match (self, s) {
            (Alphabet::Atomic { sorts, terms, .. }, Sym::Atom { kind, id }) => match kind {
                SymKind::Sort => (*id as usize) < sorts.len(),
                SymKind::Term => (*id as usize) < terms.len(),
            },
            (Alphabet::Tensor { left, right }, Sym::Pair(a, b)) => {
                !(a.kind() == SymKind::Term && b.kind() == SymKind::Term)
                    && left.owns_sym(a)
                    && right.owns_sym(b)
            }
            _ => false,
        }
    }

    pub fn sort_syms(&self) -> Vec<Sym> {
        match self {
            Alphabet::Atomic { sorts, .. } => (0..sorts.len() as u32).map(Sym::sort).collect(),
            Alphabet::Tensor { left, right } => {
                let mut out = Vec::new();
                for l in left.sort_syms() {
                    for r in right.sort_syms() {
                        out.push(Sym::pair(l.clone(), r));
                    }
                }
                out
            }
        }
    }

    pub fn term_syms(&self) -> Vec<Sym> {
        match self {
            Alphabet::Atomic { terms, .. } => (0..terms.len() as u32).map(Sym::term).collect(),
            Alphabet::Tensor { left, right } => {
                // sort x term first, then term x sort, each lexicographic
                let mut out = Vec::new();
                for l in left.sort_syms() {
                    for r in right.term_syms() {
                        out.push(Sym::pair(l.clone(), r));
                    }
                }
                for l in left.term_syms() {
                    for r in right.sort_syms() {
                        out.push(Sym::pair(l.clone(), r));
                    }
                }
                out
            }
        }
    }

    pub fn var_name(&self, v: &Var) -> String {
        match (self, v) {
            (Alphabet::Atomic { var_names, .. }, Var::Atom(i)) => var_names
                .get(*i as usize)
                .cloned()
                .unwrap_or_else(|| format!("v{i}")),
            (Alphabet::Tensor { left, right }, Var::Pair(a, b)) => {
                format!("{}.{}", left.var_name(a), right.var_name(b))
            }
            _ => format!("{v:?}"),
        }
    }

    pub fn sym_name(&self, s: &Sym) -> String {
        match (self, s) {
            (Alphabet::Atomic { sorts, terms, .. }, Sym::Atom { kind, id }) => {
                let table = if *kind == SymKind::Sort { sorts } else { terms };
                table
                    .get(*id as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("{kind:?}{id}"))
            }
            (Alphabet::Tensor { left, right }, Sym::Pair(a, b)) => {
                format!("{}*{}", left.sym_name(a), right.sym_name(b))
            }
            _ => format!("{s:?}"),
        }
    }

    /// Find a symbol by its printed name (atomic alphabets only).
    pub fn lookup_sym(&self, name: &str) -> Option<Sym> {
        match self {
            Alphabet::Atomic { sorts, terms, .. } => {
                if let Some(i) = sorts.iter().position(|s| s == name) {
                    return Some(Sym::sort(i as u32));
                }
                terms.iter().position(|s| s == name).map(|i| Sym::term(i as u32))
            }
            Alphabet::Tensor { .. } => None,
        }
    }

    /// Resolve a printed symbol name against this alphabet's structure;
    /// star-joined names split against the factors of a tensor alphabet.
    pub fn resolve_sym(&self, name: &str) -> Option<Sym> {
        match self {
            Alphabet::Atomic { .. } => self.lookup_sym(name),
            Alphabet::Tensor { left, right } => {
                for (i, _) in name.match_indices('*') {
                    let (l, r) = (&name[..i], &name[i + 1..]);
                    if let (Some(a), Some(b)) = (left.resolve_sym(l), right.resolve_sym(r)) {
                        if !(a.kind() == SymKind::Term && b.kind() == SymKind::Term) {
                            return Some(Sym::pair(a, b));
                        }
                    }
                }
                None
            }
        }
    }

    /// Intern a variable name in an atomic alphabet.
    pub fn intern_var(&mut self, name: &str) -> Var {
        match self {
            Alphabet::Atomic { var_names, .. } => {
                if let Some(i) = var_names.iter().position(|s| s == name) {
                    Var::Atom(i as u32)
                } else {
                    var_names.push(name.to_string());
                    Var::Atom(var_names.len() as u32 - 1)
                }
            }
            Alphabet::Tensor { .. } => panic!("cannot intern variables in a tensor alphabet"),
        }
    }

    pub fn add_sort(&mut self, name: &str) -> Option<Sym> {
        match self {
            Alphabet::Atomic { sorts, terms, .. } => {
                if sorts.iter().any(|s| s == name) || terms.iter().any(|s| s == name) {
                    return None;
                }
                sorts.push(name.to_string());
                Some(Sym::sort(sorts.len() as u32 - 1))
            }
            Alphabet::Tensor { .. } => None,
        }
    }

    pub fn add_term(&mut self, name: &str) -> Option<Sym> {
        match self {
            Alphabet::Atomic { sorts, terms, .. } => {
                if sorts.iter().any(|s| s == name) || terms.iter().any(|s| s == name) {
                    return None;
                }
                terms.push(name.to_string());
                Some(Sym::term(terms.len() as u32 - 1))
            }
            Alphabet::Tensor { .. } => None,
        }
    }
}

impl fmt::Display for SymKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymKind::Sort => write!(f, "sort"),
            SymKind::Term => write!(f, "term"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_roundtrip() {
        for k in 0..200 {
            let (i, j) = cantor_inv(k);
            assert_eq!(cantor(i, j), k);
        }
    }

    #[test]
    fn pair_kind_rules() {
        let s = Sym::sort(0);
        let t = Sym::term(0);
        assert_eq!(Sym::pair(s.clone(), s.clone()).kind(), SymKind::Sort);
        assert_eq!(Sym::pair(s.clone(), t.clone()).kind(), SymKind::Term);
        assert_eq!(Sym::pair(t.clone(), s.clone()).kind(), SymKind::Term);
    }

    #[test]
    #[should_panic]
    fn term_term_pair_rejected() {
        let _ = Sym::pair(Sym::term(0), Sym::term(1));
    }

    #[test]
    fn tensor_enumeration_is_exhaustive() {
        let a = Arc::new(Alphabet::new_atomic());
        let t = Alphabet::tensor(a.clone(), a);
        let mut seen = std::collections::HashSet::new();
        for i in 0..100 {
            assert!(seen.insert(t.var_at(i)));
        }
    }
}
