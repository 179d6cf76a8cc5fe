use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use super::alphabet::{Alphabet, Sym, Var};
use super::expr::{classify, Class, Expr};
use super::judgment::{Judgment, Precontext};
use super::theory::{Pretheory, TheoryError};

#[derive(Debug, Error)]
pub enum SyntaxError {
    #[error("{line}:{col}: {msg}")]
    At { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

impl SyntaxError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> SyntaxError {
        SyntaxError::At { line, col, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Colon,
    EqEq,
    Turnstile,
}

struct Line {
    no: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '*' | '.' | '-')
}

fn lex_line(no: usize, text: &str) -> Result<Line, SyntaxError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, col));
                i += 1;
            }
            ':' => {
                toks.push((Tok::Colon, col));
                i += 1;
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    toks.push((Tok::EqEq, col));
                    i += 2;
                } else {
                    return Err(SyntaxError::new(no, col, "expected `==`"));
                }
            }
            '|' => {
                if chars.get(i + 1) == Some(&'-') {
                    toks.push((Tok::Turnstile, col));
                    i += 2;
                } else {
                    return Err(SyntaxError::new(no, col, "expected `|-`"));
                }
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => return Err(SyntaxError::new(no, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(Line { no, toks, pos: 0 })
}

impl Line {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, c)| *c)
            .unwrap_or(1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), SyntaxError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(SyntaxError::new(self.no, self.col(), format!("expected {what}"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, SyntaxError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(SyntaxError::new(self.no, self.col(), format!("expected {what}"))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn err(&self, msg: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.no, self.col(), msg)
    }
}

/// Symbol environment while parsing: names, kinds, and arities seen so far.
struct Env {
    alphabet: Alphabet,
    arity: HashMap<Sym, usize>,
    vars: HashMap<String, Var>,
}

impl Env {
    fn resolve_var(&mut self, name: &str, line: &Line) -> Result<Var, SyntaxError> {
        if let Some(v) = self.vars.get(name) {
            return Ok(v.clone());
        }
        match &self.alphabet {
            Alphabet::Atomic { .. } => {
                let v = self.alphabet.intern_var(name);
                self.vars.insert(name.to_string(), v.clone());
                Ok(v)
            }
            Alphabet::Tensor { .. } => {
                resolve_tensor_var(&self.alphabet, name)
                    .ok_or_else(|| line.err(format!("unknown variable `{name}`")))
            }
        }
    }
}

fn resolve_tensor_var(alphabet: &Alphabet, name: &str) -> Option<Var> {
    match alphabet {
        Alphabet::Atomic { var_names, .. } => var_names
            .iter()
            .position(|n| n == name)
            .map(|i| Var::Atom(i as u32)),
        Alphabet::Tensor { left, right } => {
            // try every dot split; factor structure disambiguates
            for (i, _) in name.match_indices('.') {
                let (l, r) = (&name[..i], &name[i + 1..]);
                if let (Some(a), Some(b)) =
                    (resolve_tensor_var(left, l), resolve_tensor_var(right, r))
                {
                    return Some(Var::pair(a, b));
                }
            }
            None
        }
    }
}

fn parse_expr(line: &mut Line, env: &mut Env) -> Result<Expr, SyntaxError> {
    let name = line.ident("an expression")?;
    if line.peek() == Some(&Tok::LParen) {
        let sym = env
            .alphabet
            .resolve_sym(&name)
            .ok_or_else(|| line.err(format!("unknown symbol `{name}`")))?;
        line.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if line.peek() != Some(&Tok::RParen) {
            loop {
                args.push(parse_expr(line, env)?);
                if line.peek() == Some(&Tok::Comma) {
                    line.next();
                } else {
                    break;
                }
            }
        }
        line.expect(Tok::RParen, "`)`")?;
        let want = env.arity[&sym];
        if args.len() != want {
            return Err(line.err(format!(
                "arity mismatch: `{name}` takes {want} argument(s), got {}",
                args.len()
            )));
        }
        Ok(Expr::App(sym, args))
    } else {
        // bare identifier: nullary symbol if declared, else a variable
        if let Some(sym) = env.alphabet.resolve_sym(&name) {
            let want = env.arity[&sym];
            if want != 0 {
                return Err(line.err(format!("arity mismatch: `{name}` takes {want} argument(s), got 0")));
            }
            return Ok(Expr::App(sym, vec![]));
        }
        Ok(Expr::Var(env.resolve_var(&name, line)?))
    }
}

fn parse_ctx(line: &mut Line, env: &mut Env) -> Result<Precontext, SyntaxError> {
    line.expect(Tok::LParen, "`(`")?;
    let mut entries = Vec::new();
    if line.peek() != Some(&Tok::RParen) {
        loop {
            let name = line.ident("a variable")?;
            if env.alphabet.resolve_sym(&name).is_some() {
                return Err(line.err(format!("`{name}` is a symbol, not a variable")));
            }
            let v = env.resolve_var(&name, line)?;
            line.expect(Tok::Colon, "`:`")?;
            let sort = parse_expr(line, env)?;
            if classify(&sort) != Class::Sort {
                return Err(line.err("context entry is not a sort expression"));
            }
            entries.push((v, sort));
            if line.peek() == Some(&Tok::Comma) {
                line.next();
            } else {
                break;
            }
        }
    }
    line.expect(Tok::RParen, "`)`")?;
    Precontext::new(entries).map_err(|m| line.err(format!("scope violation: {m}")))
}

/// Parse the theory file format.
pub fn parse_theory(text: &str) -> Result<Pretheory, SyntaxError> {
    let mut env = Env {
        alphabet: Alphabet::new_atomic(),
        arity: HashMap::new(),
        vars: HashMap::new(),
    };
    let mut name = String::from("unnamed");
    let mut axioms = Vec::new();

    for (no, raw) in text.lines().enumerate() {
        let mut line = lex_line(no + 1, raw)?;
        if line.at_end() {
            continue;
        }
        let kw = line.ident("a declaration")?;
        match kw.as_str() {
            "theory" => {
                name = line.ident("a theory name")?;
            }
            "sort" => {
                let sname = line.ident("a sort name")?;
                let ctx = parse_ctx(&mut line, &mut env)?;
                let sym = env
                    .alphabet
                    .add_sort(&sname)
                    .ok_or_else(|| line.err(format!("duplicate symbol `{sname}`")))?;
                env.arity.insert(sym.clone(), ctx.len());
                let head = Expr::App(sym, ctx.vars().into_iter().map(Expr::Var).collect());
                axioms.push(Judgment::Sort(ctx, head));
            }
            "term" => {
                let tname = line.ident("a term name")?;
                let ctx = parse_ctx(&mut line, &mut env)?;
                line.expect(Tok::Colon, "`:`")?;
                let sort = parse_expr(&mut line, &mut env)?;
                if classify(&sort) != Class::Sort {
                    return Err(line.err("target of a term axiom must be a sort expression"));
                }
                let sym = env
                    .alphabet
                    .add_term(&tname)
                    .ok_or_else(|| line.err(format!("duplicate symbol `{tname}`")))?;
                env.arity.insert(sym.clone(), ctx.len());
                let head = Expr::App(sym, ctx.vars().into_iter().map(Expr::Var).collect());
                axioms.push(Judgment::Term(ctx, head, sort));
            }
            "eqsort" => {
                let ctx = parse_ctx(&mut line, &mut env)?;
                line.expect(Tok::Colon, "`:`")?;
                let u = parse_expr(&mut line, &mut env)?;
                line.expect(Tok::EqEq, "`==`")?;
                let v = parse_expr(&mut line, &mut env)?;
                if classify(&u) != Class::Sort || classify(&v) != Class::Sort {
                    return Err(line.err("eqsort sides must be sort expressions"));
                }
                axioms.push(Judgment::SortEq(ctx, u, v));
            }
            "eqterm" => {
                let ctx = parse_ctx(&mut line, &mut env)?;
                line.expect(Tok::Colon, "`:`")?;
                let u = parse_expr(&mut line, &mut env)?;
                line.expect(Tok::EqEq, "`==`")?;
                let v = parse_expr(&mut line, &mut env)?;
                line.expect(Tok::Colon, "`:`")?;
                let sort = parse_expr(&mut line, &mut env)?;
                if classify(&u) != Class::Term || classify(&v) != Class::Term {
                    return Err(line.err("eqterm sides must be term expressions"));
                }
                if classify(&sort) != Class::Sort {
                    return Err(line.err("eqterm sort must be a sort expression"));
                }
                axioms.push(Judgment::TermEq(ctx, u, v, sort));
            }
            other => return Err(line.err(format!("unknown declaration `{other}`"))),
        }
        if !line.at_end() {
            return Err(line.err("trailing tokens"));
        }
    }

    Ok(Pretheory::new(name, Arc::new(env.alphabet), axioms)?)
}

fn env_for(theory: &Pretheory) -> Env {
    let alphabet = (**theory.alphabet()).clone();
    let mut arity = HashMap::new();
    for s in alphabet.sort_syms().into_iter().chain(alphabet.term_syms()) {
        arity.insert(s.clone(), theory.arity(&s).unwrap_or(0));
    }
    let vars = match &alphabet {
        Alphabet::Atomic { var_names, .. } => var_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Var::Atom(i as u32)))
            .collect(),
        Alphabet::Tensor { .. } => HashMap::new(),
    };
    Env { alphabet, arity, vars }
}

fn parse_judgment_line(line: &mut Line, env: &mut Env) -> Result<Judgment, SyntaxError> {
    // context before `|-`, entries comma separated, no parens
    let mut entries = Vec::new();
    while line.peek() != Some(&Tok::Turnstile) {
        let name = line.ident("a variable or `|-`")?;
        if env.alphabet.resolve_sym(&name).is_some() {
            return Err(line.err(format!("`{name}` is a symbol, not a variable")));
        }
        let v = env.resolve_var(&name, line)?;
        line.expect(Tok::Colon, "`:`")?;
        let sort = parse_expr(line, env)?;
        entries.push((v, sort));
        if line.peek() == Some(&Tok::Comma) {
            line.next();
        }
    }
    line.expect(Tok::Turnstile, "`|-`")?;
    let ctx = Precontext::new(entries).map_err(|m| line.err(format!("scope violation: {m}")))?;

    if line.peek() == Some(&Tok::Ident("ctx-ok".into())) {
        line.next();
        return Ok(Judgment::Ctx(ctx));
    }
    let first = parse_expr(line, env)?;
    match line.next() {
        Some(Tok::Ident(s)) if s == "sort" => Ok(Judgment::Sort(ctx, first)),
        Some(Tok::Colon) => {
            let sort = parse_expr(line, env)?;
            Ok(Judgment::Term(ctx, first, sort))
        }
        Some(Tok::EqEq) => {
            let second = parse_expr(line, env)?;
            match line.next() {
                Some(Tok::Ident(s)) if s == "sort" => Ok(Judgment::SortEq(ctx, first, second)),
                Some(Tok::Colon) => {
                    let sort = parse_expr(line, env)?;
                    Ok(Judgment::TermEq(ctx, first, second, sort))
                }
                _ => Err(line.err("expected `sort` or `:` after equality")),
            }
        }
        _ => Err(line.err("expected `sort`, `:` or `==`")),
    }
}

/// Parse a single judgment over a theory's alphabet.
pub fn parse_judgment(text: &str, theory: &Pretheory) -> Result<Judgment, SyntaxError> {
    let mut env = env_for(theory);
    let mut line = lex_line(1, text)?;
    let j = parse_judgment_line(&mut line, &mut env)?;
    if !line.at_end() {
        return Err(line.err("trailing tokens"));
    }
    Ok(j)
}

/// Parse a judgment file: one judgment per line, `#` comments.
pub fn parse_judgment_file(text: &str, theory: &Pretheory) -> Result<Vec<Judgment>, SyntaxError> {
    let mut env = env_for(theory);
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let mut line = lex_line(no + 1, raw)?;
        if line.at_end() {
            continue;
        }
        let j = parse_judgment_line(&mut line, &mut env)?;
        if !line.at_end() {
            return Err(line.err("trailing tokens"));
        }
        out.push(j);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print::print_theory;

    const GRAPH: &str = "\
theory graph
sort O ( )
sort A ( x:O, y:O )
";

    #[test]
    fn parse_graph() {
        let t = parse_theory(GRAPH).unwrap();
        assert_eq!(t.alphabet().sort_syms().len(), 2);
        assert_eq!(t.alphabet().term_syms().len(), 0);
        assert_eq!(t.axioms().len(), 2);
    }

    #[test]
    fn print_parse_print_is_idempotent() {
        let t = parse_theory(GRAPH).unwrap();
        let printed = print_theory(&t);
        let t2 = parse_theory(&printed).unwrap();
        assert_eq!(print_theory(&t2), printed);
    }

    #[test]
    fn duplicate_sort_axiom_rejected() {
        let text = "theory bad\nsort O ( )\nsort O ( )\n";
        assert!(parse_theory(text).is_err());
    }

    #[test]
    fn arity_mismatch_rejected() {
        let text = "theory bad\nsort O ( )\nsort A ( x:O, y:O )\nterm f ( a:A(x) ) : O\n";
        assert!(parse_theory(text).is_err());
    }

    #[test]
    fn judgment_forms_parse() {
        let t = parse_theory(GRAPH).unwrap();
        for line in [
            "|- O sort",
            "x:O |- x : O",
            "x:O, y:O |- A(x,y) sort",
            "x:O |- O == O sort",
            "x:O |- x == x : O",
            "x:O, y:O |- ctx-ok",
            "|- ctx-ok",
        ] {
            parse_judgment(line, &t).unwrap();
        }
    }
}
