use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::syntax::{parse_judgment, print_judgment, Judgment, Pretheory, SyntaxError};

use super::rules::{validate_step, RuleName};

/// A derivation certificate: a tree of rule instances. Leaves are
/// zero-premise steps and sit in stratum 1, so the tree height is an upper
/// bound for the stratified height of the conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: RuleName,
    pub conclusion: Judgment,
    pub premises: Vec<Arc<Derivation>>,
}

impl Derivation {
    pub fn new(rule: RuleName, conclusion: Judgment, premises: Vec<Arc<Derivation>>) -> Derivation {
        Derivation { rule, conclusion, premises }
    }

    pub fn leaf(rule: RuleName, conclusion: Judgment) -> Derivation {
        Derivation::new(rule, conclusion, Vec::new())
    }

    /// Tree height; shared subtrees (the search memoizes aggressively, so
    /// certificates are DAGs in memory) are measured once.
    pub fn height(&self) -> u32 {
        let mut memo: HashMap<*const Derivation, u32> = HashMap::new();
        fn go(d: &Derivation, memo: &mut HashMap<*const Derivation, u32>) -> u32 {
            1 + d
                .premises
                .iter()
                .map(|p| {
                    let key = Arc::as_ptr(p);
                    if let Some(h) = memo.get(&key) {
                        return *h;
                    }
                    let h = go(p, memo);
                    memo.insert(key, h);
                    h
                })
                .max()
                .unwrap_or(0)
        }
        go(self, &mut memo)
    }

    /// Unique nodes reachable from the root.
    pub fn node_count(&self) -> usize {
        let mut seen: HashSet<*const Derivation> = HashSet::new();
        fn go(d: &Derivation, seen: &mut HashSet<*const Derivation>) -> usize {
            1 + d
                .premises
                .iter()
                .map(|p| if seen.insert(Arc::as_ptr(p)) { go(p, seen) } else { 0 })
                .sum::<usize>()
        }
        go(self, &mut seen)
    }
}

/// The trusted checker: every node must be a valid instance of its rule,
/// with children's conclusions as its premise list. Search results must
/// pass through here before being reported derivable. Shared subtrees are
/// validated once.
pub fn check_derivation(d: &Derivation, theory: &Pretheory) -> bool {
    let mut ok: HashSet<*const Derivation> = HashSet::new();
    fn go(d: &Derivation, theory: &Pretheory, ok: &mut HashSet<*const Derivation>) -> bool {
        let prems: Vec<Judgment> = d.premises.iter().map(|p| p.conclusion.clone()).collect();
        match validate_step(d.rule, &prems, &d.conclusion, theory) {
            Ok(true) => d
                .premises
                .iter()
                .all(|p| !ok.insert(Arc::as_ptr(p)) || go(p, theory, ok)),
            _ => false,
        }
    }
    go(d, theory, &mut ok)
}

/// Fully expanded tree size (shared subtrees counted at every occurrence),
/// saturating; the serialized form has this many nodes.
pub fn expanded_size(d: &Derivation) -> u64 {
    let mut memo: HashMap<*const Derivation, u64> = HashMap::new();
    fn go(d: &Derivation, memo: &mut HashMap<*const Derivation, u64>) -> u64 {
        1u64.saturating_add(
            d.premises
                .iter()
                .map(|p| {
                    let key = Arc::as_ptr(p);
                    if let Some(n) = memo.get(&key) {
                        return *n;
                    }
                    let n = go(p, memo);
                    memo.insert(key, n);
                    n
                })
                .fold(0u64, u64::saturating_add),
        )
    }
    go(d, &mut memo)
}

/// Serialize as a nested s-expression:
/// `(rule <name> (concl "<judgment>") (prem <subtree>...))`.
pub fn cert_to_sexpr(d: &Derivation, theory: &Pretheory) -> String {
    let mut out = String::new();
    write_sexpr(d, theory, &mut out, 0);
    out
}

fn write_sexpr(d: &Derivation, theory: &Pretheory, out: &mut String, depth: usize) {
    let indent = "  ".repeat(depth);
    let concl = print_judgment(&d.conclusion, theory.alphabet());
    out.push_str(&format!("{indent}(rule {} (concl \"{concl}\")", d.rule.as_str()));
    if d.premises.is_empty() {
        out.push(')');
    } else {
        out.push_str(" (prem\n");
        for (i, p) in d.premises.iter().enumerate() {
            write_sexpr(p, theory, out, depth + 1);
            if i + 1 < d.premises.len() {
                out.push('\n');
            }
        }
        out.push_str("))");
    }
    if depth == 0 {
        out.push('\n');
    }
}

#[derive(Debug)]
enum Sexpr {
    Atom(String),
    Str(String),
    List(Vec<Sexpr>),
}

fn parse_sexpr(src: &[char], mut i: usize) -> Result<(Sexpr, usize), String> {
    while i < src.len() && src[i].is_whitespace() {
        i += 1;
    }
    match src.get(i) {
        None => Err("unexpected end of certificate".into()),
        Some('(') => {
            i += 1;
            let mut items = Vec::new();
            loop {
                while i < src.len() && src[i].is_whitespace() {
                    i += 1;
                }
                match src.get(i) {
                    None => return Err("unclosed `(`".into()),
                    Some(')') => return Ok((Sexpr::List(items), i + 1)),
                    _ => {
                        let (s, j) = parse_sexpr(src, i)?;
                        items.push(s);
                        i = j;
                    }
                }
            }
        }
        Some('"') => {
            let start = i + 1;
            let mut j = start;
            while j < src.len() && src[j] != '"' {
                j += 1;
            }
            if j >= src.len() {
                return Err("unclosed string".into());
            }
            Ok((Sexpr::Str(src[start..j].iter().collect()), j + 1))
        }
        Some(_) => {
            let start = i;
            while i < src.len() && !src[i].is_whitespace() && src[i] != '(' && src[i] != ')' {
                i += 1;
            }
            Ok((Sexpr::Atom(src[start..i].iter().collect()), i))
        }
    }
}

/// Parse a serialized certificate back into a derivation tree. Judgment
/// strings are parsed over the theory's alphabet.
pub fn cert_from_sexpr(text: &str, theory: &Pretheory) -> Result<Derivation, String> {
    let chars: Vec<char> = text.chars().collect();
    let (s, _) = parse_sexpr(&chars, 0)?;
    sexpr_to_cert(&s, theory)
}

fn sexpr_to_cert(s: &Sexpr, theory: &Pretheory) -> Result<Derivation, String> {
    let Sexpr::List(items) = s else { return Err("expected `(rule ...)`".into()) };
    match items.first() {
        Some(Sexpr::Atom(a)) if a == "rule" => {}
        _ => return Err("expected `(rule ...)`".into()),
    }
    let Some(Sexpr::Atom(name)) = items.get(1) else { return Err("missing rule name".into()) };
    let rule = RuleName::parse_name(name).ok_or_else(|| format!("unknown rule `{name}`"))?;
    let mut conclusion = None;
    let mut premises = Vec::new();
    for item in &items[2..] {
        let Sexpr::List(parts) = item else { return Err("expected `(concl ...)` or `(prem ...)`".into()) };
        match parts.first() {
            Some(Sexpr::Atom(k)) if k == "concl" => {
                let Some(Sexpr::Str(text)) = parts.get(1) else {
                    return Err("concl needs a quoted judgment".into());
                };
                let j = parse_judgment(text, theory).map_err(|e: SyntaxError| e.to_string())?;
                conclusion = Some(j);
            }
            Some(Sexpr::Atom(k)) if k == "prem" => {
                for sub in &parts[1..] {
                    premises.push(Arc::new(sexpr_to_cert(sub, theory)?));
                }
            }
            _ => return Err("expected `(concl ...)` or `(prem ...)`".into()),
        }
    }
    let conclusion = conclusion.ok_or("certificate node lacks a conclusion")?;
    Ok(Derivation { rule, conclusion, premises })
}
