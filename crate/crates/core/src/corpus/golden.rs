use std::collections::HashMap;

use crate::syntax::{
    alpha_equal, parse_theory, Alphabet, Expr, Judgment, Precontext, Pretheory, SyntaxError,
};

use super::builtins::BuiltinId;

/// A golden: the expected axioms in theory-file form (hand transcriptions,
/// human-auditable) plus the rename map from transcription names to the
/// systematic star-joined names.
pub struct Golden {
    pub expected: Pretheory,
    pub rename: Vec<(String, String)>,
}

impl Golden {
    /// rename.map lines have the form `transcription-name = systematic-name`.
    pub fn load(expected_text: &str, rename_text: &str) -> Result<Golden, SyntaxError> {
        let expected = parse_theory(expected_text)?;
        let rename = rename_text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .filter_map(|l| {
                let (a, b) = l.split_once('=')?;
                Some((a.trim().to_string(), b.trim().to_string()))
            })
            .collect();
        Ok(Golden { expected, rename })
    }
}

/// Rebuild a judgment over another alphabet by renaming symbols; variables
/// ride along unchanged (comparisons are alpha-respecting anyway).
pub fn transcribe_judgment(
    j: &Judgment,
    from: &Alphabet,
    rename: &HashMap<&str, &str>,
    to: &Alphabet,
) -> Option<Judgment> {
    fn expr(e: &Expr, from: &Alphabet, rename: &HashMap<&str, &str>, to: &Alphabet) -> Option<Expr> {
        match e {
            Expr::Var(v) => Some(Expr::Var(v.clone())),
            Expr::App(h, args) => {
                let name = from.sym_name(h);
                let target = rename.get(name.as_str()).copied().unwrap_or(name.as_str());
                let sym = to.resolve_sym(target)?;
                let args = args
                    .iter()
                    .map(|a| expr(a, from, rename, to))
                    .collect::<Option<Vec<_>>>()?;
                Some(Expr::App(sym, args))
            }
        }
    }
    let ctx = Precontext::new(
        j.context()
            .entries()
            .iter()
            .map(|(v, s)| Some((v.clone(), expr(s, from, rename, to)?)))
            .collect::<Option<Vec<_>>>()?,
    )
    .ok()?;
    Some(match j {
        Judgment::Ctx(_) => Judgment::Ctx(ctx),
        Judgment::Sort(_, u) => Judgment::Sort(ctx, expr(u, from, rename, to)?),
        Judgment::Term(_, u, s) => {
            Judgment::Term(ctx, expr(u, from, rename, to)?, expr(s, from, rename, to)?)
        }
        Judgment::SortEq(_, u, v) => {
            Judgment::SortEq(ctx, expr(u, from, rename, to)?, expr(v, from, rename, to)?)
        }
        Judgment::TermEq(_, u, v, s) => Judgment::TermEq(
            ctx,
            expr(u, from, rename, to)?,
            expr(v, from, rename, to)?,
            expr(s, from, rename, to)?,
        ),
    })
}

#[derive(Debug)]
pub struct GoldenDiff {
    /// (expected index, computed index) pairs that matched alpha-equal.
    pub matched: Vec<(usize, usize)>,
    /// Expected axioms with no alpha-equal computed counterpart.
    pub missing: Vec<usize>,
    /// Computed axioms not matched by any expected axiom.
    pub unexpected: Vec<usize>,
}

impl GoldenDiff {
    pub fn is_exact(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

/// Axiom-set comparison: order-insensitive across the set, order-sensitive
/// inside each context, alpha-equality after the rename map.
pub fn golden_compare(computed: &Pretheory, golden: &Golden) -> GoldenDiff {
    let rename: HashMap<&str, &str> = golden
        .rename
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let mut used = vec![false; computed.axioms().len()];
    let mut matched = Vec::new();
    let mut missing = Vec::new();
    for (gi, gax) in golden.expected.axioms().iter().enumerate() {
        let transcribed = transcribe_judgment(
            gax,
            golden.expected.alphabet(),
            &rename,
            computed.alphabet(),
        );
        let hit = transcribed.and_then(|t| {
            computed
                .axioms()
                .iter()
                .enumerate()
                .find(|(ci, cax)| !used[*ci] && alpha_equal(&t, cax))
                .map(|(ci, _)| ci)
        });
        match hit {
            Some(ci) => {
                used[ci] = true;
                matched.push((gi, ci));
            }
            None => missing.push(gi),
        }
    }
    let unexpected = used
        .iter()
        .enumerate()
        .filter(|(_, u)| !**u)
        .map(|(i, _)| i)
        .collect();
    GoldenDiff { matched, missing, unexpected }
}

const GRAPH_X_GRAPH: (&str, &str) = (
    include_str!("../../../../corpus/graph_x_graph/expected.gat"),
    include_str!("../../../../corpus/graph_x_graph/rename.map"),
);
const CAT_X_CAT: (&str, &str) = (
    include_str!("../../../../corpus/cat_x_cat/expected.gat"),
    include_str!("../../../../corpus/cat_x_cat/rename.map"),
);

/// Shipped goldens, keyed by the factor pair.
pub fn golden_for(left: BuiltinId, right: BuiltinId) -> Option<Golden> {
    let (expected, rename) = match (left, right) {
        (BuiltinId::Graph, BuiltinId::Graph) => GRAPH_X_GRAPH,
        (BuiltinId::Cat, BuiltinId::Cat) => CAT_X_CAT,
        _ => return None,
    };
    Some(Golden::load(expected, rename).expect("shipped goldens parse"))
}
