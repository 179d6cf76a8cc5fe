use super::alphabet::Alphabet;
use super::expr::Expr;
use super::judgment::{Judgment, Precontext};
use super::theory::Pretheory;

pub fn print_expr(e: &Expr, alphabet: &Alphabet) -> String {
    match e {
        Expr::Var(v) => alphabet.var_name(v),
        Expr::App(h, args) => {
            let name = alphabet.sym_name(h);
            if args.is_empty() {
                name
            } else {
                let inner: Vec<String> = args.iter().map(|a| print_expr(a, alphabet)).collect();
                format!("{}({})", name, inner.join(","))
            }
        }
    }
}

pub fn print_ctx(ctx: &Precontext, alphabet: &Alphabet) -> String {
    ctx.entries()
        .iter()
        .map(|(v, s)| format!("{}:{}", alphabet.var_name(v), print_expr(s, alphabet)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// One judgment per line, in the judgment file syntax.
pub fn print_judgment(j: &Judgment, alphabet: &Alphabet) -> String {
    let ctx = print_ctx(j.context(), alphabet);
    let body = match j {
        Judgment::Ctx(_) => "ctx-ok".to_string(),
        Judgment::Sort(_, u) => format!("{} sort", print_expr(u, alphabet)),
        Judgment::Term(_, u, s) => {
            format!("{} : {}", print_expr(u, alphabet), print_expr(s, alphabet))
        }
        Judgment::SortEq(_, u, v) => {
            format!("{} == {} sort", print_expr(u, alphabet), print_expr(v, alphabet))
        }
        Judgment::TermEq(_, u, v, s) => format!(
            "{} == {} : {}",
            print_expr(u, alphabet),
            print_expr(v, alphabet),
            print_expr(s, alphabet)
        ),
    };
    if ctx.is_empty() {
        format!("|- {body}")
    } else {
        format!("{ctx} |- {body}")
    }
}

/// The theory file format. Axioms print in their stored order, which keeps
/// declaration-before-use intact for round trips.
pub fn print_theory(t: &Pretheory) -> String {
    let alphabet = t.alphabet();
    let mut out = format!("theory {}\n", t.name());
    for ax in t.axioms() {
        let ctx = print_ctx(ax.context(), alphabet);
        match ax {
            Judgment::Sort(_, u) => {
                let head = match u {
                    Expr::App(h, _) => alphabet.sym_name(h),
                    Expr::Var(_) => unreachable!("checked at construction"),
                };
                out.push_str(&format!("sort {head} ( {ctx} )\n"));
            }
            Judgment::Term(_, u, sort) => {
                let head = match u {
                    Expr::App(h, _) => alphabet.sym_name(h),
                    Expr::Var(_) => unreachable!("checked at construction"),
                };
                out.push_str(&format!(
                    "term {head} ( {ctx} ) : {}\n",
                    print_expr(sort, alphabet)
                ));
            }
            Judgment::SortEq(_, u, v) => {
                out.push_str(&format!(
                    "eqsort ( {ctx} ) : {} == {}\n",
                    print_expr(u, alphabet),
                    print_expr(v, alphabet)
                ));
            }
            Judgment::TermEq(_, u, v, sort) => {
                out.push_str(&format!(
                    "eqterm ( {ctx} ) : {} == {} : {}\n",
                    print_expr(u, alphabet),
                    print_expr(v, alphabet),
                    print_expr(sort, alphabet)
                ));
            }
            Judgment::Ctx(_) => unreachable!("pretheories hold standard judgments only"),
        }
    }
    out
}
