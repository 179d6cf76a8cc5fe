use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use gat_core::corpus::{builtin, golden_compare, golden_for, BuiltinId, Golden};
use gat_core::kernel::{
    cert_from_sexpr, cert_to_sexpr, check_derivation, expanded_size, is_theory, Prover, Ruleset,
    SearchBudget,
};
use gat_core::structure::{check_associativity, check_symmetry, CrossReport};
use gat_core::syntax::{parse_judgment_file, parse_theory, print_theory, Pretheory};
use gat_core::tensor::tensor_theory;

mod report;

use report::{emit, Format, Line};

#[derive(Parser)]
#[command(name = "gat-tensor", version, about = "Derivability checking and tensor products of generalized algebraic theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SearchOpts {
    /// Maximum derivation height (stratum) accepted; defaults to
    /// GAT_TENSOR_BUDGET or the built-in default.
    #[arg(long)]
    budget: Option<u32>,
    /// Size bound for invented intermediate expressions.
    #[arg(long)]
    universe: Option<usize>,
    /// Inference system to search with.
    #[arg(long, default_value = "modified", value_parser = parse_ruleset)]
    ruleset: Ruleset,
    /// Worker threads for independent goals.
    #[arg(long)]
    jobs: Option<usize>,
    /// Report format: human, tsv or json-lines.
    #[arg(long, default_value = "human", value_parser = Format::parse)]
    format: Format,
}

fn parse_ruleset(s: &str) -> Result<Ruleset, String> {
    match s {
        "modified" => Ok(Ruleset::Modified),
        "cartmell" => Ok(Ruleset::Cartmell),
        other => Err(format!("unknown ruleset `{other}` (modified|cartmell)")),
    }
}

impl SearchOpts {
    fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Ok(v) = std::env::var("GAT_TENSOR_BUDGET") {
            if let Ok(h) = v.parse() {
                b.max_height = h;
            }
        }
        if let Some(h) = self.budget {
            b.max_height = h;
        }
        if let Some(u) = self.universe {
            b.universe = u;
        }
        b
    }

    fn install_pool(&self) {
        // sequential by default so output bytes are reproducible; --jobs
        // opts into racing independent goals
        let n = self.jobs.unwrap_or(1);
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a theory file and print its normal form.
    Parse { theory: String },
    /// Check that every axiom of a theory is derivable.
    Check {
        theory: String,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Search derivations for the judgments in a file.
    Derive {
        theory: String,
        judgments: PathBuf,
        /// Write found certificates as s-expressions.
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Re-validate serialized certificates against a theory.
    CheckCert { theory: String, certs: PathBuf },
    /// Compute the tensor product of two theories.
    Tensor {
        left: String,
        right: String,
        /// Write the product theory here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also check every product axiom is derivable.
        #[arg(long, overrides_with = "no_check")]
        check: bool,
        #[arg(long = "no-check")]
        no_check: bool,
        /// Compare the product against a golden directory
        /// (expected.gat + rename.map).
        #[arg(long)]
        golden: Option<PathBuf>,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Cross-derivability of reassociated axioms between the two
    /// bracketings of a triple product.
    AssocCheck {
        a: String,
        b: String,
        c: String,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Cross-derivability of swapped axioms between a product and its
    /// transpose.
    SymCheck {
        a: String,
        b: String,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Diff a tensor product against a golden directory.
    Golden {
        left: String,
        right: String,
        /// Golden directory; defaults to the shipped golden for built-in
        /// factor names.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn load_theory(spec: &str) -> Result<Pretheory, String> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
        return parse_theory(&text).map_err(|e| format!("{spec}: {e}"));
    }
    if let Some(id) = BuiltinId::from_name(spec) {
        return Ok(builtin(id));
    }
    Err(format!("`{spec}` is neither a file nor a built-in theory name"))
}

fn load_golden(dir: &Path) -> Result<Golden, String> {
    let expected = std::fs::read_to_string(dir.join("expected.gat"))
        .map_err(|e| format!("{}: {e}", dir.join("expected.gat").display()))?;
    let rename = std::fs::read_to_string(dir.join("rename.map")).unwrap_or_default();
    Golden::load(&expected, &rename).map_err(|e| e.to_string())
}

fn emit_cross(report: &CrossReport, format: Format) {
    // line-per-axiom TSV-style report regardless of completion order
    for l in &report.lines {
        let verdict = if l.result.is_derivable() { "derivable" } else { "unknown" };
        let h = l.result.height_ub().map(|h| h.to_string()).unwrap_or_else(|| "-".into());
        match format {
            Format::JsonLines => println!(
                "{}",
                serde_json::json!({
                    "id": l.axiom_id,
                    "direction": l.direction,
                    "verdict": verdict,
                    "height_ub": l.result.height_ub(),
                })
            ),
            _ => println!("{}\t{}\t{}\t{}", l.axiom_id, l.direction, verdict, h),
        }
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Parse { theory } => {
            let t = load_theory(&theory)?;
            print!("{}", print_theory(&t));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { theory, opts } => {
            opts.install_pool();
            let t = load_theory(&theory)?;
            let prover = Prover::new(&t, opts.budget(), opts.ruleset);
            let t0 = Instant::now();
            let report = is_theory(&t, &prover);
            let lines: Vec<Line> = report
                .per_axiom
                .iter()
                .enumerate()
                .map(|(i, (_, r))| Line {
                    id: format!("axiom-{}", i + 1),
                    verdict: if r.is_derivable() { "derivable" } else { "unknown" },
                    height_ub: r.height_ub(),
                    elapsed: t0.elapsed() / report.per_axiom.len().max(1) as u32,
                })
                .collect();
            emit(&lines, opts.format);
            Ok(if report.is_theory() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Derive { theory, judgments, emit_cert, opts } => {
            opts.install_pool();
            let t = load_theory(&theory)?;
            let text = std::fs::read_to_string(&judgments)
                .map_err(|e| format!("{}: {e}", judgments.display()))?;
            let goals = parse_judgment_file(&text, &t).map_err(|e| e.to_string())?;
            let prover = Prover::new(&t, opts.budget(), opts.ruleset);
            let results: Vec<_> = goals
                .par_iter()
                .map(|g| {
                    let t0 = Instant::now();
                    (prover.result(g), t0.elapsed())
                })
                .collect();
            let lines: Vec<Line> = results
                .iter()
                .enumerate()
                .map(|(i, (r, el))| Line {
                    id: format!("goal-{}", i + 1),
                    verdict: if r.is_derivable() { "derivable" } else { "unknown" },
                    height_ub: r.height_ub(),
                    elapsed: *el,
                })
                .collect();
            emit(&lines, opts.format);
            if let Some(path) = emit_cert {
                let mut out = String::new();
                for (r, _) in &results {
                    if let gat_core::kernel::DerivResult::Derivable { cert, .. } = r {
                        if expanded_size(cert) > 2_000_000 {
                            return Err("certificate too large to serialize without sharing".into());
                        }
                        out.push_str(&cert_to_sexpr(cert, &t));
                    }
                }
                std::fs::write(&path, out).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let all = results.iter().all(|(r, _)| r.is_derivable());
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::CheckCert { theory, certs } => {
            let t = load_theory(&theory)?;
            let text = std::fs::read_to_string(&certs)
                .map_err(|e| format!("{}: {e}", certs.display()))?;
            // file may hold several certificates back to back
            let mut rest = text.trim_start();
            let mut i = 0;
            let mut ok = true;
            while !rest.is_empty() {
                let end = balanced_prefix(rest)
                    .ok_or_else(|| "unbalanced certificate file".to_string())?;
                let cert = cert_from_sexpr(&rest[..end], &t)?;
                i += 1;
                let valid = check_derivation(&cert, &t);
                println!("cert-{i}: {}", if valid { "valid" } else { "INVALID" });
                ok &= valid;
                rest = rest[end..].trim_start();
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Tensor { left, right, output, check, no_check: _, golden, opts } => {
            opts.install_pool();
            let lt = load_theory(&left)?;
            let rt = load_theory(&right)?;
            let product = tensor_theory(&lt, &rt).map_err(|e| e.to_string())?;
            match &output {
                Some(path) => std::fs::write(path, print_theory(&product))
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{}", print_theory(&product)),
            }
            let mut ok = true;
            if let Some(dir) = golden {
                let g = load_golden(&dir)?;
                let diff = golden_compare(&product, &g);
                eprintln!(
                    "golden: matched {} missing {} unexpected {}",
                    diff.matched.len(),
                    diff.missing.len(),
                    diff.unexpected.len()
                );
                ok &= diff.is_exact();
            }
            if check {
                let prover = Prover::new(&product, opts.budget(), opts.ruleset);
                let report = is_theory(&product, &prover);
                eprintln!(
                    "check: {} axioms, {} unknown",
                    report.per_axiom.len(),
                    report.unknown_count()
                );
                ok &= report.is_theory();
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::AssocCheck { a, b, c, opts } => {
            opts.install_pool();
            let (ta, tb, tc) = (load_theory(&a)?, load_theory(&b)?, load_theory(&c)?);
            let report = check_associativity(&ta, &tb, &tc, opts.budget())?;
            emit_cross(&report, opts.format);
            Ok(if report.all_derivable() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::SymCheck { a, b, opts } => {
            opts.install_pool();
            let (ta, tb) = (load_theory(&a)?, load_theory(&b)?);
            let report = check_symmetry(&ta, &tb, opts.budget())?;
            emit_cross(&report, opts.format);
            Ok(if report.all_derivable() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Golden { left, right, dir } => {
            let lt = load_theory(&left)?;
            let rt = load_theory(&right)?;
            let product = tensor_theory(&lt, &rt).map_err(|e| e.to_string())?;
            let g = match dir {
                Some(d) => load_golden(&d)?,
                None => {
                    let (Some(li), Some(ri)) =
                        (BuiltinId::from_name(&left), BuiltinId::from_name(&right))
                    else {
                        return Err("--dir is required for non-builtin factors".into());
                    };
                    golden_for(li, ri).ok_or("no shipped golden for this pair")?
                }
            };
            let diff = golden_compare(&product, &g);
            for (gi, ci) in &diff.matched {
                println!("golden-{}\tmatched\tcomputed-{}", gi + 1, ci + 1);
            }
            for gi in &diff.missing {
                println!("golden-{}\tMISSING\t-", gi + 1);
            }
            for ci in &diff.unexpected {
                println!("-\tUNEXPECTED\tcomputed-{}", ci + 1);
            }
            Ok(if diff.is_exact() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

/// Byte length of the first balanced s-expression.
fn balanced_prefix(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    let mut in_str = false;
    for (i, c) in s.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '(' if !in_str => depth += 1,
            ')' if !in_str => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return Some(i + 1);
                }
            }
            _ => {}
        }
    }
    None
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
