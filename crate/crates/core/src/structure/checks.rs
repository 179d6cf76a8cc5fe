use rayon::prelude::*;

use crate::kernel::{DerivResult, Prover, Ruleset, SearchBudget};
use crate::syntax::{Judgment, Pretheory};
use crate::tensor::tensor_theory;

use super::interp::{apply_interpretation, swap_interpretation};
use super::reassoc::{reassociate_judgment, unreassociate_judgment};

/// Line-per-axiom result of a cross-derivability run. `direction` is the
/// theory the translated axiom was checked in.
#[derive(Debug)]
pub struct CrossReport {
    pub lines: Vec<CrossLine>,
}

#[derive(Debug)]
pub struct CrossLine {
    pub axiom_id: String,
    pub direction: String,
    pub result: DerivResult,
}

impl CrossReport {
    pub fn all_derivable(&self) -> bool {
        self.lines.iter().all(|l| l.result.is_derivable())
    }

    pub fn unknown_count(&self) -> usize {
        self.lines.iter().filter(|l| !l.result.is_derivable()).count()
    }
}

/// Every axiom of `(A (x) B) (x) C`, reassociated, must be derivable in
/// `A (x) (B (x) C)`, and conversely.
pub fn check_associativity(
    a: &Pretheory,
    b: &Pretheory,
    c: &Pretheory,
    budget: SearchBudget,
) -> Result<CrossReport, String> {
    let ab = tensor_theory(a, b).map_err(|e| e.to_string())?;
    let ab_c = tensor_theory(&ab, c).map_err(|e| e.to_string())?;
    let bc = tensor_theory(b, c).map_err(|e| e.to_string())?;
    let a_bc = tensor_theory(a, &bc).map_err(|e| e.to_string())?;

    let goals_right: Vec<Judgment> = ab_c
        .axioms()
        .iter()
        .map(reassociate_judgment)
        .collect::<Result<_, _>>()?;
    let goals_left: Vec<Judgment> = a_bc
        .axioms()
        .iter()
        .map(unreassociate_judgment)
        .collect::<Result<_, _>>()?;

    let mut lines = run_goals(&goals_right, &a_bc, budget, "in-right-nested");
    lines.extend(run_goals(&goals_left, &ab_c, budget, "in-left-nested"));
    Ok(CrossReport { lines })
}

/// Every axiom of `A (x) B` maps under the swap interpretation to a
/// judgment derivable in `B (x) A`, and conversely.
pub fn check_symmetry(
    a: &Pretheory,
    b: &Pretheory,
    budget: SearchBudget,
) -> Result<CrossReport, String> {
    let ab = tensor_theory(a, b).map_err(|e| e.to_string())?;
    let ba = tensor_theory(b, a).map_err(|e| e.to_string())?;
    let swap_ab = swap_interpretation(a, b);
    let swap_ba = swap_interpretation(b, a);

    let goals_right: Vec<Judgment> = ab
        .axioms()
        .iter()
        .map(|j| apply_interpretation(&swap_ab, j))
        .collect::<Result<_, _>>()?;
    let goals_left: Vec<Judgment> = ba
        .axioms()
        .iter()
        .map(|j| apply_interpretation(&swap_ba, j))
        .collect::<Result<_, _>>()?;

    let mut lines = run_goals(&goals_right, &ba, budget, "in-swapped");
    lines.extend(run_goals(&goals_left, &ab, budget, "in-original"));
    Ok(CrossReport { lines })
}

fn run_goals(
    goals: &[Judgment],
    theory: &Pretheory,
    budget: SearchBudget,
    direction: &str,
) -> Vec<CrossLine> {
    let prover = Prover::new(theory, budget, Ruleset::Modified);
    goals
        .par_iter()
        .enumerate()
        .map(|(i, g)| CrossLine {
            axiom_id: format!("axiom-{}", i + 1),
            direction: direction.to_string(),
            result: prover.result(g),
        })
        .collect()
}
