//! Per-instance comparison of brute-force solutions against the constructed
//! family, with identity checks on every solution.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{EquationInstance, EquationKind, TableFun2};
use crate::families::{family, FamilyError};
use crate::solver::{solve, SolveError, SolverConfig};

use super::{
    check_equation, check_jensen_invariance, check_sine_addition, check_solution_symmetry,
    check_witness_antisymmetry, diagonal_reduce, jensen_decompose, proof_witness_f,
    quadratic_decompose, Check, DalembertMembership, Membership, WitnessField,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalysisConfig {
    pub solver: SolverConfig,
    /// Build the d'Alembert family from characters over `F_{q²}`.
    pub extension: bool,
}

/// How the brute-force set relates to the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetRelation {
    Equal,
    /// The family is a proper subset of the brute-force set.
    FamilySubset,
    /// The brute-force set is a proper subset of the family.
    BruteSubset,
    Incomparable,
}

impl SetRelation {
    pub fn of(brute: &BTreeSet<TableFun2>, fam: &BTreeSet<TableFun2>) -> Self {
        match (fam.is_subset(brute), brute.is_subset(fam)) {
            (true, true) => SetRelation::Equal,
            (true, false) => SetRelation::FamilySubset,
            (false, true) => SetRelation::BruteSubset,
            (false, false) => SetRelation::Incomparable,
        }
    }
}

impl fmt::Display for SetRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetRelation::Equal => "equal",
            SetRelation::FamilySubset => "family<brute",
            SetRelation::BruteSubset => "brute<family",
            SetRelation::Incomparable => "incomparable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: &'static str,
    pub outcome: Check,
    pub detail: Option<String>,
}

impl IdentityResult {
    fn new(name: &'static str, outcome: Check) -> Self {
        IdentityResult { name, outcome, detail: None }
    }

    fn with_detail(name: &'static str, outcome: Check, detail: String) -> Self {
        IdentityResult { name, outcome, detail: Some(detail) }
    }
}

/// Pass/fail/not-applicable counts of one identity over many functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityTally {
    pub name: &'static str,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

/// Runs the identities that apply to the instance's equation kind on `f`.
/// `membership` is used for d'Alembert instances; without it the membership
/// identity is reported as not applicable.
pub fn identity_checks(
    inst: &EquationInstance,
    f: &TableFun2,
    membership: Option<&DalembertMembership<'_>>,
) -> Vec<IdentityResult> {
    let mut out = Vec::new();
    let violations = match check_equation(inst, f) {
        Ok(v) => v,
        Err(e) => {
            out.push(IdentityResult::with_detail("equation", Check::Fail, e.to_string()));
            return out;
        }
    };
    let solves = violations.is_empty();
    out.push(match violations.first() {
        None => IdentityResult::new("equation", Check::Pass),
        Some(first) => IdentityResult::with_detail(
            "equation",
            Check::Fail,
            format!("{} violations, first {first}", violations.len()),
        ),
    });
    let gated = |ok: bool| if solves { Check::from_bool(ok) } else { Check::NotApplicable };
    let side = inst.side();
    match inst.kind() {
        EquationKind::DAlembert => {
            out.push(IdentityResult::new("symmetry", gated(check_solution_symmetry(inst, f))));
            let antisym = (0..side)
                .flat_map(|y| (0..side).map(move |w| (y, w)))
                .all(|b| check_witness_antisymmetry(inst, &proof_witness_f(inst, f, b)));
            out.push(IdentityResult::new("witness-antisymmetry", gated(antisym)));
            let sine = if solves {
                let mut outcome = Check::NotApplicable;
                'outer: for y in 0..side {
                    for w in 0..side {
                        outcome = check_sine_addition(inst, f, (y, w));
                        if outcome != Check::Pass {
                            break 'outer;
                        }
                    }
                }
                outcome
            } else {
                Check::NotApplicable
            };
            out.push(IdentityResult::new("sine-addition", sine));
            let member = match membership {
                Some(m) if solves => match m.check(f) {
                    Membership::Member(w) => IdentityResult::with_detail(
                        "membership",
                        Check::Pass,
                        match w.field {
                            WitnessField::Base => "base".to_string(),
                            WitnessField::Extension => "extension".to_string(),
                        },
                    ),
                    Membership::NotMember => IdentityResult::new("membership", Check::Fail),
                },
                _ => IdentityResult::new("membership", Check::NotApplicable),
            };
            out.push(member);
        }
        EquationKind::Jensen => {
            out.push(IdentityResult::new("invariance", gated(check_jensen_invariance(inst, f))));
            let exact = solves && jensen_decompose(inst, f).is_ok_and(|d| d.is_exact());
            out.push(IdentityResult::new("decomposition", gated(exact)));
        }
        EquationKind::Quadratic => {
            out.push(IdentityResult::new("symmetry", gated(check_solution_symmetry(inst, f))));
            let exact = solves && quadratic_decompose(inst, f).is_ok_and(|d| d.is_exact());
            out.push(IdentityResult::new("decomposition", gated(exact)));
        }
    }
    let diagonal = match diagonal_reduce(inst, f) {
        Ok(d) if solves => Check::from_bool(d.holds()),
        _ => Check::NotApplicable,
    };
    out.push(IdentityResult::new("diagonal", diagonal));
    out
}

#[derive(Debug, Clone)]
pub struct InstanceReport {
    pub kind: EquationKind,
    pub brute_force: BTreeSet<TableFun2>,
    pub family: BTreeSet<TableFun2>,
    pub intersection: usize,
    pub relation: SetRelation,
    /// d'Alembert only: brute-force solutions whose only witnesses are over
    /// `F_{q²}`.
    pub extension_witnesses: Option<usize>,
    /// d'Alembert only: brute-force solutions with no witness at all.
    pub unwitnessed: Option<usize>,
    pub identities: Vec<IdentityTally>,
    pub nodes: u64,
}

impl InstanceReport {
    pub fn identities_hold(&self) -> bool {
        self.identities.iter().all(|t| t.fail == 0)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

pub fn analyze_instance(
    inst: &EquationInstance,
    config: AnalysisConfig,
) -> Result<InstanceReport, AnalysisError> {
    let outcome = solve(inst, config.solver)?;
    let fam = family(inst, config.extension)?;
    let brute: BTreeSet<TableFun2> = outcome.solutions.into_iter().collect();
    let membership = (inst.kind() == EquationKind::DAlembert)
        .then(|| DalembertMembership::new(inst, true));

    let mut tallies: Vec<IdentityTally> = Vec::new();
    let mut extension_witnesses = 0;
    let mut unwitnessed = 0;
    for f in &brute {
        for result in identity_checks(inst, f, membership.as_ref()) {
            if result.name == "membership" {
                match result.detail.as_deref() {
                    Some("extension") => extension_witnesses += 1,
                    None if result.outcome == Check::Fail => unwitnessed += 1,
                    _ => {}
                }
            }
            let idx = match tallies.iter().position(|t| t.name == result.name) {
                Some(i) => i,
                None => {
                    tallies.push(IdentityTally { name: result.name, pass: 0, fail: 0, not_applicable: 0 });
                    tallies.len() - 1
                }
            };
            let tally = &mut tallies[idx];
            match result.outcome {
                Check::Pass => tally.pass += 1,
                Check::Fail => tally.fail += 1,
                Check::NotApplicable => tally.not_applicable += 1,
            }
        }
    }
    let dalembert = membership.is_some();
    Ok(InstanceReport {
        kind: inst.kind(),
        intersection: brute.intersection(&fam).count(),
        relation: SetRelation::of(&brute, &fam),
        extension_witnesses: dalembert.then_some(extension_witnesses),
        unwitnessed: dalembert.then_some(unwitnessed),
        identities: tallies,
        nodes: outcome.nodes,
        brute_force: brute,
        family: fam,
    })
}
