//! Equation checkers, the identities every solution must satisfy, membership
//! in the constructed families, and per-instance completeness reports.

mod decompose;
mod membership;
mod report;

use std::fmt;

use thiserror::Error;

use crate::algebra::{Carrier, Elem, EquationInstance, EquationKind, FiniteSemigroup, Involution, TableFun2};

pub use decompose::{jensen_decompose, quadratic_decompose, JensenDecomposition, QuadraticDecomposition};
pub use membership::{
    membership_dalembert, DalembertMembership, DalembertWitness, Membership, WitnessField,
    WitnessRoute,
};
pub use report::{
    analyze_instance, identity_checks, AnalysisConfig, AnalysisError, IdentityResult, IdentityTally,
    InstanceReport, SetRelation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("function is defined on a semigroup of size {found}, instance has {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("value {value} at cell {cell} is not an element of a carrier of order {order}")]
    CarrierMismatch { cell: usize, value: Elem, order: u32 },
    #[error("not a solution: {count} violating quadruples, first {first}")]
    NotASolution { count: usize, first: Violation },
    #[error("diagonal reduction needs sigma = tau")]
    SigmaTauMismatch,
}

/// A quadruple `(x, y, z, w)` at which the equation fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x,y,z,w)=({},{},{},{})", self.x, self.y, self.z, self.w)
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail,
    /// The identity's hypotheses do not hold for this instance or function.
    NotApplicable,
}

impl Check {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Pass => "pass",
            Check::Fail => "FAIL",
            Check::NotApplicable => "n/a",
        })
    }
}

fn validate(inst: &EquationInstance, f: &TableFun2) -> Result<(), VerifyError> {
    if f.side() != inst.side() {
        return Err(VerifyError::ShapeMismatch {
            expected: inst.side(),
            found: f.side(),
        });
    }
    let order = inst.carrier().order();
    if let Some((cell, &value)) = f.values().iter().enumerate().find(|(_, &v)| v >= order) {
        return Err(VerifyError::CarrierMismatch { cell, value, order });
    }
    Ok(())
}

/// Every quadruple `(x, y, z, w)`, in lexicographic order, at which
/// `f(x+y, z+w) + f(x+σy, z+τw)` differs from the instance's right side.
pub fn check_equation(inst: &EquationInstance, f: &TableFun2) -> Result<Vec<Violation>, VerifyError> {
    validate(inst, f)?;
    let s = inst.semigroup();
    let (sigma, tau) = (inst.sigma(), inst.tau());
    let k = inst.carrier();
    let n = s.size();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (xy, xsy) = (s.op(x, y), s.op(x, sigma.apply(y)));
            for z in 0..n {
                for w in 0..n {
                    let lhs = k.add(
                        f.get(xy, s.op(z, w)),
                        f.get(xsy, s.op(z, tau.apply(w))),
                    );
                    let (fu, fv) = (f.get(x, z), f.get(y, w));
                    let rhs = match inst.kind() {
                        EquationKind::DAlembert => k.double(k.mul(fu, fv)),
                        EquationKind::Jensen => k.double(fu),
                        EquationKind::Quadratic => k.double(k.add(fu, fv)),
                    };
                    if lhs != rhs {
                        out.push(Violation { x, y, z, w });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Whether `f(σy, τw) = f(y, w)` everywhere.
pub fn check_solution_symmetry(inst: &EquationInstance, f: &TableFun2) -> bool {
    let pi = inst.pair_involution();
    (0..inst.cells()).all(|u| f.at(pi.apply(u)) == f.at(u))
}

/// `F(x, z) = f(x + y₀, z + w₀) - f(x + σy₀, z + τw₀)` for a base point
/// `(y₀, w₀)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofWitnessF {
    pub base_point: (usize, usize),
    pub table: TableFun2,
}

pub fn proof_witness_f(inst: &EquationInstance, f: &TableFun2, base_point: (usize, usize)) -> ProofWitnessF {
    let k = inst.carrier();
    let p = inst.square();
    let pi = inst.pair_involution();
    let b = base_point.0 * inst.side() + base_point.1;
    let shifted = pi.apply(b);
    let values = (0..inst.cells())
        .map(|u| k.sub(f.at(p.op(u, b)), f.at(p.op(u, shifted))))
        .collect();
    ProofWitnessF {
        base_point,
        table: TableFun2::new(inst.side(), values).expect("cells = side²"),
    }
}

/// Whether `F(σx, τz) = -F(x, z)` everywhere.
pub fn check_witness_antisymmetry(inst: &EquationInstance, witness: &ProofWitnessF) -> bool {
    let k = inst.carrier();
    let pi = inst.pair_involution();
    let t = &witness.table;
    (0..inst.cells()).all(|u| t.at(pi.apply(u)) == k.neg(t.at(u)))
}

/// Checks `F(x+y, z+w) = F(x,z) f(y,w) + F(y,w) f(x,z)` for the witness at
/// `base_point`. Only applicable on group instances with a field carrier.
pub fn check_sine_addition(inst: &EquationInstance, f: &TableFun2, base_point: (usize, usize)) -> Check {
    let k = inst.carrier();
    if !inst.semigroup().is_group() || !k.is_field() {
        return Check::NotApplicable;
    }
    let big_f = proof_witness_f(inst, f, base_point).table;
    let p = inst.square();
    let n = inst.cells();
    let ok = (0..n).all(|u| {
        (0..n).all(|v| {
            big_f.at(p.op(u, v))
                == k.add(k.mul(big_f.at(u), f.at(v)), k.mul(big_f.at(v), f.at(u)))
        })
    });
    Check::from_bool(ok)
}

/// Whether `f(x + y + σy, z + w + τw) = f(x, z)` everywhere.
pub fn check_jensen_invariance(inst: &EquationInstance, f: &TableFun2) -> bool {
    let p = inst.square();
    let pi = inst.pair_involution();
    let n = inst.cells();
    (0..n).all(|v| {
        let period = p.op(v, pi.apply(v));
        (0..n).all(|u| f.at(p.op(u, period)) == f.at(u))
    })
}

/// Restriction `g(x) = f(x, x)` of a two-variable function, with the
/// violations of the matching single-variable equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalReduction {
    pub g: Vec<Elem>,
    /// Pairs `(x, y)` where `g(x+y) + g(x+σy)` differs from the right side.
    pub violations: Vec<(usize, usize)>,
}

impl DiagonalReduction {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn diagonal_reduce(inst: &EquationInstance, f: &TableFun2) -> Result<DiagonalReduction, VerifyError> {
    if inst.sigma() != inst.tau() {
        return Err(VerifyError::SigmaTauMismatch);
    }
    validate(inst, f)?;
    let g = f.diagonal();
    let violations =
        check_single_variable(inst.semigroup(), inst.sigma(), inst.carrier(), inst.kind(), &g);
    Ok(DiagonalReduction { g, violations })
}

/// Violations `(x, y)` of `g(x+y) + g(x+σy) = 2g(x)g(y)` / `2g(x)` /
/// `2g(x) + 2g(y)`.
pub fn check_single_variable(
    s: &FiniteSemigroup,
    sigma: &Involution,
    carrier: &Carrier,
    kind: EquationKind,
    g: &[Elem],
) -> Vec<(usize, usize)> {
    let n = s.size();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let lhs = carrier.add(g[s.op(x, y)], g[s.op(x, sigma.apply(y))]);
            let rhs = match kind {
                EquationKind::DAlembert => carrier.double(carrier.mul(g[x], g[y])),
                EquationKind::Jensen => carrier.double(g[x]),
                EquationKind::Quadratic => carrier.double(carrier.add(g[x], g[y])),
            };
            if lhs != rhs {
                out.push((x, y));
            }
        }
    }
    out
}
