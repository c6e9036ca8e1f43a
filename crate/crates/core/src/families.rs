//! The constructed solution families:
//!
//! * d'Alembert type: `f = (χ + χ∘π) / 2` for multiplicative `χ`;
//! * Jensen type: `f = a + c` for additive `a` with `a∘π = -a` and a constant `c`;
//! * quadratic type: `f(u) = B(u, u) + T(u)` for symmetric biadditive `B` with
//!   `B(π(u), v) = -B(u, v)` and additive `T` with `T∘π = T`;
//!
//! where `π(x, z) = (σx, τz)`. Families are deduplicated value-table sets,
//! since distinct witnesses can give the same function.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{Carrier, CarrierError, Elem, EquationInstance, EquationKind, FiniteSemigroup, Involution, TableFun2};
use crate::morphisms::{
    additive_maps, biadditive_maps, enumerate_additive, enumerate_biadditive,
    enumerate_multiplicative, multiplicative_maps, AdditiveFilter, PairCondition,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("the d'Alembert family needs a field carrier")]
    NeedsField,
    #[error(transparent)]
    Carrier(#[from] CarrierError),
}

/// `{ (χ + χ∘π)/2 : χ : S² → K multiplicative }`.
pub fn dalembert_family(inst: &EquationInstance) -> Result<BTreeSet<TableFun2>, FamilyError> {
    let k = inst.carrier();
    if !k.is_field() {
        return Err(FamilyError::NeedsField);
    }
    let pi = inst.pair_involution();
    Ok(enumerate_multiplicative(inst.semigroup(), k)
        .iter()
        .map(|chi| {
            let chi = chi.table();
            TableFun2::from_fn(inst.side(), |x, z| {
                let u = x * inst.side() + z;
                k.halve(k.add(chi.at(u), chi.at(pi.apply(u))))
            })
        })
        .collect())
}

/// The d'Alembert family built from multiplicative `χ` with values in the
/// quadratic extension `F_{q²}`, keeping the members whose values all lie in
/// the base field `F_q`. Members are returned with base-field indices.
pub fn dalembert_family_extended(
    inst: &EquationInstance,
) -> Result<BTreeSet<TableFun2>, FamilyError> {
    let k = inst.carrier();
    if !k.is_field() {
        return Err(FamilyError::NeedsField);
    }
    let ext = k.quadratic_extension()?;
    let pi = inst.pair_involution();
    let q = k.order();
    Ok(multiplicative_maps(inst.square(), &ext)
        .iter()
        .filter_map(|chi| {
            let values: Vec<Elem> = (0..chi.len())
                .map(|u| ext.halve(ext.add(chi[u], chi[pi.apply(u)])))
                .collect();
            values
                .iter()
                .all(|&v| v < q)
                .then(|| TableFun2::new(inst.side(), values).expect("cells = side²"))
        })
        .collect())
}

/// `{ a + c : a additive, a∘π = -a, c ∈ G }`.
pub fn jensen_family(inst: &EquationInstance) -> BTreeSet<TableFun2> {
    let g = inst.carrier();
    let pi = inst.pair_involution();
    let anti = enumerate_additive(inst.semigroup(), g, AdditiveFilter::AntiSymmetric(pi));
    let mut out = BTreeSet::new();
    for a in &anti {
        for c in g.elements() {
            let values = a.table().values().iter().map(|&v| g.add(v, c)).collect();
            out.insert(TableFun2::new(inst.side(), values).expect("cells = side²"));
        }
    }
    out
}

/// `{ u ↦ B(u,u) + T(u) }` over symmetric sign-conditioned biadditive `B` and
/// additive `T` with `T∘π = T`.
pub fn quadratic_family(inst: &EquationInstance) -> BTreeSet<TableFun2> {
    let h = inst.carrier();
    let pi = inst.pair_involution();
    let forms = enumerate_biadditive(inst.semigroup(), h, true, Some(pi));
    let linear = enumerate_additive(inst.semigroup(), h, AdditiveFilter::Symmetric(pi));
    let mut out = BTreeSet::new();
    for b in &forms {
        let diag = b.quadratic_part();
        for t in &linear {
            let values = diag
                .values()
                .iter()
                .zip(t.table().values())
                .map(|(&x, &y)| h.add(x, y))
                .collect();
            out.insert(TableFun2::new(inst.side(), values).expect("cells = side²"));
        }
    }
    out
}

/// The family matching the instance's equation kind. For d'Alembert
/// instances `extended` selects [`dalembert_family_extended`].
pub fn family(inst: &EquationInstance, extended: bool) -> Result<BTreeSet<TableFun2>, FamilyError> {
    match inst.kind() {
        EquationKind::DAlembert if extended => dalembert_family_extended(inst),
        EquationKind::DAlembert => dalembert_family(inst),
        EquationKind::Jensen => Ok(jensen_family(inst)),
        EquationKind::Quadratic => Ok(quadratic_family(inst)),
    }
}

/// Single-variable solution families on `S` with one involution `σ`:
///
/// * d'Alembert: `g = (m + m∘σ)/2`, `m` multiplicative (over `F_{q²}` when
///   `extended`, keeping base-valued results);
/// * Jensen: `g = ψ + a`, `ψ` additive with `ψ∘σ = -ψ`;
/// * quadratic: `g(x) = b(x,x) + ψ(x)`, `b` symmetric biadditive with
///   `b(σx, y) = -b(x, y)`, `ψ` additive with `ψ∘σ = ψ`.
pub fn single_variable_family(
    s: &FiniteSemigroup,
    sigma: &Involution,
    carrier: &Carrier,
    kind: EquationKind,
    extended: bool,
) -> Result<BTreeSet<Vec<Elem>>, FamilyError> {
    let map = sigma.as_slice();
    let n = s.size();
    let mut out = BTreeSet::new();
    match kind {
        EquationKind::DAlembert => {
            if !carrier.is_field() {
                return Err(FamilyError::NeedsField);
            }
            let field = if extended {
                carrier.quadratic_extension()?
            } else {
                carrier.clone()
            };
            for m in multiplicative_maps(s, &field) {
                let g: Vec<Elem> = (0..n)
                    .map(|x| field.halve(field.add(m[x], m[map[x]])))
                    .collect();
                if g.iter().all(|&v| v < carrier.order()) {
                    out.insert(g);
                }
            }
        }
        EquationKind::Jensen => {
            for psi in additive_maps(s, carrier, PairCondition::AntiSymmetric, map) {
                for c in carrier.elements() {
                    out.insert(psi.iter().map(|&v| carrier.add(v, c)).collect());
                }
            }
        }
        EquationKind::Quadratic => {
            let forms = biadditive_maps(s, carrier, true, Some(map));
            let linear = additive_maps(s, carrier, PairCondition::Symmetric, map);
            for b in &forms {
                for psi in &linear {
                    out.insert((0..n).map(|x| carrier.add(b[x * n + x], psi[x])).collect());
                }
            }
        }
    }
    Ok(out)
}
