//! Reconstruction of the solution-formula ingredients from a solution.

use crate::algebra::{Elem, EquationInstance, TableFun2};
use crate::morphisms::{
    has_sign_condition, is_additive, is_biadditive, is_symmetric_form, satisfies_condition,
    BiadditiveForm, PairCondition,
};

use super::{check_equation, VerifyError};

/// `f(u) = B(u, u) + T(u)` with
/// `B(u, r) = (f(u + r) - f(u + π(r))) / 4` and `T(u) = f(u + π(u)) / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticDecomposition {
    /// `B` stored row-major over pairs of pair indices.
    pub form: Vec<Elem>,
    pub linear: TableFun2,
    pub form_symmetric: bool,
    pub form_biadditive: bool,
    pub form_sign_condition: bool,
    pub linear_additive: bool,
    pub linear_symmetric: bool,
    /// Number of cells where `f(u) != B(u, u) + T(u)`.
    pub residual: usize,
}

impl QuadraticDecomposition {
    pub fn is_exact(&self) -> bool {
        self.residual == 0
            && self.form_symmetric
            && self.form_biadditive
            && self.form_sign_condition
            && self.linear_additive
            && self.linear_symmetric
    }

    pub fn form_at(&self, u: usize, v: usize) -> Elem {
        let n = self.linear.side() * self.linear.side();
        self.form[u * n + v]
    }

    /// The reconstructed form as a validated [`BiadditiveForm`].
    pub fn biadditive_form(&self, inst: &EquationInstance) -> Option<BiadditiveForm> {
        BiadditiveForm::new(
            inst.semigroup(),
            inst.carrier(),
            self.form.clone(),
            true,
            Some(inst.pair_involution()),
        )
    }
}

pub fn quadratic_decompose(
    inst: &EquationInstance,
    f: &TableFun2,
) -> Result<QuadraticDecomposition, VerifyError> {
    let violations = check_equation(inst, f)?;
    if let Some(&first) = violations.first() {
        return Err(VerifyError::NotASolution {
            count: violations.len(),
            first,
        });
    }
    let h = inst.carrier();
    let p = inst.square();
    let pi = inst.pair_involution();
    let n = inst.cells();
    let mut form = Vec::with_capacity(n * n);
    for u in 0..n {
        for r in 0..n {
            let diff = h.sub(f.at(p.op(u, r)), f.at(p.op(u, pi.apply(r))));
            form.push(h.quarter(diff));
        }
    }
    let linear = TableFun2::new(
        inst.side(),
        (0..n).map(|u| h.halve(f.at(p.op(u, pi.apply(u))))).collect(),
    )
    .expect("cells = side²");
    let residual = (0..n)
        .filter(|&u| f.at(u) != h.add(form[u * n + u], linear.at(u)))
        .count();
    Ok(QuadraticDecomposition {
        form_symmetric: is_symmetric_form(n, &form),
        form_biadditive: is_biadditive(p, h, &form),
        form_sign_condition: has_sign_condition(h, pi.as_slice(), &form),
        linear_additive: is_additive(p, h, linear.values()),
        linear_symmetric: satisfies_condition(h, pi.as_slice(), linear.values(), PairCondition::Symmetric),
        form,
        linear,
        residual,
    })
}

/// `f = a + c` with `c = f(u + π(u))` (which must not depend on `u`) and
/// `a = f - c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JensenDecomposition {
    /// `None` when `f(u + π(u))` takes more than one value.
    pub constant: Option<Elem>,
    pub additive_part: TableFun2,
    pub additive: bool,
    pub antisymmetric: bool,
}

impl JensenDecomposition {
    pub fn is_exact(&self) -> bool {
        self.constant.is_some() && self.additive && self.antisymmetric
    }
}

pub fn jensen_decompose(inst: &EquationInstance, f: &TableFun2) -> Result<JensenDecomposition, VerifyError> {
    let violations = check_equation(inst, f)?;
    if let Some(&first) = violations.first() {
        return Err(VerifyError::NotASolution {
            count: violations.len(),
            first,
        });
    }
    let g = inst.carrier();
    let p = inst.square();
    let pi = inst.pair_involution();
    let n = inst.cells();
    let mut periods = (0..n).map(|u| f.at(p.op(u, pi.apply(u))));
    let c0 = periods.next().expect("S² is non-empty");
    let constant = periods.all(|c| c == c0).then_some(c0);
    let additive_part = TableFun2::new(
        inst.side(),
        f.values().iter().map(|&v| g.sub(v, c0)).collect(),
    )
    .expect("cells = side²");
    Ok(JensenDecomposition {
        constant,
        additive: is_additive(p, g, additive_part.values()),
        antisymmetric: satisfies_condition(
            g,
            pi.as_slice(),
            additive_part.values(),
            PairCondition::AntiSymmetric,
        ),
        additive_part,
    })
}
