//! Membership of a d'Alembert-type solution in the family
//! `{ (χ + χ∘π)/2 : χ multiplicative }`, escalating to `F_{q²}` when no
//! witness exists over `F_q`.
//!
//! Routes, tried in order:
//!
//! 1. `f` itself is multiplicative with `f∘π = f`, so `χ = f`.
//! 2. Square-root construction: pick a base point `b` with
//!    `F(u) = f(u + b) - f(u + π(b))` nonzero at some `u₀`, set
//!    `h₀ = F(u₀)⁻¹ (f(2u₀) - f(u₀)²)` and solve `α² = F(u₀)⁻¹ h₀`; then
//!    `χ = f + αF`. Only accepted after exhaustive verification.
//! 3. Direct search over every multiplicative `χ`.
//!
//! Base-field witnesses are always preferred over extension witnesses, so
//! [`WitnessField::Extension`] means no base-field witness exists.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::{Carrier, Elem, EquationInstance};
use crate::morphisms::{is_multiplicative, multiplicative_maps};
use crate::TableFun2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WitnessField {
    Base,
    Extension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessRoute {
    Multiplicative,
    SquareRoot,
    Search,
}

/// A multiplicative `χ` with `f = (χ + χ∘π)/2`. Extension values use the
/// extension's indices, where base elements keep their own index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DalembertWitness {
    pub chi: Vec<Elem>,
    pub field: WitnessField,
    pub route: WitnessRoute,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(DalembertWitness),
    NotMember,
}

impl Membership {
    pub fn witness(&self) -> Option<&DalembertWitness> {
        match self {
            Membership::Member(w) => Some(w),
            Membership::NotMember => None,
        }
    }
}

/// Membership oracle for one instance; the direct-search indexes are built
/// on first use and shared across queries.
pub struct DalembertMembership<'a> {
    inst: &'a EquationInstance,
    extension: Option<Carrier>,
    base_index: OnceLock<BTreeMap<Vec<Elem>, Vec<Elem>>>,
    ext_index: OnceLock<BTreeMap<Vec<Elem>, Vec<Elem>>>,
}

impl<'a> DalembertMembership<'a> {
    /// `allow_extension` enables witnesses over `F_{q²}`. The instance must
    /// have a field carrier.
    pub fn new(inst: &'a EquationInstance, allow_extension: bool) -> Self {
        assert!(inst.carrier().is_field(), "membership needs a field carrier");
        let extension = allow_extension
            .then(|| inst.carrier().quadratic_extension().ok())
            .flatten();
        DalembertMembership {
            inst,
            extension,
            base_index: OnceLock::new(),
            ext_index: OnceLock::new(),
        }
    }

    fn formula(&self, field: &Carrier, chi: &[Elem]) -> Vec<Elem> {
        let pi = self.inst.pair_involution();
        (0..chi.len())
            .map(|u| field.halve(field.add(chi[u], chi[pi.apply(u)])))
            .collect()
    }

    fn is_witness(&self, field: &Carrier, chi: &[Elem], f: &TableFun2) -> bool {
        is_multiplicative(self.inst.square(), field, chi) && self.formula(field, chi) == f.values()
    }

    fn index(&self, field: &Carrier) -> BTreeMap<Vec<Elem>, Vec<Elem>> {
        let mut index = BTreeMap::new();
        for chi in multiplicative_maps(self.inst.square(), field) {
            index.entry(self.formula(field, &chi)).or_insert(chi);
        }
        index
    }

    /// The square-root construction over `field`, if it applies.
    fn square_root_witness(&self, field: &Carrier, f: &TableFun2) -> Option<Vec<Elem>> {
        let inst = self.inst;
        let p = inst.square();
        let pi = inst.pair_involution();
        let n = inst.cells();
        for b in 0..n {
            let shifted = pi.apply(b);
            let big_f: Vec<Elem> = (0..n)
                .map(|u| field.sub(f.at(p.op(u, b)), f.at(p.op(u, shifted))))
                .collect();
            let Some(u0) = (0..n).find(|&u| big_f[u] != 0) else {
                continue;
            };
            let inv = field.inv(big_f[u0])?;
            let fu0 = f.at(u0);
            let h0 = field.mul(inv, field.sub(f.at(p.op(u0, u0)), field.mul(fu0, fu0)));
            let alpha = field.sqrt(field.mul(inv, h0))?;
            let chi: Vec<Elem> = (0..n)
                .map(|u| field.add(f.at(u), field.mul(alpha, big_f[u])))
                .collect();
            return self.is_witness(field, &chi, f).then_some(chi);
        }
        None
    }

    pub fn check(&self, f: &TableFun2) -> Membership {
        let base = self.inst.carrier();
        if f.side() != self.inst.side() || f.values().iter().any(|&v| v >= base.order()) {
            return Membership::NotMember;
        }
        let member = |chi: Vec<Elem>, field, route| {
            Membership::Member(DalembertWitness { chi, field, route })
        };
        if self.is_witness(base, f.values(), f) {
            return member(f.values().to_vec(), WitnessField::Base, WitnessRoute::Multiplicative);
        }
        if let Some(chi) = self.square_root_witness(base, f) {
            return member(chi, WitnessField::Base, WitnessRoute::SquareRoot);
        }
        let base_index = self.base_index.get_or_init(|| self.index(base));
        if let Some(chi) = base_index.get(f.values()) {
            return member(chi.clone(), WitnessField::Base, WitnessRoute::Search);
        }
        let Some(ext) = &self.extension else {
            return Membership::NotMember;
        };
        if let Some(chi) = self.square_root_witness(ext, f) {
            return member(chi, WitnessField::Extension, WitnessRoute::SquareRoot);
        }
        let ext_index = self.ext_index.get_or_init(|| self.index(ext));
        match ext_index.get(f.values()) {
            Some(chi) => member(chi.clone(), WitnessField::Extension, WitnessRoute::Search),
            None => Membership::NotMember,
        }
    }
}

/// One-off membership query; see [`DalembertMembership`] for batches.
pub fn membership_dalembert(inst: &EquationInstance, f: &TableFun2, allow_extension: bool) -> Membership {
    DalembertMembership::new(inst, allow_extension).check(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_carrier, CarrierSpec, EquationKind, FiniteSemigroup, Involution};

    fn z3_instance(q: u32) -> EquationInstance {
        let s = FiniteSemigroup::cyclic(3);
        let neg = Involution::negation(&s).unwrap();
        let id = Involution::identity(&s);
        EquationInstance::new(
            s,
            neg,
            id,
            make_carrier(&CarrierSpec::GaloisField(q)).unwrap(),
            EquationKind::DAlembert,
        )
        .unwrap()
    }

    #[test]
    fn constant_one_is_its_own_witness() {
        let inst = z3_instance(5);
        let m = membership_dalembert(&inst, &TableFun2::constant(3, 1), false);
        let w = m.witness().unwrap();
        assert_eq!(w.chi, vec![1; 9]);
        assert_eq!(w.field, WitnessField::Base);
        assert_eq!(w.route, WitnessRoute::Multiplicative);
    }

    #[test]
    fn cosine_like_solution_needs_extension() {
        // f(x, z) = (ω^x + ω^-x)/2 with ω a cube root of unity: 1 at x = 0 and
        // -1/2 = 2 in F_5 elsewhere. F_5 has no primitive cube root of unity.
        let inst = z3_instance(5);
        let f = TableFun2::from_fn(3, |x, _| if x == 0 { 1 } else { 2 });
        assert_eq!(membership_dalembert(&inst, &f, false), Membership::NotMember);
        let m = membership_dalembert(&inst, &f, true);
        let w = m.witness().expect("witness over F_25");
        assert_eq!(w.field, WitnessField::Extension);
        assert_eq!(w.route, WitnessRoute::SquareRoot);
    }

    #[test]
    fn same_solution_has_base_witness_over_f7() {
        // 7 ≡ 1 mod 3, so the cube roots of unity are in F_7
        let inst = z3_instance(7);
        // -1/2 = 3 in F_7
        let f = TableFun2::from_fn(3, |x, _| if x == 0 { 1 } else { 3 });
        let m = membership_dalembert(&inst, &f, true);
        assert_eq!(m.witness().unwrap().field, WitnessField::Base);
    }

    #[test]
    fn non_solution_is_not_a_member() {
        let inst = z3_instance(5);
        let f = TableFun2::from_fn(3, |x, z| ((x + z) % 5) as Elem);
        assert_eq!(membership_dalembert(&inst, &f, true), Membership::NotMember);
    }
}
