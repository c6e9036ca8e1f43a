//! Exhaustive solving and verification of two-variable functional equations
//! with involutions over finite commutative semigroups.
//!
//! For a finite commutative semigroup `S` with involutions `σ, τ` and an
//! odd-order carrier, the crate handles three equations on `f : S² → K`:
//!
//! ```text
//! d'Alembert:  f(x+y, z+w) + f(x+σy, z+τw) = 2 f(x,z) f(y,w)
//! Jensen:      f(x+y, z+w) + f(x+σy, z+τw) = 2 f(x,z)
//! quadratic:   f(x+y, z+w) + f(x+σy, z+τw) = 2 f(x,z) + 2 f(y,w)
//! ```
//!
//! [`solver`] finds every solution by exhaustive search, [`families`] builds
//! the closed-form solution families, and [`verify`] compares the two.

pub mod algebra;
pub mod cli;
pub mod families;
pub mod morphisms;
pub mod solver;
pub mod verify;

pub use algebra::{
    make_carrier, parse_instance, Carrier, CarrierSpec, Elem, EquationInstance, EquationKind,
    FiniteSemigroup, Involution, TableFun2,
};
pub use families::{single_variable_family, dalembert_family, dalembert_family_extended, family, jensen_family, quadratic_family};
pub use solver::{brute_force, seeded_brute_force, solve, SolveError, SolveOutcome, SolverConfig};
