//! Finite carriers: semigroups, involutions, coefficient structures, and
//! equation instances over them.

pub mod carrier;
pub mod instance;
pub mod involution;
pub mod semigroup;
pub mod table;

pub use carrier::{make_carrier, Carrier, CarrierError, CarrierKind, CarrierSpec, Elem};
pub use instance::{parse_instance, EquationInstance, EquationKind, InstanceError, ParseError};
pub use involution::{
    enumerate_involutions, square_pair_involution, Involution, InvolutionError, PairInvolution,
};
pub use semigroup::{FiniteSemigroup, SemigroupError};
pub use table::TableFun2;
