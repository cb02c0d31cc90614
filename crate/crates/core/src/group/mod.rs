//! The concrete groups: `H_a ⊂ ℚ`, Prüfer groups, finite cyclic groups,
//! a-adic integers and solenoid points.

pub mod aadic;
pub mod dual;
pub mod profile;
pub mod solenoid;
pub mod subgroup;

pub use aadic::AadicInteger;
pub use dual::{DualElement, Host};
pub use profile::{Multiplicity, PrimeProfile};
pub use solenoid::{character_eval, Phase, SolenoidPoint};
pub use subgroup::SubgroupSpec;
