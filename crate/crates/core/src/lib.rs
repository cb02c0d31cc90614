//! Exact arithmetic for a-adic solenoids, their dual groups, and
//! characteristic-function identities of Heyde type.

pub mod charfn;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod finmodel;
pub mod group;
pub mod number;
pub mod rational;
pub mod render;
pub mod suite;
pub mod value;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
