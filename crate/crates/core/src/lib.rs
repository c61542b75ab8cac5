pub mod algmod;
pub mod boolring;
pub mod datum;
pub mod error;
pub mod exactla;
pub mod field;
pub mod support;
pub mod ziegler;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
