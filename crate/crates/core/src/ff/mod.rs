//! Prime fields, their extensions, and multiplicative characters.

pub mod arith;
mod character;
mod field;
pub mod poly;

pub use arith::legendre_symbol;
pub use character::{char_of_order_l_via_norm, MultChar};
pub use field::{
    make_extension, make_prime_field, FieldConfig, FieldCtx, FieldElement, Tables, NO_LOG,
};
