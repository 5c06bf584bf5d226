//! Exact arithmetic in `Z[zeta_n]`, `Q(zeta_n)` and polynomials over them.

mod int;
mod phi;
mod poly;
mod rat;

pub use int::CycInt;
pub use phi::cyclotomic_polynomial;
pub use poly::CycPoly;
pub use rat::CycRat;
