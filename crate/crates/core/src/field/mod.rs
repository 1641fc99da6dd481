//! Exact arithmetic in F_p[x] and its quotient fields.

mod irreducible;
mod model;
mod poly;

pub use irreducible::{enumerate_irreducibles, irreducible_count, is_irreducible};
pub use model::{rank_mod_p, FieldElem, FieldModel};
pub use poly::{is_prime, parse_poly, Poly};
