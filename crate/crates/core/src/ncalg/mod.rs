//! Noncommutative polynomials, presented algebras with rewriting normal
//! forms, exact linear algebra and linear maps.

mod algebra;
mod confluence;
pub mod linalg;
mod linmap;
mod poly;
mod presentation;
mod span;
mod tensor;
mod word;

pub use algebra::{is_finite, product, scalar_poly, test_basis, Alg, Algebra, AlgebraOps, FULL_BASIS_CAP, FULL_BASIS_MAX};
pub use confluence::check_confluence;
pub use linmap::{check_map_well_defined, Extension, LinearMap};
pub use poly::{fmt_word, NcPoly};
pub use presentation::{Presentation, RewriteRule};
pub use span::{nonzero, span_dim, subspace_membership, Membership, Span};
pub use tensor::{tensor_basis, TKey, Tensor};
pub use word::Word;
