pub mod abelian;
pub mod functor;
pub mod matrix;
pub mod modq;
pub mod snf;
pub mod sparse;

pub use abelian::AbelianGroupPresentation;
pub use functor::{binomial, exterior_power_matrix, index_tuples, kron_tensor};
pub use matrix::IntegerMatrix;
pub use modq::{is_prime, rank_mod_q};
pub use snf::{cokernel, invariant_factors, kernel_basis, rank, snf, solve, subquotient, SmithDecomposition};
pub use sparse::SparseMatrix;
