//! Exact integer and rational arithmetic plus the number-theoretic helpers
//! used throughout the workspace.

mod error;
mod factor;
mod modint;
mod nt;
mod rational;

pub use error::MathError;
pub use factor::{factor, factor_u64, is_prime, is_prime_u64, next_prime_u64};
pub use modint::{inv_mod_u64, mul_mod_u64, pow_mod_u64, ModularInt};
pub use nt::{
    ceil_nth_root, euler_phi_u64, is_primitive_root, jacobi, mult_order, rational_reconstruct,
    rational_reconstruct_bounds, squarefree_part,
};
pub use num_bigint::{BigInt, BigUint, Sign};
pub use rational::Rational;

pub type Result<T> = std::result::Result<T, MathError>;
