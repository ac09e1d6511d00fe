//! Exact computations around the Weak Lefschetz Property for ideals
//! `(x_1^a, .., x_n^a, (x_1 + .. + x_n)^a)`: revlex initial ideals, Hilbert
//! functions, multiplication-map ranks, kernel witnesses and lattice paths.

pub mod error;
pub mod extension;
pub mod field;
pub mod form;
pub mod generators;
pub mod hilbert;
pub mod linalg;
pub mod monomial;
pub mod paths;
pub mod quotient;
pub mod rng;
pub mod subsets;
pub mod witness;

pub use error::{Error, Result};
pub use field::{Ring, Scalar, Zp};
pub use generators::{Case, GeneratorSet};
pub use linalg::{EchelonResult, FieldTag, Matrix};
pub use monomial::Monomial;

pub type Rational = num_rational::BigRational;
pub type Count = num_bigint::BigUint;
pub type RationalMatrix = linalg::Matrix<Rational>;
pub type IntMatrix = linalg::Matrix<num_bigint::BigInt>;
pub type Fp61 = field::Zp<{ field::MERSENNE_61 }>;
