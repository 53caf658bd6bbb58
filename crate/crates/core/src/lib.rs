//! Exact spectral invariants of connected uniform hypergraphs.
//!
//! The library computes, in exact rational arithmetic, the characteristic
//! polynomials of the adjacency and Laplacian tensors of a k-uniform
//! hypergraph (through the Macaulay determinant quotient), the algebraic
//! multiplicities of the spectral radius and of the zero Laplacian
//! eigenvalue, and the cardinality and group structure of the associated
//! projective eigenvarieties (through the Smith normal form of the
//! incidence matrix over Z_k). A floating-point side provides the Perron
//! vector via power iteration and the stochastic normalization, with
//! runtime cross-checks between the two paths.
//!
//! Core containers ([`CubicalTensor`], [`Matrix`], [`UniPoly`]) are generic
//! over the scalar type through the [`scalar::Scalar`] bound, so the same
//! assembly code serves the exact rational path and the f64/complex
//! numeric path. Concrete aliases for the common instantiations live at
//! the crate root.

pub mod corpus;
pub mod eigenvariety;
pub mod error;
pub mod hypergraph;
pub mod macaulay;
pub mod matrix;
pub mod multiplicity;
pub mod poly;
pub mod scalar;
pub mod snf;
pub mod spectral;
pub mod tensor;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, IncidenceMatrix, SimpleGraph};
pub use matrix::Matrix;
pub use poly::UniPoly;
pub use tensor::{CubicalTensor, DiagonalScaling};

/// Arbitrary-precision integer used throughout the exact path.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar.
pub type Rat = num_rational::BigRational;
/// Double-precision complex scalar for eigenvector residual checks.
pub type Cplx = num_complex::Complex64;

/// Tensor with exact rational entries (adjacency, Laplacian, ...).
pub type RatTensor = CubicalTensor<Rat>;
/// Tensor with f64 entries (power iteration, stochastic checks).
pub type FloatTensor = CubicalTensor<f64>;
/// Tensor with complex entries (eigen-equation residuals).
pub type CplxTensor = CubicalTensor<Cplx>;

/// Dense matrix with exact rational entries.
pub type RatMatrix = Matrix<Rat>;
/// Dense matrix with arbitrary-precision integer entries.
pub type IntMatrix = Matrix<Int>;

/// Univariate polynomial with exact rational coefficients.
pub type RatPoly = UniPoly<Rat>;

/// Size caps shared by the Macaulay and enumeration paths.
///
/// `monomial_cap` bounds the Macaulay basis size |S| = C(n(k-1), n-1);
/// anything larger is refused rather than silently ground through.
/// `enum_cap` bounds the k^n state space of brute-force phase
/// enumeration; past it the SNF kernel construction is used instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub monomial_cap: usize,
    pub enum_cap: u64,
}

impl Limits {
    pub const DEFAULT_MONOMIAL_CAP: usize = 1500;
    pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

    pub fn new(monomial_cap: usize, enum_cap: u64) -> Self {
        Self {
            monomial_cap,
            enum_cap,
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            monomial_cap: Self::DEFAULT_MONOMIAL_CAP,
            enum_cap: Self::DEFAULT_ENUM_CAP,
        }
    }
}
