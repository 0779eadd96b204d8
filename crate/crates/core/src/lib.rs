//! Exact computation of bases of cusp form spaces S_k(Gamma_0(N), chi).
//!
//! The space is realized inside the first cohomology of SL_2(Z) with values
//! in a coinduced polynomial module: a relations matrix for the elliptic
//! generators is assembled, its nullspace is cut down by a cusp-counting
//! correction, and q-expansions are produced by driving Hecke operators
//! (expanded through Heilbronn matrix sets) against kernel elements of the
//! boundary map. Everything is computed over Q or a cyclotomic field
//! Q(zeta_m); no floating point is used anywhere in the pipeline.
//!
//! Module layout mirrors the pipeline stages:
//! - [`arith`]: rationals, cyclotomic numbers, 2x2 integer matrices.
//! - [`chars`]: Dirichlet characters as lookup tables.
//! - [`p1cosets`]: P^1(Z/NZ) and coset representatives of Gamma_0(N).
//! - [`polyaction`]: homogeneous polynomials and the matrix action.
//! - [`exactla`]: dense exact linear algebra (rref, nullspace).
//! - [`cohomology`]: action matrices on the coinduced module, relations matrix.
//! - [`cuspdim`]: cusp classes, sign bookkeeping, dimension of the space.
//! - [`hecke`]: Heilbronn/Merel matrix sets and Hecke coefficient columns.
//! - [`basis`]: kernel element selection and q-expansion basis assembly.
//! - [`bench`]: timed sweeps, growth-exponent fits, Hecke set census.

pub mod arith;
pub mod basis;
pub mod bench;
pub mod chars;
pub mod cohomology;
pub mod cuspdim;
pub mod exactla;
pub mod hecke;
pub mod p1cosets;
pub mod polyaction;

pub use arith::{xgcd, BigRat, CycloNum, Field, Mat2Z};
pub use basis::{compute_basis, Mode, QExpansionBasis};
pub use chars::{CharSpec, DirichletChar};
pub use cohomology::ModularContext;
pub use exactla::ExactMat;
pub use p1cosets::CosetTable;

/// Errors surfaced by the library. Precondition violations that can only be
/// reached through programmer error (mixing cyclotomic orders, inverting
/// zero) panic instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("gcd undefined for (0, 0)")]
    GcdUndefined,
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("character not evaluable: {0}")]
    NotEvaluable(String),
    #[error("({c}, {d}) is not in P^1(Z/{modulus}Z)")]
    NotInP1 { c: i64, d: i64, modulus: u64 },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("cusp pairing inconsistent: {0}")]
    CuspPairing(String),
    #[error("inconsistent pipeline: {0}")]
    Inconsistent(String),
    #[error("probe mode failed: {0}")]
    ProbeFailed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
