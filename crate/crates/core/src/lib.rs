//! Knot Floer homology of the pretzel knots `P(2a, -2b-1, ±(2c+1))` by
//! pairing immersed tangle curves.

pub mod alexander_oracle;
pub mod algebra;
pub mod geom_oracle;
pub mod hfk;
pub mod pairing;
pub mod tangle_curves;

pub use alexander_oracle::{pretzel_alexander, pretzel_determinant, DiagramError};
pub use algebra::{
    euler_characteristic, AlgebraError, Coefficient, Generator, GeneratorMultiset, HalfInteger, LaurentPoly,
};
pub use geom_oracle::GeomError;
pub use hfk::{classify, classify_table, compute_hfk, verify, Classification, HfkError, HfkTable, VerificationReport};
pub use pairing::PairingError;
pub use tangle_curves::{ClosureSign, CurveError, CurveKind, GradedCurve, ReducedSlope, TangleParams};

/// Laurent polynomials with arbitrary-precision coefficients.
pub type LaurentPolynomial = LaurentPoly<num_bigint::BigInt>;
/// Laurent polynomials with machine-word coefficients.
pub type SmallLaurentPolynomial = LaurentPoly<i64>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Hfk(#[from] HfkError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
