use thiserror::Error;

use crate::arith::Scalar;

pub type Result<T> = std::result::Result<T, Error>;

/// A codimension-one cell singled out as the reason a computation failed.
#[derive(Debug, Clone, PartialEq)]
pub struct CellWitness {
    /// Index of the cell in the complex's canonical order.
    pub cell: usize,
    /// A point in the relative interior of the cell.
    pub point: Vec<Scalar>,
    /// Endpoints of the dual edge (exponents of the two adjacent chambers).
    pub edge: (Vec<Scalar>, Vec<Scalar>),
    /// w_f(σ) and the extended weight w_g↑(σ).
    pub weight: Scalar,
    pub extended: Scalar,
}

impl CellWitness {
    pub fn deficit(&self) -> Scalar {
        &self.weight - &self.extended
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("witness is not a strictly positive element of the lattice")]
    NoPositiveWitness,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("polytope of dimension < 1")]
    DegeneratePolytope,
    #[error("weight vector has length {got}, complex has {expected} cells")]
    WeightDomainMismatch { expected: usize, got: usize },
    #[error("variety of the divisor is not contained in the variety of the dividend")]
    NotContained,
    #[error("negative weight w_f - w_g = {} on cell {}", .0.deficit(), .0.cell)]
    NegativeWeight(Box<CellWitness>),
    #[error("weights are not balanced at ridge {ridge}")]
    NotBalanced { ridge: usize },
    #[error("fan does not refine the normal fan of the polytope")]
    NotRefined,
    #[error("fans do not refine each other")]
    NotRefining,
    #[error("expansion is not integral")]
    NonIntegral,
    #[error("fan admits no strictly positive balanced weight")]
    NotPolytopal,
    #[error("{what}: size {size} exceeds cap {cap}")]
    TooLarge { what: String, size: usize, cap: usize },
    #[error("ground set too small")]
    TooSmall,
    #[error("weights violate the deformation cone at {0}")]
    NotInCone(String),
    #[error("unsupported root system {0}")]
    UnsupportedType(String),
    #[error("polytope is not compatible with the Coxeter fan")]
    NotAPhiPolytope,
    #[error("point lies on a reflecting hyperplane")]
    PointOnHyperplane,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("radicand {0} is not a square-free integer >= 2")]
    InvalidRadical(u32),
    #[error("length is not in the coefficient field")]
    NotInField,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// True for mathematically negative answers, false for malformed input.
    pub fn is_negative_result(&self) -> bool {
        matches!(
            self,
            Error::NoPositiveWitness
                | Error::NotContained
                | Error::NegativeWeight(_)
                | Error::NotBalanced { .. }
                | Error::NotRefined
                | Error::NotRefining
                | Error::NonIntegral
                | Error::NotPolytopal
                | Error::NotInCone(_)
                | Error::NotAPhiPolytope
                | Error::PointOnHyperplane
                | Error::DegeneratePolytope
                | Error::NotInField
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::NoPositiveWitness => "NoPositiveWitness",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyInput => "EmptyInput",
            Error::DegeneratePolytope => "DegeneratePolytope",
            Error::WeightDomainMismatch { .. } => "WeightDomainMismatch",
            Error::NotContained => "NotContained",
            Error::NegativeWeight(_) => "NegativeWeight",
            Error::NotBalanced { .. } => "NotBalanced",
            Error::NotRefined => "NotRefined",
            Error::NotRefining => "NotRefining",
            Error::NonIntegral => "NonIntegral",
            Error::NotPolytopal => "NotPolytopal",
            Error::TooLarge { .. } => "TooLarge",
            Error::TooSmall => "TooSmall",
            Error::NotInCone(_) => "NotInCone",
            Error::UnsupportedType(_) => "UnsupportedType",
            Error::NotAPhiPolytope => "NotAPhiPolytope",
            Error::PointOnHyperplane => "PointOnHyperplane",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::InvalidRadical(_) => "InvalidRadical",
            Error::NotInField => "NotInField",
            Error::Parse(_) => "Parse",
            Error::Schema(_) => "Schema",
        }
    }
}
