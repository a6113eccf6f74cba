//! Products of short cycles `C_m^N` (m = 3, 4, 5): vertex enumeration with
//! level-set structure, exact integer adjacency-operator decompositions,
//! adjacency-invariant vertex-function spaces certified by exact rational
//! rank computations, the graph Fourier transform, and a spatio-spectral
//! limiting pipeline with eigenspace classification.

pub mod cli;
pub mod config;
pub mod error;
pub mod exact;
pub mod group;
pub mod intop;
pub mod spaces;
pub mod spectral;
pub mod ssl;

pub use config::{Budget, Tolerances};
pub use error::Error;
pub use group::{GroupElement, LevelSignature, VertexTable};
pub use intop::{CommutatorReport, IntOperator};
pub use spaces::{LevelMatrix, MultiplierSequence, SpaceParams, SubspaceBasis};
pub use spectral::FourierBasis;
pub use ssl::{SslConfig, SslReport};

/// One named exact check with its outcome.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        CheckLine { name: name.into(), pass }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
