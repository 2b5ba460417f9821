//! Spectral-set checks in one dimension: transforms of indicators, exact zero
//! tests through cyclotomic polynomials, and Fejér kernel identities.

pub mod cyclotomic;
pub mod expsum;
pub mod fejer;
pub mod fourier;
pub mod tail;

pub use expsum::ExpSum;
pub use fejer::{fejer_eval, fejer_ft, fejer_partition_check, FejerParams, PartitionReport};
pub use fourier::{
    completeness_check, ft_indicator, ft_indicator_rational, ft_zero_exact, orthogonality_check,
    CompletenessReport, OrthogonalityReport, SpectrumCandidate,
};
