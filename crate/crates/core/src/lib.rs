//! Sum-capacity analysis of the Gaussian half-duplex causal cognitive
//! interference channel.
//!
//! The crate evaluates the high-SNR generalized degrees of freedom in
//! closed form, the sum-rate outer bounds and the per-regime achievable
//! schemes at finite SNR, and audits the gap between them. A bit-exact
//! linear deterministic model serves as an independent oracle for the
//! cooperative schemes.

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod error;
pub mod gdof;
pub mod inner;
pub mod lda;
pub mod outer;

pub use channel::{
    classify_regime_exponents, classify_regime_gains, gains_from_exponents, ChannelGains, ExponentPoint, Regime,
    Topology,
};
pub use error::{Error, Result};
pub use gdof::{cooperation_classification, gamma_star, gdof_closed_form, gdof_maxmin, GdofResult};
pub use inner::{inner_best, inner_nocoop, InnerBoundEval};
pub use outer::{outer_min, GammaPolicy, OuterBoundEval};
