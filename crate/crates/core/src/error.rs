use thiserror::Error;

use crate::channel::Topology;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite and non-negative, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("fraction {name} must lie in [0, 1], got {value}")]
    InvalidFraction { name: &'static str, value: f64 },

    #[error("gains are not consistent with the {topology} topology: {detail}")]
    TopologyMismatch { topology: Topology, detail: String },

    #[error("cooperation requires C >= S (C = {c}, S = {s})")]
    CooperationPremise { s: f64, c: f64 },

    #[error("scheme {scheme} is not applicable: {detail}")]
    RegimePrecondition { scheme: &'static str, detail: String },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("deterministic model: {0}")]
    LdaConstruction(String),

    #[error("decode failure at {receiver} for block {block} in slot {slot}")]
    DecodeFailure {
        receiver: &'static str,
        block: &'static str,
        slot: usize,
    },

    #[error(
        "gap {gap:.6} bits outside [0, {bound}] at alpha={alpha}, beta={beta}, snr={snr_db} dB"
    )]
    GapViolation {
        alpha: f64,
        beta: f64,
        snr_db: f64,
        gap: f64,
        bound: f64,
    },
}

pub(crate) fn check_nonneg(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

pub(crate) fn check_fraction(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::InvalidFraction { name, value })
    }
}
