//! Channel parameterization and regime classification.
//!
//! Gains are linear powers: `S` on both direct links, `C` on the
//! cooperation link and `I_p`, `I_c` on the two cross links. Exponent
//! points describe the same channel at high SNR through `I = SNR^alpha`
//! and `C = SNR^beta`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_nonneg, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Symmetric,
    /// The primary transmitter does not reach the cognitive receiver.
    Z,
    /// The cognitive transmitter does not reach the primary receiver.
    S,
}

impl Topology {
    pub const ALL: [Topology; 3] = [Topology::Symmetric, Topology::Z, Topology::S];

    /// Constant gap guaranteed over all channel gains, in bits.
    pub fn theorem_gap_bits(self) -> f64 {
        match self {
            Topology::Symmetric => 8.5048,
            Topology::Z => 4.507,
            Topology::S => 5.0,
        }
    }

    pub fn region_count(self) -> u8 {
        match self {
            Topology::Symmetric => 10,
            Topology::Z | Topology::S => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Symmetric => "sym",
            Topology::Z => "z",
            Topology::S => "s",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Topology {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sym" | "symmetric" => Ok(Topology::Symmetric),
            "z" => Ok(Topology::Z),
            "s" => Ok(Topology::S),
            other => Err(format!("unknown topology '{other}' (expected sym, z or s)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelGains {
    pub s: f64,
    pub c: f64,
    pub i_p: f64,
    pub i_c: f64,
}

impl ChannelGains {
    pub fn new(s: f64, c: f64, i_p: f64, i_c: f64) -> Result<Self> {
        Ok(ChannelGains {
            s: check_nonneg("S", s)?,
            c: check_nonneg("C", c)?,
            i_p: check_nonneg("I_p", i_p)?,
            i_c: check_nonneg("I_c", i_c)?,
        })
    }

    /// Builds gains for `topology` from a single interference level `i`.
    pub fn for_topology(topology: Topology, s: f64, i: f64, c: f64) -> Result<Self> {
        match topology {
            Topology::Symmetric => Self::new(s, c, i, i),
            Topology::Z => Self::new(s, c, 0.0, i),
            Topology::S => Self::new(s, c, i, 0.0),
        }
    }

    /// The interference level of the live cross link(s).
    pub fn interference(&self, topology: Topology) -> f64 {
        match topology {
            Topology::Symmetric | Topology::S => self.i_p,
            Topology::Z => self.i_c,
        }
    }

    pub fn check_topology(&self, topology: Topology) -> Result<()> {
        let detail = match topology {
            Topology::Symmetric if self.i_p != self.i_c => {
                format!("I_p = {} differs from I_c = {}", self.i_p, self.i_c)
            }
            Topology::Z if self.i_p != 0.0 => format!("I_p = {} must be 0", self.i_p),
            Topology::S if self.i_c != 0.0 => format!("I_c = {} must be 0", self.i_c),
            _ => return Ok(()),
        };
        Err(Error::TopologyMismatch { topology, detail })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPoint {
    pub alpha: f64,
    pub beta: f64,
    pub topology: Topology,
}

impl ExponentPoint {
    pub fn new(alpha: f64, beta: f64, topology: Topology) -> Result<Self> {
        Ok(ExponentPoint {
            alpha: check_nonneg("alpha", alpha)?,
            beta: check_nonneg("beta", beta)?,
            topology,
        })
    }
}

pub fn snr_linear(snr_db: f64) -> f64 {
    10f64.powf(snr_db / 10.0)
}

pub fn gains_from_exponents(point: &ExponentPoint, snr_db: f64) -> Result<ChannelGains> {
    check_nonneg("alpha", point.alpha)?;
    check_nonneg("beta", point.beta)?;
    if !snr_db.is_finite() {
        return Err(Error::InvalidParameter {
            name: "snr_db",
            value: snr_db,
        });
    }
    let snr = snr_linear(snr_db);
    ChannelGains::for_topology(
        point.topology,
        snr,
        snr.powf(point.alpha),
        snr.powf(point.beta),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Regime {
    pub topology: Topology,
    pub index: u8,
    pub label: &'static str,
    pub gap_constant_bits: f64,
    /// The per-regime constant is inherited from the full-duplex channel.
    pub fd_cited: bool,
}

struct RegimeInfo {
    label: &'static str,
    gap: f64,
    fd_cited: bool,
}

const fn info(label: &'static str, gap: f64, fd_cited: bool) -> RegimeInfo {
    RegimeInfo {
        label,
        gap,
        fd_cited,
    }
}

const SYMMETRIC_REGIMES: [RegimeInfo; 10] = [
    info("Very Strong Interference 1", 1.0, true),
    info("Very Strong Interference 2", 2.507, false),
    info("Very Strong Interference 3", 5.0, false),
    info("Strong Interference", 1.0, true),
    info("Moderately Weak Interference", 3.0, true),
    info("Weak Interference 1", 6.32, true),
    info("Weak Interference 2", 5.5048, false),
    info("Weak Interference 3", 8.5048, false),
    info("Weak Interference 4", 7.5048, false),
    info("Weak Interference 5", 7.5048, false),
];

const Z_REGIMES: [RegimeInfo; 5] = [
    info("Very Strong Interference 1", 1.0, true),
    info("Very Strong Interference 2", 2.507, false),
    info("Very Strong Interference 3", 4.507, false),
    info("Strong Interference", 1.0, true),
    info("Weak Interference", 1.0, true),
];

const S_REGIMES: [RegimeInfo; 5] = [
    info("Very Strong Interference", 0.0, true),
    info("Weak Cooperation", 2.0, true),
    info("Weak Interference 1", 4.0, false),
    info("Strong Interference", 4.0, false),
    info("Weak Interference 2", 5.0, false),
];

impl Regime {
    /// Looks up region `index` (1-based) of `topology`.
    pub fn lookup(topology: Topology, index: u8) -> Option<Regime> {
        let table: &[RegimeInfo] = match topology {
            Topology::Symmetric => &SYMMETRIC_REGIMES,
            Topology::Z => &Z_REGIMES,
            Topology::S => &S_REGIMES,
        };
        let entry = table.get(usize::from(index).checked_sub(1)?)?;
        Some(Regime {
            topology,
            index,
            label: entry.label,
            gap_constant_bits: entry.gap,
            fd_cited: entry.fd_cited,
        })
    }

    fn of(topology: Topology, index: u8) -> Regime {
        Self::lookup(topology, index).expect("region index within table")
    }
}

pub fn classify_regime_exponents(point: &ExponentPoint) -> Regime {
    let (a, b) = (point.alpha, point.beta);
    let index = match point.topology {
        Topology::Symmetric => {
            if a >= 2.0 {
                very_strong_split(b)
            } else if a >= 1.0 {
                4
            } else if a >= 2.0 / 3.0 {
                5
            } else if a >= 0.5 {
                if b <= 2.0 * a - 1.0 {
                    6
                } else if b <= 2.0 * a {
                    7
                } else {
                    8
                }
            } else if b <= 2.0 - 2.0 * a {
                9
            } else {
                10
            }
        }
        Topology::Z => {
            if a >= 2.0 {
                very_strong_split(b)
            } else if a >= 1.0 {
                4
            } else {
                5
            }
        }
        Topology::S => {
            if a >= 2.0 {
                1
            } else if b <= a.max(1.0) {
                2
            } else if a < 1.0 {
                if b <= 2.0 - a {
                    3
                } else {
                    5
                }
            } else {
                4
            }
        }
    };
    Regime::of(point.topology, index)
}

fn very_strong_split(b: f64) -> u8 {
    if b <= 1.0 {
        1
    } else if b <= 2.0 {
        2
    } else {
        3
    }
}

/// Ratio `num/den` with `x/0 = +inf` and `0/0 = +inf`, so a strict
/// comparison `C > num/den` is false when the denominator vanishes.
fn ratio_or_inf(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        f64::INFINITY
    }
}

/// Classifies finite-SNR gains; this is the classifier that selects schemes.
pub fn classify_regime_gains(gains: &ChannelGains, topology: Topology) -> Result<Regime> {
    gains.check_topology(topology)?;
    let s = gains.s;
    let c = gains.c;
    let i = gains.interference(topology);
    let very_strong = i > 0.0 && i >= s * (1.0 + s);
    let gain_split = |c: f64| {
        if c <= s {
            1
        } else if c <= s * (s + 1.0) {
            2
        } else {
            3
        }
    };
    let index = match topology {
        Topology::Symmetric => {
            if i == 0.0 || i * (i + 1.0) < s {
                if c > ratio_or_inf(s * s, i * i) {
                    10
                } else {
                    9
                }
            } else if very_strong {
                gain_split(c)
            } else if s <= i {
                4
            } else if s * (s + 1.0) <= i * (i + 1.0) * (i + 1.0) {
                5
            } else if c <= ratio_or_inf(i * i, s) {
                6
            } else if c <= i * i {
                7
            } else {
                8
            }
        }
        Topology::Z => {
            if very_strong {
                gain_split(c)
            } else if i > 0.0 && s <= i {
                4
            } else {
                5
            }
        }
        Topology::S => {
            if very_strong {
                1
            } else if i > 0.0 && s <= i {
                if c > i {
                    4
                } else {
                    2
                }
            } else if c <= s {
                2
            } else if c <= ratio_or_inf(s * s, i) {
                3
            } else {
                5
            }
        }
    };
    Ok(Regime::of(topology, index))
}
