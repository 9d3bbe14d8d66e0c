//! Sum-rate outer bounds and their optimization over the listening fraction.
//!
//! At fixed gains every bound is an affine function of gamma, or the
//! minimum of two, so the coefficients are computed once per gains tuple.

use serde::Serialize;

use crate::channel::ChannelGains;
use crate::error::{check_fraction, Result};

pub const CS_CONSTANT: f64 = 2.507;
pub const DT_LISTEN_CONSTANT: f64 = 3.0;
pub const DT_COOP_CONSTANT: f64 = 2.0;
pub const PV_CONSTANT: f64 = 3.5048;

const GRID_STEP: f64 = 1e-3;

/// `constant + gamma * listen + (1 - gamma) * transmit`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPiece {
    pub constant: f64,
    pub listen: f64,
    pub transmit: f64,
}

impl BoundPiece {
    pub fn eval(&self, gamma: f64) -> f64 {
        if self.listen.is_infinite() || self.transmit.is_infinite() {
            return f64::INFINITY;
        }
        self.constant + gamma * self.listen + (1.0 - gamma) * self.transmit
    }
}

/// The affine pieces of all three bounds at one gains tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterPieces {
    pub cs: [BoundPiece; 2],
    pub dt: [BoundPiece; 2],
    pub pv: BoundPiece,
}

/// Interference ratio `max(I, S)/I`, replaced by `(1 + S)/(1 + I)` at `I = 0`.
fn interference_ratio(i: f64, s: f64) -> f64 {
    if i > 0.0 {
        i.max(s) / i
    } else {
        (1.0 + s) / (1.0 + i)
    }
}

/// `S/I` with `S/0 = inf` for `S > 0` and `0/0 = 0`.
fn snr_over(s: f64, i: f64) -> f64 {
    if i > 0.0 {
        s / i
    } else if s > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

impl OuterPieces {
    pub fn new(g: &ChannelGains) -> Self {
        let ChannelGains { s, c, i_p, i_c } = *g;
        let (rs, rp, rc) = (s.sqrt(), i_p.sqrt(), i_c.sqrt());
        let cs = [
            BoundPiece {
                constant: CS_CONSTANT,
                listen: (1.0 + s + c).log2(),
                transmit: 2.0 * (1.0 + s).log2(),
            },
            BoundPiece {
                constant: CS_CONSTANT,
                listen: (1.0 + s + i_p).log2(),
                transmit: (1.0
                    + (rs + rc).powi(2)
                    + (rs + rp).powi(2)
                    + (s + (i_p * i_c).sqrt()).powi(2))
                .log2(),
            },
        ];
        let dt = [
            BoundPiece {
                constant: DT_LISTEN_CONSTANT,
                listen: (1.0 + s).log2(),
                transmit: (interference_ratio(i_c, s) * (1.0 + (rs + rc).powi(2))).log2(),
            },
            BoundPiece {
                constant: DT_COOP_CONSTANT,
                listen: (1.0 + c + i_p.max(s)).log2(),
                transmit: (interference_ratio(i_p, s) * (1.0 + (rs + rp).powi(2))).log2(),
            },
        ];
        let pv = BoundPiece {
            constant: PV_CONSTANT,
            listen: (1.0 + s + c + i_p).log2(),
            transmit: (1.0 + i_p + snr_over(s, i_c)).log2() + (1.0 + i_c + snr_over(s, i_p)).log2(),
        };
        OuterPieces { cs, dt, pv }
    }

    pub fn cs(&self, gamma: f64) -> f64 {
        self.cs[0].eval(gamma).min(self.cs[1].eval(gamma))
    }

    pub fn dt(&self, gamma: f64) -> f64 {
        self.dt[0].eval(gamma).min(self.dt[1].eval(gamma))
    }

    pub fn pv(&self, gamma: f64) -> f64 {
        self.pv.eval(gamma)
    }

    pub fn min(&self, gamma: f64) -> f64 {
        self.cs(gamma).min(self.dt(gamma)).min(self.pv(gamma))
    }

    fn eval(&self, gamma: f64) -> OuterBoundEval {
        let (cs_bits, dt_bits, pv_bits) = (self.cs(gamma), self.dt(gamma), self.pv(gamma));
        OuterBoundEval {
            cs_bits,
            dt_bits,
            pv_bits,
            min_bits: cs_bits.min(dt_bits).min(pv_bits),
            gamma,
        }
    }
}

pub fn bound_cs(gains: &ChannelGains, gamma: f64) -> f64 {
    OuterPieces::new(gains).cs(gamma)
}

pub fn bound_dt(gains: &ChannelGains, gamma: f64) -> f64 {
    OuterPieces::new(gains).dt(gamma)
}

pub fn bound_pv(gains: &ChannelGains, gamma: f64) -> f64 {
    OuterPieces::new(gains).pv(gamma)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaPolicy {
    Fixed(f64),
    Optimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OuterBoundEval {
    pub cs_bits: f64,
    pub dt_bits: f64,
    pub pv_bits: f64,
    pub min_bits: f64,
    pub gamma: f64,
}

pub fn outer_min(gains: &ChannelGains, policy: GammaPolicy) -> Result<OuterBoundEval> {
    let pieces = OuterPieces::new(gains);
    match policy {
        GammaPolicy::Fixed(gamma) => Ok(pieces.eval(check_fraction("gamma", gamma)?)),
        GammaPolicy::Optimize => Ok(pieces.eval(optimize_gamma(&pieces))),
    }
}

fn optimize_gamma(pieces: &OuterPieces) -> f64 {
    let n = (1.0 / GRID_STEP).round() as usize;
    let mut best_gamma = 0.0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..=n {
        let g = k as f64 / n as f64;
        let v = pieces.min(g);
        if v > best {
            best = v;
            best_gamma = g;
        }
    }
    let lo = (best_gamma - GRID_STEP).max(0.0);
    let hi = (best_gamma + GRID_STEP).min(1.0);
    let (g, v) = golden_section_max(|g| pieces.min(g), lo, hi, 1e-12);
    if v > best {
        g
    } else {
        best_gamma
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
