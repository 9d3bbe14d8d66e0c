//! SNR sweeps, constant-gap audits and region maps.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{classify_regime_exponents, classify_regime_gains, gains_from_exponents, ExponentPoint, Regime, Topology};
use crate::error::{Error, Result};
use crate::gdof::{cooperation_classification, gdof_closed_form};
use crate::inner::{inner_best, inner_best_optimized, SchemeId};
use crate::outer::{outer_min, GammaPolicy};

/// Slack below zero tolerated before a gap counts as negative.
pub const GAP_TOLERANCE: f64 = 1e-9;

/// Inclusive arithmetic range `lo, lo + step, ..., <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
            return Err(Error::InvalidRange(format!("{lo}:{hi}:{step} is not finite")));
        }
        if lo > hi {
            return Err(Error::InvalidRange(format!("lo {lo} exceeds hi {hi}")));
        }
        if step <= 0.0 {
            return Err(Error::InvalidRange(format!("step must be positive, got {step}")));
        }
        Ok(SweepRange { lo, hi, step })
    }

    /// Points rounded to 12 decimals so that grids hit decimal boundaries.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|k| ((self.lo + k as f64 * self.step) * 1e12).round() / 1e12)
            .collect()
    }
}

impl FromStr for SweepRange {
    type Err = Error;

    /// Parses `lo:hi:step`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidRange(format!("expected lo:hi:step, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.trim().parse().map_err(|_| bad())?;
        }
        SweepRange::new(v[0], v[1], v[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRecord {
    pub snr_db: f64,
    pub ob_bits: f64,
    pub ib_bits: f64,
    pub gap_bits: f64,
    pub regime_index: u8,
    pub scheme_id: SchemeId,
}

/// Outer minus inner bound at one SNR.
pub fn gap_at(point: &ExponentPoint, snr_db: f64, optimize: bool) -> Result<GapRecord> {
    let gains = gains_from_exponents(point, snr_db)?;
    let ob = outer_min(&gains, GammaPolicy::Optimize)?;
    let ib = if optimize {
        inner_best_optimized(&gains, point.topology)?
    } else {
        inner_best(&gains, point.topology)?
    };
    Ok(GapRecord {
        snr_db,
        ob_bits: ob.min_bits,
        ib_bits: ib.sum_bits,
        gap_bits: ob.min_bits - ib.sum_bits,
        regime_index: classify_regime_gains(&gains, point.topology)?.index,
        scheme_id: ib.scheme_id,
    })
}

pub fn gap_sweep(point: &ExponentPoint, snr: &SweepRange, optimize: bool) -> Result<Vec<GapRecord>> {
    snr.points()
        .into_par_iter()
        .map(|db| gap_at(point, db, optimize))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapLocation {
    pub alpha: f64,
    pub beta: f64,
    pub snr_db: f64,
    pub gap_bits: f64,
    pub regime_index: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeGap {
    pub index: u8,
    pub label: &'static str,
    pub points: usize,
    pub max_gap_bits: f64,
    pub regime_constant_bits: f64,
    pub fd_cited: bool,
    /// Informational only; regime constants are not enforced.
    pub exceeds_regime_constant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub topology: Topology,
    pub bound_bits: f64,
    pub points: usize,
    pub worst: GapLocation,
    pub min_gap_bits: f64,
    pub per_regime: Vec<RegimeGap>,
}

/// Default audit grids: alpha, beta and SNR in dB.
pub fn default_grids() -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let g = |lo, hi, step| SweepRange { lo, hi, step }.points();
    (g(0.0, 4.0, 0.05), g(0.0, 6.0, 0.1), g(10.0, 100.0, 10.0))
}

/// Checks `0 <= outer - inner <= bound` at every grid point, in row-major
/// order over (alpha, beta, snr).
pub fn theorem_gap_audit(topology: Topology, alphas: &[f64], betas: &[f64], snrs: &[f64]) -> Result<AuditReport> {
    let bound = topology.theorem_gap_bits();
    let tuples: Vec<(f64, f64, f64)> = alphas
        .iter()
        .flat_map(|&a| betas.iter().flat_map(move |&b| snrs.iter().map(move |&s| (a, b, s))))
        .collect();
    if tuples.is_empty() {
        return Err(Error::InvalidRange("audit grid is empty".into()));
    }
    let results: Vec<Result<GapLocation>> = tuples
        .par_iter()
        .map(|&(alpha, beta, snr_db)| {
            let point = ExponentPoint::new(alpha, beta, topology)?;
            let r = gap_at(&point, snr_db, false)?;
            Ok(GapLocation {
                alpha,
                beta,
                snr_db,
                gap_bits: r.gap_bits,
                regime_index: r.regime_index,
            })
        })
        .collect();

    let mut worst: Option<GapLocation> = None;
    let mut min_gap = f64::INFINITY;
    let mut per_regime: Vec<RegimeGap> = (1..=topology.region_count())
        .filter_map(|i| Regime::lookup(topology, i))
        .map(|r| RegimeGap {
            index: r.index,
            label: r.label,
            points: 0,
            max_gap_bits: f64::NEG_INFINITY,
            regime_constant_bits: r.gap_constant_bits,
            fd_cited: r.fd_cited,
            exceeds_regime_constant: false,
        })
        .collect();
    for loc in results {
        let loc = loc?;
        let gap = loc.gap_bits;
        if !(gap >= -GAP_TOLERANCE && gap <= bound) {
            return Err(Error::GapViolation {
                alpha: loc.alpha,
                beta: loc.beta,
                snr_db: loc.snr_db,
                gap,
                bound,
            });
        }
        min_gap = min_gap.min(gap);
        if worst.is_none_or(|w| gap > w.gap_bits) {
            worst = Some(loc);
        }
        let entry = &mut per_regime[usize::from(loc.regime_index) - 1];
        entry.points += 1;
        entry.max_gap_bits = entry.max_gap_bits.max(gap);
    }
    for r in &mut per_regime {
        r.exceeds_regime_constant = r.points > 0 && r.max_gap_bits > r.regime_constant_bits + GAP_TOLERANCE;
    }
    Ok(AuditReport {
        topology,
        bound_bits: bound,
        points: tuples.len(),
        worst: worst.expect("non-empty grid"),
        min_gap_bits: min_gap,
        per_regime,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionRow {
    pub alpha: f64,
    pub beta: f64,
    pub region: u8,
    pub d: f64,
    pub d_nocoop: f64,
    pub d_ideal: f64,
    pub coop: &'static str,
}

pub fn region_map(topology: Topology, alpha: &SweepRange, beta: &SweepRange) -> Result<Vec<RegionRow>> {
    let betas = beta.points();
    let pairs: Vec<(f64, f64)> = alpha
        .points()
        .into_iter()
        .flat_map(|a| betas.iter().map(move |&b| (a, b)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(a, b)| {
            let point = ExponentPoint::new(a, b, topology)?;
            let g = gdof_closed_form(&point);
            Ok(RegionRow {
                alpha: a,
                beta: b,
                region: classify_regime_exponents(&point).index,
                d: g.d,
                d_nocoop: g.d_nocoop,
                d_ideal: g.d_ideal,
                coop: cooperation_classification(&point).as_str(),
            })
        })
        .collect()
}

pub const GAP_CSV_HEADER: &str = "snr_db,ob_bits,ib_bits,gap_bits,regime,scheme";
pub const REGION_CSV_HEADER: &str = "alpha,beta,region,d,d_nocoop,d_ideal,coop";

pub fn gap_csv(records: &[GapRecord]) -> String {
    let mut out = format!("{GAP_CSV_HEADER}\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.snr_db,
            r.ob_bits,
            r.ib_bits,
            r.gap_bits,
            r.regime_index,
            r.scheme_id.as_str()
        );
    }
    out
}

pub fn region_csv(rows: &[RegionRow]) -> String {
    let mut out = format!("{REGION_CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.alpha, r.beta, r.region, r.d, r.d_nocoop, r.d_ideal, r.coop
        );
    }
    out
}
