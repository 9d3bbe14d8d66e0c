//! Achievable sum-rates.
//!
//! Cooperative schemes run in two phases. In the first (a fraction gamma
//! of the time) the cognitive transmitter listens and learns `b2`; in the
//! second it transmits, relaying or precoding against `b2`. The closed-form
//! rates come from the published expressions; the per-codeword rates come
//! from the successive-decoding engine in [`sic`] and must add up to the
//! closed form.

pub mod sic;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::channel::{classify_regime_gains, ChannelGains, Topology};
use crate::error::{check_fraction, Error, Result};
use sic::{phase_rates, Decoder, Layer, Transmitter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Codeword {
    B1,
    B2,
    B3c,
    B3p,
    B4c,
    B4p,
}

impl Codeword {
    pub fn as_str(self) -> &'static str {
        match self {
            Codeword::B1 => "b1",
            Codeword::B2 => "b2",
            Codeword::B3c => "b3c",
            Codeword::B3p => "b3p",
            Codeword::B4c => "b4c",
            Codeword::B4p => "b4p",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerSplit {
    Eta,
    Delta,
    Delta1,
    Delta2,
    Delta3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeId {
    SymRegion3,
    SymRegion8,
    SymRegion10,
    SRegion4,
    SRegion5,
    NocoopVeryStrong,
    NocoopStrong,
    NocoopHk,
    NocoopTin,
    NocoopWeak,
}

impl SchemeId {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeId::SymRegion3 => "sym_region3",
            SchemeId::SymRegion8 => "sym_region8",
            SchemeId::SymRegion10 => "sym_region10",
            SchemeId::SRegion4 => "s_region4",
            SchemeId::SRegion5 => "s_region5",
            SchemeId::NocoopVeryStrong => "nocoop_very_strong",
            SchemeId::NocoopStrong => "nocoop_strong",
            SchemeId::NocoopHk => "nocoop_hk",
            SchemeId::NocoopTin => "nocoop_tin",
            SchemeId::NocoopWeak => "nocoop_weak",
        }
    }

    pub fn is_cooperative(self) -> bool {
        matches!(
            self,
            SchemeId::SymRegion3 | SchemeId::SymRegion8 | SchemeId::SymRegion10 | SchemeId::SRegion4 | SchemeId::SRegion5
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerBoundEval {
    pub scheme_id: SchemeId,
    pub gamma_prime: f64,
    pub x_aux: f64,
    pub component_rates: BTreeMap<Codeword, f64>,
    pub sum_bits: f64,
    pub power_splits: BTreeMap<PowerSplit, f64>,
}

impl InnerBoundEval {
    pub fn component_sum(&self) -> f64 {
        self.component_rates.values().sum()
    }
}

fn log2p(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// Per-use rates of the first phase with the standard split `eta = 1/(1+S)`.
fn phase1_per_use(g: &ChannelGains) -> (f64, f64) {
    let eta = 1.0 / (1.0 + g.s);
    let layers = [
        Layer::new(Codeword::B1, Transmitter::Primary, 1.0 - eta),
        Layer::new(Codeword::B2, Transmitter::Primary, eta),
    ];
    let decoders = [
        Decoder::new("CTx", g.c, 0.0, &[Codeword::B1, Codeword::B2]),
        Decoder::new("PRx", g.s, 0.0, &[Codeword::B1]),
    ];
    let r = phase_rates(&layers, &decoders);
    (r[&Codeword::B1], r[&Codeword::B2])
}

/// Rates of `b1` and `b2` delivered during a listening phase of length `gamma`.
pub fn phase1_rates(gains: &ChannelGains, gamma: f64) -> Result<(f64, f64)> {
    check_fraction("gamma", gamma)?;
    if gains.c < gains.s {
        return Err(Error::CooperationPremise { s: gains.s, c: gains.c });
    }
    let s = gains.s;
    let b1 = gamma * (log2p(s) - log2p(s / (1.0 + s)));
    let b2 = gamma * log2p(gains.c / (1.0 + s));
    Ok((b1, b2))
}

/// Listening fraction that equalizes the `b2` rate across the phases.
pub fn gamma_prime(x: f64, gains: &ChannelGains) -> f64 {
    let learn = log2p(gains.c / (1.0 + gains.s));
    if learn + x > 0.0 {
        x / (learn + x)
    } else {
        0.0
    }
}

/// The transmit phase of a cooperative scheme.
#[derive(Debug, Clone)]
pub struct TransmitPhase {
    pub layers: Vec<Layer>,
    pub decoders: Vec<Decoder>,
    pub splits: BTreeMap<PowerSplit, f64>,
}

impl TransmitPhase {
    pub fn per_use_rates(&self) -> BTreeMap<Codeword, f64> {
        phase_rates(&self.layers, &self.decoders)
    }
}

fn split_map(entries: &[(PowerSplit, f64)]) -> BTreeMap<PowerSplit, f64> {
    entries.iter().copied().collect()
}

/// Region-3 layout; with `I_p = 0` the cognitive receiver cannot see `b3c`.
pub fn sym_region3_phase(g: &ChannelGains, eta: f64) -> TransmitPhase {
    use Codeword::*;
    let layers = vec![
        Layer::new(B3c, Transmitter::Primary, 1.0),
        Layer::new(B2, Transmitter::Cognitive, eta),
        Layer::new(B4c, Transmitter::Cognitive, 1.0 - eta),
    ];
    let crx_order: &[Codeword] = if g.i_p > 0.0 { &[B3c, B4c] } else { &[B4c] };
    let decoders = vec![
        Decoder::new("PRx", g.s, g.i_c, &[B4c, B2, B3c]),
        Decoder::new("CRx", g.i_p, g.s, crx_order),
    ];
    TransmitPhase {
        layers,
        decoders,
        splits: split_map(&[(PowerSplit::Eta, eta)]),
    }
}

pub fn sym_region8_phase(g: &ChannelGains, delta2: f64, delta3: f64) -> TransmitPhase {
    use Codeword::*;
    let delta1 = (1.0 - delta2 - delta3).max(0.0);
    let layers = vec![
        Layer::new(B3c, Transmitter::Primary, delta1),
        Layer::new(B2, Transmitter::Primary, delta2),
        Layer::new(B3p, Transmitter::Primary, delta3),
        Layer::new(B4p, Transmitter::Cognitive, delta3),
        Layer::new(B4c, Transmitter::Cognitive, 1.0 - delta3),
    ];
    let decoders = vec![
        Decoder::new("PRx", g.s, g.i_c, &[B3c, B2, B4c, B3p]),
        Decoder::new("CRx", g.i_p, g.s, &[B4c, B3c, B4p]).with_dirty_paper(B4p, B2),
    ];
    TransmitPhase {
        layers,
        decoders,
        splits: split_map(&[
            (PowerSplit::Delta1, delta1),
            (PowerSplit::Delta2, delta2),
            (PowerSplit::Delta3, delta3),
        ]),
    }
}

pub fn sym_region10_phase(g: &ChannelGains, delta: f64) -> TransmitPhase {
    use Codeword::*;
    let layers = vec![
        Layer::new(B2, Transmitter::Primary, 1.0 - delta),
        Layer::new(B3p, Transmitter::Primary, delta),
        Layer::new(B4p, Transmitter::Cognitive, 1.0),
    ];
    let decoders = vec![
        Decoder::new("PRx", g.s, g.i_c, &[B2, B3p]),
        Decoder::new("CRx", g.i_p, g.s, &[B4p]).with_dirty_paper(B4p, B2),
    ];
    TransmitPhase {
        layers,
        decoders,
        splits: split_map(&[(PowerSplit::Delta, delta)]),
    }
}

/// `delta` is the power fraction of `b2` at the primary transmitter.
pub fn s_region4_phase(g: &ChannelGains, delta: f64) -> TransmitPhase {
    use Codeword::*;
    let layers = vec![
        Layer::new(B3c, Transmitter::Primary, 1.0 - delta),
        Layer::new(B2, Transmitter::Primary, delta),
        Layer::new(B4p, Transmitter::Cognitive, 1.0),
    ];
    let decoders = vec![
        Decoder::new("PRx", g.s, g.i_c, &[B3c, B2]),
        Decoder::new("CRx", g.i_p, g.s, &[B3c, B4p]).with_dirty_paper(B4p, B2),
    ];
    TransmitPhase {
        layers,
        decoders,
        splits: split_map(&[(PowerSplit::Delta, delta)]),
    }
}

pub fn s_region5_phase(g: &ChannelGains, delta: f64) -> TransmitPhase {
    use Codeword::*;
    let layers = vec![
        Layer::new(B2, Transmitter::Primary, 1.0 - delta),
        Layer::new(B3p, Transmitter::Primary, delta),
        Layer::new(B4p, Transmitter::Cognitive, 1.0),
    ];
    let decoders = vec![
        Decoder::new("PRx", g.s, g.i_c, &[B2, B3p]),
        Decoder::new("CRx", g.i_p, g.s, &[B4p]).with_dirty_paper(B4p, B2),
    ];
    TransmitPhase {
        layers,
        decoders,
        splits: split_map(&[(PowerSplit::Delta, delta)]),
    }
}

/// Evaluates a two-phase scheme at listening fraction `gamma`.
pub fn two_phase(scheme: SchemeId, gains: &ChannelGains, gamma: f64, phase: &TransmitPhase) -> InnerBoundEval {
    let (b1, b2_learn) = phase1_per_use(gains);
    let p2 = phase.per_use_rates();
    let b2_deliver = p2.get(&Codeword::B2).copied().unwrap_or(0.0);
    let mut rates = BTreeMap::new();
    rates.insert(Codeword::B1, gamma * b1);
    rates.insert(Codeword::B2, (gamma * b2_learn).min((1.0 - gamma) * b2_deliver));
    for (&cw, &r) in &p2 {
        if cw != Codeword::B2 {
            rates.insert(cw, (1.0 - gamma) * r);
        }
    }
    // The listening phase always uses eta = 1/(1+S); a transmit-phase eta overrides it.
    let mut splits = split_map(&[(PowerSplit::Eta, 1.0 / (1.0 + gains.s))]);
    splits.extend(phase.splits.iter().map(|(&k, &v)| (k, v)));
    InnerBoundEval {
        scheme_id: scheme,
        gamma_prime: gamma,
        x_aux: b2_deliver,
        sum_bits: rates.values().sum(),
        component_rates: rates,
        power_splits: splits,
    }
}

/// Infers the topology of a gains tuple from its dead link.
fn topology_of(g: &ChannelGains) -> Result<Topology> {
    if g.i_p == g.i_c {
        Ok(Topology::Symmetric)
    } else if g.i_p == 0.0 {
        Ok(Topology::Z)
    } else if g.i_c == 0.0 {
        Ok(Topology::S)
    } else {
        Err(Error::TopologyMismatch {
            topology: Topology::Symmetric,
            detail: format!("I_p = {} and I_c = {} differ and neither is 0", g.i_p, g.i_c),
        })
    }
}

fn require_region(g: &ChannelGains, scheme: SchemeId, allowed: &[(Topology, u8)]) -> Result<Topology> {
    let topology = topology_of(g)?;
    let regime = classify_regime_gains(g, topology)?;
    if !allowed.contains(&(topology, regime.index)) {
        return Err(Error::RegimePrecondition {
            scheme: scheme.as_str(),
            detail: format!("gains fall in {} region {}", topology, regime.index),
        });
    }
    if g.c < g.s {
        return Err(Error::CooperationPremise { s: g.s, c: g.c });
    }
    Ok(topology)
}

const CLOSED_FORM_TOLERANCE: f64 = 1e-9;

/// Replaces the engine's sum by the closed form after checking they agree.
fn with_closed_form(mut eval: InnerBoundEval, sum: f64, x: f64) -> InnerBoundEval {
    let scale = sum.abs().max(1.0);
    debug_assert!(
        (eval.sum_bits - sum).abs() <= CLOSED_FORM_TOLERANCE * scale,
        "{}: closed form {} exceeds successive-decoding rates {}",
        eval.scheme_id.as_str(),
        sum,
        eval.sum_bits
    );
    debug_assert!((eval.x_aux - x).abs() <= CLOSED_FORM_TOLERANCE * x.abs().max(1.0));
    eval.sum_bits = sum;
    eval.x_aux = x;
    eval
}

/// Common listening-phase part of every closed form.
fn learned(gp: f64, g: &ChannelGains) -> f64 {
    let s = g.s;
    gp * log2p(s) - gp * log2p(s / (1.0 + s)) + gp * log2p(g.c / (1.0 + s))
}

pub fn inner_sym_region3(gains: &ChannelGains) -> Result<InnerBoundEval> {
    let allowed = [(Topology::Symmetric, 3), (Topology::Z, 3)];
    require_region(gains, SchemeId::SymRegion3, &allowed)?;
    let (s, i) = (gains.s, gains.i_c);
    let x = log2p(i / ((1.0 + s) * (1.0 + s)));
    let gp = gamma_prime(x, gains);
    let sum = gp * log2p(s) - log2p(s / (1.0 + s)) + gp * log2p(gains.c / (1.0 + s)) + 2.0 * (1.0 - gp) * log2p(s);
    let eval = two_phase(SchemeId::SymRegion3, gains, gp, &sym_region3_phase(gains, 1.0 / (1.0 + s)));
    Ok(with_closed_form(eval, sum, x))
}

pub fn inner_sym_region8(gains: &ChannelGains) -> Result<InnerBoundEval> {
    require_region(gains, SchemeId::SymRegion8, &[(Topology::Symmetric, 8)])?;
    let (s, i) = (gains.s, gains.i_p);
    let delta2 = s / ((1.0 + i) * (1.0 + i));
    let delta3 = 1.0 / (1.0 + i);
    debug_assert!(delta2 + delta3 <= 1.0 + 1e-12, "delta1 negative inside region 8");
    let x = log2p(s * s / ((1.0 + i).powi(3) + s + s * i));
    let gp = gamma_prime(x, gains);
    let a = log2p(i + s / (1.0 + i));
    let b = log2p(s / (1.0 + i) + i / (1.0 + i));
    let d = log2p(i / (1.0 + i));
    let e = log2p((s * i + i + i * i) / ((1.0 + i) * (1.0 + i)) + s / (1.0 + i));
    let sum = learned(gp, gains) + 2.0 * (1.0 - gp) * a - (1.0 - gp) * (2.0 * d - b) - (1.0 - gp) * e;
    let eval = two_phase(SchemeId::SymRegion8, gains, gp, &sym_region8_phase(gains, delta2, delta3));
    Ok(with_closed_form(eval, sum, x))
}

pub fn inner_sym_region10(gains: &ChannelGains) -> Result<InnerBoundEval> {
    require_region(gains, SchemeId::SymRegion10, &[(Topology::Symmetric, 10)])?;
    let (s, i) = (gains.s, gains.i_p);
    let x = log2p(s * i / ((1.0 + i) * (1.0 + i) + s));
    let gp = gamma_prime(x, gains);
    let sum = learned(gp, gains) - (1.0 - gp) * log2p(i) + (1.0 - gp) * log2p(i + s / (1.0 + i))
        - (1.0 - gp) * log2p(i / (1.0 + i))
        + (1.0 - gp) * log2p(i / (1.0 + i) + s);
    let eval = two_phase(SchemeId::SymRegion10, gains, gp, &sym_region10_phase(gains, 1.0 / (1.0 + i)));
    Ok(with_closed_form(eval, sum, x))
}

pub fn inner_s_region4(gains: &ChannelGains) -> Result<InnerBoundEval> {
    require_region(gains, SchemeId::SRegion4, &[(Topology::S, 4)])?;
    let (s, i, c) = (gains.s, gains.i_p, gains.c);
    let x = log2p(s * s / (1.0 + i));
    let gp = gamma_prime(x, gains);
    let sum = log2p(s) - gp * log2p(s / (1.0 + s)) + gp * log2p(c / (1.0 + s)) + (1.0 - gp) * log2p(s + i)
        - (1.0 - gp) * log2p(s * i / (1.0 + i) + s);
    let eval = two_phase(SchemeId::SRegion4, gains, gp, &s_region4_phase(gains, s / (1.0 + i)));
    Ok(with_closed_form(eval, sum, x))
}

pub fn inner_s_region5(gains: &ChannelGains) -> Result<InnerBoundEval> {
    require_region(gains, SchemeId::SRegion5, &[(Topology::S, 5)])?;
    let (s, i) = (gains.s, gains.i_p);
    let x = log2p(s * i / (1.0 + s + i));
    let gp = gamma_prime(x, gains);
    let sum = learned(gp, gains) + (1.0 - gp) * log2p(s / (1.0 + i)) + (1.0 - gp) * log2p(s + i / (1.0 + i))
        - (1.0 - gp) * log2p(i / (1.0 + i));
    let eval = two_phase(SchemeId::SRegion5, gains, gp, &s_region5_phase(gains, 1.0 / (1.0 + i)));
    Ok(with_closed_form(eval, sum, x))
}

fn nocoop_eval(scheme: SchemeId, rates: &[(Codeword, f64)]) -> InnerBoundEval {
    let component_rates: BTreeMap<Codeword, f64> = rates.iter().copied().collect();
    InnerBoundEval {
        scheme_id: scheme,
        gamma_prime: 0.0,
        x_aux: 0.0,
        sum_bits: component_rates.values().sum(),
        component_rates,
        power_splits: BTreeMap::new(),
    }
}

/// Han-Kobayashi sum-rate with private power at the noise level of the
/// unintended receiver, jointly decoded. Defined for `1 <= I < S`.
fn han_kobayashi_sum(s: f64, i: f64) -> Option<(f64, f64)> {
    if i < 1.0 {
        return None;
    }
    let sum = (2.0 * log2p(s / 2.0))
        .min(log2p(s + i) + (2.0 + s / i).log2() - 2.0)
        .min(2.0 * log2p(i + s / i) - 2.0);
    let private = ((2.0 + s / i).log2() - 1.0).clamp(0.0, sum / 2.0);
    Some((sum, private))
}

/// Classical interference-channel schemes without cooperation.
pub fn inner_nocoop(gains: &ChannelGains, topology: Topology) -> Result<InnerBoundEval> {
    use Codeword::*;
    gains.check_topology(topology)?;
    let s = gains.s;
    let i = gains.interference(topology);
    let direct = log2p(s);
    if i > 0.0 && i >= s * (1.0 + s) {
        let (own, other) = match topology {
            Topology::Symmetric => (B3c, B4c),
            Topology::Z => (B3p, B4c),
            Topology::S => (B3c, B4p),
        };
        return Ok(nocoop_eval(SchemeId::NocoopVeryStrong, &[(own, direct), (other, direct)]));
    }
    if i > 0.0 && s <= i {
        let joint = log2p(s + i);
        let eval = match topology {
            Topology::Symmetric => {
                let sum = (2.0 * direct).min(joint);
                nocoop_eval(SchemeId::NocoopStrong, &[(B3c, sum / 2.0), (B4c, sum / 2.0)])
            }
            Topology::Z => nocoop_eval(SchemeId::NocoopStrong, &[(B3p, direct), (B4c, joint - direct)]),
            Topology::S => nocoop_eval(SchemeId::NocoopStrong, &[(B3c, joint - direct), (B4p, direct)]),
        };
        return Ok(eval);
    }
    let noisy = log2p(s / (1.0 + i));
    let eval = match topology {
        Topology::Symmetric => {
            let tin = nocoop_eval(SchemeId::NocoopTin, &[(B3p, noisy), (B4p, noisy)]);
            match han_kobayashi_sum(s, i) {
                Some((sum, private)) if sum > tin.sum_bits => {
                    let common = sum / 2.0 - private;
                    nocoop_eval(
                        SchemeId::NocoopHk,
                        &[(B3c, common), (B3p, private), (B4c, common), (B4p, private)],
                    )
                }
                _ => tin,
            }
        }
        Topology::Z => nocoop_eval(SchemeId::NocoopWeak, &[(B3p, noisy), (B4p, direct)]),
        Topology::S => nocoop_eval(SchemeId::NocoopWeak, &[(B3p, direct), (B4p, noisy)]),
    };
    Ok(eval)
}

/// Cooperative schemes whose gain-domain regime holds at `gains`.
pub fn applicable_schemes(gains: &ChannelGains, topology: Topology) -> Result<Vec<SchemeId>> {
    let regime = classify_regime_gains(gains, topology)?;
    let ids = match (topology, regime.index) {
        (Topology::Symmetric, 3) | (Topology::Z, 3) => vec![SchemeId::SymRegion3],
        (Topology::Symmetric, 8) => vec![SchemeId::SymRegion8],
        (Topology::Symmetric, 10) => vec![SchemeId::SymRegion10],
        (Topology::S, 4) => vec![SchemeId::SRegion4],
        (Topology::S, 5) => vec![SchemeId::SRegion5],
        _ => Vec::new(),
    };
    Ok(ids)
}

/// Closed-form evaluation of a cooperative scheme.
pub fn inner_scheme(scheme: SchemeId, gains: &ChannelGains) -> Result<InnerBoundEval> {
    match scheme {
        SchemeId::SymRegion3 => inner_sym_region3(gains),
        SchemeId::SymRegion8 => inner_sym_region8(gains),
        SchemeId::SymRegion10 => inner_sym_region10(gains),
        SchemeId::SRegion4 => inner_s_region4(gains),
        SchemeId::SRegion5 => inner_s_region5(gains),
        other => Err(Error::RegimePrecondition {
            scheme: other.as_str(),
            detail: "not a cooperative scheme".into(),
        }),
    }
}

fn best_of(candidates: impl IntoIterator<Item = InnerBoundEval>, fallback: InnerBoundEval) -> InnerBoundEval {
    candidates
        .into_iter()
        .fold(fallback, |best, e| if e.sum_bits > best.sum_bits { e } else { best })
}

/// Best of the non-cooperative fallback and every applicable cooperative scheme.
pub fn inner_best(gains: &ChannelGains, topology: Topology) -> Result<InnerBoundEval> {
    let fallback = inner_nocoop(gains, topology)?;
    let coop = applicable_schemes(gains, topology)?
        .into_iter()
        .filter_map(|id| inner_scheme(id, gains).ok());
    Ok(best_of(coop, fallback))
}

const SPLIT_STEP: f64 = 0.05;
const GAMMA_STEP: f64 = 0.01;

fn split_grid() -> impl Iterator<Item = f64> {
    let n = (1.0 / SPLIT_STEP).round() as usize;
    (0..=n).map(move |k| k as f64 / n as f64)
}

fn gamma_candidates(gains: &ChannelGains, phase: &TransmitPhase) -> Vec<f64> {
    let n = (1.0 / GAMMA_STEP).round() as usize;
    let mut out: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    let x = phase.per_use_rates().get(&Codeword::B2).copied().unwrap_or(0.0);
    out.push(gamma_prime(x, gains));
    out
}

/// Grid search over the listening fraction and the scheme's power splits.
/// The published parameter choice is always among the candidates.
pub fn optimize_scheme(scheme: SchemeId, gains: &ChannelGains) -> Result<InnerBoundEval> {
    let published = inner_scheme(scheme, gains)?;
    let s = gains.s;
    let i = gains.i_p.max(gains.i_c);
    let phases: Vec<TransmitPhase> = match scheme {
        SchemeId::SymRegion3 => split_grid()
            .chain([1.0 / (1.0 + s)])
            .map(|eta| sym_region3_phase(gains, eta))
            .collect(),
        SchemeId::SymRegion8 => {
            let mut pairs: Vec<(f64, f64)> = split_grid()
                .flat_map(|d2| split_grid().map(move |d3| (d2, d3)))
                .filter(|(d2, d3)| d2 + d3 <= 1.0 + 1e-12)
                .collect();
            pairs.push((s / ((1.0 + i) * (1.0 + i)), 1.0 / (1.0 + i)));
            pairs
                .into_iter()
                .map(|(d2, d3)| sym_region8_phase(gains, d2, d3))
                .collect()
        }
        SchemeId::SymRegion10 => split_grid()
            .chain([1.0 / (1.0 + i)])
            .map(|d| sym_region10_phase(gains, d))
            .collect(),
        SchemeId::SRegion4 => split_grid()
            .chain([s / (1.0 + i)])
            .map(|d| s_region4_phase(gains, d))
            .collect(),
        SchemeId::SRegion5 => split_grid()
            .chain([1.0 / (1.0 + i)])
            .map(|d| s_region5_phase(gains, d))
            .collect(),
        _ => Vec::new(),
    };
    let searched = phases.iter().flat_map(|phase| {
        gamma_candidates(gains, phase)
            .into_iter()
            .map(move |g| two_phase(scheme, gains, g, phase))
    });
    Ok(best_of(searched, published))
}

/// As [`inner_best`], with every applicable scheme's parameters optimized.
pub fn inner_best_optimized(gains: &ChannelGains, topology: Topology) -> Result<InnerBoundEval> {
    let fallback = inner_nocoop(gains, topology)?;
    let coop = applicable_schemes(gains, topology)?
        .into_iter()
        .filter_map(|id| optimize_scheme(id, gains).ok());
    Ok(best_of(coop, fallback))
}
