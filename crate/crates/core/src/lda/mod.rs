//! Linear deterministic model of the channel.
//!
//! Each transmitter sends `n` bits per slot, most significant level
//! first. A link of strength `k` delivers the top `k` bits of the
//! transmitted vector to the bottom `k` levels of the receiver, and bits
//! meeting at a level add over GF(2). The cognitive transmitter listens
//! for `listen_slots` slots and transmits for `transmit_slots` slots.

mod sim;

pub use sim::{lda_normalized_sumrate, lda_simulate, DecodeEvent, LdaTrace, Payload, SlotRecord, Symbol};

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::channel::Topology;
use crate::error::{Error, Result};
use crate::gdof::gdof_exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    B1,
    B2,
    B3c,
    B3p,
    B4c,
    B4p,
    Zero,
}

impl Block {
    pub fn as_str(self) -> &'static str {
        match self {
            Block::B1 => "b1",
            Block::B2 => "b2",
            Block::B3c => "b3c",
            Block::B3p => "b3p",
            Block::B4c => "b4c",
            Block::B4p => "b4p",
            Block::Zero => "zero",
        }
    }

    /// Blocks carrying the primary message.
    pub fn is_primary(self) -> bool {
        matches!(self, Block::B1 | Block::B2 | Block::B3c | Block::B3p)
    }

    pub fn is_cognitive(self) -> bool {
        matches!(self, Block::B4c | Block::B4p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub block: Block,
    pub len: usize,
    /// Block added bit-by-bit where it lands at the cognitive receiver.
    pub precoded_with: Option<Block>,
}

impl Segment {
    fn plain(block: Block, len: usize) -> Self {
        Segment {
            block,
            len,
            precoded_with: None,
        }
    }

    fn precoded(block: Block, len: usize, with: Block) -> Self {
        Segment {
            block,
            len,
            precoded_with: Some(with),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LdaConfig {
    pub n_d: usize,
    pub n_i: usize,
    pub n_f: usize,
    pub topology: Topology,
}

impl LdaConfig {
    pub fn new(n_d: usize, n_i: usize, n_f: usize, topology: Topology) -> Self {
        LdaConfig {
            n_d,
            n_i,
            n_f,
            topology,
        }
    }

    pub fn n(&self) -> usize {
        self.n_d.max(self.n_i).max(self.n_f)
    }

    pub fn alpha(&self) -> Result<Ratio<i64>> {
        self.normalized(self.n_i)
    }

    pub fn beta(&self) -> Result<Ratio<i64>> {
        self.normalized(self.n_f)
    }

    fn normalized(&self, levels: usize) -> Result<Ratio<i64>> {
        if self.n_d == 0 {
            return Err(Error::LdaConstruction("n_d must be positive".into()));
        }
        Ok(Ratio::new(levels as i64, self.n_d as i64))
    }

    /// Exact gDoF at this configuration's exponents.
    pub fn gdof(&self) -> Result<Ratio<i64>> {
        Ok(gdof_exact(self.alpha()?, self.beta()?, self.topology))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LdaSchemeKind {
    /// Symmetric, `alpha < 1/2`.
    SymVeryWeak,
    /// Symmetric, `1/2 <= alpha < 2/3`.
    SymWeak,
    /// Symmetric or Z, `alpha >= 2`.
    VeryStrong,
    /// S-channel, `alpha < 1`.
    SWeak,
    /// S-channel, `1 <= alpha < 2`.
    SStrong,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodeOrders {
    pub relay_listen: Vec<Block>,
    pub primary_listen: Vec<Block>,
    pub primary_transmit: Vec<Block>,
    pub cognitive_transmit: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LdaScheme {
    pub kind: LdaSchemeKind,
    pub listen_slots: usize,
    pub transmit_slots: usize,
    pub phase1_primary: Vec<Segment>,
    pub phase2_primary: Vec<Segment>,
    pub phase2_cognitive: Vec<Segment>,
    pub decode_orders: DecodeOrders,
    pub precoded_pairs: Vec<(Block, Block)>,
    /// Bits of `b2` forwarded in each transmit slot.
    pub b2_per_slot: usize,
}

impl LdaScheme {
    pub fn slots(&self) -> usize {
        self.listen_slots + self.transmit_slots
    }

    pub fn gamma(&self) -> Ratio<i64> {
        Ratio::new(self.listen_slots as i64, self.slots() as i64)
    }
}

/// Converts a length in units of `n_d` to bits.
fn bits(len: Ratio<i64>, n_d: usize, what: &str) -> Result<usize> {
    let scaled = len * Ratio::from_integer(n_d as i64);
    if scaled < Ratio::from_integer(0) || !scaled.is_integer() {
        return Err(Error::LdaConstruction(format!(
            "{what} has length {scaled} bits; choose n_d so every block length is a non-negative integer"
        )));
    }
    Ok(scaled.to_integer() as usize)
}

fn pad(mut segments: Vec<Segment>, n: usize) -> Result<Vec<Segment>> {
    segments.retain(|s| s.len > 0);
    let used: usize = segments.iter().map(|s| s.len).sum();
    if used > n {
        return Err(Error::LdaConstruction(format!("allocation of {used} bits exceeds n = {n}")));
    }
    if used < n {
        segments.push(Segment::plain(Block::Zero, n - used));
    }
    Ok(segments)
}

fn threshold(cond: bool, detail: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::LdaConstruction(format!("cooperation threshold not met: {detail}")))
    }
}

/// The bit-level scheme for `config`, with slot counts realizing the
/// optimal listening fraction exactly.
pub fn lda_scheme_for(config: &LdaConfig) -> Result<LdaScheme> {
    use Block::*;
    let a = config.alpha()?;
    let b = config.beta()?;
    let r = |n: i64, d: i64| Ratio::new(n, d);
    let one = r(1, 1);
    let two = r(2, 1);
    let n_d = config.n_d;
    let len = |x: Ratio<i64>, what: &str| bits(x, n_d, what);

    let kind = match config.topology {
        Topology::Symmetric if a < r(1, 2) => {
            threshold(b > two - two * a, "beta > 2 - 2 alpha")?;
            LdaSchemeKind::SymVeryWeak
        }
        Topology::Symmetric if a < r(2, 3) => {
            threshold(b > two * a, "beta > 2 alpha")?;
            LdaSchemeKind::SymWeak
        }
        Topology::Symmetric | Topology::Z if a >= two => {
            threshold(b > two, "beta > 2")?;
            LdaSchemeKind::VeryStrong
        }
        Topology::S if a < one => {
            threshold(b > two - a, "beta > 2 - alpha")?;
            LdaSchemeKind::SWeak
        }
        Topology::S if a < two => {
            threshold(b > a, "beta > alpha")?;
            LdaSchemeKind::SStrong
        }
        t => {
            return Err(Error::LdaConstruction(format!(
                "no cooperative scheme for {t} at alpha = {a}, beta = {b}"
            )))
        }
    };

    let (b2_len, primary, cognitive, order_p, order_c) = match kind {
        LdaSchemeKind::SymVeryWeak => (
            a,
            vec![
                Segment::plain(B2, len(a, "b2")?),
                Segment::plain(B3p, len(one - two * a, "b3p")?),
                Segment::plain(Zero, len(a, "zero")?),
            ],
            vec![Segment::precoded(B4p, n_d, B2)],
            vec![B2, B3p],
            vec![B4p],
        ),
        LdaSchemeKind::SymWeak => {
            let common = two * a - one;
            (
                two - r(3, 1) * a,
                vec![
                    Segment::plain(B3c, len(common, "b3c")?),
                    Segment::plain(B2, len(two - r(3, 1) * a, "b2")?),
                    Segment::plain(Zero, len(common, "zero")?),
                    Segment::plain(B3p, len(one - a, "b3p")?),
                ],
                vec![
                    Segment::plain(B4c, len(common, "b4c")?),
                    Segment::plain(Zero, len(one - a, "zero")?),
                    Segment::precoded(B4p, len(one - a, "b4p")?, B2),
                ],
                vec![B3c, B2, B4c, B3p],
                vec![B4c, B3c, B4p],
            )
        }
        LdaSchemeKind::VeryStrong => (
            a - two,
            vec![Segment::plain(B3c, n_d), Segment::plain(Zero, len(a - one, "zero")?)],
            vec![
                Segment::plain(B4c, n_d),
                Segment::plain(B2, len(a - two, "b2")?),
                Segment::plain(Zero, n_d),
            ],
            vec![B4c, B2, B3c],
            if config.topology == Topology::Z {
                vec![B4c]
            } else {
                vec![B3c, B4c]
            },
        ),
        LdaSchemeKind::SWeak => (
            a,
            vec![
                Segment::plain(B2, len(a, "b2")?),
                Segment::plain(B3p, len(one - a, "b3p")?),
            ],
            vec![Segment::precoded(B4p, n_d, B2)],
            vec![B2, B3p],
            vec![B4p],
        ),
        LdaSchemeKind::SStrong => (
            two - a,
            vec![
                Segment::plain(B3c, len(a - one, "b3c")?),
                Segment::plain(B2, len(two - a, "b2")?),
                Segment::plain(Zero, len(a - one, "zero")?),
            ],
            vec![Segment::precoded(B4p, n_d, B2)],
            vec![B3c, B2],
            vec![B3c, B4p],
        ),
    };

    let n = config.n();
    let learned = config.n_f.saturating_sub(n_d);
    let forwarded = len(b2_len, "b2 per slot")?;
    let (listen_slots, transmit_slots) = if forwarded == 0 || learned == 0 {
        (0, 1)
    } else {
        let g = learned.gcd(&forwarded);
        (forwarded / g, learned / g)
    };
    let precoded_pairs = cognitive
        .iter()
        .filter_map(|s| s.precoded_with.map(|w| (s.block, w)))
        .collect();

    Ok(LdaScheme {
        kind,
        listen_slots,
        transmit_slots,
        phase1_primary: pad(vec![Segment::plain(B1, n_d), Segment::plain(B2, learned)], n)?,
        phase2_primary: pad(primary, n)?,
        phase2_cognitive: pad(cognitive, n)?,
        decode_orders: DecodeOrders {
            relay_listen: vec![B1, B2],
            primary_listen: vec![B1],
            primary_transmit: order_p,
            cognitive_transmit: order_c,
        },
        precoded_pairs,
        b2_per_slot: forwarded,
    })
}

/// Outcome of simulating one configuration against the exact gDoF.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LdaVerification {
    pub config: LdaConfig,
    pub kind: LdaSchemeKind,
    pub listen_slots: usize,
    pub transmit_slots: usize,
    pub r_p: usize,
    pub r_c: usize,
    pub rate: String,
    pub gdof: String,
    pub matches: bool,
}

pub fn lda_verify(config: &LdaConfig, seed: u64) -> Result<LdaVerification> {
    let scheme = lda_scheme_for(config)?;
    let trace = lda_simulate(config, &scheme, &Payload::Random { seed })?;
    let rate = lda_normalized_sumrate(&trace, config, scheme.slots());
    let gdof = config.gdof()?;
    Ok(LdaVerification {
        config: *config,
        kind: scheme.kind,
        listen_slots: scheme.listen_slots,
        transmit_slots: scheme.transmit_slots,
        r_p: trace.r_p,
        r_c: trace.r_c,
        rate: rate.to_string(),
        gdof: gdof.to_string(),
        matches: rate == gdof,
    })
}

/// One configuration per cooperative scheme, with integer block lengths.
pub fn reference_configs() -> Vec<LdaConfig> {
    vec![
        LdaConfig::new(4, 1, 8, Topology::Symmetric),
        LdaConfig::new(5, 3, 10, Topology::Symmetric),
        LdaConfig::new(20, 11, 40, Topology::Symmetric),
        LdaConfig::new(2, 6, 8, Topology::Symmetric),
        LdaConfig::new(2, 6, 8, Topology::Z),
        LdaConfig::new(2, 1, 6, Topology::S),
        LdaConfig::new(2, 3, 6, Topology::S),
    ]
}
