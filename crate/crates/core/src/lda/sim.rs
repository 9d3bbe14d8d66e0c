use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_rational::Ratio;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Block, LdaConfig, LdaScheme, Segment};
use crate::channel::Topology;
use crate::error::{Error, Result};

/// One payload bit: the `index`-th bit of `block`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Symbol {
    pub block: Block,
    pub index: u32,
}

/// A received or transmitted level: its bit value and the set of payload
/// bits XORed into it.
#[derive(Debug, Clone, Default)]
struct Cell {
    value: bool,
    expr: BTreeSet<Symbol>,
}

impl Cell {
    fn source(sym: Symbol, value: bool) -> Self {
        Cell {
            value,
            expr: BTreeSet::from([sym]),
        }
    }

    fn toggle(&mut self, sym: Symbol, value: bool) {
        self.value ^= value;
        if !self.expr.remove(&sym) {
            self.expr.insert(sym);
        }
    }

    fn add(&mut self, other: &Cell) {
        self.value ^= other.value;
        for s in &other.expr {
            if !self.expr.remove(s) {
                self.expr.insert(*s);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Zeros,
    Random { seed: u64 },
    /// Bitwise XOR of two payloads.
    Sum(Box<Payload>, Box<Payload>),
}

impl Payload {
    /// Bit value of `sym`; a pure function of the payload and the symbol.
    pub fn bit(&self, sym: Symbol) -> bool {
        match self {
            Payload::Zeros => false,
            Payload::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(sym.block as u64);
                rng.set_word_pos(sym.index as u128);
                rng.next_u32() & 1 == 1
            }
            Payload::Sum(a, b) => a.bit(sym) ^ b.bit(sym),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlotRecord {
    pub slot: usize,
    pub listening: bool,
    pub primary_tx: Vec<bool>,
    pub cognitive_tx: Vec<bool>,
    pub primary_rx: Vec<bool>,
    pub cognitive_rx: Vec<bool>,
    /// What the cognitive transmitter hears; all zero while it transmits.
    pub relay_rx: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeEvent {
    pub slot: usize,
    pub receiver: &'static str,
    pub block: Block,
    pub bits: usize,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LdaTrace {
    pub slots: Vec<SlotRecord>,
    pub decode_log: Vec<DecodeEvent>,
    /// Bits of each block delivered to its intended receiver.
    pub delivered: BTreeMap<Block, usize>,
    pub r_p: usize,
    pub r_c: usize,
    pub b2_learned: usize,
    pub b2_forwarded: usize,
}

impl LdaTrace {
    /// One `slot,node,bits` line per transmitted or received vector.
    pub fn dump(&self) -> String {
        let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        let mut out = String::new();
        for r in &self.slots {
            let _ = writeln!(out, "{},PTx,{}", r.slot, bits(&r.primary_tx));
            if r.listening {
                let _ = writeln!(out, "{},CTx.rx,{}", r.slot, bits(&r.relay_rx));
            } else {
                let _ = writeln!(out, "{},CTx,{}", r.slot, bits(&r.cognitive_tx));
            }
            let _ = writeln!(out, "{},PRx,{}", r.slot, bits(&r.primary_rx));
            let _ = writeln!(out, "{},CRx,{}", r.slot, bits(&r.cognitive_rx));
        }
        out
    }
}

/// Sum-rate per slot normalized by `2 n_d`.
pub fn lda_normalized_sumrate(trace: &LdaTrace, config: &LdaConfig, slots: usize) -> Ratio<i64> {
    if slots == 0 || config.n_d == 0 {
        return Ratio::from_integer(0);
    }
    Ratio::new((trace.r_p + trace.r_c) as i64, (2 * config.n_d * slots) as i64)
}

/// Adds the top `n - shift` levels of `tx` into the bottom of `rx`.
fn add_shifted(rx: &mut [Cell], tx: &[Cell], shift: usize) {
    for pos in shift..rx.len() {
        rx[pos].add(&tx[pos - shift]);
    }
}

struct Sim<'a> {
    payload: &'a Payload,
    counters: BTreeMap<Block, u32>,
    sent: BTreeMap<Block, Vec<Symbol>>,
    log: Vec<DecodeEvent>,
}

impl Sim<'_> {
    fn fresh(&mut self, block: Block) -> Symbol {
        let c = self.counters.entry(block).or_insert(0);
        let sym = Symbol { block, index: *c };
        *c += 1;
        sym
    }

    fn primary_vector(&mut self, segments: &[Segment], relayed_b2: Option<&[Symbol]>) -> Vec<Cell> {
        let mut x = Vec::new();
        for seg in segments {
            for i in 0..seg.len {
                let sym = match (seg.block, relayed_b2) {
                    (Block::Zero, _) => {
                        x.push(Cell::default());
                        continue;
                    }
                    (Block::B2, Some(b2)) => b2[i],
                    (b, _) => self.fresh(b),
                };
                x.push(Cell::source(sym, self.payload.bit(sym)));
            }
        }
        x
    }

    fn cognitive_vector(
        &mut self,
        segments: &[Segment],
        relayed_b2: &[Symbol],
        primary: &[Cell],
        offset: isize,
        relay_known: &HashMap<Symbol, bool>,
        slot: usize,
    ) -> Result<Vec<Cell>> {
        let lookup = |sym: Symbol| {
            relay_known.get(&sym).copied().ok_or(Error::DecodeFailure {
                receiver: "CTx",
                block: sym.block.as_str(),
                slot,
            })
        };
        let mut x = Vec::new();
        for seg in segments {
            for i in 0..seg.len {
                let mut cell = match seg.block {
                    Block::Zero => Cell::default(),
                    Block::B2 => {
                        let sym = relayed_b2[i];
                        Cell::source(sym, lookup(sym)?)
                    }
                    b => {
                        let sym = self.fresh(b);
                        Cell::source(sym, self.payload.bit(sym))
                    }
                };
                if let Some(with) = seg.precoded_with {
                    // The primary level that lands on the same cognitive-receiver level.
                    let j = x.len() as isize + offset;
                    if j >= 0 && (j as usize) < primary.len() {
                        let hits: Vec<Symbol> = primary[j as usize]
                            .expr
                            .iter()
                            .copied()
                            .filter(|s| s.block == with)
                            .collect();
                        for s in hits {
                            cell.toggle(s, lookup(s)?);
                        }
                    }
                }
                x.push(cell);
            }
        }
        Ok(x)
    }

    fn record_sent(&mut self, x: &[Cell]) {
        for s in x.iter().flat_map(|c| c.expr.iter()) {
            let v = self.sent.entry(s.block).or_default();
            if !v.contains(s) {
                v.push(*s);
            }
        }
    }

    /// Successive decoding of `order` from `y`. Returns the newly decoded
    /// symbols of each block.
    fn decode(
        &mut self,
        y: &[Cell],
        order: &[Block],
        known: &mut HashMap<Symbol, bool>,
        receiver: &'static str,
        slot: usize,
    ) -> Result<Vec<Symbol>> {
        let mut decoded = Vec::new();
        for &block in order {
            let mut pending: BTreeSet<Symbol> = self
                .sent
                .get(&block)
                .map(|v| v.iter().copied().filter(|s| !known.contains_key(s)).collect())
                .unwrap_or_default();
            let total = pending.len();
            while !pending.is_empty() {
                let mut progress = false;
                for cell in y {
                    let mut unknown = cell.expr.iter().filter(|s| !known.contains_key(s));
                    let (Some(&s), None) = (unknown.next(), unknown.next()) else {
                        continue;
                    };
                    if !pending.contains(&s) {
                        continue;
                    }
                    let v = cell
                        .expr
                        .iter()
                        .filter(|x| **x != s)
                        .fold(cell.value, |acc, x| acc ^ known[x]);
                    if v != self.payload.bit(s) {
                        return Err(Error::DecodeFailure {
                            receiver,
                            block: block.as_str(),
                            slot,
                        });
                    }
                    known.insert(s, v);
                    pending.remove(&s);
                    decoded.push(s);
                    progress = true;
                }
                if !progress {
                    return Err(Error::DecodeFailure {
                        receiver,
                        block: block.as_str(),
                        slot,
                    });
                }
            }
            self.log.push(DecodeEvent {
                slot,
                receiver,
                block,
                bits: total,
                success: true,
            });
        }
        Ok(decoded)
    }
}

fn to_bits(x: &[Cell]) -> Vec<bool> {
    x.iter().map(|c| c.value).collect()
}

/// Runs `scheme` for one block of `listen_slots + transmit_slots` slots and
/// checks that every payload bit reaches its receiver.
pub fn lda_simulate(config: &LdaConfig, scheme: &LdaScheme, payload: &Payload) -> Result<LdaTrace> {
    let n = config.n();
    let shift = |levels: usize| n - levels;
    let mut sim = Sim {
        payload,
        counters: BTreeMap::new(),
        sent: BTreeMap::new(),
        log: Vec::new(),
    };
    let mut known_p: HashMap<Symbol, bool> = HashMap::new();
    let mut known_c: HashMap<Symbol, bool> = HashMap::new();
    let mut known_relay: HashMap<Symbol, bool> = HashMap::new();
    let mut b2_queue: Vec<Symbol> = Vec::new();
    let mut b2_next = 0;
    let mut records = Vec::with_capacity(scheme.slots());
    let mut delivered: BTreeMap<Block, usize> = BTreeMap::new();
    let offset = config.n_i as isize - config.n_d as isize;

    for slot in 0..scheme.slots() {
        sim.sent.clear();
        let listening = slot < scheme.listen_slots;
        let (xp, xc) = if listening {
            let xp = sim.primary_vector(&scheme.phase1_primary, None);
            (xp, vec![Cell::default(); n])
        } else {
            let end = b2_next + scheme.b2_per_slot;
            if end > b2_queue.len() {
                return Err(Error::LdaConstruction(format!(
                    "slot {slot} needs b2 bits {b2_next}..{end} but only {} were learned",
                    b2_queue.len()
                )));
            }
            let relayed = b2_queue[b2_next..end].to_vec();
            b2_next = end;
            let xp = sim.primary_vector(&scheme.phase2_primary, Some(&relayed));
            let xc = sim.cognitive_vector(&scheme.phase2_cognitive, &relayed, &xp, offset, &known_relay, slot)?;
            (xp, xc)
        };
        sim.record_sent(&xp);
        sim.record_sent(&xc);

        let mut yp = vec![Cell::default(); n];
        add_shifted(&mut yp, &xp, shift(config.n_d));
        if config.topology != Topology::S {
            add_shifted(&mut yp, &xc, shift(config.n_i));
        }
        let mut yc = vec![Cell::default(); n];
        if config.topology != Topology::Z {
            add_shifted(&mut yc, &xp, shift(config.n_i));
        }
        add_shifted(&mut yc, &xc, shift(config.n_d));
        let mut yf = vec![Cell::default(); n];

        let orders = &scheme.decode_orders;
        let (got_p, got_c) = if listening {
            add_shifted(&mut yf, &xp, shift(config.n_f));
            let relayed = sim.decode(&yf, &orders.relay_listen, &mut known_relay, "CTx", slot)?;
            b2_queue.extend(relayed.into_iter().filter(|s| s.block == Block::B2));
            let p = sim.decode(&yp, &orders.primary_listen, &mut known_p, "PRx", slot)?;
            (p, Vec::new())
        } else {
            let p = sim.decode(&yp, &orders.primary_transmit, &mut known_p, "PRx", slot)?;
            let c = sim.decode(&yc, &orders.cognitive_transmit, &mut known_c, "CRx", slot)?;
            (p, c)
        };
        for s in got_p.iter().filter(|s| s.block.is_primary()) {
            *delivered.entry(s.block).or_default() += 1;
        }
        for s in got_c.iter().filter(|s| s.block.is_cognitive()) {
            *delivered.entry(s.block).or_default() += 1;
        }

        records.push(SlotRecord {
            slot,
            listening,
            primary_tx: to_bits(&xp),
            cognitive_tx: to_bits(&xc),
            primary_rx: to_bits(&yp),
            cognitive_rx: to_bits(&yc),
            relay_rx: to_bits(&yf),
        });
    }

    // Every allocated message bit must have reached its receiver.
    for (&block, &count) in &sim.counters {
        let got = delivered.get(&block).copied().unwrap_or(0);
        let expected = if block == Block::B2 { b2_queue.len() } else { count as usize };
        if got != expected {
            return Err(Error::LdaConstruction(format!(
                "{} bits of {} delivered out of {expected}",
                got,
                block.as_str()
            )));
        }
    }
    if b2_next != b2_queue.len() {
        return Err(Error::LdaConstruction(format!(
            "{} b2 bits learned but {b2_next} forwarded",
            b2_queue.len()
        )));
    }

    let r_p = delivered.iter().filter(|(b, _)| b.is_primary()).map(|(_, &v)| v).sum();
    let r_c = delivered.iter().filter(|(b, _)| b.is_cognitive()).map(|(_, &v)| v).sum();
    Ok(LdaTrace {
        slots: records,
        decode_log: sim.log,
        delivered,
        r_p,
        r_c,
        b2_learned: b2_queue.len(),
        b2_forwarded: b2_next,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{lda_scheme_for, lda_verify, reference_configs};
    use super::*;

    fn run(n_d: usize, n_i: usize, n_f: usize, t: Topology) -> (LdaTrace, Ratio<i64>) {
        let cfg = LdaConfig::new(n_d, n_i, n_f, t);
        let scheme = lda_scheme_for(&cfg).unwrap();
        let trace = lda_simulate(&cfg, &scheme, &Payload::Random { seed: 7 }).unwrap();
        let rate = lda_normalized_sumrate(&trace, &cfg, scheme.slots());
        (trace, rate)
    }

    #[test]
    fn very_weak_point() {
        let (trace, rate) = run(4, 1, 8, Topology::Symmetric);
        assert_eq!((trace.r_p, trace.r_c), (16, 16));
        assert_eq!(rate, Ratio::new(4, 5));
    }

    #[test]
    fn very_strong_point() {
        let (trace, rate) = run(2, 6, 8, Topology::Symmetric);
        assert_eq!((trace.r_p, trace.r_c), (14, 6));
        assert_eq!(rate, Ratio::new(5, 4));
    }

    #[test]
    fn weak_points() {
        assert_eq!(run(5, 3, 10, Topology::Symmetric).1, Ratio::new(2, 3));
        assert_eq!(run(20, 11, 40, Topology::Symmetric).1, Ratio::new(2, 3));
    }

    #[test]
    fn z_and_s_points() {
        assert_eq!(run(2, 6, 8, Topology::Z).1, Ratio::new(5, 4));
        assert_eq!(run(2, 1, 6, Topology::S).1, Ratio::new(9, 10));
        assert_eq!(run(2, 3, 6, Topology::S).1, Ratio::new(9, 10));
    }

    #[test]
    fn all_reference_configs_match_gdof() {
        for cfg in reference_configs() {
            let v = lda_verify(&cfg, 11).unwrap();
            assert!(v.matches, "{cfg:?}: {} vs {}", v.rate, v.gdof);
        }
    }

    #[test]
    fn b2_conservation() {
        let (trace, _) = run(5, 3, 10, Topology::Symmetric);
        assert_eq!(trace.b2_learned, trace.b2_forwarded);
        assert_eq!(trace.delivered[&Block::B2], trace.b2_learned);
    }

    #[test]
    fn payload_is_deterministic_per_symbol() {
        let p = Payload::Random { seed: 3 };
        let s = Symbol {
            block: Block::B3p,
            index: 17,
        };
        assert_eq!(p.bit(s), p.bit(s));
        let ones = (0..256)
            .filter(|&i| p.bit(Symbol { block: Block::B1, index: i }))
            .count();
        assert!((64..192).contains(&ones));
    }

    #[test]
    fn dump_lines() {
        let (trace, _) = run(4, 1, 8, Topology::Symmetric);
        let dump = trace.dump();
        assert_eq!(dump.lines().count(), 4 * trace.slots.len());
        assert!(dump.starts_with("0,PTx,"));
        assert!(dump.contains("0,CTx.rx,"));
    }
}
