//! Gaussian superposition with successive decoding.
//!
//! Each codeword is a layer of unit-variance Gaussian signal scaled by a
//! power fraction at its transmitter. A receiver decodes its layers in a
//! fixed order; each decode treats every not-yet-decoded layer as noise,
//! except layers the codeword was dirty-paper coded against at that
//! receiver.

use std::collections::BTreeMap;

use super::Codeword;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transmitter {
    Primary,
    Cognitive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub codeword: Codeword,
    pub from: Transmitter,
    pub power: f64,
}

impl Layer {
    pub fn new(codeword: Codeword, from: Transmitter, power: f64) -> Self {
        Layer {
            codeword,
            from,
            power,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decoder {
    pub name: &'static str,
    pub gain_primary: f64,
    pub gain_cognitive: f64,
    pub order: Vec<Codeword>,
    /// `(precoded, known)`: the first codeword sees the second as known.
    pub dirty_paper: Vec<(Codeword, Codeword)>,
}

impl Decoder {
    pub fn new(name: &'static str, gain_primary: f64, gain_cognitive: f64, order: &[Codeword]) -> Self {
        Decoder {
            name,
            gain_primary,
            gain_cognitive,
            order: order.to_vec(),
            dirty_paper: Vec::new(),
        }
    }

    pub fn with_dirty_paper(mut self, precoded: Codeword, known: Codeword) -> Self {
        self.dirty_paper.push((precoded, known));
        self
    }

    fn received(&self, layer: &Layer) -> f64 {
        let gain = match layer.from {
            Transmitter::Primary => self.gain_primary,
            Transmitter::Cognitive => self.gain_cognitive,
        };
        gain * layer.power
    }

    /// Per-use rate supported for each codeword in the decoding order.
    pub fn rates(&self, layers: &[Layer]) -> Vec<(Codeword, f64)> {
        let mut pending: Vec<&Layer> = layers.iter().collect();
        let mut out = Vec::with_capacity(self.order.len());
        for &target in &self.order {
            let signal: f64 = pending
                .iter()
                .filter(|l| l.codeword == target)
                .map(|l| self.received(l))
                .sum();
            let noise: f64 = 1.0
                + pending
                    .iter()
                    .filter(|l| l.codeword != target)
                    .filter(|l| !self.dirty_paper.contains(&(target, l.codeword)))
                    .map(|l| self.received(l))
                    .sum::<f64>();
            out.push((target, (1.0 + signal / noise).log2()));
            pending.retain(|l| l.codeword != target);
        }
        out
    }
}

/// Per-use rate of every codeword: the minimum over the decoders that decode it.
pub fn phase_rates(layers: &[Layer], decoders: &[Decoder]) -> BTreeMap<Codeword, f64> {
    let mut rates: BTreeMap<Codeword, f64> = BTreeMap::new();
    for d in decoders {
        for (cw, r) in d.rates(layers) {
            rates
                .entry(cw)
                .and_modify(|v| *v = v.min(r))
                .or_insert(r);
        }
    }
    rates
}
