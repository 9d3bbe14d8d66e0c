//! Runs the bit-level deterministic model at the reference points and dumps
//! one trace slot by slot.

use hdccic::lda::{lda_normalized_sumrate, lda_scheme_for, lda_simulate, reference_configs, LdaConfig, Payload};
use hdccic::Topology;

fn main() -> hdccic::Result<()> {
    for cfg in reference_configs() {
        let scheme = lda_scheme_for(&cfg)?;
        let trace = lda_simulate(&cfg, &scheme, &Payload::Random { seed: 7 })?;
        let rate = lda_normalized_sumrate(&trace, &cfg, scheme.slots());
        println!(
            "{} n=({}, {}, {}) {:?}: {} listen + {} transmit slots, r_p={} r_c={}, rate {} vs gdof {}",
            cfg.topology,
            cfg.n_d,
            cfg.n_i,
            cfg.n_f,
            scheme.kind,
            scheme.listen_slots,
            scheme.transmit_slots,
            trace.r_p,
            trace.r_c,
            rate,
            cfg.gdof()?
        );
    }

    let cfg = LdaConfig::new(4, 1, 8, Topology::Symmetric);
    let scheme = lda_scheme_for(&cfg)?;
    let trace = lda_simulate(&cfg, &scheme, &Payload::Random { seed: 7 })?;
    println!("\ntrace for n=(4, 1, 8):");
    print!("{}", trace.dump());
    for ev in &trace.decode_log {
        println!("slot {} {} decodes {} bits of {}", ev.slot, ev.receiver, ev.bits, ev.block.as_str());
    }
    Ok(())
}
