//! Audits the constant-gap guarantees on the default grids, with a per-regime
//! breakdown.

use hdccic::analysis::{default_grids, theorem_gap_audit};
use hdccic::Topology;

fn main() -> hdccic::Result<()> {
    let (alphas, betas, snrs) = default_grids();
    for t in Topology::ALL {
        let r = theorem_gap_audit(t, &alphas, &betas, &snrs)?;
        println!(
            "{t}: {} points, worst {:.4} bits at alpha={} beta={} {} dB (bound {})",
            r.points, r.worst.gap_bits, r.worst.alpha, r.worst.beta, r.worst.snr_db, r.bound_bits
        );
        for g in &r.per_regime {
            println!(
                "  {:>2} {:<30} {:>6} pts  max {:>7.4}  constant {:>7.4}{}",
                g.index,
                g.label,
                g.points,
                g.max_gap_bits,
                g.regime_constant_bits,
                if g.exceeds_regime_constant { "  (above)" } else { "" }
            );
        }
    }
    Ok(())
}
