//! Gap between the optimized outer bound and the best inner bound at
//! alpha = 0.55, beta = 2 over an SNR sweep.

use hdccic::analysis::{gap_sweep, SweepRange};
use hdccic::{ExponentPoint, Topology};

fn main() -> hdccic::Result<()> {
    let point = ExponentPoint::new(0.55, 2.0, Topology::Symmetric)?;
    let snr = SweepRange::new(0.0, 80.0, 5.0)?;
    let plain = gap_sweep(&point, &snr, false)?;
    let tuned = gap_sweep(&point, &snr, true)?;

    println!("{:>6} {:>10} {:>10} {:>8} {:>10}  scheme", "snr", "outer", "inner", "gap", "opt gap");
    for (p, t) in plain.iter().zip(&tuned) {
        println!(
            "{:>6.1} {:>10.4} {:>10.4} {:>8.4} {:>10.4}  {}",
            p.snr_db,
            p.ob_bits,
            p.ib_bits,
            p.gap_bits,
            t.gap_bits,
            t.scheme_id.as_str()
        );
    }
    Ok(())
}
