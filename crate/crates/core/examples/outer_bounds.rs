//! Traces the three sum-rate outer bounds against the listening fraction and
//! reports the optimized minimum.

use hdccic::{gains_from_exponents, outer_min, ExponentPoint, GammaPolicy, Topology};

fn main() -> hdccic::Result<()> {
    let point = ExponentPoint::new(3.0, 4.0, Topology::Symmetric)?;
    let gains = gains_from_exponents(&point, 40.0)?;

    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "gamma", "cs", "dt", "pv", "min");
    for k in 0..=10 {
        let ob = outer_min(&gains, GammaPolicy::Fixed(k as f64 / 10.0))?;
        println!(
            "{:>6.2} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            ob.gamma, ob.cs_bits, ob.dt_bits, ob.pv_bits, ob.min_bits
        );
    }

    let best = outer_min(&gains, GammaPolicy::Optimize)?;
    println!("\noptimized: gamma = {:.6}, min = {:.4} bits", best.gamma, best.min_bits);
    Ok(())
}
