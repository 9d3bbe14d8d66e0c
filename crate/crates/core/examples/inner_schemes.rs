//! Evaluates every achievable scheme that applies at a channel, with the
//! closed-form power splits and with numerically optimized splits.

use hdccic::inner::{applicable_schemes, inner_scheme, optimize_scheme};
use hdccic::{gains_from_exponents, ExponentPoint, Topology};

fn main() -> hdccic::Result<()> {
    let cases = [
        (0.55, 2.0, Topology::Symmetric),
        (3.0, 4.0, Topology::Symmetric),
        (0.25, 3.0, Topology::Symmetric),
        (1.5, 3.0, Topology::S),
        (0.5, 3.0, Topology::S),
        (3.0, 4.0, Topology::Z),
    ];
    for (alpha, beta, t) in cases {
        let gains = gains_from_exponents(&ExponentPoint::new(alpha, beta, t)?, 60.0)?;
        println!("{t} alpha={alpha} beta={beta} at 60 dB");
        for id in applicable_schemes(&gains, t)? {
            let plain = inner_scheme(id, &gains)?;
            let tuned = optimize_scheme(id, &gains)?;
            println!(
                "  {:<16} {:>9.4} bits (gamma' {:.4})   optimized {:>9.4}",
                id.as_str(),
                plain.sum_bits,
                plain.gamma_prime,
                tuned.sum_bits
            );
            for (cw, r) in &plain.component_rates {
                println!("      {:<4} {r:.4}", cw.as_str());
            }
        }
    }
    Ok(())
}
