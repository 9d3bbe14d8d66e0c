//! Prints the gDoF, optimal listening fraction and cooperation class along an
//! alpha sweep at fixed cooperation strength.

use hdccic::{cooperation_classification, gdof_closed_form, ExponentPoint, Topology};

fn main() -> hdccic::Result<()> {
    let beta = std::env::args().nth(1).map_or(Ok(2.0), |s| s.parse()).expect("beta must be a number");
    for t in Topology::ALL {
        println!("{t} (beta = {beta})");
        println!("{:>6} {:>8} {:>8} {:>8} {:>8}  class", "alpha", "d", "gamma*", "nocoop", "ideal");
        for k in 0..=16 {
            let p = ExponentPoint::new(k as f64 * 0.25, beta, t)?;
            let r = gdof_closed_form(&p);
            println!(
                "{:>6.2} {:>8.4} {:>8.4} {:>8.4} {:>8.4}  {}",
                p.alpha,
                r.d,
                r.gamma_star,
                r.d_nocoop,
                r.d_ideal,
                cooperation_classification(&p).as_str()
            );
        }
        println!();
    }
    Ok(())
}
