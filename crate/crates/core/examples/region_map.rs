//! Draws the regime partition of the (alpha, beta) plane as a character map.

use hdccic::analysis::{region_map, SweepRange};
use hdccic::Topology;

fn main() -> hdccic::Result<()> {
    let alpha = SweepRange::new(0.0, 4.0, 0.1)?;
    let beta = SweepRange::new(0.0, 6.0, 0.25)?;
    for t in Topology::ALL {
        let rows = region_map(t, &alpha, &beta)?;
        let width = alpha.points().len();
        println!("{t}: beta rows from top, alpha 0..4 left to right (region 10 is 'a', '+' marks a cooperation gain)");
        let lines: Vec<String> = rows
            .chunks(beta.points().len())
            .map(|col| col.iter().map(|r| char::from_digit(u32::from(r.region), 11).unwrap()).collect())
            .collect();
        for (j, b) in beta.points().iter().enumerate().rev() {
            let line: String = (0..width).map(|i| lines[i].as_bytes()[j] as char).collect();
            let gain: String = (0..width)
                .map(|i| if rows[i * beta.points().len() + j].coop.starts_with("strict") { '+' } else { ' ' })
                .collect();
            println!("{b:>5.2} {line}  {gain}");
        }
        println!();
    }
    Ok(())
}
