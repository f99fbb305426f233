//! Squeeze force and unyielded-zone radius over a small (B, n) grid.
//!
//! Run with `cargo run --release --example force_table`.

use hbsqueeze::{FluidParams, Squeeze};

fn main() -> hbsqueeze::Result<()> {
    let eps = 0.1;
    println!("Squeeze force, eps = {eps}");
    println!(
        "{:>8} {:>6} {:>12} {:>12} {:>12} {:>12} {:>10}",
        "B", "n", "F0", "eps F1", "eps pi pR", "F", "r0"
    );
    for n in [0.25, 0.5, 1.0, 1.5] {
        for b in [0.01, 0.1, 1.0, 10.0, 100.0] {
            let s = Squeeze::new(FluidParams::stokes(b, n, eps)?)?;
            let f = s.total_force()?;
            let r0 = s.find_r0()?.map_or("-".to_string(), |r| format!("{r:.5}"));
            println!(
                "{b:>8} {n:>6} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {r0:>10}",
                f.f0,
                eps * f.f1,
                f.edge_contribution(),
                f.total
            );
        }
    }
    Ok(())
}
