//! Runs the default dark-state gate at a few lifetimes and prints the
//! gate matrix and the average error.
//!
//!     cargo run --release --example gate_fidelity -- [btau ...]

use darkgate::protocol::{run_gate, GateConfig};

fn main() -> darkgate::Result<()> {
    let mut grid: Vec<Option<f64>> = std::env::args().skip(1).map(|a| a.parse().ok()).collect();
    if grid.is_empty() {
        grid = vec![None, Some(1e4), Some(1e5), Some(1e6)];
    }
    for btau in grid {
        let cfg = GateConfig {
            btau,
            ..GateConfig::default()
        };
        let start = std::time::Instant::now();
        let r = run_gate(&cfg)?;
        let label = btau.map_or("inf".to_string(), |b| format!("{b:.0e}"));
        println!("B tau = {label:>6}   E = {:.3e}   F = {:.6}   ({:.2?})", r.error, r.fidelity, start.elapsed());
        for row in 0..4 {
            let cells: Vec<String> = (0..4)
                .map(|c| {
                    let z = r.u.get(row, c);
                    format!("{:+.5}{:+.5}i", z.re, z.im)
                })
                .collect();
            println!("    {}", cells.join("  "));
        }
        for w in &r.warnings {
            println!("    warning: {w}");
        }
    }
    Ok(())
}
