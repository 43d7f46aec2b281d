//! Gate error against B·τ for Gaussian and square target pulses, next to
//! the analytic decay estimate.
//!
//!     cargo run --release --example btau_sweep

use darkgate::analysis::{default_btau_grid, sweep_btau};
use darkgate::protocol::GateConfig;
use darkgate::pulses::PulseShape;

fn main() -> darkgate::Result<()> {
    let rows = sweep_btau(
        &GateConfig::default(),
        &default_btau_grid(),
        &[PulseShape::ShiftedGaussian, PulseShape::Square],
        None,
    )?;
    println!("{:>10} {:>9} {:>11} {:>11} {:>11}", "B tau", "shape", "E_sim", "E_decay", "E_sim/E_dec");
    for r in &rows {
        println!(
            "{:>10.3e} {:>9} {:>11.3e} {:>11.3e} {:>11.3}",
            r.btau,
            r.shape,
            r.e_sim,
            r.e_analytic_solid,
            r.e_sim / r.e_analytic_solid
        );
    }
    Ok(())
}
