//! The conventional blockade gate in its three variants: smooth pulse with
//! split-pulse phase compensation, square pulse, and the square pulse at
//! Ω_t = B_sh/√3.
//!
//!     cargo run --release --example blockade_gate

use darkgate::analysis::{blockade_report, BlockadeMode};
use darkgate::protocol::{GateConfig, Mechanism};

fn main() -> darkgate::Result<()> {
    let cfg = GateConfig {
        mechanism: Mechanism::Blockade,
        btau: Some(1e6),
        ..GateConfig::default()
    };
    for mode in [BlockadeMode::Adiabatic, BlockadeMode::Square, BlockadeMode::Magic] {
        let r = blockade_report(&cfg, mode)?;
        println!("{mode}:");
        println!("  peak Rabi / B_sh      {:.5}", r.peak_rabi / r.b_sh);
        println!("  |c_r(T)|              {:.3e}", r.cr.norm());
        println!("  arg c_1(T)            {:+.8}  (expected {:+.8})", r.c1.arg(), wrap(r.expected_phase));
        println!("  <|c_r|^2> last period {:.4e}", r.residual_average);
        if let Some(e) = r.residual_estimate {
            println!("  Omega^2/(2 B_sh^2)    {e:.4e}");
        }
        if let Some(d) = r.closed_form_deviation {
            println!("  closed-form deviation {d:.2e}");
        }
        if let Some((exact, scale)) = r.sensitivity {
            println!("  dphi/dB exact         {exact:.4e}   pi Omega_t0/B^2 = {scale:.4e}");
        }
        if let Some(g) = r.gate {
            println!(
                "  gate F uncorrected {:.6}   split + Z corrected {:.6}",
                g.fidelity_uncorrected, g.fidelity_corrected
            );
        }
        println!("  budget mean E         {:.3e}", r.budget_mean.total);
    }
    Ok(())
}

fn wrap(x: f64) -> f64 {
    let t = std::f64::consts::TAU;
    let y = x.rem_euclid(t);
    if y > std::f64::consts::PI {
        y - t
    } else {
        y
    }
}
