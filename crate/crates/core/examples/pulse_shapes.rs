//! Envelopes of the three shapes at equal area and duration: peak Rabi
//! frequency and the shape constant κ of the Rydberg-time integral.

use std::f64::consts::TAU;

use darkgate::pulses::{kappa_factor, PulseShape};

fn main() -> darkgate::Result<()> {
    let b = TAU * 350.0;
    let alpha = 0.1;
    let t = TAU / (alpha * b);
    println!("T = {:.4} ns, B/2pi = 350 MHz", t * 1e3);
    println!("{:<10} {:>16} {:>12} {:>8}", "shape", "peak/2pi (MHz)", "peak/(aB)", "kappa");
    for shape in [PulseShape::Square, PulseShape::Sine, PulseShape::ShiftedGaussian] {
        let p = shape.build(t, TAU, 0.2)?;
        // κ is defined in the weak-drive limit
        let kappa = kappa_factor(&p, 100.0 * b)?;
        println!(
            "{:<10} {:>16.3} {:>12.4} {:>8.4}",
            shape,
            p.peak() / TAU,
            p.peak() / (alpha * b),
            kappa
        );
    }

    let g = PulseShape::ShiftedGaussian.build(t, TAU, 0.2)?;
    println!("\nGaussian envelope, Omega(t)/2pi in MHz");
    for k in 0..=10 {
        let s = t * k as f64 / 10.0;
        let v = g.value(s) / TAU;
        println!("{:>7.3} ns {:>8.3} {}", s * 1e3, v, "#".repeat((v / 2.0).round() as usize));
    }
    Ok(())
}
