//! Spectrum of the three-state model {|r1>, |rr>, |ab>} versus drive strength.
//! The middle eigenvalue stays at zero: that is the dark state.

use std::f64::consts::TAU;

use darkgate::hamiltonians::build_h3;

fn main() -> darkgate::Result<()> {
    let b = TAU * 350.0;
    println!("{:>8} {:>12} {:>12} {:>12} {:>10} {:>10} {:>10}", "Om/B", "l-/B", "l0/B", "l+/B", "|r1|^2", "|rr|^2", "|ab|^2");
    for k in 0..=10 {
        let om = 0.2 * k as f64 * b;
        let e = build_h3(om, b)?.eig_hermitian()?;
        let dark = &e.vectors[1];
        let p = dark.populations();
        println!(
            "{:>8.2} {:>12.6} {:>12.2e} {:>12.6} {:>10.6} {:>10.2e} {:>10.6}",
            om / b,
            e.values[0] / b,
            e.values[1] / b,
            e.values[2] / b,
            p[0],
            p[1],
            p[2]
        );
    }
    Ok(())
}
