//! CNOT from the dark-state gate: local Z on both atoms turns
//! diag(1, -1, -1, -1) into the textbook CZ, then Hadamards on the target.

use darkgate::linalg::{Operator, C64};
use darkgate::protocol::{pedersen_fidelity, run_gate, GateConfig};

fn hadamard_target() -> Operator {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Operator::from_fn(4, |i, j| {
        // index = 2 * control + target
        if i / 2 != j / 2 {
            return C64::new(0.0, 0.0);
        }
        let sign = if i % 2 == 1 && j % 2 == 1 { -1.0 } else { 1.0 };
        C64::new(sign * h, 0.0)
    })
    .expect("4x4")
}

fn cnot() -> Operator {
    Operator::from_fn(4, |i, j| {
        let flip = |k: usize| if k >= 2 { k ^ 1 } else { k };
        C64::new(if flip(j) == i { 1.0 } else { 0.0 }, 0.0)
    })
    .expect("4x4")
}

fn main() -> darkgate::Result<()> {
    let cfg = GateConfig {
        btau: Some(1e6),
        ..GateConfig::default()
    };
    let cz = run_gate(&cfg)?;
    let h = hadamard_target();
    let zz = Operator::diagonal(&[1.0, -1.0, -1.0, 1.0].map(|x| C64::new(x, 0.0)));
    let u = h.matmul(&zz.matmul(&cz.u)?)?.matmul(&h)?;
    println!("CZ   F = {:.6}", cz.fidelity);
    println!("CNOT F = {:.6}", pedersen_fidelity(&u, &cnot())?);
    for row in 0..4 {
        let cells: Vec<String> = (0..4).map(|c| format!("{:+.4}", u.get(row, c).re)).collect();
        println!("  {}", cells.join(" "));
    }
    Ok(())
}
