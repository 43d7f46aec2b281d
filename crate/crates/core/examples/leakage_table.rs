//! Missing population of |r_c 1_t> after the target 2π pulse for the shipped
//! leakage cases, five-state model.
//!
//!     cargo run --release --example leakage_table

use darkgate::analysis::leakage_study;
use darkgate::cases::CaseTable;

fn main() -> darkgate::Result<()> {
    let table = CaseTable::builtin();
    println!("case  T_t(ns)  peak/2pi(MHz)   beta_rr/2pi   beta_ab/2pi     missing   reference");
    for case in &table.cases {
        let r = leakage_study(case, 1e-11)?;
        let mhz = |w: f64| w / std::f64::consts::TAU;
        println!(
            "{:>4}  {:>7.3}  {:>13.2}  {:>12.2}  {:>12.2}  {:>10.3e}  {:>10}",
            r.id,
            r.duration * 1e3,
            mhz(r.peak_rabi),
            mhz(r.beta_rr),
            mhz(r.beta_ab),
            r.missing,
            r.reference.map_or("-".into(), |m| format!("{m:.1e}"))
        );
        for w in &r.warnings {
            println!("      warning: {w}");
        }
    }
    Ok(())
}
