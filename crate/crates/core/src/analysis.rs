//! Analytic error estimates, blockade-gate closed forms, Bτ sweeps and the
//! five-state leakage study.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cases::LeakageCase;
use crate::error::{ensure_positive, Error, Result};
use crate::hamiltonians::{build_h2_blockade, build_h5};
use crate::linalg::{Basis, Label, Level, StateVector};
use crate::propagator::{propagate, survival_probability, FnHamiltonian, Options, MIN_TOL};
use crate::protocol::{apply_phase_correction, run_gate, GateConfig, Mechanism, QubitInput};
use crate::pulses::{make_shifted_gaussian, make_square, PulseEnvelope, PulseShape};

/// Error probabilities by mechanism; `total` is their sum.
#[derive(Copy, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub decay_control: f64,
    pub decay_target: f64,
    pub decay_ryry: f64,
    pub rotation: f64,
    pub phase: f64,
    pub total: f64,
}

impl ErrorBudget {
    pub fn new(decay_control: f64, decay_target: f64, decay_ryry: f64, rotation: f64, phase: f64) -> Self {
        ErrorBudget {
            decay_control,
            decay_target,
            decay_ryry,
            rotation,
            phase,
            total: decay_control + decay_target + decay_ryry + rotation + phase,
        }
    }

    /// Component-wise mean.
    pub fn mean(rows: &[ErrorBudget]) -> ErrorBudget {
        let n = rows.len().max(1) as f64;
        let s = |f: fn(&ErrorBudget) -> f64| rows.iter().map(f).sum::<f64>() / n;
        ErrorBudget::new(
            s(|b| b.decay_control),
            s(|b| b.decay_target),
            s(|b| b.decay_ryry),
            s(|b| b.rotation),
            s(|b| b.phase),
        )
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct AnalyticError {
    /// Input-averaged budget of the adiabatic gate.
    pub budget: ErrorBudget,
    /// E ≈ η Γ/B with η = 5π/(4α).
    pub eta: f64,
    /// Reference value 2Γ/B.
    pub reference_bound: f64,
    /// Ω_t0 minimizing the total, 2√5 B.
    pub optimal_rabi: f64,
    /// √5 π Γ / (4B)
    pub minimum: f64,
}

/// `E ≈ (πΓ/4) [5/Ω_t0 + Ω_t0/(4B²)]` averaged over the four inputs.
///
/// The 5/Ω term splits into control decay (`πΓ/Ω`, inputs 10 and 11 spend
/// T_t in `|r_c>`) and target decay (`πΓ/4Ω`, input 01 spends T_t/2 in `|r_t>`).
pub fn analytic_error(gamma: f64, b: f64, omega_t0: f64) -> Result<AnalyticError> {
    ensure_positive("gamma", gamma)?;
    ensure_positive("B", b)?;
    ensure_positive("omega_t0", omega_t0)?;
    let budget = ErrorBudget::new(
        PI * gamma / omega_t0,
        PI * gamma / (4.0 * omega_t0),
        PI * gamma * omega_t0 / (16.0 * b * b),
        0.0,
        0.0,
    );
    Ok(AnalyticError {
        budget,
        eta: eta(omega_t0 / b),
        reference_bound: 2.0 * gamma / b,
        optimal_rabi: 2.0 * 5f64.sqrt() * b,
        minimum: 5f64.sqrt() * PI * gamma / (4.0 * b),
    })
}

/// η = 5π/(4α)
pub fn eta(alpha: f64) -> f64 {
    5.0 * PI / (4.0 * alpha)
}

/// Per-input error of step (ii) of the blockade gate.
///
/// `square` adds the rotation error of a non-adiabatic pulse; `delta_b` is the
/// uncertainty of the blockade shift.
pub fn blockade_budget(gamma: f64, b_sh: f64, omega_t: f64, delta_b: f64, square: bool) -> Result<Vec<(QubitInput, ErrorBudget)>> {
    ensure_positive("B_sh", b_sh)?;
    ensure_positive("omega_t", omega_t)?;
    if !(gamma >= 0.0 && delta_b >= 0.0) {
        return Err(Error::param("gamma", "gamma and delta_b must be >= 0"));
    }
    let tc = 2.0 * PI * gamma / omega_t;
    Ok(QubitInput::ALL
        .iter()
        .map(|&q| {
            let b = match (q.control, q.target) {
                (false, false) => ErrorBudget::default(),
                (false, true) => ErrorBudget::new(0.0, PI * gamma / omega_t, 0.0, 0.0, 0.0),
                (true, false) => ErrorBudget::new(tc, 0.0, 0.0, 0.0, 0.0),
                (true, true) => ErrorBudget::new(
                    tc,
                    0.0,
                    PI * gamma * omega_t / (4.0 * b_sh * b_sh),
                    if square { omega_t * omega_t / (2.0 * b_sh * b_sh) } else { 0.0 },
                    PI * delta_b * omega_t / (b_sh * b_sh),
                ),
            };
            (q, b)
        })
        .collect())
}

/// Amplitudes of `|r_c 1_t>` and `|r_c r_t>` under a constant blockaded drive.
///
/// Solves `i d/dt c = H₂ c` with `c(0) = (1, 0)`:
/// `c₁ = e^{-iφ}[cos(Ω̄t/2) + i(B_sh/Ω̄) sin(Ω̄t/2)]`,
/// `c_r = -i e^{-iφ} (Ω/Ω̄) sin(Ω̄t/2)`, with `φ = B_sh t/2`.
pub fn blockade_square_solution(omega_t: f64, b_sh: f64, t: f64) -> (C64, C64) {
    let bar = (b_sh * b_sh + omega_t * omega_t).sqrt();
    if bar == 0.0 {
        return (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    }
    let (s, c) = (0.5 * bar * t).sin_cos();
    let rot = C64::from_polar(1.0, -0.5 * b_sh * t);
    let c1 = rot * C64::new(c, b_sh / bar * s);
    let cr = rot * C64::new(0.0, -omega_t / bar * s);
    (c1, cr)
}

/// Ω_t = B_sh/√(4k² - 1): a square 2π pulse leaves no `|r_c r_t>` population.
pub fn magic_rabi(b_sh: f64, k: u32) -> Result<f64> {
    if k < 1 {
        return Err(Error::param("k", "must be >= 1"));
    }
    let k = k as f64;
    Ok(b_sh / (4.0 * k * k - 1.0).sqrt())
}

/// λ₋ = ½(B_sh - √(B_sh² + Ω²)) without cancellation for small Ω.
pub fn lower_eigenvalue(omega: f64, b_sh: f64) -> f64 {
    let root = (b_sh * b_sh + omega * omega).sqrt();
    if b_sh >= 0.0 {
        -0.5 * omega * omega / (b_sh + root).max(f64::MIN_POSITIVE)
    } else {
        0.5 * (b_sh - root)
    }
}

/// φ = ∫ λ₋(t) dt over the pulse.
pub fn adiabatic_phase(pulse: &PulseEnvelope, b_sh: f64) -> f64 {
    pulse.integrate(|om| lower_eigenvalue(om, b_sh))
}

/// dφ/dB_sh = ∫ ½(1 - B_sh/√(B_sh² + Ω²)) dt
pub fn phase_sensitivity(pulse: &PulseEnvelope, b_sh: f64) -> f64 {
    pulse.integrate(|om| {
        let root = (b_sh * b_sh + om * om).sqrt();
        0.5 * om * om / (root * (root + b_sh))
    })
}

/// Default Bτ grid: 13 log-spaced points from 10³ to 10⁷.
pub fn default_btau_grid() -> Vec<f64> {
    (0..13).map(|k| 10f64.powf(3.0 + k as f64 / 3.0)).collect()
}

/// One row of a Bτ sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub btau: f64,
    pub shape: PulseShape,
    pub e_sim: f64,
    /// η/(Bτ)
    pub e_analytic_solid: f64,
    /// η/(Bτ) + α²/16
    pub e_analytic_dashed: f64,
    pub fidelity: f64,
    /// Rydberg population left after the gate, averaged over inputs.
    pub residual_rydberg: f64,
    pub notes: Vec<String>,
}

/// Runs the gate for every (Bτ, shape); `shape` selects the target pulse.
///
/// Rows come back in grid order with shapes varying fastest. Failures are
/// recorded as NaN rows with a note.
pub fn sweep_btau(base: &GateConfig, grid: &[f64], shapes: &[PulseShape], jobs: Option<usize>) -> Result<Vec<SweepRecord>> {
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::param("grid", "must be sorted ascending"));
    }
    for &b in grid {
        ensure_positive("btau", b)?;
    }
    base.validate()?;
    let work: Vec<(f64, PulseShape)> = grid.iter().flat_map(|&b| shapes.iter().map(move |&s| (b, s))).collect();
    let row = |&(btau, shape): &(f64, PulseShape)| {
        let cfg = GateConfig {
            btau: Some(btau),
            tau_us: None,
            target_shape: shape,
            ..base.clone()
        };
        let e_solid = eta(cfg.alpha) / btau;
        let dashed = e_solid + cfg.alpha * cfg.alpha / 16.0;
        match run_gate(&cfg) {
            Ok(r) => SweepRecord {
                btau,
                shape,
                e_sim: r.error,
                e_analytic_solid: e_solid,
                e_analytic_dashed: dashed,
                fidelity: r.fidelity,
                residual_rydberg: r.diagnostics.iter().map(|d| d.residual_rydberg).sum::<f64>() / r.diagnostics.len() as f64,
                notes: r.warnings,
            },
            Err(e) => SweepRecord {
                btau,
                shape,
                e_sim: f64::NAN,
                e_analytic_solid: e_solid,
                e_analytic_dashed: dashed,
                fidelity: f64::NAN,
                residual_rydberg: f64::NAN,
                notes: vec![e.to_string()],
            },
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::param("jobs", e.to_string()))?;
    Ok(pool.install(|| work.par_iter().map(row).collect()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeakageOutcome {
    pub id: u32,
    /// 1 - P(|r_c 1_t>) at the end of the pulse.
    pub missing: f64,
    pub reference: Option<f64>,
    pub duration: f64,
    pub peak_rabi: f64,
    pub beta_rr: f64,
    pub beta_ab: f64,
    pub warnings: Vec<String>,
}

/// Propagates `|r_c 1_t>` through a shifted-Gaussian 2π pulse in the five-state model.
pub fn leakage_study(case: &LeakageCase, tol: f64) -> Result<LeakageOutcome> {
    case.validate()?;
    let c = case.couplings();
    let t = case.duration();
    let pulse = make_shifted_gaussian(t, case.sigma_ratio * t, TAU)?;
    build_h5(0.0, &c)?;
    let h = FnHamiltonian::new(5, |s| build_h5(pulse.value(s), &c).expect("validated couplings"));
    let basis = Basis::five_state();
    let psi = StateVector::basis_state(&basis, Label::new(Level::R, Level::One))?;
    let opts = Options {
        tol,
        max_step: Some(pulse.feature_time() / 20.0),
        samples: 2,
        keep_amplitudes: false,
    };
    let r = propagate(&h, &psi, 0.0, t, &opts)?;
    let p = survival_probability(&r, &basis, Label::new(Level::R, Level::One))?;
    Ok(LeakageOutcome {
        id: case.id,
        missing: 1.0 - p,
        reference: case.missing,
        duration: t,
        peak_rabi: pulse.peak(),
        beta_rr: c.beta_rr(),
        beta_ab: c.beta_ab(),
        warnings: c.dispersive_warnings(),
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockadeMode {
    /// Smooth 2π pulse with Ω_t0 = αB_sh; phase compensated by a split pulse.
    Adiabatic,
    /// Square 2π pulse with Ω_t = αB_sh.
    Square,
    /// Square 2π pulse at Ω_t = B_sh/√3.
    Magic,
}

impl fmt::Display for BlockadeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockadeMode::Adiabatic => "adiabatic",
            BlockadeMode::Square => "square",
            BlockadeMode::Magic => "magic",
        })
    }
}

impl FromStr for BlockadeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adiabatic" => Ok(BlockadeMode::Adiabatic),
            "square" => Ok(BlockadeMode::Square),
            "magic" => Ok(BlockadeMode::Magic),
            _ => Err(Error::param("mode", format!("expected adiabatic, square or magic, got `{s}`"))),
        }
    }
}

/// Gate fidelity of the blockade gate in the full model.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct BlockadeGate {
    pub split_phase: f64,
    pub fidelity_uncorrected: f64,
    pub fidelity_corrected: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockadeReport {
    pub mode: BlockadeMode,
    pub b_sh: f64,
    pub peak_rabi: f64,
    pub duration: f64,
    /// λ± at the pulse peak.
    pub eigenvalues: [f64; 2],
    pub c1: C64,
    pub cr: C64,
    /// Phase predicted for c₁(T): closed form for square pulses, -∫λ₋dt otherwise.
    pub expected_phase: f64,
    /// |c_r|² averaged over the last oscillation period of the pulse.
    pub residual_average: f64,
    /// Ω²/(2B_sh²) for square pulses.
    pub residual_estimate: Option<f64>,
    /// Largest deviation from the closed form (square modes).
    pub closed_form_deviation: Option<f64>,
    /// ∫λ₋dt (adiabatic mode).
    pub adiabatic_phase: Option<f64>,
    /// dφ/dB_sh, exact and the πΩ_t0/B_sh² scale (adiabatic mode).
    pub sensitivity: Option<(f64, f64)>,
    pub budget: Vec<(String, ErrorBudget)>,
    pub budget_mean: ErrorBudget,
    pub gate: Option<BlockadeGate>,
}

/// Two-level blockade dynamics and, for the adiabatic mode, the full-model gate.
///
/// `cfg.b_mhz` is taken as B_sh/2π; `cfg.btau` sets Γ for the budget and gate.
pub fn blockade_report(cfg: &GateConfig, mode: BlockadeMode) -> Result<BlockadeReport> {
    cfg.validate()?;
    let b_sh = cfg.interaction();
    let omega0 = match mode {
        BlockadeMode::Magic => magic_rabi(b_sh, 1)?,
        _ => cfg.alpha * b_sh,
    };
    let t = TAU / omega0;
    let pulse = match mode {
        BlockadeMode::Adiabatic => cfg.target_shape.build(t, TAU, cfg.sigma_ratio)?,
        _ => make_square(t, TAU)?,
    };
    let h = FnHamiltonian::new(2, |s| build_h2_blockade(pulse.value(s), b_sh).expect("blockade H"));
    let psi = StateVector::basis_state(&Basis::blockade(), Label::new(Level::R, Level::One))?;
    // the two-level runs are cheap; integrate them well below the gate tolerance
    let tol = (1e-2 * cfg.tol).max(MIN_TOL);
    let r = propagate(&h, &psi, 0.0, t, &Options { tol, samples: cfg.samples, ..Default::default() })?;
    let a = r.final_state.amplitudes();
    let (c1, cr) = (a[0], a[1]);

    let peak = pulse.peak();
    let bar = (b_sh * b_sh + peak * peak).sqrt();
    let eigenvalues = [0.5 * (b_sh - bar), 0.5 * (b_sh + bar)];
    let period = TAU / bar;
    let (mut acc, mut n) = (0.0, 0);
    for (ti, p) in r.times.iter().zip(&r.populations) {
        if *ti >= t - period {
            acc += p[1];
            n += 1;
        }
    }
    let residual_average = acc / n.max(1) as f64;

    let square = mode != BlockadeMode::Adiabatic;
    let (expected_phase, closed_form_deviation, adiabatic, sensitivity, residual_estimate) = if square {
        let (e1, _) = blockade_square_solution(omega0, b_sh, t);
        let max_dev = max_closed_form_deviation(&pulse, b_sh, tol)?;
        (e1.arg(), Some(max_dev), None, None, Some(omega0 * omega0 / (2.0 * b_sh * b_sh)))
    } else {
        let phi = adiabatic_phase(&pulse, b_sh);
        let sens = phase_sensitivity(&pulse, b_sh);
        (-phi, None, Some(phi), Some((sens, PI * omega0 / (b_sh * b_sh))), None)
    };

    let gamma = cfg.gamma();
    // the magic area returns |c_r| to zero at T, so no rotation error remains
    let rows = blockade_budget(gamma, b_sh, omega0, 0.0, mode == BlockadeMode::Square)?;
    let budget_mean = ErrorBudget::mean(&rows.iter().map(|(_, b)| *b).collect::<Vec<_>>());
    let budget = rows.into_iter().map(|(q, b)| (q.to_string(), b)).collect();

    let gate = match (mode, adiabatic) {
        (BlockadeMode::Adiabatic, Some(_)) => {
            let plain = GateConfig {
                mechanism: Mechanism::Blockade,
                split_phase: None,
                ..cfg.clone()
            };
            // halves of the split pulse each accumulate their own phase
            let half = cfg.target_shape.build(0.5 * t, PI, cfg.sigma_ratio)?;
            let phi = 2.0 * adiabatic_phase(&half, b_sh);
            let split = GateConfig {
                split_phase: Some(phi),
                ..plain.clone()
            };
            let uncorrected = run_gate(&plain)?;
            let corrected = apply_phase_correction(&run_gate(&split)?, -phi)?;
            Some(BlockadeGate {
                split_phase: phi,
                fidelity_uncorrected: uncorrected.fidelity,
                fidelity_corrected: corrected.fidelity,
            })
        }
        _ => None,
    };

    Ok(BlockadeReport {
        mode,
        b_sh,
        peak_rabi: peak,
        duration: t,
        eigenvalues,
        c1,
        cr,
        expected_phase,
        residual_average,
        residual_estimate,
        closed_form_deviation,
        adiabatic_phase: adiabatic,
        sensitivity,
        budget,
        budget_mean,
        gate,
    })
}

/// Max |numerical - closed form| over a dense grid for a square blockaded pulse.
pub fn max_closed_form_deviation(pulse: &PulseEnvelope, b_sh: f64, tol: f64) -> Result<f64> {
    let om = pulse.amplitude();
    let h = build_h2_blockade(om, b_sh)?;
    let psi = StateVector::basis_state(&Basis::blockade(), Label::new(Level::R, Level::One))?;
    let opts = Options {
        tol,
        keep_amplitudes: true,
        ..Default::default()
    };
    let r = propagate(&h, &psi, 0.0, pulse.duration(), &opts)?;
    Ok(r.times
        .iter()
        .zip(&r.amplitudes)
        .map(|(&t, a)| {
            let (c1, cr) = blockade_square_solution(om, b_sh, t);
            (a[0] - c1).norm().max((a[1] - cr).norm())
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulses::make_sine;

    #[test]
    fn eta_and_minimum() {
        assert!((eta(0.10472) - 37.5).abs() < 0.1);
        let b = 1.0;
        let gamma = 1e-6;
        let a = analytic_error(gamma, b, 0.10472 * b).unwrap();
        let want = 37.5 * gamma / b;
        assert!((a.budget.total - want).abs() < 0.01 * want);
        assert_eq!(a.reference_bound, 2e-6);
        // grid search for the minimum
        let grid: Vec<f64> = (1..2000).map(|k| k as f64 * 0.005).collect();
        let best = grid
            .iter()
            .copied()
            .min_by(|x, y| {
                let ex = analytic_error(gamma, b, *x).unwrap().budget.total;
                let ey = analytic_error(gamma, b, *y).unwrap().budget.total;
                ex.total_cmp(&ey)
            })
            .unwrap();
        assert!((best - a.optimal_rabi).abs() <= 0.005);
        let at = analytic_error(gamma, b, a.optimal_rabi).unwrap();
        assert!((at.budget.total - a.minimum).abs() < 1e-15);
    }

    #[test]
    fn budget_components_sum() {
        let a = analytic_error(0.01, 2.0, 0.3).unwrap().budget;
        let sum = a.decay_control + a.decay_target + a.decay_ryry + a.rotation + a.phase;
        assert_eq!(a.total, sum);
        assert!(analytic_error(0.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn blockade_budget_matches_main_formula() {
        let (g, b, om) = (1e-4, 5.0, 0.4);
        let rows = blockade_budget(g, b, om, 0.0, false).unwrap();
        assert_eq!(rows[0].1.total, 0.0);
        let mean = ErrorBudget::mean(&rows.iter().map(|r| r.1).collect::<Vec<_>>());
        let main = analytic_error(g, b, om).unwrap().budget.total;
        assert!((mean.total - main).abs() < 1e-15);
        let sq = blockade_budget(g, b, om, 0.01, true).unwrap();
        assert_eq!(sq[3].1.rotation, om * om / (2.0 * b * b));
        assert_eq!(sq[3].1.phase, PI * 0.01 * om / (b * b));
    }

    #[test]
    fn closed_form_examples() {
        let (c1, cr) = blockade_square_solution(1.0, 0.0, TAU);
        assert!((c1 + 1.0).norm() < 1e-15 && cr.norm() < 1e-15);
        let b_sh = 2.7;
        let om = magic_rabi(b_sh, 1).unwrap();
        let (c1, cr) = blockade_square_solution(om, b_sh, TAU / om);
        assert!(cr.norm() < 1e-12);
        let d = (c1.arg() + 3f64.sqrt() * PI).rem_euclid(TAU);
        assert!(d.min(TAU - d) < 1e-12);
        assert!((magic_rabi(b_sh, 2).unwrap() - b_sh / 15f64.sqrt()).abs() < 1e-15);
        assert!(magic_rabi(b_sh, 0).is_err());
    }

    #[test]
    fn closed_form_satisfies_schrodinger() {
        let (om, b) = (0.9, 3.1);
        let h = 1e-5;
        for k in 0..200 {
            let t = 0.05 * k as f64;
            let (p1, pr) = blockade_square_solution(om, b, t + h);
            let (m1, mr) = blockade_square_solution(om, b, t - h);
            let (c1, cr) = blockade_square_solution(om, b, t);
            let d1 = (p1 - m1) / (2.0 * h);
            let dr = (pr - mr) / (2.0 * h);
            let i = C64::new(0.0, 1.0);
            let r1 = -i * (0.5 * om * cr);
            let rr = -i * (0.5 * om * c1 + b * cr);
            assert!((d1 - r1).norm() <= 1e-6 * r1.norm().max(1.0));
            assert!((dr - rr).norm() <= 1e-6 * rr.norm().max(1.0));
            assert!((c1.norm_sqr() + cr.norm_sqr() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn adiabatic_phase_limits() {
        let b = 100.0;
        let p = make_shifted_gaussian(1.0, 0.2, TAU).unwrap();
        let zero = make_square(1.0, 1e-300).unwrap();
        assert!(adiabatic_phase(&zero, b).abs() < 1e-300);
        let scale = 0.05 * b / p.peak();
        let weak = make_shifted_gaussian(1.0, 0.2, TAU * scale).unwrap();
        let exact = adiabatic_phase(&weak, b);
        let approx = -weak.integrate(|om| om * om / (4.0 * b));
        assert!(((exact - approx) / approx).abs() < 0.01);
    }

    #[test]
    fn sensitivity_tracks_finite_difference() {
        let p = make_sine(2.0, TAU).unwrap();
        let b = 30.0;
        let d = 1e-4;
        let fd = (adiabatic_phase(&p, b + d) - adiabatic_phase(&p, b - d)) / (2.0 * d);
        assert!(((phase_sensitivity(&p, b) - fd) / fd).abs() < 1e-6);
    }

    #[test]
    fn default_grid() {
        let g = default_btau_grid();
        assert_eq!(g.len(), 13);
        assert!((g[0] - 1e3).abs() < 1e-9 && (g[12] - 1e7).abs() < 1e-3);
        let empty = sweep_btau(&GateConfig::default(), &[], &[PulseShape::Square], Some(1)).unwrap();
        assert!(empty.is_empty());
        assert!(sweep_btau(&GateConfig::default(), &[1e5, 1e4], &[PulseShape::Square], None).is_err());
    }

    #[test]
    fn leakage_without_channels_is_small() {
        let case = LeakageCase::from_toml_str("b_rr_ratio = 0\ndefect_rr_mhz = 1\nb_ab_ratio = 0\ndefect_ab_mhz = 1").unwrap();
        let r = leakage_study(&case, 1e-11).unwrap();
        assert!(r.missing <= 6e-6, "{}", r.missing);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("magic".parse::<BlockadeMode>().unwrap(), BlockadeMode::Magic);
        assert!("fast".parse::<BlockadeMode>().is_err());
    }
}
