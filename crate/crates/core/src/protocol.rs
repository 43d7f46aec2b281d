//! The three-step gate: control π, target 2π, control π, with optional
//! microwave preparation of the inputs, gate-matrix extraction and the
//! average fidelity against `diag(1, -1, -1, -1)`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonians::{CouplingSet, DecayModel, Microwave, Schedule, Segment};
use crate::linalg::{Basis, Label, Level, Operator, StateVector};
use crate::propagator::{self, Options, PropagationResult};
use crate::pulses::{make_square, PulseEnvelope, PulseShape};

/// Which interaction protects the target atom during step (ii).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    /// Resonant exchange `|r r> <-> |a b>`; the target follows the dark state.
    DarkState,
    /// Static shift of `|r r>`.
    Blockade,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefectMode {
    /// Cancel the dispersive shift of `|a_c b_t>` from the backward leakage pair.
    Auto,
    /// δω = 0
    Off,
}

/// Either a policy name or an explicit defect δω/2π in MHz.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DefectSetting {
    Mode(DefectMode),
    Mhz(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MicrowaveConfig {
    /// Start each run in the ideal computational state instead of simulating the MW π pulse.
    pub ideal_prep: bool,
    /// MW π-pulse duration in units of the target pulse duration.
    pub pi_time_ratio: f64,
    /// Spectator detuning in units of |Ω_MW|.
    pub detuning_ratio: f64,
}

impl Default for MicrowaveConfig {
    fn default() -> Self {
        MicrowaveConfig {
            ideal_prep: true,
            pi_time_ratio: 10.0,
            detuning_ratio: 100.0,
        }
    }
}

/// User-facing gate configuration; frequencies in MHz (ordinary, not angular).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GateConfig {
    pub mechanism: Mechanism,
    /// B/2π for the dark-state gate, B_sh/2π for the blockade gate.
    pub b_mhz: f64,
    /// Interaction times lifetime. Leave unset (and `tau_us` unset) for Γ = 0.
    pub btau: Option<f64>,
    /// Rydberg lifetime in µs, alternative to `btau`.
    pub tau_us: Option<f64>,
    /// Ω_t0 / B
    pub alpha: f64,
    /// Ω_c0 / Ω_t0
    pub control_ratio: f64,
    pub target_shape: PulseShape,
    pub control_shape: PulseShape,
    /// σ / T for Gaussian pulses.
    pub sigma_ratio: f64,
    /// Pause after steps (i) and (ii) in units of T_t.
    pub gap_fraction: f64,
    pub b_rr_ratio: f64,
    pub b_ab_ratio: f64,
    /// δω_rr / B_rr
    pub defect_rr_ratio: f64,
    /// δω_ab / B_ab
    pub defect_ab_ratio: f64,
    pub defect: DefectSetting,
    /// Split the target 2π pulse into two π halves, the second with this phase.
    pub split_phase: Option<f64>,
    pub microwave: MicrowaveConfig,
    pub tol: f64,
    /// History samples per segment.
    pub samples: usize,
}

impl Default for GateConfig {
    fn default() -> Self {
        GateConfig {
            mechanism: Mechanism::DarkState,
            b_mhz: 350.0,
            btau: None,
            tau_us: None,
            alpha: 0.10472,
            control_ratio: 4.0,
            target_shape: PulseShape::ShiftedGaussian,
            control_shape: PulseShape::ShiftedGaussian,
            sigma_ratio: 0.2,
            gap_fraction: 0.05,
            b_rr_ratio: 0.5,
            b_ab_ratio: 0.5,
            defect_rr_ratio: 3.0,
            defect_ab_ratio: 3.0,
            defect: DefectSetting::Mode(DefectMode::Auto),
            split_phase: None,
            microwave: MicrowaveConfig::default(),
            tol: propagator::DEFAULT_TOL,
            samples: propagator::DEFAULT_SAMPLES,
        }
    }
}

fn field(name: &str, ok: bool, reason: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::param(name, reason()))
    }
}

fn finite_positive(name: &str, v: f64) -> Result<()> {
    field(name, v.is_finite() && v > 0.0, || format!("must be positive, got {v}"))
}

impl GateConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: GateConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        finite_positive("b_mhz", self.b_mhz)?;
        field("alpha", self.alpha > 0.0 && self.alpha < 1.0, || {
            format!("must lie in (0, 1), got {}", self.alpha)
        })?;
        if let Some(v) = self.btau {
            finite_positive("btau", v)?;
        }
        if let Some(v) = self.tau_us {
            finite_positive("tau_us", v)?;
        }
        field("btau", self.btau.is_none() || self.tau_us.is_none(), || {
            "give at most one of `btau` and `tau_us`".into()
        })?;
        finite_positive("control_ratio", self.control_ratio)?;
        finite_positive("sigma_ratio", self.sigma_ratio)?;
        field("gap_fraction", self.gap_fraction.is_finite() && self.gap_fraction >= 0.0, || {
            format!("must be >= 0, got {}", self.gap_fraction)
        })?;
        for (n, v) in [
            ("b_rr_ratio", self.b_rr_ratio),
            ("b_ab_ratio", self.b_ab_ratio),
            ("defect_rr_ratio", self.defect_rr_ratio),
            ("defect_ab_ratio", self.defect_ab_ratio),
        ] {
            field(n, v.is_finite(), || format!("must be finite, got {v}"))?;
        }
        if let DefectSetting::Mhz(v) = self.defect {
            field("defect", v.is_finite(), || format!("must be finite, got {v}"))?;
        }
        if let Some(p) = self.split_phase {
            field("split_phase", p.is_finite(), || format!("must be finite, got {p}"))?;
        }
        finite_positive("microwave.pi_time_ratio", self.microwave.pi_time_ratio)?;
        finite_positive("microwave.detuning_ratio", self.microwave.detuning_ratio)?;
        field(
            "tol",
            (propagator::MIN_TOL..=propagator::MAX_TOL).contains(&self.tol),
            || format!("must lie in [1e-13, 1e-6], got {:e}", self.tol),
        )?;
        field("samples", self.samples >= 2, || "must be at least 2".into())?;
        Ok(())
    }

    /// Angular interaction strength (rad/µs).
    pub fn interaction(&self) -> f64 {
        TAU * self.b_mhz
    }

    pub fn gamma(&self) -> f64 {
        let b = self.interaction();
        match (self.btau, self.tau_us) {
            (Some(bt), _) => b / bt,
            (_, Some(tau)) => 1.0 / tau,
            _ => 0.0,
        }
    }

    pub fn couplings(&self) -> CouplingSet {
        let b = self.interaction();
        match self.mechanism {
            Mechanism::Blockade => CouplingSet::blockade(b),
            Mechanism::DarkState => {
                let b_rr = self.b_rr_ratio * b;
                let b_ab = self.b_ab_ratio * b;
                let mut c = CouplingSet {
                    exchange: b,
                    b_rr,
                    b_ab,
                    defect: 0.0,
                    defect_rr: self.defect_rr_ratio * b_rr,
                    defect_ab: self.defect_ab_ratio * b_ab,
                    blockade_shift: 0.0,
                };
                c.defect = match self.defect {
                    DefectSetting::Mode(DefectMode::Auto) => c.compensating_defect(),
                    DefectSetting::Mode(DefectMode::Off) => 0.0,
                    DefectSetting::Mhz(v) => TAU * v,
                };
                c
            }
        }
    }

    /// Ω_t0 = αB
    pub fn target_rabi(&self) -> f64 {
        self.alpha * self.interaction()
    }

    /// T_t = 2π / Ω_t0
    pub fn target_duration(&self) -> f64 {
        TAU / self.target_rabi()
    }

    /// T_c = π / Ω_c0
    pub fn control_duration(&self) -> f64 {
        PI / (self.control_ratio * self.target_rabi())
    }

    pub fn target_pulses(&self) -> Result<Vec<PulseEnvelope>> {
        let t = self.target_duration();
        match self.split_phase {
            None => Ok(vec![self.target_shape.build(t, TAU, self.sigma_ratio)?]),
            Some(phi) => Ok(vec![
                self.target_shape.build(0.5 * t, PI, self.sigma_ratio)?,
                self.target_shape.build(0.5 * t, PI, self.sigma_ratio)?.with_phase(phi),
            ]),
        }
    }

    pub fn control_pulse(&self) -> Result<PulseEnvelope> {
        self.control_shape.build(self.control_duration(), PI, self.sigma_ratio)
    }

    /// Steps (i)-(iii) with the configured gaps.
    pub fn gate_segments(&self) -> Result<Vec<Segment>> {
        let gap = self.gap_fraction * self.target_duration();
        let mut segs = vec![Segment::control("control-pi-1", self.control_pulse()?)];
        if gap > 0.0 {
            segs.push(Segment::gap("gap-1", gap));
        }
        for (i, p) in self.target_pulses()?.into_iter().enumerate() {
            segs.push(Segment::target(&format!("target-{}", i + 1), p));
        }
        if gap > 0.0 {
            segs.push(Segment::gap("gap-2", gap));
        }
        segs.push(Segment::control("control-pi-2", self.control_pulse()?));
        Ok(segs)
    }

    pub fn gate_schedule(&self) -> Result<Schedule> {
        Schedule::new(self.gate_segments()?, self.couplings(), DecayModel::new(self.gamma())?)
    }

    fn options(&self) -> Options {
        Options {
            tol: self.tol,
            samples: self.samples,
            ..Default::default()
        }
    }
}

/// One of the four computational inputs, control bit first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitInput {
    pub control: bool,
    pub target: bool,
}

impl QubitInput {
    pub const ALL: [QubitInput; 4] = [
        QubitInput::new(false, false),
        QubitInput::new(false, true),
        QubitInput::new(true, false),
        QubitInput::new(true, true),
    ];

    pub const fn new(control: bool, target: bool) -> Self {
        QubitInput { control, target }
    }

    /// Position in `{00, 01, 10, 11}`.
    pub fn index(self) -> usize {
        2 * self.control as usize + self.target as usize
    }

    pub fn label(self) -> Label {
        let lv = |b: bool| if b { Level::One } else { Level::Zero };
        Label::new(lv(self.control), lv(self.target))
    }
}

impl fmt::Display for QubitInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.control as u8, self.target as u8)
    }
}

impl FromStr for QubitInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bit = |c: char| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::param("input", format!("expected one of 00, 01, 10, 11, got `{s}`"))),
        };
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 2 {
            return Err(Error::param("input", format!("expected one of 00, 01, 10, 11, got `{s}`")));
        }
        Ok(QubitInput::new(bit(chars[0])?, bit(chars[1])?))
    }
}

/// Product-basis indices of `|00>, |01>, |10>, |11>`.
pub fn qubit_indices() -> [usize; 4] {
    let b = Basis::product();
    QubitInput::ALL.map(|q| b.index_of(q.label()).expect("qubit label in product basis"))
}

/// MW preparation segment taking `|0_c 0_t>` to the requested input.
///
/// Atoms that must end in `|1>` see a resonant π pulse; the others are
/// detuned by `detuning_ratio · |Ω_MW|`.
pub fn prepare_input(cfg: &GateConfig, input: QubitInput) -> Result<Segment> {
    let t = cfg.microwave.pi_time_ratio * cfg.target_duration();
    // phase π/2 makes the resonant π pulse map |0> to +|1>
    let pulse = make_square(t, PI)?.with_phase(FRAC_PI_2);
    let detuned = cfg.microwave.detuning_ratio * pulse.amplitude().abs();
    Ok(Segment::microwave(
        &format!("prepare-{input}"),
        Microwave {
            pulse,
            detuning_control: if input.control { 0.0 } else { detuned },
            detuning_target: if input.target { 0.0 } else { detuned },
        },
    ))
}

/// Per-input outcome of a gate run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputDiagnostics {
    pub input: String,
    pub final_norm: f64,
    pub residual_rydberg: f64,
    /// arg of the diagonal gate element.
    pub phase: f64,
    /// `∫ Σ_k n_Ry(k) |ψ_k|² dt` over the gate.
    pub rydberg_time: f64,
    /// Largest deviation of ‖ψ‖² from its initial value.
    pub max_norm_drift: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

/// Raw propagation of one input through the gate.
#[derive(Clone, Debug)]
pub struct InputRun {
    pub input: QubitInput,
    /// State at the start of step (i).
    pub initial: StateVector,
    pub history: PropagationResult,
    /// Unit phase of the prepared amplitude, divided out of the column.
    pub reference: C64,
}

/// Propagates one input through preparation (unless ideal) and steps (i)-(iii).
pub fn simulate_input(cfg: &GateConfig, input: QubitInput) -> Result<InputRun> {
    let basis = Basis::product();
    let opts = cfg.options();
    let schedule = cfg.gate_schedule()?;
    let (initial, reference) = if cfg.microwave.ideal_prep {
        (StateVector::basis_state(&basis, input.label())?, C64::new(1.0, 0.0))
    } else {
        let start = StateVector::basis_state(&basis, Label::new(Level::Zero, Level::Zero))?;
        let prep = Schedule::new(
            vec![prepare_input(cfg, input)?],
            schedule.couplings.clone(),
            schedule.decay,
        )?;
        let r = propagator::propagate_schedule(&prep, &start, &opts)?;
        let a = r.final_state.amplitudes()[basis.index_of(input.label())?];
        let reference = if a.norm() > 0.0 { a / a.norm() } else { C64::new(1.0, 0.0) };
        (r.final_state, reference)
    };
    let history = propagator::propagate_schedule(&schedule, &initial, &opts)?;
    Ok(InputRun {
        input,
        initial,
        history,
        reference,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateResult {
    /// Columns are the images of `|00>, |01>, |10>, |11>`.
    pub u: Operator,
    pub fidelity: f64,
    pub error: f64,
    pub diagnostics: Vec<InputDiagnostics>,
    pub warnings: Vec<String>,
}

impl GateResult {
    pub fn from_matrix(u: Operator, diagnostics: Vec<InputDiagnostics>, warnings: Vec<String>) -> Result<Self> {
        let fidelity = pedersen_fidelity(&u, &ideal_cz())?;
        Ok(GateResult {
            u,
            fidelity,
            error: 1.0 - fidelity,
            diagnostics,
            warnings,
        })
    }
}

/// `diag(1, -1, -1, -1)`
pub fn ideal_cz() -> Operator {
    let d = [1.0, -1.0, -1.0, -1.0].map(|x| C64::new(x, 0.0));
    Operator::diagonal(&d)
}

/// `F = [Tr(M M†) + |Tr M|²] / 20` with `M = U_target† U`.
pub fn pedersen_fidelity(u: &Operator, target: &Operator) -> Result<f64> {
    for op in [u, target] {
        if op.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: op.dim(),
            });
        }
    }
    let m = target.adjoint().matmul(u)?;
    let mm = m.matmul(&m.adjoint())?;
    Ok((mm.trace().re + m.trace().norm_sqr()) / 20.0)
}

/// `Z_t(φ) = |0_t><0_t| + e^{-iφ} |1_t><1_t|` applied after the gate.
pub fn phase_correction(phi: f64) -> Operator {
    let z = C64::from_polar(1.0, -phi);
    Operator::diagonal(&[C64::new(1.0, 0.0), z, C64::new(1.0, 0.0), z])
}

pub fn apply_phase_correction(result: &GateResult, phi: f64) -> Result<GateResult> {
    let u = phase_correction(phi).matmul(&result.u)?;
    GateResult::from_matrix(u, result.diagnostics.clone(), result.warnings.clone())
}

fn diagnostics(run: &InputRun, column: &[C64]) -> InputDiagnostics {
    let basis = Basis::product();
    let weights: Vec<f64> = basis.labels().iter().map(|l| l.rydberg_count() as f64).collect();
    let fin = &run.history.final_state;
    let residual_rydberg = fin
        .populations()
        .iter()
        .zip(&weights)
        .filter(|(_, w)| **w > 0.0)
        .map(|(p, _)| p)
        .sum();
    let n0 = run.history.norms[0];
    InputDiagnostics {
        input: run.input.to_string(),
        final_norm: fin.norm_sqr(),
        residual_rydberg,
        phase: column[run.input.index()].arg(),
        rydberg_time: run.history.weighted_integral(&weights),
        max_norm_drift: run.history.norms.iter().map(|n| (n - n0).abs()).fold(0.0, f64::max),
        accepted_steps: run.history.accepted_steps,
        rejected_steps: run.history.rejected_steps,
    }
}

/// Projects the final states onto the qubit basis.
pub fn gate_matrix(runs: &[InputRun]) -> Result<Operator> {
    let q = qubit_indices();
    let mut e = vec![C64::new(0.0, 0.0); 16];
    for run in runs {
        let col = run.input.index();
        let amps = run.history.final_state.amplitudes();
        for (row, &k) in q.iter().enumerate() {
            e[row * 4 + col] = amps[k] / run.reference;
        }
    }
    Operator::new(4, e)
}

/// Runs all four inputs in parallel and assembles U, F and diagnostics.
pub fn run_gate(cfg: &GateConfig) -> Result<GateResult> {
    cfg.validate()?;
    let runs: Vec<InputRun> = QubitInput::ALL
        .par_iter()
        .map(|&q| {
            simulate_input(cfg, q).map_err(|e| Error::Input {
                label: q.to_string(),
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    let u = gate_matrix(&runs)?;
    let diags = runs
        .iter()
        .map(|r| {
            let col: Vec<C64> = (0..4).map(|row| u.get(row, r.input.index())).collect();
            diagnostics(r, &col)
        })
        .collect();
    GateResult::from_matrix(u, diags, cfg.couplings().dispersive_warnings())
}
