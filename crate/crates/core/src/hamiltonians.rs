//! Hamiltonian builders for the reduced two-atom models and the full
//! 36-state model of two six-level atoms.
//!
//! All quantities are angular frequencies in the rotating frame, ħ = 1.
//! Time is in the inverse of whatever frequency unit the caller uses
//! (µs with rad/µs throughout this crate).

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::linalg::{Basis, Label, Level, Operator};
use crate::propagator::Hamiltonian;
use crate::pulses::PulseEnvelope;

const ZERO: C64 = C64::new(0.0, 0.0);

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Pair-state couplings and Förster defects.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CouplingSet {
    /// Resonant exchange `|r_c r_t> <-> |a_c b_t>`.
    pub exchange: f64,
    /// Forward leakage `|r_c r_t> <-> |a'_c b'_t>`.
    pub b_rr: f64,
    /// Backward leakage `|a_c b_t> <-> |b'_c a'_t>`.
    pub b_ab: f64,
    /// Defect on the tuned channel, placed on `|b_t>`.
    pub defect: f64,
    /// Defect of the forward leakage pair, placed on `|b'_t>`.
    pub defect_rr: f64,
    /// Defect of the backward leakage pair, placed on `|a'_t>`.
    pub defect_ab: f64,
    /// Static shift of `|r_c r_t>` (blockade interaction).
    pub blockade_shift: f64,
}

impl CouplingSet {
    pub fn exchange_only(b: f64) -> Self {
        CouplingSet {
            exchange: b,
            ..Default::default()
        }
    }

    pub fn blockade(b_sh: f64) -> Self {
        CouplingSet {
            blockade_shift: b_sh,
            ..Default::default()
        }
    }

    /// `B_rr² / δω_rr`
    pub fn beta_rr(&self) -> f64 {
        ratio_or_zero(self.b_rr * self.b_rr, self.defect_rr)
    }

    /// `B_ab² / δω_ab`
    pub fn beta_ab(&self) -> f64 {
        ratio_or_zero(self.b_ab * self.b_ab, self.defect_ab)
    }

    /// Tuned-channel defect that cancels the second-order shift of `|a_c b_t>`.
    ///
    /// With the leakage pair sitting at `+δω_ab` the dispersive shift of
    /// `|a_c b_t>` is `-B_ab²/δω_ab = -β_ab`, so the cancelling defect is `+β_ab`.
    pub fn compensating_defect(&self) -> f64 {
        self.beta_ab()
    }

    /// Leakage channels outside the dispersive regime `|δω| > |B|`.
    pub fn dispersive_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.b_rr != 0.0 && self.defect_rr.abs() <= self.b_rr.abs() {
            out.push(format!(
                "forward leakage not dispersive: |defect_rr| = {:.4e} <= |B_rr| = {:.4e}",
                self.defect_rr.abs(),
                self.b_rr.abs()
            ));
        }
        if self.b_ab != 0.0 && self.defect_ab.abs() <= self.b_ab.abs() {
            out.push(format!(
                "backward leakage not dispersive: |defect_ab| = {:.4e} <= |B_ab| = {:.4e}",
                self.defect_ab.abs(),
                self.b_ab.abs()
            ));
        }
        out
    }
}

fn ratio_or_zero(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Uniform decay rate Γ of every Rydberg level; qubit levels do not decay.
#[derive(Copy, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DecayModel {
    pub gamma: f64,
}

impl DecayModel {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::param("gamma", format!("must be >= 0, got {gamma}")));
        }
        Ok(DecayModel { gamma })
    }

    pub fn none() -> Self {
        DecayModel { gamma: 0.0 }
    }
}

fn hermitian_from(basis_len: usize, terms: &[(usize, usize, f64)]) -> Result<Operator> {
    let mut e = vec![ZERO; basis_len * basis_len];
    for &(i, j, v) in terms {
        e[i * basis_len + j] += re(v);
        if i != j {
            e[j * basis_len + i] += re(v);
        }
    }
    Operator::new_hermitian(basis_len, e)
}

/// Three-state exchange model over `{|r_c 1_t>, |r_c r_t>, |a_c b_t>}`.
pub fn build_h3(omega_t: f64, b: f64) -> Result<Operator> {
    ensure_positive("B", b)?;
    hermitian_from(3, &[(0, 1, 0.5 * omega_t), (1, 2, b)])
}

/// Five-state leakage model: [`build_h3`] plus `|a'_c b'_t>` and `|b'_c a'_t>`.
pub fn build_h5(omega_t: f64, c: &CouplingSet) -> Result<Operator> {
    ensure_positive("B", c.exchange)?;
    hermitian_from(
        5,
        &[
            (0, 1, 0.5 * omega_t),
            (1, 2, c.exchange),
            (3, 3, c.defect_rr),
            (4, 4, c.defect_ab),
            (1, 3, c.b_rr),
            (2, 4, c.b_ab),
        ],
    )
}

/// Blockade two-level model over `{|r_c 1_t>, |r_c r_t>}`.
pub fn build_h2_blockade(omega_t: f64, b_sh: f64) -> Result<Operator> {
    hermitian_from(2, &[(0, 1, 0.5 * omega_t), (1, 1, b_sh)])
}

/// `H̃ = H - (i/2) Γ Σ_j Σ_ρ |ρ_j><ρ_j|`; doubly excited pairs decay at 2Γ.
pub fn apply_decay(h: &Operator, decay: &DecayModel, basis: &Basis) -> Result<Operator> {
    if h.dim() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: h.dim(),
        });
    }
    if decay.gamma == 0.0 {
        return Ok(h.clone());
    }
    let widths: Vec<C64> = basis
        .labels()
        .iter()
        .map(|l| C64::new(0.0, -0.5 * decay.gamma * l.rydberg_count() as f64))
        .collect();
    let out = h.add(&Operator::diagonal(&widths))?;
    Operator::new(out.dim(), out.entries().to_vec())
}

/// Microwave drive seen by both atoms, with per-atom detuning of `|0>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Microwave {
    pub pulse: PulseEnvelope,
    pub detuning_control: f64,
    pub detuning_target: f64,
}

/// One piece of a pulse sequence. Drives absent are off.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub name: String,
    pub duration: f64,
    pub control: Option<PulseEnvelope>,
    pub target: Option<PulseEnvelope>,
    pub microwave: Option<Microwave>,
}

impl Segment {
    pub fn gap(name: &str, duration: f64) -> Self {
        Segment {
            name: name.to_string(),
            duration,
            control: None,
            target: None,
            microwave: None,
        }
    }

    pub fn control(name: &str, pulse: PulseEnvelope) -> Self {
        Segment {
            duration: pulse.duration(),
            control: Some(pulse),
            ..Self::gap(name, 0.0)
        }
    }

    pub fn target(name: &str, pulse: PulseEnvelope) -> Self {
        Segment {
            duration: pulse.duration(),
            target: Some(pulse),
            ..Self::gap(name, 0.0)
        }
    }

    pub fn microwave(name: &str, mw: Microwave) -> Self {
        Segment {
            duration: mw.pulse.duration(),
            microwave: Some(mw),
            ..Self::gap(name, 0.0)
        }
    }

    /// Shortest time scale of the envelopes active in this segment.
    pub fn feature_time(&self) -> f64 {
        let mut f = self.duration;
        for p in [&self.control, &self.target].into_iter().flatten() {
            f = f.min(p.feature_time());
        }
        if let Some(mw) = &self.microwave {
            f = f.min(mw.pulse.feature_time());
        }
        f
    }

    /// Hermitian Hamiltonian of the full model at local time `t`.
    pub fn hamiltonian(&self, couplings: &CouplingSet, t: f64) -> Result<Operator> {
        let model = SegmentHamiltonian::new(self, couplings, &DecayModel::none())?;
        let n = model.dim();
        let mut e = vec![ZERO; n * n];
        let mut col = vec![ZERO; n];
        let mut unit = vec![ZERO; n];
        for j in 0..n {
            unit[j] = re(1.0);
            model.apply(t, &unit, &mut col);
            unit[j] = ZERO;
            for i in 0..n {
                e[i * n + j] = col[i];
            }
        }
        Operator::new_hermitian(n, e)
    }
}

/// Ordered segments with static couplings and decay.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub segments: Vec<Segment>,
    pub couplings: CouplingSet,
    pub decay: DecayModel,
}

impl Schedule {
    pub fn new(segments: Vec<Segment>, couplings: CouplingSet, decay: DecayModel) -> Result<Self> {
        for s in &segments {
            ensure_positive(&format!("duration of segment `{}`", s.name), s.duration)?;
        }
        Ok(Schedule {
            segments,
            couplings,
            decay,
        })
    }

    pub fn duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Segment index and local time of absolute time `t`.
    pub fn locate(&self, t: f64) -> Result<(usize, f64)> {
        let end = self.duration();
        if !(0.0..=end).contains(&t) {
            return Err(Error::OutsideSchedule { t, end });
        }
        let mut start = 0.0;
        for (i, s) in self.segments.iter().enumerate() {
            if t <= start + s.duration || i + 1 == self.segments.len() {
                return Ok((i, (t - start).clamp(0.0, s.duration)));
            }
            start += s.duration;
        }
        Err(Error::OutsideSchedule { t, end })
    }
}

/// Full 36-state Hermitian Hamiltonian `H_MW + H_L + H_Ry` at absolute time `t`.
pub fn build_full(schedule: &Schedule, t: f64) -> Result<Operator> {
    let (i, local) = schedule.locate(t)?;
    schedule.segments[i].hamiltonian(&schedule.couplings, local)
}

/// Static pair-interaction part of the full model.
pub fn rydberg_term(c: &CouplingSet) -> Result<Operator> {
    use Level::*;
    let basis = Basis::product();
    let n = basis.len();
    let idx = |c: Level, t: Level| basis.index_of(Label::new(c, t));
    let mut terms = Vec::new();
    for (k, l) in basis.labels().iter().enumerate() {
        let shift = match l.target {
            B => c.defect,
            BPrime => c.defect_rr,
            APrime => c.defect_ab,
            _ => 0.0,
        };
        if shift != 0.0 {
            terms.push((k, k, shift));
        }
    }
    let rr = idx(R, R)?;
    let ab = idx(A, B)?;
    terms.push((rr, rr, c.blockade_shift));
    terms.push((ab, rr, c.exchange));
    terms.push((idx(APrime, BPrime)?, rr, c.b_rr));
    terms.push((idx(BPrime, APrime)?, ab, c.b_ab));
    hermitian_from(n, &terms)
}

/// Which atom a single-atom transition acts on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Control,
    Target,
}

/// Index pairs `(upper, lower)` of `|hi><lo|` acting on one atom of the product basis.
pub fn transition_pairs(atom: Atom, hi: Level, lo: Level) -> Vec<(usize, usize)> {
    let basis = Basis::product();
    basis
        .labels()
        .iter()
        .filter_map(|l| {
            let (mine, upper) = match atom {
                Atom::Control => (l.control, Label::new(hi, l.target)),
                Atom::Target => (l.target, Label::new(l.control, hi)),
            };
            if mine != lo {
                return None;
            }
            let from = basis.index_of(*l).ok()?;
            let to = basis.index_of(upper).ok()?;
            Some((to, from))
        })
        .collect()
}

struct DriveTerm {
    pairs: Vec<(usize, usize)>,
    pulse: PulseEnvelope,
}

/// Time-dependent full-model Hamiltonian of one segment (local time), decay folded in.
pub struct SegmentHamiltonian {
    base: Vec<C64>,
    terms: Vec<DriveTerm>,
    feature_time: f64,
    dim: usize,
}

impl SegmentHamiltonian {
    pub fn new(segment: &Segment, couplings: &CouplingSet, decay: &DecayModel) -> Result<Self> {
        use Level::*;
        let basis = Basis::product();
        let mut base = rydberg_term(couplings)?;
        let mut terms = Vec::new();
        if let Some(p) = &segment.control {
            terms.push(DriveTerm {
                pairs: transition_pairs(Atom::Control, R, One),
                pulse: p.clone(),
            });
        }
        if let Some(p) = &segment.target {
            terms.push(DriveTerm {
                pairs: transition_pairs(Atom::Target, R, One),
                pulse: p.clone(),
            });
        }
        if let Some(mw) = &segment.microwave {
            let mut pairs = transition_pairs(Atom::Control, One, Zero);
            pairs.extend(transition_pairs(Atom::Target, One, Zero));
            terms.push(DriveTerm {
                pairs,
                pulse: mw.pulse.clone(),
            });
            let shifts: Vec<C64> = basis
                .labels()
                .iter()
                .map(|l| {
                    let mut d = 0.0;
                    if l.control == Zero {
                        d -= mw.detuning_control;
                    }
                    if l.target == Zero {
                        d -= mw.detuning_target;
                    }
                    re(d)
                })
                .collect();
            base = base.add(&Operator::diagonal(&shifts))?;
        }
        let base = apply_decay(&base, decay, &basis)?;
        Ok(SegmentHamiltonian {
            base: base.entries().to_vec(),
            terms,
            feature_time: segment.feature_time(),
            dim: basis.len(),
        })
    }

    pub fn feature_time(&self) -> f64 {
        self.feature_time
    }
}

impl Hamiltonian for SegmentHamiltonian {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, t: f64, psi: &[C64], out: &mut [C64]) {
        crate::linalg::matvec_into(&self.base, psi, out);
        for term in &self.terms {
            let om = term.pulse.value(t);
            if om == 0.0 {
                continue;
            }
            // ½Ω e^{iφ} |hi><lo| + h.c.
            let up = C64::from_polar(0.5 * om, term.pulse.phase());
            let down = up.conj();
            for &(hi, lo) in &term.pairs {
                out[hi] += up * psi[lo];
                out[lo] += down * psi[hi];
            }
        }
    }
}
