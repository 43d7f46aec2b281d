//! Adaptive integration of `dψ/dt = -i H(t) ψ` with a Dormand-Prince 5(4) pair.
//!
//! Works for Hermitian and non-Hermitian `H`. Diagnostics are sampled on a
//! fixed grid through the method's dense output, independent of the steps.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hamiltonians::{Schedule, SegmentHamiltonian};
use crate::linalg::{Basis, Label, Operator, StateVector};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MIN_TOL: f64 = 1e-13;
pub const MAX_TOL: f64 = 1e-6;
pub const DEFAULT_SAMPLES: usize = 2000;

/// A (possibly time-dependent) generator acting on amplitude vectors.
pub trait Hamiltonian: Sync {
    fn dim(&self) -> usize;

    /// `out = H(t) psi`
    fn apply(&self, t: f64, psi: &[C64], out: &mut [C64]);
}

impl Hamiltonian for Operator {
    fn dim(&self) -> usize {
        Operator::dim(self)
    }

    fn apply(&self, _t: f64, psi: &[C64], out: &mut [C64]) {
        crate::linalg::matvec_into(self.entries(), psi, out);
    }
}

/// Wraps a closure returning the matrix at time `t`.
pub struct FnHamiltonian<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(f64) -> Operator + Sync> FnHamiltonian<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnHamiltonian { dim, f }
    }
}

impl<F: Fn(f64) -> Operator + Sync> Hamiltonian for FnHamiltonian<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, t: f64, psi: &[C64], out: &mut [C64]) {
        let h = (self.f)(t);
        crate::linalg::matvec_into(h.entries(), psi, out);
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Options {
    pub tol: f64,
    /// Upper bound on the internal step; `None` means span/20.
    pub max_step: Option<f64>,
    /// History samples including both end points.
    pub samples: usize,
    /// Also record the amplitudes at each sample.
    pub keep_amplitudes: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: DEFAULT_TOL,
            max_step: None,
            samples: DEFAULT_SAMPLES,
            keep_amplitudes: false,
        }
    }
}

impl Options {
    pub fn with_tol(tol: f64) -> Self {
        Options {
            tol,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(MIN_TOL..=MAX_TOL).contains(&self.tol) {
            return Err(Error::param(
                "tol",
                format!("must lie in [{MIN_TOL:e}, {MAX_TOL:e}], got {:e}", self.tol),
            ));
        }
        if self.samples < 2 {
            return Err(Error::param("samples", "need at least the two end points"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropagationResult {
    pub final_state: StateVector,
    pub times: Vec<f64>,
    /// ‖ψ‖² at each sample time.
    pub norms: Vec<f64>,
    /// |ψ_k|² at each sample time.
    pub populations: Vec<Vec<f64>>,
    /// ψ at each sample time, if requested.
    pub amplitudes: Vec<Vec<C64>>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl PropagationResult {
    pub fn norm_history(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.norms.iter().copied())
    }

    /// `∫ Σ_k w_k |ψ_k|² dt` over the sampled history.
    pub fn weighted_integral(&self, weights: &[f64]) -> f64 {
        let y: Vec<f64> = self
            .populations
            .iter()
            .map(|p| p.iter().zip(weights).map(|(a, w)| a * w).sum())
            .collect();
        crate::quadrature::trapezoid(&self.times, &y)
    }

    fn append(&mut self, mut next: PropagationResult) {
        // shared boundary sample
        self.times.pop();
        self.norms.pop();
        self.populations.pop();
        self.amplitudes.pop();
        self.amplitudes.append(&mut next.amplitudes);
        self.times.append(&mut next.times);
        self.norms.append(&mut next.norms);
        self.populations.append(&mut next.populations);
        self.final_state = next.final_state;
        self.accepted_steps += next.accepted_steps;
        self.rejected_steps += next.rejected_steps;
    }
}

/// `|<label|ψ(t1)>|²`
pub fn survival_probability(result: &PropagationResult, basis: &Basis, label: Label) -> Result<f64> {
    if basis.len() != result.final_state.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: result.final_state.dim(),
        });
    }
    let k = basis.index_of(label)?;
    Ok(result.final_state.amplitudes()[k].norm_sqr())
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// difference between 5th and embedded 4th order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
// Hairer's dense output coefficients
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

struct Stepper<'a, H: Hamiltonian + ?Sized> {
    h: &'a H,
    k: [Vec<C64>; 7],
    tmp: Vec<C64>,
}

impl<'a, H: Hamiltonian + ?Sized> Stepper<'a, H> {
    fn new(h: &'a H) -> Self {
        let n = h.dim();
        Stepper {
            h,
            k: std::array::from_fn(|_| vec![C64::new(0.0, 0.0); n]),
            tmp: vec![C64::new(0.0, 0.0); n],
        }
    }

    // f(t, y) = -i H(t) y
    fn rhs(h: &H, t: f64, y: &[C64], out: &mut [C64]) {
        h.apply(t, y, out);
        for o in out.iter_mut() {
            *o = C64::new(o.im, -o.re);
        }
    }

    /// One trial step; k[0] must hold f(t, y). Writes the candidate to `y1`
    /// and returns the error estimate vector norm.
    fn attempt(&mut self, t: f64, y: &[C64], dt: f64, y1: &mut [C64]) -> f64 {
        let n = y.len();
        for s in 1..7 {
            for i in 0..n {
                let mut acc = y[i];
                for (j, a) in A[s].iter().enumerate().take(s) {
                    if *a != 0.0 {
                        acc += self.k[j][i] * (dt * a);
                    }
                }
                self.tmp[i] = acc;
            }
            let (_, rest) = self.k.split_at_mut(s);
            Self::rhs(self.h, t + C[s] * dt, &self.tmp, &mut rest[0]);
            if s == 6 {
                // stage 7 is evaluated at the 5th order solution
                y1.copy_from_slice(&self.tmp);
            }
        }
        let mut err = 0.0;
        for i in 0..n {
            let mut e = C64::new(0.0, 0.0);
            for (s, w) in E.iter().enumerate() {
                if *w != 0.0 {
                    e += self.k[s][i] * w;
                }
            }
            err += (e * dt).norm_sqr();
        }
        err.sqrt()
    }

    /// Dense interpolant coefficients for the step just taken.
    fn dense(&self, y0: &[C64], y1: &[C64], dt: f64) -> [Vec<C64>; 5] {
        let n = y0.len();
        let mut r: [Vec<C64>; 5] = std::array::from_fn(|_| vec![C64::new(0.0, 0.0); n]);
        for i in 0..n {
            let dy = y1[i] - y0[i];
            let bspl = self.k[0][i] * dt - dy;
            r[0][i] = y0[i];
            r[1][i] = dy;
            r[2][i] = bspl;
            r[3][i] = dy - self.k[6][i] * dt - bspl;
            let mut d = C64::new(0.0, 0.0);
            for (s, w) in D.iter().enumerate() {
                if *w != 0.0 {
                    d += self.k[s][i] * w;
                }
            }
            r[4][i] = d * dt;
        }
        r
    }
}

fn interpolate(r: &[Vec<C64>; 5], theta: f64) -> Vec<C64> {
    let th1 = 1.0 - theta;
    (0..r[0].len())
        .map(|i| r[0][i] + (r[1][i] + (r[2][i] + (r[3][i] + r[4][i] * th1) * theta) * th1) * theta)
        .collect()
}

fn record(res: &mut PropagationResult, t: f64, y: &[C64], keep: bool) {
    let pops: Vec<f64> = y.iter().map(|z| z.norm_sqr()).collect();
    if keep {
        res.amplitudes.push(y.to_vec());
    }
    res.times.push(t);
    res.norms.push(pops.iter().sum());
    res.populations.push(pops);
}

/// Integrates from `t0` to `t1` starting at `psi0`.
pub fn propagate<H: Hamiltonian + ?Sized>(
    h: &H,
    psi0: &StateVector,
    t0: f64,
    t1: f64,
    opts: &Options,
) -> Result<PropagationResult> {
    opts.validate()?;
    if h.dim() != psi0.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: psi0.dim(),
        });
    }
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::param("t1", format!("must exceed t0 = {t0}, got {t1}")));
    }
    let span = t1 - t0;
    let max_step = opts.max_step.unwrap_or(span / 20.0).min(span);
    let min_step = 1e-6 * span;

    let sample_at = |j: usize| {
        if j + 1 == opts.samples {
            t1
        } else {
            t0 + span * j as f64 / (opts.samples - 1) as f64
        }
    };
    let mut res = PropagationResult {
        final_state: psi0.clone(),
        times: Vec::with_capacity(opts.samples),
        norms: Vec::with_capacity(opts.samples),
        populations: Vec::with_capacity(opts.samples),
        amplitudes: Vec::new(),
        accepted_steps: 0,
        rejected_steps: 0,
    };

    let mut y = psi0.amplitudes().to_vec();
    record(&mut res, t0, &y, opts.keep_amplitudes);
    let mut next_sample = 1;

    let mut st = Stepper::new(h);
    Stepper::rhs(h, t0, &y, &mut st.k[0]);

    // initial step from the size of the derivative
    let f0 = norm(&st.k[0]);
    let y0n = norm(&y).max(1e-300);
    let mut dt = if f0 > 0.0 {
        (0.01 * y0n / f0 * opts.tol.powf(0.2) * 10.0).min(max_step)
    } else {
        max_step
    };
    dt = dt.max(min_step);

    let mut t = t0;
    let mut y1 = vec![C64::new(0.0, 0.0); y.len()];
    while t < t1 {
        let last = t + dt >= t1 || t1 - (t + dt) < 1e-12 * span;
        let step = if last { t1 - t } else { dt };
        let err = st.attempt(t, &y, step, &mut y1);
        let scale = opts.tol * norm(&y).max(norm(&y1)).max(1e-300);
        let ratio = err / scale;
        if ratio <= 1.0 {
            res.accepted_steps += 1;
            let t_new = if last { t1 } else { t + step };
            if next_sample < opts.samples && sample_at(next_sample) <= t_new {
                let r = st.dense(&y, &y1, step);
                while next_sample < opts.samples && sample_at(next_sample) <= t_new {
                    let ts = sample_at(next_sample);
                    let v = if ts == t_new {
                        y1.clone()
                    } else {
                        interpolate(&r, (ts - t) / step)
                    };
                    record(&mut res, ts, &v, opts.keep_amplitudes);
                    next_sample += 1;
                }
            }
            std::mem::swap(&mut y, &mut y1);
            // FSAL
            let (first, rest) = st.k.split_at_mut(1);
            first[0].copy_from_slice(&rest[5]);
            t = t_new;
            let grow = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
            dt = (step * grow).min(max_step);
        } else {
            res.rejected_steps += 1;
            dt = step * (0.9 * ratio.powf(-0.2)).clamp(0.1, 0.9);
            if dt < min_step {
                return Err(Error::StepUnderflow { t, h: dt });
            }
        }
    }
    while next_sample < opts.samples {
        record(&mut res, sample_at(next_sample), &y, opts.keep_amplitudes);
        next_sample += 1;
    }
    res.final_state = StateVector::new(y)?;
    Ok(res)
}

/// Propagates through every segment of a full-model schedule, restarting the
/// integrator at each boundary. `opts.samples` applies per segment.
pub fn propagate_schedule(schedule: &Schedule, psi0: &StateVector, opts: &Options) -> Result<PropagationResult> {
    let mut start = 0.0;
    let mut out: Option<PropagationResult> = None;
    let mut psi = psi0.clone();
    for seg in &schedule.segments {
        let h = SegmentHamiltonian::new(seg, &schedule.couplings, &schedule.decay)?;
        let cap = h.feature_time() / 20.0;
        let o = Options {
            max_step: Some(opts.max_step.map_or(cap, |m| m.min(cap))),
            ..*opts
        };
        let mut part = propagate(&h, &psi, 0.0, seg.duration, &o)?;
        for t in part.times.iter_mut() {
            *t += start;
        }
        psi = part.final_state.clone();
        match out.as_mut() {
            None => out = Some(part),
            Some(acc) => acc.append(part),
        }
        start += seg.duration;
    }
    out.ok_or_else(|| Error::param("schedule", "no segments"))
}
