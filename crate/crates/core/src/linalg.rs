//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here is sized for the two-atom problem (at most 36 product
//! states), so operators are stored densely in row-major order.

use std::fmt;

pub use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative Hermiticity tolerance: max |H - H†| <= HERMITIAN_TOL * max |H|.
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Atomic level of a single six-level atom.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Zero,
    One,
    R,
    A,
    APrime,
    B,
    BPrime,
}

impl Level {
    pub fn is_rydberg(self) -> bool {
        !matches!(self, Level::Zero | Level::One)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Level::Zero => "0",
            Level::One => "1",
            Level::R => "r",
            Level::A => "a",
            Level::APrime => "a'",
            Level::B => "b",
            Level::BPrime => "b'",
        }
    }
}

/// Control-atom level order. Product index is `6 * control + target`.
pub const CONTROL_LEVELS: [Level; 6] = [
    Level::Zero,
    Level::One,
    Level::R,
    Level::A,
    Level::APrime,
    Level::BPrime,
];

/// Target-atom level order.
pub const TARGET_LEVELS: [Level; 6] = [
    Level::Zero,
    Level::One,
    Level::R,
    Level::B,
    Level::BPrime,
    Level::APrime,
];

/// Two-atom product label `|control, target>`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub control: Level,
    pub target: Level,
}

impl Label {
    pub const fn new(control: Level, target: Level) -> Self {
        Label { control, target }
    }

    /// Number of atoms of the pair sitting in a Rydberg level (0, 1 or 2).
    pub fn rydberg_count(self) -> usize {
        self.control.is_rydberg() as usize + self.target.is_rydberg() as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_c {}_t", self.control.symbol(), self.target.symbol())
    }
}

/// Ordered list of unique two-atom labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Basis {
    labels: Vec<Label>,
}

impl Basis {
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        if labels.is_empty() {
            return Err(Error::param("basis", "must contain at least one label"));
        }
        Ok(Basis { labels })
    }

    /// Full 36-state product basis, control index major.
    pub fn product() -> Self {
        let labels = CONTROL_LEVELS
            .iter()
            .flat_map(|&c| TARGET_LEVELS.iter().map(move |&t| Label::new(c, t)))
            .collect();
        Basis { labels }
    }

    /// `{|r_c 1_t>, |r_c r_t>, |a_c b_t>}`
    pub fn three_state() -> Self {
        use Level::*;
        Basis {
            labels: vec![Label::new(R, One), Label::new(R, R), Label::new(A, B)],
        }
    }

    /// Three-state basis plus the leakage pairs `|a'_c b'_t>` and `|b'_c a'_t>`.
    pub fn five_state() -> Self {
        use Level::*;
        let mut b = Self::three_state();
        b.labels.push(Label::new(APrime, BPrime));
        b.labels.push(Label::new(BPrime, APrime));
        b
    }

    /// `{|r_c 1_t>, |r_c r_t>}`
    pub fn blockade() -> Self {
        use Level::*;
        Basis {
            labels: vec![Label::new(R, One), Label::new(R, R)],
        }
    }

    /// Computational states `|00>, |01>, |10>, |11>`.
    pub fn qubits() -> Self {
        use Level::*;
        Basis {
            labels: vec![
                Label::new(Zero, Zero),
                Label::new(Zero, One),
                Label::new(One, Zero),
                Label::new(One, One),
            ],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Indices of `sub` inside this basis, in the order of `sub`.
    pub fn indices_of(&self, sub: &Basis) -> Result<Vec<usize>> {
        sub.labels.iter().map(|&l| self.index_of(l)).collect()
    }
}

/// Complex amplitude vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::param("amplitudes", "state vector must not be empty"));
        }
        Ok(StateVector { amplitudes })
    }

    pub fn zeros(dim: usize) -> Self {
        StateVector {
            amplitudes: vec![C64::new(0.0, 0.0); dim],
        }
    }

    /// Unit vector on `label` of `basis`.
    pub fn basis_state(basis: &Basis, label: Label) -> Result<Self> {
        let mut psi = Self::zeros(basis.len());
        psi.amplitudes[basis.index_of(label)?] = C64::new(1.0, 0.0);
        Ok(psi)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self|other>`
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn scaled(&self, s: C64) -> StateVector {
        StateVector {
            amplitudes: self.amplitudes.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(StateVector {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn conj(&self) -> StateVector {
        StateVector {
            amplitudes: self.amplitudes.iter().map(|a| a.conj()).collect(),
        }
    }
}

/// Dense square complex matrix with a constructor-declared Hermitian flag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Operator {
    dim: usize,
    entries: Vec<C64>,
    hermitian: bool,
}

impl Operator {
    /// General (not necessarily Hermitian) operator from row-major entries.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dim", "operator dimension must be positive"));
        }
        check_dim(dim * dim, entries.len())?;
        Ok(Operator {
            dim,
            entries,
            hermitian: false,
        })
    }

    /// Operator flagged Hermitian; fails if the entries are not.
    pub fn new_hermitian(dim: usize, entries: Vec<C64>) -> Result<Self> {
        let mut op = Self::new(dim, entries)?;
        let residual = op.hermiticity_residual();
        let scale = op.max_abs();
        if residual > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian { residual });
        }
        op.hermitian = true;
        Ok(op)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Result<Self> {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self::new(dim, entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Operator {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
            hermitian: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            op.entries[i * dim + i] = C64::new(1.0, 0.0);
        }
        op
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let dim = values.len();
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for (i, v) in values.iter().enumerate() {
            entries[i * dim + i] = *v;
        }
        let hermitian = values.iter().all(|v| v.im == 0.0);
        Operator {
            dim,
            entries,
            hermitian,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// max |H_ij - conj(H_ji)|
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r
    }

    pub fn adjoint(&self) -> Operator {
        let n = self.dim;
        let entries = (0..n * n)
            .map(|k| self.entries[(k % n) * n + k / n].conj())
            .collect();
        Operator {
            dim: n,
            entries,
            hermitian: self.hermitian,
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: C64) -> Operator {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * s).collect(),
            hermitian: self.hermitian && s.im == 0.0,
        }
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        check_dim(self.dim, other.dim)?;
        Ok(Operator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
            hermitian: self.hermitian && other.hermitian,
        })
    }

    pub fn matmul(&self, other: &Operator) -> Result<Operator> {
        check_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut entries = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Operator::new(n, entries)
    }

    /// Exact dense product `op * psi`.
    pub fn matvec(&self, psi: &StateVector) -> Result<StateVector> {
        check_dim(self.dim, psi.dim())?;
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        matvec_into(&self.entries, psi.amplitudes(), &mut out);
        Ok(StateVector { amplitudes: out })
    }

    /// Submatrix over the given basis indices, preserving the Hermitian flag.
    pub fn restrict(&self, indices: &[usize]) -> Result<Operator> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: bad,
            });
        }
        let m = indices.len();
        let entries = (0..m * m)
            .map(|k| self.get(indices[k / m], indices[k % m]))
            .collect();
        let mut op = Operator::new(m, entries)?;
        op.hermitian = self.hermitian;
        Ok(op)
    }

    /// Eigendecomposition of a Hermitian operator by cyclic Jacobi rotations.
    pub fn eig_hermitian(&self) -> Result<Eigen> {
        eig_hermitian(self)
    }
}

/// Sorted real eigenvalues with orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector of `values[k]`.
    pub vectors: Vec<StateVector>,
}

impl Eigen {
    /// `V diag(values) V†`
    pub fn reconstruct(&self) -> Operator {
        let n = self.values.len();
        let mut entries = vec![C64::new(0.0, 0.0); n * n];
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            let a = v.amplitudes();
            for i in 0..n {
                for j in 0..n {
                    entries[i * n + j] += a[i] * a[j].conj() * lambda;
                }
            }
        }
        Operator {
            dim: n,
            entries,
            hermitian: true,
        }
    }
}

pub(crate) fn matvec_into(entries: &[C64], psi: &[C64], out: &mut [C64]) {
    let n = psi.len();
    for (row, o) in entries.chunks_exact(n).zip(out.iter_mut()) {
        let mut acc = C64::new(0.0, 0.0);
        for (h, p) in row.iter().zip(psi) {
            acc += h * p;
        }
        *o = acc;
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub fn eig_hermitian(op: &Operator) -> Result<Eigen> {
    if !op.hermitian {
        return Err(Error::NotHermitian {
            residual: op.hermiticity_residual(),
        });
    }
    let n = op.dim;
    if n > 36 {
        return Err(Error::param("dim", format!("eigensolver supports dim <= 36, got {n}")));
    }
    let mut a = op.entries.clone();
    let mut v = Operator::identity(n).entries;
    let scale = op.frobenius_norm().max(f64::MIN_POSITIVE);

    let off = |a: &[C64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > 1e-14 * scale {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                // R = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
                let phase = apq / mag;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = 0.5 * f64::atan2(2.0 * mag, aqq - app);
                let (s, c) = theta.sin_cos();
                let r_pp = C64::new(c, 0.0);
                let r_pq = C64::new(s, 0.0);
                let r_qp = -phase.conj() * s;
                let r_qq = phase.conj() * c;

                // A <- A R
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * r_pp + akq * r_qp;
                    a[k * n + q] = akp * r_pq + akq * r_qq;
                }
                // A <- R† A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = r_pp.conj() * apk + r_qp.conj() * aqk;
                    a[q * n + k] = r_pq.conj() * apk + r_qq.conj() * aqk;
                }
                a[p * n + q] = C64::new(0.0, 0.0);
                a[q * n + p] = C64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                // V <- V R
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * r_pp + vkq * r_qp;
                    v[k * n + q] = vkp * r_pq + vkq * r_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = order
        .iter()
        .map(|&col| StateVector {
            amplitudes: (0..n).map(|row| v[row * n + col]).collect(),
        })
        .collect();
    Ok(Eigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_hermitian(n: usize, seed: &[f64]) -> Operator {
        let mut e = vec![c(0.0, 0.0); n * n];
        let mut k = 0;
        for i in 0..n {
            e[i * n + i] = c(seed[k % seed.len()], 0.0);
            k += 1;
            for j in i + 1..n {
                let z = c(seed[k % seed.len()], seed[(k + 1) % seed.len()]);
                k += 2;
                e[i * n + j] = z;
                e[j * n + i] = z.conj();
            }
        }
        Operator::new_hermitian(n, e).unwrap()
    }

    fn state(v: &[(f64, f64)]) -> StateVector {
        StateVector::new(v.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    #[test]
    fn product_basis_order() {
        let b = Basis::product();
        assert_eq!(b.len(), 36);
        let l = Label::new(Level::A, Level::B);
        assert_eq!(b.index_of(l).unwrap(), 6 * 3 + 3);
        assert_eq!(b.index_of(Label::new(Level::One, Level::Zero)).unwrap(), 6);
        assert!(b.index_of(Label::new(Level::B, Level::B)).is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let l = Label::new(Level::R, Level::R);
        assert!(matches!(Basis::new(vec![l, l]), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn matvec_examples() {
        let psi = state(&[(0.3, -0.1), (0.7, 0.2)]);
        assert_eq!(Operator::identity(2).matvec(&psi).unwrap(), psi);
        let z = Operator::zeros(2).matvec(&psi).unwrap();
        assert!(z.amplitudes().iter().all(|a| a.norm() == 0.0));
        let x = Operator::new(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let out = x.matvec(&state(&[(1., 0.), (0., 0.)])).unwrap();
        assert_eq!(out, state(&[(0., 0.), (1., 0.)]));
    }

    #[test]
    fn matvec_dimension_mismatch() {
        let psi = StateVector::zeros(3);
        assert!(matches!(
            Operator::identity(2).matvec(&psi),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn non_hermitian_rejected() {
        let e = vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)];
        assert!(Operator::new_hermitian(2, e.clone()).is_err());
        let op = Operator::new(2, e).unwrap();
        assert!(matches!(op.eig_hermitian(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn exchange_doublet_spectrum() {
        // H3 with no drive and B = 1
        let e = vec![
            c(0., 0.), c(0., 0.), c(0., 0.),
            c(0., 0.), c(0., 0.), c(1., 0.),
            c(0., 0.), c(1., 0.), c(0., 0.),
        ];
        let eig = Operator::new_hermitian(3, e).unwrap().eig_hermitian().unwrap();
        for (got, want) in eig.values.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_phases_diagonalize() {
        let h = random_hermitian(5, &[0.3, -1.2, 0.7, 2.1, -0.4, 0.9, 1.7, -2.2, 0.05]);
        let eig = h.eig_hermitian().unwrap();
        let rec = eig.reconstruct();
        for (a, b) in rec.entries().iter().zip(h.entries()) {
            assert!((a - b).norm() < 1e-10 * h.max_abs());
        }
        for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
            let hv = h.matvec(v).unwrap();
            let resid: f64 = hv
                .amplitudes()
                .iter()
                .zip(v.amplitudes())
                .map(|(a, b)| (a - b * lambda).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(resid < 1e-10 * h.frobenius_norm());
        }
    }

    #[test]
    fn restriction_keeps_flag() {
        let h = random_hermitian(4, &[1.0, 2.0, -0.5, 0.25]);
        let sub = h.restrict(&[3, 1]).unwrap();
        assert!(sub.is_hermitian());
        assert_eq!(sub.get(0, 1), h.get(3, 1));
        assert!(h.restrict(&[4]).is_err());
    }

    fn hermitian_strategy() -> impl Strategy<Value = Operator> {
        (1usize..=8, prop::collection::vec(-3.0f64..3.0, 64))
            .prop_map(|(n, seed)| random_hermitian(n, &seed))
    }

    fn vec_strategy(n: usize) -> impl Strategy<Value = StateVector> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
            .prop_map(|v| StateVector::new(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn eig_reconstructs(h in hermitian_strategy()) {
            let eig = h.eig_hermitian().unwrap();
            let rec = eig.reconstruct();
            let scale = h.max_abs().max(1e-300);
            for (a, b) in rec.entries().iter().zip(h.entries()) {
                prop_assert!((a - b).norm() <= 1e-10 * scale);
            }
            for (i, vi) in eig.vectors.iter().enumerate() {
                for (j, vj) in eig.vectors.iter().enumerate() {
                    let d = vi.inner(vj).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((d - c(want, 0.0)).norm() < 1e-10);
                }
            }
            prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn inner_product_conjugate_symmetric(a in vec_strategy(6), b in vec_strategy(6)) {
            let ab = a.inner(&b).unwrap();
            let ba = b.inner(&a).unwrap();
            prop_assert!((ab - ba.conj()).norm() <= 1e-15 * (1.0 + ab.norm()));
        }

        #[test]
        fn matvec_linear(
            seed in prop::collection::vec(-2.0f64..2.0, 40),
            a in vec_strategy(5),
            b in vec_strategy(5),
            s in (-2.0f64..2.0, -2.0f64..2.0),
            t in (-2.0f64..2.0, -2.0f64..2.0),
        ) {
            let op = Operator::from_fn(5, |i, j| c(seed[(i * 5 + j) % 40], seed[(i + 3 * j) % 40])).unwrap();
            let (s, t) = (c(s.0, s.1), c(t.0, t.1));
            let lhs = op.matvec(&a.scaled(s).add(&b.scaled(t)).unwrap()).unwrap();
            let rhs = op.matvec(&a).unwrap().scaled(s).add(&op.matvec(&b).unwrap().scaled(t)).unwrap();
            let scale = 1.0 + lhs.norm();
            for (x, y) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
                prop_assert!((x - y).norm() <= 1e-12 * scale);
            }
        }
    }
}
