//! Two-qubit representations of the balanced cat state
//! `N (|Ω_1 … Ω_n> + e^{imπ} |Ω'_1 … Ω'_n>)`.
//!
//! Each mode spans the two-dimensional space of `{|Ω_i>, |Ω'_i>}`, mapped to a
//! qubit by `|Ω_i> = a_i|0> + b_i|1>`, `|Ω'_i> = a_i|0> - b_i|1>` with
//! `a = √((1+p)/2)`, `b = √((1-p)/2)`. Two reductions are built here: the
//! pure `k | n-k` split and the mixed two-mode marginal `ρ_ij`.

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

const NULL_STATE_TOL: f64 = 1e-14;
const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// Relative phase `e^{imπ} = ±1` of the two branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_m(m: i64) -> Self {
        if m.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `cos mπ`
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `1 - Π p` evaluated through logarithms so it keeps full relative
/// precision when the product is close to one.
fn one_minus_product(ps: impl IntoIterator<Item = f64>) -> f64 {
    let mut log = 0.0;
    for p in ps {
        if p == 0.0 {
            return 1.0;
        }
        log += (-(1.0 - p)).ln_1p();
    }
    -log.exp_m1()
}

/// `1 + s Π p` for `s = ±1`.
fn one_plus_signed_product(sign: f64, ps: impl IntoIterator<Item = f64>) -> f64 {
    if sign > 0.0 {
        1.0 + ps.into_iter().product::<f64>()
    } else {
        one_minus_product(ps)
    }
}

#[derive(Deserialize)]
struct RawSpec {
    overlaps: Vec<f64>,
    parity: Parity,
}

/// Overlaps `p_i = <Ω_i|Ω'_i>` of every mode and the branch parity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct SuperpositionSpec {
    overlaps: Vec<f64>,
    parity: Parity,
}

impl TryFrom<RawSpec> for SuperpositionSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        SuperpositionSpec::new(raw.overlaps, raw.parity)
    }
}

impl SuperpositionSpec {
    pub fn new(overlaps: Vec<f64>, parity: Parity) -> Result<Self> {
        if overlaps.len() < 2 {
            return Err(Error::InvalidSpec(format!(
                "need at least 2 modes, got {}",
                overlaps.len()
            )));
        }
        for (i, &p) in overlaps.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidSpec(format!(
                    "overlap p_{} = {p} outside [0, 1]",
                    i + 1
                )));
            }
        }
        let spec = SuperpositionSpec { overlaps, parity };
        if 2.0 * spec.denominator() <= NULL_STATE_TOL {
            return Err(Error::DivergentNormalization(spec.product()));
        }
        Ok(spec)
    }

    /// All `n` modes share the overlap `p`.
    pub fn equal(n: usize, p: f64, parity: Parity) -> Result<Self> {
        Self::new(vec![p; n], parity)
    }

    pub fn n(&self) -> usize {
        self.overlaps.len()
    }

    pub fn overlaps(&self) -> &[f64] {
        &self.overlaps
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn product(&self) -> f64 {
        self.overlaps.iter().product()
    }

    /// `1 + (Π p) cos mπ`
    pub fn denominator(&self) -> f64 {
        one_plus_signed_product(self.parity.sign(), self.overlaps.iter().copied())
    }

    /// `N = [2 + 2 (Π p) cos mπ]^{-1/2}`
    pub fn normalization(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `N²`
    pub fn norm_sq(&self) -> f64 {
        1.0 / (2.0 * self.denominator())
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(Error::InvalidIndex(format!(
                "modes ({}, {}) out of range for n = {n}",
                i + 1,
                j + 1
            )));
        }
        if i == j {
            return Err(Error::InvalidIndex(format!("pair needs two distinct modes, got {}", i + 1)));
        }
        Ok(())
    }

    fn excluding(&self, i: usize, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.overlaps
            .iter()
            .enumerate()
            .filter(move |&(k, _)| k != i && k != j)
            .map(|(_, &p)| p)
    }

    /// `q_ij`: product of every overlap except `p_i` and `p_j` (0-based).
    pub fn q(&self, i: usize, j: usize) -> Result<f64> {
        self.check_pair(i, j)?;
        Ok(self.excluding(i, j).product())
    }

    /// `(1 + s q_ij)` with full precision for either sign.
    fn shifted_q(&self, sign: f64, i: usize, j: usize) -> f64 {
        one_plus_signed_product(sign, self.excluding(i, j))
    }

    /// Overlap products `(P_k, P_{n-k})` of the two groups of a `k | n-k` split.
    pub fn group_products(&self, k: usize) -> Result<(f64, f64)> {
        self.check_split(k)?;
        let (a, b) = self.overlaps.split_at(k);
        Ok((a.iter().product(), b.iter().product()))
    }

    /// `(1 - P_k²)` and `(1 - P_{n-k}²)`, each kept accurate near `P = 1`.
    pub(crate) fn group_complements_sq(&self, k: usize) -> Result<(f64, f64)> {
        self.check_split(k)?;
        let (a, b) = self.overlaps.split_at(k);
        let sq = |g: &[f64]| one_minus_product(g.iter().copied()) * (1.0 + g.iter().product::<f64>());
        Ok((sq(a), sq(b)))
    }

    fn check_split(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.n() {
            return Err(Error::InvalidIndex(format!(
                "split size k = {k} must lie in [1, {}]",
                self.n() - 1
            )));
        }
        Ok(())
    }

    pub(crate) fn pair_terms(&self, i: usize, j: usize) -> Result<PairTerms> {
        self.check_pair(i, j)?;
        let c = self.parity.sign();
        Ok(PairTerms {
            p_i: self.overlaps[i],
            p_j: self.overlaps[j],
            q: self.excluding(i, j).product(),
            norm_sq: self.norm_sq(),
            denominator: self.denominator(),
            plus: self.shifted_q(c, i, j),
            minus: self.shifted_q(-c, i, j),
            local_first: self.local_axis_term(i),
            local_second: self.local_axis_term(j),
            zz: self.zz_term(i, j),
        })
    }

    /// `p_i + (cos mπ) p_j q_ij`; for odd parity the difference is formed
    /// from the complements `1 - p_j q_ij` and `1 - p_i`.
    fn local_axis_term(&self, i: usize) -> f64 {
        let p_i = self.overlaps[i];
        let others = self.overlaps.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &p)| p);
        match self.parity {
            Parity::Even => p_i + others.product::<f64>(),
            Parity::Odd => one_minus_product(others) - (1.0 - p_i),
        }
    }

    /// `p_i p_j + (cos mπ) q_ij`
    fn zz_term(&self, i: usize, j: usize) -> f64 {
        let pair = [self.overlaps[i], self.overlaps[j]];
        match self.parity {
            Parity::Even => pair[0] * pair[1] + self.excluding(i, j).product::<f64>(),
            Parity::Odd => one_minus_product(self.excluding(i, j)) - one_minus_product(pair),
        }
    }
}

/// Scalars shared by every closed form of the `(i, j)` marginal.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PairTerms {
    pub p_i: f64,
    pub p_j: f64,
    pub q: f64,
    pub norm_sq: f64,
    /// `1 + (Π p) cos mπ`
    pub denominator: f64,
    /// `1 + q cos mπ`
    pub plus: f64,
    /// `1 - q cos mπ`
    pub minus: f64,
    /// `p_i + p_j q cos mπ`, the z component of the first local Bloch vector over `2N²`
    pub local_first: f64,
    /// `p_j + p_i q cos mπ`
    pub local_second: f64,
    /// `p_i p_j + q cos mπ`
    pub zz: f64,
}

impl PairTerms {
    /// `√((1 - p_i²)(1 - p_j²))`
    pub fn root_complements(&self) -> f64 {
        ((1.0 - self.p_i) * (1.0 + self.p_i) * (1.0 - self.p_j) * (1.0 + self.p_j)).sqrt()
    }
}

/// `(a, b) = (√((1+p)/2), √((1-p)/2))`
pub fn qubit_map_coeffs(p: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("overlap {p} outside [0, 1]")));
    }
    Ok((((1.0 + p) / 2.0).sqrt(), ((1.0 - p) / 2.0).sqrt()))
}

/// Free-function form of [`SuperpositionSpec::normalization`].
pub fn normalization(spec: &SuperpositionSpec) -> f64 {
    spec.normalization()
}

/// Coefficients of the pure state in the logical basis of a `k | n-k` split,
/// plus the Schmidt weights of that cut.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureSplit {
    pub k: usize,
    pub c00: f64,
    pub c01: f64,
    pub c10: f64,
    pub c11: f64,
    pub schmidt_plus: f64,
    pub schmidt_minus: f64,
}

impl PureSplit {
    /// Amplitudes in the order `|00>, |01>, |10>, |11>`.
    pub fn state_vector(&self) -> Vector4<f64> {
        Vector4::new(self.c00, self.c01, self.c10, self.c11)
    }

    /// `2 |C00 C11 - C10 C01|`
    pub fn concurrence(&self) -> f64 {
        2.0 * (self.c00 * self.c11 - self.c10 * self.c01).abs()
    }

    pub fn density(&self) -> TwoQubitDensity {
        let v = self.state_vector().map(|x| Complex64::new(x, 0.0));
        TwoQubitDensity(v * v.transpose())
    }
}

/// Pure-state coefficients and Schmidt weights for the split after mode `k`.
pub fn pure_split(spec: &SuperpositionSpec, k: usize) -> Result<PureSplit> {
    let (pk, pnk) = spec.group_products(k)?;
    let (ak, bk) = qubit_map_coeffs(pk)?;
    let (an, bn) = qubit_map_coeffs(pnk)?;
    let norm = spec.normalization();
    // N(1 ± e^{imπ}) is 2N or 0
    let (same, flip) = match spec.parity() {
        Parity::Even => (2.0 * norm, 0.0),
        Parity::Odd => (0.0, 2.0 * norm),
    };
    let c00 = same * ak * an;
    let c01 = flip * ak * bn;
    let c10 = flip * an * bk;
    let c11 = same * bk * bn;
    let conc = 2.0 * (c00 * c11 - c10 * c01).abs();
    let gap = (1.0 - conc * conc).max(0.0).sqrt();
    Ok(PureSplit {
        k,
        c00,
        c01,
        c10,
        c11,
        schmidt_plus: 0.5 * (1.0 + gap),
        schmidt_minus: 0.5 * (1.0 - gap),
    })
}

/// A two-qubit density matrix in the basis `|00>, |01>, |10>, |11>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity(Matrix4<Complex64>);

impl TwoQubitDensity {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        let mut asym = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                asym = asym.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if !(asym <= HERMITIAN_TOL) {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {asym:e})")));
        }
        let tr = m.trace();
        if !((tr.re - 1.0).abs() <= TRACE_TOL && tr.im.abs() <= TRACE_TOL) {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        // exact Hermitian part keeps downstream spectra real
        let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let min = linalg::eig_herm(&h)?[3];
        if min < -PSD_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(TwoQubitDensity(h))
    }

    pub fn maximally_mixed() -> Self {
        TwoQubitDensity(Matrix4::identity() * Complex64::new(0.25, 0.0))
    }

    /// Projector onto a (not necessarily normalised) pure state.
    pub fn pure(amplitudes: Vector4<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidDensity("zero or non-finite state vector".into()));
        }
        let v = amplitudes / Complex64::new(norm, 0.0);
        Ok(TwoQubitDensity(v * v.adjoint()))
    }

    /// `|Φ+> = (|00> + |11>)/√2`
    pub fn bell_phi_plus() -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Self::pure(Vector4::new(s, z, z, s)).expect("normalised")
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4<Complex64> {
        self.0
    }

    /// Exchanges the two qubits.
    pub fn swapped(&self) -> Self {
        let s = swap_matrix();
        TwoQubitDensity(s * self.0 * s)
    }

    /// Conjugation by a local unitary `U_1 ⊗ U_2`.
    pub fn local_unitary(&self, u1: &Matrix2<Complex64>, u2: &Matrix2<Complex64>) -> Self {
        let u = u1.kronecker(u2);
        TwoQubitDensity(u * self.0 * u.adjoint())
    }

    /// Marginal of the first qubit.
    pub fn reduced_first(&self) -> Matrix2<Complex64> {
        Matrix2::from_fn(|a, b| self.0[(2 * a, 2 * b)] + self.0[(2 * a + 1, 2 * b + 1)])
    }

    /// Marginal of the second qubit.
    pub fn reduced_second(&self) -> Matrix2<Complex64> {
        Matrix2::from_fn(|a, b| self.0[(a, b)] + self.0[(a + 2, b + 2)])
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        linalg::eig_herm(&self.0).expect("Hermitian by construction")
    }

    /// Largest entrywise modulus difference.
    pub fn max_abs_diff(&self, other: &TwoQubitDensity) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub(crate) fn swap_matrix() -> Matrix4<Complex64> {
    let mut s = Matrix4::<Complex64>::zeros();
    let one = Complex64::new(1.0, 0.0);
    s[(0, 0)] = one;
    s[(1, 2)] = one;
    s[(2, 1)] = one;
    s[(3, 3)] = one;
    s
}

/// Closed-form X-shaped marginal of modes `i` and `j` (0-based), qubit of
/// mode `i` first.
pub fn reduced_pair_density(spec: &SuperpositionSpec, i: usize, j: usize) -> Result<TwoQubitDensity> {
    let t = spec.pair_terms(i, j)?;
    let (ai, bi) = qubit_map_coeffs(t.p_i)?;
    let (aj, bj) = qubit_map_coeffs(t.p_j)?;
    let w = 2.0 * t.norm_sq;
    let coh = ai * aj * bi * bj;
    let c = |x: f64| Complex64::new(x, 0.0);

    let mut m = Matrix4::<Complex64>::zeros();
    m[(0, 0)] = c(w * ai * ai * aj * aj * t.plus);
    m[(1, 1)] = c(w * ai * ai * bj * bj * t.minus);
    m[(2, 2)] = c(w * aj * aj * bi * bi * t.minus);
    m[(3, 3)] = c(w * bi * bi * bj * bj * t.plus);
    m[(0, 3)] = c(w * coh * t.plus);
    m[(3, 0)] = m[(0, 3)];
    m[(1, 2)] = c(w * coh * t.minus);
    m[(2, 1)] = m[(1, 2)];
    TwoQubitDensity::new(m)
}

/// Local Bloch vectors `x`, `y` and correlation tensor `R` of a two-qubit state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochForm {
    pub x: Vector3<f64>,
    pub y: Vector3<f64>,
    pub r: Matrix3<f64>,
}

impl BlochForm {
    /// `¼[σ0⊗σ0 + Σ x_a σ_a⊗σ0 + Σ y_a σ0⊗σ_a + Σ R_ab σ_a⊗σ_b]`
    pub fn reconstruct(&self) -> Matrix4<Complex64> {
        let c = |x: f64| Complex64::new(x, 0.0);
        let mut m = Matrix4::<Complex64>::identity();
        for a in 0..3 {
            m += pauli(a + 1).kronecker(&pauli(0)) * c(self.x[a]);
            m += pauli(0).kronecker(&pauli(a + 1)) * c(self.y[a]);
            for b in 0..3 {
                m += pauli(a + 1).kronecker(&pauli(b + 1)) * c(self.r[(a, b)]);
            }
        }
        m * c(0.25)
    }

    /// Extended correlation matrix `T_{αβ} = Tr[ρ σ_α⊗σ_β]`, `α, β = 0..3`.
    pub fn extended(&self) -> Matrix4<f64> {
        let mut t = Matrix4::zeros();
        t[(0, 0)] = 1.0;
        for a in 0..3 {
            t[(a + 1, 0)] = self.x[a];
            t[(0, a + 1)] = self.y[a];
            for b in 0..3 {
                t[(a + 1, b + 1)] = self.r[(a, b)];
            }
        }
        t
    }
}

/// `σ_0 = I`, `σ_1 = X`, `σ_2 = Y`, `σ_3 = Z`.
pub fn pauli(index: usize) -> Matrix2<Complex64> {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match index {
        0 => Matrix2::new(l, o, o, l),
        1 => Matrix2::new(o, l, l, o),
        2 => Matrix2::new(o, -i, i, o),
        3 => Matrix2::new(l, o, o, -l),
        _ => panic!("Pauli index {index} out of range"),
    }
}

fn expectation(rho: &Matrix4<Complex64>, op: &Matrix4<Complex64>) -> f64 {
    (rho * op).trace().re
}

pub fn bloch_decompose(rho: &TwoQubitDensity) -> BlochForm {
    let m = rho.matrix();
    let mut x = Vector3::zeros();
    let mut y = Vector3::zeros();
    let mut r = Matrix3::zeros();
    for a in 0..3 {
        x[a] = expectation(m, &pauli(a + 1).kronecker(&pauli(0)));
        y[a] = expectation(m, &pauli(0).kronecker(&pauli(a + 1)));
        for b in 0..3 {
            r[(a, b)] = expectation(m, &pauli(a + 1).kronecker(&pauli(b + 1)));
        }
    }
    BlochForm { x, y, r }
}
