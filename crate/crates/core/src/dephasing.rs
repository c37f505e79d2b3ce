//! Independent two-sided dephasing of a pair density.
//!
//! Single-qubit Kraus operators `E0 = diag(1, √(1-γ))`, `E1 = diag(0, √γ)`
//! with `γ = 1 - e^{-Γt}`; the pair evolves under the four products `Eμ ⊗ Eν`.
//! Populations are untouched, the `|00><11|` and `|01><10|` coherences shrink
//! by `1 - γ`.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlations::{
    mixed_lambdas, pure_report, CorrelationReport, MeasurementSide, MixedLambdas,
};
use crate::error::{Error, Result};
use crate::state::{reduced_pair_density, SuperpositionSpec, TwoQubitDensity};

/// Decay rate `Γ` and elapsed time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DephasingParams {
    decay_rate: f64,
    time: f64,
}

impl DephasingParams {
    pub fn new(decay_rate: f64, time: f64) -> Result<Self> {
        check_rate(decay_rate)?;
        check_time(time)?;
        Ok(DephasingParams { decay_rate, time })
    }

    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// `γ = 1 - e^{-Γt}`
    pub fn gamma(&self) -> f64 {
        -(-self.decay_rate * self.time).exp_m1()
    }

    /// `1 - γ = e^{-Γt}`
    pub fn survival(&self) -> f64 {
        (-self.decay_rate * self.time).exp()
    }
}

fn check_rate(decay_rate: f64) -> Result<()> {
    if !(decay_rate.is_finite() && decay_rate > 0.0) {
        return Err(Error::Domain(format!("decay rate {decay_rate} must be positive and finite")));
    }
    Ok(())
}

fn check_time(time: f64) -> Result<()> {
    if !(time.is_finite() && time >= 0.0) {
        return Err(Error::Domain(format!("time {time} must be non-negative and finite")));
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::Domain(format!("dephasing strength {gamma} outside [0, 1]")));
    }
    Ok(())
}

/// `[E0, E1]`
pub fn kraus_ops(gamma: f64) -> Result<[Matrix2<Complex64>; 2]> {
    check_gamma(gamma)?;
    let c = |x: f64| Complex64::new(x, 0.0);
    let z = c(0.0);
    Ok([
        Matrix2::new(c(1.0), z, z, c((1.0 - gamma).sqrt())),
        Matrix2::new(z, z, z, c(gamma.sqrt())),
    ])
}

/// `Σ_{μν} (Eμ⊗Eν) ρ (Eμ⊗Eν)†`
pub fn apply_dephasing(rho: &TwoQubitDensity, gamma: f64) -> Result<TwoQubitDensity> {
    let ops = kraus_ops(gamma)?;
    let mut out = nalgebra::Matrix4::<Complex64>::zeros();
    for a in &ops {
        for b in &ops {
            let e = a.kronecker(b);
            out += e * rho.matrix() * e.adjoint();
        }
    }
    TwoQubitDensity::new(out)
}

/// Kraus-evolved `(i, j)` marginal at time `t`.
pub fn evolved_pair_density(
    spec: &SuperpositionSpec,
    i: usize,
    j: usize,
    params: DephasingParams,
) -> Result<TwoQubitDensity> {
    apply_dephasing(&reduced_pair_density(spec, i, j)?, params.gamma())
}

/// `½ √((1-p_i²)(1-p_j²)) / (1 + (Π p) cos mπ) · [e^{-Γt}(1 + q) - (1 - q)]`,
/// clipped at zero.
pub fn concurrence_trajectory(spec: &SuperpositionSpec, i: usize, j: usize, params: DephasingParams) -> Result<f64> {
    let t = spec.pair_terms(i, j)?;
    let bracket = params.survival() * (1.0 + t.q) - (1.0 - t.q);
    Ok((0.5 * t.root_complements() / t.denominator * bracket).max(0.0))
}

/// Time at which the pair concurrence reaches zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SuddenDeathTime {
    Finite(f64),
    /// Concurrence only decays asymptotically (`q_ij = 1`).
    Infinite,
}

impl SuddenDeathTime {
    pub fn as_finite(self) -> Option<f64> {
        match self {
            SuddenDeathTime::Finite(t) => Some(t),
            SuddenDeathTime::Infinite => None,
        }
    }
}

impl std::fmt::Display for SuddenDeathTime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SuddenDeathTime::Finite(t) => write!(f, "{t}"),
            SuddenDeathTime::Infinite => f.write_str("infinite"),
        }
    }
}

/// `t0 = ln((1 + q)/(1 - q)) / Γ`; zero when the pair starts unentangled.
pub fn sudden_death_time(spec: &SuperpositionSpec, i: usize, j: usize, decay_rate: f64) -> Result<SuddenDeathTime> {
    check_rate(decay_rate)?;
    let t = spec.pair_terms(i, j)?;
    if t.q * t.root_complements() == 0.0 {
        return Ok(SuddenDeathTime::Finite(0.0));
    }
    if t.q >= 1.0 {
        return Ok(SuddenDeathTime::Infinite);
    }
    Ok(SuddenDeathTime::Finite(2.0 * t.q.atanh() / decay_rate))
}

/// `K(t)` spectrum `{λ1, e^{-2Γt} λ2, e^{-2Γt} λ3}` and the resulting discord.
pub fn discord_trajectory(
    spec: &SuperpositionSpec,
    i: usize,
    j: usize,
    params: DephasingParams,
    side: MeasurementSide,
) -> Result<CorrelationReport> {
    let l = mixed_lambdas(spec, i, j, side)?;
    let s = params.survival().powi(2);
    let evolved = MixedLambdas { lambda1: l.lambda1, lambda2: s * l.lambda2, lambda3: s * l.lambda3 };
    let mut k = evolved.as_array();
    k.sort_by(|a, b| b.total_cmp(a));
    Ok(CorrelationReport {
        discord: evolved.discord(),
        branch: evolved.branch(),
        k_eigenvalues: k,
        concurrence: concurrence_trajectory(spec, i, j, params)?,
        measurement_side: side,
    })
}

/// Pure `k | n-k` split under the channel: `C(t) = e^{-Γt} C`.
pub fn pure_concurrence_trajectory(spec: &SuperpositionSpec, k: usize, params: DephasingParams) -> Result<f64> {
    Ok(params.survival() * pure_report(spec, k)?.concurrence)
}

/// Pure split under the channel: `D(t) = 2 e^{-2Γt} λ+ λ- = C(t)²/2`.
pub fn pure_discord_trajectory(spec: &SuperpositionSpec, k: usize, params: DephasingParams) -> Result<f64> {
    let split = crate::state::pure_split(spec, k)?;
    Ok(2.0 * params.survival().powi(2) * split.schmidt_plus * split.schmidt_minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{concurrence_mixed, geometric_discord_numeric, mixed_discord_closed};
    use crate::state::{bloch_decompose, BlochForm};
    use crate::Parity;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn kraus_examples() {
        let [e0, e1] = kraus_ops(0.0).unwrap();
        assert_eq!(e0, Matrix2::identity());
        assert_eq!(e1, Matrix2::zeros());
        let [e0, e1] = kraus_ops(1.0).unwrap();
        assert_eq!(e0[(1, 1)].re, 0.0);
        assert_eq!(e1[(1, 1)].re, 1.0);
        let [e0, _] = kraus_ops(0.75).unwrap();
        assert_eq!(e0[(1, 1)].re, 0.5);
        assert!(kraus_ops(-0.1).is_err() && kraus_ops(1.1).is_err());
    }

    #[test]
    fn kraus_completeness() {
        for k in 0..=20 {
            let g = k as f64 / 20.0;
            let [e0, e1] = kraus_ops(g).unwrap();
            let sum = e0.adjoint() * e0 + e1.adjoint() * e1;
            assert!((sum - Matrix2::identity()).iter().all(|z| z.norm() < 1e-14));
        }
    }

    #[test]
    fn identity_at_zero_and_full_dephasing_of_bell() {
        let bell = TwoQubitDensity::bell_phi_plus();
        assert!(apply_dephasing(&bell, 0.0).unwrap().max_abs_diff(&bell) < 1e-16);
        let out = apply_dephasing(&bell, 1.0).unwrap();
        let m = out.matrix();
        assert!(close(m[(0, 0)].re, 0.5, 1e-15) && close(m[(3, 3)].re, 0.5, 1e-15));
        assert!(m[(0, 3)].norm() < 1e-16);
    }

    #[test]
    fn kraus_sum_agrees_with_bloch_scaling() {
        let s = SuperpositionSpec::equal(3, 0.5, Parity::Even).unwrap();
        let rho = reduced_pair_density(&s, 0, 1).unwrap();
        let out = apply_dephasing(&rho, 0.5).unwrap();
        for (r, c) in [(0, 3), (3, 0), (1, 2), (2, 1)] {
            assert!(close(out.matrix()[(r, c)].re, 0.5 * rho.matrix()[(r, c)].re, 1e-16));
        }
        for d in 0..4 {
            assert!((out.matrix()[(d, d)] - rho.matrix()[(d, d)]).norm() < 1e-16);
        }
        let before = bloch_decompose(&rho);
        let mut scaled: BlochForm = before.clone();
        scaled.r[(0, 0)] *= 0.5;
        scaled.r[(1, 1)] *= 0.5;
        let rebuilt = TwoQubitDensity::new(scaled.reconstruct()).unwrap();
        assert!(rebuilt.max_abs_diff(&out) < 1e-12);
    }

    #[test]
    fn semigroup_composition() {
        let s = SuperpositionSpec::new(vec![0.2, 0.6, 0.8, 0.4], Parity::Odd).unwrap();
        let rho = reduced_pair_density(&s, 1, 3).unwrap();
        let (g1, g2) = (0.3, 0.55);
        let twice = apply_dephasing(&apply_dephasing(&rho, g1).unwrap(), g2).unwrap();
        let once = apply_dephasing(&rho, 1.0 - (1.0 - g1) * (1.0 - g2)).unwrap();
        assert!(twice.max_abs_diff(&once) < 1e-12);
    }

    #[test]
    fn params_validation() {
        assert!(DephasingParams::new(0.0, 1.0).is_err());
        assert!(DephasingParams::new(1.0, -1.0).is_err());
        assert!(DephasingParams::new(f64::NAN, 1.0).is_err());
        let p = DephasingParams::new(2.0, 0.0).unwrap();
        assert_eq!(p.gamma(), 0.0);
        let p = DephasingParams::new(2.0, 0.5).unwrap();
        assert!(close(p.gamma(), 1.0 - (-1.0f64).exp(), 1e-16));
    }

    #[test]
    fn concurrence_at_time_zero() {
        let s = SuperpositionSpec::new(vec![0.3, 0.5, 0.7, 0.9], Parity::Even).unwrap();
        let p0 = DephasingParams::new(1.0, 0.0).unwrap();
        let c0 = concurrence_trajectory(&s, 1, 2, p0).unwrap();
        let q = 0.27;
        let expect = q * ((1.0 - 0.25) * (1.0 - 0.49f64)).sqrt() / (1.0 + 0.3 * 0.5 * 0.7 * 0.9);
        assert!(close(c0, expect, 1e-15));
    }

    #[test]
    fn zero_q_never_entangled() {
        let s = SuperpositionSpec::new(vec![0.4, 0.6, 0.0], Parity::Even).unwrap();
        for t in [0.0, 0.1, 1.0, 10.0] {
            let p = DephasingParams::new(1.0, t).unwrap();
            assert_eq!(concurrence_trajectory(&s, 0, 1, p).unwrap(), 0.0);
        }
        assert_eq!(sudden_death_time(&s, 0, 1, 1.0).unwrap(), SuddenDeathTime::Finite(0.0));
    }

    #[test]
    fn sudden_death_examples() {
        // q = 0.5
        let s = SuperpositionSpec::new(vec![0.3, 0.8, 0.5], Parity::Even).unwrap();
        let t0 = sudden_death_time(&s, 0, 1, 1.0).unwrap().as_finite().unwrap();
        assert!(close(t0, 3.0f64.ln(), 1e-15));
        assert!(close(t0, 1.098612, 1e-6));

        let s = SuperpositionSpec::new(vec![0.5, 0.5], Parity::Even).unwrap();
        assert_eq!(sudden_death_time(&s, 0, 1, 1.0).unwrap(), SuddenDeathTime::Infinite);

        let s = SuperpositionSpec::equal(4, 0.5, Parity::Even).unwrap();
        let t0 = sudden_death_time(&s, 0, 1, 1.0).unwrap().as_finite().unwrap();
        assert!(close(t0, (5.0f64 / 3.0).ln(), 1e-15));
        let half = DephasingParams::new(1.0, t0 / 2.0).unwrap();
        let twice = DephasingParams::new(1.0, 2.0 * t0).unwrap();
        assert!(concurrence_trajectory(&s, 0, 1, half).unwrap() > 0.0);
        assert_eq!(concurrence_trajectory(&s, 0, 1, twice).unwrap(), 0.0);
        let evolved = evolved_pair_density(&s, 0, 1, half).unwrap();
        assert!(close(
            concurrence_mixed(&evolved).unwrap(),
            concurrence_trajectory(&s, 0, 1, half).unwrap(),
            1e-10
        ));
        let evolved = evolved_pair_density(&s, 0, 1, twice).unwrap();
        assert!(concurrence_mixed(&evolved).unwrap() <= 1e-12);
        assert!(sudden_death_time(&s, 0, 1, 0.0).is_err());
    }

    #[test]
    fn discord_trajectory_at_zero_is_static() {
        let s = SuperpositionSpec::new(vec![0.3, 0.5, 0.7, 0.9], Parity::Odd).unwrap();
        let p0 = DephasingParams::new(0.7, 0.0).unwrap();
        for side in [MeasurementSide::FirstQubit, MeasurementSide::SecondQubit] {
            let a = discord_trajectory(&s, 0, 3, p0, side).unwrap();
            let b = mixed_discord_closed(&s, 0, 3, side).unwrap();
            assert_eq!(a.discord, b.discord);
            assert_eq!(a.branch, b.branch);
        }
    }

    #[test]
    fn discord_trajectory_matches_kraus() {
        let s = SuperpositionSpec::new(vec![0.3, 0.5, 0.7, 0.9, 0.6], Parity::Even).unwrap();
        for t in [0.0, 0.05, 0.3, 1.0, 4.0] {
            let params = DephasingParams::new(1.3, t).unwrap();
            let rho = evolved_pair_density(&s, 2, 4, params).unwrap();
            for side in [MeasurementSide::FirstQubit, MeasurementSide::SecondQubit] {
                let closed = discord_trajectory(&s, 2, 4, params, side).unwrap();
                let numeric = geometric_discord_numeric(&rho, side).unwrap();
                assert!(close(closed.discord, numeric.discord, 1e-12), "t={t}");
            }
        }
    }

    #[test]
    fn discord_outlives_entanglement() {
        let s = SuperpositionSpec::equal(4, 0.5, Parity::Even).unwrap();
        for t in [1.0, 10.0, 50.0, 100.0] {
            let params = DephasingParams::new(1.0, t).unwrap();
            let r = discord_trajectory(&s, 0, 1, params, MeasurementSide::FirstQubit).unwrap();
            assert!(r.discord > 0.0, "t={t}");
            assert_eq!(r.concurrence, 0.0);
        }
    }

    #[test]
    fn pure_case_trajectory() {
        let s = SuperpositionSpec::new(vec![0.5, 0.5], Parity::Even).unwrap();
        for t in [0.0, 0.2, 1.0, 3.0] {
            let params = DephasingParams::new(0.8, t).unwrap();
            let d = pure_discord_trajectory(&s, 1, params).unwrap();
            let c = pure_concurrence_trajectory(&s, 1, params).unwrap();
            assert!(close(d, 0.5 * c * c, 1e-14));
            let mixed = discord_trajectory(&s, 0, 1, params, MeasurementSide::FirstQubit).unwrap();
            assert!(close(mixed.discord, d, 1e-14));
            assert!(close(mixed.concurrence, c, 1e-14));
            let evolved = evolved_pair_density(&s, 0, 1, params).unwrap();
            assert!(close(concurrence_mixed(&evolved).unwrap(), c, 1e-7));
            assert!(c > 0.0);
        }
    }
}
