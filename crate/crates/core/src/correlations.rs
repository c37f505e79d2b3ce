//! Geometric discord and concurrence.
//!
//! Geometric discord is the squared Hilbert-Schmidt distance to the closest
//! classical-quantum state. For two qubits it is a quarter of the smallest
//! pairwise sum of eigenvalues of `K = x xᵀ + R Rᵀ` (measurement on the first
//! qubit) or `K = y yᵀ + Rᵀ R` (measurement on the second).
//!
//! Three routes exist and are cross-checked: closed forms for the cat-state
//! reductions, a numeric eigensolve of `K` for arbitrary densities, and the
//! brute-force measurement search in [`crate::oracle`].

use nalgebra::{Matrix3, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::state::{bloch_decompose, pauli, pure_split, BlochForm, SuperpositionSpec, TwoQubitDensity};

/// Which qubit carries the projective measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasurementSide {
    #[default]
    FirstQubit,
    SecondQubit,
}

/// How a discord value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Pure `k | n-k` split, `D = C²/2`.
    PurePath,
    /// Mixed closed form with `λ1 >= λ2`: `D = (λ2 + λ3)/4`.
    MixedPlus,
    /// Mixed closed form with `λ1 < λ2`: `D = (λ1 + λ3)/4`.
    MixedMinus,
    NumericK,
    OracleSearch,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::PurePath => "pure_path",
            Branch::MixedPlus => "mixed_plus",
            Branch::MixedMinus => "mixed_minus",
            Branch::NumericK => "numeric_k",
            Branch::OracleSearch => "oracle_search",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub discord: f64,
    pub branch: Branch,
    /// Eigenvalues of `K`, descending.
    pub k_eigenvalues: [f64; 3],
    pub concurrence: f64,
    pub measurement_side: MeasurementSide,
}

/// `¼ min{λa + λb}` over the three pairs.
pub fn discord_from_k_eigenvalues(values: [f64; 3]) -> f64 {
    let mut v = values;
    v.sort_by(|a, b| b.total_cmp(a));
    (0.25 * (v[1] + v[2])).max(0.0)
}

fn sorted_desc(mut v: [f64; 3]) -> [f64; 3] {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn k_matrix(bloch: &BlochForm, side: MeasurementSide) -> Matrix3<f64> {
    match side {
        MeasurementSide::FirstQubit => bloch.x * bloch.x.transpose() + bloch.r * bloch.r.transpose(),
        MeasurementSide::SecondQubit => bloch.y * bloch.y.transpose() + bloch.r.transpose() * bloch.r,
    }
}

/// Discord of an arbitrary two-qubit density from the spectrum of `K`.
pub fn geometric_discord_numeric(rho: &TwoQubitDensity, side: MeasurementSide) -> Result<CorrelationReport> {
    let k = k_matrix(&bloch_decompose(rho), side);
    let eig = linalg::eig_sym(&k)?;
    Ok(CorrelationReport {
        discord: discord_from_k_eigenvalues(eig.values),
        branch: Branch::NumericK,
        k_eigenvalues: eig.values,
        concurrence: concurrence_mixed(rho)?,
        measurement_side: side,
    })
}

/// `½ (1 - P_k²)(1 - P_{n-k}²) / (1 + (Π p) cos mπ)²`
pub fn geometric_discord_pure_closed(spec: &SuperpositionSpec, k: usize) -> Result<f64> {
    let (ck, cnk) = spec.group_complements_sq(k)?;
    let d = spec.denominator();
    Ok(0.5 * ck * cnk / (d * d))
}

/// `√(1 - P_k²) √(1 - P_{n-k}²) / (1 + (Π p) cos mπ)`
pub fn concurrence_pure(spec: &SuperpositionSpec, k: usize) -> Result<f64> {
    let (ck, cnk) = spec.group_complements_sq(k)?;
    Ok(ck.sqrt() * cnk.sqrt() / spec.denominator())
}

/// Report for the pure `k | n-k` split. `K` is diagonal with entries
/// `(2 - C², C², C²)` in the logical basis.
pub fn pure_report(spec: &SuperpositionSpec, k: usize) -> Result<CorrelationReport> {
    let c = concurrence_pure(spec, k)?;
    let c2 = c * c;
    Ok(CorrelationReport {
        discord: geometric_discord_pure_closed(spec, k)?,
        branch: Branch::PurePath,
        k_eigenvalues: sorted_desc([2.0 - c2, c2, c2]),
        concurrence: c,
        measurement_side: MeasurementSide::FirstQubit,
    })
}

/// Density of the pure split, for numeric cross-checks.
pub fn pure_density(spec: &SuperpositionSpec, k: usize) -> Result<TwoQubitDensity> {
    Ok(pure_split(spec, k)?.density())
}

fn sigma_yy() -> Matrix4<Complex64> {
    pauli(2).kronecker(&pauli(2))
}

/// Eigenvalues of `ρ` below this are treated as exact zeros when forming `√ρ`.
const SPECTRAL_FLOOR: f64 = 1e-14;

/// Square roots `c1 >= c2 >= c3 >= c4` of the eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)`.
///
/// They are the singular values of `τ = Wᵀ (σy⊗σy) W` for any factor
/// `ρ = W W†`; taking `W = √ρ` and reading singular values directly keeps
/// vanishing roots at rounding level instead of the square root of it.
pub fn spin_flip_roots(rho: &TwoQubitDensity) -> Result<[f64; 4]> {
    let w = linalg::herm_map(rho.matrix(), |x| if x > SPECTRAL_FLOOR { x.sqrt() } else { 0.0 })?;
    let tau = w.transpose() * sigma_yy() * w;
    Ok(linalg::complex_singular_values(&tau))
}

/// Same roots from the spectrum of the Hermitian form `√ρ ρ̃ √ρ`. Loses
/// accuracy for small roots; kept as an independent cross-check.
pub fn spin_flip_roots_hermitian(rho: &TwoQubitDensity) -> Result<[f64; 4]> {
    let sqrt_rho = linalg::herm_map(rho.matrix(), |x| x.max(0.0).sqrt())?;
    let yy = sigma_yy();
    let flipped = yy * rho.matrix().conjugate() * yy;
    let m = sqrt_rho * flipped * sqrt_rho;
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let ev = linalg::eig_herm(&h)?;
    Ok(ev.map(|x| x.max(0.0).sqrt()))
}

/// Wootters concurrence `max{c1 - c2 - c3 - c4, 0}`.
pub fn concurrence_mixed(rho: &TwoQubitDensity) -> Result<f64> {
    let c = spin_flip_roots(rho)?;
    Ok((c[0] - c[1] - c[2] - c[3]).max(0.0))
}

/// Concurrence of the `(i, j)` marginal before any noise:
/// `q_ij √((1 - p_i²)(1 - p_j²)) / (1 + (Π p) cos mπ)`.
pub fn pair_concurrence_closed(spec: &SuperpositionSpec, i: usize, j: usize) -> Result<f64> {
    let t = spec.pair_terms(i, j)?;
    Ok(t.q * t.root_complements() / t.denominator)
}

/// Eigenvalues of `K` for the `(i, j)` marginal, labelled by axis:
/// `lambda1` from the z axis, `lambda2` from x, `lambda3` from y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedLambdas {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
}

impl MixedLambdas {
    pub fn as_array(&self) -> [f64; 3] {
        [self.lambda1, self.lambda2, self.lambda3]
    }

    /// Branch choice; ties go to [`Branch::MixedPlus`].
    pub fn branch(&self) -> Branch {
        if self.lambda1 >= self.lambda2 {
            Branch::MixedPlus
        } else {
            Branch::MixedMinus
        }
    }

    pub fn discord(&self) -> f64 {
        // λ3 <= λ2, so the largest eigenvalue is λ1 or λ2
        let d = match self.branch() {
            Branch::MixedPlus => 0.25 * (self.lambda2 + self.lambda3),
            _ => 0.25 * (self.lambda1 + self.lambda3),
        };
        d.max(0.0)
    }
}

/// Closed-form `K` spectrum of the `(i, j)` marginal.
///
/// `K` is diagonal: `λ2 = R11²`, `λ3 = R22² = q² λ2`, and `λ1` is the
/// squared z components of the measured qubit's Bloch vector plus `R33²`,
/// i.e. `4N⁴[(1 + p_j²)(p_i² + q²) + 4 (Π p) cos mπ]` when measuring the first
/// qubit and the same with `i ↔ j` when measuring the second.
pub fn mixed_lambdas(spec: &SuperpositionSpec, i: usize, j: usize, side: MeasurementSide) -> Result<MixedLambdas> {
    let t = spec.pair_terms(i, j)?;
    let d2 = t.denominator * t.denominator;
    let local = match side {
        MeasurementSide::FirstQubit => t.local_first,
        MeasurementSide::SecondQubit => t.local_second,
    };
    let root = t.root_complements();
    let lambda2 = root * root / d2;
    Ok(MixedLambdas {
        lambda1: (local * local + t.zz * t.zz) / d2,
        lambda2,
        lambda3: lambda2 * t.q * t.q,
    })
}

/// Discord of the `(i, j)` marginal from the closed-form spectrum.
pub fn mixed_discord_closed(
    spec: &SuperpositionSpec,
    i: usize,
    j: usize,
    side: MeasurementSide,
) -> Result<CorrelationReport> {
    let l = mixed_lambdas(spec, i, j, side)?;
    Ok(CorrelationReport {
        discord: l.discord(),
        branch: l.branch(),
        k_eigenvalues: sorted_desc(l.as_array()),
        concurrence: pair_concurrence_closed(spec, i, j)?,
        measurement_side: side,
    })
}

/// Equal-overlap spectrum written directly in `p` and `n`:
/// `λ1 = [(p² + p^{2(n-2)})(1 + p²) + 4 pⁿ c] / (1 + pⁿ c)²`,
/// `λ2 = (1 - p²)² / (1 + pⁿ c)²`, `λ3 = p^{2(n-2)} λ2`.
pub fn equal_overlap_lambdas(n: usize, p: f64, parity: crate::Parity) -> Result<MixedLambdas> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("need at least 2 modes, got {n}")));
    }
    // validates the overlap and the null state
    SuperpositionSpec::equal(n, p, parity)?;
    let c = parity.sign();
    let pn = p.powi(n as i32);
    let q2 = p.powi(2 * (n as i32 - 2));
    let d2 = (1.0 + c * pn).powi(2);
    let lambda2 = (1.0 - p * p).powi(2) / d2;
    Ok(MixedLambdas {
        lambda1: ((p * p + q2) * (1.0 + p * p) + 4.0 * pn * c) / d2,
        lambda2,
        lambda3: q2 * lambda2,
    })
}

/// `(p² + 1)(1 + p^{n-2} cos mπ) - 2(1 - p²)`; non-negative exactly when
/// `λ1 >= λ2` for equal overlaps.
pub fn equal_overlap_branch_condition(n: usize, p: f64, parity: crate::Parity) -> f64 {
    let c = parity.sign();
    (p * p + 1.0) * (1.0 + p.powi(n as i32 - 2) * c) - 2.0 * (1.0 - p * p)
}

/// `K` spectrum and discord of the odd-parity `p -> 1` limit (the n-mode W state).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WLimit {
    pub n: usize,
    /// `((1 - 4/n)² + (1 - 2/n)², 4/n², 4/n²)`
    pub lambdas: MixedLambdas,
    pub discord: f64,
}

/// Odd-parity `p -> 1` limit. The discord is `2/n²` whenever `λ1 >= λ2`,
/// which holds for `n = 2` and `n >= 4`; for `n = 3` the minimum pair sum is
/// `λ1 + λ3` and the limit is `1/6`.
pub fn w_limit(n: usize) -> Result<WLimit> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("need at least 2 modes, got {n}")));
    }
    let nf = n as f64;
    let lambdas = MixedLambdas {
        lambda1: (1.0 - 4.0 / nf).powi(2) + (1.0 - 2.0 / nf).powi(2),
        lambda2: 4.0 / (nf * nf),
        lambda3: 4.0 / (nf * nf),
    };
    Ok(WLimit { n, lambdas, discord: discord_from_k_eigenvalues(lambdas.as_array()) })
}

pub fn w_limit_discord(n: usize) -> Result<f64> {
    Ok(w_limit(n)?.discord)
}

/// One-sided witness from the rank of the extended correlation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscordWitness {
    ZeroDiscordPossible,
    NonZeroDiscord,
}

pub const WITNESS_RANK_TOL: f64 = 1e-10;

/// Numerical rank of `T_{αβ} = Tr[ρ σα⊗σβ]`.
pub fn correlation_rank(bloch: &BlochForm) -> usize {
    linalg::singular_values(&bloch.extended())
        .iter()
        .filter(|&&s| s > WITNESS_RANK_TOL)
        .count()
}

/// Rank above 2 certifies non-zero discord; rank ≤ 2 is inconclusive.
pub fn zero_discord_witness(bloch: &BlochForm) -> DiscordWitness {
    if correlation_rank(bloch) > 2 {
        DiscordWitness::NonZeroDiscord
    } else {
        DiscordWitness::ZeroDiscordPossible
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::reduced_pair_density;
    use crate::Parity;
    use nalgebra::Vector3;

    const SIDES: [MeasurementSide; 2] = [MeasurementSide::FirstQubit, MeasurementSide::SecondQubit];

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn k_matrix_references() {
        let zero = BlochForm { x: Vector3::zeros(), y: Vector3::zeros(), r: Matrix3::zeros() };
        assert_eq!(k_matrix(&zero, MeasurementSide::FirstQubit), Matrix3::zeros());

        let bell = bloch_decompose(&TwoQubitDensity::bell_phi_plus());
        for side in SIDES {
            assert!((k_matrix(&bell, side) - Matrix3::identity()).amax() < 1e-15);
        }
        let e = linalg::eig_sym(&k_matrix(&bell, MeasurementSide::FirstQubit)).unwrap();
        for v in e.values {
            assert!(close(v, 1.0, 1e-15));
        }
    }

    #[test]
    fn k_spectrum_three_equal_modes() {
        let s = SuperpositionSpec::equal(3, 0.5, Parity::Even).unwrap();
        let rho = reduced_pair_density(&s, 0, 1).unwrap();
        let eig = linalg::eig_sym(&k_matrix(&bloch_decompose(&rho), MeasurementSide::FirstQubit)).unwrap();
        // λ2 = (1-p²)²/(1+p³)² = 4/9, λ3 = p² λ2 = 1/9; λ1 is the largest here
        assert!(close(eig.values[1], 4.0 / 9.0, 1e-14));
        assert!(close(eig.values[2], 1.0 / 9.0, 1e-14));
        assert!(close(eig.values[1], 0.444444, 1e-6) && close(eig.values[2], 0.111111, 1e-6));
    }

    #[test]
    fn numeric_discord_references() {
        for side in SIDES {
            let r = geometric_discord_numeric(&TwoQubitDensity::maximally_mixed(), side).unwrap();
            assert!(r.discord.abs() < 1e-16);
            let r = geometric_discord_numeric(&TwoQubitDensity::bell_phi_plus(), side).unwrap();
            assert!(close(r.discord, 0.5, 1e-15));
            assert_eq!(r.branch, Branch::NumericK);
        }
        let s = SuperpositionSpec::equal(3, 0.5, Parity::Even).unwrap();
        let rho = reduced_pair_density(&s, 0, 1).unwrap();
        let r = geometric_discord_numeric(&rho, MeasurementSide::FirstQubit).unwrap();
        assert!(close(r.discord, 5.0 / 36.0, 1e-14));
        assert!(close(r.discord, 0.138889, 1e-6));
    }

    #[test]
    fn pure_closed_references() {
        for n in 2..6 {
            for parity in [Parity::Even, Parity::Odd] {
                let s = SuperpositionSpec::equal(n, 0.0, parity).unwrap();
                assert!(close(geometric_discord_pure_closed(&s, 1).unwrap(), 0.5, 1e-15));
                assert!(close(concurrence_pure(&s, 1).unwrap(), 1.0, 1e-15));
            }
        }
        let s = SuperpositionSpec::new(vec![0.5, 0.5], Parity::Even).unwrap();
        assert!(close(concurrence_pure(&s, 1).unwrap(), 0.6, 1e-15));
        assert!(close(geometric_discord_pure_closed(&s, 1).unwrap(), 0.18, 1e-15));

        // first group fully overlapping: product state across the cut
        let s = SuperpositionSpec::new(vec![1.0, 1.0, 0.3], Parity::Even).unwrap();
        assert_eq!(geometric_discord_pure_closed(&s, 2).unwrap(), 0.0);
        assert_eq!(concurrence_pure(&s, 2).unwrap(), 0.0);
    }

    #[test]
    fn pure_split_concurrence_matches_closed_form() {
        let s = SuperpositionSpec::equal(3, 0.5, Parity::Even).unwrap();
        let split = pure_split(&s, 1).unwrap();
        assert!(close(split.concurrence(), concurrence_pure(&s, 1).unwrap(), 1e-15));
        let numeric = geometric_discord_numeric(&split.density(), MeasurementSide::FirstQubit).unwrap();
        assert!(close(numeric.discord, geometric_discord_pure_closed(&s, 1).unwrap(), 1e-14));
        let rep = pure_report(&s, 1).unwrap();
        for k in 0..3 {
            assert!(close(rep.k_eigenvalues[k], numeric.k_eigenvalues[k], 1e-14));
        }
    }

    #[test]
    fn wootters_references() {
        assert!(close(concurrence_mixed(&TwoQubitDensity::bell_phi_plus()).unwrap(), 1.0, 1e-7));
        assert!(concurrence_mixed(&TwoQubitDensity::maximally_mixed()).unwrap() < 1e-15);
        let roots = spin_flip_roots(&TwoQubitDensity::bell_phi_plus()).unwrap();
        assert!(close(roots[0], 1.0, 1e-14));
        assert!(roots[1] < 1e-7);

        let s = SuperpositionSpec::equal(4, 0.5, Parity::Even).unwrap();
        let closed = pair_concurrence_closed(&s, 0, 1).unwrap();
        assert!(close(closed, 0.25 * 0.75 / 1.0625, 1e-15));
        assert!(close(closed, 0.176471, 1e-6));
        let numeric = concurrence_mixed(&reduced_pair_density(&s, 0, 1).unwrap()).unwrap();
        assert!(close(numeric, closed, 1e-10));
    }

    #[test]
    fn three_mode_threshold_root() {
        let root = std::f64::consts::SQRT_2 - 1.0;
        assert!(equal_overlap_branch_condition(3, root, Parity::Even).abs() < 1e-15);
        assert!(close(root, 0.414214, 1e-6));
        let below = SuperpositionSpec::equal(3, root - 1e-6, Parity::Even).unwrap();
        let above = SuperpositionSpec::equal(3, root + 1e-6, Parity::Even).unwrap();
        let side = MeasurementSide::FirstQubit;
        assert_eq!(mixed_discord_closed(&below, 0, 1, side).unwrap().branch, Branch::MixedMinus);
        assert_eq!(mixed_discord_closed(&above, 0, 1, side).unwrap().branch, Branch::MixedPlus);
    }

    #[test]
    fn three_mode_closed_forms() {
        let p: f64 = 0.5;
        let odd = SuperpositionSpec::equal(3, p, Parity::Odd).unwrap();
        let expect = 0.25 * p * p * (1.0 - p).powi(2) * (2.0 + (1.0 + p).powi(2)) / (1.0 - p.powi(3)).powi(2);
        let r = mixed_discord_closed(&odd, 0, 1, MeasurementSide::FirstQubit).unwrap();
        assert!(close(r.discord, expect, 1e-15));
        assert!(close(r.discord, 0.086735, 1e-6));
        assert_eq!(r.branch, Branch::MixedMinus);
        let numeric = geometric_discord_numeric(&reduced_pair_density(&odd, 0, 1).unwrap(), MeasurementSide::FirstQubit)
            .unwrap();
        assert!(close(numeric.discord, expect, 1e-14));

        // even parity below the threshold
        let p: f64 = 0.3;
        let even = SuperpositionSpec::equal(3, p, Parity::Even).unwrap();
        let expect = 0.25 * p * p * (1.0 + p).powi(2) * (2.0 + (1.0 - p).powi(2)) / (1.0 + p.powi(3)).powi(2);
        let r = mixed_discord_closed(&even, 1, 2, MeasurementSide::SecondQubit).unwrap();
        assert!(close(r.discord, expect, 1e-15));
    }

    #[test]
    fn two_modes_mixed_equals_pure() {
        for parity in [Parity::Even, Parity::Odd] {
            for &(p1, p2) in &[(0.1, 0.7), (0.5, 0.5), (0.95, 0.2), (0.0, 0.4)] {
                let s = SuperpositionSpec::new(vec![p1, p2], parity).unwrap();
                let expect = 0.5 * (1.0 - p1 * p1) * (1.0 - p2 * p2) / (1.0 + p1 * p2 * parity.sign()).powi(2);
                for side in SIDES {
                    let l = mixed_lambdas(&s, 0, 1, side).unwrap();
                    assert!(close(0.25 * (l.lambda2 + l.lambda3), expect, 1e-14));
                    let r = mixed_discord_closed(&s, 0, 1, side).unwrap();
                    assert!(close(r.discord, expect, 1e-14));
                }
                assert!(close(geometric_discord_pure_closed(&s, 1).unwrap(), expect, 1e-14));
            }
        }
    }

    #[test]
    fn equal_overlap_forms_agree_with_general() {
        for n in 2..9 {
            for parity in [Parity::Even, Parity::Odd] {
                for k in 0..20 {
                    let p = 0.05 * k as f64;
                    let s = SuperpositionSpec::equal(n, p, parity).unwrap();
                    let a = mixed_lambdas(&s, 0, n - 1, MeasurementSide::FirstQubit).unwrap();
                    let b = equal_overlap_lambdas(n, p, parity).unwrap();
                    for (x, y) in a.as_array().iter().zip(b.as_array()) {
                        assert!(close(*x, y, 1e-13), "n={n} p={p} {parity}");
                    }
                    if (a.lambda1 - a.lambda2).abs() > 1e-12 {
                        let cond = equal_overlap_branch_condition(n, p, parity);
                        assert_eq!(cond >= 0.0, a.lambda1 >= a.lambda2, "n={n} p={p} {parity}");
                    }
                }
            }
        }
    }

    #[test]
    fn w_limits() {
        assert!(close(w_limit_discord(2).unwrap(), 0.5, 1e-15));
        for n in 4..40 {
            let nf = n as f64;
            assert!(close(w_limit_discord(n).unwrap(), 2.0 / (nf * nf), 1e-15));
        }
        // n = 3: λ1 = 2/9 < λ2 = 4/9, so the minimum pair is λ1 + λ3
        let w3 = w_limit(3).unwrap();
        assert!(close(w3.lambdas.lambda1, 2.0 / 9.0, 1e-15));
        assert!(close(w3.discord, 1.0 / 6.0, 1e-15));
        let mut prev = f64::INFINITY;
        for n in 2..60 {
            let d = w_limit_discord(n).unwrap();
            assert!(d < prev);
            prev = d;
        }
        assert!(w_limit(1).is_err());
    }

    #[test]
    fn w_limit_matches_closed_form_near_one() {
        for n in 2..11 {
            let s = SuperpositionSpec::equal(n, 1.0 - 1e-7, Parity::Odd).unwrap();
            let l = mixed_lambdas(&s, 0, 1, MeasurementSide::FirstQubit).unwrap();
            let w = w_limit(n).unwrap();
            for (a, b) in l.as_array().iter().zip(w.lambdas.as_array()) {
                assert!(close(*a, b, 1e-5), "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn witness_references() {
        let mixed = bloch_decompose(&TwoQubitDensity::maximally_mixed());
        assert_eq!(zero_discord_witness(&mixed), DiscordWitness::ZeroDiscordPossible);
        let bell = bloch_decompose(&TwoQubitDensity::bell_phi_plus());
        assert_eq!(correlation_rank(&bell), 4);
        assert_eq!(zero_discord_witness(&bell), DiscordWitness::NonZeroDiscord);

        for n in 3..7 {
            for parity in [Parity::Even, Parity::Odd] {
                let s = SuperpositionSpec::equal(n, 0.0, parity).unwrap();
                let rho = reduced_pair_density(&s, 0, 1).unwrap();
                assert_eq!(zero_discord_witness(&bloch_decompose(&rho)), DiscordWitness::ZeroDiscordPossible);
                let d = geometric_discord_numeric(&rho, MeasurementSide::FirstQubit).unwrap().discord;
                assert!(d < 1e-15);
            }
        }

        let s = SuperpositionSpec::equal(4, 0.4, Parity::Even).unwrap();
        let rho = reduced_pair_density(&s, 0, 1).unwrap();
        assert_eq!(zero_discord_witness(&bloch_decompose(&rho)), DiscordWitness::NonZeroDiscord);
    }
}
