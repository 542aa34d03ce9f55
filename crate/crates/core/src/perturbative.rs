//! Weak-coupling picture of the dimer at two excitations.
//!
//! With `g = 0` the Hamiltonian splits into a cavity part (oscillators plus
//! hopping) and an atomic part, both diagonal in closed form. Their ground
//! level is either the atomic insulator `|e0⟩⊗|e0⟩` (`A < −Δ`) or the
//! bonding photon pair `ψ'_c1` (`A > −Δ`). On the line `A = −Δ` four levels
//! cross and the atom-field coupling, projected onto that quartet, selects
//! a unique ground state at `2ω_c − 2A − √3 g`.

use crate::eigen::{ground_state, SolverConfig};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, ModelParams};
use crate::hilbert::{DimerState, Sector};
use crate::scalar::{axpy, dot, Scalar};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    AtomicInsulator,
    PhotonicSuperfluid,
    DegenerateLine,
}

/// Uncoupled (`g = 0`) dimer levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelKind {
    /// `2ω_c − 2A`
    PhotonBonding,
    /// `2ω_c`
    PhotonNonbonding,
    /// `2ω_c + 2A`
    PhotonAntibonding,
    /// `2ω_c + 2Δ`
    Atomic,
    /// `2ω_c − A + Δ`, twofold
    MixedBonding,
    /// `2ω_c + A + Δ`, twofold
    MixedAntibonding,
}

impl LevelKind {
    pub fn multiplicity(self) -> usize {
        match self {
            LevelKind::MixedBonding | LevelKind::MixedAntibonding => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level<T> {
    pub energy: T,
    pub kind: LevelKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallGSpectrum<T> {
    /// All eight levels (multiplicity expanded), ascending.
    pub levels: Vec<Level<T>>,
    pub regime: Regime,
    pub ground_energy: T,
    /// Canonical dimer basis.
    pub ground_vector: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateBlockResult<T> {
    /// `H` projected on `(ψ'_c1, ψ_a, ψ'_i1, ψ'_i2)`.
    pub block: [[T; 4]; 4],
    pub ground_energy: T,
    /// Coefficients on the four block states.
    pub ground_block_vector: [T; 4],
    /// Canonical dimer basis.
    pub ground_vector_sector: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateProbability<T> {
    pub state: &'static str,
    pub exact: T,
    pub approx: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport<T> {
    /// Per named basis state, in `DimerState::ALL` order.
    pub probabilities: Vec<StateProbability<T>>,
    pub max_abs_deviation: T,
    pub overlap: T,
    pub exact_energy: T,
    pub closed_form_energy: T,
    pub exact_degenerate: bool,
}

/// Tolerance-based test for `A = −Δ`.
pub fn on_degenerate_line<T: Scalar>(delta: T, hop: T, g: T) -> bool {
    let scale = hop.max(delta.abs()).max(g);
    (hop + delta).abs() <= T::lit(1e-9) * scale
}

fn named<T: Scalar>(amps: &[(DimerState, f64)]) -> Vec<T> {
    let mut v = vec![T::zero(); 8];
    for &(s, a) in amps {
        v[s.index()] += T::lit(a);
    }
    v
}

/// `ψ'_c1 = ψ_c1/√2 − (ψ_c2 + ψ_c3)/2`
pub fn photon_bonding_pair<T: Scalar>() -> Vec<T> {
    named(&[
        (DimerState::C1, std::f64::consts::FRAC_1_SQRT_2),
        (DimerState::C2, -0.5),
        (DimerState::C3, -0.5),
    ])
}

/// `ψ'_i1 = (ψ_i2 − ψ_i4)/√2`
pub fn mixed_bonding_1<T: Scalar>() -> Vec<T> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    named(&[(DimerState::I2, r), (DimerState::I4, -r)])
}

/// `ψ'_i2 = (ψ_i1 − ψ_i3)/√2`
pub fn mixed_bonding_2<T: Scalar>() -> Vec<T> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    named(&[(DimerState::I1, r), (DimerState::I3, -r)])
}

pub fn atomic_pair<T: Scalar>() -> Vec<T> {
    named(&[(DimerState::A, 1.0)])
}

/// Closed-form ground state on the degenerate line:
/// `ψ'_c1/√3 + ψ_a/√6 + (ψ'_i1 + ψ'_i2)/2`, independent of `g`.
pub fn degenerate_line_state<T: Scalar>() -> Vec<T> {
    let weights = [1.0 / 3f64.sqrt(), 1.0 / 6f64.sqrt(), 0.5, 0.5];
    let mut v = vec![T::zero(); 8];
    for (w, b) in weights.iter().zip(block_states::<T>()) {
        axpy(T::lit(*w), &b, &mut v);
    }
    v
}

fn block_states<T: Scalar>() -> [Vec<T>; 4] {
    [
        photon_bonding_pair(),
        atomic_pair(),
        mixed_bonding_1(),
        mixed_bonding_2(),
    ]
}

/// Levels, regime and ground vector with the atom-field coupling switched
/// off. `params.g` only enters the degenerate-line tolerance.
pub fn small_g_spectrum<T: Scalar>(params: &ModelParams<T>) -> Result<SmallGSpectrum<T>> {
    if params.hop < T::zero() {
        return Err(Error::InvalidParams("hopping must be >= 0".into()));
    }
    let two = T::lit(2.0);
    let base = two * params.omega_c;
    let (a, d) = (params.hop, params.delta);
    let mut levels = vec![
        Level {
            energy: base - two * a,
            kind: LevelKind::PhotonBonding,
        },
        Level {
            energy: base,
            kind: LevelKind::PhotonNonbonding,
        },
        Level {
            energy: base + two * a,
            kind: LevelKind::PhotonAntibonding,
        },
        Level {
            energy: base + two * d,
            kind: LevelKind::Atomic,
        },
        Level {
            energy: base - a + d,
            kind: LevelKind::MixedBonding,
        },
        Level {
            energy: base - a + d,
            kind: LevelKind::MixedBonding,
        },
        Level {
            energy: base + a + d,
            kind: LevelKind::MixedAntibonding,
        },
        Level {
            energy: base + a + d,
            kind: LevelKind::MixedAntibonding,
        },
    ];
    levels.sort_by(|x, y| x.energy.partial_cmp(&y.energy).expect("finite levels"));

    let (regime, ground_energy, ground_vector) = if on_degenerate_line(d, a, params.g) {
        (
            Regime::DegenerateLine,
            base - two * a,
            degenerate_line_state(),
        )
    } else if a < -d {
        (Regime::AtomicInsulator, base + two * d, atomic_pair())
    } else {
        (
            Regime::PhotonicSuperfluid,
            base - two * a,
            photon_bonding_pair(),
        )
    };
    Ok(SmallGSpectrum {
        levels,
        regime,
        ground_energy,
        ground_vector,
    })
}

/// Projects the full Hamiltonian at `Δ = −A` onto the degenerate quartet
/// and diagonalizes the projection in closed form.
///
/// The quartet splits into `{ψ'_c1, ψ_a}` and `{ψ'_i1, ψ'_i2}` with the
/// coupling only running between the two pairs, so the block is
/// `E₀·1 + [[0, C], [Cᵀ, 0]]` and its lowest eigenvalue is `E₀ − σ_max(C)`.
pub fn degenerate_block<T: Scalar>(params: &ModelParams<T>) -> Result<DegenerateBlockResult<T>> {
    let sector = Sector::dimer();
    let mut on_line = params.gauge_reduced();
    on_line.delta = -params.hop;
    let h = build_hamiltonian(&sector, &on_line)?;
    let basis = block_states::<T>();
    let h_basis: Vec<Vec<T>> = basis.iter().map(|b| h.apply(b)).collect::<Result<_>>()?;

    let offset = T::lit(2.0) * params.omega_c;
    let mut block = [[T::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            block[i][j] = dot(&basis[i], &h_basis[j]);
        }
        block[i][i] += offset;
    }

    let e0 = (0..4).fold(T::zero(), |acc, i| acc + block[i][i]) / T::lit(4.0);
    let c = [[block[0][2], block[0][3]], [block[1][2], block[1][3]]];
    // CᵀC = [[p, q], [q, r]]
    let p = c[0][0] * c[0][0] + c[1][0] * c[1][0];
    let q = c[0][0] * c[0][1] + c[1][0] * c[1][1];
    let r = c[0][1] * c[0][1] + c[1][1] * c[1][1];
    let half = T::lit(0.5);
    let lambda = half * (p + r) + (half * half * (p - r) * (p - r) + q * q).sqrt();
    let sigma = lambda.sqrt();

    let ground_block_vector = if sigma == T::zero() {
        [T::one(), T::zero(), T::zero(), T::zero()]
    } else {
        let (v0, v1) = if q != T::zero() {
            (q, lambda - p)
        } else if p >= r {
            (T::one(), T::zero())
        } else {
            (T::zero(), T::one())
        };
        let nv = (v0 * v0 + v1 * v1).sqrt();
        let (v0, v1) = (v0 / nv, v1 / nv);
        let u0 = (c[0][0] * v0 + c[0][1] * v1) / sigma;
        let u1 = (c[1][0] * v0 + c[1][1] * v1) / sigma;
        let s = T::lit(std::f64::consts::FRAC_1_SQRT_2);
        let mut x = [u0 * s, u1 * s, -v0 * s, -v1 * s];
        crate::scalar::canonicalize_sign(&mut x);
        x
    };

    let mut ground_vector_sector = vec![T::zero(); 8];
    for (coef, b) in ground_block_vector.iter().zip(&basis) {
        axpy(*coef, b, &mut ground_vector_sector);
    }
    Ok(DegenerateBlockResult {
        block,
        ground_energy: e0 - sigma,
        ground_block_vector,
        ground_vector_sector,
    })
}

/// Exact ground state at `Δ = −A` against the closed-form quartet ground
/// state, probability by probability in the named basis.
pub fn compare_to_exact<T: Scalar>(
    params: &ModelParams<T>,
    cfg: &SolverConfig<T>,
) -> Result<ComparisonReport<T>> {
    let sector = Sector::dimer();
    let mut on_line = params.gauge_reduced();
    on_line.delta = -params.hop;
    let h = build_hamiltonian(&sector, &on_line)?;
    let exact = ground_state(&h, cfg)?;
    let block = degenerate_block(params)?;
    let approx = &block.ground_vector_sector;

    let mut probabilities = Vec::with_capacity(8);
    let mut max_dev = T::zero();
    for s in DimerState::ALL {
        let k = s.index();
        let pe = exact.vector[k] * exact.vector[k];
        let pa = approx[k] * approx[k];
        max_dev = max_dev.max((pe - pa).abs());
        probabilities.push(StateProbability {
            state: s.name(),
            exact: pe,
            approx: pa,
        });
    }
    let offset = T::lit(sector.excitations() as f64) * params.omega_c;
    Ok(ComparisonReport {
        probabilities,
        max_abs_deviation: max_dev,
        overlap: dot(&exact.vector, approx).abs(),
        exact_energy: exact.energy + offset,
        closed_form_energy: block.ground_energy,
        exact_degenerate: exact.degenerate,
    })
}
