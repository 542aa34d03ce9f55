//! Single-cavity dressed states and the decomposition of dimer states onto
//! products of them.
//!
//! For `n ≥ 1` the pair `|n∓⟩` lives on `{|e, n−1⟩, |g, n⟩}`:
//!
//! ```text
//! |n−⟩ = sin(θ_n/2) |e, n−1⟩ − cos(θ_n/2) |g, n⟩
//! |n+⟩ = cos(θ_n/2) |e, n−1⟩ + sin(θ_n/2) |g, n⟩
//! E_n∓ = n ω_c + Δ/2 ∓ ½ √(Δ² + 4 n g²)
//! ```
//!
//! with `θ_n = atan2(2 g √n, Δ) ∈ [0, π]`. The vacuum `|0⟩ = |g, 0⟩` has
//! energy zero.

use crate::error::{Error, Result};
use crate::hilbert::Sector;
use crate::scalar::{norm, Scalar};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Zero,
    Minus,
    Plus,
}

/// `(n, branch)`; `Zero` only with `n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolaritonLabel {
    pub n: u32,
    pub branch: Branch,
}

impl PolaritonLabel {
    pub const VACUUM: PolaritonLabel = PolaritonLabel {
        n: 0,
        branch: Branch::Zero,
    };

    pub fn minus(n: u32) -> Self {
        Self {
            n,
            branch: Branch::Minus,
        }
    }

    pub fn plus(n: u32) -> Self {
        Self {
            n,
            branch: Branch::Plus,
        }
    }

    fn check(self) -> Result<()> {
        match (self.n, self.branch) {
            (0, Branch::Zero) => Ok(()),
            (0, _) => Err(Error::InvalidPolariton(format!(
                "{self}: n = 0 has no ± branch"
            ))),
            (_, Branch::Zero) => Err(Error::InvalidPolariton(format!(
                "{self}: zero branch requires n = 0"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PolaritonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.branch {
            Branch::Zero => write!(f, "0"),
            Branch::Minus => write!(f, "{}-", self.n),
            Branch::Plus => write!(f, "{}+", self.n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonState<T> {
    pub label: PolaritonLabel,
    /// Coefficient on `|e, n−1⟩` (zero for the vacuum).
    pub excited: T,
    /// Coefficient on `|g, n⟩`.
    pub ground: T,
    pub energy: T,
}

/// Mixing angle `θ_n = atan2(2g√n, Δ)`.
pub fn mixing_angle<T: Scalar>(n: u32, delta: T, g: T) -> T {
    (T::lit(2.0) * g * T::lit(n as f64).sqrt()).atan2(delta)
}

/// `E_n∓`; `n = 0` gives zero.
pub fn polariton_energy<T: Scalar>(label: PolaritonLabel, omega_c: T, delta: T, g: T) -> T {
    let half = T::lit(0.5);
    let n = T::lit(label.n as f64);
    let root = (delta * delta + T::lit(4.0) * n * g * g).sqrt();
    match label.branch {
        Branch::Zero => T::zero(),
        Branch::Minus => n * omega_c + half * delta - half * root,
        Branch::Plus => n * omega_c + half * delta + half * root,
    }
}

pub fn polariton<T: Scalar>(
    label: PolaritonLabel,
    omega_c: T,
    delta: T,
    g: T,
) -> Result<PolaritonState<T>> {
    label.check()?;
    let (excited, ground) = match label.branch {
        Branch::Zero => (T::zero(), T::one()),
        Branch::Minus | Branch::Plus => {
            let half = mixing_angle(label.n, delta, g) * T::lit(0.5);
            let (s, c) = half.sin_cos();
            if label.branch == Branch::Minus {
                (s, -c)
            } else {
                (c, s)
            }
        }
    };
    Ok(PolaritonState {
        label,
        excited,
        ground,
        energy: polariton_energy(label, omega_c, delta, g),
    })
}

/// `|l₀⟩ ⊗ |l₁⟩ ⊗ ...` expanded in the canonical basis of `sector`.
pub fn product_polariton_vector<T: Scalar>(
    sector: &Sector,
    labels: &[PolaritonLabel],
    delta: T,
    g: T,
) -> Result<Vec<T>> {
    if labels.len() != sector.sites() {
        return Err(Error::DimensionMismatch {
            expected: sector.sites(),
            got: labels.len(),
        });
    }
    let total: u32 = labels.iter().map(|l| l.n).sum();
    if total != sector.excitations() {
        return Err(Error::ExcitationMismatch {
            labels: total,
            sector: sector.excitations(),
        });
    }
    // Per site: list of (photons, atom, amplitude) components.
    let mut per_site = Vec::with_capacity(labels.len());
    for &label in labels {
        let p = polariton(label, T::zero(), delta, g)?;
        let mut comps = vec![(label.n, 0u8, p.ground)];
        if label.n > 0 {
            comps.push((label.n - 1, 1u8, p.excited));
        }
        per_site.push(comps);
    }

    let mut out = vec![T::zero(); sector.dim()];
    let mut photons = vec![0u32; labels.len()];
    let mut atoms = vec![0u8; labels.len()];
    let mut choice = vec![0usize; labels.len()];
    loop {
        let mut amp = T::one();
        for (site, &c) in choice.iter().enumerate() {
            let (p, a, x) = per_site[site][c];
            photons[site] = p;
            atoms[site] = a;
            amp *= x;
        }
        let k = sector
            .lookup(&photons, &atoms)
            .expect("product components conserve excitations");
        out[k] += amp;

        let mut site = 0;
        loop {
            if site == choice.len() {
                return Ok(out);
            }
            choice[site] += 1;
            if choice[site] < per_site[site].len() {
                break;
            }
            choice[site] = 0;
            site += 1;
        }
    }
}

/// The eight dimer product states in ascending-energy subspace order,
/// together with the index of their subspace.
pub const DIMER_PRODUCTS: [(PolaritonLabel, PolaritonLabel, usize); 8] = {
    const M1: PolaritonLabel = PolaritonLabel {
        n: 1,
        branch: Branch::Minus,
    };
    const P1: PolaritonLabel = PolaritonLabel {
        n: 1,
        branch: Branch::Plus,
    };
    const M2: PolaritonLabel = PolaritonLabel {
        n: 2,
        branch: Branch::Minus,
    };
    const P2: PolaritonLabel = PolaritonLabel {
        n: 2,
        branch: Branch::Plus,
    };
    const Z: PolaritonLabel = PolaritonLabel::VACUUM;
    [
        (M1, M1, 0),
        (M2, Z, 1),
        (Z, M2, 1),
        (M1, P1, 2),
        (P1, M1, 2),
        (P2, Z, 3),
        (Z, P2, 3),
        (P1, P1, 4),
    ]
};

/// Excitation character of a basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Character {
    Photonic,
    Atomic,
    Mixed,
}

pub fn character(state: &crate::hilbert::BasisState) -> Character {
    let any_atom = state.atoms.contains(&1);
    let any_photon = state.photons.iter().any(|&p| p > 0);
    match (any_photon, any_atom) {
        (_, false) => Character::Photonic,
        (false, true) => Character::Atomic,
        (true, true) => Character::Mixed,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterProbs<T> {
    pub photonic: T,
    pub atomic: T,
    pub mixed: T,
}

/// Probability of a dimer state over product polaritons and excitation
/// character.
#[derive(Debug, Clone, PartialEq)]
pub struct PolaritonDecomposition<T> {
    /// Five degenerate subspaces in ascending energy:
    /// `{1−1−}`, `{2−0, 0 2−}`, `{1−1+, 1+1−}`, `{2+0, 0 2+}`, `{1+1+}`.
    pub subspace_probs: [T; 5],
    /// Same order as [`DIMER_PRODUCTS`].
    pub product_probs: [T; 8],
    pub character_probs: CharacterProbs<T>,
}

impl<T: Scalar> PolaritonDecomposition<T> {
    pub fn product_names() -> [String; 8] {
        DIMER_PRODUCTS.map(|(a, b, _)| format!("{a},{b}"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let products: serde_json::Map<String, serde_json::Value> = Self::product_names()
            .into_iter()
            .zip(self.product_probs.iter())
            .map(|(k, v)| (k, serde_json::json!(v.to_f64_lossy())))
            .collect();
        serde_json::json!({
            "subspace_probs": self.subspace_probs.iter().map(|v| v.to_f64_lossy()).collect::<Vec<_>>(),
            "product_probs": products,
            "character_probs": {
                "photonic": self.character_probs.photonic.to_f64_lossy(),
                "atomic": self.character_probs.atomic.to_f64_lossy(),
                "mixed": self.character_probs.mixed.to_f64_lossy(),
            },
        })
    }
}

pub(crate) fn check_unit<T: Scalar>(state: &[T]) -> Result<()> {
    let nrm = norm(state);
    if (nrm - T::one()).abs().to_f64_lossy() > 1e-8 {
        return Err(Error::NotNormalized {
            norm: nrm.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Decomposes a unit vector of the dimer two-excitation sector.
pub fn decompose<T: Scalar>(
    state: &[T],
    sector: &Sector,
    delta: T,
    g: T,
) -> Result<PolaritonDecomposition<T>> {
    if !sector.is_dimer() {
        return Err(Error::UnsupportedSector {
            sites: sector.sites(),
            excitations: sector.excitations(),
            reason: "polariton decomposition is defined for two sites at two excitations",
        });
    }
    if state.len() != sector.dim() {
        return Err(Error::DimensionMismatch {
            expected: sector.dim(),
            got: state.len(),
        });
    }
    check_unit(state)?;

    let mut product_probs = [T::zero(); 8];
    let mut subspace_probs = [T::zero(); 5];
    for (k, &(a, b, sub)) in DIMER_PRODUCTS.iter().enumerate() {
        let v = product_polariton_vector(sector, &[a, b], delta, g)?;
        let amp = crate::scalar::dot(&v, state);
        product_probs[k] = amp * amp;
        subspace_probs[sub] += amp * amp;
    }

    let mut ch = CharacterProbs {
        photonic: T::zero(),
        atomic: T::zero(),
        mixed: T::zero(),
    };
    for (basis, &x) in sector.states().iter().zip(state) {
        let p = x * x;
        match character(basis) {
            Character::Photonic => ch.photonic += p,
            Character::Atomic => ch.atomic += p,
            Character::Mixed => ch.mixed += p,
        }
    }
    Ok(PolaritonDecomposition {
        subspace_probs,
        product_probs,
        character_probs: ch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_hamiltonian, ModelParams};
    use crate::hilbert::DimerState;
    use crate::scalar::dot;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    #[test]
    fn resonant_lower_polariton() {
        let p = polariton::<f64>(PolaritonLabel::minus(1), 3.0, 0.0, 0.5).unwrap();
        assert!((mixing_angle(1, 0.0, 0.5) - FRAC_PI_2).abs() < 1e-15);
        assert!((p.excited - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((p.ground + FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((p.energy - (3.0 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn far_detuned_limits() {
        let photonic = polariton::<f64>(PolaritonLabel::minus(1), 0.0, 1e6, 1.0).unwrap();
        assert!(photonic.excited.abs() < 1e-5);
        assert!((photonic.ground + 1.0).abs() < 1e-10);
        let atomic = polariton::<f64>(PolaritonLabel::minus(1), 0.0, -1e6, 1.0).unwrap();
        assert!((atomic.excited - 1.0).abs() < 1e-10);
        assert!(atomic.ground.abs() < 1e-5);
    }

    #[test]
    fn invalid_labels() {
        assert!(polariton::<f64>(
            PolaritonLabel {
                n: 0,
                branch: Branch::Minus
            },
            0.0,
            0.0,
            1.0
        )
        .is_err());
        assert!(polariton::<f64>(
            PolaritonLabel {
                n: 2,
                branch: Branch::Zero
            },
            0.0,
            0.0,
            1.0
        )
        .is_err());
    }

    #[test]
    fn mixing_angle_monotone_decreasing() {
        let mut prev = std::f64::consts::PI;
        for k in 0..=400 {
            let d = -50.0 + 0.25 * k as f64;
            let th = mixing_angle(1, d, 1.0);
            assert!(th < prev && th > 0.0);
            prev = th;
        }
        assert!(mixing_angle(1, -1e9, 1.0) > std::f64::consts::PI - 1e-6);
        assert!(mixing_angle(1, 1e9, 1.0) < 1e-6);
    }

    #[test]
    fn minus_below_plus() {
        for d in [-10.0, -1.0, 0.0, 0.5, 20.0] {
            for n in 1..4 {
                let m = polariton_energy(PolaritonLabel::minus(n), 1.0, d, 0.3);
                let p = polariton_energy(PolaritonLabel::plus(n), 1.0, d, 0.3);
                assert!(m < p);
            }
        }
    }

    #[test]
    fn vacuum_product_in_empty_sector() {
        let s = Sector::new(2, 0).unwrap();
        let v =
            product_polariton_vector::<f64>(&s, &[PolaritonLabel::VACUUM; 2], 0.3, 1.0).unwrap();
        assert_eq!(v, vec![1.0]);
    }

    #[test]
    fn excitation_mismatch() {
        let s = Sector::dimer();
        let r = product_polariton_vector::<f64>(
            &s,
            &[PolaritonLabel::minus(1), PolaritonLabel::VACUUM],
            0.0,
            1.0,
        );
        assert!(matches!(
            r,
            Err(Error::ExcitationMismatch {
                labels: 1,
                sector: 2
            })
        ));
    }

    #[test]
    fn products_diagonalize_uncoupled_dimer() {
        let s = Sector::dimer();
        for &(d, g) in &[(0.0, 1.0), (-3.0, 0.7), (5.0, 2.0)] {
            let wc = 4.0;
            let h = build_hamiltonian(&s, &ModelParams::<f64>::new(wc, d, g, 0.0)).unwrap();
            let hn = h.frobenius_norm();
            for (a, b, _) in DIMER_PRODUCTS {
                let v = product_polariton_vector::<f64>(&s, &[a, b], d, g).unwrap();
                let e = polariton_energy(a, wc, d, g) + polariton_energy(b, wc, d, g);
                let hv = h.apply(&v).unwrap();
                let res: f64 = hv
                    .iter()
                    .zip(&v)
                    .map(|(x, y)| (x - e * y).powi(2))
                    .sum::<f64>()
                    .sqrt();
                assert!(res < 1e-10 * hn, "{a},{b}");
            }
        }
    }

    #[test]
    fn subspace_order_independent_of_detuning() {
        for k in 0..200 {
            let d = -40.0 + 0.4 * k as f64;
            let mut energies = [0.0; 5];
            for (a, b, sub) in DIMER_PRODUCTS {
                energies[sub] = polariton_energy(a, 1.0, d, 1.0) + polariton_energy(b, 1.0, d, 1.0);
            }
            assert!(
                energies.windows(2).all(|w| w[0] <= w[1]),
                "Δ={d}: {energies:?}"
            );
        }
    }

    #[test]
    fn decomposition_of_named_state() {
        let s = Sector::dimer();
        let mut v = vec![0.0f64; 8];
        v[DimerState::A.index()] = 1.0;
        let dec = decompose(&v, &s, 0.0, 1.0).unwrap();
        assert!((dec.character_probs.atomic - 1.0).abs() < 1e-15);
        let total: f64 = dec.product_probs.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decompose_rejects_other_sectors() {
        let s = Sector::new(3, 2).unwrap();
        let v = vec![1.0 / 18f64.sqrt(); 18];
        assert!(matches!(
            decompose(&v, &s, 0.0, 1.0),
            Err(Error::UnsupportedSector { .. })
        ));
    }

    #[test]
    fn decompose_rejects_unnormalized() {
        let s = Sector::dimer();
        let v = vec![1.0; 8];
        assert!(matches!(
            decompose(&v, &s, 0.0, 1.0),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn product_overlap_zero() {
        let s = Sector::dimer();
        let a =
            product_polariton_vector::<f64>(&s, &[PolaritonLabel::minus(1); 2], 0.4, 1.0).unwrap();
        let b = product_polariton_vector::<f64>(
            &s,
            &[PolaritonLabel::minus(1), PolaritonLabel::plus(1)],
            0.4,
            1.0,
        )
        .unwrap();
        assert!(dot(&a, &b).abs() < 1e-15);
    }
}
