//! Number-variance order parameters of a state.
//!
//! All operators involved are diagonal in the canonical basis, so every
//! moment is a probability-weighted sum over basis states.

use crate::error::{Error, Result};
use crate::hilbert::Sector;
use crate::polariton::check_unit;
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceReport<T> {
    /// `⟨N₁⟩` with `N₁ = a†₁a₁ + |e₁⟩⟨e₁|`
    pub mean_n1: T,
    /// `ΔN₁ = ⟨N₁²⟩ − ⟨N₁⟩²`
    pub var_n1: T,
    pub mean_na1: T,
    /// `ΔN_A1` for the projector `|e₁⟩⟨e₁|`
    pub var_na1: T,
    /// `ΔN₁ · ΔN_A1`
    pub product: T,
    /// Photon-number variance of cavity 1. Not an order parameter; reported
    /// for diagnostics only.
    pub var_photon1: T,
    pub degenerate_ground: bool,
}

/// Variances for cavity 1 (site 0).
pub fn variances<T: Scalar>(state: &[T], sector: &Sector) -> Result<VarianceReport<T>> {
    variances_at(state, sector, 0)
}

/// Variances for an arbitrary site.
pub fn variances_at<T: Scalar>(
    state: &[T],
    sector: &Sector,
    site: usize,
) -> Result<VarianceReport<T>> {
    if site >= sector.sites() {
        return Err(Error::SiteOutOfRange {
            site,
            sites: sector.sites(),
        });
    }
    if state.len() != sector.dim() {
        return Err(Error::DimensionMismatch {
            expected: sector.dim(),
            got: state.len(),
        });
    }
    check_unit(state)?;

    let probs: Vec<T> = state.iter().map(|&x| x * x).collect();
    let total: T = probs.iter().fold(T::zero(), |a, &p| a + p);
    let weighted = |f: &dyn Fn(usize) -> T| -> T {
        probs
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (k, &p)| acc + p * f(k))
            / total
    };
    let n_site = |k: usize| T::lit(sector.state(k).site_excitations(site) as f64);
    let n_photon = |k: usize| T::lit(sector.state(k).photons[site] as f64);
    let n_atom = |k: usize| T::lit(sector.state(k).atoms[site] as f64);

    let mean_n1 = weighted(&n_site);
    let var_n1 = weighted(&|k| (n_site(k) - mean_n1).powi(2));
    let mean_ph = weighted(&n_photon);
    let var_photon1 = weighted(&|k| (n_photon(k) - mean_ph).powi(2));
    // Projector: ⟨P²⟩ = ⟨P⟩, so the variance is p(1 − p), which cannot
    // round above 1/4.
    let mean_na1 = weighted(&n_atom);
    let var_na1 = mean_na1 * (T::one() - mean_na1);

    Ok(VarianceReport {
        mean_n1,
        var_n1,
        mean_na1,
        var_na1,
        product: var_n1 * var_na1,
        var_photon1,
        degenerate_ground: false,
    })
}

impl<T> VarianceReport<T> {
    pub fn with_degenerate(mut self, degenerate: bool) -> Self {
        self.degenerate_ground = degenerate;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_hamiltonian, build_number_operator, ModelParams};
    use crate::hilbert::DimerState;
    use crate::polariton::{polariton, product_polariton_vector, PolaritonLabel};
    use crate::scalar::dot;

    fn named(amps: &[(DimerState, f64)]) -> Vec<f64> {
        let mut v = vec![0.0; 8];
        for &(s, a) in amps {
            v[s.index()] += a;
        }
        v
    }

    #[test]
    fn atomic_insulator_has_no_variance() {
        let r = variances(&named(&[(DimerState::A, 1.0)]), &Sector::dimer()).unwrap();
        assert_eq!(r.var_n1, 0.0);
        assert_eq!(r.var_na1, 0.0);
        assert_eq!(r.mean_na1, 1.0);
    }

    #[test]
    fn photonic_superfluid_half_variance() {
        let v = named(&[
            (DimerState::C1, std::f64::consts::FRAC_1_SQRT_2),
            (DimerState::C2, -0.5),
            (DimerState::C3, -0.5),
        ]);
        let r = variances(&v, &Sector::dimer()).unwrap();
        assert!((r.var_n1 - 0.5).abs() < 1e-15);
        assert_eq!(r.var_na1, 0.0);
        assert!((r.var_photon1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn resonant_polariton_pair() {
        let s = Sector::dimer();
        let v =
            product_polariton_vector::<f64>(&s, &[PolaritonLabel::minus(1); 2], 0.0, 1.0).unwrap();
        let r = variances(&v, &s).unwrap();
        assert!(r.var_n1.abs() < 1e-15);
        assert!((r.var_na1 - 0.25).abs() < 1e-15);
    }

    #[test]
    fn degenerate_line_closed_form_state() {
        // amplitudes of the degenerate-line ground state in the named basis
        let a = 1.0 / 6f64.sqrt();
        let b = -1.0 / (2.0 * 3f64.sqrt());
        let c = 1.0 / (2.0 * 2f64.sqrt());
        let v = named(&[
            (DimerState::C1, a),
            (DimerState::C2, b),
            (DimerState::C3, b),
            (DimerState::A, a),
            (DimerState::I1, c),
            (DimerState::I2, c),
            (DimerState::I3, -c),
            (DimerState::I4, -c),
        ]);
        let r = variances(&v, &Sector::dimer()).unwrap();
        assert!((r.var_n1 - 5.0 / 12.0).abs() < 1e-14);
        assert!((r.var_na1 - 35.0 / 144.0).abs() < 1e-14);
        assert!((r.product - 175.0 / 1728.0).abs() < 1e-14);
    }

    #[test]
    fn single_site_projector_variance() {
        let s = Sector::dimer();
        for d in [-4.0, -0.5, 0.0, 1.3, 9.0] {
            let v = product_polariton_vector::<f64>(&s, &[PolaritonLabel::minus(1); 2], d, 1.0)
                .unwrap();
            let p = polariton::<f64>(PolaritonLabel::minus(1), 0.0, d, 1.0).unwrap();
            let sin2 = p.excited * p.excited;
            let r = variances(&v, &s).unwrap();
            assert!((r.var_na1 - sin2 * (1.0 - sin2)).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_moments_match_operator_moments() {
        let s = Sector::dimer();
        let h = build_hamiltonian(&s, &ModelParams::<f64>::new(0.0, -2.0, 1.0, 1.5)).unwrap();
        let gs = crate::eigen::ground_state(&h, &Default::default()).unwrap();
        let n1 = build_number_operator::<f64>(&s, 0).unwrap();
        let nv = n1.apply(&gs.vector).unwrap();
        let nnv = n1.apply(&nv).unwrap();
        let mean = dot(&gs.vector, &nv);
        let var = dot(&gs.vector, &nnv) - mean * mean;
        let r = variances(&gs.vector, &s).unwrap();
        assert!((r.var_n1 - var).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let s = Sector::dimer();
        assert!(matches!(
            variances(&[1.0; 8], &s),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            variances(&[1.0; 3], &s),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut e = vec![0.0; 8];
        e[0] = 1.0;
        assert!(variances_at(&e, &s, 2).is_err());
    }
}
