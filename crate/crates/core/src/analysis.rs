//! Ground-state classification into insulator/superfluid and
//! atomic/photonic/polaritonic, and single-point reports.

use crate::eigen::{ground_state, GroundStateResult, SolverConfig};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, ModelParams};
use crate::hilbert::Sector;
use crate::observables::{variances, VarianceReport};
use crate::polariton::{decompose, PolaritonDecomposition};
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mobility {
    Insulator,
    Superfluid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Particle {
    Atomic,
    Photonic,
    Polaritonic,
}

impl Mobility {
    pub fn as_str(self) -> &'static str {
        match self {
            Mobility::Insulator => "insulator",
            Mobility::Superfluid => "superfluid",
        }
    }
}

impl Particle {
    pub fn as_str(self) -> &'static str {
        match self {
            Particle::Atomic => "atomic",
            Particle::Photonic => "photonic",
            Particle::Polaritonic => "polaritonic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds<T> {
    pub eps_mobility: T,
    pub eps_particle: T,
}

impl<T: Scalar> Default for Thresholds<T> {
    fn default() -> Self {
        Self {
            eps_mobility: T::lit(0.05),
            eps_particle: T::lit(0.05),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseLabel<T> {
    pub mobility: Mobility,
    pub particle: Particle,
    pub thresholds_used: Thresholds<T>,
    /// `min(|ΔN₁ − eps_mobility|, |ΔN_A1 − eps_particle|)`; small values
    /// mark points close to a classification boundary.
    pub boundary_distance: T,
}

/// * insulator iff `ΔN₁ < eps_mobility`
/// * polaritonic iff `ΔN_A1 ≥ eps_particle`, otherwise atomic when
///   `⟨N_A1⟩ > 1/2` and photonic when not
///
/// Refuses degenerate ground states.
pub fn classify<T: Scalar>(
    report: &VarianceReport<T>,
    thresholds: Thresholds<T>,
) -> Result<PhaseLabel<T>> {
    if report.degenerate_ground {
        return Err(Error::DegenerateGround);
    }
    let mobility = if report.var_n1 < thresholds.eps_mobility {
        Mobility::Insulator
    } else {
        Mobility::Superfluid
    };
    let particle = if report.var_na1 >= thresholds.eps_particle {
        Particle::Polaritonic
    } else if report.mean_na1 > T::lit(0.5) {
        Particle::Atomic
    } else {
        Particle::Photonic
    };
    let boundary_distance = (report.var_n1 - thresholds.eps_mobility)
        .abs()
        .min((report.var_na1 - thresholds.eps_particle).abs());
    Ok(PhaseLabel {
        mobility,
        particle,
        thresholds_used: thresholds,
        boundary_distance,
    })
}

/// Everything known about the dimer ground state at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointReport<T> {
    pub params: ModelParams<T>,
    /// Absolute ground energy.
    pub energy: T,
    pub ground: GroundStateResult<T>,
    pub variances: VarianceReport<T>,
    pub decomposition: PolaritonDecomposition<T>,
    /// `None` when the ground level is degenerate.
    pub label: Option<PhaseLabel<T>>,
}

/// Dimer ground state of `params` (solved with `ω_c` gauged away), with
/// the sign-canonical vector and absolute energy.
pub fn solve_dimer<T: Scalar>(
    sector: &Sector,
    params: &ModelParams<T>,
    cfg: &SolverConfig<T>,
) -> Result<GroundStateResult<T>> {
    let h = build_hamiltonian(sector, &params.gauge_reduced())?;
    let mut gs = ground_state(&h, cfg)?;
    gs.energy += T::lit(sector.excitations() as f64) * params.omega_c;
    Ok(gs)
}

pub fn analyze_point<T: Scalar>(
    params: &ModelParams<T>,
    cfg: &SolverConfig<T>,
    thresholds: Thresholds<T>,
) -> Result<PointReport<T>> {
    let sector = Sector::dimer();
    let ground = solve_dimer(&sector, params, cfg)?;
    let variances = variances(&ground.vector, &sector)?.with_degenerate(ground.degenerate);
    let decomposition = decompose(&ground.vector, &sector, params.delta, params.g)?;
    let label = match classify(&variances, thresholds) {
        Ok(l) => Some(l),
        Err(Error::DegenerateGround) => None,
        Err(e) => return Err(e),
    };
    Ok(PointReport {
        params: params.clone(),
        energy: ground.energy,
        ground,
        variances,
        decomposition,
        label,
    })
}

impl<T: Scalar> PointReport<T> {
    /// `{params, energy, variances, decomposition, label, degenerate}`
    pub fn to_json(&self) -> serde_json::Value {
        let f = |x: T| x.to_f64_lossy();
        let p = &self.params;
        let v = &self.variances;
        let label = match &self.label {
            Some(l) => serde_json::json!({
                "mobility": l.mobility.as_str(),
                "particle": l.particle.as_str(),
                "eps_mobility": f(l.thresholds_used.eps_mobility),
                "eps_particle": f(l.thresholds_used.eps_particle),
                "boundary_distance": f(l.boundary_distance),
            }),
            None => serde_json::json!("degenerate"),
        };
        serde_json::json!({
            "params": params_json(p),
            "energy": f(self.energy),
            "energy_over_g": f((self.energy - T::lit(2.0) * p.omega_c) / p.g),
            "variances": {
                "mean_n1": f(v.mean_n1),
                "dn1": f(v.var_n1),
                "mean_na1": f(v.mean_na1),
                "dna1": f(v.var_na1),
                "product": f(v.product),
                "photon_var": f(v.var_photon1),
            },
            "decomposition": self.decomposition.to_json(),
            "label": label,
            "degenerate": self.ground.degenerate,
            "solver": {
                "kind": self.ground.solver,
                "iterations": self.ground.iterations,
                "residual": f(self.ground.residual),
                "degeneracy_gap": f(self.ground.degeneracy_gap),
            },
        })
    }
}

pub fn params_json<T: Scalar>(p: &ModelParams<T>) -> serde_json::Value {
    let f = |x: T| x.to_f64_lossy();
    serde_json::json!({
        "omega_c": f(p.omega_c),
        "omega_a": f(p.omega_a()),
        "delta": f(p.delta),
        "g": f(p.g),
        "hop": f(p.hop),
        "delta_over_g": f(p.delta / p.g),
        "a_over_g": f(p.hop / p.g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label_at(delta: f64, hop: f64, th: Thresholds<f64>) -> (Mobility, Particle) {
        let p = ModelParams::with_coupling_ratio(1e-4, delta, 1.0, hop);
        let r = analyze_point(&p, &SolverConfig::default(), th).unwrap();
        let l = r.label.expect("non-degenerate");
        (l.mobility, l.particle)
    }

    const POINTS: [(f64, f64, Mobility, Particle); 4] = [
        (-10.0, 0.01, Mobility::Insulator, Particle::Atomic),
        (0.0, 0.01, Mobility::Insulator, Particle::Polaritonic),
        (-10.0, 10.0, Mobility::Superfluid, Particle::Polaritonic),
        (10.0, 10.0, Mobility::Superfluid, Particle::Photonic),
    ];

    #[test]
    fn four_representative_points() {
        for (d, a, m, p) in POINTS {
            assert_eq!(label_at(d, a, Thresholds::default()), (m, p), "Δ={d} A={a}");
        }
    }

    #[test]
    fn robust_to_threshold_perturbation() {
        for scale in [0.9, 1.1] {
            let th = Thresholds {
                eps_mobility: 0.05 * scale,
                eps_particle: 0.05 * scale,
            };
            for (d, a, m, p) in POINTS {
                assert_eq!(label_at(d, a, th), (m, p));
            }
        }
    }

    #[test]
    fn degenerate_report_refused() {
        let r = VarianceReport {
            mean_n1: 1.0,
            var_n1: 0.0,
            mean_na1: 0.5,
            var_na1: 0.25,
            product: 0.0,
            var_photon1: 0.0,
            degenerate_ground: true,
        };
        assert!(matches!(
            classify(&r, Thresholds::default()),
            Err(Error::DegenerateGround)
        ));
    }

    #[test]
    fn degenerate_point_has_no_label() {
        let p = ModelParams::new(0.0, -1.0, 1e-12, 1.0);
        let r = analyze_point(&p, &SolverConfig::default(), Thresholds::default()).unwrap();
        assert!(r.ground.degenerate);
        assert!(r.label.is_none());
        assert_eq!(r.to_json()["label"], "degenerate");
    }

    #[test]
    fn point_json_has_expected_fields() {
        let p = ModelParams::with_coupling_ratio(1e-4, 0.0, 1.0, 0.01);
        let r = analyze_point(&p, &SolverConfig::default(), Thresholds::default()).unwrap();
        let j = r.to_json();
        for key in [
            "params",
            "energy",
            "variances",
            "decomposition",
            "label",
            "degenerate",
        ] {
            assert!(j.get(key).is_some(), "{key}");
        }
    }
}
