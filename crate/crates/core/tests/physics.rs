use jch::eigen::{dense_eigh, ground_state, SolverConfig};
use jch::hamiltonian::{build_hamiltonian, ModelParams};
use jch::perturbative::compare_to_exact;
use jch::sweep::{run_sweep, write_rows, Axis, SweepSpec};
use jch::{analysis, variances_at, BasisState, Mobility, Particle, Sector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn swapped_index(sector: &Sector, k: usize) -> usize {
    let s = sector.state(k);
    let mut photons = s.photons.clone();
    let mut atoms = s.atoms.clone();
    photons.reverse();
    atoms.reverse();
    sector
        .state_index(&BasisState::new(photons, atoms).unwrap())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gauge_shift_moves_every_level(
        wc in -5.0..5.0f64, d in -10.0..10.0f64, g in 0.0..3.0f64, a in 0.0..10.0f64,
        shift in -20.0..20.0f64, sites in 1usize..=3, n in 0u32..=3,
    ) {
        let s = Sector::new(sites, n).unwrap();
        let e0 = dense_eigh(&build_hamiltonian(&s, &ModelParams::new(wc, d, g, a)).unwrap(), 64).unwrap();
        let e1 = dense_eigh(&build_hamiltonian(&s, &ModelParams::new(wc + shift, d, g, a)).unwrap(), 64).unwrap();
        for (x, y) in e0.eigenvalues.iter().zip(&e1.eigenvalues) {
            prop_assert!((y - x - n as f64 * shift).abs() < 1e-9);
        }
    }

    #[test]
    fn hamiltonian_is_symmetric_as_an_operator(
        d in -10.0..10.0f64, g in 0.0..3.0f64, a in 0.0..10.0f64,
        u in proptest::collection::vec(-1.0..1.0f64, 8),
        v in proptest::collection::vec(-1.0..1.0f64, 8),
    ) {
        let h = build_hamiltonian(&Sector::dimer(), &ModelParams::new(1.0, d, g, a)).unwrap();
        let hu = h.apply(&u).unwrap();
        let hv = h.apply(&v).unwrap();
        let lhs: f64 = hv.iter().zip(&u).map(|(x, y)| x * y).sum();
        let rhs: f64 = hu.iter().zip(&v).map(|(x, y)| x * y).sum();
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn dimer_ground_state_is_swap_symmetric(d in -20.0..20.0f64, g in 0.1..2.0f64, a in 0.5..20.0f64) {
        let s = Sector::dimer();
        let gs = analysis::solve_dimer(&s, &ModelParams::new(0.0, d, g, a), &SolverConfig::default()).unwrap();
        prop_assume!(!gs.degenerate);
        for k in 0..s.dim() {
            prop_assert!((gs.vector[k] - gs.vector[swapped_index(&s, k)]).abs() < 1e-9);
        }
        let v0 = variances_at(&gs.vector, &s, 0).unwrap();
        let v1 = variances_at(&gs.vector, &s, 1).unwrap();
        prop_assert!((v0.var_n1 - v1.var_n1).abs() < 1e-9);
        prop_assert!((v0.var_na1 - v1.var_na1).abs() < 1e-9);
    }
}

#[test]
fn lanczos_matches_dense_on_random_sectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lanczos = SolverConfig {
        dense_limit: 0,
        ..SolverConfig::default()
    };
    for k in 0..200 {
        let sites = rng.gen_range(2..=3);
        let n = rng.gen_range(1..=3);
        let s = Sector::new(sites, n).unwrap();
        if s.dim() < 2 {
            continue;
        }
        let p = ModelParams::<f64>::new(
            0.0,
            rng.gen_range(-10.0..10.0),
            rng.gen_range(0.1..2.0),
            rng.gen_range(0.0..10.0),
        );
        let h = build_hamiltonian(&s, &p).unwrap();
        let dense = dense_eigh(&h, 64).unwrap().eigenvalues[0];
        let lz = ground_state(
            &h,
            &SolverConfig {
                seed: k,
                ..lanczos.clone()
            },
        )
        .unwrap();
        assert!((dense - lz.energy).abs() < 1e-10, "instance {k}");
    }
}

#[test]
fn closed_form_improves_deeper_on_the_degenerate_line() {
    let cfg = SolverConfig::default();
    let at = |a: f64| {
        compare_to_exact(&ModelParams::with_coupling_ratio(1e-4, -a, 1.0, a), &cfg).unwrap()
    };
    let (r10, r100) = (at(10.0), at(100.0));
    assert!(r10.max_abs_deviation <= 0.03);
    assert!(r100.max_abs_deviation < r10.max_abs_deviation);
    assert!(r100.overlap > r10.overlap);
}

#[test]
fn no_atomic_superfluid_on_default_grid() {
    let spec = SweepSpec {
        delta_over_g: Axis::new(-20.0, 20.0, 41),
        hop_over_g: Axis::new(0.0, 20.0, 41),
        ..SweepSpec::default()
    };
    for row in run_sweep(&spec).unwrap() {
        let v = row.outcome.unwrap();
        assert_ne!(
            v.label,
            Some((Mobility::Superfluid, Particle::Atomic)),
            "{} {}",
            row.delta_over_g,
            row.a_over_g
        );
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let base = SweepSpec {
        delta_over_g: Axis::new(-5.0, 5.0, 17),
        hop_over_g: Axis::new(0.0, 5.0, 9),
        ..SweepSpec::default()
    };
    let render = |workers| {
        let spec = SweepSpec {
            workers,
            ..base.clone()
        };
        let mut out = Vec::new();
        write_rows(&run_sweep(&spec).unwrap(), &spec, &mut out).unwrap();
        out
    };
    let one = render(1);
    assert_eq!(one, render(8));
    assert_eq!(one, render(3));
    assert_eq!(one, render(1));
}
