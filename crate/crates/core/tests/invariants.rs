//! Cross-module properties of the element, solver and analytical paths.

use gradbeam::oracle;
use gradbeam::solve::ReducedSystem;
use gradbeam::{
    apply_bc, assemble, solve_buckling, solve_modal, solve_static, BasisKind, BeamConfig,
    BoundaryCondition,
};
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BASES: [BasisKind; 2] = [BasisKind::Lagrange, BasisKind::Hermite];

fn ss() -> BoundaryCondition {
    BoundaryCondition::simply_supported()
}

fn system(basis: BasisKind, n: usize, bc: &BoundaryCondition) -> ReducedSystem {
    apply_bc(&assemble(&BeamConfig::benchmark(), basis, n).unwrap(), bc).unwrap()
}

fn random_vectors(len: usize, count: usize, seed: u64) -> Vec<DVector<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| DVector::from_fn(len, |_, _| rng.gen_range(-1.0..1.0)))
        .collect()
}

fn quad(m: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    v.dot(&(m * v))
}

#[test]
fn bases_agree_on_static_deflection_from_n13() {
    for n in (13..=21).step_by(2) {
        let [l, h] = BASES.map(|b| {
            solve_static(&system(b, n, &ss()))
                .unwrap()
                .center_deflection()
                .unwrap()
        });
        assert!((l - h).abs() <= 1e-3 * h, "N={n}: {l} vs {h}");
    }
}

#[test]
fn stiffness_scales_with_material_and_length() {
    let base = BeamConfig::benchmark();
    let classical = base.classical();
    for basis in BASES {
        let k = assemble(&base, basis, 11).unwrap().stiffness;
        let vs = random_vectors(17, 20, 11);
        for (cfg, factor) in [
            (
                BeamConfig {
                    youngs_modulus: 2.0 * base.youngs_modulus,
                    ..base
                },
                2.0,
            ),
            (
                BeamConfig {
                    inertia: 3.0 * base.inertia,
                    ..base
                },
                3.0,
            ),
        ] {
            let scaled = assemble(&cfg, basis, 11).unwrap().stiffness;
            for v in &vs {
                let (a, b) = (quad(&scaled, v), factor * quad(&k, v));
                assert!((a - b).abs() <= 1e-12 * b.abs().max(quad(&k.abs(), &v.abs())));
            }
        }
        // classical term carries 1/L^3 when derivative DOFs are in element units
        let k1 = assemble(&classical, basis, 11).unwrap().stiffness;
        let k2 = assemble(
            &BeamConfig {
                length: 2.0 * classical.length,
                ..classical
            },
            basis,
            11,
        )
        .unwrap()
        .stiffness;
        for v in &vs {
            let (a, b) = (quad(&k2, v), quad(&k1, v) / 8.0);
            assert!((a - b).abs() <= 1e-12 * quad(&k1.abs(), &v.abs()));
        }
    }
}

#[test]
fn stiffness_and_mass_are_positive_semidefinite() {
    let cfg = BeamConfig::benchmark();
    for basis in BASES {
        let e = assemble(&cfg, basis, 15).unwrap();
        let (kabs, mabs) = (e.stiffness.abs(), e.mass.abs());
        for v in random_vectors(21, 1000, 5) {
            let va = v.abs();
            assert!(quad(&e.stiffness, &v) >= -1e-12 * quad(&kabs, &va));
            assert!(quad(&e.mass, &v) >= -1e-12 * quad(&mabs, &va));
        }
    }
}

#[test]
fn static_residual_is_small() {
    for basis in BASES {
        for n in [7, 11, 21] {
            let r = solve_static(&system(basis, n, &ss())).unwrap();
            assert!(r.diagnostics.residual.unwrap() <= 1e-10, "{basis:?} N={n}");
        }
    }
}

fn permuted(sys: &ReducedSystem, perm: &[usize]) -> ReducedSystem {
    let n = perm.len();
    let p = DMatrix::from_fn(n, n, |i, j| if perm[i] == j { 1.0 } else { 0.0 });
    let mut out = sys.clone();
    out.free = perm.iter().map(|&k| sys.free[k]).collect();
    out.stiffness = &p * &sys.stiffness * p.transpose();
    out.geometric = &p * &sys.geometric * p.transpose();
    out.mass = &p * &sys.mass * p.transpose();
    out.load = &p * &sys.load;
    out.stiffness_factor = &sys.stiffness_factor * p.transpose();
    out.geometric_factor = &sys.geometric_factor * p.transpose();
    out
}

#[test]
fn modal_spectrum_ignores_dof_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for basis in BASES {
        for bc in [ss(), BoundaryCondition::free_free()] {
            let sys = system(basis, 15, &bc);
            let base = solve_modal(&sys, 6).unwrap();
            for _ in 0..3 {
                let mut perm: Vec<usize> = (0..sys.len()).collect();
                perm.shuffle(&mut rng);
                let r = solve_modal(&permuted(&sys, &perm), 6).unwrap();
                for (a, b) in r.frequencies.iter().zip(&base.frequencies) {
                    assert!((a - b).abs() <= 1e-8 * b, "{basis:?} {bc}: {a} vs {b}");
                }
                assert_eq!(r.rigid_frequencies.len(), base.rigid_frequencies.len());
                for (a, b) in r.mode_shapes.iter().zip(&base.mode_shapes) {
                    assert!((a - b).amax() <= 1e-6);
                }
            }
        }
    }
}

#[test]
fn frequency_error_shrinks_with_n() {
    let cfg = BeamConfig::benchmark();
    for bc in [ss(), BoundaryCondition::free_free()] {
        let exact = oracle::frequency_oracle(&cfg, &bc, 4).unwrap().values;
        for basis in BASES {
            let errors: Vec<Vec<f64>> = (11..=21)
                .step_by(2)
                .map(|n| {
                    let f = solve_modal(&system(basis, n, &bc), 4).unwrap().frequencies;
                    f.iter().zip(&exact).map(|(a, b)| (a - b).abs()).collect()
                })
                .collect();
            for k in 0..4 {
                assert!(
                    errors[5][k] < errors[0][k],
                    "{basis:?} {bc} mode {k}: N=11 vs N=21"
                );
                // strictly monotone once the element resolves the mode shape
                for w in errors[2..].windows(2) {
                    assert!(w[1][k] < w[0][k], "{basis:?} {bc} mode {k}: {errors:?}");
                }
            }
        }
    }
}

#[test]
fn free_free_has_exactly_two_rigid_modes() {
    for basis in BASES {
        for n in [9, 15, 21, 31] {
            let r = solve_modal(&system(basis, n, &BoundaryCondition::free_free()), 6).unwrap();
            assert_eq!(r.rigid_frequencies.len(), 2, "{basis:?} N={n}");
            assert!(r.rigid_frequencies.iter().all(|&w| w < 1e-3));
            assert!(r.frequencies[0] > 1.0);
        }
    }
}

#[test]
fn bases_agree_on_buckling_at_n15() {
    let [l, h] = BASES.map(|b| {
        solve_buckling(&system(b, 15, &ss()), 1)
            .unwrap()
            .buckling_loads[0]
    });
    assert!((l - h).abs() <= 2e-4 * h, "{l} vs {h}");
}

#[test]
fn hermite_frequencies_match_oracle_at_n21() {
    let exact = oracle::frequency_oracle(&BeamConfig::benchmark(), &ss(), 6)
        .unwrap()
        .values;
    let f = solve_modal(&system(BasisKind::Hermite, 21, &ss()), 6)
        .unwrap()
        .frequencies;
    for (a, b) in f.iter().zip(&exact) {
        assert!((a - b).abs() <= 5e-4 * b, "{a} vs {b}");
    }
}

#[test]
fn oracle_spectrum_sits_on_determinant_zeros() {
    let cfg = BeamConfig::benchmark();
    for bc in [ss(), BoundaryCondition::free_free()] {
        let s = oracle::frequency_oracle(&cfg, &bc, 6).unwrap();
        assert!(
            s.residuals.iter().all(|&r| r <= 1e-6),
            "{bc}: {:?}",
            s.residuals
        );
    }
    let b = oracle::buckling_oracle(&cfg, &ss(), 2).unwrap();
    assert!(b.residuals.iter().all(|&r| r <= 1e-6));
}
