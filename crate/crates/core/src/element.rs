//! Element stiffness, geometric stiffness, mass and load for one beam element.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::dof::DofLayout;
use crate::error::{invalid, Result};
use crate::gll::GllRule;
use crate::hermite::HermiteBasis;
use crate::lagrange::{self, BoundaryRowRule, DqMatrices, ModifiedDq};

/// Material, geometry and gradient parameters of a prismatic beam.
///
/// `load` is a uniform transverse load per unit length (positive in the
/// deflection direction) and `axial_load` a compressive axial force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamConfig {
    pub length: f64,
    pub youngs_modulus: f64,
    pub inertia: f64,
    pub area: f64,
    pub density: f64,
    pub g1: f64,
    pub g2: f64,
    pub load: f64,
    pub axial_load: f64,
}

impl Default for BeamConfig {
    fn default() -> Self {
        Self::benchmark()
    }
}

impl BeamConfig {
    /// Benchmark data: `L = 1, E = 3e6, I = A = rho = q = 1, g1 = 0.015, g2 = 0.01`.
    pub fn benchmark() -> Self {
        Self {
            length: 1.0,
            youngs_modulus: 3e6,
            inertia: 1.0,
            area: 1.0,
            density: 1.0,
            g1: 0.015,
            g2: 0.01,
            load: 1.0,
            axial_load: 0.0,
        }
    }

    pub fn classical(self) -> Self {
        Self {
            g1: 0.0,
            g2: 0.0,
            ..self
        }
    }

    pub fn flexural_rigidity(&self) -> f64 {
        self.youngs_modulus * self.inertia
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("length", self.length),
            ("youngs_modulus", self.youngs_modulus),
            ("inertia", self.inertia),
            ("area", self.area),
            ("density", self.density),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        for (name, v) in [("g1", self.g1), ("g2", self.g2)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(invalid(format!(
                    "{name} must be non-negative and finite, got {v}"
                )));
            }
        }
        for (name, v) in [("load", self.load), ("axial_load", self.axial_load)] {
            if !v.is_finite() {
                return Err(invalid(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// Multipliers of the second, third and fourth derivative energy terms
    /// after mapping `x` to `xi` (each carries one `L/2` from the Jacobian).
    pub(crate) fn energy_coefficients(&self) -> [f64; 3] {
        let ei = self.flexural_rigidity();
        let l = self.length;
        [
            8.0 * ei / l.powi(3),
            self.g1.powi(2) * 32.0 * ei / l.powi(5),
            self.g2.powi(4) * 128.0 * ei / l.powi(7),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Lagrange,
    Hermite,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Lagrange => "lagrange",
            BasisKind::Hermite => "hermite",
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Interpolant {
    Lagrange,
    Hermite(Arc<HermiteBasis>),
}

/// Assembled single-element system on the extended DOF vector.
///
/// `stiffness = Wᵀ W` and `geometric = Vᵀ V` exactly, where `W` and `V` are the
/// weighted quadrature factors kept in `stiffness_factor` and
/// `geometric_factor`. The solvers work on the factors to avoid squaring the
/// condition number. `geometric` is for a unit compressive load; the mass
/// matrix is lumped on the nodal displacements (derivative DOFs carry none).
#[derive(Debug, Clone)]
pub struct ElementMatrices {
    pub basis: BasisKind,
    pub config: BeamConfig,
    pub rule: GllRule,
    pub layout: DofLayout,
    pub stiffness: DMatrix<f64>,
    pub geometric: DMatrix<f64>,
    pub mass: DMatrix<f64>,
    pub load: DVector<f64>,
    pub stiffness_factor: DMatrix<f64>,
    pub geometric_factor: DMatrix<f64>,
    pub(crate) interpolant: Interpolant,
}

/// Assemble with the default Lagrange boundary-row rule.
pub fn assemble(config: &BeamConfig, basis: BasisKind, n: usize) -> Result<ElementMatrices> {
    assemble_with(config, basis, n, BoundaryRowRule::default())
}

pub fn assemble_with(
    config: &BeamConfig,
    basis: BasisKind,
    n: usize,
    rule: BoundaryRowRule,
) -> Result<ElementMatrices> {
    config.validate()?;
    if n < 4 {
        return Err(invalid(format!("element needs at least 4 nodes, got {n}")));
    }
    let gll = GllRule::new(n)?;
    match basis {
        BasisKind::Lagrange => {
            let m = ModifiedDq::new(&DqMatrices::from_rule(&gll), rule);
            let ops = [&m.first, &m.second, &m.third, &m.fourth];
            Ok(build(config, basis, gll, ops, Interpolant::Lagrange))
        }
        BasisKind::Hermite => {
            let h = HermiteBasis::from_rule(&gll)?;
            let d = h.derivative_matrices();
            let ops = [&d[0], &d[1], &d[2], &d[3]];
            Ok(build(
                config,
                basis,
                gll,
                ops,
                Interpolant::Hermite(Arc::new(h)),
            ))
        }
    }
}

fn build(
    config: &BeamConfig,
    basis: BasisKind,
    rule: GllRule,
    ops: [&DMatrix<f64>; 4],
    interpolant: Interpolant,
) -> ElementMatrices {
    let n = rule.len();
    let layout = DofLayout::new(n);
    let h = rule.weights();
    let l = config.length;

    let coeffs = config.energy_coefficients();
    let mut w = DMatrix::zeros(3 * n, n + 6);
    for (block, (&c, op)) in coeffs.iter().zip(&ops[1..]).enumerate() {
        for i in 0..n {
            let s = (c * h[i]).sqrt();
            w.row_mut(block * n + i).copy_from(&(op.row(i) * s));
        }
    }
    let mut v = DMatrix::zeros(n, n + 6);
    for i in 0..n {
        let s = (2.0 / l * h[i]).sqrt();
        v.row_mut(i).copy_from(&(ops[0].row(i) * s));
    }
    let stiffness = w.transpose() * &w;
    let geometric = v.transpose() * &v;

    let mut mass = DMatrix::zeros(n + 6, n + 6);
    let m = config.density * config.area * l / 2.0;
    for i in 0..n {
        mass[(i, i)] = m * h[i];
    }
    let load = equivalent_load(&rule, l, |_| config.load);

    ElementMatrices {
        basis,
        config: *config,
        rule,
        layout,
        stiffness,
        geometric,
        mass,
        load,
        stiffness_factor: w,
        geometric_factor: v,
        interpolant,
    }
}

/// Consistent nodal load for a distributed load `q(x)` on the centred axis
/// `x in [-L/2, L/2]`; zero on the derivative DOFs.
pub fn equivalent_load(rule: &GllRule, length: f64, q: impl Fn(f64) -> f64) -> DVector<f64> {
    let n = rule.len();
    let mut f = DVector::zeros(n + 6);
    for (i, (&xi, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        f[i] = length / 2.0 * w * q(xi * length / 2.0);
    }
    f
}

impl ElementMatrices {
    pub fn nodes(&self) -> usize {
        self.rule.len()
    }

    /// Deflection at reference coordinate `xi` for a full DOF vector.
    pub fn deflection_at(&self, dofs: &[f64], xi: f64) -> f64 {
        match &self.interpolant {
            Interpolant::Lagrange => {
                lagrange::interpolate(self.rule.nodes(), &dofs[..self.nodes()], xi)
            }
            Interpolant::Hermite(h) => h.interpolate(dofs, xi, 0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn asym(m: &DMatrix<f64>) -> f64 {
        (m - m.transpose()).amax() / m.amax().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn benchmark_is_valid() {
        BeamConfig::benchmark().validate().unwrap();
        let bad = BeamConfig {
            length: 0.0,
            ..BeamConfig::benchmark()
        };
        assert!(bad.validate().is_err());
        let bad = BeamConfig {
            g2: -1.0,
            ..BeamConfig::benchmark()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn load_and_mass_totals() {
        let c = BeamConfig {
            length: 2.5,
            load: 3.0,
            density: 2.0,
            area: 0.5,
            ..BeamConfig::benchmark()
        };
        for basis in [BasisKind::Lagrange, BasisKind::Hermite] {
            let e = assemble(&c, basis, 9).unwrap();
            assert!((e.load.sum() - 3.0 * 2.5).abs() < 1e-12);
            assert!((e.mass.trace() - 2.0 * 0.5 * 2.5).abs() < 1e-12);
            assert!(e.load.rows(9, 6).iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn unit_axial_work_of_linear_field() {
        // w = x on [-L/2, L/2]: integral of w'^2 is L
        let c = BeamConfig {
            length: 3.0,
            ..BeamConfig::benchmark()
        };
        for basis in [BasisKind::Lagrange, BasisKind::Hermite] {
            let e = assemble(&c, basis, 7).unwrap();
            let mut u = DVector::zeros(13);
            for (i, &xi) in e.rule.nodes().iter().enumerate() {
                u[i] = xi * 1.5;
            }
            // dw/dxi = L/2 at both ends
            u[7] = 1.5;
            u[8] = 1.5;
            let work = (u.transpose() * &e.geometric * &u)[0];
            assert!((work - 3.0).abs() < 1e-10, "{basis:?}: {work}");
        }
    }

    #[test]
    fn too_few_nodes() {
        assert!(assemble(&BeamConfig::benchmark(), BasisKind::Hermite, 3).is_err());
        assert!(assemble(&BeamConfig::benchmark(), BasisKind::Lagrange, 4).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn matrices_symmetric(n in 5usize..=25, hermite in any::<bool>(), g1 in 0.0f64..0.1, g2 in 0.0f64..0.05) {
            let basis = if hermite { BasisKind::Hermite } else { BasisKind::Lagrange };
            let c = BeamConfig { g1, g2, ..BeamConfig::benchmark() };
            let e = assemble(&c, basis, n).unwrap();
            prop_assert!(asym(&e.stiffness) <= 1e-12);
            prop_assert!(asym(&e.geometric) <= 1e-12);
            prop_assert!(asym(&e.mass) <= 1e-12);
        }

        #[test]
        fn rigid_modes_in_stiffness_nullspace(n in 5usize..=25, hermite in any::<bool>()) {
            let basis = if hermite { BasisKind::Hermite } else { BasisKind::Lagrange };
            let c = BeamConfig::benchmark();
            let e = assemble(&c, basis, n).unwrap();
            let mut translation = DVector::zeros(n + 6);
            let mut rotation = DVector::zeros(n + 6);
            for (i, &xi) in e.rule.nodes().iter().enumerate() {
                translation[i] = 1.0;
                rotation[i] = xi;
            }
            rotation[n] = 1.0;
            rotation[n + 1] = 1.0;
            let scale = e.stiffness.amax();
            for u in [translation, rotation] {
                let r = (&e.stiffness * &u).amax();
                prop_assert!(r <= 1e-9 * scale * u.amax(), "residual {r} scale {scale}");
            }
        }
    }
}
