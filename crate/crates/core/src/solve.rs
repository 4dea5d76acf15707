//! Essential boundary conditions and the static, modal and buckling solvers.
//!
//! The solvers work on the quadrature factors rather than on the assembled
//! matrices. Stiffness condition numbers reach 1e16 for the Hermite element at
//! N = 41, so forming `K` and factoring it loses every digit of the lowest
//! modes; singular values of `W` (with `K = WᵀW`) need only the square root of
//! that range.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::dof::{DofLayout, End, Quantity};
use crate::element::{BasisKind, BeamConfig, ElementMatrices, Interpolant};
use crate::error::{invalid, Error, Result};
use crate::hermite::HermiteBasis;
use crate::lagrange;
use crate::linalg::{self, SortedSvd};

/// Relative singular-value threshold of `W` below which a stiffness direction
/// counts as null.
const NULL_TOL: f64 = 1e-10;
/// Relative threshold for the range of the massless stiffness columns.
const RANGE_TOL: f64 = 1e-12;
/// Modes with nondimensional frequency below this are reported as rigid.
pub const RIGID_THRESHOLD: f64 = 1e-3;

/// Which end quantities are held at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryCondition {
    left: [bool; 4],
    right: [bool; 4],
}

impl BoundaryCondition {
    /// Deflection, curvature and third derivative fixed at both ends; the
    /// slope is free and the classical moment vanishes naturally.
    pub fn simply_supported() -> Self {
        let s = [true, false, true, true];
        Self { left: s, right: s }
    }

    pub fn free_free() -> Self {
        Self {
            left: [false; 4],
            right: [false; 4],
        }
    }

    pub fn clamped_clamped() -> Self {
        Self {
            left: [true; 4],
            right: [true; 4],
        }
    }

    /// Left end fully fixed, right end free.
    pub fn cantilever() -> Self {
        Self {
            left: [true; 4],
            right: [false; 4],
        }
    }

    /// Arbitrary essential sets. Listing a quantity twice is an error.
    pub fn custom(left: &[Quantity], right: &[Quantity]) -> Result<Self> {
        let mut out = Self::free_free();
        for (set, list, name) in [
            (&mut out.left, left, "left"),
            (&mut out.right, right, "right"),
        ] {
            for q in list {
                if std::mem::replace(&mut set[q.order()], true) {
                    return Err(invalid(format!(
                        "{q:?} constrained twice at the {name} end"
                    )));
                }
            }
        }
        Ok(out)
    }

    pub fn is_constrained(&self, end: End, q: Quantity) -> bool {
        match end {
            End::Left => self.left[q.order()],
            End::Right => self.right[q.order()],
        }
    }

    /// Indices of the constrained entries, ascending.
    pub fn essential_dofs(&self, layout: &DofLayout) -> Vec<usize> {
        let mut out: Vec<usize> = [End::Left, End::Right]
            .into_iter()
            .flat_map(|end| {
                Quantity::ALL
                    .into_iter()
                    .filter(move |&q| self.is_constrained(end, q))
                    .map(move |q| layout.index(end, q))
            })
            .collect();
        out.sort_unstable();
        out
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ss" | "simply-supported" | "simply_supported" => Ok(Self::simply_supported()),
            "free" | "ff" | "free-free" => Ok(Self::free_free()),
            "clamped" | "cc" | "clamped-clamped" => Ok(Self::clamped_clamped()),
            "cantilever" | "cf" => Ok(Self::cantilever()),
            other => Err(invalid(format!("unknown boundary condition '{other}'"))),
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if *self == Self::simply_supported() {
            "ss"
        } else if *self == Self::free_free() {
            "free"
        } else if *self == Self::clamped_clamped() {
            "clamped"
        } else if *self == Self::cantilever() {
            "cantilever"
        } else {
            "custom"
        };
        f.write_str(name)
    }
}

/// Element system restricted to the unconstrained DOFs.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    pub element: Arc<ElementMatrices>,
    pub bc: BoundaryCondition,
    /// Full-vector index of each retained DOF.
    pub free: Vec<usize>,
    pub stiffness: DMatrix<f64>,
    pub geometric: DMatrix<f64>,
    pub mass: DMatrix<f64>,
    pub load: DVector<f64>,
    pub stiffness_factor: DMatrix<f64>,
    pub geometric_factor: DMatrix<f64>,
}

pub fn apply_bc(element: &ElementMatrices, bc: &BoundaryCondition) -> Result<ReducedSystem> {
    let layout = element.layout;
    let fixed = bc.essential_dofs(&layout);
    let free: Vec<usize> = (0..layout.len()).filter(|i| !fixed.contains(i)).collect();
    if free.is_empty() {
        return Err(invalid("boundary conditions leave no free DOFs"));
    }
    let sym = |m: &DMatrix<f64>| m.select_rows(&free).select_columns(&free);
    Ok(ReducedSystem {
        element: Arc::new(element.clone()),
        bc: *bc,
        stiffness: sym(&element.stiffness),
        geometric: sym(&element.geometric),
        mass: sym(&element.mass),
        load: element.load.select_rows(&free),
        stiffness_factor: element.stiffness_factor.select_columns(&free),
        geometric_factor: element.geometric_factor.select_columns(&free),
        free,
    })
}

impl ReducedSystem {
    pub fn len(&self) -> usize {
        self.free.len()
    }

    pub fn is_empty(&self) -> bool {
        self.free.is_empty()
    }

    fn expand(&self, reduced: &DVector<f64>) -> DVector<f64> {
        let mut full = DVector::zeros(self.element.layout.len());
        for (k, &i) in self.free.iter().enumerate() {
            full[i] = reduced[k];
        }
        full
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analysis {
    Static,
    Modal,
    Buckling,
}

/// How the massless derivative DOFs are condensed out of the modal problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Condensation {
    /// Project the stiffness factor onto the complement of the massless
    /// columns' range. Handles a singular massless block exactly.
    Projection,
    /// Static condensation with `K_bb + shift * ||K_bb|| I`, then a
    /// Cholesky-reduced symmetric eigenproblem. The shift biases the lowest
    /// modes by roughly `shift * cond(K)`, so it has to stay near 1e-14.
    Shifted { shift: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalOptions {
    pub condensation: Condensation,
    pub rigid_threshold: f64,
    /// Return the elastic modes that exist instead of failing when fewer
    /// than requested are available.
    pub allow_fewer: bool,
}

impl Default for ModalOptions {
    fn default() -> Self {
        Self {
            condensation: Condensation::Projection,
            rigid_threshold: RIGID_THRESHOLD,
            allow_fewer: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Eigenvalues dropped as non-positive (buckling) or rigid (modal).
    pub discarded: usize,
    /// Rank of the massless stiffness block used in condensation.
    pub massless_rank: Option<usize>,
    pub shift: Option<f64>,
    /// `||K u - f|| / (||K|| ||u|| + ||f||)` for static solves.
    pub residual: Option<f64>,
}

/// Solver output. Frequencies and loads are nondimensional:
/// `omega_bar = omega L^2 sqrt(rho A / EI)` and `P_bar = P L^2 / EI`.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub analysis: Analysis,
    pub basis: BasisKind,
    pub config: BeamConfig,
    pub nodes: Vec<f64>,
    /// Full extended DOF vector of the static solution.
    pub displacement: Option<DVector<f64>>,
    pub frequencies: Vec<f64>,
    pub rigid_frequencies: Vec<f64>,
    pub buckling_loads: Vec<f64>,
    /// Full extended vectors, unit maximum nodal magnitude, positive at the
    /// first interior node.
    pub mode_shapes: Vec<DVector<f64>>,
    pub diagnostics: Diagnostics,
    interpolant: Interpolant,
}

impl SolveResult {
    fn new(analysis: Analysis, sys: &ReducedSystem) -> Self {
        let e = &sys.element;
        Self {
            analysis,
            basis: e.basis,
            config: e.config,
            nodes: e.rule.nodes().to_vec(),
            displacement: None,
            frequencies: Vec::new(),
            rigid_frequencies: Vec::new(),
            buckling_loads: Vec::new(),
            mode_shapes: Vec::new(),
            diagnostics: Diagnostics::default(),
            interpolant: e.interpolant.clone(),
        }
    }

    fn deflection_scale(&self) -> Option<f64> {
        let c = &self.config;
        (c.load != 0.0).then(|| 100.0 * c.flexural_rigidity() / (c.load * c.length.powi(4)))
    }

    /// Physical deflection at reference coordinate `xi`.
    pub fn deflection_at(&self, xi: f64) -> Option<f64> {
        let u = self.displacement.as_ref()?;
        let u = u.as_slice();
        Some(match &self.interpolant {
            Interpolant::Lagrange => lagrange::interpolate(&self.nodes, &u[..self.nodes.len()], xi),
            Interpolant::Hermite(h) => HermiteBasis::interpolate(h, u, xi, 0),
        })
    }

    /// `100 EI w / (q L^4)` at each node.
    pub fn nondimensional_deflection(&self) -> Option<Vec<f64>> {
        let s = self.deflection_scale()?;
        let u = self.displacement.as_ref()?;
        Some(u.rows(0, self.nodes.len()).iter().map(|w| w * s).collect())
    }

    /// `100 EI w(0) / (q L^4)` at the beam centre.
    pub fn center_deflection(&self) -> Option<f64> {
        Some(self.deflection_at(0.0)? * self.deflection_scale()?)
    }

    /// Physical slope `dw/dx` at an end, from the slope DOF.
    pub fn end_slope(&self, end: End) -> Option<f64> {
        let u = self.displacement.as_ref()?;
        let layout = DofLayout::new(self.nodes.len());
        Some(u[layout.index(end, Quantity::Slope)] * 2.0 / self.config.length)
    }

    /// `100 EI w' / (q L^3)`, the slope of the nondimensional deflection
    /// against `x / L`.
    pub fn nondimensional_end_slope(&self, end: End) -> Option<f64> {
        Some(self.end_slope(end)? * self.deflection_scale()? * self.config.length)
    }
}

fn nondimensional_frequency(config: &BeamConfig, lambda: f64) -> f64 {
    let c = config;
    lambda.max(0.0).sqrt() * c.length.powi(2) * (c.density * c.area / c.flexural_rigidity()).sqrt()
}

fn normalize_mode(mut v: DVector<f64>, nodes: usize) -> DVector<f64> {
    let peak = v.rows(0, nodes).amax();
    if peak == 0.0 {
        return v;
    }
    // sign from the first interior node, unless it sits on a nodal point of the mode
    let first = v[1];
    let sign = if first.abs() > 1e-8 * peak {
        first.signum()
    } else {
        let i = v.rows(0, nodes).iamax();
        v[i].signum()
    };
    v *= sign / peak;
    v
}

/// Static deflection under the configured transverse load. A nonzero
/// `axial_load` solves the beam-column problem `(K - P G) u = f`.
pub fn solve_static(sys: &ReducedSystem) -> Result<SolveResult> {
    let cfg = &sys.element.config;
    let p = cfg.axial_load;
    let (u, k) = if p == 0.0 {
        let svd = SortedSvd::new(&sys.stiffness_factor);
        let rank = svd.rank(NULL_TOL);
        if rank < sys.len() {
            return Err(Error::RankDeficient {
                nullity: sys.len() - rank,
            });
        }
        // u = V S^-2 V^T f
        let mut y = svd.v.transpose() * &sys.load;
        for (yi, s) in y.iter_mut().zip(&svd.singular_values) {
            *yi /= s * s;
        }
        (&svd.v * y, sys.stiffness.clone())
    } else {
        let k = &sys.stiffness - &sys.geometric * p;
        (linalg::lu_solve(&k, &sys.load)?, k)
    };
    let residual = (&k * &u - &sys.load).norm() / (k.norm() * u.norm() + sys.load.norm());
    let mut out = SolveResult::new(Analysis::Static, sys);
    out.displacement = Some(sys.expand(&u));
    out.diagnostics.residual = Some(residual);
    Ok(out)
}

pub fn solve_modal(sys: &ReducedSystem, modes: usize) -> Result<SolveResult> {
    solve_modal_with(sys, modes, &ModalOptions::default())
}

/// Lowest `modes` elastic natural frequencies. Rigid-body modes (below
/// `rigid_threshold`) are returned separately and do not count. The axial
/// load does not enter.
pub fn solve_modal_with(
    sys: &ReducedSystem,
    modes: usize,
    opts: &ModalOptions,
) -> Result<SolveResult> {
    let layout = sys.element.layout;
    let (d, b): (Vec<usize>, Vec<usize>) =
        (0..sys.len()).partition(|&k| layout.is_nodal(sys.free[k]));
    let mut out = SolveResult::new(Analysis::Modal, sys);

    let m_d: Vec<f64> = d.iter().map(|&k| sys.mass[(k, k)]).collect();
    let (lambdas, vectors) = match opts.condensation {
        Condensation::Projection => {
            let w_d = sys.stiffness_factor.select_columns(&d);
            let w_b = sys.stiffness_factor.select_columns(&b);
            let (r_d, pinv) = if b.is_empty() {
                (w_d.clone(), None)
            } else {
                let svd = SortedSvd::new(&w_b);
                let r = svd.rank(RANGE_TOL);
                out.diagnostics.massless_rank = Some(r);
                let q = svd.u.columns(0, r);
                let r_d = &w_d - q * (q.transpose() * &w_d);
                (r_d, Some((svd, r)))
            };
            let mut z = r_d;
            for (j, &m) in m_d.iter().enumerate() {
                z.column_mut(j).scale_mut(1.0 / m.sqrt());
            }
            let svd = SortedSvd::new(&z);
            // ascending eigenvalues
            let k = svd.singular_values.len();
            let mut lambdas = Vec::with_capacity(k);
            let mut vecs = Vec::with_capacity(k);
            for idx in (0..k).rev() {
                let s = svd.singular_values[idx];
                let mut x_d = svd.v.column(idx).into_owned();
                for (j, &m) in m_d.iter().enumerate() {
                    x_d[j] /= m.sqrt();
                }
                let x_b = match &pinv {
                    None => DVector::zeros(0),
                    Some((sb, r)) => {
                        let mut y = sb.u.columns(0, *r).transpose() * (&w_d * &x_d);
                        for (yi, s) in y.iter_mut().zip(&sb.singular_values) {
                            *yi /= -s;
                        }
                        sb.v.columns(0, *r) * y
                    }
                };
                lambdas.push(s * s);
                vecs.push((x_d, x_b));
            }
            (lambdas, vecs)
        }
        Condensation::Shifted { shift } => {
            let k_dd = sys.stiffness.select_rows(&d).select_columns(&d);
            let (kc, back) = if b.is_empty() {
                (k_dd, None)
            } else {
                let k_bb = sys.stiffness.select_rows(&b).select_columns(&b);
                let k_bd = sys.stiffness.select_rows(&b).select_columns(&d);
                let sigma = shift * k_bb.norm();
                out.diagnostics.shift = Some(sigma);
                let shifted = &k_bb + DMatrix::identity(b.len(), b.len()) * sigma;
                let chol = shifted.cholesky().ok_or(Error::NotPositiveDefinite)?;
                let t = chol.solve(&k_bd);
                let kc = k_dd - k_bd.transpose() * &t;
                (0.5 * (&kc + kc.transpose()), Some(t))
            };
            let mass = DMatrix::from_diagonal(&DVector::from_vec(m_d.clone()));
            let (vals, vecs) = linalg::symmetric_generalized_eigen(&kc, &mass)?;
            let vecs = (0..vals.len())
                .map(|i| {
                    let x_d = vecs.column(i).into_owned();
                    let x_b = back.as_ref().map_or(DVector::zeros(0), |t| -(t * &x_d));
                    (x_d, x_b)
                })
                .collect();
            (vals, vecs)
        }
    };

    let cfg = &sys.element.config;
    let mut elastic = Vec::new();
    for (lam, (x_d, x_b)) in lambdas.into_iter().zip(vectors) {
        let w = nondimensional_frequency(cfg, lam);
        if w < opts.rigid_threshold {
            out.rigid_frequencies.push(w);
            continue;
        }
        let mut x = DVector::zeros(sys.len());
        for (j, &k) in d.iter().enumerate() {
            x[k] = x_d[j];
        }
        for (j, &k) in b.iter().enumerate() {
            x[k] = x_b[j];
        }
        elastic.push((w, x));
    }
    out.diagnostics.discarded = out.rigid_frequencies.len();
    if modes > elastic.len() && !opts.allow_fewer {
        return Err(invalid(format!(
            "requested {modes} modes but only {} elastic modes exist",
            elastic.len()
        )));
    }
    for (w, x) in elastic.into_iter().take(modes) {
        out.frequencies.push(w);
        out.mode_shapes
            .push(normalize_mode(sys.expand(&x), layout.nodes()));
    }
    Ok(out)
}

/// Lowest `count` critical loads of `K x = P G x`. Non-positive eigenvalues
/// are discarded and counted; a singular reduced stiffness is an error.
pub fn solve_buckling(sys: &ReducedSystem, count: usize) -> Result<SolveResult> {
    let svd = SortedSvd::new(&sys.stiffness_factor);
    let rank = svd.rank(NULL_TOL);
    if rank < sys.len() {
        return Err(Error::RankDeficient {
            nullity: sys.len() - rank,
        });
    }
    // K = V S^2 V^T; x = V S^-1 y turns the pencil into T^T T y = (1/P) y.
    let mut basis = svd.v.clone();
    for (j, s) in svd.singular_values.iter().enumerate() {
        basis.column_mut(j).scale_mut(1.0 / s);
    }
    let t = &sys.geometric_factor * &basis;
    let ts = SortedSvd::new(&t);
    let mu_max = ts.singular_values.first().map_or(0.0, |s| s * s);
    let mut out = SolveResult::new(Analysis::Buckling, sys);
    let mut loads = Vec::new();
    for (j, s) in ts.singular_values.iter().enumerate() {
        let mu = s * s;
        if mu > 1e-12 * mu_max && mu > 0.0 {
            loads.push((1.0 / mu, j));
        }
    }
    out.diagnostics.discarded = sys.len() - loads.len();
    if loads.is_empty() {
        return Err(Error::NoPositiveEigenvalue {
            discarded: out.diagnostics.discarded,
        });
    }
    if count > loads.len() {
        return Err(invalid(format!(
            "requested {count} buckling loads but only {} exist",
            loads.len()
        )));
    }
    let cfg = &sys.element.config;
    let scale = cfg.length.powi(2) / cfg.flexural_rigidity();
    for &(p, j) in loads.iter().take(count) {
        out.buckling_loads.push(p * scale);
        let x = &basis * ts.v.column(j);
        out.mode_shapes
            .push(normalize_mode(sys.expand(&x), sys.element.layout.nodes()));
    }
    Ok(out)
}
