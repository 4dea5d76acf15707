//! Analytical solutions of the eighth-order beam equation
//! `EI (w'''' - g1^2 w^(6) + g2^4 w^(8)) + P w'' = q + rho A omega^2 w`
//! used to validate the elements.
//!
//! Solutions are expanded in exponentials `exp(k t)` on `t in [0, L]`. Each
//! column is anchored at the end where it is bounded (`t = L` for `Re k > 0`,
//! `t = 0` otherwise) so that no entry overflows, and complex-conjugate root
//! pairs enter as real and imaginary parts, which keeps every boundary matrix
//! and its determinant real. Each end contributes one row per work-conjugate
//! pair (w | V), (w' | M), (w'' | M̄), (w''' | M̄̄): the kinematic quantity
//! when it is constrained, otherwise the vanishing resultant.

mod roots;

use nalgebra::{Complex, DMatrix, DVector};

pub use roots::{polynomial_roots, relative_residual};

use crate::dof::{End, Quantity};
use crate::element::BeamConfig;
use crate::error::{invalid, Error, Result};
use crate::linalg::SortedSvd;
use crate::solve::BoundaryCondition;

const MAX_CONDITION: f64 = 1e14;
const BISECTION_TOL: f64 = 1e-10;
const DET_RESIDUAL_TOL: f64 = 1e-6;

/// One basis function of the homogeneous solution.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Column {
    Power(u32),
    /// `Re` or `Im` of `exp(k (t - anchor))`.
    Exp {
        k: Complex<f64>,
        anchor: f64,
        imag: bool,
    },
}

impl Column {
    fn derivative(&self, t: f64, order: u32) -> f64 {
        match *self {
            Column::Power(p) => {
                if order > p {
                    0.0
                } else {
                    let falling: f64 = (0..order).map(|i| (p - i) as f64).product();
                    falling * t.powi((p - order) as i32)
                }
            }
            Column::Exp { k, anchor, imag } => {
                let v = k.powu(order) * (k * (t - anchor)).exp();
                if imag {
                    v.im
                } else {
                    v.re
                }
            }
        }
    }
}

impl Column {
    fn nominal(&self, order: u32, length: f64) -> f64 {
        match *self {
            Column::Power(_) => self.derivative(length, order).abs(),
            Column::Exp { k, .. } => k.norm().powi(order as i32),
        }
    }
}

/// Derivative-order/coefficient pairs of a boundary quantity, divided by EI.
fn operator(cfg: &BeamConfig, end_row: Row, axial: f64) -> Vec<(u32, f64)> {
    let (a, b) = (cfg.g1 * cfg.g1, cfg.g2.powi(4));
    match end_row {
        Row::Kinematic(q) => vec![(q.order() as u32, 1.0)],
        Row::Shear => vec![
            (1, axial / cfg.flexural_rigidity()),
            (3, 1.0),
            (5, -a),
            (7, b),
        ],
        Row::Moment => vec![(2, 1.0), (4, -a), (6, b)],
        Row::DoubleMoment => vec![(3, a), (5, -b)],
        Row::TripleMoment => vec![(4, b)],
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Row {
    Kinematic(Quantity),
    Shear,
    Moment,
    DoubleMoment,
    TripleMoment,
}

/// Boundary rows at one end. Classical problems use only the first two pairs.
fn end_rows(bc: &BoundaryCondition, end: End, classical: bool) -> Vec<Row> {
    let naturals = [
        Row::Shear,
        Row::Moment,
        Row::DoubleMoment,
        Row::TripleMoment,
    ];
    let pairs = if classical { 2 } else { 4 };
    (0..pairs)
        .map(|i| {
            let q = Quantity::ALL[i];
            if bc.is_constrained(end, q) {
                Row::Kinematic(q)
            } else {
                naturals[i]
            }
        })
        .collect()
}

/// Boundary matrix and the nominal magnitudes of its entries.
fn boundary_matrix(
    cfg: &BeamConfig,
    bc: &BoundaryCondition,
    columns: &[Column],
    axial: f64,
    classical: bool,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let l = cfg.length;
    let mut ops = Vec::new();
    for (end, t) in [(End::Left, 0.0), (End::Right, l)] {
        for row in end_rows(bc, end, classical) {
            ops.push((t, operator(cfg, row, axial)));
        }
    }
    let value = DMatrix::from_fn(ops.len(), columns.len(), |i, j| {
        let (t, op) = &ops[i];
        op.iter()
            .map(|&(d, s)| s * columns[j].derivative(*t, d))
            .sum()
    });
    let nominal = DMatrix::from_fn(ops.len(), columns.len(), |i, j| {
        ops[i]
            .1
            .iter()
            .map(|&(d, s)| s.abs() * columns[j].nominal(d, l))
            .sum()
    });
    (value, nominal)
}

/// Row and column scaling from the nominal size of each entry,
/// `sum |c| |k|^d` over the operator terms. The factors depend only on `|k|`,
/// so they are smooth and positive in the scan variable and leave the zeros
/// and sign of the determinant intact. (Scaling by the actual entries would
/// track the very entries that vanish at a root.)
fn equilibrate(mut m: DMatrix<f64>, nominal: &DMatrix<f64>) -> DMatrix<f64> {
    let mut nom = nominal.clone();
    for (i, mut r) in nom.row_iter_mut().enumerate() {
        let s = r.amax();
        if s > 0.0 {
            r /= s;
            m.row_mut(i).scale_mut(1.0 / s);
        }
    }
    for (j, c) in nom.column_iter().enumerate() {
        let s = c.norm();
        if s > 0.0 {
            m.column_mut(j).scale_mut(1.0 / s);
        }
    }
    m
}

/// Real columns for the roots `u = k^2`, in an order that stays fixed while
/// the roots move continuously (real roots ascending, then complex pairs).
fn real_columns(us: &[Complex<f64>], length: f64) -> Vec<Column> {
    let scale = us.iter().map(|u| u.norm()).fold(0.0, f64::max);
    let is_real = |u: &Complex<f64>| u.im.abs() <= 1e-12 * scale;
    let mut reals: Vec<f64> = us.iter().filter(|u| is_real(u)).map(|u| u.re).collect();
    reals.sort_by(f64::total_cmp);
    let mut pairs: Vec<Complex<f64>> = us
        .iter()
        .filter(|u| !is_real(u) && u.im > 0.0)
        .copied()
        .collect();
    pairs.sort_by(|a, b| a.re.total_cmp(&b.re));

    let mut cols = Vec::with_capacity(us.len() * 2);
    for u in reals {
        if u > 0.0 {
            let k = Complex::new(u.sqrt(), 0.0);
            cols.push(Column::Exp {
                k,
                anchor: length,
                imag: false,
            });
            cols.push(Column::Exp {
                k: -k,
                anchor: 0.0,
                imag: false,
            });
        } else if u < 0.0 {
            let k = Complex::new(0.0, (-u).sqrt());
            cols.push(Column::Exp {
                k,
                anchor: 0.0,
                imag: false,
            });
            cols.push(Column::Exp {
                k,
                anchor: 0.0,
                imag: true,
            });
        } else {
            cols.push(Column::Power(0));
            cols.push(Column::Power(1));
        }
    }
    for u in pairs {
        let k = u.sqrt(); // Re k > 0
        for (kk, anchor) in [(k, length), (-k, 0.0)] {
            cols.push(Column::Exp {
                k: kk,
                anchor,
                imag: false,
            });
            cols.push(Column::Exp {
                k: kk,
                anchor,
                imag: true,
            });
        }
    }
    cols
}

fn repeated(us: &[Complex<f64>]) -> bool {
    let scale = us.iter().map(|u| u.norm()).fold(0.0, f64::max);
    us.iter()
        .enumerate()
        .any(|(i, a)| us[i + 1..].iter().any(|b| (a - b).norm() <= 1e-8 * scale))
}

/// Roots `k` of a characteristic polynomial that is even in `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicRoots {
    /// Coefficients in `k^2`, highest power first.
    pub coefficients: Vec<f64>,
    /// Roots in `u = k^2`.
    pub squared: Vec<Complex<f64>>,
}

impl CharacteristicRoots {
    fn from_coefficients(coefficients: Vec<f64>) -> Result<Self> {
        let squared = polynomial_roots(&coefficients)?;
        Ok(Self {
            coefficients,
            squared,
        })
    }

    /// All roots `k = ±sqrt(u)`.
    pub fn roots(&self) -> Vec<Complex<f64>> {
        self.squared
            .iter()
            .flat_map(|u| {
                let s = u.sqrt();
                [s, -s]
            })
            .collect()
    }

    /// Largest residual of the polynomial in `k`, relative to its largest term.
    pub fn max_relative_residual(&self) -> f64 {
        // the polynomial in k has the coefficients interleaved with zeros
        let mut ck = Vec::with_capacity(2 * self.coefficients.len() - 1);
        for (i, &c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                ck.push(0.0);
            }
            ck.push(c);
        }
        self.roots()
            .into_iter()
            .map(|k| relative_residual(&ck, k))
            .fold(0.0, f64::max)
    }
}

fn require_gradient(cfg: &BeamConfig) -> Result<bool> {
    cfg.validate()?;
    match (cfg.g1 == 0.0, cfg.g2 == 0.0) {
        (true, true) => Ok(true),
        (false, true) => Err(Error::Unsupported(
            "g2 = 0 with g1 > 0 reduces the equation to sixth order".into(),
        )),
        _ => Ok(false),
    }
}

fn require_bc(bc: &BoundaryCondition, allowed: &[BoundaryCondition], what: &str) -> Result<()> {
    if allowed.contains(bc) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{what} oracle is not available for '{bc}' supports"
        )))
    }
}

/// Exponents `n > m > 0` of the homogeneous static solution
/// (`g2^4 k^4 - g1^2 k^2 + 1 = 0`). Needs `g1 / g2 > sqrt 2`.
pub fn static_exponents(cfg: &BeamConfig) -> Result<(f64, f64)> {
    let a = cfg.g1 * cfg.g1;
    let b = cfg.g2.powi(4);
    let disc = a * a - 4.0 * b;
    if !(cfg.g2 > 0.0 && disc > 0.0) {
        return Err(invalid(format!(
            "static solution needs g1/g2 > sqrt(2), got g1 = {}, g2 = {}",
            cfg.g1, cfg.g2
        )));
    }
    let n = ((a + disc.sqrt()) / (2.0 * b)).sqrt();
    let m = ((a - disc.sqrt()) / (2.0 * b)).sqrt();
    Ok((n, m))
}

/// Roots for free vibration at nondimensional frequency `omega_bar`:
/// `g2^4 k^8 - g1^2 k^6 + k^4 - Omega = 0` with `Omega = omega_bar^2 / L^4`.
pub fn vibration_roots(cfg: &BeamConfig, omega_bar: f64) -> Result<CharacteristicRoots> {
    let om = omega_bar * omega_bar / cfg.length.powi(4);
    CharacteristicRoots::from_coefficients(vec![cfg.g2.powi(4), -cfg.g1 * cfg.g1, 1.0, 0.0, -om])
}

/// Non-zero roots for axial compression `p_bar = P L^2 / EI`:
/// `g2^4 u^3 - g1^2 u^2 + u + P/EI = 0` with `u = k^2`.
pub fn buckling_roots(cfg: &BeamConfig, p_bar: f64) -> Result<CharacteristicRoots> {
    let p_ei = p_bar / cfg.length.powi(2);
    CharacteristicRoots::from_coefficients(vec![cfg.g2.powi(4), -cfg.g1 * cfg.g1, 1.0, p_ei])
}

/// Fourth-order resultants at a beam end (all including EI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resultants {
    pub shear: f64,
    pub moment: f64,
    pub double_moment: f64,
    pub triple_moment: f64,
}

/// Closed-form static deflection under the uniform load.
#[derive(Debug, Clone)]
pub struct StaticSolution {
    config: BeamConfig,
    columns: Vec<Column>,
    coefficients: Vec<f64>,
    /// `w_p = particular * t^4`
    particular: f64,
    /// Condition estimate of the equilibrated boundary system.
    pub condition: f64,
}

impl StaticSolution {
    fn t(&self, x: f64) -> f64 {
        x + self.config.length / 2.0
    }

    /// `order`-th derivative of `w` at the centred coordinate `x in [-L/2, L/2]`.
    pub fn derivative(&self, x: f64, order: u32) -> f64 {
        let t = self.t(x);
        let hom: f64 = self
            .columns
            .iter()
            .zip(&self.coefficients)
            .map(|(c, a)| a * c.derivative(t, order))
            .sum();
        hom + self.particular * Column::Power(4).derivative(t, order)
    }

    pub fn deflection(&self, x: f64) -> f64 {
        self.derivative(x, 0)
    }

    pub fn slope(&self, x: f64) -> f64 {
        self.derivative(x, 1)
    }

    fn scale(&self) -> f64 {
        let c = &self.config;
        100.0 * c.flexural_rigidity() / (c.load * c.length.powi(4))
    }

    /// `100 EI w / (q L^4)`.
    pub fn nondimensional_deflection(&self, x: f64) -> f64 {
        self.deflection(x) * self.scale()
    }

    /// `100 EI w' / (q L^3)`.
    pub fn nondimensional_slope(&self, x: f64) -> f64 {
        self.slope(x) * self.scale() * self.config.length
    }

    pub fn resultants(&self, end: End) -> Resultants {
        let c = &self.config;
        let x = match end {
            End::Left => -c.length / 2.0,
            End::Right => c.length / 2.0,
        };
        let ei = c.flexural_rigidity();
        let d = |k| self.derivative(x, k);
        let (a, b) = (c.g1 * c.g1, c.g2.powi(4));
        Resultants {
            shear: ei * (d(3) - a * d(5) + b * d(7)),
            moment: ei * (d(2) - a * d(4) + b * d(6)),
            double_moment: ei * (a * d(3) - b * d(5)),
            triple_moment: ei * b * d(4),
        }
    }

    /// `EI (w'''' - g1^2 w^(6) + g2^4 w^(8)) - q` at `x`.
    pub fn ode_residual(&self, x: f64) -> f64 {
        let c = &self.config;
        let d = |k| self.derivative(x, k);
        c.flexural_rigidity() * (d(4) - c.g1 * c.g1 * d(6) + c.g2.powi(4) * d(8)) - c.load
    }
}

/// Static deflection of the simply supported beam under uniform load.
pub fn static_oracle(cfg: &BeamConfig, bc: &BoundaryCondition) -> Result<StaticSolution> {
    require_bc(bc, &[BoundaryCondition::simply_supported()], "static")?;
    let classical = require_gradient(cfg)?;
    let l = cfg.length;
    let ei = cfg.flexural_rigidity();
    let particular = cfg.load / (24.0 * ei);
    if classical {
        // w = q/(24 EI) (t^4 - 2 L t^3 + L^3 t)
        return Ok(StaticSolution {
            config: *cfg,
            columns: (0..4).map(Column::Power).collect(),
            coefficients: vec![0.0, particular * l.powi(3), 0.0, -2.0 * particular * l],
            particular,
            condition: 1.0,
        });
    }
    let (n, m) = static_exponents(cfg)?;
    let mut columns: Vec<Column> = (0..4).map(Column::Power).collect();
    for k in [n, m] {
        let k = Complex::new(k, 0.0);
        columns.push(Column::Exp {
            k,
            anchor: l,
            imag: false,
        });
        columns.push(Column::Exp {
            k: -k,
            anchor: 0.0,
            imag: false,
        });
    }
    let (a, _) = boundary_matrix(cfg, bc, &columns, 0.0, false);
    let mut rhs = DVector::zeros(8);
    let mut r = 0;
    for (end, t) in [(End::Left, 0.0), (End::Right, l)] {
        for row in end_rows(bc, end, false) {
            let op = operator(cfg, row, 0.0);
            rhs[r] = -particular
                * op.iter()
                    .map(|&(d, s)| s * Column::Power(4).derivative(t, d))
                    .sum::<f64>();
            r += 1;
        }
    }
    // equilibrate rows (with the rhs) and columns, then solve
    let mut scaled = a.clone();
    for i in 0..8 {
        let s = scaled.row(i).amax();
        scaled.row_mut(i).scale_mut(1.0 / s);
        rhs[i] /= s;
    }
    let col_scale: Vec<f64> = (0..8).map(|j| scaled.column(j).norm()).collect();
    for (j, s) in col_scale.iter().enumerate() {
        scaled.column_mut(j).scale_mut(1.0 / s);
    }
    let sv = SortedSvd::new(&scaled).singular_values;
    let condition = sv[0] / sv[7];
    if condition.is_nan() || condition > MAX_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    let y = scaled
        .lu()
        .solve(&rhs)
        .ok_or(Error::IllConditioned { condition })?;
    let coefficients = y.iter().zip(&col_scale).map(|(v, s)| v / s).collect();
    Ok(StaticSolution {
        config: *cfg,
        columns,
        coefficients,
        particular,
        condition,
    })
}

/// Eigenvalues located by a determinant scan.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending nondimensional values (`omega_bar` or `P_bar`).
    pub values: Vec<f64>,
    /// `|det|` at each value relative to the determinant at its bracket ends.
    /// Zero for closed-form values.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub step: f64,
    pub max: f64,
    /// Extend the scan window by doubling up to this many times when too
    /// few roots were found.
    pub extensions: u32,
}

impl ScanOptions {
    pub fn frequency() -> Self {
        Self {
            step: 0.5,
            max: 600.0,
            extensions: 3,
        }
    }

    pub fn buckling() -> Self {
        Self {
            step: 0.05,
            max: 50.0,
            extensions: 3,
        }
    }
}

/// Sign-change scan plus bisection. Brackets whose midpoint determinant is
/// not small relative to the bracket ends are discontinuities (a root
/// classification change) and are skipped.
fn scan(f: &dyn Fn(f64) -> Result<f64>, wanted: usize, opts: &ScanOptions) -> Result<Spectrum> {
    let mut out = Spectrum {
        values: Vec::new(),
        residuals: Vec::new(),
    };
    let mut max = opts.max;
    let mut a = opts.step;
    let mut fa = f(a)?;
    for ext in 0..=opts.extensions {
        while a < max && out.values.len() < wanted {
            let b = (a + opts.step).min(max);
            let fb = f(b)?;
            if fa == 0.0 || fa * fb < 0.0 {
                let (mut lo, mut hi, mut flo) = (a, b, fa);
                if fa == 0.0 {
                    hi = lo;
                }
                while hi - lo > BISECTION_TOL * hi.abs().max(1.0) {
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid)?;
                    if fm == 0.0 {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    if flo * fm < 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                let root = 0.5 * (lo + hi);
                let local = fa.abs().max(fb.abs());
                let residual = if local > 0.0 {
                    f(root)?.abs() / local
                } else {
                    0.0
                };
                if residual <= DET_RESIDUAL_TOL {
                    out.values.push(root);
                    out.residuals.push(residual);
                }
            }
            a = b;
            fa = fb;
        }
        if out.values.len() >= wanted || ext == opts.extensions {
            break;
        }
        max *= 2.0;
    }
    if out.values.len() < wanted {
        return Err(Error::BracketFailure {
            found: out.values.len(),
            wanted,
            upper: max,
            step: opts.step,
        });
    }
    out.values.truncate(wanted);
    out.residuals.truncate(wanted);
    Ok(out)
}

fn determinant((m, nominal): (DMatrix<f64>, DMatrix<f64>)) -> f64 {
    equilibrate(m, &nominal).determinant()
}

/// Scaled frequency determinant at `omega_bar`.
pub fn frequency_determinant(
    cfg: &BeamConfig,
    bc: &BoundaryCondition,
    omega_bar: f64,
) -> Result<f64> {
    let mut w = omega_bar;
    let mut roots = vibration_roots(cfg, w)?;
    if repeated(&roots.squared) {
        w *= 1.0 + 1e-9;
        roots = vibration_roots(cfg, w)?;
    }
    let cols = real_columns(&roots.squared, cfg.length);
    Ok(determinant(boundary_matrix(cfg, bc, &cols, 0.0, false)))
}

/// Scaled buckling determinant at `p_bar`.
pub fn buckling_determinant(cfg: &BeamConfig, bc: &BoundaryCondition, p_bar: f64) -> Result<f64> {
    let mut p = p_bar;
    let mut roots = buckling_roots(cfg, p)?;
    if repeated(&roots.squared) {
        p *= 1.0 + 1e-9;
        roots = buckling_roots(cfg, p)?;
    }
    let mut cols = vec![Column::Power(0), Column::Power(1)];
    cols.extend(real_columns(&roots.squared, cfg.length));
    let axial = p * cfg.flexural_rigidity() / cfg.length.powi(2);
    Ok(determinant(boundary_matrix(cfg, bc, &cols, axial, false)))
}

/// Lowest `modes` natural frequencies `omega_bar = omega L^2 sqrt(rho A / EI)`.
/// Rigid-body modes of free beams are not included.
pub fn frequency_oracle(
    cfg: &BeamConfig,
    bc: &BoundaryCondition,
    modes: usize,
) -> Result<Spectrum> {
    frequency_oracle_with(cfg, bc, modes, &ScanOptions::frequency())
}

pub fn frequency_oracle_with(
    cfg: &BeamConfig,
    bc: &BoundaryCondition,
    modes: usize,
    opts: &ScanOptions,
) -> Result<Spectrum> {
    let ss = BoundaryCondition::simply_supported();
    let ff = BoundaryCondition::free_free();
    require_bc(bc, &[ss, ff], "frequency")?;
    if require_gradient(cfg)? {
        let values = if *bc == ss {
            (1..=modes)
                .map(|n| (n as f64 * std::f64::consts::PI).powi(2))
                .collect()
        } else {
            (1..=modes)
                .map(|n| free_free_classical(n).powi(2))
                .collect()
        };
        return Ok(Spectrum {
            values,
            residuals: vec![0.0; modes],
        });
    }
    scan(&|w| frequency_determinant(cfg, bc, w), modes, opts)
}

/// `n`-th positive root of `cos(b) cosh(b) = 1`.
fn free_free_classical(n: usize) -> f64 {
    let f = |b: f64| b.cos() - 1.0 / b.cosh();
    let guess = (n as f64 + 0.5) * std::f64::consts::PI;
    let (mut lo, mut hi) = (guess - 0.3, guess + 0.3);
    let mut flo = f(lo);
    while hi - lo > 1e-15 * hi {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// Lowest `count` critical loads `P_bar = P L^2 / EI` of the simply supported beam.
pub fn buckling_oracle(cfg: &BeamConfig, bc: &BoundaryCondition, count: usize) -> Result<Spectrum> {
    buckling_oracle_with(cfg, bc, count, &ScanOptions::buckling())
}

pub fn buckling_oracle_with(
    cfg: &BeamConfig,
    bc: &BoundaryCondition,
    count: usize,
    opts: &ScanOptions,
) -> Result<Spectrum> {
    require_bc(bc, &[BoundaryCondition::simply_supported()], "buckling")?;
    if require_gradient(cfg)? {
        return Ok(Spectrum {
            values: (1..=count)
                .map(|n| (n as f64 * std::f64::consts::PI).powi(2))
                .collect(),
            residuals: vec![0.0; count],
        });
    }
    scan(&|p| buckling_determinant(cfg, bc, p), count, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> BeamConfig {
        BeamConfig::benchmark()
    }

    fn ss() -> BoundaryCondition {
        BoundaryCondition::simply_supported()
    }

    #[test]
    fn static_exponents_of_benchmark() {
        let (n, m) = static_exponents(&cfg()).unwrap();
        // g2^4 k^4 - g1^2 k^2 + 1 = 0
        for k in [n, m] {
            let r = 1e-8 * k.powi(4) - 2.25e-4 * k * k + 1.0;
            assert!(r.abs() < 1e-10);
        }
        assert!(n > m);
        let bad = BeamConfig { g1: 0.01, ..cfg() };
        assert!(static_exponents(&bad).is_err());
    }

    #[test]
    fn static_solution_symmetric_and_satisfies_bcs() {
        let s = static_oracle(&cfg(), &ss()).unwrap();
        for x in [0.05, 0.17, 0.33, 0.49] {
            let (a, b) = (s.deflection(x), s.deflection(-x));
            assert!((a - b).abs() <= 1e-10 * a.abs());
        }
        let w0 = s.deflection(0.0);
        for end in [End::Left, End::Right] {
            let x = if end == End::Left { -0.5 } else { 0.5 };
            assert!(s.deflection(x).abs() <= 1e-8 * w0);
            assert!(s.derivative(x, 2).abs() <= 1e-8 * w0);
            assert!(s.derivative(x, 3).abs() <= 1e-8 * w0);
            let r = s.resultants(end);
            assert!(r.moment.abs() <= 1e-8 * cfg().load);
        }
    }

    #[test]
    fn classical_static_is_five_over_384() {
        let s = static_oracle(&cfg().classical(), &ss()).unwrap();
        assert!((s.nondimensional_deflection(0.0) - 500.0 / 384.0).abs() < 1e-12);
        assert!((s.nondimensional_slope(-0.5) - 100.0 / 24.0).abs() < 1e-12);
    }

    #[test]
    fn unsupported_inputs() {
        let first_gradient = BeamConfig { g2: 0.0, ..cfg() };
        assert!(matches!(
            frequency_oracle(&first_gradient, &ss(), 1),
            Err(Error::Unsupported(_))
        ));
        let cc = BoundaryCondition::clamped_clamped();
        assert!(matches!(
            static_oracle(&cfg(), &cc),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            buckling_oracle(&cfg(), &BoundaryCondition::free_free(), 1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn classical_free_free_roots() {
        let expect = [4.730040744862704, 7.853204624095838, 10.995607838001671];
        for (n, e) in expect.iter().enumerate() {
            assert!((free_free_classical(n + 1) - e).abs() < 1e-12);
        }
    }

    #[test]
    fn classical_limits() {
        let c = cfg().classical();
        let f = frequency_oracle(&c, &ss(), 2).unwrap();
        assert!((f.values[0] - std::f64::consts::PI.powi(2)).abs() < 1e-14);
        let p = buckling_oracle(&c, &ss(), 1).unwrap();
        assert!((p.values[0] - std::f64::consts::PI.powi(2)).abs() < 1e-14);
    }

    #[test]
    fn near_classical_gradient_scan_approaches_euler_values() {
        // small gradients: the scanned roots sit just above the classical ones
        let c = BeamConfig {
            g1: 1e-3,
            g2: 5e-4,
            ..cfg()
        };
        let f = frequency_oracle_with(&c, &ss(), 2, &ScanOptions::frequency()).unwrap();
        assert!((f.values[0] / std::f64::consts::PI.powi(2) - 1.0).abs() < 1e-3);
        let p = buckling_oracle(&c, &ss(), 1).unwrap();
        assert!((p.values[0] / std::f64::consts::PI.powi(2) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn buckling_roots_residual_at_critical_load() {
        let p = buckling_oracle(&cfg(), &ss(), 1).unwrap();
        let r = buckling_roots(&cfg(), p.values[0]).unwrap();
        assert!(r.max_relative_residual() <= 1e-8);
        assert!(p.residuals[0] <= 1e-6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn vibration_roots_residual(w in 0.5f64..600.0) {
            let r = vibration_roots(&cfg(), w).unwrap();
            prop_assert_eq!(r.roots().len(), 8);
            prop_assert!(r.max_relative_residual() <= 1e-8);
        }

        #[test]
        fn static_ode_residual(x in -0.5f64..=0.5) {
            let s = static_oracle(&cfg(), &ss()).unwrap();
            prop_assert!(s.ode_residual(x).abs() <= 1e-6 * cfg().load);
        }
    }
}
