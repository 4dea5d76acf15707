//! Run specifications and the driver behind the `gradbeam` binary.
//!
//! Settings come from three layers, later ones winning: the built-in
//! benchmark data, an optional `key = value` file, and command-line flags.
//! Everything funnels through [`Settings`] so the file and the flags share one
//! parser.

use std::collections::BTreeMap;

use crate::dof::End;
use crate::element::{assemble, BasisKind, BeamConfig};
use crate::error::{invalid, Error, Result};
use crate::gll::GllRule;
use crate::hermite::HermiteBasis;
use crate::lagrange::{BoundaryRowRule, DqMatrices, ModifiedDq};
use crate::oracle;
use crate::report::{self, Format, Record};
use crate::solve::{self, Analysis, BoundaryCondition};

pub const MIN_NODES: usize = 5;
pub const MAX_NODES: usize = 41;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Static,
    Modal,
    Buckling,
    Converge,
    DumpWeights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisChoice {
    Lagrange,
    Hermite,
    Oracle,
    All,
}

impl BasisChoice {
    fn elements(self) -> Vec<BasisKind> {
        match self {
            BasisChoice::Lagrange => vec![BasisKind::Lagrange],
            BasisChoice::Hermite => vec![BasisKind::Hermite],
            BasisChoice::Oracle => vec![],
            BasisChoice::All => vec![BasisKind::Lagrange, BasisKind::Hermite],
        }
    }

    fn oracle(self) -> bool {
        matches!(self, BasisChoice::Oracle | BasisChoice::All)
    }
}

/// Matrices `dump-weights` can print.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixDump {
    /// Modified Lagrange DQ matrix of the given derivative order (1..=4).
    Lagrange(usize),
    /// Hermite derivative matrix of the given order (1..=4).
    Hermite(usize),
    Stiffness,
    Geometric,
    Mass,
}

impl std::str::FromStr for MatrixDump {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "abar" => MatrixDump::Lagrange(1),
            "bbar" => MatrixDump::Lagrange(2),
            "cbar" => MatrixDump::Lagrange(3),
            "dbar" => MatrixDump::Lagrange(4),
            "g1" | "g2" | "g3" | "g4" => MatrixDump::Hermite(s[1..].parse().expect("digit")),
            "k" | "K" => MatrixDump::Stiffness,
            "g" | "G" => MatrixDump::Geometric,
            "m" | "M" => MatrixDump::Mass,
            other => return Err(invalid(format!("unknown matrix '{other}'"))),
        })
    }
}

/// Flat `key -> value` settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parse `key = value` lines. `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("line {}: expected key = value", lineno + 1)))?;
            out.set(k.trim(), v.trim());
        }
        Ok(out)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.0.insert(normalize_key(key), value.into());
    }

    /// Later settings win.
    pub fn merge(&mut self, other: &Settings) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(&normalize_key(key)).map(String::as_str)
    }

    fn float(&self, key: &str) -> Result<Option<f64>> {
        self.get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| invalid(format!("{key}: '{v}' is not a number")))
            })
            .transpose()
    }

    fn uint(&self, key: &str) -> Result<Option<usize>> {
        self.get(key)
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| invalid(format!("{key}: '{v}' is not a count")))
            })
            .transpose()
    }
}

fn normalize_key(k: &str) -> String {
    match k.trim() {
        // single-letter physical symbols are case-sensitive on the command
        // line but not in files
        "l" | "L" | "length" => "L".into(),
        "e" | "E" => "E".into(),
        "i" | "I" => "I".into(),
        "a" | "A" => "A".into(),
        "p" | "P" => "P".into(),
        other => other.to_ascii_lowercase(),
    }
}

const KNOWN_KEYS: [&str; 17] = [
    "preset", "basis", "n", "bc", "g1", "g2", "L", "E", "I", "A", "rho", "q", "P", "modes",
    "format", "jobs", "analysis",
];

/// Node counts: `11`, `7..21` (inclusive), `7..21:2`, or `5,7,9`.
pub fn parse_nodes(s: &str) -> Result<Vec<usize>> {
    let bad = || invalid(format!("invalid node specification '{s}'"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let out: Vec<usize> = if let Some((range, step)) = s.split_once(':') {
        let (a, b) = range.split_once("..").ok_or_else(bad)?;
        let step = num(step)?;
        if step == 0 {
            return Err(bad());
        }
        (num(a)?..=num(b)?).step_by(step).collect()
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    for &n in &out {
        if !(MIN_NODES..=MAX_NODES).contains(&n) {
            return Err(invalid(format!(
                "node count {n} outside {MIN_NODES}..={MAX_NODES}"
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub verb: Verb,
    /// Analysis performed (for `converge`, the swept one).
    pub analysis: Analysis,
    pub basis: BasisChoice,
    pub nodes: Vec<usize>,
    pub bc: BoundaryCondition,
    pub config: BeamConfig,
    pub modes: usize,
    pub format: Format,
    pub jobs: usize,
    pub matrix: Option<MatrixDump>,
}

impl RunSpec {
    pub fn from_settings(verb: Verb, s: &Settings) -> Result<Self> {
        for k in s.0.keys() {
            if !KNOWN_KEYS.contains(&k.as_str()) && k != "matrix" {
                return Err(invalid(format!("unknown setting '{k}'")));
            }
        }
        let mut config = match s.get("preset") {
            None | Some("paper-sec3") | Some("benchmark") => BeamConfig::benchmark(),
            Some(other) => return Err(invalid(format!("unknown preset '{other}'"))),
        };
        let fields: [(&str, &mut f64); 9] = [
            ("L", &mut config.length),
            ("E", &mut config.youngs_modulus),
            ("I", &mut config.inertia),
            ("A", &mut config.area),
            ("rho", &mut config.density),
            ("q", &mut config.load),
            ("P", &mut config.axial_load),
            ("g1", &mut config.g1),
            ("g2", &mut config.g2),
        ];
        for (key, slot) in fields {
            if let Some(v) = s.float(key)? {
                *slot = v;
            }
        }
        config.validate()?;

        let analysis = match verb {
            Verb::Static | Verb::DumpWeights => Analysis::Static,
            Verb::Modal => Analysis::Modal,
            Verb::Buckling => Analysis::Buckling,
            Verb::Converge => match s.get("analysis").unwrap_or("modal") {
                "static" => Analysis::Static,
                "modal" => Analysis::Modal,
                "buckling" => Analysis::Buckling,
                other => return Err(invalid(format!("unknown analysis '{other}'"))),
            },
        };
        let basis = match s.get("basis").unwrap_or("all") {
            "lagrange" => BasisChoice::Lagrange,
            "hermite" => BasisChoice::Hermite,
            "oracle" => BasisChoice::Oracle,
            "all" => BasisChoice::All,
            other => return Err(invalid(format!("unknown basis '{other}'"))),
        };
        let default_nodes = match (verb, analysis) {
            (Verb::Converge, Analysis::Buckling) => "5..15",
            (Verb::Converge, _) => "7..21:2",
            (_, Analysis::Modal) => "21",
            (_, Analysis::Buckling) => "15",
            _ => "11",
        };
        let nodes = parse_nodes(s.get("n").unwrap_or(default_nodes))?;
        let bc: BoundaryCondition = s.get("bc").unwrap_or("ss").parse()?;
        let modes = s.uint("modes")?.unwrap_or(match analysis {
            Analysis::Modal => 6,
            _ => 1,
        });
        if modes == 0 {
            return Err(invalid("modes must be at least 1"));
        }
        let format = match s.get("format").unwrap_or("table") {
            "table" => Format::Table,
            "csv" => Format::Csv,
            other => return Err(invalid(format!("unknown format '{other}'"))),
        };
        let jobs = s.uint("jobs")?.unwrap_or(1).max(1);
        let matrix = s.get("matrix").map(str::parse).transpose()?;
        Ok(Self {
            verb,
            analysis,
            basis,
            nodes,
            bc,
            config,
            modes,
            format,
            jobs,
            matrix,
        })
    }
}

/// Run the spec and return the rendered report.
pub fn run(spec: &RunSpec) -> Result<String> {
    if let (Verb::DumpWeights, Some(m)) = (spec.verb, spec.matrix) {
        return dump_matrix(spec, m);
    }
    Ok(report::render(&records(spec)?, spec.format))
}

/// Run the spec and return its records in deterministic order.
pub fn records(spec: &RunSpec) -> Result<Vec<Record>> {
    if spec.verb == Verb::DumpWeights {
        return weights(spec);
    }
    let elements = spec.basis.elements();
    let tasks: Vec<(BasisKind, usize)> = elements
        .iter()
        .flat_map(|&b| spec.nodes.iter().map(move |&n| (b, n)))
        .collect();
    let results = run_parallel(&tasks, spec.jobs, |&(basis, n)| {
        element_records(spec, basis, n)
    })?;
    let mut out: Vec<Record> = results.into_iter().flatten().collect();
    match oracle_records(spec) {
        _ if !spec.basis.oracle() => {}
        Ok(r) => out.extend(r),
        // `all` means every basis that covers the case
        Err(e) if spec.basis == BasisChoice::All && matches!(e.root(), Error::Unsupported(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// Map `f` over `items` on up to `jobs` threads, keeping input order.
fn run_parallel<T: Sync, R: Send>(
    items: &[T],
    jobs: usize,
    f: impl Fn(&T) -> Result<R> + Sync,
) -> Result<Vec<R>> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let f = &f;
    let parts: Vec<Result<Vec<R>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| scope.spawn(move || c.iter().map(f).collect::<Result<Vec<R>>>()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn context(basis: &str, n: usize) -> impl Fn(Error) -> Error + '_ {
    move |e| e.context(format!("{basis} N={n}"))
}

fn element_records(spec: &RunSpec, basis: BasisKind, n: usize) -> Result<Vec<Record>> {
    let name = basis.name();
    let ctx = context(name, n);
    let e = assemble(&spec.config, basis, n).map_err(&ctx)?;
    let sys = solve::apply_bc(&e, &spec.bc).map_err(&ctx)?;
    let rec = |quantity, index, value| Record {
        n: Some(n),
        basis: name,
        quantity,
        index,
        value,
    };
    let mut out = Vec::new();
    match spec.analysis {
        Analysis::Static => {
            let r = solve::solve_static(&sys).map_err(&ctx)?;
            if let Some(v) = r.center_deflection() {
                out.push(rec("w_bar_center", 1, v));
            }
            out.push(rec(
                "slope",
                1,
                r.end_slope(End::Left).expect("static result"),
            ));
            if let Some(v) = r.nondimensional_end_slope(End::Left) {
                out.push(rec("slope_bar", 1, v));
            }
            if spec.verb != Verb::Converge {
                if let Some(w) = r.nondimensional_deflection() {
                    out.extend(
                        w.into_iter()
                            .enumerate()
                            .map(|(i, v)| rec("w_bar", i + 1, v)),
                    );
                }
            }
        }
        Analysis::Modal => {
            // sweeps start at element sizes that may hold fewer modes than asked
            let opts = solve::ModalOptions {
                allow_fewer: spec.verb == Verb::Converge,
                ..Default::default()
            };
            let r = solve::solve_modal_with(&sys, spec.modes, &opts).map_err(&ctx)?;
            out.extend(
                r.frequencies
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| rec("omega_bar", i + 1, v)),
            );
            out.extend(
                r.rigid_frequencies
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| rec("rigid_omega_bar", i + 1, v)),
            );
        }
        Analysis::Buckling => {
            let r = solve::solve_buckling(&sys, spec.modes).map_err(&ctx)?;
            out.extend(
                r.buckling_loads
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| rec("p_bar", i + 1, v)),
            );
        }
    }
    Ok(out)
}

fn oracle_records(spec: &RunSpec) -> Result<Vec<Record>> {
    let cfg = &spec.config;
    let mut out = Vec::new();
    let rec = |n, quantity, index, value| Record {
        n,
        basis: "oracle",
        quantity,
        index,
        value,
    };
    match spec.analysis {
        Analysis::Static => {
            let s = oracle::static_oracle(cfg, &spec.bc)?;
            let left = -cfg.length / 2.0;
            out.push(rec(
                None,
                "w_bar_center",
                1,
                s.nondimensional_deflection(0.0),
            ));
            out.push(rec(None, "slope", 1, s.slope(left)));
            out.push(rec(None, "slope_bar", 1, s.nondimensional_slope(left)));
            if spec.verb != Verb::Converge {
                for &n in &spec.nodes {
                    let rule = GllRule::new(n)?;
                    for (i, &xi) in rule.nodes().iter().enumerate() {
                        let v = s.nondimensional_deflection(xi * cfg.length / 2.0);
                        out.push(rec(Some(n), "w_bar", i + 1, v));
                    }
                }
            }
        }
        Analysis::Modal => {
            let f = oracle::frequency_oracle(cfg, &spec.bc, spec.modes)?;
            out.extend(
                f.values
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| rec(None, "omega_bar", i + 1, v)),
            );
        }
        Analysis::Buckling => {
            let p = oracle::buckling_oracle(cfg, &spec.bc, spec.modes)?;
            out.extend(
                p.values
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| rec(None, "p_bar", i + 1, v)),
            );
        }
    }
    Ok(out)
}

fn weights(spec: &RunSpec) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for &n in &spec.nodes {
        let rule = GllRule::new(n)?;
        for (quantity, values) in [("node", rule.nodes()), ("weight", rule.weights())] {
            out.extend(values.iter().enumerate().map(|(i, &value)| Record {
                n: Some(n),
                basis: "gll",
                quantity,
                index: i + 1,
                value,
            }));
        }
    }
    Ok(out)
}

fn dump_matrix(spec: &RunSpec, which: MatrixDump) -> Result<String> {
    let mut s = String::new();
    for &n in &spec.nodes {
        let rule = GllRule::new(n)?;
        let m = match which {
            MatrixDump::Lagrange(k) => {
                ModifiedDq::new(&DqMatrices::from_rule(&rule), BoundaryRowRule::Composed)
                    .order(k)
                    .clone()
            }
            MatrixDump::Hermite(k) => HermiteBasis::from_rule(&rule)?.derivative_matrix(k),
            MatrixDump::Stiffness | MatrixDump::Geometric | MatrixDump::Mass => {
                let basis = match spec.basis {
                    BasisChoice::Hermite => BasisKind::Hermite,
                    BasisChoice::Lagrange => BasisKind::Lagrange,
                    _ => {
                        return Err(invalid(
                            "element matrix dumps need --basis lagrange or hermite",
                        ))
                    }
                };
                let e = assemble(&spec.config, basis, n)?;
                match which {
                    MatrixDump::Stiffness => e.stiffness,
                    MatrixDump::Geometric => e.geometric,
                    _ => e.mass,
                }
            }
        };
        s.push_str(&report::matrix_csv(&m));
    }
    Ok(s)
}
