//! Report records and their table/CSV rendering.

use std::fmt::Write as _;
use std::io::{self, Write};

use nalgebra::DMatrix;

use crate::gll::GllRule;

/// One reported number. `n` is `None` for results that do not depend on a
/// node count (analytical frequencies and loads).
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub n: Option<usize>,
    pub basis: &'static str,
    pub quantity: &'static str,
    pub index: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
}

/// Quantities indexed by node, rendered with station coordinates as headers.
const NODAL: [&str; 3] = ["w_bar", "node", "weight"];

/// Full precision: 17 significant digits.
fn full(v: f64) -> String {
    format!("{v:.16e}")
}

/// Four decimals, or four significant digits in scientific form for
/// magnitudes that would round to zero.
fn fixed(v: f64) -> String {
    if v != 0.0 && v.abs() < 5e-4 {
        format!("{v:.3e}")
    } else {
        format!("{v:.4}")
    }
}

pub fn write_csv(out: &mut impl Write, records: &[Record]) -> io::Result<()> {
    out.write_all(b"N,basis,quantity,index,value\n")?;
    for r in records {
        let n = r.n.map(|n| n.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{n},{},{},{},{}",
            r.basis,
            r.quantity,
            r.index,
            full(r.value)
        )?;
    }
    Ok(())
}

pub fn render_csv(records: &[Record]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, records).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Plain table, 4 decimals. One block per quantity (per node count for nodal
/// quantities); rows are (basis, N) series, columns the index.
pub fn render_table(records: &[Record]) -> String {
    let mut blocks: Vec<(&str, Option<usize>)> = Vec::new();
    for r in records {
        let key = (
            r.quantity,
            if NODAL.contains(&r.quantity) {
                r.n
            } else {
                None
            },
        );
        if !blocks.contains(&key) {
            blocks.push(key);
        }
    }
    let mut s = String::new();
    for (bi, &(quantity, block_n)) in blocks.iter().enumerate() {
        if bi > 0 {
            s.push('\n');
        }
        let in_block: Vec<&Record> = records
            .iter()
            .filter(|r| r.quantity == quantity && (block_n.is_none() || r.n == block_n))
            .collect();
        let width = in_block.iter().map(|r| r.index).max().unwrap_or(0);
        if block_n.is_none() && width == 1 {
            let _ = writeln!(s, "{quantity}");
            side_by_side(&mut s, &in_block);
            continue;
        }
        match block_n {
            Some(n) => {
                let _ = writeln!(s, "{quantity} (N={n})");
            }
            None => {
                let _ = writeln!(s, "{quantity}");
            }
        }
        let _ = write!(s, "{:<10}{:>4}", "basis", "N");
        match block_n {
            Some(n) => {
                let rule = GllRule::new(n).ok();
                for i in 0..width {
                    let label = rule
                        .as_ref()
                        .map_or(format!("{}", i + 1), |r| format!("{:.4}", r.nodes()[i]));
                    let _ = write!(s, "{label:>11}");
                }
            }
            None if width == 1 => {
                let _ = write!(s, "{:>11}", "value");
            }
            None => {
                for i in 1..=width {
                    let _ = write!(s, "{i:>11}");
                }
            }
        }
        s.push('\n');

        let mut series: Vec<(&str, Option<usize>)> = Vec::new();
        for r in &in_block {
            if !series.contains(&(r.basis, r.n)) {
                series.push((r.basis, r.n));
            }
        }
        for (basis, n) in series {
            let n_label = n.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
            let _ = write!(s, "{basis:<10}{n_label:>4}");
            for i in 1..=width {
                match in_block
                    .iter()
                    .find(|r| r.basis == basis && r.n == n && r.index == i)
                {
                    Some(r) => {
                        let _ = write!(s, "{:>11}", fixed(r.value));
                    }
                    None => {
                        let _ = write!(s, "{:>11}", "");
                    }
                }
            }
            s.push('\n');
        }
    }
    s
}

/// Scalar quantities: one row per N, one column per basis. N-independent
/// (analytical) values are repeated on every row.
fn side_by_side(s: &mut String, block: &[&Record]) {
    let mut bases: Vec<&str> = Vec::new();
    let mut ns: Vec<usize> = Vec::new();
    for r in block {
        if !bases.contains(&r.basis) {
            bases.push(r.basis);
        }
        if let Some(n) = r.n {
            if !ns.contains(&n) {
                ns.push(n);
            }
        }
    }
    let _ = write!(s, "{:>4}", "N");
    for b in &bases {
        let _ = write!(s, "{b:>11}");
    }
    s.push('\n');
    let rows: Vec<Option<usize>> = if ns.is_empty() {
        vec![None]
    } else {
        ns.into_iter().map(Some).collect()
    };
    for n in rows {
        let label = n.map_or_else(|| "-".to_string(), |n| n.to_string());
        let _ = write!(s, "{label:>4}");
        for b in &bases {
            let hit = block
                .iter()
                .find(|r| r.basis == *b && r.n == n)
                .or_else(|| block.iter().find(|r| r.basis == *b && r.n.is_none()));
            match hit {
                Some(r) => {
                    let _ = write!(s, "{:>11}", fixed(r.value));
                }
                None => {
                    let _ = write!(s, "{:>11}", "");
                }
            }
        }
        s.push('\n');
    }
}

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Table => render_table(records),
        Format::Csv => render_csv(records),
    }
}

/// Dense matrix as CSV rows, full precision, no header.
pub fn matrix_csv(m: &DMatrix<f64>) -> String {
    let mut s = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| full(m[(i, j)])).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(
        n: Option<usize>,
        basis: &'static str,
        quantity: &'static str,
        index: usize,
        value: f64,
    ) -> Record {
        Record {
            n,
            basis,
            quantity,
            index,
            value,
        }
    }

    #[test]
    fn csv_layout() {
        let out = render_csv(&[
            rec(Some(21), "hermite", "omega_bar", 1, 9.880969942626827),
            rec(None, "oracle", "omega_bar", 1, 0.1),
        ]);
        assert_eq!(
            out,
            "N,basis,quantity,index,value\n21,hermite,omega_bar,1,9.8809699426268267e0\n,oracle,omega_bar,1,1.0000000000000001e-1\n"
        );
    }

    #[test]
    fn table_rounds_to_four_decimals() {
        let out = render_table(&[
            rec(Some(7), "lagrange", "p_bar", 1, 9.89153),
            rec(Some(9), "lagrange", "p_bar", 1, 9.89149),
            rec(None, "oracle", "p_bar", 1, 9.892334),
        ]);
        let expect = "p_bar\n   N   lagrange     oracle\n   7     9.8915     9.8923\n   9     9.8915     9.8923\n";
        assert_eq!(out, expect);
    }

    #[test]
    fn tiny_values_use_scientific_notation() {
        assert_eq!(fixed(1.3836e-8), "1.384e-8");
        assert_eq!(fixed(0.0), "0.0000");
        assert_eq!(fixed(-2.5), "-2.5000");
    }

    #[test]
    fn nodal_blocks_use_station_headers() {
        let recs: Vec<Record> = (1..=5)
            .map(|i| rec(Some(5), "oracle", "w_bar", i, i as f64))
            .collect();
        let out = render_table(&recs);
        assert!(out.starts_with(
            "w_bar (N=5)\nbasis        N    -1.0000    -0.6547     0.0000     0.6547     1.0000\n"
        ));
    }

    #[test]
    fn matrix_dump() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, -0.5, 0.25, 2.0]);
        assert_eq!(matrix_csv(&m).lines().count(), 2);
        assert!(matrix_csv(&m).starts_with("1.0000000000000000e0,-5.0000000000000000e-1\n"));
    }
}
