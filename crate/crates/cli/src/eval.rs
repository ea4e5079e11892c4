//! Kernel evaluation over field points and tabular output.

use std::io::{self, Write};

use rayon::prelude::*;

use csgreen_core::kernels2d::{line_couple_kernels_2d, line_force_kernels_2d, PlaneBundle};
use csgreen_core::kernels3d::{force_traction_3d, moment_traction_3d, point_couple_kernels_3d, point_force_kernels_3d};
use csgreen_core::{EvalPoint2, EvalPoint3, KernelError, SurfaceNormal};

use crate::request::{EvalRequest, Format, Quantity, Source};
use crate::CliError;

/// Evaluated rows with their column names.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Points dropped inside the exclusion radius or at the source.
    pub skipped: usize,
}

fn idx(n: usize) -> impl Iterator<Item = usize> {
    1..=n
}

/// Column names for one quantity. Indices follow the tensor's own index
/// order in the name, with the first index varying fastest.
pub fn quantity_columns(dimension: usize, source: Source, q: Quantity) -> Vec<String> {
    let n = q.name();
    let d = dimension;
    let mut out = Vec::new();
    let rank1 = |out: &mut Vec<String>| out.extend(idx(d).map(|i| format!("{n}_{i}")));
    let rank2 = |out: &mut Vec<String>| {
        for s in idx(d) {
            out.extend(idx(d).map(|i| format!("{n}_{i}{s}")));
        }
    };
    match (d, source, q) {
        (3, _, Quantity::Sigma) => {
            for s in idx(3) {
                for j in idx(3) {
                    out.extend(idx(3).map(|i| format!("{n}_{j}{i}{s}")));
                }
            }
        }
        (3, _, _) => rank2(&mut out),
        (_, Source::Force, Quantity::Sigma) => {
            for r in idx(2) {
                for b in idx(2) {
                    out.extend(idx(2).map(|a| format!("{n}_{b}{a}{r}")));
                }
            }
        }
        (_, Source::Force, Quantity::Omega | Quantity::M) => rank1(&mut out),
        (_, Source::Force, _) => rank2(&mut out),
        (_, Source::Couple, Quantity::Sigma) => {
            for b in idx(2) {
                out.extend(idx(2).map(|a| format!("{n}_{b}{a}")));
            }
        }
        (_, Source::Couple, Quantity::Omega | Quantity::M) => out.push(n.to_string()),
        (_, Source::Couple, _) => rank1(&mut out),
    }
    out
}

pub fn columns(req: &EvalRequest) -> Vec<String> {
    let mut cols: Vec<String> = (1..=req.dimension).map(|k| format!("x{k}")).collect();
    for q in &req.quantities {
        cols.extend(quantity_columns(req.dimension, req.source, *q));
    }
    cols
}

fn push_mat<const N: usize>(out: &mut Vec<f64>, m: &[[f64; N]; N]) {
    for s in 0..N {
        out.extend((0..N).map(|i| m[i][s]));
    }
}

fn push_tensor<const N: usize>(out: &mut Vec<f64>, t: &[[[f64; N]; N]; N]) {
    for s in 0..N {
        for j in 0..N {
            out.extend((0..N).map(|i| t[j][i][s]));
        }
    }
}

fn row_3d(req: &EvalRequest, x: [f64; 3]) -> Result<Vec<f64>, KernelError> {
    let p = EvalPoint3::new(x)?;
    let b = match req.source {
        Source::Force => point_force_kernels_3d(&req.material, &p)?,
        Source::Couple => point_couple_kernels_3d(&req.material, &p)?,
    };
    let normal = req.normal.as_ref().map(|n| SurfaceNormal::normalized([n[0], n[1], n[2]]).expect("validated normal"));
    let mut out = x.to_vec();
    for q in &req.quantities {
        match q {
            Quantity::U => push_mat(&mut out, &b.u),
            Quantity::Omega => push_mat(&mut out, &b.omega),
            Quantity::Sigma => push_tensor(&mut out, &b.sigma),
            Quantity::Mu => push_mat(&mut out, &b.mu),
            Quantity::T => push_mat(&mut out, &force_traction_3d(&b, normal.as_ref().expect("validated normal"))),
            Quantity::M => push_mat(&mut out, &moment_traction_3d(&b, normal.as_ref().expect("validated normal"))),
        }
    }
    Ok(out)
}

fn row_2d(req: &EvalRequest, x: [f64; 2]) -> Result<Vec<f64>, KernelError> {
    let p = EvalPoint2::new(x)?;
    let normal = req.normal.as_ref().map(|n| SurfaceNormal::normalized([n[0], n[1]]).expect("validated normal"));
    let n = || normal.as_ref().expect("validated normal");
    let mut out = x.to_vec();
    match req.source {
        Source::Force => {
            let b = line_force_kernels_2d(&req.material, &p)?;
            for q in &req.quantities {
                match q {
                    Quantity::U => push_mat(&mut out, &b.u),
                    Quantity::Omega => out.extend(b.omega),
                    Quantity::Sigma => push_tensor(&mut out, &b.sigma),
                    Quantity::Mu => push_mat(&mut out, &b.mu),
                    Quantity::T => push_mat(&mut out, &b.force_traction(n())),
                    Quantity::M => out.extend(b.moment_traction(n())),
                }
            }
        }
        Source::Couple => {
            let b = line_couple_kernels_2d(&req.material, &p)?;
            for q in &req.quantities {
                match q {
                    Quantity::U => out.extend(b.u),
                    Quantity::Omega => out.push(b.omega),
                    Quantity::Sigma => {
                        for be in 0..2 {
                            out.extend((0..2).map(|a| b.sigma[be][a]));
                        }
                    }
                    Quantity::Mu => out.extend(b.mu),
                    Quantity::T => out.extend(b.force_traction(n())),
                    Quantity::M => out.push(b.moment_traction(n())),
                }
            }
        }
    }
    Ok(out)
}

/// Rejects requests the kernels cannot serve before any point is evaluated.
fn check_limits(req: &EvalRequest) -> Result<(), CliError> {
    if req.source == Source::Couple && req.material.l() == 0.0 {
        return Err(CliError::Kernel(KernelError::UnsupportedLimit));
    }
    Ok(())
}

/// Evaluates the request at every grid point, in grid order. Points within
/// the exclusion radius or at the source are skipped and counted.
pub fn cmd_eval(req: &EvalRequest) -> Result<Table, CliError> {
    check_limits(req)?;
    let points = req.grid.points();
    let rows: Vec<Option<Vec<f64>>> = points
        .par_iter()
        .map(|x| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if r < req.grid.exclusion_radius {
                return Ok(None);
            }
            let row = if req.dimension == 3 { row_3d(req, [x[0], x[1], x[2]]) } else { row_2d(req, [x[0], x[1]]) };
            match row {
                Ok(v) => Ok(Some(v)),
                Err(KernelError::SingularPoint { .. }) => Ok(None),
                Err(e) => Err(CliError::Kernel(e)),
            }
        })
        .collect::<Result<_, CliError>>()?;
    let skipped = rows.iter().filter(|r| r.is_none()).count();
    Ok(Table { columns: columns(req), rows: rows.into_iter().flatten().collect(), skipped })
}

/// Seventeen significant digits, enough to reproduce every double.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_table(table: &Table, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", table.columns.join(","))?;
            for row in &table.rows {
                let line: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
                writeln!(out, "{}", line.join(","))?;
            }
        }
        Format::Records => {
            writeln!(out, "{}", serde_json::json!({ "columns": table.columns }))?;
            for row in &table.rows {
                writeln!(out, "{}", serde_json::Value::from(row.clone()))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::request::{FieldGrid, GridSpec};
    use csgreen_core::MaterialParams;

    fn request(dimension: usize, source: Source, quantities: Vec<Quantity>, pts: Vec<Vec<f64>>) -> EvalRequest {
        EvalRequest {
            dimension,
            source,
            quantities,
            normal: Some(if dimension == 3 { vec![0.0, 0.0, 1.0] } else { vec![1.0, 0.0] }),
            material: MaterialParams::default(),
            grid: FieldGrid { spec: GridSpec::Points(pts), exclusion_radius: 1e-10 },
        }
    }

    #[test]
    fn column_counts() {
        let all = Quantity::ALL.to_vec();
        let r3 = request(3, Source::Force, all.clone(), vec![]);
        assert_eq!(columns(&r3).len(), 3 + 9 + 9 + 27 + 9 + 9 + 9);
        let f2 = request(2, Source::Force, all.clone(), vec![]);
        assert_eq!(columns(&f2).len(), 2 + 4 + 2 + 8 + 4 + 4 + 2);
        let c2 = request(2, Source::Couple, all, vec![]);
        assert_eq!(
            columns(&c2),
            ["x1", "x2", "U_1", "U_2", "Omega", "Sigma_11", "Sigma_12", "Sigma_21", "Sigma_22", "Mu_1", "Mu_2", "T_1", "T_2", "M"]
        );
    }

    #[test]
    fn index_order_first_fastest() {
        let c = quantity_columns(3, Source::Force, Quantity::Sigma);
        assert_eq!(&c[..4], ["Sigma_111", "Sigma_121", "Sigma_131", "Sigma_211"]);
        assert_eq!(c[26], "Sigma_333");
        let u = quantity_columns(3, Source::Couple, Quantity::U);
        assert_eq!(&u[..4], ["U_11", "U_21", "U_31", "U_12"]);
    }

    #[test]
    fn values_follow_column_names() {
        let req = request(3, Source::Force, vec![Quantity::Sigma], vec![vec![0.3, -0.2, 0.5]]);
        let t = cmd_eval(&req).unwrap();
        let b = point_force_kernels_3d(&req.material, &EvalPoint3::new([0.3, -0.2, 0.5]).unwrap()).unwrap();
        let k = t.columns.iter().position(|c| c == "Sigma_213").unwrap();
        assert_eq!(t.rows[0][k], b.sigma[1][0][2]);
    }

    #[test]
    fn origin_is_skipped() {
        let req = request(2, Source::Force, vec![Quantity::U], vec![vec![0.0, 0.0], vec![1.0, 0.0]]);
        let t = cmd_eval(&req).unwrap();
        assert_eq!((t.rows.len(), t.skipped), (1, 1));
    }

    #[test]
    fn couple_at_zero_length_scale_is_rejected() {
        let mut req = request(3, Source::Couple, vec![Quantity::U], vec![vec![1.0, 0.0, 0.0]]);
        req.material = MaterialParams::new(1.0, 0.3, 0.0).unwrap();
        assert_eq!(cmd_eval(&req).unwrap_err().to_string(), KernelError::UnsupportedLimit.to_string());
    }

    #[test]
    fn csv_numbers_round_trip() {
        for v in [0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, f64::MAX] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn records_header_then_rows() {
        let t = Table { columns: vec!["x1".into(), "U_1".into()], rows: vec![vec![1.0, 0.5]], skipped: 0 };
        let mut buf = Vec::new();
        write_table(&t, Format::Records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], r#"{"columns":["x1","U_1"]}"#);
        assert_eq!(lines[1], "[1.0,0.5]");
    }
}
