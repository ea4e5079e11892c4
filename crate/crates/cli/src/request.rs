//! Evaluation requests: source, quantities, material and field points.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use csgreen_core::MaterialParams;

use crate::CliError;

fn invalid(field: &'static str, msg: impl Into<String>) -> CliError {
    CliError::Validation { field, msg: msg.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Force,
    Couple,
}

impl FromStr for Source {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "force" => Ok(Source::Force),
            "couple" => Ok(Source::Couple),
            other => Err(invalid("source", format!("expected force or couple, got '{other}'"))),
        }
    }
}

/// Output quantities in their fixed column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    U,
    Omega,
    Sigma,
    Mu,
    T,
    M,
}

impl Quantity {
    pub const ALL: [Quantity; 6] = [Quantity::U, Quantity::Omega, Quantity::Sigma, Quantity::Mu, Quantity::T, Quantity::M];

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::U => "U",
            Quantity::Omega => "Omega",
            Quantity::Sigma => "Sigma",
            Quantity::Mu => "Mu",
            Quantity::T => "T",
            Quantity::M => "M",
        }
    }

    pub fn needs_normal(&self) -> bool {
        matches!(self, Quantity::T | Quantity::M)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a comma-separated list, deduplicated and sorted into column order.
pub fn parse_quantities(s: &str) -> Result<Vec<Quantity>, CliError> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let q = Quantity::ALL
            .into_iter()
            .find(|q| q.name().eq_ignore_ascii_case(tok))
            .ok_or_else(|| invalid("quantities", format!("unknown quantity '{tok}'")))?;
        out.push(q);
    }
    if out.is_empty() {
        return Err(invalid("quantities", "at least one of U, Omega, Sigma, Mu, T, M is required"));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Records,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "csv" => Ok(Format::Csv),
            "records" => Ok(Format::Records),
            other => Err(invalid("format", format!("expected csv or records, got '{other}'"))),
        }
    }
}

/// One lattice axis `min:max:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |k| {
            if self.count == 1 {
                self.min
            } else {
                self.min + (self.max - self.min) * k as f64 / (self.count - 1) as f64
            }
        })
    }
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [min, max, count] = parts[..] else {
            return Err(invalid("grid", format!("axis '{s}' is not min:max:count")));
        };
        let min = parse_f64("grid", min)?;
        let max = parse_f64("grid", max)?;
        let count: usize = count.parse().map_err(|_| invalid("grid", format!("count '{count}' is not an integer")))?;
        if count == 0 {
            return Err(invalid("grid", "counts must be at least 1"));
        }
        Ok(Axis { min, max, count })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Lattice(Vec<Axis>),
    Points(Vec<Vec<f64>>),
}

/// Field points and the radius about the source inside which they are skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub spec: GridSpec,
    pub exclusion_radius: f64,
}

impl FieldGrid {
    /// Lattice points with the first coordinate varying fastest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        match &self.spec {
            GridSpec::Points(p) => p.clone(),
            GridSpec::Lattice(axes) => {
                let values: Vec<Vec<f64>> = axes.iter().map(|a| a.values().collect()).collect();
                let total: usize = axes.iter().map(|a| a.count).product();
                (0..total)
                    .map(|flat| {
                        let mut rem = flat;
                        values
                            .iter()
                            .map(|v| {
                                let k = rem % v.len();
                                rem /= v.len();
                                v[k]
                            })
                            .collect()
                    })
                    .collect()
            }
        }
    }
}

pub fn parse_grid(s: &str, dimension: usize) -> Result<Vec<Axis>, CliError> {
    let axes = s.split(',').map(Axis::from_str).collect::<Result<Vec<_>, _>>()?;
    match axes.len() {
        1 => Ok(vec![axes[0]; dimension]),
        n if n == dimension => Ok(axes),
        n => Err(invalid("grid", format!("{n} axes given for a {dimension}D evaluation"))),
    }
}

/// Reads one point per line, coordinates separated by commas or whitespace;
/// blank lines and lines starting with `#` are ignored.
pub fn parse_points(text: &str, dimension: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let p = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_f64("points", t))
            .collect::<Result<Vec<_>, _>>()?;
        if p.len() != dimension {
            return Err(invalid("points", format!("line {} has {} coordinates, expected {dimension}", k + 1, p.len())));
        }
        out.push(p);
    }
    Ok(out)
}

pub fn parse_f64(field: &'static str, s: &str) -> Result<f64, CliError> {
    let v: f64 = s.trim().parse().map_err(|_| invalid(field, format!("'{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(invalid(field, format!("'{s}' is not finite")));
    }
    Ok(v)
}

pub fn parse_vector(field: &'static str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(|t| parse_f64(field, t)).collect()
}

/// Everything `cmd_eval` needs.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRequest {
    pub dimension: usize,
    pub source: Source,
    pub quantities: Vec<Quantity>,
    /// Unit normal, present when tractions are requested.
    pub normal: Option<Vec<f64>>,
    pub material: MaterialParams,
    pub grid: FieldGrid,
}

/// Raw option values from flags or a configuration file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Options {
    pub values: BTreeMap<String, String>,
}

pub const KEYS: [&str; 13] = [
    "source",
    "quantities",
    "normal",
    "mu",
    "nu",
    "length-scale",
    "grid",
    "points",
    "exclusion-radius",
    "format",
    "seed",
    "output",
    "config",
];

impl Options {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn from_config(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid("config", format!("line {} is not key=value", k + 1)))?;
            let key = key.trim().trim_start_matches("--").replace('_', "-");
            if !KEYS.contains(&key.as_str()) || key == "config" {
                return Err(invalid("config", format!("unknown key '{key}' on line {}", k + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    /// Entries of `other` replace those of `self`.
    pub fn overridden_by(mut self, other: Options) -> Self {
        self.values.extend(other.values);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn set(&mut self, key: &str, value: Option<String>) {
        if let Some(v) = value {
            self.values.insert(key.to_string(), v);
        }
    }

    pub fn material(&self) -> Result<MaterialParams, CliError> {
        let get = |k: &'static str, d: f64| self.get(k).map(|s| parse_f64(k, s)).transpose().map(|v| v.unwrap_or(d));
        let d = MaterialParams::default();
        let (mu, nu, l) = (get("mu", d.mu())?, get("nu", d.nu())?, get("length-scale", d.l())?);
        MaterialParams::new(mu, nu, l).map_err(|e| {
            let field = match e {
                csgreen_core::MaterialError::ShearModulus(_) => "mu",
                csgreen_core::MaterialError::PoissonRatio(_) => "nu",
                _ => "length-scale",
            };
            invalid(field, e.to_string())
        })
    }

    pub fn seed(&self) -> Result<u64, CliError> {
        self.get("seed")
            .map(|s| s.trim().parse().map_err(|_| invalid("seed", format!("'{s}' is not an unsigned integer"))))
            .transpose()
            .map(|v| v.unwrap_or(42))
    }

    pub fn format(&self) -> Result<Format, CliError> {
        self.get("format").map(Format::from_str).transpose().map(|f| f.unwrap_or(Format::Csv))
    }

    pub fn output(&self) -> Option<&Path> {
        self.get("output").map(Path::new)
    }

    /// Builds and validates an evaluation request; `points` file contents are
    /// read through `read`.
    pub fn eval_request(
        &self,
        dimension: usize,
        read: impl Fn(&Path) -> Result<String, CliError>,
    ) -> Result<EvalRequest, CliError> {
        let source = self.get("source").map(Source::from_str).transpose()?.unwrap_or(Source::Force);
        let quantities = parse_quantities(self.get("quantities").unwrap_or("U"))?;
        let material = self.material()?;
        let normal = match self.get("normal") {
            Some(s) => {
                let n = parse_vector("normal", s)?;
                if n.len() != dimension {
                    return Err(invalid("normal", format!("{} components given for a {dimension}D evaluation", n.len())));
                }
                let len = n.iter().map(|v| v * v).sum::<f64>().sqrt();
                if len == 0.0 {
                    return Err(invalid("normal", "zero vector"));
                }
                Some(n.iter().map(|v| v / len).collect())
            }
            None => None,
        };
        if normal.is_none() && quantities.iter().any(Quantity::needs_normal) {
            return Err(invalid("normal", "required when T or M is requested"));
        }
        let spec = match (self.get("grid"), self.get("points")) {
            (Some(_), Some(_)) => return Err(invalid("grid", "give either --grid or --points, not both")),
            (Some(g), None) => GridSpec::Lattice(parse_grid(g, dimension)?),
            (None, Some(p)) => GridSpec::Points(parse_points(&read(Path::new(p))?, dimension)?),
            (None, None) => return Err(invalid("grid", "one of --grid or --points is required")),
        };
        let exclusion_radius = match self.get("exclusion-radius") {
            Some(s) => parse_f64("exclusion-radius", s)?,
            None if material.l() > 0.0 => 1e-9 * material.l(),
            None => 1e-9,
        };
        if exclusion_radius <= 0.0 {
            return Err(invalid("exclusion-radius", "must be positive"));
        }
        Ok(EvalRequest { dimension, source, quantities, normal, material, grid: FieldGrid { spec, exclusion_radius } })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(pairs: &[(&str, &str)]) -> Options {
        Options { values: pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect() }
    }

    fn no_files(_: &Path) -> Result<String, CliError> {
        unreachable!()
    }

    #[test]
    fn quantities_in_column_order() {
        assert_eq!(parse_quantities("M,u,Sigma,U").unwrap(), vec![Quantity::U, Quantity::Sigma, Quantity::M]);
        assert!(matches!(parse_quantities(" , "), Err(CliError::Validation { field: "quantities", .. })));
        assert!(parse_quantities("U,X").is_err());
    }

    #[test]
    fn lattice_first_axis_fastest() {
        let g = FieldGrid { spec: GridSpec::Lattice(parse_grid("0:1:2,5:7:3", 2).unwrap()), exclusion_radius: 1e-9 };
        let p = g.points();
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0.0, 5.0]);
        assert_eq!(p[1], vec![1.0, 5.0]);
        assert_eq!(p[2], vec![0.0, 6.0]);
        assert_eq!(p[5], vec![1.0, 7.0]);
    }

    #[test]
    fn single_axis_applies_to_all() {
        assert_eq!(parse_grid("-1:1:3", 3).unwrap().len(), 3);
        assert!(parse_grid("0:1:2,0:1:2", 3).is_err());
        assert!(parse_grid("0:1:0", 2).is_err());
        assert!(parse_grid("0:1", 2).is_err());
    }

    #[test]
    fn point_file() {
        let p = parse_points("# x y\n1 2\n\n3.5, -1\n", 2).unwrap();
        assert_eq!(p, vec![vec![1.0, 2.0], vec![3.5, -1.0]]);
        assert!(parse_points("1 2 3\n", 2).is_err());
    }

    #[test]
    fn config_keys_and_precedence() {
        let file = Options::from_config("mu = 2\n# comment\nlength_scale=0.5\nnu=0.1 # trailing\n").unwrap();
        let flags = opts(&[("mu", "3")]);
        let merged = file.overridden_by(flags);
        let m = merged.material().unwrap();
        assert_eq!((m.mu(), m.nu(), m.l()), (3.0, 0.1, 0.5));
        assert!(Options::from_config("colour = red").is_err());
        assert!(Options::from_config("mu 2").is_err());
    }

    #[test]
    fn material_errors_name_the_field() {
        let e = opts(&[("nu", "0.5")]).material().unwrap_err();
        assert!(matches!(e, CliError::Validation { field: "nu", .. }));
    }

    #[test]
    fn traction_needs_normal() {
        let o = opts(&[("quantities", "U,T"), ("grid", "0:1:2")]);
        assert!(matches!(o.eval_request(2, no_files), Err(CliError::Validation { field: "normal", .. })));
        let o = opts(&[("quantities", "T"), ("grid", "0:1:2"), ("normal", "0,2")]);
        assert_eq!(o.eval_request(2, no_files).unwrap().normal, Some(vec![0.0, 1.0]));
        let o = opts(&[("quantities", "T"), ("grid", "0:1:2"), ("normal", "0,0,1")]);
        assert!(o.eval_request(2, no_files).is_err());
    }

    #[test]
    fn default_exclusion_radius() {
        let o = opts(&[("grid", "0:1:2"), ("length-scale", "0.2")]);
        assert_eq!(o.eval_request(3, no_files).unwrap().grid.exclusion_radius, 1e-9 * 0.2);
        let o = opts(&[("grid", "0:1:2"), ("length-scale", "0")]);
        assert_eq!(o.eval_request(3, no_files).unwrap().grid.exclusion_radius, 1e-9);
        let o = opts(&[("grid", "0:1:2"), ("exclusion-radius", "0")]);
        assert!(o.eval_request(3, no_files).is_err());
    }
}
