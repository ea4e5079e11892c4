//! Special-function reference table produced by `tools/oracle.py` with
//! 50-digit arithmetic.

use crate::specfun::{self, G_SERIES_THRESHOLD, H_SERIES_THRESHOLD};

use super::CheckOutcome;

/// CSV with columns `x,k0,k1,g1,g2,k1c,h1c,h1,h2,h3,h4`.
pub const SPECFUN_TABLE: &str = include_str!("../../data/specfun_oracle.csv");

/// Tolerance away from the evaluation switch points.
pub const TOLERANCE: f64 = 1e-12;
/// Tolerance within a factor of two of a switch point.
pub const BAND_TOLERANCE: f64 = 1e-10;

pub const COLUMNS: [&str; 10] = ["k0", "k1", "g1", "g2", "k1c", "h1c", "h1", "h2", "h3", "h4"];

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRow {
    pub x: f64,
    pub values: [f64; 10],
}

pub fn table() -> Vec<OracleRow> {
    SPECFUN_TABLE
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let mut it = line.split(',').map(|s| s.parse::<f64>().expect("numeric oracle entry"));
            let x = it.next().expect("x column");
            let values = std::array::from_fn(|_| it.next().expect("value column"));
            OracleRow { x, values }
        })
        .collect()
}

/// Evaluates column `k` of the table with the library implementation.
pub fn evaluate(k: usize, x: f64) -> f64 {
    match k {
        0 => specfun::k0(x),
        1 => specfun::k1(x),
        2 => specfun::g1(x),
        3 => specfun::g2(x),
        4 => specfun::k1c(x),
        5 => specfun::h1c(x),
        6 => specfun::h1(x),
        7 => specfun::h2(x),
        8 => specfun::h3(x),
        9 => specfun::h4(x),
        _ => panic!("no oracle column {k}"),
    }
}

fn switch_point(k: usize) -> f64 {
    match k {
        0 | 1 => 2.0,
        2..=4 => G_SERIES_THRESHOLD,
        6 => f64::NAN,
        _ => H_SERIES_THRESHOLD,
    }
}

pub fn in_switch_band(k: usize, x: f64) -> bool {
    let s = switch_point(k);
    x >= 0.5 * s && x <= 2.0 * s
}

fn relative_error(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else if want == 0.0 {
        got.abs() / f64::MIN_POSITIVE
    } else {
        ((got - want) / want).abs()
    }
}

/// Worst relative error per function, split into points inside and outside
/// the switch bands. Functions without a band yield a single outcome.
pub fn specfun_outcomes() -> Vec<CheckOutcome> {
    let rows = table();
    let mut out = Vec::new();
    for (k, name) in COLUMNS.iter().enumerate() {
        let (mut plain, mut band) = (0.0f64, None::<f64>);
        for row in &rows {
            let err = relative_error(evaluate(k, row.x), row.values[k]);
            if in_switch_band(k, row.x) {
                band = Some(band.unwrap_or(0.0).max(err));
            } else {
                plain = plain.max(err);
            }
        }
        out.push(CheckOutcome::new(format!("specfun/{name}"), plain, TOLERANCE));
        if let Some(b) = band {
            out.push(CheckOutcome::new(format!("specfun/{name}/switch-band"), b, BAND_TOLERANCE));
        }
    }
    out
}
