//! Public special-function entry points against the 50-digit table.

use csgreen_core::specfun::{
    bessel_k0, bessel_k1, bracket_g1, bracket_g2, bracket_h1, bracket_h1_complement, bracket_h2, bracket_h3,
    bracket_h4, bracket_k1_complement, DimensionlessArg,
};
use csgreen_core::verify::oracle::{in_switch_band, table, BAND_TOLERANCE, COLUMNS, TOLERANCE};

fn public(k: usize, x: f64) -> f64 {
    let a = DimensionlessArg::new(x).unwrap();
    match k {
        0 => bessel_k0(a),
        1 => bessel_k1(a),
        2 => bracket_g1(a),
        3 => bracket_g2(a),
        4 => bracket_k1_complement(a),
        5 => bracket_h1_complement(x).unwrap(),
        6 => bracket_h1(x).unwrap(),
        7 => bracket_h2(x).unwrap(),
        8 => bracket_h3(x).unwrap(),
        9 => bracket_h4(x).unwrap(),
        _ => unreachable!(),
    }
}

#[test]
fn two_hundred_log_spaced_arguments() {
    let rows = table();
    assert_eq!(rows.len(), 200);
    assert_eq!(rows[0].x, 1e-8);
    assert!((rows[199].x - 600.0).abs() < 1e-9);
}

#[test]
fn every_column_within_tolerance() {
    for row in table() {
        for (k, name) in COLUMNS.iter().enumerate() {
            let want = row.values[k];
            let got = public(k, row.x);
            let err = if want == 0.0 { got.abs() } else { ((got - want) / want).abs() };
            let tol = if in_switch_band(k, row.x) { BAND_TOLERANCE } else { TOLERANCE };
            assert!(err <= tol, "{name}({}) = {got:e}, want {want:e}, rel {err:e}", row.x);
        }
    }
}

#[test]
fn arguments_outside_the_domain() {
    assert!(DimensionlessArg::new(0.0).is_err());
    assert!(DimensionlessArg::new(-1.0).is_err());
    assert!(DimensionlessArg::new(f64::NAN).is_err());
    assert!(bracket_h1(-0.5).is_err());
    assert!(bracket_h2(f64::INFINITY).unwrap().is_finite());
}
