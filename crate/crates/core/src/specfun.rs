//! Modified Bessel functions `K0`, `K1` and the cancellation-prone bracket
//! combinations that appear in the kernels.
//!
//! Every function here takes the dimensionless argument `x = r / l`. The
//! dimensional prefactors stay with the kernels.
//!
//! `K0` and `K1` use their ascending series for `x <= 2` and the Steed
//! continued fraction for the scaled functions above that. The brackets
//! switch to dedicated series below [`G_SERIES_THRESHOLD`] and
//! [`H_SERIES_THRESHOLD`], where the direct formulas subtract nearly equal
//! quantities.

use std::f64::consts::PI;

use crate::error::SpecFunError;

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this argument the Bessel brackets `g1`, `g2` and `1 - x K1(x)` use series.
pub const G_SERIES_THRESHOLD: f64 = 0.05;
/// Below this argument the exponential brackets use series.
pub const H_SERIES_THRESHOLD: f64 = 0.25;

/// Switch between the ascending series and the continued fraction for K0, K1.
const BESSEL_SERIES_LIMIT: f64 = 2.0;

/// Past this point `exp(-x)` is zero in double precision.
const EXP_UNDERFLOW: f64 = 746.0;

/// Strictly positive, finite dimensionless argument `x = r / l`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DimensionlessArg(f64);

impl DimensionlessArg {
    pub fn new(x: f64) -> Result<Self, SpecFunError> {
        if x.is_finite() && x > 0.0 {
            Ok(Self(x))
        } else {
            Err(SpecFunError::Domain(x, "0 < x < inf"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for DimensionlessArg {
    type Error = SpecFunError;

    fn try_from(x: f64) -> Result<Self, Self::Error> {
        Self::new(x)
    }
}

fn check_non_negative(x: f64) -> Result<f64, SpecFunError> {
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(SpecFunError::Domain(x, "x >= 0"))
    }
}

pub fn bessel_k0(x: DimensionlessArg) -> f64 {
    k0(x.0)
}

pub fn bessel_k1(x: DimensionlessArg) -> f64 {
    k1(x.0)
}

/// `K0(x) + (2/x) K1(x) - 2/x^2`, finite as `x -> 0` with limit `-1/2`.
pub fn bracket_g1(x: DimensionlessArg) -> f64 {
    g1(x.0)
}

/// `K0(x) + (1/x) K1(x) - 1/x^2`, logarithmically divergent as `x -> 0`.
pub fn bracket_g2(x: DimensionlessArg) -> f64 {
    g2(x.0)
}

/// `1 - x K1(x)`; vanishes like `-(x^2/2) ln(x/2)` at the origin.
pub fn bracket_k1_complement(x: DimensionlessArg) -> f64 {
    k1c(x.0)
}

/// `(1 + x) e^{-x}`
pub fn bracket_h1(x: f64) -> Result<f64, SpecFunError> {
    check_non_negative(x).map(h1)
}

/// `1 - (1 + x) e^{-x}`
pub fn bracket_h1_complement(x: f64) -> Result<f64, SpecFunError> {
    check_non_negative(x).map(h1c)
}

/// `1 - (1 + x + x^2) e^{-x}`
pub fn bracket_h2(x: f64) -> Result<f64, SpecFunError> {
    check_non_negative(x).map(h2)
}

/// `3 - (3 + 3x + x^2) e^{-x}`
pub fn bracket_h3(x: f64) -> Result<f64, SpecFunError> {
    check_non_negative(x).map(h3)
}

/// `15 - (15 + 15x + 6x^2 + x^3) e^{-x}`
pub fn bracket_h4(x: f64) -> Result<f64, SpecFunError> {
    check_non_negative(x).map(h4)
}

// ------------------------------------------------------------------------
// Unchecked evaluators used by the kernels. `x = +inf` is accepted and
// returns the limit, which is how the kernels reach the classical l = 0 case.

pub(crate) fn k0(x: f64) -> f64 {
    if x <= BESSEL_SERIES_LIMIT {
        small::k0(x)
    } else if x.is_infinite() {
        0.0
    } else {
        scaled_k01(x).0 * (-x).exp()
    }
}

pub(crate) fn k1(x: f64) -> f64 {
    if x <= BESSEL_SERIES_LIMIT {
        small::k1(x)
    } else if x.is_infinite() {
        0.0
    } else {
        scaled_k01(x).1 * (-x).exp()
    }
}

/// `x K1(x)`, zero at infinity.
pub(crate) fn xk1(x: f64) -> f64 {
    if x <= G_SERIES_THRESHOLD {
        1.0 - small::k1c(x)
    } else if x > EXP_UNDERFLOW {
        0.0
    } else {
        x * k1(x)
    }
}

pub(crate) fn g1(x: f64) -> f64 {
    if x < G_SERIES_THRESHOLD {
        small::g1(x)
    } else {
        direct::g1(x)
    }
}

pub(crate) fn g2(x: f64) -> f64 {
    if x < G_SERIES_THRESHOLD {
        small::g2(x)
    } else {
        direct::g2(x)
    }
}

pub(crate) fn k1c(x: f64) -> f64 {
    if x < G_SERIES_THRESHOLD {
        small::k1c(x)
    } else {
        direct::k1c(x)
    }
}

pub(crate) fn h1(x: f64) -> f64 {
    if x > EXP_UNDERFLOW {
        0.0
    } else {
        (1.0 + x) * (-x).exp()
    }
}

pub(crate) fn h1c(x: f64) -> f64 {
    if x < H_SERIES_THRESHOLD {
        small::h1c(x)
    } else {
        direct::h1c(x)
    }
}

pub(crate) fn h2(x: f64) -> f64 {
    if x < H_SERIES_THRESHOLD {
        small::h2(x)
    } else {
        direct::h2(x)
    }
}

pub(crate) fn h3(x: f64) -> f64 {
    if x < H_SERIES_THRESHOLD {
        small::h3(x)
    } else {
        direct::h3(x)
    }
}

pub(crate) fn h4(x: f64) -> f64 {
    if x < H_SERIES_THRESHOLD {
        small::h4(x)
    } else {
        direct::h4(x)
    }
}

/// `(e^x K0(x), e^x K1(x))` by Steed's algorithm for the second continued
/// fraction (Temme's formulation, order zero). Converges for `x >= 2`.
fn scaled_k01(x: f64) -> (f64, f64) {
    const MAX_ITER: usize = 10_000;
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON * 0.5 {
            break;
        }
    }
    let k0s = (PI / (2.0 * x)).sqrt() / s;
    let k1s = k0s * (x + 0.5 - a1 * h) / x;
    (k0s, k1s)
}

/// Ascending series. Each is valid for all `x > 0` but is only used where
/// it converges quickly and the direct formulas would cancel.
pub mod small {
    use super::EULER_GAMMA;

    const MAX_TERMS: usize = 80;
    const TOL: f64 = 1e-18;

    /// Runs `term(k, c_k, psi_k, psi_k1)` over the ascending series, where
    /// `c_k = t^k / (k!)^2`, `t = x^2/4`, `psi_k = psi(k+1)`, `psi_k1 = psi(k+2)`.
    fn sum_series(x: f64, mut term: impl FnMut(usize, f64, f64, f64) -> f64) -> f64 {
        let t = 0.25 * x * x;
        let mut c = 1.0;
        let mut psi = -EULER_GAMMA;
        let mut sum = 0.0;
        for k in 0..MAX_TERMS {
            let psi_next = psi + 1.0 / (k + 1) as f64;
            let v = term(k, c, psi, psi_next);
            sum += v;
            if k > 0 && v.abs() <= TOL * sum.abs() && c < 1.0 {
                break;
            }
            c *= t / ((k + 1) * (k + 1)) as f64;
            psi = psi_next;
        }
        sum
    }

    pub fn k0(x: f64) -> f64 {
        let lg = (0.5 * x).ln();
        sum_series(x, |_, c, psi, _| c * (psi - lg))
    }

    /// `K1(x) - 1/x`, without the leading pole.
    fn k1_regular(x: f64) -> f64 {
        let lg = (0.5 * x).ln();
        0.5 * x * sum_series(x, |k, c, psi, psi1| c / (k + 1) as f64 * (lg - 0.5 * (psi + psi1)))
    }

    pub fn k1(x: f64) -> f64 {
        1.0 / x + k1_regular(x)
    }

    pub fn k1c(x: f64) -> f64 {
        -x * k1_regular(x)
    }

    pub fn g1(x: f64) -> f64 {
        let lg = (0.5 * x).ln();
        sum_series(x, |k, c, psi, psi1| {
            let kp1 = (k + 1) as f64;
            c * (-lg * k as f64 / kp1 + psi - 0.5 * (psi + psi1) / kp1)
        })
    }

    pub fn g2(x: f64) -> f64 {
        let lg = (0.5 * x).ln();
        sum_series(x, |k, c, psi, psi1| {
            let kp1 = (k + 1) as f64;
            c * (-lg + psi + 0.5 * lg / kp1 - 0.25 * (psi + psi1) / kp1)
        })
    }

    const TERMS: usize = 24;

    /// Taylor coefficients of `P(0) - P(x) e^{-x}` for an integer polynomial
    /// `P`. The numerators `k! [x^k] P(x) e^{-x}` are integers, so they are
    /// accumulated exactly and the cancelled low orders come out as exact zeros.
    const fn exp_poly_coeffs(poly: &[i128]) -> [f64; TERMS] {
        let mut out = [0.0; TERMS];
        let mut fact: i128 = 1;
        let mut k = 1;
        while k < TERMS {
            fact *= k as i128;
            let mut num: i128 = 0;
            let mut j = 0;
            while j < poly.len() && j <= k {
                let mut falling: i128 = 1;
                let mut m = 0;
                while m < j {
                    falling *= (k - m) as i128;
                    m += 1;
                }
                let sign: i128 = if (k - j) % 2 == 0 { 1 } else { -1 };
                num += sign * poly[j] * falling;
                j += 1;
            }
            out[k] = -(num as f64) / (fact as f64);
            k += 1;
        }
        out
    }

    const H1C: [f64; TERMS] = exp_poly_coeffs(&[1, 1]);
    const H2: [f64; TERMS] = exp_poly_coeffs(&[1, 1, 1]);
    const H3: [f64; TERMS] = exp_poly_coeffs(&[3, 3, 1]);
    const H4: [f64; TERMS] = exp_poly_coeffs(&[15, 15, 6, 1]);

    fn horner(coeffs: &[f64; TERMS], x: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn h1c(x: f64) -> f64 {
        horner(&H1C, x)
    }

    pub fn h2(x: f64) -> f64 {
        horner(&H2, x)
    }

    pub fn h3(x: f64) -> f64 {
        horner(&H3, x)
    }

    pub fn h4(x: f64) -> f64 {
        horner(&H4, x)
    }

}

/// Direct formulas; accurate away from the origin.
pub mod direct {
    use super::{k0, k1, EXP_UNDERFLOW};

    pub fn g1(x: f64) -> f64 {
        if x.is_infinite() {
            return 0.0;
        }
        k0(x) + 2.0 / x * k1(x) - 2.0 / (x * x)
    }

    pub fn g2(x: f64) -> f64 {
        if x.is_infinite() {
            return 0.0;
        }
        k0(x) + k1(x) / x - 1.0 / (x * x)
    }

    pub fn k1c(x: f64) -> f64 {
        if x > EXP_UNDERFLOW {
            return 1.0;
        }
        1.0 - x * k1(x)
    }

    fn poly_exp(c: f64, poly: &[f64], x: f64) -> f64 {
        if x > EXP_UNDERFLOW {
            return c;
        }
        let p = poly.iter().rev().fold(0.0, |acc, a| acc * x + a);
        c - p * (-x).exp()
    }

    pub fn h1c(x: f64) -> f64 {
        poly_exp(1.0, &[1.0, 1.0], x)
    }

    pub fn h2(x: f64) -> f64 {
        poly_exp(1.0, &[1.0, 1.0, 1.0], x)
    }

    pub fn h3(x: f64) -> f64 {
        poly_exp(3.0, &[3.0, 3.0, 1.0], x)
    }

    pub fn h4(x: f64) -> f64 {
        poly_exp(15.0, &[15.0, 15.0, 6.0, 1.0], x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arg(x: f64) -> DimensionlessArg {
        DimensionlessArg::new(x).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn domain_errors() {
        assert!(DimensionlessArg::new(0.0).is_err());
        assert!(DimensionlessArg::new(-1.0).is_err());
        assert!(DimensionlessArg::new(f64::NAN).is_err());
        assert!(DimensionlessArg::new(f64::INFINITY).is_err());
        assert!(bracket_h2(-1e-300).is_err());
        assert!(bracket_h3(f64::NAN).is_err());
        assert!(bracket_h4(0.0).is_ok());
    }

    // Reference values from tools/oracle.py (50-digit mpmath).
    #[test]
    fn bessel_at_one() {
        assert!(rel(bessel_k0(arg(1.0)), 0.421_024_438_240_708_333_335_627_4) < 1e-15);
        assert!(rel(bessel_k1(arg(1.0)), 0.601_907_230_197_234_574_737_54) < 1e-15);
    }

    #[test]
    fn bessel_small_argument() {
        let x: f64 = 1e-8;
        let leading = -(0.5 * x).ln() - EULER_GAMMA;
        assert!(rel(bessel_k0(arg(x)), leading) < 1e-9);
        assert!((x * bessel_k1(arg(x)) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bessel_underflow() {
        // K0(600) ~ 1.3e-262 is still a normal double
        assert!(bessel_k0(arg(600.0)) > 0.0);
        assert_eq!(bessel_k0(arg(800.0)), 0.0);
        assert_eq!(bessel_k1(arg(800.0)), 0.0);
    }

    #[test]
    fn bessel_derivative_relations() {
        // d/dx K0 = -K1 and d/dx K1 = -K0 - K1/x, sixth-order central differences
        let d6 = |f: &dyn Fn(f64) -> f64, x: f64| {
            let h = 1e-3 * x;
            (45.0 * (f(x + h) - f(x - h)) - 9.0 * (f(x + 2.0 * h) - f(x - 2.0 * h))
                + (f(x + 3.0 * h) - f(x - 3.0 * h)))
                / (60.0 * h)
        };
        for x in [0.5, 1.0, 5.0] {
            let dk0 = d6(&k0, x);
            assert!(rel(dk0, -k1(x)) < 1e-8, "x = {x}");
        }
        for k in 0..10 {
            let x = 10f64.powf(-2.0 + 4.0 * k as f64 / 9.0);
            assert!(rel(d6(&k0, x), -k1(x)) < 1e-8, "K0' at {x}");
            assert!(rel(d6(&k1, x), -k0(x) - k1(x) / x) < 1e-8, "K1' at {x}");
        }
    }

    #[test]
    fn bessel_monotone_decreasing() {
        let mut prev = (f64::INFINITY, f64::INFINITY);
        for k in 0..400 {
            let x = 10f64.powf(-8.0 + 10.7 * k as f64 / 399.0);
            let cur = (k0(x), k1(x));
            assert!(cur.0 < prev.0 && cur.1 < prev.1, "x = {x}");
            prev = cur;
        }
    }

    #[test]
    fn series_and_continued_fraction_meet() {
        let x = BESSEL_SERIES_LIMIT;
        let (k0s, k1s) = scaled_k01(x);
        let e = (-x).exp();
        assert!(rel(small::k0(x), k0s * e) < 1e-14);
        assert!(rel(small::k1(x), k1s * e) < 1e-14);
    }

    #[test]
    fn g_brackets() {
        assert!(rel(bracket_g1(arg(2.0)), -0.246_240_245_433_944_137_062_681_6) < 1e-12);
        assert!(rel(bracket_g2(arg(2.0)), -0.066_173_186_342_205_350_704_981_02) < 1e-12);
        assert!(rel(bracket_g1(arg(1e-6)), -0.499_999_999_998_164_819_740_797) < 1e-10);
        assert!(rel(bracket_g2(arg(1e-6)), 6.715_721_036_814_127_296_848_139) < 1e-10);
        assert!((bracket_g1(arg(50.0)) + 2.0 / 2500.0).abs() <= 1e-16);
        assert!((bracket_g2(arg(50.0)) + 1.0 / 2500.0).abs() <= 1e-16);
    }

    #[test]
    fn h_brackets() {
        assert_eq!(bracket_h1(0.0).unwrap(), 1.0);
        assert_eq!(bracket_h2(0.0).unwrap(), 0.0);
        assert_eq!(bracket_h3(0.0).unwrap(), 0.0);
        assert_eq!(bracket_h4(0.0).unwrap(), 0.0);
        assert!(rel(bracket_h3(1.0).unwrap(), 0.424_843_911_799_903_748_831_333_6) < 1e-14);
        assert!((bracket_h2(100.0).unwrap() - 1.0).abs() <= 1e-15);
        assert!((bracket_h3(100.0).unwrap() - 3.0).abs() <= 1e-15);
        assert!((bracket_h4(100.0).unwrap() - 15.0).abs() <= 1e-15);
        assert_eq!(bracket_h4(f64::INFINITY).unwrap(), 15.0);
        assert_eq!(bracket_h1(f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn crossover_bands_agree() {
        for k in 0..=40 {
            let f = 0.6 + 0.8 * k as f64 / 40.0;
            let x = G_SERIES_THRESHOLD * f;
            assert!(rel(small::g1(x), direct::g1(x)) < 1e-11, "g1 at {x}");
            assert!(rel(small::g2(x), direct::g2(x)) < 1e-11, "g2 at {x}");
            assert!(rel(small::k1c(x), direct::k1c(x)) < 1e-11, "k1c at {x}");
            let x = H_SERIES_THRESHOLD * f;
            assert!(rel(small::h1c(x), direct::h1c(x)) < 1e-11, "h1c at {x}");
            assert!(rel(small::h2(x), direct::h2(x)) < 1e-11, "h2 at {x}");
            assert!(rel(small::h3(x), direct::h3(x)) < 1e-11, "h3 at {x}");
            assert!(rel(small::h4(x), direct::h4(x)) < 1e-11, "h4 at {x}");
        }
    }

    #[test]
    fn limits_at_infinity() {
        let inf = f64::INFINITY;
        assert_eq!(g1(inf), 0.0);
        assert_eq!(g2(inf), 0.0);
        assert_eq!(xk1(inf), 0.0);
        assert_eq!(k1c(inf), 1.0);
        assert_eq!(h1c(inf), 1.0);
        assert_eq!(h2(inf), 1.0);
        assert_eq!(h3(inf), 3.0);
    }
}
