//! The full invariant suite over seeded sample points.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::VerifyError;
use crate::kernels3d::{self, EvalPoint3};
use crate::material::{MaterialParams, SurfaceNormal2};
use crate::tensor::{max_abs, Vec2, Vec3};

use super::balance::{balance_integrals, Resultants};
use super::checks;
use super::fd::FdScheme;
use super::oracle;
use super::quadrature::QuadratureSpec;
use super::{CheckOutcome, Family};

pub const CONSTITUTIVE_TOL: f64 = 1e-5;
pub const PDE_TOL: f64 = 1e-4;
pub const BALANCE_TOL_3D: f64 = 1e-8;
pub const BALANCE_TOL_2D: f64 = 1e-10;
pub const DUALITY_TOL_2D: f64 = 1e-5;
pub const TRACE_TOL_COUPLE: f64 = 1e-12;
pub const TRACE_TOL_FORCE: f64 = 1e-10;
pub const CAUCHY_TOL: f64 = 1e-6;
pub const SKEW_TOL: f64 = 1e-5;
pub const MOMENT_TRACTION_TOL: f64 = 1e-5;
pub const GRADIENT_TOL: f64 = 1e-8;
pub const EQUILIBRIUM_TOL: f64 = 1e-4;

/// Length scale of the Cauchy-limit check, at unit distance.
pub const CAUCHY_LENGTH: f64 = 1e-4;

/// Sample radii lie in `[R_MIN, R_MAX] * l`, log-uniform.
pub const R_MIN: f64 = 0.3;
pub const R_MAX: f64 = 30.0;

/// Balance radii as multiples of `l`.
pub const BALANCE_RADII: [f64; 3] = [0.5, 2.0, 10.0];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub materials: Vec<MaterialParams>,
    pub seed: u64,
    pub points: usize,
    /// Scheme for checks needing at most third derivatives.
    pub scheme: FdScheme,
    /// Scheme for the fourth-derivative field equation.
    pub pde_scheme: FdScheme,
    pub sphere: QuadratureSpec,
    pub circle: QuadratureSpec,
}

impl SuiteOptions {
    pub fn for_material(material: MaterialParams, seed: u64) -> Self {
        Self {
            materials: vec![material],
            seed,
            points: 20,
            scheme: FdScheme::new(4, 1e-2, true).expect("valid scheme"),
            pde_scheme: FdScheme::new(4, 3e-2, true).expect("valid scheme"),
            sphere: QuadratureSpec::sphere(24).expect("valid rule"),
            circle: QuadratureSpec::circle(96).expect("valid rule"),
        }
    }

    /// Unit shear modulus, every combination of `nu` in {0, 0.25, 0.3, 0.49}
    /// and `l` in {0.05, 0.2, 1}.
    pub fn acceptance(seed: u64) -> Self {
        let mut materials = Vec::new();
        for nu in [0.0, 0.25, 0.3, 0.49] {
            for l in [0.05, 0.2, 1.0] {
                materials.push(MaterialParams::new(1.0, nu, l).expect("valid material"));
            }
        }
        Self { materials, ..Self::for_material(MaterialParams::default(), seed) }
    }
}

fn radius(rng: &mut ChaCha8Rng, l: f64) -> f64 {
    l * rng.gen_range(R_MIN.ln()..R_MAX.ln()).exp()
}

/// Seeded points uniformly distributed in direction with log-uniform radius.
pub fn sample_points_3d(l: f64, n: usize, seed: u64) -> Vec<Vec3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r = radius(&mut rng, l);
            let z: f64 = 2.0 * rng.gen::<f64>() - 1.0;
            let phi = 2.0 * PI * rng.gen::<f64>();
            let s = (1.0 - z * z).sqrt();
            [r * s * phi.cos(), r * s * phi.sin(), r * z]
        })
        .collect()
}

pub fn sample_points_2d(l: f64, n: usize, seed: u64) -> Vec<Vec2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r = radius(&mut rng, l);
            let t = 2.0 * PI * rng.gen::<f64>();
            [r * t.cos(), r * t.sin()]
        })
        .collect()
}

/// Seeded points with independent random unit normals.
pub fn sample_point_normals_2d(l: f64, n: usize, seed: u64) -> Vec<(Vec2, SurfaceNormal2)> {
    let pts = sample_points_2d(l, n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    pts.into_iter()
        .map(|x| {
            let t = 2.0 * PI * rng.gen::<f64>();
            (x, SurfaceNormal2::normalized([t.cos(), t.sin()]).expect("unit normal"))
        })
        .collect()
}

/// Worst value of `f` over every material and sample point of a family.
fn worst<F>(opts: &SuiteOptions, family: Family, mut f: F) -> Result<f64, VerifyError>
where
    F: FnMut(&MaterialParams, &[f64]) -> Result<f64, VerifyError>,
{
    let mut m = 0.0f64;
    for p in &opts.materials {
        if family.dimension() == 3 {
            for x in sample_points_3d(p.l(), opts.points, opts.seed) {
                m = m.max(f(p, &x)?);
            }
        } else {
            for x in sample_points_2d(p.l(), opts.points, opts.seed) {
                m = m.max(f(p, &x)?);
            }
        }
    }
    Ok(m)
}

fn per_family<F>(opts: &SuiteOptions, name: &str, tol: f64, mut f: F) -> Result<Vec<CheckOutcome>, VerifyError>
where
    F: FnMut(Family, &MaterialParams, &[f64]) -> Result<f64, VerifyError>,
{
    Family::ALL
        .iter()
        .map(|&fam| Ok(CheckOutcome::new(format!("{name}/{fam}"), worst(opts, fam, |p, x| f(fam, p, x))?, tol)))
        .collect()
}

fn v3(x: &[f64]) -> Vec3 {
    [x[0], x[1], x[2]]
}

fn v2(x: &[f64]) -> Vec2 {
    [x[0], x[1]]
}

/// Closed-form stresses against the constitutive law applied to finite
/// differences of the displacement.
pub fn constitutive(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    per_family(opts, "constitutive", CONSTITUTIVE_TOL, |fam, p, x| {
        let e = if fam.dimension() == 3 {
            checks::constitutive_error_3d(fam, p, &v3(x), &opts.scheme)?
        } else {
            checks::constitutive_error_2d(fam, p, &v2(x), &opts.scheme)?
        };
        Ok(e.sigma.max(e.mu))
    })
}

/// Residual of the displacement field equation.
pub fn pde(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    per_family(opts, "pde", PDE_TOL, |fam, p, x| {
        if fam.dimension() == 3 {
            checks::pde_error_3d(fam, p, &v3(x), &opts.pde_scheme)
        } else {
            checks::pde_error_2d(fam, p, &v2(x), &opts.pde_scheme)
        }
    })
}

/// Pointwise force and moment equilibrium of the stress fields.
pub fn equilibrium(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    per_family(opts, "equilibrium", EQUILIBRIUM_TOL, |fam, p, x| {
        let (f, m) = checks::equilibrium_error(fam, p, x, &opts.scheme)?;
        Ok(f.max(m))
    })
}

/// Surface resultants at radii `l/2`, `2l` and `10l`, and their spread.
pub fn balance(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        let (quad, tol) = if fam.dimension() == 3 {
            (&opts.sphere, BALANCE_TOL_3D)
        } else {
            (&opts.circle, BALANCE_TOL_2D)
        };
        let want = Resultants::expected(fam);
        let (mut dev, mut spread) = (0.0f64, 0.0f64);
        for p in &opts.materials {
            let rs = BALANCE_RADII
                .iter()
                .map(|k| balance_integrals(fam, p, k * p.l(), quad))
                .collect::<Result<Vec<_>, _>>()?;
            for r in &rs {
                dev = dev.max(r.max_deviation(&want));
                spread = spread.max(r.max_deviation(&rs[0]));
            }
        }
        out.push(CheckOutcome::new(format!("balance/{fam}"), dev, tol));
        out.push(CheckOutcome::new(format!("balance/{fam}/radius-independence"), spread, tol));
    }
    Ok(out)
}

/// 3D: couple displacement equals force rotation bit for bit. 2D: couple
/// displacement against the finite-difference curl of the force displacement.
pub fn duality(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    let d3 = worst(opts, Family::Couple3D, |p, x| {
        let pt = EvalPoint3::new(v3(x))?;
        let uc = kernels3d::point_couple_kernels_3d(p, &pt)?.u;
        let wf = kernels3d::point_force_kernels_3d(p, &pt)?.omega;
        let same = uc.iter().flatten().zip(wf.iter().flatten()).all(|(a, b)| a.to_bits() == b.to_bits());
        Ok(if same { 0.0 } else { 1.0 })
    })?;
    let d2 = worst(opts, Family::Couple2D, |p, x| checks::duality_error_2d(p, &v2(x), &opts.scheme))?;
    Ok(vec![
        CheckOutcome::new("duality/3d", d3, 0.0),
        CheckOutcome::new("duality/2d", d2, DUALITY_TOL_2D),
    ])
}

/// Dilatation of every family from the analytic gradients.
pub fn equivoluminal(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    Family::ALL
        .iter()
        .map(|&fam| {
            let tol = if fam.is_couple() { TRACE_TOL_COUPLE } else { TRACE_TOL_FORCE };
            let m = worst(opts, fam, |p, x| checks::dilatation_error(fam, p, x))?;
            Ok(CheckOutcome::new(format!("dilatation/{fam}"), m, tol))
        })
        .collect()
}

/// Point force kernels at unit distance with a vanishing length scale
/// against the classical solution.
pub fn cauchy_limit(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    let dirs: [Vec3; 3] = [[1.0, 0.0, 0.0], [0.0, 0.6, 0.8], [0.48, -0.6, 0.64]];
    let (mut du, mut dm) = (0.0f64, 0.0f64);
    for p in &opts.materials {
        let p = p.with_length_scale(CAUCHY_LENGTH)?;
        for x in dirs {
            let pt = EvalPoint3::new(x)?;
            let b = kernels3d::point_force_kernels_3d(&p, &pt)?;
            let k = kernels3d::kelvin_displacement_3d(&p, &pt);
            let diff: Vec<f64> = b.u.iter().flatten().zip(k.iter().flatten()).map(|(a, c)| (a - c).abs()).collect();
            du = du.max(max_abs(diff.iter()) / max_abs(k.iter().flatten()));
            dm = dm.max(max_abs(b.mu.iter().flatten()) / (max_abs(b.sigma.iter().flatten().flatten()) * pt.r()));
        }
    }
    Ok(vec![
        CheckOutcome::new("cauchy-limit/displacement", du, CAUCHY_TOL),
        CheckOutcome::new("cauchy-limit/couple-stress", dm, CAUCHY_TOL),
    ])
}

/// Skew force-stress against the couple-stress curl, and the divergence of
/// its axial vector.
pub fn skew_structure(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        let (mut skew, mut div) = (0.0f64, 0.0f64);
        worst(opts, fam, |p, x| {
            let e = if fam.dimension() == 3 {
                checks::skew_structure_error_3d(fam, p, &v3(x), &opts.scheme)?
            } else {
                checks::skew_structure_error_2d(fam, p, &v2(x), &opts.scheme)?
            };
            skew = skew.max(e.skew);
            div = div.max(e.div_s);
            Ok(0.0)
        })?;
        out.push(CheckOutcome::new(format!("skew-stress/{fam}"), skew, SKEW_TOL));
        out.push(CheckOutcome::new(format!("div-s/{fam}"), div, SKEW_TOL));
    }
    Ok(out)
}

/// Plane moment-traction against `4 eta d(omega)/dn` at seeded point and
/// normal pairs.
pub fn moment_traction_2d(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    [Family::Force2D, Family::Couple2D]
        .iter()
        .map(|&fam| {
            let mut m = 0.0f64;
            for p in &opts.materials {
                for (x, n) in sample_point_normals_2d(p.l(), opts.points, opts.seed) {
                    m = m.max(checks::moment_traction_error_2d(fam, p, &x, &n, &opts.scheme)?);
                }
            }
            Ok(CheckOutcome::new(format!("moment-traction/{fam}"), m, MOMENT_TRACTION_TOL))
        })
        .collect()
}

/// Analytic displacement gradients and rotations against finite differences.
pub fn gradients(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    let mut out = per_family(opts, "gradient", GRADIENT_TOL, |fam, p, x| {
        checks::gradient_error(fam, p, x, &opts.scheme)
    })?;
    out.extend(per_family(opts, "rotation", GRADIENT_TOL, |fam, p, x| {
        checks::rotation_error(fam, p, x, &opts.scheme)
    })?);
    Ok(out)
}

/// Special functions against the stored high-precision table.
pub fn special_functions() -> Vec<CheckOutcome> {
    oracle::specfun_outcomes()
}

/// Every check, in a fixed order.
pub fn run_all(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, VerifyError> {
    let mut out = special_functions();
    out.extend(constitutive(opts)?);
    out.extend(pde(opts)?);
    out.extend(equilibrium(opts)?);
    out.extend(balance(opts)?);
    out.extend(duality(opts)?);
    out.extend(equivoluminal(opts)?);
    out.extend(cauchy_limit(opts)?);
    out.extend(skew_structure(opts)?);
    out.extend(moment_traction_2d(opts)?);
    out.extend(gradients(opts)?);
    Ok(out)
}
