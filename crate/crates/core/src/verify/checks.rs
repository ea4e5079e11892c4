//! Pointwise comparisons between the closed forms and finite-difference
//! derivatives of the kernel displacements.
//!
//! Every function returns a relative error: the largest absolute deviation
//! divided by the largest magnitude of the reference quantity at the point.

use crate::error::{KernelError, VerifyError};
use crate::kernels2d::{self, EvalPoint2, PlaneBundle};
use crate::kernels3d::{self, EvalPoint3, KernelBundle3D};
use crate::material::{
    couple_stress_from_curvature, total_stress_from_gradients, total_stress_from_gradients_2d, MaterialParams,
    SurfaceNormal2,
};
use crate::tensor::{flatten_mat, levi_civita2, levi_civita3 as e, max_abs, norm, Mat3, Vec2, Vec3};

use super::fd::{derivatives, pde_residual_from, Derivatives, FdScheme};
use super::Family;

fn ratio(diff: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

// Flattened displacement fields, component index `i * N + q`.

fn u_force3(p: &MaterialParams) -> impl Fn(&Vec3) -> Result<[f64; 9], KernelError> + '_ {
    move |x| Ok(flatten_mat(&kernels3d::point_force_displacement_3d(p, &EvalPoint3::new(*x)?)?))
}

fn u_couple3(p: &MaterialParams) -> impl Fn(&Vec3) -> Result<[f64; 9], KernelError> + '_ {
    move |x| Ok(flatten_mat(&kernels3d::point_couple_displacement_3d(p, &EvalPoint3::new(*x)?)?))
}

fn u_force2(p: &MaterialParams) -> impl Fn(&Vec2) -> Result<[f64; 4], KernelError> + '_ {
    move |x| Ok(flatten_mat(&kernels2d::line_force_displacement_2d(p, &EvalPoint2::new(*x)?)?))
}

fn u_couple2(p: &MaterialParams) -> impl Fn(&Vec2) -> Result<[f64; 2], KernelError> + '_ {
    move |x| kernels2d::line_couple_displacement_2d(p, &EvalPoint2::new(*x)?)
}

fn bundle3(family: Family, p: &MaterialParams, x: &Vec3) -> Result<KernelBundle3D, KernelError> {
    let pt = EvalPoint3::new(*x)?;
    match family {
        Family::Force3D => kernels3d::point_force_kernels_3d(p, &pt),
        _ => kernels3d::point_couple_kernels_3d(p, &pt),
    }
}

/// Errors of the closed-form force-stress and couple-stress against the
/// constitutive law applied to finite-difference derivatives of `U`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstitutiveError {
    pub sigma: f64,
    pub mu: f64,
}

fn constitutive_3d<const M: usize>(
    d: &Derivatives<3, M>,
    params: &MaterialParams,
    b: &KernelBundle3D,
    r: f64,
) -> ConstitutiveError {
    let (mut ds, mut dm) = (0.0f64, 0.0f64);
    for q in 0..3 {
        let c = |i: usize| i * 3 + q;
        let grad: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| d.partial(c(i), &[j])));
        // lap omega_k = (1/2) e_kab lap u_b,a
        let lap_w: Vec3 = std::array::from_fn(|k| {
            let mut s = 0.0;
            for a in 0..3 {
                for bb in 0..3 {
                    if e(k, a, bb) != 0.0 {
                        s += 0.5 * e(k, a, bb) * d.laplacian(c(bb), &[a]);
                    }
                }
            }
            s
        });
        let sigma = total_stress_from_gradients(params, &grad, &lap_w);
        let kappa: Vec3 = std::array::from_fn(|i| {
            let grad_div: f64 = (0..3).map(|k| d.partial(c(k), &[k, i])).sum();
            0.25 * (grad_div - d.laplacian(c(i), &[]))
        });
        let mu = couple_stress_from_curvature(params, &kappa);
        for i in 0..3 {
            dm = dm.max((mu[i] - b.mu[i][q]).abs());
            for j in 0..3 {
                ds = ds.max((sigma[j][i] - b.sigma[j][i][q]).abs());
            }
        }
    }
    stress_errors(ds, dm, max_abs(b.sigma.iter().flatten().flatten()), max_abs(b.mu.iter().flatten()), r)
}

/// Couple-stress errors are taken relative to the larger of `|Mu|` and
/// `r |Sigma|`, since `Mu` may decay exponentially while `Sigma` does not.
fn stress_errors(ds: f64, dm: f64, sigma_scale: f64, mu_scale: f64, r: f64) -> ConstitutiveError {
    ConstitutiveError { sigma: ratio(ds, sigma_scale), mu: ratio(dm, mu_scale.max(r * sigma_scale)) }
}

/// Plane strain stresses from derivatives of a displacement with components `c(a)`.
fn plane_stresses<const M: usize>(
    d: &Derivatives<2, M>,
    params: &MaterialParams,
    c: impl Fn(usize) -> usize,
) -> ([[f64; 2]; 2], Vec2) {
    let grad = std::array::from_fn(|a| std::array::from_fn(|b| d.partial(c(a), &[b])));
    let lap_w = 0.5 * (d.laplacian(c(1), &[0]) - d.laplacian(c(0), &[1]));
    let sigma = total_stress_from_gradients_2d(params, &grad, lap_w);
    let grad_w: Vec2 = std::array::from_fn(|b| 0.5 * (d.partial(c(1), &[0, b]) - d.partial(c(0), &[1, b])));
    let kappa = [0.5 * grad_w[1], -0.5 * grad_w[0]];
    (sigma, couple_stress_from_curvature(params, &kappa))
}

pub fn constitutive_error_3d(
    family: Family,
    params: &MaterialParams,
    x: &Vec3,
    scheme: &FdScheme,
) -> Result<ConstitutiveError, VerifyError> {
    let b = bundle3(family, params, x)?;
    let d = match family {
        Family::Force3D => derivatives(u_force3(params), x, 3, scheme)?,
        _ => derivatives(u_couple3(params), x, 3, scheme)?,
    };
    Ok(constitutive_3d(&d, params, &b, norm(x)))
}

pub fn constitutive_error_2d(
    family: Family,
    params: &MaterialParams,
    x: &Vec2,
    scheme: &FdScheme,
) -> Result<ConstitutiveError, VerifyError> {
    let pt = EvalPoint2::new(*x)?;
    let (ds, dm, ss, sm) = match family {
        Family::Force2D => {
            let b = kernels2d::line_force_kernels_2d(params, &pt)?;
            let d = derivatives(u_force2(params), x, 3, scheme)?;
            let (mut ds, mut dm) = (0.0f64, 0.0f64);
            for q in 0..2 {
                let (sigma, mu) = plane_stresses(&d, params, |a| a * 2 + q);
                for a in 0..2 {
                    dm = dm.max((mu[a] - b.mu[a][q]).abs());
                    for be in 0..2 {
                        ds = ds.max((sigma[be][a] - b.sigma[be][a][q]).abs());
                    }
                }
            }
            (ds, dm, max_abs(b.sigma.iter().flatten().flatten()), max_abs(b.mu.iter().flatten()))
        }
        _ => {
            let b = kernels2d::line_couple_kernels_2d(params, &pt)?;
            let d = derivatives(u_couple2(params), x, 3, scheme)?;
            let (sigma, mu) = plane_stresses(&d, params, |a| a);
            let (mut ds, mut dm) = (0.0f64, 0.0f64);
            for a in 0..2 {
                dm = dm.max((mu[a] - b.mu[a]).abs());
                for be in 0..2 {
                    ds = ds.max((sigma[be][a] - b.sigma[be][a]).abs());
                }
            }
            (ds, dm, max_abs(b.sigma.iter().flatten()), max_abs(b.mu.iter()))
        }
    };
    Ok(stress_errors(ds, dm, ss, sm, norm(x)))
}

/// Field-equation residual of one column over the larger of `mu |u| / r^2`
/// and the largest operator term.
fn pde_column<const D: usize, const M: usize>(
    d: &Derivatives<D, M>,
    params: &MaterialParams,
    r: f64,
    comp: impl Fn(usize) -> usize + Copy,
) -> f64 {
    let res = pde_residual_from(d, params, comp);
    let u = (0..D).map(|i| d.partial(comp(i), &[]).abs()).fold(0.0, f64::max);
    let scale = res.scale.max(params.mu() * u / (r * r));
    ratio(max_abs(res.residual.iter()), scale)
}

/// Worst normalized residual of the displacement field equation over the
/// source columns.
pub fn pde_error_3d(family: Family, params: &MaterialParams, x: &Vec3, scheme: &FdScheme) -> Result<f64, VerifyError> {
    let d = match family {
        Family::Force3D => derivatives(u_force3(params), x, 4, scheme)?,
        _ => derivatives(u_couple3(params), x, 4, scheme)?,
    };
    let r = norm(x);
    Ok((0..3).map(|q| pde_column(&d, params, r, |i| i * 3 + q)).fold(0.0, f64::max))
}

pub fn pde_error_2d(family: Family, params: &MaterialParams, x: &Vec2, scheme: &FdScheme) -> Result<f64, VerifyError> {
    let r = norm(x);
    Ok(match family {
        Family::Force2D => {
            let d = derivatives(u_force2(params), x, 4, scheme)?;
            (0..2).map(|q| pde_column(&d, params, r, |a| a * 2 + q)).fold(0.0, f64::max)
        }
        _ => {
            let d = derivatives(u_couple2(params), x, 4, scheme)?;
            pde_column(&d, params, r, |a| a)
        }
    })
}

/// Errors of the skew force-stress identity `sigma_[ji] = -mu_[i,j]` and of
/// `div s = 0`, relative to `|Sigma|` and `|Sigma| / r`. Both sides of either
/// identity may decay exponentially while `Sigma` does not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewStructureError {
    pub skew: f64,
    pub div_s: f64,
}

/// Axial vector `s_i = (1/2) e_ijk sigma_jk` per source column, flattened `i * 3 + q`.
fn skew_vectors(b: &KernelBundle3D) -> [f64; 9] {
    std::array::from_fn(|k| {
        let (i, q) = (k / 3, k % 3);
        let mut s = 0.0;
        for j in 0..3 {
            for m in 0..3 {
                s += 0.5 * e(i, j, m) * b.sigma[j][m][q];
            }
        }
        s
    })
}

pub fn skew_structure_error_3d(
    family: Family,
    params: &MaterialParams,
    x: &Vec3,
    scheme: &FdScheme,
) -> Result<SkewStructureError, VerifyError> {
    let b = bundle3(family, params, x)?;
    let field = |y: &Vec3| -> Result<[f64; 18], KernelError> {
        let b = bundle3(family, params, y)?;
        let mu: [f64; 9] = flatten_mat(&b.mu);
        let s = skew_vectors(&b);
        Ok(std::array::from_fn(|k| if k < 9 { mu[k] } else { s[k - 9] }))
    };
    let d = derivatives(field, x, 1, scheme)?;
    let mut dev = 0.0f64;
    let mut div = 0.0f64;
    for q in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let skew = 0.5 * (b.sigma[j][i][q] - b.sigma[i][j][q]);
                let mu_skew = 0.5 * (d.partial(i * 3 + q, &[j]) - d.partial(j * 3 + q, &[i]));
                dev = dev.max((skew + mu_skew).abs());
            }
        }
        let dq: f64 = (0..3).map(|i| d.partial(9 + i * 3 + q, &[i])).sum();
        div = div.max(dq.abs());
    }
    let sigma = max_abs(b.sigma.iter().flatten().flatten());
    Ok(SkewStructureError { skew: ratio(dev, sigma), div_s: ratio(div, sigma / norm(x)) })
}

/// In the plane `s` points out of plane and depends only on in-plane
/// coordinates, so `div s` vanishes identically and is reported as zero.
pub fn skew_structure_error_2d(
    family: Family,
    params: &MaterialParams,
    x: &Vec2,
    scheme: &FdScheme,
) -> Result<SkewStructureError, VerifyError> {
    let pt = EvalPoint2::new(*x)?;
    let (dev, scale) = match family {
        Family::Force2D => {
            let b = kernels2d::line_force_kernels_2d(params, &pt)?;
            let field = |y: &Vec2| -> Result<[f64; 4], KernelError> {
                Ok(flatten_mat(&kernels2d::line_force_kernels_2d(params, &EvalPoint2::new(*y)?)?.mu))
            };
            let d = derivatives(field, x, 1, scheme)?;
            let mut dev = 0.0f64;
            for q in 0..2 {
                let skew = 0.5 * (b.sigma[1][0][q] - b.sigma[0][1][q]);
                let mu_skew = 0.5 * (d.partial(q, &[1]) - d.partial(2 + q, &[0]));
                dev = dev.max((skew + mu_skew).abs());
            }
            (dev, max_abs(b.sigma.iter().flatten().flatten()))
        }
        _ => {
            let b = kernels2d::line_couple_kernels_2d(params, &pt)?;
            let field = |y: &Vec2| -> Result<[f64; 2], KernelError> {
                Ok(kernels2d::line_couple_kernels_2d(params, &EvalPoint2::new(*y)?)?.mu)
            };
            let d = derivatives(field, x, 1, scheme)?;
            let skew = 0.5 * (b.sigma[1][0] - b.sigma[0][1]);
            let mu_skew = 0.5 * (d.partial(0, &[1]) - d.partial(1, &[0]));
            ((skew + mu_skew).abs(), max_abs(b.sigma.iter().flatten()))
        }
    };
    Ok(SkewStructureError { skew: ratio(dev, scale), div_s: 0.0 })
}

/// Force and moment equilibrium residuals of one stress field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumResidual {
    /// `sigma_ji,j`
    pub force: Vec3,
    /// `mu_ji,j + e_ijk sigma_jk` with `mu_ji = e_ijk mu_k`
    pub moment: Vec3,
    /// `|sigma|` at the point.
    pub sigma_scale: f64,
}

impl EquilibriumResidual {
    /// Force residual over `|sigma| / r` and moment residual over `|sigma|`.
    pub fn relative(&self, r: f64) -> (f64, f64) {
        (
            ratio(max_abs(self.force.iter()), self.sigma_scale / r),
            ratio(max_abs(self.moment.iter()), self.sigma_scale),
        )
    }
}

/// Finite-difference equilibrium residuals of a force-stress field
/// `sigma[j][i]` and couple-stress vector field without body loads.
pub fn equilibrium_residuals<S, C>(
    sigma_field: S,
    mu_field: C,
    x: &Vec3,
    scheme: &FdScheme,
) -> Result<EquilibriumResidual, VerifyError>
where
    S: Fn(&Vec3) -> Result<Mat3, KernelError>,
    C: Fn(&Vec3) -> Result<Vec3, KernelError>,
{
    let sigma = sigma_field(x)?;
    let field = |y: &Vec3| -> Result<[f64; 12], KernelError> {
        let s: [f64; 9] = flatten_mat(&sigma_field(y)?);
        let m = mu_field(y)?;
        Ok(std::array::from_fn(|k| if k < 9 { s[k] } else { m[k - 9] }))
    };
    let d = derivatives(field, x, 1, scheme)?;
    let force = std::array::from_fn(|i| (0..3).map(|j| d.partial(j * 3 + i, &[j])).sum());
    let moment = std::array::from_fn(|i| {
        let mut acc = 0.0;
        for j in 0..3 {
            for k in 0..3 {
                acc += e(i, j, k) * (d.partial(9 + k, &[j]) + sigma[j][k]);
            }
        }
        acc
    });
    Ok(EquilibriumResidual { force, moment, sigma_scale: max_abs(sigma.iter().flatten()) })
}

/// Worst relative equilibrium residuals `(force, moment)` over the source
/// columns of a kernel family. Plane families use the in-plane force
/// balance and the out-of-plane moment balance.
pub fn equilibrium_error(
    family: Family,
    params: &MaterialParams,
    x: &[f64],
    scheme: &FdScheme,
) -> Result<(f64, f64), VerifyError> {
    let mut worst = (0.0f64, 0.0f64);
    match family {
        Family::Force3D | Family::Couple3D => {
            let x3 = [x[0], x[1], x[2]];
            let r = norm(&x3);
            for q in 0..3 {
                let res = equilibrium_residuals(
                    |y| Ok(crate::tensor::slice_last(&bundle3(family, params, y)?.sigma, q)),
                    |y| Ok(crate::tensor::column(&bundle3(family, params, y)?.mu, q)),
                    &x3,
                    scheme,
                )?;
                let (f, m) = res.relative(r);
                worst = (worst.0.max(f), worst.1.max(m));
            }
        }
        Family::Force2D | Family::Couple2D => {
            let x2 = [x[0], x[1]];
            let r = norm(&x2);
            let cols = if family == Family::Force2D { 2 } else { 1 };
            // sigma (4) and mu (2) for each column
            let field = |y: &Vec2| -> Result<[f64; 12], KernelError> {
                let pt = EvalPoint2::new(*y)?;
                let mut out = [0.0; 12];
                if family == Family::Force2D {
                    let b = kernels2d::line_force_kernels_2d(params, &pt)?;
                    for q in 0..2 {
                        for k in 0..4 {
                            out[q * 6 + k] = b.sigma[k / 2][k % 2][q];
                        }
                        out[q * 6 + 4] = b.mu[0][q];
                        out[q * 6 + 5] = b.mu[1][q];
                    }
                } else {
                    let b = kernels2d::line_couple_kernels_2d(params, &pt)?;
                    for k in 0..4 {
                        out[k] = b.sigma[k / 2][k % 2];
                    }
                    out[4] = b.mu[0];
                    out[5] = b.mu[1];
                }
                Ok(out)
            };
            let center = field(&x2)?;
            let d = derivatives(field, &x2, 1, scheme)?;
            for q in 0..cols {
                let o = q * 6;
                let scale = max_abs(center[o..o + 4].iter());
                let force: Vec2 = std::array::from_fn(|a| (0..2).map(|be| d.partial(o + be * 2 + a, &[be])).sum());
                // mu_b3,b + e_ab sigma_ab with mu_b3 = e_ba mu_a
                let mut moment = 0.0;
                for a in 0..2 {
                    for be in 0..2 {
                        moment += levi_civita2(be, a) * d.partial(o + 4 + a, &[be]);
                        moment += levi_civita2(a, be) * center[o + a * 2 + be];
                    }
                }
                worst.0 = worst.0.max(ratio(max_abs(force.iter()), scale / r));
                worst.1 = worst.1.max(ratio(moment.abs(), scale));
            }
        }
    }
    Ok(worst)
}

/// Plane duality: `u^C_a = (1/2) e_gb dU^F_ag / dx_b`.
pub fn duality_error_2d(params: &MaterialParams, x: &Vec2, scheme: &FdScheme) -> Result<f64, VerifyError> {
    let uc = kernels2d::line_couple_displacement_2d(params, &EvalPoint2::new(*x)?)?;
    let d = derivatives(u_force2(params), x, 1, scheme)?;
    let mut dev = 0.0f64;
    for a in 0..2 {
        let mut v = 0.0;
        for g in 0..2 {
            for b in 0..2 {
                v += 0.5 * levi_civita2(g, b) * d.partial(a * 2 + g, &[b]);
            }
        }
        dev = dev.max((v - uc[a]).abs());
    }
    Ok(ratio(dev, max_abs(uc.iter())))
}

/// Plane moment-traction against `4 eta d(omega)/dn` from finite differences
/// of the rotation, normalized by `4 eta |grad omega|`.
pub fn moment_traction_error_2d(
    family: Family,
    params: &MaterialParams,
    x: &Vec2,
    n: &SurfaceNormal2,
    scheme: &FdScheme,
) -> Result<f64, VerifyError> {
    let pt = EvalPoint2::new(*x)?;
    let eta4 = 4.0 * params.eta();
    let nn = n.get();
    let (dev, scale) = match family {
        Family::Force2D => {
            let b = kernels2d::line_force_kernels_2d(params, &pt)?;
            let m = b.moment_traction(n);
            let d = derivatives(
                |y: &Vec2| kernels2d::line_force_rotation_2d(params, &EvalPoint2::new(*y)?),
                x,
                1,
                scheme,
            )?;
            let (mut dev, mut scale) = (0.0f64, 0.0f64);
            for q in 0..2 {
                let g = [d.partial(q, &[0]), d.partial(q, &[1])];
                dev = dev.max((m[q] - eta4 * (g[0] * nn[0] + g[1] * nn[1])).abs());
                scale = scale.max(eta4 * norm(&g));
            }
            (dev, scale)
        }
        _ => {
            let b = kernels2d::line_couple_kernels_2d(params, &pt)?;
            let m = b.moment_traction(n);
            let d = derivatives(
                |y: &Vec2| Ok([kernels2d::line_couple_rotation_2d(params, &EvalPoint2::new(*y)?)?]),
                x,
                1,
                scheme,
            )?;
            let g = [d.partial(0, &[0]), d.partial(0, &[1])];
            ((m - eta4 * (g[0] * nn[0] + g[1] * nn[1])).abs(), eta4 * norm(&g))
        }
    };
    Ok(ratio(dev, scale))
}

/// Dilatation check from the analytic displacement gradients. Couple
/// families: trace over the largest strain entry. Force families: trace
/// against the closed-form dilatation, over its largest entry.
pub fn dilatation_error(family: Family, params: &MaterialParams, x: &[f64]) -> Result<f64, VerifyError> {
    Ok(match family {
        Family::Force3D => {
            let p = EvalPoint3::new([x[0], x[1], x[2]])?;
            let g = kernels3d::point_force_displacement_gradient_3d(params, &p)?;
            let want = kernels3d::point_force_dilatation_3d(params, &p)?;
            let dev = (0..3).map(|q| ((0..3).map(|k| g[k][k][q]).sum::<f64>() - want[q]).abs()).fold(0.0, f64::max);
            ratio(dev, max_abs(want.iter()))
        }
        Family::Couple3D => {
            let p = EvalPoint3::new([x[0], x[1], x[2]])?;
            let g = kernels3d::point_couple_displacement_gradient_3d(params, &p)?;
            let mut dev = 0.0f64;
            let mut scale = 0.0f64;
            for q in 0..3 {
                dev = dev.max((0..3).map(|k| g[k][k][q]).sum::<f64>().abs());
                for i in 0..3 {
                    for j in 0..3 {
                        scale = scale.max((0.5 * (g[j][i][q] + g[i][j][q])).abs());
                    }
                }
            }
            ratio(dev, scale)
        }
        Family::Force2D => {
            let p = EvalPoint2::new([x[0], x[1]])?;
            let g = kernels2d::line_force_displacement_gradient_2d(params, &p)?;
            let want = kernels2d::line_force_dilatation_2d(params, &p)?;
            let dev = (0..2).map(|q| (g[0][0][q] + g[1][1][q] - want[q]).abs()).fold(0.0, f64::max);
            ratio(dev, max_abs(want.iter()))
        }
        Family::Couple2D => {
            let p = EvalPoint2::new([x[0], x[1]])?;
            let g = kernels2d::line_couple_displacement_gradient_2d(params, &p)?;
            let scale = max_abs([g[0][0], g[1][1], 0.5 * (g[0][1] + g[1][0])].iter());
            ratio((g[0][0] + g[1][1]).abs(), scale)
        }
    })
}

/// Analytic displacement gradient against finite differences of `U`,
/// relative to the largest gradient entry.
pub fn gradient_error(family: Family, params: &MaterialParams, x: &[f64], scheme: &FdScheme) -> Result<f64, VerifyError> {
    Ok(match family {
        Family::Force3D | Family::Couple3D => {
            let x3 = [x[0], x[1], x[2]];
            let p = EvalPoint3::new(x3)?;
            let (g, d) = if family == Family::Force3D {
                (
                    kernels3d::point_force_displacement_gradient_3d(params, &p)?,
                    derivatives(u_force3(params), &x3, 1, scheme)?,
                )
            } else {
                (
                    kernels3d::point_couple_displacement_gradient_3d(params, &p)?,
                    derivatives(u_couple3(params), &x3, 1, scheme)?,
                )
            };
            let mut dev = 0.0f64;
            for j in 0..3 {
                for i in 0..3 {
                    for q in 0..3 {
                        dev = dev.max((g[j][i][q] - d.partial(i * 3 + q, &[j])).abs());
                    }
                }
            }
            ratio(dev, max_abs(g.iter().flatten().flatten()))
        }
        Family::Force2D => {
            let x2 = [x[0], x[1]];
            let g = kernels2d::line_force_displacement_gradient_2d(params, &EvalPoint2::new(x2)?)?;
            let d = derivatives(u_force2(params), &x2, 1, scheme)?;
            let mut dev = 0.0f64;
            for b in 0..2 {
                for a in 0..2 {
                    for q in 0..2 {
                        dev = dev.max((g[b][a][q] - d.partial(a * 2 + q, &[b])).abs());
                    }
                }
            }
            ratio(dev, max_abs(g.iter().flatten().flatten()))
        }
        Family::Couple2D => {
            let x2 = [x[0], x[1]];
            let g = kernels2d::line_couple_displacement_gradient_2d(params, &EvalPoint2::new(x2)?)?;
            let d = derivatives(u_couple2(params), &x2, 1, scheme)?;
            let mut dev = 0.0f64;
            for b in 0..2 {
                for a in 0..2 {
                    dev = dev.max((g[b][a] - d.partial(a, &[b])).abs());
                }
            }
            ratio(dev, max_abs(g.iter().flatten()))
        }
    })
}

/// Largest first derivative of any component.
fn gradient_scale<const D: usize, const M: usize>(d: &Derivatives<D, M>) -> f64 {
    (0..M).flat_map(|c| (0..D).map(move |a| d.partial(c, &[a]).abs())).fold(0.0, f64::max)
}

/// Rotation closed form against `(1/2) curl U` from finite differences,
/// relative to the largest displacement gradient.
pub fn rotation_error(family: Family, params: &MaterialParams, x: &[f64], scheme: &FdScheme) -> Result<f64, VerifyError> {
    Ok(match family {
        Family::Force3D | Family::Couple3D => {
            let x3 = [x[0], x[1], x[2]];
            let b = bundle3(family, params, &x3)?;
            let d = if family == Family::Force3D {
                derivatives(u_force3(params), &x3, 1, scheme)?
            } else {
                derivatives(u_couple3(params), &x3, 1, scheme)?
            };
            let mut dev = 0.0f64;
            for q in 0..3 {
                for i in 0..3 {
                    let mut w = 0.0;
                    for j in 0..3 {
                        for k in 0..3 {
                            w += 0.5 * e(i, j, k) * d.partial(k * 3 + q, &[j]);
                        }
                    }
                    dev = dev.max((w - b.omega[i][q]).abs());
                }
            }
            ratio(dev, gradient_scale(&d))
        }
        Family::Force2D => {
            let x2 = [x[0], x[1]];
            let b = kernels2d::line_force_kernels_2d(params, &EvalPoint2::new(x2)?)?;
            let d = derivatives(u_force2(params), &x2, 1, scheme)?;
            let dev = (0..2)
                .map(|q| (0.5 * (d.partial(2 + q, &[0]) - d.partial(q, &[1])) - b.omega[q]).abs())
                .fold(0.0, f64::max);
            ratio(dev, gradient_scale(&d))
        }
        Family::Couple2D => {
            let x2 = [x[0], x[1]];
            let b = kernels2d::line_couple_kernels_2d(params, &EvalPoint2::new(x2)?)?;
            let d = derivatives(u_couple2(params), &x2, 1, scheme)?;
            let w = 0.5 * (d.partial(1, &[0]) - d.partial(0, &[1]));
            ratio((w - b.omega).abs(), gradient_scale(&d))
        }
    })
}
