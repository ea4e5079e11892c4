//! Three-dimensional influence tensors for a unit point force and a unit
//! point couple at the origin.
//!
//! All prefactors are written in terms of the unit direction `n = x / r`
//! and the ratio `l / r`, so `l = 0` evaluates to the classical limit with
//! the brackets at `x = r / l = inf`.

use std::f64::consts::PI;

use crate::error::KernelError;
use crate::material::{MaterialParams, SurfaceNormal3};
use crate::specfun;
use crate::tensor::{cross, kronecker as d, levi_civita3 as e, norm, Mat3, Tensor3, Vec3};

/// Field points closer to the source than this multiple of `l` are rejected.
pub const SINGULAR_RADIUS_FACTOR: f64 = 1e-12;

/// A field point away from the source at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint3 {
    x: Vec3,
    r: f64,
}

impl EvalPoint3 {
    pub fn new(x: Vec3) -> Result<Self, KernelError> {
        if x.iter().any(|c| !c.is_finite()) {
            return Err(KernelError::NonFinitePoint);
        }
        let r = norm(&x);
        if r == 0.0 {
            return Err(KernelError::SingularPoint { r });
        }
        Ok(Self { x, r })
    }

    pub fn x(&self) -> &Vec3 {
        &self.x
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    fn direction(&self) -> Vec3 {
        self.x.map(|c| c / self.r)
    }
}

impl TryFrom<Vec3> for EvalPoint3 {
    type Error = KernelError;

    fn try_from(x: Vec3) -> Result<Self, Self::Error> {
        Self::new(x)
    }
}

/// Displacement `U`, rotation `Omega`, force-stress `Sigma[j][i][q]` and
/// couple-stress vector `Mu` influences at one field point. The last index
/// is the source direction `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelBundle3D {
    pub u: Mat3,
    pub omega: Mat3,
    pub sigma: Tensor3,
    pub mu: Mat3,
}

/// Geometry shared by every kernel expression.
struct Frame {
    n: Vec3,
    r: f64,
    /// `r / l`, infinite when `l = 0`.
    x: f64,
    /// `(l / r)^2`
    lr2: f64,
}

fn frame(params: &MaterialParams, p: &EvalPoint3) -> Result<Frame, KernelError> {
    let l = params.l();
    let r = p.r();
    if r < SINGULAR_RADIUS_FACTOR * l {
        return Err(KernelError::SingularPoint { r });
    }
    let lr = l / r;
    Ok(Frame { n: p.direction(), r, x: r / l, lr2: lr * lr })
}

fn couple_frame(params: &MaterialParams, p: &EvalPoint3) -> Result<Frame, KernelError> {
    if params.l() == 0.0 {
        return Err(KernelError::UnsupportedLimit);
    }
    frame(params, p)
}

fn force_u(params: &MaterialParams, f: &Frame) -> Mat3 {
    let nu = params.nu();
    let mu = params.mu();
    let a = 1.0 / (16.0 * PI * mu * (1.0 - nu) * f.r);
    let b = f.lr2 / (4.0 * PI * mu * f.r);
    let (h2, h3) = (specfun::h2(f.x), specfun::h3(f.x));
    let n = &f.n;
    std::array::from_fn(|i| {
        std::array::from_fn(|q| {
            a * ((3.0 - 4.0 * nu) * d(i, q) + n[i] * n[q]) + b * (h2 * d(i, q) - h3 * n[i] * n[q])
        })
    })
}

/// Rotation of the force kernel, identical to the displacement of the couple kernel.
fn force_omega(params: &MaterialParams, f: &Frame) -> Mat3 {
    let c = -specfun::h1c(f.x) / (8.0 * PI * params.mu() * f.r * f.r);
    let n = &f.n;
    std::array::from_fn(|i| std::array::from_fn(|q| c * (0..3).map(|p| e(i, p, q) * n[p]).sum::<f64>()))
}

fn force_sigma(params: &MaterialParams, f: &Frame) -> Tensor3 {
    let nu = params.nu();
    let r2 = f.r * f.r;
    let a = -1.0 / (8.0 * PI * (1.0 - nu) * r2);
    let b = f.lr2 / (2.0 * PI * r2);
    let c = specfun::h1(f.x) / (2.0 * PI * r2);
    let (h3, h4) = (specfun::h3(f.x), specfun::h4(f.x));
    let n = &f.n;
    std::array::from_fn(|j| {
        std::array::from_fn(|i| {
            std::array::from_fn(|q| {
                let nnn = n[i] * n[j] * n[q];
                let classical = (1.0 - 2.0 * nu) * (n[j] * d(i, q) + n[i] * d(j, q) - n[q] * d(i, j)) + 3.0 * nnn;
                let sym3 = d(i, j) * n[q] + d(j, q) * n[i] + d(i, q) * n[j];
                a * classical + b * (h4 * nnn - h3 * sym3) + c * n[i] * d(j, q)
            })
        })
    })
}

fn force_mu(f: &Frame) -> Mat3 {
    let b = f.lr2 / (2.0 * PI * f.r);
    let (h2, h3) = (specfun::h2(f.x), specfun::h3(f.x));
    let n = &f.n;
    std::array::from_fn(|i| std::array::from_fn(|q| b * (h2 * d(i, q) - h3 * n[i] * n[q])))
}

/// `dU_iq / dx_j` of the force kernel, stored as `[j][i][q]`.
fn force_grad(params: &MaterialParams, f: &Frame) -> Tensor3 {
    let nu = params.nu();
    let mu = params.mu();
    let r2 = f.r * f.r;
    let a = 1.0 / (16.0 * PI * mu * (1.0 - nu) * r2);
    let b = f.lr2 / (4.0 * PI * mu * r2);
    let c = specfun::h1(f.x) / (4.0 * PI * mu * r2);
    let (h3, h4) = (specfun::h3(f.x), specfun::h4(f.x));
    let n = &f.n;
    std::array::from_fn(|j| {
        std::array::from_fn(|i| {
            std::array::from_fn(|q| {
                let nnn = n[i] * n[j] * n[q];
                let classical = -(3.0 - 4.0 * nu) * n[j] * d(i, q) + d(i, j) * n[q] + d(j, q) * n[i] - 3.0 * nnn;
                let sym3 = d(i, j) * n[q] + d(j, q) * n[i] + d(i, q) * n[j];
                a * classical + b * (h4 * nnn - h3 * sym3) + c * n[j] * d(i, q)
            })
        })
    })
}

fn couple_omega(params: &MaterialParams, f: &Frame) -> Mat3 {
    let r3 = f.r * f.r * f.r;
    let a = specfun::h3(f.x) / (16.0 * PI * params.mu() * r3);
    let b = specfun::h1c(f.x) / (8.0 * PI * params.mu() * r3);
    let n = &f.n;
    std::array::from_fn(|i| std::array::from_fn(|q| a * (n[i] * n[q] - d(i, q)) + b * d(i, q)))
}

fn couple_sigma(f: &Frame) -> Tensor3 {
    let r3 = f.r * f.r * f.r;
    let a = 3.0 / (8.0 * PI * r3);
    let b = (2.0 * specfun::h3(f.x) - 3.0) / (8.0 * PI * r3);
    let c = specfun::h1(f.x) / (4.0 * PI * r3);
    let n = &f.n;
    std::array::from_fn(|j| {
        std::array::from_fn(|i| {
            std::array::from_fn(|q| {
                let mut acc = -c * e(i, j, q);
                for p in 0..3 {
                    acc += n[p] * (a * n[j] * e(i, p, q) + b * n[i] * e(j, p, q));
                }
                acc
            })
        })
    })
}

fn couple_mu(f: &Frame) -> Mat3 {
    let c = specfun::h1(f.x) / (4.0 * PI * f.r * f.r);
    let n = &f.n;
    std::array::from_fn(|i| std::array::from_fn(|q| c * (0..3).map(|p| e(i, p, q) * n[p]).sum::<f64>()))
}

/// Gradient of the couple-kernel displacement (equivalently of the force-kernel rotation).
fn couple_grad(params: &MaterialParams, f: &Frame) -> Tensor3 {
    let r3 = f.r * f.r * f.r;
    let a = specfun::h3(f.x) / (8.0 * PI * params.mu() * r3);
    let b = specfun::h1c(f.x) / (8.0 * PI * params.mu() * r3);
    let n = &f.n;
    std::array::from_fn(|j| {
        std::array::from_fn(|i| {
            std::array::from_fn(|q| {
                let rot: f64 = (0..3).map(|p| n[p] * e(i, p, q)).sum();
                a * n[j] * rot - b * e(i, j, q)
            })
        })
    })
}

/// All influences of a unit point force. Valid for `l = 0` (Kelvin solution).
pub fn point_force_kernels_3d(params: &MaterialParams, x: &EvalPoint3) -> Result<KernelBundle3D, KernelError> {
    let f = frame(params, x)?;
    Ok(KernelBundle3D {
        u: force_u(params, &f),
        omega: force_omega(params, &f),
        sigma: force_sigma(params, &f),
        mu: force_mu(&f),
    })
}

/// All influences of a unit point couple. Requires `l > 0`.
pub fn point_couple_kernels_3d(params: &MaterialParams, x: &EvalPoint3) -> Result<KernelBundle3D, KernelError> {
    let f = couple_frame(params, x)?;
    Ok(KernelBundle3D {
        u: force_omega(params, &f),
        omega: couple_omega(params, &f),
        sigma: couple_sigma(&f),
        mu: couple_mu(&f),
    })
}

pub fn point_force_displacement_3d(params: &MaterialParams, x: &EvalPoint3) -> Result<Mat3, KernelError> {
    Ok(force_u(params, &frame(params, x)?))
}

pub fn point_couple_displacement_3d(params: &MaterialParams, x: &EvalPoint3) -> Result<Mat3, KernelError> {
    Ok(force_omega(params, &couple_frame(params, x)?))
}

pub fn point_force_rotation_3d(params: &MaterialParams, x: &EvalPoint3) -> Result<Mat3, KernelError> {
    Ok(force_omega(params, &frame(params, x)?))
}

pub fn point_couple_rotation_3d(params: &MaterialParams, x: &EvalPoint3) -> Result<Mat3, KernelError> {
    Ok(couple_omega(params, &couple_frame(params, x)?))
}

/// Displacement gradient `dU_iq / dx_j` of the force kernel as `[j][i][q]`.
pub fn point_force_displacement_gradient_3d(params: &MaterialParams, x: &EvalPoint3) -> Result<Tensor3, KernelError> {
    Ok(force_grad(params, &frame(params, x)?))
}

/// Displacement gradient of the couple kernel as `[j][i][q]`.
pub fn point_couple_displacement_gradient_3d(params: &MaterialParams, x: &EvalPoint3) -> Result<Tensor3, KernelError> {
    Ok(couple_grad(params, &couple_frame(params, x)?))
}

/// Closed-form dilatation `U_kq,k` of the force kernel, one entry per source direction.
pub fn point_force_dilatation_3d(params: &MaterialParams, x: &EvalPoint3) -> Result<Vec3, KernelError> {
    let f = frame(params, x)?;
    let nu = params.nu();
    let c = -(1.0 - 2.0 * nu) / (8.0 * PI * params.mu() * (1.0 - nu) * f.r * f.r);
    Ok(f.n.map(|nq| c * nq))
}

/// Classical (Kelvin) displacement influence.
pub fn kelvin_displacement_3d(params: &MaterialParams, x: &EvalPoint3) -> Mat3 {
    let nu = params.nu();
    let n = x.direction();
    let a = 1.0 / (16.0 * PI * params.mu() * (1.0 - nu) * x.r());
    std::array::from_fn(|i| std::array::from_fn(|q| a * ((3.0 - 4.0 * nu) * d(i, q) + n[i] * n[q])))
}

/// Force-traction influence `T_iq = Sigma_jiq n_j`.
pub fn force_traction_3d(bundle: &KernelBundle3D, n: &SurfaceNormal3) -> Mat3 {
    let n = n.get();
    std::array::from_fn(|i| std::array::from_fn(|q| (0..3).map(|j| bundle.sigma[j][i][q] * n[j]).sum()))
}

/// Moment-traction influence, column `q` equal to `n x Mu[.][q]`.
pub fn moment_traction_3d(bundle: &KernelBundle3D, n: &SurfaceNormal3) -> Mat3 {
    let cols: [Vec3; 3] = std::array::from_fn(|q| cross(n.get(), &crate::tensor::column(&bundle.mu, q)));
    std::array::from_fn(|i| std::array::from_fn(|q| cols[q][i]))
}
