//! Plane strain influence functions for a unit line force and a unit line
//! couple about the out-of-plane axis.
//!
//! The line-force displacement carries a `ln r` term measured in the
//! caller's length unit; changing units shifts it by a rigid translation.

use std::f64::consts::PI;

use crate::error::KernelError;
use crate::kernels3d::SINGULAR_RADIUS_FACTOR;
use crate::material::{MaterialParams, SurfaceNormal2};
use crate::specfun;
use crate::tensor::{kronecker as d, levi_civita2 as e, norm, Mat2, Tensor2, Vec2};

/// An in-plane field point away from the source at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint2 {
    x: Vec2,
    r: f64,
}

impl EvalPoint2 {
    pub fn new(x: Vec2) -> Result<Self, KernelError> {
        if x.iter().any(|c| !c.is_finite()) {
            return Err(KernelError::NonFinitePoint);
        }
        let r = norm(&x);
        if r == 0.0 {
            return Err(KernelError::SingularPoint { r });
        }
        Ok(Self { x, r })
    }

    pub fn x(&self) -> &Vec2 {
        &self.x
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    fn direction(&self) -> Vec2 {
        self.x.map(|c| c / self.r)
    }
}

impl TryFrom<Vec2> for EvalPoint2 {
    type Error = KernelError;

    fn try_from(x: Vec2) -> Result<Self, Self::Error> {
        Self::new(x)
    }
}

/// Line-force influences; the last index is the load direction `rho`.
/// `sigma[b][a][rho]` and `mu[a][rho]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelBundle2DForce {
    pub u: Mat2,
    pub omega: Vec2,
    pub sigma: Tensor2,
    pub mu: Mat2,
}

/// Line-couple influences for a unit couple about `e3`. `sigma[b][a]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelBundle2DCouple {
    pub u: Vec2,
    pub omega: f64,
    pub sigma: Mat2,
    pub mu: Vec2,
}

/// Out-of-plane stresses `sigma_33` and `mu_3a` that do not enter the
/// plane problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutOfPlane<S, M> {
    pub sigma33: S,
    pub mu3: M,
}

struct Frame {
    n: Vec2,
    r: f64,
    x: f64,
}

fn frame(params: &MaterialParams, p: &EvalPoint2) -> Result<Frame, KernelError> {
    let r = p.r();
    if r < SINGULAR_RADIUS_FACTOR * params.l() {
        return Err(KernelError::SingularPoint { r });
    }
    Ok(Frame { n: p.direction(), r, x: r / params.l() })
}

fn couple_frame(params: &MaterialParams, p: &EvalPoint2) -> Result<Frame, KernelError> {
    if params.l() == 0.0 {
        return Err(KernelError::UnsupportedLimit);
    }
    frame(params, p)
}

/// `e_ab n_b`
fn perp(n: &Vec2) -> Vec2 {
    [n[1], -n[0]]
}

fn force_u(params: &MaterialParams, f: &Frame) -> Mat2 {
    let nu = params.nu();
    let a = 1.0 / (8.0 * PI * params.mu() * (1.0 - nu));
    let b = 1.0 / (2.0 * PI * params.mu());
    let (g1, g2) = (specfun::g1(f.x), specfun::g2(f.x));
    let ln_r = f.r.ln();
    let n = &f.n;
    std::array::from_fn(|i| {
        std::array::from_fn(|q| {
            -a * ((3.0 - 4.0 * nu) * ln_r * d(i, q) - n[i] * n[q]) + b * (g1 * n[i] * n[q] - g2 * d(i, q))
        })
    })
}

fn force_omega(params: &MaterialParams, f: &Frame) -> Vec2 {
    let c = -specfun::k1c(f.x) / (4.0 * PI * params.mu() * f.r);
    // e_ar n_a = -e_ra n_a
    perp(&f.n).map(|v| -c * v)
}

fn force_sigma(params: &MaterialParams, f: &Frame) -> Tensor2 {
    let nu = params.nu();
    let a = -1.0 / (4.0 * PI * (1.0 - nu) * f.r);
    let b = specfun::g1(f.x) / (PI * f.r);
    let c = specfun::xk1(f.x) / (PI * f.r);
    let n = &f.n;
    std::array::from_fn(|be| {
        std::array::from_fn(|al| {
            std::array::from_fn(|rh| {
                let nnn = n[al] * n[be] * n[rh];
                let sym3 = d(al, be) * n[rh] + d(be, rh) * n[al] + d(al, rh) * n[be];
                let classical = (1.0 - 2.0 * nu) * (d(be, rh) * n[al] + d(al, rh) * n[be] - d(al, be) * n[rh]) + 2.0 * nnn;
                a * classical + b * (sym3 - 4.0 * nnn) + c * (d(be, rh) * n[al] - nnn)
            })
        })
    })
}

fn force_mu(f: &Frame) -> Mat2 {
    let (g1, g2) = (specfun::g1(f.x) / PI, specfun::g2(f.x) / PI);
    let n = &f.n;
    std::array::from_fn(|a| std::array::from_fn(|q| g1 * n[a] * n[q] - g2 * d(a, q)))
}

/// `dU_ar / dx_b` stored as `[b][a][r]`.
fn force_grad(params: &MaterialParams, f: &Frame) -> Tensor2 {
    let nu = params.nu();
    let a = 1.0 / (8.0 * PI * params.mu() * (1.0 - nu) * f.r);
    let b = specfun::g1(f.x) / (2.0 * PI * params.mu() * f.r);
    let c = specfun::xk1(f.x) / (2.0 * PI * params.mu() * f.r);
    let n = &f.n;
    std::array::from_fn(|be| {
        std::array::from_fn(|al| {
            std::array::from_fn(|rh| {
                let nnn = n[al] * n[be] * n[rh];
                let sym3 = d(al, be) * n[rh] + d(be, rh) * n[al] + d(al, rh) * n[be];
                let classical = -(3.0 - 4.0 * nu) * d(al, rh) * n[be] + d(al, be) * n[rh] + d(be, rh) * n[al] - 2.0 * nnn;
                a * classical + b * (sym3 - 4.0 * nnn) + c * (d(al, rh) * n[be] - nnn)
            })
        })
    })
}

fn couple_u(params: &MaterialParams, f: &Frame) -> Vec2 {
    let c = -specfun::k1c(f.x) / (4.0 * PI * params.mu() * f.r);
    perp(&f.n).map(|v| c * v)
}

fn couple_omega(params: &MaterialParams, f: &Frame) -> f64 {
    let l = params.l();
    specfun::k0(f.x) / (8.0 * PI * params.mu() * l * l)
}

fn couple_sigma(params: &MaterialParams, f: &Frame) -> Mat2 {
    let l2 = params.l() * params.l();
    let a = -specfun::g1(f.x) / (4.0 * PI * l2);
    let b = specfun::k0(f.x) / (4.0 * PI * l2);
    let n = &f.n;
    let t = perp(n);
    std::array::from_fn(|be| std::array::from_fn(|al| a * (t[al] * n[be] + t[be] * n[al]) + b * e(al, be)))
}

fn couple_mu(f: &Frame) -> Vec2 {
    let c = specfun::xk1(f.x) / (2.0 * PI * f.r);
    perp(&f.n).map(|v| c * v)
}

/// `du_a / dx_b` of the couple kernel stored as `[b][a]`.
fn couple_grad(params: &MaterialParams, f: &Frame) -> Mat2 {
    let l2 = params.l() * params.l();
    let a = -specfun::k1c(f.x) / (4.0 * PI * params.mu() * f.r * f.r);
    let b = -specfun::g1(f.x) / (4.0 * PI * params.mu() * l2);
    let n = &f.n;
    let t = perp(n);
    std::array::from_fn(|be| std::array::from_fn(|al| a * e(al, be) + b * t[al] * n[be]))
}

/// Line-force influences. `l = 0` gives the classical plane strain solution.
pub fn line_force_kernels_2d(params: &MaterialParams, x: &EvalPoint2) -> Result<KernelBundle2DForce, KernelError> {
    let f = frame(params, x)?;
    Ok(KernelBundle2DForce {
        u: force_u(params, &f),
        omega: force_omega(params, &f),
        sigma: force_sigma(params, &f),
        mu: force_mu(&f),
    })
}

/// Line-couple influences. Requires `l > 0`.
pub fn line_couple_kernels_2d(params: &MaterialParams, x: &EvalPoint2) -> Result<KernelBundle2DCouple, KernelError> {
    let f = couple_frame(params, x)?;
    Ok(KernelBundle2DCouple {
        u: couple_u(params, &f),
        omega: couple_omega(params, &f),
        sigma: couple_sigma(params, &f),
        mu: couple_mu(&f),
    })
}

pub fn line_force_displacement_2d(params: &MaterialParams, x: &EvalPoint2) -> Result<Mat2, KernelError> {
    Ok(force_u(params, &frame(params, x)?))
}

pub fn line_couple_displacement_2d(params: &MaterialParams, x: &EvalPoint2) -> Result<Vec2, KernelError> {
    Ok(couple_u(params, &couple_frame(params, x)?))
}

pub fn line_force_rotation_2d(params: &MaterialParams, x: &EvalPoint2) -> Result<Vec2, KernelError> {
    Ok(force_omega(params, &frame(params, x)?))
}

pub fn line_couple_rotation_2d(params: &MaterialParams, x: &EvalPoint2) -> Result<f64, KernelError> {
    Ok(couple_omega(params, &couple_frame(params, x)?))
}

/// `dU_ar / dx_b` of the line-force kernel as `[b][a][r]`.
pub fn line_force_displacement_gradient_2d(params: &MaterialParams, x: &EvalPoint2) -> Result<Tensor2, KernelError> {
    Ok(force_grad(params, &frame(params, x)?))
}

/// `du_a / dx_b` of the line-couple kernel as `[b][a]`.
pub fn line_couple_displacement_gradient_2d(params: &MaterialParams, x: &EvalPoint2) -> Result<Mat2, KernelError> {
    Ok(couple_grad(params, &couple_frame(params, x)?))
}

/// Closed-form dilatation of the line-force kernel per load direction.
pub fn line_force_dilatation_2d(params: &MaterialParams, x: &EvalPoint2) -> Result<Vec2, KernelError> {
    let f = frame(params, x)?;
    let nu = params.nu();
    let c = -(1.0 - 2.0 * nu) / (4.0 * PI * params.mu() * (1.0 - nu) * f.r);
    Ok(f.n.map(|v| c * v))
}

/// Tractions and out-of-plane stresses shared by the two plane bundles.
pub trait PlaneBundle {
    type Traction;
    type MomentTraction;
    type OutOfPlane;

    /// `Sigma_ba n_b`
    fn force_traction(&self, n: &SurfaceNormal2) -> Self::Traction;
    /// `e_ba Mu_a n_b`
    fn moment_traction(&self, n: &SurfaceNormal2) -> Self::MomentTraction;
    /// `sigma_33 = nu sigma_gg` and `mu_3a = -4 eta omega_,a = e_ba Mu_b`.
    fn out_of_plane(&self, params: &MaterialParams) -> Self::OutOfPlane;
}

impl PlaneBundle for KernelBundle2DForce {
    type Traction = Mat2;
    type MomentTraction = Vec2;
    type OutOfPlane = OutOfPlane<Vec2, Mat2>;

    fn force_traction(&self, n: &SurfaceNormal2) -> Mat2 {
        let n = n.get();
        std::array::from_fn(|a| std::array::from_fn(|q| self.sigma[0][a][q] * n[0] + self.sigma[1][a][q] * n[1]))
    }

    fn moment_traction(&self, n: &SurfaceNormal2) -> Vec2 {
        std::array::from_fn(|q| {
            crate::material::moment_traction_2d(&crate::tensor::column(&self.mu, q), n)
        })
    }

    fn out_of_plane(&self, params: &MaterialParams) -> OutOfPlane<Vec2, Mat2> {
        let sigma33 = std::array::from_fn(|q| params.nu() * (self.sigma[0][0][q] + self.sigma[1][1][q]));
        let mu3 = std::array::from_fn(|a| std::array::from_fn(|q| e(0, a) * self.mu[0][q] + e(1, a) * self.mu[1][q]));
        OutOfPlane { sigma33, mu3 }
    }
}

impl PlaneBundle for KernelBundle2DCouple {
    type Traction = Vec2;
    type MomentTraction = f64;
    type OutOfPlane = OutOfPlane<f64, Vec2>;

    fn force_traction(&self, n: &SurfaceNormal2) -> Vec2 {
        crate::material::traction(&self.sigma, n)
    }

    fn moment_traction(&self, n: &SurfaceNormal2) -> f64 {
        crate::material::moment_traction_2d(&self.mu, n)
    }

    fn out_of_plane(&self, params: &MaterialParams) -> OutOfPlane<f64, Vec2> {
        let sigma33 = params.nu() * (self.sigma[0][0] + self.sigma[1][1]);
        let mu3 = std::array::from_fn(|a| e(0, a) * self.mu[0] + e(1, a) * self.mu[1]);
        OutOfPlane { sigma33, mu3 }
    }
}

pub fn force_traction_2d<B: PlaneBundle>(bundle: &B, n: &SurfaceNormal2) -> B::Traction {
    bundle.force_traction(n)
}

pub fn moment_traction_2d<B: PlaneBundle>(bundle: &B, n: &SurfaceNormal2) -> B::MomentTraction {
    bundle.moment_traction(n)
}

pub fn out_of_plane_components_2d<B: PlaneBundle>(params: &MaterialParams, bundle: &B) -> B::OutOfPlane {
    bundle.out_of_plane(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::SurfaceNormal;

    fn params(nu: f64, l: f64) -> MaterialParams {
        MaterialParams::new(1.0, nu, l).unwrap()
    }

    fn pt(x: Vec2) -> EvalPoint2 {
        EvalPoint2::new(x).unwrap()
    }

    #[test]
    fn errors() {
        assert!(EvalPoint2::new([0.0, 0.0]).is_err());
        assert_eq!(
            line_couple_kernels_2d(&params(0.3, 0.0), &pt([1.0, 0.0])),
            Err(KernelError::UnsupportedLimit)
        );
        assert!(line_force_kernels_2d(&params(0.3, 0.0), &pt([1.0, 0.0])).is_ok());
    }

    #[test]
    fn rotation_first_component_on_axis() {
        let b = line_force_kernels_2d(&params(0.3, 0.1), &pt([0.4, 0.0])).unwrap();
        assert_eq!(b.omega[0], 0.0);
        assert!(b.omega[1] != 0.0);
    }

    #[test]
    fn couple_rotation_is_positive() {
        let p = params(0.3, 0.2);
        for k in 0..30 {
            let r = 10f64.powf(-4.0 + 6.0 * k as f64 / 29.0);
            let b = line_couple_kernels_2d(&p, &pt([r * 0.6, r * 0.8])).unwrap();
            assert!(b.omega > 0.0, "r = {r}");
        }
    }

    #[test]
    fn couple_is_equivoluminal() {
        let p = params(0.3, 0.2);
        let x = pt([0.3, -0.1]);
        let b = line_couple_kernels_2d(&p, &x).unwrap();
        let oop = out_of_plane_components_2d(&p, &b);
        let scale = b.sigma.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(oop.sigma33.abs() < 1e-15 * scale);
        let g = line_couple_displacement_gradient_2d(&p, &x).unwrap();
        assert_eq!(g[0][0] + g[1][1], 0.0);
    }

    #[test]
    fn skew_couple_stress_is_k0() {
        let l = 0.2;
        let x = pt([0.3, 0.4]);
        let b = line_couple_kernels_2d(&params(0.3, l), &x).unwrap();
        let skew21 = 0.5 * (b.sigma[1][0] - b.sigma[0][1]);
        let expect = specfun::k0(0.5 / l) / (4.0 * PI * l * l);
        assert!((skew21 - expect).abs() < 1e-15 * expect);
    }

    #[test]
    fn couple_moment_traction_radial_and_tangential() {
        let l = 0.2;
        let xv = [0.3, 0.4];
        let b = line_couple_kernels_2d(&params(0.3, l), &pt(xv)).unwrap();
        let radial = SurfaceNormal::normalized(xv).unwrap();
        let m = moment_traction_2d(&b, &radial);
        let expect = -specfun::k1(0.5 / l) / (2.0 * PI * l);
        assert!((m - expect).abs() < 1e-15 * expect.abs());
        let tangential = SurfaceNormal::normalized([-0.4, 0.3]).unwrap();
        assert!(moment_traction_2d(&b, &tangential).abs() < 1e-17);
    }

    #[test]
    fn mu_far_field_tails() {
        let l = 0.1;
        let r = 50.0 * l;
        let b = line_force_kernels_2d(&params(0.3, l), &pt([r, 0.0])).unwrap();
        // Mu_11 = (g1 - g2)/pi, Mu_22 = -g2/pi
        let lr2 = (l / r) * (l / r);
        assert!((b.mu[0][0] - (-2.0 * lr2 + lr2) / PI).abs() < 1e-14);
        assert!((b.mu[1][1] - lr2 / PI).abs() < 1e-14);
    }

    #[test]
    fn traction_along_radius() {
        let p = params(0.25, 0.1);
        let xv = [0.12, -0.05];
        let x = pt(xv);
        let b = line_force_kernels_2d(&p, &x).unwrap();
        let n = SurfaceNormal::normalized(xv).unwrap();
        let t = force_traction_2d(&b, &n);
        let r = x.r();
        let xi = r / 0.1;
        let g1 = specfun::g1(xi);
        let nn = n.get();
        // n = x / r: T_ar = -1/(4pi(1-nu)r)[(1-2nu) d_ar + 2 n_a n_r]
        //   + (1/pi r) g1 (d_ar - 2 n_a n_r)
        for a in 0..2 {
            for q in 0..2 {
                let expect = -1.0 / (4.0 * PI * 0.75 * r) * (0.5 * d(a, q) + 2.0 * nn[a] * nn[q])
                    + g1 / (PI * r) * (d(a, q) - 2.0 * nn[a] * nn[q]);
                assert!((t[a][q] - expect).abs() < 1e-14 / r, "{a}{q}");
            }
        }
    }

    #[test]
    fn out_of_plane_classical_limit() {
        let p = params(0.3, 0.0);
        let b = line_force_kernels_2d(&p, &pt([0.5, 0.2])).unwrap();
        assert_eq!(out_of_plane_components_2d(&p, &b).mu3, [[0.0; 2]; 2]);
    }

    #[test]
    fn dilatation_matches_gradient_trace() {
        let p = params(0.3, 0.1);
        let x = pt([0.05, -0.12]);
        let g = line_force_displacement_gradient_2d(&p, &x).unwrap();
        let tr = line_force_dilatation_2d(&p, &x).unwrap();
        for q in 0..2 {
            assert!((g[0][0][q] + g[1][1][q] - tr[q]).abs() < 1e-12 * tr[0].abs().max(tr[1].abs()));
        }
    }
}
