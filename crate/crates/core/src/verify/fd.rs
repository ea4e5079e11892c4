//! Tensor-product central finite differences of arbitrary vector fields.

use std::collections::HashMap;

use crate::error::{KernelError, VerifyError};
use crate::material::{KinematicFields2, KinematicFields3, MaterialParams};
use crate::tensor::{levi_civita3, norm};

/// How the step `h` is chosen at a point at distance `r` from the source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    /// `h = c r`
    Radius,
    /// `h = c max(r, l)`
    RadiusOrLength { l: f64 },
    /// `h = c`
    Fixed,
}

/// Central difference scheme: accuracy order 2 or 4, step constant `c`,
/// optional single Richardson extrapolation from `h` and `h/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdScheme {
    order: u8,
    c: f64,
    richardson: bool,
    step_rule: StepRule,
}

impl FdScheme {
    pub fn new(order: u8, c: f64, richardson: bool) -> Result<Self, VerifyError> {
        if order != 2 && order != 4 {
            return Err(VerifyError::Scheme(format!("order must be 2 or 4, got {order}")));
        }
        if !(c > 0.0 && c < 0.1) {
            return Err(VerifyError::Scheme(format!("step constant must lie in (0, 0.1), got {c}")));
        }
        Ok(Self { order, c, richardson, step_rule: StepRule::Radius })
    }

    /// Replaces the step rule. `Fixed` accepts any positive `c`.
    pub fn with_step_rule(mut self, rule: StepRule) -> Self {
        self.step_rule = rule;
        self
    }

    pub fn with_fixed_step(order: u8, h: f64) -> Result<Self, VerifyError> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(VerifyError::Scheme(format!("step must be positive, got {h}")));
        }
        let mut s = Self::new(order, 0.01, false)?;
        s.c = h;
        s.step_rule = StepRule::Fixed;
        Ok(s)
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn richardson(&self) -> bool {
        self.richardson
    }

    pub fn step_rule(&self) -> StepRule {
        self.step_rule
    }

    pub fn step(&self, r: f64) -> f64 {
        match self.step_rule {
            StepRule::Radius => self.c * r,
            StepRule::RadiusOrLength { l } => self.c * r.max(l),
            StepRule::Fixed => self.c,
        }
    }
}

impl Default for FdScheme {
    fn default() -> Self {
        Self { order: 4, c: 1e-3, richardson: false, step_rule: StepRule::Radius }
    }
}

struct Stencil {
    points: &'static [(i32, f64)],
    denom: f64,
}

fn stencil(order: u8, k: u8) -> Stencil {
    const ID: &[(i32, f64)] = &[(0, 1.0)];
    let (points, denom): (&'static [(i32, f64)], f64) = match (order, k) {
        (_, 0) => (ID, 1.0),
        (2, 1) => (&[(-1, -1.0), (1, 1.0)], 2.0),
        (2, 2) => (&[(-1, 1.0), (0, -2.0), (1, 1.0)], 1.0),
        (2, 3) => (&[(-2, -1.0), (-1, 2.0), (1, -2.0), (2, 1.0)], 2.0),
        (2, 4) => (&[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)], 1.0),
        (4, 1) => (&[(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)], 12.0),
        (4, 2) => (&[(-2, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0)], 12.0),
        (4, 3) => (&[(-3, 1.0), (-2, -8.0), (-1, 13.0), (1, -13.0), (2, 8.0), (3, -1.0)], 8.0),
        (4, 4) => (&[(-3, -1.0), (-2, 12.0), (-1, -39.0), (0, 56.0), (1, -39.0), (2, 12.0), (3, -1.0)], 6.0),
        _ => unreachable!("derivative order {k} is not supported"),
    };
    Stencil { points, denom }
}

fn reach(order: u8, k: u8) -> i32 {
    stencil(order, k).points.iter().map(|(o, _)| o.abs()).max().unwrap_or(0)
}

/// All partial derivatives of an `M`-component field of `D` variables up to
/// a given total order, at one point.
#[derive(Debug, Clone)]
pub struct Derivatives<const D: usize, const M: usize> {
    table: HashMap<[u8; D], [f64; M]>,
    max_order: u8,
}

impl<const D: usize, const M: usize> Derivatives<D, M> {
    /// Derivative for the multi-index `alpha`.
    pub fn get(&self, alpha: &[u8; D]) -> &[f64; M] {
        self.table
            .get(alpha)
            .unwrap_or_else(|| panic!("multi-index {alpha:?} exceeds order {}", self.max_order))
    }

    /// Derivative of component `comp` along the listed axes, e.g. `&[0, 0, 2]`
    /// for `d^3 / dx1^2 dx3`.
    pub fn partial(&self, comp: usize, axes: &[usize]) -> f64 {
        let mut alpha = [0u8; D];
        for &a in axes {
            alpha[a] += 1;
        }
        self.get(&alpha)[comp]
    }

    /// `sum_m d^2/dx_m^2` of the derivative along `axes`.
    pub fn laplacian(&self, comp: usize, axes: &[usize]) -> f64 {
        let mut buf = axes.to_vec();
        (0..D)
            .map(|m| {
                buf.truncate(axes.len());
                buf.extend([m, m]);
                self.partial(comp, &buf)
            })
            .sum()
    }

    pub fn max_order(&self) -> u8 {
        self.max_order
    }
}

fn multi_indices<const D: usize>(max_order: u8) -> Vec<[u8; D]> {
    let mut all = Vec::new();
    let mut alpha = [0u8; D];
    loop {
        if alpha.iter().map(|&a| a as u32).sum::<u32>() <= max_order as u32 {
            all.push(alpha);
        }
        let mut d = 0;
        loop {
            if d == D {
                return all;
            }
            alpha[d] += 1;
            if alpha[d] <= max_order {
                break;
            }
            alpha[d] = 0;
            d += 1;
        }
    }
}

fn raw_derivatives<const D: usize, const M: usize, F>(
    field: &F,
    x: &[f64; D],
    indices: &[[u8; D]],
    h: f64,
    order: u8,
) -> Result<HashMap<[u8; D], [f64; M]>, VerifyError>
where
    F: Fn(&[f64; D]) -> Result<[f64; M], KernelError>,
{
    let mut cache: HashMap<[i32; D], [f64; M]> = HashMap::new();
    let mut out = HashMap::with_capacity(indices.len());
    for alpha in indices {
        let stencils: [Stencil; D] = std::array::from_fn(|d| stencil(order, alpha[d]));
        let mut acc = [0.0; M];
        let mut idx = [0usize; D];
        'outer: loop {
            let mut offset = [0i32; D];
            let mut w = 1.0;
            for d in 0..D {
                let (o, wd) = stencils[d].points[idx[d]];
                offset[d] = o;
                w *= wd;
            }
            let value = match cache.get(&offset) {
                Some(v) => *v,
                None => {
                    let p: [f64; D] = std::array::from_fn(|d| x[d] + offset[d] as f64 * h);
                    let v = field(&p)?;
                    cache.insert(offset, v);
                    v
                }
            };
            for m in 0..M {
                acc[m] += w * value[m];
            }
            let mut d = 0;
            loop {
                if d == D {
                    break 'outer;
                }
                idx[d] += 1;
                if idx[d] < stencils[d].points.len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
        }
        let mut scale = 1.0;
        for d in 0..D {
            scale *= stencils[d].denom * h.powi(alpha[d] as i32);
        }
        out.insert(*alpha, acc.map(|a| a / scale));
    }
    Ok(out)
}

/// Finite-difference derivatives of `field` at `x` up to total order
/// `max_order` (at most 4 per axis). The singular source is assumed at the
/// origin; stencils reaching it are rejected.
pub fn derivatives<const D: usize, const M: usize, F>(
    field: F,
    x: &[f64; D],
    max_order: u8,
    scheme: &FdScheme,
) -> Result<Derivatives<D, M>, VerifyError>
where
    F: Fn(&[f64; D]) -> Result<[f64; M], KernelError>,
{
    if max_order > 4 {
        return Err(VerifyError::Scheme(format!("derivatives above order 4 requested ({max_order})")));
    }
    let r = norm(x);
    let h = scheme.step(r);
    let reach = reach(scheme.order, max_order.max(1)) as f64 * h * (D as f64).sqrt();
    if h.is_nan() || h <= 0.0 || reach >= r {
        return Err(VerifyError::StencilCollision { reach, r });
    }
    let indices = multi_indices::<D>(max_order);
    let coarse = raw_derivatives(&field, x, &indices, h, scheme.order)?;
    let table = if scheme.richardson {
        let fine = raw_derivatives(&field, x, &indices, 0.5 * h, scheme.order)?;
        let p = 2f64.powi(scheme.order as i32);
        coarse
            .into_iter()
            .map(|(alpha, c)| {
                let f = fine[&alpha];
                let v: [f64; M] = std::array::from_fn(|m| (p * f[m] - c[m]) / (p - 1.0));
                (alpha, v)
            })
            .collect()
    } else {
        coarse
    };
    Ok(Derivatives { table, max_order })
}

/// Gradient `g[i][j] = d field_i / d x_j`.
pub fn fd_gradient<const D: usize, const M: usize, F>(
    field: F,
    x: &[f64; D],
    scheme: &FdScheme,
) -> Result<[[f64; D]; M], VerifyError>
where
    F: Fn(&[f64; D]) -> Result<[f64; M], KernelError>,
{
    let d = derivatives(field, x, 1, scheme)?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| d.partial(i, &[j]))))
}

/// Strain, rotation and mean curvature of a displacement field in three
/// dimensions. Curvature uses `kappa = (grad div u - lap u) / 4`.
pub fn kinematics_of<F>(field: F, x: &[f64; 3], scheme: &FdScheme) -> Result<KinematicFields3, VerifyError>
where
    F: Fn(&[f64; 3]) -> Result<[f64; 3], KernelError>,
{
    let d = derivatives(field, x, 2, scheme)?;
    Ok(kinematics_from(&d, |i| i))
}

/// Kinematics of the vector field stored at components `comp(i)` of `d`.
pub fn kinematics_from<const M: usize>(d: &Derivatives<3, M>, comp: impl Fn(usize) -> usize) -> KinematicFields3 {
    let g: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| d.partial(comp(i), &[j])));
    let strain = crate::tensor::symmetric_part(&g);
    let rotation = std::array::from_fn(|i| {
        let mut s = 0.0;
        for j in 0..3 {
            for k in 0..3 {
                s += 0.5 * levi_civita3(i, j, k) * g[k][j];
            }
        }
        s
    });
    let curvature = std::array::from_fn(|i| {
        let grad_div: f64 = (0..3).map(|k| d.partial(comp(k), &[k, i])).sum();
        0.25 * (grad_div - d.laplacian(comp(i), &[]))
    });
    KinematicFields3 { strain, rotation, curvature }
}

/// Plane strain kinematics: `omega = (u2,1 - u1,2)/2`, `kappa_a = e_ab omega_,b / 2`.
pub fn kinematics_of_2d<F>(field: F, x: &[f64; 2], scheme: &FdScheme) -> Result<KinematicFields2, VerifyError>
where
    F: Fn(&[f64; 2]) -> Result<[f64; 2], KernelError>,
{
    let d = derivatives(field, x, 2, scheme)?;
    Ok(kinematics_from_2d(&d, |i| i))
}

pub fn kinematics_from_2d<const M: usize>(d: &Derivatives<2, M>, comp: impl Fn(usize) -> usize) -> KinematicFields2 {
    let g: [[f64; 2]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| d.partial(comp(i), &[j])));
    let strain = crate::tensor::symmetric_part(&g);
    let rotation = 0.5 * (g[1][0] - g[0][1]);
    // omega_,b = (u2,1b - u1,2b) / 2
    let grad_w: [f64; 2] =
        std::array::from_fn(|b| 0.5 * (d.partial(comp(1), &[0, b]) - d.partial(comp(0), &[1, b])));
    let curvature = [0.5 * grad_w[1], -0.5 * grad_w[0]];
    KinematicFields2 { strain, rotation, curvature }
}

/// Residual of the displacement equation of motion with no body force, and
/// the largest magnitude among its four operator terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeResidual<const N: usize> {
    pub residual: [f64; N],
    pub scale: f64,
}

impl<const N: usize> PdeResidual<N> {
    /// `max |residual| / scale`.
    pub fn relative(&self) -> f64 {
        let m = self.residual.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if self.scale > 0.0 {
            m / self.scale
        } else {
            m
        }
    }
}

/// `(lambda + mu + eta lap) grad div u + (mu - eta lap) lap u` for the vector
/// field at components `comp(i)` of `d`, which must hold fourth derivatives.
pub fn pde_residual_from<const D: usize, const M: usize>(
    d: &Derivatives<D, M>,
    params: &MaterialParams,
    comp: impl Fn(usize) -> usize,
) -> PdeResidual<D> {
    let (lambda, mu, eta) = (params.lambda(), params.mu(), params.eta());
    let mut scale = 0.0f64;
    let residual = std::array::from_fn(|i| {
        let grad_div: f64 = (0..D).map(|k| d.partial(comp(k), &[k, i])).sum();
        let lap_grad_div: f64 = (0..D).map(|k| d.laplacian(comp(k), &[k, i])).sum();
        let lap: f64 = d.laplacian(comp(i), &[]);
        let bilap: f64 = (0..D).map(|m| d.laplacian(comp(i), &[m, m])).sum();
        let terms = [(lambda + mu) * grad_div, eta * lap_grad_div, mu * lap, -eta * bilap];
        for t in terms {
            scale = scale.max(t.abs());
        }
        terms.iter().sum()
    });
    PdeResidual { residual, scale }
}

/// Residual of the governing displacement equation at `x` for one field.
pub fn pde_residual<const D: usize, F>(
    field: F,
    params: &MaterialParams,
    x: &[f64; D],
    scheme: &FdScheme,
) -> Result<PdeResidual<D>, VerifyError>
where
    F: Fn(&[f64; D]) -> Result<[f64; D], KernelError>,
{
    let d = derivatives(field, x, 4, scheme)?;
    Ok(pde_residual_from(&d, params, |i| i))
}
