//! Surface and contour rules for the balance integrals.

use std::f64::consts::PI;

use crate::error::VerifyError;
use crate::tensor::{Vec2, Vec3};

/// Fewest nodes accepted per angular direction.
pub const MIN_NODES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    /// Gauss-Legendre in `cos(theta)` times the trapezoid rule in `phi`.
    SphereProductGauss,
    /// Uniform trapezoid rule on a circle.
    CircleTrapezoid,
}

/// Rule and resolution. For the sphere `nodes` is the polar count and the
/// azimuth uses `2 * nodes`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    kind: QuadratureKind,
    nodes: usize,
}

impl QuadratureSpec {
    pub fn new(kind: QuadratureKind, nodes: usize) -> Result<Self, VerifyError> {
        if nodes < MIN_NODES {
            return Err(VerifyError::Quadrature(format!("at least {MIN_NODES} nodes required, got {nodes}")));
        }
        Ok(Self { kind, nodes })
    }

    pub fn sphere(nodes: usize) -> Result<Self, VerifyError> {
        Self::new(QuadratureKind::SphereProductGauss, nodes)
    }

    pub fn circle(nodes: usize) -> Result<Self, VerifyError> {
        Self::new(QuadratureKind::CircleTrapezoid, nodes)
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Points `(x, n, dS)` on the sphere of radius `radius` about the origin.
pub fn sphere_nodes(radius: f64, nodes: usize) -> Vec<(Vec3, Vec3, f64)> {
    let (ct, wt) = gauss_legendre(nodes);
    let nphi = 2 * nodes;
    let dphi = 2.0 * PI / nphi as f64;
    let mut out = Vec::with_capacity(nodes * nphi);
    for (c, w) in ct.iter().zip(&wt) {
        let s = (1.0 - c * c).sqrt();
        for k in 0..nphi {
            let phi = (k as f64 + 0.5) * dphi;
            let n = [s * phi.cos(), s * phi.sin(), *c];
            out.push((n.map(|v| radius * v), n, w * dphi * radius * radius));
        }
    }
    out
}

/// Points `(x, n, ds)` on the circle of radius `radius` about the origin.
pub fn circle_nodes(radius: f64, nodes: usize) -> Vec<(Vec2, Vec2, f64)> {
    let dt = 2.0 * PI / nodes as f64;
    (0..nodes)
        .map(|k| {
            let t = (k as f64 + 0.5) * dt;
            let n = [t.cos(), t.sin()];
            (n.map(|v| radius * v), n, radius * dt)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for k in 0..20 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k + 1) as f64 };
            assert!((q - exact).abs() < 1e-14, "x^{k}");
        }
    }

    #[test]
    fn sphere_area_and_moments() {
        let pts = sphere_nodes(2.0, 12);
        let area: f64 = pts.iter().map(|p| p.2).sum();
        assert!((area - 16.0 * PI).abs() < 1e-12);
        let zz: f64 = pts.iter().map(|p| p.2 * p.1[2] * p.1[2]).sum();
        assert!((zz - 16.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn circle_length() {
        let len: f64 = circle_nodes(0.5, 16).iter().map(|p| p.2).sum();
        assert!((len - PI).abs() < 1e-14);
    }

    #[test]
    fn too_few_nodes() {
        assert!(QuadratureSpec::sphere(4).is_err());
        assert!(QuadratureSpec::circle(8).is_ok());
    }
}
