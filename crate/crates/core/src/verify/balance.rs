//! Force and moment resultants of the kernel tractions over a sphere or circle
//! enclosing the source.

use crate::error::VerifyError;
use crate::kernels2d::{line_couple_kernels_2d, line_force_kernels_2d, EvalPoint2, PlaneBundle};
use crate::kernels3d::{
    force_traction_3d, moment_traction_3d, point_couple_kernels_3d, point_force_kernels_3d, EvalPoint3,
};
use crate::material::{MaterialParams, SurfaceNormal};
use crate::tensor::{levi_civita2, Mat3};

use super::quadrature::{circle_nodes, sphere_nodes, QuadratureKind, QuadratureSpec};
use super::Family;

/// Resultants per source column, embedded in three dimensions: entry
/// `[i][q]` is component `i` due to source direction `q`. Plane line forces
/// occupy columns 1 and 2, the plane line couple column 3; plane moments
/// have only component 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resultants {
    pub force: Mat3,
    pub moment: Mat3,
}

impl Resultants {
    /// Resultants required by global equilibrium with a unit source inside.
    pub fn expected(family: Family) -> Self {
        let mut force = [[0.0; 3]; 3];
        let mut moment = [[0.0; 3]; 3];
        match family {
            Family::Force3D => (0..3).for_each(|i| force[i][i] = -1.0),
            Family::Couple3D => (0..3).for_each(|i| moment[i][i] = -1.0),
            Family::Force2D => (0..2).for_each(|i| force[i][i] = -1.0),
            Family::Couple2D => moment[2][2] = -1.0,
        }
        Self { force, moment }
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..3 {
            for q in 0..3 {
                m = m.max((self.force[i][q] - other.force[i][q]).abs());
                m = m.max((self.moment[i][q] - other.moment[i][q]).abs());
            }
        }
        m
    }
}

/// Integrates tractions of the given kernel family over the sphere (3D) or
/// circle (2D) of radius `radius` about the source.
pub fn balance_integrals(
    family: Family,
    params: &MaterialParams,
    radius: f64,
    quad: &QuadratureSpec,
) -> Result<Resultants, VerifyError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(VerifyError::Quadrature(format!("radius must be positive, got {radius}")));
    }
    let want = if family.dimension() == 3 {
        QuadratureKind::SphereProductGauss
    } else {
        QuadratureKind::CircleTrapezoid
    };
    if quad.kind() != want {
        return Err(VerifyError::Quadrature(format!("{:?} does not apply to {}", quad.kind(), family.name())));
    }
    let mut force = [[0.0; 3]; 3];
    let mut moment = [[0.0; 3]; 3];
    match family {
        Family::Force3D | Family::Couple3D => {
            for (x, n, ds) in sphere_nodes(radius, quad.nodes()) {
                let p = EvalPoint3::new(x)?;
                let b = if family == Family::Force3D {
                    point_force_kernels_3d(params, &p)?
                } else {
                    point_couple_kernels_3d(params, &p)?
                };
                let n = SurfaceNormal::new(n)?;
                let t = force_traction_3d(&b, &n);
                let m = moment_traction_3d(&b, &n);
                for q in 0..3 {
                    let tq = crate::tensor::column(&t, q);
                    let xt = crate::tensor::cross(&x, &tq);
                    for i in 0..3 {
                        force[i][q] += ds * tq[i];
                        moment[i][q] += ds * (xt[i] + m[i][q]);
                    }
                }
            }
        }
        Family::Force2D => {
            for (x, n, ds) in circle_nodes(radius, quad.nodes()) {
                let b = line_force_kernels_2d(params, &EvalPoint2::new(x)?)?;
                let n = SurfaceNormal::new(n)?;
                let t = b.force_traction(&n);
                let m = b.moment_traction(&n);
                for q in 0..2 {
                    let mut xt = 0.0;
                    for a in 0..2 {
                        force[a][q] += ds * t[a][q];
                        for be in 0..2 {
                            xt += levi_civita2(a, be) * x[a] * t[be][q];
                        }
                    }
                    moment[2][q] += ds * (xt + m[q]);
                }
            }
        }
        Family::Couple2D => {
            for (x, n, ds) in circle_nodes(radius, quad.nodes()) {
                let b = line_couple_kernels_2d(params, &EvalPoint2::new(x)?)?;
                let n = SurfaceNormal::new(n)?;
                let t = b.force_traction(&n);
                let m = b.moment_traction(&n);
                force[0][2] += ds * t[0];
                force[1][2] += ds * t[1];
                moment[2][2] += ds * (x[0] * t[1] - x[1] * t[0] + m);
            }
        }
    }
    Ok(Resultants { force, moment })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilibrium_of_every_family() {
        let p = MaterialParams::new(1.0, 0.3, 0.1).unwrap();
        let sphere = QuadratureSpec::sphere(16).unwrap();
        let circle = QuadratureSpec::circle(64).unwrap();
        for family in Family::ALL {
            let quad = if family.dimension() == 3 { &sphere } else { &circle };
            for radius in [0.05, 0.2, 1.0] {
                let r = balance_integrals(family, &p, radius, quad).unwrap();
                let dev = r.max_deviation(&Resultants::expected(family));
                assert!(dev < 1e-10, "{} R = {radius}: {dev:e}", family.name());
            }
        }
    }

    #[test]
    fn mismatched_rule_is_rejected() {
        let p = MaterialParams::default();
        let circle = QuadratureSpec::circle(32).unwrap();
        assert!(balance_integrals(Family::Force3D, &p, 1.0, &circle).is_err());
    }
}
