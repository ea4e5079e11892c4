//! Material constants, kinematic measures and the constitutive relations.

use crate::error::MaterialError;
use crate::tensor::{cross, dot, kronecker, levi_civita2, levi_civita3, norm, Mat2, Mat3, Vec2, Vec3};

/// Tolerance on `| |n| - 1 |` accepted by [`SurfaceNormal::new`].
pub const NORMAL_TOLERANCE: f64 = 1e-12;

/// Isotropic couple stress material: shear modulus `mu`, Poisson ratio `nu`
/// and characteristic length `l`. `l = 0` is the classical (Cauchy) limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    mu: f64,
    nu: f64,
    l: f64,
}

impl MaterialParams {
    pub fn new(mu: f64, nu: f64, l: f64) -> Result<Self, MaterialError> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(MaterialError::ShearModulus(mu));
        }
        if !(nu > -1.0 && nu < 0.5) {
            return Err(MaterialError::PoissonRatio(nu));
        }
        if !(l.is_finite() && l >= 0.0) {
            return Err(MaterialError::LengthScale(l));
        }
        Ok(Self { mu, nu, l })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    /// Lamé constant `2 mu nu / (1 - 2 nu)`.
    pub fn lambda(&self) -> f64 {
        2.0 * self.mu * self.nu / (1.0 - 2.0 * self.nu)
    }

    /// Couple stress modulus `eta = mu l^2`.
    pub fn eta(&self) -> f64 {
        self.mu * self.l * self.l
    }

    /// The same material with a different length scale.
    pub fn with_length_scale(&self, l: f64) -> Result<Self, MaterialError> {
        Self::new(self.mu, self.nu, l)
    }
}

impl Default for MaterialParams {
    fn default() -> Self {
        Self { mu: 1.0, nu: 0.3, l: 0.1 }
    }
}

pub fn lambda_of(params: &MaterialParams) -> f64 {
    params.lambda()
}

pub fn eta_of(params: &MaterialParams) -> f64 {
    params.eta()
}

/// A unit vector used to contract stresses into tractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceNormal<const N: usize>([f64; N]);

pub type SurfaceNormal2 = SurfaceNormal<2>;
pub type SurfaceNormal3 = SurfaceNormal<3>;

impl<const N: usize> SurfaceNormal<N> {
    /// Accepts `n` if its length is one to within [`NORMAL_TOLERANCE`].
    pub fn new(n: [f64; N]) -> Result<Self, MaterialError> {
        let len = norm(&n);
        if (len - 1.0).abs() <= NORMAL_TOLERANCE {
            Ok(Self(n))
        } else {
            Err(MaterialError::NonUnitNormal(len))
        }
    }

    /// Normalizes a non-zero finite vector.
    pub fn normalized(v: [f64; N]) -> Result<Self, MaterialError> {
        let len = norm(&v);
        if !(len.is_finite() && len > 0.0) {
            return Err(MaterialError::NonUnitNormal(len));
        }
        Ok(Self(v.map(|c| c / len)))
    }

    pub fn get(&self) -> &[f64; N] {
        &self.0
    }
}

/// Strain, rotation and mean curvature at a point in three dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicFields3 {
    pub strain: Mat3,
    pub rotation: Vec3,
    pub curvature: Vec3,
}

/// In-plane strain, the out-of-plane rotation and the in-plane curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicFields2 {
    pub strain: Mat2,
    pub rotation: f64,
    pub curvature: Vec2,
}

/// Force-stress (generally non-symmetric) and couple-stress vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressState3 {
    pub force_stress: Mat3,
    pub couple_stress: Vec3,
}

impl StressState3 {
    /// Axial vector `s_i = (1/2) e_ijk sigma_[jk]` of the skew force-stress.
    pub fn skew_vector(&self) -> Vec3 {
        let s = &self.force_stress;
        std::array::from_fn(|i| {
            let mut acc = 0.0;
            for j in 0..3 {
                for k in 0..3 {
                    acc += 0.5 * levi_civita3(i, j, k) * s[j][k];
                }
            }
            acc
        })
    }

    /// Couple-stress tensor `mu_ji = e_ijk mu_k`.
    pub fn couple_stress_tensor(&self) -> Mat3 {
        couple_stress_tensor(&self.couple_stress)
    }
}

pub fn couple_stress_tensor(mu: &Vec3) -> Mat3 {
    std::array::from_fn(|j| {
        std::array::from_fn(|i| (0..3).map(|k| levi_civita3(i, j, k) * mu[k]).sum())
    })
}

/// Symmetric force-stress `lambda e_kk delta_ij + 2 mu e_ij` for any dimension.
/// In plane strain this is the in-plane block.
pub fn symmetric_stress<const N: usize>(params: &MaterialParams, strain: &[[f64; N]; N]) -> [[f64; N]; N] {
    let lambda = params.lambda();
    let mu = params.mu();
    let tr: f64 = (0..N).map(|k| strain[k][k]).sum();
    std::array::from_fn(|i| std::array::from_fn(|j| lambda * tr * kronecker(i, j) + 2.0 * mu * strain[i][j]))
}

/// Out-of-plane normal stress `sigma_33 = nu sigma_gg` in plane strain.
pub fn plane_strain_sigma33(params: &MaterialParams, in_plane_stress: &Mat2) -> f64 {
    params.nu() * (in_plane_stress[0][0] + in_plane_stress[1][1])
}

/// Couple-stress vector `-8 eta kappa`.
pub fn couple_stress_from_curvature<const N: usize>(params: &MaterialParams, curvature: &[f64; N]) -> [f64; N] {
    let eta = params.eta();
    curvature.map(|k| -8.0 * eta * k)
}

/// Total force-stress from `grad_u[i][j] = u_i,j` and the Laplacian of the
/// rotation vector:
/// `sigma_ji = lambda u_k,k delta_ij + mu (u_i,j + u_j,i) + 2 eta e_ijk lap(omega_k)`.
pub fn total_stress_from_gradients(params: &MaterialParams, grad_u: &Mat3, lap_rotation: &Vec3) -> Mat3 {
    let strain = crate::tensor::symmetric_part(grad_u);
    let sym = symmetric_stress(params, &strain);
    let eta = params.eta();
    std::array::from_fn(|j| {
        std::array::from_fn(|i| {
            let skew: f64 = (0..3).map(|k| levi_civita3(i, j, k) * lap_rotation[k]).sum();
            sym[j][i] + 2.0 * eta * skew
        })
    })
}

/// Plane strain version: `sigma_ba = sym + 2 eta e_ab lap(omega)` with the
/// scalar rotation `omega = omega_3`.
pub fn total_stress_from_gradients_2d(params: &MaterialParams, grad_u: &Mat2, lap_rotation: f64) -> Mat2 {
    let strain = crate::tensor::symmetric_part(grad_u);
    let sym = symmetric_stress(params, &strain);
    let eta = params.eta();
    std::array::from_fn(|b| {
        std::array::from_fn(|a| sym[b][a] + 2.0 * eta * levi_civita2(a, b) * lap_rotation)
    })
}

/// Force-traction `t_i = sigma_ji n_j`.
pub fn traction<const N: usize>(force_stress: &[[f64; N]; N], n: &SurfaceNormal<N>) -> [f64; N] {
    let n = n.get();
    std::array::from_fn(|i| (0..N).map(|j| force_stress[j][i] * n[j]).sum())
}

/// Moment-traction `m = n x mu`.
pub fn moment_traction(couple_stress: &Vec3, n: &SurfaceNormal3) -> Vec3 {
    cross(n.get(), couple_stress)
}

/// Plane moment-traction `m = e_ba mu_a n_b`, the out-of-plane component.
pub fn moment_traction_2d(couple_stress: &Vec2, n: &SurfaceNormal2) -> f64 {
    let n = n.get();
    let rotated = [couple_stress[1], -couple_stress[0]];
    dot(&rotated, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(mu: f64, nu: f64, l: f64) -> MaterialParams {
        MaterialParams::new(mu, nu, l).unwrap()
    }

    #[test]
    fn derived_moduli() {
        assert_eq!(params(1.0, 0.0, 0.1).lambda(), 0.0);
        assert_eq!(params(1.0, 0.25, 0.1).lambda(), 1.0);
        assert!((params(2.0, 0.3, 0.1).lambda() - 3.0).abs() < 1e-15);
        assert_eq!(eta_of(&params(1.0, 0.3, 0.0)), 0.0);
        assert_eq!(eta_of(&params(1.0, 0.3, 1.0)), 1.0);
        assert_eq!(eta_of(&params(3.0, 0.3, 0.5)), 0.75);
        assert_eq!(lambda_of(&params(1.0, 0.25, 0.0)), 1.0);
    }

    #[test]
    fn invalid_parameters() {
        assert_eq!(MaterialParams::new(1.0, 0.5, 0.1), Err(MaterialError::PoissonRatio(0.5)));
        assert!(MaterialParams::new(1.0, -1.0, 0.1).is_err());
        assert!(MaterialParams::new(0.0, 0.3, 0.1).is_err());
        assert!(MaterialParams::new(1.0, 0.3, -0.1).is_err());
        assert!(MaterialParams::new(f64::NAN, 0.3, 0.1).is_err());
        assert!(MaterialParams::new(1.0, f64::NAN, 0.1).is_err());
        assert!(MaterialParams::new(1.0, 0.3, f64::INFINITY).is_err());
    }

    #[test]
    fn normals() {
        assert!(SurfaceNormal::new([1.0, 0.0, 0.0]).is_ok());
        assert!(SurfaceNormal::new([1.0 + 1e-13, 0.0]).is_ok());
        assert!(SurfaceNormal::new([1.0, 1.0]).is_err());
        let n = SurfaceNormal::normalized([3.0, 4.0]).unwrap();
        assert!((n.get()[0] - 0.6).abs() < 1e-16);
        assert!(SurfaceNormal::normalized([0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn symmetric_stress_cases() {
        let p = params(1.3, 0.27, 0.1);
        assert_eq!(symmetric_stress(&p, &[[0.0; 3]; 3]), [[0.0; 3]; 3]);
        let s = 0.01;
        let shear = [[0.0, s, 0.0], [s, 0.0, 0.0], [0.0, 0.0, 0.0]];
        let out = symmetric_stress(&p, &shear);
        assert!((out[0][1] - 2.0 * 1.3 * s).abs() < 1e-16);
        assert_eq!(out[0][0] + out[1][1] + out[2][2], 0.0);
    }

    #[test]
    fn couple_stress_values() {
        let p = params(1.0, 0.3, 0.5);
        assert_eq!(couple_stress_from_curvature(&p, &[1.0, 0.0, 0.0]), [-2.0, 0.0, 0.0]);
        assert_eq!(couple_stress_from_curvature(&params(1.0, 0.3, 0.0), &[1.0, 2.0]), [0.0, 0.0]);
    }

    #[test]
    fn rigid_rotation_is_stress_free() {
        let p = params(1.0, 0.3, 0.2);
        let w = [[0.0, 0.3, -0.1], [-0.3, 0.0, 0.7], [0.1, -0.7, 0.0]];
        assert_eq!(total_stress_from_gradients(&p, &w, &[0.0; 3]), [[0.0; 3]; 3]);
    }

    #[test]
    fn moment_traction_examples() {
        let n = SurfaceNormal::new([0.0, 1.0, 0.0]).unwrap();
        assert_eq!(moment_traction(&[1.0, 0.0, 0.0], &n), [0.0, 0.0, -1.0]);
        assert_eq!(moment_traction(&[0.0, 2.5, 0.0], &n), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn traction_of_identity_is_normal() {
        let n = SurfaceNormal::normalized([0.2, -0.5, 0.9]).unwrap();
        let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let t = traction(&id, &n);
        for i in 0..3 {
            assert!((t[i] - n.get()[i]).abs() < 1e-16);
        }
    }

    #[test]
    fn skew_traction_is_cross_product() {
        // sigma_jk = e_jkm s_m (skew part), t_k = sigma_jk n_j = (s x n)_k
        let s = [0.4, -1.1, 0.3];
        let sigma: Mat3 = std::array::from_fn(|j| {
            std::array::from_fn(|k| (0..3).map(|m| levi_civita3(j, k, m) * s[m]).sum())
        });
        let state = StressState3 { force_stress: sigma, couple_stress: [0.0; 3] };
        let back = state.skew_vector();
        for m in 0..3 {
            assert!((back[m] - s[m]).abs() < 1e-15);
        }
        let n = SurfaceNormal::normalized([1.0, 2.0, -0.5]).unwrap();
        let t = traction(&sigma, &n);
        let expected = cross(&s, n.get());
        for k in 0..3 {
            assert!((t[k] - expected[k]).abs() < 1e-15);
        }
    }

    fn vec3() -> impl Strategy<Value = Vec3> {
        prop::array::uniform3(-10.0f64..10.0)
    }

    fn mat3() -> impl Strategy<Value = Mat3> {
        prop::array::uniform3(vec3())
    }

    fn material() -> impl Strategy<Value = MaterialParams> {
        (0.1f64..10.0, -0.99f64..0.49, 0.0f64..2.0).prop_map(|(m, n, l)| params(m, n, l))
    }

    proptest! {
        #[test]
        fn couple_stress_tensor_is_antisymmetric(mu in vec3()) {
            let t = couple_stress_tensor(&mu);
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert_eq!(t[i][j], -t[j][i]);
                }
            }
        }

        #[test]
        fn symmetric_stress_matches_lame_form(p in material(), g in mat3()) {
            let e = crate::tensor::symmetric_part(&g);
            let s = symmetric_stress(&p, &e);
            let tr = e[0][0] + e[1][1] + e[2][2];
            for i in 0..3 {
                for j in 0..3 {
                    let expect = 2.0 * p.mu() * (p.nu() / (1.0 - 2.0 * p.nu()) * tr * kronecker(i, j) + e[i][j]);
                    prop_assert!((s[i][j] - expect).abs() <= 1e-12 * (1.0 + expect.abs()) * (1.0 + p.lambda().abs()));
                }
            }
        }

        #[test]
        fn total_stress_reassembles_from_parts(p in material(), g in mat3(), lap in vec3()) {
            let total = total_stress_from_gradients(&p, &g, &lap);
            let sym = symmetric_stress(&p, &crate::tensor::symmetric_part(&g));
            let state = StressState3 { force_stress: total, couple_stress: [0.0; 3] };
            let s = state.skew_vector();
            for i in 0..3 {
                // sigma_[jk] = e_jkm s_m with s = -2 eta lap(omega)
                prop_assert!((s[i] + 2.0 * p.eta() * lap[i]).abs() <= 1e-12 * (1.0 + lap[i].abs()) * (1.0 + p.eta()));
                for j in 0..3 {
                    let sym_back = 0.5 * (total[i][j] + total[j][i]);
                    prop_assert!((sym_back - sym[i][j]).abs() <= 1e-12 * (1.0 + sym[i][j].abs()));
                }
            }
        }

        #[test]
        fn classical_limit_is_hooke(nu in -0.9f64..0.49, g in mat3(), lap in vec3()) {
            let p = params(1.0, nu, 0.0);
            let total = total_stress_from_gradients(&p, &g, &lap);
            let sym = symmetric_stress(&p, &crate::tensor::symmetric_part(&g));
            prop_assert_eq!(total, sym);
        }

        #[test]
        fn traction_is_index_sum(s in mat3(), v in vec3()) {
            prop_assume!(norm(&v) > 1e-3);
            let n = SurfaceNormal::normalized(v).unwrap();
            let t = traction(&s, &n);
            for i in 0..3 {
                let expect = s[0][i] * n.get()[0] + s[1][i] * n.get()[1] + s[2][i] * n.get()[2];
                prop_assert!((t[i] - expect).abs() <= 1e-12 * (1.0 + expect.abs()));
            }
        }

        #[test]
        fn moment_traction_is_index_sum(mu in vec3(), v in vec3()) {
            prop_assume!(norm(&v) > 1e-3);
            let n = SurfaceNormal::normalized(v).unwrap();
            let m = moment_traction(&mu, &n);
            for i in 0..3 {
                let mut expect = 0.0;
                for j in 0..3 {
                    for k in 0..3 {
                        expect += levi_civita3(i, j, k) * n.get()[j] * mu[k];
                    }
                }
                prop_assert!((m[i] - expect).abs() <= 1e-12 * (1.0 + expect.abs()));
            }
        }

        #[test]
        fn plane_moment_traction_is_index_sum(a in -5.0f64..5.0, b in -5.0f64..5.0, t in 0.0f64..6.3) {
            let n = SurfaceNormal::normalized([t.cos(), t.sin()]).unwrap();
            let m = moment_traction_2d(&[a, b], &n);
            let mut expect = 0.0;
            for be in 0..2 {
                for al in 0..2 {
                    expect += levi_civita2(be, al) * [a, b][al] * n.get()[be];
                }
            }
            prop_assert!((m - expect).abs() <= 1e-13 * (1.0 + expect.abs()));
        }
    }
}
