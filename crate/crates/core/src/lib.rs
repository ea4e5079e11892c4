//! Fundamental solutions of isotropic couple stress elasticity.
//!
//! The crate evaluates the influence tensors of an infinite elastic medium
//! with a single characteristic length `l` under unit concentrated sources:
//!
//! * [`kernels3d`]: point force and point couple in three dimensions,
//! * [`kernels2d`]: line force and out-of-plane line couple in plane strain.
//!
//! Each bundle carries the displacement `U`, rotation `Omega`, force-stress
//! `Sigma` and couple-stress vector `Mu` influences; tractions follow by
//! contracting with a [`SurfaceNormal`].
//!
//! Index conventions: `u[i][q]` is component `i` of the field due to a unit
//! source in direction `q`. Force-stress is stored as `sigma[j][i][q]`, with
//! `j` the plane normal, so the traction is `t_i = sigma[j][i] n_j`.
//!
//! The [`verify`] module holds the independent numerical checks (finite
//! differences, equilibrium residuals and surface balance integrals) used by
//! the test suite and by the `csgreen verify` command.

pub mod catalogue;
pub mod error;
pub mod kernels2d;
pub mod kernels3d;
pub mod material;
pub mod specfun;
pub mod tensor;
pub mod verify;

pub use error::{KernelError, MaterialError, SpecFunError, VerifyError};
pub use kernels2d::{
    force_traction_2d, line_couple_kernels_2d, line_force_kernels_2d, moment_traction_2d,
    out_of_plane_components_2d, EvalPoint2, KernelBundle2DCouple, KernelBundle2DForce,
    PlaneBundle,
};
pub use kernels3d::{
    force_traction_3d, moment_traction_3d, point_couple_kernels_3d, point_force_kernels_3d,
    EvalPoint3, KernelBundle3D,
};
pub use material::{
    KinematicFields2, KinematicFields3, MaterialParams, StressState3, SurfaceNormal,
    SurfaceNormal2, SurfaceNormal3,
};
pub use tensor::{Mat2, Mat3, Tensor2, Tensor3, Vec2, Vec3};
