use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("argument {0} outside the domain {1}")]
    Domain(f64, &'static str),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaterialError {
    #[error("shear modulus mu must be positive and finite, got {0}")]
    ShearModulus(f64),
    #[error("Poisson ratio nu must satisfy -1 < nu < 0.5, got {0}")]
    PoissonRatio(f64),
    #[error("length scale l must be non-negative and finite, got {0}")]
    LengthScale(f64),
    #[error("surface normal must have unit length (|n| = {0})")]
    NonUnitNormal(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("field point at r = {r} coincides with the singular source point")]
    SingularPoint { r: f64 },
    #[error("evaluation point has non-finite coordinates")]
    NonFinitePoint,
    #[error("couple kernels are undefined in the classical limit l = 0")]
    UnsupportedLimit,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("finite-difference stencil of reach {reach} collides with the singularity at distance {r}")]
    StencilCollision { reach: f64, r: f64 },
    #[error("invalid finite-difference scheme: {0}")]
    Scheme(String),
    #[error("invalid quadrature: {0}")]
    Quadrature(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Material(#[from] MaterialError),
}
