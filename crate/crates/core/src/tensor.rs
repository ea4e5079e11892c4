//! Fixed-size tensor aliases and the handful of index operations the kernels need.

pub type Vec2 = [f64; 2];
pub type Vec3 = [f64; 3];
pub type Mat2 = [[f64; 2]; 2];
pub type Mat3 = [[f64; 3]; 3];
pub type Tensor2 = [[[f64; 2]; 2]; 2];
pub type Tensor3 = [[[f64; 3]; 3]; 3];

/// Three-dimensional alternator.
#[inline]
pub const fn levi_civita3(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Two-dimensional alternator, `e_12 = -e_21 = 1`.
#[inline]
pub const fn levi_civita2(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

#[inline]
pub const fn kronecker(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

pub fn norm<const N: usize>(v: &[f64; N]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub fn dot<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn symmetric_part<const N: usize>(m: &[[f64; N]; N]) -> [[f64; N]; N] {
    let mut out = [[0.0; N]; N];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = 0.5 * (m[i][j] + m[j][i]);
        }
    }
    out
}

pub fn skew_part<const N: usize>(m: &[[f64; N]; N]) -> [[f64; N]; N] {
    let mut out = [[0.0; N]; N];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = 0.5 * (m[i][j] - m[j][i]);
        }
    }
    out
}

pub fn trace<const N: usize>(m: &[[f64; N]; N]) -> f64 {
    (0..N).map(|i| m[i][i]).sum()
}

/// Column `q` of a matrix stored as `m[i][q]`.
pub fn column<const N: usize>(m: &[[f64; N]; N], q: usize) -> [f64; N] {
    std::array::from_fn(|i| m[i][q])
}

/// Slice `q` of a third-order tensor stored as `t[j][i][q]`.
pub fn slice_last<const N: usize>(t: &[[[f64; N]; N]; N], q: usize) -> [[f64; N]; N] {
    std::array::from_fn(|j| std::array::from_fn(|i| t[j][i][q]))
}

/// `sum_j t[j][i][q] v_j`: contraction over the first index.
pub fn contract_first<const N: usize>(t: &[[[f64; N]; N]; N], v: &[f64; N]) -> [[f64; N]; N] {
    let mut out = [[0.0; N]; N];
    for (j, vj) in v.iter().enumerate() {
        for i in 0..N {
            for q in 0..N {
                out[i][q] += t[j][i][q] * vj;
            }
        }
    }
    out
}

pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a f64>) -> f64 {
    values.into_iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

pub fn flatten_mat<const N: usize, const M: usize>(m: &[[f64; N]; N]) -> [f64; M] {
    debug_assert_eq!(N * N, M);
    std::array::from_fn(|k| m[k / N][k % N])
}

pub fn flatten_tensor<const N: usize, const M: usize>(t: &[[[f64; N]; N]; N]) -> [f64; M] {
    debug_assert_eq!(N * N * N, M);
    std::array::from_fn(|k| t[k / (N * N)][(k / N) % N][k % N])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternator_identities() {
        // e_ijk e_imn = d_jm d_kn - d_jn d_km
        for j in 0..3 {
            for k in 0..3 {
                for m in 0..3 {
                    for n in 0..3 {
                        let lhs: f64 = (0..3)
                            .map(|i| levi_civita3(i, j, k) * levi_civita3(i, m, n))
                            .sum();
                        let rhs = kronecker(j, m) * kronecker(k, n) - kronecker(j, n) * kronecker(k, m);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(levi_civita2(a, b), levi_civita3(a, b, 2));
            }
        }
    }

    #[test]
    fn cross_matches_alternator() {
        let a = [0.3, -1.2, 2.0];
        let b = [1.5, 0.25, -0.7];
        let c = cross(&a, &b);
        for i in 0..3 {
            let s: f64 = (0..3)
                .flat_map(|j| (0..3).map(move |k| (j, k)))
                .map(|(j, k)| levi_civita3(i, j, k) * a[j] * b[k])
                .sum();
            assert!((c[i] - s).abs() < 1e-15);
        }
    }

    #[test]
    fn flatten_order_is_row_major() {
        let t: Tensor2 = [[[1.0, 2.0], [3.0, 4.0]], [[5.0, 6.0], [7.0, 8.0]]];
        let f: [f64; 8] = flatten_tensor(&t);
        assert_eq!(f, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
    }
}
