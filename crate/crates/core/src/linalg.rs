//! Small dense complex matrix helpers.

use nalgebra::DMatrix;
#[allow(unused_imports)] // float math is inherent in `core` on recent toolchains
use num_traits::Float;

use crate::C64;

/// Dense complex matrix.
pub type CMatrix = DMatrix<C64>;

/// Largest entry modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |(A A^*) - I|`, zero for a unitary matrix.
pub fn unitarity_defect(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let prod = a * a.adjoint();
    max_abs(&(prod - CMatrix::identity(n, n)))
}

/// Spectral norm (largest singular value).
pub fn op_norm(a: &CMatrix) -> f64 {
    if a.nrows() == 1 && a.ncols() == 1 {
        return a[(0, 0)].norm();
    }
    a.clone()
        .singular_values()
        .iter()
        .fold(0.0_f64, |acc, &s| acc.max(s))
}

/// `l^p` norm of a slice of complex numbers, `p` in `[1, inf]`.
pub fn lp_norm(v: &[C64], p: f64) -> f64 {
    if p.is_infinite() {
        return v.iter().fold(0.0, |acc, z| acc.max(z.norm()));
    }
    if p == 2.0 {
        return v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    if p == 1.0 {
        return v.iter().map(|z| z.norm()).sum();
    }
    // Scale by the largest modulus so large p does not overflow.
    let scale = v.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()));
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = v.iter().map(|z| (z.norm() / scale).powf(p)).sum();
    scale * sum.powf(1.0 / p)
}
