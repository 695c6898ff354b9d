//! SU(2) in Euler coordinates and the Wigner matrices `D^j`.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // float math is inherent in `core` on recent toolchains
use num_traits::Float;

use crate::linalg::CMatrix;
use crate::C64;

/// Largest supported `2j`.
pub const MAX_TWO_J: u32 = 64;

/// The defining 2x2 matrix `[[a, b], [-conj(b), conj(a)]]` of the element with
/// Euler angles `(alpha, beta, gamma)` in the z-y-z convention.
pub fn euler_to_pair(alpha: f64, beta: f64, gamma: f64) -> (C64, C64) {
    let (s, c) = (beta / 2.0).sin_cos();
    let a = C64::from_polar(c, -(alpha + gamma) / 2.0);
    let b = C64::from_polar(-s, -(alpha - gamma) / 2.0);
    (a, b)
}

/// Inverse of [`euler_to_pair`] with `alpha` in `[0, 2pi)`, `beta` in `[0, pi]`,
/// `gamma` in `[0, 4pi)`. Assumes `|a|^2 + |b|^2 = 1`.
pub fn pair_to_euler(a: C64, b: C64) -> (f64, f64, f64) {
    let beta = 2.0 * b.norm().atan2(a.norm());
    let (mut alpha, mut gamma);
    if b.norm() < 1e-300 {
        alpha = 0.0;
        gamma = -2.0 * a.arg();
    } else if a.norm() < 1e-300 {
        alpha = 0.0;
        gamma = 2.0 * (-b).arg();
    } else {
        let sum = -2.0 * a.arg();
        let diff = -2.0 * (-b).arg();
        alpha = (sum + diff) / 2.0;
        gamma = (sum - diff) / 2.0;
    }
    // (alpha + 2pi, gamma + 2pi) names the same element.
    let k = (alpha / (2.0 * PI)).floor();
    alpha -= 2.0 * PI * k;
    gamma -= 2.0 * PI * k;
    if alpha >= 2.0 * PI {
        alpha -= 2.0 * PI;
        gamma -= 2.0 * PI;
    }
    gamma = rem_euclid(gamma, 4.0 * PI);
    if gamma >= 4.0 * PI {
        gamma = 0.0;
    }
    (alpha, beta.clamp(0.0, PI), gamma)
}

/// `x mod m` in `[0, m)`.
pub fn rem_euclid(x: f64, m: f64) -> f64 {
    let r = x - (x / m).floor() * m;
    if r >= m || r < 0.0 {
        0.0
    } else {
        r
    }
}

/// Product of two elements given by their `(a, b)` pairs.
pub fn pair_mul(x: (C64, C64), y: (C64, C64)) -> (C64, C64) {
    let (a1, b1) = x;
    let (a2, b2) = y;
    // [[a1, b1], [-b1*, a1*]] [[a2, b2], [-b2*, a2*]]
    (a1 * a2 - b1 * b2.conj(), a1 * b2 + b1 * a2.conj())
}

struct Term {
    coef: f64,
    cos_pow: usize,
    sin_pow: usize,
}

/// Precomputed term lists for the little-d matrix `d^j(beta)`.
pub struct WignerSmallD {
    two_j: u32,
    terms: Vec<Vec<Term>>,
}

impl WignerSmallD {
    /// Builds the table for spin `j = two_j / 2`.
    pub fn new(two_j: u32) -> Self {
        assert!(two_j <= MAX_TWO_J);
        let n = two_j as usize + 1;
        let fact = factorials(two_j as usize + 1);
        let tj = two_j as i64;
        let mut terms = Vec::with_capacity(n * n);
        // Row a carries m' = j - a, column b carries m = j - b.
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                let delta = b - a; // m' - m
                let pre = (fact[(tj - a) as usize]
                    * fact[a as usize]
                    * fact[(tj - b) as usize]
                    * fact[b as usize])
                    .sqrt();
                let lo = 0.max(a - b);
                let hi = (tj - b).min(a);
                let mut list = Vec::new();
                for k in lo..=hi {
                    let denom = fact[(tj - b - k) as usize]
                        * fact[k as usize]
                        * fact[(a - k) as usize]
                        * fact[(k + delta) as usize];
                    let sign = if (k + delta).rem_euclid(2) == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    list.push(Term {
                        coef: sign * pre / denom,
                        cos_pow: (tj - delta - 2 * k) as usize,
                        sin_pow: (2 * k + delta) as usize,
                    });
                }
                terms.push(list);
            }
        }
        WignerSmallD { two_j, terms }
    }

    /// Dimension `2j + 1`.
    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// Entry `(a, b)` of `d^j(beta)` from precomputed powers.
    pub fn entry_with_powers(&self, a: usize, b: usize, cos_pows: &[f64], sin_pows: &[f64]) -> f64 {
        self.terms[a * self.dim() + b]
            .iter()
            .map(|t| t.coef * cos_pows[t.cos_pow] * sin_pows[t.sin_pow])
            .sum()
    }

    /// Evaluates `d^j(beta)` into a row-major buffer of length `dim^2`,
    /// given the powers `cos(beta/2)^k` and `sin(beta/2)^k` for `k <= 2j`.
    pub fn eval_with_powers(&self, cos_pows: &[f64], sin_pows: &[f64], out: &mut [f64]) {
        for (slot, list) in out.iter_mut().zip(&self.terms) {
            *slot = list
                .iter()
                .map(|t| t.coef * cos_pows[t.cos_pow] * sin_pows[t.sin_pow])
                .sum();
        }
    }
}

/// Powers `x^0 ..= x^n`.
pub fn powers(x: f64, n: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    for _ in 0..=n {
        v.push(acc);
        acc *= x;
    }
    v
}

/// `D^j(alpha, beta, gamma)_{ab} = e^{-i m'_a alpha} d^j_{ab}(beta) e^{-i m_b gamma}`
/// with basis ordered `m = j, j-1, ..., -j`.
pub fn wigner_d_matrix(table: &WignerSmallD, alpha: f64, beta: f64, gamma: f64) -> CMatrix {
    let n = table.dim();
    let (s, c) = (beta / 2.0).sin_cos();
    let cp = powers(c, n - 1);
    let sp = powers(s, n - 1);
    let mut d = alloc::vec![0.0; n * n];
    table.eval_with_powers(&cp, &sp, &mut d);
    let two_j = table.two_j as f64;
    CMatrix::from_fn(n, n, |a, b| {
        let m_row = (two_j - 2.0 * a as f64) / 2.0;
        let m_col = (two_j - 2.0 * b as f64) / 2.0;
        C64::from_polar(d[a * n + b], -(m_row * alpha + m_col * gamma))
    })
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = alloc::vec![1.0; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k as f64;
    }
    f
}
