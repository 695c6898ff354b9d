//! Forward transform, inversion series and spectral `S_p` norms for
//! `E`-valued functions, `E = C^m`.
//!
//! Coefficients are stored per irrep as `d x d` arrays of `E`-vectors with
//! `C_sigma[i][j] = f^(sigma)(e_j, e_i)`. Under the coefficient convention of
//! [`crate::group`] this gives
//!
//! ```text
//! C_sigma[i][j] = integral conj(u_{i,j}(x)) f(x) dx
//! f(x)          = sum_sigma d_sigma sum_{i,j} C_sigma[i][j] u_{i,j}(x)
//! ```

use alloc::borrow::Cow;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // float math is inherent in `core` on recent toolchains
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::group::{DualWindow, Group, GroupElement};
use crate::linalg::lp_norm;
use crate::{Error, Result, C64};

/// The `l^p` norm placed on `E = C^m`, `p` in `[1, inf]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ENorm(f64);

impl ENorm {
    /// The Hilbert norm, `p = 2`.
    pub const EUCLIDEAN: ENorm = ENorm(2.0);

    /// `l^p` norm; `p` may be `f64::INFINITY`.
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(ENorm(p))
    }

    /// The exponent `p`.
    pub fn exponent(self) -> f64 {
        self.0
    }

    /// Whether `E` is a Hilbert space under this norm.
    pub fn is_euclidean(self) -> bool {
        self.0 == 2.0
    }

    /// `||v||_E`.
    pub fn norm(self, v: &[C64]) -> f64 {
        lp_norm(v, self.0)
    }
}

impl Default for ENorm {
    fn default() -> Self {
        ENorm::EUCLIDEAN
    }
}

/// The family of Fourier coefficient blocks over a dual window.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoefficients {
    window: DualWindow,
    m: usize,
    e_norm: ENorm,
    /// Entry `(i, j)` of block `r`, component `k`, sits at
    /// `(offset(r) + i * d + j) * m + k`.
    data: Vec<C64>,
}

impl FourierCoefficients {
    /// All-zero coefficients on `window`.
    pub fn zeros(window: &DualWindow, m: usize, e_norm: ENorm) -> Self {
        FourierCoefficients {
            window: window.clone(),
            m,
            e_norm,
            data: vec![C64::new(0.0, 0.0); window.entries() * m],
        }
    }

    /// Builds coefficients from the flat layout described on the struct.
    pub fn from_flat(window: &DualWindow, m: usize, e_norm: ENorm, data: Vec<C64>) -> Result<Self> {
        let expected = window.entries() * m;
        if data.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: data.len(),
            });
        }
        Ok(FourierCoefficients {
            window: window.clone(),
            m,
            e_norm,
            data,
        })
    }

    /// The window the blocks are indexed by.
    pub fn window(&self) -> &DualWindow {
        &self.window
    }

    /// Dimension `m` of `E`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// The norm on `E`.
    pub fn e_norm(&self) -> ENorm {
        self.e_norm
    }

    /// Same coefficients measured with another norm on `E`.
    pub fn with_e_norm(mut self, e_norm: ENorm) -> Self {
        self.e_norm = e_norm;
        self
    }

    /// Flat storage.
    pub fn as_flat(&self) -> &[C64] {
        &self.data
    }

    /// `C_r[i][j]` (0-based) as an `E`-vector.
    pub fn entry(&self, r: usize, i: usize, j: usize) -> &[C64] {
        let d = self.window.irreps()[r].dim;
        let start = (self.window.offset(r) + i * d + j) * self.m;
        &self.data[start..start + self.m]
    }

    /// Mutable `C_r[i][j]`.
    pub fn entry_mut(&mut self, r: usize, i: usize, j: usize) -> &mut [C64] {
        let d = self.window.irreps()[r].dim;
        let start = (self.window.offset(r) + i * d + j) * self.m;
        &mut self.data[start..start + self.m]
    }

    /// The `d_r^2` entries of block `r`, row-major, each an `E`-vector.
    pub fn block(&self, r: usize) -> impl Iterator<Item = &[C64]> {
        let d = self.window.irreps()[r].dim;
        let start = self.window.offset(r) * self.m;
        self.data[start..start + d * d * self.m].chunks_exact(self.m.max(1))
    }

    /// `||C_r[i][j]||_E` for every entry of block `r`.
    pub fn block_norms(&self, r: usize) -> impl Iterator<Item = f64> + '_ {
        let e = self.e_norm;
        self.block(r).map(move |v| e.norm(v))
    }

    /// `a * self`.
    pub fn scaled(&self, a: C64) -> Self {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|z| *z *= a);
        out
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: C64, other: &Self, b: C64) -> Result<Self> {
        if self.window != other.window || self.m != other.m {
            return Err(Error::WindowMismatch);
        }
        let mut out = self.clone();
        for (z, w) in out.data.iter_mut().zip(&other.data) {
            *z = a * *z + b * w;
        }
        Ok(out)
    }

    /// Evaluates the inversion series at `x`.
    pub fn evaluate(&self, g: &Group, x: &GroupElement) -> Result<Vec<C64>> {
        self.check_window(g)?;
        let mut row = vec![C64::new(0.0, 0.0); self.window.entries()];
        g.eval_all(x, &mut row)?;
        let mut out = vec![C64::new(0.0, 0.0); self.m];
        self.synthesize(&row, &mut out);
        Ok(out)
    }

    /// `out = sum_r d_r sum_{i,j} C_r[i][j] sigma_r(x)[j][i]` given all
    /// `sigma_r(x)` (row-major, see [`Group::eval_all`]).
    pub(crate) fn synthesize(&self, row: &[C64], out: &mut [C64]) {
        out.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        let m = self.m;
        for (r, irrep) in self.window.irreps().iter().enumerate() {
            let d = irrep.dim;
            let o = self.window.offset(r);
            let weight = d as f64;
            for i in 0..d {
                for j in 0..d {
                    let u = row[o + j * d + i] * weight;
                    let c = &self.data[(o + i * d + j) * m..(o + i * d + j + 1) * m];
                    for (acc, v) in out.iter_mut().zip(c) {
                        *acc += v * u;
                    }
                }
            }
        }
    }

    fn check_window(&self, g: &Group) -> Result<()> {
        if &self.window != g.window() {
            return Err(Error::WindowMismatch);
        }
        Ok(())
    }
}

/// Storage of a [`VectorFunction`].
#[derive(Clone, Debug, PartialEq)]
pub enum Representation {
    /// Values at the quadrature nodes, node-major, `m` components each.
    Sampled(Vec<C64>),
    /// Band-limited, evaluable anywhere through the inversion series.
    Spectral(FourierCoefficients),
}

/// An `E`-valued function on a group.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFunction {
    m: usize,
    e_norm: ENorm,
    repr: Representation,
}

impl VectorFunction {
    /// A function known at the quadrature nodes (`values.len() = nodes * m`).
    pub fn sampled(m: usize, e_norm: ENorm, values: Vec<C64>) -> Result<Self> {
        if m == 0 || !values.len().is_multiple_of(m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: values.len(),
            });
        }
        Ok(VectorFunction {
            m,
            e_norm,
            repr: Representation::Sampled(values),
        })
    }

    /// Samples `f` at the quadrature nodes of `g`.
    pub fn from_fn<F>(g: &Group, m: usize, e_norm: ENorm, mut f: F) -> Result<Self>
    where
        F: FnMut(&GroupElement) -> Vec<C64>,
    {
        let mut values = Vec::with_capacity(g.quadrature().len() * m);
        for x in &g.quadrature().nodes {
            let v = f(x);
            if v.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: v.len(),
                });
            }
            values.extend(v);
        }
        Self::sampled(m, e_norm, values)
    }

    /// The band-limited function with the given coefficients.
    pub fn spectral(c: FourierCoefficients) -> Self {
        VectorFunction {
            m: c.m,
            e_norm: c.e_norm,
            repr: Representation::Spectral(c),
        }
    }

    /// Dimension of `E`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// The norm on `E`.
    pub fn e_norm(&self) -> ENorm {
        self.e_norm
    }

    /// Same function measured with another norm on `E`.
    pub fn with_e_norm(mut self, e_norm: ENorm) -> Self {
        self.e_norm = e_norm;
        if let Representation::Spectral(c) = &mut self.repr {
            c.e_norm = e_norm;
        }
        self
    }

    /// Underlying storage.
    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    /// Coefficients when spectral.
    pub fn coefficients(&self) -> Option<&FourierCoefficients> {
        match &self.repr {
            Representation::Spectral(c) => Some(c),
            Representation::Sampled(_) => None,
        }
    }

    /// `f(x)`; sampled functions only answer at their nodes' indices, so use
    /// [`VectorFunction::samples`] for those.
    pub fn evaluate(&self, g: &Group, x: &GroupElement) -> Result<Vec<C64>> {
        match &self.repr {
            Representation::Spectral(c) => c.evaluate(g, x),
            Representation::Sampled(_) => Err(Error::NotEvaluable),
        }
    }

    /// Values at the quadrature nodes of `g`, node-major.
    pub fn samples(&self, g: &Group) -> Result<Cow<'_, [C64]>> {
        let nodes = g.quadrature().len();
        match &self.repr {
            Representation::Sampled(v) => {
                if v.len() != nodes * self.m {
                    return Err(Error::DimensionMismatch {
                        expected: nodes * self.m,
                        found: v.len(),
                    });
                }
                Ok(Cow::Borrowed(v))
            }
            Representation::Spectral(c) => {
                c.check_window(g)?;
                let mut out = vec![C64::new(0.0, 0.0); nodes * self.m];
                let mut row = vec![C64::new(0.0, 0.0); c.window.entries()];
                for (x, slot) in g
                    .quadrature()
                    .nodes
                    .iter()
                    .zip(out.chunks_exact_mut(self.m))
                {
                    g.eval_all(x, &mut row)?;
                    c.synthesize(&row, slot);
                }
                Ok(Cow::Owned(out))
            }
        }
    }
}

/// `C_sigma[i][j] = sum_k w_k conj(u^sigma_{i,j}(x_k)) f(x_k)`.
pub fn forward_transform(f: &VectorFunction, g: &Group) -> Result<FourierCoefficients> {
    let samples = f.samples(g)?;
    let m = f.m;
    let window = g.window();
    let mut c = FourierCoefficients::zeros(window, m, f.e_norm);
    let mut row = vec![C64::new(0.0, 0.0); window.entries()];
    let rule = g.quadrature();
    for ((x, w), fx) in rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .zip(samples.chunks_exact(m))
    {
        if fx.iter().all(|z| *z == C64::new(0.0, 0.0)) {
            continue;
        }
        g.eval_all(x, &mut row)?;
        for (r, irrep) in window.irreps().iter().enumerate() {
            let d = irrep.dim;
            let o = window.offset(r);
            for i in 0..d {
                for j in 0..d {
                    // conj(u_{i,j}(x)) = conj(sigma(x)[j][i])
                    let k = row[o + j * d + i].conj() * *w;
                    let dst = &mut c.data[(o + i * d + j) * m..(o + i * d + j + 1) * m];
                    for (acc, v) in dst.iter_mut().zip(fx) {
                        *acc += v * k;
                    }
                }
            }
        }
    }
    Ok(c)
}

/// The band-limited function `x -> sum_sigma d_sigma sum_{i,j} C_sigma[i][j] u_{i,j}(x)`.
pub fn inverse_transform(c: &FourierCoefficients, g: &Group) -> Result<VectorFunction> {
    c.check_window(g)?;
    Ok(VectorFunction::spectral(c.clone()))
}

/// `(sum_sigma d_sigma sum_{i,j} ||C_sigma[i][j]||_E^p)^(1/p)`; for `p = inf`
/// the unweighted max of `||C_sigma[i][j]||_E`.
pub fn s_p_norm(c: &FourierCoefficients, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let window = c.window();
    if p.is_infinite() {
        let max = (0..window.len())
            .flat_map(|r| c.block_norms(r))
            .fold(0.0_f64, f64::max);
        return Ok(max);
    }
    if p == 2.0 {
        return Ok(crate::sobolev::weighted_square_sum(c, |_| 1.0).sqrt());
    }
    let scale = (0..window.len())
        .flat_map(|r| c.block_norms(r))
        .fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for (r, irrep) in window.irreps().iter().enumerate() {
        let block: f64 = c.block_norms(r).map(|n| (n / scale).powf(p)).sum();
        sum += irrep.dim as f64 * block;
    }
    Ok(scale * sum.powf(1.0 / p))
}

/// How [`random_band_limited`] draws entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AmplitudeLaw {
    /// Independent standard complex Gaussians (real and imaginary parts `N(0, 1/2)`).
    Gaussian,
    /// All coefficients zero.
    Zero,
    /// Gaussian entries scaled by `(1 + band)^(-exponent)`.
    Decay {
        /// Power of the decay in the band parameter.
        exponent: f64,
    },
}

/// Seeded random coefficients on `g`'s window.
pub fn random_band_limited(
    seed: u64,
    g: &Group,
    m: usize,
    law: AmplitudeLaw,
) -> FourierCoefficients {
    let window = g.window();
    let mut c = FourierCoefficients::zeros(window, m, ENorm::EUCLIDEAN);
    if law == AmplitudeLaw::Zero {
        return c;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = core::f64::consts::FRAC_1_SQRT_2;
    for (r, irrep) in window.irreps().iter().enumerate() {
        let amp = match law {
            AmplitudeLaw::Decay { exponent } => (1.0 + irrep.band as f64).powf(-exponent),
            _ => 1.0,
        };
        let o = window.offset(r) * m;
        let n = irrep.dim * irrep.dim * m;
        for z in &mut c.data[o..o + n] {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *z = C64::new(re * h * amp, im * h * amp);
        }
    }
    c
}
