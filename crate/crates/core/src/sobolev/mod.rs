//! Weight sequences, the Sobolev norm `H^s_gamma`, Lebesgue and sup norms on
//! the group, and the constants of the embedding inequalities.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)] // float math is inherent in `core` on recent toolchains
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fourier::{ENorm, FourierCoefficients, Representation, VectorFunction};
use crate::group::{DualWindow, Group, Label};
use crate::{Error, Result, C64};

/// Default number of pseudorandom extra points used by [`sup_norm`].
pub const DEFAULT_EXTRA_SAMPLES: usize = 1000;

/// Decay exponent above which a series of band terms is called plausibly summable.
const SUMMABLE_EXPONENT: f64 = 1.05;

/// `sigma -> gamma(sigma) >= 0` over a dual window.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSequence {
    entries: Vec<(Label, f64)>,
}

impl WeightSequence {
    /// `gamma = 0` on every irrep of `window`.
    pub fn zero(window: &DualWindow) -> Self {
        WeightSequence {
            entries: window
                .irreps()
                .iter()
                .map(|r| (r.label.clone(), 0.0))
                .collect(),
        }
    }

    /// `|n|` on the circle, `sqrt(j (j + 1))` on SU(2), zero on finite groups.
    pub fn canonical(g: &Group) -> Self {
        let entries = g
            .window()
            .irreps()
            .iter()
            .map(|r| {
                let value = match (&r.label, g.kind_name()) {
                    (Label::Character(n), "circle") => n.unsigned_abs() as f64,
                    (Label::Spin(two_j), _) => {
                        let j = *two_j as f64 / 2.0;
                        (j * (j + 1.0)).sqrt()
                    }
                    _ => 0.0,
                };
                (r.label.clone(), value)
            })
            .collect();
        WeightSequence { entries }
    }

    /// Weights given by printed label. Every window label must be present.
    pub fn from_table<'a, I>(window: &DualWindow, table: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let mut values: Vec<Option<f64>> = alloc::vec![None; window.len()];
        for (text, value) in table {
            let r = window
                .find(text)
                .ok_or_else(|| Error::UnknownLabel(text.to_string()))?;
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidWeight {
                    label: text.to_string(),
                    value,
                });
            }
            values[r] = Some(value);
        }
        let entries = window
            .irreps()
            .iter()
            .zip(values)
            .map(|(irrep, v)| {
                v.map(|v| (irrep.label.clone(), v))
                    .ok_or_else(|| Error::MissingWeight(irrep.label.to_string()))
            })
            .collect::<Result<_>>()?;
        Ok(WeightSequence { entries })
    }

    /// `gamma(label)`.
    pub fn get(&self, label: &Label) -> Option<f64> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|&(_, v)| v)
    }

    /// `(label, gamma)` pairs.
    pub fn entries(&self) -> &[(Label, f64)] {
        &self.entries
    }

    /// Weights in the order of `window`.
    pub fn aligned(&self, window: &DualWindow) -> Result<Vec<f64>> {
        window
            .irreps()
            .iter()
            .map(|r| {
                self.get(&r.label)
                    .ok_or_else(|| Error::MissingWeight(r.label.to_string()))
            })
            .collect()
    }
}

/// `sum_sigma d_sigma w_sigma sum_{i,j} ||C_sigma[i][j]||_E^2`.
pub(crate) fn weighted_square_sum(c: &FourierCoefficients, weights: impl Fn(usize) -> f64) -> f64 {
    c.window()
        .irreps()
        .iter()
        .enumerate()
        .map(|(r, irrep)| {
            let block: f64 = c.block_norms(r).map(|n| n * n).sum();
            irrep.dim as f64 * weights(r) * block
        })
        .sum()
}

fn check_smoothness(s: f64) -> Result<()> {
    if s.is_finite() && s >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSmoothness(s))
    }
}

/// `(sum_sigma d_sigma (1 + gamma(sigma)^2)^s sum_{i,j} ||C_sigma[i][j]||_E^2)^(1/2)`.
pub fn h_s_norm(c: &FourierCoefficients, gamma: &WeightSequence, s: f64) -> Result<f64> {
    check_smoothness(s)?;
    let w = gamma.aligned(c.window())?;
    Ok(weighted_square_sum(c, |r| (1.0 + w[r] * w[r]).powf(s)).sqrt())
}

/// Quadrature value of `(integral ||f(x)||_E^p dx)^(1/p)` for finite `p >= 1`.
pub fn l_p_norm(f: &VectorFunction, g: &Group, p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let samples = f.samples(g)?;
    let e = f.e_norm();
    let norms: Vec<f64> = samples.chunks_exact(f.m()).map(|v| e.norm(v)).collect();
    let scale = norms.iter().fold(0.0_f64, |a, &b| a.max(b));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let sum: f64 = g
        .quadrature()
        .weights
        .iter()
        .zip(&norms)
        .map(|(w, n)| w * (n / scale).powf(p))
        .sum();
    Ok(scale * sum.powf(1.0 / p))
}

/// Largest `||f(x)||_E` over the quadrature nodes and, for spectral `f`,
/// `extra_samples` seeded Haar-random points. A lower bound on the true sup.
pub fn sup_norm(f: &VectorFunction, g: &Group, extra_samples: usize, seed: u64) -> Result<f64> {
    let samples = f.samples(g)?;
    let spectral = match f.representation() {
        Representation::Spectral(c) => Some(c),
        Representation::Sampled(_) => None,
    };
    sup_from_samples(
        &samples,
        f.m(),
        f.e_norm(),
        spectral,
        g,
        extra_samples,
        seed,
    )
}

/// [`sup_norm`] with the node samples already at hand.
pub(crate) fn sup_from_samples(
    samples: &[C64],
    m: usize,
    e: ENorm,
    spectral: Option<&FourierCoefficients>,
    g: &Group,
    extra_samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut best = samples
        .chunks_exact(m)
        .map(|v| e.norm(v))
        .fold(0.0_f64, f64::max);
    if let Some(c) = spectral {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut row = alloc::vec![C64::new(0.0, 0.0); g.window().entries()];
        let mut out = alloc::vec![C64::new(0.0, 0.0); m];
        for _ in 0..extra_samples {
            let x = g.random_element(&mut rng);
            g.eval_all(&x, &mut row)?;
            c.synthesize(&row, &mut out);
            best = best.max(e.norm(&out));
        }
    }
    Ok(best)
}

/// Heuristic summability verdict for `sum_sigma d_sigma^3 (1 + gamma^2)^(-s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    /// The window is the whole (finite) dual; the sum is exact.
    FiniteDual,
    /// Band terms decay faster than `band^-1` over the tail of the window.
    PlausiblySummable,
    /// Band terms grow, stay constant, or decay no faster than `band^-1`.
    Diverging,
    /// Too few bands to judge.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::FiniteDual => "finite_dual",
            Verdict::PlausiblySummable => "plausibly_summable",
            Verdict::Diverging => "diverging",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Band-by-band terms of `sum d^3 (1 + gamma^2)^(-s)` and a verdict.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SummabilityReport {
    /// Band parameters present in the window, increasing.
    pub bands: Vec<u32>,
    /// Sum of `d^3 (1 + gamma^2)^(-s)` over the irreps of each band.
    pub terms: Vec<f64>,
    /// Running sums of `terms`.
    pub partial_sums: Vec<f64>,
    /// `terms[k + 1] / terms[k]`.
    pub ratios: Vec<f64>,
    /// Local power-law decay exponent of the terms over the upper half of the window.
    pub decay_exponent: Option<f64>,
    /// Heuristic verdict; never a proof of summability.
    pub verdict: Verdict,
}

/// Partial sums and a decay diagnostic for the hypothesis
/// `sum_sigma d_sigma^3 / (1 + gamma(sigma)^2)^s < inf`.
pub fn summability_check(
    gamma: &WeightSequence,
    s: f64,
    window: &DualWindow,
) -> Result<SummabilityReport> {
    check_smoothness(s)?;
    let w = gamma.aligned(window)?;
    let mut bands: Vec<u32> = window.irreps().iter().map(|r| r.band).collect();
    bands.sort_unstable();
    bands.dedup();
    let mut terms = alloc::vec![0.0; bands.len()];
    for (irrep, g) in window.irreps().iter().zip(&w) {
        let k = bands.binary_search(&irrep.band).expect("band listed");
        terms[k] += cube(irrep.dim) * (1.0 + g * g).powf(-s);
    }
    let partial_sums = terms
        .iter()
        .scan(0.0, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect();
    let ratios = terms.windows(2).map(|p| p[1] / p[0]).collect();

    let tail: Vec<(f64, f64)> = bands
        .iter()
        .zip(&terms)
        .filter(|(b, t)| **b >= 1 && **t > 0.0)
        .map(|(b, t)| (*b as f64, *t))
        .collect();
    let decay_exponent = (tail.len() >= 3).then(|| {
        let (b_hi, t_hi) = tail[tail.len() - 1];
        let half = b_hi / 2.0;
        let &(b_lo, t_lo) = tail
            .iter()
            .min_by(|a, b| (a.0 - half).abs().total_cmp(&(b.0 - half).abs()))
            .expect("nonempty tail");
        -(t_hi / t_lo).ln() / (b_hi / b_lo).ln()
    });

    let verdict = if window.is_complete() {
        Verdict::FiniteDual
    } else if terms.len() >= 2 && terms[terms.len() - 1] >= terms[terms.len() - 2] {
        Verdict::Diverging
    } else {
        match decay_exponent {
            Some(p) if p > SUMMABLE_EXPONENT => Verdict::PlausiblySummable,
            Some(_) => Verdict::Diverging,
            None => Verdict::Inconclusive,
        }
    };
    Ok(SummabilityReport {
        bands,
        terms,
        partial_sums,
        ratios,
        decay_exponent,
        verdict,
    })
}

fn cube(d: usize) -> f64 {
    let d = d as f64;
    d * d * d
}

/// `sum_sigma d_sigma^3 (1 + gamma(sigma)^2)^(-s)` over the window.
fn dimension_series(gamma: &WeightSequence, s: f64, window: &DualWindow) -> Result<f64> {
    let w = gamma.aligned(window)?;
    Ok(window
        .irreps()
        .iter()
        .zip(&w)
        .map(|(irrep, g)| cube(irrep.dim) * (1.0 + g * g).powf(-s))
        .sum())
}

/// A window partial value of an embedding constant with its summability verdict.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConstantEstimate {
    /// Value computed over the window.
    pub value: f64,
    /// Verdict on the underlying infinite series.
    pub verdict: Verdict,
}

/// `C(gamma, s) = (sum_sigma d_sigma^3 (1 + gamma(sigma)^2)^(-s))^(1/2)`, the
/// constant of `||f||_inf <= C(gamma, s) ||f||_{H^s_gamma}`.
pub fn embedding_constant_c(
    gamma: &WeightSequence,
    s: f64,
    window: &DualWindow,
) -> Result<ConstantEstimate> {
    check_smoothness(s)?;
    let value = dimension_series(gamma, s, window)?.sqrt();
    let verdict = summability_check(gamma, s, window)?.verdict;
    Ok(ConstantEstimate { value, verdict })
}

/// Exponents of the `L^{alpha'}` embedding.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SobolevParams {
    /// Smoothness of the source space.
    pub s: f64,
    /// Auxiliary index `t > s`.
    pub t: f64,
    /// `alpha = 2t / (s + t)`, in `(1, 2)`.
    pub alpha: f64,
    /// `alpha' = 2t / (t - s)`, the Hölder conjugate of `alpha`.
    pub alpha_conj: f64,
}

fn check_pair(s: f64, t: f64) -> Result<()> {
    if s.is_finite() && t.is_finite() && s > 0.0 && t > s {
        Ok(())
    } else {
        Err(Error::InvalidPair { s, t })
    }
}

/// `alpha = 2t / (s + t)` and `alpha' = 2t / (t - s)` for `t > s > 0`.
pub fn exponents(s: f64, t: f64) -> Result<SobolevParams> {
    check_pair(s, t)?;
    let alpha = 2.0 * t / (s + t);
    let alpha_conj = 2.0 * t / (t - s);
    debug_assert!((1.0 / alpha + 1.0 / alpha_conj - 1.0).abs() <= 1e-12);
    Ok(SobolevParams {
        s,
        t,
        alpha,
        alpha_conj,
    })
}

/// `(sum_sigma d_sigma^3 (1 + gamma(sigma)^2)^(-t))^(s / 2t)`, the constant of
/// `||f||_{L^{alpha'}} <= K ||f||_{H^s_gamma}`.
pub fn lq_bound_constant(
    gamma: &WeightSequence,
    t: f64,
    s: f64,
    window: &DualWindow,
) -> Result<f64> {
    check_pair(s, t)?;
    Ok(dimension_series(gamma, t, window)?.powf(s / (2.0 * t)))
}

#[cfg(test)]
mod tests;
