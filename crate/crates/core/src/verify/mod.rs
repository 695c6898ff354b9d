//! Seeded property checks of the embedding inequalities.
//!
//! Every check produces [`InequalityRecord`]s `lhs <= rhs` with an explicit
//! tolerance; [`run_suite`] runs all of them over batches of random
//! band-limited functions and collects a [`VerificationReport`].

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

#[allow(unused_imports)] // float math is inherent in `core` on recent toolchains
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fourier::{
    forward_transform, random_band_limited, s_p_norm, AmplitudeLaw, ENorm, FourierCoefficients,
    VectorFunction,
};
use crate::group::{make_group, Group, GroupElement, GroupSpec, Label};
use crate::linalg::{lp_norm, op_norm};
use crate::sobolev::{
    embedding_constant_c, exponents, h_s_norm, l_p_norm, lq_bound_constant, sup_from_samples,
    WeightSequence, DEFAULT_EXTRA_SAMPLES,
};
use crate::{Error, Result, C64};

/// Relative tolerance for algebraic identities and inequalities between
/// spectral quantities.
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Relative tolerance for quantities a quadrature rule computes exactly.
pub const TOL_QUADRATURE: f64 = 1e-9;
/// Relative tolerance when a quadrature integrates a non-band-limited integrand.
pub const TOL_NON_POLYNOMIAL: f64 = 1e-6;
/// Absolute tolerance of the matrix-coefficient continuity bound.
pub const TOL_CONTINUITY: f64 = 1e-10;

/// Check names, in the order they are listed in reports.
pub const CHECK_NAMES: [&str; 11] = [
    "block_comparison",
    "continuity_modulus",
    "hausdorff_young",
    "l2_embedding",
    "lq_embedding",
    "lq_embedding_chain",
    "monotone_embedding",
    "plancherel",
    "round_trip",
    "sup_embedding",
    "vector_norm_comparison",
];

/// One checked inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct InequalityRecord {
    /// Check name, one of [`CHECK_NAMES`].
    pub name: String,
    /// Group name (empty for checks run outside a suite).
    pub group: String,
    /// Seed of the random function or pair the record is about.
    pub seed: u64,
    /// Position among the records of one check for one seed.
    pub index: usize,
    /// Parameters such as `s=1,t=2`.
    pub params: String,
    /// Left-hand side.
    pub lhs: f64,
    /// Right-hand side.
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    /// Absolute tolerance: the record passes iff `slack >= -tol`.
    pub tol: f64,
    /// `slack >= -tol`.
    pub pass: bool,
    /// The inequality depends on hypotheses (a Euclidean `E`) that the
    /// configuration does not meet; a failure is reported but not fatal.
    pub advisory: bool,
}

impl InequalityRecord {
    /// A record with tolerance `rel * (1 + |rhs|)`.
    pub fn relative(name: &str, params: String, lhs: f64, rhs: f64, rel: f64) -> Self {
        Self::with_tol(name, params, lhs, rhs, rel * (1.0 + rhs.abs()))
    }

    /// A record with absolute tolerance `tol`.
    pub fn with_tol(name: &str, params: String, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        InequalityRecord {
            name: name.to_string(),
            group: String::new(),
            seed: 0,
            index: 0,
            params,
            lhs,
            rhs,
            slack,
            tol,
            pass: slack >= -tol,
            advisory: false,
        }
    }

    /// Scales the right-hand side (and the tolerance with it) and re-judges.
    /// Used only to show that the harness can fail.
    pub fn tamper(&mut self, factor: f64) {
        self.tol *= (1.0 + (self.rhs * factor).abs()) / (1.0 + self.rhs.abs());
        self.rhs *= factor;
        self.slack = self.rhs - self.lhs;
        self.pass = self.slack >= -self.tol;
    }

    fn at(mut self, group: &str, seed: u64, index: usize) -> Self {
        self.group = group.to_string();
        self.seed = seed;
        self.index = index;
        self
    }

    fn advisory(mut self, advisory: bool) -> Self {
        self.advisory = advisory;
        self
    }
}

fn check_order(p: f64, q: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    if q.is_nan() || p > q {
        return Err(Error::ExponentOrder { p, q });
    }
    Ok(())
}

fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// `||x||_q <= ||x||_p` and `||x||_p <= n^(1/p - 1/q) ||x||_q` for `1 <= p <= q`.
pub fn check_vector_norm_comparison(x: &[C64], p: f64, q: f64) -> Result<[InequalityRecord; 2]> {
    check_order(p, q)?;
    let np = lp_norm(x, p);
    let nq = lp_norm(x, q);
    let factor = (x.len().max(1) as f64).powf(inv(p) - inv(q));
    let tol = TOL_ALGEBRAIC * (1.0 + np);
    let params = format!("n={},p={p},q={q}", x.len());
    let mut upper =
        InequalityRecord::with_tol("vector_norm_comparison", params.clone(), nq, np, tol);
    upper.index = 0;
    let mut lower =
        InequalityRecord::with_tol("vector_norm_comparison", params, np, factor * nq, tol);
    lower.index = 1;
    Ok([upper, lower])
}

/// Per irrep, `(sum ||C[i][j]||^p)^(1/p) <= (d^2)^(1/p - 1/q) (sum ||C[i][j]||^q)^(1/q)`.
pub fn check_block_comparison(
    c: &FourierCoefficients,
    p: f64,
    q: f64,
) -> Result<Vec<InequalityRecord>> {
    check_order(p, q)?;
    let e = c.e_norm();
    let mut out = Vec::with_capacity(c.window().len());
    for (r, irrep) in c.window().irreps().iter().enumerate() {
        let norms: Vec<C64> = c.block(r).map(|v| C64::new(e.norm(v), 0.0)).collect();
        let lhs = lp_norm(&norms, p);
        let d2 = (irrep.dim * irrep.dim) as f64;
        let rhs = d2.powf(inv(p) - inv(q)) * lp_norm(&norms, q);
        let params = format!("irrep={},p={p},q={q}", irrep.label);
        let mut rec =
            InequalityRecord::relative("block_comparison", params, lhs, rhs, TOL_ALGEBRAIC);
        rec.index = r;
        out.push(rec);
    }
    Ok(out)
}

/// `||f||_{H^s} <= ||f||_{H^t}` for `t > s >= 0`.
pub fn check_monotone_embedding(
    c: &FourierCoefficients,
    gamma: &WeightSequence,
    s: f64,
    t: f64,
) -> Result<InequalityRecord> {
    if !(t > s) {
        return Err(Error::InvalidPair { s, t });
    }
    let lhs = h_s_norm(c, gamma, s)?;
    let rhs = h_s_norm(c, gamma, t)?;
    Ok(InequalityRecord::relative(
        "monotone_embedding",
        format!("s={s},t={t}"),
        lhs,
        rhs,
        TOL_ALGEBRAIC,
    ))
}

/// A band-limited function together with its values at the quadrature nodes.
struct Subject<'a> {
    g: &'a Group,
    c: &'a FourierCoefficients,
    f: VectorFunction,
}

impl<'a> Subject<'a> {
    fn new(g: &'a Group, c: &'a FourierCoefficients) -> Result<Self> {
        let f = VectorFunction::spectral(c.clone());
        let samples = f.samples(g)?.into_owned();
        let f = VectorFunction::sampled(c.m(), c.e_norm(), samples)?;
        Ok(Subject { g, c, f })
    }

    fn samples(&self) -> &[C64] {
        match self.f.representation() {
            crate::fourier::Representation::Sampled(v) => v,
            crate::fourier::Representation::Spectral(_) => unreachable!(),
        }
    }

    fn l2(&self) -> Result<f64> {
        l_p_norm(&self.f, self.g, 2.0)
    }

    fn sup(&self, extra_samples: usize, seed: u64) -> Result<f64> {
        sup_from_samples(
            self.samples(),
            self.c.m(),
            self.c.e_norm(),
            Some(self.c),
            self.g,
            extra_samples,
            seed,
        )
    }
}

fn l2_record(s: f64, l2: f64, hs: f64, e: ENorm) -> InequalityRecord {
    InequalityRecord::relative("l2_embedding", format!("s={s}"), l2, hs, TOL_QUADRATURE)
        .advisory(!e.is_euclidean())
}

/// `||f||_{L^2} <= ||f||_{H^s}` (a consequence of Plancherel; needs `p_E = 2`).
pub fn check_l2_embedding(
    c: &FourierCoefficients,
    gamma: &WeightSequence,
    s: f64,
    g: &Group,
) -> Result<InequalityRecord> {
    let subject = Subject::new(g, c)?;
    Ok(l2_record(
        s,
        subject.l2()?,
        h_s_norm(c, gamma, s)?,
        c.e_norm(),
    ))
}

fn sup_record(s: f64, sup: f64, constant: f64, hs: f64) -> InequalityRecord {
    InequalityRecord::relative(
        "sup_embedding",
        format!("s={s}"),
        sup,
        constant * hs,
        TOL_QUADRATURE,
    )
}

/// `sup ||f|| <= C(gamma, s) ||f||_{H^s}`, the sup estimated on the nodes and
/// [`DEFAULT_EXTRA_SAMPLES`] random points drawn from `seed`.
pub fn check_sup_embedding(
    c: &FourierCoefficients,
    gamma: &WeightSequence,
    s: f64,
    g: &Group,
    seed: u64,
) -> Result<InequalityRecord> {
    let subject = Subject::new(g, c)?;
    let sup = subject.sup(DEFAULT_EXTRA_SAMPLES, seed)?;
    let constant = embedding_constant_c(gamma, s, g.window())?.value;
    Ok(sup_record(s, sup, constant, h_s_norm(c, gamma, s)?))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

fn hausdorff_young_record(
    subject: &Subject<'_>,
    alpha: f64,
    params: String,
) -> Result<InequalityRecord> {
    let conj = alpha / (alpha - 1.0);
    let lhs = l_p_norm(&subject.f, subject.g, conj)?;
    let rhs = s_p_norm(subject.c, alpha)?;
    Ok(
        InequalityRecord::relative("hausdorff_young", params, lhs, rhs, TOL_NON_POLYNOMIAL)
            .advisory(!subject.c.e_norm().is_euclidean()),
    )
}

/// `||f||_{L^{alpha'}} <= ||f^||_{S_alpha}` for `1 < alpha < 2`.
pub fn check_hausdorff_young(
    c: &FourierCoefficients,
    g: &Group,
    alpha: f64,
) -> Result<InequalityRecord> {
    check_alpha(alpha)?;
    let subject = Subject::new(g, c)?;
    hausdorff_young_record(&subject, alpha, format!("alpha={alpha}"))
}

fn lq_records(
    subject: &Subject<'_>,
    gamma: &WeightSequence,
    s: f64,
    t: f64,
) -> Result<[InequalityRecord; 2]> {
    let params = exponents(s, t)?;
    let constant = lq_bound_constant(gamma, t, s, subject.g.window())?;
    let hs = h_s_norm(subject.c, gamma, s)?;
    let lq = l_p_norm(&subject.f, subject.g, params.alpha_conj)?;
    let sa = s_p_norm(subject.c, params.alpha)?;
    let label = format!("s={s},t={t}");
    let advisory = !subject.c.e_norm().is_euclidean();
    let final_ = InequalityRecord::relative(
        "lq_embedding",
        label.clone(),
        lq,
        constant * hs,
        TOL_NON_POLYNOMIAL,
    )
    .advisory(advisory);
    let chain = InequalityRecord::relative(
        "lq_embedding_chain",
        label,
        sa,
        constant * hs,
        TOL_QUADRATURE,
    );
    Ok([final_, chain])
}

/// `||f||_{L^{alpha'}} <= K(gamma, t, s) ||f||_{H^s}` and the intermediate
/// `||f^||_{S_alpha} <= K(gamma, t, s) ||f||_{H^s}`, `t > s > 0`.
pub fn check_lq_embedding(
    c: &FourierCoefficients,
    gamma: &WeightSequence,
    s: f64,
    t: f64,
    g: &Group,
) -> Result<[InequalityRecord; 2]> {
    exponents(s, t)?;
    let subject = Subject::new(g, c)?;
    lq_records(&subject, gamma, s, t)
}

fn continuity_record(
    g: &Group,
    r: usize,
    x: &GroupElement,
    a: &GroupElement,
) -> Result<InequalityRecord> {
    let sx = g.irrep_matrix_at(r, x)?;
    let sa = g.irrep_matrix_at(r, a)?;
    let diff = sx - sa;
    let lhs = diff.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()));
    let rhs = op_norm(&diff);
    let label = &g.window().irreps()[r].label;
    Ok(InequalityRecord::with_tol(
        "continuity_modulus",
        format!("irrep={label}"),
        lhs,
        rhs,
        TOL_CONTINUITY,
    ))
}

fn random_pair(g: &Group, rng: &mut ChaCha8Rng) -> (GroupElement, GroupElement) {
    let x = g.random_element(rng);
    let a = if rng.gen_bool(0.5) {
        let scale = 10f64.powf(rng.gen_range(-6.0..0.0));
        g.random_nearby(&x, scale, rng)
    } else {
        g.random_element(rng)
    };
    (x, a)
}

/// `max_{i,j} |u_{i,j}(x) - u_{i,j}(a)| <= ||sigma(x) - sigma(a)||_op` on
/// `pairs` seeded random pairs, half of them close together.
pub fn check_continuity_modulus(
    g: &Group,
    label: &Label,
    pairs: usize,
    seed: u64,
) -> Result<Vec<InequalityRecord>> {
    let r = g
        .window()
        .position(label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..pairs)
        .map(|k| {
            let (x, a) = random_pair(g, &mut rng);
            let mut rec = continuity_record(g, r, &x, &a)?;
            rec.seed = seed;
            rec.index = k;
            Ok(rec)
        })
        .collect()
}

/// How the weights of one suite group are chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightChoice {
    /// [`WeightSequence::canonical`].
    Canonical,
    /// `gamma = 0`.
    Zero,
    /// Explicit values by printed label.
    Table(Vec<(String, f64)>),
}

/// A group of the suite and its weights.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteGroup {
    /// Group to build.
    pub spec: GroupSpec,
    /// Weight sequence `gamma`.
    pub weights: WeightChoice,
}

/// Parameters of [`run_suite`].
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Groups to check.
    pub groups: Vec<SuiteGroup>,
    /// Dimension of `E`.
    pub m: usize,
    /// Norm on `E`.
    pub e_norm: ENorm,
    /// Smoothness values for the `H^s`, `L^2` and sup checks.
    pub s_grid: Vec<f64>,
    /// `(s, t)` pairs for the `L^{alpha'}` checks.
    pub st_pairs: Vec<(f64, f64)>,
    /// Random functions per group.
    pub batch_size: usize,
    /// Master seed.
    pub seed: u64,
    /// Random points added to the nodes when estimating sup norms.
    pub extra_samples: usize,
    /// Positive factor applied to every random function.
    pub scale: f64,
    /// Test hook: multiply every right-hand side by this factor.
    pub tamper_rhs_scale: Option<f64>,
}

impl Default for SuiteConfig {
    /// Z_12, S_3, circle(N = 16) and SU(2) (L = 4) with canonical weights,
    /// 200 functions per group into `C^3` with the Euclidean norm.
    fn default() -> Self {
        let canonical = |spec| SuiteGroup {
            spec,
            weights: WeightChoice::Canonical,
        };
        SuiteConfig {
            groups: vec![
                canonical(GroupSpec::Cyclic { n: 12 }),
                canonical(GroupSpec::S3),
                canonical(GroupSpec::Circle { band: 16 }),
                canonical(GroupSpec::su2(4)),
            ],
            m: 3,
            e_norm: ENorm::EUCLIDEAN,
            s_grid: vec![0.0, 0.5, 1.0, 2.0],
            st_pairs: vec![(1.0, 2.0), (1.0, 3.0), (0.5, 2.0)],
            batch_size: 200,
            seed: 20_240_917,
            extra_samples: 256,
            scale: 1.0,
            tamper_rhs_scale: None,
        }
    }
}

impl SuiteConfig {
    /// Checks every field, naming the offending one.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.m == 0 {
            return bad("m must be at least 1".into());
        }
        if self.batch_size == 0 {
            return bad("batch_size must be at least 1".into());
        }
        for &s in &self.s_grid {
            if !(s.is_finite() && s >= 0.0) {
                return bad(format!("s_grid: s = {s} must be finite and >= 0"));
            }
        }
        for &(s, t) in &self.st_pairs {
            if !(s.is_finite() && t.is_finite() && s > 0.0 && t > s) {
                return bad(format!("st_pairs: ({s}, {t}) must satisfy t > s > 0"));
            }
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return bad(format!("scale = {} must be finite and > 0", self.scale));
        }
        if let Some(f) = self.tamper_rhs_scale {
            if !f.is_finite() {
                return bad(format!("tamper factor {f} must be finite"));
            }
        }
        Ok(())
    }
}

/// Count, failures and smallest slack of one check.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckSummary {
    /// Number of records.
    pub count: usize,
    /// Failing records, advisory ones included.
    pub failures: usize,
    /// Failing records that are advisory.
    pub advisory_failures: usize,
    /// Smallest slack.
    pub min_slack: f64,
}

/// What was run.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ReportMeta {
    /// Group names in configuration order.
    pub groups: Vec<String>,
    /// Functions per group.
    pub batch_size: usize,
    /// Master seed.
    pub seed: u64,
    /// Dimension of `E`.
    pub m: usize,
    /// Exponent of the norm on `E`, printed (`inf` allowed).
    pub e_norm: String,
    /// Smoothness grid.
    pub s_grid: Vec<f64>,
    /// `(s, t)` pairs.
    pub st_pairs: Vec<(f64, f64)>,
    /// Random points per sup estimate.
    pub extra_samples: usize,
    /// Scale applied to the random functions.
    pub scale: f64,
    /// Whether the tamper hook was active.
    pub tampered: bool,
}

/// Records of a suite run, sorted by `(name, group, seed, index)`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerificationReport {
    /// All records.
    pub records: Vec<InequalityRecord>,
    /// Batch metadata.
    pub meta: ReportMeta,
    /// Per-check summary, keyed by check name.
    pub summary: BTreeMap<String, CheckSummary>,
}

impl VerificationReport {
    /// True iff every non-advisory record passes.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass || r.advisory)
    }

    /// Records that fail, advisory ones included.
    pub fn failures(&self) -> impl Iterator<Item = &InequalityRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// SplitMix64 finalizer, used to derive independent per-function seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of function `k` of group `group` under `master`.
pub fn function_seed(master: u64, group: usize, k: usize) -> u64 {
    mix(mix(mix(master) ^ group as u64) ^ k as u64)
}

fn weights_for(g: &Group, choice: &WeightChoice) -> Result<WeightSequence> {
    match choice {
        WeightChoice::Canonical => Ok(WeightSequence::canonical(g)),
        WeightChoice::Zero => Ok(WeightSequence::zero(g.window())),
        WeightChoice::Table(t) => {
            WeightSequence::from_table(g.window(), t.iter().map(|(k, v)| (k.as_str(), *v)))
        }
    }
}

/// Per-group quantities shared by every function of the batch.
struct GroupContext {
    group: Group,
    gamma: WeightSequence,
    sup_constants: Vec<f64>,
}

/// Runs every check on `batch_size` random functions per group.
///
/// The output depends only on `config`.
pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    config.validate()?;
    let mut contexts = Vec::with_capacity(config.groups.len());
    for sg in &config.groups {
        let group = make_group(&sg.spec)?;
        let gamma = weights_for(&group, &sg.weights)?;
        let sup_constants = config
            .s_grid
            .iter()
            .map(|&s| Ok(embedding_constant_c(&gamma, s, group.window())?.value))
            .collect::<Result<Vec<_>>>()?;
        contexts.push(GroupContext {
            group,
            gamma,
            sup_constants,
        });
    }
    let names: Vec<String> = contexts
        .iter()
        .map(|c| c.group.name().to_string())
        .collect();
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::Config(format!("group `{n}` listed twice")));
        }
    }

    let mut records = Vec::new();
    for (gi, ctx) in contexts.iter().enumerate() {
        for k in 0..config.batch_size {
            let seed = function_seed(config.seed, gi, k);
            check_function(config, ctx, seed, &mut records)?;
        }
    }
    if let Some(factor) = config.tamper_rhs_scale {
        records.iter_mut().for_each(|r| r.tamper(factor));
    }
    records.sort_by(|a, b| {
        (&a.name, &a.group, a.seed, a.index).cmp(&(&b.name, &b.group, b.seed, b.index))
    });

    let mut summary: BTreeMap<String, CheckSummary> = BTreeMap::new();
    for r in &records {
        let entry = summary.entry(r.name.clone()).or_insert(CheckSummary {
            count: 0,
            failures: 0,
            advisory_failures: 0,
            min_slack: f64::INFINITY,
        });
        entry.count += 1;
        if !r.pass {
            entry.failures += 1;
            if r.advisory {
                entry.advisory_failures += 1;
            }
        }
        entry.min_slack = entry.min_slack.min(r.slack);
    }

    Ok(VerificationReport {
        records,
        meta: ReportMeta {
            groups: names,
            batch_size: config.batch_size,
            seed: config.seed,
            m: config.m,
            e_norm: format!("{}", config.e_norm.exponent()),
            s_grid: config.s_grid.clone(),
            st_pairs: config.st_pairs.clone(),
            extra_samples: config.extra_samples,
            scale: config.scale,
            tampered: config.tamper_rhs_scale.is_some(),
        },
        summary,
    })
}

/// All records for one random function.
fn check_function(
    config: &SuiteConfig,
    ctx: &GroupContext,
    seed: u64,
    out: &mut Vec<InequalityRecord>,
) -> Result<()> {
    let g = &ctx.group;
    let name = g.name();
    let gamma = &ctx.gamma;
    let e = config.e_norm;
    let c = random_band_limited(seed, g, config.m, AmplitudeLaw::Gaussian)
        .scaled(C64::new(config.scale, 0.0))
        .with_e_norm(e);
    let subject = Subject::new(g, &c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed ^ 0x5eed));
    let push = |out: &mut Vec<InequalityRecord>, rec: InequalityRecord, index: usize| {
        out.push(rec.at(name, seed, index));
    };

    // Finite-dimensional comparison on the flat coefficient vector.
    let p = rng.gen_range(1.0..4.0);
    let q = if rng.gen_bool(0.25) {
        f64::INFINITY
    } else {
        rng.gen_range(p..8.0)
    };
    for (i, rec) in check_vector_norm_comparison(c.as_flat(), p, q)?
        .into_iter()
        .enumerate()
    {
        push(out, rec, i);
    }

    // Transform identities.
    let l2 = subject.l2()?;
    let s2 = s_p_norm(&c, 2.0)?;
    let plancherel = InequalityRecord::with_tol(
        "plancherel",
        String::new(),
        (s2 - l2).abs(),
        0.0,
        TOL_QUADRATURE * (1.0 + l2),
    )
    .advisory(!e.is_euclidean());
    push(out, plancherel, 0);
    push(out, round_trip_record(&subject)?, 0);

    // Per-block comparison with the exponents used by the L^{alpha'} proof.
    let mut index = 0;
    for &(s, t) in &config.st_pairs {
        let alpha = exponents(s, t)?.alpha;
        for rec in check_block_comparison(&c, alpha, 2.0)? {
            push(out, rec, index);
            index += 1;
        }
    }

    // Sobolev scale.
    let h: Vec<f64> = config
        .s_grid
        .iter()
        .map(|&s| h_s_norm(&c, gamma, s))
        .collect::<Result<_>>()?;
    let mut index = 0;
    for (a, &s) in config.s_grid.iter().enumerate() {
        for (b, &t) in config.s_grid.iter().enumerate() {
            if t > s {
                let rec = InequalityRecord::relative(
                    "monotone_embedding",
                    format!("s={s},t={t}"),
                    h[a],
                    h[b],
                    TOL_ALGEBRAIC,
                );
                push(out, rec, index);
                index += 1;
            }
        }
    }
    let sup = subject.sup(config.extra_samples, mix(seed ^ 0x5a9))?;
    for (a, &s) in config.s_grid.iter().enumerate() {
        push(out, l2_record(s, l2, h[a], e), a);
        push(out, sup_record(s, sup, ctx.sup_constants[a], h[a]), a);
    }

    // L^{alpha'} embedding and the inverse Hausdorff-Young step.
    for (a, &(s, t)) in config.st_pairs.iter().enumerate() {
        let alpha = exponents(s, t)?.alpha;
        push(
            out,
            hausdorff_young_record(&subject, alpha, format!("s={s},t={t},alpha={alpha}"))?,
            a,
        );
        let [final_, chain] = lq_records(&subject, gamma, s, t)?;
        push(out, final_, a);
        push(out, chain, a);
    }

    // Matrix-coefficient continuity, one pair per irrep.
    for r in 0..g.window().len() {
        let (x, a) = random_pair(g, &mut rng);
        push(out, continuity_record(g, r, &x, &a)?, r);
    }
    Ok(())
}

/// Transform the node samples, resynthesize, and compare at the nodes.
fn round_trip_record(subject: &Subject<'_>) -> Result<InequalityRecord> {
    let g = subject.g;
    let m = subject.c.m();
    let e = subject.c.e_norm();
    let back = forward_transform(&subject.f, g)?;
    let resampled = VectorFunction::spectral(back).samples(g)?.into_owned();
    let mut err = 0.0_f64;
    let mut sup = 0.0_f64;
    let mut diff = vec![C64::new(0.0, 0.0); m];
    for (a, b) in subject
        .samples()
        .chunks_exact(m)
        .zip(resampled.chunks_exact(m))
    {
        for ((d, x), y) in diff.iter_mut().zip(a).zip(b) {
            *d = x - y;
        }
        err = err.max(e.norm(&diff));
        sup = sup.max(e.norm(a));
    }
    Ok(InequalityRecord::with_tol(
        "round_trip",
        String::new(),
        err,
        0.0,
        TOL_QUADRATURE * (1.0 + sup),
    ))
}
