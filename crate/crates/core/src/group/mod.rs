//! Concrete compact groups, their truncated unitary duals and Haar quadrature.
//!
//! Matrix coefficients follow `u_{i,j}(x) = <sigma(x) e_i, e_j>` with the standard
//! basis `e_1, ..., e_d` and the inner product linear in its first argument, so
//! `u_{i,j}(x)` is the `(j, i)` entry of `sigma(x)`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::f64::consts::PI;
use core::fmt;

use nalgebra::DMatrix;
#[allow(unused_imports)] // float math is inherent in `core` on recent toolchains
use num_traits::Float;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

mod finite;
mod gauss;
mod su2;

pub use finite::{FiniteGroupTable, IrrepTable};
pub use gauss::gauss_legendre;
pub use su2::MAX_TWO_J;

use crate::linalg::CMatrix;
use crate::{Error, Result, C64};
use finite::FiniteGroup;
use su2::WignerSmallD;

/// Max deviation allowed by the Schur orthogonality self-test.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// Coefficient functions beyond this count are subsampled by the self-test.
const SELFTEST_MAX_FUNCTIONS: usize = 400;
/// Work budget (functions^2 x nodes) for the self-test Gram matrix.
const SELFTEST_WORK: f64 = 2.5e8;
const SELFTEST_MIN_FUNCTIONS: usize = 48;

/// Label of an irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// One-dimensional character `k` of `Z_n` or `n` of the circle.
    Character(i64),
    /// SU(2) irrep `D^j`, stored as `2j`.
    Spin(u32),
    /// Named irrep of a tabulated finite group.
    Named(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Character(k) => write!(f, "{k}"),
            Label::Spin(two_j) if two_j % 2 == 0 => write!(f, "{}", two_j / 2),
            Label::Spin(two_j) => write!(f, "{two_j}/2"),
            Label::Named(name) => f.write_str(name),
        }
    }
}

/// An irreducible unitary representation in a dual window.
#[derive(Clone, Debug, PartialEq)]
pub struct Irrep {
    /// Group-specific label.
    pub label: Label,
    /// Dimension `d_sigma`.
    pub dim: usize,
    /// Band parameter used to order the window: `|k|`, `|n|` or `2j`.
    pub band: u32,
}

/// The finite working subset of the unitary dual.
#[derive(Clone, Debug, PartialEq)]
pub struct DualWindow {
    irreps: Vec<Irrep>,
    offsets: Vec<usize>,
    entries: usize,
    complete: bool,
}

impl DualWindow {
    fn new(irreps: Vec<Irrep>, complete: bool) -> Self {
        let mut offsets = Vec::with_capacity(irreps.len());
        let mut entries = 0;
        for irrep in &irreps {
            offsets.push(entries);
            entries += irrep.dim * irrep.dim;
        }
        DualWindow {
            irreps,
            offsets,
            entries,
            complete,
        }
    }

    /// Whether the window is the whole unitary dual (finite groups).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Irreps in window order (trivial first, then by band).
    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    /// Number of irreps.
    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    /// Always false; the trivial representation is always present.
    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    /// Position of `label` in the window.
    pub fn position(&self, label: &Label) -> Option<usize> {
        self.irreps.iter().position(|r| &r.label == label)
    }

    /// Position of the irrep whose label prints as `text`.
    pub fn find(&self, text: &str) -> Option<usize> {
        let text = text.trim();
        self.irreps.iter().position(|r| r.label.to_string() == text)
    }

    /// Largest band parameter in the window.
    pub fn max_band(&self) -> u32 {
        self.irreps.iter().map(|r| r.band).max().unwrap_or(0)
    }

    /// Start of irrep `r`'s block in a flat array of all matrix entries.
    pub fn offset(&self, r: usize) -> usize {
        self.offsets[r]
    }

    /// Total number of matrix entries `sum d_sigma^2`.
    pub fn entries(&self) -> usize {
        self.entries
    }
}

/// A point of a concrete group.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroupElement {
    /// Element index of a finite group.
    Finite(usize),
    /// Angle in `[0, 2pi)` on the circle.
    Angle(f64),
    /// SU(2) element with z-y-z Euler angles `alpha` in `[0, 2pi)`,
    /// `beta` in `[0, pi]`, `gamma` in `[0, 4pi)`.
    Euler {
        /// First rotation about z.
        alpha: f64,
        /// Rotation about y.
        beta: f64,
        /// Second rotation about z.
        gamma: f64,
    },
}

/// Nodes and weights realizing the normalized Haar integral.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    /// Quadrature nodes.
    pub nodes: Vec<GroupElement>,
    /// Nonnegative weights summing to one.
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True for a rule without nodes (never produced by [`make_group`]).
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Which group to build.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupSpec {
    /// Cyclic group `Z_n`, `n >= 1`.
    Cyclic {
        /// Group order.
        n: usize,
    },
    /// Symmetric group on three letters.
    S3,
    /// Circle group with characters `|n| <= band`.
    Circle {
        /// Largest `|n|`.
        band: i64,
    },
    /// SU(2) with irreps `D^j`, `j <= band`.
    Su2 {
        /// Largest spin `L`; a half-integer only when `half_integers` is set.
        band: f64,
        /// Include half-integer spins.
        half_integers: bool,
    },
    /// A finite group given by tables.
    Finite {
        /// Display name.
        name: String,
        /// Multiplication table and irreps.
        table: FiniteGroupTable,
    },
}

impl GroupSpec {
    /// SU(2) with integer spins up to `l`.
    pub fn su2(l: u32) -> Self {
        GroupSpec::Su2 {
            band: l as f64,
            half_integers: false,
        }
    }
}

#[derive(Debug)]
enum Kind {
    Finite(FiniteGroup),
    Circle,
    Su2 { tables: Vec<WignerSmallD> },
}

/// A compact group bundled with its dual window and quadrature rule.
///
/// Immutable after construction.
#[derive(Debug)]
pub struct Group {
    name: String,
    kind: Kind,
    window: DualWindow,
    rule: QuadratureRule,
}

impl fmt::Debug for WignerSmallD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WignerSmallD(dim = {})", self.dim())
    }
}

/// Builds a group and checks its quadrature against Schur orthogonality.
pub fn make_group(spec: &GroupSpec) -> Result<Group> {
    let group = Group::build(spec)?;
    let report = orthogonality_selftest(&group);
    if !report.passed {
        return Err(Error::SelfTestFailed(report.max_deviation));
    }
    Ok(group)
}

impl Group {
    fn build(spec: &GroupSpec) -> Result<Group> {
        match spec {
            GroupSpec::Cyclic { n } => {
                let fg = finite::cyclic(*n)?;
                let irreps = (0..*n)
                    .map(|k| Irrep {
                        label: Label::Character(k as i64),
                        dim: 1,
                        band: k.min(n - k) as u32,
                    })
                    .collect();
                Ok(Self::finite(format!("Z{n}"), fg, irreps))
            }
            GroupSpec::S3 => {
                let fg = finite::symmetric3();
                Ok(Self::finite_tabulated("S3".into(), fg))
            }
            GroupSpec::Finite { name, table } => {
                let fg = FiniteGroup::from_table(table)?;
                Ok(Self::finite_tabulated(name.clone(), fg))
            }
            GroupSpec::Circle { band } => {
                if *band < 0 {
                    return Err(Error::InvalidBand(*band as f64));
                }
                let n = *band;
                let mut irreps = vec![Irrep {
                    label: Label::Character(0),
                    dim: 1,
                    band: 0,
                }];
                for k in 1..=n {
                    for c in [-k, k] {
                        irreps.push(Irrep {
                            label: Label::Character(c),
                            dim: 1,
                            band: k as u32,
                        });
                    }
                }
                let m = (4 * n + 1) as usize;
                let nodes = (0..m)
                    .map(|k| GroupElement::Angle(2.0 * PI * k as f64 / m as f64))
                    .collect();
                Ok(Group {
                    name: format!("circle(N={n})"),
                    kind: Kind::Circle,
                    window: DualWindow::new(irreps, false),
                    rule: QuadratureRule {
                        nodes,
                        weights: vec![1.0 / m as f64; m],
                    },
                })
            }
            GroupSpec::Su2 {
                band,
                half_integers,
            } => {
                let two_l = 2.0 * band;
                if !(two_l >= 0.0) || two_l.fract() != 0.0 || two_l > MAX_TWO_J as f64 {
                    return Err(Error::InvalidBand(*band));
                }
                let two_l = two_l as u32;
                if !half_integers && two_l % 2 == 1 {
                    return Err(Error::InvalidBand(*band));
                }
                let step = if *half_integers { 1 } else { 2 };
                let spins: Vec<u32> = (0..=two_l).step_by(step).collect();
                let irreps = spins
                    .iter()
                    .map(|&tj| Irrep {
                        label: Label::Spin(tj),
                        dim: tj as usize + 1,
                        band: tj,
                    })
                    .collect();
                let tables = spins.iter().map(|&tj| WignerSmallD::new(tj)).collect();
                let rule = su2_rule(two_l as usize, *half_integers);
                let suffix = if *half_integers {
                    ", half-integers"
                } else {
                    ""
                };
                Ok(Group {
                    name: format!("su2(L={}{suffix})", Label::Spin(two_l)),
                    kind: Kind::Su2 { tables },
                    window: DualWindow::new(irreps, false),
                    rule,
                })
            }
        }
    }

    fn finite(name: String, fg: FiniteGroup, irreps: Vec<Irrep>) -> Group {
        let n = fg.order;
        let complete = irreps.iter().map(|r: &Irrep| r.dim * r.dim).sum::<usize>() == n;
        let rule = QuadratureRule {
            nodes: (0..n).map(GroupElement::Finite).collect(),
            weights: vec![1.0 / n as f64; n],
        };
        Group {
            name,
            kind: Kind::Finite(fg),
            window: DualWindow::new(irreps, complete),
            rule,
        }
    }

    fn finite_tabulated(name: String, fg: FiniteGroup) -> Group {
        let irreps = fg
            .labels
            .iter()
            .zip(fg.dims())
            .enumerate()
            .map(|(r, (label, dim))| Irrep {
                label: label.clone(),
                dim,
                band: u32::from(r > 0),
            })
            .collect();
        Self::finite(name, fg, irreps)
    }

    /// Display name, e.g. `Z12`, `S3`, `circle(N=16)`, `su2(L=4)`.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The truncated unitary dual.
    pub fn window(&self) -> &DualWindow {
        &self.window
    }

    /// The Haar quadrature rule.
    pub fn quadrature(&self) -> &QuadratureRule {
        &self.rule
    }

    /// Order of a finite group; `None` for the circle and SU(2).
    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            Kind::Finite(fg) => Some(fg.order),
            _ => None,
        }
    }

    /// Whether the window is the whole unitary dual (finite groups).
    pub fn has_finite_dual(&self) -> bool {
        matches!(self.kind, Kind::Finite(_))
    }

    /// Kind tag used for canonical weights: `"finite"`, `"circle"` or `"su2"`.
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Finite(_) => "finite",
            Kind::Circle => "circle",
            Kind::Su2 { .. } => "su2",
        }
    }

    /// The identity element.
    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            Kind::Finite(fg) => GroupElement::Finite(fg.identity),
            Kind::Circle => GroupElement::Angle(0.0),
            Kind::Su2 { .. } => GroupElement::Euler {
                alpha: 0.0,
                beta: 0.0,
                gamma: 0.0,
            },
        }
    }

    /// Checks that `x` is an element of this group with in-range coordinates.
    pub fn check_element(&self, x: &GroupElement) -> Result<()> {
        let ok = match (&self.kind, x) {
            (Kind::Finite(fg), GroupElement::Finite(i)) => *i < fg.order,
            (Kind::Circle, GroupElement::Angle(t)) => (0.0..2.0 * PI).contains(t),
            (Kind::Su2 { .. }, GroupElement::Euler { alpha, beta, gamma }) => {
                (0.0..2.0 * PI).contains(alpha)
                    && (0.0..=PI).contains(beta)
                    && (0.0..4.0 * PI).contains(gamma)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{x:?} in {}", self.name)))
        }
    }

    /// Group product `x y`.
    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(match (&self.kind, x, y) {
            (Kind::Finite(fg), GroupElement::Finite(a), GroupElement::Finite(b)) => {
                GroupElement::Finite(fg.mul(*a, *b))
            }
            (Kind::Circle, GroupElement::Angle(a), GroupElement::Angle(b)) => {
                GroupElement::Angle(wrap_angle(a + b))
            }
            _ => {
                let (a, b) = su2::pair_mul(su2_pair(x), su2_pair(y));
                euler_from_pair(a, b)
            }
        })
    }

    /// Haar-distributed random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        match &self.kind {
            Kind::Finite(fg) => GroupElement::Finite(rng.gen_range(0..fg.order)),
            Kind::Circle => GroupElement::Angle(rng.gen_range(0.0..2.0 * PI)),
            Kind::Su2 { .. } => {
                let q: [f64; 4] = core::array::from_fn(|_| rng.sample(StandardNormal));
                let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
                let a = C64::new(q[0] / n, q[1] / n);
                let b = C64::new(q[2] / n, q[3] / n);
                euler_from_pair(a, b)
            }
        }
    }

    /// A random element close to `x` (distance of order `scale`); for finite
    /// groups, a uniformly random element.
    pub fn random_nearby<R: Rng + ?Sized>(
        &self,
        x: &GroupElement,
        scale: f64,
        rng: &mut R,
    ) -> GroupElement {
        match (&self.kind, x) {
            (Kind::Circle, GroupElement::Angle(t)) => {
                GroupElement::Angle(wrap_angle(t + scale * rng.gen_range(-1.0..1.0)))
            }
            (Kind::Su2 { .. }, GroupElement::Euler { .. }) => {
                let v: [f64; 3] = core::array::from_fn(|_| scale * rng.gen_range(-1.0..1.0));
                let theta = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                let (s, c) = (theta / 2.0).sin_cos();
                let k = if theta > 0.0 { s / theta } else { 0.5 };
                let small = (C64::new(c, k * v[2]), C64::new(k * v[1], k * v[0]));
                let (a, b) = su2::pair_mul(su2_pair(x), small);
                euler_from_pair(a, b)
            }
            _ => self.random_element(rng),
        }
    }

    /// `sigma_r(x)` for the `r`-th irrep of the window.
    pub fn irrep_matrix_at(&self, r: usize, x: &GroupElement) -> Result<CMatrix> {
        self.check_element(x)?;
        if r >= self.window.len() {
            return Err(Error::UnknownLabel(format!("#{r}")));
        }
        Ok(self.eval_irrep(r, x))
    }

    /// `sigma(x)` for the irrep labelled `label`.
    pub fn irrep_matrix(&self, label: &Label, x: &GroupElement) -> Result<CMatrix> {
        let r = self
            .window
            .position(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        self.irrep_matrix_at(r, x)
    }

    /// `u^sigma_{i,j}(x) = <sigma(x) e_i, e_j>`, indices 1-based.
    pub fn matrix_coefficient(
        &self,
        label: &Label,
        i: usize,
        j: usize,
        x: &GroupElement,
    ) -> Result<C64> {
        let r = self
            .window
            .position(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        let dim = self.window.irreps[r].dim;
        if i == 0 || j == 0 || i > dim || j > dim {
            return Err(Error::IndexOutOfRange { i, j, dim });
        }
        Ok(self.irrep_matrix_at(r, x)?[(j - 1, i - 1)])
    }

    /// Writes every window matrix `sigma_r(x)`, row-major, at its block offset
    /// in `out` (length [`DualWindow::entries`]).
    pub fn eval_all(&self, x: &GroupElement, out: &mut [C64]) -> Result<()> {
        self.check_element(x)?;
        if out.len() != self.window.entries {
            return Err(Error::DimensionMismatch {
                expected: self.window.entries,
                found: out.len(),
            });
        }
        match (&self.kind, x) {
            (Kind::Finite(fg), GroupElement::Finite(i)) => {
                for (r, mats) in fg.images.iter().enumerate() {
                    let m = &mats[*i];
                    let d = m.nrows();
                    let o = self.window.offsets[r];
                    for a in 0..d {
                        for b in 0..d {
                            out[o + a * d + b] = m[(a, b)];
                        }
                    }
                }
            }
            (Kind::Circle, GroupElement::Angle(t)) => {
                for (r, irrep) in self.window.irreps.iter().enumerate() {
                    if let Label::Character(n) = irrep.label {
                        out[r] = C64::from_polar(1.0, n as f64 * t);
                    }
                }
            }
            (Kind::Su2 { tables }, GroupElement::Euler { alpha, beta, gamma }) => {
                let max_two_j = tables.last().map_or(0, |t| t.dim() - 1);
                let (s, c) = (beta / 2.0).sin_cos();
                let cp = su2::powers(c, max_two_j);
                let sp = su2::powers(s, max_two_j);
                let mut small = vec![0.0; (max_two_j + 1) * (max_two_j + 1)];
                for (r, table) in tables.iter().enumerate() {
                    let d = table.dim();
                    let o = self.window.offsets[r];
                    table.eval_with_powers(&cp, &sp, &mut small[..d * d]);
                    let two_j = (d - 1) as f64;
                    for a in 0..d {
                        let m_row = (two_j - 2.0 * a as f64) / 2.0;
                        for b in 0..d {
                            let m_col = (two_j - 2.0 * b as f64) / 2.0;
                            out[o + a * d + b] =
                                C64::from_polar(small[a * d + b], -(m_row * alpha + m_col * gamma));
                        }
                    }
                }
            }
            _ => unreachable!("element kind checked above"),
        }
        Ok(())
    }

    /// Evaluates selected entries `(r, a, b)` of `sigma_r(x)`.
    fn eval_entries(&self, x: &GroupElement, idx: &[(usize, usize, usize)], out: &mut [C64]) {
        match (&self.kind, x) {
            (Kind::Su2 { tables }, GroupElement::Euler { alpha, beta, gamma }) => {
                let max_two_j = tables.last().map_or(0, |t| t.dim() - 1);
                let (s, c) = (beta / 2.0).sin_cos();
                let cp = su2::powers(c, max_two_j);
                let sp = su2::powers(s, max_two_j);
                for (slot, &(r, a, b)) in out.iter_mut().zip(idx) {
                    let t = &tables[r];
                    let two_j = (t.dim() - 1) as f64;
                    let m_row = (two_j - 2.0 * a as f64) / 2.0;
                    let m_col = (two_j - 2.0 * b as f64) / 2.0;
                    *slot = C64::from_polar(
                        t.entry_with_powers(a, b, &cp, &sp),
                        -(m_row * alpha + m_col * gamma),
                    );
                }
            }
            _ => {
                let mut row = vec![C64::new(0.0, 0.0); self.window.entries];
                self.eval_all(x, &mut row)
                    .expect("element checked by caller");
                for (slot, &(r, a, b)) in out.iter_mut().zip(idx) {
                    let d = self.window.irreps[r].dim;
                    *slot = row[self.window.offsets[r] + a * d + b];
                }
            }
        }
    }

    fn eval_irrep(&self, r: usize, x: &GroupElement) -> CMatrix {
        match (&self.kind, x) {
            (Kind::Finite(fg), GroupElement::Finite(i)) => fg.images[r][*i].clone(),
            (Kind::Circle, GroupElement::Angle(t)) => {
                let Label::Character(n) = self.window.irreps[r].label else {
                    unreachable!()
                };
                CMatrix::from_element(1, 1, C64::from_polar(1.0, n as f64 * t))
            }
            (Kind::Su2 { tables }, GroupElement::Euler { alpha, beta, gamma }) => {
                su2::wigner_d_matrix(&tables[r], *alpha, *beta, *gamma)
            }
            _ => unreachable!("element kind checked by caller"),
        }
    }
}

fn wrap_angle(t: f64) -> f64 {
    su2::rem_euclid(t, 2.0 * PI)
}

fn su2_pair(x: &GroupElement) -> (C64, C64) {
    match x {
        GroupElement::Euler { alpha, beta, gamma } => su2::euler_to_pair(*alpha, *beta, *gamma),
        _ => unreachable!("not an SU(2) element"),
    }
}

fn euler_from_pair(a: C64, b: C64) -> GroupElement {
    let (alpha, beta, gamma) = su2::pair_to_euler(a, b);
    GroupElement::Euler { alpha, beta, gamma }
}

/// The defining 2x2 matrix of an SU(2) element.
pub fn su2_matrix(x: &GroupElement) -> Result<CMatrix> {
    match x {
        GroupElement::Euler { .. } => {
            let (a, b) = su2_pair(x);
            Ok(CMatrix::from_row_slice(2, 2, &[a, b, -b.conj(), a.conj()]))
        }
        _ => Err(Error::InvalidElement(format!(
            "{x:?} is not an SU(2) element"
        ))),
    }
}

fn su2_rule(two_l: usize, half_integers: bool) -> QuadratureRule {
    let n_alpha = 2 * two_l + 2;
    let (n_gamma, gamma_span) = if half_integers {
        (4 * two_l + 2, 4.0 * PI)
    } else {
        (2 * two_l + 2, 2.0 * PI)
    };
    let (xs, ws) = gauss_legendre(two_l + 1);
    let mut nodes = Vec::with_capacity(n_alpha * n_gamma * xs.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for ia in 0..n_alpha {
        let alpha = 2.0 * PI * ia as f64 / n_alpha as f64;
        for (x, w) in xs.iter().zip(&ws) {
            let beta = x.clamp(-1.0, 1.0).acos();
            for ig in 0..n_gamma {
                let gamma = gamma_span * ig as f64 / n_gamma as f64;
                nodes.push(GroupElement::Euler { alpha, beta, gamma });
                weights.push(w / 2.0 / (n_alpha * n_gamma) as f64);
            }
        }
    }
    QuadratureRule { nodes, weights }
}

/// Outcome of the Schur orthogonality self-test.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport {
    /// `max |Q(u_{ij} conj(u_{kl})) - delta / d|` over the checked pairs.
    pub max_deviation: f64,
    /// Number of coefficient functions whose pairwise products were checked.
    pub functions_checked: usize,
    /// Whether every coefficient function of the window was included.
    pub exhaustive: bool,
    /// `max_deviation <= 1e-9`.
    pub passed: bool,
}

/// Quadrature of `u^sigma_{ij} conj(u^tau_{kl})` over all window pairs (or a
/// seeded random subset of coefficient functions for large windows), compared
/// with `delta_{sigma tau} delta_{ik} delta_{jl} / d_sigma`.
pub fn orthogonality_selftest(g: &Group) -> OrthogonalityReport {
    let total = g.window.entries;
    let mut dim_of = Vec::with_capacity(total);
    for irrep in &g.window.irreps {
        dim_of.extend(core::iter::repeat_n(irrep.dim, irrep.dim * irrep.dim));
    }
    let budget = ((SELFTEST_WORK / g.rule.len().max(1) as f64).sqrt() as usize)
        .clamp(SELFTEST_MIN_FUNCTIONS, SELFTEST_MAX_FUNCTIONS);
    let chosen: Vec<usize> = if total <= budget {
        (0..total).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f5c);
        let mut idx = sample(&mut rng, total, budget).into_vec();
        idx.sort_unstable();
        idx
    };
    let k = chosen.len();
    let mut entry_of = Vec::with_capacity(total);
    for (r, irrep) in g.window.irreps.iter().enumerate() {
        for a in 0..irrep.dim {
            for b in 0..irrep.dim {
                entry_of.push((r, a, b));
            }
        }
    }
    let idx: Vec<(usize, usize, usize)> = chosen.iter().map(|&e| entry_of[e]).collect();
    let mut gram = DMatrix::<C64>::zeros(k, k);
    let mut vals = vec![C64::new(0.0, 0.0); k];
    const CHUNK: usize = 256;
    let nodes = &g.rule.nodes;
    let mut start = 0;
    while start < nodes.len() {
        let end = (start + CHUNK).min(nodes.len());
        let mut a = DMatrix::<C64>::zeros(k, end - start);
        for (col, node) in nodes[start..end].iter().enumerate() {
            g.eval_entries(node, &idx, &mut vals);
            let sw = g.rule.weights[start + col].sqrt();
            for (r, v) in vals.iter().enumerate() {
                a[(r, col)] = v * sw;
            }
        }
        gram += &a * a.adjoint();
        start = end;
    }
    let mut max_dev = 0.0_f64;
    for r in 0..k {
        for c in 0..k {
            let expect = if r == c {
                1.0 / dim_of[chosen[r]] as f64
            } else {
                0.0
            };
            max_dev = max_dev.max((gram[(r, c)] - C64::new(expect, 0.0)).norm());
        }
    }
    OrthogonalityReport {
        max_deviation: max_dev,
        functions_checked: k,
        exhaustive: k == total,
        passed: max_dev <= ORTHOGONALITY_TOL,
    }
}
