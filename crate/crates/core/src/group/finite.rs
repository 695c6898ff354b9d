//! Finite groups given by a multiplication table and unitary irrep matrices.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // float math is inherent in `core` on recent toolchains
use num_traits::Float;

use super::Label;
use crate::linalg::{max_abs, unitarity_defect, CMatrix};
use crate::{Error, Result, C64};

/// Unitarity tolerance for tabulated irreps.
const UNITARITY_TOL: f64 = 1e-10;
/// Homomorphism tolerance for tabulated irreps.
const HOMOMORPHISM_TOL: f64 = 1e-9;
/// All pairs are checked up to this order; larger groups are spot-checked.
const FULL_HOMOMORPHISM_CHECK: usize = 128;

/// One tabulated irrep: a matrix per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepTable {
    /// Label, unique within the group.
    pub label: String,
    /// Dimension of the representation space.
    pub dim: usize,
    /// `matrices[x]` is the image of element `x`, row-major.
    pub matrices: Vec<Vec<Vec<C64>>>,
}

/// Raw description of a finite group.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroupTable {
    /// Number of elements.
    pub order: usize,
    /// `mult_table[x][y]` is the index of `x y`.
    pub mult_table: Vec<Vec<usize>>,
    /// The irreducible unitary representations.
    pub irreps: Vec<IrrepTable>,
}

#[derive(Clone, Debug)]
pub(crate) struct FiniteGroup {
    pub order: usize,
    pub mult: Vec<usize>,
    pub identity: usize,
    pub labels: Vec<Label>,
    /// `images[r][x]`.
    pub images: Vec<Vec<CMatrix>>,
}

impl FiniteGroup {
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.order + y]
    }

    /// Validates the table and converts it. Errors name the failing irrep and index.
    pub fn from_table(table: &FiniteGroupTable) -> Result<Self> {
        let n = table.order;
        if n == 0 {
            return Err(Error::InvalidTable("order must be at least 1".into()));
        }
        if table.mult_table.len() != n {
            return Err(Error::InvalidTable(format!(
                "mult_table has {} rows, expected {n}",
                table.mult_table.len()
            )));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (x, row) in table.mult_table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "mult_table row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut seen = alloc::vec![false; n];
            for (y, &z) in row.iter().enumerate() {
                if z >= n {
                    return Err(Error::InvalidTable(format!(
                        "mult_table[{x}][{y}] = {z} is not an element index"
                    )));
                }
                if seen[z] {
                    return Err(Error::InvalidTable(format!(
                        "mult_table row {x} repeats element {z}"
                    )));
                }
                seen[z] = true;
                mult.push(z);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e * n + x] == x && mult[x * n + e] == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = mult[mult[x * n + y] * n + z];
                    let r = mult[x * n + mult[y * n + z]];
                    if l != r {
                        return Err(Error::InvalidTable(format!(
                            "multiplication is not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }

        let mut labels: Vec<Label> = Vec::new();
        let mut images = Vec::new();
        for irrep in &table.irreps {
            let bad = |reason: String| Error::InvalidIrrep {
                label: irrep.label.clone(),
                reason,
            };
            if labels.iter().any(|l| l.to_string() == irrep.label) {
                return Err(bad("duplicate label".into()));
            }
            if irrep.dim == 0 {
                return Err(bad("dimension must be positive".into()));
            }
            if irrep.matrices.len() != n {
                return Err(bad(format!(
                    "{} matrices given, expected one per element ({n})",
                    irrep.matrices.len()
                )));
            }
            let d = irrep.dim;
            let mut mats = Vec::with_capacity(n);
            for (x, rows) in irrep.matrices.iter().enumerate() {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(bad(format!("matrix for element {x} is not {d}x{d}")));
                }
                let m = CMatrix::from_fn(d, d, |i, j| rows[i][j]);
                let defect = unitarity_defect(&m);
                if !(defect <= UNITARITY_TOL) {
                    return Err(bad(format!(
                        "matrix for element {x} is not unitary (defect {defect:e})"
                    )));
                }
                mats.push(m);
            }
            let pairs: Vec<(usize, usize)> = if n <= FULL_HOMOMORPHISM_CHECK {
                (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
            } else {
                // Deterministic spread of pairs.
                (0..FULL_HOMOMORPHISM_CHECK * FULL_HOMOMORPHISM_CHECK)
                    .map(|k| ((k * 7919) % n, (k * 104_729 + 13) % n))
                    .collect()
            };
            for (x, y) in pairs {
                let lhs = &mats[mult[x * n + y]];
                let rhs = &mats[x] * &mats[y];
                let dev = max_abs(&(lhs - rhs));
                if !(dev <= HOMOMORPHISM_TOL) {
                    return Err(bad(format!(
                        "not a homomorphism at elements ({x}, {y}) (deviation {dev:e})"
                    )));
                }
            }
            labels.push(Label::Named(irrep.label.clone()));
            images.push(mats);
        }
        let trivial = images.iter().position(|mats| {
            mats[0].nrows() == 1
                && mats
                    .iter()
                    .all(|m| (m[(0, 0)] - C64::new(1.0, 0.0)).norm() <= 1e-12)
        });
        let Some(trivial) = trivial else {
            return Err(Error::InvalidTable(
                "the trivial representation must be among the irreps".into(),
            ));
        };
        // Keep the trivial representation first.
        labels[..=trivial].rotate_right(1);
        images[..=trivial].rotate_right(1);
        Ok(FiniteGroup {
            order: n,
            mult,
            identity,
            labels,
            images,
        })
    }

    pub fn dims(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|m| m[0].nrows())
    }
}

/// Cyclic group `Z_n` with characters `chi_k(x) = exp(2 pi i k x / n)`.
pub(crate) fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidBand(0.0));
    }
    let mult = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x + y) % n))
        .collect();
    let labels = (0..n as i64).map(Label::Character).collect();
    let images = (0..n)
        .map(|k| {
            (0..n)
                .map(|x| CMatrix::from_element(1, 1, root_of_unity(k * x, n)))
                .collect()
        })
        .collect();
    Ok(FiniteGroup {
        order: n,
        mult,
        identity: 0,
        labels,
        images,
    })
}

/// `exp(2 pi i num / n)`, exact at multiples of a quarter turn.
fn root_of_unity(num: usize, n: usize) -> C64 {
    let r = num % n;
    if (4 * r).is_multiple_of(n) {
        return match 4 * r / n {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
}

/// The symmetric group `S_3` as permutations of `{0, 1, 2}` with its trivial,
/// sign and two-dimensional standard representations.
pub(crate) fn symmetric3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let mut mult = Vec::with_capacity(36);
    for x in &perms {
        for y in &perms {
            // (x y)(k) = x(y(k))
            mult.push(index([x[y[0]], x[y[1]], x[y[2]]]));
        }
    }
    // Orthonormal basis of the complement of (1, 1, 1).
    let r2 = 2.0_f64.sqrt();
    let r6 = 6.0_f64.sqrt();
    let basis = [[1.0 / r2, -1.0 / r2, 0.0], [1.0 / r6, 1.0 / r6, -2.0 / r6]];
    let mut trivial = Vec::new();
    let mut sign = Vec::new();
    let mut standard = Vec::new();
    for p in &perms {
        // Permutation matrix P e_k = e_{p(k)}.
        let perm_entry = |i: usize, k: usize| if p[k] == i { 1.0 } else { 0.0 };
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        trivial.push(CMatrix::from_element(1, 1, C64::new(1.0, 0.0)));
        sign.push(CMatrix::from_element(
            1,
            1,
            C64::new(if inversions % 2 == 0 { 1.0 } else { -1.0 }, 0.0),
        ));
        standard.push(CMatrix::from_fn(2, 2, |a, b| {
            let mut acc = 0.0;
            for i in 0..3 {
                for k in 0..3 {
                    acc += basis[a][i] * perm_entry(i, k) * basis[b][k];
                }
            }
            C64::new(acc, 0.0)
        }));
    }
    FiniteGroup {
        order: 6,
        mult,
        identity: 0,
        labels: alloc::vec![
            Label::Named("trivial".into()),
            Label::Named("sign".into()),
            Label::Named("standard".into()),
        ],
        images: alloc::vec![trivial, sign, standard],
    }
}
