//! File formats: finite group tables and coefficient files.
//!
//! Complex numbers are written as `[re, im]` pairs. Floats use the shortest
//! representation that parses back to the same bits, so a coefficient file
//! read and written again is byte-identical.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sobolev_core::fourier::{ENorm, FourierCoefficients};
use sobolev_core::group::{FiniteGroupTable, Group, IrrepTable};
use sobolev_core::C64;

use crate::config::Exponent;
use crate::CliError;

type Pair = [f64; 2];

fn to_c(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

fn to_pair(z: &C64) -> Pair {
    [z.re, z.im]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepFile {
    pub label: String,
    pub dim: usize,
    /// `matrices[x][row][col]`.
    pub matrices: Vec<Vec<Vec<Pair>>>,
}

/// A finite group: multiplication table and irreducible unitary representations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTableFile {
    pub order: usize,
    pub mult_table: Vec<Vec<usize>>,
    pub irreps: Vec<IrrepFile>,
}

impl GroupTableFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("group table {}: {e}", path.display())))
    }

    /// The library form; structural checks happen when the group is built.
    pub fn into_table(self) -> Result<FiniteGroupTable, CliError> {
        Ok(FiniteGroupTable {
            order: self.order,
            mult_table: self.mult_table,
            irreps: self
                .irreps
                .into_iter()
                .map(|r| IrrepTable {
                    label: r.label,
                    dim: r.dim,
                    matrices: r
                        .matrices
                        .iter()
                        .map(|m| m.iter().map(|row| row.iter().map(to_c).collect()).collect())
                        .collect(),
                })
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockFile {
    pub label: String,
    /// `entries[i][j][k]`: component `k` of `C_sigma[i][j]`.
    pub entries: Vec<Vec<Vec<Pair>>>,
}

/// Fourier coefficients of one function, blocks in window order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientFile {
    pub group: String,
    pub m: usize,
    #[serde(rename = "p_E")]
    pub p_e: Exponent,
    pub blocks: Vec<BlockFile>,
}

impl CoefficientFile {
    pub fn from_coefficients(group: &str, c: &FourierCoefficients) -> Self {
        let window = c.window();
        let blocks = window
            .irreps()
            .iter()
            .enumerate()
            .map(|(r, irrep)| BlockFile {
                label: irrep.label.to_string(),
                entries: (0..irrep.dim)
                    .map(|i| {
                        (0..irrep.dim)
                            .map(|j| c.entry(r, i, j).iter().map(to_pair).collect())
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        CoefficientFile {
            group: group.to_string(),
            m: c.m(),
            p_e: Exponent(c.e_norm().exponent()),
            blocks,
        }
    }

    /// Coefficients on `g`'s window; every block must be present, in window order.
    pub fn to_coefficients(&self, g: &Group) -> Result<FourierCoefficients, CliError> {
        let bad = |msg: String| CliError::Input(format!("coefficient file: {msg}"));
        let window = g.window();
        if self.blocks.len() != window.len() {
            return Err(bad(format!(
                "{} blocks, but {} has {} irreps in its window (band mismatch?)",
                self.blocks.len(),
                g.name(),
                window.len()
            )));
        }
        let e = ENorm::new(self.p_e.0).map_err(|e| bad(e.to_string()))?;
        let mut c = FourierCoefficients::zeros(window, self.m, e);
        for (r, (irrep, block)) in window.irreps().iter().zip(&self.blocks).enumerate() {
            if block.label != irrep.label.to_string() {
                return Err(bad(format!(
                    "block {r} is labelled `{}`, expected `{}`",
                    block.label, irrep.label
                )));
            }
            let d = irrep.dim;
            if block.entries.len() != d || block.entries.iter().any(|row| row.len() != d) {
                return Err(bad(format!("block `{}` must be {d} x {d}", block.label)));
            }
            for (i, row) in block.entries.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if v.len() != self.m {
                        return Err(bad(format!(
                            "block `{}` entry ({i}, {j}) has {} components, expected m = {}",
                            block.label,
                            v.len(),
                            self.m
                        )));
                    }
                    for (dst, p) in c.entry_mut(r, i, j).iter_mut().zip(v) {
                        *dst = to_c(p);
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("coefficient file {}: {e}", path.display())))
    }
}
