//! Symmetric eigenvalues, quotient matrices of partitioned matrices and
//! circulant spectra.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resistance::square_order;
use crate::DenseMatrix;

/// Default tolerance for grouping eigenvalues into multiplicities.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-7;

/// Relative asymmetry accepted by [`eigenvalues_symmetric`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Real eigenvalues sorted in descending order, with multiplicities grouped
/// at tolerance `tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub multiplicities: Vec<(f64, usize)>,
    pub tol: f64,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let multiplicities = group(&values, tol);
        Spectrum {
            values,
            multiplicities,
            tol,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn min(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// Largest positional difference against another spectrum of equal length.
    pub fn max_positional_diff(&self, other: &Spectrum) -> Option<f64> {
        max_positional_diff(&self.values, &other.values)
    }

    /// Number of eigenvalues within `tol` of `x`.
    pub fn count_near(&self, x: f64, tol: f64) -> usize {
        self.values.iter().filter(|v| (*v - x).abs() <= tol).count()
    }

    /// True if some eigenvalue lies within `tol` of `x`.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.count_near(x, tol) > 0
    }
}

/// Positional max |a_i - b_i| of two descending-sorted sequences.
pub fn max_positional_diff(a: &[f64], b: &[f64]) -> Option<f64> {
    (a.len() == b.len()).then(|| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    })
}

fn group(sorted_desc: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=sorted_desc.len() {
        if i == sorted_desc.len() || (sorted_desc[start] - sorted_desc[i]).abs() > tol {
            let run = &sorted_desc[start..i];
            let mean = run.iter().sum::<f64>() / run.len() as f64;
            out.push((mean, run.len()));
            start = i;
        }
    }
    out
}

/// Largest absolute entry, or 0 for an empty matrix.
pub fn max_abs(m: &DenseMatrix) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Eigenvalues of a real symmetric matrix, descending, grouped at
/// [`DEFAULT_GROUPING_TOL`].
pub fn eigenvalues_symmetric(m: &DenseMatrix) -> Result<Spectrum> {
    eigenvalues_symmetric_with_tol(m, DEFAULT_GROUPING_TOL)
}

pub fn eigenvalues_symmetric_with_tol(m: &DenseMatrix, tol: f64) -> Result<Spectrum> {
    let n = square_order(m)?;
    let scale = max_abs(m).max(1.0);
    let mut asym: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if asym > SYMMETRY_TOL * scale {
        return Err(Error::NotSymmetric {
            max_asymmetry: asym,
        });
    }
    if n == 0 {
        return Ok(Spectrum::from_values(Vec::new(), tol));
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigenvalues();
    Ok(Spectrum::from_values(eig.iter().copied().collect(), tol))
}

/// Vertex partition into disjoint nonempty blocks covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "index {v} out of range for order {n}"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!(
                        "index {v} appears more than once"
                    )));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "index {missing} not covered"
            )));
        }
        Ok(Partition { blocks })
    }

    /// Consecutive blocks of the given sizes: `{0..s0}, {s0..s0+s1}, ...`.
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut start = 0;
        for &s in sizes {
            blocks.push((start..start + s).collect());
            start += s;
        }
        Partition::new(blocks, start)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

/// Quotient matrix of a partitioned matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Quotient {
    pub matrix: DenseMatrix,
    /// Every block has constant row sums.
    pub equitable: bool,
}

/// Quotient of `m` under `partition`: entry `(s, t)` is the average row sum of
/// block `(s, t)`. The partition is equitable when each block has constant
/// row sums to within `1e-9 · max(1, max|m|)`.
pub fn quotient_matrix(m: &DenseMatrix, partition: &Partition) -> Result<Quotient> {
    let n = square_order(m)?;
    if partition.order() != n {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} indices, matrix order is {n}",
            partition.order()
        )));
    }
    let tol = 1e-9 * max_abs(m).max(1.0);
    let blocks = partition.blocks();
    let k = blocks.len();
    let mut q = DMatrix::zeros(k, k);
    let mut equitable = true;
    for (s, rows) in blocks.iter().enumerate() {
        for (t, cols) in blocks.iter().enumerate() {
            let sums: Vec<f64> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m[(i, j)]).sum())
                .collect();
            let mean = sums.iter().sum::<f64>() / sums.len() as f64;
            if sums.iter().any(|x| (x - mean).abs() > tol) {
                equitable = false;
            }
            q[(s, t)] = mean;
        }
    }
    Ok(Quotient {
        matrix: q,
        equitable,
    })
}

/// Circulant matrix whose row `i` is `first_row` cyclically shifted right by `i`.
pub fn circulant(first_row: &[f64]) -> DenseMatrix {
    let n = first_row.len();
    DMatrix::from_fn(n, n, |i, j| first_row[(j + n - i) % n])
}

/// `f(ω^k) = Σ_j c_j ω^{jk}` for `k = 0..n`, `ω = e^{2πi/n}`, as `(re, im)`.
pub fn circulant_symbol(first_row: &[f64]) -> Vec<(f64, f64)> {
    let n = first_row.len();
    (0..n)
        .map(|k| {
            first_row
                .iter()
                .enumerate()
                .fold((0.0, 0.0), |(re, im), (j, &c)| {
                    // reduce the phase index exactly before converting to an angle
                    let angle = 2.0 * PI * ((j * k) % n) as f64 / n as f64;
                    (re + c * angle.cos(), im + c * angle.sin())
                })
        })
        .collect()
}

/// Real eigenvalues of a circulant matrix with the given first row.
///
/// Fails with [`Error::NonRealSpectrum`] when an imaginary part exceeds
/// `1e-9 · max(1, Σ|c_j|)`.
pub fn circulant_eigenvalues(first_row: &[f64]) -> Result<Spectrum> {
    let scale = first_row.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
    let mut values = Vec::with_capacity(first_row.len());
    for (k, (re, im)) in circulant_symbol(first_row).into_iter().enumerate() {
        if im.abs() > 1e-9 * scale {
            return Err(Error::NonRealSpectrum { k, imag: im });
        }
        values.push(re);
    }
    Ok(Spectrum::from_values(values, DEFAULT_GROUPING_TOL))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftSign {
    /// `kI − R`
    Laplacian,
    /// `kI + R`
    Signless,
}

/// Spectrum of `kI ∓ R` from the spectrum of `R`, for a `k`-transmission
/// regular graph.
pub fn shift_spectrum_transmission_regular(
    k: f64,
    r_spectrum: &Spectrum,
    sign: ShiftSign,
) -> Spectrum {
    let values = r_spectrum
        .values
        .iter()
        .map(|g| match sign {
            ShiftSign::Laplacian => k - g,
            ShiftSign::Signless => k + g,
        })
        .collect();
    Spectrum::from_values(values, r_spectrum.tol)
}
