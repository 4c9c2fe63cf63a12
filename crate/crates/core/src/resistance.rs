//! Laplacian pseudoinverse, resistance distances, resistance transmissions and
//! the resistance (signless) Laplacian.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{ensure_connected, laplacian, Graph};
use crate::DenseMatrix;

/// Default absolute tolerance for transmission regularity.
pub const DEFAULT_REGULARITY_TOL: f64 = 1e-9;

/// Moore–Penrose pseudoinverse of the Laplacian of a connected graph.
///
/// Uses `L† = (L + J/n)⁻¹ − J/n`. `L + J/n` is positive definite exactly when
/// the graph is connected, so a failed Cholesky factorization is reported as
/// [`Error::Disconnected`].
pub fn laplacian_pseudoinverse(l: &DenseMatrix) -> Result<DenseMatrix> {
    let n = square_order(l)?;
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let shift = 1.0 / n as f64;
    let shifted = l.map(|x| x + shift);
    let chol = shifted.cholesky().ok_or(Error::Disconnected)?;
    let mut inv = chol.inverse();
    inv.apply(|x| *x -= shift);
    Ok(symmetrize(inv))
}

/// Pseudoinverse through the eigendecomposition, dropping eigenvalues below
/// `1e-10 · λ_max`. Slower than [`laplacian_pseudoinverse`]; kept as an
/// independent cross-check.
pub fn laplacian_pseudoinverse_spectral(l: &DenseMatrix) -> Result<DenseMatrix> {
    let n = square_order(l)?;
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let eig = l.clone().symmetric_eigen();
    let lmax = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let cutoff = 1e-10 * lmax.max(1.0);
    let mut out = DMatrix::zeros(n, n);
    let mut null_dim = 0;
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() <= cutoff {
            null_dim += 1;
            continue;
        }
        let v = eig.eigenvectors.column(k);
        out += (v * v.transpose()) / lambda;
    }
    if null_dim > 1 {
        return Err(Error::Disconnected);
    }
    Ok(symmetrize(out))
}

/// Resistance distance matrix: `r(i,j) = L†ᵢᵢ + L†ⱼⱼ − 2L†ᵢⱼ`, zero diagonal.
pub fn resistance_matrix(g: &Graph) -> Result<DenseMatrix> {
    ensure_connected(g)?;
    let pinv = laplacian_pseudoinverse(&laplacian(g))?;
    Ok(resistance_from_pseudoinverse(&pinv))
}

pub fn resistance_from_pseudoinverse(pinv: &DenseMatrix) -> DenseMatrix {
    let n = pinv.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            (pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)]).max(0.0)
        }
    })
}

/// Column sums of a resistance matrix.
pub fn resistance_transmissions(r: &DenseMatrix) -> Vec<f64> {
    r.column_iter().map(|c| c.sum()).collect()
}

/// `Diag(RTr) − R`.
pub fn resistance_laplacian(g: &Graph) -> Result<DenseMatrix> {
    Ok(ResistanceBundle::compute(g)?.rl)
}

/// `Diag(RTr) + R`.
pub fn resistance_signless_laplacian(g: &Graph) -> Result<DenseMatrix> {
    Ok(ResistanceBundle::compute(g)?.rq)
}

/// `Some(k)` when every transmission is within `tol` of the first one.
pub fn is_transmission_regular(rtr: &[f64], tol: f64) -> Option<f64> {
    let first = *rtr.first()?;
    rtr.iter()
        .all(|&t| (t - first).abs() <= tol)
        .then_some(first)
}

/// Resistance matrix, transmissions and both resistance Laplacians of one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceBundle {
    pub r: DenseMatrix,
    pub rtr: Vec<f64>,
    pub rl: DenseMatrix,
    pub rq: DenseMatrix,
}

impl ResistanceBundle {
    pub fn compute(g: &Graph) -> Result<Self> {
        Ok(Self::from_resistance(resistance_matrix(g)?))
    }

    pub fn from_resistance(r: DenseMatrix) -> Self {
        let rtr = resistance_transmissions(&r);
        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&rtr));
        let rl = &diag - &r;
        let rq = if cfg!(feature = "broken-rq-sign") {
            &diag - &r
        } else {
            &diag + &r
        };
        ResistanceBundle { r, rtr, rl, rq }
    }

    pub fn order(&self) -> usize {
        self.rtr.len()
    }
}

pub(crate) fn square_order(m: &DenseMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

fn symmetrize(m: DenseMatrix) -> DenseMatrix {
    let t = m.transpose();
    (m + t) * 0.5
}
