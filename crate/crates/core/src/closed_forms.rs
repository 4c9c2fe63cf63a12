//! Analytic resistance Laplacians and spectra for complete graphs, complete
//! bipartite graphs and cycles.
//!
//! Vertex order matches [`crate::graph::generate`]: `K_{p,q}` has parts
//! `{0..p}` and `{p..p+q}`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::FamilySpec;
use crate::spectral::{circulant, circulant_symbol, Spectrum, DEFAULT_GROUPING_TOL};
use crate::DenseMatrix;

fn check(spec: FamilySpec) -> Result<()> {
    spec.validate()
}

/// `R^L(K_n) = 2I − (2/n)J`.
pub fn complete_rl(n: usize) -> Result<DenseMatrix> {
    check(FamilySpec::Complete { n })?;
    let b = 2.0 / n as f64;
    Ok(DMatrix::from_fn(
        n,
        n,
        |i, j| if i == j { 2.0 - b } else { -b },
    ))
}

/// `R^Q(K_n) = (2 − 4/n)I + (2/n)J`.
pub fn complete_rq(n: usize) -> Result<DenseMatrix> {
    check(FamilySpec::Complete { n })?;
    let nf = n as f64;
    let b = 2.0 / nf;
    let a = 2.0 - 4.0 / nf;
    Ok(DMatrix::from_fn(
        n,
        n,
        |i, j| if i == j { a + b } else { b },
    ))
}

/// `{2^(n−1), 0}`.
pub fn complete_rl_spectrum(n: usize) -> Result<Spectrum> {
    check(FamilySpec::Complete { n })?;
    let mut v = vec![2.0; n - 1];
    v.push(0.0);
    Ok(Spectrum::from_values(v, DEFAULT_GROUPING_TOL))
}

/// `{(4 − 4/n)¹, (2 − 4/n)^(n−1)}`.
pub fn complete_rq_spectrum(n: usize) -> Result<Spectrum> {
    check(FamilySpec::Complete { n })?;
    let nf = n as f64;
    let mut v = vec![2.0 - 4.0 / nf; n - 1];
    v.push(4.0 - 4.0 / nf);
    Ok(Spectrum::from_values(v, DEFAULT_GROUPING_TOL))
}

/// Scalar parameters shared by the `K_{p,q}` forms.
#[derive(Debug, Clone, Copy)]
struct Bipartite {
    p: f64,
    q: f64,
}

impl Bipartite {
    fn new(p: usize, q: usize) -> Result<Self> {
        check(FamilySpec::CompleteBipartite { p, q })?;
        Ok(Bipartite {
            p: p as f64,
            q: q as f64,
        })
    }

    /// (p+q−1)/p
    fn sp(&self) -> f64 {
        (self.p + self.q - 1.0) / self.p
    }

    /// (p+q−1)/q
    fn sq(&self) -> f64 {
        (self.p + self.q - 1.0) / self.q
    }

    /// Cross-part resistance (p+q−1)/(pq).
    fn cross(&self) -> f64 {
        (self.p + self.q - 1.0) / (self.p * self.q)
    }

    /// Assembles `[[aI + bJ, cJ], [cJ, dI + eJ]]`.
    fn blocks(&self, first: (f64, f64), second: (f64, f64), cross: f64) -> DenseMatrix {
        let p = self.p as usize;
        let n = p + self.q as usize;
        DMatrix::from_fn(n, n, |i, j| {
            let (a, b) = (i < p, j < p);
            if a != b {
                return cross;
            }
            let (diag, all) = if a { first } else { second };
            if i == j {
                diag + all
            } else {
                all
            }
        })
    }
}

/// `R^L(K_{p,q})` in block form with
/// `P = (2p/q + (p+q−1)/p) I − (2/q) J`, `S = (2q/p + (p+q−1)/q) I − (2/p) J`
/// and off-diagonal blocks `−((p+q−1)/(pq)) J`.
pub fn bipartite_rl(p: usize, q: usize) -> Result<DenseMatrix> {
    let b = Bipartite::new(p, q)?;
    Ok(b.blocks(
        (2.0 * b.p / b.q + b.sp(), -2.0 / b.q),
        (2.0 * b.q / b.p + b.sq(), -2.0 / b.p),
        -b.cross(),
    ))
}

/// `R^Q(K_{p,q})` in block form with
/// `A = (2(p−2)/q + (p+q−1)/p) I + (2/q) J`, `D = (2(q−2)/p + (p+q−1)/q) I + (2/p) J`
/// and off-diagonal blocks `((p+q−1)/(pq)) J`.
pub fn bipartite_rq(p: usize, q: usize) -> Result<DenseMatrix> {
    let b = Bipartite::new(p, q)?;
    Ok(b.blocks(
        (2.0 * (b.p - 2.0) / b.q + b.sp(), 2.0 / b.q),
        (2.0 * (b.q - 2.0) / b.p + b.sq(), 2.0 / b.p),
        b.cross(),
    ))
}

/// `{0, ((p+q)² − p − q)/(pq), (2p/q + (p+q−1)/p)^(p−1), (2q/p + (p+q−1)/q)^(q−1)}`.
pub fn bipartite_rl_spectrum(p: usize, q: usize) -> Result<Spectrum> {
    let b = Bipartite::new(p, q)?;
    let s = b.p + b.q;
    let mut v = vec![0.0, (s * s - s) / (b.p * b.q)];
    v.extend(std::iter::repeat_n(2.0 * b.p / b.q + b.sp(), p - 1));
    v.extend(std::iter::repeat_n(2.0 * b.q / b.p + b.sq(), q - 1));
    Ok(Spectrum::from_values(v, DEFAULT_GROUPING_TOL))
}

/// Row-sum quotient of `R^Q(K_{p,q})` under the bipartition:
/// `[[4(p−1)/q + (p+q−1)/p, (p+q−1)/p], [(p+q−1)/q, 4(q−1)/p + (p+q−1)/q]]`.
pub fn bipartite_rq_quotient(p: usize, q: usize) -> Result<DenseMatrix> {
    let b = Bipartite::new(p, q)?;
    Ok(DMatrix::from_row_slice(
        2,
        2,
        &[
            2.0 * (2.0 * b.p - 2.0) / b.q + b.sp(),
            b.sp(),
            b.sq(),
            2.0 * (2.0 * b.q - 2.0) / b.p + b.sq(),
        ],
    ))
}

/// Eigenvalues `(larger, smaller)` of a real 2×2 matrix with `m01·m10 ≥ 0`.
fn eig2(m: &DenseMatrix) -> (f64, f64) {
    let half_trace = 0.5 * (m[(0, 0)] + m[(1, 1)]);
    let half_gap = 0.5 * (m[(0, 0)] - m[(1, 1)]);
    let disc = (half_gap * half_gap + m[(0, 1)] * m[(1, 0)])
        .max(0.0)
        .sqrt();
    (half_trace + disc, half_trace - disc)
}

/// The two simple eigenvalues of `R^Q(K_{p,q})` carried by the bipartition
/// quotient, `(larger, smaller)`.
pub fn bipartite_rq_quotient_pair(p: usize, q: usize) -> Result<(f64, f64)> {
    Ok(eig2(&bipartite_rq_quotient(p, q)?))
}

/// Spectrum of `R^Q(K_{p,q})`: the quotient pair, plus
/// `2(p−2)/q + (p+q−1)/p` with multiplicity `p−1` and
/// `2(q−2)/p + (p+q−1)/q` with multiplicity `q−1`.
pub fn bipartite_rq_spectrum(p: usize, q: usize) -> Result<Spectrum> {
    let b = Bipartite::new(p, q)?;
    let (hi, lo) = bipartite_rq_quotient_pair(p, q)?;
    let mut v = vec![hi, lo];
    v.extend(std::iter::repeat_n(2.0 * (b.p - 2.0) / b.q + b.sp(), p - 1));
    v.extend(std::iter::repeat_n(2.0 * (b.q - 2.0) / b.p + b.sq(), q - 1));
    Ok(Spectrum::from_values(v, DEFAULT_GROUPING_TOL))
}

/// Known-incorrect closed forms for the simple pair of `R^Q(K_{p,q})`, kept
/// only so `verify` can report how far they are from the true values.
pub mod printed {
    use super::*;

    /// Quotient whose diagonal uses `2(p−2)/q + 2(p−1)/q + (p+q−1)/p` instead
    /// of the true block row sum.
    pub fn rq_quotient(p: usize, q: usize) -> Result<DenseMatrix> {
        let b = Bipartite::new(p, q)?;
        Ok(DMatrix::from_row_slice(
            2,
            2,
            &[
                2.0 * (b.p - 2.0) / b.q + 2.0 * (b.p - 1.0) / b.q + b.sp(),
                b.sp(),
                b.sq(),
                2.0 * (b.q - 2.0) / b.p + 2.0 * (b.q - 1.0) / b.p + b.sq(),
            ],
        ))
    }

    pub fn rq_quotient_pair(p: usize, q: usize) -> Result<(f64, f64)> {
        Ok(eig2(&rq_quotient(p, q)?))
    }

    /// `(5p² + (2p−5)q + 5q² ± √(9p² − 14pq + 9q²(p+q−1)) − 5p) / (2pq)`,
    /// radical read literally as typeset. `None` components mean a negative
    /// radicand.
    pub fn rq_pair_expression(p: usize, q: usize) -> Result<Option<(f64, f64)>> {
        let Bipartite { p, q } = Bipartite::new(p, q)?;
        let base = 5.0 * p * p + (2.0 * p - 5.0) * q + 5.0 * q * q - 5.0 * p;
        let radicand = 9.0 * p * p - 14.0 * p * q + 9.0 * q * q * (p + q - 1.0);
        if radicand < 0.0 {
            return Ok(None);
        }
        let r = radicand.sqrt();
        let den = 2.0 * p * q;
        Ok(Some(((base + r) / den, (base - r) / den)))
    }
}

/// First row of `R(C_n)`: `k(n−k)/n` for `k = 0..n`.
pub fn cycle_resistance_row(n: usize) -> Result<Vec<f64>> {
    check(FamilySpec::Cycle { n })?;
    let nf = n as f64;
    Ok((0..n).map(|k| (k * (n - k)) as f64 / nf).collect())
}

/// `h = (n² − 1)/6`, the common resistance transmission of `C_n`.
pub fn cycle_transmission(n: usize) -> f64 {
    let nf = n as f64;
    (nf * nf - 1.0) / 6.0
}

/// First row of `R^L(C_n)`: `(h, −(n−1)/n, −2(n−2)/n, …)`.
pub fn cycle_rl_row(n: usize) -> Result<Vec<f64>> {
    let mut row: Vec<f64> = cycle_resistance_row(n)?.into_iter().map(|x| -x).collect();
    row[0] = cycle_transmission(n);
    Ok(row)
}

/// First row of `R^Q(C_n)`: `(h, (n−1)/n, 2(n−2)/n, …)`.
pub fn cycle_rq_row(n: usize) -> Result<Vec<f64>> {
    let mut row = cycle_resistance_row(n)?;
    row[0] = cycle_transmission(n);
    Ok(row)
}

pub fn cycle_rl(n: usize) -> Result<DenseMatrix> {
    Ok(circulant(&cycle_rl_row(n)?))
}

pub fn cycle_rq(n: usize) -> Result<DenseMatrix> {
    Ok(circulant(&cycle_rq_row(n)?))
}

/// `(R^L spectrum, R^Q spectrum)` of `C_n` as `h ∓ g(ω^k)` where `g` is the
/// polynomial with the resistance row of `C_n` as coefficients.
pub fn cycle_spectra(n: usize) -> Result<(Spectrum, Spectrum)> {
    let h = cycle_transmission(n);
    let g: Vec<f64> = circulant_symbol(&cycle_resistance_row(n)?)
        .into_iter()
        .map(|(re, _)| re)
        .collect();
    let rl = g.iter().map(|x| h - x).collect();
    let rq = g.iter().map(|x| h + x).collect();
    Ok((
        Spectrum::from_values(rl, DEFAULT_GROUPING_TOL),
        Spectrum::from_values(rq, DEFAULT_GROUPING_TOL),
    ))
}

/// Analytic matrices and spectra for one family instance.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedForm {
    pub family: FamilySpec,
    #[serde(serialize_with = "crate::format::serialize_matrix")]
    pub rl_matrix: DenseMatrix,
    #[serde(serialize_with = "crate::format::serialize_matrix")]
    pub rq_matrix: DenseMatrix,
    pub rl_spectrum: Spectrum,
    pub rq_spectrum: Spectrum,
}

impl ClosedForm {
    pub fn for_family(family: FamilySpec) -> Result<Self> {
        family.validate()?;
        let (rl_matrix, rq_matrix, rl_spectrum, rq_spectrum) = match family {
            FamilySpec::Complete { n } => (
                complete_rl(n)?,
                complete_rq(n)?,
                complete_rl_spectrum(n)?,
                complete_rq_spectrum(n)?,
            ),
            FamilySpec::CompleteBipartite { p, q } => (
                bipartite_rl(p, q)?,
                bipartite_rq(p, q)?,
                bipartite_rl_spectrum(p, q)?,
                bipartite_rq_spectrum(p, q)?,
            ),
            FamilySpec::Cycle { n } => {
                let (l, s) = cycle_spectra(n)?;
                (cycle_rl(n)?, cycle_rq(n)?, l, s)
            }
            FamilySpec::Path { .. } => return Err(Error::NoClosedForm(family.to_string())),
        };
        Ok(ClosedForm {
            family,
            rl_matrix,
            rq_matrix,
            rl_spectrum,
            rq_spectrum,
        })
    }
}
