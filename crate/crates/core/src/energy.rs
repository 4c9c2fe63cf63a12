//! Resistance Laplacian energy and its bounds.
//!
//! With `U_j` the resistance transmissions and `γᵢᴸ` the eigenvalues of `R^L`,
//! `ηᵢ = γᵢᴸ − mean(U)` and `LE_R = Σ|ηᵢ|`. The identities `Σηᵢ = 0` and
//! `Σηᵢ² = 2F` hold with
//!
//! ```text
//! f = Σ_{i<j} r(i,j)²        F = f + ½ Σᵢ (Uᵢ − mean(U))²
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::resistance::ResistanceBundle;
use crate::spectral::{eigenvalues_symmetric, Spectrum};
use crate::DenseMatrix;

/// Absolute violation tolerated before a bound is reported unsatisfied.
pub const DEFAULT_BOUND_TOL: f64 = 1e-9;

/// Radicands in `[-RADICAND_CLAMP, 0)` are rounding noise and clamp to 0.
pub const RADICAND_CLAMP: f64 = 1e-9;

/// `ηᵢ = γᵢᴸ − mean(U)` in the spectrum's (descending) order.
pub fn eta_values(rl_spectrum: &Spectrum, rtr: &[f64]) -> Result<Vec<f64>> {
    if rl_spectrum.len() != rtr.len() {
        return Err(Error::DimensionMismatch {
            expected: rl_spectrum.len(),
            found: rtr.len(),
        });
    }
    let mean = mean(rtr);
    Ok(rl_spectrum.values.iter().map(|g| g - mean).collect())
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// `(f, F)` over unordered vertex pairs.
pub fn squared_resistance_sums(r: &DenseMatrix, rtr: &[f64]) -> (f64, f64) {
    let n = r.nrows();
    let mut f = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            f += r[(i, j)] * r[(i, j)];
        }
    }
    let m = mean(rtr);
    let spread: f64 = rtr.iter().map(|u| (u - m) * (u - m)).sum();
    (f, f + 0.5 * spread)
}

/// Sum of absolute eigenvalues of the resistance matrix.
pub fn resistance_energy(g: &Graph) -> Result<f64> {
    let bundle = ResistanceBundle::compute(g)?;
    Ok(abs_sum(&eigenvalues_symmetric(&bundle.r)?))
}

fn abs_sum(s: &Spectrum) -> f64 {
    s.values.iter().map(|x| x.abs()).sum()
}

/// One evaluated bound. `slack` is positive when the bound holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub value: f64,
    pub slack: f64,
    pub satisfied: bool,
    /// Radicand was slightly negative and clamped to zero.
    pub clamped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    /// `2√F ≤ LE_R`
    #[serde(rename = "lower_2sqrtF")]
    pub lower_2sqrt_f: BoundValue,
    /// `LE_R ≤ √(2nF)`
    #[serde(rename = "upper_sqrt2nF")]
    pub upper_sqrt_2nf: BoundValue,
    /// `LE_R ≤ mean(U) + √((n−1)(2F − mean(U)²))`
    #[serde(rename = "upper_meanU")]
    pub upper_mean_u: BoundValue,
    /// `LE_R ≤ η₁ + √((n−1)(2F − η₁²))`
    pub upper_eta1: BoundValue,
}

impl Bounds {
    pub fn all_satisfied(&self) -> bool {
        self.iter().all(|(_, b)| b.satisfied)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, BoundValue)> {
        [
            ("lower_2sqrtF", self.lower_2sqrt_f),
            ("upper_sqrt2nF", self.upper_sqrt_2nf),
            ("upper_meanU", self.upper_mean_u),
            ("upper_eta1", self.upper_eta1),
        ]
        .into_iter()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    /// Family tag when known, otherwise the graph's edge hash.
    pub graph: String,
    pub n: usize,
    pub transmissions: Vec<f64>,
    pub mean_transmission: f64,
    pub eta: Vec<f64>,
    pub f: f64,
    #[serde(rename = "F")]
    pub big_f: f64,
    pub le_r: f64,
    pub e_r: f64,
    pub bounds: Bounds,
}

impl EnergyReport {
    /// Builds the report from precomputed pieces of one graph.
    pub fn from_parts(
        graph: String,
        bundle: &ResistanceBundle,
        rl_spectrum: &Spectrum,
        r_spectrum: &Spectrum,
    ) -> Result<Self> {
        let eta = eta_values(rl_spectrum, &bundle.rtr)?;
        let (f, big_f) = squared_resistance_sums(&bundle.r, &bundle.rtr);
        let le_r = eta.iter().map(|x| x.abs()).sum();
        let mean_transmission = mean(&bundle.rtr);
        let eta1 = eta.first().copied().unwrap_or(0.0);
        let bounds = evaluate_bounds(
            bundle.order(),
            big_f,
            mean_transmission,
            eta1,
            le_r,
            DEFAULT_BOUND_TOL,
        )?;
        Ok(EnergyReport {
            graph,
            n: bundle.order(),
            transmissions: bundle.rtr.clone(),
            mean_transmission,
            eta,
            f,
            big_f,
            le_r,
            e_r: abs_sum(r_spectrum),
            bounds,
        })
    }

    /// Sum of η, which vanishes for any connected graph.
    pub fn eta_sum(&self) -> f64 {
        self.eta.iter().sum()
    }

    pub fn eta_square_sum(&self) -> f64 {
        self.eta.iter().map(|x| x * x).sum()
    }
}

/// Full energy report of a connected graph, labelled with its edge hash.
pub fn resistance_laplacian_energy(g: &Graph) -> Result<EnergyReport> {
    resistance_laplacian_energy_labelled(g, g.edge_hash())
}

pub fn resistance_laplacian_energy_labelled(g: &Graph, label: String) -> Result<EnergyReport> {
    let bundle = ResistanceBundle::compute(g)?;
    let rl = eigenvalues_symmetric(&bundle.rl)?;
    let r = eigenvalues_symmetric(&bundle.r)?;
    EnergyReport::from_parts(label, &bundle, &rl, &r)
}

/// Re-evaluates the four bounds of a report at tolerance `tol`.
pub fn check_bounds(report: &EnergyReport, tol: f64) -> Result<Bounds> {
    let eta1 = report.eta.first().copied().unwrap_or(0.0);
    evaluate_bounds(
        report.n,
        report.big_f,
        report.mean_transmission,
        eta1,
        report.le_r,
        tol,
    )
}

fn evaluate_bounds(
    n: usize,
    big_f: f64,
    mean_u: f64,
    eta1: f64,
    le_r: f64,
    tol: f64,
) -> Result<Bounds> {
    let nf = n as f64;
    let (sqrt_f, c0) = checked_sqrt("lower_2sqrtF", big_f)?;
    let (sqrt_2nf, c1) = checked_sqrt("upper_sqrt2nF", 2.0 * nf * big_f)?;
    let (rad_mean, c2) = checked_sqrt("upper_meanU", (nf - 1.0) * (2.0 * big_f - mean_u * mean_u))?;
    let (rad_eta, c3) = checked_sqrt("upper_eta1", (nf - 1.0) * (2.0 * big_f - eta1 * eta1))?;

    let lower = |value: f64, clamped| bound(value, le_r - value, tol, clamped);
    let upper = |value: f64, clamped| bound(value, value - le_r, tol, clamped);
    Ok(Bounds {
        lower_2sqrt_f: lower(2.0 * sqrt_f, c0),
        upper_sqrt_2nf: upper(sqrt_2nf, c1),
        upper_mean_u: upper(mean_u + rad_mean, c2),
        upper_eta1: upper(eta1 + rad_eta, c3),
    })
}

fn bound(value: f64, slack: f64, tol: f64, clamped: bool) -> BoundValue {
    BoundValue {
        value,
        slack,
        satisfied: slack >= -tol,
        clamped,
    }
}

fn checked_sqrt(bound: &'static str, radicand: f64) -> Result<(f64, bool)> {
    if radicand >= 0.0 {
        Ok((radicand.sqrt(), false))
    } else if radicand >= -RADICAND_CLAMP {
        Ok((0.0, true))
    } else {
        Err(Error::NegativeRadicand {
            bound,
            value: radicand,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::spectral::DEFAULT_GROUPING_TOL;
    use approx::assert_abs_diff_eq;

    fn family(spec: FamilySpec) -> Graph {
        generate(spec).unwrap()
    }

    #[test]
    fn eta_examples() {
        let k4 = Spectrum::from_values(vec![2.0, 2.0, 2.0, 0.0], DEFAULT_GROUPING_TOL);
        let eta = eta_values(&k4, &[1.5; 4]).unwrap();
        assert_eq!(eta, vec![0.5, 0.5, 0.5, -1.5]);

        let k2 = Spectrum::from_values(vec![2.0, 0.0], DEFAULT_GROUPING_TOL);
        assert_eq!(eta_values(&k2, &[1.0, 1.0]).unwrap(), vec![1.0, -1.0]);

        let c4 = Spectrum::from_values(vec![3.5, 3.5, 3.0, 0.0], DEFAULT_GROUPING_TOL);
        assert_eq!(
            eta_values(&c4, &[2.5; 4]).unwrap(),
            vec![1.0, 1.0, 0.5, -2.5]
        );

        assert_eq!(
            eta_values(&c4, &[2.5; 3]),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn square_sums() {
        for n in 2..8 {
            let b = ResistanceBundle::compute(&family(FamilySpec::Complete { n })).unwrap();
            let (f, big_f) = squared_resistance_sums(&b.r, &b.rtr);
            let expected = 2.0 * (n as f64 - 1.0) / n as f64;
            assert_abs_diff_eq!(f, expected, epsilon = 1e-12);
            assert_abs_diff_eq!(big_f, expected, epsilon = 1e-12);
        }
        let p3 = ResistanceBundle::compute(&family(FamilySpec::Path { n: 3 })).unwrap();
        let (f, big_f) = squared_resistance_sums(&p3.r, &p3.rtr);
        assert_abs_diff_eq!(f, 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(big_f, 6.0 + 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn unordered_pair_sum_matches_trace_identity() {
        // trace((R^L)²) = Σ U² + 2f only with the unordered-pair f
        let g = family(FamilySpec::Path { n: 5 });
        let b = ResistanceBundle::compute(&g).unwrap();
        let (f, _) = squared_resistance_sums(&b.r, &b.rtr);
        let lhs = (&b.rl * &b.rl).trace();
        let rhs: f64 = b.rtr.iter().map(|u| u * u).sum::<f64>() + 2.0 * f;
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-9);
    }

    #[test]
    fn complete_graph_energy() {
        for n in 2..=12 {
            let rep = resistance_laplacian_energy(&family(FamilySpec::Complete { n })).unwrap();
            assert_abs_diff_eq!(rep.le_r, 4.0 * (1.0 - 1.0 / n as f64), epsilon = 1e-9);
        }
        let k4 = resistance_laplacian_energy(&family(FamilySpec::Complete { n: 4 })).unwrap();
        assert_abs_diff_eq!(k4.le_r, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            k4.bounds.lower_2sqrt_f.value,
            2.0 * 1.5f64.sqrt(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            k4.bounds.upper_sqrt_2nf.value,
            12f64.sqrt(),
            epsilon = 1e-12
        );
        assert!(k4.bounds.all_satisfied());
    }

    #[test]
    fn k2_bounds_are_tight() {
        let rep = resistance_laplacian_energy(&family(FamilySpec::Complete { n: 2 })).unwrap();
        assert_abs_diff_eq!(rep.le_r, 2.0, epsilon = 1e-12);
        for (name, b) in rep.bounds.iter() {
            assert!(b.satisfied, "{name}");
            assert_abs_diff_eq!(b.value, 2.0, epsilon = 1e-12);
            assert!(b.slack.abs() <= 1e-12, "{name}: {}", b.slack);
        }
    }

    #[test]
    fn cycle_4_energy() {
        let g = family(FamilySpec::Cycle { n: 4 });
        let rep = resistance_laplacian_energy(&g).unwrap();
        assert_abs_diff_eq!(rep.le_r, 5.0, epsilon = 1e-12);
        assert!(rep.bounds.all_satisfied());
        assert_abs_diff_eq!(resistance_energy(&g).unwrap(), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn resistance_energy_examples() {
        let k3 = resistance_energy(&family(FamilySpec::Complete { n: 3 })).unwrap();
        assert_abs_diff_eq!(k3, 8.0 / 3.0, epsilon = 1e-12);
        let k2 = resistance_energy(&family(FamilySpec::Complete { n: 2 })).unwrap();
        assert_abs_diff_eq!(k2, 2.0, epsilon = 1e-12);
        assert_eq!(
            resistance_energy(&Graph::empty(3)),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn single_vertex_report_is_zero() {
        let rep = resistance_laplacian_energy(&Graph::empty(1)).unwrap();
        assert_eq!(rep.le_r, 0.0);
        assert_eq!(rep.e_r, 0.0);
        assert!(rep.bounds.all_satisfied());
    }

    #[test]
    fn radicand_clamping() {
        assert_eq!(checked_sqrt("x", -1e-12).unwrap(), (0.0, true));
        assert_eq!(checked_sqrt("x", 4.0).unwrap(), (2.0, false));
        assert!(matches!(
            checked_sqrt("x", -1e-6),
            Err(Error::NegativeRadicand { bound: "x", .. })
        ));
    }

    #[test]
    fn report_serializes_expected_keys() {
        let rep = resistance_laplacian_energy(&family(FamilySpec::Cycle { n: 4 })).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        for key in [
            "graph",
            "n",
            "mean_transmission",
            "eta",
            "f",
            "F",
            "le_r",
            "e_r",
            "bounds",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        for key in ["lower_2sqrtF", "upper_sqrt2nF", "upper_meanU", "upper_eta1"] {
            assert!(v["bounds"][key]["satisfied"].as_bool().unwrap(), "{key}");
        }
    }
}
