//! Numeric verification suite behind `resq verify`.
//!
//! Every check reduces each case to a non-negative error and passes when the
//! worst error is within the check's tolerance. Checks over random graphs fan
//! out across threads; results are merged in corpus order so output is
//! deterministic for a fixed seed.

use std::time::Instant;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{self, ClosedForm};
use crate::energy::EnergyReport;
use crate::error::Result;
use crate::graph::{
    classical_distance_matrix, generate, laplacian, random_connected_graph, random_tree,
    FamilySpec, Graph,
};
use crate::resistance::{
    is_transmission_regular, laplacian_pseudoinverse, laplacian_pseudoinverse_spectral,
    ResistanceBundle,
};
use crate::spectral::{
    circulant_eigenvalues, eigenvalues_symmetric, max_abs, quotient_matrix,
    shift_spectrum_transmission_regular, Partition, ShiftSign, Spectrum,
};
use crate::DenseMatrix;

/// Default comparison tolerance; `RESQ_TOL` overrides it.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Positional spectrum agreement.
pub const SPECTRUM_TOL: f64 = 1e-8;
/// `|Ση| / n`.
pub const ETA_SUM_TOL: f64 = 1e-8;
/// Relative error of `Ση² = 2F`.
pub const ETA_SQUARE_TOL: f64 = 1e-7;
/// Quotient eigenvalue containment.
pub const QUOTIENT_TOL: f64 = 1e-7;
/// `|LE_R − E_R|` on transmission-regular graphs.
pub const REGULAR_ENERGY_TOL: f64 = 1e-8;
/// Largest part size in the `R^Q(K_{p,q})` discrepancy report.
pub const RQ_REPORT_MAX_PART: usize = 8;

/// Reads `RESQ_TOL`, falling back to [`DEFAULT_TOL`] when unset or invalid.
pub fn tolerance_from_env() -> f64 {
    parse_tolerance(std::env::var("RESQ_TOL").ok().as_deref())
}

fn parse_tolerance(raw: Option<&str>) -> f64 {
    raw.and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t >= 0.0)
        .unwrap_or(DEFAULT_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    /// Informational record; never affects the exit code.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutcome {
    pub check: String,
    pub status: Status,
    /// Worst error over all cases.
    pub measured: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Edge list of the worst violating graph, for failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl VerifyOutcome {
    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Families,
    Random,
    All,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub scope: Scope,
    pub seed: u64,
    pub max_n: usize,
    pub tol: f64,
    pub random_graphs: usize,
    pub random_trees: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            scope: Scope::All,
            seed: 1,
            max_n: 12,
            tol: DEFAULT_TOL,
            random_graphs: 250,
            random_trees: 100,
        }
    }
}

/// Source of the numeric matrices under test. Swappable so fault injection
/// can be exercised without rebuilding.
#[derive(Clone, Copy)]
pub struct Pipeline {
    pub bundle: fn(&Graph) -> Result<ResistanceBundle>,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            bundle: ResistanceBundle::compute,
        }
    }
}

/// One measured case of a named check.
#[derive(Debug, Clone)]
struct Case {
    check: &'static str,
    error: f64,
    tol: f64,
    elapsed_ms: u64,
    graph: Option<String>,
}

impl Case {
    fn new(check: &'static str, error: f64, tol: f64) -> Self {
        Case {
            check,
            error,
            tol,
            elapsed_ms: 0,
            graph: None,
        }
    }
}

/// Collects cases into per-check outcomes, keeping first-seen check order.
#[derive(Default)]
struct Tally {
    order: Vec<&'static str>,
    outcomes: Vec<VerifyOutcome>,
}

impl Tally {
    fn add(&mut self, case: Case, graph: &Graph) {
        let idx = match self.order.iter().position(|c| *c == case.check) {
            Some(i) => i,
            None => {
                self.order.push(case.check);
                self.outcomes.push(VerifyOutcome {
                    check: case.check.to_string(),
                    status: Status::Pass,
                    measured: 0.0,
                    tolerance: case.tol,
                    cases: 0,
                    elapsed_ms: 0,
                    detail: None,
                    graph: None,
                    data: None,
                });
                self.order.len() - 1
            }
        };
        let out = &mut self.outcomes[idx];
        out.cases += 1;
        out.elapsed_ms += case.elapsed_ms;
        // NaN counts as a failure
        let failed = case.error.is_nan() || case.error > case.tol;
        if failed {
            if out.status != Status::Fail || case.error > out.measured || case.error.is_nan() {
                out.status = Status::Fail;
                out.measured = case.error;
                out.graph = Some(case.graph.unwrap_or_else(|| graph.to_edge_list()));
            }
        } else if out.status != Status::Fail && case.error > out.measured {
            out.measured = case.error;
        }
    }

    fn add_all(&mut self, cases: Vec<Case>, graph: &Graph) {
        for c in cases {
            self.add(c, graph);
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis() as u64)
}

fn max_abs_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn spectrum_diff(a: &Spectrum, b: &Spectrum) -> f64 {
    a.max_positional_diff(b).unwrap_or(f64::INFINITY)
}

fn or_inf<T>(r: Result<T>, f: impl FnOnce(T) -> f64) -> f64 {
    r.map(f).unwrap_or(f64::INFINITY)
}

/// Runs the suite for `config.scope`.
pub fn run(config: &VerifyConfig, pipeline: Pipeline) -> Vec<VerifyOutcome> {
    let mut out = Vec::new();
    if matches!(config.scope, Scope::Families | Scope::All) {
        out.extend(run_families(config, pipeline));
    }
    if matches!(config.scope, Scope::Random | Scope::All) {
        out.extend(run_random(config, pipeline));
    }
    out
}

/// Family instances exercised by the families scope.
pub fn family_instances(max_n: usize) -> Vec<FamilySpec> {
    let mut v: Vec<FamilySpec> = (2..=max_n).map(|n| FamilySpec::Complete { n }).collect();
    for p in 1..max_n {
        for q in 1..=(max_n - p) {
            v.push(FamilySpec::CompleteBipartite { p, q });
        }
    }
    v.extend((3..=max_n).map(|n| FamilySpec::Cycle { n }));
    v
}

fn run_families(config: &VerifyConfig, pipeline: Pipeline) -> Vec<VerifyOutcome> {
    let tol = config.tol;
    let instances = family_instances(config.max_n);
    let results: Vec<(Graph, Vec<Case>)> = instances
        .par_iter()
        .map(|&spec| {
            let g = generate(spec).expect("valid family");
            let cases = family_cases(spec, &g, pipeline, tol);
            (g, cases)
        })
        .collect();
    let mut tally = Tally::default();
    for (g, cases) in results {
        tally.add_all(cases, &g);
    }

    // (2,2) vs C_4 under relabeling 0,2,1,3
    if config.max_n >= 4 {
        let perm = [0, 2, 1, 3];
        let err = match (closed_forms::cycle_rl(4), closed_forms::bipartite_rl(2, 2)) {
            (Ok(c), Ok(b)) => {
                let relabeled = DMatrix::from_fn(4, 4, |i, j| b[(perm[i], perm[j])]);
                max_abs_diff(&c, &relabeled)
            }
            _ => f64::INFINITY,
        };
        let g = generate(FamilySpec::Cycle { n: 4 }).expect("C4");
        tally.add(
            Case::new("closed_form.bipartite_cycle_relabel", err, tol),
            &g,
        );
    }

    let mut outcomes = tally.outcomes;
    outcomes.extend(rq_bipartite_report(RQ_REPORT_MAX_PART, pipeline));
    outcomes
}

fn family_cases(spec: FamilySpec, g: &Graph, pipeline: Pipeline, tol: f64) -> Vec<Case> {
    let mut cases = Vec::new();
    let (bundle, t_bundle) = timed(|| (pipeline.bundle)(g));
    let bundle = match bundle {
        Ok(b) => b,
        Err(_) => {
            cases.push(Case::new("pipeline.compute", f64::INFINITY, 0.0));
            return cases;
        }
    };
    let cf = ClosedForm::for_family(spec).expect("closed form exists for generated families");

    let (e, t) = timed(|| max_abs_diff(&cf.rl_matrix, &bundle.rl));
    cases.push(Case {
        elapsed_ms: t + t_bundle,
        ..Case::new("closed_form.rl_matrix", e, tol)
    });
    let (e, t) = timed(|| max_abs_diff(&cf.rq_matrix, &bundle.rq));
    cases.push(Case {
        elapsed_ms: t,
        ..Case::new("closed_form.rq_matrix", e, tol)
    });

    let (spectra, t) = timed(|| {
        (
            eigenvalues_symmetric(&bundle.rl),
            eigenvalues_symmetric(&bundle.rq),
            eigenvalues_symmetric(&bundle.r),
        )
    });
    let (rl_s, rq_s, r_s) = match spectra {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => {
            cases.push(Case::new("spectral.eigensolve", f64::INFINITY, 0.0));
            return cases;
        }
    };
    cases.push(Case {
        elapsed_ms: t,
        ..Case::new(
            "closed_form.rl_spectrum",
            spectrum_diff(&cf.rl_spectrum, &rl_s),
            SPECTRUM_TOL,
        )
    });
    cases.push(Case::new(
        "closed_form.rq_spectrum",
        spectrum_diff(&cf.rq_spectrum, &rq_s),
        SPECTRUM_TOL,
    ));

    let (report, t) = timed(|| EnergyReport::from_parts(spec.to_string(), &bundle, &rl_s, &r_s));
    let report = match report {
        Ok(r) => r,
        Err(_) => {
            cases.push(Case::new("energy.report", f64::INFINITY, 0.0));
            return cases;
        }
    };

    match spec {
        FamilySpec::Complete { n } => {
            let expected = 4.0 * (1.0 - 1.0 / n as f64);
            cases.push(Case {
                elapsed_ms: t,
                ..Case::new(
                    "energy.complete_formula",
                    (report.le_r - expected).abs(),
                    tol,
                )
            });
        }
        FamilySpec::Cycle { n } => {
            let zeros = cf.rl_spectrum.count_near(0.0, 1e-9);
            cases.push(Case::new(
                "closed_form.cycle_single_zero",
                if zeros == 1 { 0.0 } else { f64::INFINITY },
                0.0,
            ));
            if n <= 64 {
                let row_l: Vec<f64> = bundle.rl.row(0).iter().copied().collect();
                let row_q: Vec<f64> = bundle.rq.row(0).iter().copied().collect();
                let e = or_inf(circulant_eigenvalues(&row_l), |s| spectrum_diff(&s, &rl_s)).max(
                    or_inf(circulant_eigenvalues(&row_q), |s| spectrum_diff(&s, &rq_s)),
                );
                cases.push(Case::new("spectral.circulant_agreement", e, SPECTRUM_TOL));
            }
        }
        FamilySpec::CompleteBipartite { p, q } => {
            if p <= 8 && q <= 8 {
                cases.push(Case::new(
                    "spectral.quotient_containment",
                    quotient_containment_error(g, &bundle, p, q),
                    QUOTIENT_TOL,
                ));
            }
            let (hi, lo) =
                closed_forms::bipartite_rq_quotient_pair(p, q).unwrap_or((f64::NAN, f64::NAN));
            let e = nearest(&rq_s, hi).max(nearest(&rq_s, lo));
            cases.push(Case::new(
                "closed_form.rq_bipartite_quotient_pair",
                e,
                SPECTRUM_TOL,
            ));
        }
        FamilySpec::Path { .. } => {}
    }

    if let Some(k) = is_transmission_regular(&bundle.rtr, 1e-9) {
        cases.push(Case::new(
            "energy.transmission_regular_equality",
            (report.le_r - report.e_r).abs(),
            REGULAR_ENERGY_TOL,
        ));
        let l = shift_spectrum_transmission_regular(k, &r_s, ShiftSign::Laplacian);
        let s = shift_spectrum_transmission_regular(k, &r_s, ShiftSign::Signless);
        let e = spectrum_diff(&l, &rl_s).max(spectrum_diff(&s, &rq_s));
        cases.push(Case::new(
            "spectral.transmission_regular_shift",
            e,
            SPECTRUM_TOL,
        ));
    }
    cases
}

/// Distance from `x` to the nearest eigenvalue.
fn nearest(s: &Spectrum, x: f64) -> f64 {
    s.values
        .iter()
        .map(|v| (v - x).abs())
        .fold(f64::INFINITY, f64::min)
}

fn quotient_containment_error(g: &Graph, bundle: &ResistanceBundle, p: usize, q: usize) -> f64 {
    let partition = match Partition::consecutive(&[p, q]) {
        Ok(pt) => pt,
        Err(_) => return f64::INFINITY,
    };
    let mut worst: f64 = 0.0;
    for m in [laplacian(g), bundle.rl.clone(), bundle.rq.clone()] {
        let parent = match eigenvalues_symmetric(&m) {
            Ok(s) => s,
            Err(_) => return f64::INFINITY,
        };
        let quot = match quotient_matrix(&m, &partition) {
            Ok(qm) if qm.equitable => qm.matrix,
            _ => return f64::INFINITY,
        };
        // 2×2 quotients here are not symmetric; use the real-eigenvalue formula
        let half_tr = 0.5 * (quot[(0, 0)] + quot[(1, 1)]);
        let half_gap = 0.5 * (quot[(0, 0)] - quot[(1, 1)]);
        let disc = half_gap * half_gap + quot[(0, 1)] * quot[(1, 0)];
        if disc < -1e-12 {
            return f64::INFINITY;
        }
        let r = disc.max(0.0).sqrt();
        worst = worst
            .max(nearest(&parent, half_tr + r))
            .max(nearest(&parent, half_tr - r));
    }
    worst
}

/// Informational comparison of the printed `R^Q(K_{p,q})` pair against the
/// corrected quotient pair and the numeric spectrum, for `p, q ≤ limit`.
fn rq_bipartite_report(limit: usize, pipeline: Pipeline) -> Vec<VerifyOutcome> {
    let mut out = Vec::new();
    for p in 1..=limit {
        for q in 1..=limit {
            let start = Instant::now();
            let g = generate(FamilySpec::CompleteBipartite { p, q }).expect("valid");
            let numeric = (pipeline.bundle)(&g).and_then(|b| eigenvalues_symmetric(&b.rq));
            let Ok(numeric) = numeric else { continue };
            let corrected = closed_forms::bipartite_rq_quotient_pair(p, q).expect("valid");
            let printed_quotient = closed_forms::printed::rq_quotient_pair(p, q).expect("valid");
            let printed_expr = closed_forms::printed::rq_pair_expression(p, q).expect("valid");
            let corrected_err = nearest(&numeric, corrected.0).max(nearest(&numeric, corrected.1));
            let expr_err = printed_expr
                .map(|(a, b)| nearest(&numeric, a).max(nearest(&numeric, b)))
                .unwrap_or(f64::INFINITY);
            let quot_err =
                nearest(&numeric, printed_quotient.0).max(nearest(&numeric, printed_quotient.1));
            let matches = expr_err <= SPECTRUM_TOL;
            out.push(VerifyOutcome {
                check: format!("report.rq_bipartite_pair({p},{q})"),
                status: Status::Info,
                measured: corrected_err,
                tolerance: SPECTRUM_TOL,
                cases: 1,
                elapsed_ms: start.elapsed().as_millis() as u64,
                detail: Some(format!(
                    "corrected quotient pair ({:.12}, {:.12}) vs numeric: err {:.1e}; printed +/- expression {} ({}); printed quotient pair ({:.12}, {:.12}) err {:.1e}",
                    corrected.0,
                    corrected.1,
                    corrected_err,
                    printed_expr.map_or("undefined".to_string(), |(a, b)| format!("({a:.12}, {b:.12})")),
                    if matches { "matches" } else { "NON-MATCHING" },
                    printed_quotient.0,
                    printed_quotient.1,
                    quot_err,
                )),
                graph: None,
                data: Some(serde_json::json!({
                    "p": p,
                    "q": q,
                    "corrected_pair": [corrected.0, corrected.1],
                    "corrected_error": corrected_err,
                    "printed_expression_pair": printed_expr.map(|(a, b)| vec![a, b]),
                    "printed_expression_error": expr_err,
                    "printed_expression_matches": matches,
                    "printed_quotient_pair": [printed_quotient.0, printed_quotient.1],
                    "printed_quotient_error": quot_err,
                    "numeric_spectrum": numeric.values,
                })),
            });
        }
    }
    out
}

/// Deterministic random corpus: `graphs` random connected graphs followed by
/// `trees` random trees, orders drawn from `2..=max_n`.
pub fn random_corpus(seed: u64, max_n: usize, graphs: usize, trees: usize) -> Vec<Graph> {
    let max_n = max_n.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(graphs + trees);
    for _ in 0..graphs {
        let n = rng.random_range(2..=max_n);
        let p = rng.random_range(0.15..0.85);
        out.push(random_connected_graph(n, p, rng.random()));
    }
    for _ in 0..trees {
        let n = rng.random_range(2..=max_n);
        out.push(random_tree(n, rng.random()));
    }
    out
}

fn run_random(config: &VerifyConfig, pipeline: Pipeline) -> Vec<VerifyOutcome> {
    let corpus = random_corpus(
        config.seed,
        config.max_n,
        config.random_graphs,
        config.random_trees,
    );
    let tol = config.tol;
    let results: Vec<Vec<Case>> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, g)| random_cases(g, config.seed.wrapping_add(i as u64), pipeline, tol))
        .collect();
    let mut tally = Tally::default();
    for (g, cases) in corpus.iter().zip(results) {
        tally.add_all(cases, g);
    }
    tally.outcomes
}

fn random_cases(g: &Graph, seed: u64, pipeline: Pipeline, tol: f64) -> Vec<Case> {
    let mut cases = Vec::new();
    let start = Instant::now();
    let bundle = match (pipeline.bundle)(g) {
        Ok(b) => b,
        Err(_) => return vec![Case::new("pipeline.compute", f64::INFINITY, 0.0)],
    };
    let n = g.vertex_count();
    let l = laplacian(g);

    // pseudoinverse
    if let Ok(pinv) = laplacian_pseudoinverse(&l) {
        let scale = max_abs(&pinv).max(1.0);
        let lp = &l * &pinv;
        let pl = &pinv * &l;
        let e = max_abs_diff(&(&lp * &l), &l)
            .max(max_abs_diff(&(&pl * &pinv), &pinv))
            .max(max_abs_diff(&lp, &lp.transpose()))
            .max(max_abs_diff(&pl, &pl.transpose()))
            .max(pinv.row_iter().map(|r| r.sum().abs()).fold(0.0, f64::max));
        cases.push(Case::new("resistance.penrose_identities", e / scale, tol));
        let e = or_inf(laplacian_pseudoinverse_spectral(&l), |s| {
            max_abs_diff(&s, &pinv)
        });
        cases.push(Case::new("resistance.pseudoinverse_routes", e / scale, tol));
    } else {
        cases.push(Case::new(
            "resistance.penrose_identities",
            f64::INFINITY,
            tol,
        ));
    }

    // metric properties of r
    let d = classical_distance_matrix(g).expect("corpus graphs are connected");
    let mut above_d: f64 = 0.0;
    let mut triangle: f64 = 0.0;
    let mut negative: f64 = 0.0;
    let mut asym: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let rij = bundle.r[(i, j)];
            above_d = above_d.max(rij - d[(i, j)]);
            negative = negative.max(-rij);
            asym = asym.max((rij - bundle.r[(j, i)]).abs());
            for k in 0..n {
                triangle = triangle.max(bundle.r[(i, k)] - rij - bundle.r[(j, k)]);
            }
        }
    }
    cases.push(Case::new("resistance.bounded_by_distance", above_d, tol));
    cases.push(Case::new("resistance.triangle_inequality", triangle, tol));
    cases.push(Case::new(
        "resistance.symmetric_nonnegative",
        asym.max(negative),
        tol,
    ));

    if g.is_tree() {
        cases.push(Case::new(
            "tree.resistance_equals_distance",
            max_abs_diff(&bundle.r, &d),
            tol,
        ));
        let tr: Vec<f64> = d.column_iter().map(|c| c.sum()).collect();
        let dl = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(tr)) - &d;
        cases.push(Case::new(
            "tree.rl_equals_distance_laplacian",
            max_abs_diff(&bundle.rl, &dl),
            tol,
        ));
    }

    // R^L structure
    let rl_s = match eigenvalues_symmetric(&bundle.rl) {
        Ok(s) => s,
        Err(_) => {
            cases.push(Case::new("spectral.eigensolve", f64::INFINITY, 0.0));
            return cases;
        }
    };
    let norm = rl_s
        .values
        .iter()
        .fold(0.0f64, |a, b| a.max(b.abs()))
        .max(f64::MIN_POSITIVE);
    let ones = nalgebra::DVector::from_element(n, 1.0);
    cases.push(Case::new(
        "spectral.zero_row_sums",
        (&bundle.rl * &ones).norm() / norm,
        tol,
    ));
    let trace_gap = (bundle.rl.trace() - bundle.rtr.iter().sum::<f64>()).abs();
    cases.push(Case::new(
        "resistance.trace_equals_transmission_sum",
        trace_gap / norm.max(1.0),
        tol,
    ));
    cases.push(Case::new(
        "spectral.trace_equals_eigen_sum",
        (rl_s.sum() - bundle.rl.trace()).abs() / n as f64,
        SPECTRUM_TOL,
    ));
    cases.push(Case::new(
        "spectral.psd",
        (-rl_s.min().unwrap_or(0.0)).max(0.0) / norm,
        tol,
    ));
    if n >= 2 {
        cases.push(Case::new(
            "spectral.radius_at_least_2",
            (2.0 - rl_s.max().unwrap_or(0.0)).max(0.0),
            tol,
        ));
    }

    // energy identities and bounds
    let r_s = match eigenvalues_symmetric(&bundle.r) {
        Ok(s) => s,
        Err(_) => return cases,
    };
    match EnergyReport::from_parts(g.edge_hash(), &bundle, &rl_s, &r_s) {
        Ok(rep) => {
            cases.push(Case::new(
                "energy.eta_sum_zero",
                rep.eta_sum().abs() / n as f64,
                ETA_SUM_TOL,
            ));
            let two_f = 2.0 * rep.big_f;
            let rel = (rep.eta_square_sum() - two_f).abs() / two_f.max(f64::MIN_POSITIVE);
            cases.push(Case::new(
                "energy.eta_square_sum_2F",
                if n >= 2 { rel } else { 0.0 },
                ETA_SQUARE_TOL,
            ));
            if n >= 2 {
                for (name, b) in rep.bounds.iter() {
                    let check = match name {
                        "lower_2sqrtF" => "energy.bound_lower_2sqrtF",
                        "upper_sqrt2nF" => "energy.bound_upper_sqrt2nF",
                        "upper_meanU" => "energy.bound_upper_meanU",
                        _ => "energy.bound_upper_eta1",
                    };
                    cases.push(Case::new(check, (-b.slack).max(0.0), tol));
                }
                cases.push(Case::new(
                    "energy.eta1_nonnegative",
                    (-rep.eta[0]).max(0.0),
                    tol,
                ));
            }
            if is_transmission_regular(&bundle.rtr, 1e-9).is_some() {
                cases.push(Case::new(
                    "energy.transmission_regular_equality",
                    (rep.le_r - rep.e_r).abs(),
                    REGULAR_ENERGY_TOL,
                ));
            }
        }
        Err(_) => cases.push(Case::new("energy.report", f64::INFINITY, 0.0)),
    }

    // edge addition
    let non_edges = g.non_edges();
    if !non_edges.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = non_edges[rng.random_range(0..non_edges.len())];
        let g2 = g.with_edge(u, v).expect("non-edge");
        match (pipeline.bundle)(&g2).and_then(|b2| Ok((eigenvalues_symmetric(&b2.rl)?, b2))) {
            Ok((rl2, b2)) => {
                let r_inc = bundle
                    .r
                    .iter()
                    .zip(b2.r.iter())
                    .fold(0.0f64, |m, (a, b)| m.max(b - a));
                let s_inc = rl_s
                    .values
                    .iter()
                    .zip(&rl2.values)
                    .fold(0.0f64, |m, (a, b)| m.max(b - a));
                let graph = Some(format!("{}# added edge\n{u} {v}\n", g.to_edge_list()));
                cases.push(Case {
                    graph: graph.clone(),
                    ..Case::new("monotonicity.resistance", r_inc, tol)
                });
                cases.push(Case {
                    graph,
                    ..Case::new("monotonicity.rl_spectrum", s_inc, tol)
                });
            }
            Err(_) => cases.push(Case::new("monotonicity.resistance", f64::INFINITY, tol)),
        }
    }

    let elapsed = start.elapsed().as_millis() as u64;
    if let Some(first) = cases.first_mut() {
        first.elapsed_ms = elapsed;
    }
    cases
}

/// Renders one outcome as a human-readable line.
pub fn render_line(o: &VerifyOutcome) -> String {
    let status = match o.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skip => "SKIP",
        Status::Info => "INFO",
    };
    let mut line = format!(
        "{status} {:<42} cases={:<5} worst={:.3e} tol={:.0e} {}ms",
        o.check, o.cases, o.measured, o.tolerance, o.elapsed_ms
    );
    if let Some(d) = &o.detail {
        line.push_str("\n     ");
        line.push_str(d);
    }
    if let Some(g) = &o.graph {
        line.push_str("\n     violating graph: ");
        line.push_str(&g.trim_end().replace('\n', " | "));
    }
    line
}
