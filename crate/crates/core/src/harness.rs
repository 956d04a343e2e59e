//! Named verification experiments tying the solver and the closed forms to
//! the quantitative boundary-regularity statements, each producing a
//! deterministic [`ExperimentReport`]. All grids and evaluation points are
//! fixed by the parameters; no randomness enters, so identical parameters
//! yield byte-identical reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::closed_forms::{
    ball_coeff, ball_solution, delta0_profile, subsolution_psi, supersolution_phi1,
};
use crate::error::{Error, Result};
use crate::geometry::Domain;
use crate::grid::GridFunction;
use crate::norms::{extension_e, holder_seminorm, holder_seminorm_within, rate_fit};
use crate::operator::{
    bilinear_i, frac_laplacian, product_rule_residual, FracOrder, FunctionHandle, QuadratureSpec,
    SingularFeature, SmoothnessHint,
};
use crate::point::Point;
use crate::solver::solve_dirichlet;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
}

/// One declared threshold: `value op threshold`, hard (FAIL) or soft (WARN).
#[derive(Serialize, Clone, Debug)]
pub struct Criterion {
    pub metric: String,
    pub value: f64,
    pub op: String,
    pub threshold: f64,
    pub hard: bool,
    pub satisfied: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct Series {
    pub label: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ExperimentReport {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub metrics: BTreeMap<String, f64>,
    /// Every pass/fail threshold, declared explicitly.
    pub tolerances: Vec<Criterion>,
    pub verdict: Verdict,
    pub series: Vec<Series>,
}

/// Builder collecting metrics and criteria; the verdict falls out of the
/// declared thresholds (hard miss → FAIL, soft miss → WARN).
struct ReportBuilder {
    name: String,
    params: BTreeMap<String, f64>,
    metrics: BTreeMap<String, f64>,
    criteria: Vec<Criterion>,
    series: Vec<Series>,
    overrides: BTreeMap<String, f64>,
}

impl ReportBuilder {
    fn new(name: &str, overrides: &BTreeMap<String, f64>) -> Self {
        ReportBuilder {
            name: name.to_string(),
            params: BTreeMap::new(),
            metrics: BTreeMap::new(),
            criteria: Vec::new(),
            series: Vec::new(),
            overrides: overrides.clone(),
        }
    }

    fn param(&mut self, key: &str, v: f64) -> &mut Self {
        self.params.insert(key.into(), v);
        self
    }

    fn metric(&mut self, key: &str, v: f64) -> &mut Self {
        self.metrics.insert(key.into(), v);
        self
    }

    fn check_le(&mut self, metric: &str, value: f64, threshold: f64, hard: bool) -> &mut Self {
        let threshold = *self.overrides.get(metric).unwrap_or(&threshold);
        self.metrics.insert(metric.into(), value);
        self.criteria.push(Criterion {
            metric: metric.into(),
            value,
            op: "<=".into(),
            threshold,
            hard,
            satisfied: value <= threshold,
        });
        self
    }

    fn check_ge(&mut self, metric: &str, value: f64, threshold: f64, hard: bool) -> &mut Self {
        let threshold = *self.overrides.get(metric).unwrap_or(&threshold);
        self.metrics.insert(metric.into(), value);
        self.criteria.push(Criterion {
            metric: metric.into(),
            value,
            op: ">=".into(),
            threshold,
            hard,
            satisfied: value >= threshold,
        });
        self
    }

    fn series(&mut self, label: &str, x_label: &str, y_label: &str, points: Vec<(f64, f64)>) {
        self.series.push(Series {
            label: label.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            points,
        });
    }

    fn finish(self) -> ExperimentReport {
        let mut verdict = Verdict::Pass;
        for c in &self.criteria {
            if !c.satisfied {
                if c.hard {
                    verdict = Verdict::Fail;
                    break;
                }
                verdict = Verdict::Warn;
            }
        }
        ExperimentReport {
            name: self.name,
            params: self.params,
            metrics: self.metrics,
            tolerances: self.criteria,
            verdict,
            series: self.series,
        }
    }
}

/// Parameters shared by the experiment entry points; each experiment reads
/// the fields it needs.
#[derive(Clone, Debug)]
pub struct ExperimentParams {
    pub s: f64,
    pub dim: usize,
    pub n_cells: usize,
    /// Per-criterion threshold overrides, keyed by metric name.
    pub overrides: BTreeMap<String, f64>,
}

impl Default for ExperimentParams {
    fn default() -> Self {
        ExperimentParams { s: 0.5, dim: 1, n_cells: 1024, overrides: BTreeMap::new() }
    }
}

fn order(s: f64) -> Result<FracOrder<f64>> {
    FracOrder::new(s)
}

fn unit_interval() -> Domain<f64> {
    Domain::interval(-1.0, 1.0).expect("static interval")
}

fn radial_point(dim: usize, r: f64) -> Point<f64> {
    if dim == 1 {
        Point::d1(r)
    } else {
        Point::d2(r, 0.0)
    }
}

/// The boundary quotient v = u_h/δ^s of a numerical solution, tabulated at
/// the nodes at least one cell inside ∂Ω (division by δ^s amplifies
/// discretization noise on the outermost cell), together with its global
/// Hölder extension.
pub struct QuotientFunction {
    /// (x, v) at the retained interior nodes.
    pub nodes: Vec<(f64, f64)>,
    pub extension: crate::norms::Extension<f64>,
}

impl QuotientFunction {
    pub fn from_solution(
        sol: &crate::solver::NumericalSolution<f64>,
        alpha: f64,
    ) -> Result<QuotientFunction> {
        let h = sol.grid.spacing();
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for (x, v) in sol.grid.xs().iter().zip(sol.grid.values()) {
            let d = sol.domain.distance(&Point::d1(*x));
            if d >= h * (1.0 - 1e-12) {
                xs.push(*x);
                vs.push(v / d.powf(sol.order));
            }
        }
        if xs.len() < 2 {
            return Err(Error::GridTooCoarse { pairs: xs.len(), min_pairs: 2 });
        }
        for v in &vs {
            if !v.is_finite() {
                return Err(Error::InvalidParameter("non-finite quotient value".into()));
            }
        }
        let bounds = sol.grid.bounds();
        let grid = GridFunction::new(xs.clone(), vs.clone(), bounds)?;
        let extension = extension_e(&grid, alpha)?;
        Ok(QuotientFunction { nodes: xs.into_iter().zip(vs).collect(), extension })
    }

    pub fn sup(&self) -> f64 {
        self.nodes.iter().map(|&(_, v)| v).fold(0.0, f64::max)
    }
}

/// Quadrature of the explicit ball solution: (-Δ)^s u must return 1 at
/// interior points.
pub fn exp_ball_identity(p: &ExperimentParams) -> Result<ExperimentReport> {
    let s = order(p.s)?;
    let n = p.dim;
    let mut rb = ReportBuilder::new("exp_ball_identity", &p.overrides);
    rb.param("s", p.s).param("n", n as f64);

    let center = if n == 1 { Point::d1(0.0) } else { Point::d2(0.0, 0.0) };
    let u = ball_solution(n, s, 1.0, center)?.handle();
    let base = QuadratureSpec::default();

    let mut pts = Vec::with_capacity(50);
    let mut worst = 0.0f64;
    for k in 0..50 {
        let r = if n == 1 {
            -0.95 + 1.9 * k as f64 / 49.0
        } else {
            0.95 * k as f64 / 49.0
        };
        let x = radial_point(n, r);
        let delta = 1.0 - r.abs();
        let q = QuadratureSpec { split_radius: delta / 2.0, ..base };
        let v = frac_laplacian(&u, s, &x, &q)?;
        worst = worst.max((v - 1.0).abs());
        pts.push((r, v));
    }
    let tol = if n == 1 { 1e-3 } else { 5e-3 };
    rb.check_le("max_deviation", worst, tol, true);
    rb.series("ball_identity", "x", "frac_laplacian", pts);
    Ok(rb.finish())
}

/// Oscillation decay of u_h/δ^s over the boundary-anchored sets
/// D_{R_k}(x₀ = 1), R_k = ρ₁ 4^{−k}.
pub fn exp_boundary_behavior(p: &ExperimentParams) -> Result<ExperimentReport> {
    let s = order(p.s)?;
    let mut rb = ReportBuilder::new("exp_boundary_behavior", &p.overrides);
    rb.param("s", p.s).param("N", p.n_cells as f64);

    let dom = unit_interval();
    let coeff = ball_coeff(1, p.s);

    // oscillation ladder over D_{R_k}(x0 = 1); K is the largest scale count
    // the grid resolves (R_K ≥ 8h)
    let osc_ladder = |n_cells: usize| -> Result<(Vec<(f64, f64)>, f64)> {
        let sol = solve_dirichlet(&dom, s, &FunctionHandle::constant(1.0), n_cells)?;
        let quotient = QuotientFunction::from_solution(&sol, p.s.min(1.0 - p.s))?;
        let h = 2.0 / n_cells as f64;
        let rho1 = 1.0;
        let k_max = (0..)
            .take_while(|k| rho1 * 4.0f64.powi(-k) >= 8.0 * h)
            .last()
            .unwrap_or(0);
        let mut osc = Vec::new();
        for k in 0..=k_max {
            let r = rho1 * 4.0f64.powi(-k);
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for &(x, v) in &quotient.nodes {
                if 1.0 - x < r {
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
            osc.push((r, hi - lo));
        }
        Ok((osc, quotient.sup()))
    };

    let (osc, sup_v) = osc_ladder(p.n_cells)?;
    if osc.len() < 4 {
        return Err(Error::GridTooCoarse { pairs: osc.len(), min_pairs: 4 });
    }
    let exponent = rate_fit(&osc)?.slope;

    let mut monotone_margin = f64::INFINITY;
    for w in osc.windows(2) {
        // R decreasing: osc must not grow by more than 5%
        monotone_margin = monotone_margin.min(1.05 - w[1].1 / w[0].1);
    }
    rb.check_ge("fitted_exponent", exponent, 1e-9, true);
    rb.check_le("fitted_exponent_upper", exponent, 1.2, true);
    rb.check_ge("monotonicity_margin", monotone_margin, 0.0, true);
    rb.check_le("sup_quotient", sup_v, 1.05 * coeff * 2.0f64.powf(p.s), true);

    // Richardson-style direction check at the finest scale both grids
    // resolve: the exact oscillation of v = coeff(1+x)^s over D_R is
    // coeff(2^s − (2−R)^s); halving the grid must not move the measurement
    // away from it
    let (osc_coarse, _) = osc_ladder(p.n_cells / 2)?;
    let k_common = osc_coarse.len().min(osc.len()) - 1;
    let r_common = osc[k_common].0;
    let claimed = coeff * (2.0f64.powf(p.s) - (2.0 - r_common).powf(p.s));
    let gap_fine = (osc[k_common].1 - claimed).abs();
    let gap_coarse = (osc_coarse[k_common].1 - claimed).abs();
    rb.metric("direction_check_scale", r_common);
    rb.metric("osc_gap_half_grid", gap_coarse);
    rb.check_le("osc_gap_direction", gap_fine - gap_coarse, 0.05 * claimed, false);

    rb.series("oscillation_decay", "R", "osc(u_h/delta^s)", osc);
    Ok(rb.finish())
}

/// Interior seminorm blow-up rates of the explicit solution on {δ ≥ ρ}.
pub fn exp_interior_blowup(p: &ExperimentParams, beta_list: &[f64]) -> Result<ExperimentReport> {
    let s = order(p.s)?;
    let mut rb = ReportBuilder::new("exp_interior_blowup", &p.overrides);
    rb.param("s", p.s).param("N", p.n_cells as f64);

    let n_cells = p.n_cells.max(4096);
    let h = 2.0 / n_cells as f64;
    let u = ball_solution(1, s, 1.0, Point::d1(0.0))?;
    let grid = GridFunction::sample(-1.0, 1.0, n_cells, |x| u.eval(&Point::d1(x)))?;
    let coeff = ball_coeff(1, p.s);
    let quotient_grid = GridFunction::sample(-1.0, 1.0, n_cells, |x: f64| {
        coeff * (1.0 + x.abs()).powf(p.s)
    })?;

    let k_max = (2..)
        .take_while(|k| 2.0f64.powi(-k) >= 16.0 * h)
        .last()
        .ok_or(Error::GridTooCoarse { pairs: 0, min_pairs: 4 })?;
    if k_max < 6 {
        return Err(Error::GridTooCoarse { pairs: k_max as usize, min_pairs: 6 });
    }
    let rhos: Vec<f64> = (2..=k_max).map(|k| 2.0f64.powi(-k)).collect();

    // the sharp rate lives in the scale-localized seminorm (pairs within
    // half the boundary distance); the plain set seminorm saturates only
    // slowly for beta <= s and is checked for boundedness instead
    for &beta in beta_list {
        let mut samples = Vec::new();
        for &rho in &rhos {
            let est = holder_seminorm_within(&grid.restrict_interior(rho)?, beta, rho / 2.0)?;
            samples.push((rho, est.value));
        }
        let fit = rate_fit(&samples)?;
        let tag = format!("beta_{beta:.2}");
        rb.metric(&format!("slope_{tag}"), fit.slope);
        rb.metric(&format!("r_squared_{tag}"), fit.r_squared);
        rb.check_ge(&format!("slope_lower_{tag}"), fit.slope, p.s - beta - 0.1, true);
        if (beta - 1.0).abs() < 1e-12 || (beta - p.s).abs() < 1e-12 {
            rb.check_le(&format!("slope_upper_{tag}"), fit.slope, p.s - beta + 0.1, true);
        }
        rb.series(
            &format!("seminorm_{tag}"),
            "rho",
            &format!("holder_seminorm_beta_{beta:.2}"),
            samples,
        );
    }

    // no blow-up at beta = s: the plain restricted seminorm stays under the
    // global one
    let global_s = holder_seminorm(&grid, p.s)?.value;
    let finest_s = holder_seminorm(&grid.restrict_interior(*rhos.last().unwrap())?, p.s)?.value;
    rb.metric("plain_seminorm_global_beta_s", global_s);
    rb.check_le("plain_seminorm_bounded_beta_s", finest_s, global_s * 1.0001, true);

    // the quotient u/δ^s stays Lipschitz-bounded: slope ≥ −0.1, values finite
    let mut qsamples = Vec::new();
    for &rho in &rhos {
        let est = holder_seminorm_within(&quotient_grid.restrict_interior(rho)?, 1.0, rho / 2.0)?;
        qsamples.push((rho, est.value));
    }
    let qfit = rate_fit(&qsamples)?;
    let qmax = qsamples.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    rb.check_ge("quotient_slope", qfit.slope, -0.1, true);
    rb.check_le("quotient_sup", qmax, 10.0 * coeff, true);
    rb.series("quotient_seminorm", "rho", "holder_seminorm_beta_1", qsamples);
    Ok(rb.finish())
}

/// Boundedness of (-Δ)^s δ₀^s near the boundary, against the blowing-up
/// contrast function δ₀^{s/2}.
pub fn exp_lapsdeltas(p: &ExperimentParams, n_pts: usize) -> Result<ExperimentReport> {
    let s = order(p.s)?;
    let mut rb = ReportBuilder::new("exp_lapsdeltas", &p.overrides);
    rb.param("s", p.s).param("n_pts", n_pts as f64);
    if n_pts < 4 {
        return Err(Error::InvalidParameter("need at least 4 evaluation points".into()));
    }

    let dom = unit_interval();
    let profile = delta0_profile(&dom, p.s);
    let contrast = delta0_profile(&dom, p.s / 2.0);
    let base = QuadratureSpec::default();

    let mut main_pts = Vec::new();
    let mut refined_change = 0.0f64;
    let mut contrast_pts = Vec::new();
    for j in 0..n_pts {
        let t = j as f64 / (n_pts - 1) as f64;
        let delta = 1e-3 * (0.9f64 / 1e-3).powf(t);
        let x = Point::d1(1.0 - delta);
        let q = QuadratureSpec { split_radius: delta / 2.0, ..base };
        let v = frac_laplacian(&profile, s, &x, &q)?;
        let v_ref = frac_laplacian(&profile, s, &x, &q.refined())?;
        refined_change = refined_change.max((v - v_ref).abs() / v_ref.abs().max(1e-12));
        main_pts.push((delta, v));
        contrast_pts.push((delta, frac_laplacian(&contrast, s, &x, &q)?));
    }

    let sup = main_pts.iter().map(|&(_, v)| v.abs()).fold(0.0, f64::max);
    let main_fit = rate_fit(
        &main_pts.iter().map(|&(d, v)| (d, v.abs().max(1e-300))).collect::<Vec<_>>(),
    )?;
    let contrast_fit = rate_fit(
        &contrast_pts.iter().map(|&(d, v)| (d, v.abs().max(1e-300))).collect::<Vec<_>>(),
    )?;

    rb.metric("sup_abs", sup);
    rb.check_ge("bounded_slope", main_fit.slope, -0.05, true);
    rb.check_le("quadrature_refinement_change", refined_change, 0.10, true);
    rb.check_le("contrast_slope", contrast_fit.slope, -p.s / 2.0 + 0.1, true);
    rb.check_ge(
        "slope_separation",
        main_fit.slope - contrast_fit.slope,
        0.2,
        true,
    );
    rb.series("lap_delta_s", "delta", "frac_laplacian_of_delta0_pow_s", main_pts);
    rb.series(
        "lap_delta_half_s",
        "delta",
        "frac_laplacian_of_delta0_pow_half_s",
        contrast_pts,
    );
    Ok(rb.finish())
}

/// The nonlocal equation satisfied by v = u/δ^s, with v extended outside the
/// domain by the explicit Hölder extension.
pub fn exp_v_equation(p: &ExperimentParams) -> Result<ExperimentReport> {
    let s = order(p.s)?;
    let sv = p.s;
    let mut rb = ReportBuilder::new("exp_v_equation", &p.overrides);
    rb.param("s", sv).param("N", p.n_cells as f64);

    let dom = unit_interval();
    let coeff = ball_coeff(1, sv);
    // closed-form quotient of the unit-rhs solution: v = coeff (1+|y|)^s on Ω
    let v_exact = move |y: f64| coeff * (1.0 + y.abs()).powf(sv);
    let samples = GridFunction::sample(-1.0, 1.0, p.n_cells.max(64), v_exact)?;
    let ext = extension_e(&samples, sv)?;
    let ext_handle = ext.handle.clone();
    let v_handle = FunctionHandle::new(
        move |x: &Point<f64>| {
            let y = x.x();
            if y.abs() <= 1.0 {
                v_exact(y)
            } else {
                ext_handle.eval(x)
            }
        },
        0.0,
        SmoothnessHint::C2NearX,
    )
    .with_singularities(vec![
        SingularFeature::Point(Point::d1(-1.0)),
        SingularFeature::Point(Point::d1(0.0)),
        SingularFeature::Point(Point::d1(1.0)),
    ]);
    let delta_s = delta0_profile(&dom, sv);
    let base = QuadratureSpec::default();

    let mut lhs_pts = Vec::new();
    let mut rhs_pts = Vec::new();
    let mut residual_max = 0.0f64;
    let mut rhs_max = 0.0f64;
    let mut prod_residual_max = 0.0f64;
    for j in 0..20 {
        let delta = 0.05 + 0.9 * j as f64 / 19.0;
        let x = Point::d1(1.0 - delta);
        let q = QuadratureSpec { split_radius: delta / 2.0, ..base };
        let lhs = frac_laplacian(&v_handle, s, &x, &q)?;
        let lap_ds = frac_laplacian(&delta_s, s, &x, &q)?;
        let cross = bilinear_i(&v_handle, &delta_s, s, &x, &q)?;
        let rhs = (1.0 - v_handle.eval(&x) * lap_ds + cross) / delta.powf(sv);
        residual_max = residual_max.max((lhs - rhs).abs());
        rhs_max = rhs_max.max(rhs.abs());
        lhs_pts.push((delta, lhs));
        rhs_pts.push((delta, rhs));

        prod_residual_max =
            prod_residual_max.max(product_rule_residual(&v_handle, &delta_s, s, &x, &q)?);
    }
    rb.metric("rhs_sup", rhs_max);
    rb.check_le("relative_residual", residual_max / rhs_max.max(1e-12), 0.05, true);
    rb.check_le("product_rule_residual", prod_residual_max, 10.0 * base.target_tol, true);

    // algebraic-cancellation sanity: u = δ₀^s exactly means v ≡ 1 and both
    // sides collapse to zero up to quadrature noise
    let one = FunctionHandle::constant(1.0);
    let mut sanity = 0.0f64;
    for &delta in &[0.1, 0.4, 0.8] {
        let x = Point::d1(1.0 - delta);
        let q = QuadratureSpec { split_radius: delta / 2.0, ..base };
        let lhs = frac_laplacian(&one, s, &x, &q)?;
        // g = (-Δ)^s δ₀^s here, so g − v·(-Δ)^s δ₀^s cancels exactly
        let cross = bilinear_i(&one, &delta_s, s, &x, &q)?;
        let rhs = cross / delta.powf(sv);
        sanity = sanity.max((lhs - rhs).abs());
    }
    rb.check_le("constant_quotient_sanity", sanity, 1e-10, true);

    rb.series("v_equation_lhs", "delta", "lhs", lhs_pts);
    rb.series("v_equation_rhs", "delta", "rhs", rhs_pts);
    Ok(rb.finish())
}

/// Growth of (-Δ)^{s/2} applied to the explicit solution near the boundary:
/// at most logarithmic in δ.
pub fn exp_half_order_log(p: &ExperimentParams, n_pts: usize) -> Result<ExperimentReport> {
    let s = order(p.s)?;
    let mut rb = ReportBuilder::new("exp_half_order_log", &p.overrides);
    rb.param("s", p.s).param("n_pts", n_pts as f64);
    if n_pts < 4 {
        return Err(Error::InvalidParameter("need at least 4 evaluation points".into()));
    }

    let u = ball_solution(1, s, 1.0, Point::d1(0.0))?.handle();
    let half = s.half();
    let base = QuadratureSpec::default();
    let mut pts = Vec::new();
    for k in 1..=n_pts {
        let delta = 2.0f64.powi(-(k as i32));
        let x = Point::d1(1.0 - delta);
        let q = QuadratureSpec { split_radius: delta / 2.0, ..base };
        pts.push((delta, frac_laplacian(&u, half, &x, &q)?));
    }
    let fit = rate_fit(&pts.iter().map(|&(d, v)| (d, v.abs().max(1e-300))).collect::<Vec<_>>())?;

    // linear regression of value against 1 + |log δ|
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0f64, 0.0, 0.0, 0.0);
    for &(d, v) in &pts {
        let t: f64 = 1.0 + d.ln().abs();
        sx += t;
        sy += v;
        sxx += t * t;
        sxy += t * v;
    }
    let nf = pts.len() as f64;
    let log_slope = (nf * sxy - sx * sy) / (nf * sxx - sx * sx);

    // interior value stable under quadrature refinement
    let x_mid = Point::d1(0.5);
    let q_mid = QuadratureSpec { split_radius: 0.25, ..base };
    let v0 = frac_laplacian(&u, half, &x_mid, &q_mid)?;
    let v1 = frac_laplacian(&u, half, &x_mid, &q_mid.refined())?;

    rb.metric("log_fit_slope", log_slope);
    rb.check_ge("power_slope", fit.slope, -0.05, true);
    rb.check_le(
        "interior_refinement_change",
        (v0 - v1).abs() / v1.abs().max(1e-12),
        0.01,
        false,
    );
    rb.series("half_order_growth", "delta", "half_order_frac_laplacian", pts);
    Ok(rb.finish())
}

/// Barrier calibration and verification: (-Δ)^s φ₁ ≥ 1 on B₄∖B₁ and
/// (-Δ)^s ψ ≤ 0 on its annulus, plus the pointwise envelopes.
pub fn exp_barriers(p: &ExperimentParams) -> Result<ExperimentReport> {
    let s = order(p.s)?;
    let n = p.dim;
    let mut rb = ReportBuilder::new("exp_barriers", &p.overrides);
    rb.param("s", p.s).param("n", n as f64);
    let q = QuadratureSpec::default();

    let (sup_b, phi1) = supersolution_phi1(n, s, &q)?;
    rb.metric("phi1_amplitude", sup_b.amplitude);
    rb.metric("phi1_envelope_c1", sup_b.envelope_constant);
    rb.check_ge("phi1_inequality_margin", sup_b.inequality_margin, -1e-3, true);
    rb.check_ge("phi1_envelope_positive", sup_b.envelope_constant, 1e-12, true);

    // pointwise shape checks on a dense radial grid
    let mut zero_inside = 0.0f64;
    let mut outside_min = f64::INFINITY;
    let mut envelope_violation = f64::NEG_INFINITY;
    let mut phi_profile = Vec::new();
    for i in 0..400 {
        let rho = 8.0 * (i as f64 + 0.5) / 400.0;
        let v = phi1.eval(&radial_point(n, rho));
        phi_profile.push((rho, v));
        if rho < 1.0 {
            zero_inside = zero_inside.max(v.abs());
        } else if rho <= 4.0 {
            envelope_violation = envelope_violation
                .max(v - sup_b.envelope_constant * (rho - 1.0).powf(p.s) * (1.0 + 1e-4) - 1e-9);
        } else {
            outside_min = outside_min.min(v);
        }
    }
    rb.check_le("phi1_zero_on_unit_ball", zero_inside, 0.0, true);
    rb.check_ge("phi1_min_outside", outside_min, 1.0 - 1e-9, true);
    rb.check_le("phi1_envelope_violation", envelope_violation, 0.0, true);
    rb.series("phi1_profile", "r", "phi1", phi_profile);

    let (sub_b, psi) = subsolution_psi(n, s, &q)?;
    rb.metric("psi_amplitude", sub_b.amplitude);
    rb.metric("psi_envelope_c", sub_b.envelope_constant);
    // margin is −max (-Δ)^s ψ over the grid; ≥ −1e−3 means ψ passes ≤ 1e−3
    rb.check_ge("psi_inequality_margin", sub_b.inequality_margin, -1e-3, true);
    rb.check_ge("psi_envelope_positive", sub_b.envelope_constant, 1e-12, true);

    let mut core_min = f64::INFINITY;
    let mut outside_abs = 0.0f64;
    let mut env_violation = f64::NEG_INFINITY;
    let mut psi_profile = Vec::new();
    for i in 0..400 {
        let rho = 2.0 * (i as f64 + 0.5) / 400.0;
        let v = psi.eval(&radial_point(n, rho));
        psi_profile.push((rho, v));
        if rho <= 0.25 {
            core_min = core_min.min(v);
        }
        if rho >= 1.0 {
            outside_abs = outside_abs.max(v.abs());
        } else {
            env_violation = env_violation
                .max(sub_b.envelope_constant * (1.0 - rho).powf(p.s) * (1.0 - 1e-4) - v - 1e-9);
        }
    }
    rb.check_ge("psi_core_min", core_min, 1.0, true);
    rb.check_le("psi_zero_outside", outside_abs, 0.0, true);
    rb.check_le("psi_envelope_violation", env_violation, 0.0, true);
    rb.series("psi_profile", "r", "psi", psi_profile);

    // small sampled series of the operator values for plotting
    let mut lap_phi = Vec::new();
    let mut lap_psi = Vec::new();
    for i in 0..25 {
        let rho_phi = 1.05 + (3.95 - 1.05) * i as f64 / 24.0;
        let x = radial_point(n, rho_phi);
        let qq = QuadratureSpec { split_radius: (rho_phi - 1.0) * 0.45, ..q };
        lap_phi.push((rho_phi, frac_laplacian(&phi1, s, &x, &qq)?));
        let rho_psi = 0.3 + 0.65 * i as f64 / 24.0;
        lap_psi.push((rho_psi, frac_laplacian(&psi, s, &radial_point(n, rho_psi), &q)?));
    }
    rb.series("lap_phi1", "r", "frac_laplacian_phi1", lap_phi);
    rb.series("lap_psi", "r", "frac_laplacian_psi", lap_psi);
    Ok(rb.finish())
}

/// Registered experiment names, their descriptions, and default parameters.
pub const EXPERIMENTS: &[(&str, &str)] = &[
    ("exp_ball_identity", "quadrature of the explicit ball solution returns a unit right-hand side"),
    ("exp_boundary_behavior", "oscillation decay of u_h/delta^s over boundary sets D_{R_k}, R_k = rho1*4^-k"),
    ("exp_interior_blowup", "interior Holder seminorm growth [u]_{C^beta({delta>=rho})} ~ rho^{s-beta}"),
    ("exp_lapsdeltas", "boundedness of (-Lap)^s delta0^s near the boundary vs the delta0^{s/2} contrast"),
    ("exp_v_equation", "pointwise residual of the nonlocal equation for v = u/delta^s"),
    ("exp_half_order_log", "at most logarithmic growth of (-Lap)^{s/2} u near the boundary"),
    ("exp_barriers", "calibrated supersolution/subsolution inequalities and envelopes"),
];

/// Run an experiment by registered name with the given parameters.
pub fn run_experiment(name: &str, p: &ExperimentParams) -> Result<ExperimentReport> {
    match name {
        "exp_ball_identity" => exp_ball_identity(p),
        "exp_boundary_behavior" => exp_boundary_behavior(p),
        "exp_interior_blowup" => exp_interior_blowup(p, &[p.s, 1.0]),
        "exp_lapsdeltas" => exp_lapsdeltas(p, 12),
        "exp_v_equation" => exp_v_equation(p),
        "exp_half_order_log" => exp_half_order_log(p, 10),
        "exp_barriers" => exp_barriers(p),
        _ => Err(Error::InvalidParameter(format!("unknown experiment '{name}'"))),
    }
}
