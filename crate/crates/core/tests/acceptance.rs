//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`). Every
//! tolerance is pinned here, in code.

use std::collections::BTreeMap;

use fraclap_core::closed_forms::{ball_coeff, ball_solution, halfspace_profile, kelvin_transform};
use fraclap_core::geometry::Domain;
use fraclap_core::grid::GridFunction;
use fraclap_core::harness::{
    exp_ball_identity, exp_barriers, exp_boundary_behavior, exp_half_order_log,
    exp_interior_blowup, exp_lapsdeltas, exp_v_equation, ExperimentParams, Verdict,
};
use fraclap_core::norms::{extension_e, weighted_norm, weighted_seminorm, HolderSpec};
use fraclap_core::operator::{
    frac_laplacian, product_rule_residual, FracOrder, FunctionHandle, QuadratureSpec,
    SmoothnessHint,
};
use fraclap_core::point::Point;
use fraclap_core::solver::{convergence_study, solve_dirichlet, Reference};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion(id: &str, description: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id}: {verdict} — {description} [{detail}]");
    assert!(pass, "criterion {id} failed: {description} [{detail}]");
}

fn params(s: f64, dim: usize, n_cells: usize) -> ExperimentParams {
    ExperimentParams { s, dim, n_cells, overrides: BTreeMap::new() }
}

fn order(s: f64) -> FracOrder<f64> {
    FracOrder::new(s).unwrap()
}

#[test]
fn criterion_01_ball_identity() {
    let mut detail = String::new();
    let mut pass = true;
    for &s in &[0.25, 0.5, 0.75] {
        let r = exp_ball_identity(&params(s, 1, 256)).unwrap();
        let dev = r.metrics["max_deviation"];
        pass &= dev <= 1e-3;
        detail.push_str(&format!("s={s} n=1 dev={dev:.2e}; "));
    }
    let r = exp_ball_identity(&params(0.5, 2, 256)).unwrap();
    let dev = r.metrics["max_deviation"];
    pass &= dev <= 5e-3;
    detail.push_str(&format!("s=0.5 n=2 dev={dev:.2e}"));
    criterion("1", "ball identity returns 1 within tolerance at 50 interior points", pass, detail);
}

#[test]
fn criterion_02_halfspace_harmonicity() {
    let q = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for &s in &[0.3, 0.5, 0.7] {
        let f = halfspace_profile(order(s));
        for &x in &[0.25, 0.5, 1.0, 2.0] {
            let v = frac_laplacian(&f, order(s), &Point::d1(x), &q).unwrap();
            worst = worst.max(v.abs());
        }
    }
    criterion(
        "2",
        "|(-Δ)^s (x₊)^s| ≤ 1e-3 at x ∈ {0.25,0.5,1,2}, s ∈ {0.3,0.5,0.7}",
        worst <= 1e-3,
        format!("max |value| = {worst:.2e}"),
    );
}

#[test]
fn criterion_03_kelvin_identity_and_involution() {
    let s = 0.5;
    let u = ball_solution(1, order(s), 1.0, Point::d1(0.0)).unwrap().handle();
    let ustar = kelvin_transform(&u, 1, s);
    let q = QuadratureSpec::default();
    let mut worst_rel = 0.0f64;
    for k in 0..20 {
        let xv = 1.2 + 1.8 * k as f64 / 19.0;
        let x = Point::d1(xv);
        let lhs = frac_laplacian(&ustar, order(s), &x, &q).unwrap();
        let rhs = xv.powf(-2.0 * s - 1.0) * frac_laplacian(&u, order(s), &x.invert(), &q).unwrap();
        worst_rel = worst_rel.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
    }

    let twice = kelvin_transform(&ustar, 1, s);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_inv = 0.0f64;
    for _ in 0..1000 {
        let mag = rng.gen_range(0.1..10.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let x = Point::d1(sign * mag);
        worst_inv = worst_inv.max((twice.eval(&x) - u.eval(&x)).abs());
    }
    criterion(
        "3",
        "Kelvin intertwining residual ≤ 1e-2 relative; double transform exact to 1e-12",
        worst_rel <= 1e-2 && worst_inv <= 1e-12,
        format!("relative residual {worst_rel:.2e}, involution defect {worst_inv:.2e}"),
    );
}

#[test]
fn criterion_04_solver_validation() {
    let dom = Domain::interval(-1.0, 1.0).unwrap();
    let s = order(0.5);
    let one = FunctionHandle::constant(1.0);
    let u = ball_solution(1, s, 1.0, Point::d1(0.0)).unwrap();

    let sol = solve_dirichlet(&dom, s, &one, 256).unwrap();
    let emax = sol
        .grid
        .xs()
        .iter()
        .zip(sol.grid.values())
        .map(|(x, v)| (v - u.eval(&Point::d1(*x))).abs())
        .fold(0.0, f64::max);

    let uh = u.handle();
    let global = convergence_study(&dom, s, &one, &[32, 64, 128, 256], Reference::ClosedForm(&uh), None)
        .unwrap();
    let interior =
        convergence_study(&dom, s, &one, &[32, 64, 128, 256], Reference::ClosedForm(&uh), Some(0.25))
            .unwrap();

    let pass = emax <= 1e-2
        && global.fit.slope > 0.5
        && global.fit.r_squared >= 0.95
        && interior.fit.slope > global.fit.slope;
    criterion(
        "4",
        "N=256 error ≤ 1e-2; fitted order > 0.5 with R² ≥ 0.95; interior order beats global",
        pass,
        format!(
            "err={emax:.2e}, order={:.3} (R²={:.4}), interior order={:.3}",
            global.fit.slope, global.fit.r_squared, interior.fit.slope
        ),
    );
}

#[test]
fn criterion_05_boundary_bounds() {
    let dom = Domain::interval(-1.0, 1.0).unwrap();
    let s = 0.5;
    let coeff = ball_coeff(1, s);
    let diam = 2.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut linfty_ok = true;
    let mut detail = String::new();
    for _ in 0..5 {
        let a: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let g = FunctionHandle::new(
            move |x: &Point<f64>| {
                let t = x.x();
                a[0] + a[1] * (3.0 * t).sin() + a[2] * (7.0 * t).cos() + a[3] * t
            },
            0.0,
            SmoothnessHint::C2NearX,
        );
        let gmax = (0..500)
            .map(|i| g.eval(&Point::d1(-1.0 + 0.004 * i as f64)).abs())
            .fold(0.0, f64::max);
        let sol = solve_dirichlet(&dom, order(s), &g, 128).unwrap();
        let bound = coeff * diam.powf(2.0 * s) * gmax;
        linfty_ok &= sol.grid.sup_abs() <= bound * (1.0 + 1e-6);
    }
    detail.push_str("L∞ bound held for 5 random g; ");

    let sup_quot = |n: usize| -> f64 {
        let sol = solve_dirichlet(&dom, order(s), &FunctionHandle::constant(1.0), n).unwrap();
        sol.grid
            .xs()
            .iter()
            .zip(sol.grid.values())
            .filter(|(x, _)| dom.distance(&Point::d1(**x)) > 0.0)
            .map(|(x, v)| v.abs() / dom.distance(&Point::d1(*x)).powf(s))
            .fold(0.0, f64::max)
    };
    let (q1, q2) = (sup_quot(128), sup_quot(256));
    let stable = (q1 - q2).abs() <= 0.2 * q2;
    detail.push_str(&format!("sup u/δ^s: {q1:.4} → {q2:.4}"));
    criterion(
        "5",
        "‖u_h‖∞ ≤ coeff·(diam Ω)^{2s}‖g‖∞ and sup u_h/δ^s stable within 20% under doubling",
        linfty_ok && stable,
        detail,
    );
}

#[test]
fn criterion_06_oscillation_decay() {
    let mut pass = true;
    let mut detail = String::new();
    for &s in &[0.25, 0.5, 0.75] {
        let r = exp_boundary_behavior(&params(s, 1, 1024)).unwrap();
        let expo = r.metrics["fitted_exponent"];
        let mono = r.metrics["monotonicity_margin"];
        pass &= expo > 0.0 && expo <= 1.2 && mono >= 0.0;
        detail.push_str(&format!("s={s}: exponent={expo:.3}, monotone margin={mono:.3}; "));
    }
    criterion(
        "6",
        "osc(u_h/δ^s) over D_{R_k} monotone within 5% with exponent in (0, 1.2], N=1024",
        pass,
        detail,
    );
}

#[test]
fn criterion_07_interior_blowup_rates() {
    let s = 0.5;
    let r = exp_interior_blowup(&params(s, 1, 8192), &[s, 1.0]).unwrap();
    let slope_1 = r.metrics["slope_beta_1.00"];
    let slope_s = r.metrics["slope_beta_0.50"];
    let pass = (slope_1 - (s - 1.0)).abs() <= 0.1 && slope_s.abs() <= 0.1;
    criterion(
        "7",
        "[u]_{C^1({δ≥ρ})} slope = s−1 ± 0.1 and [u]_{C^s} slope = 0 ± 0.1 (ball solution)",
        pass,
        format!("slope(β=1) = {slope_1:.3}, slope(β=s) = {slope_s:.3}"),
    );
}

#[test]
fn criterion_08_distance_power_boundedness() {
    let s = 0.5;
    let r = exp_lapsdeltas(&params(s, 1, 256), 12).unwrap();
    let main = r.metrics["bounded_slope"];
    let contrast = r.metrics["contrast_slope"];
    let sep = r.metrics["slope_separation"];
    let pass = main >= -0.05 && contrast <= -s / 2.0 + 0.1 && sep >= 0.2;
    criterion(
        "8",
        "|(-Δ)^s δ₀^s| bounded (slope ≥ −0.05 to δ=1e-3); δ₀^{s/2} contrast separates by ≥ 0.2",
        pass,
        format!("slope={main:.3}, contrast={contrast:.3}, separation={sep:.3}"),
    );
}

#[test]
fn criterion_09_v_equation_residual() {
    let r = exp_v_equation(&params(0.5, 1, 256)).unwrap();
    let rel = r.metrics["relative_residual"];
    criterion(
        "9",
        "nonlocal equation for v = u/δ^s holds to 5% relative at 20 points (extension_E outside)",
        rel <= 0.05,
        format!("relative residual {rel:.3e}"),
    );
}

#[test]
fn criterion_10_product_rule() {
    let q = QuadratureSpec::default();
    let tol = 10.0 * q.target_tol;
    let s = order(0.4);
    let ball = ball_solution(1, s, 1.0, Point::d1(0.0)).unwrap().handle();
    let bump = FunctionHandle::new(
        |x: &Point<f64>| {
            let r2 = x.dot(x);
            if r2 < 1.0 {
                (-1.0 / (1.0 - r2)).exp()
            } else {
                0.0
            }
        },
        0.0,
        SmoothnessHint::C2NearX,
    )
    .with_support(Point::d1(0.0), 1.0);
    let shifted = bump.dilate(2.0).translate(Point::d1(0.3));

    let pairs: [(&FunctionHandle<f64>, &FunctionHandle<f64>, f64); 3] =
        [(&ball, &ball, 0.3), (&ball, &bump, 0.2), (&bump, &shifted, 0.25)];
    let mut worst = 0.0f64;
    for (w1, w2, x) in pairs {
        let q = QuadratureSpec { split_radius: 0.2, ..q };
        let r = product_rule_residual(w1, w2, s, &Point::d1(x), &q).unwrap();
        worst = worst.max(r);
    }
    criterion(
        "10",
        "fractional product rule residual ≤ 10× quadrature tolerance on 3 pairs",
        worst <= tol,
        format!("max residual {worst:.2e} vs {tol:.1e}"),
    );
}

#[test]
fn criterion_11_barriers() {
    let mut pass = true;
    let mut detail = String::new();
    for &n in &[1usize, 2] {
        let r = exp_barriers(&params(0.5, n, 256)).unwrap();
        let phi_margin = r.metrics["phi1_inequality_margin"];
        let psi_margin = r.metrics["psi_inequality_margin"];
        let c1 = r.metrics["phi1_envelope_c1"];
        let c2 = r.metrics["psi_envelope_c"];
        pass &= phi_margin >= -1e-3 && psi_margin >= -1e-3 && c1 > 0.0 && c2 > 0.0;
        pass &= r.verdict != Verdict::Fail;
        detail.push_str(&format!(
            "n={n}: min(-Δ)^sφ₁−1={phi_margin:.2e}, −max(-Δ)^sψ={psi_margin:.2e}, C₁={c1:.2}, c={c2:.2}; "
        ));
    }
    criterion(
        "11",
        "(-Δ)^s φ₁ ≥ 1−1e-3 on B₄∖B₁ and (-Δ)^s ψ ≤ 1e-3, envelopes with positive constants (n=1,2)",
        pass,
        detail,
    );
}

#[test]
fn criterion_12_extension_operator() {
    let w = GridFunction::sample(0.0f64, 1.0, 128, |x: f64| (3.0 * x).sin() * x.sqrt()).unwrap();
    let alpha = 0.5;
    let ext = extension_e(&w, alpha).unwrap();
    let mut exact = 0.0f64;
    for (x, v) in w.xs().iter().zip(w.values()) {
        exact = exact.max((ext.handle.eval(&Point::d1(*x)) - v).abs());
    }
    let mut sup_out = 0.0f64;
    let fresh = GridFunction::sample(-1.0, 2.0, 301, |x| ext.handle.eval(&Point::d1(x))).unwrap();
    let mut fresh_semi = 0.0f64;
    for i in 0..fresh.len() {
        sup_out = sup_out.max(fresh.values()[i].abs());
        for j in (i + 1)..fresh.len() {
            fresh_semi = fresh_semi.max(
                (fresh.values()[i] - fresh.values()[j]).abs()
                    / (fresh.xs()[j] - fresh.xs()[i]).powf(alpha),
            );
        }
    }
    let pass = exact == 0.0 && fresh_semi <= 1.05 * ext.seminorm && sup_out <= ext.sup_norm + 1e-15;
    criterion(
        "12",
        "E(w) ≡ w on samples; fresh-grid seminorm ≤ 1.05×; ‖E(w)‖∞ ≤ ‖w‖∞",
        pass,
        format!(
            "restriction defect {exact:.1e}, seminorm {fresh_semi:.4} vs {:.4}, sup {sup_out:.4} vs {:.4}",
            ext.seminorm, ext.sup_norm
        ),
    );
}

#[test]
fn criterion_13_norm_machinery() {
    // rescale order at λ = 2 within 5%: the definition satisfies
    // [w(λ·)]^{(σ)}_{β;U/λ} = λ^{−σ}[w]^{(σ)}_{β;U}
    let lambda = 2.0;
    let mut rescale_ok = true;
    let mut detail = String::new();
    type Case = (fn(f64) -> f64, f64, f64);
    let cases: [Case; 3] = [
        (|x| x * x, 1.5, 0.0),
        (|x| (3.0 * x).sin(), 0.7, 0.5),
        (|x| x.powf(1.7), 1.0, -0.3),
    ];
    for (f, beta, sigma) in cases {
        let spec = HolderSpec::new(beta, sigma).unwrap();
        let g = GridFunction::sample(0.0f64, 1.0, 2048, f).unwrap();
        let gl = GridFunction::sample(0.0f64, 0.5, 2048, |x| f(lambda * x)).unwrap();
        let base = weighted_seminorm(&g, &spec).unwrap().value;
        let scaled = weighted_seminorm(&gl, &spec).unwrap().value;
        let expect = lambda.powf(-sigma) * base;
        rescale_ok &= (scaled - expect).abs() <= 0.05 * expect.abs().max(1e-12);
    }
    detail.push_str("rescale λ=2 within 5%; ");

    // worked examples under refinement: seminorm 1/2, norm 1, two-term sum 3/2
    let n = 4096;
    let h = 1.0 / n as f64;
    let xs: Vec<f64> = (1..n).map(|i| i as f64 * h).collect();
    let ident = GridFunction::new(xs.clone(), xs.clone(), (0.0, 1.0)).unwrap();
    let spec10 = HolderSpec::new(1.0, 0.0).unwrap();
    let v_half = weighted_seminorm(&ident, &spec10).unwrap().value;
    let ones = GridFunction::sample(0.0f64, 1.0, 512, |_| 1.0).unwrap();
    let v_one = weighted_norm(&ones, &HolderSpec::new(0.5, 0.0).unwrap()).unwrap();
    let v_sum = weighted_norm(&ident, &spec10).unwrap();
    let examples_ok = (v_half - 0.5).abs() <= 0.01
        && (v_one - 1.0).abs() <= 0.02
        && (v_sum - 1.5).abs() <= 0.03;
    detail.push_str(&format!("examples: {v_half:.4}, {v_one:.4}, {v_sum:.4}"));
    criterion(
        "13",
        "rescale-order identity within 5% at λ=2; worked examples 1/2, 1, 3/2 within 2%",
        rescale_ok && examples_ok,
        detail,
    );
}

#[test]
fn criterion_14_log_bound() {
    let r = exp_half_order_log(&params(0.5, 1, 256), 10).unwrap();
    let slope = r.metrics["power_slope"];
    criterion(
        "14",
        "(-Δ)^{s/2} of the ball solution grows at most like 1+|log δ| (power slope ≥ −0.05)",
        slope >= -0.05,
        format!("power slope {slope:.3}, log-fit slope {:.3}", r.metrics["log_fit_slope"]),
    );
}
