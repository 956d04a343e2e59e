//! Explicit solutions and barrier constructions: the ball solution with unit
//! right-hand side, the s-harmonic half-space profile (x₊)^s, the fractional
//! Kelvin transform, a calibrated exterior supersolution φ₁ and interior
//! subsolution ψ, and the truncated distance power δ₀^s as a function handle.

use crate::error::{Error, Result};
use crate::geometry::Domain;
use crate::operator::{
    frac_laplacian, FracOrder, FunctionHandle, QuadratureSpec, SingularFeature, SmoothnessHint,
};
use crate::point::Point;
use crate::scalar::{cast, gamma, Real};

/// Solution of (-Δ)^s u = 1 in B_r(x₀), u ≡ 0 outside:
/// u(x) = coeff · (r² − |x−x₀|²)₊^s with
/// coeff = 2^{−2s} Γ(n/2) / (Γ((n+2s)/2) Γ(1+s)).
#[derive(Clone, Copy, Debug)]
pub struct BallSolution<T> {
    pub dim: usize,
    pub order: T,
    pub radius: T,
    pub center: Point<T>,
    pub coeff: T,
}

/// The coefficient of the explicit ball solution.
pub fn ball_coeff<T: Real>(n: usize, s: T) -> T {
    let half_n = cast::<T>(n as f64 * 0.5);
    cast::<T>(0.25).powf(s) * gamma(half_n) / (gamma(half_n + s) * gamma(T::one() + s))
}

impl<T: Real> BallSolution<T> {
    pub fn eval(&self, x: &Point<T>) -> T {
        let d2 = self.radius * self.radius - x.dist(&self.center).powi(2);
        if d2 > T::zero() {
            self.coeff * d2.powf(self.order)
        } else {
            T::zero()
        }
    }

    pub fn handle(&self) -> FunctionHandle<T> {
        let me = *self;
        FunctionHandle::new(move |x| me.eval(x), T::zero(), SmoothnessHint::C2NearX)
            .with_singularities(vec![SingularFeature::Sphere {
                center: self.center,
                radius: self.radius,
            }])
            .with_support(self.center, self.radius)
    }
}

pub fn ball_solution<T: Real>(n: usize, s: FracOrder<T>, r: T, center: Point<T>) -> Result<BallSolution<T>> {
    if !(r > T::zero()) {
        return Err(Error::InvalidParameter(format!("ball radius must be positive, got {r}")));
    }
    if center.dim() != n {
        return Err(Error::InvalidParameter(format!(
            "center has dim {} but n = {n}",
            center.dim()
        )));
    }
    Ok(BallSolution { dim: n, order: s.value(), radius: r, center, coeff: ball_coeff(n, s.value()) })
}

/// The 1-D half-space profile φ₀(x) = (x₊)^s, s-harmonic on the positive axis.
pub fn halfspace_profile<T: Real>(s: FracOrder<T>) -> FunctionHandle<T> {
    let sv = s.value();
    FunctionHandle::new(
        move |x: &Point<T>| if x.x() > T::zero() { x.x().powf(sv) } else { T::zero() },
        sv,
        SmoothnessHint::C2NearX,
    )
    .with_singularities(vec![SingularFeature::Point(Point::d1(T::zero()))])
}

/// δ₀^s = δ^s χ_Ω as a function handle, with the boundary and the distance
/// ridge registered as singular features.
pub fn delta0_profile<T: Real>(dom: &Domain<T>, s: T) -> FunctionHandle<T> {
    let d = *dom;
    let mut features = Vec::new();
    let support = match d {
        Domain::Interval { a, b } => {
            let mid = (a + b) * cast(0.5);
            features.push(SingularFeature::Point(Point::d1(a)));
            features.push(SingularFeature::Point(Point::d1(b)));
            features.push(SingularFeature::Point(Point::d1(mid)));
            (Point::d1(mid), (b - a) * cast(0.5))
        }
        Domain::Ball { center, radius } => {
            features.push(SingularFeature::Sphere { center, radius });
            features.push(SingularFeature::Point(center));
            (center, radius)
        }
    };
    FunctionHandle::new(move |x| d.delta0_pow(s, x), T::zero(), SmoothnessHint::C2NearX)
        .with_singularities(features)
        .with_support(support.0, support.1)
}

/// Fractional Kelvin transform u*(x) = |x|^{2s−n} u(x/|x|²). Undefined at the
/// origin (the evaluator yields NaN there); use [`kelvin_eval_checked`] for a
/// checked evaluation. Satisfies (-Δ)^s u*(x) = |x|^{−2s−n} (-Δ)^s u(x*).
pub fn kelvin_transform<T: Real>(u: &FunctionHandle<T>, n: usize, s: T) -> FunctionHandle<T> {
    let exponent = s + s - cast::<T>(n as f64);
    let ue = u.clone();
    let mut features = vec![SingularFeature::Point(origin::<T>(n))];
    for f in u.singularities() {
        if let Some(img) = invert_feature(f) {
            features.push(img);
        }
    }
    let eval = move |x: &Point<T>| {
        let r = x.norm();
        if r == T::zero() {
            return T::nan();
        }
        r.powf(exponent) * ue.eval(&x.invert())
    };
    FunctionHandle::new(eval, exponent.max(T::zero()), SmoothnessHint::C2NearX)
        .with_singularities(features)
}

fn origin<T: Real>(n: usize) -> Point<T> {
    if n == 1 {
        Point::d1(T::zero())
    } else {
        Point::d2(T::zero(), T::zero())
    }
}

/// Image of a singular feature under inversion through the unit sphere.
/// Spheres through the origin invert to hyperplanes, which this bookkeeping
/// cannot represent; those are dropped.
fn invert_feature<T: Real>(f: &SingularFeature<T>) -> Option<SingularFeature<T>> {
    match f {
        SingularFeature::Point(p) => {
            if p.norm() == T::zero() {
                None
            } else {
                Some(SingularFeature::Point(p.invert()))
            }
        }
        SingularFeature::Sphere { center, radius } => {
            let c2 = center.dot(center);
            let denom = c2 - *radius * *radius;
            if denom.abs() < cast::<T>(1e-14) * (T::one() + c2) {
                return None;
            }
            let inv = T::one() / denom;
            Some(SingularFeature::Sphere {
                center: center.scale(inv),
                radius: (*radius * inv).abs(),
            })
        }
    }
}

/// Checked Kelvin evaluation: rejects the origin.
pub fn kelvin_eval_checked<T: Real>(u_star: &FunctionHandle<T>, x: &Point<T>) -> Result<T> {
    if x.norm() == T::zero() {
        return Err(Error::EvaluationAtOrigin);
    }
    Ok(u_star.eval(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarrierKind {
    SupersolutionPhi1,
    SubsolutionPsi,
}

/// A calibrated barrier: the amplitude that makes the sampled differential
/// inequality hold, the achieved margin, and the fitted envelope constant.
#[derive(Clone, Copy, Debug)]
pub struct Barrier<T> {
    pub kind: BarrierKind,
    pub dim: usize,
    pub order: T,
    /// Calibrated amplitude: C in φ₁ = C·(Kelvin part) + ξ, or the jump height
    /// of ψ = (1−|x|²)₊^s + C·χ_{B̄_{1/4}}.
    pub amplitude: T,
    /// min (-Δ)^s φ₁ over the grid (supersolution), or −max (-Δ)^s ψ
    /// (subsolution); positive means the inequality holds strictly.
    pub inequality_margin: T,
    /// Fitted envelope constant: C₁ with φ₁ ≤ C₁(|x|−1)^s on (1,4], or the
    /// largest c with ψ ≥ c(1−|x|)^s on B₁.
    pub envelope_constant: T,
    pub grid_points: usize,
}

const BARRIER_GRID: usize = 200;
const ENVELOPE_GRID: usize = 2000;

fn radial_point<T: Real>(n: usize, rho: T) -> Point<T> {
    if n == 1 {
        Point::d1(rho)
    } else {
        Point::d2(rho, T::zero())
    }
}

/// Quintic smoothstep cutoff ξ: 0 on B₄, 1 outside B₅, C² radial in between.
fn cutoff_xi<T: Real>(n: usize) -> FunctionHandle<T> {
    let eval = move |x: &Point<T>| {
        let r = x.norm();
        let four = cast::<T>(4.0);
        if r <= four {
            T::zero()
        } else if r >= cast(5.0) {
            T::one()
        } else {
            let t = r - four;
            ((cast::<T>(6.0) * t - cast(15.0)) * t + cast(10.0)) * t * t * t
        }
    };
    FunctionHandle::new(eval, T::zero(), SmoothnessHint::C2NearX).with_singularities(vec![
        SingularFeature::Sphere { center: origin::<T>(n), radius: cast(4.0) },
        SingularFeature::Sphere { center: origin::<T>(n), radius: cast(5.0) },
    ])
}

/// The Kelvin image of the unit-ball solution profile:
/// |x|^{2s−n} · coeff · (1 − |x|^{−2})^s for |x| > 1, zero on B̄₁.
/// Its fractional Laplacian is coeff⁻¹-free: (-Δ)^s K(x) = |x|^{−n−2s} · 1
/// for 1 < |x|, by the Kelvin identity applied to the ball solution.
fn kelvin_ball_part<T: Real>(n: usize, s: T) -> FunctionHandle<T> {
    let coeff = ball_coeff(n, s);
    let expo = s + s - cast::<T>(n as f64);
    let eval = move |x: &Point<T>| {
        let r = x.norm();
        if r <= T::one() {
            return T::zero();
        }
        let inner = T::one() - T::one() / (r * r);
        r.powf(expo) * coeff * inner.powf(s)
    };
    FunctionHandle::new(eval, expo.max(T::zero()), SmoothnessHint::C2NearX)
        .with_singularities(vec![SingularFeature::Sphere { center: origin::<T>(n), radius: T::one() }])
}

/// Exterior supersolution: φ₁ = amplitude·K + ξ with (-Δ)^s φ₁ ≥ 1 sampled on
/// B₄∖B₁, φ₁ ≡ 0 on B̄₁, and 1 ≤ φ₁ outside B₄. The amplitude is calibrated
/// numerically on the verification grid.
pub fn supersolution_phi1<T: Real>(
    n: usize,
    s: FracOrder<T>,
    q: &QuadratureSpec<T>,
) -> Result<(Barrier<T>, FunctionHandle<T>)> {
    let sv = s.value();
    let k_part = kelvin_ball_part(n, sv);
    let xi = cutoff_xi(n);
    let cap = cast::<T>(10.0) * cast::<T>(4.0).powf(sv + sv + cast(n as f64));

    // sample (-Δ)^s of both parts on the verification grid, then pick the
    // smallest amplitude meeting the inequality with 5% slack
    let lo = cast::<T>(1.05);
    let hi = cast::<T>(3.95);
    let m = cast::<T>((BARRIER_GRID - 1) as f64);
    let mut k_lap = Vec::with_capacity(BARRIER_GRID);
    let mut xi_lap = Vec::with_capacity(BARRIER_GRID);
    for i in 0..BARRIER_GRID {
        let rho = lo + (hi - lo) * cast::<T>(i as f64) / m;
        let x = radial_point(n, rho);
        let qq = QuadratureSpec { split_radius: (rho - T::one()) * cast(0.45), ..*q };
        k_lap.push(frac_laplacian(&k_part, s, &x, &qq)?);
        xi_lap.push(frac_laplacian(&xi, s, &x, &qq)?);
    }
    let mut amp_needed = T::zero();
    for (kl, xl) in k_lap.iter().zip(&xi_lap) {
        if *kl <= T::zero() {
            return Err(Error::CalibrationFailed {
                cap: cap.to_f64().unwrap_or(f64::NAN),
                best_margin: kl.to_f64().unwrap_or(f64::NAN),
            });
        }
        amp_needed = amp_needed.max((T::one() - *xl) / *kl);
    }
    let amplitude = amp_needed * cast::<T>(1.05);
    if amplitude > cap {
        let margin = k_lap
            .iter()
            .zip(&xi_lap)
            .map(|(kl, xl)| cap * *kl + *xl - T::one())
            .fold(T::infinity(), |a, b| a.min(b));
        return Err(Error::CalibrationFailed {
            cap: cap.to_f64().unwrap_or(f64::NAN),
            best_margin: margin.to_f64().unwrap_or(f64::NAN),
        });
    }
    let margin = k_lap
        .iter()
        .zip(&xi_lap)
        .map(|(kl, xl)| amplitude * *kl + *xl)
        .fold(T::infinity(), |a, b| a.min(b));

    let phi1 = FunctionHandle::linear_combination(amplitude, &k_part, T::one(), &xi);

    // fitted envelope constant on (1, 4], plus the sup outside B₄ on a bounded
    // window; the lemma's upper bound uses whichever is larger
    let mut c1 = T::zero();
    for i in 1..=ENVELOPE_GRID {
        let rho = T::one()
            + (cast::<T>(3.0)) * cast::<T>(i as f64) / cast::<T>(ENVELOPE_GRID as f64);
        let v = phi1.eval(&radial_point(n, rho));
        c1 = c1.max(v / (rho - T::one()).powf(sv));
    }
    for i in 0..ENVELOPE_GRID {
        let rho = cast::<T>(4.0)
            + cast::<T>(6.0) * cast::<T>(i as f64) / cast::<T>(ENVELOPE_GRID as f64);
        c1 = c1.max(phi1.eval(&radial_point(n, rho)));
    }

    Ok((
        Barrier {
            kind: BarrierKind::SupersolutionPhi1,
            dim: n,
            order: sv,
            amplitude,
            inequality_margin: margin - T::one(),
            envelope_constant: c1,
            grid_points: BARRIER_GRID,
        },
        phi1,
    ))
}

/// Interior subsolution: ψ = (1−|x|²)₊^s + C·χ_{B̄_{1/4}} with
/// (-Δ)^s ψ ≤ 0 sampled on {0.3 ≤ |x| ≤ 0.95}. Discontinuous across |x| = 1/4;
/// evaluation points stay clear of the jump.
pub fn subsolution_psi<T: Real>(
    n: usize,
    s: FracOrder<T>,
    q: &QuadratureSpec<T>,
) -> Result<(Barrier<T>, FunctionHandle<T>)> {
    let sv = s.value();
    let quarter = cast::<T>(0.25);
    let base = FunctionHandle::new(
        move |x: &Point<T>| {
            let d2 = T::one() - x.dot(x);
            if d2 > T::zero() {
                d2.powf(sv)
            } else {
                T::zero()
            }
        },
        T::zero(),
        SmoothnessHint::C2NearX,
    )
    .with_singularities(vec![SingularFeature::Sphere { center: origin::<T>(n), radius: T::one() }])
    .with_support(origin::<T>(n), T::one());

    let indicator = FunctionHandle::new(
        move |x: &Point<T>| if x.norm() <= quarter { T::one() } else { T::zero() },
        T::zero(),
        SmoothnessHint::C2NearX,
    )
    .with_singularities(vec![SingularFeature::Sphere { center: origin::<T>(n), radius: quarter }])
    .with_support(origin::<T>(n), quarter);

    let cap = cast::<T>(10.0) * cast::<T>(4.0).powf(sv + sv + cast(n as f64));
    let lo = cast::<T>(0.3);
    let hi = cast::<T>(0.95);
    let m = cast::<T>((BARRIER_GRID - 1) as f64);
    let mut base_lap = Vec::with_capacity(BARRIER_GRID);
    let mut ind_lap = Vec::with_capacity(BARRIER_GRID);
    for i in 0..BARRIER_GRID {
        let rho = lo + (hi - lo) * cast::<T>(i as f64) / m;
        let x = radial_point(n, rho);
        base_lap.push(frac_laplacian(&base, s, &x, q)?);
        ind_lap.push(frac_laplacian(&indicator, s, &x, q)?);
    }
    let mut c_needed = T::one();
    for (bl, il) in base_lap.iter().zip(&ind_lap) {
        if *il >= T::zero() {
            return Err(Error::CalibrationFailed {
                cap: cap.to_f64().unwrap_or(f64::NAN),
                best_margin: il.to_f64().unwrap_or(f64::NAN),
            });
        }
        c_needed = c_needed.max(*bl / -*il);
    }
    let amplitude = c_needed * cast::<T>(1.05);
    if amplitude > cap {
        let worst = base_lap
            .iter()
            .zip(&ind_lap)
            .map(|(bl, il)| -(*bl + cap * *il))
            .fold(T::infinity(), |a, b| a.min(b));
        return Err(Error::CalibrationFailed {
            cap: cap.to_f64().unwrap_or(f64::NAN),
            best_margin: worst.to_f64().unwrap_or(f64::NAN),
        });
    }
    let margin = base_lap
        .iter()
        .zip(&ind_lap)
        .map(|(bl, il)| -(*bl + amplitude * *il))
        .fold(T::infinity(), |a, b| a.min(b));

    let psi = FunctionHandle::linear_combination(T::one(), &base, amplitude, &indicator);

    // fitted c with ψ ≥ c(1−|x|)^s on B₁
    let mut c_env = T::infinity();
    for i in 0..ENVELOPE_GRID {
        let rho = cast::<T>(0.999) * cast::<T>(i as f64) / cast::<T>(ENVELOPE_GRID as f64);
        let v = psi.eval(&radial_point(n, rho));
        c_env = c_env.min(v / (T::one() - rho).powf(sv));
    }

    Ok((
        Barrier {
            kind: BarrierKind::SubsolutionPsi,
            dim: n,
            order: sv,
            amplitude,
            inequality_margin: margin,
            envelope_constant: c_env,
            grid_points: BARRIER_GRID,
        },
        psi,
    ))
}
