//! Plain and distance-weighted Hölder seminorm estimation on sampled
//! functions, the explicit Hölder extension operator, and log-log rate
//! fitting.
//!
//! Throughout, C^β with β > 0 means C^{k,β'} where k is the greatest integer
//! strictly below β and β' = β − k ∈ (0, 1]; at β' = 1 the top term is the
//! Lipschitz difference quotient of D^k, which on convex sets equals the
//! sup of |D^{k+1}| wherever the latter exists. Pair scans return a certified
//! lower bound of the continuum seminorm: k-th derivatives come from
//! second-order centered differences and pairs closer than four grid cells
//! are excluded to stay above the finite-difference noise floor.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::operator::{FunctionHandle, SmoothnessHint};
use crate::point::Point;
use crate::scalar::{cast, Real};

const MIN_SEPARATION_CELLS: f64 = 4.0;
const MIN_PAIRS: usize = 10;
const MAX_SCAN_NODES: usize = 4000;

/// β = k + β′ with k integer, β′ ∈ (0, 1], plus the weight order σ ≥ −β.
#[derive(Clone, Copy, Debug)]
pub struct HolderSpec<T> {
    pub beta: T,
    pub k: usize,
    pub beta_prime: T,
    pub sigma: T,
}

impl<T: Real> HolderSpec<T> {
    pub fn new(beta: T, sigma: T) -> Result<Self> {
        if !(beta > T::zero()) {
            return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
        }
        if sigma < -beta {
            return Err(Error::InvalidParameter(format!("sigma = {sigma} below -beta = {}", -beta)));
        }
        // greatest integer strictly below beta, so beta' ∈ (0, 1]
        let mut k = beta.floor();
        if k == beta {
            k = k - T::one();
        }
        let kk = k.to_f64().unwrap() as usize;
        if kk > 2 {
            return Err(Error::InvalidParameter(format!(
                "derivative order {kk} unsupported (beta = {beta}; need beta <= 3)"
            )));
        }
        Ok(HolderSpec { beta, k: kk, beta_prime: beta - k, sigma })
    }

    pub fn plain(beta: T) -> Result<Self> {
        Self::new(beta, T::zero())
    }
}

/// Result of a pair scan: the seminorm lower bound with its evidence.
#[derive(Clone, Copy, Debug)]
pub struct HolderEstimate<T> {
    pub value: T,
    pub argmax_pair: (T, T),
    pub pairs_scanned: usize,
    pub min_separation: T,
}

/// k-th derivative samples by centered second-order differences; nodes at the
/// ends that lack a full stencil are dropped. Returns (xs, d^k values,
/// boundary distances w.r.t. the grid's U).
fn derivative_samples<T: Real>(f: &GridFunction<T>, k: usize) -> Result<(Vec<T>, Vec<T>, Vec<T>)> {
    if k > 0 && !f.is_uniform() {
        return Err(Error::InvalidParameter(
            "finite differences need a uniform grid".into(),
        ));
    }
    let xs = f.xs();
    let v = f.values();
    let n = xs.len();
    let keep = |i: usize| -> T { f.dist_to_boundary(i) };
    let (sx, sv, sd) = match k {
        0 => (
            xs.to_vec(),
            v.to_vec(),
            (0..n).map(keep).collect::<Vec<_>>(),
        ),
        1 => {
            let h = xs[1] - xs[0];
            let two_h = h + h;
            let mut sx = Vec::with_capacity(n.saturating_sub(2));
            let mut sv = Vec::with_capacity(n.saturating_sub(2));
            let mut sd = Vec::with_capacity(n.saturating_sub(2));
            for i in 1..n - 1 {
                sx.push(xs[i]);
                sv.push((v[i + 1] - v[i - 1]) / two_h);
                sd.push(keep(i));
            }
            (sx, sv, sd)
        }
        2 => {
            let h = xs[1] - xs[0];
            let h2 = h * h;
            let mut sx = Vec::with_capacity(n.saturating_sub(2));
            let mut sv = Vec::with_capacity(n.saturating_sub(2));
            let mut sd = Vec::with_capacity(n.saturating_sub(2));
            for i in 1..n - 1 {
                sx.push(xs[i]);
                sv.push((v[i + 1] - (v[i] + v[i]) + v[i - 1]) / h2);
                sd.push(keep(i));
            }
            (sx, sv, sd)
        }
        _ => {
            return Err(Error::InvalidParameter(format!("derivative order {k} unsupported")));
        }
    };
    Ok((sx, sv, sd))
}

/// Stratified thinning to at most `MAX_SCAN_NODES` nodes; sup statistics are
/// robust to this and the scanned pair count is recorded in the estimate.
fn thin<T: Copy>(xs: &mut Vec<T>, vs: &mut Vec<T>, ds: &mut Vec<T>) {
    let n = xs.len();
    if n <= MAX_SCAN_NODES {
        return;
    }
    let stride = n.div_ceil(MAX_SCAN_NODES);
    let mut keep_idx = (0..n).step_by(stride).collect::<Vec<_>>();
    if *keep_idx.last().unwrap() != n - 1 {
        keep_idx.push(n - 1);
    }
    *xs = keep_idx.iter().map(|&i| xs[i]).collect();
    *vs = keep_idx.iter().map(|&i| vs[i]).collect();
    *ds = keep_idx.iter().map(|&i| ds[i]).collect();
}

fn pair_scan<T: Real>(
    xs: &[T],
    vs: &[T],
    ds: &[T],
    beta_prime: T,
    weight_exponent: Option<T>,
    min_sep: T,
    max_sep: Option<T>,
) -> Result<HolderEstimate<T>> {
    let mut best = T::neg_infinity();
    let mut arg = (T::zero(), T::zero());
    let mut pairs = 0usize;
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            let gap = xs[j] - xs[i];
            if gap < min_sep {
                continue;
            }
            if let Some(cap) = max_sep {
                if gap > cap {
                    break;
                }
            }
            pairs += 1;
            let mut q = (vs[i] - vs[j]).abs() / gap.powf(beta_prime);
            if let Some(e) = weight_exponent {
                q = q * ds[i].min(ds[j]).powf(e);
            }
            if q > best {
                best = q;
                arg = (xs[i], xs[j]);
            }
        }
    }
    if pairs < MIN_PAIRS {
        return Err(Error::GridTooCoarse { pairs, min_pairs: MIN_PAIRS });
    }
    Ok(HolderEstimate { value: best.max(T::zero()), argmax_pair: arg, pairs_scanned: pairs, min_separation: min_sep })
}

/// [f]_{C^β(U)} = sup |D^k f(x) − D^k f(y)| / |x−y|^{β′} over the grid.
pub fn holder_seminorm<T: Real>(f: &GridFunction<T>, beta: T) -> Result<HolderEstimate<T>> {
    let spec = HolderSpec::plain(beta)?;
    let (mut xs, mut vs, mut ds) = derivative_samples(f, spec.k)?;
    thin(&mut xs, &mut vs, &mut ds);
    let min_sep = cast::<T>(MIN_SEPARATION_CELLS) * f.spacing();
    pair_scan(&xs, &vs, &ds, spec.beta_prime, None, min_sep, None)
}

/// Scale-localized variant: the sup runs only over pairs closer than
/// `max_separation`. With max_separation ~ δ this measures the ball-local
/// seminorm sup_x [f]_{C^β(B_{δ(x)/2}(x))}, whose growth in the boundary
/// distance carries the sharp interior-estimate rate (the set version
/// saturates only slowly for β ≤ the boundary exponent). No node thinning:
/// short pairs must stay resolved.
pub fn holder_seminorm_within<T: Real>(
    f: &GridFunction<T>,
    beta: T,
    max_separation: T,
) -> Result<HolderEstimate<T>> {
    let spec = HolderSpec::plain(beta)?;
    let (xs, vs, ds) = derivative_samples(f, spec.k)?;
    let min_sep = cast::<T>(MIN_SEPARATION_CELLS) * f.spacing();
    if max_separation <= min_sep {
        return Err(Error::InvalidParameter(format!(
            "max separation {max_separation} below the noise floor {min_sep}"
        )));
    }
    pair_scan(&xs, &vs, &ds, spec.beta_prime, None, min_sep, Some(max_separation))
}

/// [f]^{(σ)}_{β;U} = sup d_{x,y}^{β+σ} |D^k f(x) − D^k f(y)| / |x−y|^{β′}.
pub fn weighted_seminorm<T: Real>(
    f: &GridFunction<T>,
    spec: &HolderSpec<T>,
) -> Result<HolderEstimate<T>> {
    let (mut xs, mut vs, mut ds) = derivative_samples(f, spec.k)?;
    thin(&mut xs, &mut vs, &mut ds);
    let min_sep = cast::<T>(MIN_SEPARATION_CELLS) * f.spacing();
    pair_scan(&xs, &vs, &ds, spec.beta_prime, Some(spec.beta + spec.sigma), min_sep, None)
}

/// The full weighted norm ‖f‖^{(σ)}_{β;U}: for σ ≥ 0 the derivative sups
/// sup d_x^{l+σ}|D^l f| for l = 0..k plus the weighted seminorm; for
/// −1 < σ < 0 the C^{−σ}(Ū) norm replaces the l = 0 term.
pub fn weighted_norm<T: Real>(f: &GridFunction<T>, spec: &HolderSpec<T>) -> Result<T> {
    if spec.sigma <= -T::one() {
        return Err(Error::InvalidParameter(format!(
            "weighted norm needs sigma > -1, got {}",
            spec.sigma
        )));
    }
    let mut total = T::zero();
    let l_start = if spec.sigma >= T::zero() {
        0
    } else {
        // ‖f‖_{C^{−σ}(Ū)} = sup |f| + [f]_{C^{−σ}}
        total = total + f.sup_abs() + holder_seminorm(f, -spec.sigma)?.value;
        1
    };
    for l in l_start..=spec.k {
        let (_, vs, ds) = derivative_samples(f, l)?;
        let e = cast::<T>(l as f64) + spec.sigma;
        let sup = vs
            .iter()
            .zip(&ds)
            .map(|(v, d)| d.powf(e) * v.abs())
            .fold(T::zero(), |a, b| a.max(b));
        total = total + sup;
    }
    Ok(total + weighted_seminorm(f, spec)?.value)
}

/// The explicit Hölder extension
/// E(w)(x) = min{ min_z (w(z) + [w]_{C^α} |z−x|^α), ‖w‖_{L^∞} },
/// built from samples; it restricts to w exactly on the sample set and does
/// not increase the seminorm or the sup norm.
#[derive(Clone)]
pub struct Extension<T> {
    pub handle: FunctionHandle<T>,
    pub seminorm: T,
    pub sup_norm: T,
}

pub fn extension_e<T: Real>(w: &GridFunction<T>, alpha: T) -> Result<Extension<T>> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0,1], got {alpha}")));
    }
    // all-pairs Hölder constant of the raw samples (no separation floor: these
    // are exact values, not finite differences)
    let xs = w.xs().to_vec();
    let vs = w.values().to_vec();
    let mut semi = T::zero();
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            let q = (vs[i] - vs[j]).abs() / (xs[j] - xs[i]).powf(alpha);
            semi = semi.max(q);
        }
    }
    let sup = w.sup_abs();
    let handle = {
        let (xs, vs) = (xs.clone(), vs.clone());
        FunctionHandle::new(
            move |p: &Point<T>| {
                let x = p.x();
                let mut best = T::infinity();
                for (z, wz) in xs.iter().zip(&vs) {
                    let cand = *wz + semi * (*z - x).abs().powf(alpha);
                    if cand < best {
                        best = cand;
                    }
                }
                best.min(sup)
            },
            T::zero(),
            SmoothnessHint::HolderOnly { alpha },
        )
    };
    Ok(Extension { handle, seminorm: semi, sup_norm: sup })
}

/// Least-squares fit of log(value) against log(ρ).
#[derive(Clone, Copy, Debug)]
pub struct RateFit<T> {
    pub slope: T,
    pub intercept: T,
    pub r_squared: T,
    /// All values equal: slope 0 and R² is meaningless.
    pub degenerate: bool,
    pub n_samples: usize,
}

pub fn rate_fit<T: Real>(samples: &[(T, T)]) -> Result<RateFit<T>> {
    if samples.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "rate fit needs >= 4 samples, got {}",
            samples.len()
        )));
    }
    let (xmin, xmax) = samples.iter().fold((T::infinity(), T::zero()), |(lo, hi), &(x, _)| {
        (lo.min(x), hi.max(x))
    });
    if xmax / xmin < cast(10.0) {
        return Err(Error::InvalidParameter(format!(
            "samples span {} < one decade",
            xmax / xmin
        )));
    }
    loglog_fit(samples)
}

/// The bare log-log least squares shared by [`rate_fit`] and the solver's
/// convergence studies (which fit over fewer-than-a-decade grids by design).
pub fn loglog_fit<T: Real>(samples: &[(T, T)]) -> Result<RateFit<T>> {
    if samples.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "log-log fit needs >= 3 samples, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|&(x, y)| !(x > T::zero()) || !(y > T::zero())) {
        return Err(Error::DegenerateData { reason: "nonpositive sample".into() });
    }
    let n = cast::<T>(samples.len() as f64);
    let logs: Vec<(T, T)> = samples.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let sx = logs.iter().fold(T::zero(), |a, p| a + p.0);
    let sy = logs.iter().fold(T::zero(), |a, p| a + p.1);
    let mx = sx / n;
    let my = sy / n;
    let sxx = logs.iter().fold(T::zero(), |a, p| a + (p.0 - mx) * (p.0 - mx));
    let sxy = logs.iter().fold(T::zero(), |a, p| a + (p.0 - mx) * (p.1 - my));
    let syy = logs.iter().fold(T::zero(), |a, p| a + (p.1 - my) * (p.1 - my));
    if syy == T::zero() {
        return Ok(RateFit {
            slope: T::zero(),
            intercept: my,
            r_squared: T::zero(),
            degenerate: true,
            n_samples: samples.len(),
        });
    }
    let slope = sxy / sxx;
    let ss_res = syy - slope * sxy;
    Ok(RateFit {
        slope,
        intercept: my - slope * mx,
        r_squared: (T::one() - ss_res / syy).max(T::zero()),
        degenerate: false,
        n_samples: samples.len(),
    })
}
