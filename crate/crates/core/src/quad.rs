//! Composite Gauss-Legendre panels. Internal plumbing for the singular-integral
//! evaluators in [`crate::operator`].

use crate::scalar::{cast, Real};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussRule<T> {
    /// Newton iteration on Legendre polynomials; standard construction.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = cast::<T>(n as f64);
        for i in 0..n.div_ceil(2) {
            // Chebyshev-based initial guess
            let theta = std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5);
            let mut x = cast::<T>(theta.cos());
            let mut dp;
            loop {
                // evaluate P_n and P_n' by the three-term recurrence
                let mut p0 = T::one();
                let mut p1 = x;
                for k in 2..=n {
                    let kf = cast::<T>(k as f64);
                    let p2 = ((cast::<T>(2.0) * kf - T::one()) * x * p1
                        - (kf - T::one()) * p0)
                        / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let p = if n == 1 { x } else { p1 };
                let pm1 = if n == 1 { T::one() } else { p0 };
                dp = nf * (x * p - pm1) / (x * x - T::one());
                let dx = p / dp;
                x = x - dx;
                if dx.abs() <= T::epsilon() * (T::one() + x.abs()) {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = cast::<T>(2.0) / ((T::one() - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    /// ∫_a^b f(z) dz by the rule mapped onto [a, b].
    pub fn integrate<F: Fn(T) -> T>(&self, a: T, b: T, f: F) -> T {
        let half = cast::<T>(0.5);
        let mid = (a + b) * half;
        let rad = (b - a) * half;
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + *w * f(mid + rad * *x);
        }
        acc * rad
    }
}

/// ∫_a^b f with the panel [a, b] refined dyadically toward the endpoint `a`
/// (`toward_left`) or `b`, for integrands with a weak endpoint singularity.
/// `levels` halvings leave an unresolved sliver whose width shrinks by 2^levels.
pub fn graded_toward<T: Real, F: Fn(T) -> T>(
    rule: &GaussRule<T>,
    a: T,
    b: T,
    toward_left: bool,
    levels: usize,
    f: &F,
) -> T {
    let mut acc = T::zero();
    let half = cast::<T>(0.5);
    let mut lo = a;
    let mut hi = b;
    for _ in 0..levels {
        let mid = (lo + hi) * half;
        if toward_left {
            acc = acc + rule.integrate(mid, hi, f);
            hi = mid;
        } else {
            acc = acc + rule.integrate(lo, mid, f);
            lo = mid;
        }
        if hi - lo <= T::epsilon() * (a.abs() + b.abs() + T::one()) {
            return acc;
        }
    }
    acc + rule.integrate(lo, hi, f)
}
