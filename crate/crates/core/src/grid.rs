//! Sampled scalar functions on ordered 1-D nodes, extended by zero outside
//! their interval.

use crate::error::{Error, Result};
use crate::scalar::{cast, Real};

#[derive(Clone, Debug)]
pub struct GridFunction<T> {
    xs: Vec<T>,
    values: Vec<T>,
    /// The open interval U the samples live in; distance weights are taken
    /// with respect to its endpoints.
    bounds: (T, T),
}

impl<T: Real> GridFunction<T> {
    pub fn new(xs: Vec<T>, values: Vec<T>, bounds: (T, T)) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} nodes vs {} values",
                xs.len(),
                values.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidParameter("need at least 2 samples".into()));
        }
        if !xs.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter("nodes must be strictly increasing".into()));
        }
        if !(bounds.0 <= xs[0] && *xs.last().unwrap() <= bounds.1) {
            return Err(Error::InvalidParameter("nodes outside the stated bounds".into()));
        }
        Ok(GridFunction { xs, values, bounds })
    }

    /// Uniform samples of f at a + ih, i = 0..=n.
    pub fn sample<F: Fn(T) -> T>(a: T, b: T, n: usize, f: F) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("need n >= 2 cells".into()));
        }
        let h = (b - a) / cast::<T>(n as f64);
        let xs: Vec<T> = (0..=n).map(|i| a + h * cast::<T>(i as f64)).collect();
        let values = xs.iter().map(|&x| f(x)).collect();
        GridFunction::new(xs, values, (a, b))
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn bounds(&self) -> (T, T) {
        self.bounds
    }

    /// Smallest consecutive node gap.
    pub fn spacing(&self) -> T {
        self.xs
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(T::infinity(), |a, b| a.min(b))
    }

    /// True when consecutive gaps agree to relative 1e-9 (finite differences
    /// require this).
    pub fn is_uniform(&self) -> bool {
        let h = self.xs[1] - self.xs[0];
        self.xs
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= cast::<T>(1e-9) * h)
    }

    /// dist(x_i, ∂U).
    pub fn dist_to_boundary(&self, i: usize) -> T {
        (self.xs[i] - self.bounds.0).min(self.bounds.1 - self.xs[i])
    }

    pub fn sup_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |a, v| a.max(v.abs()))
    }

    /// Piecewise-linear value at x, zero outside the bounds. The boundary
    /// anchors are the first/last samples (exactly zero for solution grids).
    pub fn eval_linear(&self, x: T) -> T {
        if x <= self.xs[0] || x >= *self.xs.last().unwrap() {
            return if x == self.xs[0] {
                self.values[0]
            } else if x == *self.xs.last().unwrap() {
                *self.values.last().unwrap()
            } else {
                T::zero()
            };
        }
        let mut lo = 0usize;
        let mut hi = self.xs.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = (x - self.xs[lo]) / (self.xs[hi] - self.xs[lo]);
        self.values[lo] + t * (self.values[hi] - self.values[lo])
    }

    /// Subgrid of nodes with dist(x, ∂U) ≥ rho, re-bounded to the shrunk
    /// interval {δ ≥ rho}.
    pub fn restrict_interior(&self, rho: T) -> Result<GridFunction<T>> {
        let (a, b) = self.bounds;
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for (x, v) in self.xs.iter().zip(&self.values) {
            if (*x - a).min(b - *x) >= rho {
                xs.push(*x);
                values.push(*v);
            }
        }
        if xs.len() < 2 {
            return Err(Error::GridTooCoarse { pairs: xs.len(), min_pairs: 2 });
        }
        GridFunction::new(xs, values, (a + rho, b - rho))
    }
}
