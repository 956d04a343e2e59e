//! Points of the ambient space, dimension 1 or 2 chosen at runtime.

use crate::scalar::Real;

/// A point of ℝⁿ for n ∈ {1, 2}. One-dimensional points keep a zero second
/// coordinate so that norms and differences work uniformly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point<T> {
    coords: [T; 2],
    dim: usize,
}

impl<T: Real> Point<T> {
    pub fn d1(x: T) -> Self {
        Point { coords: [x, T::zero()], dim: 1 }
    }

    pub fn d2(x: T, y: T) -> Self {
        Point { coords: [x, y], dim: 2 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// First coordinate; the whole story for 1-D points.
    pub fn x(&self) -> T {
        self.coords[0]
    }

    pub fn y(&self) -> T {
        self.coords[1]
    }

    pub fn coords(&self) -> &[T] {
        &self.coords[..self.dim]
    }

    pub fn norm(&self) -> T {
        self.coords[0].hypot(self.coords[1])
    }

    pub fn dot(&self, other: &Self) -> T {
        self.coords[0] * other.coords[0] + self.coords[1] * other.coords[1]
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Point {
            coords: [self.coords[0] - other.coords[0], self.coords[1] - other.coords[1]],
            dim: self.dim,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Point {
            coords: [self.coords[0] + other.coords[0], self.coords[1] + other.coords[1]],
            dim: self.dim,
        }
    }

    pub fn scale(&self, c: T) -> Self {
        Point { coords: [self.coords[0] * c, self.coords[1] * c], dim: self.dim }
    }

    pub fn dist(&self, other: &Self) -> T {
        self.sub(other).norm()
    }

    /// Inversion through the unit sphere, x ↦ x/|x|².
    pub fn invert(&self) -> Self {
        let r2 = self.dot(self);
        self.scale(T::one() / r2)
    }
}
