//! Domains (interval, ball), the boundary distance δ, its truncated power
//! δ₀^s, and the boundary-anchored sets D_R and D⁺_{κ'R} used by the
//! oscillation-decay experiments.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::scalar::{cast, Real};

/// Ratio κ fixed by the oscillation iteration.
pub const KAPPA_NUM: f64 = 1.0 / 16.0;
/// κ' = 1/2 + 2κ.
pub const KAPPA_PRIME_NUM: f64 = 5.0 / 8.0;

/// A bounded domain with closed-form distance function and interior/exterior
/// ball radius ρ₀. Only intervals (n = 1) and balls (n ∈ {1, 2}) are supported;
/// both satisfy the interior and exterior ball condition exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain<T> {
    Interval { a: T, b: T },
    Ball { center: Point<T>, radius: T },
}

impl<T: Real> Domain<T> {
    pub fn interval(a: T, b: T) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidParameter(format!("interval needs a < b, got [{a}, {b}]")));
        }
        Ok(Domain::Interval { a, b })
    }

    pub fn ball(center: Point<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::InvalidParameter(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Domain::Ball { center, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Interval { .. } => 1,
            Domain::Ball { center, .. } => center.dim(),
        }
    }

    /// Radius of the interior/exterior tangent balls: half-width for an
    /// interval, the radius itself for a ball.
    pub fn rho0(&self) -> T {
        match *self {
            Domain::Interval { a, b } => (b - a) * cast(0.5),
            Domain::Ball { radius, .. } => radius,
        }
    }

    pub fn diam(&self) -> T {
        match *self {
            Domain::Interval { a, b } => b - a,
            Domain::Ball { radius, .. } => radius + radius,
        }
    }

    /// dist(x, ∂Ω), defined for every x (inside or outside).
    pub fn distance(&self, x: &Point<T>) -> T {
        match *self {
            Domain::Interval { a, b } => (x.x() - a).abs().min((b - x.x()).abs()),
            Domain::Ball { center, radius } => (x.dist(&center) - radius).abs(),
        }
    }

    /// Signed distance, positive inside Ω.
    pub fn signed_distance(&self, x: &Point<T>) -> T {
        match *self {
            Domain::Interval { a, b } => (x.x() - a).min(b - x.x()),
            Domain::Ball { center, radius } => radius - x.dist(&center),
        }
    }

    pub fn contains(&self, x: &Point<T>) -> bool {
        self.signed_distance(x) > T::zero()
    }

    /// δ₀(x)^s = δ(x)^s inside Ω, zero outside.
    pub fn delta0_pow(&self, s: T, x: &Point<T>) -> T {
        let d = self.signed_distance(x);
        if d > T::zero() {
            d.powf(s)
        } else {
            T::zero()
        }
    }

    /// Nearest boundary point. For a ball this is undefined at the exact
    /// center; the caller gets an arbitrary boundary point there.
    pub fn project_to_boundary(&self, x: &Point<T>) -> Point<T> {
        match *self {
            Domain::Interval { a, b } => {
                if x.x() - a <= b - x.x() {
                    Point::d1(a)
                } else {
                    Point::d1(b)
                }
            }
            Domain::Ball { center, radius } => {
                let v = x.sub(&center);
                let r = v.norm();
                if r == T::zero() {
                    return if center.dim() == 1 {
                        Point::d1(center.x() + radius)
                    } else {
                        Point::d2(center.x() + radius, center.y())
                    };
                }
                center.add(&v.scale(radius / r))
            }
        }
    }

    /// Boundary point with its unit outward normal.
    pub fn boundary_point_at(&self, x0: &Point<T>) -> Result<BoundaryPoint<T>> {
        let tol = cast::<T>(1e-10) * self.rho0();
        if self.distance(x0) > tol {
            return Err(Error::InvalidParameter(format!(
                "point is not on the boundary (distance {})",
                self.distance(x0)
            )));
        }
        let nu = match *self {
            Domain::Interval { a, b } => {
                if (x0.x() - a).abs() <= (x0.x() - b).abs() {
                    Point::d1(-T::one())
                } else {
                    Point::d1(T::one())
                }
            }
            Domain::Ball { center, .. } => {
                let v = x0.sub(&center);
                v.scale(T::one() / v.norm())
            }
        };
        Ok(BoundaryPoint { position: *x0, normal: nu })
    }
}

/// A point of ∂Ω together with its unit outward normal.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryPoint<T> {
    pub position: Point<T>,
    pub normal: Point<T>,
}

/// The sets D_R(x₀) = B_R(x₀) ∩ Ω and
/// D⁺_{κ'R}(x₀) = B_{κ'R}(x₀) ∩ {x ∈ Ω : (x₀ − x)·ν(x₀) ≥ 2κR},
/// with κ = 1/16 and κ' = 5/8.
#[derive(Clone, Copy, Debug)]
pub struct KrylovSetSpec<T> {
    pub x0: BoundaryPoint<T>,
    pub radius: T,
    pub kappa: T,
    pub kappa_prime: T,
}

impl<T: Real> KrylovSetSpec<T> {
    /// Rejects R > ρ₀: the geometric inclusions behind the oscillation
    /// iteration are only guaranteed up to that scale.
    pub fn new(dom: &Domain<T>, x0: BoundaryPoint<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::InvalidParameter(format!("Krylov radius must be positive, got {radius}")));
        }
        if radius > dom.rho0() {
            return Err(Error::InvalidParameter(format!(
                "Krylov radius {radius} exceeds rho0 = {}",
                dom.rho0()
            )));
        }
        Ok(KrylovSetSpec {
            x0,
            radius,
            kappa: cast(KAPPA_NUM),
            kappa_prime: cast(KAPPA_PRIME_NUM),
        })
    }

    /// x ∈ D_R(x₀)?
    pub fn in_dr(&self, dom: &Domain<T>, x: &Point<T>) -> bool {
        dom.contains(x) && x.dist(&self.x0.position) < self.radius
    }

    /// x ∈ D⁺_{κ'R}(x₀)?
    pub fn in_dr_plus(&self, dom: &Domain<T>, x: &Point<T>) -> bool {
        if !dom.contains(x) {
            return false;
        }
        if x.dist(&self.x0.position) >= self.kappa_prime * self.radius {
            return false;
        }
        let depth = self.x0.position.sub(x).dot(&self.x0.normal);
        depth >= cast::<T>(2.0) * self.kappa * self.radius
    }
}
