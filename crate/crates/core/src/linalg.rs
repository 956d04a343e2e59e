//! Dense LU solve with partial pivoting. Internal plumbing for the
//! collocation solver.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// LU factorization (in place, row-major) with row pivoting.
pub struct LuFactors<T> {
    lu: Vec<T>,
    pivots: Vec<usize>,
    n: usize,
}

pub fn lu_factor<T: Real>(mut a: Vec<T>, n: usize) -> Result<LuFactors<T>> {
    assert_eq!(a.len(), n * n);
    let mut pivots = vec![0usize; n];
    for col in 0..n {
        let mut p = col;
        let mut best = a[col * n + col].abs();
        for r in (col + 1)..n {
            let v = a[r * n + col].abs();
            if v > best {
                best = v;
                p = r;
            }
        }
        if !(best > T::zero()) || !best.is_finite() {
            return Err(Error::SingularSystem { pivot: col });
        }
        pivots[col] = p;
        if p != col {
            for k in 0..n {
                a.swap(col * n + k, p * n + k);
            }
        }
        let d = a[col * n + col];
        for r in (col + 1)..n {
            let m = a[r * n + col] / d;
            a[r * n + col] = m;
            for k in (col + 1)..n {
                let upper = a[col * n + k];
                a[r * n + k] = a[r * n + k] - m * upper;
            }
        }
    }
    Ok(LuFactors { lu: a, pivots, n })
}

impl<T: Real> LuFactors<T> {
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let mut x = b.to_vec();
        for col in 0..n {
            x.swap(col, self.pivots[col]);
            for r in (col + 1)..n {
                let m = self.lu[r * n + col];
                let xc = x[col];
                x[r] = x[r] - m * xc;
            }
        }
        for col in (0..n).rev() {
            x[col] = x[col] / self.lu[col * n + col];
            for r in 0..col {
                let u = self.lu[r * n + col];
                let xc = x[col];
                x[r] = x[r] - u * xc;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        // A = [[2,1],[1,3]], b = [5, 10] → x = [1, 3]
        let f = lu_factor(vec![2.0f64, 1.0, 1.0, 3.0], 2).unwrap();
        let x = f.solve(&[5.0, 10.0]);
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let f = lu_factor(vec![0.0f64, 1.0, 1.0, 0.0], 2).unwrap();
        let x = f.solve(&[2.0, 3.0]);
        assert!((x[0] - 3.0).abs() < 1e-14);
        assert!((x[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_singular() {
        assert!(matches!(
            lu_factor(vec![1.0f64, 2.0, 2.0, 4.0], 2),
            Err(Error::SingularSystem { .. })
        ));
    }

    #[test]
    fn random_residual_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 40;
        let a: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        // diagonally boost to keep it well conditioned
        let mut m = a.clone();
        for i in 0..n {
            m[i * n + i] += 8.0;
        }
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = lu_factor(m.clone(), n).unwrap().solve(&b);
        for i in 0..n {
            let mut r = -b[i];
            for j in 0..n {
                r += m[i * n + j] * x[j];
            }
            assert!(r.abs() < 1e-12);
        }
    }
}
