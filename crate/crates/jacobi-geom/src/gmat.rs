//! Minimal dense square matrices over a generic [`Scalar`].
//!
//! Used wherever a matrix expression must stay jet-differentiable (group
//! embeddings, exponentials along a curve parameter). Plain `f64` linear
//! algebra goes through `nalgebra` instead.

use crate::jet::Scalar;
use nalgebra::DMatrix;

#[derive(Clone, Debug)]
pub struct GMat<S> {
    pub n: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> GMat<S> {
    pub fn zeros(n: usize) -> Self {
        GMat { n, data: vec![S::from_f64(0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, S::from_f64(1.0));
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        GMat { n, data }
    }

    /// Lift an `f64` matrix into the scalar field.
    pub fn from_f64_matrix(m: &DMatrix<f64>) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        GMat::from_fn(m.nrows(), |i, j| S::from_f64(m[(i, j)]))
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.n + j].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        GMat::from_fn(self.n, |i, j| {
            let mut acc = S::from_f64(0.0);
            for k in 0..self.n {
                acc = acc + self.get(i, k) * rhs.get(k, j);
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        GMat::from_fn(self.n, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn scale(&self, s: S) -> Self {
        GMat::from_fn(self.n, |i, j| self.get(i, j) * s.clone())
    }

    /// Sup-norm of the principal values.
    pub fn sup_norm(&self) -> f64 {
        self.data.iter().map(|v| v.val().abs()).fold(0.0, f64::max)
    }

    /// Principal-value part as an `f64` matrix.
    pub fn values(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).val())
    }

    /// Truncated-series matrix exponential with scaling and squaring.
    ///
    /// The operand is halved until its sup-norm is at most 0.5, a 13-term
    /// Taylor series is summed by Horner's scheme, then the result is squared
    /// back up. Valid over any commutative scalar, jets included.
    pub fn exp(&self) -> Self {
        let norm = self.sup_norm() * self.n as f64;
        let mut squarings = 0u32;
        let mut scaled = self.clone();
        while scaled.sup_norm() * self.n as f64 > 0.5 && squarings < 60 {
            scaled = scaled.scale(S::from_f64(0.5));
            squarings += 1;
        }
        let _ = norm;
        let mut acc = GMat::identity(self.n);
        for k in (1..=13u32).rev() {
            acc = GMat::identity(self.n).add(&scaled.matmul(&acc).scale(S::from_f64(1.0 / k as f64)));
        }
        for _ in 0..squarings {
            acc = acc.matmul(&acc);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_zero_is_identity() {
        let z: GMat<f64> = GMat::zeros(4);
        let e = z.exp();
        let id = GMat::<f64>::identity(4);
        for i in 0..4 {
            for j in 0..4 {
                assert!((e.get(i, j) - id.get(i, j)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn exp_matches_diag() {
        let mut m: GMat<f64> = GMat::zeros(2);
        m.set(0, 0, 1.3);
        m.set(1, 1, -0.7);
        let e = m.exp();
        assert!((e.get(0, 0) - 1.3f64.exp()).abs() < 1e-13);
        assert!((e.get(1, 1) - (-0.7f64).exp()).abs() < 1e-13);
        assert!(e.get(0, 1).abs() < 1e-15);
    }
}
