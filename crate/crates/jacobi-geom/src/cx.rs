//! Complex arithmetic over a generic [`Scalar`], for Mobius actions and the
//! biholomorphism web. Stored as real pairs so jets pass straight through.

use crate::jet::Scalar;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug)]
pub struct Cx<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> Cx<S> {
    pub fn new(re: S, im: S) -> Self {
        Cx { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Cx { re: S::from_f64(re), im: S::from_f64(im) }
    }

    pub fn i() -> Self {
        Self::from_f64(0.0, 1.0)
    }

    pub fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sq(&self) -> S {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn scale(&self, s: S) -> Self {
        Cx { re: self.re.clone() * s.clone(), im: self.im.clone() * s }
    }
}

impl<S: Scalar> Add for Cx<S> {
    type Output = Cx<S>;
    fn add(self, rhs: Self) -> Self {
        Cx { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<S: Scalar> Sub for Cx<S> {
    type Output = Cx<S>;
    fn sub(self, rhs: Self) -> Self {
        Cx { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<S: Scalar> Neg for Cx<S> {
    type Output = Cx<S>;
    fn neg(self) -> Self {
        Cx { re: -self.re, im: -self.im }
    }
}

impl<S: Scalar> Mul for Cx<S> {
    type Output = Cx<S>;
    fn mul(self, rhs: Self) -> Self {
        Cx {
            re: self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<S: Scalar> Div for Cx<S> {
    type Output = Cx<S>;
    fn div(self, rhs: Self) -> Self {
        let d = rhs.norm_sq();
        let num = self * rhs.conj();
        Cx { re: num.re / d.clone(), im: num.im / d }
    }
}
