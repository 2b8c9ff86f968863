//! Second-order forward-mode jets.
//!
//! A [`Jet`] carries a value, a gradient and a full (symmetric) Hessian with
//! respect to a fixed set of seed variables, propagated through arithmetic by
//! the exact chain rule. All chart maps, metrics and frames in this crate are
//! written against the [`Scalar`] trait so the same closed-form expression can
//! be evaluated on plain `f64` or differentiated by seeding jets. Jets nest:
//! `Jet<Jet<f64>>` yields third derivatives where an exterior derivative of a
//! derived quantity is needed.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic field used by the geometric formulas.
///
/// Implemented by `f64` and by [`Jet<T>`] for any `T: Scalar`.
pub trait Scalar:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;

    /// Principal (0-jet) value, used for branching and extraction.
    fn val(&self) -> f64;

    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    /// Two-argument arctangent, `self` is the ordinate.
    fn atan2(&self, abscissa: &Self) -> Self;

    fn recip(&self) -> Self {
        Self::from_f64(1.0) / self.clone()
    }

    fn powi(&self, n: i32) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = Self::from_f64(1.0);
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn val(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn atan2(&self, abscissa: &Self) -> Self {
        f64::atan2(*self, *abscissa)
    }
}

/// Order-2 jet over `n` seed variables: value, gradient, packed Hessian.
#[derive(Clone, Debug)]
pub struct Jet<T> {
    pub val: T,
    pub grad: Vec<T>,
    /// Lower triangle of the Hessian, row-major: entry `(i,j)`, `i >= j`,
    /// lives at `i*(i+1)/2 + j`.
    pub hess: Vec<T>,
}

#[inline]
pub fn tri(i: usize, j: usize) -> usize {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    i * (i + 1) / 2 + j
}

impl<T: Scalar> Jet<T> {
    pub fn nvars(&self) -> usize {
        self.grad.len()
    }

    pub fn constant(n: usize, v: T) -> Self {
        Jet {
            val: v,
            grad: vec![T::from_f64(0.0); n],
            hess: vec![T::from_f64(0.0); n * (n + 1) / 2],
        }
    }

    /// Seed variable `i` of `n` at value `v`.
    pub fn variable(n: usize, i: usize, v: T) -> Self {
        let mut j = Self::constant(n, v);
        j.grad[i] = T::from_f64(1.0);
        j
    }

    pub fn hess_at(&self, i: usize, j: usize) -> T {
        self.hess
            .get(tri(i, j))
            .cloned()
            .unwrap_or_else(|| T::from_f64(0.0))
    }

    /// Chain rule for a smooth unary map with first/second derivative `dw`,
    /// `ddw` evaluated at `self.val`.
    fn unary(&self, w: T, dw: T, ddw: T) -> Self {
        let n = self.nvars();
        let mut grad = Vec::with_capacity(n);
        for i in 0..n {
            grad.push(dw.clone() * self.grad[i].clone());
        }
        let mut hess = Vec::with_capacity(self.hess.len());
        for i in 0..n {
            for j in 0..=i {
                hess.push(
                    dw.clone() * self.hess[tri(i, j)].clone()
                        + ddw.clone() * self.grad[i].clone() * self.grad[j].clone(),
                );
            }
        }
        Jet { val: w, grad, hess }
    }

    /// Chain rule for a smooth binary map `f(u,v)` with partials evaluated at
    /// `(self.val, rhs.val)`.
    #[allow(clippy::too_many_arguments)]
    fn binary(&self, rhs: &Self, w: T, fu: T, fv: T, fuu: T, fuv: T, fvv: T) -> Self {
        let (lhs, rhs) = Jet::align(self.clone(), rhs.clone());
        let (this, rhs) = (&lhs, &rhs);
        let n = this.nvars();
        let mut grad = Vec::with_capacity(n);
        for i in 0..n {
            grad.push(fu.clone() * this.grad[i].clone() + fv.clone() * rhs.grad[i].clone());
        }
        let mut hess = Vec::with_capacity(this.hess.len());
        for i in 0..n {
            for j in 0..=i {
                let gi = this.grad[i].clone();
                let gj = this.grad[j].clone();
                let hi = rhs.grad[i].clone();
                let hj = rhs.grad[j].clone();
                hess.push(
                    fu.clone() * this.hess[tri(i, j)].clone()
                        + fv.clone() * rhs.hess[tri(i, j)].clone()
                        + fuu.clone() * gi.clone() * gj.clone()
                        + fuv.clone() * (gi * hj.clone() + gj * hi.clone())
                        + fvv.clone() * hi * hj,
                );
            }
        }
        Jet { val: w, grad, hess }
    }
}

impl<T: Scalar> Add for Jet<T> {
    type Output = Jet<T>;
    fn add(self, rhs: Self) -> Self {
        let (lhs, rhs) = Jet::align(self, rhs);
        let grad = lhs
            .grad
            .iter()
            .zip(&rhs.grad)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        let hess = lhs
            .hess
            .iter()
            .zip(&rhs.hess)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Jet { val: lhs.val + rhs.val, grad, hess }
    }
}

impl<T: Scalar> Sub for Jet<T> {
    type Output = Jet<T>;
    fn sub(self, rhs: Self) -> Self {
        let (lhs, rhs) = Jet::align(self, rhs);
        let grad = lhs
            .grad
            .iter()
            .zip(&rhs.grad)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        let hess = lhs
            .hess
            .iter()
            .zip(&rhs.hess)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Jet { val: lhs.val - rhs.val, grad, hess }
    }
}

impl<T: Scalar> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Self {
        Jet {
            val: -self.val,
            grad: self.grad.into_iter().map(|a| -a).collect(),
            hess: self.hess.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<T: Scalar> Mul for Jet<T> {
    type Output = Jet<T>;
    fn mul(self, rhs: Self) -> Self {
        let (lhs, rhs) = Jet::align(self, rhs);
        let n = lhs.grad.len();
        let mut grad = Vec::with_capacity(n);
        for i in 0..n {
            grad.push(
                lhs.grad[i].clone() * rhs.val.clone() + lhs.val.clone() * rhs.grad[i].clone(),
            );
        }
        let mut hess = Vec::with_capacity(lhs.hess.len());
        for i in 0..n {
            for j in 0..=i {
                hess.push(
                    lhs.hess[tri(i, j)].clone() * rhs.val.clone()
                        + lhs.val.clone() * rhs.hess[tri(i, j)].clone()
                        + lhs.grad[i].clone() * rhs.grad[j].clone()
                        + lhs.grad[j].clone() * rhs.grad[i].clone(),
                );
            }
        }
        Jet { val: lhs.val * rhs.val, grad, hess }
    }
}

impl<T: Scalar> Div for Jet<T> {
    type Output = Jet<T>;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.val.clone().recip();
        let w = inv.clone();
        let dw = -(inv.clone() * inv.clone());
        let ddw = T::from_f64(2.0) * inv.clone() * inv.clone() * inv;
        self * rhs.unary(w, dw, ddw)
    }
}

impl<T: Scalar> Scalar for Jet<T> {
    fn from_f64(x: f64) -> Self {
        // The zero-variable jet acts as an embedded constant: binary ops fix
        // the variable count from the other operand when one side is empty.
        Jet { val: T::from_f64(x), grad: Vec::new(), hess: Vec::new() }
    }

    fn val(&self) -> f64 {
        self.val.val()
    }

    fn sqrt(&self) -> Self {
        let s = self.val.sqrt();
        let half = T::from_f64(0.5);
        let dw = half.clone() / s.clone();
        let ddw = -(T::from_f64(0.25) / (self.val.clone() * s.clone()));
        self.unary(s, dw, ddw)
    }

    fn sin(&self) -> Self {
        let (s, c) = (self.val.sin(), self.val.cos());
        self.unary(s.clone(), c, -s)
    }

    fn cos(&self) -> Self {
        let (s, c) = (self.val.sin(), self.val.cos());
        self.unary(c.clone(), -s, -c)
    }

    fn exp(&self) -> Self {
        let e = self.val.exp();
        self.unary(e.clone(), e.clone(), e)
    }

    fn ln(&self) -> Self {
        let inv = self.val.recip();
        self.unary(self.val.ln(), inv.clone(), -(inv.clone() * inv))
    }

    fn atan2(&self, abscissa: &Self) -> Self {
        let (y, x) = (self.val.clone(), abscissa.val.clone());
        let r2 = x.clone() * x.clone() + y.clone() * y.clone();
        let r4 = r2.clone() * r2.clone();
        let w = y.atan2(&x);
        let fu = x.clone() / r2.clone();
        let fv = -(y.clone() / r2);
        let two_xy = T::from_f64(2.0) * x.clone() * y.clone();
        let fuu = -(two_xy.clone() / r4.clone());
        let fuv = (y.clone() * y - x.clone() * x) / r4.clone();
        let fvv = two_xy / r4;
        self.binary(abscissa, w, fu, fv, fuu, fuv, fvv)
    }
}

// Binary ops need matching variable counts; allow zero-variable constants to
// be promoted so `Scalar::from_f64` works inside generic formulas.
impl<T: Scalar> Jet<T> {
    fn promoted(self, n: usize) -> Self {
        if self.grad.len() == n {
            self
        } else {
            assert!(self.grad.is_empty(), "jet variable-count mismatch");
            Jet {
                val: self.val,
                grad: vec![T::from_f64(0.0); n],
                hess: vec![T::from_f64(0.0); n * (n + 1) / 2],
            }
        }
    }

    /// Pair-promote so that mixed constant/variable arithmetic works.
    pub fn align(a: Self, b: Self) -> (Self, Self) {
        let n = a.grad.len().max(b.grad.len());
        (a.promoted(n), b.promoted(n))
    }
}

/// Seed an order-2 jet evaluation point: coordinate `i` becomes variable `i`.
pub fn seed(coords: &[f64]) -> Vec<Jet<f64>> {
    let n = coords.len();
    coords
        .iter()
        .enumerate()
        .map(|(i, &c)| Jet::variable(n, i, c))
        .collect()
}

/// Seed a nested (order-3 capable) jet evaluation point.
pub fn seed_nested(coords: &[f64]) -> Vec<Jet<Jet<f64>>> {
    let n = coords.len();
    coords
        .iter()
        .enumerate()
        .map(|(i, &c)| Jet::variable(n, i, Jet::variable(n, i, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Small expression tree for oracle checks.
    enum Expr {
        Var(usize),
        Const(f64),
        Add(Box<Expr>, Box<Expr>),
        Sub(Box<Expr>, Box<Expr>),
        Mul(Box<Expr>, Box<Expr>),
        SafeDiv(Box<Expr>, Box<Expr>),
        Sin(Box<Expr>),
        Cos(Box<Expr>),
        ExpS(Box<Expr>),
        LnS(Box<Expr>),
        SqrtS(Box<Expr>),
        Atan2(Box<Expr>, Box<Expr>),
    }

    fn eval<S: Scalar>(e: &Expr, vars: &[S]) -> S {
        match e {
            Expr::Var(i) => vars[*i].clone(),
            Expr::Const(c) => S::from_f64(*c),
            Expr::Add(a, b) => eval(a, vars) + eval(b, vars),
            Expr::Sub(a, b) => eval(a, vars) - eval(b, vars),
            Expr::Mul(a, b) => eval(a, vars) * eval(b, vars),
            Expr::SafeDiv(a, b) => {
                let d = eval(b, vars);
                eval(a, vars) / (d.clone() * d + S::from_f64(1.0))
            }
            Expr::Sin(a) => eval(a, vars).sin(),
            Expr::Cos(a) => eval(a, vars).cos(),
            Expr::ExpS(a) => (eval(a, vars) * S::from_f64(0.3)).exp(),
            Expr::LnS(a) => {
                let u = eval(a, vars);
                (u.clone() * u + S::from_f64(2.0)).ln()
            }
            Expr::SqrtS(a) => {
                let u = eval(a, vars);
                (u.clone() * u + S::from_f64(1.0)).sqrt()
            }
            Expr::Atan2(a, b) => {
                let v = eval(b, vars) + S::from_f64(2.5);
                eval(a, vars).atan2(&v)
            }
        }
    }

    fn random_expr(rng: &mut ChaCha8Rng, depth: usize, nvars: usize) -> Expr {
        if depth == 0 {
            return if rng.gen_bool(0.7) {
                Expr::Var(rng.gen_range(0..nvars))
            } else {
                Expr::Const(rng.gen_range(-2.0..2.0))
            };
        }
        let a = Box::new(random_expr(rng, depth - 1, nvars));
        let b = Box::new(random_expr(rng, depth - 1, nvars));
        match rng.gen_range(0..10) {
            0 => Expr::Add(a, b),
            1 => Expr::Sub(a, b),
            2 => Expr::Mul(a, b),
            3 => Expr::SafeDiv(a, b),
            4 => Expr::Sin(a),
            5 => Expr::Cos(a),
            6 => Expr::ExpS(a),
            7 => Expr::LnS(a),
            8 => Expr::SqrtS(a),
            _ => Expr::Atan2(a, b),
        }
    }

    fn fd_grad(e: &Expr, x: &[f64], i: usize, h: f64) -> f64 {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[i] += h;
        xm[i] -= h;
        (eval::<f64>(e, &xp) - eval::<f64>(e, &xm)) / (2.0 * h)
    }

    fn fd_hess(e: &Expr, x: &[f64], i: usize, j: usize, h: f64) -> f64 {
        let shift = |di: f64, dj: f64| {
            let mut z = x.to_vec();
            z[i] += di;
            z[j] += dj;
            eval::<f64>(e, &z)
        };
        if i == j {
            (shift(h, 0.0) - 2.0 * eval::<f64>(e, x) + shift(-h, 0.0)) / (h * h)
        } else {
            (shift(h, h) - shift(h, -h) - shift(-h, h) + shift(-h, -h)) / (4.0 * h * h)
        }
    }

    #[test]
    fn constant_jet_has_zero_derivatives() {
        let c: Jet<f64> = Jet::constant(3, 7.5);
        assert_eq!(c.val, 7.5);
        assert!(c.grad.iter().all(|&g| g == 0.0));
        assert!(c.hess.iter().all(|&h| h == 0.0));
    }

    #[test]
    fn jets_match_central_differences_on_random_expressions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = 1e-5;
        for _ in 0..100 {
            let e = random_expr(&mut rng, 3, 3);
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.5..1.5)).collect();
            let jx = seed(&x);
            let (out, _) = Jet::align(eval(&e, &jx), jx[0].clone());
            assert!((out.val - eval::<f64>(&e, &x)).abs() < 1e-14);
            for i in 0..3 {
                let fd = fd_grad(&e, &x, i, h);
                let scale = 1.0_f64.max(fd.abs());
                assert!(
                    (out.grad[i] - fd).abs() / scale < 1e-6,
                    "grad mismatch: jet {} fd {}",
                    out.grad[i],
                    fd
                );
                for j in 0..=i {
                    let fd2 = fd_hess(&e, &x, i, j, 3e-4);
                    let scale = 1.0_f64.max(fd2.abs());
                    assert!(
                        (out.hess_at(i, j) - fd2).abs() / scale < 1e-5,
                        "hess mismatch: jet {} fd {}",
                        out.hess_at(i, j),
                        fd2
                    );
                }
            }
        }
    }

    #[test]
    fn nested_jets_give_third_derivatives() {
        // f(x) = sin(x)*x^2; f''' = -cos x * x^2 - 6x sin x + 6 cos x... check
        // against an analytic value at x0.
        let x0 = 0.7_f64;
        let v = seed_nested(&[x0]);
        let f = v[0].clone().sin() * v[0].clone() * v[0].clone();
        // d/dx of the Hessian entry = third derivative
        let d3 = f.hess_at(0, 0).grad[0];
        let analytic = -x0.cos() * x0 * x0 - 6.0 * x0 * x0.sin() + 6.0 * x0.cos();
        // f''' = d3/dx3 (x^2 sin x) = 6 cos x - 6 x sin x - x^2 cos x... verify:
        assert!((d3 - analytic).abs() < 1e-12, "{} vs {}", d3, analytic);
    }

    #[test]
    fn atan2_derivatives() {
        let x = seed(&[0.6, -0.8]);
        let f = x[0].clone().atan2(&x[1]);
        let r2: f64 = 0.6 * 0.6 + 0.8 * 0.8;
        assert!((f.grad[0] - (-0.8) / r2).abs() < 1e-14);
        assert!((f.grad[1] - (-0.6) / r2).abs() < 1e-14);
    }
}
