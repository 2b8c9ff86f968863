//! The concrete groups H1, SL(2,R) and the real Jacobi group as 4x4 matrices,
//! their coordinate charts, composition, inversion and the actions on the
//! associated homogeneous spaces.
//!
//! All coordinate formulas are written against [`Scalar`] so the same code
//! path serves plain evaluation and jet differentiation (Jacobians of
//! actions, fundamental vector fields).

use crate::cx::Cx;
use crate::error::{Error, Result};
use crate::gmat::GMat;
use crate::jet::Scalar;
use nalgebra::DMatrix;

pub type Mat = DMatrix<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    H1,
    Sl2r,
    Gj1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Group chart (x, y, theta, lambda, mu, kappa).
    Ez,
    /// Group chart (x, y, theta, p, q, kappa).
    S,
    /// SL(2,R) chart (x, y, theta).
    Iwasawa,
    /// Siegel upper half-plane (x, y).
    HalfPlane,
    /// Siegel-Jacobi upper half-plane (x, y, p, q).
    SjPlane,
    /// Extended Siegel-Jacobi upper half-plane (x, y, p, q, kappa).
    ExtSjPlane,
    /// (tau, z) as four reals (x, y, xi, eta).
    ComplexHp,
    /// Unit-disk fiber chart (w, z) as four reals.
    Disk,
}

impl Chart {
    pub fn dim(self) -> usize {
        match self {
            Chart::Ez | Chart::S => 6,
            Chart::Iwasawa => 3,
            Chart::HalfPlane => 2,
            Chart::SjPlane | Chart::ComplexHp | Chart::Disk => 4,
            Chart::ExtSjPlane => 5,
        }
    }

    pub fn is_group_chart(self) -> bool {
        matches!(self, Chart::Ez | Chart::S | Chart::Iwasawa)
    }
}

#[derive(Clone, Debug)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coords: Vec<f64>,
}

impl ChartPoint {
    pub fn new(chart: Chart, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != chart.dim() {
            return Err(Error::Config(format!(
                "chart expects {} coordinates, got {}",
                chart.dim(),
                coords.len()
            )));
        }
        let p = ChartPoint { chart, coords };
        p.check_domain()?;
        Ok(p)
    }

    fn check_domain(&self) -> Result<()> {
        let y_ok = match self.chart {
            Chart::Ez | Chart::S | Chart::Iwasawa | Chart::HalfPlane | Chart::SjPlane
            | Chart::ExtSjPlane | Chart::ComplexHp => self.coords[1] > 0.0,
            Chart::Disk => self.coords[0] * self.coords[0] + self.coords[1] * self.coords[1] < 1.0,
        };
        if y_ok {
            Ok(())
        } else {
            Err(Error::OutOfDomain)
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Mat,
    pub group: Group,
}

/// SL(2,R) block (a, b, c, d) from Iwasawa coordinates.
pub fn iwasawa_abcd<S: Scalar>(x: &S, y: &S, theta: &S) -> (S, S, S, S) {
    let sy = y.sqrt();
    let isy = sy.recip();
    let (st, ct) = (theta.sin(), theta.cos());
    let a = sy.clone() * ct.clone() - x.clone() * isy.clone() * st.clone();
    let b = sy.clone() * st.clone() + x.clone() * isy.clone() * ct.clone();
    let c = -(isy.clone() * st);
    let d = isy * ct;
    (a, b, c, d)
}

/// Generic 4x4 Jacobi-group matrix from (a,b,c,d, lambda, mu, kappa).
#[allow(clippy::too_many_arguments)]
pub fn gj1_matrix<S: Scalar>(a: S, b: S, c: S, d: S, lambda: S, mu: S, kappa: S) -> GMat<S> {
    let zero = || S::from_f64(0.0);
    let one = || S::from_f64(1.0);
    // Y = X M^-1 = (lambda d - mu c, -lambda b + mu a)
    let p = lambda.clone() * d.clone() - mu.clone() * c.clone();
    let q = -(lambda.clone() * b.clone()) + mu.clone() * a.clone();
    let mut m = GMat::zeros(4);
    m.set(0, 0, a);
    m.set(0, 2, b.clone());
    m.set(0, 3, q);
    m.set(1, 0, lambda);
    m.set(1, 1, one());
    m.set(1, 2, mu);
    m.set(1, 3, kappa);
    m.set(2, 0, c);
    m.set(2, 2, d);
    m.set(2, 3, -p);
    m.set(3, 3, one());
    let _ = zero;
    m
}

/// Embed a group-chart point into its 4x4 matrix, generically.
pub fn embed_generic<S: Scalar>(chart: Chart, c: &[S]) -> Result<GMat<S>> {
    match chart {
        Chart::Iwasawa => {
            let (a, b, cc, d) = iwasawa_abcd(&c[0], &c[1], &c[2]);
            let z = || S::from_f64(0.0);
            Ok(gj1_matrix(a, b, cc, d, z(), z(), z()))
        }
        Chart::Ez => {
            let (a, b, cc, d) = iwasawa_abcd(&c[0], &c[1], &c[2]);
            Ok(gj1_matrix(a, b, cc, d, c[3].clone(), c[4].clone(), c[5].clone()))
        }
        Chart::S => {
            let (a, b, cc, d) = iwasawa_abcd(&c[0], &c[1], &c[2]);
            // X = Y M: (lambda, mu) = (p a + q c, p b + q d)
            let lambda = c[3].clone() * a.clone() + c[4].clone() * cc.clone();
            let mu = c[3].clone() * b.clone() + c[4].clone() * d.clone();
            Ok(gj1_matrix(a, b, cc, d, lambda, mu, c[5].clone()))
        }
        _ => Err(Error::BadChart("expected a group chart")),
    }
}

/// Heisenberg element (lambda, mu, kappa) as a 4x4 matrix.
pub fn h1_element(lambda: f64, mu: f64, kappa: f64) -> GroupElement {
    let m = gj1_matrix::<f64>(1.0, 0.0, 0.0, 1.0, lambda, mu, kappa);
    GroupElement { matrix: m.values(), group: Group::H1 }
}

pub fn sl2r_element(a: f64, b: f64, c: f64, d: f64) -> Result<GroupElement> {
    if (a * d - b * c - 1.0).abs() > 1e-9 {
        return Err(Error::Config("determinant must be 1".into()));
    }
    let m = gj1_matrix::<f64>(a, b, c, d, 0.0, 0.0, 0.0);
    GroupElement::new(m.values(), Group::Sl2r)
}

impl GroupElement {
    /// Validate the 4x4 matrix against the pattern of the tagged group.
    pub fn new(matrix: Mat, group: Group) -> Result<Self> {
        let tol = 1e-12;
        let m = &matrix;
        let frame_ok = (m[(1, 1)] - 1.0).abs() < tol
            && (m[(3, 3)] - 1.0).abs() < tol
            && m[(3, 0)].abs() < tol
            && m[(3, 1)].abs() < tol
            && m[(3, 2)].abs() < tol
            && m[(0, 1)].abs() < tol
            && m[(2, 1)].abs() < tol;
        if !frame_ok {
            return Err(Error::Config("matrix does not fit the group pattern".into()));
        }
        let (a, b, c, d) = (m[(0, 0)], m[(0, 2)], m[(2, 0)], m[(2, 2)]);
        let det_ok = (a * d - b * c - 1.0).abs() < 1e-10;
        let (lambda, mu) = (m[(1, 0)], m[(1, 2)]);
        let p = lambda * d - mu * c;
        let q = -lambda * b + mu * a;
        let heis_consistent = (m[(0, 3)] - q).abs() < 1e-9 && (m[(2, 3)] + p).abs() < 1e-9;
        let ok = match group {
            Group::H1 => {
                (a - 1.0).abs() < tol
                    && (d - 1.0).abs() < tol
                    && b.abs() < tol
                    && c.abs() < tol
                    && heis_consistent
            }
            Group::Sl2r => {
                det_ok && lambda.abs() < tol && mu.abs() < tol && m[(1, 3)].abs() < tol
                    && m[(0, 3)].abs() < tol
                    && m[(2, 3)].abs() < tol
            }
            Group::Gj1 => det_ok && heis_consistent,
        };
        if ok {
            Ok(GroupElement { matrix, group })
        } else {
            Err(Error::Config("matrix does not fit the group pattern".into()))
        }
    }

    pub fn identity(group: Group) -> Self {
        GroupElement { matrix: Mat::identity(4, 4), group }
    }

    pub fn abcd(&self) -> (f64, f64, f64, f64) {
        let m = &self.matrix;
        (m[(0, 0)], m[(0, 2)], m[(2, 0)], m[(2, 2)])
    }

    /// EZ Heisenberg part (lambda, mu, kappa).
    pub fn heis_ez(&self) -> (f64, f64, f64) {
        let m = &self.matrix;
        (m[(1, 0)], m[(1, 2)], m[(1, 3)])
    }

    /// S-coordinate Heisenberg part (p, q) read from the matrix slots.
    pub fn heis_s(&self) -> (f64, f64) {
        let m = &self.matrix;
        (-m[(2, 3)], m[(0, 3)])
    }

    /// Drop the center coordinate: the homomorphism onto the reduced group.
    pub fn project_reduced(&self) -> GroupElement {
        let mut m = self.matrix.clone();
        m[(1, 3)] = 0.0;
        GroupElement { matrix: m, group: self.group }
    }
}

/// Embed a group-chart point (f64 public surface).
pub fn chart_embed(point: &ChartPoint) -> Result<GroupElement> {
    let m = embed_generic::<f64>(point.chart, &point.coords)?;
    let group = if point.chart == Chart::Iwasawa { Group::Sl2r } else { Group::Gj1 };
    GroupElement::new(m.values(), group)
}

/// Iwasawa coordinates (x, y, theta) from an SL(2,R) block, generically.
pub fn read_iwasawa<S: Scalar>(a: &S, b: &S, c: &S, d: &S) -> Result<(S, S, S)> {
    let den = c.clone() * c.clone() + d.clone() * d.clone();
    if den.val() <= 1e-300 {
        return Err(Error::Degenerate);
    }
    let x = (a.clone() * c.clone() + b.clone() * d.clone()) / den.clone();
    let y = den.recip();
    let theta = (-c.clone()).atan2(d);
    Ok((x, y, theta))
}

/// Read a group element back into one of the group charts.
pub fn chart_read(g: &GroupElement, chart: Chart) -> Result<ChartPoint> {
    let (a, b, c, d) = g.abcd();
    let (x, y, theta) = read_iwasawa(&a, &b, &c, &d)?;
    match chart {
        Chart::Iwasawa => ChartPoint::new(chart, vec![x, y, theta]),
        Chart::Ez => {
            let (l, m, k) = g.heis_ez();
            ChartPoint::new(chart, vec![x, y, theta, l, m, k])
        }
        Chart::S => {
            let (p, q) = g.heis_s();
            let (_, _, k) = g.heis_ez();
            ChartPoint::new(chart, vec![x, y, theta, p, q, k])
        }
        _ => Err(Error::BadChart("expected a group chart")),
    }
}

/// Matrix-level group composition.
pub fn compose(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    if g.group != h.group {
        return Err(Error::GroupMismatch);
    }
    Ok(GroupElement { matrix: &g.matrix * &h.matrix, group: g.group })
}

/// Coordinate-level composition law on a group chart:
/// M1 = M M', X1 = X M' + X', kappa1 = kappa + kappa' + det[X M'; X'].
pub fn compose_coords(p1: &ChartPoint, p2: &ChartPoint) -> Result<ChartPoint> {
    if p1.chart != p2.chart || !p1.chart.is_group_chart() {
        return Err(Error::BadChart("coordinate composition needs matching group charts"));
    }
    let to_ez = |p: &ChartPoint| -> Result<Vec<f64>> {
        match p.chart {
            Chart::Ez => Ok(p.coords.clone()),
            Chart::S => Ok(ez_s_convert(p, ConvertDirection::SToEz)?.coords),
            Chart::Iwasawa => {
                Ok(vec![p.coords[0], p.coords[1], p.coords[2], 0.0, 0.0, 0.0])
            }
            _ => unreachable!(),
        }
    };
    let e1 = to_ez(p1)?;
    let e2 = to_ez(p2)?;
    let (a, b, c, d) = iwasawa_abcd(&e1[0], &e1[1], &e1[2]);
    let (x1, y1, t1) = alignn(&(a, b, c, d), &[e2[0], e2[1], e2[2]])?;
    let (a2, b2, c2, d2) = iwasawa_abcd(&e2[0], &e2[1], &e2[2]);
    // X M' with X = (lambda, mu) of the left factor
    let (l, m) = (e1[3], e1[4]);
    let xm = (l * a2 + m * c2, l * b2 + m * d2);
    let (l2, m2) = (e2[3], e2[4]);
    let lambda1 = xm.0 + l2;
    let mu1 = xm.1 + m2;
    let kappa1 = e1[5] + e2[5] + (xm.0 * m2 - xm.1 * l2);
    let out = ChartPoint::new(Chart::Ez, vec![x1, y1, t1, lambda1, mu1, kappa1])?;
    match p1.chart {
        Chart::Ez => Ok(out),
        Chart::S => ez_s_convert(&out, ConvertDirection::EzToS),
        Chart::Iwasawa => ChartPoint::new(Chart::Iwasawa, vec![x1, y1, t1]),
        _ => unreachable!(),
    }
}

/// Closed-form group inverse (M^-1, -Y, -kappa).
pub fn inverse(g: &GroupElement) -> GroupElement {
    let (a, b, c, d) = g.abcd();
    let (_, _, kappa) = g.heis_ez();
    let (p, q) = g.heis_s();
    let m = gj1_matrix::<f64>(d, -b, -c, a, -p, -q, -kappa);
    GroupElement { matrix: m.values(), group: g.group }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvertDirection {
    EzToS,
    SToEz,
}

/// Convert the Heisenberg slot between EZ and S coordinates; kappa unchanged.
pub fn ez_s_convert(point: &ChartPoint, direction: ConvertDirection) -> Result<ChartPoint> {
    let c = &point.coords;
    let (a, b, cc, d) = iwasawa_abcd(&c[0], &c[1], &c[2]);
    match (point.chart, direction) {
        (Chart::Ez, ConvertDirection::EzToS) => {
            let (l, m) = (c[3], c[4]);
            let p = l * d - m * cc;
            let q = -l * b + m * a;
            ChartPoint::new(Chart::S, vec![c[0], c[1], c[2], p, q, c[5]])
        }
        (Chart::S, ConvertDirection::SToEz) => {
            let (p, q) = (c[3], c[4]);
            let l = p * a + q * cc;
            let m = p * b + q * d;
            ChartPoint::new(Chart::Ez, vec![c[0], c[1], c[2], l, m, c[5]])
        }
        _ => Err(Error::BadChart("conversion direction does not match chart")),
    }
}

/// SL(2,R) action on (x, y, theta), generic over the scalar field.
pub fn alignn<S: Scalar>(abcd: &(S, S, S, S), xyt: &[S]) -> Result<(S, S, S)> {
    let (a, b, c, d) = abcd;
    let (x, y, t) = (&xyt[0], &xyt[1], &xyt[2]);
    let cxd = c.clone() * x.clone() + d.clone();
    let cy = c.clone() * y.clone();
    let lam = cxd.clone() * cxd.clone() + cy.clone() * cy.clone();
    if lam.val() <= 1e-300 {
        return Err(Error::Degenerate);
    }
    let ax_b = a.clone() * x.clone() + b.clone();
    let x1 = (ax_b * cxd.clone() + a.clone() * c.clone() * y.clone() * y.clone()) / lam.clone();
    let y1 = y.clone() / lam.clone();
    let (st, ct) = (t.sin(), t.cos());
    let sin1 = (cxd.clone() * st.clone() - cy.clone() * ct.clone()) / lam.sqrt();
    let cos1 = (cy * st + cxd * ct) / lam.sqrt();
    let t1 = sin1.atan2(&cos1);
    Ok((x1, y1, t1))
}

/// Action of a (generic) group matrix on a point of one of the homogeneous
/// spaces. The matrix entries may be jets (curve parameters), and so may the
/// point coordinates.
pub fn act_generic<S: Scalar>(gm: &GMat<S>, chart: Chart, pt: &[S]) -> Result<Vec<S>> {
    let a = gm.get(0, 0);
    let b = gm.get(0, 2);
    let c = gm.get(2, 0);
    let d = gm.get(2, 2);
    let lambda = gm.get(1, 0);
    let mu = gm.get(1, 2);
    let kappa = gm.get(1, 3);
    let qg = gm.get(0, 3);
    let pg = -gm.get(2, 3);
    match chart {
        Chart::Iwasawa => {
            let (x1, y1, t1) = alignn(&(a, b, c, d), pt)?;
            Ok(vec![x1, y1, t1])
        }
        Chart::HalfPlane => {
            let tau = Cx::new(pt[0].clone(), pt[1].clone());
            let den = Cx::new(c.clone(), S::from_f64(0.0)) * tau.clone()
                + Cx::new(d.clone(), S::from_f64(0.0));
            if den.norm_sq().val() <= 1e-300 {
                return Err(Error::Degenerate);
            }
            let num = Cx::new(a.clone(), S::from_f64(0.0)) * tau
                + Cx::new(b.clone(), S::from_f64(0.0));
            let t1 = num / den;
            Ok(vec![t1.re, t1.im])
        }
        Chart::SjPlane | Chart::ExtSjPlane => {
            let (x1, y1) = {
                let (xx, yy, _) =
                    alignn(&(a.clone(), b.clone(), c.clone(), d.clone()), &[
                        pt[0].clone(),
                        pt[1].clone(),
                        S::from_f64(0.0),
                    ])?;
                (xx, yy)
            };
            let (pp, qq) = (&pt[2], &pt[3]);
            let p1 = pg + d * pp.clone() - c * qq.clone();
            let q1 = qg - b * pp.clone() + a * qq.clone();
            if chart == Chart::SjPlane {
                Ok(vec![x1, y1, p1, q1])
            } else {
                let k1 = kappa + pt[4].clone() + lambda * qq.clone() - mu * pp.clone();
                Ok(vec![x1, y1, p1, q1, k1])
            }
        }
        Chart::ComplexHp => {
            let tau = Cx::new(pt[0].clone(), pt[1].clone());
            let z = Cx::new(pt[2].clone(), pt[3].clone());
            let re = |v: S| Cx::new(v, S::from_f64(0.0));
            let den = re(c) * tau.clone() + re(d);
            if den.norm_sq().val() <= 1e-300 {
                return Err(Error::Degenerate);
            }
            let tau1 = (re(a) * tau.clone() + re(b)) / den.clone();
            let z1 = (z + re(lambda) * tau + re(mu)) / den;
            Ok(vec![tau1.re, tau1.im, z1.re, z1.im])
        }
        _ => Err(Error::BadChart("action is defined on the homogeneous-space charts")),
    }
}

/// Read a generic group matrix back into a group chart.
pub fn read_chart_generic<S: Scalar>(m: &GMat<S>, chart: Chart) -> Result<Vec<S>> {
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 2), m.get(2, 0), m.get(2, 2));
    let (x, y, theta) = read_iwasawa(&a, &b, &c, &d)?;
    match chart {
        Chart::Iwasawa => Ok(vec![x, y, theta]),
        Chart::Ez => Ok(vec![x, y, theta, m.get(1, 0), m.get(1, 2), m.get(1, 3)]),
        Chart::S => Ok(vec![x, y, theta, -m.get(2, 3), m.get(0, 3), m.get(1, 3)]),
        _ => Err(Error::BadChart("expected a group chart")),
    }
}

/// Left translation by a fixed group element, in chart coordinates, generic
/// over the scalar field of the point.
pub fn left_translate_generic<S: Scalar>(
    g: &GroupElement,
    chart: Chart,
    coords: &[S],
) -> Result<Vec<S>> {
    let gm = GMat::<S>::from_f64_matrix(&g.matrix);
    let pm = embed_generic(chart, coords)?;
    read_chart_generic(&gm.matmul(&pm), chart)
}

/// Public f64 action.
pub fn act(g: &GroupElement, point: &ChartPoint) -> Result<ChartPoint> {
    let gm = GMat::<f64>::from_f64_matrix(&g.matrix);
    let out = act_generic(&gm, point.chart, &point.coords)?;
    ChartPoint::new(point.chart, out)
}

/// Sup-norm defect of act(gh, p) = act(g, act(h, p)).
pub fn action_is_homomorphism_residual(
    g: &GroupElement,
    h: &GroupElement,
    point: &ChartPoint,
) -> Result<f64> {
    let gh = compose(g, h)?;
    let once = act(&gh, point)?;
    let twice = act(g, &act(h, point)?)?;
    Ok(once
        .coords
        .iter()
        .zip(&twice.coords)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{seed, Jet};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn random_group_point(rng: &mut ChaCha8Rng, chart: Chart) -> ChartPoint {
        let x = rng.gen_range(-2.0..2.0);
        let y = rng.gen_range(0.1..10.0);
        let t = rng.gen_range(-3.1..3.1);
        let coords = match chart {
            Chart::Iwasawa => vec![x, y, t],
            Chart::Ez | Chart::S => vec![
                x,
                y,
                t,
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            ],
            _ => unreachable!(),
        };
        ChartPoint::new(chart, coords).unwrap()
    }

    #[test]
    fn chart_embed_examples() {
        // Iwasawa (0,1,0) -> identity 2x2 block
        let g = chart_embed(&ChartPoint::new(Chart::Iwasawa, vec![0.0, 1.0, 0.0]).unwrap())
            .unwrap();
        assert!((&g.matrix - Mat::identity(4, 4)).amax() < 1e-14);
        // Iwasawa (1,1,0) -> a=1, b=1, c=0, d=1
        let g = chart_embed(&ChartPoint::new(Chart::Iwasawa, vec![1.0, 1.0, 0.0]).unwrap())
            .unwrap();
        let (a, b, c, d) = g.abcd();
        assert!((a - 1.0).abs() < 1e-14 && (b - 1.0).abs() < 1e-14);
        assert!(c.abs() < 1e-14 && (d - 1.0).abs() < 1e-14);
        // S chart with M = I: lambda = p, mu = q
        let g = chart_embed(
            &ChartPoint::new(Chart::S, vec![0.0, 1.0, 0.0, 0.7, -0.4, 0.2]).unwrap(),
        )
        .unwrap();
        let (l, m, k) = g.heis_ez();
        assert!((l - 0.7).abs() < 1e-14 && (m + 0.4).abs() < 1e-14 && (k - 0.2).abs() < 1e-14);
    }

    #[test]
    fn chart_read_examples() {
        let id = GroupElement::identity(Group::Sl2r);
        let p = chart_read(&id, Chart::Iwasawa).unwrap();
        assert!((p.coords[0]).abs() < 1e-14);
        assert!((p.coords[1] - 1.0).abs() < 1e-14);
        assert!((p.coords[2]).abs() < 1e-14);
        let g = sl2r_element(1.0, 1.0, 0.0, 1.0).unwrap();
        let p = chart_read(&g, Chart::Iwasawa).unwrap();
        assert!((p.coords[0] - 1.0).abs() < 1e-14 && (p.coords[1] - 1.0).abs() < 1e-14);
        assert!(p.coords[2].abs() < 1e-14);
    }

    #[test]
    fn chart_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for chart in [Chart::Iwasawa, Chart::Ez, Chart::S] {
            for _ in 0..1000 {
                let p = random_group_point(&mut rng, chart);
                let g = chart_embed(&p).unwrap();
                let back = chart_read(&g, chart).unwrap();
                for (u, v) in p.coords.iter().zip(&back.coords) {
                    assert!((u - v).abs() < 1e-10, "round trip failed on {:?}", chart);
                }
            }
        }
    }

    #[test]
    fn compose_h1_example() {
        let g = h1_element(1.0, 0.0, 0.0);
        let h = h1_element(0.0, 1.0, 0.0);
        let gh = compose(&g, &h).unwrap();
        let (l, m, k) = gh.heis_ez();
        assert!((l - 1.0).abs() < 1e-14 && (m - 1.0).abs() < 1e-14 && (k - 1.0).abs() < 1e-14);
    }

    #[test]
    fn compose_coords_matches_matrix_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for chart in [Chart::Ez, Chart::S] {
            for _ in 0..200 {
                let p1 = random_group_point(&mut rng, chart);
                let p2 = random_group_point(&mut rng, chart);
                let coord_route = compose_coords(&p1, &p2).unwrap();
                let matrix_route = compose(&chart_embed(&p1).unwrap(), &chart_embed(&p2).unwrap())
                    .unwrap();
                let read = chart_read(&matrix_route, chart).unwrap();
                for (u, v) in coord_route.coords.iter().zip(&read.coords) {
                    assert!((u - v).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn compose_identity_and_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let g = chart_embed(&random_group_point(&mut rng, Chart::Ez)).unwrap();
            let id = GroupElement::identity(Group::Gj1);
            assert!((&compose(&g, &id).unwrap().matrix - &g.matrix).amax() < 1e-14);
            let h = chart_embed(&random_group_point(&mut rng, Chart::Ez)).unwrap();
            let k = chart_embed(&random_group_point(&mut rng, Chart::Ez)).unwrap();
            let left = compose(&compose(&g, &h).unwrap(), &k).unwrap();
            let right = compose(&g, &compose(&h, &k).unwrap()).unwrap();
            assert!((&left.matrix - &right.matrix).amax() < 1e-12);
        }
    }

    #[test]
    fn inverse_examples() {
        let id = GroupElement::identity(Group::Gj1);
        assert!((&inverse(&id).matrix - &id.matrix).amax() < 1e-14);
        let g = h1_element(2.0, 3.0, 1.0);
        let gi = inverse(&g);
        let (l, m, k) = gi.heis_ez();
        assert!((l + 2.0).abs() < 1e-14 && (m + 3.0).abs() < 1e-14 && (k + 1.0).abs() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let g = chart_embed(&random_group_point(&mut rng, Chart::Ez)).unwrap();
            let gi = inverse(&g);
            assert!((&g.matrix * &gi.matrix - Mat::identity(4, 4)).amax() < 1e-12);
            let num = g.matrix.clone().try_inverse().unwrap();
            assert!((&gi.matrix - &num).amax() < 1e-12);
        }
    }

    #[test]
    fn ez_s_examples_and_round_trip() {
        // M = I
        let p = ChartPoint::new(Chart::Ez, vec![0.0, 1.0, 0.0, 1.0, 2.0, 0.3]).unwrap();
        let s = ez_s_convert(&p, ConvertDirection::EzToS).unwrap();
        assert!((s.coords[3] - 1.0).abs() < 1e-14 && (s.coords[4] - 2.0).abs() < 1e-14);
        assert!((s.coords[5] - 0.3).abs() < 1e-14);
        // M = [[1,1],[0,1]] is Iwasawa (1,1,0); (lambda,mu)=(1,0) -> (p,q)=(1,-1)
        let p = ChartPoint::new(Chart::Ez, vec![1.0, 1.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        let s = ez_s_convert(&p, ConvertDirection::EzToS).unwrap();
        assert!((s.coords[3] - 1.0).abs() < 1e-14 && (s.coords[4] + 1.0).abs() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..1000 {
            let p = random_group_point(&mut rng, Chart::Ez);
            let back = ez_s_convert(
                &ez_s_convert(&p, ConvertDirection::EzToS).unwrap(),
                ConvertDirection::SToEz,
            )
            .unwrap();
            for (u, v) in p.coords.iter().zip(&back.coords) {
                assert!((u - v).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn act_examples() {
        // M = [[1,1],[0,1]], X = 0 on (0,1,0) -> (1,1,0)
        let g = sl2r_element(1.0, 1.0, 0.0, 1.0).unwrap();
        let p = ChartPoint::new(Chart::Iwasawa, vec![0.0, 1.0, 0.0]).unwrap();
        let q = act(&g, &p).unwrap();
        assert!((q.coords[0] - 1.0).abs() < 1e-14);
        assert!((q.coords[1] - 1.0).abs() < 1e-14);
        assert!(q.coords[2].abs() < 1e-14);
        // identity on any point
        let id = GroupElement::identity(Group::Gj1);
        let p = ChartPoint::new(Chart::SjPlane, vec![0.3, 2.0, -0.4, 0.8]).unwrap();
        let q = act(&id, &p).unwrap();
        for (u, v) in p.coords.iter().zip(&q.coords) {
            assert!((u - v).abs() < 1e-14);
        }
        // M = [[1,1],[0,1]], X = 0 on (p,q) = (1,0) -> (1,-1)
        let mut m = gj1_matrix::<f64>(1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0).values();
        m[(1, 3)] = 0.0;
        let g = GroupElement::new(m, Group::Gj1).unwrap();
        let p = ChartPoint::new(Chart::SjPlane, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let q = act(&g, &p).unwrap();
        assert!((q.coords[2] - 1.0).abs() < 1e-14 && (q.coords[3] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn action_is_left_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        for chart in [Chart::Iwasawa, Chart::HalfPlane, Chart::SjPlane, Chart::ExtSjPlane,
            Chart::ComplexHp]
        {
            for _ in 0..100 {
                let g = chart_embed(&random_group_point(&mut rng, Chart::Ez)).unwrap();
                let h = chart_embed(&random_group_point(&mut rng, Chart::Ez)).unwrap();
                let pt = match chart {
                    Chart::Iwasawa => ChartPoint::new(
                        chart,
                        vec![rng.gen_range(-2.0..2.0), rng.gen_range(0.2..5.0),
                            rng.gen_range(-3.0..3.0)],
                    ),
                    Chart::HalfPlane => ChartPoint::new(
                        chart,
                        vec![rng.gen_range(-2.0..2.0), rng.gen_range(0.2..5.0)],
                    ),
                    Chart::SjPlane => ChartPoint::new(
                        chart,
                        vec![rng.gen_range(-2.0..2.0), rng.gen_range(0.2..5.0),
                            rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
                    ),
                    Chart::ExtSjPlane => ChartPoint::new(
                        chart,
                        vec![rng.gen_range(-2.0..2.0), rng.gen_range(0.2..5.0),
                            rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0)],
                    ),
                    Chart::ComplexHp => ChartPoint::new(
                        chart,
                        vec![rng.gen_range(-2.0..2.0), rng.gen_range(0.2..5.0),
                            rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
                    ),
                    _ => unreachable!(),
                }
                .unwrap();
                let g_use = if chart == Chart::Iwasawa || chart == Chart::HalfPlane {
                    // SL(2,R) acts on its own spaces
                    let (a, b, c, d) = g.abcd();
                    sl2r_element(a, b, c, d).unwrap()
                } else {
                    g.clone()
                };
                let h_use = if chart == Chart::Iwasawa || chart == Chart::HalfPlane {
                    let (a, b, c, d) = h.abcd();
                    sl2r_element(a, b, c, d).unwrap()
                } else {
                    h.clone()
                };
                let res = action_is_homomorphism_residual(&g_use, &h_use, &pt).unwrap();
                assert!(res < 1e-10, "homomorphism residual {} on {:?}", res, chart);
                // h = identity gives zero
                let id = GroupElement::identity(g_use.group);
                assert!(action_is_homomorphism_residual(&g_use, &id, &pt).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn act_preserves_y_positivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for _ in 0..10_000 {
            let g = chart_embed(&random_group_point(&mut rng, Chart::Ez)).unwrap();
            let p = ChartPoint::new(
                Chart::SjPlane,
                vec![
                    rng.gen_range(-5.0..5.0),
                    rng.gen_range(0.01..20.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ],
            )
            .unwrap();
            let q = act(&g, &p).unwrap();
            assert!(q.coords[1] > 0.0);
        }
    }

    #[test]
    fn lambda_h_two_expressions_agree_along_curves() {
        // d(da) b-c identity: d a' - b c' = c b' - a d' along any smooth curve.
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        for _ in 0..100 {
            let (x0, y0, t0, vx, vy, vt) = (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.3..3.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let t = seed(&[0.0])[0].clone();
            let x = t.clone() * Jet::from_f64(vx) + Jet::from_f64(x0);
            let y = t.clone() * Jet::from_f64(vy) + Jet::from_f64(y0);
            let th = t.clone() * Jet::from_f64(vt) + Jet::from_f64(t0);
            let (x, y) = Jet::align(x, y);
            let (y, th) = Jet::align(y, th);
            let (a, b, c, d) = iwasawa_abcd(&x, &y, &th);
            let lhs = d.val() * a.grad[0] - b.val() * c.grad[0];
            let rhs = c.val() * b.grad[0] - a.val() * d.grad[0];
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
