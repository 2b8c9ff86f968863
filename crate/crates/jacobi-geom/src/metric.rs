//! Invariant metrics on the Jacobi-family spaces and the comparison corpus,
//! with Christoffel symbols, Killing residuals, fundamental vector fields and
//! isometry pullback checks.

use crate::error::{Error, Result};
use crate::frame::FieldFn;
use crate::gmat::GMat;
use crate::group::{self, Chart, GroupElement};
use crate::jet::{seed, Jet, Scalar};
use crate::lie::{self, AlgebraBasis};
use crate::space::{MetricParams, SpaceId};
use nalgebra::DMatrix;

pub type Mat = DMatrix<f64>;

/// Closed-form metric matrix entries over a generic scalar. No parameter
/// validation; callers restricting a degenerate sector use this directly.
pub fn metric_rows<S: Scalar>(
    space: SpaceId,
    params: &MetricParams,
    c: &[S],
) -> Result<Vec<Vec<S>>> {
    let zero = || S::from_f64(0.0);
    let one = || S::from_f64(1.0);
    let al = || S::from_f64(params.alpha);
    let be = || S::from_f64(params.beta);
    let ga = || S::from_f64(params.gamma);
    let de = || S::from_f64(params.delta);
    match space {
        SpaceId::H1 => {
            let (l, m) = (c[0].clone(), c[1].clone());
            Ok(vec![
                vec![one() + m.clone() * m.clone(), -(l.clone() * m.clone()), m.clone()],
                vec![-(l.clone() * m.clone()), one() + l.clone() * l.clone(), -l.clone()],
                vec![m, -l, one()],
            ])
        }
        SpaceId::Sl2r => {
            let y = c[1].clone();
            let iy2 = (y.clone() * y.clone()).recip();
            let iy = y.recip();
            let two = S::from_f64(2.0);
            Ok(vec![
                vec![(al() + be()) * iy2.clone(), zero(), two.clone() * be() * iy.clone()],
                vec![zero(), al() * iy2, zero()],
                vec![two.clone() * be() * iy, zero(), S::from_f64(4.0) * be()],
            ])
        }
        SpaceId::X1 => {
            let y = c[1].clone();
            let w = al() * (y.clone() * y).recip();
            Ok(vec![vec![w.clone(), zero()], vec![zero(), w]])
        }
        SpaceId::Xj1 | SpaceId::ExtXj1 => {
            let (x, y) = (c[0].clone(), c[1].clone());
            let iy2 = (y.clone() * y.clone()).recip();
            let iy = y.clone().recip();
            let gxx = al() * iy2;
            let gpp = ga() * (x.clone() * x.clone() + y.clone() * y.clone()) * iy.clone();
            let gqq = ga() * iy.clone();
            let gpq = ga() * x.clone() * iy;
            if space == SpaceId::Xj1 {
                return Ok(vec![
                    vec![gxx.clone(), zero(), zero(), zero()],
                    vec![zero(), gxx, zero(), zero()],
                    vec![zero(), zero(), gpp, gpq.clone()],
                    vec![zero(), zero(), gpq, gqq],
                ]);
            }
            let (p, q) = (c[2].clone(), c[3].clone());
            Ok(vec![
                vec![gxx.clone(), zero(), zero(), zero(), zero()],
                vec![zero(), gxx, zero(), zero(), zero()],
                vec![
                    zero(),
                    zero(),
                    gpp + de() * q.clone() * q.clone(),
                    gpq.clone() - de() * p.clone() * q.clone(),
                    de() * q.clone(),
                ],
                vec![
                    zero(),
                    zero(),
                    gpq - de() * p.clone() * q.clone(),
                    gqq + de() * p.clone() * p.clone(),
                    -(de() * p.clone()),
                ],
                vec![zero(), zero(), de() * q, -(de() * p), de()],
            ])
        }
        SpaceId::Gj1 => {
            let sl = metric_rows(SpaceId::Sl2r, params, &c[..3])?;
            let fiber = metric_rows(
                SpaceId::ExtXj1,
                params,
                &[c[0].clone(), c[1].clone(), c[3].clone(), c[4].clone(), c[5].clone()],
            )?;
            let mut rows = vec![vec![zero(); 6]; 6];
            for i in 0..3 {
                for j in 0..3 {
                    rows[i][j] = sl[i][j].clone();
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    rows[3 + i][3 + j] = fiber[2 + i][2 + j].clone();
                }
            }
            Ok(rows)
        }
        SpaceId::Sphere2 => {
            let st = c[0].sin();
            Ok(vec![vec![one(), zero()], vec![zero(), st.clone() * st]])
        }
        SpaceId::Disk1 => {
            let b = one() - c[0].clone() * c[0].clone() - c[1].clone() * c[1].clone();
            if b.val() <= 0.0 {
                return Err(Error::OutOfDomain);
            }
            let w = S::from_f64(4.0) * (b.clone() * b).recip();
            Ok(vec![vec![w.clone(), zero()], vec![zero(), w]])
        }
        SpaceId::Plane2 => Ok(vec![vec![one(), zero()], vec![zero(), one()]]),
        SpaceId::Bcv { kappa, tau } => {
            let (x, y) = (c[0].clone(), c[1].clone());
            let kq = S::from_f64(kappa / 4.0);
            let d = one() + kq * (x.clone() * x.clone() + y.clone() * y.clone());
            if d.val() <= 0.0 {
                return Err(Error::OutOfDomain);
            }
            let id2 = (d.clone() * d.clone()).recip();
            let t = S::from_f64(tau);
            let ty_d = t.clone() * y.clone() / d.clone();
            let tx_d = t.clone() * x.clone() / d;
            Ok(vec![
                vec![
                    id2.clone() + ty_d.clone() * ty_d.clone(),
                    -(ty_d.clone() * tx_d.clone()),
                    ty_d.clone(),
                ],
                vec![
                    -(ty_d.clone() * tx_d.clone()),
                    id2 + tx_d.clone() * tx_d.clone(),
                    -tx_d.clone(),
                ],
                vec![ty_d, -tx_d, one()],
            ])
        }
        SpaceId::PoincareHp => {
            let w = (c[0].clone() * c[0].clone()).recip();
            Ok(vec![
                vec![w.clone(), zero(), zero()],
                vec![zero(), w.clone(), zero()],
                vec![zero(), zero(), w],
            ])
        }
    }
}

fn rows_to_mat(rows: &[Vec<f64>]) -> Mat {
    Mat::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j])
}

/// Metric matrix at a point; validates parameters, domain and definiteness.
pub fn metric_at(space: SpaceId, params: &MetricParams, coords: &[f64]) -> Result<Mat> {
    params.validate_for(space)?;
    if !space.in_domain(coords) {
        return Err(Error::OutOfDomain);
    }
    let g = rows_to_mat(&metric_rows::<f64>(space, params, coords)?);
    let sym = (&g - g.transpose()).amax();
    debug_assert!(sym < 1e-14);
    if nalgebra::Cholesky::new(g.clone()).is_none() {
        return Err(Error::OutOfDomain);
    }
    Ok(g)
}

/// Levi-Civita symbols from exact jet derivatives of the metric.
/// `out[i][j][k]` holds the upper index first.
pub fn christoffels_at(
    space: SpaceId,
    params: &MetricParams,
    coords: &[f64],
) -> Result<Vec<Vec<Vec<f64>>>> {
    let n = coords.len();
    let jc = seed(coords);
    let rows = metric_rows::<Jet<f64>>(space, params, &jc)?;
    let g = Mat::from_fn(n, n, |i, j| rows[i][j].val);
    let ginv = g.try_inverse().ok_or(Error::Singular)?;
    let d = |l: usize, j: usize, k: usize| rows[j][k].grad.get(l).copied().unwrap_or(0.0);
    let mut out = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = 0.0;
                for l in 0..n {
                    acc += ginv[(i, l)] * (d(j, l, k) + d(k, l, j) - d(l, j, k));
                }
                out[i][j][k] = 0.5 * acc;
            }
        }
    }
    Ok(out)
}

/// Central-finite-difference Christoffels, the independent oracle.
pub fn christoffels_fd(
    space: SpaceId,
    params: &MetricParams,
    coords: &[f64],
    h: f64,
) -> Result<Vec<Vec<Vec<f64>>>> {
    let n = coords.len();
    let gfun = |c: &[f64]| -> Result<Mat> {
        Ok(rows_to_mat(&metric_rows::<f64>(space, params, c)?))
    };
    let g = gfun(coords)?;
    let ginv = g.try_inverse().ok_or(Error::Singular)?;
    let mut dg = vec![Mat::zeros(n, n); n];
    for l in 0..n {
        let mut cp = coords.to_vec();
        let mut cm = coords.to_vec();
        cp[l] += h;
        cm[l] -= h;
        dg[l] = (gfun(&cp)? - gfun(&cm)?) / (2.0 * h);
    }
    let mut out = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = 0.0;
                for l in 0..n {
                    acc += ginv[(i, l)] * (dg[j][(l, k)] + dg[k][(l, j)] - dg[l][(j, k)]);
                }
                out[i][j][k] = 0.5 * acc;
            }
        }
    }
    Ok(out)
}

/// Lie-derivative residual of an explicit metric along a field:
/// R_lc = X^m d_m g_lc + g_mc d_l X^m + g_lm d_c X^m. Zero iff Killing.
pub fn lie_derivative_residual(
    gfun: &dyn Fn(&[Jet<f64>]) -> Vec<Vec<Jet<f64>>>,
    field: &FieldFn,
    coords: &[f64],
) -> Mat {
    let n = coords.len();
    let jc = seed(coords);
    let rows = gfun(&jc);
    let xv = field(&jc);
    let g = |i: usize, j: usize| rows[i][j].val;
    let dg = |m: usize, i: usize, j: usize| rows[i][j].grad.get(m).copied().unwrap_or(0.0);
    let dx = |l: usize, m: usize| xv[m].grad.get(l).copied().unwrap_or(0.0);
    let mut out = Mat::zeros(n, n);
    for l in 0..n {
        for c in 0..n {
            let mut acc = 0.0;
            for m in 0..n {
                acc += xv[m].val * dg(m, l, c) + g(m, c) * dx(l, m) + g(l, m) * dx(c, m);
            }
            out[(l, c)] = acc;
        }
    }
    out
}

/// Killing residual against a registered space metric.
pub fn killing_residual(
    field: &FieldFn,
    space: SpaceId,
    params: &MetricParams,
    coords: &[f64],
) -> Result<Mat> {
    let params = *params;
    let gfun = move |jc: &[Jet<f64>]| {
        metric_rows::<Jet<f64>>(space, &params, jc).expect("metric in domain")
    };
    Ok(lie_derivative_residual(&gfun, field, coords))
}

/// Algebra acting on a space, in the crate's fixed generator order.
pub fn acting_basis(space: SpaceId) -> Result<AlgebraBasis> {
    match space {
        SpaceId::H1 => Ok(lie::heisenberg_basis()),
        SpaceId::Sl2r | SpaceId::X1 => Ok(lie::sl2r_basis()),
        SpaceId::Xj1 | SpaceId::ExtXj1 | SpaceId::Gj1 => Ok(lie::jacobi_basis()),
        _ => Err(Error::BadGenerator),
    }
}

/// Orbit map g . p on a homogeneous space, generic over the scalar field of
/// both the group matrix and the point.
pub fn orbit_generic<S: Scalar>(space: SpaceId, gm: &GMat<S>, base: &[S]) -> Result<Vec<S>> {
    match space {
        SpaceId::H1 => {
            let (gl, gmu, gk) = (gm.get(1, 0), gm.get(1, 2), gm.get(1, 3));
            Ok(vec![
                gl.clone() + base[0].clone(),
                gmu.clone() + base[1].clone(),
                gk + base[2].clone() + gl * base[1].clone() - gmu * base[0].clone(),
            ])
        }
        SpaceId::Sl2r => {
            let abcd = (gm.get(0, 0), gm.get(0, 2), gm.get(2, 0), gm.get(2, 2));
            let (x, y, t) = group::alignn(&abcd, base)?;
            Ok(vec![x, y, t])
        }
        SpaceId::X1 => group::act_generic(gm, Chart::HalfPlane, base),
        SpaceId::Xj1 => group::act_generic(gm, Chart::SjPlane, base),
        SpaceId::ExtXj1 => group::act_generic(gm, Chart::ExtSjPlane, base),
        SpaceId::Gj1 => {
            let pm = group::embed_generic(Chart::S, base)?;
            group::read_chart_generic(&gm.matmul(&pm), Chart::S)
        }
        _ => Err(Error::BadGenerator),
    }
}

/// Same orbit map for an f64 group element.
pub fn space_act(space: SpaceId, g: &GroupElement, coords: &[f64]) -> Result<Vec<f64>> {
    orbit_generic(space, &GMat::<f64>::from_f64_matrix(&g.matrix), coords)
}

/// Fundamental vector field of an algebra element at a point, numerically:
/// d/dt [exp(tX) . p] at t = 0 through a jet in t.
pub fn fundamental_field_numeric(
    space: SpaceId,
    coeffs: &[f64],
    coords: &[f64],
) -> Result<Vec<f64>> {
    let basis = acting_basis(space)?;
    if coeffs.len() != basis.dim() {
        return Err(Error::BadGenerator);
    }
    let x = basis.element(coeffs);
    let t: Jet<f64> = Jet::variable(1, 0, 0.0);
    let tx = GMat::<Jet<f64>>::from_f64_matrix(&x).scale(t);
    let gm = tx.exp();
    let base: Vec<Jet<f64>> = coords.iter().map(|&v| Jet::constant(1, v)).collect();
    let orbit = orbit_generic(space, &gm, &base)?;
    Ok(orbit.iter().map(|c| c.grad.first().copied().unwrap_or(0.0)).collect())
}

/// The numeric fundamental field as a jet-capable closure.
///
/// Expects plainly seeded input jets (coordinate i = variable i); the first
/// derivatives of the field come from the mixed (t, coordinate) jet block,
/// second derivatives are not populated.
pub fn fundamental_field_fn(space: SpaceId, coeffs: &[f64]) -> FieldFn {
    let coeffs = coeffs.to_vec();
    Box::new(move |jc: &[Jet<f64>]| {
        let basis = acting_basis(space).expect("acting basis");
        let x = basis.element(&coeffs);
        let n = jc.len();
        // combined jet variables: 0 = curve parameter, 1.. = coordinates
        let t: Jet<f64> = Jet::variable(n + 1, 0, 0.0);
        let tx = GMat::<Jet<f64>>::from_f64_matrix(&x).scale(t);
        let gm = tx.exp();
        let base: Vec<Jet<f64>> =
            (0..n).map(|i| Jet::variable(n + 1, i + 1, jc[i].val)).collect();
        let orbit = orbit_generic(space, &gm, &base).expect("orbit");
        orbit
            .iter()
            .map(|c| {
                let mut out = Jet::constant(n, c.grad[0]);
                for i in 0..n {
                    out.grad[i] = c.hess_at(0, i + 1);
                }
                out
            })
            .collect()
    })
}

/// Closed-form fundamental fields on the spaces where the text prints them.
/// Generator index follows the acting basis order.
pub fn fundamental_field_closed(space: SpaceId, generator: usize) -> Result<FieldFn> {
    fn boxed(f: impl Fn(&[Jet<f64>]) -> Vec<Jet<f64>> + Send + Sync + 'static) -> FieldFn {
        Box::new(f)
    }
    let zero = |n: usize| Jet::constant(n, 0.0);
    let one = |n: usize| Jet::constant(n, 1.0);
    match (space, generator) {
        // Heisenberg on itself: P*, Q*, R*
        (SpaceId::H1, 0) => Ok(boxed(move |c| vec![one(3), zero(3), c[1].clone()])),
        (SpaceId::H1, 1) => Ok(boxed(move |c| vec![zero(3), one(3), -c[0].clone()])),
        (SpaceId::H1, 2) => Ok(boxed(move |_| vec![zero(3), zero(3), one(3)])),
        // Half-plane: F*, G*, H*
        (SpaceId::X1, 0) => Ok(boxed(move |c| {
            let _ = &c;
            vec![one(2), zero(2)]
        })),
        (SpaceId::X1, 1) => Ok(boxed(move |c| {
            let (x, y) = (c[0].clone(), c[1].clone());
            vec![
                y.clone() * y.clone() - x.clone() * x.clone(),
                -(Jet::from_f64(2.0) * x * y),
            ]
        })),
        (SpaceId::X1, 2) => Ok(boxed(move |c| {
            let two = Jet::from_f64(2.0);
            vec![two.clone() * c[0].clone(), two * c[1].clone()]
        })),
        // SL(2,R) on itself: f*, g*, h*
        (SpaceId::Sl2r, 0) => Ok(boxed(move |_| vec![one(3), zero(3), zero(3)])),
        (SpaceId::Sl2r, 1) => Ok(boxed(move |c| {
            let (x, y) = (c[0].clone(), c[1].clone());
            vec![
                y.clone() * y.clone() - x.clone() * x.clone(),
                -(Jet::from_f64(2.0) * x * y.clone()),
                -y,
            ]
        })),
        (SpaceId::Sl2r, 2) => Ok(boxed(move |c| {
            let two = Jet::from_f64(2.0);
            vec![two.clone() * c[0].clone(), two * c[1].clone(), zero(3)]
        })),
        // Siegel-Jacobi half-plane, order (F, G, H, P, Q, R)
        (SpaceId::Xj1, 0) => Ok(boxed(move |c| {
            vec![one(4), zero(4), zero(4), -c[2].clone()]
        })),
        (SpaceId::Xj1, 1) => Ok(boxed(move |c| {
            let (x, y) = (c[0].clone(), c[1].clone());
            vec![
                y.clone() * y.clone() - x.clone() * x.clone(),
                -(Jet::from_f64(2.0) * x * y),
                -c[3].clone(),
                zero(4),
            ]
        })),
        (SpaceId::Xj1, 2) => Ok(boxed(move |c| {
            let two = Jet::from_f64(2.0);
            vec![
                two.clone() * c[0].clone(),
                two * c[1].clone(),
                -c[2].clone(),
                c[3].clone(),
            ]
        })),
        (SpaceId::Xj1, 3) => Ok(boxed(move |_| vec![zero(4), zero(4), one(4), zero(4)])),
        (SpaceId::Xj1, 4) => Ok(boxed(move |_| vec![zero(4), zero(4), zero(4), one(4)])),
        (SpaceId::Xj1, 5) => Ok(boxed(move |_| vec![zero(4); 4])),
        // Extended half-plane
        (SpaceId::ExtXj1, 0) => Ok(boxed(move |c| {
            vec![one(5), zero(5), zero(5), -c[2].clone(), zero(5)]
        })),
        (SpaceId::ExtXj1, 1) => Ok(boxed(move |c| {
            let (x, y) = (c[0].clone(), c[1].clone());
            vec![
                y.clone() * y.clone() - x.clone() * x.clone(),
                -(Jet::from_f64(2.0) * x * y),
                -c[3].clone(),
                zero(5),
                zero(5),
            ]
        })),
        (SpaceId::ExtXj1, 2) => Ok(boxed(move |c| {
            let two = Jet::from_f64(2.0);
            vec![
                two.clone() * c[0].clone(),
                two * c[1].clone(),
                -c[2].clone(),
                c[3].clone(),
                zero(5),
            ]
        })),
        (SpaceId::ExtXj1, 3) => Ok(boxed(move |c| {
            vec![zero(5), zero(5), one(5), zero(5), c[3].clone()]
        })),
        (SpaceId::ExtXj1, 4) => Ok(boxed(move |c| {
            vec![zero(5), zero(5), zero(5), one(5), -c[2].clone()]
        })),
        (SpaceId::ExtXj1, 5) => Ok(boxed(move |_| {
            vec![zero(5), zero(5), zero(5), zero(5), one(5)]
        })),
        _ => Err(Error::BadGenerator),
    }
}

/// || J^T g(g.p) J - g(p) ||_inf with J the jet Jacobian of the action at p.
pub fn isometry_pullback_residual(
    space: SpaceId,
    params: &MetricParams,
    g: &GroupElement,
    coords: &[f64],
) -> Result<f64> {
    let n = coords.len();
    let jc = seed(coords);
    let gm = GMat::<Jet<f64>>::from_f64_matrix(&g.matrix);
    let moved = orbit_generic(space, &gm, &jc)?;
    let jac = Mat::from_fn(n, n, |i, j| moved[i].grad.get(j).copied().unwrap_or(0.0));
    let target: Vec<f64> = moved.iter().map(|v| v.val).collect();
    let g_moved = metric_at(space, params, &target)?;
    let g_here = metric_at(space, params, coords)?;
    Ok((jac.transpose() * g_moved * jac - g_here).amax())
}
