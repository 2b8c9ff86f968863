//! Maurer-Cartan machinery: numeric invariant coframes from g^-1 dg, their
//! closed forms, dual frames, vector-field brackets and frame structure
//! constants.
//!
//! Conventions fixed once for the whole crate: the algebra order is
//! (F, G, H, P, Q, R); coframe matrices hold one-forms as rows over the
//! coordinate differentials; frame matrices hold the dual vector fields as
//! columns over the coordinate partials.

use crate::error::{Error, Result};
use crate::group::{self, Chart, GroupElement};
use crate::jet::{seed, Jet, Scalar};
use crate::lie;
use crate::space::{MetricParams, SpaceId};
use nalgebra::DMatrix;

pub type Mat = DMatrix<f64>;

/// A jet-capable vector field: coordinates in, components out.
pub type FieldFn = Box<dyn Fn(&[Jet<f64>]) -> Vec<Jet<f64>> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Coframe rows and the dual frame columns at a point.
#[derive(Clone, Debug)]
pub struct FramePacket {
    pub coords: Vec<f64>,
    pub coframe: Mat,
    pub frame: Mat,
    /// 2-norm condition number of the coframe matrix.
    pub condition: f64,
}

impl FramePacket {
    fn from_coframe(coords: Vec<f64>, coframe: Mat) -> Result<Self> {
        let (frame, condition) = dual_frame(&coframe)?;
        Ok(FramePacket { coords, coframe, frame, condition })
    }

    /// Sup-norm of coframe * frame - identity.
    pub fn pairing_defect(&self) -> f64 {
        let n = self.coframe.nrows();
        (&self.coframe * &self.frame - Mat::identity(n, n)).amax()
    }
}

/// Matrix inverse of a coframe, with its condition number.
pub fn dual_frame(coframe: &Mat) -> Result<(Mat, f64)> {
    let svd = coframe.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    let frame = coframe.clone().try_inverse().ok_or(Error::Singular)?;
    Ok((frame, condition))
}

/// Unscaled left-invariant coframe rows on a group chart, closed form.
///
/// Row order follows the algebra order: H1 gives (P, Q, R) rows, SL(2,R)
/// gives (F, G, H), the Jacobi group gives (F, G, H, P, Q, R).
pub fn raw_coframe_rows<S: Scalar>(space: SpaceId, c: &[S]) -> Result<Vec<Vec<S>>> {
    let zero = || S::from_f64(0.0);
    let one = || S::from_f64(1.0);
    match space {
        SpaceId::H1 => {
            let (l, m) = (c[0].clone(), c[1].clone());
            Ok(vec![
                vec![one(), zero(), zero()],
                vec![zero(), one(), zero()],
                vec![m, -l, one()],
            ])
        }
        SpaceId::Sl2r => {
            let (y, t) = (c[1].clone(), c[2].clone());
            let iy = y.recip();
            let two_t = t.clone() + t.clone();
            let (s2, c2) = (two_t.sin(), two_t.cos());
            let st = t.sin();
            let ct = t.cos();
            let half = S::from_f64(0.5);
            Ok(vec![
                // row F: dx cos^2/y + dy sin2t/(2y) + dtheta
                vec![
                    ct.clone() * ct.clone() * iy.clone(),
                    s2.clone() * half.clone() * iy.clone(),
                    one(),
                ],
                // row G: -dx sin^2/y + dy sin2t/(2y) - dtheta
                vec![
                    -(st.clone() * st.clone() * iy.clone()),
                    s2.clone() * half.clone() * iy.clone(),
                    -one(),
                ],
                // row H: -dx sin2t/(2y) + dy cos2t/(2y)
                vec![-(s2 * half.clone() * iy.clone()), c2 * half * iy, zero()],
            ])
        }
        SpaceId::Gj1 => {
            let sl = raw_coframe_rows(SpaceId::Sl2r, &c[..3])?;
            let (a, b, cc, d) = group::iwasawa_abcd(&c[0], &c[1], &c[2]);
            let (p, q) = (c[3].clone(), c[4].clone());
            let pad =
                |r: &[S]| vec![r[0].clone(), r[1].clone(), r[2].clone(), zero(), zero(), zero()];
            Ok(vec![
                pad(&sl[0]),
                pad(&sl[1]),
                pad(&sl[2]),
                vec![zero(), zero(), zero(), a, cc, zero()],
                vec![zero(), zero(), zero(), b, d, zero()],
                vec![zero(), zero(), zero(), q, -p, one()],
            ])
        }
        _ => Err(Error::BadChart("raw coframes live on the group spaces")),
    }
}

/// Row weights carrying the raw coframe into the scaled one-forms.
pub fn scale_matrix(space: SpaceId, params: &MetricParams) -> Result<Mat> {
    let sa = params.alpha.sqrt();
    let sb = params.beta.sqrt();
    let sg = params.gamma.sqrt();
    let sd = params.delta.sqrt();
    match space {
        SpaceId::H1 => Ok(Mat::identity(3, 3)),
        SpaceId::Sl2r => Ok(Mat::from_row_slice(
            3,
            3,
            &[sa, sa, 0.0, 0.0, 0.0, 2.0 * sa, sb, -sb, 0.0],
        )),
        SpaceId::Gj1 => {
            let mut w = Mat::zeros(6, 6);
            w[(0, 0)] = sa;
            w[(0, 1)] = sa;
            w[(1, 2)] = 2.0 * sa;
            w[(2, 0)] = sb;
            w[(2, 1)] = -sb;
            w[(3, 3)] = sg;
            w[(4, 4)] = sg;
            w[(5, 5)] = sd;
            Ok(w)
        }
        _ => Err(Error::BadChart("scaling applies to the group coframes")),
    }
}

/// Scaled invariant coframe rows in closed form, for all six Jacobi spaces.
pub fn closed_coframe_rows<S: Scalar>(
    space: SpaceId,
    params: &MetricParams,
    c: &[S],
) -> Result<Vec<Vec<S>>> {
    let zero = || S::from_f64(0.0);
    let sa = || S::from_f64(params.alpha.sqrt());
    let sb = || S::from_f64(params.beta.sqrt());
    let sg = || S::from_f64(params.gamma.sqrt());
    let sd = || S::from_f64(params.delta.sqrt());
    match space {
        SpaceId::H1 => raw_coframe_rows(space, c),
        SpaceId::Sl2r | SpaceId::Gj1 => {
            let (y, t) = (c[1].clone(), c[2].clone());
            let iy = y.recip();
            let two_t = t.clone() + t.clone();
            let (s2, c2) = (two_t.sin(), two_t.cos());
            let l1 = vec![sa() * c2.clone() * iy.clone(), sa() * s2.clone() * iy.clone(), zero()];
            let l2 = vec![-(sa() * s2 * iy.clone()), sa() * c2 * iy.clone(), zero()];
            let l3 = vec![sb() * iy, zero(), sb() * S::from_f64(2.0)];
            if space == SpaceId::Sl2r {
                return Ok(vec![l1, l2, l3]);
            }
            let (a, b, cc, d) = group::iwasawa_abcd(&c[0], &c[1], &c[2]);
            let (p, q) = (c[3].clone(), c[4].clone());
            let pad =
                |r: &[S]| vec![r[0].clone(), r[1].clone(), r[2].clone(), zero(), zero(), zero()];
            Ok(vec![
                pad(&l1),
                pad(&l2),
                pad(&l3),
                vec![zero(), zero(), zero(), sg() * a, sg() * cc, zero()],
                vec![zero(), zero(), zero(), sg() * b, sg() * d, zero()],
                vec![zero(), zero(), zero(), sd() * q, -(sd() * p), sd()],
            ])
        }
        SpaceId::X1 => {
            let iy = c[1].recip();
            Ok(vec![vec![sa() * iy.clone(), zero()], vec![zero(), sa() * iy]])
        }
        SpaceId::Xj1 | SpaceId::ExtXj1 => {
            // theta = 0 section of the group coframe
            let iy = c[1].recip();
            let sy = c[1].sqrt();
            let isy = sy.recip();
            let x = c[0].clone();
            let n = space.dim();
            let mut rows = vec![
                vec![sa() * iy.clone(), zero()],
                vec![zero(), sa() * iy],
                vec![zero(), zero(), sg() * sy, zero()],
                vec![zero(), zero(), sg() * x * isy.clone(), sg() * isy],
            ];
            rows[0].resize(n, zero());
            rows[1].resize(n, zero());
            rows[2].resize(n, zero());
            rows[3].resize(n, zero());
            if space == SpaceId::ExtXj1 {
                let (p, q) = (c[2].clone(), c[3].clone());
                rows.push(vec![zero(), zero(), sd() * q, -(sd() * p), sd()]);
            }
            Ok(rows)
        }
        _ => Err(Error::BadChart("no invariant coframe registered for this space")),
    }
}

/// Printed closed frames: columns are the invariant vector fields dual to the
/// scaled coframe.
pub fn closed_frame_cols<S: Scalar>(
    space: SpaceId,
    params: &MetricParams,
    c: &[S],
) -> Result<Vec<Vec<S>>> {
    let zero = || S::from_f64(0.0);
    let isa = || S::from_f64(params.alpha.sqrt().recip());
    let isb = || S::from_f64(params.beta.sqrt().recip());
    let isg = || S::from_f64(params.gamma.sqrt().recip());
    let isd = || S::from_f64(params.delta.sqrt().recip());
    let half = || S::from_f64(0.5);
    match space {
        SpaceId::H1 => {
            let (l, m) = (c[0].clone(), c[1].clone());
            Ok(vec![
                vec![S::from_f64(1.0), zero(), -m],
                vec![zero(), S::from_f64(1.0), l],
                vec![zero(), zero(), S::from_f64(1.0)],
            ])
        }
        SpaceId::Sl2r | SpaceId::Gj1 => {
            let (y, t) = (c[1].clone(), c[2].clone());
            let two_t = t.clone() + t.clone();
            let (s2, c2) = (two_t.sin(), two_t.cos());
            let l1 = vec![
                isa() * y.clone() * c2.clone(),
                isa() * y.clone() * s2.clone(),
                -(isa() * half() * c2.clone()),
            ];
            let l2 = vec![
                -(isa() * y.clone() * s2.clone()),
                isa() * y.clone() * c2.clone(),
                isa() * half() * s2.clone(),
            ];
            let l3 = vec![zero(), zero(), isb() * half()];
            if space == SpaceId::Sl2r {
                return Ok(vec![l1, l2, l3]);
            }
            let (a, b, cc, d) = group::iwasawa_abcd(&c[0], &c[1], &c[2]);
            let (p, q) = (c[3].clone(), c[4].clone());
            let pad = |v: &[S]| {
                vec![v[0].clone(), v[1].clone(), v[2].clone(), zero(), zero(), zero()]
            };
            let l4 = vec![
                zero(),
                zero(),
                zero(),
                isg() * d.clone(),
                -(isg() * b.clone()),
                -(isg() * (p.clone() * b + q.clone() * d)),
            ];
            let l5 = vec![
                zero(),
                zero(),
                zero(),
                -(isg() * cc.clone()),
                isg() * a.clone(),
                isg() * (p * a + q * cc),
            ];
            let l6 = vec![zero(), zero(), zero(), zero(), zero(), isd()];
            Ok(vec![pad(&l1), pad(&l2), pad(&l3), l4, l5, l6])
        }
        SpaceId::X1 => {
            let y = c[1].clone();
            Ok(vec![
                vec![isa() * y.clone(), zero()],
                vec![zero(), isa() * y],
            ])
        }
        SpaceId::Xj1 | SpaceId::ExtXj1 => {
            let (x, y) = (c[0].clone(), c[1].clone());
            let sy = y.sqrt();
            let isy = sy.recip();
            let n = space.dim();
            let mut l1 = vec![isa() * y.clone(), zero()];
            let mut l2 = vec![zero(), isa() * y];
            let mut l4 = vec![zero(), zero(), isg() * isy.clone(), -(isg() * x * isy.clone())];
            let mut l5 = vec![zero(), zero(), zero(), isg() * sy.clone()];
            l1.resize(n, zero());
            l2.resize(n, zero());
            l4.resize(n, zero());
            l5.resize(n, zero());
            if space == SpaceId::Xj1 {
                Ok(vec![l1, l2, l4, l5])
            } else {
                let (p, q) = (c[2].clone(), c[3].clone());
                // kappa components of the fiber fields
                l4[4] = -(isg() * (p.clone() * c[0].clone() + q) * isy);
                l5[4] = isg() * p * sy;
                let l6 = vec![zero(), zero(), zero(), zero(), isd()];
                Ok(vec![l1, l2, l4, l5, l6])
            }
        }
        _ => Err(Error::BadChart("no invariant frame registered for this space")),
    }
}

fn rows_to_mat(rows: &[Vec<f64>]) -> Mat {
    let n = rows.len();
    Mat::from_fn(n, rows[0].len(), |i, j| rows[i][j])
}

fn cols_to_mat(cols: &[Vec<f64>]) -> Mat {
    let n = cols.len();
    Mat::from_fn(cols[0].len(), n, |i, j| cols[j][i])
}

/// Closed-form frame packet (scaled coframe plus its inverse).
pub fn closed_coframe(space: SpaceId, params: &MetricParams, coords: &[f64]) -> Result<FramePacket> {
    params.validate_for(space)?;
    let rows = closed_coframe_rows::<f64>(space, params, coords)?;
    FramePacket::from_coframe(coords.to_vec(), rows_to_mat(&rows))
}

/// Closed frame columns as an f64 matrix.
pub fn closed_frame_matrix(space: SpaceId, params: &MetricParams, coords: &[f64]) -> Result<Mat> {
    Ok(cols_to_mat(&closed_frame_cols::<f64>(space, params, coords)?))
}

/// Numeric invariant coframe of a group from g^-1 dg (left) or dg g^-1
/// (right): jet partial derivatives of the embedding, decomposed on the
/// algebra basis. Rows come back in the algebra order, unscaled.
pub fn numeric_raw_coframe(space: SpaceId, coords: &[f64], side: Side) -> Result<Vec<Vec<f64>>> {
    let chart = space.group_chart().ok_or(Error::BadChart("need a group space"))?;
    let basis = match space {
        SpaceId::H1 => lie::heisenberg_basis(),
        SpaceId::Sl2r => lie::sl2r_basis(),
        SpaceId::Gj1 => lie::jacobi_basis(),
        _ => unreachable!(),
    };
    let n = coords.len();
    let jc: Vec<Jet<f64>> = if space == SpaceId::H1 {
        // lift (lambda, mu, kappa) to the 6-coordinate chart with M = 1
        let mut full = vec![Jet::constant(3, 0.0), Jet::constant(3, 1.0), Jet::constant(3, 0.0)];
        full.extend(seed(coords));
        full
    } else {
        seed(coords)
    };
    let gm = group::embed_generic(chart, &jc)?;
    let g0 = gm.values();
    let g0_inv = g0.clone().try_inverse().ok_or(Error::Singular)?;
    let mut rows = vec![vec![0.0; n]; basis.dim()];
    for i in 0..n {
        let di = Mat::from_fn(4, 4, |r, s| gm.get(r, s).grad.get(i).copied().unwrap_or(0.0));
        let m = match side {
            Side::Left => &g0_inv * &di,
            Side::Right => &di * &g0_inv,
        };
        let (coeffs, resid) = lie::decompose(&basis.generators, &m);
        if resid > 1e-10 {
            return Err(Error::NotInAlgebra(resid));
        }
        for (a, &v) in coeffs.iter().enumerate() {
            rows[a][i] = v;
        }
    }
    Ok(rows)
}

/// Scaled numeric coframe packet for any of the six Jacobi spaces. Quotient
/// spaces lift to their group at theta = 0 and keep the rows and columns that
/// survive the projection.
pub fn numeric_coframe(space: SpaceId, params: &MetricParams, coords: &[f64]) -> Result<FramePacket> {
    params.validate_for(space)?;
    if let Some((parent, keep)) = space.frame_lift() {
        let lifted = space.lift_coords(coords).expect("liftable");
        let raw = numeric_raw_coframe(parent, &lifted, Side::Left)?;
        let w = scale_matrix(parent, params)?;
        let scaled = &w * rows_to_mat(&raw);
        let sub = Mat::from_fn(keep.len(), keep.len(), |i, j| scaled[(keep[i], keep[j])]);
        return FramePacket::from_coframe(coords.to_vec(), sub);
    }
    let raw = numeric_raw_coframe(space, coords, Side::Left)?;
    let w = scale_matrix(space, params)?;
    FramePacket::from_coframe(coords.to_vec(), &w * rows_to_mat(&raw))
}

/// Jet bracket of two vector fields: [X,Y]^j = X^i d_i Y^j - Y^i d_i X^j.
pub fn vf_bracket(x: &FieldFn, y: &FieldFn, point: &[f64]) -> Vec<f64> {
    let jp = seed(point);
    let xv = x(&jp);
    let yv = y(&jp);
    let n = point.len();
    let mut out = vec![0.0; n];
    for j in 0..n {
        for i in 0..n {
            let dy = yv[j].grad.get(i).copied().unwrap_or(0.0);
            let dx = xv[j].grad.get(i).copied().unwrap_or(0.0);
            out[j] += xv[i].val * dy - yv[i].val * dx;
        }
    }
    out
}

/// Frame field `j` of a space as a jet-capable closure.
pub fn frame_field(space: SpaceId, params: &MetricParams, j: usize) -> FieldFn {
    let params = *params;
    Box::new(move |c: &[Jet<f64>]| {
        closed_frame_cols::<Jet<f64>>(space, &params, c).expect("frame field")[j].clone()
    })
}

/// Structure constants of the invariant frame, from numeric brackets at the
/// sample points. `out[k][i][j]` is the L^k coefficient in [L^i, L^j].
/// Fails with [`Error::NotInvariant`] when the constants drift across points.
pub fn frame_structure_constants(
    space: SpaceId,
    params: &MetricParams,
    points: &[Vec<f64>],
) -> Result<(Vec<Vec<Vec<f64>>>, f64)> {
    if points.len() < 5 {
        return Err(Error::Config("need at least 5 sample points".into()));
    }
    let m = space.dim();
    let fields: Vec<FieldFn> = (0..m).map(|j| frame_field(space, params, j)).collect();
    let mut all: Vec<Vec<Vec<Vec<f64>>>> = Vec::new();
    for pt in points {
        let frame = closed_frame_matrix(space, params, pt)?;
        let lu = frame.clone().lu();
        let mut c = vec![vec![vec![0.0; m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                let br = vf_bracket(&fields[i], &fields[j], pt);
                let sol = lu
                    .solve(&nalgebra::DVector::from_row_slice(&br))
                    .ok_or(Error::Singular)?;
                for k in 0..m {
                    c[k][i][j] = sol[k];
                }
            }
        }
        all.push(c);
    }
    let mut mean = vec![vec![vec![0.0; m]; m]; m];
    for c in &all {
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    mean[k][i][j] += c[k][i][j] / all.len() as f64;
                }
            }
        }
    }
    let mut spread = 0.0f64;
    for c in &all {
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    spread = spread.max((c[k][i][j] - mean[k][i][j]).abs());
                }
            }
        }
    }
    if spread > 1e-8 {
        return Err(Error::NotInvariant(spread));
    }
    Ok((mean, spread))
}

/// One published bracket-table entry: `[L^i, L^j]` has coefficient `coeff` on
/// `L^k` and zero elsewhere.
#[derive(Clone, Debug)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: f64,
}

/// The published commutator table of the six-frame, as printed.
pub fn printed_frame_table(params: &MetricParams) -> Vec<TableEntry> {
    let (a, b, g, d) = (params.alpha, params.beta, params.gamma, params.delta);
    let sa = a.sqrt();
    let sb = b.sqrt();
    vec![
        TableEntry { i: 0, j: 1, k: 2, coeff: -sb / a },
        TableEntry { i: 1, j: 2, k: 0, coeff: 1.0 / (2.0 * sb) },
        TableEntry { i: 2, j: 0, k: 1, coeff: 1.0 / sb },
        TableEntry { i: 0, j: 3, k: 4, coeff: -1.0 / (2.0 * sa) },
        TableEntry { i: 0, j: 4, k: 3, coeff: -1.0 / (2.0 * sa) },
        TableEntry { i: 0, j: 5, k: 5, coeff: 0.0 },
        TableEntry { i: 1, j: 3, k: 3, coeff: -1.0 / (2.0 * sa) },
        TableEntry { i: 1, j: 4, k: 4, coeff: 1.0 / (2.0 * sa) },
        TableEntry { i: 1, j: 5, k: 5, coeff: 0.0 },
        TableEntry { i: 2, j: 3, k: 4, coeff: -1.0 / (2.0 * sa) },
        TableEntry { i: 2, j: 4, k: 3, coeff: 1.0 / (2.0 * sb) },
        TableEntry { i: 2, j: 5, k: 5, coeff: 0.0 },
        TableEntry { i: 3, j: 4, k: 5, coeff: 2.0 * d.sqrt() / g },
        TableEntry { i: 3, j: 5, k: 5, coeff: 0.0 },
        TableEntry { i: 4, j: 5, k: 5, coeff: 0.0 },
    ]
}

/// An entry-level disagreement between the published table and the numeric
/// structure constants.
#[derive(Clone, Debug)]
pub struct TableMismatch {
    pub i: usize,
    pub j: usize,
    pub printed: f64,
    pub computed: f64,
    pub component: usize,
}

/// Compare numeric frame constants against the published table.
pub fn compare_frame_table(
    params: &MetricParams,
    computed: &[Vec<Vec<f64>>],
) -> Vec<TableMismatch> {
    let mut out = Vec::new();
    for e in printed_frame_table(params) {
        let m = computed.len();
        for k in 0..m {
            let printed = if k == e.k { e.coeff } else { 0.0 };
            let got = computed[k][e.i][e.j];
            if (got - printed).abs() > 1e-8 {
                out.push(TableMismatch {
                    i: e.i,
                    j: e.j,
                    printed,
                    computed: got,
                    component: k,
                });
            }
        }
    }
    out
}

/// Sup-norm of d lambda_a + (1/2) c^a_{bc} lambda_b wedge lambda_c over the
/// raw coframe of a group, with the algebra structure constants.
pub fn maurer_cartan_residual(space: SpaceId, coords: &[f64]) -> Result<f64> {
    let basis = match space {
        SpaceId::H1 => lie::heisenberg_basis(),
        SpaceId::Sl2r => lie::sl2r_basis(),
        SpaceId::Gj1 => lie::jacobi_basis(),
        _ => return Err(Error::BadChart("need a group space")),
    };
    let n = coords.len();
    let jc = seed(coords);
    let rows = raw_coframe_rows::<Jet<f64>>(space, &jc)?;
    let rows0 = raw_coframe_rows::<f64>(space, coords)?;
    let m = basis.dim();
    let mut worst = 0.0f64;
    for a in 0..m {
        for i in 0..n {
            for j in (i + 1)..n {
                let d_ij = rows[a][j].grad.get(i).copied().unwrap_or(0.0)
                    - rows[a][i].grad.get(j).copied().unwrap_or(0.0);
                let mut quad = 0.0;
                for b in 0..m {
                    for c in 0..m {
                        quad += basis.structure[a][b][c]
                            * (rows0[b][i] * rows0[c][j] - rows0[b][j] * rows0[c][i]);
                    }
                }
                worst = worst.max((d_ij + 0.5 * quad).abs());
            }
        }
    }
    Ok(worst)
}

/// Left translation in the chart coordinates of a group space.
pub fn group_left_translate<S: Scalar>(
    space: SpaceId,
    g: &GroupElement,
    p: &[S],
) -> Result<Vec<S>> {
    match space {
        SpaceId::H1 => {
            let (gl, gm, gk) = g.heis_ez();
            let (gl, gm, gk) = (S::from_f64(gl), S::from_f64(gm), S::from_f64(gk));
            Ok(vec![
                gl.clone() + p[0].clone(),
                gm.clone() + p[1].clone(),
                gk + p[2].clone() + gl * p[1].clone() - gm * p[0].clone(),
            ])
        }
        SpaceId::Sl2r => {
            let (a, b, c, d) = g.abcd();
            let abcd = (S::from_f64(a), S::from_f64(b), S::from_f64(c), S::from_f64(d));
            let (x1, y1, t1) = group::alignn(&abcd, p)?;
            Ok(vec![x1, y1, t1])
        }
        SpaceId::Gj1 => group::left_translate_generic(g, Chart::S, p),
        _ => Err(Error::BadChart("need a group space")),
    }
}

/// Pullback defect of the scaled coframe under left translation by `g`:
/// || coframe(g p) J_g(p) - coframe(p) ||_inf.
pub fn left_invariance_residual(
    space: SpaceId,
    params: &MetricParams,
    g: &GroupElement,
    coords: &[f64],
) -> Result<f64> {
    let jp = seed(coords);
    let moved = group_left_translate(space, g, &jp)?;
    let n = coords.len();
    let jac = Mat::from_fn(n, n, |i, j| moved[i].grad.get(j).copied().unwrap_or(0.0));
    let target: Vec<f64> = moved.iter().map(|v| v.val).collect();
    let cof_gp = numeric_coframe(space, params, &target)?.coframe;
    let cof_p = numeric_coframe(space, params, coords)?.coframe;
    Ok((cof_gp * jac - cof_p).amax())
}
