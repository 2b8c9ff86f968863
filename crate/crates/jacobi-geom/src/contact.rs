//! Almost-contact and contact structure verification: the axioms, the
//! contact condition, the associated two-form, the normality tensor and the
//! cone symplectization, with the positive verdict on SL(2,R) and the
//! negative one on the extended Siegel-Jacobi half-plane.

use crate::error::{Error, Result};
use crate::frame::FieldFn;
use crate::jet::{seed, seed_nested, Jet, Scalar};
use crate::metric::{killing_residual, metric_at};
use crate::space::{MetricParams, SpaceId};
use nalgebra::DMatrix;

pub type Mat = DMatrix<f64>;

/// Matrix-valued tensor field Phi^i_j (first index up = row).
pub type TensorFn = Box<dyn Fn(&[Jet<f64>]) -> Vec<Vec<Jet<f64>>> + Send + Sync>;
/// One-form field (row of components).
pub type OneFormFn = Box<dyn Fn(&[Jet<f64>]) -> Vec<Jet<f64>> + Send + Sync>;

pub struct AlmostContactStructure {
    pub space: SpaceId,
    pub params: MetricParams,
    pub phi: TensorFn,
    pub xi: FieldFn,
    pub eta: OneFormFn,
}

/// The invariant one-form lambda_3 as a jet-capable row.
fn lambda3_row<S: Scalar>(beta: f64, c: &[S]) -> Vec<S> {
    let sb = S::from_f64(beta.sqrt());
    vec![sb.clone() / c[1].clone(), S::from_f64(0.0), S::from_f64(2.0) * sb]
}

/// The working tensor of the SL(2,R) structure: rescaled so its entries are
/// parameter free, [[0,1,0],[-1,0,0],[0,-1/(2y),0]].
pub fn phi_prime<S: Scalar>(c: &[S]) -> Vec<Vec<S>> {
    let z = || S::from_f64(0.0);
    let half = S::from_f64(0.5);
    vec![
        vec![z(), S::from_f64(1.0), z()],
        vec![S::from_f64(-1.0), z(), z()],
        vec![z(), -(half / c[1].clone()), z()],
    ]
}

/// The contact structure (Phi', L^3, lambda_3) on SL(2,R).
pub fn sl2r_contact_structure(params: &MetricParams) -> AlmostContactStructure {
    let beta = params.beta;
    AlmostContactStructure {
        space: SpaceId::Sl2r,
        params: *params,
        phi: Box::new(|c| phi_prime(c)),
        xi: Box::new(move |c| {
            let n = c.len();
            vec![
                Jet::constant(n, 0.0),
                Jet::constant(n, 0.0),
                Jet::constant(n, 0.5 / beta.sqrt()),
            ]
        }),
        eta: Box::new(move |c| lambda3_row(beta, c)),
    }
}

/// Axiom residuals of an almost contact structure at a point.
#[derive(Clone, Debug)]
pub struct AlmostContactResiduals {
    /// |eta(xi) - 1|
    pub eta_xi: f64,
    /// || Phi^2 + 1 - xi (x) eta ||_inf
    pub phi_square: f64,
    /// || Phi xi ||_inf
    pub phi_xi: f64,
    /// || eta Phi ||_inf
    pub eta_phi: f64,
    /// number of singular values above 1e-8
    pub rank: usize,
}

fn eval_matrix(phi: &TensorFn, pt: &[f64]) -> Mat {
    let jc = seed(pt);
    let rows = phi(&jc);
    Mat::from_fn(rows.len(), rows.len(), |i, j| rows[i][j].val)
}

pub fn almost_contact_residuals(
    s: &AlmostContactStructure,
    pt: &[f64],
) -> AlmostContactResiduals {
    let jc = seed(pt);
    let phi = eval_matrix(&s.phi, pt);
    let xi: Vec<f64> = (s.xi)(&jc).iter().map(|v| v.val).collect();
    let eta: Vec<f64> = (s.eta)(&jc).iter().map(|v| v.val).collect();
    let n = pt.len();
    let eta_xi = (eta.iter().zip(&xi).map(|(a, b)| a * b).sum::<f64>() - 1.0).abs();
    let mut phi2 = &phi * &phi + Mat::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            phi2[(i, j)] -= xi[i] * eta[j];
        }
    }
    let phi_xi = (&phi * nalgebra::DVector::from_row_slice(&xi)).amax();
    let eta_phi = (nalgebra::DVector::from_row_slice(&eta).transpose() * &phi).amax();
    let svd = phi.svd(false, false);
    let rank = svd.singular_values.iter().filter(|&&v| v > 1e-8).count();
    AlmostContactResiduals { eta_xi, phi_square: phi2.amax(), phi_xi, eta_phi, rank }
}

/// Half-curl of the one-form: hat(Phi)_jk = (d_j eta_k - d_k eta_j)/2, the
/// coefficient matrix of d eta in the pairing convention used throughout.
pub fn phi_hat_from_eta(eta: &OneFormFn, pt: &[f64]) -> Mat {
    let jc = seed(pt);
    let row = eta(&jc);
    let n = pt.len();
    Mat::from_fn(n, n, |j, k| {
        0.5 * (row[k].grad.get(j).copied().unwrap_or(0.0)
            - row[j].grad.get(k).copied().unwrap_or(0.0))
    })
}

/// Coefficient of eta wedge (d eta)^n on the coordinate volume element of a
/// (2n+1)-dimensional chart.
pub fn contact_top_form(eta: &OneFormFn, pt: &[f64]) -> f64 {
    let m = pt.len();
    assert!(m % 2 == 1, "odd-dimensional charts only");
    let n = (m - 1) / 2;
    let jc = seed(pt);
    let row = eta(&jc);
    let eta0: Vec<f64> = row.iter().map(|v| v.val).collect();
    let curl = |j: usize, k: usize| {
        row[k].grad.get(j).copied().unwrap_or(0.0) - row[j].grad.get(k).copied().unwrap_or(0.0)
    };
    // (1/(2^n n!)) sum over permutations of sign * eta_{s0} * prod D_{s(2i-1) s(2i)}
    let mut idx: Vec<usize> = (0..m).collect();
    let mut total = 0.0;
    permute(&mut idx, 0, &mut |perm, sign| {
        let mut term = eta0[perm[0]];
        for i in 0..n {
            term *= curl(perm[1 + 2 * i], perm[2 + 2 * i]);
        }
        total += sign * term;
    });
    total / (2f64.powi(n as i32) * (1..=n).product::<usize>() as f64)
}

fn permute(idx: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize], f64)) {
    let n = idx.len();
    if k == n {
        // parity of the permutation
        let mut seen = vec![false; n];
        let mut sign = 1.0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = idx[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        visit(idx, sign);
        return;
    }
    for i in k..n {
        idx.swap(k, i);
        permute(idx, k + 1, visit);
        idx.swap(k, i);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NijenhuisMode {
    /// The corrected component formula with the 2 hat(Phi) xi term.
    Corrected,
    /// The older published formula, kept as a diagnostic.
    Legacy,
}

/// Components (N^1)^i_{jk} of the normality tensor at a point.
pub fn nijenhuis_n1(
    s: &AlmostContactStructure,
    pt: &[f64],
    mode: NijenhuisMode,
) -> Vec<Vec<Vec<f64>>> {
    let n = pt.len();
    let jc = seed(pt);
    let phi = (s.phi)(&jc);
    let xi = (s.xi)(&jc);
    let eta: Vec<f64> = (s.eta)(&jc).iter().map(|v| v.val).collect();
    let hat = phi_hat_from_eta(&s.eta, pt);
    let p = |i: usize, j: usize| phi[i][j].val;
    let dp = |h: usize, i: usize, j: usize| phi[i][j].grad.get(h).copied().unwrap_or(0.0);
    let dxi = |j: usize, i: usize| xi[i].grad.get(j).copied().unwrap_or(0.0);
    let mut out = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = 0.0;
                match mode {
                    NijenhuisMode::Corrected => {
                        for h in 0..n {
                            acc += p(h, j) * dp(h, i, k) - p(h, k) * dp(h, i, j)
                                + p(i, h) * (dp(k, h, j) - dp(j, h, k));
                        }
                        acc += 2.0 * hat[(j, k)] * xi[i].val;
                    }
                    NijenhuisMode::Legacy => {
                        for h in 0..n {
                            acc += p(h, k) * (dp(h, i, j) - dp(j, i, h))
                                - p(h, j) * (dp(h, i, k) - dp(k, i, h));
                        }
                        acc += dxi(j, i) * eta[k] - dxi(k, i) * eta[j];
                    }
                }
                out[i][j][k] = acc;
            }
        }
    }
    out
}

/// Verdict bundle for one of the two candidate structures.
#[derive(Clone, Debug)]
pub struct SasakiReport {
    pub space: String,
    pub verdict: String,
    pub axiom_residual: f64,
    pub rank: usize,
    pub expected_rank: usize,
    /// worst |contact coefficient| - these are nonzero for a contact form
    pub contact_coefficient: f64,
    pub xi_killing_residual: f64,
    pub n1_max: f64,
    pub failing_axiom: Option<String>,
}

/// Run the structure checks on SL(2,R) (expected Sasaki) or the extended
/// half-plane (expected obstruction).
pub fn sasaki_report(
    space: SpaceId,
    params: &MetricParams,
    sample_points: &[Vec<f64>],
) -> Result<SasakiReport> {
    match space {
        SpaceId::Sl2r => {
            let s = sl2r_contact_structure(params);
            let mut axiom = 0.0f64;
            let mut contact = f64::INFINITY;
            let mut killing = 0.0f64;
            let mut n1 = 0.0f64;
            let mut rank = 2;
            for pt in sample_points {
                let r = almost_contact_residuals(&s, pt);
                axiom = axiom.max(r.eta_xi).max(r.phi_square).max(r.phi_xi).max(r.eta_phi);
                rank = r.rank;
                contact = contact.min(contact_top_form(&s.eta, pt).abs());
                killing = killing
                    .max(killing_residual(&s.xi, SpaceId::Sl2r, params, pt)?.amax());
                let t = nijenhuis_n1(&s, pt, NijenhuisMode::Corrected);
                for plane in &t {
                    for row in plane {
                        for v in row {
                            n1 = n1.max(v.abs());
                        }
                    }
                }
            }
            let ok = axiom < 1e-12 && rank == 2 && contact > 1e-6 && killing < 1e-10
                && n1 < 1e-10;
            Ok(SasakiReport {
                space: space.label(),
                verdict: if ok { "sasaki".into() } else { "inconclusive".into() },
                axiom_residual: axiom,
                rank,
                expected_rank: 2,
                contact_coefficient: contact,
                xi_killing_residual: killing,
                n1_max: n1,
                failing_axiom: None,
            })
        }
        SpaceId::ExtXj1 => {
            let (axiom, rank, top) = ext_candidate_obstruction(params, sample_points)?;
            Ok(SasakiReport {
                space: space.label(),
                verdict: "no-almost-contact-structure".into(),
                axiom_residual: axiom,
                rank,
                expected_rank: 4,
                contact_coefficient: top,
                xi_killing_residual: f64::NAN,
                n1_max: f64::NAN,
                failing_axiom: Some("rank(Phi) < 4".into()),
            })
        }
        _ => Err(Error::BadChart("structure verdicts cover these two spaces")),
    }
}

/// The candidate on the extended half-plane with eta = lambda_6: the
/// metric-compatible tensor has rank 2, so the rank axiom cannot hold, and
/// eta wedge (d eta)^2 vanishes identically. Returns the worst axiom
/// residual (bounded away from zero), the tensor rank, and the worst top-form
/// coefficient.
pub fn ext_candidate_obstruction(
    params: &MetricParams,
    sample_points: &[Vec<f64>],
) -> Result<(f64, usize, f64)> {
    let delta = params.delta;
    let eta: OneFormFn = Box::new(move |c: &[Jet<f64>]| {
        let sd = Jet::constant(c.len(), delta.sqrt());
        vec![
            Jet::constant(c.len(), 0.0),
            Jet::constant(c.len(), 0.0),
            sd.clone() * c[3].clone(),
            -(sd.clone() * c[2].clone()),
            sd,
        ]
    });
    let mut worst_axiom = f64::INFINITY;
    let mut rank = 0;
    let mut top = 0.0f64;
    for pt in sample_points {
        let g = metric_at(SpaceId::ExtXj1, params, pt)?;
        let hat = phi_hat_from_eta(&eta, pt);
        let ginv = g.clone().try_inverse().ok_or(Error::Singular)?;
        let phi = &ginv * &hat;
        let svd = phi.clone().svd(false, false);
        rank = svd.singular_values.iter().filter(|&&v| v > 1e-8).count();
        // xi dual to eta through the metric
        let jc = seed(pt);
        let eta0: Vec<f64> = eta(&jc).iter().map(|v| v.val).collect();
        let xi = &ginv * nalgebra::DVector::from_row_slice(&eta0);
        let scale: f64 = eta0.iter().zip(xi.iter()).map(|(a, b)| a * b).sum();
        let xi = xi / scale;
        let mut phi2 = &phi * &phi + Mat::identity(5, 5);
        for i in 0..5 {
            for j in 0..5 {
                phi2[(i, j)] -= xi[i] * eta0[j];
            }
        }
        worst_axiom = worst_axiom.min(phi2.amax());
        top = top.max(contact_top_form(&eta, pt).abs());
    }
    Ok((worst_axiom, rank, top))
}

/// The symplectization two-form d(r^2 eta) on the cone over SL(2,R), with
/// cone coordinate prepended: returns the matrix of the two-form, the
/// sup-norm of its exterior derivative (closedness defect) and |det|
/// (nondegeneracy witness).
pub fn cone_symplectic_form(params: &MetricParams, pt: &[f64]) -> (Mat, f64, f64) {
    let beta = params.beta;
    // one-form rho = r^2 lambda_3 on (r, x, y, theta)
    let rho = |c: &[Jet<Jet<f64>>]| -> Vec<Jet<Jet<f64>>> {
        let r2 = c[0].clone() * c[0].clone();
        let lam = lambda3_row(beta, &c[1..]);
        let mut out = vec![Jet::from_f64(0.0)];
        for v in lam {
            out.push(r2.clone() * v);
        }
        out
    };
    let jc = seed_nested(pt);
    let row = rho(&jc);
    let n = 4;
    let comp = |j: usize, k: usize| -> Jet<f64> {
        let a = row[k].grad.get(j).cloned().unwrap_or_else(|| Jet::constant(n, 0.0));
        let b = row[j].grad.get(k).cloned().unwrap_or_else(|| Jet::constant(n, 0.0));
        let (a, b) = Jet::align(a, b);
        a - b
    };
    let mut omega = Mat::zeros(n, n);
    let mut closedness = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            omega[(i, j)] = comp(i, j).val;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let d = comp(j, k).grad.get(i).copied().unwrap_or(0.0)
                    + comp(k, i).grad.get(j).copied().unwrap_or(0.0)
                    + comp(i, j).grad.get(k).copied().unwrap_or(0.0);
                closedness = closedness.max(d.abs());
            }
        }
    }
    let det = omega.determinant().abs();
    (omega, closedness, det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pts(space: SpaceId, n: usize, s: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        (0..n).map(|_| sample::random_point(&mut rng, space)).collect()
    }

    #[test]
    fn sl2r_axioms_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..20 {
            let params = sample::random_params(&mut rng);
            let s = sl2r_contact_structure(&params);
            for pt in pts(SpaceId::Sl2r, 20, 72) {
                let r = almost_contact_residuals(&s, &pt);
                assert!(r.eta_xi < 1e-12);
                assert!(r.phi_square < 1e-12, "phi^2 residual {}", r.phi_square);
                assert!(r.phi_xi < 1e-12 && r.eta_phi < 1e-12);
                assert_eq!(r.rank, 2);
            }
        }
    }

    #[test]
    fn trivial_one_dimensional_structure() {
        // m = 1, n = 0: Phi = 0, xi and eta constant duals
        let s = AlmostContactStructure {
            space: SpaceId::Sl2r,
            params: MetricParams::default(),
            phi: Box::new(|c| vec![vec![Jet::constant(c.len(), 0.0)]]),
            xi: Box::new(|c| vec![Jet::constant(c.len(), 2.0)]),
            eta: Box::new(|c| vec![Jet::constant(c.len(), 0.5)]),
        };
        let r = almost_contact_residuals(&s, &[0.3]);
        assert!(r.eta_xi < 1e-15 && r.phi_square < 1e-15);
        // the top form of a constant one-form on a line is the coefficient
        let eta: OneFormFn = Box::new(|c| vec![Jet::constant(c.len(), 0.5)]);
        assert!((contact_top_form(&eta, &[0.3]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn phi_hat_is_g_phi_and_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..30 {
            let params = sample::random_params(&mut rng);
            let s = sl2r_contact_structure(&params);
            let pt = sample::random_point(&mut rng, SpaceId::Sl2r);
            let hat = phi_hat_from_eta(&s.eta, &pt);
            assert!((&hat + hat.transpose()).amax() < 1e-12);
            // metric-compatible tensor: (sqrt(beta)/(2 alpha)) Phi'
            let g = metric_at(SpaceId::Sl2r, &params, &pt).unwrap();
            let phi = eval_matrix(&s.phi, &pt) * (params.beta.sqrt() / (2.0 * params.alpha));
            assert!((g * phi - &hat).amax() < 1e-12);
            // only nonzero entry: sqrt(beta)/(2 y^2)
            let expect = params.beta.sqrt() / (2.0 * pt[1] * pt[1]);
            assert!((hat[(0, 1)] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn metric_compatibility_with_phi_prime() {
        // g(Phi' X, Phi' Y) = g(X, Y) - eta(X) eta(Y)
        let mut rng = ChaCha8Rng::seed_from_u64(74);
        for _ in 0..100 {
            let params = sample::random_params(&mut rng);
            let s = sl2r_contact_structure(&params);
            let pt = sample::random_point(&mut rng, SpaceId::Sl2r);
            let g = metric_at(SpaceId::Sl2r, &params, &pt).unwrap();
            let phi = eval_matrix(&s.phi, &pt);
            let jc = seed(&pt);
            let eta: Vec<f64> = (s.eta)(&jc).iter().map(|v| v.val).collect();
            let mut rhs = g.clone();
            for i in 0..3 {
                for j in 0..3 {
                    rhs[(i, j)] -= eta[i] * eta[j];
                }
            }
            assert!((phi.transpose() * &g * &phi - rhs).amax() < 1e-10);
        }
    }

    #[test]
    fn contact_form_examples() {
        let params = MetricParams::default();
        let s = sl2r_contact_structure(&params);
        // coefficient 2 beta / y^2 at y = 1
        let c = contact_top_form(&s.eta, &[0.4, 1.0, -0.7]);
        assert!((c.abs() - 2.0).abs() < 1e-12);
        // an exact one-form has vanishing top form (n = 1)
        let exact: OneFormFn = Box::new(|c: &[Jet<f64>]| {
            vec![
                Jet::constant(c.len(), 0.0),
                Jet::constant(c.len(), 0.0),
                Jet::constant(c.len(), 1.0),
            ]
        });
        assert!(contact_top_form(&exact, &[0.3, 0.4, 0.5]).abs() < 1e-15);
        // the extended half-plane candidate: eta wedge (d eta)^2 = 0
        let (_, _, top) = ext_candidate_obstruction(&params, &pts(SpaceId::ExtXj1, 10, 75))
            .unwrap();
        assert!(top < 1e-14);
    }

    #[test]
    fn contact_distribution_and_phi_action() {
        // Ker(eta) = <V1, V2> with V1 = d_x - (1/2y) d_theta, V2 = d_y, and
        // Phi'(A, B, C) = B V1 - A V2
        let params = MetricParams::new(1.3, 0.8, 1.0, 1.0);
        let s = sl2r_contact_structure(&params);
        let mut rng = ChaCha8Rng::seed_from_u64(76);
        for _ in 0..50 {
            let pt = sample::random_point(&mut rng, SpaceId::Sl2r);
            let jc = seed(&pt);
            let eta: Vec<f64> = (s.eta)(&jc).iter().map(|v| v.val).collect();
            let y = pt[1];
            let v1 = [1.0, 0.0, -0.5 / y];
            let v2 = [0.0, 1.0, 0.0];
            let pair = |v: &[f64; 3]| eta.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
            assert!(pair(&v1).abs() < 1e-12 && pair(&v2).abs() < 1e-12);
            let phi = eval_matrix(&s.phi, &pt);
            let x = [
                rand::Rng::gen_range(&mut rng, -1.0..1.0),
                rand::Rng::gen_range(&mut rng, -1.0..1.0),
                rand::Rng::gen_range(&mut rng, -1.0..1.0),
            ];
            let px = &phi * nalgebra::DVector::from_row_slice(&x);
            for i in 0..3 {
                let expected = x[1] * v1[i] - x[0] * v2[i];
                assert!((px[i] - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nijenhuis_vanishes_in_corrected_mode() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10 {
            let params = sample::random_params(&mut rng);
            let s = sl2r_contact_structure(&params);
            let pt = sample::random_point(&mut rng, SpaceId::Sl2r);
            let t = nijenhuis_n1(&s, &pt, NijenhuisMode::Corrected);
            let mut worst = 0.0f64;
            for plane in &t {
                for row in plane {
                    for v in row {
                        worst = worst.max(v.abs());
                    }
                }
            }
            assert!(worst < 1e-10, "N1 = {}", worst);
            // antisymmetry in the lower indices, and vanishing diagonal
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        assert!((t[i][j][k] + t[i][k][j]).abs() < 1e-12);
                    }
                    assert!(t[i][j][j].abs() < 1e-15);
                }
            }
            // on this structure the legacy formula also evaluates to zero;
            // the suites report the measured difference rather than assume it
            let l = nijenhuis_n1(&s, &pt, NijenhuisMode::Legacy);
            let mut diff = 0.0f64;
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        diff = diff.max((t[i][j][k] - l[i][j][k]).abs());
                    }
                }
            }
            assert!(diff < 1e-10);
        }
    }

    #[test]
    fn sasaki_verdicts() {
        let params = MetricParams::default();
        let rep = sasaki_report(SpaceId::Sl2r, &params, &pts(SpaceId::Sl2r, 30, 78)).unwrap();
        assert_eq!(rep.verdict, "sasaki");
        assert!(rep.xi_killing_residual < 1e-10);
        assert!(rep.n1_max < 1e-10);
        assert_eq!(rep.rank, 2);
        let rep =
            sasaki_report(SpaceId::ExtXj1, &params, &pts(SpaceId::ExtXj1, 30, 79)).unwrap();
        assert_eq!(rep.verdict, "no-almost-contact-structure");
        assert_eq!(rep.rank, 2);
        assert!(rep.rank < rep.expected_rank);
        assert!(rep.axiom_residual > 0.5, "axioms must be obstructed");
        assert!(rep.contact_coefficient < 1e-14);
    }

    #[test]
    fn cone_form_is_closed_and_nondegenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(80);
        for _ in 0..40 {
            let params = sample::random_params(&mut rng);
            let base = sample::random_point(&mut rng, SpaceId::Sl2r);
            let r = rand::Rng::gen_range(&mut rng, 0.5..2.0);
            let pt = vec![r, base[0], base[1], base[2]];
            let (omega, closedness, det) = cone_symplectic_form(&params, &pt);
            assert!((&omega + omega.transpose()).amax() < 1e-12);
            assert!(closedness < 1e-8, "d omega = {}", closedness);
            assert!(det > 1e-6, "degenerate cone form, det = {}", det);
        }
    }
}
