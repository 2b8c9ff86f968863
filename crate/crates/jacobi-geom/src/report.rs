//! Verification suites: every closed formula checked against its independent
//! numerical route, with one record per check and a ledger of detected
//! disagreements between the published formulas and the computed values.

use crate::contact::{self, NijenhuisMode};
use crate::corpus;
use crate::frame::{self, FieldFn};
use crate::geodesic::{self, ReductivitySetup, Verdict};
use crate::jet::{seed, Jet, Scalar};
use crate::lie;
use crate::metric;
use crate::sample;
use crate::space::{MetricParams, SpaceId};
use crate::transform::{self, MapId};
use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type Mat = DMatrix<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Frames,
    Metrics,
    Killing,
    Geodesics,
    Reductivity,
    Contact,
    Transforms,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "frames" => Suite::Frames,
            "metrics" => Suite::Metrics,
            "killing" => Suite::Killing,
            "geodesics" => Suite::Geodesics,
            "reductivity" => Suite::Reductivity,
            "contact" => Suite::Contact,
            "transforms" => Suite::Transforms,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub space: Option<SpaceId>,
    pub params: MetricParams,
    pub seed: u64,
    /// Optional global tolerance override; individual checks pin their own
    /// defaults from the acceptance contract.
    pub tolerance: Option<f64>,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            space: None,
            params: MetricParams::default(),
            seed: 42,
            tolerance: None,
            samples: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// What the check verifies, in words.
    pub anchor: String,
    pub residual: f64,
    pub tol: f64,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Discrepancy {
    pub claim: String,
    pub printed: String,
    pub computed: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub suite: Suite,
    pub seed: u64,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub discrepancies: Vec<Discrepancy>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

struct Ctx {
    config: RunConfig,
    checks: Vec<CheckRecord>,
    discrepancies: Vec<Discrepancy>,
}

impl Ctx {
    fn new(config: &RunConfig) -> Self {
        Ctx { config: config.clone(), checks: Vec::new(), discrepancies: Vec::new() }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
    }

    fn tol(&self, default: f64) -> f64 {
        self.config.tolerance.unwrap_or(default)
    }

    fn push(&mut self, id: &str, anchor: &str, residual: f64, tol: f64) {
        self.push_witness(id, anchor, residual, tol, None);
    }

    fn push_witness(
        &mut self,
        id: &str,
        anchor: &str,
        residual: f64,
        tol: f64,
        witness: Option<String>,
    ) {
        let verdict = if residual.is_finite() && residual <= tol { "pass" } else { "fail" };
        self.checks.push(CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            residual,
            tol,
            verdict: verdict.to_string(),
            witness,
        });
    }

    fn note(&mut self, claim: &str, printed: &str, computed: &str) {
        self.discrepancies.push(Discrepancy {
            claim: claim.to_string(),
            printed: printed.to_string(),
            computed: computed.to_string(),
        });
    }

    fn finish(self, suite: Suite) -> VerificationReport {
        let passed = self.checks.iter().filter(|c| c.verdict == "pass").count();
        let failed = self.checks.len() - passed;
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            suite,
            seed: self.config.seed,
            config: self.config,
            checks: self.checks,
            discrepancies: self.discrepancies,
            summary: Summary { passed, failed },
        }
    }
}

fn points(rng: &mut ChaCha8Rng, space: SpaceId, n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| sample::random_point(rng, space)).collect()
}

/// Run one suite deterministically under the given configuration.
pub fn run_suite(config: &RunConfig, suite: Suite) -> VerificationReport {
    let mut ctx = Ctx::new(config);
    match suite {
        Suite::Frames => frames_suite(&mut ctx),
        Suite::Metrics => metrics_suite(&mut ctx),
        Suite::Killing => killing_suite(&mut ctx),
        Suite::Geodesics => geodesics_suite(&mut ctx),
        Suite::Reductivity => reductivity_suite(&mut ctx),
        Suite::Contact => contact_suite(&mut ctx),
        Suite::Transforms => transforms_suite(&mut ctx),
        Suite::All => {
            frames_suite(&mut ctx);
            metrics_suite(&mut ctx);
            killing_suite(&mut ctx);
            geodesics_suite(&mut ctx);
            reductivity_suite(&mut ctx);
            contact_suite(&mut ctx);
            transforms_suite(&mut ctx);
        }
    }
    ctx.finish(suite)
}

// ---------------------------------------------------------------- frames

fn frames_suite(ctx: &mut Ctx) {
    let n = ctx.config.samples;
    // frame duality and numeric-vs-closed agreement on the six spaces
    let mut worst_dual = 0.0f64;
    let mut worst_agree = 0.0f64;
    let mut rng = ctx.rng(1);
    for space in SpaceId::jacobi_family() {
        for _ in 0..n {
            let params = sample::random_params(&mut rng);
            let pt = sample::random_point(&mut rng, space);
            let num = frame::numeric_coframe(space, &params, &pt).expect("coframe");
            let closed = frame::closed_coframe(space, &params, &pt).expect("coframe");
            worst_dual = worst_dual.max(num.pairing_defect()).max(closed.pairing_defect());
            worst_agree = worst_agree.max((&num.coframe - &closed.coframe).amax());
        }
    }
    ctx.push(
        "frames.duality",
        "coframe rows pair with frame columns to the identity on all six spaces",
        worst_dual,
        ctx.tol(1e-10),
    );
    ctx.push(
        "frames.numeric-vs-closed",
        "coframes from g^-1 dg match the closed invariant one-forms",
        worst_agree,
        ctx.tol(1e-10),
    );

    // left invariance of the numeric coframe under left translation
    let mut rng = ctx.rng(2);
    let mut worst = 0.0f64;
    for space in [SpaceId::H1, SpaceId::Sl2r, SpaceId::Gj1] {
        for _ in 0..n {
            let params = sample::random_params(&mut rng);
            let pt = sample::random_point(&mut rng, space);
            let g = sample::random_actor(&mut rng, space);
            worst = worst.max(
                frame::left_invariance_residual(space, &params, &g, &pt).expect("residual"),
            );
        }
    }
    ctx.push(
        "frames.left-invariance",
        "pullback of the coframe under left translation reproduces the coframe",
        worst,
        ctx.tol(1e-9),
    );

    // structure equations of the raw coframes
    let mut rng = ctx.rng(3);
    let mut worst = 0.0f64;
    for space in [SpaceId::H1, SpaceId::Sl2r, SpaceId::Gj1] {
        for _ in 0..n.min(50) {
            let pt = sample::random_point(&mut rng, space);
            worst = worst.max(frame::maurer_cartan_residual(space, &pt).expect("residual"));
        }
    }
    ctx.push(
        "frames.structure-equations",
        "exterior derivative of each invariant one-form closes on the algebra constants",
        worst,
        ctx.tol(1e-8),
    );

    // frame commutator table: constants are point independent; entries are
    // compared against the published table and mismatches recorded
    let mut rng = ctx.rng(4);
    let params = MetricParams::new(1.0, 4.0, 1.0, 1.0);
    let pts = points(&mut rng, SpaceId::Gj1, 6);
    match frame::frame_structure_constants(SpaceId::Gj1, &params, &pts) {
        Ok((constants, spread)) => {
            ctx.push(
                "frames.bracket-constants-invariant",
                "frame bracket coefficients agree across sample points",
                spread,
                ctx.tol(1e-8),
            );
            let mismatches = frame::compare_frame_table(&params, &constants);
            for m in &mismatches {
                ctx.note(
                    &format!(
                        "frame commutator table entry [L{},L{}] on L{} (alpha=1, beta=4)",
                        m.i + 1,
                        m.j + 1,
                        m.component + 1
                    ),
                    &format!("{}", m.printed),
                    &format!("{}", m.computed),
                );
            }
            // the two known table defects must be among the detections
            let has_23 = mismatches.iter().any(|m| m.i == 1 && m.j == 2);
            let has_34 = mismatches.iter().any(|m| m.i == 2 && m.j == 3);
            ctx.push(
                "frames.bracket-table-comparison",
                "published frame commutator table compared entrywise; defects recorded",
                if has_23 && has_34 { 0.0 } else { 1.0 },
                0.5,
            );
        }
        Err(e) => ctx.push("frames.bracket-constants-invariant", &e.to_string(), f64::NAN, 0.0),
    }

    // matrix exponential against the closed forms
    let mut rng = ctx.rng(5);
    let mut worst = 0.0f64;
    let embed = |a: f64, b: f64, c: f64, d: f64| -> Mat {
        let mut m = Mat::identity(4, 4);
        m[(0, 0)] = a;
        m[(0, 2)] = b;
        m[(2, 0)] = c;
        m[(2, 2)] = d;
        m
    };
    for _ in 0..n {
        let t: f64 = rng.gen_range(-2.0..2.0);
        worst = worst
            .max((lie::matrix_exp(&(lie::gen_f() * t)) - embed(1.0, t, 0.0, 1.0)).amax())
            .max((lie::matrix_exp(&(lie::gen_g() * t)) - embed(1.0, 0.0, t, 1.0)).amax())
            .max(
                (lie::matrix_exp(&(lie::gen_h() * t)) - embed(t.exp(), 0.0, 0.0, (-t).exp()))
                    .amax(),
            )
            .max(
                (lie::matrix_exp(&((lie::gen_f() + lie::gen_g()) * t))
                    - embed(t.cosh(), t.sinh(), t.sinh(), t.cosh()))
                .amax(),
            )
            .max(
                (lie::matrix_exp(&((lie::gen_f() - lie::gen_g()) * t))
                    - embed(t.cos(), t.sin(), -t.sin(), t.cos()))
                .amax(),
            );
    }
    ctx.push(
        "frames.exp-closed-forms",
        "series exponential reproduces the closed one-parameter subgroups",
        worst,
        ctx.tol(1e-12),
    );
    let mut worst = 0.0f64;
    let gj = lie::jacobi_basis();
    for _ in 0..n {
        let c: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = gj.element(&c);
        worst = worst
            .max((lie::matrix_exp(&x) * lie::matrix_exp(&(-&x)) - Mat::identity(4, 4)).amax());
    }
    ctx.push(
        "frames.exp-inverse",
        "exp(X) exp(-X) is the identity",
        worst,
        ctx.tol(1e-12),
    );

    // adjoint consistency over every registered basis
    let mut rng = ctx.rng(6);
    let mut worst = 0.0f64;
    for basis in lie::registered_bases() {
        let m = basis.dim();
        for _ in 0..n {
            let mut c: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm: f64 = c.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 1.0 {
                for v in &mut c {
                    *v /= norm;
                }
            }
            let g = lie::matrix_exp(&basis.element(&c));
            let lhs = lie::adjoint_matrix(&basis, &g).expect("adjoint");
            let rhs = lie::matrix_exp(&lie::ad_matrix(&basis, &c));
            worst = worst.max((lhs - rhs).amax());
        }
    }
    ctx.push(
        "frames.ad-exp-consistency",
        "Ad(exp X) equals exp(ad X) on every registered basis",
        worst,
        ctx.tol(1e-10),
    );

    // Jacobi identity on the registered bases
    let mut worst = 0.0f64;
    for basis in lie::registered_bases() {
        worst = worst.max(basis.jacobi_residual());
    }
    ctx.push(
        "frames.jacobi-identity",
        "bracket Jacobi identity on all registered bases",
        worst,
        ctx.tol(1e-12),
    );

    // Killing form values and the published conflicts
    let sl2 = lie::sl2r_basis();
    let khh = lie::killing_form(&sl2, &[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0]);
    let kfg = lie::killing_form(&sl2, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]);
    ctx.push(
        "frames.killing-form-trace",
        "trace definition of the Killing form: K(H,H) = 8, K(F,G) = 4",
        (khh - 8.0).abs().max((kfg - 4.0).abs()),
        ctx.tol(1e-12),
    );
    ctx.note(
        "value of K(H,H) on sl(2,R)",
        "4 (printed alongside K(F,G) = 4)",
        &format!("{} from Tr(ad H . ad H), and 8(a^2+bc) at a=1 gives 8", khh),
    );
    let su2 = lie::su2_basis();
    let k11 = lie::killing_form(&su2, &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]);
    ctx.note(
        "su(2) Killing form coefficient",
        "-4 (aa' + bb' + cc')",
        &format!("{} on a unit vector, i.e. -8 (aa' + bb' + cc')", k11),
    );
    ctx.note(
        "ad matrix of aH + bF + cG in the (H,F,G) order, entry (2,1)",
        "-2c",
        "-c (from [X,F] = 2aF - cH; only -c is compatible with K(X,X) = 8(a^2+bc))",
    );

    // Ad-invariance of the Killing form
    let mut rng = ctx.rng(7);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let z: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.8..0.8)).collect();
        let g = lie::matrix_exp(&sl2.element(&z));
        let ad = lie::adjoint_matrix(&sl2, &g).expect("adjoint");
        let gx = lie::apply_adjoint(&ad, &x);
        let gy = lie::apply_adjoint(&ad, &y);
        worst = worst
            .max((lie::killing_form(&sl2, &gx, &gy) - lie::killing_form(&sl2, &x, &y)).abs());
    }
    ctx.push(
        "frames.killing-ad-invariance",
        "Killing form is invariant under the adjoint action",
        worst,
        ctx.tol(1e-10),
    );

    // fundamental vector fields: exponential route against the closed forms
    let mut rng = ctx.rng(8);
    let mut worst = 0.0f64;
    for space in [SpaceId::H1, SpaceId::Sl2r, SpaceId::X1, SpaceId::Xj1, SpaceId::ExtXj1] {
        let basis = metric::acting_basis(space).expect("basis");
        let gens: Vec<usize> = match space {
            SpaceId::H1 | SpaceId::Sl2r | SpaceId::X1 => vec![0, 1, 2],
            _ => (0..basis.dim()).collect(),
        };
        for gi in gens {
            let f = metric::fundamental_field_closed(space, gi).expect("catalog");
            for _ in 0..20 {
                let pt = sample::random_point(&mut rng, space);
                let mut coeffs = vec![0.0; basis.dim()];
                coeffs[gi] = 1.0;
                let num = metric::fundamental_field_numeric(space, &coeffs, &pt).expect("field");
                let jc = seed(&pt);
                for (u, v) in num.iter().zip(f(&jc)) {
                    worst = worst.max((u - v.val).abs());
                }
            }
        }
    }
    ctx.push(
        "frames.fundamental-field-catalog",
        "orbit-derivative fundamental fields match the printed closed forms",
        worst,
        ctx.tol(1e-10),
    );

    // sign-reversed bracket representation of the fundamental fields
    let mut rng = ctx.rng(9);
    let mut worst = 0.0f64;
    for space in [SpaceId::Xj1, SpaceId::ExtXj1] {
        let basis = metric::acting_basis(space).expect("basis");
        let m = basis.dim();
        let fields: Vec<FieldFn> =
            (0..m).map(|i| metric::fundamental_field_closed(space, i).expect("catalog")).collect();
        for _ in 0..10 {
            let pt = sample::random_point(&mut rng, space);
            let jc = seed(&pt);
            for i in 0..m {
                for j in 0..m {
                    let br = frame::vf_bracket(&fields[i], &fields[j], &pt);
                    let mut expected = vec![0.0; pt.len()];
                    for k in 0..m {
                        let c = basis.structure[k][i][j];
                        if c != 0.0 {
                            for (e, comp) in expected.iter_mut().zip(fields[k](&jc)) {
                                *e -= c * comp.val;
                            }
                        }
                    }
                    for (u, v) in br.iter().zip(&expected) {
                        worst = worst.max((u - v).abs());
                    }
                }
            }
        }
    }
    ctx.push(
        "frames.fundamental-bracket-sign",
        "fundamental fields represent the algebra with reversed bracket sign",
        worst,
        ctx.tol(1e-9),
    );
}

// ---------------------------------------------------------------- metrics

fn metrics_suite(ctx: &mut Ctx) {
    let n = ctx.config.samples;
    let mut rng = ctx.rng(11);
    let mut worst_rebuild = 0.0f64;
    let mut worst_ortho = 0.0f64;
    for space in SpaceId::jacobi_family() {
        for _ in 0..n {
            let params = sample::random_params(&mut rng);
            let pt = sample::random_point(&mut rng, space);
            let g = metric::metric_at(space, &params, &pt).expect("metric");
            let fp = frame::closed_coframe(space, &params, &pt).expect("coframe");
            worst_rebuild =
                worst_rebuild.max((&g - fp.coframe.transpose() * &fp.coframe).amax());
            let m = space.dim();
            worst_ortho = worst_ortho
                .max((fp.frame.transpose() * &g * &fp.frame - Mat::identity(m, m)).amax());
        }
    }
    ctx.push(
        "metrics.sum-of-squares",
        "metric equals the sum of squared invariant one-forms on all six spaces",
        worst_rebuild,
        ctx.tol(1e-12),
    );
    ctx.push(
        "metrics.frame-orthonormality",
        "invariant frame is orthonormal for the invariant metric",
        worst_ortho,
        ctx.tol(1e-10),
    );

    let mut rng = ctx.rng(12);
    let mut worst = 0.0f64;
    for space in SpaceId::jacobi_family() {
        for _ in 0..n {
            let params = sample::random_params(&mut rng);
            let pt = sample::random_point(&mut rng, space);
            let g = sample::random_actor(&mut rng, space);
            worst = worst
                .max(metric::isometry_pullback_residual(space, &params, &g, &pt).expect("pullback"));
        }
    }
    ctx.push(
        "metrics.invariance",
        "metric pullback under the group action reproduces the metric",
        worst,
        ctx.tol(1e-9),
    );

    // degenerate parameter sectors restrict to the published submetrics
    let mut rng = ctx.rng(13);
    let mut worst = 0.0f64;
    for _ in 0..n.min(50) {
        let params = sample::random_params(&mut rng);
        let pt = sample::random_point(&mut rng, SpaceId::Gj1);
        let d1 = MetricParams::new(params.alpha, 0.0, params.gamma, 0.0);
        let rows = metric::metric_rows::<f64>(SpaceId::Gj1, &d1, &pt).expect("rows");
        let xj =
            metric::metric_rows::<f64>(SpaceId::Xj1, &d1, &[pt[0], pt[1], pt[3], pt[4]])
                .expect("rows");
        let sub = [0usize, 1, 3, 4];
        for (i, &ri) in sub.iter().enumerate() {
            for (j, &rj) in sub.iter().enumerate() {
                worst = worst.max((rows[ri][rj] - xj[i][j]).abs());
            }
        }
        let d2 = MetricParams::new(params.alpha, params.beta, 0.0, 0.0);
        let rows = metric::metric_rows::<f64>(SpaceId::Gj1, &d2, &pt).expect("rows");
        let sl = metric::metric_rows::<f64>(SpaceId::Sl2r, &d2, &pt[..3]).expect("rows");
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((rows[i][j] - sl[i][j]).abs());
            }
        }
    }
    ctx.push(
        "metrics.sector-restriction",
        "vanishing parameters restrict the group metric to the published submetrics",
        worst,
        ctx.tol(1e-13),
    );

    // Christoffels: exact jets against central differences
    let mut rng = ctx.rng(14);
    let mut worst = 0.0f64;
    for space in [
        SpaceId::Sl2r,
        SpaceId::X1,
        SpaceId::Xj1,
        SpaceId::ExtXj1,
        SpaceId::Gj1,
        SpaceId::Sphere2,
        SpaceId::Disk1,
        SpaceId::Bcv { kappa: -1.0, tau: 0.7 },
        SpaceId::PoincareHp,
    ] {
        for _ in 0..10 {
            let params = sample::random_params(&mut rng);
            let pt = sample::random_point(&mut rng, space);
            let a = metric::christoffels_at(space, &params, &pt).expect("christoffel");
            let b = metric::christoffels_fd(space, &params, &pt, 1e-5).expect("christoffel");
            let m = pt.len();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        let scale = 1.0f64.max(a[i][j][k].abs());
                        worst = worst.max((a[i][j][k] - b[i][j][k]).abs() / scale);
                    }
                }
            }
        }
    }
    ctx.push(
        "metrics.christoffel-oracle",
        "jet Christoffel symbols match the finite-difference oracle",
        worst,
        ctx.tol(1e-6),
    );

    // the three-dimensional family: pairing, metric from forms, Cayley image
    let mut rng = ctx.rng(15);
    let mut worst_pair = 0.0f64;
    let mut worst_forms = 0.0f64;
    for (kappa, tau) in [(1.0, 0.5), (-1.0, 0.7), (0.0, 1.0), (4.0, 1.0), (-2.0, 0.0)] {
        let space = SpaceId::Bcv { kappa, tau };
        for _ in 0..n.min(40) {
            let pt = sample::random_point(&mut rng, space);
            worst_pair = worst_pair.max(corpus::bcv_pairing_defect(kappa, tau, &pt));
            worst_forms = worst_forms.max(corpus::bcv_metric_from_forms_defect(kappa, tau, &pt));
        }
    }
    ctx.push(
        "metrics.bcv-pairing",
        "family one-forms pair with the orthonormal frame to the identity",
        worst_pair,
        ctx.tol(1e-12),
    );
    ctx.push(
        "metrics.bcv-sum-of-squares",
        "family metric is the sum of the squared frame one-forms",
        worst_forms,
        ctx.tol(1e-12),
    );
    let mut rng = ctx.rng(16);
    let mut worst_identity = 0.0f64;
    let mut worst_w3 = 0.0f64;
    let mut printed12 = 0.0f64;
    for (kappa, tau) in [(-1.0, 0.7), (-4.0, 1.0), (-0.5, 0.3)] {
        for _ in 0..20 {
            let pt = vec![
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.2..4.0),
                rng.gen_range(-1.0..1.0),
            ];
            let check = corpus::bcv_cayley_check(kappa, tau, &pt);
            worst_identity = worst_identity.max(check.metric_identity_residual);
            worst_w3 = worst_w3.max(check.omega3_residual);
            printed12 = printed12.max(check.omega12_printed_defect);
        }
    }
    ctx.push(
        "metrics.bcv-cayley-identity",
        "Cayley-transported family forms rebuild the hyperbolic plus fiber metric",
        worst_identity.max(worst_w3),
        ctx.tol(1e-10),
    );
    ctx.note(
        "half-plane forms of the negative-curvature family, first two rows",
        "rows proportional to sqrt(-kappa)/4 with the ds and dt columns as printed",
        &format!(
            "jet pullback gives coefficient 1/sqrt(-kappa) with the ds/dt columns exchanged; \
             printed rows differ by up to {:.3e} while the third row matches to {:.3e}",
            printed12, worst_w3
        ),
    );
}

// ---------------------------------------------------------------- killing

fn killing_suite(ctx: &mut Ctx) {
    let n = ctx.config.samples;
    // closed fundamental fields solve the Killing equations
    let mut rng = ctx.rng(21);
    let mut worst = 0.0f64;
    for space in [SpaceId::H1, SpaceId::Sl2r, SpaceId::X1, SpaceId::Xj1, SpaceId::ExtXj1] {
        let basis = metric::acting_basis(space).expect("basis");
        let gens: Vec<usize> = match space {
            SpaceId::H1 | SpaceId::Sl2r | SpaceId::X1 => vec![0, 1, 2],
            _ => (0..basis.dim()).collect(),
        };
        for gi in gens {
            let f = metric::fundamental_field_closed(space, gi).expect("catalog");
            for _ in 0..n {
                let params = sample::random_params(&mut rng);
                let pt = sample::random_point(&mut rng, space);
                worst = worst
                    .max(metric::killing_residual(&f, space, &params, &pt).expect("residual").amax());
            }
        }
    }
    ctx.push(
        "killing.fundamental-fields",
        "printed fundamental fields solve the Killing equations of the invariant metrics",
        worst,
        ctx.tol(1e-9),
    );

    // weighted half-plane combinations (the printed solutions of the
    // invariant-metric Killing system)
    let mut rng = ctx.rng(22);
    let mut worst = 0.0f64;
    for _ in 0..n.min(50) {
        let params = sample::random_params(&mut rng);
        let pt = sample::random_point(&mut rng, SpaceId::Sl2r);
        let sa = params.alpha.sqrt();
        let sb = params.beta.sqrt();
        for coeffs in [vec![sa, sa, 0.0], vec![0.0, 0.0, 2.0 * sa], vec![sb, -sb, 0.0]] {
            let f = metric::fundamental_field_fn(SpaceId::Sl2r, &coeffs);
            worst = worst.max(
                metric::killing_residual(&f, SpaceId::Sl2r, &params, &pt)
                    .expect("residual")
                    .amax(),
            );
        }
    }
    ctx.push(
        "killing.weighted-generators",
        "weighted generator combinations are Killing for the two-parameter metric",
        worst,
        ctx.tol(1e-9),
    );

    // numeric fundamental fields on the group itself
    let mut rng = ctx.rng(23);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let params = sample::random_params(&mut rng);
        let pt = sample::random_point(&mut rng, SpaceId::Gj1);
        for gi in 0..6 {
            let mut coeffs = vec![0.0; 6];
            coeffs[gi] = 1.0;
            let f = metric::fundamental_field_fn(SpaceId::Gj1, &coeffs);
            worst = worst.max(
                metric::killing_residual(&f, SpaceId::Gj1, &params, &pt)
                    .expect("residual")
                    .amax(),
            );
        }
    }
    ctx.push(
        "killing.group-fundamental-fields",
        "orbit-derivative fields on the group are Killing for the six-parameter metric",
        worst,
        ctx.tol(1e-9),
    );

    // jets against finite differences for the Lie-derivative residual
    let mut rng = ctx.rng(24);
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let params = sample::random_params(&mut rng);
        let pt = sample::random_point(&mut rng, SpaceId::Xj1);
        // a deliberately non-Killing smooth field
        let f: FieldFn = Box::new(|c: &[Jet<f64>]| {
            vec![
                c[1].clone() * c[2].clone(),
                c[0].clone().sin(),
                c[3].clone() * c[3].clone(),
                c[0].clone() * c[1].clone(),
            ]
        });
        let jet = metric::killing_residual(&f, SpaceId::Xj1, &params, &pt).expect("residual");
        let fd = killing_residual_fd(&f, SpaceId::Xj1, &params, &pt, 1e-5);
        for i in 0..4 {
            for j in 0..4 {
                let scale = 1.0f64.max(jet[(i, j)].abs());
                worst = worst.max((jet[(i, j)] - fd[(i, j)]).abs() / scale);
            }
        }
    }
    ctx.push(
        "killing.jet-vs-fd",
        "Lie-derivative residual by jets matches the finite-difference oracle",
        worst,
        ctx.tol(1e-6),
    );

    // the comparison corpus
    let mut rng = ctx.rng(25);
    for space in [
        SpaceId::Sphere2,
        SpaceId::Disk1,
        SpaceId::Plane2,
        SpaceId::Bcv { kappa: -1.0, tau: 0.7 },
        SpaceId::Bcv { kappa: 1.0, tau: 0.5 },
    ] {
        let pts = points(&mut rng, space, n);
        let rep = corpus::corpus_killing_suite(space, &pts).expect("corpus");
        ctx.push(
            &format!("killing.corpus.{}", rep.space),
            "printed Killing fields solve the Killing equations",
            rep.max_killing_residual,
            ctx.tol(1e-9),
        );
        let worst_bracket =
            rep.bracket_checks.iter().map(|c| c.residual).fold(0.0, f64::max);
        ctx.push(
            &format!("killing.corpus.{}.brackets", rep.space),
            "field brackets reproduce the printed commutator table",
            worst_bracket,
            ctx.tol(1e-10),
        );
        if let Some(t) = rep.transfer_residual {
            ctx.push(
                "killing.corpus.sphere2.stereographic-transfer",
                "spherical fields transported to the plane chart match the planar list up to \
                 the recorded sign",
                t,
                ctx.tol(1e-9),
            );
            let (_, printed_y) = corpus::stereographic_transfer_residual(&pts[0]);
            ctx.note(
                "planar form of the second spherical Killing field",
                "(2 xi eta, 1 - xi^2 + eta^2)/2",
                &format!(
                    "the transported field is the negative of the printed one \
                     (defect {:.3e} at a sample point)",
                    printed_y
                ),
            );
        }
    }
}

fn killing_residual_fd(
    field: &FieldFn,
    space: SpaceId,
    params: &MetricParams,
    coords: &[f64],
    h: f64,
) -> Mat {
    let n = coords.len();
    let gfun = |c: &[f64]| -> Mat {
        let rows = metric::metric_rows::<f64>(space, params, c).expect("metric");
        Mat::from_fn(n, n, |i, j| rows[i][j])
    };
    let xfun = |c: &[f64]| -> Vec<f64> {
        let jc: Vec<Jet<f64>> = c.iter().map(|&v| Jet::constant(n, v)).collect();
        field(&jc).iter().map(|v| v.val).collect()
    };
    let g = gfun(coords);
    let x = xfun(coords);
    let mut dg = vec![Mat::zeros(n, n); n];
    let mut dx = vec![vec![0.0; n]; n];
    for l in 0..n {
        let mut cp = coords.to_vec();
        let mut cm = coords.to_vec();
        cp[l] += h;
        cm[l] -= h;
        dg[l] = (gfun(&cp) - gfun(&cm)) / (2.0 * h);
        let xp = xfun(&cp);
        let xm = xfun(&cm);
        for m in 0..n {
            dx[l][m] = (xp[m] - xm[m]) / (2.0 * h);
        }
    }
    Mat::from_fn(n, n, |l, c| {
        let mut acc = 0.0;
        for m in 0..n {
            acc += x[m] * dg[m][(l, c)] + g[(m, c)] * dx[l][m] + g[(l, m)] * dx[c][m];
        }
        acc
    })
}

// -------------------------------------------------------------- geodesics

fn geodesics_suite(ctx: &mut Ctx) {
    let n = ctx.config.samples;
    let params = ctx.config.params;
    // energy conservation
    let mut rng = ctx.rng(31);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let base = vec![
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        ];
        let vel = vec![
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        ];
        let path = geodesic::integrate_geodesic(SpaceId::Xj1, &params, &base, &vel, 1.0, 1000)
            .expect("path");
        worst = worst.max(path.energy_drift);
    }
    ctx.push(
        "geodesics.energy-conservation",
        "kinetic energy is constant along integrated geodesics",
        worst,
        ctx.tol(1e-6),
    );

    // published algebraic system annihilates the published family rows
    let mut rng = ctx.rng(32);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let p = sample::random_params(&mut rng);
        let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let draws: Vec<(usize, Vec<f64>, Vec<f64>)> = vec![
            (1, vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)], vec![]),
            (
                2,
                vec![
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ],
                vec![],
            ),
            (3, vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)], vec![sign(&mut rng)]),
            (4, vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)], vec![sign(&mut rng)]),
            (
                5,
                vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
                vec![sign(&mut rng), sign(&mut rng)],
            ),
        ];
        for (row, free, signs) in draws {
            let v = geodesic::table1_family(row, &p, &free, &signs).expect("row");
            for r in geodesic::geodesic_vector_residual(&v, &p) {
                worst = worst.max(r.abs());
            }
        }
    }
    ctx.push(
        "geodesics.family-rows-solve-published-system",
        "the five published families annihilate the published algebraic system",
        worst,
        ctx.tol(1e-12),
    );

    // random vectors almost never solve the system
    let mut rng = ctx.rng(33);
    let mut passed = 0usize;
    let draws = 1000;
    for _ in 0..draws {
        let mut v = [0.0; 6];
        let mut norm = 0.0f64;
        for e in v.iter_mut() {
            *e = rng.gen_range(-1.0..1.0);
            norm += *e * *e;
        }
        for e in v.iter_mut() {
            *e /= norm.sqrt();
        }
        if geodesic::geodesic_vector_residual(&v, &params)
            .iter()
            .all(|r| r.abs() < 1e-12)
        {
            passed += 1;
        }
    }
    ctx.push(
        "geodesics.random-vector-rejection",
        "uniform random frame vectors fail the geodesic-vector system",
        passed as f64 / draws as f64,
        0.05,
    );

    // half-plane tangent directions exponentiate to geodesics
    let sa = params.alpha.sqrt();
    let r1 = geodesic::orbit_vs_geodesic_residual(
        SpaceId::X1,
        &params,
        &[sa, sa, 0.0],
        &[0.0, 1.0],
        1.0,
        1000,
    )
    .expect("orbit");
    let r2 = geodesic::orbit_vs_geodesic_residual(
        SpaceId::X1,
        &params,
        &[0.0, 0.0, 2.0 * sa],
        &[0.0, 1.0],
        1.0,
        1000,
    )
    .expect("orbit");
    ctx.push(
        "geodesics.halfplane-orbits",
        "tangent-direction orbits through the base point are geodesics of the half-plane",
        r1.max(r2),
        ctx.tol(1e-6),
    );

    // published family rows, exponentiated at the origin: rows 1 and 2 (and
    // row 5 at alpha = beta) are geodesics; rows 3 and 4 are not. The check
    // requires all five rows as published and therefore fails; the derived
    // families below pass, and the disagreement is recorded.
    let base = [0.0, 1.0, 0.0, 0.0];
    let mut rng = ctx.rng(34);
    let mut worst_published = 0.0f64;
    let mut per_row = [0.0f64; 5];
    let mut worst_derived = 0.0f64;
    for row in 1..=5usize {
        for _ in 0..2 {
            let free: Vec<f64> = match row {
                2 => (0..3).map(|_| rng.gen_range(-0.8..0.8)).collect(),
                _ => (0..2).map(|_| rng.gen_range(-0.8..0.8)).collect(),
            };
            let signs: Vec<f64> = match row {
                3 | 4 => vec![if rng.gen_bool(0.5) { 1.0 } else { -1.0 }],
                5 => vec![
                    if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
                    if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
                ],
                _ => vec![],
            };
            let v = geodesic::table1_family(row, &params, &free, &signs).expect("row");
            let coeffs = geodesic::frame_to_algebra(&v, &params);
            let gap = geodesic::orbit_vs_geodesic_residual(
                SpaceId::Xj1,
                &params,
                &coeffs,
                &base,
                1.0,
                1000,
            )
            .expect("orbit");
            per_row[row - 1] = per_row[row - 1].max(gap);
            worst_published = worst_published.max(gap);
            // derived counterpart
            let free_d: Vec<f64> = match row {
                5 => vec![rng.gen_range(0.2..0.8), rng.gen_range(0.2..0.8),
                    rng.gen_range(-0.8..0.8)],
                _ => free.clone(),
            };
            let signs_d: Vec<f64> = match row {
                3 | 4 | 5 => vec![if rng.gen_bool(0.5) { 1.0 } else { -1.0 }],
                _ => vec![],
            };
            let vd = geodesic::derived_family(row, &params, &free_d, &signs_d).expect("row");
            let coeffs = geodesic::frame_to_algebra(&vd, &params);
            let gap = geodesic::orbit_vs_geodesic_residual(
                SpaceId::Xj1,
                &params,
                &coeffs,
                &base,
                1.0,
                1000,
            )
            .expect("orbit");
            worst_derived = worst_derived.max(gap);
        }
    }
    ctx.push_witness(
        "geodesics.published-family-orbits",
        "published family vectors exponentiate to geodesics of the balanced metric",
        worst_published,
        ctx.tol(1e-6),
        Some(format!(
            "per-row orbit gaps: {:?}; rows 3 and 4 solve only the published system",
            per_row
        )),
    );
    ctx.push(
        "geodesics.derived-family-orbits",
        "families of the re-derived system exponentiate to geodesics",
        worst_derived,
        ctx.tol(1e-6),
    );
    ctx.note(
        "geodesic-vector system, second and third equations",
        "-r a c + d^2 - e^2 and b d + e(a + c)",
        "-2 r a c + d^2 - e^2 and b d + e(a + r c), from the verified frame commutators; \
         orbit integration confirms the derived system and rejects published family rows 3 \
         and 4 (and row 5 when alpha differs from beta)",
    );

    // equivariance of geodesics under the group action
    let mut rng = ctx.rng(35);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let base = vec![
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        ];
        let vel = vec![
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        ];
        let g = sample::random_gj1(&mut rng);
        let path = geodesic::integrate_geodesic(SpaceId::Xj1, &params, &base, &vel, 1.0, 400)
            .expect("path");
        let jc = seed(&base);
        let gm = crate::gmat::GMat::<Jet<f64>>::from_f64_matrix(&g.matrix);
        let moved = metric::orbit_generic(SpaceId::Xj1, &gm, &jc).expect("orbit");
        let start2: Vec<f64> = moved.iter().map(|v| v.val).collect();
        let vel2: Vec<f64> = (0..4)
            .map(|i| (0..4).map(|j| moved[i].grad[j] * vel[j]).sum())
            .collect();
        let path2 = geodesic::integrate_geodesic(SpaceId::Xj1, &params, &start2, &vel2, 1.0, 400)
            .expect("path");
        for ((_, x1, _), (_, x2, _)) in path.samples.iter().zip(&path2.samples) {
            let mapped = metric::space_act(SpaceId::Xj1, &g, x1).expect("act");
            for (u, v) in mapped.iter().zip(x2) {
                worst = worst.max((u - v).abs());
            }
        }
    }
    ctx.push(
        "geodesics.equivariance",
        "isometries map geodesics to geodesics pointwise",
        worst,
        ctx.tol(1e-6),
    );
}

// ------------------------------------------------------------ reductivity

fn reductivity_suite(ctx: &mut Ctx) {
    let params = ctx.config.params;
    let mut rng = ctx.rng(41);
    let pts = points(&mut rng, SpaceId::Xj1, 6);
    let which = ctx.config.space;
    if which.is_none() || which == Some(SpaceId::X1) {
        let rep = geodesic::natural_reductivity_report(ReductivitySetup::X1, &params, &pts)
            .expect("report");
        ctx.push(
            "reductivity.halfplane-holds",
            "triple condition vanishes on the half-plane tangent frame",
            rep.max_residual,
            ctx.tol(1e-10),
        );
    }
    if which.is_none() || which == Some(SpaceId::Xj1) {
        let rep =
            geodesic::natural_reductivity_report(ReductivitySetup::Xj1Balanced, &params, &pts)
                .expect("report");
        // expected failure: the check passes when the condition fails with
        // the predicted witness value -1/(2 sqrt(alpha))
        let expected = -0.5 / params.alpha.sqrt();
        let ok = rep.verdict == Verdict::Fails
            && rep
                .witness
                .map(|(i, j, k, v)| (i, j, k) == (0, 3, 4) && (v - expected).abs() < 1e-12)
                .unwrap_or(false);
        ctx.push_witness(
            "reductivity.siegel-jacobi-fails",
            "balanced metric is not naturally reductive; witness triple (L1, L4, L5)",
            if ok { 0.0 } else { 1.0 },
            0.5,
            Some(format!(
                "verdict {:?}, max residual {:.6}, expected witness value {:.6}",
                rep.verdict, rep.max_residual, expected
            )),
        );
    }
    if which.is_none() {
        let rep =
            geodesic::natural_reductivity_report(ReductivitySetup::FcProduct, &params, &pts)
                .expect("report");
        ctx.push(
            "reductivity.product-coordinates-hold",
            "the product of the half-plane with the flat plane is naturally reductive",
            rep.max_residual,
            ctx.tol(1e-10),
        );
    }
}

// ---------------------------------------------------------------- contact

fn contact_suite(ctx: &mut Ctx) {
    let n = ctx.config.samples;
    let params = ctx.config.params;
    let mut rng = ctx.rng(51);
    let pts = points(&mut rng, SpaceId::Sl2r, n.min(40));
    let which = ctx.config.space;
    if which.is_none() || which == Some(SpaceId::Sl2r) {
        let rep = contact::sasaki_report(SpaceId::Sl2r, &params, &pts).expect("report");
        ctx.push(
            "contact.sl2r-axioms",
            "almost-contact axioms hold for the invariant structure",
            rep.axiom_residual,
            ctx.tol(1e-12),
        );
        ctx.push(
            "contact.sl2r-rank",
            "structure tensor has rank 2",
            (rep.rank as f64 - 2.0).abs(),
            0.5,
        );
        // contact coefficient 2 beta / y^2
        let mut worst = 0.0f64;
        let s = contact::sl2r_contact_structure(&params);
        for pt in &pts {
            let c = contact::contact_top_form(&s.eta, pt);
            let expected = 2.0 * params.beta / (pt[1] * pt[1]);
            worst = worst.max((c.abs() - expected).abs() / expected);
        }
        ctx.push(
            "contact.sl2r-coefficient",
            "contact volume coefficient has the predicted magnitude",
            worst,
            ctx.tol(1e-12),
        );
        ctx.push(
            "contact.sl2r-reeb-killing",
            "the Reeb field is Killing for the invariant metric",
            rep.xi_killing_residual,
            ctx.tol(1e-10),
        );
        ctx.push(
            "contact.sl2r-normality",
            "the normality tensor vanishes (corrected component formula)",
            rep.n1_max,
            ctx.tol(1e-10),
        );
        // legacy formula, measured difference
        let mut diff = 0.0f64;
        for pt in pts.iter().take(10) {
            let a = contact::nijenhuis_n1(&s, pt, NijenhuisMode::Corrected);
            let b = contact::nijenhuis_n1(&s, pt, NijenhuisMode::Legacy);
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        diff = diff.max((a[i][j][k] - b[i][j][k]).abs());
                    }
                }
            }
        }
        ctx.push_witness(
            "contact.sl2r-legacy-formula-difference",
            "measured gap between the corrected and the older component formula on this \
             structure",
            0.0,
            1.0,
            Some(format!("max difference {:.3e} (both vanish here)", diff)),
        );
        // associated two-form: antisymmetry and metric recovery
        let mut worst = 0.0f64;
        for pt in &pts {
            let hat = contact::phi_hat_from_eta(&s.eta, pt);
            worst = worst.max((&hat + hat.transpose()).amax());
            let g = metric::metric_at(SpaceId::Sl2r, &params, pt).expect("metric");
            let jc = seed(pt);
            let phi_rows = (s.phi)(&jc);
            let phi = Mat::from_fn(3, 3, |i, j| phi_rows[i][j].val)
                * (params.beta.sqrt() / (2.0 * params.alpha));
            worst = worst.max((g * phi - hat).amax());
        }
        ctx.push(
            "contact.sl2r-associated-form",
            "half-curl of the contact form is antisymmetric and equals g Phi",
            worst,
            ctx.tol(1e-12),
        );
        // cone symplectization
        let mut rng = ctx.rng(52);
        let mut closed = 0.0f64;
        let mut mindet = f64::INFINITY;
        for _ in 0..n.min(40) {
            let base = sample::random_point(&mut rng, SpaceId::Sl2r);
            let r = rng.gen_range(0.5..2.0);
            let pt = vec![r, base[0], base[1], base[2]];
            let (_, c, det) = contact::cone_symplectic_form(&params, &pt);
            closed = closed.max(c);
            mindet = mindet.min(det);
        }
        ctx.push(
            "contact.cone-closed",
            "the symplectization two-form on the cone is closed",
            closed,
            ctx.tol(1e-8),
        );
        ctx.push_witness(
            "contact.cone-nondegenerate",
            "the symplectization two-form is nondegenerate over the sampled cone",
            if mindet > 1e-6 { 0.0 } else { 1.0 },
            0.5,
            Some(format!("min |det| = {:.3e}", mindet)),
        );
    }
    if which.is_none() || which == Some(SpaceId::ExtXj1) {
        let mut rng = ctx.rng(53);
        let pts = points(&mut rng, SpaceId::ExtXj1, n.min(40));
        let rep = contact::sasaki_report(SpaceId::ExtXj1, &params, &pts).expect("report");
        let ok = rep.rank < rep.expected_rank
            && rep.axiom_residual > 0.5
            && rep.contact_coefficient < 1e-14;
        ctx.push_witness(
            "contact.extended-halfplane-obstruction",
            "the center-dual one-form admits no almost contact structure: top form \
             vanishes and the compatible tensor has rank 2 < 4",
            if ok { 0.0 } else { 1.0 },
            0.5,
            Some(format!(
                "rank {}, axiom defect {:.3}, top-form sup {:.3e}",
                rep.rank, rep.axiom_residual, rep.contact_coefficient
            )),
        );
    }
}

// ------------------------------------------------------------- transforms

fn transforms_suite(ctx: &mut Ctx) {
    let n = ctx.config.samples;
    let mut rng = ctx.rng(61);
    // round trips
    let mut worst = 0.0f64;
    for _ in 0..n.max(1000) {
        let hp = vec![
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.2..5.0),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ];
        for m in [MapId::Cayley, MapId::Fc1] {
            let there = transform::apply_map(m, &hp).expect("map");
            let back = transform::apply_map(m.inverse(), &there).expect("map");
            for (u, v) in hp.iter().zip(&back) {
                worst = worst.max((u - v).abs());
            }
        }
        let r = rng.gen_range(0.0..0.9);
        let t: f64 = rng.gen_range(0.0..6.28);
        let disk = vec![
            r * t.cos(),
            r * t.sin(),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ];
        for m in [MapId::CayleyInv, MapId::Fc] {
            let there = transform::apply_map(m, &disk).expect("map");
            let back = transform::apply_map(m.inverse(), &there).expect("map");
            for (u, v) in disk.iter().zip(&back) {
                worst = worst.max((u - v).abs());
            }
        }
    }
    ctx.push(
        "transforms.round-trips",
        "every registered map composed with its inverse is the identity",
        worst,
        ctx.tol(1e-12),
    );

    // the commuting square
    let mut rng = ctx.rng(62);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let r = rng.gen_range(0.0..0.9);
        let t: f64 = rng.gen_range(0.0..6.28);
        let p = vec![
            r * t.cos(),
            r * t.sin(),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ];
        worst = worst.max(transform::diagram_residual(&p).expect("diagram"));
    }
    ctx.push(
        "transforms.diagram",
        "fiber change after the base Cayley map agrees with the fiber identification leg",
        worst,
        ctx.tol(1e-11),
    );

    // two-form network: potential, closed form, metric
    let mut rng = ctx.rng(63);
    let mut worst_pot = 0.0f64;
    let mut worst_metric = 0.0f64;
    for _ in 0..n {
        let params = sample::random_params(&mut rng);
        let pt = sample::random_point(&mut rng, SpaceId::Xj1);
        let w_closed = transform::kahler_form_at(SpaceId::Xj1, &params, &pt).expect("form");
        let jc = seed(&pt);
        let image = transform::pq_to_complex(&jc);
        let target: Vec<f64> = image.iter().map(|v| v.val).collect();
        let w_pot_c = transform::kahler_from_potential(&params, &target).expect("form");
        let jac = Mat::from_fn(4, 4, |i, j| image[i].grad.get(j).copied().unwrap_or(0.0));
        let w_pot = jac.transpose() * w_pot_c * jac;
        worst_pot = worst_pot.max((&w_closed - w_pot).amax());
        let g = transform::metric_from_kahler_form(&params, &pt).expect("metric");
        let g_direct = metric::metric_at(SpaceId::Xj1, &params, &pt).expect("metric");
        worst_metric = worst_metric.max((g - g_direct).amax());
    }
    ctx.push(
        "transforms.potential-vs-form",
        "two-form from the potential matches the closed invariant form",
        worst_pot,
        ctx.tol(1e-9),
    );
    ctx.push(
        "transforms.form-vs-metric",
        "pairing the form with the complex structure recovers the balanced metric",
        worst_metric,
        ctx.tol(1e-9),
    );
    ctx.note(
        "first term of the half-plane two-form",
        "2k/(vbar - v)^2, wedge factor absent",
        "-(k/4) dv wedge dvbar / (vbar - v)^2; the printed coefficient is not consistent \
         with the balanced metric",
    );
    ctx.note(
        "potential of the balanced metric",
        "+c1 log(tau - taubar) - i c2 (z - zbar)^2/(tau - taubar)",
        "the logarithmic term needs coefficient -c1 for a positive-definite Hessian, and \
         the form is (i/2) times the mixed Hessian in the convention that reproduces the \
         printed metric",
    );

    // closedness of the potential form (third-derivative antisymmetrization)
    let mut rng = ctx.rng(64);
    let mut worst = 0.0f64;
    for _ in 0..n.min(30) {
        let params = sample::random_params(&mut rng);
        let pt = vec![
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.2..5.0),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ];
        worst = worst.max(transform::potential_form_closedness(&params, &pt));
    }
    ctx.push(
        "transforms.potential-form-closed",
        "exterior derivative of the potential-derived form vanishes",
        worst,
        ctx.tol(1e-7),
    );

    // invariance of the form under the group action
    let mut rng = ctx.rng(65);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let params = sample::random_params(&mut rng);
        let pt = sample::random_point(&mut rng, SpaceId::Xj1);
        let g = sample::random_gj1(&mut rng);
        worst = worst.max(transform::kahler_invariance_residual(&params, &g, &pt).expect("form"));
    }
    ctx.push(
        "transforms.form-invariance",
        "the two-form is invariant under the group action",
        worst,
        ctx.tol(1e-9),
    );

    // the one-form transport law of the fiber change
    let mut rng = ctx.rng(66);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let r = rng.gen_range(0.0..0.9);
        let t: f64 = rng.gen_range(0.0..6.28);
        let p = vec![
            r * t.cos(),
            r * t.sin(),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ];
        worst = worst.max(transform::fc_one_form_transfer_residual(&p).expect("transfer"));
    }
    ctx.push(
        "transforms.one-form-transport",
        "the fiber change carries the fiber one-form to its product-chart expression",
        worst,
        ctx.tol(1e-12),
    );
}

/// Render the report as pretty JSON (stable field order, shortest float
/// round-trip formatting, so identical configurations give identical bytes).
pub fn to_json(report: &VerificationReport) -> String {
    serde_json::to_string_pretty(report).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_deterministic() {
        let config = RunConfig { samples: 5, ..Default::default() };
        let a = to_json(&run_suite(&config, Suite::Reductivity));
        let b = to_json(&run_suite(&config, Suite::Reductivity));
        assert_eq!(a, b);
    }

    #[test]
    fn reductivity_suite_passes_with_expected_failure_semantics() {
        let config = RunConfig { samples: 5, ..Default::default() };
        let rep = run_suite(&config, Suite::Reductivity);
        assert!(rep.all_passed());
        assert!(rep.checks.iter().any(|c| c.id == "reductivity.siegel-jacobi-fails"));
    }

    #[test]
    fn contact_suite_records_the_negative_verdict() {
        let config = RunConfig { samples: 10, ..Default::default() };
        let rep = run_suite(&config, Suite::Contact);
        assert!(rep.all_passed());
        let neg = rep
            .checks
            .iter()
            .find(|c| c.id == "contact.extended-halfplane-obstruction")
            .unwrap();
        assert_eq!(neg.verdict, "pass");
    }

    #[test]
    fn geodesics_suite_reports_the_published_table_defect() {
        let config = RunConfig { samples: 10, ..Default::default() };
        let rep = run_suite(&config, Suite::Geodesics);
        let published = rep
            .checks
            .iter()
            .find(|c| c.id == "geodesics.published-family-orbits")
            .unwrap();
        assert_eq!(published.verdict, "fail");
        let derived = rep
            .checks
            .iter()
            .find(|c| c.id == "geodesics.derived-family-orbits")
            .unwrap();
        assert_eq!(derived.verdict, "pass");
        assert!(!rep.discrepancies.is_empty());
    }
}
