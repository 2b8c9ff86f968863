//! Seeded random draws of points, parameters and group elements, shared by
//! the test suites and the verification runner.

use crate::group::{chart_embed, Chart, ChartPoint, GroupElement};
use crate::space::{MetricParams, SpaceId};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random point in the sampling domain of a space.
pub fn random_point(rng: &mut ChaCha8Rng, space: SpaceId) -> Vec<f64> {
    let mut fiber = || rng.gen_range(-1.5..1.5);
    match space {
        SpaceId::H1 => vec![fiber(), fiber(), fiber()],
        SpaceId::Sl2r => vec![
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.1..10.0),
            rng.gen_range(-3.1..3.1),
        ],
        SpaceId::X1 => vec![rng.gen_range(-2.0..2.0), rng.gen_range(0.1..10.0)],
        SpaceId::Xj1 => vec![
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.1..10.0),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ],
        SpaceId::ExtXj1 => vec![
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.1..10.0),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ],
        SpaceId::Gj1 => vec![
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.1..10.0),
            rng.gen_range(-3.1..3.1),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ],
        SpaceId::Sphere2 => vec![rng.gen_range(0.3..2.84), rng.gen_range(0.0..6.28)],
        SpaceId::Disk1 => {
            let r: f64 = rng.gen_range(0.0..0.9);
            let t: f64 = rng.gen_range(0.0..6.28);
            vec![r * t.cos(), r * t.sin()]
        }
        SpaceId::Plane2 => vec![rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
        SpaceId::Bcv { kappa, .. } => loop {
            let x = rng.gen_range(-2.0..2.0);
            let y = rng.gen_range(-2.0..2.0);
            if 1.0 + kappa / 4.0 * (x * x + y * y) > 0.1 {
                break vec![x, y, rng.gen_range(-2.0..2.0)];
            }
        },
        SpaceId::PoincareHp => vec![
            rng.gen_range(0.2..5.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        ],
    }
}

/// Random positive metric parameters in a well-conditioned band.
pub fn random_params(rng: &mut ChaCha8Rng) -> MetricParams {
    MetricParams::new(
        rng.gen_range(0.4..2.5),
        rng.gen_range(0.4..2.5),
        rng.gen_range(0.4..2.5),
        rng.gen_range(0.4..2.5),
    )
}

/// Random Jacobi-group element (moderate spread, y bounded away from zero).
pub fn random_gj1(rng: &mut ChaCha8Rng) -> GroupElement {
    let coords = vec![
        rng.gen_range(-1.5..1.5),
        rng.gen_range(0.4..3.0),
        rng.gen_range(-3.1..3.1),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    ];
    chart_embed(&ChartPoint::new(Chart::S, coords).expect("domain")).expect("embed")
}

/// Random SL(2,R) element.
pub fn random_sl2r(rng: &mut ChaCha8Rng) -> GroupElement {
    let coords = vec![
        rng.gen_range(-1.5..1.5),
        rng.gen_range(0.4..3.0),
        rng.gen_range(-3.1..3.1),
    ];
    chart_embed(&ChartPoint::new(Chart::Iwasawa, coords).expect("domain")).expect("embed")
}

/// Random element of the group acting on a given space.
pub fn random_actor(rng: &mut ChaCha8Rng, space: SpaceId) -> GroupElement {
    match space {
        SpaceId::Sl2r | SpaceId::X1 => random_sl2r(rng),
        SpaceId::H1 => {
            let (l, m, k) = (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            crate::group::h1_element(l, m, k)
        }
        _ => random_gj1(rng),
    }
}
