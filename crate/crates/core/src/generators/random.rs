//! Seeded random families for benchmarking.
//!
//! Geometric families live on the integer grid `[0, GRID]^d`, the unit cube
//! scaled by `2^20`, so predicates stay exact. Sizes are set from a density:
//! `n * E[volume] = density * GRID^d`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GenError;
use crate::geometry::GeomObject;
use crate::instance::{GenSpec, Instance, Label};

pub const GRID: i64 = 1 << 20;

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * std::f64::consts::PI / d as f64,
    }
}

/// `E[X^d]` for `X` uniform on `[1, a]`.
fn uniform_moment(a: f64, d: usize) -> f64 {
    if (a - 1.0).abs() < 1e-12 {
        1.0
    } else {
        (a.powi(d as i32 + 1) - 1.0) / ((d as f64 + 1.0) * (a - 1.0))
    }
}

fn check(n: u64, d: usize, density: f64, aspect: f64) -> Result<(), GenError> {
    if d == 0 || d > 8 {
        return Err(GenError::Param("d must be in 1..=8".into()));
    }
    if n > 1 << 22 {
        return Err(GenError::Param(format!("n = {n} is too large")));
    }
    if !(density > 0.0 && density.is_finite()) {
        return Err(GenError::Param("density must be positive".into()));
    }
    if !(aspect >= 1.0 && aspect.is_finite()) {
        return Err(GenError::Param("aspect must be at least 1".into()));
    }
    Ok(())
}

fn grid_spec(family: &str, n: u64, d: usize, density: f64, aspect: f64, seed: u64) -> GenSpec {
    let mut spec = GenSpec::new(family);
    spec.n = Some(n);
    spec.d = Some(d as u64);
    spec.seed = Some(seed);
    spec.density = Some(density);
    spec.aspect = Some(aspect);
    spec.note("grid", GRID).note("fat", true)
}

/// Centres uniform in the cube; radii uniform on `[r, aspect * r]`
/// (congruent when `aspect = 1`).
pub fn random_balls(n: u64, d: usize, density: f64, aspect: f64, seed: u64) -> Result<Instance, GenError> {
    check(n, d, density, aspect)?;
    let g = GRID as f64;
    let r0 = if n == 0 { 1.0 } else { g * (density / (n as f64 * unit_ball_volume(d) * uniform_moment(aspect, d))).powf(1.0 / d as f64) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objs = (0..n)
        .map(|_| {
            let c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=GRID)).collect();
            let r = if aspect > 1.0 { rng.gen_range(r0..=aspect * r0) } else { r0 };
            GeomObject::ball(&c, (r.round() as i64).max(1))
        })
        .collect();
    let spec = grid_spec("random_balls", n, d, density, aspect, seed).note("base_radius", r0);
    Ok(Instance::geometric(&format!("random-balls-n{n}-d{d}-s{seed}"), d, objs).with_spec(spec))
}

/// Sides independently uniform on `[s, aspect * s]`, boxes inside the cube.
pub fn random_boxes(n: u64, d: usize, density: f64, aspect: f64, seed: u64) -> Result<Instance, GenError> {
    check(n, d, density, aspect)?;
    let g = GRID as f64;
    let s0 = if n == 0 { 1.0 } else { g * (density / n as f64).powf(1.0 / d as f64) * 2.0 / (1.0 + aspect) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objs = (0..n)
        .map(|_| {
            let mut lo = Vec::with_capacity(d);
            let mut hi = Vec::with_capacity(d);
            for _ in 0..d {
                let s = if aspect > 1.0 { rng.gen_range(s0..=aspect * s0) } else { s0 };
                let s = (s.round() as i64).clamp(0, GRID);
                let l = rng.gen_range(0..=GRID - s);
                lo.push(l);
                hi.push(l + s);
            }
            GeomObject::axis_box(&lo, &hi)
        })
        .collect();
    let spec = grid_spec("random_boxes", n, d, density, aspect, seed).note("base_side", s0);
    Ok(Instance::geometric(&format!("random-boxes-n{n}-d{d}-s{seed}"), d, objs).with_spec(spec))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum USide {
    /// No edges inside U.
    Independent,
    /// Each U pair with probability `p`.
    Random,
    /// U is a clique.
    Clique,
}

/// U is `0..m`, V is `m..n` and independent; cross pairs appear with
/// probability `p`, U pairs according to `u_side`.
pub fn random_split_graph(n: u64, m: u64, p: f64, u_side: USide, seed: u64) -> Result<Instance, GenError> {
    if m > n {
        return Err(GenError::Param("|U| exceeds n".into()));
    }
    if n > 1 << 16 {
        return Err(GenError::Param(format!("n = {n} is too large")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::Param("p must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n32, m32) = (n as u32, m as u32);
    let mut edges = Vec::new();
    for u in 0..m32 {
        for w in u + 1..m32 {
            let keep = match u_side {
                USide::Independent => false,
                USide::Random => rng.gen_bool(p),
                USide::Clique => true,
            };
            if keep {
                edges.push((u, w));
            }
        }
        for v in m32..n32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut labels = vec![Label::U; m as usize];
    labels.resize(n as usize, Label::V);
    let family = match u_side {
        USide::Independent => "random_bipartite",
        USide::Random => "random_lopsided",
        USide::Clique => "random_clique_side",
    };
    let mut spec = GenSpec::new(family);
    spec.n = Some(n);
    spec.k = Some(m);
    spec.p = Some(p);
    spec.seed = Some(seed);
    Ok(Instance::abstract_graph(&format!("{}-n{n}-m{m}-s{seed}", family.replace('_', "-")), n as usize, edges, Some(labels))
        .with_spec(spec))
}
