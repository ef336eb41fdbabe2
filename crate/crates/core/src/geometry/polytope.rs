//! Separating-axis test for convex polytopes given as (vertices, edge directions), d <= 3.
//!
//! The Minkowski difference A - B has edges parallel to edges of A or B, so its
//! facet normals come from those directions. The candidate axis set is chosen by
//! the rank of the combined direction set, which keeps degenerate (flat, thin or
//! point-like) shapes exact.

use super::coord::{self, Coord};

pub struct Polytope<'a, T> {
    pub vertices: &'a [Vec<T>],
    pub edges: &'a [Vec<T>],
}

fn separated_on<T: Coord>(axis: &[T], a: &Polytope<T>, b: &Polytope<T>, eps: f64) -> bool {
    let range = |p: &Polytope<T>| {
        let mut lo = coord::dot(axis, &p.vertices[0]);
        let mut hi = lo.clone();
        for v in &p.vertices[1..] {
            let x = coord::dot(axis, v);
            if x.total_cmp(&lo).is_lt() {
                lo = x;
            } else if x.total_cmp(&hi).is_gt() {
                hi = x;
            }
        }
        (lo, hi)
    };
    let (alo, ahi) = range(a);
    let (blo, bhi) = range(b);
    ahi.lt(&blo, eps) || bhi.lt(&alo, eps)
}

fn perp2<T: Coord>(e: &[T]) -> Vec<T> {
    vec![-e[1].clone(), e[0].clone()]
}

/// Candidate separating axes for two polytopes in dimension `d <= 3`.
pub fn candidate_axes<T: Coord>(a: &Polytope<T>, b: &Polytope<T>, eps: f64) -> Vec<Vec<T>> {
    let d = a.vertices[0].len();
    let w = coord::sub(&a.vertices[0], &b.vertices[0]);
    let mut dirs: Vec<&Vec<T>> = Vec::with_capacity(a.edges.len() + b.edges.len());
    for e in a.edges.iter().chain(b.edges) {
        if coord::is_zero_vec(e, eps) {
            continue;
        }
        // Parallel directions give the same axes (translates share all of them).
        if d == 3 && dirs.iter().any(|f| coord::is_zero_vec(&coord::cross3(e, f), eps)) {
            continue;
        }
        dirs.push(e);
    }
    let mut axes = vec![w.clone()];
    match d {
        1 => axes.push(vec![T::one()]),
        2 => {
            for e in &dirs {
                axes.push((*e).clone());
                axes.push(perp2(e));
            }
        }
        3 => {
            let Some(u) = dirs.first().copied() else { return axes };
            let plane = dirs.iter().map(|v| coord::cross3(u, v)).find(|n| !coord::is_zero_vec(n, eps));
            match plane {
                None => {
                    // Everything collinear: the line direction and w's perpendicular part.
                    axes.push(u.clone());
                    axes.push(coord::cross3(u, &coord::cross3(&w, u)));
                }
                Some(n) => {
                    let full = dirs.iter().any(|v| !coord::dot(&n, v).is_zero_eps(eps));
                    if full {
                        for i in 0..dirs.len() {
                            for j in i + 1..dirs.len() {
                                let c = coord::cross3(dirs[i], dirs[j]);
                                if !coord::is_zero_vec(&c, eps) {
                                    axes.push(c);
                                }
                            }
                        }
                    } else {
                        for e in &dirs {
                            axes.push(coord::cross3(&n, e));
                        }
                        axes.push(n);
                    }
                }
            }
        }
        _ => panic!("separating-axis test needs d <= 3, got {d}"),
    }
    axes
}

pub fn intersect<T: Coord>(a: &Polytope<T>, b: &Polytope<T>, eps: f64) -> bool {
    candidate_axes(a, b, eps)
        .iter()
        .filter(|ax| !coord::is_zero_vec(ax, eps))
        .all(|ax| !separated_on(ax, a, b, eps))
}
