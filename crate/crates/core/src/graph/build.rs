use rayon::prelude::*;

use super::{GraphError, IntersectionGraph};
use crate::geometry::{intersects, GeomObject, Mode};
use crate::instance::{normalize_edges, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphMode {
    Full,
    /// Keep only U x V edges.
    BipartiteOnly,
}

/// Padded `f64` bounding boxes; pruning with them never drops a true edge
/// because rounding to nearest is monotone.
fn prune_boxes(objects: &[GeomObject]) -> Vec<Option<(Vec<f64>, Vec<f64>)>> {
    objects
        .iter()
        .map(|o| {
            let pad = match o.mode() {
                Mode::Rational => 0.0,
                Mode::Float { eps } => eps,
            };
            o.bbox_f64().map(|(lo, hi)| {
                let grow = |x: f64, s: f64| x + s * pad * x.abs().max(1.0);
                (lo.iter().map(|&x| grow(x, -1.0)).collect(), hi.iter().map(|&x| grow(x, 1.0)).collect())
            })
        })
        .collect()
}

/// Every intersecting pair, via a sweep over the first bounding-box axis plus
/// the exact predicate.
fn predicate_edges(inst: &Instance, keep: &(dyn Fn(u32, u32) -> bool + Sync)) -> Result<Vec<(u32, u32)>, GraphError> {
    let objs = &inst.objects;
    let boxes = prune_boxes(objs);
    let mut bounded: Vec<u32> = (0..objs.len() as u32).filter(|&i| boxes[i as usize].is_some()).collect();
    let unbounded: Vec<u32> = (0..objs.len() as u32).filter(|&i| boxes[i as usize].is_none()).collect();
    let lo0 = |i: u32| boxes[i as usize].as_ref().unwrap().0[0];
    bounded.sort_by(|&a, &b| lo0(a).total_cmp(&lo0(b)).then(a.cmp(&b)));

    let overlap = |a: u32, b: u32| {
        let (la, ha) = boxes[a as usize].as_ref().unwrap();
        let (lb, hb) = boxes[b as usize].as_ref().unwrap();
        (0..la.len()).all(|k| la[k] <= hb[k] && lb[k] <= ha[k])
    };
    let test = |a: u32, b: u32| -> Result<Option<(u32, u32)>, GraphError> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        if !keep(u, v) {
            return Ok(None);
        }
        Ok(intersects(&objs[u as usize], &objs[v as usize])?.then_some((u, v)))
    };

    let swept: Vec<Vec<(u32, u32)>> = (0..bounded.len())
        .into_par_iter()
        .map(|p| {
            let a = bounded[p];
            let hi = boxes[a as usize].as_ref().unwrap().1[0];
            let mut out = Vec::new();
            for &b in &bounded[p + 1..] {
                if lo0(b) > hi {
                    break;
                }
                if overlap(a, b) {
                    if let Some(e) = test(a, b)? {
                        out.push(e);
                    }
                }
            }
            for &b in &unbounded {
                if let Some(e) = test(a, b)? {
                    out.push(e);
                }
            }
            Ok(out)
        })
        .collect::<Result<_, GraphError>>()?;
    let mut edges: Vec<(u32, u32)> = swept.into_iter().flatten().collect();
    for (i, &a) in unbounded.iter().enumerate() {
        for &b in &unbounded[i + 1..] {
            if let Some(e) = test(a, b)? {
                edges.push(e);
            }
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

fn diff(expected: &[(u32, u32)], got: &[(u32, u32)]) -> Option<GraphError> {
    let missing: Vec<_> = expected.iter().filter(|e| got.binary_search(e).is_err()).collect();
    let extra: Vec<_> = got.iter().filter(|e| expected.binary_search(e).is_err()).collect();
    if missing.is_empty() && extra.is_empty() {
        return None;
    }
    let example = **missing.first().or(extra.first()).unwrap();
    Some(GraphError::GroundTruthMismatch { missing: missing.len(), extra: extra.len(), example })
}

/// Intersection graph of an instance.
///
/// Abstract instances take their edges from the ground truth. Rational
/// instances are computed with exact predicates and must agree with any
/// ground truth present. Float instances take their designated (cross) edges
/// from the ground truth and only the remaining pairs from the predicates;
/// use [`check_ground_truth`] to compare the predicates themselves.
pub fn build_graph(inst: &Instance, mode: GraphMode) -> Result<IntersectionGraph, GraphError> {
    let n = inst.n;
    let labels = inst.labels.clone();
    let cross = |u: u32, v: u32| labels.as_ref().is_some_and(|l| l[u as usize] != l[v as usize]);
    if inst.objects.is_empty() {
        let gt = inst.ground_truth_edges.clone();
        if n > 0 && gt.is_none() {
            return Err(GraphError::NoEdgeSource);
        }
        let mut edges = gt.unwrap_or_default();
        if mode == GraphMode::BipartiteOnly {
            edges.retain(|&(u, v)| cross(u, v));
        }
        return Ok(IntersectionGraph::from_edges(n, &edges, labels.clone()).with_source(&inst.name));
    }

    let bip = mode == GraphMode::BipartiteOnly;
    let edges = match (inst.mode, &inst.ground_truth_edges) {
        (Mode::Float { .. }, Some(gt)) => {
            let mut e = if bip { Vec::new() } else { predicate_edges(inst, &|u, v| !cross(u, v))? };
            if labels.is_some() {
                e.extend(gt.iter().copied().filter(|&(u, v)| cross(u, v)));
            } else {
                e = gt.clone();
            }
            normalize_edges(e)
        }
        _ => {
            let e = predicate_edges(inst, &|u, v| !bip || cross(u, v))?;
            if let Some(gt) = &inst.ground_truth_edges {
                let designated: Vec<(u32, u32)> =
                    if labels.is_some() { e.iter().copied().filter(|&(u, v)| cross(u, v)).collect() } else { e.clone() };
                if let Some(err) = diff(gt, &designated) {
                    return Err(err);
                }
            }
            e
        }
    };
    Ok(IntersectionGraph::from_edges(n, &edges, labels.clone()).with_source(&inst.name))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundTruthReport {
    pub expected: usize,
    pub missing: Vec<(u32, u32)>,
    pub extra: Vec<(u32, u32)>,
}

impl GroundTruthReport {
    pub fn agrees(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Compare predicate-computed designated edges (the cross edges of labelled
/// instances) against the attached ground truth, in either arithmetic mode.
pub fn check_ground_truth(inst: &Instance) -> Result<GroundTruthReport, GraphError> {
    let gt = inst.ground_truth_edges.as_ref().ok_or(GraphError::NoEdgeSource)?;
    let labels = inst.labels.clone();
    let keep = |u: u32, v: u32| labels.as_ref().is_none_or(|l| l[u as usize] != l[v as usize]);
    let got = predicate_edges(inst, &keep)?;
    Ok(GroundTruthReport {
        expected: gt.len(),
        missing: gt.iter().copied().filter(|e| got.binary_search(e).is_err()).collect(),
        extra: got.iter().copied().filter(|e| gt.binary_search(e).is_err()).collect(),
    })
}
