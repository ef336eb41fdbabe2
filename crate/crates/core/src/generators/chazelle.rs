//! Digit-net point sets and their elementary boxes.
//!
//! `n = b^L` integer points in `[0, n)^d`: coordinate 0 is the index, and
//! coordinate `j >= 1` is the base-`b` radical inverse of the index digits
//! multiplied by the `(j-1)`-th power of the Pascal matrix mod `b`. For
//! `d <= 2`, or prime `b >= d - 1`, every elementary box holding `b^{L}` of
//! the `n^d` cells contains exactly one point. The box family used here is
//! every elementary box `b` times larger: each holds exactly `b` points, and
//! two distinct ones overlap in a box of at most one point, so the incidence
//! graph has no `K_{2,2}`. Each point lies in `C(L+d-2, d-1)` boxes.

use std::collections::HashMap;

use super::GenError;
use crate::geometry::GeomObject;
use crate::instance::{GenSpec, Instance, Label, INCIDENCE_NOTE};

#[derive(Clone, Debug)]
pub struct DigitNet {
    pub n: u64,
    pub d: usize,
    pub b: u64,
    pub levels: u32,
    pub points: Vec<Vec<i64>>,
}

/// An elementary box: on axis `j`, `[c_j b^{e_j}, (c_j + 1) b^{e_j} - 1]` on the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elementary {
    pub exps: Vec<u32>,
    pub cell: Vec<i64>,
}

impl Elementary {
    pub fn bounds(&self, b: u64) -> (Vec<i64>, Vec<i64>) {
        let side = |e: u32| (b as i64).pow(e);
        let lo = self.exps.iter().zip(&self.cell).map(|(&e, &c)| c * side(e)).collect();
        let hi = self.exps.iter().zip(&self.cell).map(|(&e, &c)| (c + 1) * side(e) - 1).collect();
        (lo, hi)
    }
}

pub(crate) fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|i| i * i <= q).all(|i| q % i != 0)
}

fn log_exact(n: u64, b: u64) -> Option<u32> {
    let (mut x, mut l) = (1u64, 0u32);
    while x < n {
        x = x.checked_mul(b)?;
        l += 1;
    }
    (x == n).then_some(l)
}

fn valid_base(b: u64, d: usize) -> bool {
    b >= 2 && (d <= 2 || (is_prime(b) && b as usize + 1 >= d))
}

/// Largest admissible base not above `max(2, ceil(log2 n))` of which `n` is a power.
pub fn default_base(n: u64, d: usize) -> Option<u64> {
    let cap = 2u64.max(64 - (n.max(1) - 1).leading_zeros() as u64);
    (2..=cap).rev().find(|&b| valid_base(b, d) && log_exact(n, b).is_some())
}

/// Row `r` of `P^j` mod `b` applied to `digits`, where `P[r][s] = C(s, r)`.
fn pascal_apply(digits: &[u64], j: u64, b: u64) -> Vec<u64> {
    let l = digits.len();
    let mut binom = vec![vec![0u64; l]; l];
    for s in 0..l {
        binom[s][0] = 1;
        for r in 1..=s {
            binom[s][r] = (binom[s - 1][r - 1] + if r < s { binom[s - 1][r] } else { 0 }) % b;
        }
    }
    (0..l)
        .map(|r| {
            let mut acc = 0u64;
            let mut jp = 1u64; // j^{s-r} mod b
            for s in r..l {
                acc = (acc + binom[s][r] * jp % b * digits[s]) % b;
                jp = jp * (j % b) % b;
            }
            acc
        })
        .collect()
}

impl DigitNet {
    pub fn new(n: u64, d: usize, b: Option<u64>) -> Result<DigitNet, GenError> {
        if d == 0 {
            return Err(GenError::Param("d must be at least 1".into()));
        }
        if n > 1 << 22 {
            return Err(GenError::Param(format!("n = {n} is too large")));
        }
        let b = match b {
            Some(b) => b,
            None => default_base(n, d).ok_or_else(|| GenError::Param(format!("no admissible base for n = {n}, d = {d}")))?,
        };
        if !valid_base(b, d) {
            return Err(GenError::Param(format!("base {b} needs to be prime and at least {} in d = {d}", d.saturating_sub(1))));
        }
        let levels = log_exact(n, b).ok_or_else(|| GenError::Param(format!("n = {n} is not a power of {b}")))?;
        let mut points = Vec::with_capacity(n as usize);
        for i in 0..n {
            let mut digits = Vec::with_capacity(levels as usize);
            let mut x = i;
            for _ in 0..levels {
                digits.push(x % b);
                x /= b;
            }
            let mut p = vec![i as i64];
            for j in 1..d {
                let y = pascal_apply(&digits, j as u64 - 1, b);
                // Radical inverse scaled by n: digit r has weight b^{L-1-r}.
                p.push(y.iter().fold(0i64, |acc, &c| acc * b as i64 + c as i64));
            }
            points.push(p);
        }
        Ok(DigitNet { n, d, b, levels, points })
    }

    /// All exponent vectors `e` with `e_j <= L` and `sum (L - e_j) = deficit`.
    pub fn shapes(&self, deficit: u32) -> Vec<Vec<u32>> {
        let l = self.levels;
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.d];
        fn rec(j: usize, left: u32, l: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if j + 1 == cur.len() {
                if left <= l {
                    cur[j] = l - left;
                    out.push(cur.clone());
                }
                return;
            }
            for f in 0..=left.min(l) {
                cur[j] = l - f;
                rec(j + 1, left - f, l, cur, out);
            }
        }
        rec(0, deficit, l, &mut cur, &mut out);
        out
    }

    /// Point counts of every non-empty elementary box with the given deficit.
    pub fn occupancy(&self, deficit: u32) -> HashMap<Elementary, Vec<u32>> {
        let mut map: HashMap<Elementary, Vec<u32>> = HashMap::new();
        for exps in self.shapes(deficit) {
            for (i, p) in self.points.iter().enumerate() {
                let cell = p.iter().zip(&exps).map(|(&x, &e)| x / (self.b as i64).pow(e)).collect();
                map.entry(Elementary { exps: exps.clone(), cell }).or_default().push(i as u32);
            }
        }
        map
    }

    /// Number of elementary boxes with the given deficit, empty or not.
    pub fn box_count(&self, deficit: u32) -> u64 {
        self.shapes(deficit).len() as u64 * self.b.pow(deficit)
    }
}

/// The point/box incidence structure: points, boxes (sorted), and the
/// `(point, box)` incidences.
pub struct PointsBoxes {
    pub net: DigitNet,
    pub boxes: Vec<(Vec<i64>, Vec<i64>)>,
    pub incidences: Vec<(u32, u32)>,
}

/// Boxes holding exactly `b` points each; fails if the net property does
/// not hold for the parameters.
pub fn points_boxes(n: u64, d: usize, b: Option<u64>) -> Result<PointsBoxes, GenError> {
    let net = DigitNet::new(n, d, b)?;
    if net.levels == 0 {
        return Ok(PointsBoxes { net, boxes: Vec::new(), incidences: Vec::new() });
    }
    let mut occ: Vec<(Elementary, Vec<u32>)> = net.occupancy(net.levels - 1).into_iter().collect();
    occ.sort();
    let expected = net.box_count(net.levels - 1);
    if occ.len() as u64 != expected || occ.iter().any(|(_, pts)| pts.len() as u64 != net.b) {
        return Err(GenError::Bound(format!("digit net with n = {n}, d = {d}, b = {} is not balanced", net.b)));
    }
    let mut boxes = Vec::with_capacity(occ.len());
    let mut incidences = Vec::with_capacity(occ.len() * net.b as usize);
    for (j, (e, pts)) in occ.iter().enumerate() {
        boxes.push(e.bounds(net.b));
        incidences.extend(pts.iter().map(|&p| (p, j as u32)));
    }
    incidences.sort_unstable();
    Ok(PointsBoxes { net, boxes, incidences })
}

fn labelled(np: usize, nb: usize) -> Vec<Label> {
    let mut l = vec![Label::U; np];
    l.resize(np + nb, Label::V);
    l
}

fn cross(incidences: &[(u32, u32)], off: u32) -> Vec<(u32, u32)> {
    incidences.iter().map(|&(p, s)| (p, off + s)).collect()
}

pub fn chazelle_points_boxes(n: u64, d: usize, b: Option<u64>) -> Result<Instance, GenError> {
    if d < 2 {
        return Err(GenError::Param("d must be at least 2".into()));
    }
    let pb = points_boxes(n, d, b)?;
    let mut objs: Vec<GeomObject> = pb.net.points.iter().map(|p| GeomObject::point(p)).collect();
    objs.extend(pb.boxes.iter().map(|(lo, hi)| GeomObject::axis_box(lo, hi)));
    let mut spec = GenSpec::new("chazelle");
    spec.n = Some(n);
    spec.d = Some(d as u64);
    spec.b = Some(pb.net.b);
    let spec = spec.note("incidences", pb.incidences.len() as u64).note("boxes", pb.boxes.len() as u64).note(INCIDENCE_NOTE, true);
    Ok(Instance::geometric(&format!("chazelle-n{n}-d{d}-b{}", pb.net.b), d, objs)
        .with_labels(labelled(pb.net.points.len(), pb.boxes.len()))
        .with_ground_truth(cross(&pb.incidences, n as u32))
        .with_spec(spec))
}

/// Points of the `(d-1)`-dimensional family become vertical boxes spanning
/// `[-B, 2B]` on the last axis; box `i` is lifted to height `i`.
pub fn bipartite_boxes(n: u64, d: usize, b: Option<u64>) -> Result<Instance, GenError> {
    if d < 3 {
        return Err(GenError::Param("d must be at least 3".into()));
    }
    let pb = points_boxes(n, d - 1, b)?;
    let range = pb.boxes.len() as i64;
    let lift = |lo: &[i64], hi: &[i64], a: i64, c: i64| {
        let (mut lo, mut hi) = (lo.to_vec(), hi.to_vec());
        lo.push(a);
        hi.push(c);
        GeomObject::axis_box(&lo, &hi)
    };
    let mut objs: Vec<GeomObject> = pb.net.points.iter().map(|p| lift(p, p, -range, 2 * range)).collect();
    objs.extend(pb.boxes.iter().enumerate().map(|(i, (lo, hi))| lift(lo, hi, i as i64, i as i64)));
    let mut spec = GenSpec::new("bipartite_boxes");
    spec.n = Some(n);
    spec.d = Some(d as u64);
    spec.b = Some(pb.net.b);
    let spec = spec.note("incidences", pb.incidences.len() as u64).note("height_range", range);
    Ok(Instance::geometric(&format!("bipartite-boxes-n{n}-d{d}"), d, objs)
        .with_labels(labelled(pb.net.points.len(), pb.boxes.len()))
        .with_ground_truth(cross(&pb.incidences, n as u32))
        .with_spec(spec))
}

/// Red cube of the point `x`: `[-x_i, -x_i + m] x [x_i, x_i + m]` per axis.
pub fn red_cube(x: &[i64], m: i64) -> (Vec<i64>, Vec<i64>) {
    x.iter().flat_map(|&xi| [(-xi, -xi + m), (xi, xi + m)]).unzip()
}

/// Blue cube of the box `[a, b]`: `[-a_i - m, -a_i] x [b_i - m, b_i]` per axis.
/// It meets the red cube of `x` iff `a <= x <= b`, as long as `m` exceeds
/// the coordinate range.
pub fn blue_cube(a: &[i64], b: &[i64], m: i64) -> (Vec<i64>, Vec<i64>) {
    a.iter().zip(b).flat_map(|(&ai, &bi)| [(-ai - m, -ai), (bi - m, bi)]).unzip()
}

/// Congruent cubes of side `m` in `R^d` lifted from the `d/2`-dimensional
/// family. Odd `d` adds a shared axis `[0, m]`.
pub fn redblue_hypercubes(n: u64, d: usize, m: Option<i64>, b: Option<u64>) -> Result<Instance, GenError> {
    if d < 2 {
        return Err(GenError::Param("d must be at least 2".into()));
    }
    let pb = points_boxes(n, d / 2, b)?;
    let range = n as i64;
    let m = m.unwrap_or(2 * range);
    if m <= range {
        return Err(GenError::Bound(format!("side length {m} must exceed the coordinate range {range}")));
    }
    let cube = |(mut lo, mut hi): (Vec<i64>, Vec<i64>)| {
        if d % 2 == 1 {
            lo.push(0);
            hi.push(m);
        }
        GeomObject::axis_box(&lo, &hi)
    };
    let mut objs: Vec<GeomObject> = pb.net.points.iter().map(|x| cube(red_cube(x, m))).collect();
    objs.extend(pb.boxes.iter().map(|(a, c)| cube(blue_cube(a, c, m))));
    let mut spec = GenSpec::new("redblue_hypercubes");
    spec.n = Some(n);
    spec.d = Some(d as u64);
    spec.b = Some(pb.net.b);
    spec.m = Some(m.to_string());
    let spec = spec.note("incidences", pb.incidences.len() as u64).note("coordinate_range", range);
    Ok(Instance::geometric(&format!("redblue-hypercubes-n{n}-d{d}"), d, objs)
        .with_labels(labelled(pb.net.points.len(), pb.boxes.len()))
        .with_ground_truth(cross(&pb.incidences, n as u32))
        .with_spec(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, find_k22, GraphMode, Restrict};

    /// Straight enumeration of half-open elementary boxes in `[0, n)^d`.
    fn brute_counts(net: &DigitNet, deficit: u32) -> Vec<usize> {
        let mut out = Vec::new();
        for exps in net.shapes(deficit) {
            let cells: Vec<i64> = exps.iter().map(|&e| net.n as i64 / (net.b as i64).pow(e)).collect();
            let total: i64 = cells.iter().product();
            for idx in 0..total {
                let (mut r, mut lo, mut hi) = (idx, Vec::new(), Vec::new());
                for (j, &c) in cells.iter().enumerate() {
                    let side = (net.b as i64).pow(exps[j]);
                    lo.push(r % c * side);
                    hi.push(r % c * side + side);
                    r /= c;
                }
                out.push(net.points.iter().filter(|p| (0..net.d).all(|j| lo[j] <= p[j] && p[j] < hi[j])).count());
            }
        }
        out
    }

    #[test]
    fn bit_reversal_boxes_hold_one_point() {
        let net = DigitNet::new(4, 2, Some(2)).unwrap();
        let ys: Vec<i64> = net.points.iter().map(|p| p[1]).collect();
        assert_eq!(ys, vec![0, 2, 1, 3]);
        let counts = brute_counts(&net, 2);
        assert_eq!(counts.len(), 12);
        assert!(counts.iter().all(|&c| c == 1));
    }

    #[test]
    fn nets_are_balanced() {
        for (n, d, b) in [(256, 2, 2), (81, 2, 3), (125, 3, 5), (27, 3, 3), (49, 3, 7), (125, 4, 5), (64, 2, 4)] {
            let net = DigitNet::new(n, d, Some(b)).unwrap();
            for deficit in [net.levels, net.levels - 1] {
                let counts = brute_counts(&net, deficit);
                assert_eq!(counts.len() as u64, net.box_count(deficit));
                let per = if deficit == net.levels { 1 } else { b as usize };
                assert!(counts.iter().all(|&c| c == per), "n={n} d={d} b={b} deficit={deficit}");
            }
        }
        assert!(DigitNet::new(64, 3, Some(4)).is_err());
        assert!(DigitNet::new(8, 4, Some(2)).is_err());
    }

    #[test]
    fn default_bases() {
        assert_eq!(default_base(4, 2), Some(2));
        assert_eq!(default_base(256, 2), Some(4));
        assert_eq!(default_base(1 << 12, 2), Some(8));
        assert_eq!(default_base(125, 3), Some(5));
        assert_eq!(default_base(1 << 12, 3), Some(2));
        assert_eq!(default_base(12, 2), None);
    }

    #[test]
    fn incidence_graphs_are_k22_free() {
        for inst in [
            chazelle_points_boxes(256, 2, None).unwrap(),
            chazelle_points_boxes(125, 3, None).unwrap(),
            bipartite_boxes(256, 3, None).unwrap(),
            redblue_hypercubes(64, 4, None, None).unwrap(),
            redblue_hypercubes(64, 5, None, None).unwrap(),
        ] {
            let g = build_graph(&inst, GraphMode::BipartiteOnly).unwrap();
            let want = inst.gen_spec.as_ref().unwrap().notes["incidences"].as_u64().unwrap();
            assert_eq!(g.edge_count() as u64, want, "{}", inst.name);
            assert_eq!(find_k22(&g, Restrict::BipartiteEdges), None, "{}", inst.name);
        }
        let g = build_graph(&bipartite_boxes(64, 3, None).unwrap(), GraphMode::Full).unwrap();
        assert!(g.bipartite_strict());
    }

    #[test]
    fn cube_pairs() {
        let overlap = |x: i64, a: i64, b: i64| {
            let (rl, rh) = red_cube(&[x], 100);
            let (bl, bh) = blue_cube(&[a], &[b], 100);
            (0..2).all(|k| rl[k].max(bl[k]) <= rh[k].min(bh[k]))
        };
        assert_eq!((red_cube(&[3], 100), blue_cube(&[2], &[5], 100)), ((vec![-3, 3], vec![97, 103]), (vec![-102, -95], vec![-2, 5])));
        assert!(overlap(3, 2, 5));
        assert!(!overlap(6, 2, 5));
        assert!(redblue_hypercubes(16, 2, Some(16), None).is_err());
    }
}
