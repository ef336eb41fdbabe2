//! Point-line incidence graph of the projective plane over `F_q`.

use super::chazelle::is_prime;
use super::GenError;
use crate::instance::{GenSpec, Instance, Label};

/// Representatives of the 1-dimensional subspaces of `F_q^3`: the first
/// non-zero coordinate is 1.
fn normalized(q: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            out.push([1, a, b]);
        }
    }
    for a in 0..q {
        out.push([0, 1, a]);
    }
    out.push([0, 0, 1]);
    out
}

/// Points are vertices `0..N`, lines `N..2N`; a point lies on a line when
/// their dot product vanishes mod `q`.
pub fn projective_plane(q: u64) -> Result<Instance, GenError> {
    if !is_prime(q) {
        return Err(GenError::Param(format!("q = {q} is not prime")));
    }
    if q > 101 {
        return Err(GenError::Param(format!("q = {q} is too large")));
    }
    let vs = normalized(q);
    let n = vs.len();
    let mut edges = Vec::with_capacity(n * (q as usize + 1));
    for (i, p) in vs.iter().enumerate() {
        for (j, l) in vs.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                edges.push((i as u32, (n + j) as u32));
            }
        }
    }
    let mut labels = vec![Label::U; n];
    labels.resize(2 * n, Label::V);
    let mut spec = GenSpec::new("projective_plane");
    spec.k = Some(q);
    let spec = spec.note("incidences", edges.len() as u64);
    Ok(Instance::abstract_graph(&format!("projective-plane-q{q}"), 2 * n, edges, Some(labels)).with_spec(spec))
}

/// Whether some `k`-subset of `0..ground` is shattered by `sets` (each sorted).
pub fn shatters_some(sets: &[Vec<u32>], ground: u32, k: usize) -> bool {
    fn rec(start: u32, ground: u32, k: usize, pick: &mut Vec<u32>, sets: &[Vec<u32>]) -> bool {
        if pick.len() == k {
            let mut seen = vec![false; 1 << k];
            for s in sets {
                let mask = pick.iter().enumerate().fold(0, |m, (i, x)| m | (usize::from(s.binary_search(x).is_ok()) << i));
                seen[mask] = true;
            }
            return seen.iter().all(|&b| b);
        }
        (start..ground).any(|x| {
            pick.push(x);
            let hit = rec(x + 1, ground, k, pick, sets);
            pick.pop();
            hit
        })
    }
    rec(0, ground, k, &mut Vec::new(), sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, find_k22, GraphMode, Restrict};

    #[test]
    fn small_planes() {
        for (q, verts, edges) in [(2, 14, 21), (3, 26, 52), (5, 62, 186)] {
            let inst = projective_plane(q).unwrap();
            assert_eq!(inst.n, verts);
            let g = build_graph(&inst, GraphMode::Full).unwrap();
            assert_eq!(g.edge_count(), edges);
            assert_eq!(find_k22(&g, Restrict::All), None);
            assert!((0..verts as u32).all(|v| g.degree(v) == q as usize + 1));
        }
        assert!(projective_plane(4).is_err());
        assert!(projective_plane(1).is_err());
    }

    #[test]
    fn vc_dimension_two() {
        for q in [2, 3, 5] {
            let inst = projective_plane(q).unwrap();
            let g = build_graph(&inst, GraphMode::Full).unwrap();
            let n = inst.n as u32 / 2;
            // Lines as subsets of points.
            let sets: Vec<Vec<u32>> = (n..2 * n).map(|l| g.neighbors(l).to_vec()).collect();
            assert!(shatters_some(&sets, n, 2), "q={q}");
            assert!(!shatters_some(&sets, n, 3), "q={q}");
        }
    }
}
