//! Instance families: incidence lower-bound constructions, the projective
//! plane, and random benchmark workloads.

mod chazelle;
mod incidence;
mod projective;
mod random;

use thiserror::Error;

use crate::instance::{GenSpec, Instance};

pub use chazelle::{
    bipartite_boxes, blue_cube, chazelle_points_boxes, default_base, points_boxes, red_cube, redblue_hypercubes, DigitNet,
    Elementary, PointsBoxes,
};
pub use incidence::{
    congruent_balls_r5, erdos_incidence, halfspace_lift_r5, thin_tetrahedra, touching_length_bound, touching_tetrahedra,
    SlabGrid,
};
pub use projective::{projective_plane, shatters_some};
pub use random::{random_balls, random_boxes, random_split_graph, unit_ball_volume, USide, GRID};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("bad parameters: {0}")]
    Param(String),
    #[error("size bound not met: {0}")]
    Bound(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

/// Family names accepted by [`generate`], with the parameters each reads.
pub const FAMILIES: &[(&str, &str)] = &[
    ("erdos", "k"),
    ("thin_tetrahedra", "k"),
    ("touching_tetrahedra", "k [m]"),
    ("halfspace_lift_r5", "k"),
    ("congruent_balls_r5", "k [m]"),
    ("chazelle", "n d [b]"),
    ("bipartite_boxes", "n d [b]"),
    ("redblue_hypercubes", "n d [m] [b]"),
    ("projective_plane", "k (= q)"),
    ("random_balls", "n d [density] [aspect] [seed]"),
    ("random_boxes", "n d [density] [aspect] [seed]"),
    ("random_bipartite", "n [k = |U|] [p] [seed]"),
    ("random_lopsided", "n [k = |U|] [p] [seed]"),
    ("random_clique_side", "n [k = |U|] [p] [seed]"),
];

fn need(v: Option<u64>, name: &str, family: &str) -> Result<u64, GenError> {
    v.ok_or_else(|| GenError::Param(format!("{family} needs --{name}")))
}

fn parse_m<T: std::str::FromStr>(m: &Option<String>) -> Result<Option<T>, GenError> {
    m.as_deref().map(|s| s.parse().map_err(|_| GenError::Param(format!("bad scale {s:?}")))).transpose()
}

pub fn generate(spec: &GenSpec) -> Result<Instance, GenError> {
    let f = spec.family.as_str();
    let k = || need(spec.k, "k", f);
    let n = || need(spec.n, "n", f);
    let d = || need(spec.d, "d", f).map(|d| d as usize);
    let seed = spec.seed.unwrap_or(0);
    let split = |side| {
        let n = n()?;
        random_split_graph(n, spec.k.unwrap_or(n / 2), spec.p.unwrap_or(0.5), side, seed)
    };
    match f {
        "erdos" => erdos_incidence(k()?),
        "thin_tetrahedra" => thin_tetrahedra(k()?),
        "touching_tetrahedra" => touching_tetrahedra(k()?, parse_m(&spec.m)?),
        "halfspace_lift_r5" => halfspace_lift_r5(k()?),
        "congruent_balls_r5" => congruent_balls_r5(k()?, parse_m(&spec.m)?),
        "chazelle" => chazelle_points_boxes(n()?, d()?, spec.b),
        "bipartite_boxes" => bipartite_boxes(n()?, d()?, spec.b),
        "redblue_hypercubes" => redblue_hypercubes(n()?, d()?, parse_m(&spec.m)?, spec.b),
        "projective_plane" => projective_plane(k()?),
        "random_balls" => random_balls(n()?, d()?, spec.density.unwrap_or(1.0), spec.aspect.unwrap_or(1.0), seed),
        "random_boxes" => random_boxes(n()?, d()?, spec.density.unwrap_or(1.0), spec.aspect.unwrap_or(1.0), seed),
        "random_bipartite" => split(USide::Independent),
        "random_lopsided" => split(USide::Random),
        "random_clique_side" => split(USide::Clique),
        _ => Err(GenError::UnknownFamily(f.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_dispatch() {
        let mut s = GenSpec::new("erdos");
        s.k = Some(2);
        let inst = generate(&s).unwrap();
        assert_eq!(inst.ground_truth_edges.as_ref().unwrap().len(), 16);
        assert!(matches!(generate(&GenSpec::new("erdos")), Err(GenError::Param(_))));
        assert!(matches!(generate(&GenSpec::new("nope")), Err(GenError::UnknownFamily(_))));
        for (f, _) in FAMILIES {
            let mut s = GenSpec::new(f);
            s.k = Some(2);
            s.n = Some(if f.starts_with("random") { 20 } else { 16 });
            s.d = Some(if *f == "chazelle" { 2 } else { 4 });
            let inst = generate(&s).unwrap_or_else(|e| panic!("{f}: {e}"));
            inst.validate().unwrap();
            assert_eq!(inst.gen_spec.as_ref().unwrap().family, *f);
        }
    }
}
