//! Named object collections and their JSON form.
//!
//! Rational coordinates are written as `"p/q"` strings so a round trip is
//! bit-exact; float coordinates are plain JSON numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::geometry::{GeomError, GeomObject, Mode, Shape, FLOAT_EPS};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    U,
    V,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::U => "U",
            Label::V => "V",
        })
    }
}

/// GenSpec note marking instances whose designated graph is bipartite.
pub const INCIDENCE_NOTE: &str = "incidence_graph";

/// Generator parameters recorded alongside an instance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Random families: expected covered volume per unit volume.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    /// Random boxes: largest side ratio; random balls: largest radius ratio.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aspect: Option<f64>,
    /// Random abstract graphs: edge probability.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Derived quantities (length bounds, incidence counts, ...).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, Value>,
}

impl GenSpec {
    pub fn new(family: &str) -> Self {
        GenSpec { family: family.to_string(), ..Default::default() }
    }

    pub fn note(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.notes.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub name: String,
    pub dimension: usize,
    /// Vertex count; equals `objects.len()` unless the instance is abstract.
    pub n: usize,
    pub mode: Mode,
    pub objects: Vec<GeomObject>,
    pub labels: Option<Vec<Label>>,
    /// Designated edge set known analytically: the U x V edges of labelled
    /// instances, or every edge of an abstract instance.
    pub ground_truth_edges: Option<Vec<(u32, u32)>>,
    pub gen_spec: Option<GenSpec>,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("geometry: {0}")]
    Geom(#[from] GeomError),
    #[error("bad coordinate {0:?}")]
    BadNumber(String),
    #[error("{0}")]
    Invalid(String),
}

impl Instance {
    pub fn geometric(name: &str, dimension: usize, objects: Vec<GeomObject>) -> Self {
        let mode = objects.first().map_or(Mode::Rational, GeomObject::mode);
        Instance {
            name: name.to_string(),
            dimension,
            n: objects.len(),
            mode,
            objects,
            labels: None,
            ground_truth_edges: None,
            gen_spec: None,
        }
    }

    /// Graph-only instance (no geometry); edges come from `ground_truth_edges`.
    pub fn abstract_graph(name: &str, n: usize, edges: Vec<(u32, u32)>, labels: Option<Vec<Label>>) -> Self {
        Instance {
            name: name.to_string(),
            dimension: 0,
            n,
            mode: Mode::Rational,
            objects: Vec::new(),
            labels,
            ground_truth_edges: Some(normalize_edges(edges)),
            gen_spec: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn with_ground_truth(mut self, edges: Vec<(u32, u32)>) -> Self {
        self.ground_truth_edges = Some(normalize_edges(edges));
        self
    }

    pub fn with_spec(mut self, spec: GenSpec) -> Self {
        self.gen_spec = Some(spec);
        self
    }

    pub fn is_abstract(&self) -> bool {
        self.objects.is_empty() && self.n > 0
    }

    /// The designated graph is the U x V incidence graph: same-side
    /// intersections (crossing lines, overlapping halfspaces) are ignored.
    pub fn incidence_only(&self) -> bool {
        self.gen_spec.as_ref().is_some_and(|s| s.notes.get(INCIDENCE_NOTE) == Some(&Value::Bool(true)))
    }

    pub fn label(&self, v: usize) -> Option<Label> {
        self.labels.as_ref().map(|l| l[v])
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.as_ref().map_or(0, |l| l.iter().filter(|&&x| x == label).count())
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if !self.objects.is_empty() && self.objects.len() != self.n {
            return Err(InstanceError::Invalid(format!("n = {} but {} objects", self.n, self.objects.len())));
        }
        for o in &self.objects {
            if o.dimension() != self.dimension {
                return Err(GeomError::DimensionMismatch(self.dimension, o.dimension()).into());
            }
            if o.mode() != self.mode {
                return Err(GeomError::MixedModes.into());
            }
        }
        if let Some(l) = &self.labels {
            if l.len() != self.n {
                return Err(InstanceError::Invalid("label count differs from n".into()));
            }
        }
        if let Some(e) = &self.ground_truth_edges {
            if e.iter().any(|&(u, v)| u >= v || v as usize >= self.n) {
                return Err(InstanceError::Invalid("ground-truth edge out of range".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String, InstanceError> {
        let file = InstanceFile::from_instance(self);
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(s: &str) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(s)?;
        let inst = file.into_instance()?;
        inst.validate()?;
        Ok(inst)
    }
}

/// Sorted, deduplicated, oriented `u < v`.
pub fn normalize_edges(mut edges: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.retain(|e| e.0 != e.1);
    edges.sort_unstable();
    edges.dedup();
    edges
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Str(String),
    F(f64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ObjectFile {
    Ball { center: Vec<Num>, radius: Num },
    AxisBox { lo: Vec<Num>, hi: Vec<Num> },
    Simplex { vertices: Vec<Vec<Num>> },
    Halfspace { normal: Vec<Num>, offset: Num },
    Point { coords: Vec<Num> },
    Segment { a: Vec<Num>, b: Vec<Num> },
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    name: String,
    dimension: usize,
    n: usize,
    mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
    objects: Vec<ObjectFile>,
    labels: Option<Vec<Label>>,
    ground_truth_edges: Option<Vec<(u32, u32)>>,
    gen_spec: Option<GenSpec>,
}

trait NumCodec: Sized {
    fn encode(&self) -> Num;
    fn decode(n: &Num) -> Result<Self, InstanceError>;
}

impl NumCodec for Scalar {
    fn encode(&self) -> Num {
        Num::Str(self.to_string())
    }
    fn decode(n: &Num) -> Result<Self, InstanceError> {
        match n {
            Num::Str(s) => Scalar::from_str(s).map_err(|_| InstanceError::BadNumber(s.clone())),
            Num::F(f) => Scalar::from_f64(*f).ok_or_else(|| InstanceError::BadNumber(f.to_string())),
        }
    }
}

impl NumCodec for f64 {
    fn encode(&self) -> Num {
        Num::F(*self)
    }
    fn decode(n: &Num) -> Result<Self, InstanceError> {
        match n {
            Num::F(f) => Ok(*f),
            Num::Str(s) => match Scalar::from_str(s) {
                Ok(q) => Ok(q.to_f64()),
                Err(_) => s.parse().map_err(|_| InstanceError::BadNumber(s.clone())),
            },
        }
    }
}

fn enc_vec<T: NumCodec>(v: &[T]) -> Vec<Num> {
    v.iter().map(NumCodec::encode).collect()
}

fn dec_vec<T: NumCodec>(v: &[Num]) -> Result<Vec<T>, InstanceError> {
    v.iter().map(T::decode).collect()
}

fn encode_shape<T: NumCodec>(s: &Shape<T>) -> ObjectFile {
    match s {
        Shape::Ball { center, radius } => ObjectFile::Ball { center: enc_vec(center), radius: radius.encode() },
        Shape::AxisBox { lo, hi } => ObjectFile::AxisBox { lo: enc_vec(lo), hi: enc_vec(hi) },
        Shape::Simplex { vertices } => ObjectFile::Simplex { vertices: vertices.iter().map(|v| enc_vec(v)).collect() },
        Shape::Halfspace { normal, offset } => ObjectFile::Halfspace { normal: enc_vec(normal), offset: offset.encode() },
        Shape::Point(p) => ObjectFile::Point { coords: enc_vec(p) },
        Shape::Segment { a, b } => ObjectFile::Segment { a: enc_vec(a), b: enc_vec(b) },
    }
}

fn decode_shape<T: NumCodec>(o: &ObjectFile) -> Result<Shape<T>, InstanceError> {
    Ok(match o {
        ObjectFile::Ball { center, radius } => Shape::Ball { center: dec_vec(center)?, radius: T::decode(radius)? },
        ObjectFile::AxisBox { lo, hi } => Shape::AxisBox { lo: dec_vec(lo)?, hi: dec_vec(hi)? },
        ObjectFile::Simplex { vertices } => {
            Shape::Simplex { vertices: vertices.iter().map(|v| dec_vec(v)).collect::<Result<_, _>>()? }
        }
        ObjectFile::Halfspace { normal, offset } => Shape::Halfspace { normal: dec_vec(normal)?, offset: T::decode(offset)? },
        ObjectFile::Point { coords } => Shape::Point(dec_vec(coords)?),
        ObjectFile::Segment { a, b } => Shape::Segment { a: dec_vec(a)?, b: dec_vec(b)? },
    })
}

impl InstanceFile {
    fn from_instance(inst: &Instance) -> Self {
        let (mode, eps) = match inst.mode {
            Mode::Rational => ("rational", None),
            Mode::Float { eps } => ("float", Some(eps)),
        };
        let objects = inst
            .objects
            .iter()
            .map(|o| match o {
                GeomObject::Exact(s) => encode_shape(s),
                GeomObject::Float { shape, .. } => encode_shape(shape),
            })
            .collect();
        InstanceFile {
            name: inst.name.clone(),
            dimension: inst.dimension,
            n: inst.n,
            mode: mode.to_string(),
            eps,
            objects,
            labels: inst.labels.clone(),
            ground_truth_edges: inst.ground_truth_edges.clone(),
            gen_spec: inst.gen_spec.clone(),
        }
    }

    fn into_instance(self) -> Result<Instance, InstanceError> {
        let mode = match self.mode.as_str() {
            "rational" => Mode::Rational,
            "float" => Mode::Float { eps: self.eps.unwrap_or(FLOAT_EPS) },
            other => return Err(InstanceError::Invalid(format!("unknown mode {other:?}"))),
        };
        let objects = self
            .objects
            .iter()
            .map(|o| match mode {
                Mode::Rational => Ok(GeomObject::exact(decode_shape::<Scalar>(o)?)?),
                Mode::Float { eps } => Ok(GeomObject::float(decode_shape::<f64>(o)?, eps)?),
            })
            .collect::<Result<Vec<_>, InstanceError>>()?;
        Ok(Instance {
            name: self.name,
            dimension: self.dimension,
            n: self.n,
            mode,
            objects,
            labels: self.labels,
            ground_truth_edges: self.ground_truth_edges,
            gen_spec: self.gen_spec,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let objs = vec![
            GeomObject::exact(Shape::Ball { center: vec![Scalar::frac(1, 3), Scalar::int(-2)], radius: Scalar::frac(7, 5) })
                .unwrap(),
            GeomObject::axis_box(&[0, 0], &[1, 2]),
            GeomObject::point(&[5, 6]),
        ];
        let inst = Instance::geometric("t", 2, objs)
            .with_labels(vec![Label::U, Label::V, Label::V])
            .with_ground_truth(vec![(1, 0)])
            .with_spec(GenSpec::new("demo").note("bound", 3));
        let s = inst.to_json().unwrap();
        assert!(s.contains("\"1/3\""));
        let back = Instance::from_json(&s).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json().unwrap(), s);
    }

    #[test]
    fn float_round_trip() {
        let o = GeomObject::float(Shape::Point(vec![0.1, 1.0 / 3.0]), FLOAT_EPS).unwrap();
        let inst = Instance::geometric("f", 2, vec![o]);
        let back = Instance::from_json(&inst.to_json().unwrap()).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Instance::from_json("{}").is_err());
        let bad = r#"{"name":"x","dimension":1,"n":1,"mode":"rational","objects":[{"kind":"ball","center":["0"],"radius":"-1"}],"labels":null,"ground_truth_edges":null,"gen_spec":null}"#;
        assert!(matches!(Instance::from_json(bad), Err(InstanceError::Geom(_))));
    }
}
