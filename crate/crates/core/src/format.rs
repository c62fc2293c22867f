//! JSON file formats.
//!
//! Each `*Doc` type mirrors one file shape. `to_*` converts a document into a
//! validated value and `from_*` produces the canonical document for a value:
//! posets list only their covering pairs, rationals are reduced, and keyed
//! tables are sorted by key.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dual::{DualError, ValuedMap};
use crate::metric::{FinMetric, MetricError};
use crate::poscomp::{Cone, DiagramError, FinDiagram, SetCocone};
use crate::poset::{FinPoset, MapError, MonoMap, PosetError};
use crate::quantale::Rat01;
use crate::seq::{Seq01, SeqError, Tail};
use crate::vietoris::{Coalgebra, VietorisError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Vietoris(#[from] VietorisError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("{0:?} is listed twice")]
    Duplicate(String),
    #[error("missing entry for {0:?}")]
    Missing(String),
    #[error("distance {0:?} is not given and is off the diagonal")]
    MissingDistance(String),
    #[error("malformed distance key {0:?}, expected \"x|y\"")]
    BadDistanceKey(String),
    #[error("document does not match any known format")]
    UnknownFormat,
}

fn lookup(x: &FinPoset, name: &str) -> Result<usize, FormatError> {
    x.index_of(name)
        .map_err(|_| FormatError::UnknownElement(name.to_string()))
}

fn subset_of(x: &FinPoset, names: &[String]) -> Result<FixedBitSet, FormatError> {
    let mut s = x.empty_set();
    for n in names {
        let i = lookup(x, n)?;
        if s.put(i) {
            return Err(FormatError::Duplicate(n.clone()));
        }
    }
    Ok(s)
}

fn names_of(x: &FinPoset, s: &FixedBitSet) -> Vec<String> {
    s.ones().map(|i| x.name(i).to_string()).collect()
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetDoc {
    pub fn to_poset(&self) -> Result<FinPoset, FormatError> {
        Ok(FinPoset::new(&self.elements, &self.leq)?)
    }

    pub fn from_poset(x: &FinPoset) -> Self {
        PosetDoc {
            elements: x.names().to_vec(),
            leq: x
                .covers()
                .into_iter()
                .map(|(a, b)| (x.name(a).to_string(), x.name(b).to_string()))
                .collect(),
        }
    }
}

fn table_of(
    domain: &FinPoset,
    codomain: &FinPoset,
    map: &BTreeMap<String, String>,
) -> Result<Vec<usize>, FormatError> {
    for k in map.keys() {
        lookup(domain, k)?;
    }
    domain
        .names()
        .iter()
        .map(|n| {
            let v = map.get(n).ok_or_else(|| FormatError::Missing(n.clone()))?;
            lookup(codomain, v)
        })
        .collect()
}

fn map_entries(f: &MonoMap) -> BTreeMap<String, String> {
    (0..f.domain().len())
        .map(|x| {
            (
                f.domain().name(x).to_string(),
                f.codomain().name(f.apply(x)).to_string(),
            )
        })
        .collect()
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub domain: PosetDoc,
    pub codomain: PosetDoc,
    pub map: BTreeMap<String, String>,
}

impl MapDoc {
    pub fn to_map(&self) -> Result<MonoMap, FormatError> {
        let d = self.domain.to_poset()?;
        let c = self.codomain.to_poset()?;
        let table = table_of(&d, &c, &self.map)?;
        Ok(MonoMap::new(&d, &c, table)?)
    }

    pub fn from_map(f: &MonoMap) -> Self {
        MapDoc {
            domain: PosetDoc::from_poset(f.domain()),
            codomain: PosetDoc::from_poset(f.codomain()),
            map: map_entries(f),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub source: String,
    pub target: String,
    pub map: BTreeMap<String, String>,
}

/// Objects and arrows keyed by name; objects are indexed in key order.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub objects: BTreeMap<String, PosetDoc>,
    #[serde(default)]
    pub arrows: BTreeMap<String, ArrowDoc>,
}

impl DiagramDoc {
    pub fn to_diagram(&self) -> Result<FinDiagram, FormatError> {
        let mut objects = Vec::new();
        for (name, p) in &self.objects {
            objects.push((name.clone(), p.to_poset()?));
        }
        let find = |name: &str| {
            objects
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, p)| p.clone())
                .ok_or_else(|| FormatError::Diagram(DiagramError::UnknownObject(name.to_string())))
        };
        let mut arrows = Vec::new();
        for (label, a) in &self.arrows {
            let (s, t) = (find(&a.source)?, find(&a.target)?);
            let table = table_of(&s, &t, &a.map)?;
            arrows.push((
                label.clone(),
                a.source.clone(),
                a.target.clone(),
                MonoMap::new(&s, &t, table)?,
            ));
        }
        Ok(FinDiagram::new(objects, arrows)?)
    }

    pub fn from_diagram(d: &FinDiagram) -> Self {
        DiagramDoc {
            objects: (0..d.len())
                .map(|i| (d.objects()[i].clone(), PosetDoc::from_poset(d.poset(i))))
                .collect(),
            arrows: d
                .arrows()
                .iter()
                .map(|a| {
                    let doc = ArrowDoc {
                        source: d.objects()[a.source].clone(),
                        target: d.objects()[a.target].clone(),
                        map: map_entries(&a.map),
                    };
                    (a.label.clone(), doc)
                })
                .collect(),
        }
    }
}

/// A diagram together with a candidate limit cone.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    pub diagram: DiagramDoc,
    pub apex: PosetDoc,
    pub legs: BTreeMap<String, BTreeMap<String, String>>,
}

impl ConeDoc {
    pub fn to_cone(&self) -> Result<(FinDiagram, Cone), FormatError> {
        let d = self.diagram.to_diagram()?;
        let apex = self.apex.to_poset()?;
        let legs = leg_tables(&d, &self.legs, |i| {
            let t = table_of(&apex, d.poset(i), &self.legs[&d.objects()[i]])?;
            Ok(MonoMap::new(&apex, d.poset(i), t)?)
        })?;
        Ok((d, Cone::new(&apex, legs)?))
    }

    pub fn from_cone(d: &FinDiagram, c: &Cone) -> Self {
        ConeDoc {
            diagram: DiagramDoc::from_diagram(d),
            apex: PosetDoc::from_poset(c.apex()),
            legs: d
                .objects()
                .iter()
                .cloned()
                .zip(c.legs().iter().map(map_entries))
                .collect(),
        }
    }
}

fn leg_tables<T>(
    d: &FinDiagram,
    legs: &BTreeMap<String, BTreeMap<String, String>>,
    mut build: impl FnMut(usize) -> Result<T, FormatError>,
) -> Result<Vec<T>, FormatError> {
    for k in legs.keys() {
        if !d.objects().contains(k) {
            return Err(FormatError::Diagram(DiagramError::UnknownObject(k.clone())));
        }
    }
    (0..d.len())
        .map(|i| {
            if !legs.contains_key(&d.objects()[i]) {
                return Err(FormatError::Missing(d.objects()[i].clone()));
            }
            build(i)
        })
        .collect()
}

/// A diagram together with a candidate colimit cocone in sets.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CoconeDoc {
    pub diagram: DiagramDoc,
    pub apex: Vec<String>,
    pub legs: BTreeMap<String, BTreeMap<String, String>>,
}

impl CoconeDoc {
    pub fn to_cocone(&self) -> Result<(FinDiagram, SetCocone), FormatError> {
        let d = self.diagram.to_diagram()?;
        let apex = FinPoset::new::<&String>(&self.apex.iter().collect::<Vec<_>>(), &[])?;
        let legs = leg_tables(&d, &self.legs, |i| {
            table_of(d.poset(i), &apex, &self.legs[&d.objects()[i]])
        })?;
        Ok((
            d,
            SetCocone {
                apex_size: apex.len(),
                legs,
            },
        ))
    }

    pub fn from_cocone(d: &FinDiagram, c: &SetCocone, apex_names: &[String]) -> Self {
        let legs = (0..d.len())
            .map(|i| {
                let entries = c.legs[i]
                    .iter()
                    .enumerate()
                    .map(|(x, &v)| (d.poset(i).name(x).to_string(), apex_names[v].clone()))
                    .collect();
                (d.objects()[i].clone(), entries)
            })
            .collect();
        CoconeDoc {
            diagram: DiagramDoc::from_diagram(d),
            apex: apex_names.to_vec(),
            legs,
        }
    }
}

/// `alpha` gives a generating set for each successor set.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraDoc {
    pub poset: PosetDoc,
    pub alpha: BTreeMap<String, Vec<String>>,
}

impl CoalgebraDoc {
    pub fn to_coalgebra(&self) -> Result<Coalgebra, FormatError> {
        let x = self.poset.to_poset()?;
        for k in self.alpha.keys() {
            lookup(&x, k)?;
        }
        let gens = x
            .names()
            .iter()
            .map(|n| {
                let g = self
                    .alpha
                    .get(n)
                    .ok_or_else(|| FormatError::Missing(n.clone()))?;
                g.iter()
                    .map(|m| lookup(&x, m))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Coalgebra::from_generators(&x, &gens)?)
    }

    pub fn from_coalgebra(c: &Coalgebra) -> Self {
        let x = c.space();
        CoalgebraDoc {
            poset: PosetDoc::from_poset(x),
            alpha: (0..x.len())
                .map(|i| {
                    let gens = c.successors(i).generators(x);
                    (
                        x.name(i).to_string(),
                        gens.iter().map(|&g| x.name(g).to_string()).collect(),
                    )
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ValuedMapDoc {
    pub poset: PosetDoc,
    pub values: BTreeMap<String, Rat01>,
}

fn values_on(x: &FinPoset, values: &BTreeMap<String, Rat01>) -> Result<ValuedMap, FormatError> {
    for k in values.keys() {
        lookup(x, k)?;
    }
    let vals = x
        .names()
        .iter()
        .map(|n| {
            values
                .get(n)
                .cloned()
                .ok_or_else(|| FormatError::Missing(n.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ValuedMap::new(x, vals)?)
}

fn value_entries(m: &ValuedMap) -> BTreeMap<String, Rat01> {
    m.space()
        .names()
        .iter()
        .cloned()
        .zip(m.values().iter().cloned())
        .collect()
}

impl ValuedMapDoc {
    pub fn to_valued(&self) -> Result<ValuedMap, FormatError> {
        values_on(&self.poset.to_poset()?, &self.values)
    }

    pub fn from_valued(m: &ValuedMap) -> Self {
        ValuedMapDoc {
            poset: PosetDoc::from_poset(m.space()),
            values: value_entries(m),
        }
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// `ascent: true` marks the tail `ℓ − 2^{1−n}` with limit `tail`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SeqDoc {
    pub prefix: Vec<Rat01>,
    pub tail: Rat01,
    #[serde(default, skip_serializing_if = "is_false")]
    pub ascent: bool,
}

impl SeqDoc {
    pub fn to_seq(&self) -> Result<Seq01, FormatError> {
        if self.ascent {
            Ok(Seq01::with_ascent(self.prefix.clone(), self.tail.clone())?)
        } else {
            Ok(Seq01::new(self.prefix.clone(), self.tail.clone()))
        }
    }

    pub fn from_seq(s: &Seq01) -> Self {
        let (tail, ascent) = match s.tail() {
            Tail::Constant(t) => (t.clone(), false),
            Tail::Ascent(l) => (l.clone(), true),
        };
        SeqDoc {
            prefix: s.prefix().to_vec(),
            tail,
            ascent,
        }
    }
}

/// Distances keyed `"x|y"`; only diagonal entries may be left out.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MetricDoc {
    pub elements: Vec<String>,
    pub dist: BTreeMap<String, Rat01>,
}

impl MetricDoc {
    pub fn to_metric(&self) -> Result<FinMetric, FormatError> {
        let names = &self.elements;
        let n = names.len();
        let pos = |s: &str| {
            names
                .iter()
                .position(|m| m == s)
                .ok_or_else(|| FormatError::UnknownElement(s.to_string()))
        };
        let mut dist: Vec<Option<Rat01>> = vec![None; n * n];
        for (key, v) in &self.dist {
            let (a, b) = key
                .split_once('|')
                .ok_or_else(|| FormatError::BadDistanceKey(key.clone()))?;
            let (i, j) = (pos(a)?, pos(b)?);
            if dist[i * n + j].replace(v.clone()).is_some() {
                return Err(FormatError::Duplicate(key.clone()));
            }
        }
        let dist = dist
            .into_iter()
            .enumerate()
            .map(|(k, v)| match v {
                Some(v) => Ok(v),
                None if k / n == k % n => Ok(Rat01::zero()),
                None => Err(FormatError::MissingDistance(format!(
                    "{}|{}",
                    names[k / n],
                    names[k % n]
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FinMetric::new(names.clone(), dist)?)
    }

    pub fn from_metric(m: &FinMetric) -> Self {
        let mut dist = BTreeMap::new();
        for i in 0..m.len() {
            for j in 0..m.len() {
                if i != j {
                    dist.insert(
                        format!("{}|{}", m.names()[i], m.names()[j]),
                        m.d(i, j).clone(),
                    );
                }
            }
        }
        MetricDoc {
            elements: m.names().to_vec(),
            dist,
        }
    }
}

/// A metric and a subset of its points.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MetricSubsetDoc {
    pub metric: MetricDoc,
    pub subset: Vec<String>,
}

impl MetricSubsetDoc {
    pub fn to_parts(&self) -> Result<(FinMetric, FixedBitSet), FormatError> {
        let m = self.metric.to_metric()?;
        let mut s = FixedBitSet::with_capacity(m.len());
        for n in &self.subset {
            let i = m
                .names()
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| FormatError::UnknownElement(n.clone()))?;
            s.insert(i);
        }
        Ok((m, s))
    }
}

/// A partial assignment of values to some elements of a poset.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PartialMapDoc {
    pub poset: PosetDoc,
    pub partial: BTreeMap<String, Rat01>,
}

impl PartialMapDoc {
    pub fn to_parts(&self) -> Result<(FinPoset, BTreeMap<usize, Rat01>), FormatError> {
        let x = self.poset.to_poset()?;
        let partial = self
            .partial
            .iter()
            .map(|(k, v)| Ok((lookup(&x, k)?, v.clone())))
            .collect::<Result<_, FormatError>>()?;
        Ok((x, partial))
    }
}

/// Input of the separation construction.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SeparationDoc {
    pub poset: PosetDoc,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub u: Vec<Rat01>,
}

pub struct Separation {
    pub space: FinPoset,
    pub a: FixedBitSet,
    pub b: FixedBitSet,
    pub u: Vec<Rat01>,
}

impl SeparationDoc {
    pub fn to_parts(&self) -> Result<Separation, FormatError> {
        let space = self.poset.to_poset()?;
        Ok(Separation {
            a: subset_of(&space, &self.a)?,
            b: subset_of(&space, &self.b)?,
            u: self.u.clone(),
            space,
        })
    }
}

/// A poset with a distinguished subset.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SubsetDoc {
    pub poset: PosetDoc,
    pub subset: Vec<String>,
}

impl SubsetDoc {
    pub fn to_parts(&self) -> Result<(FinPoset, FixedBitSet), FormatError> {
        let x = self.poset.to_poset()?;
        let s = subset_of(&x, &self.subset)?;
        Ok((x, s))
    }

    pub fn from_parts(x: &FinPoset, s: &FixedBitSet) -> Self {
        SubsetDoc {
            poset: PosetDoc::from_poset(x),
            subset: names_of(x, s),
        }
    }
}

/// Generators and targets for the density search. Without generators the
/// indicators of all upper sets are used.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DensityDoc {
    pub poset: PosetDoc,
    #[serde(default)]
    pub generators: Option<Vec<BTreeMap<String, Rat01>>>,
    pub targets: Vec<BTreeMap<String, Rat01>>,
}

pub struct DensityInput {
    pub space: FinPoset,
    pub generators: Option<Vec<ValuedMap>>,
    pub targets: Vec<ValuedMap>,
}

impl DensityDoc {
    pub fn to_parts(&self) -> Result<DensityInput, FormatError> {
        let space = self.poset.to_poset()?;
        let generators = match &self.generators {
            Some(g) => Some(
                g.iter()
                    .map(|v| values_on(&space, v))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        let targets = self
            .targets
            .iter()
            .map(|v| values_on(&space, v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DensityInput {
            space,
            generators,
            targets,
        })
    }
}

/// A monotone map together with coalgebras on its domain and codomain.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub map: BTreeMap<String, String>,
    pub source: CoalgebraDoc,
    pub target: CoalgebraDoc,
}

impl HomDoc {
    pub fn to_parts(&self) -> Result<(MonoMap, Coalgebra, Coalgebra), FormatError> {
        let c1 = self.source.to_coalgebra()?;
        let c2 = self.target.to_coalgebra()?;
        let table = table_of(c1.space(), c2.space(), &self.map)?;
        let f = MonoMap::new(c1.space(), c2.space(), table)?;
        Ok((f, c1, c2))
    }
}

/// A pair of parallel maps.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ParallelDoc {
    pub f: MapDoc,
    pub g: MapDoc,
}

/// Samples `ψₙ` of a target value, for the `𝒞`-approximant construction.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ApproximantDoc {
    pub samples: Vec<Rat01>,
    pub target: Rat01,
}

/// Any of the value formats, recognised by shape.
#[derive(Clone, Debug)]
pub enum Document {
    Poset(FinPoset),
    Map(MonoMap),
    Diagram(FinDiagram),
    Coalgebra(Coalgebra),
    ValuedMap(ValuedMap),
    Sequence(Seq01),
    Metric(FinMetric),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyDoc {
    Metric(MetricDoc),
    Poset(PosetDoc),
    Map(MapDoc),
    Diagram(DiagramDoc),
    Coalgebra(CoalgebraDoc),
    ValuedMap(ValuedMapDoc),
    Sequence(SeqDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Poset(_) => "poset",
            Document::Map(_) => "map",
            Document::Diagram(_) => "diagram",
            Document::Coalgebra(_) => "coalgebra",
            Document::ValuedMap(_) => "valued-map",
            Document::Sequence(_) => "sequence",
            Document::Metric(_) => "metric",
        }
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let doc: AnyDoc = serde_json::from_value(value).map_err(|_| FormatError::UnknownFormat)?;
        Ok(match doc {
            AnyDoc::Metric(d) => Document::Metric(d.to_metric()?),
            AnyDoc::Poset(d) => Document::Poset(d.to_poset()?),
            AnyDoc::Map(d) => Document::Map(d.to_map()?),
            AnyDoc::Diagram(d) => Document::Diagram(d.to_diagram()?),
            AnyDoc::Coalgebra(d) => Document::Coalgebra(d.to_coalgebra()?),
            AnyDoc::ValuedMap(d) => Document::ValuedMap(d.to_valued()?),
            AnyDoc::Sequence(d) => Document::Sequence(d.to_seq()?),
        })
    }

    /// The canonical document as a JSON value.
    pub fn to_value(&self) -> serde_json::Value {
        let v = match self {
            Document::Poset(x) => serde_json::to_value(PosetDoc::from_poset(x)),
            Document::Map(f) => serde_json::to_value(MapDoc::from_map(f)),
            Document::Diagram(d) => serde_json::to_value(DiagramDoc::from_diagram(d)),
            Document::Coalgebra(c) => serde_json::to_value(CoalgebraDoc::from_coalgebra(c)),
            Document::ValuedMap(m) => serde_json::to_value(ValuedMapDoc::from_valued(m)),
            Document::Sequence(s) => serde_json::to_value(SeqDoc::from_seq(s)),
            Document::Metric(m) => serde_json::to_value(MetricDoc::from_metric(m)),
        };
        v.expect("documents serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("documents serialize")
    }

    /// Equality of the underlying values. Diagrams are compared through
    /// their canonical documents.
    pub fn same_value(&self, other: &Document) -> bool {
        match (self, other) {
            (Document::Poset(a), Document::Poset(b)) => a == b,
            (Document::Map(a), Document::Map(b)) => a == b,
            (Document::Coalgebra(a), Document::Coalgebra(b)) => a == b,
            (Document::ValuedMap(a), Document::ValuedMap(b)) => a == b,
            (Document::Sequence(a), Document::Sequence(b)) => a == b,
            (Document::Metric(a), Document::Metric(b)) => a == b,
            (Document::Diagram(_), Document::Diagram(_)) => self.to_value() == other.to_value(),
            _ => false,
        }
    }
}

/// Parse, serialize and parse again; true when both parses agree.
pub fn roundtrip(text: &str) -> Result<bool, FormatError> {
    let first = Document::from_json(text)?;
    let second = Document::from_json(&first.to_json())?;
    Ok(first.same_value(&second))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_closure_on_load() {
        let d = Document::from_json(r#"{"elements":["a","b","c"],"leq":[["a","b"],["b","c"]]}"#)
            .unwrap();
        let Document::Poset(x) = &d else { panic!() };
        assert!(x.le(0, 2));
        assert!(roundtrip(&d.to_json()).unwrap());
    }

    #[test]
    fn unreduced_rational_is_canonicalised() {
        let text = r#"{"prefix":["2/4"],"tail":"1"}"#;
        assert!(roundtrip(text).unwrap());
        let d = Document::from_json(text).unwrap();
        assert_eq!(d.to_value()["prefix"][0], "1/2");
    }

    #[test]
    fn out_of_range_rational_is_rejected() {
        assert!(Document::from_json(r#"{"prefix":[],"tail":"3/2"}"#).is_err());
    }

    #[test]
    fn metric_diagonal_defaults() {
        let ok = r#"{"elements":["a","b"],"dist":{"a|b":"0","b|a":"1"}}"#;
        assert!(matches!(
            Document::from_json(ok).unwrap(),
            Document::Metric(_)
        ));
        let missing = r#"{"elements":["a","b"],"dist":{"a|b":"0"}}"#;
        assert!(matches!(
            Document::from_json(missing),
            Err(FormatError::MissingDistance(_))
        ));
    }

    #[test]
    fn cyclic_poset_is_rejected() {
        let err = Document::from_json(r#"{"elements":["a","b"],"leq":[["a","b"],["b","a"]]}"#)
            .unwrap_err();
        assert!(matches!(err, FormatError::Poset(PosetError::Cycle(..))));
    }

    #[test]
    fn unknown_shape() {
        assert!(matches!(
            Document::from_json(r#"{"foo":1}"#),
            Err(FormatError::UnknownFormat)
        ));
    }
}
