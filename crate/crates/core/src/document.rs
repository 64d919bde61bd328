//! `.rcx` documents: JSON with sorted keys, no insignificant whitespace and
//! rationals written as `"num/den"` strings.
//!
//! A [`Document`] mirrors the file exactly so that it can be written back
//! byte for byte; [`Document::resolve`] builds the geometric objects.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{Map, Value};
use thiserror::Error;

use crate::cw::{CellComplex, VertexId};
use crate::division::Frame;
use crate::error::Error;
use crate::geometry::{format_rational, parse_rational, GeometryError, Point2, Rational};
use crate::proximity::Entity;
use crate::ribbon::{
    make_ribbon, Filament, FilledCycle, Hole, Ribbon, RibbonComplex, RibbonNerve, RibbonParts, VortexNerve,
};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
    #[error("non-canonical rational `{value}` at {path}")]
    NonCanonicalRational { path: String, value: String },
    #[error("unresolved reference `{name}` at {path}")]
    UnresolvedReference { path: String, name: String },
    #[error("name `{0}` is defined more than once")]
    DuplicateName(String),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonSpec {
    pub outer: String,
    pub inner: String,
    pub filaments: Vec<Filament>,
    pub holes: Vec<Hole>,
    pub allow_concentric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VortexSpec {
    /// Innermost first.
    pub cycles: Vec<String>,
    pub filaments: Vec<Filament>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComplexSpec {
    pub vertices: BTreeMap<String, Point2>,
    pub edges: Vec<[String; 2]>,
    pub triangles: Vec<[String; 3]>,
    pub cycles: BTreeMap<String, Vec<String>>,
    pub ribbons: BTreeMap<String, RibbonSpec>,
    pub ribbon_complexes: BTreeMap<String, Vec<String>>,
    pub ribbon_nerves: BTreeMap<String, Vec<String>>,
    pub vortex_nerves: BTreeMap<String, VortexSpec>,
    /// Named families of convex filled cycles for the nerve-theorem check.
    pub families: BTreeMap<String, Vec<String>>,
    pub frame: Option<(Point2, Point2)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub format_version: u64,
    pub complexes: BTreeMap<String, ComplexSpec>,
    pub probes: Option<Vec<String>>,
    pub threshold: Option<Rational>,
}

impl Default for Document {
    fn default() -> Self {
        Self { format_version: FORMAT_VERSION, complexes: BTreeMap::new(), probes: None, threshold: None }
    }
}

// ---------------------------------------------------------------- reading

struct Node<'a> {
    value: &'a Value,
    path: String,
}

fn violation(path: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::SchemaViolation { path: path.to_string(), message: message.into() }
}

impl<'a> Node<'a> {
    fn root(value: &'a Value) -> Self {
        Self { value, path: "$".into() }
    }

    fn child(&self, value: &'a Value, key: &str) -> Node<'a> {
        Node { value, path: format!("{}.{}", self.path, key) }
    }

    fn object(&self, allowed: &[&str]) -> Result<&'a Map<String, Value>, DocumentError> {
        let map = self.value.as_object().ok_or_else(|| violation(&self.path, "expected an object"))?;
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(violation(&self.path, format!("unknown key `{k}`")));
        }
        Ok(map)
    }

    fn field(&self, map: &'a Map<String, Value>, key: &str) -> Option<Node<'a>> {
        map.get(key).map(|v| self.child(v, key))
    }

    fn required(&self, map: &'a Map<String, Value>, key: &str) -> Result<Node<'a>, DocumentError> {
        self.field(map, key).ok_or_else(|| violation(&self.path, format!("missing key `{key}`")))
    }

    /// Any object, read as name → node in key order.
    fn entries(&self) -> Result<Vec<(String, Node<'a>)>, DocumentError> {
        let map = self.value.as_object().ok_or_else(|| violation(&self.path, "expected an object"))?;
        Ok(map.iter().map(|(k, v)| (k.clone(), self.child(v, k))).collect())
    }

    fn items(&self) -> Result<Vec<Node<'a>>, DocumentError> {
        let arr = self.value.as_array().ok_or_else(|| violation(&self.path, "expected an array"))?;
        Ok(arr.iter().enumerate().map(|(i, v)| Node { value: v, path: format!("{}[{i}]", self.path) }).collect())
    }

    fn string(&self) -> Result<String, DocumentError> {
        self.value.as_str().map(str::to_string).ok_or_else(|| violation(&self.path, "expected a string"))
    }

    fn strings(&self) -> Result<Vec<String>, DocumentError> {
        self.items()?.iter().map(Node::string).collect()
    }

    fn fixed<const N: usize>(&self) -> Result<[String; N], DocumentError> {
        let v = self.strings()?;
        v.try_into().map_err(|_| violation(&self.path, format!("expected {N} vertex ids")))
    }

    fn boolean(&self) -> Result<bool, DocumentError> {
        self.value.as_bool().ok_or_else(|| violation(&self.path, "expected a boolean"))
    }

    fn rational(&self) -> Result<Rational, DocumentError> {
        let text = self.value.as_str().ok_or_else(|| violation(&self.path, "expected a \"num/den\" string"))?;
        parse_rational(text).map_err(|e| match e {
            GeometryError::NonCanonicalRational(v) => {
                DocumentError::NonCanonicalRational { path: self.path.clone(), value: v }
            }
            _ => violation(&self.path, format!("malformed rational `{text}`")),
        })
    }

    fn point(&self) -> Result<Point2, DocumentError> {
        let items = self.items()?;
        match items.as_slice() {
            [x, y] => Ok(Point2::new(x.rational()?, y.rational()?)),
            _ => Err(violation(&self.path, "expected a coordinate pair")),
        }
    }

    fn filaments(&self) -> Result<Vec<Filament>, DocumentError> {
        self.items()?
            .iter()
            .map(|n| {
                let m = n.object(&["inner", "outer"])?;
                Ok(Filament::new(n.required(m, "outer")?.string()?, n.required(m, "inner")?.string()?))
            })
            .collect()
    }
}

fn parse_ribbon(n: &Node) -> Result<RibbonSpec, DocumentError> {
    let m = n.object(&["allow_concentric", "filaments", "holes", "inner", "outer"])?;
    let holes = match n.field(m, "holes") {
        Some(h) => h
            .items()?
            .iter()
            .map(|h| {
                let hm = h.object(&["at", "label"])?;
                Ok(Hole::new(h.required(hm, "label")?.string()?, h.required(hm, "at")?.point()?))
            })
            .collect::<Result<_, DocumentError>>()?,
        None => Vec::new(),
    };
    Ok(RibbonSpec {
        outer: n.required(m, "outer")?.string()?,
        inner: n.required(m, "inner")?.string()?,
        filaments: n.field(m, "filaments").map(|f| f.filaments()).transpose()?.unwrap_or_default(),
        holes,
        allow_concentric: n.field(m, "allow_concentric").map(|b| b.boolean()).transpose()?.unwrap_or(false),
    })
}

fn named_lists(n: Option<Node>) -> Result<BTreeMap<String, Vec<String>>, DocumentError> {
    let Some(n) = n else { return Ok(BTreeMap::new()) };
    n.entries()?.into_iter().map(|(k, v)| Ok((k, v.strings()?))).collect()
}

fn parse_complex(n: &Node) -> Result<ComplexSpec, DocumentError> {
    let m = n.object(&[
        "cycles",
        "edges",
        "families",
        "frame",
        "ribbon_complexes",
        "ribbon_nerves",
        "ribbons",
        "triangles",
        "vertices",
        "vortex_nerves",
    ])?;
    let mut spec = ComplexSpec::default();
    if let Some(v) = n.field(m, "vertices") {
        for (id, p) in v.entries()? {
            spec.vertices.insert(id, p.point()?);
        }
    }
    if let Some(e) = n.field(m, "edges") {
        spec.edges = e.items()?.iter().map(|x| x.fixed::<2>()).collect::<Result<_, _>>()?;
    }
    if let Some(t) = n.field(m, "triangles") {
        spec.triangles = t.items()?.iter().map(|x| x.fixed::<3>()).collect::<Result<_, _>>()?;
    }
    spec.cycles = named_lists(n.field(m, "cycles"))?;
    if let Some(r) = n.field(m, "ribbons") {
        for (name, node) in r.entries()? {
            spec.ribbons.insert(name, parse_ribbon(&node)?);
        }
    }
    spec.ribbon_complexes = named_lists(n.field(m, "ribbon_complexes"))?;
    spec.ribbon_nerves = named_lists(n.field(m, "ribbon_nerves"))?;
    if let Some(v) = n.field(m, "vortex_nerves") {
        for (name, node) in v.entries()? {
            let vm = node.object(&["cycles", "filaments"])?;
            let cycles = node.required(vm, "cycles")?.strings()?;
            let filaments = node.field(vm, "filaments").map(|f| f.filaments()).transpose()?.unwrap_or_default();
            spec.vortex_nerves.insert(name, VortexSpec { cycles, filaments });
        }
    }
    spec.families = named_lists(n.field(m, "families"))?;
    if let Some(f) = n.field(m, "frame") {
        let corners = f.items()?;
        let [lo, hi] = corners.as_slice() else {
            return Err(violation(&f.path, "expected [min, max] corners"));
        };
        spec.frame = Some((lo.point()?, hi.point()?));
    }
    Ok(spec)
}

pub fn parse_document(text: &str) -> Result<Document, DocumentError> {
    let value: Value = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
    let root = Node::root(&value);
    let m = root.object(&["complexes", "format_version", "probes", "threshold"])?;
    let version_node = root.required(m, "format_version")?;
    let version = version_node.value.as_u64().ok_or_else(|| violation(&version_node.path, "expected an integer"))?;
    if version != FORMAT_VERSION {
        return Err(DocumentError::UnsupportedVersion(version));
    }
    let mut complexes = BTreeMap::new();
    if let Some(c) = root.field(m, "complexes") {
        for (name, node) in c.entries()? {
            complexes.insert(name, parse_complex(&node)?);
        }
    }
    Ok(Document {
        format_version: version,
        complexes,
        probes: root.field(m, "probes").map(|p| p.strings()).transpose()?,
        threshold: root.field(m, "threshold").map(|t| t.rational()).transpose()?,
    })
}

// ---------------------------------------------------------------- writing

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn point(p: &Point2) -> Value {
    Value::Array(vec![rat(&p.x), rat(&p.y)])
}

fn strings<S: AsRef<str>>(xs: &[S]) -> Value {
    Value::Array(xs.iter().map(|s| Value::String(s.as_ref().to_string())).collect())
}

fn filaments(fs: &[Filament]) -> Value {
    Value::Array(
        fs.iter()
            .map(|f| {
                let mut m = Map::new();
                m.insert("inner".into(), Value::String(f.inner_vertex.to_string()));
                m.insert("outer".into(), Value::String(f.outer_vertex.to_string()));
                Value::Object(m)
            })
            .collect(),
    )
}

/// Inserts unless the value is an empty collection or `false`.
fn put(m: &mut Map<String, Value>, key: &str, v: Value) {
    let empty = match &v {
        Value::Array(a) => a.is_empty(),
        Value::Object(o) => o.is_empty(),
        Value::Bool(b) => !b,
        _ => false,
    };
    if !empty {
        m.insert(key.into(), v);
    }
}

fn map_of<T>(items: &BTreeMap<String, T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Object(items.iter().map(|(k, v)| (k.clone(), f(v))).collect())
}

fn complex_value(c: &ComplexSpec) -> Value {
    let mut m = Map::new();
    put(&mut m, "vertices", map_of(&c.vertices, point));
    put(&mut m, "edges", Value::Array(c.edges.iter().map(|e| strings(e)).collect()));
    put(&mut m, "triangles", Value::Array(c.triangles.iter().map(|t| strings(t)).collect()));
    put(&mut m, "cycles", map_of(&c.cycles, |v| strings(v)));
    put(
        &mut m,
        "ribbons",
        map_of(&c.ribbons, |r| {
            let mut rm = Map::new();
            rm.insert("outer".into(), Value::String(r.outer.clone()));
            rm.insert("inner".into(), Value::String(r.inner.clone()));
            put(&mut rm, "filaments", filaments(&r.filaments));
            let holes = r
                .holes
                .iter()
                .map(|h| {
                    let mut hm = Map::new();
                    hm.insert("at".into(), point(&h.marker));
                    hm.insert("label".into(), Value::String(h.label.clone()));
                    Value::Object(hm)
                })
                .collect();
            put(&mut rm, "holes", Value::Array(holes));
            put(&mut rm, "allow_concentric", Value::Bool(r.allow_concentric));
            Value::Object(rm)
        }),
    );
    put(&mut m, "ribbon_complexes", map_of(&c.ribbon_complexes, |v| strings(v)));
    put(&mut m, "ribbon_nerves", map_of(&c.ribbon_nerves, |v| strings(v)));
    put(
        &mut m,
        "vortex_nerves",
        map_of(&c.vortex_nerves, |v| {
            let mut vm = Map::new();
            vm.insert("cycles".into(), strings(&v.cycles));
            put(&mut vm, "filaments", filaments(&v.filaments));
            Value::Object(vm)
        }),
    );
    put(&mut m, "families", map_of(&c.families, |v| strings(v)));
    if let Some((lo, hi)) = &c.frame {
        m.insert("frame".into(), Value::Array(vec![point(lo), point(hi)]));
    }
    Value::Object(m)
}

/// Canonical text: compact JSON with sorted keys and a trailing newline.
pub fn serialize_document(doc: &Document) -> String {
    let mut m = Map::new();
    m.insert("format_version".into(), Value::from(doc.format_version));
    put(&mut m, "complexes", map_of(&doc.complexes, complex_value));
    if let Some(p) = &doc.probes {
        m.insert("probes".into(), strings(p));
    }
    if let Some(t) = &doc.threshold {
        m.insert("threshold".into(), rat(t));
    }
    let mut text = serde_json::to_string(&Value::Object(m)).expect("JSON values always serialize");
    text.push('\n');
    text
}

// ---------------------------------------------------------------- resolving

/// The objects built from one complex of a document.
#[derive(Debug, Clone)]
pub struct ComplexData {
    pub name: String,
    pub complex: CellComplex,
    pub cycles: BTreeMap<String, FilledCycle>,
    pub ribbons: BTreeMap<String, Ribbon>,
    pub ribbon_complexes: BTreeMap<String, RibbonComplex>,
    pub ribbon_nerves: BTreeMap<String, RibbonNerve>,
    pub vortex_nerves: BTreeMap<String, VortexNerve>,
    pub families: BTreeMap<String, Vec<FilledCycle>>,
    pub frame: Option<Frame>,
}

#[derive(Debug, Clone)]
pub struct Workspace {
    pub complexes: BTreeMap<String, ComplexData>,
}

/// Something a command can be pointed at by name.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    Complex(&'a ComplexData),
    Cycle(&'a ComplexData, &'a FilledCycle),
    Ribbon(&'a ComplexData, &'a Ribbon),
    RibbonComplex(&'a ComplexData, &'a RibbonComplex),
    RibbonNerve(&'a ComplexData, &'a RibbonNerve),
    VortexNerve(&'a ComplexData, &'a VortexNerve),
    Family(&'a ComplexData, &'a str, &'a [FilledCycle]),
}

impl Target<'_> {
    pub fn kind(&self) -> &'static str {
        match self {
            Target::Complex(_) => "complex",
            Target::Cycle(..) => "cycle",
            Target::Ribbon(..) => "ribbon",
            Target::RibbonComplex(..) => "ribbon complex",
            Target::RibbonNerve(..) => "ribbon nerve",
            Target::VortexNerve(..) => "vortex nerve",
            Target::Family(..) => "family",
        }
    }

    pub fn complex(&self) -> &ComplexData {
        match self {
            Target::Complex(c)
            | Target::Cycle(c, _)
            | Target::Ribbon(c, _)
            | Target::RibbonComplex(c, _)
            | Target::RibbonNerve(c, _)
            | Target::VortexNerve(c, _)
            | Target::Family(c, ..) => c,
        }
    }

    pub fn entity(&self) -> Option<Entity> {
        match *self {
            Target::Ribbon(_, r) => Some(Entity::Ribbon(r.clone())),
            Target::RibbonComplex(_, x) => Some(Entity::RibbonComplex(x.clone())),
            Target::RibbonNerve(_, n) => Some(Entity::RibbonNerve(n.clone())),
            Target::VortexNerve(_, v) => Some(Entity::VortexNerve(v.clone())),
            _ => None,
        }
    }
}

impl ComplexData {
    /// The declared frame, or the bounding box of all vertices grown by one unit.
    pub fn frame(&self) -> Option<Frame> {
        if self.frame.is_some() {
            return self.frame.clone();
        }
        let pts: Vec<Point2> = self.complex.vertices().values().cloned().collect();
        Frame::around(&pts, &crate::geometry::int(1)).ok()
    }
}

impl Workspace {
    pub fn find(&self, name: &str) -> Result<Target<'_>, Error> {
        for c in self.complexes.values() {
            if c.name == name {
                return Ok(Target::Complex(c));
            }
            if let Some(x) = c.cycles.get(name) {
                return Ok(Target::Cycle(c, x));
            }
            if let Some(x) = c.ribbons.get(name) {
                return Ok(Target::Ribbon(c, x));
            }
            if let Some(x) = c.ribbon_complexes.get(name) {
                return Ok(Target::RibbonComplex(c, x));
            }
            if let Some(x) = c.ribbon_nerves.get(name) {
                return Ok(Target::RibbonNerve(c, x));
            }
            if let Some(x) = c.vortex_nerves.get(name) {
                return Ok(Target::VortexNerve(c, x));
            }
            if let Some((k, x)) = c.families.get_key_value(name) {
                return Ok(Target::Family(c, k, x));
            }
        }
        Err(Error::UnknownTarget(name.to_string()))
    }

    pub fn entity(&self, name: &str) -> Result<Entity, Error> {
        let t = self.find(name)?;
        t.entity().ok_or_else(|| Error::WrongTargetKind { name: name.to_string(), kind: t.kind() })
    }
}

fn unresolved(path: String, name: &str) -> Error {
    Error::Document(DocumentError::UnresolvedReference { path, name: name.to_string() })
}

fn lookup<'m, T>(map: &'m BTreeMap<String, T>, name: &str, path: String) -> Result<&'m T, Error> {
    map.get(name).ok_or_else(|| unresolved(path, name))
}

fn check_unique_names(doc: &Document) -> Result<(), DocumentError> {
    let mut seen = BTreeSet::new();
    for (cname, c) in &doc.complexes {
        let names = std::iter::once(cname)
            .chain(c.cycles.keys())
            .chain(c.ribbons.keys())
            .chain(c.ribbon_complexes.keys())
            .chain(c.ribbon_nerves.keys())
            .chain(c.vortex_nerves.keys())
            .chain(c.families.keys());
        for n in names {
            if !seen.insert(n.clone()) {
                return Err(DocumentError::DuplicateName(n.clone()));
            }
        }
    }
    Ok(())
}

fn resolve_complex(name: &str, spec: &ComplexSpec) -> Result<ComplexData, Error> {
    let base = format!("$.complexes.{name}");
    let mut k = CellComplex::new(name);
    for (id, p) in &spec.vertices {
        k.add_vertex(VertexId::new(id.clone()), p.clone())?;
    }
    let vid = |id: &str, path: String| -> Result<VertexId, Error> {
        let v = VertexId::new(id);
        if spec.vertices.contains_key(id) {
            Ok(v)
        } else {
            Err(unresolved(path, id))
        }
    };
    for (i, [a, b]) in spec.edges.iter().enumerate() {
        let p = format!("{base}.edges[{i}]");
        k.add_edge(&vid(a, p.clone())?, &vid(b, p)?)?;
    }
    for (i, [a, b, c]) in spec.triangles.iter().enumerate() {
        let p = format!("{base}.triangles[{i}]");
        k.add_triangle(&vid(a, p.clone())?, &vid(b, p.clone())?, &vid(c, p)?)?;
    }
    let mut cycles = BTreeMap::new();
    for (label, ids) in &spec.cycles {
        let p = format!("{base}.cycles.{label}");
        let ids = ids.iter().map(|id| vid(id, p.clone())).collect::<Result<Vec<_>, _>>()?;
        cycles.insert(label.clone(), FilledCycle::new(&mut k, label.clone(), &ids)?);
    }
    let check_filaments = |fs: &[Filament], path: &str| -> Result<(), Error> {
        for f in fs {
            vid(f.outer_vertex.as_str(), path.to_string())?;
            vid(f.inner_vertex.as_str(), path.to_string())?;
        }
        Ok(())
    };
    let mut ribbons = BTreeMap::new();
    for (rname, r) in &spec.ribbons {
        let p = format!("{base}.ribbons.{rname}");
        check_filaments(&r.filaments, &format!("{p}.filaments"))?;
        let outer = lookup(&cycles, &r.outer, format!("{p}.outer"))?.clone();
        let inner = lookup(&cycles, &r.inner, format!("{p}.inner"))?.clone();
        let parts = RibbonParts::new(rname.clone(), outer, inner)
            .filaments(r.filaments.clone())
            .holes(r.holes.clone())
            .allow_concentric(r.allow_concentric);
        ribbons.insert(rname.clone(), make_ribbon(&mut k, parts)?);
    }
    let collect = |names: &[String], path: String| -> Result<Vec<Ribbon>, Error> {
        names.iter().map(|n| lookup(&ribbons, n, path.clone()).cloned()).collect()
    };
    let mut ribbon_complexes = BTreeMap::new();
    for (n, members) in &spec.ribbon_complexes {
        let rs = collect(members, format!("{base}.ribbon_complexes.{n}"))?;
        ribbon_complexes.insert(n.clone(), RibbonComplex::new(n.clone(), rs)?);
    }
    let mut ribbon_nerves = BTreeMap::new();
    for (n, members) in &spec.ribbon_nerves {
        let rs = collect(members, format!("{base}.ribbon_nerves.{n}"))?;
        ribbon_nerves.insert(n.clone(), RibbonNerve::new(n.clone(), rs)?);
    }
    let mut vortex_nerves = BTreeMap::new();
    for (n, v) in &spec.vortex_nerves {
        let p = format!("{base}.vortex_nerves.{n}");
        check_filaments(&v.filaments, &format!("{p}.filaments"))?;
        let cs = v
            .cycles
            .iter()
            .map(|c| lookup(&cycles, c, format!("{p}.cycles")).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        let nerve = VortexNerve::new(n.clone(), cs, v.filaments.clone())?;
        for f in &v.filaments {
            k.add_edge(&f.outer_vertex, &f.inner_vertex)?;
        }
        vortex_nerves.insert(n.clone(), nerve);
    }
    let mut families = BTreeMap::new();
    for (n, members) in &spec.families {
        let p = format!("{base}.families.{n}");
        let cs = members.iter().map(|c| lookup(&cycles, c, p.clone()).cloned()).collect::<Result<Vec<_>, _>>()?;
        families.insert(n.clone(), cs);
    }
    let frame = spec
        .frame
        .as_ref()
        .map(|(lo, hi)| Frame::new(lo.clone(), hi.clone()))
        .transpose()
        .map_err(|_| violation(&format!("{base}.frame"), "frame corners are not ordered"))?;
    Ok(ComplexData {
        name: name.to_string(),
        complex: k,
        cycles,
        ribbons,
        ribbon_complexes,
        ribbon_nerves,
        vortex_nerves,
        families,
        frame,
    })
}

impl Document {
    pub fn resolve(&self) -> Result<Workspace, Error> {
        check_unique_names(self)?;
        let complexes = self
            .complexes
            .iter()
            .map(|(name, spec)| Ok((name.clone(), resolve_complex(name, spec)?)))
            .collect::<Result<_, Error>>()?;
        Ok(Workspace { complexes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = concat!(
        r#"{"complexes":{"k":{"cycles":{"cA":["a0","a1","a2","a3"],"cB":["b0","b1","b2"]},"#,
        r#""ribbon_complexes":{"x":["rb"]},"ribbons":{"rb":{"filaments":[{"inner":"b0","outer":"a0"}],"#,
        r#""holes":[{"at":["7/1","1/2"],"label":"h"}],"inner":"cB","outer":"cA"}},"#,
        r#""vertices":{"a0":["0/1","0/1"],"a1":["10/1","0/1"],"a2":["10/1","8/1"],"a3":["0/1","8/1"],"#,
        r#""b0":["2/1","2/1"],"b1":["5/1","2/1"],"b2":["4/1","5/1"]}}},"format_version":1,"probes":["b2_holes"],"threshold":"1/1"}"#,
        "\n"
    );

    #[test]
    fn round_trip_is_byte_identical() {
        let doc = parse_document(SMALL).unwrap();
        assert_eq!(serialize_document(&doc), SMALL);
        let ws = doc.resolve().unwrap();
        assert!(matches!(ws.find("rb").unwrap(), Target::Ribbon(..)));
        assert!(matches!(ws.find("x").unwrap(), Target::RibbonComplex(..)));
        assert!(matches!(ws.find("nope"), Err(Error::UnknownTarget(_))));
        assert!(matches!(ws.entity("cA"), Err(Error::WrongTargetKind { .. })));
    }

    #[test]
    fn whitespace_is_normalized() {
        let pretty = serde_json::to_string_pretty(&serde_json::from_str::<Value>(SMALL).unwrap()).unwrap();
        assert_eq!(serialize_document(&parse_document(&pretty).unwrap()), SMALL);
    }

    #[test]
    fn non_canonical_rational() {
        let text = SMALL.replace(r#""b1":["5/1","2/1"]"#, r#""b1":["5/1","2/4"]"#);
        match parse_document(&text) {
            Err(DocumentError::NonCanonicalRational { path, value }) => {
                assert_eq!(value, "2/4");
                assert_eq!(path, "$.complexes.k.vertices.b1[1]");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_violations_carry_paths() {
        let text = SMALL.replace(r#""label":"h""#, r#""label":"h","size":3"#);
        match parse_document(&text) {
            Err(DocumentError::SchemaViolation { path, .. }) => assert_eq!(path, "$.complexes.k.ribbons.rb.holes[0]"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_document("{}"), Err(DocumentError::SchemaViolation { .. })));
        assert!(matches!(parse_document(r#"{"format_version":2}"#), Err(DocumentError::UnsupportedVersion(2))));
        assert!(matches!(parse_document("{"), Err(DocumentError::Json(_))));
    }

    #[test]
    fn unresolved_references() {
        let doc = parse_document(
            r#"{"complexes":{"k":{"edges":[["a","z"]],"vertices":{"a":["0/1","0/1"]}}},"format_version":1}"#,
        )
        .unwrap();
        match doc.resolve() {
            Err(Error::Document(DocumentError::UnresolvedReference { name, path })) => {
                assert_eq!(name, "z");
                assert_eq!(path, "$.complexes.k.edges[0]");
            }
            other => panic!("{other:?}"),
        }
        let text = SMALL.replace(r#""x":["rb"]"#, r#""x":["rb","rc"]"#);
        assert!(matches!(
            parse_document(&text).unwrap().resolve(),
            Err(Error::Document(DocumentError::UnresolvedReference { .. }))
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let text = SMALL.replace(r#""x":["rb"]"#, r#""cA":["rb"]"#);
        assert!(matches!(
            parse_document(&text).unwrap().resolve(),
            Err(Error::Document(DocumentError::DuplicateName(_)))
        ));
    }

    #[test]
    fn empty_and_false_are_omitted() {
        let mut doc = parse_document(SMALL).unwrap();
        let c = doc.complexes.get_mut("k").unwrap();
        c.ribbons.get_mut("rb").unwrap().allow_concentric = false;
        c.families.clear();
        c.edges.clear();
        let text = serialize_document(&doc);
        assert!(!text.contains("allow_concentric") && !text.contains("families") && !text.contains("edges"));
        assert_eq!(serialize_document(&Document::default()), "{\"format_version\":1}\n");
    }
}
