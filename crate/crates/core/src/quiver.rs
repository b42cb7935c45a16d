//! Quivers: parsing, strongly connected components and path-length bounds.
//!
//! Vertex and arrow indices follow declaration order. Every deterministic output
//! of the crate (prime allocation, JSON, enumeration order) is keyed on them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver `(Q_0, Q_1, h, t)`. Parallel arrows and loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, tail id, head id)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_id(v) {
                return Err(Error::InvalidArgument(format!("invalid vertex id `{v}`")));
            }
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate vertex `{v}`")));
            }
        }
        let mut resolved = Vec::new();
        for (id, tail, head) in arrows {
            let t = *vertex_index.get(&tail).ok_or(Error::UnknownVertex(tail))?;
            let h = *vertex_index.get(&head).ok_or(Error::UnknownVertex(head))?;
            resolved.push(Arrow {
                id,
                tail: t,
                head: h,
            });
        }
        Self::from_resolved(vertices, vertex_index, resolved)
    }

    /// Builds a quiver on vertices `v0..v{n-1}` with arrows `a0, a1, ...` given as
    /// `(tail, head)` index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| {
                let name = |x: usize| vertices.get(x).cloned().unwrap_or_else(|| x.to_string());
                (format!("a{i}"), name(t), name(h))
            })
            .collect::<Vec<_>>();
        Self::new(vertices.clone(), arrows)
    }

    fn from_resolved(
        vertices: Vec<String>,
        vertex_index: HashMap<String, usize>,
        arrows: Vec<Arrow>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut arrow_index = HashMap::new();
        let mut out_arrows = vec![Vec::new(); n];
        let mut in_arrows = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            if !valid_id(&a.id) {
                return Err(Error::InvalidArgument(format!(
                    "invalid arrow id `{}`",
                    a.id
                )));
            }
            if arrow_index.insert(a.id.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate arrow `{}`",
                    a.id
                )));
            }
            out_arrows[a.tail].push(i);
            in_arrows[a.head].push(i);
        }
        Ok(Quiver {
            vertices,
            arrows,
            vertex_index,
            arrow_index,
            out_arrows,
            in_arrows,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_name(&self, x: usize) -> &str {
        &self.vertices[x]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_by_id(&self, id: &str) -> Result<usize> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    /// Arrows with tail `x`, in declaration order.
    pub fn out_arrows(&self, x: usize) -> &[usize] {
        &self.out_arrows[x]
    }

    /// Arrows with head `x`, in declaration order.
    pub fn in_arrows(&self, x: usize) -> &[usize] {
        &self.in_arrows[x]
    }

    /// Renders the quiver in the line-based file format accepted by [`parse_quiver`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.id, self.vertices[a.tail], self.vertices[a.head]
            ));
        }
        out
    }
}

#[derive(Serialize)]
struct ArrowView<'a> {
    id: &'a str,
    tail: &'a str,
    head: &'a str,
}

impl Serialize for Quiver {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            vertices: &'a [String],
            arrows: Vec<ArrowView<'a>>,
        }
        View {
            vertices: &self.vertices,
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowView {
                    id: &a.id,
                    tail: &self.vertices[a.tail],
                    head: &self.vertices[a.head],
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Parses the line format
///
/// ```text
/// # comment
/// vertex x
/// arrow a: x -> y
/// ```
///
/// Vertices may be declared after the arrows that use them.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_index: HashMap<String, usize> = HashMap::new();
    let mut raw_arrows: Vec<(usize, String, String, String)> = Vec::new();
    let mut arrow_ids: HashMap<String, usize> = HashMap::new();

    let perr = |line: usize, message: String| Error::Parse { line, message };

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "vertex" => {
                if !valid_id(rest) {
                    return Err(perr(line_no, format!("invalid vertex id `{rest}`")));
                }
                if vertex_index.contains_key(rest) {
                    return Err(perr(line_no, format!("duplicate vertex `{rest}`")));
                }
                vertex_index.insert(rest.to_string(), vertices.len());
                vertices.push(rest.to_string());
            }
            "arrow" => {
                let (id, ends) = rest.split_once(':').ok_or_else(|| {
                    perr(line_no, "expected `arrow <id>: <tail> -> <head>`".into())
                })?;
                let id = id.trim();
                let (tail, head) = ends
                    .split_once("->")
                    .ok_or_else(|| perr(line_no, "expected `<tail> -> <head>`".into()))?;
                let (tail, head) = (tail.trim(), head.trim());
                for part in [id, tail, head] {
                    if !valid_id(part) {
                        return Err(perr(line_no, format!("invalid id `{part}`")));
                    }
                }
                if arrow_ids.insert(id.to_string(), line_no).is_some() {
                    return Err(perr(line_no, format!("duplicate arrow `{id}`")));
                }
                raw_arrows.push((line_no, id.to_string(), tail.to_string(), head.to_string()));
            }
            other => return Err(perr(line_no, format!("unknown directive `{other}`"))),
        }
    }

    let mut arrows = Vec::with_capacity(raw_arrows.len());
    for (line_no, id, tail, head) in raw_arrows {
        let lookup = |v: &str| {
            vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| perr(line_no, format!("undeclared vertex `{v}`")))
        };
        let t = lookup(&tail)?;
        let h = lookup(&head)?;
        arrows.push(Arrow {
            id,
            tail: t,
            head: h,
        });
    }
    if vertices.is_empty() {
        return Err(Error::EmptyQuiver);
    }
    Quiver::from_resolved(vertices, vertex_index, arrows)
}

/// A length in `N_0 ∪ {∞}` with saturating addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtLen {
    Finite(usize),
    Inf,
}

impl ExtLen {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtLen::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            ExtLen::Finite(v) => Some(v),
            ExtLen::Inf => None,
        }
    }

    /// `self - k`, saturating at zero; `∞ - k = ∞`.
    pub fn sub_finite(self, k: usize) -> ExtLen {
        match self {
            ExtLen::Finite(v) => ExtLen::Finite(v.saturating_sub(k)),
            ExtLen::Inf => ExtLen::Inf,
        }
    }
}

impl From<usize> for ExtLen {
    fn from(v: usize) -> Self {
        ExtLen::Finite(v)
    }
}

impl Add for ExtLen {
    type Output = ExtLen;
    fn add(self, rhs: ExtLen) -> ExtLen {
        match (self, rhs) {
            (ExtLen::Finite(a), ExtLen::Finite(b)) => ExtLen::Finite(a + b),
            _ => ExtLen::Inf,
        }
    }
}

impl Add<usize> for ExtLen {
    type Output = ExtLen;
    fn add(self, rhs: usize) -> ExtLen {
        self + ExtLen::Finite(rhs)
    }
}

impl fmt::Display for ExtLen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLen::Finite(v) => write!(f, "{v}"),
            ExtLen::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtLen {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtLen::Finite(v) => s.serialize_u64(*v as u64),
            ExtLen::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtLen {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(usize),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtLen::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(ExtLen::Inf),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected number or \"inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Member vertices in declaration order.
    pub vertices: Vec<usize>,
    /// Arrows with both ends in the component.
    pub internal_arrows: Vec<usize>,
    pub has_cycle: bool,
    pub is_simple_cycle: bool,
}

/// The classes of `x ~ y` (mutual reachability) plus the condensation DAG.
///
/// Components are numbered by their first vertex in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPartition {
    component_of: Vec<usize>,
    components: Vec<Component>,
    condensation: Vec<(usize, usize)>,
    topo_order: Vec<usize>,
}

impl SccPartition {
    pub fn component_of(&self, x: usize) -> usize {
        self.component_of[x]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &Component {
        &self.components[c]
    }

    /// Condensation edges `(from, to)`, deduplicated and sorted.
    pub fn condensation(&self) -> &[(usize, usize)] {
        &self.condensation
    }

    /// Components in a topological order of the condensation (sources first).
    pub fn topo_order(&self) -> &[usize] {
        &self.topo_order
    }

    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.component_of[x] == self.component_of[y]
    }

    /// `P_x` is commutative iff `x` is not on a cycle, or its component is a
    /// single directed cycle.
    pub fn is_commutative(&self, x: usize) -> bool {
        let c = &self.components[self.component_of[x]];
        !c.has_cycle || c.is_simple_cycle
    }

    pub fn to_json(&self, q: &Quiver) -> serde_json::Value {
        let components: Vec<_> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                serde_json::json!({
                    "id": i,
                    "vertices": c.vertices.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
                    "has_cycle": c.has_cycle,
                    "is_simple_cycle": c.is_simple_cycle,
                })
            })
            .collect();
        serde_json::json!({
            "components": components,
            "condensation": self.condensation,
        })
    }
}

/// Tarjan's algorithm, iterative.
fn tarjan(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.num_vertices();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, position in out-arrow list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, pos)) = call.last() {
            let outs = q.out_arrows(v);
            if pos < outs.len() {
                let w = q.arrow(outs[pos]).head;
                if let Some(top) = call.last_mut() {
                    top.1 += 1;
                }
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

pub fn sccs(q: &Quiver) -> SccPartition {
    let n = q.num_vertices();
    let raw = tarjan(q);

    // Renumber by smallest member so ids follow declaration order.
    let mut raw: Vec<Vec<usize>> = raw
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    raw.sort_by_key(|c| c[0]);

    let mut component_of = vec![0; n];
    for (ci, c) in raw.iter().enumerate() {
        for &v in c {
            component_of[v] = ci;
        }
    }

    let mut internal = vec![Vec::new(); raw.len()];
    let mut edges = BTreeSet::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (ct, ch) = (component_of[a.tail], component_of[a.head]);
        if ct == ch {
            internal[ct].push(ai);
        } else {
            edges.insert((ct, ch));
        }
    }

    let components: Vec<Component> = raw
        .into_iter()
        .zip(internal)
        .map(|(vertices, internal_arrows)| {
            let has_cycle = vertices.len() > 1 || !internal_arrows.is_empty();
            let is_simple_cycle = has_cycle && internal_arrows.len() == vertices.len();
            Component {
                vertices,
                internal_arrows,
                has_cycle,
                is_simple_cycle,
            }
        })
        .collect();

    let condensation: Vec<(usize, usize)> = edges.into_iter().collect();

    // Kahn with a min-heap on ids, for a deterministic order.
    let k = components.len();
    let mut indeg = vec![0usize; k];
    let mut succ = vec![Vec::new(); k];
    for &(a, b) in &condensation {
        indeg[b] += 1;
        succ[a].push(b);
    }
    let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..k)
        .filter(|&c| indeg[c] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut topo_order = Vec::with_capacity(k);
    while let Some(std::cmp::Reverse(c)) = ready.pop() {
        topo_order.push(c);
        for &d in &succ[c] {
            indeg[d] -= 1;
            if indeg[d] == 0 {
                ready.push(std::cmp::Reverse(d));
            }
        }
    }
    debug_assert_eq!(topo_order.len(), k);

    SccPartition {
        component_of,
        components,
        condensation,
        topo_order,
    }
}

/// Per-vertex suprema of path lengths ending at (`minus`) and starting at
/// (`plus`) each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthProfile {
    pub minus: Vec<ExtLen>,
    pub plus: Vec<ExtLen>,
}

impl LengthProfile {
    pub fn get(&self, x: usize) -> (ExtLen, ExtLen) {
        (self.minus[x], self.plus[x])
    }
}

pub fn length_profile(q: &Quiver) -> LengthProfile {
    length_profile_with(q, &sccs(q))
}

/// Longest-path DP over the condensation. A component with a cycle makes every
/// vertex that reaches it (resp. is reached from it) infinite.
pub fn length_profile_with(q: &Quiver, scc: &SccPartition) -> LengthProfile {
    let k = scc.components().len();
    let mut comp_minus = vec![ExtLen::Finite(0); k];
    let mut comp_plus = vec![ExtLen::Finite(0); k];

    let mut preds = vec![Vec::new(); k];
    let mut succs = vec![Vec::new(); k];
    for &(a, b) in scc.condensation() {
        succs[a].push(b);
        preds[b].push(a);
    }

    for &c in scc.topo_order() {
        comp_minus[c] = if scc.component(c).has_cycle {
            ExtLen::Inf
        } else {
            preds[c]
                .iter()
                .map(|&p| comp_minus[p] + 1)
                .max()
                .unwrap_or(ExtLen::Finite(0))
        };
    }
    for &c in scc.topo_order().iter().rev() {
        comp_plus[c] = if scc.component(c).has_cycle {
            ExtLen::Inf
        } else {
            succs[c]
                .iter()
                .map(|&s| comp_plus[s] + 1)
                .max()
                .unwrap_or(ExtLen::Finite(0))
        };
    }

    let n = q.num_vertices();
    LengthProfile {
        minus: (0..n).map(|x| comp_minus[scc.component_of(x)]).collect(),
        plus: (0..n).map(|x| comp_plus[scc.component_of(x)]).collect(),
    }
}
