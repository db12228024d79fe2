//! Vertex-labeled graphs with an a-structure (loops and a partial matching)
//! and a b-structure (loops, isolated directed edges, directed triangles).
//!
//! A [`Graph`] is immutable from the outside. Labels are arbitrary distinct
//! positive integers; a graph is *normalized* when its labels are exactly
//! `1..=n`. Moves produce weakly labeled graphs and leave normalization to
//! the caller.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::types::{CombinatorialType, IsomorphismType};

pub type Label = u32;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) enum ASlot {
    #[default]
    Free,
    Loop,
    Mate(Label),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct Vertex {
    pub(crate) a: ASlot,
    pub(crate) b_loop: bool,
    pub(crate) b_next: Option<Label>,
    pub(crate) b_prev: Option<Label>,
}

impl Vertex {
    fn has_a(&self) -> bool {
        self.a != ASlot::Free
    }

    fn has_b(&self) -> bool {
        self.b_loop || self.b_next.is_some() || self.b_prev.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("label 0 is not allowed; labels are positive integers")]
    ZeroLabel,
    #[error("duplicate entry for label {0}")]
    Duplicate(Label),
    #[error("label {0} is referenced but not a vertex")]
    UnknownLabel(Label),
    #[error("vertex {0} carries more than one a-edge")]
    ADegree(Label),
    #[error("vertex {0} has more than one outgoing or incoming b-edge")]
    BDegree(Label),
    #[error("a-edge and b-edge endpoints must be distinct (vertex {0})")]
    SelfEdge(Label),
    #[error("b-edges through {0} do not close into a triangle")]
    OpenBPath(Label),
    #[error("root {0} is not a vertex")]
    BadRoot(Label),
    #[error("relabeling is not injective onto positive integers")]
    NonInjectiveRelabel,
    #[error("graph has no root")]
    NoRoot,
    #[error("graph is neither reduced nor cyclically reduced")]
    NotReduced,
    #[error("isomorphism type formula gave a non-integral or negative rank for type {0}")]
    NonIntegralRank(CombinatorialType),
}

/// A PSL2(Z) edge-labeled graph with optional root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    pub(crate) vertices: BTreeMap<Label, Vertex>,
    pub(crate) root: Option<Label>,
}

/// Collects vertices and edges and validates them into a [`Graph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<Label>,
    a_loops: Vec<Label>,
    a_edges: Vec<(Label, Label)>,
    b_loops: Vec<Label>,
    b_arcs: Vec<(Label, Label)>,
    root: Option<Label>,
}

impl GraphBuilder {
    pub fn vertex(mut self, v: Label) -> Self {
        self.labels.push(v);
        self
    }

    pub fn vertices(mut self, vs: impl IntoIterator<Item = Label>) -> Self {
        self.labels.extend(vs);
        self
    }

    pub fn a_loop(mut self, v: Label) -> Self {
        self.a_loops.push(v);
        self
    }

    pub fn a_edge(mut self, x: Label, y: Label) -> Self {
        self.a_edges.push((x, y));
        self
    }

    pub fn b_loop(mut self, v: Label) -> Self {
        self.b_loops.push(v);
        self
    }

    pub fn b_arc(mut self, from: Label, to: Label) -> Self {
        self.b_arcs.push((from, to));
        self
    }

    pub fn b_triangle(self, x: Label, y: Label, z: Label) -> Self {
        self.b_arc(x, y).b_arc(y, z).b_arc(z, x)
    }

    pub fn root(mut self, v: Label) -> Self {
        self.root = Some(v);
        self
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let mut vertices = BTreeMap::new();
        for &v in &self.labels {
            if v == 0 {
                return Err(GraphError::ZeroLabel);
            }
            if vertices.insert(v, Vertex::default()).is_some() {
                return Err(GraphError::Duplicate(v));
            }
        }
        let mut g = Graph { vertices, root: None };
        for &v in &self.a_loops {
            let vx = g.vertex_mut_checked(v)?;
            if vx.has_a() {
                return Err(GraphError::ADegree(v));
            }
            vx.a = ASlot::Loop;
        }
        for &(x, y) in &self.a_edges {
            if x == y {
                return Err(GraphError::SelfEdge(x));
            }
            for (p, q) in [(x, y), (y, x)] {
                let vx = g.vertex_mut_checked(p)?;
                if vx.has_a() {
                    return Err(GraphError::ADegree(p));
                }
                vx.a = ASlot::Mate(q);
            }
        }
        for &v in &self.b_loops {
            let vx = g.vertex_mut_checked(v)?;
            if vx.b_loop {
                return Err(GraphError::Duplicate(v));
            }
            vx.b_loop = true;
        }
        for &(x, y) in &self.b_arcs {
            if x == y {
                return Err(GraphError::SelfEdge(x));
            }
            g.vertex_mut_checked(y)?;
            let vx = g.vertex_mut_checked(x)?;
            if vx.b_next.is_some() {
                return Err(GraphError::BDegree(x));
            }
            vx.b_next = Some(y);
            let vy = g.vertex_mut_checked(y)?;
            if vy.b_prev.is_some() {
                return Err(GraphError::BDegree(y));
            }
            vy.b_prev = Some(x);
        }
        if let Some(r) = self.root {
            if !g.vertices.contains_key(&r) {
                return Err(GraphError::BadRoot(r));
            }
            g.root = Some(r);
        }
        g.validate()?;
        Ok(g)
    }
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// One vertex carrying an a-loop and a b-loop (the whole group).
    pub fn delta1() -> Graph {
        Graph::builder().vertex(1).a_loop(1).b_loop(1).build().unwrap()
    }

    /// Two vertices joined by an a-edge and a b-edge `1 -> 2` (preferred labeling).
    pub fn delta2() -> Graph {
        Graph::builder().vertices([1, 2]).a_edge(1, 2).b_arc(1, 2).build().unwrap()
    }

    /// Isolated b-edge `1 -> 2` with an a-loop at both ends.
    pub fn delta3() -> Graph {
        Graph::builder().vertices([1, 2]).a_loop(1).a_loop(2).b_arc(1, 2).build().unwrap()
    }

    /// Isolated a-edge with a b-loop at both ends.
    pub fn delta4() -> Graph {
        Graph::builder().vertices([1, 2]).a_edge(1, 2).b_loop(1).b_loop(2).build().unwrap()
    }

    fn vertex_mut_checked(&mut self, v: Label) -> Result<&mut Vertex, GraphError> {
        self.vertices.get_mut(&v).ok_or(GraphError::UnknownLabel(v))
    }

    /// Checks every structural invariant.
    pub fn validate(&self) -> Result<(), GraphError> {
        for (&v, vx) in &self.vertices {
            if v == 0 {
                return Err(GraphError::ZeroLabel);
            }
            if let ASlot::Mate(w) = vx.a {
                if w == v {
                    return Err(GraphError::SelfEdge(v));
                }
                match self.vertices.get(&w) {
                    Some(wx) if wx.a == ASlot::Mate(v) => {}
                    Some(_) => return Err(GraphError::ADegree(w)),
                    None => return Err(GraphError::UnknownLabel(w)),
                }
            }
            if vx.b_loop && (vx.b_next.is_some() || vx.b_prev.is_some()) {
                return Err(GraphError::BDegree(v));
            }
            if let Some(w) = vx.b_next {
                let wx = self.vertices.get(&w).ok_or(GraphError::UnknownLabel(w))?;
                if w == v {
                    return Err(GraphError::SelfEdge(v));
                }
                if wx.b_prev != Some(v) {
                    return Err(GraphError::BDegree(w));
                }
                if let Some(x) = wx.b_next {
                    // a path v -> w -> x must close up as x -> v
                    if x == v || self.vertices.get(&x).and_then(|xx| xx.b_next) != Some(v) {
                        return Err(GraphError::OpenBPath(w));
                    }
                }
            }
            if let Some(u) = vx.b_prev {
                let ux = self.vertices.get(&u).ok_or(GraphError::UnknownLabel(u))?;
                if ux.b_next != Some(v) {
                    return Err(GraphError::BDegree(u));
                }
            }
        }
        if let Some(r) = self.root {
            if !self.vertices.contains_key(&r) {
                return Err(GraphError::BadRoot(r));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn root(&self) -> Option<Label> {
        self.root
    }

    pub fn contains(&self, v: Label) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.vertices.keys().copied()
    }

    pub fn max_label(&self) -> Option<Label> {
        self.vertices.keys().next_back().copied()
    }

    pub fn a_loops(&self) -> impl Iterator<Item = Label> + '_ {
        self.vertices.iter().filter(|(_, x)| x.a == ASlot::Loop).map(|(&v, _)| v)
    }

    /// Isolated a-edges as `(smaller, larger)` pairs, ascending.
    pub fn a_edges(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.vertices.iter().filter_map(|(&v, x)| match x.a {
            ASlot::Mate(w) if v < w => Some((v, w)),
            _ => None,
        })
    }

    pub fn b_loops(&self) -> impl Iterator<Item = Label> + '_ {
        self.vertices.iter().filter(|(_, x)| x.b_loop).map(|(&v, _)| v)
    }

    /// All directed b-edges that are not loops, ascending by source.
    pub fn b_arcs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.vertices.iter().filter_map(|(&v, x)| x.b_next.map(|w| (v, w)))
    }

    /// Directed b-edges that do not lie on a triangle.
    pub fn isolated_b_arcs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.b_arcs().filter(move |&(_, w)| self.vertices[&w].b_next.is_none())
    }

    pub fn has_a_loop(&self, v: Label) -> bool {
        self.vertices.get(&v).is_some_and(|x| x.a == ASlot::Loop)
    }

    pub fn has_b_loop(&self, v: Label) -> bool {
        self.vertices.get(&v).is_some_and(|x| x.b_loop)
    }

    /// The other end of the isolated a-edge at `v`, if any.
    pub fn a_mate(&self, v: Label) -> Option<Label> {
        match self.vertices.get(&v)?.a {
            ASlot::Mate(w) => Some(w),
            _ => None,
        }
    }

    /// Target of the non-loop b-edge leaving `v`.
    pub fn b_next(&self, v: Label) -> Option<Label> {
        self.vertices.get(&v)?.b_next
    }

    /// Source of the non-loop b-edge entering `v`.
    pub fn b_prev(&self, v: Label) -> Option<Label> {
        self.vertices.get(&v)?.b_prev
    }

    /// Whether `v` lies on a directed b-triangle.
    pub fn on_b_triangle(&self, v: Label) -> bool {
        self.b_next(v).and_then(|w| self.b_next(w)).is_some()
    }

    /// Vertex reached from `v` by reading `a`.
    pub fn step_a(&self, v: Label) -> Option<Label> {
        match self.vertices.get(&v)?.a {
            ASlot::Free => None,
            ASlot::Loop => Some(v),
            ASlot::Mate(w) => Some(w),
        }
    }

    /// Vertex reached from `v` by reading `b` forward.
    pub fn step_b(&self, v: Label) -> Option<Label> {
        let x = self.vertices.get(&v)?;
        if x.b_loop {
            Some(v)
        } else {
            x.b_next
        }
    }

    /// Vertex reached from `v` by reading `b^-1`.
    pub fn step_b_inv(&self, v: Label) -> Option<Label> {
        let x = self.vertices.get(&v)?;
        if x.b_loop {
            Some(v)
        } else {
            x.b_prev
        }
    }

    pub fn combinatorial_type(&self) -> CombinatorialType {
        let mut t = CombinatorialType::new(self.size() as u32, 0, 0, 0, 0);
        for x in self.vertices.values() {
            match x.a {
                ASlot::Loop => t.l2 += 1,
                ASlot::Mate(_) => t.k2 += 1,
                ASlot::Free => {}
            }
            if x.b_loop {
                t.l3 += 1;
            }
        }
        t.k2 /= 2;
        t.k3 = self.isolated_b_arcs().count() as u32;
        t
    }

    /// Every vertex meets both the a-structure and the b-structure.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.vertices.values().all(|x| x.has_a() && x.has_b())
    }

    /// Rooted, connected, and every non-root vertex meets both structures.
    pub fn is_reduced(&self) -> Result<bool, GraphError> {
        let root = self.root.ok_or(GraphError::NoRoot)?;
        let covered = self
            .vertices
            .iter()
            .all(|(&v, x)| v == root || (x.has_a() && x.has_b()));
        Ok(covered && self.is_connected())
    }

    fn neighbours(&self, v: Label) -> impl Iterator<Item = Label> {
        let x = self.vertices[&v];
        let a = match x.a {
            ASlot::Mate(w) => Some(w),
            _ => None,
        };
        a.into_iter().chain(x.b_next).chain(x.b_prev)
    }

    /// Undirected connectivity over all a- and b-adjacencies. The empty
    /// graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.keys().next().copied() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.size()
    }

    /// Kurosh decomposition of the subgroup this graph represents.
    ///
    /// Size-one graphs are looked up directly: bare vertex (trivial group),
    /// a-loop, b-loop, or both (the whole group). Larger graphs must be
    /// cyclically reduced or reduced with a root.
    pub fn isomorphism_type(&self) -> Result<IsomorphismType, GraphError> {
        let t = self.combinatorial_type();
        if t.n == 1 {
            return Ok(IsomorphismType::new(t.l2, t.l3, 0));
        }
        let phi = t.phi();
        // six times the free rank
        let six_r = if self.is_cyclically_reduced() {
            6 + phi
        } else {
            if !self.is_reduced()? {
                return Err(GraphError::NotReduced);
            }
            let root = self.vertices[&self.root.ok_or(GraphError::NoRoot)?];
            match (root.has_a(), root.has_b()) {
                (true, false) => 2 + phi,
                (false, true) => 3 + phi,
                _ => return Err(GraphError::NotReduced),
            }
        };
        if six_r < 0 || six_r % 6 != 0 {
            return Err(GraphError::NonIntegralRank(t));
        }
        Ok(IsomorphismType::new(t.l2, t.l3, (six_r / 6) as u32))
    }

    pub fn is_normalized(&self) -> bool {
        self.vertices.keys().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Relabels through the order-preserving bijection onto `1..=n`.
    pub fn normalize(&self) -> Graph {
        if self.is_normalized() {
            return self.clone();
        }
        let index: BTreeMap<Label, Label> =
            self.vertices.keys().enumerate().map(|(i, &v)| (v, i as Label + 1)).collect();
        self.relabel_unchecked(|v| index[&v])
    }

    /// Applies `f` to every label. Fails if `f` is not injective on the
    /// vertex set or produces label 0.
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> Result<Graph, GraphError> {
        let mut seen = BTreeSet::new();
        for v in self.labels() {
            let w = f(v);
            if w == 0 || !seen.insert(w) {
                return Err(GraphError::NonInjectiveRelabel);
            }
        }
        Ok(self.relabel_unchecked(f))
    }

    pub(crate) fn relabel_unchecked(&self, f: impl Fn(Label) -> Label) -> Graph {
        let map_slot = |s: ASlot| match s {
            ASlot::Mate(w) => ASlot::Mate(f(w)),
            other => other,
        };
        let vertices = self
            .vertices
            .iter()
            .map(|(&v, x)| {
                (
                    f(v),
                    Vertex {
                        a: map_slot(x.a),
                        b_loop: x.b_loop,
                        b_next: x.b_next.map(&f),
                        b_prev: x.b_prev.map(&f),
                    },
                )
            })
            .collect();
        Graph { vertices, root: self.root.map(&f) }
    }

    pub fn with_root(&self, root: Option<Label>) -> Result<Graph, GraphError> {
        if let Some(r) = root {
            if !self.contains(r) {
                return Err(GraphError::BadRoot(r));
            }
        }
        Ok(Graph { vertices: self.vertices.clone(), root })
    }

    /// Removes the a-loop at `v` and roots the graph there.
    pub fn unloop_a_and_root(&self, v: Label) -> Option<Graph> {
        if !self.has_a_loop(v) {
            return None;
        }
        let mut g = self.clone();
        g.vertices.get_mut(&v)?.a = ASlot::Free;
        g.root = Some(v);
        Some(g)
    }

    /// Removes the b-loop at `v` and roots the graph there.
    pub fn unloop_b_and_root(&self, v: Label) -> Option<Graph> {
        if !self.has_b_loop(v) {
            return None;
        }
        let mut g = self.clone();
        g.vertices.get_mut(&v)?.b_loop = false;
        g.root = Some(v);
        Some(g)
    }

    // --- crate-internal editing used by moves and samplers ---

    pub(crate) fn insert_vertex(&mut self, v: Label) {
        let prev = self.vertices.insert(v, Vertex::default());
        debug_assert!(prev.is_none(), "vertex {v} already present");
    }

    /// Deletes `v` together with every edge touching it.
    pub(crate) fn remove_vertex(&mut self, v: Label) {
        let Some(x) = self.vertices.remove(&v) else { return };
        if let ASlot::Mate(w) = x.a {
            if let Some(wx) = self.vertices.get_mut(&w) {
                wx.a = ASlot::Free;
            }
        }
        if let Some(w) = x.b_next {
            if let Some(wx) = self.vertices.get_mut(&w) {
                wx.b_prev = None;
            }
        }
        if let Some(u) = x.b_prev {
            if let Some(ux) = self.vertices.get_mut(&u) {
                ux.b_next = None;
            }
        }
        if self.root == Some(v) {
            self.root = None;
        }
    }

    pub(crate) fn set_a_loop(&mut self, v: Label) {
        self.vertices.get_mut(&v).expect("vertex").a = ASlot::Loop;
    }

    pub(crate) fn clear_a(&mut self, v: Label) {
        let x = self.vertices.get_mut(&v).expect("vertex");
        let old = std::mem::take(&mut x.a);
        if let ASlot::Mate(w) = old {
            self.vertices.get_mut(&w).expect("vertex").a = ASlot::Free;
        }
    }

    pub(crate) fn set_a_edge(&mut self, x: Label, y: Label) {
        self.vertices.get_mut(&x).expect("vertex").a = ASlot::Mate(y);
        self.vertices.get_mut(&y).expect("vertex").a = ASlot::Mate(x);
    }

    pub(crate) fn set_b_loop(&mut self, v: Label) {
        self.vertices.get_mut(&v).expect("vertex").b_loop = true;
    }

    pub(crate) fn set_b_arc(&mut self, x: Label, y: Label) {
        self.vertices.get_mut(&x).expect("vertex").b_next = Some(y);
        self.vertices.get_mut(&y).expect("vertex").b_prev = Some(x);
    }

    pub(crate) fn set_root(&mut self, root: Option<Label>) {
        self.root = root;
    }
}
