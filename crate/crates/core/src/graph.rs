//! Directed graphs with ordered ports, shared by square, annular and
//! cylindrical strand diagrams, plus the local rewriting they all use.
//!
//! Splits have one input and outputs `0` (left) and `1` (right); merges have
//! inputs `0` (left) and `1` (right) and one output. Planar structure lives
//! entirely in this port order. Every edge also carries the ordered list of
//! points where it crosses a fixed reference ray of the annulus; in square
//! diagrams these lists are empty.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;

/// Position of a crossing on the reference ray. Keys compare
/// lexicographically, outermost first, and the set of live keys is kept
/// prefix-free so a key can always be split into two adjacent ones.
pub type CrossKey = Vec<u32>;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Source,
    Sink,
    Split,
    Merge,
}

impl VertexKind {
    pub fn inputs(self) -> usize {
        match self {
            VertexKind::Source => 0,
            VertexKind::Sink | VertexKind::Split => 1,
            VertexKind::Merge => 2,
        }
    }

    pub fn outputs(self) -> usize {
        match self {
            VertexKind::Sink => 0,
            VertexKind::Source | VertexKind::Merge => 1,
            VertexKind::Split => 2,
        }
    }

    pub fn flipped(self) -> VertexKind {
        match self {
            VertexKind::Source => VertexKind::Sink,
            VertexKind::Sink => VertexKind::Source,
            VertexKind::Split => VertexKind::Merge,
            VertexKind::Merge => VertexKind::Split,
        }
    }

    pub(crate) fn tag(self) -> u8 {
        match self {
            VertexKind::Source => b'i',
            VertexKind::Sink => b'o',
            VertexKind::Split => b's',
            VertexKind::Merge => b'm',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    pub ins: [Option<EdgeId>; 2],
    pub outs: [Option<EdgeId>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: (VertexId, u8),
    pub head: (VertexId, u8),
    pub crossings: Vec<CrossKey>,
}

/// A reducible configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redex {
    /// A split whose two outputs feed the two inputs of one merge, in order.
    SplitMerge { split: VertexId, merge: VertexId },
    /// A merge whose output feeds a split.
    MergeSplit { merge: VertexId, split: VertexId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PortGraph {
    vertices: Vec<Option<Vertex>>,
    edges: Vec<Option<Edge>>,
}

/// A pass-through instruction for [`PortGraph::dissolve`]: a signal arriving
/// at input `from` of a removed vertex continues from output `to` of a removed
/// vertex, crossing the ray at `extra` on the way.
pub(crate) struct Passage {
    pub from: (VertexId, u8),
    pub to: (VertexId, u8),
    pub extra: Vec<CrossKey>,
}

impl PortGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> VertexId {
        self.vertices.push(Some(Vertex { kind, ins: [None; 2], outs: [None; 2] }));
        self.vertices.len() - 1
    }

    pub fn add_edge(
        &mut self,
        tail: (VertexId, u8),
        head: (VertexId, u8),
        crossings: Vec<CrossKey>,
    ) -> EdgeId {
        let id = self.edges.len();
        {
            let t = self.vertices[tail.0].as_mut().expect("live tail vertex");
            assert!((tail.1 as usize) < t.kind.outputs(), "bad output port");
            assert!(t.outs[tail.1 as usize].is_none(), "output port already used");
            t.outs[tail.1 as usize] = Some(id);
        }
        {
            let h = self.vertices[head.0].as_mut().expect("live head vertex");
            assert!((head.1 as usize) < h.kind.inputs(), "bad input port");
            assert!(h.ins[head.1 as usize].is_none(), "input port already used");
            h.ins[head.1 as usize] = Some(id);
        }
        self.edges.push(Some(Edge { tail, head, crossings }));
        id
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        self.vertices[v].as_ref().expect("live vertex")
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        self.edges[e].as_ref().expect("live edge")
    }

    pub(crate) fn edge_mut(&mut self, e: EdgeId) -> &mut Edge {
        self.edges[e].as_mut().expect("live edge")
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.vertex(v).kind
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        self.vertices.get(v).is_some_and(|x| x.is_some())
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().enumerate().filter_map(|(i, v)| v.as_ref().map(|_| i))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().enumerate().filter_map(|(i, e)| e.as_ref().map(|_| i))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_some()).count()
    }

    pub fn count_kind(&self, kind: VertexKind) -> usize {
        self.vertex_ids().filter(|&v| self.kind(v) == kind).count()
    }

    /// Output edge on the given port.
    pub fn out_edge(&self, v: VertexId, port: u8) -> EdgeId {
        self.vertex(v).outs[port as usize].expect("connected output")
    }

    pub fn in_edge(&self, v: VertexId, port: u8) -> EdgeId {
        self.vertex(v).ins[port as usize].expect("connected input")
    }

    /// All edges at `v` in the fixed order: inputs by port, then outputs by port.
    pub(crate) fn incident(&self, v: VertexId) -> Vec<(EdgeId, bool, u8)> {
        let vx = self.vertex(v);
        let mut out = Vec::with_capacity(3);
        for p in 0..vx.kind.inputs() {
            if let Some(e) = vx.ins[p] {
                out.push((e, true, p as u8));
            }
        }
        for p in 0..vx.kind.outputs() {
            if let Some(e) = vx.outs[p] {
                out.push((e, false, p as u8));
            }
        }
        out
    }

    /// Copies `other` into `self`, returning the vertex and edge id offsets.
    pub(crate) fn absorb(&mut self, other: &PortGraph) -> (usize, usize) {
        let (vo, eo) = (self.vertices.len(), self.edges.len());
        for v in &other.vertices {
            self.vertices.push(v.as_ref().map(|v| Vertex {
                kind: v.kind,
                ins: v.ins.map(|e| e.map(|e| e + eo)),
                outs: v.outs.map(|e| e.map(|e| e + eo)),
            }));
        }
        for e in &other.edges {
            self.edges.push(e.as_ref().map(|e| Edge {
                tail: (e.tail.0 + vo, e.tail.1),
                head: (e.head.0 + vo, e.head.1),
                crossings: e.crossings.clone(),
            }));
        }
        (vo, eo)
    }

    /// Renumbers vertices and edges densely; returns the vertex renaming.
    pub(crate) fn compact(&mut self) -> HashMap<VertexId, VertexId> {
        let vmap: HashMap<VertexId, VertexId> =
            self.vertex_ids().enumerate().map(|(new, old)| (old, new)).collect();
        let emap: HashMap<EdgeId, EdgeId> =
            self.edge_ids().enumerate().map(|(new, old)| (old, new)).collect();
        let vertices = self
            .vertices
            .iter()
            .flatten()
            .map(|v| Vertex {
                kind: v.kind,
                ins: v.ins.map(|e| e.map(|e| emap[&e])),
                outs: v.outs.map(|e| e.map(|e| emap[&e])),
            })
            .map(Some)
            .collect();
        let edges = self
            .edges
            .iter()
            .flatten()
            .map(|e| Edge {
                tail: (vmap[&e.tail.0], e.tail.1),
                head: (vmap[&e.head.0], e.head.1),
                crossings: e.crossings.clone(),
            })
            .map(Some)
            .collect();
        self.vertices = vertices;
        self.edges = edges;
        vmap
    }

    /// Deletes vertices together with every edge touching them.
    pub(crate) fn remove_vertices(&mut self, remove: &[VertexId]) {
        for &v in remove {
            for (e, _, _) in self.incident(v) {
                if let Some(edge) = self.edges[e].take() {
                    if let Some(t) = self.vertices[edge.tail.0].as_mut() {
                        t.outs[edge.tail.1 as usize] = None;
                    }
                    if let Some(h) = self.vertices[edge.head.0].as_mut() {
                        h.ins[edge.head.1 as usize] = None;
                    }
                }
            }
            self.vertices[v] = None;
        }
    }

    /// Removes `remove` and reconnects the strands through them according
    /// to `passages`. Edges in `consumed` disappear. Strands that close up
    /// without meeting a surviving vertex are returned as free loops (their
    /// crossing lists). Returns the free loops and the new edges.
    pub(crate) fn dissolve(
        &mut self,
        remove: &[VertexId],
        passages: Vec<Passage>,
        consumed: &[EdgeId],
    ) -> (Vec<Vec<CrossKey>>, Vec<EdgeId>) {
        let removed: HashSet<VertexId> = remove.iter().copied().collect();
        let consumed: HashSet<EdgeId> = consumed.iter().copied().collect();
        let pass: HashMap<(VertexId, u8), ((VertexId, u8), Vec<CrossKey>)> =
            passages.into_iter().map(|p| (p.from, (p.to, p.extra))).collect();

        let mut touched: Vec<EdgeId> = Vec::new();
        for &v in remove {
            for (e, _, _) in self.incident(v) {
                if !consumed.contains(&e) && !touched.contains(&e) {
                    touched.push(e);
                }
            }
        }
        touched.sort_unstable();

        // Follow a strand from edge `e` through removed vertices.
        let follow = |g: &PortGraph, start: EdgeId, visited: &mut HashSet<EdgeId>| {
            let mut crossings = g.edge(start).crossings.clone();
            let mut cur = start;
            visited.insert(start);
            loop {
                let head = g.edge(cur).head;
                if !removed.contains(&head.0) {
                    return (crossings, Some(head), cur);
                }
                let (to, extra) = pass.get(&head).expect("passage for every removed input");
                crossings.extend(extra.iter().cloned());
                let next = g.vertex(to.0).outs[to.1 as usize].expect("connected output");
                if next == start {
                    return (crossings, None, cur);
                }
                assert!(visited.insert(next), "strand revisits an edge");
                crossings.extend(g.edge(next).crossings.iter().cloned());
                cur = next;
            }
        };

        let mut visited: HashSet<EdgeId> = HashSet::new();
        let mut new_edges: Vec<((VertexId, u8), (VertexId, u8), Vec<CrossKey>)> = Vec::new();
        let mut free_loops = Vec::new();
        for &e in &touched {
            let tail = self.edge(e).tail;
            if removed.contains(&tail.0) || visited.contains(&e) {
                continue;
            }
            let (crossings, head, _) = follow(self, e, &mut visited);
            let head = head.expect("strand from a surviving vertex ends at one");
            new_edges.push((tail, head, crossings));
        }
        for &e in &touched {
            if visited.contains(&e) {
                continue;
            }
            let (crossings, head, _) = follow(self, e, &mut visited);
            assert!(head.is_none(), "every strand through removed vertices is accounted for");
            free_loops.push(crossings);
        }

        for e in touched.iter().chain(consumed.iter()) {
            if let Some(edge) = self.edges[*e].take() {
                for (v, p, is_out) in [(edge.tail.0, edge.tail.1, true), (edge.head.0, edge.head.1, false)] {
                    if let Some(vx) = self.vertices[v].as_mut() {
                        if is_out {
                            vx.outs[p as usize] = None;
                        } else {
                            vx.ins[p as usize] = None;
                        }
                    }
                }
            }
        }
        for &v in remove {
            self.vertices[v] = None;
        }
        let ids = new_edges
            .into_iter()
            .map(|(t, h, c)| self.add_edge(t, h, c))
            .collect();
        (free_loops, ids)
    }

    /// Checks whether a reduction is available at `v`.
    pub fn redex_at(&self, v: VertexId) -> Option<Redex> {
        if !self.is_live(v) {
            return None;
        }
        match self.kind(v) {
            VertexKind::Split => {
                let a = self.vertex(v).ins[0]?;
                let tail = self.edge(a).tail.0;
                if self.kind(tail) == VertexKind::Merge {
                    return Some(Redex::MergeSplit { merge: tail, split: v });
                }
                self.split_merge_at(v)
            }
            VertexKind::Merge => {
                let out = self.vertex(v).outs[0]?;
                let head = self.edge(out).head.0;
                if self.kind(head) == VertexKind::Split {
                    return Some(Redex::MergeSplit { merge: v, split: head });
                }
                let l = self.vertex(v).ins[0]?;
                let tail = self.edge(l).tail.0;
                if self.kind(tail) == VertexKind::Split {
                    return self.split_merge_at(tail);
                }
                None
            }
            _ => None,
        }
    }

    fn split_merge_at(&self, s: VertexId) -> Option<Redex> {
        let l = self.edge(self.vertex(s).outs[0]?);
        let r = self.edge(self.vertex(s).outs[1]?);
        let m = l.head.0;
        if self.kind(m) == VertexKind::Merge
            && l.head == (m, 0)
            && r.head == (m, 1)
            && l.crossings.len() == r.crossings.len()
        {
            Some(Redex::SplitMerge { split: s, merge: m })
        } else {
            None
        }
    }

    pub fn redexes(&self) -> Vec<Redex> {
        let mut out = Vec::new();
        for v in self.vertex_ids() {
            if let Some(r) = self.redex_at(v) {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.vertex_ids().all(|v| self.redex_at(v).is_none())
    }

    /// Applies one reduction, returning free loops it closed off and the
    /// vertices whose neighbourhood changed.
    pub fn apply(&mut self, redex: Redex) -> (Vec<Vec<CrossKey>>, Vec<VertexId>) {
        let (free, new_edges) = match redex {
            Redex::SplitMerge { split, merge } => {
                let l = self.out_edge(split, 0);
                let r = self.out_edge(split, 1);
                let extra = self.edge(l).crossings.clone();
                self.dissolve(
                    &[split, merge],
                    vec![Passage { from: (split, 0), to: (merge, 0), extra }],
                    &[l, r],
                )
            }
            Redex::MergeSplit { merge, split } => {
                let e = self.out_edge(merge, 0);
                let keys = self.edge(e).crossings.clone();
                let suffixed = |bit: u32| {
                    keys.iter()
                        .map(|k| {
                            let mut k = k.clone();
                            k.push(bit);
                            k
                        })
                        .collect::<Vec<_>>()
                };
                self.dissolve(
                    &[merge, split],
                    vec![
                        Passage { from: (merge, 0), to: (split, 0), extra: suffixed(0) },
                        Passage { from: (merge, 1), to: (split, 1), extra: suffixed(1) },
                    ],
                    &[e],
                )
            }
        };
        let mut touched = Vec::new();
        for e in new_edges {
            let edge = self.edge(e);
            touched.push(edge.tail.0);
            touched.push(edge.head.0);
        }
        (free, touched)
    }

    /// Reduces to normal form with a worklist. Returns the free loops closed
    /// off along the way.
    pub fn reduce(&mut self) -> Vec<Vec<CrossKey>> {
        let mut free = Vec::new();
        let mut work: VecDeque<VertexId> = self.vertex_ids().collect();
        while let Some(v) = work.pop_front() {
            if let Some(r) = self.redex_at(v) {
                let (f, touched) = self.apply(r);
                free.extend(f);
                work.extend(touched);
            }
        }
        free
    }

    /// Reduces by repeatedly applying a uniformly random available redex.
    pub fn reduce_randomly<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Vec<Vec<CrossKey>> {
        let mut free = Vec::new();
        loop {
            let options = self.redexes();
            if options.is_empty() {
                return free;
            }
            let pick = options[rng.gen_range(0..options.len())];
            free.extend(self.apply(pick).0);
        }
    }

    /// Weakly connected components, each sorted by vertex id.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in self.vertex_ids() {
            if !seen.insert(v) {
                continue;
            }
            let mut comp = vec![v];
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for (e, is_in, _) in self.incident(u) {
                    let edge = self.edge(e);
                    let w = if is_in { edge.tail.0 } else { edge.head.0 };
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Canonical serialization of the component containing `start`, reached
    /// by breadth-first search in port order. `label` supplies extra data per
    /// vertex (e.g. a source index). Windings are gauge-fixed so that tree
    /// edges carry winding zero, making the encoding independent of where
    /// the reference ray sits.
    pub(crate) fn encode_from(
        &self,
        starts: &[VertexId],
        label: &dyn Fn(VertexId) -> u32,
        with_winding: bool,
    ) -> Vec<i64> {
        let mut id: HashMap<VertexId, usize> = HashMap::new();
        let mut potential: HashMap<VertexId, i64> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &s in starts {
            if id.contains_key(&s) {
                continue;
            }
            id.insert(s, order.len());
            potential.insert(s, 0);
            order.push(s);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for (e, is_in, _) in self.incident(u) {
                    let edge = self.edge(e);
                    let w = edge.crossings.len() as i64;
                    let (other, pot) = if is_in {
                        (edge.tail.0, potential[&u] - w)
                    } else {
                        (edge.head.0, potential[&u] + w)
                    };
                    if let std::collections::hash_map::Entry::Vacant(slot) = id.entry(other) {
                        slot.insert(order.len());
                        potential.insert(other, pot);
                        order.push(other);
                        queue.push_back(other);
                    }
                }
            }
        }
        let mut code = vec![order.len() as i64];
        for &v in &order {
            let vx = self.vertex(v);
            code.push(vx.kind.tag() as i64);
            code.push(label(v) as i64);
            for (e, is_in, _) in self.incident(v) {
                if is_in {
                    continue;
                }
                let edge = self.edge(e);
                code.push(id[&edge.head.0] as i64);
                code.push(edge.head.1 as i64);
                if with_winding {
                    let w = edge.crossings.len() as i64;
                    code.push(w + potential[&edge.tail.0] - potential[&edge.head.0]);
                }
            }
        }
        code
    }
}
