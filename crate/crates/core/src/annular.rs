//! Annular strand diagrams: closures of `(n, n)` diagrams, their reduced
//! forms, the conjugacy invariant, and the dictionary between directed
//! loops and fixed-point data.
//!
//! Radius runs from the outer boundary (the left edge of the square) to the
//! inner one. Each edge records where it crosses a fixed ray from the outer
//! to the inner boundary; every directed loop crosses it exactly once, so
//! the order of crossing keys along the ray is the radial order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rand::Rng;

use crate::binary::BinaryWord;
use crate::error::{Error, Result};
use crate::graph::{CrossKey, Passage, PortGraph, VertexId, VertexKind};
use crate::plmap::{CantorPoint, FixedInterval, PLMap};
use crate::strand::StrandDiagram;

#[derive(Clone, Debug)]
pub struct AnnularStrandDiagram {
    pub(crate) graph: PortGraph,
    /// Ray position of each free loop.
    pub(crate) free_loops: Vec<CrossKey>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopKind {
    Split,
    Merge,
    Free,
}

/// Whether the edge leaving a loop vertex points away from the hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connection {
    Outward,
    Inward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopInfo {
    pub kind: LoopKind,
    pub size: usize,
    /// Connections around the loop in the order that spells the tail of
    /// the fixed point (outward = 1, inward = 0).
    pub connection_pattern: Vec<Connection>,
    /// Position counted from the outside, over all loops.
    pub radial_index: usize,
    /// Index of the connected component (free loops count as components).
    pub component: usize,
    pub(crate) vertices: Vec<VertexId>,
}

impl LoopInfo {
    /// The repeating block of the fixed point's expansion, up to rotation.
    pub fn tail(&self) -> BinaryWord {
        BinaryWord::new(
            self.connection_pattern
                .iter()
                .map(|c| u8::from(*c == Connection::Outward))
                .collect(),
        )
    }

    /// Slope exponent at the fixed point: `+size` for split loops,
    /// `-size` for merge loops, `0` for free loops.
    pub fn slope_exp(&self) -> i64 {
        match self.kind {
            LoopKind::Split => self.size as i64,
            LoopKind::Merge => -(self.size as i64),
            LoopKind::Free => 0,
        }
    }
}

/// How to cut a reduced annular diagram back into the square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutPath {
    /// Along the reference ray.
    Ray,
    /// Along the reference ray after pushing each listed vertex backwards
    /// across it, in order. A split can be pushed when its input crosses the
    /// ray; a merge when the last crossings of its two inputs are adjacent
    /// on the ray, left input outermost.
    Swept(Vec<VertexId>),
}

/// A radial slot: a free loop or a connected component.
#[derive(Clone, Debug)]
enum Slot {
    Free(CrossKey),
    Component(Vec<VertexId>, CrossKey),
}

impl Slot {
    fn key(&self) -> &CrossKey {
        match self {
            Slot::Free(k) | Slot::Component(_, k) => k,
        }
    }
}

impl AnnularStrandDiagram {
    /// Glues sink `k` to source `k` for every `k`.
    pub fn close(d: &StrandDiagram) -> Result<AnnularStrandDiagram> {
        if d.sources.len() != d.sinks.len() {
            return Err(Error::LengthMismatch(format!(
                "closure needs as many sources as sinks, got {} and {}",
                d.sources.len(),
                d.sinks.len()
            )));
        }
        let mut g = d.graph.clone();
        let mut remove = Vec::new();
        let mut passages = Vec::new();
        for (k, (&i, &o)) in d.sources.iter().zip(&d.sinks).enumerate() {
            remove.push(i);
            remove.push(o);
            passages.push(Passage { from: (o, 0), to: (i, 0), extra: vec![vec![k as u32]] });
        }
        let (free, _) = g.dissolve(&remove, passages, &[]);
        let mut a = AnnularStrandDiagram { graph: g, free_loops: Vec::new() };
        a.add_free_loops(free);
        a.graph.compact();
        Ok(a)
    }

    /// The reduced closure of the diagram of a square dyadic rearrangement.
    pub fn of_element(f: &PLMap) -> Result<AnnularStrandDiagram> {
        if !f.is_square() {
            let (a, b) = f.domain();
            let (c, d) = f.range();
            return Err(Error::NotSquare(format!("{a}, {b}"), format!("{c}, {d}")));
        }
        Ok(Self::close(&StrandDiagram::from_pl_map(f)?)?.reduce())
    }

    fn add_free_loops(&mut self, loops: Vec<Vec<CrossKey>>) {
        for crossings in loops {
            let key = crossings.into_iter().min().expect("a free loop crosses the ray");
            self.free_loops.push(key);
        }
    }

    pub fn graph(&self) -> &PortGraph {
        &self.graph
    }

    pub fn free_loop_count(&self) -> usize {
        self.free_loops.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn reduce(&self) -> AnnularStrandDiagram {
        let mut a = self.clone();
        let free = a.graph.reduce();
        a.add_free_loops(free);
        a.merge_free_loops();
        a.graph.compact();
        a
    }

    pub fn reduce_randomly<R: Rng + ?Sized>(&self, rng: &mut R) -> AnnularStrandDiagram {
        let mut a = self.clone();
        let free = a.graph.reduce_randomly(rng);
        a.add_free_loops(free);
        a.merge_free_loops();
        a.graph.compact();
        a
    }

    /// Concentric free loops with nothing between them are isotopic to one.
    fn merge_free_loops(&mut self) {
        let slots = self.slots();
        let mut keep = Vec::new();
        let mut previous_free = false;
        for s in slots {
            match s {
                Slot::Free(k) => {
                    if !previous_free {
                        keep.push(k);
                    }
                    previous_free = true;
                }
                Slot::Component(..) => previous_free = false,
            }
        }
        self.free_loops = keep;
    }

    pub fn is_reduced(&self) -> bool {
        if !self.graph.is_reduced() {
            return false;
        }
        let slots = self.slots();
        !slots
            .windows(2)
            .any(|w| matches!((&w[0], &w[1]), (Slot::Free(_), Slot::Free(_))))
    }

    /// Components and free loops from the outside in.
    fn slots(&self) -> Vec<Slot> {
        let mut slots: Vec<Slot> = self.free_loops.iter().cloned().map(Slot::Free).collect();
        for comp in self.graph.components() {
            let key = comp
                .iter()
                .flat_map(|&v| self.graph.incident(v))
                .flat_map(|(e, _, _)| self.graph.edge(e).crossings.iter().cloned())
                .min()
                .expect("every component winds around the annulus");
            slots.push(Slot::Component(comp, key));
        }
        slots.sort_by(|a, b| a.key().cmp(b.key()));
        slots
    }

    /// All directed loops, outermost first.
    pub fn classify_loops(&self) -> Result<Vec<LoopInfo>> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let mut out = Vec::new();
        for (ci, slot) in self.slots().into_iter().enumerate() {
            match slot {
                Slot::Free(_) => out.push(LoopInfo {
                    kind: LoopKind::Free,
                    size: 0,
                    connection_pattern: Vec::new(),
                    radial_index: out.len(),
                    component: ci,
                    vertices: Vec::new(),
                }),
                Slot::Component(comp, _) => {
                    for mut l in self.loops_in(&comp)? {
                        l.radial_index = out.len();
                        l.component = ci;
                        out.push(l);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Directed cycles of one component, sorted by ray position.
    fn loops_in(&self, comp: &[VertexId]) -> Result<Vec<LoopInfo>> {
        let g = &self.graph;
        let mut found: Vec<(CrossKey, LoopInfo)> = Vec::new();
        for scc in strongly_connected(g, comp) {
            let set: HashSet<VertexId> = scc.iter().copied().collect();
            let is_cycle = scc.len() > 1
                || g.incident(scc[0]).iter().any(|&(e, is_in, _)| {
                    !is_in && g.edge(e).head.0 == scc[0]
                });
            if !is_cycle {
                continue;
            }
            // Successor along the loop, with the output port used.
            let mut next: HashMap<VertexId, (VertexId, u8, usize)> = HashMap::new();
            for &v in &scc {
                let succ: Vec<_> = g
                    .incident(v)
                    .into_iter()
                    .filter(|&(e, is_in, _)| !is_in && set.contains(&g.edge(e).head.0))
                    .collect();
                if succ.len() != 1 {
                    return Err(Error::InvalidDiagram(
                        "directed cycles of a reduced diagram must be disjoint".into(),
                    ));
                }
                let (e, _, port) = succ[0];
                next.insert(v, (g.edge(e).head.0, port, e));
            }
            let kind = g.kind(scc[0]);
            if scc.iter().any(|&v| g.kind(v) != kind) {
                return Err(Error::InvalidDiagram("loop mixes splits and merges".into()));
            }
            let crossing_edge = scc
                .iter()
                .map(|v| next[v].2)
                .find(|&e| !g.edge(e).crossings.is_empty())
                .ok_or_else(|| Error::InvalidDiagram("loop does not wind around".into()))?;
            let key = g.edge(crossing_edge).crossings.iter().min().unwrap().clone();
            let start = g.edge(crossing_edge).head.0;
            let mut vertices = vec![start];
            let mut ports_out = Vec::new();
            let mut ports_in = Vec::new();
            let mut v = start;
            loop {
                let (w, port, e) = next[&v];
                ports_out.push(port);
                let _ = e;
                v = w;
                if v == start {
                    break;
                }
                vertices.push(v);
            }
            for &u in &vertices {
                // The loop edge entering `u` comes from its predecessor.
                let pred = vertices
                    .iter()
                    .find(|&&p| next[&p].0 == u)
                    .copied()
                    .unwrap();
                ports_in.push(g.edge(next[&pred].2).head.1);
            }
            let (lk, digits) = match kind {
                VertexKind::Split => (LoopKind::Split, ports_out),
                VertexKind::Merge => {
                    let mut d = ports_in;
                    d.reverse();
                    (LoopKind::Merge, d)
                }
                _ => unreachable!("annular diagrams hold only splits and merges"),
            };
            let pattern = digits
                .into_iter()
                .map(|d| if d == 1 { Connection::Outward } else { Connection::Inward })
                .collect();
            found.push((
                key,
                LoopInfo {
                    kind: lk,
                    size: vertices.len(),
                    connection_pattern: pattern,
                    radial_index: 0,
                    component: 0,
                    vertices,
                },
            ));
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(found.into_iter().map(|(_, l)| l).collect())
    }

    /// Fixed intervals read off the loops, located by matching against the
    /// analytic fixed intervals of `element` in order.
    pub fn fixed_intervals_from_loops(&self, element: &PLMap) -> Result<Vec<FixedInterval>> {
        let loops = self.classify_loops()?;
        let analytic = element.fixed_intervals()?;
        if loops.len() != analytic.len() {
            return Err(Error::LoopMismatch(format!(
                "{} loops but {} fixed intervals",
                loops.len(),
                analytic.len()
            )));
        }
        loops
            .iter()
            .zip(analytic)
            .map(|(l, fi)| match (l.kind, fi) {
                (LoopKind::Free, fi @ FixedInterval::Pointwise { .. }) => Ok(fi),
                (LoopKind::Split | LoopKind::Merge, FixedInterval::CantorPoint(cp)) => {
                    let tail = l.tail().primitive_root();
                    if !tail.is_rotation_of(cp.tail()) {
                        return Err(Error::LoopMismatch(format!(
                            "loop spells ({tail}) but the fixed point has tail ({})",
                            cp.tail()
                        )));
                    }
                    Ok(FixedInterval::CantorPoint(CantorPoint {
                        offset: cp.offset,
                        location: cp.location,
                        slope_exp: l.slope_exp(),
                    }))
                }
                (kind, fi) => Err(Error::LoopMismatch(format!("{kind:?} loop against {fi}"))),
            })
            .collect()
    }

    /// Connected components from the outside in, each as its own diagram.
    pub fn components(&self) -> Vec<AnnularStrandDiagram> {
        self.slots()
            .into_iter()
            .map(|s| match s {
                Slot::Free(k) => AnnularStrandDiagram { graph: PortGraph::new(), free_loops: vec![k] },
                Slot::Component(comp, _) => {
                    let keep: HashSet<VertexId> = comp.into_iter().collect();
                    let mut g = self.graph.clone();
                    let drop: Vec<VertexId> =
                        g.vertex_ids().filter(|v| !keep.contains(v)).collect();
                    g.remove_vertices(&drop);
                    g.compact();
                    AnnularStrandDiagram { graph: g, free_loops: Vec::new() }
                }
            })
            .collect()
    }

    /// The conjugacy invariant of a reduced diagram.
    pub fn canonical_key(&self) -> Result<Vec<u8>> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let mut parts = Vec::new();
        for s in self.slots() {
            match s {
                Slot::Free(_) => parts.push("F".to_string()),
                Slot::Component(comp, _) => {
                    let best = comp
                        .iter()
                        .map(|&v| self.graph.encode_from(&[v], &|_| 0, true))
                        .min()
                        .unwrap();
                    let body: Vec<String> = best.iter().map(i64::to_string).collect();
                    parts.push(format!("C{}", body.join(",")));
                }
            }
        }
        Ok(parts.join("|").into_bytes())
    }

    pub fn canonical_key_hex(&self) -> Result<String> {
        Ok(self.canonical_key()?.iter().map(|b| format!("{b:02x}")).collect())
    }

    /// Cuts along `path`, giving a square diagram whose closure is `self`.
    pub fn cut(&self, path: &CutPath) -> Result<StrandDiagram> {
        let mut a = self.clone();
        if let CutPath::Swept(vs) = path {
            for &v in vs {
                a.sweep(v)?;
            }
        }
        a.cut_along_ray()
    }

    fn live_keys(&self) -> Vec<CrossKey> {
        let mut keys: Vec<CrossKey> = self.free_loops.clone();
        for e in self.graph.edge_ids() {
            keys.extend(self.graph.edge(e).crossings.iter().cloned());
        }
        keys.sort();
        keys
    }

    fn sweep(&mut self, v: VertexId) -> Result<()> {
        if !self.graph.is_live(v) {
            return Err(Error::InvalidCut(format!("no vertex {v}")));
        }
        match self.graph.kind(v) {
            VertexKind::Split => {
                let a = self.graph.in_edge(v, 0);
                let Some(c) = self.graph.edge_mut(a).crossings.pop() else {
                    return Err(Error::InvalidCut(format!("input of split {v} does not cross the ray")));
                };
                for bit in 0..2u8 {
                    let e = self.graph.out_edge(v, bit);
                    let mut k = c.clone();
                    k.push(bit as u32);
                    self.graph.edge_mut(e).crossings.insert(0, k);
                }
            }
            VertexKind::Merge => {
                let l = self.graph.in_edge(v, 0);
                let r = self.graph.in_edge(v, 1);
                let (Some(cl), Some(cr)) = (
                    self.graph.edge(l).crossings.last().cloned(),
                    self.graph.edge(r).crossings.last().cloned(),
                ) else {
                    return Err(Error::InvalidCut(format!("inputs of merge {v} do not both cross the ray")));
                };
                let keys = self.live_keys();
                let il = keys.binary_search(&cl).unwrap();
                if keys.get(il + 1) != Some(&cr) {
                    return Err(Error::InvalidCut(format!(
                        "inputs of merge {v} are not adjacent on the ray"
                    )));
                }
                self.graph.edge_mut(l).crossings.pop();
                self.graph.edge_mut(r).crossings.pop();
                let out = self.graph.out_edge(v, 0);
                self.graph.edge_mut(out).crossings.insert(0, cl);
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn cut_along_ray(&self) -> Result<StrandDiagram> {
        let keys = self.live_keys();
        let index: BTreeMap<CrossKey, usize> =
            keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut g = PortGraph::new();
        let mut vmap = HashMap::new();
        for v in self.graph.vertex_ids() {
            vmap.insert(v, g.add_vertex(self.graph.kind(v)));
        }
        let mut sources = vec![usize::MAX; keys.len()];
        let mut sinks = vec![usize::MAX; keys.len()];
        for k in 0..keys.len() {
            sources[k] = g.add_vertex(VertexKind::Source);
            sinks[k] = g.add_vertex(VertexKind::Sink);
        }
        for e in self.graph.edge_ids() {
            let edge = self.graph.edge(e);
            let mut from = (vmap[&edge.tail.0], edge.tail.1);
            for c in &edge.crossings {
                let k = index[c];
                g.add_edge(from, (sinks[k], 0), vec![]);
                from = (sources[k], 0);
            }
            g.add_edge(from, (vmap[&edge.head.0], edge.head.1), vec![]);
        }
        for c in &self.free_loops {
            let k = index[c];
            g.add_edge((sources[k], 0), (sinks[k], 0), vec![]);
        }
        let d = StrandDiagram { graph: g, sources, sinks };
        if !is_acyclic(&d.graph) {
            return Err(Error::InvalidCut("a directed cycle survives the cut".into()));
        }
        Ok(d)
    }

    pub fn to_dot(&self) -> String {
        crate::dot::annular(self)
    }
}

impl fmt::Display for LoopInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LoopKind::Free => write!(f, "free loop"),
            LoopKind::Split => write!(f, "split loop, {} vertices, tail ({})", self.size, self.tail()),
            LoopKind::Merge => write!(f, "merge loop, {} vertices, tail ({})", self.size, self.tail()),
        }
    }
}

/// Decides conjugacy of two square dyadic rearrangements by comparing
/// their reduced annular closures.
pub fn are_conjugate(f: &PLMap, g: &PLMap) -> Result<bool> {
    let a = AnnularStrandDiagram::of_element(f)?;
    let b = AnnularStrandDiagram::of_element(g)?;
    Ok(a.canonical_key()? == b.canonical_key()?)
}

fn is_acyclic(g: &PortGraph) -> bool {
    let ids: Vec<VertexId> = g.vertex_ids().collect();
    strongly_connected(g, &ids).iter().all(|c| {
        c.len() == 1
            && !g
                .incident(c[0])
                .iter()
                .any(|&(e, is_in, _)| !is_in && g.edge(e).head.0 == c[0])
    })
}

/// Strongly connected components of the subgraph on `vertices` (iterative
/// Kosaraju).
fn strongly_connected(g: &PortGraph, vertices: &[VertexId]) -> Vec<Vec<VertexId>> {
    let inside: HashSet<VertexId> = vertices.iter().copied().collect();
    let neighbours = |v: VertexId, forward: bool| -> Vec<VertexId> {
        g.incident(v)
            .into_iter()
            .filter(|&(_, is_in, _)| is_in != forward)
            .map(|(e, _, _)| if forward { g.edge(e).head.0 } else { g.edge(e).tail.0 })
            .filter(|w| inside.contains(w))
            .collect()
    };
    let mut seen = HashSet::new();
    let mut order = Vec::new();
    for &s in vertices {
        if !seen.insert(s) {
            continue;
        }
        let mut stack = vec![(s, neighbours(s, true), 0usize)];
        while let Some((v, ns, i)) = stack.last_mut() {
            if *i < ns.len() {
                let w = ns[*i];
                *i += 1;
                if seen.insert(w) {
                    let nw = neighbours(w, true);
                    stack.push((w, nw, 0));
                }
            } else {
                order.push(*v);
                stack.pop();
            }
        }
    }
    let mut assigned = HashSet::new();
    let mut out = Vec::new();
    for &s in order.iter().rev() {
        if !assigned.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in neighbours(v, false) {
                if assigned.insert(w) {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{four_fixed_point_element, x0, x1};
    use crate::strand::StrandDiagram;

    fn reduced(f: &PLMap) -> AnnularStrandDiagram {
        AnnularStrandDiagram::of_element(f).unwrap()
    }

    fn kinds(a: &AnnularStrandDiagram) -> Vec<(LoopKind, i64)> {
        a.classify_loops().unwrap().iter().map(|l| (l.kind, l.slope_exp())).collect()
    }

    #[test]
    fn trivial_closure_is_a_free_loop() {
        let a = AnnularStrandDiagram::close(&StrandDiagram::trivial(1)).unwrap();
        assert_eq!(a.free_loop_count(), 1);
        assert_eq!(kinds(&a), vec![(LoopKind::Free, 0)]);
        let two = AnnularStrandDiagram::close(&StrandDiagram::trivial(2)).unwrap();
        assert!(!two.is_reduced());
        assert_eq!(two.reduce().free_loop_count(), 1);
        assert!(AnnularStrandDiagram::close(
            &StrandDiagram::from_pl_map(
                &PLMap::from_ints(&[((0, 1), (0, 1)), ((2, 1), (1, 1))]).unwrap()
            )
            .unwrap()
        )
        .is_err());
    }

    #[test]
    fn loops_of_the_generators() {
        assert_eq!(kinds(&reduced(&x0())), vec![(LoopKind::Merge, -1), (LoopKind::Split, 1)]);
        assert_eq!(
            kinds(&reduced(&x1())),
            vec![(LoopKind::Free, 0), (LoopKind::Merge, -1), (LoopKind::Split, 1)]
        );
        assert_eq!(kinds(&reduced(&x0().invert())), vec![(LoopKind::Split, 1), (LoopKind::Merge, -1)]);
        assert_eq!(reduced(&x1()).components().len(), 2);
    }

    #[test]
    fn four_fixed_points_from_loops() {
        let f = four_fixed_point_element();
        let a = reduced(&f);
        let fi = a.fixed_intervals_from_loops(&f).unwrap();
        assert_eq!(fi, f.fixed_intervals().unwrap());
        let slopes: Vec<i64> = fi.iter().map(|x| x.as_cantor_point().unwrap().slope_exp).collect();
        assert_eq!(slopes, vec![-1, 2, -1, 1, -1]);
        assert_eq!(a.components().len(), 2);
    }

    #[test]
    fn keys_detect_conjugacy() {
        let g = x1().compose(&x0()).unwrap();
        let conj = g.invert().compose(&x0()).unwrap().compose(&g).unwrap();
        assert!(are_conjugate(&x0(), &conj).unwrap());
        assert!(!are_conjugate(&x0(), &x1()).unwrap());
        assert!(are_conjugate(&PLMap::identity_unit(1), &PLMap::identity_unit(3)).unwrap());
    }

    #[test]
    fn cutting_round_trips() {
        for f in [x0(), x1(), four_fixed_point_element(), PLMap::identity_unit(1)] {
            let a = reduced(&f);
            let d = a.cut(&CutPath::Ray).unwrap();
            let back = AnnularStrandDiagram::close(&d).unwrap().reduce();
            assert_eq!(back.canonical_key().unwrap(), a.canonical_key().unwrap());
        }
        let a = reduced(&PLMap::identity_unit(1));
        let d = a.cut(&CutPath::Ray).unwrap();
        assert_eq!(d.to_pl_map().unwrap(), PLMap::identity_unit(1));
    }

    #[test]
    fn swept_cuts_give_other_representatives() {
        let a = reduced(&x0());
        let split = a
            .graph
            .vertex_ids()
            .find(|&v| a.graph.kind(v) == VertexKind::Split)
            .unwrap();
        let merge = a
            .graph
            .vertex_ids()
            .find(|&v| a.graph.kind(v) == VertexKind::Merge)
            .unwrap();
        // Only one of the two vertices sits just after the ray.
        let results: Vec<_> = [split, merge]
            .iter()
            .map(|&v| a.cut(&CutPath::Swept(vec![v])))
            .collect();
        assert!(results.iter().any(|r| r.is_ok()));
        for d in results.into_iter().flatten() {
            let back = AnnularStrandDiagram::close(&d).unwrap().reduce();
            assert_eq!(back.canonical_key().unwrap(), a.canonical_key().unwrap());
        }
    }
}
