//! Strand diagrams in the square: `(m, n)` diagrams with ordered sources
//! along the top and sinks along the bottom, read as stack machines on
//! binary expansions.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};
use rand::Rng;

use crate::binary::{BinaryWord, TailWord};
use crate::dyadic::{dyadic_depth, floor_i64, is_multiple_of, log2_exact, pow2, qi, Q};
use crate::error::{Error, Result};
use crate::graph::{PortGraph, VertexId, VertexKind};
use crate::plmap::PLMap;
use crate::tree::Tree;

#[derive(Clone, Debug)]
pub struct StrandDiagram {
    pub(crate) graph: PortGraph,
    pub(crate) sources: Vec<VertexId>,
    pub(crate) sinks: Vec<VertexId>,
}

/// Attaches a split tree below the output `at`; returns the dangling leaf
/// outputs left to right.
pub(crate) fn grow_splits(g: &mut PortGraph, tree: &Tree, at: (VertexId, u8)) -> Vec<(VertexId, u8)> {
    match tree {
        Tree::Leaf => vec![at],
        Tree::Node(l, r) => {
            let s = g.add_vertex(VertexKind::Split);
            g.add_edge(at, (s, 0), vec![]);
            let mut out = grow_splits(g, l, (s, 0));
            out.extend(grow_splits(g, r, (s, 1)));
            out
        }
    }
}

/// Attaches a merge tree above the input `at`; returns the dangling leaf
/// inputs left to right.
pub(crate) fn grow_merges(g: &mut PortGraph, tree: &Tree, at: (VertexId, u8)) -> Vec<(VertexId, u8)> {
    match tree {
        Tree::Leaf => vec![at],
        Tree::Node(l, r) => {
            let m = g.add_vertex(VertexKind::Merge);
            g.add_edge((m, 0), at, vec![]);
            let mut out = grow_merges(g, l, (m, 0));
            out.extend(grow_merges(g, r, (m, 1)));
            out
        }
    }
}

/// One affine piece of a diagram's map: source `source` at binary prefix
/// `input` goes to sink `sink` at prefix `output`.
#[derive(Clone, Debug)]
struct Piece {
    source: usize,
    input: Vec<u8>,
    sink: usize,
    output: Vec<u8>,
}

fn word_start(k: usize, w: &[u8]) -> Q {
    qi(k as i64) + BinaryWord::new(w.to_vec()).value()
}

impl StrandDiagram {
    /// `m` parallel strands.
    pub fn trivial(m: usize) -> StrandDiagram {
        let mut g = PortGraph::new();
        let mut sources = Vec::new();
        let mut sinks = Vec::new();
        for _ in 0..m {
            let i = g.add_vertex(VertexKind::Source);
            let o = g.add_vertex(VertexKind::Sink);
            g.add_edge((i, 0), (o, 0), vec![]);
            sources.push(i);
            sinks.push(o);
        }
        StrandDiagram { graph: g, sources, sinks }
    }

    pub fn from_tree_pair(domain: &Tree, range: &Tree) -> Result<StrandDiagram> {
        Self::from_forests(std::slice::from_ref(domain), std::slice::from_ref(range))
    }

    /// A split forest over a merge forest, leaves matched in order.
    pub fn from_forests(domain: &[Tree], range: &[Tree]) -> Result<StrandDiagram> {
        let dl: usize = domain.iter().map(Tree::leaves).sum();
        let rl: usize = range.iter().map(Tree::leaves).sum();
        if dl != rl {
            return Err(Error::LengthMismatch(format!(
                "domain forest has {dl} leaves, range forest has {rl}"
            )));
        }
        if domain.is_empty() || range.is_empty() {
            return Err(Error::InvalidDiagram("a diagram needs a source and a sink".into()));
        }
        let mut g = PortGraph::new();
        let mut sources = Vec::new();
        let mut outs = Vec::new();
        for t in domain {
            let s = g.add_vertex(VertexKind::Source);
            sources.push(s);
            outs.extend(grow_splits(&mut g, t, (s, 0)));
        }
        let mut sinks = Vec::new();
        let mut ins = Vec::new();
        for t in range {
            let s = g.add_vertex(VertexKind::Sink);
            sinks.push(s);
            ins.extend(grow_merges(&mut g, t, (s, 0)));
        }
        for (o, i) in outs.into_iter().zip(ins) {
            g.add_edge(o, i, vec![]);
        }
        Ok(StrandDiagram { graph: g, sources, sinks })
    }

    pub fn source_count(&self) -> usize {
        self.sources.len()
    }

    pub fn sink_count(&self) -> usize {
        self.sinks.len()
    }

    pub fn graph(&self) -> &PortGraph {
        &self.graph
    }

    pub fn sources(&self) -> &[VertexId] {
        &self.sources
    }

    pub fn sinks(&self) -> &[VertexId] {
        &self.sinks
    }

    pub fn split_count(&self) -> usize {
        self.graph.count_kind(VertexKind::Split)
    }

    pub fn merge_count(&self) -> usize {
        self.graph.count_kind(VertexKind::Merge)
    }

    /// Runs the stack machine: feed `.w` into source `source`.
    pub fn evaluate(&self, source: usize, w: &TailWord) -> Result<(usize, TailWord)> {
        let &start = self
            .sources
            .get(source)
            .ok_or_else(|| Error::InvalidDiagram(format!("no source {source}")))?;
        let mut w = w.clone();
        let mut e = self.graph.out_edge(start, 0);
        loop {
            let (v, port) = self.graph.edge(e).head;
            match self.graph.kind(v) {
                VertexKind::Split => {
                    let d = w.digit(0);
                    w = w.shift(1);
                    e = self.graph.out_edge(v, d);
                }
                VertexKind::Merge => {
                    w = w.prepend(&BinaryWord::new(vec![port]));
                    e = self.graph.out_edge(v, 0);
                }
                VertexKind::Sink => {
                    let j = self.sinks.iter().position(|&s| s == v).expect("sink is listed");
                    return Ok((j, w));
                }
                VertexKind::Source => unreachable!("sources have no inputs"),
            }
        }
    }

    /// Evaluates at a real point `k + .β` of the domain; mirrors the map.
    pub fn evaluate_at(&self, x: &Q) -> Result<Q> {
        let m = self.sources.len() as i64;
        if x < &Q::zero() || x > &qi(m) {
            return Err(Error::OutOfDomain {
                point: crate::dyadic::fmt_q(x),
                lo: "0".into(),
                hi: m.to_string(),
            });
        }
        let (k, frac) = if x == &qi(m) {
            (m - 1, TailWord::one())
        } else {
            let k = floor_i64(x);
            (k, TailWord::from_rational_upper(&(x - qi(k)))?)
        };
        let (j, out) = self.evaluate(k as usize, &frac)?;
        Ok(qi(j as i64) + out.to_rational())
    }

    /// Places `other` below `self`, fusing sink `k` with source `k`.
    pub fn concatenate(&self, other: &StrandDiagram) -> Result<StrandDiagram> {
        if self.sinks.len() != other.sources.len() {
            return Err(Error::LengthMismatch(format!(
                "{} sinks cannot meet {} sources",
                self.sinks.len(),
                other.sources.len()
            )));
        }
        let mut g = self.graph.clone();
        let (vo, _) = g.absorb(&other.graph);
        let mut remove = Vec::new();
        let mut passages = Vec::new();
        for (&a, &b) in self.sinks.iter().zip(&other.sources) {
            remove.push(a);
            remove.push(b + vo);
            passages.push(crate::graph::Passage { from: (a, 0), to: (b + vo, 0), extra: vec![] });
        }
        let (free, _) = g.dissolve(&remove, passages, &[]);
        debug_assert!(free.is_empty());
        let mut d = StrandDiagram {
            graph: g,
            sources: self.sources.clone(),
            sinks: other.sinks.iter().map(|s| s + vo).collect(),
        };
        d.compact();
        Ok(d)
    }

    fn compact(&mut self) {
        let map = self.graph.compact();
        for v in self.sources.iter_mut().chain(self.sinks.iter_mut()) {
            *v = map[v];
        }
    }

    pub fn reduce(&self) -> StrandDiagram {
        let mut d = self.clone();
        let free = d.graph.reduce();
        debug_assert!(free.is_empty(), "square diagrams are acyclic");
        d.compact();
        d
    }

    /// Reduces by applying available reductions in random order.
    pub fn reduce_randomly<R: Rng + ?Sized>(&self, rng: &mut R) -> StrandDiagram {
        let mut d = self.clone();
        d.graph.reduce_randomly(rng);
        d.compact();
        d
    }

    pub fn is_reduced(&self) -> bool {
        self.graph.is_reduced()
    }

    /// The vertical mirror image: splits and merges swap, sources and sinks
    /// swap, every edge reverses.
    pub fn invert(&self) -> StrandDiagram {
        let mut g = PortGraph::new();
        let mut map = HashMap::new();
        for v in self.graph.vertex_ids() {
            map.insert(v, g.add_vertex(self.graph.kind(v).flipped()));
        }
        for e in self.graph.edge_ids() {
            let edge = self.graph.edge(e);
            g.add_edge(
                (map[&edge.head.0], edge.head.1),
                (map[&edge.tail.0], edge.tail.1),
                vec![],
            );
        }
        StrandDiagram {
            graph: g,
            sources: self.sinks.iter().map(|v| map[v]).collect(),
            sinks: self.sources.iter().map(|v| map[v]).collect(),
        }
    }

    /// Walks every maximal path, tracking the digits a split still owes
    /// (read from the input) and those merges have pushed (owed to the output).
    fn pieces(&self) -> Vec<Piece> {
        let sink_index: HashMap<VertexId, usize> =
            self.sinks.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut out = Vec::new();
        for (k, &s) in self.sources.iter().enumerate() {
            let mut stack = vec![(self.graph.out_edge(s, 0), Vec::new(), VecDeque::new())];
            while let Some((e, input, mut pending)) = stack.pop() {
                let (v, port) = self.graph.edge(e).head;
                match self.graph.kind(v) {
                    VertexKind::Split => {
                        if let Some(d) = pending.pop_front() {
                            stack.push((self.graph.out_edge(v, d), input, pending));
                        } else {
                            for d in [1u8, 0] {
                                let mut i2: Vec<u8> = input.clone();
                                i2.push(d);
                                stack.push((self.graph.out_edge(v, d), i2, pending.clone()));
                            }
                        }
                    }
                    VertexKind::Merge => {
                        pending.push_front(port);
                        stack.push((self.graph.out_edge(v, 0), input, pending));
                    }
                    VertexKind::Sink => out.push(Piece {
                        source: k,
                        input,
                        sink: sink_index[&v],
                        output: pending.into_iter().collect(),
                    }),
                    VertexKind::Source => unreachable!(),
                }
            }
        }
        out
    }

    /// The dyadic rearrangement `[0, m] -> [0, n]` the diagram computes.
    pub fn to_pl_map(&self) -> Result<PLMap> {
        let mut pieces: Vec<(Q, Q, Q, Q)> = self
            .pieces()
            .into_iter()
            .map(|p| {
                let x = word_start(p.source, &p.input);
                let y = word_start(p.sink, &p.output);
                let dx = pow2(-(p.input.len() as i64));
                let dy = pow2(-(p.output.len() as i64));
                (x, dx, y, dy)
            })
            .collect();
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        let mut points = vec![(Q::zero(), Q::zero())];
        let mut x = Q::zero();
        let mut y = Q::zero();
        for (px, dx, py, dy) in pieces {
            if px != x || py != y {
                return Err(Error::InvalidDiagram(
                    "diagram does not define a monotone rearrangement".into(),
                ));
            }
            x += dx;
            y += dy;
            points.push((x.clone(), y.clone()));
        }
        if x != qi(self.sources.len() as i64) || y != qi(self.sinks.len() as i64) {
            return Err(Error::InvalidDiagram("pieces do not cover the interval".into()));
        }
        PLMap::new(points)
    }

    /// The reduced diagram of a dyadic rearrangement `[0, m] -> [0, n]`.
    pub fn from_pl_map(f: &PLMap) -> Result<StrandDiagram> {
        f.require_thompson_like()?;
        let (Some(m), Some(n)) = (f.domain_len(), f.range_len()) else {
            return Err(Error::InvalidMap("domain and range must be [0, m] and [0, n]".into()));
        };
        let (dom, ran) = maximal_leaves(f.points(), &qi(m as i64))?;
        let domain = forest_from_leaves(&dom, m)?;
        let range = forest_from_leaves(&ran, n)?;
        Self::from_forests(&domain, &range)
    }

    /// The tree pair `(domain, range)` of an element of F read off its
    /// maximal leaves.
    pub fn tree_pair(f: &PLMap) -> Result<(Tree, Tree)> {
        f.require_thompson_like()?;
        if (f.domain_len(), f.range_len()) != (Some(1), Some(1)) {
            return Err(Error::InvalidMap("tree pairs describe maps [0, 1] -> [0, 1]".into()));
        }
        let (dom, ran) = maximal_leaves(f.points(), &Q::one())?;
        let mut d = forest_from_leaves(&dom, 1)?;
        let mut r = forest_from_leaves(&ran, 1)?;
        Ok((d.remove(0), r.remove(0)))
    }

    /// Compares two reduced diagrams as ordered-port graphs with labelled
    /// sources and sinks.
    pub fn equal_reduced(&self, other: &StrandDiagram) -> Result<bool> {
        if !self.is_reduced() || !other.is_reduced() {
            return Err(Error::NotReduced);
        }
        if self.sources.len() != other.sources.len() || self.sinks.len() != other.sinks.len() {
            return Ok(false);
        }
        Ok(self.encoding() == other.encoding())
    }

    pub(crate) fn encoding(&self) -> Vec<i64> {
        let mut labels = HashMap::new();
        for (i, &v) in self.sources.iter().enumerate() {
            labels.insert(v, i as u32);
        }
        for (i, &v) in self.sinks.iter().enumerate() {
            labels.insert(v, i as u32);
        }
        let label = |v: VertexId| labels.get(&v).copied().unwrap_or(0);
        self.graph.encode_from(&self.sources, &label, false)
    }

    /// Compact text form: one line per vertex, then one per edge.
    pub fn to_text(&self) -> String {
        let mut d = self.clone();
        d.compact();
        let mut s = format!("strand {} {}\n", d.sources.len(), d.sinks.len());
        for v in d.graph.vertex_ids() {
            let kind = match d.graph.kind(v) {
                VertexKind::Source => format!("source {}", d.sources.iter().position(|&x| x == v).unwrap()),
                VertexKind::Sink => format!("sink {}", d.sinks.iter().position(|&x| x == v).unwrap()),
                VertexKind::Split => "split".to_string(),
                VertexKind::Merge => "merge".to_string(),
            };
            s.push_str(&format!("v{v} {kind}\n"));
        }
        for e in d.graph.edge_ids() {
            let edge = d.graph.edge(e);
            s.push_str(&format!(
                "e v{}.{} -> v{}.{}\n",
                edge.tail.0, edge.tail.1, edge.head.0, edge.head.1
            ));
        }
        s
    }

    pub fn to_dot(&self) -> String {
        crate::dot::square(self)
    }
}

/// Greedy maximal leaves of a dyadic rearrangement given by its breakpoints:
/// from each leaf start take the largest standard interval on which the map
/// is affine and whose image is standard. Returns domain and range leaves,
/// matched by index.
pub(crate) fn maximal_leaves(points: &[(Q, Q)], end: &Q) -> Result<(Vec<(Q, Q)>, Vec<(Q, Q)>)> {
    let mut dom = Vec::new();
    let mut ran = Vec::new();
    let mut x = points[0].0.clone();
    let mut seg = 0;
    while &x < end {
        while points[seg + 1].0 <= x {
            seg += 1;
        }
        let (x0, y0) = &points[seg];
        let (x1, y1) = &points[seg + 1];
        let slope = (y1 - y0) / (x1 - x0);
        let e = log2_exact(&slope).ok_or_else(|| Error::NotPowerOfTwo(crate::dyadic::fmt_q(&slope)))?;
        let y = y0 + &slope * (&x - x0);
        let depth = dyadic_depth(&x).ok_or_else(|| Error::NotDyadic(crate::dyadic::fmt_q(&x)))? as i64;
        let mut j = depth.max(e).max(0);
        loop {
            let len = pow2(-j);
            if &(&x + &len) <= x1 && is_multiple_of(&y, &pow2(e - j)) {
                break;
            }
            j += 1;
            if j > depth.max(e).max(0) + 4096 {
                return Err(Error::NotThompsonLike("breakpoints are not dyadic".into()));
            }
        }
        let len = pow2(-j);
        let ylen = pow2(e - j);
        dom.push((x.clone(), &x + &len));
        ran.push((y.clone(), &y + &ylen));
        x += len;
    }
    Ok((dom, ran))
}

/// Groups leaf intervals (sorted or not) into the unit intervals `[k, k+1]`
/// and builds one tree per unit.
pub(crate) fn forest_from_leaves(leaves: &[(Q, Q)], units: u32) -> Result<Vec<Tree>> {
    let mut starts: Vec<Vec<Q>> = vec![Vec::new(); units as usize];
    for (a, _) in leaves {
        let k = floor_i64(a);
        if k < 0 || k >= units as i64 {
            return Err(Error::InvalidMap("leaf outside the interval".into()));
        }
        if a != &qi(k) {
            starts[k as usize].push(a.clone());
        }
    }
    (0..units)
        .map(|k| {
            let cuts = &mut starts[k as usize];
            cuts.sort();
            let lo = qi(k as i64);
            Tree::from_cuts(&lo, &(&lo + Q::one()), cuts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::q;
    use crate::generators::{x0, x1};

    #[test]
    fn tree_pairs_round_trip() {
        let (d, r) = StrandDiagram::tree_pair(&x0()).unwrap();
        assert_eq!((d.to_string(), r.to_string()), ("(*(**))".to_string(), "((**)*)".to_string()));
        let f = x1().compose(&x0()).unwrap();
        let (d, r) = StrandDiagram::tree_pair(&f).unwrap();
        assert_eq!(StrandDiagram::from_tree_pair(&d, &r).unwrap().to_pl_map().unwrap(), f);
    }
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x0_diagram() -> StrandDiagram {
        StrandDiagram::from_tree_pair(&"(*(**))".parse().unwrap(), &"((**)*)".parse().unwrap())
            .unwrap()
    }

    #[test]
    fn tree_pair_of_x0_computes_x0() {
        assert_eq!(x0_diagram().to_pl_map().unwrap(), x0());
        let trivial = StrandDiagram::from_tree_pair(&Tree::Leaf, &Tree::Leaf).unwrap();
        assert_eq!(trivial.to_pl_map().unwrap(), PLMap::identity_unit(1));
        assert!(StrandDiagram::from_tree_pair(&Tree::caret(), &Tree::Leaf).is_err());
    }

    #[test]
    fn stack_machine_on_the_inverse_of_x0() {
        // .00a -> .0a, .01a -> .10a, .1a -> .11a
        let d = x0_diagram().invert();
        let (j, out) = d.evaluate(0, &".01(1)".parse().unwrap()).unwrap();
        assert_eq!(j, 0);
        assert_eq!(out, ".10(1)".parse().unwrap());
        assert_eq!(d.evaluate_at(&q(3, 8)).unwrap(), q(5, 8));
        assert_eq!(d.evaluate_at(&q(1, 4)).unwrap(), q(1, 2));
        let (_, z) = x0_diagram().evaluate(0, &TailWord::zero()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn concatenation_composes() {
        let d = x0_diagram();
        let back = d.concatenate(&d.invert()).unwrap().reduce();
        assert!(back.equal_reduced(&StrandDiagram::trivial(1)).unwrap());
        let d1 = StrandDiagram::from_pl_map(&x1()).unwrap();
        let prod = d.concatenate(&d1).unwrap();
        assert_eq!(prod.to_pl_map().unwrap(), x0().compose(&x1()).unwrap());
        assert!(d.concatenate(&StrandDiagram::trivial(2)).is_err());
    }

    #[test]
    fn pl_map_round_trip() {
        for f in [x0(), x1(), x0().compose(&x1().invert()).unwrap()] {
            let d = StrandDiagram::from_pl_map(&f).unwrap();
            assert!(d.is_reduced());
            assert_eq!(d.to_pl_map().unwrap(), f);
        }
        let g = PLMap::from_ints(&[((0, 1), (0, 1)), ((1, 1), (1, 2)), ((3, 1), (1, 1))]).unwrap();
        let d = StrandDiagram::from_pl_map(&g).unwrap();
        assert_eq!((d.source_count(), d.sink_count()), (3, 1));
        assert_eq!(d.to_pl_map().unwrap(), g);
    }

    #[test]
    fn random_reduction_orders_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d = x0_diagram()
            .concatenate(&x0_diagram().invert())
            .unwrap()
            .concatenate(&StrandDiagram::from_pl_map(&x1()).unwrap())
            .unwrap();
        let a = d.reduce_randomly(&mut rng);
        let b = d.reduce();
        assert!(a.equal_reduced(&b).unwrap());
        assert!(d.equal_reduced(&b).is_err());
    }

    #[test]
    fn double_flip_is_identity() {
        let d = x0_diagram();
        assert!(d.invert().invert().equal_reduced(&d).unwrap());
        assert_eq!(d.invert().to_pl_map().unwrap(), x0().invert());
    }
}
