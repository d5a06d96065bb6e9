//! Mather invariants of one-bump elements: the circle map induced by a
//! high iterate between the linear neighbourhoods of 0 and 1, in
//! piecewise-linear logarithmic coordinates, and its strand-diagram
//! counterpart on the cylinder.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::json;

use crate::annular::{AnnularStrandDiagram, LoopKind};
use crate::dyadic::{floor_i64, floor_log2, fmt_q, pow2, qi, Q};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, PortGraph, VertexId, VertexKind};
use crate::plmap::{plog_map, PLMap, Side};
use crate::strand::{forest_from_leaves, grow_merges, grow_splits, maximal_leaves};

/// A degree-one map `R/mZ -> R/nZ`, stored as its lift on `[0, m]`
/// normalized so that the value at 0 lies in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleMap {
    m: u32,
    n: u32,
    lift: PLMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RotationSide {
    Domain,
    Range,
}

impl CircleMap {
    pub fn new(m: u32, n: u32, lift: PLMap) -> Result<CircleMap> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidMap("circle lengths must be positive".into()));
        }
        let (a, b) = lift.domain();
        let (c, d) = lift.range();
        if !a.is_zero() || b != &qi(m as i64) {
            return Err(Error::InvalidMap(format!("lift must be defined on [0, {m}]")));
        }
        if d - c != qi(n as i64) {
            return Err(Error::InvalidMap(format!("lift must have degree one onto R/{n}Z")));
        }
        lift.require_thompson_like()?;
        let shift = qi(n as i64) * qi(floor_i64(&(c / qi(n as i64))));
        let lift = lift.translated(&Q::zero(), &-shift);
        Ok(CircleMap { m, n, lift })
    }

    pub fn identity(n: u32) -> CircleMap {
        CircleMap { m: n, n, lift: PLMap::identity_unit(n) }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lift(&self) -> &PLMap {
        &self.lift
    }

    /// The lift's value at 0.
    pub fn offset(&self) -> &Q {
        self.lift.range().0
    }

    /// The image of `θ` in `[0, n)`.
    pub fn evaluate(&self, theta: &Q) -> Result<Q> {
        let m = qi(self.m as i64);
        let n = qi(self.n as i64);
        let t = theta - &m * qi(floor_i64(&(theta / &m)));
        let y = self.lift.evaluate(&t)?;
        Ok(&y - &n * qi(floor_i64(&(&y / &n))))
    }

    /// Pre- or post-composition with the rotation by `k`.
    pub fn rotate(&self, k: i64, side: RotationSide) -> CircleMap {
        let m = qi(self.m as i64);
        let n = qi(self.n as i64);
        let lift = match side {
            RotationSide::Range => self.lift.translated(&Q::zero(), &qi(k)),
            RotationSide::Domain => {
                let k = k.rem_euclid(self.m as i64);
                if k == 0 {
                    self.lift.clone()
                } else {
                    let two = PLMap::glue(&[self.lift.clone(), self.lift.translated(&m, &n)])
                        .expect("consecutive periods abut");
                    two.restrict(&qi(k), &(qi(k) + &m))
                        .expect("window lies in two periods")
                        .translated(&-qi(k), &Q::zero())
                }
            }
        };
        CircleMap::new(self.m, self.n, lift).expect("rotations preserve validity")
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let pts: Vec<_> =
            self.lift.points().iter().map(|(x, y)| json!([fmt_q(x), fmt_q(y)])).collect();
        Ok(json!({
            "m": self.m,
            "n": self.n,
            "offset": fmt_q(self.offset()),
            "breakpoints": pts,
        }))
    }

    pub fn from_json_str(s: &str) -> Result<CircleMap> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        let get = |k: &str| {
            v.get(k)
                .and_then(|x| x.as_u64())
                .ok_or_else(|| Error::parse(0, format!("missing integer field {k:?}")))
        };
        let (m, n) = (get("m")? as u32, get("n")? as u32);
        let pts = v
            .get("breakpoints")
            .and_then(|b| b.as_array())
            .ok_or_else(|| Error::parse(0, "missing breakpoints"))?
            .iter()
            .map(|p| {
                let pair = p.as_array().filter(|a| a.len() == 2);
                let pair = pair.ok_or_else(|| Error::parse(0, "breakpoint must be a pair"))?;
                let x = pair[0].as_str().ok_or_else(|| Error::parse(0, "expected \"p/q\""))?;
                let y = pair[1].as_str().ok_or_else(|| Error::parse(0, "expected \"p/q\""))?;
                Ok((crate::dyadic::parse_q(x)?, crate::dyadic::parse_q(y)?))
            })
            .collect::<Result<Vec<_>>>()?;
        CircleMap::new(m, n, PLMap::new(pts)?)
    }
}

impl fmt::Display for CircleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R/{}Z -> R/{}Z, lift {}", self.m, self.n, self.lift)
    }
}

/// True when the two maps agree after integer rotations of domain and range.
pub fn mather_equivalent(c1: &CircleMap, c2: &CircleMap) -> bool {
    if c1.m != c2.m || c1.n != c2.n {
        return false;
    }
    (0..c1.m as i64).any(|k| {
        let r = c1.rotate(k, RotationSide::Domain);
        (0..c1.n as i64).any(|l| &r.rotate(l, RotationSide::Range) == c2)
    })
}

/// Data shared by every iterate count.
struct Bump {
    m: u32,
    n: u32,
    a: i64,
    delta: Q,
}

fn bump_data(f: &PLMap) -> Result<Bump> {
    f.require_thompson_like()?;
    if !f.is_one_bump() || f.domain() != (&Q::zero(), &Q::one()) {
        return Err(Error::NotOneBump("f(x) > x must hold on (0, 1)".into()));
    }
    let m = f.slope_at(&Q::zero(), Side::Right)?;
    let n = -f.slope_at(&Q::one(), Side::Left)?;
    if m < 1 || n < 1 {
        return Err(Error::NotOneBump(format!(
            "slopes at the ends are 2^{m} and 2^{}; need 2^m, 2^-n with m, n >= 1",
            -n
        )));
    }
    let pts = f.points();
    let first = &pts[1].0;
    let last = &pts[pts.len() - 2].0;
    let a = -floor_log2(first);
    let delta = pow2(floor_log2(&(Q::one() - last)));
    Ok(Bump { m: m as u32, n: n as u32, a, delta })
}

/// The least `N` with `f^N` carrying the fundamental domain near 0 into
/// the linear neighbourhood of 1.
pub fn minimal_iterations(f: &PLMap) -> Result<usize> {
    let b = bump_data(f)?;
    let mut t = pow2(-b.a - b.m as i64);
    let bound = Q::one() - &b.delta;
    let mut n = 0;
    while t <= bound {
        t = f.evaluate(&t)?;
        n += 1;
    }
    Ok(n)
}

pub fn mather_invariant(f: &PLMap) -> Result<CircleMap> {
    let n = minimal_iterations(f)?;
    mather_invariant_with_iterations(f, n)
}

/// The invariant computed through `f^iterations`; any count at least
/// [`minimal_iterations`] gives the same map.
pub fn mather_invariant_with_iterations(f: &PLMap, iterations: usize) -> Result<CircleMap> {
    let b = bump_data(f)?;
    let needed = minimal_iterations(f)?;
    if iterations < needed {
        return Err(Error::NotOneBump(format!("need at least {needed} iterations")));
    }
    // θ in [0, m] to the fundamental domain [2^(-a-m), 2^(-a)].
    let base = -b.a - b.m as i64;
    let mut g = PLMap::new((0..=b.m as i64).map(|j| (qi(j), pow2(base + j))).collect())?;
    for _ in 0..iterations {
        let (lo, hi) = g.range();
        let step = f.restrict(lo, hi)?;
        g = g.compose(&step)?;
    }
    // t near 1 to -plog(1 - t).
    let (lo, hi) = g.range();
    let p = plog_map(&(Q::one() - hi), &(Q::one() - lo))?;
    let mut pts: Vec<(Q, Q)> = p.points().iter().map(|(s, y)| (Q::one() - s, -y)).collect();
    pts.reverse();
    let coord = PLMap::new(pts)?;
    let lift = g.compose(&coord)?;
    CircleMap::new(b.m, b.n, lift)
}

/// An `(m, n)` strand diagram on a cylinder: sources and sinks carry a
/// cyclic order, listed here in the direction of increasing angle.
#[derive(Clone, Debug)]
pub struct CylindricalStrandDiagram {
    graph: PortGraph,
    sources: Vec<VertexId>,
    sinks: Vec<VertexId>,
}

impl CylindricalStrandDiagram {
    pub fn source_count(&self) -> usize {
        self.sources.len()
    }

    pub fn sink_count(&self) -> usize {
        self.sinks.len()
    }

    pub fn is_reduced(&self) -> bool {
        self.graph.is_reduced()
    }

    pub fn graph(&self) -> &PortGraph {
        &self.graph
    }

    /// Removes the outer split loop and inner merge loop of the reduced
    /// closure of a one-bump element.
    pub fn from_annular(a: &AnnularStrandDiagram) -> Result<CylindricalStrandDiagram> {
        let loops = a.classify_loops()?;
        let shape: Vec<LoopKind> = loops.iter().map(|l| l.kind).collect();
        if shape != [LoopKind::Split, LoopKind::Merge] || loops[0].component != loops[1].component {
            return Err(Error::NotOneBump(format!("loop structure {shape:?}")));
        }
        let g = a.graph();
        let outer = &loops[0].vertices;
        let inner = &loops[1].vertices;
        let on_loop: HashMap<VertexId, usize> =
            outer.iter().chain(inner).enumerate().map(|(i, &v)| (v, i)).collect();
        let loop_edge = |e: EdgeId| {
            let edge = g.edge(e);
            let (t, h) = (edge.tail.0, edge.head.0);
            (outer.contains(&t) && outer.contains(&h)) || (inner.contains(&t) && inner.contains(&h))
        };
        let mut out = PortGraph::new();
        let mut map = HashMap::new();
        for v in g.vertex_ids() {
            if !on_loop.contains_key(&v) {
                map.insert(v, out.add_vertex(g.kind(v)));
            }
        }
        let mut source_of = HashMap::new();
        for &v in outer {
            source_of.insert(v, out.add_vertex(VertexKind::Source));
        }
        let mut sink_of = HashMap::new();
        for &v in inner {
            sink_of.insert(v, out.add_vertex(VertexKind::Sink));
        }
        for e in g.edge_ids() {
            if loop_edge(e) {
                continue;
            }
            let edge = g.edge(e);
            let tail = match source_of.get(&edge.tail.0) {
                Some(&s) => (s, 0),
                None => (map[&edge.tail.0], edge.tail.1),
            };
            let head = match sink_of.get(&edge.head.0) {
                Some(&s) => (s, 0),
                None => (map[&edge.head.0], edge.head.1),
            };
            out.add_edge(tail, head, vec![]);
        }
        // Increasing angle runs against the flow along both loops.
        let sources = outer.iter().rev().map(|v| source_of[v]).collect();
        let sinks = inner.iter().rev().map(|v| sink_of[v]).collect();
        Ok(CylindricalStrandDiagram { graph: out, sources, sinks })
    }

    /// Reads the circle map, taking source `labeling.0` and sink
    /// `labeling.1` as the base points.
    pub fn to_circle_map(&self, labeling: (usize, usize)) -> Result<CircleMap> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let (m, n) = (self.sources.len(), self.sinks.len());
        let g = &self.graph;
        let mut dom: HashMap<EdgeId, (Q, Q)> = HashMap::new();
        for i in 0..m {
            let s = self.sources[(i + labeling.0) % m];
            let mut stack = vec![(g.out_edge(s, 0), qi(i as i64), Q::one())];
            while let Some((e, lo, len)) = stack.pop() {
                let h = g.edge(e).head.0;
                if g.kind(h) == VertexKind::Split {
                    let half = len / qi(2);
                    stack.push((g.out_edge(h, 1), &lo + &half, half.clone()));
                    stack.push((g.out_edge(h, 0), lo, half));
                } else {
                    dom.insert(e, (lo, len));
                }
            }
        }
        let mut ran: HashMap<EdgeId, (Q, Q)> = HashMap::new();
        for j in 0..n {
            let s = self.sinks[(j + labeling.1) % n];
            let mut stack = vec![(g.in_edge(s, 0), qi(j as i64), Q::one())];
            while let Some((e, lo, len)) = stack.pop() {
                let t = g.edge(e).tail.0;
                if g.kind(t) == VertexKind::Merge {
                    let half = len / qi(2);
                    stack.push((g.in_edge(t, 1), &lo + &half, half.clone()));
                    stack.push((g.in_edge(t, 0), lo, half));
                } else {
                    ran.insert(e, (lo, len));
                }
            }
        }
        if dom.len() != ran.len() || dom.keys().any(|e| !ran.contains_key(e)) {
            return Err(Error::InvalidDiagram("diagram is not a pair of forests".into()));
        }
        let mut leaves: Vec<(Q, Q, Q, Q)> = dom
            .into_iter()
            .map(|(e, (x, dx))| {
                let (y, dy) = ran[&e].clone();
                (x, dx, y, dy)
            })
            .collect();
        leaves.sort_by(|a, b| a.0.cmp(&b.0));
        let nq = qi(n as i64);
        let mut y = leaves[0].2.clone();
        let mut points = vec![(Q::zero(), y.clone())];
        for (x, dx, ly, dy) in leaves {
            let diff = &y - &ly;
            if !(&diff / &nq).is_integer() {
                return Err(Error::InvalidDiagram("leaves are not matched cyclically".into()));
            }
            y += dy;
            points.push((x + dx, y.clone()));
        }
        CircleMap::new(m as u32, n as u32, PLMap::new(points)?)
    }

    /// The reduced cylindrical diagram of a Thompson-like circle map,
    /// with source and sink 0 at angle 0.
    pub fn from_circle_map(c: &CircleMap) -> Result<CylindricalStrandDiagram> {
        let (dom, ran) = maximal_leaves(c.lift.points(), &qi(c.m as i64))?;
        let nq = qi(c.n as i64);
        let ran: Vec<(Q, Q)> = ran
            .into_iter()
            .map(|(a, b)| {
                let k = &nq * qi(floor_i64(&(&a / &nq)));
                (&a - &k, &b - &k)
            })
            .collect();
        let dom_forest = forest_from_leaves(&dom, c.m)?;
        let ran_forest = forest_from_leaves(&ran, c.n)?;
        let mut g = PortGraph::new();
        let mut sources = Vec::new();
        let mut outs = Vec::new();
        for t in &dom_forest {
            let s = g.add_vertex(VertexKind::Source);
            sources.push(s);
            outs.extend(grow_splits(&mut g, t, (s, 0)));
        }
        let mut sinks = Vec::new();
        let mut ins = Vec::new();
        for t in &ran_forest {
            let s = g.add_vertex(VertexKind::Sink);
            sinks.push(s);
            ins.extend(grow_merges(&mut g, t, (s, 0)));
        }
        let mut order: Vec<usize> = (0..ran.len()).collect();
        order.sort_by(|&i, &j| ran[i].0.cmp(&ran[j].0));
        let mut rank = vec![0; ran.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        for (i, o) in outs.into_iter().enumerate() {
            g.add_edge(o, ins[rank[i]], vec![]);
        }
        Ok(CylindricalStrandDiagram { graph: g, sources, sinks })
    }
}

pub fn cylindrical_from_annular(a: &AnnularStrandDiagram) -> Result<CylindricalStrandDiagram> {
    CylindricalStrandDiagram::from_annular(a)
}

pub fn circle_map_from_cylindrical(
    c: &CylindricalStrandDiagram,
    labeling: (usize, usize),
) -> Result<CircleMap> {
    c.to_circle_map(labeling)
}

pub fn cylindrical_from_circle_map(c: &CircleMap) -> Result<CylindricalStrandDiagram> {
    CylindricalStrandDiagram::from_circle_map(c)
}
