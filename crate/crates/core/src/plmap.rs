//! Exact piecewise-linear homeomorphisms between closed intervals, with the
//! Thompson-groupoid operations, fixed-point analysis and the piecewise-linear
//! logarithm.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binary::TailWord;
use crate::dyadic::{self, fmt_q, is_dyadic, log2_exact, pow2, qi, Q};
use crate::error::{Error, Result};

/// Which side of a point a one-sided quantity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// An increasing piecewise-linear homeomorphism `[a, b] -> [c, d]`, stored
/// as its breakpoint list with redundant (collinear) points removed, so that
/// equality of maps is structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLMap {
    points: Vec<(Q, Q)>,
}

impl PLMap {
    pub fn new(points: Vec<(Q, Q)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMap("at least two breakpoints are required".into()));
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::InvalidMap(format!(
                    "breakpoints must be strictly increasing: ({}, {}) then ({}, {})",
                    fmt_q(&w[0].0),
                    fmt_q(&w[0].1),
                    fmt_q(&w[1].0),
                    fmt_q(&w[1].1)
                )));
            }
        }
        Ok(Self::normalized(points))
    }

    fn normalized(points: Vec<(Q, Q)>) -> Self {
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(points.len());
        for p in points {
            if let Some(last) = out.last() {
                if last.0 == p.0 {
                    continue;
                }
            }
            while out.len() >= 2 {
                let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
                let s1 = (&b.1 - &a.1) / (&b.0 - &a.0);
                let s2 = (&p.1 - &b.1) / (&p.0 - &b.0);
                if s1 == s2 {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        PLMap { points: out }
    }

    pub fn from_ints(points: &[((i64, i64), (i64, i64))]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|&((xn, xd), (yn, yd))| (dyadic::q(xn, xd), dyadic::q(yn, yd)))
                .collect(),
        )
    }

    /// The identity on `[a, b]`.
    pub fn identity(a: Q, b: Q) -> Self {
        assert!(a < b, "identity needs a nondegenerate interval");
        PLMap { points: vec![(a.clone(), a), (b.clone(), b)] }
    }

    pub fn identity_unit(m: u32) -> Self {
        Self::identity(Q::zero(), qi(m as i64))
    }

    pub fn points(&self) -> &[(Q, Q)] {
        &self.points
    }

    pub fn domain(&self) -> (&Q, &Q) {
        (&self.points[0].0, &self.points[self.points.len() - 1].0)
    }

    pub fn range(&self) -> (&Q, &Q) {
        (&self.points[0].1, &self.points[self.points.len() - 1].1)
    }

    /// Integer `m` when the domain is `[0, m]`.
    pub fn domain_len(&self) -> Option<u32> {
        anchored_len(self.domain())
    }

    /// Integer `n` when the range is `[0, n]`.
    pub fn range_len(&self) -> Option<u32> {
        anchored_len(self.range())
    }

    pub fn is_square(&self) -> bool {
        self.domain() == self.range()
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2 && self.points.iter().all(|(x, y)| x == y)
    }

    pub fn slopes(&self) -> Vec<Q> {
        self.points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    /// Every slope a power of two and every breakpoint dyadic.
    pub fn is_thompson_like(&self) -> bool {
        self.slopes().iter().all(|s| log2_exact(s).is_some())
            && self.points.iter().all(|(x, y)| is_dyadic(x) && is_dyadic(y))
    }

    pub fn require_thompson_like(&self) -> Result<()> {
        if self.is_thompson_like() {
            Ok(())
        } else {
            Err(Error::NotThompsonLike(self.to_string()))
        }
    }

    /// Index of the segment containing `x`, preferring the one on `side`.
    fn segment_index(&self, x: &Q, side: Side) -> Option<usize> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return None;
        }
        let n = self.points.len() - 1;
        // First breakpoint index i with points[i].x >= x.
        let i = self.points.partition_point(|(px, _)| px < x);
        match side {
            Side::Left => {
                if i == 0 {
                    None
                } else {
                    Some(i - 1)
                }
            }
            Side::Right => {
                if i < self.points.len() && &self.points[i].0 == x {
                    if i == n {
                        None
                    } else {
                        Some(i)
                    }
                } else {
                    Some(i - 1)
                }
            }
        }
    }

    pub fn evaluate(&self, x: &Q) -> Result<Q> {
        let seg = self
            .segment_index(x, Side::Right)
            .or_else(|| self.segment_index(x, Side::Left))
            .ok_or_else(|| self.out_of_domain(x))?;
        let (x0, y0) = &self.points[seg];
        let (x1, y1) = &self.points[seg + 1];
        Ok(y0 + (x - x0) * (y1 - y0) / (x1 - x0))
    }

    fn out_of_domain(&self, x: &Q) -> Error {
        let (lo, hi) = self.domain();
        Error::OutOfDomain { point: fmt_q(x), lo: fmt_q(lo), hi: fmt_q(hi) }
    }

    /// Slope of the segment on the given side of `x`.
    pub fn slope_on_side(&self, x: &Q, side: Side) -> Result<Q> {
        let seg = self.segment_index(x, side).ok_or_else(|| self.out_of_domain(x))?;
        let (x0, y0) = &self.points[seg];
        let (x1, y1) = &self.points[seg + 1];
        Ok((y1 - y0) / (x1 - x0))
    }

    /// Exponent `e` of the slope `2^e` on the given side of `x`.
    pub fn slope_at(&self, x: &Q, side: Side) -> Result<i64> {
        let s = self.slope_on_side(x, side)?;
        log2_exact(&s).ok_or_else(|| Error::NotPowerOfTwo(fmt_q(&s)))
    }

    pub fn invert(&self) -> PLMap {
        PLMap { points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }

    /// `g ∘ self`: apply `self` first, then `g`.
    pub fn compose(&self, g: &PLMap) -> Result<PLMap> {
        if self.range() != g.domain() {
            let (a, b) = self.range();
            let (c, d) = g.domain();
            return Err(Error::LengthMismatch(format!(
                "range [{}, {}] does not match domain [{}, {}]",
                fmt_q(a),
                fmt_q(b),
                fmt_q(c),
                fmt_q(d)
            )));
        }
        let inv = self.invert();
        let mut xs: Vec<Q> = self.points.iter().map(|(x, _)| x.clone()).collect();
        for (gx, _) in &g.points {
            xs.push(inv.evaluate(gx)?);
        }
        xs.sort();
        xs.dedup();
        let mut pts = Vec::with_capacity(xs.len());
        for x in xs {
            let y = g.evaluate(&self.evaluate(&x)?)?;
            pts.push((x, y));
        }
        Ok(Self::normalized(pts))
    }

    /// The restriction to `[a, b]`, a subinterval of the domain.
    pub fn restrict(&self, a: &Q, b: &Q) -> Result<PLMap> {
        let (lo, hi) = self.domain();
        if a >= b || a < lo || b > hi {
            return Err(Error::InvalidMap(format!(
                "cannot restrict to [{}, {}]",
                fmt_q(a),
                fmt_q(b)
            )));
        }
        let mut pts = vec![(a.clone(), self.evaluate(a)?)];
        pts.extend(self.points.iter().filter(|(x, _)| x > a && x < b).cloned());
        pts.push((b.clone(), self.evaluate(b)?));
        Ok(Self::normalized(pts))
    }

    /// Translates the graph by `dx` horizontally and `dy` vertically.
    pub fn translated(&self, dx: &Q, dy: &Q) -> PLMap {
        PLMap {
            points: self.points.iter().map(|(x, y)| (x + dx, y + dy)).collect(),
        }
    }

    /// Concatenates maps whose domains and ranges abut end to end.
    pub fn glue(pieces: &[PLMap]) -> Result<PLMap> {
        let mut pts: Vec<(Q, Q)> = Vec::new();
        for p in pieces {
            if let Some(last) = pts.last() {
                if *last != p.points[0] {
                    return Err(Error::InvalidMap("pieces do not abut".into()));
                }
                pts.pop();
            }
            pts.extend(p.points.iter().cloned());
        }
        PLMap::new(pts)
    }

    /// `f(x) > x` on the open interior of a square map.
    pub fn is_one_bump(&self) -> bool {
        if !self.is_square() || self.points.len() < 3 {
            return false;
        }
        // f(x) - x is linear between breakpoints and vanishes at both ends.
        self.points[1..self.points.len() - 1].iter().all(|(x, y)| y > x)
    }

    /// The fixed-point structure in increasing order: maximal intervals of
    /// fixed points, and isolated fixed points as one-sided Cantor points.
    pub fn fixed_intervals(&self) -> Result<Vec<FixedInterval>> {
        if !self.is_square() {
            let (a, b) = self.domain();
            let (c, d) = self.range();
            return Err(Error::NotSquare(
                format!("{}, {}", fmt_q(a), fmt_q(b)),
                format!("{}, {}", fmt_q(c), fmt_q(d)),
            ));
        }
        let mut out = Vec::new();
        let n = self.points.len() - 1;
        let mut i = 0;
        while i < n {
            let (x0, y0) = &self.points[i];
            let (x1, y1) = &self.points[i + 1];
            if x0 == y0 && x1 == y1 {
                // Adjacent identity segments cannot occur after normalization.
                out.push(FixedInterval::Pointwise { start: x0.clone(), end: x1.clone() });
                i += 1;
                continue;
            }
            let slope = (y1 - y0) / (x1 - x0);
            if slope.is_one() {
                i += 1;
                continue;
            }
            let p = (y0 - &slope * x0) / (Q::one() - &slope);
            if &p < x0 || &p > x1 {
                i += 1;
                continue;
            }
            let e = log2_exact(&slope).ok_or_else(|| Error::NotPowerOfTwo(fmt_q(&slope)))?;
            if &p == x0 {
                out.push(FixedInterval::CantorPoint(CantorPoint::at(&p, Side::Right, e)));
            } else if &p == x1 {
                out.push(FixedInterval::CantorPoint(CantorPoint::at(&p, Side::Left, e)));
            } else if is_dyadic(&p) {
                out.push(FixedInterval::CantorPoint(CantorPoint::at(&p, Side::Left, e)));
                out.push(FixedInterval::CantorPoint(CantorPoint::at(&p, Side::Right, e)));
            } else {
                out.push(FixedInterval::CantorPoint(CantorPoint::at(&p, Side::Right, e)));
            }
            i += 1;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let (m, n) = match (self.domain_len(), self.range_len()) {
            (Some(m), Some(n)) => (m, n),
            _ => {
                return Err(Error::InvalidMap(
                    "JSON form needs domain [0, m] and range [0, n]".into(),
                ))
            }
        };
        let json = PLMapJson {
            domain: m,
            range: n,
            breakpoints: self.points.iter().map(|(x, y)| [fmt_q(x), fmt_q(y)]).collect(),
        };
        Ok(serde_json::to_value(json).expect("serializable"))
    }

    pub fn from_json_str(s: &str) -> Result<PLMap> {
        let json: PLMapJson = serde_json::from_str(s).map_err(|e| {
            Error::parse(e.column().saturating_sub(1), format!("invalid PL map JSON: {e}"))
        })?;
        let mut pts = Vec::with_capacity(json.breakpoints.len());
        for [x, y] in &json.breakpoints {
            pts.push((dyadic::parse_q(x)?, dyadic::parse_q(y)?));
        }
        let f = PLMap::new(pts)?;
        if f.domain_len() != Some(json.domain) || f.range_len() != Some(json.range) {
            return Err(Error::InvalidMap(format!(
                "breakpoints do not run from (0,0) to ({}, {})",
                json.domain, json.range
            )));
        }
        Ok(f)
    }
}

fn anchored_len((a, b): (&Q, &Q)) -> Option<u32> {
    if a.is_zero() && b.is_integer() && b.is_positive() {
        u32::try_from(b.to_integer()).ok()
    } else {
        None
    }
}

#[derive(Serialize, Deserialize)]
struct PLMapJson {
    domain: u32,
    range: u32,
    breakpoints: Vec<[String; 2]>,
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(x, y)| format!("({}, {})", fmt_q(x), fmt_q(y)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An isolated fixed point seen from one side: the point
/// `offset + .location`, with slope `2^slope_exp` on that side. Interior
/// dyadic points appear twice, once per side, distinguished by which of the
/// two binary expansions `location` holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CantorPoint {
    pub offset: i64,
    pub location: TailWord,
    pub slope_exp: i64,
}

impl CantorPoint {
    fn at(p: &Q, side: Side, slope_exp: i64) -> CantorPoint {
        let mut offset = dyadic::floor_i64(p);
        if side == Side::Left && p.is_integer() {
            offset -= 1;
        }
        let frac = p - qi(offset);
        let expansions = TailWord::from_rational(&frac).expect("fraction lies in [0, 1]");
        let location = match side {
            Side::Left => expansions[0].clone(),
            Side::Right => expansions[expansions.len() - 1].clone(),
        };
        CantorPoint { offset, location, slope_exp }
    }

    pub fn value(&self) -> Q {
        qi(self.offset) + self.location.to_rational()
    }

    /// The eventual period of the binary expansion.
    pub fn tail(&self) -> &crate::binary::BinaryWord {
        self.location.period()
    }

    pub fn is_attracting(&self) -> bool {
        self.slope_exp < 0
    }
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "point {} + {} = {}  slope 2^{}  tail ({})",
            self.offset,
            self.location,
            fmt_q(&self.value()),
            self.slope_exp,
            self.tail()
        )
    }
}

/// One entry of the ordered fixed-point structure of a square map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FixedInterval {
    CantorPoint(CantorPoint),
    Pointwise { start: Q, end: Q },
}

impl FixedInterval {
    pub fn as_cantor_point(&self) -> Option<&CantorPoint> {
        match self {
            FixedInterval::CantorPoint(c) => Some(c),
            FixedInterval::Pointwise { .. } => None,
        }
    }
}

impl fmt::Display for FixedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedInterval::CantorPoint(c) => write!(f, "{c}"),
            FixedInterval::Pointwise { start, end } => {
                write!(f, "interval [{}, {}]", fmt_q(start), fmt_q(end))
            }
        }
    }
}

/// Piecewise-linear logarithm: `[2^k, 2^(k+1)]` maps linearly onto `[k, k+1]`.
pub fn plog(x: &Q) -> Result<Q> {
    if !x.is_positive() {
        return Err(Error::OutOfDomain { point: fmt_q(x), lo: "0/1".into(), hi: "inf".into() });
    }
    let k = dyadic::floor_log2(x);
    Ok(qi(k) + x * pow2(-k) - Q::one())
}

pub fn plog_inv(y: &Q) -> Q {
    let k = dyadic::floor_i64(y);
    pow2(k) * (Q::one() + y - qi(k))
}

/// `plog` restricted to `[lo, hi] ⊂ (0, ∞)` as an explicit map.
pub fn plog_map(lo: &Q, hi: &Q) -> Result<PLMap> {
    if !lo.is_positive() || lo >= hi {
        return Err(Error::InvalidMap("plog needs 0 < lo < hi".into()));
    }
    let mut pts = vec![(lo.clone(), plog(lo)?)];
    let mut k = dyadic::floor_log2(lo) + 1;
    while &pow2(k) < hi {
        pts.push((pow2(k), qi(k)));
        k += 1;
    }
    pts.push((hi.clone(), plog(hi)?));
    PLMap::new(pts)
}

/// A Thompson-like homeomorphism `[a, b] -> [c, d]` between intervals with
/// dyadic endpoints: both sides are cut greedily into standard dyadic
/// intervals, the shorter list is refined by halving its last piece, and the
/// pieces are matched in order.
pub fn dyadic_rearrangement(a: &Q, b: &Q, c: &Q, d: &Q) -> Result<PLMap> {
    for x in [a, b, c, d] {
        dyadic::require_dyadic(x)?;
    }
    if a >= b || c >= d {
        return Err(Error::InvalidMap("degenerate interval".into()));
    }
    let mut dom = dyadic::standard_decomposition(a, b);
    let mut ran = dyadic::standard_decomposition(c, d);
    let halve_last = |cuts: &mut Vec<Q>| {
        let n = cuts.len();
        let mid = (&cuts[n - 2] + &cuts[n - 1]) / qi(2);
        cuts.insert(n - 1, mid);
    };
    while dom.len() < ran.len() {
        halve_last(&mut dom);
    }
    while ran.len() < dom.len() {
        halve_last(&mut ran);
    }
    PLMap::new(dom.into_iter().zip(ran).collect())
}

/// A Thompson-like map `[α, β] -> [0, 1]`.
pub fn rescale_to_unit(alpha: &Q, beta: &Q) -> Result<PLMap> {
    dyadic_rearrangement(alpha, beta, &Q::zero(), &Q::one())
}

/// The cut points of a square map: its endpoints, isolated dyadic fixed
/// points, and endpoints of maximal intervals of fixed points.
pub fn cut_points(f: &PLMap) -> Result<Vec<Q>> {
    let mut cuts: Vec<Q> = Vec::new();
    let (a, b) = f.domain();
    cuts.push(a.clone());
    for fi in f.fixed_intervals()? {
        match fi {
            FixedInterval::Pointwise { start, end } => {
                cuts.push(start);
                cuts.push(end);
            }
            FixedInterval::CantorPoint(c) => {
                if c.location.is_dyadic() {
                    cuts.push(c.value());
                }
            }
        }
    }
    cuts.push(b.clone());
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    cuts.dedup();
    Ok(cuts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::q;
    use crate::generators::{four_fixed_point_element, x0, x1};

    fn tw(s: &str) -> TailWord {
        s.parse().unwrap()
    }

    #[test]
    fn normalization_drops_collinear_points() {
        let f = PLMap::from_ints(&[((0, 1), (0, 1)), ((1, 2), (1, 2)), ((1, 1), (1, 1))]).unwrap();
        assert_eq!(f, PLMap::identity_unit(1));
        assert!(PLMap::from_ints(&[((0, 1), (0, 1)), ((0, 1), (1, 1))]).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let f = x0();
        assert_eq!(f.compose(&f.invert()).unwrap(), PLMap::identity_unit(1));
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff.slope_at(&Q::zero(), Side::Right).unwrap(), -2);
        assert_eq!(ff.evaluate(&q(1, 8)).unwrap(), q(1, 32));
        assert!(ff.is_thompson_like());
        assert_eq!(f.invert().evaluate(&q(1, 4)).unwrap(), q(1, 2));
        assert_eq!(f.invert().invert(), f);
        assert_eq!(PLMap::identity_unit(1).invert(), PLMap::identity_unit(1));
        let g = PLMap::identity_unit(2);
        assert!(f.compose(&g).is_err());
    }

    #[test]
    fn evaluation() {
        // .01α ↦ .10α sends .011 = 3/8 to .101 = 5/8.
        let f = x0().invert();
        assert_eq!(f.evaluate(&q(3, 8)).unwrap(), q(5, 8));
        assert_eq!(x0().evaluate(&Q::zero()).unwrap(), Q::zero());
        assert_eq!(x0().evaluate(&q(3, 4)).unwrap(), q(1, 2));
        assert!(x0().evaluate(&q(5, 4)).is_err());
    }

    #[test]
    fn fixed_points_of_identity_and_x0() {
        assert_eq!(
            PLMap::identity_unit(1).fixed_intervals().unwrap(),
            vec![FixedInterval::Pointwise { start: qi(0), end: qi(1) }]
        );
        let fx = x0().fixed_intervals().unwrap();
        assert_eq!(
            fx,
            vec![
                FixedInterval::CantorPoint(CantorPoint { offset: 0, location: tw(".(0)"), slope_exp: -1 }),
                FixedInterval::CantorPoint(CantorPoint { offset: 0, location: tw(".(1)"), slope_exp: 1 }),
            ]
        );
        let f1 = x1().fixed_intervals().unwrap();
        assert_eq!(f1.len(), 3);
        assert_eq!(f1[0], FixedInterval::Pointwise { start: qi(0), end: q(1, 2) });
        assert_eq!(f1[1].as_cantor_point().unwrap().location, tw(".1(0)"));
    }

    #[test]
    fn fixed_points_of_the_four_point_element() {
        let f = four_fixed_point_element();
        assert!(f.is_thompson_like());
        let fx = f.fixed_intervals().unwrap();
        let got: Vec<(Q, i64, String)> = fx
            .iter()
            .map(|fi| {
                let c = fi.as_cantor_point().unwrap();
                (c.value(), c.slope_exp, c.location.to_string())
            })
            .collect();
        assert_eq!(
            got,
            vec![
                (qi(0), -1, ".(0)".to_string()),
                (q(1, 3), 2, ".(01)".to_string()),
                (q(3, 4), -1, ".10(1)".to_string()),
                (q(3, 4), 1, ".11(0)".to_string()),
                (qi(1), -1, ".(1)".to_string()),
            ]
        );
        assert_eq!(f.slope_at(&q(3, 4), Side::Left).unwrap(), -1);
        assert_eq!(f.slope_at(&q(3, 4), Side::Right).unwrap(), 1);
        assert_eq!(f.slope_at(&q(1, 3), Side::Left).unwrap() % 2, 0);
        assert!(!f.is_one_bump());
        assert_eq!(cut_points(&f).unwrap(), vec![qi(0), q(3, 4), qi(1)]);
    }

    #[test]
    fn fixed_intervals_reject_non_square() {
        let f = PLMap::from_ints(&[((0, 1), (0, 1)), ((1, 1), (2, 1))]).unwrap();
        assert!(matches!(f.fixed_intervals(), Err(Error::NotSquare(..))));
    }

    #[test]
    fn slope_queries() {
        let id = PLMap::identity_unit(1);
        assert_eq!(id.slope_at(&q(1, 3), Side::Left).unwrap(), 0);
        assert_eq!(id.slope_at(&Q::zero(), Side::Right).unwrap(), 0);
        assert!(id.slope_at(&Q::zero(), Side::Left).is_err());
        let odd = PLMap::from_ints(&[((0, 1), (0, 1)), ((1, 3), (1, 2)), ((1, 1), (1, 1))]).unwrap();
        assert!(matches!(odd.slope_at(&q(1, 6), Side::Right), Err(Error::NotPowerOfTwo(_))));
        assert!(!odd.is_thompson_like());
    }

    #[test]
    fn one_bump() {
        assert!(x0().invert().is_one_bump());
        assert!(!x0().is_one_bump());
        assert!(!PLMap::identity_unit(1).is_one_bump());
    }

    #[test]
    fn plog_values() {
        for k in -3..=3 {
            assert_eq!(plog(&pow2(k)).unwrap(), qi(k));
        }
        assert_eq!(plog(&qi(3)).unwrap(), q(3, 2));
        assert!(plog(&Q::zero()).is_err());
        assert_eq!(plog_inv(&q(3, 2)), qi(3));
        assert_eq!(plog_inv(&q(-5, 2)), q(3, 16));
        let m = plog_map(&q(3, 16), &qi(3)).unwrap();
        assert_eq!(m.evaluate(&q(1, 2)).unwrap(), qi(-1));
        assert_eq!(m.evaluate(&qi(3)).unwrap(), q(3, 2));
    }

    #[test]
    fn rescaling() {
        assert_eq!(rescale_to_unit(&qi(0), &qi(1)).unwrap(), PLMap::identity_unit(1));
        let half = rescale_to_unit(&qi(0), &qi(2)).unwrap();
        assert_eq!(half, PLMap::from_ints(&[((0, 1), (0, 1)), ((2, 1), (1, 1))]).unwrap());
        let r = rescale_to_unit(&q(1, 4), &q(3, 8)).unwrap();
        assert!(r.is_thompson_like());
        assert_eq!(r.domain(), (&q(1, 4), &q(3, 8)));
        assert_eq!(r.range(), (&qi(0), &qi(1)));
        assert!(rescale_to_unit(&q(1, 3), &qi(1)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = x1();
        let j = f.to_json().unwrap().to_string();
        assert!(j.contains("\"3/4\",\"5/8\""));
        assert_eq!(PLMap::from_json_str(&j).unwrap(), f);
        assert!(PLMap::from_json_str(r#"{"domain":1,"range":1,"breakpoints":[["0/1","0/1"],["1/2","1/1"]]}"#).is_err());
        assert!(PLMap::from_json_str("{").unwrap_err().is_parse());
    }
}
