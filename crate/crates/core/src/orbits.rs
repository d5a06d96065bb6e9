//! Orbits of F on the open unit interval: two points are in the same orbit
//! exactly when they have binary expansions with a common tail, and
//! explicit elements carrying one tuple of points to another.

use num_traits::{One, Zero};

use crate::binary::TailWord;
use crate::dyadic::{fmt_q, pow2, Q};
use crate::error::{Error, Result};
use crate::plmap::{dyadic_rearrangement, PLMap};
use crate::strand::StrandDiagram;
use crate::tree::Tree;

fn interior(t: &TailWord) -> Result<()> {
    let v = t.to_rational();
    if v.is_zero() || v.is_one() {
        Err(Error::Endpoint(t.to_string()))
    } else {
        Ok(())
    }
}

/// Every binary expansion of the number `t` denotes.
fn expansions(t: &TailWord) -> Vec<TailWord> {
    TailWord::from_rational(&t.to_rational()).unwrap_or_else(|_| vec![t.clone()])
}

fn matching_pair(t: &TailWord, u: &TailWord) -> Option<(TailWord, TailWord)> {
    for a in expansions(t) {
        for b in expansions(u) {
            if a.same_tail(&b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Whether some element of F carries `t` to `u`.
pub fn in_same_orbit(t: &TailWord, u: &TailWord) -> Result<bool> {
    interior(t)?;
    interior(u)?;
    Ok(matching_pair(t, u).is_some())
}

pub fn in_same_orbit_rational(p: &Q, q: &Q) -> Result<bool> {
    let t = TailWord::from_rational_upper(p)?;
    let u = TailWord::from_rational_upper(q)?;
    in_same_orbit(&t, &u)
}

/// The first positions `(i, j)` from which `t` and `u` read identically.
fn align(t: &TailWord, u: &TailWord) -> (usize, usize) {
    let p = t.period().len().max(u.period().len());
    let bound_t = t.preperiod().len() + p;
    let bound_u = u.preperiod().len() + p;
    let mut best: Option<(usize, usize)> = None;
    for i in 0..=bound_t {
        for j in 0..=bound_u {
            if t.shift(i) == u.shift(j) && best.is_none_or(|(a, b)| i + j < a + b) {
                best = Some((i, j));
            }
        }
    }
    best.expect("expansions with a common tail align")
}

/// A tree with a single path spelling `w`, every side branch a leaf.
fn path_tree(w: &[u8]) -> Tree {
    match w.split_first() {
        None => Tree::Leaf,
        Some((0, rest)) => Tree::node(path_tree(rest), Tree::Leaf),
        Some((_, rest)) => Tree::node(Tree::Leaf, path_tree(rest)),
    }
}

/// An element of F with `g(t) = u`, built from a pipeline that rewrites
/// the prefix `μ` of `t` into the prefix `ν` of `u`.
pub fn pipeline_element(t: &TailWord, u: &TailWord) -> Result<PLMap> {
    interior(t)?;
    interior(u)?;
    let (t, u) = matching_pair(t, u)
        .ok_or_else(|| Error::OrbitMismatch(format!("{t} and {u} have different tails")))?;
    let (i, j) = align(&t, &u);
    let mut mu = t.prefix(i).bits().to_vec();
    let mut nu = u.prefix(j).bits().to_vec();
    let mut rest = t.shift(i);
    let has_both = |w: &[u8]| w.contains(&0) && w.contains(&1);
    let mut guard = 0;
    while !has_both(&mu) || !has_both(&nu) {
        let d = rest.digit(0);
        mu.push(d);
        nu.push(d);
        rest = rest.shift(1);
        guard += 1;
        if guard > 4 * (t.preperiod().len() + u.preperiod().len() + t.period().len() + 8) {
            return Err(Error::OrbitMismatch("prefixes cannot be made to contain both digits".into()));
        }
    }
    let mut dom = path_tree(&mu);
    let mut ran = path_tree(&nu);
    let count = |w: &[u8], d: u8| w.iter().filter(|&&x| x == d).count();
    // Leaves left of the pipeline come from 1s, leaves right of it from 0s.
    let (ld, lr) = (count(&mu, 1), count(&nu, 1));
    for _ in ld..lr {
        dom = dom.split_leaf(0);
    }
    for _ in lr..ld {
        ran = ran.split_leaf(0);
    }
    let (rd, rr) = (count(&mu, 0), count(&nu, 0));
    for _ in rd..rr {
        dom = dom.split_leaf(dom.leaves() - 1);
    }
    for _ in rr..rd {
        ran = ran.split_leaf(ran.leaves() - 1);
    }
    let d = StrandDiagram::from_tree_pair(&dom, &ran)?;
    let (sink, out) = d.evaluate(0, &t)?;
    let g = d.to_pl_map()?;
    if sink != 0 || out.to_rational() != u.to_rational() || g.evaluate(&t.to_rational())? != u.to_rational() {
        return Err(Error::OrbitMismatch("pipeline does not carry t to u".into()));
    }
    Ok(g)
}

/// A block around one point and its image block, with the local map.
struct Block {
    lo: Q,
    hi: Q,
    map: PLMap,
}

fn block(t: &TailWord, u: &TailWord, k: usize) -> Result<Block> {
    let eps = pow2(-(k as i64));
    let (x, y) = (t.to_rational(), u.to_rational());
    if t.is_dyadic() {
        let left = dyadic_rearrangement(&(&x - &eps), &x, &(&y - &eps), &y)?;
        let right = dyadic_rearrangement(&x, &(&x + &eps), &y, &(&y + &eps))?;
        let map = PLMap::glue(&[left, right])?;
        return Ok(Block { lo: &x - &eps, hi: &x + &eps, map });
    }
    let a = t.prefix(k).value();
    let c = u.prefix(k).value();
    let g = pipeline_element(&t.shift(k), &u.shift(k))?;
    let pts = g
        .points()
        .iter()
        .map(|(p, q)| (&a + p * &eps, &c + q * &eps))
        .collect();
    Ok(Block { hi: &a + &eps, lo: a, map: PLMap::new(pts)? })
}

/// One element of F with `g(ts[i]) = us[i]` for every `i`.
pub fn multipoint_transporter(ts: &[TailWord], us: &[TailWord]) -> Result<PLMap> {
    if ts.len() != us.len() || ts.is_empty() {
        return Err(Error::LengthMismatch(format!("{} points against {}", ts.len(), us.len())));
    }
    for w in ts.iter().chain(us) {
        interior(w)?;
    }
    let increasing = |ws: &[TailWord]| ws.windows(2).all(|p| p[0].to_rational() < p[1].to_rational());
    if !increasing(ts) || !increasing(us) {
        return Err(Error::InvalidMap("points must be strictly increasing".into()));
    }
    let pairs: Vec<(TailWord, TailWord)> = ts
        .iter()
        .zip(us)
        .map(|(t, u)| {
            matching_pair(t, u).ok_or_else(|| {
                Error::OrbitMismatch(format!("{t} and {u} have different tails"))
            })
        })
        .collect::<Result<_>>()?;
    if pairs.len() == 1 {
        return pipeline_element(&pairs[0].0, &pairs[0].1);
    }
    for k in 1..=256usize {
        let blocks: Vec<Block> = pairs.iter().map(|(t, u)| block(t, u, k)).collect::<Result<_>>()?;
        let separated = |ends: &dyn Fn(&Block) -> (Q, Q)| {
            let mut prev = Q::zero();
            for b in &blocks {
                let (lo, hi) = ends(b);
                if lo <= prev {
                    return false;
                }
                prev = hi;
            }
            prev < Q::one()
        };
        let domain = |b: &Block| (b.lo.clone(), b.hi.clone());
        let image = |b: &Block| (b.map.range().0.clone(), b.map.range().1.clone());
        if !separated(&domain) || !separated(&image) {
            continue;
        }
        let mut pieces = Vec::new();
        let (mut x, mut y) = (Q::zero(), Q::zero());
        for b in &blocks {
            let (c, d) = image(b);
            pieces.push(dyadic_rearrangement(&x, &b.lo, &y, &c)?);
            pieces.push(b.map.clone());
            x = b.hi.clone();
            y = d;
        }
        pieces.push(dyadic_rearrangement(&x, &Q::one(), &y, &Q::one())?);
        let g = PLMap::glue(&pieces)?;
        for (t, u) in ts.iter().zip(us) {
            if g.evaluate(&t.to_rational())? != u.to_rational() {
                return Err(Error::OrbitMismatch(format!(
                    "transporter sends {} elsewhere",
                    fmt_q(&t.to_rational())
                )));
            }
        }
        g.require_thompson_like()?;
        return Ok(g);
    }
    Err(Error::InvalidMap("points are too close to separate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::q;

    fn tw(s: &str) -> TailWord {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> TailWord {
        TailWord::from_rational_upper(&q(n, d)).unwrap()
    }

    #[test]
    fn orbit_decisions() {
        assert!(in_same_orbit(&r(3, 4), &r(1, 2)).unwrap());
        assert!(in_same_orbit(&r(1, 3), &r(7, 12)).unwrap());
        assert!(!in_same_orbit(&r(1, 3), &r(1, 5)).unwrap());
        assert!(in_same_orbit(&tw(".10(1)"), &tw(".01(0)")).unwrap());
        assert!(in_same_orbit(&TailWord::zero(), &r(1, 2)).is_err());
    }

    #[test]
    fn pipelines_carry_points() {
        for (a, b) in [((1, 2), (1, 4)), ((1, 3), (7, 12)), ((1, 5), (3, 5)), ((3, 4), (3, 4))] {
            let (t, u) = (r(a.0, a.1), r(b.0, b.1));
            let g = pipeline_element(&t, &u).unwrap();
            assert!(g.is_thompson_like());
            assert_eq!(g.evaluate(&q(a.0, a.1)).unwrap(), q(b.0, b.1));
        }
        assert!(pipeline_element(&r(1, 3), &r(1, 3)).unwrap().is_identity());
        assert!(matches!(pipeline_element(&r(1, 3), &r(1, 5)), Err(Error::OrbitMismatch(_))));
    }

    #[test]
    fn several_points_at_once() {
        let g = multipoint_transporter(&[r(1, 4), r(3, 4)], &[r(1, 2), r(7, 8)]).unwrap();
        assert_eq!(g.evaluate(&q(1, 4)).unwrap(), q(1, 2));
        assert_eq!(g.evaluate(&q(3, 4)).unwrap(), q(7, 8));
        let g = multipoint_transporter(&[r(1, 3), r(1, 2), r(3, 5)], &[r(1, 12), r(1, 8), r(4, 5)])
            .unwrap();
        assert_eq!(g.evaluate(&q(1, 3)).unwrap(), q(1, 12));
        assert_eq!(g.evaluate(&q(3, 5)).unwrap(), q(4, 5));
        assert!(multipoint_transporter(&[r(1, 3)], &[r(1, 5)]).is_err());
        assert!(multipoint_transporter(&[r(1, 2), r(1, 4)], &[r(1, 4), r(1, 2)]).is_err());
    }
}
