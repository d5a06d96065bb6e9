//! Seeded generators for words, dyadic rearrangements, circle maps and
//! unreduced diagrams. Everything draws from a caller-supplied RNG so runs
//! are reproducible from a seed.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dyadic::{pow2, q, qi, Q};
use crate::generators::{Letter, Word};
use crate::mather::CircleMap;
use crate::plmap::PLMap;
use crate::strand::StrandDiagram;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A word whose length is uniform in `0..=max_len`.
pub fn word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    word_of_length(rng, len)
}

pub fn word_of_length<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Word {
    Word((0..len).map(|_| Letter::all()[rng.gen_range(0..4)]).collect())
}

/// A dyadic `k / 2^depth` in `[lo, hi]`.
pub fn dyadic<R: Rng + ?Sized>(rng: &mut R, lo: &Q, hi: &Q, depth: u32) -> Q {
    let scale = pow2(depth as i64);
    let a = (lo * &scale).ceil().to_integer();
    let b = (hi * &scale).floor().to_integer();
    let span: i64 = (&b - &a).try_into().expect("small span");
    let k = &a + BigInt::from(rng.gen_range(0..=span));
    Q::from_integer(k) / scale
}

/// A positive dyadic with numerator below `2^12` and denominator up to `2^12`.
pub fn positive_dyadic<R: Rng + ?Sized>(rng: &mut R) -> Q {
    q(rng.gen_range(1..4096), 1) / pow2(rng.gen_range(0..=12))
}

/// A rational `p / d` in `(0, 1)` with `d <= max_den`.
pub fn unit_rational<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> Q {
    let d = rng.gen_range(2..=max_den);
    q(rng.gen_range(1..d), d)
}

/// A random standard dyadic subdivision of `[0, units]` into `pieces`
/// intervals, returned as cut points including both ends.
fn partition<R: Rng + ?Sized>(rng: &mut R, units: u32, pieces: usize) -> Vec<Q> {
    let mut leaves: Vec<(Q, Q)> = (0..units as i64).map(|k| (qi(k), qi(k + 1))).collect();
    while leaves.len() < pieces {
        let i = rng.gen_range(0..leaves.len());
        let (a, b) = leaves[i].clone();
        let mid = (&a + &b) / qi(2);
        leaves[i] = (a, mid.clone());
        leaves.insert(i + 1, (mid, b));
    }
    let mut cuts: Vec<Q> = leaves.iter().map(|(a, _)| a.clone()).collect();
    cuts.push(qi(units as i64));
    cuts
}

/// A dyadic rearrangement `[0, m] -> [0, n]` with `extra` more pieces than
/// the minimum.
pub fn thompson_map<R: Rng + ?Sized>(rng: &mut R, m: u32, n: u32, extra: usize) -> PLMap {
    let pieces = m.max(n) as usize + extra;
    let dom = partition(rng, m, pieces);
    let ran = partition(rng, n, pieces);
    PLMap::new(dom.into_iter().zip(ran).collect()).expect("matched partitions")
}

/// A Thompson-like circle map `R/mZ -> R/nZ`.
pub fn circle_map<R: Rng + ?Sized>(rng: &mut R, m: u32, n: u32, extra: usize) -> CircleMap {
    let pieces = m.max(n) as usize + extra;
    let dom = partition(rng, m, pieces);
    let ran = partition(rng, n, pieces);
    let shift = rng.gen_range(0..pieces);
    let nq = qi(n as i64);
    let mut pts = Vec::with_capacity(pieces + 1);
    for (i, x) in dom.iter().enumerate() {
        let j = i + shift;
        let y = if j < pieces { ran[j].clone() } else { &ran[j - pieces] + &nq };
        pts.push((x.clone(), y));
    }
    CircleMap::new(m, n, PLMap::new(pts).expect("increasing")).expect("degree one")
}

/// An unreduced diagram: a concatenation of two to four reduced groupoid
/// diagrams with random intermediate arities.
pub fn diagram<R: Rng + ?Sized>(rng: &mut R) -> StrandDiagram {
    diagram_with_map(rng).0
}

/// As [`diagram`], together with the composite of the pieces' maps.
pub fn diagram_with_map<R: Rng + ?Sized>(rng: &mut R) -> (StrandDiagram, PLMap) {
    let parts = rng.gen_range(2..=4);
    let mut arity = rng.gen_range(1..=3);
    let mut d = StrandDiagram::trivial(arity as usize);
    let mut f = PLMap::identity_unit(arity);
    for _ in 0..parts {
        let next = rng.gen_range(1..=3);
        let extra = rng.gen_range(0..4);
        let g = thompson_map(rng, arity, next, extra);
        let piece = StrandDiagram::from_pl_map(&g).expect("random rearrangement");
        d = d.concatenate(&piece).expect("arities match");
        f = f.compose(&g).expect("arities match");
        arity = next;
    }
    (d, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_valid() {
        let mut a = rng(3);
        let mut b = rng(3);
        assert_eq!(word(&mut a, 6), word(&mut b, 6));
        for _ in 0..20 {
            let f = thompson_map(&mut a, 2, 3, 3);
            assert!(f.is_thompson_like());
            assert_eq!((f.domain_len(), f.range_len()), (Some(2), Some(3)));
            let c = circle_map(&mut a, 2, 1, 2);
            assert_eq!(c.m(), 2);
            let x = dyadic(&mut a, &q(1, 3), &q(2, 3), 6);
            assert!(x >= q(1, 3) && x <= q(2, 3));
            let d = diagram(&mut a);
            assert!(d.to_pl_map().is_ok());
        }
    }
}
