//! Finite binary words and eventually periodic binary expansions `.μ(ρ)^∞`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::dyadic::{self, pow2, qi, Q};
use crate::error::{Error, Result};

/// A finite sequence of binary digits, each stored as `0` or `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "binary digits must be 0 or 1");
        BinaryWord(bits)
    }

    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, bit: u8) {
        assert!(bit <= 1);
        self.0.push(bit);
    }

    /// The dyadic rational `.w` (finite expansion).
    pub fn value(&self) -> Q {
        let mut v = Q::zero();
        for (i, &b) in self.0.iter().enumerate() {
            if b == 1 {
                v += pow2(-(i as i64) - 1);
            }
        }
        v
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        BinaryWord(bits)
    }

    pub fn contains_both_digits(&self) -> bool {
        self.0.contains(&0) && self.0.contains(&1)
    }

    /// Cyclic rotation to the left by `k` positions.
    pub fn rotated(&self, k: usize) -> BinaryWord {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut bits = self.0[k..].to_vec();
        bits.extend_from_slice(&self.0[..k]);
        BinaryWord(bits)
    }

    /// Whether `other` is a cyclic rotation of this word.
    pub fn is_rotation_of(&self, other: &BinaryWord) -> bool {
        self.rotation_offset(other).is_some()
    }

    /// Smallest `k` with `self.rotated(k) == other`.
    pub fn rotation_offset(&self, other: &BinaryWord) -> Option<usize> {
        if self.len() != other.len() {
            return None;
        }
        if self.is_empty() {
            return Some(0);
        }
        (0..self.len()).find(|&k| self.rotated(k) == *other)
    }

    /// The shortest word `p` with `self = p^k`.
    pub fn primitive_root(&self) -> BinaryWord {
        let n = self.len();
        for d in 1..=n {
            if n % d == 0 && (0..n).all(|i| self.0[i] == self.0[i % d]) {
                return BinaryWord(self.0[..d].to_vec());
            }
        }
        self.clone()
    }

    pub fn reversed(&self) -> BinaryWord {
        BinaryWord(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::parse(i, format!("expected a binary digit, found {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

/// An eventually periodic expansion `.μ(ρ)^∞`, always kept canonical: the
/// period is primitive and the preperiod as short as possible.
///
/// The two expansions of an interior dyadic rational (`.μ0(1)` and `.μ1(0)`)
/// are distinct values of this type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TailWord {
    preperiod: BinaryWord,
    period: BinaryWord,
}

impl TailWord {
    pub fn new(preperiod: BinaryWord, period: BinaryWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::parse(0, "period must be nonempty"));
        }
        Ok(Self::canonical(preperiod, period))
    }

    fn canonical(preperiod: BinaryWord, period: BinaryWord) -> Self {
        let mut pre = preperiod.0;
        let mut per = period.primitive_root().0;
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        TailWord { preperiod: BinaryWord(pre), period: BinaryWord(per) }
    }

    /// `.(0)^∞`, the point 0.
    pub fn zero() -> Self {
        TailWord { preperiod: BinaryWord::empty(), period: BinaryWord(vec![0]) }
    }

    /// `.(1)^∞`, the point 1.
    pub fn one() -> Self {
        TailWord { preperiod: BinaryWord::empty(), period: BinaryWord(vec![1]) }
    }

    /// The finite expansion `.w000...`.
    pub fn from_finite(w: &BinaryWord) -> Self {
        Self::canonical(w.clone(), BinaryWord(vec![0]))
    }

    pub fn preperiod(&self) -> &BinaryWord {
        &self.preperiod
    }

    pub fn period(&self) -> &BinaryWord {
        &self.period
    }

    pub fn digit(&self, i: usize) -> u8 {
        let p = self.preperiod.len();
        if i < p {
            self.preperiod.0[i]
        } else {
            self.period.0[(i - p) % self.period.len()]
        }
    }

    /// The first `k` digits, unrolling the period as needed.
    pub fn prefix(&self, k: usize) -> BinaryWord {
        BinaryWord((0..k).map(|i| self.digit(i)).collect())
    }

    /// Drops the first `k` digits.
    pub fn shift(&self, k: usize) -> TailWord {
        let p = self.preperiod.len();
        if k <= p {
            Self::canonical(BinaryWord(self.preperiod.0[k..].to_vec()), self.period.clone())
        } else {
            let r = (k - p) % self.period.len();
            Self::canonical(BinaryWord::empty(), self.period.rotated(r))
        }
    }

    /// `.wα` where `self = .α`.
    pub fn prepend(&self, w: &BinaryWord) -> TailWord {
        Self::canonical(w.concat(&self.preperiod), self.period.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.preperiod.is_empty() && self.period.0 == [0]
    }

    pub fn is_one(&self) -> bool {
        self.preperiod.is_empty() && self.period.0 == [1]
    }

    /// True when the expansion ends in `(0)` or `(1)`, i.e. the value is dyadic.
    pub fn is_dyadic(&self) -> bool {
        self.period.len() == 1
    }

    /// Exact value of the expansion.
    pub fn to_rational(&self) -> Q {
        let k = self.preperiod.len() as i64;
        let n = self.period.len() as i64;
        let repeat = self.period.value() * pow2(n) / (pow2(n) - Q::one());
        self.preperiod.value() + repeat * pow2(-k)
    }

    /// Every canonical expansion of `x ∈ [0, 1]`: one for non-dyadic values
    /// and for the endpoints, two for interior dyadic rationals (the `…0111`
    /// expansion first).
    pub fn from_rational(x: &Q) -> Result<Vec<TailWord>> {
        if *x < Q::zero() || *x > Q::one() {
            return Err(Error::OutOfUnitInterval(dyadic::fmt_q(x)));
        }
        if x.is_zero() {
            return Ok(vec![Self::zero()]);
        }
        if x.is_one() {
            return Ok(vec![Self::one()]);
        }
        if let Some(k) = dyadic::dyadic_depth(x) {
            let finite = BinaryWord((1..=k as i64).map(|i| digit_of(x, i)).collect());
            let upper = Self::canonical(finite.clone(), BinaryWord(vec![0]));
            let mut bits = finite.0;
            let last = bits.len() - 1;
            bits[last] = 0;
            let lower = Self::canonical(BinaryWord(bits), BinaryWord(vec![1]));
            return Ok(vec![lower, upper]);
        }
        // Long division: digits repeat as soon as a remainder repeats.
        let mut seen: HashMap<Q, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut r = x.clone();
        loop {
            if let Some(&start) = seen.get(&r) {
                let pre = BinaryWord(digits[..start].to_vec());
                let per = BinaryWord(digits[start..].to_vec());
                return Ok(vec![Self::canonical(pre, per)]);
            }
            seen.insert(r.clone(), digits.len());
            r *= qi(2);
            if r >= Q::one() {
                digits.push(1);
                r -= Q::one();
            } else {
                digits.push(0);
            }
        }
    }

    /// The canonical expansion ending in `(0)` for dyadic values, or the
    /// unique expansion otherwise.
    pub fn from_rational_upper(x: &Q) -> Result<TailWord> {
        Self::from_rational(x).map(|mut v| v.pop().expect("at least one expansion"))
    }

    /// Whether the two expansions share an infinite tail, `t = .μω`, `u = .νω`.
    pub fn same_tail(&self, other: &TailWord) -> bool {
        self.period.is_rotation_of(&other.period)
    }

    /// Applies the local replacement rule `.μα ↦ .να`.
    pub fn apply_replacement(&self, from: &BinaryWord, to: &BinaryWord) -> Result<TailWord> {
        if self.prefix(from.len()) != *from {
            return Err(Error::PrefixMismatch(from.to_string()));
        }
        Ok(self.shift(from.len()).prepend(to))
    }
}

/// The `i`-th binary digit (1-based) of `x ∈ [0,1)`.
fn digit_of(x: &Q, i: i64) -> u8 {
    let scaled = x * pow2(i);
    let fl = scaled.floor().to_integer();
    if fl.bit(0) {
        1
    } else {
        0
    }
}

impl fmt::Display for TailWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, ".{}({})", self.preperiod, self.period)
    }
}

impl FromStr for TailWord {
    type Err = Error;

    /// Parses the `.<preperiod>(<period>)` text form, e.g. `.10(01)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix('.')
            .ok_or_else(|| Error::parse(0, "tail word must start with '.'"))?;
        let open = rest
            .find('(')
            .ok_or_else(|| Error::parse(s.len(), "missing '(' before the period"))?;
        let close = rest
            .rfind(')')
            .filter(|&c| c == rest.len() - 1 && c > open)
            .ok_or_else(|| Error::parse(s.len(), "period must end with ')'"))?;
        let pre: BinaryWord = rest[..open]
            .parse()
            .map_err(|e| offset_parse_error(e, 1))?;
        let per: BinaryWord = rest[open + 1..close]
            .parse()
            .map_err(|e| offset_parse_error(e, open + 2))?;
        if per.is_empty() {
            return Err(Error::parse(open + 2, "period must be nonempty"));
        }
        Ok(TailWord::canonical(pre, per))
    }
}

fn offset_parse_error(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::q;

    fn tw(s: &str) -> TailWord {
        s.parse().unwrap()
    }

    #[test]
    fn tail_values() {
        assert_eq!(tw(".(01)").to_rational(), q(1, 3));
        assert_eq!(tw(".(0)").to_rational(), q(0, 1));
        assert_eq!(tw(".(1101)").to_rational(), q(13, 15));
        assert_eq!(tw(".(1)").to_rational(), q(1, 1));
        assert_eq!(tw(".10(1)").to_rational(), q(3, 4));
    }

    #[test]
    fn thirteen_fifteenths_by_partial_sums() {
        // 40 digits of .(1101) summed directly sit within 2^-40 of 13/15.
        let w = tw(".(1101)");
        let partial = w.prefix(40).value();
        let diff = q(13, 15) - partial;
        assert!(diff >= Q::zero() && diff <= pow2(-40));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(tw(".0101(01)"), tw(".(01)"));
        assert_eq!(tw(".(0101)"), tw(".(01)"));
        assert_eq!(tw(".0(10)").to_string(), ".(01)");
        assert_eq!(tw(".1(10)").to_string(), ".1(10)");
        assert_eq!(tw(".000(0)").to_string(), ".(0)");
        // The two Cantor points of 3/4 stay apart.
        assert_ne!(tw(".10(1)"), tw(".11(0)"));
        assert_eq!(tw(".101(1)").to_string(), ".10(1)");
    }

    #[test]
    fn expansions_of_rationals() {
        assert_eq!(
            TailWord::from_rational(&q(3, 4)).unwrap(),
            vec![tw(".10(1)"), tw(".11(0)")]
        );
        assert_eq!(TailWord::from_rational(&q(0, 1)).unwrap(), vec![tw(".(0)")]);
        assert_eq!(TailWord::from_rational(&q(1, 5)).unwrap(), vec![tw(".(0011)")]);
        assert_eq!(TailWord::from_rational(&q(7, 12)).unwrap(), vec![tw(".10(01)")]);
        assert!(TailWord::from_rational(&q(5, 4)).is_err());
        assert!(TailWord::from_rational(&q(-1, 4)).is_err());
    }

    #[test]
    fn tails() {
        assert!(tw(".(01)").same_tail(&tw(".10(01)")));
        assert_eq!(q(7, 12) - q(1, 3), q(1, 4));
        assert!(tw(".(01)").same_tail(&tw(".(01)")));
        assert!(!tw(".(01)").same_tail(&tw(".(0011)")));
    }

    #[test]
    fn replacement_rules() {
        let w = tw(".1010(10)");
        let r = w.apply_replacement(&"10".parse().unwrap(), &BinaryWord::empty()).unwrap();
        assert_eq!(r, tw(".10(10)"));
        assert_eq!(
            w.apply_replacement(&BinaryWord::empty(), &BinaryWord::empty()).unwrap(),
            w
        );
        let v = tw(".1100(0)");
        let r = v.apply_replacement(&"1100".parse().unwrap(), &"110".parse().unwrap()).unwrap();
        assert_eq!(r, tw(".110(0)"));
        assert!(v.apply_replacement(&"0".parse().unwrap(), &BinaryWord::empty()).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!("10(1)".parse::<TailWord>().is_err());
        assert!(".10".parse::<TailWord>().is_err());
        assert!(".1()".parse::<TailWord>().is_err());
        match ".12(1)".parse::<TailWord>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
