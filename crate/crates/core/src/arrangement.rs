//! Pseudoline arrangements and their local moves.
//!
//! An arrangement of `n` pseudolines is stored as a wiring word: the sequence
//! of crossings read left to right, each crossing recorded by its level `L`
//! (it swaps the wires at positions `L` and `L + 1`, counted from the bottom,
//! 0-based). Wires are labelled `1..=n` bottom-up along the left border.
//!
//! Every region other than the very top and very bottom is a chamber, named by
//! the set of wires passing below it. A chamber at height `h` (with `h` wires
//! below it) sits between two consecutive crossings at level `h - 1`.
//!
//! A local move flips an empty triangle formed by wires `p < q < r`. In the
//! "lower" state the crossings come in the order `pq, pr, qr` at levels
//! `L, L+1, L` and the triangle is the chamber `J + q`; in the "upper" state
//! the order is `qr, pr, pq` at levels `L+1, L, L+1` and the triangle is the
//! chamber `J + {p, r}`. Here `J` is the set of wires passing below the
//! triangle. Chamber values obey `e * f = a * c + b * d` with
//! `e = J+q`, `f = J+pr`, `a = J+p`, `b = J+pq`, `c = J+qr`, `d = J+r`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use thiserror::Error;

use crate::semifield::{Arith, SemifieldError};

/// A set of pseudoline labels drawn from `1..=128`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineSet(u128);

impl LineSet {
    pub const MAX_LINES: usize = 128;

    pub fn empty() -> Self {
        LineSet(0)
    }

    /// `{start, start + 1, ..., start + len - 1}`.
    pub fn interval(start: usize, len: usize) -> Self {
        (start..start + len).collect()
    }

    pub fn contains(self, line: usize) -> bool {
        (1..=Self::MAX_LINES).contains(&line) && self.0 >> (line - 1) & 1 == 1
    }

    pub fn with(self, line: usize) -> Self {
        assert!((1..=Self::MAX_LINES).contains(&line), "line label {line} out of range");
        LineSet(self.0 | 1 << (line - 1))
    }

    pub fn without(self, line: usize) -> Self {
        if (1..=Self::MAX_LINES).contains(&line) {
            LineSet(self.0 & !(1 << (line - 1)))
        } else {
            self
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 128 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=Self::MAX_LINES).filter(move |&i| self.contains(i))
    }

    /// Whether the set is `{l, l+1, ..., l+k-1}` for some `l`.
    pub fn is_interval(self) -> bool {
        self.0 != 0 && {
            let shifted = self.0 >> self.0.trailing_zeros();
            shifted & (shifted + 1) == 0
        }
    }
}

impl FromIterator<usize> for LineSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(LineSet::empty(), LineSet::with)
    }
}

impl fmt::Debug for LineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Three pseudoline labels `p < q < r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipTriple {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl FlipTriple {
    pub fn new(p: usize, q: usize, r: usize) -> Result<Self, ArrangementError> {
        if 1 <= p && p < q && q < r {
            Ok(FlipTriple { p, q, r })
        } else {
            Err(ArrangementError::BadTriple(p, q, r))
        }
    }

    fn shares_two_lines(&self, other: &FlipTriple) -> bool {
        let mine = [self.p, self.q, self.r];
        [other.p, other.q, other.r].iter().filter(|l| mine.contains(l)).count() >= 2
    }
}

impl fmt::Display for FlipTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArrangementError {
    #[error("invalid triple ({0},{1},{2}): need 1 <= p < q < r")]
    BadTriple(usize, usize, usize),
    #[error("triple {triple} exceeds the {n} lines of the arrangement")]
    TripleOutOfRange { triple: FlipTriple, n: usize },
    #[error("the crossings of {0} do not bound an empty triangle")]
    NotFlippable(FlipTriple),
    #[error("chamber {0} is not present")]
    MissingChamber(LineSet),
    #[error("no initial value for interval chamber {0}")]
    MissingInterval(LineSet),
    #[error("chamber {0} vanishes, cannot divide by it")]
    ZeroPivot(LineSet),
    #[error("invalid index set {set} for n = {n}: need a nonempty proper subset")]
    BadIndexSet { set: LineSet, n: usize },
    #[error("arrangement size {0} unsupported (need 1..=128 lines)")]
    BadSize(usize),
    #[error("triples {0} and {1} share two lines and are concurrent at the same time")]
    ConcurrentTriples(FlipTriple, FlipTriple),
    #[error(transparent)]
    Arith(#[from] SemifieldError),
}

/// Value algebra for chamber updates.
pub trait ChamberAlgebra {
    type Value: Clone;

    /// `(a * c + b * d) / pivot`, the value of the new chamber `target`.
    fn exchange(
        &mut self,
        target: LineSet,
        a: &Self::Value,
        b: &Self::Value,
        c: &Self::Value,
        d: &Self::Value,
        pivot: &Self::Value,
    ) -> Result<Self::Value, SemifieldError>;

    fn is_zero(&self, _v: &Self::Value) -> bool {
        false
    }

    /// The vanishing value, for algebras that have one.
    fn zero(&mut self) -> Option<Self::Value> {
        None
    }
}

/// Exchange relation over an [`Arith`] with no zero element.
pub struct Exchange<'a, A>(pub &'a mut A);

impl<A: Arith> ChamberAlgebra for Exchange<'_, A> {
    type Value = A::Value;

    fn exchange(
        &mut self,
        _target: LineSet,
        a: &A::Value,
        b: &A::Value,
        c: &A::Value,
        d: &A::Value,
        pivot: &A::Value,
    ) -> Result<A::Value, SemifieldError> {
        let ac = self.0.mul(a, c);
        let bd = self.0.mul(b, d);
        let num = self.0.add(&ac, &bd);
        self.0.div(&num, pivot)
    }
}

/// Exchange relation where `None` is a structural zero: zero terms are
/// dropped from sums and absorb products, so no gate is ever spent on them.
pub struct ZeroAwareExchange<'a, A>(pub &'a mut A);

impl<A: Arith> ZeroAwareExchange<'_, A> {
    fn mul(&mut self, x: &Option<A::Value>, y: &Option<A::Value>) -> Option<A::Value> {
        match (x, y) {
            (Some(x), Some(y)) => Some(self.0.mul(x, y)),
            _ => None,
        }
    }
}

impl<A: Arith> ChamberAlgebra for ZeroAwareExchange<'_, A> {
    type Value = Option<A::Value>;

    fn exchange(
        &mut self,
        _target: LineSet,
        a: &Self::Value,
        b: &Self::Value,
        c: &Self::Value,
        d: &Self::Value,
        pivot: &Self::Value,
    ) -> Result<Self::Value, SemifieldError> {
        let pivot = pivot.as_ref().ok_or_else(|| SemifieldError::NotInvertible("structural zero".into()))?;
        let ac = self.mul(a, c);
        let bd = self.mul(b, d);
        let num = match (ac, bd) {
            (Some(x), Some(y)) => Some(self.0.add(&x, &y)),
            (x, y) => x.or(y),
        };
        match num {
            Some(num) => Ok(Some(self.0.div(&num, pivot)?)),
            None => Ok(None),
        }
    }

    fn is_zero(&self, v: &Self::Value) -> bool {
        v.is_none()
    }

    fn zero(&mut self) -> Option<Self::Value> {
        Some(None)
    }
}

/// What a single local move changed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipRecord {
    pub removed: LineSet,
    pub added: LineSet,
    /// `true` when the triangle went from the lower to the upper state.
    pub raised: bool,
}

#[derive(Debug, Clone)]
pub struct Arrangement<V> {
    n: usize,
    word: Vec<usize>,
    chambers: HashMap<LineSet, V>,
}

struct CrossingInfo {
    index: usize,
    level: usize,
    below: LineSet,
}

impl<V: Clone> Arrangement<V> {
    /// The special arrangement: wires `i < j` cross in order of `i + j`, and
    /// the chambers are exactly the proper nonempty intervals of `1..=n`.
    ///
    /// `init(start, len)` supplies the value of the interval chamber
    /// `{start, ..., start + len - 1}`.
    pub fn special_with<E>(n: usize, mut init: impl FnMut(usize, usize) -> Result<V, E>) -> Result<Self, E>
    where
        E: From<ArrangementError>,
    {
        if n == 0 || n > LineSet::MAX_LINES {
            return Err(ArrangementError::BadSize(n).into());
        }
        let mut pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        pairs.sort_by_key(|&(i, j)| (i + j, i));
        let mut wire_at: Vec<usize> = (1..=n).collect();
        let mut pos_of: Vec<usize> = (0..=n).map(|w| w.saturating_sub(1)).collect();
        let mut word = Vec::with_capacity(pairs.len());
        for (i, j) in pairs {
            let (pi, pj) = (pos_of[i], pos_of[j]);
            debug_assert_eq!(pi + 1, pj, "special arrangement: wires {i},{j} not adjacent");
            word.push(pi);
            wire_at.swap(pi, pj);
            pos_of[i] = pj;
            pos_of[j] = pi;
        }
        let mut chambers = HashMap::new();
        for len in 1..n {
            for start in 1..=n - len + 1 {
                chambers.insert(LineSet::interval(start, len), init(start, len)?);
            }
        }
        Ok(Arrangement { n, word, chambers })
    }

    /// The special arrangement with interval values taken from a map.
    pub fn special(n: usize, init: &HashMap<LineSet, V>) -> Result<Self, ArrangementError> {
        Self::special_with(n, |start, len| {
            let label = LineSet::interval(start, len);
            init.get(&label).cloned().ok_or(ArrangementError::MissingInterval(label))
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers.len()
    }

    pub fn chambers(&self) -> impl Iterator<Item = (&LineSet, &V)> {
        self.chambers.iter()
    }

    pub fn contains(&self, label: LineSet) -> bool {
        self.chambers.contains_key(&label)
    }

    pub fn chamber_value(&self, label: LineSet) -> Result<&V, ArrangementError> {
        self.chambers.get(&label).ok_or(ArrangementError::MissingChamber(label))
    }

    /// The wiring word (crossing levels, left to right).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Chamber labels recomputed from the wiring word alone.
    pub fn labels_from_word(&self) -> Vec<LineSet> {
        let mut wire_at: Vec<usize> = (1..=self.n).collect();
        let mut labels: Vec<LineSet> = (1..self.n).map(|h| wire_at[..h].iter().copied().collect()).collect();
        for &level in &self.word {
            wire_at.swap(level, level + 1);
            labels.push(wire_at[..=level].iter().copied().collect());
        }
        labels
    }

    fn locate(&self, t: FlipTriple) -> [Option<CrossingInfo>; 3] {
        let FlipTriple { p, q, r } = t;
        let mut found: [Option<CrossingInfo>; 3] = [None, None, None];
        let mut wire_at: Vec<usize> = (1..=self.n).collect();
        for (index, &level) in self.word.iter().enumerate() {
            let (lo, hi) = {
                let (a, b) = (wire_at[level], wire_at[level + 1]);
                (a.min(b), a.max(b))
            };
            let slot = match (lo, hi) {
                _ if (lo, hi) == (p, q) => Some(0),
                _ if (lo, hi) == (p, r) => Some(1),
                _ if (lo, hi) == (q, r) => Some(2),
                _ => None,
            };
            if let Some(s) = slot {
                found[s] = Some(CrossingInfo { index, level, below: wire_at[..level].iter().copied().collect() });
            }
            wire_at.swap(level, level + 1);
        }
        found
    }

    /// Performs the local move on the triangle of `t`, in whichever direction
    /// its current state allows, updating the one chamber that changes.
    ///
    /// With `zero_mode`, a vanishing pivot produces a vanishing new value
    /// instead of an error.
    pub fn flip<A>(&mut self, t: FlipTriple, zero_mode: bool, alg: &mut A) -> Result<FlipRecord, ArrangementError>
    where
        A: ChamberAlgebra<Value = V>,
    {
        if t.r > self.n {
            return Err(ArrangementError::TripleOutOfRange { triple: t, n: self.n });
        }
        let [pq, pr, qr] = self.locate(t);
        let (pq, pr, qr) = match (pq, pr, qr) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return Err(ArrangementError::NotFlippable(t)),
        };
        let raised;
        let (first, last, level) = if pq.index < pr.index && pr.index < qr.index {
            if pq.level != pr.level.wrapping_sub(1) || qr.level != pq.level {
                return Err(ArrangementError::NotFlippable(t));
            }
            raised = true;
            (pq.index, qr.index, pq.level)
        } else if qr.index < pr.index && pr.index < pq.index {
            if qr.level != pr.level + 1 || pq.level != qr.level {
                return Err(ArrangementError::NotFlippable(t));
            }
            raised = false;
            (qr.index, pq.index, qr.level)
        } else {
            return Err(ArrangementError::NotFlippable(t));
        };
        let middle = pr.index;

        // Crossings strictly inside the window commute past the triangle.
        let commutes = |l: usize| l + 1 < level || l > level + 1;
        if !self.word[first + 1..middle].iter().all(|&l| commutes(l))
            || !self.word[middle + 1..last].iter().all(|&l| commutes(l))
        {
            return Err(ArrangementError::NotFlippable(t));
        }

        let j = if raised { pq.below } else { pr.below };
        let FlipTriple { p, q, r } = t;
        let lower = j.with(q);
        let upper = j.with(p).with(r);
        let (old, new) = if raised { (lower, upper) } else { (upper, lower) };
        let get = |label: LineSet| self.chambers.get(&label).ok_or(ArrangementError::MissingChamber(label));
        let a = get(j.with(p))?;
        let b = get(j.with(p).with(q))?;
        let c = get(j.with(q).with(r))?;
        let d = get(j.with(r))?;
        let pivot = get(old)?;
        let value = if alg.is_zero(pivot) {
            match (zero_mode, alg.zero()) {
                (true, Some(z)) => z,
                _ => return Err(ArrangementError::ZeroPivot(old)),
            }
        } else {
            alg.exchange(new, a, b, c, d, pivot)?
        };

        let (lo, hi) = if raised { (level + 1, level) } else { (level - 1, level) };
        let mut word = Vec::with_capacity(self.word.len());
        word.extend_from_slice(&self.word[..first]);
        word.extend_from_slice(&self.word[first + 1..middle]);
        word.extend_from_slice(&[lo, hi, lo]);
        word.extend_from_slice(&self.word[middle + 1..last]);
        word.extend_from_slice(&self.word[last + 1..]);
        self.word = word;

        self.chambers.remove(&old);
        self.chambers.insert(new, value);
        Ok(FlipRecord { removed: old, added: new, raised })
    }

    /// Applies a sequence of flips.
    pub fn apply<A>(&mut self, flips: &[FlipTriple], zero_mode: bool, alg: &mut A) -> Result<(), ArrangementError>
    where
        A: ChamberAlgebra<Value = V>,
    {
        for &t in flips {
            self.flip(t, zero_mode, alg)?;
        }
        Ok(())
    }
}

fn check_index_set(n: usize, set: LineSet) -> Result<(), ArrangementError> {
    let full = n < LineSet::MAX_LINES + 1 && set == LineSet::interval(1, n);
    if n == 0 || n > LineSet::MAX_LINES || set.is_empty() || full || set.max().unwrap_or(0) > n {
        return Err(ArrangementError::BadIndexSet { set, n });
    }
    Ok(())
}

/// Combinatorial flip schedule reaching a chamber labelled `set`:
/// for each `k in set`, from `n` down to 3, all triples `(i, j, k)` with `j`
/// descending and `i` descending.
pub fn plan_a_flips(n: usize, set: LineSet) -> Result<Vec<FlipTriple>, ArrangementError> {
    check_index_set(n, set)?;
    let mut out = Vec::new();
    for k in (3..=n).rev() {
        if !set.contains(k) {
            continue;
        }
        for j in (2..k).rev() {
            for i in (1..j).rev() {
                out.push(FlipTriple { p: i, q: j, r: k });
            }
        }
    }
    Ok(out)
}

/// A triple together with the instant at which its three segments become
/// concurrent during the straight-line deformation.
///
/// With `N = n^6` the instant is `t = N^2 / (N^2 + 2 x)`, where the offset
/// `x` is a small exact rational; ordering by `t` is ordering by `-x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalTime {
    pub triple: FlipTriple,
    offset: Ratio<i128>,
    scale: i128,
}

impl CriticalTime {
    pub fn t(&self) -> BigRational {
        let scale = BigRational::from_integer(BigInt::from(self.scale));
        let x = BigRational::new(BigInt::from(*self.offset.numer()), BigInt::from(*self.offset.denom()));
        &scale / (&scale + x * BigInt::from(2))
    }
}

impl PartialOrd for CriticalTime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CriticalTime {
    fn cmp(&self, other: &Self) -> Ordering {
        other.offset.cmp(&self.offset).then(self.triple.cmp(&other.triple))
    }
}

fn critical_offset(n: usize, set: LineSet, triple: FlipTriple) -> Option<CriticalTime> {
    let FlipTriple { p, q, r } = triple;
    let sigma = |l: usize| if set.contains(l) { 0i128 } else { -1 };
    let (i, j, k) = (p as i128, q as i128, r as i128);
    let numer = sigma(p) * (k - j) + sigma(q) * (i - k) + sigma(r) * (j - i);
    let denom = (i - j) * (i - k) * (j - k);
    let big_n = (n as i128).pow(6);
    // 1 - t + 2 a t S - 2 a^2 t (i + j + k) = 0 with a = 1 / N, S = numer / denom
    let offset = Ratio::new((i + j + k) * denom - big_n * numer, denom);
    (offset >= Ratio::from_integer(0)).then(|| CriticalTime { triple, offset, scale: big_n * big_n })
}

/// Solves the linear concurrency equation of the triple `(i, j, k)` for the
/// deformation towards the arrangement containing `set`. Returns `None` when
/// the solution is not in `[0, 1]`.
pub fn critical_time(n: usize, set: LineSet, triple: FlipTriple) -> Option<BigRational> {
    critical_offset(n, set, triple).map(|c| c.t())
}

/// All critical times in `[0, 1]`, sorted by time then triple.
///
/// Fails if two triples sharing two lines are concurrent at the same instant,
/// which would mean four segments through one point.
pub fn critical_times(n: usize, set: LineSet) -> Result<Vec<CriticalTime>, ArrangementError> {
    check_index_set(n, set)?;
    let mut times = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                times.extend(critical_offset(n, set, FlipTriple { p: i, q: j, r: k }));
            }
        }
    }
    times.sort();
    for group in times.chunk_by(|a, b| a.offset == b.offset) {
        for (x, a) in group.iter().enumerate() {
            for b in &group[x + 1..] {
                if a.triple.shares_two_lines(&b.triple) {
                    return Err(ArrangementError::ConcurrentTriples(a.triple, b.triple));
                }
            }
        }
    }
    Ok(times)
}

/// Geometric flip schedule: the triples whose segments become concurrent
/// while the special arrangement is deformed into one containing `set`.
pub fn plan_b_flips(n: usize, set: LineSet) -> Result<Vec<FlipTriple>, ArrangementError> {
    if n < 3 {
        check_index_set(n, set)?;
        return Ok(vec![]);
    }
    Ok(critical_times(n, set)?.into_iter().map(|c| c.triple).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Plan {
    #[default]
    A,
    B,
}

impl Plan {
    pub fn flips(self, n: usize, set: LineSet) -> Result<Vec<FlipTriple>, ArrangementError> {
        match self {
            Plan::A => plan_a_flips(n, set),
            Plan::B => plan_b_flips(n, set),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{Eval, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_ratio(n, 1).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ones(n: usize) -> Arrangement<Rational> {
        Arrangement::special_with(n, |_, _| Ok::<_, ArrangementError>(q(1))).unwrap()
    }

    #[test]
    fn line_set_basics() {
        let s: LineSet = [1, 3].into_iter().collect();
        assert_eq!(s.to_string(), "{1,3}");
        assert!(!s.is_interval());
        assert!(LineSet::interval(2, 3).is_interval());
        assert_eq!(LineSet::interval(2, 3).max(), Some(4));
        assert_eq!(s.len(), 2);
        assert!(s.with(128).contains(128));
    }

    #[test]
    fn special_chambers_are_intervals() {
        for n in 1..=9 {
            let arr = ones(n);
            assert_eq!(arr.chamber_count(), n * (n + 1) / 2 - 1);
            assert!(arr.chambers().all(|(l, _)| l.is_interval()));
            let mut from_word = arr.labels_from_word();
            from_word.sort();
            let mut stored: Vec<LineSet> = arr.chambers().map(|(l, _)| *l).collect();
            stored.sort();
            assert_eq!(from_word, stored);
        }
    }

    #[test]
    fn special_from_map_reports_missing_interval() {
        let mut init = HashMap::new();
        init.insert(LineSet::interval(1, 1), q(1));
        let err = Arrangement::special(2, &init).unwrap_err();
        assert_eq!(err, ArrangementError::MissingInterval(LineSet::interval(2, 1)));
        init.insert(LineSet::interval(2, 1), q(1));
        let arr = Arrangement::special(2, &init).unwrap();
        assert_eq!(arr.chamber_count(), 2);
    }

    #[test]
    fn first_flip_replaces_two_by_one_three() {
        let mut arr = ones(3);
        let mut ev = Eval::<Rational>::new();
        let rec = arr.flip(FlipTriple::new(1, 2, 3).unwrap(), false, &mut Exchange(&mut ev)).unwrap();
        assert_eq!(rec.removed, [2].into_iter().collect());
        assert_eq!(rec.added, [1, 3].into_iter().collect());
        assert_eq!(arr.chamber_value([1, 3].into_iter().collect()).unwrap(), &q(2));
        assert!(arr.chamber_value([2].into_iter().collect()).is_err());
    }

    #[test]
    fn flip_back_restores() {
        let mut arr = Arrangement::special_with(4, |s, l| Ok::<_, ArrangementError>(q((s * 10 + l) as i64))).unwrap();
        let before: HashMap<LineSet, Rational> = arr.chambers().map(|(k, v)| (*k, v.clone())).collect();
        let mut labels = arr.labels_from_word();
        labels.sort();
        let mut ev = Eval::<Rational>::new();
        let t = FlipTriple::new(1, 2, 3).unwrap();
        assert!(arr.flip(t, false, &mut Exchange(&mut ev)).unwrap().raised);
        assert!(!arr.flip(t, false, &mut Exchange(&mut ev)).unwrap().raised);
        let after: HashMap<LineSet, Rational> = arr.chambers().map(|(k, v)| (*k, v.clone())).collect();
        assert_eq!(before, after);
        let mut again = arr.labels_from_word();
        again.sort();
        assert_eq!(labels, again);
    }

    #[test]
    fn non_adjacent_triangle_rejected() {
        let mut arr = ones(4);
        let mut ev = Eval::<Rational>::new();
        // In the special arrangement the lines 1, 2, 4 enclose line 3's crossings.
        let err = arr.flip(FlipTriple::new(1, 2, 4).unwrap(), false, &mut Exchange(&mut ev)).unwrap_err();
        assert_eq!(err, ArrangementError::NotFlippable(FlipTriple::new(1, 2, 4).unwrap()));
        let err = arr.flip(FlipTriple::new(1, 2, 5).unwrap(), false, &mut Exchange(&mut ev)).unwrap_err();
        assert!(matches!(err, ArrangementError::TripleOutOfRange { .. }));
    }

    #[test]
    fn zero_pivot_requires_zero_mode() {
        let mut arr: Arrangement<Option<Rational>> = Arrangement::special_with(3, |s, l| {
            Ok::<_, ArrangementError>(if (s, l) == (2, 1) { None } else { Some(q(1)) })
        })
        .unwrap();
        let mut ev = Eval::<Rational>::new();
        let t = FlipTriple::new(1, 2, 3).unwrap();
        let err = arr.clone().flip(t, false, &mut ZeroAwareExchange(&mut ev)).unwrap_err();
        assert_eq!(err, ArrangementError::ZeroPivot([2].into_iter().collect()));
        arr.flip(t, true, &mut ZeroAwareExchange(&mut ev)).unwrap();
        assert_eq!(arr.chamber_value([1, 3].into_iter().collect()).unwrap(), &None);
    }

    #[test]
    fn plan_a_examples() {
        let six: LineSet = [6].into_iter().collect();
        let flips = plan_a_flips(7, six).unwrap();
        assert_eq!(flips.len(), 10);
        assert_eq!(flips[0], FlipTriple::new(4, 5, 6).unwrap());
        assert_eq!(flips[9], FlipTriple::new(1, 2, 6).unwrap());
        let s13: LineSet = [1, 3].into_iter().collect();
        assert_eq!(plan_a_flips(4, s13).unwrap(), vec![FlipTriple::new(1, 2, 3).unwrap()]);
        assert!(plan_a_flips(4, LineSet::interval(1, 2)).unwrap().is_empty());
        assert!(plan_a_flips(4, LineSet::interval(1, 4)).is_err());
        assert!(plan_a_flips(4, LineSet::empty()).is_err());
        assert!(plan_a_flips(3, [4].into_iter().collect()).is_err());
    }

    fn all_subsets(n: usize) -> impl Iterator<Item = LineSet> {
        (1u32..(1 << n) - 1).map(move |mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
    }

    #[test]
    fn both_plans_reach_every_chamber() {
        let mut ev = Eval::<Rational>::new();
        for n in 1..=7 {
            for set in all_subsets(n) {
                for plan in [Plan::A, Plan::B] {
                    let mut arr = ones(n);
                    let flips = plan.flips(n, set).unwrap();
                    arr.apply(&flips, false, &mut Exchange(&mut ev))
                        .unwrap_or_else(|e| panic!("n={n} set={set} {plan:?}: {e}"));
                    assert!(arr.contains(set), "n={n} set={set} plan={plan:?}");
                    assert_eq!(arr.chamber_count(), n * (n + 1) / 2 - 1);
                }
            }
        }
    }

    #[test]
    fn flip_counts_bounded() {
        for n in 3..=30 {
            let sets: Vec<LineSet> = vec![
                LineSet::interval(2, n - 1),
                (1..=n).filter(|i| i % 2 == 0).collect(),
                (1..=n).filter(|i| i % 3 != 1).collect(),
                [n].into_iter().collect(),
            ];
            for set in sets {
                assert!(plan_a_flips(n, set).unwrap().len() <= n * (n - 1) * (n - 2) / 2);
                assert!(plan_b_flips(n, set).unwrap().len() <= n * (n - 1) * (n - 2) / 6);
            }
        }
    }

    #[test]
    fn critical_time_makes_segments_concurrent() {
        // Independent check: the segment from (-1, b_i(t)) to (1, -i) meets the
        // vertical x = x0 at a height linear in the data; concurrency of three
        // segments is checked by comparing pairwise intersection abscissae.
        let n = 6;
        let set: LineSet = [2, 5].into_iter().collect();
        let a = rat(1) / rat((n as i64).pow(6));
        let b = |i: usize, t: &BigRational| {
            let sigma = if set.contains(i) { rat(0) } else { rat(-1) };
            let i = rat(i as i64);
            &i * &i - t * (rat(2) * sigma * &a + rat(2) * &i * &i * &i * &a * &a - &i + &i * &i)
        };
        // 2 / (1 - x) = 1 + (b_i - b_j) / (i - j) at the crossing of i and j.
        let slope = |i: usize, j: usize, t: &BigRational| (b(i, t) - b(j, t)) / rat(i as i64 - j as i64);
        let times = critical_times(n, set).unwrap();
        assert!(!times.is_empty());
        for c in &times {
            let FlipTriple { p, q, r } = c.triple;
            let t = c.t();
            assert!(t > rat(0) && t <= rat(1));
            assert_eq!(critical_time(n, set, c.triple), Some(t.clone()));
            assert_eq!(slope(p, q, &t), slope(p, r, &t));
        }
    }
}
