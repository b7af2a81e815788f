//! Schur-type polynomials as chamber values of pseudoline arrangements.
//!
//! Every variant follows one recipe: seed the interval chambers of the special
//! arrangement on `n = k + λ₁` lines with closed-form values, run the flips of
//! a [`Plan`] towards the chamber `I(λ)`, and read that chamber.
//!
//! Only chambers with at most `k` lines below them are ever materialized. A
//! flip producing a chamber of size `s` reads chambers of size at most `s`, so
//! the larger ones never feed into the answer and are left as placeholders.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, ChamberAlgebra, LineSet, Plan};
use crate::circuit::{Circuit, CircuitBuilder};
use crate::semifield::{Arith, Eval, Outcome, Semifield, SemifieldError};

/// Weakly decreasing sequence of positive integers; trailing zeros are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, SchurError> {
        if let Some(w) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(SchurError::BadPartition(format!(
                "parts must be weakly decreasing, but part {} ({}) < part {} ({})",
                w + 1,
                parts[w],
                w + 2,
                parts[w + 1]
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(m, m - 1, ..., 1)`.
    pub fn staircase(m: usize) -> Self {
        Partition((1..=m).rev().collect())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, `0` for the empty partition.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// The `i`-th part, 1-based, `0` past the end.
    pub fn part(&self, i: usize) -> usize {
        i.checked_sub(1).and_then(|i| self.0.get(i)).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Whether the diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.0.iter().zip(&self.0).all(|(o, s)| o <= s)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = SchurError;

    /// Comma-separated parts, e.g. `"3,1,0"`; the empty string is `()`.
    fn from_str(text: &str) -> Result<Self, SchurError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for (i, raw) in text.split(',').enumerate() {
            let raw = raw.trim();
            let part = raw.parse::<usize>().map_err(|_| {
                SchurError::BadPartition(format!("part {} ({raw:?}) is not a nonnegative integer", i + 1))
            })?;
            parts.push(part);
        }
        Partition::new(parts)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchurError {
    #[error("malformed partition: {0}")]
    BadPartition(String),
    #[error("partition {partition} has more than {k} parts")]
    TooManyParts { partition: Partition, k: usize },
    #[error("need at least {need} y values, got {got}")]
    NotEnoughY { need: usize, got: usize },
    #[error("{0}")]
    BadIndexSet(String),
    #[error("unsupported parameter range: {0}")]
    Unsupported(String),
    #[error("chamber {0} vanished at this point; cannot divide by it")]
    VanishedChamber(LineSet),
    #[error("chamber {0}: computed vanishing disagrees with the containment criterion")]
    ZeroMismatch(LineSet),
    #[error("flip {0} moved back towards the special arrangement")]
    BackwardFlip(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Arith(#[from] SemifieldError),
}

/// `I(λ) = {λ_k + 1, λ_{k-1} + 2, ..., λ_1 + k}`.
pub fn index_set(lambda: &Partition, k: usize) -> Result<LineSet, SchurError> {
    if lambda.length() > k {
        return Err(SchurError::TooManyParts { partition: lambda.clone(), k });
    }
    if k + lambda.first() > LineSet::MAX_LINES {
        return Err(ArrangementError::BadSize(k + lambda.first()).into());
    }
    Ok((1..=k).map(|a| lambda.part(k + 1 - a) + a).collect())
}

/// Inverse of [`index_set`], with `k = |I|`.
pub fn partition_of(set: LineSet) -> Partition {
    let elems: Vec<usize> = set.iter().collect();
    let k = elems.len();
    Partition::new((1..=k).map(|i| elems[k - i] - (k + 1 - i)).collect()).expect("index set yields a partition")
}

/// Chamber value with the unit and zero kept symbolic, so neither costs gates.
#[derive(Debug, Clone, PartialEq)]
enum Cell<V> {
    Zero,
    One,
    Val(V),
    /// A chamber too large to matter.
    Skip,
}

fn c_mul<A: Arith>(ar: &mut A, x: &Cell<A::Value>, y: &Cell<A::Value>) -> Cell<A::Value> {
    match (x, y) {
        (Cell::Skip, _) | (_, Cell::Skip) => Cell::Skip,
        (Cell::Zero, _) | (_, Cell::Zero) => Cell::Zero,
        (Cell::One, o) | (o, Cell::One) => o.clone(),
        (Cell::Val(a), Cell::Val(b)) => Cell::Val(ar.mul(a, b)),
    }
}

fn c_add<A: Arith>(ar: &mut A, x: &Cell<A::Value>, y: &Cell<A::Value>) -> Cell<A::Value> {
    match (x, y) {
        (Cell::Skip, _) | (_, Cell::Skip) => Cell::Skip,
        (Cell::Zero, o) | (o, Cell::Zero) => o.clone(),
        (Cell::One, Cell::One) => Cell::Val(ar.int(2)),
        (Cell::One, Cell::Val(v)) | (Cell::Val(v), Cell::One) => {
            let one = ar.one();
            Cell::Val(ar.add(&one, v))
        }
        (Cell::Val(a), Cell::Val(b)) => Cell::Val(ar.add(a, b)),
    }
}

fn c_div<A: Arith>(ar: &mut A, x: &Cell<A::Value>, y: &Cell<A::Value>) -> Result<Cell<A::Value>, SemifieldError> {
    Ok(match (x, y) {
        (_, Cell::Zero) => return Err(SemifieldError::NotInvertible("structural zero".into())),
        (Cell::Skip, _) | (_, Cell::Skip) => Cell::Skip,
        (Cell::Zero, _) => Cell::Zero,
        (o, Cell::One) => o.clone(),
        (Cell::One, Cell::Val(b)) => {
            let one = ar.one();
            Cell::Val(ar.div(&one, b)?)
        }
        (Cell::Val(a), Cell::Val(b)) => Cell::Val(ar.div(a, b)?),
    })
}

fn c_pow<A: Arith>(ar: &mut A, x: &Cell<A::Value>, mut e: usize) -> Cell<A::Value> {
    let mut acc = Cell::One;
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = c_mul(ar, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = c_mul(ar, &base, &base);
        }
    }
    acc
}

struct Cells<'a, A> {
    arith: &'a mut A,
    k: usize,
}

impl<A: Arith> ChamberAlgebra for Cells<'_, A> {
    type Value = Cell<A::Value>;

    fn exchange(
        &mut self,
        target: LineSet,
        a: &Self::Value,
        b: &Self::Value,
        c: &Self::Value,
        d: &Self::Value,
        pivot: &Self::Value,
    ) -> Result<Self::Value, SemifieldError> {
        if target.len() > self.k {
            return Ok(Cell::Skip);
        }
        if [a, b, c, d, pivot].iter().any(|v| matches!(v, Cell::Skip)) {
            return Err(SemifieldError::NotInvertible(format!(
                "chamber {target} depends on an unmaterialized chamber"
            )));
        }
        let ac = c_mul(self.arith, a, c);
        let bd = c_mul(self.arith, b, d);
        let num = c_add(self.arith, &ac, &bd);
        c_div(self.arith, &num, pivot)
    }

    fn is_zero(&self, v: &Self::Value) -> bool {
        matches!(v, Cell::Zero)
    }

    fn zero(&mut self) -> Option<Self::Value> {
        Some(Cell::Zero)
    }
}

/// Interval table indexed `[len - 1][start - 1]`, for `len <= k`.
type Intervals<V> = Vec<Vec<Cell<V>>>;

#[allow(clippy::too_many_arguments)]
fn run_flags<A: Arith>(
    arith: &mut A,
    n: usize,
    k: usize,
    target: LineSet,
    plan: Plan,
    zero_mode: bool,
    intervals: &Intervals<A::Value>,
    check: &mut dyn FnMut(LineSet, bool) -> Result<(), SchurError>,
) -> Result<Cell<A::Value>, SchurError> {
    debug_assert!(target.len() <= k);
    if target.is_interval() {
        let start = target.iter().next().unwrap_or(1);
        return Ok(intervals[target.len() - 1][start - 1].clone());
    }
    let mut arr = Arrangement::special_with(n, |start, len| {
        Ok::<_, SchurError>(if len > k { Cell::Skip } else { intervals[len - 1][start - 1].clone() })
    })?;
    let flips = plan.flips(n, target)?;
    let mut alg = Cells { arith, k };
    for t in flips {
        let rec = arr.flip(t, zero_mode, &mut alg).map_err(|e| match e {
            ArrangementError::ZeroPivot(label) => SchurError::VanishedChamber(label),
            other => other.into(),
        })?;
        if !rec.raised {
            return Err(SchurError::BackwardFlip(t.to_string()));
        }
        if rec.added.len() <= k {
            let zero = matches!(arr.chamber_value(rec.added)?, Cell::Zero);
            check(rec.added, zero)?;
        }
    }
    Ok(arr.chamber_value(target)?.clone())
}

fn no_check(_: LineSet, _: bool) -> Result<(), SchurError> {
    Ok(())
}

fn schur_cells<A: Arith>(
    ar: &mut A,
    lambda: &Partition,
    x: &[Cell<A::Value>],
    plan: Plan,
) -> Result<Cell<A::Value>, SchurError> {
    let k = x.len();
    if lambda.length() > k {
        return Ok(Cell::Zero);
    }
    if lambda.is_empty() {
        return Ok(Cell::One);
    }
    let n = k + lambda.first();
    let target = index_set(lambda, k)?;
    // (x_1 ... x_p)^(start - 1)
    let mut table = Vec::with_capacity(k);
    let mut prefix = Cell::One;
    for (p, xp) in x.iter().enumerate() {
        prefix = c_mul(ar, &prefix, xp);
        let mut row = Vec::with_capacity(n - p);
        let mut cur = Cell::One;
        for start in 1..=n - p {
            if start > 1 {
                cur = c_mul(ar, &cur, &prefix);
            }
            row.push(cur.clone());
        }
        table.push(row);
    }
    run_flags(ar, n, k, target, plan, false, &table, &mut no_check)
}

fn double_schur_cells<A: Arith>(
    ar: &mut A,
    lambda: &Partition,
    x: &[Cell<A::Value>],
    y: &[Cell<A::Value>],
    plan: Plan,
) -> Result<Cell<A::Value>, SchurError> {
    let k = x.len();
    if lambda.length() > k {
        return Ok(Cell::Zero);
    }
    if lambda.is_empty() {
        return Ok(Cell::One);
    }
    let n = k + lambda.first();
    if y.len() < n - 1 {
        return Err(SchurError::NotEnoughY { need: n - 1, got: y.len() });
    }
    let target = index_set(lambda, k)?;
    // prod_{j <= p} prod_{b < start} (x_j + y_b)
    let mut column: Vec<Cell<A::Value>> = vec![Cell::One; n];
    let mut table = Vec::with_capacity(k);
    for (p, xp) in x.iter().enumerate() {
        let mut row = Vec::with_capacity(n - p);
        let mut g = Cell::One;
        for start in 1..=n - p {
            if start > 1 {
                let factor = c_add(ar, xp, &y[start - 2]);
                g = c_mul(ar, &g, &factor);
            }
            column[start - 1] = c_mul(ar, &column[start - 1], &g);
            row.push(column[start - 1].clone());
        }
        table.push(row);
    }
    run_flags(ar, n, k, target, plan, false, &table, &mut no_check)
}

fn super_schur_cells<A: Arith>(
    ar: &mut A,
    lambda: &Partition,
    x: &[Cell<A::Value>],
    y: &[Cell<A::Value>],
    plan: Plan,
) -> Result<Cell<A::Value>, SchurError> {
    let (k, m, len) = (x.len(), y.len(), lambda.length());
    if lambda.is_empty() {
        return Ok(Cell::One);
    }
    if m == 0 {
        return schur_cells(ar, lambda, x, plan);
    }
    let k_star = m + len - 1;
    // x is zero-padded only when k < k*; that is where the bound on k is needed
    if k < k_star && k + 2 < lambda.first() + len {
        return Err(SchurError::Unsupported(format!(
            "need k >= λ₁ + ℓ(λ) - 2 = {} or k >= m + ℓ(λ) - 1 = {k_star}, got k = {k}",
            lambda.first() + len - 2
        )));
    }
    let slots = k.max(k_star);
    let mut xs = x.to_vec();
    xs.resize(slots, Cell::Zero);
    let mut ys = y.to_vec();
    ys.resize((slots + lambda.first()).max(m + 1) - 1, Cell::Zero);
    double_schur_cells(ar, lambda, &xs, &ys, plan)
}

fn skew_schur_cells<A: Arith>(
    ar: &mut A,
    lambda: &Partition,
    nu: &Partition,
    x: &[Cell<A::Value>],
    plan: Plan,
) -> Result<Cell<A::Value>, SchurError> {
    let k = x.len();
    for p in [lambda, nu] {
        if p.length() > k {
            return Err(SchurError::TooManyParts { partition: p.clone(), k });
        }
    }
    if lambda.is_empty() {
        return Ok(if nu.is_empty() { Cell::One } else { Cell::Zero });
    }
    let n = k + lambda.first();
    let target = index_set(lambda, k)?;
    // ν(p): the p smallest parts of ν, as a partition
    let nu_tail = |p: usize| Partition((k - p + 1..=k).map(|i| nu.part(i)).filter(|&v| v > 0).collect());
    let mut table = Vec::with_capacity(k);
    for p in 1..=k {
        let mut row = Vec::with_capacity(n - p + 1);
        for start in 1..=n - p + 1 {
            let height = start - 1;
            if nu.part(k - p + 1) > height {
                row.push(Cell::Zero);
                continue;
            }
            let theta = Partition::new((1..=p).map(|i| height - nu.part(k + 1 - i)).collect())?;
            row.push(schur_cells(ar, &theta, x, plan)?);
        }
        table.push(row);
    }
    let mut check = |label: LineSet, zero: bool| {
        let expected_zero = !partition_of(label).contains(&nu_tail(label.len()));
        if zero == expected_zero {
            Ok(())
        } else {
            Err(SchurError::ZeroMismatch(label))
        }
    };
    let out = run_flags(ar, n, k, target, plan, true, &table, &mut check)?;
    if matches!(out, Cell::Zero) == lambda.contains(nu) {
        return Err(SchurError::ZeroMismatch(target));
    }
    Ok(out)
}

fn bivariate_cells<A: Arith>(
    ar: &mut A,
    l1: usize,
    l2: usize,
    x1: &Cell<A::Value>,
    x2: &Cell<A::Value>,
) -> Result<Cell<A::Value>, SchurError> {
    if l1 < l2 {
        return Err(SchurError::BadPartition(format!("need λ₁ >= λ₂, got ({l1},{l2})")));
    }
    // Returns (h_m, x1^(m+1), x2^(m+1)).
    #[allow(clippy::type_complexity)]
    fn h<A: Arith>(
        ar: &mut A,
        m: usize,
        x1: &Cell<A::Value>,
        x2: &Cell<A::Value>,
    ) -> (Cell<A::Value>, Cell<A::Value>, Cell<A::Value>) {
        if m == 0 {
            return (Cell::One, x1.clone(), x2.clone());
        }
        let odd = m % 2 == 1;
        let d = if odd { (m - 1) / 2 } else { (m - 2) / 2 };
        let (hd, p1, p2) = h(ar, d, x1, x2);
        let (q1, q2) = (c_mul(ar, &p1, &p1), c_mul(ar, &p2, &p2));
        let (out, r1, r2) = if odd {
            let s = c_add(ar, &p1, &p2);
            (c_mul(ar, &s, &hd), q1, q2)
        } else {
            let a1 = c_mul(ar, &p1, x1);
            let a2 = c_mul(ar, &p2, x2);
            let s = c_add(ar, &a1, &a2);
            let lead = c_mul(ar, &s, &hd);
            let mid = c_mul(ar, &p1, &p2);
            let r1 = c_mul(ar, &q1, x1);
            let r2 = c_mul(ar, &q2, x2);
            (c_add(ar, &lead, &mid), r1, r2)
        };
        (out, r1, r2)
    }
    let (hm, _, _) = h(ar, l1 - l2, x1, x2);
    let base = c_mul(ar, x1, x2);
    let scale = c_pow(ar, &base, l2);
    Ok(c_mul(ar, &scale, &hm))
}

fn vals<V: Clone>(xs: &[V]) -> Vec<Cell<V>> {
    xs.iter().cloned().map(Cell::Val).collect()
}

fn close<A: Arith>(ar: &mut A, cell: Cell<A::Value>) -> Outcome<A::Value> {
    match cell {
        Cell::Val(v) => Outcome::Value(v),
        Cell::One => Outcome::Value(ar.one()),
        Cell::Zero => Outcome::ZeroPolynomial,
        Cell::Skip => unreachable!("target chambers are always materialized"),
    }
}

fn named(b: &mut CircuitBuilder, prefix: &str, count: usize) -> Vec<Cell<crate::circuit::GateRef>> {
    (1..=count).map(|i| Cell::Val(b.input(&format!("{prefix}{i}")))).collect()
}

fn finish(mut b: CircuitBuilder, cell: Cell<crate::circuit::GateRef>) -> Outcome<Circuit> {
    match close(&mut b, cell) {
        Outcome::Value(g) => Outcome::Value(b.finish(vec![g])),
        Outcome::ZeroPolynomial => Outcome::ZeroPolynomial,
    }
}

/// `s_λ(x_1, ..., x_k)` with `k = x.len()`.
pub fn schur_with<A: Arith>(
    ar: &mut A,
    lambda: &Partition,
    x: &[A::Value],
    plan: Plan,
) -> Result<Outcome<A::Value>, SchurError> {
    let cell = schur_cells(ar, lambda, &vals(x), plan)?;
    Ok(close(ar, cell))
}

pub fn schur_eval<S: Semifield>(lambda: &Partition, x: &[S], plan: Plan) -> Result<Outcome<S>, SchurError> {
    schur_with(&mut Eval::<S>::new(), lambda, x, plan)
}

/// Circuit with inputs `x1..xk` computing `s_λ`.
pub fn schur_circuit(lambda: &Partition, k: usize, plan: Plan) -> Result<Outcome<Circuit>, SchurError> {
    let mut b = CircuitBuilder::new();
    let x = named(&mut b, "x", k);
    let cell = schur_cells(&mut b, lambda, &x, plan)?;
    Ok(finish(b, cell))
}

/// The flag minor `s_I(x_1, ..., x_k)` with `k = |I| = x.len()`.
pub fn flag_minor_eval<S: Semifield>(set: LineSet, x: &[S], plan: Plan) -> Result<S, SchurError> {
    if set.is_empty() || set.len() != x.len() {
        return Err(SchurError::BadIndexSet(format!("index set {set} needs {} x values, got {}", set.len(), x.len())));
    }
    let out = schur_eval(&partition_of(set), x, plan)?;
    Ok(out.value().expect("flag minors of size k in k variables never vanish"))
}

/// `(x1 x2)^λ₂ h_{λ₁ - λ₂}(x1, x2)` by the halving recursion for `h`.
pub fn bivariate_schur_fast<A: Arith>(
    ar: &mut A,
    l1: usize,
    l2: usize,
    x1: &A::Value,
    x2: &A::Value,
) -> Result<A::Value, SchurError> {
    let cell = bivariate_cells(ar, l1, l2, &Cell::Val(x1.clone()), &Cell::Val(x2.clone()))?;
    Ok(close(ar, cell).value().expect("bivariate Schur values never vanish"))
}

/// `s_λ(x | y)`; needs `y.len() >= k + λ₁ - 1`, extra `y` values are ignored.
pub fn double_schur_with<A: Arith>(
    ar: &mut A,
    lambda: &Partition,
    x: &[A::Value],
    y: &[A::Value],
    plan: Plan,
) -> Result<Outcome<A::Value>, SchurError> {
    let cell = double_schur_cells(ar, lambda, &vals(x), &vals(y), plan)?;
    Ok(close(ar, cell))
}

pub fn double_schur_eval<S: Semifield>(
    lambda: &Partition,
    x: &[S],
    y: &[S],
    plan: Plan,
) -> Result<Outcome<S>, SchurError> {
    double_schur_with(&mut Eval::<S>::new(), lambda, x, y, plan)
}

/// Like [`double_schur_eval`], with `y_b = 0` for `b > y.len()`.
pub fn double_schur_truncated_eval<S: Semifield>(
    lambda: &Partition,
    x: &[S],
    y: &[S],
    plan: Plan,
) -> Result<Outcome<S>, SchurError> {
    let ar = &mut Eval::<S>::new();
    let mut ys = vals(y);
    let need = (x.len() + lambda.first()).saturating_sub(1);
    if ys.len() < need {
        ys.resize(need, Cell::Zero);
    }
    let cell = double_schur_cells(ar, lambda, &vals(x), &ys, plan)?;
    Ok(close(ar, cell))
}

/// Circuit with inputs `x1..xk`, `y1..y(k+λ₁-1)`.
pub fn double_schur_circuit(lambda: &Partition, k: usize, plan: Plan) -> Result<Outcome<Circuit>, SchurError> {
    let mut b = CircuitBuilder::new();
    let x = named(&mut b, "x", k);
    let y = named(&mut b, "y", (k + lambda.first()).saturating_sub(1));
    let cell = double_schur_cells(&mut b, lambda, &x, &y, plan)?;
    Ok(finish(b, cell))
}

/// Supersymmetric `s_λ(x_1..x_k; y_1..y_m)`, for `k >= λ₁ + ℓ(λ) - 2` or
/// `k >= m + ℓ(λ) - 1`.
pub fn super_schur_with<A: Arith>(
    ar: &mut A,
    lambda: &Partition,
    x: &[A::Value],
    y: &[A::Value],
    plan: Plan,
) -> Result<Outcome<A::Value>, SchurError> {
    let cell = super_schur_cells(ar, lambda, &vals(x), &vals(y), plan)?;
    Ok(close(ar, cell))
}

pub fn super_schur_eval<S: Semifield>(
    lambda: &Partition,
    x: &[S],
    y: &[S],
    plan: Plan,
) -> Result<Outcome<S>, SchurError> {
    super_schur_with(&mut Eval::<S>::new(), lambda, x, y, plan)
}

/// Circuit with inputs `x1..xk`, `y1..ym`.
pub fn super_schur_circuit(lambda: &Partition, k: usize, m: usize, plan: Plan) -> Result<Outcome<Circuit>, SchurError> {
    let mut b = CircuitBuilder::new();
    let x = named(&mut b, "x", k);
    let y = named(&mut b, "y", m);
    let cell = super_schur_cells(&mut b, lambda, &x, &y, plan)?;
    Ok(finish(b, cell))
}

/// `s_{λ/ν}(x_1..x_k)`; the zero polynomial exactly when `ν ⊄ λ`.
pub fn skew_schur_with<A: Arith>(
    ar: &mut A,
    lambda: &Partition,
    nu: &Partition,
    x: &[A::Value],
    plan: Plan,
) -> Result<Outcome<A::Value>, SchurError> {
    let cell = skew_schur_cells(ar, lambda, nu, &vals(x), plan)?;
    Ok(close(ar, cell))
}

pub fn skew_schur_eval<S: Semifield>(
    lambda: &Partition,
    nu: &Partition,
    x: &[S],
    plan: Plan,
) -> Result<Outcome<S>, SchurError> {
    skew_schur_with(&mut Eval::<S>::new(), lambda, nu, x, plan)
}

pub fn skew_schur_circuit(
    lambda: &Partition,
    nu: &Partition,
    k: usize,
    plan: Plan,
) -> Result<Outcome<Circuit>, SchurError> {
    let mut b = CircuitBuilder::new();
    let x = named(&mut b, "x", k);
    let cell = skew_schur_cells(&mut b, lambda, nu, &x, plan)?;
    Ok(finish(b, cell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{Float64, Rational, Tropical};

    fn q(n: i64) -> Rational {
        Rational::from_ratio(n, 1).unwrap()
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| q(n)).collect()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn value<S>(o: Outcome<S>) -> S {
        o.value().expect("nonzero")
    }

    #[test]
    fn partition_parsing() {
        assert_eq!(p("3,1,0"), Partition(vec![3, 1]));
        assert_eq!(p(""), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        let err = "2,x".parse::<Partition>().unwrap_err().to_string();
        assert!(err.contains("part 2"), "{err}");
        assert_eq!(p("2,1").to_string(), "(2,1)");
        assert!(p("3,2").contains(&p("2,2")));
        assert!(!p("1,1").contains(&p("2")));
    }

    #[test]
    fn index_set_examples() {
        assert_eq!(index_set(&p("2,1"), 2).unwrap(), [2, 4].into_iter().collect());
        assert_eq!(index_set(&p(""), 3).unwrap(), LineSet::interval(1, 3));
        for k in 1..=5 {
            for l1 in 0..=8 - k {
                for mask in 0u32..(1 << (k + l1)) {
                    let set: LineSet = (1..=k + l1).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                    if set.len() != k {
                        continue;
                    }
                    let lambda = partition_of(set);
                    assert_eq!(index_set(&lambda, k).unwrap(), set);
                }
            }
        }
    }

    #[test]
    fn small_schur_values() {
        assert_eq!(value(schur_eval(&p("1"), &qs(&[5]), Plan::A).unwrap()), q(5));
        assert_eq!(value(schur_eval(&p("2,1"), &qs(&[1, 2]), Plan::A).unwrap()), q(6));
        assert_eq!(value(schur_eval(&p("2,1"), &qs(&[1, 2]), Plan::B).unwrap()), q(6));
        // 3 tableaux of shape (2,2,1) with entries at most 3.
        assert_eq!(value(schur_eval(&p("2,2,1"), &qs(&[1, 1, 1]), Plan::A).unwrap()), q(3));
        assert_eq!(value(schur_eval(&p(""), &qs(&[2, 3]), Plan::A).unwrap()), q(1));
        assert!(schur_eval(&p("1,1,1"), &qs(&[2, 3]), Plan::A).unwrap().is_zero());
    }

    #[test]
    fn schur_over_other_semifields() {
        let x = [Float64::new(1.5).unwrap(), Float64::new(2.0).unwrap()];
        let v = value(schur_eval(&p("2,1"), &x, Plan::A).unwrap());
        assert!((v.value() - 1.5 * 2.0 * 3.5).abs() < 1e-12);
        // min over monomials x1^2 x2, x1 x2^2
        let t = [Tropical::new(1.0).unwrap(), Tropical::new(-2.0).unwrap()];
        let v = value(schur_eval(&p("2,1"), &t, Plan::A).unwrap());
        assert_eq!(v.value(), -3.0);
    }

    #[test]
    fn bivariate_recursion() {
        let mut ev = Eval::<Rational>::new();
        assert_eq!(bivariate_schur_fast(&mut ev, 1, 0, &q(2), &q(3)).unwrap(), q(5));
        assert_eq!(bivariate_schur_fast(&mut ev, 5, 0, &q(1), &q(1)).unwrap(), q(6));
        assert_eq!(bivariate_schur_fast(&mut ev, 3, 1, &q(2), &q(1)).unwrap(), q(14));
        for l1 in 0..12 {
            for l2 in 0..=l1 {
                let lam = Partition::new(vec![l1, l2]).unwrap();
                let slow = value(schur_eval(&lam, &qs(&[2, 3]), Plan::A).unwrap());
                assert_eq!(bivariate_schur_fast(&mut ev, l1, l2, &q(2), &q(3)).unwrap(), slow, "{lam}");
            }
        }
        assert!(bivariate_schur_fast(&mut ev, 1, 2, &q(2), &q(3)).is_err());
    }

    #[test]
    fn bivariate_gate_count_is_logarithmic() {
        let mut b = CircuitBuilder::new();
        let (x1, x2) = (b.input("x1"), b.input("x2"));
        let g = bivariate_schur_fast(&mut b, 1 << 20, 0, &x1, &x2).unwrap();
        let c = b.finish(vec![g]);
        assert!(c.stats().total <= 8 * 21, "{:?}", c.stats());
    }

    #[test]
    fn double_schur_fixture() {
        let (x1, x2) = (q(2), q(3));
        let y = qs(&[5, 7, 11]);
        let got = value(double_schur_eval(&p("2,1"), &[x1.clone(), x2.clone()], &y, Plan::A).unwrap());
        let want = (2 + 5) * (3 + 5) * (2 + 3 + 7 + 11);
        assert_eq!(got, q(want));
        let err = double_schur_eval(&p("2,1"), &[x1, x2], &y[..2], Plan::A).unwrap_err();
        assert_eq!(err, SchurError::NotEnoughY { need: 3, got: 2 });
    }

    #[test]
    fn super_schur_fixtures() {
        let x = qs(&[2, 3]);
        let got = value(super_schur_eval(&p("2,1"), &x, &qs(&[5]), Plan::A).unwrap());
        assert_eq!(got, q((2 + 3) * (2 + 5) * (3 + 5)));
        let got = value(super_schur_eval(&p("2,1"), &qs(&[1, 1]), &qs(&[1, 1]), Plan::A).unwrap());
        assert_eq!(got, q(20));
        let got = value(super_schur_eval(&p("2,1"), &x, &[], Plan::A).unwrap());
        assert_eq!(got, value(schur_eval(&p("2,1"), &x, Plan::A).unwrap()));
        let err = super_schur_eval(&p("3,1"), &qs(&[1]), &qs(&[1]), Plan::A).unwrap_err();
        assert!(matches!(err, SchurError::Unsupported(_)));
    }

    #[test]
    fn skew_examples() {
        let x = qs(&[1, 1]);
        assert_eq!(value(skew_schur_eval(&p("2,1"), &p("1"), &x, Plan::A).unwrap()), q(4));
        assert!(skew_schur_eval(&p("1,1"), &p("2"), &x, Plan::A).unwrap().is_zero());
        let x = qs(&[2, 3, 5]);
        assert_eq!(
            skew_schur_eval(&p("3,1"), &p(""), &x, Plan::A).unwrap(),
            schur_eval(&p("3,1"), &x, Plan::A).unwrap()
        );
    }

    #[test]
    fn circuits_match_evaluation() {
        let lam = p("3,2,1");
        let c = schur_circuit(&lam, 3, Plan::A).unwrap().value().unwrap();
        c.validate().unwrap();
        let x = qs(&[2, 3, 7]);
        let direct = value(schur_eval(&lam, &x, Plan::A).unwrap());
        assert_eq!(c.evaluate_positional(&x).unwrap(), vec![direct]);
        let one = schur_circuit(&p("1"), 1, Plan::A).unwrap().value().unwrap();
        assert_eq!(one.stats().total, 0);
        assert!(schur_circuit(&p("1,1"), 1, Plan::A).unwrap().is_zero());
    }
}
