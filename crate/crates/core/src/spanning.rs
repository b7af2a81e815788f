//! Spanning-tree and arborescence generating functions by vertex elimination.
//!
//! Undirected graphs are reduced by star-mesh transformations, which keep
//! every effective conductance between the surviving vertices. Directed graphs
//! are reduced by the directed analogue, which multiplies the arborescence
//! generating function by the total out-weight of the eliminated vertex.
//!
//! Graphs are dense: weights live in an adjacency matrix of `Option` handles,
//! and removed vertices are only marked dead, so indices stay stable.

use std::collections::{HashMap, VecDeque};

use serde::Deserialize;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitBuilder, GateRef};
use crate::oracles::{Arc, Edge};
use crate::semifield::{Arith, Eval, Outcome, Semifield, SemifieldError, Tropical};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpanningError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("vertices must be distinct, got {0:?} twice")]
    SameVertex(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("the root {0:?} cannot be eliminated")]
    RootElimination(String),
    #[error("elimination order must list every non-root vertex exactly once")]
    BadOrder,
    #[error("{location}: {message}")]
    Json { location: String, message: String },
    #[error(transparent)]
    Arith(#[from] SemifieldError),
}

/// Which vertex to eliminate next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EliminationOrder {
    /// Increasing vertex index.
    #[default]
    Ascending,
    /// Fewest neighbours first (smallest mesh), ties by index.
    MinDegree,
}

fn merge<A: Arith>(ar: &mut A, slot: &mut Option<A::Value>, w: A::Value) {
    *slot = Some(match slot.take() {
        Some(old) => ar.add(&old, &w),
        None => w,
    });
}

fn check_ids(ids: &[String]) -> Result<HashMap<String, usize>, SpanningError> {
    let mut index = HashMap::new();
    for (i, id) in ids.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(SpanningError::DuplicateVertex(id.clone()));
        }
    }
    Ok(index)
}

fn compact(alive: &[bool]) -> (usize, Vec<usize>) {
    let mut slot = vec![usize::MAX; alive.len()];
    let mut m = 0;
    for (v, &a) in alive.iter().enumerate() {
        if a {
            slot[v] = m;
            m += 1;
        }
    }
    (m, slot)
}

/// Simple undirected graph with weights on its edges.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<V> {
    ids: Vec<String>,
    alive: Vec<bool>,
    adj: Vec<Vec<Option<V>>>,
}

impl<V: Clone> WeightedGraph<V> {
    pub fn new(ids: Vec<String>) -> Result<Self, SpanningError> {
        check_ids(&ids)?;
        let n = ids.len();
        Ok(WeightedGraph { ids, alive: vec![true; n], adj: vec![vec![None; n]; n] })
    }

    /// Vertices labelled `"1"` to `"n"`.
    pub fn with_vertices(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string()).collect()).expect("distinct labels")
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, SpanningError> {
        self.ids
            .iter()
            .position(|x| x == id)
            .filter(|&v| self.alive[v])
            .ok_or_else(|| SpanningError::UnknownVertex(id.to_string()))
    }

    /// Indices of the vertices still present.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.ids.len()).filter(|&v| self.alive[v]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&V> {
        self.adj.get(u)?.get(v)?.as_ref()
    }

    /// `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, &V)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in u + 1..self.ids.len() {
                if let Some(w) = &self.adj[u][v] {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.ids.len()).filter(|&u| self.adj[v][u].is_some()).collect()
    }

    /// Adds `w` to the weight of `u -- v`; loops are dropped.
    pub fn add_edge<A: Arith<Value = V>>(&mut self, ar: &mut A, u: usize, v: usize, w: V) {
        if u == v {
            return;
        }
        merge(ar, &mut self.adj[u][v], w.clone());
        merge(ar, &mut self.adj[v][u], w);
    }

    fn remove(&mut self, v: usize) {
        self.alive[v] = false;
        for u in 0..self.ids.len() {
            self.adj[v][u] = None;
            self.adj[u][v] = None;
        }
    }

    pub fn is_connected(&self) -> bool {
        let verts = self.vertices();
        let Some(&start) = verts.first() else { return true };
        let mut seen = vec![false; self.ids.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == verts.len()
    }

    pub fn map<W>(&self, mut f: impl FnMut(usize, usize, &V) -> W) -> WeightedGraph<W> {
        let n = self.ids.len();
        let mut adj: Vec<Vec<Option<W>>> = (0..n).map(|_| (0..n).map(|_| None).collect()).collect();
        for (u, v, w) in self.edges() {
            let a = f(u, v, w);
            let b = f(u, v, w);
            adj[u][v] = Some(a);
            adj[v][u] = Some(b);
        }
        WeightedGraph { ids: self.ids.clone(), alive: self.alive.clone(), adj }
    }

    /// Surviving vertices renumbered `0..m` in index order, with their edges.
    pub fn compact_edges(&self) -> (usize, Vec<Edge<V>>) {
        let (m, slot) = compact(&self.alive);
        let edges = self.edges().into_iter().map(|(u, v, w)| Edge { u: slot[u], v: slot[v], w: w.clone() }).collect();
        (m, edges)
    }

    /// Both orientations of every edge, each carrying the edge weight.
    pub fn to_digraph(&self, root: usize) -> WeightedDigraph<V> {
        WeightedDigraph { ids: self.ids.clone(), alive: self.alive.clone(), adj: self.adj.clone(), root }
    }
}

/// Builds a simple graph from a multigraph edge list: loops are dropped and
/// parallel edges merged by adding weights.
pub fn simplify<A: Arith>(
    ar: &mut A,
    ids: Vec<String>,
    edges: impl IntoIterator<Item = (usize, usize, A::Value)>,
) -> Result<WeightedGraph<A::Value>, SpanningError> {
    let mut g = WeightedGraph::new(ids)?;
    for (u, v, w) in edges {
        g.add_edge(ar, u, v, w);
    }
    Ok(g)
}

fn glue_in_place<A: Arith>(ar: &mut A, g: &mut WeightedGraph<A::Value>, v: usize, w: usize) {
    for u in g.vertices() {
        if let Some(x) = g.adj[w][u].clone() {
            g.add_edge(ar, v, u, x);
        }
    }
    g.remove(w);
}

/// Identifies `v2` with `v`; the merged vertex keeps the index and id of `v`.
pub fn glue<A: Arith>(
    ar: &mut A,
    g: &WeightedGraph<A::Value>,
    v: usize,
    v2: usize,
) -> Result<WeightedGraph<A::Value>, SpanningError> {
    check_pair(g, v, v2)?;
    let mut out = g.clone();
    glue_in_place(ar, &mut out, v, v2);
    Ok(out)
}

fn check_pair<V: Clone>(g: &WeightedGraph<V>, a: usize, b: usize) -> Result<(), SpanningError> {
    for x in [a, b] {
        if !g.alive.get(x).copied().unwrap_or(false) {
            return Err(SpanningError::UnknownVertex(format!("#{x}")));
        }
    }
    if a == b {
        return Err(SpanningError::SameVertex(g.ids[a].clone()));
    }
    Ok(())
}

fn star_mesh_in_place<A: Arith>(ar: &mut A, g: &mut WeightedGraph<A::Value>, v: usize) {
    let nbrs = g.neighbors(v);
    let weights: Vec<A::Value> = nbrs.iter().map(|&u| g.adj[v][u].clone().expect("neighbour")).collect();
    g.remove(v);
    if nbrs.len() < 2 {
        return;
    }
    let total = ar.sum(&weights).expect("nonempty");
    let scaled: Vec<A::Value> = weights.iter().map(|w| ar.div(w, &total).expect("positive total")).collect();
    for i in 0..nbrs.len() {
        for j in i + 1..nbrs.len() {
            let w = ar.mul(&weights[i], &scaled[j]);
            g.add_edge(ar, nbrs[i], nbrs[j], w);
        }
    }
}

/// Removes `v`, joining each pair of its neighbours `i, j` by an edge of
/// weight `x_i x_j / sum_l x_l`.
pub fn star_mesh_undirected<A: Arith>(
    ar: &mut A,
    g: &WeightedGraph<A::Value>,
    v: usize,
) -> Result<WeightedGraph<A::Value>, SpanningError> {
    if !g.alive.get(v).copied().unwrap_or(false) {
        return Err(SpanningError::UnknownVertex(format!("#{v}")));
    }
    let mut out = g.clone();
    star_mesh_in_place(ar, &mut out, v);
    Ok(out)
}

fn pick_undirected<V: Clone>(g: &WeightedGraph<V>, keep: &[usize], order: EliminationOrder) -> Option<usize> {
    let candidates = g.vertices().into_iter().filter(|v| !keep.contains(v));
    match order {
        EliminationOrder::Ascending => candidates.min(),
        EliminationOrder::MinDegree => candidates.min_by_key(|&v| (g.neighbors(v).len(), v)),
    }
}

/// `f_G / f_G(a,b)`, by eliminating every vertex other than `a` and `b`.
pub fn effective_conductance<A: Arith>(
    ar: &mut A,
    g: &WeightedGraph<A::Value>,
    a: usize,
    b: usize,
    order: EliminationOrder,
) -> Result<A::Value, SpanningError> {
    check_pair(g, a, b)?;
    if !g.is_connected() {
        return Err(SpanningError::Disconnected);
    }
    let mut work = g.clone();
    while let Some(v) = pick_undirected(&work, &[a, b], order) {
        star_mesh_in_place(ar, &mut work, v);
    }
    work.adj[a][b].clone().ok_or(SpanningError::Disconnected)
}

/// `f_G` as the product of effective conductances between consecutive
/// vertices, after gluing all earlier vertices together.
pub fn spanning_tree_gf_via_conductance<A: Arith>(
    ar: &mut A,
    g: &WeightedGraph<A::Value>,
    order: EliminationOrder,
) -> Result<A::Value, SpanningError> {
    if !g.is_connected() {
        return Err(SpanningError::Disconnected);
    }
    let verts = g.vertices();
    let mut work = g.clone();
    let mut factors = Vec::with_capacity(verts.len());
    for pair in verts.windows(2) {
        factors.push(effective_conductance(ar, &work, pair[0], pair[1], order)?);
        glue_in_place(ar, &mut work, pair[1], pair[0]);
    }
    Ok(ar.product(&factors).unwrap_or_else(|| ar.one()))
}

/// `f_G` through the directed reduction rooted at the first vertex.
pub fn spanning_tree_gf<A: Arith>(
    ar: &mut A,
    g: &WeightedGraph<A::Value>,
    order: EliminationOrder,
) -> Result<A::Value, SpanningError> {
    if !g.is_connected() {
        return Err(SpanningError::Disconnected);
    }
    let root = g.vertices().first().copied().unwrap_or(0);
    match arborescence_gf(ar, &g.to_digraph(root), order)? {
        Outcome::Value(v) => Ok(v),
        Outcome::ZeroPolynomial => Err(SpanningError::Disconnected),
    }
}

/// Simple digraph with weighted arcs and a designated root.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph<V> {
    ids: Vec<String>,
    alive: Vec<bool>,
    /// `adj[from][to]`
    adj: Vec<Vec<Option<V>>>,
    root: usize,
}

impl<V: Clone> WeightedDigraph<V> {
    pub fn new(ids: Vec<String>, root: &str) -> Result<Self, SpanningError> {
        let index = check_ids(&ids)?;
        let root = *index.get(root).ok_or_else(|| SpanningError::UnknownVertex(root.to_string()))?;
        let n = ids.len();
        Ok(WeightedDigraph { ids, alive: vec![true; n], adj: vec![vec![None; n]; n], root })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, SpanningError> {
        self.ids
            .iter()
            .position(|x| x == id)
            .filter(|&v| self.alive[v])
            .ok_or_else(|| SpanningError::UnknownVertex(id.to_string()))
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.ids.len()).filter(|&v| self.alive[v]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<&V> {
        self.adj.get(from)?.get(to)?.as_ref()
    }

    /// `(from, to, w)`, ordered by `from` then `to`.
    pub fn arcs(&self) -> Vec<(usize, usize, &V)> {
        let n = self.ids.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if let Some(w) = &self.adj[u][v] {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    /// Adds `w` to the weight of `from -> to`; loops are dropped.
    pub fn add_arc<A: Arith<Value = V>>(&mut self, ar: &mut A, from: usize, to: usize, w: V) {
        if from != to {
            merge(ar, &mut self.adj[from][to], w);
        }
    }

    fn remove(&mut self, v: usize) {
        self.alive[v] = false;
        for u in 0..self.ids.len() {
            self.adj[v][u] = None;
            self.adj[u][v] = None;
        }
    }

    fn out_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.ids.len()).filter(|&u| self.adj[v][u].is_some()).collect()
    }

    fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.ids.len()).filter(|&u| self.adj[u][v].is_some()).collect()
    }

    /// Whether every vertex has a directed path to the root.
    pub fn all_reach_root(&self) -> bool {
        let n = self.ids.len();
        let mut seen = vec![false; n];
        seen[self.root] = true;
        let mut queue = VecDeque::from([self.root]);
        while let Some(v) = queue.pop_front() {
            for u in self.in_neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        self.vertices().iter().all(|&v| seen[v])
    }

    /// Surviving vertices renumbered `0..m` in index order: `(m, arcs, root)`.
    pub fn compact_arcs(&self) -> (usize, Vec<Arc<V>>, usize) {
        let (m, slot) = compact(&self.alive);
        let arcs = self.arcs().into_iter().map(|(u, v, w)| Arc { from: slot[u], to: slot[v], w: w.clone() }).collect();
        (m, arcs, slot[self.root])
    }

    pub fn map<W>(&self, mut f: impl FnMut(usize, usize, &V) -> W) -> WeightedDigraph<W> {
        let n = self.ids.len();
        let mut adj: Vec<Vec<Option<W>>> = (0..n).map(|_| (0..n).map(|_| None).collect()).collect();
        for (u, v, w) in self.arcs() {
            adj[u][v] = Some(f(u, v, w));
        }
        WeightedDigraph { ids: self.ids.clone(), alive: self.alive.clone(), adj, root: self.root }
    }
}

/// Returns the factor `sum_j y_j` and leaves `d` without `v`, where `y_j` are
/// the weights out of `v` and each `v_i -> v -> v_j` becomes an arc of weight
/// `x_i y_j / sum y`. `None` when `v` has no outgoing arc.
fn directed_star_mesh_in_place<A: Arith>(ar: &mut A, d: &mut WeightedDigraph<A::Value>, v: usize) -> Option<A::Value> {
    let outs = d.out_neighbors(v);
    let ins = d.in_neighbors(v);
    let y: Vec<A::Value> = outs.iter().map(|&j| d.adj[v][j].clone().expect("arc")).collect();
    let x: Vec<A::Value> = ins.iter().map(|&i| d.adj[i][v].clone().expect("arc")).collect();
    d.remove(v);
    let total = ar.sum(&y)?;
    let scaled: Vec<A::Value> = y.iter().map(|w| ar.div(w, &total).expect("positive total")).collect();
    for (i, xi) in ins.iter().zip(&x) {
        for (j, yj) in outs.iter().zip(&scaled) {
            if i != j {
                let w = ar.mul(xi, yj);
                d.add_arc(ar, *i, *j, w);
            }
        }
    }
    Some(total)
}

/// One directed star-mesh step: `φ(d) = factor · φ(result)`.
#[allow(clippy::type_complexity)]
pub fn directed_star_mesh<A: Arith>(
    ar: &mut A,
    d: &WeightedDigraph<A::Value>,
    v: usize,
) -> Result<Outcome<(WeightedDigraph<A::Value>, A::Value)>, SpanningError> {
    if !d.alive.get(v).copied().unwrap_or(false) {
        return Err(SpanningError::UnknownVertex(format!("#{v}")));
    }
    if v == d.root {
        return Err(SpanningError::RootElimination(d.ids[v].clone()));
    }
    let mut out = d.clone();
    Ok(match directed_star_mesh_in_place(ar, &mut out, v) {
        Some(f) => Outcome::Value((out, f)),
        None => Outcome::ZeroPolynomial,
    })
}

/// Eliminated vertices with their factors, in elimination order.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationTrace<V> {
    pub steps: Vec<(usize, V)>,
}

fn prepare<V: Clone>(d: &WeightedDigraph<V>) -> WeightedDigraph<V> {
    let mut work = d.clone();
    for u in 0..work.ids.len() {
        work.adj[work.root][u] = None;
    }
    work
}

fn pick_directed<V: Clone>(d: &WeightedDigraph<V>, order: EliminationOrder) -> Option<usize> {
    let candidates = d.vertices().into_iter().filter(|&v| v != d.root);
    match order {
        EliminationOrder::Ascending => candidates.min(),
        EliminationOrder::MinDegree => {
            candidates.min_by_key(|&v| (d.in_neighbors(v).len() * d.out_neighbors(v).len(), v))
        }
    }
}

fn run_elimination<A: Arith>(
    ar: &mut A,
    d: &WeightedDigraph<A::Value>,
    mut next: impl FnMut(&WeightedDigraph<A::Value>) -> Option<usize>,
) -> Outcome<EliminationTrace<A::Value>> {
    let mut work = prepare(d);
    if !work.all_reach_root() {
        return Outcome::ZeroPolynomial;
    }
    let mut steps = Vec::new();
    while let Some(v) = next(&work) {
        match directed_star_mesh_in_place(ar, &mut work, v) {
            Some(f) => steps.push((v, f)),
            None => return Outcome::ZeroPolynomial,
        }
    }
    Outcome::Value(EliminationTrace { steps })
}

/// Eliminates all non-root vertices in the given policy's order.
pub fn eliminate<A: Arith>(
    ar: &mut A,
    d: &WeightedDigraph<A::Value>,
    order: EliminationOrder,
) -> Outcome<EliminationTrace<A::Value>> {
    run_elimination(ar, d, |w| pick_directed(w, order))
}

/// Eliminates the non-root vertices in exactly the order listed.
pub fn eliminate_in_order<A: Arith>(
    ar: &mut A,
    d: &WeightedDigraph<A::Value>,
    order: &[usize],
) -> Result<Outcome<EliminationTrace<A::Value>>, SpanningError> {
    let mut expected: Vec<usize> = d.vertices().into_iter().filter(|&v| v != d.root).collect();
    let mut given = order.to_vec();
    expected.sort_unstable();
    given.sort_unstable();
    if expected != given {
        return Err(SpanningError::BadOrder);
    }
    let mut it = order.iter().copied();
    Ok(run_elimination(ar, d, |_| it.next()))
}

fn product_of<A: Arith>(ar: &mut A, trace: Outcome<EliminationTrace<A::Value>>) -> Outcome<A::Value> {
    trace.map(|t| {
        let factors: Vec<A::Value> = t.steps.into_iter().map(|(_, f)| f).collect();
        ar.product(&factors).unwrap_or_else(|| ar.one())
    })
}

/// `φ_G`: the sum over arborescences oriented towards the root of the
/// product of their arc weights.
pub fn arborescence_gf<A: Arith>(
    ar: &mut A,
    d: &WeightedDigraph<A::Value>,
    order: EliminationOrder,
) -> Result<Outcome<A::Value>, SpanningError> {
    let trace = eliminate(ar, d, order);
    Ok(product_of(ar, trace))
}

pub fn arborescence_gf_in_order<A: Arith>(
    ar: &mut A,
    d: &WeightedDigraph<A::Value>,
    order: &[usize],
) -> Result<Outcome<A::Value>, SpanningError> {
    let trace = eliminate_in_order(ar, d, order)?;
    Ok(product_of(ar, trace))
}

/// Cheapest arborescence cost: the elimination evaluated with `min` and `+`.
/// The zero polynomial means no arborescence exists.
pub fn min_cost_arborescence(
    d: &WeightedDigraph<Tropical>,
    order: EliminationOrder,
) -> Result<Outcome<Tropical>, SpanningError> {
    arborescence_gf(&mut Eval::<Tropical>::new(), d, order)
}

/// Input name of the weight on `from -> to` (or the edge `from -- to`).
pub fn arc_input_name(from: &str, to: &str) -> String {
    format!("w[{from}->{to}]")
}

fn circuit_digraph<V: Clone>(b: &mut CircuitBuilder, d: &WeightedDigraph<V>) -> WeightedDigraph<GateRef> {
    d.map(|u, v, _| b.input(&arc_input_name(&d.ids[u], &d.ids[v])))
}

/// Circuit computing `φ_G` with one input per arc of `d`.
pub fn arborescence_circuit<V: Clone>(
    d: &WeightedDigraph<V>,
    order: EliminationOrder,
) -> Result<Outcome<Circuit>, SpanningError> {
    let mut b = CircuitBuilder::new();
    let dg = circuit_digraph(&mut b, d);
    Ok(match arborescence_gf(&mut b, &dg, order)? {
        Outcome::Value(g) => Outcome::Value(b.finish(vec![g])),
        Outcome::ZeroPolynomial => Outcome::ZeroPolynomial,
    })
}

/// Circuit computing `f_G` with one input per edge `u -- v` (`u < v`), named
/// as the arc `u -> v`.
pub fn spanning_tree_circuit<V: Clone>(
    g: &WeightedGraph<V>,
    order: EliminationOrder,
) -> Result<Circuit, SpanningError> {
    let mut b = CircuitBuilder::new();
    let gg = g.map(|u, v, _| b.input(&arc_input_name(&g.ids[u.min(v)], &g.ids[u.max(v)])));
    let out = spanning_tree_gf(&mut b, &gg, order)?;
    Ok(b.finish(vec![out]))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Text(String),
    Int(i64),
    Float(f64),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Text(s) => s.clone(),
            Scalar::Int(i) => i.to_string(),
            Scalar::Float(f) => f.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    u: Scalar,
    v: Scalar,
    w: Scalar,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<Scalar>,
    edges: Vec<EdgeJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcJson {
    from: Scalar,
    to: Scalar,
    w: Scalar,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphJson {
    #[serde(default)]
    vertices: Vec<Scalar>,
    arcs: Vec<ArcJson>,
    root: Scalar,
}

fn json_err(location: impl Into<String>, message: impl ToString) -> SpanningError {
    SpanningError::Json { location: location.into(), message: message.to_string() }
}

fn lookup(index: &HashMap<String, usize>, id: &Scalar, location: String) -> Result<usize, SpanningError> {
    let id = id.text();
    index.get(&id).copied().ok_or_else(|| json_err(location, format!("unknown vertex {id:?}")))
}

fn weight<S: Semifield>(w: &Scalar, location: String) -> Result<S, SpanningError> {
    S::parse(&w.text()).map_err(|e| json_err(location, e))
}

/// Parses `{"vertices": [...], "edges": [{"u", "v", "w"}]}`; parallel edges
/// are merged and loops dropped.
pub fn graph_from_json<S: Semifield>(text: &str) -> Result<WeightedGraph<S>, SpanningError> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| json_err(format!("line {}", e.line()), e))?;
    let ids: Vec<String> = raw.vertices.iter().map(Scalar::text).collect();
    let index = check_ids(&ids)?;
    let mut g = WeightedGraph::new(ids)?;
    let ar = &mut Eval::<S>::new();
    for (i, e) in raw.edges.iter().enumerate() {
        let u = lookup(&index, &e.u, format!("edges[{i}].u"))?;
        let v = lookup(&index, &e.v, format!("edges[{i}].v"))?;
        let w = weight::<S>(&e.w, format!("edges[{i}].w"))?;
        g.add_edge(ar, u, v, w);
    }
    Ok(g)
}

/// Parses `{"vertices": [...], "arcs": [{"from", "to", "w"}], "root"}`. The
/// vertex list is optional; missing vertices are taken from the arcs.
pub fn digraph_from_json<S: Semifield>(text: &str) -> Result<WeightedDigraph<S>, SpanningError> {
    let raw: DigraphJson = serde_json::from_str(text).map_err(|e| json_err(format!("line {}", e.line()), e))?;
    let mut ids: Vec<String> = raw.vertices.iter().map(Scalar::text).collect();
    check_ids(&ids)?;
    if raw.vertices.is_empty() {
        for a in &raw.arcs {
            for id in [a.from.text(), a.to.text()] {
                if !ids.contains(&id) {
                    ids.push(id);
                }
            }
        }
        let root = raw.root.text();
        if !ids.contains(&root) {
            ids.push(root);
        }
    }
    let index = check_ids(&ids)?;
    let root = raw.root.text();
    if !index.contains_key(&root) {
        return Err(json_err("root", format!("unknown vertex {root:?}")));
    }
    let mut d = WeightedDigraph::new(ids, &root)?;
    let ar = &mut Eval::<S>::new();
    for (i, a) in raw.arcs.iter().enumerate() {
        let u = lookup(&index, &a.from, format!("arcs[{i}].from"))?;
        let v = lookup(&index, &a.to, format!("arcs[{i}].to"))?;
        let w = weight::<S>(&a.w, format!("arcs[{i}].w"))?;
        d.add_arc(ar, u, v, w);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d).unwrap()
    }

    /// Edges 12, 14, 23, 24, 34.
    fn four_vertex(w: [i64; 5]) -> WeightedGraph<Rational> {
        let ar = &mut Eval::<Rational>::new();
        let e = [(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)];
        simplify(ar, (1..=4).map(|i| i.to_string()).collect(), e.iter().zip(w).map(|(&(u, v), w)| (u, v, q(w, 1))))
            .unwrap()
    }

    #[test]
    fn simplify_merges_and_drops_loops() {
        let ar = &mut Eval::<Rational>::new();
        let g =
            simplify(ar, vec!["a".into(), "b".into()], [(0, 1, q(2, 1)), (1, 0, q(3, 1)), (0, 0, q(7, 1))]).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.weight(0, 1), Some(&q(5, 1)));
        assert_eq!(g.weight(0, 0), None);
    }

    #[test]
    fn glue_matches_diamond() {
        let ar = &mut Eval::<Rational>::new();
        let [x12, x14, x23, x24, x34] = [2, 3, 5, 7, 11];
        let g = four_vertex([x12, x14, x23, x24, x34]);
        let h = glue(ar, &g, 0, 1).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.weight(0, 3), Some(&q(x14 + x24, 1)));
        assert_eq!(h.weight(0, 2), Some(&q(x23, 1)));
        assert_eq!(h.weight(2, 3), Some(&q(x34, 1)));
    }

    #[test]
    fn series_and_star() {
        let ar = &mut Eval::<Rational>::new();
        let path = simplify(ar, vec!["a".into(), "v".into(), "b".into()], [(0, 1, q(2, 1)), (1, 2, q(3, 1))]).unwrap();
        let reduced = star_mesh_undirected(ar, &path, 1).unwrap();
        assert_eq!(reduced.weight(0, 2), Some(&q(6, 5)));
        let star = simplify(
            ar,
            WeightedGraph::<Rational>::with_vertices(4).ids,
            [(0, 1, q(1, 1)), (0, 2, q(1, 1)), (0, 3, q(1, 1))],
        )
        .unwrap();
        let tri = star_mesh_undirected(ar, &star, 0).unwrap();
        assert_eq!(tri.edges().len(), 3);
        assert!(tri.edges().iter().all(|e| *e.2 == q(1, 3)));
        let leaf = star_mesh_undirected(ar, &path, 0).unwrap();
        assert_eq!(leaf.edges().len(), 1);
    }

    #[test]
    fn conductance_on_diamond_graph() {
        let ar = &mut Eval::<Rational>::new();
        let [x12, x14, x23, x24, x34] = [2i64, 3, 5, 7, 11];
        let g = four_vertex([x12, x14, x23, x24, x34]);
        let r = |n: i64| q(n, 1);
        let inner = r(1).div(&(r(1).div(&r(x23)).unwrap().add(&r(1).div(&r(x34)).unwrap()))).unwrap();
        let mid = r(x24).add(&inner);
        let tail = r(1).div(&(r(1).div(&r(x14)).unwrap().add(&r(1).div(&mid).unwrap()))).unwrap();
        let expect = r(x12).add(&tail);
        for order in [EliminationOrder::Ascending, EliminationOrder::MinDegree] {
            assert_eq!(effective_conductance(ar, &g, 0, 1, order).unwrap(), expect);
        }
    }

    #[test]
    fn diamond_gf_both_routes() {
        let ar = &mut Eval::<Rational>::new();
        let [x12, x14, x23, x24, x34] = [2i64, 3, 5, 7, 11];
        let g = four_vertex([x12, x14, x23, x24, x34]);
        let f = x12 * x14 * x23
            + x12 * x14 * x34
            + x12 * x23 * x24
            + x12 * x23 * x34
            + x12 * x24 * x34
            + x14 * x23 * x24
            + x14 * x23 * x34
            + x14 * x24 * x34;
        assert_eq!(spanning_tree_gf(ar, &g, EliminationOrder::Ascending).unwrap(), q(f, 1));
        assert_eq!(spanning_tree_gf_via_conductance(ar, &g, EliminationOrder::Ascending).unwrap(), q(f, 1));
    }

    fn three_vertex(ar: i64, br: i64, ab: i64, ba: i64) -> WeightedDigraph<Rational> {
        let text = format!(
            r#"{{"arcs":[{{"from":"a","to":"r","w":"{ar}"}},{{"from":"b","to":"r","w":"{br}"}},
                {{"from":"a","to":"b","w":"{ab}"}},{{"from":"b","to":"a","w":"{ba}"}},
                {{"from":"r","to":"a","w":"1"}}],"root":"r"}}"#
        );
        digraph_from_json(&text).unwrap()
    }

    #[test]
    fn directed_example() {
        let e = &mut Eval::<Rational>::new();
        let (ar, br, ab, ba) = (2, 3, 5, 7);
        let d = three_vertex(ar, br, ab, ba);
        let b = d.index_of("b").unwrap();
        let a = d.index_of("a").unwrap();
        let r = d.root();
        let (reduced, factor) = directed_star_mesh(e, &d, b).unwrap().value().unwrap();
        assert_eq!(factor, q(ba + br, 1));
        assert_eq!(reduced.weight(a, r), Some(&q(ar * (ba + br) + ab * br, ba + br)));
        let phi = arborescence_gf(e, &d, EliminationOrder::Ascending).unwrap().value().unwrap();
        assert_eq!(phi, q(ar * br + ar * ba + br * ab, 1));
        assert!(directed_star_mesh(e, &d, r).is_err());
    }

    #[test]
    fn unreachable_vertex_gives_zero() {
        let text = r#"{"vertices":["a","b","r"],"arcs":[{"from":"a","to":"r","w":"1"}],"root":"r"}"#;
        let d: WeightedDigraph<Rational> = digraph_from_json(text).unwrap();
        let e = &mut Eval::<Rational>::new();
        assert!(arborescence_gf(e, &d, EliminationOrder::Ascending).unwrap().is_zero());
    }

    #[test]
    fn tropical_minimum() {
        let text = r#"{"arcs":[{"from":"a","to":"r","w":"1"},{"from":"b","to":"r","w":"2"},
            {"from":"a","to":"b","w":"0"},{"from":"b","to":"a","w":"5"}],"root":"r"}"#;
        let d: WeightedDigraph<Tropical> = digraph_from_json(text).unwrap();
        let best = min_cost_arborescence(&d, EliminationOrder::Ascending).unwrap().value().unwrap();
        assert_eq!(best.value(), 2.0);
    }

    #[test]
    fn json_errors_carry_location() {
        let bad = r#"{"vertices":["1","2"],"edges":[{"u":"1","v":"2","w":"0/1"}]}"#;
        let err = graph_from_json::<Rational>(bad).unwrap_err().to_string();
        assert!(err.starts_with("edges[0].w"), "{err}");
        let bad = r#"{"vertices":["1","2"],"edges":[{"u":"1","v":"3","w":"1"}]}"#;
        assert!(graph_from_json::<Rational>(bad).unwrap_err().to_string().contains("edges[0].v"));
        assert!(graph_from_json::<Rational>("{").is_err());
    }

    #[test]
    fn circuits_count_and_evaluate() {
        let d = three_vertex(2, 3, 5, 7);
        let c = arborescence_circuit(&d, EliminationOrder::Ascending).unwrap().value().unwrap();
        let assign: HashMap<String, Rational> = d
            .arcs()
            .into_iter()
            .map(|(u, v, w)| (arc_input_name(d.id(u), d.id(v)), w.clone()))
            .filter(|(name, _)| c.inputs().contains(name))
            .collect();
        assert_eq!(c.evaluate(&assign).unwrap(), vec![q(2 * 3 + 2 * 7 + 3 * 5, 1)]);
    }
}
