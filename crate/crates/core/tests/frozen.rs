//! Frozen reference values. Where an independent recomputation exists it runs
//! next to the frozen number, so a drift shows which side moved.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use subfree::arrangement::{plan_a_flips, plan_b_flips, FlipTriple, LineSet, Plan};
use subfree::gap::{max_certified_degree, minimal_polya_r, CosParam};
use subfree::oracles::tableaux::ssyt;
use subfree::oracles::{arborescences_enumerate, Arc};
use subfree::schur::{
    bivariate_schur_fast, flag_minor_eval, index_set, schur_eval, skew_schur_eval, super_schur_eval, Partition,
};
use subfree::semifield::{Eval, Outcome, Rational, Tropical};
use subfree::spanning::{
    arborescence_gf, directed_star_mesh, effective_conductance, min_cost_arborescence, simplify, spanning_tree_gf,
    EliminationOrder, WeightedDigraph,
};
use subfree::verify::{arborescence_sizes, complete_digraph, schur_sizes};

fn q(n: i64) -> Rational {
    Rational::from_ratio(n, 1).unwrap()
}

fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| q(n)).collect()
}

fn p(text: &str) -> Partition {
    text.parse().unwrap()
}

fn value(o: Outcome<Rational>) -> Rational {
    o.value().expect("nonzero")
}

#[test]
fn schur_values() {
    assert_eq!(value(schur_eval(&p("2,1"), &qs(&[1, 2]), Plan::A).unwrap()), q(6));
    assert_eq!(value(schur_eval(&p("1"), &qs(&[5]), Plan::B).unwrap()), q(5));
    let count = ssyt(&p("2,2,1"), &Partition::empty(), 3).len() as i64;
    assert_eq!(count, 3);
    assert_eq!(value(schur_eval(&p("2,2,1"), &qs(&[1, 1, 1]), Plan::A).unwrap()), q(count));
    assert_eq!(index_set(&p("2,1"), 2).unwrap(), [2, 4].into_iter().collect::<LineSet>());
    assert_eq!(index_set(&Partition::empty(), 3).unwrap(), LineSet::interval(1, 3));
}

#[test]
fn bivariate_values() {
    let ar = &mut Eval::<Rational>::new();
    assert_eq!(bivariate_schur_fast(ar, 1, 0, &q(2), &q(3)).unwrap(), q(5));
    assert_eq!(bivariate_schur_fast(ar, 5, 0, &q(1), &q(1)).unwrap(), q(6));
    let fast = bivariate_schur_fast(ar, 3, 1, &q(2), &q(1)).unwrap();
    assert_eq!(fast, q(14));
    assert_eq!(fast, value(schur_eval(&p("3,1"), &qs(&[2, 1]), Plan::A).unwrap()));
}

#[test]
fn flag_minor_values() {
    let x = qs(&[2, 3, 5]);
    assert_eq!(flag_minor_eval(LineSet::interval(1, 3), &x, Plan::A).unwrap(), q(1));
    // interval starting at ℓ: (x1 x2 x3)^(ℓ-1)
    assert_eq!(flag_minor_eval(LineSet::interval(3, 3), &x, Plan::A).unwrap(), q(30 * 30));
}

#[test]
fn super_and_skew_values() {
    assert_eq!(value(super_schur_eval(&p("2,1"), &qs(&[1, 1]), &qs(&[1, 1]), Plan::A).unwrap()), q(20));
    assert_eq!(value(skew_schur_eval(&p("2,1"), &p("1"), &qs(&[1, 1]), Plan::A).unwrap()), q(4));
    assert!(skew_schur_eval(&p("1,1"), &p("2"), &qs(&[1, 1]), Plan::A).unwrap().is_zero());
}

#[test]
fn plan_a_for_single_line() {
    let got = plan_a_flips(7, [6].into_iter().collect()).unwrap();
    let expect: Vec<FlipTriple> =
        (2..=5).rev().flat_map(|j| (1..j).rev().map(move |i| FlipTriple::new(i, j, 6).unwrap())).collect();
    assert_eq!(got.len(), 10);
    assert_eq!(got, expect);
    let set: LineSet = [1, 3].into_iter().collect();
    assert_eq!(plan_a_flips(4, set).unwrap(), vec![FlipTriple::new(1, 2, 3).unwrap()]);
}

#[test]
fn flip_counts_for_even_lines() {
    let frozen = [(10, 70, 70), (20, 615, 690), (30, 2135, 2485)];
    for (n, a, b) in frozen {
        let set: LineSet = (2..=n).step_by(2).collect();
        assert_eq!(plan_a_flips(n, set).unwrap().len(), a, "plan A, n={n}");
        assert_eq!(plan_b_flips(n, set).unwrap().len(), b, "plan B, n={n}");
        assert!(a <= n * (n - 1) * (n - 2) / 2 && b <= n * (n - 1) * (n - 2) / 6);
    }
}

#[test]
fn staircase_gate_counts() {
    let ns = [6, 10, 14, 18, 22, 26, 30];
    let a = [43, 226, 645, 1396, 2575, 4278, 6601];
    let b = [33, 189, 565, 1257, 2361, 3973, 6189];
    assert_eq!(schur_sizes(Plan::A), ns.iter().copied().zip(a).collect::<Vec<_>>());
    assert_eq!(schur_sizes(Plan::B), ns.iter().copied().zip(b).collect::<Vec<_>>());
}

#[test]
fn complete_digraph_gate_counts() {
    let frozen = vec![(4, 21), (10, 497), (15, 1847), (20, 4597), (25, 9247)];
    assert_eq!(arborescence_sizes(&[4, 10, 15, 20, 25]), frozen);
}

#[test]
fn cayley_counts() {
    let ar = &mut Eval::<Rational>::new();
    for n in 1..=5usize {
        let d = complete_digraph(n);
        let got = value(arborescence_gf(ar, &d, EliminationOrder::MinDegree).unwrap());
        let arcs: Vec<Arc<()>> =
            (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| Arc { from: a, to: b, w: () })).collect();
        let listed = arborescences_enumerate(n, &arcs, 0).len() as i64;
        let cayley = if n == 1 { 1 } else { (n as i64).pow(n as u32 - 2) };
        assert_eq!(listed, cayley);
        assert_eq!(got, q(cayley));
    }
    let k4 = simplify(
        ar,
        (1..=4).map(|i| i.to_string()).collect(),
        (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v, q(1)))),
    )
    .unwrap();
    assert_eq!(spanning_tree_gf(ar, &k4, EliminationOrder::Ascending).unwrap(), q(16));
}

#[test]
fn small_spanning_cases() {
    let ar = &mut Eval::<Rational>::new();
    let edge = simplify(ar, vec!["a".into(), "b".into()], [(0, 1, q(7))]).unwrap();
    assert_eq!(effective_conductance(ar, &edge, 0, 1, EliminationOrder::Ascending).unwrap(), q(7));
    let tree =
        simplify(ar, (1..=4).map(|i| i.to_string()).collect(), [(0, 1, q(2)), (1, 2, q(3)), (1, 3, q(5))]).unwrap();
    assert_eq!(spanning_tree_gf(ar, &tree, EliminationOrder::MinDegree).unwrap(), q(30));
}

#[test]
fn chain_contraction() {
    let ar = &mut Eval::<Rational>::new();
    let mut d = WeightedDigraph::new(vec!["a".into(), "v".into(), "r".into()], "r").unwrap();
    d.add_arc(ar, 0, 1, q(3));
    d.add_arc(ar, 1, 2, q(5));
    let (reduced, factor) = directed_star_mesh(ar, &d, 1).unwrap().value().unwrap();
    assert_eq!(factor, q(5));
    assert_eq!(reduced.weight(0, 2), Some(&q(3)));
}

#[test]
fn tropical_values() {
    let mut d = WeightedDigraph::<Tropical>::new(vec!["a".into(), "b".into(), "r".into()], "r").unwrap();
    let ar = &mut Eval::<Tropical>::new();
    for (u, v, c) in [(0, 2, 1.0), (1, 2, 2.0), (0, 1, 0.0), (1, 0, 5.0)] {
        d.add_arc(ar, u, v, Tropical::new(c).unwrap());
    }
    let best = min_cost_arborescence(&d, EliminationOrder::Ascending).unwrap().value().unwrap();
    assert_eq!(best.value(), 2.0);
    let mut chain = WeightedDigraph::<Tropical>::new(vec!["a".into(), "b".into(), "r".into()], "r").unwrap();
    chain.add_arc(ar, 0, 1, Tropical::new(4.0).unwrap());
    chain.add_arc(ar, 1, 2, Tropical::new(-1.5).unwrap());
    assert_eq!(min_cost_arborescence(&chain, EliminationOrder::MinDegree).unwrap().value().unwrap().value(), 2.5);
    let stuck = WeightedDigraph::<Tropical>::new(vec!["a".into(), "r".into()], "r").unwrap();
    assert!(min_cost_arborescence(&stuck, EliminationOrder::Ascending).unwrap().is_zero());
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Smallest `r` with `C(r,j) - 2c C(r,j-1) + C(r,j-2) >= 0` for every `j`.
fn minimal_r_closed_form(c: &BigRational) -> usize {
    let coeff = |r: usize, j: usize| {
        let b = |i: Option<usize>| i.filter(|&i| i <= r).map_or(BigInt::zero(), |i| binomial(r, i));
        BigRational::from_integer(b(Some(j))) - c * BigRational::from_integer(b(j.checked_sub(1)) * 2)
            + BigRational::from_integer(b(j.checked_sub(2)))
    };
    (0..).find(|&r| (0..=r + 2).all(|j| !coeff(r, j).is_negative())).unwrap()
}

#[test]
fn minimal_polya_exponents() {
    let frozen = [((1, 2), 1), ((3, 4), 5), ((9, 10), 17), ((99, 100), 197), ((0, 1), 0), ((-1, 2), 0)];
    for ((n, d), r) in frozen {
        let c = CosParam::from_ratio(n, d).unwrap();
        assert_eq!(minimal_polya_r(&c), r, "c = {n}/{d}");
        assert_eq!(minimal_r_closed_form(c.value()), r);
    }
    for (k, r) in [(1, 5), (2, 29), (3, 509)] {
        assert_eq!(minimal_polya_r(&CosParam::near_one(k).unwrap()), r, "k = {k}");
    }
}

/// `S_k > 0` exactly while `k α < π`.
fn certified_by_angle(c: f64) -> Option<usize> {
    let alpha = c.acos();
    let k_max = (std::f64::consts::PI / alpha).ceil() as usize - 1;
    k_max.checked_sub(2)
}

#[test]
fn certified_degrees() {
    let frozen = [((3, 4), Some(2)), ((9, 10), Some(4)), ((99, 100), Some(20)), ((0, 1), None), ((-1, 2), None)];
    for ((n, d), cert) in frozen {
        let c = CosParam::from_ratio(n, d).unwrap();
        assert_eq!(max_certified_degree(&c, 10_000), cert, "c = {n}/{d}");
        if n > 0 {
            assert_eq!(certified_by_angle(n as f64 / d as f64), cert);
        }
    }
    assert_eq!(max_certified_degree(&CosParam::from_ratio(1, 2).unwrap(), 10), Some(0));
    for (k, cert) in [(1, 2), (2, 6), (3, 33), (4, 566)] {
        let c = CosParam::near_one(k).unwrap();
        assert_eq!(max_certified_degree(&c, 10_000), Some(cert), "k = {k}");
        assert_eq!(certified_by_angle(1.0 - 2f64.powi(-(1 << k))), Some(cert));
    }
}
