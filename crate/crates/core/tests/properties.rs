use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use subfree::arrangement::{Arrangement, ArrangementError, Exchange, FlipTriple, LineSet, Plan};
use subfree::circuit::Circuit;
use subfree::gap::{f_alpha, minimal_polya_r, polya_bound, polya_numerator, CosParam, UniPoly};
use subfree::oracles::matrix::rescaled_vandermonde;
use subfree::oracles::tableaux::ssyt;
use subfree::oracles::{directed_matrix_tree_oracle, flag_minor_matrix_oracle, matrix_tree_oracle, Arc, Edge};
use subfree::schur::{double_schur_truncated_eval, schur_circuit, schur_eval, Partition};
use subfree::semifield::{ratio_to_f64, Eval, Float64, Outcome, Rational, Tropical};
use subfree::spanning::{
    arborescence_gf, arborescence_gf_in_order, directed_star_mesh, effective_conductance, glue, simplify,
    spanning_tree_gf, spanning_tree_gf_via_conductance, star_mesh_undirected, EliminationOrder, WeightedDigraph,
    WeightedGraph,
};

fn q(n: u32, d: u32) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pos_rational() -> impl Strategy<Value = BigRational> {
    (1u32..40, 1u32..15).prop_map(|(n, d)| q(n, d))
}

fn rat(x: &BigRational) -> Rational {
    Rational::new(x.clone()).unwrap()
}

/// `(λ, k)` with `λ₁ + k <= max` and `ℓ(λ) <= k`.
fn partition_and_k(max: usize) -> impl Strategy<Value = (Partition, usize)> {
    (1..max).prop_flat_map(move |k| {
        let width = max - k;
        (proptest::collection::vec(0..=width, k), Just(k)).prop_map(|(mut parts, k)| {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            (Partition::new(parts).unwrap(), k)
        })
    })
}

fn exact(out: Outcome<Rational>) -> BigRational {
    out.value().map(Rational::into_inner).unwrap_or_else(BigRational::zero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schur_is_symmetric(
        (lambda, x) in partition_and_k(7).prop_flat_map(|(l, k)| (Just(l), proptest::collection::vec(pos_rational(), k))),
        seed in any::<u64>(),
    ) {
        let mut perm = x.clone();
        let n = perm.len();
        for i in (1..n).rev() {
            perm.swap(i, (seed as usize).wrapping_mul(i + 7) % (i + 1));
        }
        let a = exact(schur_eval(&lambda, &x.iter().map(rat).collect::<Vec<_>>(), Plan::A).unwrap());
        let b = exact(schur_eval(&lambda, &perm.iter().map(rat).collect::<Vec<_>>(), Plan::B).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn double_schur_at_zero_y_is_schur(
        (lambda, x) in partition_and_k(7).prop_flat_map(|(l, k)| (Just(l), proptest::collection::vec(pos_rational(), k))),
    ) {
        let xr: Vec<Rational> = x.iter().map(rat).collect();
        let d = exact(double_schur_truncated_eval(&lambda, &xr, &[], Plan::A).unwrap());
        let s = exact(schur_eval(&lambda, &xr, Plan::A).unwrap());
        prop_assert_eq!(d, s);
    }

    #[test]
    fn float_error_is_bounded_by_gate_count(
        (lambda, x) in partition_and_k(8).prop_flat_map(|(l, k)| (Just(l), proptest::collection::vec(pos_rational(), k))),
    ) {
        let circuit = schur_circuit(&lambda, x.len(), Plan::A).unwrap();
        let Outcome::Value(circuit) = circuit else { return Ok(()) };
        let exact_v = circuit.evaluate_positional(&x.iter().map(rat).collect::<Vec<_>>()).unwrap()[0].clone();
        let floats: Vec<Float64> = x.iter().map(|v| Float64::new(ratio_to_f64(v)).unwrap()).collect();
        let approx = circuit.evaluate_positional(&floats).unwrap()[0].value();
        let truth = ratio_to_f64(exact_v.value());
        let bound = (circuit.stats().total + x.len()) as f64 * 2f64.powi(-50);
        prop_assert!((approx - truth).abs() / truth <= bound, "{approx} vs {truth}");
    }

    #[test]
    fn tropical_schur_is_min_over_tableaux(
        (lambda, x) in partition_and_k(7).prop_flat_map(|(l, k)| (Just(l), proptest::collection::vec(-20i32..20, k))),
    ) {
        let k = x.len();
        let xs: Vec<Tropical> = x.iter().map(|&v| Tropical::new(v as f64).unwrap()).collect();
        let got = schur_eval(&lambda, &xs, Plan::A).unwrap().value().unwrap().value();
        let best = ssyt(&lambda, &Partition::empty(), k)
            .iter()
            .map(|t| t.cells().map(|(_, _, e)| x[e - 1] as f64).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(got, best);
    }

    #[test]
    fn emitted_circuits_round_trip_through_json((lambda, k) in partition_and_k(7)) {
        if let Outcome::Value(c) = schur_circuit(&lambda, k, Plan::B).unwrap() {
            prop_assert_eq!(Circuit::from_json(&c.to_json()).unwrap(), c);
        }
    }
}

/// Seeds the special arrangement with flag minors of a totally positive
/// matrix, so every chamber can be compared with a determinant.
fn minor_arrangement(x: &[BigRational], n: usize) -> (Arrangement<Rational>, subfree::oracles::ExactMatrix) {
    let m = rescaled_vandermonde(x, n).unwrap();
    let arr = Arrangement::special_with(n, |s, l| {
        Ok::<_, ArrangementError>(rat(&flag_minor_matrix_oracle(&m, LineSet::interval(s, l))))
    })
    .unwrap();
    (arr, m)
}

fn increasing(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec((1u32..6, 1u32..4), n).prop_map(|steps| {
        let mut acc = BigRational::zero();
        steps
            .into_iter()
            .map(|(a, b)| {
                acc += q(a, b);
                acc.clone()
            })
            .collect()
    })
}

fn triples(n: usize) -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
    proptest::collection::vec((1..=n, 1..=n, 1..=n), 0..25)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chambers_stay_flag_minors(
        (n, x, moves) in (3usize..=6).prop_flat_map(|n| (Just(n), increasing(n - 1), triples(n))),
    ) {
        let (mut arr, m) = minor_arrangement(&x, n);
        let mut ev = Eval::<Rational>::new();
        for (a, b, c) in moves {
            let mut t = [a, b, c];
            t.sort_unstable();
            let Ok(triple) = FlipTriple::new(t[0], t[1], t[2]) else { continue };
            if arr.flip(triple, false, &mut Exchange(&mut ev)).is_err() {
                continue;
            }
            for (label, value) in arr.chambers() {
                prop_assert_eq!(value.value(), &flag_minor_matrix_oracle(&m, *label), "chamber {}", label);
            }
        }
    }

    #[test]
    fn flips_are_involutions(
        (n, x, moves, last) in (3usize..=6).prop_flat_map(|n| (Just(n), increasing(n - 1), triples(n), triples(n))),
    ) {
        let (mut arr, _) = minor_arrangement(&x, n);
        let mut ev = Eval::<Rational>::new();
        for (a, b, c) in moves.into_iter().chain(last) {
            let mut t = [a, b, c];
            t.sort_unstable();
            let Ok(triple) = FlipTriple::new(t[0], t[1], t[2]) else { continue };
            let before: HashMap<LineSet, Rational> = arr.chambers().map(|(k, v)| (*k, v.clone())).collect();
            if arr.flip(triple, false, &mut Exchange(&mut ev)).is_err() {
                continue;
            }
            let mut back = arr.clone();
            back.flip(triple, false, &mut Exchange(&mut ev)).unwrap();
            let after: HashMap<LineSet, Rational> = back.chambers().map(|(k, v)| (*k, v.clone())).collect();
            prop_assert_eq!(before, after);
        }
    }
}

/// Connected graph: a random tree plus extra edges.
fn graph(max: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize, BigRational)>)> {
    (2..=max).prop_flat_map(|n| {
        let tree = proptest::collection::vec((any::<prop::sample::Index>(), pos_rational()), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, pos_rational()), 0..n * 2);
        (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
            let mut edges: Vec<_> =
                tree.into_iter().enumerate().map(|(i, (p, w))| (p.index(i + 1), i + 1, w)).collect();
            edges.extend(extra);
            (n, edges)
        })
    })
}

fn build_graph(n: usize, edges: &[(usize, usize, BigRational)]) -> WeightedGraph<Rational> {
    simplify(&mut Eval::new(), (1..=n).map(|i| i.to_string()).collect(), edges.iter().map(|(u, v, w)| (*u, *v, rat(w))))
        .unwrap()
}

fn kirchhoff(g: &WeightedGraph<Rational>) -> BigRational {
    let (n, edges) = g.compact_edges();
    let edges: Vec<Edge> = edges.into_iter().map(|e| Edge { u: e.u, v: e.v, w: e.w.into_inner() }).collect();
    matrix_tree_oracle(n, &edges)
}

fn tutte(d: &WeightedDigraph<Rational>) -> BigRational {
    let (n, arcs, root) = d.compact_arcs();
    let arcs: Vec<Arc> = arcs.into_iter().map(|a| Arc { from: a.from, to: a.to, w: a.w.into_inner() }).collect();
    directed_matrix_tree_oracle(n, &arcs, root)
}

fn digraph(max: usize) -> impl Strategy<Value = WeightedDigraph<Rational>> {
    (2..=max).prop_flat_map(|n| {
        (Just(n), 0..n, proptest::collection::vec((0..n, 0..n, pos_rational()), 0..n * n)).prop_map(
            |(n, root, arcs)| {
                let mut d =
                    WeightedDigraph::new((1..=n).map(|i| i.to_string()).collect(), &(root + 1).to_string()).unwrap();
                let ar = &mut Eval::<Rational>::new();
                for (a, b, w) in arcs {
                    d.add_arc(ar, a, b, rat(&w));
                }
                d
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn undirected_routes_match_kirchhoff((n, edges) in graph(7)) {
        let g = build_graph(n, &edges);
        let ar = &mut Eval::<Rational>::new();
        let truth = kirchhoff(&g);
        let a = spanning_tree_gf(ar, &g, EliminationOrder::MinDegree).unwrap().into_inner();
        let b = spanning_tree_gf_via_conductance(ar, &g, EliminationOrder::Ascending).unwrap().into_inner();
        prop_assert_eq!(&a, &truth);
        prop_assert_eq!(&b, &truth);
    }

    #[test]
    fn star_mesh_keeps_effective_conductance(
        (n, edges) in graph(7),
        picks in any::<[prop::sample::Index; 3]>(),
    ) {
        prop_assume!(n >= 3);
        let g = build_graph(n, &edges);
        let mut free: Vec<usize> = (0..n).collect();
        let a = free.remove(picks[0].index(free.len()));
        let b = free.remove(picks[1].index(free.len()));
        let v = free.remove(picks[2].index(free.len()));
        let ar = &mut Eval::<Rational>::new();
        let reduced = star_mesh_undirected(ar, &g, v).unwrap();
        let before = kirchhoff(&g) / kirchhoff(&glue(ar, &g, a, b).unwrap());
        let after = kirchhoff(&reduced) / kirchhoff(&glue(ar, &reduced, a, b).unwrap());
        prop_assert_eq!(&before, &after);
        let direct = effective_conductance(ar, &g, a, b, EliminationOrder::MinDegree).unwrap().into_inner();
        prop_assert_eq!(direct, before);
    }

    #[test]
    fn arborescence_gf_is_order_independent(d in digraph(5), seed in any::<u64>()) {
        let truth = tutte(&d);
        let ar = &mut Eval::<Rational>::new();
        let mut order: Vec<usize> = d.vertices().into_iter().filter(|&v| v != d.root()).collect();
        let len = order.len();
        for i in (1..len).rev() {
            order.swap(i, (seed as usize).wrapping_mul(31 + i) % (i + 1));
        }
        for got in [
            arborescence_gf(ar, &d, EliminationOrder::Ascending).unwrap(),
            arborescence_gf(ar, &d, EliminationOrder::MinDegree).unwrap(),
            arborescence_gf_in_order(ar, &d, &order).unwrap(),
        ] {
            prop_assert_eq!(got.is_zero(), truth.is_zero());
            prop_assert_eq!(exact(got), truth.clone());
        }
    }

    #[test]
    fn directed_factor_identity(d in digraph(5), pick in any::<prop::sample::Index>()) {
        let others: Vec<usize> = d.vertices().into_iter().filter(|&v| v != d.root()).collect();
        let v = others[pick.index(others.len())];
        let ar = &mut Eval::<Rational>::new();
        match directed_star_mesh(ar, &d, v).unwrap() {
            Outcome::Value((reduced, factor)) => {
                prop_assert_eq!(tutte(&d), factor.into_inner() * tutte(&reduced));
            }
            Outcome::ZeroPolynomial => prop_assert!(tutte(&d).is_zero()),
        }
    }

    #[test]
    fn polya_numerator_is_the_product(n in -39i64..40, r in 0usize..12, x in pos_rational()) {
        let c = CosParam::from_ratio(n, 40).unwrap();
        let p = polya_numerator(&c, r);
        let direct = f_alpha(&c).eval(&x) * UniPoly::one_plus_x().eval(&x).pow(r as i32);
        prop_assert_eq!(p.poly.eval(&x), direct);
        prop_assert_eq!(p.nonnegative, p.poly.coeffs().iter().all(|c| !c.is_negative()));
    }

    #[test]
    fn minimal_polya_r_respects_bound(n in -29i64..30) {
        let c = CosParam::from_ratio(n, 30).unwrap();
        let r = minimal_polya_r(&c);
        prop_assert!(BigInt::from(r) <= polya_bound(&c));
    }
}

#[test]
fn plan_flip_sequences_produce_flag_minors() {
    for n in 3..=6 {
        let x: Vec<BigRational> = (1..n as u32).map(|i| q(i * i + 1, i + 1)).collect();
        for bits in 1u32..(1 << n) - 1 {
            let set: LineSet = (1..=n).filter(|&i| bits >> (i - 1) & 1 == 1).collect();
            for plan in [Plan::A, Plan::B] {
                let (mut arr, m) = minor_arrangement(&x, n);
                let flips = plan.flips(n, set).unwrap();
                arr.apply(&flips, false, &mut Exchange(&mut Eval::<Rational>::new())).unwrap();
                let value = arr.chamber_value(set).unwrap();
                assert_eq!(value.value(), &flag_minor_matrix_oracle(&m, set), "n={n}, I={set}, {plan:?}");
                for (label, v) in arr.chambers() {
                    assert_eq!(v.value(), &flag_minor_matrix_oracle(&m, *label));
                }
            }
        }
    }
}
