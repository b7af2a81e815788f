//! Data-parallel evaluation over many input points.
//!
//! With the `parallel` feature the work is spread over rayon's pool;
//! without it every entry point runs on the calling thread. Results are
//! always in input order, so output does not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::arrangement::Plan;
use crate::circuit::{Circuit, EvalError};
use crate::schur::{schur_eval, Partition, SchurError};
use crate::semifield::{Outcome, Semifield};

/// Whether this build spreads batches across threads.
pub const PARALLEL: bool = cfg!(feature = "parallel");

/// Applies `f` to every item, in parallel when enabled.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Applies `f` to `0..n`, in parallel when enabled.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Single-threaded `map`, available in every build.
pub fn map_sequential<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Evaluates `circuit` at each point, inputs given in declaration order.
pub fn evaluate<S: Semifield>(circuit: &Circuit, points: &[Vec<S>]) -> Vec<Result<Vec<S>, EvalError>> {
    map(points, |p| circuit.evaluate_positional(p))
}

pub fn evaluate_sequential<S: Semifield>(circuit: &Circuit, points: &[Vec<S>]) -> Vec<Result<Vec<S>, EvalError>> {
    map_sequential(points, |p| circuit.evaluate_positional(p))
}

/// Runs the flip sequence directly at each point.
pub fn schur_eval_many<S: Semifield>(
    lambda: &Partition,
    points: &[Vec<S>],
    plan: Plan,
) -> Vec<Result<Outcome<S>, SchurError>> {
    map(points, |x| schur_eval(lambda, x, plan))
}

pub fn schur_eval_many_sequential<S: Semifield>(
    lambda: &Partition,
    points: &[Vec<S>],
    plan: Plan,
) -> Vec<Result<Outcome<S>, SchurError>> {
    map_sequential(points, |x| schur_eval(lambda, x, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::schur_circuit;
    use crate::semifield::Rational;

    #[test]
    fn parallel_and_sequential_agree() {
        let lambda = Partition::new(vec![2, 1]).unwrap();
        let circuit = schur_circuit(&lambda, 3, Plan::A).unwrap().value().unwrap();
        let points: Vec<Vec<Rational>> =
            (1..20).map(|i| (0..3).map(|j| Rational::from_ratio(i + j, j + 1).unwrap()).collect()).collect();
        let a = evaluate(&circuit, &points);
        let b = evaluate_sequential(&circuit, &points);
        assert_eq!(a, b);
        let direct = schur_eval_many(&lambda, &points, Plan::B);
        for (c, d) in a.into_iter().zip(direct) {
            assert_eq!(c.unwrap()[0], d.unwrap().value().unwrap());
        }
        assert_eq!(map_range(5, |i| i * i), vec![0, 1, 4, 9, 16]);
    }
}
