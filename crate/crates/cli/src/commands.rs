use std::io::Write;
use std::path::Path;

use serde_json::json;
use subfree::arrangement::Plan;
use subfree::circuit::{Circuit, CircuitBuilder, GateRef};
use subfree::gap::{
    f_n, g_n_eval, g_n_specialization, g_n_specialization_check, max_certified_degree, minimal_polya_r, polya_bound,
    polya_numerator, CosParam, GapError,
};
use subfree::schur::{
    double_schur_circuit, double_schur_eval, flag_minor_eval, partition_of, schur_circuit, schur_eval,
    skew_schur_circuit, skew_schur_eval, super_schur_circuit, super_schur_eval, SchurError,
};
use subfree::semifield::{Eval, Float64, Outcome, Rational, Semifield, Tropical};
use subfree::spanning::{
    arborescence_circuit, arborescence_gf, arc_input_name, effective_conductance, spanning_tree_gf,
    spanning_tree_gf_via_conductance, EliminationOrder, SpanningError, WeightedGraph,
};
use subfree::verify::Suite;

use crate::input::{load_digraph, load_graph, parse_index_set, parse_partition, parse_rationals, parse_values};
use crate::{Cli, CliError, Command, Config, Family, OrderArg, OutputArg, PlanArg, SemifieldArg};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Schur,
    Spanning,
    MinArborescence,
    Other,
}

fn kind(cmd: &Command) -> Kind {
    match cmd {
        Command::Schur { .. }
        | Command::DoubleSchur { .. }
        | Command::SuperSchur { .. }
        | Command::SkewSchur { .. }
        | Command::FlagMinor { .. } => Kind::Schur,
        Command::SpanningGf { .. } | Command::Effcond { .. } | Command::ArborescenceGf { .. } => Kind::Spanning,
        Command::MinArborescence { .. } => Kind::MinArborescence,
        _ => Kind::Other,
    }
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Schur { .. } => "schur",
        Command::DoubleSchur { .. } => "double-schur",
        Command::SuperSchur { .. } => "super-schur",
        Command::SkewSchur { .. } => "skew-schur",
        Command::FlagMinor { .. } => "flag-minor",
        Command::SpanningGf { .. } => "spanning-gf",
        Command::Effcond { .. } => "effcond",
        Command::ArborescenceGf { .. } => "arborescence-gf",
        Command::MinArborescence { .. } => "min-arborescence",
        Command::GapPolya { .. } => "gap-polya",
        Command::GapFn { .. } => "gap-fn",
        Command::GapGn { .. } => "gap-gn",
        Command::Verify { .. } => "verify",
        Command::Export { .. } => "export",
    }
}

fn input(message: impl Into<String>) -> CliError {
    CliError::Input(message.into())
}

/// Rejects flag combinations that have no meaning for the command and
/// resolves the semifield.
fn semifield_for(cli: &Cli) -> Result<SemifieldArg, CliError> {
    let cfg = &cli.config;
    let cmd = &cli.command;
    let k = kind(cmd);
    let is_export = matches!(cmd, Command::Export { .. });
    let schur_export = matches!(
        cmd,
        Command::Export {
            family: Family::Schur | Family::DoubleSchur | Family::SuperSchur | Family::SkewSchur | Family::FlagMinor,
            ..
        }
    );
    if cfg.plan.is_some() && k != Kind::Schur && !schur_export {
        return Err(input(format!("--plan applies only to Schur-family commands, not {}", name(cmd))));
    }
    if k == Kind::Other && cfg.semifield.is_some() {
        return Err(input(format!("--semifield does not apply to {}", name(cmd))));
    }
    if k == Kind::Other && !is_export && cfg.output != OutputArg::Value {
        return Err(input(format!("{} only supports --output value", name(cmd))));
    }
    match (k, cfg.semifield) {
        (Kind::Schur, Some(SemifieldArg::Tropical)) => {
            Err(input("--semifield tropical applies only to spanning-family commands"))
        }
        (Kind::MinArborescence, Some(s)) if s != SemifieldArg::Tropical => {
            Err(input("min-arborescence works over the tropical semifield only"))
        }
        (Kind::MinArborescence, _) => Ok(SemifieldArg::Tropical),
        (_, s) => Ok(s.unwrap_or(SemifieldArg::Rational)),
    }
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    let semifield = semifield_for(cli)?;
    let cfg = &cli.config;
    let text = match &cli.command {
        cmd @ (Command::Schur { .. }
        | Command::DoubleSchur { .. }
        | Command::SuperSchur { .. }
        | Command::SkewSchur { .. }
        | Command::FlagMinor { .. }) => match semifield {
            SemifieldArg::Float64 => schur_family::<Float64>(cmd, cfg)?,
            _ => schur_family::<Rational>(cmd, cfg)?,
        },
        cmd @ (Command::SpanningGf { .. }
        | Command::Effcond { .. }
        | Command::ArborescenceGf { .. }
        | Command::MinArborescence { .. }) => match semifield {
            SemifieldArg::Rational => spanning_family::<Rational>(cmd, cfg)?,
            SemifieldArg::Float64 => spanning_family::<Float64>(cmd, cfg)?,
            SemifieldArg::Tropical => spanning_family::<Tropical>(cmd, cfg)?,
        },
        Command::GapPolya { c, r } => gap_polya(c, *r)?,
        Command::GapFn { n, limit } => gap_fn(*n, *limit)?,
        Command::GapGn { n, x } => gap_gn(*n, x.as_deref())?,
        Command::Verify { suite } => return verify(suite, cfg.seed, out),
        Command::Export { family, partition, nu, k, m, set, graph } => {
            let spec = ExportSpec { partition, nu, k: *k, m: *m, set, graph };
            export(*family, &spec, cfg)?
        }
    };
    writeln!(out, "{text}")?;
    Ok(())
}

fn plan(cfg: &Config) -> Plan {
    match cfg.plan {
        Some(PlanArg::B) => Plan::B,
        _ => Plan::A,
    }
}

fn order(cfg: &Config) -> EliminationOrder {
    match cfg.order {
        OrderArg::Ascending => EliminationOrder::Ascending,
        OrderArg::MinDegree => EliminationOrder::MinDegree,
    }
}

fn schur_error(e: SchurError) -> CliError {
    match e {
        SchurError::ZeroMismatch(_) | SchurError::BackwardFlip(_) => CliError::Mismatch(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn spanning_error(e: SpanningError) -> CliError {
    CliError::Input(e.to_string())
}

/// The zero polynomial is `0` in the positive semifields and `+inf` in the
/// tropical one, where it is the minimum over an empty set.
fn show<S: Semifield>(o: &Outcome<S>) -> String {
    match o {
        Outcome::Value(v) => v.to_string(),
        Outcome::ZeroPolynomial if S::NAME == Tropical::NAME => "inf".to_string(),
        Outcome::ZeroPolynomial => "0".to_string(),
    }
}

fn render(circuit: Outcome<Circuit>, output: OutputArg) -> Result<String, CliError> {
    let c = circuit.value().ok_or_else(|| input("the result is the zero polynomial; there is no circuit to emit"))?;
    Ok(match output {
        OutputArg::Value | OutputArg::CircuitJson => c.to_json(),
        OutputArg::CircuitDot => c.to_dot().trim_end().to_string(),
        OutputArg::Stats => {
            let s = c.stats();
            json!({
                "gates": c.len(),
                "inputs": s.inputs,
                "constants": s.constants,
                "adds": s.adds,
                "muls": s.muls,
                "divs": s.divs,
                "total": s.total,
            })
            .to_string()
        }
    })
}

fn schur_family<S: Semifield>(cmd: &Command, cfg: &Config) -> Result<String, CliError> {
    let plan = plan(cfg);
    let circuit = cfg.output != OutputArg::Value;
    let result: Result<Outcome<S>, SchurError> = match cmd {
        Command::Schur { partition, x } => {
            let lambda = parse_partition("partition", partition)?;
            let x = parse_values::<S>("x", x)?;
            if circuit {
                return render(schur_circuit(&lambda, x.len(), plan).map_err(schur_error)?, cfg.output);
            }
            schur_eval(&lambda, &x, plan)
        }
        Command::DoubleSchur { partition, x, y } => {
            let lambda = parse_partition("partition", partition)?;
            let x = parse_values::<S>("x", x)?;
            let y = parse_values::<S>("y", y)?;
            if circuit {
                return render(double_schur_circuit(&lambda, x.len(), plan).map_err(schur_error)?, cfg.output);
            }
            double_schur_eval(&lambda, &x, &y, plan)
        }
        Command::SuperSchur { partition, x, y } => {
            let lambda = parse_partition("partition", partition)?;
            let x = parse_values::<S>("x", x)?;
            let y = parse_values::<S>("y", y)?;
            if circuit {
                return render(super_schur_circuit(&lambda, x.len(), y.len(), plan).map_err(schur_error)?, cfg.output);
            }
            super_schur_eval(&lambda, &x, &y, plan)
        }
        Command::SkewSchur { partition, nu, x } => {
            let lambda = parse_partition("partition", partition)?;
            let nu = parse_partition("nu", nu)?;
            let x = parse_values::<S>("x", x)?;
            if circuit {
                return render(skew_schur_circuit(&lambda, &nu, x.len(), plan).map_err(schur_error)?, cfg.output);
            }
            skew_schur_eval(&lambda, &nu, &x, plan)
        }
        Command::FlagMinor { set, x } => {
            let set = parse_index_set("set", set)?;
            let x = parse_values::<S>("x", x)?;
            if circuit {
                if set.len() != x.len() {
                    return Err(input(format!("--set has {} lines but --x has {} values", set.len(), x.len())));
                }
                return render(schur_circuit(&partition_of(set), x.len(), plan).map_err(schur_error)?, cfg.output);
            }
            flag_minor_eval(set, &x, plan).map(Outcome::Value)
        }
        _ => unreachable!("not a Schur-family command"),
    };
    Ok(show(&result.map_err(schur_error)?))
}

/// Builds a circuit over `g` with one input per edge.
fn undirected_circuit<V: Clone>(
    g: &WeightedGraph<V>,
    route: impl FnOnce(&mut CircuitBuilder, &WeightedGraph<GateRef>) -> Result<GateRef, SpanningError>,
) -> Result<Outcome<Circuit>, CliError> {
    let mut b = CircuitBuilder::new();
    let gg = g.map(|u, v, _| b.input(&arc_input_name(g.id(u.min(v)), g.id(u.max(v)))));
    let out = route(&mut b, &gg).map_err(spanning_error)?;
    Ok(Outcome::Value(b.finish(vec![out])))
}

fn spanning_family<S: Semifield>(cmd: &Command, cfg: &Config) -> Result<String, CliError> {
    let order = order(cfg);
    let circuit = cfg.output != OutputArg::Value;
    let ar = &mut Eval::<S>::new();
    match cmd {
        Command::SpanningGf { graph, via_conductance } => {
            let g = load_graph::<S>(graph)?;
            let route = |b: &mut CircuitBuilder, gg: &WeightedGraph<GateRef>| {
                if *via_conductance {
                    spanning_tree_gf_via_conductance(b, gg, order)
                } else {
                    spanning_tree_gf(b, gg, order)
                }
            };
            if circuit {
                return render(undirected_circuit(&g, route)?, cfg.output);
            }
            let v = if *via_conductance {
                spanning_tree_gf_via_conductance(ar, &g, order)
            } else {
                spanning_tree_gf(ar, &g, order)
            };
            Ok(v.map_err(spanning_error)?.to_string())
        }
        Command::Effcond { graph, a, b } => {
            let g = load_graph::<S>(graph)?;
            let ia = g.index_of(a).map_err(|e| input(format!("--a: {e}")))?;
            let ib = g.index_of(b).map_err(|e| input(format!("--b: {e}")))?;
            if circuit {
                let c = undirected_circuit(&g, |bld, gg| effective_conductance(bld, gg, ia, ib, order))?;
                return render(c, cfg.output);
            }
            Ok(effective_conductance(ar, &g, ia, ib, order).map_err(spanning_error)?.to_string())
        }
        Command::ArborescenceGf { graph } | Command::MinArborescence { graph } => {
            let d = load_digraph::<S>(graph)?;
            if circuit {
                return render(arborescence_circuit(&d, order).map_err(spanning_error)?, cfg.output);
            }
            Ok(show(&arborescence_gf(ar, &d, order).map_err(spanning_error)?))
        }
        _ => unreachable!("not a spanning-family command"),
    }
}

fn gap_error(e: GapError) -> CliError {
    CliError::Input(e.to_string())
}

fn gap_polya(c: &str, r: Option<usize>) -> Result<String, CliError> {
    let c = CosParam::parse(c).map_err(|e| input(format!("--c: {e}")))?;
    let r = r.unwrap_or_else(|| minimal_polya_r(&c));
    let num = polya_numerator(&c, r);
    Ok(json!({
        "c": c.value().to_string(),
        "r": num.r,
        "bound": polya_bound(&c).to_string(),
        "nonnegative": num.nonnegative,
        "coefficients": num.poly.coeff_strings(),
    })
    .to_string())
}

fn gap_fn(n: usize, limit: usize) -> Result<String, CliError> {
    let f = f_n(n).map_err(gap_error)?;
    let c = CosParam::near_one(n).map_err(gap_error)?;
    Ok(json!({
        "n": n,
        "c": c.value().to_string(),
        "coefficients": f.coeff_strings(),
        "polya_bound": polya_bound(&c).to_string(),
        "certified_degree": max_certified_degree(&c, limit),
        "limit": limit,
    })
    .to_string())
}

fn gap_gn(n: usize, x: Option<&str>) -> Result<String, CliError> {
    if let Some(x) = x {
        let x = parse_rationals("x", x)?;
        let v = g_n_eval(n, &x).map_err(gap_error)?;
        return Ok(json!({ "n": n, "value": v.to_string() }).to_string());
    }
    let tail = g_n_specialization(n).map_err(gap_error)?;
    let f = f_n(n - 1).map_err(gap_error)?;
    let holds = g_n_specialization_check(n).map_err(gap_error)?;
    let text = json!({
        "n": n,
        "specialization": tail.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "f": f.coeff_strings(),
        "holds": holds,
    })
    .to_string();
    if !holds {
        return Err(CliError::Mismatch(format!("specialization identity fails for n = {n}: {text}")));
    }
    Ok(text)
}

fn verify(selection: &str, seed: u64, out: &mut impl Write) -> Result<(), CliError> {
    let suites: Vec<Suite> = if selection.trim() == "all" {
        Suite::ALL.to_vec()
    } else {
        selection
            .split(',')
            .map(|s| {
                Suite::from_name(s.trim()).ok_or_else(|| {
                    let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                    input(format!("--suite: unknown suite {:?}; expected all or one of {}", s.trim(), names.join(", ")))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let mut failed = 0;
    for suite in &suites {
        let check = suite.run(seed);
        failed += usize::from(!check.passed);
        writeln!(out, "{check}")?;
    }
    writeln!(out, "verify: {} of {} suites passed (seed {seed})", suites.len() - failed, suites.len())?;
    if failed > 0 {
        return Err(CliError::Mismatch(format!("{failed} suite(s) failed")));
    }
    Ok(())
}

struct ExportSpec<'a> {
    partition: &'a Option<String>,
    nu: &'a Option<String>,
    k: Option<usize>,
    m: Option<usize>,
    set: &'a Option<String>,
    graph: &'a Option<std::path::PathBuf>,
}

fn need<'a, T>(flag: &str, family: Family, v: &'a Option<T>) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| input(format!("--{flag} is required for --family {family:?}")))
}

fn export(family: Family, spec: &ExportSpec, cfg: &Config) -> Result<String, CliError> {
    let plan = plan(cfg);
    let order = order(cfg);
    let partition = |flag: &str, v: &Option<String>| parse_partition(flag, need(flag, family, v)?);
    let k = || need("k", family, &spec.k).copied();
    let circuit = match family {
        Family::Schur => schur_circuit(&partition("partition", spec.partition)?, k()?, plan).map_err(schur_error)?,
        Family::DoubleSchur => {
            double_schur_circuit(&partition("partition", spec.partition)?, k()?, plan).map_err(schur_error)?
        }
        Family::SuperSchur => {
            let m = spec.m.unwrap_or(0);
            super_schur_circuit(&partition("partition", spec.partition)?, k()?, m, plan).map_err(schur_error)?
        }
        Family::SkewSchur => {
            let lambda = partition("partition", spec.partition)?;
            let nu = partition("nu", spec.nu)?;
            skew_schur_circuit(&lambda, &nu, k()?, plan).map_err(schur_error)?
        }
        Family::FlagMinor => {
            let set = parse_index_set("set", need("set", family, spec.set)?)?;
            schur_circuit(&partition_of(set), set.len(), plan).map_err(schur_error)?
        }
        // Only the shape of the graph matters here. Tropical parsing accepts
        // any finite weight, so files meant for any semifield load.
        Family::SpanningGf => {
            let g = load_graph::<Tropical>(graph_path(family, spec)?)?;
            undirected_circuit(&g, |b, gg| spanning_tree_gf(b, gg, order))?
        }
        Family::ArborescenceGf => {
            let d = load_digraph::<Tropical>(graph_path(family, spec)?)?;
            arborescence_circuit(&d, order).map_err(spanning_error)?
        }
    };
    render(circuit, cfg.output)
}

fn graph_path<'a>(family: Family, spec: &'a ExportSpec) -> Result<&'a Path, CliError> {
    need("graph", family, spec.graph).map(|p| p.as_path())
}
