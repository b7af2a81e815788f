//! Arithmetic-circuit IR.
//!
//! A [`Circuit`] is an append-only list of gates; operands are indices of
//! earlier gates, so every circuit is acyclic and already in topological
//! order. The only constants are the unit and positive integers, which keeps
//! every representable circuit subtraction-free.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semifield::{Arith, Semifield, SemifieldError};

/// Index of a gate inside its circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GateRef(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    Input(String),
    One,
    PosInt(BigUint),
    Add(GateRef, GateRef),
    Mul(GateRef, GateRef),
    Div(GateRef, GateRef),
}

impl Gate {
    fn operands(&self) -> Option<(GateRef, GateRef)> {
        match *self {
            Gate::Add(a, b) | Gate::Mul(a, b) | Gate::Div(a, b) => Some((a, b)),
            _ => None,
        }
    }

    fn label(&self) -> String {
        match self {
            Gate::Input(name) => format!("input {name}"),
            Gate::One => "1".to_string(),
            Gate::PosInt(v) => v.to_string(),
            Gate::Add(..) => "+".to_string(),
            Gate::Mul(..) => "*".to_string(),
            Gate::Div(..) => "/".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("forward reference: gate {gate} uses gate {target}")]
    ForwardReference { gate: usize, target: usize },
    #[error("dangling output: output {index} refers to gate {target} of {len}")]
    DanglingOutput { index: usize, target: usize, len: usize },
    #[error("input gate {gate} names {name:?}, which is not a declared input")]
    UndeclaredInput { gate: usize, name: String },
    #[error("input {0:?} is declared more than once")]
    DuplicateInput(String),
    #[error("input {0:?} is declared but has no input gate")]
    UnusedInput(String),
    #[error("input {0:?} has more than one input gate")]
    DuplicateInputGate(String),
    #[error("gate {0} is a zero constant")]
    ZeroConstant(usize),
    #[error("malformed circuit JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("no value supplied for input {0:?}")]
    MissingInput(String),
    #[error("gate {gate}: {source}")]
    Arith { gate: usize, source: SemifieldError },
    #[error("gate {gate} produced {value}, outside the {semifield} semifield")]
    OutOfDomain { gate: usize, value: String, semifield: &'static str },
    #[error(transparent)]
    Invalid(#[from] CircuitError),
}

/// Gate counts by kind. `total` counts arithmetic gates only.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateStats {
    pub inputs: usize,
    pub constants: usize,
    pub adds: usize,
    pub muls: usize,
    pub divs: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    gates: Vec<Gate>,
    inputs: Vec<String>,
    outputs: Vec<GateRef>,
}

impl Circuit {
    /// Assembles a circuit from raw parts and validates it.
    pub fn from_parts(gates: Vec<Gate>, inputs: Vec<String>, outputs: Vec<GateRef>) -> Result<Self, CircuitError> {
        let c = Circuit { gates, inputs, outputs };
        c.validate()?;
        Ok(c)
    }

    /// Assembles a circuit without checking any invariant.
    pub fn from_parts_unchecked(gates: Vec<Gate>, inputs: Vec<String>, outputs: Vec<GateRef>) -> Self {
        Circuit { gates, inputs, outputs }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[GateRef] {
        &self.outputs
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Checks acyclicity, reference validity and input-list consistency,
    /// returning the first violation.
    pub fn validate(&self) -> Result<(), CircuitError> {
        let mut declared = HashSet::new();
        for name in &self.inputs {
            if !declared.insert(name.as_str()) {
                return Err(CircuitError::DuplicateInput(name.clone()));
            }
        }
        let mut seen = HashSet::new();
        for (i, gate) in self.gates.iter().enumerate() {
            match gate {
                Gate::Input(name) => {
                    if !declared.contains(name.as_str()) {
                        return Err(CircuitError::UndeclaredInput { gate: i, name: name.clone() });
                    }
                    if !seen.insert(name.as_str()) {
                        return Err(CircuitError::DuplicateInputGate(name.clone()));
                    }
                }
                Gate::PosInt(v) if v.is_zero() => return Err(CircuitError::ZeroConstant(i)),
                _ => {}
            }
            if let Some((a, b)) = gate.operands() {
                for r in [a, b] {
                    if r.0 >= i {
                        return Err(CircuitError::ForwardReference { gate: i, target: r.0 });
                    }
                }
            }
        }
        if let Some(name) = self.inputs.iter().find(|n| !seen.contains(n.as_str())) {
            return Err(CircuitError::UnusedInput(name.clone()));
        }
        for (index, r) in self.outputs.iter().enumerate() {
            if r.0 >= self.gates.len() {
                return Err(CircuitError::DanglingOutput { index, target: r.0, len: self.gates.len() });
            }
        }
        Ok(())
    }

    pub fn stats(&self) -> GateStats {
        let mut s = GateStats::default();
        for g in &self.gates {
            match g {
                Gate::Input(_) => s.inputs += 1,
                Gate::One | Gate::PosInt(_) => s.constants += 1,
                Gate::Add(..) => s.adds += 1,
                Gate::Mul(..) => s.muls += 1,
                Gate::Div(..) => s.divs += 1,
            }
        }
        s.total = s.adds + s.muls + s.divs;
        s
    }

    /// Evaluates every output over the semifield `S`.
    ///
    /// Each intermediate value is checked for membership in `S`, so overflow
    /// in [`crate::Float64`] or a zero denominator is reported with the gate
    /// index at which it happened.
    pub fn evaluate<S: Semifield>(&self, assignment: &HashMap<String, S>) -> Result<Vec<S>, EvalError> {
        self.validate()?;
        let mut values: Vec<S> = Vec::with_capacity(self.gates.len());
        for (i, gate) in self.gates.iter().enumerate() {
            let v = match gate {
                Gate::Input(name) => {
                    assignment.get(name).cloned().ok_or_else(|| EvalError::MissingInput(name.clone()))?
                }
                Gate::One => S::one(),
                Gate::PosInt(n) => S::from_pos_int(n),
                Gate::Add(a, b) => values[a.0].add(&values[b.0]),
                Gate::Mul(a, b) => values[a.0].mul(&values[b.0]),
                Gate::Div(a, b) => {
                    values[a.0].div(&values[b.0]).map_err(|source| EvalError::Arith { gate: i, source })?
                }
            };
            if !v.is_valid() {
                return Err(EvalError::OutOfDomain { gate: i, value: v.to_string(), semifield: S::NAME });
            }
            values.push(v);
        }
        Ok(self.outputs.iter().map(|r| values[r.0].clone()).collect())
    }

    /// Evaluates with inputs given positionally, in declaration order.
    pub fn evaluate_positional<S: Semifield>(&self, values: &[S]) -> Result<Vec<S>, EvalError> {
        if values.len() < self.inputs.len() {
            return Err(EvalError::MissingInput(self.inputs[values.len()].clone()));
        }
        let assignment = self.inputs.iter().cloned().zip(values.iter().cloned()).collect();
        self.evaluate(&assignment)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CircuitJson::from(self)).expect("circuit JSON serialization")
    }

    pub fn from_json(text: &str) -> Result<Self, CircuitError> {
        let raw: CircuitJson = serde_json::from_str(text).map_err(|e| CircuitError::Json(e.to_string()))?;
        raw.try_into()
    }

    /// Graphviz rendering, one node per gate labelled with its kind.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph circuit {\n  rankdir=BT;\n");
        let outputs: HashSet<usize> = self.outputs.iter().map(|r| r.0).collect();
        for (i, g) in self.gates.iter().enumerate() {
            let shape = match g {
                Gate::Input(_) => "box",
                Gate::One | Gate::PosInt(_) => "plaintext",
                _ if outputs.contains(&i) => "doublecircle",
                _ => "circle",
            };
            let _ = writeln!(out, "  g{i} [label=\"{}\", shape={shape}];", g.label().replace('"', "\\\""));
        }
        for (i, g) in self.gates.iter().enumerate() {
            if let Some((a, b)) = g.operands() {
                let _ = writeln!(out, "  g{} -> g{i};", a.0);
                let _ = writeln!(out, "  g{} -> g{i};", b.0);
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CircuitJson {
    inputs: Vec<String>,
    gates: Vec<GateJson>,
    outputs: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
enum GateJson {
    Input {
        name: String,
    },
    One,
    #[serde(rename = "posint")]
    PosInt {
        value: String,
    },
    Add {
        args: [usize; 2],
    },
    Mul {
        args: [usize; 2],
    },
    Div {
        args: [usize; 2],
    },
}

impl From<&Circuit> for CircuitJson {
    fn from(c: &Circuit) -> Self {
        let gates = c
            .gates
            .iter()
            .map(|g| match g {
                Gate::Input(name) => GateJson::Input { name: name.clone() },
                Gate::One => GateJson::One,
                Gate::PosInt(v) => GateJson::PosInt { value: v.to_string() },
                Gate::Add(a, b) => GateJson::Add { args: [a.0, b.0] },
                Gate::Mul(a, b) => GateJson::Mul { args: [a.0, b.0] },
                Gate::Div(a, b) => GateJson::Div { args: [a.0, b.0] },
            })
            .collect();
        CircuitJson { inputs: c.inputs.clone(), gates, outputs: c.outputs.iter().map(|r| r.0).collect() }
    }
}

impl TryFrom<CircuitJson> for Circuit {
    type Error = CircuitError;

    fn try_from(raw: CircuitJson) -> Result<Self, CircuitError> {
        let gates = raw
            .gates
            .into_iter()
            .map(|g| {
                Ok(match g {
                    GateJson::Input { name } => Gate::Input(name),
                    GateJson::One => Gate::One,
                    GateJson::PosInt { value } => Gate::PosInt(
                        value
                            .parse::<BigUint>()
                            .map_err(|_| CircuitError::Json(format!("bad posint value {value:?}")))?,
                    ),
                    GateJson::Add { args: [a, b] } => Gate::Add(GateRef(a), GateRef(b)),
                    GateJson::Mul { args: [a, b] } => Gate::Mul(GateRef(a), GateRef(b)),
                    GateJson::Div { args: [a, b] } => Gate::Div(GateRef(a), GateRef(b)),
                })
            })
            .collect::<Result<Vec<_>, CircuitError>>()?;
        Circuit::from_parts(gates, raw.inputs, raw.outputs.into_iter().map(GateRef).collect())
    }
}

/// Appends gates to a circuit under construction.
///
/// Implements [`Arith`] with gate references as values. The unit and small
/// integer constants are cached so repeated requests share one gate.
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
    inputs: Vec<String>,
    input_refs: HashMap<String, GateRef>,
    one: Option<GateRef>,
    ints: HashMap<BigUint, GateRef>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, g: Gate) -> GateRef {
        self.gates.push(g);
        GateRef(self.gates.len() - 1)
    }

    /// Declares (or returns the existing gate of) a named input.
    pub fn input(&mut self, name: &str) -> GateRef {
        if let Some(&r) = self.input_refs.get(name) {
            return r;
        }
        let r = self.push(Gate::Input(name.to_string()));
        self.inputs.push(name.to_string());
        self.input_refs.insert(name.to_string(), r);
        r
    }

    pub fn pos_int(&mut self, n: BigUint) -> GateRef {
        assert!(!n.is_zero(), "zero is not a subtraction-free constant");
        if n == BigUint::from(1u8) {
            return Arith::one(self);
        }
        if let Some(&r) = self.ints.get(&n) {
            return r;
        }
        let r = self.push(Gate::PosInt(n.clone()));
        self.ints.insert(n, r);
        r
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn stats(&self) -> GateStats {
        Circuit::from_parts_unchecked(self.gates.clone(), vec![], vec![]).stats()
    }

    pub fn finish(self, outputs: Vec<GateRef>) -> Circuit {
        let c = Circuit { gates: self.gates, inputs: self.inputs, outputs };
        debug_assert_eq!(c.validate(), Ok(()));
        c
    }
}

impl Arith for CircuitBuilder {
    type Value = GateRef;

    fn one(&mut self) -> GateRef {
        if let Some(r) = self.one {
            return r;
        }
        let r = self.push(Gate::One);
        self.one = Some(r);
        r
    }

    fn int(&mut self, n: u64) -> GateRef {
        self.pos_int(BigUint::from(n))
    }

    fn add(&mut self, a: &GateRef, b: &GateRef) -> GateRef {
        self.push(Gate::Add(*a, *b))
    }

    fn mul(&mut self, a: &GateRef, b: &GateRef) -> GateRef {
        self.push(Gate::Mul(*a, *b))
    }

    fn div(&mut self, a: &GateRef, b: &GateRef) -> Result<GateRef, SemifieldError> {
        Ok(self.push(Gate::Div(*a, *b)))
    }
}
