//! Maximum-weight feasible sets by the symmetric greedy algorithm.
//!
//! Edges are visited by decreasing absolute weight. A nonnegative edge is
//! put into the solution if that keeps the current partial decision
//! separable and is otherwise excluded for good; a negative edge is
//! excluded if possible and otherwise forced in. Each step is one
//! separability query, so the run costs `|E|` oracle calls.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::labelled_graph::{EdgeId, EdgeSet, LabelledGraph};
use crate::separation::SeparationOracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("malformed weights: {0}")]
    Format(String),
    #[error("no weight given for edge {0}")]
    Missing(EdgeId),
    #[error("weight given for unknown edge {0}")]
    Unknown(EdgeId),
    #[error("weight of edge {0} has a zero denominator")]
    ZeroDenominator(EdgeId),
}

/// Exact rational weight per edge id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightMap(BTreeMap<EdgeId, BigRational>);

impl WeightMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: impl Into<EdgeId>, w: BigRational) {
        self.0.insert(e.into(), w);
    }

    pub fn get(&self, e: &EdgeId) -> Option<&BigRational> {
        self.0.get(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, &BigRational)> {
        self.0.iter()
    }

    /// Every edge of `g` gets weight `w`.
    pub fn uniform(g: &LabelledGraph, w: BigRational) -> Self {
        Self(g.edges().iter().map(|e| (e.id.clone(), w.clone())).collect())
    }

    pub fn from_integers<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<EdgeId>,
    {
        Self(
            pairs
                .into_iter()
                .map(|(e, w)| (e.into(), BigRational::from_integer(w.into())))
                .collect(),
        )
    }

    /// Parses `{"edge": 3, "other": {"num": -7, "den": 2}, ...}`.
    pub fn from_json_str(text: &str) -> Result<Self, WeightError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| WeightError::Format(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Self, WeightError> {
        let obj = value
            .as_object()
            .ok_or_else(|| WeightError::Format("expected an object mapping edge ids to weights".into()))?;
        let mut out = BTreeMap::new();
        for (id, w) in obj {
            let edge = EdgeId::from(id.as_str());
            let integer = |v: &Value, field: &str| {
                let parsed = match v {
                    Value::Number(n) => n.as_i64().map(BigInt::from),
                    Value::String(s) => s.parse::<BigInt>().ok(),
                    _ => None,
                };
                parsed.ok_or_else(|| WeightError::Format(format!("{id}{field}: expected an integer")))
            };
            let weight = match w {
                Value::Number(_) | Value::String(_) => BigRational::from_integer(integer(w, "")?),
                Value::Object(parts) => {
                    if let Some(k) = parts.keys().find(|k| *k != "num" && *k != "den") {
                        return Err(WeightError::Format(format!("{id}: unexpected field {k:?}")));
                    }
                    let num = parts
                        .get("num")
                        .ok_or_else(|| WeightError::Format(format!("{id}: missing field \"num\"")))?;
                    let num = integer(num, ".num")?;
                    let den = match parts.get("den") {
                        Some(d) => integer(d, ".den")?,
                        None => BigInt::from(1),
                    };
                    if den.is_zero() {
                        return Err(WeightError::ZeroDenominator(edge));
                    }
                    BigRational::new(num, den)
                }
                _ => {
                    return Err(WeightError::Format(format!(
                        "{id}: expected an integer or {{\"num\", \"den\"}}"
                    )))
                }
            };
            out.insert(edge, weight);
        }
        Ok(Self(out))
    }

    /// Integers stay plain; other values use `{"num", "den"}`. Values
    /// outside `i64` are written as decimal strings.
    pub fn to_json(&self) -> Value {
        let int = |n: &BigInt| n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from);
        let map = self
            .0
            .iter()
            .map(|(e, w)| {
                let v = if w.is_integer() {
                    int(w.numer())
                } else {
                    serde_json::json!({"num": int(w.numer()), "den": int(w.denom())})
                };
                (e.as_str().to_owned(), v)
            })
            .collect();
        Value::Object(map)
    }

    /// Checks that the weights cover exactly the edges of `g`.
    pub fn validate_for(&self, g: &LabelledGraph) -> Result<(), WeightError> {
        if let Some(e) = g.edges().iter().find(|e| !self.0.contains_key(&e.id)) {
            return Err(WeightError::Missing(e.id.clone()));
        }
        if let Some(e) = self.0.keys().find(|e| g.edge(e).is_none()) {
            return Err(WeightError::Unknown(e.clone()));
        }
        Ok(())
    }

    /// Sum of the weights of `f`; edges without a weight count as zero.
    pub fn total(&self, f: &EdgeSet) -> BigRational {
        f.iter()
            .filter_map(|e| self.0.get(e))
            .fold(BigRational::zero(), |acc, w| acc + w)
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        Self(self.0.iter().map(|(e, w)| (e.clone(), w * factor)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    KeptInX,
    ForcedToY,
    KeptInY,
    ForcedToX,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::KeptInX => "kept-in-X",
            Branch::ForcedToY => "forced-to-Y",
            Branch::KeptInY => "kept-in-Y",
            Branch::ForcedToX => "forced-to-X",
        }
    }

    pub fn in_solution(self) -> bool {
        matches!(self, Branch::KeptInX | Branch::ForcedToX)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub edge: EdgeId,
    pub branch: Branch,
}

/// One decision per edge, in the order the edges were visited.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GreedyTrace {
    pub decisions: Vec<Decision>,
}

impl GreedyTrace {
    pub fn len(&self) -> usize {
        self.decisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decisions.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub edges: EdgeSet,
    pub total: BigRational,
    pub trace: GreedyTrace,
}

/// Visiting order: decreasing `|w|`, ties by ascending edge id.
pub fn greedy_order(g: &LabelledGraph, w: &WeightMap) -> Result<Vec<usize>, WeightError> {
    w.validate_for(g)?;
    let weight = |i: usize| &w.0[&g.edges()[i].id];
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| {
        weight(b)
            .abs()
            .cmp(&weight(a).abs())
            .then_with(|| g.edges()[a].id.cmp(&g.edges()[b].id))
    });
    Ok(order)
}

/// A maximum-weight acyclic gamma-nonzero set of `g`.
pub fn solve_max_weight(g: &LabelledGraph, w: &WeightMap) -> Result<Solution, WeightError> {
    let order = greedy_order(g, w)?;
    let oracle = SeparationOracle::new(g);
    let m = g.edge_count();
    let mut x = vec![false; m];
    let mut y = vec![false; m];
    let mut trace = GreedyTrace::default();
    for i in order {
        let id = &g.edges()[i].id;
        let branch = if !w.0[id].is_negative() {
            x[i] = true;
            if oracle.query(&x, &y) {
                Branch::KeptInX
            } else {
                x[i] = false;
                y[i] = true;
                Branch::ForcedToY
            }
        } else {
            y[i] = true;
            if oracle.query(&x, &y) {
                Branch::KeptInY
            } else {
                y[i] = false;
                x[i] = true;
                Branch::ForcedToX
            }
        };
        trace.decisions.push(Decision {
            edge: id.clone(),
            branch,
        });
    }
    let edges: EdgeSet = (0..m).filter(|&i| x[i]).map(|i| g.edges()[i].id.clone()).collect();
    let total = w.total(&edges);
    Ok(Solution { edges, total, trace })
}
