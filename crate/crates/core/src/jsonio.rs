//! JSON representations of operators, diagonal tuples and block models.
//!
//! Rationals travel as decimal or `p/q` strings and complex numbers as
//! two-element string arrays, keeping files exact. Documents carry a
//! `schema` tag (`fredblock/1`); it is emitted on output and optional on
//! input.
//!
//! Basis maps serialize as explicit `pairs` or an affine `rule`
//! (`m -> mult*m + offset` over all sources). Maps with infinitely many
//! pairs and no affine closed form are written as pairs up to a declared
//! `source_bound`; consumers must refuse windows beyond that bound.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blockmodel::{BasisMap, BlockModel, DiagonalTuple};
use crate::completion::{Prediction, Strategy};
use crate::extnat::ExtNat;
use crate::opmodel::{FredholmData, OperatorExpr, SequenceSpec, Tail};
use crate::rational::{format_rational, parse_rational, RationalComplex};

pub const SCHEMA: &str = "fredblock/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "format error: {}", self.0)
    }
}

impl std::error::Error for FormatError {}

fn complex_to_json(z: &RationalComplex) -> [String; 2] {
    [format_rational(&z.re), format_rational(&z.im)]
}

fn complex_from_json(v: &[String; 2]) -> Result<RationalComplex, FormatError> {
    Ok(RationalComplex::new(
        parse_rational(&v[0]).map_err(|e| FormatError(e.to_string()))?,
        parse_rational(&v[1]).map_err(|e| FormatError(e.to_string()))?,
    ))
}

pub fn extnat_to_string(v: ExtNat) -> String {
    v.to_string()
}

pub fn extnat_from_string(s: &str) -> Result<ExtNat, FormatError> {
    if s == "inf" {
        Ok(ExtNat::Inf)
    } else {
        s.parse::<u64>()
            .map(ExtNat::Fin)
            .map_err(|_| FormatError(format!("invalid extended natural: {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailJson {
    Constant { value: [String; 2] },
    Convergent { limit: [String; 2], rate: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorJson {
    ForwardShift { k: u64 },
    BackwardShift { k: u64 },
    Diagonal { prefix: Vec<[String; 2]>, tail: TailJson },
    Spread { k: u64 },
    Zero,
    Identity,
    DirectSum { left: Box<OperatorJson>, right: Box<OperatorJson> },
    Adjoint { inner: Box<OperatorJson> },
}

pub fn operator_to_json(expr: &OperatorExpr) -> OperatorJson {
    match expr {
        OperatorExpr::ForwardShift(k) => OperatorJson::ForwardShift { k: *k },
        OperatorExpr::BackwardShift(k) => OperatorJson::BackwardShift { k: *k },
        OperatorExpr::Diagonal(spec) => OperatorJson::Diagonal {
            prefix: spec.prefix.iter().map(complex_to_json).collect(),
            tail: match &spec.tail {
                Tail::Constant(c) => TailJson::Constant { value: complex_to_json(c) },
                Tail::Convergent { limit, rate } => TailJson::Convergent {
                    limit: complex_to_json(limit),
                    rate: format_rational(rate),
                },
            },
        },
        OperatorExpr::Spread(k) => OperatorJson::Spread { k: *k },
        OperatorExpr::Zero => OperatorJson::Zero,
        OperatorExpr::Identity => OperatorJson::Identity,
        OperatorExpr::DirectSum(l, r) => OperatorJson::DirectSum {
            left: Box::new(operator_to_json(l)),
            right: Box::new(operator_to_json(r)),
        },
        OperatorExpr::Adjoint(inner) => {
            OperatorJson::Adjoint { inner: Box::new(operator_to_json(inner)) }
        }
    }
}

pub fn operator_from_json(json: &OperatorJson) -> Result<OperatorExpr, FormatError> {
    let expr = match json {
        OperatorJson::ForwardShift { k } => OperatorExpr::ForwardShift(*k),
        OperatorJson::BackwardShift { k } => OperatorExpr::BackwardShift(*k),
        OperatorJson::Diagonal { prefix, tail } => {
            let prefix =
                prefix.iter().map(complex_from_json).collect::<Result<Vec<_>, _>>()?;
            let tail = match tail {
                TailJson::Constant { value } => Tail::Constant(complex_from_json(value)?),
                TailJson::Convergent { limit, rate } => Tail::Convergent {
                    limit: complex_from_json(limit)?,
                    rate: parse_rational(rate).map_err(|e| FormatError(e.to_string()))?,
                },
            };
            OperatorExpr::Diagonal(SequenceSpec { prefix, tail })
        }
        OperatorJson::Spread { k } => OperatorExpr::Spread(*k),
        OperatorJson::Zero => OperatorExpr::Zero,
        OperatorJson::Identity => OperatorExpr::Identity,
        OperatorJson::DirectSum { left, right } => OperatorExpr::DirectSum(
            Box::new(operator_from_json(left)?),
            Box::new(operator_from_json(right)?),
        ),
        OperatorJson::Adjoint { inner } => {
            OperatorExpr::Adjoint(Box::new(operator_from_json(inner)?))
        }
    };
    expr.validate().map_err(FormatError)?;
    Ok(expr)
}

/// A bare operator document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub operator: OperatorJson,
}

/// A diagonal tuple document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TupleDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub diag: Vec<OperatorJson>,
}

impl TupleDoc {
    pub fn from_tuple(diag: &DiagonalTuple) -> Self {
        TupleDoc {
            schema: Some(SCHEMA.to_string()),
            diag: diag.entries().iter().map(operator_to_json).collect(),
        }
    }

    pub fn to_tuple(&self) -> Result<DiagonalTuple, FormatError> {
        if self.diag.len() < 2 {
            return Err(FormatError("diagonal tuple needs at least two entries".into()));
        }
        Ok(DiagonalTuple::new(
            self.diag.iter().map(operator_from_json).collect::<Result<Vec<_>, _>>()?,
        ))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleJson {
    pub mult: u64,
    pub offset: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UpperEntryJson {
    pub i: usize,
    pub j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(u64, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleJson>,
    /// Present when an infinite non-affine map was cut at this source bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_bound: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PredictionJson {
    pub alpha: String,
    pub beta: String,
    pub range_closed: bool,
}

impl PredictionJson {
    pub fn from_prediction(p: &Prediction) -> Self {
        PredictionJson {
            alpha: extnat_to_string(p.alpha),
            beta: extnat_to_string(p.beta),
            range_closed: p.range_closed,
        }
    }

    pub fn to_prediction(&self) -> Result<Prediction, FormatError> {
        Ok(Prediction {
            alpha: extnat_from_string(&self.alpha)?,
            beta: extnat_from_string(&self.beta)?,
            range_closed: self.range_closed,
        })
    }
}

/// A block model document; `strategy` and `predicted` are present on files
/// written by the completion pipeline.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub diag: Vec<OperatorJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub upper: Vec<UpperEntryJson>,
    pub lambda: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<PredictionJson>,
}

/// Default source window for serializing maps without a closed form.
pub const DEFAULT_PAIR_BOUND: u64 = 512;

fn basis_map_to_json(i: usize, j: usize, map: &BasisMap, pair_bound: u64) -> UpperEntryJson {
    if let Some((mult, offset)) = map.as_rule() {
        return UpperEntryJson { i, j, pairs: None, rule: Some(RuleJson { mult, offset }), source_bound: None };
    }
    let pairs = map.pairs_window(pair_bound);
    let truncated = map.pair_count() > ExtNat::Fin(pairs.len() as u64);
    UpperEntryJson {
        i,
        j,
        pairs: Some(pairs),
        rule: None,
        source_bound: truncated.then_some(pair_bound),
    }
}

pub fn model_to_doc(
    model: &BlockModel,
    strategy: Option<Strategy>,
    predicted: Option<&Prediction>,
    pair_bound: u64,
) -> ModelDoc {
    ModelDoc {
        schema: Some(SCHEMA.to_string()),
        diag: model.diag.entries().iter().map(operator_to_json).collect(),
        upper: model
            .upper
            .iter()
            .map(|(&(i, j), m)| basis_map_to_json(i, j, m, pair_bound))
            .collect(),
        lambda: complex_to_json(&model.shift),
        strategy: strategy.map(|s| s.to_string()),
        predicted: predicted.map(PredictionJson::from_prediction),
    }
}

/// A parsed model plus the optional prediction record and the smallest
/// declared source bound of any truncated map.
pub struct ParsedModel {
    pub model: BlockModel,
    pub predicted: Option<Prediction>,
    pub source_bound: Option<u64>,
}

pub fn model_from_doc(doc: &ModelDoc) -> Result<ParsedModel, FormatError> {
    if doc.diag.len() < 2 {
        return Err(FormatError("model needs at least two diagonal entries".into()));
    }
    let n = doc.diag.len();
    let diag = DiagonalTuple::new(
        doc.diag.iter().map(operator_from_json).collect::<Result<Vec<_>, _>>()?,
    );
    let mut upper = BTreeMap::new();
    let mut source_bound: Option<u64> = None;
    for entry in &doc.upper {
        if !(entry.i >= 1 && entry.i < entry.j && entry.j <= n) {
            return Err(FormatError(format!(
                "map position ({}, {}) is not strictly upper-triangular",
                entry.i, entry.j
            )));
        }
        let map = match (&entry.pairs, &entry.rule) {
            (Some(pairs), None) => BasisMap::from_pairs(pairs.clone())
                .map_err(|e| FormatError(e.to_string()))?,
            (None, Some(rule)) => {
                let m = BasisMap::Rule { mult: rule.mult, offset: rule.offset };
                m.validate().map_err(|e| FormatError(e.to_string()))?;
                m
            }
            _ => {
                return Err(FormatError(format!(
                    "map at ({}, {}) needs exactly one of pairs or rule",
                    entry.i, entry.j
                )))
            }
        };
        if upper.insert((entry.i, entry.j), map).is_some() {
            return Err(FormatError(format!(
                "duplicate map position ({}, {})",
                entry.i, entry.j
            )));
        }
        if let Some(b) = entry.source_bound {
            source_bound = Some(source_bound.map_or(b, |cur| cur.min(b)));
        }
    }
    let lambda = complex_from_json(&doc.lambda)?;
    let predicted = doc.predicted.as_ref().map(|p| p.to_prediction()).transpose()?;
    Ok(ParsedModel { model: BlockModel::new(diag, upper, lambda), predicted, source_bound })
}

/// The wire form of one Fredholm data record.
pub fn fredholm_data_json(data: &FredholmData) -> serde_json::Value {
    serde_json::json!({
        "schema": SCHEMA,
        "alpha": extnat_to_string(data.alpha),
        "beta": extnat_to_string(data.beta),
        "range_closed": data.range_closed,
    })
}
