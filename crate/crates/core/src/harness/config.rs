//! Declarative experiment configuration.

use std::collections::BTreeMap;
use std::time::Duration;

use num_rational::Ratio;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::domains::{
    make_ferry, make_rendezvous_with, make_swap_with, CounterHeuristic, CounterInstance, SolutionSpec,
    TravelInstance, TreeInstance,
};
use crate::domains::travel::{RENDEZVOUS_DIAGONAL_COST, RENDEZVOUS_EXTERIOR_COST, DEFAULT_FLY_COST};
use crate::eval::{parse_rational, EvalKind, Evaluator, EvaluatorConfig, TieBreak};
use crate::problem::ModelError;
use crate::search::Budget;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("cannot parse config: {0}")]
    Syntax(String),
    #[error("invalid `{key}`: {reason}")]
    Invalid { key: String, reason: String },
}

impl ConfigError {
    pub fn invalid(key: impl Into<String>, reason: impl ToString) -> Self {
        ConfigError::Invalid {
            key: key.into(),
            reason: reason.to_string(),
        }
    }

    /// The offending key, when one can be named.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::Syntax(_) => None,
            ConfigError::Invalid { key, .. } => Some(key),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluatorSpec {
    pub evaluator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mix: Option<String>,
    #[serde(default)]
    pub delayed: bool,
    /// Second open list as `kind` or `kind*weight`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tiebreak: Option<String>,
}

impl EvaluatorSpec {
    pub fn named(evaluator: &str) -> Self {
        EvaluatorSpec {
            evaluator: evaluator.into(),
            weight: None,
            mix: None,
            delayed: false,
            dual: None,
            tiebreak: None,
        }
    }

    pub fn build(&self) -> Result<EvaluatorConfig, ConfigError> {
        let bad = |key: &str, e: crate::eval::EvalError| ConfigError::invalid(format!("evaluator.{key}"), e);
        let mut primary = parse_evaluator(&self.evaluator).map_err(|e| bad("evaluator", e))?;
        if let Some(w) = &self.weight {
            primary.weight = parse_rational(w).map_err(|e| bad("weight", e))?;
        }
        if let Some(m) = &self.mix {
            primary.hybrid_mix = Some(parse_rational(m).map_err(|e| bad("mix", e))?);
        }
        let mut config = EvaluatorConfig::from(primary);
        if let Some(d) = &self.dual {
            config.secondary = Some(parse_evaluator(d).map_err(|e| bad("dual", e))?);
        }
        config.delayed = self.delayed;
        if let Some(t) = &self.tiebreak {
            config.tie_break = t.parse::<TieBreak>().map_err(|e| bad("tiebreak", e))?;
        }
        config.validate().map_err(|e| bad("evaluator", e))?;
        Ok(config)
    }
}

/// Parses `kind` or `kind*weight`.
fn parse_evaluator(text: &str) -> Result<Evaluator, crate::eval::EvalError> {
    let (kind, weight) = match text.split_once('*') {
        Some((k, w)) => (k, Some(w)),
        None => (text, None),
    };
    let mut e = Evaluator::new(kind.parse::<EvalKind>()?);
    if let Some(w) = weight {
        e.weight = parse_rational(w)?;
    }
    Ok(e)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_expansions: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_seconds: Option<u64>,
    #[serde(default)]
    pub prove: bool,
}

impl BudgetSpec {
    pub fn build(&self) -> Result<Budget, ConfigError> {
        let budget = Budget {
            max_expansions: self.max_expansions,
            max_time: self.max_seconds.map(Duration::from_secs),
            prove_optimality: self.prove,
        };
        budget.validate().map_err(|e| ConfigError::invalid("budget", e))?;
        Ok(budget)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub domain: String,
    #[serde(default)]
    pub domain_params: BTreeMap<String, Value>,
    pub evaluator: EvaluatorSpec,
    #[serde(default)]
    pub budget: BudgetSpec,
    #[serde(default)]
    pub seed: u64,
    /// Adds wall-clock fields to result files, which then differ run to run.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub emit_timing: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        let config: ExperimentConfig = serde_json::from_value(value).map_err(|e| {
            let msg = e.to_string();
            let key = msg
                .split('`')
                .nth(1)
                .filter(|_| msg.contains("field"))
                .unwrap_or("config")
                .to_string();
            ConfigError::invalid(key, msg)
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// Checks evaluator, budget and domain without running anything.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.evaluator.build()?;
        self.budget.build()?;
        for c in self.expand()? {
            c.instance()?;
        }
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Splits a counter config with a `goals` list (or `"all"`) into one
    /// config per goal; any other config is returned unchanged.
    pub fn expand(&self) -> Result<Vec<ExperimentConfig>, ConfigError> {
        let Some(goals) = self.domain_params.get("goals") else {
            return Ok(vec![self.clone()]);
        };
        if self.domain != "counter" {
            return Err(ConfigError::invalid("domain_params.goals", "goal sweeps need the counter domain"));
        }
        let goals: Vec<u64> = match goals {
            Value::String(s) if s == "all" => {
                let k = self
                    .domain_params
                    .get("k")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| ConfigError::invalid("domain_params.k", "needed to sweep all goals"))?;
                if !(2..=20).contains(&k) {
                    return Err(ConfigError::invalid("domain_params.k", "sweeping all goals needs k in 2..=20"));
                }
                (0..1u64 << k).collect()
            }
            other => serde_json::from_value(other.clone())
                .map_err(|e| ConfigError::invalid("domain_params.goals", e))?,
        };
        Ok(goals
            .into_iter()
            .map(|g| {
                let mut c = self.clone();
                c.domain_params.remove("goals");
                c.domain_params.insert("goal".into(), Value::from(g));
                c
            })
            .collect())
    }

    pub fn instance(&self) -> Result<Instance, ConfigError> {
        let model = |e: ModelError| match e {
            ModelError::InvalidParameter { key, reason } => {
                ConfigError::invalid(format!("domain_params.{key}"), reason)
            }
            other => ConfigError::invalid("domain_params", other),
        };
        Ok(match self.domain.as_str() {
            "counter" => {
                let p: CounterParams = self.params()?;
                let heuristic = match p.heuristic.as_deref() {
                    None | Some("zero") => CounterHeuristic::Zero,
                    Some("exact") => CounterHeuristic::Exact,
                    Some(other) => {
                        return Err(ConfigError::invalid(
                            "domain_params.heuristic",
                            format!("expected zero or exact, got `{other}`"),
                        ))
                    }
                };
                let goal = p.goal.unwrap_or((1u64 << p.k.min(62)) - 2);
                Instance::Counter(CounterInstance::new(p.k, goal).map_err(model)?.with_heuristic(heuristic))
            }
            "tree" => {
                let p: TreeParams = self.params()?;
                let mix = parse_rational(p.mix.as_deref().unwrap_or("1/2"))
                    .map_err(|e| ConfigError::invalid("domain_params.mix", e))?;
                if mix < Ratio::from_integer(0) {
                    return Err(ConfigError::invalid("domain_params.mix", "mix must be non-negative"));
                }
                let mix = Ratio::new(*mix.numer() as u64, *mix.denom() as u64);
                let tree = match (p.depth, &p.normalized_cost) {
                    (Some(depth), None) => TreeInstance::new(
                        p.x,
                        p.y,
                        p.c_high,
                        p.c_low,
                        p.max_depth.unwrap_or(depth),
                        SolutionSpec {
                            count: p.count,
                            mix_ratio: mix,
                            depth,
                            seed: self.seed,
                        },
                    ),
                    (None, Some(c)) => {
                        let c = parse_rational(c).map_err(|e| ConfigError::invalid("domain_params.normalized_cost", e))?;
                        if c <= Ratio::from_integer(0) {
                            return Err(ConfigError::invalid("domain_params.normalized_cost", "must be positive"));
                        }
                        TreeInstance::for_normalized_cost(
                            p.x,
                            p.y,
                            p.c_high,
                            p.c_low,
                            Ratio::new(*c.numer() as u64, *c.denom() as u64),
                            p.count,
                            self.seed,
                            p.max_depth.unwrap_or(0),
                        )
                    }
                    _ => {
                        return Err(ConfigError::invalid(
                            "domain_params.depth",
                            "give exactly one of depth and normalized_cost",
                        ))
                    }
                };
                Instance::Tree(tree.map_err(model)?)
            }
            "rendezvous" => {
                let p: RendezvousParams = self.params()?;
                Instance::Travel(
                    make_rendezvous_with(p.k, p.adjacent, p.diagonal_cost, p.exterior_cost).map_err(model)?,
                )
            }
            "swap" => {
                let p: SwapParams = self.params()?;
                Instance::Travel(make_swap_with(p.n, p.per_end, p.fly_cost).map_err(model)?)
            }
            "ferry" => {
                let p: FerryParams = self.params()?;
                Instance::Travel(make_ferry(p.n, p.stranded, p.idle).map_err(model)?)
            }
            other => {
                return Err(ConfigError::invalid(
                    "domain",
                    format!("unknown domain `{other}` (expected counter, tree, rendezvous, swap or ferry)"),
                ))
            }
        })
    }

    fn params<T: DeserializeOwned>(&self) -> Result<T, ConfigError> {
        let map: serde_json::Map<String, Value> = self
            .domain_params
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        serde_json::from_value(Value::Object(map)).map_err(|e| {
            let msg = e.to_string();
            let field = msg.split('`').nth(1).unwrap_or("").to_string();
            ConfigError::invalid(format!("domain_params.{field}").trim_end_matches('.'), msg)
        })
    }
}

/// A built benchmark instance of any domain.
#[derive(Clone, Debug)]
pub enum Instance {
    Counter(CounterInstance),
    Tree(TreeInstance),
    Travel(TravelInstance),
}

/// Evaluates `$body` with `$p` bound to the concrete problem inside an
/// [`Instance`].
#[macro_export]
macro_rules! with_instance {
    ($instance:expr, $p:ident => $body:expr) => {
        match $instance {
            $crate::harness::Instance::Counter($p) => $body,
            $crate::harness::Instance::Tree($p) => $body,
            $crate::harness::Instance::Travel($p) => $body,
        }
    };
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CounterParams {
    k: u32,
    goal: Option<u64>,
    heuristic: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeParams {
    #[serde(default = "two")]
    x: u8,
    #[serde(default = "two")]
    y: u8,
    c_high: u64,
    c_low: u64,
    depth: Option<u32>,
    normalized_cost: Option<String>,
    mix: Option<String>,
    #[serde(default = "one")]
    count: usize,
    max_depth: Option<u32>,
}

fn two() -> u8 {
    2
}

fn one() -> usize {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RendezvousParams {
    #[serde(default = "one")]
    k: usize,
    #[serde(default)]
    adjacent: bool,
    #[serde(default = "diagonal")]
    diagonal_cost: u64,
    #[serde(default = "exterior")]
    exterior_cost: u64,
}

fn diagonal() -> u64 {
    RENDEZVOUS_DIAGONAL_COST
}

fn exterior() -> u64 {
    RENDEZVOUS_EXTERIOR_COST
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SwapParams {
    n: usize,
    #[serde(default = "one")]
    per_end: usize,
    #[serde(default = "fly")]
    fly_cost: u64,
}

fn fly() -> u64 {
    DEFAULT_FLY_COST
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FerryParams {
    n: usize,
    #[serde(default = "one")]
    stranded: usize,
    #[serde(default)]
    idle: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ExperimentConfig, ConfigError> {
        ExperimentConfig::from_json(text)
    }

    #[test]
    fn minimal_counter_config() {
        let c = parse(r#"{"domain":"counter","domain_params":{"k":4,"goal":14},"evaluator":{"evaluator":"size"},"budget":{"prove":true}}"#).unwrap();
        assert!(matches!(c.instance().unwrap(), Instance::Counter(ref i) if i.goal == 14));
        assert_eq!(c.evaluator.build().unwrap().label(), "size");
    }

    #[test]
    fn offending_keys_are_named() {
        let bad_eval = parse(r#"{"domain":"counter","domain_params":{"k":4},"evaluator":{"evaluator":"depth"},"budget":{"prove":true}}"#);
        assert_eq!(bad_eval.unwrap_err().key(), Some("evaluator.evaluator"));
        let bad_domain = parse(r#"{"domain":"maze","evaluator":{"evaluator":"cost"},"budget":{"prove":true}}"#);
        assert_eq!(bad_domain.unwrap_err().key(), Some("domain"));
        let bad_param = parse(r#"{"domain":"counter","domain_params":{"k":1},"evaluator":{"evaluator":"cost"},"budget":{"prove":true}}"#);
        assert_eq!(bad_param.unwrap_err().key(), Some("domain_params.k"));
        let unknown = parse(r#"{"domain":"swap","domain_params":{"n":2,"colour":1},"evaluator":{"evaluator":"cost"},"budget":{"prove":true}}"#);
        assert_eq!(unknown.unwrap_err().key(), Some("domain_params.colour"));
        let unbounded = parse(r#"{"domain":"swap","domain_params":{"n":2},"evaluator":{"evaluator":"cost"}}"#);
        assert_eq!(unbounded.unwrap_err().key(), Some("budget"));
        assert!(matches!(parse("{"), Err(ConfigError::Syntax(_))));
    }

    #[test]
    fn dual_and_tiebreak() {
        let c = parse(r#"{"domain":"swap","domain_params":{"n":2},"evaluator":{"evaluator":"size-cs","weight":"2","dual":"cost*5","tiebreak":"fifo","delayed":true},"budget":{"max_expansions":10}}"#).unwrap();
        assert_eq!(c.evaluator.build().unwrap().label(), "size-cs*2+cost*5 delayed tb=fifo");
    }

    #[test]
    fn goal_lists_expand() {
        let c = parse(r#"{"domain":"counter","domain_params":{"k":3,"goals":"all"},"evaluator":{"evaluator":"cost"},"budget":{"prove":true}}"#).unwrap();
        let runs = c.expand().unwrap();
        assert_eq!(runs.len(), 8);
        assert_eq!(runs[5].domain_params["goal"], Value::from(5));
        assert_ne!(runs[0].hash(), runs[1].hash());
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = parse(r#"{"domain":"swap","domain_params":{"n":2},"evaluator":{"evaluator":"cost"},"budget":{"prove":true},"seed":1}"#).unwrap();
        let b = parse(r#"{"seed":1,"budget":{"prove":true},"evaluator":{"evaluator":"cost"},"domain_params":{"n":2},"domain":"swap"}"#).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 16);
        let mut c = a.clone();
        c.seed = 2;
        assert_ne!(a.hash(), c.hash());
    }
}
