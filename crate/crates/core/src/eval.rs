//! Evaluation functions: the altitude a node is given on the open list.
//!
//! All values are exact rationals. Weights multiply the heuristic term only.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problem::{Cost, Heuristics, Problem};

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unknown evaluator `{0}` (expected cost, size, size-cs, hybrid or neg-cost)")]
    UnknownKind(String),
    #[error("unknown tie-break `{0}` (expected default, cost, size or fifo)")]
    UnknownTieBreak(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("weight must be at least 1, got {0}")]
    WeightBelowOne(Rational),
    #[error("hybrid mix must lie in [0, 1], got {0}")]
    MixOutOfRange(Rational),
    #[error("hybrid mix is only meaningful for the hybrid evaluator")]
    MixWithoutHybrid,
}

/// Parses `"5"`, `"3/2"` or `"1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational, EvalError> {
    let t = text.trim();
    let bad = || EvalError::BadRational(text.to_string());
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
            return Err(bad());
        }
        let den = 10i64.pow(frac.len() as u32);
        let num: i64 = frac.parse().map_err(|_| bad())?;
        let frac = Rational::new(num, den);
        let int = Rational::from_integer(int);
        return Ok(if negative { int - frac } else { int + frac });
    }
    Rational::from_str(t).map_err(|_| bad())
}

/// Which quantity the open list is ordered by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvalKind {
    /// `g_c + w·h_c`
    Cost,
    /// `g_s + w·h_s`
    Size,
    /// `g_s + w·ĥ_s`
    SizeCostSensitive,
    /// Normalized cost mixed with cost-sensitive size.
    Hybrid,
    /// `-(g_c + w·h_c)`
    NegatedCost,
}

impl EvalKind {
    pub fn key(self) -> &'static str {
        match self {
            EvalKind::Cost => "cost",
            EvalKind::Size => "size",
            EvalKind::SizeCostSensitive => "size-cs",
            EvalKind::Hybrid => "hybrid",
            EvalKind::NegatedCost => "neg-cost",
        }
    }
}

impl FromStr for EvalKind {
    type Err = EvalError;
    fn from_str(s: &str) -> Result<Self, EvalError> {
        Ok(match s.trim() {
            "cost" => EvalKind::Cost,
            "size" => EvalKind::Size,
            "size-cs" => EvalKind::SizeCostSensitive,
            "hybrid" => EvalKind::Hybrid,
            "neg-cost" => EvalKind::NegatedCost,
            other => return Err(EvalError::UnknownKind(other.to_string())),
        })
    }
}

impl fmt::Display for EvalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Secondary ordering among nodes with equal `f`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TieBreak {
    /// Lower heuristic term first, then newest first.
    #[default]
    Default,
    /// Lower `g_c + h_c` first, then newest first.
    CostSecondary,
    /// Lower `g_s + ĥ_s` first, then newest first.
    SizeSecondary,
    /// Lower heuristic term first, then oldest first.
    Fifo,
}

impl TieBreak {
    pub fn key(self) -> &'static str {
        match self {
            TieBreak::Default => "default",
            TieBreak::CostSecondary => "cost",
            TieBreak::SizeSecondary => "size",
            TieBreak::Fifo => "fifo",
        }
    }

    pub const ALL: [TieBreak; 4] = [
        TieBreak::Default,
        TieBreak::Fifo,
        TieBreak::CostSecondary,
        TieBreak::SizeSecondary,
    ];
}

impl FromStr for TieBreak {
    type Err = EvalError;
    fn from_str(s: &str) -> Result<Self, EvalError> {
        Ok(match s.trim() {
            "default" | "lifo" => TieBreak::Default,
            "cost" => TieBreak::CostSecondary,
            "size" => TieBreak::SizeSecondary,
            "fifo" => TieBreak::Fifo,
            other => return Err(EvalError::UnknownTieBreak(other.to_string())),
        })
    }
}

/// Accumulated cost and length of a path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PathCosts {
    pub g_cost: Cost,
    pub g_size: u64,
}

fn int(v: u64) -> Rational {
    Rational::from_integer(v as i64)
}

pub fn eval_cost(g: PathCosts, h: &Heuristics, weight: Rational) -> Rational {
    int(g.g_cost) + weight * int(h.h_c)
}

pub fn eval_size(g: PathCosts, h: &Heuristics, weight: Rational) -> Rational {
    int(g.g_size) + weight * int(h.h_s)
}

pub fn eval_size_cost_sensitive(g: PathCosts, h: &Heuristics, weight: Rational) -> Rational {
    int(g.g_size) + weight * int(h.h_s_hat)
}

/// `mix·(g_c + w·h_c)/c_max + (1 - mix)·(g_s + w·ĥ_s)`
pub fn eval_hybrid(
    g: PathCosts,
    h: &Heuristics,
    weight: Rational,
    mix: Rational,
    c_max: Cost,
) -> Rational {
    debug_assert!(c_max > 0);
    let cost = eval_cost(g, h, weight) / int(c_max);
    let size = eval_size_cost_sensitive(g, h, weight);
    mix * cost + (Rational::one() - mix) * size
}

pub fn eval_negated_cost(g: PathCosts, h: &Heuristics, weight: Rational) -> Rational {
    -eval_cost(g, h, weight)
}

/// The heuristic used for a node under delayed evaluation: its parent's,
/// or its own when it is the root.
pub fn delayed_heuristics<'a>(parent: Option<&'a Heuristics>, own: &'a Heuristics) -> &'a Heuristics {
    parent.unwrap_or(own)
}

/// Value of a node under an evaluator: `f` plus the heuristic part of `f`,
/// which the default tie-break consults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Score {
    pub f: Rational,
    pub h: Rational,
}

/// One evaluation function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Evaluator {
    pub kind: EvalKind,
    pub weight: Rational,
    /// Weight of the normalized-cost term; only set for [`EvalKind::Hybrid`].
    pub hybrid_mix: Option<Rational>,
}

impl Evaluator {
    pub fn new(kind: EvalKind) -> Self {
        Evaluator {
            kind,
            weight: Rational::one(),
            hybrid_mix: (kind == EvalKind::Hybrid).then(|| Rational::new(1, 2)),
        }
    }

    pub fn weighted(kind: EvalKind, weight: i64) -> Self {
        Evaluator {
            weight: Rational::from_integer(weight),
            ..Evaluator::new(kind)
        }
    }

    pub fn with_mix(mut self, mix: Rational) -> Self {
        self.hybrid_mix = Some(mix);
        self
    }

    pub fn validate(&self) -> Result<(), EvalError> {
        if self.weight < Rational::one() {
            return Err(EvalError::WeightBelowOne(self.weight));
        }
        match (self.kind, self.hybrid_mix) {
            (EvalKind::Hybrid, Some(m)) if m < Rational::zero() || m > Rational::one() => {
                Err(EvalError::MixOutOfRange(m))
            }
            (EvalKind::Hybrid, _) | (_, None) => Ok(()),
            (_, Some(_)) => Err(EvalError::MixWithoutHybrid),
        }
    }

    pub fn score(&self, g: PathCosts, h: &Heuristics, c_max: Cost) -> Score {
        let zero = PathCosts::default();
        let f = self.f(g, h, c_max);
        let h_term = self.f(zero, h, c_max);
        Score { f, h: h_term }
    }

    fn f(&self, g: PathCosts, h: &Heuristics, c_max: Cost) -> Rational {
        match self.kind {
            EvalKind::Cost => eval_cost(g, h, self.weight),
            EvalKind::Size => eval_size(g, h, self.weight),
            EvalKind::SizeCostSensitive => eval_size_cost_sensitive(g, h, self.weight),
            EvalKind::Hybrid => eval_hybrid(
                g,
                h,
                self.weight,
                self.hybrid_mix.unwrap_or_else(|| Rational::new(1, 2)),
                c_max,
            ),
            EvalKind::NegatedCost => eval_negated_cost(g, h, self.weight),
        }
    }
}

impl fmt::Display for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.weight.is_one() {
            write!(f, "*{}", self.weight)?;
        }
        if let (EvalKind::Hybrid, Some(m)) = (self.kind, self.hybrid_mix) {
            if m != Rational::new(1, 2) {
                write!(f, "@{m}")?;
            }
        }
        Ok(())
    }
}

/// Full ordering policy of a search: one or two open lists plus the
/// delayed-evaluation and tie-break switches shared by both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EvaluatorConfig {
    pub primary: Evaluator,
    /// When set, a second open list ordered by this evaluator is expanded
    /// in alternation with the first.
    pub secondary: Option<Evaluator>,
    pub delayed: bool,
    pub tie_break: TieBreak,
}

impl EvaluatorConfig {
    pub fn new(kind: EvalKind) -> Self {
        Self::from(Evaluator::new(kind))
    }

    pub fn weighted(kind: EvalKind, weight: i64) -> Self {
        Self::from(Evaluator::weighted(kind, weight))
    }

    pub fn dual(first: Evaluator, second: Evaluator) -> Self {
        EvaluatorConfig {
            secondary: Some(second),
            ..Self::from(first)
        }
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn with_delayed(mut self, delayed: bool) -> Self {
        self.delayed = delayed;
        self
    }

    pub fn dual_lists(&self) -> bool {
        self.secondary.is_some()
    }

    pub fn validate(&self) -> Result<(), EvalError> {
        self.primary.validate()?;
        if let Some(s) = &self.secondary {
            s.validate()?;
        }
        Ok(())
    }

    /// Compact label such as `cost*5`, `size-cs+cost delayed` or `hybrid tb=fifo`.
    pub fn label(&self) -> String {
        let mut out = self.primary.to_string();
        if let Some(s) = &self.secondary {
            out.push('+');
            out.push_str(&s.to_string());
        }
        if self.delayed {
            out.push_str(" delayed");
        }
        if self.tie_break != TieBreak::Default {
            out.push_str(" tb=");
            out.push_str(self.tie_break.key());
        }
        out
    }
}

impl From<Evaluator> for EvaluatorConfig {
    fn from(primary: Evaluator) -> Self {
        EvaluatorConfig {
            primary,
            secondary: None,
            delayed: false,
            tie_break: TieBreak::Default,
        }
    }
}

/// Which of two alternating open lists serves the given removal step.
pub fn dual_open_select(step: u64) -> usize {
    (step % 2) as usize
}

/// Least-to-greatest action cost ratio of an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epsilon {
    pub epsilon: Ratio<u64>,
    pub c_max: Cost,
    /// Each action type's cost divided by `c_max`.
    pub normalized: Vec<(String, Ratio<u64>)>,
}

pub fn epsilon_of<P: Problem + ?Sized>(problem: &P) -> Epsilon {
    let costs = problem.action_costs();
    let c_max = costs.iter().map(|&(_, c)| c).max().unwrap_or(1).max(1);
    let c_min = costs.iter().map(|&(_, c)| c).min().unwrap_or(c_max);
    Epsilon {
        epsilon: Ratio::new(c_min, c_max),
        c_max,
        normalized: costs
            .into_iter()
            .map(|(name, c)| (name, Ratio::new(c, c_max)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(h_c: u64, h_s: u64, h_s_hat: u64) -> Heuristics {
        Heuristics {
            h_c,
            h_s,
            h_s_hat,
            h_c_admissible: 0,
        }
    }

    fn g(g_cost: u64, g_size: u64) -> PathCosts {
        PathCosts { g_cost, g_size }
    }

    #[test]
    fn cost_and_size_values() {
        let one = Rational::one();
        assert_eq!(eval_cost(g(3, 0), &h(4, 0, 0), one), Rational::from(7));
        assert_eq!(
            eval_size(g(0, 2), &h(0, 3, 0), Rational::from(2)),
            Rational::from(8)
        );
        assert_eq!(eval_negated_cost(g(3, 1), &h(4, 0, 0), one), Rational::from(-7));
    }

    #[test]
    fn cost_sensitive_size_uses_cheapest_completion_length() {
        let bundle = h(0, 2, 4);
        let f = eval_size_cost_sensitive(g(9, 1), &bundle, Rational::one());
        assert_eq!(f, Rational::from(5));
        let at_goal = eval_size_cost_sensitive(g(9, 3), &Heuristics::ZERO, Rational::one());
        assert_eq!(at_goal, Rational::from(3));
    }

    #[test]
    fn hybrid_degenerate_mixes() {
        let bundle = h(30, 1, 2);
        let gc = g(10, 3);
        let w = Rational::one();
        assert_eq!(
            eval_hybrid(gc, &bundle, w, Rational::zero(), 10),
            eval_size_cost_sensitive(gc, &bundle, w)
        );
        assert_eq!(
            eval_hybrid(gc, &bundle, w, Rational::one(), 10),
            eval_cost(gc, &bundle, w) / Rational::from(10)
        );
        assert_eq!(
            eval_hybrid(gc, &bundle, w, Rational::new(1, 2), 10),
            Rational::new(4 + 5, 2)
        );
    }

    #[test]
    fn delayed_uses_parent_or_own_at_root() {
        let own = h(1, 1, 1);
        let parent = h(4, 2, 2);
        assert_eq!(delayed_heuristics(Some(&parent), &own), &parent);
        assert_eq!(delayed_heuristics(None, &own), &own);
    }

    #[test]
    fn score_splits_heuristic_term() {
        let e = Evaluator::weighted(EvalKind::Cost, 5);
        let s = e.score(g(10, 2), &h(3, 0, 0), 1);
        assert_eq!(s.f, Rational::from(25));
        assert_eq!(s.h, Rational::from(15));
    }

    #[test]
    fn dual_select_alternates() {
        let seq: Vec<_> = (0..4).map(dual_open_select).collect();
        assert_eq!(seq, vec![0, 1, 0, 1]);
    }

    #[test]
    fn validation() {
        let mut e = Evaluator::new(EvalKind::Cost);
        e.weight = Rational::new(1, 2);
        assert!(matches!(e.validate(), Err(EvalError::WeightBelowOne(_))));
        let e = Evaluator::new(EvalKind::Size).with_mix(Rational::new(1, 3));
        assert_eq!(e.validate(), Err(EvalError::MixWithoutHybrid));
        let e = Evaluator::new(EvalKind::Hybrid).with_mix(Rational::from(2));
        assert!(matches!(e.validate(), Err(EvalError::MixOutOfRange(_))));
        assert!(Evaluator::new(EvalKind::Hybrid).validate().is_ok());
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("5").unwrap(), Rational::from(5));
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational("1.25").unwrap(), Rational::new(5, 4));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn kinds_round_trip_through_keys() {
        for k in [
            EvalKind::Cost,
            EvalKind::Size,
            EvalKind::SizeCostSensitive,
            EvalKind::Hybrid,
            EvalKind::NegatedCost,
        ] {
            assert_eq!(k.key().parse::<EvalKind>().unwrap(), k);
        }
        assert!("astar".parse::<EvalKind>().is_err());
    }

    #[test]
    fn labels() {
        let c = EvaluatorConfig::dual(
            Evaluator::weighted(EvalKind::SizeCostSensitive, 2),
            Evaluator::new(EvalKind::Cost),
        )
        .with_delayed(true)
        .with_tie_break(TieBreak::Fifo);
        assert_eq!(c.label(), "size-cs*2+cost delayed tb=fifo");
    }
}
