//! Problem files.
//!
//! ```toml
//! indices = ["x", "y"]
//! functions = ["u"]
//! parameters = []
//! equations = ["u[x+1,y] - u[x,y]", "u[x,y+1] - u[x,y]"]
//! targets = ["u[x+2,y+3]"]
//!
//! [ranking]
//! order = "degrevlex"
//! priority = "top"
//!
//! [options]
//! division = "janet-like"
//! ```

use std::path::Path;

use janetlike::{
    parse_linear, parse_linear_system, parse_system, DiffPoly, DivisionKind, Error, LinearPoly, MonomialOrder,
    Priority, QuotientRelation, Ranking, Ring, RingSignature, ShiftDirection,
};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub indices: Vec<String>,
    pub functions: Vec<String>,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub ranking: RankingSpec,
    #[serde(default)]
    pub options: OptionsSpec,
    #[serde(default)]
    pub equations: Vec<String>,
    /// Polynomials to reduce.
    #[serde(default)]
    pub targets: Vec<String>,
    /// Right-hand-side tags, one per equation, for `compcond`.
    #[serde(default)]
    pub rhs: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    /// Operator texts for `shift2pol`.
    #[serde(default)]
    pub operators: Vec<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankingSpec {
    pub order: Option<String>,
    pub priority: Option<String>,
    /// Function names, highest first.
    pub function_order: Option<Vec<String>>,
    /// Index names, highest first.
    pub index_order: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    pub division: Option<String>,
    pub criteria: Option<bool>,
    pub direction: Option<String>,
    pub normalize_shifts: Option<bool>,
}

/// Settings after command-line overrides are applied.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub division: Option<DivisionKind>,
    pub order: Option<MonomialOrder>,
    pub priority: Option<Priority>,
    pub criteria: Option<bool>,
    pub normalize_shifts: bool,
}

#[derive(Debug, Clone)]
pub struct Session {
    pub ring: Ring,
    pub division: DivisionKind,
    pub criteria: bool,
    pub normalize_shifts: bool,
}

impl ProblemFile {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Problem(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Problem(m) => CliError::Problem(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn session(&self, over: &Overrides) -> Result<Session, CliError> {
        let direction = match self.options.direction.as_deref() {
            None | Some("forward") => ShiftDirection::Forward,
            Some("backward") => ShiftDirection::Backward,
            Some(other) => {
                return Err(Error::InvalidOption(format!("unknown direction '{other}' (expected forward or backward)")).into())
            }
        };
        let sig = RingSignature::new(&self.indices, &self.functions, &self.parameters)?.with_direction(direction);
        let order = match (over.order, &self.ranking.order) {
            (Some(o), _) => o,
            (None, Some(s)) => s.parse()?,
            (None, None) => MonomialOrder::default(),
        };
        let priority = match (over.priority, &self.ranking.priority) {
            (Some(p), _) => p,
            (None, Some(s)) => s.parse()?,
            (None, None) => Priority::default(),
        };
        let function_order = positions(self.ranking.function_order.as_deref(), sig.function_names(), "function")?;
        let index_order = positions(self.ranking.index_order.as_deref(), sig.index_names(), "index")?;
        let ranking = Ranking::with_orders(order, priority, function_order, index_order)?;
        let division = match (over.division, &self.options.division) {
            (Some(d), _) => d,
            (None, Some(s)) => s.parse()?,
            (None, None) => DivisionKind::default(),
        };
        Ok(Session {
            ring: Ring::new(sig, ranking)?,
            division,
            criteria: over.criteria.or(self.options.criteria).unwrap_or(true),
            normalize_shifts: over.normalize_shifts || self.options.normalize_shifts.unwrap_or(false),
        })
    }

    pub fn linear_equations(&self, s: &Session) -> Result<Vec<LinearPoly>, CliError> {
        Ok(parse_linear_system(&self.equations, &s.ring, s.normalize_shifts)?.0)
    }

    pub fn equations(&self, s: &Session) -> Result<Vec<DiffPoly>, CliError> {
        Ok(parse_system(&self.equations, &s.ring, s.normalize_shifts)?.polys)
    }

    pub fn targets(&self, s: &Session) -> Result<Vec<LinearPoly>, CliError> {
        self.targets.iter().map(|t| parse_linear(t, &s.ring).map_err(CliError::from)).collect()
    }

    pub fn quotient_relations(&self, extra: &[String], ring: &Ring) -> Result<Vec<QuotientRelation>, CliError> {
        self.relations
            .iter()
            .chain(extra)
            .map(|r| QuotientRelation::parse(r, ring).map_err(CliError::from))
            .collect()
    }
}

fn positions(names: Option<&[String]>, declared: &[String], what: &str) -> Result<Vec<usize>, CliError> {
    let Some(names) = names else {
        return Ok((0..declared.len()).collect());
    };
    names
        .iter()
        .map(|n| {
            declared
                .iter()
                .position(|d| d == n)
                .ok_or_else(|| Error::InvalidOption(format!("unknown {what} '{n}' in ranking")).into())
        })
        .collect()
}

/// Relations from a file: one per line, `#` starts a comment.
pub fn read_relations_file(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}
