use serde_json::{json, Value};

use crate::algebra::SymbolicCombo;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: String,
    pub before: SymbolicCombo,
    pub after: SymbolicCombo,
}

/// Ordered rule applications; each step starts where the previous one ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a step. Panics if `before` does not continue the chain.
    pub fn push(&mut self, rule: impl Into<String>, before: SymbolicCombo, after: SymbolicCombo) {
        if let Some(last) = self.steps.last() {
            assert_eq!(last.after, before, "trace steps must chain");
        }
        self.steps.push(TraceStep {
            rule: rule.into(),
            before,
            after,
        });
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_chained(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].after == w[1].before)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.steps
                .iter()
                .map(|s| {
                    json!({
                        "rule": s.rule,
                        "before": s.before.to_json(),
                        "after": s.after.to_json(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::ParseExpr {
            key: v.to_string(),
            reason: "expected array of {rule, before, after}".into(),
        };
        let mut out = Self::new();
        for step in v.as_array().ok_or_else(bad)? {
            let rule = step.get("rule").and_then(Value::as_str).ok_or_else(bad)?;
            let before = SymbolicCombo::from_json(step.get("before").ok_or_else(bad)?)?;
            let after = SymbolicCombo::from_json(step.get("after").ok_or_else(bad)?)?;
            out.steps.push(TraceStep {
                rule: rule.to_string(),
                before,
                after,
            });
        }
        if !out.is_chained() {
            return Err(bad());
        }
        Ok(out)
    }

    /// One line per step, symbols named through `name`.
    pub fn render_with(&self, name: &dyn Fn(&str) -> String) -> String {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                format!(
                    "{:>3}. {}: {}  =>  {}",
                    i + 1,
                    s.rule,
                    s.before.render_with(name),
                    s.after.render_with(name)
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}
