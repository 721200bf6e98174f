//! Named verdicts with witnesses.

use serde::Serialize;

use crate::parmet::ExtValue;
use crate::quantaloid::Arrow;

/// A typed witness component; the rendered text travels alongside it so that
/// reports can be printed without the structure they were computed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessValue {
    Arrow(Arrow),
    Object(usize),
    Point(usize),
    Points(Vec<usize>),
    Family(Vec<(Arrow, Arrow)>),
    Value(ExtValue),
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub role: String,
    pub text: String,
    #[serde(skip)]
    pub value: WitnessValue,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Witness {
    pub entries: Vec<WitnessEntry>,
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, role: &str, value: WitnessValue, text: impl Into<String>) -> Self {
        self.entries.push(WitnessEntry {
            role: role.to_string(),
            text: text.into(),
            value,
        });
        self
    }

    pub fn text(self, role: &str, text: impl Into<String>) -> Self {
        self.with(role, WitnessValue::Text, text)
    }

    pub fn get(&self, role: &str) -> Option<&WitnessValue> {
        self.entries.iter().find(|e| e.role == role).map(|e| &e.value)
    }

    pub fn arrow(&self, role: &str) -> Option<Arrow> {
        match self.get(role) {
            Some(WitnessValue::Arrow(a)) => Some(*a),
            _ => None,
        }
    }

    pub fn object(&self, role: &str) -> Option<usize> {
        match self.get(role) {
            Some(WitnessValue::Object(o)) => Some(*o),
            _ => None,
        }
    }

    pub fn point(&self, role: &str) -> Option<usize> {
        match self.get(role) {
            Some(WitnessValue::Point(p)) => Some(*p),
            _ => None,
        }
    }

    pub fn points(&self, role: &str) -> Option<&[usize]> {
        match self.get(role) {
            Some(WitnessValue::Points(p)) => Some(p),
            _ => None,
        }
    }

    pub fn value(&self, role: &str) -> Option<&ExtValue> {
        match self.get(role) {
            Some(WitnessValue::Value(v)) => Some(v),
            _ => None,
        }
    }

    pub fn family(&self, role: &str) -> Option<&[(Arrow, Arrow)]> {
        match self.get(role) {
            Some(WitnessValue::Family(f)) => Some(f),
            _ => None,
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={}", e.role, e.text)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Ordered verdicts plus free-form facts. Every failed check carries a witness.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub info: Vec<(String, String)>,
}

impl PropertyReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check; `None` means it passed.
    pub fn record(&mut self, name: &str, violation: Option<Witness>) {
        self.checks.push(Check {
            name: name.to_string(),
            ok: violation.is_none(),
            witness: violation,
        });
    }

    pub fn pass(&mut self, name: &str) {
        self.record(name, None);
    }

    pub fn fail(&mut self, name: &str, witness: Witness) {
        self.record(name, Some(witness));
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.info.push((key.to_string(), value.into()));
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.ok)
    }

    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .and_then(|c| c.witness.as_ref())
    }

    pub fn info(&self, key: &str) -> Option<&str> {
        self.info.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn extend(&mut self, prefix: &str, other: PropertyReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.info {
            self.info.push((format!("{prefix}{k}"), v));
        }
    }
}

impl std::fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            write!(f, "{:<40} {}", c.name, if c.ok { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        for (k, v) in &self.info {
            writeln!(f, "{k:<40} {v}")?;
        }
        Ok(())
    }
}
