//! The JSON envelope shared by every subcommand, and its plain and b-file
//! renderings.

use std::fmt::Display;

use cores_core::{AlgebraicEquation, CountSequence, RatFunc};
use serde::Serialize;

use crate::bfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Dp,
    Oracle,
    Gf,
    ClosedForm,
    Guess,
    Input,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GfOutput {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub expression: String,
}

impl From<&RatFunc> for GfOutput {
    fn from(f: &RatFunc) -> Self {
        Self {
            numerator: strings(f.numerator().coeffs()),
            denominator: strings(f.denominator().coeffs()),
            expression: f.to_expression(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationOutput {
    /// `grid[j][i]` is the coefficient of `x^i Y^j`.
    pub grid: Vec<Vec<String>>,
    pub expression: String,
}

impl From<&AlgebraicEquation> for EquationOutput {
    fn from(eq: &AlgebraicEquation) -> Self {
        Self { grid: eq.grid().iter().map(|row| strings(row)).collect(), expression: eq.to_expression() }
    }
}

/// Every key is always present; absent results serialize as `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputEnvelope {
    pub name: String,
    pub offset: i64,
    pub terms: Vec<String>,
    pub gf: Option<GfOutput>,
    pub equation: Option<EquationOutput>,
    pub provenance: Provenance,
    pub note: String,
}

impl OutputEnvelope {
    pub fn new(name: impl Into<String>, offset: i64, terms: Vec<String>, provenance: Provenance) -> Self {
        Self { name: name.into(), offset, terms, gf: None, equation: None, provenance, note: String::new() }
    }

    pub fn from_sequence(seq: &CountSequence, provenance: Provenance) -> Self {
        Self::new(seq.name.clone(), seq.offset, strings(&seq.terms), provenance)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }

    pub fn to_plain_terms(&self) -> String {
        self.terms.join(" ")
    }

    pub fn to_bfile(&self) -> String {
        let mut comments = vec![format!("{} ({})", self.name, provenance_name(self.provenance))];
        if !self.note.is_empty() {
            comments.push(self.note.clone());
        }
        if let Some(gf) = &self.gf {
            comments.push(format!("gf: {}", gf.expression));
        }
        if let Some(eq) = &self.equation {
            comments.push(format!("equation: {} = 0", eq.expression));
        }
        bfile::render(self.offset, &self.terms, &comments)
    }
}

pub fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::Dp => "dp",
        Provenance::Oracle => "oracle",
        Provenance::Gf => "gf",
        Provenance::ClosedForm => "closed-form",
        Provenance::Guess => "guess",
        Provenance::Input => "input",
    }
}

pub fn strings<T: Display>(values: &[T]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}
