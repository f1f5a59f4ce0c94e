//! The FormDocument file format: a Dolbeault form on `Cⁿ` as JSON.
//!
//! ```json
//! {"n": 2, "k": 1, "chart": [1],
//!  "terms": [{"coeff": "1/2+1/3*i", "xi": [0, 1], "xibar": [0, 0], "index": [1]}]}
//! ```
//!
//! A term is `coeff · ξ^xi ξ̄^xibar dξ̄^{index}`.

use serde::{Deserialize, Serialize};
use twistor_core::correspondence::{standard_chart, DolbeaultForm};
use twistor_core::forms::{ChartForm, FrameKind};
use twistor_core::grassmann::Chart;
use twistor_core::twistor::TwistorChart;
use twistor_core::GaussRat;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDocument {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<Vec<u8>>,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coeff: String,
    pub xi: Vec<u16>,
    pub xibar: Vec<u16>,
    pub index: Vec<u8>,
}

/// A parsed document: the form plus the chart it names, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedForm {
    pub form: DolbeaultForm,
    pub chart: Option<Vec<u8>>,
}

impl ParsedForm {
    /// The named chart, or `(1, …, k)`.
    pub fn twistor_chart(&self) -> Result<TwistorChart, CliError> {
        match &self.chart {
            Some(base) => chart_for(self.form.n(), self.form.k(), base),
            None => Ok(standard_chart(self.form.n(), self.form.k())?),
        }
    }
}

/// Checks a chart base against `(n, k)` and builds the chart.
pub fn chart_for(n: usize, k: usize, base: &[u8]) -> Result<TwistorChart, CliError> {
    if base.len() != k {
        return Err(CliError::ChartLength { got: base.len(), k });
    }
    if let Some(&bad) = base.iter().find(|&&i| i == 0 || i as usize > n) {
        return Err(CliError::IndexOutOfRange { term: None, index: bad, n });
    }
    if base.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Chart(format!("chart base {base:?} must be strictly increasing")));
    }
    Ok(TwistorChart::new(n, k, base)?)
}

pub fn parse_form(text: &str) -> Result<ParsedForm, CliError> {
    let doc: FormDocument = serde_json::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))?;
    from_document(&doc)
}

pub fn from_document(doc: &FormDocument) -> Result<ParsedForm, CliError> {
    let (n, k) = (doc.n, doc.k);
    if n == 0 || n > 9 || k > n {
        return Err(CliError::Shape { n, k });
    }
    let mut form = DolbeaultForm::new(n, k)?;
    for (t, term) in doc.terms.iter().enumerate() {
        let coeff: GaussRat = term
            .coeff
            .parse()
            .map_err(|_| CliError::Coefficient { term: t, text: term.coeff.clone() })?;
        for (field, v) in [("xi", &term.xi), ("xibar", &term.xibar)] {
            if v.len() != n {
                return Err(CliError::ExponentLength { term: t, field, got: v.len(), n });
            }
        }
        if term.index.len() != k {
            return Err(CliError::IndexLength { term: t, got: term.index.len(), k });
        }
        if let Some(&bad) = term.index.iter().find(|&&i| i == 0 || i as usize > n) {
            return Err(CliError::IndexOutOfRange { term: Some(t), index: bad, n });
        }
        let mut seen = term.index.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(CliError::RepeatedIndex { term: t });
        }
        form.monomial_term(coeff, &term.xi, &term.xibar, &term.index)?;
    }
    if let Some(base) = &doc.chart {
        chart_for(n, k, base)?;
    }
    Ok(ParsedForm { form, chart: doc.chart.clone() })
}

/// Canonical document: terms ordered by index, then by monomial.
pub fn to_document(form: &DolbeaultForm, chart: Option<&[u8]>) -> FormDocument {
    let n = form.n();
    let mut terms = Vec::new();
    for (index, poly) in form.coeffs() {
        for (mono, c) in poly.terms() {
            let xi = (0..n).map(|a| mono.0[2 * a]).collect();
            let xibar = (0..n).map(|a| mono.0[2 * a + 1]).collect();
            terms.push(TermRecord { coeff: c.to_string(), xi, xibar, index: index.clone() });
        }
    }
    FormDocument { n, k: form.k(), chart: chart.map(|c| c.to_vec()), terms }
}

pub fn serialize_form(form: &DolbeaultForm, chart: Option<&[u8]>) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(form, chart)).expect("document serializes");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartFormRecord {
    pub n: usize,
    pub k: usize,
    pub chart: Vec<u8>,
    pub twist: i32,
    pub frame: &'static str,
    pub terms: Vec<ChartTermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartTermRecord {
    pub form: Vec<String>,
    pub coeff: String,
}

/// Term list of a chart form in generator order, coefficients in chart variables.
pub fn chart_form_record(chart: &Chart, omega: &ChartForm) -> ChartFormRecord {
    let terms = omega
        .terms()
        .iter()
        .map(|(gens, c)| ChartTermRecord {
            form: gens.iter().map(|&g| chart.differential_name(g as usize)).collect(),
            coeff: c.fmt_with(chart.names()),
        })
        .collect();
    ChartFormRecord {
        n: chart.n(),
        k: chart.k(),
        chart: chart.base().to_vec(),
        twist: omega.twist(),
        frame: match omega.frame() {
            FrameKind::Adapted => "adapted",
            FrameKind::Holomorphic => "holomorphic",
        },
        terms,
    }
}

pub fn serialize_chart_form(chart: &Chart, omega: &ChartForm) -> String {
    let mut s = serde_json::to_string_pretty(&chart_form_record(chart, omega)).expect("record serializes");
    s.push('\n');
    s
}
