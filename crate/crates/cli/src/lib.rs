//! Command-line surface for `twistor-core`: FormDocument parsing,
//! verification suites, and the `apply`/`check` commands.

pub mod document;
pub mod error;
pub mod report;
pub mod suites;

use serde::Serialize;
use twistor_core::correspondence::{a_operator, theorem_verdict};

pub use document::{parse_form, serialize_chart_form, serialize_form, FormDocument, ParsedForm};
pub use error::CliError;
pub use report::{Record, Report};
pub use suites::{run_suite, SuiteParams, SUITES};

/// Parses `"1,3"` (or `"1 3"`, or `""` for the empty chart).
pub fn parse_chart_list(text: &str) -> Result<Vec<u8>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u8>().map_err(|_| CliError::Chart(format!("`{s}` is not an index"))))
        .collect()
}

/// `𝒜(f)` in the chart `base`, serialized with canonical term order.
pub fn apply_cmd(input: &str, base: &[u8]) -> Result<String, CliError> {
    let parsed = parse_form(input)?;
    let t = document::chart_for(parsed.form.n(), parsed.form.k(), base)?;
    let a = a_operator(&t, &parsed.form)?;
    Ok(serialize_chart_form(t.chart(), &a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub harmonic: bool,
    pub dbar_closed: bool,
}

/// Harmonicity of the input next to `∂̄`-closedness of `𝒜(f)`, in the
/// document's chart or `(1, …, k)`.
pub fn check_cmd(input: &str) -> Result<CheckRecord, CliError> {
    let parsed = parse_form(input)?;
    let t = parsed.twistor_chart()?;
    let v = theorem_verdict(&t, &parsed.form)?;
    Ok(CheckRecord { harmonic: v.harmonic, dbar_closed: v.dbar_closed })
}
