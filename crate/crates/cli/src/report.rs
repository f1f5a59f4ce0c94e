use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<Vec<u8>>,
    pub instance: String,
}

/// One checked identity instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub check: &'static str,
    pub params: Params,
    pub pass: bool,
    /// The statement being checked.
    pub reference: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// One JSON object per line, records in suite order, then a summary line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&serde_json::to_string(r).expect("record serializes"));
            s.push('\n');
        }
        let failed = self.failures().count();
        s.push_str(&format!(
            "{{\"summary\":{{\"checks\":{},\"passed\":{},\"failed\":{}}}}}\n",
            self.records.len(),
            self.records.len() - failed,
            failed
        ));
        s
    }
}
