use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

pub const SCHEMA: &str = "syzlab-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Output of one command. Everything except `timings` is a function of the inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    /// Raised conditions such as prime disagreement, resampling or unmet hypotheses.
    pub flags: Vec<String>,
    pub timings: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            schema: SCHEMA.into(),
            command: command.into(),
            inputs,
            results: Value::Object(Default::default()),
            checks: Vec::new(),
            flags: Vec::new(),
            timings: BTreeMap::new(),
            children: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        if let Value::Object(m) = &mut self.results {
            m.insert(key.into(), v);
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn flag(&mut self, flag: impl Into<String>) {
        let flag = flag.into();
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
    }

    pub fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.timings.entry(label.into()).or_default() += start.elapsed().as_secs_f64();
        out
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
            && self.flags.is_empty()
            && self.children.iter().all(Report::ok)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Copy with timings removed, for comparing reruns.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        r.timings.clear();
        r.children = r.children.iter().map(Report::without_timings).collect();
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.command);
        if let Some(table) = self.results.get("table_ascii").and_then(Value::as_str) {
            out.push_str(table);
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        for f in &self.flags {
            let _ = writeln!(out, "[flag] {f}");
        }
        for child in &self.children {
            out.push_str(&child.summary());
        }
        out
    }
}
