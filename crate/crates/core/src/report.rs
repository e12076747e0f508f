//! Verification reports: flat lists of claim records rendered as text or as
//! a key=value record stream.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// Informational record; does not affect the overall verdict.
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub degree: usize,
    pub status: Status,
    pub witness: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub seed: Option<u64>,
    records: Vec<Record>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            seed: None,
            records: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        degree: usize,
        status: Status,
        witness: impl Into<String>,
    ) {
        self.records.push(Record {
            id: id.into(),
            anchor: anchor.into(),
            degree,
            status,
            witness: witness.into(),
        });
    }

    pub fn check(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        degree: usize,
        ok: bool,
        witness: impl Into<String>,
    ) {
        self.push(id, anchor, degree, Status::from_bool(ok), witness);
    }

    pub fn info(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        degree: usize,
        witness: impl Into<String>,
    ) {
        self.push(id, anchor, degree, Status::Info, witness);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
        if self.seed.is_none() {
            self.seed = other.seed;
        }
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn find(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    fn sorted(&self) -> Vec<&Record> {
        let mut v: Vec<&Record> = self.records.iter().collect();
        v.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| a.witness.cmp(&b.witness)));
        v
    }

    pub fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Text => self.render_text(),
            Format::Records => self.render_records(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "== {}", self.title);
        if let Some(seed) = self.seed {
            let _ = write!(s, " (seed {})", seed);
        }
        s.push('\n');
        for r in self.sorted() {
            let _ = writeln!(
                s,
                "[{}] {} (D={}; {}): {}",
                r.status.as_str().to_uppercase(),
                r.id,
                r.degree,
                r.anchor,
                r.witness
            );
        }
        let fails = self.failures().count();
        let _ = writeln!(
            s,
            "{}: {} records, {} failed",
            if fails == 0 { "PASS" } else { "FAIL" },
            self.records.len(),
            fails
        );
        s
    }

    /// One `key=value` record per line; values with spaces or quotes are
    /// double-quoted with backslash escapes.
    pub fn render_records(&self) -> String {
        let mut s = String::new();
        let seed = self
            .seed
            .map(|x| x.to_string())
            .unwrap_or_else(|| "none".into());
        for r in self.sorted() {
            let _ = writeln!(
                s,
                "id={} anchor={} degree={} status={} seed={} witness={}",
                quote(&r.id),
                quote(&r.anchor),
                r.degree,
                r.status.as_str(),
                seed,
                quote(&r.witness)
            );
        }
        s
    }
}

fn quote(v: &str) -> String {
    if !v.is_empty()
        && v.chars()
            .all(|c| !c.is_whitespace() && c != '"' && c != '\\' && c != '=')
    {
        return v.to_string();
    }
    let mut out = String::with_capacity(v.len() + 2);
    out.push('"');
    for c in v.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_stream_sorted_and_quoted() {
        let mut r = Report::new("t").with_seed(7);
        r.check("b.two", "x", 1, true, "a b");
        r.check("a.one", "y", 2, false, "plain");
        let out = r.render_records();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines[0],
            "id=a.one anchor=y degree=2 status=fail seed=7 witness=plain"
        );
        assert_eq!(
            lines[1],
            "id=b.two anchor=x degree=1 status=pass seed=7 witness=\"a b\""
        );
        assert!(!r.passed());
    }
}
