use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Info,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Tsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "human" => Ok(Format::Human),
            "tsv" => Ok(Format::Tsv),
            other => Err(format!("unknown format `{other}` (expected human or tsv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub status: Status,
    pub label: String,
    pub detail: String,
}

/// Result lines of one command plus its echo. Exit code is 0 iff no line
/// failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub lines: Vec<Line>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), lines: Vec::new() }
    }

    pub fn push(&mut self, status: Status, label: impl Into<String>, detail: impl Into<String>) {
        self.lines.push(Line { status, label: label.into(), detail: detail.into() });
    }

    pub fn check(&mut self, ok: bool, label: impl Into<String>, detail: impl Into<String>) {
        self.push(if ok { Status::Pass } else { Status::Fail }, label, detail);
    }

    fn count(&self, status: Status) -> usize {
        self.lines.iter().filter(|l| l.status == status).count()
    }

    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(Status::Skip)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed() > 0)
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Human => {
                writeln!(out, "$ {}", self.command).unwrap();
                for l in &self.lines {
                    writeln!(out, "{} {}: {}", l.status.tag(), l.label, l.detail).unwrap();
                }
                writeln!(
                    out,
                    "summary: {} passed, {} failed, {} skipped",
                    self.passed(),
                    self.failed(),
                    self.skipped()
                )
                .unwrap();
            }
            Format::Tsv => {
                writeln!(out, "command\t{}", self.command).unwrap();
                for l in &self.lines {
                    writeln!(out, "{}\t{}\t{}", l.status.tag().to_lowercase(), l.label, l.detail).unwrap();
                }
                writeln!(out, "summary\t{}\t{}\t{}", self.passed(), self.failed(), self.skipped()).unwrap();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_failures() {
        let mut r = Report::new("qgk test");
        r.push(Status::Info, "a", "x");
        r.check(true, "b", "y");
        assert_eq!(r.exit_code(), 0);
        r.check(false, "c", "z");
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.render(Format::Tsv).lines().last(), Some("summary\t1\t1\t0"));
        assert!(r.render(Format::Human).contains("FAIL c: z\n"));
    }
}
