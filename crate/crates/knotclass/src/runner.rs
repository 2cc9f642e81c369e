//! Batch processing: one report per input diagram, corpus directories
//! with expected-verdict sidecars, optional parallelism with
//! order-preserving output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::classify::classify_opts;
use crate::diagram::{parse_diagram, DiagramFormat};
use crate::handlebody;
use crate::report::DiagramReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Classify,
    Tunnels,
    Handlebody,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputKind {
    Json,
    Text,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: DiagramFormat,
    pub output: OutputKind,
    /// also search the reflection (default true)
    pub mirror: bool,
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            format: DiagramFormat::Pd,
            output: OutputKind::Text,
            mirror: true,
            jobs: 1,
        }
    }
}

/// Processes one diagram line.
pub fn process_line(cfg: &RunConfig, line: &str) -> DiagramReport {
    let d = match parse_diagram(line, cfg.format) {
        Ok(d) => d,
        Err(e) => return DiagramReport::for_error(Some(line), &e),
    };
    match cfg.command {
        Command::Validate => DiagramReport::for_validation(&d),
        Command::Classify | Command::Tunnels => {
            if d.vertex_id().is_some() {
                return DiagramReport::for_error(Some(line), &crate::error::Error::NotAKnot);
            }
            match classify_opts(&d, cfg.mirror) {
                Ok(cls) => DiagramReport::for_classification(
                    &d,
                    &cls,
                    matches!(cfg.command, Command::Tunnels),
                ),
                Err(e) => DiagramReport::for_error(Some(line), &e),
            }
        }
        Command::Handlebody => match handlebody::analyze(&d) {
            Ok(v) => DiagramReport::for_graph(&d, &v),
            Err(e) => DiagramReport::for_error(Some(line), &e),
        },
    }
}

/// Streams reports for named inputs in input order; parallel when
/// `cfg.jobs > 1`. Returns the reports and the process exit code.
pub fn run_inputs(cfg: &RunConfig, inputs: &[(String, String)]) -> (Vec<(String, DiagramReport)>, i32) {
    let reports: Vec<(String, DiagramReport)> = if cfg.jobs <= 1 {
        inputs
            .iter()
            .map(|(name, line)| (name.clone(), process_line(cfg, line)))
            .collect()
    } else {
        let mut slots: Vec<Option<(String, DiagramReport)>> = vec![None; inputs.len()];
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots_mutex = std::sync::Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for _ in 0..cfg.jobs.min(inputs.len()) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= inputs.len() {
                        break;
                    }
                    let (name, line) = &inputs[i];
                    let report = process_line(cfg, line);
                    slots_mutex.lock().unwrap()[i] = Some((name.clone(), report));
                });
            }
        });
        slots.into_iter().map(|s| s.expect("all slots filled")).collect()
    };
    let exit = if reports.iter().any(|(_, r)| r.error.is_some()) {
        1
    } else {
        0
    };
    (reports, exit)
}

/// Splits a file's content into diagram lines: one diagram per nonempty,
/// non-comment line.
pub fn diagram_lines(content: &str) -> Vec<String> {
    content
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_string())
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub file: String,
    pub verdict: Option<String>,
    pub error: Option<String>,
    pub expected: Option<String>,
    pub matches: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub schema: u32,
    pub entries: Vec<CorpusEntry>,
    pub counts: BTreeMap<String, usize>,
    pub mismatches: Vec<String>,
}

/// Short verdict token for sidecar comparison.
fn verdict_token(r: &DiagramReport) -> Option<String> {
    if r.error.is_some() {
        return None;
    }
    if let Some(h) = r.handlebody {
        return Some(if h { "handlebody" } else { "not-handlebody" }.into());
    }
    r.verdict.clone()
}

/// Runs every `.pd` and `.gauss` file in a directory (sorted by name),
/// comparing against `<file>.expected` sidecars when present.
pub fn corpus_run(cfg: &RunConfig, dir: &Path) -> std::io::Result<CorpusSummary> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            matches!(
                p.extension().and_then(|x| x.to_str()),
                Some("pd") | Some("gauss")
            )
        })
        .collect();
    files.sort();

    let mut inputs: Vec<(String, String, DiagramFormat)> = Vec::new();
    for path in &files {
        let content = std::fs::read_to_string(path)?;
        let format = match path.extension().and_then(|x| x.to_str()) {
            Some("gauss") => DiagramFormat::Gauss,
            _ => DiagramFormat::Pd,
        };
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or("?")
            .to_string();
        for (i, line) in diagram_lines(&content).into_iter().enumerate() {
            let label = if i == 0 {
                name.clone()
            } else {
                format!("{name}#{i}")
            };
            inputs.push((label, line, format));
        }
    }

    let mut entries = Vec::new();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut mismatches = Vec::new();
    for (label, line, format) in &inputs {
        let mut cfg2 = cfg.clone();
        cfg2.format = *format;
        // graph diagrams route to the handlebody test
        let has_vertex = line.contains("V(");
        if has_vertex {
            cfg2.command = Command::Handlebody;
        } else if matches!(cfg2.command, Command::Handlebody) {
            cfg2.command = Command::Classify;
        }
        let report = process_line(&cfg2, line);
        let verdict = verdict_token(&report);
        let key = verdict
            .clone()
            .unwrap_or_else(|| "error".to_string());
        *counts.entry(key).or_insert(0) += 1;

        // sidecar: <file stem incl. extension>.expected next to the file
        let base = label.split('#').next().unwrap_or(label);
        let expected_path = dir.join(format!("{base}.expected"));
        let expected = std::fs::read_to_string(&expected_path)
            .ok()
            .map(|s| s.trim().to_string());
        let matches = match (&verdict, &expected) {
            (Some(v), Some(e)) => Some(v == e),
            (None, Some(_)) => Some(false),
            _ => None,
        };
        if matches == Some(false) {
            mismatches.push(label.clone());
        }
        entries.push(CorpusEntry {
            file: label.clone(),
            verdict,
            error: report.error.clone(),
            expected,
            matches,
        });
    }
    Ok(CorpusSummary {
        schema: crate::report::SCHEMA_VERSION,
        entries,
        counts,
        mismatches,
    })
}

impl CorpusSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = match (&e.verdict, &e.error) {
                (Some(v), _) => v.clone(),
                (None, Some(err)) => format!("error: {err}"),
                _ => "?".into(),
            };
            let suffix = match e.matches {
                Some(true) => " [ok]",
                Some(false) => " [MISMATCH]",
                None => "",
            };
            out.push_str(&format!("{}: {}{}\n", e.file, status, suffix));
        }
        out.push_str("counts:");
        for (k, v) in &self.counts {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
        if !self.mismatches.is_empty() {
            out.push_str(&format!("mismatches: {}\n", self.mismatches.join(", ")));
        }
        out
    }
}
