use std::path::{Path, PathBuf};
use std::time::Instant;

use hopf_galois::galois::check_equivalence_theorem;
use serde::Serialize;

use crate::check::load;
use crate::error::CliError;
use crate::Caps;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteRow {
    pub file: String,
    pub strong: Option<bool>,
    pub galois: Option<bool>,
    pub agree: Option<bool>,
    /// Why the row has no verdicts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub millis: u128,
    #[serde(skip)]
    pub failed: bool,
}

fn descriptors(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn row(path: &Path, caps: &Caps) -> SuiteRow {
    let start = Instant::now();
    let file = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    let mut out = SuiteRow {
        file,
        strong: None,
        galois: None,
        agree: None,
        note: None,
        millis: 0,
        failed: false,
    };
    let outcome = load(path).and_then(|loaded| {
        let group = loaded.algebra.group();
        if !group.is_finite() {
            return Ok(None);
        }
        if group.order().is_none_or(|o| o > caps.max_group_order) {
            return Err(CliError::Cap(format!("group order exceeds {}", caps.max_group_order)));
        }
        Ok(Some(check_equivalence_theorem(&loaded.algebra)?))
    });
    match outcome {
        Ok(Some(eq)) => {
            out.strong = Some(eq.strong.strong);
            out.galois = Some(eq.galois.bijective);
            out.agree = Some(eq.agree);
            out.failed = !eq.agree;
        }
        Ok(None) => out.note = Some("infinite grading group: no verdict".into()),
        Err(e) => {
            out.note = Some(e.to_string());
            out.failed = true;
        }
    }
    out.millis = start.elapsed().as_millis();
    out
}

fn show(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

pub fn run(dir: &Path, report: Option<&Path>, caps: &Caps, verbose: bool) -> Result<bool, CliError> {
    let files = descriptors(dir)?;
    let rows: Vec<SuiteRow> = std::thread::scope(|s| {
        let handles: Vec<_> = files.iter().map(|f| s.spawn(|| row(f, caps))).collect();
        handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
    });
    println!("{:40} {:6} {:6} {:6} {:>8}", "file", "strong", "galois", "agree", "ms");
    for r in &rows {
        let flag = if r.failed { "  <-- FAILED" } else { "" };
        println!(
            "{:40} {:6} {:6} {:6} {:>8}{flag}",
            r.file,
            show(r.strong),
            show(r.galois),
            show(r.agree),
            r.millis
        );
        if let Some(note) = &r.note {
            if verbose || r.failed {
                println!("      {note}");
            }
        }
    }
    let ok = rows.iter().all(|r| !r.failed);
    println!("{} descriptors, {} failed", rows.len(), rows.iter().filter(|r| r.failed).count());
    if let Some(out) = report {
        let mut text = serde_json::to_string_pretty(&rows).expect("rows serialize");
        text.push('\n');
        std::fs::write(out, text).map_err(|e| CliError::Other(format!("{}: {e}", out.display())))?;
    }
    Ok(ok)
}
