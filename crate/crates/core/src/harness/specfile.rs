//! Line-oriented specification files.
//!
//! ```text
//! NAME: arbiter
//! INPUTS: r1 r2 a
//! OUTPUTS: g1 g2
//! GUARANTEE: G (r1 -> F g1)
//! ```
//!
//! `ASSUMPTION:` and `GUARANTEE:` may repeat; everything after `#` is a
//! comment.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::ltl::{parse_formula, Formula, Spec, SpecError};

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: SpecError },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecFile {
    pub path: Option<PathBuf>,
    pub name: Option<String>,
    pub spec: Spec,
}

fn syntax(line: usize, message: impl Into<String>) -> SpecFileError {
    SpecFileError::Syntax { line, message: message.into() }
}

pub fn parse_spec_file(text: &str) -> Result<SpecFile, SpecFileError> {
    let mut name = None;
    let mut inputs: Option<(usize, Vec<String>)> = None;
    let mut outputs: Option<(usize, Vec<String>)> = None;
    let mut assumptions: Vec<(usize, Formula)> = Vec::new();
    let mut guarantees: Vec<(usize, Formula)> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(syntax(line, format!("expected `KEY: value`, got `{content}`")));
        };
        let value = value.trim();
        let words = || value.split_whitespace().map(str::to_string).collect::<Vec<_>>();
        match key.trim() {
            "NAME" => {
                if name.replace(value.to_string()).is_some() {
                    return Err(syntax(line, "NAME given twice"));
                }
            }
            "INPUTS" => {
                if inputs.replace((line, words())).is_some() {
                    return Err(syntax(line, "INPUTS given twice"));
                }
            }
            "OUTPUTS" => {
                if outputs.replace((line, words())).is_some() {
                    return Err(syntax(line, "OUTPUTS given twice"));
                }
            }
            kind @ ("ASSUMPTION" | "GUARANTEE") => {
                let f = parse_formula(value).map_err(|e| syntax(line, e.to_string()))?;
                if kind == "ASSUMPTION" {
                    assumptions.push((line, f));
                } else {
                    guarantees.push((line, f));
                }
            }
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }

    let (in_line, inputs) = inputs.ok_or_else(|| syntax(last_line, "missing INPUTS"))?;
    let (out_line, outputs) = outputs.ok_or_else(|| syntax(last_line, "missing OUTPUTS"))?;
    if guarantees.is_empty() {
        return Err(SpecFileError::Invalid { line: last_line, source: SpecError::NoGuarantees });
    }
    // check the declarations alone first so errors point at the right line
    let header_line = in_line.max(out_line);
    let probe = Spec::new(inputs.clone(), outputs.clone(), Vec::new(), vec![Formula::tt()])
        .map_err(|source| SpecFileError::Invalid { line: header_line, source })?;
    for (line, f) in assumptions.iter().chain(&guarantees) {
        if let Some(atom) = f.atoms().into_iter().find(|a| !probe.is_variable(a)) {
            return Err(SpecFileError::Invalid { line: *line, source: SpecError::Undeclared(atom.to_string()) });
        }
    }
    let spec = Spec::new(
        inputs,
        outputs,
        assumptions.into_iter().map(|(_, f)| f).collect(),
        guarantees.into_iter().map(|(_, f)| f).collect(),
    )
    .map_err(|source| SpecFileError::Invalid { line: header_line, source })?;
    Ok(SpecFile { path: None, name, spec })
}

pub fn load_spec_file(path: &Path) -> Result<SpecFile, SpecFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpecFileError::Io { path: path.to_path_buf(), source })?;
    let mut file = parse_spec_file(&text)?;
    file.path = Some(path.to_path_buf());
    Ok(file)
}

pub fn render_spec_file(spec: &Spec, name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(name) = name {
        let _ = writeln!(out, "NAME: {name}");
    }
    let _ = writeln!(out, "INPUTS: {}", spec.inputs().join(" "));
    let _ = writeln!(out, "OUTPUTS: {}", spec.outputs().join(" "));
    for a in spec.assumptions() {
        let _ = writeln!(out, "ASSUMPTION: {a}");
    }
    for g in spec.guarantees() {
        let _ = writeln!(out, "GUARANTEE: {g}");
    }
    out
}

pub fn save_spec_file(path: &Path, spec: &Spec, name: Option<&str>) -> Result<(), SpecFileError> {
    std::fs::write(path, render_spec_file(spec, name)).map_err(|source| SpecFileError::Io { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ARBITER: &str = "\
# two clients, one shared resource
NAME: arbiter
INPUTS: r1 r2 a
OUTPUTS: g1 g2
GUARANTEE: G (r1 -> F g1)
GUARANTEE: G (r2 -> F g2)   # second client
GUARANTEE: G (!a -> (!g1 && !g2))
";

    #[test]
    fn arbiter_file() {
        let f = parse_spec_file(ARBITER).unwrap();
        assert_eq!(f.name.as_deref(), Some("arbiter"));
        assert_eq!(f.spec.inputs().len(), 3);
        assert_eq!(f.spec.outputs().len(), 2);
        assert!(f.spec.assumptions().is_empty());
        assert_eq!(f.spec.guarantees().len(), 3);
    }

    #[test]
    fn round_trip() {
        let f = parse_spec_file(ARBITER).unwrap();
        let again = parse_spec_file(&render_spec_file(&f.spec, f.name.as_deref())).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn errors_carry_lines() {
        let overlap = "INPUTS: a b\nOUTPUTS: b\nGUARANTEE: G b\n";
        assert!(matches!(
            parse_spec_file(overlap),
            Err(SpecFileError::Invalid { line: 2, source: SpecError::Overlap(_) })
        ));
        let no_guarantee = "INPUTS: a\nOUTPUTS: b\nASSUMPTION: G F a\n";
        assert!(matches!(
            parse_spec_file(no_guarantee),
            Err(SpecFileError::Invalid { source: SpecError::NoGuarantees, .. })
        ));
        let undeclared = "INPUTS: a\nOUTPUTS: b\n\nGUARANTEE: G c\n";
        assert!(matches!(parse_spec_file(undeclared), Err(SpecFileError::Invalid { line: 4, .. })));
        let bad = "INPUTS: a\nOUTPUTS: b\nGUARANTEE: G (a\n";
        assert!(matches!(parse_spec_file(bad), Err(SpecFileError::Syntax { line: 3, .. })));
        assert!(matches!(parse_spec_file("HELLO: x\n"), Err(SpecFileError::Syntax { line: 1, .. })));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(load_spec_file(Path::new("/nonexistent/x.spec")), Err(SpecFileError::Io { .. })));
    }
}
