//! Adapter for an external synthesis tool run as a subprocess.

use std::fmt::Write as _;
use std::io::{Read, Seek, SeekFrom, Write};
use std::process::{Command, Stdio};
use std::time::Duration;

use wait_timeout::ChildExt;

use super::{RealizabilityVerdict, UnknownReason};
use crate::ltl::Spec;

/// The spec in the textual synthesis format (Mealy semantics, environment
/// moves first).
pub fn render_tlsf(spec: &Spec) -> String {
    let mut out = String::new();
    out.push_str("INFO {\n  TITLE: \"specrepair\"\n  DESCRIPTION: \"generated\"\n  SEMANTICS: Mealy\n  TARGET: Mealy\n}\n\nMAIN {\n");
    let section = |out: &mut String, name: &str, items: Vec<String>| {
        if items.is_empty() {
            return;
        }
        let _ = writeln!(out, "  {name} {{");
        for item in items {
            let _ = writeln!(out, "    {item};");
        }
        out.push_str("  }\n");
    };
    section(&mut out, "INPUTS", spec.inputs().to_vec());
    section(&mut out, "OUTPUTS", spec.outputs().to_vec());
    section(&mut out, "ASSUMPTIONS", spec.assumptions().iter().map(ToString::to_string).collect());
    section(&mut out, "GUARANTEES", spec.guarantees().iter().map(ToString::to_string).collect());
    out.push_str("}\n");
    out
}

fn failure(msg: impl Into<String>) -> RealizabilityVerdict {
    RealizabilityVerdict::Unknown(UnknownReason::BackendFailure(msg.into()))
}

/// Verdict from tool output; `UNREALIZABLE` is checked before `REALIZABLE`
/// since it contains it.
pub(crate) fn parse_verdict(stdout: &str) -> Option<RealizabilityVerdict> {
    let upper = stdout.to_ascii_uppercase();
    if upper.contains("UNREALIZABLE") {
        Some(RealizabilityVerdict::Unrealizable)
    } else if upper.contains("REALIZABLE") {
        Some(RealizabilityVerdict::Realizable)
    } else {
        None
    }
}

/// Run `template` with `{formula}`, `{ins}`, `{outs}` and `{file}`
/// substituted. The template is split on whitespace; each placeholder
/// expands inside a single argument.
pub fn external_realizability(spec: &Spec, template: &str, timeout: Duration) -> RealizabilityVerdict {
    let mut spec_file = None;
    if template.contains("{file}") {
        let mut file = match tempfile::Builder::new().suffix(".tlsf").tempfile() {
            Ok(f) => f,
            Err(e) => return failure(format!("cannot create spec file: {e}")),
        };
        if let Err(e) = file.write_all(render_tlsf(spec).as_bytes()) {
            return failure(format!("cannot write spec file: {e}"));
        }
        spec_file = Some(file);
    }
    let formula = spec.implication().to_string();
    let ins = spec.inputs().join(",");
    let outs = spec.outputs().join(",");
    let path = spec_file.as_ref().map(|f| f.path().display().to_string()).unwrap_or_default();
    let args: Vec<String> = template
        .split_whitespace()
        .map(|tok| {
            tok.replace("{formula}", &formula)
                .replace("{ins}", &ins)
                .replace("{outs}", &outs)
                .replace("{file}", &path)
        })
        .collect();
    let Some((program, rest)) = args.split_first() else {
        return failure("empty command");
    };

    let mut stdout_file = match tempfile::tempfile() {
        Ok(f) => f,
        Err(e) => return failure(format!("cannot capture output: {e}")),
    };
    let stdout_handle = match stdout_file.try_clone() {
        Ok(f) => f,
        Err(e) => return failure(format!("cannot capture output: {e}")),
    };
    let mut child = match Command::new(program)
        .args(rest)
        .stdin(Stdio::null())
        .stdout(Stdio::from(stdout_handle))
        .stderr(Stdio::null())
        .spawn()
    {
        Ok(c) => c,
        Err(e) => return failure(format!("cannot run `{program}`: {e}")),
    };
    let status = match child.wait_timeout(timeout) {
        Ok(Some(status)) => status,
        Ok(None) => {
            let _ = child.kill();
            let _ = child.wait();
            return RealizabilityVerdict::Unknown(UnknownReason::Timeout);
        }
        Err(e) => {
            let _ = child.kill();
            let _ = child.wait();
            return failure(format!("waiting for `{program}` failed: {e}"));
        }
    };
    if !status.success() {
        return failure(format!("`{program}` exited with {status}"));
    }
    let mut stdout = String::new();
    if stdout_file.seek(SeekFrom::Start(0)).is_err() || stdout_file.read_to_string(&mut stdout).is_err() {
        return failure("unreadable output");
    }
    parse_verdict(&stdout).unwrap_or_else(|| failure("output has no verdict"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn arbiter() -> Spec {
        Spec::new(
            vec!["r1".into(), "r2".into(), "a".into()],
            vec!["g1".into(), "g2".into()],
            vec![parse_formula("G F a").unwrap()],
            vec![parse_formula("G (r1 -> F g1)").unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn verdict_tokens() {
        assert_eq!(parse_verdict("REALIZABLE\n"), Some(RealizabilityVerdict::Realizable));
        assert_eq!(parse_verdict("result: unrealizable"), Some(RealizabilityVerdict::Unrealizable));
        assert_eq!(parse_verdict("segfault"), None);
    }

    #[test]
    fn tlsf_sections() {
        let text = render_tlsf(&arbiter());
        assert!(text.contains("INPUTS {\n    r1;\n    r2;\n    a;\n  }"));
        assert!(text.contains("ASSUMPTIONS {\n    G (F (a));\n  }"));
    }

    #[test]
    fn missing_tool_is_unknown() {
        let v = external_realizability(&arbiter(), "/nonexistent/tool {formula}", Duration::from_secs(5));
        assert!(matches!(v, RealizabilityVerdict::Unknown(UnknownReason::BackendFailure(_))));
    }

    #[cfg(unix)]
    #[test]
    fn shell_tools() {
        let s = arbiter();
        let t = Duration::from_secs(5);
        assert_eq!(external_realizability(&s, "echo REALIZABLE {ins}", t), RealizabilityVerdict::Realizable);
        assert_eq!(external_realizability(&s, "echo UNREALIZABLE", t), RealizabilityVerdict::Unrealizable);
        assert!(!external_realizability(&s, "echo garbage {formula}", t).is_definite());
        assert_eq!(external_realizability(&s, "grep -c GUARANTEES {file}", t), failure("output has no verdict"));
        assert_eq!(
            external_realizability(&s, "sleep 5", Duration::from_secs(1)),
            RealizabilityVerdict::Unknown(UnknownReason::Timeout)
        );
        assert!(!external_realizability(&s, "false {formula}", t).is_definite());
    }
}
