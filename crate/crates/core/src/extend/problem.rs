use super::{ExtensionProblem, LocalRep};
use crate::cli::expr::{parse_point, parse_poly};
use crate::corealg::{Point, Poly};
use crate::error::{Error, Result};

fn at_line(e: Error, line: usize) -> Error {
    match e {
        Error::Syntax { column, message, .. } => Error::Syntax { line, column, message },
        Error::UnsupportedExponent { column, .. } => Error::UnsupportedExponent { line, column },
        other => other,
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column: 1,
        message: message.into(),
    }
}

#[derive(Default)]
struct RepDraft {
    point: Option<Point>,
    p: Option<Poly>,
    q: Option<Poly>,
    line: usize,
}

impl RepDraft {
    fn finish(self) -> Result<LocalRep> {
        let missing = |what: &str| syntax(self.line, format!("[rep] block is missing `{what}:`"));
        Ok(LocalRep {
            point: self.point.clone().ok_or_else(|| missing("point"))?,
            p: self.p.clone().ok_or_else(|| missing("p"))?,
            q: self.q.clone().ok_or_else(|| missing("q"))?,
        })
    }
}

/// Reads a problem file:
///
/// ```text
/// [variety]
/// x^2 + y^2 - 1
/// [rep]
/// point: x=1, y=0
/// p: x
/// q: 2 + y
/// [samples]
/// x=0, y=0
/// ```
///
/// `#` starts a comment; every `[rep]` block opens a new representative.
pub fn parse_problem(text: &str) -> Result<ExtensionProblem> {
    let mut section = "";
    let mut ideal = Vec::new();
    let mut reps = Vec::new();
    let mut samples = Vec::new();
    let mut draft: Option<RepDraft> = None;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if let Some(d) = draft.take() {
                reps.push(d.finish()?);
            }
            section = match name.trim() {
                "variety" => "variety",
                "samples" => "samples",
                "rep" => {
                    draft = Some(RepDraft {
                        line: n,
                        ..RepDraft::default()
                    });
                    "rep"
                }
                other => return Err(syntax(n, format!("unknown section [{other}]"))),
            };
            continue;
        }
        match section {
            "variety" => ideal.push(parse_poly(line).map_err(|e| at_line(e, n))?),
            "samples" => samples.push(parse_point(line).map_err(|e| at_line(e, n))?),
            "rep" => {
                let d = draft.as_mut().expect("open rep block");
                let (key, value) = line
                    .split_once(':')
                    .ok_or_else(|| syntax(n, "expected `point:`, `p:` or `q:`"))?;
                match key.trim() {
                    "point" => d.point = Some(parse_point(value).map_err(|e| at_line(e, n))?),
                    "p" => d.p = Some(parse_poly(value).map_err(|e| at_line(e, n))?),
                    "q" => d.q = Some(parse_poly(value).map_err(|e| at_line(e, n))?),
                    other => return Err(syntax(n, format!("unknown key `{other}`"))),
                }
            }
            _ => return Err(syntax(n, "content before the first section")),
        }
    }
    if let Some(d) = draft.take() {
        reps.push(d.finish()?);
    }
    ExtensionProblem::new(ideal, reps, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::test_support::p;

    #[test]
    fn circle_problem_file() {
        let text = "# circle\n[variety]\nx^2 + y^2 - 1\n\n[rep]\npoint: x=1, y=0\np: x\nq: 2 + y\n[samples]\nx=0, y=0\nx=1, y=1 # off the circle\n";
        let problem = parse_problem(text).unwrap();
        assert_eq!(problem.ideal(), &[p("x^2 + y^2 - 1")]);
        assert_eq!(problem.reps().len(), 1);
        assert_eq!(problem.reps()[0].q, p("2 + y"));
        assert_eq!(problem.samples().len(), 2);
    }

    #[test]
    fn errors_carry_the_line() {
        let err = parse_problem("[variety]\ny\n[rep]\npoint: x=0, y=0\np: x +\nq: 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 5, .. }), "{err:?}");
        let err = parse_problem("[rep]\npoint: x=0\np: x\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }), "{err:?}");
        assert!(parse_problem("x\n").is_err());
    }
}
