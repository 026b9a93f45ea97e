//! Parsers for command-line values and small text formats.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use super::expr::{parse_point, parse_poly};
use crate::corealg::{Point, Poly, RadPoly, RadicalRing, Rational, Var};
use crate::error::{Error, Result};
use crate::limits::{Curve, Element, PositivityCertificate, Semantics};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn at_line(e: Error, line: usize) -> Error {
    match e {
        Error::Syntax { column, message, .. } => Error::Syntax { line, column, message },
        Error::UnsupportedExponent { column, .. } => Error::UnsupportedExponent { line, column },
        other => other,
    }
}

/// `x=t, y=2*t^3, z=0 @ (0,0,1)`; base coordinates follow the order of the
/// components. Without `@` the base point is the origin.
pub fn parse_curve(text: &str, semantics: Semantics) -> Result<Curve> {
    let (comps, base) = match text.split_once('@') {
        Some((c, b)) => (c, Some(b)),
        None => (text, None),
    };
    let mut components = BTreeMap::new();
    let mut order = Vec::new();
    for (k, part) in comps.split(',').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
        let (v, e) = part
            .split_once('=')
            .ok_or_else(|| syntax(1, k + 1, format!("expected `var=expr`, got `{part}`")))?;
        let v = Var::new(v.trim());
        if components.insert(v.clone(), parse_poly(e)?).is_some() {
            return Err(Error::BadCurve(format!("{v} is given twice")));
        }
        order.push(v);
    }
    if order.is_empty() {
        return Err(Error::BadCurve("no components".into()));
    }
    let mut point = Point::new();
    if let Some(b) = base {
        let b = b.trim();
        let inner = b.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(b);
        let values: Vec<&str> = inner.split(',').map(str::trim).collect();
        if values.len() != order.len() {
            return Err(Error::BadCurve(format!(
                "base point has {} coordinates for {} components",
                values.len(),
                order.len()
            )));
        }
        for (v, s) in order.iter().zip(values) {
            let c = parse_poly(s)?
                .as_constant()
                .ok_or_else(|| Error::BadCurve(format!("base coordinate `{s}` is not a number")))?;
            point.insert(v.clone(), c);
        }
    }
    Curve::new(components, point, semantics)
}

/// Ordered substitutions `x=0, y=1/2`.
pub fn parse_steps(text: &str) -> Result<Vec<(Var, Rational)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(k, part)| {
            let p = parse_point(part).map_err(|_| syntax(1, k + 1, format!("bad step `{part}`")))?;
            p.into_iter()
                .next()
                .ok_or_else(|| syntax(1, k + 1, format!("bad step `{part}`")))
        })
        .collect()
}

pub fn parse_coeffs(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(k, s)| {
            parse_poly(s)?
                .as_constant()
                .ok_or_else(|| syntax(1, k + 1, format!("`{s}` is not a number")))
        })
        .collect()
}

pub fn parse_vars(text: &str) -> Vec<Var> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Var::new)
        .collect()
}

/// Generators from a file (one per line, `#` comments) if `arg` names an
/// existing file, otherwise from the comma-separated list in `arg`.
pub fn parse_ideal_arg(arg: &str) -> Result<Vec<Poly>> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| syntax(0, 0, format!("cannot read {arg}: {e}")))?;
        return parse_ideal_file(&text);
    }
    arg.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_poly)
        .collect()
}

pub fn parse_ideal_file(text: &str) -> Result<Vec<Poly>> {
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if !line.is_empty() {
            gens.push(parse_poly(line).map_err(|e| at_line(e, i + 1))?);
        }
    }
    Ok(gens)
}

/// `p:digits`, e.g. `5:10`.
pub fn parse_padic_spec(text: &str) -> Result<(u64, u32)> {
    let bad = || Error::BadPadic(format!("expected `prime:precision`, got `{text}`"));
    let (p, n) = text.split_once(':').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    Ok((p, n))
}

fn element(text: &str, ring: Option<&Arc<RadicalRing>>) -> Result<Element> {
    let p = parse_poly(text)?;
    Ok(match ring {
        Some(r) => Element::Rad(RadPoly::from_poly(r, &p)),
        None => Element::Poly(p),
    })
}

/// Certificate file:
///
/// ```text
/// target: 2*(x1^2 + u*x1*x2 + u^2*x2^2) - (x1^2 + x2^2)
/// square: 1 : x1 + u*x2
/// side: u^2 - 1 : x2^2 : u^2 >= 1
/// ```
///
/// With a radical ring every expression is read in that ring.
pub fn parse_certificate(text: &str, ring: Option<&Arc<RadicalRing>>) -> Result<PositivityCertificate> {
    let mut target = None;
    let mut squares = Vec::new();
    let mut sides = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(n, 1, "expected `target:`, `square:` or `side:`"))?;
        let fields: Vec<&str> = rest.splitn(3, ':').map(str::trim).collect();
        match (key.trim(), fields.as_slice()) {
            ("target", [t]) => target = Some(element(t, ring).map_err(|e| at_line(e, n))?),
            ("square", [c, s]) => {
                let c = parse_poly(c)
                    .map_err(|e| at_line(e, n))?
                    .as_constant()
                    .ok_or_else(|| syntax(n, 1, "square coefficient must be a number"))?;
                squares.push((c, element(s, ring).map_err(|e| at_line(e, n))?));
            }
            ("side", [m, g, assumption]) => sides.push((
                element(m, ring).map_err(|e| at_line(e, n))?,
                element(g, ring).map_err(|e| at_line(e, n))?,
                assumption.to_string(),
            )),
            (k, _) => return Err(syntax(n, 1, format!("malformed `{k}` line"))),
        }
    }
    let target = target.ok_or_else(|| syntax(0, 0, "certificate has no `target:` line"))?;
    let mut cert = PositivityCertificate::new(target);
    for (c, s) in squares {
        cert = cert.square(c, s);
    }
    for (m, g, a) in sides {
        cert = cert.side(m, g, &a);
    }
    Ok(cert)
}
