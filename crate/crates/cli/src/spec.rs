//! Flat key = value domain specifications, from a file or from inline
//! command-line tokens, with line/column diagnostics.

use std::fmt;
use std::sync::Arc;
use videal::numsg::NumSemigroup;
use videal::quad::QuadOrder;
use videal::SearchBounds;

/// A constructed backend, ready to classify or evaluate against.
#[derive(Clone)]
pub enum Domain {
    Quad(QuadOrder),
    Sg(Arc<NumSemigroup>),
}

#[derive(Clone)]
pub struct DomainSpec {
    pub domain: Domain,
    pub bounds: SearchBounds,
}

#[derive(Debug, Clone)]
pub struct SpecParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for SpecParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for SpecParseError {}

fn err(line: usize, col: usize, message: impl Into<String>) -> SpecParseError {
    SpecParseError {
        line,
        col,
        message: message.into(),
    }
}

struct Assignment {
    key: String,
    value: String,
    line: usize,
    /// 1-based char column where the value starts.
    vcol: usize,
}

fn parse_int(a: &Assignment) -> Result<i64, SpecParseError> {
    a.value
        .replace('\u{2212}', "-")
        .parse::<i64>()
        .map_err(|_| err(a.line, a.vcol, format!("`{}` is not an integer", a.value)))
}

fn parse_uint(a: &Assignment) -> Result<u64, SpecParseError> {
    a.value.parse::<u64>().map_err(|_| {
        err(
            a.line,
            a.vcol,
            format!("`{}` is not a nonnegative integer", a.value),
        )
    })
}

fn parse_generators(a: &Assignment) -> Result<Vec<u64>, SpecParseError> {
    let gens: Result<Vec<u64>, _> = a
        .value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>())
        .collect();
    match gens {
        Ok(g) if !g.is_empty() => Ok(g),
        _ => Err(err(
            a.line,
            a.vcol,
            format!(
                "`{}` is not a comma-separated list of positive integers",
                a.value
            ),
        )),
    }
}

/// Parse the flat key = value format. Recognized keys: kind, d, f,
/// generators, bound, pair-height, ideal-bound, samples,
/// recheck-height, seed. `#` starts a comment.
pub fn parse_spec(text: &str) -> Result<DomainSpec, SpecParseError> {
    let mut assigns: Vec<Assignment> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line: String = raw.chars().take_while(|&c| c != '#').collect();
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            let col = line.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(err(line_no, col, "expected `key = value`"));
        };
        let key = line[..eq].trim().to_string();
        let value = line[eq + 1..].trim().to_string();
        if key.is_empty() {
            return Err(err(line_no, 1, "missing key before `=`"));
        }
        if value.is_empty() {
            return Err(err(
                line_no,
                line.chars().count() + 1,
                format!("missing value for `{}`", key),
            ));
        }
        // char column of the value inside the raw line
        let vcol = line[..eq + 1].chars().count()
            + line[eq + 1..]
                .chars()
                .take_while(|c| c.is_whitespace())
                .count()
            + 1;
        if let Some(prev) = assigns.iter().find(|a| a.key == key) {
            return Err(err(
                line_no,
                1,
                format!("duplicate key `{}` (first set on line {})", key, prev.line),
            ));
        }
        assigns.push(Assignment {
            key,
            value,
            line: line_no,
            vcol,
        });
    }

    let find = |k: &str| assigns.iter().find(|a| a.key == k);
    for a in &assigns {
        match a.key.as_str() {
            "kind" | "d" | "f" | "generators" | "bound" | "pair-height" | "ideal-bound"
            | "samples" | "recheck-height" | "seed" => {}
            other => return Err(err(a.line, 1, format!("unknown key `{}`", other))),
        }
    }

    let kind = find("kind")
        .ok_or_else(|| err(1, 1, "missing `kind` (quadratic or numerical-semigroup)"))?;
    let domain = match kind.value.as_str() {
        "quadratic" => {
            if let Some(g) = find("generators") {
                return Err(err(
                    g.line,
                    1,
                    "`generators` applies only to numerical semigroups",
                ));
            }
            let d_assign = find("d").ok_or_else(|| {
                err(
                    kind.line,
                    kind.vcol,
                    "quadratic orders need `d = <squarefree integer>`",
                )
            })?;
            let d = parse_int(d_assign)?;
            let f = match find("f") {
                Some(a) => parse_int(a)?,
                None => 1,
            };
            let order = QuadOrder::new(d, f)
                .map_err(|e| err(d_assign.line, d_assign.vcol, e.to_string()))?;
            Domain::Quad(order)
        }
        "numerical-semigroup" | "semigroup" => {
            for k in ["d", "f"] {
                if let Some(a) = find(k) {
                    return Err(err(
                        a.line,
                        1,
                        format!("`{}` applies only to quadratic orders", k),
                    ));
                }
            }
            let g_assign = find("generators").ok_or_else(|| {
                err(
                    kind.line,
                    kind.vcol,
                    "numerical semigroups need `generators = a, b, ...`",
                )
            })?;
            let gens = parse_generators(g_assign)?;
            let sg = NumSemigroup::new(&gens)
                .map_err(|e| err(g_assign.line, g_assign.vcol, e.to_string()))?;
            Domain::Sg(sg)
        }
        other => {
            return Err(err(
                kind.line,
                kind.vcol,
                format!(
                    "unknown kind `{}` (expected quadratic or numerical-semigroup)",
                    other
                ),
            ))
        }
    };

    let mut bounds = SearchBounds::default();
    if let Some(a) = find("bound") {
        let v = parse_uint(a)? as u32;
        bounds.pair_height = v;
        bounds.ideal_bound = v;
    }
    if let Some(a) = find("pair-height") {
        bounds.pair_height = parse_uint(a)? as u32;
    }
    if let Some(a) = find("ideal-bound") {
        bounds.ideal_bound = parse_uint(a)? as u32;
    }
    if let Some(a) = find("samples") {
        bounds.samples = parse_uint(a)? as u32;
    }
    if let Some(a) = find("recheck-height") {
        bounds.recheck_height = parse_uint(a)? as u32;
    }
    if let Some(a) = find("seed") {
        bounds.seed = parse_uint(a)?;
    }

    Ok(DomainSpec { domain, bounds })
}

/// Inline spec tokens, e.g. `quadratic d=-3 f=2` or `semigroup 2,3`.
/// Each token becomes one line of the flat format, so diagnostics
/// report the token position as the line number.
pub fn parse_inline(tokens: &[String]) -> Result<DomainSpec, SpecParseError> {
    let mut lines: Vec<String> = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        let tok = tok.trim();
        match tok {
            "quadratic" => lines.push("kind = quadratic".into()),
            "semigroup" | "numerical-semigroup" => lines.push("kind = numerical-semigroup".into()),
            t if t.contains('=') => lines.push(t.to_string()),
            t if t
                .chars()
                .all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) =>
            {
                lines.push(format!("generators = {}", t))
            }
            t => {
                return Err(err(
                    i + 1,
                    1,
                    format!("unrecognized inline token `{}` (argument {})", t, i + 1),
                ))
            }
        }
    }
    parse_spec(&lines.join("\n"))
}
