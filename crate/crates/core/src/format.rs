//! The `ncg v1` profile text format and compact profile identifiers.
//!
//! ```text
//! ncg v1
//! n 3
//! alpha 5
//! buy 0 1
//! buy 2 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeSet;

use crate::error::{ParseError, ParseErrorKind};
use crate::game::{GameConfig, StrategyProfile};
use crate::rational::{self, parse_rational};

pub const HEADER: &str = "ncg v1";

pub fn parse_profile(text: &str) -> Result<(GameConfig, StrategyProfile), ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(ParseErrorKind::BadHeader, 1, 1, "empty input"))?;
    if header.trim() != HEADER {
        return Err(ParseError::new(
            ParseErrorKind::BadHeader,
            line_no,
            1,
            format!("expected `{HEADER}`"),
        ));
    }

    let (line_no, n_line) = lines.next().ok_or_else(|| {
        ParseError::new(ParseErrorKind::Malformed, line_no + 1, 1, "missing `n` line")
    })?;
    let n_field = keyword_value(line_no, n_line, "n")?;
    let n: usize = n_field
        .1
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            ParseError::new(
                ParseErrorKind::Malformed,
                line_no,
                n_field.0,
                "agent count must be a positive integer",
            )
        })?;

    let (line_no, alpha_line) = lines.next().ok_or_else(|| {
        ParseError::new(ParseErrorKind::Malformed, line_no + 1, 1, "missing `alpha` line")
    })?;
    let (col, alpha_text) = keyword_value(line_no, alpha_line, "alpha")?;
    let alpha = parse_rational(alpha_text)
        .filter(rational::is_positive)
        .ok_or_else(|| {
            ParseError::new(
                ParseErrorKind::BadRational,
                line_no,
                col,
                format!("`{alpha_text}` is not a positive rational"),
            )
        })?;
    let config = GameConfig::new(n, alpha).expect("validated above");

    let mut buys = vec![BTreeSet::new(); n];
    for (line_no, line) in lines {
        let tokens = tokenize(line);
        match tokens.as_slice() {
            [(_, "buy"), (cu, u), (cv, v)] => {
                let u = vertex(line_no, *cu, u, n)?;
                let v = vertex(line_no, *cv, v, n)?;
                if u == v {
                    return Err(ParseError::new(
                        ParseErrorKind::BadVertexIndex,
                        line_no,
                        *cv,
                        format!("agent {u} cannot buy a self-loop"),
                    ));
                }
                if !buys[u].insert(v) {
                    return Err(ParseError::new(
                        ParseErrorKind::DuplicateBuy,
                        line_no,
                        1,
                        format!("`buy {u} {v}` repeated"),
                    ));
                }
            }
            _ => {
                return Err(ParseError::new(
                    ParseErrorKind::Malformed,
                    line_no,
                    1,
                    "expected `buy <u> <v>`",
                ))
            }
        }
    }
    let profile = StrategyProfile::from_sets(buys).expect("validated above");
    Ok((config, profile))
}

pub fn serialize_profile(config: &GameConfig, profile: &StrategyProfile) -> String {
    let mut out = format!("{HEADER}\nn {}\nalpha {}\n", config.n(), config.alpha());
    for (u, v) in profile.purchases() {
        out.push_str(&format!("buy {u} {v}\n"));
    }
    out
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn keyword_value<'a>(
    line_no: usize,
    line: &'a str,
    keyword: &str,
) -> Result<(usize, &'a str), ParseError> {
    match tokenize(line).as_slice() {
        [(_, k), (col, v)] if *k == keyword => Ok((*col, v)),
        _ => Err(ParseError::new(
            ParseErrorKind::Malformed,
            line_no,
            1,
            format!("expected `{keyword} <value>`"),
        )),
    }
}

fn vertex(line_no: usize, col: usize, text: &str, n: usize) -> Result<usize, ParseError> {
    text.parse::<usize>().ok().filter(|&v| v < n).ok_or_else(|| {
        ParseError::new(
            ParseErrorKind::BadVertexIndex,
            line_no,
            col,
            format!("`{text}` is not an agent index below {n}"),
        )
    })
}

/// One character per unordered pair `(u, v)`, `u < v`, in lexicographic pair
/// order: `.` absent, `>` bought by `u`, `<` bought by `v`, `=` bought by both.
pub fn ownership_string(profile: &StrategyProfile) -> String {
    let n = profile.n();
    let mut s = String::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            s.push(match (profile.buys(u, v), profile.buys(v, u)) {
                (false, false) => '.',
                (true, false) => '>',
                (false, true) => '<',
                (true, true) => '=',
            });
        }
    }
    s
}

/// Inverse of [`ownership_string`]; `None` if the length is not a triangular
/// number or a character is unknown.
pub fn parse_ownership_string(s: &str) -> Option<StrategyProfile> {
    let k = s.chars().count();
    let n = (1..=64usize).find(|n| n * (n - 1) / 2 == k)?;
    let mut chars = s.chars();
    let mut purchases = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match chars.next()? {
                '.' => {}
                '>' => purchases.push((u, v)),
                '<' => purchases.push((v, u)),
                '=' => purchases.extend([(u, v), (v, u)]),
                _ => return None,
            }
        }
    }
    StrategyProfile::from_purchases(n, purchases).ok()
}

/// Space-separated `buyer>target` list, e.g. `0>1 2>1`.
pub fn purchase_list(profile: &StrategyProfile) -> String {
    profile
        .purchases()
        .map(|(u, v)| format!("{u}>{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn strategy_list(strategy: &BTreeSet<usize>) -> String {
    let items: Vec<String> = strategy.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(" "))
}
