//! Text formats: quivers (`.tqa`), monomial modules (`.mod`) and radical
//! layerings (`.seq`). All three are line based, UTF-8, with `#` comments.
//!
//! ```text
//! # .tqa
//! name kronecker
//! L = 2
//! vertices 1 2
//! a: 1 -> 2
//! b: 1 -> 2
//!
//! # .mod: slot vertices, then relations `relation <slot>: <path>`
//! slots 1 1
//! relation 1: a
//! relation 2: b
//!
//! # .seq: L + 1 rows, one column per vertex
//! 1 0
//! 0 1
//! 0 0
//! ```
//!
//! Paths are written right-to-left, `b*a` being `a` followed by `b`, unless
//! [`PathOrder::LeftToRight`] is requested. `e(v)` is the trivial path at
//! `v`. Slots are numbered from 1.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::algebra::TruncatedAlgebra;
use crate::error::{Error, Result};
use crate::modules::{MonomialModule, SemisimpleSequence, SlotPath};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn fail<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse(ParseError {
        line,
        column,
        message: message.into(),
    }))
}

/// How the arrows of a written path are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathOrder {
    /// `b*a` means `a` first.
    #[default]
    RightToLeft,
    /// `a*b` means `a` first.
    LeftToRight,
}

/// A whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Content of each line with comments removed, as `(line number, text)`,
/// skipping blank lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        (!body.trim().is_empty()).then_some((k + 1, body))
    })
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: column_of(line, s),
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: column_of(line, s),
        });
    }
    out
}

/// Names of vertices and labels of arrows: letters, digits, `_`, `'`, `.`.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.'))
}

fn identifier(tok: Token<'_>, line: usize, what: &str) -> Result<String> {
    if !is_identifier(tok.text) {
        return fail(line, tok.column, format!("invalid {what} `{}`", tok.text));
    }
    Ok(tok.text.to_string())
}

fn integer(tok: Token<'_>, line: usize) -> Result<u64> {
    tok.text
        .parse::<u64>()
        .or_else(|_| fail(line, tok.column, format!("expected a nonnegative integer, found `{}`", tok.text)))
}

/// Parses a `.tqa` document. Vertices are indexed in declaration order and
/// may be declared after the arrows that use them.
pub fn parse_quiver(text: &str) -> Result<TruncatedAlgebra> {
    let mut name = None;
    let mut bound: Option<(u64, usize, usize)> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_index: HashMap<String, usize> = HashMap::new();
    let mut arrows: Vec<(String, Token<'_>, Token<'_>, usize)> = Vec::new();
    let mut labels: HashMap<String, usize> = HashMap::new();

    for (line_no, line) in content_lines(text) {
        let toks = tokens(line);
        let head = toks[0];
        let keyword = matches!(head.text, "name" | "L" | "vertices" | "vertex");
        if let (false, Some(colon)) = (keyword, line.find(':')) {
            let label_part = &line[..colon];
            let label_toks = tokens(label_part);
            let [label] = label_toks[..] else {
                return fail(line_no, head.column, "expected `label: source -> target`");
            };
            let label_name = identifier(label, line_no, "arrow label")?;
            let rest = &line[colon + 1..];
            let offset = colon + 1;
            let shifted: Vec<Token<'_>> = tokens(rest)
                .into_iter()
                .map(|t| Token {
                    text: t.text,
                    column: t.column + column_of(line, offset) - 1,
                })
                .collect();
            let [src, arrow, tgt] = shifted[..] else {
                return fail(line_no, column_of(line, offset), "expected `source -> target` after the label");
            };
            if arrow.text != "->" {
                return fail(line_no, arrow.column, format!("expected `->`, found `{}`", arrow.text));
            }
            if let Some(first) = labels.insert(label_name.clone(), line_no) {
                return fail(
                    line_no,
                    label.column,
                    format!("duplicate arrow label `{label_name}` (first declared on line {first})"),
                );
            }
            arrows.push((label_name, src, tgt, line_no));
            continue;
        }
        match head.text {
            "name" => {
                let rest = line[line.find("name").expect("head token") + 4..].trim();
                if rest.is_empty() {
                    return fail(line_no, head.column, "`name` needs a value");
                }
                name = Some(rest.to_string());
            }
            "L" => {
                let value = match toks.get(1..) {
                    Some([eq, v]) if eq.text == "=" => *v,
                    Some([v]) => *v,
                    _ => return fail(line_no, head.column, "expected `L = <bound>`"),
                };
                if let Some((_, first, _)) = bound {
                    return fail(line_no, head.column, format!("L declared twice (first on line {first})"));
                }
                bound = Some((integer(value, line_no)?, line_no, value.column));
            }
            "vertices" | "vertex" => {
                if toks.len() < 2 {
                    return fail(line_no, head.column, format!("`{}` needs at least one name", head.text));
                }
                if head.text == "vertex" && toks.len() > 2 {
                    return fail(line_no, toks[2].column, "`vertex` declares a single name; use `vertices`");
                }
                for tok in &toks[1..] {
                    let v = identifier(*tok, line_no, "vertex name")?;
                    if vertex_index.contains_key(&v) {
                        return fail(line_no, tok.column, format!("vertex `{v}` declared twice"));
                    }
                    vertex_index.insert(v.clone(), vertices.len());
                    vertices.push(v);
                }
            }
            other => return fail(line_no, head.column, format!("unknown declaration `{other}`")),
        }
    }

    let end = text.lines().count() + 1;
    let Some((bound, bound_line, bound_col)) = bound else {
        return fail(end, 1, "missing `L = <bound>` declaration");
    };
    if bound < 1 {
        return fail(bound_line, bound_col, "L must be at least 1");
    }
    if vertices.is_empty() {
        return fail(end, 1, "no vertices declared");
    }
    let mut resolved = Vec::with_capacity(arrows.len());
    for (label, src, tgt, line_no) in arrows {
        let mut ends = [0; 2];
        for (slot, tok) in ends.iter_mut().zip([src, tgt]) {
            *slot = *vertex_index
                .get(tok.text)
                .ok_or_else(|| perr(line_no, tok.column, format!("unknown vertex `{}`", tok.text)))?;
        }
        resolved.push((label, ends[0], ends[1]));
    }
    let quiver = Quiver::new(vertices, resolved)?;
    TruncatedAlgebra::new(name.unwrap_or_else(|| "quiver".to_string()), quiver, bound as usize)
}

fn perr(line: usize, column: usize, message: String) -> Error {
    Error::Parse(ParseError { line, column, message })
}

pub fn emit_quiver(alg: &TruncatedAlgebra) -> String {
    let q = alg.quiver();
    let mut out = String::new();
    let _ = writeln!(out, "name {}", alg.name());
    let _ = writeln!(out, "L = {}", alg.bound());
    let _ = writeln!(out, "vertices {}", q.vertex_names().join(" "));
    for a in q.arrows() {
        let _ = writeln!(
            out,
            "{}: {} -> {}",
            a.label,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        );
    }
    out
}

/// Parses a path such as `a9*a8*b7` or `e(8)`. `column` is the position of
/// `expr` in its line, for diagnostics.
fn parse_path_at(alg: &TruncatedAlgebra, expr: &str, order: PathOrder, line: usize, column: usize) -> Result<Path> {
    let q = alg.quiver();
    let expr_trim = expr.trim();
    let lead = expr.len() - expr.trim_start().len();
    let column = column + expr[..lead].chars().count();
    if let Some(inner) = expr_trim.strip_prefix("e(").and_then(|s| s.strip_suffix(')')) {
        let v = q
            .vertex_by_name(inner.trim())
            .ok_or_else(|| perr(line, column, format!("unknown vertex `{}`", inner.trim())))?;
        return Ok(Path::trivial(v));
    }
    let mut ids: Vec<(ArrowId, usize)> = Vec::new();
    let mut offset = 0;
    for part in expr_trim.split('*') {
        let label = part.trim();
        let col = column + expr_trim[..offset].chars().count() + (part.len() - part.trim_start().len());
        offset += part.len() + 1;
        if label.is_empty() {
            return fail(line, col, "empty arrow label in path");
        }
        let arrow = q
            .arrow_by_label(label)
            .ok_or_else(|| perr(line, col, format!("unknown arrow `{label}`")))?;
        ids.push((arrow.id, col));
    }
    if order == PathOrder::RightToLeft {
        ids.reverse();
    }
    let first = q.arrow(ids[0].0);
    let mut path = Path::trivial(first.source);
    for (id, col) in ids {
        path = match path.then(q, id) {
            Ok(p) => p,
            Err(Error::NotComposable(msg)) => return fail(line, col, msg),
            Err(e) => return Err(e),
        };
    }
    Ok(path)
}

pub fn parse_path(alg: &TruncatedAlgebra, expr: &str, order: PathOrder) -> Result<Path> {
    if expr.trim().is_empty() {
        return fail(1, 1, "empty path");
    }
    parse_path_at(alg, expr, order, 1, 1)
}

/// Parses a `.mod` document against `alg`.
pub fn parse_module(alg: &TruncatedAlgebra, text: &str, order: PathOrder) -> Result<MonomialModule> {
    let q = alg.quiver();
    let mut slots: Option<Vec<VertexId>> = None;
    let mut relations = Vec::new();
    for (line_no, line) in content_lines(text) {
        let toks = tokens(line);
        let head = toks[0];
        match head.text {
            "slots" => {
                if slots.is_some() {
                    return fail(line_no, head.column, "`slots` declared twice");
                }
                let mut vs = Vec::new();
                for tok in &toks[1..] {
                    let v = q
                        .vertex_by_name(tok.text)
                        .ok_or_else(|| perr(line_no, tok.column, format!("unknown vertex `{}`", tok.text)))?;
                    vs.push(v);
                }
                slots = Some(vs);
            }
            "relation" => {
                let Some(vs) = &slots else {
                    return fail(line_no, head.column, "`relation` before `slots`");
                };
                let Some(colon) = line.find(':') else {
                    return fail(line_no, head.column, "expected `relation <slot>: <path>`");
                };
                let head_end = line.find("relation").expect("head token") + "relation".len();
                let slot_toks = tokens(&line[head_end..colon]);
                let [slot_tok] = slot_toks[..] else {
                    return fail(line_no, head.column, "expected a single slot number before `:`");
                };
                let slot_col = slot_tok.column + column_of(line, head_end) - 1;
                let slot = integer(
                    Token {
                        text: slot_tok.text,
                        column: slot_col,
                    },
                    line_no,
                )? as usize;
                if slot == 0 || slot > vs.len() {
                    return fail(line_no, slot_col, format!("slot {slot} out of range 1..={}", vs.len()));
                }
                let expr = &line[colon + 1..];
                let lead = expr.len() - expr.trim_start().len();
                let expr_col = column_of(line, colon + 1 + lead);
                let path = parse_path_at(alg, expr.trim_start(), order, line_no, expr_col)?;
                if path.source() != vs[slot - 1] {
                    return fail(
                        line_no,
                        expr_col,
                        format!(
                            "path starts at vertex `{}` but slot {slot} is at vertex `{}`",
                            q.vertex_name(path.source()),
                            q.vertex_name(vs[slot - 1])
                        ),
                    );
                }
                if path.is_trivial() || path.len() > alg.bound() {
                    return fail(
                        line_no,
                        expr_col,
                        format!("relation length must lie in 1..={}", alg.bound()),
                    );
                }
                relations.push(SlotPath::new(slot - 1, path));
            }
            other => return fail(line_no, head.column, format!("unknown declaration `{other}`")),
        }
    }
    let Some(slots) = slots else {
        return fail(text.lines().count() + 1, 1, "missing `slots` declaration");
    };
    MonomialModule::new(alg, slots, relations)
}

pub fn emit_module(alg: &TruncatedAlgebra, m: &MonomialModule) -> String {
    let q = alg.quiver();
    let mut out = String::new();
    let names: Vec<&str> = m.slots().iter().map(|&v| q.vertex_name(v)).collect();
    let _ = writeln!(out, "slots {}", names.join(" "));
    for r in m.relations() {
        let _ = writeln!(out, "relation {}: {}", r.slot + 1, q.format_path(&r.path));
    }
    out
}

/// Parses a `.seq` document: `L + 1` rows of `n` nonnegative integers.
pub fn parse_sequence(alg: &TruncatedAlgebra, text: &str) -> Result<SemisimpleSequence> {
    let (layers, n) = (alg.bound() + 1, alg.vertex_count());
    let mut rows = Vec::new();
    for (line_no, line) in content_lines(text) {
        let toks = tokens(line);
        if rows.len() == layers {
            return fail(line_no, toks[0].column, format!("expected {layers} rows"));
        }
        if toks.len() != n {
            let column = toks.get(n).map_or(line.trim_end().chars().count() + 1, |t| t.column);
            return fail(line_no, column, format!("expected {n} entries, found {}", toks.len()));
        }
        rows.push(toks.iter().map(|&t| integer(t, line_no)).collect::<Result<Vec<u64>>>()?);
    }
    if rows.len() != layers {
        return fail(
            text.lines().count() + 1,
            1,
            format!("expected {layers} rows, found {}", rows.len()),
        );
    }
    SemisimpleSequence::from_rows(rows)
}

pub fn emit_sequence(s: &SemisimpleSequence) -> String {
    let mut out = String::new();
    for row in s.rows() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const KRONECKER: &str = "# two parallel arrows\nname kronecker\nL = 2\nvertices 1 2\na: 1 -> 2\nb: 1 -> 2 # second\n";

    fn position(e: Error) -> (usize, usize) {
        match e {
            Error::Parse(p) => (p.line, p.column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_and_round_trips_quiver() {
        let alg = parse_quiver(KRONECKER).unwrap();
        assert_eq!(alg.name(), "kronecker");
        assert_eq!(alg.bound(), 2);
        assert_eq!(alg.quiver().arrows().len(), 2);
        assert_eq!(parse_quiver(&emit_quiver(&alg)).unwrap(), alg);
    }

    #[test]
    fn quiver_errors_carry_positions() {
        assert_eq!(position(parse_quiver("L = 0\nvertices 1\n").unwrap_err()), (1, 5));
        assert_eq!(position(parse_quiver("L = 1\nvertices 1\na: 1 -> 9\n").unwrap_err()), (3, 9));
        assert_eq!(position(parse_quiver("L = 1\nvertices 1\na: 1 -> 1\na: 1 -> 1\n").unwrap_err()), (4, 1));
        assert_eq!(position(parse_quiver("L = 1\nvertices 1\na: 1 => 1\n").unwrap_err()), (3, 6));
        assert_eq!(position(parse_quiver("vertices 1\n").unwrap_err()), (2, 1));
        assert_eq!(position(parse_quiver("L = 1\nfoo\n").unwrap_err()), (2, 1));
    }

    #[test]
    fn paths_in_both_orders() {
        let alg = parse_quiver("L = 3\nvertices 1 2 3\na: 1 -> 2\nb: 2 -> 3\n").unwrap();
        let p = parse_path(&alg, "b*a", PathOrder::RightToLeft).unwrap();
        assert_eq!(p, parse_path(&alg, "a*b", PathOrder::LeftToRight).unwrap());
        assert_eq!(alg.quiver().format_path(&p), "b*a");
        assert_eq!(parse_path(&alg, "e(2)", PathOrder::RightToLeft).unwrap(), Path::trivial(VertexId(1)));
        assert_eq!(position(parse_path(&alg, "a*b", PathOrder::RightToLeft).unwrap_err()), (1, 1));
        assert_eq!(position(parse_path(&alg, "b * c", PathOrder::RightToLeft).unwrap_err()), (1, 5));
    }

    #[test]
    fn module_round_trip_and_errors() {
        let alg = parse_quiver(KRONECKER).unwrap();
        let m = parse_module(&alg, "slots 1 1\nrelation 1: a\nrelation 2: b\n", PathOrder::RightToLeft).unwrap();
        assert_eq!(m.slots(), &[VertexId(0), VertexId(0)]);
        assert_eq!(parse_module(&alg, &emit_module(&alg, &m), PathOrder::RightToLeft).unwrap(), m);
        let bad_slot = parse_module(&alg, "slots 1\nrelation 2: a\n", PathOrder::RightToLeft).unwrap_err();
        assert_eq!(position(bad_slot), (2, 10));
        let wrong_start = parse_module(&alg, "slots 2\nrelation 1: a\n", PathOrder::RightToLeft).unwrap_err();
        assert_eq!(position(wrong_start), (2, 13));
    }

    #[test]
    fn sequence_round_trip_and_shape() {
        let alg = parse_quiver(KRONECKER).unwrap();
        let s = parse_sequence(&alg, "1 0\n0 2 # layer one\n0 0\n").unwrap();
        assert_eq!(s.get(1, 1), 2);
        assert_eq!(parse_sequence(&alg, &emit_sequence(&s)).unwrap(), s);
        assert_eq!(position(parse_sequence(&alg, "1 0 0\n").unwrap_err()), (1, 5));
        assert_eq!(position(parse_sequence(&alg, "1 0\n").unwrap_err()), (2, 1));
        assert_eq!(position(parse_sequence(&alg, "1 x\n0 0\n0 0\n").unwrap_err()), (1, 3));
    }
}
