//! Text formats for lattices (`.lat`) and tables (`.op`).
//!
//! Both formats are line oriented, UTF-8, with `#` starting a comment to end
//! of line and tokens separated by whitespace. Serialization is canonical:
//! parsing a serialized structure recovers it exactly, and serializing twice
//! yields identical bytes.
//!
//! Lattice file:
//! ```text
//! lattice <name>
//! elements <t1> <t2> ... <tn>
//! cover <x> <y>        # zero or more lines, x covered by y
//! end
//! ```
//!
//! Table file: header `op|imp|map <name> on <lattice-name>`, one
//! `row <x> : <values...>` line per element in `elements` order (one value
//! for `map`, n values otherwise), then `end`.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::MonotoneMap;
use crate::lattice::{Elem, Lattice};
use crate::ops::{BinaryOp, Implication};

/// A parsed `.op` file, discriminated by its leading keyword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableFile {
    Op(BinaryOp),
    Imp(Implication),
    Map(MonotoneMap),
}

/// One content line: (line number, tokens with their 1-based columns).
type Line = (usize, Vec<(String, usize)>);

fn content_lines(text: &str) -> Vec<Line> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut toks = Vec::new();
        let mut col = 0;
        for (j, ch) in body.char_indices() {
            if ch.is_whitespace() {
                col = 0;
            } else if col == 0 {
                col = j + 1;
                toks.push((String::new(), col));
            }
            if col != 0 {
                toks.last_mut().unwrap().0.push(ch);
            }
        }
        if !toks.is_empty() {
            lines.push((i + 1, toks));
        }
    }
    lines
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn expect_keyword(line: Option<&Line>, keyword: &str, last_line: usize) -> Result<()> {
    match line {
        Some((ln, toks)) if toks[0].0 == keyword => {
            if toks.len() != 1 {
                return Err(err(*ln, toks[1].1, format!("unexpected tokens after '{keyword}'")));
            }
            Ok(())
        }
        Some((ln, toks)) => Err(err(*ln, toks[0].1, format!("expected '{keyword}'"))),
        None => Err(err(last_line + 1, 1, format!("missing '{keyword}'"))),
    }
}

/// Parse a `.lat` file into a validated lattice.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    let lines = content_lines(text);
    let mut it = lines.iter();

    let (ln, toks) = it.next().ok_or_else(|| err(1, 1, "empty file"))?;
    if toks[0].0 != "lattice" {
        return Err(err(*ln, toks[0].1, "expected 'lattice <name>'"));
    }
    if toks.len() != 2 {
        return Err(err(*ln, toks[0].1, "'lattice' takes exactly one name token"));
    }
    let name = toks[1].0.clone();

    let (ln, toks) = it.next().ok_or_else(|| err(ln + 1, 1, "missing 'elements' line"))?;
    if toks[0].0 != "elements" {
        return Err(err(*ln, toks[0].1, "expected 'elements <tokens...>'"));
    }
    if toks.len() < 2 {
        return Err(err(*ln, toks[0].1, "'elements' needs at least one token"));
    }
    let elements: Vec<String> = toks[1..].iter().map(|(t, _)| t.clone()).collect();

    let mut covers = Vec::new();
    let mut last_line = *ln;
    let mut saw_end = false;
    for (ln, toks) in it.by_ref() {
        last_line = *ln;
        match toks[0].0.as_str() {
            "cover" => {
                if toks.len() != 3 {
                    return Err(err(*ln, toks[0].1, "'cover' takes exactly two tokens"));
                }
                covers.push((toks[1].0.clone(), toks[2].0.clone()));
            }
            "end" => {
                if toks.len() != 1 {
                    return Err(err(*ln, toks[1].1, "unexpected tokens after 'end'"));
                }
                saw_end = true;
                break;
            }
            _ => return Err(err(*ln, toks[0].1, "expected 'cover' or 'end'")),
        }
    }
    if !saw_end {
        return Err(err(last_line + 1, 1, "missing 'end'"));
    }
    if let Some((ln, toks)) = it.next() {
        return Err(err(*ln, toks[0].1, "content after 'end'"));
    }

    Lattice::build(name, elements, covers).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => other,
    })
}

/// Canonical `.lat` text for a lattice.
pub fn serialize_lattice(lat: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "lattice {}", lat.name()).unwrap();
    out.push_str("elements");
    for t in lat.tokens() {
        out.push(' ');
        out.push_str(t);
    }
    out.push('\n');
    for (a, b) in lat.covers() {
        writeln!(out, "cover {} {}", lat.token(a), lat.token(b)).unwrap();
    }
    out.push_str("end\n");
    out
}

/// Parse a `.op` file against its lattice. The header's lattice name must
/// match; rows must appear in `elements` order.
pub fn parse_table(text: &str, lat: &Arc<Lattice>) -> Result<TableFile> {
    let lines = content_lines(text);
    let mut it = lines.iter();

    let (ln, toks) = it.next().ok_or_else(|| err(1, 1, "empty file"))?;
    let kind = toks[0].0.as_str();
    if !matches!(kind, "op" | "imp" | "map") {
        return Err(err(*ln, toks[0].1, "expected 'op', 'imp' or 'map'"));
    }
    if toks.len() != 4 || toks[2].0 != "on" {
        return Err(err(*ln, toks[0].1, format!("expected '{kind} <name> on <lattice>'")));
    }
    let name = toks[1].0.clone();
    if toks[3].0 != lat.name() {
        return Err(err(
            *ln,
            toks[3].1,
            format!("table is for lattice '{}', not '{}'", toks[3].0, lat.name()),
        ));
    }

    let n = lat.len();
    let want = if kind == "map" { 1 } else { n };
    let mut cells: Vec<Elem> = Vec::with_capacity(n * want);
    let mut last_line = *ln;
    for row in 0..n {
        let (ln, toks) = it
            .next()
            .ok_or_else(|| err(last_line + 1, 1, format!("missing row {}", row + 1)))?;
        last_line = *ln;
        if toks[0].0 != "row" {
            return Err(err(*ln, toks[0].1, "expected 'row'"));
        }
        if toks.len() != want + 3 || toks[2].0 != ":" {
            return Err(err(
                *ln,
                toks[0].1,
                format!("expected 'row <x> : <{want} value(s)>'"),
            ));
        }
        let expected = lat.token(Elem(row));
        if toks[1].0 != expected {
            return Err(err(
                *ln,
                toks[1].1,
                format!("rows must follow element order; expected row '{expected}'"),
            ));
        }
        for (t, col) in &toks[3..] {
            cells.push(lat.elem(t).map_err(|_| err(*ln, *col, format!("unknown element '{t}'")))?);
        }
    }
    let tail: Vec<&Line> = it.collect();
    expect_keyword(tail.first().copied(), "end", last_line)?;
    if let Some((ln, toks)) = tail.get(1) {
        return Err(err(*ln, toks[0].1, "content after 'end'"));
    }

    Ok(match kind {
        "op" => TableFile::Op(BinaryOp::new(lat.clone(), name, cells)?),
        "imp" => TableFile::Imp(Implication::new(lat.clone(), name, cells)?),
        _ => TableFile::Map(MonotoneMap::new(lat.clone(), lat.clone(), name, cells)?),
    })
}

fn serialize_rows(
    kind: &str,
    name: &str,
    lat: &Lattice,
    row_values: impl Fn(Elem) -> Vec<Elem>,
) -> String {
    let mut out = String::new();
    writeln!(out, "{kind} {name} on {}", lat.name()).unwrap();
    for x in lat.elems() {
        write!(out, "row {} :", lat.token(x)).unwrap();
        for v in row_values(x) {
            out.push(' ');
            out.push_str(lat.token(v));
        }
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

/// Canonical `.op` text for a binary operation.
pub fn serialize_op(op: &BinaryOp) -> String {
    let l = op.lattice();
    serialize_rows("op", op.name(), l, |x| l.elems().map(|y| op.at(x, y)).collect())
}

/// Canonical `.op` text for an implication.
pub fn serialize_implication(imp: &Implication) -> String {
    let l = imp.lattice();
    serialize_rows("imp", imp.name(), l, |x| l.elems().map(|y| imp.at(x, y)).collect())
}

/// Canonical `.op` text for a unary self-map.
pub fn serialize_map(map: &MonotoneMap) -> Result<String> {
    if !map.is_self_map() {
        return Err(Error::BadParameter(
            "only self-maps serialize to the map format".into(),
        ));
    }
    Ok(serialize_rows("map", map.name(), map.domain(), |x| vec![map.apply(x)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chain, diamond, interval_grid};
    use crate::ops::induced_implication;

    #[test]
    fn lattice_round_trip() {
        for lat in [chain(4).unwrap(), diamond(3).unwrap(), interval_grid(2).unwrap()] {
            let text = serialize_lattice(&lat);
            let back = parse_lattice(&text).unwrap();
            assert_eq!(back, lat);
            assert_eq!(serialize_lattice(&back), text);
        }
    }

    #[test]
    fn table_round_trip() {
        let l = Arc::new(chain(3).unwrap());
        let meet = BinaryOp::meet_table(&l);
        let text = serialize_op(&meet);
        match parse_table(&text, &l).unwrap() {
            TableFile::Op(back) => assert_eq!(back, meet),
            other => panic!("expected op, got {other:?}"),
        }
        let imp = induced_implication(&meet).unwrap();
        let text = serialize_implication(&imp);
        match parse_table(&text, &l).unwrap() {
            TableFile::Imp(back) => assert_eq!(back, imp),
            other => panic!("expected imp, got {other:?}"),
        }
        let id = MonotoneMap::identity(&l);
        let text = serialize_map(&id).unwrap();
        match parse_table(&text, &l).unwrap() {
            TableFile::Map(back) => assert_eq!(back.values(), id.values()),
            other => panic!("expected map, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a three-chain\nlattice C3\n\nelements c0 c1 c2  # tokens\ncover c0 c1\ncover c1 c2\nend\n";
        let lat = parse_lattice(text).unwrap();
        assert_eq!(lat, chain(3).unwrap());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_lattice("lattice L\nelements a b\nbogus a b\nend\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, col: 1, msg: "expected 'cover' or 'end'".into() });

        let e = parse_lattice("").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));

        let l = Arc::new(chain(2).unwrap());
        let e = parse_table("op f on C9\nend\n", &l).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));

        let text = "op f on C2\nrow c1 : c0 c0\nrow c0 : c0 c1\nend\n";
        let e = parse_table(text, &l).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn build_errors_surface_from_parse() {
        let text = "lattice L\nelements a b\nend\n";
        assert_eq!(parse_lattice(text).unwrap_err(), Error::NoBound("top"));
    }
}
