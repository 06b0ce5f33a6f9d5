//! The line-oriented text format for structures.
//!
//! ```text
//! structure rm_unit
//! elements a b c l
//! op mul arity 2
//! l c b a
//! b l a c
//! c a l b
//! a b c l
//! const l = l
//! end
//! ```
//!
//! `#` starts a comment. An arity-3 table is written as `n` blocks of `n`
//! rows; blank lines between blocks are optional on input and emitted on
//! output. Operations and constants are serialized in name order.

use super::{Carrier, Elem, OpTable, Structure};
use crate::error::{Error, Result};

const KEYWORDS: &[&str] = &["structure", "elements", "op", "arity", "const", "end", "="];

#[derive(Debug, Clone)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    toks: Vec<Tok<'a>>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut toks = Vec::new();
            let mut start = None;
            for (pos, ch) in body
                .char_indices()
                .chain(std::iter::once((body.len(), ' ')))
            {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        toks.push(Tok {
                            text: &body[s..pos],
                            col: body[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            Line {
                number: i + 1,
                toks,
            }
        })
        .collect()
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

impl<'a> Parser<'a> {
    /// Next non-blank line, if any.
    fn next_line(&mut self) -> Option<&Line<'a>> {
        while self.pos < self.lines.len() && self.lines[self.pos].toks.is_empty() {
            self.pos += 1;
        }
        let line = self.lines.get(self.pos);
        if line.is_some() {
            self.pos += 1;
        }
        line
    }

    fn peek_line(&mut self) -> Option<&Line<'a>> {
        while self.pos < self.lines.len() && self.lines[self.pos].toks.is_empty() {
            self.pos += 1;
        }
        self.lines.get(self.pos)
    }

    fn last_line_number(&self) -> usize {
        self.lines.len().max(1)
    }

    fn structure(&mut self) -> Result<Structure> {
        let line = self.next_line().expect("caller peeked");
        let (number, toks) = (line.number, line.toks.clone());
        if toks[0].text != "structure" {
            return Err(parse_err(
                number,
                toks[0].col,
                format!("expected `structure`, found `{}`", toks[0].text),
            ));
        }
        let name = match toks.as_slice() {
            [_, name] => name.text.to_string(),
            [_] => return Err(parse_err(number, toks[0].col + 9, "missing structure name")),
            [_, _, extra, ..] => {
                return Err(parse_err(
                    number,
                    extra.col,
                    "trailing tokens after structure name",
                ))
            }
            [] => unreachable!(),
        };

        let Some(line) = self.next_line() else {
            return Err(parse_err(
                self.last_line_number(),
                1,
                "unexpected end of input, expected `elements`",
            ));
        };
        let (number, toks) = (line.number, line.toks.clone());
        if toks[0].text != "elements" {
            return Err(parse_err(
                number,
                toks[0].col,
                format!("expected `elements`, found `{}`", toks[0].text),
            ));
        }
        if toks.len() < 2 {
            return Err(parse_err(
                number,
                toks[0].col,
                "carrier must have at least one element",
            ));
        }
        let mut names: Vec<String> = Vec::new();
        for tok in &toks[1..] {
            if KEYWORDS.contains(&tok.text) {
                return Err(parse_err(
                    number,
                    tok.col,
                    format!("`{}` is reserved", tok.text),
                ));
            }
            if names.iter().any(|n| n == tok.text) {
                return Err(Error::DuplicateElement {
                    line: number,
                    col: tok.col,
                    name: tok.text.into(),
                });
            }
            names.push(tok.text.to_string());
        }
        let carrier = Carrier::new(names)?;
        let mut s = Structure::new(name, carrier);

        loop {
            let Some(line) = self.next_line() else {
                return Err(parse_err(
                    self.last_line_number(),
                    1,
                    "unexpected end of input, expected `end`",
                ));
            };
            let (number, toks) = (line.number, line.toks.clone());
            match toks[0].text {
                "end" => {
                    if let Some(extra) = toks.get(1) {
                        return Err(parse_err(number, extra.col, "trailing tokens after `end`"));
                    }
                    return Ok(s);
                }
                "op" => self.op_section(&mut s, number, &toks)?,
                "const" => {
                    let [_, name, eq, value] = toks.as_slice() else {
                        return Err(parse_err(
                            number,
                            toks[0].col,
                            "expected `const <name> = <element>`",
                        ));
                    };
                    if eq.text != "=" {
                        return Err(parse_err(number, eq.col, "expected `=`"));
                    }
                    if s.consts().contains_key(name.text) {
                        return Err(parse_err(
                            number,
                            name.col,
                            format!("duplicate constant `{}`", name.text),
                        ));
                    }
                    let e = lookup(&s, number, value)?;
                    s.insert_const(name.text, e)?;
                }
                other => {
                    return Err(parse_err(
                        number,
                        toks[0].col,
                        format!("unexpected `{other}`"),
                    ));
                }
            }
        }
    }

    fn op_section(&mut self, s: &mut Structure, number: usize, toks: &[Tok<'a>]) -> Result<()> {
        let [_, name, kw, arity] = toks else {
            return Err(parse_err(
                number,
                toks[0].col,
                "expected `op <name> arity <1|2|3>`",
            ));
        };
        if kw.text != "arity" {
            return Err(parse_err(number, kw.col, "expected `arity`"));
        }
        let arity: usize = match arity.text {
            "1" => 1,
            "2" => 2,
            "3" => 3,
            _ => return Err(parse_err(number, arity.col, "arity must be 1, 2 or 3")),
        };
        if s.ops().contains_key(name.text) {
            return Err(parse_err(
                number,
                name.col,
                format!("duplicate operation `{}`", name.text),
            ));
        }
        let n = s.order();
        if arity == 3 && n > super::TERNARY_ORDER_CAP {
            return Err(Error::CapExceeded {
                order: n,
                what: "ternary tables".into(),
            });
        }
        let rows = n.pow(arity as u32 - 1);
        let mut entries = Vec::with_capacity(rows * n);
        for r in 0..rows {
            let header = number;
            let line = match self.peek_line() {
                Some(line) if !is_section_start(line) => {
                    let line = self.next_line().unwrap();
                    (line.number, line.toks.clone())
                }
                other => {
                    let at = other.map(|l| l.number).unwrap_or(self.last_line_number());
                    return Err(Error::RaggedTable {
                        line: at,
                        op: name.text.into(),
                        msg: format!(
                            "expected {rows} rows, found {r} (table starts at line {header})"
                        ),
                    });
                }
            };
            let (row_line, row_toks) = line;
            if row_toks.len() != n {
                return Err(Error::RaggedTable {
                    line: row_line,
                    op: name.text.into(),
                    msg: format!("row has {} entries, expected {n}", row_toks.len()),
                });
            }
            for tok in &row_toks {
                entries.push(lookup(s, row_line, tok)?);
            }
        }
        let table = OpTable::new(arity, n, entries)?;
        s.insert_op(name.text, table)
    }
}

fn is_section_start(line: &Line<'_>) -> bool {
    matches!(
        line.toks[0].text,
        "op" | "const" | "end" | "structure" | "elements"
    )
}

fn lookup(s: &Structure, line: usize, tok: &Tok<'_>) -> Result<Elem> {
    s.carrier()
        .index_of(tok.text)
        .ok_or_else(|| Error::UndeclaredElement {
            line,
            col: tok.col,
            name: tok.text.into(),
        })
}

/// Parse every structure in `text`, in declaration order.
pub fn parse_structures(text: &str) -> Result<Vec<Structure>> {
    let mut p = Parser {
        lines: tokenize(text),
        pos: 0,
    };
    let mut out = Vec::new();
    while p.peek_line().is_some() {
        out.push(p.structure()?);
    }
    Ok(out)
}

/// Parse text that must contain exactly one structure.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut all = parse_structures(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        k => Err(parse_err(
            1,
            1,
            format!("expected exactly one structure, found {k}"),
        )),
    }
}

/// Canonical rendering of one structure.
pub fn serialize(s: &Structure) -> String {
    let names = s.carrier().names();
    let n = s.order();
    let mut out = String::new();
    out.push_str(&format!("structure {}\n", s.name()));
    out.push_str("elements ");
    out.push_str(&names.join(" "));
    out.push('\n');
    for (op, table) in s.ops() {
        out.push_str(&format!("op {op} arity {}\n", table.arity()));
        for (i, row) in table.entries().chunks(n).enumerate() {
            if table.arity() == 3 && i > 0 && i % n == 0 {
                out.push('\n');
            }
            let cells: Vec<&str> = row.iter().map(|&e| names[e].as_str()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    for (name, &e) in s.consts() {
        out.push_str(&format!("const {name} = {}\n", names[e]));
    }
    out.push_str("end\n");
    out
}

/// Render several structures, separated by blank lines.
pub fn serialize_all(structures: &[Structure]) -> String {
    structures
        .iter()
        .map(serialize)
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_element() {
        let s = parse_structure("structure one\nelements a\nop mul arity 2\na\nend\n").unwrap();
        assert_eq!(s.order(), 1);
        assert_eq!(s.op("mul").unwrap().entries(), &[0]);
    }

    #[test]
    fn order_one_canonical_text() {
        let s = Structure::from_binary("one", OpTable::binary(1, |_, _| 0));
        let text = serialize(&s);
        assert_eq!(text, "structure one\nelements 0\nop mul arity 2\n0\nend\n");
        assert_eq!(parse_structure(&text).unwrap(), s);
    }

    #[test]
    fn ragged_row_count() {
        let text =
            "structure s\nelements a b c d\nop mul arity 2\na b c d\na b c d\na b c d\nend\n";
        match parse_structure(text) {
            Err(Error::RaggedTable { line, .. }) => assert_eq!(line, 7),
            other => panic!("expected ragged table, got {other:?}"),
        }
    }

    #[test]
    fn ragged_row_width() {
        let text = "structure s\nelements a b\nop mul arity 2\na b\na\nend\n";
        assert!(matches!(
            parse_structure(text),
            Err(Error::RaggedTable { line: 5, .. })
        ));
    }

    #[test]
    fn duplicate_and_undeclared() {
        let dup = "structure s\nelements a b a\nend\n";
        assert_eq!(
            parse_structure(dup),
            Err(Error::DuplicateElement {
                line: 2,
                col: 14,
                name: "a".into()
            })
        );
        let undeclared = "structure s\nelements a b\nop mul arity 2\na b\nb  q\nend\n";
        assert_eq!(
            parse_structure(undeclared),
            Err(Error::UndeclaredElement {
                line: 5,
                col: 4,
                name: "q".into()
            })
        );
    }

    #[test]
    fn parse_error_positions() {
        match parse_structure("structure s\nelements a\nop mul arity 4\n") {
            Err(Error::Parse {
                line: 3, col: 14, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_structure("structure s\nelements a\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_structure("elements a\n"),
            Err(Error::Parse {
                line: 1,
                col: 1,
                ..
            })
        ));
    }

    #[test]
    fn comments_and_ternary_blocks() {
        let text = "# heap of order 2\nstructure h # xyz\nelements 0 1\nop t arity 3\n0 1\n1 0\n\n1 0\n0 1\nconst e = 0\nend\n";
        let s = parse_structure(text).unwrap();
        let t = s.op("t").unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    assert_eq!(t.get3(a, b, c), (a + b + c) % 2);
                }
            }
        }
        let canon = serialize(&s);
        assert_eq!(
            canon,
            "structure h\nelements 0 1\nop t arity 3\n0 1\n1 0\n\n1 0\n0 1\nconst e = 0\nend\n"
        );
        assert_eq!(serialize(&parse_structure(&canon).unwrap()), canon);
    }

    #[test]
    fn multiple_structures_in_order() {
        let text = "structure a\nelements x\nend\n\nstructure b\nelements y z\nend\n";
        let all = parse_structures(text).unwrap();
        assert_eq!(all.iter().map(|s| s.name()).collect::<Vec<_>>(), ["a", "b"]);
        assert_eq!(parse_structures(&serialize_all(&all)).unwrap(), all);
    }
}
