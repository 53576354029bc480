//! The `.grp` text format and the word syntax.
//!
//! ```text
//! # Z/2 * Z/3
//! [group]
//! name = modular
//! kind = free_product
//! vertex A = cyclic 2 a
//! vertex B = cyclic 3 b
//!
//! [generators]
//! a = a
//! b = b
//! ```
//!
//! Vertex lines are `vertex NAME = cyclic N GEN`, `vertex NAME = infinite GEN` or
//! `vertex NAME = table E1 E2 ... En` followed by one `product NAME X = ...` row per element.
//! Amalgams give `edge = x:y, ...` generating pairs; HNN extensions give `phi = c:phi(c), ...`
//! and optionally `stable = t`. Words are products of names joined by `*` (or spaces),
//! with integer exponents `^k` and parentheses; `1` is the identity.

use std::collections::HashMap;

use super::graph::{GraphOfGroups, Kind, Letter, VertexSpec};
use super::nf::NormalForm;
use super::table::{FiniteGroupTable, VertexGroup};
use super::GroupError;

#[derive(Debug, Clone)]
enum Expr {
    Atom(String, usize),
    Pow(Box<Expr>, i64),
    Seq(Vec<Expr>),
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

fn is_ident(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

impl<'a> Lexer<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> GroupError {
        GroupError::Parse {
            line: self.line,
            column: self.col0 + at + 1,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn seq(&mut self) -> Result<Expr, GroupError> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                None | Some(b')') => break,
                Some(b'*') => {
                    if items.is_empty() {
                        return Err(self.err(self.pos, "unexpected `*`"));
                    }
                    self.pos += 1;
                    if matches!(self.peek(), None | Some(b')')) {
                        return Err(self.err(self.pos, "expected a factor after `*`"));
                    }
                }
                Some(_) => items.push(self.term()?),
            }
        }
        Ok(Expr::Seq(items))
    }

    fn term(&mut self) -> Result<Expr, GroupError> {
        let mut e = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.pos < self.s.len() && (self.s[self.pos] == b'-' || self.s[self.pos] == b'+') {
                self.pos += 1;
            }
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
            let k: i64 = txt
                .parse()
                .map_err(|_| self.err(start, "expected an integer exponent"))?;
            e = Expr::Pow(Box::new(e), k);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, GroupError> {
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.seq()?;
                if self.peek() != Some(b')') {
                    return Err(self.err(open, "unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if is_ident(c) => {
                let start = self.pos;
                while self.pos < self.s.len() && is_ident(self.s[self.pos]) {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
                Ok(Expr::Atom(name, start))
            }
            Some(c) => Err(self.err(self.pos, format!("unexpected character `{}`", c as char))),
            None => Err(self.err(self.pos, "unexpected end of word")),
        }
    }
}

fn parse_expr(text: &str, line: usize, col0: usize) -> Result<Expr, GroupError> {
    let mut lx = Lexer {
        s: text.as_bytes(),
        pos: 0,
        line,
        col0,
    };
    let e = lx.seq()?;
    if lx.peek().is_some() {
        return Err(lx.err(lx.pos, "unbalanced parenthesis"));
    }
    Ok(e)
}

/// Evaluates an expression to letters, given name resolution and letter inversion.
fn eval(
    e: &Expr,
    resolve: &dyn Fn(&str) -> Option<Letter>,
    inv: &dyn Fn(Letter) -> Letter,
    line: usize,
    col0: usize,
    out: &mut Vec<Letter>,
) -> Result<(), GroupError> {
    match e {
        Expr::Atom(name, at) => {
            if name == "1" {
                return Ok(());
            }
            match resolve(name) {
                Some(l) => out.push(l),
                None => {
                    return Err(GroupError::Parse {
                        line,
                        column: col0 + at + 1,
                        message: format!("unresolved token `{name}`"),
                    })
                }
            }
        }
        Expr::Pow(b, k) => {
            let mut base = Vec::new();
            eval(b, resolve, inv, line, col0, &mut base)?;
            if *k < 0 {
                base = base.into_iter().rev().map(inv).collect();
            }
            for _ in 0..k.unsigned_abs() {
                out.extend_from_slice(&base);
            }
        }
        Expr::Seq(items) => {
            for it in items {
                eval(it, resolve, inv, line, col0, out)?;
            }
        }
    }
    Ok(())
}

impl GraphOfGroups {
    /// Parses a word into letters without reducing it.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>, GroupError> {
        let e = parse_expr(text, 1, 0)?;
        let mut out = Vec::new();
        eval(
            &e,
            &|n| self.lookup(n),
            &|l| self.inverse_letter(l),
            1,
            0,
            &mut out,
        )?;
        Ok(out)
    }

    /// Parses and reduces a word.
    pub fn parse_word(&self, text: &str) -> Result<NormalForm, GroupError> {
        let letters = self.parse_letters(text)?;
        self.reduce(&letters)
    }
}

/// Reads a group file from disk.
pub fn load_group_file(path: &std::path::Path) -> Result<GraphOfGroups, GroupError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
    parse_group(&text)
}

struct PendingVertex {
    spec: VertexSpec,
    table_names: Option<Vec<String>>,
    rows: HashMap<String, (Vec<String>, usize)>,
    line: usize,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> GroupError {
    GroupError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the `.grp` format.
pub fn parse_group(text: &str) -> Result<GraphOfGroups, GroupError> {
    let mut section = String::new();
    let mut name = String::from("group");
    let mut kind: Option<(Kind, usize)> = None;
    let mut vertices: Vec<PendingVertex> = Vec::new();
    let mut edge: Option<(String, usize, usize)> = None;
    let mut phi: Option<(String, usize, usize)> = None;
    let mut stable = String::from("t");
    let mut gens: Vec<(String, String, usize, usize)> = Vec::new();

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        if trimmed.starts_with('[') {
            if !trimmed.ends_with(']') {
                return Err(perr(ln, indent + 1, "malformed section header"));
            }
            section = trimmed[1..trimmed.len() - 1].trim().to_string();
            if section != "group" && section != "generators" {
                return Err(perr(ln, indent + 2, format!("unknown section `{section}`")));
            }
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(perr(ln, indent + 1, "expected `key = value`"));
        };
        let key = line[..eq].trim();
        let vcol = eq + 1;
        let value = &line[vcol..];
        match section.as_str() {
            "generators" => {
                if key.is_empty() || !key.bytes().all(is_ident) {
                    return Err(perr(ln, indent + 1, "bad generator name"));
                }
                gens.push((key.to_string(), value.to_string(), ln, vcol));
            }
            "group" => {
                let words: Vec<&str> = key.split_whitespace().collect();
                match words.as_slice() {
                    ["name"] => name = value.trim().to_string(),
                    ["kind"] => {
                        let k = match value.trim() {
                            "free_product" => Kind::FreeProduct,
                            "amalgam" => Kind::Amalgam,
                            "hnn" => Kind::Hnn,
                            other => {
                                return Err(perr(ln, vcol + 2, format!("unknown kind `{other}`")))
                            }
                        };
                        kind = Some((k, ln));
                    }
                    ["stable"] => {
                        let s = value.trim();
                        if s.is_empty() || !s.bytes().all(is_ident) {
                            return Err(perr(ln, vcol + 1, "bad stable letter name"));
                        }
                        stable = s.to_string();
                    }
                    ["edge"] => edge = Some((value.to_string(), ln, vcol)),
                    ["phi"] => phi = Some((value.to_string(), ln, vcol)),
                    ["vertex", vname] => {
                        vertices.push(parse_vertex(vname, value, ln, vcol)?);
                    }
                    ["product", vname, elem] => {
                        let Some(pv) = vertices.iter_mut().find(|p| p.spec.name == *vname) else {
                            return Err(perr(ln, indent + 9, format!("unknown vertex `{vname}`")));
                        };
                        if pv.table_names.is_none() {
                            return Err(perr(ln, indent + 1, "product rows need a table vertex"));
                        }
                        let row: Vec<String> = value.split_whitespace().map(String::from).collect();
                        pv.rows.insert(elem.to_string(), (row, ln));
                    }
                    _ => return Err(perr(ln, indent + 1, format!("unknown key `{key}`"))),
                }
            }
            _ => return Err(perr(ln, indent + 1, "entry outside of a section")),
        }
    }

    let (kind, kind_line) = kind.ok_or_else(|| perr(1, 1, "missing `kind`"))?;
    let mut specs = Vec::new();
    for pv in vertices {
        specs.push(finish_vertex(pv)?);
    }
    let mut g = match kind {
        Kind::FreeProduct => GraphOfGroups::free_product(&name, specs),
        Kind::Amalgam => {
            if specs.len() != 2 {
                return Err(perr(kind_line, 1, "an amalgam needs exactly two vertices"));
            }
            let pairs = match &edge {
                Some((v, ln, col)) => parse_pairs(v, *ln, *col, &specs, 0, 1)?,
                None => Vec::new(),
            };
            let b = specs.pop().expect("two vertices");
            let a = specs.pop().expect("two vertices");
            GraphOfGroups::amalgam(&name, a, b, &pairs)
        }
        Kind::Hnn => {
            if specs.len() != 1 {
                return Err(perr(
                    kind_line,
                    1,
                    "an HNN extension needs exactly one vertex",
                ));
            }
            let pairs = match &phi {
                Some((v, ln, col)) => parse_pairs(v, *ln, *col, &specs, 0, 0)?,
                None => Vec::new(),
            };
            let a = specs.pop().expect("one vertex");
            GraphOfGroups::hnn(&name, a, &pairs, &stable)
        }
    }
    .map_err(|e| match e {
        GroupError::Parse { .. } => e,
        other => perr(kind_line, 1, other.to_string()),
    })?;
    if !gens.is_empty() {
        let mut list = Vec::new();
        for (gname, w, ln, col) in gens {
            let e = parse_expr(&w, ln, col)?;
            let mut letters = Vec::new();
            eval(
                &e,
                &|n| g.lookup(n),
                &|l| g.inverse_letter(l),
                ln,
                col,
                &mut letters,
            )?;
            let nf = g
                .reduce(&letters)
                .map_err(|err| perr(ln, col + 1, err.to_string()))?;
            list.push((gname, nf));
        }
        g.set_generators(list);
    }
    Ok(g)
}

fn parse_vertex(
    vname: &str,
    value: &str,
    ln: usize,
    vcol: usize,
) -> Result<PendingVertex, GroupError> {
    let toks: Vec<&str> = value.split_whitespace().collect();
    let at = vcol + value.len() - value.trim_start().len() + 1;
    let spec = |group, gen: Option<&str>| VertexSpec {
        name: vname.to_string(),
        group,
        gen: gen.map(String::from),
    };
    match toks.as_slice() {
        ["cyclic", n, g] => {
            let n: usize = n
                .parse()
                .ok()
                .filter(|&n| (1..=4096).contains(&n))
                .ok_or_else(|| perr(ln, at, "cyclic order must be in 1..=4096"))?;
            if !g.bytes().all(is_ident) {
                return Err(perr(ln, at, "bad generator name"));
            }
            Ok(PendingVertex {
                spec: spec(VertexGroup::Finite(FiniteGroupTable::cyclic(n, g)), Some(g)),
                table_names: None,
                rows: HashMap::new(),
                line: ln,
            })
        }
        ["infinite", g] => Ok(PendingVertex {
            spec: spec(VertexGroup::InfiniteCyclic, Some(g)),
            table_names: None,
            rows: HashMap::new(),
            line: ln,
        }),
        ["table", names @ ..] if !names.is_empty() => Ok(PendingVertex {
            spec: spec(VertexGroup::InfiniteCyclic, None),
            table_names: Some(names.iter().map(|s| s.to_string()).collect()),
            rows: HashMap::new(),
            line: ln,
        }),
        _ => Err(perr(
            ln,
            at,
            "expected `cyclic N GEN`, `infinite GEN` or `table E1 ... En`",
        )),
    }
}

fn finish_vertex(mut pv: PendingVertex) -> Result<VertexSpec, GroupError> {
    let Some(names) = pv.table_names.take() else {
        return Ok(pv.spec);
    };
    let idx: HashMap<&str, u32> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i as u32))
        .collect();
    let mut rows = Vec::new();
    for n in &names {
        let (row, ln) = pv
            .rows
            .get(n)
            .ok_or_else(|| perr(pv.line, 1, format!("missing product row for `{n}`")))?;
        let r: Result<Vec<u32>, _> = row
            .iter()
            .map(|s| {
                idx.get(s.as_str())
                    .copied()
                    .ok_or_else(|| perr(*ln, 1, format!("unknown element `{s}`")))
            })
            .collect();
        rows.push(r?);
    }
    let t = FiniteGroupTable::new(names, rows).map_err(|e| perr(pv.line, 1, e.to_string()))?;
    pv.spec.group = VertexGroup::Finite(t);
    Ok(pv.spec)
}

/// Resolves `x:y, ...` where `x` lives in vertex `va` and `y` in vertex `vb`.
fn parse_pairs(
    value: &str,
    ln: usize,
    col: usize,
    specs: &[VertexSpec],
    va: u8,
    vb: u8,
) -> Result<Vec<(i64, i64)>, GroupError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in value.split(',') {
        let here = col + offset;
        offset += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let Some(colon) = part.find(':') else {
            return Err(perr(ln, here + 1, "expected `x:y`"));
        };
        let x = eval_in_vertex(&part[..colon], ln, here, specs, va)?;
        let y = eval_in_vertex(&part[colon + 1..], ln, here + colon + 1, specs, vb)?;
        out.push((x, y));
    }
    Ok(out)
}

fn eval_in_vertex(
    text: &str,
    ln: usize,
    col: usize,
    specs: &[VertexSpec],
    v: u8,
) -> Result<i64, GroupError> {
    let spec = &specs[v as usize];
    let g = &spec.group;
    let resolve = |n: &str| -> Option<Letter> {
        if spec.gen.as_deref() == Some(n) {
            return Some(Letter::Elem { v, x: 1 });
        }
        match g {
            VertexGroup::Finite(t) => t.index_of(n).map(|x| Letter::Elem { v, x: x as i64 }),
            VertexGroup::InfiniteCyclic => None,
        }
    };
    let inv = |l: Letter| match l {
        Letter::Elem { v, x } => Letter::Elem { v, x: g.inv(x) },
        s => s,
    };
    let e = parse_expr(text, ln, col)?;
    let mut letters = Vec::new();
    eval(&e, &resolve, &inv, ln, col, &mut letters)?;
    let mut acc = g.identity();
    for l in letters {
        if let Letter::Elem { x, .. } = l {
            acc = g.mul(acc, x);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MODULAR: &str =
        "[group]\nkind = free_product\nvertex A = cyclic 2 a\nvertex B = cyclic 3 b\n";

    #[test]
    fn parses_modular_group() {
        let g = parse_group(MODULAR).unwrap();
        assert_eq!(g.kind(), Kind::FreeProduct);
        let w = g.parse_word("a*b*b*b*a").unwrap();
        assert!(w.is_identity());
        assert_eq!(g.format(&g.parse_word("(a b)^2").unwrap()), "a*b*a*b");
        assert_eq!(g.format(&g.parse_word("b^-1").unwrap()), "b^2");
    }

    #[test]
    fn reports_unresolved_token_position() {
        let g = parse_group(MODULAR).unwrap();
        match g.parse_word("a*q") {
            Err(GroupError::Parse {
                column, message, ..
            }) => {
                assert_eq!(column, 3);
                assert!(message.contains("unresolved"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_unbalanced_parenthesis() {
        let g = parse_group(MODULAR).unwrap();
        assert!(matches!(
            g.parse_word("(a*b"),
            Err(GroupError::Parse { .. })
        ));
        assert!(matches!(
            g.parse_word("a*b)"),
            Err(GroupError::Parse { .. })
        ));
    }

    #[test]
    fn file_errors_carry_line_numbers() {
        let bad = "[group]\nkind = free_product\nvertex A = cyclic 2 a\nvertex B = cylic 3 b\n";
        match parse_group(bad) {
            Err(GroupError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn table_vertices_and_amalgam_edges() {
        let text = "\
[group]
kind = amalgam
vertex A = cyclic 4 x
vertex B = cyclic 6 y
edge = x^2:y^3
";
        let g = parse_group(text).unwrap();
        assert_eq!(g.edge_group_order(), 2);
        assert!(g.non_triviality().non_elementary);
        let w = g.parse_word("x^2*y^3").unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn non_homomorphic_edge_is_rejected() {
        let text =
            "[group]\nkind = amalgam\nvertex A = cyclic 4 x\nvertex B = cyclic 6 y\nedge = x:y^3\n";
        assert!(matches!(parse_group(text), Err(GroupError::Parse { .. })));
    }
}
