//! Text formats for complexes (`.cx`) and ideals (`.id`).
//!
//! Both are line based. `#` starts a comment, blank lines are ignored and an
//! optional `vertices: a,b,c` header fixes the universe and its order;
//! without it vertices are numbered in order of first appearance.
//!
//! A complex line is a facet `a, b, c`. Universe vertices that appear in no
//! facet become singleton facets, unless listed on a `ghosts:` line, which
//! keeps them out of every facet. A line `{}` is the empty face.
//!
//! An ideal line is a monomial `x*y*z`.
//!
//! The writers emit a canonical form: header first, then facets or
//! generators in canonical order, LF line endings.

use std::fmt;

use facetforest_core::{MonomialIdeal, SimplicialComplex, Universe, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// Which of the two formats a document is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Complex,
    Ideal,
}

impl Kind {
    /// `.id` files are ideals, `.cx` files complexes; otherwise a `*` in
    /// any content line marks an ideal.
    pub fn detect(path: Option<&str>, text: &str) -> Kind {
        if let Some(p) = path {
            if p.ends_with(".id") {
                return Kind::Ideal;
            }
            if p.ends_with(".cx") {
                return Kind::Complex;
            }
        }
        let star = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .any(|l| l.contains('*'));
        if star {
            Kind::Ideal
        } else {
            Kind::Complex
        }
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A content line with its 1-based number, stripped of comments.
struct Line<'a> {
    number: usize,
    text: &'a str,
    /// Byte offset of `text` in the raw line.
    offset: usize,
}

fn content_lines(input: &str) -> impl Iterator<Item = Line<'_>> {
    input.lines().enumerate().filter_map(|(k, raw)| {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let offset = body.len() - trimmed.len();
        let text = trimmed.trim_end();
        (!text.is_empty()).then_some(Line {
            number: k + 1,
            text,
            offset,
        })
    })
}

/// Splits `text` on `sep` into trimmed names with their 1-based columns.
fn split_names(
    line: &Line<'_>,
    text: &str,
    start: usize,
    sep: char,
) -> Result<Vec<(String, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut pos = start;
    for piece in text.split(sep) {
        let lead = piece.len() - piece.trim_start().len();
        let name = piece.trim();
        let column = line.offset + pos + lead + 1;
        if name.is_empty() {
            return err(
                line.number,
                column,
                format!("expected a vertex name before `{sep}` or end of line"),
            );
        }
        if !is_name(name) {
            return err(line.number, column, format!("invalid vertex name `{name}`"));
        }
        out.push((name.to_string(), column));
        pos += piece.len() + sep.len_utf8();
    }
    Ok(out)
}

/// Parses `key:` lines; returns the names, or `None` if the line has another
/// shape.
fn keyed<'a>(line: &Line<'a>, key: &str) -> Option<Result<Vec<(String, usize)>, ParseError>> {
    let rest = line
        .text
        .strip_prefix(key)?
        .trim_start()
        .strip_prefix(':')?;
    let start = line.text.len() - rest.len();
    if rest.trim().is_empty() {
        return Some(Ok(Vec::new()));
    }
    Some(split_names(line, rest, start, ','))
}

struct Names {
    declared: bool,
    order: Vec<String>,
}

impl Names {
    fn index(&mut self, name: &str, line: usize, column: usize) -> Result<usize, ParseError> {
        if let Some(i) = self.order.iter().position(|n| n == name) {
            return Ok(i);
        }
        if self.declared {
            return err(
                line,
                column,
                format!("vertex `{name}` is not in the `vertices:` header"),
            );
        }
        self.order.push(name.to_string());
        Ok(self.order.len() - 1)
    }

    fn universe(self) -> Result<Universe, ParseError> {
        Universe::new(self.order).map_err(|e| ParseError {
            line: 1,
            column: 1,
            message: e.to_string(),
        })
    }
}

fn header<'a, I: Iterator<Item = Line<'a>>>(
    lines: &mut std::iter::Peekable<I>,
) -> Result<Names, ParseError> {
    let mut names = Names {
        declared: false,
        order: Vec::new(),
    };
    if let Some(line) = lines.peek() {
        if let Some(parsed) = keyed(line, "vertices") {
            let number = line.number;
            for (name, column) in parsed? {
                if names.order.contains(&name) {
                    return err(number, column, format!("duplicate vertex `{name}`"));
                }
                names.order.push(name);
            }
            names.declared = true;
            lines.next();
        }
    }
    Ok(names)
}

pub fn parse_complex(input: &str) -> Result<SimplicialComplex, ParseError> {
    let mut lines = content_lines(input).peekable();
    let mut names = header(&mut lines)?;
    let mut ghosts: Vec<usize> = Vec::new();
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for line in lines {
        if let Some(parsed) = keyed(&line, "ghosts") {
            for (name, column) in parsed? {
                ghosts.push(names.index(&name, line.number, column)?);
            }
            continue;
        }
        if keyed(&line, "vertices").is_some() {
            return err(
                line.number,
                line.offset + 1,
                "`vertices:` must be the first line",
            );
        }
        if line.text == "{}" {
            facets.push(Vec::new());
            continue;
        }
        if line.text.contains('*') {
            let column = line.offset + line.text.find('*').unwrap_or(0) + 1;
            return err(
                line.number,
                column,
                "`*` in a complex file (is this an ideal?)",
            );
        }
        let mut facet = Vec::new();
        for (name, column) in split_names(&line, line.text, 0, ',')? {
            facet.push(names.index(&name, line.number, column)?);
        }
        facets.push(facet);
    }
    let n = names.order.len();
    let mut used = VertexSet::EMPTY;
    let mut sets: Vec<VertexSet> = Vec::new();
    for f in &facets {
        let s: VertexSet = f.iter().copied().collect();
        used = used.union(s);
        sets.push(s);
    }
    let ghost_set: VertexSet = ghosts.iter().copied().collect();
    if let Some(v) = ghost_set.intersection(used).first() {
        return err(
            1,
            1,
            format!("ghost vertex `{}` lies in a facet", names.order[v]),
        );
    }
    for v in 0..n {
        if !used.contains(v) && !ghost_set.contains(v) {
            sets.push(VertexSet::singleton(v));
        }
    }
    let universe = names.universe()?;
    SimplicialComplex::new(universe, sets).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

pub fn parse_ideal(input: &str) -> Result<MonomialIdeal, ParseError> {
    let mut lines = content_lines(input).peekable();
    let mut names = header(&mut lines)?;
    let mut gens: Vec<VertexSet> = Vec::new();
    for line in lines {
        if keyed(&line, "vertices").is_some() {
            return err(
                line.number,
                line.offset + 1,
                "`vertices:` must be the first line",
            );
        }
        if line.text == "1" {
            return err(
                line.number,
                line.offset + 1,
                "the unit ideal is not allowed",
            );
        }
        if line.text.contains(',') {
            let column = line.offset + line.text.find(',').unwrap_or(0) + 1;
            return err(
                line.number,
                column,
                "`,` in an ideal file (is this a complex?)",
            );
        }
        let mut g = VertexSet::EMPTY;
        for (name, column) in split_names(&line, line.text, 0, '*')? {
            g = g.with(names.index(&name, line.number, column)?);
        }
        gens.push(g);
    }
    let universe = names.universe()?;
    MonomialIdeal::new(universe, gens).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

fn header_line(universe: &Universe) -> String {
    format!("vertices: {}\n", universe.names().join(","))
}

pub fn write_complex(complex: &SimplicialComplex) -> String {
    let u = complex.universe();
    let mut out = header_line(u);
    let ghosts = complex.ghost_vertices();
    if !ghosts.is_empty() {
        out.push_str(&format!("ghosts: {}\n", u.names_of(ghosts).join(",")));
    }
    for f in complex.facets() {
        if f.is_empty() {
            out.push_str("{}\n");
        } else {
            out.push_str(&u.names_of(*f).join(","));
            out.push('\n');
        }
    }
    out
}

pub fn write_ideal(ideal: &MonomialIdeal) -> String {
    let u = ideal.universe();
    let mut out = header_line(u);
    for g in ideal.generators() {
        out.push_str(&u.names_of(*g).join("*"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_and_without_header() {
        let c = parse_complex("# sample tree\nvertices: x,y,u,v,w\nu,v,w\nx, w\nx ,y\n").unwrap();
        assert_eq!(c.facet_count(), 3);
        assert_eq!(c.universe().names(), ["x", "y", "u", "v", "w"]);
        let d = parse_complex("a,b\nb,c\n").unwrap();
        assert_eq!(d.universe().names(), ["a", "b", "c"]);
    }

    #[test]
    fn tolerates_duplicates_and_contained_facets() {
        let c = parse_complex("a,b\na\na,b\n").unwrap();
        assert_eq!(c.facet_count(), 1);
    }

    #[test]
    fn header_vertices_without_facets_are_isolated() {
        let c = parse_complex("vertices: a,b,c\na,b\n").unwrap();
        assert_eq!(c.facet_count(), 2);
        let g = parse_complex("vertices: a,b,c\nghosts: c\na,b\n").unwrap();
        assert_eq!(g.facet_count(), 1);
        assert_eq!(g.ghost_vertices(), VertexSet::singleton(2));
    }

    #[test]
    fn errors_name_line_and_column() {
        let e = parse_complex("a,b\n  a,,c\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        let e = parse_complex("vertices: a,b\na,z\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_ideal("x*y\nx*9y\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_ideal("1\n").is_err());
        assert!(parse_complex("x*y\n").is_err());
    }

    #[test]
    fn canonical_output_round_trips() {
        let src = "vertices: x,y,u,v,w\nx,y\nu,v,w\nx,w\n";
        let c = parse_complex(src).unwrap();
        let once = write_complex(&c);
        assert_eq!(once, "vertices: x,y,u,v,w\nx,w\nx,y\nu,v,w\n");
        assert_eq!(write_complex(&parse_complex(&once).unwrap()), once);

        let i = parse_ideal("x*z\nx*y\n").unwrap();
        let once = write_ideal(&i);
        assert_eq!(once, "vertices: x,z,y\nx*y\nx*z\n");
        assert_eq!(write_ideal(&parse_ideal(&once).unwrap()), once);
    }

    #[test]
    fn empty_face_and_void() {
        let e = parse_complex("vertices: a\nghosts: a\n{}\n").unwrap();
        assert_eq!(e.facets(), &[VertexSet::EMPTY]);
        assert_eq!(parse_complex(&write_complex(&e)).unwrap(), e);
        let v = SimplicialComplex::void(Universe::new(["a", "b"]).unwrap());
        assert_eq!(parse_complex(&write_complex(&v)).unwrap(), v);
        let z = parse_ideal("vertices: a,b\n").unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn kind_detection() {
        assert_eq!(Kind::detect(Some("f.id"), "a"), Kind::Ideal);
        assert_eq!(Kind::detect(None, "x*y\n"), Kind::Ideal);
        assert_eq!(Kind::detect(None, "# a*b\nx,y\n"), Kind::Complex);
    }
}
