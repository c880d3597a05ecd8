//! Plain-text file formats.
//!
//! A computad file:
//!
//! ```text
//! computad A
//! 2cells a1 a2 a3
//! 3cell f : a1 * a2 -> a3
//! ```
//!
//! A morphism file:
//!
//! ```text
//! morphism alpha1 : E -> A
//! 2 x -> a1
//! 2 y -> a3
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Printing is
//! canonical (cells in sorted order), so printing and parsing round-trip.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::computad::{validate_computad, Computad, ThreeCell, Violation};
use crate::constructions::{CoequalizerResult, ProductResult};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::multiset::{is_valid_label, Label, Multiset};

/// A computad as written in a file, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputadParts {
    pub name: String,
    pub cells2: Vec<Label>,
    pub cells3: Vec<ThreeCell>,
}

impl ComputadParts {
    pub fn validate(&self) -> Vec<Violation> {
        validate_computad(&self.cells2, &self.cells3)
    }

    pub fn build(self) -> Result<Computad> {
        Computad::new(self.name, self.cells2, self.cells3)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_multiset(line: usize, s: &str) -> Result<Multiset<Label>> {
    s.parse().map_err(|e| match e {
        Error::Parse {
            expected, found, ..
        } => Error::Parse {
            line,
            expected,
            found,
        },
        other => other,
    })
}

fn expect_label(line: usize, s: &str, what: &str) -> Result<Label> {
    let s = s.trim();
    if is_valid_label(s) {
        Ok(s.to_string())
    } else {
        Err(Error::parse(line, what, s))
    }
}

/// Parses a computad file without checking the computad invariants.
pub fn parse_computad_parts(text: &str) -> Result<ComputadParts> {
    let mut lines = content_lines(text);
    let (n, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "`computad <name>`", "end of file"))?;
    let name = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["computad", name] => name.to_string(),
        _ => return Err(Error::parse(n, "`computad <name>`", header)),
    };
    let (n, decl) = lines
        .next()
        .ok_or_else(|| Error::parse(n + 1, "`2cells <label> ...`", "end of file"))?;
    let mut words = decl.split_whitespace();
    if words.next() != Some("2cells") {
        return Err(Error::parse(n, "`2cells <label> ...`", decl));
    }
    // Labels are checked by validation so bad ones are reported as violations.
    let cells2: Vec<Label> = words.map(str::to_string).collect();

    let mut cells3 = Vec::new();
    for (n, line) in lines {
        let rest = line
            .strip_prefix("3cell")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| Error::parse(n, "`3cell <name> : <source> -> <target>`", line))?;
        let (name, boundary) = rest
            .split_once(':')
            .ok_or_else(|| Error::parse(n, "`:` after the 3-cell name", rest.trim()))?;
        let (src, tgt) = boundary
            .split_once("->")
            .ok_or_else(|| Error::parse(n, "`->` between source and target", boundary.trim()))?;
        cells3.push(ThreeCell::new(
            expect_label(n, name, "a 3-cell name")?,
            parse_multiset(n, src)?,
            parse_multiset(n, tgt)?,
        ));
    }
    Ok(ComputadParts {
        name,
        cells2,
        cells3,
    })
}

pub fn parse_computad(text: &str) -> Result<Computad> {
    parse_computad_parts(text)?.build()
}

pub fn print_computad(x: &Computad) -> String {
    let mut out = format!("computad {}\n2cells", x.name());
    for l in x.cells2() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for c in x.cells3() {
        let _ = writeln!(out, "3cell {} : {} -> {}", c.name, c.src, c.tgt);
    }
    out
}

/// Comment lines tracing each product 3-cell to the cells and pairings it
/// stands for.
pub fn print_product_provenance(p: &ProductResult) -> String {
    let mut out = String::from("# provenance\n");
    for (name, cell) in &p.cell_index {
        let _ = writeln!(
            out,
            "# {name} = ({}, {}, {}, {})",
            cell.left, cell.right, cell.src, cell.tgt
        );
    }
    out
}

/// Comment lines listing the members of each quotient cell.
pub fn print_coequalizer_provenance(ce: &CoequalizerResult) -> String {
    let mut out = String::from("# provenance\n");
    for (dim, classes) in [(2, &ce.classes2), (3, &ce.classes3)] {
        for (label, members) in classes {
            let _ = writeln!(out, "# {dim} {label} = {{{}}}", members.join(", "));
        }
    }
    out
}

/// The first line of a morphism file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismHeader {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

pub fn parse_morphism_header(text: &str) -> Result<MorphismHeader> {
    let (n, header) = content_lines(text)
        .next()
        .ok_or_else(|| Error::parse(1, "`morphism <name> : <dom> -> <cod>`", "end of file"))?;
    let bad = || Error::parse(n, "`morphism <name> : <dom> -> <cod>`", header);
    let rest = header
        .strip_prefix("morphism")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(bad)?;
    let (name, ends) = rest.split_once(':').ok_or_else(bad)?;
    let (dom, cod) = ends.split_once("->").ok_or_else(bad)?;
    let word = |s: &str| {
        let s = s.trim();
        (!s.is_empty() && !s.contains(char::is_whitespace)).then(|| s.to_string())
    };
    Ok(MorphismHeader {
        name: word(name).ok_or_else(bad)?,
        dom: word(dom).ok_or_else(bad)?,
        cod: word(cod).ok_or_else(bad)?,
    })
}

/// Parses a morphism file, looking its endpoints up by name.
pub fn parse_morphism(
    text: &str,
    resolve: impl Fn(&str) -> Option<Arc<Computad>>,
) -> Result<(String, Morphism)> {
    let header = parse_morphism_header(text)?;
    let dom = resolve(&header.dom).ok_or_else(|| Error::UnknownObject(header.dom.clone()))?;
    let cod = resolve(&header.cod).ok_or_else(|| Error::UnknownObject(header.cod.clone()))?;
    let mut map2 = BTreeMap::new();
    let mut map3 = BTreeMap::new();
    for (n, line) in content_lines(text).skip(1) {
        let (dim, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::parse(n, "`2 <cell> -> <cell>` or `3 <cell> -> <cell>`", line))?;
        let table = match dim {
            "2" => &mut map2,
            "3" => &mut map3,
            _ => return Err(Error::parse(n, "`2` or `3`", dim)),
        };
        let (from, to) = rest
            .split_once("->")
            .ok_or_else(|| Error::parse(n, "`<cell> -> <cell>`", rest.trim()))?;
        let from = expect_label(n, from, "a cell label")?;
        let to = expect_label(n, to, "a cell label")?;
        if table.insert(from.clone(), to).is_some() {
            return Err(Error::parse(n, "each cell mapped once", from));
        }
    }
    let m = Morphism::new(dom, cod, &map2, &map3).map_err(|e| match e {
        Error::InvalidMorphism { violations, .. } => Error::InvalidMorphism {
            name: header.name.clone(),
            violations,
        },
        other => other,
    })?;
    Ok((header.name, m))
}

pub fn print_morphism(name: &str, m: &Morphism) -> String {
    let mut out = format!(
        "morphism {name} : {} -> {}\n",
        m.dom().name(),
        m.cod().name()
    );
    for (a, b) in m.table2() {
        let _ = writeln!(out, "2 {a} -> {b}");
    }
    for (a, b) in m.table3() {
        let _ = writeln!(out, "3 {a} -> {b}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: &str = "computad A\n2cells a1 a2 a3\n3cell f : a1 * a2 -> a3\n";

    #[test]
    fn computad_round_trip() {
        let a = parse_computad(A).unwrap();
        assert_eq!(print_computad(&a), A);
    }

    #[test]
    fn whitespace_and_comments_are_tolerated() {
        let messy = "# a comment\n\n  computad   A \n2cells  a3 a1   a2\n3cell f:a2*a1->a3\n";
        assert_eq!(print_computad(&parse_computad(messy).unwrap()), A);
    }

    #[test]
    fn empty_lists_and_unit_boundaries() {
        let text = "computad Z\n2cells\n3cell e : 1 -> 1\n";
        let z = parse_computad(text).unwrap();
        assert_eq!(z.num_cells2(), 0);
        assert_eq!(print_computad(&z), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_computad("computad A\n2cells a\n3cell f a -> a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_computad("computad A\n2cells a\n3cell f : a * * a -> a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_computad("compute A\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn invalid_computads_parse_into_parts() {
        let parts = parse_computad_parts("computad A\n2cells a\n3cell f : a * b -> a\n").unwrap();
        assert_eq!(parts.validate().len(), 1);
        assert!(parts.build().is_err());
    }

    #[test]
    fn morphism_round_trip() {
        let a = Arc::new(parse_computad(A).unwrap());
        let e = Arc::new(parse_computad("computad E\n2cells x y\n").unwrap());
        let text = "morphism alpha1 : E -> A\n2 x -> a1\n2 y -> a3\n";
        let resolve = |n: &str| match n {
            "A" => Some(a.clone()),
            "E" => Some(e.clone()),
            _ => None,
        };
        let (name, m) = parse_morphism(text, resolve).unwrap();
        assert_eq!(name, "alpha1");
        assert_eq!(print_morphism(&name, &m), text);

        let err = parse_morphism("morphism m : E -> Q\n", resolve).unwrap_err();
        assert_eq!(err, Error::UnknownObject("Q".into()));
        let err = parse_morphism("morphism m : E -> A\n2 x -> a1\n", resolve).unwrap_err();
        assert!(matches!(err, Error::InvalidMorphism { .. }));
        let err =
            parse_morphism("morphism m : E -> A\n2 x -> a1\n2 x -> a2\n", resolve).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
