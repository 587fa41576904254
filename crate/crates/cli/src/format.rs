//! The plain-text diagram file format.
//!
//! ```text
//! file       := line*
//! line       := blank | '#' comment | statement
//! statement  := 'instance' ('fgab' | 'pointed-sets')
//!             | 'grading' ('cohomological' | 'homological')
//!             | 'object' NAME '=' object
//!             | 'map' NAME ':' NAME '->' NAME '=' payload
//!             | 'complex' NAME 'from' INT 'objects' NAME* ['maps' NAME*]
//!             | 'sequence' NAME '=' NAME*
//!             | 'verdict' NAME '=' TEXT
//!             | command
//! command    := 'homology' NAME
//!             | 'snake' NAME{7}          phi1 phi2 phi1' phi2' f1 f2 f3
//!             | 'les' NAME NAME NAME NAME NAME    A A' A'' i p
//!             | 'verify' NAME
//!             | 'axioms'
//! object     := group | '*' INT                      (pointed set of that size)
//! group      := term ('+' term)*
//! term       := '0' | 'Z' | 'Z^' INT | 'Z/' INT | 'coker' matrix
//! payload    := matrix | table
//! matrix     := INT 'x' INT '[' (row (';' row)*)? ']'     row := INT*
//! table      := '[' INT* ']'
//! NAME       := [A-Za-z0-9_'^.-]+
//! ```
//!
//! Entries may be separated by spaces or commas. `coker RxC [..]` is
//! `Z^R` modulo the column span. In a complex, `maps` lists `d_from`,
//! `d_from+1`, … with `d_i: A_i -> A_i+1`; under homological grading it lists
//! `∂_from+1: C_from+1 -> C_from`, `∂_from+2`, ….  A `sequence` doubles as a
//! chain map, with one component per degree of the window.

use std::collections::BTreeMap;
use std::fmt;

use exactcat::matrix::IntMatrix;
use exactcat::{FpAbelianGroup, PointedSet};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InstanceTag {
    #[default]
    Fgab,
    PointedSets,
}

impl InstanceTag {
    pub fn name(self) -> &'static str {
        match self {
            InstanceTag::Fgab => "fgab",
            InstanceTag::PointedSets => "pointed-sets",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Grading {
    #[default]
    Cohomological,
    Homological,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ObjectSpec {
    Group(FpAbelianGroup),
    Pointed(PointedSet),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Matrix(IntMatrix),
    Table(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub payload: Payload,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDecl {
    pub name: String,
    pub from: i64,
    pub objects: Vec<String>,
    pub maps: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Homology(String),
    Snake([String; 7]),
    Les([String; 5]),
    Verify(String),
    Axioms,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiagramFile {
    pub instance: InstanceTag,
    pub grading: Grading,
    pub objects: BTreeMap<String, ObjectSpec>,
    pub maps: BTreeMap<String, MapDecl>,
    pub complexes: BTreeMap<String, ComplexDecl>,
    pub sequences: BTreeMap<String, Vec<String>>,
    pub verdicts: BTreeMap<String, String>,
    pub command: Option<Command>,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "_'^.-".contains(c))
}

fn name(line: usize, s: &str) -> Result<String, ParseError> {
    if is_name(s) {
        Ok(s.to_string())
    } else {
        err(line, format!("invalid name {s:?}"))
    }
}

fn parse_int<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, ParseError> {
    s.trim().parse().or_else(|_| err(line, format!("expected an integer, found {s:?}")))
}

fn split_entries(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty())
}

/// `RxC [a b; c d]`; returns the matrix and the unparsed rest.
pub fn parse_matrix(line: usize, s: &str) -> Result<(IntMatrix, &str), ParseError> {
    let s = s.trim_start();
    let open = s.find('[').ok_or_else(|| ParseError { line, message: "matrix needs '['".into() })?;
    let close = s.find(']').ok_or_else(|| ParseError { line, message: "matrix needs ']'".into() })?;
    if close < open {
        return err(line, "']' before '['");
    }
    let shape = s[..open].trim();
    let (r, c) = shape
        .split_once('x')
        .ok_or_else(|| ParseError { line, message: format!("matrix shape {shape:?} is not RxC") })?;
    let (rows, cols): (usize, usize) = (parse_int(line, r)?, parse_int(line, c)?);
    let body = s[open + 1..close].trim();
    let mut data = Vec::with_capacity(rows * cols);
    if rows == 0 || cols == 0 {
        if !body.is_empty() {
            return err(line, format!("{rows}x{cols} matrix has entries"));
        }
    } else {
        let row_texts: Vec<&str> = body.split(';').collect();
        if row_texts.len() != rows {
            return err(line, format!("matrix declares {rows} rows but lists {}", row_texts.len()));
        }
        for row in &row_texts {
            let entries: Vec<&str> = split_entries(row).collect();
            if entries.len() != cols {
                return err(line, format!("matrix row {:?} has {} entries, expected {cols}", row.trim(), entries.len()));
            }
            for e in entries {
                data.push(e.parse::<BigInt>().or_else(|_| err(line, format!("bad matrix entry {e:?}")))?);
            }
        }
    }
    Ok((IntMatrix::from_vec(rows, cols, data), &s[close + 1..]))
}

fn parse_table(line: usize, s: &str) -> Result<Vec<usize>, ParseError> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ParseError { line, message: format!("expected a table [..], found {s:?}") })?;
    split_entries(inner).map(|t| parse_int(line, t)).collect()
}

pub fn parse_group(line: usize, s: &str) -> Result<FpAbelianGroup, ParseError> {
    let mut parts = Vec::new();
    let mut rest = s.trim();
    if rest.is_empty() {
        return err(line, "empty group");
    }
    loop {
        let (term, after) = if let Some(m) = rest.strip_prefix("coker") {
            let (mat, after) = parse_matrix(line, m)?;
            let g = FpAbelianGroup::new(mat.rows(), mat).or_else(|e| err(line, e.to_string()))?;
            (g, after.trim_start())
        } else {
            let end = rest.find('+').unwrap_or(rest.len());
            let t = rest[..end].trim();
            let g = match t {
                "0" => FpAbelianGroup::zero(),
                "Z" => FpAbelianGroup::free(1),
                _ if t.starts_with("Z^") => FpAbelianGroup::free(parse_int(line, &t[2..])?),
                _ if t.starts_with("Z/") => {
                    let n: i64 = parse_int(line, &t[2..])?;
                    if n < 1 {
                        return err(line, format!("Z/{n} needs a positive modulus"));
                    }
                    FpAbelianGroup::cyclic(n)
                }
                _ => return err(line, format!("unknown group term {t:?}")),
            };
            (g, &rest[end..])
        };
        parts.push(term);
        rest = after.trim_start();
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix('+')
            .ok_or_else(|| ParseError { line, message: format!("expected '+', found {rest:?}") })?
            .trim_start();
    }
    if parts.len() == 1 {
        return Ok(parts.pop().expect("one part"));
    }
    let refs: Vec<&FpAbelianGroup> = parts.iter().collect();
    Ok(FpAbelianGroup::direct_sum(&refs))
}

fn parse_object(line: usize, s: &str) -> Result<ObjectSpec, ParseError> {
    let s = s.trim();
    if let Some(n) = s.strip_prefix('*') {
        let size: usize = parse_int(line, n)?;
        return PointedSet::new(size).map(ObjectSpec::Pointed).or_else(|e| err(line, e.to_string()));
    }
    parse_group(line, s).map(ObjectSpec::Group)
}

fn parse_payload(line: usize, s: &str) -> Result<Payload, ParseError> {
    let s = s.trim();
    if s.starts_with('[') {
        return parse_table(line, s).map(Payload::Table);
    }
    let (m, rest) = parse_matrix(line, s)?;
    if !rest.trim().is_empty() {
        return err(line, format!("trailing text {:?}", rest.trim()));
    }
    Ok(Payload::Matrix(m))
}

fn names<const N: usize>(line: usize, words: &[&str], what: &str) -> Result<[String; N], ParseError> {
    if words.len() != N {
        return err(line, format!("{what} takes {N} names, found {}", words.len()));
    }
    let v: Vec<String> = words.iter().map(|w| name(line, w)).collect::<Result<_, _>>()?;
    Ok(v.try_into().expect("length checked"))
}

impl DiagramFile {
    pub fn parse(text: &str) -> Result<DiagramFile, ParseError> {
        let mut file = DiagramFile::default();
        let mut instance_line = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let s = raw.split('#').next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
            let rest = rest.trim();
            let words: Vec<&str> = rest.split_whitespace().collect();
            match head {
                "instance" => {
                    if instance_line.is_some() {
                        return err(line, "instance declared twice");
                    }
                    instance_line = Some(line);
                    file.instance = match rest {
                        "fgab" => InstanceTag::Fgab,
                        "pointed-sets" => InstanceTag::PointedSets,
                        _ => return err(line, format!("unknown instance {rest:?}")),
                    };
                }
                "grading" => {
                    file.grading = match rest {
                        "cohomological" => Grading::Cohomological,
                        "homological" => Grading::Homological,
                        _ => return err(line, format!("unknown grading {rest:?}")),
                    };
                }
                "object" => {
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| ParseError { line, message: "object needs '='".into() })?;
                    let key = name(line, lhs.trim())?;
                    let spec = parse_object(line, rhs)?;
                    if file.objects.insert(key.clone(), spec).is_some() {
                        return err(line, format!("object {key} declared twice"));
                    }
                }
                "map" => {
                    let (sig, payload) = rest.split_once('=').ok_or_else(|| ParseError { line, message: "map needs '='".into() })?;
                    let (key, ends) = sig.split_once(':').ok_or_else(|| ParseError { line, message: "map needs ':'".into() })?;
                    let (src, tgt) = ends.split_once("->").ok_or_else(|| ParseError { line, message: "map needs '->'".into() })?;
                    let decl = MapDecl {
                        name: name(line, key.trim())?,
                        source: name(line, src.trim())?,
                        target: name(line, tgt.trim())?,
                        payload: parse_payload(line, payload)?,
                        line,
                    };
                    let key = decl.name.clone();
                    if file.maps.insert(key.clone(), decl).is_some() {
                        return err(line, format!("map {key} declared twice"));
                    }
                }
                "complex" => {
                    if words.len() < 4 || words[1] != "from" || words[3] != "objects" {
                        return err(line, "expected: complex NAME from INT objects NAME* [maps NAME*]");
                    }
                    let key = name(line, words[0])?;
                    let from = parse_int(line, words[2])?;
                    let tail = &words[4..];
                    let split = tail.iter().position(|w| *w == "maps").unwrap_or(tail.len());
                    let objects = tail[..split].iter().map(|w| name(line, w)).collect::<Result<Vec<_>, _>>()?;
                    let maps = tail.get(split + 1..).unwrap_or(&[]).iter().map(|w| name(line, w)).collect::<Result<Vec<_>, _>>()?;
                    if maps.len() + 1 != objects.len().max(1) {
                        return err(line, format!("{} objects need {} maps, found {}", objects.len(), objects.len().saturating_sub(1), maps.len()));
                    }
                    let decl = ComplexDecl { name: key.clone(), from, objects, maps, line };
                    if file.complexes.insert(key.clone(), decl).is_some() {
                        return err(line, format!("complex {key} declared twice"));
                    }
                }
                "sequence" => {
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| ParseError { line, message: "sequence needs '='".into() })?;
                    let key = name(line, lhs.trim())?;
                    let items = rhs.split_whitespace().map(|w| name(line, w)).collect::<Result<Vec<_>, _>>()?;
                    if file.sequences.insert(key.clone(), items).is_some() {
                        return err(line, format!("sequence {key} declared twice"));
                    }
                }
                "verdict" => {
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| ParseError { line, message: "verdict needs '='".into() })?;
                    file.verdicts.insert(name(line, lhs.trim())?, rhs.trim().to_string());
                }
                "homology" | "snake" | "les" | "verify" | "axioms" => {
                    if file.command.is_some() {
                        return err(line, "only one command per file");
                    }
                    file.command = Some(match head {
                        "homology" => Command::Homology(names::<1>(line, &words, "homology")?[0].clone()),
                        "snake" => Command::Snake(names(line, &words, "snake")?),
                        "les" => Command::Les(names(line, &words, "les")?),
                        "verify" => Command::Verify(names::<1>(line, &words, "verify")?[0].clone()),
                        _ => {
                            if !words.is_empty() {
                                return err(line, "axioms takes no arguments");
                            }
                            Command::Axioms
                        }
                    });
                }
                _ => return err(line, format!("unknown statement {head:?}")),
            }
        }
        file.check_references()?;
        Ok(file)
    }

    fn check_references(&self) -> Result<(), ParseError> {
        for (key, spec) in &self.objects {
            let ok = matches!(
                (self.instance, spec),
                (InstanceTag::Fgab, ObjectSpec::Group(_)) | (InstanceTag::PointedSets, ObjectSpec::Pointed(_))
            );
            if !ok {
                return err(0, format!("object {key} does not belong to instance {}", self.instance.name()));
            }
        }
        for m in self.maps.values() {
            for end in [&m.source, &m.target] {
                if !self.objects.contains_key(end) {
                    return err(m.line, format!("map {} refers to unknown object {end}", m.name));
                }
            }
            let ok = matches!(
                (self.instance, &m.payload),
                (InstanceTag::Fgab, Payload::Matrix(_)) | (InstanceTag::PointedSets, Payload::Table(_))
            );
            if !ok {
                return err(m.line, format!("payload of map {} does not suit instance {}", m.name, self.instance.name()));
            }
        }
        for c in self.complexes.values() {
            for o in &c.objects {
                if !self.objects.contains_key(o) {
                    return err(c.line, format!("complex {} refers to unknown object {o}", c.name));
                }
            }
            for m in &c.maps {
                if !self.maps.contains_key(m) {
                    return err(c.line, format!("complex {} refers to unknown map {m}", c.name));
                }
            }
        }
        for (key, items) in &self.sequences {
            for m in items {
                if !self.maps.contains_key(m) {
                    return err(0, format!("sequence {key} refers to unknown map {m}"));
                }
            }
        }
        let missing = |kind: &str, n: &String| err(0, format!("command refers to unknown {kind} {n}"));
        match &self.command {
            Some(Command::Homology(c)) if !self.complexes.contains_key(c) => return missing("complex", c),
            Some(Command::Snake(ms)) => {
                if let Some(m) = ms.iter().find(|m| !self.maps.contains_key(*m)) {
                    return missing("map", m);
                }
            }
            Some(Command::Les(ns)) => {
                if let Some(c) = ns[..3].iter().find(|c| !self.complexes.contains_key(*c)) {
                    return missing("complex", c);
                }
                if let Some(s) = ns[3..].iter().find(|s| !self.sequences.contains_key(*s)) {
                    return missing("sequence", s);
                }
            }
            Some(Command::Verify(s)) if !self.sequences.contains_key(s) => return missing("sequence", s),
            _ => {}
        }
        Ok(())
    }
}

/// `RxC [a b; c d]`.
pub fn write_matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let body = if m.cols() == 0 { String::new() } else { rows.join("; ") };
    format!("{}x{} [{}]", m.rows(), m.cols(), body)
}

/// `[a b; c d]`, the matrix without its shape.
pub fn show_matrix(m: &IntMatrix) -> String {
    let w = write_matrix(m);
    w[w.find('[').unwrap_or(0)..].to_string()
}

/// A group in file syntax that parses back to the same presentation.
pub fn write_group(g: &FpAbelianGroup) -> String {
    if g.gens() == 0 {
        return "0".into();
    }
    if g.is_canonical() {
        let inv = g.invariants();
        let mut terms: Vec<String> = inv.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match inv.free_rank {
            0 => {}
            1 => terms.push("Z".into()),
            r => terms.push(format!("Z^{r}")),
        }
        return terms.join(" + ");
    }
    format!("coker {}", write_matrix(g.relations()))
}

pub fn write_table(t: &[usize]) -> String {
    format!("[{}]", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_round_trip() {
        for text in ["0", "Z", "Z^3", "Z/2", "Z/2 + Z/4 + Z", "coker 2x1 [2; 4]", "Z/6 + coker 1x1 [0]"] {
            let g = parse_group(1, text).unwrap();
            let back = parse_group(1, &write_group(&g)).unwrap();
            assert_eq!(g, back, "{text}");
        }
    }

    #[test]
    fn matrices_parse_with_commas_and_empty_bodies() {
        let (m, rest) = parse_matrix(1, "2x2 [1, -2; 3 4] tail").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, -2], vec![3, 4]]));
        assert_eq!(rest.trim(), "tail");
        let (e, _) = parse_matrix(1, "3x0 []").unwrap();
        assert_eq!((e.rows(), e.cols()), (3, 0));
        let (e, _) = parse_matrix(1, "0x2 []").unwrap();
        assert_eq!((e.rows(), e.cols()), (0, 2));
        assert!(parse_matrix(1, "2x2 [1 2]").is_err());
        assert!(parse_matrix(1, "1x2 [1 2 3]").is_err());
    }

    #[test]
    fn unknown_references_are_reported() {
        let e = DiagramFile::parse("object A = Z\nmap f : A -> B = 1x1 [1]\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("unknown object B"));
    }

    #[test]
    fn instances_must_match_declarations() {
        assert!(DiagramFile::parse("instance pointed-sets\nobject A = Z\n").is_err());
        assert!(DiagramFile::parse("instance pointed-sets\nobject A = *2\nmap f : A -> A = [0 1]\n").is_ok());
    }
}
