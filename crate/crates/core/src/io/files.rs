//! Line-oriented input files.
//!
//! ```text
//! # comment
//! system m=2
//! F1 = yx1*yx2
//! F2 = 0
//! ```
//!
//! Transform files use `transform m=<m>` with `X = ...`, `Y<j> = ...` and an
//! optional `basepoint = r0, r1, ..., rm`; vector-field files use
//! `vectorfield m=<m>` with the same `X`/`Y<j>` labels. Text after `#` is
//! ignored. Error positions are byte offsets into the whole file.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use num_rational::BigRational;

use crate::algebra::{RationalFunction, Q};
use crate::error::{Error, Result};
use crate::jets::{check_dimension, OdeSystem, PointTransformation, VectorField};

use super::parser::parse_at;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    System,
    Transform,
    VectorField,
}

impl FileKind {
    fn keyword(self) -> &'static str {
        match self {
            FileKind::System => "system",
            FileKind::Transform => "transform",
            FileKind::VectorField => "vectorfield",
        }
    }
}

/// A body line: its right-hand side and the byte offset where it starts.
struct Entry<'a> {
    text: &'a str,
    offset: usize,
}

struct RawFile<'a> {
    kind: FileKind,
    m: usize,
    entries: BTreeMap<String, Entry<'a>>,
}

/// Yields `(offset, content)` for each line with comments and `\r` removed.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split('\n').map(move |line| {
        let start = offset;
        offset += line.len() + 1;
        let line = line.split('#').next().unwrap_or("");
        (start, line.trim_end_matches('\r'))
    })
}

fn parse_header(line: &str) -> Option<(FileKind, &str)> {
    let mut words = line.split_whitespace();
    let kind = match words.next()? {
        "system" => FileKind::System,
        "transform" => FileKind::Transform,
        "vectorfield" => FileKind::VectorField,
        _ => return None,
    };
    let rest = line.trim_start().strip_prefix(kind.keyword())?.trim();
    let value = rest.strip_prefix('m')?.trim_start().strip_prefix('=')?.trim();
    Some((kind, value))
}

fn read_file(text: &str) -> Result<RawFile<'_>> {
    let mut header = None;
    let mut entries = BTreeMap::new();
    for (offset, line) in lines(text) {
        if line.trim().is_empty() {
            continue;
        }
        if header.is_none() {
            let (kind, value) = parse_header(line).ok_or_else(|| {
                Error::InvalidInput("expected a header `system m=<m>`, `transform m=<m>` or `vectorfield m=<m>`".into())
            })?;
            let m = value
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("invalid dimension `{value}`")))?;
            check_dimension(m)?;
            header = Some((kind, m));
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(Error::InvalidInput(format!("expected `label = expression`, found `{}`", line.trim())));
        };
        let label = line[..eq].trim().to_string();
        let entry = Entry {
            text: &line[eq + 1..],
            offset: offset + eq + 1,
        };
        if entries.insert(label.clone(), entry).is_some() {
            return Err(Error::InvalidInput(format!("duplicate line `{label}`")));
        }
    }
    let (kind, m) = header.ok_or_else(|| Error::InvalidInput("empty input".into()))?;
    Ok(RawFile { kind, m, entries })
}

impl<'a> RawFile<'a> {
    fn expect_kind(&self, kind: FileKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidInput(format!(
                "expected a `{}` file, found `{}`",
                kind.keyword(),
                self.kind.keyword()
            )));
        }
        Ok(())
    }

    fn take(&mut self, label: &str) -> Result<Entry<'a>> {
        self.entries
            .remove(label)
            .ok_or_else(|| Error::InvalidInput(format!("missing line `{label} = ...`")))
    }

    fn expr(&mut self, label: &str, allow_jet1: bool) -> Result<RationalFunction> {
        let e = self.take(label)?;
        parse_at(e.text, e.offset, self.m, allow_jet1)
    }

    fn finish(self) -> Result<()> {
        match self.entries.keys().next() {
            Some(label) => Err(Error::InvalidInput(format!("unexpected line `{label}`"))),
            None => Ok(()),
        }
    }
}

pub fn parse_system(text: &str) -> Result<OdeSystem> {
    let mut raw = read_file(text)?;
    raw.expect_kind(FileKind::System)?;
    let rhs = (1..=raw.m)
        .map(|j| raw.expr(&format!("F{j}"), true))
        .collect::<Result<Vec<_>>>()?;
    raw.finish()?;
    OdeSystem::new(rhs)
}

fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    BigRational::from_str(s)
        .ok()
        .filter(|_| !s.is_empty() && !s.starts_with('+'))
        .map(Q::from_big)
        .ok_or_else(|| Error::InvalidInput(format!("invalid rational `{s}` in basepoint")))
}

pub fn parse_transform(text: &str) -> Result<PointTransformation> {
    let mut raw = read_file(text)?;
    raw.expect_kind(FileKind::Transform)?;
    // Jets are accepted by the parser so the transformation reports them.
    let x = raw.expr("X", true)?;
    let y = (1..=raw.m)
        .map(|j| raw.expr(&format!("Y{j}"), true))
        .collect::<Result<Vec<_>>>()?;
    let base = match raw.entries.remove("basepoint") {
        Some(e) => Some(e.text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    raw.finish()?;
    PointTransformation::new(x, y, base)
}

pub fn parse_vector_field(text: &str) -> Result<VectorField> {
    let mut raw = read_file(text)?;
    raw.expect_kind(FileKind::VectorField)?;
    let x = raw.expr("X", false)?;
    let y = (1..=raw.m)
        .map(|j| raw.expr(&format!("Y{j}"), false))
        .collect::<Result<Vec<_>>>()?;
    raw.finish()?;
    VectorField::new(x, y)
}

/// Which kind of file `text` claims to be, judging by its header.
pub fn file_kind(text: &str) -> Option<FileKind> {
    lines(text)
        .find(|(_, l)| !l.trim().is_empty())
        .and_then(|(_, l)| parse_header(l))
        .map(|(k, _)| k)
}

pub fn canonical_string(f: &RationalFunction) -> String {
    f.to_string()
}

pub fn system_to_string(sys: &OdeSystem) -> String {
    let mut out = format!("system m={}\n", sys.m());
    for (j, f) in sys.rhs().iter().enumerate() {
        let _ = writeln!(out, "F{} = {}", j + 1, f);
    }
    out
}

pub fn transform_to_string(t: &PointTransformation) -> String {
    let mut out = format!("transform m={}\nX = {}\n", t.m(), t.x());
    for j in 1..=t.m() {
        let _ = writeln!(out, "Y{j} = {}", t.y(j));
    }
    let base: Vec<String> = t.base_point().iter().map(|q| q.to_string()).collect();
    let _ = writeln!(out, "basepoint = {}", base.join(", "));
    out
}

pub fn vector_field_to_string(v: &VectorField) -> String {
    let mut out = format!("vectorfield m={}\nX = {}\n", v.m(), v.x());
    for j in 1..=v.m() {
        let _ = writeln!(out, "Y{j} = {}", v.y(j));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VariableId;

    #[test]
    fn flat_system() {
        let sys = parse_system("system m=1\nF1 = 0\n").unwrap();
        assert_eq!(sys, OdeSystem::flat(1));
        assert_eq!(system_to_string(&sys), "system m=1\nF1 = 0\n");
    }

    #[test]
    fn comments_crlf_and_spacing() {
        let text = "# a comment\r\n\r\n  system   m = 2 \r\nF2 = yx2 # trailing\r\nF1=y1\r\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(sys.f(1).to_string(), "y1");
        assert_eq!(sys.f(2).to_string(), "yx2");
    }

    #[test]
    fn jet_in_denominator() {
        assert_eq!(
            parse_system("system m=1\nF1 = 1/(yx1)\n"),
            Err(Error::JetInDenominator("F1".into()))
        );
        // Division that cancels is fine.
        let sys = parse_system("system m=1\nF1 = yx1^2*(1+yx1)/(1+yx1)\n").unwrap();
        assert_eq!(sys.f(1).to_string(), "yx1^2");
    }

    #[test]
    fn transform_files() {
        let t = parse_transform("transform m=1\nX = x\nY1 = y1 + x^2\n").unwrap();
        assert_eq!(t.jacobian_delta().to_string(), "1");
        assert_eq!(
            parse_transform("transform m=1\nX = x\nY1 = yx1\n"),
            Err(Error::JetInTransform("Y1".into()))
        );
        assert_eq!(
            parse_transform("transform m=1\nX = x\nY1 = y1^2\n"),
            Err(Error::SingularJacobianAtBasePoint)
        );
        let t = parse_transform("transform m=1\nX = x\nY1 = y1^2\nbasepoint = 0, -3/2\n").unwrap();
        assert_eq!(t.base_point()[1], Q::new(-3, 2));
        let again = parse_transform(&transform_to_string(&t)).unwrap();
        assert_eq!(again.y(1), t.y(1));
        assert!(matches!(
            parse_transform("transform m=1\nX = x\nY1 = y1\nbasepoint = 0\n"),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn vector_fields() {
        let v = parse_vector_field("vectorfield m=1\nX = x^2\nY1 = x*y1\n").unwrap();
        assert_eq!(v.x(), &RationalFunction::var(VariableId::Base).pow(2).unwrap());
        assert_eq!(
            parse_vector_field("vectorfield m=1\nX = yx1\nY1 = 0\n"),
            Err(Error::JetNotAllowed("yx1".into()))
        );
        assert_eq!(vector_field_to_string(&v), "vectorfield m=1\nX = x^2\nY1 = x*y1\n");
    }

    #[test]
    fn malformed_files() {
        let bad = [
            "",
            "F1 = 0",
            "system m=0\n",
            "system m=x\n",
            "system m=1\n",
            "system m=1\nF1 = 0\nF1 = 1\n",
            "system m=1\nF1 = 0\nF2 = 0\n",
            "system m=1\nF1 0\n",
            "transform m=1\nF1 = 0\n",
        ];
        for text in bad {
            assert!(parse_system(text).is_err(), "{text:?}");
        }
        match parse_system("system m=1\nF1 = x +\n") {
            Err(Error::SyntaxError { pos, .. }) => assert_eq!(pos, 19),
            other => panic!("{other:?}"),
        }
    }
}
