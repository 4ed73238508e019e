//! Sectioned reference data with a checksum header.
//!
//! Each file starts with `# sha256 <hex>` covering the rest of the file,
//! followed by sections introduced by `@ key`. Blank lines are ignored.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use sha2::{Digest, Sha256};

use crate::chow::{ChowClass, ChowRing};
use crate::error::{Error, Result};
use crate::exactpoly::{parse_poly, Poly, RingSpec};

/// File names and contents shipped with the crate.
pub const EMBEDDED: [(&str, &str); 3] = [
    ("presentations.txt", include_str!("../../fixtures/presentations.txt")),
    ("chern_m.txt", include_str!("../../fixtures/chern_m.txt")),
    ("table1.txt", include_str!("../../fixtures/table1.txt")),
];

/// One cell of the Euler-characteristic table; `None` where the table is blank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub value: Option<i64>,
    /// Printed in grey: vanishing does not apply, the value is only `χ`.
    pub grey: bool,
}

#[derive(Clone, Debug, Default)]
pub struct FixtureSet {
    sections: BTreeMap<String, Vec<String>>,
}

fn checksum(body: &str) -> String {
    let mut h = Sha256::new();
    h.update(body.trim_end_matches('\n').as_bytes());
    h.update(b"\n");
    hex::encode(h.finalize())
}

/// Replaces whole identifiers according to `aliases`.
pub(crate) fn rename(text: &str, aliases: &[(&str, &str)]) -> String {
    let mut out = String::with_capacity(text.len());
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        match aliases.iter().find(|(from, _)| *from == word.as_str()) {
            Some((_, to)) => out.push_str(to),
            None => out.push_str(word),
        }
        word.clear();
    };
    for ch in text.chars() {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            word.push(ch);
        } else {
            flush(&mut word, &mut out);
            out.push(ch);
        }
    }
    flush(&mut word, &mut out);
    out
}

impl FixtureSet {
    /// The copies compiled into the crate.
    pub fn embedded() -> Result<Self> {
        Self::from_texts(EMBEDDED.iter().copied())
    }

    /// Parses and checksums every file; later files may not redefine keys.
    pub fn from_texts<'a>(files: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut set = FixtureSet::default();
        for (name, text) in files {
            let (header, body) = text.split_once('\n').unwrap_or((text, ""));
            let expected = header
                .strip_prefix("# sha256 ")
                .ok_or_else(|| Error::Fixture(format!("{name}: missing checksum line")))?
                .trim();
            let actual = checksum(body);
            if expected != actual {
                return Err(Error::Fixture(format!("{name}: checksum mismatch (header {expected}, content {actual})")));
            }
            let mut current: Option<String> = None;
            for line in body.lines() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                if let Some(key) = line.strip_prefix("@ ") {
                    let key = key.trim().to_string();
                    if set.sections.contains_key(&key) {
                        return Err(Error::Fixture(format!("{name}: duplicate section `{key}`")));
                    }
                    set.sections.insert(key.clone(), Vec::new());
                    current = Some(key);
                } else {
                    let key = current.as_ref().ok_or_else(|| Error::Fixture(format!("{name}: data before first section")))?;
                    set.sections.get_mut(key).expect("section exists").push(line.to_string());
                }
            }
        }
        Ok(set)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.sections.keys().map(String::as_str)
    }

    pub fn lines(&self, key: &str) -> Result<&[String]> {
        self.sections.get(key).map(Vec::as_slice).ok_or_else(|| Error::Fixture(format!("missing section `{key}`")))
    }

    pub fn line(&self, key: &str) -> Result<&str> {
        match self.lines(key)? {
            [one] => Ok(one),
            other => Err(Error::Fixture(format!("section `{key}` has {} lines, expected 1", other.len()))),
        }
    }

    /// `name:weight` pairs separated by spaces.
    pub fn spec(&self, key: &str) -> Result<Arc<RingSpec>> {
        let vars: Vec<(String, u32)> = self
            .line(key)?
            .split_whitespace()
            .map(|v| {
                let (n, w) = v.split_once(':').ok_or_else(|| Error::Fixture(format!("bad variable `{v}` in `{key}`")))?;
                let w = w.parse().map_err(|_| Error::Fixture(format!("bad weight `{w}` in `{key}`")))?;
                Ok((n.to_string(), w))
            })
            .collect::<Result<_>>()?;
        RingSpec::graded(&vars)
    }

    pub fn polys(&self, key: &str, spec: &Arc<RingSpec>) -> Result<Vec<Poly>> {
        self.polys_with(key, spec, &[])
    }

    /// As [`Self::polys`], renaming identifiers first (e.g. `xi` ↦ `(k - h)`).
    pub fn polys_with(&self, key: &str, spec: &Arc<RingSpec>, aliases: &[(&str, &str)]) -> Result<Vec<Poly>> {
        self.lines(key)?.iter().map(|l| parse_poly(&rename(l, aliases), spec)).collect()
    }

    pub fn poly(&self, key: &str, spec: &Arc<RingSpec>) -> Result<Poly> {
        self.poly_with(key, spec, &[])
    }

    pub fn poly_with(&self, key: &str, spec: &Arc<RingSpec>, aliases: &[(&str, &str)]) -> Result<Poly> {
        parse_poly(&rename(self.line(key)?, aliases), spec)
    }

    pub fn class(&self, key: &str, ring: &Arc<ChowRing>) -> Result<ChowClass> {
        self.class_with(key, ring, &[])
    }

    pub fn class_with(&self, key: &str, ring: &Arc<ChowRing>, aliases: &[(&str, &str)]) -> Result<ChowClass> {
        ring.class(&self.poly_with(key, ring.spec(), aliases)?)
    }

    /// Sum of the lines of a section, read as classes.
    pub fn class_sum(&self, key: &str, ring: &Arc<ChowRing>) -> Result<ChowClass> {
        let mut acc = ring.zero();
        for p in self.polys(key, ring.spec())? {
            acc = &acc + &ring.class(&p)?;
        }
        Ok(acc)
    }

    /// One comma-separated integer list.
    pub fn ints(&self, key: &str) -> Result<Vec<i64>> {
        self.lines(key)?
            .join(",")
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::Fixture(format!("bad integer `{t}` in `{key}`"))))
            .collect()
    }

    /// Lines of comma-separated integers.
    pub fn int_rows(&self, key: &str) -> Result<Vec<Vec<i64>>> {
        self.lines(key)?
            .iter()
            .map(|l| {
                l.split(',')
                    .map(|t| t.trim().parse().map_err(|_| Error::Fixture(format!("bad integer `{t}` in `{key}`"))))
                    .collect()
            })
            .collect()
    }

    /// `name -> text` lines, in order.
    pub fn images(&self, key: &str) -> Result<Vec<(String, String)>> {
        self.pairs(key, "->")
    }

    /// `name: text` lines, in order.
    pub fn entries(&self, key: &str) -> Result<Vec<(String, String)>> {
        self.pairs(key, ":")
    }

    fn pairs(&self, key: &str, sep: &str) -> Result<Vec<(String, String)>> {
        self.lines(key)?
            .iter()
            .map(|l| {
                let (a, b) = l.split_once(sep).ok_or_else(|| Error::Fixture(format!("expected `{sep}` in `{key}`: {l}")))?;
                Ok((a.trim().to_string(), b.trim().to_string()))
            })
            .collect()
    }

    /// Value of `name: n` in the `euler` section.
    pub fn euler(&self, name: &str) -> Result<i64> {
        let (_, v) = self
            .entries("euler")?
            .into_iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::Fixture(format!("no Euler number for `{name}`")))?;
        v.parse().map_err(|_| Error::Fixture(format!("bad Euler number `{v}`")))
    }

    /// Table rows keyed by `m`; `*` marks grey cells, empty cells are blank.
    pub fn table(&self, key: &str) -> Result<BTreeMap<i64, Vec<TableCell>>> {
        let mut out = BTreeMap::new();
        for (m, row) in self.entries(key)? {
            let m: i64 = m.parse().map_err(|_| Error::Fixture(format!("bad row label `{m}`")))?;
            let cells = row
                .split(',')
                .map(|c| {
                    let c = c.trim();
                    let grey = c.ends_with('*');
                    let c = c.trim_end_matches('*');
                    let value = if c.is_empty() {
                        None
                    } else {
                        Some(c.parse().map_err(|_| Error::Fixture(format!("bad table entry `{c}`")))?)
                    };
                    Ok(TableCell { value, grey })
                })
                .collect::<Result<_>>()?;
            out.insert(m, cells);
        }
        Ok(out)
    }
}
