//! Block catalogs: the built-in table, user catalog files, and dissolve annotations.
//!
//! Catalog files are line oriented. Blank lines and `#` comments are ignored.
//!
//! ```text
//! block G b1=0 b_plus=11 b_minus=43 c1_squared=16 spin=yes symplectic=yes ; manual entry
//! dissolve DC8 cp2=44 cp2bar=44 ; DC8 # rev(DC8) is diffeomorphic to 44 CP2 # 44 CP2bar
//! ```
//!
//! Everything after `;` is provenance text. Flags default to `unknown`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surfaces::{
    double_cover_cp2, double_cover_name, hypersurface_cp3, hypersurface_name, standard_catalog,
    CatalogEntry, Construction,
};
use crate::topo::{BettiData, FlagKind, ManifoldBlock, Tri};

/// `block # rev(block)` is diffeomorphic to `cp2 CP2 # cp2bar CP2bar`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DissolveAnnotation {
    pub block: String,
    pub cp2: u32,
    pub cp2bar: u32,
    pub note: String,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
    dissolves: Vec<DissolveAnnotation>,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Catalog {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The standard blocks plus the octic cover's dissolve annotation.
    pub fn builtin() -> Self {
        let mut cat = Self::empty();
        for entry in standard_catalog() {
            cat.insert(entry).expect("built-in names are distinct");
        }
        cat.add_dissolve(DissolveAnnotation {
            block: "DC8".into(),
            cp2: 44,
            cp2bar: 44,
            note: "branched cover of CP2 without 1- or 3-handles; the non-spin sum with its \
                   reverse dissolves"
                .into(),
        })
        .expect("DC8 is present");
        cat
    }

    pub fn insert(&mut self, entry: CatalogEntry) -> Result<()> {
        let name = entry.block.name.clone();
        if !is_valid_name(&name) {
            return Err(Error::InvalidBlock { name, reason: "not a valid block name".into() });
        }
        if self.entries.contains_key(&name) {
            return Err(Error::NameCollision(name));
        }
        entry.block.validate()?;
        self.entries.insert(name, entry);
        Ok(())
    }

    pub fn add_dissolve(&mut self, ann: DissolveAnnotation) -> Result<()> {
        let block = self.get(&ann.block).ok_or_else(|| Error::UnknownBlock(ann.block.clone()))?;
        let b = block.betti;
        // X # rev(X) has b₊ = b₋ = b₂(X) and b₁ = 2 b₁(X).
        if b.b1 != 0 || ann.cp2 != b.b2() || ann.cp2bar != b.b2() {
            return Err(Error::InvalidBlock {
                name: ann.block.clone(),
                reason: format!(
                    "dissolve target {} CP2 # {} CP2bar does not match the Betti data of the double",
                    ann.cp2, ann.cp2bar
                ),
            });
        }
        if self.dissolves.iter().any(|d| d.block == ann.block) {
            return Err(Error::NameCollision(format!("dissolve annotation for {}", ann.block)));
        }
        self.dissolves.push(ann);
        Ok(())
    }

    /// Merges a user catalog over this one. Any shared name is an error.
    pub fn merge(&mut self, other: Catalog) -> Result<()> {
        for entry in other.entries.into_values() {
            self.insert(entry)?;
        }
        for ann in other.dissolves {
            self.add_dissolve(ann)?;
        }
        Ok(())
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.get(name)
    }

    pub fn get(&self, name: &str) -> Option<&ManifoldBlock> {
        self.entries.get(name).map(|e| &e.block)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn dissolves(&self) -> &[DissolveAnnotation] {
        &self.dissolves
    }

    pub fn dissolve_for(&self, block: &str) -> Option<&DissolveAnnotation> {
        self.dissolves.iter().find(|d| d.block == block)
    }

    /// Resolves a constructor call such as `DC(4)` or `HS(5)`. A construction that is
    /// already catalogued (`HS(4)` is `K3`) resolves to the catalog entry.
    pub fn construct(&self, name: &str, args: &[u32]) -> Result<ManifoldBlock> {
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::UnsupportedParameter(format!(
                    "{name} takes {n} argument(s), got {}",
                    args.len()
                )))
            }
        };
        let block = match name {
            "DC" | "double_cover_cp2" => {
                arity(1)?;
                match self.constructed(&Construction::DoubleCoverCp2 { k: args[0] }, &double_cover_name(args[0])) {
                    Some(b) => b.clone(),
                    None => double_cover_cp2(args[0])?,
                }
            }
            "HS" | "hypersurface_cp3" => {
                arity(1)?;
                match self.constructed(&Construction::HypersurfaceCp3 { d: args[0] }, &hypersurface_name(args[0])) {
                    Some(b) => b.clone(),
                    None => hypersurface_cp3(args[0])?,
                }
            }
            _ => return Err(Error::UnknownBlock(format!("{name}(...)"))),
        };
        Ok(block)
    }

    /// A catalogued block recorded with this construction, else the block named `canonical`.
    fn constructed(&self, construction: &Construction, canonical: &str) -> Option<&ManifoldBlock> {
        self.entries
            .values()
            .find(|e| e.construction == *construction)
            .map(|e| &e.block)
            .or_else(|| self.get(canonical))
    }

    pub fn is_constructor(name: &str) -> bool {
        matches!(name, "DC" | "double_cover_cp2" | "HS" | "hypersurface_cp3")
    }

    pub fn parse_text(text: &str) -> Result<Catalog> {
        let mut cat = Catalog::empty();
        let mut pending_dissolves = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let syntax = |reason: String| Error::CatalogSyntax { line: line_no, reason };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (body, provenance) = match line.split_once(';') {
                Some((b, p)) => (b.trim(), p.trim().to_string()),
                None => (line, String::new()),
            };
            let mut tokens = body.split_whitespace();
            let kind = tokens.next().unwrap_or_default();
            let name = tokens.next().ok_or_else(|| syntax("missing name".into()))?;
            if !is_valid_name(name) {
                return Err(syntax(format!("invalid name `{name}`")));
            }
            let mut fields = BTreeMap::new();
            for tok in tokens {
                let (k, v) = tok
                    .split_once('=')
                    .ok_or_else(|| syntax(format!("expected key=value, got `{tok}`")))?;
                if fields.insert(k, v).is_some() {
                    return Err(syntax(format!("duplicate key `{k}`")));
                }
            }
            match kind {
                "block" => {
                    let entry = parse_block(name, &fields, provenance).map_err(syntax)?;
                    cat.insert(entry).map_err(|e| match e {
                        Error::NameCollision(_) => e,
                        other => syntax(other.to_string()),
                    })?;
                }
                "dissolve" => {
                    let int = |k: &str| -> std::result::Result<u32, String> {
                        fields
                            .get(k)
                            .ok_or_else(|| format!("missing `{k}`"))?
                            .parse()
                            .map_err(|_| format!("`{k}` must be a non-negative integer"))
                    };
                    if let Some(extra) = fields.keys().find(|k| !matches!(**k, "cp2" | "cp2bar")) {
                        return Err(syntax(format!("unknown key `{extra}`")));
                    }
                    let ann = DissolveAnnotation {
                        block: name.to_string(),
                        cp2: int("cp2").map_err(syntax)?,
                        cp2bar: int("cp2bar").map_err(syntax)?,
                        note: provenance,
                    };
                    pending_dissolves.push(ann);
                }
                other => return Err(syntax(format!("unknown record kind `{other}`"))),
            }
        }
        // Annotations may refer to built-in blocks, so they are validated on merge.
        cat.dissolves = pending_dissolves;
        Ok(cat)
    }

    /// Renders blocks and annotations in the catalog file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in self.entries.values() {
            out.push_str(&block_line(&e.block));
            out.push('\n');
        }
        for d in &self.dissolves {
            let _ = write!(out, "dissolve {} cp2={} cp2bar={}", d.block, d.cp2, d.cp2bar);
            if !d.note.is_empty() {
                let _ = write!(out, " ; {}", d.note);
            }
            out.push('\n');
        }
        out
    }
}

fn parse_block(
    name: &str,
    fields: &BTreeMap<&str, &str>,
    provenance: String,
) -> std::result::Result<CatalogEntry, String> {
    let uint = |k: &str| -> std::result::Result<u32, String> {
        fields
            .get(k)
            .ok_or_else(|| format!("missing `{k}`"))?
            .parse()
            .map_err(|_| format!("`{k}` must be a non-negative integer"))
    };
    let betti = BettiData::new(uint("b1")?, uint("b_plus")?, uint("b_minus")?);
    let mut block = ManifoldBlock::new(name, betti).with_provenance(provenance);
    for (key, value) in fields {
        match *key {
            "b1" | "b_plus" | "b_minus" => {}
            "c1_squared" => {
                let c: i64 = value.parse().map_err(|_| "`c1_squared` must be an integer".to_string())?;
                block.c1_squared = Some(c);
            }
            k => {
                let flag = FlagKind::from_key(k).ok_or_else(|| format!("unknown key `{k}`"))?;
                let t = Tri::parse(value).ok_or_else(|| format!("`{k}` must be yes, no or unknown"))?;
                block.flags.set(flag, t);
            }
        }
    }
    Ok(CatalogEntry {
        block,
        construction: Construction::User,
        citation_note: String::new(),
        yamabe: None,
    })
}

pub fn block_line(b: &ManifoldBlock) -> String {
    let mut line = format!(
        "block {} b1={} b_plus={} b_minus={}",
        b.name, b.betti.b1, b.betti.b_plus, b.betti.b_minus
    );
    if let Some(c) = b.c1_squared {
        let _ = write!(line, " c1_squared={c}");
    }
    for kind in FlagKind::ALL {
        let t = b.flags.get(kind);
        if t != Tri::Unknown {
            let _ = write!(line, " {}={}", kind.key(), t);
        }
    }
    if !b.provenance.is_empty() {
        let _ = write!(line, " ; {}", b.provenance);
    }
    line
}
