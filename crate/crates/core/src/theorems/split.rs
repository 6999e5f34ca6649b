//! Splitting `M = [#_{j≤m} X_j] # N` and the side conditions on `N`.

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::surfaces::standard_catalog;
use crate::topo::{ManifoldBlock, SumExpression, Summand, Tri};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub m: usize,
    pub surfaces: Vec<ManifoldBlock>,
    /// `N`; `S4` when nothing is left over.
    pub rest: SumExpression,
}

impl Split {
    pub fn c1_sum(&self) -> Option<i64> {
        self.surfaces.iter().map(|b| b.c1_squared).sum()
    }
}

fn sphere(catalog: &Catalog) -> ManifoldBlock {
    catalog.get("S4").cloned().unwrap_or_else(|| {
        standard_catalog()
            .into_iter()
            .find(|e| e.block.name == "S4")
            .map(|e| e.block)
            .expect("S4 is a standard block")
    })
}

/// Removes `prefix` (as a multiset of unreversed summands) from `expr`.
fn remove_prefix(expr: &SumExpression, prefix: &[ManifoldBlock]) -> Option<Vec<Summand>> {
    let mut left: Vec<Summand> = expr.summands().to_vec();
    for b in prefix {
        let slot = left.iter_mut().find(|s| !s.reversed && s.block == *b && s.multiplicity > 0)?;
        slot.multiplicity -= 1;
    }
    Some(left.into_iter().filter(|s| s.multiplicity > 0).collect())
}

/// Splits off the first `m` witness blocks. With `m = None` the largest
/// `m <= 4` whose prefix occurs in `expr` is used.
pub fn split_expression(
    expr: &SumExpression,
    witness: &[ManifoldBlock],
    m: Option<usize>,
    catalog: &Catalog,
) -> Result<Split> {
    if witness.len() != 4 {
        return Err(Error::MalformedSplit(format!("witness has {} blocks, need 4", witness.len())));
    }
    let candidates: Vec<usize> = match m {
        Some(m) if (1..=4).contains(&m) => vec![m],
        Some(m) => return Err(Error::OutOfRange(format!("m = {m}"))),
        None => (1..=4).rev().collect(),
    };
    for m in candidates {
        let prefix = &witness[..m];
        if let Some(rest) = remove_prefix(expr, prefix) {
            let rest = if rest.is_empty() {
                SumExpression::single(sphere(catalog))
            } else {
                SumExpression::new(rest)?
            };
            return Ok(Split { m, surfaces: prefix.to_vec(), rest });
        }
    }
    Err(Error::MalformedSplit(format!(
        "no prefix of the witness ({}) occurs among the unreversed summands of {expr}",
        witness.iter().map(|b| b.name.as_str()).collect::<Vec<_>>().join(", ")
    )))
}

fn is_catalog_block(catalog: &Catalog, s: &Summand, names: &[&str]) -> bool {
    !s.reversed && names.contains(&s.block.name.as_str()) && catalog.get(&s.block.name) == Some(&s.block)
}

/// `(k, ℓ)` when `N = k CP2bar # ℓ (S1xS3)`, allowing `S4` summands.
pub fn asd_family_form(n: &SumExpression, catalog: &Catalog) -> Option<(u32, u32)> {
    let (mut k, mut l) = (0, 0);
    for s in n.summands() {
        if !is_catalog_block(catalog, s, &["S4", "CP2bar", "S1xS3"]) {
            return None;
        }
        match s.block.name.as_str() {
            "CP2bar" => k += s.multiplicity,
            "S1xS3" => l += s.multiplicity,
            _ => {}
        }
    }
    Some((k, l))
}

/// Whether `N` admits an anti-self-dual metric of positive scalar curvature: the
/// block's own flag for a single summand, `yes` on the family `k CP2bar # ℓ (S1xS3)`.
pub fn rest_admits_asd_psc(n: &SumExpression, catalog: &Catalog) -> Tri {
    if n.count() == 1 {
        return n.summands()[0].oriented_block().flags.admits_asd_psc;
    }
    if asd_family_form(n, catalog).is_some() {
        return Tri::Yes;
    }
    Tri::Unknown
}

/// Surface summands for witness completion: unreversed blocks with `b₁ = 0`,
/// recorded `c₁²`, and a minimal or Seiberg-Witten flag, repeated by multiplicity.
pub fn surface_summands(expr: &SumExpression) -> Vec<ManifoldBlock> {
    let mut out = Vec::new();
    for s in expr.summands() {
        let b = &s.block;
        let gauge = b.flags.minimal_complex_surface.is_yes() || b.flags.sw_mod2_nonzero.is_yes();
        if !s.reversed && b.betti.b1 == 0 && b.betti.b_plus % 4 == 3 && b.c1_squared.is_some() && gauge {
            out.extend(std::iter::repeat(b.clone()).take(s.multiplicity as usize));
        }
    }
    out
}
