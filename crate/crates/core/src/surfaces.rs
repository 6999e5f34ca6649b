//! Parametric complex surfaces and the built-in block catalog.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::topo::{BettiData, FlagKind, ManifoldBlock, Tri};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// Double cover of CP² branched over a smooth curve of degree `2k`.
    DoubleCoverCp2 { k: u32 },
    /// Smooth hypersurface of degree `d` in CP³.
    HypersurfaceCp3 { d: u32 },
    Standard { description: String },
    User,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub block: ManifoldBlock,
    pub construction: Construction,
    pub citation_note: String,
    /// Known Yamabe constant, when one is recorded.
    pub yamabe: Option<ExactReal>,
}

/// Characteristic numbers of a simply connected complex surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceNumbers {
    pub c1_squared: i64,
    pub euler: i64,
    pub signature: i64,
    pub p_g: i64,
    pub b_plus: i64,
    pub b_minus: i64,
}

impl SurfaceNumbers {
    /// Checks `c1² = 2χ + 3τ`, `b₊ = 2p_g + 1`, `χ_h = (χ + τ)/4 = p_g + 1`
    /// and `χ = 2 + b₊ + b₋`.
    pub fn check(&self) -> Result<()> {
        let ok = self.c1_squared == 2 * self.euler + 3 * self.signature
            && self.b_plus == 2 * self.p_g + 1
            && (self.euler + self.signature) == 4 * (self.p_g + 1)
            && self.euler == 2 + self.b_plus + self.b_minus
            && self.signature == self.b_plus - self.b_minus
            && self.b_minus >= 0;
        if ok {
            Ok(())
        } else {
            Err(Error::Internal(format!("inconsistent surface numbers {self:?}")))
        }
    }

    fn betti(&self) -> BettiData {
        BettiData::new(0, self.b_plus as u32, self.b_minus as u32)
    }
}

pub fn double_cover_numbers(k: u32) -> Result<SurfaceNumbers> {
    if k < 3 {
        return Err(Error::UnsupportedParameter(format!(
            "double cover of CP2 needs k >= 3 (branch degree 2k), got k = {k}"
        )));
    }
    let k = k as i64;
    let c1_squared = 2 * (k - 3) * (k - 3);
    let euler = 4 + (2 * k - 1) * (2 * k - 2);
    let signature = (c1_squared - 2 * euler) / 3;
    let p_g = (k - 1) * (k - 2) / 2;
    let b_plus = 2 * p_g + 1;
    let b_minus = b_plus - signature;
    let numbers = SurfaceNumbers { c1_squared, euler, signature, p_g, b_plus, b_minus };
    numbers.check()?;
    Ok(numbers)
}

pub fn hypersurface_numbers(d: u32) -> Result<SurfaceNumbers> {
    if d < 1 {
        return Err(Error::UnsupportedParameter("hypersurface degree must be >= 1".into()));
    }
    let d = d as i64;
    let c1_squared = d * (d - 4) * (d - 4);
    let euler = d * d * d - 4 * d * d + 6 * d;
    let signature = -d * (d * d - 4) / 3;
    let p_g = (d - 1) * (d - 2) * (d - 3) / 6;
    let b_plus = 2 * p_g + 1;
    let b_minus = euler - 2 - b_plus;
    let numbers = SurfaceNumbers { c1_squared, euler, signature, p_g, b_plus, b_minus };
    numbers.check()?;
    Ok(numbers)
}

/// Name given to the double cover with branch degree `2k`.
pub fn double_cover_name(k: u32) -> String {
    format!("DC{}", 2 * k)
}

pub fn hypersurface_name(d: u32) -> String {
    format!("HS{d}")
}

/// Double cover of CP² branched over a smooth curve of degree `2k`, `k >= 3`.
pub fn double_cover_cp2(k: u32) -> Result<ManifoldBlock> {
    let n = double_cover_numbers(k)?;
    let spin = if k % 2 == 1 { Tri::Yes } else { Tri::No };
    let nonneg = if k == 3 { Tri::Yes } else { Tri::No };
    let block = ManifoldBlock::new(double_cover_name(k), n.betti())
        .with_c1_squared(n.c1_squared)
        .with_flag(FlagKind::MinimalComplexSurface, Tri::Yes)
        .with_flag(FlagKind::Symplectic, Tri::Yes)
        .with_flag(FlagKind::SwMod2Nonzero, Tri::Yes)
        .with_flag(FlagKind::Spin, spin)
        .with_flag(FlagKind::AdmitsPsc, Tri::No)
        .with_flag(FlagKind::AdmitsNonnegScalar, nonneg)
        .with_flag(FlagKind::AdmitsAsdPsc, Tri::No)
        .with_provenance(format!(
            "double cover of CP2 branched over a smooth curve of degree {}; K = ({})H pulled back, \
             minimal Kaehler with b+ > 1 so the mod-2 SW invariant is nonzero; no psc since c1 is \
             a monopole class (Lichnerowicz when c1 = 0); spin iff K is even (k odd); \
             Rokhlin lint is external knowledge",
            2 * k,
            k as i64 - 3
        ));
    block.validate()?;
    Ok(block)
}

/// Smooth degree-`d` hypersurface in CP³.
pub fn hypersurface_cp3(d: u32) -> Result<ManifoldBlock> {
    let n = hypersurface_numbers(d)?;
    let spin = if d % 2 == 0 { Tri::Yes } else { Tri::No };
    let general = d >= 4;
    let (minimal, psc, nonneg, sw) = match d {
        1 | 2 => (Tri::Yes, Tri::Yes, Tri::Yes, Tri::Unknown),
        3 => (Tri::No, Tri::Yes, Tri::Yes, Tri::Unknown),
        4 => (Tri::Yes, Tri::No, Tri::Yes, Tri::Yes),
        _ => (Tri::Yes, Tri::No, Tri::No, Tri::Yes),
    };
    let block = ManifoldBlock::new(hypersurface_name(d), n.betti())
        .with_c1_squared(n.c1_squared)
        .with_flag(FlagKind::MinimalComplexSurface, minimal)
        .with_flag(FlagKind::Symplectic, Tri::Yes)
        .with_flag(FlagKind::SwMod2Nonzero, sw)
        .with_flag(FlagKind::Spin, spin)
        .with_flag(FlagKind::AdmitsPsc, psc)
        .with_flag(FlagKind::AdmitsNonnegScalar, nonneg)
        .with_flag(FlagKind::AdmitsAsdPsc, if n.b_plus == 0 { Tri::Unknown } else { Tri::No })
        .with_provenance(if general {
            format!("degree {d} hypersurface in CP3; K = ({})H nef, so minimal with b+ > 1", d as i64 - 4)
        } else {
            format!("degree {d} hypersurface in CP3; rational surface")
        });
    block.validate()?;
    Ok(block)
}

fn standard(name: &str, betti: BettiData, description: &str) -> ManifoldBlock {
    ManifoldBlock::new(name, betti).with_provenance(description)
}

fn psc_block(block: ManifoldBlock) -> ManifoldBlock {
    block
        .with_flag(FlagKind::AdmitsPsc, Tri::Yes)
        .with_flag(FlagKind::AdmitsNonnegScalar, Tri::Yes)
}

/// The built-in catalog: S4, CP2, CP2bar, S1xS3, K3 and the octic double cover DC8.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let y_cp2 = ExactReal::from_parts(12, 1, 1, 2).expect("static value");
    let y_s4 = ExactReal::from_parts(8, 1, 1, 6).expect("static value");

    let s4 = psc_block(standard("S4", BettiData::new(0, 0, 0), "round metric: conformally flat, s > 0"))
        .with_flag(FlagKind::Spin, Tri::Yes)
        .with_flag(FlagKind::AdmitsAsdPsc, Tri::Yes)
        .with_flag(FlagKind::MinimalComplexSurface, Tri::No)
        .with_flag(FlagKind::Symplectic, Tri::No);

    let cp2 = psc_block(standard("CP2", BettiData::new(0, 1, 0), "Fubini-Study metric: Kaehler-Einstein, s > 0"))
        .with_c1_squared(9)
        .with_flag(FlagKind::MinimalComplexSurface, Tri::Yes)
        .with_flag(FlagKind::Symplectic, Tri::Yes)
        .with_flag(FlagKind::Spin, Tri::No)
        .with_flag(FlagKind::AdmitsAsdPsc, Tri::No);

    let cp2bar = psc_block(standard(
        "CP2bar",
        BettiData::new(0, 0, 1),
        "reversed Fubini-Study metric: anti-self-dual, s > 0",
    ))
    .with_flag(FlagKind::Spin, Tri::No)
    .with_flag(FlagKind::AdmitsAsdPsc, Tri::Yes);

    let s1s3 = psc_block(standard(
        "S1xS3",
        BettiData::new(1, 0, 0),
        "product metric: conformally flat, s > 0",
    ))
    .with_flag(FlagKind::Spin, Tri::Yes)
    .with_flag(FlagKind::AdmitsAsdPsc, Tri::Yes)
    .with_flag(FlagKind::MinimalComplexSurface, Tri::No);

    let mut k3 = hypersurface_cp3(4).expect("static parameter");
    k3.name = "K3".into();
    k3.provenance = "K3 surface (quartic in CP3): Ricci-flat Kaehler, spin, SW invariant 1, \
                     no psc by the Lichnerowicz argument"
        .into();

    let dc8 = double_cover_cp2(4).expect("static parameter");

    vec![
        CatalogEntry {
            block: s4,
            construction: Construction::Standard { description: "4-sphere".into() },
            citation_note: "Yamabe constant of the round sphere".into(),
            yamabe: Some(y_s4),
        },
        CatalogEntry {
            block: cp2,
            construction: Construction::Standard { description: "complex projective plane".into() },
            citation_note: "Yamabe constant attained by the Fubini-Study metric".into(),
            yamabe: Some(y_cp2.clone()),
        },
        CatalogEntry {
            block: cp2bar,
            construction: Construction::Standard {
                description: "complex projective plane, reversed orientation".into(),
            },
            citation_note: "same Yamabe constant as CP2".into(),
            yamabe: Some(y_cp2),
        },
        CatalogEntry {
            block: s1s3,
            construction: Construction::Standard { description: "S1 x S3".into() },
            citation_note: "admits anti-self-dual metrics of positive scalar curvature".into(),
            yamabe: None,
        },
        CatalogEntry {
            block: k3,
            construction: Construction::HypersurfaceCp3 { d: 4 },
            citation_note: "quartic surface".into(),
            yamabe: None,
        },
        CatalogEntry {
            block: dc8,
            construction: Construction::DoubleCoverCp2 { k: 4 },
            citation_note: "double cover of CP2 branched over a smooth octic: p_g = 3, c1^2 = 2".into(),
            yamabe: None,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: from (c1², p_g) alone, solve
    /// c1² = 2χ + 3τ, χ = 2 + b₊ + b₋, τ = b₊ − b₋, b₊ = 2p_g + 1.
    fn solve_from_c1_and_pg(c1_squared: i64, p_g: i64) -> (i64, i64, i64) {
        let b_plus = 2 * p_g + 1;
        // c1² = 2(2 + b₊ + b₋) + 3(b₊ − b₋) = 4 + 5b₊ − b₋
        let b_minus = 4 + 5 * b_plus - c1_squared;
        (2 + b_plus + b_minus, b_plus - b_minus, b_minus)
    }

    #[test]
    fn octic_double_cover() {
        let n = double_cover_numbers(4).unwrap();
        assert_eq!((n.c1_squared, n.p_g, n.b_plus), (2, 3, 7));
        assert_eq!(solve_from_c1_and_pg(2, 3), (46, -30, 37));
        assert_eq!((n.euler, n.signature, n.b_minus), (46, -30, 37));
        // X # rev(X) has the Betti numbers of 44 CP2 # 44 CP2bar.
        assert_eq!(2 * (n.b_plus + n.b_minus), 88);
    }

    #[test]
    fn sextic_double_cover_is_k3_data() {
        let n = double_cover_numbers(3).unwrap();
        assert_eq!((n.c1_squared, n.b_plus, n.euler, n.signature), (0, 3, 24, -16));
        assert_eq!(solve_from_c1_and_pg(0, 1), (24, -16, 19));
    }

    #[test]
    fn small_double_covers_rejected() {
        assert!(matches!(double_cover_cp2(2), Err(Error::UnsupportedParameter(_))));
        assert!(matches!(double_cover_cp2(0), Err(Error::UnsupportedParameter(_))));
    }

    #[test]
    fn hypersurfaces() {
        let q = hypersurface_numbers(4).unwrap();
        assert_eq!((q.c1_squared, q.euler, q.signature, q.b_plus), (0, 24, -16, 3));
        assert_eq!((q.euler + q.signature) / 4, 2);
        let h5 = hypersurface_numbers(5).unwrap();
        assert_eq!((h5.c1_squared, h5.euler, h5.signature, h5.b_plus), (5, 55, -35, 9));
        assert_eq!(solve_from_c1_and_pg(5, 4), (55, -35, 44));
        assert!(hypersurface_cp3(4).unwrap().flags.spin.is_yes());
        assert_eq!(hypersurface_cp3(5).unwrap().flags.spin, Tri::No);
        assert!(matches!(hypersurface_cp3(0), Err(Error::UnsupportedParameter(_))));
    }

    #[test]
    fn low_degree_hypersurfaces_are_rational_surfaces() {
        assert_eq!(hypersurface_cp3(1).unwrap().betti, BettiData::new(0, 1, 0));
        assert_eq!(hypersurface_cp3(2).unwrap().betti, BettiData::new(0, 1, 1));
        assert_eq!(hypersurface_cp3(3).unwrap().betti, BettiData::new(0, 1, 6));
    }

    #[test]
    fn cross_constructor_k3_agreement() {
        let a = double_cover_cp2(3).unwrap();
        let b = hypersurface_cp3(4).unwrap();
        assert_eq!(a.betti, b.betti);
        assert_eq!(a.c1_squared, b.c1_squared);
    }

    #[test]
    fn constructors_pass_block_invariants() {
        for k in 3..=30 {
            double_cover_cp2(k).unwrap().validate().unwrap();
        }
        for d in 1..=30 {
            hypersurface_cp3(d).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn double_cover_b_plus_mod_four() {
        for k in 4..=40u32 {
            let n = double_cover_numbers(k).unwrap();
            let odd_pg = ((k - 1) * (k - 2) / 2) % 2 == 1;
            assert_eq!(n.b_plus % 4 == 3, n.p_g % 2 == 1);
            assert_eq!(n.p_g % 2 == 1, odd_pg);
        }
        assert_eq!(double_cover_numbers(4).unwrap().b_plus % 4, 3);
    }

    #[test]
    fn catalog_contents() {
        let cat = standard_catalog();
        let find = |n: &str| cat.iter().find(|e| e.block.name == n).unwrap();
        let k3 = find("K3");
        assert_eq!((k3.block.betti.b_plus, k3.block.betti.signature()), (3, -16));
        assert!(k3.block.flags.spin.is_yes());
        assert!(k3.block.flags.sw_mod2_nonzero.is_yes());
        assert!(k3.block.flags.minimal_complex_surface.is_yes());
        assert_eq!(find("CP2").yamabe, Some(ExactReal::from_parts(12, 1, 1, 2).unwrap()));
        assert_eq!(find("S4").yamabe, Some(ExactReal::from_parts(8, 1, 1, 6).unwrap()));
        assert_eq!(find("DC8").block, double_cover_cp2(4).unwrap());
        for name in ["S4", "CP2bar", "S1xS3"] {
            assert!(find(name).block.flags.admits_asd_psc.is_yes());
            assert!(find(name).block.flags.admits_psc.is_yes());
        }
        for e in &cat {
            e.block.validate().unwrap();
        }
    }
}
