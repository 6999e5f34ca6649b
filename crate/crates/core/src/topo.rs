//! Building blocks and connected-sum bookkeeping.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Three-valued fact about a block. Rules only ever consume `Yes`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    #[default]
    Unknown,
}

impl Tri {
    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Tri> {
        match s {
            "yes" | "y" | "true" => Some(Tri::Yes),
            "no" | "n" | "false" => Some(Tri::No),
            "unknown" | "?" => Some(Tri::Unknown),
            _ => None,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct BettiData {
    pub b1: u32,
    pub b_plus: u32,
    pub b_minus: u32,
}

impl BettiData {
    pub const fn new(b1: u32, b_plus: u32, b_minus: u32) -> Self {
        Self { b1, b_plus, b_minus }
    }

    pub fn b2(&self) -> u32 {
        self.b_plus + self.b_minus
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.b1 as i64 + self.b_plus as i64 + self.b_minus as i64
    }

    pub fn signature(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }

    pub fn two_chi_plus_three_tau(&self) -> i64 {
        2 * self.euler() + 3 * self.signature()
    }

    pub fn reversed(&self) -> Self {
        Self { b1: self.b1, b_plus: self.b_minus, b_minus: self.b_plus }
    }
}

/// Names of the tri-state flags, as used in catalog files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlagKind {
    MinimalComplexSurface,
    Symplectic,
    Spin,
    SwMod2Nonzero,
    AdmitsPsc,
    AdmitsNonnegScalar,
    AdmitsAsdPsc,
}

impl FlagKind {
    pub const ALL: [FlagKind; 7] = [
        FlagKind::MinimalComplexSurface,
        FlagKind::Symplectic,
        FlagKind::Spin,
        FlagKind::SwMod2Nonzero,
        FlagKind::AdmitsPsc,
        FlagKind::AdmitsNonnegScalar,
        FlagKind::AdmitsAsdPsc,
    ];

    pub fn key(self) -> &'static str {
        match self {
            FlagKind::MinimalComplexSurface => "minimal_complex_surface",
            FlagKind::Symplectic => "symplectic",
            FlagKind::Spin => "spin",
            FlagKind::SwMod2Nonzero => "sw_mod2_nonzero",
            FlagKind::AdmitsPsc => "admits_psc",
            FlagKind::AdmitsNonnegScalar => "admits_nonneg_scalar",
            FlagKind::AdmitsAsdPsc => "admits_asd_psc",
        }
    }

    pub fn from_key(key: &str) -> Option<FlagKind> {
        FlagKind::ALL.into_iter().find(|k| k.key() == key)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Flags {
    pub minimal_complex_surface: Tri,
    pub symplectic: Tri,
    pub spin: Tri,
    pub sw_mod2_nonzero: Tri,
    pub admits_psc: Tri,
    pub admits_nonneg_scalar: Tri,
    pub admits_asd_psc: Tri,
}

impl Flags {
    pub fn get(&self, kind: FlagKind) -> Tri {
        match kind {
            FlagKind::MinimalComplexSurface => self.minimal_complex_surface,
            FlagKind::Symplectic => self.symplectic,
            FlagKind::Spin => self.spin,
            FlagKind::SwMod2Nonzero => self.sw_mod2_nonzero,
            FlagKind::AdmitsPsc => self.admits_psc,
            FlagKind::AdmitsNonnegScalar => self.admits_nonneg_scalar,
            FlagKind::AdmitsAsdPsc => self.admits_asd_psc,
        }
    }

    pub fn set(&mut self, kind: FlagKind, value: Tri) {
        let slot = match kind {
            FlagKind::MinimalComplexSurface => &mut self.minimal_complex_surface,
            FlagKind::Symplectic => &mut self.symplectic,
            FlagKind::Spin => &mut self.spin,
            FlagKind::SwMod2Nonzero => &mut self.sw_mod2_nonzero,
            FlagKind::AdmitsPsc => &mut self.admits_psc,
            FlagKind::AdmitsNonnegScalar => &mut self.admits_nonneg_scalar,
            FlagKind::AdmitsAsdPsc => &mut self.admits_asd_psc,
        };
        *slot = value;
    }

    pub fn with(mut self, kind: FlagKind, value: Tri) -> Self {
        self.set(kind, value);
        self
    }
}

/// A building-block 4-manifold.
///
/// `c1_squared` is present exactly when the block carries a distinguished
/// almost-complex structure; for such blocks `c1² = 2χ + 3τ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ManifoldBlock {
    pub name: String,
    pub betti: BettiData,
    pub c1_squared: Option<i64>,
    pub flags: Flags,
    pub provenance: String,
}

impl ManifoldBlock {
    pub fn new(name: impl Into<String>, betti: BettiData) -> Self {
        Self {
            name: name.into(),
            betti,
            c1_squared: None,
            flags: Flags::default(),
            provenance: String::new(),
        }
    }

    pub fn with_c1_squared(mut self, c1_squared: i64) -> Self {
        self.c1_squared = Some(c1_squared);
        self
    }

    pub fn with_flag(mut self, kind: FlagKind, value: Tri) -> Self {
        self.flags.set(kind, value);
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn is_almost_complex_carrier(&self) -> bool {
        self.c1_squared.is_some()
    }

    /// Every violated block invariant, one message each.
    pub fn lint(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let b = &self.betti;
        if let Some(c) = self.c1_squared {
            if c != b.two_chi_plus_three_tau() {
                problems.push(format!(
                    "c1^2 = {c} but 2chi + 3tau = {}",
                    b.two_chi_plus_three_tau()
                ));
            }
        }
        if self.flags.admits_asd_psc.is_yes() && b.b_plus != 0 {
            problems.push(format!("admits_asd_psc = yes requires b_plus = 0 (got {})", b.b_plus));
        }
        if self.flags.admits_psc.is_yes() && self.flags.admits_nonneg_scalar != Tri::Yes {
            problems.push("admits_psc = yes requires admits_nonneg_scalar = yes".into());
        }
        // Rokhlin: external-knowledge lint, catches catalog typos.
        if self.flags.spin.is_yes() && b.signature() % 16 != 0 {
            problems.push(format!("spin block has signature {} not divisible by 16", b.signature()));
        }
        problems
    }

    pub fn validate(&self) -> Result<()> {
        let problems = self.lint();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidBlock { name: self.name.clone(), reason: problems.join("; ") })
        }
    }
}

/// The block with reversed orientation. Gauge-theoretic and complex data
/// does not survive reversal, so it is dropped to `unknown`.
pub fn reverse_orientation(block: &ManifoldBlock) -> ManifoldBlock {
    let mut flags = block.flags;
    flags.minimal_complex_surface = Tri::Unknown;
    flags.symplectic = Tri::Unknown;
    flags.sw_mod2_nonzero = Tri::Unknown;
    flags.admits_asd_psc = Tri::Unknown;
    ManifoldBlock {
        name: block.name.clone(),
        betti: block.betti.reversed(),
        c1_squared: None,
        flags,
        provenance: block.provenance.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Summand {
    pub block: ManifoldBlock,
    pub reversed: bool,
    pub multiplicity: u32,
}

impl Summand {
    pub fn new(block: ManifoldBlock, reversed: bool, multiplicity: u32) -> Self {
        Self { block, reversed, multiplicity }
    }

    pub fn once(block: ManifoldBlock) -> Self {
        Self::new(block, false, 1)
    }

    /// The block as it sits in the sum (reversed when requested).
    pub fn oriented_block(&self) -> ManifoldBlock {
        if self.reversed {
            reverse_orientation(&self.block)
        } else {
            self.block.clone()
        }
    }

    fn key(&self) -> (&str, bool) {
        (&self.block.name, self.reversed)
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity != 1 {
            write!(f, "{}*", self.multiplicity)?;
        }
        if self.reversed {
            write!(f, "rev({})", self.block.name)
        } else {
            write!(f, "{}", self.block.name)
        }
    }
}

/// A normalized connected sum: summands sorted by `(name, reversed)` with
/// repeated entries merged into multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SumExpression {
    summands: Vec<Summand>,
}

impl SumExpression {
    pub fn new(summands: Vec<Summand>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::EmptyExpression);
        }
        let mut sorted = summands;
        for s in &sorted {
            if s.multiplicity == 0 {
                return Err(Error::ZeroMultiplicity(0));
            }
        }
        sorted.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut merged: Vec<Summand> = Vec::with_capacity(sorted.len());
        for s in sorted {
            match merged.last_mut() {
                Some(last) if last.key() == s.key() => {
                    if last.block != s.block {
                        return Err(Error::InvalidBlock {
                            name: s.block.name.clone(),
                            reason: "two different blocks share this name".into(),
                        });
                    }
                    last.multiplicity += s.multiplicity;
                }
                _ => merged.push(s),
            }
        }
        Ok(Self { summands: merged })
    }

    pub fn single(block: ManifoldBlock) -> Self {
        Self { summands: vec![Summand::once(block)] }
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Total number of prime pieces, counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    pub fn betti(&self) -> BettiData {
        connected_sum(self)
    }

    pub fn euler(&self) -> i64 {
        self.betti().euler()
    }

    pub fn signature(&self) -> i64 {
        self.betti().signature()
    }

    /// Spin iff every summand is spin; `no` as soon as one summand is not.
    pub fn spin(&self) -> Tri {
        let flags: Vec<Tri> = self.summands.iter().map(|s| s.oriented_block().flags.spin).collect();
        if flags.iter().any(|&t| t == Tri::No) {
            Tri::No
        } else if flags.iter().all(|&t| t == Tri::Yes) {
            Tri::Yes
        } else {
            Tri::Unknown
        }
    }

    /// Positive scalar curvature survives connected sums; nothing else is inferred.
    pub fn admits_psc(&self) -> Tri {
        if self.summands.iter().all(|s| s.oriented_block().flags.admits_psc.is_yes()) {
            Tri::Yes
        } else {
            Tri::Unknown
        }
    }

    pub fn admits_nonneg_scalar(&self) -> Tri {
        if self.admits_psc().is_yes() {
            return Tri::Yes;
        }
        if self.count() == 1 {
            return self.summands[0].oriented_block().flags.admits_nonneg_scalar;
        }
        Tri::Unknown
    }

    pub fn oriented_blocks(&self) -> impl Iterator<Item = (ManifoldBlock, u32)> + '_ {
        self.summands.iter().map(|s| (s.oriented_block(), s.multiplicity))
    }
}

impl fmt::Display for SumExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " # ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Betti data of the connected sum: Betti numbers add with multiplicity.
pub fn connected_sum(expr: &SumExpression) -> BettiData {
    expr.summands.iter().fold(BettiData::default(), |acc, s| {
        let b = if s.reversed { s.block.betti.reversed() } else { s.block.betti };
        BettiData {
            b1: acc.b1 + s.multiplicity * b.b1,
            b_plus: acc.b_plus + s.multiplicity * b.b_plus,
            b_minus: acc.b_minus + s.multiplicity * b.b_minus,
        }
    })
}

pub fn two_chi_plus_three_tau(expr: &SumExpression) -> i64 {
    connected_sum(expr).two_chi_plus_three_tau()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc8() -> ManifoldBlock {
        ManifoldBlock::new("DC8", BettiData::new(0, 7, 37))
            .with_c1_squared(2)
            .with_flag(FlagKind::MinimalComplexSurface, Tri::Yes)
            .with_flag(FlagKind::SwMod2Nonzero, Tri::Yes)
            .with_flag(FlagKind::AdmitsPsc, Tri::No)
    }

    fn k3() -> ManifoldBlock {
        ManifoldBlock::new("K3", BettiData::new(0, 3, 19))
            .with_c1_squared(0)
            .with_flag(FlagKind::Spin, Tri::Yes)
    }

    fn s4() -> ManifoldBlock {
        ManifoldBlock::new("S4", BettiData::new(0, 0, 0))
            .with_flag(FlagKind::AdmitsPsc, Tri::Yes)
            .with_flag(FlagKind::AdmitsNonnegScalar, Tri::Yes)
            .with_flag(FlagKind::AdmitsAsdPsc, Tri::Yes)
            .with_flag(FlagKind::Spin, Tri::Yes)
    }

    #[test]
    fn derived_characteristic_numbers() {
        let b = dc8().betti;
        assert_eq!((b.euler(), b.signature()), (46, -30));
        assert_eq!(b.two_chi_plus_three_tau(), 2);
        assert!(dc8().validate().is_ok());
    }

    #[test]
    fn sum_of_two_octic_covers() {
        let e = SumExpression::new(vec![Summand::new(dc8(), false, 2)]).unwrap();
        let b = e.betti();
        assert_eq!((b.euler(), b.signature(), b.b_plus), (90, -60, 14));
        assert_eq!(two_chi_plus_three_tau(&e), 0);
    }

    #[test]
    fn octic_cover_with_its_reverse() {
        let e = SumExpression::new(vec![Summand::once(dc8()), Summand::new(dc8(), true, 1)]).unwrap();
        let b = e.betti();
        assert_eq!((b.b2(), b.b_plus, b.b_minus, b.signature()), (88, 44, 44, 0));
    }

    #[test]
    fn single_block_is_unchanged() {
        assert_eq!(SumExpression::single(dc8()).betti(), dc8().betti);
    }

    #[test]
    fn two_chi_three_tau_examples() {
        let kk = SumExpression::new(vec![Summand::new(k3(), false, 2)]).unwrap();
        assert_eq!(two_chi_plus_three_tau(&kk), -4);
        assert_eq!(two_chi_plus_three_tau(&SumExpression::single(s4())), 4);
    }

    #[test]
    fn reversal_examples() {
        let r = reverse_orientation(&dc8());
        assert_eq!((r.betti.b_plus, r.betti.b_minus, r.betti.signature()), (37, 7, 30));
        assert_eq!(r.c1_squared, None);
        assert_eq!(r.flags.minimal_complex_surface, Tri::Unknown);
        assert_eq!(r.flags.sw_mod2_nonzero, Tri::Unknown);
        assert_eq!(r.flags.admits_psc, Tri::No);
        assert_eq!(reverse_orientation(&r).betti, dc8().betti);
        assert_eq!(reverse_orientation(&s4()).betti, s4().betti);
        assert_eq!(reverse_orientation(&s4()).flags.admits_asd_psc, Tri::Unknown);
    }

    #[test]
    fn normalization_merges_and_sorts() {
        let e = SumExpression::new(vec![
            Summand::once(s4()),
            Summand::once(dc8()),
            Summand::new(dc8(), false, 3),
            Summand::new(dc8(), true, 1),
        ])
        .unwrap();
        assert_eq!(e.to_string(), "4*DC8 # rev(DC8) # S4");
        assert_eq!(e.count(), 6);
    }

    #[test]
    fn rejected_expressions() {
        assert_eq!(SumExpression::new(vec![]), Err(Error::EmptyExpression));
        assert!(matches!(
            SumExpression::new(vec![Summand::new(dc8(), false, 0)]),
            Err(Error::ZeroMultiplicity(_))
        ));
        let fake = ManifoldBlock::new("DC8", BettiData::new(0, 1, 1));
        assert!(SumExpression::new(vec![Summand::once(dc8()), Summand::once(fake)]).is_err());
    }

    #[test]
    fn lint_catches_inconsistent_blocks() {
        let bad_c1 = dc8().with_c1_squared(3);
        assert!(bad_c1.validate().is_err());
        let bad_asd = k3().with_flag(FlagKind::AdmitsAsdPsc, Tri::Yes);
        assert!(bad_asd.validate().is_err());
        let bad_psc = ManifoldBlock::new("X", BettiData::new(0, 0, 0)).with_flag(FlagKind::AdmitsPsc, Tri::Yes);
        assert!(bad_psc.validate().is_err());
        let bad_spin = ManifoldBlock::new("Y", BettiData::new(0, 3, 11)).with_flag(FlagKind::Spin, Tri::Yes);
        assert!(bad_spin.validate().is_err());
    }

    #[test]
    fn spin_propagation_never_upgrades_unknown() {
        let unknown = ManifoldBlock::new("U", BettiData::new(0, 0, 0));
        let e = SumExpression::new(vec![Summand::once(k3()), Summand::once(unknown)]).unwrap();
        assert_eq!(e.spin(), Tri::Unknown);
        let e = SumExpression::new(vec![Summand::once(k3()), Summand::once(s4())]).unwrap();
        assert_eq!(e.spin(), Tri::Yes);
        let nonspin = dc8().with_flag(FlagKind::Spin, Tri::No);
        let e = SumExpression::new(vec![Summand::once(k3()), Summand::once(nonspin)]).unwrap();
        assert_eq!(e.spin(), Tri::No);
    }
}
