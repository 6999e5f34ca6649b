//! Rule evaluation and report assembly.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::certificate::{rule, Certificate, Conclusion, Quantity};
use super::hypotheses::{
    check_quadruple, suggest_witness, CheckStatus, HypothesisCheck, HypothesisFamily, QuadrupleWitness,
};
use super::rules;
use super::split::{asd_family_form, rest_admits_asd_psc, split_expression, surface_summands, Split};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::lattice::{enumerate_monopole_classes, maximize_aplus_squared, Ambient, PeriodSubspace};
use crate::topo::{ManifoldBlock, SumExpression, Summand};

/// Monopole enumeration size used for certificate evidence only.
const EVIDENCE_PATTERN_LIMIT: u128 = 1 << 12;

#[derive(Clone, Debug, Default)]
pub struct EvaluationOptions {
    pub witness: Option<[ManifoldBlock; 4]>,
    /// Number of witness blocks that are summands; inferred when absent.
    pub m: Option<usize>,
    /// Complete a witness from the expression's surface summands when none is given.
    pub auto_witness: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiSummary {
    pub b1: u32,
    pub b_plus: u32,
    pub b_minus: u32,
    pub chi: i64,
    pub tau: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: ExactReal,
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantValue {
    Exact { value: ExactReal, rule: String },
    Bounds { lower: Option<Bound>, upper: Option<Bound> },
    Unknown,
}

impl InvariantValue {
    pub fn exact(&self) -> Option<&ExactReal> {
        match self {
            InvariantValue::Exact { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn lower(&self) -> Option<&ExactReal> {
        match self {
            InvariantValue::Exact { value, .. } => Some(value),
            InvariantValue::Bounds { lower, .. } => lower.as_ref().map(|b| &b.value),
            InvariantValue::Unknown => None,
        }
    }

    pub fn upper(&self) -> Option<&ExactReal> {
        match self {
            InvariantValue::Exact { value, .. } => Some(value),
            InvariantValue::Bounds { upper, .. } => upper.as_ref().map(|b| &b.value),
            InvariantValue::Unknown => None,
        }
    }

    pub fn is_known(&self) -> bool {
        !matches!(self, InvariantValue::Unknown)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub yamabe: InvariantValue,
    pub i_s: InvariantValue,
    pub i_r: InvariantValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EinsteinVerdict {
    Obstructed { by: Vec<String> },
    NotDetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleError {
    pub rule_id: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEcho {
    pub blocks: Vec<String>,
    pub m: usize,
    pub auto_completed: bool,
    pub rest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub expression: String,
    pub betti: BettiSummary,
    pub invariants: Invariants,
    /// `ℐ_r - ℐ_s/4` when both are exact.
    pub ricci_scalar_gap: Option<ExactReal>,
    pub einstein: EinsteinVerdict,
    pub witness: Option<WitnessEcho>,
    pub certificates: Vec<Certificate>,
    pub rule_errors: Vec<RuleError>,
    pub notes: Vec<String>,
}

impl InvariantReport {
    /// Some invariant has a value or bound, or an obstruction was found.
    pub fn is_conclusive(&self) -> bool {
        let inv = &self.invariants;
        inv.yamabe.is_known()
            || inv.i_s.is_known()
            || inv.i_r.is_known()
            || matches!(self.einstein, EinsteinVerdict::Obstructed { .. })
    }

    pub fn certificate(&self, rule_id: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.rule_id == rule_id)
    }
}

fn check(rule_id: &str, condition: impl Into<String>, status: CheckStatus, evidence: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck::new(rule_id, condition, status, evidence)
}

fn quadruple_checks(w: &QuadrupleWitness, family: HypothesisFamily, rule_id: &str) -> Vec<HypothesisCheck> {
    check_quadruple(w, family)
        .into_iter()
        .map(|mut c| {
            c.rule_id = rule_id.to_string();
            c
        })
        .collect()
}

fn split_check(rule_id: &str, split: &Split) -> HypothesisCheck {
    let names: Vec<&str> = split.surfaces.iter().map(|b| b.name.as_str()).collect();
    check(
        rule_id,
        "M = [#_{j<=m} X_j] # N",
        CheckStatus::Pass,
        format!("m = {}, X = ({}), N = {}", split.m, names.join(", "), split.rest),
    )
}

fn b_plus_rest_check(rule_id: &str, split: &Split) -> HypothesisCheck {
    let b = split.rest.betti().b_plus;
    check(rule_id, "b+(N) = 0", CheckStatus::from_bool(b == 0), format!("b+(N) = {b}"))
}

fn nonneg_rest_check(rule_id: &str, split: &Split) -> HypothesisCheck {
    let t = split.rest.admits_nonneg_scalar();
    check(
        rule_id,
        "N admits a metric of scalar curvature >= 0",
        CheckStatus::from_flag(t),
        format!("admits_nonneg_scalar(N) = {t}"),
    )
}

fn c1_sum(w: &QuadrupleWitness) -> Result<i64> {
    w.prefix_c1_sum().ok_or_else(|| Error::Internal("c1^2 missing after checks passed".into()))
}

fn witness_rule_checks(
    w: &QuadrupleWitness,
    split: &Split,
    family: HypothesisFamily,
    rule_id: &str,
) -> Vec<HypothesisCheck> {
    let mut checks = vec![split_check(rule_id, split)];
    checks.extend(quadruple_checks(w, family, rule_id));
    checks.push(b_plus_rest_check(rule_id, split));
    checks
}

/// Exact Yamabe invariant of `[#X_j] # N`.
pub fn yamabe(w: &QuadrupleWitness, split: &Split) -> Result<Certificate> {
    let id = rule::YAMABE_SUM;
    let mut checks = witness_rule_checks(w, split, HypothesisFamily::MinimalSurfaces, id);
    checks.push(nonneg_rest_check(id, split));
    Ok(Certificate::assemble(id, checks, || {
        Ok(Conclusion::Exact { quantity: Quantity::Yamabe, value: rules::yamabe_value(c1_sum(w)?)? })
    })?
    .with_note("s >= 0 on N is taken to give both a metric of non-negative scalar curvature and Y(N) >= 0"))
}

/// Exact `ℐ_s` of `[#X_j] # N`.
pub fn i_s(w: &QuadrupleWitness, split: &Split) -> Result<Certificate> {
    let id = rule::SCALAR_SUM;
    let mut checks = witness_rule_checks(w, split, HypothesisFamily::MinimalSurfaces, id);
    checks.push(nonneg_rest_check(id, split));
    Certificate::assemble(id, checks, || {
        Ok(Conclusion::Exact { quantity: Quantity::IS, value: rules::scalar_value(c1_sum(w)?)? })
    })
}

/// Lower bound on `ℐ_s` from monopole classes.
pub fn i_s_lower(w: &QuadrupleWitness, split: &Split) -> Result<Certificate> {
    let id = rule::SCALAR_LOWER;
    let checks = witness_rule_checks(w, split, HypothesisFamily::SeibergWitten, id);
    let cert = Certificate::assemble(id, checks, || {
        Ok(Conclusion::LowerBound {
            quantity: Quantity::IS,
            value: rules::scalar_l2_bound(&BigRational::from_integer(BigInt::from(c1_sum(w)?)))?,
        })
    })?;
    if !cert.fired() {
        return Ok(cert);
    }
    let sum = c1_sum(w)?;
    let a_sq = BigRational::from_integer(BigInt::from(sum));
    Ok(cert
        .with_note(lattice_evidence(split)?)
        .with_note(format!(
            "companion bound: int (s - sqrt6 |W+|)^2 >= {}",
            rules::weyl_bound(&a_sq)?
        ))
        .with_note("equality cases (constant-scalar-curvature Kaehler metrics) are not analysed"))
}

/// Brute-force and greedy `(a⁺)²` on the model lattice `⟨Σc₁²⟩ ⊕ b₋(N)⟨-1⟩`.
fn lattice_evidence(split: &Split) -> Result<String> {
    let c1s: Vec<i64> = split.surfaces.iter().map(|b| b.c1_squared.unwrap_or(0)).collect();
    let k = split.rest.betti().b_minus as usize;
    let ambient = Ambient::collapsed(&c1s, k)?;
    let count = ambient.pattern_count();
    if count > EVIDENCE_PATTERN_LIMIT {
        return Ok(format!(
            "model lattice has {count} sign patterns; enumeration skipped, the bound uses (a+)^2 >= alpha^2"
        ));
    }
    let lattice = ambient.lattice();
    let columns: Vec<Vec<i64>> = if lattice.b_plus() == 1 {
        let mut e0 = vec![0; lattice.rank()];
        e0[0] = 1;
        vec![e0]
    } else {
        Vec::new()
    };
    let period = PeriodSubspace::from_integer_columns(lattice, &columns)?;
    let classes = enumerate_monopole_classes(&ambient, EVIDENCE_PATTERN_LIMIT)?;
    let opt = maximize_aplus_squared(&ambient, &period, &classes)?;
    Ok(format!(
        "model lattice diag({}) + {k} x <-1>: {} monopole classes; on the reference period \
         max (a+)^2 = {}, greedy (a+)^2 = {}, alpha^2 = {}",
        c1s.iter().sum::<i64>(),
        classes.len(),
        opt.value,
        opt.greedy_value,
        opt.alpha_squared
    ))
}

/// Exact `ℐ_r` of `[#X_j] # N` for `N` anti-self-dual with positive scalar curvature.
pub fn i_r(w: &QuadrupleWitness, split: &Split, catalog: &Catalog) -> Result<Certificate> {
    let id = rule::RICCI_SUM;
    let mut checks = witness_rule_checks(w, split, HypothesisFamily::MinimalSurfaces, id);
    let asd = rest_admits_asd_psc(&split.rest, catalog);
    checks.push(check(
        id,
        "N admits an anti-self-dual metric of positive scalar curvature",
        CheckStatus::from_flag(asd),
        format!("admits_asd_psc(N) = {asd}"),
    ));
    let n = split.rest.betti().two_chi_plus_three_tau();
    let m = split.m as i64;
    let cert = Certificate::assemble(id, checks, || {
        Ok(Conclusion::Exact { quantity: Quantity::IR, value: rules::ricci_value(m, n, c1_sum(w)?)? })
    })?;
    Ok(cert.with_note(format!("(2chi + 3tau)(N) = {n}")))
}

/// The same value in the `k CP2bar # ℓ (S1xS3)` parametrization, cross-checked
/// against [`i_r`].
pub fn i_r_asd_family(w: &QuadrupleWitness, split: &Split, catalog: &Catalog) -> Result<Option<Certificate>> {
    let Some((k, l)) = asd_family_form(&split.rest, catalog) else {
        return Ok(None);
    };
    let id = rule::RICCI_ASD_FAMILY;
    let mut checks = witness_rule_checks(w, split, HypothesisFamily::MinimalSurfaces, id);
    checks.push(check(
        id,
        "N = k CP2bar # l (S1 x S3)",
        CheckStatus::Pass,
        format!("k = {k}, l = {l}"),
    ));
    let m = split.m as i64;
    let n = split.rest.betti().two_chi_plus_three_tau();
    let cert = Certificate::assemble(id, checks, || {
        let sum = c1_sum(w)?;
        let family = rules::ricci_asd_family_value(k as i64, l as i64, m, sum)?;
        let general = rules::ricci_value(m, n, sum)?;
        if family != general {
            return Err(Error::Internal(format!("Ricci values disagree: {family} vs {general}")));
        }
        Ok(Conclusion::Exact { quantity: Quantity::IR, value: family })
    })?;
    Ok(Some(cert))
}

/// Lower bound on `ℐ_r` from monopole classes.
pub fn i_r_lower(w: &QuadrupleWitness, split: &Split, total: &SumExpression) -> Result<Certificate> {
    let id = rule::RICCI_LOWER;
    let checks = witness_rule_checks(w, split, HypothesisFamily::SeibergWitten, id);
    let m_value = total.betti().two_chi_plus_three_tau();
    Certificate::assemble(id, checks, || {
        let a_sq = BigRational::from_integer(BigInt::from(c1_sum(w)?));
        Ok(Conclusion::LowerBound { quantity: Quantity::IR, value: rules::ricci_monopole_bound(&a_sq, m_value)? })
    })
}

/// Monopole obstruction to Einstein metrics; `m` must be 2, 3 or 4.
pub fn einstein_obstruction(w: &QuadrupleWitness, split: &Split) -> Result<Certificate> {
    if !(2..=4).contains(&split.m) {
        return Err(Error::OutOfRange(format!("m = {} (the obstruction needs m = 2, 3 or 4)", split.m)));
    }
    let id = rule::EINSTEIN_MONOPOLE;
    let checks = witness_rule_checks(w, split, HypothesisFamily::SeibergWitten, id);
    let nb = split.rest.betti();
    let m = split.m as i64;
    let cert = Certificate::assemble(id, checks, || {
        let sum = c1_sum(w)?;
        let (b1, bm) = (nb.b1 as i64, nb.b_minus as i64);
        let betti_form = rules::einstein_gate_betti(m, b1, bm, sum);
        let euler_form = rules::einstein_gate_euler(m, nb.two_chi_plus_three_tau(), sum);
        if betti_form != euler_form {
            return Err(Error::Internal(format!(
                "obstruction gates disagree for m = {m}, b1 = {b1}, b- = {bm}, sum c1^2 = {sum}"
            )));
        }
        let lhs = 12 * (m - 1) + 12 * b1 + 3 * bm;
        let rhs = 4 * m - nb.two_chi_plus_three_tau();
        Ok(Conclusion::Verdict {
            obstructed: betti_form,
            detail: format!(
                "12(m-1) + 12 b1(N) + 3 b-(N) = {lhs} {} {sum} = sum c1^2; \
                 4m - (2chi+3tau)(N) = {rhs} vs sum c1^2 / 3 = {sum}/3",
                if betti_form { ">=" } else { "<" }
            ),
        })
    })?;
    Ok(cert.with_note("for m > 1 the sum admits no symplectic structure, which makes the estimate strict"))
}

/// `X # n K3 # ℓ (S1xS3)` with `X` spin and symplectic.
pub fn spin_family_obstruction(expr: &SumExpression, catalog: &Catalog) -> Option<Certificate> {
    let k3 = catalog.get("K3")?;
    let s1s3 = catalog.get("S1xS3");
    let (mut n, mut l) = (0u32, 0u32);
    let mut others: Vec<&Summand> = Vec::new();
    for s in expr.summands() {
        if !s.reversed && s.block == *k3 {
            n += s.multiplicity;
        } else if !s.reversed && Some(&s.block) == s1s3 {
            l += s.multiplicity;
        } else {
            others.push(s);
        }
    }
    if n == 0 || others.len() != 1 || others[0].multiplicity != 1 || others[0].reversed {
        return None;
    }
    let x = &others[0].block;
    let id = rule::EINSTEIN_SPIN_FAMILY;
    let f = &x.flags;
    let checks = vec![
        check(id, "n in {1, 2, 3}", CheckStatus::from_bool((1..=3).contains(&n)), format!("n = {n}")),
        check(id, "b1(X) = 0", CheckStatus::from_bool(x.betti.b1 == 0), format!("b1 = {}", x.betti.b1)),
        check(id, "X is symplectic", CheckStatus::from_flag(f.symplectic), format!("symplectic = {}", f.symplectic)),
        check(id, "X is spin", CheckStatus::from_flag(f.spin), format!("spin = {}", f.spin)),
        check(
            id,
            "b+(X) = 3 mod 8",
            CheckStatus::from_bool(x.betti.b_plus % 8 == 3),
            format!("b+ = {}", x.betti.b_plus),
        ),
        check(
            id,
            "c1^2(X) recorded",
            CheckStatus::from_bool(x.c1_squared.is_some()),
            format!("c1^2 = {:?}", x.c1_squared),
        ),
    ];
    let c1 = x.c1_squared.unwrap_or(0);
    let cert = Certificate::assemble(id, checks, || {
        let obstructed = 12 * i64::from(l + n) >= c1;
        Ok(Conclusion::Verdict {
            obstructed,
            detail: format!(
                "X = {}, n = {n}, l = {l}: l + n = {} {} c1^2(X)/12 = {c1}/12",
                x.name,
                l + n,
                if obstructed { ">=" } else { "<" }
            ),
        })
    })
    .ok()?;
    Some(
        cert.with_note(format!(
            "Hitchin-Thorpe alone obstructs only when l + n > c1^2(X)/4 = {c1}/4 (here l + n = {})",
            l + n
        ))
        .with_note("simple connectivity of X is not modelled; b1(X) = 0 is checked instead"),
    )
}

pub fn hitchin_thorpe(expr: &SumExpression) -> Certificate {
    let id = rule::EINSTEIN_HITCHIN_THORPE;
    let v = expr.betti().two_chi_plus_three_tau();
    let checks = vec![check(id, "(2chi + 3tau)(M) computed", CheckStatus::Pass, format!("(2chi + 3tau)(M) = {v}"))];
    Certificate::assemble(id, checks, || {
        Ok(Conclusion::Verdict {
            obstructed: v < 0,
            detail: format!("(2chi + 3tau)(M) = {v} {} 0", if v < 0 { "<" } else { ">=" }),
        })
    })
    .expect("closure is infallible")
}

fn single_unreversed(expr: &SumExpression) -> Option<&ManifoldBlock> {
    match expr.summands() {
        [s] if s.multiplicity == 1 && !s.reversed => Some(&s.block),
        _ => None,
    }
}

/// Recorded Yamabe constant of a single catalog block.
pub fn yamabe_catalog(expr: &SumExpression, catalog: &Catalog) -> Option<Certificate> {
    let block = single_unreversed(expr)?;
    let entry = catalog.entry(&block.name).filter(|e| e.block == *block)?;
    let value = entry.yamabe.clone()?;
    let id = rule::YAMABE_CATALOG;
    let checks = vec![check(
        id,
        "M is a catalog block with a recorded Yamabe constant",
        CheckStatus::Pass,
        format!("{}: {}", block.name, entry.citation_note),
    )];
    Certificate::assemble(id, checks, || Ok(Conclusion::Exact { quantity: Quantity::Yamabe, value })).ok()
}

pub fn yamabe_kobayashi(expr: &SumExpression, catalog: &Catalog) -> Result<Option<Certificate>> {
    let (k, l, used) = match rules::dissolve_rewrite(expr, catalog) {
        Ok(r) => r,
        Err(Error::NoRewrite) => return Ok(None),
        Err(e) => return Err(e),
    };
    let id = rule::YAMABE_KOBAYASHI;
    let via = if used.is_empty() { "directly".to_string() } else { format!("via dissolve annotations for {}", used.join(", ")) };
    let checks = vec![
        check(id, "M = k CP2 # l CP2bar", CheckStatus::Pass, format!("k = {k}, l = {l}, {via}")),
        check(id, "k + l >= 1", CheckStatus::Pass, format!("k + l = {}", k + l)),
    ];
    let cert = Certificate::assemble(id, checks, || {
        Ok(Conclusion::Interval { quantity: Quantity::Yamabe, interval: rules::kobayashi_interval(k, l)? })
    })?;
    Ok(Some(cert))
}

pub fn scalar_minimal_surface(expr: &SumExpression) -> Option<Certificate> {
    let block = single_unreversed(expr)?;
    let c1 = block.c1_squared?;
    let id = rule::SCALAR_MINIMAL_SURFACE;
    let t = block.flags.minimal_complex_surface;
    let checks = vec![
        check(id, "M is a minimal complex surface", CheckStatus::from_flag(t), format!("minimal_complex_surface = {t}")),
        check(
            id,
            "b+(M) > 1",
            CheckStatus::from_bool(block.betti.b_plus > 1),
            format!("b+ = {}", block.betti.b_plus),
        ),
    ];
    Certificate::assemble(id, checks, || Ok(Conclusion::Exact { quantity: Quantity::IS, value: rules::scalar_value(c1)? })).ok()
}

pub fn scalar_nonneg(expr: &SumExpression) -> Certificate {
    let id = rule::SCALAR_PSC;
    let (psc, nonneg) = (expr.admits_psc(), expr.admits_nonneg_scalar());
    let checks = vec![check(
        id,
        "M admits a metric of scalar curvature >= 0",
        CheckStatus::from_flag(nonneg),
        format!("admits_psc = {psc}, admits_nonneg_scalar = {nonneg}"),
    )];
    Certificate::assemble(id, checks, || Ok(Conclusion::Exact { quantity: Quantity::IS, value: ExactReal::zero() }))
        .expect("closure is infallible")
}

/// Known `ℐ_s` of one summand, with the reason.
fn summand_scalar(s: &Summand, catalog: &Catalog) -> Result<Option<(ExactReal, String)>> {
    let b = s.oriented_block();
    if b.flags.admits_nonneg_scalar.is_yes() {
        return Ok(Some((ExactReal::zero(), "admits s >= 0".into())));
    }
    if s.reversed {
        return Ok(None);
    }
    if b.flags.minimal_complex_surface.is_yes() && b.betti.b_plus > 1 {
        if let Some(c1) = b.c1_squared {
            return Ok(Some((rules::scalar_value(c1)?, format!("minimal surface, c1^2 = {c1}"))));
        }
    }
    if let Some(y) = catalog.entry(&b.name).filter(|e| e.block == b).and_then(|e| e.yamabe.as_ref()) {
        if !y.is_negative() {
            return Ok(Some((ExactReal::zero(), format!("catalog Yamabe constant {y} >= 0"))));
        }
    }
    Ok(None)
}

pub fn scalar_subadditivity(expr: &SumExpression, catalog: &Catalog) -> Result<Option<Certificate>> {
    if expr.count() < 2 {
        return Ok(None);
    }
    let id = rule::SCALAR_SUBADDITIVE;
    let mut checks = Vec::new();
    let mut parts = Vec::new();
    for s in expr.summands() {
        let known = summand_scalar(s, catalog)?;
        let (status, evidence) = match &known {
            Some((v, why)) => (CheckStatus::Pass, format!("I_s = {v} ({why})")),
            None => (CheckStatus::Unknown, "no value recorded or derivable".to_string()),
        };
        checks.push(check(id, format!("I_s({s}) known"), status, evidence));
        if let Some((v, _)) = known {
            parts.push((v, s.multiplicity));
        }
    }
    let cert = Certificate::assemble(id, checks, || {
        let mut total = ExactReal::zero();
        for (v, mult) in &parts {
            total = total.checked_add(&v.scale(&BigRational::from_integer(BigInt::from(*mult))))?;
        }
        Ok(Conclusion::UpperBound { quantity: Quantity::IS, value: total })
    })?;
    Ok(Some(cert))
}

/// Accumulated conclusions for one quantity.
#[derive(Default)]
struct Facts {
    exact: Option<(ExactReal, String)>,
    lower: Option<(ExactReal, String)>,
    upper: Option<(ExactReal, String)>,
}

impl Facts {
    fn exact_or_lower(&self) -> Option<&(ExactReal, String)> {
        self.exact.as_ref().or(self.lower.as_ref())
    }

    fn exact_or_upper(&self) -> Option<&(ExactReal, String)> {
        self.exact.as_ref().or(self.upper.as_ref())
    }

    fn add_exact(&mut self, v: &ExactReal, rule_id: &str) -> Result<()> {
        match &self.exact {
            Some((old, by)) if old != v => Err(Error::Internal(format!(
                "{rule_id} gives {v} but {by} gives {old}"
            ))),
            Some(_) => Ok(()),
            None => {
                self.exact = Some((v.clone(), rule_id.to_string()));
                Ok(())
            }
        }
    }

    fn add_lower(&mut self, v: &ExactReal, rule_id: &str) -> Result<()> {
        let replace = match &self.lower {
            None => true,
            Some((old, _)) => v.compare(old)? == std::cmp::Ordering::Greater,
        };
        if replace {
            self.lower = Some((v.clone(), rule_id.to_string()));
        }
        Ok(())
    }

    fn add_upper(&mut self, v: &ExactReal, rule_id: &str) -> Result<()> {
        let replace = match &self.upper {
            None => true,
            Some((old, _)) => v.compare(old)? == std::cmp::Ordering::Less,
        };
        if replace {
            self.upper = Some((v.clone(), rule_id.to_string()));
        }
        Ok(())
    }

    fn finish(self, what: &str) -> Result<InvariantValue> {
        let consistent = |lo: &(ExactReal, String), hi: &(ExactReal, String)| -> Result<()> {
            if lo.0.le(&hi.0)? {
                Ok(())
            } else {
                Err(Error::Internal(format!(
                    "{what}: {} ({}) exceeds {} ({})",
                    lo.0, lo.1, hi.0, hi.1
                )))
            }
        };
        if let (Some(lo), Some(hi)) = (&self.lower, &self.upper) {
            consistent(lo, hi)?;
        }
        if let Some(ex) = &self.exact {
            if let Some(lo) = &self.lower {
                consistent(lo, ex)?;
            }
            if let Some(hi) = &self.upper {
                consistent(ex, hi)?;
            }
        }
        let bound = |f: Option<(ExactReal, String)>| f.map(|(value, rule)| Bound { value, rule });
        Ok(match (self.exact, self.lower, self.upper) {
            (Some((value, rule)), _, _) => InvariantValue::Exact { value, rule },
            (None, None, None) => InvariantValue::Unknown,
            (None, lower, upper) => InvariantValue::Bounds { lower: bound(lower), upper: bound(upper) },
        })
    }
}

#[derive(Default)]
struct Collector {
    yamabe: Facts,
    i_s: Facts,
    i_r: Facts,
}

impl Collector {
    fn facts(&mut self, q: Quantity) -> Option<&mut Facts> {
        match q {
            Quantity::Yamabe => Some(&mut self.yamabe),
            Quantity::IS => Some(&mut self.i_s),
            Quantity::IR => Some(&mut self.i_r),
            Quantity::Einstein => None,
        }
    }

    fn absorb(&mut self, cert: &Certificate) -> Result<()> {
        let id = cert.rule_id.as_str();
        match &cert.conclusion {
            Some(Conclusion::Exact { quantity, value }) => {
                if let Some(f) = self.facts(*quantity) {
                    f.add_exact(value, id)?;
                }
            }
            Some(Conclusion::Interval { quantity, interval }) => {
                if let Some(f) = self.facts(*quantity) {
                    f.add_lower(interval.lower(), id)?;
                    f.add_upper(interval.upper(), id)?;
                }
            }
            Some(Conclusion::LowerBound { quantity, value }) => {
                if let Some(f) = self.facts(*quantity) {
                    f.add_lower(value, id)?;
                }
            }
            Some(Conclusion::UpperBound { quantity, value }) => {
                if let Some(f) = self.facts(*quantity) {
                    f.add_upper(value, id)?;
                }
            }
            Some(Conclusion::Verdict { .. }) | None => {}
        }
        Ok(())
    }
}

fn derived(rule_id: &str, condition: String, evidence: String, conclusion: Conclusion) -> Result<Certificate> {
    Certificate::assemble(rule_id, vec![check(rule_id, condition, CheckStatus::Pass, evidence)], || Ok(conclusion))
}

/// Conversions between `𝒴`, `ℐ_s` and `ℐ_r` applied to what the rules established.
fn derive_conversions(col: &mut Collector) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    let mut push = |col: &mut Collector, cert: Certificate| -> Result<()> {
        col.absorb(&cert)?;
        out.push(cert);
        Ok(())
    };

    if col.i_s.exact.is_none() {
        if let Some((y, by)) = col.yamabe.exact.clone() {
            let cert = derived(
                rule::SCALAR_FROM_YAMABE,
                "sign of Y(M) known".into(),
                format!("Y(M) = {y} by {by}"),
                Conclusion::Exact { quantity: Quantity::IS, value: rules::scalar_from_yamabe(&y)? },
            )?;
            push(col, cert)?;
        } else if let Some((lo, by)) = col.yamabe.lower.clone().filter(|(v, _)| !v.is_negative()) {
            let cert = derived(
                rule::SCALAR_FROM_YAMABE,
                "Y(M) >= 0".into(),
                format!("Y(M) >= {lo} by {by}"),
                Conclusion::Exact { quantity: Quantity::IS, value: ExactReal::zero() },
            )?;
            push(col, cert)?;
        }
    }

    if col.yamabe.exact.is_none() {
        if let Some((s, by)) = col.i_s.exact.clone().filter(|(v, _)| v.is_positive()) {
            let cert = derived(
                rule::YAMABE_FROM_SCALAR,
                "I_s(M) > 0".into(),
                format!("I_s(M) = {s} by {by}"),
                Conclusion::Exact { quantity: Quantity::Yamabe, value: rules::yamabe_from_scalar(&s)? },
            )?;
            push(col, cert)?;
        }
    }

    let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
    if let Some((lo, by)) = col.i_s.exact_or_lower().cloned().filter(|(v, _)| v.is_positive()) {
        let target = lo.scale(&quarter);
        let weaker = match col.i_r.exact_or_lower() {
            None => true,
            Some((cur, _)) => cur.compare(&target)? == std::cmp::Ordering::Less,
        };
        if weaker {
            let cert = derived(
                rule::RICCI_TAUTOLOGICAL,
                "lower bound on I_s(M) known".into(),
                format!("I_s(M) >= {lo} by {by}"),
                Conclusion::LowerBound { quantity: Quantity::IR, value: target },
            )?;
            push(col, cert)?;
        }
    }
    if let Some((hi, by)) = col.i_r.exact_or_upper().cloned() {
        let target = hi.scale(&BigRational::from_integer(BigInt::from(4)));
        let weaker = match col.i_s.exact_or_upper() {
            None => true,
            Some((cur, _)) => cur.compare(&target)? == std::cmp::Ordering::Greater,
        };
        if weaker {
            let cert = derived(
                rule::RICCI_TAUTOLOGICAL,
                "upper bound on I_r(M) known".into(),
                format!("I_r(M) <= {hi} by {by}"),
                Conclusion::UpperBound { quantity: Quantity::IS, value: target },
            )?;
            push(col, cert)?;
        }
    }
    Ok(out)
}

fn resolve_witness(
    expr: &SumExpression,
    catalog: &Catalog,
    options: &EvaluationOptions,
    notes: &mut Vec<String>,
) -> Result<Option<(QuadrupleWitness, Split, bool)>> {
    if let Some(blocks) = &options.witness {
        let split = split_expression(expr, blocks, options.m, catalog)?;
        let w = QuadrupleWitness::new(blocks.clone(), split.m)?;
        return Ok(Some((w, split, false)));
    }
    if !options.auto_witness {
        notes.push("no quadruple witness supplied; connected-sum rules were not evaluated".into());
        return Ok(None);
    }
    let surfaces = surface_summands(expr);
    let mut pool: Vec<ManifoldBlock> = catalog.get("K3").cloned().into_iter().collect();
    pool.extend(surfaces.iter().cloned());
    let Some(blocks) = suggest_witness(&surfaces, &pool) else {
        notes.push("no quadruple witness could be completed from the surface summands".into());
        return Ok(None);
    };
    let split = match split_expression(expr, &blocks, Some(options.m.unwrap_or(surfaces.len())), catalog) {
        Ok(s) => s,
        Err(e) => {
            notes.push(format!("completed witness does not split the expression: {e}"));
            return Ok(None);
        }
    };
    let w = QuadrupleWitness::new(blocks, split.m)?;
    notes.push(format!("witness auto-completed as ({})", w.names().join(", ")));
    Ok(Some((w, split, true)))
}

/// Runs every rule on `expr` and combines the conclusions.
pub fn evaluate_expression(
    expr: &SumExpression,
    catalog: &Catalog,
    options: &EvaluationOptions,
) -> Result<InvariantReport> {
    let mut notes = Vec::new();
    let mut rule_errors = Vec::new();
    let mut certs: Vec<Certificate> = Vec::new();

    let witness = resolve_witness(expr, catalog, options, &mut notes)?;

    certs.extend(yamabe_catalog(expr, catalog));
    if let Some((w, split, _)) = &witness {
        certs.push(yamabe(w, split)?);
    }
    certs.extend(yamabe_kobayashi(expr, catalog)?);

    if let Some((w, split, _)) = &witness {
        certs.push(i_s(w, split)?);
        certs.push(i_s_lower(w, split)?);
    }
    certs.extend(scalar_minimal_surface(expr));
    certs.push(scalar_nonneg(expr));
    certs.extend(scalar_subadditivity(expr, catalog)?);

    if let Some((w, split, _)) = &witness {
        certs.push(i_r(w, split, catalog)?);
        certs.extend(i_r_asd_family(w, split, catalog)?);
        certs.push(i_r_lower(w, split, expr)?);
        match einstein_obstruction(w, split) {
            Ok(c) => certs.push(c),
            Err(e @ Error::OutOfRange(_)) => rule_errors.push(RuleError {
                rule_id: rule::EINSTEIN_MONOPOLE.into(),
                message: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    certs.extend(spin_family_obstruction(expr, catalog));
    certs.push(hitchin_thorpe(expr));

    let mut col = Collector::default();
    for c in &certs {
        col.absorb(c)?;
    }
    certs.extend(derive_conversions(&mut col)?);

    let invariants = Invariants {
        yamabe: col.yamabe.finish("Yamabe invariant")?,
        i_s: col.i_s.finish("I_s")?,
        i_r: col.i_r.finish("I_r")?,
    };
    let ricci_scalar_gap = match (invariants.i_r.exact(), invariants.i_s.exact()) {
        (Some(r), Some(s)) => Some(r.checked_sub(&s.scale(&BigRational::new(BigInt::from(1), BigInt::from(4))))?),
        _ => None,
    };
    let by: Vec<String> = certs.iter().filter(|c| c.verdict() == Some(true)).map(|c| c.rule_id.clone()).collect();
    let einstein = if by.is_empty() { EinsteinVerdict::NotDetermined } else { EinsteinVerdict::Obstructed { by } };

    let b = expr.betti();
    Ok(InvariantReport {
        expression: expr.to_string(),
        betti: BettiSummary {
            b1: b.b1,
            b_plus: b.b_plus,
            b_minus: b.b_minus,
            chi: b.euler(),
            tau: b.signature(),
        },
        invariants,
        ricci_scalar_gap,
        einstein,
        witness: witness.map(|(w, split, auto)| WitnessEcho {
            blocks: w.names(),
            m: split.m,
            auto_completed: auto,
            rest: split.rest.to_string(),
        }),
        certificates: certs,
        rule_errors,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: i64, d: i64, p: u8, r: u64) -> ExactReal {
        ExactReal::from_parts(n, d, p, r).unwrap()
    }

    fn quad(cat: &Catalog, name: &str) -> [ManifoldBlock; 4] {
        let b = cat.get(name).unwrap().clone();
        [b.clone(), b.clone(), b.clone(), b]
    }

    fn expr(cat: &Catalog, parts: &[(&str, bool, u32)]) -> SumExpression {
        SumExpression::new(
            parts.iter().map(|(n, r, m)| Summand::new(cat.get(n).unwrap().clone(), *r, *m)).collect(),
        )
        .unwrap()
    }

    fn with_witness(cat: &Catalog, name: &str) -> EvaluationOptions {
        EvaluationOptions { witness: Some(quad(cat, name)), ..Default::default() }
    }

    #[test]
    fn octic_pair_golden_values() {
        let cat = Catalog::builtin();
        let e = expr(&cat, &[("DC8", false, 2), ("S4", false, 1)]);
        let r = evaluate_expression(&e, &cat, &with_witness(&cat, "DC8")).unwrap();
        assert_eq!(r.invariants.yamabe.exact(), Some(&x(-8, 1, 1, 2)));
        assert_eq!(r.invariants.i_s.exact(), Some(&x(128, 1, 2, 1)));
        assert_eq!(r.invariants.i_r.exact(), Some(&x(64, 1, 2, 1)));
        assert_eq!(r.ricci_scalar_gap, Some(x(32, 1, 2, 1)));
        assert!(r.is_conclusive());
    }

    #[test]
    fn four_octics_with_asd_rest() {
        let cat = Catalog::builtin();
        let e = expr(&cat, &[("DC8", false, 4), ("CP2bar", false, 5), ("S1xS3", false, 2)]);
        let r = evaluate_expression(&e, &cat, &with_witness(&cat, "DC8")).unwrap();
        assert_eq!(r.invariants.yamabe.exact(), Some(&x(-16, 1, 1, 1)));
        assert_eq!(r.invariants.i_s.exact(), Some(&x(256, 1, 2, 1)));
        assert_eq!(r.invariants.i_r.exact(), Some(&x(264, 1, 2, 1)));
        assert!(r.certificate(rule::RICCI_ASD_FAMILY).unwrap().fired());
    }

    #[test]
    fn cp2_rest_blocks_the_sum_rules() {
        let cat = Catalog::builtin();
        let e = expr(&cat, &[("DC8", false, 1), ("CP2", false, 1)]);
        let r = evaluate_expression(&e, &cat, &with_witness(&cat, "DC8")).unwrap();
        let cert = r.certificate(rule::YAMABE_SUM).unwrap();
        assert!(!cert.fired());
        assert!(cert.failing_checks().any(|c| c.condition == "b+(N) = 0"));
        assert_eq!(r.invariants.yamabe, InvariantValue::Unknown);
        assert_eq!(r.rule_errors.len(), 1);
    }

    #[test]
    fn dissolve_pair() {
        let cat = Catalog::builtin();
        let e = expr(&cat, &[("DC8", false, 1), ("DC8", true, 1)]);
        let r = evaluate_expression(&e, &cat, &EvaluationOptions::default()).unwrap();
        assert_eq!(r.invariants.i_s.exact(), Some(&ExactReal::zero()));
        assert_eq!(r.invariants.yamabe.lower(), Some(&x(12, 1, 1, 2)));
        assert_eq!(r.invariants.yamabe.upper(), Some(&x(8, 1, 1, 6)));
        assert_eq!(r.betti.b_plus, 44);
    }

    #[test]
    fn k3_pair_is_obstructed_twice() {
        let cat = Catalog::builtin();
        let e = expr(&cat, &[("K3", false, 2)]);
        let r = evaluate_expression(&e, &cat, &with_witness(&cat, "K3")).unwrap();
        match &r.einstein {
            EinsteinVerdict::Obstructed { by } => {
                assert!(by.contains(&rule::EINSTEIN_MONOPOLE.to_string()));
                assert!(by.contains(&rule::EINSTEIN_HITCHIN_THORPE.to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn catalog_yamabe_without_sum_rule() {
        let cat = Catalog::builtin();
        let e = expr(&cat, &[("CP2", false, 1)]);
        let r = evaluate_expression(&e, &cat, &EvaluationOptions::default()).unwrap();
        assert_eq!(r.invariants.yamabe.exact(), Some(&x(12, 1, 1, 2)));
        assert!(r.certificate(rule::YAMABE_SUM).is_none());
        assert_eq!(r.invariants.i_s.exact(), Some(&ExactReal::zero()));
    }

    #[test]
    fn auto_witness_pads_with_k3() {
        let cat = Catalog::builtin();
        let e = expr(&cat, &[("DC8", false, 2)]);
        let opts = EvaluationOptions { auto_witness: true, ..Default::default() };
        let r = evaluate_expression(&e, &cat, &opts).unwrap();
        let w = r.witness.as_ref().unwrap();
        assert!(w.auto_completed);
        assert_eq!(w.m, 2);
        assert_eq!(r.invariants.i_s.exact(), Some(&x(128, 1, 2, 1)));
    }

    #[test]
    fn bad_witness_is_an_error() {
        let cat = Catalog::builtin();
        let e = expr(&cat, &[("DC8", false, 2)]);
        assert!(matches!(
            evaluate_expression(&e, &cat, &with_witness(&cat, "K3")),
            Err(Error::MalformedSplit(_))
        ));
    }

    #[test]
    fn sphere_alone_is_inconclusive_for_sum_rules() {
        let cat = Catalog::builtin();
        let e = expr(&cat, &[("S1xS3", false, 1)]);
        let r = evaluate_expression(&e, &cat, &EvaluationOptions::default()).unwrap();
        assert_eq!(r.invariants.i_s.exact(), Some(&ExactReal::zero()));
        assert_eq!(r.einstein, EinsteinVerdict::NotDetermined);
    }
}
