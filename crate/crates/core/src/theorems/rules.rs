//! Closed-form conclusions. Every function here is pure integer/rational
//! arithmetic producing exact values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exact::{ExactInterval, ExactReal};
use crate::topo::SumExpression;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `-4π √(2 Σ c₁²)`.
pub fn yamabe_value(c1_sum: i64) -> Result<ExactReal> {
    if c1_sum < 0 {
        return Err(Error::UnsupportedParameter(format!("negative c1^2 sum {c1_sum}")));
    }
    Ok(-ExactReal::sqrt_rational(&int(2 * c1_sum), 1)?.scale(&int(4)))
}

/// `32π² (a⁺)²`, the lower bound for `∫ s²`.
pub fn scalar_l2_bound(a_plus_sq: &BigRational) -> Result<ExactReal> {
    if a_plus_sq.is_negative() {
        return Err(Error::UnsupportedParameter("(a+)^2 must be non-negative".into()));
    }
    ExactReal::pi_multiple(a_plus_sq * int(32), 2)
}

/// `72π² (a⁺)²`, the lower bound for `∫ (s - √6 |W₊|)²`.
pub fn weyl_bound(a_plus_sq: &BigRational) -> Result<ExactReal> {
    if a_plus_sq.is_negative() {
        return Err(Error::UnsupportedParameter("(a+)^2 must be non-negative".into()));
    }
    ExactReal::pi_multiple(a_plus_sq * int(72), 2)
}

/// `32π² Σ c₁²`.
pub fn scalar_value(c1_sum: i64) -> Result<ExactReal> {
    scalar_l2_bound(&int(c1_sum))
}

/// `8π² [4m - (2χ+3τ)(N) + Σ c₁²]`.
pub fn ricci_value(m: i64, n_two_chi_three_tau: i64, c1_sum: i64) -> Result<ExactReal> {
    ExactReal::pi_multiple(int(8 * (4 * m - n_two_chi_three_tau + c1_sum)), 2)
}

/// `8π² [k + 4(ℓ + m - 1) + Σ c₁²]` for `N = k CP2bar # ℓ (S¹×S³)`.
pub fn ricci_asd_family_value(k: i64, l: i64, m: i64, c1_sum: i64) -> Result<ExactReal> {
    ExactReal::pi_multiple(int(8 * (k + 4 * (l + m - 1) + c1_sum)), 2)
}

/// `8π² [2(a⁺)² - (2χ+3τ)(M)]`.
pub fn ricci_monopole_bound(a_plus_sq: &BigRational, m_two_chi_three_tau: i64) -> Result<ExactReal> {
    ExactReal::pi_multiple((a_plus_sq * int(2) - int(m_two_chi_three_tau)) * int(8), 2)
}

/// `(2χ+3τ)(M) = (2χ+3τ)(N) - 4m + Σ c₁²`.
pub fn sum_two_chi_three_tau(m: i64, n_two_chi_three_tau: i64, c1_sum: i64) -> i64 {
    n_two_chi_three_tau - 4 * m + c1_sum
}

/// The obstruction gate in Betti form: `12(m-1) + 12 b₁(N) + 3 b₋(N) >= Σ c₁²`.
pub fn einstein_gate_betti(m: i64, n_b1: i64, n_b_minus: i64, c1_sum: i64) -> bool {
    12 * (m - 1) + 12 * n_b1 + 3 * n_b_minus >= c1_sum
}

/// The same gate in characteristic-number form: `4m - (2χ+3τ)(N) >= Σ c₁² / 3`.
pub fn einstein_gate_euler(m: i64, n_two_chi_three_tau: i64, c1_sum: i64) -> bool {
    3 * (4 * m - n_two_chi_three_tau) >= c1_sum
}

/// `(3·[4m - (2χ+3τ)(N)], 12(m-1) + 12 b₁ + 3 b₋)` for `N` with `b₊ = 0`.
pub fn einstein_gate_sides(m: i64, n_b1: i64, n_b_minus: i64) -> (i64, i64) {
    let chi = 2 - 2 * n_b1 + n_b_minus;
    let tau = -n_b_minus;
    (3 * (4 * m - (2 * chi + 3 * tau)), 12 * (m - 1) + 12 * n_b1 + 3 * n_b_minus)
}

/// `[𝒴(CP²), 𝒴(S⁴)] = [12π√2, 8π√6]`, valid for `k CP² # ℓ CP2bar` with `k + ℓ >= 1`.
pub fn kobayashi_interval(k: u32, l: u32) -> Result<ExactInterval> {
    if k + l == 0 {
        return Err(Error::OutOfRange("k + l = 0 in k CP2 # l CP2bar".into()));
    }
    ExactInterval::new(ExactReal::from_parts(12, 1, 1, 2)?, ExactReal::from_parts(8, 1, 1, 6)?)
}

/// `𝒴 <= 0 ↦ 𝒴²`, `𝒴 >= 0 ↦ 0`.
pub fn scalar_from_yamabe(y: &ExactReal) -> Result<ExactReal> {
    if y.is_positive() {
        Ok(ExactReal::zero())
    } else {
        y.square()
    }
}

/// `ℐ_s > 0 ↦ -√ℐ_s`. A vanishing `ℐ_s` leaves the sign of `𝒴` undetermined.
pub fn yamabe_from_scalar(i_s: &ExactReal) -> Result<ExactReal> {
    if !i_s.is_positive() {
        return Err(Error::SignUnknown);
    }
    Ok(-i_s.sqrt()?)
}

/// The `(k, ℓ)` with `expr ≅ k CP² # ℓ CP2bar`, using dissolve annotations for
/// pairs `X # rev(X)`, and the annotation names used.
pub fn dissolve_rewrite(expr: &SumExpression, catalog: &Catalog) -> Result<(u32, u32, Vec<String>)> {
    let (mut k, mut l) = (0u32, 0u32);
    let mut used = Vec::new();
    let is_catalog = |name: &str, block: &crate::topo::ManifoldBlock| catalog.get(name) == Some(block);
    let summands = expr.summands();
    for s in summands {
        let name = s.block.name.as_str();
        match (name, s.reversed) {
            ("CP2", false) | ("CP2bar", true) if is_catalog(name, &s.block) => k += s.multiplicity,
            ("CP2", true) | ("CP2bar", false) if is_catalog(name, &s.block) => l += s.multiplicity,
            ("S4", _) if is_catalog(name, &s.block) => {}
            _ => {
                let ann = catalog.dissolve_for(name).ok_or(Error::NoRewrite)?;
                if !is_catalog(name, &s.block) {
                    return Err(Error::NoRewrite);
                }
                let partner = summands
                    .iter()
                    .find(|t| t.block.name == name && t.reversed != s.reversed)
                    .ok_or(Error::NoRewrite)?;
                if partner.multiplicity != s.multiplicity {
                    return Err(Error::NoRewrite);
                }
                // Count each pair once, on the unreversed side.
                if !s.reversed {
                    k += s.multiplicity * ann.cp2;
                    l += s.multiplicity * ann.cp2bar;
                    used.push(name.to_string());
                }
            }
        }
    }
    if k + l == 0 {
        return Err(Error::NoRewrite);
    }
    let b = expr.betti();
    if (b.b1, b.b_plus, b.b_minus) != (0, k, l) {
        return Err(Error::Internal(format!(
            "dissolve rewrite to {k} CP2 # {l} CP2bar disagrees with Betti data {b:?}"
        )));
    }
    Ok((k, l, used))
}
