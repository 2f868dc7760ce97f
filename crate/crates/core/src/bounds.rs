//! Closed-form values, lower bounds and the growth constant of the contiguous
//! bracket family.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{formula_size, FamilyId};
use crate::containment::Mode;
use crate::tree::{count_bracket, count_dary, Kind};
use crate::{Error, Result};

fn check_dk(d: usize, k: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "d must be at least 2, got {d}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

/// The constant in the noncontiguous d-ary lower bound: 1 for `d = 2`, 1/2 above.
pub fn eta(d: usize) -> Ratio<u64> {
    if d == 2 {
        Ratio::from_integer(1)
    } else {
        Ratio::new(1, 2)
    }
}

/// `d^(k-1) + k - 1`, the exact contiguous d-ary value.
pub fn exact_con_dary(d: usize, k: usize) -> Result<BigUint> {
    check_dk(d, k)?;
    Ok(BigUint::from(d).pow(k as u32 - 1) + BigUint::from(k - 1))
}

/// `(k+1)⌈log2(k+1)⌉ - 2^⌈log2(k+1)⌉ + 1`, with exact integer ceilings.
pub fn aepv(k: usize) -> Result<u64> {
    check_dk(2, k)?;
    let k = k as u64;
    // ⌈log2(k+1)⌉ is the bit length of k
    let c = u64::from(u64::BITS - k.leading_zeros());
    Ok((k + 1) * c - (1u64 << c) + 1)
}

/// `η_d · aepv(k)`.
pub fn lower_non_dary(d: usize, k: usize) -> Result<Ratio<u64>> {
    check_dk(d, k)?;
    Ok(eta(d) * Ratio::from_integer(aepv(k)?))
}

fn ceil_ratio(r: &Ratio<u64>) -> u64 {
    r.ceil().to_integer()
}

/// `(k - 1 - dq) d^q + q + 1` with `q = ⌊(k-2)/d⌋`.
pub fn lower_con_bracket(d: usize, k: usize) -> Result<BigUint> {
    check_dk(d, k)?;
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    let q = (k - 2) / d;
    Ok(BigUint::from(k - 1 - d * q) * BigUint::from(d).pow(q as u32) + BigUint::from(q + 1))
}

/// The weaker form `d^((k-2)/d)`.
pub fn lower_con_bracket_weak(d: usize, k: usize) -> Result<f64> {
    check_dk(d, k)?;
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    Ok((d as f64).powf((k - 2) as f64 / d as f64))
}

/// Least `N` with `C(N, k) >= count`; a host on `N` vertices has at most
/// `C(N, k)` sub-trees on `k` vertices.
fn least_binomial_at_least(k: usize, count: &BigUint) -> u64 {
    let mut n = k as u64;
    let mut c = BigUint::one();
    while &c < count {
        n += 1;
        // C(n, k) = C(n-1, k) * n / (n - k)
        c = c * BigUint::from(n) / BigUint::from(n - k as u64);
    }
    n
}

/// Counting bound over d-ary patterns.
pub fn counting_lower(d: usize, k: usize) -> Result<u64> {
    check_dk(d, k)?;
    Ok(least_binomial_at_least(k, &count_dary(d, k)))
}

/// Counting bound over `[d]`-tree patterns.
pub fn counting_lower_bracket(d: usize, k: usize) -> Result<u64> {
    check_dk(d, k)?;
    Ok(least_binomial_at_least(k, &count_bracket(d, k)))
}

/// Lower bound for noncontiguous `[d]`-trees transferred through edge
/// expansion: a universal `[d]`-tree on `N` vertices expands to a universal
/// d-ary tree on `d(N-1)+1`, so `N >= (lower_non_dary - 1)/d + 1`.
pub fn lower_non_bracket(d: usize, k: usize) -> Result<Ratio<u64>> {
    let l = lower_non_dary(d, k)?;
    if l <= Ratio::one() {
        return Ok(Ratio::one());
    }
    Ok((l - Ratio::one()) / Ratio::from_integer(d as u64) + Ratio::one())
}

/// `Σ_{i=a}^{d} x^i`, by closed form once the sum is long.
fn geometric(x: f64, a: usize, d: usize) -> f64 {
    if a > d {
        return 0.0;
    }
    if d - a < 64 || x == 1.0 {
        return (a..=d).map(|i| x.powi(i as i32)).sum();
    }
    (x.powf(a as f64) - x.powf(d as f64 + 1.0)) / (1.0 - x)
}

/// `p_d(x) = 1 - x - Σ_{⌊d/2⌋+2}^{d} x^i - Σ_{⌈d/2⌉+1}^{d} x^i`.
pub fn p_eval(d: usize, x: f64) -> f64 {
    1.0 - x - geometric(x, d / 2 + 2, d) - geometric(x, d.div_ceil(2) + 1, d)
}

/// `1/x_d` for the unique root `x_d` of `p_d` in `(0, 1)`, by bisection.
pub fn rho(d: usize) -> Result<f64> {
    check_dk(d, 1)?;
    // p_d(0) = 1 > 0 > p_d(1) and p_d is decreasing on (0, 1)
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if p_eval(d, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(1.0 / (0.5 * (lo + hi)))
}

/// `1 + (4 ln d - 4 ln ln d)/d`.
pub fn rho_asym(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!(
            "the asymptotic form needs d >= 3, got {d}"
        )));
    }
    let ld = (d as f64).ln();
    Ok(1.0 + (4.0 * ld - 4.0 * ld.ln()) / d as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub k: usize,
    pub root: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub target: f64,
    pub rows: Vec<GrowthRow>,
}

impl GrowthReport {
    /// Distance at the largest `k`.
    pub fn final_distance(&self) -> Option<f64> {
        self.rows.last().map(|r| r.distance)
    }
}

/// `size(k)^(1/k)` against `target` for each given `(k, size)`.
pub fn growth_check(sizes: &[(usize, f64)], target: f64) -> GrowthReport {
    let rows = sizes
        .iter()
        .filter(|(k, _)| *k > 0)
        .map(|&(k, s)| {
            let root = s.powf(1.0 / k as f64);
            GrowthRow {
                k,
                root,
                distance: (root - target).abs(),
            }
        })
        .collect();
    GrowthReport { target, rows }
}

/// Lower bounds, construction size and (when known) exact value for one query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub d: usize,
    pub k: usize,
    pub kind: Kind,
    pub mode: Mode,
    /// Lower bounds by name; rationals are strings such as `"5/2"`.
    pub bounds: BTreeMap<String, Value>,
    /// Ceiling of the largest lower bound.
    pub best_lower: u64,
    pub construction: String,
    pub construction_size: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

fn ratio_value(r: &Ratio<u64>) -> Value {
    if r.is_integer() {
        Value::from(r.to_integer())
    } else {
        Value::from(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn big_value(b: &BigUint) -> (Value, u64) {
    match b.to_u64() {
        Some(x) => (Value::from(x), x),
        None => (Value::from(b.to_string()), u64::MAX),
    }
}

/// One named lower bound: display value and its ceiling.
type Named = (&'static str, Value, u64);

fn named_bounds(d: usize, k: usize, kind: Kind, mode: Mode) -> Result<Vec<Named>> {
    check_dk(d, k)?;
    let mut out: Vec<Named> = Vec::new();
    match kind {
        Kind::Dary => {
            if mode == Mode::Contiguous {
                let (v, c) = big_value(&exact_con_dary(d, k)?);
                out.push(("exact_con_dary", v, c));
            }
            let l = lower_non_dary(d, k)?;
            out.push(("lower_non_dary", ratio_value(&l), ceil_ratio(&l)));
            if d == 2 {
                let a = aepv(k)?;
                out.push(("aepv", Value::from(a), a));
            }
            let c = counting_lower(d, k)?;
            out.push(("counting_lower", Value::from(c), c));
        }
        Kind::Bracket => {
            if mode == Mode::Contiguous && k >= 2 {
                let (v, c) = big_value(&lower_con_bracket(d, k)?);
                out.push(("lower_con_bracket", v, c));
            }
            let l = lower_non_bracket(d, k)?;
            out.push(("lower_non_bracket", ratio_value(&l), ceil_ratio(&l)));
            let c = counting_lower_bracket(d, k)?;
            out.push(("counting_lower_bracket", Value::from(c), c));
        }
    }
    Ok(out)
}

/// The lower bounds that apply to `(d, k, kind, mode)`, with the ceiling of
/// their maximum. Contiguous universality implies noncontiguous, so the
/// noncontiguous bounds also apply to the contiguous mode.
pub fn lower_bounds(
    d: usize,
    k: usize,
    kind: Kind,
    mode: Mode,
) -> Result<(BTreeMap<String, Value>, u64)> {
    let named = named_bounds(d, k, kind, mode)?;
    let best = named.iter().map(|n| n.2).fold(k as u64, u64::max);
    Ok((
        named
            .into_iter()
            .map(|(n, v, _)| (n.to_string(), v))
            .collect(),
        best,
    ))
}

/// Ceiling of the largest lower bound that does not come from the exact
/// contiguous d-ary formula, so an exhaustive search started here checks that
/// formula rather than assuming it.
pub fn independent_lower(d: usize, k: usize, kind: Kind, mode: Mode) -> Result<u64> {
    Ok(named_bounds(d, k, kind, mode)?
        .iter()
        .filter(|n| n.0 != "exact_con_dary")
        .map(|n| n.2)
        .fold(k as u64, u64::max))
}

pub fn bound_report(d: usize, k: usize, kind: Kind, mode: Mode) -> Result<BoundReport> {
    let (bounds, best_lower) = lower_bounds(d, k, kind, mode)?;
    let family = FamilyId::universal_for(kind, mode);
    Ok(BoundReport {
        d,
        k,
        kind,
        mode,
        bounds,
        best_lower,
        construction: family.to_string(),
        construction_size: formula_size(family, d, k)?,
        exact: None,
        witness: None,
    })
}

impl BoundReport {
    /// Whether `best_lower <= exact <= construction_size` (vacuous without `exact`).
    pub fn consistent(&self) -> bool {
        self.best_lower as u128 <= self.construction_size
            && self
                .exact
                .is_none_or(|n| self.best_lower <= n as u64 && n as u128 <= self.construction_size)
    }
}
