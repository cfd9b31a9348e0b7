//! Polynomial structure of the anti-plurigenus series.
//!
//! Write `m = n*r + t` with `r` the Cartier index and `0 <= t < r`. Then
//! `Q_t(n) := P[-(nr+t)]` splits as
//!
//! ```text
//! Q_t(n) = Q^_t(n) + A*n + C(t),   Q^_t(n) = (nr+t)(nr+t+1)(2nr+2t+1)/12 * (-K^3)
//! ```
//!
//! with a slope `A` that does not depend on `t`. For `n <= -1` the series is
//! continued by Serre duality, `Q_t(n) = -P[-(-(nr+t)-1)] <= 0`.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::basket::{cubic_coefficient, int, rat, FormalBasket, Rational};
use crate::error::{Error, Result};

/// `Q^_t(n)`; `n` may be negative.
pub fn qhat(r: u64, t: u64, n: i64, k3: &Rational) -> Rational {
    let m = BigInt::from(n) * BigInt::from(r) + BigInt::from(t);
    cubic_coefficient(&m) * k3
}

/// `Q_t(n) = Q^_t(n) + A n + C(t)` for one residue `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QtDecomposition {
    pub r: u64,
    pub t: u64,
    pub a: Rational,
    pub c_t: Rational,
    /// `-K^3`.
    pub k3: Rational,
}

impl QtDecomposition {
    pub fn eval(&self, n: i64) -> Rational {
        qhat(self.r, self.t, n, &self.k3) + &self.a * int(n) + &self.c_t
    }
}

/// `Q_t(n)` computed from the basket: directly for `nr + t >= 0`, through
/// the duality reflection otherwise.
pub fn series_value(basket: &FormalBasket, t: u64, n: i64) -> Rational {
    let r = basket.cartier_index() as i128;
    let m = i128::from(n) * r + t as i128;
    if m >= 0 {
        basket.anti_plurigenus_exact(m as u64)
    } else {
        -basket.anti_plurigenus_exact((-m - 1) as u64)
    }
}

/// Extracts `A` and `C(t)` from `n = 0, 1` and checks the residual at
/// `n = 2, 3` lies on the same line.
pub fn decompose_series(basket: &FormalBasket, t: u64) -> Result<QtDecomposition> {
    let r = basket.cartier_index();
    if t >= r {
        return Err(Error::DomainError(format!(
            "residue t = {t} must be below the Cartier index {r}"
        )));
    }
    let k3 = basket.anti_k3();
    let residual = |n: i64| series_value(basket, t, n) - qhat(r, t, n, &k3);
    let c_t = residual(0);
    let a = residual(1) - &c_t;
    for n in 2..=3 {
        if residual(n) != &c_t + &a * int(n) {
            return Err(Error::NonLinearResidual { r, t });
        }
    }
    Ok(QtDecomposition { r, t, a, c_t, k3 })
}

/// Longest period [`decompose_all`] accepts.
pub const MAX_FULL_PERIOD: u64 = 10_000_000;

/// `P[-m]` for `0 <= m < len`, scaled by `12r` (`r` the Cartier index) so
/// that every value is an integer. Construction fails on `i128` overflow
/// and callers fall back to exact rationals.
struct ScaledSeries {
    /// `12r`.
    scale: i128,
    /// `r (-K^3)`.
    vn: i128,
    values: Vec<i128>,
}

impl ScaledSeries {
    fn new(basket: &FormalBasket, len: u64) -> Option<Self> {
        let r = i128::from(basket.cartier_index());
        let mut vn = (2 * i128::from(basket.p1()) - 6).checked_mul(r)?;
        let mut weights = Vec::with_capacity(basket.points().len());
        for q in basket.points() {
            let (b, rq) = (i128::from(q.b()), i128::from(q.r()));
            let w = r / rq;
            vn = vn.checked_add(b * (rq - b) * w)?;
            weights.push((b, rq, w));
        }
        let scale = 12 * r;
        let mut s = ScaledSeries {
            scale,
            vn,
            values: Vec::with_capacity(usize::try_from(len).ok()?),
        };
        // running 2r sum_q l_q(m+1)
        let mut local: i128 = 0;
        for m in 0..i128::from(len) {
            let linear = scale
                .checked_mul(2 * m + 1)?
                .checked_sub(local.checked_mul(6)?)?;
            s.values.push(s.cubic(m)?.checked_add(linear)?);
            let j = m + 1;
            for &(b, rq, w) in &weights {
                let res = j * b % rq;
                local = local.checked_add(res * (rq - res) * w)?;
            }
        }
        Some(s)
    }

    /// `12r` times `Q^(m) = m(m+1)(2m+1)/12 (-K^3)`.
    fn cubic(&self, m: i128) -> Option<i128> {
        m.checked_mul(m + 1)?
            .checked_mul(2 * m + 1)?
            .checked_mul(self.vn)
    }

    /// Scaled `P[-m]`, continued to `m < 0` by `-P[-(-m-1)]`.
    fn at(&self, m: i128) -> i128 {
        if m >= 0 {
            self.values[m as usize]
        } else {
            -self.values[(-m - 1) as usize]
        }
    }

    fn residual(&self, m: i128) -> Option<i128> {
        self.at(m).checked_sub(self.cubic(m)?)
    }

    fn rational(&self, v: i128) -> Rational {
        Rational::new(BigInt::from(v), BigInt::from(self.scale))
    }

    /// Scaled `(A, C(t))` for every residue.
    fn lines(&self, r: u64) -> Option<Result<Vec<(i128, i128)>>> {
        let ri = i128::from(r);
        let mut out = Vec::with_capacity(r as usize);
        for t in 0..ri {
            let c = self.residual(t)?;
            let a = self.residual(ri + t)?.checked_sub(c)?;
            for n in 2..=3 {
                if self.residual(n * ri + t)? != c.checked_add(a.checked_mul(n)?)? {
                    return Some(Err(Error::NonLinearResidual { r, t: t as u64 }));
                }
            }
            out.push((a, c));
        }
        Some(Ok(out))
    }
}

/// [`decompose_series`] for every residue `0 <= t < r`, from one pass over
/// `m < 4r` in scaled integer arithmetic.
pub fn decompose_all(basket: &FormalBasket) -> Result<Vec<QtDecomposition>> {
    let r = basket.cartier_index();
    if r > MAX_FULL_PERIOD {
        return Err(Error::DomainError(format!(
            "Cartier index {r} exceeds the full-period limit {MAX_FULL_PERIOD}"
        )));
    }
    let lines = ScaledSeries::new(basket, 4 * r).and_then(|s| Some((s.lines(r)?, s)));
    let Some((lines, s)) = lines else {
        return (0..r).map(|t| decompose_series(basket, t)).collect();
    };
    let k3 = basket.anti_k3();
    Ok(lines?
        .into_iter()
        .enumerate()
        .map(|(t, (a, c))| QtDecomposition {
            r,
            t: t as u64,
            a: s.rational(a),
            c_t: s.rational(c),
            k3: k3.clone(),
        })
        .collect())
}

/// Closed form of the slope, `A = (r/12)(24 - sum_i (r_i - 1/r_i))`.
pub fn slope_a(basket: &FormalBasket) -> Rational {
    let r = basket.cartier_index() as i64;
    rat(r, 12) * (int(24) - basket.index_sum())
}

/// Right-hand side of `A >= -(2r^2 + 6t^2 + 6t + 1) r (-K^3) / 12`.
pub fn bound_a_lower(r: u64, t: u64, k3: &Rational) -> Result<Rational> {
    if r == 0 || t >= r {
        return Err(Error::DomainError(format!(
            "need 0 <= t < r, got r = {r}, t = {t}"
        )));
    }
    let (r, t) = (BigInt::from(r), BigInt::from(t));
    let poly = BigInt::from(2) * &r * &r + BigInt::from(6) * &t * &t + BigInt::from(6) * &t + 1;
    Ok(-Rational::new(poly * r, BigInt::from(12)) * k3)
}

/// Lower bound on `A` obtained from `Q_t(0) >= 0` and `Q_t(-1) <= 0` for a
/// single residue `2 <= t < r`:
/// `(-6t^2 + (6r-6)t - 2r^2 + 3r - 1) r (-K^3) / 12`.
pub fn slope_bound_at(r: u64, t: u64, k3: &Rational) -> Result<Rational> {
    if t < 2 || t >= r {
        return Err(Error::DomainError(format!(
            "need 2 <= t < r, got r = {r}, t = {t}"
        )));
    }
    let (r, t) = (r as i64, t as i64);
    let poly = -6 * t * t + (6 * r - 6) * t - 2 * r * r + 3 * r - 1;
    Ok(rat(poly * r, 12) * k3)
}

/// The best single-residue bound: `t = (r-1)/2` for odd `r >= 5`,
/// `t = r/2` for even `r >= 4`. Diagnostic only.
pub fn interim_slope_bound(r: u64, k3: &Rational) -> Option<Rational> {
    if r < 4 {
        return None;
    }
    let t = if r % 2 == 1 { (r - 1) / 2 } else { r / 2 };
    slope_bound_at(r, t, k3).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpKind {
    /// Bound on `P[-(r+2)]`, valid for `r >= 4`.
    RPlus2,
    /// Bound on `P[-nr]`, `n >= 1`.
    NTimesR(u64),
}

/// Lower bounds on anti-plurigenera used to exhibit a non-pencil degree:
///
/// * `P[-(r+2)] >= (r^2 + 10r + 24) r (-K^3) / 8` for `r >= 4`;
/// * `P[-nr] >= (n^2 - 1)(2nr + 3) r^2 (-K^3) / 12` for `n >= 1`.
pub fn np_lower_bound(r: u64, kind: NpKind, k3: &Rational) -> Result<Rational> {
    let rb = BigInt::from(r);
    match kind {
        NpKind::RPlus2 => {
            if r < 4 {
                return Err(Error::DomainError(format!(
                    "P[-(r+2)] bound needs r >= 4, got {r}"
                )));
            }
            let poly = &rb * &rb + BigInt::from(10) * &rb + 24;
            Ok(Rational::new(poly * rb, BigInt::from(8)) * k3)
        }
        NpKind::NTimesR(n) => {
            if n < 1 || r < 1 {
                return Err(Error::DomainError(format!(
                    "P[-nr] bound needs n >= 1 and r >= 1, got n = {n}, r = {r}"
                )));
            }
            let nb = BigInt::from(n);
            let poly = (&nb * &nb - 1) * (BigInt::from(2) * &nb * &rb + 3) * &rb * &rb;
            Ok(Rational::new(poly, BigInt::from(12)) * k3)
        }
    }
}

/// Which constraint a [`Violation`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintTag {
    /// `-K^3 > 0`.
    VolumePositive,
    /// `P[-m]` integral up to the horizon.
    Integrality,
    /// `P[-m] >= 0` up to the horizon.
    NonNegative,
    /// `Q_t(n) >= 0` for `n >= 1`, or `n = 0` and `t >= 2`.
    SeriesNonNegative,
    /// `Q_t(n) <= 0` for `n <= -1`.
    Reflection,
    /// `sum (r_i - 1/r_i) < 24`.
    SumBound,
    /// `A + C(t) >= -Q^_t(1)`.
    UpperShift,
    /// `A - C(t) >= Q^_t(-1)`.
    LowerShift,
    /// `A >= -(2r^2 + 6t^2 + 6t + 1) r (-K^3)/12`.
    SlopeLower,
}

impl ConstraintTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstraintTag::VolumePositive => "volume_positive",
            ConstraintTag::Integrality => "integrality",
            ConstraintTag::NonNegative => "non_negative",
            ConstraintTag::SeriesNonNegative => "series_non_negative",
            ConstraintTag::Reflection => "reflection",
            ConstraintTag::SumBound => "sum_bound",
            ConstraintTag::UpperShift => "upper_shift",
            ConstraintTag::LowerShift => "lower_shift",
            ConstraintTag::SlopeLower => "slope_lower",
        }
    }
}

impl fmt::Display for ConstraintTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A failed constraint. `index` is `m` for plurigenus checks and `n` for
/// series checks, in which case `t` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub tag: ConstraintTag,
    pub t: Option<u64>,
    pub index: i64,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub k3_positive: bool,
    pub integral: bool,
    pub signs_ok: bool,
    pub sum_bound_ok: bool,
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.k3_positive && self.integral && self.signs_ok && self.sum_bound_ok
    }
}

/// Series range scanned by [`feasibility`].
pub const DEFAULT_N_RANGE: RangeInclusive<i64> = -3..=3;

/// Full numerical feasibility check over [`DEFAULT_N_RANGE`].
pub fn feasibility(basket: &FormalBasket) -> FeasibilityReport {
    check_sign_constraints(basket, DEFAULT_N_RANGE)
}

/// Scans `Q_t(n)` for every residue `t` and every `n` in `n_range`, and
/// checks `-K^3 > 0`, integrality and non-negativity of `P[-m]` for
/// `1 <= m <= 2r`, and the index-sum bound.
pub fn check_sign_constraints(
    basket: &FormalBasket,
    n_range: RangeInclusive<i64>,
) -> FeasibilityReport {
    check_sign_constraints_scaled(basket, &n_range)
        .unwrap_or_else(|| check_sign_constraints_direct(basket, n_range))
}

fn check_sign_constraints_scaled(
    basket: &FormalBasket,
    n_range: &RangeInclusive<i64>,
) -> Option<FeasibilityReport> {
    let r = basket.cartier_index();
    let (lo, hi) = (*n_range.start(), *n_range.end());
    let reach = (hi.max(0) as u64 + 1).max(lo.min(0).unsigned_abs()).max(2);
    let len = r.checked_mul(reach)?.checked_add(1)?;
    if len > 4 * MAX_FULL_PERIOD {
        return None;
    }
    let s = ScaledSeries::new(basket, len)?;
    let mut violations = Vec::new();

    let k3 = basket.anti_k3();
    let k3_positive = k3.is_positive();
    if !k3_positive {
        violations.push(Violation {
            tag: ConstraintTag::VolumePositive,
            t: None,
            index: 0,
            value: k3,
        });
    }
    let sum = basket.index_sum();
    let sum_bound_ok = sum < int(24);
    if !sum_bound_ok {
        violations.push(Violation {
            tag: ConstraintTag::SumBound,
            t: None,
            index: 0,
            value: sum,
        });
    }

    let (mut integral, mut signs_ok) = (true, true);
    for m in 1..=i128::from(basket.feasibility_horizon()) {
        let v = s.at(m);
        if v % s.scale != 0 {
            integral = false;
            violations.push(Violation {
                tag: ConstraintTag::Integrality,
                t: None,
                index: m as i64,
                value: s.rational(v),
            });
        }
        if v < 0 {
            signs_ok = false;
            violations.push(Violation {
                tag: ConstraintTag::NonNegative,
                t: None,
                index: m as i64,
                value: s.rational(v),
            });
        }
    }

    let ri = i128::from(r);
    for t in 0..ri {
        for n in n_range.clone() {
            let v = s.at(i128::from(n) * ri + t);
            let tag = if n >= 1 || (n == 0 && t >= 2) {
                if v >= 0 {
                    continue;
                }
                ConstraintTag::SeriesNonNegative
            } else if n <= -1 {
                if v <= 0 {
                    continue;
                }
                ConstraintTag::Reflection
            } else {
                continue;
            };
            signs_ok = false;
            violations.push(Violation {
                tag,
                t: Some(t as u64),
                index: n,
                value: s.rational(v),
            });
        }
    }

    Some(FeasibilityReport {
        k3_positive,
        integral,
        signs_ok,
        sum_bound_ok,
        violations,
    })
}

fn check_sign_constraints_direct(
    basket: &FormalBasket,
    n_range: RangeInclusive<i64>,
) -> FeasibilityReport {
    let mut violations = Vec::new();

    let k3 = basket.anti_k3();
    let k3_positive = k3.is_positive();
    if !k3_positive {
        violations.push(Violation {
            tag: ConstraintTag::VolumePositive,
            t: None,
            index: 0,
            value: k3,
        });
    }

    let sum = basket.index_sum();
    let sum_bound_ok = sum < int(24);
    if !sum_bound_ok {
        violations.push(Violation {
            tag: ConstraintTag::SumBound,
            t: None,
            index: 0,
            value: sum,
        });
    }

    let mut integral = true;
    let mut signs_ok = true;
    for m in 1..=basket.feasibility_horizon() {
        let v = basket.anti_plurigenus_exact(m);
        if !v.is_integer() {
            integral = false;
            violations.push(Violation {
                tag: ConstraintTag::Integrality,
                t: None,
                index: m as i64,
                value: v.clone(),
            });
        }
        if v.is_negative() {
            signs_ok = false;
            violations.push(Violation {
                tag: ConstraintTag::NonNegative,
                t: None,
                index: m as i64,
                value: v,
            });
        }
    }

    let r = basket.cartier_index();
    for t in 0..r {
        for n in n_range.clone() {
            let (tag, bad) = if n >= 1 || (n == 0 && t >= 2) {
                let v = series_value(basket, t, n);
                (
                    ConstraintTag::SeriesNonNegative,
                    v.is_negative().then_some(v),
                )
            } else if n <= -1 {
                let v = series_value(basket, t, n);
                (ConstraintTag::Reflection, v.is_positive().then_some(v))
            } else {
                continue;
            };
            if let Some(value) = bad {
                signs_ok = false;
                violations.push(Violation {
                    tag,
                    t: Some(t),
                    index: n,
                    value,
                });
            }
        }
    }

    FeasibilityReport {
        k3_positive,
        integral,
        signs_ok,
        sum_bound_ok,
        violations,
    }
}

/// Evaluates the series inequalities for every residue: sign conditions
/// for `n` in `[-3, 3]`, and the bounds on `A + C(t)`, `A - C(t)` and `A`.
/// Returns every inequality that fails.
pub fn inequality_violations(basket: &FormalBasket) -> Result<Vec<Violation>> {
    match inequality_violations_scaled(basket) {
        Some(found) => found,
        None => inequality_violations_direct(basket),
    }
}

fn inequality_violations_scaled(basket: &FormalBasket) -> Option<Result<Vec<Violation>>> {
    let r = basket.cartier_index();
    if r > MAX_FULL_PERIOD {
        return None;
    }
    let s = ScaledSeries::new(basket, 4 * r)?;
    let lines = match s.lines(r)? {
        Ok(lines) => lines,
        Err(e) => return Some(Err(e)),
    };
    let ri = i128::from(r);
    let mut out = Vec::new();
    let mut push = |tag, t: i128, index: i64, v: i128| {
        out.push(Violation {
            tag,
            t: Some(t as u64),
            index,
            value: s.rational(v),
        })
    };
    for (t, &(a, c)) in (0..ri).zip(&lines) {
        for n in -3..=3i128 {
            // fitted polynomial, not the series itself
            let v = s
                .cubic(n * ri + t)?
                .checked_add(a.checked_mul(n)?)?
                .checked_add(c)?;
            if (n >= 1 || (n == 0 && t >= 2)) && v < 0 {
                push(ConstraintTag::SeriesNonNegative, t, n as i64, v);
            } else if n <= -1 && v > 0 {
                push(ConstraintTag::Reflection, t, n as i64, v);
            }
        }
        let upper = a.checked_add(c)?.checked_add(s.cubic(ri + t)?)?;
        if upper < 0 {
            push(ConstraintTag::UpperShift, t, 1, upper);
        }
        let lower = a.checked_sub(c)?.checked_sub(s.cubic(t - ri)?)?;
        if lower < 0 {
            push(ConstraintTag::LowerShift, t, -1, lower);
        }
        let poly = 2 * ri * ri + 6 * t * t + 6 * t + 1;
        let gap = a.checked_add(poly.checked_mul(ri)?.checked_mul(s.vn)?)?;
        if gap < 0 {
            push(ConstraintTag::SlopeLower, t, 0, gap);
        }
    }
    Some(Ok(out))
}

fn inequality_violations_direct(basket: &FormalBasket) -> Result<Vec<Violation>> {
    let r = basket.cartier_index();
    let k3 = basket.anti_k3();
    let mut out = Vec::new();
    for t in 0..r {
        let d = decompose_series(basket, t)?;
        for n in -3..=3i64 {
            let v = d.eval(n);
            if (n >= 1 || (n == 0 && t >= 2)) && v.is_negative() {
                out.push(Violation {
                    tag: ConstraintTag::SeriesNonNegative,
                    t: Some(t),
                    index: n,
                    value: v,
                });
            } else if n <= -1 && v.is_positive() {
                out.push(Violation {
                    tag: ConstraintTag::Reflection,
                    t: Some(t),
                    index: n,
                    value: v,
                });
            }
        }
        let upper = &d.a + &d.c_t + qhat(r, t, 1, &k3);
        if upper.is_negative() {
            out.push(Violation {
                tag: ConstraintTag::UpperShift,
                t: Some(t),
                index: 1,
                value: upper,
            });
        }
        let lower = &d.a - &d.c_t - qhat(r, t, -1, &k3);
        if lower.is_negative() {
            out.push(Violation {
                tag: ConstraintTag::LowerShift,
                t: Some(t),
                index: -1,
                value: lower,
            });
        }
        let slope_gap = &d.a - bound_a_lower(r, t, &k3)?;
        if slope_gap.is_negative() {
            out.push(Violation {
                tag: ConstraintTag::SlopeLower,
                t: Some(t),
                index: 0,
                value: slope_gap,
            });
        }
    }
    Ok(out)
}

/// `Q_t(n)` via the fitted polynomial, for comparison with
/// [`series_value`].
pub fn polynomial_value(basket: &FormalBasket, t: u64, n: i64) -> Result<Rational> {
    Ok(decompose_series(basket, t)?.eval(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn case1() -> FormalBasket {
        FormalBasket::parse("9x(1,2),(1,3),(1,7)", 0).unwrap()
    }

    #[test]
    fn qhat_examples() {
        let k3 = rat(5, 7);
        for r in [1u64, 3, 10] {
            for t in 0..r {
                let t_i = t as i64;
                let expected = rat(t_i * (t_i + 1) * (2 * t_i + 1), 12) * &k3;
                assert_eq!(qhat(r, t, 0, &k3), expected);
            }
        }
        assert_eq!(qhat(4, 2, 1, &int(1)), rat(91, 2));
        assert_eq!(qhat(42, 6, 0, &rat(1, 42)), rat(13, 12));
        // negative n: m = -2*3 + 1 = -5, (-5)(-4)(-9)/12 = -15
        assert_eq!(qhat(3, 1, -2, &int(1)), int(-15));
    }

    #[test]
    fn decompose_case1() {
        let b = case1();
        let d = decompose_series(&b, 6).unwrap();
        assert_eq!(d.a, rat(41, 12));
        assert_eq!(d.c_t, rat(11, 12));
        assert_eq!(b.anti_plurigenus(48).unwrap(), BigInt::from(457));
        assert_eq!(decompose_series(&b, 0).unwrap().a, rat(41, 12));
        assert!(matches!(
            decompose_series(&b, 42),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn decompose_gorenstein() {
        let b = FormalBasket::parse("", 35).unwrap();
        let d = decompose_series(&b, 0).unwrap();
        assert_eq!(d.a, int(2));
        // P[-n] = Q^(n) + 2n + 1 on projective 3-space
        assert_eq!(d.c_t, int(1));
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slope_a(&case1()), rat(41, 12));
        assert_eq!(slope_a(&FormalBasket::parse("", 35).unwrap()), int(2));
        let b = FormalBasket::parse("5x(1,2)", 2).unwrap();
        assert_eq!(slope_a(&b), rat(11, 4));
        assert_eq!(decompose_series(&b, 1).unwrap().a, rat(11, 4));
    }

    #[test]
    fn feasibility_examples() {
        let rep = check_sign_constraints(&case1(), -5..=5);
        assert!(rep.is_feasible(), "{:?}", rep.violations);
        assert!(rep.violations.is_empty());

        let rep = feasibility(&FormalBasket::parse("(1,2)", 0).unwrap());
        assert!(!rep.k3_positive);
        assert_eq!(rep.violations[0].value, rat(-11, 2));
        assert!(!rep.is_feasible());

        let rep = feasibility(&FormalBasket::parse("", 3).unwrap());
        assert!(!rep.k3_positive);
        assert!(!rep.is_feasible());
    }

    #[test]
    fn sum_bound_flag() {
        // 16 points of index 2 give sum 24, which is not allowed
        let b = FormalBasket::parse("16x(1,2)", 0).unwrap();
        let rep = feasibility(&b);
        assert!(!rep.sum_bound_ok);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.tag == ConstraintTag::SumBound && v.value == int(24)));
    }

    #[test]
    fn bound_a_lower_examples() {
        let k3 = rat(1, 42);
        let lb = bound_a_lower(42, 6, &k3).unwrap();
        assert_eq!(lb, rat(-3781, 12));
        assert!(rat(41, 12) >= lb);
        for r in 2..10u64 {
            let ri = r as i64;
            assert_eq!(
                bound_a_lower(r, 0, &int(1)).unwrap(),
                rat(-(2 * ri * ri + 1) * ri, 12)
            );
        }
        assert_eq!(bound_a_lower(2, 0, &rat(1, 2)).unwrap(), rat(-3, 4));
        assert!(bound_a_lower(3, 3, &k3).is_err());
    }

    #[test]
    fn np_bound_examples() {
        let v = rat(3, 11);
        assert_eq!(np_lower_bound(4, NpKind::RPlus2, &v).unwrap(), int(40) * &v);
        assert_eq!(
            np_lower_bound(2, NpKind::NTimesR(2), &v).unwrap(),
            int(11) * &v
        );
        assert!(np_lower_bound(7, NpKind::NTimesR(1), &v).unwrap().is_zero());
        assert!(np_lower_bound(3, NpKind::RPlus2, &v).is_err());
        assert!(np_lower_bound(3, NpKind::NTimesR(0), &v).is_err());
    }

    #[test]
    fn interim_bounds() {
        let v = int(1);
        // odd r: (-r^2/2 + 1/2) r / 12
        assert_eq!(interim_slope_bound(5, &v).unwrap(), int(-5));
        // even r: (-r^2/2 - 1) r / 12
        assert_eq!(interim_slope_bound(4, &v).unwrap(), rat(-9 * 4, 12));
        assert!(interim_slope_bound(3, &v).is_none());
        // the interim bound is the best single-residue bound
        for r in 4..20u64 {
            let best = interim_slope_bound(r, &v).unwrap();
            for t in 2..r {
                assert!(slope_bound_at(r, t, &v).unwrap() <= best);
            }
        }
    }

    #[test]
    fn case1_inequalities_hold() {
        assert!(inequality_violations(&case1()).unwrap().is_empty());
    }

    #[test]
    fn reflection_matches_polynomial() {
        let b = case1();
        for t in [0u64, 1, 6, 41] {
            for n in -3..=3 {
                assert_eq!(series_value(&b, t, n), polynomial_value(&b, t, n).unwrap());
            }
        }
    }

    #[test]
    fn full_period_matches_single_residue() {
        let b = case1();
        let all = decompose_all(&b).unwrap();
        assert_eq!(all.len(), 42);
        for t in [0u64, 1, 6, 41] {
            assert_eq!(all[t as usize], decompose_series(&b, t).unwrap());
        }
        let g = decompose_all(&FormalBasket::parse("", 4).unwrap()).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].a, int(2));
    }

    #[test]
    fn scaled_checks_match_rational_reference() {
        use crate::sample::{sample_baskets, SampleSpec};
        let spec = SampleSpec {
            max_index: 9,
            max_points: 6,
            ..Default::default()
        };
        let mut baskets = sample_baskets(5, 60, &spec);
        baskets.push(case1());
        for b in &baskets {
            assert_eq!(
                feasibility(b),
                check_sign_constraints_direct(b, DEFAULT_N_RANGE),
                "{b}"
            );
            assert_eq!(
                check_sign_constraints(b, -5..=4),
                check_sign_constraints_direct(b, -5..=4),
                "{b}"
            );
            assert_eq!(
                inequality_violations(b),
                inequality_violations_direct(b),
                "{b}"
            );
        }
    }
}
