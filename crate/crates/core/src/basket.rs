//! Baskets of terminal quotient singularities and the Riemann–Roch
//! evaluation of anti-plurigenera.
//!
//! A basket point `(b, r)` stands for a cyclic quotient singularity of type
//! `1/r(1, -1, b)`. A [`FormalBasket`] pairs a multiset of such points with the
//! integer `P[-1]`; everything else (the anti-canonical volume, every
//! `P[-m]`, the Cartier index) is determined by that data:
//!
//! ```text
//! -K^3   = 2 P[-1] - 6 + sum_q b(r-b)/r
//! P[-m]  = m(m+1)(2m+1)/12 * (-K^3) + (2m+1) - sum_q l_q(m+1)
//! l_q(m) = sum_{j=1}^{m-1} jb~ (r - jb~) / (2r)        (jb~ = jb mod r)
//! ```
//!
//! All arithmetic is exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number backed by arbitrary-precision integers.
pub type Rational = BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `m(m+1)(2m+1)/12`, the coefficient of `-K^3` in `P[-m]`.
pub(crate) fn cubic_coefficient(m: &BigInt) -> Rational {
    let num = m * (m + 1u32) * (BigInt::from(2u32) * m + 1u32);
    Rational::new(num, BigInt::from(12u32))
}

/// One terminal cyclic quotient point `1/r(1, -1, b)`.
///
/// The given `b` is kept as entered since prime packing depends on it, while
/// equality, hashing, ordering and display all go through the reflection
/// class `min(b, r - b)`.
#[derive(Debug, Clone, Copy)]
pub struct BasketPoint {
    b: u32,
    r: u32,
}

/// Validates `(b, r)` and returns the corresponding point.
pub fn canonical_point(b: i64, r: i64) -> Result<BasketPoint> {
    if r < 2 || b < 1 || b > r - 1 || r > u32::MAX as i64 {
        return Err(Error::InvalidPoint { b, r });
    }
    let g = b.gcd(&r);
    if g != 1 {
        return Err(Error::NonTerminalPoint { b, r, gcd: g });
    }
    Ok(BasketPoint {
        b: b as u32,
        r: r as u32,
    })
}

impl BasketPoint {
    pub fn new(b: i64, r: i64) -> Result<Self> {
        canonical_point(b, r)
    }

    /// The stored `b`, as given.
    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Display representative `min(b, r - b)`.
    pub fn canonical_b(&self) -> u32 {
        self.b.min(self.r - self.b)
    }

    pub fn canonical(&self) -> BasketPoint {
        BasketPoint {
            b: self.canonical_b(),
            r: self.r,
        }
    }

    /// The reflected point `(r - b, r)`.
    pub fn reflected(&self) -> BasketPoint {
        BasketPoint {
            b: self.r - self.b,
            r: self.r,
        }
    }

    /// `r - 1/r`, this point's share of the bound `sum < 24`.
    pub fn index_weight(&self) -> Rational {
        let r = i64::from(self.r);
        rat(r * r - 1, r)
    }

    /// `b(r - b)/r`, this point's share of `-K^3`.
    pub fn volume_term(&self) -> Rational {
        let (b, r) = (i64::from(self.b), i64::from(self.r));
        rat(b * (r - b), r)
    }

    fn key(&self) -> (u32, u32) {
        (self.r, self.canonical_b())
    }
}

impl PartialEq for BasketPoint {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for BasketPoint {}

impl Hash for BasketPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for BasketPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasketPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for BasketPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.canonical_b(), self.r)
    }
}

/// Reid's periodic correction `l_q(m) = sum_{j=1}^{m-1} jb~(r - jb~)/(2r)`.
///
/// Every full period of `r` consecutive terms contributes `(r^2 - 1)/12`, so
/// only the final partial period is summed term by term.
pub fn local_contribution(q: &BasketPoint, m: u64) -> Rational {
    Rational::new(local_numerator(q, m), BigInt::from(2 * q.r))
}

/// `2r l_q(m)`, an integer.
fn local_numerator(q: &BasketPoint, m: u64) -> BigInt {
    if m <= 1 {
        return BigInt::zero();
    }
    let r = u64::from(q.r);
    let b = u64::from(q.b);
    let terms = m - 1;
    let periods = terms / r;
    let rem = terms % r;

    // sum over one period of k(r-k), k = 0..r-1, is r(r^2-1)/6
    let period_sum = BigInt::from(r) * BigInt::from(r * r - 1) / 6u32;
    let mut partial: u128 = 0;
    for j in 1..=rem {
        let res = (j * b % r) as u128;
        partial += res * (r as u128 - res);
    }
    BigInt::from(periods) * period_sum + BigInt::from(partial)
}

/// A basket together with `P[-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalBasket {
    points: Vec<BasketPoint>,
    p1: u32,
}

impl PartialOrd for FormalBasket {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cartier index first, then the sorted point lists, then `P[-1]`.
impl Ord for FormalBasket {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cartier_index()
            .cmp(&other.cartier_index())
            .then_with(|| self.points.cmp(&other.points))
            .then_with(|| self.p1.cmp(&other.p1))
    }
}

impl FormalBasket {
    pub fn new(mut points: Vec<BasketPoint>, p1: u32) -> Self {
        points.sort_by_key(|p| (p.r, p.canonical_b(), p.b));
        FormalBasket { points, p1 }
    }

    /// Parses the basket grammar (`9x(1,2),(1,3),(1,7)`) and attaches `p1`.
    pub fn parse(basket: &str, p1: u32) -> Result<Self> {
        Ok(FormalBasket::new(parse_points(basket)?, p1))
    }

    pub fn points(&self) -> &[BasketPoint] {
        &self.points
    }

    pub fn p1(&self) -> u32 {
        self.p1
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `sum_i (r_i - 1/r_i)`.
    pub fn index_sum(&self) -> Rational {
        self.points
            .iter()
            .fold(Rational::zero(), |acc, p| acc + p.index_weight())
    }

    /// Anti-canonical volume `-K^3 = 2 P[-1] - 6 + sum b(r-b)/r`.
    ///
    /// No positivity is enforced here.
    pub fn anti_k3(&self) -> Rational {
        let den = self.cartier_index();
        let num = self.points.iter().fold(BigInt::zero(), |acc, q| {
            let (b, r) = (u64::from(q.b), u64::from(q.r));
            acc + BigInt::from(b * (r - b) * (den / r))
        });
        Rational::new(num, BigInt::from(den)) + int(2 * i64::from(self.p1) - 6)
    }

    pub fn local_sum(&self, m: u64) -> Rational {
        // common denominator 2 lcm(r_i) avoids a gcd per point
        let den = 2 * self.cartier_index();
        let num = self.points.iter().fold(BigInt::zero(), |acc, q| {
            acc + local_numerator(q, m) * (den / (2 * u64::from(q.r)))
        });
        Rational::new(num, BigInt::from(den))
    }

    /// `P[-m]` as an exact rational, without the integrality check.
    ///
    /// `m = 0` gives `chi(O_X) = 1`.
    pub fn anti_plurigenus_exact(&self, m: u64) -> Rational {
        let mb = BigInt::from(m);
        cubic_coefficient(&mb) * self.anti_k3() + int(2 * &mb + 1u32) - self.local_sum(m + 1)
    }

    /// `P[-m]`; fails with `NonIntegerPlurigenus` when the formula does not
    /// produce an integer.
    pub fn anti_plurigenus(&self, m: u64) -> Result<BigInt> {
        let v = self.anti_plurigenus_exact(m);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegerPlurigenus {
                m,
                value: v.to_string(),
            })
        }
    }

    /// `chi(O_X(mK))` by Reid's formula for multiples of `K`:
    /// `(2m-1)m(m-1)/12 * K^3 - (2m-1) + sum_q l_q(m)`.
    ///
    /// Serre duality makes this equal to `-P[-(m-1)]`; it is evaluated
    /// independently of [`FormalBasket::anti_plurigenus`] so the two can be
    /// compared.
    pub fn chi_mk(&self, m: u64) -> Rational {
        let mb = BigInt::from(m);
        let k3 = -self.anti_k3();
        let two_m_minus_1 = BigInt::from(2u32) * &mb - 1u32;
        let coeff = Rational::new(&two_m_minus_1 * &mb * (&mb - 1u32), BigInt::from(12u32));
        coeff * k3 - int(two_m_minus_1) + self.local_sum(m)
    }

    /// `lcm` of the local indices; 1 for the empty basket.
    pub fn cartier_index(&self) -> u64 {
        self.points
            .iter()
            .fold(1u64, |acc, p| acc.lcm(&u64::from(p.r)))
    }

    /// `g = P[-1] - 2`.
    pub fn genus(&self) -> i64 {
        i64::from(self.p1) - 2
    }

    /// Integrality horizon `2 * cartier_index`.
    pub fn feasibility_horizon(&self) -> u64 {
        2 * self.cartier_index()
    }

    pub fn profile(&self, m_max: u64) -> Result<PlurigenusProfile> {
        plurigenus_profile(self, m_max)
    }

    /// The basket with every point replaced by its display representative.
    pub fn canonicalized(&self) -> FormalBasket {
        FormalBasket::new(self.points.iter().map(|p| p.canonical()).collect(), self.p1)
    }
}

/// Renders the point multiset in the basket grammar, grouping repeats.
impl fmt::Display for FormalBasket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.points.len() {
            let p = self.points[i];
            let mut j = i + 1;
            while j < self.points.len() && self.points[j] == p {
                j += 1;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}x{}", j - i, p)?;
            } else {
                write!(f, "{}", p)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// `m -> P[-m]` for `m = 1..=m_max`, with `m^_0`, the least `m` such that
/// `P[-m] >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlurigenusProfile {
    pub values: Vec<(u64, BigInt)>,
    pub mhat0: Option<u64>,
}

impl PlurigenusProfile {
    pub fn get(&self, m: u64) -> Option<&BigInt> {
        self.values.iter().find(|(k, _)| *k == m).map(|(_, v)| v)
    }

    /// Least `m` in the profile with `P[-m] > 0`.
    pub fn first_positive(&self) -> Option<u64> {
        self.values
            .iter()
            .find(|(_, v)| v.is_positive())
            .map(|(m, _)| *m)
    }
}

pub fn plurigenus_profile(basket: &FormalBasket, m_max: u64) -> Result<PlurigenusProfile> {
    if m_max < 1 {
        return Err(Error::DomainError("m_max must be at least 1".into()));
    }
    let two = BigInt::from(2u32);
    let mut values = Vec::with_capacity(m_max as usize);
    let mut mhat0 = None;
    for m in 1..=m_max {
        let v = basket.anti_plurigenus(m)?;
        if mhat0.is_none() && v >= two {
            mhat0 = Some(m);
        }
        values.push((m, v));
    }
    Ok(PlurigenusProfile { values, mhat0 })
}

/// Parses `COUNTx(b,r)` / `(b,r)` terms separated by commas. Whitespace is
/// ignored and the empty string is the empty basket.
pub fn parse_points(s: &str) -> Result<Vec<BasketPoint>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut points = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {rest:?}")))?;
        let count = match &rest[..open] {
            "" => 1,
            prefix => {
                let digits = prefix
                    .strip_suffix('x')
                    .or_else(|| prefix.strip_suffix('X'))
                    .or_else(|| prefix.strip_suffix('×'))
                    .ok_or_else(|| Error::Parse(format!("bad multiplicity {prefix:?}")))?;
                let n: usize = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad multiplicity {prefix:?}")))?;
                if n == 0 {
                    return Err(Error::Parse("multiplicity must be positive".into()));
                }
                n
            }
        };
        let close = rest[open..]
            .find(')')
            .map(|i| i + open)
            .ok_or_else(|| Error::Parse("unclosed '('".into()))?;
        let inner = &rest[open + 1..close];
        let (b, r) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected (b,r), got ({inner})")))?;
        let b: i64 = b
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {b:?}")))?;
        let r: i64 = r
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {r:?}")))?;
        let p = canonical_point(b, r)?;
        points.extend(std::iter::repeat_n(p, count));
        rest = &rest[close + 1..];
        if let Some(tail) = rest.strip_prefix(',') {
            if tail.is_empty() {
                return Err(Error::Parse("trailing ','".into()));
            }
            rest = tail;
        } else if !rest.is_empty() {
            return Err(Error::Parse(format!("expected ',' before {rest:?}")));
        }
    }
    Ok(points)
}

impl FromStr for FormalBasket {
    type Err = Error;

    /// Parses the point multiset alone; `P[-1]` is set to 0.
    fn from_str(s: &str) -> Result<Self> {
        FormalBasket::parse(s, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case1() -> FormalBasket {
        FormalBasket::parse("9x(1,2),(1,3),(1,7)", 0).unwrap()
    }

    #[test]
    fn canonical_point_examples() {
        let p = canonical_point(1, 2).unwrap();
        assert_eq!((p.b(), p.r()), (1, 2));
        let p = canonical_point(3, 5).unwrap();
        assert_eq!(p.b(), 3);
        assert_eq!(p.to_string(), "(2,5)");
        assert_eq!(p, canonical_point(2, 5).unwrap());
        assert!(matches!(
            canonical_point(2, 4),
            Err(Error::NonTerminalPoint { gcd: 2, .. })
        ));
        assert!(matches!(
            canonical_point(0, 4),
            Err(Error::InvalidPoint { .. })
        ));
        assert!(matches!(
            canonical_point(5, 5),
            Err(Error::InvalidPoint { .. })
        ));
        assert!(matches!(
            canonical_point(1, 1),
            Err(Error::InvalidPoint { .. })
        ));
    }

    #[test]
    fn local_contribution_examples() {
        let half = canonical_point(1, 2).unwrap();
        assert_eq!(local_contribution(&half, 1), Rational::zero());
        assert_eq!(local_contribution(&half, 2), rat(1, 4));
        let seventh = canonical_point(1, 7).unwrap();
        assert_eq!(local_contribution(&seventh, 7), int(4));
    }

    #[test]
    fn local_contribution_matches_term_by_term_sum() {
        for r in 2..12u32 {
            for b in 1..r {
                if b.gcd(&r) != 1 {
                    continue;
                }
                let q = canonical_point(b.into(), r.into()).unwrap();
                for m in 1..40u64 {
                    let direct = (1..m).fold(Rational::zero(), |acc, j| {
                        let res = (j * u64::from(b) % u64::from(r)) as i64;
                        acc + rat(res * (i64::from(r) - res), 2 * i64::from(r))
                    });
                    assert_eq!(local_contribution(&q, m), direct, "({b},{r}) m={m}");
                }
            }
        }
    }

    #[test]
    fn anti_k3_examples() {
        assert_eq!(case1().anti_k3(), rat(1, 42));
        assert_eq!(FormalBasket::parse("", 35).unwrap().anti_k3(), int(64));
        assert_eq!(
            FormalBasket::parse("", 3).unwrap().anti_k3(),
            Rational::zero()
        );
    }

    #[test]
    fn anti_plurigenus_examples() {
        let b = case1();
        assert_eq!(b.anti_plurigenus(2).unwrap(), BigInt::from(1));
        assert_eq!(b.anti_plurigenus(12).unwrap(), BigInt::from(9));
        let p3 = FormalBasket::parse("", 35).unwrap();
        assert_eq!(p3.anti_plurigenus(2).unwrap(), BigInt::from(165));
        assert_eq!(p3.anti_plurigenus(0).unwrap(), BigInt::from(1));
    }

    #[test]
    fn chi_mk_examples() {
        assert_eq!(case1().chi_mk(2), Rational::zero());
        assert_eq!(FormalBasket::parse("", 35).unwrap().chi_mk(2), int(-35));
        let b = FormalBasket::parse("5x(1,2),(2,7)", 4).unwrap();
        assert_eq!(b.chi_mk(2), int(-4));
    }

    #[test]
    fn cartier_index_and_genus() {
        assert_eq!(case1().cartier_index(), 42);
        assert_eq!(FormalBasket::parse("", 0).unwrap().cartier_index(), 1);
        assert_eq!(
            FormalBasket::parse("(2,5),(1,5)", 0)
                .unwrap()
                .cartier_index(),
            5
        );
        assert_eq!(case1().genus(), -2);
        assert_eq!(FormalBasket::parse("", 35).unwrap().genus(), 33);
        assert_eq!(FormalBasket::parse("", 2).unwrap().genus(), 0);
    }

    #[test]
    fn profile_examples() {
        let prof = case1().profile(12).unwrap();
        let vals: Vec<i64> = prof
            .values
            .iter()
            .map(|(_, v)| i64::try_from(v).unwrap())
            .collect();
        assert_eq!(vals, vec![0, 1, 0, 1, 0, 2, 2, 4, 4, 6, 6, 9]);
        assert_eq!(prof.mhat0, Some(6));
        assert_eq!(prof.first_positive(), Some(2));

        let prof = FormalBasket::parse("", 35).unwrap().profile(2).unwrap();
        assert_eq!(prof.values[1].1, BigInt::from(165));
        assert_eq!(prof.mhat0, Some(1));

        let b = FormalBasket::parse("5x(1,2)", 2).unwrap();
        assert_eq!(b.anti_k3(), rat(1, 2));
        let prof = b.profile(2).unwrap();
        assert_eq!(
            prof.values,
            vec![(1, BigInt::from(2)), (2, BigInt::from(5))]
        );
        assert_eq!(prof.mhat0, Some(1));

        assert!(matches!(b.profile(0), Err(Error::DomainError(_))));
    }

    #[test]
    fn grammar() {
        let b = case1();
        assert_eq!(b.to_string(), "9x(1,2),(1,3),(1,7)");
        assert_eq!(b.points().len(), 11);
        let spaced = FormalBasket::parse(" 9 x ( 1 , 2 ) , (1,3),(1 ,7) ", 0).unwrap();
        assert_eq!(spaced, b);
        assert_eq!(
            FormalBasket::parse("(3,5)", 1).unwrap().to_string(),
            "(2,5)"
        );
        assert!(FormalBasket::parse("", 0).unwrap().is_empty());
        for bad in [
            "(1,2",
            "1,2)",
            "(1,2),",
            "0x(1,2)",
            "3y(1,2)",
            "(a,2)",
            "(1,2)(1,3)",
            "(2,4)",
        ] {
            assert!(FormalBasket::parse(bad, 0).is_err(), "{bad}");
        }
        assert!(matches!(
            FormalBasket::parse("(2,4)", 0),
            Err(Error::NonTerminalPoint { .. })
        ));
    }

    #[test]
    fn ordering_is_by_cartier_index_first() {
        let a = FormalBasket::parse("(1,5)", 0).unwrap();
        let b = FormalBasket::parse("(1,2),(1,3)", 0).unwrap();
        assert!(a < b);
    }
}
