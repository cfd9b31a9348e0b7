//! Constrained search over formal baskets, and prime packings.
//!
//! The search uses the splitting
//!
//! ```text
//! P[-m] = m(m+1)(2m+1)/12 * (2 P[-1] - 6) + (2m + 1) + sum_q delta_q(m)
//! delta_q(m) = m(m+1)(2m+1)/12 * b(r-b)/r - l_q(m+1)
//! ```
//!
//! Each `delta_q(m)` is a non-negative integer (`delta_q(2) = min(b, r-b)`),
//! so a prescribed upper value on `P[-m]` caps the partial sum along every
//! branch of the multiset search. The index-sum bound caps the rest.

use std::collections::{HashSet, VecDeque};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::basket::{
    canonical_point, cubic_coefficient, int, local_contribution, BasketPoint, FormalBasket,
    Rational,
};
use crate::error::{Error, Result};
use crate::series::feasibility;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    AtLeast,
    AtMost,
}

impl Relation {
    fn holds(&self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::AtLeast => lhs >= rhs,
            Relation::AtMost => lhs <= rhs,
        }
    }

    /// Whether the constraint bounds `P[-m]` from above.
    fn caps(&self) -> bool {
        matches!(self, Relation::Eq | Relation::AtMost)
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
        }
    }
}

/// `P[-m] <relation> value`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prescription {
    pub m: u64,
    pub relation: Relation,
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConstraints {
    pub prescribed: Vec<Prescription>,
    /// Strict upper bound on `sum (r_i - 1/r_i)`.
    pub sum_bound: Rational,
    pub p1_range: RangeInclusive<u32>,
    pub max_index: Option<u32>,
    pub require_feasible: bool,
}

impl Default for EnumerationConstraints {
    fn default() -> Self {
        EnumerationConstraints {
            prescribed: Vec::new(),
            sum_bound: int(24),
            p1_range: 0..=40,
            max_index: None,
            require_feasible: true,
        }
    }
}

impl EnumerationConstraints {
    pub fn prescribe(mut self, m: u64, relation: Relation, value: i64) -> Self {
        self.prescribed.push(Prescription {
            m,
            relation,
            value: BigInt::from(value),
        });
        self
    }

    /// Shorthand for `P[-m] = value`.
    pub fn with(self, m: u64, value: i64) -> Self {
        self.prescribe(m, Relation::Eq, value)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.sum_bound.is_positive() {
            return Err(Error::DomainError("sum_bound must be positive".into()));
        }
        if let Some(p) = self.prescribed.iter().find(|p| p.m == 0) {
            return Err(Error::DomainError(format!(
                "prescribed index must be at least 1, got P[-{}]",
                p.m
            )));
        }
        if self.p1_range.is_empty() {
            return Err(Error::DomainError("empty P[-1] range".into()));
        }
        Ok(())
    }

    /// Largest local index allowed by both `max_index` and the sum bound.
    fn index_cap(&self) -> u32 {
        let mut r: u32 = 2;
        while self.max_index.is_none_or(|cap| r <= cap)
            && BasketPoint::new(1, i64::from(r)).unwrap().index_weight() < self.sum_bound
        {
            r += 1;
        }
        r - 1
    }

    /// Values of `P[-1]` compatible with `p1_range` and the prescriptions
    /// on `P[-1]`.
    fn p1_candidates(&self) -> Vec<u32> {
        self.p1_range
            .clone()
            .filter(|&p1| {
                self.prescribed.iter().filter(|p| p.m == 1).all(|p| {
                    p.relation
                        .holds(&int(p1), &Rational::from_integer(p.value.clone()))
                })
            })
            .collect()
    }
}

/// `delta_q(m)`, the contribution of one point to `P[-m]` beyond the
/// Gorenstein part.
pub fn point_excess(q: &BasketPoint, m: u64) -> Rational {
    cubic_coefficient(&BigInt::from(m)) * q.volume_term() - local_contribution(q, m + 1)
}

/// Gorenstein part of `P[-m]`: `m(m+1)(2m+1)/12 (2 P[-1] - 6) + 2m + 1`.
fn gorenstein_part(p1: u32, m: u64) -> Rational {
    cubic_coefficient(&BigInt::from(m)) * int(2 * i64::from(p1) - 6) + int(2 * m + 1)
}

/// Every valid point type `(b, r)` with `b <= r/2` and `2 <= r <= cap`,
/// ordered by `r` (hence by index weight), then `b`.
fn point_types(cap: u32) -> Vec<BasketPoint> {
    let mut out = Vec::new();
    for r in 2..=cap {
        for b in 1..=r / 2 {
            if b.gcd(&r) == 1 {
                out.push(canonical_point(b.into(), r.into()).unwrap());
            }
        }
    }
    out
}

struct Search<'a> {
    c: &'a EnumerationConstraints,
    types: Vec<BasketPoint>,
    weights: Vec<Rational>,
    /// `excess[i][k]`: `delta` of type `i` for prescription `k`.
    excess: Vec<Vec<Rational>>,
    /// Prescriptions usable for pruning: capped and with non-negative excess
    /// for every type.
    prunable: Vec<bool>,
}

struct Branch {
    p1: u32,
    base: Vec<Rational>,
}

impl<'a> Search<'a> {
    fn new(c: &'a EnumerationConstraints) -> Self {
        let types = point_types(c.index_cap());
        let weights = types.iter().map(|q| q.index_weight()).collect();
        let excess: Vec<Vec<Rational>> = types
            .iter()
            .map(|q| c.prescribed.iter().map(|p| point_excess(q, p.m)).collect())
            .collect();
        let prunable = (0..c.prescribed.len())
            .map(|k| c.prescribed[k].relation.caps() && excess.iter().all(|e| !e[k].is_negative()))
            .collect();
        Search {
            c,
            types,
            weights,
            excess,
            prunable,
        }
    }

    fn branch(&self, p1: u32) -> Branch {
        Branch {
            p1,
            base: self
                .c
                .prescribed
                .iter()
                .map(|p| gorenstein_part(p1, p.m))
                .collect(),
        }
    }

    fn over_budget(&self, br: &Branch, sums: &[Rational]) -> bool {
        self.c.prescribed.iter().enumerate().any(|(k, p)| {
            self.prunable[k] && &br.base[k] + &sums[k] > Rational::from_integer(p.value.clone())
        })
    }

    fn accept(
        &self,
        br: &Branch,
        sums: &[Rational],
        chosen: &[usize],
        out: &mut Vec<FormalBasket>,
    ) {
        let ok = self.c.prescribed.iter().enumerate().all(|(k, p)| {
            p.relation.holds(
                &(&br.base[k] + &sums[k]),
                &Rational::from_integer(p.value.clone()),
            )
        });
        if !ok {
            return;
        }
        let basket = FormalBasket::new(chosen.iter().map(|&i| self.types[i]).collect(), br.p1);
        if self.c.require_feasible && !feasibility(&basket).is_feasible() {
            return;
        }
        out.push(basket);
    }

    fn descend(
        &self,
        br: &Branch,
        start: usize,
        weight: &Rational,
        sums: &mut Vec<Rational>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<FormalBasket>,
    ) {
        self.accept(br, sums, chosen, out);
        for i in start..self.types.len() {
            let w = weight + &self.weights[i];
            if w >= self.c.sum_bound {
                break;
            }
            for (s, e) in sums.iter_mut().zip(&self.excess[i]) {
                *s += e;
            }
            if !self.over_budget(br, sums) {
                chosen.push(i);
                self.descend(br, i, &w, sums, chosen, out);
                chosen.pop();
            }
            for (s, e) in sums.iter_mut().zip(&self.excess[i]) {
                *s -= e;
            }
        }
    }

    /// The subtree whose smallest point type is `first`, or just the empty
    /// basket when `first` is `None`.
    fn run(&self, p1: u32, first: Option<usize>) -> Vec<FormalBasket> {
        let br = self.branch(p1);
        let mut out = Vec::new();
        let mut sums = vec![Rational::zero(); self.c.prescribed.len()];
        match first {
            None => self.accept(&br, &sums, &[], &mut out),
            Some(i) => {
                let w = self.weights[i].clone();
                if w >= self.c.sum_bound {
                    return out;
                }
                for (s, e) in sums.iter_mut().zip(&self.excess[i]) {
                    *s += e;
                }
                if self.over_budget(&br, &sums) {
                    return out;
                }
                let mut chosen = vec![i];
                self.descend(&br, i, &w, &mut sums, &mut chosen, &mut out);
            }
        }
        out
    }
}

/// All formal baskets meeting the constraints, sorted by Cartier index,
/// then points, then `P[-1]`. Point types are enumerated up to reflection,
/// so every returned point has `b <= r/2`.
///
/// Independent subtrees run on the current rayon pool; the output does not
/// depend on scheduling.
pub fn enumerate(c: &EnumerationConstraints) -> Result<Vec<FormalBasket>> {
    c.validate()?;
    let search = Search::new(c);
    let tasks: Vec<(u32, Option<usize>)> = c
        .p1_candidates()
        .into_iter()
        .flat_map(|p1| {
            std::iter::once((p1, None)).chain((0..search.types.len()).map(move |i| (p1, Some(i))))
        })
        .collect();
    let mut found: Vec<FormalBasket> = tasks
        .par_iter()
        .flat_map_iter(|&(p1, first)| search.run(p1, first))
        .collect();
    found.sort();
    found.dedup();
    Ok(found)
}

/// Whether `P[-m] < 2` for every `m <= 8`. Numerically feasible baskets can
/// do this even though geometric ones cannot; callers report it as a warning.
pub fn mhat0_exceeds_eight(basket: &FormalBasket) -> bool {
    let two = BigInt::from(2);
    (1..=8).all(|m| basket.anti_plurigenus_exact(m) < Rational::from_integer(two.clone()))
}

fn sort_points(points: &mut [BasketPoint]) {
    points.sort_by_key(|p| (p.r(), p.canonical_b(), p.b()));
}

/// Replaces the points at `i` and `j` by `(b_i + b_j, r_i + r_j)`, which
/// requires `|b_i r_j - b_j r_i| = 1`. Stored `b` values are used as given.
pub fn prime_packing(points: &[BasketPoint], i: usize, j: usize) -> Result<Vec<BasketPoint>> {
    if i == j || i >= points.len() || j >= points.len() {
        return Err(Error::DomainError(format!(
            "packing needs two distinct indices below {}, got {i} and {j}",
            points.len()
        )));
    }
    let (p, q) = (points[i], points[j]);
    let det = i64::from(p.b()) * i64::from(q.r()) - i64::from(q.b()) * i64::from(p.r());
    if det.abs() != 1 {
        return Err(Error::NotPrimePacking {
            b1: p.b(),
            r1: p.r(),
            b2: q.b(),
            r2: q.r(),
            det,
        });
    }
    let packed = canonical_point(
        i64::from(p.b()) + i64::from(q.b()),
        i64::from(p.r()) + i64::from(q.r()),
    )?;
    let mut out: Vec<BasketPoint> = points
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, p)| *p)
        .collect();
    out.push(packed);
    sort_points(&mut out);
    Ok(out)
}

/// Every multiset reachable from `points` by repeated prime packings,
/// including `points` itself. Multisets are compared on stored `b`; the
/// result is sorted by size (largest first), then lexicographically.
pub fn packing_closure(points: &[BasketPoint]) -> Vec<Vec<BasketPoint>> {
    let key =
        |ps: &[BasketPoint]| -> Vec<(u32, u32)> { ps.iter().map(|p| (p.r(), p.b())).collect() };
    let mut start = points.to_vec();
    sort_points(&mut start);

    let mut seen: HashSet<Vec<(u32, u32)>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key(&start));
    queue.push_back(start);
    let mut all = Vec::new();
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len() {
            for j in i + 1..cur.len() {
                if let Ok(next) = prime_packing(&cur, i, j) {
                    if seen.insert(key(&next)) {
                        queue.push_back(next);
                    }
                }
            }
        }
        all.push(cur);
    }
    let mut keys: Vec<Vec<(u32, u32)>> = all.iter().map(|ps| key(ps)).collect();
    keys.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    keys.dedup();
    keys.into_iter()
        .map(|k| {
            k.into_iter()
                .map(|(r, b)| canonical_point(b.into(), r.into()).unwrap())
                .collect()
        })
        .collect()
}
