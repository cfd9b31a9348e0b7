//! Effective birationality of the anti-pluricanonical maps `phi_{-m}`.
//!
//! The geometry enters only through a few scalars carried by
//! [`GeometricCase`]: `m^_0` (least `m` with `P[-m] >= 2`), the dimension of
//! the image of `phi_{-m^_0}`, the Cartier index `r`, the genus class of the
//! generic curve `C`, and the quantities `iota`, `varrho`, `zeta`. With
//!
//! ```text
//! eps  = (m + 1 - m0/iota - 1/varrho) * zeta,    eps0 = ceil(eps)
//! ```
//!
//! `phi_{-m}` is birational once `eps > 2` and `m` clears the assumption
//! thresholds. The bounds returned by [`birational_bound`] are the closed
//! forms that this criterion yields in each geometric case.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::basket::{int, FormalBasket, Rational};
use crate::error::{Error, Result};

/// Sign class of `g(C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenusClass {
    Zero,
    Positive,
    Unknown,
}

impl GenusClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            GenusClass::Zero => "zero",
            GenusClass::Positive => "positive",
            GenusClass::Unknown => "unknown",
        }
    }
}

impl fmt::Display for GenusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for GenusClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(GenusClass::Zero),
            "positive" => Ok(GenusClass::Positive),
            "unknown" => Ok(GenusClass::Unknown),
            _ => Err(Error::Parse(format!("unknown genus class {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricCase {
    pub mhat0: u32,
    /// Dimension of the image of `phi_{-m^_0}`: 1, 2 or 3.
    pub image_dim: u8,
    /// Cartier index.
    pub r: u32,
    pub genus: GenusClass,
    pub iota: u32,
    pub varrho: Rational,
    pub zeta_floor: Rational,
    /// A degree with `|-m1 K|` not composed with a pencil.
    pub m1: Option<u32>,
    pub standard: bool,
}

fn recip(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n))
}

/// Non-pencil degrees for `r > 1`: 4, 6 and `r + 2` for `r = 2`, `r = 3`
/// and `r >= 4`.
pub fn np_table(r: u32) -> Option<u32> {
    match r {
        0 | 1 => None,
        2 => Some(4),
        3 => Some(6),
        _ => Some(r + 2),
    }
}

impl GeometricCase {
    /// A case with the default `iota = 1`, `varrho = 1/m^_0` (`1/m1` on a
    /// curve image) and the `zeta` floor implied by the setup: `1/r`, raised
    /// to `1/m^_0` (or `2/m^_0` for positive genus) when the image is
    /// 3-dimensional.
    pub fn new(mhat0: u32, image_dim: u8, r: u32, genus: GenusClass) -> Result<Self> {
        if mhat0 == 0 || r == 0 {
            return Err(Error::InvalidCase("m^_0 and r must be positive".into()));
        }
        let cartier = recip(r);
        let zeta_floor = match (image_dim, genus) {
            (3, GenusClass::Positive) => (int(2) * recip(mhat0)).max(cartier),
            (3, _) => recip(mhat0).max(cartier),
            _ => cartier,
        };
        let varrho = match (image_dim, np_table(r)) {
            (1, Some(m1)) => recip(m1),
            _ => recip(mhat0),
        };
        let case = GeometricCase {
            mhat0,
            image_dim,
            r,
            genus,
            iota: 1,
            varrho,
            zeta_floor,
            m1: None,
            standard: false,
        };
        case.validate()?;
        Ok(case)
    }

    /// A standard Q-Fano 3-fold: `m^_0 = 1`, `|-K|` not composed with a
    /// pencil, `g(C) > 0`.
    pub fn standard(r: u32) -> Result<Self> {
        let mut case = GeometricCase::new(1, 3, r, GenusClass::Positive)?;
        case.standard = true;
        Ok(case)
    }

    /// Sets `m1` (and `varrho = 1/m1` on a curve image).
    pub fn with_m1(mut self, m1: u32) -> Self {
        self.m1 = Some(m1);
        if self.image_dim == 1 && m1 > 0 {
            self.varrho = recip(m1);
        }
        self
    }

    /// Reads `m^_0`, `r` and a non-pencil degree off a formal basket.
    pub fn from_basket(basket: &FormalBasket, image_dim: u8, genus: GenusClass) -> Result<Self> {
        let r = u32::try_from(basket.cartier_index())
            .map_err(|_| Error::InvalidCase("Cartier index too large".into()))?;
        let profile = basket.profile(8)?;
        let mhat0 = profile
            .mhat0
            .ok_or_else(|| Error::InvalidCase("P[-m] < 2 for every m <= 8".into()))?;
        let case = GeometricCase::new(mhat0 as u32, image_dim, r, genus)?;
        Ok(match m1_not_pencil(basket)? {
            Some(np) => case.with_m1(np.m1),
            None => case,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.mhat0 == 0 {
            return Err(Error::InvalidCase("m^_0 must be positive".into()));
        }
        if !(1..=3).contains(&self.image_dim) {
            return Err(Error::InvalidCase(format!(
                "image dimension must be 1, 2 or 3, got {}",
                self.image_dim
            )));
        }
        if self.r == 0 {
            return Err(Error::InvalidCase("Cartier index must be positive".into()));
        }
        if self.iota == 0 {
            return Err(Error::InvalidCase("iota must be positive".into()));
        }
        if !self.varrho.is_positive() {
            return Err(Error::InvalidCase("varrho must be positive".into()));
        }
        if self.zeta_floor < recip(self.r) {
            return Err(Error::InvalidCase(format!(
                "zeta floor {} is below 1/r = 1/{}",
                self.zeta_floor, self.r
            )));
        }
        if self.standard && self.mhat0 != 1 {
            return Err(Error::InvalidCase("a standard case has m^_0 = 1".into()));
        }
        if self.m1 == Some(0) {
            return Err(Error::InvalidCase("m1 must be positive".into()));
        }
        Ok(())
    }

    fn with_genus(&self, genus: GenusClass) -> Self {
        let mut c = self.clone();
        c.genus = genus;
        c
    }

    /// `m^_0/iota + 1/varrho`, the offset subtracted from `m + 1` in `eps`.
    fn offset(&self) -> Rational {
        Rational::new(BigInt::from(self.mhat0), BigInt::from(self.iota)) + self.varrho.recip()
    }
}

/// `eps = (m + 1 - m^_0/iota - 1/varrho) zeta` and `eps0 = ceil(eps)`.
pub fn epsilon(c: &GeometricCase, m: u64, zeta: &Rational) -> (Rational, BigInt) {
    let eps = (int(m + 1) - c.offset()) * zeta;
    let eps0 = eps.ceil().to_integer();
    (eps, eps0)
}

/// Least `m >= 1` with `eps(m, zeta) > level`.
pub fn least_m_exceeding(c: &GeometricCase, zeta: &Rational, level: &Rational) -> u64 {
    // eps > level  <=>  m > level/zeta - 1 + offset
    let x = level / zeta - int(1) + c.offset();
    let m: BigInt = x.floor().to_integer() + 1;
    m.to_u64().unwrap_or(0).max(1)
}

const REFINE_LIMIT: usize = 10_000;

/// Best `zeta` floor the case data support.
///
/// For positive genus, `eps(m') > 1` forces `zeta >= 2/m'`; iterating from
/// the declared floor with the least such `m'` each time descends to a
/// fixed point (`1/(2 m^_0)` for `iota = 1`, `varrho = 1/m^_0`). Other
/// genus classes keep the declared floor.
pub fn refine_zeta(c: &GeometricCase) -> Result<Rational> {
    let mut zeta = c.zeta_floor.clone();
    if c.genus != GenusClass::Positive {
        return Ok(zeta);
    }
    for _ in 0..REFINE_LIMIT {
        let m = least_m_exceeding(c, &zeta, &int(1));
        let candidate = Rational::new(BigInt::from(2), BigInt::from(m));
        if candidate <= zeta {
            return Ok(zeta);
        }
        zeta = candidate;
    }
    Err(Error::NonConvergence(REFINE_LIMIT))
}

fn distinguish_elements(mhat0: u32) -> u32 {
    if mhat0 >= 2 {
        mhat0 + 6
    } else {
        2
    }
}

fn distinguish_curves_np(mhat0: u32, genus: GenusClass) -> u32 {
    match genus {
        GenusClass::Positive if mhat0 >= 2 => (mhat0 + 6).max(2 * mhat0),
        GenusClass::Zero if mhat0 >= 2 => mhat0 + 6,
        GenusClass::Unknown => distinguish_curves_np(mhat0, GenusClass::Positive)
            .max(distinguish_curves_np(mhat0, GenusClass::Zero)),
        _ => 2,
    }
}

fn distinguish_curves_pencil(mhat0: u32, m1: u32, genus: GenusClass) -> u32 {
    match genus {
        GenusClass::Positive if mhat0 >= 2 => (m1 + 6).max(mhat0 + m1),
        GenusClass::Zero if mhat0 >= 2 => m1 + 6,
        GenusClass::Unknown => distinguish_curves_pencil(mhat0, m1, GenusClass::Positive)
            .max(distinguish_curves_pencil(mhat0, m1, GenusClass::Zero)),
        _ => m1 + 1,
    }
}

/// Least `m` from which both parts of the separation assumption hold:
/// generic members of `|M_{-m^_0}|` are distinguished from `m^_0 + 6`
/// (`2` when `m^_0 = 1`), and generic curves of `|G|` from the
/// genus-dependent thresholds for non-pencil (`dim >= 2`) or pencil
/// (`dim = 1`, using `m1`) images.
pub fn assumption_thresholds(c: &GeometricCase) -> Result<u32> {
    let first = distinguish_elements(c.mhat0);
    let second = if c.image_dim >= 2 {
        distinguish_curves_np(c.mhat0, c.genus)
    } else {
        let m1 = c.m1.ok_or(Error::MissingM1)?;
        distinguish_curves_pencil(c.mhat0, m1, c.genus)
    };
    Ok(first.max(second))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonPencilReason {
    /// `P[-m] > m r (-K^3) + 1`.
    Criterion,
    /// Table value for the Cartier index.
    NpTable,
}

impl NonPencilReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NonPencilReason::Criterion => "criterion",
            NonPencilReason::NpTable => "np_table",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonPencil {
    pub m1: u32,
    pub reason: NonPencilReason,
}

/// Gorenstein baskets have no table entry; the criterion is tried this far.
pub const GORENSTEIN_SEARCH_LIMIT: u32 = 200;

/// A degree `m1` with `|-m1 K|` not composed with a pencil.
///
/// Tries `P[-m] > m r (-K^3) + 1` for increasing `m` up to the table value,
/// then falls back to the table. For `r = 1` only the criterion is
/// available and `None` means it did not fire up to
/// [`GORENSTEIN_SEARCH_LIMIT`].
pub fn m1_not_pencil(basket: &FormalBasket) -> Result<Option<NonPencil>> {
    let r = basket.cartier_index();
    let r32 = u32::try_from(r).map_err(|_| Error::DomainError("Cartier index too large".into()))?;
    let table = np_table(r32);
    let k3 = basket.anti_k3();
    let limit = table.unwrap_or(GORENSTEIN_SEARCH_LIMIT);
    for m in 1..=limit {
        let lhs = basket.anti_plurigenus_exact(u64::from(m));
        let rhs = int(u64::from(m) * r) * &k3 + int(1);
        if lhs > rhs {
            return Ok(Some(NonPencil {
                m1: m,
                reason: NonPencilReason::Criterion,
            }));
        }
    }
    Ok(table.map(|m1| NonPencil {
        m1,
        reason: NonPencilReason::NpTable,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    /// Image of dimension 3: `m >= 4 m^_0`.
    Thm3,
    /// Image of dimension 2: `6 m^_0` or `2 m^_0 + 2r`.
    Thm2,
    /// Curve image with a given non-pencil degree: `m^_0 + m1 + 2r`.
    Thm1,
    /// Curve image with the tabulated non-pencil degree.
    Cor11,
    /// Worst case over `m^_0 <= 8`.
    Thm8,
    /// Standard Q-Fano: `m >= 6`.
    Standard,
    /// Single value `m^_0 + 3r - 1`.
    Reider,
}

impl Theorem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem::Thm3 => "Thm3",
            Theorem::Thm2 => "Thm2",
            Theorem::Thm1 => "Thm1",
            Theorem::Cor11 => "Cor11",
            Theorem::Thm8 => "Thm8",
            Theorem::Standard => "Standard",
            Theorem::Reider => "Reider",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirationalityBound {
    /// `phi_{-m}` is birational for every `m >= m_min`.
    pub m_min: u32,
    pub theorem: Theorem,
    /// Value of [`assumption_thresholds`] for the case.
    pub thresholds: u32,
    /// `m^_0 + 3r - 1`, birational as a single value (not for all larger
    /// `m`); only for `r > 1`.
    pub reider: Option<u32>,
    pub notes: Vec<String>,
}

/// `max(thresholds, least m with eps > 2)` on the declared case data, with
/// the refined `zeta`; `Unknown` genus takes the worse branch.
pub fn criterion_bound(c: &GeometricCase) -> Result<u32> {
    if c.genus == GenusClass::Unknown {
        return Ok(criterion_bound(&c.with_genus(GenusClass::Zero))?
            .max(criterion_bound(&c.with_genus(GenusClass::Positive))?));
    }
    let zeta = refine_zeta(c)?;
    let m = least_m_exceeding(c, &zeta, &int(2));
    let m = u32::try_from(m).map_err(|_| Error::DomainError("bound overflows u32".into()))?;
    Ok(m.max(assumption_thresholds(c)?))
}

/// Whether `m` satisfies the thresholds and `eps(m, refined zeta) > 2` on
/// every genus branch the case allows.
pub fn certifies(c: &GeometricCase, m: u32) -> Result<bool> {
    let branches: &[GenusClass] = match c.genus {
        GenusClass::Unknown => &[GenusClass::Zero, GenusClass::Positive],
        GenusClass::Zero => &[GenusClass::Zero],
        GenusClass::Positive => &[GenusClass::Positive],
    };
    for &g in branches {
        let b = c.with_genus(g);
        if m < assumption_thresholds(&b)? {
            return Ok(false);
        }
        let (eps, _) = epsilon(&b, u64::from(m), &refine_zeta(&b)?);
        if eps <= int(2) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn surface_bound(mhat0: u32, r: u32, genus: GenusClass) -> u32 {
    match genus {
        GenusClass::Positive => 6 * mhat0,
        GenusClass::Zero => 2 * mhat0 + 2 * r,
        GenusClass::Unknown => (6 * mhat0).max(2 * mhat0 + 2 * r),
    }
}

/// Smallest certified `m` with `phi_{-m}` birational for all larger `m`,
/// and the statement behind it.
pub fn birational_bound(c: &GeometricCase) -> Result<BirationalityBound> {
    c.validate()?;
    let mut notes = Vec::new();
    let reider = (c.r > 1).then(|| c.mhat0 + 3 * c.r - 1);

    if c.standard {
        // the 3-dimensional and surface bounds at m^_0 = 1, positive genus
        let three = GeometricCase::new(1, 3, c.r, GenusClass::Positive)?;
        let two = GeometricCase::new(1, 2, c.r, GenusClass::Positive)?;
        let t3 = assumption_thresholds(&three)?;
        let m_min = (4u32)
            .max(t3)
            .max(surface_bound(1, c.r, GenusClass::Positive));
        if let Some(v) = reider {
            notes.push(format!(
                "phi_-{v} is birational (single value, m^_0 + 3r - 1)"
            ));
        }
        return Ok(BirationalityBound {
            m_min,
            theorem: Theorem::Standard,
            thresholds: t3.max(assumption_thresholds(&two)?),
            reider,
            notes,
        });
    }

    if c.r == 1 && c.image_dim < 3 {
        return Err(Error::UnsupportedCase(
            "image dimension below 3 needs Cartier index r > 1".into(),
        ));
    }

    let (case, formula, theorem) = match c.image_dim {
        3 => (c.clone(), 4 * c.mhat0, Theorem::Thm3),
        2 => (
            c.clone(),
            surface_bound(c.mhat0, c.r, c.genus),
            Theorem::Thm2,
        ),
        _ => {
            let (m1, theorem) = match c.m1 {
                Some(m1) => (m1, Theorem::Thm1),
                None => (np_table(c.r).expect("r > 1"), Theorem::Cor11),
            };
            let case = c.clone().with_m1(m1);
            notes.push(format!("m1 = {m1}"));
            (case, c.mhat0 + m1 + 2 * c.r, theorem)
        }
    };
    let thresholds = assumption_thresholds(&case)?;
    let m_min = formula.max(thresholds);

    let direct = criterion_bound(&case)?;
    if direct < m_min {
        notes.push(format!(
            "eps > 2 criterion on the declared case data already certifies m >= {direct}"
        ));
    }
    if let Some(v) = reider {
        notes.push(format!(
            "phi_-{v} is birational (single value, m^_0 + 3r - 1)"
        ));
    }
    Ok(BirationalityBound {
        m_min,
        theorem,
        thresholds,
        reider,
        notes,
    })
}

/// Worst-case bounds over `m^_0 <= 8` by image dimension, `r >= 2`:
/// 32; `max(2r + 16, 48)`; 16, 20 or `3r + 10`.
pub fn theorem8_table(r: u32) -> Result<BTreeMap<u8, u32>> {
    if r < 2 {
        return Err(Error::DomainError(format!(
            "the table needs r >= 2, got {r}"
        )));
    }
    let curve = match r {
        2 => 16,
        3 => 20,
        _ => 3 * r + 10,
    };
    Ok(BTreeMap::from([
        (3, 32),
        (2, (2 * r + 16).max(48)),
        (1, curve),
    ]))
}

/// Maximum of [`birational_bound`] over `m^_0 in 1..=8` and both genus
/// classes, per image dimension, with `m1` from the table.
pub fn aggregate_bounds(r: u32) -> Result<BTreeMap<u8, u32>> {
    let mut out = BTreeMap::new();
    for dim in 1..=3u8 {
        let mut worst = 0;
        for mhat0 in 1..=8 {
            for genus in [GenusClass::Zero, GenusClass::Positive] {
                let b = birational_bound(&GeometricCase::new(mhat0, dim, r, genus)?)?;
                worst = worst.max(b.m_min);
            }
        }
        out.insert(dim, worst);
    }
    Ok(out)
}
