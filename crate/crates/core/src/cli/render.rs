//! Output documents and their text, json and csv renderings.
//!
//! The json layout is described in `docs/json_schema.md`. Rationals are
//! always `"p/q"` strings (`"3/1"` for integers), never floats.

use std::fmt::Write as _;

use serde::Serialize;

use super::Format;
use crate::basket::{FormalBasket, Rational};
use crate::birationality::{m1_not_pencil, BirationalityBound, GeometricCase};
use crate::enumeration::mhat0_exceeds_eight;
use crate::error::{Error, Result};
use crate::series::{decompose_series, feasibility, inequality_violations, slope_a, Violation};
use crate::verify::Report;

pub const SCHEMA_VERSION: u32 = 1;

pub fn rational_str(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Serialize)]
pub struct ViolationDoc {
    pub tag: &'static str,
    pub t: Option<u64>,
    pub index: i64,
    pub value: String,
}

impl From<&Violation> for ViolationDoc {
    fn from(v: &Violation) -> Self {
        ViolationDoc {
            tag: v.tag.as_str(),
            t: v.t,
            index: v.index,
            value: rational_str(&v.value),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FeasibilityDoc {
    pub feasible: bool,
    pub k3_positive: bool,
    pub integral: bool,
    pub signs_ok: bool,
    pub sum_bound_ok: bool,
    pub violations: Vec<ViolationDoc>,
}

#[derive(Debug, Serialize)]
pub struct NonPencilDoc {
    pub m1: u32,
    pub reason: &'static str,
}

#[derive(Debug, Serialize)]
pub struct DecompositionDoc {
    pub t: u64,
    pub r: u64,
    pub a: String,
    pub c_t: String,
}

#[derive(Debug, Serialize)]
pub struct ComputeDoc {
    pub schema_version: u32,
    pub command: &'static str,
    pub basket: String,
    pub p1: u32,
    pub anti_k3: String,
    pub cartier_index: u64,
    pub genus: i64,
    pub index_sum: String,
    pub max_m: u64,
    /// `P[-1] .. P[-max_m]`.
    pub plurigenera: Vec<String>,
    pub mhat0: Option<u64>,
    pub slope_a: String,
    pub m1_not_pencil: Option<NonPencilDoc>,
    pub feasibility: FeasibilityDoc,
    pub inequality_violations: Vec<ViolationDoc>,
    pub warnings: Vec<String>,
    pub decomposition: Option<DecompositionDoc>,
}

impl ComputeDoc {
    pub fn build(basket: &FormalBasket, max_m: u64, decompose: Option<u64>) -> Result<Self> {
        let decomposition = match decompose {
            Some(t) => {
                let d = decompose_series(basket, t)?;
                Some(DecompositionDoc {
                    t,
                    r: d.r,
                    a: rational_str(&d.a),
                    c_t: rational_str(&d.c_t),
                })
            }
            None => None,
        };
        let values: Vec<Rational> = (1..=max_m)
            .map(|m| basket.anti_plurigenus_exact(m))
            .collect();
        let two = Rational::from_integer(2.into());
        let mhat0 = values.iter().position(|v| *v >= two).map(|i| i as u64 + 1);

        let report = feasibility(basket);
        let mut warnings = Vec::new();
        let inequality = match inequality_violations(basket) {
            Ok(v) => v.iter().map(ViolationDoc::from).collect(),
            Err(e) => {
                warnings.push(format!("series inequalities not evaluated: {e}"));
                Vec::new()
            }
        };
        if report.is_feasible() && mhat0_exceeds_eight(basket) {
            warnings.push("P[-m] < 2 for every m <= 8 (m^_0 > 8)".into());
        }
        let np = m1_not_pencil(basket)?.map(|np| NonPencilDoc {
            m1: np.m1,
            reason: np.reason.as_str(),
        });

        Ok(ComputeDoc {
            schema_version: SCHEMA_VERSION,
            command: "compute",
            basket: basket.to_string(),
            p1: basket.p1(),
            anti_k3: rational_str(&basket.anti_k3()),
            cartier_index: basket.cartier_index(),
            genus: basket.genus(),
            index_sum: rational_str(&basket.index_sum()),
            max_m,
            plurigenera: values.iter().map(rational_str).collect(),
            mhat0,
            slope_a: rational_str(&slope_a(basket)),
            m1_not_pencil: np,
            feasibility: FeasibilityDoc {
                feasible: report.is_feasible(),
                k3_positive: report.k3_positive,
                integral: report.integral,
                signs_ok: report.signs_ok,
                sum_bound_ok: report.sum_bound_ok,
                violations: report.violations.iter().map(ViolationDoc::from).collect(),
            },
            inequality_violations: inequality,
            warnings,
            decomposition,
        })
    }
}

fn json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| Error::DomainError(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::DomainError(e.to_string());
    w.write_record(header).map_err(to_err)?;
    for row in rows {
        w.write_record(row).map_err(to_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::DomainError(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::DomainError(e.to_string()))
}

/// Strips `/1` for the text rendering.
fn short(q: &str) -> &str {
    q.strip_suffix("/1").unwrap_or(q)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

fn violation_text(v: &ViolationDoc) -> String {
    match v.t {
        Some(t) => format!("{} t={} n={} value={}", v.tag, t, v.index, short(&v.value)),
        None => format!("{} m={} value={}", v.tag, v.index, short(&v.value)),
    }
}

pub fn compute(doc: &ComputeDoc, format: Format) -> Result<String> {
    match format {
        Format::Json => json(doc),
        Format::Csv => {
            let f = &doc.feasibility;
            let mut rows: Vec<[String; 2]> = vec![
                ["basket".into(), doc.basket.clone()],
                ["p1".into(), doc.p1.to_string()],
                ["anti_k3".into(), doc.anti_k3.clone()],
                ["cartier_index".into(), doc.cartier_index.to_string()],
                ["genus".into(), doc.genus.to_string()],
                ["index_sum".into(), doc.index_sum.clone()],
                ["mhat0".into(), opt(&doc.mhat0)],
                ["slope_a".into(), doc.slope_a.clone()],
                ["feasible".into(), f.feasible.to_string()],
            ];
            rows.extend(
                doc.plurigenera
                    .iter()
                    .enumerate()
                    .map(|(i, v)| [format!("P[-{}]", i + 1), v.clone()]),
            );
            if let Some(d) = &doc.decomposition {
                rows.push([format!("A[t={}]", d.t), d.a.clone()]);
                rows.push([format!("C[t={}]", d.t), d.c_t.clone()]);
            }
            csv_rows(&["field", "value"], rows)
        }
        Format::Text => {
            let f = &doc.feasibility;
            let mut s = String::new();
            let profile: Vec<&str> = doc.plurigenera.iter().map(|v| short(v)).collect();
            let _ = writeln!(s, "basket: {}", doc.basket);
            let _ = writeln!(s, "p1: {}", doc.p1);
            let _ = writeln!(s, "-K^3: {}", short(&doc.anti_k3));
            let _ = writeln!(s, "cartier_index: {}", doc.cartier_index);
            let _ = writeln!(s, "genus: {}", doc.genus);
            let _ = writeln!(s, "index_sum: {}", short(&doc.index_sum));
            let _ = writeln!(s, "P[-1..-{}]: {}", doc.max_m, profile.join(" "));
            let _ = writeln!(s, "mhat0: {}", opt(&doc.mhat0));
            let _ = writeln!(s, "slope_A: {}", short(&doc.slope_a));
            if let Some(np) = &doc.m1_not_pencil {
                let _ = writeln!(s, "m1: {} ({})", np.m1, np.reason);
            }
            let _ = writeln!(
                s,
                "feasible: {} (k3_positive={} integral={} signs_ok={} sum_bound_ok={})",
                f.feasible, f.k3_positive, f.integral, f.signs_ok, f.sum_bound_ok
            );
            for v in f.violations.iter().chain(&doc.inequality_violations) {
                let _ = writeln!(s, "violation: {}", violation_text(v));
            }
            for w in &doc.warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            if let Some(d) = &doc.decomposition {
                let _ = writeln!(
                    s,
                    "Q_{}(n) = Q^_{}(n) + ({})n + ({})",
                    d.t,
                    d.t,
                    short(&d.a),
                    short(&d.c_t)
                );
            }
            Ok(s)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BasketDoc {
    pub basket: String,
    pub p1: u32,
    pub anti_k3: String,
    pub cartier_index: u64,
}

#[derive(Debug, Serialize)]
pub struct EnumerationDoc {
    pub schema_version: u32,
    pub command: &'static str,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baskets: Option<Vec<BasketDoc>>,
}

pub fn enumeration(found: &[FormalBasket], count_only: bool, format: Format) -> Result<String> {
    let docs = || {
        found
            .iter()
            .map(|b| BasketDoc {
                basket: b.to_string(),
                p1: b.p1(),
                anti_k3: rational_str(&b.anti_k3()),
                cartier_index: b.cartier_index(),
            })
            .collect::<Vec<_>>()
    };
    match (format, count_only) {
        (Format::Json, _) => json(&EnumerationDoc {
            schema_version: SCHEMA_VERSION,
            command: "enumerate",
            count: found.len(),
            baskets: (!count_only).then(docs),
        }),
        (_, true) => Ok(format!("{}\n", found.len())),
        (Format::Csv, false) => csv_rows(
            &["basket", "p1", "anti_k3", "cartier_index"],
            docs().into_iter().map(|d| {
                [
                    d.basket,
                    d.p1.to_string(),
                    d.anti_k3,
                    d.cartier_index.to_string(),
                ]
            }),
        ),
        (Format::Text, false) => Ok(docs()
            .iter()
            .map(|d| {
                format!(
                    "p1={} basket={} -K^3={} r={}\n",
                    d.p1,
                    d.basket,
                    short(&d.anti_k3),
                    d.cartier_index
                )
            })
            .collect()),
    }
}

#[derive(Debug, Serialize)]
pub struct CaseDoc {
    pub mhat0: u32,
    pub image_dim: u8,
    pub r: u32,
    pub genus: &'static str,
    pub iota: u32,
    pub varrho: String,
    pub zeta_floor: String,
    pub m1: Option<u32>,
    pub standard: bool,
}

#[derive(Debug, Serialize)]
pub struct BoundDoc {
    pub schema_version: u32,
    pub command: &'static str,
    pub case: CaseDoc,
    pub m_min: u32,
    pub theorem: &'static str,
    pub thresholds: u32,
    pub reider: Option<u32>,
    pub notes: Vec<String>,
}

pub fn bound(c: &GeometricCase, b: &BirationalityBound, format: Format) -> Result<String> {
    let doc = BoundDoc {
        schema_version: SCHEMA_VERSION,
        command: "bound",
        case: CaseDoc {
            mhat0: c.mhat0,
            image_dim: c.image_dim,
            r: c.r,
            genus: c.genus.as_str(),
            iota: c.iota,
            varrho: rational_str(&c.varrho),
            zeta_floor: rational_str(&c.zeta_floor),
            m1: c.m1,
            standard: c.standard,
        },
        m_min: b.m_min,
        theorem: b.theorem.as_str(),
        thresholds: b.thresholds,
        reider: b.reider,
        notes: b.notes.clone(),
    };
    match format {
        Format::Json => json(&doc),
        Format::Csv => csv_rows(
            &["field", "value"],
            [
                ["m_min".to_string(), doc.m_min.to_string()],
                ["theorem".into(), doc.theorem.into()],
                ["thresholds".into(), doc.thresholds.to_string()],
                ["reider".into(), opt(&doc.reider)],
            ],
        ),
        Format::Text => {
            let mut s = String::new();
            let c = &doc.case;
            let _ = writeln!(
                s,
                "case: mhat0={} dim={} r={} genus={} standard={}",
                c.mhat0, c.image_dim, c.r, c.genus, c.standard
            );
            let _ = writeln!(s, "m_min: {}", doc.m_min);
            let _ = writeln!(s, "theorem: {}", doc.theorem);
            let _ = writeln!(s, "thresholds: {}", doc.thresholds);
            let _ = writeln!(s, "reider: {}", opt(&doc.reider));
            for n in &doc.notes {
                let _ = writeln!(s, "note: {n}");
            }
            Ok(s)
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifyDoc<'a> {
    schema_version: u32,
    command: &'static str,
    suite: &'a str,
    passed: bool,
    checks: &'a [crate::verify::Check],
}

pub fn verify(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => json(&VerifyDoc {
            schema_version: SCHEMA_VERSION,
            command: "verify",
            suite: &report.suite,
            passed: report.passed(),
            checks: &report.checks,
        }),
        Format::Csv => csv_rows(
            &["check", "passed", "detail"],
            report
                .checks
                .iter()
                .map(|c| [c.name.clone(), c.passed.to_string(), c.detail.clone()]),
        ),
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status}  {:<28} {}", c.name, c.detail);
            }
            let _ = writeln!(
                s,
                "{}: {}",
                report.suite,
                if report.passed() { "pass" } else { "fail" }
            );
            Ok(s)
        }
    }
}
