//! Case registry for the Bott-vanishing checks: each record carries the
//! numerics of one family, gets routed to the matching evaluator, and ends
//! in a verdict on `-chi(Omega^2 (x) L)` for the relevant ample `L`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chern::{LinearForm, Symbol};
use crate::exact::{parse_rational, render_rational, Rational};
use crate::theorems::{
    thm1_checked, thm2_chain, thm2_closed, thm3_q, thm3_value, DivisorCaseInput, PlaneBundleInput, TheoremError,
    ThreefoldNumerics,
};

const BUILTIN: &str = include_str!("../data/builtin.toml");

const FIELDS: [&str; 14] = [
    "id", "geometry", "h", "c13", "c12H", "c1H2", "c2H", "H3", "d", "a", "k", "c1", "c2", "provenance",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Geometry {
    DelPezzoFib6,
    DelPezzoFib8Small,
    DelPezzoFib8Divisorial,
    ConicBundle,
    P1BundleOverPlane,
    Table8,
    Table9,
    Table75No1,
}

impl Geometry {
    pub const ALL: [Geometry; 8] = [
        Geometry::DelPezzoFib6,
        Geometry::DelPezzoFib8Small,
        Geometry::DelPezzoFib8Divisorial,
        Geometry::ConicBundle,
        Geometry::P1BundleOverPlane,
        Geometry::Table8,
        Geometry::Table9,
        Geometry::Table75No1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Geometry::DelPezzoFib6 => "delPezzoFib6",
            Geometry::DelPezzoFib8Small => "delPezzoFib8-small",
            Geometry::DelPezzoFib8Divisorial => "delPezzoFib8-divisorial",
            Geometry::ConicBundle => "conicBundle",
            Geometry::P1BundleOverPlane => "p1BundleOverPlane",
            Geometry::Table8 => "table8",
            Geometry::Table9 => "table9",
            Geometry::Table75No1 => "table75no1",
        }
    }

    fn allowed_fields(self) -> &'static [&'static str] {
        match self {
            Geometry::DelPezzoFib6 => &["h", "c13"],
            Geometry::ConicBundle => &["h", "c13", "d"],
            Geometry::Table8 | Geometry::Table9 | Geometry::Table75No1 => &["h", "c13", "c12H", "c1H2", "c2H", "H3"],
            Geometry::DelPezzoFib8Small | Geometry::DelPezzoFib8Divisorial => &["a", "k"],
            Geometry::P1BundleOverPlane => &["c1", "c2"],
        }
    }

    fn required_fields(self) -> &'static [&'static str] {
        match self {
            Geometry::ConicBundle => &["d"],
            Geometry::DelPezzoFib8Small | Geometry::DelPezzoFib8Divisorial => &["k"],
            Geometry::P1BundleOverPlane => &["c1", "c2"],
            _ => &[],
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Geometry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Geometry::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown geometry {s:?}"))
    }
}

/// Intersection numbers as given in a record; absent entries stay symbolic.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ThreefoldFields {
    pub h: Option<u64>,
    pub c13: Option<Rational>,
    pub c12h: Option<Rational>,
    pub c1h2: Option<Rational>,
    pub c2h: Option<Rational>,
    pub h3: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum CaseNumerics {
    Threefold(ThreefoldFields),
    Divisor { twists: Option<[i64; 4]>, k: i64 },
    Plane(PlaneBundleInput),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaseRecord {
    pub id: String,
    pub geometry: Geometry,
    pub numerics: CaseNumerics,
    /// Discriminant degree, conic bundles only.
    pub d: Option<i64>,
    pub provenance: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Conclusion {
    FailsByNegativeChi,
    NeedsH0Check,
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::FailsByNegativeChi => "FAILS_BY_NEGATIVE_CHI",
            Conclusion::NeedsH0Check => "NEEDS_H0_CHECK",
            Conclusion::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// `-chi`, possibly affine in `h` or other unknowns.
    pub obstruction: LinearForm,
    pub conclusion: Conclusion,
    pub note: Option<String>,
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("registry is not valid TOML: {0}")]
    Syntax(String),
    #[error("case {index}: {message}")]
    Entry { index: usize, message: String },
    #[error("case {id}: field {field}: {message}")]
    Field { id: String, field: String, message: String },
    #[error("duplicate case id {0}")]
    DuplicateId(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("case {id}: missing field {field}")]
    MissingField { id: String, field: &'static str },
    #[error("case {id}: {source}")]
    Theorem {
        id: String,
        #[source]
        source: TheoremError,
    },
}

impl CaseError {
    pub fn is_mismatch(&self) -> bool {
        matches!(
            self,
            CaseError::Theorem {
                source: TheoremError::Mismatch { .. },
                ..
            }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

impl RawRational {
    fn from_rational(r: &Rational) -> Self {
        match (r.is_integer(), i64::try_from(r.numer())) {
            (true, Ok(n)) => RawRational::Int(n),
            _ => RawRational::Text(render_rational(r)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    id: String,
    geometry: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c13: Option<RawRational>,
    #[serde(rename = "c12H", skip_serializing_if = "Option::is_none")]
    c12h: Option<RawRational>,
    #[serde(rename = "c1H2", skip_serializing_if = "Option::is_none")]
    c1h2: Option<RawRational>,
    #[serde(rename = "c2H", skip_serializing_if = "Option::is_none")]
    c2h: Option<RawRational>,
    #[serde(rename = "H3", skip_serializing_if = "Option::is_none")]
    h3: Option<RawRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c2: Option<i64>,
    provenance: String,
}

#[derive(Debug, Serialize)]
struct RawFile {
    case: Vec<RawCase>,
}

impl RawCase {
    fn present(&self) -> Vec<&'static str> {
        let flags = [
            ("h", self.h.is_some()),
            ("c13", self.c13.is_some()),
            ("c12H", self.c12h.is_some()),
            ("c1H2", self.c1h2.is_some()),
            ("c2H", self.c2h.is_some()),
            ("H3", self.h3.is_some()),
            ("d", self.d.is_some()),
            ("a", self.a.is_some()),
            ("k", self.k.is_some()),
            ("c1", self.c1.is_some()),
            ("c2", self.c2.is_some()),
        ];
        flags.into_iter().filter(|(_, on)| *on).map(|(name, _)| name).collect()
    }

    fn into_record(self) -> Result<CaseRecord, RegistryError> {
        let id = self.id.clone();
        let err = |field: &str, message: String| RegistryError::Field {
            id: id.clone(),
            field: field.to_string(),
            message,
        };
        let geometry: Geometry = self.geometry.parse().map_err(|m| err("geometry", m))?;
        let present = self.present();
        if let Some(extra) = present.iter().find(|f| !geometry.allowed_fields().contains(f)) {
            return Err(err(extra, format!("not used by geometry {geometry}")));
        }
        if let Some(missing) = geometry.required_fields().iter().find(|f| !present.contains(f)) {
            return Err(err(missing, format!("required for geometry {geometry}")));
        }
        let rational = |field: &str, raw: &Option<RawRational>| -> Result<Option<Rational>, RegistryError> {
            match raw {
                None => Ok(None),
                Some(RawRational::Int(n)) => Ok(Some(Rational::from_integer((*n).into()))),
                Some(RawRational::Text(t)) => parse_rational(t).map(Some).map_err(|e| err(field, e.to_string())),
            }
        };

        let numerics = match geometry {
            Geometry::DelPezzoFib8Small | Geometry::DelPezzoFib8Divisorial => {
                let twists = match &self.a {
                    None => None,
                    Some(v) => {
                        let arr: [i64; 4] = v
                            .as_slice()
                            .try_into()
                            .map_err(|_| err("a", format!("expected 4 twists, got {}", v.len())))?;
                        DivisorCaseInput::new(arr, 0, None).map_err(|e| err("a", e.to_string()))?;
                        Some(arr)
                    }
                };
                CaseNumerics::Divisor {
                    twists,
                    k: self.k.expect("required"),
                }
            }
            Geometry::P1BundleOverPlane => CaseNumerics::Plane(PlaneBundleInput::new(
                self.c1.expect("required"),
                self.c2.expect("required"),
            )),
            _ => {
                let h = match self.h {
                    None => None,
                    Some(h) => Some(u64::try_from(h).map_err(|_| err("h", format!("must be nonnegative, got {h}")))?),
                };
                CaseNumerics::Threefold(ThreefoldFields {
                    h,
                    c13: rational("c13", &self.c13)?,
                    c12h: rational("c12H", &self.c12h)?,
                    c1h2: rational("c1H2", &self.c1h2)?,
                    c2h: rational("c2H", &self.c2h)?,
                    h3: rational("H3", &self.h3)?,
                })
            }
        };
        if let Some(d) = self.d {
            if d <= 0 {
                return Err(err("d", format!("must be positive, got {d}")));
            }
        }
        Ok(CaseRecord {
            id: self.id,
            geometry,
            numerics,
            d: self.d,
            provenance: self.provenance,
        })
    }

    fn from_record(rec: &CaseRecord) -> Self {
        let mut raw = RawCase {
            id: rec.id.clone(),
            geometry: rec.geometry.name().to_string(),
            h: None,
            c13: None,
            c12h: None,
            c1h2: None,
            c2h: None,
            h3: None,
            d: rec.d,
            a: None,
            k: None,
            c1: None,
            c2: None,
            provenance: rec.provenance.clone(),
        };
        let conv = |r: &Option<Rational>| r.as_ref().map(RawRational::from_rational);
        match &rec.numerics {
            CaseNumerics::Threefold(t) => {
                raw.h = t.h.map(|h| h as i64);
                raw.c13 = conv(&t.c13);
                raw.c12h = conv(&t.c12h);
                raw.c1h2 = conv(&t.c1h2);
                raw.c2h = conv(&t.c2h);
                raw.h3 = conv(&t.h3);
            }
            CaseNumerics::Divisor { twists, k } => {
                raw.a = twists.map(|t| t.to_vec());
                raw.k = Some(*k);
            }
            CaseNumerics::Plane(p) => {
                raw.c1 = Some(p.c1);
                raw.c2 = Some(p.c2);
            }
        }
        raw
    }
}

/// Parses registry text: a sequence of `[[case]]` tables.
pub fn parse_registry(text: &str) -> Result<Vec<CaseRecord>, RegistryError> {
    let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| RegistryError::Syntax(e.to_string()))?;
    let cases = match table.remove("case") {
        None => Vec::new(),
        Some(toml::Value::Array(items)) => items,
        Some(_) => return Err(RegistryError::Syntax("`case` must be an array of tables".into())),
    };
    if let Some(key) = table.keys().next() {
        return Err(RegistryError::Syntax(format!("unexpected top-level key {key:?}")));
    }

    let mut seen = BTreeSet::new();
    let mut records = Vec::with_capacity(cases.len());
    for (index, item) in cases.into_iter().enumerate() {
        let toml::Value::Table(entry) = item else {
            return Err(RegistryError::Entry {
                index,
                message: "not a table".into(),
            });
        };
        let id = match entry.get("id") {
            Some(toml::Value::String(s)) => s.clone(),
            _ => {
                return Err(RegistryError::Entry {
                    index,
                    message: "missing string field id".into(),
                })
            }
        };
        if let Some(key) = entry.keys().find(|k| !FIELDS.contains(&k.as_str())) {
            return Err(RegistryError::Field {
                id,
                field: key.clone(),
                message: "unknown field".into(),
            });
        }
        let raw: RawCase = toml::Value::Table(entry).try_into().map_err(|e: toml::de::Error| RegistryError::Field {
            id: id.clone(),
            field: "-".into(),
            message: e.message().to_string(),
        })?;
        if !seen.insert(id.clone()) {
            return Err(RegistryError::DuplicateId(id));
        }
        records.push(raw.into_record()?);
    }
    Ok(records)
}

pub fn load_registry(path: &Path) -> Result<Vec<CaseRecord>, RegistryError> {
    let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_registry(&text)
}

pub fn builtin_registry() -> Vec<CaseRecord> {
    parse_registry(BUILTIN).expect("built-in registry is valid")
}

pub fn serialize_registry(records: &[CaseRecord]) -> String {
    let file = RawFile {
        case: records.iter().map(RawCase::from_record).collect(),
    };
    toml::to_string(&file).expect("registry serializes")
}

/// Fills in user-supplied twists `a` for a divisorial or small record.
pub fn set_twists(records: &mut [CaseRecord], id: &str, twists: [i64; 4]) -> Result<(), String> {
    let rec = records
        .iter_mut()
        .find(|r| r.id == id)
        .ok_or_else(|| format!("no case with id {id}"))?;
    match &mut rec.numerics {
        CaseNumerics::Divisor { twists: slot, .. } => {
            DivisorCaseInput::new(twists, 0, None).map_err(|e| e.to_string())?;
            *slot = Some(twists);
            Ok(())
        }
        _ => Err(format!("case {id} ({}) takes no twists", rec.geometry)),
    }
}

fn threefold_numerics(geometry: Geometry, fields: &ThreefoldFields, d: Option<i64>) -> ThreefoldNumerics {
    let mut n = match geometry {
        Geometry::DelPezzoFib6 => ThreefoldNumerics::del_pezzo_six(),
        Geometry::ConicBundle => ThreefoldNumerics::conic_bundle(LinearForm::int(d.expect("validated"))),
        _ => ThreefoldNumerics::symbolic(),
    };
    let set = |slot: &mut LinearForm, v: &Option<Rational>| {
        if let Some(v) = v {
            *slot = LinearForm::constant(v.clone());
        }
    };
    set(&mut n.c13, &fields.c13);
    set(&mut n.c12h, &fields.c12h);
    set(&mut n.c1h2, &fields.c1h2);
    set(&mut n.c2h, &fields.c2h);
    set(&mut n.h3, &fields.h3);
    if let Some(h) = fields.h {
        n.h = LinearForm::int(h as i64);
    }
    // integrality is only meaningful once every intersection number is known
    n.geometric = [&n.c13, &n.c12h, &n.c1h2, &n.c2h, &n.h3]
        .iter()
        .all(|v| v.as_constant().is_some());
    n
}

/// Applies the verdict rules to an obstruction `-chi`.
pub fn conclude(obstruction: &LinearForm) -> Conclusion {
    if obstruction.is_zero() {
        return Conclusion::NeedsH0Check;
    }
    let only_h = obstruction.symbols().all(|s| *s == Symbol::Hodge);
    if only_h && !obstruction.coeff(&Symbol::Hodge).is_negative() && obstruction.constant_term().is_positive() {
        Conclusion::FailsByNegativeChi
    } else {
        Conclusion::Inconclusive
    }
}

/// Routes a record to its evaluator, checking both computation paths.
pub fn evaluate_case(case: &CaseRecord) -> Result<Verdict, CaseError> {
    let theorem = |source| CaseError::Theorem {
        id: case.id.clone(),
        source,
    };
    let (obstruction, note) = match &case.numerics {
        CaseNumerics::Threefold(fields) => {
            let n = threefold_numerics(case.geometry, fields, case.d);
            let value = thm1_checked(&n).map_err(theorem)?;
            (value, Some("L = H - K_X".to_string()))
        }
        CaseNumerics::Divisor { twists, k } => {
            let twists = twists.ok_or(CaseError::MissingField {
                id: case.id.clone(),
                field: "a",
            })?;
            let inp = DivisorCaseInput::new(twists, *k, None).map_err(theorem)?;
            let chain = thm2_chain(&inp).map_err(theorem)?;
            let closed = thm2_closed(&inp);
            match chain.value(None) {
                Some(v) if v == closed => (LinearForm::constant(closed), Some("L = aH + U".to_string())),
                other => {
                    return Err(theorem(TheoremError::Mismatch {
                        derived: other.map_or_else(|| chain.in_a.render("a"), |v| render_rational(&v)),
                        closed: render_rational(&closed),
                    }))
                }
            }
        }
        CaseNumerics::Plane(inp) => {
            let q = thm3_q(inp).q.eval_int(-1);
            let closed = thm3_value(inp);
            if q != closed {
                return Err(theorem(TheoremError::Mismatch {
                    derived: render_rational(&q),
                    closed: render_rational(&closed),
                }));
            }
            (LinearForm::constant(closed), Some("L = H + U".to_string()))
        }
    };
    let conclusion = conclude(&obstruction);
    let note = match conclusion {
        Conclusion::NeedsH0Check => Some("chi vanishes; Bott vanishing forces h^0(Omega^2(L)) = 0".to_string()),
        _ => note,
    };
    Ok(Verdict {
        obstruction,
        conclusion,
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub id: String,
    pub geometry: String,
    pub obstruction: String,
    pub conclusion: String,
    pub provenance: String,
}

/// One row per case, sorted by id. Evaluation errors become
/// `INCONCLUSIVE` rows carrying the error text.
pub fn report(cases: &[CaseRecord]) -> Vec<ReportRow> {
    let mut rows: Vec<ReportRow> = cases
        .iter()
        .map(|case| {
            let (obstruction, conclusion) = match evaluate_case(case) {
                Ok(v) => (v.obstruction.to_string(), v.conclusion),
                Err(CaseError::MissingField { field, .. }) => (format!("missing field {field}"), Conclusion::Inconclusive),
                Err(CaseError::Theorem { source, .. }) => (format!("error: {source}"), Conclusion::Inconclusive),
            };
            ReportRow {
                id: case.id.clone(),
                geometry: case.geometry.name().to_string(),
                obstruction,
                conclusion: conclusion.to_string(),
                provenance: case.provenance.clone(),
            }
        })
        .collect();
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    rows
}

pub fn render_table(rows: &[ReportRow]) -> String {
    let header = ["id", "geometry", "obstruction", "conclusion", "provenance"];
    let cells: Vec<[&str; 5]> = rows
        .iter()
        .map(|r| [&r.id[..], &r.geometry, &r.obstruction, &r.conclusion, &r.provenance])
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |row: [&str; 5]| {
        let padded: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    out += &line(widths.map(|w| "-".repeat(w)).each_ref().map(String::as_str));
    for row in cells {
        out += &line(row);
    }
    out
}

pub fn render_json(rows: &[ReportRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize") + "\n"
}

/// True when the report contains a dual-path disagreement.
pub fn any_mismatch(cases: &[CaseRecord]) -> bool {
    cases
        .iter()
        .any(|c| matches!(evaluate_case(c), Err(e) if e.is_mismatch()))
}
