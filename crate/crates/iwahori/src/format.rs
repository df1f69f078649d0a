//! JSON and CSV forms of classes, certificates and strata tables.

use std::io::Write;

use iwahori_core::lattice::Q;
use iwahori_core::{AlcoveCertificate, CochVec, Level, Pi1Element, RootDatum, SigmaClass, StrataRow, StrataTable};
use serde::{Deserialize, Serialize};

use crate::error::{CliResult, ParseError};

/// CSV header for strata tables.
pub const TABLE_HEADER: [&str; 6] = ["class_nu", "class_kappa", "dim", "vdim", "delta", "codim"];

pub fn q_str(q: &Q) -> String {
    q.to_string()
}

pub fn parse_q(s: &str) -> Result<Q, ParseError> {
    s.trim().parse::<Q>().map_err(|_| ParseError::new(0, format!("not a rational number: {s:?}")))
}

pub fn nu_strings(nu: &CochVec) -> Vec<String> {
    nu.0.iter().map(q_str).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LevelJson {
    G(String),
    Levi(Vec<usize>),
}

/// `{"nu": [...], "kappa": [...], "level": ...}`; the level is omitted for
/// classes of `G` itself. Levi indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub nu: Vec<String>,
    pub kappa: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<LevelJson>,
}

impl ClassJson {
    pub fn from_class(b: &SigmaClass) -> Self {
        let level = match &b.level {
            Level::G => None,
            Level::Levi(j) => Some(LevelJson::Levi(j.iter().map(|i| i + 1).collect())),
        };
        ClassJson { nu: nu_strings(&b.nu), kappa: b.kappa.0.clone(), level }
    }

    pub fn to_class(&self) -> Result<SigmaClass, ParseError> {
        let nu = CochVec(self.nu.iter().map(|s| parse_q(s)).collect::<Result<_, _>>()?);
        let level = match &self.level {
            None => Level::G,
            Some(LevelJson::G(s)) if s == "G" => Level::G,
            Some(LevelJson::G(s)) => return Err(ParseError::new(0, format!("unknown level {s:?}"))),
            Some(LevelJson::Levi(j)) => {
                if j.contains(&0) {
                    return Err(ParseError::new(0, "Levi indices are 1-based"));
                }
                Level::Levi(j.iter().map(|i| i - 1).collect())
            }
        };
        Ok(SigmaClass { nu, kappa: Pi1Element(self.kappa.clone()), level, rep: None })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub w: String,
    pub normalized: bool,
    pub tilde_x: String,
}

impl CertificateJson {
    pub fn new(rd: &RootDatum, c: &AlcoveCertificate) -> Self {
        CertificateJson {
            j: c.j.iter().map(|i| i + 1).collect(),
            w: rd.format_weyl(c.w),
            normalized: c.normalized,
            tilde_x: rd.format_elt(&c.tilde_x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub class_nu: Vec<String>,
    pub class_kappa: Vec<i64>,
    pub dim: i64,
    pub vdim: String,
    pub delta: String,
    pub codim: i64,
    pub defect: usize,
}

impl RowJson {
    pub fn new(r: &StrataRow) -> Self {
        RowJson {
            class_nu: nu_strings(&r.class.nu),
            class_kappa: r.class.kappa.0.clone(),
            dim: r.dim,
            vdim: q_str(&r.vdim),
            delta: q_str(&r.delta),
            codim: r.codim,
            defect: r.defect,
        }
    }

    /// Cells in [`TABLE_HEADER`] order.
    pub fn csv_record(&self) -> [String; 6] {
        [
            self.class_nu.join(" "),
            self.class_kappa.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" "),
            self.dim.to_string(),
            self.vdim.clone(),
            self.delta.clone(),
            self.codim.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub x: String,
    pub length: usize,
    pub rows: Vec<RowJson>,
    pub min_class: ClassJson,
    pub max_class: ClassJson,
    pub unique_min: bool,
    pub unique_max: bool,
    pub saturated: bool,
    pub cordial_candidate: bool,
    pub gaps: Vec<ClassJson>,
}

/// Rows sorted by `(nu, kappa)`.
pub fn sorted_rows(t: &StrataTable) -> Vec<&StrataRow> {
    let mut rows: Vec<&StrataRow> = t.rows.iter().collect();
    rows.sort_by(|a, b| (&a.class.nu, &a.class.kappa).cmp(&(&b.class.nu, &b.class.kappa)));
    rows
}

impl TableJson {
    pub fn new(rd: &RootDatum, t: &StrataTable) -> Self {
        TableJson {
            x: rd.format_elt(&t.x),
            length: t.length,
            rows: sorted_rows(t).into_iter().map(RowJson::new).collect(),
            min_class: ClassJson::from_class(&t.min_class),
            max_class: ClassJson::from_class(&t.max_class),
            unique_min: t.has_unique_min,
            unique_max: t.unique_max,
            saturated: t.saturated,
            cordial_candidate: t.cordial_candidate,
            gaps: t.gaps.iter().map(ClassJson::from_class).collect(),
        }
    }
}

pub fn write_table_csv<W: Write>(out: W, t: &TableJson) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TABLE_HEADER)?;
    for r in &t.rows {
        w.write_record(r.csv_record())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads back the rows of [`write_table_csv`].
pub fn read_table_csv(text: &str) -> CliResult<Vec<[String; 6]>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    if header != TABLE_HEADER {
        return Err(ParseError::new(0, format!("unexpected header {header:?}")).into());
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        if rec.len() != 6 {
            return Err(ParseError::new(0, format!("row with {} cells", rec.len())).into());
        }
        out.push(core::array::from_fn(|i| rec[i].to_string()));
    }
    Ok(out)
}
