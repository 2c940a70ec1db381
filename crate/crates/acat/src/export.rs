//! Structured document export for reports, nerves and oriented complexes.
//! Single self-describing JSON format with a version field; all collections
//! are emitted in stable order so identical inputs give identical bytes.

use serde::{Deserialize, Serialize};

use crate::nerve::{Nerve, OrientedComplex};
use crate::report::ValidationReport;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: u32,
    pub kind: String,
    pub reports: Vec<ValidationReport>,
}

impl ReportDocument {
    pub fn new(reports: Vec<ValidationReport>) -> Self {
        ReportDocument {
            version: FORMAT_VERSION,
            kind: "validation-report".into(),
            reports,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NerveDocument {
    pub version: u32,
    pub kind: String,
    pub truncation: usize,
    /// Chains per level as lists of morphism names.
    pub levels: Vec<Vec<Vec<String>>>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

impl NerveDocument {
    pub fn new(nv: &Nerve) -> Self {
        let levels = nv
            .levels
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .map(|ch| {
                        ch.factors
                            .iter()
                            .map(|&m| nv.category.morphism(m).name.clone())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        NerveDocument {
            version: FORMAT_VERSION,
            kind: "nerve".into(),
            truncation: nv.truncation,
            levels,
            faces: nv.faces.clone(),
            degeneracies: nv.degeneracies.clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SimplexRecord {
    /// Factor names of the chain realized by this simplex.
    pub chain: Vec<String>,
    /// Ordered faces d_1..d_n as (sign, index one dimension down); dimension
    /// 0 points at the null face.
    pub boundary: Vec<(i64, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub version: u32,
    pub kind: String,
    pub dimensions: Vec<Vec<SimplexRecord>>,
    pub euler_characteristic: i64,
}

impl ComplexDocument {
    pub fn new(nv: &Nerve, oc: &OrientedComplex) -> Self {
        let dimensions = oc
            .simplices
            .iter()
            .map(|dim| {
                dim.iter()
                    .map(|s| SimplexRecord {
                        chain: s
                            .chain
                            .factors
                            .iter()
                            .map(|&m| nv.category.morphism(m).name.clone())
                            .collect(),
                        boundary: s.boundary.clone(),
                    })
                    .collect()
            })
            .collect();
        ComplexDocument {
            version: FORMAT_VERSION,
            kind: "oriented-complex".into(),
            dimensions,
            euler_characteristic: crate::nerve::euler_characteristic(oc),
        }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}
