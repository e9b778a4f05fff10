//! Serializable result records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{format_abelian, LaurentPoly};

use super::WadaInvariant;

/// One polynomial invariant with the options that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub invariant: String,
    pub vars: Vec<String>,
    pub polynomial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstructed: Option<bool>,
    pub provenance: BTreeMap<String, String>,
}

impl PolyRecord {
    pub fn new(invariant: &str, p: &LaurentPoly, provenance: BTreeMap<String, String>) -> Self {
        PolyRecord {
            invariant: invariant.to_string(),
            vars: p.vars().names().to_vec(),
            polynomial: p.to_string(),
            obstructed: None,
            provenance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WadaRecord {
    pub invariant: String,
    pub vars: Vec<String>,
    pub deleted: String,
    pub numerator: String,
    pub denominator: String,
    pub quotient: Option<String>,
    pub provenance: BTreeMap<String, String>,
}

impl WadaRecord {
    pub fn new(w: &WadaInvariant, provenance: BTreeMap<String, String>) -> Self {
        WadaRecord {
            invariant: "wada".into(),
            vars: w.numerator.vars().names().to_vec(),
            deleted: w.deleted.clone(),
            numerator: w.numerator.to_string(),
            denominator: w.denominator.to_string(),
            quotient: w.quotient.as_ref().map(|q| q.to_string()),
            provenance,
        }
    }
}

/// Finitely generated abelian group as torsion orders plus `0` per free summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianRecord {
    pub invariant: String,
    pub factors: Vec<String>,
    pub group: String,
    pub provenance: BTreeMap<String, String>,
}

impl AbelianRecord {
    pub fn new(invariant: &str, factors: &[num_bigint::BigInt], provenance: BTreeMap<String, String>) -> Self {
        AbelianRecord {
            invariant: invariant.into(),
            factors: factors.iter().map(|f| f.to_string()).collect(),
            group: format_abelian(factors),
            provenance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberingRecord {
    pub invariant: String,
    pub modulus: u32,
    /// Edge name to label; `None` when no numbering exists.
    pub labels: Option<BTreeMap<String, i64>>,
    pub provenance: BTreeMap<String, String>,
}
