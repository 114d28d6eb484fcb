//! Report records and their JSON and CSV renderings.

use serde::Serialize;
use sp_baw::bawcheck::Violation;
use sp_baw::{BlockLabel, CoreMap, DivisorMap, FieldContext, SemisimpleLabel};

/// Outcome of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
    Incomplete,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockRecord {
    pub s: SemisimpleLabel,
    pub kappa: CoreMap,
    pub i: u8,
    pub w: DivisorMap<u32, u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_ibr: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_weights: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_weights_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bijective: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivariant: Option<bool>,
}

impl BlockRecord {
    pub fn new(b: &BlockLabel, w: DivisorMap<u32, u32>) -> Self {
        BlockRecord {
            s: b.s.clone(),
            kappa: b.kappa.clone(),
            i: b.i,
            w,
            n_ibr: None,
            n_weights: None,
            n_weights_k: None,
            bijective: None,
            inverse: None,
            equivariant: None,
        }
    }

    pub fn passed(&self) -> bool {
        let counts_ok = match (self.n_ibr, self.n_weights, self.n_weights_k) {
            (Some(a), Some(b), Some(c)) => a == b && b == c,
            _ => true,
        };
        counts_ok
            && self.bijective != Some(false)
            && self.inverse != Some(false)
            && self.equivariant != Some(false)
    }
}

/// Global checks that are not per block.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantSummary {
    pub universe_size: usize,
    pub sum_n_ibr: usize,
    /// Every universe label lands in exactly one enumerated block.
    pub partition_ok: bool,
    /// The radical-shape dimension identity holds for every `K`-form weight.
    pub dimension_audit_ok: bool,
}

impl InvariantSummary {
    pub fn passed(&self) -> bool {
        self.partition_ok && self.dimension_audit_ok && self.universe_size == self.sum_n_ibr
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub context: FieldContext,
    pub n: u32,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub blocks: Vec<BlockRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
}

/// Upper bound on violations carried in a report.
pub const MAX_REPORTED_VIOLATIONS: usize = 20;

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One row per block; structured fields as compact JSON.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "p",
            "f",
            "ell",
            "n",
            "status",
            "s",
            "kappa",
            "i",
            "w",
            "n_ibr",
            "n_weights",
            "n_weights_k",
            "bijective",
            "inverse",
            "equivariant",
        ])
        .expect("in-memory write");
        let ctx = &self.context;
        let opt = |v: Option<String>| v.unwrap_or_default();
        let status = serde_json::to_value(self.status).expect("status serializes");
        for b in &self.blocks {
            w.write_record([
                ctx.p.to_string(),
                ctx.f.to_string(),
                ctx.ell.to_string(),
                self.n.to_string(),
                status.as_str().unwrap_or_default().to_string(),
                compact(&b.s),
                compact(&b.kappa),
                b.i.to_string(),
                compact(&b.w),
                opt(b.n_ibr.map(|x| x.to_string())),
                opt(b.n_weights.map(|x| x.to_string())),
                opt(b.n_weights_k.map(|x| x.to_string())),
                opt(b.bijective.map(|x| x.to_string())),
                opt(b.inverse.map(|x| x.to_string())),
                opt(b.equivariant.map(|x| x.to_string())),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("labels serialize")
}
