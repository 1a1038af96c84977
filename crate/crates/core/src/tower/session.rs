use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use super::{element_json, StepKind, TowerRing};
use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// One adjunction: the kind and the polynomial's coefficients as tower
/// elements of the prefix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub kind: StepKind,
    pub poly: Vec<Json>,
}

/// Serializable description of a tower; replaying the steps rebuilds it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerRecord {
    pub base: String,
    pub steps: Vec<StepRecord>,
}

impl TowerRecord {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("tower record: {}", e)))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn build(&self) -> Result<TowerRing> {
        let base: RingSpec = self.base.parse()?;
        let mut ring = TowerRing::new(base)?;
        for step in &self.steps {
            let f = ring.poly_from_json(&Json::Array(step.poly.clone()))?;
            ring = match step.kind {
                StepKind::HenselRoot => ring.adjoin_hensel_root(&f)?.ring,
                StepKind::ResidueExtension => ring.adjoin_residue_extension(&f)?.0,
            };
        }
        Ok(ring)
    }
}

impl TowerRing {
    pub fn to_record(&self) -> TowerRecord {
        let steps = self
            .steps
            .iter()
            .map(|step| StepRecord {
                kind: step.kind,
                poly: step
                    .source
                    .coeffs()
                    .iter()
                    .map(|c| element_json(&self.base, c))
                    .collect(),
            })
            .collect();
        TowerRecord {
            base: self.base.to_string(),
            steps,
        }
    }
}
