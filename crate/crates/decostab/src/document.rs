//! The JSON document format: one bundle model, an optional second
//! decoration over the same catalog, and optional GIT twist parameters.
//!
//! Documents are the unit of input for the CLI. Serialization is canonical:
//! field order is fixed, maps are sorted, rationals are `"p/q"` strings in
//! lowest terms, and output always ends in a newline — parsing and
//! re-serializing a canonical document reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::model::{BundleData, BundleModel, DecorationType, ProfileData, SubobjectDescriptor};
use crate::rational::Q;

/// Serde adapter for optional `"p/q"` fields.
mod serde_pq_opt {
    use crate::rational::{format_q, parse_q, Q};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Q>, ser: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => ser.serialize_some(&format_q(*v)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Q>, D::Error> {
        let text = Option::<String>::deserialize(de)?;
        text.map(|t| parse_q(&t).map_err(de::Error::custom))
            .transpose()
    }
}

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDocument {
    pub rank: u32,
    pub degree: i64,
    pub genus: u32,
    pub dim_r: u32,
    pub decoration: DecorationType,
    /// Proper subobjects; `"0"` and `"E"` are implicit.
    pub catalog: Vec<SubobjectDescriptor>,
    /// Strict containments among proper subobject ids.
    #[serde(default)]
    pub relations: Vec<(String, String)>,
    pub profile: ProfileData,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SecondDecorationDocument {
    pub decoration: DecorationType,
    pub profile: ProfileData,
}

/// Twist parameters for the GIT subcommand. Missing values fall back to the
/// per-model defaults (`m0`, `l0 = 2 m0`, δ = 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct GitParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_samples: Option<Vec<i64>>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_pq_opt"
    )]
    pub delta: Option<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema_version: String,
    pub bundle: BundleDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_decoration: Option<SecondDecorationDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub git: Option<GitParams>,
}

impl ModelDocument {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let doc: ModelDocument =
            serde_json::from_str(text).map_err(|e| Error::validation(format!("document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::validation(format!(
                "document: unrecognized schema_version {:?} (expected {:?})",
                doc.schema_version, SCHEMA_VERSION
            )));
        }
        Ok(doc)
    }

    /// Canonical form: pretty-printed JSON with a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }

    /// Builds the validated primary model.
    pub fn build_model(&self) -> Result<BundleModel, Error> {
        BundleModel::new(BundleData {
            rank: self.bundle.rank,
            degree: self.bundle.degree,
            genus: self.bundle.genus,
            dim_r: self.bundle.dim_r,
            deco: self.bundle.decoration,
            subobjects: self.bundle.catalog.clone(),
            relations: self.bundle.relations.clone(),
            profile: self.bundle.profile.clone(),
        })
    }

    /// Builds the second-decoration model over the same catalog, if present.
    pub fn build_second(&self, base: &BundleModel) -> Result<Option<BundleModel>, Error> {
        self.second_decoration
            .as_ref()
            .map(|second| base.with_decoration(second.decoration, &second.profile))
            .transpose()
    }

    /// Document for a bare model (used by generators and tests).
    pub fn wrap(bundle: BundleDocument) -> Self {
        ModelDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            bundle,
            second_decoration: None,
            git: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn worked_doc() -> ModelDocument {
        ModelDocument {
            schema_version: "1".into(),
            bundle: BundleDocument {
                rank: 2,
                degree: 0,
                genus: 2,
                dim_r: 2,
                decoration: DecorationType::new(2, 1, 0, 0, 0),
                catalog: vec![SubobjectDescriptor::new("F", 1, 0, 1)],
                relations: vec![],
                profile: ProfileData::kappa(&[("F", 1)], true),
            },
            second_decoration: Some(SecondDecorationDocument {
                decoration: DecorationType::new(1, 1, 0, 0, 0),
                profile: ProfileData::kappa(&[("F", 1)], true),
            }),
            git: Some(GitParams {
                m: Some(5),
                l_samples: Some(vec![10, 20, 40]),
                delta: Some(qi(1)),
            }),
        }
    }

    #[test]
    fn canonical_round_trip_is_identity() {
        let doc = worked_doc();
        let text = doc.to_canonical_json();
        let parsed = ModelDocument::from_json(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.to_canonical_json(), text);
    }

    #[test]
    fn builds_both_models() {
        let doc = worked_doc();
        let first = doc.build_model().unwrap();
        assert_eq!(first.rank(), 2);
        let second = doc.build_second(&first).unwrap().unwrap();
        assert_eq!(second.deco().a, 1);
        assert_eq!(second.kappa(second.idx("F").unwrap()), 1);
    }

    #[test]
    fn malformed_rational_is_rejected() {
        let mut text = worked_doc().to_canonical_json();
        text = text.replace("\"1/1\"", "\"1/0\"");
        let err = ModelDocument::from_json(&text).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn unknown_schema_version_is_rejected() {
        let text = worked_doc()
            .to_canonical_json()
            .replace("\"schema_version\": \"1\"", "\"schema_version\": \"99\"");
        assert!(ModelDocument::from_json(&text).is_err());
    }

    #[test]
    fn unknown_fields_are_rejected_with_position() {
        let text = worked_doc()
            .to_canonical_json()
            .replace("\"rank\": 2", "\"rankk\": 2");
        let err = ModelDocument::from_json(&text).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("line"), "diagnostics carry a position: {msg}");
    }

    #[test]
    fn bad_profile_id_fails_at_build_time() {
        let mut doc = worked_doc();
        doc.bundle.profile = ProfileData::kappa(&[("Z", 1)], true);
        assert!(doc.build_model().is_err());
    }
}
