use std::collections::{BTreeMap, BTreeSet};

use examforge_core::grader::{RestrictionSpec, Restrictions, Violation, ViolationKind};
use examforge_core::hs::Feature;
use serde::{Deserialize, Serialize};

/// Constraints for one function, or global ones at the top level.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionsJson {
    #[serde(default)]
    pub required_features: Vec<String>,
    #[serde(default)]
    pub forbidden_features: Vec<String>,
    #[serde(default)]
    pub allowed_calls: Option<Vec<String>>,
    #[serde(default)]
    pub forbidden_calls: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionJson {
    #[serde(default)]
    pub required_features: Vec<String>,
    #[serde(default)]
    pub forbidden_features: Vec<String>,
    #[serde(default)]
    pub allowed_calls: Option<Vec<String>>,
    #[serde(default)]
    pub forbidden_calls: Option<Vec<String>>,
    #[serde(default)]
    pub functions: BTreeMap<String, RestrictionsJson>,
}

fn features(names: &[String]) -> Result<BTreeSet<Feature>, String> {
    names
        .iter()
        .map(|n| n.parse::<Feature>().map_err(|e| e.to_string()))
        .collect()
}

fn calls(list: &Option<Vec<String>>) -> Option<BTreeSet<String>> {
    list.as_ref().map(|l| l.iter().cloned().collect())
}

impl RestrictionsJson {
    fn to_restrictions(&self) -> Result<Restrictions, String> {
        Ok(Restrictions {
            required_features: features(&self.required_features)?,
            forbidden_features: features(&self.forbidden_features)?,
            allowed_calls: calls(&self.allowed_calls),
            forbidden_calls: calls(&self.forbidden_calls),
        })
    }
}

impl RestrictionJson {
    /// Converts and validates the spec.
    pub fn to_spec(&self) -> Result<RestrictionSpec, String> {
        let global = RestrictionsJson {
            required_features: self.required_features.clone(),
            forbidden_features: self.forbidden_features.clone(),
            allowed_calls: self.allowed_calls.clone(),
            forbidden_calls: self.forbidden_calls.clone(),
        };
        let spec = RestrictionSpec {
            global: global.to_restrictions()?,
            functions: self
                .functions
                .iter()
                .map(|(name, r)| Ok((name.clone(), r.to_restrictions()?)))
                .collect::<Result<_, String>>()?,
        };
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationJson {
    pub function: Option<String>,
    pub kind: &'static str,
    pub detail: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationsJson {
    pub violations: Vec<ViolationJson>,
}

pub fn violations_json(violations: &[Violation]) -> ViolationsJson {
    ViolationsJson {
        violations: violations
            .iter()
            .map(|v| ViolationJson {
                function: v.function.clone(),
                kind: v.kind.name(),
                detail: match &v.kind {
                    ViolationKind::MissingFeature(f) | ViolationKind::ForbiddenFeature(f) => Some(f.key().into()),
                    ViolationKind::ForbiddenCall(c) | ViolationKind::CallNotAllowed(c) => Some(c.clone()),
                    ViolationKind::MissingFunction => None,
                },
                message: v.message(),
            })
            .collect(),
    }
}
