use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::hs::{AnalysisReport, Feature, FunctionReport};

/// Feature and call constraints for one function, or for all of them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Restrictions {
    pub required_features: BTreeSet<Feature>,
    pub forbidden_features: BTreeSet<Feature>,
    pub allowed_calls: Option<BTreeSet<String>>,
    pub forbidden_calls: Option<BTreeSet<String>>,
}

/// Global constraints plus per-function ones.
///
/// A globally required feature must be used by at least one function; every
/// other global constraint applies to each function separately.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RestrictionSpec {
    pub global: Restrictions,
    pub functions: BTreeMap<String, Restrictions>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictionError {
    #[error("{scope}: feature {feature} is both required and forbidden")]
    Contradictory { scope: String, feature: Feature },
    #[error("{scope}: allowed_calls and forbidden_calls are mutually exclusive")]
    BothCallLists { scope: String },
}

impl Restrictions {
    fn validate(&self, scope: &str) -> Result<(), RestrictionError> {
        if let Some(&feature) = self.required_features.intersection(&self.forbidden_features).next() {
            return Err(RestrictionError::Contradictory {
                scope: scope.into(),
                feature,
            });
        }
        if self.allowed_calls.is_some() && self.forbidden_calls.is_some() {
            return Err(RestrictionError::BothCallLists { scope: scope.into() });
        }
        Ok(())
    }
}

impl RestrictionSpec {
    pub fn validate(&self) -> Result<(), RestrictionError> {
        self.global.validate("global")?;
        for (name, r) in &self.functions {
            r.validate(name)?;
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.global == Restrictions::default() && self.functions.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    MissingFeature(Feature),
    ForbiddenFeature(Feature),
    ForbiddenCall(String),
    CallNotAllowed(String),
    MissingFunction,
}

impl ViolationKind {
    pub fn name(&self) -> &'static str {
        match self {
            ViolationKind::MissingFeature(_) => "missing_feature",
            ViolationKind::ForbiddenFeature(_) => "forbidden_feature",
            ViolationKind::ForbiddenCall(_) => "forbidden_call",
            ViolationKind::CallNotAllowed(_) => "call_not_allowed",
            ViolationKind::MissingFunction => "missing_function",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The function at fault; `None` for a global requirement no function
    /// meets.
    pub function: Option<String>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.function.as_deref().unwrap_or("module"))?;
        match &self.kind {
            ViolationKind::MissingFeature(x) => write!(f, ": required feature {x} absent"),
            ViolationKind::ForbiddenFeature(x) => write!(f, ": forbidden feature {x} present"),
            ViolationKind::ForbiddenCall(c) => write!(f, ": forbidden call {c}"),
            ViolationKind::CallNotAllowed(c) => write!(f, ": call {c} not in allowed list"),
            ViolationKind::MissingFunction => f.write_str(": function not defined"),
        }
    }
}

/// Checks a report against a restriction spec. Violations come out in a
/// fixed order: global requirements, then per function in report order,
/// then functions the spec names but the report lacks.
pub fn check_restrictions(report: &AnalysisReport, spec: &RestrictionSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    for &feature in &spec.global.required_features {
        if !report.functions.iter().any(|f| f.has(feature)) {
            out.push(Violation {
                function: None,
                kind: ViolationKind::MissingFeature(feature),
            });
        }
    }
    let top_level: BTreeSet<&str> = report.functions.iter().map(|f| f.name.as_str()).collect();
    for func in &report.functions {
        let global = Restrictions {
            required_features: BTreeSet::new(),
            ..spec.global.clone()
        };
        check_function(func, &global, &top_level, &mut out);
        if let Some(own) = spec.functions.get(&func.name) {
            check_function(func, own, &top_level, &mut out);
        }
    }
    for name in spec.functions.keys() {
        if !top_level.contains(name.as_str()) {
            out.push(Violation {
                function: Some(name.clone()),
                kind: ViolationKind::MissingFunction,
            });
        }
    }
    dedup(out)
}

fn check_function(func: &FunctionReport, r: &Restrictions, top_level: &BTreeSet<&str>, out: &mut Vec<Violation>) {
    let mut push = |kind| {
        out.push(Violation {
            function: Some(func.name.clone()),
            kind,
        })
    };
    for &feature in &r.required_features {
        if !func.has(feature) {
            push(ViolationKind::MissingFeature(feature));
        }
    }
    for &feature in &r.forbidden_features {
        if func.has(feature) {
            push(ViolationKind::ForbiddenFeature(feature));
        }
    }
    for call in &func.called_fns {
        if r.forbidden_calls.as_ref().is_some_and(|d| d.contains(call)) {
            push(ViolationKind::ForbiddenCall(call.clone()));
        }
        if let Some(allowed) = &r.allowed_calls {
            let ok = allowed.contains(call) || func.declared_fns.contains(call) || top_level.contains(call.as_str());
            if !ok {
                push(ViolationKind::CallNotAllowed(call.clone()));
            }
        }
    }
}

/// Global and per-function rules can flag the same thing twice.
fn dedup(list: Vec<Violation>) -> Vec<Violation> {
    let mut out: Vec<Violation> = Vec::with_capacity(list.len());
    for v in list {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

impl Violation {
    pub fn message(&self) -> String {
        format!("{self}")
    }
}
