//! Outcome tags and the serializable records printed by the command-line front end.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::param::{self, FamilyParams, TripleParams};
use crate::rational::Rational;
use crate::tuple::{
    classify_elements, verify_tuple, ElementIssue, PairCheck, StructureProfile, VerificationReport,
};

/// Outcome class of one pipeline evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tag {
    /// Distinct nonzero elements with every pairwise condition verified.
    Valid,
    /// Zero or repeated element, pole, or no affine point.
    Degenerate,
    /// Elements are admissible but some pairwise condition fails.
    NotSextuple,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Valid => "VALID",
            Tag::Degenerate => "DEGENERATE",
            Tag::NotSextuple => "NOT_SEXTUPLE",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of checking one list of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub elements: Vec<Rational>,
    pub diophantine: bool,
    pub pairs: Vec<PairCheck>,
    pub issues: Vec<ElementIssue>,
}

impl From<VerificationReport> for VerifyRecord {
    fn from(r: VerificationReport) -> Self {
        VerifyRecord {
            diophantine: r.is_diophantine(),
            elements: r.elements,
            pairs: r.pairs,
            issues: r.issues,
        }
    }
}

/// Structure of one input line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub line: usize,
    pub elements: Vec<Rational>,
    pub profile: StructureProfile,
}

pub fn classify_record(line: usize, elements: Vec<Rational>) -> ClassifyRecord {
    let profile = classify_elements(&elements);
    ClassifyRecord {
        line,
        elements,
        profile,
    }
}

/// A Lasić triple and its regular extensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRecord {
    pub params: TripleParams,
    pub tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub triple: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub regular_pair: Option<Vec<Rational>>,
    /// Whether `a4·a5 + 1` is a square, making all five a Diophantine quintuple.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub quintuple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pairs: Option<Vec<PairCheck>>,
}

pub fn triple_record(params: &TripleParams) -> TripleRecord {
    let mut record = TripleRecord {
        params: params.clone(),
        tag: Tag::Degenerate,
        reason: None,
        triple: None,
        regular_pair: None,
        quintuple: None,
        pairs: None,
    };
    let triple = match param::lasic_triple(params) {
        Ok(t) => t,
        Err(e) => {
            record.reason = Some(e.to_string());
            return record;
        }
    };
    record.triple = Some(triple.to_vec());
    let mut all = triple.to_vec();
    match param::regular_pair_from_params(params) {
        Ok(pair) => {
            record.quintuple = Some((&pair[0] * &pair[1] + Rational::one()).is_square());
            all.extend(pair.iter().cloned());
            record.regular_pair = Some(pair.to_vec());
        }
        Err(e) => record.reason = Some(format!("regular pair: {e}")),
    }
    let report = verify_tuple(&all).expect("nonempty");
    let triple_ok = report
        .pairs
        .iter()
        .filter(|p| p.j < 3)
        .all(|p| p.witness.is_some());
    record.tag = if triple_ok {
        Tag::Valid
    } else {
        Tag::NotSextuple
    };
    record.pairs = Some(report.pairs);
    record
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyMode {
    Quintuple,
    Sextuple,
}

/// A member of the quintuple or sextuple family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub mode: FamilyMode,
    pub u: Rational,
    pub t1: Option<Rational>,
    pub tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elements: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pairs: Option<Vec<PairCheck>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub profile: Option<StructureProfile>,
}

/// Without `t1` the sextuple is the closed-form one-parameter family and the
/// quintuple uses `t1 = t1_of_u(u)`.
pub fn family_record(mode: FamilyMode, u: &Rational, t1: Option<&Rational>) -> FamilyRecord {
    let f = FamilyParams {
        u: u.clone(),
        t1: t1.cloned(),
    };
    let values = match (mode, t1) {
        (FamilyMode::Quintuple, _) => param::quintuple_from(&f).map(|v| v.to_vec()),
        (FamilyMode::Sextuple, Some(_)) => param::sextuple_from(&f).map(|v| v.to_vec()),
        (FamilyMode::Sextuple, None) => param::sextuple_of_u(u).map(|v| v.to_vec()),
    };
    let t1 = f.resolved_t1().ok();
    let mut record = FamilyRecord {
        mode,
        u: u.clone(),
        t1,
        tag: Tag::Degenerate,
        reason: None,
        elements: None,
        pairs: None,
        profile: None,
    };
    match values {
        Err(e) => record.reason = Some(e.to_string()),
        Ok(values) => {
            let report = verify_tuple(&values).expect("nonempty");
            let ok = report.is_diophantine();
            record.tag = if ok { Tag::Valid } else { Tag::NotSextuple };
            if ok {
                record.profile = Some(classify_elements(&values));
            } else {
                let failing: Vec<String> = report
                    .failing_pairs()
                    .map(|p| format!("({},{})", p.i + 1, p.j + 1))
                    .collect();
                record.reason = Some(format!("failing pairs {}", failing.join(" ")));
            }
            record.pairs = Some(report.pairs);
            record.elements = Some(values);
        }
    }
    record
}
