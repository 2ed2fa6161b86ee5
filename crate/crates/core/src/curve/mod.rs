//! The elliptic curve attached to `a2·a6 + 1 = □` at a fixed `u`, and sextuples from
//! combinations of its distinguished points.

pub mod quartic;
pub mod weierstrass;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use quartic::{build_quartic, proportionality, QuarticModel, QuarticPoint};
pub use weierstrass::{
    add_points, quartic_to_weierstrass, CurvePoint, ShortCurve, WeierstrassCurve,
};

use crate::error::{Error, Result};
use crate::param::{self, FamilyParams};
use crate::rational::Rational;
use crate::record::Tag;
use crate::tuple::{classify_structure, verify_tuple, DioTuple, StructureProfile};

/// Which square root of `q(τ)` the point `P2` is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];
}

/// Quartic, curve and the points `P1`, `P2` for one `u`.
#[derive(Debug, Clone)]
pub struct CurveSetup {
    pub u: Rational,
    pub curve: WeierstrassCurve,
    pub p1: CurvePoint,
    /// `P2` from `(τ, +z)` and from `(τ, −z)`.
    pub p2: [CurvePoint; 2],
}

impl CurveSetup {
    pub fn new(u: &Rational) -> Result<Self> {
        let model = build_quartic(u)?;
        let (tau, z) = model.known_point().cloned().ok_or(Error::NoKnownPoint)?;
        let curve = quartic_to_weierstrass(&model)?;
        let p1 = curve.p1();
        let plus = curve.forward(&QuarticPoint::Affine {
            t: tau.clone(),
            z: z.clone(),
        })?;
        let minus = curve.forward(&QuarticPoint::Affine { t: tau, z: -z })?;
        Ok(CurveSetup {
            u: u.clone(),
            curve,
            p1,
            p2: [plus, minus],
        })
    }

    pub fn p2(&self, branch: Branch) -> &CurvePoint {
        match branch {
            Branch::Plus => &self.p2[0],
            Branch::Minus => &self.p2[1],
        }
    }

    /// `m·P1 + n·P2`.
    pub fn combination(&self, m: i64, n: i64, branch: Branch) -> CurvePoint {
        let e = self.curve.curve();
        e.add(&e.mul(m, &self.p1), &e.mul(n, self.p2(branch)))
    }

    /// Abscissae on the quartic of `2·P2`, one per branch.
    pub fn two_p2_abscissae(&self) -> Vec<Rational> {
        Branch::BOTH
            .iter()
            .filter_map(|&b| self.curve.t_of(&self.combination(0, 2, b)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCandidate {
    pub branch: Branch,
    pub point: CurvePoint,
    pub t1: Option<Rational>,
    pub tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elements: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub profile: Option<StructureProfile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub u: Rational,
    pub m: i64,
    pub n: i64,
    pub tag: Tag,
    pub candidates: Vec<BranchCandidate>,
}

impl CandidateRecord {
    pub fn t1_candidates(&self) -> impl Iterator<Item = &Rational> {
        self.candidates.iter().filter_map(|c| c.t1.as_ref())
    }

    pub fn valid(&self) -> impl Iterator<Item = &BranchCandidate> {
        self.candidates.iter().filter(|c| c.tag == Tag::Valid)
    }
}

/// Runs the sextuple pipeline at `(u, t1)`.
pub fn evaluate_t1(
    u: &Rational,
    t1: &Rational,
) -> (
    Tag,
    Option<String>,
    Option<Vec<Rational>>,
    Option<StructureProfile>,
) {
    let values = match param::sextuple_from(&FamilyParams::new(u.clone(), t1.clone())) {
        Ok(v) => v,
        Err(e) => return (Tag::Degenerate, Some(e.to_string()), None, None),
    };
    match verify_tuple(&values).ok().and_then(|r| r.tuple()) {
        Some(t) if t.is_diophantine() => {
            let profile = classify_structure(&t);
            (Tag::Valid, None, Some(values.to_vec()), Some(profile))
        }
        _ => {
            let failing = verify_tuple(&values)
                .map(|r| {
                    r.failing_pairs()
                        .map(|p| format!("({},{})", p.i + 1, p.j + 1))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default();
            (
                Tag::NotSextuple,
                Some(format!("failing pairs {failing}")),
                Some(values.to_vec()),
                None,
            )
        }
    }
}

fn candidate(setup: &CurveSetup, branch: Branch, point: CurvePoint) -> BranchCandidate {
    let t1 = match setup.curve.inverse(&point) {
        Some(QuarticPoint::Affine { t, .. }) => t,
        Some(QuarticPoint::Infinity { .. }) | None => {
            return BranchCandidate {
                branch,
                point,
                t1: None,
                tag: Tag::Degenerate,
                reason: Some("no affine point on the quartic".into()),
                elements: None,
                profile: None,
            }
        }
    };
    let (tag, reason, elements, profile) = evaluate_t1(&setup.u, &t1);
    BranchCandidate {
        branch,
        point,
        t1: Some(t1),
        tag,
        reason,
        elements,
        profile,
    }
}

fn overall(candidates: &[BranchCandidate]) -> Tag {
    if candidates.iter().any(|c| c.tag == Tag::NotSextuple) {
        Tag::NotSextuple
    } else if candidates.iter().any(|c| c.tag == Tag::Valid) {
        Tag::Valid
    } else {
        Tag::Degenerate
    }
}

/// One record per `(m, n)` with `|m|, |n| ≤ bound`, ordered by `m` then `n`.
pub fn generate_sextuples(u: &Rational, bound: u32) -> Result<Vec<CandidateRecord>> {
    let setup = CurveSetup::new(u)?;
    Ok(generate_from(&setup, bound))
}

pub fn generate_from(setup: &CurveSetup, bound: u32) -> Vec<CandidateRecord> {
    let e = setup.curve.curve();
    let b = i64::from(bound);
    let range: Vec<i64> = (-b..=b).collect();
    let p1_mult: Vec<CurvePoint> = range.iter().map(|&m| e.mul(m, &setup.p1)).collect();
    let p2_mult: Vec<[CurvePoint; 2]> = range
        .iter()
        .map(|&n| Branch::BOTH.map(|br| e.mul(n, setup.p2(br))))
        .collect();
    let grid: Vec<(usize, usize)> = (0..range.len())
        .flat_map(|i| (0..range.len()).map(move |j| (i, j)))
        .collect();
    grid.par_iter()
        .map(|&(i, j)| {
            let candidates: Vec<BranchCandidate> = Branch::BOTH
                .iter()
                .enumerate()
                .map(|(k, &br)| candidate(setup, br, e.add(&p1_mult[i], &p2_mult[j][k])))
                .collect();
            CandidateRecord {
                u: setup.u.clone(),
                m: range[i],
                n: range[j],
                tag: overall(&candidates),
                candidates,
            }
        })
        .collect()
}

/// Checks a persisted candidate: VALID elements must still verify.
pub fn reverify_candidate(c: &BranchCandidate) -> bool {
    match (&c.tag, &c.elements) {
        (Tag::Valid, Some(values)) => DioTuple::new(values)
            .map(|t| t.is_diophantine())
            .unwrap_or(false),
        (Tag::Valid, None) => false,
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn two_p2_gives_the_family_parameter() {
        for u in [q(-1, 1), q(3, 1), q(1, 2), q(-3, 7)] {
            let setup = CurveSetup::new(&u).unwrap();
            let target = param::t1_of_u(&u).unwrap();
            assert!(setup.two_p2_abscissae().contains(&target), "u = {u}");
        }
    }

    #[test]
    fn p1_is_finite_and_on_curve() {
        let setup = CurveSetup::new(&q(-1, 1)).unwrap();
        assert!(!setup.p1.is_infinity());
        assert!(setup.curve.curve().contains(&setup.p1));
        for p in &setup.p2 {
            assert!(setup.curve.curve().contains(p));
        }
    }

    #[test]
    fn combinations_at_minus_one() {
        let records = generate_sextuples(&q(-1, 1), 2).unwrap();
        assert_eq!(records.len(), 25);
        let at = |m: i64, n: i64| records.iter().find(|r| r.m == m && r.n == n).unwrap();

        let origin = at(0, 0);
        assert_eq!(origin.tag, Tag::Degenerate);
        assert!(origin.t1_candidates().next().is_none());

        let one = at(0, 1);
        assert_eq!(one.tag, Tag::Degenerate);
        assert!(one.t1_candidates().all(|t| t == &q(9, 14)));
        assert!(one
            .candidates
            .iter()
            .all(|c| c.reason.as_deref().unwrap().contains("a6 = 0")));

        let two = at(0, 2);
        assert_eq!(two.tag, Tag::Valid);
        assert!(two.t1_candidates().any(|t| t == &q(-225, 532)));
        let paper = param::sextuple_of_u(&q(-1, 1)).unwrap();
        let hit = two.valid().find(|c| c.t1 == Some(q(-225, 532))).unwrap();
        assert_eq!(hit.elements.as_deref().unwrap(), &paper[..]);

        assert!(records.iter().all(|r| r.tag != Tag::NotSextuple));
        assert!(records
            .iter()
            .flat_map(|r| &r.candidates)
            .all(reverify_candidate));
    }

    #[test]
    fn poles_propagate() {
        assert!(matches!(
            generate_sextuples(&q(4, 1), 1),
            Err(Error::PoleParameter(_))
        ));
    }
}
