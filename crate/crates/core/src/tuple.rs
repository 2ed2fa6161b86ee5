//! Diophantine-property verification, regularity predicates, regular extensions and
//! structure classification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{solve_quadratic, Rational};

/// Outcome of checking one pair `(i, j)`, `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub product_plus_one: Rational,
    /// Nonnegative square root of `product_plus_one`, when it exists.
    pub witness: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "issue", rename_all = "snake_case")]
pub enum ElementIssue {
    Zero { index: usize },
    Duplicate { first: usize, second: usize },
}

impl From<&ElementIssue> for Error {
    fn from(issue: &ElementIssue) -> Error {
        match *issue {
            ElementIssue::Zero { index } => Error::DegenerateElement { index },
            ElementIssue::Duplicate { first, second } => Error::DuplicateElement { first, second },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub elements: Vec<Rational>,
    pub pairs: Vec<PairCheck>,
    pub issues: Vec<ElementIssue>,
}

impl VerificationReport {
    pub fn is_diophantine(&self) -> bool {
        self.issues.is_empty() && self.pairs.iter().all(|p| p.witness.is_some())
    }

    pub fn failing_pairs(&self) -> impl Iterator<Item = &PairCheck> {
        self.pairs.iter().filter(|p| p.witness.is_none())
    }

    /// The checked tuple, if the elements are admissible (nonzero and distinct).
    pub fn tuple(&self) -> Option<DioTuple> {
        if !self.issues.is_empty() {
            return None;
        }
        Some(DioTuple {
            elements: self.elements.clone(),
            witnesses: self.pairs.iter().map(|p| p.witness.clone()).collect(),
        })
    }
}

/// Checks every pair of `values`. Zero and repeated elements are recorded as issues
/// and the pairwise checks still run over everything.
pub fn verify_tuple(values: &[Rational]) -> Result<VerificationReport> {
    if values.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let mut issues = Vec::new();
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            issues.push(ElementIssue::Zero { index: i });
        }
    }
    let mut pairs = Vec::with_capacity(values.len() * (values.len() - 1) / 2);
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                issues.push(ElementIssue::Duplicate {
                    first: i,
                    second: j,
                });
            }
            let product_plus_one = &values[i] * &values[j] + Rational::one();
            let witness = product_plus_one.sqrt_exact();
            pairs.push(PairCheck {
                i,
                j,
                product_plus_one,
                witness,
            });
        }
    }
    Ok(VerificationReport {
        elements: values.to_vec(),
        pairs,
        issues,
    })
}

/// Nonzero, pairwise distinct rationals together with their pairwise square witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DioTuple {
    elements: Vec<Rational>,
    // Row-major over pairs i < j, same order as `VerificationReport::pairs`.
    witnesses: Vec<Option<Rational>>,
}

impl DioTuple {
    pub fn new(values: &[Rational]) -> Result<DioTuple> {
        let report = verify_tuple(values)?;
        if let Some(issue) = report.issues.first() {
            return Err(issue.into());
        }
        Ok(report.tuple().expect("no issues"))
    }

    pub fn elements(&self) -> &[Rational] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn witness(&self, i: usize, j: usize) -> Option<&Rational> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let n = self.elements.len();
        if i == j || j >= n {
            return None;
        }
        let idx = i * (2 * n - i - 1) / 2 + (j - i - 1);
        self.witnesses[idx].as_ref()
    }

    pub fn is_diophantine(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }

    /// Equality as sets.
    pub fn set_eq(&self, other: &[Rational]) -> bool {
        set_eq(&self.elements, other)
    }

    /// `max` of the element heights.
    pub fn height(&self) -> num_bigint::BigUint {
        self.elements
            .iter()
            .map(Rational::height)
            .max()
            .unwrap_or_default()
    }
}

pub fn set_eq(a: &[Rational], b: &[Rational]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a.dedup();
    b.dedup();
    a == b
}

/// `r, s, t` with `r² = ab+1`, `s² = ac+1`, `t² = bc+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSqrtData {
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl TripleSqrtData {
    /// Nonnegative witnesses, if `(a, b, c)` has the Diophantine property.
    pub fn of(a: &Rational, b: &Rational, c: &Rational) -> Option<TripleSqrtData> {
        let one = Rational::one();
        Some(TripleSqrtData {
            r: (a * b + &one).sqrt_exact()?,
            s: (a * c + &one).sqrt_exact()?,
            t: (b * c + &one).sqrt_exact()?,
        })
    }
}

/// `a²+b²+c²+d² − 2(ab+ac+ad+bc+bd+cd) − 4abcd − 4`, which vanishes exactly when
/// `(a+b−c−d)² = 4(ab+1)(cd+1)`, for any ordering of the arguments.
pub fn regular_quadruple_form(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
    let squares = a.square() + b.square() + c.square() + d.square();
    let pairs = a * b + a * c + a * d + b * c + b * d + c * d;
    squares - Rational::from(2) * pairs - Rational::from(4) * a * b * c * d - Rational::from(4)
}

pub fn is_regular_quadruple(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> bool {
    regular_quadruple_form(a, b, c, d).is_zero()
}

/// The quintuple condition for the role split `{a, b, c} | {d, e}`:
/// `(abcde + 2abc + a + b + c − d − e)² = 4(ab+1)(ac+1)(bc+1)(de+1)`.
pub fn quintuple_condition(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    e: &Rational,
) -> bool {
    let one = Rational::one();
    let abc = a * b * c;
    let lhs = (&abc * d * e + Rational::from(2) * &abc + a + b + c - d - e).square();
    let rhs = Rational::from(4) * (a * b + &one) * (a * c + &one) * (b * c + &one) * (d * e + &one);
    lhs == rhs
}

/// All ten choices of the `{d, e}` pair, as index pairs into a 5-element slice.
pub const QUINTUPLE_SPLITS: [[usize; 2]; 10] = [
    [0, 1],
    [0, 2],
    [0, 3],
    [0, 4],
    [1, 2],
    [1, 3],
    [1, 4],
    [2, 3],
    [2, 4],
    [3, 4],
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuintupleRegularity {
    pub holds: bool,
    /// Index pairs (into the quintuple) playing the `{d, e}` role for which the
    /// condition holds.
    pub splits: Vec<[usize; 2]>,
}

/// Tests the quintuple condition for one `{d, e}` split, or for all ten when
/// `split` is `None`.
pub fn is_regular_quintuple(
    values: &[Rational; 5],
    split: Option<[usize; 2]>,
) -> QuintupleRegularity {
    let candidates: Vec<[usize; 2]> = match split {
        Some(s) => vec![s],
        None => QUINTUPLE_SPLITS.to_vec(),
    };
    let splits: Vec<[usize; 2]> = candidates
        .into_iter()
        .filter(|&[d, e]| {
            if d == e || d >= 5 || e >= 5 {
                return false;
            }
            let abc: Vec<usize> = (0..5).filter(|&k| k != d && k != e).collect();
            quintuple_condition(
                &values[abc[0]],
                &values[abc[1]],
                &values[abc[2]],
                &values[d],
                &values[e],
            )
        })
        .collect();
    QuintupleRegularity {
        holds: !splits.is_empty(),
        splits,
    }
}

/// Both roots `(d₊, d₋)` of `(a+b−c−x)² − 4(ab+1)(cx+1) = 0`. Roots are never filtered;
/// a double root is returned twice.
pub fn extend_triple_regular(a: &Rational, b: &Rational, c: &Rational) -> Result<[Rational; 2]> {
    let one = Rational::one();
    let k = a + b - c;
    let ab1 = a * b + &one;
    // x² − (2k + 4c(ab+1)) x + k² − 4(ab+1)
    let lin = -(Rational::from(2) * &k + Rational::from(4) * c * &ab1);
    let cst = k.square() - Rational::from(4) * &ab1;
    roots_pair(&one, &lin, &cst)
}

/// Both roots of `(abcd·x + 2abc + a + b + c − d − x)² − 4(ab+1)(ac+1)(bc+1)(dx+1) = 0`.
pub fn extend_quadruple_regular(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<[Rational; 2]> {
    let (lead, lin, cst) = quadruple_extension_coefficients(a, b, c, d);
    if lead.is_zero() {
        let root = solve_quadratic(&lead, &lin, &cst)
            .ok()
            .and_then(|r| r.into_iter().next());
        return Err(Error::DegenerateLeadingCoefficient { root });
    }
    roots_pair(&lead, &lin, &cst)
}

/// Coefficients `(A, B, C)` of the quintuple-extension quadratic in `x`.
pub fn quadruple_extension_coefficients(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> (Rational, Rational, Rational) {
    let one = Rational::one();
    let abc = a * b * c;
    let p_minus_one = &abc * d - &one;
    let k = Rational::from(2) * &abc + a + b + c - d;
    let m = Rational::from(4) * (a * b + &one) * (a * c + &one) * (b * c + &one);
    let lead = p_minus_one.square();
    let lin = Rational::from(2) * &k * &p_minus_one - &m * d;
    let cst = k.square() - m;
    (lead, lin, cst)
}

fn roots_pair(a: &Rational, b: &Rational, c: &Rational) -> Result<[Rational; 2]> {
    let disc = b * b - Rational::from(4) * a * c;
    let root = disc.sqrt_exact().ok_or(Error::NotASquareDiscriminant)?;
    let two_a = Rational::from(2) * a;
    Ok([(-b + &root) / &two_a, (-b - &root) / &two_a])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuintupleHit {
    pub indices: [usize; 5],
    /// Element indices (into the whole tuple) of each satisfying `{d, e}` pair.
    pub splits: Vec<[usize; 2]>,
}

/// Regular sub-quadruples and sub-quintuples of a tuple, by 0-based element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureProfile {
    pub regular_quadruples: Vec<[usize; 4]>,
    pub regular_quintuples: Vec<QuintupleHit>,
    pub is_diophantine: bool,
}

impl StructureProfile {
    /// `(number of regular quadruples, number of regular quintuples)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.regular_quadruples.len(), self.regular_quintuples.len())
    }

    pub fn has_quadruple(&self, idx: [usize; 4]) -> bool {
        let mut idx = idx;
        idx.sort_unstable();
        self.regular_quadruples.contains(&idx)
    }

    pub fn has_quintuple(&self, idx: [usize; 5]) -> bool {
        let mut idx = idx;
        idx.sort_unstable();
        self.regular_quintuples.iter().any(|h| h.indices == idx)
    }
}

pub fn classify_structure(t: &DioTuple) -> StructureProfile {
    let mut profile = classify_elements(t.elements());
    profile.is_diophantine = t.is_diophantine();
    profile
}

/// Exhaustive subset scan over an arbitrary slice. `is_diophantine` is computed
/// from scratch.
pub fn classify_elements(values: &[Rational]) -> StructureProfile {
    let n = values.len();
    let mut regular_quadruples = Vec::new();
    for idx in combinations::<4>(n) {
        if is_regular_quadruple(
            &values[idx[0]],
            &values[idx[1]],
            &values[idx[2]],
            &values[idx[3]],
        ) {
            regular_quadruples.push(idx);
        }
    }
    let mut regular_quintuples = Vec::new();
    for idx in combinations::<5>(n) {
        let sub: [Rational; 5] = idx.map(|k| values[k].clone());
        let check = is_regular_quintuple(&sub, None);
        if check.holds {
            let splits = check
                .splits
                .iter()
                .map(|&[d, e]| [idx[d], idx[e]])
                .collect();
            regular_quintuples.push(QuintupleHit {
                indices: idx,
                splits,
            });
        }
    }
    let is_diophantine = verify_tuple(values)
        .map(|r| r.is_diophantine())
        .unwrap_or(false);
    StructureProfile {
        regular_quadruples,
        regular_quintuples,
        is_diophantine,
    }
}

/// Lexicographic `K`-subsets of `0..n`.
pub fn combinations<const K: usize>(n: usize) -> Vec<[usize; K]> {
    let mut out = Vec::new();
    if K > n {
        return out;
    }
    let mut idx: [usize; K] = std::array::from_fn(|i| i);
    loop {
        out.push(idx);
        let mut i = K;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - K + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..K {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
