//! Triple parametrization, the regular-pair closed forms, the `u`-substitution and the
//! two-parameter quintuple / one-parameter sextuple families.

pub mod formulas;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TripleParams {
    pub t1: Rational,
    pub t2: Rational,
    pub t3: Rational,
}

impl TripleParams {
    pub fn new(t1: Rational, t2: Rational, t3: Rational) -> Self {
        TripleParams { t1, t2, t3 }
    }

    fn check_denominator(&self) -> Result<()> {
        let p = &self.t1 * &self.t2 * &self.t3;
        if p == 1 || p == -1 {
            return Err(Error::DegenerateDenominator(format!("t1*t2*t3 = {p}")));
        }
        Ok(())
    }
}

/// `u` and, optionally, `t1`; a missing `t1` means the one-parameter choice
/// [`t1_of_u`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub u: Rational,
    pub t1: Option<Rational>,
}

impl FamilyParams {
    pub fn new(u: Rational, t1: Rational) -> Self {
        FamilyParams { u, t1: Some(t1) }
    }

    pub fn one_parameter(u: Rational) -> Self {
        FamilyParams { u, t1: None }
    }

    pub fn resolved_t1(&self) -> Result<Rational> {
        match &self.t1 {
            Some(t1) => Ok(t1.clone()),
            None => t1_of_u(&self.u),
        }
    }
}

fn ratio(num: Rational, den: Rational, what: impl FnOnce() -> Error) -> Result<Rational> {
    num.checked_div(&den).ok_or_else(what)
}

/// Lasić map without admissibility checks on the output.
pub fn lasic_values(p: &TripleParams) -> Result<[Rational; 3]> {
    p.check_denominator()?;
    let (nums, den) = formulas::lasic(&p.t1, &p.t2, &p.t3);
    Ok(nums.map(|n| n / &den))
}

/// The Lasić triple, rejecting zero or coinciding elements.
pub fn lasic_triple(p: &TripleParams) -> Result<[Rational; 3]> {
    let values = lasic_values(p)?;
    first_defect(&values, &["a1", "a2", "a3"])
        .map_or(Ok(()), |d| Err(Error::DegenerateTriple(d)))?;
    Ok(values)
}

/// Recovers Lasić parameters from a triple and chosen square roots
/// `r² = a1a2+1`, `s² = a1a3+1`, `w² = a2a3+1`.
pub fn lasic_inverse(
    a1: &Rational,
    a2: &Rational,
    a3: &Rational,
    r: &Rational,
    s: &Rational,
    w: &Rational,
) -> Result<TripleParams> {
    let one = Rational::one();
    for (name, root, x, y) in [("r", r, a1, a2), ("s", s, a1, a3), ("w", w, a2, a3)] {
        if root.square() != x * y + &one {
            return Err(Error::InvalidWitness(format!("{name} = {root}")));
        }
    }
    if a1.is_zero() {
        return Err(Error::DegenerateTriple("a1 = 0".into()));
    }
    if r.is_one() {
        return Err(Error::SignChoiceDegenerate("r = 1".into()));
    }
    if s.is_one() {
        return Err(Error::SignChoiceDegenerate("s = 1".into()));
    }
    let t = (w - &one) / (s - &one);
    if t.is_one() {
        return Err(Error::SignChoiceDegenerate("t = 1".into()));
    }
    let k = &one - r.square() + a1.square() * t.square();
    if k.is_zero() {
        return Err(Error::DegenerateDenominator(
            "1 - r^2 + a1^2 t^2 = 0".into(),
        ));
    }
    let two = Rational::from(2);
    Ok(TripleParams {
        t1: a1 / (r - &one),
        t2: -(&k) / (&two * (&t - &one) * a1),
        t3: &two * a1 * &t * (&t - &one) / &k,
    })
}

/// `(a4, a5)`: the two regular extensions of the Lasić triple, in closed form.
pub fn regular_pair_from_params(p: &TripleParams) -> Result<[Rational; 2]> {
    p.check_denominator()?;
    let [(n4, d4), (n5, d5)] = formulas::regular_pair(&p.t1, &p.t2, &p.t3);
    Ok([n4 / d4, n5 / d5])
}

pub fn p_poly(p: &TripleParams) -> Rational {
    formulas::p_poly(&p.t1, &p.t2, &p.t3)
}

pub fn p1_poly(t2: &Rational, t3: &Rational) -> Rational {
    formulas::p1_poly(t2, t3)
}

/// `(t2, t3)` on the curve `p1 = 0`.
pub fn params_from_u(u: &Rational) -> Result<(Rational, Rational)> {
    let [(n2, d2), (n3, d3)] = formulas::t2_t3_of_u(u);
    let pole = || Error::PoleParameter(format!("u = {u} (u must avoid 0, 4, -4)"));
    Ok((ratio(n2, d2, pole)?, ratio(n3, d3, pole)?))
}

pub fn t1_of_u(u: &Rational) -> Result<Rational> {
    let (num, den) = formulas::t1_of_u(u);
    ratio(num, den, || {
        Error::PoleParameter(format!(
            "u = {u} (t1 needs u != 0, -20 and u^2+10u+16 != 0)"
        ))
    })
}

/// The `t1` at which the sixth element vanishes.
pub fn p2_abscissa(u: &Rational) -> Result<Rational> {
    let (num, den) = formulas::p2_abscissa(u);
    ratio(num, den, || {
        Error::PoleParameter(format!("u = {u} (u^2+10u+16 = 0)"))
    })
}

const LABELS: [&str; 6] = ["a1", "a2", "a3", "a4", "a5", "a6"];

/// First zero element or coincidence, described with the given labels.
fn first_defect(values: &[Rational], labels: &[&str]) -> Option<String> {
    for (v, name) in values.iter().zip(labels) {
        if v.is_zero() {
            return Some(format!("{name} = 0"));
        }
    }
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                return Some(format!("{} = {}", labels[i], labels[j]));
            }
        }
    }
    None
}

fn family_defect(values: &[Rational]) -> Result<()> {
    match first_defect(values, &LABELS[..values.len()]) {
        Some(d) => Err(Error::DegenerateFamily(d)),
        None => Ok(()),
    }
}

/// Lasić triple, regular pair and the `u`-substitution composed, without the
/// admissibility check on the result.
fn quintuple_values(f: &FamilyParams) -> Result<[Rational; 5]> {
    let (t2, t3) = params_from_u(&f.u)?;
    let t1 = f.resolved_t1()?;
    let p = TripleParams::new(t1, t2, t3);
    let as_family = |e: Error| match e {
        Error::DegenerateDenominator(d) => Error::DegenerateFamily(d),
        other => other,
    };
    let [a1, a2, a3] = lasic_values(&p).map_err(as_family)?;
    let [a4, a5] = regular_pair_from_params(&p).map_err(as_family)?;
    Ok([a1, a2, a3, a4, a5])
}

/// `{a1, …, a5}` from the two-parameter family.
pub fn quintuple_from(f: &FamilyParams) -> Result<[Rational; 5]> {
    let values = quintuple_values(f)?;
    family_defect(&values)?;
    Ok(values)
}

/// The closed-form sixth element; may be zero.
pub fn a6_of(f: &FamilyParams) -> Result<Rational> {
    let t1 = f.resolved_t1()?;
    let (num, den) = formulas::a6(&f.u, &t1);
    ratio(num, den, || {
        Error::DegenerateFamily("a6 denominator vanishes".into())
    })
}

/// `{a1, …, a6}` built step by step: quintuple family, then the closed-form `a6`.
pub fn sextuple_from(f: &FamilyParams) -> Result<[Rational; 6]> {
    let [a1, a2, a3, a4, a5] = quintuple_values(f)?;
    let a6 = a6_of(f)?;
    let values = [a1, a2, a3, a4, a5, a6];
    family_defect(&values)?;
    Ok(values)
}

/// The displayed one-parameter family of sextuples.
pub fn sextuple_of_u(u: &Rational) -> Result<[Rational; 6]> {
    for (name, value) in formulas::sextuple_pole_factors(u) {
        if value.is_zero() {
            return Err(Error::DegenerateFamily(format!("{name} = 0 at u = {u}")));
        }
    }
    let values = formulas::sextuple(u).map(|(n, d)| n / d);
    family_defect(&values)?;
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::tuple::{extend_triple_regular, set_eq};

    fn paper_u_minus_one() -> [Rational; 6] {
        [
            q(27900, 17479),
            q(471352, 112365),
            q(261770, 17479),
            q(185535272, 419265),
            q(63737828, 526368735),
            q(79554420, 408480247),
        ]
    }

    #[test]
    fn lasic_small_example() {
        let p = TripleParams::new(q(1, 1), q(2, 1), q(3, 1));
        let [a1, a2, a3] = lasic_triple(&p).unwrap();
        assert_eq!([a1.clone(), a2.clone(), a3], [q(6, 7), q(20, 7), q(12, 7)]);
        assert_eq!(&a1 * &a2 + Rational::one(), q(169, 49));
        let (rn, rd) = formulas::lasic_r(&p.t1, &p.t2, &p.t3);
        assert_eq!(rn / rd, q(13, 7));
    }

    #[test]
    fn lasic_degenerate_inputs() {
        let zero_t1 = TripleParams::new(q(0, 1), q(2, 1), q(3, 1));
        assert!(matches!(lasic_triple(&zero_t1), Err(Error::DegenerateTriple(d)) if d == "a1 = 0"));
        let pole = TripleParams::new(q(1, 2), q(2, 1), q(1, 1));
        assert!(matches!(
            lasic_triple(&pole),
            Err(Error::DegenerateDenominator(_))
        ));
        let neg_pole = TripleParams::new(q(-1, 2), q(2, 1), q(1, 1));
        assert!(matches!(
            lasic_values(&neg_pole),
            Err(Error::DegenerateDenominator(_))
        ));
    }

    #[test]
    fn lasic_inverse_small_example() {
        let (a1, a2, a3) = (q(6, 7), q(20, 7), q(12, 7));
        let p = lasic_inverse(&a1, &a2, &a3, &q(13, 7), &q(11, 7), &q(17, 7)).unwrap();
        assert_eq!(lasic_triple(&p).unwrap(), [a1, a2, a3]);
        // t = (w - 1)/(s - 1) = 10/4
        assert_eq!(-(&p.t2 * &p.t3), q(5, 2));
    }

    #[test]
    fn lasic_inverse_errors() {
        let (a1, a2, a3) = (q(6, 7), q(20, 7), q(12, 7));
        assert!(matches!(
            lasic_inverse(&a1, &a2, &a3, &q(13, 7), &q(11, 7), &q(16, 7)),
            Err(Error::InvalidWitness(_))
        ));
        // r = 1 needs a1 a2 = 0
        let z = Rational::zero();
        let one = Rational::one();
        assert!(matches!(
            lasic_inverse(&q(3, 1), &z, &q(5, 1), &one, &q(4, 1), &one),
            Err(Error::SignChoiceDegenerate(_))
        ));
    }

    #[test]
    fn regular_pair_matches_quadratic_roots() {
        let p = TripleParams::new(q(1, 1), q(2, 1), q(3, 1));
        let pair = regular_pair_from_params(&p).unwrap();
        let roots = extend_triple_regular(&q(6, 7), &q(20, 7), &q(12, 7)).unwrap();
        assert!(set_eq(&pair, &roots));
        assert!(set_eq(&pair, &[q(28, 1), q(-120, 343)]));
    }

    #[test]
    fn a4_vanishes_with_its_factor() {
        // 1 - t3 + t2 t3 = 0 with t3 = 2 needs t2 = 1/2
        let p = TripleParams::new(q(5, 3), q(1, 2), q(2, 1));
        assert!(regular_pair_from_params(&p).unwrap()[0].is_zero());
    }

    #[test]
    fn u_substitution() {
        let (t2, t3) = params_from_u(&q(2, 1)).unwrap();
        assert_eq!((t2.clone(), t3.clone()), (q(-10, 3), q(1, 1)));
        assert!(p1_poly(&t2, &t3).is_zero());
        for bad in [0, 4, -4] {
            assert!(matches!(
                params_from_u(&q(bad, 1)),
                Err(Error::PoleParameter(_))
            ));
        }
    }

    #[test]
    fn t1_of_u_examples() {
        assert_eq!(t1_of_u(&q(-1, 1)).unwrap(), q(-225, 532));
        assert!(matches!(t1_of_u(&q(-20, 1)), Err(Error::PoleParameter(_))));
        assert!(matches!(t1_of_u(&q(0, 1)), Err(Error::PoleParameter(_))));
        assert!(matches!(t1_of_u(&q(-2, 1)), Err(Error::PoleParameter(_))));
    }

    #[test]
    fn family_at_minus_one() {
        let f = FamilyParams::new(q(-1, 1), q(-225, 532));
        let five = quintuple_from(&f).unwrap();
        assert_eq!(five[..], paper_u_minus_one()[..5]);
        assert_eq!(a6_of(&f).unwrap(), paper_u_minus_one()[5]);
        assert_eq!(
            sextuple_from(&FamilyParams::one_parameter(q(-1, 1))).unwrap(),
            paper_u_minus_one()
        );
        assert_eq!(sextuple_of_u(&q(-1, 1)).unwrap(), paper_u_minus_one());
    }

    #[test]
    fn a6_vanishes_at_p2_abscissa() {
        for u in [q(-1, 1), q(3, 1), q(5, 7)] {
            let t1 = p2_abscissa(&u).unwrap();
            assert!(a6_of(&FamilyParams::new(u.clone(), t1.clone()))
                .unwrap()
                .is_zero());
            let f = FamilyParams::new(u, t1);
            assert!(matches!(sextuple_from(&f), Err(Error::DegenerateFamily(d)) if d == "a6 = 0"));
        }
    }

    #[test]
    fn sextuple_poles_are_named() {
        match sextuple_of_u(&q(4, 1)) {
            Err(Error::DegenerateFamily(d)) => assert!(d.starts_with("u-4 = 0")),
            other => panic!("unexpected {other:?}"),
        }
        // u = 0 is not a pole of the display but makes a1 vanish
        assert!(
            matches!(sextuple_of_u(&q(0, 1)), Err(Error::DegenerateFamily(d)) if d == "a1 = 0")
        );
        assert!(
            matches!(sextuple_of_u(&q(-20, 1)), Err(Error::DegenerateFamily(d)) if d == "a2 = 0")
        );
    }
}
