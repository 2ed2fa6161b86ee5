//! The quartic `z² = q(t1)` expressing that `a2·a6 + 1` is a square, derived by
//! polynomial arithmetic in `t1` for a fixed rational `u`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::param::{self, formulas};
use crate::poly::{Poly, Ring};
use crate::rational::Rational;

/// A rational point of a quartic model, possibly one of the two points at infinity
/// of its desingularization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuarticPoint {
    Affine {
        t: Rational,
        z: Rational,
    },
    /// Limit of `z/t²`; one of the two square roots of the leading coefficient.
    Infinity {
        lead_root: Rational,
    },
}

/// How the quartic was obtained from `a2·a6 + 1`: with `D` the cleared denominator
/// and `R` the removed square root, `(a2·a6 + 1)·D² = q·R²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub u: Rational,
    pub cleared_denominator: Poly,
    pub root_factor: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticModel {
    coeffs: [Rational; 5],
    known_point: Option<(Rational, Rational)>,
    normalization: Option<Normalization>,
}

impl QuarticModel {
    /// `coeffs` are `c0..c4`. `c4` must be nonzero; `known_point`, if given, must
    /// lie on the quartic.
    pub fn new(coeffs: [Rational; 5], known_point: Option<(Rational, Rational)>) -> Result<Self> {
        if coeffs[4].is_zero() {
            return Err(Error::DegenerateQuartic(
                Poly::new(coeffs.to_vec()).degree().unwrap_or(0),
            ));
        }
        let model = QuarticModel {
            coeffs,
            known_point: None,
            normalization: None,
        };
        if let Some((t, z)) = &known_point {
            if !model.contains_affine(t, z) {
                return Err(Error::NotOnCurve);
            }
        }
        Ok(QuarticModel {
            known_point,
            ..model
        })
    }

    pub fn coeffs(&self) -> &[Rational; 5] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rational {
        &self.coeffs[4]
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.coeffs.to_vec())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn contains_affine(&self, t: &Rational, z: &Rational) -> bool {
        z.square() == self.eval(t)
    }

    pub fn contains(&self, p: &QuarticPoint) -> bool {
        match p {
            QuarticPoint::Affine { t, z } => self.contains_affine(t, z),
            QuarticPoint::Infinity { lead_root } => &lead_root.square() == self.leading(),
        }
    }

    /// The nonnegative `z` over `t`, when `q(t)` is a rational square.
    pub fn z_at(&self, t: &Rational) -> Option<Rational> {
        self.eval(t).sqrt_exact()
    }

    pub fn known_point(&self) -> Option<&(Rational, Rational)> {
        self.known_point.as_ref()
    }

    pub fn normalization(&self) -> Option<&Normalization> {
        self.normalization.as_ref()
    }
}

/// `a2(t1)` and `a6(t1)` as `(numerator, denominator)` polynomials for fixed `u`.
pub fn a2_a6_polys(u: &Rational) -> Result<((Poly, Poly), (Poly, Poly))> {
    let (t2, t3) = param::params_from_u(u)?;
    let x = Poly::x();
    let (nums, den) = formulas::lasic(&x, &Poly::constant(&t2), &Poly::constant(&t3));
    let [_, a2_num, _] = nums;
    let a6 = formulas::a6(u, &x);
    Ok(((a2_num, den), a6))
}

/// Builds the quartic for `a2·a6 + 1 = □`, normalized to be monic.
pub fn build_quartic(u: &Rational) -> Result<QuarticModel> {
    let ((n2, d2), (n6, d6)) = a2_a6_polys(u)?;
    let denominator = d2 * d6;
    if denominator.is_zero() {
        return Err(Error::PoleParameter(format!(
            "u = {u}: a2 or a6 has no finite value"
        )));
    }
    let numerator = n2 * n6 + denominator.clone();
    let cleared = numerator * denominator.clone();
    if cleared.is_zero() {
        return Err(Error::DegenerateQuartic(0));
    }
    let (odd, root) = cleared.split_square_part();
    let degree = odd.degree().unwrap_or(0);
    if degree != 4 {
        return Err(Error::DegenerateQuartic(degree));
    }
    let lead = cleared.leading();
    let lead_root = lead
        .sqrt_exact()
        .ok_or_else(|| Error::NonSquareLeadingCoefficient(lead.clone()))?;
    let coeffs: [Rational; 5] = std::array::from_fn(|i| odd.coeff(i));
    let normalization = Normalization {
        u: u.clone(),
        cleared_denominator: denominator,
        root_factor: root.scale(&lead_root),
    };
    let mut model = QuarticModel {
        coeffs,
        known_point: None,
        normalization: Some(normalization),
    };
    if let Ok(tau) = param::p2_abscissa(u) {
        if let Some(z) = model.z_at(&tau) {
            model.known_point = Some((tau, z));
        }
    }
    Ok(model)
}

/// Checks whether two coefficient vectors differ by a nonzero rational square
/// factor. Returns the factor `λ` with `a = λ·b` when they are proportional.
pub fn proportionality(a: &[Rational], b: &[Rational]) -> Option<Rational> {
    if a.len() != b.len() {
        return None;
    }
    let (i, pivot) = b.iter().enumerate().find(|(_, c)| !c.is_zero())?;
    let lambda = &a[i] / pivot;
    if lambda.is_zero() {
        return None;
    }
    a.iter()
        .zip(b)
        .all(|(x, y)| x == &(&lambda * y))
        .then_some(lambda)
}
