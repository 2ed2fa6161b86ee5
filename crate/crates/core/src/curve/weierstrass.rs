//! Short Weierstrass curves over the rationals, and the birational map from a quartic
//! `z² = q(t)` that has a rational point.
//!
//! The map goes through three coordinate systems:
//!
//! 1. the *working* quartic `Z² = α²(X⁴ + bX³ + cX² + dX + e)`. When the leading
//!    coefficient of `q` is a square this is `q` itself (`X = t`); otherwise the known
//!    point `(t0, z0)` is sent to infinity with `X = 1/(t − t0)`, `Z = z·X²`.
//! 2. the long Weierstrass form `y² + a1xy + a3y = x³ + a2x² + a4x + a6` with
//!    `a1 = b`, `a2 = c − b²/4`, `a3 = 2d`, `a4 = −4e`, `a6 = a2·a4`, reached by
//!    `x = 2W + 2X² + bX`, `y = 4WX + 4X³ + 2bX² + 2cX − b²X/2` where `W = Z/α`.
//! 3. the short form `η² = ξ³ + Aξ + B` by completing the square and removing the
//!    quadratic term.
//!
//! The working point at infinity with `W/X² → 1` goes to the identity and the one
//! with `W/X² → −1` goes to the finite point `(−a2, a1·a2 − a3)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::quartic::{QuarticModel, QuarticPoint};
use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// `y² = x³ + a·x + b` with nonzero discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortCurve {
    a: Rational,
    b: Rational,
}

impl ShortCurve {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        let curve = ShortCurve { a, b };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `−16(4a³ + 27b²)`.
    pub fn discriminant(&self) -> Rational {
        Rational::from(-16)
            * (Rational::from(4) * self.a.pow(3) + Rational::from(27) * self.b.square())
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y.square() == x.pow(3) + &self.a * x + &self.b,
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), -y),
        }
    }

    /// Chord-and-tangent addition.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let slope = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return CurvePoint::Infinity;
            }
            (Rational::from(3) * x1.square() + &self.a) / (Rational::from(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = slope.square() - x1 - x2;
        let y3 = &slope * (x1 - &x3) - y1;
        CurvePoint::affine(x3, y3)
    }

    pub fn double(&self, p: &CurvePoint) -> CurvePoint {
        self.add(p, p)
    }

    /// `k·p` by double-and-add; negative `k` uses `−p`.
    pub fn mul(&self, k: i64, p: &CurvePoint) -> CurvePoint {
        let mut base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Chart {
    /// `X = t`.
    Direct,
    /// `X = 1/(t − t0)`, `Z = z·X²`.
    Inverted { t0: Rational },
}

/// A short Weierstrass curve together with the birational maps to and from a quartic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    curve: ShortCurve,
    quartic: QuarticModel,
    chart: Chart,
    /// Square root of the working quartic's leading coefficient.
    alpha: Rational,
    /// Monic working quartic `X⁴ + bX³ + cX² + dX + e`.
    b: Rational,
    c: Rational,
    /// Long-form coefficients `a1, a2, a3, a4`.
    a1: Rational,
    a2: Rational,
    a3: Rational,
    a4: Rational,
    /// `b2/12`: `ξ = x + shift`.
    shift: Rational,
}

/// Working-quartic point, before undoing the chart.
enum Working {
    Affine {
        x: Rational,
        w: Rational,
    },
    /// `W/X² → sign`.
    Infinity {
        positive: bool,
    },
}

pub fn quartic_to_weierstrass(q: &QuarticModel) -> Result<WeierstrassCurve> {
    let (chart, working, alpha) = match q.leading().sqrt_exact() {
        Some(alpha) => (Chart::Direct, q.coeffs().clone(), alpha),
        None => {
            let (t0, z0) = q
                .known_point()
                .ok_or_else(|| Error::NonSquareLeadingCoefficient(q.leading().clone()))?;
            if z0.is_zero() {
                return Err(Error::NonSquareLeadingCoefficient(q.leading().clone()));
            }
            // X⁴·q(t0 + 1/X) = Σ c_k X^(4−k) (t0·X + 1)^k
            let shifted = Poly::new(vec![Rational::one(), t0.clone()]);
            let mut w = Poly::zero();
            for (k, ck) in q.coeffs().iter().enumerate() {
                let term = Ring::pow(&Poly::x(), (4 - k) as u32) * Ring::pow(&shifted, k as u32);
                w = w + term.scale(ck);
            }
            let coeffs = std::array::from_fn(|i| w.coeff(i));
            (Chart::Inverted { t0: t0.clone() }, coeffs, z0.abs())
        }
    };
    let lead = alpha.square();
    let [e, d, c, b, _] = working.map(|ck| ck / &lead);

    let two = Rational::from(2);
    let four = Rational::from(4);
    let a1 = b.clone();
    let a2 = &c - b.square() / &four;
    let a3 = &two * &d;
    let a4 = -(&four) * &e;
    let a6 = &a2 * &a4;

    let b2 = a1.square() + &four * &a2;
    let b4 = &two * &a4 + &a1 * &a3;
    let b6 = a3.square() + &four * &a6;
    let a = &b4 / &two - b2.square() / Rational::from(48);
    let bb = &b6 / &four - &b2 * &b4 / Rational::from(24) + b2.pow(3) / Rational::from(864);
    let curve = ShortCurve::new(a, bb)?;
    let shift = &b2 / Rational::from(12);
    Ok(WeierstrassCurve {
        curve,
        quartic: q.clone(),
        chart,
        alpha,
        b,
        c,
        a1,
        a2,
        a3,
        a4,
        shift,
    })
}

impl WeierstrassCurve {
    pub fn curve(&self) -> &ShortCurve {
        &self.curve
    }

    pub fn quartic(&self) -> &QuarticModel {
        &self.quartic
    }

    fn long_to_short(&self, x: Rational, y: Rational) -> CurvePoint {
        let eta = &y + (&self.a1 * &x + &self.a3) / Rational::from(2);
        CurvePoint::affine(x + &self.shift, eta)
    }

    fn short_to_long(&self, xi: &Rational, eta: &Rational) -> (Rational, Rational) {
        let x = xi - &self.shift;
        let y = eta - (&self.a1 * &x + &self.a3) / Rational::from(2);
        (x, y)
    }

    fn working_to_curve(&self, p: Working) -> CurvePoint {
        match p {
            Working::Infinity { positive: true } => CurvePoint::Infinity,
            Working::Infinity { positive: false } => {
                let y = &self.a1 * &self.a2 - &self.a3;
                self.long_to_short(-&self.a2, y)
            }
            Working::Affine { x: t, w } => {
                let two = Rational::from(2);
                let four = Rational::from(4);
                let x = &two * &w + &two * t.square() + &self.b * &t;
                let y = &four * &w * &t
                    + &four * t.pow(3)
                    + &two * &self.b * t.square()
                    + &two * &self.c * &t
                    - self.b.square() * &t / &two;
                self.long_to_short(x, y)
            }
        }
    }

    fn curve_to_working(&self, p: &CurvePoint) -> Option<Working> {
        let CurvePoint::Affine { x: xi, y: eta } = p else {
            return Some(Working::Infinity { positive: true });
        };
        let (x, y) = self.short_to_long(xi, eta);
        let two = Rational::from(2);
        let x_plus_a2 = &x + &self.a2;
        let t = if !x_plus_a2.is_zero() {
            &y / (&two * &x_plus_a2)
        } else {
            if y == &self.a1 * &self.a2 - &self.a3 {
                return Some(Working::Infinity { positive: false });
            }
            // y·(y + a1x + a3) = (x + a2)(x² + a4) on the curve
            let den = &y + &self.a1 * &x + &self.a3;
            (x.square() + &self.a4).checked_div(&(&two * den))?
        };
        let w = (&x - &self.b * &t) / &two - t.square();
        Some(Working::Affine { x: t, w })
    }

    /// Image of a quartic point. Fails if the point is not on the quartic.
    pub fn forward(&self, p: &QuarticPoint) -> Result<CurvePoint> {
        if !self.quartic.contains(p) {
            return Err(Error::NotOnCurve);
        }
        let working = match (&self.chart, p) {
            (Chart::Direct, QuarticPoint::Affine { t, z }) => Working::Affine {
                x: t.clone(),
                w: z / &self.alpha,
            },
            (Chart::Direct, QuarticPoint::Infinity { lead_root }) => Working::Infinity {
                positive: lead_root == &self.alpha,
            },
            (Chart::Inverted { t0 }, QuarticPoint::Affine { t, z }) => match (t - t0).recip() {
                None => Working::Infinity {
                    positive: z == &self.alpha,
                },
                Some(x) => {
                    let w = z * x.square() / &self.alpha;
                    Working::Affine { x, w }
                }
            },
            (Chart::Inverted { .. }, QuarticPoint::Infinity { lead_root }) => Working::Affine {
                x: Rational::zero(),
                w: lead_root / &self.alpha,
            },
        };
        Ok(self.working_to_curve(working))
    }

    /// Quartic point mapping to `p`, where the inverse map is defined.
    pub fn inverse(&self, p: &CurvePoint) -> Option<QuarticPoint> {
        let working = self.curve_to_working(p)?;
        let point = match (&self.chart, working) {
            (Chart::Direct, Working::Affine { x, w }) => QuarticPoint::Affine {
                t: x,
                z: w * &self.alpha,
            },
            (Chart::Direct, Working::Infinity { positive }) => QuarticPoint::Infinity {
                lead_root: if positive {
                    self.alpha.clone()
                } else {
                    -&self.alpha
                },
            },
            (Chart::Inverted { t0 }, Working::Affine { x, w }) => match x.recip() {
                Some(inv) => QuarticPoint::Affine {
                    t: t0 + &inv,
                    z: w * &self.alpha * inv.square(),
                },
                None => QuarticPoint::Infinity {
                    lead_root: w * &self.alpha,
                },
            },
            (Chart::Inverted { t0 }, Working::Infinity { positive }) => QuarticPoint::Affine {
                t: t0.clone(),
                z: if positive {
                    self.alpha.clone()
                } else {
                    -&self.alpha
                },
            },
        };
        Some(point)
    }

    /// `t` coordinate of the affine quartic point over `p`, if there is one.
    pub fn t_of(&self, p: &CurvePoint) -> Option<Rational> {
        match self.inverse(p)? {
            QuarticPoint::Affine { t, .. } => Some(t),
            QuarticPoint::Infinity { .. } => None,
        }
    }

    /// Image of the second point at infinity of the working quartic (the first goes
    /// to the identity). With a square leading coefficient this is the quartic's own
    /// point at infinity with `z/t² → −√c4`.
    pub fn p1(&self) -> CurvePoint {
        self.working_to_curve(Working::Infinity { positive: false })
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.curve.add(p, q)
    }
}

/// Group law on the curve of a quartic model.
pub fn add_points(c: &WeierstrassCurve, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    c.add(p, q)
}
