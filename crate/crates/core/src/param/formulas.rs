//! Closed-form rational functions of the construction, transcribed once.
//!
//! Every function returns `(numerator, denominator)` pairs so that callers decide how
//! to treat a vanishing denominator. Functions generic over [`Ring`] are evaluated both
//! at rational points and symbolically in `t1` (see `curve::quartic`). Each formula
//! here has an independent cross-check in the tests (quadratic roots, the regularity
//! predicates, or the step-by-step pipeline).

use crate::poly::Ring;
use crate::rational::Rational;

/// Horner evaluation of an integer-coefficient polynomial, lowest degree first.
pub(crate) fn upoly(u: &Rational, coeffs: &[i64]) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, &c| acc * u + Rational::from(c))
}

fn k<R: Ring>(n: i64) -> R {
    R::int(n)
}

/// Lasić parametrization: numerators of `a1, a2, a3` and their common denominator
/// `(t1t2t3 − 1)(t1t2t3 + 1)`.
pub fn lasic<R: Ring>(t1: &R, t2: &R, t3: &R) -> ([R; 3], R) {
    let one = k::<R>(1);
    let two = k::<R>(2);
    let p = t1.clone() * t2.clone() * t3.clone();
    let den = (p.clone() - one.clone()) * (p + one.clone());
    let term = |x: &R, y: &R, z: &R| {
        two.clone()
            * x.clone()
            * (one.clone() + x.clone() * y.clone() * (one.clone() + y.clone() * z.clone()))
    };
    ([term(t1, t2, t3), term(t2, t3, t1), term(t3, t1, t2)], den)
}

/// Closed-form square root of `a1·a2 + 1` under the Lasić map:
/// `(1 + 2t1t2 + 2t1t2²t3 + t1²t2²t3²) / ((t1t2t3 − 1)(t1t2t3 + 1))`.
pub fn lasic_r(t1: &Rational, t2: &Rational, t3: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let two = Rational::from(2);
    let p = t1 * t2 * t3;
    let num = &one + &two * t1 * t2 + &two * t1 * t2.square() * t3 + p.square();
    let den = (&p - &one) * (&p + &one);
    (num, den)
}

/// The two regular fourth elements `a4, a5` in terms of `(t1, t2, t3)`.
pub fn regular_pair(t1: &Rational, t2: &Rational, t3: &Rational) -> [(Rational, Rational); 2] {
    let one = Rational::one();
    let two = Rational::from(2);
    let p = t1 * t2 * t3;
    let a4_num = -(&two)
        * (&one - t3 + t2 * t3)
        * (t3 * t1 + &one - t1)
        * (-t2 + &one + t1 * t2)
        * (&p - &one);
    let a4_den = (&one + &p).pow(3);
    let a5_num =
        &two * (t3 + t2 * t3 + &one) * (t3 * t1 + t1 + &one) * (&one + t2 + t1 * t2) * (&one + &p);
    let a5_den = (&p - &one).pow(3);
    [(a4_num, a4_den), (a5_num, a5_den)]
}

/// The quartic-in-`t1` condition polynomial `p(t1, t2, t3)` as printed.
pub fn p_poly(t1: &Rational, t2: &Rational, t3: &Rational) -> Rational {
    // Each coefficient of t1^k is a list of (coefficient, power of t2, power of t3).
    const C4: &[(i64, u32, u32)] = &[
        (-8, 3, 3),
        (-8, 2, 2),
        (-3, 4, 4),
        (4, 2, 0),
        (4, 2, 4),
        (4, 4, 2),
        (8, 3, 1),
    ];
    const C3: &[(i64, u32, u32)] = &[
        (8, 2, 1),
        (-16, 1, 2),
        (-8, 3, 2),
        (8, 1, 0),
        (-8, 3, 4),
        (-8, 4, 3),
        (-8, 2, 3),
        (8, 1, 4),
    ];
    const C2: &[(i64, u32, u32)] = &[
        (-8, 0, 2),
        (-8, 2, 0),
        (-8, 1, 1),
        (-8, 3, 3),
        (-8, 2, 4),
        (8, 1, 3),
        (4, 0, 4),
        (4, 0, 0),
        (-18, 2, 2),
        (4, 4, 4),
        (-8, 4, 2),
        (-16, 3, 1),
    ];
    const C1: &[(i64, u32, u32)] = &[
        (8, 4, 3),
        (-8, 2, 1),
        (-16, 2, 3),
        (-8, 1, 2),
        (-8, 1, 0),
        (8, 0, 3),
        (8, 3, 2),
        (-8, 0, 1),
    ];
    const C0: &[(i64, u32, u32)] = &[
        (-3, 0, 0),
        (-8, 1, 1),
        (4, 4, 2),
        (-8, 2, 2),
        (4, 0, 2),
        (4, 2, 0),
        (8, 3, 1),
    ];
    let block = |terms: &[(i64, u32, u32)]| -> Rational {
        terms
            .iter()
            .map(|&(c, i, j)| Rational::from(c) * t2.pow(i) * t3.pow(j))
            .sum()
    };
    [C0, C1, C2, C3, C4]
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, terms| acc * t1 + block(terms))
}

/// `p1(t2, t3) = 3 + 10t2t3 − 3t3² + 3t3²t2²`.
pub fn p1_poly(t2: &Rational, t3: &Rational) -> Rational {
    Rational::from(3) + Rational::from(10) * t2 * t3 - Rational::from(3) * t3.square()
        + Rational::from(3) * t3.square() * t2.square()
}

/// `t3 = (16 − u²)/(6u)`, `t2 = (u² + 10u + 16)/((u − 4)(u + 4))` as
/// `[(t2_num, t2_den), (t3_num, t3_den)]`.
pub fn t2_t3_of_u(u: &Rational) -> [(Rational, Rational); 2] {
    let t2 = (
        upoly(u, &[16, 10, 1]),
        upoly(u, &[-4, 1]) * upoly(u, &[4, 1]),
    );
    let t3 = (upoly(u, &[16, 0, -1]), Rational::from(6) * u);
    [t2, t3]
}

/// The sixth element as a function of `t1` for fixed `u`.
pub fn a6<R: Ring>(u: &Rational, t1: &R) -> (R, R) {
    let c = |coeffs: &[i64]| R::constant(&upoly(u, coeffs));
    let t = t1.clone();
    // t1 (u² + 10u + 16)
    let base = t.clone() * c(&[16, 10, 1]);
    let num = c(&[6])
        * c(&[4, 1])
        * c(&[8, 1])
        * c(&[2, 1])
        * c(&[-4, 1])
        * (base.clone() * R::int(2) + c(&[0, 12, 3]))
        * (base.clone() - c(&[0, 6]))
        * (base.clone() + c(&[0, 6]))
        * (base - c(&[24, 6]));
    let quad = t.clone() * t.clone() * c(&[4096, 15360, 15168, 5920, 948, 60, 1])
        + t * c(&[0, -12288, -7680, 0, 480, 48])
        + c(&[0, 0, -5184, -2592, -324]);
    let den = quad.clone() * quad;
    (num, den)
}

/// The `t1` attached to `2·P2`:
/// `3(3u⁴+40u³+368u²+1280u+1024) / (4(u²+10u+16)(u+20)u)`.
pub fn t1_of_u(u: &Rational) -> (Rational, Rational) {
    let num = Rational::from(3) * upoly(u, &[1024, 1280, 368, 40, 3]);
    let den = Rational::from(4) * upoly(u, &[16, 10, 1]) * upoly(u, &[20, 1]) * u;
    (num, den)
}

/// The `t1` abscissa of `P2`, where the sixth element vanishes:
/// `−3(u+4)u / (2(u²+10u+16))`.
pub fn p2_abscissa(u: &Rational) -> (Rational, Rational) {
    let num = Rational::from(-3) * upoly(u, &[4, 1]) * u;
    let den = Rational::from(2) * upoly(u, &[16, 10, 1]);
    (num, den)
}

/// Denominator factors of the displayed one-parameter sextuple, by name.
pub fn sextuple_pole_factors(u: &Rational) -> Vec<(&'static str, Rational)> {
    vec![
        ("u-4", upoly(u, &[-4, 1])),
        ("u+4", upoly(u, &[4, 1])),
        ("u+2", upoly(u, &[2, 1])),
        ("u+8", upoly(u, &[8, 1])),
        ("3u^3+8u^2+144u+128", upoly(u, &[128, 144, 8, 3])),
        (
            "3u^4+48u^3+528u^2+1280u+1024",
            upoly(u, &[1024, 1280, 528, 48, 3]),
        ),
        (
            "9u^6+576u^5+3680u^4+22272u^3+64768u^2+69632u+16384",
            upoly(u, &[16384, 69632, 64768, 22272, 3680, 576, 9]),
        ),
    ]
}

/// The displayed one-parameter family of sextuples, in display order.
pub fn sextuple(u: &Rational) -> [(Rational, Rational); 6] {
    let p = |coeffs: &[i64]| upoly(u, coeffs);
    let c3 = p(&[128, 144, 8, 3]);
    let q4 = p(&[1024, 1280, 528, 48, 3]);
    let s6 = p(&[16384, 69632, 64768, 22272, 3680, 576, 9]);
    let (um4, up4, up2, up8, up20) = (p(&[-4, 1]), p(&[4, 1]), p(&[2, 1]), p(&[8, 1]), p(&[20, 1]));
    let n = Rational::from;

    let e1 = (
        n(-12) * u * &up4 * p(&[512, 576, 224, 8, 3]) * p(&[256, 256, 28, 3]),
        &up8 * &up2 * &um4 * &c3 * &q4,
    );
    let e2 = (
        n(8) * u * &up20 * p(&[-2048, -2304, -640, 64, 8, 3]) * &up8 * &up2,
        n(3) * &up4 * &um4 * &c3 * &q4,
    );
    let e3 = (
        n(2) * &up4 * &um4 * p(&[393216, 770048, 587776, 226048, 48640, 8096, 776, 39]),
        n(3) * &up8 * &up2 * &c3 * &q4,
    );
    let e4 = (
        n(-8) * p(&[32, 4, 1]) * p(&[-64, -40, 14, 3]) * p(&[384, 112, 8, 9]) * &q4,
        n(3) * &up8 * &up4 * &up2 * &um4 * c3.pow(3),
    );
    let e5 = (
        n(4) * u
            * &up2
            * p(&[48, 48, 17])
            * p(&[-8192, -9216, -2944, -176, 8, 3])
            * &c3
            * up8.square(),
        n(3) * &up4 * &um4 * q4.pow(3),
    );
    let e6 = (
        n(12) * &up2 * &um4 * p(&[8, 5]) * &up4 * p(&[64, 8, 3]) * &c3 * &q4,
        &up8 * s6.square(),
    );
    [e1, e2, e3, e4, e5, e6]
}

/// The printed quartic in `t1` (the doubled plus sign in the cubic coefficient read
/// as a single plus), coefficients of `t1^0 .. t1^4`.
pub fn printed_quartic(u: &Rational) -> [Rational; 5] {
    let p = |coeffs: &[i64]| upoly(u, coeffs);
    [
        p(&[
            0, 0, 84934656, 169869312, 171528192, 96878592, 31643136, 6054912, 670032, 41472, 1296,
        ]),
        p(&[
            0, 452984832, 1019215872, 1061683200, 580386816, 145870848, 0, -9116928, -2267136,
            -259200, -15552, -432,
        ]),
        p(&[
            603979776, 1358954496, 1184366592, 197001216, -430497792, -360271872, -127051776,
            -22516992, -1681632, 48096, 18072, 1296, 36,
        ]),
        p(&[
            -402653184,
            -1358954496,
            -2113929216,
            -1827667968,
            -886210560,
            -208760832,
            0,
            13047552,
            3461760,
            446208,
            32256,
            1296,
            24,
        ]),
        p(&[
            16777216, 125829120, 360185856, 514457600, 419696640, 209203200, 65656320, 13075200,
            1639440, 125600, 5496, 120, 1,
        ]),
    ]
}
