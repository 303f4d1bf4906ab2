//! Double-double arithmetic: unevaluated sums of two `f64`s giving ~31
//! significant decimal digits.
//!
//! The fourth-order ODE-residual check applies a 5-point stencil at spacings
//! down to h = 1e-3, where the truncation signal sits near 1e-13 of the
//! wavefunction scale. Rounding noise from an f64 evaluation of the
//! wavefunction enters the stencil amplified by ~64/(12h²) ≈ 5e5, which would
//! bury that signal completely, so the analytic wavefunction is evaluated in
//! double-double precision instead. Only the operations that evaluation needs
//! are provided: field arithmetic, `sqrt`, `exp`, `ln`, `sin_cos`, `atan2`,
//! and a small complex companion type for the PT-symmetric branch.
//!
//! Algorithms are the standard error-free-transform constructions (Dekker
//! two-sum, FMA two-product, Karp square root, exponential by 2⁹-fold argument
//! reduction, logarithm and arctangent by Newton refinement of the f64 seed).
//! Every transcendental is pinned by tests against 60-digit reference values.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// A double-double value `hi + lo` with `|lo| ≤ ½ ulp(hi)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum: returns `(s, e)` with `s = fl(a+b)` and `a + b = s + e` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free sum assuming `|a| ≥ |b|` (or a = 0).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product via fused multiply-add: `a·b = p + e` exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// ln 2 to double-double precision.
pub const LN_2: Dd = Dd::new(0.6931471805599453, 2.3190468138462996e-17);
/// π to double-double precision.
pub const PI: Dd = Dd::new(3.141592653589793, 1.2246467991473532e-16);
/// π/2 to double-double precision.
pub const FRAC_PI_2: Dd = Dd::new(1.5707963267948966, 6.123233995736766e-17);

/// 1/k! for k = 2..=30, feeding the exp and sin/cos Taylor tails.
const INV_FACT: [Dd; 29] = [
    Dd::new(0.5, 0.0),
    Dd::new(0.16666666666666666, 9.25185853854297e-18),
    Dd::new(0.041666666666666664, 2.3129646346357427e-18),
    Dd::new(0.008333333333333333, 1.1564823173178714e-19),
    Dd::new(0.001388888888888889, -5.300543954373577e-20),
    Dd::new(0.0001984126984126984, 1.7209558293420705e-22),
    Dd::new(2.48015873015873e-5, 2.1511947866775882e-23),
    Dd::new(2.7557319223985893e-6, -1.858393274046472e-22),
    Dd::new(2.755731922398589e-7, 2.3767714622250297e-23),
    Dd::new(2.505210838544172e-8, -1.448814070935912e-24),
    Dd::new(2.08767569878681e-9, -1.20734505911326e-25),
    Dd::new(1.6059043836821613e-10, 1.2585294588752098e-26),
    Dd::new(1.1470745597729725e-11, 2.0655512752830745e-28),
    Dd::new(7.647163731819816e-13, 7.03872877733453e-30),
    Dd::new(4.779477332387385e-14, 4.399205485834081e-31),
    Dd::new(2.8114572543455206e-15, 1.6508842730861433e-31),
    Dd::new(1.5619206968586225e-16, 1.1910679660273754e-32),
    Dd::new(8.22063524662433e-18, 2.2141894119604265e-34),
    Dd::new(4.110317623312165e-19, 1.4412973378659527e-36),
    Dd::new(1.9572941063391263e-20, -1.3643503830087908e-36),
    Dd::new(8.896791392450574e-22, -7.911402614872376e-38),
    Dd::new(3.868170170630684e-23, -8.843177655482344e-40),
    Dd::new(1.6117375710961184e-24, -3.6846573564509766e-41),
    Dd::new(6.446950284384474e-26, -1.9330404233703465e-42),
    Dd::new(2.4795962632247976e-27, -1.2953730964765229e-43),
    Dd::new(9.183689863795546e-29, 1.4303150396787322e-45),
    Dd::new(3.279889237069838e-30, 1.5117542744029879e-46),
    Dd::new(1.1309962886447716e-31, 1.0498015412959506e-47),
    Dd::new(3.7699876288159054e-33, 2.5870347832750324e-49),
];

impl Dd {
    pub const ZERO: Dd = Dd::new(0.0, 0.0);
    pub const ONE: Dd = Dd::new(1.0, 0.0);

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    /// The nearest f64 (exact inputs stay exact).
    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Exact scaling by a power of two.
    #[inline]
    pub fn mul_pwr2(self, p: f64) -> Dd {
        Dd::new(self.hi * p, self.lo * p)
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        let (p, e) = two_prod(self.hi, self.hi);
        let e = e + 2.0 * (self.hi * self.lo);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// √x by one double-double Newton step from the f64 seed; requires x ≥ 0.
    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0, "dd sqrt of negative value");
        let y = Dd::from_f64(self.hi.sqrt());
        (y + self / y).mul_pwr2(0.5)
    }

    #[inline]
    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    /// Exact scaling by 2ⁿ for |n| ≤ 1023.
    #[inline]
    fn ldexp(self, n: i32) -> Dd {
        let f = 2.0f64.powi(n);
        Dd::new(self.hi * f, self.lo * f)
    }

    /// eˣ by reduction x = m·ln2 + 512·r, Taylor in |r| ≤ ln2/1024, then nine
    /// squarings of e^r − 1 (which keeps the cancellation-free form s ← s² + 2s).
    pub fn exp(self) -> Dd {
        if self.hi <= -709.0 {
            return Dd::ZERO;
        }
        if self.hi >= 709.0 {
            return Dd::new(f64::INFINITY, 0.0);
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let m = (self.hi / LN_2.hi).round();
        let r = (self - LN_2 * m).mul_pwr2(1.0 / 512.0);
        // e^r − 1, truncated where the next term falls below the scaled epsilon.
        let threshold = 4.93e-32 / 512.0;
        let mut p = r.sqr();
        let mut s = r + p.mul_pwr2(0.5);
        p = p * r;
        let mut i = 1; // INV_FACT[1] = 1/3!
        loop {
            let t = p * INV_FACT[i];
            s = s + t;
            if t.hi.abs() <= threshold || i >= 12 {
                break;
            }
            p = p * r;
            i += 1;
        }
        for _ in 0..9 {
            s = s.sqr() + s.mul_pwr2(2.0);
        }
        (s + 1.0).ldexp(m as i32)
    }

    /// ln x by two Newton refinements y ← y + x·e⁻ʸ − 1 of the f64 seed; x > 0.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0, "dd ln of non-positive value");
        if self == Dd::ONE {
            return Dd::ZERO;
        }
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - 1.0;
        }
        y
    }

    /// (sin x, cos x) by reduction mod π/2 and Taylor sums on |t| ≤ π/4.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let j = (self.hi / FRAC_PI_2.hi).round();
        let t = self - FRAC_PI_2 * j;
        let x2 = t.sqr();
        // sin t = Σ (−1)^m t^{2m+1}/(2m+1)!, terms through t²⁹/29!.
        let mut s = t;
        let mut p = t;
        let mut sign = -1.0;
        let mut k = 3usize;
        while k <= 29 {
            p = p * x2;
            s = s + (p * INV_FACT[k - 2]).mul_pwr2(sign);
            sign = -sign;
            k += 2;
        }
        // cos t = Σ (−1)^m t^{2m}/(2m)!, terms through t³⁰/30!.
        let mut c = Dd::ONE;
        let mut pc = Dd::ONE;
        let mut sign = -1.0;
        let mut k = 2usize;
        while k <= 30 {
            pc = pc * x2;
            c = c + (pc * INV_FACT[k - 2]).mul_pwr2(sign);
            sign = -sign;
            k += 2;
        }
        match (j as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    /// Principal-branch atan2(y, x) ∈ (−π, π] by two Newton refinements of the
    /// f64 seed on the unit circle: z ← z + (ŷ·cos z − x̂·sin z).
    pub fn atan2(y: Dd, x: Dd) -> Dd {
        if y.hi == 0.0 && y.lo == 0.0 {
            return if x.hi >= 0.0 { Dd::ZERO } else { PI };
        }
        if x.hi == 0.0 && x.lo == 0.0 {
            return if y.hi > 0.0 { FRAC_PI_2 } else { -FRAC_PI_2 };
        }
        let r = (x.sqr() + y.sqr()).sqrt();
        let xu = x / r;
        let yu = y / r;
        let mut z = Dd::from_f64(y.hi.atan2(x.hi));
        for _ in 0..2 {
            let (sz, cz) = z.sin_cos();
            z = z + (yu * cz - xu * sz);
        }
        z
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: f64) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: f64) -> Dd {
        let (p, e) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p, e + self.lo * rhs);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (s, e) = two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: f64) -> Dd {
        self / Dd::from_f64(rhs)
    }
}

/// Complex double-double value for the PT-symmetric (complex deformation) branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: DdComplex = DdComplex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn new(re: Dd, im: Dd) -> DdComplex {
        DdComplex { re, im }
    }

    #[inline]
    pub fn from_real(re: Dd) -> DdComplex {
        DdComplex { re, im: Dd::ZERO }
    }

    #[inline]
    pub fn norm_sqr(self) -> Dd {
        self.re.sqr() + self.im.sqr()
    }

    /// |z| as an f64 (full dd precision is never needed for magnitudes alone).
    #[inline]
    pub fn abs_f64(self) -> f64 {
        self.norm_sqr().sqrt().to_f64()
    }

    /// Principal-branch complex power with a real double-double exponent:
    /// z^w = exp(w·ln|z|)·(cos(w·arg z) + i·sin(w·arg z)), arg z ∈ (−π, π].
    pub fn powf(self, w: Dd) -> DdComplex {
        let half_ln_norm = self.norm_sqr().ln().mul_pwr2(0.5);
        let magnitude = (w * half_ln_norm).exp();
        let phase = w * Dd::atan2(self.im, self.re);
        let (s, c) = phase.sin_cos();
        DdComplex {
            re: magnitude * c,
            im: magnitude * s,
        }
    }
}

impl Neg for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn neg(self) -> DdComplex {
        DdComplex::new(-self.re, -self.im)
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn add(self, rhs: DdComplex) -> DdComplex {
        DdComplex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn sub(self, rhs: DdComplex) -> DdComplex {
        DdComplex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn mul(self, rhs: DdComplex) -> DdComplex {
        DdComplex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Mul<Dd> for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn mul(self, rhs: Dd) -> DdComplex {
        DdComplex::new(self.re * rhs, self.im * rhs)
    }
}

impl Div for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn div(self, rhs: DdComplex) -> DdComplex {
        let d = rhs.norm_sqr();
        DdComplex::new(
            (self.re * rhs.re + self.im * rhs.im) / d,
            (self.im * rhs.re - self.re * rhs.im) / d,
        )
    }
}
