//! Scalar arithmetic for the kernel.
//!
//! Everything runs on plain `f64` by default. An exact mode is available for
//! the golden table data and the dictionary identities: the field ℚ(√2) of
//! numbers `a + b·√2` with rational `a`, `b`, which is closed under the four
//! field operations and contains every coefficient appearing in the shipped
//! wall tables at rational parameter values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Reduced fraction of `i128`s with positive denominator.
///
/// Arithmetic panics on overflow; the magnitudes occurring in the shipped
/// tables and their eliminations stay far below the `i128` range.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let g = gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Rational {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn from_int(i: i64) -> Self {
        Rational {
            num: i as i128,
            den: 1,
        }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn signum(&self) -> i8 {
        self.num.signum() as i8
    }

    pub fn abs(&self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact square root, when the fraction is a perfect square.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.num < 0 {
            return None;
        }
        let ns = isqrt(self.num)?;
        let ds = isqrt(self.den)?;
        Some(Rational::new(ns, ds))
    }

    fn checked(num: Option<i128>, den: Option<i128>) -> Self {
        Rational::new(
            num.expect("rational arithmetic overflow"),
            den.expect("rational arithmetic overflow"),
        )
    }
}

fn isqrt(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let r = (v as f64).sqrt().round() as i128;
    [r - 1, r, r + 1].into_iter().find(|&c| c >= 0 && c.checked_mul(c) == Some(v))
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        Rational::checked(
            self.num
                .checked_mul(o.den)
                .and_then(|x| x.checked_add(o.num.checked_mul(self.den)?)),
            self.den.checked_mul(o.den),
        )
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self + (-o)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        Rational::checked(self.num.checked_mul(o.num), self.den.checked_mul(o.den))
    }
}

impl Div for Rational {
    type Output = Rational;
    #[allow(clippy::suspicious_arithmetic_impl)] // a/b = a·(1/b) over cross products
    fn div(self, o: Rational) -> Rational {
        assert!(!o.is_zero(), "rational division by zero");
        Rational::checked(self.num.checked_mul(o.den), self.den.checked_mul(o.num))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Rational) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Rational) -> Ordering {
        let lhs = self.num.checked_mul(o.den).expect("rational cmp overflow");
        let rhs = o.num.checked_mul(self.den).expect("rational cmp overflow");
        lhs.cmp(&rhs)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Exact element `a + b·√2` of ℚ(√2).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exact {
    pub a: Rational,
    pub b: Rational,
}

impl Exact {
    pub fn new(a: Rational, b: Rational) -> Self {
        Exact { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Exact {
            a,
            b: Rational::ZERO,
        }
    }

    pub fn integer(i: i64) -> Self {
        Exact::rational(Rational::from_int(i))
    }

    pub fn sqrt2() -> Self {
        Exact {
            a: Rational::ZERO,
            b: Rational::ONE,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b√2`.
    pub fn signum(&self) -> i8 {
        let (sa, sb) = (self.a.signum(), self.b.signum());
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // a and b√2 have opposite signs: compare a² with 2b².
        let a2 = self.a * self.a;
        let b2 = self.b * self.b * Rational::from_int(2);
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -*self
        } else {
            *self
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * std::f64::consts::SQRT_2
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(sqrt2)");
        // 1/(a+b√2) = (a−b√2)/(a²−2b²); the norm vanishes only at zero.
        let norm = self.a * self.a - self.b * self.b * Rational::from_int(2);
        Exact {
            a: self.a / norm,
            b: -self.b / norm,
        }
    }

    /// Exact square root inside ℚ(√2) when one exists: handles rationals that
    /// are perfect squares and rationals of the form `2·c²`.
    pub fn sqrt_exact(&self) -> Option<Exact> {
        if !self.b.is_zero() {
            return None;
        }
        if self.a.signum() < 0 {
            return None;
        }
        if let Some(r) = self.a.sqrt_exact() {
            return Some(Exact::rational(r));
        }
        let half = self.a / Rational::from_int(2);
        half.sqrt_exact()
            .map(|c| Exact::new(Rational::ZERO, c))
    }
}

impl Add for Exact {
    type Output = Exact;
    fn add(self, o: Exact) -> Exact {
        Exact {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for Exact {
    type Output = Exact;
    fn sub(self, o: Exact) -> Exact {
        Exact {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Mul for Exact {
    type Output = Exact;
    fn mul(self, o: Exact) -> Exact {
        // (a+b√2)(c+d√2) = ac+2bd + (ad+bc)√2
        Exact {
            a: self.a * o.a + Rational::from_int(2) * self.b * o.b,
            b: self.a * o.b + self.b * o.a,
        }
    }
}

impl Div for Exact {
    type Output = Exact;
    #[allow(clippy::suspicious_arithmetic_impl)] // field division via the inverse
    fn div(self, o: Exact) -> Exact {
        self * o.inv()
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}√2", self.b)
        } else {
            write!(f, "{}+{}√2", self.a, self.b)
        }
    }
}

/// The scalar interface shared by `f64` and [`Exact`].
///
/// `is_zero_tol` is the only place tolerances enter: the float
/// implementation compares against `tol`, the exact one ignores it.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(i: i64) -> Self;
    fn is_zero_tol(&self, tol: f64) -> bool;
    fn is_positive(&self) -> bool;
    fn abs(&self) -> Self;
    /// Approximate magnitude, used only for pivot selection and reporting.
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(i: i64) -> Self {
        i as f64
    }
    fn is_zero_tol(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Exact {
    fn zero() -> Self {
        Exact::integer(0)
    }
    fn one() -> Self {
        Exact::integer(1)
    }
    fn from_int(i: i64) -> Self {
        Exact::integer(i)
    }
    fn is_zero_tol(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn is_positive(&self) -> bool {
        Exact::is_positive(self)
    }
    fn abs(&self) -> Self {
        Exact::abs(self)
    }
    fn to_f64(&self) -> f64 {
        Exact::to_f64(self)
    }
}
