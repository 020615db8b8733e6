//! Elements `p + q·√d` of a real quadratic field.
//!
//! Singularities and limit probabilities of the four families live in
//! `Q` (d irrelevant) or `Q(√2)`. Every comparison is decided exactly:
//! the sign of `p + q√d` reduces to comparing `p²` with `d·q²`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{lcm_big, ExactRational};
use crate::error::Error;

/// Radicand used when the radical part is zero and no field was named.
pub const DEFAULT_RADICAND: u32 = 2;

#[derive(Clone)]
pub struct QuadraticNumber {
    rational: ExactRational,
    radical: ExactRational,
    radicand: u32,
}

fn is_square(n: u32) -> bool {
    let r = (n as f64).sqrt().round() as u32;
    r * r == n
}

impl QuadraticNumber {
    /// `rational + radical·√radicand`. The radicand must be a nonsquare ≥ 2.
    pub fn new(rational: ExactRational, radical: ExactRational, radicand: u32) -> Self {
        assert!(
            radicand >= 2 && !is_square(radicand),
            "radicand {radicand} must be a nonsquare integer >= 2"
        );
        QuadraticNumber {
            rational,
            radical,
            radicand,
        }
    }

    pub fn from_rational(r: ExactRational) -> Self {
        QuadraticNumber {
            rational: r,
            radical: ExactRational::zero(),
            radicand: DEFAULT_RADICAND,
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(ExactRational::from(n))
    }

    /// `√d` itself.
    pub fn sqrt_of(radicand: u32) -> Self {
        Self::new(ExactRational::zero(), ExactRational::one(), radicand)
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn rational_part(&self) -> &ExactRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &ExactRational {
        &self.radical
    }

    pub fn radicand(&self) -> u32 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    fn field_with(&self, other: &Self) -> u32 {
        match (self.radical.is_zero(), other.radical.is_zero()) {
            (_, true) => self.radicand,
            (true, false) => other.radicand,
            (false, false) => {
                assert_eq!(
                    self.radicand, other.radicand,
                    "mixing Q(sqrt {}) and Q(sqrt {})",
                    self.radicand, other.radicand
                );
                self.radicand
            }
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            rational: self.rational.clone(),
            radical: -&self.radical,
            radicand: self.radicand,
        }
    }

    /// Field norm `p² − d·q²`, always rational.
    pub fn norm(&self) -> ExactRational {
        let d = ExactRational::from(self.radicand as i64);
        &self.rational * &self.rational - &d * &(&self.radical * &self.radical)
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(QuadraticNumber {
            rational: &c.rational / &n,
            radical: &c.radical / &n,
            radicand: self.radicand,
        })
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        QuadraticNumber {
            rational: &self.rational * c,
            radical: &self.radical * c,
            radicand: self.radicand,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QuadraticNumber {
            rational: ExactRational::one(),
            radical: ExactRational::zero(),
            radicand: self.radicand,
        };
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// -1, 0 or 1, decided without floating point.
    pub fn signum(&self) -> i32 {
        let sp = self.rational.signum();
        let sq = self.radical.signum();
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let p2 = &self.rational * &self.rational;
        let dq2 = &ExactRational::from(self.radicand as i64) * &(&self.radical * &self.radical);
        if p2 > dq2 {
            sp
        } else {
            sq
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// `(A + B√d) / C` with integers and `C > 0`.
    fn integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let c = lcm_big(self.rational.denom(), self.radical.denom());
        let a = self.rational.numer() * (&c / self.rational.denom());
        let b = self.radical.numer() * (&c / self.radical.denom());
        (a, b, c)
    }

    /// `floor(self · 10^scale)`, exact. Negative `scale` divides instead.
    pub fn floor_scaled(&self, scale: i32) -> BigInt {
        let (mut a, mut b, mut c) = self.integer_form();
        let ten = BigInt::from(10);
        if scale >= 0 {
            let p = num_traits::pow(ten, scale as usize);
            a *= &p;
            b *= &p;
        } else {
            c *= num_traits::pow(ten, (-scale) as usize);
        }
        floor_surd(&a, &b, self.radicand, &c)
    }

    /// Decimal exponent `e` with `10^e <= |x| < 10^(e+1)`; `None` for zero.
    fn decimal_exponent(&self) -> Option<i32> {
        if self.is_zero() {
            return None;
        }
        let x = self.abs();
        let approx = x.to_f64_rough();
        let mut e = if approx > 0.0 && approx.is_finite() {
            approx.log10().floor() as i32
        } else {
            0
        };
        loop {
            if x.floor_scaled(-e) < BigInt::one() {
                e -= 1;
            } else if !x.floor_scaled(-(e + 1)).is_zero() {
                e += 1;
            } else {
                return Some(e);
            }
        }
    }

    /// `round_half_even(|self| · 10^scale)`.
    fn round_scaled_abs(&self, scale: i32) -> BigInt {
        let x = self.abs();
        let t = x.floor_scaled(scale);
        let twice = x.scale(&ExactRational::from(2)).floor_scaled(scale);
        if twice == &t * 2 {
            return t;
        }
        // fractional part >= 1/2; exactly 1/2 only for rationals
        let exact_half = x.is_rational() && {
            let scaled = if scale >= 0 {
                x.rational.clone() * ExactRational::from_integer(num_traits::pow(BigInt::from(10), scale as usize))
            } else {
                x.rational.clone() / ExactRational::from_integer(num_traits::pow(BigInt::from(10), (-scale) as usize))
            };
            let doubled = &scaled * &ExactRational::from(2);
            doubled.is_integer()
        };
        if exact_half && t.is_even() {
            t
        } else {
            t + 1
        }
    }

    /// Round half-even to `digits` significant digits; trailing zeros dropped.
    pub fn to_decimal(&self, digits: u32) -> String {
        let digits = digits.max(1) as i32;
        let Some(mut e) = self.decimal_exponent() else {
            return "0".to_string();
        };
        let mut t = self.round_scaled_abs(digits - 1 - e);
        if t == num_traits::pow(BigInt::from(10), digits as usize) {
            e += 1;
            t = self.round_scaled_abs(digits - 1 - e);
        }
        let s = render_scaled(&t, digits - 1 - e, true);
        if self.signum() < 0 {
            format!("-{s}")
        } else {
            s
        }
    }

    /// Round half-even to exactly `places` digits after the point.
    pub fn to_fixed(&self, places: u32) -> String {
        let t = self.round_scaled_abs(places as i32);
        let s = render_scaled(&t, places as i32, false);
        if self.signum() < 0 && !t.is_zero() {
            format!("-{s}")
        } else {
            s
        }
    }

    fn to_f64_rough(&self) -> f64 {
        self.rational.to_f64() + self.radical.to_f64() * (self.radicand as f64).sqrt()
    }

    /// Nearest double, derived from the exact 17-digit decimal expansion.
    pub fn to_f64(&self) -> f64 {
        self.to_decimal(17).parse().unwrap_or(f64::NAN)
    }
}

/// floor((a + b√d) / c), c > 0, d nonsquare.
fn floor_surd(a: &BigInt, b: &BigInt, d: u32, c: &BigInt) -> BigInt {
    if b.is_zero() {
        return a.div_floor(c);
    }
    let n = b * b * BigInt::from(d);
    let r = n.sqrt();
    if b.is_positive() {
        (a + r).div_floor(c)
    } else {
        (a - r - BigInt::from(1)).div_floor(c)
    }
}

/// Renders `t · 10^(-scale)` for nonnegative `t`.
fn render_scaled(t: &BigInt, scale: i32, trim: bool) -> String {
    let digits = t.to_string();
    if scale <= 0 {
        let zeros = "0".repeat((-scale) as usize);
        return format!("{digits}{zeros}");
    }
    let scale = scale as usize;
    let padded = if digits.len() <= scale {
        format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = padded.split_at(padded.len() - scale);
    let frac = if trim { frac.trim_end_matches('0') } else { frac };
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.rational == other.rational
            && self.radical == other.radical
            && (self.radical.is_zero() || self.radicand == other.radicand)
    }
}

impl Eq for QuadraticNumber {}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<ExactRational> for QuadraticNumber {
    fn from(r: ExactRational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber {
            radicand: self.field_with(rhs),
            rational: &self.rational + &rhs.rational,
            radical: &self.radical + &rhs.radical,
        }
    }
}

impl<'a> Sub<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber {
            radicand: self.field_with(rhs),
            rational: &self.rational - &rhs.rational,
            radical: &self.radical - &rhs.radical,
        }
    }
}

impl<'a> Mul<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.field_with(rhs);
        let dd = ExactRational::from(d as i64);
        let rational = &self.rational * &rhs.rational + &dd * &(&self.radical * &rhs.radical);
        let radical = &self.rational * &rhs.radical + &self.radical * &rhs.rational;
        QuadraticNumber {
            rational,
            radical,
            radicand: d,
        }
    }
}

impl<'a> Div<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    /// Panics on a zero divisor; [`QuadraticNumber::recip`] reports it instead.
    fn div(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let inv = rhs.recip().expect("division by zero in quadratic field");
        self * &inv
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            rational: -&self.rational,
            radical: -&self.radical,
            radicand: self.radicand,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, rhs: &'a QuadraticNumber) -> QuadraticNumber {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for QuadraticNumber {
    /// `p`, `q*sqrt(d)` or `p + q*sqrt(d)`; unit coefficients are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.radicand;
        if self.radical.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let mag = self.radical.abs();
        let surd = if mag.is_one() {
            format!("sqrt({d})")
        } else {
            format!("{mag}*sqrt({d})")
        };
        if self.rational.is_zero() {
            if self.radical.is_negative() {
                write!(f, "-{surd}")
            } else {
                write!(f, "{surd}")
            }
        } else {
            let op = if self.radical.is_negative() { '-' } else { '+' };
            write!(f, "{} {op} {surd}", self.rational)
        }
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact wire form: parts as rational strings plus the radicand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticParts {
    pub rational: String,
    pub radical: String,
    pub radicand: u32,
}

impl From<&QuadraticNumber> for QuadraticParts {
    fn from(q: &QuadraticNumber) -> Self {
        QuadraticParts {
            rational: q.rational.to_string(),
            radical: q.radical.to_string(),
            radicand: q.radicand,
        }
    }
}

impl TryFrom<&QuadraticParts> for QuadraticNumber {
    type Error = Error;
    fn try_from(p: &QuadraticParts) -> Result<Self, Error> {
        if p.radicand < 2 || is_square(p.radicand) {
            return Err(Error::Parse(format!("bad radicand {}", p.radicand)));
        }
        Ok(QuadraticNumber::new(
            p.rational.parse()?,
            p.radical.parse()?,
            p.radicand,
        ))
    }
}
