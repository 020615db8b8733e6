//! Arbitrary-precision rationals kept in lowest terms.
//!
//! Almost every coefficient this crate touches is an integer, so the
//! arithmetic here is tuned for that case: integer operands never go
//! through a gcd, and the gcd that does run reduces unbalanced operands
//! with a remainder step before falling back to Euclid on machine words.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A rational number `numer / denom` with `denom > 0` and `gcd = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactRational {
    numer: BigInt,
    denom: BigInt,
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Greatest common divisor of magnitudes.
pub(crate) fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a: BigUint = a.magnitude().clone();
    let mut b: BigUint = b.magnitude().clone();
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return BigInt::from(a);
        }
        if let Some(small) = b.to_u64() {
            let r = (&a % small).to_u64().unwrap_or(0);
            return BigInt::from(gcd_u64(small, r));
        }
        let r = &a % &b;
        a = b;
        b = r;
    }
}

pub(crate) fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    let g = gcd_big(a, b);
    (a / g) * b
}

impl ExactRational {
    /// Builds `numer / denom` and reduces it. Panics on a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        let mut r = ExactRational { numer, denom };
        r.normalize();
        r
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational {
            numer: n.into(),
            denom: BigInt::one(),
        }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    fn normalize(&mut self) {
        if self.denom.is_negative() {
            self.numer = -std::mem::take(&mut self.numer);
            self.denom = -std::mem::take(&mut self.denom);
        }
        if self.numer.is_zero() {
            self.denom = BigInt::one();
            return;
        }
        if self.denom.is_one() {
            return;
        }
        let g = gcd_big(&self.numer, &self.denom);
        if !g.is_one() {
            self.numer /= &g;
            self.denom /= &g;
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.numer.is_one() && self.denom.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.numer.is_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.numer.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        ExactRational {
            numer: self.numer.abs(),
            denom: self.denom.clone(),
        }
    }

    /// The integer value, if this rational is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer.clone())
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Self::new(self.denom.clone(), self.numer.clone()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactRational {
            numer: num_traits::pow(self.numer.clone(), exp as usize),
            denom: num_traits::pow(self.denom.clone(), exp as usize),
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        self.numer.div_floor(&self.denom)
    }

    /// Nearest `f64`; exact inputs with huge numerators and denominators
    /// are scaled before conversion so the quotient keeps full precision.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nb = self.numer.bits() as i64;
        let db = self.denom.bits() as i64;
        // shift so the integer quotient carries ~64 significant bits
        let shift = 64 - (nb - db);
        let q = if shift >= 0 {
            (&self.numer << shift as usize) / &self.denom
        } else {
            &self.numer / (&self.denom << (-shift) as usize)
        };
        let qf = q.to_f64().unwrap_or(f64::NAN);
        qf * 2f64.powi(-(shift as i32))
    }

    /// Sum of pairwise products, with an integer fast path.
    pub fn dot<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a ExactRational, &'a ExactRational)>,
    {
        let mut int_acc = BigInt::zero();
        let mut frac_acc: Option<ExactRational> = None;
        for (a, b) in pairs {
            if a.numer.is_zero() || b.numer.is_zero() {
                continue;
            }
            if a.denom.is_one() && b.denom.is_one() {
                int_acc += &a.numer * &b.numer;
            } else {
                let p = a * b;
                frac_acc = Some(match frac_acc {
                    None => p,
                    Some(acc) => acc + p,
                });
            }
        }
        let int_part = ExactRational::from_integer(int_acc);
        match frac_acc {
            None => int_part,
            Some(f) => f + int_part,
        }
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<i32> for ExactRational {
    fn from(n: i32) -> Self {
        Self::from_integer(n)
    }
}

impl From<u64> for ExactRational {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Self::new(n, d))
        } else if let Some((int, frac)) = s.split_once('.') {
            // finite decimal such as "0.0503" or ".125"
            let neg = int.starts_with('-');
            let int = int.trim_start_matches(['-', '+']);
            let digits = format!("{int}{frac}");
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let n: BigInt = digits.parse().map_err(|_| bad())?;
            let d = num_traits::pow(BigInt::from(10), frac.len());
            Ok(Self::new(if neg { -n } else { n }, d))
        } else {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Self::from_integer(n))
        }
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.denom == other.denom {
            return self.numer.cmp(&other.numer);
        }
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl<'a> Add<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;

    fn add(self, rhs: &ExactRational) -> ExactRational {
        if self.denom.is_one() && rhs.denom.is_one() {
            return ExactRational::from_integer(&self.numer + &rhs.numer);
        }
        if self.denom == rhs.denom {
            return ExactRational::new(&self.numer + &rhs.numer, self.denom.clone());
        }
        ExactRational::new(
            &self.numer * &rhs.denom + &rhs.numer * &self.denom,
            &self.denom * &rhs.denom,
        )
    }
}

impl<'a> Sub<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;

    fn sub(self, rhs: &ExactRational) -> ExactRational {
        if self.denom.is_one() && rhs.denom.is_one() {
            return ExactRational::from_integer(&self.numer - &rhs.numer);
        }
        if self.denom == rhs.denom {
            return ExactRational::new(&self.numer - &rhs.numer, self.denom.clone());
        }
        ExactRational::new(
            &self.numer * &rhs.denom - &rhs.numer * &self.denom,
            &self.denom * &rhs.denom,
        )
    }
}

impl<'a> Mul<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;

    fn mul(self, rhs: &ExactRational) -> ExactRational {
        if self.denom.is_one() && rhs.denom.is_one() {
            return ExactRational::from_integer(&self.numer * &rhs.numer);
        }
        if self.numer.is_zero() || rhs.numer.is_zero() {
            return ExactRational::zero();
        }
        // cross-cancel so the product is already reduced
        let g1 = gcd_big(&self.numer, &rhs.denom);
        let g2 = gcd_big(&rhs.numer, &self.denom);
        ExactRational {
            numer: (&self.numer / &g1) * (&rhs.numer / &g2),
            denom: (&self.denom / &g2) * (&rhs.denom / &g1),
        }
    }
}

impl<'a> Div<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;

    /// Panics on division by zero; use [`ExactRational::recip`] to get an error instead.
    fn div(self, rhs: &ExactRational) -> ExactRational {
        assert!(!rhs.is_zero(), "division by zero");
        let mut inv = ExactRational {
            numer: rhs.denom.clone(),
            denom: rhs.numer.clone(),
        };
        if inv.denom.is_negative() {
            inv.numer = -inv.numer;
            inv.denom = -inv.denom;
        }
        self * &inv
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;

    fn neg(self) -> ExactRational {
        ExactRational {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;

    fn neg(self) -> ExactRational {
        ExactRational {
            numer: -self.numer,
            denom: self.denom,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: ExactRational) -> ExactRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: &'a ExactRational) -> ExactRational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: ExactRational) -> ExactRational {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        if self.denom.is_one() && rhs.denom.is_one() {
            self.numer += &rhs.numer;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        if self.denom.is_one() && rhs.denom.is_one() {
            self.numer -= &rhs.numer;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &ExactRational) {
        *self = &*self * rhs;
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        let mut acc = ExactRational::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl<'a> Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        let mut acc = ExactRational::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}
