//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::quadratic::QuadraticNumber;
use super::rational::ExactRational;
use super::series::PowerSeries;
use crate::error::{Error, Result};

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<ExactRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| ExactRational::from(v)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn monomial(c: ExactRational, exp: usize) -> Self {
        let mut v = vec![ExactRational::zero(); exp + 1];
        v[exp] = c;
        Self::new(v)
    }

    /// `1 - x`
    pub fn one_minus_x() -> Self {
        Self::from_i64s(&[1, -1])
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Monic multiple; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &ExactRational::from(i as i64))
                .collect(),
        )
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d
            .leading()
            .ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let dd = d.degree().unwrap_or(0);
        let mut r = self.coeffs.clone();
        let mut q = vec![ExactRational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone() / dl;
            let shift = top - dd;
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[shift + i] -= &(&c * di);
                }
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval_rational(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval(&self, x: &QuadraticNumber) -> QuadraticNumber {
        self.coeffs.iter().rev().fold(QuadraticNumber::zero(), |acc, c| {
            &(&acc * x) + &QuadraticNumber::from(c.clone())
        })
    }

    pub fn to_series(&self, order: usize) -> PowerSeries {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        PowerSeries::from_coeffs(c, order)
    }

    /// Number of distinct real roots in the closed interval `[lo, hi]`,
    /// by a Sturm sequence evaluated exactly in the quadratic field.
    pub fn count_roots_in(&self, lo: &QuadraticNumber, hi: &QuadraticNumber) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        // square-free part keeps the Sturm chain well defined
        let g = Polynomial::gcd(self, &self.derivative());
        let p = self.div_rem(&g).expect("gcd is nonzero").0;
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero");
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        let variations = |x: &QuadraticNumber| -> usize {
            let signs: Vec<i32> = chain
                .iter()
                .map(|q| q.eval(x).signum())
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        // Sturm counts roots in (lo, hi]; add a root sitting exactly on lo
        let at_lo = usize::from(p.eval(lo).is_zero());
        variations(lo).saturating_sub(variations(hi)) + at_lo
    }

    /// Renders in `x`, ascending degree: `5*x^4+9*x^5+x^6`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let term = match (mag.is_one(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono,
                (false, true) => mag.to_string(),
                (false, false) => format!("{mag}*{mono}"),
            };
            out.push_str(&term);
        }
        out
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Polynomial::new(c)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_with_remainder() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let a = Polynomial::from_i64s(&[-1, 0, 0, 1]);
        let d = Polynomial::from_i64s(&[-1, 1]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q, Polynomial::from_i64s(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(a.div_rem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn gcd_is_monic() {
        let a = &Polynomial::from_i64s(&[1, -1]).pow(3) * &Polynomial::from_i64s(&[0, 2]);
        let b = &Polynomial::from_i64s(&[1, -1]).pow(2) * &Polynomial::from_i64s(&[3, 1]);
        assert_eq!(Polynomial::gcd(&a, &b), Polynomial::from_i64s(&[1, -2, 1]));
    }

    #[test]
    fn rendering() {
        assert_eq!(Polynomial::from_i64s(&[0, 0, 0, 0, 5, 9, 1]).render(), "5*x^4+9*x^5+x^6");
        assert_eq!(Polynomial::from_i64s(&[1, -1]).render(), "1-x");
        assert_eq!(Polynomial::zero().render(), "0");
        assert_eq!(
            Polynomial::new(vec![ExactRational::from_ratio(-1, 2), ExactRational::from(1)]).render(),
            "-1/2+x"
        );
    }

    #[test]
    fn sturm_counts_roots() {
        let p = Polynomial::one_minus_x().pow(4);
        let zero = QuadraticNumber::zero();
        let quarter = QuadraticNumber::from(ExactRational::from_ratio(1, 4));
        assert_eq!(p.count_roots_in(&zero, &quarter), 0);
        assert_eq!(p.count_roots_in(&zero, &QuadraticNumber::one()), 1);
        // x^2 - 2 has its positive root between 1 and 3 - 2 sqrt 2 + 1
        let q = Polynomial::from_i64s(&[-2, 0, 1]);
        let hi = QuadraticNumber::new(ExactRational::from(0), ExactRational::from(1), 2);
        assert_eq!(q.count_roots_in(&zero, &hi), 1);
        assert_eq!(q.count_roots_in(&zero, &QuadraticNumber::one()), 0);
    }
}
