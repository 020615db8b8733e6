//! Truncated power series with exact rational coefficients.
//!
//! A series of order `N` stores the coefficients of `x^0 ..= x^N`. Binary
//! operators truncate to the smaller order; the `*_trunc` methods take an
//! explicit order and fail if an input does not reach it.
//!
//! Products and quotients clear denominators up front and run the inner
//! loops on integers. For the counting series of this crate every
//! coefficient is an integer, so those kernels never touch a gcd.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{lcm_big, ExactRational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<ExactRational>,
}

/// Integer numerators over a common denominator.
fn clear_denominators(c: &[ExactRational]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for x in c {
        if !x.denom().is_one() {
            l = lcm_big(&l, x.denom());
        }
    }
    let ints = if l.is_one() {
        c.iter().map(|x| x.numer().clone()).collect()
    } else {
        c.iter().map(|x| x.numer() * (&l / x.denom())).collect()
    };
    (ints, l)
}

fn check_order(requested: usize, available: usize) -> Result<()> {
    if requested > available {
        Err(Error::Truncation {
            requested,
            available,
        })
    } else {
        Ok(())
    }
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![ExactRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(ExactRational::one(), 0, order)
    }

    /// `c · x^exp`, truncated (so it vanishes when `exp > order`).
    pub fn monomial(c: ExactRational, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<ExactRational>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactRational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_i64s(c: &[i64], order: usize) -> Self {
        Self::from_coeffs(c.iter().map(|&v| ExactRational::from(v)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^n`; panics past the truncation order.
    pub fn coeff(&self, n: usize) -> &ExactRational {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&ExactRational> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    /// Index of the first nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        Ok(PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Zero-pads to a higher order. Only meaningful when the dropped terms
    /// are known to be absent (polynomials) or about to be recomputed.
    pub fn pad(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order.max(self.order()))
    }

    /// Multiply by `x^k`, keeping the truncation order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![ExactRational::zero(); n + 1];
        if k <= n {
            c[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        PowerSeries { coeffs: c }
    }

    /// Divide by `x^k`; the first `k` coefficients must vanish. Order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if let Some(v) = self.valuation() {
            if v < k {
                return Err(Error::NotAPowerSeries {
                    numerator: v,
                    denominator: k,
                });
            }
        }
        check_order(k, self.order())?;
        Ok(PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product truncated at `order`.
    pub fn mul_trunc(&self, other: &Self, order: usize) -> Result<Self> {
        check_order(order, self.order().min(other.order()))?;
        let (a, la) = clear_denominators(&self.coeffs[..=order]);
        let (b, lb) = clear_denominators(&other.coeffs[..=order]);
        let mut acc = vec![BigInt::zero(); order + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b[..=order - i].iter().enumerate() {
                if !bj.is_zero() {
                    acc[i + j] += ai * bj;
                }
            }
        }
        let l = la * lb;
        let coeffs = if l.is_one() {
            acc.into_iter().map(ExactRational::from_integer).collect()
        } else {
            acc.into_iter()
                .map(|c| ExactRational::new(c, l.clone()))
                .collect()
        };
        Ok(PowerSeries { coeffs })
    }

    /// `[x^n] (self · other)` without forming the whole product.
    pub fn coeff_of_product(&self, other: &Self, n: usize) -> Result<ExactRational> {
        check_order(n, self.order().min(other.order()))?;
        Ok(ExactRational::dot(
            (0..=n).map(|i| (&self.coeffs[i], &other.coeffs[n - i])),
        ))
    }

    /// Quotient `self / other` truncated at `order`.
    ///
    /// A common power `x^v` (v = valuation of the divisor) is cancelled first;
    /// that costs `v` orders of precision on both inputs.
    pub fn div_trunc(&self, other: &Self, order: usize) -> Result<Self> {
        let vb = other
            .valuation()
            .ok_or_else(|| Error::Domain("division by the zero series".into()))?;
        let va = self.valuation();
        if let Some(va) = va {
            if va < vb {
                return Err(Error::NotAPowerSeries {
                    numerator: va,
                    denominator: vb,
                });
            }
        }
        let avail = self.order().min(other.order());
        if avail < vb {
            return Err(Error::Truncation {
                requested: order + vb,
                available: avail,
            });
        }
        check_order(order, avail - vb).map_err(|_| Error::Truncation {
            requested: order + vb,
            available: avail,
        })?;
        if va.is_none() {
            return Ok(Self::zero(order));
        }

        let (a, la) = clear_denominators(&self.coeffs[vb..=vb + order]);
        let (b, lb) = clear_denominators(&other.coeffs[vb..=vb + order]);
        let c = &b[0];
        let mut out = Vec::with_capacity(order + 1);
        if c.magnitude().is_one() {
            let neg = c.is_negative();
            let mut q: Vec<BigInt> = Vec::with_capacity(order + 1);
            for n in 0..=order {
                let mut s = a[n].clone();
                for i in 0..n {
                    if !b[n - i].is_zero() && !q[i].is_zero() {
                        s -= &q[i] * &b[n - i];
                    }
                }
                q.push(if neg { -s } else { s });
            }
            // true quotient is (lb / la) · q
            for qn in q {
                out.push(ExactRational::new(qn * &lb, la.clone()));
            }
        } else {
            // fraction-free: Q_n = q_n · c^(n+1)
            let mut powers = vec![BigInt::one()];
            for i in 1..=order + 1 {
                let next = &powers[i - 1] * c;
                powers.push(next);
            }
            let mut big_q: Vec<BigInt> = Vec::with_capacity(order + 1);
            for n in 0..=order {
                let mut s = &a[n] * &powers[n];
                for i in 0..n {
                    if !b[n - i].is_zero() && !big_q[i].is_zero() {
                        s -= &big_q[i] * &powers[n - 1 - i] * &b[n - i];
                    }
                }
                big_q.push(s);
            }
            for (n, qn) in big_q.into_iter().enumerate() {
                out.push(ExactRational::new(qn * &lb, &powers[n + 1] * &la));
            }
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `1 / self` truncated at `order`.
    pub fn recip_trunc(&self, order: usize) -> Result<Self> {
        Self::one(self.order()).div_trunc(self, order)
    }

    /// The square root with constant term `+1`. The constant term of `self` must be 1.
    pub fn sqrt_trunc(&self, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        if !self.coeffs[0].is_one() {
            return Err(Error::Domain(format!(
                "square root needs constant term 1, found {}",
                self.coeffs[0]
            )));
        }
        let two = ExactRational::from(2);
        let mut s: Vec<ExactRational> = Vec::with_capacity(order + 1);
        s.push(ExactRational::one());
        for n in 1..=order {
            // a_n = 2 s_n + sum_{i=1}^{n-1} s_i s_{n-i}
            let half = (n - 1) / 2;
            let mut cross = ExactRational::dot((1..=half).map(|i| (&s[i], &s[n - i])));
            cross = &cross * &two;
            if n % 2 == 0 {
                cross += &(&s[n / 2] * &s[n / 2]);
            }
            s.push(&(&self.coeffs[n] - &cross) / &two);
        }
        Ok(PowerSeries { coeffs: s })
    }

    /// Iterates `F ← phi(F)` from the zero series until the coefficients
    /// through `order` stop changing.
    ///
    /// `phi` must be contracting in the x-adic sense (coefficient n of the
    /// image depends only on coefficients below n), which is what the tree
    /// equations look like. Iteration `t` runs at working order `min(t, order)`:
    /// coefficients past `t` are not final yet, so computing them is wasted work.
    pub fn fixed_point<F>(order: usize, mut phi: F) -> Result<Self>
    where
        F: FnMut(&PowerSeries, usize) -> Result<PowerSeries>,
    {
        let max_iter = order + 1;
        let mut current = PowerSeries::zero(0);
        for t in 1..=max_iter {
            let work = t.min(order);
            let input = current.pad(work);
            let next = phi(&input, work)?.truncate(work)?;
            if work == order && next == input {
                return Ok(next);
            }
            current = next;
        }
        Err(Error::NonConvergence(max_iter))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.to_integer()).collect()
    }
}

impl<'a> Add<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl<'a> Sub<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl<'a> Mul<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        self.mul_trunc(rhs, n).expect("order is the minimum of both inputs")
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            match (mag.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                let i = c.to_integer().expect("integer coefficient");
                i64::try_from(i).unwrap()
            })
            .collect()
    }

    #[test]
    fn difference_of_squares() {
        let a = PowerSeries::from_i64s(&[1, 1], 2);
        let b = PowerSeries::from_i64s(&[1, -1], 2);
        assert_eq!(ints(&a.mul_trunc(&b, 2).unwrap()), vec![1, 0, -1]);
    }

    #[test]
    fn multiplying_by_one_is_identity() {
        let a = PowerSeries::from_coeffs(
            vec![ExactRational::from_ratio(1, 3), ExactRational::from(-4), ExactRational::from_ratio(7, 2)],
            2,
        );
        assert_eq!(a.mul_trunc(&PowerSeries::one(2), 2).unwrap(), a);
    }

    #[test]
    fn order_beyond_inputs_is_a_truncation_error() {
        let a = PowerSeries::one(3);
        assert_eq!(
            a.mul_trunc(&a, 4),
            Err(Error::Truncation { requested: 4, available: 3 })
        );
    }

    #[test]
    fn division_examples() {
        let num = PowerSeries::from_i64s(&[1, 0, -1], 5);
        let den = PowerSeries::from_i64s(&[1, -1], 5);
        assert_eq!(ints(&num.div_trunc(&den, 3).unwrap()), vec![1, 1, 0, 0]);

        let x = PowerSeries::from_i64s(&[0, 1], 5);
        assert_eq!(ints(&x.div_trunc(&den, 4).unwrap()), vec![0, 1, 1, 1, 1]);
    }

    #[test]
    fn division_cancels_common_power_of_x() {
        // (x^2 + x^3) / (2x) = x/2 + x^2/2
        let a = PowerSeries::from_i64s(&[0, 0, 1, 1], 6);
        let b = PowerSeries::from_i64s(&[0, 2], 6);
        let q = a.div_trunc(&b, 4).unwrap();
        assert_eq!(q.coeff(1), &ExactRational::from_ratio(1, 2));
        assert_eq!(q.coeff(2), &ExactRational::from_ratio(1, 2));
        assert!(q.coeff(3).is_zero());
    }

    #[test]
    fn division_needs_enough_valuation() {
        let a = PowerSeries::from_i64s(&[0, 1], 4);
        let b = PowerSeries::from_i64s(&[0, 0, 1], 4);
        assert_eq!(
            a.div_trunc(&b, 1),
            Err(Error::NotAPowerSeries { numerator: 1, denominator: 2 })
        );
    }

    #[test]
    fn division_with_non_unit_constant() {
        // 1 / (2 - x) = 1/2 + x/4 + x^2/8 + ...
        let b = PowerSeries::from_i64s(&[2, -1], 6);
        let q = PowerSeries::one(6).div_trunc(&b, 6).unwrap();
        for n in 0..=6 {
            assert_eq!(q.coeff(n), &ExactRational::new(BigInt::one(), BigInt::from(2).pow(n as u32 + 1)));
        }
        assert_eq!(q.mul_trunc(&b, 6).unwrap(), PowerSeries::one(6));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(PowerSeries::one(4).sqrt_trunc(4).unwrap(), PowerSeries::one(4));
        let a = PowerSeries::from_i64s(&[1, -4], 5);
        let s = a.sqrt_trunc(5).unwrap();
        assert_eq!(ints(&s), vec![1, -2, -2, -4, -10, -28]);
        assert_eq!(s.mul_trunc(&s, 5).unwrap(), a);
        let sq = PowerSeries::from_i64s(&[1, 2, 1], 6);
        assert_eq!(ints(&sq.sqrt_trunc(6).unwrap()), vec![1, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn sqrt_rejects_bad_constant_term() {
        let a = PowerSeries::from_i64s(&[4, 1], 3);
        assert!(matches!(a.sqrt_trunc(3), Err(Error::Domain(_))));
    }

    #[test]
    fn coefficient_of_product_matches_full_product() {
        let a = PowerSeries::from_i64s(&[1, 2, 3, 4, 5], 4);
        let b = PowerSeries::from_i64s(&[5, -1, 0, 2, 1], 4);
        let full = a.mul_trunc(&b, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(&a.coeff_of_product(&b, n).unwrap(), full.coeff(n));
        }
    }

    #[test]
    fn fixed_point_solves_catalan_equation() {
        // B = x + B^2
        let b = PowerSeries::fixed_point(8, |f, n| {
            let sq = f.mul_trunc(f, n)?;
            Ok(&PowerSeries::monomial(ExactRational::one(), 1, n) + &sq)
        })
        .unwrap();
        assert_eq!(ints(&b), vec![0, 1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn fixed_point_reports_non_convergence() {
        // F = 1 + F has no fixed point
        let r = PowerSeries::fixed_point(3, |f, n| Ok(&PowerSeries::one(n) + f));
        assert_eq!(r, Err(Error::NonConvergence(4)));
    }

    #[test]
    fn display_is_readable() {
        let s = PowerSeries::from_i64s(&[1, -2, 0, 3], 3);
        assert_eq!(s.to_string(), "1 - 2*x + 3*x^3 + O(x^4)");
    }
}
