//! Rational functions `P(x)/Q(x)` and their recovery from series prefixes.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::quadratic::QuadraticNumber;
use super::rational::ExactRational;
use super::series::PowerSeries;
use crate::error::{Error, Result};

/// Extra coefficients demanded by [`fit_rational`] beyond the unknown count.
pub const FIT_SAFETY_MARGIN: usize = 8;

/// A reduced quotient of polynomials. The denominator is normalised to
/// constant term 1 when that term is nonzero, otherwise to be monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numer: Polynomial,
    denom: Polynomial,
}

impl RationalFunction {
    pub fn new(numer: Polynomial, denom: Polynomial) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        if numer.is_zero() {
            return Ok(Self::zero());
        }
        let (mut numer, mut denom) = match cancel_one_minus_x(&numer, &denom) {
            Some(pair) => pair,
            None => {
                let g = Polynomial::gcd(&numer, &denom);
                (numer.div_rem(&g)?.0, denom.div_rem(&g)?.0)
            }
        };
        let norm = if !denom.coeff(0).is_zero() {
            denom.coeff(0)
        } else {
            denom.leading().cloned().expect("denominator is nonzero")
        };
        let inv = norm.recip()?;
        numer = numer.scale(&inv);
        denom = denom.scale(&inv);
        Ok(RationalFunction { numer, denom })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalFunction {
            numer: p,
            denom: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::polynomial(Polynomial::zero())
    }

    pub fn numer(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.degree() == Some(0)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        RationalFunction::new(self.numer.scale(c), self.denom.clone()).expect("denominator unchanged")
    }

    /// Taylor expansion at 0 through `order`.
    pub fn to_series(&self, order: usize) -> Result<PowerSeries> {
        let pad = self.denom.degree().unwrap_or(0);
        let n = self.numer.to_series(order + pad);
        let d = self.denom.to_series(order + pad);
        n.div_trunc(&d, order)
    }

    /// Exact value at `point`; a zero denominator there is a pole error.
    pub fn eval(&self, point: &QuadraticNumber) -> Result<QuadraticNumber> {
        let d = self.denom.eval(point);
        if d.is_zero() {
            return Err(Error::Pole(point.to_string()));
        }
        Ok(&self.numer.eval(point) / &d)
    }

    /// Splits the denominator as `(1-x)^m · rest`.
    pub fn denominator_factors(&self) -> (u32, Polynomial) {
        let mut m = 0;
        let mut rest = self.denom.clone();
        let one_minus_x = Polynomial::one_minus_x();
        while rest.degree().unwrap_or(0) > 0 && rest.eval_rational(&ExactRational::one()).is_zero() {
            rest = rest.div_rem(&one_minus_x).expect("nonzero divisor").0;
            m += 1;
        }
        (m, rest)
    }

    /// Plain-text closed form, e.g. `5*x^7/(1-x)^7` or `(x^4+x^5)/(1-x)^5`.
    pub fn render(&self) -> String {
        if self.numer.is_zero() {
            return "0".to_string();
        }
        let (m, rest) = self.denominator_factors();
        let (numer, rest) = {
            // keep the leftover factor with a unit constant term
            let c = rest.coeff(0);
            if !c.is_zero() && !c.is_one() {
                let inv = c.recip().expect("nonzero");
                (self.numer.scale(&inv), rest.scale(&inv))
            } else {
                (self.numer.clone(), rest)
            }
        };
        let rest_is_one = rest == Polynomial::one();
        let num = numer.render();
        if m == 0 && rest_is_one {
            return num;
        }
        let num = if numer.term_count() > 1 {
            format!("({num})")
        } else {
            num
        };
        let power = match m {
            0 => String::new(),
            1 => "(1-x)".to_string(),
            _ => format!("(1-x)^{m}"),
        };
        let den = match (power.is_empty(), rest_is_one) {
            (false, true) => power,
            (true, false) => format!("({})", rest.render()),
            (false, false) => format!("({power}*({}))", rest.render()),
            (true, true) => unreachable!(),
        };
        format!("{num}/{den}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// When `den = c·(1-x)^m` the only possible common factor is `1 - x`, and
/// evaluation at 1 finds it without a Euclidean gcd over the rationals.
fn cancel_one_minus_x(num: &Polynomial, den: &Polynomial) -> Option<(Polynomial, Polynomial)> {
    let d = den.degree()?;
    let c = den.coeff(0);
    if c.is_zero() || *den != Polynomial::one_minus_x().pow(d as u32).scale(&c) {
        return None;
    }
    let one = ExactRational::one();
    let mut num = num.clone();
    let mut m = d;
    while m > 0 && num.eval_rational(&one).is_zero() {
        num = num.div_rem(&Polynomial::one_minus_x()).ok()?.0;
        m -= 1;
    }
    Some((num, Polynomial::one_minus_x().pow(m as u32).scale(&c)))
}

/// Coefficient lists as strings, for json output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionParts {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

impl From<&RationalFunction> for RationalFunctionParts {
    fn from(r: &RationalFunction) -> Self {
        RationalFunctionParts {
            numerator: r.numer.coeffs().iter().map(|c| c.to_string()).collect(),
            denominator: r.denom.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// Solves `M·u = rhs` by Gaussian elimination; free unknowns are set to zero.
/// The pivot is the first row (lowest index) with a nonzero entry in the column.
/// Returns `None` if the system is inconsistent.
fn solve_linear(mut m: Vec<Vec<ExactRational>>, mut rhs: Vec<ExactRational>, cols: usize) -> Option<Vec<ExactRational>> {
    let rows = m.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = m[r][c].recip().expect("pivot is nonzero");
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] -= &t;
            }
            let t = &f * &rhs[r];
            rhs[i] -= &t;
        }
        pivots.push((r, c));
        r += 1;
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut u = vec![ExactRational::zero(); cols];
    for (row, col) in pivots {
        u[col] = rhs[row].clone();
    }
    Some(u)
}

/// Finds `P/Q` with `deg P <= max_num_deg`, `deg Q <= max_den_deg`, `Q(0) = 1`
/// whose expansion agrees with `s` through its full truncation order.
///
/// Every coefficient past the numerator degree gives one linear equation in
/// the unknown denominator coefficients; using all of them (not just a square
/// Padé block) makes the match exact through the order of `s`.
pub fn fit_rational(s: &PowerSeries, max_num_deg: usize, max_den_deg: usize) -> Result<RationalFunction> {
    let n = s.order();
    let needed = max_num_deg + max_den_deg + FIT_SAFETY_MARGIN;
    if n < needed {
        return Err(Error::Truncation {
            requested: needed,
            available: n,
        });
    }
    let c = s.coeffs();
    let q = max_den_deg;
    let p = max_num_deg;
    // sum_{j=1}^{q} Q_j c_{k-j} = -c_k   for k = p+1 ..= n
    let mut rows = Vec::with_capacity(n - p);
    let mut rhs = Vec::with_capacity(n - p);
    for k in p + 1..=n {
        let row: Vec<ExactRational> = (1..=q)
            .map(|j| if j <= k { c[k - j].clone() } else { ExactRational::zero() })
            .collect();
        rows.push(row);
        rhs.push(-&c[k]);
    }
    let fail = Error::FitFailure {
        num_deg: max_num_deg,
        den_deg: max_den_deg,
    };
    let tail = if q == 0 {
        if rhs.iter().any(|v| !v.is_zero()) {
            return Err(fail);
        }
        Vec::new()
    } else {
        solve_linear(rows, rhs, q).ok_or(fail.clone())?
    };
    let mut den = vec![ExactRational::one()];
    den.extend(tail);
    let num: Vec<ExactRational> = (0..=p)
        .map(|k| ExactRational::dot((0..=q.min(k)).map(|j| (&den[j], &c[k - j]))))
        .collect();
    let r = RationalFunction::new(Polynomial::new(num), Polynomial::new(den))?;
    if r.to_series(n)? != *s {
        return Err(fail);
    }
    Ok(r)
}

/// `P/den` with `deg P <= max_num_deg`, when `s·den` is such a polynomial
/// through the order of `s`. Cheap when the denominator shape is known.
pub fn fit_with_denominator(s: &PowerSeries, den: &Polynomial, max_num_deg: usize) -> Result<RationalFunction> {
    let n = s.order();
    let dd = den.degree().unwrap_or(0);
    let needed = max_num_deg + dd + FIT_SAFETY_MARGIN;
    if n < needed {
        return Err(Error::Truncation {
            requested: needed,
            available: n,
        });
    }
    let prod = s.mul_trunc(&den.to_series(n), n)?;
    if prod.coeffs()[max_num_deg + 1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::FitFailure {
            num_deg: max_num_deg,
            den_deg: dd,
        });
    }
    let num = Polynomial::new(prod.coeffs()[..=max_num_deg].to_vec());
    RationalFunction::new(num, den.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_i64s(num), Polynomial::from_i64s(den)).unwrap()
    }

    #[test]
    fn reduces_common_factors() {
        // (x - x^2) / (1 - 2x + x^2) = x / (1 - x)
        let r = rf(&[0, 1, -1], &[1, -2, 1]);
        assert_eq!(r, rf(&[0, 1], &[1, -1]));
        assert_eq!(r.render(), "x/(1-x)");
    }

    #[test]
    fn fits_with_known_denominator() {
        let target = rf(&[0, 0, 0, 0, 1, 1], &[1, -1]);
        let s = target.to_series(30).unwrap();
        let den = Polynomial::one_minus_x().pow(5);
        assert_eq!(fit_with_denominator(&s, &den, 9).unwrap(), target);
        assert!(matches!(
            fit_with_denominator(&s, &Polynomial::one(), 9),
            Err(Error::FitFailure { .. })
        ));
    }

    #[test]
    fn fits_geometric_series() {
        let s = PowerSeries::from_i64s(&[1; 20], 19);
        let r = fit_rational(&s, 2, 2).unwrap();
        assert_eq!(r, rf(&[1], &[1, -1]));
    }

    #[test]
    fn fit_fails_when_degrees_too_small() {
        // 1/(1-x)^3 needs a cubic denominator
        let s = rf(&[1], &[1, -1]).to_series(30).unwrap();
        let s3 = s.mul_trunc(&s, 30).unwrap().mul_trunc(&s, 30).unwrap();
        assert!(matches!(fit_rational(&s3, 1, 2), Err(Error::FitFailure { .. })));
        assert_eq!(fit_rational(&s3, 1, 3).unwrap(), rf(&[1], &[1, -3, 3, -1]));
    }

    #[test]
    fn fit_requires_margin() {
        let s = PowerSeries::one(10);
        assert!(matches!(fit_rational(&s, 2, 2), Err(Error::Truncation { .. })));
    }

    #[test]
    fn fit_recovers_polynomials() {
        let s = PowerSeries::from_i64s(&[0, 0, 0, 0, 5, 9, 1], 20);
        let r = fit_rational(&s, 7, 0).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.render(), "5*x^4+9*x^5+x^6");
    }

    #[test]
    fn evaluation_examples() {
        let third = QuadraticNumber::from(ExactRational::from_ratio(1, 3));
        assert_eq!(
            rf(&[0, 1], &[1, -1]).eval(&third).unwrap(),
            QuadraticNumber::from(ExactRational::from_ratio(1, 2))
        );
        let quarter = QuadraticNumber::from(ExactRational::from_ratio(1, 4));
        let r = rf(&[0, 0, 0, 1], &[1, -1]);
        let r3 = RationalFunction::new(r.numer().clone(), r.denom().pow(3)).unwrap();
        assert_eq!(r3.eval(&quarter).unwrap(), QuadraticNumber::from(ExactRational::from_ratio(1, 27)));
        let b = QuadraticNumber::new(ExactRational::from(3), ExactRational::from(-2), 2);
        assert_eq!(rf(&[0, 1], &[1]).eval(&b).unwrap(), b);
        assert!(matches!(rf(&[1], &[1, -1]).eval(&QuadraticNumber::one()), Err(Error::Pole(_))));
    }

    #[test]
    fn renders_closed_forms() {
        let r = RationalFunction::new(
            Polynomial::from_i64s(&[0, 0, 0, 0, 0, 1, 3, 1]),
            Polynomial::one_minus_x().pow(7),
        )
        .unwrap();
        assert_eq!(r.render(), "(x^5+3*x^6+x^7)/(1-x)^7");
        assert_eq!(rf(&[0, 0, 5], &[1]).render(), "5*x^2");
        assert_eq!(rf(&[1], &[1, -1, -1]).render(), "1/(1-x-x^2)");
        assert_eq!(RationalFunction::zero().render(), "0");
    }
}
