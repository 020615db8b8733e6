//! Truncated bivariate series and quadratic fixed-point equations over them.

use std::ops::{Add, Sub};

use super::rational::ExactRational;
use super::series::PowerSeries;
use crate::error::{Error, Result};

/// Coefficients of `x^n y^j` for `n <= nx`, `j <= ny`, stored row by row in `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariateSeries {
    nx: usize,
    ny: usize,
    coeffs: Vec<ExactRational>,
}

/// A polynomial in y, truncated at the grid's `ny`.
type Row = Vec<ExactRational>;

fn row_mul_acc(acc: &mut Row, a: &Row, b: &Row, ny: usize) {
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for j in 0..=ny - i {
            if !b[j].is_zero() {
                acc[i + j] += &(ai * &b[j]);
            }
        }
    }
}

impl BivariateSeries {
    pub fn zero(nx: usize, ny: usize) -> Self {
        BivariateSeries {
            nx,
            ny,
            coeffs: vec![ExactRational::zero(); (nx + 1) * (ny + 1)],
        }
    }

    fn from_rows(rows: Vec<Row>, ny: usize) -> Self {
        let nx = rows.len() - 1;
        BivariateSeries {
            nx,
            ny,
            coeffs: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Coefficient of `x^n y^j`; panics outside the grid.
    pub fn coeff(&self, n: usize, j: usize) -> &ExactRational {
        assert!(n <= self.nx && j <= self.ny, "({n}, {j}) outside the grid");
        &self.coeffs[n * (self.ny + 1) + j]
    }

    pub fn set(&mut self, n: usize, j: usize, v: ExactRational) {
        assert!(n <= self.nx && j <= self.ny, "({n}, {j}) outside the grid");
        self.coeffs[n * (self.ny + 1) + j] = v;
    }

    fn row(&self, n: usize) -> &[ExactRational] {
        &self.coeffs[n * (self.ny + 1)..(n + 1) * (self.ny + 1)]
    }

    /// `[y^k] F` as a series in x of order `nx`.
    pub fn coeff_y(&self, k: usize) -> Result<PowerSeries> {
        if k > self.ny {
            return Err(Error::IndexOutOfRange {
                index: k,
                max: self.ny,
            });
        }
        let c = (0..=self.nx).map(|n| self.coeff(n, k).clone()).collect();
        Ok(PowerSeries::from_coeffs(c, self.nx))
    }

    /// `F(x, y0)`: row `n` summed with weights `y0^j`. Only meaningful when
    /// `ny` is past the largest y-degree that can occur in rows `0..=nx`.
    pub fn substitute_y(&self, y0: &ExactRational) -> PowerSeries {
        let c = (0..=self.nx)
            .map(|n| {
                let mut acc = ExactRational::zero();
                for v in self.row(n).iter().rev() {
                    acc = &(&acc * y0) + v;
                }
                acc
            })
            .collect();
        PowerSeries::from_coeffs(c, self.nx)
    }

    /// `F(x, 1)`.
    pub fn marginal(&self) -> PowerSeries {
        let c = (0..=self.nx).map(|n| self.row(n).iter().sum()).collect();
        PowerSeries::from_coeffs(c, self.nx)
    }

    /// `∂F/∂y` at `y = 1`: row `n` gives `Σ_j j·[x^n y^j]`.
    pub fn y_moment(&self) -> PowerSeries {
        let c = (0..=self.nx)
            .map(|n| {
                self.row(n)
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * &ExactRational::from(j as i64))
                    .sum()
            })
            .collect();
        PowerSeries::from_coeffs(c, self.nx)
    }

    /// Product truncated to the smaller grid.
    pub fn mul(&self, other: &Self) -> Self {
        let nx = self.nx.min(other.nx);
        let ny = self.ny.min(other.ny);
        let mut out = Self::zero(nx, ny);
        for n1 in 0..=nx {
            for j1 in 0..=ny {
                let a = self.coeff(n1, j1);
                if a.is_zero() {
                    continue;
                }
                for n2 in 0..=nx - n1 {
                    for j2 in 0..=ny - j1 {
                        let b = other.coeff(n2, j2);
                        if !b.is_zero() {
                            let idx = (n1 + n2) * (ny + 1) + j1 + j2;
                            out.coeffs[idx] += &(a * b);
                        }
                    }
                }
            }
        }
        out
    }

    fn binop(&self, other: &Self, f: impl Fn(&ExactRational, &ExactRational) -> ExactRational) -> Self {
        let nx = self.nx.min(other.nx);
        let ny = self.ny.min(other.ny);
        let mut out = Self::zero(nx, ny);
        for n in 0..=nx {
            for j in 0..=ny {
                out.set(n, j, f(self.coeff(n, j), other.coeff(n, j)));
            }
        }
        out
    }
}

impl<'a> Add<&'a BivariateSeries> for &'a BivariateSeries {
    type Output = BivariateSeries;
    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        self.binop(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a BivariateSeries> for &'a BivariateSeries {
    type Output = BivariateSeries;
    fn sub(self, rhs: &BivariateSeries) -> BivariateSeries {
        self.binop(rhs, |a, b| a - b)
    }
}

/// A monomial `coeff · x^x_exp · y^y_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub x_exp: usize,
    pub y_exp: usize,
    pub coeff: ExactRational,
}

impl Term {
    pub fn new(coeff: i64, x_exp: usize, y_exp: usize) -> Self {
        Term {
            x_exp,
            y_exp,
            coeff: ExactRational::from(coeff),
        }
    }
}

/// `F = C + L·F + Q·F²` with small polynomial coefficients `C`, `L`, `Q`.
///
/// Well posed when `C` and `L` have no `x^0` terms: then row `n` of the right
/// side only reads rows `< n` of `F` (`F` itself has no row 0), and the zero
/// series iterates to the unique solution with `F(0, y) = 0`.
#[derive(Clone, Debug)]
pub struct QuadraticEquation {
    pub constant: Vec<Term>,
    pub linear: Vec<Term>,
    pub quadratic: Vec<Term>,
}

impl QuadraticEquation {
    fn check(&self) -> Result<()> {
        if self.constant.iter().chain(&self.linear).any(|t| t.x_exp == 0) {
            return Err(Error::Domain(
                "constant and linear parts must carry a factor of x".into(),
            ));
        }
        Ok(())
    }

    fn add_shifted(acc: &mut Row, t: &Term, src: &[ExactRational], ny: usize) {
        for (j, v) in src.iter().enumerate() {
            if j + t.y_exp > ny {
                break;
            }
            if !v.is_zero() {
                acc[j + t.y_exp] += &(&t.coeff * v);
            }
        }
    }

    /// Row-by-row evaluation of the fixed point.
    ///
    /// Each pass computes row `n` of the right-hand side from the rows that
    /// are already final. This is the Gauss-Seidel ordering of the plain
    /// iteration in [`QuadraticEquation::iterate`]: both reach the same series,
    /// but this one forms each row of `F²` once instead of once per iteration.
    pub fn solve(&self, nx: usize, ny: usize) -> Result<BivariateSeries> {
        self.check()?;
        let zero_row = || vec![ExactRational::zero(); ny + 1];
        let mut rows: Vec<Row> = vec![zero_row()];
        let mut squares: Vec<Row> = vec![zero_row()];
        for n in 1..=nx {
            // (F²)_n reads rows 1..n-1 only, since row 0 vanishes
            let mut sq = zero_row();
            for i in 1..=(n - 1) / 2 {
                row_mul_acc(&mut sq, &rows[i], &rows[n - i], ny);
            }
            for v in sq.iter_mut() {
                *v = &*v * &ExactRational::from(2);
            }
            if n % 2 == 0 {
                row_mul_acc(&mut sq, &rows[n / 2], &rows[n / 2], ny);
            }
            squares.push(sq);

            let mut next = zero_row();
            for t in &self.constant {
                if t.x_exp == n && t.y_exp <= ny {
                    next[t.y_exp] += &t.coeff;
                }
            }
            for t in &self.linear {
                if t.x_exp <= n {
                    Self::add_shifted(&mut next, t, &rows[n - t.x_exp], ny);
                }
            }
            for t in &self.quadratic {
                if t.x_exp <= n {
                    Self::add_shifted(&mut next, t, &squares[n - t.x_exp], ny);
                }
            }
            rows.push(next);
        }
        Ok(BivariateSeries::from_rows(rows, ny))
    }

    /// Plain iteration `F ← C + L·F + Q·F²` from zero until nothing changes.
    /// Quadratic in work per step; kept as the reference for [`Self::solve`].
    pub fn iterate(&self, nx: usize, ny: usize) -> Result<BivariateSeries> {
        self.check()?;
        let poly = |terms: &[Term]| {
            let mut p = BivariateSeries::zero(nx, ny);
            for t in terms {
                if t.x_exp <= nx && t.y_exp <= ny {
                    let v = p.coeff(t.x_exp, t.y_exp) + &t.coeff;
                    p.set(t.x_exp, t.y_exp, v);
                }
            }
            p
        };
        let c = poly(&self.constant);
        let l = poly(&self.linear);
        let q = poly(&self.quadratic);
        let max_iter = nx + 2;
        let mut f = BivariateSeries::zero(nx, ny);
        for _ in 0..max_iter {
            let sq = f.mul(&f);
            let next = &(&c + &l.mul(&f)) + &q.mul(&sq);
            if next == f {
                return Ok(f);
            }
            f = next;
        }
        Err(Error::NonConvergence(max_iter))
    }
}
