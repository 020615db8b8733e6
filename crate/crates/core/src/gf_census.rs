//! Generating functions for the four families and the vertex census.
//!
//! For every family the census GF of a statistic value `k` factors as
//! `R_k(x) · multiplier(x)`: `R_k` counts trees whose root has value `k`, and
//! the multiplier accounts for every position a subtree can hang from. The
//! root-removal argument behind the multiplier never looks at the statistic,
//! so each family has one multiplier shared by both statistics.
//!
//! Size variable: vertices for Motzkin and ordered trees, leaves for full
//! binary and Schröder trees. In bivariate series `y` marks the other unit.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_math::{
    fit_rational, fit_with_denominator, BivariateSeries, ExactRational, Polynomial, PowerSeries, QuadraticEquation,
    RationalFunction, Term,
};
use crate::family::{FamilyId, SizeUnit, StatKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum SeriesKind {
    Counting,
    Multiplier,
}

type SeriesMap = HashMap<(FamilyId, SeriesKind), Arc<PowerSeries>>;

fn series_cache() -> &'static Mutex<SeriesMap> {
    static CACHE: OnceLock<Mutex<SeriesMap>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn bivariate_cache() -> &'static Mutex<HashMap<FamilyId, Arc<BivariateSeries>>> {
    static CACHE: OnceLock<Mutex<HashMap<FamilyId, Arc<BivariateSeries>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached series are truncations of the same exact expansion, so any cached
/// order at least as large as the request answers it identically.
fn cached<F>(f: FamilyId, kind: SeriesKind, order: usize, compute: F) -> Result<PowerSeries>
where
    F: FnOnce(usize) -> Result<PowerSeries>,
{
    let key = (f, kind);
    if let Some(s) = series_cache().lock().expect("cache poisoned").get(&key) {
        if s.order() >= order {
            return s.truncate(order);
        }
    }
    // computed outside the lock; a racing thread computes the same values
    let s = compute(order)?;
    let mut guard = series_cache().lock().expect("cache poisoned");
    let keep = guard.get(&key).is_none_or(|old| old.order() < s.order());
    if keep {
        guard.insert(key, Arc::new(s.clone()));
    }
    Ok(s)
}

fn require_positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(Error::Domain(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn x(order: usize) -> PowerSeries {
    PowerSeries::monomial(ExactRational::one(), 1, order)
}

fn poly_series(c: &[i64], order: usize) -> PowerSeries {
    PowerSeries::from_i64s(c, order)
}

/// Square-root factor of each family's closed form: `1-2x-3x²`, `1-4x`, `1-4x`, `1-6x+x²`.
fn discriminant(f: FamilyId, order: usize) -> PowerSeries {
    match f {
        FamilyId::Motzkin => poly_series(&[1, -2, -3], order),
        FamilyId::Ordered | FamilyId::FullBinary => poly_series(&[1, -4], order),
        FamilyId::Schroeder => poly_series(&[1, -6, 1], order),
    }
}

/// Counting GF via the family's closed form. Cached.
pub fn counting_series(f: FamilyId, order: usize) -> Result<PowerSeries> {
    require_positive("truncation order", order)?;
    cached(f, SeriesKind::Counting, order, |n| counting_closed_form(f, n))
}

fn counting_closed_form(f: FamilyId, n: usize) -> Result<PowerSeries> {
    match f {
        FamilyId::Motzkin => {
            // (1 - x - sqrt(1-2x-3x²)) / (2x); one extra order is lost to the x
            let s = discriminant(f, n + 1).sqrt_trunc(n + 1)?;
            let num = &poly_series(&[1, -1], n + 1) - &s;
            num.div_trunc(&poly_series(&[0, 2], n + 1), n)
        }
        FamilyId::Ordered | FamilyId::FullBinary => {
            let s = discriminant(f, n).sqrt_trunc(n)?;
            Ok((&PowerSeries::one(n) - &s).scale(&ExactRational::from_ratio(1, 2)))
        }
        FamilyId::Schroeder => {
            // 2x / (1 + x + sqrt(1-6x+x²))
            let s = discriminant(f, n).sqrt_trunc(n)?;
            let den = &poly_series(&[1, 1], n) + &s;
            poly_series(&[0, 2], n).div_trunc(&den, n)
        }
    }
}

/// Counting GF by iterating the family's functional equation from zero.
pub fn fixed_point_solve(f: FamilyId, order: usize) -> Result<PowerSeries> {
    require_positive("truncation order", order)?;
    PowerSeries::fixed_point(order, |t, n| {
        let one = PowerSeries::one(n);
        match f {
            // M = x(1 + M + M²)
            FamilyId::Motzkin => {
                let inner = &(&one + t) + &t.mul_trunc(t, n)?;
                Ok(inner.shift_up(1))
            }
            // T = x / (1 - T)
            FamilyId::Ordered => x(n).div_trunc(&(&one - t), n),
            // B = x + B²
            FamilyId::FullBinary => Ok(&x(n) + &t.mul_trunc(t, n)?),
            // S = x + S² / (1 - S)
            FamilyId::Schroeder => {
                let sq = t.mul_trunc(t, n)?;
                Ok(&x(n) + &sq.div_trunc(&(&one - t), n)?)
            }
        }
    })
}

/// The quadratic functional equation solved by the bivariate GF.
///
/// Motzkin and ordered: `x` vertices, `y` leaves. Full binary and Schröder:
/// `x` leaves, `y` vertices. Ordered and Schröder use the forms obtained by
/// clearing the `1/(1-F)` of the geometric sum over children.
pub fn bivariate_equation(f: FamilyId) -> QuadraticEquation {
    let xy = vec![Term::new(1, 1, 1)];
    match f {
        // M = xy + xM + xM²
        FamilyId::Motzkin => QuadraticEquation {
            constant: xy,
            linear: vec![Term::new(1, 1, 0)],
            quadratic: vec![Term::new(1, 1, 0)],
        },
        // T² - (xy - x + 1)T + xy = 0
        FamilyId::Ordered => QuadraticEquation {
            constant: xy,
            linear: vec![Term::new(1, 1, 0), Term::new(-1, 1, 1)],
            quadratic: vec![Term::new(1, 0, 0)],
        },
        // B = xy + yB²
        FamilyId::FullBinary => QuadraticEquation {
            constant: xy,
            linear: vec![],
            quadratic: vec![Term::new(1, 0, 1)],
        },
        // V = xy + yV²/(1-V), times (1 - V)
        FamilyId::Schroeder => QuadraticEquation {
            constant: xy,
            linear: vec![Term::new(-1, 1, 1)],
            quadratic: vec![Term::new(1, 0, 0), Term::new(1, 0, 1)],
        },
    }
}

/// Exact truncated bivariate GF with grid `nx × ny`.
pub fn bivariate_series(f: FamilyId, nx: usize, ny: usize) -> Result<BivariateSeries> {
    require_positive("nx", nx)?;
    require_positive("ny", ny)?;
    bivariate_equation(f).solve(nx, ny)
}

/// Bivariate GF at least as large as `nx × ny`, shared across calls.
fn bivariate_cached(f: FamilyId, nx: usize, ny: usize) -> Result<Arc<BivariateSeries>> {
    let old = bivariate_cache().lock().expect("cache poisoned").get(&f).cloned();
    if let Some(b) = &old {
        if b.nx() >= nx && b.ny() >= ny {
            return Ok(b.clone());
        }
    }
    // grow geometrically so a sweep over k does not rebuild every step
    let (nx, ny) = match &old {
        Some(b) => (nx.max(b.nx() * 3 / 2), ny.max(b.ny() * 3 / 2)),
        None => (nx, ny),
    };
    let b = Arc::new(bivariate_series(f, nx, ny)?);
    let mut guard = bivariate_cache().lock().expect("cache poisoned");
    let keep = guard
        .get(&f)
        .is_none_or(|o| o.nx() < b.nx() || o.ny() < b.ny());
    if keep {
        guard.insert(f, b.clone());
    }
    Ok(b)
}

/// Root-statistic GF for a value `k` that the family's size unit counts
/// directly: the trees of size `k`, all of size `k`.
fn monomial_root(f: FamilyId, size: usize) -> Result<RationalFunction> {
    let c = counting_series(f, size)?.coeff(size).clone();
    Ok(RationalFunction::polynomial(Polynomial::monomial(c, size)))
}

/// GF, in the family's size variable, of trees whose root has statistic value `k`.
pub fn root_stat_gf(f: FamilyId, stat: StatKind, k: usize) -> Result<RationalFunction> {
    require_positive("k", k)?;
    match (f, stat) {
        (FamilyId::Motzkin | FamilyId::Ordered, StatKind::VerticesInSubtree)
        | (FamilyId::FullBinary | FamilyId::Schroeder, StatKind::LeavesInSubtree) => {
            monomial_root(f, k)
        }
        // k vertices means (k+1)/2 leaves; even k is impossible
        (FamilyId::FullBinary, StatKind::VerticesInSubtree) => {
            if k.is_multiple_of(2) {
                Ok(RationalFunction::zero())
            } else {
                monomial_root(f, k.div_ceil(2))
            }
        }
        // the closed forms give denominators dividing (1-x)^(2k-1)
        (FamilyId::Motzkin | FamilyId::Ordered, StatKind::LeavesInSubtree) => {
            let den = Polynomial::one_minus_x().pow(2 * k as u32 - 1);
            extract_root(f, k, 2 * k - 1, 2 * k - 1, Some(den))
        }
        (FamilyId::Schroeder, StatKind::VerticesInSubtree) => extract_root(f, k, k, 0, None),
    }
}

/// `[y^k]` of the bivariate GF, recognised as a rational function.
/// A known denominator is tried first; otherwise a general fit whose degree
/// bounds double on failure, a few times at most.
fn extract_root(
    f: FamilyId,
    k: usize,
    num_deg: usize,
    den_deg: usize,
    den_hint: Option<Polynomial>,
) -> Result<RationalFunction> {
    if let Some(den) = den_hint {
        let nx = num_deg + den.degree().unwrap_or(0) + crate::exact_math::FIT_SAFETY_MARGIN;
        let s = bivariate_cached(f, nx, k)?.coeff_y(k)?.truncate(nx)?;
        match fit_with_denominator(&s, &den, num_deg) {
            Err(Error::FitFailure { .. }) => {}
            other => return other,
        }
    }
    let (mut p, mut q) = (num_deg, den_deg);
    let mut last = None;
    for _ in 0..3 {
        let nx = p + q + crate::exact_math::FIT_SAFETY_MARGIN;
        let b = bivariate_cached(f, nx, k)?;
        let s = b.coeff_y(k)?.truncate(nx)?;
        match fit_rational(&s, p, q) {
            Ok(r) => return Ok(r),
            Err(e @ Error::FitFailure { .. }) => {
                last = Some(e);
                p = 2 * p + 1;
                q = 2 * q + 1;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Transfer factor from root GF to census GF, from each family's closed form. Cached.
pub fn multiplier_gf(f: FamilyId, order: usize) -> Result<PowerSeries> {
    require_positive("truncation order", order)?;
    cached(f, SeriesKind::Multiplier, order, |n| multiplier_closed_form(f, n))
}

fn multiplier_closed_form(f: FamilyId, n: usize) -> Result<PowerSeries> {
    let root = discriminant(f, n).sqrt_trunc(n)?;
    match f {
        // 1 / sqrt(1-2x-3x²)   and   1 / sqrt(1-4x)
        FamilyId::Motzkin | FamilyId::FullBinary => root.recip_trunc(n),
        // (1 + 1/sqrt(1-4x)) / 2
        FamilyId::Ordered => {
            let inv = root.recip_trunc(n)?;
            Ok((&PowerSeries::one(n) + &inv).scale(&ExactRational::from_ratio(1, 2)))
        }
        // (3 - x + sqrt(1-6x+x²)) / (4 sqrt(1-6x+x²))
        FamilyId::Schroeder => {
            let num = &poly_series(&[3, -1], n) + &root;
            num.div_trunc(&root.scale(&ExactRational::from(4)), n)
        }
    }
}

/// The multiplier as `1 / (1 - D)`, with `D` read off the root-removal
/// recurrence and the counting series from [`fixed_point_solve`]. An
/// independent route to [`multiplier_gf`].
pub fn multiplier_from_decomposition(f: FamilyId, order: usize) -> Result<PowerSeries> {
    let n = order;
    let t = fixed_point_solve(f, n)?;
    let one = PowerSeries::one(n);
    let d = match f {
        // x + 2xM: one child, or either of two children
        FamilyId::Motzkin => (&one + &t.scale(&ExactRational::from(2))).shift_up(1),
        // x · Σ m T^(m-1) = x / (1-T)²
        FamilyId::Ordered => {
            let omt = &one - &t;
            x(n).div_trunc(&omt.mul_trunc(&omt, n)?, n)?
        }
        // 2B
        FamilyId::FullBinary => t.scale(&ExactRational::from(2)),
        // Σ_{m≥2} m S^(m-1) = (2S - S²) / (1-S)²
        FamilyId::Schroeder => {
            let omt = &one - &t;
            let num = &t.scale(&ExactRational::from(2)) - &t.mul_trunc(&t, n)?;
            num.div_trunc(&omt.mul_trunc(&omt, n)?, n)?
        }
    };
    (&one - &d).recip_trunc(n)
}

/// Census GF: `[x^n]` counts vertices, over all trees of size `n`, whose
/// subtree statistic equals `k`.
pub fn census_series(f: FamilyId, stat: StatKind, k: usize, order: usize) -> Result<PowerSeries> {
    let root = root_stat_gf(f, stat, k)?.to_series(order)?;
    root.mul_trunc(&multiplier_gf(f, order)?, order)
}

/// One census coefficient, as a dot product instead of a full series product.
pub fn census_coefficient(f: FamilyId, stat: StatKind, k: usize, n: usize) -> Result<BigInt> {
    require_size(f, n)?;
    let root = root_stat_gf(f, stat, k)?.to_series(n)?;
    let c = root.coeff_of_product(&multiplier_gf(f, n)?, n)?;
    c.to_integer()
        .ok_or_else(|| Error::Invariant(format!("non-integer census count {c}")))
}

fn require_size(f: FamilyId, n: usize) -> Result<()> {
    if n < f.min_size() {
        Err(Error::Domain(format!(
            "{f} trees need size at least {}, got {n}",
            f.min_size()
        )))
    } else {
        Ok(())
    }
}

fn integer_coeff(s: &PowerSeries, n: usize) -> Result<BigInt> {
    let c = s.coeff(n);
    c.to_integer()
        .ok_or_else(|| Error::Invariant(format!("non-integer count {c} at x^{n}")))
}

/// Number of trees of size `n`.
pub fn tree_count(f: FamilyId, n: usize) -> Result<BigInt> {
    require_size(f, n)?;
    integer_coeff(&counting_series(f, n)?, n)
}

/// Total number of vertices over all trees of size `n`.
pub fn total_vertices(f: FamilyId, n: usize) -> Result<BigInt> {
    require_size(f, n)?;
    let count = tree_count(f, n)?;
    match f {
        FamilyId::Motzkin | FamilyId::Ordered => Ok(count * BigInt::from(n)),
        FamilyId::FullBinary => Ok(count * BigInt::from(2 * n - 1)),
        FamilyId::Schroeder => {
            let s = counting_series(f, n)?;
            let c = s.coeff_of_product(&multiplier_gf(f, n)?, n)?;
            c.to_integer()
                .ok_or_else(|| Error::Invariant(format!("non-integer vertex total {c}")))
        }
    }
}

/// Total number of leaves over all trees of size `n`.
pub fn total_leaves(f: FamilyId, n: usize) -> Result<BigInt> {
    require_size(f, n)?;
    match f.size_unit() {
        SizeUnit::Leaves => Ok(tree_count(f, n)? * BigInt::from(n)),
        SizeUnit::Vertices => {
            // a tree on n vertices has at most n leaves
            let b = bivariate_cached(f, n, n)?;
            integer_coeff(&b.y_moment().truncate(n)?, n)
        }
    }
}

/// Exact fraction of vertices, over all trees of size `n`, whose statistic equals `k`.
pub fn finite_probability(f: FamilyId, stat: StatKind, k: usize, n: usize) -> Result<ExactRational> {
    require_positive("k", k)?;
    require_size(f, n)?;
    let total = total_vertices(f, n)?;
    if total == BigInt::from(0) {
        return Err(Error::Domain(format!("no {f} trees of size {n}")));
    }
    let count = census_coefficient(f, stat, k, n)?;
    Ok(ExactRational::new(count, total))
}
