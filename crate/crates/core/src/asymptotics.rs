//! Limit probabilities via Bender's lemma, with numeric witnesses.
//!
//! With `C = A·B`, `b_{n-1}/b_n → b` and `A` analytic past `b`, the lemma
//! gives `c_n ~ A(b)·b_n`. Here `A` is the root-statistic GF, `B` the family
//! multiplier, and the family constant `K` turns `A(b)` into a fraction of
//! all vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{ExactRational, QuadraticNumber, RationalFunction};
use crate::family::{FamilyId, StatKind};
use crate::gf_census;

/// Sizes used by the convergence witness unless told otherwise.
pub const DEFAULT_SIZES: [usize; 3] = [150, 300, 600];

/// Largest size a convergence witness may request.
pub const SIZE_BUDGET: usize = 600;

/// Significant digits of the default decimal rendering.
pub const DEFAULT_DIGITS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitMethod {
    /// `A(b)·K` with `A(b) ≠ 0`.
    Bender,
    /// `A ≡ 0`: no tree has the statistic value, the limit is 0 outright.
    ForcedZero,
}

#[derive(Debug, Clone)]
pub struct BenderInput {
    pub a: RationalFunction,
    pub b: QuadraticNumber,
    pub k: QuadraticNumber,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenderLimit {
    pub value: QuadraticNumber,
    pub forced_zero: bool,
}

/// `A(b)·K`, exactly.
pub fn bender_limit(inp: &BenderInput) -> Result<BenderLimit> {
    if inp.b.signum() <= 0 {
        return Err(Error::Domain(format!("singularity {} must be positive", inp.b)));
    }
    if inp.k.signum() <= 0 {
        return Err(Error::Domain(format!("normalization {} must be positive", inp.k)));
    }
    if inp.a.is_zero() {
        return Ok(BenderLimit {
            value: QuadraticNumber::zero(),
            forced_zero: true,
        });
    }
    let poles = inp
        .a
        .denom()
        .count_roots_in(&QuadraticNumber::zero(), &inp.b);
    if poles > 0 {
        return Err(Error::LemmaInapplicable(format!(
            "{} has a pole in [0, {}]",
            inp.a, inp.b
        )));
    }
    let at_b = inp.a.eval(&inp.b)?;
    if at_b.is_zero() {
        return Err(Error::LemmaInapplicable(format!("{} vanishes at {}", inp.a, inp.b)));
    }
    Ok(BenderLimit {
        value: &at_b * &inp.k,
        forced_zero: false,
    })
}

/// `K(f)`: limit probability of value `k` is `R_k(b)·K(f)`.
///
/// Frozen after matching the extrapolated ratio of census counts to
/// `R_k(b)`; the integration tests re-run that check.
pub fn normalization_constant(f: FamilyId) -> QuadraticNumber {
    f.descriptor().normalization
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub sizes: Vec<usize>,
    /// Exact finite-size probabilities, as `p/q` strings.
    pub probabilities: Vec<String>,
    /// One-step extrapolate from each consecutive pair of sizes.
    pub pairwise: Vec<String>,
    /// Extrapolate from the two largest sizes.
    pub extrapolate: String,
    pub extrapolate_decimal: f64,
    pub gap: f64,
}

impl ConvergenceRecord {
    pub fn extrapolate_exact(&self) -> Result<ExactRational> {
        self.extrapolate.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticProbability {
    pub family: FamilyId,
    pub stat: StatKind,
    pub k: usize,
    #[serde(with = "quadratic_serde")]
    pub exact_value: QuadraticNumber,
    pub decimal: String,
    pub method: LimitMethod,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostics: Option<ConvergenceRecord>,
}

mod quadratic_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact_math::{QuadraticNumber, QuadraticParts};

    pub fn serialize<S: Serializer>(q: &QuadraticNumber, s: S) -> Result<S::Ok, S::Error> {
        QuadraticParts::from(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QuadraticNumber, D::Error> {
        let p = QuadraticParts::deserialize(d)?;
        QuadraticNumber::try_from(&p).map_err(serde::de::Error::custom)
    }
}

/// Exact limit of the fraction of vertices whose statistic equals `k`.
pub fn limit_probability(f: FamilyId, stat: StatKind, k: usize) -> Result<AsymptoticProbability> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let d = f.descriptor();
    let lim = bender_limit(&BenderInput {
        a: gf_census::root_stat_gf(f, stat, k)?,
        b: d.singularity,
        k: d.normalization,
    })?;
    let v = lim.value;
    if v.signum() < 0 || v > QuadraticNumber::one() {
        return Err(Error::Invariant(format!("limit {v} outside [0, 1]")));
    }
    Ok(AsymptoticProbability {
        family: f,
        stat,
        k,
        decimal: v.to_decimal(DEFAULT_DIGITS),
        exact_value: v,
        method: if lim.forced_zero {
            LimitMethod::ForcedZero
        } else {
            LimitMethod::Bender
        },
        diagnostics: None,
    })
}

impl AsymptoticProbability {
    /// Attaches a convergence record at `sizes`.
    pub fn with_diagnostics(mut self, sizes: &[usize]) -> Result<Self> {
        self.diagnostics = Some(richardson_check(self.family, self.stat, self.k, sizes)?);
        Ok(self)
    }
}

/// `(n2·p2 - n1·p1) / (n2 - n1)`: cancels an `O(1/n)` error term.
pub fn richardson_step(n1: usize, p1: &ExactRational, n2: usize, p2: &ExactRational) -> ExactRational {
    let a = ExactRational::from(n1 as u64);
    let b = ExactRational::from(n2 as u64);
    &(&(&b * p2) - &(&a * p1)) / &(&b - &a)
}

/// Finite-size probabilities at `sizes` and their one-step Richardson extrapolate.
pub fn richardson_check(f: FamilyId, stat: StatKind, k: usize, sizes: &[usize]) -> Result<ConvergenceRecord> {
    if sizes.len() < 2 {
        return Err(Error::Domain("need at least two sizes".into()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(format!("sizes {sizes:?} must increase strictly")));
    }
    if let Some(&n) = sizes.iter().find(|&&n| n > SIZE_BUDGET) {
        return Err(Error::Domain(format!("size {n} exceeds budget {SIZE_BUDGET}")));
    }
    let exact = limit_probability(f, stat, k)?.exact_value;
    let probs = sizes
        .iter()
        .map(|&n| gf_census::finite_probability(f, stat, k, n))
        .collect::<Result<Vec<_>>>()?;
    let pairwise: Vec<ExactRational> = (1..sizes.len())
        .map(|i| richardson_step(sizes[i - 1], &probs[i - 1], sizes[i], &probs[i]))
        .collect();
    let r = pairwise.last().expect("two sizes at least").clone();
    let gap = (&QuadraticNumber::from(r.clone()) - &exact).abs();
    Ok(ConvergenceRecord {
        sizes: sizes.to_vec(),
        probabilities: probs.iter().map(|p| p.to_string()).collect(),
        pairwise: pairwise.iter().map(|p| p.to_string()).collect(),
        extrapolate: r.to_string(),
        extrapolate_decimal: r.to_f64(),
        gap: gap.to_f64(),
    })
}

/// Floating evaluations of the published Schröder asymptotics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchroederAsymptotics {
    pub n: usize,
    pub s_n_approx: f64,
    pub l_n_approx: f64,
    pub v_n_approx: f64,
    pub leaf_prob: f64,
}

pub fn schroeder_closed_forms(n: usize) -> Result<SchroederAsymptotics> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let pi = std::f64::consts::PI;
    let r2 = std::f64::consts::SQRT_2;
    let growth = (3.0 + 8f64.sqrt()).ln();
    let m = (n - 1) as f64;
    let front = (1.0 + r2) / (2f64.powf(1.75) * pi.sqrt());
    // logs keep large n finite until the final exp
    let s = (front.ln() - 1.5 * m.ln() + m * growth).exp();
    let l = (front.ln() - 0.5 * m.ln() + m * growth).exp();
    let v = (n as f64 * growth - 2.25 * 2f64.ln() - 0.5 * (pi * n as f64).ln()).exp();
    Ok(SchroederAsymptotics {
        n,
        s_n_approx: s,
        l_n_approx: l,
        v_n_approx: v,
        leaf_prob: (1.0 + r2) / (r2 * (3.0 + 8f64.sqrt())),
    })
}

/// `(1+√2) / (√2·(3+√8))`, the published leaf-probability constant, exactly.
pub fn schroeder_leaf_constant() -> QuadraticNumber {
    let r2 = QuadraticNumber::sqrt_of(2);
    let num = &QuadraticNumber::one() + &r2;
    // √8 = 2√2
    let three_plus_r8 = QuadraticNumber::new(ExactRational::from(3), ExactRational::from(2), 2);
    &num / &(&r2 * &three_plus_r8)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub family: FamilyId,
    pub stat: StatKind,
    pub k_max: usize,
    #[serde(with = "quadratic_serde")]
    pub partial_sum: QuadraticNumber,
    #[serde(with = "quadratic_serde")]
    pub deficiency: QuadraticNumber,
    /// Running deficiency after each `k = 1..=k_max`.
    #[serde(skip)]
    pub deficiencies: Vec<QuadraticNumber>,
}

/// Sum of the limit probabilities for `k = 1..=k_max` and what remains of 1.
pub fn tightness_report(f: FamilyId, stat: StatKind, k_max: usize) -> Result<TightnessReport> {
    let mut sum = QuadraticNumber::zero();
    let mut deficiencies = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        sum = &sum + &limit_probability(f, stat, k)?.exact_value;
        deficiencies.push(&QuadraticNumber::one() - &sum);
    }
    Ok(TightnessReport {
        family: f,
        stat,
        k_max,
        deficiency: &QuadraticNumber::one() - &sum,
        partial_sum: sum,
        deficiencies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::Polynomial;

    fn q(n: i64, d: i64) -> QuadraticNumber {
        QuadraticNumber::from(ExactRational::from_ratio(n, d))
    }

    fn x() -> RationalFunction {
        RationalFunction::polynomial(Polynomial::from_i64s(&[0, 1]))
    }

    #[test]
    fn bender_examples() {
        let v = bender_limit(&BenderInput { a: x(), b: q(1, 3), k: q(1, 1) }).unwrap();
        assert_eq!(v.value, q(1, 3));
        assert!(!v.forced_zero);
        let z = bender_limit(&BenderInput {
            a: RationalFunction::zero(),
            b: q(1, 4),
            k: q(2, 1),
        })
        .unwrap();
        assert!(z.value.is_zero() && z.forced_zero);
        // x at 3 - 2√2 with K = 1 + √2/2 is 1 - √2/2
        let b = FamilyId::Schroeder.descriptor().singularity;
        let k = QuadraticNumber::new(ExactRational::one(), ExactRational::from_ratio(1, 2), 2);
        let v = bender_limit(&BenderInput { a: x(), b, k }).unwrap();
        assert_eq!(
            v.value,
            QuadraticNumber::new(ExactRational::one(), ExactRational::from_ratio(-1, 2), 2)
        );
    }

    #[test]
    fn bender_rejects_poles() {
        let a = RationalFunction::new(Polynomial::one(), Polynomial::from_i64s(&[1, -4])).unwrap();
        let r = bender_limit(&BenderInput { a: a.clone(), b: q(1, 3), k: q(1, 1) });
        assert!(matches!(r, Err(Error::LemmaInapplicable(_))));
        // the pole at 1/4 sits exactly on the endpoint
        let r = bender_limit(&BenderInput { a: a.clone(), b: q(1, 4), k: q(1, 1) });
        assert!(matches!(r, Err(Error::LemmaInapplicable(_))));
        assert!(bender_limit(&BenderInput { a, b: q(1, 5), k: q(1, 1) }).is_ok());
    }

    #[test]
    fn limit_examples() {
        let p = limit_probability(FamilyId::Motzkin, StatKind::LeavesInSubtree, 2).unwrap();
        assert_eq!(p.exact_value, q(1, 8));
        assert_eq!(p.decimal, "0.125");
        let p = limit_probability(FamilyId::FullBinary, StatKind::VerticesInSubtree, 7).unwrap();
        assert_eq!(p.exact_value, q(5, 128));
        assert_eq!(p.decimal, "0.0390625");
        let p = limit_probability(FamilyId::FullBinary, StatKind::VerticesInSubtree, 4).unwrap();
        assert_eq!(p.method, LimitMethod::ForcedZero);
        let p = limit_probability(FamilyId::Ordered, StatKind::LeavesInSubtree, 1).unwrap();
        assert_eq!(p.exact_value, q(2, 3));
        assert!(limit_probability(FamilyId::Ordered, StatKind::LeavesInSubtree, 0).is_err());
    }

    #[test]
    fn leaf_constant_is_exact() {
        assert_eq!(
            schroeder_leaf_constant(),
            QuadraticNumber::new(ExactRational::one(), ExactRational::from_ratio(-1, 2), 2)
        );
        let c = schroeder_closed_forms(10).unwrap();
        assert!((c.leaf_prob - 0.2928932).abs() < 1e-7);
        assert!(schroeder_closed_forms(1).is_err());
    }

    #[test]
    fn richardson_step_is_exact_on_first_order_error() {
        // p(n) = 1/3 + 1/n
        let p = |n: i64| &ExactRational::from_ratio(1, 3) + &ExactRational::from_ratio(1, n);
        assert_eq!(richardson_step(10, &p(10), 20, &p(20)), ExactRational::from_ratio(1, 3));
    }

    #[test]
    fn richardson_small() {
        let r = richardson_check(FamilyId::Motzkin, StatKind::VerticesInSubtree, 1, &[20, 40]).unwrap();
        assert_eq!(r.sizes, vec![20, 40]);
        assert!(r.gap < 1e-2);
        assert!(richardson_check(FamilyId::Motzkin, StatKind::VerticesInSubtree, 1, &[40, 20]).is_err());
        assert!(richardson_check(FamilyId::Motzkin, StatKind::VerticesInSubtree, 1, &[700, 800]).is_err());
        // value unreachable at these sizes
        let r = richardson_check(FamilyId::Ordered, StatKind::VerticesInSubtree, 30, &[10, 20]).unwrap();
        assert!(r.extrapolate_exact().unwrap().is_zero());
    }

    #[test]
    fn tightness_examples() {
        let t = tightness_report(FamilyId::FullBinary, StatKind::VerticesInSubtree, 1).unwrap();
        assert_eq!(t.partial_sum, q(1, 2));
        assert_eq!(t.deficiency, q(1, 2));
        let t = tightness_report(FamilyId::Motzkin, StatKind::VerticesInSubtree, 0).unwrap();
        assert!(t.partial_sum.is_zero());
    }

    #[test]
    fn exact_parts() {
        let p = limit_probability(FamilyId::Ordered, StatKind::LeavesInSubtree, 3).unwrap();
        let parts = crate::exact_math::QuadraticParts::from(&p.exact_value);
        assert_eq!(parts.rational, "10/243");
        assert_eq!(parts.radical, "0");
    }
}
