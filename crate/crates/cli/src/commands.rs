use std::path::Path;

use serde::{Deserialize, Serialize};

use planar_census::asymptotics::{
    limit_probability, tightness_report, ConvergenceRecord, LimitMethod, DEFAULT_SIZES,
};
use planar_census::exact_math::{QuadraticNumber, QuadraticParts, RationalFunctionParts};
use planar_census::oracle::{aggregate_census, verify_family, VerifyReport};
use planar_census::reference::{errata_for, published_row, published_table, ErrataEntry};
use planar_census::{gf_census, reference, FamilyId, StatKind};

use crate::args::{CoeffsArgs, ProbArgs, SeriesKind, TableArgs, TightnessArgs, VerifyArgs};
use crate::render::Report;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub numerator: String,
    pub denominator: String,
}

fn fraction(q: &QuadraticNumber) -> Option<Fraction> {
    q.is_rational().then(|| Fraction {
        numerator: q.rational_part().numer().to_string(),
        denominator: q.rational_part().denom().to_string(),
    })
}

fn same_gf(a: &str, b: &str) -> bool {
    let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    strip(a) == strip(b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub k: usize,
    pub root_gf: String,
    pub root_gf_parts: RationalFunctionParts,
    pub exact: String,
    pub exact_parts: QuadraticParts,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fraction: Option<Fraction>,
    pub decimal: String,
    pub method: LimitMethod,
    pub published_root_gf: Option<String>,
    pub published: Option<String>,
    /// Value within one unit of the last printed digit.
    pub agrees: Option<bool>,
    pub gf_agrees: Option<bool>,
    pub errata: Vec<String>,
}

impl TableRow {
    pub fn disagrees(&self) -> bool {
        self.agrees == Some(false) || self.gf_agrees == Some(false)
    }

    fn note(&self) -> String {
        if !self.errata.is_empty() {
            format!("errata: {}", self.errata.join(", "))
        } else if self.disagrees() {
            "differs from printed".into()
        } else {
            String::new()
        }
    }
}

#[derive(Debug, Serialize)]
struct TableOutput<'a> {
    family: FamilyId,
    stat: StatKind,
    rows: &'a [TableRow],
}

pub fn table_rows(f: FamilyId, stat: StatKind, ks: &[usize], digits: u32, printed_places: bool) -> Result<Vec<TableRow>, CliError> {
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let p = limit_probability(f, stat, k)?;
        let gf = gf_census::root_stat_gf(f, stat, k)?;
        let printed = published_row(f, stat, k);
        let decimal = match printed {
            Some(r) if printed_places => p.exact_value.to_fixed(r.places()),
            _ => p.exact_value.to_decimal(digits),
        };
        let root_gf = gf.render();
        rows.push(TableRow {
            k,
            root_gf_parts: RationalFunctionParts::from(&gf),
            exact: p.exact_value.to_string(),
            exact_parts: QuadraticParts::from(&p.exact_value),
            fraction: fraction(&p.exact_value),
            decimal,
            method: p.method,
            published_root_gf: printed.map(|r| r.root_gf.to_string()),
            published: printed.map(|r| r.value.to_string()),
            agrees: printed.map(|r| r.agrees_with(&p.exact_value)),
            gf_agrees: printed.map(|r| same_gf(r.root_gf, &root_gf)),
            errata: errata_for(f, stat, k).into_iter().map(|e| e.id).collect(),
            root_gf,
        });
    }
    Ok(rows)
}

pub fn table(a: &TableArgs) -> Result<Report, CliError> {
    let (f, stat) = (a.sel.family, a.sel.stat);
    let ks: Vec<usize> = match &a.k {
        Some(r) => r.values().to_vec(),
        None => published_table(f, stat)
            .map(|t| t.rows.iter().map(|r| r.k).collect())
            .unwrap_or_else(|| (1..=6).collect()),
    };
    let rows = table_rows(f, stat, &ks, a.precision, a.paper_precision)?;
    let mut rep = Report::new(
        vec!["k", "root_gf", "exact", "decimal", "method", "published_root_gf", "published", "agrees", "note"],
        &TableOutput { family: f, stat, rows: &rows },
    )?;
    let opt = |s: &Option<String>| s.clone().unwrap_or_default();
    for r in &rows {
        rep.rows.push(vec![
            r.k.to_string(),
            r.root_gf.clone(),
            r.exact.clone(),
            r.decimal.clone(),
            method_name(r.method).into(),
            opt(&r.published_root_gf),
            opt(&r.published),
            r.agrees.map(|b| if b && r.gf_agrees != Some(false) { "yes" } else { "no" }).unwrap_or("").into(),
            r.note(),
        ]);
    }
    Ok(rep)
}

fn method_name(m: LimitMethod) -> &'static str {
    match m {
        LimitMethod::Bender => "bender",
        LimitMethod::ForcedZero => "forced-zero",
    }
}

#[derive(Debug, Serialize)]
struct CoeffRow {
    n: usize,
    value: String,
}

#[derive(Debug, Serialize)]
struct CoeffsOutput {
    family: FamilyId,
    series: SeriesKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    stat: Option<StatKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    order: usize,
    coefficients: Vec<CoeffRow>,
}

pub fn coeffs(a: &CoeffsArgs) -> Result<Report, CliError> {
    let order = match (a.order, &a.n) {
        (Some(o), _) => o,
        (None, Some(n)) => n.max(),
        (None, None) => 10,
    };
    let ns: Vec<usize> = match &a.n {
        Some(n) => n.values().to_vec(),
        None => (0..=order).collect(),
    };
    if let Some(&bad) = ns.iter().find(|&&n| n > order) {
        return Err(CliError::Usage(format!("--n {bad} is beyond --order {order}")));
    }
    let (stat, k) = match a.series {
        SeriesKind::Census => match (a.stat, a.k) {
            (Some(s), Some(k)) => (Some(s), Some(k)),
            _ => return Err(CliError::Usage("the census series needs --stat and --k".into())),
        },
        _ => {
            if a.stat.is_some() || a.k.is_some() {
                return Err(CliError::Usage("--stat and --k only apply to the census series".into()));
            }
            (None, None)
        }
    };
    let s = match a.series {
        SeriesKind::Counting => gf_census::counting_series(a.family, order)?,
        SeriesKind::Multiplier => gf_census::multiplier_gf(a.family, order)?,
        SeriesKind::Census => {
            let (s, k) = (stat.unwrap_or(StatKind::VerticesInSubtree), k.unwrap_or(0));
            gf_census::census_series(a.family, s, k, order)?
        }
    };
    let out = CoeffsOutput {
        family: a.family,
        series: a.series,
        stat,
        k,
        order,
        coefficients: ns.iter().map(|&n| CoeffRow { n, value: s.coeff(n).to_string() }).collect(),
    };
    let mut rep = Report::new(vec!["n", "coefficient"], &out)?;
    rep.rows = out.coefficients.iter().map(|c| vec![c.n.to_string(), c.value.clone()]).collect();
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub qualifying: u64,
    pub vertices: u64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbRecord {
    pub family: FamilyId,
    pub stat: StatKind,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub exact: String,
    pub exact_parts: QuadraticParts,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fraction: Option<Fraction>,
    pub decimal: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<LimitMethod>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub published: Option<String>,
    #[serde(default)]
    pub errata: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostics: Option<ConvergenceRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleCheck>,
}

pub fn prob_record(a: &ProbArgs) -> Result<ProbRecord, CliError> {
    let (f, stat, k) = (a.sel.family, a.sel.stat, a.k);
    if let Some(n) = a.n {
        let p = gf_census::finite_probability(f, stat, k, n)?;
        let q = QuadraticNumber::from(p.clone());
        let oracle = if a.check {
            let t = aggregate_census(f, n)?;
            let qualifying = t.count(stat, k);
            let vertices = t.total_vertices;
            let agrees = planar_census::exact_math::ExactRational::from_ratio(qualifying as i64, vertices as i64) == p;
            Some(OracleCheck { qualifying, vertices, agrees })
        } else {
            None
        };
        return Ok(ProbRecord {
            family: f,
            stat,
            k,
            n: Some(n),
            exact: q.to_string(),
            exact_parts: QuadraticParts::from(&q),
            fraction: fraction(&q),
            decimal: q.to_decimal(a.precision),
            method: None,
            published: None,
            errata: Vec::new(),
            diagnostics: None,
            oracle,
        });
    }
    let mut p = limit_probability(f, stat, k)?;
    if a.check {
        p = p.with_diagnostics(&DEFAULT_SIZES)?;
    }
    let v = &p.exact_value;
    Ok(ProbRecord {
        family: f,
        stat,
        k,
        n: None,
        exact: v.to_string(),
        exact_parts: QuadraticParts::from(v),
        fraction: fraction(v),
        decimal: v.to_decimal(a.precision),
        method: Some(p.method),
        published: published_row(f, stat, k).map(|r| r.value.to_string()),
        errata: errata_for(f, stat, k).into_iter().map(|e| e.id).collect(),
        diagnostics: p.diagnostics.clone(),
        oracle: None,
    })
}

pub fn prob(a: &ProbArgs) -> Result<Report, CliError> {
    let r = prob_record(a)?;
    let mut rep = Report::new(
        vec!["family", "stat", "k", "n", "exact", "decimal", "method", "published", "errata"],
        &r,
    )?;
    rep.rows.push(vec![
        r.family.to_string(),
        r.stat.to_string(),
        r.k.to_string(),
        r.n.map(|n| n.to_string()).unwrap_or_else(|| "limit".into()),
        r.exact.clone(),
        r.decimal.clone(),
        r.method.map(method_name).unwrap_or("exact").into(),
        r.published.clone().unwrap_or_default(),
        r.errata.join(";"),
    ]);
    for id in &r.errata {
        if let Some(e) = reference::errata().into_iter().find(|e| &e.id == id) {
            rep.notes.push(format!("errata {}: printed {}; artifact {}", e.id, e.printed, e.artifact));
        }
    }
    if let Some(d) = &r.diagnostics {
        rep.notes.push(format!(
            "richardson at n = {:?}: {} (gap {:.3e})",
            d.sizes, d.extrapolate_decimal, d.gap
        ));
    }
    if let Some(o) = &r.oracle {
        rep.notes.push(format!(
            "enumeration: {}/{} vertices qualify ({})",
            o.qualifying,
            o.vertices,
            if o.agrees { "agrees" } else { "MISMATCH" }
        ));
    }
    Ok(rep)
}

/// One row of a golden census file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub family: FamilyId,
    pub stat: StatKind,
    pub n: usize,
    pub k: usize,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenMismatch {
    #[serde(flatten)]
    pub row: GoldenRow,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenReport {
    pub rows: usize,
    pub mismatches: Vec<GoldenMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub passed: bool,
    pub reports: Vec<VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub golden: Option<GoldenReport>,
}

impl VerifyOutput {
    /// First failing comparison, oracle runs before the golden file.
    pub fn first_failure(&self) -> Option<String> {
        for r in &self.reports {
            if let Some(m) = r.mismatches.first() {
                let stat = m.stat.map(|s| format!(" stat={s}")).unwrap_or_default();
                let k = m.k.map(|k| format!(" k={k}")).unwrap_or_default();
                return Some(format!(
                    "mismatch: family={} n={}{stat}{k} {}: enumeration {} vs series {}",
                    r.family, m.n, m.quantity, m.oracle, m.gf
                ));
            }
        }
        let g = self.golden.as_ref()?.mismatches.first()?;
        Some(format!(
            "golden mismatch: family={} n={} stat={} k={}: file {} vs series {}",
            g.row.family, g.row.n, g.row.stat, g.row.k, g.row.count, g.computed
        ))
    }
}

fn read_golden(path: &Path) -> Result<Vec<GoldenRow>, CliError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    r.deserialize()
        .collect::<Result<Vec<GoldenRow>, _>>()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn check_golden(rows: &[GoldenRow]) -> Result<GoldenReport, CliError> {
    let mut mismatches = Vec::new();
    for row in rows {
        let c = gf_census::census_coefficient(row.family, row.stat, row.k, row.n)?;
        if c.to_string() != row.count.to_string() {
            mismatches.push(GoldenMismatch { row: row.clone(), computed: c.to_string() });
        }
    }
    Ok(GoldenReport { rows: rows.len(), mismatches })
}

pub fn verify_output(a: &VerifyArgs) -> Result<VerifyOutput, CliError> {
    let mut families = if a.family.is_empty() { FamilyId::ALL.to_vec() } else { a.family.clone() };
    families.sort();
    families.dedup();
    if let Some(n) = a.n_max {
        for &f in &families {
            if n > f.enumeration_ceiling() {
                return Err(CliError::Usage(format!(
                    "--n-max {n} exceeds the {f} enumeration ceiling of {}",
                    f.enumeration_ceiling()
                )));
            }
        }
    }
    let golden = a.golden.as_deref().map(read_golden).transpose()?;
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = families
            .iter()
            .map(|&f| {
                let n = a.n_max.unwrap_or_else(|| f.enumeration_ceiling());
                s.spawn(move || verify_family(f, n))
            })
            .collect();
        handles.into_iter().map(|h| h.join()).collect()
    });
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        reports.push(r.map_err(|_| CliError::Internal("verification thread panicked".into()))??);
    }
    let golden = golden.as_deref().map(check_golden).transpose()?;
    let passed = reports.iter().all(|r| r.passed()) && golden.as_ref().is_none_or(|g| g.mismatches.is_empty());
    Ok(VerifyOutput { passed, reports, golden })
}

pub fn verify(a: &VerifyArgs) -> Result<(Report, Option<String>), CliError> {
    let out = verify_output(a)?;
    let mut rep = Report::new(vec!["family", "n_max", "checks", "mismatches", "status"], &out)?;
    let status = |ok: bool| if ok { "pass" } else { "FAIL" }.to_string();
    for r in &out.reports {
        rep.rows.push(vec![
            r.family.to_string(),
            r.n_max.to_string(),
            r.checks.to_string(),
            r.mismatches.len().to_string(),
            status(r.passed()),
        ]);
    }
    if let Some(g) = &out.golden {
        rep.rows.push(vec![
            "golden".into(),
            String::new(),
            g.rows.to_string(),
            g.mismatches.len().to_string(),
            status(g.mismatches.is_empty()),
        ]);
    }
    let first = out.first_failure();
    if let Some(m) = &first {
        rep.notes.push(m.clone());
    }
    Ok((rep, first))
}

pub fn errata() -> Result<Report, CliError> {
    let entries: Vec<ErrataEntry> = reference::errata();
    let mut rep = Report::new(vec!["id", "location", "printed", "artifact", "derivation", "rows"], &entries)?;
    for e in &entries {
        let rows: Vec<String> = e
            .rows
            .iter()
            .map(|r| {
                let ks: Vec<String> = r.ks.iter().map(|k| k.to_string()).collect();
                format!("{} {} k={}", r.family, r.stat, ks.join(","))
            })
            .collect();
        rep.rows.push(vec![
            e.id.clone(),
            e.location.clone(),
            e.printed.clone(),
            e.artifact.clone(),
            e.derivation.clone(),
            rows.join("; "),
        ]);
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessRow {
    pub k: usize,
    pub probability: String,
    pub partial_sum: String,
    pub deficiency: String,
}

#[derive(Debug, Serialize)]
struct TightnessOutput {
    family: FamilyId,
    stat: StatKind,
    k_max: usize,
    partial_sum: String,
    partial_sum_parts: QuadraticParts,
    deficiency: String,
    deficiency_parts: QuadraticParts,
    /// Partial sum is at most 1, decided exactly.
    bounded: bool,
    rows: Vec<TightnessRow>,
}

pub fn tightness(a: &TightnessArgs) -> Result<Report, CliError> {
    if a.k_max == 0 {
        return Err(CliError::Usage("--k-max must be at least 1".into()));
    }
    let t = tightness_report(a.sel.family, a.sel.stat, a.k_max)?;
    let one = QuadraticNumber::one();
    let d = a.precision;
    let mut rows = Vec::with_capacity(a.k_max);
    let mut prev = one.clone();
    for (i, def) in t.deficiencies.iter().enumerate() {
        rows.push(TightnessRow {
            k: i + 1,
            probability: (&prev - def).to_decimal(d),
            partial_sum: (&one - def).to_decimal(d),
            deficiency: def.to_decimal(d),
        });
        prev = def.clone();
    }
    let out = TightnessOutput {
        family: t.family,
        stat: t.stat,
        k_max: t.k_max,
        partial_sum: t.partial_sum.to_string(),
        partial_sum_parts: QuadraticParts::from(&t.partial_sum),
        deficiency: t.deficiency.to_string(),
        deficiency_parts: QuadraticParts::from(&t.deficiency),
        bounded: t.partial_sum <= one,
        rows,
    };
    let mut rep = Report::new(vec!["k", "probability", "partial_sum", "deficiency"], &out)?;
    rep.rows = out
        .rows
        .iter()
        .map(|r| vec![r.k.to_string(), r.probability.clone(), r.partial_sum.clone(), r.deficiency.clone()])
        .collect();
    rep.notes.push(format!(
        "partial sum to k = {}: {} ({}); at most 1: {}",
        out.k_max,
        t.partial_sum.to_decimal(d),
        out.partial_sum,
        if out.bounded { "yes" } else { "no" }
    ));
    Ok(rep)
}
