//! Published probability tables and the errata ledger.
//!
//! Printed values are kept verbatim as strings so their precision is known.
//! Root GFs are transcribed into the plain-text syntax used by
//! [`RationalFunction::render`](crate::exact_math::RationalFunction::render).

use serde::{Deserialize, Serialize};

use crate::exact_math::{ExactRational, QuadraticNumber};
use crate::family::{FamilyId, StatKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedRow {
    pub k: usize,
    pub root_gf: &'static str,
    pub value: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedTable {
    pub family: FamilyId,
    pub stat: StatKind,
    pub rows: &'static [PublishedRow],
}

const fn row(k: usize, root_gf: &'static str, value: &'static str) -> PublishedRow {
    PublishedRow { k, root_gf, value }
}

const MOTZKIN_VERTICES: &[PublishedRow] = &[
    row(1, "x", "0.33333333"),
    row(2, "2*x^2", "0.22222222"),
    row(3, "4*x^3", "0.14814815"),
    row(4, "9*x^4", "0.11111111"),
    row(5, "21*x^5", "0.086419753"),
    row(6, "51*x^6", "0.069958848"),
];

const MOTZKIN_LEAVES: &[PublishedRow] = &[
    row(1, "x/(1-x)", "0.5"),
    row(2, "x^3/(1-x)^3", "0.125"),
    row(3, "2*x^5/(1-x)^5", "0.0625"),
    row(4, "5*x^7/(1-x)^7", "0.0391"),
    row(5, "14*x^9/(1-x)^9", "0.02734"),
    row(6, "42*x^11/(1-x)^11", "0.02051"),
];

const ORDERED_VERTICES: &[PublishedRow] = &[
    row(1, "x", ".5"),
    row(2, "x^2", ".125"),
    row(3, "2*x^3", "0.0625"),
    row(4, "5*x^4", "0.03906"),
    row(5, "14*x^5", "0.02734"),
    row(6, "42*x^6", "0.02051"),
    row(7, "132*x^7", "0.0161133"),
];

const ORDERED_LEAVES: &[PublishedRow] = &[
    row(1, "x/(1-x)", "0.666666667"),
    row(2, "x^3/(1-x)^3", "0.07407407"),
    row(3, "(x^4+x^5)/(1-x)^5", "0.04115226"),
    row(4, "(x^5+3*x^6+x^7)/(1-x)^7", "0.0265203475"),
];

const FULLBINARY_VERTICES: &[PublishedRow] = &[
    row(1, "x", ".5"),
    row(2, "0", "0"),
    row(3, "x^2", "0.125"),
    row(4, "0", "0"),
    row(5, "2*x^3", "0.0625"),
    row(6, "0", "0"),
    row(7, "5*x^4", "0.0161133"),
];

const FULLBINARY_LEAVES: &[PublishedRow] = &[
    row(1, "x", ".5"),
    row(2, "x^2", ".125"),
    row(3, "2*x^3", "0.0625"),
    row(4, "5*x^4", "0.03906"),
    row(5, "14*x^5", "0.02734"),
    row(6, "42*x^6", "0.02051"),
    row(7, "132*x^7", "0.0161133"),
];

const SCHROEDER_VERTICES: &[PublishedRow] = &[
    row(1, "x", ".2929"),
    row(2, "0", "0"),
    row(3, "x^2", "0.0503"),
    row(4, "x^3", "0.0086"),
    row(5, "2*x^3+x^4", "0.0187"),
    row(6, "5*x^4+x^5", "0.0076"),
    row(7, "5*x^4+9*x^5+x^6", "0.0097"),
];

const SCHROEDER_LEAVES: &[PublishedRow] = &[
    row(1, "x", "0.2929"),
    row(2, "x^2", "0.0503"),
    row(3, "3*x^3", "0.0259"),
    row(4, "11*x^4", "0.0163"),
    row(5, "45*x^5", "0.0114"),
    row(6, "197*x^6", "0.0086"),
    row(7, "903*x^7", "0.0067"),
];

pub const PUBLISHED: &[PublishedTable] = &[
    PublishedTable { family: FamilyId::Motzkin, stat: StatKind::VerticesInSubtree, rows: MOTZKIN_VERTICES },
    PublishedTable { family: FamilyId::Motzkin, stat: StatKind::LeavesInSubtree, rows: MOTZKIN_LEAVES },
    PublishedTable { family: FamilyId::Ordered, stat: StatKind::VerticesInSubtree, rows: ORDERED_VERTICES },
    PublishedTable { family: FamilyId::Ordered, stat: StatKind::LeavesInSubtree, rows: ORDERED_LEAVES },
    PublishedTable { family: FamilyId::FullBinary, stat: StatKind::VerticesInSubtree, rows: FULLBINARY_VERTICES },
    PublishedTable { family: FamilyId::FullBinary, stat: StatKind::LeavesInSubtree, rows: FULLBINARY_LEAVES },
    PublishedTable { family: FamilyId::Schroeder, stat: StatKind::VerticesInSubtree, rows: SCHROEDER_VERTICES },
    PublishedTable { family: FamilyId::Schroeder, stat: StatKind::LeavesInSubtree, rows: SCHROEDER_LEAVES },
];

pub fn published_table(f: FamilyId, stat: StatKind) -> Option<&'static PublishedTable> {
    PUBLISHED.iter().find(|t| t.family == f && t.stat == stat)
}

pub fn published_row(f: FamilyId, stat: StatKind, k: usize) -> Option<&'static PublishedRow> {
    published_table(f, stat)?.rows.iter().find(|r| r.k == k)
}

impl PublishedRow {
    /// Digits printed after the decimal point.
    pub fn places(&self) -> u32 {
        self.value
            .split_once('.')
            .map_or(0, |(_, frac)| frac.len() as u32)
    }

    pub fn exact_value(&self) -> ExactRational {
        self.value.parse().expect("published values are decimals")
    }

    /// Agreement to the printed precision: `|v - printed| ≤ 10^-places`, decided exactly.
    pub fn agrees_with(&self, v: &QuadraticNumber) -> bool {
        let tol = ExactRational::new(1.into(), num_bigint::BigInt::from(10u32).pow(self.places()));
        let diff = (v - &QuadraticNumber::from(self.exact_value())).abs();
        diff <= QuadraticNumber::from(tol)
    }
}

/// One documented disagreement between the published text and the artifact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrataEntry {
    pub id: String,
    /// Where in the published text, described by content.
    pub location: String,
    /// What is printed there.
    pub printed: String,
    /// What the artifact computes instead.
    pub artifact: String,
    /// How the artifact's value is obtained and cross-checked.
    pub derivation: String,
    /// Table rows the entry covers, if any.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<ErrataRows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrataRows {
    pub family: FamilyId,
    pub stat: StatKind,
    pub ks: Vec<usize>,
}

fn entry(id: &str, location: &str, printed: &str, artifact: &str, derivation: &str, rows: Vec<ErrataRows>) -> ErrataEntry {
    ErrataEntry {
        id: id.into(),
        location: location.into(),
        printed: printed.into(),
        artifact: artifact.into(),
        derivation: derivation.into(),
        rows,
    }
}

fn rows(family: FamilyId, stat: StatKind, ks: &[usize]) -> ErrataRows {
    ErrataRows { family, stat, ks: ks.to_vec() }
}

pub fn errata() -> Vec<ErrataEntry> {
    use FamilyId::*;
    use StatKind::*;
    vec![
        entry(
            "motzkin-vertex-table",
            "Motzkin trees, table of probabilities that the subtree has k vertices, rows k = 2..6",
            "2x^2 0.22222222; 4x^3 0.14814815; 9x^4 0.11111111; 21x^5 0.086419753; 51x^6 0.069958848",
            "R_k = m(k) x^k with m = 1, 1, 2, 4, 9, 21; limits m(k)/3^k = 1/9, 2/27, 4/81, 1/27, 7/243 \
             (0.1111111111, 0.07407407407, 0.04938271605, 0.03703703704, 0.02880658436)",
            "the printed coefficients are m(k+1), one place ahead of the counting sequence; \
             m(k)/3^k matches exhaustive enumeration of census counts up to 14 vertices and \
             Richardson extrapolation of exact finite-size probabilities at n = 150, 300, 600",
            vec![rows(Motzkin, VerticesInSubtree, &[2, 3, 4, 5, 6])],
        ),
        entry(
            "fullbinary-k7",
            "Full binary trees, table of probabilities that the subtree has k vertices, row k = 7",
            "5x^4 0.0161133",
            "5/128 = 0.0390625",
            "R_7 = 5x^4 evaluated at 1/4 times the normalization 2; the printed decimal repeats \
             the k = 7 entry of the leaf tables (2*132/4^7); Richardson extrapolation at \
             n = 150, 300, 600 lands on 5/128",
            vec![rows(FullBinary, VerticesInSubtree, &[7])],
        ),
        entry(
            "ordered-census-recurrence",
            "Ordered trees, recurrence for the subtree-vertex census GF and its simplified form",
            "L_k(x)=R_k(x)+L_k(x)+2L_k(x)T(x)+3L_k(x)T(x)^2+...; L_k(x)=R_k(x)+L_k(x)/(1-T(x))^2",
            "L_k = R_k + x*L_k/(1-T)^2, hence L_k = R_k/(1 - x/(1-T)^2) = R_k*(1 + 1/sqrt(1-4x))/2",
            "removing the root removes one vertex, a factor x; without it the recurrence has no \
             power-series solution. The printed closed form agrees coefficient-wise with the \
             corrected recurrence",
            vec![],
        ),
        entry(
            "schroeder-census-recurrence",
            "Schröder trees, simplified form of the subtree census recurrence",
            "T_k(x)=R_k(x)+T_k(x)S(x)/(1-S(x))^2",
            "2S + 3S^2 + 4S^3 + ... = (2S - S^2)/(1-S)^2, hence T_k = R_k*(1-S)^2/(1-4S+2S^2)",
            "the printed simplification gives the factor 1 + x + 4x^2 + 17x^3 + ...; the corrected \
             one gives 1 + 2x + 9x^2 + 44x^3 + ..., which equals the printed closed form \
             (3-x+sqrt(1-6x+x^2))/(4 sqrt(1-6x+x^2)) and matches enumeration up to 10 leaves",
            vec![],
        ),
        entry(
            "ordered-vertex-total",
            "Ordered trees, lemma on the total number of vertices in all trees of size n",
            "V(n) ~ binom(2n+2, n+1) or V(n) ~ 4^(n+1)/sqrt((n+1) pi)",
            "V(n) = n*t(n) = binom(2n-2, n-1) ~ 4^(n-1)/sqrt(pi n)",
            "each of the t(n) = C(n-1) trees has n vertices; the printed form is 16 times too large \
             asymptotically and already wrong at n = 1 (6 instead of 1)",
            vec![],
        ),
        entry(
            "ordered-vertex-header",
            "Ordered trees, column header of the table for the subtree-vertex statistic",
            "Probability the subtree has k leaves",
            "Probability the subtree has k vertices",
            "the table lists R_k = t(k) x^k, which counts roots with k vertices in their subtree; \
             the leaf statistic has its own table with rational R_k",
            vec![],
        ),
        entry(
            "ordered-bivariate-closed-form",
            "Ordered trees, closed form of the bivariate GF with x marking vertices and y leaves",
            "sqrt(x^2y^2-2xy^2+x^2-2xy-2x+1)",
            "sqrt(x^2y^2-2x^2y+x^2-2xy-2x+1)",
            "discriminant of the printed quadratic T^2-(xy-x+1)T+xy = 0; at y = 1 the printed \
             radicand is 1-6x+2x^2 instead of 1-4x",
            vec![],
        ),
        entry(
            "schroeder-normalization",
            "Schröder trees, leaf-probability corollary and both probability tables",
            "(1+sqrt(2))/(sqrt(2)(3+sqrt(8))) ~ .293; tables 0.2929, 0.0503, 0.0259, 0.0163, ...",
            "leaf limit 2 - sqrt(2) = 0.5857864376; every table value is twice the printed one \
             (normalization 2 + sqrt(2) in place of 1 + sqrt(2)/2)",
            "every internal vertex has at least two children, so leaves are at least half of all \
             vertices in every tree; exact l(n)/V(n) is 0.5858 at n = 600; the printed asymptotics \
             for l(n) and V(n) themselves give l/V -> sqrt(2)(1+sqrt(2))/(3+sqrt(8)) = 2 - sqrt(2)",
            vec![
                rows(Schroeder, VerticesInSubtree, &[1, 3, 4, 5, 6, 7]),
                rows(Schroeder, LeavesInSubtree, &[1, 2, 3, 4, 5, 6, 7]),
            ],
        ),
    ]
}

/// Ledger entries covering a table row.
pub fn errata_for(f: FamilyId, stat: StatKind, k: usize) -> Vec<ErrataEntry> {
    errata()
        .into_iter()
        .filter(|e| e.rows.iter().any(|r| r.family == f && r.stat == stat && r.ks.contains(&k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn places_and_values() {
        let r = published_row(FamilyId::Ordered, StatKind::VerticesInSubtree, 1).unwrap();
        assert_eq!(r.places(), 1);
        assert_eq!(r.exact_value(), ExactRational::from_ratio(1, 2));
        let r = published_row(FamilyId::Ordered, StatKind::LeavesInSubtree, 4).unwrap();
        assert_eq!(r.places(), 10);
        let r = published_row(FamilyId::FullBinary, StatKind::VerticesInSubtree, 2).unwrap();
        assert_eq!(r.places(), 0);
    }

    #[test]
    fn tolerance_is_one_unit_in_last_place() {
        let r = published_row(FamilyId::Motzkin, StatKind::LeavesInSubtree, 4).unwrap();
        assert!(r.agrees_with(&QuadraticNumber::from(ExactRational::from_ratio(5, 128))));
        assert!(r.agrees_with(&QuadraticNumber::from(ExactRational::from_ratio(390, 10000))));
        assert!(!r.agrees_with(&QuadraticNumber::from(ExactRational::from_ratio(3925, 100000))));
    }

    #[test]
    fn ledger_shape() {
        let e = errata();
        assert!(e.len() >= 6);
        let mut ids: Vec<&str> = e.iter().map(|x| x.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), e.len());
        assert!(e.iter().all(|x| !x.location.is_empty() && !x.printed.is_empty()));
        assert_eq!(errata_for(FamilyId::FullBinary, StatKind::VerticesInSubtree, 7).len(), 1);
        assert!(errata_for(FamilyId::FullBinary, StatKind::VerticesInSubtree, 5).is_empty());
    }
}
