//! The four planar tree families and the two subtree statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact_math::{ExactRational, QuadraticNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyId {
    /// Every internal vertex has one or two children; sized by vertices.
    Motzkin,
    /// No arity restriction; sized by vertices.
    Ordered,
    /// Every internal vertex has exactly two children; sized by leaves.
    FullBinary,
    /// Every internal vertex has at least two children; sized by leaves.
    Schroeder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatKind {
    #[serde(rename = "vertices")]
    VerticesInSubtree,
    #[serde(rename = "leaves")]
    LeavesInSubtree,
}

/// What the size variable `x` counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeUnit {
    Vertices,
    Leaves,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [
        FamilyId::Motzkin,
        FamilyId::Ordered,
        FamilyId::FullBinary,
        FamilyId::Schroeder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Motzkin => "motzkin",
            FamilyId::Ordered => "ordered",
            FamilyId::FullBinary => "fullbinary",
            FamilyId::Schroeder => "schroeder",
        }
    }

    pub fn size_unit(self) -> SizeUnit {
        match self {
            FamilyId::Motzkin | FamilyId::Ordered => SizeUnit::Vertices,
            FamilyId::FullBinary | FamilyId::Schroeder => SizeUnit::Leaves,
        }
    }

    /// Smallest size with at least one tree.
    pub fn min_size(self) -> usize {
        1
    }

    /// Upper bound on the statistic over all trees of size `n`.
    pub fn max_stat(self, stat: StatKind, n: usize) -> usize {
        match (self.size_unit(), stat) {
            (SizeUnit::Vertices, _) => n,
            (SizeUnit::Leaves, StatKind::LeavesInSubtree) => n,
            (SizeUnit::Leaves, StatKind::VerticesInSubtree) => (2 * n).saturating_sub(1),
        }
    }

    /// Size of the largest exhaustive enumeration the oracle will attempt.
    pub fn enumeration_ceiling(self) -> usize {
        match self {
            FamilyId::Motzkin => 14,
            FamilyId::Ordered => 12,
            FamilyId::FullBinary => 12,
            FamilyId::Schroeder => 10,
        }
    }

    pub fn descriptor(self) -> FamilyDescriptor {
        let q = |n, d| QuadraticNumber::from(ExactRational::from_ratio(n, d));
        let r = |n| ExactRational::from(n);
        match self {
            FamilyId::Motzkin => FamilyDescriptor {
                id: self,
                singularity: q(1, 3),
                radicand: 2,
                normalization: q(1, 1),
            },
            FamilyId::Ordered => FamilyDescriptor {
                id: self,
                singularity: q(1, 4),
                radicand: 2,
                normalization: q(2, 1),
            },
            FamilyId::FullBinary => FamilyDescriptor {
                id: self,
                singularity: q(1, 4),
                radicand: 2,
                normalization: q(2, 1),
            },
            // b = 3 - 2√2 is the smaller root of 1 - 6x + x²
            FamilyId::Schroeder => FamilyDescriptor {
                id: self,
                singularity: QuadraticNumber::new(r(3), r(-2), 2),
                radicand: 2,
                normalization: QuadraticNumber::new(r(2), r(1), 2),
            },
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "motzkin" => Ok(FamilyId::Motzkin),
            "ordered" | "plane" => Ok(FamilyId::Ordered),
            "fullbinary" | "full-binary" | "binary" => Ok(FamilyId::FullBinary),
            "schroeder" | "schröder" | "schroder" => Ok(FamilyId::Schroeder),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

impl StatKind {
    pub const ALL: [StatKind; 2] = [StatKind::VerticesInSubtree, StatKind::LeavesInSubtree];

    pub fn name(self) -> &'static str {
        match self {
            StatKind::VerticesInSubtree => "vertices",
            StatKind::LeavesInSubtree => "leaves",
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "vertices" | "vertex" | "v" => Ok(StatKind::VerticesInSubtree),
            "leaves" | "leaf" | "l" => Ok(StatKind::LeavesInSubtree),
            other => Err(Error::Parse(format!("unknown statistic {other:?}"))),
        }
    }
}

/// Per-family constants for the asymptotic step.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyDescriptor {
    pub id: FamilyId,
    /// Radius of convergence of the family's square-root factor.
    pub singularity: QuadraticNumber,
    /// Field `Q(√d)` the exact limits live in. Rational families carry 2 with zero radical parts.
    pub radicand: u32,
    /// Limit probability of statistic value `k` is `R_k(b) · normalization`.
    pub normalization: QuadraticNumber,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for f in FamilyId::ALL {
            assert_eq!(f.name().parse::<FamilyId>().unwrap(), f);
        }
        for s in StatKind::ALL {
            assert_eq!(s.name().parse::<StatKind>().unwrap(), s);
        }
        assert!("binomial".parse::<FamilyId>().is_err());
    }

    #[test]
    fn singularities_are_positive_and_below_one() {
        for f in FamilyId::ALL {
            let b = f.descriptor().singularity;
            assert_eq!(b.signum(), 1);
            assert!(b < QuadraticNumber::one());
        }
        // 3 - 2√2 is a root of 1 - 6x + x^2
        let b = FamilyId::Schroeder.descriptor().singularity;
        let v = &(&QuadraticNumber::one() - &b.scale(&ExactRational::from(6))) + &(&b * &b);
        assert!(v.is_zero());
    }
}
