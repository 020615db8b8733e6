use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use planar_census::{FamilyId, StatKind};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "planar-census", version, about = "Subtree-size census of planar trees, exactly")]
pub struct Cli {
    /// Print a version line before the data.
    #[arg(long, global = true)]
    pub header: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Markdown)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Limit probabilities for a range of k, beside the published table.
    Table(TableArgs),
    /// Exact coefficients of a counting, multiplier or census series.
    Coeffs(CoeffsArgs),
    /// One probability: the limit, or the exact value at size n.
    Prob(ProbArgs),
    /// Compare brute-force enumeration with the generating functions.
    Verify(VerifyArgs),
    /// Documented disagreements with the published values.
    Errata,
    /// Partial sums of the limit probabilities over k.
    Tightness(TightnessArgs),
}

#[derive(Debug, Args)]
pub struct Selection {
    #[arg(long)]
    pub family: FamilyId,
    #[arg(long)]
    pub stat: StatKind,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub sel: Selection,
    /// Values of k: `1..6` (inclusive), `1,3,5` or `4`. Defaults to the published rows.
    #[arg(long)]
    pub k: Option<IndexRange>,
    /// Significant digits of the decimal column.
    #[arg(long, default_value_t = 10)]
    pub precision: u32,
    /// Round each decimal to the places printed in the published table.
    #[arg(long)]
    pub paper_precision: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Counting,
    Multiplier,
    Census,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub family: FamilyId,
    #[arg(long, value_enum, default_value_t = SeriesKind::Counting)]
    pub series: SeriesKind,
    /// Required for the census series.
    #[arg(long)]
    pub stat: Option<StatKind>,
    /// Required for the census series.
    #[arg(long)]
    pub k: Option<usize>,
    /// Coefficient indices to list, e.g. `1..7`.
    #[arg(long)]
    pub n: Option<IndexRange>,
    /// Truncation order; defaults to the largest index listed.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ProbArgs {
    #[command(flatten)]
    pub sel: Selection,
    #[arg(long)]
    pub k: usize,
    /// Exact probability over trees of this size instead of the limit.
    #[arg(long)]
    pub n: Option<usize>,
    /// Attach a numeric witness: Richardson extrapolation for the limit,
    /// brute-force enumeration for a finite size.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 10)]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Families to check; all of them by default.
    #[arg(long)]
    pub family: Vec<FamilyId>,
    /// Largest size to enumerate; each family's ceiling by default.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Also compare against a golden csv with columns family,stat,n,k,count.
    #[arg(long, value_name = "PATH")]
    pub golden: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TightnessArgs {
    #[command(flatten)]
    pub sel: Selection,
    #[arg(long, default_value_t = 40)]
    pub k_max: usize,
    #[arg(long, default_value_t = 10)]
    pub precision: u32,
}

/// Nonempty list of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRange(Vec<usize>);

impl IndexRange {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad index {t:?} in {s:?}"))
        };
        let mut out = Vec::new();
        for part in s.split(',') {
            if let Some((a, b)) = part.split_once("..") {
                let b = b.strip_prefix('=').unwrap_or(b);
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            } else {
                out.push(num(part)?);
            }
        }
        if out.is_empty() {
            return Err("empty index list".into());
        }
        Ok(IndexRange(out))
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("1..6".parse::<IndexRange>().unwrap().values(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!("1..=3".parse::<IndexRange>().unwrap().values(), &[1, 2, 3]);
        assert_eq!("1,3,5".parse::<IndexRange>().unwrap().values(), &[1, 3, 5]);
        assert_eq!("7".parse::<IndexRange>().unwrap().values(), &[7]);
        assert!("6..1".parse::<IndexRange>().is_err());
        assert!("a".parse::<IndexRange>().is_err());
    }
}
