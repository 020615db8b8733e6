//! Brute-force enumeration of small trees and a direct per-vertex census.
//!
//! Ground truth for every generating-function coefficient at small sizes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{FamilyId, SizeUnit, StatKind};
use crate::gf_census;

/// A planar rooted tree. Subtrees are shared between enumerated trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreeNode {
    children: Vec<Arc<TreeNode>>,
}

impl TreeNode {
    pub fn leaf() -> Self {
        TreeNode { children: Vec::new() }
    }

    pub fn new(children: Vec<Arc<TreeNode>>) -> Self {
        TreeNode { children }
    }

    pub fn children(&self) -> &[Arc<TreeNode>] {
        &self.children
    }

    pub fn arity(&self) -> usize {
        self.children.len()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.vertex_count()).sum::<usize>()
    }

    pub fn leaf_count(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(|c| c.leaf_count()).sum()
        }
    }

    pub fn size(&self, f: FamilyId) -> usize {
        match f.size_unit() {
            SizeUnit::Vertices => self.vertex_count(),
            SizeUnit::Leaves => self.leaf_count(),
        }
    }

    /// Whether every vertex meets the family's arity rule.
    pub fn is_valid(&self, f: FamilyId) -> bool {
        let ok = match (f, self.arity()) {
            (_, 0) => true,
            (FamilyId::Motzkin, a) => a <= 2,
            (FamilyId::Ordered, _) => true,
            (FamilyId::FullBinary, a) => a == 2,
            (FamilyId::Schroeder, a) => a >= 2,
        };
        ok && self.children.iter().all(|c| c.is_valid(f))
    }

    /// Balanced parentheses, children left to right: a leaf is `()`.
    pub fn to_parens(&self) -> String {
        let mut s = String::with_capacity(2 * self.vertex_count());
        self.write_parens(&mut s);
        s
    }

    fn write_parens(&self, out: &mut String) {
        out.push('(');
        for c in &self.children {
            c.write_parens(out);
        }
        out.push(')');
    }

    pub fn from_parens(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        let mut stack: Vec<Vec<Arc<TreeNode>>> = Vec::new();
        let mut done: Option<TreeNode> = None;
        for (i, &b) in bytes.iter().enumerate() {
            if done.is_some() {
                return Err(Error::Parse(format!("trailing input at {i} in {s:?}")));
            }
            match b {
                b'(' => stack.push(Vec::new()),
                b')' => {
                    let kids = stack
                        .pop()
                        .ok_or_else(|| Error::Parse(format!("unbalanced ')' at {i} in {s:?}")))?;
                    let node = TreeNode::new(kids);
                    match stack.last_mut() {
                        Some(parent) => parent.push(Arc::new(node)),
                        None => done = Some(node),
                    }
                }
                _ => return Err(Error::Parse(format!("unexpected {:?} in {s:?}", b as char))),
            }
        }
        done.ok_or_else(|| Error::Parse(format!("incomplete tree {s:?}")))
    }
}

impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_parens())
    }
}

impl fmt::Debug for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_parens())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexCensus {
    pub subtree_vertices: usize,
    pub subtree_leaves: usize,
}

impl VertexCensus {
    pub fn get(&self, stat: StatKind) -> usize {
        match stat {
            StatKind::VerticesInSubtree => self.subtree_vertices,
            StatKind::LeavesInSubtree => self.subtree_leaves,
        }
    }
}

/// Census of every vertex, in post-order (the root comes last).
pub fn census_tree(t: &TreeNode) -> Vec<VertexCensus> {
    let mut out = Vec::with_capacity(t.vertex_count());
    census_into(t, &mut out);
    out
}

fn census_into(t: &TreeNode, out: &mut Vec<VertexCensus>) -> VertexCensus {
    let mut v = 1;
    let mut l = 0;
    for c in &t.children {
        let cc = census_into(c, out);
        v += cc.subtree_vertices;
        l += cc.subtree_leaves;
    }
    let me = VertexCensus {
        subtree_vertices: v,
        subtree_leaves: l.max(1),
    };
    out.push(me);
    me
}

fn check_budget(f: FamilyId, n: usize) -> Result<()> {
    let ceiling = f.enumeration_ceiling();
    if n > ceiling {
        Err(Error::BudgetExceeded {
            family: f,
            requested: n,
            ceiling,
        })
    } else {
        Ok(())
    }
}

/// Memoized generator for one family, keyed by size.
struct Enumerator {
    family: FamilyId,
    trees: HashMap<usize, Arc<Vec<Arc<TreeNode>>>>,
}

impl Enumerator {
    fn new(family: FamilyId) -> Self {
        Enumerator {
            family,
            trees: HashMap::new(),
        }
    }

    fn arity_ok(&self, a: usize) -> bool {
        match self.family {
            FamilyId::Motzkin => (1..=2).contains(&a),
            FamilyId::Ordered => a >= 1,
            FamilyId::FullBinary => a == 2,
            FamilyId::Schroeder => a >= 2,
        }
    }

    fn max_arity(&self, total: usize) -> usize {
        match self.family {
            FamilyId::Motzkin | FamilyId::FullBinary => 2.min(total),
            FamilyId::Ordered | FamilyId::Schroeder => total,
        }
    }

    fn trees(&mut self, n: usize) -> Arc<Vec<Arc<TreeNode>>> {
        if let Some(v) = self.trees.get(&n) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.push(Arc::new(TreeNode::leaf()));
        }
        // what the children share: vertices minus the root, or all leaves
        let total = match self.family.size_unit() {
            SizeUnit::Vertices => n.saturating_sub(1),
            SizeUnit::Leaves => n,
        };
        if total > 0 {
            let mut parts = Vec::new();
            self.compositions(total, &mut parts, &mut out);
        }
        let v = Arc::new(out);
        self.trees.insert(n, v.clone());
        v
    }

    /// Walks compositions of `rest` in lexicographic order, emitting one
    /// root per choice of subtrees for each admissible composition.
    fn compositions(&mut self, rest: usize, parts: &mut Vec<usize>, out: &mut Vec<Arc<TreeNode>>) {
        if rest == 0 {
            if self.arity_ok(parts.len()) {
                self.emit_products(parts, out);
            }
            return;
        }
        if parts.len() >= self.max_arity(parts.iter().sum::<usize>() + rest) {
            return;
        }
        for first in 1..=rest {
            parts.push(first);
            self.compositions(rest - first, parts, out);
            parts.pop();
        }
    }

    fn emit_products(&mut self, parts: &[usize], out: &mut Vec<Arc<TreeNode>>) {
        let pools: Vec<Arc<Vec<Arc<TreeNode>>>> = parts.iter().map(|&p| self.trees(p)).collect();
        if pools.iter().any(|p| p.is_empty()) {
            return;
        }
        let mut idx = vec![0usize; pools.len()];
        loop {
            let kids = idx.iter().zip(&pools).map(|(&i, p)| p[i].clone()).collect();
            out.push(Arc::new(TreeNode::new(kids)));
            // odometer, last position fastest
            let mut pos = pools.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < pools[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// Every tree of size `n`, once each, in canonical order.
pub fn enumerate_trees(f: FamilyId, n: usize) -> Result<Vec<Arc<TreeNode>>> {
    check_budget(f, n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut e = Enumerator::new(f);
    Ok(e.trees(n).as_ref().clone())
}

/// Per-size census over all trees, for both statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    pub family: FamilyId,
    pub n: usize,
    pub tree_count: u64,
    pub total_vertices: u64,
    pub total_leaves: u64,
    pub by_vertices: BTreeMap<usize, u64>,
    pub by_leaves: BTreeMap<usize, u64>,
}

impl CensusTable {
    pub fn counts(&self, stat: StatKind) -> &BTreeMap<usize, u64> {
        match stat {
            StatKind::VerticesInSubtree => &self.by_vertices,
            StatKind::LeavesInSubtree => &self.by_leaves,
        }
    }

    pub fn count(&self, stat: StatKind, k: usize) -> u64 {
        self.counts(stat).get(&k).copied().unwrap_or(0)
    }
}

pub fn aggregate_census(f: FamilyId, n: usize) -> Result<CensusTable> {
    let trees = enumerate_trees(f, n)?;
    Ok(aggregate(f, n, &trees))
}

fn aggregate(f: FamilyId, n: usize, trees: &[Arc<TreeNode>]) -> CensusTable {
    let mut t = CensusTable {
        family: f,
        n,
        tree_count: trees.len() as u64,
        total_vertices: 0,
        total_leaves: 0,
        by_vertices: BTreeMap::new(),
        by_leaves: BTreeMap::new(),
    };
    let mut buf = Vec::new();
    for tree in trees {
        buf.clear();
        census_into(tree, &mut buf);
        for c in &buf {
            t.total_vertices += 1;
            if c.subtree_vertices == 1 {
                t.total_leaves += 1;
            }
            *t.by_vertices.entry(c.subtree_vertices).or_insert(0) += 1;
            *t.by_leaves.entry(c.subtree_leaves).or_insert(0) += 1;
        }
    }
    t
}

/// Census tables for sizes `1..=n_max`, sharing one enumeration.
pub fn census_tables(f: FamilyId, n_max: usize) -> Result<Vec<CensusTable>> {
    check_budget(f, n_max)?;
    let mut e = Enumerator::new(f);
    Ok((1..=n_max).map(|n| aggregate(f, n, &e.trees(n))).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stat: Option<StatKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub quantity: String,
    pub oracle: String,
    pub gf: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: FamilyId,
    pub n_max: usize,
    pub checks: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every oracle count up to `n_max` with the generating functions.
pub fn verify_family(f: FamilyId, n_max: usize) -> Result<VerifyReport> {
    let tables = census_tables(f, n_max)?;
    let mut report = VerifyReport {
        family: f,
        n_max,
        checks: 0,
        mismatches: Vec::new(),
    };
    if n_max == 0 {
        return Ok(report);
    }
    let mut check = |n: usize, stat: Option<StatKind>, k: Option<usize>, what: &str, oracle: BigInt, gf: BigInt| {
        report.checks += 1;
        if oracle != gf {
            report.mismatches.push(Mismatch {
                n,
                stat,
                k,
                quantity: what.to_string(),
                oracle: oracle.to_string(),
                gf: gf.to_string(),
            });
        }
    };
    let counting = gf_census::counting_series(f, n_max)?;
    for t in &tables {
        let n = t.n;
        let gf_count = counting
            .coeff(n)
            .to_integer()
            .ok_or_else(|| Error::Invariant("non-integer tree count".into()))?;
        check(n, None, None, "trees", t.tree_count.into(), gf_count);
        check(n, None, None, "vertices", t.total_vertices.into(), gf_census::total_vertices(f, n)?);
        check(n, None, None, "leaves", t.total_leaves.into(), gf_census::total_leaves(f, n)?);
    }
    for stat in StatKind::ALL {
        for k in 1..=f.max_stat(stat, n_max) {
            let s = gf_census::census_series(f, stat, k, n_max)?;
            for t in &tables {
                let gf = s
                    .coeff(t.n)
                    .to_integer()
                    .ok_or_else(|| Error::Invariant("non-integer census count".into()))?;
                check(t.n, Some(stat), Some(k), "census", t.count(stat, k).into(), gf);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parens(f: FamilyId, n: usize) -> Vec<String> {
        enumerate_trees(f, n).unwrap().iter().map(|t| t.to_parens()).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(parens(FamilyId::Motzkin, 3), vec!["(()())", "((()))"]);
        assert_eq!(enumerate_trees(FamilyId::Schroeder, 3).unwrap().len(), 3);
        assert_eq!(parens(FamilyId::FullBinary, 1), vec!["()"]);
        assert_eq!(parens(FamilyId::Ordered, 3), vec!["(()())", "((()))"]);
        assert_eq!(
            parens(FamilyId::Schroeder, 3),
            vec!["(()()())", "(()(()()))", "((()())())"]
        );
        assert!(enumerate_trees(FamilyId::Motzkin, 0).unwrap().is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_trees(FamilyId::Schroeder, 11),
            Err(Error::BudgetExceeded { requested: 11, ceiling: 10, .. })
        ));
    }

    #[test]
    fn census_examples() {
        let leaf = TreeNode::leaf();
        assert_eq!(
            census_tree(&leaf),
            vec![VertexCensus { subtree_vertices: 1, subtree_leaves: 1 }]
        );
        let cherry = TreeNode::from_parens("(()())").unwrap();
        let c = census_tree(&cherry);
        assert_eq!(c.last().unwrap(), &VertexCensus { subtree_vertices: 3, subtree_leaves: 2 });
        assert_eq!(c[0], VertexCensus { subtree_vertices: 1, subtree_leaves: 1 });
        let chain = TreeNode::from_parens("((()))").unwrap();
        let got: Vec<(usize, usize)> = census_tree(&chain)
            .iter()
            .map(|c| (c.subtree_vertices, c.subtree_leaves))
            .collect();
        assert_eq!(got, vec![(1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn aggregate_examples() {
        let t = aggregate_census(FamilyId::Motzkin, 3).unwrap();
        let v: Vec<(usize, u64)> = t.by_vertices.iter().map(|(&k, &c)| (k, c)).collect();
        assert_eq!(v, vec![(1, 3), (2, 1), (3, 2)]);
        assert_eq!(t.total_vertices, 6);
        let t = aggregate_census(FamilyId::FullBinary, 3).unwrap();
        let l: Vec<(usize, u64)> = t.by_leaves.iter().map(|(&k, &c)| (k, c)).collect();
        assert_eq!(l, vec![(1, 6), (2, 2), (3, 2)]);
        let t = aggregate_census(FamilyId::Ordered, 6).unwrap();
        assert_eq!(t.count(StatKind::VerticesInSubtree, 6), 42);
    }

    #[test]
    fn parens_round_trip() {
        for t in enumerate_trees(FamilyId::Ordered, 6).unwrap() {
            let back = TreeNode::from_parens(&t.to_parens()).unwrap();
            assert_eq!(&back, t.as_ref());
        }
        assert!(TreeNode::from_parens("(()").is_err());
        assert!(TreeNode::from_parens("()()").is_err());
        assert!(TreeNode::from_parens("(x)").is_err());
    }

    #[test]
    fn validity() {
        let unary = TreeNode::from_parens("(())").unwrap();
        assert!(unary.is_valid(FamilyId::Motzkin));
        assert!(!unary.is_valid(FamilyId::Schroeder));
        assert!(!unary.is_valid(FamilyId::FullBinary));
        let wide = TreeNode::from_parens("(()()())").unwrap();
        assert!(!wide.is_valid(FamilyId::Motzkin));
        assert!(wide.is_valid(FamilyId::Schroeder));
    }

    #[test]
    fn small_verification() {
        for f in FamilyId::ALL {
            let r = verify_family(f, 5).unwrap();
            assert!(r.passed(), "{f}: {:?}", r.mismatches);
            assert!(r.checks > 0);
        }
    }
}
