//! Edge labelings, labeling matrices, the universal verifier, and the
//! lower-bound machinery (pendant bound, two-color divisibility gate,
//! exact chromatic number).

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A candidate edge labeling: `labels[i]` is the label of the i-th
/// canonical edge. Induced vertex sums are cached at construction; the
/// verifier recomputes them independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    labels: Vec<i64>,
    sums: Vec<i64>,
}

impl EdgeLabeling {
    pub fn new(g: &Graph, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != g.size() {
            return Err(Error::LabelCountMismatch {
                got: labels.len(),
                expected: g.size(),
            });
        }
        let mut sums = vec![0i64; g.order()];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            sums[u] += labels[i];
            sums[v] += labels[i];
        }
        Ok(EdgeLabeling { labels, sums })
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Cached induced sums f⁺(v).
    pub fn sums(&self) -> &[i64] {
        &self.sums
    }

    pub fn label_of(&self, g: &Graph, u: usize, v: usize) -> Option<i64> {
        g.edge_index(u, v).map(|i| self.labels[i])
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({ "graph": g.to_json(), "labels": self.labels })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<(Graph, Self)> {
        let doc: LabelingDoc = serde_json::from_value(v.clone())?;
        let g = Graph::from_json(&doc.graph)?;
        let f = EdgeLabeling::new(&g, doc.labels)?;
        Ok((g, f))
    }
}

#[derive(Serialize, Deserialize)]
struct LabelingDoc {
    graph: serde_json::Value,
    labels: Vec<i64>,
}

/// Why a labeling fails, pinpointed for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The labels are not a bijection onto `[1, |E|]`.
    BijectionDefect(String),
    /// Adjacent vertices `u`, `v` share the induced sum.
    AdjacentEqual { u: usize, v: usize, sum: i64 },
}

/// Outcome of verifying a labeling against the local antimagic condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    /// c(f): the number of distinct induced sums over all vertices.
    pub color_count: usize,
    /// color → vertices carrying that induced sum.
    pub classes: BTreeMap<i64, Vec<usize>>,
    pub first_violation: Option<Violation>,
}

/// Checks that `f` is a local antimagic labeling of `G`: the labels are a
/// bijection onto `[1, |E|]` and adjacent vertices get distinct induced
/// sums. Sums are recomputed from scratch; the labeling's cache is only
/// cross-checked in debug builds.
pub fn verify_local_antimagic(g: &Graph, f: &EdgeLabeling) -> Result<VerificationReport> {
    if f.labels().len() != g.size() {
        return Err(Error::LabelCountMismatch {
            got: f.labels().len(),
            expected: g.size(),
        });
    }
    let q = g.size() as i64;
    let mut first_violation = None;
    let mut seen = vec![false; g.size()];
    for &l in f.labels() {
        if l < 1 || l > q {
            first_violation = Some(Violation::BijectionDefect(format!(
                "label {} outside [1,{}]",
                l, q
            )));
            break;
        }
        if seen[(l - 1) as usize] {
            first_violation = Some(Violation::BijectionDefect(format!("label {} repeated", l)));
            break;
        }
        seen[(l - 1) as usize] = true;
    }

    let mut sums = vec![0i64; g.order()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        sums[u] += f.labels()[i];
        sums[v] += f.labels()[i];
    }
    debug_assert_eq!(sums, f.sums(), "cached induced sums diverged");
    if first_violation.is_none() {
        // Handshake identity: every label is counted once per endpoint.
        debug_assert_eq!(sums.iter().sum::<i64>(), q * (q + 1));
        for &(u, v) in g.edges() {
            if sums[u] == sums[v] {
                first_violation = Some(Violation::AdjacentEqual { u, v, sum: sums[u] });
                break;
            }
        }
    }

    let mut classes: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (v, &s) in sums.iter().enumerate() {
        classes.entry(s).or_default().push(v);
    }
    Ok(VerificationReport {
        valid: first_violation.is_none(),
        color_count: classes.len(),
        classes,
        first_violation,
    })
}

/// Which incidence structure a labeling matrix encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixMode {
    /// Rows and columns are the two parts of a complete bipartite graph.
    Bipartite,
    /// Bordered form for K(1,q,r): hole at (1,1), borders label hub edges.
    Tripartite,
}

/// A rows × cols grid of labels with holes (✱). Row and column sums range
/// over the filled cells only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelingMatrix {
    cells: Vec<Vec<Option<i64>>>,
    bordered: bool,
}

impl LabelingMatrix {
    /// A full (hole-free) matrix.
    pub fn full(cells: Vec<Vec<i64>>) -> Self {
        LabelingMatrix {
            cells: cells
                .into_iter()
                .map(|r| r.into_iter().map(Some).collect())
                .collect(),
            bordered: false,
        }
    }

    pub fn with_holes(cells: Vec<Vec<Option<i64>>>) -> Self {
        LabelingMatrix {
            cells,
            bordered: false,
        }
    }

    /// Marks the matrix as the bordered tripartite form (hole at (1,1)).
    pub fn bordered(mut self) -> Self {
        self.bordered = true;
        self
    }

    pub fn is_bordered(&self) -> bool {
        self.bordered
    }

    pub fn shape(&self) -> (usize, usize) {
        let rows = self.cells.len();
        let cols = self.cells.first().map_or(0, |r| r.len());
        (rows, cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        self.cells[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Option<i64>) {
        self.cells[i][j] = v;
    }

    pub fn cells(&self) -> &[Vec<Option<i64>>] {
        &self.cells
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.cells
            .iter()
            .map(|r| r.iter().flatten().sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        let (rows, cols) = self.shape();
        (0..cols)
            .map(|j| (0..rows).filter_map(|i| self.cells[i][j]).sum())
            .collect()
    }

    pub fn filled_values(&self) -> Vec<i64> {
        self.cells.iter().flatten().flatten().copied().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "cells": self.cells, "bordered": self.bordered })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            cells: Vec<Vec<Option<i64>>>,
            #[serde(default)]
            bordered: bool,
        }
        let doc: Doc = serde_json::from_value(v.clone())?;
        let (first, rest) = match doc.cells.split_first() {
            Some(x) => x,
            None => return Ok(LabelingMatrix::with_holes(vec![])),
        };
        if rest.iter().any(|r| r.len() != first.len()) {
            return Err(Error::Other("ragged matrix rows".into()));
        }
        let mut m = LabelingMatrix::with_holes(doc.cells);
        if doc.bordered {
            m = m.bordered();
        }
        Ok(m)
    }
}

impl fmt::Display for LabelingMatrix {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .filled_values()
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.cells {
            let line: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Some(v) => format!("{:>width$}", v),
                    None => format!("{:>width$}", "*"),
                })
                .collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Row sums, column sums, and — for bordered matrices — the hub sum
/// r₁ + c₁ (the (1,1) hole contributes nothing to either).
pub fn matrix_sums(m: &LabelingMatrix) -> (Vec<i64>, Vec<i64>, Option<i64>) {
    let rows = m.row_sums();
    let cols = m.col_sums();
    let hub = m.is_bordered().then(|| rows[0] + cols[0]);
    (rows, cols, hub)
}

/// Checks the three structural properties of a bordered K(1,q,r) matrix:
/// the filled cells are a permutation of [1, q+r+qr] (P.1); rows 2..q+1
/// share one constant distinct from the hub sum (P.2); columns 2..r+1
/// share one constant distinct from both (P.3).
pub fn validate_tripartite_properties(m: &LabelingMatrix) -> bool {
    let (rows, cols) = m.shape();
    if rows < 2 || cols < 2 || m.get(0, 0).is_some() {
        return false;
    }
    for i in 0..rows {
        for j in 0..cols {
            if (i, j) != (0, 0) && m.get(i, j).is_none() {
                return false;
            }
        }
    }
    let mut values = m.filled_values();
    let total = values.len() as i64;
    values.sort_unstable();
    if values != (1..=total).collect::<Vec<_>>() {
        return false;
    }
    let (rs, cs, hub) = matrix_sums(m);
    let hub = hub.unwrap_or(rs[0] + cs[0]);
    let row_const = rs[1];
    if rs[1..].iter().any(|&s| s != row_const) || row_const == hub {
        return false;
    }
    let col_const = cs[1];
    if cs[1..].iter().any(|&s| s != col_const) {
        return false;
    }
    col_const != hub && col_const != row_const
}

/// Pendant bound: a graph with k ≥ 1 degree-1 vertices has
/// χ_la ≥ k+1. Returns 1 (vacuous) when there are no pendants.
pub fn pendant_lower_bound(g: &Graph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.order() == 2 && g.size() == 1 {
        return Err(Error::K2Excluded);
    }
    let pendants = g.degrees().iter().filter(|&&d| d == 1).count();
    Ok(if pendants == 0 { 1 } else { pendants + 1 })
}

/// Divisibility gate for 2-color labelings. If χ_la(G) = 2 then G is
/// bipartite with parts of sizes x < y whose common sums X > Y satisfy
/// xX = yY = q(q+1)/2. Returns every feasible tuple (X, Y, x, y); an
/// empty result proves χ_la(G) ≥ 3.
pub fn two_color_certificate_check(g: &Graph) -> Result<Vec<(i64, i64, i64, i64)>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (a, b) = match g.bipartition() {
        Some(parts) => parts,
        None => return Ok(vec![]),
    };
    let q = g.size() as i64;
    let total = q * (q + 1) / 2;
    let (x, y) = (
        a.len().min(b.len()) as i64,
        a.len().max(b.len()) as i64,
    );
    if x == y {
        // The certificate requires X > Y, impossible with equal parts.
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    if total % x == 0 && total % y == 0 {
        let (big, small) = (total / x, total / y);
        if big > small {
            out.push((big, small, x, y));
        }
    }
    Ok(out)
}

/// Exact chromatic number by backtracking, for orders up to 16.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    const MAX_ORDER: usize = 16;
    if g.order() > MAX_ORDER {
        return Err(Error::OrderAboveBudget {
            got: g.order(),
            max: MAX_ORDER,
        });
    }
    if g.size() == 0 {
        return Ok(1.min(g.order()));
    }
    let adj = g.adjacency();
    // Order vertices by decreasing degree for earlier pruning.
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].len()));
    for k in 2..=g.order() {
        let mut colors = vec![usize::MAX; g.order()];
        if color_rec(&adj, &order, 0, k, &mut colors) {
            return Ok(k);
        }
    }
    Ok(g.order())
}

fn color_rec(
    adj: &[Vec<usize>],
    order: &[usize],
    pos: usize,
    k: usize,
    colors: &mut [usize],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let mut used = 0u32;
    for &w in &adj[v] {
        if colors[w] != usize::MAX {
            used |= 1 << colors[w];
        }
    }
    // Break color symmetry: only allow one fresh color beyond those used
    // so far in the prefix.
    let fresh = order[..pos]
        .iter()
        .map(|&w| colors[w] + 1)
        .max()
        .unwrap_or(0);
    for c in 0..k.min(fresh + 1) {
        if used & (1 << c) == 0 {
            colors[v] = c;
            if color_rec(adj, order, pos + 1, k, colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_worked_examples() {
        let p3 = Graph::path(3).unwrap();
        let f = EdgeLabeling::new(&p3, vec![1, 2]).unwrap();
        let rep = verify_local_antimagic(&p3, &f).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.color_count, 3);
        assert_eq!(
            rep.classes.keys().copied().collect::<Vec<_>>(),
            vec![1, 2, 3]
        );

        let c3 = Graph::cycle(3).unwrap();
        let f = EdgeLabeling::new(&c3, vec![1, 2, 3]).unwrap();
        let rep = verify_local_antimagic(&c3, &f).unwrap();
        assert!(rep.valid);
        let sums: Vec<i64> = rep.classes.keys().copied().collect();
        assert_eq!(sums, vec![3, 4, 5]);
    }

    #[test]
    fn verify_flags_violations() {
        let p3 = Graph::path(3).unwrap();
        let f = EdgeLabeling::new(&p3, vec![2, 2]).unwrap();
        let rep = verify_local_antimagic(&p3, &f).unwrap();
        assert!(!rep.valid);
        assert!(matches!(
            rep.first_violation,
            Some(Violation::BijectionDefect(_))
        ));

        // C_4 with opposite labels equal: adjacent sums collide.
        let c4 = Graph::cycle(4).unwrap();
        let f = EdgeLabeling::new(&c4, vec![1, 2, 3, 4]).unwrap();
        let rep = verify_local_antimagic(&c4, &f).unwrap();
        if !rep.valid {
            assert!(matches!(
                rep.first_violation,
                Some(Violation::AdjacentEqual { .. })
            ));
        }
    }

    #[test]
    fn pendant_bound_examples() {
        let ct = Graph::coconut_tree(5, 3).unwrap();
        assert_eq!(pendant_lower_bound(&ct).unwrap(), 5);
        let star = Graph::star(6).unwrap();
        assert_eq!(pendant_lower_bound(&star).unwrap(), 7);
        let c8 = Graph::cycle(8).unwrap();
        assert_eq!(pendant_lower_bound(&c8).unwrap(), 1);
        let k2 = Graph::path(2).unwrap();
        assert!(matches!(pendant_lower_bound(&k2), Err(Error::K2Excluded)));
    }

    #[test]
    fn two_color_gate_examples() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert!(two_color_certificate_check(&k33).unwrap().is_empty());
        let c5 = Graph::cycle(5).unwrap();
        assert!(two_color_certificate_check(&c5).unwrap().is_empty());
        // Parts 3 and 10 with q = 20: 210 = 3·70 = 10·21.
        let mut edges = Vec::new();
        for i in 0..10 {
            edges.push((i % 3, 3 + i));
            edges.push(((i + 1) % 3, 3 + i));
        }
        let g = Graph::new(13, edges).unwrap();
        assert_eq!(g.size(), 20);
        let seq = two_color_certificate_check(&g).unwrap();
        assert_eq!(seq, vec![(70, 21, 3, 10)]);
    }

    #[test]
    fn chromatic_number_examples() {
        assert_eq!(chromatic_number(&Graph::cycle(7).unwrap()).unwrap(), 3);
        assert_eq!(
            chromatic_number(&Graph::complete_bipartite(4, 5).unwrap()).unwrap(),
            2
        );
        assert_eq!(chromatic_number(&Graph::wheel(8).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::wheel(5).unwrap()).unwrap(), 4);
        let k5 = Graph::new(5, (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j)))).unwrap();
        assert_eq!(chromatic_number(&k5).unwrap(), 5);
        assert!(chromatic_number(&Graph::cycle(17).unwrap()).is_err());
    }

    #[test]
    fn matrix_sums_examples() {
        let empty = LabelingMatrix::with_holes(vec![vec![None, None], vec![None, None]]);
        let (r, c, hub) = matrix_sums(&empty);
        assert_eq!(r, vec![0, 0]);
        assert_eq!(c, vec![0, 0]);
        assert_eq!(hub, None);

        // Bordered r=3 matrix: hub 30, rows {27,27}, columns {16,16,16}.
        let m = LabelingMatrix::with_holes(vec![
            vec![None, Some(2), Some(4), Some(6)],
            vec![Some(8), Some(5), Some(11), Some(3)],
            vec![Some(10), Some(9), Some(1), Some(7)],
        ])
        .bordered();
        let (r, c, hub) = matrix_sums(&m);
        assert_eq!(hub, Some(30));
        assert_eq!(&r[1..], &[27, 27]);
        assert_eq!(&c[1..], &[16, 16, 16]);
        assert!(validate_tripartite_properties(&m));
    }

    #[test]
    fn tripartite_perturbation_fails() {
        let mut m = LabelingMatrix::with_holes(vec![
            vec![None, Some(1), Some(5)],
            vec![Some(6), Some(7), Some(2)],
            vec![Some(8), Some(3), Some(4)],
        ])
        .bordered();
        assert!(validate_tripartite_properties(&m));
        // Swap two entries inside row 2: row sums survive, columns break.
        m.set(1, 1, Some(2));
        m.set(1, 2, Some(7));
        assert!(!validate_tripartite_properties(&m));
    }
}
