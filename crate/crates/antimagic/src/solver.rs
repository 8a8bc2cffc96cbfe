//! Exact χ_la computation and targeted feasibility search on small
//! graphs: the independent oracle the constructive generators are tested
//! against.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{
    chromatic_number, pendant_lower_bound, two_color_certificate_check,
    verify_local_antimagic, EdgeLabeling,
};
use std::collections::HashSet;
use std::time::{Duration, Instant};

/// Budgets for the backtracking searches.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    /// Hard cap on |E| for full χ_la computation.
    pub max_edges: usize,
    /// Backtracking node budget (label assignments tried).
    pub node_budget: u64,
    /// Optional wall-clock budget.
    pub time_budget: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_edges: 12,
            node_budget: 500_000_000,
            time_budget: None,
        }
    }
}

/// Outcome of a bounded feasibility search.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// A verified labeling with at most the requested number of colors.
    Found(EdgeLabeling),
    /// The whole space was searched; no such labeling exists.
    Exhausted,
    /// A budget was hit before the space was covered.
    BudgetHit,
}

/// Either an exact χ_la value with witness, or a bracket when a budget
/// was hit.
#[derive(Debug, Clone)]
pub struct ChiLaCertificate {
    /// Best proven lower bound.
    pub lower: usize,
    /// Color count of the best witness found, if any.
    pub upper: Option<usize>,
    /// A labeling achieving `upper`.
    pub witness: Option<EdgeLabeling>,
    /// True when lower == upper was proven by complete search.
    pub exhausted: bool,
}

impl ChiLaCertificate {
    /// The exact value when the search completed.
    pub fn value(&self) -> Option<usize> {
        (self.exhausted && Some(self.lower) == self.upper).then_some(self.lower)
    }
}

struct Budget {
    nodes_left: u64,
    deadline: Option<Instant>,
    ticks: u32,
    hit: bool,
}

impl Budget {
    fn new(limits: &SearchLimits) -> Self {
        Budget {
            nodes_left: limits.node_budget,
            deadline: limits.time_budget.map(|d| Instant::now() + d),
            ticks: 0,
            hit: false,
        }
    }

    /// Counts one node; returns false when a budget is exceeded.
    fn tick(&mut self) -> bool {
        if self.hit {
            return false;
        }
        if self.nodes_left == 0 {
            self.hit = true;
            return false;
        }
        self.nodes_left -= 1;
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(0x10000) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.hit = true;
                    return false;
                }
            }
        }
        true
    }
}

/// Searches for a local antimagic labeling of `G` with at most `c`
/// colors. For c = 2 the divisor-condition gate runs first and, when it
/// passes, a specialized fixed-target search replaces generic
/// backtracking.
pub fn exists_labeling_with_colors(
    g: &Graph,
    c: usize,
    limits: &SearchLimits,
) -> Result<SearchOutcome> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if c < 2 {
        return Ok(SearchOutcome::Exhausted);
    }
    if c == 2 {
        return two_color_search(g, limits);
    }
    generic_search(g, c, limits)
}

/// c = 2: the only possible sum pairs come from the divisor gate, and the
/// two sums are constant on the parts, so the search fixes per-vertex
/// targets and assigns labels against them.
fn two_color_search(g: &Graph, limits: &SearchLimits) -> Result<SearchOutcome> {
    let certs = two_color_certificate_check(g)?;
    if certs.is_empty() {
        return Ok(SearchOutcome::Exhausted);
    }
    let (a, b) = g.bipartition().expect("gate passed implies bipartite");
    let mut budget = Budget::new(limits);
    for (x_sum, y_sum, x, _y) in certs {
        let mut targets = vec![0i64; g.order()];
        let (sum_a, sum_b) = if a.len() == x as usize {
            (x_sum, y_sum)
        } else {
            (y_sum, x_sum)
        };
        for &v in &a {
            targets[v] = sum_a;
        }
        for &v in &b {
            targets[v] = sum_b;
        }
        if let Some(labels) = target_search(g, &targets, &mut budget) {
            let f = EdgeLabeling::new(g, labels)?;
            debug_assert!(verify_local_antimagic(g, &f)?.valid);
            return Ok(SearchOutcome::Found(f));
        }
        if budget.hit {
            return Ok(SearchOutcome::BudgetHit);
        }
    }
    Ok(SearchOutcome::Exhausted)
}

/// Backtracking with every vertex sum fixed in advance. Labels are tried
/// on edges in most-constrained order; each endpoint prunes by comparing
/// its residual target against the extreme sums still reachable from the
/// unused labels.
fn target_search(g: &Graph, targets: &[i64], budget: &mut Budget) -> Option<Vec<i64>> {
    let m = g.size();
    let order = edge_order(g);
    let mut labels = vec![0i64; m];
    let mut used = vec![false; m + 1];
    let mut residual: Vec<i64> = targets.to_vec();
    let mut open: Vec<usize> = g.degrees();
    rec_target(g, &order, 0, &mut labels, &mut used, &mut residual, &mut open, budget)
        .then_some(labels)
}

#[allow(clippy::too_many_arguments)]
fn rec_target(
    g: &Graph,
    order: &[usize],
    depth: usize,
    labels: &mut Vec<i64>,
    used: &mut Vec<bool>,
    residual: &mut Vec<i64>,
    open: &mut Vec<usize>,
    budget: &mut Budget,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let e = order[depth];
    let (u, v) = g.edges()[e];
    for l in 1..=labels.len() as i64 {
        if used[l as usize] {
            continue;
        }
        if !budget.tick() {
            return false;
        }
        labels[e] = l;
        used[l as usize] = true;
        residual[u] -= l;
        residual[v] -= l;
        open[u] -= 1;
        open[v] -= 1;
        let ok = endpoint_feasible(u, residual, open, used, labels.len())
            && endpoint_feasible(v, residual, open, used, labels.len());
        if ok && rec_target(g, order, depth + 1, labels, used, residual, open, budget) {
            return true;
        }
        labels[e] = 0;
        used[l as usize] = false;
        residual[u] += l;
        residual[v] += l;
        open[u] += 1;
        open[v] += 1;
        if budget.hit {
            return false;
        }
    }
    false
}

/// Can `open[v]` distinct unused labels still sum to `residual[v]`?
fn endpoint_feasible(v: usize, residual: &[i64], open: &[usize], used: &[bool], m: usize) -> bool {
    let need = residual[v];
    let k = open[v];
    if k == 0 {
        return need == 0;
    }
    if need <= 0 {
        return false;
    }
    let mut lo = 0i64;
    let mut hi = 0i64;
    let mut taken = 0;
    for l in 1..=m as i64 {
        if !used[l as usize] {
            lo += l;
            taken += 1;
            if taken == k {
                break;
            }
        }
    }
    if taken < k || lo > need {
        return false;
    }
    taken = 0;
    for l in (1..=m as i64).rev() {
        if !used[l as usize] {
            hi += l;
            taken += 1;
            if taken == k {
                break;
            }
        }
    }
    hi >= need
}

/// Generic c ≥ 3 search: backtracking over edge labels with two prunes —
/// finished adjacent vertices must differ, and the number of distinct
/// finished sums must not exceed c.
fn generic_search(g: &Graph, c: usize, limits: &SearchLimits) -> Result<SearchOutcome> {
    let mut budget = Budget::new(limits);
    let order = edge_order(g);
    let m = g.size();
    let mut labels = vec![0i64; m];
    let mut used = vec![false; m + 1];
    let mut sums = vec![0i64; g.order()];
    let mut open: Vec<usize> = g.degrees();
    let found = rec_generic(
        g,
        &order,
        0,
        c,
        &mut labels,
        &mut used,
        &mut sums,
        &mut open,
        &mut budget,
    );
    if found {
        let f = EdgeLabeling::new(g, labels)?;
        let report = verify_local_antimagic(g, &f)?;
        debug_assert!(report.valid && report.color_count <= c);
        Ok(SearchOutcome::Found(f))
    } else if budget.hit {
        Ok(SearchOutcome::BudgetHit)
    } else {
        Ok(SearchOutcome::Exhausted)
    }
}

#[allow(clippy::too_many_arguments)]
fn rec_generic(
    g: &Graph,
    order: &[usize],
    depth: usize,
    c: usize,
    labels: &mut Vec<i64>,
    used: &mut Vec<bool>,
    sums: &mut Vec<i64>,
    open: &mut Vec<usize>,
    budget: &mut Budget,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let e = order[depth];
    let (u, v) = g.edges()[e];
    for l in 1..=labels.len() as i64 {
        if used[l as usize] {
            continue;
        }
        if !budget.tick() {
            return false;
        }
        labels[e] = l;
        used[l as usize] = true;
        sums[u] += l;
        sums[v] += l;
        open[u] -= 1;
        open[v] -= 1;
        if partial_ok(g, c, sums, open)
            && rec_generic(g, order, depth + 1, c, labels, used, sums, open, budget)
        {
            return true;
        }
        labels[e] = 0;
        used[l as usize] = false;
        sums[u] -= l;
        sums[v] -= l;
        open[u] += 1;
        open[v] += 1;
        if budget.hit {
            return false;
        }
    }
    false
}

fn partial_ok(g: &Graph, c: usize, sums: &[i64], open: &[usize]) -> bool {
    for &(u, v) in g.edges() {
        if open[u] == 0 && open[v] == 0 && sums[u] == sums[v] {
            return false;
        }
    }
    let mut finished: Vec<i64> = (0..g.order())
        .filter(|&v| open[v] == 0)
        .map(|v| sums[v])
        .collect();
    finished.sort_unstable();
    finished.dedup();
    finished.len() <= c
}

/// Unpruned reference search used by the property tests: plain
/// lexicographic enumeration of complete assignments, validity checked
/// only at the leaves.
pub fn exists_labeling_unpruned(g: &Graph, c: usize) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = g.size();
    let mut labels = vec![0i64; m];
    let mut used = vec![false; m + 1];
    fn rec(
        g: &Graph,
        c: usize,
        depth: usize,
        labels: &mut Vec<i64>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == labels.len() {
            let f = EdgeLabeling::new(g, labels.clone()).expect("complete");
            return matches!(
                verify_local_antimagic(g, &f),
                Ok(r) if r.valid && r.color_count <= c
            );
        }
        for l in 1..=labels.len() as i64 {
            if used[l as usize] {
                continue;
            }
            labels[depth] = l;
            used[l as usize] = true;
            if rec(g, c, depth + 1, labels, used) {
                return true;
            }
            labels[depth] = 0;
            used[l as usize] = false;
        }
        false
    }
    Ok(rec(g, c, 0, &mut labels, &mut used))
}

/// Edges in most-constrained-first order: by endpoint degree sum
/// descending, canonical index breaking ties.
fn edge_order(g: &Graph) -> Vec<usize> {
    let deg = g.degrees();
    let mut order: Vec<usize> = (0..g.size()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edges()[e];
        (std::cmp::Reverse(deg[u] + deg[v]), e)
    });
    order
}

/// Exact χ_la with witness, or a bracket when a budget is hit. The lower
/// bound starts from the chromatic number, the pendant bound and the
/// divisor gate; c is then raised until a witness exists.
pub fn exact_chi_la(g: &Graph, limits: &SearchLimits) -> Result<ChiLaCertificate> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.size() > limits.max_edges {
        return Err(Error::OrderAboveBudget {
            got: g.size(),
            max: limits.max_edges,
        });
    }
    let mut lower = 2usize;
    if g.order() <= 16 {
        lower = lower.max(chromatic_number(g)?);
    }
    lower = lower.max(pendant_lower_bound(g)?);
    if lower == 2 && two_color_certificate_check(g)?.is_empty() {
        lower = 3;
    }
    let mut c = lower;
    loop {
        match exists_labeling_with_colors(g, c, limits)? {
            SearchOutcome::Found(f) => {
                let count = verify_local_antimagic(g, &f)?.color_count;
                return Ok(ChiLaCertificate {
                    lower: c.max(count.min(c)),
                    upper: Some(count),
                    witness: Some(f),
                    exhausted: true,
                });
            }
            SearchOutcome::Exhausted => {
                c += 1;
                if c > g.order() {
                    return Err(Error::Other(format!(
                        "no labeling with at most {} colors; search inconsistent",
                        g.order()
                    )));
                }
            }
            SearchOutcome::BudgetHit => {
                return Ok(ChiLaCertificate {
                    lower: c,
                    upper: None,
                    witness: None,
                    exhausted: false,
                })
            }
        }
    }
}

/// Result of scanning all connected graphs of one order for c-color
/// feasibility.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub order: usize,
    pub colors: usize,
    /// Graphs (up to isomorphism) admitting a c-color labeling, each with
    /// a witness.
    pub found: Vec<(Graph, EdgeLabeling)>,
    /// Graphs rejected by the divisor gate without any search.
    pub gated_out: usize,
    /// Graphs actually searched.
    pub searched: usize,
    /// False when any search hit a budget.
    pub complete: bool,
}

/// Scans every connected graph of order n (enumerated up to isomorphism)
/// for a local antimagic labeling with at most c colors.
pub fn scan_order(n: usize, c: usize, limits: &SearchLimits) -> Result<ScanReport> {
    if n > 7 {
        return Err(Error::OrderAboveBudget { got: n, max: 7 });
    }
    let graphs = connected_graphs(n);
    scan_graphs(graphs, n, c, limits)
}

/// Same scan over an externally supplied graph6 census (one graph per
/// line; lines not of order n are rejected).
pub fn scan_graph6(lines: &[&str], n: usize, c: usize, limits: &SearchLimits) -> Result<ScanReport> {
    let mut graphs = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let g = Graph::from_graph6(line)?;
        if g.order() != n {
            return Err(Error::Other(format!(
                "graph6 line has order {}, expected {n}",
                g.order()
            )));
        }
        if g.is_connected() {
            graphs.push(g);
        }
    }
    scan_graphs(graphs, n, c, limits)
}

fn scan_graphs(
    graphs: Vec<Graph>,
    n: usize,
    c: usize,
    limits: &SearchLimits,
) -> Result<ScanReport> {
    use rayon::prelude::*;
    let mut report = ScanReport {
        order: n,
        colors: c,
        found: Vec::new(),
        gated_out: 0,
        searched: 0,
        complete: true,
    };
    let mut to_search = Vec::new();
    for g in graphs {
        if c == 2 && two_color_certificate_check(&g)?.is_empty() {
            report.gated_out += 1;
        } else {
            to_search.push(g);
        }
    }
    report.searched = to_search.len();
    // Each graph's search is independent and deterministic, so the report
    // is identical regardless of thread count.
    let outcomes: Vec<Result<SearchOutcome>> = to_search
        .par_iter()
        .map(|g| exists_labeling_with_colors(g, c, limits))
        .collect();
    for (g, outcome) in to_search.into_iter().zip(outcomes) {
        match outcome? {
            SearchOutcome::Found(f) => report.found.push((g, f)),
            SearchOutcome::Exhausted => {}
            SearchOutcome::BudgetHit => report.complete = false,
        }
    }
    Ok(report)
}

/// All connected graphs of order n, one representative per isomorphism
/// class. Built by vertex augmentation with canonical-form deduplication
/// (adjacency bitstring minimized over all vertex permutations — adequate
/// at n ≤ 7).
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let mut current: Vec<Vec<u64>> = vec![vec![0u64]]; // adjacency rows as bitmasks, order 1
    for k in 2..=n {
        let perms = permutations(k);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut next = Vec::new();
        for adj in &current {
            for mask in 0u64..(1 << (k - 1)) {
                let mut grown: Vec<u64> = adj.clone();
                grown.push(mask);
                for (v, row) in grown.iter_mut().enumerate().take(k - 1) {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                let canon = canonical_form(&grown, &perms);
                if seen.insert(canon) {
                    next.push(grown);
                }
            }
        }
        current = next;
    }
    current
        .into_iter()
        .filter_map(|adj| {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if adj[u] >> v & 1 == 1 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).expect("enumeration emits valid graphs");
            g.is_connected().then_some(g)
        })
        .collect()
}

/// Minimum adjacency bitstring over all relabelings.
fn canonical_form(adj: &[u64], perms: &[Vec<usize>]) -> Vec<u64> {
    let k = adj.len();
    let mut best: Option<Vec<u64>> = None;
    for p in perms {
        let mut rows = vec![0u64; k];
        for u in 0..k {
            for v in 0..k {
                if adj[u] >> v & 1 == 1 {
                    rows[p[u]] |= 1 << p[v];
                }
            }
        }
        if best.as_ref().is_none_or(|b| &rows < b) {
            best = Some(rows);
        }
    }
    best.expect("at least the identity permutation")
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    heap_permute(&mut items, k, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}
