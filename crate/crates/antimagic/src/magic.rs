//! Magic rectangles and magic squares: the arithmetic backbone of the
//! complete-bipartite and join constructions.
//!
//! An h×k magic rectangle over `[base, base + hk - 1]` uses each value
//! once, with all row sums equal and all column sums equal. One exists iff
//! h ≡ k (mod 2), h,k ≥ 2, and (h,k) ≠ (2,2). The generator here is fully
//! deterministic: squares use the classical Siamese / complement / LUX
//! methods, odd×odd rectangles reduce to a 3×n core plus complementary row
//! pairs, and even×even rectangles use complementary row pairs alone, with
//! a subset-sum balancing step per pair.

use crate::error::{Error, Result};
use crate::labeling::LabelingMatrix;

/// An h×k grid using each of `base..base+hk-1` once, with constant row
/// sums and constant column sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagicRectangle {
    h: usize,
    k: usize,
    base: i64,
    grid: Vec<Vec<i64>>,
}

impl MagicRectangle {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn grid(&self) -> &[Vec<i64>] {
        &self.grid
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.grid[i][j]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.grid.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        (0..self.k)
            .map(|j| (0..self.h).map(|i| self.grid[i][j]).sum())
            .collect()
    }

    /// The common row sum. For base 1 this is k(hk+1)/2.
    pub fn row_constant(&self) -> i64 {
        let n = (self.h * self.k) as i64;
        self.k as i64 * (n + 1) / 2 + self.k as i64 * (self.base - 1)
    }

    /// The common column sum. For base 1 this is h(hk+1)/2.
    pub fn col_constant(&self) -> i64 {
        let n = (self.h * self.k) as i64;
        self.h as i64 * (n + 1) / 2 + self.h as i64 * (self.base - 1)
    }

    pub fn transposed(&self) -> MagicRectangle {
        let grid = (0..self.k)
            .map(|j| (0..self.h).map(|i| self.grid[i][j]).collect())
            .collect();
        MagicRectangle {
            h: self.k,
            k: self.h,
            base: self.base,
            grid,
        }
    }

    pub fn to_matrix(&self) -> LabelingMatrix {
        LabelingMatrix::full(self.grid.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.grid)
    }
}

/// True iff the grid uses exactly `base..base+hk-1` and has constant row
/// and column sums (matching the closed-form constants).
pub fn verify_magic(m: &MagicRectangle) -> bool {
    let n = (m.h * m.k) as i64;
    let mut values: Vec<i64> = m.grid.iter().flatten().copied().collect();
    values.sort_unstable();
    if values != (m.base..m.base + n).collect::<Vec<_>>() {
        return false;
    }
    m.row_sums().iter().all(|&s| s == m.row_constant())
        && m.col_sums().iter().all(|&s| s == m.col_constant())
}

/// The Siamese (De la Loubère) magic square of odd order p: 1 starts in
/// the middle of the first row, each next value moves diagonally up-right
/// with wraparound, dropping down one row on collision. The middle column
/// is exactly (1, p+2, 2p+3, ..., p²).
pub fn siamese_square(p: usize) -> Result<MagicRectangle> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::SiameseEvenOrder(p));
    }
    let mut grid = vec![vec![0i64; p]; p];
    let (mut i, mut j) = (0usize, (p - 1) / 2);
    for v in 1..=(p * p) as i64 {
        grid[i][j] = v;
        let (ni, nj) = ((i + p - 1) % p, (j + 1) % p);
        if grid[ni][nj] != 0 {
            i = (i + 1) % p;
        } else {
            i = ni;
            j = nj;
        }
    }
    let mid = (p - 1) / 2;
    debug_assert!((0..p).all(|r| grid[r][mid] == 1 + (r as i64) * (p as i64 + 1)));
    let m = MagicRectangle {
        h: p,
        k: p,
        base: 1,
        grid,
    };
    debug_assert!(verify_magic(&m));
    Ok(m)
}

/// Cyclically shifts a column up by one (top entry moves to the bottom)
/// and returns the result as a labeling matrix. Column sums are unchanged.
pub fn shift_column_up(m: &MagicRectangle, col: usize) -> Result<LabelingMatrix> {
    if col >= m.k {
        return Err(Error::ColumnOutOfRange {
            col,
            h: m.h,
            k: m.k,
        });
    }
    let mut grid = m.grid.clone();
    let top = grid[0][col];
    for i in 0..m.h - 1 {
        grid[i][col] = grid[i + 1][col];
    }
    grid[m.h - 1][col] = top;
    Ok(LabelingMatrix::full(grid))
}

/// Builds an h×k magic rectangle over `[base, base + hk - 1]`, or reports
/// why none exists.
pub fn magic_rectangle(h: usize, k: usize, base: i64) -> Result<MagicRectangle> {
    if h < 2 || k < 2 {
        return Err(Error::NoMagicRectangle {
            h,
            k,
            reason: "both dimensions must be at least 2".into(),
        });
    }
    if h % 2 != k % 2 {
        return Err(Error::NoMagicRectangle {
            h,
            k,
            reason: "dimensions must have equal parity".into(),
        });
    }
    if (h, k) == (2, 2) {
        return Err(Error::NoMagicRectangle {
            h,
            k,
            reason: "the 2x2 case is the single excluded size".into(),
        });
    }
    let mut m = if h <= k {
        magic_rectangle_base1(h, k)?
    } else {
        magic_rectangle_base1(k, h)?.transposed()
    };
    if base != 1 {
        for row in &mut m.grid {
            for v in row.iter_mut() {
                *v += base - 1;
            }
        }
        m.base = base;
    }
    if !verify_magic(&m) {
        return Err(Error::ConstructionBug(format!(
            "{}x{} rectangle failed self-verification",
            h, k
        )));
    }
    Ok(m)
}

/// Base-1 construction assuming h ≤ k.
fn magic_rectangle_base1(h: usize, k: usize) -> Result<MagicRectangle> {
    if h == k {
        return magic_square(h);
    }
    if h.is_multiple_of(2) {
        let grid = even_pairs_grid(h, k, 1, (h * k) as i64)?;
        return Ok(MagicRectangle {
            h,
            k,
            base: 1,
            grid,
        });
    }
    if h == 3 {
        return magic_3xk(k);
    }
    // Odd 5 <= h < k: central self-complementary column plus (k-1)/2
    // complementary column pairs, rebalanced by row-couple transfers.
    let grid = oddxodd_central_pairs(h, k)?;
    Ok(MagicRectangle {
        h,
        k,
        base: 1,
        grid,
    })
}

/// Odd h ≥ 5, odd k > h. Column 0 is the self-complementary central
/// column (mid-1, mid-2, ..., mid, ..., mid+2, mid+1) around the fixed
/// point mid = (hk+1)/2. The remaining values split into (k-1)/2 column
/// pairs: a pair is built from h "low" values, (h+1)/2 of which are
/// complemented, chosen so the column sums h·mid; the pair's complement
/// column mirrors it, so aligned pairs add hk+1 to every row. The central
/// column leaves row i short by i+1 against row h-1-i; transfers (placing
/// two values of one pair column misaligned) repay exactly that.
fn oddxodd_central_pairs(h: usize, k: usize) -> Result<Vec<Vec<i64>>> {
    let bug = |msg: String| Error::ConstructionBug(msg);
    let total = (h * k) as i64;
    let mid = (total + 1) / 2;
    let b = (h - 1) / 2;
    let q = (k - 1) / 2;
    let p = (h * q) as i64; // count of lows outside the central column

    // Every group satisfies Σ(F) − Σ(rest) = mid, so Σ(group) ≡ mid (mod 2)
    // and the whole pool must sum to q·mid (mod 2). The central column is
    // free to take any b lows paired with their complements; taking the top
    // b lows gives the pool [1, p], and when that has the wrong parity,
    // trading the low p+1 for p flips it.
    let parity_ok = (q as i64 * mid - p * (p + 1) / 2) % 2 == 0;
    let central_lows: Vec<i64> = if parity_ok {
        (1..=b as i64).map(|i| p + i).collect()
    } else {
        std::iter::once(p).chain((2..=b as i64).map(|i| p + i)).collect()
    };

    // Each group is one anchor f0, one "spread" pair (r, r+δ) from [1, 2q]
    // and b−1 adjacent pairs (m, m+1) from the middle block, with the
    // larger element of every pair complemented:
    //   Σ(F) − Σ(rest) = f0 + δ + (b−1).
    // Setting f0 = p + 2 − δ makes that mid for every δ, and the δ values
    // below place all anchors among the top q pool values. The spread
    // pairs must tile [1, 2q] exactly; their difference multiset is forced
    // up to the parity of its sum, which matches the pool parity fixed
    // above.
    let diffs: Vec<i64> = if parity_ok {
        (2..=q as i64 + 1).collect()
    } else {
        std::iter::once(1).chain(3..=q as i64 + 1).collect()
    };
    let spread = pack_diff_pairs(2 * q as i64, &diffs)
        .ok_or_else(|| bug(format!("{}x{}: no spread-pair tiling", h, k)))?;

    let mut groups: Vec<(Vec<i64>, Vec<i64>)> = Vec::with_capacity(q);
    let mut middle = 2 * q as i64 + 1; // adjacent pairs tile [2q+1, p−q]
    for (g, &(r, f)) in spread.iter().enumerate() {
        let delta = f - r;
        let f0 = p + 2 - delta;
        let mut fs = vec![f0, f];
        let mut rest = vec![r];
        for _ in 0..b - 1 {
            rest.push(middle);
            fs.push(middle + 1);
            middle += 2;
        }
        debug_assert_eq!(
            fs.iter().sum::<i64>() - rest.iter().sum::<i64>(),
            mid,
            "group {} of {}x{}",
            g,
            h,
            k
        );
        fs.sort_unstable();
        rest.sort_unstable();
        groups.push((fs, rest));
    }
    debug_assert_eq!(middle - 1, p - q as i64);

    // Column value sets: kept lows plus complements of the F-part.
    let columns: Vec<Vec<i64>> = groups
        .iter()
        .map(|(f, rest)| {
            let mut vals: Vec<i64> = rest.clone();
            vals.extend(f.iter().map(|&v| total + 1 - v));
            vals.sort_unstable();
            debug_assert_eq!(vals.iter().sum::<i64>(), mid * h as i64);
            vals
        })
        .collect();

    // Couple i (rows i and h-1-i) holds central low cl[i]; it leaves row i
    // short by mid − cl[i] against its partner row, repaid by placing two
    // values of one pair column misaligned. Prefer a single pair holding
    // two free values exactly that far apart; fall back to a sum of signed
    // differences across pairs.
    let mut cl = central_lows.clone();
    cl.sort_unstable_by(|x, y| y.cmp(x));
    let mut used: Vec<Vec<bool>> = columns.iter().map(|c| vec![false; c.len()]).collect();
    // per pair, per couple: (top value, bottom value)
    let mut moves: Vec<Vec<Option<(i64, i64)>>> = vec![vec![None; b]; q];
    let mut order: Vec<usize> = (0..b).collect();
    order.sort_unstable_by_key(|&i| cl[i]);
    for i in order {
        let target = mid - cl[i];
        if !commit_transfer(&columns, &mut used, &mut moves, i, target) {
            return Err(bug(format!("{}x{}: no transfer of {}", h, k, target)));
        }
    }

    let mut grid = vec![vec![0i64; k]; h];
    for i in 0..b {
        grid[i][0] = cl[i];
        grid[h - 1 - i][0] = total + 1 - cl[i];
    }
    grid[b][0] = mid;
    for p in 0..q {
        let (c1, c2) = (1 + 2 * p, 2 + 2 * p);
        let mut leftovers: Vec<i64> = Vec::new();
        let mut row_of = vec![None::<i64>; h];
        for i in 0..b {
            if let Some((u, w)) = moves[p][i] {
                row_of[i] = Some(u);
                row_of[h - 1 - i] = Some(w);
            }
        }
        for (vi, &v) in columns[p].iter().enumerate() {
            if !used[p][vi] {
                leftovers.push(v);
            }
        }
        let mut it = leftovers.into_iter();
        for r in 0..h {
            let v = match row_of[r] {
                Some(v) => {
                    // Misaligned: the complement column mirrors the couple.
                    grid[r][c1] = v;
                    continue;
                }
                None => it.next().ok_or_else(|| bug("pair underfull".into()))?,
            };
            grid[r][c1] = v;
            grid[r][c2] = total + 1 - v;
        }
        for i in 0..b {
            if let Some((u, w)) = moves[p][i] {
                grid[i][c2] = total + 1 - w;
                grid[h - 1 - i][c2] = total + 1 - u;
            }
        }
    }
    Ok(grid)
}

/// Partitions [1, n] into pairs whose differences are exactly `diffs`
/// (one pair per entry). Backtracking: repeatedly pair the smallest free
/// value, trying the larger differences first.
fn pack_diff_pairs(n: i64, diffs: &[i64]) -> Option<Vec<(i64, i64)>> {
    fn go(free: &mut Vec<bool>, diffs: &mut Vec<i64>, out: &mut Vec<(i64, i64)>) -> bool {
        let v = match free.iter().position(|&f| f) {
            Some(i) => i as i64 + 1,
            None => return true,
        };
        for di in (0..diffs.len()).rev() {
            let d = diffs[di];
            let w = v + d;
            if w as usize > free.len() || !free[w as usize - 1] {
                continue;
            }
            free[v as usize - 1] = false;
            free[w as usize - 1] = false;
            diffs.remove(di);
            out.push((v, w));
            if go(free, diffs, out) {
                return true;
            }
            out.pop();
            diffs.insert(di, d);
            free[v as usize - 1] = true;
            free[w as usize - 1] = true;
        }
        false
    }
    let mut free = vec![true; n as usize];
    let mut ds: Vec<i64> = diffs.to_vec();
    ds.sort_unstable();
    let mut out = Vec::with_capacity(diffs.len());
    if go(&mut free, &mut ds, &mut out) {
        Some(out)
    } else {
        None
    }
}

/// Commits transfers totalling `target` to couple `i`: first looks for a
/// single column holding two free values exactly `target` apart, then
/// falls back to a signed-difference DP across columns.
fn commit_transfer(
    columns: &[Vec<i64>],
    used: &mut [Vec<bool>],
    moves: &mut [Vec<Option<(i64, i64)>>],
    couple: usize,
    target: i64,
) -> bool {
    use std::collections::HashMap;
    let free_pairs = |p: usize, used: &[Vec<bool>]| -> Vec<(usize, usize)> {
        let n = columns[p].len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && !used[p][x] && !used[p][y] {
                    out.push((x, y));
                }
            }
        }
        out
    };
    // Single-column exact hit.
    for p in 0..columns.len() {
        if moves[p][couple].is_some() {
            continue;
        }
        for (x, y) in free_pairs(p, used) {
            if columns[p][x] - columns[p][y] == target {
                used[p][x] = true;
                used[p][y] = true;
                moves[p][couple] = Some((columns[p][x], columns[p][y]));
                return true;
            }
        }
    }
    // Two columns: signed differences d1 + d2 = target.
    let diff_maps: Vec<HashMap<i64, (usize, usize)>> = (0..columns.len())
        .map(|p| {
            let mut m = HashMap::new();
            if moves[p][couple].is_none() {
                for (x, y) in free_pairs(p, used) {
                    m.entry(columns[p][x] - columns[p][y]).or_insert((x, y));
                }
            }
            m
        })
        .collect();
    for p1 in 0..columns.len() {
        for (&d1, &(x1, y1)) in &diff_maps[p1] {
            for p2 in p1 + 1..columns.len() {
                if let Some(&(x2, y2)) = diff_maps[p2].get(&(target - d1)) {
                    for &(p, x, y) in &[(p1, x1, y1), (p2, x2, y2)] {
                        used[p][x] = true;
                        used[p][y] = true;
                        moves[p][couple] = Some((columns[p][x], columns[p][y]));
                    }
                    return true;
                }
            }
        }
    }
    // General fallback: one signed difference per column, summing to
    // target, with the reachable-sum table capped to keep this bounded.
    let mut reach: HashMap<i64, Vec<(usize, usize, usize)>> = HashMap::new();
    reach.insert(0, Vec::new());
    for p in 0..columns.len() {
        if moves[p][couple].is_some() {
            continue;
        }
        let opts = free_pairs(p, used);
        let mut next = reach.clone();
        for (&s, path) in &reach {
            for &(x, y) in &opts {
                let d = columns[p][x] - columns[p][y];
                next.entry(s + d).or_insert_with(|| {
                    let mut np = path.clone();
                    np.push((p, x, y));
                    np
                });
            }
            if next.len() > 200_000 {
                break;
            }
        }
        reach = next;
        if reach.contains_key(&target) {
            break;
        }
    }
    match reach.remove(&target) {
        Some(path) if !path.is_empty() => {
            for (p, x, y) in path {
                used[p][x] = true;
                used[p][y] = true;
                moves[p][couple] = Some((columns[p][x], columns[p][y]));
            }
            true
        }
        _ => false,
    }
}

fn magic_square(n: usize) -> Result<MagicRectangle> {
    if n % 2 == 1 {
        siamese_square(n)
    } else if n.is_multiple_of(4) {
        Ok(complement_square(n))
    } else {
        Ok(lux_square(n))
    }
}

/// Doubly-even squares: write 1..n² row-major, then replace v by n²+1-v on
/// the two diagonal residue patterns.
fn complement_square(n: usize) -> MagicRectangle {
    let total = (n * n) as i64;
    let grid = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = (i * n + j) as i64 + 1;
                    if i % 4 == j % 4 || i % 4 + j % 4 == 3 {
                        total + 1 - v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let m = MagicRectangle {
        h: n,
        k: n,
        base: 1,
        grid,
    };
    debug_assert!(verify_magic(&m));
    m
}

/// Singly-even squares by the LUX method: a Siamese square of order
/// 2m+1 expanded into 2×2 blocks stamped with the L, U, X patterns.
fn lux_square(n: usize) -> MagicRectangle {
    let m = (n - 2) / 4;
    let small = 2 * m + 1;
    let s = siamese_square(small).expect("odd order");
    const L: [[i64; 2]; 2] = [[4, 1], [2, 3]];
    const U: [[i64; 2]; 2] = [[1, 4], [2, 3]];
    const X: [[i64; 2]; 2] = [[1, 4], [3, 2]];
    let mut grid = vec![vec![0i64; n]; n];
    for i in 0..small {
        for j in 0..small {
            let pattern = if (i, j) == (m, m) {
                U
            } else if (i, j) == (m + 1, m) || i <= m {
                L
            } else if i == m + 1 {
                U
            } else {
                X
            };
            let v = s.get(i, j);
            for di in 0..2 {
                for dj in 0..2 {
                    grid[2 * i + di][2 * j + dj] = 4 * (v - 1) + pattern[di][dj];
                }
            }
        }
    }
    let out = MagicRectangle {
        h: n,
        k: n,
        base: 1,
        grid,
    };
    debug_assert!(verify_magic(&out));
    out
}

/// 3×n magic rectangle, n odd ≥ 3.
fn magic_3xk(n: usize) -> Result<MagicRectangle> {
    debug_assert!(n % 2 == 1 && n >= 3);
    if n == 3 {
        return siamese_square(3);
    }
    let grid = mr3_two_region(n)
        .or_else(|| mr3_pairs_central(n))
        .ok_or_else(|| Error::ConstructionBug(format!("3x{} construction failed", n)))?;
    Ok(MagicRectangle {
        h: 3,
        k: n,
        base: 1,
        grid,
    })
}

/// Primary 3×n scheme: the middle row is 2n+1-j; the outer rows split two
/// interleaved bijections of [1,n] and [2n+1,3n] so that every column sums
/// to (9n+3)/2, with a subset-sum step balancing row 1. The balancing
/// target is provably unreachable when 3 divides n (every flip delta is
/// the same residue mod 3), so this returns None for those n.
fn mr3_two_region(n: usize) -> Option<Vec<Vec<i64>>> {
    let nn = n as i64;
    let x = |j: i64| if j <= (nn - 1) / 2 { 2 * j } else { 2 * j - nn };
    let y = |j: i64| 2 * nn + (nn + 1) / 2 + j - x(j);
    let deltas: Vec<i64> = (1..=nn).map(|j| y(j) - x(j)).collect();
    let take = subset_sum(&deltas, nn * nn)?;
    let mut grid = vec![vec![0i64; n]; 3];
    for j in 1..=nn {
        let col = (j - 1) as usize;
        let (top, bottom) = if take[col] {
            (y(j), x(j))
        } else {
            (x(j), y(j))
        };
        grid[0][col] = top;
        grid[1][col] = 2 * nn + 1 - j;
        grid[2][col] = bottom;
    }
    Some(grid)
}

/// Fallback 3×n scheme for n divisible by 3: one self-complementary
/// central column (t, (3n+1)/2, 3n+1-t) plus (n-1)/2 complementary column
/// pairs. Each pair column is {a, b, 3n+1-c} for a triple a+b-c = (3n+1)/2
/// of "low" values; aligned complement columns contribute 3n+1 to every
/// row, and a signed choice of one value-difference per pair transfers the
/// central column's row imbalance between the outer rows.
fn mr3_pairs_central(n: usize) -> Option<Vec<Vec<i64>>> {
    let nn = n as i64;
    let mid = (3 * nn + 1) / 2;
    let total = 3 * nn;
    let pairs = (nn - 1) / 2;
    for t in 1..mid {
        let lows: Vec<i64> = (1..mid).filter(|&v| v != t).collect();
        let low_sum: i64 = lows.iter().sum();
        let rem = low_sum - pairs * mid;
        if rem < 0 || rem % 2 != 0 {
            continue;
        }
        let mut budget = 200_000usize;
        let mut triples = Vec::new();
        let mut pool = lows.clone();
        if !triple_partition(&mut pool, mid, &mut triples, &mut budget) {
            continue;
        }
        let delta = mid - t;
        let transfers = match pick_transfers(&triples, total, delta) {
            Some(ts) => ts,
            None => continue,
        };
        let mut grid = vec![vec![0i64; n]; 3];
        grid[0][0] = t;
        grid[1][0] = mid;
        grid[2][0] = total + 1 - t;
        for (p, (&(a, b, c), &d)) in triples.iter().zip(transfers.iter()).enumerate() {
            let values = [a, b, total + 1 - c];
            let (c1, c2) = (1 + 2 * p, 2 + 2 * p);
            if d == 0 {
                // Aligned complements: every row gets total+1 from the pair.
                for (row, &v) in values.iter().enumerate() {
                    grid[row][c1] = v;
                    grid[row][c2] = total + 1 - v;
                }
            } else {
                // Find (u, w) in the column with u - w = d; placing u top /
                // w bottom against a complement column aligned the other
                // way moves d from the bottom row to the top row.
                let (u, w) = find_diff_pair(&values, d)?;
                let z = values.iter().copied().find(|&v| v != u && v != w)?;
                grid[0][c1] = u;
                grid[1][c1] = z;
                grid[2][c1] = w;
                grid[0][c2] = total + 1 - w;
                grid[1][c2] = total + 1 - z;
                grid[2][c2] = total + 1 - u;
            }
        }
        return Some(grid);
    }
    None
}

/// Partitions the pool into triples (a, b, c), a > b > c, with
/// a + b - c = target. Largest-first: the largest remaining value can only
/// play the role of a.
fn triple_partition(
    pool: &mut Vec<i64>,
    target: i64,
    out: &mut Vec<(i64, i64, i64)>,
    budget: &mut usize,
) -> bool {
    if pool.is_empty() {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let a = *pool.last().unwrap();
    for bi in (0..pool.len() - 1).rev() {
        let b = pool[bi];
        let c = a + b - target;
        if c >= b {
            continue;
        }
        if c < 1 {
            break;
        }
        let ci = match pool.binary_search(&c) {
            Ok(i) => i,
            Err(_) => continue,
        };
        let mut next: Vec<i64> = pool
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pool.len() - 1 && i != bi && i != ci)
            .map(|(_, &v)| v)
            .collect();
        out.push((a, b, c));
        if triple_partition(&mut next, target, out, budget) {
            return true;
        }
        out.pop();
        if *budget == 0 {
            return false;
        }
    }
    false
}

/// For each pair column, chooses a signed transfer amount (0 or ± a
/// difference of two of its three values) so the transfers sum to the
/// target.
fn pick_transfers(triples: &[(i64, i64, i64)], total: i64, target: i64) -> Option<Vec<i64>> {
    use std::collections::HashMap;
    let mut reach: HashMap<i64, Vec<i64>> = HashMap::new();
    reach.insert(0, Vec::new());
    for &(a, b, c) in triples {
        let values = [a, b, total + 1 - c];
        let mut opts = vec![0i64];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    opts.push(values[i] - values[j]);
                }
            }
        }
        let mut next: HashMap<i64, Vec<i64>> = HashMap::new();
        for (&s, path) in &reach {
            for &o in &opts {
                next.entry(s + o).or_insert_with(|| {
                    let mut p = path.clone();
                    p.push(o);
                    p
                });
            }
        }
        reach = next;
    }
    reach.remove(&target)
}

fn find_diff_pair(values: &[i64; 3], d: i64) -> Option<(i64, i64)> {
    for &u in values {
        for &w in values {
            if u - w == d {
                return Some((u, w));
            }
        }
    }
    None
}

/// Rows of complementary pairs: pair p owns a block of k values t and
/// places t in row 2p and hk+1-t (complement within [1, total]) in row
/// 2p+1, same column, so columns balance automatically; a subset-sum step
/// flips enough cells to balance each pair's rows. `rows` must be even;
/// the values used are [1, k·rows/2] and their complements in [1, total].
fn even_pairs_grid(rows: usize, k: usize, base_t: i64, total: i64) -> Result<Vec<Vec<i64>>> {
    debug_assert!(rows.is_multiple_of(2));
    let pairs = rows / 2;
    let kk = k as i64;
    let row_target = kk * (total + 1) / 2;
    let mut owned: Vec<Vec<i64>> = (0..pairs as i64)
        .map(|p| (0..kk).map(|c| base_t + p * kk + c).collect())
        .collect();
    let mut grid = vec![vec![0i64; k]; rows];
    for p in 0..pairs {
        let mut flips = balance_pair(&owned[p], total, row_target);
        if flips.is_none() && p + 1 < pairs {
            // Parity/range obstruction: trade this block's max for the
            // next block's min and retry both.
            let last = owned[p].len() - 1;
            let (left, right) = owned.split_at_mut(p + 1);
            std::mem::swap(&mut left[p][last], &mut right[0][0]);
            owned[p].sort_unstable();
            owned[p + 1].sort_unstable();
            flips = balance_pair(&owned[p], total, row_target);
        }
        let flips = flips.ok_or_else(|| {
            Error::ConstructionBug(format!("row pair {} of {} rows not balanceable", p, rows))
        })?;
        for c in 0..k {
            let t = owned[p][c];
            let (top, bottom) = if flips[c] {
                (total + 1 - t, t)
            } else {
                (t, total + 1 - t)
            };
            grid[2 * p][c] = top;
            grid[2 * p + 1][c] = bottom;
        }
    }
    Ok(grid)
}

fn balance_pair(block: &[i64], total: i64, row_target: i64) -> Option<Vec<bool>> {
    let deltas: Vec<i64> = block.iter().map(|&t| total + 1 - 2 * t).collect();
    let need = row_target - block.iter().sum::<i64>();
    subset_sum(&deltas, need)
}

/// Signed subset-sum with reconstruction: returns, for each position,
/// whether it belongs to a subset with the given sum.
fn subset_sum(values: &[i64], target: i64) -> Option<Vec<bool>> {
    let neg: i64 = values.iter().filter(|&&v| v < 0).sum();
    let pos: i64 = values.iter().filter(|&&v| v > 0).sum();
    if target < neg || target > pos {
        return None;
    }
    let width = (pos - neg + 1) as usize;
    let offset = -neg;
    // reach[i][s] = sum s achievable using a subset of the first i values.
    let mut reach = vec![vec![false; width]; values.len() + 1];
    reach[0][offset as usize] = true;
    for (i, &v) in values.iter().enumerate() {
        for s in 0..width {
            if reach[i][s] {
                reach[i + 1][s] = true;
                let t = s as i64 + v;
                if t >= 0 && (t as usize) < width {
                    reach[i + 1][t as usize] = true;
                }
            }
        }
    }
    let mut s = (target + offset) as usize;
    if !reach[values.len()][s] {
        return None;
    }
    let mut take = vec![false; values.len()];
    for i in (0..values.len()).rev() {
        if reach[i][s] {
            continue;
        }
        take[i] = true;
        s = (s as i64 - values[i]) as usize;
    }
    Some(take)
}
