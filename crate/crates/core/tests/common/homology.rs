//! Brute-force Rips homology and bottleneck distance, std only, for small
//! point sets.

#![allow(dead_code)]

/// Every vertex subset of size `k + 1` whose pairwise distances are ≤ scale.
fn simplices(n: usize, dist: &dyn Fn(usize, usize) -> f64, scale: f64, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        start: usize,
        n: usize,
        size: usize,
        dist: &dyn Fn(usize, usize) -> f64,
        scale: f64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if cur.iter().all(|&u| dist(u, v) <= scale) {
                cur.push(v);
                rec(v + 1, n, size, dist, scale, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, n, k + 1, dist, scale, &mut cur, &mut out);
    out
}

/// Rank over GF(2) of the rows given as bit vectors.
fn gf2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of ∂_k from k-simplices to (k−1)-simplices.
fn boundary_rank(hi: &[Vec<usize>], lo: &[Vec<usize>]) -> usize {
    if hi.is_empty() || lo.is_empty() {
        return 0;
    }
    let rows = hi
        .iter()
        .map(|s| lo.iter().map(|f| f.iter().all(|v| s.contains(v))).collect())
        .collect();
    gf2_rank(rows)
}

/// β_0..=β_max_dim of the Rips complex at `scale`.
pub fn rips_betti(n: usize, dist: &dyn Fn(usize, usize) -> f64, scale: f64, max_dim: usize) -> Vec<usize> {
    let cells: Vec<Vec<Vec<usize>>> = (0..=max_dim + 1).map(|k| simplices(n, dist, scale, k)).collect();
    let rank: Vec<usize> = (0..=max_dim + 1)
        .map(|k| if k == 0 { 0 } else { boundary_rank(&cells[k], &cells[k - 1]) })
        .collect();
    (0..=max_dim).map(|k| cells[k].len() - rank[k] - rank[k + 1]).collect()
}

/// Maximum matching size in a bipartite graph, by augmenting paths.
fn matching(adj: &[Vec<usize>], right: usize) -> usize {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..adj.len())
        .filter(|&u| augment(u, adj, &mut vec![false; right], &mut owner))
        .count()
}

/// Bottleneck distance between two finite diagrams of (birth, death) pairs.
/// Each side is padded with the diagonal projections of the other side.
pub fn bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let (na, nb) = (a.len(), b.len());
    let size = na + nb;
    if size == 0 {
        return 0.0;
    }
    let half = |p: &(f64, f64)| (p.1 - p.0) / 2.0;
    // Slots 0..na are a's points, na.. are diagonal copies for b; likewise on the right.
    let cost = |i: usize, j: usize| -> f64 {
        match (i < na, j < nb) {
            (true, true) => (a[i].0 - b[j].0).abs().max((a[i].1 - b[j].1).abs()),
            (true, false) => half(&a[i]),
            (false, true) => half(&b[j]),
            (false, false) => 0.0,
        }
    };
    let mut candidates: Vec<f64> = (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).map(|(i, j)| cost(i, j)).collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let feasible = |t: f64| {
        let adj: Vec<Vec<usize>> = (0..size).map(|i| (0..size).filter(|&j| cost(i, j) <= t).collect()).collect();
        matching(&adj, size) == size
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}
