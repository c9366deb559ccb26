//! Set partitions and the moment-to-cumulant (Möbius) formula.

/// All set partitions of `0..k`, each block sorted, blocks ordered by first element.
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, k: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == k {
            out.push(current.clone());
            return;
        }
        for b in 0..current.len() {
            current[b].push(i);
            rec(i + 1, k, current, out);
            current[b].pop();
        }
        current.push(vec![i]);
        rec(i + 1, k, current, out);
        current.pop();
    }
    if k > 0 {
        rec(0, k, &mut current, &mut out);
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Joint cumulant of `k` variables from their mixed moments:
/// κ = Σ_π (|π|−1)! (−1)^{|π|−1} Π_{B∈π} m(B),
/// where `moment` returns the moment of the (sorted) subset of variable positions.
pub fn cumulant_from_moments<F>(k: usize, mut moment: F) -> f64
where
    F: FnMut(&[usize]) -> f64,
{
    set_partitions(k)
        .iter()
        .map(|p| {
            let blocks = p.len();
            let sign = if blocks % 2 == 1 { 1.0 } else { -1.0 };
            let prod: f64 = p.iter().map(|b| moment(b)).product();
            sign * factorial(blocks - 1) * prod
        })
        .sum()
}

/// All strictly increasing index tuples of length `k` drawn from `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}
