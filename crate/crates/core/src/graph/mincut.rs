use super::{component_groups, components, crossing_weight, Cut, Multigraph};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`min_cut_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 20;

/// Global minimum cut by Stoer–Wagner maximum-adjacency phases.
///
/// A disconnected graph yields a zero-weight cut around the component of node 0.
pub fn min_cut_exact(g: &Multigraph) -> Result<Cut> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("min cut needs n >= 2, got {n}")));
    }
    let labels = components(g, &g.all_edges());
    let groups = component_groups(&labels);
    if groups.len() > 1 {
        return Ok(Cut {
            members: groups[0].clone(),
            weight: 0,
        });
    }

    let mut w = vec![vec![0u64; n]; n];
    for e in g.edges() {
        w[e.u][e.v] += e.weight;
        w[e.v][e.u] += e.weight;
    }
    let mut merged: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;

    while alive.len() > 1 {
        let mut attach = vec![0u64; n];
        let mut added = vec![false; n];
        let mut prev = alive[0];
        let mut last = alive[0];
        added[last] = true;
        for &x in &alive {
            attach[x] = w[last][x];
        }
        for _ in 1..alive.len() {
            let next = *alive
                .iter()
                .filter(|&&x| !added[x])
                .max_by_key(|&&x| (attach[x], std::cmp::Reverse(x)))
                .expect("a node remains");
            added[next] = true;
            prev = last;
            last = next;
            for &x in &alive {
                if !added[x] {
                    attach[x] += w[next][x];
                }
            }
        }
        let phase = attach[last];
        if best.as_ref().is_none_or(|(b, _)| phase < *b) {
            best = Some((phase, merged[last].clone()));
        }
        let moved = std::mem::take(&mut merged[last]);
        merged[prev].extend(moved);
        for &x in &alive {
            let add = w[last][x];
            w[prev][x] += add;
            w[x][prev] = w[prev][x];
        }
        w[prev][prev] = 0;
        alive.retain(|&x| x != last);
    }

    let (weight, mut members) = best.expect("n >= 2 runs a phase");
    members.sort_unstable();
    Ok(Cut { members, weight })
}

/// Exhaustive minimum cut over the `2^(n-1) - 1` sides that exclude node 0.
pub fn min_cut_bruteforce(g: &Multigraph) -> Result<Cut> {
    let n = g.n();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::SizeLimit {
            n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("min cut needs n >= 2, got {n}")));
    }
    let mut side = vec![false; n];
    let mut best: Option<(u64, u64)> = None;
    for mask in 1u64..(1 << (n - 1)) {
        for (v, s) in side.iter_mut().enumerate().skip(1) {
            *s = mask >> (v - 1) & 1 == 1;
        }
        let w = crossing_weight(g, &side);
        if best.is_none_or(|(b, _)| w < b) {
            best = Some((w, mask));
        }
    }
    let (weight, mask) = best.expect("n >= 2 has a proper cut");
    let members = (1..n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
    Ok(Cut { members, weight })
}
