//! Independent brute-force oracles used by the integration tests. None of
//! these call the closed-form code paths they are compared against.

#![allow(dead_code)]

use effdim_core::{compose, enumerate_paths, Path, Quiver};

/// `reach[k][x]`: whether some path of length exactly `k` ends at `x`
/// (`incoming`) or starts at `x` (outgoing), for `k <= max_k`.
pub fn length_table(q: &Quiver, max_k: usize, incoming: bool) -> Vec<Vec<bool>> {
    let n = q.num_vertices();
    let mut table = vec![vec![true; n]];
    for _ in 0..max_k {
        let prev = table.last().unwrap();
        let mut next = vec![false; n];
        for a in q.arrows() {
            let (from, to) = if incoming {
                (a.tail, a.head)
            } else {
                (a.head, a.tail)
            };
            if prev[from] {
                next[to] = true;
            }
        }
        table.push(next);
    }
    table
}

/// Longest path length into (or out of) each vertex, `None` for unbounded.
/// A path of length `n` revisits a vertex, so it lies on a cycle and can be
/// pumped.
pub fn longest(q: &Quiver, incoming: bool) -> Vec<Option<usize>> {
    let n = q.num_vertices();
    let t = length_table(q, n, incoming);
    (0..n)
        .map(|x| {
            if t[n][x] {
                None
            } else {
                (0..n).rev().find(|&k| t[k][x])
            }
        })
        .collect()
}

/// `K(x)` by direct search: grades `k < N` with an incoming path of length
/// `k` and an outgoing path of length `N-1-k`.
pub fn k_set(q: &Quiver, n_trunc: usize) -> Vec<Vec<usize>> {
    let inc = length_table(q, n_trunc - 1, true);
    let out = length_table(q, n_trunc - 1, false);
    (0..q.num_vertices())
        .map(|x| {
            (0..n_trunc)
                .filter(|&k| inc[k][x] && out[n_trunc - 1 - k][x])
                .collect()
        })
        .collect()
}

/// `Σ_x max(|K(x)|, 1)`.
pub fn effdim_truncated_brute(q: &Quiver, n_trunc: usize) -> usize {
    k_set(q, n_trunc).iter().map(|k| k.len().max(1)).sum()
}

/// Cycles at `x` of length `1..=max_len`.
pub fn cycles_at(q: &Quiver, x: usize, max_len: usize) -> Vec<Path> {
    enumerate_paths(q, max_len)
        .into_iter()
        .filter(|p| matches!(p, Path::Arrows(_)) && p.tail(q) == Some(x) && p.head(q) == Some(x))
        .collect()
}

/// Whether all cycles at `x` of length at most `2n` commute pairwise. Two
/// distinct branchings inside a strongly connected component already yield
/// noncommuting cycles of length below `2n`.
pub fn commutative_brute(q: &Quiver, x: usize) -> bool {
    let cycles = cycles_at(q, x, 2 * q.num_vertices());
    cycles
        .iter()
        .all(|p| cycles.iter().all(|r| compose(q, p, r) == compose(q, r, p)))
}

pub fn effdim_path_brute(q: &Quiver) -> usize {
    let n = q.num_vertices();
    n + (0..n).filter(|&x| !commutative_brute(q, x)).count()
}

/// Number of ways to cut the arrow sequence of a cycle at `x` into
/// consecutive first-return cycles at `x`.
pub fn first_return_splittings(q: &Quiver, seq: &[usize], x: usize) -> usize {
    let mut ways = vec![0usize; seq.len() + 1];
    ways[0] = 1;
    for end in 1..=seq.len() {
        for start in 0..end {
            let piece = &seq[start..end];
            let closes = q.arrow(piece[0]).tail == x && q.arrow(piece[piece.len() - 1]).head == x;
            let no_return = piece[..piece.len() - 1]
                .iter()
                .all(|&a| q.arrow(a).head != x);
            let chained = piece
                .windows(2)
                .all(|w| q.arrow(w[0]).head == q.arrow(w[1]).tail);
            if closes && no_return && chained {
                ways[end] += ways[start];
            }
        }
    }
    ways[seq.len()]
}
