//! Bipartite matching: Hopcroft–Karp for maximum cardinality and the
//! Hungarian method for minimum-cost perfect assignment.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

const NIL: usize = usize::MAX;

/// Size of a maximum matching in the bipartite graph whose left vertex `u`
/// is adjacent to `adj[u]` (right vertices `0..n_right`).
pub fn max_matching(adj: &[Vec<usize>], n_right: usize) -> usize {
    let n_left = adj.len();
    let mut match_l = vec![NIL; n_left];
    let mut match_r = vec![NIL; n_right];
    let mut dist = vec![0usize; n_left];
    let mut size = 0;
    loop {
        // Layer the free left vertices by BFS.
        let mut queue = VecDeque::new();
        let mut found = false;
        for u in 0..n_left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return size;
        }
        // Iterative DFS along the layers.
        let mut next = vec![0usize; n_left];
        for root in 0..n_left {
            if match_l[root] != NIL {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if next[u] == adj[u].len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[u][next[u]];
                next[u] += 1;
                let w = match_r[v];
                if w == NIL {
                    // Augment along the stack.
                    let mut v = v;
                    while let Some(u) = stack.pop() {
                        let prev = match_l[u];
                        match_l[u] = v;
                        match_r[v] = u;
                        v = prev;
                    }
                    size += 1;
                    break;
                } else if dist[w] == dist[u] + 1 {
                    stack.push(w);
                }
            }
        }
    }
}

/// Minimum-cost perfect assignment of an `n × n` row-major cost matrix.
/// Returns `(total cost, column assigned to each row)`.
pub fn hungarian(n: usize, cost: &[f64]) -> (f64, Vec<usize>) {
    assert_eq!(cost.len(), n * n, "cost matrix must be square");
    if n == 0 {
        return (0.0, Vec::new());
    }
    // Potentials formulation with 1-based sentinel column 0.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut p = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[p[j] - 1] = j - 1;
    }
    let total = (0..n).map(|i| cost[i * n + assignment[i]]).sum();
    (total, assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_sizes() {
        let adj = vec![vec![0, 1], vec![0], vec![0]];
        assert_eq!(max_matching(&adj, 2), 2);
        let full = vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]];
        assert_eq!(max_matching(&full, 3), 3);
        assert_eq!(max_matching(&[], 0), 0);
    }

    #[test]
    fn small_assignment() {
        let cost = [4.0, 1.0, 3.0, 2.0, 0.0, 5.0, 3.0, 2.0, 2.0];
        let (total, a) = hungarian(3, &cost);
        assert_eq!(total, 5.0);
        assert_eq!(a, vec![1, 0, 2]);
    }
}
