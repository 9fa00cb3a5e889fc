use super::Graph;

/// Number of simple paths with `k` edges starting at `v`.
pub fn count_simple_paths_from(h: &Graph, v: usize, k: usize) -> u64 {
    count_simple_paths_within(h, v, k, None)
}

/// As [`count_simple_paths_from`], restricted to vertices with `allowed[u]`.
pub fn count_simple_paths_within(h: &Graph, v: usize, k: usize, allowed: Option<&[bool]>) -> u64 {
    if allowed.is_some_and(|a| !a[v]) {
        return 0;
    }
    let mut visited = vec![false; h.n()];
    visited[v] = true;
    walk(h, v, k, allowed, &mut visited)
}

fn walk(h: &Graph, u: usize, left: usize, allowed: Option<&[bool]>, visited: &mut [bool]) -> u64 {
    if left == 0 {
        return 1;
    }
    let mut total = 0;
    for &w in h.neighbors(u) {
        if visited[w] || allowed.is_some_and(|a| !a[w]) {
            continue;
        }
        visited[w] = true;
        total += walk(h, w, left - 1, allowed, visited);
        visited[w] = false;
    }
    total
}
