use super::Graph;
use crate::error::{Error, Result};

/// Largest graph accepted by [`automorphism_count`].
pub const AUTOMORPHISM_MAX_VERTICES: usize = 16;

/// `|Aut(h)|` by orbit-stabilizer over a chain of individualized vertices.
///
/// Orbits are found with a backtracking isomorphism test pruned by colour
/// refinement on two copies of `h`.
pub fn automorphism_count(h: &Graph) -> Result<u64> {
    let n = h.n();
    if n > AUTOMORPHISM_MAX_VERTICES {
        return Err(Error::Capability(format!(
            "automorphism counting supports at most {AUTOMORPHISM_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let mut fixed: Vec<usize> = Vec::new();
    let mut total: u64 = 1;
    loop {
        let colors = refine(h, &initial_colors(h, &fixed));
        let Some(cell) = smallest_nontrivial_cell(&colors[..n], n) else {
            break;
        };
        let v = cell[0];
        let mut orbit = 1u64;
        for &u in &cell[1..] {
            let mut left = fixed.clone();
            left.push(v);
            let mut right = fixed.clone();
            right.push(u);
            if extends_to_automorphism(h, &left, &right) {
                orbit += 1;
            }
        }
        total *= orbit;
        fixed.push(v);
    }
    Ok(total)
}

fn initial_colors(g: &Graph, individualized: &[usize]) -> Vec<u32> {
    let mut colors: Vec<u32> = (0..g.n()).map(|v| g.degree(v) as u32).collect();
    for (k, &v) in individualized.iter().enumerate() {
        colors[v] = 1000 + k as u32;
    }
    colors
}

/// Colour refinement to the coarsest equitable partition finer than `colors`.
fn refine(g: &Graph, colors: &[u32]) -> Vec<u32> {
    let mut colors = colors.to_vec();
    let mut classes = count_distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..g.n())
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colors = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present") as u32)
            .collect();
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn smallest_nontrivial_cell(colors: &[u32], n: usize) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    let mut seen = std::collections::BTreeMap::<u32, Vec<usize>>::new();
    for (v, &col) in colors.iter().enumerate().take(n) {
        seen.entry(col).or_default().push(v);
    }
    for cell in seen.into_values() {
        if cell.len() > 1 && best.as_ref().is_none_or(|b| cell.len() < b.len()) {
            best = Some(cell);
        }
    }
    best
}

/// Whether some automorphism maps `left[k]` to `right[k]` for every `k`.
fn extends_to_automorphism(g: &Graph, left: &[usize], right: &[usize]) -> bool {
    let n = g.n();
    let union = g.disjoint_union(g);
    let mut init: Vec<u32> = (0..2 * n).map(|v| union.degree(v) as u32).collect();
    for (k, (&a, &b)) in left.iter().zip(right).enumerate() {
        init[a] = 1000 + k as u32;
        init[b + n] = 1000 + k as u32;
    }
    let colors = refine(&union, &init);
    let mut balance = std::collections::HashMap::<u32, i64>::new();
    for v in 0..n {
        *balance.entry(colors[v]).or_default() += 1;
        *balance.entry(colors[v + n]).or_default() -= 1;
    }
    if balance.values().any(|&b| b != 0) {
        return false;
    }
    match smallest_nontrivial_cell(&colors[..n], n) {
        None => {
            let mut map = vec![0usize; n];
            for a in 0..n {
                let b = (0..n)
                    .find(|&b| colors[b + n] == colors[a])
                    .expect("balanced colours");
                map[a] = b;
            }
            g.edges().iter().all(|&(a, b)| g.has_edge(map[a], map[b]))
        }
        Some(cell) => {
            let a = cell[0];
            let targets: Vec<usize> = (0..n).filter(|&b| colors[b + n] == colors[a]).collect();
            targets.into_iter().any(|b| {
                let mut l = left.to_vec();
                l.push(a);
                let mut r = right.to_vec();
                r.push(b);
                extends_to_automorphism(g, &l, &r)
            })
        }
    }
}
