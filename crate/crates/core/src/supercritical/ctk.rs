//! Clean topological cliques: `k` branch vertices joined pairwise by
//! internally disjoint paths, with no other edges among their vertices.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

pub const CTK_DEFAULT_BUDGET: u64 = 2_000_000;

/// `k` branch vertices `0..k` and a fresh path of length `w` per pair.
pub fn build_ctk(k: usize, w: usize) -> Result<Graph> {
    if k < 2 || w < 1 {
        return Err(Error::Parameter(format!(
            "need k >= 2 and w >= 1, got k = {k}, w = {w}"
        )));
    }
    let mut b = GraphBuilder::new(k);
    for i in 0..k {
        for j in i + 1..k {
            let mut prev = i;
            for _ in 1..w {
                let v = b.add_vertex();
                b.add_edge(prev, v)?;
                prev = v;
            }
            b.add_edge(prev, j)?;
        }
    }
    Ok(b.build())
}

/// `v = k + C(k,2)(w − 1)` and `t = e − v = C(k,2) − k`.
pub fn ctk_counts(k: usize, w: usize) -> (usize, i64) {
    let pairs = k * (k - 1) / 2;
    (k + pairs * (w - 1), pairs as i64 - k as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CtkWitness {
    pub branch: Vec<usize>,
    /// `(a, b, path from a to b)` for each branch pair.
    pub paths: Vec<(usize, usize, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CtkOutcome {
    Found(CtkWitness),
    Absent,
    /// The search budget ran out before a decision.
    Unknown {
        steps: u64,
    },
}

impl CtkOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, CtkOutcome::Found(_))
    }
}

/// Independent check that the witness spans an induced subdivision of `K_k`.
pub fn is_ctk_witness(g: &Graph, k: usize, w: &CtkWitness) -> bool {
    let mut branch = w.branch.clone();
    branch.sort_unstable();
    branch.dedup();
    if branch.len() != k || w.paths.len() != k * (k - 1) / 2 {
        return false;
    }
    let mut verts: Vec<usize> = branch.clone();
    let mut edges = 0usize;
    let mut pairs = Vec::new();
    for (a, b, p) in &w.paths {
        if p.first() != Some(a)
            || p.last() != Some(b)
            || p.len() < 2
            || !p.windows(2).all(|e| g.has_edge(e[0], e[1]))
        {
            return false;
        }
        if !branch.contains(a) || !branch.contains(b) {
            return false;
        }
        pairs.push((*a.min(b), *a.max(b)));
        verts.extend(&p[1..p.len() - 1]);
        edges += p.len() - 1;
    }
    pairs.sort_unstable();
    pairs.dedup();
    let all = verts.len();
    verts.sort_unstable();
    verts.dedup();
    // interiors disjoint from each other and from the branch set
    if verts.len() != all || pairs.len() != k * (k - 1) / 2 {
        return false;
    }
    // induced: no edges beyond the path edges
    g.induced(&verts).edge_count() == edges
}

/// Vertices of the 2-core.
fn two_core(g: &Graph) -> Vec<bool> {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut q: VecDeque<usize> = (0..g.n()).filter(|&v| deg[v] < 2).collect();
    while let Some(v) = q.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] < 2 {
                    q.push_back(u);
                }
            }
        }
    }
    alive
}

struct Search<'g> {
    g: &'g Graph,
    k: usize,
    usable: Vec<bool>,
    in_t: Vec<bool>,
    is_branch: Vec<bool>,
    branch: Vec<usize>,
    paths: Vec<(usize, usize, Vec<usize>)>,
    left: u64,
    used: u64,
}

enum Stop {
    Budget,
}

type Step<T> = std::result::Result<T, Stop>;

impl Search<'_> {
    fn tick(&mut self) -> Step<()> {
        if self.left == 0 {
            return Err(Stop::Budget);
        }
        self.left -= 1;
        self.used += 1;
        Ok(())
    }

    /// `v` may join a path after `prev`, heading for `dest` if given: every
    /// neighbour of `v` in the structure is `prev`, `dest`, or (for a new
    /// branch vertex) an existing branch vertex.
    fn clean_next(
        &self,
        v: usize,
        prev: usize,
        path: &[usize],
        dest: Option<usize>,
        as_branch: bool,
    ) -> bool {
        if !self.usable[v] || self.in_t[v] || path.contains(&v) {
            return false;
        }
        self.g.neighbors(v).iter().all(|&u| {
            u == prev
                || Some(u) == dest
                || !(self.in_t[u] || path.contains(&u))
                || (as_branch && self.is_branch[u] && u != self.branch[0])
        })
    }

    fn search(&mut self) -> Step<bool> {
        if self.branch.len() == self.k {
            return Ok(true);
        }
        if self.branch.is_empty() {
            for a in 0..self.g.n() {
                if !self.usable[a] || self.g.degree(a) < self.k - 1 {
                    continue;
                }
                self.add_branch(a);
                if self.search()? {
                    return Ok(true);
                }
                self.remove_branch(a);
            }
            return Ok(false);
        }
        let a = self.branch[0];
        let mut path = vec![a];
        self.extend_from_root(&mut path)
    }

    fn add_branch(&mut self, b: usize) {
        self.branch.push(b);
        self.in_t[b] = true;
        self.is_branch[b] = true;
    }

    fn remove_branch(&mut self, b: usize) {
        self.branch.pop();
        self.in_t[b] = false;
        self.is_branch[b] = false;
    }

    /// Grows an induced path from the first branch vertex; every vertex it
    /// reaches is tried as the next branch vertex.
    fn extend_from_root(&mut self, path: &mut Vec<usize>) -> Step<bool> {
        self.tick()?;
        let last = *path.last().expect("non-empty");
        let last_added = *self.branch.last().expect("non-empty");
        let nbrs: Vec<usize> = self.g.neighbors(last).to_vec();
        for v in nbrs {
            if !self.clean_next(v, last, path, None, true) {
                continue;
            }
            // an adjacent root forces the one-edge path
            if path.len() > 1 && self.g.has_edge(v, path[0]) {
                continue;
            }
            path.push(v);
            if v > last_added && self.g.degree(v) >= self.k - 1 && self.try_branch(path)? {
                return Ok(true);
            }
            // v continues as an interior vertex only if it has no branch neighbours besides the root side
            let interior_ok = self
                .g
                .neighbors(v)
                .iter()
                .all(|&u| !self.is_branch[u] || u == last);
            if interior_ok && self.extend_from_root(path)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }

    /// Commits `path` (root to new branch `b`), then links `b` to the other
    /// branch vertices and continues.
    fn try_branch(&mut self, path: &[usize]) -> Step<bool> {
        let b = *path.last().expect("non-empty");
        let interior = &path[1..path.len() - 1];
        if interior.iter().any(|&u| {
            self.g
                .neighbors(u)
                .iter()
                .any(|&x| self.is_branch[x] && x != path[0] && !path.contains(&x))
        }) {
            return Ok(false);
        }
        for &u in interior {
            self.in_t[u] = true;
        }
        self.add_branch(b);
        self.paths.push((path[0], b, path.to_vec()));
        let others: Vec<usize> = self.branch[1..self.branch.len() - 1].to_vec();
        if self.link(b, &others, 0)? {
            return Ok(true);
        }
        self.paths.pop();
        self.remove_branch(b);
        for &u in interior {
            self.in_t[u] = false;
        }
        Ok(false)
    }

    fn link(&mut self, b: usize, others: &[usize], i: usize) -> Step<bool> {
        if i == others.len() {
            return self.search();
        }
        let d = others[i];
        if self.g.has_edge(b, d) {
            self.paths.push((b, d, vec![b, d]));
            if self.link(b, others, i + 1)? {
                return Ok(true);
            }
            self.paths.pop();
            return Ok(false);
        }
        // BFS distances to d through free usable vertices guide the walk
        let mut dist = vec![usize::MAX; self.g.n()];
        let mut q = VecDeque::new();
        for &u in self.g.neighbors(d) {
            if self.usable[u] && !self.in_t[u] {
                dist[u] = 1;
                q.push_back(u);
            }
        }
        while let Some(u) = q.pop_front() {
            for &v in self.g.neighbors(u) {
                if self.usable[v] && !self.in_t[v] && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        let mut path = vec![b];
        self.walk_to(d, &dist, &mut path, others, i)
    }

    fn walk_to(
        &mut self,
        d: usize,
        dist: &[usize],
        path: &mut Vec<usize>,
        others: &[usize],
        i: usize,
    ) -> Step<bool> {
        self.tick()?;
        let last = *path.last().expect("non-empty");
        if path.len() > 1 && self.g.has_edge(last, d) {
            let interior: Vec<usize> = path[1..].to_vec();
            for &u in &interior {
                self.in_t[u] = true;
            }
            let mut full = path.clone();
            full.push(d);
            self.paths.push((path[0], d, full));
            if self.link(path[0], others, i + 1)? {
                return Ok(true);
            }
            self.paths.pop();
            for &u in &interior {
                self.in_t[u] = false;
            }
            return Ok(false);
        }
        let mut next: Vec<usize> = self
            .g
            .neighbors(last)
            .iter()
            .copied()
            .filter(|&v| dist[v] != usize::MAX && self.clean_next(v, last, path, Some(d), false))
            .collect();
        next.sort_by_key(|&v| dist[v]);
        for v in next {
            path.push(v);
            if self.walk_to(d, dist, path, others, i)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
}

/// Searches for an induced `CTK_k`; `Unknown` when `budget` steps run out.
pub fn detect_ctk(g: &Graph, k: usize, budget: u64) -> Result<CtkOutcome> {
    if k < 2 {
        return Err(Error::Parameter(format!("k = {k} must be at least 2")));
    }
    if k == 2 {
        // any edge is an induced path between its ends
        return Ok(match g.edges().first() {
            Some(&(a, b)) => CtkOutcome::Found(CtkWitness {
                branch: vec![a, b],
                paths: vec![(a, b, vec![a, b])],
            }),
            None => CtkOutcome::Absent,
        });
    }
    let mut s = Search {
        g,
        k,
        usable: two_core(g),
        in_t: vec![false; g.n()],
        is_branch: vec![false; g.n()],
        branch: Vec::new(),
        paths: Vec::new(),
        left: budget,
        used: 0,
    };
    match s.search() {
        Ok(true) => Ok(CtkOutcome::Found(CtkWitness {
            branch: s.branch.clone(),
            paths: s.paths.clone(),
        })),
        Ok(false) => Ok(CtkOutcome::Absent),
        Err(Stop::Budget) => Ok(CtkOutcome::Unknown { steps: s.used }),
    }
}
