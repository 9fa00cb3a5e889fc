//! Smallest theta subgraph: two branch vertices joined by three internally
//! disjoint paths.

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

pub const THETA_MAX_VERTICES: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theta {
    pub u: usize,
    pub v: usize,
    /// Total vertex count, branch vertices included.
    pub size: usize,
}

struct Arc {
    to: usize,
    cap: i32,
    cost: i64,
}

/// Min-cost flow on a small network; arcs come in forward/backward pairs.
struct Network {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: i32, cost: i64) {
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, cost });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
    }

    /// Cost of `units` unit augmentations from `s` to `t`, or `None` if the
    /// maximum flow is smaller. Costs start non-negative, so zero potentials
    /// are valid for the first Dijkstra pass.
    fn min_cost(&mut self, s: usize, t: usize, units: usize) -> Option<i64> {
        let n = self.adj.len();
        let mut pot = vec![0i64; n];
        let mut total = 0;
        for _ in 0..units {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            let mut heap = BinaryHeap::from([Reverse((0i64, s))]);
            while let Some(Reverse((d, x))) = heap.pop() {
                if d > dist[x] {
                    continue;
                }
                for &a in &self.adj[x] {
                    let arc = &self.arcs[a];
                    if arc.cap <= 0 {
                        continue;
                    }
                    let nd = d + arc.cost + pot[x] - pot[arc.to];
                    if nd < dist[arc.to] {
                        dist[arc.to] = nd;
                        via[arc.to] = a;
                        heap.push(Reverse((nd, arc.to)));
                    }
                }
            }
            if dist[t] == i64::MAX {
                return None;
            }
            for x in 0..n {
                if dist[x] != i64::MAX {
                    pot[x] += dist[x];
                }
            }
            let mut x = t;
            while x != s {
                let a = via[x];
                self.arcs[a].cap -= 1;
                self.arcs[a ^ 1].cap += 1;
                total += self.arcs[a].cost;
                x = self.arcs[a ^ 1].to;
            }
        }
        Some(total)
    }
}

/// Vertices of the 2-core and their degrees inside it.
fn core_degrees(g: &Graph) -> Vec<usize> {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; g.n()];
    let mut q: VecDeque<usize> = (0..g.n()).filter(|&v| deg[v] < 2).collect();
    while let Some(v) = q.pop_front() {
        if gone[v] {
            continue;
        }
        gone[v] = true;
        deg[v] = 0;
        for &u in g.neighbors(v) {
            if !gone[u] {
                deg[u] -= 1;
                if deg[u] < 2 {
                    q.push_back(u);
                }
            }
        }
    }
    deg
}

/// The smallest theta subgraph, if any, for graphs up to `cap` vertices.
pub fn min_theta(g: &Graph, cap: usize) -> Result<Option<Theta>> {
    if g.n() > cap {
        return Err(Error::Capability(format!(
            "theta search is limited to {cap} vertices, graph has {}",
            g.n()
        )));
    }
    let deg = core_degrees(g);
    let branch: Vec<usize> = (0..g.n()).filter(|&v| deg[v] >= 3).collect();
    let in_core: Vec<bool> = deg.iter().map(|&d| d >= 2).collect();
    let mut best: Option<Theta> = None;
    for (i, &u) in branch.iter().enumerate() {
        for &v in &branch[i + 1..] {
            // node x splits into in = 2x and out = 2x + 1
            let mut net = Network::new(2 * g.n());
            for x in (0..g.n()).filter(|&x| in_core[x]) {
                let through = if x == u || x == v { (3, 0) } else { (1, 1) };
                net.add(2 * x, 2 * x + 1, through.0, through.1);
                for &y in g.neighbors(x) {
                    if in_core[y] {
                        net.add(2 * x + 1, 2 * y, 1, 0);
                    }
                }
            }
            if let Some(cost) = net.min_cost(2 * u + 1, 2 * v, 3) {
                let size = cost as usize + 2;
                if best.as_ref().is_none_or(|b| size < b.size) {
                    best = Some(Theta { u, v, size });
                }
            }
        }
    }
    Ok(best)
}

/// Minimum theta size with the default vertex cap.
pub fn min_theta_size(g: &Graph) -> Result<Option<usize>> {
    Ok(min_theta(g, THETA_MAX_VERTICES)?.map(|t| t.size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sample_gnp, GnpParams};

    #[test]
    fn small_examples() {
        assert_eq!(min_theta_size(&Graph::complete(4)).unwrap(), Some(4));
        assert_eq!(min_theta_size(&Graph::cycle(9)).unwrap(), None);
        assert_eq!(min_theta_size(&Graph::path(9)).unwrap(), None);
        assert_eq!(min_theta_size(&Graph::star(5)).unwrap(), None);
        // two triangles sharing an edge
        let diamond = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)]).unwrap();
        assert_eq!(min_theta_size(&diamond).unwrap(), Some(4));
        // K_{2,3}
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(min_theta_size(&k23).unwrap(), Some(5));
        assert!(min_theta_size(&Graph::empty(401))
            .unwrap_err()
            .is_capability());
    }

    #[test]
    fn two_disjoint_cycles_are_not_a_theta() {
        let g = Graph::cycle(4).disjoint_union(&Graph::cycle(5));
        assert_eq!(min_theta_size(&g).unwrap(), None);
        // joined by a bridge they are still theta-free (a dumbbell)
        let mut edges = g.edges();
        edges.push((0, 4));
        assert_eq!(
            min_theta_size(&Graph::from_edges(9, &edges).unwrap()).unwrap(),
            None
        );
    }

    /// Brute force over edge subsets: a theta is a bridgeless connected graph
    /// with e = v + 1, two vertices of degree 3 and the rest of degree 2.
    fn brute(g: &Graph) -> Option<usize> {
        let n = g.n();
        let edges = g.edges();
        let mut best: Option<usize> = None;
        for mask in 1u32..1 << edges.len() {
            let chosen: Vec<(usize, usize)> = (0..edges.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            let mut deg = vec![0usize; n];
            for &(a, b) in &chosen {
                deg[a] += 1;
                deg[b] += 1;
            }
            let verts: Vec<usize> = (0..n).filter(|&v| deg[v] > 0).collect();
            if chosen.len() != verts.len() + 1
                || verts.iter().filter(|&&v| deg[v] == 3).count() != 2
                || verts.iter().any(|&v| deg[v] != 2 && deg[v] != 3)
            {
                continue;
            }
            let mut idx = vec![usize::MAX; n];
            verts.iter().enumerate().for_each(|(i, &v)| idx[v] = i);
            let sub = Graph::from_edges(
                verts.len(),
                &chosen
                    .iter()
                    .map(|&(a, b)| (idx[a], idx[b]))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            let bridgeless = (0..sub.edge_count()).all(|skip| {
                let rest: Vec<(usize, usize)> = sub
                    .edges()
                    .into_iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, e)| e)
                    .collect();
                Graph::from_edges(sub.n(), &rest).unwrap().is_connected()
            });
            if sub.is_connected() && bridgeless && best.is_none_or(|b| verts.len() < b) {
                best = Some(verts.len());
            }
        }
        best
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..120 {
            let g = sample_gnp(&GnpParams::new(8, 2.6, seed).unwrap()).unwrap();
            if g.edge_count() > 16 {
                continue;
            }
            assert_eq!(
                min_theta_size(&g).unwrap(),
                brute(&g),
                "seed {seed}: {:?}",
                g.edges()
            );
        }
    }
}
