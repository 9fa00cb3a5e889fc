use super::{ball, Ball, BallCenter, Graph};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Largest radius accepted by [`cycle_census`].
pub const MAX_CENSUS_RADIUS: usize = 12;
/// Per-graph limit on enumerated cycles.
pub const CYCLE_CAP: usize = 200_000;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CycleClass {
    pub count: usize,
    /// Each cycle in traversal order, starting from its smallest vertex.
    pub cycles: Vec<Vec<usize>>,
    pub balls: Vec<Ball>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CycleCensus {
    pub radius: usize,
    /// Cycle length to the cycles of that length.
    pub classes: BTreeMap<usize, CycleClass>,
}

impl CycleCensus {
    pub fn count(&self, len: usize) -> usize {
        self.classes.get(&len).map_or(0, |c| c.count)
    }

    pub fn total(&self) -> usize {
        self.classes.values().map(|c| c.count).sum()
    }
}

/// All simple cycles of length `3..=radius`, each with its ball `B(C, radius)`.
pub fn cycle_census(g: &Graph, radius: usize) -> Result<CycleCensus> {
    if !(3..=MAX_CENSUS_RADIUS).contains(&radius) {
        return Err(Error::Parameter(format!(
            "census radius {radius} outside 3..={MAX_CENSUS_RADIUS}"
        )));
    }
    let mut classes: BTreeMap<usize, CycleClass> = BTreeMap::new();
    for cycle in simple_cycles(g, radius)? {
        let b = ball(g, &BallCenter::Set(cycle.clone()), radius)?;
        let class = classes.entry(cycle.len()).or_default();
        class.count += 1;
        class.cycles.push(cycle);
        class.balls.push(b);
    }
    Ok(CycleCensus { radius, classes })
}

/// Simple cycles of length `3..=max_len`, each listed once.
///
/// A cycle is reported from its smallest vertex `s`, in the direction whose
/// second vertex is smaller than its last.
pub fn simple_cycles(g: &Graph, max_len: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        let mut path = vec![s];
        on_path[s] = true;
        extend(g, s, max_len, &mut path, &mut on_path, &mut out)?;
        on_path[s] = false;
    }
    Ok(out)
}

fn extend(
    g: &Graph,
    s: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let last = *path.last().expect("non-empty path");
    for &v in g.neighbors(last) {
        if v == s && path.len() >= 3 && path[1] < last {
            if out.len() >= CYCLE_CAP {
                return Err(Error::Capability(format!(
                    "more than {CYCLE_CAP} cycles of length <= {max_len}"
                )));
            }
            out.push(path.clone());
        } else if v > s && !on_path[v] && path.len() < max_len {
            on_path[v] = true;
            path.push(v);
            extend(g, s, max_len, path, on_path, out)?;
            path.pop();
            on_path[v] = false;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forest_has_no_cycles() {
        let g = Graph::path(6).disjoint_union(&Graph::star(3));
        assert_eq!(cycle_census(&g, 5).unwrap().total(), 0);
    }

    #[test]
    fn triangle_and_square() {
        let g = Graph::complete(3).disjoint_union(&Graph::cycle(4));
        let c = cycle_census(&g, 4).unwrap();
        assert_eq!((c.count(3), c.count(4)), (1, 1));
        assert_eq!(c.classes[&4].cycles[0], vec![3, 4, 5, 6]);
        assert_eq!(c.classes[&3].balls[0].vertices, vec![0, 1, 2]);
    }

    #[test]
    fn k4_and_k5_counts() {
        let c = cycle_census(&Graph::complete(4), 3).unwrap();
        assert_eq!(c.count(3), 4);
        // K5: C(5,3)=10 triangles, 5*3=15 four-cycles, 12 five-cycles
        let c = cycle_census(&Graph::complete(5), 5).unwrap();
        assert_eq!((c.count(3), c.count(4), c.count(5)), (10, 15, 12));
    }

    #[test]
    fn long_cycle_needs_radius() {
        let g = Graph::cycle(7);
        assert_eq!(cycle_census(&g, 6).unwrap().total(), 0);
        assert_eq!(cycle_census(&g, 7).unwrap().count(7), 1);
        assert!(cycle_census(&g, 2).is_err());
        assert!(cycle_census(&g, 13).is_err());
    }
}
