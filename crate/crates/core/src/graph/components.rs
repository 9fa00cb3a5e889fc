use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    Tree,
    Unicyclic,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub edge_count: usize,
    pub kind: ComponentKind,
}

/// Connected components ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Component> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut vertices = Vec::new();
        let mut degree_sum = 0;
        while let Some(u) = stack.pop() {
            vertices.push(u);
            degree_sum += g.degree(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        vertices.sort_unstable();
        let edge_count = degree_sum / 2;
        let kind = match edge_count.cmp(&vertices.len()) {
            std::cmp::Ordering::Less => ComponentKind::Tree,
            std::cmp::Ordering::Equal => ComponentKind::Unicyclic,
            std::cmp::Ordering::Greater => ComponentKind::Complex,
        };
        out.push(Component {
            vertices,
            edge_count,
            kind,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BallCenter {
    Vertex(usize),
    /// A vertex set such as a cycle; distance is to the nearest member.
    Set(Vec<usize>),
}

impl BallCenter {
    fn sources(&self) -> Vec<usize> {
        match self {
            BallCenter::Vertex(v) => vec![*v],
            BallCenter::Set(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ball {
    pub center: BallCenter,
    pub radius: usize,
    /// Ambient ids, sorted; vertex `i` of `subgraph` is `vertices[i]`.
    pub vertices: Vec<usize>,
    /// Distance from the centre, aligned with `vertices`.
    pub distances: Vec<usize>,
    pub subgraph: Graph,
}

impl Ball {
    /// Position of an ambient vertex inside the ball.
    pub fn local(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

/// Induced subgraph on the vertices within distance `radius` of `center`.
pub fn ball(g: &Graph, center: &BallCenter, radius: usize) -> Result<Ball> {
    let sources = center.sources();
    if sources.is_empty() {
        return Err(Error::Parameter("ball centre is empty".into()));
    }
    if let Some(&bad) = sources.iter().find(|&&v| v >= g.n()) {
        return Err(Error::Parameter(format!(
            "ball centre vertex {bad} out of range"
        )));
    }
    let mut dist = std::collections::HashMap::new();
    let mut frontier = Vec::new();
    for &s in &sources {
        if dist.insert(s, 0usize).is_none() {
            frontier.push(s);
        }
    }
    for d in 1..=radius {
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.neighbors(u) {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(v) {
                    e.insert(d);
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut vertices: Vec<usize> = dist.keys().copied().collect();
    vertices.sort_unstable();
    let distances = vertices.iter().map(|v| dist[v]).collect();
    let subgraph = g.induced(&vertices);
    Ok(Ball {
        center: center.clone(),
        radius,
        vertices,
        distances,
        subgraph,
    })
}
