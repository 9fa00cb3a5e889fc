//! The arithmetized graph `H`: two hubs, three paths carrying the labelled
//! `AR` vertices, and one fresh path of length `w` per related label pair.

use super::arith::{exp2, tower, wow, wow_inv};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// No AR label may be an endpoint of more pair paths than this.
pub const PAIR_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Double,
    Exp,
    Tower,
    Wow,
}

impl Relation {
    pub const ALL: [Relation; 4] = [
        Relation::Double,
        Relation::Exp,
        Relation::Tower,
        Relation::Wow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Double => "double",
            Relation::Exp => "exp",
            Relation::Tower => "tower",
            Relation::Wow => "wow",
        }
    }

    /// The partner `f(x)` of label `x`, if it is at most `w1`.
    pub fn partner(self, x: u64, w1: u64) -> Option<u64> {
        let v = match self {
            Relation::Double => return (2 * x <= w1).then_some(2 * x),
            Relation::Exp => exp2(x),
            Relation::Tower => tower(x).ok()?,
            Relation::Wow => wow(x).ok()?,
        };
        v.le_u64(w1).then(|| v.to_u64().expect("bounded by w1"))
    }

    /// The number-theoretic relation on `1..=w1`.
    pub fn pairs(self, w1: u64) -> BTreeSet<(u64, u64)> {
        (1..=w1)
            .filter_map(|x| self.partner(x, w1).map(|y| (x, y)))
            .collect()
    }

    /// The relation whose axioms drive this one's recursion step.
    pub fn previous(self) -> Option<Relation> {
        match self {
            Relation::Double => None,
            Relation::Exp => Some(Relation::Double),
            Relation::Tower => Some(Relation::Exp),
            Relation::Wow => Some(Relation::Tower),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown relation `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    E,
    Two,
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::E => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }

    /// Inverse of [`LogBase::log`].
    pub fn exp(self, x: f64) -> f64 {
        match self {
            LogBase::E => x.exp(),
            LogBase::Two => x.exp2(),
            LogBase::Ten => 10f64.powf(x),
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "ln" => Ok(LogBase::E),
            "2" => Ok(LogBase::Two),
            "10" => Ok(LogBase::Ten),
            _ => Err(Error::Parameter(format!(
                "log base must be e, 2 or 10, got `{s}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPath {
    pub i: u64,
    pub j: u64,
    pub relation: Relation,
    /// From the vertex labelled `i` to the vertex labelled `j`.
    pub vertices: Vec<usize>,
}

/// Everything about an `H` except its edges; the JSON sidecar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HMetadata {
    pub s0: usize,
    pub s1: usize,
    /// Each from `s0` to `s1`.
    pub paths: [Vec<usize>; 3],
    /// `ar[i - 1]` carries label `i`.
    pub ar: Vec<usize>,
    pub pair_paths: Vec<PairPath>,
    pub k1: Option<f64>,
    pub big_k: usize,
    pub n: Option<f64>,
    pub log_base: LogBase,
    /// Length of every pair path, and of the longest hub path.
    pub w: usize,
    pub w1: u64,
    pub l: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HGraph {
    pub graph: Graph,
    pub meta: HMetadata,
}

/// `w`: the multiple of `K` nearest to `k1 log n`.
pub fn path_length(k1: f64, big_k: usize, n: f64, base: LogBase) -> Result<usize> {
    if !(k1 > 0.0 && k1.is_finite()) || big_k == 0 || !(n > 1.0 && n.is_finite()) {
        return Err(Error::Parameter(format!(
            "need k1 > 0, K >= 1, n > 1; got k1 = {k1}, K = {big_k}, n = {n}"
        )));
    }
    let x = k1 * base.log(n) / big_k as f64;
    Ok(big_k * x.round() as usize)
}

/// `H(k1, K, n)`: three paths of length `w` and `w1 = 3(w/K − 1)`.
pub fn build_h(k1: f64, big_k: usize, n: f64, base: LogBase) -> Result<HGraph> {
    let w = path_length(k1, big_k, n, base)?;
    if w < 2 * big_k {
        return Err(Error::Parameter(format!(
            "w = {w} gives fewer than 2 AR vertices at K = {big_k}"
        )));
    }
    let mut h = build_h_by_w1(big_k, 3 * (w / big_k - 1) as u64)?;
    h.meta.k1 = Some(k1);
    h.meta.n = Some(n);
    h.meta.log_base = base;
    Ok(h)
}

/// `H` with a prescribed number of AR vertices.
///
/// Path `i` carries `⌊w1/3⌋` or `⌈w1/3⌉` AR vertices (earlier paths take the
/// extra ones) and has length `K · (count + 1)`; pair paths have the length
/// `w` of the longest hub path. When `3 | w1` all hub paths have length `w`.
pub fn build_h_by_w1(big_k: usize, w1: u64) -> Result<HGraph> {
    if w1 < 2 {
        return Err(Error::Parameter(format!("w1 = {w1} must be at least 2")));
    }
    if big_k == 0 {
        return Err(Error::Parameter("K must be positive".into()));
    }
    let per: Vec<u64> = (0..3).map(|i| w1 / 3 + u64::from(i < w1 % 3)).collect();
    let w = big_k * (w1.div_ceil(3) as usize + 1);
    let mut b = GraphBuilder::new(2);
    let (s0, s1) = (0, 1);
    let mut paths: [Vec<usize>; 3] = Default::default();
    let mut ar = Vec::new();
    for (i, &count) in per.iter().enumerate() {
        let len = big_k * (count as usize + 1);
        let mut p = vec![s0];
        for pos in 1..len {
            let v = b.add_vertex();
            b.add_edge(*p.last().expect("non-empty"), v)?;
            if pos % big_k == 0 {
                ar.push(v);
            }
            p.push(v);
        }
        b.add_edge(*p.last().expect("non-empty"), s1)?;
        p.push(s1);
        paths[i] = p;
    }
    let mut pair_paths = Vec::new();
    for rel in Relation::ALL {
        for (i, j) in rel.pairs(w1) {
            let (a, z) = (ar[i as usize - 1], ar[j as usize - 1]);
            let mut verts = vec![a];
            for _ in 1..w {
                let v = b.add_vertex();
                b.add_edge(*verts.last().expect("non-empty"), v)?;
                verts.push(v);
            }
            b.add_edge(*verts.last().expect("non-empty"), z)?;
            verts.push(z);
            pair_paths.push(PairPath {
                i,
                j,
                relation: rel,
                vertices: verts,
            });
        }
    }
    if let Some((label, count)) = pair_load(&pair_paths)
        .into_iter()
        .find(|&(_, c)| c > PAIR_CAP)
    {
        return Err(Error::Construction(format!(
            "AR index {label} is an endpoint of {count} relation paths, more than {PAIR_CAP}"
        )));
    }
    let l = pair_paths.len();
    Ok(HGraph {
        graph: b.build(),
        meta: HMetadata {
            s0,
            s1,
            paths,
            ar,
            pair_paths,
            k1: None,
            big_k,
            n: None,
            log_base: LogBase::E,
            w,
            w1,
            l,
        },
    })
}

fn pair_load(pairs: &[PairPath]) -> BTreeMap<u64, usize> {
    let mut load = BTreeMap::new();
    for p in pairs {
        *load.entry(p.i).or_insert(0) += 1;
        *load.entry(p.j).or_insert(0) += 1;
    }
    load
}

impl HGraph {
    /// Reassembles an instance from its edge list and metadata sidecar.
    pub fn from_parts(graph: Graph, meta: HMetadata) -> Result<HGraph> {
        let n = graph.n();
        let all = meta
            .paths
            .iter()
            .flatten()
            .chain(&meta.ar)
            .chain(meta.pair_paths.iter().flat_map(|p| &p.vertices));
        if let Some(&v) = all.chain([&meta.s0, &meta.s1]).find(|&&v| v >= n) {
            return Err(Error::Parameter(format!(
                "metadata names vertex {v} but the graph has {n} vertices"
            )));
        }
        if meta.ar.len() as u64 != meta.w1 {
            return Err(Error::Parameter(format!(
                "metadata lists {} AR vertices but w1 = {}",
                meta.ar.len(),
                meta.w1
            )));
        }
        Ok(HGraph { graph, meta })
    }

    pub fn metadata_json(&self) -> String {
        serde_json::to_string_pretty(&self.meta).expect("metadata serializes")
    }

    /// The hub paths alone.
    pub fn h_minus(&self) -> Graph {
        let mut keep: Vec<usize> = self.meta.paths.iter().flatten().copied().collect();
        keep.sort_unstable();
        keep.dedup();
        self.graph.induced(&keep)
    }

    /// Label of each vertex, if it is in AR.
    pub fn labels(&self) -> Vec<Option<u64>> {
        let mut lab = vec![None; self.graph.n()];
        for (i, &v) in self.meta.ar.iter().enumerate() {
            lab[v] = Some(i as u64 + 1);
        }
        lab
    }

    /// A copy with pair path `idx` (and its interior vertices) deleted.
    pub fn without_pair_path(&self, idx: usize) -> Result<HGraph> {
        let p = self
            .meta
            .pair_paths
            .get(idx)
            .ok_or_else(|| Error::Parameter(format!("no pair path {idx}")))?;
        let interior: BTreeSet<usize> = p.vertices[1..p.vertices.len() - 1]
            .iter()
            .copied()
            .collect();
        let keep: Vec<usize> = (0..self.graph.n())
            .filter(|v| !interior.contains(v))
            .collect();
        let mut new_id = vec![usize::MAX; self.graph.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut graph = self.graph.induced(&keep);
        if interior.is_empty() {
            let (a, b) = (new_id[p.vertices[0]], new_id[p.vertices[1]]);
            let edges: Vec<_> = graph
                .edges()
                .into_iter()
                .filter(|&e| e != (a.min(b), a.max(b)))
                .collect();
            graph = Graph::from_edges(graph.n(), &edges)?;
        }
        let map = |vs: &[usize]| vs.iter().map(|&v| new_id[v]).collect::<Vec<_>>();
        let mut meta = self.meta.clone();
        meta.s0 = new_id[meta.s0];
        meta.s1 = new_id[meta.s1];
        meta.paths = meta.paths.map(|p| map(&p));
        meta.ar = map(&meta.ar);
        meta.pair_paths.remove(idx);
        for q in &mut meta.pair_paths {
            q.vertices = map(&q.vertices);
        }
        meta.l = meta.pair_paths.len();
        Ok(HGraph { graph, meta })
    }
}

/// Pairs `(x, y)`, `x < y`, joined by a path inside `set` whose interior
/// avoids AR. Such a path exists iff `x ~ y` or a component of
/// `G[set \ AR]` touches both.
pub fn realized_relation(g: &Graph, labels: &[Option<u64>], set: &[bool]) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    let n = g.n();
    let mut add_clique = |ls: &mut Vec<u64>| {
        ls.sort_unstable();
        ls.dedup();
        for a in 0..ls.len() {
            for b in a + 1..ls.len() {
                out.insert((ls[a], ls[b]));
            }
        }
    };
    for u in 0..n {
        if let (true, Some(lu)) = (set[u], labels[u]) {
            for &v in g.neighbors(u) {
                if let (true, Some(lv)) = (set[v], labels[v]) {
                    if lu < lv {
                        add_clique(&mut vec![lu, lv]);
                    }
                }
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] || !set[s] || labels[s].is_some() {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut touched = Vec::new();
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !set[v] {
                    continue;
                }
                match labels[v] {
                    Some(l) => touched.push(l),
                    None if !seen[v] => {
                        seen[v] = true;
                        stack.push(v);
                    }
                    None => {}
                }
            }
        }
        add_clique(&mut touched);
    }
    out
}

/// Axiom failures of `rel` on labels `1..=w1`, where `step(y)` is the
/// recursion target for `y` (`None` when it does not exist).
pub fn axiom_failures(
    rel: &BTreeSet<(u64, u64)>,
    w1: u64,
    step: impl Fn(u64) -> Option<u64>,
) -> Vec<(&'static str, String)> {
    let mut fails = Vec::new();
    if !rel.contains(&(1, 2)) {
        fails.push(("base", "(1, 2) missing".to_string()));
    }
    let mut partners: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &(x, y) in rel {
        partners.entry(x).or_default().push(y);
    }
    for (x, ys) in &partners {
        if ys.len() > 1 {
            fails.push(("functional", format!("{x} relates to {ys:?}")));
        }
    }
    for &(x, y) in rel {
        if x + 1 > w1 {
            continue;
        }
        match step(y) {
            Some(y1) if !rel.contains(&(x + 1, y1)) => fails.push((
                "recursion",
                format!("({x}, {y}) holds but ({}, {y1}) does not", x + 1),
            )),
            None if partners.contains_key(&(x + 1)) => fails.push((
                "stop",
                format!("({x}, {y}) has no step yet {} is related", x + 1),
            )),
            _ => {}
        }
        for x1 in 1..x {
            if !partners.contains_key(&x1) {
                fails.push((
                    "downward",
                    format!("({x}, {y}) holds but {x1} has no partner"),
                ));
            }
        }
    }
    fails
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArithCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArithmetizationReport {
    pub w1: u64,
    pub checks: Vec<ArithCheck>,
    /// Realized relations read off the graph, by relation name.
    pub relations: BTreeMap<String, Vec<(u64, u64)>>,
    pub even: Vec<u64>,
    pub invwow: Vec<u64>,
    pub pass: bool,
}

impl ArithmetizationReport {
    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// Re-derives every relation from the graph and the listed pair paths and
/// compares with arithmetic on `1..=w1`.
pub fn verify_arithmetization(h: &HGraph) -> ArithmetizationReport {
    let g = &h.graph;
    let m = &h.meta;
    let w1 = m.w1;
    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool, detail: String| {
        checks.push(ArithCheck {
            name: name.into(),
            pass,
            detail,
        })
    };

    let (e, v) = (g.edge_count() as i64, g.n() as i64);
    check(
        "edge_excess",
        e - v == m.l as i64 + 1 && m.l == m.pair_paths.len(),
        format!("e - v = {}, l = {}", e - v, m.l),
    );
    check(
        "hubs",
        g.degree(m.s0) == 3 && g.degree(m.s1) == 3,
        format!("degrees {} and {}", g.degree(m.s0), g.degree(m.s1)),
    );

    let mut ar_ok = true;
    let mut geometric = Vec::new();
    let ar_set: BTreeSet<usize> = m.ar.iter().copied().collect();
    for p in &m.paths {
        let ok_path = p.first() == Some(&m.s0)
            && p.last() == Some(&m.s1)
            && p.windows(2).all(|w| g.has_edge(w[0], w[1]));
        ar_ok &= ok_path;
        for (pos, &u) in p.iter().enumerate() {
            let inside = pos > 0 && pos + 1 < p.len();
            let should = inside && m.big_k > 0 && pos % m.big_k == 0;
            ar_ok &= should == ar_set.contains(&u);
            if should {
                geometric.push(u);
            }
        }
    }
    check(
        "ar_positions",
        ar_ok && ar_set.len() == m.ar.len(),
        "AR is every K-th interior hub-path vertex".into(),
    );
    check(
        "order",
        geometric == m.ar,
        "labels follow path index, then distance from s0".into(),
    );
    let load = pair_load(&m.pair_paths);
    let worst = load
        .iter()
        .max_by_key(|e| e.1)
        .map(|(&l, &c)| (l, c))
        .unwrap_or((0, 0));
    check(
        "pair_cap",
        worst.1 <= PAIR_CAP,
        format!("label {} is in {} pairs", worst.0, worst.1),
    );
    let mut owner = vec![0usize; g.n()];
    for p in m.paths.iter() {
        p.iter().for_each(|&u| owner[u] += 1);
    }
    let mut fresh_ok = true;
    for p in &m.pair_paths {
        fresh_ok &=
            p.vertices.len() == m.w + 1 && p.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]));
        for &u in &p.vertices[1..p.vertices.len().saturating_sub(1)] {
            owner[u] += 1;
            fresh_ok &= g.degree(u) == 2;
        }
    }
    fresh_ok &= (0..g.n()).all(|u| owner[u] <= 1 || u == m.s0 || u == m.s1 || ar_set.contains(&u));
    check(
        "pair_paths_fresh",
        fresh_ok,
        "pair paths have length w and private interiors of degree 2".into(),
    );

    let labels = h.labels();
    let mut realized: BTreeMap<Relation, BTreeSet<(u64, u64)>> = BTreeMap::new();
    for rel in Relation::ALL {
        let mut set = vec![false; g.n()];
        for p in m.pair_paths.iter().filter(|p| p.relation == rel) {
            p.vertices.iter().for_each(|&u| set[u] = true);
        }
        let got = realized_relation(g, &labels, &set);
        let want = rel.pairs(w1);
        check(
            rel.name(),
            got == want,
            format!("realized {got:?}, arithmetic {want:?}"),
        );
        realized.insert(rel, got);
    }
    for rel in Relation::ALL {
        let r = &realized[&rel];
        let fails = match rel.previous() {
            None => axiom_failures(r, w1, |y| (y + 2 <= w1).then_some(y + 2)),
            Some(prev) => {
                let pr = &realized[&prev];
                axiom_failures(r, w1, |y| pr.iter().find(|p| p.0 == y).map(|p| p.1))
            }
        };
        for axiom in ["base", "functional", "recursion", "stop", "downward"] {
            let bad: Vec<&String> = fails
                .iter()
                .filter(|f| f.0 == axiom)
                .map(|f| &f.1)
                .collect();
            check(
                &format!("{}.{axiom}", rel.name()),
                bad.is_empty(),
                format!("{bad:?}"),
            );
        }
    }
    let even: Vec<u64> = realized[&Relation::Double]
        .iter()
        .map(|p| p.1)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    check(
        "even",
        even == (2..=w1).step_by(2).collect::<Vec<_>>(),
        format!("{even:?}"),
    );
    let wow_r = &realized[&Relation::Wow];
    let invwow: Vec<u64> = wow_r
        .iter()
        .map(|p| p.0)
        .filter(|&x| !wow_r.iter().any(|p| p.0 > x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let expect = wow_inv(w1).map(|x| vec![x]).unwrap_or_default();
    check(
        "invwow",
        invwow == expect,
        format!("{invwow:?}, wow_inv(w1) = {expect:?}"),
    );

    let pass = checks.iter().all(|c| c.pass);
    ArithmetizationReport {
        w1,
        checks,
        relations: realized
            .into_iter()
            .map(|(r, s)| (r.name().to_string(), s.into_iter().collect()))
            .collect(),
        even,
        invwow,
        pass,
    }
}
