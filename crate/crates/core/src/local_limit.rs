//! Poisson limits of cycle neighbourhoods.
//!
//! A [`CycleNeighborhood`] is a cycle with a rooted tree of depth at most `R`
//! hanging from each cycle vertex: the shape of `B(C, R)` around a short
//! cycle `C` of a sparse graph. Its count in `G(n, c/n)` is asymptotically
//! Poisson with mean [`lambda_h`].

use crate::constants::{DEFAULT_LAMBDA_CONVENTION, DEFAULT_STDERR_MULTIPLIER};
use crate::equivalence::h_isomorphism_key;
use crate::error::{Error, Result};
use crate::graph::{cycle_census, Ball, Graph, GraphBuilder};
use crate::montecarlo::{covariance, run_trials, trial_graph, Moments};
use crate::rng::{poisson, rng_from_seed};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// An unlabelled rooted tree; child order carries no meaning.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootedTree {
    pub children: Vec<RootedTree>,
}

impl RootedTree {
    pub fn leaf() -> Self {
        RootedTree::default()
    }

    pub fn new(children: Vec<RootedTree>) -> Self {
        RootedTree { children }
    }

    /// Root with `k` leaf children.
    pub fn star(k: usize) -> Self {
        RootedTree::new(vec![RootedTree::leaf(); k])
    }

    /// A path with `len` edges hanging from the root.
    pub fn path(len: usize) -> Self {
        (0..len).fold(RootedTree::leaf(), |t, _| RootedTree::new(vec![t]))
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(RootedTree::size).sum::<usize>()
    }

    /// Height: 0 for a lone root.
    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| 1 + c.depth())
            .max()
            .unwrap_or(0)
    }

    /// Number of vertices at depth `< d`.
    pub fn count_above(&self, d: usize) -> usize {
        if d == 0 {
            0
        } else {
            1 + self
                .children
                .iter()
                .map(|c| c.count_above(d - 1))
                .sum::<usize>()
        }
    }

    /// Drops every vertex deeper than `d`.
    pub fn truncate(&self, d: usize) -> Self {
        if d == 0 {
            RootedTree::leaf()
        } else {
            RootedTree::new(self.children.iter().map(|c| c.truncate(d - 1)).collect())
        }
    }

    /// The tree spanned from `root` without entering `blocked` vertices.
    ///
    /// Fails if the explored part is not a tree.
    pub fn from_graph(g: &Graph, root: usize, blocked: &[bool]) -> Result<Self> {
        let mut seen = vec![false; g.n()];
        seen[root] = true;
        Self::explore(g, root, usize::MAX, blocked, &mut seen)
    }

    fn explore(
        g: &Graph,
        v: usize,
        parent: usize,
        blocked: &[bool],
        seen: &mut [bool],
    ) -> Result<Self> {
        let mut children = Vec::new();
        for &u in g.neighbors(v) {
            if u == parent || blocked.get(u).copied().unwrap_or(false) {
                continue;
            }
            if seen[u] {
                return Err(Error::Hypothesis {
                    vertex: u,
                    msg: "expected a tree, found a cycle".into(),
                });
            }
            seen[u] = true;
            children.push(Self::explore(g, u, v, blocked, seen)?);
        }
        Ok(RootedTree::new(children))
    }

    /// Adds the tree's non-root vertices below `root` in `b`.
    fn attach(&self, b: &mut GraphBuilder, root: usize) {
        for c in &self.children {
            let v = b.add_vertex();
            b.add_edge(root, v).expect("fresh vertex");
            c.attach(b, v);
        }
    }

    /// The tree as a graph with the root at vertex 0.
    pub fn to_graph(&self) -> Graph {
        let mut b = GraphBuilder::new(1);
        self.attach(&mut b, 0);
        b.build()
    }

    /// Isomorphism-canonical string: sorted child strings in parentheses.
    pub fn canonical(&self) -> String {
        let mut parts: Vec<String> = self.children.iter().map(RootedTree::canonical).collect();
        parts.sort();
        format!("({})", parts.concat())
    }

    /// Root-fixing automorphisms: product of child counts times the
    /// factorial of each isomorphism-class multiplicity.
    pub fn automorphism_count(&self) -> BigUint {
        let mut classes: BTreeMap<String, usize> = BTreeMap::new();
        let mut total = BigUint::one();
        for c in &self.children {
            *classes.entry(c.canonical()).or_default() += 1;
            total *= c.automorphism_count();
        }
        for &k in classes.values() {
            total *= factorial(k);
        }
        total
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn ln_biguint(x: &BigUint) -> f64 {
    match x.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => {
            let shift = x.bits() - 64;
            (x >> shift).to_f64().expect("64-bit value").ln()
                + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// A cycle with one rooted tree per cycle vertex, in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleNeighborhood {
    pub cycle_length: usize,
    pub trees: Vec<RootedTree>,
    /// Depth bound `R`; vertices at depth exactly `R` may have unseen neighbours.
    pub radius: usize,
}

impl CycleNeighborhood {
    pub fn new(trees: Vec<RootedTree>, radius: usize) -> Result<Self> {
        if trees.len() < 3 {
            return Err(Error::Parameter(format!(
                "cycle length {} below 3",
                trees.len()
            )));
        }
        if let Some(t) = trees.iter().find(|t| t.depth() > radius) {
            return Err(Error::Parameter(format!(
                "tree of depth {} exceeds radius {radius}",
                t.depth()
            )));
        }
        Ok(CycleNeighborhood {
            cycle_length: trees.len(),
            trees,
            radius,
        })
    }

    /// A cycle with no trees attached.
    pub fn bare(len: usize, radius: usize) -> Result<Self> {
        Self::new(vec![RootedTree::leaf(); len], radius)
    }

    /// Total vertex count (equal to the edge count).
    pub fn v(&self) -> usize {
        self.trees.iter().map(RootedTree::size).sum()
    }

    /// Vertices strictly closer than `radius` to the cycle.
    pub fn w(&self) -> usize {
        self.trees.iter().map(|t| t.count_above(self.radius)).sum()
    }

    /// Cycle vertices are `0..len` in cyclic order.
    pub fn to_graph(&self) -> Graph {
        let k = self.cycle_length;
        let mut b = GraphBuilder::new(k);
        for i in 0..k {
            b.add_edge(i, (i + 1) % k).expect("cycle edge");
        }
        for (i, t) in self.trees.iter().enumerate() {
            t.attach(&mut b, i);
        }
        b.build()
    }

    /// Reads `B(C, R)` from a ball computed around `cycle` (ambient ids in
    /// cyclic order).
    pub fn from_ball(ball: &Ball, cycle: &[usize]) -> Result<Self> {
        let h = &ball.subgraph;
        if h.edge_count() != h.n() {
            return Err(Error::Hypothesis {
                vertex: cycle[0],
                msg: format!(
                    "B(C,{}) has {} vertices and {} edges, not unicyclic",
                    ball.radius,
                    h.n(),
                    h.edge_count()
                ),
            });
        }
        let local: Vec<usize> = cycle
            .iter()
            .map(|&v| {
                ball.local(v)
                    .ok_or_else(|| Error::Parameter(format!("cycle vertex {v} not in ball")))
            })
            .collect::<Result<_>>()?;
        let mut blocked = vec![false; h.n()];
        local.iter().for_each(|&v| blocked[v] = true);
        let trees = local
            .iter()
            .map(|&v| RootedTree::from_graph(h, v, &blocked))
            .collect::<Result<Vec<_>>>()?;
        Self::new(trees, ball.radius)
    }

    /// `|Aut H|` from the cycle's symmetries and the trees' automorphisms.
    pub fn automorphism_count(&self) -> BigUint {
        let keys: Vec<String> = self.trees.iter().map(RootedTree::canonical).collect();
        let k = keys.len();
        let mut symmetric = 0u32;
        for shift in 0..k {
            for reflect in [false, true] {
                let maps = (0..k).all(|i| {
                    let j = if reflect {
                        (shift + k - i) % k
                    } else {
                        (shift + i) % k
                    };
                    keys[i] == keys[j]
                });
                symmetric += maps as u32;
            }
        }
        self.trees.iter().fold(BigUint::from(symmetric), |acc, t| {
            acc * t.automorphism_count()
        })
    }
}

/// Normalization of the Poisson mean of `X_H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LambdaConvention {
    /// `c^v e^{-wc} / (v! |Aut H|)`.
    VFactorial,
    /// `c^v e^{-wc} / |Aut H|`, the labelled copy count.
    LabeledEmbedding,
}

impl std::str::FromStr for LambdaConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v-factorial" | "VFactorial" => Ok(LambdaConvention::VFactorial),
            "labeled-embedding" | "LabeledEmbedding" => Ok(LambdaConvention::LabeledEmbedding),
            _ => Err(Error::Parameter(format!("unknown lambda convention `{s}`"))),
        }
    }
}

/// Poisson mean of the count of `H` in `G(n, c/n)`.
pub fn lambda_h(h: &CycleNeighborhood, c: f64, convention: LambdaConvention) -> Result<f64> {
    ln_lambda(h, c, convention, true).map(f64::exp)
}

/// [`lambda_h`] without the survival factor `e^{-wc}`.
pub fn lambda_h_without_survival(
    h: &CycleNeighborhood,
    c: f64,
    convention: LambdaConvention,
) -> Result<f64> {
    ln_lambda(h, c, convention, false).map(f64::exp)
}

fn ln_lambda(
    h: &CycleNeighborhood,
    c: f64,
    convention: LambdaConvention,
    survival: bool,
) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Parameter(format!(
            "c must be positive and finite, got {c}"
        )));
    }
    let v = h.v();
    let mut ln = v as f64 * c.ln() - ln_biguint(&h.automorphism_count());
    if survival {
        ln -= h.w() as f64 * c;
    }
    if convention == LambdaConvention::VFactorial {
        ln -= (1..=v).map(|i| (i as f64).ln()).sum::<f64>();
    }
    Ok(ln)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceCheck {
    pub partner: String,
    pub covariance: f64,
    pub stderr: f64,
    pub pass: bool,
}

/// One class of a census: a cycle length (`len:i`) or an isomorphism type
/// of `B(C, R)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub class_id: String,
    pub lambda_predicted: f64,
    pub mean_empirical: f64,
    /// `sqrt(max(sample variance, λ) / trials)`; the Poisson floor keeps
    /// rarely seen classes from getting a spuriously tiny error.
    pub stderr: f64,
    pub covariance_partner_checks: Vec<CovarianceCheck>,
    /// `None` when `λ` is below the testing threshold.
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonCensusReport {
    pub c: f64,
    pub radius: usize,
    pub n: usize,
    pub trials: u64,
    pub convention: LambdaConvention,
    pub multiplier: f64,
    pub rows: Vec<CensusRow>,
    /// Cycles whose `B(C, R)` held a second cycle; excluded from type rows.
    pub non_unicyclic: u64,
    pub warnings: Vec<String>,
    pub pass: bool,
}

impl PoissonCensusReport {
    pub fn row(&self, class_id: &str) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.class_id == class_id)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusOptions {
    pub convention: LambdaConvention,
    pub multiplier: f64,
    /// Type rows with `λ` below this are reported but not tested.
    pub min_lambda: f64,
    /// Warn when a tested row's standard error exceeds this.
    pub precision: Option<f64>,
    pub threads: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            convention: DEFAULT_LAMBDA_CONVENTION,
            multiplier: DEFAULT_STDERR_MULTIPLIER,
            min_lambda: 1e-3,
            precision: None,
            threads: None,
        }
    }
}

/// Per-trial tallies: cycle counts by length and neighbourhood counts by type.
#[derive(Default)]
struct Tally {
    by_len: BTreeMap<usize, u64>,
    by_type: BTreeMap<String, (u64, CycleNeighborhood)>,
    non_unicyclic: u64,
}

/// Compares cycle and neighbourhood counts in sampled `G(n, c/n)` with their
/// Poisson means.
pub fn census_vs_poisson(
    c: f64,
    radius: usize,
    n: usize,
    trials: u64,
    seed: u64,
    opts: &CensusOptions,
) -> Result<PoissonCensusReport> {
    if trials == 0 {
        return Err(Error::Parameter("at least one trial is required".into()));
    }
    trial_graph(n, c, seed, 0)?;
    let tallies = run_trials(seed, trials, opts.threads, |i, _| -> Result<Tally> {
        let g = trial_graph(n, c, seed, i)?;
        let census = cycle_census(&g, radius)?;
        let mut t = Tally::default();
        for (&len, class) in &census.classes {
            t.by_len.insert(len, class.count as u64);
            for (cycle, ball) in class.cycles.iter().zip(&class.balls) {
                match CycleNeighborhood::from_ball(ball, cycle) {
                    Ok(h) => t.by_type.entry(h_isomorphism_key(&h)).or_insert((0, h)).0 += 1,
                    Err(Error::Hypothesis { .. }) => t.non_unicyclic += 1,
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(t)
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    summarize(c, radius, n, trials, opts, &tallies)
}

fn summarize(
    c: f64,
    radius: usize,
    n: usize,
    trials: u64,
    opts: &CensusOptions,
    tallies: &[Tally],
) -> Result<PoissonCensusReport> {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let len_series: BTreeMap<usize, Vec<f64>> = (3..=radius)
        .map(|len| {
            (
                len,
                tallies
                    .iter()
                    .map(|t| *t.by_len.get(&len).unwrap_or(&0) as f64)
                    .collect(),
            )
        })
        .collect();
    let mut make_row = |id: String,
                        lambda: f64,
                        xs: &[f64],
                        tested: bool,
                        checks: Vec<CovarianceCheck>| {
        let m = Moments::from_iter(xs.iter().copied());
        let stderr = (m.variance().max(lambda) / trials as f64).sqrt();
        let pass = tested.then(|| (m.mean() - lambda).abs() <= opts.multiplier * stderr);
        if let (true, Some(p)) = (tested, opts.precision) {
            if stderr > p {
                warnings.push(format!("{id}: stderr {stderr:.2e} above requested precision {p:.2e}; more trials needed"));
            }
        }
        CensusRow {
            class_id: id,
            lambda_predicted: lambda,
            mean_empirical: m.mean(),
            stderr,
            covariance_partner_checks: checks,
            pass,
        }
    };
    for (&len, xs) in &len_series {
        let lambda = c.powi(len as i32) / (2.0 * len as f64);
        let checks = len_series
            .iter()
            .filter(|(&other, _)| other != len)
            .map(|(&other, ys)| {
                let (cov, se) = covariance(xs, ys);
                CovarianceCheck {
                    partner: format!("len:{other}"),
                    covariance: cov,
                    stderr: se,
                    pass: cov.abs() <= opts.multiplier * se,
                }
            })
            .collect();
        rows.push(make_row(format!("len:{len}"), lambda, xs, true, checks));
    }
    let mut types: BTreeMap<&str, &CycleNeighborhood> = BTreeMap::new();
    for t in tallies {
        for (k, (_, h)) in &t.by_type {
            types.entry(k).or_insert(h);
        }
    }
    for (key, h) in types {
        let lambda = lambda_h(h, c, opts.convention)?;
        let xs: Vec<f64> = tallies
            .iter()
            .map(|t| t.by_type.get(key).map_or(0.0, |e| e.0 as f64))
            .collect();
        rows.push(make_row(
            key.to_string(),
            lambda,
            &xs,
            lambda >= opts.min_lambda,
            vec![],
        ));
    }
    if trials < 30 {
        warnings.push(format!(
            "only {trials} trials; normal approximation unreliable"
        ));
    }
    let pass = rows
        .iter()
        .all(|r| r.pass != Some(false) && r.covariance_partner_checks.iter().all(|c| c.pass));
    Ok(PoissonCensusReport {
        c,
        radius,
        n,
        trials,
        convention: opts.convention,
        multiplier: opts.multiplier,
        rows,
        non_unicyclic: tallies.iter().map(|t| t.non_unicyclic).sum(),
        warnings,
        pass,
    })
}

/// Galton-Watson tree with Poisson(`c`) offspring, cut at depth `depth`.
pub fn galton_watson<R: Rng + ?Sized>(rng: &mut R, c: f64, depth: usize) -> RootedTree {
    if depth == 0 {
        return RootedTree::leaf();
    }
    let k = poisson(rng, c) as usize;
    RootedTree::new((0..k).map(|_| galton_watson(rng, c, depth - 1)).collect())
}

/// Draws the short-cycle neighbourhoods of the local limit: Poisson(`c^i/2i`)
/// cycles of each length `3..=radius`, each vertex decorated with a
/// Galton-Watson tree cut at depth `radius`.
pub fn sample_local_structure(c: f64, radius: usize, seed: u64) -> Result<Vec<CycleNeighborhood>> {
    if !(c > 0.0 && c.is_finite()) || radius < 3 {
        return Err(Error::Parameter(format!(
            "need c > 0 and radius >= 3, got c = {c}, radius = {radius}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::new();
    for len in 3..=radius {
        let count = poisson(&mut rng, c.powi(len as i32) / (2.0 * len as f64));
        for _ in 0..count {
            let trees = (0..len)
                .map(|_| galton_watson(&mut rng, c, radius))
                .collect();
            out.push(CycleNeighborhood {
                cycle_length: len,
                trees,
                radius,
            });
        }
    }
    Ok(out)
}

/// Means of cycle-length and type counts under [`sample_local_structure`],
/// keyed like census rows.
pub fn local_structure_moments(
    c: f64,
    radius: usize,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<BTreeMap<String, Moments>> {
    let samples = run_trials(seed, trials, threads, |i, _| {
        sample_local_structure(c, radius, crate::rng::stream_seed(seed, i))
    })?;
    let mut per_trial: Vec<BTreeMap<String, u64>> = Vec::with_capacity(samples.len());
    for s in samples {
        let mut m = BTreeMap::new();
        for h in s? {
            *m.entry(format!("len:{}", h.cycle_length)).or_insert(0) += 1;
            *m.entry(h_isomorphism_key(&h)).or_insert(0) += 1;
        }
        per_trial.push(m);
    }
    let mut keys: Vec<String> = (3..=radius).map(|l| format!("len:{l}")).collect();
    keys.extend(per_trial.iter().flat_map(|m| m.keys().cloned()));
    keys.sort();
    keys.dedup();
    Ok(keys
        .into_iter()
        .map(|k| {
            let m = Moments::from_iter(per_trial.iter().map(|t| *t.get(&k).unwrap_or(&0) as f64));
            (k, m)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{automorphism_count, ball, BallCenter};
    use crate::rng::stream;

    fn random_tree(rng: &mut impl Rng, max_size: usize) -> RootedTree {
        // random recursive tree: each new vertex picks a uniform parent
        let size = rng.random_range(1..=max_size);
        let mut kids: Vec<Vec<usize>> = vec![vec![]; size];
        for v in 1..size {
            kids[rng.random_range(0..v)].push(v);
        }
        fn build(k: &[Vec<usize>], v: usize) -> RootedTree {
            RootedTree::new(k[v].iter().map(|&u| build(k, u)).collect())
        }
        build(&kids, 0)
    }

    #[test]
    fn tree_basics() {
        let t = RootedTree::new(vec![RootedTree::star(2), RootedTree::leaf()]);
        assert_eq!((t.size(), t.depth()), (5, 2));
        assert_eq!(t.count_above(1), 1);
        assert_eq!(t.count_above(2), 3);
        assert_eq!(t.truncate(1), RootedTree::star(2));
        assert_eq!(t.automorphism_count(), BigUint::from(2u32));
        assert_eq!(
            RootedTree::star(4).automorphism_count(),
            BigUint::from(24u32)
        );
        let g = t.to_graph();
        assert_eq!(
            RootedTree::from_graph(&g, 0, &[]).unwrap().canonical(),
            t.canonical()
        );
    }

    #[test]
    fn structural_automorphisms_match_graph_search() {
        let mut rng = stream(11, 0);
        for _ in 0..200 {
            let len = rng.random_range(3..6);
            let trees: Vec<RootedTree> = (0..len).map(|_| random_tree(&mut rng, 3)).collect();
            let h = CycleNeighborhood::new(trees, 3).unwrap();
            let g = h.to_graph();
            if g.n() > 16 {
                continue;
            }
            assert_eq!(
                h.automorphism_count(),
                BigUint::from(automorphism_count(&g).unwrap()),
                "{h:?}"
            );
            assert_eq!(g.n(), h.v());
            assert_eq!(g.edge_count(), h.v());
        }
    }

    #[test]
    fn bare_triangle_lambda() {
        let h = CycleNeighborhood::bare(3, 1).unwrap();
        assert_eq!((h.v(), h.w()), (3, 3));
        let l = lambda_h(&h, 1.0, LambdaConvention::LabeledEmbedding).unwrap();
        assert!((l - (-3.0f64).exp() / 6.0).abs() < 1e-15);
        assert!((l - 0.00830).abs() < 5e-6);
        let p = lambda_h(&h, 1.0, LambdaConvention::VFactorial).unwrap();
        assert!((p * 6.0 - l).abs() < 1e-15);
        // agrees with the isolated-triangle exponent c^3 e^{-3c} / 6
        for c in [0.3, 1.0, 2.5] {
            let l = lambda_h(&h, c, LambdaConvention::LabeledEmbedding).unwrap();
            assert!((l - c * c * c * (-3.0 * c).exp() / 6.0).abs() < 1e-14);
        }
    }

    #[test]
    fn lambda_vanishes_at_zero_and_is_positive() {
        let h = CycleNeighborhood::new(
            vec![RootedTree::star(1), RootedTree::leaf(), RootedTree::path(2)],
            3,
        )
        .unwrap();
        let small = lambda_h(&h, 1e-6, LambdaConvention::LabeledEmbedding).unwrap();
        assert!(small > 0.0 && small < 1e-30);
        let mut prev = lambda_h(&h, 0.5, LambdaConvention::LabeledEmbedding).unwrap();
        for i in 1..=300 {
            let c = 0.5 + i as f64 * 1e-3;
            let l = lambda_h(&h, c, LambdaConvention::LabeledEmbedding).unwrap();
            assert!(l > 0.0 && (l - prev).abs() < 1e-3 * prev.max(1e-12) * 10.0);
            prev = l;
        }
        assert!(lambda_h(&h, 0.0, LambdaConvention::LabeledEmbedding).is_err());
    }

    #[test]
    fn bare_cycle_without_survival_is_cycle_mean() {
        for i in 3..9 {
            let h = CycleNeighborhood::bare(i, 1).unwrap();
            let c: f64 = 0.7;
            let l = lambda_h_without_survival(&h, c, LambdaConvention::LabeledEmbedding).unwrap();
            assert!((l - c.powi(i as i32) / (2.0 * i as f64)).abs() < 1e-15);
        }
    }

    #[test]
    fn from_ball_reads_decorations() {
        // triangle 0-1-2, pendant path 2-3-4, leaf 0-5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (0, 5)]).unwrap();
        let b = ball(&g, &BallCenter::Set(vec![0, 1, 2]), 1).unwrap();
        let h = CycleNeighborhood::from_ball(&b, &[0, 1, 2]).unwrap();
        assert_eq!(
            h.trees,
            vec![RootedTree::star(1), RootedTree::leaf(), RootedTree::star(1)]
        );
        assert_eq!((h.v(), h.w()), (5, 3));
        let b = ball(&g, &BallCenter::Set(vec![0, 1, 2]), 3).unwrap();
        let h = CycleNeighborhood::from_ball(&b, &[0, 1, 2]).unwrap();
        assert_eq!(h.trees[2], RootedTree::path(2));
        let k4 = Graph::complete(4);
        let b = ball(&k4, &BallCenter::Set(vec![0, 1, 2]), 1).unwrap();
        assert!(matches!(
            CycleNeighborhood::from_ball(&b, &[0, 1, 2]),
            Err(Error::Hypothesis { .. })
        ));
    }

    #[test]
    fn census_bare_triangle_mean() {
        let r = census_vs_poisson(1.0, 3, 1000, 2000, 5, &CensusOptions::default()).unwrap();
        let tri = r.row("len:3").unwrap();
        assert!((tri.lambda_predicted - 1.0 / 6.0).abs() < 1e-12);
        assert!(tri.pass.unwrap(), "{tri:?}");
        for check in &tri.covariance_partner_checks {
            assert!(check.pass, "{check:?}");
        }
    }

    #[test]
    fn census_four_cycles_at_half() {
        let r = census_vs_poisson(0.5, 4, 1000, 3000, 6, &CensusOptions::default()).unwrap();
        let sq = r.row("len:4").unwrap();
        assert_eq!(sq.lambda_predicted, 0.0078125);
        assert!(sq.pass.unwrap(), "{sq:?}");
    }

    #[test]
    fn census_adjudicates_lambda_convention() {
        let run = |convention| {
            let opts = CensusOptions {
                convention,
                min_lambda: 0.004,
                ..Default::default()
            };
            census_vs_poisson(1.0, 3, 1000, 5000, 8, &opts).unwrap()
        };
        let (labeled, v_factorial) = (
            run(LambdaConvention::LabeledEmbedding),
            run(LambdaConvention::VFactorial),
        );
        let tested: Vec<&CensusRow> = labeled
            .rows
            .iter()
            .filter(|r| r.pass.is_some() && !r.class_id.starts_with("len:"))
            .collect();
        assert!(tested.len() >= 2, "{:?}", labeled.rows);
        assert!(tested.iter().all(|r| r.pass == Some(true)), "{tested:?}");
        // Same samples, so the classes line up; pooled squared z-scores.
        let chi2 = |rep: &PoissonCensusReport| {
            tested
                .iter()
                .map(|t| {
                    let r = rep.row(&t.class_id).unwrap();
                    let se = (r.mean_empirical.max(r.lambda_predicted) / rep.trials as f64).sqrt();
                    ((r.mean_empirical - r.lambda_predicted) / se).powi(2)
                })
                .sum::<f64>()
        };
        let k = tested.len() as f64;
        assert!(chi2(&labeled) < 9.0 * k, "{}", chi2(&labeled));
        assert!(chi2(&v_factorial) > 25.0 * k, "{}", chi2(&v_factorial));
    }

    #[test]
    fn insufficient_trials_warns() {
        let opts = CensusOptions {
            precision: Some(1e-4),
            ..Default::default()
        };
        let r = census_vs_poisson(1.0, 3, 500, 20, 1, &opts).unwrap();
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn local_structure_empty_fraction_at_tiny_c() {
        let trials = 20_000u64;
        let empty = (0..trials)
            .filter(|&i| sample_local_structure(0.05, 5, i).unwrap().is_empty())
            .count();
        let predicted = (-(3..=5)
            .map(|i| 0.05f64.powi(i) / (2.0 * i as f64))
            .sum::<f64>())
        .exp();
        assert!((1.0 - predicted - 2.2e-5).abs() < 1e-6);
        assert!(trials as usize - empty <= 5);
    }

    #[test]
    fn local_structure_triangle_mean() {
        let m = local_structure_moments(1.0, 3, 20_000, 3, None).unwrap();
        let tri = &m["len:3"];
        assert!((tri.mean() - 1.0 / 6.0).abs() <= 3.0 * tri.stderr());
    }

    #[test]
    fn root_degrees_are_poisson() {
        let mut rng = stream(21, 0);
        let trials = 20_000;
        let mut hist = [0u64; 8];
        for _ in 0..trials {
            let k = galton_watson(&mut rng, 2.0, 1).children.len();
            hist[k.min(7)] += 1;
        }
        let pmf = |k: usize| {
            (-2.0f64).exp() * 2f64.powi(k as i32) / (1..=k).map(|i| i as f64).product::<f64>()
        };
        let mut chi2 = 0.0;
        for (k, &obs) in hist.iter().enumerate() {
            let p = if k < 7 {
                pmf(k)
            } else {
                1.0 - (0..7).map(pmf).sum::<f64>()
            };
            let e = p * trials as f64;
            chi2 += (obs as f64 - e).powi(2) / e;
        }
        // 7 degrees of freedom; 99.9% quantile is 24.3
        assert!(chi2 < 24.3, "{chi2}");
    }

    #[test]
    fn local_structure_matches_lambda() {
        let m = local_structure_moments(1.0, 3, 50_000, 12, None).unwrap();
        let mut tested = 0;
        let mut rng = stream(12, 999_999_999);
        // Rebuild representatives for the most frequent keys.
        let mut reps: BTreeMap<String, CycleNeighborhood> = BTreeMap::new();
        for _ in 0..10_000 {
            for h in sample_local_structure(1.0, 3, rng.random()).unwrap() {
                reps.entry(h_isomorphism_key(&h)).or_insert(h);
            }
        }
        for (k, h) in &reps {
            let lambda = lambda_h(h, 1.0, LambdaConvention::LabeledEmbedding).unwrap();
            if lambda < 0.004 {
                continue;
            }
            let mo = &m[k];
            let se = (mo.variance().max(lambda) / mo.count as f64).sqrt();
            assert!(
                (mo.mean() - lambda).abs() <= 3.5 * se,
                "{k}: {} vs {lambda}",
                mo.mean()
            );
            tested += 1;
        }
        assert!(tested >= 2, "{tested}");
    }
}
