//! R-equivalence of rooted trees, cycle neighbourhoods and graphs.
//!
//! Counts are compared up to `R`: two counts are R-same when equal or both at
//! least `R`. Signatures are canonical strings, so equal signatures mean
//! R-equivalent objects:
//!
//! * tree of depth 0: `*`;
//! * tree of depth `d`: `(` then `sig:count` for each class of depth-`d-1`
//!   children, sorted by `sig`, comma separated, then `)`. A capped count
//!   prints as `R+`;
//! * cycle neighbourhood: `C<len>[s1|s2|...]` with the tree signatures in the
//!   lexicographically least rotation or reflection;
//! * graph: `G{cycles:[...];trees:[...]}` listing capped counts of cycle
//!   neighbourhood classes and of tree-shaped balls `B(x, R)`.

use crate::error::{Error, Result};
use crate::graph::{ball, simple_cycles, BallCenter, Graph};
use crate::local_limit::{CycleNeighborhood, RootedTree};
use crate::logic::{check, Formula, Sentence};
use crate::montecarlo::run_trials;
use crate::rng::StreamRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// `a` and `b` are equal or both at least `r`.
pub fn r_same(a: u64, b: u64, r: u64) -> bool {
    a == b || (a >= r && b >= r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SignatureKind {
    Tree,
    Cycle,
    Graph,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EquivSignature {
    pub kind: SignatureKind,
    pub canonical: String,
}

impl fmt::Display for EquivSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical)
    }
}

/// `None` means counts are kept exact (isomorphism rather than R-equivalence).
type Cap = Option<usize>;

fn fmt_count(k: usize, cap: Cap) -> String {
    match cap {
        Some(r) if k >= r => format!("{r}+"),
        _ => k.to_string(),
    }
}

fn multiset(items: impl IntoIterator<Item = String>, cap: Cap) -> String {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for s in items {
        *counts.entry(s).or_default() += 1;
    }
    counts
        .iter()
        .map(|(s, &k)| format!("{s}:{}", fmt_count(k, cap)))
        .collect::<Vec<_>>()
        .join(",")
}

fn tree_sig(t: &RootedTree, depth: usize, cap: Cap) -> String {
    if depth == 0 {
        return "*".to_string();
    }
    format!(
        "({})",
        multiset(t.children.iter().map(|c| tree_sig(c, depth - 1, cap)), cap)
    )
}

/// R-equivalence class of `t` viewed as a tree of depth `depth`; deeper
/// vertices are ignored.
pub fn tree_signature(t: &RootedTree, depth: usize, r: usize) -> EquivSignature {
    EquivSignature {
        kind: SignatureKind::Tree,
        canonical: tree_sig(t, depth, Some(r)),
    }
}

/// Lexicographically least rotation or reflection of a cyclic sequence.
fn least_arrangement(seq: &[String]) -> Vec<&str> {
    let k = seq.len();
    let mut best: Option<Vec<&str>> = None;
    for shift in 0..k {
        for reflect in [false, true] {
            let cand: Vec<&str> = (0..k)
                .map(|i| {
                    if reflect {
                        &seq[(shift + k - i) % k]
                    } else {
                        &seq[(shift + i) % k]
                    }
                })
                .map(String::as_str)
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn h_sig(h: &CycleNeighborhood, depth: usize, cap: Cap) -> String {
    let seq: Vec<String> = h.trees.iter().map(|t| tree_sig(t, depth, cap)).collect();
    format!("C{}[{}]", h.cycle_length, least_arrangement(&seq).join("|"))
}

/// R-equivalence class of a cycle neighbourhood, trees read to depth `r`.
pub fn h_signature(h: &CycleNeighborhood, r: usize) -> EquivSignature {
    EquivSignature {
        kind: SignatureKind::Cycle,
        canonical: h_sig(h, r, Some(r)),
    }
}

/// Isomorphism class of `h` (uncapped counts, trees read to `h.radius`).
pub fn h_isomorphism_key(h: &CycleNeighborhood) -> String {
    h_sig(h, h.radius, None)
}

/// Uncapped class counts of a graph whose balls are trees or unicyclic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphProfile {
    pub r: usize,
    /// Signature of `B(C, r)` (uncapped trees) to the number of cycles `C`
    /// of length at most `2r + 1` with that neighbourhood.
    pub cycles: BTreeMap<String, usize>,
    /// Signature of each tree-shaped `B(x, r)` rooted at `x`, with counts.
    pub tree_balls: BTreeMap<String, usize>,
}

impl GraphProfile {
    pub fn signature(&self) -> EquivSignature {
        let part = |m: &BTreeMap<String, usize>| {
            m.iter()
                .map(|(s, &k)| format!("{s}:{}", fmt_count(k, Some(self.r))))
                .collect::<Vec<_>>()
                .join(",")
        };
        EquivSignature {
            kind: SignatureKind::Graph,
            canonical: format!(
                "G{{cycles:[{}];trees:[{}]}}",
                part(&self.cycles),
                part(&self.tree_balls)
            ),
        }
    }

    /// Every tree-ball class present occurs at least `r` times.
    pub fn is_rich(&self) -> bool {
        self.tree_balls.values().all(|&k| k >= self.r)
    }
}

/// Counts every cycle-neighbourhood class and tree-ball class of `g`.
///
/// Cycles up to length `2r + 1` are counted, since exactly those fit inside
/// some `B(x, r)`. Fails with a hypothesis error naming a vertex whose ball,
/// or a cycle whose neighbourhood, is neither a tree nor unicyclic.
pub fn graph_profile(g: &Graph, r: usize) -> Result<GraphProfile> {
    if r == 0 {
        return Err(Error::Parameter("R must be at least 1".into()));
    }
    let mut tree_balls = BTreeMap::new();
    for x in 0..g.n() {
        let b = ball(g, &BallCenter::Vertex(x), r)?;
        let (v, e) = (b.subgraph.n(), b.subgraph.edge_count());
        if e > v {
            return Err(Error::Hypothesis {
                vertex: x,
                msg: format!("B(x,{r}) has {v} vertices and {e} edges"),
            });
        }
        if e + 1 == v {
            let t = RootedTree::from_graph(&b.subgraph, b.local(x).expect("centre"), &[])?;
            *tree_balls.entry(tree_sig(&t, r, Some(r))).or_default() += 1;
        }
    }
    let mut cycles = BTreeMap::new();
    for cycle in simple_cycles(g, 2 * r + 1)? {
        let b = ball(g, &BallCenter::Set(cycle.clone()), r)?;
        let h = CycleNeighborhood::from_ball(&b, &cycle)?;
        *cycles.entry(h_sig(&h, r, Some(r))).or_default() += 1;
    }
    Ok(GraphProfile {
        r,
        cycles,
        tree_balls,
    })
}

/// Canonical R-signature of a graph.
pub fn graph_signature(g: &Graph, r: usize) -> Result<EquivSignature> {
    graph_profile(g, r).map(|p| p.signature())
}

/// Why a pair was not used to test transfer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Refusal {
    SignatureMismatch,
    NotRich,
    Hypothesis(String),
}

/// Checks that `(g, h)` may be used: equal signatures and rich tree balls.
pub fn admissible_pair(g: &Graph, h: &Graph, r: usize) -> std::result::Result<(), Refusal> {
    let profile = |x: &Graph| graph_profile(x, r).map_err(|e| Refusal::Hypothesis(e.to_string()));
    let (pg, ph) = (profile(g)?, profile(h)?);
    if pg.signature() != ph.signature() {
        return Err(Refusal::SignatureMismatch);
    }
    if !pg.is_rich() || !ph.is_rich() {
        return Err(Refusal::NotRich);
    }
    Ok(())
}

/// Quantifier rank of the sentence battery used at a given `R`.
pub fn battery_rank(r: usize) -> usize {
    if r >= 5 {
        3
    } else {
        2
    }
}

/// The documented sentence battery of quantifier rank at most `rank`: the
/// hand-written sentences below whose rank fits, followed by 40 random
/// sentences drawn from a fixed seed.
pub fn battery(rank: usize) -> Vec<Sentence> {
    let hand = [
        "exists x. x = x",
        "exists x. exists y. x ~ y",
        "exists x. forall y. !x ~ y",
        "forall x. exists y. x ~ y",
        "exists x. forall y. (x = y | x ~ y)",
        "exists x. exists y. (!x = y & !x ~ y)",
        "exists x. exists y. (x ~ y & forall y. (y ~ x -> exists x. (x ~ y & !x = y)))",
        "exists x. exists y. exists z. (x ~ y & y ~ z & x ~ z)",
        "exists x. exists y. exists z. (x ~ y & y ~ z & !x = z)",
        "exists x. exists y. (x ~ y & forall z. (z ~ x -> z = y))",
        "forall x. forall y. (x ~ y -> exists z. (!z = x & !z = y & (z ~ x | z ~ y)))",
        "exists x. forall y. (x ~ y -> exists z. (z ~ y & !z = x))",
    ];
    let mut out: Vec<Sentence> = hand
        .iter()
        .map(|s| crate::logic::parse(s).expect("battery sentence parses"))
        .filter(|s| s.quantifier_rank() <= rank)
        .collect();
    let mut rng = crate::rng::rng_from_seed(0xba77e4 + rank as u64);
    out.extend((0..40).map(|_| random_fo_sentence(&mut rng, rank)));
    debug_assert!(out.iter().all(|s| s.quantifier_rank() <= rank));
    out
}

/// Random first-order sentence of quantifier rank at most `rank` over the
/// variables `x`, `y`, `z` (reused freely, so rank is the binding depth).
pub fn random_fo_sentence(rng: &mut StreamRng, rank: usize) -> Sentence {
    fn go(rng: &mut StreamRng, rank: usize, bound: &mut Vec<&'static str>) -> Formula {
        const VARS: [&str; 3] = ["x", "y", "z"];
        let quantify = rank > 0 && (bound.is_empty() || rng.random_bool(0.45));
        if quantify {
            let v = VARS[rng.random_range(0..VARS.len())];
            bound.push(v);
            let body = go(rng, rank - 1, bound);
            bound.pop();
            return if rng.random_bool(0.5) {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            };
        }
        if bound.is_empty() {
            return Formula::forall("x", Formula::eq("x", "x"));
        }
        match rng.random_range(0..6) {
            0 => Formula::and(go(rng, rank, bound), go(rng, rank, bound)),
            1 => Formula::or(go(rng, rank, bound), go(rng, rank, bound)),
            2 => Formula::not(go(rng, rank, bound)),
            k => {
                let a = *bound.choose(rng).expect("bound variable");
                let b = *bound.choose(rng).expect("bound variable");
                if k == 3 {
                    Formula::eq(a, b)
                } else {
                    Formula::adj(a, b)
                }
            }
        }
    }
    go(rng, rank, &mut Vec::new())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub g: Vec<(usize, usize)>,
    pub g_n: usize,
    pub h: Vec<(usize, usize)>,
    pub h_n: usize,
    pub sentence: String,
    pub truth_g: bool,
    pub truth_h: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub r: usize,
    pub rank: usize,
    pub battery: Vec<String>,
    pub pairs_generated: u64,
    pub pairs_tested: u64,
    pub refused_signature: u64,
    pub refused_richness: u64,
    pub refused_hypothesis: u64,
    pub violations: Vec<Counterexample>,
}

/// Outcome of evaluating the battery on one pair.
#[derive(Clone, Debug, PartialEq)]
pub enum PairOutcome {
    Refused(Refusal),
    Agree,
    Disagree(Vec<Counterexample>),
}

/// Gates `(g, h)` and, if admissible, compares the battery's truth values.
pub fn check_pair(g: &Graph, h: &Graph, r: usize, battery: &[Sentence]) -> Result<PairOutcome> {
    if let Err(why) = admissible_pair(g, h, r) {
        return Ok(PairOutcome::Refused(why));
    }
    let mut bad = Vec::new();
    for s in battery {
        let (a, b) = (check(g, s)?, check(h, s)?);
        if a != b {
            bad.push(Counterexample {
                g: g.edges(),
                g_n: g.n(),
                h: h.edges(),
                h_n: h.n(),
                sentence: s.to_string(),
                truth_g: a,
                truth_h: b,
            });
        }
    }
    Ok(if bad.is_empty() {
        PairOutcome::Agree
    } else {
        PairOutcome::Disagree(bad)
    })
}

/// A random tree on `1..=max_size` vertices (random recursive tree).
fn random_tree_graph(rng: &mut StreamRng, max_size: usize) -> Graph {
    let n = rng.random_range(1..=max_size);
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    Graph::from_edges(n, &edges).expect("tree edges are valid")
}

/// A cycle of length `3..=5` with up to two pendant vertices.
fn random_unicyclic_graph(rng: &mut StreamRng) -> Graph {
    let k = rng.random_range(3..=5);
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let extra = rng.random_range(0..=2);
    for j in 0..extra {
        let v = k + j;
        edges.push((rng.random_range(0..v), v));
    }
    Graph::from_edges(k + extra, &edges).expect("valid edges")
}

fn union_all(parts: &[(Graph, usize)]) -> Graph {
    parts.iter().fold(Graph::empty(0), |acc, (g, m)| {
        (0..*m).fold(acc, |a, _| a.disjoint_union(g))
    })
}

/// Random pair of forests-plus-unicyclic graphs built from shared component
/// types with R-same multiplicities; the second graph is relabelled. With
/// probability 1/10 one multiplicity is perturbed so the gate is exercised.
pub fn random_pair(rng: &mut StreamRng, r: usize) -> (Graph, Graph) {
    let types = rng.random_range(1..=3);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for _ in 0..types {
        let comp = if rng.random_bool(0.3) {
            random_unicyclic_graph(rng)
        } else {
            random_tree_graph(rng, 4)
        };
        let (a, b) = if comp.edge_count() == comp.n() && rng.random_bool(0.5) {
            let m = rng.random_range(1..r.max(2));
            (m, m)
        } else {
            (rng.random_range(r..=r + 2), rng.random_range(r..=r + 2))
        };
        left.push((comp.clone(), a));
        right.push((comp, b));
    }
    if rng.random_bool(0.1) {
        let i = rng.random_range(0..right.len());
        right[i].1 = right[i].1.saturating_sub(r).max(1) - 1;
    }
    right.shuffle(rng);
    let g = union_all(&left);
    let h = union_all(&right);
    let mut perm: Vec<usize> = (0..h.n()).collect();
    perm.shuffle(rng);
    (g, h.relabel(&perm))
}

/// Generates `trials` random pairs, gates them and checks the battery of
/// rank [`battery_rank`]`(r)` on every admissible pair.
pub fn transfer_harness(
    r: usize,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<TransferReport> {
    let rank = battery_rank(r);
    let sentences = battery(rank);
    let outcomes = run_trials(seed, trials, threads, |_, rng| {
        let (g, h) = random_pair(rng, r);
        check_pair(&g, &h, r, &sentences)
    })?;
    let mut report = TransferReport {
        r,
        rank,
        battery: sentences.iter().map(|s| s.to_string()).collect(),
        pairs_generated: trials,
        pairs_tested: 0,
        refused_signature: 0,
        refused_richness: 0,
        refused_hypothesis: 0,
        violations: vec![],
    };
    for o in outcomes {
        match o? {
            PairOutcome::Agree => report.pairs_tested += 1,
            PairOutcome::Disagree(v) => {
                report.pairs_tested += 1;
                report.violations.extend(v);
            }
            PairOutcome::Refused(Refusal::SignatureMismatch) => report.refused_signature += 1,
            PairOutcome::Refused(Refusal::NotRich) => report.refused_richness += 1,
            PairOutcome::Refused(Refusal::Hypothesis(_)) => report.refused_hypothesis += 1,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn copies(g: &Graph, k: usize) -> Graph {
        union_all(&[(g.clone(), k)])
    }

    #[test]
    fn r_same_examples() {
        assert!(r_same(3, 3, 5));
        assert!(r_same(5, 9, 5));
        assert!(!r_same(3, 4, 5));
    }

    #[test]
    fn tree_signature_examples() {
        let lone = RootedTree::leaf();
        assert_eq!(tree_signature(&lone, 0, 3).canonical, "*");
        assert_eq!(
            tree_signature(&lone, 0, 9),
            tree_signature(&RootedTree::star(4), 0, 9)
        );
        assert_eq!(
            tree_signature(&RootedTree::star(5), 1, 5),
            tree_signature(&RootedTree::star(7), 1, 5)
        );
        assert_ne!(
            tree_signature(&RootedTree::star(3), 1, 5),
            tree_signature(&RootedTree::star(4), 1, 5)
        );
        assert_eq!(
            tree_signature(&RootedTree::star(7), 1, 5).canonical,
            "(*:5+)"
        );
        // R+1 classes at depth one
        let classes: std::collections::BTreeSet<_> = (0..12)
            .map(|k| tree_signature(&RootedTree::star(k), 1, 4))
            .collect();
        assert_eq!(classes.len(), 5);
    }

    #[test]
    fn h_signature_rotation_and_reflection() {
        let a = RootedTree::star(1);
        let b = RootedTree::path(2);
        let l = RootedTree::leaf();
        let h1 =
            CycleNeighborhood::new(vec![a.clone(), b.clone(), l.clone(), l.clone()], 3).unwrap();
        let h2 =
            CycleNeighborhood::new(vec![l.clone(), l.clone(), a.clone(), b.clone()], 3).unwrap();
        let h3 =
            CycleNeighborhood::new(vec![b.clone(), a.clone(), l.clone(), l.clone()], 3).unwrap();
        let h4 =
            CycleNeighborhood::new(vec![a.clone(), l.clone(), b.clone(), l.clone()], 3).unwrap();
        assert_eq!(h_signature(&h1, 3), h_signature(&h2, 3));
        assert_eq!(h_signature(&h1, 3), h_signature(&h3, 3));
        assert_ne!(h_signature(&h1, 3), h_signature(&h4, 3));
        let tri = CycleNeighborhood::bare(3, 3).unwrap();
        let sq = CycleNeighborhood::bare(4, 3).unwrap();
        assert_ne!(h_signature(&tri, 3), h_signature(&sq, 3));
    }

    #[test]
    fn triangles_with_rotated_pendants() {
        // pendant on different triangle vertices
        let g1 = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let g2 = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(
            graph_signature(&g1, 3).unwrap(),
            graph_signature(&g2, 3).unwrap()
        );
    }

    #[test]
    fn many_triangles_are_equivalent() {
        let t = Graph::complete(3);
        let s7 = graph_signature(&copies(&t, 7), 5).unwrap();
        assert_eq!(s7, graph_signature(&copies(&t, 9), 5).unwrap());
        assert_ne!(s7, graph_signature(&copies(&t, 4), 5).unwrap());
        assert_ne!(
            graph_signature(&t, 5).unwrap(),
            graph_signature(&Graph::cycle(4), 5).unwrap()
        );
    }

    #[test]
    fn dense_ball_is_a_hypothesis_error() {
        let g = Graph::empty(2).disjoint_union(&Graph::complete(4));
        match graph_signature(&g, 2) {
            Err(Error::Hypothesis { vertex, .. }) => assert_eq!(vertex, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn signatures_are_isomorphism_invariant() {
        let mut rng = stream(3, 0);
        for _ in 0..100 {
            let (g, _) = random_pair(&mut rng, 3);
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            for r in 1..4 {
                assert_eq!(
                    graph_signature(&g, r).unwrap(),
                    graph_signature(&g.relabel(&perm), r).unwrap()
                );
            }
        }
    }

    #[test]
    fn equal_signatures_persist_at_smaller_r() {
        let mut rng = stream(4, 0);
        let mut equal_pairs = 0;
        for _ in 0..200 {
            let (g, h) = random_pair(&mut rng, 4);
            if graph_signature(&g, 4).unwrap() == graph_signature(&h, 4).unwrap() {
                equal_pairs += 1;
                for r in 1..4 {
                    assert_eq!(
                        graph_signature(&g, r).unwrap(),
                        graph_signature(&h, r).unwrap()
                    );
                }
            }
        }
        assert!(equal_pairs > 100);
    }

    #[test]
    fn signature_equality_is_an_equivalence() {
        let mut rng = stream(5, 0);
        let sigs: Vec<EquivSignature> = (0..60)
            .map(|_| {
                let (g, _) = random_pair(&mut rng, 2);
                graph_signature(&g, 2).unwrap()
            })
            .collect();
        for a in &sigs {
            assert_eq!(a, a);
            for b in &sigs {
                assert_eq!(a == b, b == a);
                for c in &sigs {
                    if a == b && b == c {
                        assert_eq!(a, c);
                    }
                }
            }
        }
    }

    #[test]
    fn identical_graphs_agree() {
        let mut rng = stream(6, 0);
        let bat = battery(2);
        for _ in 0..20 {
            let (g, _) = random_pair(&mut rng, 3);
            assert!(matches!(
                check_pair(&g, &g, 3, &bat).unwrap(),
                PairOutcome::Agree | PairOutcome::Refused(Refusal::NotRich)
            ));
        }
    }

    #[test]
    fn isolated_vertices_and_edges() {
        let k1 = Graph::empty(1);
        let k2 = Graph::path(2);
        let g = union_all(&[(k1.clone(), 6), (k2.clone(), 6)]);
        let h = union_all(&[(k1, 8), (k2, 7)]);
        assert_eq!(
            check_pair(&g, &h, 5, &battery(2)).unwrap(),
            PairOutcome::Agree
        );
    }

    #[test]
    fn gate_refuses_unequal_edge_counts() {
        let k2 = Graph::path(2);
        let (g, h) = (copies(&k2, 3), k2.clone());
        let two_disjoint_edges =
            crate::logic::parse("exists a. exists b. exists x. exists y. (a ~ b & x ~ y & !a = x & !a = y & !b = x & !b = y)").unwrap();
        assert_ne!(
            check(&g, &two_disjoint_edges).unwrap(),
            check(&h, &two_disjoint_edges).unwrap()
        );
        assert_eq!(
            check_pair(&g, &h, 5, &[two_disjoint_edges]).unwrap(),
            PairOutcome::Refused(Refusal::SignatureMismatch)
        );
    }

    #[test]
    fn battery_is_fixed_and_ranked() {
        assert_eq!(battery(2), battery(2));
        assert!(battery(2).iter().all(|s| s.quantifier_rank() <= 2));
        assert!(battery(3).iter().all(|s| s.quantifier_rank() <= 3));
        assert!(battery(3).iter().any(|s| s.quantifier_rank() == 3));
    }

    #[test]
    fn harness_small_run() {
        let rep = transfer_harness(3, 60, 1, None).unwrap();
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        assert!(rep.pairs_tested > 20);
        assert!(rep.refused_signature + rep.refused_richness > 0);
    }
}
