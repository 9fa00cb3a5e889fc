//! Interval decision procedure for `Pr[G(n, c/n) ⊨ A]` when `c < 1`.
//!
//! Below the threshold every component is a tree or unicyclic, and the
//! counts of unicyclic components of each isomorphism type are asymptotically
//! independent Poisson variables with means
//! `μ_U(c) = c^v e^{-vc} / |Aut U|`. A *profile* fixes those counts. Its truth
//! is read off a representative model: the profile's components next to a
//! background of `m_rep` copies of every tree on at most `s_max` vertices.

use crate::closed_form::{rational, ClosedForm};
use crate::equivalence::h_isomorphism_key;
use crate::error::{Error, Result};
use crate::graph::{components, ComponentKind, Graph};
use crate::local_limit::{CycleNeighborhood, LambdaConvention, RootedTree};
use crate::logic::{CheckOptions, Compiled, Sentence};
use crate::montecarlo::{run_trials, trial_graph, Moments};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

/// Largest component size accepted by [`enumerate_unicyclic_types`].
pub const MAX_TYPE_SIZE: usize = 12;
pub const DEFAULT_MREP: usize = 3;
pub const DEFAULT_SMAX: usize = 5;

/// `½(−ln(1−c) − c − c²/2)`: limiting mean number of unicyclic components.
pub fn total_unicyclic_mean(c: f64) -> f64 {
    0.5 * (-(-c).ln_1p() - c - c * c / 2.0)
}

/// Limiting mean number of unicyclic components on exactly `v` vertices:
/// `u(v) (c e^{-c})^v / v!` with `u(v) = (v−1)!/2 · Σ_{j≤v−3} v^j/j!` the
/// labelled count.
pub fn unicyclic_mean_of_size(c: f64, v: usize) -> f64 {
    if v < 3 {
        return 0.0;
    }
    // Σ_{j=0}^{v-3} v^j / j! accumulated in log space
    let vf = v as f64;
    let mut ln_terms = Vec::with_capacity(v - 2);
    let mut ln_t = 0.0;
    for j in 0..=(v - 3) {
        if j > 0 {
            ln_t += vf.ln() - (j as f64).ln();
        }
        ln_terms.push(ln_t);
    }
    let mx = ln_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ln_sum = mx + ln_terms.iter().map(|t| (t - mx).exp()).sum::<f64>().ln();
    (ln_sum - (2.0 * vf).ln() + vf * (c.ln() - c)).exp()
}

/// Mean number of unicyclic components larger than `k`.
pub fn unicyclic_tail_mean(c: f64, k: usize) -> f64 {
    let head: f64 = (3..=k).map(|v| unicyclic_mean_of_size(c, v)).sum();
    (total_unicyclic_mean(c) - head).max(0.0)
}

fn poisson_tail(mean: f64, l: usize) -> f64 {
    // Pr[Poisson(mean) >= l]
    let mut term = (-mean).exp();
    let mut below = 0.0;
    for i in 0..l {
        below += term;
        term *= mean / (i + 1) as f64;
    }
    (1.0 - below).max(0.0)
}

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Parameter(format!(
            "subcritical procedures need 0 < c < 1, got {c}"
        )));
    }
    Ok(())
}

/// Smallest `K ≥ 3` whose size tail has mean at most `eps/4`, and smallest
/// `L ≥ 1` with `Pr[Poisson(total) ≥ L] ≤ eps/4`.
pub fn choose_truncation(c: f64, eps: f64) -> Result<(usize, usize)> {
    check_c(c)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    let budget = eps / 4.0;
    let mut k = 3;
    while unicyclic_tail_mean(c, k) > budget {
        k += 1;
        if k > 10_000 {
            return Err(Error::Capability(format!(
                "size truncation exceeds 10000 at c = {c}"
            )));
        }
    }
    let total = total_unicyclic_mean(c);
    let mut l = 1;
    while poisson_tail(total, l) > budget {
        l += 1;
    }
    Ok((k, l))
}

/// All rooted trees with exactly `size` vertices, up to isomorphism, for
/// every size up to `max_size` (index = size).
pub fn rooted_trees_by_size(max_size: usize) -> Vec<Vec<RootedTree>> {
    let mut by_size: Vec<Vec<RootedTree>> = vec![vec![]; max_size + 1];
    if max_size >= 1 {
        by_size[1].push(RootedTree::leaf());
    }
    for s in 2..=max_size {
        let mut out = Vec::new();
        let mut kids = Vec::new();
        // children as a non-increasing sequence of (size, index) keys
        fn rec(
            by_size: &[Vec<RootedTree>],
            left: usize,
            max: (usize, usize),
            kids: &mut Vec<(usize, usize)>,
            out: &mut Vec<RootedTree>,
        ) {
            if left == 0 {
                out.push(RootedTree::new(
                    kids.iter().map(|&(s, i)| by_size[s][i].clone()).collect(),
                ));
                return;
            }
            for size in (1..=left.min(max.0)).rev() {
                let top = if size == max.0 {
                    max.1.saturating_add(1).min(by_size[size].len())
                } else {
                    by_size[size].len()
                };
                for i in (0..top).rev() {
                    kids.push((size, i));
                    rec(by_size, left - size, (size, i), kids, out);
                    kids.pop();
                }
            }
        }
        rec(&by_size, s - 1, (s - 1, usize::MAX), &mut kids, &mut out);
        by_size[s] = out;
    }
    by_size
}

/// Free (unrooted) trees on `1..=max_size` vertices up to isomorphism.
pub fn free_trees(max_size: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for (s, trees) in rooted_trees_by_size(max_size)
        .into_iter()
        .enumerate()
        .skip(1)
    {
        let mut seen = HashSet::new();
        for t in trees {
            let g = t.to_graph();
            let key = (0..s)
                .map(|r| {
                    RootedTree::from_graph(&g, r, &[])
                        .expect("tree")
                        .canonical()
                })
                .min()
                .expect("non-empty");
            if seen.insert(key) {
                out.push(g);
            }
        }
    }
    out
}

/// A connected unicyclic graph up to isomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct UnicyclicType {
    pub key: String,
    pub graph: Graph,
    pub vertices: usize,
    pub automorphisms: u64,
    /// `c^v e^{-vc} / |Aut|`.
    pub mu: ClosedForm,
}

impl UnicyclicType {
    pub fn mu_at(&self, c: f64) -> f64 {
        let v = self.vertices as f64;
        (v * (c.ln() - c)).exp() / self.automorphisms as f64
    }

    /// Mean number of components of this type under either normalization;
    /// [`UnicyclicType::mu_at`] is the labelled-embedding one.
    pub fn mu_under(&self, c: f64, convention: LambdaConvention) -> f64 {
        match convention {
            LambdaConvention::LabeledEmbedding => self.mu_at(c),
            LambdaConvention::VFactorial => {
                self.mu_at(c) / (1..=self.vertices).map(|i| i as f64).product::<f64>()
            }
        }
    }
}

fn mu_form(v: usize, aut: &BigUint) -> ClosedForm {
    let inv = BigRational::new(1.into(), aut.clone().into());
    let decay = ClosedForm::exp(ClosedForm::scale(rational(-(v as i64), 1), ClosedForm::C));
    ClosedForm::scale(inv, ClosedForm::product(ClosedForm::c_pow(v as u32), decay))
}

/// All connected unicyclic graphs on at most `k` vertices, up to
/// isomorphism, ordered by size then key.
pub fn enumerate_unicyclic_types(k: usize) -> Result<Vec<UnicyclicType>> {
    if k > MAX_TYPE_SIZE {
        return Err(Error::Capability(format!(
            "unicyclic type enumeration is limited to {MAX_TYPE_SIZE} vertices, asked for {k}"
        )));
    }
    let trees = rooted_trees_by_size(k.saturating_sub(2));
    let mut found: BTreeMap<(usize, String), CycleNeighborhood> = BTreeMap::new();
    for len in 3..=k {
        let mut seq = Vec::with_capacity(len);
        fill(&trees, len, k - len, &mut seq, &mut |s: &[RootedTree]| {
            let h = CycleNeighborhood {
                cycle_length: len,
                trees: s.to_vec(),
                radius: k,
            };
            found.entry((h.v(), h_isomorphism_key(&h))).or_insert(h);
        });
    }
    Ok(found
        .into_iter()
        .map(|((v, key), h)| {
            let aut = h.automorphism_count();
            UnicyclicType {
                key,
                graph: h.to_graph(),
                vertices: v,
                automorphisms: aut.to_u64().expect("automorphism count of a small graph"),
                mu: mu_form(v, &aut),
            }
        })
        .collect())
}

fn fill(
    trees: &[Vec<RootedTree>],
    len: usize,
    extra: usize,
    seq: &mut Vec<RootedTree>,
    emit: &mut impl FnMut(&[RootedTree]),
) {
    if seq.len() == len {
        emit(seq);
        return;
    }
    for size in 1..=extra + 1 {
        for t in &trees[size] {
            seq.push(t.clone());
            fill(trees, len, extra + 1 - size, seq, emit);
            seq.pop();
        }
    }
}

/// Counts of each type in a profile, by index into the type list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnicyclicProfile {
    pub counts: Vec<(usize, usize)>,
}

impl UnicyclicProfile {
    pub fn total(&self) -> usize {
        self.counts.iter().map(|&(_, k)| k).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileLog {
    /// `(type key, count)` pairs.
    pub components: Vec<(String, usize)>,
    pub probability: f64,
    pub truth: bool,
    /// Truth with one fewer background tree size; `None` when `s_max = 1`.
    pub truth_smaller_background: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionResult {
    pub c: f64,
    pub eps: f64,
    pub lo: f64,
    pub hi: f64,
    pub k: usize,
    pub l: usize,
    pub mrep: usize,
    pub smax: usize,
    pub mass_accounted: f64,
    /// False when some profile's truth changed between `s_max − 1` and
    /// `s_max`; such profiles count toward `hi` only and the width may then
    /// exceed `eps`.
    pub stable: bool,
    pub unstable_mass: f64,
    pub profiles: Vec<ProfileLog>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecideOptions {
    pub mrep: usize,
    pub smax: usize,
    pub check: CheckOptions,
    pub threads: Option<usize>,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            mrep: DEFAULT_MREP,
            smax: DEFAULT_SMAX,
            check: CheckOptions::default(),
            threads: None,
        }
    }
}

#[derive(PartialEq)]
struct Candidate {
    prob: f64,
    /// Non-decreasing positions into the μ-sorted type order.
    seq: Vec<usize>,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.prob
            .total_cmp(&other.prob)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Profiles of fewer than `l` components from `types`, roughly most probable
/// first, until their mass reaches `target` or they run out.
///
/// Each multiset has one parent: drop a repeated last element, otherwise
/// step the last element back one position. Children are therefore "repeat
/// the last element" and "advance the last element", so the frontier stays
/// small. Order is exact for single-component profiles; with repeats a child
/// may outweigh its parent, which only affects which profiles are visited
/// first.
pub fn enumerate_profiles(
    types: &[UnicyclicType],
    c: f64,
    l: usize,
    target: f64,
) -> Vec<(UnicyclicProfile, f64)> {
    let mus: Vec<f64> = types.iter().map(|t| t.mu_at(c)).collect();
    let mut order: Vec<usize> = (0..types.len()).collect();
    order.sort_by(|&a, &b| mus[b].total_cmp(&mus[a]).then(a.cmp(&b)));
    let mu_at = |pos: usize| mus[order[pos]];
    let tail_count = |seq: &[usize]| {
        seq.iter()
            .rev()
            .take_while(|&&p| Some(&p) == seq.last())
            .count()
    };
    let mut heap = BinaryHeap::new();
    heap.push(Candidate {
        prob: (-total_unicyclic_mean(c)).exp(),
        seq: vec![],
    });
    let mut out = Vec::new();
    let mut mass = 0.0;
    while let Some(Candidate { prob, seq }) = heap.pop() {
        mass += prob;
        match seq.last() {
            None if l > 1 && !order.is_empty() => heap.push(Candidate {
                prob: prob * mu_at(0),
                seq: vec![0],
            }),
            None => {}
            Some(&last) => {
                let m = tail_count(&seq);
                if seq.len() + 1 < l {
                    let mut s = seq.clone();
                    s.push(last);
                    heap.push(Candidate {
                        prob: prob * mu_at(last) / (m + 1) as f64,
                        seq: s,
                    });
                }
                if last + 1 < order.len() {
                    let mut s = seq.clone();
                    *s.last_mut().expect("non-empty") = last + 1;
                    heap.push(Candidate {
                        prob: prob / mu_at(last) * m as f64 * mu_at(last + 1),
                        seq: s,
                    });
                }
            }
        }
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for &p in &seq {
            match counts.last_mut() {
                Some((t, k)) if *t == order[p] => *k += 1,
                _ => counts.push((order[p], 1)),
            }
        }
        counts.sort();
        out.push((UnicyclicProfile { counts }, prob));
        if mass >= target {
            break;
        }
    }
    out
}

/// `m_rep` copies of every tree on at most `s_max` vertices.
pub fn tree_background(mrep: usize, smax: usize) -> Graph {
    let trees = free_trees(smax);
    (0..mrep).fold(Graph::empty(0), |acc, _| {
        trees.iter().fold(acc, |a, t| a.disjoint_union(t))
    })
}

fn model(types: &[UnicyclicType], p: &UnicyclicProfile, background: &Graph) -> Graph {
    p.counts.iter().fold(background.clone(), |g, &(t, k)| {
        (0..k).fold(g, |h, _| h.disjoint_union(&types[t].graph))
    })
}

/// An interval of width at most `eps` (when stable) containing the limit of
/// `Pr[G(n, c/n) ⊨ a]`, up to the representative-model approximation.
pub fn decide(a: &Sentence, c: f64, eps: f64, opts: &DecideOptions) -> Result<DecisionResult> {
    let (k, l) = choose_truncation(c, eps)?;
    if opts.smax == 0 {
        return Err(Error::Parameter("s_max must be at least 1".into()));
    }
    let types = enumerate_unicyclic_types(k)?;
    let profiles = enumerate_profiles(&types, c, l, 1.0 - eps / 2.0);
    let compiled = Compiled::new(a)?;
    let background = tree_background(opts.mrep, opts.smax);
    let smaller = (opts.smax > 1).then(|| tree_background(opts.mrep, opts.smax - 1));
    if compiled.has_set_quantifier() {
        let largest = profiles
            .iter()
            .map(|(p, _)| model(&types, p, &background).n())
            .max()
            .unwrap_or(0);
        if largest > opts.check.mso_cap {
            return Err(Error::Capability(format!(
                "representative models reach {largest} vertices, above the MSO cap {}; lower --smax or --mrep",
                opts.check.mso_cap
            )));
        }
    }
    let eval = |(p, prob): &(UnicyclicProfile, f64)| -> Result<ProfileLog> {
        let truth = compiled.eval(
            &model(&types, p, &background),
            &Default::default(),
            &opts.check,
        )?;
        let truth_smaller_background = match &smaller {
            Some(bg) => {
                Some(compiled.eval(&model(&types, p, bg), &Default::default(), &opts.check)?)
            }
            None => None,
        };
        Ok(ProfileLog {
            components: p
                .counts
                .iter()
                .map(|&(t, k)| (types[t].key.clone(), k))
                .collect(),
            probability: *prob,
            truth,
            truth_smaller_background,
        })
    };
    let logs: Vec<ProfileLog> = match opts.threads {
        Some(1) => profiles.iter().map(eval).collect::<Result<_>>()?,
        _ => profiles.par_iter().map(eval).collect::<Result<_>>()?,
    };
    let mut lo = 0.0;
    let mut unstable_mass = 0.0;
    let mut mass = 0.0;
    for p in &logs {
        mass += p.probability;
        match p.truth_smaller_background {
            Some(t) if t != p.truth => unstable_mass += p.probability,
            _ if p.truth => lo += p.probability,
            _ => {}
        }
    }
    let hi = (lo + unstable_mass + (1.0 - mass)).min(1.0);
    Ok(DecisionResult {
        c,
        eps,
        lo,
        hi,
        k,
        l,
        mrep: opts.mrep,
        smax: opts.smax,
        mass_accounted: mass,
        stable: unstable_mass == 0.0,
        unstable_mass,
        profiles: logs,
    })
}

/// Per-trial counts of unicyclic components by type key, and of trees.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentCensus {
    pub n: usize,
    pub c: f64,
    pub trials: u64,
    /// Type key to moments of its per-graph count.
    pub unicyclic: BTreeMap<String, Moments>,
    pub complex_components: u64,
}

/// Counts unicyclic components of at most `max_size` vertices by
/// isomorphism type over sampled `G(n, c/n)`.
pub fn component_census(
    n: usize,
    c: f64,
    trials: u64,
    seed: u64,
    max_size: usize,
    threads: Option<usize>,
) -> Result<ComponentCensus> {
    let per_trial = run_trials(
        seed,
        trials,
        threads,
        |i, _| -> Result<(BTreeMap<String, u64>, u64)> {
            let g = trial_graph(n, c, seed, i)?;
            let mut counts = BTreeMap::new();
            let mut complex = 0;
            for comp in components(&g) {
                match comp.kind {
                    ComponentKind::Complex => complex += 1,
                    ComponentKind::Unicyclic if comp.vertices.len() <= max_size => {
                        *counts
                            .entry(unicyclic_key(&g.induced(&comp.vertices))?)
                            .or_insert(0) += 1;
                    }
                    _ => {}
                }
            }
            Ok((counts, complex))
        },
    )?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut keys: Vec<&String> = per_trial.iter().flat_map(|(m, _)| m.keys()).collect();
    keys.sort();
    keys.dedup();
    let unicyclic = keys
        .into_iter()
        .map(|k| {
            (
                k.clone(),
                Moments::from_iter(
                    per_trial
                        .iter()
                        .map(|(m, _)| *m.get(k).unwrap_or(&0) as f64),
                ),
            )
        })
        .collect();
    Ok(ComponentCensus {
        n,
        c,
        trials,
        unicyclic,
        complex_components: per_trial.iter().map(|p| p.1).sum(),
    })
}

/// Isomorphism key of a connected unicyclic graph, matching
/// [`UnicyclicType::key`] when the graph has at most `MAX_TYPE_SIZE`
/// vertices... and in general reading trees to depth `|V|`.
pub fn unicyclic_key(g: &Graph) -> Result<String> {
    let cycle = crate::graph::simple_cycles(g, g.n())?;
    let [cycle] = cycle.as_slice() else {
        return Err(Error::Parameter("graph is not unicyclic".into()));
    };
    let b = crate::graph::ball(g, &crate::graph::BallCenter::Set(cycle.clone()), g.n())?;
    let mut h = CycleNeighborhood::from_ball(&b, cycle)?;
    h.radius = MAX_TYPE_SIZE.max(g.n());
    Ok(h_isomorphism_key(&h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::automorphism_count;
    use crate::logic::{check, parse};

    #[test]
    fn size_means_sum_to_total() {
        for c in [0.1, 0.3, 0.5] {
            let sum: f64 = (3..600).map(|v| unicyclic_mean_of_size(c, v)).sum();
            assert!((sum - total_unicyclic_mean(c)).abs() < 1e-12, "{c}");
        }
        // triangle: c^3 e^{-3c} / 6
        let c: f64 = 0.4;
        assert!((unicyclic_mean_of_size(c, 3) - c.powi(3) * (-3.0 * c).exp() / 6.0).abs() < 1e-15);
    }

    #[test]
    fn total_mean_is_cycle_sum() {
        let c: f64 = 0.5;
        let direct: f64 = (3..200).map(|i| c.powi(i) / (2.0 * i as f64)).sum();
        assert!((direct - total_unicyclic_mean(c)).abs() < 1e-14);
    }

    #[test]
    fn truncation_examples() {
        let (k, l) = choose_truncation(0.1, 0.1).unwrap();
        assert!(k <= 5 && l <= 2, "{k} {l}");
        assert_eq!(choose_truncation(0.1, 0.999).unwrap(), (3, 1));
        assert!(choose_truncation(1.0, 0.1).is_err());
        assert!(choose_truncation(0.5, 0.0).is_err());
        let (k, l) = choose_truncation(0.5, 0.02).unwrap();
        assert!(unicyclic_tail_mean(0.5, k) <= 0.005 && unicyclic_tail_mean(0.5, k - 1) > 0.005);
        assert!(poisson_tail(total_unicyclic_mean(0.5), l) <= 0.005);
        assert!(l == 1 || poisson_tail(total_unicyclic_mean(0.5), l - 1) > 0.005);
    }

    #[test]
    fn rooted_and_free_tree_counts() {
        let counts: Vec<usize> = rooted_trees_by_size(10).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![0, 1, 1, 2, 4, 9, 20, 48, 115, 286, 719]);
        let mut by_size = [0usize; 10];
        for g in free_trees(9) {
            by_size[g.n()] += 1;
        }
        assert_eq!(by_size, [0, 1, 1, 1, 2, 3, 6, 11, 23, 47]);
    }

    #[test]
    fn unicyclic_type_examples() {
        let t3 = enumerate_unicyclic_types(3).unwrap();
        assert_eq!(t3.len(), 1);
        assert_eq!(t3[0].automorphisms, 6);
        let t4 = enumerate_unicyclic_types(4).unwrap();
        let size4: Vec<&UnicyclicType> = t4.iter().filter(|t| t.vertices == 4).collect();
        assert_eq!(size4.len(), 2);
        assert_eq!(t4.len(), 3);
        let mu = t3[0].mu.evaluate(0.5).unwrap();
        assert!((mu - 0.125 * (-1.5f64).exp() / 6.0).abs() < 1e-15);
        assert!((mu - 0.0046485).abs() < 1e-7);
        assert!(enumerate_unicyclic_types(13).is_err());
    }

    /// Unlabelled counts per size, and labelled counts via `Σ v!/|Aut|`.
    #[test]
    fn unicyclic_types_match_known_counts() {
        let types = enumerate_unicyclic_types(10).unwrap();
        let mut per_size = [0usize; 11];
        let mut labelled = [0f64; 11];
        for t in &types {
            per_size[t.vertices] += 1;
            labelled[t.vertices] +=
                (1..=t.vertices).map(|i| i as f64).product::<f64>() / t.automorphisms as f64;
            assert_eq!(t.graph.n(), t.vertices);
            assert_eq!(t.graph.edge_count(), t.vertices);
        }
        assert_eq!(&per_size[3..], &[1, 2, 5, 13, 33, 89, 240, 657]);
        for (v, &count) in labelled.iter().enumerate().skip(3) {
            let u = (1..v).map(|i| i as f64).product::<f64>() / 2.0
                * (0..=v - 3)
                    .map(|j| (v as f64).powi(j as i32) / (1..=j).map(|i| i as f64).product::<f64>())
                    .sum::<f64>();
            assert!((count - u).abs() < 1e-6 * u, "{v}: {count} vs {u}");
        }
    }

    /// Brute force over all graphs on 4 and 5 vertices.
    #[test]
    fn unicyclic_types_match_brute_force() {
        for v in 4..=5usize {
            let pairs: Vec<(usize, usize)> = (0..v)
                .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
                .collect();
            let mut keys = HashSet::new();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i])
                    .collect();
                if edges.len() != v {
                    continue;
                }
                let g = Graph::from_edges(v, &edges).unwrap();
                if g.is_connected() {
                    keys.insert(unicyclic_key(&g).unwrap());
                }
            }
            let mine: HashSet<String> = enumerate_unicyclic_types(v)
                .unwrap()
                .into_iter()
                .filter(|t| t.vertices == v)
                .map(|t| t.key)
                .collect();
            assert_eq!(keys, mine, "size {v}");
        }
    }

    #[test]
    fn type_automorphisms_match_search() {
        for t in enumerate_unicyclic_types(8).unwrap() {
            assert_eq!(
                t.automorphisms,
                automorphism_count(&t.graph).unwrap(),
                "{}",
                t.key
            );
        }
    }

    #[test]
    fn profile_mass_sums_to_one_without_truncation() {
        let c = 0.05;
        let types = enumerate_unicyclic_types(6).unwrap();
        let all = enumerate_profiles(&types, c, 4, 2.0);
        let distinct: HashSet<&UnicyclicProfile> = all.iter().map(|p| &p.0).collect();
        assert_eq!(distinct.len(), all.len());
        // multisets of at most 3 out of 1 + 2 + 5 + 13 types
        assert_eq!(all.len(), 1 + 21 + 21 * 22 / 2 + 21 * 22 * 23 / 6);
        let mass: f64 = all.iter().map(|p| p.1).sum();
        // missing mass: components above 6 vertices or 4+ components
        let missing = 1.0
            - (-unicyclic_tail_mean(c, 6)).exp()
                * (1.0 - poisson_tail(total_unicyclic_mean(c) - unicyclic_tail_mean(c, 6), 4));
        assert!((mass + missing - 1.0).abs() < 1e-9, "{mass} {missing}");
        assert!(mass <= 1.0);
        let singles: Vec<f64> = enumerate_profiles(&types, 0.5, 2, 2.0)
            .iter()
            .map(|p| p.1)
            .collect();
        assert_eq!(singles.len(), 22);
        assert!(singles.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn tautology_and_contradiction() {
        let taut = parse("forall x. x = x").unwrap();
        let r = decide(&taut, 0.3, 0.05, &DecideOptions::default()).unwrap();
        assert!(r.lo >= 1.0 - 0.05 && r.hi == 1.0, "{r:?}");
        assert!(r.hi - r.lo <= 0.05 && r.stable);
        assert!(r.mass_accounted >= 0.95);
        let never = parse("exists x. !x = x").unwrap();
        let r = decide(&never, 0.3, 0.05, &DecideOptions::default()).unwrap();
        assert_eq!(r.lo, 0.0);
        assert!(r.hi <= 0.05);
    }

    #[test]
    fn triangle_existence_interval() {
        let a = parse("exists x. exists y. exists z. (x ~ y & y ~ z & x ~ z)").unwrap();
        let r = decide(&a, 0.5, 0.02, &DecideOptions::default()).unwrap();
        let f = 1.0 - (-0.125f64 / 6.0).exp();
        assert!((f - 0.02061).abs() < 1e-5);
        assert!(r.lo <= f && f <= r.hi, "{} {}", r.lo, r.hi);
        assert!(r.hi - r.lo <= 0.02 && r.stable);
    }

    #[test]
    fn negation_intervals_are_complementary() {
        let a = parse("exists x. exists y. exists z. exists w. (x ~ y & y ~ z & z ~ w & w ~ x & !x = z & !y = w)").unwrap();
        let na = Formula::not(a.clone());
        let opts = DecideOptions {
            mrep: 2,
            smax: 4,
            ..Default::default()
        };
        let ra = decide(&a, 0.4, 0.05, &opts).unwrap();
        let rn = decide(&na, 0.4, 0.05, &opts).unwrap();
        assert!(ra.lo + rn.lo <= 1.0 + 1e-12);
        assert!(ra.hi + rn.hi >= 1.0 - 1e-12);
    }

    use crate::logic::Formula;

    #[test]
    fn intervals_nest_as_eps_shrinks() {
        let a = parse("exists x. exists y. exists z. (x ~ y & y ~ z & x ~ z)").unwrap();
        let opts = DecideOptions {
            mrep: 1,
            smax: 3,
            ..Default::default()
        };
        let mut prev: Option<DecisionResult> = None;
        for eps in [0.2, 0.1, 0.05, 0.02] {
            let r = decide(&a, 0.5, eps, &opts).unwrap();
            assert!(r.hi - r.lo <= eps);
            if let Some(p) = prev {
                assert!(
                    p.lo <= r.lo + 1e-12 && r.hi <= p.hi + 1e-12,
                    "{eps}: [{}, {}] vs [{}, {}]",
                    r.lo,
                    r.hi,
                    p.lo,
                    p.hi
                );
            }
            prev = Some(r);
        }
    }

    #[test]
    fn mso_cap_is_reported() {
        let a = parse("exists S. forall x. x in S").unwrap();
        let e = decide(&a, 0.5, 0.02, &DecideOptions::default()).unwrap_err();
        assert!(e.is_capability(), "{e}");
        assert!(e.to_string().contains("smax"));
    }

    #[test]
    fn unstable_sentences_are_flagged() {
        // true iff some tree component has exactly 3 vertices
        let a = parse("exists x. exists y. exists z. (x ~ y & y ~ z & !x = z & forall w. (w ~ x -> w = y) & forall w. (w ~ z -> w = y) & forall w. (w ~ y -> w = x | w = z))").unwrap();
        let opts = DecideOptions {
            mrep: 1,
            smax: 3,
            ..Default::default()
        };
        let r = decide(&a, 0.3, 0.1, &opts).unwrap();
        assert!(!r.stable);
        assert!(r.unstable_mass > 0.0);
        let g = tree_background(1, 3);
        assert!(check(&g, &a).unwrap());
    }
}
