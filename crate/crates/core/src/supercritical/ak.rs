//! Procedural semantics of `A_K`.
//!
//! Given the hubs, the three paths and `AR`, the relation axioms force
//! `double`, `exp`, `tower`, `wow` to be the arithmetic relations on the
//! labels `1..=|AR|` (induction from the base pair, with the stop rule and
//! downward closure ruling out anything else). So `A_K` holds iff some
//! admissible `(s0, s1, P1, P2, P3, AR)` has `wow⁻¹(|AR|)` even and each of
//! the four forced relations is realized by some vertex set.

use super::arith::wow_inv;
use super::hgraph::{realized_relation, verify_arithmetization, HGraph, Relation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub const AK_GENERIC_MAX_VERTICES: usize = 48;
pub const AK_DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AkSearchOptions {
    pub max_vertices: usize,
    /// Search steps before giving up with a capability error.
    pub budget: u64,
}

impl Default for AkSearchOptions {
    fn default() -> Self {
        AkSearchOptions {
            max_vertices: AK_GENERIC_MAX_VERTICES,
            budget: AK_DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AkWitness {
    pub s0: usize,
    pub s1: usize,
    pub paths: [Vec<usize>; 3],
    pub ar: Vec<usize>,
    /// A realizing vertex set per relation.
    pub relation_sets: BTreeMap<Relation, Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AkScope {
    /// Only the stored hubs, paths and AR of an `HGraph` were considered.
    Planted,
    /// Every admissible configuration was searched.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AkOutcome {
    pub holds: bool,
    pub scope: AkScope,
    pub witness: Option<AkWitness>,
    pub steps: u64,
}

struct Budget {
    left: u64,
    used: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::Capability(format!(
                "A_K search budget of {} steps exhausted",
                self.used
            )));
        }
        self.left -= 1;
        self.used += 1;
        Ok(())
    }
}

fn parity_admits(m: usize) -> bool {
    m >= 2 && wow_inv(m as u64).is_ok_and(|x| x % 2 == 0)
}

/// Induced paths from `s0` to `s1` (vertex lists including both ends).
fn induced_paths(g: &Graph, s0: usize, s1: usize, budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
    fn go(
        g: &Graph,
        s1: usize,
        p: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick()?;
        let last = *p.last().expect("non-empty");
        if g.has_edge(last, s1) {
            // the path must end here: any longer one would have a chord to s1
            if p.len() == 1 || p[..p.len() - 1].iter().all(|&u| !g.has_edge(u, s1)) {
                let mut q = p.clone();
                q.push(s1);
                out.push(q);
            }
            return Ok(());
        }
        for &v in g.neighbors(last) {
            if on[v] || v == s1 || g.neighbors(v).iter().any(|&u| on[u] && u != last) {
                continue;
            }
            on[v] = true;
            p.push(v);
            go(g, s1, p, on, out, budget)?;
            p.pop();
            on[v] = false;
        }
        Ok(())
    }
    let mut on = vec![false; g.n()];
    on[s0] = true;
    let mut out = Vec::new();
    go(g, s1, &mut vec![s0], &mut on, &mut out, budget)?;
    Ok(out)
}

fn compatible(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    let ia = &a[1..a.len() - 1];
    let ib: BTreeSet<usize> = b[1..b.len() - 1].iter().copied().collect();
    ia.iter()
        .all(|u| !ib.contains(u) && g.neighbors(*u).iter().all(|v| !ib.contains(v)))
}

/// AR subsets of one path's interior meeting every `K` consecutive interior
/// vertices exactly once, as interior position lists (1-based).
fn ar_choices(m: usize, k: usize) -> Vec<Vec<usize>> {
    if m < k {
        (0u64..1 << m)
            .map(|mask| (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect())
            .collect()
    } else {
        (1..=k).map(|p| (p..=m).step_by(k).collect()).collect()
    }
}

/// Searches for `R ⊆ V` whose realized relation is exactly `target`
/// (pairs of AR vertices, smaller label first).
fn realize(
    g: &Graph,
    is_ar: &[bool],
    target: &BTreeSet<(usize, usize)>,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let mut ends = vec![false; n];
    for &(a, b) in target {
        ends[a] = true;
        ends[b] = true;
    }
    let allowed = |a: usize, b: usize| target.contains(&(a, b)) || target.contains(&(b, a));
    for u in 0..n {
        if ends[u] && g.neighbors(u).iter().any(|&v| ends[v] && !allowed(u, v)) {
            return Ok(None);
        }
    }
    let pairs: Vec<(usize, usize)> = target.iter().copied().collect();
    let mut inside = vec![false; n];

    // components of the chosen non-AR vertices may only touch related ends
    let valid = |inside: &[bool]| -> bool {
        let mut seen = vec![false; n];
        for s in 0..n {
            if !inside[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut touched = Vec::new();
            while let Some(u) = stack.pop() {
                for &v in g.neighbors(u) {
                    if ends[v] {
                        touched.push(v);
                    } else if inside[v] && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for i in 0..touched.len() {
                for j in i + 1..touched.len() {
                    if !allowed(touched[i], touched[j]) {
                        return false;
                    }
                }
            }
        }
        true
    };
    let joined = |inside: &[bool], a: usize, b: usize| -> bool {
        g.has_edge(a, b)
            || g.neighbors(a).iter().any(|&u| {
                inside[u] && {
                    let mut seen = vec![false; n];
                    let mut q = VecDeque::from([u]);
                    seen[u] = true;
                    let mut hit = false;
                    while let Some(x) = q.pop_front() {
                        if g.has_edge(x, b) {
                            hit = true;
                            break;
                        }
                        for &y in g.neighbors(x) {
                            if inside[y] && !seen[y] {
                                seen[y] = true;
                                q.push_back(y);
                            }
                        }
                    }
                    hit
                }
            })
    };

    #[allow(clippy::too_many_arguments)]
    fn pair_step(
        g: &Graph,
        is_ar: &[bool],
        pairs: &[(usize, usize)],
        k: usize,
        inside: &mut Vec<bool>,
        budget: &mut Budget,
        valid: &dyn Fn(&[bool]) -> bool,
        joined: &dyn Fn(&[bool], usize, usize) -> bool,
    ) -> Result<bool> {
        if k == pairs.len() {
            return Ok(true);
        }
        let (a, b) = pairs[k];
        if joined(inside, a, b) {
            return pair_step(g, is_ar, pairs, k + 1, inside, budget, valid, joined);
        }
        // distances to b through non-AR vertices order the search
        let mut dist = vec![usize::MAX; g.n()];
        let mut q = VecDeque::new();
        for &u in g.neighbors(b) {
            if !is_ar[u] {
                dist[u] = 1;
                q.push_back(u);
            }
        }
        while let Some(u) = q.pop_front() {
            for &v in g.neighbors(u) {
                if !is_ar[v] && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        let mut on = vec![false; g.n()];
        #[allow(clippy::too_many_arguments)]
        fn walk(
            g: &Graph,
            is_ar: &[bool],
            pairs: &[(usize, usize)],
            k: usize,
            u: usize,
            dist: &[usize],
            on: &mut [bool],
            inside: &mut Vec<bool>,
            budget: &mut Budget,
            valid: &dyn Fn(&[bool]) -> bool,
            joined: &dyn Fn(&[bool], usize, usize) -> bool,
        ) -> Result<bool> {
            budget.tick()?;
            let b = pairs[k].1;
            if g.has_edge(u, b) && !is_ar[u] {
                let before = inside.clone();
                for v in 0..g.n() {
                    inside[v] |= on[v];
                }
                if valid(inside)
                    && pair_step(g, is_ar, pairs, k + 1, inside, budget, valid, joined)?
                {
                    return Ok(true);
                }
                *inside = before;
            }
            let mut next: Vec<usize> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&v| !is_ar[v] && !on[v] && dist[v] != usize::MAX)
                .collect();
            next.sort_by_key(|&v| dist[v]);
            for v in next {
                on[v] = true;
                if walk(
                    g, is_ar, pairs, k, v, dist, on, inside, budget, valid, joined,
                )? {
                    return Ok(true);
                }
                on[v] = false;
            }
            Ok(false)
        }
        for &u in g.neighbors(a) {
            if is_ar[u] || dist[u] == usize::MAX {
                continue;
            }
            on[u] = true;
            if walk(
                g, is_ar, pairs, k, u, &dist, &mut on, inside, budget, valid, joined,
            )? {
                return Ok(true);
            }
            on[u] = false;
        }
        Ok(false)
    }

    if pair_step(g, is_ar, &pairs, 0, &mut inside, budget, &valid, &joined)? {
        let mut set: Vec<usize> = (0..n).filter(|&u| inside[u] || ends[u]).collect();
        set.sort_unstable();
        Ok(Some(set))
    } else {
        Ok(None)
    }
}

/// Relation sets realizing all four forced relations for the given labelled
/// AR, if they exist.
fn realize_all(
    g: &Graph,
    ar: &[usize],
    budget: &mut Budget,
) -> Result<Option<BTreeMap<Relation, Vec<usize>>>> {
    let mut is_ar = vec![false; g.n()];
    ar.iter().for_each(|&v| is_ar[v] = true);
    let w1 = ar.len() as u64;
    let mut sets = BTreeMap::new();
    for rel in Relation::ALL {
        let target: BTreeSet<(usize, usize)> = rel
            .pairs(w1)
            .into_iter()
            .map(|(i, j)| (ar[i as usize - 1], ar[j as usize - 1]))
            .collect();
        match realize(g, &is_ar, &target, budget)? {
            Some(s) => {
                sets.insert(rel, s);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(sets))
}

/// Exhaustive evaluation of `A_K` on a small graph.
pub fn eval_ak_semantic(g: &Graph, big_k: usize, opts: &AkSearchOptions) -> Result<AkOutcome> {
    if big_k == 0 {
        return Err(Error::Parameter("K must be positive".into()));
    }
    if g.n() > opts.max_vertices {
        return Err(Error::Capability(format!(
            "exhaustive A_K evaluation is limited to {} vertices, graph has {}",
            opts.max_vertices,
            g.n()
        )));
    }
    let mut budget = Budget {
        left: opts.budget,
        used: 0,
    };
    let done = |holds, witness, budget: &Budget| AkOutcome {
        holds,
        scope: AkScope::Exhaustive,
        witness,
        steps: budget.used,
    };
    for s0 in 0..g.n() {
        if g.degree(s0) < 3 {
            continue;
        }
        for s1 in 0..g.n() {
            if s1 == s0 || g.degree(s1) < 3 {
                continue;
            }
            let paths = induced_paths(g, s0, s1, &mut budget)?;
            for a in 0..paths.len() {
                for b in 0..paths.len() {
                    if b == a || !compatible(g, &paths[a], &paths[b]) {
                        continue;
                    }
                    for c in 0..paths.len() {
                        if c == a
                            || c == b
                            || !compatible(g, &paths[a], &paths[c])
                            || !compatible(g, &paths[b], &paths[c])
                        {
                            continue;
                        }
                        let ps = [&paths[a], &paths[b], &paths[c]];
                        let choices: Vec<Vec<Vec<usize>>> =
                            ps.iter().map(|p| ar_choices(p.len() - 2, big_k)).collect();
                        for c0 in &choices[0] {
                            for c1 in &choices[1] {
                                for c2 in &choices[2] {
                                    budget.tick()?;
                                    if !parity_admits(c0.len() + c1.len() + c2.len()) {
                                        continue;
                                    }
                                    let ar: Vec<usize> = [c0, c1, c2]
                                        .iter()
                                        .zip(ps)
                                        .flat_map(|(cs, p)| cs.iter().map(move |&i| p[i]))
                                        .collect();
                                    if let Some(relation_sets) = realize_all(g, &ar, &mut budget)? {
                                        let witness = AkWitness {
                                            s0,
                                            s1,
                                            paths: ps.map(|p| p.clone()),
                                            ar,
                                            relation_sets,
                                        };
                                        return Ok(done(true, Some(witness), &budget));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(done(false, None, &budget))
}

/// `A_K` read through the stored hubs, paths and AR of `h`.
///
/// The stored pair paths are tried first as relation sets; if they do not
/// realize a forced relation, other sets are searched within `budget`.
pub fn eval_ak_semantic_h(h: &HGraph, budget: u64) -> Result<AkOutcome> {
    let m = &h.meta;
    let report = verify_arithmetization(h);
    let structural = ["hubs", "ar_positions", "order"];
    let structure_ok = report
        .checks
        .iter()
        .filter(|c| structural.contains(&c.name.as_str()))
        .all(|c| c.pass);
    let mut budget = Budget {
        left: budget,
        used: 0,
    };
    if !structure_ok || !parity_admits(m.ar.len()) {
        return Ok(AkOutcome {
            holds: false,
            scope: AkScope::Planted,
            witness: None,
            steps: 0,
        });
    }
    let labels = h.labels();
    let mut sets = BTreeMap::new();
    for rel in Relation::ALL {
        let mut set = vec![false; h.graph.n()];
        for p in m.pair_paths.iter().filter(|p| p.relation == rel) {
            p.vertices.iter().for_each(|&u| set[u] = true);
        }
        if realized_relation(&h.graph, &labels, &set) == rel.pairs(m.w1) {
            sets.insert(rel, (0..h.graph.n()).filter(|&u| set[u]).collect());
        }
    }
    if sets.len() < Relation::ALL.len() {
        match realize_all(&h.graph, &m.ar, &mut budget)? {
            Some(s) => sets = s,
            None => {
                return Ok(AkOutcome {
                    holds: false,
                    scope: AkScope::Planted,
                    witness: None,
                    steps: budget.used,
                })
            }
        }
    }
    let witness = AkWitness {
        s0: m.s0,
        s1: m.s1,
        paths: m.paths.clone(),
        ar: m.ar.clone(),
        relation_sets: sets,
    };
    Ok(AkOutcome {
        holds: true,
        scope: AkScope::Planted,
        witness: Some(witness),
        steps: budget.used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercritical::hgraph::build_h_by_w1;

    #[test]
    fn ar_choice_counts() {
        assert_eq!(ar_choices(5, 2), vec![vec![1, 3, 5], vec![2, 4]]);
        assert_eq!(ar_choices(3, 3), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(ar_choices(2, 3).len(), 4);
    }

    #[test]
    fn planted_parity() {
        for k in [2, 3, 5, 10] {
            for w1 in 3..=12u64 {
                let h = build_h_by_w1(k, w1).unwrap();
                let even = wow_inv(w1).unwrap() % 2 == 0;
                let out = eval_ak_semantic_h(&h, 1000).unwrap();
                assert_eq!(out.holds, even, "K={k} w1={w1}");
                assert_eq!(out.steps, 0, "stored sets realize the relations");
            }
        }
    }

    #[test]
    fn forests_and_cycles_fail() {
        let opts = AkSearchOptions::default();
        assert!(!eval_ak_semantic(&Graph::path(10), 2, &opts).unwrap().holds);
        assert!(!eval_ak_semantic(&Graph::star(6), 2, &opts).unwrap().holds);
        assert!(!eval_ak_semantic(&Graph::cycle(12), 2, &opts).unwrap().holds);
        assert!(eval_ak_semantic(&Graph::empty(60), 2, &opts)
            .unwrap_err()
            .is_capability());
    }

    #[test]
    fn realized_sets_are_checked() {
        let h = build_h_by_w1(2, 4).unwrap();
        let out = eval_ak_semantic_h(&h, 1000).unwrap();
        let w = out.witness.unwrap();
        let labels = h.labels();
        for (rel, set) in &w.relation_sets {
            let mut mask = vec![false; h.graph.n()];
            set.iter().for_each(|&u| mask[u] = true);
            assert_eq!(realized_relation(&h.graph, &labels, &mask), rel.pairs(4));
        }
    }

    #[test]
    fn search_recovers_relations_without_stored_paths() {
        // drop the stored sets: a search from scratch must still realize them
        let h = build_h_by_w1(2, 4).unwrap();
        let mut b = Budget {
            left: 1_000_000,
            used: 0,
        };
        let sets = realize_all(&h.graph, &h.meta.ar, &mut b).unwrap().unwrap();
        let labels = h.labels();
        for (rel, set) in &sets {
            let mut mask = vec![false; h.graph.n()];
            set.iter().for_each(|&u| mask[u] = true);
            assert_eq!(
                realized_relation(&h.graph, &labels, &mask),
                rel.pairs(4),
                "{rel}"
            );
        }
    }

    #[test]
    fn odd_parity_without_alternative_ar_fails() {
        // K = 1 forces AR to be every interior vertex, so |AR| = 3 is the only option
        let h = build_h_by_w1(1, 3).unwrap();
        let out = eval_ak_semantic(&h.graph, 1, &AkSearchOptions::default()).unwrap();
        assert!(!out.holds);
        assert_eq!(out.scope, AkScope::Exhaustive);
    }

    #[test]
    fn shifted_windows_give_a_larger_ar() {
        // at K = 2 a shifted residue class puts 2 AR points on a length-4 path
        let h = build_h_by_w1(2, 3).unwrap();
        let out = eval_ak_semantic(&h.graph, 2, &AkSearchOptions::default()).unwrap();
        let w = out.witness.unwrap();
        assert!(out.holds && w.ar.len() > 3);
        assert_eq!(wow_inv(w.ar.len() as u64).unwrap() % 2, 0);
    }
}
