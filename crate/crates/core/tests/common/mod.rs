#![allow(dead_code)]

use doublejump::logic::Formula;
use doublejump::Graph;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Random sentence of quantifier rank at most `rank`, with at most
/// `set_budget` set quantifiers.
pub fn random_sentence(rng: &mut ChaCha8Rng, rank: usize, set_budget: usize) -> Formula {
    let mut counter = 0;
    gen(
        rng,
        rank,
        set_budget,
        &mut Vec::new(),
        &mut Vec::new(),
        &mut counter,
    )
}

fn gen(
    rng: &mut ChaCha8Rng,
    rank: usize,
    sets_left: usize,
    vs: &mut Vec<String>,
    ss: &mut Vec<String>,
    counter: &mut usize,
) -> Formula {
    let can_atom = !vs.is_empty();
    let choice = rng.random_range(0..10);
    if rank > 0 && (!can_atom || choice < 4) {
        let set = sets_left > 0 && rng.random_bool(0.35);
        *counter += 1;
        let reuse = rng.random_bool(0.2);
        let name = if set {
            if reuse && !ss.is_empty() {
                ss[0].clone()
            } else {
                format!("S{counter}")
            }
        } else if reuse && !vs.is_empty() {
            vs[0].clone()
        } else {
            format!("x{counter}")
        };
        let body = if set {
            ss.push(name.clone());
            let b = gen(rng, rank - 1, sets_left - 1, vs, ss, counter);
            ss.pop();
            b
        } else {
            vs.push(name.clone());
            let b = gen(rng, rank - 1, sets_left, vs, ss, counter);
            vs.pop();
            b
        };
        return if rng.random_bool(0.5) {
            Formula::forall(&name, body)
        } else {
            Formula::exists(&name, body)
        };
    }
    if !can_atom {
        // no variables in scope and no rank left: a closed, trivially true sentence
        return Formula::forall("t", Formula::eq("t", "t"));
    }
    match choice {
        4 | 5 if rank > 0 || rng.random_bool(0.5) => {
            let a = gen(rng, rank, sets_left, vs, ss, counter);
            let b = gen(rng, rank, sets_left, vs, ss, counter);
            match rng.random_range(0..3) {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                _ => Formula::implies(a, b),
            }
        }
        6 => Formula::not(gen(rng, rank, sets_left, vs, ss, counter)),
        _ => {
            let x = vs.choose(rng).unwrap().clone();
            let y = vs.choose(rng).unwrap().clone();
            match rng.random_range(0..3) {
                0 => Formula::Eq(x, y),
                1 => Formula::Adj(x, y),
                _ => match ss.choose(rng) {
                    Some(s) => Formula::In(x, s.clone()),
                    None => Formula::Adj(x, y),
                },
            }
        }
    }
}

/// Direct recursive evaluation over all vertices and all vertex subsets.
pub fn naive_eval(g: &Graph, f: &Formula) -> bool {
    fn go(
        g: &Graph,
        f: &Formula,
        vs: &mut HashMap<String, usize>,
        ss: &mut HashMap<String, Vec<bool>>,
    ) -> bool {
        match f {
            Formula::Eq(a, b) => vs[a] == vs[b],
            Formula::Adj(a, b) => g.has_edge(vs[a], vs[b]),
            Formula::In(a, s) => ss[s][vs[a]],
            Formula::Not(a) => !go(g, a, vs, ss),
            Formula::And(a, b) => go(g, a, vs, ss) && go(g, b, vs, ss),
            Formula::Or(a, b) => go(g, a, vs, ss) || go(g, b, vs, ss),
            Formula::Implies(a, b) => !go(g, a, vs, ss) || go(g, b, vs, ss),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let universal = matches!(f, Formula::Forall(..));
                let is_set = v.chars().next().unwrap().is_ascii_uppercase();
                let mut results = Vec::new();
                if is_set {
                    let old = ss.get(v).cloned();
                    for mask in 0u64..(1 << g.n()) {
                        ss.insert(v.clone(), (0..g.n()).map(|i| mask >> i & 1 == 1).collect());
                        results.push(go(g, a, vs, ss));
                    }
                    match old {
                        Some(o) => ss.insert(v.clone(), o),
                        None => ss.remove(v),
                    };
                } else {
                    let old = vs.get(v).copied();
                    for x in 0..g.n() {
                        vs.insert(v.clone(), x);
                        results.push(go(g, a, vs, ss));
                    }
                    match old {
                        Some(o) => vs.insert(v.clone(), o),
                        None => vs.remove(v),
                    };
                }
                if universal {
                    results.iter().all(|&r| r)
                } else {
                    results.iter().any(|&r| r)
                }
            }
        }
    }
    go(g, f, &mut HashMap::new(), &mut HashMap::new())
}
