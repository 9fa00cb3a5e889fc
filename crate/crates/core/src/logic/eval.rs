//! Brute-force model checking.
//!
//! A formula is lowered to negation normal form over numbered variable slots
//! and then rewritten bottom-up:
//!
//! * quantifiers are pushed inward past conjuncts (for `exists`) or disjuncts
//!   (for `forall`) that do not mention the bound variable, and distributed over
//!   `|` (resp. `&`);
//! * a vertex quantifier with a conjunct `x ~ u`, `x = u` or `x in S` ranges over
//!   the neighbours of `u`, over `{u}` or over `S` only (dually for `forall`);
//! * `forall v. (v in A -> v in B)` becomes a native subset test and
//!   `forall v. (!v in A | !v in B)` a disjointness test;
//! * a set quantifier with a subset conjunct `S ⊆ R` enumerates submasks of `R`.
//!
//! Sets are `u64` masks, enumerated in Gray-code order. Sentences with set
//! quantifiers memoize every compound quantifier node on the values of its free
//! variables.

use super::ast::{is_set_name, Formula};
use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{BuildHasherDefault, Hasher};

/// Default vertex bound for sentences with set quantifiers.
pub const DEFAULT_MSO_CAP: usize = 18;
const MEMO_LIMIT: usize = 1 << 23;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub mso_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mso_cap: DEFAULT_MSO_CAP,
        }
    }
}

/// Values for the free variables of a formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub vertices: BTreeMap<String, usize>,
    pub sets: BTreeMap<String, BTreeSet<usize>>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str, v: usize) -> Self {
        self.vertices.insert(name.to_string(), v);
        self
    }

    pub fn set(mut self, name: &str, members: impl IntoIterator<Item = usize>) -> Self {
        self.sets
            .insert(name.to_string(), members.into_iter().collect());
        self
    }
}

/// Checks a closed sentence with default options.
pub fn check(g: &Graph, s: &Formula) -> Result<bool> {
    Compiled::new(s)?.eval(g, &Assignment::new(), &CheckOptions::default())
}

/// Checks a formula under an assignment of its free variables.
pub fn check_with(g: &Graph, f: &Formula, asg: &Assignment, opts: &CheckOptions) -> Result<bool> {
    Compiled::new(f)?.eval(g, asg, opts)
}

type Slot = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Atom {
    Eq(Slot, Slot),
    Adj(Slot, Slot),
    In(Slot, Slot),
    Subset(Slot, Slot),
    Disjoint(Slot, Slot),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    V(Slot),
    S(Slot),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Guard {
    All,
    Neighbors(Slot),
    Equal(Slot),
    Members(Slot),
    SubsetOf(Slot),
    SupersetOf(Slot),
}

#[derive(Clone, Debug)]
enum Node {
    Lit(bool, Atom),
    And(Vec<Node>),
    Or(Vec<Node>),
    Quant(Box<Quant>),
}

#[derive(Clone, Debug)]
struct Quant {
    exists: bool,
    var: Var,
    guard: Guard,
    body: Node,
    memo: Option<u32>,
    key_v: Vec<Slot>,
    key_s: Vec<Slot>,
}

/// A formula lowered to the evaluation form; reusable across graphs.
#[derive(Clone, Debug)]
pub struct Compiled {
    root: Node,
    vertex_slots: usize,
    set_slots: usize,
    free_vertices: Vec<(String, Slot)>,
    free_sets: Vec<(String, Slot)>,
    has_set_quantifier: bool,
}

struct Lowering {
    scope: Vec<(String, Var)>,
    vertex_slots: usize,
    set_slots: usize,
}

impl Lowering {
    fn lookup(&self, name: &str, want_set: bool) -> Result<Slot> {
        if is_set_name(name) != want_set {
            let kind = if want_set { "set" } else { "vertex" };
            return Err(Error::Type(format!(
                "`{name}` used where a {kind} variable is required"
            )));
        }
        match self.scope.iter().rev().find(|(n, _)| n == name) {
            Some((_, Var::V(s))) | Some((_, Var::S(s))) => Ok(*s),
            None => Err(Error::Unbound {
                name: name.to_string(),
                line: 0,
                col: 0,
            }),
        }
    }

    fn fresh(&mut self, name: &str) -> Var {
        if is_set_name(name) {
            self.set_slots += 1;
            Var::S((self.set_slots - 1) as Slot)
        } else {
            self.vertex_slots += 1;
            Var::V((self.vertex_slots - 1) as Slot)
        }
    }

    fn lower(&mut self, f: &Formula, neg: bool) -> Result<Node> {
        Ok(match f {
            Formula::Eq(a, b) => Node::Lit(
                !neg,
                Atom::Eq(self.lookup(a, false)?, self.lookup(b, false)?),
            ),
            Formula::Adj(a, b) => Node::Lit(
                !neg,
                Atom::Adj(self.lookup(a, false)?, self.lookup(b, false)?),
            ),
            Formula::In(a, b) => Node::Lit(
                !neg,
                Atom::In(self.lookup(a, false)?, self.lookup(b, true)?),
            ),
            Formula::Not(a) => self.lower(a, !neg)?,
            Formula::And(a, b) => {
                let parts = vec![self.lower(a, neg)?, self.lower(b, neg)?];
                if neg {
                    mk_or(parts)
                } else {
                    mk_and(parts)
                }
            }
            Formula::Or(a, b) => {
                let parts = vec![self.lower(a, neg)?, self.lower(b, neg)?];
                if neg {
                    mk_and(parts)
                } else {
                    mk_or(parts)
                }
            }
            Formula::Implies(a, b) => {
                let parts = vec![self.lower(a, !neg)?, self.lower(b, neg)?];
                if neg {
                    mk_and(parts)
                } else {
                    mk_or(parts)
                }
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let exists = matches!(f, Formula::Exists(..)) != neg;
                let var = self.fresh(v);
                self.scope.push((v.clone(), var));
                let body = self.lower(a, neg);
                self.scope.pop();
                Node::Quant(Box::new(Quant {
                    exists,
                    var,
                    guard: Guard::All,
                    body: body?,
                    memo: None,
                    key_v: Vec::new(),
                    key_s: Vec::new(),
                }))
            }
        })
    }
}

fn mk_and(parts: Vec<Node>) -> Node {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Node::And(ch) => out.extend(ch),
            other => out.push(other),
        }
    }
    if out.len() == 1 {
        out.pop().expect("one part")
    } else {
        Node::And(out)
    }
}

fn mk_or(parts: Vec<Node>) -> Node {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Node::Or(ch) => out.extend(ch),
            other => out.push(other),
        }
    }
    if out.len() == 1 {
        out.pop().expect("one part")
    } else {
        Node::Or(out)
    }
}

fn atom_mentions(a: &Atom, var: Var) -> bool {
    match (a, var) {
        (Atom::Eq(x, y) | Atom::Adj(x, y), Var::V(s)) => *x == s || *y == s,
        (Atom::In(x, _), Var::V(s)) => *x == s,
        (Atom::In(_, t), Var::S(s)) => *t == s,
        (Atom::Subset(a, b) | Atom::Disjoint(a, b), Var::S(s)) => *a == s || *b == s,
        _ => false,
    }
}

fn mentions(node: &Node, var: Var) -> bool {
    match node {
        Node::Lit(_, a) => atom_mentions(a, var),
        Node::And(ch) | Node::Or(ch) => ch.iter().any(|c| mentions(c, var)),
        Node::Quant(q) => {
            let g = match (q.guard, var) {
                (Guard::Neighbors(u) | Guard::Equal(u), Var::V(s)) => u == s,
                (Guard::Members(t) | Guard::SubsetOf(t) | Guard::SupersetOf(t), Var::S(s)) => {
                    t == s
                }
                _ => false,
            };
            g || mentions(&q.body, var)
        }
    }
}

fn optimize(node: Node) -> Node {
    match node {
        Node::Lit(..) => node,
        Node::And(ch) => mk_and(ch.into_iter().map(optimize).collect()),
        Node::Or(ch) => mk_or(ch.into_iter().map(optimize).collect()),
        Node::Quant(q) => {
            let Quant {
                exists, var, body, ..
            } = *q;
            match optimize(body) {
                Node::Or(ch) if exists => mk_or(
                    ch.into_iter()
                        .map(|c| scope_quantifier(true, var, c))
                        .collect(),
                ),
                Node::And(ch) if !exists => mk_and(
                    ch.into_iter()
                        .map(|c| scope_quantifier(false, var, c))
                        .collect(),
                ),
                body => scope_quantifier(exists, var, body),
            }
        }
    }
}

/// Builds `Q var. body` for an already optimized body.
fn scope_quantifier(exists: bool, var: Var, body: Node) -> Node {
    let parts = match (body, exists) {
        (Node::And(ch), true) | (Node::Or(ch), false) => ch,
        (other, _) => vec![other],
    };
    let (dep, indep): (Vec<Node>, Vec<Node>) = parts.into_iter().partition(|p| mentions(p, var));
    let inner = match set_pattern(exists, var, &dep) {
        Some(lit) => lit,
        None => {
            let guard = find_guard(exists, var, &dep);
            let body = if exists { mk_and(dep) } else { mk_or(dep) };
            Node::Quant(Box::new(Quant {
                exists,
                var,
                guard,
                body,
                memo: None,
                key_v: Vec::new(),
                key_s: Vec::new(),
            }))
        }
    };
    let mut all = indep;
    all.push(inner);
    if exists {
        mk_and(all)
    } else {
        mk_or(all)
    }
}

/// Recognizes subset and disjointness tests written with a vertex quantifier.
fn set_pattern(exists: bool, var: Var, dep: &[Node]) -> Option<Node> {
    let Var::V(v) = var else { return None };
    let [Node::Lit(p1, Atom::In(x1, a)), Node::Lit(p2, Atom::In(x2, b))] = dep else {
        return None;
    };
    if *x1 != v || *x2 != v || a == b {
        return None;
    }
    // forall: the literals are disjuncts; exists: conjuncts
    let (p1, p2) = if exists { (!*p1, !*p2) } else { (*p1, *p2) };
    let atom = match (p1, p2) {
        (false, true) => Atom::Subset(*a, *b),
        (true, false) => Atom::Subset(*b, *a),
        (false, false) => Atom::Disjoint(*a, *b),
        (true, true) => return None,
    };
    Some(Node::Lit(!exists, atom))
}

fn find_guard(exists: bool, var: Var, dep: &[Node]) -> Guard {
    let lits = || {
        dep.iter().filter_map(move |n| match n {
            Node::Lit(p, a) if *p == exists => Some(*a),
            _ => None,
        })
    };
    match var {
        Var::V(x) => {
            let other = |a: Slot, b: Slot| {
                if a == x && b != x {
                    Some(b)
                } else if b == x && a != x {
                    Some(a)
                } else {
                    None
                }
            };
            if let Some(u) = lits().find_map(|a| {
                if let Atom::Eq(p, q) = a {
                    other(p, q)
                } else {
                    None
                }
            }) {
                return Guard::Equal(u);
            }
            if let Some(u) = lits().find_map(|a| {
                if let Atom::Adj(p, q) = a {
                    other(p, q)
                } else {
                    None
                }
            }) {
                return Guard::Neighbors(u);
            }
            if let Some(s) = lits().find_map(|a| match a {
                Atom::In(p, s) if p == x => Some(s),
                _ => None,
            }) {
                return Guard::Members(s);
            }
            Guard::All
        }
        Var::S(s) => {
            if let Some(r) = lits().find_map(|a| match a {
                Atom::Subset(p, r) if p == s && r != s => Some(r),
                _ => None,
            }) {
                return Guard::SubsetOf(r);
            }
            if let Some(r) = lits().find_map(|a| match a {
                Atom::Subset(r, p) if p == s && r != s => Some(r),
                _ => None,
            }) {
                return Guard::SupersetOf(r);
            }
            Guard::All
        }
    }
}

/// Assigns memo ids and keys; returns the free variables of `node`.
fn annotate(node: &mut Node, next_id: &mut u32, memoize: bool) -> (BTreeSet<Slot>, BTreeSet<Slot>) {
    match node {
        Node::Lit(_, a) => {
            let (mut v, mut s) = (BTreeSet::new(), BTreeSet::new());
            match *a {
                Atom::Eq(x, y) | Atom::Adj(x, y) => {
                    v.insert(x);
                    v.insert(y);
                }
                Atom::In(x, t) => {
                    v.insert(x);
                    s.insert(t);
                }
                Atom::Subset(a, b) | Atom::Disjoint(a, b) => {
                    s.insert(a);
                    s.insert(b);
                }
            }
            (v, s)
        }
        Node::And(ch) | Node::Or(ch) => {
            let (mut v, mut s) = (BTreeSet::new(), BTreeSet::new());
            for c in ch {
                let (cv, cs) = annotate(c, next_id, memoize);
                v.extend(cv);
                s.extend(cs);
            }
            (v, s)
        }
        Node::Quant(q) => {
            let (mut v, mut s) = annotate(&mut q.body, next_id, memoize);
            match q.guard {
                Guard::Neighbors(u) | Guard::Equal(u) => {
                    v.insert(u);
                }
                Guard::Members(t) | Guard::SubsetOf(t) | Guard::SupersetOf(t) => {
                    s.insert(t);
                }
                Guard::All => {}
            }
            match q.var {
                Var::V(x) => {
                    v.remove(&x);
                }
                Var::S(x) => {
                    s.remove(&x);
                }
            }
            if memoize && contains_quantifier(&q.body) {
                q.memo = Some(*next_id);
                *next_id += 1;
                q.key_v = v.iter().copied().collect();
                q.key_s = s.iter().copied().collect();
            }
            (v, s)
        }
    }
}

fn contains_quantifier(node: &Node) -> bool {
    match node {
        Node::Lit(..) => false,
        Node::And(ch) | Node::Or(ch) => ch.iter().any(contains_quantifier),
        Node::Quant(_) => true,
    }
}

impl Compiled {
    /// Lowers `f`; its free variables become inputs supplied at evaluation.
    pub fn new(f: &Formula) -> Result<Self> {
        let mut low = Lowering {
            scope: Vec::new(),
            vertex_slots: 0,
            set_slots: 0,
        };
        let mut free_vertices = Vec::new();
        let mut free_sets = Vec::new();
        for name in f.free_vars() {
            let var = low.fresh(&name);
            match var {
                Var::V(s) => free_vertices.push((name.clone(), s)),
                Var::S(s) => free_sets.push((name.clone(), s)),
            }
            low.scope.push((name, var));
        }
        let lowered = low.lower(f, false)?;
        let has_set_quantifier = f.has_set_quantifier();
        let mut root = optimize(lowered);
        annotate(&mut root, &mut 0, has_set_quantifier);
        Ok(Compiled {
            root,
            vertex_slots: low.vertex_slots,
            set_slots: low.set_slots,
            free_vertices,
            free_sets,
            has_set_quantifier,
        })
    }

    pub fn has_set_quantifier(&self) -> bool {
        self.has_set_quantifier
    }

    pub fn eval(&self, g: &Graph, asg: &Assignment, opts: &CheckOptions) -> Result<bool> {
        let n = g.n();
        if self.has_set_quantifier && n > opts.mso_cap.min(64) {
            return Err(Error::Capability(format!(
                "set quantification over {n} vertices exceeds the brute-force cap of {}",
                opts.mso_cap.min(64)
            )));
        }
        if self.set_slots > 0 && n > 64 {
            return Err(Error::Capability(format!(
                "set variables need at most 64 vertices, got {n}"
            )));
        }
        let mut vs = vec![0usize; self.vertex_slots];
        let mut ss = vec![0u64; self.set_slots];
        for (name, slot) in &self.free_vertices {
            let v = *asg.vertices.get(name).ok_or_else(|| Error::Unbound {
                name: name.clone(),
                line: 0,
                col: 0,
            })?;
            if v >= n {
                return Err(Error::Parameter(format!("`{name}` = {v} is not a vertex")));
            }
            vs[*slot as usize] = v;
        }
        for (name, slot) in &self.free_sets {
            let members = asg.sets.get(name).ok_or_else(|| Error::Unbound {
                name: name.clone(),
                line: 0,
                col: 0,
            })?;
            let mut mask = 0u64;
            for &v in members {
                if v >= n {
                    return Err(Error::Parameter(format!(
                        "`{name}` contains non-vertex {v}"
                    )));
                }
                mask |= 1 << v;
            }
            ss[*slot as usize] = mask;
        }
        let adj = (n <= 64).then(|| {
            (0..n)
                .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
                .collect::<Vec<u64>>()
        });
        let full = if n == 64 {
            u64::MAX
        } else {
            (1u64 << n.min(63)) - 1
        };
        let mut ctx = Ctx {
            g,
            adj,
            full,
            vs,
            ss,
            memo: HashMap::default(),
        };
        Ok(ctx.eval(&self.root))
    }
}

#[derive(Default)]
struct FxHasher(u64);

impl Hasher for FxHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }
    fn write_u64(&mut self, i: u64) {
        self.0 = (self.0.rotate_left(5) ^ i).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }
    fn write_u32(&mut self, i: u32) {
        self.write_u64(i as u64);
    }
    fn write_usize(&mut self, i: usize) {
        self.write_u64(i as u64);
    }
}

type Memo = HashMap<(u32, Vec<u64>), bool, BuildHasherDefault<FxHasher>>;

struct Ctx<'a> {
    g: &'a Graph,
    adj: Option<Vec<u64>>,
    full: u64,
    vs: Vec<usize>,
    ss: Vec<u64>,
    memo: Memo,
}

impl Ctx<'_> {
    fn atom(&self, a: &Atom) -> bool {
        match *a {
            Atom::Eq(x, y) => self.vs[x as usize] == self.vs[y as usize],
            Atom::Adj(x, y) => {
                let (u, v) = (self.vs[x as usize], self.vs[y as usize]);
                match &self.adj {
                    Some(m) => m[u] >> v & 1 == 1,
                    None => self.g.has_edge(u, v),
                }
            }
            Atom::In(x, s) => self.ss[s as usize] >> self.vs[x as usize] & 1 == 1,
            Atom::Subset(a, b) => self.ss[a as usize] & !self.ss[b as usize] == 0,
            Atom::Disjoint(a, b) => self.ss[a as usize] & self.ss[b as usize] == 0,
        }
    }

    fn eval(&mut self, node: &Node) -> bool {
        match node {
            Node::Lit(p, a) => self.atom(a) == *p,
            Node::And(ch) => ch.iter().all(|c| self.eval(c)),
            Node::Or(ch) => ch.iter().any(|c| self.eval(c)),
            Node::Quant(q) => match q.memo {
                None => self.quantify(q),
                Some(id) => {
                    let mut key = Vec::with_capacity(q.key_v.len() + q.key_s.len());
                    key.extend(q.key_v.iter().map(|&s| self.vs[s as usize] as u64));
                    key.extend(q.key_s.iter().map(|&s| self.ss[s as usize]));
                    if let Some(&r) = self.memo.get(&(id, key.clone())) {
                        return r;
                    }
                    let r = self.quantify(q);
                    if self.memo.len() >= MEMO_LIMIT {
                        self.memo.clear();
                    }
                    self.memo.insert((id, key), r);
                    r
                }
            },
        }
    }

    /// Short-circuits on the first witness (`exists`) or counterexample (`forall`).
    fn quantify(&mut self, q: &Quant) -> bool {
        let want = q.exists;
        match q.var {
            Var::V(slot) => {
                let slot = slot as usize;
                let hit = |ctx: &mut Self, v: usize| {
                    ctx.vs[slot] = v;
                    ctx.eval(&q.body) == want
                };
                let found = match q.guard {
                    Guard::Equal(u) => {
                        let v = self.vs[u as usize];
                        hit(self, v)
                    }
                    Guard::Neighbors(u) => {
                        let g = self.g;
                        let v = self.vs[u as usize];
                        g.neighbors(v).iter().any(|&w| hit(self, w))
                    }
                    Guard::Members(s) => {
                        let mut mask = self.ss[s as usize];
                        let mut found = false;
                        while mask != 0 && !found {
                            let v = mask.trailing_zeros() as usize;
                            mask &= mask - 1;
                            found = hit(self, v);
                        }
                        found
                    }
                    _ => (0..self.g.n()).any(|v| hit(self, v)),
                };
                found == want
            }
            Var::S(slot) => {
                let slot = slot as usize;
                let (base, free) = match q.guard {
                    Guard::SubsetOf(r) => (0, self.ss[r as usize]),
                    Guard::SupersetOf(r) => {
                        let r = self.ss[r as usize];
                        (r, self.full & !r)
                    }
                    _ => (0, self.full),
                };
                let bits: Vec<u32> = (0..64).filter(|b| free >> b & 1 == 1).collect();
                let mut cur = base;
                self.ss[slot] = cur;
                if self.eval(&q.body) == want {
                    return want;
                }
                let steps: u64 = if bits.len() >= 64 {
                    u64::MAX
                } else {
                    (1u64 << bits.len()) - 1
                };
                for i in 1..=steps {
                    cur ^= 1u64 << bits[i.trailing_zeros() as usize];
                    self.ss[slot] = cur;
                    if self.eval(&q.body) == want {
                        return want;
                    }
                }
                !want
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;

    fn holds(g: &Graph, text: &str) -> bool {
        check(g, &parse(text).unwrap()).unwrap()
    }

    #[test]
    fn first_order_basics() {
        assert!(!holds(&Graph::empty(4), "exists x. exists y. x ~ y"));
        let tri = "exists x. exists y. exists z. x ~ y & y ~ z & x ~ z";
        assert!(holds(&Graph::complete(3), tri));
        assert!(!holds(&Graph::cycle(4), tri));
        assert!(holds(&Graph::empty(0), "forall x. !x = x"));
        assert!(!holds(&Graph::empty(0), "exists x. x = x"));
        assert!(holds(
            &Graph::cycle(5),
            "forall x. exists y. exists z. x ~ y & x ~ z & !y = z"
        ));
        assert!(!holds(
            &Graph::path(3),
            "forall x. exists y. exists z. x ~ y & x ~ z & !y = z"
        ));
    }

    #[test]
    fn diameter_three_paths() {
        let s = "forall x. forall y. exists z. exists w. x~z & z~w & w~y";
        // a walk of length 3 between every ordered pair
        assert!(holds(&Graph::complete(4), s));
        assert!(!holds(&Graph::path(5), s));
    }

    #[test]
    fn set_quantifiers() {
        assert!(holds(&Graph::empty(3), "exists S. forall x. x in S"));
        assert!(holds(&Graph::empty(3), "exists S. forall x. !x in S"));
        assert!(!holds(&Graph::empty(3), "forall S. exists x. x in S"));
        // subset and disjointness patterns
        assert!(holds(
            &Graph::empty(4),
            "forall A. exists B. forall v. (v in A -> v in B)"
        ));
        assert!(holds(&Graph::empty(4), "forall A. forall B. (forall v. (v in A -> v in B)) -> (forall v. (!v in B | v in A)) -> (forall v. (v in A -> v in B)) & forall v. (v in B -> v in A)"));
        assert!(!holds(
            &Graph::empty(2),
            "exists A. exists B. (forall v. (!v in A | !v in B)) & exists v. v in A & v in B"
        ));
        // an independent set containing a given edge endpoint pair cannot exist
        assert!(!holds(&Graph::path(2), "exists S. exists x. exists y. x ~ y & x in S & y in S & forall u. forall v. (u in S & v in S -> !u ~ v)"));
    }

    #[test]
    fn free_variables_and_errors() {
        let f = crate::logic::parse_open("exists y. x ~ y & y in S", &["x", "S"]).unwrap();
        let g = Graph::path(3);
        let opts = CheckOptions::default();
        assert!(check_with(
            &g,
            &f,
            &Assignment::new().vertex("x", 0).set("S", [1]),
            &opts
        )
        .unwrap());
        assert!(!check_with(
            &g,
            &f,
            &Assignment::new().vertex("x", 0).set("S", [2]),
            &opts
        )
        .unwrap());
        assert!(check_with(&g, &f, &Assignment::new().vertex("x", 0), &opts).is_err());
        assert!(check_with(
            &g,
            &f,
            &Assignment::new().vertex("x", 7).set("S", []),
            &opts
        )
        .is_err());
        let big = Graph::empty(19);
        assert!(matches!(
            check(&big, &parse("exists S. forall x. x in S").unwrap()),
            Err(Error::Capability(_))
        ));
        assert!(check(
            &Graph::empty(500),
            &parse("forall x. exists y. x = y").unwrap()
        )
        .unwrap());
        assert!(matches!(
            Compiled::new(&Formula::adj("x", "Y")),
            Err(Error::Type(_))
        ));
    }
}
