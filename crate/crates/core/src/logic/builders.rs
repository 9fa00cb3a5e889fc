//! Standard sentence constructions.
//!
//! All builders take the names of their free variables and draw helper names
//! from a [`Fresh`] generator, so nested uses never capture each other.

use super::ast::{is_set_name, Formula};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

type F = Formula;

/// Generator of variable names not used elsewhere in a construction.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    used: BTreeSet<String>,
}

impl Fresh {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn avoiding<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        Fresh {
            used: names.into_iter().map(str::to_string).collect(),
        }
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    /// A fresh name starting with `hint`; case of `hint` selects the namespace.
    pub fn name(&mut self, hint: &str) -> String {
        let mut k = 0usize;
        loop {
            let cand = if k == 0 {
                hint.to_string()
            } else {
                format!("{hint}{k}")
            };
            if self.used.insert(cand.clone()) {
                return cand;
            }
            k += 1;
        }
    }
}

fn not_eq(a: &str, b: &str) -> F {
    F::not(F::eq(a, b))
}

/// `A ⊆ B`.
pub fn subset(a: &str, b: &str, fresh: &mut Fresh) -> F {
    let v = fresh.name("v");
    F::forall(&v, F::implies(F::member(&v, a), F::member(&v, b)))
}

/// `A = B` as mutual inclusion.
pub fn set_eq(a: &str, b: &str, fresh: &mut Fresh) -> F {
    F::and(subset(a, b, fresh), subset(b, a, fresh))
}

/// `A ∩ B = ∅`.
pub fn disjoint(a: &str, b: &str, fresh: &mut Fresh) -> F {
    let v = fresh.name("v");
    F::forall(
        &v,
        F::or(F::not(F::member(&v, a)), F::not(F::member(&v, b))),
    )
}

/// `u` has exactly one neighbour in `s`.
pub fn one_neighbor(u: &str, s: &str, fresh: &mut Fresh) -> F {
    let (a, b) = (fresh.name("a"), fresh.name("b"));
    F::exists(
        &a,
        F::and_all([
            F::adj(u, &a),
            F::member(&a, s),
            F::forall(
                &b,
                F::implies(F::and(F::adj(u, &b), F::member(&b, s)), F::eq(&b, &a)),
            ),
        ]),
    )
}

/// `u` has exactly two neighbours in `s`.
pub fn two_neighbors(u: &str, s: &str, fresh: &mut Fresh) -> F {
    let (a, b, d) = (fresh.name("a"), fresh.name("b"), fresh.name("d"));
    F::exists(
        &a,
        F::and(
            F::and(F::adj(u, &a), F::member(&a, s)),
            F::exists(
                &b,
                F::and_all([
                    F::adj(u, &b),
                    F::member(&b, s),
                    not_eq(&a, &b),
                    F::forall(
                        &d,
                        F::implies(
                            F::and(F::adj(u, &d), F::member(&d, s)),
                            F::or(F::eq(&d, &a), F::eq(&d, &b)),
                        ),
                    ),
                ]),
            ),
        ),
    )
}

/// `path(x,y,S)`: `x, y ∈ S` each have exactly one neighbour in `S` and every
/// other member of `S` exactly two. Never true for `x = y`.
pub fn path(x: &str, y: &str, s: &str, fresh: &mut Fresh) -> F {
    let z = fresh.name("z");
    F::and_all([
        F::member(x, s),
        F::member(y, s),
        one_neighbor(x, s, fresh),
        one_neighbor(y, s, fresh),
        F::forall(
            &z,
            F::implies(
                F::and_all([F::member(&z, s), not_eq(&z, x), not_eq(&z, y)]),
                two_neighbors(&z, s, fresh),
            ),
        ),
    ])
}

/// `conn(x,y,R)`: some `S ⊆ R` satisfies `path(x,y,S)`.
pub fn conn(x: &str, y: &str, r: &str, fresh: &mut Fresh) -> F {
    let s = fresh.name("S");
    F::exists(&s, F::and(subset(&s, r, fresh), path(x, y, &s, fresh)))
}

/// Every two distinct members of `r` are joined inside `r`.
pub fn connected(r: &str, fresh: &mut Fresh) -> F {
    let (x, y) = (fresh.name("x"), fresh.name("y"));
    F::forall_many(
        &[&x, &y],
        F::implies(
            F::and_all([F::member(&x, r), F::member(&y, r), not_eq(&x, &y)]),
            conn(&x, &y, r, fresh),
        ),
    )
}

/// `circ(S)`: `S` is non-empty, 2-regular and connected, i.e. a cycle.
pub fn circ(s: &str, fresh: &mut Fresh) -> F {
    let (z, w) = (fresh.name("z"), fresh.name("w"));
    F::and_all([
        F::exists(&z, F::member(&z, s)),
        F::forall(
            &w,
            F::implies(F::member(&w, s), two_neighbors(&w, s, fresh)),
        ),
        connected(s, fresh),
    ])
}

/// Open templates `path(x,y,S)`, `conn(x,y,R)` and `circ(S)`.
#[derive(Clone, Debug)]
pub struct Templates {
    pub path: Formula,
    pub conn: Formula,
    pub circ: Formula,
}

pub fn build_path_conn_circ() -> Templates {
    let mut fresh = Fresh::avoiding(["x", "y", "S", "R"]);
    Templates {
        path: path("x", "y", "S", &mut fresh),
        conn: conn("x", "y", "R", &mut fresh),
        circ: circ("S", &mut fresh),
    }
}

/// Some component contains two disjoint cycles.
pub fn two_cycle_component_sentence() -> Sentence {
    let mut fresh = Fresh::avoiding(["S", "T", "R"]);
    F::exists_many(
        &["S", "T", "R"],
        F::and_all([
            circ("S", &mut fresh),
            circ("T", &mut fresh),
            disjoint("S", "T", &mut fresh),
            subset("S", "R", &mut fresh),
            subset("T", "R", &mut fresh),
            connected("R", &mut fresh),
        ]),
    )
}

use super::ast::Sentence;

/// `seg(x,y,P)`: `P ⊆ T` is a path from `x` to `y` meeting `S` only at its ends.
fn segment(x: &str, y: &str, p: &str, s: &str, t: &str, fresh: &mut Fresh) -> F {
    let z = fresh.name("z");
    F::and_all([
        subset(p, t, fresh),
        path(x, y, p, fresh),
        F::forall(
            &z,
            F::implies(
                F::and(F::member(&z, p), F::member(&z, s)),
                F::or(F::eq(&z, x), F::eq(&z, y)),
            ),
        ),
    ])
}

/// `clean(S,T)`: `S ⊆ T`; each pair of distinct `x, y ∈ S` has a unique segment
/// `T_xy`; distinct segments have no edges between them other than their own.
pub fn clean(s: &str, t: &str, fresh: &mut Fresh) -> F {
    let (x, y) = (fresh.name("x"), fresh.name("y"));
    let (p, q) = (fresh.name("P"), fresh.name("Q"));
    let unique = F::exists(
        &p,
        F::and(
            segment(&x, &y, &p, s, t, fresh),
            F::forall(
                &q,
                F::implies(segment(&x, &y, &q, s, t, fresh), set_eq(&q, &p, fresh)),
            ),
        ),
    );
    let cond_ii = F::forall_many(
        &[&x, &y],
        F::implies(
            F::and_all([F::member(&x, s), F::member(&y, s), not_eq(&x, &y)]),
            unique,
        ),
    );

    let (x1, y1, x2, y2) = (
        fresh.name("x"),
        fresh.name("y"),
        fresh.name("x"),
        fresh.name("y"),
    );
    let (p1, p2) = (fresh.name("P"), fresh.name("P"));
    let (a, b) = (fresh.name("a"), fresh.name("b"));
    let same_pair = F::or(
        F::and(F::eq(&x1, &x2), F::eq(&y1, &y2)),
        F::and(F::eq(&x1, &y2), F::eq(&y1, &x2)),
    );
    let no_cross = F::forall_many(
        &[&a, &b],
        F::implies(
            F::and_all([F::member(&a, &p1), F::member(&b, &p2), F::adj(&a, &b)]),
            F::or(F::member(&b, &p1), F::member(&a, &p2)),
        ),
    );
    // with condition (ii) in force the segments are unique, so `exists` reads them
    let cond_iii = F::forall_many(
        &[&x1, &y1, &x2, &y2],
        F::implies(
            F::and_all([
                F::member(&x1, s),
                F::member(&y1, s),
                F::member(&x2, s),
                F::member(&y2, s),
                not_eq(&x1, &y1),
                not_eq(&x2, &y2),
                F::not(same_pair),
            ]),
            F::exists_many(
                &[&p1, &p2],
                F::and_all([
                    segment(&x1, &y1, &p1, s, t, fresh),
                    segment(&x2, &y2, &p2, s, t, fresh),
                    no_cross,
                ]),
            ),
        ),
    );
    F::and_all([subset(s, t, fresh), cond_ii, cond_iii])
}

fn star(a: &F, fresh: &mut Fresh) -> F {
    match a {
        F::Eq(..) => a.clone(),
        F::Adj(x, y) => {
            let (p, z) = (fresh.name("P"), fresh.name("z"));
            F::exists(
                &p,
                F::and(
                    segment(x, y, &p, "S", "T", fresh),
                    F::exists(&z, F::and(F::member(&z, &p), F::member(&z, "U"))),
                ),
            )
        }
        F::In(..) => unreachable!("checked to be first-order"),
        F::Not(b) => F::not(star(b, fresh)),
        F::And(b, c) => F::and(star(b, fresh), star(c, fresh)),
        F::Or(b, c) => F::or(star(b, fresh), star(c, fresh)),
        F::Implies(b, c) => F::implies(star(b, fresh), star(c, fresh)),
        F::Forall(v, b) => F::forall(v, F::implies(F::member(v, "S"), star(b, fresh))),
        F::Exists(v, b) => F::exists(v, F::and(F::member(v, "S"), star(b, fresh))),
    }
}

fn check_first_order(a: &F, k: usize) -> Result<()> {
    if a.all_names().iter().any(|n| is_set_name(n)) {
        return Err(Error::Type(
            "A+ needs a first-order sentence without set variables".into(),
        ));
    }
    if !a.free_vars().is_empty() {
        return Err(Error::Type(
            "A+ needs a sentence, found free variables".into(),
        ));
    }
    let vars = a.all_names().len();
    if vars > k {
        return Err(Error::Parameter(format!(
            "sentence uses {vars} vertex variables, more than k = {k}"
        )));
    }
    Ok(())
}

/// `clean(S,T) ∧ A*` with `S`, `T`, `U` free.
pub fn a_plus_body(a: &Sentence, k: usize) -> Result<F> {
    check_first_order(a, k)?;
    let mut fresh = Fresh::avoiding(
        a.all_names()
            .iter()
            .map(String::as_str)
            .chain(["S", "T", "U"]),
    );
    let c = clean("S", "T", &mut fresh);
    Ok(F::and(c, star(a, &mut fresh)))
}

/// `A⁺ = ∃S ∃T ∃U (clean(S,T) ∧ A*)` where `A*` relativizes quantifiers to `S`
/// and reads `x ~ y` as "the segment `T_xy` meets `U`".
pub fn transform_a_plus(a: &Sentence, k: usize) -> Result<Sentence> {
    Ok(F::exists_many(&["S", "T", "U"], a_plus_body(a, k)?))
}

/// Names of the outer set variables of [`build_ak`].
pub const AK_SETS: [&str; 8] = ["P1", "P2", "P3", "AR", "DOUBLE", "EXP", "TOWER", "WOW"];

struct AkBuilder {
    fresh: Fresh,
}

impl AkBuilder {
    fn n(&mut self, hint: &str) -> String {
        self.fresh.name(hint)
    }

    /// `P` is an induced path from `x` to `y`: `path` plus minimality.
    fn induced_path(&mut self, x: &str, y: &str, p: &str) -> F {
        let q = self.n("Q");
        let f = &mut self.fresh;
        F::and(
            path(x, y, p, f),
            F::forall(
                &q,
                F::implies(
                    F::and(subset(&q, p, f), path(x, y, &q, f)),
                    subset(p, &q, f),
                ),
            ),
        )
    }

    fn in_some_path(&self, z: &str) -> F {
        F::or_all([F::member(z, "P1"), F::member(z, "P2"), F::member(z, "P3")])
    }

    /// Exactly one of every `k` consecutive interior vertices of `p` is in AR.
    fn windows(&mut self, p: &str, k: usize) -> F {
        let xs: Vec<String> = (0..k).map(|_| self.n("x")).collect();
        let mut premise = Vec::new();
        for (i, x) in xs.iter().enumerate() {
            premise.push(F::member(x, p));
            premise.push(not_eq(x, "s0"));
            premise.push(not_eq(x, "s1"));
            if i > 0 {
                premise.push(F::adj(&xs[i - 1], x));
            }
            for earlier in xs.iter().take(i.saturating_sub(1)) {
                premise.push(not_eq(earlier, x));
            }
        }
        let mut concl = vec![F::or_all(xs.iter().map(|x| F::member(x, "AR")))];
        for i in 0..k {
            for j in i + 1..k {
                concl.push(F::not(F::and(
                    F::member(&xs[i], "AR"),
                    F::member(&xs[j], "AR"),
                )));
            }
        }
        let refs: Vec<&str> = xs.iter().map(String::as_str).collect();
        F::forall_many(&refs, F::implies(F::and_all(premise), F::and_all(concl)))
    }

    /// `x < y` on AR: by path index, then by distance from `s0` along the path.
    fn lt(&mut self, x: &str, y: &str) -> F {
        let mut same = Vec::new();
        for p in ["P1", "P2", "P3"] {
            let q = self.n("Q");
            let f = &mut self.fresh;
            same.push(F::and_all([
                F::member(x, p),
                F::member(y, p),
                F::exists(
                    &q,
                    F::and_all([
                        subset(&q, p, f),
                        path("s0", x, &q, f),
                        F::not(F::member(y, &q)),
                    ]),
                ),
            ]));
        }
        let cross = [("P1", "P2"), ("P1", "P3"), ("P2", "P3")]
            .map(|(a, b)| F::and(F::member(x, a), F::member(y, b)));
        F::and_all([
            F::member(x, "AR"),
            F::member(y, "AR"),
            F::or_all(same.into_iter().chain(cross)),
        ])
    }

    fn next(&mut self, x: &str, y: &str) -> F {
        let k = self.n("k");
        let between = F::and(self.lt(x, &k), self.lt(&k, y));
        F::and(self.lt(x, y), F::not(F::exists(&k, between)))
    }

    fn one(&mut self, i: &str) -> F {
        let j = self.n("j");
        F::and(F::member(i, "AR"), F::not(F::exists(&j, self.lt(&j, i))))
    }

    fn two(&mut self, i: &str) -> F {
        let j = self.n("j");
        let (lt, one) = (self.lt(&j, i), self.one(&j));
        F::and(
            F::member(i, "AR"),
            F::forall(
                &j,
                F::implies(
                    F::member(&j, "AR"),
                    F::and(F::implies(lt.clone(), one.clone()), F::implies(one, lt)),
                ),
            ),
        )
    }

    /// `rel(x,y)`: `x < y` and a path inside `set` joins them avoiding other AR vertices.
    fn rel(&mut self, x: &str, y: &str, set: &str) -> F {
        let (q, z) = (self.n("Q"), self.n("z"));
        let lt = self.lt(x, y);
        let f = &mut self.fresh;
        F::and(
            lt,
            F::exists(
                &q,
                F::and_all([
                    subset(&q, set, f),
                    path(x, y, &q, f),
                    F::forall(
                        &z,
                        F::implies(
                            F::and(F::member(&z, &q), F::member(&z, "AR")),
                            F::or(F::eq(&z, x), F::eq(&z, y)),
                        ),
                    ),
                ]),
            ),
        )
    }

    fn base(&mut self, set: &str) -> F {
        let (a, b) = (self.n("a"), self.n("b"));
        let body = F::and_all([self.one(&a), self.two(&b), self.rel(&a, &b, set)]);
        F::exists_many(&[&a, &b], body)
    }

    fn functional(&mut self, set: &str) -> F {
        let (x, y, z) = (self.n("x"), self.n("y"), self.n("z"));
        let prem = F::and(self.rel(&x, &y, set), self.rel(&x, &z, set));
        F::forall_many(&[&x, &y, &z], F::implies(prem, F::eq(&y, &z)))
    }

    fn downward(&mut self, set: &str) -> F {
        let (x, y, x1, y1) = (self.n("x"), self.n("y"), self.n("x"), self.n("y"));
        let prem = F::and(self.rel(&x, &y, set), self.lt(&x1, &x));
        let concl = F::exists(&y1, self.rel(&x1, &y1, set));
        F::forall_many(&[&x, &y, &x1], F::implies(prem, concl))
    }

    /// Successor and stop rules: `R(x,y) ∧ next(x,x1)` forces `R(x1, step(y))`
    /// when the step exists and forbids any `R(x1, ·)` otherwise.
    fn recursion(&mut self, set: &str, step: &dyn Fn(&mut Self, &str, &str) -> F) -> F {
        let (x, y, x1, y1, z) = (
            self.n("x"),
            self.n("y"),
            self.n("x"),
            self.n("y"),
            self.n("z"),
        );
        let succ = {
            let prem = F::and_all([
                self.rel(&x, &y, set),
                self.next(&x, &x1),
                step(self, &y, &y1),
            ]);
            F::forall_many(
                &[&x, &y, &x1, &y1],
                F::implies(prem, self.rel(&x1, &y1, set)),
            )
        };
        let (xa, ya, xb, yb) = (self.n("x"), self.n("y"), self.n("x"), self.n("y"));
        let stop = {
            let no_step = F::not(F::exists(&yb, step(self, &ya, &yb)));
            let prem = F::and_all([self.rel(&xa, &ya, set), self.next(&xa, &xb), no_step]);
            F::forall_many(
                &[&xa, &ya, &xb],
                F::implies(prem, F::not(F::exists(&z, self.rel(&xb, &z, set)))),
            )
        };
        F::and(succ, stop)
    }

    fn axioms(&mut self, set: &str, step: &dyn Fn(&mut Self, &str, &str) -> F) -> F {
        F::and_all([
            self.base(set),
            self.functional(set),
            self.recursion(set, step),
            self.downward(set),
        ])
    }
}

/// The sentence `A_K`: two hubs joined by three clean paths, an AR set meeting
/// every `K` consecutive interior path vertices exactly once, relation sets
/// `DOUBLE`, `EXP`, `TOWER`, `WOW` obeying their recursive axioms, and some
/// even `x` with `x = wow⁻¹(|AR|)`.
pub fn build_ak(k: usize) -> Result<Sentence> {
    if k < 2 {
        return Err(Error::Parameter(format!("K = {k} must be at least 2")));
    }
    let mut b = AkBuilder {
        fresh: Fresh::avoiding(["s0", "s1"].into_iter().chain(AK_SETS)),
    };
    let mut parts = vec![not_eq("s0", "s1")];
    for p in ["P1", "P2", "P3"] {
        parts.push(b.induced_path("s0", "s1", p));
    }
    for (p, q) in [("P1", "P2"), ("P1", "P3"), ("P2", "P3")] {
        let (z, a, c) = (b.n("z"), b.n("a"), b.n("c"));
        parts.push(F::forall(
            &z,
            F::implies(
                F::and(F::member(&z, p), F::member(&z, q)),
                F::or(F::eq(&z, "s0"), F::eq(&z, "s1")),
            ),
        ));
        parts.push(F::forall_many(
            &[&a, &c],
            F::implies(
                F::and_all([F::member(&a, p), F::member(&c, q), F::adj(&a, &c)]),
                F::or(F::member(&a, q), F::member(&c, p)),
            ),
        ));
    }
    let z = b.n("z");
    parts.push(F::forall(
        &z,
        F::implies(
            F::member(&z, "AR"),
            F::and_all([b.in_some_path(&z), not_eq(&z, "s0"), not_eq(&z, "s1")]),
        ),
    ));
    for p in ["P1", "P2", "P3"] {
        parts.push(b.windows(p, k));
    }
    let double_step = |b: &mut AkBuilder, y: &str, y2: &str| {
        let y1 = b.n("y");
        F::exists(&y1, F::and(b.next(y, &y1), b.next(&y1, y2)))
    };
    parts.push(b.axioms("DOUBLE", &double_step));
    parts.push(b.axioms("EXP", &|b: &mut AkBuilder, y: &str, y1: &str| {
        b.rel(y, y1, "DOUBLE")
    }));
    parts.push(b.axioms("TOWER", &|b: &mut AkBuilder, y: &str, y1: &str| {
        b.rel(y, y1, "EXP")
    }));
    parts.push(b.axioms("WOW", &|b: &mut AkBuilder, y: &str, y1: &str| {
        b.rel(y, y1, "TOWER")
    }));

    let (x, y, w, x1, w1) = (b.n("x"), b.n("y"), b.n("w"), b.n("x"), b.n("w"));
    let even = F::exists(&y, b.rel(&y, &x, "DOUBLE"));
    let has_wow = F::exists(&w, b.rel(&x, &w, "WOW"));
    let last = F::forall(
        &x1,
        F::implies(
            b.lt(&x, &x1),
            F::not(F::exists(&w1, b.rel(&x1, &w1, "WOW"))),
        ),
    );
    parts.push(F::exists(&x, F::and_all([even, has_wow, last])));

    let outer: Vec<&str> = ["s0", "s1"].into_iter().chain(AK_SETS).collect();
    Ok(F::exists_many(&outer, F::and_all(parts)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{components, Graph};
    use crate::logic::{check, check_with, parse, Assignment, CheckOptions};

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let mut f = Fresh::avoiding(["x", "x1"]);
        assert_eq!(f.name("x"), "x2");
        assert_eq!(f.name("S"), "S");
        assert_eq!(f.name("S"), "S1");
    }

    #[test]
    fn path_template() {
        let t = build_path_conn_circ();
        let g = Graph::path(4);
        let asg = Assignment::new()
            .vertex("x", 0)
            .vertex("y", 3)
            .set("S", 0..4);
        assert!(check_with(&g, &t.path, &asg, &opts()).unwrap());
        let asg = Assignment::new()
            .vertex("x", 0)
            .vertex("y", 2)
            .set("S", 0..4);
        assert!(!check_with(&g, &t.path, &asg, &opts()).unwrap());
        let asg = Assignment::new()
            .vertex("x", 1)
            .vertex("y", 1)
            .set("S", 0..4);
        assert!(!check_with(&g, &t.path, &asg, &opts()).unwrap());
    }

    #[test]
    fn circ_template() {
        let t = build_path_conn_circ();
        let c5 = Graph::cycle(5);
        assert!(check_with(&c5, &t.circ, &Assignment::new().set("S", 0..5), &opts()).unwrap());
        assert!(!check_with(&c5, &t.circ, &Assignment::new().set("S", 0..4), &opts()).unwrap());
        assert!(!check_with(&c5, &t.circ, &Assignment::new().set("S", []), &opts()).unwrap());
        let two = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(!check_with(&two, &t.circ, &Assignment::new().set("S", 0..6), &opts()).unwrap());
    }

    #[test]
    fn conn_matches_components() {
        let t = build_path_conn_circ();
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (3, 0)]).unwrap();
        for r in [0b1111111u64, 0b0110111, 0b1010101, 0b1110011] {
            let members: Vec<usize> = (0..7).filter(|v| r >> v & 1 == 1).collect();
            let sub = g.induced(&members);
            let comp = components(&sub);
            for (i, &x) in members.iter().enumerate() {
                for (j, &y) in members.iter().enumerate() {
                    let same = i != j
                        && comp
                            .iter()
                            .any(|c| c.vertices.contains(&i) && c.vertices.contains(&j));
                    let asg = Assignment::new()
                        .vertex("x", x)
                        .vertex("y", y)
                        .set("R", members.iter().copied());
                    assert_eq!(
                        check_with(&g, &t.conn, &asg, &opts()).unwrap(),
                        same,
                        "R={r:b} x={x} y={y}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_circuits() {
        let a = two_cycle_component_sentence();
        assert!(!check(&Graph::cycle(6), &a).unwrap());
        assert!(!check(&Graph::path(5).disjoint_union(&Graph::star(3)), &a).unwrap());
        let apart = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(!check(&apart, &a).unwrap());
        let joined = Graph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 5),
            ],
        )
        .unwrap();
        assert!(check(&joined, &a).unwrap());
        // two triangles sharing a vertex also contain no two disjoint cycles
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(!check(&bowtie, &a).unwrap());
    }

    #[test]
    fn a_plus_shape_and_errors() {
        let a = parse("exists x. exists y. x ~ y").unwrap();
        let ap = transform_a_plus(&a, 2).unwrap();
        let text = ap.to_string();
        assert!(text.starts_with("exists S. exists T. exists U. "));
        assert_eq!(parse(&text).unwrap(), ap);
        assert!(matches!(
            transform_a_plus(&parse("exists S. exists x. x in S").unwrap(), 3),
            Err(Error::Type(_))
        ));
        assert!(matches!(transform_a_plus(&a, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn ak_round_trips() {
        let ak = build_ak(2).unwrap();
        let text = ak.to_string();
        assert_eq!(parse(&text).unwrap(), ak);
        assert!(build_ak(1).is_err());
    }

    #[test]
    fn ak_false_without_three_paths() {
        // a 4-cycle has two hub-to-hub paths only
        let ak = build_ak(2).unwrap();
        assert!(!check(&Graph::cycle(4), &ak).unwrap());
        assert!(!check(&Graph::path(6), &ak).unwrap());
    }
}
