use std::collections::BTreeSet;
use std::fmt;

/// A formula over vertex variables (lowercase names) and set variables
/// (uppercase names). A closed formula is a sentence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(String, String),
    Adj(String, String),
    In(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

pub type Sentence = Formula;

/// Set variables start with an uppercase letter.
pub fn is_set_name(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

impl Formula {
    pub fn eq(x: &str, y: &str) -> Self {
        Formula::Eq(x.into(), y.into())
    }
    pub fn adj(x: &str, y: &str) -> Self {
        Formula::Adj(x.into(), y.into())
    }
    pub fn member(x: &str, s: &str) -> Self {
        Formula::In(x.into(), s.into())
    }
    #[allow(clippy::should_implement_trait)] // a constructor, not negation of self
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn forall(v: &str, body: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(body))
    }
    pub fn exists(v: &str, body: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(body))
    }

    /// Left-nested conjunction. Panics on an empty list.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .expect("and_all of no formulas")
    }

    /// Left-nested disjunction. Panics on an empty list.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .expect("or_all of no formulas")
    }

    pub fn forall_many(vars: &[&str], body: Formula) -> Self {
        vars.iter().rev().fold(body, |f, v| Formula::forall(v, f))
    }

    pub fn exists_many(vars: &[&str], body: Formula) -> Self {
        vars.iter().rev().fold(body, |f, v| Formula::exists(v, f))
    }

    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Adj(..) | Formula::In(..) => 0,
            Formula::Not(a) => a.quantifier_rank(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.quantifier_rank(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut note = |v: &str, bound: &Vec<&str>| {
            if !bound.contains(&v) {
                out.insert(v.to_string());
            }
        };
        match self {
            Formula::Eq(a, b) | Formula::Adj(a, b) | Formula::In(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_names(&mut |n| {
            out.insert(n.to_string());
        });
        out
    }

    fn visit_names(&self, f: &mut impl FnMut(&str)) {
        match self {
            Formula::Eq(a, b) | Formula::Adj(a, b) | Formula::In(a, b) => {
                f(a);
                f(b);
            }
            Formula::Not(a) => a.visit_names(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_names(f);
                b.visit_names(f);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                f(v);
                a.visit_names(f);
            }
        }
    }

    pub fn has_set_quantifier(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Adj(..) | Formula::In(..) => false,
            Formula::Not(a) => a.has_set_quantifier(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.has_set_quantifier() || b.has_set_quantifier()
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                is_set_name(v) || a.has_set_quantifier()
            }
        }
    }

    /// Renames free occurrences of variables according to `map`.
    pub fn substitute(&self, map: &[(&str, &str)]) -> Formula {
        let lookup = |v: &String| -> String {
            map.iter()
                .find(|(from, _)| from == v)
                .map_or_else(|| v.clone(), |(_, to)| to.to_string())
        };
        match self {
            Formula::Eq(a, b) => Formula::Eq(lookup(a), lookup(b)),
            Formula::Adj(a, b) => Formula::Adj(lookup(a), lookup(b)),
            Formula::In(a, b) => Formula::In(lookup(a), lookup(b)),
            Formula::Not(a) => Formula::not(a.substitute(map)),
            Formula::And(a, b) => Formula::and(a.substitute(map), b.substitute(map)),
            Formula::Or(a, b) => Formula::or(a.substitute(map), b.substitute(map)),
            Formula::Implies(a, b) => Formula::implies(a.substitute(map), b.substitute(map)),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let inner: Vec<(&str, &str)> =
                    map.iter().copied().filter(|(from, _)| from != v).collect();
                debug_assert!(
                    !map.iter()
                        .any(|(from, to)| from != v && to == v && a.free_vars().contains(*from)),
                    "substitution would capture `{v}`"
                );
                let body = Box::new(a.substitute(&inner));
                if matches!(self, Formula::Forall(..)) {
                    Formula::Forall(v.clone(), body)
                } else {
                    Formula::Exists(v.clone(), body)
                }
            }
        }
    }
}

// Precedence: quantifiers 0, -> 1, | 2, & 3, ! 4, atoms 5.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        _ => 5,
    }
}

fn write_formula(
    f: &Formula,
    ctx: u8,
    rightmost: bool,
    out: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let is_quant = prec(f) == 0;
    let paren = if is_quant { !rightmost } else { prec(f) < ctx };
    if paren {
        out.write_str("(")?;
        write_formula(f, 0, true, out)?;
        return out.write_str(")");
    }
    match f {
        Formula::Eq(a, b) => write!(out, "{a} = {b}"),
        Formula::Adj(a, b) => write!(out, "{a} ~ {b}"),
        Formula::In(a, b) => write!(out, "{a} in {b}"),
        Formula::Not(a) => {
            out.write_str("!")?;
            write_formula(a, 4, rightmost, out)
        }
        Formula::And(a, b) => {
            write_formula(a, 3, false, out)?;
            out.write_str(" & ")?;
            write_formula(b, 4, rightmost, out)
        }
        Formula::Or(a, b) => {
            write_formula(a, 2, false, out)?;
            out.write_str(" | ")?;
            write_formula(b, 3, rightmost, out)
        }
        Formula::Implies(a, b) => {
            write_formula(a, 2, false, out)?;
            out.write_str(" -> ")?;
            write_formula(b, 1, rightmost, out)
        }
        Formula::Forall(v, a) => {
            write!(out, "forall {v}. ")?;
            write_formula(a, 0, rightmost, out)
        }
        Formula::Exists(v, a) => {
            write!(out, "exists {v}. ")?;
            write_formula(a, 0, rightmost, out)
        }
    }
}

/// Canonical text: minimal parentheses, single spaces around binary operators.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, 0, true, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(Formula::eq("x", "y").quantifier_rank(), 0);
        let f = Formula::forall("x", Formula::exists("y", Formula::adj("x", "y")));
        assert_eq!(f.quantifier_rank(), 2);
        let g = Formula::and(f.clone(), Formula::exists("z", Formula::eq("z", "z")));
        assert_eq!(g.quantifier_rank(), 2);
    }

    #[test]
    fn free_variables() {
        let f = Formula::exists(
            "y",
            Formula::and(Formula::adj("x", "y"), Formula::member("y", "S")),
        );
        assert_eq!(
            f.free_vars().into_iter().collect::<Vec<_>>(),
            vec!["S".to_string(), "x".to_string()]
        );
        assert!(!f.has_set_quantifier());
        assert!(Formula::exists("S", f).has_set_quantifier());
    }

    #[test]
    fn display_minimal_parens() {
        let a = Formula::adj("x", "y");
        let q = Formula::exists("z", Formula::eq("z", "x"));
        assert_eq!(
            Formula::and(a.clone(), q.clone()).to_string(),
            "x ~ y & exists z. z = x"
        );
        assert_eq!(
            Formula::and(q.clone(), a.clone()).to_string(),
            "(exists z. z = x) & x ~ y"
        );
        let nested = Formula::or(Formula::and(a.clone(), q.clone()), a.clone());
        assert_eq!(nested.to_string(), "x ~ y & (exists z. z = x) | x ~ y");
        let imp = Formula::implies(Formula::implies(a.clone(), a.clone()), a.clone());
        assert_eq!(imp.to_string(), "(x ~ y -> x ~ y) -> x ~ y");
        assert_eq!(
            Formula::not(Formula::or(a.clone(), a.clone())).to_string(),
            "!(x ~ y | x ~ y)"
        );
        assert_eq!(Formula::not(a).to_string(), "!x ~ y");
    }

    #[test]
    fn substitution_respects_binders() {
        let f = Formula::and(
            Formula::adj("x", "y"),
            Formula::exists("x", Formula::eq("x", "y")),
        );
        let g = f.substitute(&[("x", "a"), ("y", "b")]);
        assert_eq!(g.to_string(), "a ~ b & exists x. x = b");
    }
}
