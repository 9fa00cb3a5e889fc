//! Expressions in the family generated by `0`, `1`, `c` under `+`, `-`,
//! multiplication by exact rationals, products and base-`e` exponentiation.
//!
//! Text form, loosest binding first:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := "q:" rational "*" term | factor ("*" factor)*
//! factor := "0" | "1" | "c" | "exp(" expr ")" | "(" expr ")"
//! ```
//!
//! A scale prefix extends over the whole remaining product, so
//! `q:-1/6 * c * c * c` is `-1/6 · (c·c·c)`. The serializer emits exactly
//! this grammar and `parse(f.to_string()) == f` for every tree.

use crate::error::{Error, Result};
use crate::logic::{parse as parse_sentence, Sentence};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    Zero,
    One,
    C,
    Sum(Box<ClosedForm>, Box<ClosedForm>),
    Difference(Box<ClosedForm>, Box<ClosedForm>),
    /// Reduced by construction (`BigRational` normalizes).
    Scale(BigRational, Box<ClosedForm>),
    Product(Box<ClosedForm>, Box<ClosedForm>),
    Exp(Box<ClosedForm>),
}

use ClosedForm as E;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl ClosedForm {
    pub fn sum(a: E, b: E) -> E {
        E::Sum(Box::new(a), Box::new(b))
    }
    pub fn difference(a: E, b: E) -> E {
        E::Difference(Box::new(a), Box::new(b))
    }
    pub fn scale(q: BigRational, a: E) -> E {
        E::Scale(q, Box::new(a))
    }
    pub fn product(a: E, b: E) -> E {
        E::Product(Box::new(a), Box::new(b))
    }
    pub fn exp(a: E) -> E {
        E::Exp(Box::new(a))
    }
    /// `c^k` as a left-nested product; `c^0 = 1`.
    pub fn c_pow(k: u32) -> E {
        match k {
            0 => E::One,
            _ => (1..k).fold(E::C, |acc, _| E::product(acc, E::C)),
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    fn children(&self) -> Vec<&E> {
        match self {
            E::Zero | E::One | E::C => vec![],
            E::Sum(a, b) | E::Difference(a, b) | E::Product(a, b) => vec![a, b],
            E::Scale(_, a) | E::Exp(a) => vec![a],
        }
    }

    /// Floating-point value at `c`.
    ///
    /// Fails with the path of the first node (children before parents) whose
    /// value is not finite; the path lists child indices from the root.
    pub fn evaluate(&self, c: f64) -> Result<f64> {
        if !c.is_finite() {
            return Err(Error::Parameter(format!("c must be finite, got {c}")));
        }
        let mut path = vec![];
        self.eval_at(c, &mut path)
    }

    fn eval_at(&self, c: f64, path: &mut Vec<usize>) -> Result<f64> {
        let child = |i: usize, e: &E, path: &mut Vec<usize>| {
            path.push(i);
            let r = e.eval_at(c, path);
            path.pop();
            r
        };
        let v = match self {
            E::Zero => 0.0,
            E::One => 1.0,
            E::C => c,
            E::Sum(a, b) => child(0, a, path)? + child(1, b, path)?,
            E::Difference(a, b) => child(0, a, path)? - child(1, b, path)?,
            E::Product(a, b) => child(0, a, path)? * child(1, b, path)?,
            E::Scale(q, a) => rational_to_f64(q) * child(0, a, path)?,
            E::Exp(a) => child(0, a, path)?.exp(),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow {
                path: format_path(path),
                msg: format!("value {v} at c = {c}"),
            })
        }
    }

    /// Exact value at a rational `c`; `None` when the tree contains `exp`.
    pub fn evaluate_exact(&self, c: &BigRational) -> Option<BigRational> {
        Some(match self {
            E::Zero => BigRational::zero(),
            E::One => BigRational::one(),
            E::C => c.clone(),
            E::Sum(a, b) => a.evaluate_exact(c)? + b.evaluate_exact(c)?,
            E::Difference(a, b) => a.evaluate_exact(c)? - b.evaluate_exact(c)?,
            E::Product(a, b) => a.evaluate_exact(c)? * b.evaluate_exact(c)?,
            E::Scale(q, a) => q * a.evaluate_exact(c)?,
            E::Exp(_) => return None,
        })
    }

    /// Symbolic derivative in `c`.
    ///
    /// Zero and one operands are folded away as the result is built, so the
    /// derivative of a constant is exactly `Zero`.
    pub fn differentiate(&self) -> E {
        match self {
            E::Zero | E::One => E::Zero,
            E::C => E::One,
            E::Sum(a, b) => add(a.differentiate(), b.differentiate()),
            E::Difference(a, b) => sub(a.differentiate(), b.differentiate()),
            E::Scale(q, a) => scale(q.clone(), a.differentiate()),
            E::Product(a, b) => add(
                mul(a.differentiate(), (**b).clone()),
                mul((**a).clone(), b.differentiate()),
            ),
            E::Exp(a) => mul(self.clone(), a.differentiate()),
        }
    }
}

fn add(a: E, b: E) -> E {
    match (a, b) {
        (E::Zero, x) | (x, E::Zero) => x,
        (a, b) => E::sum(a, b),
    }
}

fn sub(a: E, b: E) -> E {
    match (a, b) {
        (x, E::Zero) => x,
        (E::Zero, x) => scale(rational(-1, 1), x),
        (a, b) => E::difference(a, b),
    }
}

fn scale(q: BigRational, a: E) -> E {
    if q.is_zero() || a == E::Zero {
        E::Zero
    } else if q.is_one() {
        a
    } else {
        E::scale(q, a)
    }
}

fn mul(a: E, b: E) -> E {
    match (a, b) {
        (E::Zero, _) | (_, E::Zero) => E::Zero,
        (E::One, x) | (x, E::One) => x,
        (a, b) => E::product(a, b),
    }
}

fn format_path(path: &[usize]) -> String {
    std::iter::once("root".to_string())
        .chain(path.iter().map(|i| i.to_string()))
        .collect::<Vec<_>>()
        .join("/")
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// Precedence levels for printing: 0 = expr, 1 = term, 2 = factor.
impl ClosedForm {
    fn level(&self) -> u8 {
        match self {
            E::Sum(..) | E::Difference(..) => 0,
            E::Scale(..) | E::Product(..) => 1,
            _ => 2,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        // Inside a product every operand is a factor; a scale prefix would
        // swallow the operands to its right.
        let needs = match (self, ctx) {
            (E::Scale(..), 2) => true,
            _ => self.level() < ctx,
        };
        if needs {
            f.write_str("(")?;
            self.write(f, 0)?;
            return f.write_str(")");
        }
        match self {
            E::Zero => f.write_str("0"),
            E::One => f.write_str("1"),
            E::C => f.write_str("c"),
            E::Sum(a, b) | E::Difference(a, b) => {
                a.write(f, 0)?;
                f.write_str(if matches!(self, E::Sum(..)) {
                    " + "
                } else {
                    " - "
                })?;
                b.write(f, 1)
            }
            E::Scale(q, a) => {
                write!(f, "q:{} * ", fmt_rational(q))?;
                a.write(f, 1)
            }
            E::Product(a, b) => {
                match **a {
                    E::Product(..) => a.write(f, 1)?,
                    _ => a.write(f, 2)?,
                }
                f.write_str(" * ")?;
                b.write(f, 2)
            }
            E::Exp(a) => {
                f.write_str("exp(")?;
                a.write(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

impl std::str::FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Parses the text form; positions in errors are 1-based columns on line 1.
pub fn parse(text: &str) -> Result<ClosedForm> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        let before = &self.src[..self.pos.min(self.src.len())];
        let line = 1 + before.iter().filter(|&&b| b == b'\n').count();
        let col = 1 + before.iter().rev().take_while(|&&b| b != b'\n').count();
        Error::Syntax {
            line,
            col,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{tok}`")))
        }
    }

    fn expr(&mut self) -> Result<E> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = E::sum(acc, self.term()?);
            } else if self.eat("-") {
                acc = E::difference(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<E> {
        if self.eat("q:") {
            let q = self.rational()?;
            self.expect("*")?;
            return Ok(E::scale(q, self.term()?));
        }
        let mut acc = self.factor()?;
        while self.eat("*") {
            acc = E::product(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<E> {
        if self.eat("exp(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(E::exp(e));
        }
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("0") {
            return Ok(E::Zero);
        }
        if self.eat("1") {
            return Ok(E::One);
        }
        if self.eat("c") {
            return Ok(E::C);
        }
        Err(self.err("expected `0`, `1`, `c`, `exp(` or `(`"))
    }

    fn integer(&mut self, signed: bool) -> Result<BigInt> {
        let start = self.pos;
        if signed && self.pos < self.src.len() && self.src[self.pos] == b'-' {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("validated digits"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer(true)?;
        let den = if self.pos < self.src.len() && self.src[self.pos] == b'/' {
            self.pos += 1;
            self.integer(false)?
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return Err(self.err("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }
}

/// A sentence paired with the limit of `Pr[G(n, c/n) ⊨ sentence]`.
#[derive(Clone, Debug)]
pub struct BuiltinExample {
    pub sentence: Sentence,
    pub limit: ClosedForm,
    /// Plain-language reading of `sentence`.
    pub description: &'static str,
}

/// The three triangle examples, keyed `triangle`, `isolated_triangle`,
/// `unspiked_triangle`.
///
/// The first two limits are the classical probabilities of *absence*
/// (no triangle, no isolated triangle), so their sentences are negated
/// existence statements. The third is stated as an absence already.
pub fn builtin_examples() -> BTreeMap<&'static str, BuiltinExample> {
    let tri = "x ~ y & y ~ z & x ~ z";
    let isolated = "forall w. ((w ~ x | w ~ y | w ~ z) -> (w = x | w = y | w = z))";
    // A spike is a vertex whose only neighbour is one of the triangle's vertices.
    let spike =
        "exists w. ((w ~ x | w ~ y | w ~ z) & forall u. (u ~ w -> (u = x | u = y | u = z)) \
                 & !(w ~ x & w ~ y) & !(w ~ x & w ~ z) & !(w ~ y & w ~ z))";
    let sent = |s: String| parse_sentence(&s).expect("builtin sentence parses");
    let ce = |s: &str| parse(s).expect("builtin closed form parses");
    let mut m = BTreeMap::new();
    m.insert(
        "triangle",
        BuiltinExample {
            sentence: sent(format!("!exists x. exists y. exists z. ({tri})")),
            limit: ce("exp(q:-1/6 * c * c * c)"),
            description: "there is no triangle",
        },
    );
    m.insert(
        "isolated_triangle",
        BuiltinExample {
            sentence: sent(format!(
                "!exists x. exists y. exists z. ({tri} & {isolated})"
            )),
            limit: ce("exp(q:-1/6 * c * c * c * exp(q:-3 * c))"),
            description: "there is no isolated triangle",
        },
    );
    m.insert(
        "unspiked_triangle",
        BuiltinExample {
            sentence: sent(format!("!exists x. exists y. exists z. ({tri} & !{spike})")),
            limit: ce("exp(q:-1/6 * c * c * c * exp(q:-3 * c * exp(q:-1 * c)))"),
            description: "there is no unspiked triangle",
        },
    );
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::check;
    use crate::Graph;
    use proptest::prelude::*;

    fn p(s: &str) -> E {
        parse(s).unwrap()
    }

    #[test]
    fn worked_examples_at_one() {
        let b = builtin_examples();
        let v = |k: &str| b[k].limit.evaluate(1.0).unwrap();
        assert!((v("triangle") - (-1.0f64 / 6.0).exp()).abs() < 1e-15);
        assert!((v("triangle") - 0.846482).abs() < 5e-7);
        assert!((v("isolated_triangle") - 0.991736).abs() < 5e-7);
        // exact value is 0.9462230; the commonly quoted 0.946225 is a rounding slip
        assert!((v("unspiked_triangle") - 0.9462230).abs() < 5e-7);
        assert!((v("unspiked_triangle") - 0.946225).abs() < 5e-6);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(E::C.differentiate(), E::One);
        assert_eq!(E::One.differentiate(), E::Zero);
        assert_eq!(E::Zero.differentiate(), E::Zero);
        let d = builtin_examples()["triangle"].limit.differentiate();
        let v = d.evaluate(1.0).unwrap();
        assert!((v - (-0.5 * (-1.0f64 / 6.0).exp())).abs() < 1e-14);
        assert!((v + 0.423241).abs() < 5e-7);
    }

    #[test]
    fn text_examples() {
        let f = p("exp(q:-1/6 * c * c * c)");
        assert_eq!(f, E::exp(E::scale(rational(-1, 6), E::c_pow(3))));
        assert_eq!(f.to_string(), "exp(q:-1/6 * c * c * c)");
        assert_eq!(p("q:2/4 * c").to_string(), "q:1/2 * c");
        assert_eq!(
            p("1 - (c - 1)"),
            E::difference(E::One, E::difference(E::C, E::One))
        );
        assert_eq!(p("c * (q:2 * c)").to_string(), "c * (q:2 * c)");
        assert_eq!(p("c * (c * c)"), E::product(E::C, E::product(E::C, E::C)));
        assert_eq!(
            p("q:3 * c + 1"),
            E::sum(E::scale(rational(3, 1), E::C), E::One)
        );
    }

    #[test]
    fn parse_errors_have_positions() {
        for (s, col) in [
            ("c +", 4),
            ("exp(c", 6),
            ("q:1/0 * c", 6),
            ("2", 1),
            ("c c", 3),
        ] {
            match parse(s) {
                Err(Error::Syntax { col: got, .. }) => assert_eq!(got, col, "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }

    #[test]
    fn overflow_reports_node_path() {
        let f = p("1 + exp(exp(c))");
        match f.evaluate(10.0) {
            Err(Error::Overflow { path, .. }) => assert_eq!(path, "root/1"),
            other => panic!("{other:?}"),
        }
        assert!(f.evaluate(1.0).is_ok());
        let g = p("exp(exp(c)) - exp(exp(c))");
        assert!(matches!(g.evaluate(10.0), Err(Error::Overflow { path, .. }) if path == "root/0"));
    }

    #[test]
    fn scale_is_exact_on_rational_trees() {
        let f = p("q:7/3 * (c * c - q:1/2 * c + 1)");
        let c = rational(5, 2);
        let inner = p("c * c - q:1/2 * c + 1").evaluate_exact(&c).unwrap();
        assert_eq!(f.evaluate_exact(&c).unwrap(), rational(7, 3) * inner);
        assert!(p("exp(c)").evaluate_exact(&c).is_none());
    }

    #[test]
    fn builtins_lie_in_unit_interval() {
        for (name, b) in builtin_examples() {
            for i in 1..=400 {
                let c = i as f64 / 100.0;
                let v = b.limit.evaluate(c).unwrap();
                assert!(v > 0.0 && v <= 1.0, "{name} at {c}: {v}");
            }
        }
    }

    #[test]
    fn builtin_sentences_read_as_described() {
        let b = builtin_examples();
        let tri = Graph::complete(3);
        let spiked = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let pendant_path = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let truth = |k: &str, g: &Graph| check(g, &b[k].sentence).unwrap();
        assert!(!truth("triangle", &tri));
        assert!(truth("triangle", &Graph::cycle(4)));
        assert!(!truth("isolated_triangle", &tri));
        assert!(truth("isolated_triangle", &spiked));
        assert!(!truth("unspiked_triangle", &tri));
        assert!(truth("unspiked_triangle", &spiked));
        // vertex 3 has degree two, so it is not a spike
        assert!(!truth("unspiked_triangle", &pendant_path));
    }

    fn random_tree(seed: u64, depth: usize) -> E {
        use rand::{Rng, SeedableRng};
        fn go(r: &mut rand_chacha::ChaCha8Rng, d: usize) -> E {
            let leaf = d <= 1 || r.random_bool(0.25);
            if leaf {
                return match r.random_range(0..3) {
                    0 => E::Zero,
                    1 => E::One,
                    _ => E::C,
                };
            }
            match r.random_range(0..5) {
                0 => E::sum(go(r, d - 1), go(r, d - 1)),
                1 => E::difference(go(r, d - 1), go(r, d - 1)),
                2 => E::scale(
                    rational(r.random_range(-9..10), r.random_range(1..7)),
                    go(r, d - 1),
                ),
                // keep exponents small so finite differences stay meaningful
                4 if d >= 3 => E::exp(E::scale(rational(1, 4), go(r, d - 2))),
                _ => E::product(go(r, d - 1), go(r, d - 1)),
            }
        }
        go(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), depth)
    }

    fn central_difference(f: &E, c: f64) -> f64 {
        let h = 1e-5;
        (f.evaluate(c + h).unwrap() - f.evaluate(c - h).unwrap()) / (2.0 * h)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-5 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn derivative_matches_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let builtins = builtin_examples();
        let mut trees: Vec<E> = builtins.values().map(|b| b.limit.clone()).collect();
        trees.extend((0..100).map(|s| random_tree(s, 5)));
        for f in &trees {
            assert!(f.depth() <= 5 || builtins.values().any(|b| &b.limit == f));
            let d = f.differentiate();
            for _ in 0..20 {
                let c = r.random_range(0.1..3.0);
                let (exact, approx) = (d.evaluate(c).unwrap(), central_difference(f, c));
                assert!(close(exact, approx), "{f} at {c}: {exact} vs {approx}");
            }
        }
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(seed in any::<u64>(), depth in 1usize..7) {
            let f = random_tree(seed, depth);
            let text = f.to_string();
            prop_assert_eq!(parse(&text).unwrap(), f.clone());
            let d = f.differentiate();
            prop_assert_eq!(parse(&d.to_string()).unwrap(), d);
        }

        #[test]
        fn scale_evaluates_exactly(seed in any::<u64>(), n in -20i64..20, d in 1i64..20, cn in 1i64..50) {
            let mut f = random_tree(seed, 5);
            // strip exponentials so the tree is rational
            fn strip(e: E) -> E {
                match e {
                    E::Exp(_) => E::One,
                    E::Sum(a, b) => E::sum(strip(*a), strip(*b)),
                    E::Difference(a, b) => E::difference(strip(*a), strip(*b)),
                    E::Product(a, b) => E::product(strip(*a), strip(*b)),
                    E::Scale(q, a) => E::scale(q, strip(*a)),
                    leaf => leaf,
                }
            }
            f = strip(f);
            let q = rational(n, d);
            let c = rational(cn, 7);
            let scaled = E::scale(q.clone(), f.clone());
            prop_assert_eq!(scaled.evaluate_exact(&c).unwrap(), q * f.evaluate_exact(&c).unwrap());
        }
    }
}
