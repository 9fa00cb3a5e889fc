//! Second-moment bookkeeping for copies of `H` and `CTK_k` in `G(n, c/n)`:
//! path-count recurrences with their closed bounds, the constants `L` and
//! `M`, first-moment exponents, and an exact oracle for path expectations in
//! a graph with a planted copy.
//!
//! Large and tiny quantities are carried as natural logarithms.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::supercritical::{ctk_counts, path_length, HGraph, LogBase, Relation};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Relative margin of `L` and `M` over their strict lower bounds.
pub const SAFETY_MARGIN: f64 = 0.01;
/// Number of `H`-paths of length `k` from a vertex is at most `PATHS_PER_STEP · k`.
pub const PATHS_PER_STEP: f64 = 50.0;
pub const EXACT_MAX_N: usize = 12;
pub const EXACT_MAX_S: usize = 6;

fn lse(terms: impl IntoIterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub c: f64,
    /// `Σ_{k≥1} 50k c^{-k} = 50c/(c−1)²`.
    pub series: f64,
    pub l: f64,
    pub m1: f64,
    pub m: f64,
    pub margin: f64,
}

/// `L = 1.01(1 + Σ)`, `M1 = L(1 + Σ)`, `M = 1.01 M1`.
pub fn constants_lm(c: f64) -> Result<Constants> {
    if !c.is_finite() || c <= 1.0 {
        return Err(Error::Parameter(format!(
            "the series Σ 50k c^-k diverges for c = {c} <= 1"
        )));
    }
    let series = PATHS_PER_STEP * c / ((c - 1.0) * (c - 1.0));
    let l = (1.0 + SAFETY_MARGIN) * (1.0 + series);
    let m1 = l * (1.0 + series);
    Ok(Constants {
        c,
        series,
        l,
        m1,
        m: (1.0 + SAFETY_MARGIN) * m1,
        margin: SAFETY_MARGIN,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceRow {
    pub s: usize,
    pub ln_x: f64,
    pub ln_x_minus: f64,
    pub ln_y: f64,
    /// `ln X_s = ln(L pˢ nˢ⁻¹)`.
    pub ln_big_x: f64,
    /// `ln X_s⁻ = ln(pˢ nˢ⁻¹ (1 + L m s / n))`.
    pub ln_big_x_minus: f64,
    /// `ln(4 + M pˢ nˢ⁻¹)`.
    pub ln_y_bound: f64,
    pub x_ok: bool,
    pub x_minus_ok: bool,
    pub y_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceTable {
    pub n: f64,
    pub m: f64,
    pub p: f64,
    pub constants: Constants,
    pub rows: Vec<RecurrenceRow>,
}

impl RecurrenceTable {
    pub fn chain_holds(&self) -> bool {
        self.rows.iter().all(|r| r.x_ok && r.x_minus_ok && r.y_ok)
    }

    /// First `s` where some bound fails.
    pub fn first_failure(&self) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| !(r.x_ok && r.x_minus_ok && r.y_ok))
            .map(|r| r.s)
    }

    /// One row per `s`; every value column is a natural logarithm.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("s,ln_x_s,ln_X_s,ln_x_s_minus,ln_X_s_minus,ln_y_s,ln_y_bound,holds\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.s,
                r.ln_x,
                r.ln_big_x,
                r.ln_x_minus,
                r.ln_big_x_minus,
                r.ln_y,
                r.ln_y_bound,
                r.x_ok && r.x_minus_ok && r.y_ok
            )
            .expect("string write");
        }
        out
    }
}

// Absolute slack on log comparisons, for equalities such as x₁ = p.
const LOG_TOL: f64 = 1e-12;

/// Evaluates `x_s⁻`, `x_s`, `y_s` for `s = 1..=s_max` and compares them with
/// their closed bounds. `m` is the size of the planted vertex set.
pub fn compute_recurrences(n: f64, m: f64, p: f64, s_max: usize) -> Result<RecurrenceTable> {
    if !(n >= 1.0 && n.is_finite())
        || !(m >= 0.0 && m.is_finite())
        || !(p > 0.0 && p <= 1.0)
        || s_max == 0
    {
        return Err(Error::Parameter(format!("need n >= 1, m >= 0, 0 < p <= 1, s_max >= 1; got n = {n}, m = {m}, p = {p}, s_max = {s_max}")));
    }
    let constants = constants_lm(p * n)?;
    let (lp, ln, lm) = (
        p.ln(),
        n.ln(),
        if m > 0.0 { m.ln() } else { f64::NEG_INFINITY },
    );
    let l50 = PATHS_PER_STEP.ln();
    // index 0 unused so that vectors are indexed by s
    let (mut x, mut xm, mut y) = (vec![f64::NAN], vec![f64::NAN], vec![f64::NAN]);
    let mut rows = Vec::with_capacity(s_max);
    for s in 1..=s_max {
        let (lxm, lx, ly) = if s == 1 {
            (lp, lp, 0.0)
        } else {
            let lxm = lse([lp + ln + xm[s - 1], lp + lm + x[s - 1]]);
            let lx =
                lse(std::iter::once(lxm).chain((1..s).map(|k| l50 + (k as f64).ln() + xm[s - k])));
            let step = |j: usize| lse([lp + ln + x[j], lp + lm + y[j]]);
            let ly = lse([
                3f64.ln(),
                lp + ln + x[s - 1],
                lp + lm + y[s - 1],
                l50 + (s as f64).ln() + lp,
            ]
            .into_iter()
            .chain((1..s.saturating_sub(1)).map(|k| l50 + (k as f64).ln() + step(s - k - 1))));
            (lxm, lx, ly)
        };
        x.push(lx);
        xm.push(lxm);
        y.push(ly);
        let base = s as f64 * lp + (s - 1) as f64 * ln;
        let ln_big_x = constants.l.ln() + base;
        let ln_big_x_minus = base + (constants.l * m * s as f64 / n).ln_1p();
        let ln_y_bound = lse([4f64.ln(), constants.m.ln() + base]);
        rows.push(RecurrenceRow {
            s,
            ln_x: lx,
            ln_x_minus: lxm,
            ln_y: ly,
            ln_big_x,
            ln_big_x_minus,
            ln_y_bound,
            x_ok: lx <= ln_big_x + LOG_TOL,
            x_minus_ok: lxm <= ln_big_x_minus + LOG_TOL,
            y_ok: ly <= ln_y_bound + LOG_TOL,
        });
    }
    Ok(RecurrenceTable {
        n,
        m,
        p,
        constants,
        rows,
    })
}

/// What a counted configuration looks like, for exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpecKind {
    /// Three hub paths plus `l` pair paths.
    H,
    /// Clean topological `K_k`.
    Ctk { k: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HSpec {
    pub kind: SpecKind,
    pub v: usize,
    pub e: usize,
    pub w: usize,
    /// Pair paths of `H`; `C(k,2)` for `CTK_k`.
    pub l: usize,
    pub k1: Option<f64>,
    pub big_k: Option<usize>,
}

impl HSpec {
    /// Counts of `H` with `w1` AR points and hub/pair path length `w`
    /// (`3 | w1`), without building it.
    pub fn for_w(big_k: usize, w: usize) -> Result<HSpec> {
        if big_k == 0 || w < 2 * big_k || w % big_k != 0 {
            return Err(Error::Parameter(format!(
                "need K >= 1 dividing w >= 2K; got K = {big_k}, w = {w}"
            )));
        }
        let w1 = 3 * (w / big_k - 1) as u64;
        let l = Relation::ALL.iter().map(|r| r.pairs(w1).len()).sum();
        Ok(HSpec {
            kind: SpecKind::H,
            v: 2 + (3 + l) * (w - 1),
            e: (3 + l) * w,
            w,
            l,
            k1: None,
            big_k: Some(big_k),
        })
    }

    /// `H(k1, K, n)`.
    pub fn for_h(k1: f64, big_k: usize, n: f64, base: LogBase) -> Result<HSpec> {
        let mut spec = HSpec::for_w(big_k, path_length(k1, big_k, n, base)?)?;
        spec.k1 = Some(k1);
        Ok(spec)
    }

    pub fn from_hgraph(h: &HGraph) -> HSpec {
        HSpec {
            kind: SpecKind::H,
            v: h.graph.n(),
            e: h.graph.edge_count(),
            w: h.meta.w,
            l: h.meta.l,
            k1: h.meta.k1,
            big_k: Some(h.meta.big_k),
        }
    }

    pub fn for_ctk(k: usize, w: usize) -> Result<HSpec> {
        if k < 2 || w == 0 {
            return Err(Error::Parameter(format!(
                "need k >= 2, w >= 1; got k = {k}, w = {w}"
            )));
        }
        let (v, t) = ctk_counts(k, w);
        Ok(HSpec {
            kind: SpecKind::Ctk { k },
            v,
            e: (v as i64 + t) as usize,
            w,
            l: k * (k - 1) / 2,
            k1: None,
            big_k: None,
        })
    }

    /// `e − v`: `l + 1` for `H`, `t = C(k,2) − k` for `CTK_k`.
    pub fn excess(&self) -> i64 {
        self.e as i64 - self.v as i64
    }

    /// `ε = l / ln n`.
    pub fn eps_eff(&self, n: f64) -> f64 {
        self.l as f64 / n.ln()
    }

    /// `k1` as given, otherwise `w / ln n`.
    pub fn k1_eff(&self, n: f64) -> f64 {
        self.k1.unwrap_or(self.w as f64 / n.ln())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    /// `ln((n)_v pᵉ)`; `-inf` when `v > n`.
    pub ln_exact: f64,
    /// `ln(nᵛ pᵉ) = e ln c − (e − v) ln n`.
    pub ln_asymptotic: f64,
    /// `ln_exact / ln n`.
    pub exponent: f64,
    /// Leading exponent of `n`: `l(k1 ln c − 1)` for `H`,
    /// `k1 C(k,2) ln c − t` for `CTK_k`.
    pub predicted_exponent: f64,
    /// `k1 ln c > 1`.
    pub growth_condition: bool,
    pub warning: Option<String>,
}

/// `ln (n)_v = v ln n + Σ ln(1 − i/n)`.
fn ln_falling(n: f64, v: usize) -> f64 {
    if v as f64 > n {
        return f64::NEG_INFINITY;
    }
    v as f64 * n.ln() + (0..v).map(|i| (-(i as f64) / n).ln_1p()).sum::<f64>()
}

/// First moment of the number of (not necessarily induced) labelled copies.
pub fn expectation_ex(spec: &HSpec, n: f64, c: f64) -> Result<Expectation> {
    if !(n > 1.0 && n.is_finite()) || !(c > 0.0 && c < n) {
        return Err(Error::Parameter(format!(
            "need n > 1 and 0 < c < n; got n = {n}, c = {c}"
        )));
    }
    let ln_p = (c / n).ln();
    let ln_exact = ln_falling(n, spec.v) + spec.e as f64 * ln_p;
    let k1 = spec.k1_eff(n);
    let predicted_exponent = match spec.kind {
        SpecKind::H => spec.l as f64 * (k1 * c.ln() - 1.0),
        SpecKind::Ctk { .. } => k1 * spec.l as f64 * c.ln() - spec.excess() as f64,
    };
    let growth_condition = k1 * c.ln() > 1.0;
    Ok(Expectation {
        ln_exact,
        ln_asymptotic: spec.e as f64 * c.ln() - spec.excess() as f64 * n.ln(),
        exponent: ln_exact / n.ln(),
        predicted_exponent,
        growth_condition,
        warning: (!growth_condition).then(|| {
            format!(
                "k1 ln c = {:.4} <= 1: the expected count is not a growing power of n",
                k1 * c.ln()
            )
        }),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlusOneEdge {
    /// Non-edges of the configuration, `C(v,2) − e`.
    pub addable: f64,
    /// `E[X⁺] / E[X] = addable · p`.
    pub ratio: f64,
    /// `ratio < 1/2`, so Markov leaves room for an induced copy.
    pub below_half: bool,
}

pub fn plus_one_edge_expectation(spec: &HSpec, n: f64, c: f64) -> Result<PlusOneEdge> {
    if !(n > 1.0 && n.is_finite()) || !(c > 0.0 && c < n) {
        return Err(Error::Parameter(format!(
            "need n > 1 and 0 < c < n; got n = {n}, c = {c}"
        )));
    }
    let v = spec.v as f64;
    let addable = v * (v - 1.0) / 2.0 - spec.e as f64;
    let ratio = addable * c / n;
    Ok(PlusOneEdge {
        addable,
        ratio,
        below_half: ratio < 0.5,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapBound {
    pub constants: Constants,
    pub eps_eff: f64,
    /// `ln(M^l / n)`: the overlapping contribution relative to `E[X]`.
    pub ln_ratio: f64,
    /// `−1 + ε ln M`, the power of `n` in that ratio.
    pub exponent: f64,
    /// `ε ln M < 1`.
    pub condition: bool,
    /// `(1 + ln³n / n)^l`, the non-overlapping main-term factor.
    pub main_term_factor: f64,
}

pub fn overlap_contribution_bound(spec: &HSpec, n: f64, c: f64) -> Result<OverlapBound> {
    if !(n > 1.0 && n.is_finite()) {
        return Err(Error::Parameter(format!("need n > 1, got {n}")));
    }
    let constants = constants_lm(c)?;
    let ln_n = n.ln();
    let eps_eff = spec.eps_eff(n);
    let l = spec.l as f64;
    Ok(OverlapBound {
        constants,
        eps_eff,
        ln_ratio: l * constants.m.ln() - ln_n,
        exponent: -1.0 + eps_eff * constants.m.ln(),
        condition: eps_eff * constants.m.ln() < 1.0,
        main_term_factor: (l * (ln_n.powi(3) / n).ln_1p()).exp(),
    })
}

/// `(1 − e^{−c})^{l/8}`: an upper bound on the probability that a fixed copy
/// of `H⁻` extends at all, small even when the expected number of extensions
/// is huge.
pub fn extension_probability_bound(c: f64, l: usize) -> f64 {
    (1.0 - (-c).exp()).powf(l as f64 / 8.0)
}

/// Expected number of paths of length `s` from `a` to `b` in `G*`: vertices
/// `0..n`, the edges of `planted` (on `0..planted.n()`) present surely, every
/// other pair with probability `p`. Exhaustive over vertex sequences.
pub fn exact_path_expectation(
    n: usize,
    planted: &Graph,
    p: f64,
    a: usize,
    b: usize,
    s: usize,
) -> Result<f64> {
    if n > EXACT_MAX_N || s > EXACT_MAX_S {
        return Err(Error::Capability(format!("exact path expectation is limited to n <= {EXACT_MAX_N}, s <= {EXACT_MAX_S}; got n = {n}, s = {s}")));
    }
    if planted.n() > n || a >= n || b >= n || a == b || s == 0 || !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("need distinct a, b < n, s >= 1, a planted graph on at most n vertices; got a = {a}, b = {b}, s = {s}")));
    }
    let weight = |u: usize, v: usize| {
        if u < planted.n() && v < planted.n() && planted.has_edge(u, v) {
            1.0
        } else {
            p
        }
    };
    fn extend(
        n: usize,
        b: usize,
        left: usize,
        u: usize,
        used: &mut [bool],
        weight: &dyn Fn(usize, usize) -> f64,
    ) -> f64 {
        if left == 1 {
            return weight(u, b);
        }
        let mut total = 0.0;
        for v in 0..n {
            if !used[v] && v != b {
                used[v] = true;
                total += weight(u, v) * extend(n, b, left - 1, v, used, weight);
                used[v] = false;
            }
        }
        total
    }
    let mut used = vec![false; n];
    used[a] = true;
    Ok(extend(n, b, s, a, &mut used, &weight))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSummary {
    pub n: f64,
    pub c: f64,
    pub shape: HSpec,
    pub expectation: Expectation,
    pub plus_one_edge: PlusOneEdge,
    pub overlap: OverlapBound,
    /// Recurrences at `m = v` and `s_max = w`.
    pub bound_chain: bool,
    pub bound_chain_first_failure: Option<usize>,
}

/// Every first- and second-moment constraint for one configuration.
pub fn constraint_summary(spec: &HSpec, n: f64, c: f64) -> Result<ConstraintSummary> {
    let table = compute_recurrences(n, spec.v as f64, c / n, spec.w.max(1))?;
    Ok(ConstraintSummary {
        n,
        c,
        shape: spec.clone(),
        expectation: expectation_ex(spec, n, c)?,
        plus_one_edge: plus_one_edge_expectation(spec, n, c)?,
        overlap: overlap_contribution_bound(spec, n, c)?,
        bound_chain: table.chain_holds(),
        bound_chain_first_failure: table.first_failure(),
    })
}
