//! Supercritical constructions: the arithmetized graph `H`, tower/wow
//! arithmetic, the sentence `A_K` read procedurally, clean topological
//! cliques and theta configurations.

pub mod ak;
pub mod arith;
pub mod ctk;
pub mod hgraph;
pub mod theta;

pub use ak::{
    eval_ak_semantic, eval_ak_semantic_h, AkOutcome, AkScope, AkSearchOptions, AkWitness,
};
pub use arith::{exp2, tower, wow, wow_inv, BigValue};
pub use ctk::{build_ctk, ctk_counts, detect_ctk, is_ctk_witness, CtkOutcome, CtkWitness};
pub use hgraph::{
    build_h, build_h_by_w1, path_length, verify_arithmetization, ArithmetizationReport, HGraph,
    HMetadata, LogBase, PairPath, Relation,
};
pub use theta::{min_theta, min_theta_size, Theta};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonconvergenceOptions {
    pub k1: f64,
    /// `log n` values of the rows, in `base`.
    pub log_n: Vec<f64>,
    pub base: LogBase,
    /// Rows whose `H` has at most this many vertices also get the exhaustive
    /// evaluation; 0 disables it.
    pub exhaustive_max_vertices: usize,
    pub budget: u64,
}

impl Default for NonconvergenceOptions {
    fn default() -> Self {
        NonconvergenceOptions {
            k1: 5.0,
            log_n: (1..=32).map(|j| 0.25 * j as f64).collect(),
            base: LogBase::E,
            exhaustive_max_vertices: ak::AK_GENERIC_MAX_VERTICES,
            budget: ak::AK_DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    /// Budget or size cap reached.
    Unknown,
}

impl From<Result<bool>> for Verdict {
    fn from(r: Result<bool>) -> Self {
        match r {
            Ok(true) => Verdict::True,
            Ok(false) => Verdict::False,
            Err(_) => Verdict::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonconvergenceRow {
    pub log_n: f64,
    pub w: usize,
    /// `None` when `w < 2K` leaves no room for `H`.
    pub w1: Option<u64>,
    pub wow_inv: Option<u64>,
    /// `A_K` predicted on the planted `H`: `wow_inv(w1)` even.
    pub predicted: Option<bool>,
    pub planted: Option<Verdict>,
    pub exhaustive: Option<Verdict>,
    /// `|AR|` of the exhaustive witness; differs from `w1` when another
    /// window-valid AR was found.
    pub exhaustive_ar_size: Option<usize>,
    pub h_vertices: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonconvergenceReport {
    pub c: f64,
    pub big_k: usize,
    pub k1: f64,
    /// `k1 ln c > 1`, needed for `H` to appear in `G(n, c/n)`.
    pub growth_condition: bool,
    pub rows: Vec<NonconvergenceRow>,
    /// `log n` of rows predicted true and false.
    pub even_subsequence: Vec<f64>,
    pub odd_subsequence: Vec<f64>,
    /// `w1` values where `wow_inv` steps, up to the largest `w1` seen.
    pub wow_steps: Vec<u64>,
    /// Rows where the planted evaluation disagrees with the prediction.
    pub mismatches: Vec<usize>,
    /// Rows predicted false where the exhaustive search satisfied `A_K`
    /// through a different AR.
    pub alternative_ar_rows: Vec<usize>,
}

/// For each `log n`, builds `H(k1, K, n)` and compares `A_K` on it with the
/// parity of `wow_inv(w1)`.
pub fn nonconvergence_demo(
    c: f64,
    big_k: usize,
    opts: &NonconvergenceOptions,
) -> Result<NonconvergenceReport> {
    if !(c > 1.0 && c.is_finite()) {
        return Err(Error::Parameter(format!(
            "the demonstration needs c > 1, got {c}"
        )));
    }
    if big_k == 0 {
        return Err(Error::Parameter("K must be positive".into()));
    }
    let mut rows = Vec::new();
    for &log_n in &opts.log_n {
        let n = opts.base.exp(log_n);
        let w = path_length(opts.k1, big_k, n, opts.base)?;
        let mut row = NonconvergenceRow {
            log_n,
            w,
            w1: None,
            wow_inv: None,
            predicted: None,
            planted: None,
            exhaustive: None,
            exhaustive_ar_size: None,
            h_vertices: None,
        };
        if w >= 2 * big_k {
            let h = build_h(opts.k1, big_k, n, opts.base)?;
            let inv = wow_inv(h.meta.w1)?;
            row.w1 = Some(h.meta.w1);
            row.wow_inv = Some(inv);
            row.predicted = Some(inv % 2 == 0);
            row.h_vertices = Some(h.graph.n());
            row.planted = Some(eval_ak_semantic_h(&h, opts.budget).map(|o| o.holds).into());
            if h.graph.n() <= opts.exhaustive_max_vertices {
                let search = AkSearchOptions {
                    max_vertices: opts.exhaustive_max_vertices,
                    budget: opts.budget,
                };
                let out = eval_ak_semantic(&h.graph, big_k, &search);
                row.exhaustive_ar_size = out
                    .as_ref()
                    .ok()
                    .and_then(|o| o.witness.as_ref())
                    .map(|w| w.ar.len());
                row.exhaustive = Some(out.map(|o| o.holds).into());
            }
        }
        rows.push(row);
    }
    let pick = |want: bool| {
        rows.iter()
            .filter(|r| r.predicted == Some(want))
            .map(|r| r.log_n)
            .collect()
    };
    let max_w1 = rows.iter().filter_map(|r| r.w1).max().unwrap_or(0);
    let wow_steps = (1..)
        .map_while(|x| {
            wow(x)
                .ok()
                .and_then(|v| v.to_u64())
                .filter(|&v| v <= max_w1)
        })
        .collect();
    let mismatches = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| {
            let want = r
                .predicted
                .map(|p| if p { Verdict::True } else { Verdict::False });
            r.planted.is_some() && r.planted != want
        })
        .map(|(i, _)| i)
        .collect();
    let alternative_ar_rows = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.predicted == Some(false) && r.exhaustive == Some(Verdict::True))
        .map(|(i, _)| i)
        .collect();
    Ok(NonconvergenceReport {
        c,
        big_k,
        k1: opts.k1,
        growth_condition: opts.k1 * c.ln() > 1.0,
        even_subsequence: pick(true),
        odd_subsequence: pick(false),
        rows,
        wow_steps,
        mismatches,
        alternative_ar_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_subcritical_c() {
        assert!(nonconvergence_demo(1.0, 2, &NonconvergenceOptions::default()).is_err());
        assert!(nonconvergence_demo(0.5, 2, &NonconvergenceOptions::default()).is_err());
    }

    #[test]
    fn planted_rows_follow_parity() {
        let opts = NonconvergenceOptions {
            exhaustive_max_vertices: 0,
            log_n: vec![0.2, 0.8, 1.6, 2.4, 4.0],
            ..Default::default()
        };
        let r = nonconvergence_demo(2.0, 2, &opts).unwrap();
        assert!(r.growth_condition);
        assert_eq!(r.rows[0].w1, None);
        assert_eq!(r.rows[1].w1, Some(3));
        assert_eq!(r.rows[1].predicted, Some(false));
        assert!(r.rows[2..].iter().all(|row| row.predicted == Some(true)));
        assert!(r.rows.iter().all(|row| row.exhaustive.is_none()));
        assert!(r.mismatches.is_empty(), "{:?}", r.rows);
        assert!(!r.even_subsequence.is_empty() && !r.odd_subsequence.is_empty());
        assert_eq!(r.wow_steps, vec![2, 4]);
    }

    #[test]
    fn exhaustive_column_reports_alternative_ar() {
        // log n = 0.8 gives w = 4, w1 = 3 and a 23-vertex H at K = 2
        let opts = NonconvergenceOptions {
            log_n: vec![0.8],
            ..Default::default()
        };
        let r = nonconvergence_demo(2.0, 2, &opts).unwrap();
        let row = &r.rows[0];
        assert_eq!((row.w1, row.h_vertices), (Some(3), Some(23)));
        assert_eq!(row.planted, Some(Verdict::False));
        assert_eq!(row.exhaustive, Some(Verdict::True));
        assert!(row.exhaustive_ar_size.unwrap() > 3);
        assert_eq!(r.alternative_ar_rows, vec![0]);
        assert!(r.mismatches.is_empty());
    }
}
