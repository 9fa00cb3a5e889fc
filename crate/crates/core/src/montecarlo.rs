//! Seeded Monte Carlo drivers.
//!
//! Trial `i` always draws from [`crate::rng::stream`]`(seed, i)` and results
//! are reduced in trial order, so every statistic is bit-identical for any
//! thread count.

use crate::error::{Error, Result};
use crate::graph::{sample_gnp, GnpParams, Graph};
use crate::logic::{CheckOptions, Compiled, Sentence};
use crate::rng::{stream, stream_seed, StreamRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Runs `f(i, rng_i)` for `i in 0..trials` and returns results in index order.
///
/// `threads = None` uses the global rayon pool; `Some(k)` builds a pool of
/// `k` workers (`k = 1` runs sequentially).
pub fn run_trials<T, F>(seed: u64, trials: u64, threads: Option<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &mut StreamRng) -> T + Sync + Send,
{
    let job = || {
        (0..trials)
            .into_par_iter()
            .map(|i| f(i, &mut stream(seed, i)))
            .collect::<Vec<T>>()
    };
    match threads {
        None => Ok(job()),
        Some(0) => Err(Error::Parameter("thread count must be positive".into())),
        Some(1) => Ok((0..trials).map(|i| f(i, &mut stream(seed, i))).collect()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// The seed of the graph used in trial `i`; `G(n, c/n)` samplers are seeded
/// with this so a trial's graph can be regenerated on its own.
pub fn trial_seed(seed: u64, i: u64) -> u64 {
    stream_seed(seed, i)
}

/// Samples the graph of trial `i`.
pub fn trial_graph(n: usize, c: f64, seed: u64, i: u64) -> Result<Graph> {
    sample_gnp(&GnpParams::new(n, c, trial_seed(seed, i))?)
}

/// Streaming mean/variance; merging is done in a fixed order by callers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub count: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl FromIterator<f64> for Moments {
    fn from_iter<I: IntoIterator<Item = f64>>(xs: I) -> Self {
        let mut m = Moments::default();
        xs.into_iter().for_each(|x| m.push(x));
        m
    }
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum / self.count as f64
        }
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        ((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0)
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            return f64::INFINITY;
        }
        (self.variance() / self.count as f64).sqrt()
    }
}

/// Sample covariance of paired observations and its standard error.
///
/// The error is the larger of the products' spread and the independence value
/// `sqrt(Var x Var y / n)`; the spread alone collapses when `x` and `y` are
/// rarely nonzero together.
pub fn covariance(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return (0.0, f64::INFINITY);
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let prods: Vec<f64> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .collect();
    let m = Moments::from_iter(prods.iter().copied());
    let var =
        |zs: &[f64], mz: f64| zs.iter().map(|z| (z - mz).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    let null = (var(xs, mx) * var(ys, my) / n as f64).sqrt();
    (m.sum / (n as f64 - 1.0), m.stderr().max(null))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityEstimate {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub stderr: f64,
    /// 95% Wilson score interval.
    pub wilson: (f64, f64),
}

impl ProbabilityEstimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        let n = trials.max(1) as f64;
        let p = successes as f64 / n;
        let z = 1.959963984540054;
        let denom = 1.0 + z * z / n;
        let centre = (p + z * z / (2.0 * n)) / denom;
        let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
        ProbabilityEstimate {
            successes,
            trials,
            estimate: p,
            stderr: (p * (1.0 - p) / n).sqrt(),
            wilson: ((centre - half).max(0.0), (centre + half).min(1.0)),
        }
    }
}

/// Estimates `Pr[G(n, c/n) ⊨ sentence]`.
pub fn estimate_probability(
    sentence: &Sentence,
    n: usize,
    c: f64,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
    opts: &CheckOptions,
) -> Result<ProbabilityEstimate> {
    GnpParams::new(n, c, seed)?.p()?;
    let compiled = Compiled::new(sentence)?;
    let outcomes = run_trials(seed, trials, threads, |i, _| {
        let g = trial_graph(n, c, seed, i)?;
        compiled.eval(&g, &Default::default(), opts)
    })?;
    let mut successes = 0;
    for o in outcomes {
        successes += o? as u64;
    }
    Ok(ProbabilityEstimate::from_counts(successes, trials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;
    use rand::Rng;

    #[test]
    fn thread_count_does_not_change_results() {
        let f = |_: u64, r: &mut StreamRng| r.random::<u64>();
        let one = run_trials(7, 500, Some(1), f).unwrap();
        let four = run_trials(7, 500, Some(4), f).unwrap();
        let global = run_trials(7, 500, None, f).unwrap();
        assert_eq!(one, four);
        assert_eq!(one, global);
        assert!(run_trials(7, 5, Some(0), f).is_err());
    }

    #[test]
    fn moments_of_known_sample() {
        let m = Moments::from_iter([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.mean(), 2.5);
        assert!((m.variance() - 5.0 / 3.0).abs() < 1e-12);
        let (cov, _) = covariance(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]);
        assert!((cov - 2.0).abs() < 1e-12);
    }

    #[test]
    fn covariance_error_survives_disjoint_support() {
        // x and y never nonzero together: products have almost no spread
        let mut xs = vec![0.0; 100];
        let mut ys = vec![0.0; 100];
        xs[0] = 1.0;
        ys[1] = 1.0;
        let (cov, se) = covariance(&xs, &ys);
        assert!((cov + 1.0 / 9900.0).abs() < 1e-15);
        let null = (0.01f64 * 0.01 / 100.0).sqrt();
        assert!((se - null).abs() < 1e-12, "{se} vs {null}");
        assert!(cov.abs() <= 2.0 * se);
    }

    #[test]
    fn wilson_interval_brackets_estimate() {
        let e = ProbabilityEstimate::from_counts(30, 100);
        assert!(e.wilson.0 < 0.3 && 0.3 < e.wilson.1);
        let z = ProbabilityEstimate::from_counts(0, 50);
        assert!(z.wilson.0 < 1e-12);
        assert!(z.wilson.1 > 0.0);
    }

    #[test]
    fn edge_existence_probability() {
        // Pr[some edge] in G(4, 1/2) = 1 - 2^-6
        let s = parse("exists x. exists y. x ~ y").unwrap();
        let e = estimate_probability(&s, 4, 2.0, 4000, 3, None, &CheckOptions::default()).unwrap();
        assert!((e.estimate - (1.0 - 1.0 / 64.0)).abs() < 4.0 * e.stderr.max(0.002));
    }
}
