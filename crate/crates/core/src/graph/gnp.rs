use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, StreamRng};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    pub c: f64,
    pub seed: u64,
}

impl GnpParams {
    pub fn new(n: usize, c: f64, seed: u64) -> Result<Self> {
        let p = GnpParams { n, c, seed };
        p.p()?;
        Ok(p)
    }

    /// Edge probability `c / n`.
    pub fn p(&self) -> Result<f64> {
        if self.n == 0 {
            return Err(Error::Parameter("n must be at least 1".into()));
        }
        if !self.c.is_finite() || self.c < 0.0 {
            return Err(Error::Parameter(format!(
                "c = {} must be a finite non-negative real",
                self.c
            )));
        }
        let p = self.c / self.n as f64;
        if p > 1.0 {
            return Err(Error::Parameter(format!("c/n = {p} exceeds 1")));
        }
        Ok(p)
    }
}

/// Samples `G(n, c/n)` from the stream seeded by `params.seed`.
pub fn sample_gnp(params: &GnpParams) -> Result<Graph> {
    let p = params.p()?;
    let mut rng = rng_from_seed(params.seed);
    Ok(sample_with(params.n, p, &mut rng))
}

/// Geometric skipping over the `C(n,2)` pairs in row-major order.
pub(crate) fn sample_with(n: usize, p: f64, rng: &mut StreamRng) -> Graph {
    let mut b = GraphBuilder::new(n);
    if n < 2 || p <= 0.0 {
        return b.build();
    }
    if p >= 1.0 {
        return Graph::complete(n);
    }
    let log_q = (-p).ln_1p();
    let (mut u, mut v) = (0usize, 0usize);
    loop {
        let r: f64 = 1.0 - rng.random::<f64>();
        let skip = (r.ln() / log_q).floor();
        if skip >= (n * n) as f64 {
            break;
        }
        v += skip as usize + 1;
        while v >= n && u + 1 < n {
            let over = v - n;
            u += 1;
            v = u + 1 + over;
        }
        if u + 1 >= n {
            break;
        }
        b.add_edge(u, v).expect("each pair visited once");
    }
    b.build()
}
