//! Conventions fixed by Monte Carlo adjudication.

use crate::local_limit::LambdaConvention;

/// Convention for the Poisson mean of a cycle-neighbourhood count.
///
/// The labelled-embedding count `c^v e^{-wc} / |Aut H|` matches simulated
/// `G(n, c/n)` censuses; the variant with an extra `1/v!` underestimates the
/// bare-triangle mean by a factor of 6 and is rejected by the census test
/// `local_limit::tests::census_adjudicates_lambda_convention`.
pub const DEFAULT_LAMBDA_CONVENTION: LambdaConvention = LambdaConvention::LabeledEmbedding;

/// Default standard-error multiplier for census pass/fail flags.
pub const DEFAULT_STDERR_MULTIPLIER: f64 = 3.0;
