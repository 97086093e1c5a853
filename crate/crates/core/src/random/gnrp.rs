use rand::Rng;

use super::rng::rng_from_seed;
use crate::error::{Error, Result};
use crate::hypergraph::combin::{binomial, colex_unrank};
use crate::hypergraph::Hypergraph;

/// Samples `G(n, r, p)`: every r-subset of `{1..n}` is an edge independently
/// with probability `p`.
///
/// Subsets are visited in colex order and the gaps between successive
/// included subsets are drawn from the geometric distribution, so the cost
/// is proportional to the number of edges produced rather than to `C(n, r)`.
/// Edges are numbered in increasing colex rank.
pub fn gnrp_sample(n: usize, r: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange(format!("p = {p} is not a probability")));
    }
    let mut h = Hypergraph::empty(n, r)?;
    let total = binomial(n as u64, r as u64);
    if total == u64::MAX {
        return Err(Error::ParameterOutOfRange(format!("C({n}, {r}) overflows u64")));
    }
    if p == 0.0 {
        return Ok(h);
    }
    if p == 1.0 {
        for rank in 0..total {
            h.add_edge(&colex_unrank(rank, r))?;
        }
        return Ok(h);
    }
    let mut rng = rng_from_seed(seed);
    let log_q = (-p).ln_1p();
    let mut next: u64 = 0;
    loop {
        // u in (0, 1]
        let u = 1.0 - rng.gen::<f64>();
        let skip = (u.ln() / log_q).floor();
        if skip >= (total - next) as f64 {
            break;
        }
        next += skip as u64;
        h.add_edge(&colex_unrank(next, r))?;
        next += 1;
        if next >= total {
            break;
        }
    }
    Ok(h)
}
