//! The top-weight gl(N) weight system as a signed sum over B-states.
//!
//! Every state contributes `(-1)^{|s|}` times the monomial of its face
//! profile. States are enumerated by a binary counter over the free vertices
//! and summed in fixed-size chunks, so the result does not depend on how
//! chunks are spread over workers.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use smallvec::SmallVec;

use crate::casimir::{CasimirMonomial, CasimirPoly, Indices};
use crate::diagram::{Diagram, RibbonGraph};
use crate::error::{Error, Result};

pub const DEFAULT_STATE_CAP: usize = 24;

/// Masks are 64-bit, and per-chunk counters are `i64`.
const HARD_STATE_LIMIT: usize = 62;

const CHUNK_BITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateSumOptions {
    /// Maximum number of vertices summed over (2^cap states).
    pub max_vertices: usize,
    /// Worker count; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for StateSumOptions {
    fn default() -> Self {
        StateSumOptions { max_vertices: DEFAULT_STATE_CAP, jobs: None }
    }
}

impl StateSumOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        StateSumOptions { jobs: Some(jobs), ..Self::default() }
    }
}

type Partial = HashMap<Indices, i64>;

fn merge(mut a: Partial, b: Partial) -> Partial {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn sum_chunk(graph: &RibbonGraph, free: &[usize], chunk: u64, chunk_len: u64) -> Partial {
    let mut scratch = graph.scratch();
    let mut counts: Indices = SmallVec::new();
    let mut acc = Partial::new();
    for x in chunk * chunk_len..(chunk + 1) * chunk_len {
        let mut mask = 0u64;
        for (bit, &v) in free.iter().enumerate() {
            mask |= (x >> bit & 1) << v;
        }
        graph.face_profile(mask, &mut scratch, &mut counts);
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        match acc.get_mut(&counts) {
            Some(c) => *c += sign,
            None => {
                acc.insert(counts.clone(), sign);
            }
        }
    }
    acc
}

/// Signed sum over all states that are `+1` outside `free` and arbitrary on `free`.
fn signed_sum(graph: &RibbonGraph, free: &[usize], opts: &StateSumOptions) -> Result<CasimirPoly> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let cap = opts.max_vertices.min(HARD_STATE_LIMIT);
    if free.len() > cap {
        return Err(Error::StateCapExceeded { vertices: free.len(), cap });
    }
    let total_bits = free.len();
    let chunk_bits = CHUNK_BITS.min(total_bits);
    let chunk_len = 1u64 << chunk_bits;
    let chunks = 1u64 << (total_bits - chunk_bits);

    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(|c| sum_chunk(graph, free, c, chunk_len))
            .reduce(Partial::new, merge)
    };
    let partial = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };

    let mut out = CasimirPoly::zero();
    for (idx, c) in partial {
        out.add_term(CasimirMonomial::from_sorted(idx), BigInt::from(c));
    }
    Ok(out)
}

/// `oW_gl(d)`: the signed sum over all `2^t` states of `Ω(F(d, s))`.
pub fn o_w_gl(d: &Diagram) -> Result<CasimirPoly> {
    o_w_gl_with(&RibbonGraph::new(d)?, &StateSumOptions::default())
}

pub fn o_w_gl_with(graph: &RibbonGraph, opts: &StateSumOptions) -> Result<CasimirPoly> {
    let all: Vec<usize> = (0..graph.trivalent_count()).collect();
    signed_sum(graph, &all, opts)
}

/// Top homogeneous part of [`o_w_gl`]; equivalently the genus-0 states.
pub fn cd(d: &Diagram) -> Result<CasimirPoly> {
    cd_with(&RibbonGraph::new(d)?, &StateSumOptions::default())
}

pub fn cd_with(graph: &RibbonGraph, opts: &StateSumOptions) -> Result<CasimirPoly> {
    o_w_gl_with(graph, opts)?.top_homogeneous_part()
}

/// Twice the signed sum over states with every proper vertex fixed to `+1`.
///
/// Equals [`cd`] when the underlying cubic graph is planar, 3-connected and
/// embedded as given. That hypothesis is not checked here.
pub fn cd_fast(d: &Diagram) -> Result<CasimirPoly> {
    cd_fast_with(&RibbonGraph::new(d)?, &StateSumOptions::default())
}

pub fn cd_fast_with(graph: &RibbonGraph, opts: &StateSumOptions) -> Result<CasimirPoly> {
    if graph.proper_count() == 0 {
        return Err(Error::NoProperVertices);
    }
    let free: Vec<usize> = graph
        .proper_vertices()
        .iter()
        .enumerate()
        .filter(|(_, &p)| !p)
        .map(|(i, _)| i)
        .collect();
    Ok(signed_sum(graph, &free, opts)?.scale(&BigInt::from(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramBuilder;

    fn theta() -> Diagram {
        let mut b = DiagramBuilder::new();
        let x = b.trivalent();
        let y = b.trivalent();
        // x = [p, q, r] ccw; the mirror order at y keeps the drawing planar
        b.edge(x[0], y[0]);
        b.edge(x[1], y[2]);
        b.edge(x[2], y[1]);
        b.build()
    }

    #[test]
    fn strut_weight() {
        let p = o_w_gl(&Diagram::strut()).unwrap();
        assert_eq!(p, CasimirPoly::from_pairs([(1, vec![2])]));
    }

    #[test]
    fn theta_without_legs() {
        // two planar states give c_0^3, the two genus-1 states give -c_0
        let p = o_w_gl(&theta()).unwrap();
        assert_eq!(p, CasimirPoly::from_pairs([(2, vec![0, 0, 0]), (-2, vec![0])]));
        assert_eq!(cd(&theta()).unwrap(), CasimirPoly::from_pairs([(2, vec![0, 0, 0])]));
        assert_eq!(cd_fast(&theta()).unwrap(), cd(&theta()).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let g = RibbonGraph::new(&theta()).unwrap();
        let opts = StateSumOptions { max_vertices: 1, jobs: None };
        assert_eq!(
            o_w_gl_with(&g, &opts),
            Err(Error::StateCapExceeded { vertices: 2, cap: 1 })
        );
    }

    #[test]
    fn jobs_do_not_change_result() {
        let g = RibbonGraph::new(&theta()).unwrap();
        let a = o_w_gl_with(&g, &StateSumOptions::with_jobs(1)).unwrap();
        let b = o_w_gl_with(&g, &StateSumOptions::with_jobs(3)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
