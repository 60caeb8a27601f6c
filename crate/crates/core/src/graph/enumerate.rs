//! Labeled (not isomorphism-reduced) enumeration of small graphs.

use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`enumerate_graphs`]; `2^28` edge subsets.
pub const ENUMERATION_CAP: usize = 8;

/// Every labeled graph on `n` vertices, in ascending order of the edge-subset
/// integer whose bit `i` is the `i`-th vertex pair in graph6 order.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<EnumerateGraphs> {
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            what: "enumeration order",
            limit: ENUMERATION_CAP,
            actual: n,
        });
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Ok(EnumerateGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next: 0,
        connected_only,
    })
}

#[derive(Debug, Clone)]
pub struct EnumerateGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
    connected_only: bool,
}

impl Iterator for EnumerateGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let code = self.next;
            self.next += 1;
            let mut g = Graph::empty(self.n);
            for (i, &(u, v)) in self.pairs.iter().enumerate() {
                if code >> i & 1 == 1 {
                    g.set(u, v, true);
                }
            }
            if !self.connected_only || (self.n > 0 && g.components().len() == 1) {
                return Some(g);
            }
        }
        None
    }
}
