//! Brute-force isomorphism test for small graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`are_isomorphic`].
pub const ISO_CAP: usize = 12;

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    dg: Vec<usize>,
    dh: Vec<usize>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.h.order() {
            if self.used[w] || self.dg[v] != self.dh[w] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.g.has_edge(u, v) == self.h.has_edge(self.map[u], w));
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
        }
        false
    }
}

/// Backtracking over vertex maps that preserve degrees, visiting the
/// vertices of `g` by decreasing degree.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    let n = g.order();
    if n.max(h.order()) > ISO_CAP {
        return Err(Error::TooLarge {
            what: "graph order for isomorphism testing",
            limit: ISO_CAP,
            actual: n.max(h.order()),
        });
    }
    if n != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let (dg, dh) = (g.degrees(), h.degrees());
    let (mut sg, mut sh) = (dg.clone(), dh.clone());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(false);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(dg[v]));
    let mut m = Matcher {
        g,
        h,
        order,
        map: vec![0; n],
        used: vec![false; n],
        dg,
        dh,
    };
    Ok(m.extend(0))
}
