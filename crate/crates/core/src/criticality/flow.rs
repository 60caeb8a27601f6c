//! Exact integral max-flow (Dinic) and feasibility of flows with lower bounds.

use std::collections::VecDeque;

#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            ..Default::default()
        }
    }

    /// Adds arc `u -> v`; returns its id. The paired reverse arc is `id ^ 1`.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.adj[u].push(id);
        self.to.push(v);
        self.cap.push(cap);
        self.adj[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    /// Flow currently routed on arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.cap[id ^ 1]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level = vec![-1; self.adj.len()];
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.iter[u] < self.adj[u].len() {
            let e = self.adj[u][self.iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, pushed.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter = vec![0; self.adj.len()];
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Arc with `lower <= flow <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedArc {
    pub from: usize,
    pub to: usize,
    pub lower: i64,
    pub upper: i64,
}

/// Finds an integral `s`-`t` flow respecting every arc's bounds, or `None`.
///
/// Standard reduction: an uncapacitated `t -> s` return arc closes the flow
/// into a circulation; each lower bound `l` on `u -> v` becomes capacity
/// `upper - l` plus a demand of `l` at `v` and a supply of `l` at `u`, which
/// a super source and super sink must be able to saturate.
pub fn feasible_flow(nodes: usize, arcs: &[BoundedArc], s: usize, t: usize) -> Option<Vec<i64>> {
    let (ss, tt) = (nodes, nodes + 1);
    let mut net = FlowNetwork::new(nodes + 2);
    let mut excess = vec![0i64; nodes];
    let ids: Vec<usize> = arcs
        .iter()
        .map(|a| {
            debug_assert!(0 <= a.lower && a.lower <= a.upper);
            excess[a.to] += a.lower;
            excess[a.from] -= a.lower;
            net.add_arc(a.from, a.to, a.upper - a.lower)
        })
        .collect();
    let total_cap: i64 = arcs.iter().map(|a| a.upper).sum();
    net.add_arc(t, s, total_cap.max(1));
    let mut demand = 0;
    for (v, &ex) in excess.iter().enumerate() {
        if ex > 0 {
            net.add_arc(ss, v, ex);
            demand += ex;
        } else if ex < 0 {
            net.add_arc(v, tt, -ex);
        }
    }
    if net.max_flow(ss, tt) != demand {
        return None;
    }
    Some(
        arcs.iter()
            .zip(ids)
            .map(|(a, id)| a.lower + net.flow(id))
            .collect(),
    )
}
