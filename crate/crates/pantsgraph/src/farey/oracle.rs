//! Brute-force BFS reference for the Farey metric.
//!
//! Builds the determinant-+-1 adjacency on all slopes p/q with q and |p|
//! bounded, and answers distance and geodesic queries by plain breadth-first
//! search.  This is the independent oracle the fast continued-fraction code
//! is validated against; it deliberately shares nothing with that code path.
//! The truncation is validated by re-running with the bound doubled and
//! checking that no answer changes.

use std::collections::{HashMap, VecDeque};

use super::Slope;

type S = Slope<i64>;

pub struct FareyOracle {
    bound: i64,
    verts: Vec<S>,
    idx: HashMap<S, usize>,
    adj: Vec<Vec<usize>>,
}

impl FareyOracle {
    /// Graph on { p/q : 0 <= q <= bound, |p| <= 2 bound } (q = 0 is infinity).
    pub fn new(bound: i64) -> Self {
        let pmax = 2 * bound;
        let mut verts: Vec<S> = vec![Slope::infinity()];
        for q in 1..=bound {
            for p in -pmax..=pmax {
                if num_integer::gcd(p, q) == 1 {
                    verts.push(Slope::new(p, q).unwrap());
                }
            }
        }
        let idx: HashMap<S, usize> = verts.iter().cloned().zip(0..).collect();
        let mut adj = vec![Vec::new(); verts.len()];
        for (i, v) in verts.iter().enumerate() {
            let (p, q) = (*v.numer(), *v.denom());
            if q == 0 {
                for k in -pmax..=pmax {
                    adj[i].push(idx[&Slope::new(k, 1).unwrap()]);
                }
                continue;
            }
            for s in 0..=bound {
                for sign in [-1i64, 1] {
                    // r q = p s - sign
                    let num = p * s - sign;
                    if q != 0 && num % q == 0 {
                        let r = num / q;
                        if let Ok(w) = Slope::new(r, s) {
                            if (s == 0 || r.abs() <= pmax)
                                && w.det_with(v) == 1
                            {
                                if let Some(&j) = idx.get(&w) {
                                    adj[i].push(j);
                                }
                            }
                        }
                    }
                }
            }
            adj[i].sort_unstable();
            adj[i].dedup();
        }
        FareyOracle { bound, verts, idx, adj }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// All slopes with denominator <= q_max and |numerator| <= q_max.
    pub fn slopes_up_to(&self, q_max: i64) -> Vec<S> {
        let mut out = vec![Slope::infinity()];
        for q in 1..=q_max {
            for p in -q_max..=q_max {
                if num_integer::gcd(p, q) == 1 {
                    out.push(Slope::new(p, q).unwrap());
                }
            }
        }
        out
    }

    pub fn distances_from(&self, a: &S) -> HashMap<S, u64> {
        let src = self.idx[a];
        let mut dist = vec![u64::MAX; self.verts.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == u64::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.verts
            .iter()
            .zip(&dist)
            .filter(|(_, &d)| d != u64::MAX)
            .map(|(s, &d)| (s.clone(), d))
            .collect()
    }

    pub fn distance(&self, a: &S, b: &S) -> u64 {
        let src = self.idx[a];
        let dst = self.idx[b];
        let mut dist = vec![u64::MAX; self.verts.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            if v == dst {
                return dist[v];
            }
            for &w in &self.adj[v] {
                if dist[w] == u64::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        panic!("oracle graph disconnected at this bound");
    }

    /// All geodesics from a to b inside the truncated graph, sorted.
    pub fn geodesics(&self, a: &S, b: &S) -> Vec<Vec<S>> {
        let src = self.idx[a];
        let dst = self.idx[b];
        let mut dist = vec![u64::MAX; self.verts.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == u64::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut out = Vec::new();
        let mut stack = vec![dst];
        self.backtrack(&dist, src, &mut stack, &mut out);
        let mut paths: Vec<Vec<S>> = out
            .into_iter()
            .map(|p| p.into_iter().rev().map(|i| self.verts[i].clone()).collect())
            .collect();
        paths.sort();
        paths
    }

    fn backtrack(&self, dist: &[u64], src: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *stack.last().unwrap();
        if v == src {
            out.push(stack.clone());
            return;
        }
        for &w in &self.adj[v] {
            if dist[w] != u64::MAX && dist[w] + 1 == dist[v] {
                stack.push(w);
                self.backtrack(dist, src, stack, out);
                stack.pop();
            }
        }
    }
}
