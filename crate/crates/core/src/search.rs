//! Greedy search for Morse matchings, and the aggregated pipeline report.

use std::cmp::Reverse;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Error;
use crate::flow::{morse_complex, morse_inequalities};
use crate::matching::{admissible_by_index, classify_poset, morse_check, morse_function, Matching};
use crate::par;
use crate::poset::Poset;

/// Order in which candidate cover edges are offered to the greedy pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ordering {
    /// `(lower, upper)` in identifier order.
    #[default]
    Lexicographic,
    /// Edges with the highest upper element first, then identifier order.
    MaxDegreeFirst,
}

impl FromStr for Ordering {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" | "lexicographic" => Ok(Ordering::Lexicographic),
            "maxdeg" | "max_degree_first" => Ok(Ordering::MaxDegreeFirst),
            other => Err(format!("unknown ordering `{other}` (expected lex or maxdeg)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchPolicy {
    pub ordering: Ordering,
    /// Number of greedy passes; the first uses the plain policy order, later
    /// ones a seeded shuffle of it.
    pub restarts: usize,
    pub rng_seed: u64,
    /// Only offer homologically admissible edges.
    pub admissibility_filter: bool,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        Self {
            ordering: Ordering::Lexicographic,
            restarts: 16,
            rng_seed: 0,
            admissibility_filter: false,
        }
    }
}

/// `H_M(X)` with a maintained topological order (Pearce–Kelly), supporting
/// the reversal of a cover edge when it becomes matched.
struct DynamicOrder {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    /// `ord[v] < ord[w]` for every edge `v -> w`.
    ord: Vec<usize>,
    mark: Vec<bool>,
}

impl DynamicOrder {
    /// All covers point down; ordering by descending height is topological.
    fn new(poset: &Poset) -> Self {
        let n = poset.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (lo, hi) in poset.covers() {
            out[hi].push(lo);
            inc[lo].push(hi);
        }
        let heights = poset.heights();
        let mut by_height: Vec<usize> = (0..n).collect();
        by_height.sort_by_key(|&v| (Reverse(heights[v]), v));
        let mut ord = vec![0; n];
        for (k, &v) in by_height.iter().enumerate() {
            ord[v] = k;
        }
        Self {
            out,
            inc,
            ord,
            mark: vec![false; n],
        }
    }

    fn remove_edge(&mut self, from: usize, to: usize) {
        self.out[from].retain(|&w| w != to);
        self.inc[to].retain(|&w| w != from);
    }

    fn push_edge(&mut self, from: usize, to: usize) {
        self.out[from].push(to);
        self.inc[to].push(from);
    }

    /// Reverses `hi -> lo` into `lo -> hi` unless that closes a cycle.
    fn try_match(&mut self, lo: usize, hi: usize) -> bool {
        self.remove_edge(hi, lo);
        let (lb, ub) = (self.ord[hi], self.ord[lo]);
        if lb > ub {
            self.push_edge(lo, hi);
            return true;
        }
        // Forward search from hi inside the affected window.
        let mut forward = Vec::new();
        let mut stack = vec![hi];
        self.mark[hi] = true;
        let mut cyclic = false;
        while let Some(v) = stack.pop() {
            forward.push(v);
            for &w in &self.out[v] {
                if w == lo {
                    cyclic = true;
                }
                if !self.mark[w] && self.ord[w] < ub {
                    self.mark[w] = true;
                    stack.push(w);
                }
            }
        }
        if cyclic {
            for &v in &forward {
                self.mark[v] = false;
            }
            self.push_edge(hi, lo);
            return false;
        }
        let mut backward = Vec::new();
        let mut stack = vec![lo];
        self.mark[lo] = true;
        while let Some(v) = stack.pop() {
            backward.push(v);
            for &w in &self.inc[v] {
                if !self.mark[w] && self.ord[w] > lb {
                    self.mark[w] = true;
                    stack.push(w);
                }
            }
        }
        forward.sort_by_key(|&v| self.ord[v]);
        backward.sort_by_key(|&v| self.ord[v]);
        let mut slots: Vec<usize> = forward.iter().chain(&backward).map(|&v| self.ord[v]).collect();
        slots.sort_unstable();
        for (&v, slot) in backward.iter().chain(&forward).zip(slots) {
            self.ord[v] = slot;
            self.mark[v] = false;
        }
        self.push_edge(lo, hi);
        true
    }
}

/// One greedy pass over `candidates`.
fn greedy_pass(poset: &Poset, candidates: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut graph = DynamicOrder::new(poset);
    let mut used = vec![false; poset.len()];
    let mut chosen = Vec::new();
    for &(lo, hi) in candidates {
        if used[lo] || used[hi] {
            continue;
        }
        if graph.try_match(lo, hi) {
            used[lo] = true;
            used[hi] = true;
            chosen.push((lo, hi));
        }
    }
    chosen
}

/// Candidate edges in policy order.
fn candidates(poset: &Poset, policy: &SearchPolicy) -> Vec<(usize, usize)> {
    let mut edges = poset.covers();
    if policy.admissibility_filter {
        let ok = par::map(&edges, |&(w, x)| admissible_by_index(poset, w, x));
        edges = edges.into_iter().zip(ok).filter(|(_, ok)| *ok).map(|(e, _)| e).collect();
    }
    if policy.ordering == Ordering::MaxDegreeFirst {
        let heights = poset.heights();
        edges.sort_by_key(|&(lo, hi)| (Reverse(heights[hi]), lo, hi));
    }
    edges
}

fn shuffled(edges: &[(usize, usize)], poset: &Poset, policy: &SearchPolicy, restart: usize) -> Vec<(usize, usize)> {
    let mut edges = edges.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(policy.rng_seed);
    rng.set_stream(restart as u64);
    edges.shuffle(&mut rng);
    if policy.ordering == Ordering::MaxDegreeFirst {
        // Shuffle only within each height class.
        let heights = poset.heights();
        edges.sort_by_key(|&(_, hi)| Reverse(heights[hi]));
    }
    edges
}

/// Greedy Morse matching with restarts. Among restarts the fewest critical
/// elements win, ties going to the lexicographically least pair set, so the
/// result does not depend on how restarts are scheduled.
pub fn greedy_matching(poset: &Poset, policy: &SearchPolicy) -> Matching {
    let base = candidates(poset, policy);
    let runs = par::map_range(policy.restarts.max(1), |r| {
        let order = if r == 0 { base.clone() } else { shuffled(&base, poset, policy, r) };
        let pairs = greedy_pass(poset, &order);
        Matching::new(pairs.iter().map(|&(lo, hi)| (poset.name(lo), poset.name(hi))))
    });
    runs.into_iter()
        .min_by(|a, b| Reverse(a.len()).cmp(&Reverse(b.len())).then_with(|| a.cmp(b)))
        .expect("at least one restart")
}

/// Status of one pipeline stage.
fn stage<T>(result: Result<T, Error>, render: impl FnOnce(T) -> Value) -> Value {
    match result {
        Ok(v) => json!({ "status": "ok", "result": render(v) }),
        Err(e) => json!({ "status": "error", "error": e.kind(), "message": e.to_string() }),
    }
}

/// Runs every stage on `(X, M)` and collects results and diagnostics.
pub fn verify_and_report(poset: &Poset, matching: &Matching) -> Value {
    let check = morse_check(poset, matching);
    let class = classify_poset(poset);
    let function = stage(morse_function(poset, matching), |f| {
        json!({ "values": f.to_json(), "critical": f.critical_points(poset) })
    });
    let complex = stage(morse_complex(poset, matching), |r| r.to_json());
    let inequalities = stage(morse_inequalities(poset, matching), |r| json!(r));
    json!({
        "morse_check": check,
        "classification": class,
        "morse_function": function,
        "morse_complex": complex,
        "morse_inequalities": inequalities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{face_poset, simplex_boundary};

    #[test]
    fn chain_is_fully_matched() {
        let p = Poset::new(["a", "b"], [("a", "b")]).unwrap();
        let m = greedy_matching(&p, &SearchPolicy::default());
        assert_eq!(m, Matching::new([("a", "b")]));
    }

    #[test]
    fn results_are_morse_and_deterministic() {
        let x = face_poset(&simplex_boundary(3)).unwrap();
        for ordering in [Ordering::Lexicographic, Ordering::MaxDegreeFirst] {
            let policy = SearchPolicy {
                ordering,
                rng_seed: 7,
                ..SearchPolicy::default()
            };
            let m = greedy_matching(&x, &policy);
            assert!(morse_check(&x, &m).is_morse());
            assert_eq!(m, greedy_matching(&x, &policy));
        }
    }

    #[test]
    fn triangle_reaches_two_critical_cells() {
        let x = face_poset(&simplex_boundary(2)).unwrap();
        let m = greedy_matching(&x, &SearchPolicy::default());
        assert_eq!(morse_check(&x, &m).critical.len(), 2);
    }

    #[test]
    fn reversal_that_closes_a_cycle_is_refused() {
        let p = Poset::new(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap();
        let mut g = DynamicOrder::new(&p);
        assert!(g.try_match(0, 2));
        assert!(!g.try_match(1, 3));
        assert!(g.out[3].contains(&1), "refused edge is restored");
        for v in 0..4 {
            for &w in &g.out[v] {
                assert!(g.ord[v] < g.ord[w]);
            }
        }
    }

    #[test]
    fn order_stays_topological_under_random_reversals() {
        let x = face_poset(&simplex_boundary(3)).unwrap();
        let covers = x.covers();
        let order = shuffled(&covers, &x, &SearchPolicy::default(), 3);
        let mut g = DynamicOrder::new(&x);
        let mut used = vec![false; x.len()];
        for (lo, hi) in order {
            if used[lo] || used[hi] {
                continue;
            }
            if g.try_match(lo, hi) {
                used[lo] = true;
                used[hi] = true;
            }
            for v in 0..x.len() {
                for &w in &g.out[v] {
                    assert!(g.ord[v] < g.ord[w]);
                }
            }
        }
    }
}
