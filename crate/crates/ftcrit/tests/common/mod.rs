//! Shared deterministic tree corpus for the integration suites.

use ftcrit::cutset::{minimize, to_cutsets};
use ftcrit::{BasicEvent, FaultTree, Gate};

/// Small deterministic generator (splitmix64) so every suite run sees the
/// same corpus.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Log-uniform failure rate in [1e-6, 1e-1].
    pub fn rate(&mut self) -> f64 {
        let (lo, hi) = ((1e-6f64).ln(), (1e-1f64).ln());
        (lo + (hi - lo) * self.unit()).exp()
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }
}

fn build_gate(rng: &mut TestRng, pool: &[usize]) -> Gate {
    if pool.len() == 1 {
        return Gate::atomic(format!("x{}", pool[0]));
    }
    let max_groups = pool.len().min(4);
    let groups = 2 + rng.below(max_groups - 1);
    let mut children = Vec::with_capacity(groups);
    let mut start = 0;
    for g in 0..groups {
        let remaining_groups = groups - g - 1;
        let remaining = pool.len() - start;
        let size = if remaining_groups == 0 {
            remaining
        } else {
            1 + rng.below(remaining - remaining_groups)
        };
        children.push(build_gate(rng, &pool[start..start + size]));
        start += size;
    }
    if rng.chance(0.5) {
        Gate::And(children)
    } else {
        Gate::Or(children)
    }
}

/// A random NOT-free tree over at most `max_events` events, every declared
/// event referenced. With `allow_repeats`, at least one event appears in two
/// or more leaves and the minimized cut count is kept at or below 10 so the
/// inclusion-exclusion path stays cheap and accurate.
pub fn random_tree(rng: &mut TestRng, max_events: usize, allow_repeats: bool) -> FaultTree {
    loop {
        let n = 1 + rng.below(max_events);
        let mut pool: Vec<usize> = (0..n).collect();
        if allow_repeats {
            for _ in 0..(1 + rng.below(n)) {
                pool.push(rng.below(n));
            }
        }
        for i in (1..pool.len()).rev() {
            let j = rng.below(i + 1);
            pool.swap(i, j);
        }
        let top = build_gate(rng, &pool);
        let events: Vec<BasicEvent> = (0..n)
            .map(|i| {
                BasicEvent::new(format!("x{i}"), format!("component {i}"), rng.rate()).unwrap()
            })
            .collect();
        let tree = FaultTree::new(events, top).expect("generated tree is valid");
        if allow_repeats {
            match to_cutsets(&tree).map(|f| minimize(&f)) {
                Ok(form) if form.len() <= 10 => return tree,
                _ => continue,
            }
        }
        return tree;
    }
}

fn hand_built() -> Vec<FaultTree> {
    let ev = |id: &str, rate: f64| BasicEvent::new(id, "", rate).unwrap();
    let a = |id: &str| Gate::atomic(id);
    vec![
        // single event
        FaultTree::new(vec![ev("x1", 1e-3)], Gate::Or(vec![a("x1")])).unwrap(),
        // plain conjunction and disjunction
        FaultTree::new(
            vec![ev("x1", 2e-3), ev("x2", 7e-4)],
            Gate::And(vec![a("x1"), a("x2")]),
        )
        .unwrap(),
        FaultTree::new(
            vec![ev("x1", 2e-3), ev("x2", 7e-4)],
            Gate::Or(vec![a("x1"), a("x2")]),
        )
        .unwrap(),
        // mixed shape
        FaultTree::new(
            vec![ev("x1", 1e-3), ev("x2", 5e-4), ev("x3", 2e-4)],
            Gate::Or(vec![a("x1"), Gate::And(vec![a("x2"), a("x3")])]),
        )
        .unwrap(),
        FaultTree::new(
            vec![
                ev("x1", 1e-3),
                ev("x2", 5e-4),
                ev("x3", 2e-4),
                ev("x4", 9e-5),
            ],
            Gate::And(vec![
                Gate::Or(vec![a("x1"), a("x2")]),
                Gate::Or(vec![a("x3"), a("x4")]),
            ]),
        )
        .unwrap(),
        // repeated event (bridge of two conjunctions)
        FaultTree::new(
            vec![ev("x1", 1e-3), ev("x2", 5e-4), ev("x3", 2e-4)],
            Gate::Or(vec![
                Gate::And(vec![a("x1"), a("x2")]),
                Gate::And(vec![a("x1"), a("x3")]),
            ]),
        )
        .unwrap(),
        // constant-1 (irrelevant event) and constant-0 trees
        FaultTree::new(
            vec![ev("x1", 1e-5)],
            Gate::Or(vec![a("x1"), Gate::And(vec![])]),
        )
        .unwrap(),
        FaultTree::new(
            vec![ev("x1", 1e-5)],
            Gate::And(vec![a("x1"), Gate::Or(vec![])]),
        )
        .unwrap(),
        // no events at all
        FaultTree::new(vec![], Gate::Or(vec![])).unwrap(),
        // deeper chain
        FaultTree::new(
            vec![
                ev("x1", 3e-3),
                ev("x2", 1e-3),
                ev("x3", 6e-4),
                ev("x4", 2e-4),
                ev("x5", 8e-5),
            ],
            Gate::Or(vec![
                a("x1"),
                Gate::And(vec![
                    a("x2"),
                    Gate::Or(vec![a("x3"), Gate::And(vec![a("x4"), a("x5")])]),
                ]),
            ]),
        )
        .unwrap(),
    ]
}

/// The fixed NOT-free corpus: hand-built edge shapes plus seeded random
/// trees with and without repeated events, all with at most 12 events.
pub fn corpus() -> Vec<FaultTree> {
    let mut trees = hand_built();
    let mut rng = TestRng::new(0x5eed_c0de);
    for _ in 0..20 {
        trees.push(random_tree(&mut rng, 12, false));
    }
    for _ in 0..20 {
        trees.push(random_tree(&mut rng, 12, true));
    }
    trees
}
