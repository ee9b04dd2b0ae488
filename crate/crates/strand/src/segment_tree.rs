//! Range-assign segment tree specialized for "keep the maximum, earliest
//! writer wins ties" semantics. Updates are lazy: they park at covering
//! nodes and only reach the leaves when [`SegmentTree::push`] runs, after
//! which point queries are valid again.
//!
//! The observable behavior is defined by a simple sequential model: apply
//! every update in arrival order to a plain array, overwriting a cell only
//! when the new value is strictly greater. Internal sequence numbers make
//! the lazy tree reproduce that model exactly, ties included.

use crate::{Error, Result};

const PAD_G: i64 = i64::MIN;

/// Lazy segment tree over (value, data) pairs with strict-max assignment.
#[derive(Debug, Clone)]
pub struct SegmentTree {
    len: usize,
    cap: usize,
    node_g: Vec<i64>,
    node_d: Vec<i64>,
    node_seq: Vec<u64>,
    node_has: Vec<bool>,
    leaf_g: Vec<i64>,
    leaf_d: Vec<i64>,
    leaf_seq: Vec<u64>,
    next_seq: u64,
    dirty: bool,
}

fn beats(g: i64, seq: u64, other_g: i64, other_seq: u64) -> bool {
    g > other_g || (g == other_g && seq < other_seq)
}

impl SegmentTree {
    /// Builds a tree over the given base pairs (one-based positions).
    pub fn construct(base: &[(i64, i64)]) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::usage("segment tree needs at least one element"));
        }
        let len = base.len();
        let cap = len.next_power_of_two();
        let mut leaf_g = vec![PAD_G; cap];
        let mut leaf_d = vec![-1i64; cap];
        for (q, &(g, d)) in base.iter().enumerate() {
            leaf_g[q] = g;
            leaf_d[q] = d;
        }
        Ok(SegmentTree {
            len,
            cap,
            node_g: vec![0; 2 * cap],
            node_d: vec![0; 2 * cap],
            node_seq: vec![0; 2 * cap],
            node_has: vec![false; 2 * cap],
            leaf_g,
            leaf_d,
            leaf_seq: vec![0; cap],
            next_seq: 1,
            dirty: false,
        })
    }

    /// Number of leaves.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Queues "assign (x, y) wherever x strictly beats the current value"
    /// over positions i..=j.
    pub fn update(&mut self, i: usize, j: usize, x: i64, y: i64) -> Result<()> {
        if i < 1 || j > self.len || i > j {
            return Err(Error::index(format!(
                "update range [{i}, {j}] invalid for length {}",
                self.len
            )));
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.dirty = true;
        self.update_node(1, 1, self.cap, i, j, x, y, seq);
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn update_node(
        &mut self,
        node: usize,
        lo: usize,
        hi: usize,
        i: usize,
        j: usize,
        x: i64,
        y: i64,
        seq: u64,
    ) {
        if i > j {
            return;
        }
        if lo == i && hi == j {
            // A pending with g >= x wins everywhere this node covers, so the
            // new assignment can be dropped; otherwise it supersedes.
            if !self.node_has[node] || x > self.node_g[node] {
                self.node_g[node] = x;
                self.node_d[node] = y;
                self.node_seq[node] = seq;
                self.node_has[node] = true;
            }
            return;
        }
        let mid = lo + (hi - lo + 1) / 2 - 1;
        if mid >= j {
            self.update_node(2 * node, lo, mid, i, j, x, y, seq);
        } else if mid < i {
            self.update_node(2 * node + 1, mid + 1, hi, i, j, x, y, seq);
        } else {
            self.update_node(2 * node, lo, mid, i, mid, x, y, seq);
            self.update_node(2 * node + 1, mid + 1, hi, mid + 1, j, x, y, seq);
        }
    }

    /// Applies every queued update to the leaves, clearing the queue.
    pub fn push(&mut self) {
        self.push_node(1, 1, self.cap, None);
        self.dirty = false;
    }

    fn push_node(&mut self, node: usize, lo: usize, hi: usize, carried: Option<(i64, i64, u64)>) {
        let mut carried = carried;
        if self.node_has[node] {
            let pend = (self.node_g[node], self.node_d[node], self.node_seq[node]);
            carried = Some(match carried {
                None => pend,
                Some(c) => {
                    if beats(pend.0, pend.2, c.0, c.2) {
                        pend
                    } else {
                        c
                    }
                }
            });
            self.node_has[node] = false;
        }
        if lo == hi {
            if let Some((g, d, seq)) = carried {
                let q = lo - 1;
                if beats(g, seq, self.leaf_g[q], self.leaf_seq[q]) {
                    self.leaf_g[q] = g;
                    self.leaf_d[q] = d;
                    self.leaf_seq[q] = seq;
                }
            }
            return;
        }
        let mid = lo + (hi - lo + 1) / 2 - 1;
        self.push_node(2 * node, lo, mid, carried);
        self.push_node(2 * node + 1, mid + 1, hi, carried);
    }

    /// Reads the settled pair at position i. Only valid once every update
    /// has been pushed; querying with updates still queued is a caller bug.
    pub fn request(&self, i: usize) -> Result<(i64, i64)> {
        debug_assert!(!self.dirty, "request before push observes stale values");
        if i < 1 || i > self.len {
            return Err(Error::index(format!(
                "request index {i} outside 1..={}",
                self.len
            )));
        }
        Ok((self.leaf_g[i - 1], self.leaf_d[i - 1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Reference model: apply updates sequentially, strict-max overwrite.
    struct Naive {
        vals: Vec<(i64, i64)>,
        queued: Vec<(usize, usize, i64, i64)>,
    }

    impl Naive {
        fn construct(base: &[(i64, i64)]) -> Self {
            Naive {
                vals: base.to_vec(),
                queued: Vec::new(),
            }
        }
        fn update(&mut self, i: usize, j: usize, x: i64, y: i64) {
            self.queued.push((i, j, x, y));
        }
        fn push(&mut self) {
            for &(i, j, x, y) in &self.queued {
                for q in i - 1..j {
                    if x > self.vals[q].0 {
                        self.vals[q] = (x, y);
                    }
                }
            }
            self.queued.clear();
        }
        fn request(&self, i: usize) -> (i64, i64) {
            self.vals[i - 1]
        }
    }

    fn zeros(l: usize) -> Vec<(i64, i64)> {
        vec![(0, -1); l]
    }

    #[test]
    fn single_update_settles_on_covered_leaves() {
        let mut t = SegmentTree::construct(&zeros(3)).unwrap();
        t.update(1, 2, 5, 7).unwrap();
        t.push();
        assert_eq!(t.request(1).unwrap(), (5, 7));
        assert_eq!(t.request(2).unwrap(), (5, 7));
        assert_eq!(t.request(3).unwrap(), (0, -1));
    }

    #[test]
    fn equal_value_does_not_overwrite() {
        let mut t = SegmentTree::construct(&zeros(3)).unwrap();
        t.update(1, 3, 0, 9).unwrap();
        t.push();
        for i in 1..=3 {
            assert_eq!(t.request(i).unwrap(), (0, -1));
        }
    }

    #[test]
    fn smaller_later_update_is_dropped() {
        let mut t = SegmentTree::construct(&zeros(3)).unwrap();
        t.update(2, 2, 3, 1).unwrap();
        t.update(2, 2, 2, 4).unwrap();
        t.push();
        assert_eq!(t.request(2).unwrap(), (3, 1));
    }

    #[test]
    fn nested_pendings_resolve_by_depth_and_value() {
        let mut t = SegmentTree::construct(&zeros(4)).unwrap();
        t.update(1, 4, 5, 1).unwrap();
        t.update(1, 2, 7, 2).unwrap();
        t.push();
        assert_eq!(t.request(1).unwrap(), (7, 2));
        assert_eq!(t.request(2).unwrap(), (7, 2));
        assert_eq!(t.request(3).unwrap(), (5, 1));
        assert_eq!(t.request(4).unwrap(), (5, 1));
    }

    #[test]
    fn equal_value_tie_keeps_the_earlier_update() {
        // The earlier update parks at a deeper node than the later one; on
        // equal values the earlier writer must still win at the shared
        // leaves, exactly as sequential application would have it.
        let mut t = SegmentTree::construct(&zeros(4)).unwrap();
        t.update(1, 2, 5, 20).unwrap();
        t.update(1, 4, 5, 10).unwrap();
        t.push();
        assert_eq!(t.request(1).unwrap(), (5, 20));
        assert_eq!(t.request(2).unwrap(), (5, 20));
        assert_eq!(t.request(3).unwrap(), (5, 10));
        assert_eq!(t.request(4).unwrap(), (5, 10));
    }

    #[test]
    fn construct_round_trips_base_values() {
        let mut t = SegmentTree::construct(&[(2, 9), (1, 8)]).unwrap();
        assert_eq!(t.request(1).unwrap(), (2, 9));
        assert_eq!(t.request(2).unwrap(), (1, 8));
        t.push();
        assert_eq!(t.request(1).unwrap(), (2, 9));
        assert_eq!(t.request(2).unwrap(), (1, 8));
    }

    #[test]
    fn bounds_are_validated() {
        assert!(SegmentTree::construct(&[]).is_err());
        let mut t = SegmentTree::construct(&zeros(3)).unwrap();
        assert!(t.update(0, 2, 1, 1).is_err());
        assert!(t.update(1, 4, 1, 1).is_err());
        assert!(t.update(3, 2, 1, 1).is_err());
        assert!(t.request(0).is_err());
        assert!(t.request(4).is_err());
    }

    #[cfg(debug_assertions)]
    #[test]
    #[should_panic(expected = "request before push")]
    fn request_with_queued_updates_panics_in_debug() {
        let mut t = SegmentTree::construct(&zeros(2)).unwrap();
        t.update(1, 1, 3, 3).unwrap();
        let _ = t.request(1);
    }

    proptest! {
        #[test]
        fn matches_sequential_model(
            len in 1usize..48,
            ops in proptest::collection::vec((0usize..48, 0usize..48, 0i64..6, 0i64..1000, any::<bool>()), 0..60),
        ) {
            let base = zeros(len);
            let mut tree = SegmentTree::construct(&base).unwrap();
            let mut naive = Naive::construct(&base);
            for (a, b, x, y, do_push) in ops {
                let i = a % len + 1;
                let j = b % len + 1;
                if i <= j {
                    tree.update(i, j, x, y).unwrap();
                    naive.update(i, j, x, y);
                }
                if do_push {
                    tree.push();
                    naive.push();
                    for q in 1..=len {
                        prop_assert_eq!(tree.request(q).unwrap(), naive.request(q));
                    }
                }
            }
            tree.push();
            naive.push();
            for q in 1..=len {
                prop_assert_eq!(tree.request(q).unwrap(), naive.request(q));
            }
        }
    }
}
