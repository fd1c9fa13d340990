//! Addressable binary min-heap over vertex ids.
//!
//! Keys are `f64` distances; equal keys are ordered by vertex id so that
//! extraction order is fully deterministic. Every vertex has a slot in a
//! position table, which makes `decrease_key` O(log h) without lazy
//! deletion. Popping a vertex clears its slot, so a drained heap can be
//! reused for the next round without an O(n) reset.

use crate::graph::VertexId;

const NOT_QUEUED: usize = usize::MAX;

/// Operation counters, used by the benchmark harness.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HeapCounters {
    pub insertions: u64,
    pub decrease_keys: u64,
    pub extractions: u64,
}

impl HeapCounters {
    pub fn add(&mut self, other: &HeapCounters) {
        self.insertions += other.insertions;
        self.decrease_keys += other.decrease_keys;
        self.extractions += other.extractions;
    }
}

#[derive(Debug, Clone)]
pub struct IndexedMinHeap {
    heap: Vec<(f64, VertexId)>,
    position: Vec<usize>,
    counters: HeapCounters,
}

#[inline]
fn less(a: (f64, VertexId), b: (f64, VertexId)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

impl IndexedMinHeap {
    pub fn new(capacity: usize) -> Self {
        IndexedMinHeap {
            heap: Vec::new(),
            position: vec![NOT_QUEUED; capacity],
            counters: HeapCounters::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.position[v] != NOT_QUEUED
    }

    pub fn key(&self, v: VertexId) -> Option<f64> {
        match self.position[v] {
            NOT_QUEUED => None,
            p => Some(self.heap[p].0),
        }
    }

    pub fn counters(&self) -> HeapCounters {
        self.counters
    }

    pub fn reset_counters(&mut self) {
        self.counters = HeapCounters::default();
    }

    /// Inserts `v`, or lowers its key if already queued with a larger one.
    /// Returns `true` if the heap changed.
    pub fn push_or_decrease(&mut self, v: VertexId, key: f64) -> bool {
        match self.position[v] {
            NOT_QUEUED => {
                self.push(v, key);
                true
            }
            p if less((key, v), self.heap[p]) => {
                self.decrease_key(v, key);
                true
            }
            _ => false,
        }
    }

    pub fn push(&mut self, v: VertexId, key: f64) {
        debug_assert!(!self.contains(v), "vertex {v} already queued");
        self.counters.insertions += 1;
        let idx = self.heap.len();
        self.heap.push((key, v));
        self.position[v] = idx;
        self.sift_up(idx);
    }

    /// Lowers the key of a queued vertex. Keys never increase.
    pub fn decrease_key(&mut self, v: VertexId, key: f64) {
        let idx = self.position[v];
        assert!(idx != NOT_QUEUED, "decrease_key on vertex {v} not in heap");
        debug_assert!(key <= self.heap[idx].0);
        self.counters.decrease_keys += 1;
        self.heap[idx].0 = key;
        self.sift_up(idx);
    }

    pub fn peek(&self) -> Option<(VertexId, f64)> {
        self.heap.first().map(|&(k, v)| (v, k))
    }

    pub fn pop(&mut self) -> Option<(VertexId, f64)> {
        if self.heap.is_empty() {
            return None;
        }
        self.counters.extractions += 1;
        let last = self.heap.len() - 1;
        self.swap(0, last);
        let (key, v) = self.heap.pop().expect("non-empty");
        self.position[v] = NOT_QUEUED;
        if !self.heap.is_empty() {
            self.sift_down(0);
        }
        Some((v, key))
    }

    /// Empties the heap in O(len).
    pub fn clear(&mut self) {
        for &(_, v) in &self.heap {
            self.position[v] = NOT_QUEUED;
        }
        self.heap.clear();
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.position[self.heap[a].1] = a;
        self.position[self.heap[b].1] = b;
    }

    fn sift_up(&mut self, mut idx: usize) {
        while idx > 0 {
            let parent = (idx - 1) / 2;
            if less(self.heap[idx], self.heap[parent]) {
                self.swap(idx, parent);
                idx = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut idx: usize) {
        let len = self.heap.len();
        loop {
            let left = 2 * idx + 1;
            if left >= len {
                break;
            }
            let right = left + 1;
            let child = if right < len && less(self.heap[right], self.heap[left]) {
                right
            } else {
                left
            };
            if less(self.heap[child], self.heap[idx]) {
                self.swap(idx, child);
                idx = child;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ties_break_by_vertex_id() {
        let mut h = IndexedMinHeap::new(4);
        h.push(3, 1.0);
        h.push(1, 1.0);
        h.push(2, 0.5);
        assert_eq!(h.pop(), Some((2, 0.5)));
        assert_eq!(h.pop(), Some((1, 1.0)));
        assert_eq!(h.pop(), Some((3, 1.0)));
        assert_eq!(h.pop(), None);
    }

    #[test]
    fn decrease_key_reorders() {
        let mut h = IndexedMinHeap::new(3);
        h.push(0, 5.0);
        h.push(1, 3.0);
        h.push(2, 4.0);
        h.decrease_key(0, 1.0);
        assert!(!h.push_or_decrease(2, 9.0));
        assert_eq!(h.pop(), Some((0, 1.0)));
        let c = h.counters();
        assert_eq!((c.insertions, c.decrease_keys, c.extractions), (3, 1, 1));
    }

    #[test]
    fn clear_frees_slots() {
        let mut h = IndexedMinHeap::new(3);
        h.push(0, 1.0);
        h.push(2, 2.0);
        h.clear();
        assert!(h.is_empty());
        assert!(!h.contains(0));
        h.push(0, 3.0);
        assert_eq!(h.peek(), Some((0, 3.0)));
    }

    proptest! {
        #[test]
        fn pops_in_sorted_order(ops in prop::collection::vec((0usize..32, 0.0f64..100.0), 1..200)) {
            let mut h = IndexedMinHeap::new(32);
            let mut best = vec![f64::INFINITY; 32];
            for (v, k) in ops {
                h.push_or_decrease(v, k);
                best[v] = best[v].min(k);
            }
            let mut prev = (f64::NEG_INFINITY, 0usize);
            while let Some((v, k)) = h.pop() {
                prop_assert!(!less((k, v), prev));
                prop_assert_eq!(k, best[v]);
                prev = (k, v);
            }
        }
    }
}
