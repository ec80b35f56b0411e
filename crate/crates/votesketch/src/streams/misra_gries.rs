use std::hash::Hash;

/// Misra-Gries summary with a fixed number of counters, kept sorted by count
/// (descending, stable). Undercounts any key by at most `s / (capacity + 1)`
/// after `s` updates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisraGries<K> {
    capacity: usize,
    entries: Vec<(K, u64)>,
}

impl<K: Eq + Hash + Clone> MisraGries<K> {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "Misra-Gries needs at least one counter");
        MisraGries { capacity, entries: Vec::with_capacity(capacity) }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in descending count order.
    pub fn entries(&self) -> &[(K, u64)] {
        &self.entries
    }

    pub fn get(&self, key: &K) -> u64 {
        self.entries.iter().find(|(k, _)| k == key).map_or(0, |e| e.1)
    }

    /// Position of `key` in count order, if tracked.
    pub fn rank_of(&self, key: &K) -> Option<usize> {
        self.entries.iter().position(|(k, _)| k == key)
    }

    pub fn update(&mut self, key: K) {
        if let Some(mut i) = self.rank_of(&key) {
            self.entries[i].1 += 1;
            while i > 0 && self.entries[i - 1].1 < self.entries[i].1 {
                self.entries.swap(i - 1, i);
                i -= 1;
            }
        } else if self.entries.len() < self.capacity {
            self.entries.push((key, 1));
        } else {
            for e in &mut self.entries {
                e.1 -= 1;
            }
            self.entries.retain(|e| e.1 > 0);
        }
    }
}
