//! Sorted qubit-index sets.

use alloc::vec::Vec;
use core::fmt;

/// A set of original-circuit qubit indices, kept sorted and deduplicated.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitSet(Vec<usize>);

impl QubitSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn single(q: usize) -> Self {
        Self(alloc::vec![q])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub fn insert(&mut self, q: usize) -> bool {
        match self.0.binary_search(&q) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, q);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union_with(&mut self, other: &QubitSet) {
        if other.0.is_empty() {
            return;
        }
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    merged.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    merged.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    merged.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&a[i..]);
        merged.extend_from_slice(&b[j..]);
        self.0 = merged;
    }

    /// `|self ∪ other|` without allocating.
    pub fn union_len(&self, other: &QubitSet) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
            n += 1;
        }
        n + (a.len() - i) + (b.len() - j)
    }
}

impl FromIterator<usize> for QubitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl fmt::Debug for QubitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Per-cluster qubit multiplicities, so members can leave without rescanning.
#[derive(Clone, Debug, Default)]
pub(crate) struct QubitCounter {
    entries: Vec<(usize, u32)>,
}

impl QubitCounter {
    pub(crate) fn add(&mut self, qubits: &QubitSet) {
        for q in qubits.iter() {
            match self.entries.binary_search_by_key(&q, |e| e.0) {
                Ok(pos) => self.entries[pos].1 += 1,
                Err(pos) => self.entries.insert(pos, (q, 1)),
            }
        }
    }

    pub(crate) fn remove(&mut self, qubits: &QubitSet) {
        for q in qubits.iter() {
            if let Ok(pos) = self.entries.binary_search_by_key(&q, |e| e.0) {
                self.entries[pos].1 -= 1;
                if self.entries[pos].1 == 0 {
                    self.entries.remove(pos);
                }
            }
        }
    }

    /// Size of the qubit set after adding `qubits`.
    pub(crate) fn len_with(&self, qubits: &QubitSet) -> usize {
        self.entries.len()
            + qubits
                .iter()
                .filter(|q| self.entries.binary_search_by_key(q, |e| e.0).is_err())
                .count()
    }
}
