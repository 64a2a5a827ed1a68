//! Priority lists over a shared slab of pending nodes.
//!
//! Every pending node lives once in the slab and is referenced from each
//! list. Removing it through one list invalidates the references held by
//! the others, so a node can be taken at most once.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::eval::Rational;

/// Ordering key of an open entry; smaller is removed first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OpenKey {
    pub f: Rational,
    pub secondary: Rational,
    /// Derived from the insertion serial: negated for LIFO, as-is for FIFO.
    pub order: i64,
}

#[derive(Debug, PartialEq, Eq)]
struct HeapEntry {
    key: OpenKey,
    slot: u32,
    generation: u32,
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.key.cmp(&self.key)
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug)]
struct Slot<T> {
    generation: u32,
    item: Option<T>,
}

#[derive(Debug)]
pub struct OpenLists<T> {
    heaps: Vec<BinaryHeap<HeapEntry>>,
    slots: Vec<Slot<T>>,
    free: Vec<u32>,
    live: usize,
}

/// Handle to a pending item, used to register it on further lists.
#[derive(Clone, Copy, Debug)]
pub struct Ticket {
    slot: u32,
    generation: u32,
}

impl<T> OpenLists<T> {
    pub fn new(lists: usize) -> Self {
        assert!(lists >= 1);
        OpenLists {
            heaps: (0..lists).map(|_| BinaryHeap::new()).collect(),
            slots: Vec::new(),
            free: Vec::new(),
            live: 0,
        }
    }

    pub fn lists(&self) -> usize {
        self.heaps.len()
    }

    /// Number of distinct pending items.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Stores `item` without listing it anywhere yet.
    pub fn store(&mut self, item: T) -> Ticket {
        self.live += 1;
        if let Some(slot) = self.free.pop() {
            let s = &mut self.slots[slot as usize];
            s.item = Some(item);
            Ticket {
                slot,
                generation: s.generation,
            }
        } else {
            let slot = u32::try_from(self.slots.len()).expect("open list overflow");
            self.slots.push(Slot {
                generation: 0,
                item: Some(item),
            });
            Ticket {
                slot,
                generation: 0,
            }
        }
    }

    pub fn list(&mut self, list: usize, ticket: Ticket, key: OpenKey) {
        self.heaps[list].push(HeapEntry {
            key,
            slot: ticket.slot,
            generation: ticket.generation,
        });
    }

    /// Removes the best item of `list` that has not been taken through
    /// another list. Stale references are discarded silently.
    pub fn pop(&mut self, list: usize) -> Option<(OpenKey, T)> {
        while let Some(entry) = self.heaps[list].pop() {
            let slot = &mut self.slots[entry.slot as usize];
            if slot.generation != entry.generation {
                continue;
            }
            let Some(item) = slot.item.take() else {
                continue;
            };
            slot.generation = slot.generation.wrapping_add(1);
            self.free.push(entry.slot);
            self.live -= 1;
            return Some((entry.key, item));
        }
        None
    }
}
