//! Thread-safe memo tables. Entries are computed outside the lock, so a
//! race only duplicates work; values are pure functions of their keys.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

pub(crate) struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub(crate) fn get_or_insert_with(&self, key: &K, f: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return Arc::clone(v);
        }
        let v = Arc::new(f());
        let mut w = self.map.write().unwrap();
        Arc::clone(w.entry(key.clone()).or_insert(v))
    }
}
