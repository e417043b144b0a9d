use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

/// Write-once concurrent memo table.
///
/// Values are computed outside the lock; if two threads race on a key, the first insert
/// wins and both observe it. Callers only store deterministic results, so racers agree.
pub struct OnceMap<K, V> {
    inner: Mutex<HashMap<K, Arc<V>>>,
}

impl<K, V> Default for OnceMap<K, V> {
    fn default() -> Self {
        Self {
            inner: Mutex::new(HashMap::new()),
        }
    }
}

impl<K: Eq + Hash + Clone, V> OnceMap<K, V> {
    pub fn get(&self, key: &K) -> Option<Arc<V>> {
        self.inner.lock().expect("once map").get(key).cloned()
    }

    pub fn get_or_try_insert<E>(&self, key: K, f: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let v = Arc::new(f()?);
        Ok(self.inner.lock().expect("once map").entry(key).or_insert(v).clone())
    }

    pub fn len(&self) -> usize {
        self.inner.lock().expect("once map").len()
    }
}
