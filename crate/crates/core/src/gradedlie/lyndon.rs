//! Lyndon words over a weighted alphabet and their standard bracketings.

use std::collections::HashMap;

use super::tensor::{Tensor, Word};

/// `w` is Lyndon iff it is nonempty and strictly smaller than each proper suffix.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w[i..] > *w)
}

/// Calls `visit` on every Lyndon word (in lexicographic order) whose total weight is at most
/// `max_weight`; letters are `0..weights.len()` and `weights[g] ≥ 1`.
///
/// Walks prenecklaces: appending `c` to a prenecklace `a` with period `p` gives a
/// prenecklace iff `c ≥ a[len - p]`, a Lyndon word iff `c > a[len - p]`.
pub fn for_each_lyndon(weights: &[u32], max_weight: u32, mut visit: impl FnMut(&[u8], u32)) {
    fn rec(
        word: &mut Vec<u8>,
        period: usize,
        weight: u32,
        weights: &[u32],
        max_weight: u32,
        visit: &mut dyn FnMut(&[u8], u32),
    ) {
        let t = word.len();
        let floor = word[t - period];
        for c in floor..weights.len() as u8 {
            let w = weight + weights[c as usize];
            if w > max_weight {
                continue;
            }
            word.push(c);
            let p = if c == floor { period } else { t + 1 };
            if p == t + 1 {
                visit(word, w);
            }
            rec(word, p, w, weights, max_weight, visit);
            word.pop();
        }
    }
    let mut word = Vec::new();
    for c in 0..weights.len() {
        let w = weights[c];
        if w > max_weight {
            continue;
        }
        word.push(c as u8);
        visit(&word, w);
        rec(&mut word, 1, w, weights, max_weight, &mut visit);
        word.pop();
    }
}

/// Lyndon words of total weight exactly `weight`, in lexicographic order.
pub fn lyndon_words(weights: &[u32], weight: u32) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_lyndon(weights, weight, |w, wt| {
        if wt == weight {
            out.push(w.to_vec());
        }
    });
    out
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> (&[u8], &[u8]) {
    debug_assert!(w.len() >= 2 && is_lyndon(w));
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("last letter is Lyndon");
    (&w[..split], &w[split..])
}

/// Tensor expansions of standard bracketings, memoized per word.
pub struct Bracketer<'a> {
    degrees: &'a [u32],
    memo: HashMap<Word, Tensor>,
}

impl<'a> Bracketer<'a> {
    pub fn new(degrees: &'a [u32]) -> Self {
        Self {
            degrees,
            memo: HashMap::new(),
        }
    }

    fn degree(&self, w: &[u8]) -> u32 {
        w.iter().map(|&g| self.degrees[g as usize]).sum()
    }

    /// Expansion of the standard bracketing `P(w)` of a Lyndon word.
    pub fn expand(&mut self, w: &[u8]) -> Tensor {
        if w.len() == 1 {
            return Tensor::word(w.to_vec());
        }
        if let Some(t) = self.memo.get(w) {
            return t.clone();
        }
        let (u, v) = standard_factorization(w);
        let (pu, pv) = (self.expand(u), self.expand(v));
        let t = pu.commutator(self.degree(u), &pv, self.degree(v));
        self.memo.insert(w.to_vec(), t.clone());
        t
    }
}
