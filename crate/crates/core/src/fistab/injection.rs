use std::fmt;

use serde::{Deserialize, Serialize};

use super::FiError;

/// An injection `{1..n} → {1..m}`, stored 0-based: `image[j]` is where `j` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Injection {
    target: usize,
    image: Vec<usize>,
}

impl Injection {
    pub fn new(target: usize, image: Vec<usize>) -> Result<Self, FiError> {
        let mut seen = vec![false; target];
        for &x in &image {
            if x >= target || std::mem::replace(&mut seen[x], true) {
                return Err(FiError::NotInjective { target, image });
            }
        }
        Ok(Self { target, image })
    }

    pub fn identity(n: usize) -> Self {
        Self::standard(n, n)
    }

    /// `{1..n} ⊂ {1..m}`.
    pub fn standard(n: usize, m: usize) -> Self {
        assert!(n <= m);
        Self {
            target: m,
            image: (0..n).collect(),
        }
    }

    /// The transposition of `i` and `j` in `Σ_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(i, j);
        Self { target: n, image }
    }

    pub fn source(&self) -> usize {
        self.image.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, j: usize) -> usize {
        self.image[j]
    }

    pub fn is_permutation(&self) -> bool {
        self.source() == self.target
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Injection) -> Injection {
        assert_eq!(inner.target, self.source(), "injections do not compose");
        Injection {
            target: self.target,
            image: inner.image.iter().map(|&j| self.image[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Injection {
        assert!(self.is_permutation());
        let mut inv = vec![0; self.target];
        for (j, &x) in self.image.iter().enumerate() {
            inv[x] = j;
        }
        Injection {
            target: self.target,
            image: inv,
        }
    }

    /// Every injection `[n] → [m]`, in lexicographic order of images.
    pub fn all(n: usize, m: usize) -> Vec<Injection> {
        fn go(n: usize, m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Injection>) {
            if cur.len() == n {
                out.push(Injection {
                    target: m,
                    image: cur.clone(),
                });
                return;
            }
            for x in 0..m {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    go(n, m, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        if n <= m {
            go(n, m, &mut Vec::new(), &mut vec![false; m], &mut out);
        }
        out
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]→{}", self.target)
    }
}
