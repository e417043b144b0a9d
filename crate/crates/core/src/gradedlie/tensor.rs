use std::collections::BTreeMap;

use num::Zero;

use crate::ratlinalg::{sign, Scalar};

/// A word in the tensor algebra: a sequence of generator indices.
pub type Word = Vec<u8>;

/// Element of the tensor algebra `T(V)`, keyed by word. No stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor {
    terms: BTreeMap<Word, Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, crate::ratlinalg::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[u8]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn min_term(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Tensor) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero();
        out.add_scaled(c, self);
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = Vec::with_capacity(a.len() + b.len());
                w.extend_from_slice(a);
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    /// Graded commutator `uv - (-1)^{|u||v|} vu` of homogeneous elements.
    pub fn commutator(&self, du: u32, other: &Tensor, dv: u32) -> Tensor {
        let mut out = self.mul(other);
        out.add_scaled(&-sign(du as u64 * dv as u64), &other.mul(self));
        out
    }

    /// Applies a letter substitution `g ↦ f(g)`.
    pub fn relabel(&self, f: impl Fn(u8) -> u8) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in &self.terms {
            out.add_term(w.iter().map(|&g| f(g)).collect(), c.clone());
        }
        out
    }

    /// Extends `values` (letter ↦ tensor, `None` meaning zero) to a degree-`theta_degree`
    /// derivation of the tensor algebra and applies it. Sign of passing the derivation
    /// over a prefix is `(-1)^{theta_degree * deg(prefix)}`.
    pub fn apply_derivation<'a>(
        &self,
        theta_degree: i64,
        letter_degree: impl Fn(u8) -> u32,
        values: impl Fn(u8) -> Option<&'a Tensor>,
    ) -> Tensor {
        let odd = theta_degree.rem_euclid(2) == 1;
        let mut out = Tensor::zero();
        for (w, c) in &self.terms {
            let mut prefix_degree: u64 = 0;
            for (pos, &g) in w.iter().enumerate() {
                if let Some(val) = values(g) {
                    let coeff = if odd && prefix_degree % 2 == 1 {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    for (vw, vc) in &val.terms {
                        let mut nw = Vec::with_capacity(w.len() + vw.len());
                        nw.extend_from_slice(&w[..pos]);
                        nw.extend_from_slice(vw);
                        nw.extend_from_slice(&w[pos + 1..]);
                        out.add_term(nw, &coeff * vc);
                    }
                }
                prefix_degree += letter_degree(g) as u64;
            }
        }
        out
    }
}
