//! Brute-force reference computations on tensor-algebra coordinates.
//!
//! Nothing here touches the library's Lyndon bases or sparse elimination: Lie algebras are
//! spanned by right-normed brackets of generators, and all linear algebra is dense Gaussian
//! elimination over `BigRational`.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

pub type Q = BigRational;
pub type Poly = BTreeMap<Vec<u8>, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn koszul(e: u32) -> Q {
    if e.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn letter(g: u8) -> Poly {
    [(vec![g], Q::one())].into_iter().collect()
}

pub fn add_into(acc: &mut Poly, c: &Q, p: &Poly) {
    for (w, v) in p {
        let e = acc.entry(w.clone()).or_insert_with(Q::zero);
        *e += c * v;
        if e.is_zero() {
            acc.remove(w);
        }
    }
}

pub fn mul(p: &Poly, r: &Poly) -> Poly {
    let mut out = Poly::new();
    for (a, x) in p {
        for (b, y) in r {
            let mut w = a.clone();
            w.extend_from_slice(b);
            add_into(&mut out, &(x * y), &[(w, Q::one())].into_iter().collect());
        }
    }
    out
}

/// `pr - (-1)^{|p||r|} rp`.
pub fn commutator(p: &Poly, dp: u32, r: &Poly, dr: u32) -> Poly {
    let mut out = mul(p, r);
    add_into(&mut out, &-koszul(dp * dr), &mul(r, p));
    out
}

pub fn word_degree(w: &[u8], degs: &[u32]) -> u32 {
    w.iter().map(|&g| degs[g as usize]).sum()
}

/// All words of total degree `m`.
pub fn words(degs: &[u32], m: u32) -> Vec<Vec<u8>> {
    fn go(degs: &[u32], rest: u32, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rest == 0 {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for (g, &d) in degs.iter().enumerate() {
            if d <= rest {
                cur.push(g as u8);
                go(degs, rest - d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(degs, m, &mut Vec::new(), &mut out);
    out
}

/// Row-reduced echelon basis of the span of `rows`, with pivot columns.
pub fn rref(mut rows: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Q>>) -> usize {
    rref(rows).0.len()
}

pub fn to_dense(p: &Poly, index: &BTreeMap<Vec<u8>, usize>) -> Vec<Q> {
    let mut v = vec![Q::zero(); index.len()];
    for (w, c) in p {
        v[index[w]] = c.clone();
    }
    v
}

/// `L_m` inside `T_m`: word index and an echelon basis of the span of all right-normed brackets.
pub struct LieSlice {
    pub words: Vec<Vec<u8>>,
    pub index: BTreeMap<Vec<u8>, usize>,
    pub basis: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
}

impl LieSlice {
    pub fn new(degs: &[u32], m: u32) -> Self {
        let words = words(degs, m);
        let index: BTreeMap<Vec<u8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows = Vec::new();
        for w in &words {
            // [w1,[w2,[...,[w_{l-1}, w_l]]]]
            let mut acc = letter(*w.last().unwrap());
            let mut d = degs[*w.last().unwrap() as usize];
            for &g in w.iter().rev().skip(1) {
                acc = commutator(&letter(g), degs[g as usize], &acc, d);
                d += degs[g as usize];
            }
            if !acc.is_empty() {
                rows.push(to_dense(&acc, &index));
            }
        }
        if rows.is_empty() {
            return Self {
                words,
                index,
                basis: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let (basis, pivots) = rref(rows);
        Self {
            words,
            index,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn poly(&self, i: usize) -> Poly {
        self.basis[i]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (self.words[j].clone(), c.clone()))
            .collect()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        if p.is_empty() {
            return true;
        }
        if p.keys().any(|w| !self.index.contains_key(w)) {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(to_dense(p, &self.index));
        rank(rows) == self.dim()
    }

    /// Coordinates of an element of the span, read off at pivot columns.
    pub fn coords(&self, p: &Poly) -> Vec<Q> {
        let v = to_dense(p, &self.index);
        self.pivots.iter().map(|&c| v[c].clone()).collect()
    }
}

/// `θ(p)` for the derivation of degree `k` with the given generator values.
pub fn apply_derivation(p: &Poly, k: u32, degs: &[u32], values: &BTreeMap<u8, Poly>) -> Poly {
    let mut out = Poly::new();
    for (w, c) in p {
        let mut prefix = 0;
        for (i, &g) in w.iter().enumerate() {
            if let Some(v) = values.get(&g) {
                let left: Poly = [(w[..i].to_vec(), Q::one())].into_iter().collect();
                let right: Poly = [(w[i + 1..].to_vec(), Q::one())].into_iter().collect();
                let term = mul(&mul(&left, v), &right);
                add_into(&mut out, &(c * koszul(k * prefix)), &term);
            }
            prefix += degs[g as usize];
        }
    }
    out
}

/// Degrees of `H^{⊕n}`, summand-major.
pub fn arity_degrees(base: &[u32], n: usize) -> Vec<u32> {
    (0..n).flat_map(|_| base.iter().copied()).collect()
}

pub fn pointed_der_dim(degs: &[u32], k: u32) -> usize {
    degs.iter().map(|&d| LieSlice::new(degs, d + k).dim()).sum()
}

/// Dimension of `{θ ∈ Der_k : θ(ω) = 0}`.
pub fn annihilator_dim(degs: &[u32], k: u32, omega: &Poly, omega_degree: u32) -> usize {
    let target_words = words(degs, omega_degree + k);
    let index: BTreeMap<Vec<u8>, usize> = target_words.into_iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut columns = Vec::new();
    for (g, &d) in degs.iter().enumerate() {
        let slice = LieSlice::new(degs, d + k);
        for b in 0..slice.dim() {
            let values: BTreeMap<u8, Poly> = [(g as u8, slice.poly(b))].into_iter().collect();
            columns.push(to_dense(&apply_derivation(omega, k, degs, &values), &index));
        }
    }
    if columns.is_empty() {
        return 0;
    }
    columns.len() - rank(columns)
}

/// `ω_n = Σ_j [a^j, b^j]` written out for a pairing with `a^# = b`, `b^# = a` on odd `a, b`.
pub fn omega_ab(n: usize, degs: &[u32]) -> Poly {
    let mut out = Poly::new();
    for j in 0..n {
        let (a, b) = ((2 * j) as u8, (2 * j + 1) as u8);
        add_into(
            &mut out,
            &Q::one(),
            &commutator(&letter(a), degs[a as usize], &letter(b), degs[b as usize]),
        );
    }
    out
}

pub fn relabel(p: &Poly, f: impl Fn(u8) -> u8) -> Poly {
    let mut out = Poly::new();
    for (w, c) in p {
        add_into(
            &mut out,
            c,
            &[(w.iter().map(|&g| f(g)).collect(), Q::one())].into_iter().collect(),
        );
    }
    out
}

/// Trace of a summand permutation on `Der_k(L(H^{⊕n}))` (single base generator of degree `d`).
/// `σ.θ = σ ∘ θ ∘ σ^{-1}` permutes the blocks; only fixed generators contribute.
pub fn der_trace(d: u32, n: usize, k: u32, sigma: &[usize]) -> Q {
    let degs = vec![d; n];
    let slice = LieSlice::new(&degs, d + k);
    let mut block = Q::zero();
    for i in 0..slice.dim() {
        let moved = relabel(&slice.poly(i), |g| sigma[g as usize] as u8);
        block += slice.coords(&moved)[i].clone();
    }
    let fixed = (0..n).filter(|&j| sigma[j] == j).count();
    block * q(fixed as i64)
}
