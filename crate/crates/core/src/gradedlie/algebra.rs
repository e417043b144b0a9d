use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num::{One, Zero};

use super::generators::GeneratorSet;
use super::lyndon::{lyndon_words, Bracketer};
use super::tensor::{Tensor, Word};
use super::GradedLieError;
use crate::ratlinalg::{int, Scalar, SparseVec};

/// Basis element of the free graded Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LieBasisElement {
    /// Standard bracketing of a Lyndon word.
    Lyndon(Word),
    /// `[P(w), P(w)]` for an odd-degree Lyndon word `w`.
    Square(Word),
}

impl LieBasisElement {
    /// The lexicographically least word in the tensor expansion.
    pub fn leading_word(&self) -> Word {
        match self {
            LieBasisElement::Lyndon(w) => w.clone(),
            LieBasisElement::Square(w) => [w.as_slice(), w.as_slice()].concat(),
        }
    }

    pub fn display(&self, gens: &GeneratorSet) -> String {
        fn bracketing(w: &[u8], gens: &GeneratorSet) -> String {
            if w.len() == 1 {
                return gens.symbol(w[0]);
            }
            let (u, v) = super::lyndon::standard_factorization(w);
            format!("[{},{}]", bracketing(u, gens), bracketing(v, gens))
        }
        match self {
            LieBasisElement::Lyndon(w) => bracketing(w, gens),
            LieBasisElement::Square(w) => {
                let b = bracketing(w, gens);
                format!("[{b},{b}]")
            }
        }
    }
}

/// Degree-`m` part of `L(V)`: basis, tensor expansions and the leading-word index.
#[derive(Debug)]
pub struct LieCell {
    degree: u32,
    basis: Vec<LieBasisElement>,
    expansions: Vec<Tensor>,
    leads: HashMap<Word, usize>,
}

impl LieCell {
    fn build(gens: &GeneratorSet, degree: u32) -> Self {
        let degrees = gens.degrees();
        let mut bracketer = Bracketer::new(degrees);
        let mut entries: Vec<(Word, LieBasisElement, Tensor)> = Vec::new();
        for w in lyndon_words(degrees, degree) {
            let t = bracketer.expand(&w);
            entries.push((w.clone(), LieBasisElement::Lyndon(w), t));
        }
        if degree.is_multiple_of(2) && (degree / 2) % 2 == 1 {
            for w in lyndon_words(degrees, degree / 2) {
                let p = bracketer.expand(&w);
                let t = p.commutator(degree / 2, &p, degree / 2);
                let b = LieBasisElement::Square(w);
                entries.push((b.leading_word(), b, t));
            }
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut leads = HashMap::with_capacity(entries.len());
        let mut basis = Vec::with_capacity(entries.len());
        let mut expansions = Vec::with_capacity(entries.len());
        for (i, (lead, b, t)) in entries.into_iter().enumerate() {
            debug_assert_eq!(t.min_term().map(|(w, _)| w), Some(&lead));
            leads.insert(lead, i);
            basis.push(b);
            expansions.push(t);
        }
        Self {
            degree,
            basis,
            expansions,
            leads,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LieBasisElement] {
        &self.basis
    }

    pub fn expansion(&self, index: usize) -> &Tensor {
        &self.expansions[index]
    }

    /// Writes a tensor known to be a Lie element of this degree in the basis.
    ///
    /// The expansions are triangular with respect to their leading words, so the least
    /// remaining word always names the next basis element to peel off.
    pub fn coordinates(&self, t: &Tensor) -> Result<BTreeMap<usize, Scalar>, GradedLieError> {
        let mut rest = t.clone();
        let mut out = BTreeMap::new();
        while let Some((w, c)) = rest.min_term() {
            let Some(&i) = self.leads.get(w) else {
                return Err(GradedLieError::BasisExpressionFailure {
                    degree: self.degree,
                    word: w.clone(),
                });
            };
            let lead = self.expansions[i].coefficient(w);
            let coeff = c / lead;
            rest.add_scaled(&-coeff.clone(), &self.expansions[i]);
            out.insert(i, coeff);
        }
        Ok(out)
    }
}

/// A homogeneous element of `L(V)` in the basis of its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    degree: u32,
    coeffs: BTreeMap<usize, Scalar>,
}

impl LieElement {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(degree: u32, index: usize) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::from([(index, Scalar::one())]),
        }
    }

    pub fn from_coords(degree: u32, coords: &SparseVec) -> Self {
        Self {
            degree,
            coeffs: coords.iter().map(|(i, c)| (i, c.clone())).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Scalar> {
        &self.coeffs
    }

    pub fn coords(&self) -> SparseVec {
        SparseVec::from_pairs(self.coeffs.iter().map(|(i, c)| (*i, c.clone())))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            degree: self.degree,
            coeffs: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.coeffs.iter().map(|(i, v)| (*i, v * c)).collect()
            },
        }
    }

    pub fn add(&self, other: &LieElement) -> Self {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        let mut coeffs = self.coeffs.clone();
        for (i, v) in &other.coeffs {
            let e = coeffs.entry(*i).or_insert_with(Scalar::zero);
            *e += v;
            if e.is_zero() {
                coeffs.remove(i);
            }
        }
        Self {
            degree: self.degree,
            coeffs,
        }
    }
}

/// The free graded Lie algebra `L(V)` on a generator set, realized inside `T(V)`.
///
/// Degree cells are built on first use and never replaced.
pub struct FreeLie {
    gens: GeneratorSet,
    cells: RwLock<BTreeMap<u32, Arc<LieCell>>>,
}

impl fmt::Debug for FreeLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeLie").field("generators", &self.gens.len()).finish()
    }
}

impl FreeLie {
    pub fn new(gens: GeneratorSet) -> Self {
        Self {
            gens,
            cells: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn cell(&self, degree: u32) -> Arc<LieCell> {
        if let Some(c) = self.cells.read().expect("cell cache").get(&degree) {
            return c.clone();
        }
        let built = Arc::new(LieCell::build(&self.gens, degree));
        let mut cells = self.cells.write().expect("cell cache");
        cells.entry(degree).or_insert(built).clone()
    }

    pub fn dim(&self, degree: u32) -> usize {
        if degree == 0 {
            0
        } else {
            self.cell(degree).dim()
        }
    }

    /// Basis of `L_m` in canonical order.
    pub fn lyndon_basis(&self, degree: u32) -> Vec<LieBasisElement> {
        if degree == 0 {
            return Vec::new();
        }
        self.cell(degree).basis().to_vec()
    }

    pub fn generator(&self, g: u8) -> LieElement {
        let d = self.gens.degree(g);
        let cell = self.cell(d);
        let i = cell.leads[&vec![g]];
        LieElement::basis(d, i)
    }

    pub fn to_tensor(&self, e: &LieElement) -> Tensor {
        let mut t = Tensor::zero();
        if e.is_zero() {
            return t;
        }
        let cell = self.cell(e.degree);
        for (i, c) in &e.coeffs {
            t.add_scaled(c, cell.expansion(*i));
        }
        t
    }

    /// Re-expresses a tensor of the given degree in the Lie basis.
    pub fn from_tensor(&self, degree: u32, t: &Tensor) -> Result<LieElement, GradedLieError> {
        if t.is_zero() {
            return Ok(LieElement::zero(degree));
        }
        if degree == 0 {
            return Err(GradedLieError::BasisExpressionFailure {
                degree,
                word: t.min_term().expect("nonzero").0.clone(),
            });
        }
        let coeffs = self.cell(degree).coordinates(t)?;
        Ok(LieElement { degree, coeffs })
    }

    pub fn bracket(&self, u: &LieElement, v: &LieElement) -> Result<LieElement, GradedLieError> {
        let t = self.to_tensor(u).commutator(u.degree, &self.to_tensor(v), v.degree);
        self.from_tensor(u.degree + v.degree, &t)
    }

    /// Tensor of `d(t)`, extending the generator differential as a degree −1 derivation.
    pub fn differential_tensor(&self, t: &Tensor) -> Tensor {
        let gens = &self.gens;
        t.apply_derivation(
            -1,
            |g| gens.degree(g),
            |g| {
                let d = gens.differential(g);
                (!d.is_zero()).then_some(d)
            },
        )
    }

    pub fn apply_differential(&self, e: &LieElement) -> Result<LieElement, GradedLieError> {
        let dt = self.differential_tensor(&self.to_tensor(e));
        self.from_tensor(e.degree.saturating_sub(1), &dt)
    }

    /// Image of `e` under the Lie algebra map induced by a letter relabeling into `target`.
    pub fn relabel_into(
        &self,
        e: &LieElement,
        target: &FreeLie,
        f: impl Fn(u8) -> u8,
    ) -> Result<LieElement, GradedLieError> {
        target.from_tensor(e.degree, &self.to_tensor(e).relabel(f))
    }

    pub fn display(&self, e: &LieElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let cell = self.cell(e.degree);
        let mut out = String::new();
        for (n, (i, c)) in e.coeffs.iter().enumerate() {
            let b = cell.basis()[*i].display(&self.gens);
            if n > 0 {
                out.push_str(" + ");
            }
            if c == &int(1) {
                out.push_str(&b);
            } else {
                out.push_str(&format!("({c})*{b}"));
            }
        }
        out
    }
}
