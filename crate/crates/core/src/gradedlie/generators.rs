use super::tensor::Tensor;
use super::GradedLieError;

/// Generators `α_i^j` of `H^{⊕n}`: base symbol `i`, summand `j`.
///
/// Letters are numbered summand-major, `index = j * m + i` (both 0-based), and that
/// numbering is the total order used for Lyndon words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    symbols: Vec<String>,
    base_degrees: Vec<u32>,
    arity: usize,
    degrees: Vec<u32>,
    differential: Vec<Tensor>,
}

pub const MAX_GENERATORS: usize = 255;

impl GeneratorSet {
    /// `base_differential[i]` is `dα_i` written in base letters `0..m`.
    pub fn new(
        symbols: Vec<String>,
        base_degrees: Vec<u32>,
        base_differential: &[Tensor],
        arity: usize,
    ) -> Result<Self, GradedLieError> {
        let m = base_degrees.len();
        assert_eq!(symbols.len(), m);
        assert_eq!(base_differential.len(), m);
        if arity == 0 {
            return Err(GradedLieError::ZeroArity);
        }
        if m * arity > MAX_GENERATORS {
            return Err(GradedLieError::TooManyGenerators(m * arity));
        }
        let degrees = (0..m * arity).map(|g| base_degrees[g % m]).collect();
        let differential = (0..arity)
            .flat_map(|j| base_differential.iter().map(move |d| d.relabel(|b| (j * m) as u8 + b)))
            .collect();
        Ok(Self {
            symbols,
            base_degrees,
            arity,
            degrees,
            differential,
        })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base_len(&self) -> usize {
        self.base_degrees.len()
    }

    pub fn base_degrees(&self) -> &[u32] {
        &self.base_degrees
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, g: u8) -> u32 {
        self.degrees[g as usize]
    }

    pub fn word_degree(&self, w: &[u8]) -> u32 {
        w.iter().map(|&g| self.degrees[g as usize]).sum()
    }

    pub fn index(&self, summand: usize, base: usize) -> u8 {
        debug_assert!(summand < self.arity && base < self.base_len());
        (summand * self.base_len() + base) as u8
    }

    pub fn summand(&self, g: u8) -> usize {
        g as usize / self.base_len()
    }

    pub fn base(&self, g: u8) -> usize {
        g as usize % self.base_len()
    }

    /// Display name, e.g. `a^2` for base symbol `a` in the second summand.
    pub fn symbol(&self, g: u8) -> String {
        format!("{}^{}", self.symbols[self.base(g)], self.summand(g) + 1)
    }

    pub fn base_symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn differential(&self, g: u8) -> &Tensor {
        &self.differential[g as usize]
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.iter().all(Tensor::is_zero)
    }

    /// Same base data at another arity.
    pub fn with_arity(&self, arity: usize) -> Result<Self, GradedLieError> {
        let m = self.base_len();
        Self::new(
            self.symbols.clone(),
            self.base_degrees.clone(),
            &self.differential[..m],
            arity,
        )
    }
}
