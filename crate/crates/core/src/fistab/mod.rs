//! FI-module structure on derivation complexes and their homology: induced maps of
//! injections (extension by zero), `Σ_n`-actions, and the consistency check.

mod injection;

pub use injection::Injection;

use std::sync::Arc;

use thiserror::Error;

use crate::dermodel::{ComplexMode, DerError, Engine, HomologySlice};
use crate::oncemap::OnceMap;
use crate::ratlinalg::{Scalar, SparseMatrix, SparseVec, SubspaceBasis};
use crate::reptheory::{partitions, ClassFunction, Partition, RepError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiError {
    #[error("map {image:?} into a set of size {target} is not injective")]
    NotInjective { target: usize, image: Vec<usize> },
    #[error("image of a cycle representative is not a cycle (arity {arity}, degree {degree})")]
    NotAChainMap { arity: usize, degree: u32 },
    #[error(transparent)]
    Der(#[from] DerError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A linear map between cells at arities `source` and `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub source: usize,
    pub target: usize,
    pub degree: u32,
    pub mode: &'static str,
    pub matrix: SparseMatrix,
}

/// The FI-module `S ↦ Der_k` (and its homology) of one model in one mode.
pub struct FiModule<'a> {
    engine: &'a Engine,
    mode: Arc<dyn ComplexMode>,
    slice_maps: OnceMap<(Injection, u32), SparseMatrix>,
    homology_maps: OnceMap<(Injection, u32), SparseMatrix>,
}

impl<'a> FiModule<'a> {
    pub fn new(engine: &'a Engine, mode: Arc<dyn ComplexMode>) -> Result<Self, FiError> {
        mode.check_model(engine.model())?;
        Ok(Self {
            engine,
            mode,
            slice_maps: OnceMap::default(),
            homology_maps: OnceMap::default(),
        })
    }

    pub fn engine(&self) -> &'a Engine {
        self.engine
    }

    pub fn mode(&self) -> &dyn ComplexMode {
        &*self.mode
    }

    pub fn homology(&self, n: usize, k: u32) -> Result<Arc<HomologySlice>, FiError> {
        Ok(self.engine.homology(n, k, &*self.mode)?)
    }

    fn induced(&self, i: &Injection, k: u32, matrix: SparseMatrix) -> InducedMap {
        InducedMap {
            source: i.source(),
            target: i.target(),
            degree: k,
            mode: self.mode.name(),
            matrix,
        }
    }

    /// Extension by zero on slice coordinates (degree `k ≥ 0`).
    pub fn induced_slice_map(&self, i: &Injection, k: u32) -> Result<InducedMap, FiError> {
        let m = self
            .slice_maps
            .get_or_try_insert((i.clone(), k), || -> Result<_, FiError> {
                let (n, m) = (i.source(), i.target());
                let mode = &*self.mode;
                let src = self.engine.derivation_basis(n, k, mode)?;
                let dst = self.engine.derivation_basis(m, k, mode)?;
                let push = self.engine.pushforward_pointed(n, m, i.image(), k)?;
                let mut columns = Vec::with_capacity(src.dim());
                for c in 0..src.dim() {
                    let image = push.mul_vec(&src.basis_vector(c));
                    let coords = dst.from_pointed(&image).ok_or(DerError::ClosureViolation {
                        arity: m,
                        degree: k,
                        context: "extension by zero",
                    })?;
                    columns.push(coords);
                }
                Ok(SparseMatrix::from_columns(dst.dim(), &columns))
            })?;
        Ok(self.induced(i, k, (*m).clone()))
    }

    /// The induced map on `H_k`, in homology coordinates.
    pub fn homology_map(&self, i: &Injection, k: u32) -> Result<InducedMap, FiError> {
        let m = self
            .homology_maps
            .get_or_try_insert((i.clone(), k), || -> Result<_, FiError> {
                let src = self.homology(i.source(), k)?;
                let dst = self.homology(i.target(), k)?;
                if src.dim() == 0 || dst.dim() == 0 {
                    return Ok(SparseMatrix::zeros(dst.dim(), src.dim()));
                }
                let slice = self.induced_slice_map(i, k)?.matrix;
                let mut columns = Vec::with_capacity(src.dim());
                for r in src.representatives() {
                    let image = slice.mul_vec(r);
                    let coords = dst.reduce(&image).map_err(|e| match e {
                        DerError::NotACycle { arity, degree } => FiError::NotAChainMap { arity, degree },
                        other => other.into(),
                    })?;
                    columns.push(SparseVec::from_dense(&coords));
                }
                Ok(SparseMatrix::from_columns(dst.dim(), &columns))
            })?;
        Ok(self.induced(i, k, (*m).clone()))
    }

    /// `σ.θ = σ_* ∘ θ ∘ σ_*^{-1}` on `H_k(n)`.
    pub fn sigma_action(&self, sigma: &Injection, k: u32) -> Result<SparseMatrix, FiError> {
        assert!(sigma.is_permutation(), "sigma_action needs a permutation");
        Ok(self.homology_map(sigma, k)?.matrix)
    }

    /// Whether every `σ ∈ Σ_m` fixing `{1..n}` fixes the image of `H_k(n) → H_k(m)`.
    /// Checked on the generators `(j, j+1)`, `n < j < m`.
    pub fn consistency_check(&self, n: usize, m: usize, k: u32) -> Result<bool, FiError> {
        assert!(n < m);
        let image = self.homology_map(&Injection::standard(n, m), k)?.matrix;
        let columns = image.columns();
        for j in n..m.saturating_sub(1) {
            let s = self.sigma_action(&Injection::transposition(m, j, j + 1), k)?;
            if columns.iter().any(|v| s.mul_vec(v) != *v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `χ(μ) = tr(σ_μ)` on `H_k(n)`.
    pub fn character(&self, n: usize, k: u32) -> Result<ClassFunction, FiError> {
        let dim = self.homology(n, k)?.dim();
        let mut chi = ClassFunction::zero(n as u32);
        for mu in partitions(n as u32) {
            let value = if dim == 0 {
                Scalar::from_integer(0.into())
            } else {
                let sigma = Injection::new(n, mu.representative()).expect("representative is a permutation");
                self.sigma_action(&sigma, k)?.trace()
            };
            chi.values.insert(mu, value);
        }
        Ok(chi)
    }

    /// Whether `H_k(m)` is spanned by the `Σ_m`-orbit of the image of `H_k(m-1)`
    /// (every injection from a smaller set factors through `{1..m-1}` up to `Σ_m`).
    pub fn generated_from_below(&self, m: usize, k: u32) -> Result<bool, FiError> {
        assert!(m >= 2);
        let dim = self.homology(m, k)?.dim();
        let image = self.homology_map(&Injection::standard(m - 1, m), k)?.matrix;
        let mut span = SubspaceBasis::from_vectors(dim, &image.columns());
        let gens: Vec<SparseMatrix> = (0..m - 1)
            .map(|j| self.sigma_action(&Injection::transposition(m, j, j + 1), k))
            .collect::<Result<_, _>>()?;
        loop {
            if span.dim() == dim {
                return Ok(true);
            }
            let mut vectors = span.vectors().to_vec();
            for s in &gens {
                vectors.extend(span.vectors().iter().map(|v| s.mul_vec(v)));
            }
            let next = SubspaceBasis::from_vectors(dim, &vectors);
            if next.dim() == span.dim() {
                return Ok(false);
            }
            span = next;
        }
    }
}

/// Cycle type of a permutation given as an injection.
pub fn cycle_type(sigma: &Injection) -> Partition {
    Partition::cycle_type(sigma.image())
}
