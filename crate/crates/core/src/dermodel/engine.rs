use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use super::mode::ComplexMode;
use super::slice::{DerSlice, Derivation, PointedLayout, SliceBasis};
use super::DerError;
use crate::gradedlie::{lie_dims, FreeLie, GradedLieError, LieElement, ModelSpec, Tensor};
use crate::oncemap::OnceMap;
use crate::ratlinalg::{
    image_basis, kernel_basis, quotient_basis, LinalgError, Quotient, Scalar, SparseMatrix, SparseVec, SubspaceBasis,
};

/// Per-arity data: the free Lie algebra on `H^{⊕n}` and, for paired models, `ω_n`.
pub struct ArityData {
    pub lie: FreeLie,
    /// Generators whose differential involves a given letter.
    dependents: Vec<Vec<u8>>,
    omega: OnceLock<Result<(LieElement, Tensor), GradedLieError>>,
}

/// `H_k` of a derivation complex at one arity.
#[derive(Debug, Clone)]
pub struct HomologySlice {
    pub arity: usize,
    pub degree: u32,
    pub mode: &'static str,
    pub slice: Arc<DerSlice>,
    pub cycles: SubspaceBasis,
    pub quotient: Quotient,
}

impl HomologySlice {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cycle representatives of a homology basis, in slice coordinates.
    pub fn representatives(&self) -> &[SparseVec] {
        self.quotient.representatives()
    }

    /// Homology coordinates of a cycle given in slice coordinates.
    pub fn reduce(&self, v: &SparseVec) -> Result<Vec<Scalar>, DerError> {
        self.quotient.reduce(v).map_err(|e| match e {
            LinalgError::NotInSpan => DerError::NotACycle {
                arity: self.arity,
                degree: self.degree,
            },
            other => other.into(),
        })
    }
}

type SliceKey = (&'static str, usize, u32);

/// Derivation complexes of one model, with write-once caches for every computed cell.
pub struct Engine {
    model: ModelSpec,
    max_dim: Option<usize>,
    arities: OnceMap<usize, ArityData>,
    layouts: OnceMap<(usize, u32), PointedLayout>,
    slices: OnceMap<SliceKey, DerSlice>,
    pointed_differentials: OnceMap<(usize, u32), SparseMatrix>,
    differentials: OnceMap<SliceKey, SparseMatrix>,
    homologies: OnceMap<SliceKey, HomologySlice>,
    pushforwards: OnceMap<(usize, Vec<usize>, u32), SparseMatrix>,
}

impl Engine {
    pub fn new(model: ModelSpec) -> Result<Self, DerError> {
        let violations = model.validate();
        if !violations.is_empty() {
            return Err(DerError::InvalidModel(violations));
        }
        Ok(Self {
            model,
            max_dim: None,
            arities: OnceMap::default(),
            layouts: OnceMap::default(),
            slices: OnceMap::default(),
            pointed_differentials: OnceMap::default(),
            differentials: OnceMap::default(),
            homologies: OnceMap::default(),
            pushforwards: OnceMap::default(),
        })
    }

    /// Refuse cells whose pointed slice exceeds `cap` dimensions.
    pub fn with_max_dim(mut self, cap: Option<usize>) -> Self {
        self.max_dim = cap;
        self
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn arity(&self, n: usize) -> Result<Arc<ArityData>, DerError> {
        if n == 0 {
            return Err(DerError::ZeroArity);
        }
        self.arities.get_or_try_insert(n, || {
            let gens = self.model.free_product_generators(n)?;
            let mut dependents = vec![Vec::new(); gens.len()];
            for h in 0..gens.len() as u8 {
                let mut letters: Vec<u8> = gens
                    .differential(h)
                    .terms()
                    .flat_map(|(w, _)| w.iter().copied())
                    .collect();
                letters.sort_unstable();
                letters.dedup();
                for g in letters {
                    dependents[g as usize].push(h);
                }
            }
            Ok(ArityData {
                lie: FreeLie::new(gens),
                dependents,
                omega: OnceLock::new(),
            })
        })
    }

    pub fn lie(&self, n: usize) -> Result<Arc<ArityData>, DerError> {
        self.arity(n)
    }

    fn omega_pair(&self, n: usize) -> Result<(Arc<ArityData>, LieElement, Tensor), DerError> {
        let data = self.arity(n)?;
        let res = data
            .omega
            .get_or_init(|| {
                let omega = self.model.omega(&data.lie)?;
                let t = data.lie.to_tensor(&omega);
                Ok((omega, t))
            })
            .clone();
        let (omega, t) = res?;
        Ok((data, omega, t))
    }

    /// `ω_n`, checked to be a `Σ_n`-invariant cycle.
    pub fn omega(&self, n: usize) -> Result<LieElement, DerError> {
        Ok(self.omega_pair(n)?.1)
    }

    pub fn layout(&self, n: usize, k: u32) -> Result<Arc<PointedLayout>, DerError> {
        self.layouts.get_or_try_insert((n, k), || {
            let data = self.arity(n)?;
            let gens = data.lie.generators();
            if let Some(cap) = self.max_dim {
                let top = gens.degrees().iter().max().copied().unwrap_or(0) + k;
                let dims = lie_dims(gens.degrees(), top);
                let dim: u64 = gens.degrees().iter().map(|&d| dims[(d + k) as usize]).sum();
                if dim as usize > cap {
                    return Err(DerError::CellTooLarge {
                        arity: n,
                        degree: k,
                        dim: dim as usize,
                        cap,
                    });
                }
            }
            Ok(PointedLayout::new(&data.lie, k))
        })
    }

    /// Matrix of `θ ↦ θ(ω_n)` from pointed coordinates to `L_{d-2+k}`.
    pub fn omega_evaluation(&self, n: usize, layout: &PointedLayout) -> Result<SparseMatrix, DerError> {
        let (data, omega, omega_t) = self.omega_pair(n)?;
        let lie = &data.lie;
        let gens = lie.generators();
        let k = layout.degree();
        let target = omega.degree() + k;
        let mut columns = Vec::with_capacity(layout.dim());
        for g in 0..gens.len() as u8 {
            let cell = lie.cell(layout.value_degree(g));
            for b in 0..layout.block_dim(g) {
                let value = cell.expansion(b);
                let t = omega_t.apply_derivation(k as i64, |x| gens.degree(x), |x| (x == g).then_some(value));
                columns.push(lie.from_tensor(target, &t)?.coords());
            }
        }
        Ok(SparseMatrix::from_columns(lie.dim(target), &columns))
    }

    /// Basis of `Der_k` at arity `n` in the given mode. `k = 0` is only used for truncation.
    pub fn derivation_basis(&self, n: usize, k: u32, mode: &dyn ComplexMode) -> Result<Arc<DerSlice>, DerError> {
        mode.check_model(&self.model)?;
        self.slices.get_or_try_insert((mode.name(), n, k), || {
            let layout = self.layout(n, k)?;
            let basis = mode.slice_basis(self, n, &layout)?;
            Ok(DerSlice {
                arity: n,
                degree: k,
                mode: mode.name(),
                layout: (*layout).clone(),
                basis,
            })
        })
    }

    /// `[d, θ](g) = d(θ g) - (-1)^k θ(d g)` for a single pointed value `θ = (g ↦ value)`.
    fn differential_of_value(
        &self,
        data: &ArityData,
        k: u32,
        g: u8,
        value: &Tensor,
    ) -> Result<Vec<(u8, LieElement)>, DerError> {
        let lie = &data.lie;
        let gens = lie.generators();
        let mut out = Vec::new();
        let dv = lie.differential_tensor(value);
        let mut per_gen: BTreeMap<u8, Tensor> = BTreeMap::new();
        if !dv.is_zero() {
            per_gen.insert(g, dv);
        }
        let s = crate::ratlinalg::sign(k as u64);
        for &h in &data.dependents[g as usize] {
            let t = gens
                .differential(h)
                .apply_derivation(k as i64, |x| gens.degree(x), |x| (x == g).then_some(value));
            per_gen.entry(h).or_default().add_scaled(&-s.clone(), &t);
        }
        for (h, t) in per_gen {
            if t.is_zero() {
                continue;
            }
            let deg = gens.degree(h) + k - 1;
            out.push((h, lie.from_tensor(deg, &t)?));
        }
        Ok(out)
    }

    /// `δ_k` on pointed coordinates, `Der_k → Der_{k-1}`.
    pub fn pointed_differential(&self, n: usize, k: u32) -> Result<Arc<SparseMatrix>, DerError> {
        if k == 0 {
            return Err(DerError::InvalidDegree(0));
        }
        self.pointed_differentials.get_or_try_insert((n, k), || {
            let data = self.arity(n)?;
            let source = self.layout(n, k)?;
            let target = self.layout(n, k - 1)?;
            let lie = &data.lie;
            let gens = lie.generators();
            if gens.has_zero_differential() {
                return Ok(SparseMatrix::zeros(target.dim(), source.dim()));
            }
            let mut columns = Vec::with_capacity(source.dim());
            for g in 0..gens.len() as u8 {
                let cell = lie.cell(source.value_degree(g));
                for b in 0..source.block_dim(g) {
                    let values = self.differential_of_value(&data, k, g, cell.expansion(b))?;
                    columns.push(SparseVec::from_pairs(values.iter().flat_map(|(h, e)| {
                        let target = &target;
                        e.coeffs()
                            .iter()
                            .map(move |(i, c)| (target.coordinate(*h, *i), c.clone()))
                    })));
                }
            }
            Ok(SparseMatrix::from_columns(target.dim(), &columns))
        })
    }

    /// `δ_k` in slice coordinates of the given mode.
    pub fn differential_matrix(&self, n: usize, k: u32, mode: &dyn ComplexMode) -> Result<Arc<SparseMatrix>, DerError> {
        self.differentials.get_or_try_insert((mode.name(), n, k), || {
            let source = self.derivation_basis(n, k, mode)?;
            let target = self.derivation_basis(n, k - 1, mode)?;
            let pointed = self.pointed_differential(n, k)?;
            if pointed.is_zero() {
                return Ok(SparseMatrix::zeros(target.dim(), source.dim()));
            }
            if let (SliceBasis::Full, SliceBasis::Full) = (&source.basis, &target.basis) {
                return Ok((*pointed).clone());
            }
            let mut columns = Vec::with_capacity(source.dim());
            for i in 0..source.dim() {
                let image = pointed.mul_vec(&source.basis_vector(i));
                let coords = target.from_pointed(&image).ok_or(DerError::ClosureViolation {
                    arity: n,
                    degree: k - 1,
                    context: "differential",
                })?;
                columns.push(coords);
            }
            Ok(SparseMatrix::from_columns(target.dim(), &columns))
        })
    }

    /// `H_k` of the positively truncated complex: `ker(δ_k) / im(δ_{k+1})`, where for `k = 1`
    /// the kernel is taken into the untruncated degree-0 slice of the same mode.
    pub fn homology(&self, n: usize, k: u32, mode: &dyn ComplexMode) -> Result<Arc<HomologySlice>, DerError> {
        if k == 0 {
            return Err(DerError::InvalidDegree(0));
        }
        self.homologies.get_or_try_insert((mode.name(), n, k), || {
            let slice = self.derivation_basis(n, k, mode)?;
            let data = self.arity(n)?;
            let (cycles, boundaries) = if data.lie.generators().has_zero_differential() {
                (SubspaceBasis::full(slice.dim()), SubspaceBasis::empty(slice.dim()))
            } else {
                let down = self.differential_matrix(n, k, mode)?;
                let up = self.differential_matrix(n, k + 1, mode)?;
                (kernel_basis(&down), image_basis(&up))
            };
            let quotient = quotient_basis(&cycles, &boundaries)?;
            Ok(HomologySlice {
                arity: n,
                degree: k,
                mode: mode.name(),
                slice,
                cycles,
                quotient,
            })
        })
    }

    /// `θ(e)`, extending `θ` by `θ[a,b] = [θa, b] + (-1)^{|θ||a|}[a, θb]`.
    pub fn apply_derivation(&self, theta: &Derivation, e: &LieElement) -> Result<LieElement, DerError> {
        let data = self.arity(theta.arity)?;
        let lie = &data.lie;
        let values = theta.value_tensors(lie);
        let t =
            lie.to_tensor(e)
                .apply_derivation(theta.degree as i64, |x| lie.generators().degree(x), |x| values.get(&x));
        Ok(lie.from_tensor(e.degree() + theta.degree, &t)?)
    }

    /// `[θ, η] = θ∘η - (-1)^{|θ||η|} η∘θ`, evaluated on generators.
    pub fn bracket_derivations(&self, theta: &Derivation, eta: &Derivation) -> Result<Derivation, DerError> {
        assert_eq!(theta.arity, eta.arity);
        let data = self.arity(theta.arity)?;
        let lie = &data.lie;
        let gens = lie.generators();
        let degree = theta.degree + eta.degree;
        let s = crate::ratlinalg::sign(theta.degree as u64 * eta.degree as u64);
        let mut values = BTreeMap::new();
        for g in 0..gens.len() as u8 {
            let target = gens.degree(g) + degree;
            let mut v = LieElement::zero(target);
            if let Some(e) = eta.values.get(&g) {
                v = v.add(&self.apply_derivation(theta, e)?);
            }
            if let Some(t) = theta.values.get(&g) {
                v = v.add(&self.apply_derivation(eta, t)?.scale(&-s.clone()));
            }
            if !v.is_zero() {
                values.insert(g, v);
            }
        }
        Ok(Derivation {
            arity: theta.arity,
            degree,
            values,
        })
    }

    /// `[d, θ]` as a derivation.
    pub fn differential_of(&self, theta: &Derivation) -> Result<Derivation, DerError> {
        if theta.degree == 0 {
            return Err(DerError::InvalidDegree(0));
        }
        let data = self.arity(theta.arity)?;
        let lie = &data.lie;
        let mut values: BTreeMap<u8, LieElement> = BTreeMap::new();
        for (g, t) in theta.value_tensors(lie) {
            for (h, e) in self.differential_of_value(&data, theta.degree, g, &t)? {
                let slot = values.entry(h).or_insert_with(|| LieElement::zero(e.degree()));
                *slot = slot.add(&e);
            }
        }
        values.retain(|_, e| !e.is_zero());
        Ok(Derivation {
            arity: theta.arity,
            degree: theta.degree - 1,
            values,
        })
    }

    /// Extension by zero along a summand map `[n] → [m]` (`image[j]` is the target summand of `j`),
    /// on pointed coordinates of degree `k`. Conjugates values through the induced Lie map.
    pub fn pushforward_pointed(
        &self,
        n: usize,
        m: usize,
        image: &[usize],
        k: u32,
    ) -> Result<Arc<SparseMatrix>, DerError> {
        assert_eq!(image.len(), n);
        self.pushforwards.get_or_try_insert((m, image.to_vec(), k), || {
            let source_data = self.arity(n)?;
            let target_data = self.arity(m)?;
            let (src, dst) = (&source_data.lie, &target_data.lie);
            let (sg, tg) = (src.generators(), dst.generators());
            let source = self.layout(n, k)?;
            let target = self.layout(m, k)?;
            let relabel = |x: u8| tg.index(image[sg.summand(x)], sg.base(x));
            let mut columns = Vec::with_capacity(source.dim());
            for g in 0..sg.len() as u8 {
                let h = relabel(g);
                let cell = src.cell(source.value_degree(g));
                for b in 0..source.block_dim(g) {
                    let moved = dst.from_tensor(source.value_degree(g), &cell.expansion(b).relabel(relabel))?;
                    columns.push(SparseVec::from_pairs(
                        moved
                            .coeffs()
                            .iter()
                            .map(|(i, c)| (target.coordinate(h, *i), c.clone())),
                    ));
                }
            }
            Ok(SparseMatrix::from_columns(target.dim(), &columns))
        })
    }

    pub fn cached_cells(&self) -> usize {
        self.homologies.len()
    }
}
