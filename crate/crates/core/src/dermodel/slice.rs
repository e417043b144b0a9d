use std::collections::BTreeMap;

use crate::gradedlie::{FreeLie, LieElement, Tensor};
use crate::ratlinalg::{Scalar, SparseVec, SubspaceBasis};

/// Coordinates of the pointed slice `Der_k(L(H^{⊕n}))`: one block per generator `g`,
/// holding the basis of `L_{|g|+k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedLayout {
    degree: u32,
    offsets: Vec<usize>,
    value_degrees: Vec<u32>,
    dims: Vec<usize>,
    total: usize,
}

impl PointedLayout {
    pub fn new(lie: &FreeLie, k: u32) -> Self {
        let gens = lie.generators();
        let mut offsets = Vec::with_capacity(gens.len());
        let mut dims = Vec::with_capacity(gens.len());
        let mut value_degrees = Vec::with_capacity(gens.len());
        let mut total = 0;
        for g in 0..gens.len() as u8 {
            let d = gens.degree(g) + k;
            let dim = lie.dim(d);
            offsets.push(total);
            dims.push(dim);
            value_degrees.push(d);
            total += dim;
        }
        Self {
            degree: k,
            offsets,
            value_degrees,
            dims,
            total,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn generator_count(&self) -> usize {
        self.offsets.len()
    }

    pub fn offset(&self, g: u8) -> usize {
        self.offsets[g as usize]
    }

    pub fn block_dim(&self, g: u8) -> usize {
        self.dims[g as usize]
    }

    pub fn value_degree(&self, g: u8) -> u32 {
        self.value_degrees[g as usize]
    }

    /// `(generator, basis index)` of a pointed coordinate.
    pub fn locate(&self, coord: usize) -> (u8, usize) {
        let g = match self.offsets.binary_search(&coord) {
            Ok(mut g) => {
                // skip empty blocks sharing the offset
                while self.dims[g] == 0 {
                    g += 1;
                }
                g
            }
            Err(g) => g - 1,
        };
        (g as u8, coord - self.offsets[g])
    }

    pub fn coordinate(&self, g: u8, index: usize) -> usize {
        debug_assert!(index < self.dims[g as usize]);
        self.offsets[g as usize] + index
    }
}

/// A derivation of `L(H^{⊕n})`, stored by its values on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub arity: usize,
    pub degree: u32,
    /// Generator ↦ value of degree `|g| + degree`; absent generators map to 0.
    pub values: BTreeMap<u8, LieElement>,
}

impl Derivation {
    pub fn zero(arity: usize, degree: u32) -> Self {
        Self {
            arity,
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn from_pointed(arity: usize, layout: &PointedLayout, v: &SparseVec) -> Self {
        let mut blocks: BTreeMap<u8, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (c, x) in v.iter() {
            let (g, i) = layout.locate(c);
            blocks.entry(g).or_default().push((i, x.clone()));
        }
        Self {
            arity,
            degree: layout.degree(),
            values: blocks
                .into_iter()
                .map(|(g, e)| {
                    (
                        g,
                        LieElement::from_coords(layout.value_degree(g), &SparseVec::from_pairs(e)),
                    )
                })
                .collect(),
        }
    }

    pub fn to_pointed(&self, layout: &PointedLayout) -> SparseVec {
        SparseVec::from_pairs(self.values.iter().flat_map(|(g, e)| {
            e.coeffs()
                .iter()
                .map(move |(i, c)| (layout.coordinate(*g, *i), c.clone()))
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(LieElement::is_zero)
    }

    /// Tensor expansions of the generator values.
    pub fn value_tensors(&self, lie: &FreeLie) -> BTreeMap<u8, Tensor> {
        self.values
            .iter()
            .filter(|(_, e)| !e.is_zero())
            .map(|(g, e)| (*g, lie.to_tensor(e)))
            .collect()
    }
}

/// Basis of a slice inside pointed coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SliceBasis {
    /// Every pointed derivation.
    Full,
    /// A subspace, in canonical echelon form.
    Sub(SubspaceBasis),
}

/// `Der_k` at arity `n` in one mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerSlice {
    pub arity: usize,
    pub degree: u32,
    pub mode: &'static str,
    pub layout: PointedLayout,
    pub basis: SliceBasis,
}

impl DerSlice {
    pub fn dim(&self) -> usize {
        match &self.basis {
            SliceBasis::Full => self.layout.dim(),
            SliceBasis::Sub(b) => b.dim(),
        }
    }

    /// Pointed coordinates of a vector given in slice coordinates.
    pub fn to_pointed(&self, coords: &SparseVec) -> SparseVec {
        match &self.basis {
            SliceBasis::Full => coords.clone(),
            SliceBasis::Sub(b) => {
                let mut acc = SparseVec::new();
                for (i, c) in coords.iter() {
                    acc = acc.add_scaled(c, &b.vectors()[i]);
                }
                acc
            }
        }
    }

    /// Slice coordinates of a pointed vector, or `None` if it lies outside the slice.
    pub fn from_pointed(&self, v: &SparseVec) -> Option<SparseVec> {
        match &self.basis {
            SliceBasis::Full => Some(v.clone()),
            SliceBasis::Sub(b) => b
                .coordinates_in_span(v)
                .expect("pointed vector has layout dimension")
                .map(|c| SparseVec::from_dense(&c)),
        }
    }

    pub fn basis_vector(&self, i: usize) -> SparseVec {
        match &self.basis {
            SliceBasis::Full => SparseVec::unit(i),
            SliceBasis::Sub(b) => b.vectors()[i].clone(),
        }
    }

    pub fn derivation(&self, coords: &SparseVec) -> Derivation {
        Derivation::from_pointed(self.arity, &self.layout, &self.to_pointed(coords))
    }
}
