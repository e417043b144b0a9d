use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::engine::Engine;
use super::slice::{PointedLayout, SliceBasis};
use super::DerError;
use crate::gradedlie::ModelSpec;
use crate::ratlinalg::kernel_basis;

/// A family of derivation complexes `n ↦ Der⁺(...)` sharing the pointed coordinates.
///
/// Implementations choose which subspace of pointed derivations forms the slice; the
/// differential, induced maps and homology are mode-agnostic.
pub trait ComplexMode: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn check_model(&self, model: &ModelSpec) -> Result<(), DerError>;

    fn slice_basis(&self, engine: &Engine, arity: usize, layout: &PointedLayout) -> Result<SliceBasis, DerError>;
}

impl fmt::Debug for dyn ComplexMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMode({})", self.name())
    }
}

/// All derivations: the model of `Baut_*` of the wedge.
#[derive(Debug, Default, Clone, Copy)]
pub struct Pointed;

impl ComplexMode for Pointed {
    fn name(&self) -> &'static str {
        "pointed"
    }

    fn description(&self) -> &'static str {
        "Der⁺(L(H^⊕n)): pointed homotopy automorphisms of the n-fold wedge"
    }

    fn check_model(&self, _model: &ModelSpec) -> Result<(), DerError> {
        Ok(())
    }

    fn slice_basis(&self, _engine: &Engine, _arity: usize, _layout: &PointedLayout) -> Result<SliceBasis, DerError> {
        Ok(SliceBasis::Full)
    }
}

/// Derivations annihilating `ω_n`: the model of `Baut_∂` of the punctured connected sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct Boundary;

impl ComplexMode for Boundary {
    fn name(&self) -> &'static str {
        "boundary"
    }

    fn description(&self) -> &'static str {
        "Der⁺(L(H^⊕n) ‖ ω_n): homotopy automorphisms fixing the boundary sphere"
    }

    fn check_model(&self, model: &ModelSpec) -> Result<(), DerError> {
        if model.has_pairing() {
            Ok(())
        } else {
            Err(DerError::ModeRequiresPairing { mode: self.name() })
        }
    }

    fn slice_basis(&self, engine: &Engine, arity: usize, layout: &PointedLayout) -> Result<SliceBasis, DerError> {
        self.check_model(engine.model())?;
        let phi = engine.omega_evaluation(arity, layout)?;
        Ok(SliceBasis::Sub(kernel_basis(&phi)))
    }
}

/// Modes selectable by name.
#[derive(Clone)]
pub struct ModeRegistry {
    modes: BTreeMap<&'static str, Arc<dyn ComplexMode>>,
}

impl ModeRegistry {
    pub fn empty() -> Self {
        Self { modes: BTreeMap::new() }
    }

    pub fn register(&mut self, mode: Arc<dyn ComplexMode>) -> Option<Arc<dyn ComplexMode>> {
        self.modes.insert(mode.name(), mode)
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn ComplexMode>, DerError> {
        self.modes
            .get(name)
            .cloned()
            .ok_or_else(|| DerError::UnknownMode(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.modes.keys().copied()
    }
}

impl Default for ModeRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(Pointed));
        r.register(Arc::new(Boundary));
        r
    }
}
