use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use super::algebra::{FreeLie, LieElement};
use super::generators::GeneratorSet;
use super::tensor::Tensor;
use super::GradedLieError;
use crate::ratlinalg::{self, int, ratio, sign, Scalar, SparseMatrix, SparseVec, SubspaceBasis};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub symbol: String,
    pub degree: i64,
}

/// Bilinear form `⟨α_i, α_j⟩` on the base generators, as a full `m × m` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub matrix: Vec<Vec<Scalar>>,
}

/// A quasi-free dg Lie model `(L(H), d)`, optionally with an intersection pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub name: String,
    pub generators: Vec<Generator>,
    /// `dα_i` in base letters; absent entries are zero.
    pub differential: BTreeMap<usize, Tensor>,
    pub pairing: Option<Pairing>,
    pub ambient_dim: Option<i64>,
    pub minimal: bool,
}

/// One violated well-formedness rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.message)
    }
}

impl ModelSpec {
    pub fn symbols(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.symbol.clone()).collect()
    }

    fn base_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree.max(1) as u32).collect()
    }

    fn base_differential(&self) -> Vec<Tensor> {
        (0..self.generators.len())
            .map(|i| self.differential.get(&i).cloned().unwrap_or_default())
            .collect()
    }

    pub fn has_pairing(&self) -> bool {
        self.pairing.is_some() && self.ambient_dim.is_some()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.base_degrees().into_iter().max().unwrap_or(0)
    }

    /// Pairing degree `d - 2`.
    pub fn pairing_degree(&self) -> Option<u32> {
        self.ambient_dim.map(|d| (d - 2).max(0) as u32)
    }

    /// Generator set of `H^{⊕n}`; the differential of `α_i^j` is that of `α_i` moved into summand `j`.
    pub fn free_product_generators(&self, n: usize) -> Result<GeneratorSet, GradedLieError> {
        GeneratorSet::new(self.symbols(), self.base_degrees(), &self.base_differential(), n)
    }

    /// Checks every standing hypothesis and returns all violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        macro_rules! push {
            ($rule:expr, $message:expr $(,)?) => {
                out.push(Violation {
                    rule: $rule,
                    message: $message,
                })
            };
        }
        let m = self.generators.len();
        if m == 0 {
            push!("nonempty", "model has no generators".into());
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree < 1 {
                push!(
                    "simple-connectivity",
                    format!("generator {} has degree {} (must be ≥ 1)", g.symbol, g.degree),
                );
            }
            if self.generators[..i].iter().any(|h| h.symbol == g.symbol) {
                push!("unique-symbols", format!("generator {} declared twice", g.symbol));
            }
        }
        if m > super::generators::MAX_GENERATORS {
            push!(
                "generator-count",
                format!("{m} generators exceed the supported maximum")
            );
        }
        let degrees_ok = self.generators.iter().all(|g| g.degree >= 1) && m > 0;
        let degrees: Vec<u32> = self.base_degrees();
        let word_degree = |w: &[u8]| -> u32 { w.iter().map(|&g| degrees[g as usize]).sum() };

        for (&i, t) in &self.differential {
            let sym = &self.generators[i].symbol;
            for (w, _) in t.terms() {
                if word_degree(w) as i64 != self.generators[i].degree - 1 {
                    push!(
                        "differential-degree",
                        format!(
                            "d{sym} has a term of degree {} but must have degree {}",
                            word_degree(w),
                            self.generators[i].degree - 1
                        ),
                    );
                    break;
                }
            }
            if self.minimal && t.terms().any(|(w, _)| w.len() < 2) {
                push!(
                    "minimality",
                    format!("d{sym} has a linear term in a model declared minimal")
                );
            }
        }

        if degrees_ok && out.is_empty() {
            if let Ok(gens) = self.free_product_generators(1) {
                let lie = FreeLie::new(gens);
                for (&i, t) in &self.differential {
                    let deg = (self.generators[i].degree - 1) as u32;
                    if lie.from_tensor(deg, t).is_err() {
                        push!(
                            "differential-is-lie",
                            format!("d{} is not a Lie element", self.generators[i].symbol),
                        );
                    }
                }
                for i in 0..m {
                    let g = i as u8;
                    let dd = lie.differential_tensor(lie.generators().differential(g));
                    if !dd.is_zero() {
                        push!("d-squared-zero", format!("d(d{}) ≠ 0", self.generators[i].symbol));
                    }
                }
            }
        }

        match (&self.pairing, self.ambient_dim) {
            (Some(_), None) => push!("ambient-dim", "a pairing requires ambient_dim".into()),
            (None, Some(_)) => {}
            (_, Some(d)) if d < 3 => push!("ambient-dim", format!("ambient_dim {d} must be ≥ 3")),
            _ => {}
        }
        if let (Some(p), Some(d)) = (&self.pairing, self.ambient_dim) {
            let target = d - 2;
            for i in 0..m {
                for j in 0..m {
                    let v = &p.matrix[i][j];
                    let (gi, gj) = (&self.generators[i], &self.generators[j]);
                    if !v.is_zero() && gi.degree + gj.degree != target {
                        push!(
                            "pairing-degree",
                            format!(
                                "⟨{},{}⟩ ≠ 0 but degrees sum to {} instead of {target}",
                                gi.symbol,
                                gj.symbol,
                                gi.degree + gj.degree
                            ),
                        );
                    }
                    let s = sign((gi.degree * gj.degree).unsigned_abs());
                    if j >= i && p.matrix[i][j] != -(s * &p.matrix[j][i]) {
                        push!(
                            "pairing-antisymmetry",
                            format!(
                                "⟨{},{}⟩ and ⟨{},{}⟩ violate graded anti-symmetry",
                                gi.symbol, gj.symbol, gj.symbol, gi.symbol
                            ),
                        );
                    }
                }
            }
            if ratlinalg::rank(&SparseMatrix::from_dense(&p.matrix)) != m {
                push!("pairing-nondegenerate", "pairing matrix is singular".into());
            }
        }
        out
    }

    /// Coefficients `C` with `α_j^# = Σ_k C[j][k] α_k` and `⟨α_i, α_j^#⟩ = δ_ij`, i.e. `C = (Pᵀ)⁻¹`.
    pub fn dual_basis(&self) -> Result<Vec<Vec<Scalar>>, GradedLieError> {
        let p = &self.pairing.as_ref().ok_or(GradedLieError::MissingPairing)?.matrix;
        let m = p.len();
        // Row-reduce [Pᵀ | I].
        let rows: Vec<SparseVec> = (0..m)
            .map(|r| {
                SparseVec::from_pairs(
                    (0..m)
                        .map(|c| (c, p[c][r].clone()))
                        .chain(std::iter::once((m + r, int(1)))),
                )
            })
            .collect();
        let rref = SubspaceBasis::from_vectors(2 * m, &rows);
        if rref.pivots().iter().take(m).copied().ne(0..m) || rref.dim() < m {
            return Err(GradedLieError::SingularPairing);
        }
        // rref = [I | (Pᵀ)⁻¹]
        let inv: Vec<Vec<Scalar>> = rref
            .vectors()
            .iter()
            .map(|v| (0..m).map(|c| v.get(m + c)).collect())
            .collect();
        Ok(inv)
    }

    /// `ω_n = Σ_{i,j} ½[(α_i^j)^#, α_i^j]` in `lie = L(H^{⊕n})`, with the global sign fixed so that
    /// the coefficient of the least basis bracket is positive.
    ///
    /// Verifies `dω_n = 0` and invariance under adjacent summand transpositions.
    pub fn omega(&self, lie: &FreeLie) -> Result<LieElement, GradedLieError> {
        let d = self.pairing_degree().ok_or(GradedLieError::MissingPairing)?;
        let dual = self.dual_basis()?;
        let gens = lie.generators();
        let (m, n) = (gens.base_len(), gens.arity());
        let half = ratio(1, 2);
        let mut total = Tensor::zero();
        for j in 0..n {
            for i in 0..m {
                let alpha = gens.index(j, i);
                let mut sharp = Tensor::zero();
                for (k, c) in dual[i].iter().enumerate() {
                    sharp.add_term(vec![gens.index(j, k)], c.clone());
                }
                let ds = d - gens.degree(alpha);
                let br = sharp.commutator(ds, &Tensor::word(vec![alpha]), gens.degree(alpha));
                total.add_scaled(&half, &br);
            }
        }
        let mut omega = lie.from_tensor(d, &total)?;
        if let Some((_, c)) = omega.coeffs().iter().next() {
            if c.is_negative() {
                omega = omega.scale(&int(-1));
            }
        }
        if !lie.apply_differential(&omega)?.is_zero() {
            return Err(GradedLieError::OmegaNotCycle);
        }
        for s in 0..n.saturating_sub(1) {
            let swapped = lie.relabel_into(&omega, lie, |g| {
                let j = gens.summand(g);
                let j2 = if j == s {
                    s + 1
                } else if j == s + 1 {
                    s
                } else {
                    j
                };
                gens.index(j2, gens.base(g))
            })?;
            if swapped != omega {
                return Err(GradedLieError::InvarianceFailure {
                    transposition: (s + 1, s + 2),
                });
            }
        }
        Ok(omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paired(gens: &[(&str, i64)], entries: &[(usize, usize, i64)], d: i64) -> ModelSpec {
        let m = gens.len();
        let mut matrix = vec![vec![int(0); m]; m];
        for &(i, j, v) in entries {
            matrix[i][j] = int(v);
        }
        ModelSpec {
            name: "t".into(),
            generators: gens
                .iter()
                .map(|(s, d)| Generator {
                    symbol: s.to_string(),
                    degree: *d,
                })
                .collect(),
            differential: BTreeMap::new(),
            pairing: Some(Pairing { matrix }),
            ambient_dim: Some(d),
            minimal: true,
        }
    }

    fn pairing_value(model: &ModelSpec, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let p = &model.pairing.as_ref().unwrap().matrix;
        let mut acc = int(0);
        for i in 0..x.len() {
            for j in 0..y.len() {
                acc += &x[i] * &y[j] * &p[i][j];
            }
        }
        acc
    }

    fn unit(m: usize, i: usize) -> Vec<Scalar> {
        (0..m).map(|k| if k == i { int(1) } else { int(0) }).collect()
    }

    #[test]
    fn dual_basis_of_s2xs2_swaps() {
        let model = paired(&[("a", 1), ("b", 1)], &[(0, 1, 1), (1, 0, 1)], 4);
        assert!(model.validate().is_empty(), "{:?}", model.validate());
        let c = model.dual_basis().unwrap();
        assert_eq!(c, vec![unit(2, 1), unit(2, 0)]);
    }

    #[test]
    fn dual_basis_defining_property() {
        let model = paired(
            &[("a", 2), ("b", 2), ("c", 2), ("e", 2)],
            &[(0, 1, 1), (1, 0, -1), (2, 3, 3), (3, 2, -3), (0, 3, 2), (3, 0, -2)],
            6,
        );
        assert!(model.validate().is_empty(), "{:?}", model.validate());
        let c = model.dual_basis().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { int(1) } else { int(0) };
                assert_eq!(pairing_value(&model, &unit(4, i), &c[j]), expected);
            }
        }
    }

    #[test]
    fn diagonal_pairing_is_self_dual() {
        let model = paired(&[("a", 1), ("b", 1)], &[(0, 0, 1), (1, 1, 1)], 4);
        assert!(model.validate().is_empty());
        assert_eq!(model.dual_basis().unwrap(), vec![unit(2, 0), unit(2, 1)]);
    }

    #[test]
    fn permuted_pairing_permutes_duals() {
        let a = paired(&[("a", 1), ("b", 1), ("c", 1)], &[(0, 0, 1), (1, 2, 1), (2, 1, 1)], 4);
        let b = paired(&[("c", 1), ("a", 1), ("b", 1)], &[(1, 1, 1), (2, 0, 1), (0, 2, 1)], 4);
        let (ca, cb) = (a.dual_basis().unwrap(), b.dual_basis().unwrap());
        // b's generator k is a's generator perm[k]
        let perm = [2usize, 0, 1];
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(cb[j][k], ca[perm[j]][perm[k]]);
            }
        }
    }

    #[test]
    fn singular_pairing_rejected() {
        let model = paired(&[("a", 1), ("b", 1)], &[(0, 1, 1), (1, 0, 1), (0, 0, 1), (1, 1, 1)], 4);
        assert!(model.validate().iter().any(|v| v.rule == "pairing-nondegenerate"));
        assert_eq!(model.dual_basis(), Err(GradedLieError::SingularPairing));
    }

    #[test]
    fn antisymmetry_violation_reported() {
        let model = paired(&[("a", 2), ("b", 2)], &[(0, 1, 1), (1, 0, 1)], 6);
        assert!(model.validate().iter().any(|v| v.rule == "pairing-antisymmetry"));
    }

    #[test]
    fn omega_of_s2xs2() {
        let model = paired(&[("a", 1), ("b", 1)], &[(0, 1, 1), (1, 0, 1)], 4);
        let lie = FreeLie::new(model.free_product_generators(1).unwrap());
        let omega = model.omega(&lie).unwrap();
        let ab = lie.bracket(&lie.generator(0), &lie.generator(1)).unwrap();
        assert_eq!(omega, ab);

        let lie2 = FreeLie::new(model.free_product_generators(2).unwrap());
        let omega2 = model.omega(&lie2).unwrap();
        let g = lie2.generators();
        let a1b1 = lie2
            .bracket(&lie2.generator(g.index(0, 0)), &lie2.generator(g.index(0, 1)))
            .unwrap();
        let a2b2 = lie2
            .bracket(&lie2.generator(g.index(1, 0)), &lie2.generator(g.index(1, 1)))
            .unwrap();
        assert_eq!(omega2, a1b1.add(&a2b2));
    }

    #[test]
    fn omega_is_basis_independent() {
        // Change of basis a' = a + b, b' = b. ⟨a',a'⟩ = 2, ⟨a',b'⟩ = ⟨b',a'⟩ = 1, ⟨b',b'⟩ = 0.
        let original = paired(&[("a", 1), ("b", 1)], &[(0, 1, 1), (1, 0, 1)], 4);
        let changed = paired(&[("a", 1), ("b", 1)], &[(0, 0, 2), (0, 1, 1), (1, 0, 1)], 4);
        let lie = FreeLie::new(original.free_product_generators(1).unwrap());
        let omega = original.omega(&lie).unwrap();
        // ω' in the primed basis, then substituted back: a' ↦ a + b, b' ↦ b.
        let lie_c = FreeLie::new(changed.free_product_generators(1).unwrap());
        let omega_c = lie_c.to_tensor(&changed.omega(&lie_c).unwrap());
        let mut substituted = Tensor::zero();
        for (w, c) in omega_c.terms() {
            let mut term = Tensor::monomial(vec![], c.clone());
            for &g in w {
                let image = if g == 0 {
                    let mut t = Tensor::word(vec![0]);
                    t.add_term(vec![1], int(1));
                    t
                } else {
                    Tensor::word(vec![1])
                };
                term = term.mul(&image);
            }
            substituted.add_scaled(&int(1), &term);
        }
        let back = lie.from_tensor(2, &substituted).unwrap();
        // Equal up to the global sign convention.
        assert!(back == omega || back == omega.scale(&int(-1)));
    }

    #[test]
    fn omega_even_degree_generators() {
        let model = paired(&[("a", 2), ("b", 2)], &[(0, 1, 1), (1, 0, -1)], 6);
        assert!(model.validate().is_empty());
        let lie = FreeLie::new(model.free_product_generators(3).unwrap());
        let omega = model.omega(&lie).unwrap();
        assert_eq!(omega.coeffs().len(), 3);
    }
}
