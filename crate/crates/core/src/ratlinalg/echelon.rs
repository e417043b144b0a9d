use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::{LinalgError, Scalar, SparseMatrix, SparseVec};

/// Sparse row with integer entries, kept primitive (content 1, positive lead).
type IntRow = Vec<(usize, BigInt)>;

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

fn to_int_row(v: &SparseVec) -> IntRow {
    let mut den = BigInt::one();
    for (_, x) in v.iter() {
        den = den.lcm(x.denom());
    }
    let mut row: IntRow = v.iter().map(|(i, x)| (i, x.numer() * (&den / x.denom()))).collect();
    make_primitive(&mut row);
    row
}

/// `a * r - b * p`, made primitive.
fn combine(a: &BigInt, r: &IntRow, b: &BigInt, p: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut x, mut y) = (r.iter().peekable(), p.iter().peekable());
    loop {
        match (x.peek(), y.peek()) {
            (Some((ix, vx)), Some((iy, vy))) => {
                if ix < iy {
                    out.push((*ix, a * vx));
                    x.next();
                } else if iy < ix {
                    out.push((*iy, -(b * vy)));
                    y.next();
                } else {
                    let s = a * vx - b * vy;
                    if !s.is_zero() {
                        out.push((*ix, s));
                    }
                    x.next();
                    y.next();
                }
            }
            (Some((ix, vx)), None) => {
                out.push((*ix, a * vx));
                x.next();
            }
            (None, Some((iy, vy))) => {
                out.push((*iy, -(b * vy)));
                y.next();
            }
            (None, None) => break,
        }
    }
    if !out.is_empty() {
        make_primitive(&mut out);
    }
    out
}

fn int_get(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(i, _)| *i).ok().map(|p| &row[p].1)
}

/// Incremental fraction-free row echelon form keyed by pivot column.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    /// Reduces `row` against the current pivots; stores it if independent.
    fn insert(&mut self, mut row: IntRow) -> bool {
        while let Some((lead, lv)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.gcd(&lv);
                    row = combine(&(pv / &g), &row, &(&lv / &g), p);
                }
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical reduced row echelon form, rows sorted by pivot column.
    fn into_reduced(self) -> Vec<SparseVec> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: BTreeMap<usize, IntRow> = self.pivots;
        // Back-substitute from the last pivot upwards so each eliminator is already reduced.
        for &c in cols.iter().rev() {
            let mut row = rows.remove(&c).expect("pivot row");
            let targets: Vec<usize> = row
                .iter()
                .skip(1)
                .map(|(i, _)| *i)
                .filter(|i| rows.contains_key(i) || cols.binary_search(i).is_ok())
                .collect();
            for t in targets {
                let Some(tv) = int_get(&row, t).cloned() else { continue };
                let q = rows.get(&t).expect("reduced pivot row");
                let qv = &q[0].1;
                let g = qv.gcd(&tv);
                row = combine(&(qv / &g), &row, &(&tv / &g), q);
            }
            rows.insert(c, row);
        }
        rows.into_values()
            .map(|row| {
                let lead = BigRational::from_integer(row[0].1.clone());
                SparseVec::from_sorted_unchecked(
                    row.into_iter()
                        .map(|(i, v)| (i, BigRational::from_integer(v) / &lead))
                        .collect(),
                )
            })
            .collect()
    }
}

fn echelon_of<'a, I: IntoIterator<Item = &'a SparseVec>>(vectors: I) -> Echelon {
    let mut e = Echelon::default();
    for v in vectors {
        if !v.is_zero() {
            e.insert(to_int_row(v));
        }
    }
    e
}

/// A subspace of `Q^ambient_dim`, stored as its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: (0..ambient_dim).map(SparseVec::unit).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical basis of the span of `vectors`.
    pub fn from_vectors(ambient_dim: usize, vectors: &[SparseVec]) -> Self {
        for v in vectors {
            assert!(
                v.max_index().is_none_or(|m| m < ambient_dim),
                "vector exceeds ambient dimension"
            );
        }
        let vectors = echelon_of(vectors).into_reduced();
        let pivots = vectors.iter().map(|v| v.leading().expect("nonzero").0).collect();
        Self {
            ambient_dim,
            vectors,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Exact coordinates of `v` in this basis, or `None` if `v` lies outside the span.
    pub fn coordinates_in_span(&self, v: &SparseVec) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if let Some(m) = v.max_index() {
            if m >= self.ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: self.ambient_dim,
                    got: m + 1,
                });
            }
        }
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let mut residual = v.clone();
        for (c, b) in coords.iter().zip(&self.vectors) {
            if !c.is_zero() {
                residual = residual.add_scaled(&-c, b);
            }
        }
        Ok(residual.is_zero().then_some(coords))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        matches!(self.coordinates_in_span(v), Ok(Some(_)))
    }

    /// Linear combination `Σ c_i b_i`.
    pub fn combine(&self, coords: &[Scalar]) -> SparseVec {
        assert_eq!(coords.len(), self.dim());
        let mut acc = SparseVec::new();
        for (c, b) in coords.iter().zip(&self.vectors) {
            acc = acc.add_scaled(c, b);
        }
        acc
    }

    /// Subtracts the component along every pivot, leaving zeros at pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (p, b) in self.pivots.iter().zip(&self.vectors) {
            let c = r.get(*p);
            if !c.is_zero() {
                r = r.add_scaled(&-c, b);
            }
        }
        r
    }
}

/// Rank over Q.
pub fn rank(m: &SparseMatrix) -> usize {
    echelon_of(m.row_vectors()).rank()
}

/// Canonical basis of the null space `{x : m x = 0}`.
pub fn kernel_basis(m: &SparseMatrix) -> SubspaceBasis {
    let reduced = echelon_of(m.row_vectors()).into_reduced();
    let pivot_cols: Vec<usize> = reduced.iter().map(|r| r.leading().expect("nonzero").0).collect();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    // Column-major view of the non-pivot part of the RREF.
    let mut free_entries: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (row, &p) in reduced.iter().zip(&pivot_cols) {
        for (c, v) in row.iter().skip(1) {
            free_entries.entry(c).or_default().push((p, -v.clone()));
        }
    }
    let vectors: Vec<SparseVec> = (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|f| {
            let mut pairs = free_entries.remove(&f).unwrap_or_default();
            pairs.push((f, super::one()));
            SparseVec::from_pairs(pairs)
        })
        .collect();
    SubspaceBasis::from_vectors(m.cols(), &vectors)
}

/// Canonical basis of the column space.
pub fn image_basis(m: &SparseMatrix) -> SubspaceBasis {
    SubspaceBasis::from_vectors(m.rows(), &m.columns())
}

/// `cycles / boundaries` with a chosen set of representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    boundaries: SubspaceBasis,
    representatives: SubspaceBasis,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.representatives.dim()
    }

    /// Representatives of a basis of the quotient; zero at every boundary pivot.
    pub fn representatives(&self) -> &[SparseVec] {
        self.representatives.vectors()
    }

    pub fn boundaries(&self) -> &SubspaceBasis {
        &self.boundaries
    }

    /// Class coordinates of a cycle. Fails with `NotInSpan` if `v` is not in the cycle space.
    pub fn reduce(&self, v: &SparseVec) -> Result<Vec<Scalar>, LinalgError> {
        let r = self.boundaries.reduce(v);
        self.representatives
            .coordinates_in_span(&r)?
            .ok_or(LinalgError::NotInSpan)
    }
}

/// Quotient of `cycles` by `boundaries`. Fails if `boundaries ⊄ cycles`.
pub fn quotient_basis(cycles: &SubspaceBasis, boundaries: &SubspaceBasis) -> Result<Quotient, LinalgError> {
    if cycles.ambient_dim() != boundaries.ambient_dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: cycles.ambient_dim(),
            got: boundaries.ambient_dim(),
        });
    }
    for (index, b) in boundaries.vectors().iter().enumerate() {
        if !cycles.contains(b) {
            return Err(LinalgError::ContainmentViolation { index });
        }
    }
    let reduced: Vec<SparseVec> = cycles.vectors().iter().map(|c| boundaries.reduce(c)).collect();
    let representatives = SubspaceBasis::from_vectors(cycles.ambient_dim(), &reduced);
    debug_assert_eq!(representatives.dim() + boundaries.dim(), cycles.dim());
    Ok(Quotient {
        boundaries: boundaries.clone(),
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::{int, ratio};

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::zeros(3, 5)), 0);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&SparseMatrix::identity(3)).dim(), 0);
        let k = kernel_basis(&SparseMatrix::zeros(2, 3));
        assert_eq!(k, SubspaceBasis::full(3));
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert_eq!(k.vectors(), &[v(&[1, -1])]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&SparseMatrix::identity(3)), SubspaceBasis::full(3));
        assert_eq!(image_basis(&SparseMatrix::zeros(2, 3)).dim(), 0);
        // [[1],[1]] has column space span{(1,1)}
        let img = image_basis(&m(&[&[1], &[1]]));
        assert_eq!(img.vectors(), &[v(&[1, 1])]);
    }

    #[test]
    fn span_coordinates() {
        let std = SubspaceBasis::full(3);
        assert_eq!(
            std.coordinates_in_span(&v(&[1, 0, 0])).unwrap(),
            Some(vec![int(1), int(0), int(0)])
        );
        assert_eq!(SubspaceBasis::empty(2).coordinates_in_span(&v(&[0, 3])).unwrap(), None);
        let diag = SubspaceBasis::from_vectors(2, &[v(&[1, 1])]);
        assert_eq!(diag.coordinates_in_span(&v(&[2, 2])).unwrap(), Some(vec![int(2)]));
        assert!(matches!(
            diag.coordinates_in_span(&v(&[0, 0, 1])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quotient_examples() {
        let c = SubspaceBasis::from_vectors(2, &[v(&[1, 1])]);
        let q = quotient_basis(&c, &c).unwrap();
        assert_eq!(q.dim(), 0);
        assert!(q.reduce(&v(&[3, 3])).unwrap().is_empty());

        let q = quotient_basis(&c, &SubspaceBasis::empty(2)).unwrap();
        assert_eq!(q.dim(), 1);

        let q = quotient_basis(&SubspaceBasis::full(2), &c).unwrap();
        assert_eq!(q.dim(), 1);
        assert_ne!(q.reduce(&v(&[1, 0])).unwrap(), vec![int(0)]);
        assert_eq!(q.reduce(&v(&[5, 5])).unwrap(), vec![int(0)]);

        let err = quotient_basis(&c, &SubspaceBasis::from_vectors(2, &[v(&[1, 0])])).unwrap_err();
        assert_eq!(err, LinalgError::ContainmentViolation { index: 0 });
    }

    #[test]
    fn canonical_form_is_independent_of_input_order() {
        let a = SubspaceBasis::from_vectors(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = SubspaceBasis::from_vectors(3, &[v(&[0, 2, 2]), v(&[2, 5, 7])]);
        assert_eq!(a, b);
        assert_eq!(a.vectors()[0], SparseVec::from_dense(&[int(1), int(0), int(1)]));
    }

    #[test]
    fn rational_entries() {
        let a = SparseMatrix::from_dense(&[vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), int(1)]]);
        assert_eq!(rank(&a), 1);
        let k = kernel_basis(&a);
        assert_eq!(k.vectors(), &[SparseVec::from_dense(&[int(1), ratio(-3, 2)])]);
    }
}
