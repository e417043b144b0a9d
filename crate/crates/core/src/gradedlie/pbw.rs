//! Dimension oracles for free graded Lie algebras: the super-PBW identity and
//! the Schur-functor description `⊕_k Lie(k) ⊗_{Σ_k} V^{⊗k}`.

use num::{BigInt, BigRational, One, Zero};

use super::lyndon::for_each_lyndon;

/// Outcome of a PBW series comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PbwOutcome {
    Pass,
    Fail { degree: u32 },
}

impl PbwOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, PbwOutcome::Pass)
    }
}

/// Dimensions of `L(V)_m` for `m = 0..=up_to` obtained by enumerating the basis.
pub fn lie_dims(degrees: &[u32], up_to: u32) -> Vec<u64> {
    let mut dims = vec![0u64; up_to as usize + 1];
    if up_to == 0 {
        return dims;
    }
    let mut odd_lyndon = vec![0u64; up_to as usize + 1];
    for_each_lyndon(degrees, up_to, |_, w| {
        dims[w as usize] += 1;
        if w % 2 == 1 {
            odd_lyndon[w as usize] += 1;
        }
    });
    for w in 1..=up_to / 2 {
        if w % 2 == 1 {
            dims[2 * w as usize] += odd_lyndon[w as usize];
        }
    }
    dims
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Hilbert series of `T(V)` truncated after `t^up_to`.
pub fn tensor_series(degrees: &[u32], up_to: u32) -> Vec<BigInt> {
    let len = up_to as usize + 1;
    let mut s = vec![BigInt::zero(); len];
    s[0] = BigInt::one();
    for m in 1..len {
        let mut acc = BigInt::zero();
        for &d in degrees {
            if d as usize <= m {
                acc += &s[m - d as usize];
            }
        }
        s[m] = acc;
    }
    s
}

/// `∏_m (1+t^m)^{o_m} (1-t^m)^{-e_m}` truncated after `t^up_to`, where `dims[m]` splits as odd
/// (`m` odd) or even (`m` even).
pub fn pbw_series(dims: &[u64], up_to: u32) -> Vec<BigInt> {
    let len = up_to as usize + 1;
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::one();
    for m in 1..len {
        let mult = dims.get(m).copied().unwrap_or(0);
        if mult == 0 {
            continue;
        }
        // (1 + t^m) for odd m, 1/(1 - t^m) = Σ t^{jm} for even m
        let mut factor = vec![BigInt::zero(); len];
        factor[0] = BigInt::one();
        if m % 2 == 1 {
            factor[m] = BigInt::one();
        } else {
            for j in (m..len).step_by(m) {
                factor[j] = BigInt::one();
            }
        }
        for _ in 0..mult {
            acc = mul_trunc(&acc, &factor, len);
        }
    }
    acc
}

/// Checks the super-PBW identity `U(L(V)) ≅ T(V)` degree by degree.
pub fn pbw_series_check(degrees: &[u32], up_to: u32) -> PbwOutcome {
    let dims = lie_dims(degrees, up_to);
    let lhs = pbw_series(&dims, up_to);
    let rhs = tensor_series(degrees, up_to);
    match (0..=up_to).find(|&m| lhs[m as usize] != rhs[m as usize]) {
        Some(degree) => PbwOutcome::Fail { degree },
        None => PbwOutcome::Pass,
    }
}

/// `dim Lie(k) = (k-1)!`
pub fn lie_operad_dim(k: u32) -> BigInt {
    assert!(k >= 1);
    (1..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimensions of `⊕_k Lie(k) ⊗_{Σ_k} V^{⊗k}` by internal degree, via the character of the
/// Lie operad: `χ_{Lie(k)}` is supported on cycle types `(d^{k/d})` with value
/// `μ(d) (k/d - 1)! d^{k/d - 1}`, and a `d`-cycle acts on `V^{⊗d}` with supertrace
/// `Σ_g (-1)^{(d-1)|g|} t^{d|g|}`.
pub fn schur_lie_dims(degrees: &[u32], up_to: u32) -> Vec<BigInt> {
    let len = up_to as usize + 1;
    let mut total = vec![BigRational::zero(); len];
    for k in 1..=up_to {
        for d in (1..=k).filter(|d| k % d == 0) {
            let mu = mobius(d);
            if mu == 0 {
                continue;
            }
            let mut p_d = vec![BigInt::zero(); len];
            for &g in degrees {
                let e = (d * g) as usize;
                if e < len {
                    p_d[e] += if ((d - 1) * g) % 2 == 1 {
                        -BigInt::one()
                    } else {
                        BigInt::one()
                    };
                }
            }
            let mut power = vec![BigInt::zero(); len];
            power[0] = BigInt::one();
            for _ in 0..k / d {
                power = mul_trunc(&power, &p_d, len);
            }
            // (1/k!) · (k!/(d^{k/d} (k/d)!)) · μ(d) (k/d-1)! d^{k/d-1} = μ(d)/k
            let c = BigRational::new(BigInt::from(mu), BigInt::from(k));
            for (m, x) in power.iter().enumerate() {
                total[m] += &c * BigRational::from_integer(x.clone());
            }
        }
    }
    total
        .into_iter()
        .map(|x| {
            assert!(x.is_integer(), "non-integral Schur dimension");
            x.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operad_dims() {
        assert_eq!(lie_operad_dim(1), BigInt::from(1));
        assert_eq!(lie_operad_dim(2), BigInt::from(1));
        assert_eq!(lie_operad_dim(4), BigInt::from(6));
    }

    #[test]
    fn one_odd_generator() {
        assert_eq!(lie_dims(&[1], 4), vec![0, 1, 1, 0, 0]);
        assert!(pbw_series_check(&[1], 10).passed());
    }

    #[test]
    fn two_odd_generators() {
        assert_eq!(&lie_dims(&[1, 1], 4)[1..], &[2, 3, 2, 3]);
        assert!(pbw_series_check(&[1, 1], 8).passed());
        let t = tensor_series(&[1, 1], 8);
        assert_eq!(t[8], BigInt::from(256));
    }

    #[test]
    fn empty_generators() {
        assert!(pbw_series_check(&[], 8).passed());
    }

    #[test]
    fn detects_wrong_dimensions() {
        let mut dims = lie_dims(&[1, 1], 6);
        dims[3] += 1;
        let lhs = pbw_series(&dims, 6);
        let rhs = tensor_series(&[1, 1], 6);
        assert_eq!(lhs[..3], rhs[..3]);
        assert_ne!(lhs[3], rhs[3]);
    }

    #[test]
    fn schur_description_matches_enumeration() {
        for degrees in [vec![1], vec![1, 1], vec![2], vec![1, 2], vec![1, 1, 3], vec![2, 2, 2]] {
            let enumerated = lie_dims(&degrees, 8);
            let schur = schur_lie_dims(&degrees, 8);
            for m in 1..=8 {
                assert_eq!(BigInt::from(enumerated[m]), schur[m], "{degrees:?} degree {m}");
            }
        }
    }
}
