use std::collections::BTreeMap;

use autfi::ratlinalg::{int, Scalar};
use autfi::reptheory::{
    decompose, factorial, hook_length_dim, irr_character, irr_dim, pad, partitions, unpad, verdict, ClassFunction,
    Partition, StabilityRow, Verdict,
};
use num::{BigInt, Zero};
use proptest::prelude::*;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

/// Character of a permutation action, computed by counting fixed points on a representative.
fn permutation_character(n: u32, fixed: impl Fn(&[usize]) -> i64) -> ClassFunction {
    let mut chi = ClassFunction::zero(n);
    for mu in partitions(n) {
        let v = fixed(&mu.representative());
        chi.values.insert(mu, int(v));
    }
    chi
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
}

#[test]
fn row_orthogonality() {
    for n in 1..=7 {
        let irr: Vec<ClassFunction> = partitions(n).iter().map(ClassFunction::irreducible).collect();
        for (i, a) in irr.iter().enumerate() {
            for (j, b) in irr.iter().enumerate() {
                let want = if i == j { int(1) } else { Scalar::zero() };
                assert_eq!(a.inner(b), want, "n={n}");
            }
        }
    }
}

#[test]
fn column_orthogonality() {
    for n in 1..=7 {
        let parts = partitions(n);
        for mu in &parts {
            for nu in &parts {
                let s: i64 = parts.iter().map(|l| irr_character(l, mu) * irr_character(l, nu)).sum();
                let want = if mu == nu {
                    mu.centralizer_order()
                } else {
                    BigInt::zero()
                };
                assert_eq!(BigInt::from(s), want, "n={n} {mu} {nu}");
            }
        }
    }
}

#[test]
fn dimensions() {
    for n in 1..=8 {
        let mut total = BigInt::zero();
        for l in partitions(n) {
            assert_eq!(BigInt::from(irr_dim(&l)), hook_length_dim(&l), "{l}");
            assert_eq!(irr_dim(&l), irr_dim(&l.conjugate()));
            total += BigInt::from(irr_dim(&l)).pow(2);
        }
        assert_eq!(total, factorial(n));
    }
    // class sizes add up to n!
    for n in 1..=8 {
        let sum: BigInt = partitions(n)
            .iter()
            .map(|mu| factorial(n) / mu.centralizer_order())
            .sum();
        assert_eq!(sum, factorial(n));
    }
}

#[test]
fn sign_character() {
    for n in 1..=7 {
        let ones = p(&vec![1; n as usize]);
        for mu in partitions(n) {
            let odd = mu.parts().iter().filter(|&&c| c % 2 == 0).count() % 2;
            assert_eq!(irr_character(&ones, &mu), if odd == 1 { -1 } else { 1 });
            assert_eq!(irr_character(&p(&[n]), &mu), 1);
        }
    }
}

#[test]
fn permutation_module() {
    for n in 2..=8 {
        let chi = permutation_character(n, |s| s.iter().enumerate().filter(|(i, j)| i == *j).count() as i64);
        let d = decompose(&chi).unwrap();
        let want: BTreeMap<Partition, u64> = [(p(&[n]), 1), (p(&[n - 1, 1]), 1)].into_iter().collect();
        assert_eq!(d.multiplicities, want);
        assert_eq!(d.total_dim(), n as u64);
    }
}

#[test]
fn ordered_pairs_module() {
    // C[ordered pairs of distinct points] = (n) + 2(n-1,1) + (n-2,2) + (n-2,1,1)
    for n in 4..=7 {
        let chi = permutation_character(n, |s| {
            let fixed = s.iter().enumerate().filter(|(i, j)| i == *j).count() as i64;
            fixed * (fixed - 1)
        });
        let d = decompose(&chi).unwrap();
        let want: BTreeMap<Partition, u64> = [
            (p(&[n]), 1),
            (p(&[n - 1, 1]), 2),
            (p(&[n - 2, 2]), 1),
            (p(&[n - 2, 1, 1]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d.multiplicities, want);
        let padded: BTreeMap<Partition, u64> = d.multiplicities.iter().map(|(l, m)| (unpad(l), *m)).collect();
        assert_eq!(padded.get(&p(&[1])), Some(&2));
    }
}

#[test]
fn virtual_characters_are_rejected() {
    let mut chi = ClassFunction::irreducible(&p(&[2, 1]));
    for v in chi.values.values_mut() {
        *v = -v.clone();
    }
    assert!(decompose(&chi).is_err());
}

#[test]
fn padding() {
    assert_eq!(pad(&p(&[1]), 4).unwrap(), p(&[3, 1]));
    assert_eq!(pad(&Partition::empty(), 3).unwrap(), p(&[3]));
    assert!(pad(&p(&[2]), 3).is_err());
    assert_eq!(unpad(&p(&[3, 1])), p(&[1]));
    for n in 1..=7 {
        for l in partitions(n) {
            assert_eq!(pad(&unpad(&l), n).unwrap(), l);
        }
    }
}

#[test]
fn partition_strings() {
    let l = p(&[2, 1]);
    assert_eq!(l.to_string(), "(2,1)");
    assert_eq!("(2,1)".parse::<Partition>().unwrap(), l);
    assert_eq!(Partition::empty().to_string(), "()");
    assert!("(1,2)".parse::<Partition>().is_err());
}

fn row(n: usize, padded: &[(&[u32], u64)]) -> StabilityRow {
    StabilityRow {
        n,
        dim: 0,
        padded: padded.iter().map(|(l, m)| (p(l), *m)).collect(),
    }
}

#[test]
fn stability_verdicts() {
    let a: &[(&[u32], u64)] = &[(&[], 1), (&[1], 2)];
    let b: &[(&[u32], u64)] = &[(&[], 1), (&[1], 1)];
    assert_eq!(verdict(&[]), Verdict::NotStabilizedInRange);
    assert_eq!(verdict(&[row(3, a)]), Verdict::NotStabilizedInRange);
    assert_eq!(verdict(&[row(2, b), row(3, a)]), Verdict::NotStabilizedInRange);
    assert_eq!(
        verdict(&[row(2, b), row(3, a), row(4, a)]),
        Verdict::StabilizedWithinRange { n0: 3 }
    );
    assert_eq!(
        verdict(&[row(2, a), row(3, a), row(4, a)]),
        Verdict::StabilizedWithinRange { n0: 2 }
    );
}

proptest! {
    #[test]
    fn cycle_type_is_a_class_invariant(n in 1usize..=8, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut s: Vec<usize> = (0..n).collect();
        let mut t: Vec<usize> = (0..n).collect();
        s.shuffle(&mut rng);
        t.shuffle(&mut rng);
        let t_inv = {
            let mut v = vec![0; n];
            for (i, &j) in t.iter().enumerate() {
                v[j] = i;
            }
            v
        };
        let conj: Vec<usize> = (0..n).map(|i| t[s[t_inv[i]]]).collect();
        let mu = Partition::cycle_type(&s);
        prop_assert_eq!(Partition::cycle_type(&conj), mu.clone());
        prop_assert_eq!(mu.weight() as usize, n);
        prop_assert_eq!(Partition::cycle_type(&mu.representative()), mu);
    }

    #[test]
    fn character_values_are_bounded_by_dimension(n in 1u32..=8, i in 0usize..64, j in 0usize..64) {
        let parts = partitions(n);
        let l = &parts[i % parts.len()];
        let mu = &parts[j % parts.len()];
        prop_assert!(irr_character(l, mu).unsigned_abs() <= irr_dim(l));
        // tensoring with the sign flips to the conjugate
        let sign = irr_character(&p(&vec![1; n as usize]), mu);
        prop_assert_eq!(irr_character(&l.conjugate(), mu), sign * irr_character(l, mu));
    }
}
