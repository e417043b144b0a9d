use std::sync::Arc;

use autfi::dermodel::{Boundary, ComplexMode, Derivation, Engine, Pointed};
use autfi::fistab::{FiModule, Injection};
use autfi::gradedlie::parse_model;
use autfi::models::bundled;
use autfi::ratlinalg::{int, rank, SparseMatrix};
use autfi::reptheory::decompose;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn engine(name: &str) -> Engine {
    Engine::new(parse_model(bundled(name).unwrap()).unwrap()).unwrap()
}

fn cases() -> Vec<(&'static str, Arc<dyn ComplexMode>)> {
    vec![
        ("sphere2", Arc::new(Pointed)),
        ("product_s2s2", Arc::new(Pointed)),
        ("s2xs2", Arc::new(Boundary)),
        ("s2xs2", Arc::new(Pointed)),
    ]
}

#[test]
fn identity_induces_identity() {
    for (name, mode) in cases() {
        let e = engine(name);
        let fi = FiModule::new(&e, mode).unwrap();
        for n in 1..=2 {
            for k in 1..=2 {
                let id = Injection::identity(n);
                let s = fi.induced_slice_map(&id, k).unwrap().matrix;
                assert_eq!(s, SparseMatrix::identity(s.rows()), "{name} n={n} k={k}");
                let h = fi.homology_map(&id, k).unwrap().matrix;
                assert_eq!(h, SparseMatrix::identity(h.rows()));
            }
        }
    }
}

#[test]
fn sphere_standard_inclusion_unrolled() {
    let e = engine("sphere2");
    let fi = FiModule::new(&e, Arc::new(Pointed)).unwrap();
    let m = fi.induced_slice_map(&Injection::standard(1, 2), 1).unwrap().matrix;
    let lie2 = e.lie(2).unwrap();
    let x1 = lie2.lie.generator(0);
    let expected = Derivation {
        arity: 2,
        degree: 1,
        values: [(0u8, lie2.lie.bracket(&x1, &x1).unwrap())].into_iter().collect(),
    };
    let layout = e.layout(2, 1).unwrap();
    assert_eq!(m.columns()[0], expected.to_pointed(&layout));

    let h = fi.homology_map(&Injection::standard(1, 2), 1).unwrap().matrix;
    assert_eq!((h.rows(), h.cols()), (6, 1));
    assert_eq!(rank(&h), 1);
}

#[test]
fn boundary_inclusion_lands_in_kernel() {
    let e = engine("s2xs2");
    let fi = FiModule::new(&e, Arc::new(Boundary)).unwrap();
    let h = fi.homology_map(&Injection::standard(1, 2), 1).unwrap().matrix;
    assert_eq!((h.rows(), h.cols()), (20, 4));
    assert_eq!(rank(&h), 4);
    // each extended derivation still kills ω₂
    let slice = e.derivation_basis(2, 1, &Boundary).unwrap();
    let s = fi.induced_slice_map(&Injection::standard(1, 2), 1).unwrap().matrix;
    let omega = e.omega(2).unwrap();
    for col in s.columns() {
        let theta = slice.derivation(&col);
        assert!(e.apply_derivation(&theta, &omega).unwrap().is_zero());
    }
}

#[test]
fn composite_equals_direct() {
    let e = engine("sphere2");
    let fi = FiModule::new(&e, Arc::new(Pointed)).unwrap();
    let i = Injection::new(2, vec![1]).unwrap();
    let j = Injection::new(3, vec![0, 1]).unwrap();
    for k in 1..=2 {
        let a = fi.induced_slice_map(&j, k).unwrap().matrix;
        let b = fi.induced_slice_map(&i, k).unwrap().matrix;
        let c = fi.induced_slice_map(&j.compose(&i), k).unwrap().matrix;
        assert_eq!(a.mul(&b), c);
    }
}

fn check_functoriality(fi: &FiModule<'_>, i: &Injection, j: &Injection, k: u32) {
    let ji = j.compose(i);
    let a = fi.induced_slice_map(j, k).unwrap().matrix;
    let b = fi.induced_slice_map(i, k).unwrap().matrix;
    assert_eq!(a.mul(&b), fi.induced_slice_map(&ji, k).unwrap().matrix, "{i} then {j}");
    let a = fi.homology_map(j, k).unwrap().matrix;
    let b = fi.homology_map(i, k).unwrap().matrix;
    assert_eq!(
        a.mul(&b),
        fi.homology_map(&ji, k).unwrap().matrix,
        "{i} then {j} on homology"
    );
}

#[test]
fn functoriality_exhaustive_up_to_three() {
    for (name, mode) in cases() {
        let e = engine(name);
        let fi = FiModule::new(&e, mode).unwrap();
        for k in 1..=2 {
            for a in 1..=3 {
                for b in a..=3 {
                    for c in b..=3 {
                        for i in Injection::all(a, b) {
                            for j in Injection::all(b, c) {
                                check_functoriality(&fi, &i, &j, k);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn functoriality_sampled_at_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, mode) in cases() {
        let e = engine(name);
        let fi = FiModule::new(&e, mode).unwrap();
        for _ in 0..6 {
            let a = *[1usize, 2, 3].choose(&mut rng).unwrap();
            let targets: Vec<usize> = (a..=4).collect();
            let b = *targets.choose(&mut rng).unwrap();
            let i = Injection::all(a, b).choose(&mut rng).unwrap().clone();
            let j = Injection::all(b, 4).choose(&mut rng).unwrap().clone();
            check_functoriality(&fi, &i, &j, 1);
        }
    }
}

#[test]
fn equivariance_and_homomorphism() {
    for (name, mode) in cases() {
        let e = engine(name);
        let fi = FiModule::new(&e, mode).unwrap();
        let k = 1;
        for i in Injection::all(2, 3) {
            for sigma in Injection::all(3, 3) {
                let lhs = fi
                    .sigma_action(&sigma, k)
                    .unwrap()
                    .mul(&fi.homology_map(&i, k).unwrap().matrix);
                assert_eq!(lhs, fi.homology_map(&sigma.compose(&i), k).unwrap().matrix);
            }
        }
        let perms = Injection::all(3, 3);
        for s in &perms {
            for t in &perms {
                let st = fi.sigma_action(&s.compose(t), k).unwrap();
                assert_eq!(fi.sigma_action(s, k).unwrap().mul(&fi.sigma_action(t, k).unwrap()), st);
            }
        }
    }
}

#[test]
fn induced_maps_are_chain_maps() {
    let e = engine("product_s2s2");
    let fi = FiModule::new(&e, Arc::new(Pointed)).unwrap();
    for i in [
        Injection::standard(1, 2),
        Injection::new(2, vec![1]).unwrap(),
        Injection::transposition(2, 0, 1),
    ] {
        for k in 1..=3 {
            let up = fi.induced_slice_map(&i, k).unwrap().matrix;
            let down = fi.induced_slice_map(&i, k - 1).unwrap().matrix;
            let dn = e.pointed_differential(i.source(), k).unwrap();
            let dm = e.pointed_differential(i.target(), k).unwrap();
            assert_eq!(dm.mul(&up), down.mul(&dn), "{i} k={k}");
        }
    }
}

#[test]
fn swap_on_sphere() {
    let e = engine("sphere2");
    let fi = FiModule::new(&e, Arc::new(Pointed)).unwrap();
    let swap = fi.sigma_action(&Injection::transposition(2, 0, 1), 1).unwrap();
    assert_eq!(swap.mul(&swap), SparseMatrix::identity(6));
    let tr = swap.trace();
    assert!((tr + int(6)).to_integer() % 2 == 0.into());
    let chi = fi.character(2, 1).unwrap();
    let d = decompose(&chi).unwrap();
    assert_eq!(d.total_dim(), 6);
}

#[test]
fn consistency_under_fixing_permutations() {
    for (name, mode) in [
        ("sphere2", Arc::new(Pointed) as Arc<dyn ComplexMode>),
        ("s2xs2", Arc::new(Boundary)),
    ] {
        let e = engine(name);
        let fi = FiModule::new(&e, mode).unwrap();
        for k in 1..=2 {
            for m in 2..=3 {
                for n in 1..m {
                    assert!(fi.consistency_check(n, m, k).unwrap(), "{name} n={n} m={m} k={k}");
                }
            }
        }
    }
}

#[test]
fn zero_homology_has_zero_character() {
    let e = engine("sphere2");
    let fi = FiModule::new(&e, Arc::new(Pointed)).unwrap();
    let chi = fi.character(1, 2).unwrap();
    assert!(chi.values.values().all(|v| *v == int(0)));
}
