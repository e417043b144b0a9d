use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::partition::{partitions, Partition};
use super::RepError;
use crate::ratlinalg::Scalar;

type Memo = Mutex<HashMap<(Vec<u32>, Vec<u32>), i64>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn beta_to_partition(beta: &BTreeSet<u32>) -> Vec<u32> {
    let mut parts: Vec<u32> = beta
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &b)| b - (beta.len() - 1 - i) as u32)
        .collect();
    parts.retain(|&p| p > 0);
    parts
}

fn mn(lambda: &[u32], mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo().lock().expect("character memo").get(&key) {
        return v;
    }
    let r = mu[0];
    let l = lambda.len() as u32;
    let beta: BTreeSet<u32> = lambda.iter().enumerate().map(|(i, &p)| p + l - 1 - i as u32).collect();
    let mut total = 0;
    for &b in &beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let height = beta.range(b - r + 1..b).count();
        let mut next = beta.clone();
        next.remove(&b);
        next.insert(b - r);
        let s = if height.is_multiple_of(2) { 1 } else { -1 };
        total += s * mn(&beta_to_partition(&next), &mu[1..]);
    }
    memo().lock().expect("character memo").insert(key, total);
    total
}

/// `χ_λ(μ)` by Murnaghan–Nakayama, removing border strips of length `μ₁, μ₂, ...`.
pub fn irr_character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.weight(), mu.weight(), "character arguments differ in weight");
    mn(lambda.parts(), mu.parts())
}

pub fn irr_dim(lambda: &Partition) -> u64 {
    let id = Partition::new(vec![1; lambda.weight() as usize]).expect("ones");
    irr_character(lambda, &id) as u64
}

/// `n! / Π hooks`.
pub fn hook_length_dim(lambda: &Partition) -> BigInt {
    let hooks = lambda.hooks().into_iter().fold(BigInt::one(), |a, h| a * h);
    factorial(lambda.weight()) / hooks
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

/// A class function on `Σ_n`, keyed by cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub n: u32,
    pub values: BTreeMap<Partition, Scalar>,
}

impl ClassFunction {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            values: partitions(n).into_iter().map(|mu| (mu, Scalar::zero())).collect(),
        }
    }

    pub fn irreducible(lambda: &Partition) -> Self {
        let n = lambda.weight();
        Self {
            n,
            values: partitions(n)
                .into_iter()
                .map(|mu| {
                    let v = irr_character(lambda, &mu);
                    (mu, Scalar::from_integer(v.into()))
                })
                .collect(),
        }
    }

    pub fn value(&self, mu: &Partition) -> Scalar {
        self.values.get(mu).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn dim(&self) -> Scalar {
        self.value(&Partition::new(vec![1; self.n as usize]).expect("ones"))
    }

    /// `(1/n!) Σ_μ |C_μ| χ(μ) ψ(μ)`.
    pub fn inner(&self, other: &ClassFunction) -> Scalar {
        assert_eq!(self.n, other.n);
        let mut acc = Scalar::zero();
        for mu in partitions(self.n) {
            let z = Scalar::from_integer(mu.centralizer_order());
            acc += self.value(&mu) * other.value(&mu) / z;
        }
        acc
    }
}

/// Multiplicities of irreducibles, zero entries omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: u32,
    pub multiplicities: BTreeMap<Partition, u64>,
}

impl Decomposition {
    pub fn total_dim(&self) -> u64 {
        self.multiplicities.iter().map(|(l, m)| m * irr_dim(l)).sum()
    }
}

pub fn decompose(chi: &ClassFunction) -> Result<Decomposition, RepError> {
    let mut multiplicities = BTreeMap::new();
    for lambda in partitions(chi.n) {
        let m = chi.inner(&ClassFunction::irreducible(&lambda));
        if !m.is_integer() || m.is_negative() {
            return Err(RepError::NotARepresentation {
                partition: lambda,
                multiplicity: m.to_string(),
            });
        }
        let m = m.to_integer();
        if !m.is_zero() {
            multiplicities.insert(lambda, m.to_u64().expect("multiplicity fits"));
        }
    }
    Ok(Decomposition {
        n: chi.n,
        multiplicities,
    })
}
