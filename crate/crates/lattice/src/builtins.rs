//! Built-in lattice constructors and the seeded random lattice generator
//! used by the randomized cross-check suites.

use crate::partition::kequal_lattice;
use crate::{LabeledLattice, LatticeError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Boolean lattice on n atoms: subsets of {0..n-1} with dim = cardinality.
/// Models n coordinate lines in Q^n (an (C*)^n complement).
pub fn boolean_lattice(n: usize) -> LabeledLattice {
    assert!((1..=8).contains(&n), "boolean lattice size out of range");
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    subset_family_lattice(&masks, &vec![1u32; n])
}

/// Partition lattice of {0..n-1} labeled by n - #blocks.
pub fn braid_lattice(n: usize) -> Result<LabeledLattice, LatticeError> {
    kequal_lattice(n, 2, 0)
}

/// The two-element lattice of a single line: complement C* x C^(d-1).
pub fn one_line() -> LabeledLattice {
    LabeledLattice::from_dims_and_pairs(vec![0, 1], &[(0, 1)]).unwrap()
}

/// Builds the lattice of a union-closed family of bitmask sets with additive
/// weights as dims. Masks must be closed under union, contain 0, and be
/// sorted (dim, mask)-ascending.
fn subset_family_lattice(masks: &[u32], weights: &[u32]) -> LabeledLattice {
    let weight = |m: u32| -> u32 {
        (0..weights.len()).filter(|&i| m >> i & 1 == 1).map(|i| weights[i]).sum()
    };
    let dims: Vec<u32> = masks.iter().map(|&m| weight(m)).collect();
    let n = masks.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = masks[i] & !masks[j] == 0;
        }
    }
    LabeledLattice::from_parts(dims, leq, true).expect("union-closed family is a lattice")
}

/// Deterministic pseudorandom dimension-labeled lattice with at most 9
/// elements: a union-closed family of subsets of a 3-point ground set with
/// random positive weights. Joins are unions; monotone labels come free.
pub fn random_labeled_lattice(seed: u64) -> LabeledLattice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
    let count = rng.gen_range(1..=6);
    let mut family: BTreeSet<u32> = BTreeSet::new();
    family.insert(0);
    for _ in 0..count {
        family.insert(rng.gen_range(1..=7));
    }
    loop {
        let snapshot: Vec<u32> = family.iter().copied().collect();
        let before = family.len();
        for (i, &x) in snapshot.iter().enumerate() {
            for &y in &snapshot[i..] {
                family.insert(x | y);
            }
        }
        if family.len() == before {
            break;
        }
    }
    let weight = |m: u32| -> u32 { (0..3).filter(|&i| m >> i & 1 == 1).map(|i| weights[i]).sum() };
    let mut masks: Vec<u32> = family.into_iter().collect();
    masks.sort_by_key(|&m| (weight(m), m));
    subset_family_lattice(&masks, &weights)
}

/// Parses builtin names: "oneline", "boolean:n", "braid:n", "kequal:n:k" or
/// "kequal:n:k:ell".
pub fn builtin_by_name(name: &str) -> Result<LabeledLattice, LatticeError> {
    let parts: Vec<&str> = name.split(':').collect();
    let parse = |s: &str| -> Result<usize, LatticeError> {
        s.parse::<usize>()
            .map_err(|_| LatticeError::Input(format!("bad builtin parameter '{s}' in '{name}'")))
    };
    match parts.as_slice() {
        ["oneline"] => Ok(one_line()),
        ["boolean", n] => {
            let n = parse(n)?;
            if !(1..=8).contains(&n) {
                return Err(LatticeError::Input(format!("boolean:{n} out of range 1..=8")));
            }
            Ok(boolean_lattice(n))
        }
        ["braid", n] => {
            let n = parse(n)?;
            if !(2..=7).contains(&n) {
                return Err(LatticeError::Input(format!("braid:{n} out of range 2..=7")));
            }
            braid_lattice(n)
        }
        ["kequal", n, k] => kequal_lattice(parse(n)?, parse(k)?, 0),
        ["kequal", n, k, ell] => kequal_lattice(parse(n)?, parse(k)?, parse(ell)?),
        _ => Err(LatticeError::Input(format!("unknown builtin '{name}'"))),
    }
}
