//! Rational subspace arrangements and their sum lattices.

use crate::{LabeledLattice, LatticeError, SubspaceData};
use exact_linalg::{QMatrix, Rat};
use std::cmp::Ordering;

/// A finite set of nonzero subspaces of Q^ambient_dim, each stored as a
/// canonical reduced row-echelon basis matrix with full row rank.
#[derive(Debug, Clone)]
pub struct SubspaceArrangement {
    pub ambient_dim: usize,
    pub subspaces: Vec<QMatrix>,
}

/// Canonical form of a row space: reduced echelon basis with no zero rows.
pub fn canonical_rowspace(m: &QMatrix) -> QMatrix {
    m.rowspace_sum(&QMatrix::zero(0, m.cols()))
}

/// Deterministic total order on canonical matrices of equal shape.
pub fn cmp_canonical(a: &QMatrix, b: &QMatrix) -> Ordering {
    match a.rows().cmp(&b.rows()) {
        Ordering::Equal => {}
        other => return other,
    }
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            match a.get(r, c).cmp(&b.get(r, c)) {
                Ordering::Equal => {}
                other => return other,
            }
        }
    }
    Ordering::Equal
}

impl SubspaceArrangement {
    /// Canonicalizes and validates spanning sets. Rejects the zero subspace
    /// and duplicate subspaces; inclusions between distinct subspaces are
    /// allowed (they are deduplicated by the sum closure later).
    pub fn new(ambient_dim: usize, raw: Vec<Vec<Vec<Rat>>>) -> Result<Self, LatticeError> {
        if ambient_dim == 0 {
            return Err(LatticeError::Input("ambient dimension must be positive".into()));
        }
        if raw.is_empty() {
            return Err(LatticeError::Input("arrangement needs at least one subspace".into()));
        }
        let mut subspaces = Vec::with_capacity(raw.len());
        for (i, rows) in raw.iter().enumerate() {
            for row in rows {
                if row.len() != ambient_dim {
                    return Err(LatticeError::Input(format!(
                        "subspace {i}: row length {} does not match ambient dim {ambient_dim}",
                        row.len()
                    )));
                }
            }
            let m = QMatrix::from_dense(rows);
            let canon = canonical_rowspace(&m);
            if canon.rows() == 0 {
                return Err(LatticeError::Input(format!("subspace {i} is the zero subspace")));
            }
            subspaces.push(canon);
        }
        for i in 0..subspaces.len() {
            for j in i + 1..subspaces.len() {
                if subspaces[i] == subspaces[j] {
                    return Err(LatticeError::Input(format!(
                        "subspaces {i} and {j} are equal after canonicalization"
                    )));
                }
            }
        }
        Ok(SubspaceArrangement { ambient_dim, subspaces })
    }
}

/// The lattice of all sums of the arrangement's subspaces plus the zero
/// subspace, ordered by inclusion and labeled by dimension. Elements are
/// indexed by (dim, canonical matrix) ascending.
pub fn intersection_lattice(arr: &SubspaceArrangement) -> Result<LabeledLattice, LatticeError> {
    let cols = arr.ambient_dim;
    let mut closure: Vec<QMatrix> = Vec::new();
    for s in &arr.subspaces {
        if !closure.contains(s) {
            closure.push(s.clone());
        }
    }
    loop {
        let before = closure.len();
        let snapshot = closure.clone();
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                let s = a.rowspace_sum(b);
                if !closure.contains(&s) {
                    closure.push(s);
                }
            }
        }
        if closure.len() == before {
            break;
        }
        if closure.len() > 5000 {
            return Err(LatticeError::Input(
                "sum closure exceeded 5000 subspaces; arrangement too large".into(),
            ));
        }
    }
    let mut elements = vec![QMatrix::zero(0, cols)];
    elements.extend(closure);
    elements.sort_by(|a, b| a.rows().cmp(&b.rows()).then_with(|| cmp_canonical(a, b)));

    let n = elements.len();
    let dims: Vec<u32> = elements.iter().map(|m| m.rows() as u32).collect();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            // containment of row spaces: the sum does not grow j
            leq[i][j] = elements[i].rows() == 0 || elements[j].rowspace_sum(&elements[i]) == elements[j];
        }
    }
    let mut lat = LabeledLattice::from_parts(dims, leq, true)?;
    lat.set_subspaces(SubspaceData { ambient_dim: cols, matrices: elements });
    Ok(lat)
}
