//! Dimension-labeled finite lattices: construction from explicit order data,
//! from rational subspace arrangements, or as k-equal partition lattices,
//! with join/meet tables, intervals, sublattices, geometricity testing and
//! the Möbius function.
//!
//! Element 0 is always the bottom element. The label `dim` is strictly
//! monotone along the order. The fixed total order on atoms, used wherever
//! signs matter, is element index order.

pub mod arrangement;
pub mod builtins;
pub mod json;
pub mod partition;

pub use arrangement::{intersection_lattice, SubspaceArrangement};
pub use builtins::random_labeled_lattice;
pub use partition::{kequal_lattice, Partition};

use exact_linalg::QMatrix;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone)]
pub enum LatticeError {
    /// malformed or inconsistent input data
    Input(String),
    /// the order relation is not a lattice (joins or meets missing)
    NotLattice(String),
    /// an operation needed atoms generating the relevant elements
    NotAtomic(String),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Input(m) => write!(f, "invalid input: {m}"),
            LatticeError::NotLattice(m) => write!(f, "not a lattice: {m}"),
            LatticeError::NotAtomic(m) => write!(f, "not atomic: {m}"),
        }
    }
}

impl std::error::Error for LatticeError {}

/// Subspace realization attached to an intersection lattice: one canonical
/// row-echelon basis matrix per element (the bottom gets an empty matrix).
#[derive(Debug, Clone)]
pub struct SubspaceData {
    pub ambient_dim: usize,
    pub matrices: Vec<QMatrix>,
}

/// A finite lattice whose elements carry strictly monotone dimension labels.
#[derive(Debug, Clone)]
pub struct LabeledLattice {
    dims: Vec<u32>,
    leq: Vec<Vec<bool>>,
    join_table: Vec<usize>,
    meet_table: Vec<usize>,
    atoms: Vec<usize>,
    atomic: bool,
    top: usize,
    partitions: Option<Vec<Partition>>,
    subspaces: Option<SubspaceData>,
}

/// A lattice cut out of a parent one, remembering where its elements live.
#[derive(Debug, Clone)]
pub struct Sublattice {
    pub lattice: LabeledLattice,
    /// new element index -> parent element index
    pub inclusion: Vec<usize>,
}

impl LabeledLattice {
    /// Builds a lattice from dimension labels and order pairs. `pairs` may be
    /// covering pairs or any generating set; the reflexive-transitive closure
    /// is taken. Index 0 must be the bottom element with dim 0.
    pub fn from_dims_and_pairs(
        dims: Vec<u32>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, LatticeError> {
        let n = dims.len();
        if n == 0 {
            return Err(LatticeError::Input("empty lattice".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(LatticeError::Input(format!(
                    "leq pair ({a},{b}) out of range for {n} elements"
                )));
            }
            leq[a][b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_parts(dims, leq, true)
    }

    /// Core constructor: validates the closed relation and computes tables.
    /// `zero_bottom` demands dim(bottom) = 0 (intervals keep parent labels).
    pub(crate) fn from_parts(
        dims: Vec<u32>,
        leq: Vec<Vec<bool>>,
        zero_bottom: bool,
    ) -> Result<Self, LatticeError> {
        let n = dims.len();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(LatticeError::Input(format!(
                        "order not antisymmetric at elements {i}, {j}"
                    )));
                }
            }
        }
        for j in 0..n {
            if !leq[0][j] {
                return Err(LatticeError::Input(format!(
                    "element 0 must be the bottom, but 0 is not below {j}"
                )));
            }
        }
        if zero_bottom && dims[0] != 0 {
            return Err(LatticeError::Input("bottom element must have dim 0".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && dims[i] >= dims[j] {
                    return Err(LatticeError::Input(format!(
                        "dim must be strictly monotone: {i} < {j} but dim {} >= {}",
                        dims[i], dims[j]
                    )));
                }
            }
        }

        let mut join_table = vec![0usize; n * n];
        let mut meet_table = vec![0usize; n * n];
        for a in 0..n {
            for b in a..n {
                let join = unique_extreme(&leq, n, a, b, true).ok_or_else(|| {
                    LatticeError::NotLattice(format!("elements {a}, {b} have no unique join"))
                })?;
                let meet = unique_extreme(&leq, n, a, b, false).ok_or_else(|| {
                    LatticeError::NotLattice(format!("elements {a}, {b} have no unique meet"))
                })?;
                join_table[a * n + b] = join;
                join_table[b * n + a] = join;
                meet_table[a * n + b] = meet;
                meet_table[b * n + a] = meet;
            }
        }
        let mut top = 0;
        for j in 0..n {
            top = join_table[top * n + j];
        }

        let atoms: Vec<usize> = (1..n)
            .filter(|&a| (1..n).all(|b| b == a || !leq[b][a]))
            .collect();
        let atomic = (1..n).all(|e| {
            let mut j = 0usize;
            for &a in &atoms {
                if leq[a][e] {
                    j = join_table[j * n + a];
                }
            }
            j == e
        });

        Ok(LabeledLattice {
            dims,
            leq,
            join_table,
            meet_table,
            atoms,
            atomic,
            top,
            partitions: None,
            subspaces: None,
        })
    }

    pub(crate) fn set_partitions(&mut self, parts: Vec<Partition>) {
        assert_eq!(parts.len(), self.len());
        self.partitions = Some(parts);
    }

    pub(crate) fn set_subspaces(&mut self, data: SubspaceData) {
        assert_eq!(data.matrices.len(), self.len());
        self.subspaces = Some(data);
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, e: usize) -> u32 {
        self.dims[e]
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join_table[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet_table[a * self.len() + b]
    }

    pub fn join_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(0, |acc, e| self.join(acc, e))
    }

    /// Atoms in the fixed atom order (ascending element index).
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn is_atomic(&self) -> bool {
        self.atomic
    }

    pub fn atoms_below(&self, e: usize) -> Vec<usize> {
        self.atoms.iter().copied().filter(|&a| self.leq[a][e]).collect()
    }

    /// Elements strictly between a and b, ascending index order.
    pub fn open_interval(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&c| c != a && c != b && self.leq[a][c] && self.leq[c][b])
            .collect()
    }

    /// Partition metadata (k-equal and braid lattices).
    pub fn partitions(&self) -> Option<&[Partition]> {
        self.partitions.as_deref()
    }

    /// Subspace metadata (intersection lattices).
    pub fn subspaces(&self) -> Option<&SubspaceData> {
        self.subspaces.as_ref()
    }

    /// The closed interval [a, b] as a lattice with b on top and a as the new
    /// bottom. Dimension labels are kept unshifted from the parent.
    pub fn interval(&self, a: usize, b: usize) -> Result<Sublattice, LatticeError> {
        if !self.leq(a, b) {
            return Err(LatticeError::Input(format!("interval needs {a} <= {b}")));
        }
        let mut elems: Vec<usize> = (0..self.len())
            .filter(|&c| self.leq(a, c) && self.leq(c, b))
            .collect();
        elems.sort_by_key(|&c| (self.dims[c], c));
        self.induced(elems)
    }

    /// The sublattice generated by the atoms below a and below b: all joins
    /// of subsets of atoms(a) ∪ atoms(b), plus the bottom.
    pub fn sublattice_ab(&self, a: usize, b: usize) -> Result<Sublattice, LatticeError> {
        if a == 0 || b == 0 {
            return Err(LatticeError::Input("sublattice_ab needs non-bottom elements".into()));
        }
        let mut gens = self.atoms_below(a);
        for at in self.atoms_below(b) {
            if !gens.contains(&at) {
                gens.push(at);
            }
        }
        if self.join_all(self.atoms_below(a).iter().copied()) != a {
            return Err(LatticeError::NotAtomic(format!("element {a} is not a join of atoms")));
        }
        if self.join_all(self.atoms_below(b).iter().copied()) != b {
            return Err(LatticeError::NotAtomic(format!("element {b} is not a join of atoms")));
        }
        let mut members: Vec<usize> = vec![0];
        members.extend(gens.iter().copied());
        members.sort_unstable();
        members.dedup();
        // close under pairwise join
        loop {
            let mut added = false;
            let snapshot = members.clone();
            for (i, &x) in snapshot.iter().enumerate() {
                for &y in &snapshot[i + 1..] {
                    let j = self.join(x, y);
                    if !members.contains(&j) {
                        members.push(j);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        members.sort_by_key(|&c| (self.dims[c], c));
        self.induced(members)
    }

    /// Induced order on the given parent elements (must contain its bottom as
    /// the (dim, index)-least member). Metadata is carried through.
    fn induced(&self, elems: Vec<usize>) -> Result<Sublattice, LatticeError> {
        let m = elems.len();
        let dims: Vec<u32> = elems.iter().map(|&c| self.dims[c]).collect();
        let mut leq = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                leq[i][j] = self.leq(elems[i], elems[j]);
            }
        }
        let mut lat = LabeledLattice::from_parts(dims, leq, false)?;
        if let Some(parts) = &self.partitions {
            lat.set_partitions(elems.iter().map(|&c| parts[c].clone()).collect());
        }
        if let Some(data) = &self.subspaces {
            lat.set_subspaces(SubspaceData {
                ambient_dim: data.ambient_dim,
                matrices: elems.iter().map(|&c| data.matrices[c].clone()).collect(),
            });
        }
        Ok(Sublattice { lattice: lat, inclusion: elems })
    }

    /// Geometricity test: atomic, graded, and semimodular. Returns the rank
    /// function when the lattice is geometric.
    pub fn is_geometric(&self) -> Option<Vec<u32>> {
        if !self.atomic {
            return None;
        }
        let n = self.len();
        // longest chain from the bottom, computed in dim order
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&e| self.dims[e]);
        let mut rk = vec![0u32; n];
        for &e in &order {
            let mut best = 0;
            for c in 0..n {
                if c != e && self.leq[c][e] {
                    best = best.max(rk[c] + 1);
                }
            }
            rk[e] = best;
        }
        // graded: every covering step raises the rank by exactly one
        for a in 0..n {
            for b in 0..n {
                if !self.lt(a, b) {
                    continue;
                }
                let covering =
                    (0..n).all(|c| c == a || c == b || !(self.lt(a, c) && self.lt(c, b)));
                if covering && rk[b] != rk[a] + 1 {
                    return None;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if rk[self.join(a, b)] + rk[self.meet(a, b)] > rk[a] + rk[b] {
                    return None;
                }
            }
        }
        Some(rk)
    }

    /// Möbius function of the closed interval [a, b].
    pub fn moebius(&self, a: usize, b: usize) -> i64 {
        assert!(self.leq(a, b), "moebius needs a <= b");
        let mut between: Vec<usize> = (0..self.len())
            .filter(|&c| self.leq(a, c) && self.leq(c, b))
            .collect();
        between.sort_by_key(|&c| self.dims[c]);
        let mut mu: HashMap<usize, i64> = HashMap::new();
        for &c in &between {
            if c == a {
                mu.insert(c, 1);
                continue;
            }
            let mut acc = 0i64;
            for &d in &between {
                if d != c && self.leq(d, c) {
                    acc += mu[&d];
                }
            }
            mu.insert(c, -acc);
        }
        mu[&b]
    }
}

// The least common upper bound (want_join) or greatest common lower bound of
// a and b, if unique; None when no comparable extreme exists.
fn unique_extreme(leq: &[Vec<bool>], n: usize, a: usize, b: usize, want_join: bool) -> Option<usize> {
    let mut bounds = Vec::new();
    for c in 0..n {
        let ok = if want_join { leq[a][c] && leq[b][c] } else { leq[c][a] && leq[c][b] };
        if ok {
            bounds.push(c);
        }
    }
    bounds
        .iter()
        .copied()
        .find(|&c| bounds.iter().all(|&d| if want_join { leq[c][d] } else { leq[d][c] }))
}
