//! Set partitions and the k-equal partition lattices.

use crate::{LabeledLattice, LatticeError};

/// A set partition of {0..n-1}. Blocks are sorted internally and ordered by
/// their minima; `block_of` assigns block ids by first occurrence, which
/// makes it a canonical key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    n: usize,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn from_block_of(block_of: Vec<usize>) -> Self {
        let n = block_of.len();
        // renumber ids by first occurrence
        let mut remap: Vec<Option<usize>> = vec![None; n];
        let mut next = 0;
        let mut canon = Vec::with_capacity(n);
        for &b in &block_of {
            let id = match remap[b] {
                Some(id) => id,
                None => {
                    remap[b] = Some(next);
                    next += 1;
                    next - 1
                }
            };
            canon.push(id);
        }
        Partition { n, block_of: canon }
    }

    pub fn singletons(n: usize) -> Self {
        Partition { n, block_of: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn nontrivial_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks().into_iter().filter(|b| b.len() >= 2).collect()
    }

    /// Σ (|b| - 1) over nontrivial blocks; the subspace dimension label.
    pub fn dim(&self) -> u32 {
        self.nontrivial_blocks().iter().map(|b| (b.len() - 1) as u32).sum()
    }

    /// True when self refines other (self ≤ other in the partition lattice).
    pub fn refines(&self, other: &Partition) -> bool {
        assert_eq!(self.n, other.n);
        let my_blocks = self.block_count();
        let mut image: Vec<Option<usize>> = vec![None; my_blocks];
        for x in 0..self.n {
            let mine = self.block_of[x];
            let theirs = other.block_of[x];
            match image[mine] {
                None => image[mine] = Some(theirs),
                Some(t) if t == theirs => {}
                Some(_) => return false,
            }
        }
        true
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }
}

/// All set partitions of {0..n-1}, generated canonically.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut block_of = vec![0usize; n];
    fn rec(i: usize, used: usize, block_of: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == block_of.len() {
            out.push(Partition { n: block_of.len(), block_of: block_of.clone() });
            return;
        }
        for b in 0..=used {
            block_of[i] = b;
            rec(i + 1, used.max(b + 1), block_of, out);
        }
    }
    if n == 0 {
        return vec![Partition { n: 0, block_of: vec![] }];
    }
    rec(0, 0, &mut block_of, &mut out);
    out
}

/// The lattice of partitions of {0..n-1} whose blocks are each a singleton,
/// of size at least k, or meet {0..ell-1}; ordered by refinement, labeled by
/// Σ (|b|-1) over nontrivial blocks. ell = 0 gives the plain k-equal lattice.
pub fn kequal_lattice(n: usize, k: usize, ell: usize) -> Result<LabeledLattice, LatticeError> {
    if n < 2 || k < 2 {
        return Err(LatticeError::Input(format!("kequal needs n, k >= 2, got n={n}, k={k}")));
    }
    if n > 9 {
        return Err(LatticeError::Input(format!("kequal ground set cap is 9 points, got {n}")));
    }
    if k > n && ell == 0 {
        return Err(LatticeError::Input(format!(
            "kequal with k={k} > n={n} needs ell > 0 to be nonempty above the bottom"
        )));
    }
    if ell > n {
        return Err(LatticeError::Input(format!("kequal needs ell <= n, got ell={ell}, n={n}")));
    }
    let mut members: Vec<Partition> = all_partitions(n)
        .into_iter()
        .filter(|p| {
            p.blocks()
                .iter()
                .all(|b| b.len() == 1 || b.len() >= k || b.iter().any(|&x| x < ell))
        })
        .collect();
    if members.len() > 1200 {
        return Err(LatticeError::Input(format!(
            "kequal({n},{k},{ell}) has {} elements, over the 1200-element cap",
            members.len()
        )));
    }
    members.sort_by(|p, q| p.dim().cmp(&q.dim()).then_with(|| p.block_of.cmp(&q.block_of)));
    let m = members.len();
    let dims: Vec<u32> = members.iter().map(|p| p.dim()).collect();
    let mut leq = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            leq[i][j] = members[i].refines(&members[j]);
        }
    }
    let mut lat = LabeledLattice::from_parts(dims, leq, true)?;
    lat.set_partitions(members);
    Ok(lat)
}
