//! Order complexes. A flag is a strictly increasing chain of lattice
//! elements, stored as parent-lattice indices so flags from different
//! intervals of the same lattice stay comparable. The empty flag is kept as
//! a degree -1 simplex, so all homology below is reduced.

use crate::{ChainComplex, ChainsError, QChain};
use exact_linalg::{rat_int, Rat};
use lattice::LabeledLattice;
use std::collections::BTreeMap;

/// Strictly increasing chain of element indices.
pub type Flag = Vec<usize>;

/// Strictly increasing list of atom indices.
pub type AtomSimplex = Vec<usize>;

/// A subset of a lattice viewed as a poset under the inherited order.
pub struct PosetView<'a> {
    lattice: &'a LabeledLattice,
    elements: Vec<usize>,
}

impl<'a> PosetView<'a> {
    pub fn new(lattice: &'a LabeledLattice, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        for &e in &elements {
            assert!(e < lattice.len(), "poset view element {e} out of range");
        }
        PosetView { lattice, elements }
    }

    /// Elements strictly between a and b.
    pub fn open_interval(lattice: &'a LabeledLattice, a: usize, b: usize) -> Self {
        let elements = (0..lattice.len())
            .filter(|&x| lattice.lt(a, x) && lattice.lt(x, b))
            .collect();
        PosetView { lattice, elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn lattice(&self) -> &LabeledLattice {
        self.lattice
    }
}

fn alternating_faces(flag: &[usize]) -> Vec<(Flag, Rat)> {
    let mut out = Vec::with_capacity(flag.len());
    for j in 0..flag.len() {
        let mut face: Flag = Vec::with_capacity(flag.len() - 1);
        face.extend_from_slice(&flag[..j]);
        face.extend_from_slice(&flag[j + 1..]);
        out.push((face, rat_int(if j % 2 == 0 { 1 } else { -1 })));
    }
    out
}

/// Simplicial boundary of a flag chain, computed without a complex. The
/// boundary of the empty flag is the zero chain one degree down.
pub fn flag_boundary(x: &QChain<Flag>) -> QChain<Flag> {
    let mut out = QChain::zero(x.degree - 1);
    for (flag, coef) in &x.coeffs {
        for (face, sign) in alternating_faces(flag) {
            out.add_term(face, coef * sign);
        }
    }
    out
}

/// Simplicial chain complex of all chains in the view, empty chain included.
/// Within a degree, flags are ordered lexicographically by element indices.
pub fn flag_complex(view: &PosetView) -> Result<ChainComplex<Flag>, ChainsError> {
    let elems = view.elements();
    let l = view.lattice();
    // successor lists in increasing index order keep enumeration canonical
    let above: Vec<Vec<usize>> = elems
        .iter()
        .map(|&e| elems.iter().copied().filter(|&f| l.lt(e, f)).collect())
        .collect();
    let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut by_len: BTreeMap<usize, Vec<Flag>> = BTreeMap::new();
    by_len.insert(0, vec![Vec::new()]);
    let mut stack: Vec<Flag> = elems.iter().map(|&e| vec![e]).collect();
    while let Some(flag) = stack.pop() {
        let last = *flag.last().expect("seeded flags are nonempty");
        for &f in &above[pos[&last]] {
            let mut longer = flag.clone();
            longer.push(f);
            stack.push(longer);
        }
        by_len.entry(flag.len()).or_default().push(flag);
    }
    let mut bases: BTreeMap<i64, Vec<Flag>> = BTreeMap::new();
    for (len, mut flags) in by_len {
        flags.sort_unstable();
        bases.insert(len as i64 - 1, flags);
    }
    ChainComplex::build(bases, |_, flag| alternating_faces(flag))
}

/// Chain complex of atom subsets whose join stays below the top element,
/// empty subset included. Fails on non-atomic lattices.
pub fn atomic_complex(l: &LabeledLattice) -> Result<ChainComplex<AtomSimplex>, ChainsError> {
    if !l.is_atomic() {
        return Err(ChainsError::NotAtomic(
            "atomic complex needs every element to be a join of atoms".into(),
        ));
    }
    let atoms = l.atoms().to_vec();
    let top = l.top();
    let cap: usize = 2_000_000;
    let mut count = 0usize;
    let mut by_len: BTreeMap<usize, Vec<AtomSimplex>> = BTreeMap::new();
    // depth-first over index-increasing subsets; joins only grow, so any
    // subset joining to top prunes its whole subtree
    let mut stack: Vec<(Vec<usize>, usize, usize)> = vec![(Vec::new(), 0, l.bottom())];
    while let Some((subset, next, join)) = stack.pop() {
        count += 1;
        if count > cap {
            return Err(ChainsError::TooLarge(format!(
                "atomic complex exceeded {cap} simplices"
            )));
        }
        for i in next..atoms.len() {
            let j = l.join(join, atoms[i]);
            if j == top {
                continue;
            }
            let mut bigger = subset.clone();
            bigger.push(atoms[i]);
            stack.push((bigger, i + 1, j));
        }
        by_len.entry(subset.len()).or_default().push(subset);
    }
    let mut bases: BTreeMap<i64, Vec<AtomSimplex>> = BTreeMap::new();
    for (len, mut simplices) in by_len {
        simplices.sort_unstable();
        bases.insert(len as i64 - 1, simplices);
    }
    ChainComplex::build(bases, |_, s| alternating_faces(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::rat_int;
    use lattice::builtins::boolean_lattice;
    use lattice::kequal_lattice;

    #[test]
    fn empty_view_has_only_the_empty_flag() {
        let l = boolean_lattice(2);
        let cc = flag_complex(&PosetView::new(&l, vec![])).expect("empty view builds");
        assert_eq!(cc.dim(-1), 1, "the empty flag is always present");
        assert_eq!(cc.homology(-1).betti, 1, "empty complex has reduced homology in degree -1");
    }

    #[test]
    fn four_point_antichain_has_three_extra_components() {
        let l = boolean_lattice(4);
        let atoms = l.atoms().to_vec();
        let cc = flag_complex(&PosetView::new(&l, atoms)).expect("antichain builds");
        assert_eq!(cc.dim(0), 4);
        assert_eq!(cc.homology(0).betti, 3, "four points have reduced degree-0 rank 3");
        assert_eq!(cc.homology(-1).betti, 0);
    }

    #[test]
    fn boolean_three_open_interval_is_a_circle() {
        let l = boolean_lattice(3);
        let view = PosetView::open_interval(&l, l.bottom(), l.top());
        assert_eq!(view.elements().len(), 6);
        let cc = flag_complex(&view).expect("hexagon builds");
        assert_eq!(cc.homology(1).betti, 1, "proper nonempty subsets of a 3-set form a circle");
        assert_eq!(cc.homology(0).betti, 0);
        assert_eq!(cc.homology(-1).betti, 0);
    }

    #[test]
    fn two_chain_atomic_complex_is_just_the_empty_simplex() {
        let l = lattice::LabeledLattice::from_dims_and_pairs(vec![0, 1], &[(0, 1)])
            .expect("two chain is a lattice");
        let cc = atomic_complex(&l).expect("two chain is atomic");
        assert_eq!(cc.dim(-1), 1);
        assert_eq!(cc.dim(0), 0, "the single atom joins to the top, so it is excluded");
        assert_eq!(cc.homology(-1).betti, 1);
    }

    #[test]
    fn partition_lattice_of_three_atomic_complex_is_three_points() {
        let l = kequal_lattice(3, 2, 0).expect("partition lattice of 3");
        let cc = atomic_complex(&l).expect("partition lattices are atomic");
        assert_eq!(cc.dim(0), 3);
        assert_eq!(cc.dim(1), 0, "any two transpositions already join to the top");
        assert_eq!(cc.homology(0).betti, 2);
    }

    #[test]
    fn boolean_three_atomic_complex_is_a_triangle_boundary() {
        let l = boolean_lattice(3);
        let cc = atomic_complex(&l).expect("boolean lattices are atomic");
        assert_eq!(cc.dim(1), 3);
        assert_eq!(cc.dim(2), 0, "all three atoms join to the top");
        assert_eq!(cc.homology(1).betti, 1);
        assert_eq!(cc.homology(0).betti, 0);
    }

    #[test]
    fn flag_boundary_alternates_signs() {
        // boolean:3 indices sorted by (popcount, mask): 1 -> {1}, 4 -> {1,2}
        let f: Flag = vec![1, 4];
        let df = flag_boundary(&QChain::single(1, f));
        let mut expect = QChain::zero(0);
        expect.add_term(vec![4], rat_int(1));
        expect.add_term(vec![1], rat_int(-1));
        assert_eq!(df, expect);
        let dd = flag_boundary(&df);
        assert!(dd.is_zero(), "boundary of boundary vanishes: {dd:?}");
    }

    #[test]
    fn non_atomic_lattice_is_rejected() {
        // bottom < a < top with dim jump, top not a join of atoms
        let l = lattice::LabeledLattice::from_dims_and_pairs(vec![0, 1, 2], &[(0, 1), (1, 2)])
            .expect("three chain is a lattice");
        assert!(matches!(atomic_complex(&l), Err(ChainsError::NotAtomic(_))));
    }
}
