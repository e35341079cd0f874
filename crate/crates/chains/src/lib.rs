//! Chain complexes over Q with labeled bases, reduced homology with
//! representative cycles and coordinate reduction, flag and atomic complexes
//! of posets, and the signed shuffle machinery on flag chains.

pub mod flags;
pub mod product;

pub use flags::{atomic_complex, flag_boundary, flag_complex, AtomSimplex, Flag, PosetView};
pub use product::{atoms_to_flags, chain_shuffle_product, shuffle_flag_product};

use exact_linalg::{Echelon, QMatrix, Rat, SparseVec};
use num::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone)]
pub enum ChainsError {
    /// boundary composed with itself was nonzero entering this degree
    BoundarySquare(i64),
    /// a boundary image used a label missing from the basis one degree down
    UnknownLabel(String),
    /// reduce was called on a chain that is not a cycle
    NotACycle,
    /// a chain mentions labels outside the complex, or the wrong degree
    BadChain(String),
    /// the operation needed an atomic lattice
    NotAtomic(String),
    /// enumeration refused to grow past a configured cap
    TooLarge(String),
}

impl fmt::Display for ChainsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainsError::BoundarySquare(p) => {
                write!(f, "boundary squared is nonzero entering degree {p}")
            }
            ChainsError::UnknownLabel(m) => write!(f, "unknown basis label: {m}"),
            ChainsError::NotACycle => write!(f, "chain is not a cycle"),
            ChainsError::BadChain(m) => write!(f, "bad chain: {m}"),
            ChainsError::NotAtomic(m) => write!(f, "not atomic: {m}"),
            ChainsError::TooLarge(m) => write!(f, "refusing oversized enumeration: {m}"),
        }
    }
}

impl std::error::Error for ChainsError {}

/// A formal Q-linear combination of degree-homogeneous basis labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QChain<L: Ord> {
    pub degree: i64,
    pub coeffs: BTreeMap<L, Rat>,
}

impl<L: Ord + Clone> QChain<L> {
    pub fn zero(degree: i64) -> Self {
        QChain { degree, coeffs: BTreeMap::new() }
    }

    pub fn single(degree: i64, label: L) -> Self {
        let mut c = QChain::zero(degree);
        c.add_term(label, Rat::one());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, label: L, coef: Rat) {
        if coef.is_zero() {
            return;
        }
        match self.coeffs.entry(label) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// self += coef * other (degrees must agree).
    pub fn add_scaled(&mut self, other: &QChain<L>, coef: &Rat) {
        assert_eq!(self.degree, other.degree, "degree mismatch in chain sum");
        for (l, v) in &other.coeffs {
            self.add_term(l.clone(), v * coef);
        }
    }

    pub fn scaled(&self, coef: &Rat) -> QChain<L> {
        let mut out = QChain::zero(self.degree);
        out.add_scaled(self, coef);
        out
    }
}

/// A chain complex with explicit ordered bases per degree. The boundary
/// lowers the degree by one; the composite of two boundaries is checked to
/// vanish at construction time.
#[derive(Debug, Clone)]
pub struct ChainComplex<L: Ord + Clone> {
    bases: BTreeMap<i64, Vec<L>>,
    index: BTreeMap<L, (i64, usize)>,
    // degree p -> matrix with one row per degree-p basis label, one column
    // per degree-(p-1) label; row i holds the boundary of basis element i
    boundaries: BTreeMap<i64, QMatrix>,
}

impl<L: Ord + Clone + fmt::Debug> ChainComplex<L> {
    /// Builds a complex from bases and a boundary rule.
    pub fn build(
        bases: BTreeMap<i64, Vec<L>>,
        boundary: impl Fn(i64, &L) -> Vec<(L, Rat)>,
    ) -> Result<Self, ChainsError> {
        let mut index = BTreeMap::new();
        for (&p, labels) in &bases {
            for (i, l) in labels.iter().enumerate() {
                if index.insert(l.clone(), (p, i)).is_some() {
                    return Err(ChainsError::BadChain(format!(
                        "label {l:?} appears twice in the basis"
                    )));
                }
            }
        }
        let mut boundaries = BTreeMap::new();
        for (&p, labels) in &bases {
            let cols = bases.get(&(p - 1)).map_or(0, Vec::len);
            let mut m = QMatrix::zero(labels.len(), cols);
            for (i, l) in labels.iter().enumerate() {
                for (target, coef) in boundary(p, l) {
                    let &(tp, ti) = index.get(&target).ok_or_else(|| {
                        ChainsError::UnknownLabel(format!("{target:?} from boundary of {l:?}"))
                    })?;
                    if tp != p - 1 {
                        return Err(ChainsError::BadChain(format!(
                            "boundary of {l:?} hit degree {tp}, expected {}",
                            p - 1
                        )));
                    }
                    let mut v = m.get(i, ti);
                    v += coef;
                    m.set(i, ti, v);
                }
            }
            boundaries.insert(p, m);
        }
        for (&p, m) in &boundaries {
            if let Some(next) = boundaries.get(&(p - 1)) {
                if m.cols() == next.rows() && !m.mul(next).is_zero_matrix() {
                    return Err(ChainsError::BoundarySquare(p - 2));
                }
            }
        }
        Ok(ChainComplex { bases, index, boundaries })
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.bases.keys().copied()
    }

    pub fn basis(&self, p: i64) -> &[L] {
        self.bases.get(&p).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, p: i64) -> usize {
        self.basis(p).len()
    }

    pub fn boundary_matrix(&self, p: i64) -> Option<&QMatrix> {
        self.boundaries.get(&p)
    }

    /// Sparse coordinates of a chain in its degree's basis order.
    pub fn to_coords(&self, c: &QChain<L>) -> Result<SparseVec, ChainsError> {
        let mut v = SparseVec::new();
        for (l, coef) in &c.coeffs {
            let &(p, i) = self
                .index
                .get(l)
                .ok_or_else(|| ChainsError::BadChain(format!("label {l:?} not in complex")))?;
            if p != c.degree {
                return Err(ChainsError::BadChain(format!(
                    "label {l:?} lives in degree {p}, chain claims {}",
                    c.degree
                )));
            }
            v.insert(i, coef.clone());
        }
        Ok(v)
    }

    pub fn from_coords(&self, p: i64, v: &SparseVec) -> QChain<L> {
        let basis = self.basis(p);
        let mut c = QChain::zero(p);
        for (&i, coef) in v {
            c.add_term(basis[i].clone(), coef.clone());
        }
        c
    }

    pub fn boundary_of(&self, c: &QChain<L>) -> Result<QChain<L>, ChainsError> {
        let coords = self.to_coords(c)?;
        let out = match self.boundaries.get(&c.degree) {
            Some(m) => m.vec_mul(&coords),
            None => SparseVec::new(),
        };
        Ok(self.from_coords(c.degree - 1, &out))
    }

    /// Reduced homology at degree p, with tracked representatives.
    pub fn homology(&self, p: i64) -> Homology<L> {
        let n = self.dim(p);
        let index: BTreeMap<L, usize> =
            self.basis(p).iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let cycle_check = self.boundaries.get(&p).cloned();
        if n == 0 {
            return Homology {
                degree: p,
                betti: 0,
                reps: Vec::new(),
                ech: Echelon::new(),
                cycle_check,
                index,
            };
        }
        let mut ech = Echelon::new();
        if let Some(above) = self.boundaries.get(&(p + 1)) {
            for i in 0..above.rows() {
                ech.insert_row(above.row(i).clone());
            }
        }
        let boundary_rank = ech.rank();
        let kernel = match self.boundaries.get(&p) {
            Some(m) if m.cols() > 0 => m.transpose().kernel_basis(),
            _ => QMatrix::identity(n),
        };
        let mut reps: Vec<QChain<L>> = Vec::new();
        for i in 0..kernel.rows() {
            let (rem, _) = ech.reduce(kernel.row(i));
            let Some((_, lead)) = rem.first_key_value() else { continue };
            let inv = lead.clone().recip();
            let normalized: SparseVec = rem.iter().map(|(&j, v)| (j, v * &inv)).collect();
            let mut tag = SparseVec::new();
            tag.insert(reps.len(), Rat::one());
            let added = ech.insert(normalized.clone(), tag);
            debug_assert!(added);
            reps.push(self.from_coords(p, &normalized));
        }
        debug_assert_eq!(reps.len(), kernel.rows() - boundary_rank);
        Homology { degree: p, betti: reps.len(), reps, ech, cycle_check, index }
    }

    /// Betti numbers over all degrees with a basis.
    pub fn betti_all(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for p in self.degrees() {
            let b = self.homology(p).betti;
            if b > 0 {
                out.insert(p, b);
            }
        }
        out
    }
}

/// Homology at one degree: dimension, chosen representative cycles, and a
/// reducer sending any cycle to its coordinates over the representatives.
pub struct Homology<L: Ord + Clone> {
    pub degree: i64,
    pub betti: usize,
    pub reps: Vec<QChain<L>>,
    ech: Echelon,
    cycle_check: Option<QMatrix>,
    index: BTreeMap<L, usize>,
}

impl<L: Ord + Clone + fmt::Debug> Homology<L> {
    /// Coordinates of a cycle in the representative basis. Boundaries map to
    /// the zero vector; non-cycles are rejected.
    pub fn reduce(&self, c: &QChain<L>) -> Result<Vec<Rat>, ChainsError> {
        if c.degree != self.degree {
            return Err(ChainsError::BadChain(format!(
                "chain degree {} does not match homology degree {}",
                c.degree, self.degree
            )));
        }
        let mut coords = SparseVec::new();
        for (l, coef) in &c.coeffs {
            let &i = self
                .index
                .get(l)
                .ok_or_else(|| ChainsError::BadChain(format!("label {l:?} not in degree basis")))?;
            coords.insert(i, coef.clone());
        }
        if let Some(m) = &self.cycle_check {
            if m.cols() > 0 && !m.vec_mul(&coords).is_empty() {
                return Err(ChainsError::NotACycle);
            }
        }
        let (rem, tag) = self.ech.reduce(&coords);
        if !rem.is_empty() {
            // cycles always lie in span(boundaries) + span(reps)
            return Err(ChainsError::BadChain(
                "cycle did not reduce against the homology basis".into(),
            ));
        }
        let mut out = vec![Rat::zero(); self.betti];
        for (i, v) in tag {
            out[i] = v;
        }
        Ok(out)
    }
}
