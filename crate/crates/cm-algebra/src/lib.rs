//! The small cochain model: critical monomials indexed by flags of
//! non-bottom lattice elements, a differential that deletes inner flag
//! entries, and a signed shuffle product. The whole model splits over the
//! top element of the flag, and each summand computes the reduced homology
//! of the open interval below that top.

use chains::{ChainComplex, ChainsError, Flag, PosetView};
use exact_linalg::{rat_int, Rat};
use itertools::Itertools;
use lattice::LabeledLattice;
use num::One;
use std::collections::BTreeMap;
use std::fmt;

/// A critical monomial is determined by its flag alone: a strictly
/// increasing chain of non-bottom elements. The empty flag is the
/// multiplicative unit and carries no top element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CriticalMonomial {
    pub flag: Flag,
}

impl CriticalMonomial {
    pub fn new(l: &LabeledLattice, flag: Flag) -> Self {
        for w in flag.windows(2) {
            assert!(l.lt(w[0], w[1]), "flag must be strictly increasing in the lattice");
        }
        if let Some(&first) = flag.first() {
            assert_ne!(first, l.bottom(), "flags never contain the bottom element");
        }
        CriticalMonomial { flag }
    }

    pub fn unit() -> Self {
        CriticalMonomial { flag: Vec::new() }
    }

    pub fn top(&self) -> Option<usize> {
        self.flag.last().copied()
    }

    /// Cohomological degree: twice the dimension of the top minus the flag
    /// length. The unit sits in degree zero.
    pub fn degree_q(&self, l: &LabeledLattice) -> i64 {
        match self.top() {
            Some(a) => 2 * l.dims()[a] as i64 - self.flag.len() as i64,
            None => 0,
        }
    }
}

impl fmt::Display for CriticalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.flag.is_empty() {
            return write!(f, "1");
        }
        write!(f, "c(")?;
        for (i, x) in self.flag.iter().enumerate() {
            if i > 0 {
                write!(f, "<")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A Q-linear combination of critical monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CMElement {
    pub terms: BTreeMap<CriticalMonomial, Rat>,
}

impl CMElement {
    pub fn zero() -> Self {
        CMElement::default()
    }

    pub fn unit() -> Self {
        CMElement::single(CriticalMonomial::unit())
    }

    pub fn single(t: CriticalMonomial) -> Self {
        let mut x = CMElement::zero();
        x.add_term(t, Rat::one());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: CriticalMonomial, coef: Rat) {
        use std::collections::btree_map::Entry;
        if num::Zero::is_zero(&coef) {
            return;
        }
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if num::Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CMElement, coef: &Rat) {
        for (t, v) in &other.terms {
            self.add_term(t.clone(), v * coef);
        }
    }

    pub fn scaled(&self, coef: &Rat) -> CMElement {
        let mut out = CMElement::zero();
        out.add_scaled(self, coef);
        out
    }

    /// The shared (top element, q) pair when the element is homogeneous and
    /// unit-free; None for zero, mixed, or unit-containing elements.
    pub fn homogeneous_bigrade(&self, l: &LabeledLattice) -> Option<(usize, i64)> {
        let mut grade = None;
        for t in self.terms.keys() {
            let g = (t.top()?, t.degree_q(l));
            match grade {
                None => grade = Some(g),
                Some(h) if h != g => return None,
                _ => {}
            }
        }
        grade
    }
}

/// Differential of one critical monomial: the signed sum over deletions of
/// the i-th smallest flag entry, i = 1..k-1. The top entry is never
/// deleted, so the top-element grading is preserved and q rises by one.
pub fn cm_differential(t: &CriticalMonomial) -> CMElement {
    let k = t.flag.len();
    let mut out = CMElement::zero();
    for i in 1..k {
        let mut shorter = t.flag.clone();
        shorter.remove(i - 1);
        out.add_term(
            CriticalMonomial { flag: shorter },
            rat_int(if i % 2 == 0 { 1 } else { -1 }),
        );
    }
    out
}

/// Linear extension of the differential. The unit maps to zero.
pub fn cm_element_differential(x: &CMElement) -> CMElement {
    let mut out = CMElement::zero();
    for (t, coef) in &x.terms {
        out.add_scaled(&cm_differential(t), coef);
    }
    out
}

/// Product of two critical monomials: zero unless the tops are
/// dimension-additive, otherwise the signed sum over shuffles of the two
/// flags, each shuffle replaced by the flag of its partial joins. A
/// repeated partial join kills the shuffle; with the dimension condition
/// satisfied this never fires, but the rule is applied regardless.
pub fn cm_product(l: &LabeledLattice, t1: &CriticalMonomial, t2: &CriticalMonomial) -> CMElement {
    let (Some(a), Some(b)) = (t1.top(), t2.top()) else {
        // unit times anything
        return CMElement::single(if t1.flag.is_empty() { t2.clone() } else { t1.clone() });
    };
    let mut out = CMElement::zero();
    let ab = l.join(a, b);
    if l.dims()[ab] != l.dims()[a] + l.dims()[b] {
        return out;
    }
    let (p, q) = (t1.flag.len(), t2.flag.len());
    // shuffle words as position sets of the first flag within the merged
    // word, in lexicographic order; the sign counts crossings of the two
    // words past each other
    'shuffles: for first_at in (0..p + q).combinations(p) {
        let mut take_first = vec![false; p + q];
        for &s in &first_at {
            take_first[s] = true;
        }
        let (mut i1, mut i2) = (0, 0);
        let mut crossings = 0;
        let mut join = l.bottom();
        let mut flag: Flag = Vec::with_capacity(p + q);
        for &tf in &take_first {
            let x = if tf {
                i1 += 1;
                crossings += i2;
                t1.flag[i1 - 1]
            } else {
                i2 += 1;
                t2.flag[i2 - 1]
            };
            let next = l.join(join, x);
            if next == join {
                continue 'shuffles;
            }
            join = next;
            flag.push(next);
        }
        debug_assert_eq!(flag.last().copied(), Some(ab));
        out.add_term(
            CriticalMonomial { flag },
            rat_int(if crossings % 2 == 0 { 1 } else { -1 }),
        );
    }
    out
}

/// Bilinear extension of the product.
pub fn cm_element_product(l: &LabeledLattice, x: &CMElement, y: &CMElement) -> CMElement {
    let mut out = CMElement::zero();
    for (t1, c1) in &x.terms {
        for (t2, c2) in &y.terms {
            out.add_scaled(&cm_product(l, t1, t2), &(c1 * c2));
        }
    }
    out
}

/// One summand of the model: all critical monomials with the given top,
/// graded by flag length, with the deletion differential as the boundary.
/// Flag length k sits in cohomological degree q = 2 dim(top) - k, and the
/// homology in length k matches the reduced homology of the open interval
/// below the top in simplicial degree k - 2.
pub fn cm_complex(
    l: &LabeledLattice,
    top: usize,
) -> Result<ChainComplex<CriticalMonomial>, ChainsError> {
    assert_ne!(top, l.bottom(), "the bottom element indexes no summand");
    let below = chains::flag_complex(&PosetView::open_interval(l, l.bottom(), top))?;
    let mut bases: BTreeMap<i64, Vec<CriticalMonomial>> = BTreeMap::new();
    for p in below.degrees() {
        let monos = below
            .basis(p)
            .iter()
            .map(|f| {
                let mut flag = f.clone();
                flag.push(top);
                CriticalMonomial { flag }
            })
            .collect();
        bases.insert(p + 2, monos);
    }
    ChainComplex::build(bases, |_, t| cm_differential(t).terms.into_iter().collect::<Vec<_>>())
}

/// The whole model: one complex per non-bottom element.
pub fn cm_complexes(
    l: &LabeledLattice,
) -> Result<BTreeMap<usize, ChainComplex<CriticalMonomial>>, ChainsError> {
    let mut out = BTreeMap::new();
    for a in 0..l.len() {
        if a == l.bottom() {
            continue;
        }
        out.insert(a, cm_complex(l, a)?);
    }
    Ok(out)
}

/// Flag length carrying cohomological degree q for the summand under `top`.
pub fn length_for_degree(l: &LabeledLattice, top: usize, q: i64) -> i64 {
    2 * l.dims()[top] as i64 - q
}
