//! Desk-scale reference model of the complement's cochain algebra, built
//! from the labeled lattice alone. The free graded-commutative algebra on
//! letters e_A (degree 1, exterior) and c_A (degree 2, polynomial), one
//! pair per non-bottom element A, carries the differential d(e_A) = c_A.
//! A family of relation generators cuts out the ideal; the quotient is
//! materialized degree by degree up to a chosen truncation and all linear
//! algebra is exact. The model's sole job is to cross-check the small
//! complex used by the main pipeline, so everything favors transparency
//! over speed.

use exact_linalg::{rat_int, Rat};
use lattice::LabeledLattice;
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub mod basic;
pub mod quasi;
pub mod quotient;

pub use basic::{
    basic_basis, enumerate_basic, expand_critical_chain, homotopy_h, sigma_tau_expand,
    verify_homotopy, BasicBasis, BasicMonomial, HomotopyReport,
};
pub use quasi::{quasi_iso_check, DegreeReport, QuasiIsoReport};
pub use quotient::{
    truncated_quotient, truncated_quotient_with_cap, TruncatedQuotient, DEFAULT_MONOMIAL_CAP,
};

#[derive(Debug)]
pub enum DcpError {
    Input(String),
    /// a slice would exceed the configured monomial cap
    TooLarge(String),
    /// the homotopy is only defined away from the critical monomials
    CriticalInput(String),
    /// a cross-check against the small complex failed
    Model(String),
    /// the requested degree needs slices beyond the truncation
    Truncation(String),
}

impl fmt::Display for DcpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DcpError::Input(s) => write!(f, "bad input: {s}"),
            DcpError::TooLarge(s) => write!(f, "slice too large: {s}"),
            DcpError::CriticalInput(s) => write!(f, "critical monomial: {s}"),
            DcpError::Model(s) => write!(f, "model check failed: {s}"),
            DcpError::Truncation(s) => write!(f, "truncation too small: {s}"),
        }
    }
}

impl std::error::Error for DcpError {}

impl From<chains::ChainsError> for DcpError {
    fn from(e: chains::ChainsError) -> Self {
        DcpError::Model(e.to_string())
    }
}

/// A monomial in the free graded-commutative algebra: a set of exterior
/// letters e_A and a polynomial part recording the exponent of each c_A.
/// The exterior letters are stored in index order; signs from reordering
/// are carried by the element, never by the monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeMonomial {
    pub(crate) e_part: Vec<usize>,
    pub(crate) c_part: BTreeMap<usize, u32>,
}

impl FreeMonomial {
    pub fn one() -> Self {
        FreeMonomial { e_part: Vec::new(), c_part: BTreeMap::new() }
    }

    pub fn letter_e(a: usize) -> Self {
        FreeMonomial { e_part: vec![a], c_part: BTreeMap::new() }
    }

    pub fn letter_c(a: usize) -> Self {
        FreeMonomial { e_part: Vec::new(), c_part: BTreeMap::from([(a, 1)]) }
    }

    pub fn from_parts(mut e_part: Vec<usize>, c_part: BTreeMap<usize, u32>) -> (Self, i64) {
        let sign = sort_count_swaps(&mut e_part);
        assert!(
            e_part.windows(2).all(|w| w[0] < w[1]),
            "exterior letters must be distinct"
        );
        let c_part = c_part.into_iter().filter(|(_, m)| *m > 0).collect();
        (FreeMonomial { e_part, c_part }, sign)
    }

    pub fn e_letters(&self) -> &[usize] {
        &self.e_part
    }

    pub fn c_exponents(&self) -> &BTreeMap<usize, u32> {
        &self.c_part
    }

    pub fn degree(&self) -> usize {
        self.e_part.len() + 2 * self.c_part.values().map(|&m| m as usize).sum::<usize>()
    }

    /// Σ dim A over exterior letters plus 2 Σ m·dim B over the polynomial
    /// part. Any monomial of degree r has weight at most r·dim(top).
    pub fn weight(&self, l: &LabeledLattice) -> u64 {
        let e: u64 = self.e_part.iter().map(|&a| l.dims()[a] as u64).sum();
        let c: u64 =
            self.c_part.iter().map(|(&a, &m)| 2 * m as u64 * l.dims()[a] as u64).sum();
        e + c
    }

    /// Product of two monomials; None when an exterior letter repeats.
    /// The sign counts the transpositions needed to interleave the
    /// exterior parts.
    pub fn mul(&self, other: &Self) -> Option<(Self, i64)> {
        let mut crossings = 0usize;
        let mut merged = Vec::with_capacity(self.e_part.len() + other.e_part.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.e_part.len() || j < other.e_part.len() {
            let take_left = match (self.e_part.get(i), other.e_part.get(j)) {
                (Some(&a), Some(&b)) if a == b => return None,
                (Some(&a), Some(&b)) => a < b,
                (Some(_), None) => true,
                (None, _) => false,
            };
            if take_left {
                merged.push(self.e_part[i]);
                i += 1;
            } else {
                // a later right letter jumps over the remaining left ones
                crossings += self.e_part.len() - i;
                merged.push(other.e_part[j]);
                j += 1;
            }
        }
        let mut c_part = self.c_part.clone();
        for (&a, &m) in &other.c_part {
            *c_part.entry(a).or_insert(0) += m;
        }
        let sign = if crossings.is_multiple_of(2) { 1 } else { -1 };
        Some((FreeMonomial { e_part: merged, c_part }, sign))
    }
}

impl fmt::Display for FreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e_part.is_empty() && self.c_part.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &a in &self.e_part {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "e{a}")?;
            first = false;
        }
        for (&a, &m) in &self.c_part {
            if !first {
                write!(f, " ")?;
            }
            if m == 1 {
                write!(f, "c{a}")?;
            } else {
                write!(f, "c{a}^{m}")?;
            }
            first = false;
        }
        Ok(())
    }
}

fn sort_count_swaps(xs: &mut [usize]) -> i64 {
    // insertion sort; fine at these lengths
    let mut swaps = 0usize;
    for i in 1..xs.len() {
        let mut j = i;
        while j > 0 && xs[j - 1] > xs[j] {
            xs.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A linear combination of free monomials with rational coefficients.
pub type FreeElement = BTreeMap<FreeMonomial, Rat>;

pub fn free_unit() -> FreeElement {
    FreeElement::from([(FreeMonomial::one(), rat_int(1))])
}

pub fn free_single(m: FreeMonomial) -> FreeElement {
    FreeElement::from([(m, rat_int(1))])
}

pub fn free_add_scaled(acc: &mut FreeElement, x: &FreeElement, coef: &Rat) {
    if coef.is_zero() {
        return;
    }
    for (m, v) in x {
        let e = acc.entry(m.clone()).or_insert_with(Rat::zero);
        *e += v * coef;
        if e.is_zero() {
            acc.remove(m);
        }
    }
}

pub fn free_mul(x: &FreeElement, y: &FreeElement) -> FreeElement {
    let mut out = FreeElement::new();
    for (mx, vx) in x {
        for (my, vy) in y {
            if let Some((m, sign)) = mx.mul(my) {
                let e = out.entry(m.clone()).or_insert_with(Rat::zero);
                *e += vx * vy * rat_int(sign);
                if e.is_zero() {
                    out.remove(&m);
                }
            }
        }
    }
    out
}

pub fn free_pow(x: &FreeElement, n: u32) -> FreeElement {
    let mut out = free_unit();
    for _ in 0..n {
        out = free_mul(&out, x);
    }
    out
}

/// The differential: d(e_A) = c_A extended by the graded Leibniz rule,
/// so removing the i-th exterior letter carries the sign (-1)^i.
pub fn free_differential(x: &FreeElement) -> FreeElement {
    let mut out = FreeElement::new();
    for (m, v) in x {
        for (i, &a) in m.e_part.iter().enumerate() {
            let mut e_part = m.e_part.clone();
            e_part.remove(i);
            let mut c_part = m.c_part.clone();
            *c_part.entry(a).or_insert(0) += 1;
            let sign = if i % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            let t = FreeMonomial { e_part, c_part };
            let e = out.entry(t.clone()).or_insert_with(Rat::zero);
            *e += v * sign;
            if e.is_zero() {
                out.remove(&t);
            }
        }
    }
    out
}

/// σ_A: the sum of c_B over every B above A (A itself included).
pub fn sigma(l: &LabeledLattice, a: usize) -> FreeElement {
    let mut out = FreeElement::new();
    for b in 0..l.len() {
        if l.leq(a, b) {
            out.insert(FreeMonomial::letter_c(b), rat_int(1));
        }
    }
    out
}

/// τ_A: the sum of e_B over every B above A.
pub fn tau(l: &LabeledLattice, a: usize) -> FreeElement {
    let mut out = FreeElement::new();
    for b in 0..l.len() {
        if l.leq(a, b) {
            out.insert(FreeMonomial::letter_e(b), rat_int(1));
        }
    }
    out
}

/// One ideal generator: exterior letters over `x1`, polynomial letters
/// over `x2`, times σ_b raised to the dimension gap between b and the
/// join of x1 ∪ x2.
#[derive(Debug, Clone)]
pub struct Relation {
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    pub b: usize,
    pub element: FreeElement,
}

/// All relation generators of degree at most `max_degree`. The family is
/// indexed by a set Y = x1 ∪ x2 of non-bottom elements, a split of Y into
/// the exterior part x1 and polynomial part x2, and an element b strictly
/// above every member of Y (for empty Y, any non-bottom b, which yields
/// the power relation on σ_b). Generators above the degree cap cannot
/// touch any slice of a truncation at that cap.
pub fn relation_generators(l: &LabeledLattice, max_degree: usize) -> Vec<Relation> {
    let elements: Vec<usize> = (0..l.len()).filter(|&a| a != l.bottom()).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(y) = stack.pop() {
        let start = y.last().map_or(0, |&a| a + 1);
        for (pos, &next) in elements.iter().enumerate() {
            if next >= start && y.len() < max_degree {
                let mut bigger = y.clone();
                bigger.push(elements[pos]);
                stack.push(bigger);
            }
        }
        emit_relations(l, &y, max_degree, &mut out);
    }
    out.sort_by(|p, q| (&p.b, &p.x1, &p.x2).cmp(&(&q.b, &q.x1, &q.x2)));
    out
}

fn emit_relations(l: &LabeledLattice, y: &[usize], max_degree: usize, out: &mut Vec<Relation>) {
    let join = l.join_all(y.iter().copied());
    let candidates: Vec<usize> = (0..l.len())
        .filter(|&b| b != l.bottom() && y.iter().all(|&a| l.lt(a, b)))
        .collect();
    for b in candidates {
        let gap = l.dims()[b] - l.dims()[join];
        // minimal degree of a split is |y|, with everything exterior
        if y.len() + 2 * gap as usize > max_degree {
            continue;
        }
        let power = free_pow(&sigma(l, b), gap);
        // walk the splits of y into exterior and polynomial parts
        for mask in 0..1u32 << y.len() {
            let x1: Vec<usize> =
                y.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, &a)| a).collect();
            let x2: Vec<usize> =
                y.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a).collect();
            let degree = x1.len() + 2 * x2.len() + 2 * gap as usize;
            if degree > max_degree {
                continue;
            }
            let mut c_part = BTreeMap::new();
            for &a in &x2 {
                *c_part.entry(a).or_insert(0) += 1;
            }
            let (prefix, sign) = FreeMonomial::from_parts(x1.clone(), c_part);
            debug_assert_eq!(sign, 1, "letters arrive in index order");
            let element = free_mul(&free_single(prefix), &power);
            if !element.is_empty() {
                out.push(Relation { x1, x2, b, element });
            }
        }
    }
}
