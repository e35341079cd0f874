//! The monomial basis of the quotient in the σ/τ generators, the split
//! into critical and non-critical parts, and the contracting homotopy on
//! the non-critical span.

use crate::{
    free_add_scaled, free_differential, free_mul, free_pow, free_unit, sigma, tau, DcpError,
    FreeElement, TruncatedQuotient,
};
use exact_linalg::{rat_int, Echelon, Rat, SparseVec};
use lattice::LabeledLattice;
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A product of τ letters over a flag and σ powers over part of it.
/// `chain` is the full flag ascending; position i carries a τ letter when
/// `in_t[i]` holds and the σ exponent `m[i]`. Positions outside T must
/// have a positive exponent, and every exponent stays below the dimension
/// gap to the previous flag element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasicMonomial {
    chain: Vec<usize>,
    in_t: Vec<bool>,
    m: Vec<u32>,
}

impl BasicMonomial {
    pub fn new(
        l: &LabeledLattice,
        chain: Vec<usize>,
        in_t: Vec<bool>,
        m: Vec<u32>,
    ) -> Result<Self, DcpError> {
        if chain.len() != in_t.len() || chain.len() != m.len() {
            return Err(DcpError::Input("mismatched basic monomial parts".into()));
        }
        let b = BasicMonomial { chain, in_t, m };
        for (i, &a) in b.chain.iter().enumerate() {
            if a == l.bottom() {
                return Err(DcpError::Input("flags use non-bottom elements only".into()));
            }
            if i > 0 && !l.lt(b.chain[i - 1], a) {
                return Err(DcpError::Input("chain must ascend strictly".into()));
            }
            if !b.in_t[i] && b.m[i] == 0 {
                return Err(DcpError::Input(
                    "a flag element outside T needs a positive exponent".into(),
                ));
            }
            if b.m[i] >= b.gap(l, i) {
                return Err(DcpError::Input(format!(
                    "exponent {} reaches the dimension gap at position {i}",
                    b.m[i]
                )));
            }
        }
        Ok(b)
    }

    pub fn unit() -> Self {
        BasicMonomial { chain: Vec::new(), in_t: Vec::new(), m: Vec::new() }
    }

    /// The critical monomial of a flag: every element carries τ and the
    /// largest exponent its dimension gap allows.
    pub fn from_critical_flag(l: &LabeledLattice, flag: &[usize]) -> Result<Self, DcpError> {
        let b = BasicMonomial {
            chain: flag.to_vec(),
            in_t: vec![true; flag.len()],
            m: vec![0; flag.len()],
        };
        let m = (0..flag.len()).map(|i| b.gap(l, i) - 1).collect();
        BasicMonomial::new(l, flag.to_vec(), vec![true; flag.len()], m)
    }

    /// dim of position i minus dim of its predecessor (or zero).
    fn gap(&self, l: &LabeledLattice, i: usize) -> u32 {
        let below = if i == 0 { 0 } else { l.dims()[self.chain[i - 1]] };
        l.dims()[self.chain[i]] - below
    }

    pub fn flag(&self) -> &[usize] {
        &self.chain
    }

    pub fn t_set(&self) -> Vec<usize> {
        self.chain.iter().zip(&self.in_t).filter(|(_, &t)| t).map(|(&a, _)| a).collect()
    }

    pub fn s_exponents(&self) -> Vec<(usize, u32)> {
        self.chain
            .iter()
            .zip(&self.m)
            .filter(|(_, &m)| m > 0)
            .map(|(&a, &m)| (a, m))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.in_t.iter().filter(|&&t| t).count()
            + 2 * self.m.iter().map(|&m| m as usize).sum::<usize>()
    }

    /// Critical means every flag element carries τ and sits exactly one
    /// below its dimension gap.
    pub fn is_critical(&self, l: &LabeledLattice) -> bool {
        (0..self.chain.len()).all(|i| self.in_t[i] && self.m[i] == self.gap(l, i) - 1)
    }

    /// Count of flag elements that are not critical for this monomial;
    /// zero exactly on the critical monomials.
    pub fn norm(&self, l: &LabeledLattice) -> usize {
        (0..self.chain.len())
            .filter(|&i| !(self.in_t[i] && self.m[i] == self.gap(l, i) - 1))
            .count()
    }
}

impl fmt::Display for BasicMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &a) in self.chain.iter().enumerate() {
            if self.in_t[i] {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "t{a}")?;
                first = false;
            }
        }
        for (i, &a) in self.chain.iter().enumerate() {
            if self.m[i] > 0 {
                if !first {
                    write!(f, " ")?;
                }
                if self.m[i] == 1 {
                    write!(f, "s{a}")?;
                } else {
                    write!(f, "s{a}^{}", self.m[i])?;
                }
                first = false;
            }
        }
        Ok(())
    }
}

/// Literal expansion into the e/c letters: τ letters ascending along the
/// flag, then the σ powers.
pub fn sigma_tau_expand(l: &LabeledLattice, b: &BasicMonomial) -> FreeElement {
    let mut out = free_unit();
    for (i, &a) in b.chain.iter().enumerate() {
        if b.in_t[i] {
            out = free_mul(&out, &tau(l, a));
        }
    }
    for (i, &a) in b.chain.iter().enumerate() {
        if b.m[i] > 0 {
            out = free_mul(&out, &free_pow(&sigma(l, a), b.m[i]));
        }
    }
    out
}

/// All basic monomials of the given degree, sorted.
pub fn enumerate_basic(l: &LabeledLattice, degree: usize) -> Vec<BasicMonomial> {
    let elements: Vec<usize> = (0..l.len()).filter(|&a| a != l.bottom()).collect();
    let mut out = Vec::new();
    let mut partial = BasicMonomial::unit();
    extend_basic(l, &elements, &mut partial, degree, &mut out);
    out.sort();
    out
}

fn extend_basic(
    l: &LabeledLattice,
    elements: &[usize],
    partial: &mut BasicMonomial,
    remaining: usize,
    out: &mut Vec<BasicMonomial>,
) {
    if remaining == 0 {
        out.push(partial.clone());
    }
    let last = partial.chain.last().copied();
    for &a in elements {
        let ok_order = match last {
            Some(b) => l.lt(b, a),
            None => true,
        };
        if !ok_order {
            continue;
        }
        let below = last.map_or(0, |b| l.dims()[b]);
        let gap = l.dims()[a] - below;
        for in_t in [true, false] {
            let min_m = u32::from(!in_t);
            for m in min_m..gap {
                let cost = usize::from(in_t) + 2 * m as usize;
                if cost > remaining {
                    continue;
                }
                partial.chain.push(a);
                partial.in_t.push(in_t);
                partial.m.push(m);
                extend_basic(l, elements, partial, remaining - cost, out);
                partial.chain.pop();
                partial.in_t.pop();
                partial.m.pop();
            }
        }
    }
}

/// One contraction step: move one σ letter of the monomial into τ
/// position, with the sign counting the τ letters strictly below it.
pub fn homotopy_h(
    l: &LabeledLattice,
    b: &BasicMonomial,
) -> Result<Vec<(Rat, BasicMonomial)>, DcpError> {
    if b.is_critical(l) {
        return Err(DcpError::CriticalInput(format!(
            "the homotopy is undefined on {b}"
        )));
    }
    let mut out = Vec::new();
    for i in 0..b.chain.len() {
        // positions of S \ T: a σ power without a τ letter
        if b.in_t[i] || b.m[i] == 0 {
            continue;
        }
        let below = (0..i).filter(|&j| b.in_t[j]).count();
        let sign = if below % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        let mut moved = b.clone();
        moved.in_t[i] = true;
        moved.m[i] -= 1;
        out.push((sign, moved));
    }
    Ok(out)
}

/// The basic monomials of one degree together with their coordinates in
/// the quotient slice, tagged so arbitrary slice elements can be written
/// in the basic basis.
pub struct BasicBasis {
    pub degree: usize,
    pub monomials: Vec<BasicMonomial>,
    ech: Echelon,
}

/// Collects the basic monomials of the degree and verifies they really
/// are a basis of the slice: independent, and as many as its dimension.
pub fn basic_basis(
    l: &LabeledLattice,
    tq: &TruncatedQuotient,
    degree: usize,
) -> Result<BasicBasis, DcpError> {
    let monomials = enumerate_basic(l, degree);
    let mut ech = Echelon::new();
    for (k, b) in monomials.iter().enumerate() {
        let coords = tq.reduce_at(degree, &sigma_tau_expand(l, b))?;
        let row: SparseVec =
            coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let tag: SparseVec = [(k, rat_int(1))].into_iter().collect();
        if !ech.insert(row, tag) {
            return Err(DcpError::Model(format!(
                "basic monomial {b} is dependent in degree {degree}"
            )));
        }
    }
    if ech.rank() != tq.quotient_dim(degree) {
        return Err(DcpError::Model(format!(
            "{} basic monomials against slice dimension {} in degree {degree}",
            ech.rank(),
            tq.quotient_dim(degree)
        )));
    }
    Ok(BasicBasis { degree, monomials, ech })
}

impl BasicBasis {
    /// Rewrites slice coordinates in the basic monomial basis.
    pub fn decompose(&self, coords: &[Rat]) -> Result<Vec<Rat>, DcpError> {
        let v: SparseVec = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let (rem, tag) = self.ech.reduce(&v);
        if !rem.is_empty() {
            return Err(DcpError::Model(format!(
                "element outside the basic span in degree {}",
                self.degree
            )));
        }
        let mut out = vec![Rat::zero(); self.monomials.len()];
        for (k, c) in tag {
            out[k] = c;
        }
        Ok(out)
    }
}

#[derive(Debug)]
pub struct HomotopyReport {
    pub checked: usize,
    pub by_degree: BTreeMap<usize, usize>,
}

/// Verifies hd(μ) + d(hμ) = |μ|·μ in the truncated quotient for every
/// non-critical basic monomial of degree below the truncation.
pub fn verify_homotopy(l: &LabeledLattice, max_degree: usize) -> Result<HomotopyReport, DcpError> {
    let tq = crate::truncated_quotient(l, max_degree)?;
    let mut bases = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        bases.push(basic_basis(l, &tq, d)?);
    }
    let mut report = HomotopyReport { checked: 0, by_degree: BTreeMap::new() };
    for r in 1..max_degree {
        for b in &bases[r].monomials {
            if b.is_critical(l) {
                continue;
            }
            let expansion = sigma_tau_expand(l, b);

            // h(dμ) needs dμ written in the basic basis one degree up
            let d_coords = tq.reduce_at(r + 1, &free_differential(&expansion))?;
            let d_basic = bases[r + 1].decompose(&d_coords)?;
            let mut lhs_elem = FreeElement::new();
            for (k, coef) in d_basic.iter().enumerate() {
                if coef.is_zero() || bases[r + 1].monomials[k].is_critical(l) {
                    continue;
                }
                for (sign, moved) in homotopy_h(l, &bases[r + 1].monomials[k])? {
                    let scaled = sign * coef;
                    free_add_scaled(&mut lhs_elem, &sigma_tau_expand(l, &moved), &scaled);
                }
            }

            // d(hμ)
            for (sign, moved) in homotopy_h(l, b)? {
                let image = free_differential(&sigma_tau_expand(l, &moved));
                free_add_scaled(&mut lhs_elem, &image, &sign);
            }

            let lhs = tq.reduce_at(r, &lhs_elem)?;
            let scale = rat_int(b.norm(l) as i64);
            let rhs: Vec<Rat> =
                tq.reduce_at(r, &expansion)?.into_iter().map(|c| c * &scale).collect();
            if lhs != rhs {
                return Err(DcpError::Model(format!(
                    "homotopy identity fails on {b} in degree {r}"
                )));
            }
            report.checked += 1;
            *report.by_degree.entry(r).or_insert(0) += 1;
        }
    }
    Ok(report)
}

/// The expansion of a whole chain of critical monomials, coefficients
/// included; the flags come straight from the small complex.
pub fn expand_critical_chain(
    l: &LabeledLattice,
    terms: &[(Vec<usize>, Rat)],
) -> Result<FreeElement, DcpError> {
    let mut out = FreeElement::new();
    for (flag, coef) in terms {
        let b = BasicMonomial::from_critical_flag(l, flag)?;
        free_add_scaled(&mut out, &sigma_tau_expand(l, &b), coef);
    }
    Ok(out)
}
