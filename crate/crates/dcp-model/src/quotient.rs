//! Degree-by-degree materialization of the quotient algebra. Each slice
//! holds the full monomial list of its degree, an echelon basis of the
//! ideal's intersection with the slice, and the surviving cosets.

use crate::{
    free_differential, free_single, relation_generators, DcpError, FreeElement, FreeMonomial,
};
use exact_linalg::{Echelon, QMatrix, Rat, SparseVec};
use lattice::LabeledLattice;
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_MONOMIAL_CAP: usize = 200_000;

struct Slice {
    monomials: Vec<FreeMonomial>,
    index: BTreeMap<FreeMonomial, usize>,
    ideal: Echelon,
    /// monomial indices whose cosets form the quotient basis
    quotient_cols: Vec<usize>,
}

pub struct TruncatedQuotient {
    max_degree: usize,
    slices: Vec<Slice>,
}

/// Builds the quotient up to `max_degree` with the default monomial cap.
pub fn truncated_quotient(
    l: &LabeledLattice,
    max_degree: usize,
) -> Result<TruncatedQuotient, DcpError> {
    truncated_quotient_with_cap(l, max_degree, DEFAULT_MONOMIAL_CAP)
}

pub fn truncated_quotient_with_cap(
    l: &LabeledLattice,
    max_degree: usize,
    cap: usize,
) -> Result<TruncatedQuotient, DcpError> {
    let letters: Vec<usize> = (0..l.len()).filter(|&a| a != l.bottom()).collect();
    let mut slices = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let monomials = enumerate_monomials(&letters, d, cap)?;
        let index = monomials.iter().cloned().zip(0..).collect();
        slices.push(Slice { monomials, index, ideal: Echelon::new(), quotient_cols: Vec::new() });
    }

    // the slice of the ideal in degree d is spanned by lower ideal slices
    // times single letters, plus the generators of degree exactly d
    let mut by_degree: BTreeMap<usize, Vec<FreeElement>> = BTreeMap::new();
    for r in relation_generators(l, max_degree) {
        let degree = match r.element.keys().next() {
            Some(m) => m.degree(),
            None => continue,
        };
        by_degree.entry(degree).or_default().push(r.element);
    }
    for d in 0..=max_degree {
        let mut rows: Vec<FreeElement> = Vec::new();
        for lower in [1usize, 2] {
            if d < lower {
                continue;
            }
            let basis: Vec<FreeElement> = {
                let slice = &slices[d - lower];
                slice
                    .ideal
                    .basis_rows()
                    .map(|row| devectorize(slice, row))
                    .collect()
            };
            for x in basis {
                for &a in &letters {
                    let letter = if lower == 1 {
                        FreeMonomial::letter_e(a)
                    } else {
                        FreeMonomial::letter_c(a)
                    };
                    rows.push(crate::free_mul(&x, &free_single(letter)));
                }
            }
        }
        rows.extend(by_degree.remove(&d).unwrap_or_default());
        let slice = &mut slices[d];
        for x in rows {
            let v = vectorize(slice, &x).expect("ideal rows stay inside their degree");
            slice.ideal.insert_row(v);
        }
        let pivots: BTreeSet<usize> = slice.ideal.pivots().collect();
        slice.quotient_cols = (0..slice.monomials.len()).filter(|i| !pivots.contains(i)).collect();
    }

    let tq = TruncatedQuotient { max_degree, slices };
    tq.check_differential_stability()?;
    Ok(tq)
}

fn vectorize(slice: &Slice, x: &FreeElement) -> Result<SparseVec, DcpError> {
    let mut v = SparseVec::new();
    for (m, coef) in x {
        let Some(&i) = slice.index.get(m) else {
            return Err(DcpError::Input(format!("monomial {m} is not in this slice")));
        };
        v.insert(i, coef.clone());
    }
    Ok(v)
}

fn devectorize(slice: &Slice, v: &SparseVec) -> FreeElement {
    v.iter().map(|(&i, coef)| (slice.monomials[i].clone(), coef.clone())).collect()
}

impl TruncatedQuotient {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn monomial_count(&self, degree: usize) -> usize {
        self.slices.get(degree).map_or(0, |s| s.monomials.len())
    }

    pub fn ideal_rank(&self, degree: usize) -> usize {
        self.slices.get(degree).map_or(0, |s| s.ideal.rank())
    }

    pub fn quotient_dim(&self, degree: usize) -> usize {
        self.slices.get(degree).map_or(0, |s| s.quotient_cols.len())
    }

    /// The coset representatives chosen for this degree.
    pub fn quotient_basis(&self, degree: usize) -> Vec<&FreeMonomial> {
        match self.slices.get(degree) {
            Some(s) => s.quotient_cols.iter().map(|&i| &s.monomials[i]).collect(),
            None => Vec::new(),
        }
    }

    /// Coordinates of a homogeneous element over the chosen cosets.
    pub fn reduce_at(&self, degree: usize, x: &FreeElement) -> Result<Vec<Rat>, DcpError> {
        let Some(slice) = self.slices.get(degree) else {
            return Err(DcpError::Truncation(format!(
                "degree {degree} exceeds the truncation {}",
                self.max_degree
            )));
        };
        for m in x.keys() {
            if m.degree() != degree {
                return Err(DcpError::Input(format!(
                    "monomial {m} has degree {}, expected {degree}",
                    m.degree()
                )));
            }
        }
        let v = vectorize(slice, x)?;
        let (rem, _) = slice.ideal.reduce_full(&v);
        let mut out = vec![Rat::zero(); slice.quotient_cols.len()];
        let place: BTreeMap<usize, usize> =
            slice.quotient_cols.iter().copied().zip(0..).collect();
        for (i, coef) in rem {
            let &k = place.get(&i).expect("reduction lands off the ideal pivots");
            out[k] = coef;
        }
        Ok(out)
    }

    pub fn is_zero_in_quotient(&self, degree: usize, x: &FreeElement) -> Result<bool, DcpError> {
        Ok(self.reduce_at(degree, x)?.iter().all(Rat::is_zero))
    }

    /// The induced differential from this degree to the next, one row per
    /// coset representative.
    pub fn differential_matrix(&self, degree: usize) -> Result<QMatrix, DcpError> {
        if degree + 1 > self.max_degree {
            return Err(DcpError::Truncation(format!(
                "differential out of degree {degree} needs slice {}",
                degree + 1
            )));
        }
        let cols = self.quotient_dim(degree + 1);
        let mut rows = Vec::with_capacity(self.quotient_dim(degree));
        for m in self.quotient_basis(degree) {
            let image = free_differential(&free_single(m.clone()));
            let coords = self.reduce_at(degree + 1, &image)?;
            rows.push(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
        Ok(QMatrix::from_sparse_rows(rows, cols))
    }

    /// Cohomology dimensions of the truncated complex for every degree
    /// whose outgoing differential is still inside the truncation.
    pub fn homology_dims(&self) -> Result<Vec<usize>, DcpError> {
        let mut out = Vec::new();
        let mut prev_rank = 0usize;
        for q in 0..self.max_degree {
            let m = self.differential_matrix(q)?;
            let rank = m.rank();
            out.push(self.quotient_dim(q) - rank - prev_rank);
            prev_rank = rank;
        }
        Ok(out)
    }

    /// The ideal must be closed under the differential degree by degree;
    /// anything else means the generator family is incomplete.
    fn check_differential_stability(&self) -> Result<(), DcpError> {
        for d in 0..self.max_degree {
            let slice = &self.slices[d];
            let next = &self.slices[d + 1];
            for row in slice.ideal.basis_rows() {
                let x = devectorize(slice, row);
                let image = free_differential(&x);
                let v = vectorize(next, &image)?;
                if !next.ideal.contains(&v) {
                    return Err(DcpError::Model(format!(
                        "differential leaves the ideal at degree {d}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// All monomials of the given degree over the letter set, sorted. Errors
/// out past the cap instead of degrading.
fn enumerate_monomials(
    letters: &[usize],
    degree: usize,
    cap: usize,
) -> Result<Vec<FreeMonomial>, DcpError> {
    let mut out = Vec::new();
    let mut e_subset = Vec::new();
    walk_e(letters, 0, degree, &mut e_subset, &mut out, cap)?;
    out.sort();
    Ok(out)
}

fn walk_e(
    letters: &[usize],
    from: usize,
    remaining: usize,
    e_subset: &mut Vec<usize>,
    out: &mut Vec<FreeMonomial>,
    cap: usize,
) -> Result<(), DcpError> {
    if remaining.is_multiple_of(2) {
        let mut c_part = BTreeMap::new();
        walk_c(letters, 0, remaining / 2, e_subset, &mut c_part, out, cap)?;
    }
    for pos in from..letters.len() {
        if remaining == 0 {
            break;
        }
        e_subset.push(letters[pos]);
        walk_e(letters, pos + 1, remaining - 1, e_subset, out, cap)?;
        e_subset.pop();
    }
    Ok(())
}

fn walk_c(
    letters: &[usize],
    from: usize,
    remaining: usize,
    e_subset: &[usize],
    c_part: &mut BTreeMap<usize, u32>,
    out: &mut Vec<FreeMonomial>,
    cap: usize,
) -> Result<(), DcpError> {
    if remaining == 0 {
        if out.len() >= cap {
            return Err(DcpError::TooLarge(format!(
                "more than {cap} monomials in one degree"
            )));
        }
        out.push(FreeMonomial { e_part: e_subset.to_vec(), c_part: c_part.clone() });
        return Ok(());
    }
    for pos in from..letters.len() {
        for take in 1..=remaining {
            c_part.insert(letters[pos], take as u32);
            walk_c(letters, pos + 1, remaining - take, e_subset, c_part, out, cap)?;
            c_part.remove(&letters[pos]);
        }
    }
    Ok(())
}
