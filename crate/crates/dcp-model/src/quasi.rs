//! Compares the cohomology of the truncated reference algebra with the
//! small critical-monomial complex, degree by degree, and checks that the
//! inclusion of the small complex hits independent classes.

use crate::basic::expand_critical_chain;
use crate::{free_differential, DcpError};
use cm_algebra::cm_complex;
use exact_linalg::{Echelon, Rat, SparseVec};
use lattice::LabeledLattice;
use num::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub truncated_dim: usize,
    pub model_dim: usize,
    pub inclusion_independent: bool,
}

#[derive(Debug)]
pub struct QuasiIsoReport {
    pub degrees: Vec<DegreeReport>,
    /// the truncation reaches past every degree the algebra can inhabit
    pub complete: bool,
    /// degrees with small-complex homology the truncation cannot see
    pub uncovered: Vec<(usize, usize)>,
}

impl QuasiIsoReport {
    pub fn all_degrees_match(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.truncated_dim == d.model_dim && d.inclusion_independent)
            && self.uncovered.is_empty()
    }
}

/// A representative cycle of the small complex: flags with coefficients.
type CriticalChain = Vec<(Vec<usize>, Rat)>;

/// Homology of the small complex and representative cycles, keyed by
/// cohomological degree. Degree zero holds the unit with no cycle data.
fn small_model_classes(
    l: &LabeledLattice,
) -> Result<BTreeMap<usize, Vec<CriticalChain>>, DcpError> {
    let mut out: BTreeMap<usize, Vec<CriticalChain>> = BTreeMap::new();
    out.insert(0, vec![Vec::new()]);
    for a in 0..l.len() {
        if a == l.bottom() {
            continue;
        }
        let cc = cm_complex(l, a)?;
        for p in cc.degrees().collect::<Vec<_>>() {
            let h = cc.homology(p);
            if h.betti == 0 {
                continue;
            }
            let q = 2 * l.dims()[a] as i64 - p;
            assert!(q > 0, "labels grow along chains, so degrees stay positive");
            for rep in &h.reps {
                let terms: CriticalChain =
                    rep.coeffs.iter().map(|(t, c)| (t.flag.clone(), c.clone())).collect();
                out.entry(q as usize).or_default().push(terms);
            }
        }
    }
    Ok(out)
}

/// Builds the truncation and compares its cohomology with the small
/// complex for every degree below the truncation; also embeds the small
/// complex's representative cycles and checks they stay independent
/// modulo coboundaries.
pub fn quasi_iso_check(l: &LabeledLattice, max_degree: usize) -> Result<QuasiIsoReport, DcpError> {
    if max_degree == 0 {
        return Err(DcpError::Truncation(
            "a truncation of degree zero checks nothing".into(),
        ));
    }
    let tq = crate::truncated_quotient(l, max_degree)?;
    let truncated = tq.homology_dims()?;
    let classes = small_model_classes(l)?;

    let mut degrees = Vec::new();
    let mut prev_image: Option<Vec<SparseVec>> = None;
    for (q, &truncated_dim) in truncated.iter().enumerate() {
        let reps = classes.get(&q).map_or(&[][..], Vec::as_slice);
        let mut ech = Echelon::new();
        if let Some(rows) = &prev_image {
            for row in rows {
                ech.insert_row(row.clone());
            }
        }
        let mut independent = true;
        for rep in reps {
            let x = if q == 0 {
                crate::free_unit()
            } else {
                expand_critical_chain(l, rep)?
            };
            // homology classes must land on cocycles of the big algebra
            if !tq.is_zero_in_quotient(q + 1, &free_differential(&x))? {
                return Err(DcpError::Model(format!(
                    "a small-complex class fails to be a cocycle in degree {q}"
                )));
            }
            let coords = tq.reduce_at(q, &x)?;
            let row: SparseVec =
                coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if !ech.insert_row(row) {
                independent = false;
            }
        }
        degrees.push(DegreeReport {
            degree: q,
            truncated_dim,
            model_dim: reps.len(),
            inclusion_independent: independent,
        });
        let image = tq.differential_matrix(q)?;
        prev_image = Some((0..image.rows()).map(|i| image.row(i).clone()).collect());
    }

    let reach = 2 * l.dims().iter().copied().max().unwrap_or(0) as usize;
    let complete = max_degree >= reach;
    let uncovered: Vec<(usize, usize)> = classes
        .range(max_degree..)
        .map(|(&q, reps)| (q, reps.len()))
        .collect();
    Ok(QuasiIsoReport { degrees, complete, uncovered })
}
