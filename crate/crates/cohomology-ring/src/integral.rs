//! Experimental integral version: the model's boundary matrices have
//! integer (in fact unit) entries, so Smith normal form reports free ranks
//! and torsion. Only the rational ring is backed by the theory; this
//! readout is exploratory and clearly labeled as such at the interface.

use crate::ChainsError;
use cm_algebra::cm_complex;
use exact_linalg::{smith_normal_form, Int, QMatrix};
use lattice::LabeledLattice;
use num::{BigInt, One};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegralComponent {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

fn integer_rows(m: &QMatrix) -> Vec<Vec<Int>> {
    let mut out = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = vec![BigInt::from(0); m.cols()];
        for (&j, v) in m.row(i) {
            assert!(v.denom().is_one(), "model boundary matrices are integral");
            row[j] = v.numer().clone();
        }
        out.push(row);
    }
    out
}

/// Free rank and torsion of the model's homology over the integers, keyed
/// by cohomological degree. The free ranks always reproduce the rational
/// Betti numbers; torsion is the experimental part.
pub fn integral_betti_experimental(
    l: &LabeledLattice,
) -> Result<BTreeMap<i64, IntegralComponent>, ChainsError> {
    let mut out: BTreeMap<i64, IntegralComponent> = BTreeMap::new();
    out.insert(0, IntegralComponent { free_rank: 1, torsion: Vec::new() });
    for a in 0..l.len() {
        if a == l.bottom() {
            continue;
        }
        let cc = cm_complex(l, a)?;
        let degrees: Vec<i64> = cc.degrees().collect();
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        let mut torsions: BTreeMap<i64, Vec<Int>> = BTreeMap::new();
        for &p in &degrees {
            let m = cc.boundary_matrix(p).expect("every basis degree has a matrix");
            if m.rows() == 0 || m.cols() == 0 {
                ranks.insert(p, 0);
                torsions.insert(p, Vec::new());
                continue;
            }
            let factors = smith_normal_form(&integer_rows(m));
            torsions.insert(p, factors.iter().filter(|f| !f.is_one()).cloned().collect());
            ranks.insert(p, factors.len());
        }
        for &p in &degrees {
            let dim = cc.dim(p);
            let r_in = ranks.get(&(p + 1)).copied().unwrap_or(0);
            let r_out = ranks.get(&p).copied().unwrap_or(0);
            let free = dim - r_in - r_out;
            let torsion = torsions.get(&(p + 1)).cloned().unwrap_or_default();
            if free == 0 && torsion.is_empty() {
                continue;
            }
            let q = 2 * l.dims()[a] as i64 - p;
            let entry = out.entry(q).or_default();
            entry.free_rank += free;
            entry.torsion.extend(torsion);
        }
    }
    for comp in out.values_mut() {
        comp.torsion.sort();
    }
    Ok(out)
}
