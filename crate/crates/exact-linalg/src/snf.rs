//! Integer Smith normal form by classical row/column reduction with a
//! magnitude-minimizing pivot. Intended for desk-scale matrices only.

use crate::Int;
use num::{Signed, Zero};

/// Returns the nonzero invariant factors d1 | d2 | ... of an integer matrix,
/// each positive. The zero matrix (or an empty one) yields an empty list.
pub fn smith_normal_form(mat: &[Vec<Int>]) -> Vec<Int> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Int>> = mat.to_vec();
    for r in &m {
        assert_eq!(r.len(), cols, "ragged rows");
    }
    let mut invariants: Vec<Int> = Vec::new();
    let mut t = 0usize;
    while t < rows && t < cols {
        // move the smallest-magnitude nonzero entry of the submatrix to (t,t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if m[i][j].abs() < m[bi][bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }

        // clear column t below the pivot; a nonzero remainder becomes the
        // new, smaller pivot candidate on the next pass
        let mut dirty = false;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = &m[i][t] / &m[t][t];
            if !q.is_zero() {
                for j in t..cols {
                    let delta = &q * &m[t][j];
                    m[i][j] = &m[i][j] - delta;
                }
            }
            if !m[i][t].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = &m[t][j] / &m[t][t];
            if !q.is_zero() {
                for i in t..rows {
                    let delta = &q * &m[i][t];
                    m[i][j] = &m[i][j] - delta;
                }
            }
            if !m[t][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }

        // enforce divisibility of the remaining submatrix by the pivot
        let mut culprit = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    culprit = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = culprit {
            for j in t..cols {
                let add = m[i][j].clone();
                m[t][j] = &m[t][j] + add;
            }
            continue;
        }

        invariants.push(m[t][t].abs());
        t += 1;
    }
    invariants
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_mat(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
    }

    fn ints(vals: &[i64]) -> Vec<Int> {
        vals.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn identity_has_unit_invariants() {
        assert_eq!(smith_normal_form(&int_mat(&[&[1, 0], &[0, 1]])), ints(&[1, 1]));
    }

    #[test]
    fn diagonal_2_3_gives_1_6() {
        assert_eq!(smith_normal_form(&int_mat(&[&[2, 0], &[0, 3]])), ints(&[1, 6]));
    }

    #[test]
    fn zero_matrix_has_no_invariants() {
        assert_eq!(smith_normal_form(&int_mat(&[&[0, 0], &[0, 0]])), ints(&[]));
        assert_eq!(smith_normal_form(&[]), ints(&[]));
    }

    #[test]
    fn rectangular_rank_deficient() {
        // rows are dependent: rank 1, content 3
        assert_eq!(smith_normal_form(&int_mat(&[&[3, 6, 9], &[6, 12, 18]])), ints(&[3]));
    }

    #[test]
    fn divisibility_chain_on_a_dense_example() {
        let inv = smith_normal_form(&int_mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(inv, ints(&[2, 6, 12]));
        for w in inv.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "invariant factors must divide");
        }
    }
}
