//! Incremental echelon form with coordinate tracking.
//!
//! Rows are inserted one at a time and reduced against the rows already
//! stored. Each stored row carries a sparse tag vector; reduction of a query
//! row accumulates the tags of the rows used, so that a caller who tags the
//! i-th interesting row with the unit vector e_i can later read off the
//! coordinates of any row of the span in terms of those interesting rows.
//! Rows tagged with the empty vector count as zero for coordinate purposes.

use crate::{add_scaled, SparseVec};
use num::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Default)]
pub struct Echelon {
    // pivot column -> (row with leading coefficient 1 at pivot, tag)
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored rows. Returns (remainder, tag) with
    /// row = remainder + combination of stored rows whose tags sum to `tag`;
    /// the remainder is zero exactly when `row` lies in the span.
    pub fn reduce(&self, row: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = row.clone();
        let mut tag = SparseVec::new();
        loop {
            let (lead, coef) = match rem.first_key_value() {
                Some((&l, c)) => (l, c.clone()),
                None => break,
            };
            let Some((stored, stored_tag)) = self.rows.get(&lead) else { break };
            add_scaled(&mut rem, stored, &(-coef.clone()));
            add_scaled(&mut tag, stored_tag, &coef);
            debug_assert!(!rem.contains_key(&lead));
        }
        (rem, tag)
    }

    /// Like `reduce`, but cancels every pivot column, not only leading ones,
    /// so the remainder is supported entirely off the pivot set. Costs a
    /// scan past non-pivot columns; `reduce` stops at the first one.
    pub fn reduce_full(&self, row: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = row.clone();
        let mut tag = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let hit = rem
                .range(cursor..)
                .find(|(j, _)| self.rows.contains_key(j))
                .map(|(&j, c)| (j, c.clone()));
            let Some((j, coef)) = hit else { break };
            let (stored, stored_tag) = &self.rows[&j];
            add_scaled(&mut rem, stored, &(-coef.clone()));
            add_scaled(&mut tag, stored_tag, &coef);
            // the stored row leads at j, so cancellation only touches
            // columns at or past j
            cursor = j + 1;
        }
        (rem, tag)
    }

    /// Inserts `row` with the given tag. Returns true if the row was
    /// independent of the stored rows and was added (normalized to leading
    /// coefficient 1), false if it reduced to zero.
    pub fn insert(&mut self, row: SparseVec, tag: SparseVec) -> bool {
        let (rem, carried) = self.reduce(&row);
        let Some((&lead, coef)) = rem.first_key_value() else { return false };
        let inv = coef.clone().recip();
        // rem = row - (rows with tag sum `carried`), so the stored row's tag
        // is inv * (tag - carried)
        let mut net_tag = tag;
        add_scaled(&mut net_tag, &carried, &exact_neg_one());
        let rem_scaled: SparseVec = rem
            .iter()
            .map(|(&j, v)| (j, v * &inv))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let tag_scaled: SparseVec = net_tag
            .iter()
            .map(|(&j, v)| (j, v * &inv))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self.rows.insert(lead, (rem_scaled, tag_scaled));
        true
    }

    /// Inserts an untagged row (tag treated as zero).
    pub fn insert_row(&mut self, row: SparseVec) -> bool {
        self.insert(row, SparseVec::new())
    }

    /// True when `row` is in the span of the stored rows.
    pub fn contains(&self, row: &SparseVec) -> bool {
        self.reduce(row).0.is_empty()
    }

    /// The stored rows in pivot order (normalized, forward-reduced).
    pub fn basis_rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values().map(|(r, _)| r)
    }

    /// Pivot columns of the stored rows, in increasing order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}

fn exact_neg_one() -> crate::Rat {
    -crate::rat_int(1)
}
