//! The two signed combinatorial maps on flag chains: rewriting an atom
//! simplex as a chain of flags of partial joins, and the shuffle product
//! landing in the flag complex under the join of the two tops.

use crate::flags::{AtomSimplex, Flag};
use crate::QChain;
use exact_linalg::rat_int;
use itertools::Itertools;
use lattice::LabeledLattice;

fn parity_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sends an independent-or-not atom subset to the alternating sum, over all
/// orderings, of the flags of partial joins. Orderings where some partial
/// join repeats contribute nothing.
pub fn atoms_to_flags(l: &LabeledLattice, sigma: &AtomSimplex) -> QChain<Flag> {
    let p = sigma.len();
    assert!(
        sigma.windows(2).all(|w| w[0] < w[1]),
        "atom simplex must be strictly increasing"
    );
    for &a in sigma {
        assert!(l.atoms().contains(&a), "element {a} is not an atom");
    }
    let mut out = QChain::zero(p as i64 - 1);
    'perms: for perm in (0..p).permutations(p) {
        let mut flag: Flag = Vec::with_capacity(p);
        let mut join = l.bottom();
        for &i in &perm {
            let next = l.join(join, sigma[i]);
            if next == join {
                continue 'perms;
            }
            join = next;
            flag.push(join);
        }
        out.add_term(flag, rat_int(parity_sign(&perm)));
    }
    out
}

/// Shuffle product of one flag below a with one flag below b. Each flag is
/// extended by its top, the two words are shuffled with the sign counting
/// crossings, every shuffle is replaced by its flag of partial joins, and
/// the final entry (always the join of a and b) is dropped. Zero whenever
/// the join of a and b is dimension-degenerate.
pub fn shuffle_flag_product(
    l: &LabeledLattice,
    fa: &Flag,
    a: usize,
    fb: &Flag,
    b: usize,
) -> QChain<Flag> {
    for &x in fa {
        assert!(l.lt(x, a), "flag entry {x} must lie strictly below {a}");
    }
    for &x in fb {
        assert!(l.lt(x, b), "flag entry {x} must lie strictly below {b}");
    }
    let out_degree = (fa.len() + fb.len()) as i64;
    let mut out = QChain::zero(out_degree);
    let ab = l.join(a, b);
    if l.dims()[ab] != l.dims()[a] + l.dims()[b] {
        return out;
    }
    let mut wa: Vec<usize> = fa.clone();
    wa.push(a);
    let mut wb: Vec<usize> = fb.clone();
    wb.push(b);
    let (p, q) = (wa.len(), wb.len());
    'shuffles: for apos in (0..p + q).combinations(p) {
        let mut word = vec![0usize; p + q];
        let mut is_a = vec![false; p + q];
        for (i, &s) in apos.iter().enumerate() {
            word[s] = wa[i];
            is_a[s] = true;
        }
        let mut bi = 0;
        let mut crossings = 0usize;
        for s in 0..p + q {
            if is_a[s] {
                // every b already placed to the left crossed this a
                crossings += bi;
            } else {
                word[s] = wb[bi];
                bi += 1;
            }
        }
        let mut flag: Flag = Vec::with_capacity(p + q);
        let mut join = l.bottom();
        for &x in &word {
            let next = l.join(join, x);
            if next == join {
                continue 'shuffles;
            }
            join = next;
            flag.push(join);
        }
        debug_assert_eq!(*flag.last().expect("nonempty"), ab);
        flag.pop();
        out.add_term(flag, rat_int(if crossings.is_multiple_of(2) { 1 } else { -1 }));
    }
    out
}

/// Bilinear extension of the shuffle product to flag chains.
pub fn chain_shuffle_product(
    l: &LabeledLattice,
    xa: &QChain<Flag>,
    a: usize,
    xb: &QChain<Flag>,
    b: usize,
) -> QChain<Flag> {
    let mut out = QChain::zero(xa.degree + xb.degree + 2);
    for (fa, ca) in &xa.coeffs {
        for (fb, cb) in &xb.coeffs {
            let term = shuffle_flag_product(l, fa, a, fb, b);
            out.add_scaled(&term, &(ca * cb));
        }
    }
    out
}
