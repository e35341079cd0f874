//! Structural invariants tying the atomic complex, the flag complex, and
//! the shuffle product together on a sweep of small lattices.

use chains::{
    atomic_complex, chain_shuffle_product, flag_boundary, flag_complex, Flag, PosetView, QChain,
};
use exact_linalg::rat_int;
use lattice::builtins::{boolean_lattice, builtin_by_name, random_labeled_lattice};
use lattice::{kequal_lattice, LabeledLattice};

fn small_lattices() -> Vec<(String, LabeledLattice)> {
    let mut out: Vec<(String, LabeledLattice)> = vec![
        ("boolean:2".into(), boolean_lattice(2)),
        ("boolean:3".into(), boolean_lattice(3)),
        ("boolean:4".into(), boolean_lattice(4)),
        ("braid:3".into(), kequal_lattice(3, 2, 0).unwrap()),
        ("braid:4".into(), kequal_lattice(4, 2, 0).unwrap()),
        ("kequal:4:3".into(), kequal_lattice(4, 3, 0).unwrap()),
        ("kequal:5:3".into(), kequal_lattice(5, 3, 0).unwrap()),
        ("oneline".into(), builtin_by_name("oneline").unwrap()),
    ];
    let two_atoms = LabeledLattice::from_dims_and_pairs(
        vec![0, 1, 1, 2],
        &[(0, 1), (0, 2), (1, 3), (2, 3)],
    )
    .expect("two independent lines");
    out.push(("two-lines".into(), two_atoms));
    for seed in 0..12u64 {
        out.push((format!("random:{seed}"), random_labeled_lattice(seed)));
    }
    out
}

#[test]
fn atomic_and_flag_complexes_share_all_betti_numbers() {
    let mut checked = 0;
    for (name, l) in small_lattices() {
        let atomic = match atomic_complex(&l) {
            Ok(cc) => cc,
            Err(_) => continue,
        };
        let flags = flag_complex(&PosetView::open_interval(&l, l.bottom(), l.top()))
            .expect("open interval flag complex");
        let lo = atomic.degrees().min().unwrap().min(flags.degrees().min().unwrap());
        let hi = atomic.degrees().max().unwrap().max(flags.degrees().max().unwrap());
        for p in lo..=hi {
            assert_eq!(
                atomic.homology(p).betti,
                flags.homology(p).betti,
                "betti mismatch at degree {p} for {name}"
            );
        }
        checked += 1;
    }
    assert!(checked >= 10, "expected most sweep lattices to be atomic, got {checked}");
}

#[test]
fn partition_lattice_of_four_is_a_wedge_of_six_circles() {
    let l = kequal_lattice(4, 2, 0).expect("partition lattice of 4");
    let cc = atomic_complex(&l).expect("partition lattices are atomic");
    assert_eq!(cc.homology(1).betti, 6);
    assert_eq!(cc.homology(0).betti, 0);
}

fn flags_below(l: &LabeledLattice, a: usize) -> Vec<Flag> {
    let cc = flag_complex(&PosetView::open_interval(l, l.bottom(), a)).expect("interval flags");
    let mut out = Vec::new();
    for p in cc.degrees() {
        out.extend(cc.basis(p).iter().cloned());
    }
    out
}

#[test]
fn shuffle_product_satisfies_leibniz() {
    for (name, l) in small_lattices() {
        let per_element: Vec<Vec<Flag>> =
            (0..l.len()).map(|a| flags_below(&l, a)).collect();
        for a in 0..l.len() {
            for b in 0..l.len() {
                if a == l.bottom() || b == l.bottom() {
                    continue;
                }
                for fa in &per_element[a] {
                    for fb in &per_element[b] {
                        let xa = QChain::single(fa.len() as i64 - 1, fa.clone());
                        let xb = QChain::single(fb.len() as i64 - 1, fb.clone());
                        let lhs = flag_boundary(&chain_shuffle_product(&l, &xa, a, &xb, b));
                        let mut rhs =
                            chain_shuffle_product(&l, &flag_boundary(&xa), a, &xb, b);
                        let sign = rat_int(if (fa.len() + 1) % 2 == 0 { 1 } else { -1 });
                        rhs.add_scaled(
                            &chain_shuffle_product(&l, &xa, a, &flag_boundary(&xb), b),
                            &sign,
                        );
                        assert_eq!(
                            lhs, rhs,
                            "Leibniz fails on {name} for a={a} b={b} fa={fa:?} fb={fb:?}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn shuffle_product_graded_anticommutes() {
    for (name, l) in small_lattices() {
        let per_element: Vec<Vec<Flag>> =
            (0..l.len()).map(|a| flags_below(&l, a)).collect();
        for a in 0..l.len() {
            for b in 0..l.len() {
                if a == l.bottom() || b == l.bottom() {
                    continue;
                }
                for fa in &per_element[a] {
                    for fb in &per_element[b] {
                        let xa = QChain::single(fa.len() as i64 - 1, fa.clone());
                        let xb = QChain::single(fb.len() as i64 - 1, fb.clone());
                        let ab = chain_shuffle_product(&l, &xa, a, &xb, b);
                        let ba = chain_shuffle_product(&l, &xb, b, &xa, a);
                        let sign = (fa.len() + 1) * (fb.len() + 1);
                        let expect = ba.scaled(&rat_int(if sign % 2 == 0 { 1 } else { -1 }));
                        assert_eq!(
                            ab, expect,
                            "anticommutativity fails on {name} for a={a} b={b}"
                        );
                    }
                }
            }
        }
    }
}
