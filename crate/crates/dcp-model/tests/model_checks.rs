use std::collections::BTreeMap;

use cm_algebra::{cm_differential, cm_product, CriticalMonomial};
use dcp_model::{
    basic_basis, enumerate_basic, expand_critical_chain, free_add_scaled, free_differential,
    free_mul, free_single, quasi_iso_check, sigma, sigma_tau_expand, tau, truncated_quotient,
    verify_homotopy, BasicBasis, BasicMonomial, DcpError, FreeMonomial, TruncatedQuotient,
};
use exact_linalg::{rat_int, Echelon, Rat};
use lattice::builtins::builtin_by_name;
use lattice::LabeledLattice;

fn chain_lattice(dims: &[u32]) -> LabeledLattice {
    let pairs: Vec<(usize, usize)> = (1..dims.len()).map(|i| (i - 1, i)).collect();
    LabeledLattice::from_dims_and_pairs(dims.to_vec(), &pairs).expect("a chain is a lattice")
}

fn two_lines() -> LabeledLattice {
    LabeledLattice::from_dims_and_pairs(vec![0, 1, 1, 2], &[(0, 1), (0, 2), (1, 3), (2, 3)])
        .expect("two crossing lines form a lattice")
}

/// Small lattices paired with a truncation degree high enough to see the
/// whole algebra: basic monomials stop at twice the top dimension minus one.
fn certified_sweep() -> Vec<(String, LabeledLattice, usize)> {
    let mut out = Vec::new();
    for name in ["oneline", "boolean:2", "boolean:3", "braid:3"] {
        let l = builtin_by_name(name).expect("builtin lattice");
        let d = 2 * *l.dims().iter().max().unwrap() as usize;
        out.push((name.to_string(), l, d));
    }
    out.push(("chain-1-2".to_string(), chain_lattice(&[0, 1, 2]), 4));
    out.push(("chain-1-3".to_string(), chain_lattice(&[0, 1, 3]), 6));
    out.push(("two-lines".to_string(), two_lines(), 4));
    out
}

fn quotient_and_bases(
    l: &LabeledLattice,
    d: usize,
) -> (TruncatedQuotient, Vec<BasicBasis>) {
    let tq = truncated_quotient(l, d).expect("quotient construction");
    let bases = (0..=d)
        .map(|r| basic_basis(l, &tq, r).expect("basic monomials span the slice"))
        .collect();
    (tq, bases)
}

fn all_critical(l: &LabeledLattice, up_to: usize) -> Vec<BasicMonomial> {
    (1..=up_to)
        .flat_map(|r| enumerate_basic(l, r))
        .filter(|b| b.is_critical(l))
        .collect()
}

fn expand_small_element(
    l: &LabeledLattice,
    x: &cm_algebra::CMElement,
) -> dcp_model::FreeElement {
    let terms: Vec<(Vec<usize>, Rat)> =
        x.terms.iter().map(|(t, c)| (t.flag.clone(), c.clone())).collect();
    expand_critical_chain(l, &terms).expect("critical flags expand")
}

#[test]
fn degree_one_slices_count_the_nonbottom_elements() {
    let mut cases = certified_sweep();
    cases.push((
        "braid:4".to_string(),
        builtin_by_name("braid:4").expect("builtin lattice"),
        2,
    ));
    for (name, l, _) in cases {
        let tq = truncated_quotient(&l, 2).expect("quotient construction");
        assert_eq!(
            tq.quotient_dim(1),
            l.len() - 1,
            "no relation reaches degree one, so every exterior letter survives on {name}"
        );
    }
}

#[test]
fn chain_lattice_degree_two_slice_matches_the_two_element_basis() {
    let l = chain_lattice(&[0, 1, 2]);
    let tq = truncated_quotient(&l, 2).expect("quotient construction");
    assert_eq!(tq.quotient_dim(2), 2, "one relation among three monomials");

    // the predicted basis: tau_A tau_V and sigma_V, independent in the slice
    let tt = free_mul(&tau(&l, 1), &tau(&l, 2));
    let sv = sigma(&l, 2);
    let mut ech = Echelon::new();
    for x in [&tt, &sv] {
        let coords = tq.reduce_at(2, x).expect("reduction in the slice");
        let row: exact_linalg::SparseVec = coords
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !num::Zero::is_zero(v))
            .collect();
        assert!(ech.insert_row(row), "predicted basis vector is independent");
    }
}

#[test]
fn sigma_tau_expansions_match_hand_computations() {
    let l = chain_lattice(&[0, 1, 2]);
    let sigma_top = BasicMonomial::new(&l, vec![2], vec![false], vec![1])
        .expect("sigma at the top is basic when the top dimension exceeds one");
    assert_eq!(
        sigma_tau_expand(&l, &sigma_top),
        free_single(FreeMonomial::letter_c(2)),
        "nothing lies above the top, so its sigma is one polynomial letter"
    );

    let tau_coatom = BasicMonomial::new(&l, vec![1], vec![true], vec![0])
        .expect("a bare tau letter is basic");
    let expansion = sigma_tau_expand(&l, &tau_coatom);
    assert_eq!(expansion.len(), 2, "a coatom sees itself and the top");
    assert!(expansion.contains_key(&FreeMonomial::letter_e(1)));
    assert!(expansion.contains_key(&FreeMonomial::letter_e(2)));
}

#[test]
fn tau_shuffle_relation_dies_in_the_quotient() {
    for name in ["braid:3", "boolean:2"] {
        let l = builtin_by_name(name).expect("builtin lattice");
        let tq = truncated_quotient(&l, 2).expect("quotient construction");
        let atoms = l.atoms();
        let (a, b) = (atoms[0], atoms[1]);
        let j = l.join(a, b);
        let mut x = free_mul(&tau(&l, a), &tau(&l, b));
        free_add_scaled(&mut x, &free_mul(&tau(&l, a), &tau(&l, j)), &-rat_int(1));
        free_add_scaled(&mut x, &free_mul(&tau(&l, b), &tau(&l, j)), &rat_int(1));
        assert!(
            tq.is_zero_in_quotient(2, &x).expect("degree-two reduction"),
            "the tau product of two atoms rewrites through their join on {name}"
        );
    }
}

#[test]
fn basic_monomial_counts_match_slice_dimensions_everywhere() {
    for (name, l, d) in certified_sweep() {
        let (tq, bases) = quotient_and_bases(&l, d);
        for (r, basis) in bases.iter().enumerate() {
            assert_eq!(
                basis.monomials.len(),
                tq.quotient_dim(r),
                "basic monomial count disagrees with the degree-{r} slice of {name}"
            );
        }
        // nothing basic lives past twice the top dimension minus one
        assert_eq!(
            tq.quotient_dim(d),
            0,
            "the slice at twice the top dimension must vanish on {name}"
        );
    }
}

#[test]
fn weights_never_drop_under_expansion() {
    for (name, l, d) in certified_sweep() {
        let n = *l.dims().iter().max().unwrap() as u64;
        let tq = truncated_quotient(&l, d).expect("quotient construction");
        for r in 0..=d {
            for m in tq.quotient_basis(r) {
                assert!(
                    m.weight(&l) <= n * r as u64,
                    "weight of {m} exceeds the degree bound on {name}"
                );
            }
        }
        for r in 1..=d {
            for b in enumerate_basic(&l, r) {
                let mut floor: u64 =
                    b.t_set().iter().map(|&a| l.dims()[a] as u64).sum();
                floor += b
                    .s_exponents()
                    .iter()
                    .map(|&(a, m)| 2 * m as u64 * l.dims()[a] as u64)
                    .sum::<u64>();
                for m in sigma_tau_expand(&l, &b).keys() {
                    assert!(
                        m.weight(&l) >= floor,
                        "expansion of {b} reached below its own weight on {name}"
                    );
                }
            }
        }
    }
}

#[test]
fn homotopy_moves_the_top_power_to_its_exterior_partner() {
    let l = chain_lattice(&[0, 1, 2]);
    let b = BasicMonomial::new(&l, vec![2], vec![false], vec![1]).expect("basic");
    let moved = dcp_model::homotopy_h(&l, &b).expect("the power is not critical");
    let tau_top = BasicMonomial::new(&l, vec![2], vec![true], vec![0]).expect("basic");
    assert_eq!(moved, vec![(rat_int(1), tau_top.clone())], "h sends the power to its tau");

    // the two sides of the identity: d(h b) recovers b, h(d b) is zero
    let dhb = free_differential(&sigma_tau_expand(&l, &tau_top));
    assert_eq!(dhb, sigma_tau_expand(&l, &b), "d undoes h on this generator");
    let db = free_differential(&sigma_tau_expand(&l, &b));
    assert!(db.is_empty(), "the polynomial letter is closed");
}

#[test]
fn homotopy_rejects_critical_monomials() {
    let l = builtin_by_name("oneline").expect("builtin lattice");
    let b = BasicMonomial::from_critical_flag(&l, &[1]).expect("the atom flag is critical");
    match dcp_model::homotopy_h(&l, &b) {
        Err(DcpError::CriticalInput(_)) => {}
        other => panic!("critical input must be refused, got {other:?}"),
    }
}

#[test]
fn homotopy_identity_holds_across_the_sweep() {
    for (name, l, d) in certified_sweep() {
        let report = verify_homotopy(&l, d).expect("identity verified");
        let noncritical: usize = (1..d)
            .map(|r| enumerate_basic(&l, r).iter().filter(|b| !b.is_critical(&l)).count())
            .sum();
        assert_eq!(
            report.checked, noncritical,
            "every non-critical basic monomial below the truncation is checked on {name}"
        );
    }
}

#[test]
fn small_model_inclusion_is_a_quasi_isomorphism_on_known_cases() {
    let oracles: Vec<(&str, LabeledLattice, usize, Vec<usize>)> = vec![
        ("oneline", builtin_by_name("oneline").unwrap(), 2, vec![1, 1]),
        ("two-lines", two_lines(), 4, vec![1, 2, 1, 0]),
        ("braid:3", builtin_by_name("braid:3").unwrap(), 4, vec![1, 3, 2, 0]),
    ];
    for (name, l, d, dims) in oracles {
        let report = quasi_iso_check(&l, d).expect("comparison runs");
        let truncated: Vec<usize> = report.degrees.iter().map(|r| r.truncated_dim).collect();
        let model: Vec<usize> = report.degrees.iter().map(|r| r.model_dim).collect();
        assert_eq!(truncated, dims, "truncated homology of {name}");
        assert_eq!(model, dims, "small complex homology of {name}");
        assert!(report.all_degrees_match(), "inclusion is a quasi-isomorphism on {name}");
        assert!(report.complete, "truncation covers the whole algebra on {name}");
        assert!(report.uncovered.is_empty(), "nothing lives past the truncation on {name}");
    }
    for (name, l, d) in certified_sweep() {
        let report = quasi_iso_check(&l, d).expect("comparison runs");
        assert!(report.all_degrees_match(), "inclusion is a quasi-isomorphism on {name}");
    }
}

#[test]
fn differential_transport_matches_the_small_complex() {
    for (name, l, d) in certified_sweep() {
        let tq = truncated_quotient(&l, d).expect("quotient construction");
        for b in all_critical(&l, d.saturating_sub(1)) {
            let t = CriticalMonomial::new(&l, b.flag().to_vec());
            let mut lhs = free_differential(&sigma_tau_expand(&l, &b));
            let rhs = expand_small_element(&l, &cm_differential(&t));
            free_add_scaled(&mut lhs, &rhs, &-rat_int(1));
            assert!(
                tq.is_zero_in_quotient(b.degree() + 1, &lhs)
                    .expect("reduction in the slice"),
                "differential of {b} disagrees with the small complex on {name}"
            );
        }
    }
}

#[test]
fn shuffle_product_transport_matches_the_small_complex() {
    for (name, l, d) in certified_sweep() {
        let tq = truncated_quotient(&l, d).expect("quotient construction");
        let criticals = all_critical(&l, d);
        for b1 in &criticals {
            for b2 in &criticals {
                if b1.degree() + b2.degree() > d {
                    continue;
                }
                let t1 = CriticalMonomial::new(&l, b1.flag().to_vec());
                let t2 = CriticalMonomial::new(&l, b2.flag().to_vec());
                let mut lhs = free_mul(
                    &sigma_tau_expand(&l, b1),
                    &sigma_tau_expand(&l, b2),
                );
                let rhs = expand_small_element(&l, &cm_product(&l, &t1, &t2));
                free_add_scaled(&mut lhs, &rhs, &-rat_int(1));
                assert!(
                    tq.is_zero_in_quotient(b1.degree() + b2.degree(), &lhs)
                        .expect("reduction in the slice"),
                    "product {b1} * {b2} disagrees with the shuffle rule on {name}"
                );
            }
        }
    }
}

#[test]
fn differential_keeps_critical_and_noncritical_spans_apart() {
    for (name, l, d) in certified_sweep() {
        let (tq, bases) = quotient_and_bases(&l, d);
        for r in 1..d {
            for b in enumerate_basic(&l, r) {
                let db = free_differential(&sigma_tau_expand(&l, &b));
                let coords = tq.reduce_at(r + 1, &db).expect("reduction in the slice");
                let in_basis = bases[r + 1].decompose(&coords).expect("decomposition");
                let from_critical = b.is_critical(&l);
                for (coef, target) in in_basis.iter().zip(&bases[r + 1].monomials) {
                    if num::Zero::is_zero(coef) {
                        continue;
                    }
                    assert_eq!(
                        target.is_critical(&l),
                        from_critical,
                        "d carried {b} across the critical split on {name}"
                    );
                }
            }
        }
    }
}

#[test]
fn oversized_slices_are_refused_not_degraded() {
    let l = builtin_by_name("braid:4").expect("builtin lattice");
    match dcp_model::truncated_quotient_with_cap(&l, 6, 100) {
        Err(DcpError::TooLarge(_)) => {}
        other => panic!("a tiny cap must trip the overflow error, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn missing_boundary_degrees_are_reported() {
    let l = chain_lattice(&[0, 1, 2]);
    let tq = truncated_quotient(&l, 2).expect("quotient construction");
    match tq.differential_matrix(2) {
        Err(DcpError::Truncation(_)) => {}
        other => panic!("the top slice has no outgoing matrix, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn quotient_dimensions_are_the_poincare_series_of_the_model() {
    // chain with dims 1 and 2: closed form per degree from the basis list
    let l = chain_lattice(&[0, 1, 2]);
    let tq = truncated_quotient(&l, 4).expect("quotient construction");
    let dims: Vec<usize> = (0..=4).map(|r| tq.quotient_dim(r)).collect();
    // degree 0: 1; degree 1: tau_A, tau_V; degree 2: tau_A tau_V, sigma_V;
    // degree 3: tau_V sigma_V only, since the gap from A to V admits no
    // exponent; degree 4: nothing
    assert_eq!(dims, vec![1, 2, 2, 1, 0], "hand count of basic monomials");
    let mut by_degree = BTreeMap::new();
    for r in 0..=4 {
        by_degree.insert(r, enumerate_basic(&l, r).len());
    }
    for r in 0..=4 {
        assert_eq!(by_degree[&r], dims[r], "enumeration agrees at degree {r}");
    }
}
