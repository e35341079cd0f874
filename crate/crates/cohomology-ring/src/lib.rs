//! The rational cohomology of the arrangement complement as a graded ring.
//! Betti numbers come out of two independent routes: summed interval
//! homology of the lattice, and homology of the critical monomial model.
//! Structure constants are computed by multiplying chosen representative
//! cycles in the model and reducing into the homology basis of the target
//! summand.

use chains::{flag_complex, ChainComplex, ChainsError, Homology, PosetView, QChain};
use cm_algebra::{cm_complex, cm_element_product, CMElement, CriticalMonomial};
use exact_linalg::SparseVec;
use lattice::LabeledLattice;
use num::Zero;
use std::collections::BTreeMap;

pub mod integral;
pub use integral::{integral_betti_experimental, IntegralComponent};

/// One homogeneous piece of the ring: the classes over a fixed lattice
/// element in a fixed cohomological degree.
#[derive(Debug, Clone)]
pub struct Component {
    pub element: usize,
    pub q: i64,
    pub dim: usize,
    /// representative cycles, one per basis class, in the summand complex
    pub reps: Vec<QChain<CriticalMonomial>>,
    /// index of the first of these classes in the global basis
    pub global_start: usize,
}

/// The assembled ring. Basis classes are numbered globally in (element, q)
/// order; the unit in degree zero is implicit and not part of the count.
#[derive(Debug)]
pub struct GradedRing {
    pub components: Vec<Component>,
    /// (i, j) → coordinates of class_i · class_j over the global basis;
    /// absent pairs multiply to zero
    pub structure_constants: BTreeMap<(usize, usize), SparseVec>,
    /// unreduced Poincaré polynomial coefficients, constant term 1
    pub poincare: Vec<usize>,
    pub total_dim: usize,
}

impl GradedRing {
    pub fn component(&self, element: usize, q: i64) -> Option<&Component> {
        self.components.iter().find(|c| c.element == element && c.q == q)
    }

    /// The component holding the given global basis index.
    pub fn component_of_class(&self, idx: usize) -> &Component {
        self.components
            .iter()
            .rfind(|c| c.global_start <= idx)
            .expect("global index below every component start")
    }

    pub fn product(&self, i: usize, j: usize) -> SparseVec {
        self.structure_constants.get(&(i, j)).cloned().unwrap_or_default()
    }
}

/// Betti numbers via summed reduced homology of the open intervals (0, A):
/// the piece under A in degree q is H-tilde in simplicial degree
/// 2 dim A - q - 2. Degree zero is the ground field.
pub fn betti_gm(l: &LabeledLattice) -> Result<BTreeMap<i64, usize>, ChainsError> {
    let mut out = BTreeMap::new();
    out.insert(0, 1);
    for a in 0..l.len() {
        if a == l.bottom() {
            continue;
        }
        let cc = flag_complex(&PosetView::open_interval(l, l.bottom(), a))?;
        for p in cc.degrees().collect::<Vec<_>>() {
            let b = cc.homology(p).betti;
            if b > 0 {
                let q = 2 * l.dims()[a] as i64 - p - 2;
                *out.entry(q).or_insert(0) += b;
            }
        }
    }
    Ok(out)
}

/// Betti numbers via the critical monomial model: homology of each summand
/// complex, read in cohomological degree q = 2 dim(top) - flag length.
pub fn betti_cm(l: &LabeledLattice) -> Result<BTreeMap<i64, usize>, ChainsError> {
    let mut out = BTreeMap::new();
    out.insert(0, 1);
    for a in 0..l.len() {
        if a == l.bottom() {
            continue;
        }
        let cc = cm_complex(l, a)?;
        for p in cc.degrees().collect::<Vec<_>>() {
            let b = cc.homology(p).betti;
            if b > 0 {
                let q = 2 * l.dims()[a] as i64 - p;
                *out.entry(q).or_insert(0) += b;
            }
        }
    }
    Ok(out)
}

struct SummandHomology {
    by_length: BTreeMap<i64, Homology<CriticalMonomial>>,
}

/// Assembles the full graded ring: homology bases for every summand and
/// degree, then one structure-constant vector per pair of basis classes.
pub fn ring_structure(l: &LabeledLattice) -> Result<GradedRing, ChainsError> {
    let mut complexes: BTreeMap<usize, ChainComplex<CriticalMonomial>> = BTreeMap::new();
    for a in 0..l.len() {
        if a == l.bottom() {
            continue;
        }
        complexes.insert(a, cm_complex(l, a)?);
    }
    let mut homologies: BTreeMap<usize, SummandHomology> = BTreeMap::new();
    let mut components: Vec<Component> = Vec::new();
    let mut global = 0usize;
    for (&a, cc) in &complexes {
        let mut by_length = BTreeMap::new();
        for p in cc.degrees().collect::<Vec<_>>() {
            let h = cc.homology(p);
            if h.betti > 0 {
                let q = 2 * l.dims()[a] as i64 - p;
                components.push(Component {
                    element: a,
                    q,
                    dim: h.betti,
                    reps: h.reps.clone(),
                    global_start: global,
                });
                global += h.betti;
            }
            by_length.insert(p, h);
        }
        homologies.insert(a, SummandHomology { by_length });
    }
    components.sort_by_key(|c| (c.element, c.q));
    // re-number after the sort so global indices follow (element, q) order
    let mut global = 0usize;
    for c in &mut components {
        c.global_start = global;
        global += c.dim;
    }
    let total_dim = global;

    let mut structure_constants = BTreeMap::new();
    for ci in &components {
        for cj in &components {
            let target = l.join(ci.element, cj.element);
            if l.dims()[target] != l.dims()[ci.element] + l.dims()[cj.element] {
                continue;
            }
            let tq = ci.q + cj.q;
            let tp = 2 * l.dims()[target] as i64 - tq;
            let Some(th) = homologies.get(&target).and_then(|s| s.by_length.get(&tp)) else {
                continue;
            };
            for (ii, ri) in ci.reps.iter().enumerate() {
                let xi = chain_to_element(ri);
                for (jj, rj) in cj.reps.iter().enumerate() {
                    let xj = chain_to_element(rj);
                    let prod = cm_element_product(l, &xi, &xj);
                    let coords = th.reduce(&element_to_chain(&prod, tp))?;
                    let mut vec = SparseVec::new();
                    for (k, v) in coords.into_iter().enumerate() {
                        if !v.is_zero() {
                            vec.insert(component_start(&components, target, tq) + k, v);
                        }
                    }
                    if !vec.is_empty() {
                        structure_constants
                            .insert((ci.global_start + ii, cj.global_start + jj), vec);
                    }
                }
            }
        }
    }

    let betti = betti_from_components(&components);
    let top_q = betti.keys().max().copied().unwrap_or(0);
    let mut poincare = vec![0usize; top_q as usize + 1];
    poincare[0] = 1;
    for (q, b) in &betti {
        if *q > 0 {
            poincare[*q as usize] = *b;
        }
    }
    Ok(GradedRing { components, structure_constants, poincare, total_dim })
}

fn betti_from_components(components: &[Component]) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for c in components {
        *out.entry(c.q).or_insert(0) += c.dim;
    }
    out
}

fn component_start(components: &[Component], element: usize, q: i64) -> usize {
    components
        .iter()
        .find(|c| c.element == element && c.q == q)
        .map(|c| c.global_start)
        .expect("reduction target component exists")
}

fn chain_to_element(c: &QChain<CriticalMonomial>) -> CMElement {
    let mut x = CMElement::zero();
    for (t, v) in &c.coeffs {
        x.add_term(t.clone(), v.clone());
    }
    x
}

fn element_to_chain(x: &CMElement, degree: i64) -> QChain<CriticalMonomial> {
    let mut c = QChain::zero(degree);
    for (t, v) in &x.terms {
        c.add_term(t.clone(), v.clone());
    }
    c
}

/// Coefficient list of the Poincaré polynomial, degree by degree.
pub fn poincare_polynomial(l: &LabeledLattice) -> Result<Vec<usize>, ChainsError> {
    let betti = betti_cm(l)?;
    let top_q = betti.keys().max().copied().unwrap_or(0).max(0);
    let mut out = vec![0usize; top_q as usize + 1];
    for (q, b) in betti {
        out[q as usize] = b;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::rat_int;
    use lattice::builtins::builtin_by_name;
    use lattice::kequal_lattice;

    // two crossing lines in the plane; the complement deforms onto a torus
    fn two_lines() -> LabeledLattice {
        LabeledLattice::from_dims_and_pairs(vec![0, 1, 1, 2], &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .expect("two crossing lines form a lattice")
    }

    #[test]
    fn poincare_polynomials_match_known_complements() {
        let cases: Vec<(&str, Vec<usize>)> = vec![
            ("oneline", vec![1, 1]),
            ("boolean:3", vec![1, 3, 3, 1]),
            ("braid:3", vec![1, 3, 2]),
            ("braid:4", vec![1, 6, 11, 6]),
        ];
        for (name, want) in cases {
            let l = builtin_by_name(name).expect("builtin exists");
            let got = poincare_polynomial(&l).expect("poincare");
            assert_eq!(got, want, "poincare coefficients for {name}");
        }
    }

    #[test]
    fn torus_ring_is_an_exterior_algebra_on_two_degree_one_classes() {
        let l = two_lines();
        let ring = ring_structure(&l).expect("ring for two lines");
        assert_eq!(ring.poincare, vec![1, 2, 1], "torus betti numbers");
        assert_eq!(ring.total_dim, 3, "three classes above degree zero");

        let a = ring.component(1, 1).expect("class over the first line").global_start;
        let b = ring.component(2, 1).expect("class over the second line").global_start;
        let top = ring.component(3, 2).expect("class over the origin").global_start;

        let ab = ring.product(a, b);
        let ba = ring.product(b, a);
        assert_eq!(ab.len(), 1, "a.b is a single basis class");
        assert!(ab.contains_key(&top), "a.b lands in the top component");
        let mut neg = ba.clone();
        for v in neg.values_mut() {
            *v = -v.clone();
        }
        assert_eq!(ab, neg, "odd classes anticommute");
        assert!(ring.product(a, a).is_empty(), "a.a vanishes");
        assert!(ring.product(b, b).is_empty(), "b.b vanishes");
        assert!(ring.product(top, a).is_empty(), "degrees above the top vanish");
    }

    #[test]
    fn global_index_lookup_finds_the_owning_component() {
        let l = kequal_lattice(4, 2, 0).expect("partition lattice of 4");
        let ring = ring_structure(&l).expect("ring");
        for c in &ring.components {
            for k in 0..c.dim {
                let found = ring.component_of_class(c.global_start + k);
                assert_eq!(
                    (found.element, found.q),
                    (c.element, c.q),
                    "index {} resolves to its component",
                    c.global_start + k
                );
            }
        }
        let total: usize = ring.components.iter().map(|c| c.dim).sum();
        assert_eq!(total, ring.total_dim, "component dims add up to the basis size");
    }

    #[test]
    fn integral_readout_is_torsion_free_on_tiny_cases() {
        for name in ["oneline", "boolean:3", "braid:3"] {
            let l = builtin_by_name(name).expect("builtin exists");
            let rational = betti_cm(&l).expect("betti");
            let integral = integral_betti_experimental(&l).expect("integral betti");
            for (q, comp) in &integral {
                assert!(comp.torsion.is_empty(), "{name} has torsion at degree {q}");
                assert_eq!(
                    comp.free_rank,
                    rational.get(q).copied().unwrap_or(0),
                    "{name} free rank at degree {q}"
                );
            }
            for (q, b) in &rational {
                assert_eq!(
                    integral.get(q).map_or(0, |c| c.free_rank),
                    *b,
                    "{name} rational class missing integrally at degree {q}"
                );
            }
        }
    }

    #[test]
    fn torus_product_coordinates_are_unit_coefficients() {
        let l = two_lines();
        let ring = ring_structure(&l).expect("ring");
        let a = ring.component(1, 1).unwrap().global_start;
        let b = ring.component(2, 1).unwrap().global_start;
        let top = ring.component(3, 2).unwrap().global_start;
        let ab = ring.product(a, b);
        let coef = ab.get(&top).expect("nonzero coordinate");
        assert!(
            *coef == rat_int(1) || *coef == rat_int(-1),
            "generator product is a signed basis class, got {coef}"
        );
    }
}
