mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{block, family, h_tree, identity_rho, perfect_matchings, q, random_family};
use num::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use splitkit::diagram::*;
use splitkit::gluing::GlueMode;
use splitkit::splitting::*;
use splitkit::Q;

fn c(s: &str) -> Color {
    Color::new(s)
}

fn two_tripods() -> LPFamily {
    family(
        vec![block(&["a", "b", "c"], &[([0, 1, 2], 1)]), block(&["d", "e", "f"], &[([0, 1, 2], 1)])],
        &[(2, 3, q(1))],
    )
}

#[test]
fn trivector_is_alternating() {
    let mut t = Trivector::zero();
    t.add([2, 0, 1], q(3));
    assert_eq!(t.coeff([0, 1, 2]), q(3));
    assert_eq!(t.coeff([1, 0, 2]), q(-3));
    t.add([0, 0, 1], q(5));
    t.add([1, 0, 2], q(3));
    assert!(t.is_zero());
}

#[test]
fn tripods_from_trivectors() {
    let one = family(vec![block(&["a", "b", "c"], &[([0, 1, 2], 1)])], &[]);
    let e = mu_to_tripods(&one);
    assert_eq!(e.len(), 1);
    assert_eq!(e.coeff(&JacobiDiagram::tripod("a", "b", "c")), q(1));

    let zero = family(vec![block(&["a", "b", "c"], &[])], &[]);
    assert!(mu_to_tripods(&zero).is_zero());

    let two = mu_to_tripods(&two_tripods());
    let union = JacobiDiagram::tripod("a", "b", "c").disjoint_union(&JacobiDiagram::tripod("d", "e", "f"));
    assert_eq!(two.len(), 1);
    assert_eq!(two.coeff(&union), q(1));
}

#[test]
fn gluing_examples() {
    let fam = two_tripods();
    let mu = mu_to_tripods(&fam);
    assert_eq!(glue_legs_with_form(&mu, &LegForm::zero(fam.ell().labels().to_vec()), GlueMode::Some).unwrap(), mu);

    let some = glue_legs_with_form(&mu, fam.ell(), GlueMode::Some).unwrap();
    // gluing c to d: the vertex (a, b, c) meets (d, e, f)
    let joined = h_tree(&c("a"), &c("b"), &c("e"), &c("f"));
    assert_eq!(some.len(), 2);
    assert_eq!(some.coeff(&mu.terms().next().unwrap().0.clone()), q(1));
    assert_eq!(some.coeff(&joined), q(1));
    assert!(glue_legs_with_form(&mu, fam.ell(), GlueMode::All).unwrap().is_zero());

    let odd = family(vec![block(&["a", "b", "c"], &[([0, 1, 2], 1)])], &[]);
    assert!(splitting_rhs(&odd, GlueMode::All).unwrap().is_zero());
}

#[test]
fn rho_examples() {
    let fam = two_tripods();
    let mu = mu_to_tripods(&fam);
    let (id, target) = identity_rho(fam.blocks());
    assert_eq!(rho_recolor(&mu, &id, &target).unwrap(), mu);

    let kill: BTreeMap<Color, LinearColor> = id.keys().map(|k| (k.clone(), LinearColor::new())).collect();
    assert!(rho_recolor(&mu, &kill, &target).unwrap().is_zero());

    let t = DiagramElement::from_diagram(&JacobiDiagram::tripod("a", "b", "c"), target.clone());
    let mut double = id.clone();
    double.insert(c("a"), [(c("x"), q(2))].into_iter().collect());
    let tx = ColorSet::new(["x", "b", "c"]).unwrap();
    let out = rho_recolor(&t, &double, &tx).unwrap();
    assert_eq!(out.coeff(&JacobiDiagram::tripod("x", "b", "c")), q(2));

    let partial: BTreeMap<Color, LinearColor> = [(c("a"), unit_color(&c("a")))].into_iter().collect();
    assert!(matches!(rho_recolor(&t, &partial, &target), Err(SplittingError::Unmapped(_))));
}

#[test]
fn family_validation() {
    let blocks = vec![block(&["a", "b", "c"], &[([0, 1, 2], 1)])];
    let (rho, target) = identity_rho(&blocks);
    let mut m = vec![vec![Q::zero(); 3]; 3];
    m[0][1] = q(1);
    m[1][0] = q(1);
    assert!(matches!(
        LPFamily::new(blocks.clone(), m.clone(), rho.clone(), target.clone()),
        Err(SplittingError::DiagonalBlock { block: 1, .. })
    ));
    m[1][0] = q(2);
    assert!(matches!(LPFamily::new(blocks, m, rho, target), Err(SplittingError::Asymmetric(..))));
}

#[test]
fn alternating_sums() {
    let cs = ColorSet::new(["a", "b", "c"]).unwrap();
    let t = DiagramElement::from_diagram(&JacobiDiagram::tripod("a", "b", "c"), cs.clone());
    let set = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<usize>>();

    let r0: BTreeMap<_, _> = [(set(&[]), t.clone())].into_iter().collect();
    assert_eq!(alternating_sum(&r0, 0, &cs).unwrap(), t);

    let r1: BTreeMap<_, _> = [(set(&[]), t.clone()), (set(&[1]), t.clone())].into_iter().collect();
    assert!(alternating_sum(&r1, 1, &cs).unwrap().is_zero());

    let mut r2: BTreeMap<_, _> =
        [set(&[]), set(&[1]), set(&[2]), set(&[1, 2])].into_iter().map(|s| (s, t.clone())).collect();
    assert!(alternating_sum(&r2, 2, &cs).unwrap().is_zero());
    r2.insert(set(&[1, 2]), t.scaled(&q(3)));
    assert_eq!(alternating_sum(&r2, 2, &cs).unwrap(), t.scaled(&q(2)));
    r2.remove(&set(&[2]));
    assert!(matches!(alternating_sum(&r2, 2, &cs), Err(SplittingError::MissingSubset(v)) if v == vec![2]));
}

#[test]
fn closed_sum_matches_matchings() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut nonzero = 0;
    for _ in 0..10 {
        let fam = random_family(&mut rng, 2, 3, Some(&[]));
        let mu = mu_to_tripods(&fam);
        let mut oracle = DiagramElement::zero(ColorSet::empty());
        for (d, coeff) in mu.terms() {
            for m in perfect_matchings(d.n_legs()) {
                let w: Q = m.iter().map(|&(i, j)| fam.ell().get(&d.legs()[i], &d.legs()[j])).product();
                oracle.add_diagram(&d.glue(&m).unwrap(), coeff * w);
            }
        }
        let rhs = splitting_rhs(&fam, GlueMode::All).unwrap();
        assert_eq!(rhs, normal_form(&oracle));
        assert!(rhs.terms().all(|(d, _)| d.n_legs() == 0 && d.idegree() == 2));
        nonzero += !rhs.is_zero() as usize;
    }
    assert!(nonzero > 0);
}

#[test]
fn split_form_expands_over_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut nonzero = 0;
    for _ in 0..10 {
        let f1 = random_family(&mut rng, 2, 3, None);
        let f2 = random_family(&mut rng, 2, 3, None);
        let (l1, l2) = (f1.ell(), f2.ell());
        let mu = mu_to_tripods(&f1);
        let mut oracle = DiagramElement::zero(mu.colors().clone());
        for (d, coeff) in mu.terms() {
            for m in perfect_matchings(d.n_legs()) {
                let mut w = Q::zero();
                for subset in 0u32..(1 << m.len()) {
                    let mut term = Q::one();
                    for (k, &(i, j)) in m.iter().enumerate() {
                        let form = if subset >> k & 1 == 1 { l1 } else { l2 };
                        term *= form.get(&d.legs()[i], &d.legs()[j]);
                    }
                    w += term;
                }
                oracle.add_diagram(&d.glue(&m).unwrap(), coeff * w);
            }
        }
        let glued = glue_legs_with_form(&mu, &l1.add(l2), GlueMode::All).unwrap();
        assert_eq!(normal_form(&glued), normal_form(&oracle));
        nonzero += !glued.is_zero() as usize;
    }
    assert!(nonzero > 0);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn shortcut_matches_exhaustive(seed in any::<u64>(), r in 1usize..=3, dim in 1usize..=3, some in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_family(&mut rng, r, dim, None);
        let mode = if some { GlueMode::Some } else { GlueMode::All };
        let mu = mu_to_tripods(&fam);
        let fast = glue_legs_with_form(&mu, fam.ell(), mode).unwrap();
        let slow = glue_legs_exhaustive(&mu, fam.ell(), mode).unwrap();
        prop_assert_eq!(normal_form(&fast), normal_form(&slow));
    }

    #[test]
    fn odd_r_vanishes_on_perfect_matchings(seed in any::<u64>(), half in 0usize..=1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_family(&mut rng, 2 * half + 1, 3, Some(&["1-", "2-"]));
        prop_assert!(splitting_rhs(&fam, GlueMode::All).unwrap().is_zero());
    }

    #[test]
    fn rhs_is_homogeneous(seed in any::<u64>(), r in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_family(&mut rng, r, 3, Some(&["1-", "2-", "3-"]));
        let rhs = splitting_rhs(&fam, GlueMode::Some).unwrap();
        prop_assert!(rhs.terms().all(|(d, _)| d.idegree() == r));
    }
}
