mod common;

use num::{BigRational, One, Zero};
use proptest::prelude::*;
use splitkit::diagram::*;
use splitkit::Q;

fn q(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

fn c(s: &str) -> Color {
    Color::new(s)
}

fn set(labels: &[&str]) -> ColorSet {
    ColorSet::new(labels.iter().copied()).unwrap()
}

#[test]
fn tadpole_is_zero() {
    // one trivalent vertex with a self-edge and one leg
    let d = JacobiDiagram::from_half_edges(&[[0, 1, 2]], &[(3, c("a"))], &[(0, 1), (2, 3)]).unwrap();
    assert!(canonical_as(&d).is_none());
}

#[test]
fn flipped_theta_has_sign_minus() {
    let t = JacobiDiagram::theta();
    let (s0, c0) = canonical_as(&t).unwrap();
    let (s1, c1) = canonical_as(&t.flip(0)).unwrap();
    assert_eq!(c0, c1);
    assert_eq!(s0, -s1);
}

#[test]
fn strut_with_equal_colors_is_positive() {
    let (s, d) = canonical_as(&JacobiDiagram::strut("a", "a")).unwrap();
    assert_eq!(s, 1);
    assert_eq!(d, JacobiDiagram::strut("a", "a"));
    let (s, _) = canonical_as(&JacobiDiagram::strut("b", "a")).unwrap();
    assert_eq!(s, 1);
}

#[test]
fn tripod_orientation() {
    let e = DiagramElement::from_diagram(&JacobiDiagram::tripod("a", "b", "c"), set(&["a", "b", "c"]));
    assert_eq!(e.coeff(&JacobiDiagram::tripod("b", "c", "a")), q(1));
    assert_eq!(e.coeff(&JacobiDiagram::tripod("c", "a", "b")), q(1));
    assert_eq!(e.coeff(&JacobiDiagram::tripod("a", "c", "b")), q(-1));
    assert!(canonical_as(&JacobiDiagram::tripod("a", "a", "b")).is_none());
}

#[test]
fn stratum_dimensions() {
    let abc = set(&["1", "2", "3"]);
    assert_eq!(dim_stratum(&ColorSet::empty(), 2, &[], Flavor::Full).unwrap(), 1);
    assert_eq!(dim_stratum(&abc, 1, &[c("1"), c("2"), c("3")], Flavor::Full).unwrap(), 1);
    assert_eq!(dim_stratum(&abc, 1, &[c("1"), c("1"), c("2")], Flavor::Full).unwrap(), 0);
    assert!(ihx_relators(&abc, 1, &[c("1"), c("2"), c("3")]).unwrap().is_empty());
}

#[test]
fn theta_survives_and_spans() {
    let nf = normal_form(&DiagramElement::from_diagram(&JacobiDiagram::theta(), ColorSet::empty()));
    assert_eq!(nf.len(), 1);
    let (d, _) = nf.terms().next().unwrap();
    assert_eq!(canonical_as(&JacobiDiagram::theta()).unwrap().1, *d);
    // the so(3) weight separates theta from zero
    assert_ne!(common::so3_weight(&JacobiDiagram::theta(), &common::vectors(&[])), 0);
}

#[test]
fn four_leg_trees_satisfy_one_relation() {
    let cs = set(&["1", "2", "3", "4"]);
    let legs = [c("1"), c("2"), c("3"), c("4")];
    let rels = ihx_relators(&cs, 2, &legs).unwrap();
    assert!(!rels.is_empty());
    // three trees plus tripod-with-strut configurations that vanish; one relation among trees
    assert_eq!(dim_stratum(&cs, 2, &legs, Flavor::Y).unwrap(), 2);
    for r in &rels {
        assert!(normal_form(r).is_zero());
    }
}

#[test]
fn relators_vanish_under_so3_weight() {
    let names = ["1", "2", "3", "4"];
    let cs = set(&names);
    let vec = common::vectors(&names);
    for (ideg, legs) in [
        (2, vec!["1", "2", "3", "4"]),
        (2, vec!["1", "1", "2", "2"]),
        (2, vec![]),
        (3, vec!["1", "2", "3"]),
        (3, vec!["1", "1", "2"]),
        (4, vec![]),
        (4, vec!["1", "2"]),
    ] {
        let legs: Vec<Color> = legs.into_iter().map(c).collect();
        for r in ihx_relators(&cs, ideg, &legs).unwrap() {
            let w: i64 = r
                .terms()
                .map(|(d, k)| {
                    assert!(k.is_integer());
                    common::so3_weight(d, &vec) * k.to_integer().try_into().unwrap_or(0i64)
                })
                .sum();
            assert_eq!(w, 0, "relator {r:?} has nonzero weight");
        }
    }
}

#[test]
fn multilinear_expansion() {
    let basis = set(&["a", "b", "c", "d"]);
    let mut ab = LinearColor::new();
    ab.insert(c("a"), q(1));
    ab.insert(c("b"), q(1));
    let e = multilinear_expand(
        &JacobiDiagram::tripod("x", "y", "z"),
        &[ab, unit_color(&c("c")), unit_color(&c("d"))],
        &basis,
    )
    .unwrap();
    let mut want = DiagramElement::from_diagram(&JacobiDiagram::tripod("a", "c", "d"), basis.clone());
    want.add_diagram(&JacobiDiagram::tripod("b", "c", "d"), q(1));
    assert_eq!(e, want);

    let mut two_a = LinearColor::new();
    two_a.insert(c("a"), q(2));
    let e = multilinear_expand(&JacobiDiagram::strut("x", "y"), &[two_a, unit_color(&c("b"))], &basis).unwrap();
    assert_eq!(e.coeff(&JacobiDiagram::strut("a", "b")), q(2));

    let mut zero = LinearColor::new();
    zero.insert(c("a"), q(1));
    let mut neg = zero.clone();
    *neg.get_mut(&c("a")).unwrap() -= q(1);
    let e = multilinear_expand(
        &JacobiDiagram::tripod("x", "y", "z"),
        &[neg, unit_color(&c("c")), unit_color(&c("d"))],
        &basis,
    )
    .unwrap();
    assert!(e.is_zero());

    let outside = unit_color(&c("zz"));
    assert!(multilinear_expand(&JacobiDiagram::strut("x", "y"), &[outside, unit_color(&c("a"))], &basis).is_err());
}

#[test]
fn scale_color_examples() {
    let cs = set(&["1+", "2+", "3+"]);
    let t = DiagramElement::from_diagram(&JacobiDiagram::tripod("1+", "2+", "3+"), cs.clone());
    assert_eq!(scale_color(&t, &c("1+"), &q(3)), t.scaled(&q(3)));
    let s = DiagramElement::from_diagram(&JacobiDiagram::strut("1+", "1+"), cs);
    assert_eq!(scale_color(&s, &c("1+"), &q(2)), s.scaled(&q(4)));
    assert_eq!(scale_color(&s, &c("1+"), &Q::one()), s);
    let zero = &s - &s;
    assert!(zero.is_zero() && Q::zero() == zero.coeff(&JacobiDiagram::strut("1+", "1+")));
}

/// Random connected-or-not diagrams from random perfect matchings.
fn arb_diagram() -> impl Strategy<Value = JacobiDiagram> {
    (0usize..4, 0usize..5, any::<u64>()).prop_filter_map("odd half-edge count", |(t, l, seed)| {
        let n = 3 * t + l;
        if n % 2 == 1 || n == 0 {
            return None;
        }
        let mut rng = seed;
        let mut next = || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        let mut hs: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            hs.swap(i, (next() % (i as u64 + 1)) as usize);
        }
        let edges: Vec<(usize, usize)> = hs.chunks(2).map(|p| (p[0], p[1])).collect();
        let tri: Vec<[usize; 3]> = (0..t).map(|v| [3 * v, 3 * v + 1, 3 * v + 2]).collect();
        let names = ["a", "b", "c"];
        let legs: Vec<(usize, Color)> = (0..l).map(|i| (3 * t + i, c(names[(next() % 3) as usize]))).collect();
        JacobiDiagram::from_half_edges(&tri, &legs, &edges).ok()
    })
}

proptest! {
    #[test]
    fn canonical_form_is_isomorphism_invariant(d in arb_diagram(), seed in any::<u64>()) {
        let t = d.idegree();
        let l = d.n_legs();
        let mut rng = seed | 1;
        let mut next = |m: usize| { rng ^= rng << 13; rng ^= rng >> 7; rng ^= rng << 17; (rng % m as u64) as usize };
        let mut tp: Vec<usize> = (0..t).collect();
        for i in (1..t).rev() { tp.swap(i, next(i + 1)); }
        let rot: Vec<usize> = (0..t).map(|_| next(3)).collect();
        let mut lp: Vec<usize> = (0..l).collect();
        for i in (1..l).rev() { lp.swap(i, next(i + 1)); }
        let e = d.permuted(&tp, &rot, &lp);
        prop_assert_eq!(canonical_as(&d), canonical_as(&e));
    }

    #[test]
    fn canonical_sign_matches_weight(d in arb_diagram()) {
        let vec = common::vectors(&["a", "b", "c"]);
        let w = common::so3_weight(&d, &vec);
        match canonical_as(&d) {
            None => prop_assert_eq!(w, 0),
            Some((s, canon)) => prop_assert_eq!(w, s as i64 * common::so3_weight(&canon, &vec)),
        }
    }

    #[test]
    fn as_flip_cancels(d in arb_diagram(), v in 0usize..4) {
        prop_assume!(d.idegree() > 0);
        let v = v % d.idegree();
        let mut e = DiagramElement::zero(ColorSet::new(["a", "b", "c"]).unwrap());
        e.add_diagram(&d, q(1));
        e.add_diagram(&d.flip(v), q(1));
        prop_assert!(normal_form(&e).is_zero());
    }

    #[test]
    fn normal_form_idempotent(d in arb_diagram(), d2 in arb_diagram(), k in -3i64..4) {
        let mut e = DiagramElement::zero(ColorSet::new(["a", "b", "c"]).unwrap());
        e.add_diagram(&d, q(k));
        e.add_diagram(&d2, q(1));
        let n1 = normal_form(&e);
        prop_assert_eq!(normal_form(&n1), n1.clone());
        for (x, _) in n1.terms() {
            prop_assert!(x.idegree() == d.idegree() || x.idegree() == d2.idegree());
        }
    }

    #[test]
    fn scale_color_composes(d in arb_diagram(), r in -3i64..4, s in -3i64..4) {
        let e = DiagramElement::from_diagram(&d, ColorSet::new(["a", "b", "c"]).unwrap());
        let a = c("a");
        prop_assert_eq!(scale_color(&e, &a, &q(r * s)), scale_color(&scale_color(&e, &a, &q(s)), &a, &q(r)));
    }
}
