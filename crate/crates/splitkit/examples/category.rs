//! Morphisms of the top-substantial category: composition, tensor product,
//! and the closed strut formula checked against literal gluing.
//!
//! Run with `cargo run --example category`.

use num::{BigRational, Zero};
use splitkit::diagram::{Color, ColorSet, DiagramElement, JacobiDiagram};
use splitkit::ts::{compose, compose_by_gluing, tensor, Morphism, StrutMatrix};
use splitkit::Q;

fn q(n: i64, d: i64) -> Q {
    BigRational::new(n.into(), d.into())
}

fn strut_matrix(g: usize, f: usize, entries: &[(usize, usize, Q)]) -> StrutMatrix {
    let n = g + f;
    let mut m = vec![vec![Q::zero(); n]; n];
    for (i, j, v) in entries {
        m[*i][*j] = v.clone();
        m[*j][*i] = v.clone();
    }
    StrutMatrix::new(g, f, m).unwrap()
}

fn print_morphism(name: &str, m: &Morphism) {
    println!("{name}: genus {} -> {}", m.source_genus(), m.target_genus());
    let labels = m.strut().labels();
    for (i, row) in m.strut().entries().iter().enumerate() {
        for (j, v) in row.iter().enumerate().skip(i) {
            if !v.is_zero() {
                println!("    strut {} {}: {v}", labels[i], labels[j]);
            }
        }
    }
    for (d, c) in m.y_part().terms().filter(|(d, _)| d.idegree() > 0) {
        let legs: Vec<String> = d.legs().iter().map(Color::to_string).collect();
        println!("    {c} * [i-degree {}, legs ({})]", d.idegree(), legs.join(" "));
    }
}

fn main() {
    let cap = 3;
    // 1 -> 2 with an off-diagonal top/bottom strut and one tripod
    let colors = ColorSet::top_bottom(1, 2);
    let mut y = DiagramElement::one(colors.clone());
    y.add_diagram(&JacobiDiagram::tripod(Color::top(1), Color::bottom(1), Color::bottom(2)), q(1, 2));
    let s = strut_matrix(1, 2, &[(0, 1, q(1, 1)), (1, 2, q(-2, 1)), (2, 2, q(1, 3))]);
    let d = Morphism::new(s, y, cap).unwrap();

    // 2 -> 1
    let colors = ColorSet::top_bottom(2, 1);
    let mut y = DiagramElement::one(colors);
    y.add_diagram(&JacobiDiagram::tripod(Color::top(1), Color::top(2), Color::bottom(1)), q(-1, 1));
    let e = Morphism::new(strut_matrix(2, 1, &[(0, 2, q(1, 1)), (1, 2, q(3, 1))]), y, cap).unwrap();

    print_morphism("D", &d);
    print_morphism("E", &e);
    let de = compose(&d, &e, cap).unwrap();
    print_morphism("compose(D, E)", &de);
    let ed = compose(&e, &d, cap).unwrap();
    print_morphism("compose(E, D)", &ed);

    let left = Morphism::identity(d.target_genus(), cap);
    let right = Morphism::identity(d.source_genus(), cap);
    let neutral = compose(&left, &d, cap).unwrap() == d && compose(&d, &right, cap).unwrap() == d;
    println!("identities are neutral: {neutral}");
    print_morphism("D tensor identity", &tensor(&d, &right));

    // Expand the closed form up to two struts and glue the truncated
    // exponentials directly; the low-leg parts agree.
    let legs = 2;
    let closed = de.expand(1);
    let brute = compose_by_gluing(&d, &e, legs, legs + 2, cap).unwrap();
    let low = |x: &DiagramElement| {
        DiagramElement::from_terms(
            x.terms().filter(|(t, _)| t.n_legs() <= legs).map(|(t, c)| (t, c.clone())),
            x.colors().clone(),
        )
    };
    println!("closed form matches gluing up to {legs} legs: {}", low(&closed) == low(&brute));
}
