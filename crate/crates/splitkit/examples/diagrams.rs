//! Jacobi diagrams modulo AS and IHX.
//!
//! Run with `cargo run --example diagrams`.

use num::BigRational;
use splitkit::diagram::{
    dim_stratum, normal_form, scale_color, Color, ColorSet, DiagramElement, Flavor, JacobiDiagram,
};
use splitkit::Q;

fn q(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

fn show(title: &str, e: &DiagramElement) {
    println!("{title}:");
    if e.is_zero() {
        println!("    0");
    }
    for (d, c) in e.terms() {
        let legs: Vec<String> = d.legs().iter().map(Color::to_string).collect();
        println!("    {c:>4} * [i-degree {}, legs ({})]", d.idegree(), legs.join(" "));
    }
}

/// An H-shaped tree: legs (a, b) on one vertex and (c, d) on the other.
fn h(a: &str, b: &str, c: &str, d: &str) -> JacobiDiagram {
    JacobiDiagram::from_half_edges(
        &[[0, 1, 2], [3, 4, 5]],
        &[(6, a.into()), (7, b.into()), (8, c.into()), (9, d.into())],
        &[(2, 3), (0, 6), (1, 7), (4, 8), (5, 9)],
    )
    .unwrap()
}

fn main() {
    let colors = ColorSet::new(["a", "b", "c", "d"]).unwrap();

    // Cyclic rotations agree, transpositions flip the sign.
    let mut e = DiagramElement::zero(colors.clone());
    e.add_diagram(&JacobiDiagram::tripod("a", "b", "c"), q(2));
    e.add_diagram(&JacobiDiagram::tripod("b", "c", "a"), q(1));
    e.add_diagram(&JacobiDiagram::tripod("b", "a", "c"), q(1));
    show("2 T(abc) + T(bca) + T(bac)", &normal_form(&e));

    // The three trees on four legs satisfy one linear relation.
    let mut ihx = DiagramElement::zero(colors.clone());
    ihx.add_diagram(&h("a", "b", "c", "d"), q(1));
    ihx.add_diagram(&h("a", "c", "b", "d"), q(-1));
    ihx.add_diagram(&h("a", "d", "b", "c"), q(1));
    show("I - H + X", &normal_form(&ihx));
    show(
        "H(ab|cd) in normal form",
        &normal_form(&DiagramElement::from_diagram(&h("a", "b", "c", "d"), colors.clone())),
    );

    println!("dimensions of strata:");
    let legs = |s: &[&str]| s.iter().map(|&x| Color::new(x)).collect::<Vec<_>>();
    for (ideg, l) in [
        (2, vec![]),
        (1, vec!["a", "b", "c"]),
        (2, vec!["a", "b", "c", "d"]),
        (2, vec!["a", "a", "b", "b"]),
        (4, vec![]),
    ] {
        let full = dim_stratum(&colors, ideg, &legs(&l), Flavor::Full).unwrap();
        let y = dim_stratum(&colors, ideg, &legs(&l), Flavor::Y).unwrap();
        println!("    i-degree {ideg}, legs {l:?}: {full} ({y} without strut components)");
    }

    // Rescaling a color multiplies each diagram by r^(legs of that color).
    let mut mixed = DiagramElement::zero(colors);
    mixed.add_diagram(&JacobiDiagram::tripod("a", "b", "c"), q(1));
    mixed.add_diagram(&h("a", "b", "a", "d"), q(1));
    mixed.add_diagram(&JacobiDiagram::strut("a", "a"), q(1));
    show("scale a by 2", &scale_color(&mixed, &Color::new("a"), &q(2)));
}
