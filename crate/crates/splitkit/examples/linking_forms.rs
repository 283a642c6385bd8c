//! Homology-level data of a rational LP surgery: the form theta, changing
//! the essential subspace for linking forms and for tripod diagrams, and
//! integral symplectic completion.
//!
//! Run with `cargo run --example linking_forms`.

use num::{BigInt, BigRational};
use splitkit::diagram::{DiagramElement, JacobiDiagram};
use splitkit::linking::{
    kappa, symplectic_completion, theta_form, transport_linking, EssentialSubspace, LinkingForm, SurgeryClass,
    SymplecticSpace,
};
use splitkit::Q;

fn q(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

fn rows(m: &[&[i64]]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn print_matrix(title: &str, m: &[Vec<Q>]) {
    println!("{title}:");
    for r in m {
        println!("    {}", r.iter().map(|x| format!("{x:>4}")).collect::<Vec<_>>().join(" "));
    }
}

fn main() {
    // genus 3 in the basis (a1, a2, a3, b1, b2, b3), Lagrangian spanned by the a's
    let cls = SurgeryClass::new(
        SymplecticSpace::standard(3),
        rows(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]]),
    )
    .unwrap();
    let e = EssentialSubspace::new("E", rows(&[&[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]]));
    // b_i + sum A_ij a_j with A symmetric, so F is isotropic too
    let f = EssentialSubspace::new("F", rows(&[&[1, 2, 0, 1, 0, 0], &[2, 0, -1, 0, 1, 0], &[0, -1, 3, 0, 0, 1]]));

    print_matrix("theta for E", &theta_form(&cls, &e).unwrap());
    print_matrix("theta for F", &theta_form(&cls, &f).unwrap());

    let ell = LinkingForm {
        matrix: rows(&[&[0, 1], &[1, -2]]),
        classes: rows(&[&[0, 0, 0, 1, 0, 0], &[0, 1, 0, 0, 1, 1]]),
        tag: "E".into(),
    };
    let moved = transport_linking(&cls, &e, &f, &ell).unwrap();
    print_matrix("linking matrix relative to F", &moved.matrix);
    println!("transport back recovers it: {}", transport_linking(&cls, &f, &e, &moved).unwrap() == ell);

    // A pair of tripods colored by F, rewritten in E colors.
    let t = JacobiDiagram::tripod(f.color(0), f.color(1), f.color(2));
    let mut d = DiagramElement::zero(f.colors());
    d.add_diagram(&t.disjoint_union(&t), q(1));
    let out = kappa(&cls, &f, &e, &d).unwrap();
    println!("kappa(F -> E) of two tripods has {} terms:", out.len());
    for (x, c) in out.terms() {
        let legs: Vec<String> = x.legs().iter().map(|l| l.to_string()).collect();
        println!("    {c:>5} * [i-degree {}, legs ({})]", x.idegree(), legs.join(" "));
    }

    // Integral completion of a Lagrangian basis to a symplectic basis.
    let z = |m: &[&[i64]]| m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<Vec<_>>>();
    let omega = z(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
    let lag = z(&[&[1, 1, 0, 0], &[0, 1, 0, 0]]);
    let basis = symplectic_completion(&lag, &omega).unwrap();
    println!("completed basis (columns):");
    for r in &basis {
        println!("    {}", r.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" "));
    }
    let torsion = symplectic_completion(&z(&[&[2, 0, 0, 0], &[0, 1, 0, 0]]), &omega);
    println!("a non-primitive Lagrangian is refused: {}", torsion.unwrap_err());
}
