//! Tripods glued by a linking form, the right-hand side of the splitting
//! formula, and alternating sums over subsets of a surgery family.
//!
//! Run with `cargo run --example splitting`.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigRational, Zero};
use splitkit::diagram::{unit_color, Color, ColorSet, DiagramElement, JacobiDiagram, LinearColor};
use splitkit::gluing::GlueMode;
use splitkit::splitting::{alternating_sum, mu_to_tripods, splitting_rhs, Block, LPFamily, Trivector};
use splitkit::Q;

fn q(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

fn tripod_block(names: [&str; 3], coeff: i64) -> Block {
    let mut mu = Trivector::zero();
    mu.add([0, 1, 2], q(coeff));
    Block { basis: names.iter().map(|s| Color::new(s)).collect(), mu }
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

/// A family of two tripod blocks whose linking form pairs the listed labels.
fn family(pairs: &[(usize, usize)], rho: &[(&str, &str)], target: &[&str]) -> LPFamily {
    let blocks = vec![tripod_block(["a", "b", "c"], 1), tripod_block(["d", "e", "f"], 2)];
    let mut ell = vec![vec![Q::zero(); 6]; 6];
    for &(i, j) in pairs {
        ell[i][j] = q(1);
        ell[j][i] = q(1);
    }
    let mut map: BTreeMap<Color, LinearColor> =
        ["a", "b", "c", "d", "e", "f"].iter().map(|s| (Color::new(s), LinearColor::new())).collect();
    for (from, to) in rho {
        map.insert(Color::new(from), unit_color(&Color::new(to)));
    }
    LPFamily::new(blocks, ell, map, ColorSet::new(target.iter().copied()).unwrap()).unwrap()
}

fn main() {
    // c meets d; the four free legs go to the top colors of a genus-4 surface.
    let open = family(&[(2, 3)], &[("a", "1+"), ("b", "2+"), ("e", "3+"), ("f", "4+")], &["1+", "2+", "3+", "4+"]);
    show("tripods", &mu_to_tripods(&open));
    show("glued along some pairs, i-degree 2", &splitting_rhs(&open, GlueMode::Some).unwrap());

    // Every leg of the first block meets one of the second: a closed theta.
    let closed = family(&[(0, 3), (1, 4), (2, 5)], &[], &[]);
    show("all legs glued", &splitting_rhs(&closed, GlueMode::All).unwrap());

    // Σ (−1)^|I| Z(I) for a toy family of two surgeries.
    let cs = ColorSet::new(["x", "y", "z"]).unwrap();
    let x = DiagramElement::from_diagram(&JacobiDiagram::tripod("x", "y", "z"), cs.clone());
    let y = DiagramElement::from_diagram(&JacobiDiagram::strut("y", "y"), cs.clone());
    let cross = DiagramElement::from_diagram(&JacobiDiagram::strut("x", "z"), cs.clone());
    let set = |s: &[usize]| s.iter().copied().collect::<BTreeSet<usize>>();
    let values = BTreeMap::from([
        (set(&[]), DiagramElement::zero(cs.clone())),
        (set(&[1]), x.clone()),
        (set(&[2]), y.clone()),
        (set(&[1, 2]), &(&x + &y) + &cross),
    ]);
    show("alternating sum keeps only the joint term", &alternating_sum(&values, 2, &cs).unwrap());
}
