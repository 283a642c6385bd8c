//! Triple linking numbers of links given by PD codes or braid words, and
//! the degree-one part assembled from framings and triple linking.
//!
//! Run with `cargo run --example milnor`.

use num::BigRational;
use splitkit::diagram::{normal_form, Color};
use splitkit::milnor::{
    braid_closure, build_degree1_part, double_strand, mu_bar_ijk, mu_bar_table, pairwise_linking, parse_pd,
};
use splitkit::Q;

fn q(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

const BORROMEAN: &str = "PD[X[6,1,7,2], X[12,8,9,7], X[4,12,1,11], X[10,5,11,6], X[8,4,5,3], X[2,9,3,10]]";

fn main() {
    let b = parse_pd(BORROMEAN).unwrap();
    println!("Borromean rings: {} components, {} crossings", b.n_components(), b.crossings().len());
    for t in [[1, 2, 3], [2, 3, 1], [2, 1, 3]] {
        println!("    mu{t:?} = {}", mu_bar_ijk(&b, t[0], t[1], t[2]).unwrap());
    }

    let hopf = braid_closure(2, &[1, 1]).unwrap();
    println!(
        "Hopf link linking matrix: {:?}",
        pairwise_linking(&hopf).iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
    );
    println!(
        "    triple linking is undefined once two components link: {}",
        mu_bar_ijk(&braid_closure(3, &[1, 1]).unwrap(), 1, 2, 3).unwrap_err()
    );

    // Kinks change the framing, never mu.
    let kinked = b.with_kink(1, true).unwrap().with_kink(3, false).unwrap();
    println!(
        "with two kinks: framings {:?}, mu123 = {}",
        kinked.framings().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        mu_bar_ijk(&kinked, 1, 2, 3).unwrap()
    );

    // The same link as a closed 3-braid, and its (2,1)-cable on strand 2.
    let word = [1, -2, 1, -2, 1, -2];
    let braided = braid_closure(3, &word).unwrap();
    let (n, cable_word) = double_strand(3, &word, 2, true).unwrap();
    let cable = braid_closure(n, &cable_word).unwrap();
    println!("braid closure mu123 = {}", mu_bar_ijk(&braided, 1, 2, 3).unwrap());
    println!(
        "cabled on component 2: mu123 = {}, framings {:?}",
        mu_bar_ijk(&cable, 1, 2, 3).unwrap(),
        cable.framings().iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );

    // Struts weighted by half the framing, tripods by minus mu.
    let part = normal_form(&build_degree1_part(&[q(2), q(0), q(-1)], &mu_bar_table(&b), 3));
    println!("degree-one part for framings (2, 0, -1):");
    for (d, c) in part.terms() {
        let legs: Vec<String> = d.legs().iter().map(Color::to_string).collect();
        println!("    {c:>4} * ({})", legs.join(" "));
    }
}
