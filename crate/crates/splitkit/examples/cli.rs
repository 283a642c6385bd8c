//! Driving the `splitkit` command line from code. Every subcommand reads
//! JSON (or a PD code) and prints JSON with sorted keys.
//!
//! Run with `cargo run --example cli`; the same commands work with the
//! binary, e.g. `cargo run -- milnor --pd borromean.pd`.

use num::BigRational;
use splitkit::cli::run;
use splitkit::diagram::{ColorSet, DiagramElement, JacobiDiagram};
use splitkit::io::element_to_json;

fn main() {
    let dir = std::env::temp_dir().join(format!("splitkit-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = |name: &str| dir.join(name).to_str().unwrap().to_string();

    let mut e = DiagramElement::zero(ColorSet::new(["a", "b", "c"]).unwrap());
    e.add_diagram(&JacobiDiagram::tripod("a", "b", "c"), BigRational::from_integer(1.into()));
    e.add_diagram(&JacobiDiagram::tripod("c", "b", "a"), BigRational::from_integer(3.into()));
    std::fs::write(path("tripods.json"), element_to_json(&e).unwrap()).unwrap();
    std::fs::write(
        path("borromean.pd"),
        "PD[X[6,1,7,2], X[12,8,9,7], X[4,12,1,11], X[10,5,11,6], X[8,4,5,3], X[2,9,3,10]]",
    )
    .unwrap();

    let commands: Vec<Vec<String>> = vec![
        vec!["dim".into(), "--idegree".into(), "2".into(), "--legs".into(), "".into()],
        vec!["normal-form".into(), "--in".into(), path("tripods.json")],
        vec!["milnor".into(), "--pd".into(), path("borromean.pd")],
        vec!["milnor".into(), "--pd".into(), path("borromean.pd"), "--triple".into(), "3,2,1".into()],
        vec!["milnor".into(), "--pd".into(), path("missing.pd")],
    ];
    for args in commands {
        let out = run(std::iter::once("splitkit".to_string()).chain(args.iter().cloned()));
        println!("$ splitkit {}", args.join(" ").replace(dir.to_str().unwrap(), "$TMP"));
        print!("{}", out.stdout);
        if out.code != 0 {
            print!("exit {}: {}", out.code, out.stderr);
        }
        println!();
    }
    std::fs::remove_dir_all(dir).ok();
}
