//! Exact computations with Jacobi diagrams over the rationals.
//!
//! The crate covers diagrams modulo AS and IHX, the category of
//! top-substantial morphisms, linking forms of rational homology
//! handlebodies, the tripod gluing behind splitting formulas for LP
//! surgery, and Milnor triple linking numbers of links.
//!
//! Each capability has a runnable example under `examples/`:
//!
//! | example         | shows                                                        |
//! |-----------------|--------------------------------------------------------------|
//! | `diagrams`      | normal forms, stratum dimensions, `scale_color`              |
//! | `category`      | composition and tensor of morphisms, the gluing cross-check  |
//! | `linking_forms` | `theta_form`, transport of linking forms, `kappa`, completion |
//! | `splitting`     | tripods from trivectors, `splitting_rhs`, `alternating_sum`  |
//! | `milnor`        | PD codes, braids, kinks, cables, the degree-one part         |
//! | `cli`           | the JSON command line driven from code                       |
//!
//! ```text
//! cargo run --example milnor
//! ```
//!
//! All arithmetic is in [`Q`]; nothing is rounded.

pub mod cli;
pub mod diagram;
pub mod gluing;
pub mod io;
pub mod linalg;
pub mod linking;
pub mod milnor;
pub mod splitting;
pub mod ts;

/// Exact rationals.
pub type Q = num::BigRational;
