//! The `splitkit` command line. Every subcommand reads JSON (or PD text)
//! and writes one JSON document.
//!
//! Exit status is 0 on success, 1 when the input is well formed but
//! violates a precondition of the operation, and 2 on usage or parse errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagram::{dim_stratum, normal_form, Color, ColorSet, Flavor};
use crate::gluing::GlueMode;
use crate::io::{self, ElementWire, FamilyWire, FormWire, IoError, LinkingWire, MilnorWire, MorphismWire, Rat};
use crate::linking::{kappa, symplectic_completion, theta_form, transport_linking};
use crate::milnor::{build_degree1_part, mu_bar_ijk, mu_bar_table, pairwise_linking};
use crate::splitting::{alternating_sum, glue_legs_with_form, mu_to_tripods, splitting_rhs, LegForm};
use crate::ts::{compose, glue_pairing, tensor};

#[derive(Parser, Debug)]
#[command(name = "splitkit", version, about = "Exact Jacobi-diagram calculus from the command line")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Some,
    All,
}

impl From<ModeArg> for GlueMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Some => GlueMode::Some,
            ModeArg::All => GlueMode::All,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Full,
    Y,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Reduce an element modulo AS and IHX.
    NormalForm {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Dimension of one stratum of the diagram space.
    Dim {
        #[arg(long)]
        idegree: usize,
        /// Comma-separated leg colors.
        #[arg(long, default_value = "")]
        legs: String,
        /// Comma-separated color set; defaults to the distinct leg colors.
        #[arg(long)]
        colors: Option<String>,
        #[arg(long, value_enum, default_value = "full")]
        flavor: FlavorArg,
    },
    /// `D ∘ E` for `--in D --in E`.
    Compose {
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Tensor product of two morphisms.
    Tensor {
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
    },
    /// Glue two elements along the listed colors.
    Pairing {
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
        /// Comma-separated colors to glue along.
        #[arg(long)]
        over: String,
    },
    /// Matrix of ϑ for one essential subspace.
    Theta {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        subspace: String,
    },
    /// Carry an element colored by one essential subspace to another:
    /// `--in CLASS --in ELEMENT`.
    Kappa {
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Move the linking form of the class to another essential subspace.
    Transport {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        to: String,
    },
    /// Complete a Lagrangian basis to a symplectic basis over the integers.
    /// Prints the given vectors `m` and the new vectors `p` as rows.
    SympComplete {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// The triple products of a family as tripods.
    Tripods {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Glue legs of an element with a form: `--in ELEMENT --in FORM`.
    Glue {
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "some")]
        mode: ModeArg,
    },
    /// Right-hand side of the splitting formula for a family.
    SplittingRhs {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "some")]
        mode: ModeArg,
    },
    /// Alternating sum over subsets.
    AltSum {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Linking matrix and triple linking numbers of a link.
    Milnor {
        #[arg(long)]
        pd: PathBuf,
        /// JSON with `components` and `framings`.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        /// Only `μ̄(i, j, k)`.
        #[arg(long)]
        triple: Option<String>,
    },
    /// Degree-one part from framings and triple linking numbers.
    LemmaB2 {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

/// A symmetric form on labelled legs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LegFormWire {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<Rat>>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn read(p: &Path) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(p: &Path) -> Result<T, Failure> {
    io::from_json_str(&read(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn two(input: &[PathBuf]) -> Result<(&Path, &Path), Failure> {
    match input {
        [a, b] => Ok((a, b)),
        _ => Err(Failure::Usage(format!("expected exactly two --in files, got {}", input.len()))),
    }
}

fn list(s: &str) -> Vec<Color> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(Color::new).collect()
}

fn element_json(e: &crate::diagram::DiagramElement) -> Value {
    io::element_value(e)
}

/// The outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run the command line given by `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let threads = std::env::var("SPLITKIT_THREADS").ok().and_then(|s| s.parse::<usize>().ok());
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build();
    let result = match pool {
        Ok(p) => p.install(|| execute(&cli.cmd)),
        Err(e) => Err(Failure::Usage(e.to_string())),
    };
    let text = result.and_then(|v| io::to_json_string(&v).map_err(Failure::from));
    match text {
        Ok(text) => match &cli.out {
            Some(p) => match fs::write(p, &text) {
                Ok(()) => Outcome { code: 0, stdout: String::new(), stderr: String::new() },
                Err(e) => {
                    Outcome { code: 2, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", p.display()) }
                }
            },
            None => Outcome { code: 0, stdout: text, stderr: String::new() },
        },
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Domain(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn execute(cmd: &Cmd) -> Result<Value, Failure> {
    Ok(match cmd {
        Cmd::NormalForm { input, cap } => {
            let e: ElementWire = read_json(input)?;
            element_json(&normal_form(&e.to_element()?.with_cap(Some(*cap))))
        }
        Cmd::Dim { idegree, legs, colors, flavor } => {
            let legs = list(legs);
            let colors = match colors {
                Some(c) => ColorSet::new(list(c)).map_err(|e| Failure::Usage(e.to_string()))?,
                None => {
                    let mut distinct = legs.clone();
                    distinct.sort();
                    distinct.dedup();
                    ColorSet::new(distinct).expect("distinct")
                }
            };
            let flavor = match flavor {
                FlavorArg::Full => Flavor::Full,
                FlavorArg::Y => Flavor::Y,
            };
            json!({ "dim": dim_stratum(&colors, *idegree, &legs, flavor).map_err(domain)? })
        }
        Cmd::Compose { input, cap } => {
            let (a, b) = two(input)?;
            let d = read_json::<MorphismWire>(a)?.to_morphism()?;
            let e = read_json::<MorphismWire>(b)?.to_morphism()?;
            serde_json::to_value(MorphismWire::from_morphism(&compose(&d, &e, *cap).map_err(domain)?))
                .expect("serializes")
        }
        Cmd::Tensor { input } => {
            let (a, b) = two(input)?;
            let d = read_json::<MorphismWire>(a)?.to_morphism()?;
            let e = read_json::<MorphismWire>(b)?.to_morphism()?;
            serde_json::to_value(MorphismWire::from_morphism(&tensor(&d, &e))).expect("serializes")
        }
        Cmd::Pairing { input, over } => {
            let (a, b) = two(input)?;
            let l = read_json::<ElementWire>(a)?.to_element()?;
            let r = read_json::<ElementWire>(b)?.to_element()?;
            element_json(&normal_form(&glue_pairing(&l, &r, &list(over)).map_err(domain)?))
        }
        Cmd::Theta { input, subspace } => {
            let lin = read_json::<LinkingWire>(input)?.to_input()?;
            let e = lin.subspaces.get(subspace).ok_or_else(|| Failure::Usage(format!("no subspace {subspace}")))?;
            json!({ "theta": io::matrix_value(&theta_form(&lin.class, e).map_err(domain)?) })
        }
        Cmd::Kappa { input, from, to } => {
            let (a, b) = two(input)?;
            let lin = read_json::<LinkingWire>(a)?.to_input()?;
            let e = read_json::<ElementWire>(b)?.to_element()?;
            let get = |n: &String| lin.subspaces.get(n).ok_or_else(|| Failure::Usage(format!("no subspace {n}")));
            element_json(&kappa(&lin.class, get(from)?, get(to)?, &e).map_err(domain)?)
        }
        Cmd::Transport { input, to } => {
            let lin = read_json::<LinkingWire>(input)?.to_input()?;
            let ell = lin.linking.as_ref().ok_or_else(|| Failure::Usage("the class has no linking form".into()))?;
            let get = |n: &String| lin.subspaces.get(n).ok_or_else(|| Failure::Usage(format!("no subspace {n}")));
            let out = transport_linking(&lin.class, get(&ell.tag)?, get(to)?, ell).map_err(domain)?;
            serde_json::to_value(FormWire::from_form(&out)).expect("serializes")
        }
        Cmd::SympComplete { input } => {
            let (omega, lag) = read_json::<LinkingWire>(input)?.to_integer()?;
            let b = symplectic_completion(&lag, &omega).map_err(domain)?;
            let n = b.len();
            let col = |j: usize| -> Vec<String> { (0..n).map(|i| b[i][j].to_string()).collect() };
            let m: Vec<_> = (0..n / 2).map(col).collect();
            let p: Vec<_> = (n / 2..n).map(col).collect();
            json!({ "m": m, "p": p })
        }
        Cmd::Tripods { input } => {
            let fam = read_json::<FamilyWire>(input)?.to_family()?;
            element_json(&normal_form(&mu_to_tripods(&fam)))
        }
        Cmd::Glue { input, mode } => {
            let (a, b) = two(input)?;
            let e = read_json::<ElementWire>(a)?.to_element()?;
            let f: LegFormWire = read_json(b)?;
            let m = f.matrix.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
            let form = LegForm::new(list(&f.labels.join(",")), m).map_err(|e| Failure::Usage(e.to_string()))?;
            element_json(&normal_form(&glue_legs_with_form(&e, &form, (*mode).into()).map_err(domain)?))
        }
        Cmd::SplittingRhs { input, mode } => {
            let fam = read_json::<FamilyWire>(input)?.to_family()?;
            let out = splitting_rhs(&fam, (*mode).into()).map_err(domain)?;
            let mut v = element_json(&out);
            let terms = v.as_object_mut().expect("object").remove("terms").expect("terms");
            v["result"] = terms;
            v
        }
        Cmd::AltSum { input } => {
            let w: io::AltSumWire = read_json(input)?;
            let (values, colors) = w.to_values()?;
            element_json(&alternating_sum(&values, w.r, &colors).map_err(domain)?)
        }
        Cmd::Milnor { pd, sidecar, triple } => {
            let side: Option<io::SidecarWire> = sidecar.as_deref().map(read_json).transpose()?;
            let d = io::link_from_pd(&read(pd)?, side.as_ref())?;
            match triple {
                Some(t) => {
                    let [i, j, k] = io::parse_triple(t)?;
                    json!({ "mu": mu_bar_ijk(&d, i, j, k).map_err(domain)?.to_string() })
                }
                None => {
                    let mu: BTreeMap<String, Rat> =
                        mu_bar_table(&d).into_iter().map(|(t, v)| (io::triple_key(t), Rat(v))).collect();
                    serde_json::to_value(MilnorWire {
                        mu,
                        linking: Some(
                            pairwise_linking(&d).into_iter().map(|r| r.into_iter().map(Rat).collect()).collect(),
                        ),
                        framings: None,
                    })
                    .expect("serializes")
                }
            }
        }
        Cmd::LemmaB2 { input } => {
            let (framings, mu) = read_json::<MilnorWire>(input)?.to_inputs()?;
            element_json(&normal_form(&build_degree1_part(&framings, &mu, framings.len())))
        }
    })
}
