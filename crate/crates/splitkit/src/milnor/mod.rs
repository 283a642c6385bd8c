//! Link diagrams in PD form, linking numbers and Milnor's triple linking
//! numbers through the Magnus expansion of longitudes.
//!
//! A crossing `X(a, b, c, d)` lists its four arcs counterclockwise starting
//! from the incoming under-arc `a`, so the under-strand runs `a → c`. The
//! crossing is positive when the over-strand runs `d → b`.

mod braid;
mod magnus;
mod pd;

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};
use thiserror::Error;

use crate::diagram::{Color, ColorSet, DiagramElement, JacobiDiagram};
use crate::linalg::QMat;
use crate::Q;

pub use braid::{braid_closure, double_strand};
pub use magnus::MagnusSeries;
pub use pd::{parse_crossings, parse_pd};

/// Truncation degree of the Magnus expansion.
pub const MAGNUS_DEGREE: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MilnorError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("crossing {crossing}: arc {arc} occurs {count} times in the code")]
    ArcCount { crossing: usize, arc: u32, count: usize },
    #[error("arc {0} is listed in more than one component")]
    SharedArc(u32),
    #[error("arc {0} is not listed in any component")]
    UnlistedArc(u32),
    #[error("component {component}: {msg}")]
    Inconsistent { component: usize, msg: String },
    #[error("expected {expected} framings, got {found}")]
    FramingCount { expected: usize, found: usize },
    #[error("no component {0}")]
    NoComponent(usize),
    #[error("component indices must be distinct")]
    RepeatedIndex,
    #[error("components {0} and {1} have linking number {2}; the triple is not algebraically split")]
    NotSplit(usize, usize, Q),
    #[error("braid generator {0} is out of range")]
    BadGenerator(i32),
    #[error("strand {0} is not closed up by itself")]
    NotPure(usize),
}

pub type Result<T> = std::result::Result<T, MilnorError>;

/// One passage of a component through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pass {
    crossing: usize,
    /// Slot through which the strand enters.
    entry: usize,
}

impl Pass {
    fn is_under(&self) -> bool {
        self.entry == 0
    }
}

/// An oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    components: Vec<Vec<u32>>,
    framings: Vec<Q>,
    explicit_framings: bool,
    passes: Vec<Vec<Pass>>,
    signs: Vec<i8>,
    /// Component owning the over-strand and the under-strand.
    over: Vec<usize>,
    under: Vec<usize>,
}

type Slot = (usize, usize);

impl LinkDiagram {
    /// Validates a code. Without `components` they are read off the
    /// connectivity, ordered by smallest arc label. Without `framings` each
    /// component gets its blackboard framing.
    pub fn new(crossings: Vec<[u32; 4]>, components: Option<Vec<Vec<u32>>>, framings: Option<Vec<Q>>) -> Result<Self> {
        let occ = occurrences(&crossings)?;
        let walks = match components {
            Some(comps) => explicit_walks(&crossings, &occ, comps)?,
            None => implicit_walks(&crossings, &occ),
        };
        let n = crossings.len();
        let mut signs = vec![0i8; n];
        let mut over = vec![usize::MAX; n];
        let mut under = vec![usize::MAX; n];
        for (k, (_, passes)) in walks.iter().enumerate() {
            for p in passes {
                if p.is_under() {
                    under[p.crossing] = k;
                } else {
                    over[p.crossing] = k;
                    signs[p.crossing] = if p.entry == 3 { 1 } else { -1 };
                }
            }
        }
        let (components, passes): (Vec<_>, Vec<_>) = walks.into_iter().unzip();
        let explicit_framings = framings.is_some();
        let mut d =
            LinkDiagram { crossings, components, framings: Vec::new(), explicit_framings, passes, signs, over, under };
        d.framings = match framings {
            Some(f) if f.len() != d.components.len() => {
                return Err(MilnorError::FramingCount { expected: d.components.len(), found: f.len() })
            }
            Some(f) => f,
            None => (0..d.components.len()).map(|k| Q::from_integer(d.self_writhe(k).into())).collect(),
        };
        Ok(d)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    /// Arcs of each component in the order of its orientation.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn framings(&self) -> &[Q] {
        &self.framings
    }

    /// `+1` or `−1` for each crossing.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Sum of the signs of the crossings of component `k` (0-based) with itself.
    fn self_writhe(&self, k: usize) -> i64 {
        (0..self.crossings.len())
            .filter(|&c| self.over[c] == k && self.under[c] == k)
            .map(|c| self.signs[c] as i64)
            .sum()
    }

    /// Adds a curl on the first arc of component `k` (1-based).
    pub fn with_kink(&self, k: usize, positive: bool) -> Result<LinkDiagram> {
        let idx = k.checked_sub(1).filter(|&i| i < self.n_components()).ok_or(MilnorError::NoComponent(k))?;
        let e = self.components[idx][0];
        let top = self.crossings.iter().flatten().chain(self.components.iter().flatten()).max().copied().unwrap_or(0);
        let loop_arc = top + 1;
        let mut crossings = self.crossings.clone();
        let e_out = match self.passes[idx].first() {
            None => e,
            Some(p) => {
                crossings[p.crossing][p.entry] = top + 2;
                top + 2
            }
        };
        crossings.push(if positive { [e, e_out, loop_arc, loop_arc] } else { [e, loop_arc, loop_arc, e_out] });
        let mut components = self.components.clone();
        let mut order = vec![e, loop_arc];
        if e_out != e {
            order.push(e_out);
        }
        order.extend_from_slice(&components[idx][1..]);
        components[idx] = order;
        let framings = self.explicit_framings.then(|| {
            let mut f = self.framings.clone();
            f[idx] += Q::from_integer(if positive { 1 } else { -1 }.into());
            f
        });
        LinkDiagram::new(crossings, Some(components), framings)
    }

    /// Magnus images of the longitudes, one per component.
    pub fn longitudes(&self) -> Vec<MagnusSeries> {
        Wirtinger::new(self).longitudes(MAGNUS_DEGREE)
    }
}

/// Both occurrences of every arc label, checking each label occurs twice.
fn occurrences(crossings: &[[u32; 4]]) -> Result<BTreeMap<u32, Vec<Slot>>> {
    let mut occ: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (s, &a) in x.iter().enumerate() {
            let v = occ.entry(a).or_default();
            v.push((c, s));
            if v.len() > 2 {
                return Err(MilnorError::ArcCount { crossing: c + 1, arc: a, count: v.len() });
            }
        }
    }
    if let Some((&a, v)) = occ.iter().find(|(_, v)| v.len() != 2) {
        return Err(MilnorError::ArcCount { crossing: v[0].0 + 1, arc: a, count: 1 });
    }
    Ok(occ)
}

fn label(crossings: &[[u32; 4]], (c, s): Slot) -> u32 {
    crossings[c][s]
}

fn other(occ: &BTreeMap<u32, Vec<Slot>>, a: u32, here: Slot) -> Slot {
    let v = &occ[&a];
    if v[0] == here {
        v[1]
    } else {
        v[0]
    }
}

/// Follow the strand from `head` (the slot where the first arc ends) until
/// it closes up. Returns the arcs and passes, or `None` if an under-strand
/// is traversed against its orientation.
fn walk(
    crossings: &[[u32; 4]],
    occ: &BTreeMap<u32, Vec<Slot>>,
    first: u32,
    head: Slot,
) -> Option<(Vec<u32>, Vec<Pass>)> {
    let mut arcs = vec![first];
    let mut passes = Vec::new();
    let mut h = head;
    loop {
        if h.1 == 2 {
            return None;
        }
        passes.push(Pass { crossing: h.0, entry: h.1 });
        let exit = (h.0, (h.1 + 2) % 4);
        let a = label(crossings, exit);
        let next = other(occ, a, exit);
        if a == first && next == head {
            return Some((arcs, passes));
        }
        if arcs.len() > 2 * crossings.len() {
            return None;
        }
        arcs.push(a);
        h = next;
    }
}

fn implicit_walks(crossings: &[[u32; 4]], occ: &BTreeMap<u32, Vec<Slot>>) -> Vec<(Vec<u32>, Vec<Pass>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (&a, slots) in occ {
        if seen.contains(&a) {
            continue;
        }
        let mut options: Vec<_> = slots.iter().filter_map(|&h| walk(crossings, occ, a, h)).collect();
        // Without undercrossings either direction is consistent; prefer
        // consecutive numbering.
        options.sort_by_key(|(arcs, _)| arcs.get(1).copied());
        let (arcs, passes) = options.into_iter().next().expect("one direction is always consistent");
        seen.extend(arcs.iter().copied());
        out.push((arcs, passes));
    }
    out
}

fn explicit_walks(
    crossings: &[[u32; 4]],
    occ: &BTreeMap<u32, Vec<Slot>>,
    comps: Vec<Vec<u32>>,
) -> Result<Vec<(Vec<u32>, Vec<Pass>)>> {
    let mut listed = BTreeSet::new();
    for &a in comps.iter().flatten() {
        if !listed.insert(a) {
            return Err(MilnorError::SharedArc(a));
        }
    }
    if let Some(&a) = occ.keys().find(|a| !listed.contains(a)) {
        return Err(MilnorError::UnlistedArc(a));
    }
    let mut out = Vec::new();
    for (k, arcs) in comps.into_iter().enumerate() {
        let bad = |msg: &str| MilnorError::Inconsistent { component: k + 1, msg: msg.to_string() };
        let first = *arcs.first().ok_or_else(|| bad("no arcs"))?;
        let Some(slots) = occ.get(&first) else {
            if arcs.len() != 1 {
                return Err(bad("an arc without crossings must be the whole component"));
            }
            out.push((arcs, Vec::new()));
            continue;
        };
        let found = slots
            .iter()
            .filter_map(|&h| walk(crossings, occ, first, h))
            .find(|(w, _)| *w == arcs)
            .ok_or_else(|| bad("arcs do not follow the crossings in the listed order"))?;
        out.push(found);
    }
    Ok(out)
}

/// Off-diagonal entries are linking numbers, the diagonal holds the framings.
pub fn pairwise_linking(d: &LinkDiagram) -> QMat {
    let n = d.n_components();
    let mut m = vec![vec![Q::zero(); n]; n];
    for c in 0..d.crossings.len() {
        let (i, j) = (d.over[c], d.under[c]);
        if i != j {
            let half = Q::new(d.signs[c].into(), 2.into());
            m[i][j] += &half;
            m[j][i] += half;
        }
    }
    for (i, f) in d.framings.iter().enumerate() {
        m[i][i] = f.clone();
    }
    m
}

/// The Wirtinger generators of a diagram with the data needed to express
/// them through one meridian per component.
struct Wirtinger {
    /// First generator of each component.
    base: Vec<usize>,
    /// Component of each generator.
    owner: Vec<usize>,
    /// Per component, the undercrossings in order: (over generator, sign).
    unders: Vec<Vec<(usize, i64)>>,
    /// Per component, its count of self undercrossings weighted by sign.
    self_exp: Vec<i64>,
}

impl Wirtinger {
    fn new(d: &LinkDiagram) -> Self {
        let mut base = Vec::new();
        let mut owner = Vec::new();
        // Segment index of every pass, then generator of every over-pass.
        let mut over_gen = vec![usize::MAX; d.crossings.len()];
        for (k, passes) in d.passes.iter().enumerate() {
            let m = passes.iter().filter(|p| p.is_under()).count();
            let start = owner.len();
            base.push(start);
            owner.extend(std::iter::repeat_n(k, m.max(1)));
            let mut seg = 0;
            for p in passes {
                if p.is_under() {
                    seg += 1;
                } else {
                    over_gen[p.crossing] = start + if m == 0 { 0 } else { seg % m };
                }
            }
        }
        let mut unders = Vec::new();
        let mut self_exp = Vec::new();
        for (k, passes) in d.passes.iter().enumerate() {
            let u: Vec<(usize, i64)> = passes
                .iter()
                .filter(|p| p.is_under())
                .map(|p| (over_gen[p.crossing], d.signs[p.crossing] as i64))
                .collect();
            self_exp.push(u.iter().filter(|(g, _)| owner[*g] == k).map(|(_, s)| s).sum());
            unders.push(u);
        }
        Wirtinger { base, owner, unders, self_exp }
    }

    /// Iterate the relations `x_{t+1} = y^{-ε} x_t y^{ε}` from the base
    /// meridians until the truncated images stop changing.
    fn images(&self, degree: usize) -> Vec<MagnusSeries> {
        let mut img: Vec<MagnusSeries> = self.owner.iter().map(|&k| MagnusSeries::generator(k, degree)).collect();
        for _ in 0..=4 * (degree + 1) {
            let mut changed = false;
            for (k, u) in self.unders.iter().enumerate() {
                let mut cur = img[self.base[k]].clone();
                for (t, &(y, e)) in u.iter().enumerate().take(u.len().saturating_sub(1)) {
                    cur = &(&img[y].pow(-e) * &cur) * &img[y].pow(e);
                    let g = self.base[k] + t + 1;
                    if img[g] != cur {
                        img[g] = cur.clone();
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        img
    }

    fn longitudes(&self, degree: usize) -> Vec<MagnusSeries> {
        let img = self.images(degree);
        self.unders
            .iter()
            .enumerate()
            .map(|(k, u)| {
                let mut l = img[self.base[k]].pow(-self.self_exp[k]);
                for &(y, e) in u {
                    l = &l * &img[y].pow(e);
                }
                l
            })
            .collect()
    }
}

fn check_indices(d: &LinkDiagram, idx: &[usize]) -> Result<()> {
    for &i in idx {
        if i == 0 || i > d.n_components() {
            return Err(MilnorError::NoComponent(i));
        }
    }
    let distinct: BTreeSet<_> = idx.iter().collect();
    if distinct.len() != idx.len() {
        return Err(MilnorError::RepeatedIndex);
    }
    Ok(())
}

fn check_split(lk: &QMat, idx: &[usize]) -> Result<()> {
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            let v = &lk[i - 1][j - 1];
            if !v.is_zero() {
                let (lo, hi) = (i.min(j), i.max(j));
                return Err(MilnorError::NotSplit(lo, hi, v.clone()));
            }
        }
    }
    Ok(())
}

/// `μ̄(i, j, k)`: the coefficient of `X_i X_j` in the `k`-th longitude.
/// Indices are 1-based.
pub fn mu_bar_ijk(d: &LinkDiagram, i: usize, j: usize, k: usize) -> Result<Q> {
    check_indices(d, &[i, j, k])?;
    check_split(&pairwise_linking(d), &[i, j, k])?;
    Ok(d.longitudes()[k - 1].coeff(&[i - 1, j - 1]))
}

/// `μ̄` on every increasing triple that is algebraically split.
pub fn mu_bar_table(d: &LinkDiagram) -> BTreeMap<[usize; 3], Q> {
    let lk = pairwise_linking(d);
    let lon = d.longitudes();
    let n = d.n_components();
    let mut out = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                if check_split(&lk, &[i, j, k]).is_ok() {
                    out.insert([i, j, k], lon[k - 1].coeff(&[i - 1, j - 1]));
                }
            }
        }
    }
    out
}

/// `Σ (Fr_i / 2) strut(i+, i+) − Σ μ̄_ijk tripod(i+, j+, k+)` over `⌊ℓ⌋⁺`.
pub fn build_degree1_part(framings: &[Q], mu: &BTreeMap<[usize; 3], Q>, l: usize) -> DiagramElement {
    let mut out = DiagramElement::zero(ColorSet::top_bottom(l, 0));
    let half = Q::new(One::one(), 2.into());
    for (i, f) in framings.iter().enumerate() {
        out.add_diagram(&JacobiDiagram::strut(Color::top(i + 1), Color::top(i + 1)), f * &half);
    }
    for (&[i, j, k], m) in mu {
        let t = JacobiDiagram::tripod(Color::top(i), Color::top(j), Color::top(k));
        out.add_diagram(&t, -m.clone());
    }
    out
}
