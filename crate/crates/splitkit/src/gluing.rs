//! Gluing legs of a diagram to each other with a bilinear form.

use num::{One, Zero};

use crate::diagram::{Color, ColorSet, DiagramElement, DiagramError, JacobiDiagram};
use crate::Q;

/// Which sets of leg pairs to sum over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlueMode {
    /// Every set of disjoint unordered pairs, including the empty one.
    Some,
    /// Perfect matchings only.
    All,
}

impl std::str::FromStr for GlueMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "some" => Ok(GlueMode::Some),
            "all" => Ok(GlueMode::All),
            _ => Err(format!("unknown mode {s:?}, expected some|all")),
        }
    }
}

/// Sets of disjoint leg pairs of `d` with their weights
/// `Π form(c(v), c(w))`. Pairs of legs on a common trivalent vertex are
/// skipped when `skip_shared_vertex` is set, since they create a tadpole.
pub fn leg_pairings<F>(
    d: &JacobiDiagram,
    form: &F,
    mode: GlueMode,
    skip_shared_vertex: bool,
) -> Vec<(Vec<(usize, usize)>, Q)>
where
    F: Fn(&Color, &Color) -> Q,
{
    let n = d.n_legs();
    let mut out = Vec::new();
    if mode == GlueMode::All && n % 2 == 1 {
        return out;
    }
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    rec(d, form, mode, skip_shared_vertex, &mut used, &mut pairs, Q::one(), &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn rec<F>(
    d: &JacobiDiagram,
    form: &F,
    mode: GlueMode,
    skip: bool,
    used: &mut Vec<bool>,
    pairs: &mut Vec<(usize, usize)>,
    weight: Q,
    out: &mut Vec<(Vec<(usize, usize)>, Q)>,
) where
    F: Fn(&Color, &Color) -> Q,
{
    let Some(i) = used.iter().position(|u| !u) else {
        out.push((pairs.clone(), weight));
        return;
    };
    used[i] = true;
    if mode == GlueMode::Some {
        rec(d, form, mode, skip, used, pairs, weight.clone(), out);
    }
    for j in i + 1..used.len() {
        if used[j] {
            continue;
        }
        if skip && d.leg_neighbor(i).is_some() && d.leg_neighbor(i) == d.leg_neighbor(j) {
            continue;
        }
        let w = form(&d.legs()[i], &d.legs()[j]);
        if w.is_zero() {
            continue;
        }
        used[j] = true;
        pairs.push((i, j));
        rec(d, form, mode, skip, used, pairs, &weight * w, out);
        pairs.pop();
        used[j] = false;
    }
    used[i] = false;
}

/// Sum over leg pairings of each diagram, gluing each chosen pair into an
/// edge and weighting by the form. Unordered pairs, weight `form(c(v), c(w))`.
pub fn glue_with_form<F>(
    e: &DiagramElement,
    form: F,
    mode: GlueMode,
    skip_shared_vertex: bool,
    colors: ColorSet,
) -> Result<DiagramElement, DiagramError>
where
    F: Fn(&Color, &Color) -> Q,
{
    let mut out = DiagramElement::zero(colors).with_cap(e.cap());
    out.set_truncated(e.is_truncated());
    for (d, q) in e.terms() {
        for (pairs, w) in leg_pairings(d, &form, mode, skip_shared_vertex) {
            let glued = d.glue(&pairs)?;
            out.add_diagram(&glued, q * w);
        }
    }
    Ok(out)
}
