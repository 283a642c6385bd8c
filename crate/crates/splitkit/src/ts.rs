//! The category of top-substantial Jacobi diagrams.
//!
//! A morphism `g → f` is stored as `exp_⊔(H/2) ⊔ Y`, where `H` is a symmetric
//! matrix over the colors `1+..g+, 1-..f-` with vanishing top-top block, read
//! as the strut combination `Σ_ij H_ij strut(i, j)`, and `Y` has no strut
//! components. Composition glues every `i+` leg of the left factor to every
//! `i-` leg of the right factor. The strut exponentials compose in closed
//! form; [`compose_by_gluing`] expands them and glues literally.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{
    expand_legs, unit_color, Color, ColorSet, DiagramElement, DiagramError, JacobiDiagram, LinearColor,
};
use crate::linalg::{self, QMat};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TsError {
    #[error("cannot compose: source genus {source_genus} does not match target genus {target_genus}")]
    GenusMismatch { source_genus: usize, target_genus: usize },
    #[error("strut matrix must be square of size {0}")]
    BadShape(usize),
    #[error("strut matrix is not symmetric")]
    NotSymmetric,
    #[error("strut matrix has a nonzero top-top entry at ({0}, {1})")]
    TopTop(usize, usize),
    #[error("Y-part contains a strut component")]
    StrutInY,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Symmetric matrix over `1+..g+, 1-..f-` with zero top-top block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrutMatrix {
    g: usize,
    f: usize,
    m: QMat,
}

impl StrutMatrix {
    pub fn new(g: usize, f: usize, m: QMat) -> Result<Self, TsError> {
        let n = g + f;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(TsError::BadShape(n));
        }
        if !linalg::is_symmetric(&m) {
            return Err(TsError::NotSymmetric);
        }
        for i in 0..g {
            for j in 0..g {
                if !m[i][j].is_zero() {
                    return Err(TsError::TopTop(i, j));
                }
            }
        }
        Ok(StrutMatrix { g, f, m })
    }

    pub fn zero(g: usize, f: usize) -> Self {
        StrutMatrix { g, f, m: linalg::zeros(g + f, g + f) }
    }

    pub fn entries(&self) -> &QMat {
        &self.m
    }

    pub fn labels(&self) -> Vec<Color> {
        ColorSet::top_bottom(self.g, self.f).labels().to_vec()
    }
}

/// `Σ_{k ≤ max_struts} (1/k!) M^{⊔k}` with `M = Σ_ij m_ij strut(c_i, c_j)`.
pub fn exp_strut_matrix(labels: &[Color], m: &QMat, max_struts: usize) -> DiagramElement {
    let colors = ColorSet::new(labels.iter().cloned()).expect("distinct labels");
    let mut gen = DiagramElement::zero(colors.clone());
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            gen.add_diagram(&JacobiDiagram::strut(a.clone(), b.clone()), m[i][j].clone());
        }
    }
    let mut total = DiagramElement::one(colors.clone());
    let mut power = DiagramElement::one(colors);
    for k in 1..=max_struts {
        power = power.disjoint_product(&gen).scaled(&(Q::one() / linalg::qi(k as i64)));
        total = &total + &power;
    }
    total
}

/// Strut exponential of a [`StrutMatrix`], up to `max_struts` struts.
pub fn exp_strut(m: &StrutMatrix, max_struts: usize) -> DiagramElement {
    exp_strut_matrix(&m.labels(), &m.m, max_struts).with_colors(ColorSet::top_bottom(m.g, m.f))
}

/// A morphism `g → f`: `exp_⊔(strut/2) ⊔ y`, with `y` truncated at `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    g: usize,
    f: usize,
    strut: StrutMatrix,
    y: DiagramElement,
    cap: usize,
}

impl Morphism {
    pub fn new(strut: StrutMatrix, y: DiagramElement, cap: usize) -> Result<Self, TsError> {
        let (g, f) = (strut.g, strut.f);
        let colors = ColorSet::top_bottom(g, f);
        let y = y.with_colors(colors).with_cap(Some(cap));
        y.validate()?;
        if y.terms().any(|(d, _)| d.has_strut_component()) {
            return Err(TsError::StrutInY);
        }
        Ok(Morphism { g, f, strut, y, cap })
    }

    /// `exp_⊔(Σ strut(i+, i-))`, with Y-part the empty diagram.
    pub fn identity(g: usize, cap: usize) -> Self {
        let mut m = linalg::zeros(2 * g, 2 * g);
        for i in 0..g {
            m[i][g + i] = Q::one();
            m[g + i][i] = Q::one();
        }
        Morphism {
            g,
            f: g,
            strut: StrutMatrix { g, f: g, m },
            y: DiagramElement::one(ColorSet::top_bottom(g, g)).with_cap(Some(cap)),
            cap,
        }
    }

    pub fn source_genus(&self) -> usize {
        self.g
    }

    pub fn target_genus(&self) -> usize {
        self.f
    }

    pub fn strut(&self) -> &StrutMatrix {
        &self.strut
    }

    pub fn y_part(&self) -> &DiagramElement {
        &self.y
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn colors(&self) -> ColorSet {
        ColorSet::top_bottom(self.g, self.f)
    }

    /// The morphism as a single element, with the strut exponential cut
    /// after `max_struts` struts.
    pub fn expand(&self, max_struts: usize) -> DiagramElement {
        let half = linalg::scale(&self.strut.m, &(Q::one() / linalg::qi(2)));
        let s = exp_strut_matrix(&self.strut.labels(), &half, max_struts);
        s.disjoint_product(&self.y).with_colors(self.colors())
    }
}

fn top_index(c: &Color, g: usize) -> Option<usize> {
    match c.signed_index()? {
        (i, '+') if (1..=g).contains(&i) => Some(i - 1),
        _ => None,
    }
}

fn bottom_index(c: &Color, g: usize) -> Option<usize> {
    match c.signed_index()? {
        (i, '-') if (1..=g).contains(&i) => Some(i - 1),
        _ => None,
    }
}

/// `d ∘ e` for `d: g → f`, `e: h → g`, truncated at i-degree `cap`.
pub fn compose(d: &Morphism, e: &Morphism, cap: usize) -> Result<Morphism, TsError> {
    if d.g != e.f {
        return Err(TsError::GenusMismatch { source_genus: d.g, target_genus: e.f });
    }
    let (g, f, h) = (d.g, d.f, e.g);
    let hd = &d.strut.m;
    let he = &e.strut.m;
    // d: rows/cols [g mid | f bottom]; e: [h top | g mid]
    let p: QMat = (0..g).map(|i| (0..f).map(|x| hd[i][g + x].clone()).collect()).collect();
    let qd: QMat = (0..f).map(|x| (0..f).map(|y| hd[g + x][g + y].clone()).collect()).collect();
    let r: QMat = (0..h).map(|y| (0..g).map(|i| he[y][h + i].clone()).collect()).collect();
    let s: QMat = (0..g).map(|i| (0..g).map(|j| he[h + i][h + j].clone()).collect()).collect();

    // spelled out: any of g, h, f may be 0
    let mut m = linalg::zeros(h + f, h + f);
    for y in 0..h {
        for x in 0..f {
            let v: Q = (0..g).map(|i| &r[y][i] * &p[i][x]).sum();
            m[y][h + x] = v.clone();
            m[h + x][y] = v;
        }
    }
    for x in 0..f {
        for z in 0..f {
            let mut v = qd[x][z].clone();
            for i in 0..g {
                for j in 0..g {
                    v += &p[i][x] * &s[i][j] * &p[j][z];
                }
            }
            m[h + x][h + z] = v;
        }
    }
    let strut = StrutMatrix::new(h, f, m)?;

    // u_i: where a strut of d leaving the middle color i ends up.
    let u: Vec<LinearColor> = (0..g)
        .map(|i| (0..f).filter(|&x| !p[i][x].is_zero()).map(|x| (Color::bottom(x + 1), p[i][x].clone())).collect())
        .collect();
    // z_i: a middle leg of d's Y-part continued through one strut of e.
    let z: Vec<LinearColor> = (0..g)
        .map(|i| {
            let mut lc = LinearColor::new();
            for y in 0..h {
                if !r[y][i].is_zero() {
                    *lc.entry(Color::top(y + 1)).or_insert_with(Q::zero) += &r[y][i];
                }
            }
            for j in 0..g {
                for (c, a) in &u[j] {
                    *lc.entry(c.clone()).or_insert_with(Q::zero) += &s[i][j] * a;
                }
            }
            lc.retain(|_, q| !q.is_zero());
            lc
        })
        .collect();

    let colors = ColorSet::top_bottom(h, f);
    let pairs: Vec<(&JacobiDiagram, &Q, &JacobiDiagram, &Q)> =
        d.y.terms().flat_map(|(a, qa)| e.y.terms().map(move |(b, qb)| (a, qa, b, qb))).collect();
    let parts: Vec<(Vec<(JacobiDiagram, Q)>, bool)> = pairs
        .par_iter()
        .map(|&(a, qa, b, qb)| {
            if a.idegree() + b.idegree() > cap {
                return (Vec::new(), true);
            }
            (glue_y_pair(a, b, g, &u, &z, &s, &(qa * qb)), false)
        })
        .collect();
    let mut y = DiagramElement::zero(colors).with_cap(Some(cap));
    y.set_truncated(d.y.is_truncated() || e.y.is_truncated());
    for (terms, truncated) in parts {
        y.set_truncated(truncated);
        for (dd, q) in terms {
            y.add_diagram(&dd, q);
        }
    }
    Ok(Morphism { g: h, f, strut, y, cap })
}

/// All gluings of one Y-diagram pair, as raw diagrams with coefficients.
fn glue_y_pair(
    a: &JacobiDiagram,
    b: &JacobiDiagram,
    g: usize,
    u: &[LinearColor],
    z: &[LinearColor],
    s: &QMat,
    coeff: &Q,
) -> Vec<(JacobiDiagram, Q)> {
    let na = a.n_legs();
    let a_mid: Vec<(usize, usize)> =
        a.legs().iter().enumerate().filter_map(|(k, c)| top_index(c, g).map(|i| (k, i))).collect();
    let b_mid: Vec<(usize, usize)> =
        b.legs().iter().enumerate().filter_map(|(k, c)| bottom_index(c, g).map(|i| (k, i))).collect();
    let union = a.disjoint_union(b);
    let mut out = Vec::new();

    // Phase 1: each middle leg of b goes to a strut of d (recolored u) or to a middle leg of a.
    let mut matched_a = vec![false; a_mid.len()];
    let mut plan = Plan::default();
    let mut emit = |plan: &Plan, matched_a: &[bool]| {
        // Phase 2: the remaining middle legs of a pair up through e's middle
        // struts or continue through one strut of e.
        let rest: Vec<usize> = (0..a_mid.len()).filter(|&k| !matched_a[k]).collect();
        let mut sp = Vec::new();
        pair_rest(&rest, &a_mid, s, &mut sp, Q::one(), &mut |pairs: &[(usize, usize)], w: &Q| {
            let mut glue: Vec<(usize, usize)> =
                plan.matches.iter().map(|&(ka, kb)| (a_mid[ka].0, na + b_mid[kb].0)).collect();
            let mut paired = BTreeSet::new();
            for &(x, y) in pairs {
                glue.push((a_mid[x].0, a_mid[y].0));
                paired.insert(x);
                paired.insert(y);
            }
            let glued_legs: BTreeSet<usize> = glue.iter().flat_map(|&(x, y)| [x, y]).collect();
            let mut images = Vec::new();
            for leg in 0..union.n_legs() {
                if glued_legs.contains(&leg) {
                    continue;
                }
                let c = &union.legs()[leg];
                let img = if leg < na {
                    match top_index(c, g) {
                        Some(i) => z[i].clone(),
                        None => unit_color(c),
                    }
                } else {
                    match bottom_index(c, g) {
                        Some(i) => u[i].clone(),
                        None => unit_color(c),
                    }
                };
                images.push(img);
            }
            let glued = union.glue(&glue).expect("Y-parts have no strut components");
            for (dd, q) in expand_legs(&glued, &images) {
                out.push((dd, q * w * coeff));
            }
        });
    };
    assign_b(0, &a_mid, &b_mid, &mut matched_a, &mut plan, &mut emit);
    out
}

#[derive(Default)]
struct Plan {
    matches: Vec<(usize, usize)>,
}

fn assign_b(
    k: usize,
    a_mid: &[(usize, usize)],
    b_mid: &[(usize, usize)],
    matched_a: &mut Vec<bool>,
    plan: &mut Plan,
    emit: &mut dyn FnMut(&Plan, &[bool]),
) {
    if k == b_mid.len() {
        emit(plan, matched_a);
        return;
    }
    assign_b(k + 1, a_mid, b_mid, matched_a, plan, emit);
    for ka in 0..a_mid.len() {
        if matched_a[ka] || a_mid[ka].1 != b_mid[k].1 {
            continue;
        }
        matched_a[ka] = true;
        plan.matches.push((ka, k));
        assign_b(k + 1, a_mid, b_mid, matched_a, plan, emit);
        plan.matches.pop();
        matched_a[ka] = false;
    }
}

fn pair_rest(
    rest: &[usize],
    a_mid: &[(usize, usize)],
    s: &QMat,
    pairs: &mut Vec<(usize, usize)>,
    w: Q,
    emit: &mut dyn FnMut(&[(usize, usize)], &Q),
) {
    let Some((&first, tail)) = rest.split_first() else {
        emit(pairs, &w);
        return;
    };
    pair_rest(tail, a_mid, s, pairs, w.clone(), emit);
    for (pos, &other) in tail.iter().enumerate() {
        let f = &s[a_mid[first].1][a_mid[other].1];
        if f.is_zero() {
            continue;
        }
        let remaining: Vec<usize> = tail.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &x)| x).collect();
        pairs.push((first, other));
        pair_rest(&remaining, a_mid, s, pairs, &w * f, emit);
        pairs.pop();
    }
}

/// `d ⊗ e`: disjoint union with the colors of `e` shifted past those of `d`.
pub fn tensor(d: &Morphism, e: &Morphism) -> Morphism {
    let (g, f) = (d.g + e.g, d.f + e.f);
    let pos_d = |i: usize| if i < d.g { i } else { g + (i - d.g) };
    let pos_e = |i: usize| if i < e.g { d.g + i } else { g + d.f + (i - e.g) };
    let mut m = linalg::zeros(g + f, g + f);
    for i in 0..d.g + d.f {
        for j in 0..d.g + d.f {
            m[pos_d(i)][pos_d(j)] = d.strut.m[i][j].clone();
        }
    }
    for i in 0..e.g + e.f {
        for j in 0..e.g + e.f {
            m[pos_e(i)][pos_e(j)] = e.strut.m[i][j].clone();
        }
    }
    let shift: BTreeMap<Color, LinearColor> = e
        .colors()
        .labels()
        .iter()
        .map(|c| {
            let img = match c.signed_index() {
                Some((i, '+')) => Color::top(d.g + i),
                Some((j, _)) => Color::bottom(d.f + j),
                None => unreachable!("morphism colors are signed"),
            };
            (c.clone(), unit_color(&img))
        })
        .collect();
    let colors = ColorSet::top_bottom(g, f);
    let ey = e.y.recolor(colors.clone(), |c| shift.get(c).cloned()).expect("colors of e are shifted");
    let cap = d.cap.min(e.cap);
    let y = d.y.disjoint_product(&ey).with_colors(colors).with_cap(Some(cap));
    Morphism { g, f, strut: StrutMatrix { g, f, m }, y, cap }
}

/// Glue left and right along the colors in `over`, summing over all
/// color-preserving bijections between their `over`-colored legs.
pub fn glue_pairing(left: &DiagramElement, right: &DiagramElement, over: &[Color]) -> Result<DiagramElement, TsError> {
    let s: BTreeSet<Color> = over.iter().cloned().collect();
    let cl = left.colors().without(&s);
    let cr = right.colors().without(&s);
    if let Some(c) = cl.labels().iter().find(|c| cr.contains(c)) {
        return Err(DiagramError::ColorOverlap(c.to_string()).into());
    }
    let mut out = DiagramElement::zero(cl.union(&cr));
    let signature =
        |d: &JacobiDiagram| -> Vec<usize> { s.iter().map(|c| d.legs().iter().filter(|l| *l == c).count()).collect() };
    let mut by_sig: BTreeMap<Vec<usize>, Vec<(&JacobiDiagram, &Q)>> = BTreeMap::new();
    for (b, qb) in right.terms() {
        by_sig.entry(signature(b)).or_default().push((b, qb));
    }
    for (a, qa) in left.terms() {
        let Some(partners) = by_sig.get(&signature(a)) else { continue };
        for &(b, qb) in partners {
            let union = a.disjoint_union(b);
            let na = a.n_legs();
            let mut groups = Vec::new();
            let mut ok = true;
            for c in &s {
                let la: Vec<usize> = (0..na).filter(|&k| &a.legs()[k] == c).collect();
                let lb: Vec<usize> = (0..b.n_legs()).filter(|&k| &b.legs()[k] == c).map(|k| na + k).collect();
                if la.len() != lb.len() {
                    ok = false;
                    break;
                }
                groups.push((la, lb));
            }
            if !ok {
                continue;
            }
            let q = qa * qb;
            let mut pairs = Vec::new();
            let mut err = None;
            bijections(&groups, 0, &mut pairs, &mut |pairs| match union.glue(pairs) {
                Ok(glued) => out.add_diagram(&glued, q.clone()),
                Err(e) => err = Some(e),
            });
            if let Some(e) = err {
                return Err(e.into());
            }
        }
    }
    Ok(out)
}

type Groups = [(Vec<usize>, Vec<usize>)];

fn bijections(groups: &Groups, g: usize, pairs: &mut Vec<(usize, usize)>, emit: &mut dyn FnMut(&[(usize, usize)])) {
    if g == groups.len() {
        emit(pairs);
        return;
    }
    let (la, lb) = &groups[g];
    let mut used = vec![false; lb.len()];
    fn rec(
        k: usize,
        la: &[usize],
        lb: &[usize],
        used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        next: &mut dyn FnMut(&mut Vec<(usize, usize)>),
    ) {
        if k == la.len() {
            next(pairs);
            return;
        }
        for j in 0..lb.len() {
            if !used[j] {
                used[j] = true;
                pairs.push((la[k], lb[j]));
                rec(k + 1, la, lb, used, pairs, next);
                pairs.pop();
                used[j] = false;
            }
        }
    }
    rec(0, la, lb, &mut used, pairs, &mut |pairs| bijections(groups, g + 1, pairs, emit));
}

/// Reference composition: expand both strut exponentials (at most
/// `d_struts` and `e_struts` struts) and glue literally. Exact for every
/// output diagram whose contributing gluings stay within those bounds.
pub fn compose_by_gluing(
    d: &Morphism,
    e: &Morphism,
    d_struts: usize,
    e_struts: usize,
    cap: usize,
) -> Result<DiagramElement, TsError> {
    if d.g != e.f {
        return Err(TsError::GenusMismatch { source_genus: d.g, target_genus: e.f });
    }
    let g = d.g;
    let mid = |i: usize| Color::new(&format!("m{i}"));
    let de = d.expand(d_struts);
    let ee = e.expand(e_struts);
    let dl: Vec<Color> = (1..=g).map(mid).chain((1..=d.f).map(Color::bottom)).collect();
    let el: Vec<Color> = (1..=e.g).map(Color::top).chain((1..=g).map(mid)).collect();
    let dm = de.recolor(ColorSet::new(dl)?, |c| {
        Some(unit_color(&top_index(c, g).map_or_else(|| c.clone(), |i| mid(i + 1))))
    })?;
    let em = ee.recolor(ColorSet::new(el)?, |c| {
        Some(unit_color(&bottom_index(c, g).map_or_else(|| c.clone(), |i| mid(i + 1))))
    })?;
    let over: Vec<Color> = (1..=g).map(mid).collect();
    let glued = glue_pairing(&dm, &em, &over)?;
    Ok(glued.with_colors(ColorSet::top_bottom(e.g, d.f)).with_cap(Some(cap)))
}
