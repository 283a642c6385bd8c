//! IHX relators and reduction to normal form.
//!
//! The IHX relation at an internal edge only touches diagrams with the same
//! i-degree and leg multiset, so each stratum splits into classes closed
//! under IHX moves. A class is computed by closure from any member, its
//! relators are row-reduced, and the result is memoized for every member.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use num::{One, Zero};

use super::{canonical_as, Color, ColorSet, DiagramElement, DiagramError, JacobiDiagram};
use crate::Q;

/// Which part of the diagram space a stratum count refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// All diagrams.
    Full,
    /// Diagrams without strut components.
    Y,
}

/// The three diagrams of the IHX relation at internal edge `(hu, hv)`,
/// with signs, written as the cyclic sum `T(a,b,c,d) + T(a,c,d,b) + T(a,d,b,c)`
/// where `T(a,b,c,d)` has cyclic orders `(e,a,b)` at one end of the edge and
/// `(e,c,d)` at the other. The input diagram is `T(a,b,c,d)`.
fn ihx_terms(d: &JacobiDiagram, hu: usize, hv: usize) -> [JacobiDiagram; 3] {
    let (u, su) = (hu / 3, hu % 3);
    let (v, sv) = (hv / 3, hv % 3);
    let slots_u = [3 * u + (su + 1) % 3, 3 * u + (su + 2) % 3];
    let slots_v = [3 * v + (sv + 1) % 3, 3 * v + (sv + 2) % 3];
    let ends = [slots_u[0], slots_u[1], slots_v[0], slots_v[1]];
    let build = |order: [usize; 4]| {
        // order[k] = which end sits in target slot k
        let targets = [slots_u[0], slots_u[1], slots_v[0], slots_v[1]];
        let mut new_half = [0usize; 4];
        for k in 0..4 {
            new_half[order[k]] = targets[k];
        }
        let mut partner: Vec<usize> = (0..d.n_half_edges()).map(|h| d.partner(h)).collect();
        for x in 0..4 {
            let ext = d.partner(ends[x]);
            match ends.iter().position(|&e| e == ext) {
                Some(y) => partner[new_half[x]] = new_half[y],
                None => {
                    partner[new_half[x]] = ext;
                    partner[ext] = new_half[x];
                }
            }
        }
        JacobiDiagram::from_raw_unchecked(d.idegree(), d.legs().to_vec(), partner)
    };
    // ends: 0 = a, 1 = b, 2 = c, 3 = d
    [build([0, 1, 2, 3]), build([0, 2, 3, 1]), build([0, 3, 1, 2])]
}

fn relator_terms(d: &JacobiDiagram, hu: usize, hv: usize) -> BTreeMap<JacobiDiagram, Q> {
    let mut row: BTreeMap<JacobiDiagram, Q> = BTreeMap::new();
    for t in ihx_terms(d, hu, hv) {
        if let Some((s, c)) = canonical_as(&t) {
            let e = row.entry(c).or_insert_with(Q::zero);
            *e += Q::from_integer(s.into());
        }
    }
    row.retain(|_, q| !q.is_zero());
    row
}

/// All AS-nonzero canonical diagrams with `idegree` trivalent vertices and
/// the given leg colors.
pub fn enumerate_stratum(idegree: usize, legs: &[Color]) -> BTreeSet<JacobiDiagram> {
    let mut legs = legs.to_vec();
    legs.sort();
    let n = 3 * idegree + legs.len();
    let mut out = BTreeSet::new();
    if n % 2 == 1 {
        return out;
    }
    let mut partner = vec![usize::MAX; n];
    let ctx = Enum { n_tri: idegree, legs: &legs };
    ctx.extend(&mut partner, &mut out);
    out
}

struct Enum<'a> {
    n_tri: usize,
    legs: &'a [Color],
}

impl Enum<'_> {
    fn extend(&self, partner: &mut Vec<usize>, out: &mut BTreeSet<JacobiDiagram>) {
        let Some(h) = partner.iter().position(|&p| p == usize::MAX) else {
            let d = JacobiDiagram::from_raw_unchecked(self.n_tri, self.legs.to_vec(), partner.clone());
            if let Some((_, c)) = canonical_as(&d) {
                out.insert(c);
            }
            return;
        };
        let base = 3 * self.n_tri;
        let mut fresh_vertex_used = false;
        let mut colors_used: Vec<&Color> = Vec::new();
        for k in h + 1..partner.len() {
            if partner[k] != usize::MAX {
                continue;
            }
            if k < base {
                let v = k / 3;
                if h < base && v == h / 3 {
                    continue;
                }
                let untouched = (3 * v..3 * v + 3).all(|s| partner[s] == usize::MAX);
                if untouched {
                    // Untouched vertices are interchangeable, and so are their slots.
                    if fresh_vertex_used || k % 3 != 0 {
                        continue;
                    }
                    fresh_vertex_used = true;
                } else {
                    // Two free slots on one vertex differ only by orientation.
                    let free: Vec<usize> = (3 * v..3 * v + 3).filter(|&s| partner[s] == usize::MAX && s != h).collect();
                    if free.len() == 2 && k != free[0] {
                        continue;
                    }
                }
            } else {
                let c = &self.legs[k - base];
                if colors_used.contains(&c) {
                    continue;
                }
                colors_used.push(c);
            }
            partner[h] = k;
            partner[k] = h;
            self.extend(partner, out);
            partner[h] = usize::MAX;
            partner[k] = usize::MAX;
        }
    }
}

/// IHX relators for one stratum: one per diagram and internal edge, deduplicated.
pub fn ihx_relators(colors: &ColorSet, idegree: usize, legs: &[Color]) -> Result<Vec<DiagramElement>, DiagramError> {
    for c in legs {
        if !colors.contains(c) {
            return Err(DiagramError::UnknownColor(c.to_string()));
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for d in enumerate_stratum(idegree, legs) {
        for (hu, hv) in d.internal_edges() {
            let row = relator_terms(&d, hu, hv);
            if row.is_empty() || !seen.insert(row.clone().into_iter().collect::<Vec<_>>()) {
                continue;
            }
            let mut e = DiagramElement::zero(colors.clone());
            for (dd, q) in row {
                e.add_canonical(dd, q);
            }
            out.push(e);
        }
    }
    Ok(out)
}

/// Row-reduced relators of one IHX class. Pivots are the larger diagrams in
/// the derived order; each pivot is rewritten in terms of non-pivots.
struct ClassReduction {
    rewrite: HashMap<JacobiDiagram, Vec<(JacobiDiagram, Q)>>,
}

type Memo = RwLock<HashMap<JacobiDiagram, Arc<ClassReduction>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn class_of(d: &JacobiDiagram) -> Arc<ClassReduction> {
    if let Some(c) = memo().read().unwrap().get(d) {
        return c.clone();
    }
    let mut members = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut relators = Vec::new();
    members.insert(d.clone());
    queue.push_back(d.clone());
    while let Some(x) = queue.pop_front() {
        for (hu, hv) in x.internal_edges() {
            let row = relator_terms(&x, hu, hv);
            for y in row.keys() {
                if members.insert(y.clone()) {
                    queue.push_back(y.clone());
                }
            }
            if !row.is_empty() {
                relators.push(row);
            }
        }
    }
    let members: Vec<JacobiDiagram> = members.into_iter().collect();
    let index: HashMap<&JacobiDiagram, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut basis: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
    for rel in relators {
        let mut row: BTreeMap<usize, Q> = rel.into_iter().map(|(k, q)| (index[&k], q)).collect();
        let hits: Vec<usize> = row.keys().filter(|k| basis.contains_key(k)).copied().collect();
        for p in hits {
            let Some(f) = row.get(&p).cloned() else { continue };
            for (j, q) in &basis[&p] {
                let e = row.entry(*j).or_insert_with(Q::zero);
                *e -= &f * q;
                if e.is_zero() {
                    row.remove(j);
                }
            }
        }
        let Some((&p, lead)) = row.iter().next_back() else { continue };
        let inv = Q::one() / lead;
        for q in row.values_mut() {
            *q *= &inv;
        }
        for other in basis.values_mut() {
            if let Some(f) = other.get(&p).cloned() {
                for (j, q) in &row {
                    let e = other.entry(*j).or_insert_with(Q::zero);
                    *e -= &f * q;
                    if e.is_zero() {
                        other.remove(j);
                    }
                }
            }
        }
        basis.insert(p, row);
    }
    let rewrite = basis
        .into_iter()
        .map(|(p, row)| {
            let rest = row.into_iter().filter(|(j, _)| *j != p).map(|(j, q)| (members[j].clone(), -q)).collect();
            (members[p].clone(), rest)
        })
        .collect();
    let class = Arc::new(ClassReduction { rewrite });
    let mut w = memo().write().unwrap();
    if let Some(c) = w.get(d) {
        return c.clone();
    }
    for m in members {
        w.entry(m).or_insert_with(|| class.clone());
    }
    class
}

/// Reduce modulo IHX. Two elements are equal in the quotient iff their normal
/// forms are equal.
pub fn normal_form(e: &DiagramElement) -> DiagramElement {
    e.map_diagrams(e.colors().clone(), |d| {
        if d.internal_edges().is_empty() {
            return vec![(d.clone(), Q::one())];
        }
        match class_of(d).rewrite.get(d) {
            Some(rest) => rest.clone(),
            None => vec![(d.clone(), Q::one())],
        }
    })
}

/// Dimension of one (i-degree, leg multiset) stratum after AS and IHX.
pub fn dim_stratum(colors: &ColorSet, idegree: usize, legs: &[Color], flavor: Flavor) -> Result<usize, DiagramError> {
    for c in legs {
        if !colors.contains(c) {
            return Err(DiagramError::UnknownColor(c.to_string()));
        }
    }
    Ok(enumerate_stratum(idegree, legs)
        .into_iter()
        .filter(|d| flavor == Flavor::Full || !d.has_strut_component())
        .filter(|d| d.internal_edges().is_empty() || !class_of(d).rewrite.contains_key(d))
        .count())
}
