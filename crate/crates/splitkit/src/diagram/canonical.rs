//! Canonical forms modulo graph isomorphism and AS.
//!
//! Each connected component is canonically labeled by individualization and
//! refinement on its vertex multigraph, minimizing the adjacency code over
//! all leaves of the search tree. Leaves realizing the minimum differ by
//! automorphisms, which are checked for odd orientation parity.

use std::collections::BTreeMap;

use super::{Color, JacobiDiagram};

/// `Some((sign, canonical))` with `d = sign · canonical`, or `None` when `d`
/// vanishes by AS (a tadpole, or an automorphism reversing an odd number of
/// vertex orientations).
pub fn canonical_as(d: &JacobiDiagram) -> Option<(i8, JacobiDiagram)> {
    if d.has_tadpole() {
        return None;
    }
    let labels = d.component_labels();
    let n_comp = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut members = vec![Vec::new(); n_comp];
    for (v, &c) in labels.iter().enumerate() {
        members[c].push(v);
    }
    let mut comps = Vec::with_capacity(n_comp);
    let mut sign = 1i8;
    for verts in &members {
        let c = canonical_component(d, verts)?;
        sign *= c.sign;
        comps.push(c);
    }
    comps.sort_by(|a, b| a.key.cmp(&b.key));
    Some((sign, assemble(&comps)))
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    n_tri: usize,
    leg_colors: Vec<Color>,
    code: Vec<u8>,
}

struct Component {
    key: Key,
    sign: i8,
}

/// Local multigraph of one component.
struct Local {
    n_tri: usize,
    n: usize,
    adj: Vec<Vec<u8>>,
    /// Edges as ((vertex, slot), (vertex, slot)) in local indices.
    edges: Vec<((usize, usize), (usize, usize))>,
}

fn canonical_component(d: &JacobiDiagram, verts: &[usize]) -> Option<Component> {
    // Trivalent vertices come first in `verts` because global numbering does.
    let mut local = vec![usize::MAX; d.n_vertices()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let n = verts.len();
    let n_tri = verts.iter().filter(|&&v| v < d.idegree()).count();
    let mut adj = vec![vec![0u8; n]; n];
    let mut edges = Vec::new();
    let slot_of = |h: usize| if h < 3 * d.idegree() { h % 3 } else { 0 };
    for &v in verts {
        for h in d.half_edges_of(v) {
            let p = d.partner(h);
            if h < p {
                let (a, b) = (local[v], local[d.vertex_of(p)]);
                adj[a][b] += 1;
                adj[b][a] += 1;
                edges.push(((a, slot_of(h)), (b, slot_of(p))));
            }
        }
    }
    let g = Local { n_tri, n, adj, edges };

    // Initial cells: trivalent vertices, then legs grouped by color.
    let mut by_color: BTreeMap<&Color, Vec<usize>> = BTreeMap::new();
    for (i, &v) in verts.iter().enumerate().skip(n_tri) {
        by_color.entry(&d.legs()[v - d.idegree()]).or_default().push(i);
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    if n_tri > 0 {
        cells.push((0..n_tri).collect());
    }
    let mut leg_colors = Vec::new();
    for (c, vs) in by_color {
        leg_colors.extend(std::iter::repeat_n(c.clone(), vs.len()));
        cells.push(vs);
    }

    let mut search = Search { g: &g, best: None, leaves: Vec::new() };
    search.run(cells);
    let best = search.best.take().expect("search visits at least one leaf");
    let leaves = std::mem::take(&mut search.leaves);
    let first = &leaves[0];
    for other in &leaves[1..] {
        let mut alpha = vec![0; n];
        for i in 0..n {
            alpha[first[i]] = other[i];
        }
        if automorphism_is_odd(&g, &alpha) {
            return None;
        }
    }
    let sign = orientation_sign(&g, first);
    Some(Component { key: Key { n_tri, leg_colors, code: best }, sign })
}

struct Search<'a> {
    g: &'a Local,
    best: Option<Vec<u8>>,
    leaves: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<Vec<usize>>) {
        refine(&mut cells, &self.g.adj, self.g.n);
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
                let code = adjacency_code(&self.g.adj, &order);
                match self.best.as_ref().map(|b| code.cmp(b)) {
                    None | Some(std::cmp::Ordering::Less) => {
                        self.best = Some(code);
                        self.leaves = vec![order];
                    }
                    Some(std::cmp::Ordering::Equal) => self.leaves.push(order),
                    Some(std::cmp::Ordering::Greater) => {}
                }
            }
            Some(i) => {
                for &v in &cells[i] {
                    let rest: Vec<usize> = cells[i].iter().copied().filter(|&w| w != v).collect();
                    let mut next = Vec::with_capacity(cells.len() + 1);
                    next.extend(cells[..i].iter().cloned());
                    next.push(vec![v]);
                    next.push(rest);
                    next.extend(cells[i + 1..].iter().cloned());
                    self.run(next);
                }
            }
        }
    }
}

/// Split cells by the multiset of (neighbor cell, multiplicity) until stable.
fn refine(cells: &mut Vec<Vec<usize>>, adj: &[Vec<u8>], n: usize) {
    let mut cell_of = vec![0usize; n];
    loop {
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sigs: Vec<(Vec<(usize, u8)>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut s: Vec<(usize, u8)> =
                        (0..n).filter(|&w| adj[v][w] > 0).map(|w| (cell_of[w], adj[v][w])).collect();
                    s.sort_unstable();
                    (s, v)
                })
                .collect();
            sigs.sort();
            let mut group = vec![sigs[0].1];
            for k in 1..sigs.len() {
                if sigs[k].0 == sigs[k - 1].0 {
                    group.push(sigs[k].1);
                } else {
                    changed = true;
                    next.push(std::mem::take(&mut group));
                    group.push(sigs[k].1);
                }
            }
            next.push(group);
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

fn adjacency_code(adj: &[Vec<u8>], order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            code.push(adj[order[i]][order[j]]);
        }
    }
    code
}

fn odd_permutation(p: [usize; 3]) -> bool {
    // A permutation of three slots preserves the cyclic order iff it is a rotation.
    !((p[1] + 3 - p[0]) % 3 == 1 && (p[2] + 3 - p[1]) % 3 == 1)
}

/// Index edges by unordered endpoint pair, in list order.
fn edge_groups(g: &Local, pos: impl Fn(usize) -> usize) -> BTreeMap<(usize, usize), Vec<usize>> {
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (e, &((a, _), (b, _))) in g.edges.iter().enumerate() {
        let (x, y) = (pos(a), pos(b));
        groups.entry((x.min(y), x.max(y))).or_default().push(e);
    }
    groups
}

fn automorphism_is_odd(g: &Local, alpha: &[usize]) -> bool {
    let groups = edge_groups(g, |v| v);
    // slot_map[v][s] = image slot at alpha(v)
    let mut slot_map = vec![[usize::MAX; 3]; g.n_tri];
    for idxs in groups.values() {
        for (k, &e) in idxs.iter().enumerate() {
            let ((a, sa), (b, sb)) = g.edges[e];
            let (ia, ib) = (alpha[a], alpha[b]);
            let img = groups[&(ia.min(ib), ia.max(ib))][k];
            let ((c, sc), (d, sd)) = g.edges[img];
            // Endpoint of the image edge at alpha(a); for an edge between two
            // vertices swapped by alpha either orientation of the image is valid.
            let (ta, tb) = if c == ia && d == ib { (sc, sd) } else { (sd, sc) };
            if a < g.n_tri {
                slot_map[a][sa] = ta;
            }
            if b < g.n_tri {
                slot_map[b][sb] = tb;
            }
        }
    }
    slot_map.iter().filter(|p| odd_permutation(**p)).count() % 2 == 1
}

/// Sign relating the component's orientation to the reference orientation of
/// its canonical form (slots ordered by neighbor position, then parallel index).
fn orientation_sign(g: &Local, order: &[usize]) -> i8 {
    let mut pos = vec![0; g.n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let groups = edge_groups(g, |v| pos[v]);
    // Reference slot lists per canonical vertex: sorted (neighbor pos, k).
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n];
    let mut parallel = vec![0usize; g.edges.len()];
    for ((x, y), idxs) in &groups {
        for (k, &e) in idxs.iter().enumerate() {
            parallel[e] = k;
            incident[*x].push((*y, k));
            incident[*y].push((*x, k));
        }
    }
    for l in incident.iter_mut() {
        l.sort_unstable();
    }
    let mut perm = vec![[0usize; 3]; g.n_tri];
    for (e, &((a, sa), (b, sb))) in g.edges.iter().enumerate() {
        let k = parallel[e];
        if a < g.n_tri {
            perm[a][sa] = incident[pos[a]].binary_search(&(pos[b], k)).unwrap();
        }
        if b < g.n_tri {
            perm[b][sb] = incident[pos[b]].binary_search(&(pos[a], k)).unwrap();
        }
    }
    if perm.iter().filter(|p| odd_permutation(**p)).count() % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Rebuild the diagram from sorted component codes with reference orientation.
fn assemble(comps: &[Component]) -> JacobiDiagram {
    let n_tri: usize = comps.iter().map(|c| c.key.n_tri).sum();
    let n_legs: usize = comps.iter().map(|c| c.key.leg_colors.len()).sum();
    let mut partner = vec![0; 3 * n_tri + n_legs];
    let mut legs = Vec::with_capacity(n_legs);
    let (mut tri_off, mut leg_off) = (0, 0);
    for c in comps {
        let k = &c.key;
        let n = k.n_tri + k.leg_colors.len();
        // Half-edge of the canonical vertex i at its `slot`-th incident edge.
        let half = |i: usize, slot: usize| {
            if i < k.n_tri {
                3 * (tri_off + i) + slot
            } else {
                3 * n_tri + leg_off + (i - k.n_tri)
            }
        };
        let mut next_slot = vec![0usize; n];
        let mut pending: Vec<(usize, usize)> = Vec::new();
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                for _ in 0..k.code[idx] {
                    pending.push((i, j));
                }
                idx += 1;
            }
        }
        // Slots at each vertex follow (neighbor, parallel index) order.
        let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(i, j)) in pending.iter().enumerate() {
            inc[i].push((j, e));
            inc[j].push((i, e));
        }
        let mut at = vec![[usize::MAX; 2]; pending.len()];
        for v in 0..n {
            inc[v].sort_unstable();
            for &(_, e) in &inc[v] {
                let side = if pending[e].0 == v { 0 } else { 1 };
                at[e][side] = half(v, next_slot[v]);
                next_slot[v] += 1;
            }
        }
        for e in &at {
            partner[e[0]] = e[1];
            partner[e[1]] = e[0];
        }
        legs.extend(k.leg_colors.iter().cloned());
        tri_off += k.n_tri;
        leg_off += k.leg_colors.len();
    }
    JacobiDiagram::from_raw_unchecked(n_tri, legs, partner)
}
