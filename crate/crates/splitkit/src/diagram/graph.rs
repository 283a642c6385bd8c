use std::collections::BTreeMap;

use super::{Color, DiagramError};

/// A uni-trivalent graph with oriented trivalent vertices and colored legs.
///
/// Half-edges are numbered densely: trivalent vertex `v` owns half-edges
/// `3v, 3v+1, 3v+2` in its cyclic order, and leg `i` owns half-edge
/// `3·n_tri + i`. `partner` is the fixed-point-free involution given by the
/// edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JacobiDiagram {
    n_tri: usize,
    legs: Vec<Color>,
    partner: Vec<usize>,
}

/// Either endpoint kind of a half-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Tri { vertex: usize, slot: usize },
    Leg(usize),
}

impl std::fmt::Debug for JacobiDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Jacobi(tri={}, legs={:?}, edges=[", self.n_tri, self.legs)?;
        let mut first = true;
        for h in 0..self.partner.len() {
            let p = self.partner[h];
            if h < p {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{h}-{p}")?;
            }
        }
        write!(f, "])")
    }
}

impl JacobiDiagram {
    /// Build from the dense representation, checking the involution.
    pub fn from_raw(n_tri: usize, legs: Vec<Color>, partner: Vec<usize>) -> Result<Self, DiagramError> {
        let n = 3 * n_tri + legs.len();
        if partner.len() != n {
            return Err(DiagramError::Malformed(format!("expected {n} half-edges, got {}", partner.len())));
        }
        for (h, &p) in partner.iter().enumerate() {
            if p >= n || p == h || partner[p] != h {
                return Err(DiagramError::Malformed(format!("half-edge {h} is not matched consistently")));
            }
        }
        Ok(JacobiDiagram { n_tri, legs, partner })
    }

    pub(crate) fn from_raw_unchecked(n_tri: usize, legs: Vec<Color>, partner: Vec<usize>) -> Self {
        debug_assert!(JacobiDiagram::from_raw(n_tri, legs.clone(), partner.clone()).is_ok());
        JacobiDiagram { n_tri, legs, partner }
    }

    /// Build from arbitrary half-edge identifiers: each trivalent vertex lists
    /// its three half-edges in cyclic order, each leg names its half-edge, and
    /// `edges` is a perfect matching.
    pub fn from_half_edges(
        trivalent: &[[usize; 3]],
        legs: &[(usize, Color)],
        edges: &[(usize, usize)],
    ) -> Result<Self, DiagramError> {
        let mut index = BTreeMap::new();
        let mut next = 0usize;
        let mut claim = |h: usize| -> Result<usize, DiagramError> {
            if index.insert(h, next).is_some() {
                return Err(DiagramError::Malformed(format!("half-edge {h} belongs to two vertices")));
            }
            next += 1;
            Ok(next - 1)
        };
        for t in trivalent {
            for &h in t {
                claim(h)?;
            }
        }
        for (h, _) in legs {
            claim(*h)?;
        }
        let n = next;
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in edges {
            let ia =
                *index.get(&a).ok_or_else(|| DiagramError::Malformed(format!("edge uses unknown half-edge {a}")))?;
            let ib =
                *index.get(&b).ok_or_else(|| DiagramError::Malformed(format!("edge uses unknown half-edge {b}")))?;
            if ia == ib || partner[ia] != usize::MAX || partner[ib] != usize::MAX {
                return Err(DiagramError::Malformed(format!("edge ({a},{b}) reuses a half-edge")));
            }
            partner[ia] = ib;
            partner[ib] = ia;
        }
        if let Some(h) = partner.iter().position(|&p| p == usize::MAX) {
            let orig = index.iter().find(|(_, &v)| v == h).map(|(k, _)| *k).unwrap_or(h);
            return Err(DiagramError::Malformed(format!("dangling half-edge {orig}")));
        }
        let legs = legs.iter().map(|(_, c)| c.clone()).collect();
        JacobiDiagram::from_raw(trivalent.len(), legs, partner)
    }

    /// `(trivalent, legs, edges)` in the half-edge numbering of this value.
    pub fn to_half_edges(&self) -> (Vec<[usize; 3]>, Vec<(usize, Color)>, Vec<(usize, usize)>) {
        let tri = (0..self.n_tri).map(|v| [3 * v, 3 * v + 1, 3 * v + 2]).collect();
        let legs = self.legs.iter().enumerate().map(|(i, c)| (self.leg_half_edge(i), c.clone())).collect();
        let edges = (0..self.partner.len()).filter(|&h| h < self.partner[h]).map(|h| (h, self.partner[h])).collect();
        (tri, legs, edges)
    }

    pub fn empty() -> Self {
        JacobiDiagram { n_tri: 0, legs: vec![], partner: vec![] }
    }

    pub fn strut(a: impl Into<Color>, b: impl Into<Color>) -> Self {
        JacobiDiagram { n_tri: 0, legs: vec![a.into(), b.into()], partner: vec![1, 0] }
    }

    /// One trivalent vertex whose legs `a, b, c` appear in that cyclic order.
    pub fn tripod(a: impl Into<Color>, b: impl Into<Color>, c: impl Into<Color>) -> Self {
        JacobiDiagram { n_tri: 1, legs: vec![a.into(), b.into(), c.into()], partner: vec![3, 4, 5, 0, 1, 2] }
    }

    /// Two trivalent vertices joined by three edges.
    pub fn theta() -> Self {
        JacobiDiagram { n_tri: 2, legs: vec![], partner: vec![3, 4, 5, 0, 1, 2] }
    }

    pub fn idegree(&self) -> usize {
        self.n_tri
    }

    pub fn legs(&self) -> &[Color] {
        &self.legs
    }

    pub fn n_legs(&self) -> usize {
        self.legs.len()
    }

    pub fn n_half_edges(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, h: usize) -> usize {
        self.partner[h]
    }

    pub fn leg_half_edge(&self, leg: usize) -> usize {
        3 * self.n_tri + leg
    }

    pub fn end(&self, h: usize) -> End {
        if h < 3 * self.n_tri {
            End::Tri { vertex: h / 3, slot: h % 3 }
        } else {
            End::Leg(h - 3 * self.n_tri)
        }
    }

    /// Vertex index of a half-edge: trivalent vertices first, then legs.
    pub(crate) fn vertex_of(&self, h: usize) -> usize {
        if h < 3 * self.n_tri {
            h / 3
        } else {
            self.n_tri + (h - 3 * self.n_tri)
        }
    }

    pub(crate) fn n_vertices(&self) -> usize {
        self.n_tri + self.legs.len()
    }

    /// Degree: half the number of vertices.
    pub fn degree(&self) -> usize {
        self.n_vertices() / 2
    }

    pub fn has_tadpole(&self) -> bool {
        (0..3 * self.n_tri).any(|h| self.partner[h] / 3 == h / 3 && self.partner[h] < 3 * self.n_tri)
    }

    /// Connected-component label of every vertex, numbered by first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.n_vertices();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = next;
            while let Some(v) = stack.pop() {
                for h in self.half_edges_of(v) {
                    let w = self.vertex_of(self.partner[h]);
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub(crate) fn half_edges_of(&self, v: usize) -> std::ops::Range<usize> {
        if v < self.n_tri {
            3 * v..3 * v + 3
        } else {
            let h = 3 * self.n_tri + (v - self.n_tri);
            h..h + 1
        }
    }

    /// True if some connected component is a single strut.
    pub fn has_strut_component(&self) -> bool {
        (0..self.legs.len()).any(|i| {
            let p = self.partner[self.leg_half_edge(i)];
            p >= 3 * self.n_tri
        })
    }

    /// The trivalent vertex a leg is attached to, if any.
    pub fn leg_neighbor(&self, leg: usize) -> Option<usize> {
        let p = self.partner[self.leg_half_edge(leg)];
        (p < 3 * self.n_tri).then_some(p / 3)
    }

    /// Edges joining two trivalent vertices, as half-edge pairs.
    pub fn internal_edges(&self) -> Vec<(usize, usize)> {
        (0..3 * self.n_tri)
            .filter(|&h| {
                let p = self.partner[h];
                p < 3 * self.n_tri && h < p
            })
            .map(|h| (h, self.partner[h]))
            .collect()
    }

    /// Reverse the cyclic order at trivalent vertex `v`.
    pub fn flip(&self, v: usize) -> JacobiDiagram {
        let mut perm: Vec<usize> = (0..self.partner.len()).collect();
        perm.swap(3 * v + 1, 3 * v + 2);
        self.relabel_half_edges(&perm)
    }

    /// Apply a bijection of half-edge slots (old index → new index) that maps
    /// trivalent slots to trivalent slots and legs to legs.
    fn relabel_half_edges(&self, perm: &[usize]) -> JacobiDiagram {
        let n = self.partner.len();
        let mut partner = vec![0; n];
        for h in 0..n {
            partner[perm[h]] = perm[self.partner[h]];
        }
        let mut legs = self.legs.clone();
        for (i, c) in self.legs.iter().enumerate() {
            legs[perm[self.leg_half_edge(i)] - 3 * self.n_tri] = c.clone();
        }
        JacobiDiagram { n_tri: self.n_tri, legs, partner }
    }

    /// An isomorphic copy with the same orientation: trivalent vertex `v`
    /// becomes `tri_perm[v]` with its slots rotated by `rot[v]`, and leg `i`
    /// becomes leg `leg_perm[i]`.
    pub fn permuted(&self, tri_perm: &[usize], rot: &[usize], leg_perm: &[usize]) -> JacobiDiagram {
        let mut perm = vec![0; self.partner.len()];
        for v in 0..self.n_tri {
            for s in 0..3 {
                perm[3 * v + s] = 3 * tri_perm[v] + (s + rot[v]) % 3;
            }
        }
        for (i, &j) in leg_perm.iter().enumerate() {
            perm[self.leg_half_edge(i)] = 3 * self.n_tri + j;
        }
        self.relabel_half_edges(&perm)
    }

    pub fn disjoint_union(&self, other: &JacobiDiagram) -> JacobiDiagram {
        let (a, b) = (self.n_tri, other.n_tri);
        let n_tri = a + b;
        let map_self = |h: usize| if h < 3 * a { h } else { h + 3 * b };
        let map_other = |h: usize| {
            if h < 3 * b {
                h + 3 * a
            } else {
                h + 3 * a + self.legs.len()
            }
        };
        let total = self.partner.len() + other.partner.len();
        let mut partner = vec![0; total];
        for h in 0..self.partner.len() {
            partner[map_self(h)] = map_self(self.partner[h]);
        }
        for h in 0..other.partner.len() {
            partner[map_other(h)] = map_other(other.partner[h]);
        }
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        JacobiDiagram { n_tri, legs, partner }
    }

    /// Replace the leg colors (same count).
    pub fn with_leg_colors(&self, colors: Vec<Color>) -> JacobiDiagram {
        assert_eq!(colors.len(), self.legs.len());
        JacobiDiagram { n_tri: self.n_tri, legs: colors, partner: self.partner.clone() }
    }

    /// Join the legs of each pair into a single edge, removing the two
    /// univalent vertices. Pairs must be disjoint.
    pub fn glue(&self, pairs: &[(usize, usize)]) -> Result<JacobiDiagram, DiagramError> {
        let mut partner = self.partner.clone();
        let mut removed = vec![false; self.legs.len()];
        for &(i, j) in pairs {
            if i == j || removed[i] || removed[j] {
                return Err(DiagramError::Malformed("leg glued twice".into()));
            }
            let (hi, hj) = (self.leg_half_edge(i), self.leg_half_edge(j));
            let (pi, pj) = (partner[hi], partner[hj]);
            if pi == hj {
                return Err(DiagramError::VertexlessLoop);
            }
            partner[pi] = pj;
            partner[pj] = pi;
            removed[i] = true;
            removed[j] = true;
        }
        let base = 3 * self.n_tri;
        let mut new_index = vec![usize::MAX; partner.len()];
        let mut legs = Vec::new();
        for h in 0..base {
            new_index[h] = h;
        }
        for (i, c) in self.legs.iter().enumerate() {
            if !removed[i] {
                new_index[base + i] = base + legs.len();
                legs.push(c.clone());
            }
        }
        let mut out = vec![0; base + legs.len()];
        for h in 0..partner.len() {
            if new_index[h] != usize::MAX {
                out[new_index[h]] = new_index[partner[h]];
            }
        }
        Ok(JacobiDiagram { n_tri: self.n_tri, legs, partner: out })
    }
}
