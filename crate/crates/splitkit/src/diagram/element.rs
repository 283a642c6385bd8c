use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num::{One, Zero};

use super::{canonical_as, Color, ColorSet, DiagramError, JacobiDiagram, LinearColor};
use crate::Q;

/// A rational combination of AS-canonical diagrams.
///
/// Diagrams above the i-degree cap are dropped on insertion and the element
/// remembers that it was truncated. Equality compares terms only.
#[derive(Clone, Debug)]
pub struct DiagramElement {
    terms: BTreeMap<JacobiDiagram, Q>,
    colors: ColorSet,
    cap: Option<usize>,
    truncated: bool,
}

impl PartialEq for DiagramElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for DiagramElement {}

impl DiagramElement {
    pub fn zero(colors: ColorSet) -> Self {
        DiagramElement { terms: BTreeMap::new(), colors, cap: None, truncated: false }
    }

    /// The empty diagram with coefficient 1.
    pub fn one(colors: ColorSet) -> Self {
        Self::from_diagram(&JacobiDiagram::empty(), colors)
    }

    pub fn from_diagram(d: &JacobiDiagram, colors: ColorSet) -> Self {
        let mut e = Self::zero(colors);
        e.add_diagram(d, Q::one());
        e
    }

    /// Sum of `coeff · diagram` over raw (not necessarily canonical) diagrams.
    pub fn from_terms<'a, I>(terms: I, colors: ColorSet) -> Self
    where
        I: IntoIterator<Item = (&'a JacobiDiagram, Q)>,
    {
        let mut e = Self::zero(colors);
        for (d, c) in terms {
            e.add_diagram(d, c);
        }
        e
    }

    /// Set the i-degree cap, dropping anything above it.
    pub fn with_cap(mut self, cap: Option<usize>) -> Self {
        if let Some(k) = cap {
            let before = self.terms.len();
            self.terms.retain(|d, _| d.idegree() <= k);
            self.truncated |= self.terms.len() != before;
        }
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    /// True if terms above the cap were dropped at some point.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub(crate) fn set_truncated(&mut self, t: bool) {
        self.truncated |= t;
    }

    pub fn colors(&self) -> &ColorSet {
        &self.colors
    }

    pub fn with_colors(mut self, colors: ColorSet) -> Self {
        self.colors = colors;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JacobiDiagram, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `d` (any representative) in this element.
    pub fn coeff(&self, d: &JacobiDiagram) -> Q {
        match canonical_as(d) {
            None => Q::zero(),
            Some((s, c)) => self.terms.get(&c).map_or_else(Q::zero, |q| q * Q::from_integer(s.into())),
        }
    }

    /// Add `c · d`, canonicalizing `d` first.
    pub fn add_diagram(&mut self, d: &JacobiDiagram, c: Q) {
        if c.is_zero() {
            return;
        }
        if let Some((s, canon)) = canonical_as(d) {
            let c = if s < 0 { -c } else { c };
            self.add_canonical(canon, c);
        }
    }

    /// Add `c · d` for an already canonical `d`.
    pub(crate) fn add_canonical(&mut self, d: JacobiDiagram, c: Q) {
        if c.is_zero() {
            return;
        }
        if let Some(k) = self.cap {
            if d.idegree() > k {
                self.truncated = true;
                return;
            }
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(d, q)| (d.clone(), q * c)).collect();
        }
        out
    }

    fn combine(&self, other: &Self, sign: &Q) -> Self {
        let mut out = self.clone();
        out.colors = self.colors.union(&other.colors);
        out.cap = min_cap(self.cap, other.cap);
        out.truncated |= other.truncated;
        if let Some(k) = out.cap {
            out.terms.retain(|d, _| d.idegree() <= k);
        }
        for (d, q) in &other.terms {
            out.add_canonical(d.clone(), q * sign);
        }
        out
    }

    /// Disjoint union product, bilinear.
    pub fn disjoint_product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.colors.union(&other.colors));
        out.cap = min_cap(self.cap, other.cap);
        out.truncated = self.truncated || other.truncated;
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                if let Some(k) = out.cap {
                    if a.idegree() + b.idegree() > k {
                        out.truncated = true;
                        continue;
                    }
                }
                out.add_diagram(&a.disjoint_union(b), p * q);
            }
        }
        out
    }

    /// Keep only diagrams of i-degree exactly `r`.
    pub fn restrict_idegree(&self, r: usize) -> Self {
        let mut out = self.clone();
        out.terms.retain(|d, _| d.idegree() == r);
        out
    }

    /// Apply a linear map given on diagrams; outputs are canonicalized.
    pub fn map_diagrams<F>(&self, colors: ColorSet, f: F) -> Self
    where
        F: Fn(&JacobiDiagram) -> Vec<(JacobiDiagram, Q)>,
    {
        let mut out = Self::zero(colors);
        out.cap = self.cap;
        out.truncated = self.truncated;
        for (d, q) in &self.terms {
            for (img, c) in f(d) {
                out.add_diagram(&img, q * c);
            }
        }
        out
    }

    /// Check the element invariants: colors inside the declared set and no
    /// diagram above the cap.
    pub fn validate(&self) -> Result<(), DiagramError> {
        for d in self.terms.keys() {
            for c in d.legs() {
                if !self.colors.contains(c) {
                    return Err(DiagramError::UnknownColor(c.to_string()));
                }
            }
            if let Some(k) = self.cap {
                if d.idegree() > k {
                    return Err(DiagramError::Malformed(format!("diagram of i-degree {} above cap {k}", d.idegree())));
                }
            }
        }
        Ok(())
    }

    /// Recolor every leg through `map`, expanding multilinearly.
    pub fn recolor<F>(&self, colors: ColorSet, map: F) -> Result<Self, DiagramError>
    where
        F: Fn(&Color) -> Option<LinearColor>,
    {
        let mut out = Self::zero(colors);
        out.cap = self.cap;
        out.truncated = self.truncated;
        for (d, q) in &self.terms {
            let images = d
                .legs()
                .iter()
                .map(|c| map(c).ok_or_else(|| DiagramError::UnknownColor(c.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            for (img, c) in expand_legs(d, &images) {
                out.add_diagram(&img, q * c);
            }
        }
        Ok(out)
    }
}

fn min_cap(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Add for &DiagramElement {
    type Output = DiagramElement;
    fn add(self, rhs: &DiagramElement) -> DiagramElement {
        self.combine(rhs, &Q::one())
    }
}

impl Sub for &DiagramElement {
    type Output = DiagramElement;
    fn sub(self, rhs: &DiagramElement) -> DiagramElement {
        self.combine(rhs, &-Q::one())
    }
}

impl Neg for &DiagramElement {
    type Output = DiagramElement;
    fn neg(self) -> DiagramElement {
        self.scaled(&-Q::one())
    }
}

/// Distribute each leg over its linear color. Returns raw diagrams.
pub(crate) fn expand_legs(d: &JacobiDiagram, images: &[LinearColor]) -> Vec<(JacobiDiagram, Q)> {
    let mut partial: Vec<(Vec<Color>, Q)> = vec![(Vec::with_capacity(images.len()), Q::one())];
    for img in images {
        let mut next = Vec::with_capacity(partial.len() * img.len());
        for (cols, q) in &partial {
            for (c, a) in img {
                if a.is_zero() {
                    continue;
                }
                let mut cols = cols.clone();
                cols.push(c.clone());
                next.push((cols, q * a));
            }
        }
        partial = next;
        if partial.is_empty() {
            break;
        }
    }
    partial.into_iter().map(|(cols, q)| (d.with_leg_colors(cols), q)).collect()
}

/// Expand a diagram whose legs carry linear combinations of basis colors.
pub fn multilinear_expand(
    d: &JacobiDiagram,
    leg_colors: &[LinearColor],
    basis: &ColorSet,
) -> Result<DiagramElement, DiagramError> {
    if leg_colors.len() != d.n_legs() {
        return Err(DiagramError::Malformed(format!("{} leg colors for {} legs", leg_colors.len(), d.n_legs())));
    }
    for lc in leg_colors {
        for c in lc.keys() {
            if !basis.contains(c) {
                return Err(DiagramError::UnknownColor(c.to_string()));
            }
        }
    }
    let mut out = DiagramElement::zero(basis.clone());
    for (img, q) in expand_legs(d, leg_colors) {
        out.add_diagram(&img, q);
    }
    Ok(out)
}

/// Multiply each diagram by `r^(number of legs colored label)`.
pub fn scale_color(e: &DiagramElement, label: &Color, r: &Q) -> DiagramElement {
    let mut out = DiagramElement::zero(e.colors.clone());
    out.cap = e.cap;
    out.truncated = e.truncated;
    for (d, q) in &e.terms {
        let k = d.legs().iter().filter(|c| *c == label).count();
        out.add_canonical(d.clone(), q * num::pow(r.clone(), k));
    }
    out
}
