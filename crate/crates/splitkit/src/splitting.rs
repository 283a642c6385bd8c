//! The right-hand side of the splitting formulas: tripods of the triple
//! products, glued by a cross linking form and recolored.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use thiserror::Error;

use crate::diagram::{normal_form, Color, ColorSet, DiagramElement, DiagramError, JacobiDiagram, LinearColor};
use crate::gluing::{glue_with_form, GlueMode};
use crate::linalg::{self, QMat};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplittingError {
    #[error("form is not symmetric at ({0}, {1})")]
    Asymmetric(String, String),
    #[error("cross linking form is nonzero inside block {block} at ({a}, {b})")]
    DiagonalBlock { block: usize, a: String, b: String },
    #[error("form matrix has the wrong size for {0} labels")]
    Shape(usize),
    #[error("color {0} has no image")]
    Unmapped(String),
    #[error("color {0} is not in the basis of its block")]
    NotInBlock(String),
    #[error("no value for the subset {0:?}")]
    MissingSubset(Vec<usize>),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// An alternating 3-tensor over an ordered basis, stored on increasing
/// index triples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trivector {
    coeffs: BTreeMap<[usize; 3], Q>,
}

impl Trivector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Add `c · (e_a ∧ e_b ∧ e_c)`.
    pub fn add(&mut self, [a, b, c]: [usize; 3], coeff: Q) {
        if a == b || b == c || a == c {
            return;
        }
        let mut t = [a, b, c];
        let mut sign = 1;
        for i in 0..3 {
            for j in 0..2 - i {
                if t[j] > t[j + 1] {
                    t.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let entry = self.coeffs.entry(t).or_insert_with(Q::zero);
        if sign > 0 {
            *entry += coeff;
        } else {
            *entry -= coeff;
        }
        if entry.is_zero() {
            self.coeffs.remove(&t);
        }
    }

    /// Coefficient on `e_a ∧ e_b ∧ e_c` for any order of the indices.
    pub fn coeff(&self, t: [usize; 3]) -> Q {
        let mut probe = Trivector::zero();
        probe.add(t, Q::from_integer(1.into()));
        match probe.coeffs.into_iter().next() {
            None => Q::zero(),
            Some((k, s)) => self.coeffs.get(&k).map_or_else(Q::zero, |c| c * s),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize; 3], &Q)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// One block: a basis of its homology and the triple product on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub basis: Vec<Color>,
    pub mu: Trivector,
}

/// A symmetric bilinear form on colors, given on an ordered list of labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegForm {
    labels: Vec<Color>,
    matrix: QMat,
}

impl LegForm {
    pub fn new(labels: Vec<Color>, matrix: QMat) -> Result<Self, SplittingError> {
        let n = labels.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(SplittingError::Shape(n));
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(SplittingError::Asymmetric(labels[i].to_string(), labels[j].to_string()));
                }
            }
        }
        Ok(LegForm { labels, matrix })
    }

    pub fn zero(labels: Vec<Color>) -> Self {
        let n = labels.len();
        LegForm { labels, matrix: linalg::zeros(n, n) }
    }

    pub fn labels(&self) -> &[Color] {
        &self.labels
    }

    pub fn matrix(&self) -> &QMat {
        &self.matrix
    }

    /// Value on a pair of colors; zero off the labels.
    pub fn get(&self, a: &Color, b: &Color) -> Q {
        let i = self.labels.iter().position(|c| c == a);
        let j = self.labels.iter().position(|c| c == b);
        match (i, j) {
            (Some(i), Some(j)) => self.matrix[i][j].clone(),
            _ => Q::zero(),
        }
    }

    pub fn add(&self, other: &LegForm) -> LegForm {
        assert_eq!(self.labels, other.labels, "forms on different labels");
        LegForm { labels: self.labels.clone(), matrix: linalg::add(&self.matrix, &other.matrix) }
    }
}

/// `r` blocks, the cross linking form on their direct sum, and the
/// recoloring `ρ` into a target color set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPFamily {
    blocks: Vec<Block>,
    ell: LegForm,
    rho: BTreeMap<Color, LinearColor>,
    target: ColorSet,
}

impl LPFamily {
    pub fn new(
        blocks: Vec<Block>,
        ell: QMat,
        rho: BTreeMap<Color, LinearColor>,
        target: ColorSet,
    ) -> Result<Self, SplittingError> {
        let labels: Vec<Color> = blocks.iter().flat_map(|b| b.basis.iter().cloned()).collect();
        ColorSet::new(labels.iter().cloned())?;
        for b in &blocks {
            for t in b.mu.terms().map(|(t, _)| t) {
                if t.iter().any(|&i| i >= b.basis.len()) {
                    return Err(SplittingError::NotInBlock(format!("index {t:?}")));
                }
            }
        }
        let ell = LegForm::new(labels.clone(), ell)?;
        let mut start = 0;
        for (k, b) in blocks.iter().enumerate() {
            let range = start..start + b.basis.len();
            for i in range.clone() {
                for j in range.clone() {
                    if !ell.matrix[i][j].is_zero() {
                        return Err(SplittingError::DiagonalBlock {
                            block: k + 1,
                            a: labels[i].to_string(),
                            b: labels[j].to_string(),
                        });
                    }
                }
            }
            start = range.end;
        }
        for c in &labels {
            let img = rho.get(c).ok_or_else(|| SplittingError::Unmapped(c.to_string()))?;
            if let Some(bad) = img.keys().find(|t| !target.contains(t)) {
                return Err(DiagramError::UnknownColor(bad.to_string()).into());
            }
        }
        Ok(LPFamily { blocks, ell, rho, target })
    }

    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn ell(&self) -> &LegForm {
        &self.ell
    }

    pub fn rho(&self) -> &BTreeMap<Color, LinearColor> {
        &self.rho
    }

    pub fn target(&self) -> &ColorSet {
        &self.target
    }

    /// Colors of the direct sum of the blocks.
    pub fn colors(&self) -> ColorSet {
        ColorSet::new(self.ell.labels.iter().cloned()).expect("checked in new")
    }
}

/// `μ(C₁) ⊔ .. ⊔ μ(C_r)` as tripods.
pub fn mu_to_tripods(fam: &LPFamily) -> DiagramElement {
    let colors = fam.colors();
    let mut out = DiagramElement::one(colors.clone());
    for b in &fam.blocks {
        let mut block = DiagramElement::zero(colors.clone());
        for (&[i, j, k], c) in b.mu.terms() {
            let t = JacobiDiagram::tripod(b.basis[i].clone(), b.basis[j].clone(), b.basis[k].clone());
            block.add_diagram(&t, c.clone());
        }
        out = out.disjoint_product(&block);
    }
    out
}

/// Glue sets of leg pairs with the form. Each unordered pair contributes
/// `form(c(v), c(w))`; pairs on one trivalent vertex are skipped.
pub fn glue_legs_with_form(
    e: &DiagramElement,
    form: &LegForm,
    mode: GlueMode,
) -> Result<DiagramElement, SplittingError> {
    Ok(glue_with_form(e, |a, b| form.get(a, b), mode, true, e.colors().clone())?)
}

/// As [`glue_legs_with_form`] but without skipping pairs on one vertex.
pub fn glue_legs_exhaustive(
    e: &DiagramElement,
    form: &LegForm,
    mode: GlueMode,
) -> Result<DiagramElement, SplittingError> {
    Ok(glue_with_form(e, |a, b| form.get(a, b), mode, false, e.colors().clone())?)
}

/// Recolor every leg through `map`, expanding multilinearly into `target`.
pub fn rho_recolor(
    e: &DiagramElement,
    map: &BTreeMap<Color, LinearColor>,
    target: &ColorSet,
) -> Result<DiagramElement, SplittingError> {
    for c in e.terms().flat_map(|(d, _)| d.legs()) {
        if !map.contains_key(c) {
            return Err(SplittingError::Unmapped(c.to_string()));
        }
    }
    Ok(e.recolor(target.clone(), |c| map.get(c).cloned())?)
}

/// `ρ(glue(μ, ℓ, mode))` in i-degree `r`.
pub fn splitting_rhs(fam: &LPFamily, mode: GlueMode) -> Result<DiagramElement, SplittingError> {
    let glued = glue_legs_with_form(&mu_to_tripods(fam), &fam.ell, mode)?;
    let out = rho_recolor(&glued, &fam.rho, &fam.target)?;
    Ok(normal_form(&out.restrict_idegree(fam.r())))
}

/// `Σ_I (−1)^|I| values(I)` over all subsets `I` of `{1..r}`.
pub fn alternating_sum(
    values: &BTreeMap<BTreeSet<usize>, DiagramElement>,
    r: usize,
    colors: &ColorSet,
) -> Result<DiagramElement, SplittingError> {
    let mut out = DiagramElement::zero(colors.clone());
    for mask in 0u64..(1 << r) {
        let subset: BTreeSet<usize> = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let v = values.get(&subset).ok_or_else(|| SplittingError::MissingSubset(subset.iter().copied().collect()))?;
        out = if subset.len().is_multiple_of(2) { &out + v } else { &out - v };
    }
    Ok(normal_form(&out))
}
