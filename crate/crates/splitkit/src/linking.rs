//! Homology-level model of a rational homology handlebody: the boundary
//! symplectic space, its Lagrangian, essential subspaces, the form ϑ, and
//! the maps built from them.
//!
//! Vectors are coordinate columns in a fixed basis of the boundary homology
//! `H`; `x · y` is `xᵀ Ω y` for the intersection matrix `Ω`.

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::diagram::{normal_form, Color, ColorSet, DiagramElement, DiagramError, LinearColor};
use crate::gluing::{glue_with_form, GlueMode};
use crate::linalg::{self, QMat, ZMat};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkingError {
    #[error("intersection matrix must be antisymmetric and nondegenerate")]
    BadIntersection,
    #[error("expected {expected} vectors of length {len}, got {got}")]
    Dimension { expected: usize, len: usize, got: String },
    #[error("subspace {0} is not Lagrangian")]
    NotLagrangian(String),
    #[error("subspace {0} is not a complement of the Lagrangian")]
    NotEssential(String),
    #[error("subspace {name} is not isotropic: basis vectors {i} and {j} meet with value {value}")]
    NotIsotropic { name: String, i: usize, j: usize, value: Q },
    #[error("linking form is relative to {found}, expected {expected}")]
    TagMismatch { expected: String, found: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `H` with a nondegenerate antisymmetric intersection matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    omega: QMat,
}

impl SymplecticSpace {
    pub fn new(omega: QMat) -> Result<Self, LinkingError> {
        if !linalg::is_antisymmetric(&omega) || linalg::rank(&omega) != omega.len() {
            return Err(LinkingError::BadIntersection);
        }
        Ok(SymplecticSpace { omega })
    }

    /// `α_i · β_i = 1` in the basis `(α_1..α_g, β_1..β_g)`.
    pub fn standard(g: usize) -> Self {
        let mut omega = linalg::zeros(2 * g, 2 * g);
        for i in 0..g {
            omega[i][g + i] = Q::one();
            omega[g + i][i] = -Q::one();
        }
        SymplecticSpace { omega }
    }

    pub fn dim(&self) -> usize {
        self.omega.len()
    }

    pub fn genus(&self) -> usize {
        self.dim() / 2
    }

    pub fn omega(&self) -> &QMat {
        &self.omega
    }

    pub fn dot(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * &self.omega[i][j] * yj;
            }
        }
        s
    }

    fn check_vectors(&self, vs: &[Vec<Q>], count: usize) -> Result<(), LinkingError> {
        if vs.len() != count || vs.iter().any(|v| v.len() != self.dim()) {
            return Err(LinkingError::Dimension {
                expected: count,
                len: self.dim(),
                got: format!("{:?}", vs.iter().map(Vec::len).collect::<Vec<_>>()),
            });
        }
        Ok(())
    }

    /// First pair of basis vectors with nonzero intersection.
    fn isotropy_violation(&self, vs: &[Vec<Q>]) -> Option<(usize, usize, Q)> {
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let v = self.dot(&vs[i], &vs[j]);
                if !v.is_zero() {
                    return Some((i, j, v));
                }
            }
        }
        None
    }
}

/// A rational LP surgery class at the homology level: a symplectic space
/// with a Lagrangian subspace `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryClass {
    space: SymplecticSpace,
    lagrangian: Vec<Vec<Q>>,
}

impl SurgeryClass {
    pub fn new(space: SymplecticSpace, lagrangian: Vec<Vec<Q>>) -> Result<Self, LinkingError> {
        space.check_vectors(&lagrangian, space.genus())?;
        if space.isotropy_violation(&lagrangian).is_some() || linalg::rank(&lagrangian) != space.genus() {
            return Err(LinkingError::NotLagrangian("L".into()));
        }
        Ok(SurgeryClass { space, lagrangian })
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn lagrangian(&self) -> &[Vec<Q>] {
        &self.lagrangian
    }

    fn split(&self, e: &EssentialSubspace) -> Result<Split, LinkingError> {
        if !is_essential(self, e)? {
            return Err(LinkingError::NotEssential(e.name.clone()));
        }
        let g = self.space.genus();
        let b = linalg::transpose(&[self.lagrangian.clone(), e.basis.clone()].concat());
        let b_inv = linalg::inverse(&b).expect("L ⊕ E is the whole space");
        // coordinates: first g along L, last g along E
        let mut keep_l = linalg::zeros(2 * g, 2 * g);
        let mut keep_e = linalg::zeros(2 * g, 2 * g);
        for i in 0..g {
            keep_l[i][i] = Q::one();
            keep_e[g + i][g + i] = Q::one();
        }
        let p_l = linalg::mul(&b, &linalg::mul(&keep_l, &b_inv));
        let p_e = linalg::mul(&b, &linalg::mul(&keep_e, &b_inv));
        let e_coords = b_inv[g..].to_vec();
        Ok(Split { p_l, p_e, e_coords })
    }
}

struct Split {
    p_l: QMat,
    p_e: QMat,
    /// Rows mapping a vector to its E-part in the basis of E.
    e_coords: QMat,
}

/// A candidate complement `E` of the Lagrangian, with a name used for the
/// colors `{name}1, {name}2, ..` of its basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialSubspace {
    name: String,
    basis: Vec<Vec<Q>>,
}

impl EssentialSubspace {
    pub fn new(name: impl Into<String>, basis: Vec<Vec<Q>>) -> Self {
        EssentialSubspace { name: name.into(), basis }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn color(&self, i: usize) -> Color {
        Color::new(&format!("{}{}", self.name, i + 1))
    }

    pub fn colors(&self) -> ColorSet {
        ColorSet::new((0..self.basis.len()).map(|i| self.color(i))).expect("distinct indices")
    }

    pub fn is_isotropic(&self, space: &SymplecticSpace) -> bool {
        space.isotropy_violation(&self.basis).is_none()
    }

    fn require_isotropic(&self, space: &SymplecticSpace) -> Result<(), LinkingError> {
        match space.isotropy_violation(&self.basis) {
            None => Ok(()),
            Some((i, j, value)) => Err(LinkingError::NotIsotropic { name: self.name.clone(), i, j, value }),
        }
    }
}

/// Does `E` complement the Lagrangian?
pub fn is_essential(cls: &SurgeryClass, e: &EssentialSubspace) -> Result<bool, LinkingError> {
    cls.space.check_vectors(&e.basis, cls.space.genus())?;
    let all = [cls.lagrangian.clone(), e.basis.clone()].concat();
    Ok(linalg::rank(&all) == cls.space.dim())
}

/// Matrix of `ϑ^E(l₁ + e₁, l₂ + e₂) = l₂ · e₁`.
pub fn theta_form(cls: &SurgeryClass, e: &EssentialSubspace) -> Result<QMat, LinkingError> {
    let s = cls.split(e)?;
    let t = linalg::mul(&linalg::transpose(&s.p_e), &linalg::mul(&cls.space.omega, &s.p_l));
    Ok(linalg::scale(&t, &-Q::one()))
}

/// Projection onto `E` along `L`, as a matrix on `H`.
pub fn projection_onto(cls: &SurgeryClass, e: &EssentialSubspace) -> Result<QMat, LinkingError> {
    Ok(cls.split(e)?.p_e)
}

/// A bilinear form on some rational homology, with the class in `H / L` of
/// each basis element represented by a vector of `H`, relative to the
/// essential subspace named by `tag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingForm {
    pub matrix: QMat,
    pub classes: Vec<Vec<Q>>,
    pub tag: String,
}

/// `ℓ^F(x, y) = ℓ^E(x, y) − ϑ^E(f(x), f(y))`, with `f` the section of
/// `H → H / L` whose image is `F`.
pub fn transport_linking(
    cls: &SurgeryClass,
    e: &EssentialSubspace,
    f: &EssentialSubspace,
    ell: &LinkingForm,
) -> Result<LinkingForm, LinkingError> {
    if ell.tag != e.name {
        return Err(LinkingError::TagMismatch { expected: e.name.clone(), found: ell.tag.clone() });
    }
    let theta = theta_form(cls, e)?;
    let q_f = projection_onto(cls, f)?;
    let phi = linalg::mul(&q_f, &linalg::transpose(&ell.classes));
    let corr = linalg::mul(&linalg::transpose(&phi), &linalg::mul(&theta, &phi));
    Ok(LinkingForm { matrix: linalg::sub(&ell.matrix, &corr), classes: ell.classes.clone(), tag: f.name.clone() })
}

/// `κ^{src,dst}`: glue some pairs of legs with ϑ^dst (symmetrized), then
/// carry the remaining colors from `src` to `dst` along `L`.
pub fn kappa(
    cls: &SurgeryClass,
    src: &EssentialSubspace,
    dst: &EssentialSubspace,
    d: &DiagramElement,
) -> Result<DiagramElement, LinkingError> {
    src.require_isotropic(&cls.space)?;
    dst.require_isotropic(&cls.space)?;
    let theta = theta_form(cls, dst)?;
    let s = cls.split(dst)?;
    let g = src.basis.len();
    let index = |c: &Color| (0..g).find(|&i| src.color(i) == *c);
    let bilin = |x: &[Q], y: &[Q]| -> Q {
        let mut v = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                v += xi * &theta[i][j] * yj;
            }
        }
        v
    };
    let mut form = vec![vec![Q::zero(); g]; g];
    for i in 0..g {
        for j in 0..g {
            let (x, y) = (&src.basis[i], &src.basis[j]);
            form[i][j] = (bilin(x, y) + bilin(y, x)) / linalg::qi(2);
        }
    }
    for c in d.terms().flat_map(|(x, _)| x.legs()) {
        if index(c).is_none() {
            return Err(DiagramError::UnknownColor(c.to_string()).into());
        }
    }
    let glued = glue_with_form(
        d,
        |a, b| match (index(a), index(b)) {
            (Some(i), Some(j)) => form[i][j].clone(),
            _ => Q::zero(),
        },
        GlueMode::Some,
        true,
        src.colors(),
    )?;
    let images: Vec<LinearColor> = (0..g)
        .map(|i| {
            (0..g)
                .map(|k| {
                    let v: Q = s.e_coords[k].iter().zip(&src.basis[i]).map(|(a, b)| a * b).sum();
                    (dst.color(k), v)
                })
                .filter(|(_, v)| !v.is_zero())
                .collect()
        })
        .collect();
    let out = glued.recolor(dst.colors(), |c| index(c).map(|i| images[i].clone()))?;
    Ok(normal_form(&out))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("intersection matrix must be antisymmetric and unimodular")]
    BadIntersection,
    #[error("expected {0} vectors of length {1}")]
    Dimension(usize, usize),
    #[error("not isotropic: vectors {i} and {j} meet with value {value}")]
    NotIsotropic { i: usize, j: usize, value: BigInt },
    #[error("vectors have rank {0}, less than the genus")]
    RankDeficient(usize),
    #[error("quotient has torsion: {factor} times {witness:?} lies in the span but the vector does not")]
    Torsion { factor: BigInt, witness: Vec<BigInt> },
}

/// Extend a basis `m` (as vectors) of a Lagrangian subgroup to a basis
/// `(m, p′)` in which the intersection matrix is `[[0, I], [−I, 0]]`.
/// Returns the change-of-basis matrix whose columns are `m` then `p′`.
pub fn symplectic_completion(lagrangian: &[Vec<BigInt>], omega: &[Vec<BigInt>]) -> Result<ZMat, CompletionError> {
    let n = omega.len();
    let g = n / 2;
    let omega_q = linalg::to_q(omega);
    let det_ok = linalg::inverse(&omega_q).is_some_and(|inv| inv.iter().flatten().all(|x| x.is_integer()));
    if n % 2 == 1 || !linalg::is_antisymmetric(&omega_q) || !det_ok {
        return Err(CompletionError::BadIntersection);
    }
    if lagrangian.len() != g || lagrangian.iter().any(|v| v.len() != n) {
        return Err(CompletionError::Dimension(g, n));
    }
    let dot = |x: &[BigInt], y: &[BigInt]| -> BigInt {
        let mut s = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                s += &x[i] * &omega[i][j] * &y[j];
            }
        }
        s
    };
    for i in 0..g {
        for j in i + 1..g {
            let value = dot(&lagrangian[i], &lagrangian[j]);
            if !value.is_zero() {
                return Err(CompletionError::NotIsotropic { i, j, value });
            }
        }
    }
    let m = linalg::ztranspose(lagrangian);
    let (d, u, v) = linalg::smith(&m);
    let w = linalg::zinverse_unimodular(&u).expect("u is unimodular");
    for t in 0..g {
        let k = d[t][t].abs();
        if k.is_zero() {
            return Err(CompletionError::RankDeficient(t));
        }
        if !k.is_one() {
            let witness = (0..n).map(|i| w[i][t].clone()).collect();
            return Err(CompletionError::Torsion { factor: k, witness });
        }
    }
    // u m v = [I; 0], so the first g columns of w are m v
    let v_inv = linalg::zinverse_unimodular(&v).expect("v is unimodular");
    let mut block = linalg::zidentity(n);
    for i in 0..g {
        for j in 0..g {
            block[i][j] = v_inv[i][j].clone();
        }
    }
    let b = linalg::zmul(&w, &block);
    let gram = linalg::zmul(&linalg::ztranspose(&b), &linalg::zmul(omega, &b));
    // gram = [[0, Pᵀ], [−P, Q]]
    let p: ZMat = (0..g).map(|i| (0..g).map(|j| -gram[g + i][j].clone()).collect()).collect();
    let q: ZMat = (0..g).map(|i| (0..g).map(|j| gram[g + i][g + j].clone()).collect()).collect();
    let r: ZMat =
        (0..g).map(|i| (0..g).map(|j| if j < i { q[i][j].clone() } else { BigInt::zero() }).collect()).collect();
    let p_inv = linalg::zinverse_unimodular(&p).expect("P is unimodular");
    let p_inv_t = linalg::ztranspose(&p_inv);
    let upper = linalg::zmul(&p_inv, &linalg::zmul(&r, &p_inv_t));
    let m_cols: ZMat = b.iter().map(|row| row[..g].to_vec()).collect();
    let p_cols: ZMat = b.iter().map(|row| row[g..].to_vec()).collect();
    let p_new = zadd(&linalg::zmul(&m_cols, &upper), &linalg::zmul(&p_cols, &p_inv_t));
    let out: ZMat = (0..n).map(|i| m_cols[i].iter().chain(&p_new[i]).cloned().collect()).collect();
    Ok(out)
}

fn zadd(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> ZMat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

/// Linking number from crossing counts: K over L and L over K, positive
/// then negative.
pub fn lk_cylinder_counts(k_over_pos: u64, l_over_pos: u64, k_over_neg: u64, l_over_neg: u64) -> Q {
    let half = Q::new(1.into(), 2.into());
    let pos = Q::from_integer((k_over_pos + l_over_pos).into());
    let neg = Q::from_integer((k_over_neg + l_over_neg).into());
    half * (pos - neg)
}
