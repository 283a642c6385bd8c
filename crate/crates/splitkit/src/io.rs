//! JSON forms of the data types. Rationals are written as exact strings
//! (`"3"`, `"-1/2"`); integers are also accepted on input. Output objects
//! have sorted keys.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num::{BigInt, One};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::diagram::{Color, ColorSet, DiagramElement, JacobiDiagram, LinearColor};
use crate::linalg::{QMat, ZMat};
use crate::linking::{EssentialSubspace, LinkingForm, SurgeryClass, SymplecticSpace};
use crate::milnor::LinkDiagram;
use crate::splitting::{Block, LPFamily, Trivector};
use crate::ts::{Morphism, StrutMatrix};
use crate::Q;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> IoError {
    IoError::Invalid(e.to_string())
}

pub type Result<T> = std::result::Result<T, IoError>;

/// An exact rational on the wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            S(String),
            I(i64),
        }
        match Repr::deserialize(d)? {
            Repr::I(i) => Ok(Rat(Q::from_integer(i.into()))),
            Repr::S(s) => {
                Q::from_str(s.trim()).map(Rat).map_err(|_| serde::de::Error::custom(format!("not a rational: {s:?}")))
            }
        }
    }
}

fn rats(m: &[Vec<Q>]) -> Vec<Vec<Rat>> {
    m.iter().map(|r| r.iter().cloned().map(Rat).collect()).collect()
}

fn qs(m: Vec<Vec<Rat>>) -> QMat {
    m.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect()
}

fn ints(m: Vec<Vec<Rat>>) -> Result<ZMat> {
    m.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    if x.0.denom().is_one() {
                        Ok(x.0.numer().clone())
                    } else {
                        Err(IoError::Invalid(format!("expected an integer, got {}", x.0)))
                    }
                })
                .collect()
        })
        .collect()
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json_string<T: Serialize>(x: &T) -> Result<String> {
    let v = serde_json::to_value(x)?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn from_json_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    Ok(serde_json::from_str(s)?)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LegWire {
    pub half_edge: usize,
    pub color: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DiagramWire {
    #[serde(default)]
    pub trivalent: Vec<[usize; 3]>,
    #[serde(default)]
    pub legs: Vec<LegWire>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

impl DiagramWire {
    pub fn from_diagram(d: &JacobiDiagram) -> Self {
        let (trivalent, legs, edges) = d.to_half_edges();
        DiagramWire {
            trivalent,
            legs: legs.into_iter().map(|(h, c)| LegWire { half_edge: h, color: c.to_string() }).collect(),
            edges: edges.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_diagram(&self) -> Result<JacobiDiagram> {
        let legs: Vec<(usize, Color)> = self.legs.iter().map(|l| (l.half_edge, Color::new(&l.color))).collect();
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        JacobiDiagram::from_half_edges(&self.trivalent, &legs, &edges).map_err(invalid)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ColorsWire {
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<Vec<String>>,
}

impl ColorsWire {
    pub fn from_colors(c: &ColorSet) -> Self {
        let names = |v: Option<Vec<Color>>| v.map(|v| v.iter().map(|c| c.to_string()).collect());
        ColorsWire {
            labels: c.labels().iter().map(|c| c.to_string()).collect(),
            top: names(c.top_labels()),
            bottom: names(c.bottom_labels()),
        }
    }

    pub fn to_colors(&self) -> Result<ColorSet> {
        let set = ColorSet::new(self.labels.iter().map(|s| s.as_str())).map_err(invalid)?;
        match (&self.top, &self.bottom) {
            (None, None) => Ok(set),
            (t, b) => {
                let part =
                    |v: &Option<Vec<String>>| -> Vec<Color> { v.iter().flatten().map(|s| Color::new(s)).collect() };
                set.with_signature(&part(t), &part(b)).map_err(invalid)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermWire {
    pub coeff: Rat,
    pub diagram: DiagramWire,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ElementWire {
    #[serde(alias = "result")]
    pub terms: Vec<TermWire>,
    pub colors: ColorsWire,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
}

impl ElementWire {
    pub fn from_element(e: &DiagramElement) -> Self {
        ElementWire {
            terms: e
                .terms()
                .map(|(d, c)| TermWire { coeff: Rat(c.clone()), diagram: DiagramWire::from_diagram(d) })
                .collect(),
            colors: ColorsWire::from_colors(e.colors()),
            cap: e.cap(),
            truncated: e.is_truncated(),
        }
    }

    pub fn to_element(&self) -> Result<DiagramElement> {
        let colors = self.colors.to_colors()?;
        let mut e = DiagramElement::zero(colors);
        for t in &self.terms {
            e.add_diagram(&t.diagram.to_diagram()?, t.coeff.0.clone());
        }
        e.validate().map_err(invalid)?;
        Ok(e.with_cap(self.cap))
    }
}

pub fn element_to_json(e: &DiagramElement) -> Result<String> {
    to_json_string(&ElementWire::from_element(e))
}

pub fn element_from_json(s: &str) -> Result<DiagramElement> {
    from_json_str::<ElementWire>(s)?.to_element()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MorphismWire {
    pub g: usize,
    pub f: usize,
    pub strut: Vec<Vec<Rat>>,
    pub y_part: ElementWire,
    pub cap: usize,
}

impl MorphismWire {
    pub fn from_morphism(m: &Morphism) -> Self {
        MorphismWire {
            g: m.source_genus(),
            f: m.target_genus(),
            strut: rats(m.strut().entries()),
            y_part: ElementWire::from_element(m.y_part()),
            cap: m.cap(),
        }
    }

    pub fn to_morphism(&self) -> Result<Morphism> {
        let strut = StrutMatrix::new(self.g, self.f, qs(self.strut.clone())).map_err(invalid)?;
        Morphism::new(strut, self.y_part.to_element()?, self.cap).map_err(invalid)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FormWire {
    pub tag: String,
    pub classes: Vec<Vec<Rat>>,
    pub matrix: Vec<Vec<Rat>>,
}

impl FormWire {
    pub fn from_form(f: &LinkingForm) -> Self {
        FormWire { tag: f.tag.clone(), classes: rats(&f.classes), matrix: rats(&f.matrix) }
    }

    pub fn to_form(&self) -> LinkingForm {
        LinkingForm { matrix: qs(self.matrix.clone()), classes: qs(self.classes.clone()), tag: self.tag.clone() }
    }
}

/// A surgery class with named essential subspaces and optionally a
/// linking form. Vectors are rows.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LinkingWire {
    pub dim: usize,
    pub intersection: Vec<Vec<Rat>>,
    pub lagrangian: Vec<Vec<Rat>>,
    #[serde(default)]
    pub subspaces: BTreeMap<String, Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linking: Option<FormWire>,
}

/// Parsed form of [`LinkingWire`].
pub struct LinkingInput {
    pub class: SurgeryClass,
    pub subspaces: BTreeMap<String, EssentialSubspace>,
    pub linking: Option<LinkingForm>,
}

impl LinkingWire {
    fn check_dim(&self) -> Result<()> {
        let n = self.dim;
        let rows_ok = |m: &Vec<Vec<Rat>>| m.iter().all(|r| r.len() == n);
        if self.intersection.len() != n || !rows_ok(&self.intersection) || !rows_ok(&self.lagrangian) {
            return Err(IoError::Invalid(format!("vectors and the intersection matrix must have size {n}")));
        }
        if let Some((name, _)) = self.subspaces.iter().find(|(_, v)| !rows_ok(v)) {
            return Err(IoError::Invalid(format!("subspace {name} has vectors of the wrong length")));
        }
        Ok(())
    }

    pub fn to_input(&self) -> Result<LinkingInput> {
        self.check_dim()?;
        let space = SymplecticSpace::new(qs(self.intersection.clone())).map_err(invalid)?;
        let class = SurgeryClass::new(space, qs(self.lagrangian.clone())).map_err(invalid)?;
        let subspaces =
            self.subspaces.iter().map(|(k, v)| (k.clone(), EssentialSubspace::new(k.clone(), qs(v.clone())))).collect();
        Ok(LinkingInput { class, subspaces, linking: self.linking.as_ref().map(FormWire::to_form) })
    }

    /// Integer intersection matrix and Lagrangian vectors.
    pub fn to_integer(&self) -> Result<(ZMat, Vec<Vec<BigInt>>)> {
        self.check_dim()?;
        Ok((ints(self.intersection.clone())?, ints(self.lagrangian.clone())?))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TripleWire {
    pub triple: [String; 3],
    pub coeff: Rat,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BlockWire {
    pub basis: Vec<String>,
    #[serde(default)]
    pub mu: Vec<TripleWire>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FamilyWire {
    pub blocks: Vec<BlockWire>,
    pub ell: Vec<Vec<Rat>>,
    pub rho: BTreeMap<String, BTreeMap<String, Rat>>,
    /// Target colors; by default every color in the image of `rho`, sorted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<String>>,
}

impl FamilyWire {
    pub fn to_family(&self) -> Result<LPFamily> {
        let mut blocks = Vec::new();
        for (k, b) in self.blocks.iter().enumerate() {
            let basis: Vec<Color> = b.basis.iter().map(|s| Color::new(s)).collect();
            let mut mu = Trivector::zero();
            for t in &b.mu {
                let mut idx = [0usize; 3];
                for (slot, name) in idx.iter_mut().zip(&t.triple) {
                    *slot = b
                        .basis
                        .iter()
                        .position(|c| c == name)
                        .ok_or_else(|| IoError::Invalid(format!("block {}: {name} is not in its basis", k + 1)))?;
                }
                mu.add(idx, t.coeff.0.clone());
            }
            blocks.push(Block { basis, mu });
        }
        let rho: BTreeMap<Color, LinearColor> = self
            .rho
            .iter()
            .map(|(k, v)| (Color::new(k), v.iter().map(|(c, x)| (Color::new(c), x.0.clone())).collect()))
            .collect();
        let target = match &self.target {
            Some(t) => ColorSet::new(t.iter().map(|s| s.as_str())).map_err(invalid)?,
            None => {
                let all: BTreeSet<&String> = self.rho.values().flat_map(|m| m.keys()).collect();
                ColorSet::new(all.into_iter().map(|s| s.as_str())).map_err(invalid)?
            }
        };
        LPFamily::new(blocks, qs(self.ell.clone()), rho, target).map_err(invalid)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SubsetValueWire {
    pub subset: Vec<usize>,
    pub value: ElementWire,
}

/// Values on all subsets of `{1..r}` for an alternating sum.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AltSumWire {
    pub r: usize,
    pub values: Vec<SubsetValueWire>,
}

impl AltSumWire {
    pub fn to_values(&self) -> Result<(BTreeMap<BTreeSet<usize>, DiagramElement>, ColorSet)> {
        let mut out = BTreeMap::new();
        let mut colors: Option<ColorSet> = None;
        for v in &self.values {
            let e = v.value.to_element()?;
            match &colors {
                None => colors = Some(e.colors().clone()),
                Some(c) if c != e.colors() => return Err(IoError::Invalid("values use different color sets".into())),
                _ => {}
            }
            let s: BTreeSet<usize> = v.subset.iter().copied().collect();
            if s.iter().any(|&i| i == 0 || i > self.r) {
                return Err(IoError::Invalid(format!("subset {:?} is not inside 1..{}", v.subset, self.r)));
            }
            if out.insert(s, e).is_some() {
                return Err(IoError::Invalid(format!("subset {:?} is given twice", v.subset)));
            }
        }
        Ok((out, colors.unwrap_or_default()))
    }
}

/// Component and framing annotations for a PD code.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SidecarWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framings: Option<Vec<Rat>>,
}

pub fn link_from_pd(pd: &str, sidecar: Option<&SidecarWire>) -> Result<LinkDiagram> {
    let crossings = crate::milnor::parse_crossings(pd).map_err(invalid)?;
    let side = sidecar.cloned().unwrap_or_default();
    let framings = side.framings.map(|f| f.into_iter().map(|x| x.0).collect());
    LinkDiagram::new(crossings, side.components, framings).map_err(invalid)
}

/// `"(1,2,3)"`.
pub fn triple_key(t: [usize; 3]) -> String {
    format!("({},{},{})", t[0], t[1], t[2])
}

pub fn parse_triple(s: &str) -> Result<[usize; 3]> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<usize> = inner
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| IoError::Invalid(format!("not a triple of indices: {s:?}")))?;
    <[usize; 3]>::try_from(parts).map_err(|_| IoError::Invalid(format!("not a triple of indices: {s:?}")))
}

/// Milnor output, also accepted as the input of the degree-one formula.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MilnorWire {
    pub mu: BTreeMap<String, Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linking: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framings: Option<Vec<Rat>>,
}

impl MilnorWire {
    /// Framings (explicit, else the diagonal of `linking`) and `μ̄` on
    /// increasing triples.
    pub fn to_inputs(&self) -> Result<(Vec<Q>, BTreeMap<[usize; 3], Q>)> {
        let framings: Vec<Q> = match (&self.framings, &self.linking) {
            (Some(f), _) => f.iter().map(|x| x.0.clone()).collect(),
            (None, Some(lk)) => lk
                .iter()
                .enumerate()
                .map(|(i, r)| r.get(i).map(|x| x.0.clone()))
                .collect::<Option<_>>()
                .ok_or_else(|| IoError::Invalid("linking matrix is not square".into()))?,
            (None, None) => return Err(IoError::Invalid("need framings or a linking matrix".into())),
        };
        let mut mu = BTreeMap::new();
        for (k, v) in &self.mu {
            let t = parse_triple(k)?;
            if !(t[0] < t[1] && t[1] < t[2]) || t[0] == 0 || t[2] > framings.len() {
                return Err(IoError::Invalid(format!("triple {k} must be increasing within 1..{}", framings.len())));
            }
            mu.insert(t, v.0.clone());
        }
        Ok((framings, mu))
    }
}

/// A JSON value holding a rational matrix.
pub fn matrix_value(m: &[Vec<Q>]) -> Value {
    serde_json::to_value(rats(m)).expect("strings serialize")
}

pub fn element_value(e: &DiagramElement) -> Value {
    serde_json::to_value(ElementWire::from_element(e)).expect("element serializes")
}
