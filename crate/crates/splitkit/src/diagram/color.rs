use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::Q;

use super::DiagramError;

/// A leg color. Cheap to clone; ordered by its label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(Arc<str>);

impl Color {
    pub fn new(label: &str) -> Self {
        Color(Arc::from(label))
    }

    /// The top color `i+`.
    pub fn top(i: usize) -> Self {
        Color::new(&format!("{i}+"))
    }

    /// The bottom color `i-`.
    pub fn bottom(i: usize) -> Self {
        Color::new(&format!("{i}-"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Splits `"12+"` into `(12, '+')`. Returns `None` for labels that are
    /// not of the form `<n><sign>`.
    pub fn signed_index(&self) -> Option<(usize, char)> {
        let s = self.as_str();
        let sign = s.chars().last()?;
        if sign != '+' && sign != '-' {
            return None;
        }
        let n = s[..s.len() - 1].parse().ok()?;
        Some((n, sign))
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Color {
    fn from(s: &str) -> Self {
        Color::new(s)
    }
}

impl From<String> for Color {
    fn from(s: String) -> Self {
        Color(Arc::from(s))
    }
}

/// A formal rational combination of colors.
pub type LinearColor = BTreeMap<Color, Q>;

/// `1·c` as a [`LinearColor`].
pub fn unit_color(c: &Color) -> LinearColor {
    let mut m = LinearColor::new();
    m.insert(c.clone(), Q::from_integer(1.into()));
    m
}

/// Ordered set of color labels, optionally split into top and bottom parts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ColorSet {
    labels: Vec<Color>,
    top: Option<BTreeSet<Color>>,
}

impl ColorSet {
    pub fn new<I, C>(labels: I) -> Result<Self, DiagramError>
    where
        I: IntoIterator<Item = C>,
        C: Into<Color>,
    {
        let labels: Vec<Color> = labels.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for c in &labels {
            if !seen.insert(c.clone()) {
                return Err(DiagramError::DuplicateColor(c.to_string()));
            }
        }
        Ok(ColorSet { labels, top: None })
    }

    pub fn empty() -> Self {
        ColorSet::default()
    }

    /// Labels `1+ .. g+` (top) followed by `1- .. f-` (bottom).
    pub fn top_bottom(g: usize, f: usize) -> Self {
        let top: Vec<Color> = (1..=g).map(Color::top).collect();
        let labels = top.iter().cloned().chain((1..=f).map(Color::bottom)).collect();
        ColorSet { labels, top: Some(top.into_iter().collect()) }
    }

    /// Attach a signature. Every label must be listed in exactly one part.
    pub fn with_signature(mut self, top: &[Color], bottom: &[Color]) -> Result<Self, DiagramError> {
        let all: BTreeSet<&Color> = self.labels.iter().collect();
        let t: BTreeSet<&Color> = top.iter().collect();
        let b: BTreeSet<&Color> = bottom.iter().collect();
        if t.intersection(&b).next().is_some() || t.union(&b).cloned().collect::<BTreeSet<_>>() != all {
            return Err(DiagramError::BadSignature);
        }
        self.top = Some(top.iter().cloned().collect());
        Ok(self)
    }

    pub fn labels(&self) -> &[Color] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, c: &Color) -> bool {
        self.labels.contains(c)
    }

    pub fn index_of(&self, c: &Color) -> Option<usize> {
        self.labels.iter().position(|x| x == c)
    }

    pub fn is_top(&self, c: &Color) -> Option<bool> {
        self.top.as_ref().map(|t| t.contains(c))
    }

    pub fn top_labels(&self) -> Option<Vec<Color>> {
        let t = self.top.as_ref()?;
        Some(self.labels.iter().filter(|c| t.contains(*c)).cloned().collect())
    }

    pub fn bottom_labels(&self) -> Option<Vec<Color>> {
        let t = self.top.as_ref()?;
        Some(self.labels.iter().filter(|c| !t.contains(*c)).cloned().collect())
    }

    /// Labels of `self` followed by the labels of `other` not already present.
    /// The signature is kept only if both sides carry one.
    pub fn union(&self, other: &ColorSet) -> ColorSet {
        let mut labels = self.labels.clone();
        for c in &other.labels {
            if !labels.contains(c) {
                labels.push(c.clone());
            }
        }
        let top = match (&self.top, &other.top) {
            (Some(a), Some(b)) => Some(a.union(b).cloned().collect()),
            _ => None,
        };
        ColorSet { labels, top }
    }

    /// Drop the given labels.
    pub fn without(&self, remove: &BTreeSet<Color>) -> ColorSet {
        ColorSet {
            labels: self.labels.iter().filter(|c| !remove.contains(*c)).cloned().collect(),
            top: self.top.as_ref().map(|t| t.iter().filter(|c| !remove.contains(*c)).cloned().collect()),
        }
    }
}
