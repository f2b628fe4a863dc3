use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

use crate::algebra::Monomial;
use crate::{Poly, Series};

/// Where two sides first disagree, keyed by variable name (or `index` for
/// positional data).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MismatchReport {
    pub monomial: BTreeMap<String, u32>,
    pub lhs: String,
    pub rhs: String,
}

const SHOW_LIMIT: usize = 160;

fn show(text: String, terms: usize) -> String {
    if text.len() <= SHOW_LIMIT {
        text
    } else {
        format!("{terms} terms")
    }
}

fn monomial_map(m: &Monomial) -> BTreeMap<String, u32> {
    m.iter().map(|(v, e)| (v.to_string(), e)).collect()
}

/// The outcome of one check: rendered values for both sides plus the first
/// mismatch, if any.
#[derive(Clone, Debug, Default)]
pub(crate) struct Evidence {
    pub lhs: String,
    pub rhs: String,
    pub mismatch: Option<MismatchReport>,
    pub notes: Vec<String>,
    pub skipped: bool,
}

impl Evidence {
    pub fn series(lhs: &Series, rhs: &Series) -> Evidence {
        Evidence {
            lhs: show(lhs.poly().to_string(), lhs.poly().len()),
            rhs: show(rhs.poly().to_string(), rhs.poly().len()),
            mismatch: lhs.first_mismatch(rhs).map(|m| MismatchReport {
                monomial: monomial_map(&m.monomial),
                lhs: m.lhs.to_string(),
                rhs: m.rhs.to_string(),
            }),
            ..Evidence::default()
        }
    }

    pub fn polys(lhs: &Poly, rhs: &Poly) -> Evidence {
        let caps = crate::algebra::Caps::new();
        let mut ev = Evidence::series(&Series::new(lhs.clone(), caps.clone()), &Series::new(rhs.clone(), caps));
        ev.lhs = show(lhs.to_string(), lhs.len());
        ev.rhs = show(rhs.to_string(), rhs.len());
        ev
    }

    /// Positional comparison; the mismatch is reported under `key`.
    pub fn lists<T: PartialEq + Display>(key: &str, lhs: &[T], rhs: &[T]) -> Evidence {
        let render = |v: &[T]| {
            let parts: Vec<String> = v.iter().map(T::to_string).collect();
            show(format!("[{}]", parts.join(", ")), v.len())
        };
        let n = lhs.len().max(rhs.len());
        let at = |v: &[T], i: usize| v.get(i).map_or("missing".to_string(), T::to_string);
        let mismatch = (0..n).find(|&i| lhs.get(i) != rhs.get(i)).map(|i| MismatchReport {
            monomial: BTreeMap::from([(key.to_string(), i as u32)]),
            lhs: at(lhs, i),
            rhs: at(rhs, i),
        });
        Evidence { lhs: render(lhs), rhs: render(rhs), mismatch, ..Evidence::default() }
    }

    pub fn values(lhs: impl Display, rhs: impl Display, equal: bool) -> Evidence {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let mismatch =
            (!equal).then(|| MismatchReport { monomial: BTreeMap::new(), lhs: lhs.clone(), rhs: rhs.clone() });
        Evidence { lhs: show(lhs, 1), rhs: show(rhs, 1), mismatch, ..Evidence::default() }
    }

    pub fn equal<T: PartialEq + Display>(lhs: T, rhs: T) -> Evidence {
        let eq = lhs == rhs;
        Evidence::values(lhs, rhs, eq)
    }

    pub fn note(mut self, text: impl Into<String>) -> Evidence {
        self.notes.push(text.into());
        self
    }

    pub fn skip(mut self, text: impl Into<String>) -> Evidence {
        self.skipped = true;
        self.note(text)
    }

    /// Adds a secondary comparison. Its mismatch is reported only when the
    /// primary one agrees, and then its values replace the primary ones.
    pub fn and(mut self, label: &str, other: Evidence) -> Evidence {
        self.notes.extend(other.notes);
        if self.mismatch.is_none() {
            if let Some(m) = other.mismatch {
                self.notes.push(format!("{label} disagrees"));
                self.lhs = other.lhs;
                self.rhs = other.rhs;
                self.mismatch = Some(m);
            }
        }
        self
    }
}
