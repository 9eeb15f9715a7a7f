//! The four families of simple Lie algebras carrying an `L²(Ξ)` model, as
//! static metadata.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown family tag {0:?}; expected split, euclidean, complex or quaternionic")]
pub struct UnknownFamily(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Split,
    Euclidean,
    Complex,
    Quaternionic,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Split, Family::Euclidean, Family::Complex, Family::Quaternionic];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Split => "split",
            Family::Euclidean => "euclidean",
            Family::Complex => "complex",
            Family::Quaternionic => "quaternionic",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.tag() == s).ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TriState {
    Yes,
    No,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyEntry {
    pub family: Family,
    pub algebras: Vec<String>,
    pub highest_weight_module: bool,
    /// Whether the annihilator of `dπ` is the Joseph ideal.
    pub joseph_annihilator: TriState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn entry(family: Family, algebras: &[&str], hw: bool, joseph: TriState, note: Option<&str>) -> FamilyEntry {
    FamilyEntry {
        family,
        algebras: algebras.iter().map(|s| s.to_string()).collect(),
        highest_weight_module: hw,
        joseph_annihilator: joseph,
        note: note.map(str::to_string),
    }
}

pub fn query(family: Family) -> FamilyEntry {
    match family {
        Family::Split => entry(
            family,
            &["sl(2k,ℝ)", "so(2k,2k)", "so(p+1,q+1)", "e₇(7)"],
            false,
            TriState::Yes,
            Some("Joseph flag holds for members not of type A; so(p+1,q+1) requires p+q even"),
        ),
        Family::Euclidean => {
            entry(family, &["sp(k,ℝ)", "su(k,k)", "so*(4k)", "so(2,k)", "e₇(−25)"], true, TriState::NotApplicable, None)
        }
        Family::Complex => {
            entry(family, &["sp(k,ℂ)", "sl(2k,ℂ)", "so(4k,ℂ)", "so(k+2,ℂ)", "e₇(ℂ)"], false, TriState::NotApplicable, None)
        }
        Family::Quaternionic => entry(family, &["sp(k,k)", "su*(4k)", "so(k,1)"], false, TriState::No, None),
    }
}

/// Looks up a family by its lowercase tag.
pub fn query_tag(tag: &str) -> Result<FamilyEntry, UnknownFamily> {
    Ok(query(tag.parse()?))
}

pub fn all() -> Vec<FamilyEntry> {
    Family::ALL.into_iter().map(query).collect()
}
