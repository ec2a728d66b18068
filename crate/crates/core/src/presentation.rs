//! The shipped operads and bimodules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Label, Slot, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Presentation {
    /// Free operad on `m_n`, `n >= 2`.
    AInf,
    /// `As(n) = k m^(n)` for `n >= 1`.
    As,
    /// `Ass(n) = k m^(n)` for `n >= 0`.
    Ass,
    /// `A∞` with a strict unit and the free generators `i`, `j`.
    ASuIJ,
    /// The homotopy unital operad on `i` and `m_{n1;...;nk}`.
    AHu,
    /// The `(A∞, A∞)`-bimodule of `A∞`-morphisms.
    F1,
    /// The `(As, As)`-bimodule `As ⊙ k{f} ⊙ As`.
    FBar1,
    /// `F1` over `A∞^su<i,j>` with its unit relations.
    F1SuIJ,
    /// The homotopy unital bimodule on `v` and `f_{n1;...;nk}`.
    F1Hu,
    /// `As` as a bimodule over itself, generated by `1^F`.
    RegularAs,
}

/// How normal forms are maintained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum World {
    /// Free graded operad; every tree is normal.
    Free,
    /// Strict-unit rewriting.
    StrictUnit,
    /// `As`-type contraction of `m^(k)` vertices.
    Bar,
}

pub const ALL: [Presentation; 10] = [
    Presentation::AInf,
    Presentation::As,
    Presentation::Ass,
    Presentation::ASuIJ,
    Presentation::AHu,
    Presentation::F1,
    Presentation::FBar1,
    Presentation::F1SuIJ,
    Presentation::F1Hu,
    Presentation::RegularAs,
];

impl Presentation {
    pub fn name(self) -> &'static str {
        match self {
            Presentation::AInf => "ainf",
            Presentation::As => "as",
            Presentation::Ass => "ass",
            Presentation::ASuIJ => "ainf-su",
            Presentation::AHu => "ainf-hu",
            Presentation::F1 => "f1",
            Presentation::FBar1 => "fbar1",
            Presentation::F1SuIJ => "f1-su",
            Presentation::F1Hu => "f1-hu",
            Presentation::RegularAs => "as-regular",
        }
    }

    pub fn is_bimodule(self) -> bool {
        matches!(
            self,
            Presentation::F1
                | Presentation::FBar1
                | Presentation::F1SuIJ
                | Presentation::F1Hu
                | Presentation::RegularAs
        )
    }

    /// The operad itself, or the operad acting on both sides of a bimodule.
    pub fn operad(self) -> Presentation {
        match self {
            Presentation::F1 => Presentation::AInf,
            Presentation::FBar1 | Presentation::RegularAs => Presentation::As,
            Presentation::F1SuIJ => Presentation::ASuIJ,
            Presentation::F1Hu => Presentation::AHu,
            other => other,
        }
    }

    pub fn world(self) -> World {
        match self.operad() {
            Presentation::ASuIJ => World::StrictUnit,
            Presentation::As | Presentation::Ass => World::Bar,
            _ => World::Free,
        }
    }

    /// Whether the (floorless) presentation has nonzero nullary part.
    pub fn has_nullary(self) -> bool {
        matches!(self.operad(), Presentation::Ass | Presentation::ASuIJ | Presentation::AHu)
    }

    pub fn admits(self, label: &Label) -> bool {
        if !label.is_well_formed() {
            return false;
        }
        let operad_label = match self.operad() {
            Presentation::AInf => matches!(label, Label::M(p) if p.len() == 1),
            Presentation::As => matches!(label, Label::Mu(k) if *k >= 2),
            Presentation::Ass => matches!(label, Label::Mu(k) if *k != 1),
            Presentation::ASuIJ => {
                matches!(label, Label::M(p) if p.len() == 1)
                    || matches!(label, Label::I | Label::J | Label::Unit)
            }
            Presentation::AHu => matches!(label, Label::M(_) | Label::I),
            _ => unreachable!("operad() returns an operad"),
        };
        if operad_label {
            return true;
        }
        match self {
            Presentation::F1 | Presentation::F1SuIJ | Presentation::FBar1 => {
                matches!(label, Label::F(p, _) if p.len() == 1)
            }
            Presentation::F1Hu => matches!(label, Label::F(..) | Label::V(_)),
            Presentation::RegularAs => matches!(label, Label::UnitF(_)),
            _ => false,
        }
    }

    /// Checks labels and, for bimodules, that every input sits above
    /// exactly `floors` bimodule vertices, one per floor, numbered
    /// `1..=floors` from the inputs toward the root.
    pub fn validate(self, tree: &Tree, floors: u8) -> Result<()> {
        for l in tree.labels() {
            if !self.admits(l) {
                return Err(Error::UnknownGenerator(l.to_string(), self.name()));
            }
        }
        if !self.is_bimodule() {
            return Ok(());
        }
        fn floorless_nullary(s: &Slot) -> bool {
            match s {
                Slot::Input => false,
                Slot::Node(n) => n.label.floor().is_none() && n.children.iter().all(floorless_nullary),
            }
        }
        // `expected` counts the floors still to be crossed on the way up.
        fn walk(s: &Slot, expected: u8) -> std::result::Result<(), String> {
            match s {
                Slot::Input if expected == 0 => Ok(()),
                Slot::Input => Err(format!("an input lies below floor {expected}")),
                Slot::Node(_) if floorless_nullary(s) => Ok(()),
                Slot::Node(n) => {
                    let next = match n.label.floor() {
                        Some(q) if q == expected && q > 0 => q - 1,
                        Some(_) => {
                            return Err(format!("{} found where floor {expected} was expected", n.label))
                        }
                        None => expected,
                    };
                    n.children.iter().try_for_each(|c| walk(c, next))
                }
            }
        }
        walk(tree.root(), floors).map_err(|msg| Error::Invalid(format!("{tree}: {msg}")))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Presentation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Presentation> {
        ALL.into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown presentation `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in ALL {
            assert_eq!(p.name().parse::<Presentation>().unwrap(), p);
        }
    }

    #[test]
    fn generator_membership() {
        assert!(Presentation::AInf.admits(&Label::m(5)));
        assert!(!Presentation::AInf.admits(&Label::I));
        assert!(Presentation::AHu.admits(&Label::M(vec![1, 0])));
        assert!(!Presentation::AHu.admits(&Label::J));
        assert!(Presentation::F1Hu.admits(&Label::V(1)));
        assert!(!Presentation::F1.admits(&Label::V(1)));
        assert!(!Presentation::As.admits(&Label::Mu(0)));
        assert!(Presentation::Ass.admits(&Label::Mu(0)));
    }

    #[test]
    fn floor_validation() {
        let f2 = Tree::corolla(Label::f(2));
        assert!(Presentation::F1.validate(&f2, 1).is_ok());
        let m2 = Tree::corolla(Label::m(2));
        assert!(Presentation::F1.validate(&m2, 1).is_err());
        let (mf, _) = Tree::graft(&[&m2], &Tree::corolla(Label::f(1))).unwrap();
        assert!(Presentation::F1.validate(&mf, 1).is_ok());
        let (ff, _) = Tree::graft(&[&Tree::corolla(Label::f(1))], &Tree::corolla(Label::f(1))).unwrap();
        assert!(Presentation::F1.validate(&ff, 1).is_err());
        let i = Tree::corolla(Label::I);
        assert!(Presentation::F1Hu.validate(&i, 1).is_ok());
        let (fi, _) = Tree::graft(&[&i], &Tree::corolla(Label::f(1))).unwrap();
        assert!(Presentation::F1Hu.validate(&fi, 1).is_ok());
    }
}
