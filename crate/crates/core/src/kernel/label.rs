//! Vertex labels shared by every presentation.
//!
//! A single label type covers the operad generators (`m_n`, `m_{n1;...;nk}`,
//! `i`, `j`, `1su`, the `m^(k)` of As/Ass) and the bimodule generators
//! (`f_n`, `f_{n1;...;nk}`, `v`, `1^F`). Bimodule generators carry the index
//! of the floor they sit on: floor 1 is the topmost floor, so a plain
//! bimodule uses floor 1 only and the two-floor tensor product
//! `F ⊙_O F` uses floors 1 and 2.

use std::fmt;

/// Block sizes `n1;...;nk` of a semicolon generator. One block `[n]` is the
/// plain generator `m_n` / `f_n`.
pub type Pattern = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// `m_{n1;...;nk}` of degree `4 - n - 2k`.
    M(Pattern),
    /// `m^(k)` of As / Ass; `Mu(0)` is the unit of Ass.
    Mu(u32),
    /// Homotopy unit, nullary, degree 0.
    I,
    /// Nullary, degree -1, `j∂ = 1su - i`.
    J,
    /// Strict unit `1su`, nullary cycle of degree 0.
    Unit,
    /// `f_{n1;...;nk}` of degree `3 - n - 2k` on the given floor.
    F(Pattern, u8),
    /// The nullary bimodule generator `v` of degree -1.
    V(u8),
    /// Generator `1^F` of the regular As-bimodule.
    UnitF(u8),
}

impl Label {
    pub fn m(n: u32) -> Label {
        Label::M(vec![n])
    }

    pub fn f(n: u32) -> Label {
        Label::F(vec![n], 1)
    }

    /// Number of incoming edges of a vertex carrying this label.
    pub fn arity(&self) -> usize {
        match self {
            Label::M(p) | Label::F(p, _) => p.iter().sum::<u32>() as usize,
            Label::Mu(k) => *k as usize,
            Label::I | Label::J | Label::Unit | Label::V(_) => 0,
            Label::UnitF(_) => 1,
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Label::M(p) => 4 - pattern_arity(p) - 2 * p.len() as i64,
            Label::F(p, _) => 3 - pattern_arity(p) - 2 * p.len() as i64,
            Label::Mu(_) | Label::I | Label::Unit | Label::UnitF(_) => 0,
            Label::J | Label::V(_) => -1,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree().rem_euclid(2) == 1
    }

    /// Floor index of a bimodule generator; `None` for operad labels.
    pub fn floor(&self) -> Option<u8> {
        match self {
            Label::F(_, q) | Label::V(q) | Label::UnitF(q) => Some(*q),
            _ => None,
        }
    }

    pub fn is_middle(&self) -> bool {
        self.floor().is_some()
    }

    pub fn with_floor(&self, floor: u8) -> Label {
        match self {
            Label::F(p, _) => Label::F(p.clone(), floor),
            Label::V(_) => Label::V(floor),
            Label::UnitF(_) => Label::UnitF(floor),
            other => other.clone(),
        }
    }

    /// Number of unit insertions this label stands for: each semicolon is a
    /// hidden `j`, `i` and `v` count one each. The differential never raises
    /// the total of this count, which makes it a filtration.
    pub fn unit_count(&self) -> usize {
        match self {
            Label::M(p) | Label::F(p, _) => p.len() - 1,
            Label::I | Label::J | Label::V(_) => 1,
            Label::Unit => 1,
            _ => 0,
        }
    }

    /// Whether the label names a legal generator at all (pattern constraints).
    pub fn is_well_formed(&self) -> bool {
        match self {
            Label::M(p) => !p.is_empty() && pattern_arity(p) + p.len() as i64 >= 3,
            Label::F(p, q) => {
                *q >= 1
                    && !p.is_empty()
                    && pattern_arity(p) + p.len() as i64 >= 2
                    && p.as_slice() != [0, 0]
            }
            Label::V(q) | Label::UnitF(q) => *q >= 1,
            _ => true,
        }
    }
}

fn pattern_arity(p: &[u32]) -> i64 {
    p.iter().map(|&x| x as i64).sum()
}

fn write_pattern(f: &mut fmt::Formatter<'_>, p: &[u32]) -> fmt::Result {
    for (idx, n) in p.iter().enumerate() {
        if idx > 0 {
            f.write_str(";")?;
        }
        write!(f, "{n}")?;
    }
    Ok(())
}

fn write_floor(f: &mut fmt::Formatter<'_>, q: u8) -> fmt::Result {
    if q != 1 {
        write!(f, "@{q}")?;
    }
    Ok(())
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::M(p) => {
                f.write_str("m")?;
                write_pattern(f, p)
            }
            Label::Mu(k) => write!(f, "mu{k}"),
            Label::I => f.write_str("i"),
            Label::J => f.write_str("j"),
            Label::Unit => f.write_str("1su"),
            Label::F(p, q) => {
                f.write_str("f")?;
                write_pattern(f, p)?;
                write_floor(f, *q)
            }
            Label::V(q) => {
                f.write_str("v")?;
                write_floor(f, *q)
            }
            Label::UnitF(q) => {
                f.write_str("1F")?;
                write_floor(f, *q)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_degrees() {
        assert_eq!(Label::m(2).degree(), 0);
        assert_eq!(Label::m(4).degree(), -2);
        assert_eq!(Label::M(vec![1, 0]).degree(), -1);
        assert_eq!(Label::M(vec![0, 0, 0]).degree(), -2);
        assert_eq!(Label::f(1).degree(), 0);
        assert_eq!(Label::f(3).degree(), -2);
        assert_eq!(Label::F(vec![1, 0], 1).degree(), -2);
        assert_eq!(Label::V(1).degree(), -1);
    }

    #[test]
    fn pattern_constraints() {
        assert!(!Label::M(vec![0, 0]).is_well_formed());
        assert!(Label::M(vec![1, 0]).is_well_formed());
        assert!(!Label::m(1).is_well_formed());
        assert!(Label::f(1).is_well_formed());
        assert!(!Label::F(vec![0, 0], 1).is_well_formed());
        assert!(Label::F(vec![0, 0, 0], 1).is_well_formed());
    }

    #[test]
    fn display_names() {
        assert_eq!(Label::M(vec![1, 0]).to_string(), "m1;0");
        assert_eq!(Label::F(vec![2], 2).to_string(), "f2@2");
        assert_eq!(Label::Unit.to_string(), "1su");
    }
}
