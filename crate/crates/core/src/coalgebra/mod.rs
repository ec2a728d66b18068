//! The comultiplication `Δ: F1 → F1 ⊙_A∞ F1` and the counit, on one floor
//! of a multi-floor tree at a time.
//!
//! An element of `F1 ⊙_A∞ ... ⊙_A∞ F1` is a combination of trees whose
//! bimodule vertices carry floors `1..=r`, numbered from the inputs toward
//! the root. Since every factor is free, such trees are already normal: an
//! operad vertex between two floors is the same element whichever side it
//! is said to act on. Nullary operad subtrees feeding a floor stand for
//! their `ρ∅` images moved toward the root.
//!
//! The homotopy unital case runs through the strictly unital envelope:
//! expand, apply, normalize, project.

use num_bigint::BigInt;
use serde::Serialize;

use crate::bimodule::compositions;
use crate::differential::differential;
use crate::error::{Error, Result};
use crate::kernel::{Element, Label, Slot, Tree};
use crate::operad::{self, hu};
use crate::presentation::{Presentation, World};
use crate::rewrite;

fn f(n: u32, floor: u8) -> Tree {
    Tree::corolla(Label::F(vec![n], floor))
}

/// `f_n Δ = Σ_(i1+...+ik=n) (f_i1 ⊗ ... ⊗ f_ik) f_k` with the upper factors
/// on floor `q` and the lower one on `q + 1`.
pub fn delta_generator(n: u32, q: u8) -> Element {
    let mut out = Element::zero(n as usize, 1 - n as i64);
    for parts in compositions(n) {
        let args: Vec<Tree> = parts.iter().map(|&i| f(i, q)).collect();
        let refs: Vec<&Tree> = args.iter().collect();
        let (t, s) = Tree::graft(&refs, &f(parts.len() as u32, q + 1)).expect("arity matches");
        let sigma: u32 = parts.iter().enumerate().map(|(s, i)| s as u32 * (i - 1)).sum();
        out.add_signed(t, &BigInt::from(if sigma % 2 == 1 { -1 } else { 1 }), s);
    }
    out
}

/// Moves every floor above `q` up (`by = 1`) or down (`by = -1`).
fn shift_floors(x: &Element, q: u8, by: i8) -> Element {
    let mut out = Element::zero(x.arity(), x.degree());
    for (t, c) in x.terms() {
        let nt = t.map_labels(&|l| match l.floor() {
            Some(r) if r > q => l.with_floor((r as i8 + by) as u8),
            _ => l.clone(),
        });
        out.add_term(nt, c.clone());
    }
    out
}

fn su_world(pres: Presentation) -> Result<World> {
    match pres {
        Presentation::F1 => Ok(World::Free),
        Presentation::F1SuIJ | Presentation::F1Hu => Ok(World::StrictUnit),
        other => Err(Error::Invalid(format!("no comultiplication on {other}"))),
    }
}

fn delta_su(world: World, x: &Element, q: u8) -> Element {
    let lifted = shift_floors(x, q, 1);
    let d = lifted.substitute(|l| match l {
        Label::F(p, r) if *r == q && p.len() == 1 => Some(delta_generator(p[0], q)),
        _ => None,
    });
    rewrite::normalize(world, &d)
}

fn eps_su(world: World, x: &Element, q: u8) -> Element {
    let e = x.substitute(|l| match l {
        Label::F(p, r) if *r == q && p.len() == 1 => Some(if p[0] == 1 {
            Element::basis(Tree::unit())
        } else {
            Element::zero(p[0] as usize, 1 - p[0] as i64)
        }),
        _ => None,
    });
    rewrite::normalize(world, &shift_floors(&e, q, -1))
}

/// `Δ` applied to floor `q`: floor `q` splits into `q` and `q + 1` and the
/// floors above move up by one.
pub fn delta(pres: Presentation, x: &Element, q: u8) -> Result<Element> {
    let world = su_world(pres)?;
    if pres == Presentation::F1Hu {
        return hu::project(&delta_su(world, &hu::expand(x), q));
    }
    Ok(delta_su(world, x, q))
}

/// `ε` applied to floor `q`, which disappears.
pub fn counit(pres: Presentation, x: &Element, q: u8) -> Result<Element> {
    let world = su_world(pres)?;
    if pres == Presentation::F1Hu {
        return hu::project(&eps_su(world, &hu::expand(x), q));
    }
    Ok(eps_su(world, x, q))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CoalgebraReport {
    pub generators: usize,
    pub coassociativity_failures: Vec<String>,
    pub counit_failures: Vec<String>,
    pub chain_map_failures: Vec<String>,
    /// Homotopy unital only: `Δ` of the envelope must stay inside the
    /// image of the embedding.
    pub closure_failures: Vec<String>,
}

impl CoalgebraReport {
    pub fn passed(&self) -> bool {
        self.coassociativity_failures.is_empty()
            && self.counit_failures.is_empty()
            && self.chain_map_failures.is_empty()
            && self.closure_failures.is_empty()
    }
}

/// Checks coassociativity, counitality and `Δ∂ = ∂Δ` on the generators of
/// `F1` of arity at most `bound`, or of `F1^hu` with `n + k <= bound`.
pub fn verify(pres: Presentation, bound: u32) -> Result<CoalgebraReport> {
    su_world(pres)?;
    let mut report = CoalgebraReport::default();
    let mut gens = operad::generators(pres, bound);
    if pres == Presentation::F1Hu {
        gens.push(Label::I);
    }
    for g in gens {
        report.generators += 1;
        let x = Element::basis(Tree::corolla(g.clone()));
        let name = g.to_string();
        let dx = delta(pres, &x, 1)?;
        if delta(pres, &dx, 1)? != delta(pres, &dx, 2)? {
            report.coassociativity_failures.push(name.clone());
        }
        if counit(pres, &dx, 1)? != x || counit(pres, &dx, 2)? != x {
            report.counit_failures.push(name.clone());
        }
        if differential(pres, &dx)? != delta(pres, &differential(pres, &x)?, 1)? {
            report.chain_map_failures.push(name.clone());
        }
        if pres == Presentation::F1Hu {
            let world = World::StrictUnit;
            let direct = delta_su(world, &hu::expand(&x), 1);
            if rewrite::normalize(world, &hu::expand(&dx)) != direct {
                report.closure_failures.push(name);
            }
        }
    }
    Ok(report)
}

/// `v Δ`, expected to be `v ⊗ f1 + v`.
pub fn v_delta() -> Result<Element> {
    delta(Presentation::F1Hu, &Element::basis(Tree::corolla(Label::V(1))), 1)
}

/// `v ⊗ f1 + v` on two floors.
pub fn v_delta_expected() -> Element {
    let vf = Tree::from_shape(Slot::node(Label::F(vec![1], 2), vec![Slot::node(Label::V(1), vec![])]));
    let mut e = Element::basis(vf);
    e += &Element::basis(Tree::corolla(Label::V(2)));
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_and_f2() {
        let d1 = delta_generator(1, 1);
        assert_eq!(d1.len(), 1);
        assert_eq!(d1.terms().next().unwrap().0.to_string(), "f1@2(f1(·))");
        let d2 = delta_generator(2, 1);
        assert_eq!(d2.len(), 2);
        assert_eq!(d2.coefficient(&Tree::from_shape(Slot::node(Label::F(vec![1], 2), vec![Slot::node(Label::f(2), vec![Slot::Input; 2])]))), BigInt::from(1));
    }

    #[test]
    fn counit_kills_higher() {
        let x = Element::basis(f(3, 1));
        assert!(counit(Presentation::F1, &x, 1).unwrap().is_zero());
        let y = Element::basis(f(1, 1));
        assert_eq!(counit(Presentation::F1, &y, 1).unwrap(), Element::basis(Tree::unit()));
    }

    #[test]
    fn counit_on_left_action() {
        let m2 = Element::basis(Tree::corolla(Label::m(2)));
        let x = operad::compose(Presentation::F1, &[&m2], &Element::basis(f(1, 1))).unwrap();
        assert_eq!(counit(Presentation::F1, &x, 1).unwrap(), m2);
    }

    #[test]
    fn f1_coalgebra_small() {
        let r = verify(Presentation::F1, 4).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn v_delta_anchor() {
        assert_eq!(v_delta().unwrap(), v_delta_expected());
    }

    #[test]
    fn rho_empty_compatibility() {
        let i = Element::basis(Tree::corolla(Label::I));
        assert_eq!(delta(Presentation::F1Hu, &i, 1).unwrap(), i);
    }

    #[test]
    fn f10_delta_contains_f10_f1() {
        let x = Element::basis(Tree::corolla(Label::F(vec![1, 0], 1)));
        let d = delta(Presentation::F1Hu, &x, 1).unwrap();
        let t = Tree::from_shape(Slot::node(
            Label::F(vec![1], 2),
            vec![Slot::node(Label::F(vec![1, 0], 1), vec![Slot::Input])],
        ));
        assert_eq!(d.coefficient(&t), BigInt::from(1), "{d:?}");
    }

    #[test]
    fn full_bounds() {
        let r = verify(Presentation::F1, 6).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify(Presentation::F1Hu, 5).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn hu_coalgebra_small() {
        let r = verify(Presentation::F1Hu, 3).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
