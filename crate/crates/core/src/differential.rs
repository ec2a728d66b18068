//! Differentials extended from generators as derivations.
//!
//! On a tree whose tetris-ordered labels are `l_1, ..., l_m`, the boundary
//! of the vertex `l_i` is substituted with the sign
//! `(-1)^(deg l_(i+1) + ... + deg l_m)`: the differential acts from the
//! right and passes the later factors.

use crate::bimodule;
use crate::error::{Error, Result};
use crate::kernel::{Choice, Element, Label, Tree};
use crate::operad::{self, hu};
use crate::presentation::{Presentation, World};
use crate::rewrite;

/// Boundary of a single generator, as an element on trees of its arity.
pub fn label_boundary(pres: Presentation, label: &Label) -> Result<Element> {
    if !pres.admits(label) {
        return Err(Error::UnknownGenerator(label.to_string(), pres.name()));
    }
    let d = label.degree() + 1;
    let a = label.arity();
    Ok(match (pres.world(), label) {
        (_, Label::I | Label::Unit | Label::Mu(_) | Label::UnitF(_)) => Element::zero(a, d),
        (_, Label::J) => {
            let mut e = Element::basis(Tree::corolla(Label::Unit));
            e -= &Element::basis(Tree::corolla(Label::I));
            e
        }
        (World::Bar, Label::F(p, q)) => bimodule::fbar1_boundary(p[0], *q),
        (_, _) if matches!(pres.operad(), Presentation::AHu) => hu::boundary(label),
        (_, Label::M(p)) => operad::ainf_boundary(p[0]),
        (_, Label::F(p, q)) => bimodule::f1_boundary(p[0], *q),
        (_, Label::V(_)) => unreachable!("v only belongs to the homotopy unital bimodule"),
    })
}

/// The differential of an element of `pres`, in normal form.
pub fn differential(pres: Presentation, x: &Element) -> Result<Element> {
    differential_with(pres.world(), x, &|l| label_boundary(pres, l))
}

/// The derivation extending the given generator boundaries.
pub fn differential_with(
    world: World,
    x: &Element,
    boundary: &impl Fn(&Label) -> Result<Element>,
) -> Result<Element> {
    let mut out = Element::zero(x.arity(), x.degree() + 1);
    for (t, c) in x.terms() {
        let labels = t.labels();
        let mut later: i64 = labels.iter().map(|l| l.degree()).sum();
        for (p, l) in labels.iter().enumerate() {
            later -= l.degree();
            let b = boundary(l)?;
            if b.is_zero() {
                continue;
            }
            let sign = if later.rem_euclid(2) == 1 { -1 } else { 1 };
            let mut choices = vec![Choice::Keep; labels.len()];
            for (bt, bc) in b.terms() {
                choices[p] = Choice::Replace(bt);
                let (nt, s) = t.rebuild(&choices);
                out.add_signed(nt, &(c * bc), sign * s);
            }
        }
    }
    Ok(rewrite::normalize(world, &out))
}

/// `∂∂x`, which must vanish.
pub fn d_squared(pres: Presentation, x: &Element) -> Result<Element> {
    differential(pres, &differential(pres, x)?)
}

/// Generators whose `∂²` is nonzero under the given generator boundaries,
/// with the offending element.
pub fn d_squared_failures_with(
    world: World,
    generators: &[Label],
    boundary: &impl Fn(&Label) -> Result<Element>,
) -> Result<Vec<(Label, Element)>> {
    let mut bad = Vec::new();
    for g in generators {
        let x = Element::basis(Tree::corolla(g.clone()));
        let dd = differential_with(world, &differential_with(world, &x, boundary)?, boundary)?;
        if !dd.is_zero() {
            bad.push((g.clone(), dd));
        }
    }
    Ok(bad)
}

pub fn d_squared_failures(pres: Presentation, generators: &[Label]) -> Result<Vec<(Label, Element)>> {
    d_squared_failures_with(pres.world(), generators, &|l| label_boundary(pres, l))
}
