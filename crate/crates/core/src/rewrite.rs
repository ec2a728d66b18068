//! Normal forms: strict-unit rewriting and contraction of `m^(k)` vertices.
//!
//! Rewriting keeps the ids of surviving vertices, so the final
//! canonicalization picks up the Koszul sign of the new tetris order.

use crate::kernel::{Element, Label, Node, Slot, Tree};
use crate::presentation::World;

fn is_unit(s: &Slot) -> bool {
    matches!(s, Slot::Node(Node { label: Label::Unit, .. }))
}

fn is_mu(s: &Slot) -> bool {
    matches!(s, Slot::Node(Node { label: Label::Mu(_), .. }))
}

fn is_unit_f(s: &Slot) -> bool {
    matches!(s, Slot::Node(Node { label: Label::UnitF(_), .. }))
}

/// Rewrites innermost-first. `None` means the tree is zero.
pub fn normalize_slot(world: World, slot: Slot) -> Option<Slot> {
    match world {
        World::Free => Some(slot),
        World::StrictUnit => strict_unit(slot),
        World::Bar => Some(bar(slot)),
    }
}

fn strict_unit(slot: Slot) -> Option<Slot> {
    let Slot::Node(n) = slot else {
        return Some(slot);
    };
    let mut children = Vec::with_capacity(n.children.len());
    for c in n.children {
        children.push(strict_unit(c)?);
    }
    let unit_at = children.iter().position(is_unit);
    match (&n.label, unit_at) {
        (Label::M(p), Some(pos)) if p.len() == 1 => {
            if p[0] == 2 {
                // (1su ⊗ 1)m2 = 1 = (1 ⊗ 1su)m2
                Some(children.swap_remove(1 - pos))
            } else {
                None
            }
        }
        (Label::F(p, _), Some(_)) if p.len() == 1 => {
            if p[0] == 1 {
                // 1su f1 = 1su ρ∅: the unit leaves the floor.
                children.pop()
            } else {
                None
            }
        }
        _ => Some(Slot::Node(Node { label: n.label, id: n.id, children })),
    }
}

fn bar(slot: Slot) -> Slot {
    let Slot::Node(n) = slot else {
        return slot;
    };
    let children: Vec<Slot> = n.children.into_iter().map(bar).collect();
    match n.label {
        Label::Mu(_) => {
            let mut flat = Vec::with_capacity(children.len());
            for c in children {
                match c {
                    Slot::Node(Node { label: Label::Mu(_), children: g, .. }) => flat.extend(g),
                    other => flat.push(other),
                }
            }
            debug_assert!(!flat.iter().any(is_mu));
            if flat.len() == 1 {
                return flat.pop().expect("one child");
            }
            if !flat.is_empty() && flat.iter().all(is_unit_f) {
                // (1^F ⊗ ... ⊗ 1^F) m^(k) = m^(k) 1^F in the regular bimodule.
                let mut unit_id = None;
                let mut floor = 1;
                let mut grand = Vec::with_capacity(flat.len());
                for c in flat {
                    if let Slot::Node(Node { label: Label::UnitF(q), id, mut children }) = c {
                        unit_id = Some(unit_id.map_or(id, |u: u32| u.max(id)));
                        floor = q;
                        grand.push(children.pop().expect("1^F is unary"));
                    }
                }
                let above = bar(Slot::Node(Node {
                    label: Label::Mu(grand.len() as u32),
                    id: n.id,
                    children: grand,
                }));
                return Slot::Node(Node {
                    label: Label::UnitF(floor),
                    id: unit_id.expect("nonempty"),
                    children: vec![above],
                });
            }
            Slot::Node(Node { label: Label::Mu(flat.len() as u32), id: n.id, children: flat })
        }
        label => Slot::Node(Node { label, id: n.id, children }),
    }
}

/// Normalizes every term of an element.
pub fn normalize(world: World, x: &Element) -> Element {
    if world == World::Free {
        return x.clone();
    }
    let mut out = Element::zero(x.arity(), x.degree());
    for (t, c) in x.terms() {
        if let Some(s) = normalize_slot(world, t.root().clone()) {
            let (t, sign) = Tree::canonicalize(s);
            out.add_signed(t, c, sign);
        }
    }
    out
}

/// Whether a tree is already in normal form.
pub fn is_normal(world: World, t: &Tree) -> bool {
    match normalize_slot(world, t.root().clone()) {
        Some(s) => Tree::canonicalize(s).0 == *t,
        None => false,
    }
}
