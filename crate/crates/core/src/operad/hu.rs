//! Passage between the homotopy unital presentations and their strictly
//! unital envelopes.
//!
//! `expand` writes `m_{n1;...;nk}` as `(1^n1 ⊗ j ⊗ ... ⊗ j ⊗ 1^nk) m_{n+k-1}`,
//! likewise `f_{n1;...;nk}`, and `v` as `j f1 - j ρ∅`. `project` is the
//! splitting that kills the complement spanned by `1su - i` and the lone
//! `j` (resp. `(1su - i) ρ∅` and `j ρ∅`).

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::differential::differential;
use crate::error::{Error, Result};
use crate::kernel::sign::sort_sign;
use crate::kernel::{Element, Label, Node, Slot, Tree};
use crate::presentation::{Presentation, World};
use crate::rewrite;

fn expanded_slot(label: &Label) -> Option<Slot> {
    let (pattern, make): (&[u32], Label) = match label {
        Label::M(p) if p.len() > 1 => (p, Label::m(p.iter().sum::<u32>() + p.len() as u32 - 1)),
        Label::F(p, q) if p.len() > 1 => {
            (p, Label::F(vec![p.iter().sum::<u32>() + p.len() as u32 - 1], *q))
        }
        _ => return None,
    };
    let mut children = Vec::new();
    for (b, n) in pattern.iter().enumerate() {
        if b > 0 {
            children.push(Slot::node(Label::J, vec![]));
        }
        children.extend(std::iter::repeat_n(Slot::Input, *n as usize));
    }
    Some(Slot::node(make, children))
}

/// The strictly unital expansion of a single homotopy unital generator.
pub fn expand_label(label: &Label) -> Element {
    match label {
        Label::V(q) => {
            let jf = Tree::from_shape(Slot::node(
                Label::F(vec![1], *q),
                vec![Slot::node(Label::J, vec![])],
            ));
            let mut e = Element::basis(jf);
            e -= &Element::basis(Tree::corolla(Label::J));
            e
        }
        other => match expanded_slot(other) {
            // The defining order (the j's, then the vertex) is the tetris order.
            Some(s) => Element::basis(Tree::from_shape(s)),
            None => Element::basis(Tree::corolla(other.clone())),
        },
    }
}

/// The embedding of the homotopy unital presentation into its strictly
/// unital envelope.
pub fn expand(x: &Element) -> Element {
    x.substitute(|l| match l {
        Label::V(_) => Some(expand_label(l)),
        _ => expanded_slot(l).map(|s| Element::basis(Tree::from_shape(s))),
    })
}

/// A partially projected subtree.
#[derive(Clone)]
enum Part {
    /// A `j` (or `j ρ∅`) waiting to be absorbed by a vertex below.
    Loose(u32),
    Real(Slot),
}

struct Alt {
    part: Part,
    /// For every homotopy unital vertex that absorbed `j`'s: the ids of the
    /// strictly unital factors it stands for, in their defining order.
    blocks: Vec<(u32, Vec<u32>)>,
}

fn project_slot(s: &Slot) -> Result<Vec<Alt>> {
    let n = match s {
        Slot::Input => return Ok(vec![Alt { part: Part::Real(Slot::Input), blocks: Vec::new() }]),
        Slot::Node(n) => n,
    };
    match &n.label {
        Label::J => return Ok(vec![Alt { part: Part::Loose(n.id), blocks: Vec::new() }]),
        Label::I => {
            return Ok(vec![Alt { part: Part::Real(Slot::Node(n.clone())), blocks: Vec::new() }])
        }
        Label::M(p) | Label::F(p, _) if p.len() == 1 => {}
        other => return Err(Error::NotNormalForm(format!("`{other}` inside a strictly unital tree"))),
    }
    // Cartesian product of the children's alternatives.
    let mut combos: Vec<(Vec<Part>, Vec<(u32, Vec<u32>)>)> = vec![(Vec::new(), Vec::new())];
    for c in &n.children {
        let alts = project_slot(c)?;
        let mut next = Vec::with_capacity(combos.len() * alts.len());
        for (parts, blocks) in &combos {
            for a in &alts {
                let mut p = parts.clone();
                p.push(a.part.clone());
                let mut b = blocks.clone();
                b.extend(a.blocks.iter().cloned());
                next.push((p, b));
            }
        }
        combos = next;
    }
    let mut out = Vec::new();
    for (parts, mut blocks) in combos {
        let mut pattern = vec![0u32];
        let mut children = Vec::new();
        let mut absorbed = Vec::new();
        for p in parts {
            match p {
                Part::Loose(j) => {
                    absorbed.push(j);
                    pattern.push(0);
                }
                Part::Real(slot) => {
                    *pattern.last_mut().expect("nonempty") += 1;
                    children.push(slot);
                }
            }
        }
        let label = match &n.label {
            Label::F(p, q) if p[0] == 1 && pattern == [0, 0] => {
                // j f1 = v + j ρ∅
                let j = absorbed[0];
                blocks.push((n.id, vec![j, n.id]));
                out.push(Alt {
                    part: Part::Real(Slot::Node(Node { label: Label::V(*q), id: n.id, children })),
                    blocks: blocks.clone(),
                });
                blocks.pop();
                out.push(Alt { part: Part::Loose(j), blocks });
                continue;
            }
            Label::F(_, q) => Label::F(pattern, *q),
            _ => Label::M(pattern),
        };
        if !absorbed.is_empty() {
            absorbed.push(n.id);
            blocks.push((n.id, absorbed));
        }
        out.push(Alt { part: Part::Real(Slot::Node(Node { label, id: n.id, children })), blocks });
    }
    Ok(out)
}

/// The projection onto the homotopy unital presentation; the input must be
/// in strict-unit normal form.
pub fn project(x: &Element) -> Result<Element> {
    let mut out = Element::zero(x.arity(), x.degree());
    for (t, c) in x.terms() {
        if !rewrite::is_normal(World::StrictUnit, t) {
            return Err(Error::NotNormalForm(t.to_string()));
        }
        let odd: Vec<bool> = t.labels().iter().map(|l| l.is_odd()).collect();
        // A lone 1su splits as (1su - i) + i.
        if let Some(Label::Unit) = t.root_label() {
            out.add_term(Tree::corolla(Label::I), c.clone());
            continue;
        }
        for alt in project_slot(t.root())? {
            let Part::Real(slot) = alt.part else {
                continue;
            };
            let blocks: HashMap<u32, Vec<u32>> = alt.blocks.into_iter().collect();
            let seq: Vec<(u32, bool)> = slot
                .tetris_nodes()
                .iter()
                .flat_map(|node| match blocks.get(&node.id) {
                    Some(b) => b.clone(),
                    None => vec![node.id],
                })
                .map(|id| (id, odd[id as usize]))
                .collect();
            let sign = sort_sign(&seq);
            let (h, _) = Tree::canonicalize(slot);
            out.add_signed(h, c, sign);
        }
    }
    Ok(out)
}

fn envelope(label: &Label) -> Presentation {
    if label.is_middle() {
        Presentation::F1SuIJ
    } else {
        Presentation::ASuIJ
    }
}

type Cache = RwLock<HashMap<Label, Element>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `π(∂(expand(g)))` for a homotopy unital generator `g`.
pub fn boundary(label: &Label) -> Element {
    let floor = label.floor();
    let key = label.with_floor(1);
    if let Some(e) = cache().read().expect("cache lock").get(&key) {
        return relabel_floor(e, floor);
    }
    let d = compute_boundary(&key);
    cache().write().expect("cache lock").insert(key, d.clone());
    relabel_floor(&d, floor)
}

fn compute_boundary(label: &Label) -> Element {
    if matches!(label, Label::I) {
        return Element::zero(0, 1);
    }
    let pres = envelope(label);
    let x = expand_label(label);
    let dx = differential(pres, &x).expect("expansion lies in the envelope");
    project(&dx).expect("the envelope differential keeps normal forms")
}

fn relabel_floor(e: &Element, floor: Option<u8>) -> Element {
    match floor {
        None | Some(1) => e.clone(),
        Some(q) => {
            let mut out = Element::zero(e.arity(), e.degree());
            for (t, c) in e.terms() {
                out.add_term(t.map_labels(&|l| if l.is_middle() { l.with_floor(q) } else { l.clone() }), c.clone());
            }
            out
        }
    }
}
