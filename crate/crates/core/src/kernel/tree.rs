//! Ordered rooted trees with inputs.
//!
//! A [`Tree`] is stored in canonical form: every internal vertex carries its
//! position in the tetris ordering as `id`. Operations that build new trees
//! assign ids so that ascending id order is an admissible ordering of the
//! intended tensor factors; [`Tree::canonicalize`] then returns the canonical
//! tree together with the Koszul sign of re-sorting into tetris order.

use std::fmt;

use super::label::Label;
use super::sign::sort_sign;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Input,
    Node(Node),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub label: Label,
    pub id: u32,
    pub children: Vec<Slot>,
}

/// An ordered rooted tree with inputs, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree(Slot);

/// What to do with one vertex when rebuilding a tree.
#[derive(Clone, Debug)]
pub enum Choice<'a> {
    Keep,
    /// Replace the vertex by a tree whose inputs receive the vertex's
    /// children in order. A replacement with an input root deletes a unary
    /// vertex.
    Replace(&'a Tree),
}

const BLOCK: u32 = 1 << 12;

impl Slot {
    pub fn node(label: Label, children: Vec<Slot>) -> Slot {
        Slot::Node(Node { label, id: 0, children })
    }

    pub fn arity(&self) -> usize {
        match self {
            Slot::Input => 1,
            Slot::Node(n) => n.children.iter().map(Slot::arity).sum(),
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Slot::Input => 0,
            Slot::Node(n) => n.label.degree() + n.children.iter().map(Slot::degree).sum::<i64>(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Slot::Input => 0,
            Slot::Node(n) => 1 + n.children.iter().map(Slot::vertex_count).sum::<usize>(),
        }
    }

    fn visit<'a>(&'a self, depth: usize, out: &mut Vec<(usize, usize, &'a Node)>) {
        if let Slot::Node(n) = self {
            let pre = out.len();
            out.push((depth, pre, n));
            for c in &n.children {
                c.visit(depth + 1, out);
            }
        }
    }

    /// Vertices in tetris order: rows from the top (deepest) down to the
    /// root, each row read from left to right.
    pub fn tetris_nodes(&self) -> Vec<&Node> {
        let mut all = Vec::new();
        self.visit(0, &mut all);
        all.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        all.into_iter().map(|(_, _, n)| n).collect()
    }

    fn relabel(&mut self, map: &[(u32, u32)]) {
        if let Slot::Node(n) = self {
            let pos = map.binary_search_by_key(&n.id, |p| p.0).expect("vertex ids must be unique");
            n.id = map[pos].1;
            for c in &mut n.children {
                c.relabel(map);
            }
        }
    }

    fn shift_ids(&mut self, offset: u32) {
        if let Slot::Node(n) = self {
            n.id += offset;
            for c in &mut n.children {
                c.shift_ids(offset);
            }
        }
    }

    fn fill_inputs(&self, id_base: u32, inputs: &mut std::vec::IntoIter<Slot>) -> Slot {
        match self {
            Slot::Input => inputs.next().expect("input count checked by caller"),
            Slot::Node(n) => Slot::Node(Node {
                label: n.label.clone(),
                id: id_base + n.id,
                children: n.children.iter().map(|c| c.fill_inputs(id_base, inputs)).collect(),
            }),
        }
    }
}

impl Tree {
    /// The one-vertex tree `t¹`: the operad unit.
    pub fn unit() -> Tree {
        Tree(Slot::Input)
    }

    pub fn corolla(label: Label) -> Tree {
        let children = vec![Slot::Input; label.arity()];
        Tree(Slot::Node(Node { label, id: 0, children }))
    }

    /// Canonicalizes a tree whose ids list the factors in ascending order.
    /// Returns the sign of moving those factors into tetris order.
    pub fn canonicalize(mut slot: Slot) -> (Tree, i32) {
        let (map, sign) = {
            let nodes = slot.tetris_nodes();
            let seq: Vec<(u32, bool)> = nodes.iter().map(|n| (n.id, n.label.is_odd())).collect();
            let sign = sort_sign(&seq);
            let mut map: Vec<(u32, u32)> =
                nodes.iter().enumerate().map(|(pos, n)| (n.id, pos as u32)).collect();
            map.sort_unstable();
            debug_assert!(map.windows(2).all(|w| w[0].0 != w[1].0), "duplicate vertex ids");
            (map, sign)
        };
        slot.relabel(&map);
        (Tree(slot), sign)
    }

    /// Canonical form ignoring signs; for freshly generated trees.
    pub fn from_shape(slot: Slot) -> Tree {
        let mut slot = slot;
        let mut next = 0;
        fn number(s: &mut Slot, next: &mut u32) {
            if let Slot::Node(n) = s {
                n.id = *next;
                *next += 1;
                for c in &mut n.children {
                    number(c, next);
                }
            }
        }
        number(&mut slot, &mut next);
        Tree::canonicalize(slot).0
    }

    pub fn root(&self) -> &Slot {
        &self.0
    }

    pub fn into_slot(self) -> Slot {
        self.0
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.0, Slot::Input)
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    pub fn degree(&self) -> i64 {
        self.0.degree()
    }

    pub fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    /// Labels in tetris order (index = vertex id).
    pub fn labels(&self) -> Vec<&Label> {
        let mut out: Vec<Option<&Label>> = vec![None; self.vertex_count()];
        fn go<'a>(s: &'a Slot, out: &mut Vec<Option<&'a Label>>) {
            if let Slot::Node(n) = s {
                out[n.id as usize] = Some(&n.label);
                for c in &n.children {
                    go(c, out);
                }
            }
        }
        go(&self.0, &mut out);
        out.into_iter().map(|l| l.expect("canonical ids are dense")).collect()
    }

    pub fn root_label(&self) -> Option<&Label> {
        match &self.0 {
            Slot::Input => None,
            Slot::Node(n) => Some(&n.label),
        }
    }

    /// Number of bimodule vertices (all floors).
    pub fn middle_count(&self) -> usize {
        self.labels().iter().filter(|l| l.is_middle()).count()
    }

    /// Rebuilds the tree vertex by vertex; `choices` is indexed by tetris
    /// position. Replacement blocks take the place of their vertex in the
    /// factor order.
    pub fn rebuild(&self, choices: &[Choice<'_>]) -> (Tree, i32) {
        fn go(slot: &Slot, choices: &[Choice<'_>]) -> Slot {
            match slot {
                Slot::Input => Slot::Input,
                Slot::Node(n) => {
                    let children: Vec<Slot> = n.children.iter().map(|c| go(c, choices)).collect();
                    match &choices[n.id as usize] {
                        Choice::Keep => Slot::Node(Node {
                            label: n.label.clone(),
                            id: n.id * BLOCK,
                            children,
                        }),
                        Choice::Replace(t) => {
                            debug_assert_eq!(t.arity(), children.len());
                            let mut inputs = children.into_iter();
                            t.0.fill_inputs(n.id * BLOCK, &mut inputs)
                        }
                    }
                }
            }
        }
        Tree::canonicalize(go(&self.0, choices))
    }

    /// Grafts the roots of `args` onto the inputs of `outer`, with factors
    /// ordered `IV(t1) ⊔ ... ⊔ IV(tk) ⊔ IV(outer)`.
    pub fn graft(args: &[&Tree], outer: &Tree) -> Result<(Tree, i32)> {
        if args.len() != outer.arity() {
            return Err(Error::ArityMismatch { expected: outer.arity(), found: args.len() });
        }
        let mut offset = 0u32;
        let mut shifted = Vec::with_capacity(args.len());
        for a in args {
            let mut s = a.0.clone();
            s.shift_ids(offset);
            offset += a.vertex_count() as u32;
            shifted.push(s);
        }
        let mut inputs = shifted.into_iter();
        let slot = outer.0.fill_inputs(offset, &mut inputs);
        Ok(Tree::canonicalize(slot))
    }

    /// Replaces every label via `f`, keeping the shape. The caller is
    /// responsible for keeping arities and parities consistent.
    pub fn map_labels(&self, f: &impl Fn(&Label) -> Label) -> Tree {
        fn go(s: &Slot, f: &impl Fn(&Label) -> Label) -> Slot {
            match s {
                Slot::Input => Slot::Input,
                Slot::Node(n) => Slot::Node(Node {
                    label: f(&n.label),
                    id: n.id,
                    children: n.children.iter().map(|c| go(c, f)).collect(),
                }),
            }
        }
        Tree(go(&self.0, f))
    }

    /// For each vertex (tetris position), the number of bimodule vertices
    /// strictly between it and the root.
    pub fn floors_below(&self) -> Vec<usize> {
        let mut out = vec![0; self.vertex_count()];
        fn go(s: &Slot, below: usize, out: &mut Vec<usize>) {
            if let Slot::Node(n) = s {
                out[n.id as usize] = below;
                let next = below + usize::from(n.label.is_middle());
                for c in &n.children {
                    go(c, next, out);
                }
            }
        }
        go(&self.0, 0, &mut out);
        out
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Input => f.write_str("·"),
            Slot::Node(n) => {
                write!(f, "{}", n.label)?;
                if !n.children.is_empty() {
                    f.write_str("(")?;
                    for (k, c) in n.children.iter().enumerate() {
                        if k > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{c}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            f.write_str("1")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u32, children: Vec<Slot>) -> Slot {
        Slot::node(Label::m(n), children)
    }

    #[test]
    fn tetris_of_trivial_trees() {
        assert!(Tree::unit().root().tetris_nodes().is_empty());
        let c = Tree::corolla(Label::m(3));
        let order: Vec<_> = c.root().tetris_nodes().iter().map(|n| n.label.clone()).collect();
        assert_eq!(order, vec![Label::m(3)]);
    }

    #[test]
    fn tetris_reads_rows_top_down() {
        // ((••)•): the inner binary vertex precedes the root.
        let t = Tree::from_shape(m(2, vec![Slot::node(Label::m(3), vec![Slot::Input; 3]), Slot::Input]));
        let order: Vec<_> = t.root().tetris_nodes().iter().map(|n| n.label.clone()).collect();
        assert_eq!(order, vec![Label::m(3), Label::m(2)]);
    }

    #[test]
    fn tetris_is_admissible_and_row_wise() {
        // m2(m2(m2(·,·),·), m2(·,·)): depth-2 vertex first, then the two
        // depth-1 vertices left to right, then the root.
        let t = Tree::from_shape(m(
            2,
            vec![m(2, vec![m(3, vec![Slot::Input; 3]), Slot::Input]), m(4, vec![Slot::Input; 4])],
        ));
        let order: Vec<_> = t.root().tetris_nodes().iter().map(|n| n.label.clone()).collect();
        assert_eq!(order, vec![Label::m(3), Label::m(2), Label::m(4), Label::m(2)]);
    }

    #[test]
    fn graft_unit_laws() {
        let c = Tree::corolla(Label::m(2));
        let u = Tree::unit();
        let (g, s) = Tree::graft(&[&u, &u], &c).unwrap();
        assert_eq!((g, s), (c.clone(), 1));
        let (g, s) = Tree::graft(&[&c], &u).unwrap();
        assert_eq!((g, s), (c, 1));
    }

    #[test]
    fn graft_arity_mismatch() {
        let c = Tree::corolla(Label::m(2));
        assert!(Tree::graft(&[&c], &c).is_err());
    }

    #[test]
    fn graft_two_binary_onto_binary() {
        let c = Tree::corolla(Label::m(2));
        let (g, _) = Tree::graft(&[&c, &c], &c).unwrap();
        assert_eq!(g.arity(), 4);
        assert_eq!(g.to_string(), "m2(m2(·,·),m2(·,·))");
    }

    #[test]
    fn graft_sign_of_odd_factors() {
        // (j ⊗ j) m2: factors j, j, m2 in both orders, no sign.
        let j = Tree::corolla(Label::J);
        let c = Tree::corolla(Label::m(2));
        let (g, s) = Tree::graft(&[&j, &j], &c).unwrap();
        assert_eq!(s, 1);
        assert_eq!(g.degree(), -2);
        // m3 above the second input of m2, j above the first: the order
        // j, m3, m2 is already the tetris order.
        let m3 = Tree::corolla(Label::m(3));
        let (_, s) = Tree::graft(&[&j, &m3], &c).unwrap();
        assert_eq!(s, 1);
        // m3 in the first slot and a deep odd tree in the second slot.
        let deep = Tree::graft(&[&m3, &Tree::unit()], &c).unwrap().0;
        let (_, s) = Tree::graft(&[&m3, &deep], &c).unwrap();
        // order m3, m3', m2', m2 -> tetris m3', m3, m2', m2: one odd swap.
        assert_eq!(s, -1);
    }
}
