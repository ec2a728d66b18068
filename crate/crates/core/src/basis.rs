//! Basis enumeration for the shipped presentations.
//!
//! Trees are produced with an exact count of unit insertions (semicolons,
//! `i` and `v`). The homotopy unital presentations have infinitely many
//! trees in a fixed arity and degree (`m2(i, m2(i, ...))`), but only
//! finitely many with a bounded count, and the differential never raises
//! the count. For the other presentations the count is always zero.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::kernel::{Label, Slot, Tree};
use crate::presentation::{Presentation, World};

/// Generators of the operad part with the given arity and unit count.
fn operad_generators(pres: Presentation, arity: usize, units: usize) -> Vec<Label> {
    let a = arity as u32;
    match pres.operad() {
        Presentation::AInf => {
            if units == 0 && a >= 2 {
                vec![Label::m(a)]
            } else {
                vec![]
            }
        }
        Presentation::AHu => {
            let mut out = Vec::new();
            if arity == 0 && units == 1 {
                out.push(Label::I);
            }
            for p in weak_compositions(a, units + 1) {
                let l = Label::M(p);
                if l.is_well_formed() {
                    out.push(l);
                }
            }
            out
        }
        Presentation::As | Presentation::Ass => {
            if units == 0 && a >= 2 {
                vec![Label::Mu(a)]
            } else {
                vec![]
            }
        }
        _ => vec![],
    }
}

fn middle_generators(pres: Presentation, arity: usize, units: usize) -> Vec<Label> {
    let a = arity as u32;
    match pres {
        Presentation::F1 | Presentation::FBar1 => {
            if units == 0 && a >= 1 {
                vec![Label::f(a)]
            } else {
                vec![]
            }
        }
        Presentation::F1Hu => {
            let mut out = Vec::new();
            if arity == 0 && units == 1 {
                out.push(Label::V(1));
            }
            for p in weak_compositions(a, units + 1) {
                let l = Label::F(p, 1);
                if l.is_well_formed() {
                    out.push(l);
                }
            }
            out
        }
        Presentation::RegularAs => {
            if units == 0 && a == 1 {
                vec![Label::UnitF(1)]
            } else {
                vec![]
            }
        }
        _ => vec![],
    }
}

fn weak_compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in weak_compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Ways to write `(n, u)` as an ordered sum of `k` pairs.
fn splits(k: usize, n: usize, u: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 0 {
        return if n == 0 && u == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for n0 in 0..=n {
        for u0 in 0..=u {
            for mut rest in splits(k - 1, n - n0, u - u0) {
                rest.insert(0, (n0, u0));
                out.push(rest);
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Region {
    /// Pure operad trees.
    Operad,
    /// A bimodule vertex at the root.
    Floor,
    /// Operad vertices below the floor, at least one floor above.
    Below,
}

struct Enumerator {
    pres: Presentation,
    memo: HashMap<(Region, usize, usize), Vec<Slot>>,
}

impl Enumerator {
    fn get(&mut self, region: Region, n: usize, u: usize) -> Vec<Slot> {
        if (n, u) == (0, 0) {
            return Vec::new();
        }
        if let Some(v) = self.memo.get(&(region, n, u)) {
            return v.clone();
        }
        let out = self.compute(region, n, u);
        self.memo.insert((region, n, u), out.clone());
        out
    }

    /// All child lists for a vertex of the given arity, each child drawn
    /// from `pick(child_arity, child_units)`.
    fn children(
        &mut self,
        arity: usize,
        n: usize,
        u: usize,
        pick: &mut impl FnMut(&mut Self, usize, usize) -> Vec<Slot>,
    ) -> Vec<Vec<Slot>> {
        let mut out = Vec::new();
        for split in splits(arity, n, u) {
            // Nothing has arity 0 and no units; skipping such splits also
            // keeps the recursion well founded.
            if split.contains(&(0, 0)) {
                continue;
            }
            let mut lists: Vec<Vec<Slot>> = vec![Vec::new()];
            for &(cn, cu) in &split {
                let opts = pick(self, cn, cu);
                if opts.is_empty() {
                    lists.clear();
                    break;
                }
                let mut next = Vec::with_capacity(lists.len() * opts.len());
                for l in &lists {
                    for o in &opts {
                        let mut v = l.clone();
                        v.push(o.clone());
                        next.push(v);
                    }
                }
                lists = next;
            }
            out.extend(lists);
        }
        out
    }

    fn compute(&mut self, region: Region, n: usize, u: usize) -> Vec<Slot> {
        let bar = self.pres.world() == World::Bar;
        let mut out = Vec::new();
        match region {
            Region::Operad => {
                if n == 1 && u == 0 {
                    out.push(Slot::Input);
                }
                // A vertex of arity a with children of arity 0 spends at
                // least one unit per such child.
                for a in 0..=(n + u) {
                    for ug in 0..=u {
                        for g in operad_generators(self.pres, a, ug) {
                            if bar {
                                if a == n && ug == u {
                                    out.push(Slot::node(g, vec![Slot::Input; a]));
                                }
                                continue;
                            }
                            let kids = self.children(a, n, u - ug, &mut |e, cn, cu| {
                                e.get(Region::Operad, cn, cu)
                            });
                            out.extend(kids.into_iter().map(|c| Slot::node(g.clone(), c)));
                        }
                    }
                }
            }
            Region::Floor => {
                for a in 0..=(n + u) {
                    for ug in 0..=u {
                        for g in middle_generators(self.pres, a, ug) {
                            let kids = self.children(a, n, u - ug, &mut |e, cn, cu| {
                                if bar && cn == 0 {
                                    Vec::new()
                                } else {
                                    e.get(Region::Operad, cn, cu)
                                }
                            });
                            out.extend(kids.into_iter().map(|c| Slot::node(g.clone(), c)));
                        }
                    }
                }
            }
            Region::Below => {
                out.extend(self.get(Region::Floor, n, u));
                for a in 1..=(n + u) {
                    for ug in 0..=u {
                        for g in operad_generators(self.pres, a, ug) {
                            let kids = self.children(a, n, u - ug, &mut |e, cn, cu| {
                                let mut v = if bar {
                                    e.get(Region::Floor, cn, cu)
                                } else {
                                    e.get(Region::Below, cn, cu)
                                };
                                if cn == 0 && !bar {
                                    v.extend(e.get(Region::Operad, 0, cu));
                                }
                                v
                            });
                            for c in kids {
                                if c.iter().any(has_floor) {
                                    out.push(Slot::node(g.clone(), c));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

fn has_floor(s: &Slot) -> bool {
    match s {
        Slot::Input => false,
        Slot::Node(n) => n.label.is_middle() || n.children.iter().any(has_floor),
    }
}

/// Whether the presentation has a finite basis in each arity.
pub fn is_finite(pres: Presentation) -> bool {
    !matches!(pres, Presentation::AHu | Presentation::F1Hu | Presentation::ASuIJ | Presentation::F1SuIJ)
}

/// All basis trees of arity `n` whose unit count is exactly `u`, sorted.
pub fn basis_exact(pres: Presentation, n: usize, u: usize) -> Result<Vec<Tree>> {
    let slots = match pres {
        Presentation::ASuIJ | Presentation::F1SuIJ => {
            return Err(Error::Invalid(format!("{pres} has no enumerated basis")))
        }
        Presentation::As => {
            if n == 0 || u > 0 {
                Vec::new()
            } else if n == 1 {
                vec![Slot::Input]
            } else {
                vec![Slot::node(Label::Mu(n as u32), vec![Slot::Input; n])]
            }
        }
        Presentation::Ass => {
            if u > 0 {
                Vec::new()
            } else if n == 1 {
                vec![Slot::Input]
            } else {
                vec![Slot::node(Label::Mu(n as u32), vec![Slot::Input; n])]
            }
        }
        p => {
            let mut e = Enumerator { pres: p, memo: HashMap::new() };
            if p.is_bimodule() {
                let mut v = e.get(Region::Below, n, u);
                if n == 0 {
                    v.extend(e.get(Region::Operad, 0, u));
                }
                v
            } else {
                e.get(Region::Operad, n, u)
            }
        }
    };
    let mut trees: Vec<Tree> = slots.into_iter().map(Tree::from_shape).collect();
    trees.sort();
    trees.dedup();
    Ok(trees)
}

/// Basis trees of arity `n` with unit count at most `max_units`, grouped
/// by degree.
pub fn basis_by_degree(pres: Presentation, n: usize, max_units: usize) -> Result<BTreeMap<i64, Vec<Tree>>> {
    let mut out: BTreeMap<i64, Vec<Tree>> = BTreeMap::new();
    for u in 0..=max_units {
        for t in basis_exact(pres, n, u)? {
            out.entry(t.degree()).or_default().push(t);
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    Ok(out)
}

/// Unit count of a tree: the filtration index.
pub fn unit_count(t: &Tree) -> usize {
    t.labels().iter().map(|l| l.unit_count()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(pres: Presentation, n: usize) -> usize {
        basis_exact(pres, n, 0).unwrap().len()
    }

    #[test]
    fn ainf_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| total(Presentation::AInf, n)).collect();
        assert_eq!(counts, vec![1, 1, 3, 11, 45, 197]);
        assert_eq!(total(Presentation::AInf, 0), 0);
    }

    #[test]
    fn ainf4_by_degree() {
        let b = basis_by_degree(Presentation::AInf, 4, 0).unwrap();
        let dims: Vec<(i64, usize)> = b.iter().map(|(d, v)| (*d, v.len())).collect();
        assert_eq!(dims, vec![(-2, 1), (-1, 5), (0, 5)]);
    }

    #[test]
    fn f1_small() {
        assert_eq!(total(Presentation::F1, 0), 0);
        // f1 ; f2, m2 f1, (f1 ⊗ f1) m2
        assert_eq!(total(Presentation::F1, 1), 1);
        assert_eq!(total(Presentation::F1, 2), 3);
    }

    #[test]
    fn fbar1_small() {
        // f3; mu2 above f2 in two ways; mu3 f1; (f1 f2) m, (f2 f1) m,
        // (mu2 f1 ⊗ f1) m, (f1 ⊗ mu2 f1) m, (f1 f1 f1) mu3
        assert_eq!(total(Presentation::FBar1, 3), 9);
    }

    #[test]
    fn hu_low_counts() {
        // i
        assert_eq!(basis_exact(Presentation::AHu, 0, 1).unwrap().len(), 1);
        // m0;0;0, m2(i,i), m1;0(i), m0;1(i)
        assert_eq!(basis_exact(Presentation::AHu, 0, 2).unwrap().len(), 4);
        // v, i ρ∅, f1(i)
        assert_eq!(basis_exact(Presentation::F1Hu, 0, 1).unwrap().len(), 3);
    }

    #[test]
    fn bases_are_valid() {
        for pres in [Presentation::AInf, Presentation::AHu, Presentation::F1, Presentation::F1Hu, Presentation::FBar1] {
            for n in 0..=3 {
                for u in 0..=2 {
                    for t in basis_exact(pres, n, u).unwrap() {
                        pres.validate(&t, 1).unwrap();
                        assert_eq!(unit_count(&t), u);
                        assert_eq!(t.arity(), n);
                    }
                }
            }
        }
    }
}
