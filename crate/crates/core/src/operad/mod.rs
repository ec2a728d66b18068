//! Operad composition and the generator boundaries of `A∞`.

pub mod hu;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kernel::{Element, Label, Tree};
use crate::presentation::Presentation;
use crate::rewrite;

/// `(1^⊗j ⊗ inner ⊗ 1^⊗q) outer` for corollas.
pub(crate) fn insert_at(inner: &Tree, j: usize, outer: &Tree) -> (Tree, i32) {
    let unit = Tree::unit();
    let args: Vec<&Tree> = (0..outer.arity()).map(|s| if s == j { inner } else { &unit }).collect();
    Tree::graft(&args, outer).expect("arity matches by construction")
}

/// `m_n∂ = -Σ_{j+p+q=n, 1<p<n} (-1)^(jp+q) (1^⊗j ⊗ m_p ⊗ 1^⊗q) m_(j+1+q)`.
pub fn ainf_boundary(n: u32) -> Element {
    let mut out = Element::zero(n as usize, 3 - n as i64);
    for p in 2..n {
        for j in 0..=(n - p) {
            let q = n - p - j;
            let (t, s) = insert_at(&Tree::corolla(Label::m(p)), j as usize, &Tree::corolla(Label::m(j + 1 + q)));
            let e = (j * p + q).is_multiple_of(2);
            out.add_term(t, BigInt::from(if e { -s } else { s }));
        }
    }
    out
}

/// Operadic composition `(x_1 ⊗ ... ⊗ x_k) y`, multilinear, in normal form.
pub fn compose(pres: Presentation, args: &[&Element], outer: &Element) -> Result<Element> {
    if args.len() != outer.arity() {
        return Err(Error::ArityMismatch { expected: outer.arity(), found: args.len() });
    }
    let arity = args.iter().map(|a| a.arity()).sum();
    let degree = args.iter().map(|a| a.degree()).sum::<i64>() + outer.degree();
    let mut partial: Vec<(Vec<&Tree>, BigInt)> = vec![(Vec::new(), BigInt::from(1))];
    for a in args {
        let mut next = Vec::new();
        for (trees, c) in &partial {
            for (t, tc) in a.terms() {
                let mut v = trees.clone();
                v.push(t);
                next.push((v, c * tc));
            }
        }
        partial = next;
    }
    let mut out = Element::zero(arity, degree);
    for (trees, c) in &partial {
        for (t, tc) in outer.terms() {
            let (g, s) = Tree::graft(trees, t)?;
            out.add_signed(g, &(c * tc), s);
        }
    }
    Ok(rewrite::normalize(pres.world(), &out))
}

/// The element `m^(k)` of `As` / `Ass`.
pub fn mu(k: u32) -> Element {
    if k == 1 {
        Element::basis(Tree::unit())
    } else {
        Element::basis(Tree::corolla(Label::Mu(k)))
    }
}

/// The single generators of a presentation up to arity `n_max`; for the
/// homotopy unital presentations, those with `n + k <= n_max`.
pub fn generators(pres: Presentation, n_max: u32) -> Vec<Label> {
    let mut out = Vec::new();
    match pres {
        Presentation::AInf => out.extend((2..=n_max).map(Label::m)),
        Presentation::As => out.extend((2..=n_max).map(Label::Mu)),
        Presentation::Ass => out.extend((0..=n_max).filter(|&k| k != 1).map(Label::Mu)),
        Presentation::ASuIJ => {
            out.extend([Label::I, Label::J, Label::Unit]);
            out.extend((2..=n_max).map(Label::m));
        }
        Presentation::AHu => {
            out.push(Label::I);
            out.extend(patterns(n_max).into_iter().map(Label::M).filter(|l| l.is_well_formed()));
        }
        Presentation::F1 | Presentation::F1SuIJ | Presentation::FBar1 => {
            out.extend((1..=n_max).map(Label::f));
        }
        Presentation::F1Hu => {
            out.push(Label::V(1));
            out.extend(
                patterns(n_max).into_iter().map(|p| Label::F(p, 1)).filter(|l| l.is_well_formed()),
            );
        }
        Presentation::RegularAs => out.push(Label::UnitF(1)),
    }
    out
}

/// All patterns `n1;...;nk` with `n + k <= bound`, by size then lexicographically.
pub fn patterns(bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for k in 1..=bound {
        for n in 0..=(bound - k) {
            compositions_weak(n, k as usize, &mut Vec::new(), &mut out);
        }
    }
    out.sort_by_key(|p| (p.iter().sum::<u32>() + p.len() as u32, p.len(), p.clone()));
    out
}

fn compositions_weak(n: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(n);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=n {
        prefix.push(first);
        compositions_weak(n - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differential::differential;

    fn b(t: Tree) -> Element {
        Element::basis(t)
    }

    #[test]
    fn m2_is_a_cycle() {
        assert!(ainf_boundary(2).is_zero());
    }

    #[test]
    fn m3_boundary_is_the_associator() {
        let m2 = Tree::corolla(Label::m(2));
        let left = insert_at(&m2, 0, &m2).0;
        let right = insert_at(&m2, 1, &m2).0;
        let expected = &b(left) - &b(right);
        assert_eq!(ainf_boundary(3), expected);
    }

    #[test]
    fn m4_boundary_has_five_terms() {
        // p = 2 with three placements, p = 3 with two.
        assert_eq!(ainf_boundary(4).len(), 5);
    }

    #[test]
    fn compose_unit_laws() {
        let m2 = b(Tree::corolla(Label::m(2)));
        let one = b(Tree::unit());
        assert_eq!(compose(Presentation::AInf, &[&one, &one], &m2).unwrap(), m2);
        let left = compose(Presentation::AInf, &[&m2, &one], &m2).unwrap();
        assert_eq!(left.len(), 1);
        assert_eq!(left.terms().next().unwrap().0.to_string(), "m2(m2(·,·),·)");
    }

    #[test]
    fn compose_nullary() {
        let j = b(Tree::corolla(Label::J));
        let m2 = b(Tree::corolla(Label::m(2)));
        let x = compose(Presentation::ASuIJ, &[&j, &j], &m2).unwrap();
        assert_eq!((x.arity(), x.degree(), x.len()), (0, -2, 1));
    }

    #[test]
    fn as_composition() {
        let x = compose(Presentation::As, &[&mu(2), &mu(3)], &mu(2)).unwrap();
        assert_eq!(x, mu(5));
        let unit = Element::basis(Tree::corolla(Label::Mu(0)));
        let x = compose(Presentation::Ass, &[&unit, &mu(1)], &mu(2)).unwrap();
        assert_eq!(x, mu(1));
    }

    #[test]
    fn ainf_d_squared_small() {
        for n in 2..=6 {
            let x = b(Tree::corolla(Label::m(n)));
            let dd = differential(Presentation::AInf, &differential(Presentation::AInf, &x).unwrap()).unwrap();
            assert!(dd.is_zero(), "m{n}: {dd:?}");
        }
    }

    #[test]
    fn pattern_listing() {
        let p = patterns(3);
        assert!(p.contains(&vec![1, 0]));
        assert!(p.contains(&vec![0, 0, 0]));
        assert!(p.iter().all(|q| q.iter().sum::<u32>() + q.len() as u32 <= 3));
    }
}
