//! Operad bimodules: the boundaries of `f_n` and the two actions.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kernel::{Element, Label, Tree};
use crate::operad::{self, insert_at};
use crate::presentation::Presentation;

fn f(n: u32, floor: u8) -> Tree {
    Tree::corolla(Label::F(vec![n], floor))
}

/// Compositions of `k` into positive parts.
pub fn compositions(k: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in compositions(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `f_k∂ = Σ (-1)^(t+rn) (1^r ⊗ m_n ⊗ 1^t) f_(r+1+t)
///        - Σ (-1)^σ (f_i1 ⊗ ... ⊗ f_il) m_l`
/// with `σ = Σ_s (s-1)(i_s - 1)`.
pub fn f1_boundary(k: u32, floor: u8) -> Element {
    let mut out = Element::zero(k as usize, 2 - k as i64);
    for n in 2..=k {
        for r in 0..=(k - n) {
            let t = k - n - r;
            let (tree, s) = insert_at(&Tree::corolla(Label::m(n)), r as usize, &f(r + 1 + t, floor));
            let odd = (t + r * n) % 2 == 1;
            out.add_term(tree, BigInt::from(if odd { -s } else { s }));
        }
    }
    for parts in compositions(k) {
        let l = parts.len() as u32;
        if l < 2 {
            continue;
        }
        let sigma: u32 = parts.iter().enumerate().map(|(s, i)| s as u32 * (i - 1)).sum();
        let args: Vec<Tree> = parts.iter().map(|&i| f(i, floor)).collect();
        let refs: Vec<&Tree> = args.iter().collect();
        let (tree, s) = Tree::graft(&refs, &Tree::corolla(Label::m(l))).expect("arity matches");
        out.add_term(tree, BigInt::from(if sigma % 2 == 1 { s } else { -s }));
    }
    out
}

/// `f_k∂ = Σ_(r+2+t=k) (-1)^t (1^r ⊗ m ⊗ 1^t) f_(k-1) + Σ_(i+j=k) (-1)^j (f_i ⊗ f_j) m`
/// over `As`, where `m = m^(2)`.
pub fn fbar1_boundary(k: u32, floor: u8) -> Element {
    let mut out = Element::zero(k as usize, 2 - k as i64);
    let m = Tree::corolla(Label::Mu(2));
    if k >= 2 {
        for r in 0..=(k - 2) {
            let t = k - 2 - r;
            let (tree, s) = insert_at(&m, r as usize, &f(k - 1, floor));
            out.add_term(tree, BigInt::from(if t % 2 == 1 { -s } else { s }));
        }
    }
    for i in 1..k {
        let j = k - i;
        let (tree, s) = Tree::graft(&[&f(i, floor), &f(j, floor)], &m).expect("arity matches");
        out.add_term(tree, BigInt::from(if j % 2 == 1 { -s } else { s }));
    }
    out
}

/// Left action: operad elements fed into the inputs of a bimodule element.
pub fn left_action(pres: Presentation, args: &[&Element], p: &Element) -> Result<Element> {
    if !pres.is_bimodule() {
        return Err(Error::Invalid(format!("{pres} is not a bimodule")));
    }
    operad::compose(pres, args, p)
}

/// Right action: bimodule elements fed into an operad element. With no
/// arguments this is `ρ∅` on a nullary operad element.
pub fn right_action(pres: Presentation, ps: &[&Element], b: &Element) -> Result<Element> {
    if !pres.is_bimodule() {
        return Err(Error::Invalid(format!("{pres} is not a bimodule")));
    }
    operad::compose(pres, ps, b)
}

/// `ρ∅`: a nullary operad element viewed in the bimodule.
pub fn rho_empty(pres: Presentation, b: &Element) -> Result<Element> {
    if b.arity() != 0 {
        return Err(Error::ArityMismatch { expected: 0, found: b.arity() });
    }
    right_action(pres, &[], b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differential::{d_squared, differential};

    #[test]
    fn f1_is_a_cycle() {
        assert!(f1_boundary(1, 1).is_zero());
    }

    #[test]
    fn f2_boundary() {
        let d = f1_boundary(2, 1);
        assert_eq!(d.len(), 2);
        let m2f1 = insert_at(&Tree::corolla(Label::m(2)), 0, &f(1, 1)).0;
        assert_eq!(d.coefficient(&m2f1), BigInt::from(1));
        let ffm = Tree::graft(&[&f(1, 1), &f(1, 1)], &Tree::corolla(Label::m(2))).unwrap().0;
        assert_eq!(d.coefficient(&ffm), BigInt::from(-1));
    }

    #[test]
    fn fbar_f2_boundary() {
        let d = fbar1_boundary(2, 1);
        let mf = insert_at(&Tree::corolla(Label::Mu(2)), 0, &f(1, 1)).0;
        assert_eq!(d.coefficient(&mf), BigInt::from(1));
        let ffm = Tree::graft(&[&f(1, 1), &f(1, 1)], &Tree::corolla(Label::Mu(2))).unwrap().0;
        assert_eq!(d.coefficient(&ffm), BigInt::from(-1));
    }

    #[test]
    fn d_squared_vanishes_on_f() {
        for k in 1..=6 {
            let x = Element::basis(f(k, 1));
            assert!(d_squared(Presentation::F1, &x).unwrap().is_zero(), "F1 f{k}");
            assert!(d_squared(Presentation::FBar1, &x).unwrap().is_zero(), "F̄1 f{k}");
        }
    }

    #[test]
    fn right_unit_and_degree() {
        let f1 = Element::basis(f(1, 1));
        let one = Element::basis(Tree::unit());
        assert_eq!(right_action(Presentation::F1, &[&f1], &one).unwrap(), f1);
        let m2 = Element::basis(Tree::corolla(Label::m(2)));
        let x = left_action(Presentation::F1, &[&m2], &f1).unwrap();
        assert_eq!((x.arity(), x.degree()), (2, 0));
    }

    #[test]
    fn left_action_commutes_with_differential() {
        let ff = Tree::graft(&[&f(1, 1), &f(1, 1)], &Tree::corolla(Label::Mu(2))).unwrap().0;
        let x = Element::basis(ff);
        let m = Element::basis(Tree::corolla(Label::Mu(2)));
        let one = Element::basis(Tree::unit());
        let pres = Presentation::FBar1;
        let lhs = differential(pres, &left_action(pres, &[&m, &one], &x).unwrap()).unwrap();
        let rhs = left_action(pres, &[&m, &one], &differential(pres, &x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
