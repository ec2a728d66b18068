//! The contraction of `F̄1` onto `As`: the maps `p`, `β`, `h` and `N`.
//!
//! `F̄1` is a free left `As`-module on the generators
//! `(f_i1 ⊗ ... ⊗ f_ik) m^(k)`; every map here is defined on those
//! generators and extended along the left action.

use num_bigint::BigInt;
use serde::Serialize;

use crate::basis;
use crate::differential::differential;
use crate::error::{Error, Result};
use crate::kernel::{Element, Label, Slot, Tree};
use crate::operad::{self, insert_at};
use crate::presentation::Presentation;

/// A basis tree of `F̄1`: the generator's block sizes `i_1, ..., i_k` and
/// the arity of the `As` element above each input of the generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub gens: Vec<u32>,
    pub above: Vec<u32>,
}

impl Key {
    pub fn floors(&self) -> usize {
        self.gens.len()
    }

    pub fn parse(t: &Tree) -> Result<Key> {
        let bad = || Error::NotNormalForm(format!("{t} is not a basis tree of F̄1"));
        fn above_arity(s: &Slot) -> Option<u32> {
            match s {
                Slot::Input => Some(1),
                Slot::Node(n) => match n.label {
                    Label::Mu(a) if n.children.iter().all(|c| matches!(c, Slot::Input)) => Some(a),
                    _ => None,
                },
            }
        }
        let gen_of = |s: &Slot, key: &mut Key| -> Option<()> {
            let Slot::Node(n) = s else { return None };
            let Label::F(p, 1) = &n.label else { return None };
            if p.len() != 1 {
                return None;
            }
            key.gens.push(p[0]);
            for c in &n.children {
                key.above.push(above_arity(c)?);
            }
            Some(())
        };
        let mut key = Key { gens: Vec::new(), above: Vec::new() };
        match t.root() {
            Slot::Node(n) if matches!(n.label, Label::Mu(_)) => {
                for c in &n.children {
                    gen_of(c, &mut key).ok_or_else(bad)?;
                }
            }
            root => gen_of(root, &mut key).ok_or_else(bad)?,
        }
        Ok(key)
    }
}

fn f(n: u32) -> Tree {
    Tree::corolla(Label::f(n))
}

/// The generator `(f_i1 ⊗ ... ⊗ f_ik) m^(k)`.
pub fn generator(gens: &[u32]) -> Element {
    if gens.len() == 1 {
        return Element::basis(f(gens[0]));
    }
    let args: Vec<Tree> = gens.iter().map(|&i| f(i)).collect();
    let refs: Vec<&Tree> = args.iter().collect();
    let (t, s) = Tree::graft(&refs, &Tree::corolla(Label::Mu(gens.len() as u32))).expect("arity");
    Element::signed(t, s)
}

/// `(1^⊗pos ⊗ m ⊗ 1^⊗rest) x` for `x` in `F̄1`.
fn m_above(pos: usize, x: &Element) -> Element {
    let mut out = Element::zero(x.arity() + 1, x.degree());
    for (t, c) in x.terms() {
        let (nt, s) = insert_at(&Tree::corolla(Label::Mu(2)), pos, t);
        out.add_signed(nt, c, s);
    }
    crate::rewrite::normalize(crate::presentation::World::Bar, &out)
}

/// Extends a rule on generators along the left `As`-action.
fn extend(
    pres: Presentation,
    x: &Element,
    degree_shift: i64,
    rule: impl Fn(&[u32]) -> Element,
) -> Result<Element> {
    let mut out = Element::zero(x.arity(), x.degree() + degree_shift);
    for (t, c) in x.terms() {
        let key = Key::parse(t)?;
        let image = rule(&key.gens);
        if image.is_zero() {
            continue;
        }
        let args: Vec<Element> = key.above.iter().map(|&a| operad::mu(a)).collect();
        let refs: Vec<&Element> = args.iter().collect();
        let acted = operad::compose(pres, &refs, &image)?;
        out.add_assign_scaled(&acted, c);
    }
    Ok(out)
}

/// `p`: all-ones generators go to `m^(k) 1^F`, the rest to zero.
pub fn map_p(x: &Element) -> Result<Element> {
    extend(Presentation::RegularAs, x, 0, |gens| {
        let k = gens.len();
        if gens.iter().all(|&i| i == 1) {
            let inner = if k == 1 {
                Slot::Input
            } else {
                Slot::node(Label::Mu(k as u32), vec![Slot::Input; k])
            };
            Element::basis(Tree::from_shape(Slot::node(Label::UnitF(1), vec![inner])))
        } else {
            Element::zero(gens.iter().sum::<u32>() as usize, 0)
        }
    })
}

/// `β`: `1^F ↦ f1`, extended along the left action.
pub fn map_beta(y: &Element) -> Result<Element> {
    let mut out = Element::zero(y.arity(), y.degree());
    for (t, c) in y.terms() {
        if t.root_label() != Some(&Label::UnitF(1)) {
            return Err(Error::NotNormalForm(format!("{t} is not in the regular As-bimodule")));
        }
        out.add_term(t.map_labels(&|l| if l.is_middle() { Label::f(1) } else { l.clone() }), c.clone());
    }
    Ok(out)
}

/// `h` of degree -1: merges a trailing `f1` into its left neighbour.
pub fn map_h(x: &Element) -> Result<Element> {
    extend(Presentation::FBar1, x, -1, |gens| {
        let k = gens.len();
        let arity = gens.iter().sum::<u32>() as usize;
        if k > 1 && gens[k - 1] == 1 {
            let mut g = gens[..k - 1].to_vec();
            g[k - 2] += 1;
            generator(&g)
        } else {
            Element::zero(arity, 0)
        }
    })
}

/// `N = 1 - pβ + h∂ + ∂h`, evaluated directly.
pub fn map_n_bruteforce(x: &Element) -> Result<Element> {
    let pres = Presentation::FBar1;
    let mut out = x.clone();
    out -= &map_beta(&map_p(x)?)?;
    out += &differential(pres, &map_h(x)?)?;
    out += &map_h(&differential(pres, x)?)?;
    Ok(out)
}

/// `N` by the closed-form case analysis on generators.
pub fn map_n_closed(x: &Element) -> Result<Element> {
    extend(Presentation::FBar1, x, 0, n_on_generator)
}

fn n_on_generator(gens: &[u32]) -> Element {
    let k = gens.len();
    let arity = gens.iter().sum::<u32>() as usize;
    let zero = Element::zero(arity, k as i64 - arity as i64);
    if k == 1 {
        return zero;
    }
    let last = gens[k - 1];
    let prev = gens[k - 2];
    let before: u32 = gens[..k - 1].iter().sum();
    if last > 2 {
        return zero;
    }
    if last == 2 {
        let mut g = gens[..k - 1].to_vec();
        g[k - 2] += 1;
        return m_above(before as usize, &generator(&g));
    }
    if prev > 1 {
        return m_above(before as usize - 1, &generator(&gens[..k - 1]));
    }
    let head = &gens[..k - 2];
    if head.iter().any(|&i| i != 1) {
        let mut g = head.to_vec();
        g.push(1);
        let pos: u32 = head.iter().sum();
        return m_above(pos as usize, &generator(&g));
    }
    let mut out = m_above(k - 2, &generator(&vec![1; k - 1]));
    let (t, s) = insert_at(&Tree::corolla(Label::Mu(k as u32)), 0, &f(1));
    out.add_signed(t, &BigInt::from(-1), s);
    out
}

/// `Σ_{a <= terms} N^a x`, using the closed form of `N`.
pub fn neumann_inverse(x: &Element, terms: usize) -> Result<Element> {
    let mut acc = x.clone();
    let mut power = x.clone();
    for _ in 0..terms {
        power = map_n_closed(&power)?;
        if power.is_zero() {
            break;
        }
        acc += &power;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub keys: usize,
    /// `pβ = h∂ + ∂h + 1 - N` with the closed-form `N`.
    pub identity_failures: Vec<String>,
    /// Closed form against brute force.
    pub closed_form_failures: Vec<String>,
    /// `N` must land in fewer floors.
    pub filtration_failures: Vec<String>,
    /// `N∂ = ∂N`.
    pub chain_map_failures: Vec<String>,
    /// `(1 - N) Σ N^a = 1`.
    pub neumann_failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.identity_failures.is_empty()
            && self.closed_form_failures.is_empty()
            && self.filtration_failures.is_empty()
            && self.chain_map_failures.is_empty()
            && self.neumann_failures.is_empty()
    }
}

fn max_floors(x: &Element) -> Result<usize> {
    let mut m = 0;
    for (t, _) in x.terms() {
        m = m.max(Key::parse(t)?.floors());
    }
    Ok(m)
}

/// Checks the homotopy lemma on every basis tree of `F̄1` of arity `1..=max_arity`.
pub fn verify_lemma(max_arity: usize) -> Result<LemmaReport> {
    let pres = Presentation::FBar1;
    let mut report = LemmaReport::default();
    for n in 1..=max_arity {
        for t in basis::basis_exact(pres, n, 0)? {
            report.keys += 1;
            let x = Element::basis(t.clone());
            let floors = Key::parse(&t)?.floors();
            let brute = map_n_bruteforce(&x)?;
            let closed = map_n_closed(&x)?;
            if brute != closed {
                report.closed_form_failures.push(t.to_string());
            }
            // pβ against h∂ + ∂h + 1 - N
            let lhs = map_beta(&map_p(&x)?)?;
            let mut rhs = differential(pres, &map_h(&x)?)?;
            rhs += &map_h(&differential(pres, &x)?)?;
            rhs += &x;
            rhs -= &closed;
            if lhs != rhs {
                report.identity_failures.push(t.to_string());
            }
            if !closed.is_zero() && max_floors(&closed)? >= floors {
                report.filtration_failures.push(t.to_string());
            }
            if differential(pres, &closed)? != map_n_closed(&differential(pres, &x)?)? {
                report.chain_map_failures.push(t.to_string());
            }
            let inv = neumann_inverse(&x, max_arity)?;
            let back = &inv - &map_n_closed(&inv)?;
            if back != x {
                report.neumann_failures.push(t.to_string());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(g: &[u32]) -> Element {
        generator(g)
    }

    #[test]
    fn p_on_small_keys() {
        let p1 = map_p(&gen(&[1])).unwrap();
        assert_eq!(p1.terms().next().unwrap().0.to_string(), "1F(·)");
        assert!(map_p(&gen(&[2])).unwrap().is_zero());
        let p11 = map_p(&gen(&[1, 1])).unwrap();
        assert_eq!(p11.terms().next().unwrap().0.to_string(), "1F(mu2(·,·))");
    }

    #[test]
    fn beta_then_p_is_identity() {
        for k in 1..=5 {
            let y = map_p(&gen(&vec![1; k])).unwrap();
            assert_eq!(map_p(&map_beta(&y).unwrap()).unwrap(), y);
        }
    }

    #[test]
    fn h_on_small_keys() {
        assert_eq!(map_h(&gen(&[1, 1])).unwrap(), gen(&[2]));
        assert!(map_h(&gen(&[3])).unwrap().is_zero());
        assert!(map_h(&gen(&[2, 3])).unwrap().is_zero());
    }

    #[test]
    fn n_vanishes_on_single_generators() {
        for n in 1..=5 {
            assert!(map_n_bruteforce(&gen(&[n])).unwrap().is_zero());
        }
        assert!(map_n_bruteforce(&gen(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn n_on_three_ones() {
        let n = map_n_closed(&gen(&[1, 1, 1])).unwrap();
        assert_eq!(n.len(), 2);
        assert_eq!(n, map_n_bruteforce(&gen(&[1, 1, 1])).unwrap());
    }

    #[test]
    fn lemma_small() {
        let r = verify_lemma(4).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn lemma_through_arity_six() {
        let r = verify_lemma(6).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.keys > 0);
    }
}
