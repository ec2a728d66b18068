//! Exact integer linear combinations of canonical trees.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::label::Label;
use super::tree::{Choice, Tree};

/// A homogeneous linear combination of trees with nonzero integer
/// coefficients. The zero element still records arity and degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    arity: usize,
    degree: i64,
    terms: BTreeMap<Tree, BigInt>,
}

impl Element {
    pub fn zero(arity: usize, degree: i64) -> Element {
        Element { arity, degree, terms: BTreeMap::new() }
    }

    pub fn basis(tree: Tree) -> Element {
        let mut e = Element::zero(tree.arity(), tree.degree());
        e.terms.insert(tree, BigInt::one());
        e
    }

    pub fn signed(tree: Tree, sign: i32) -> Element {
        let mut e = Element::basis(tree);
        if sign < 0 {
            e = -e;
        }
        e
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tree, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Tree, BigInt)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, tree: &Tree) -> BigInt {
        self.terms.get(tree).cloned().unwrap_or_default()
    }

    /// Adds `coef * tree`, keeping only nonzero coefficients.
    pub fn add_term(&mut self, tree: Tree, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        debug_assert_eq!(tree.arity(), self.arity, "arity of {tree}");
        debug_assert_eq!(tree.degree(), self.degree, "degree of {tree}");
        match self.terms.entry(tree) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_signed(&mut self, tree: Tree, coef: &BigInt, sign: i32) {
        if sign < 0 {
            self.add_term(tree, -coef);
        } else {
            self.add_term(tree, coef.clone());
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Element, coef: &BigInt) {
        if coef.is_zero() {
            return;
        }
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c * coef);
        }
    }

    pub fn scale(&self, coef: &BigInt) -> Element {
        let mut out = Element::zero(self.arity, self.degree);
        out.add_assign_scaled(self, coef);
        out
    }

    /// Largest absolute coefficient; zero for the zero element.
    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Applies a linear map given on basis trees.
    pub fn map_linear(
        &self,
        arity: usize,
        degree: i64,
        mut f: impl FnMut(&Tree) -> Element,
    ) -> Element {
        let mut out = Element::zero(arity, degree);
        for (t, c) in &self.terms {
            let image = f(t);
            debug_assert!(image.is_zero() || (image.arity, image.degree) == (arity, degree));
            out.add_assign_scaled(&image, c);
        }
        out
    }

    /// Replaces every vertex whose label `f` maps to `Some(e)` by `e`, all
    /// at once, multilinearly. The replacements must preserve degree.
    pub fn substitute(&self, f: impl Fn(&Label) -> Option<Element>) -> Element {
        let mut out = Element::zero(self.arity, self.degree);
        for (t, c) in &self.terms {
            let alternatives: Vec<Option<Vec<(Tree, BigInt)>>> =
                t.labels().iter().map(|l| f(l).map(|e| e.into_terms().collect())).collect();
            if alternatives.iter().any(|a| matches!(a, Some(v) if v.is_empty())) {
                continue;
            }
            let mut idx = vec![0usize; alternatives.len()];
            'combos: loop {
                let mut coef = c.clone();
                let choices: Vec<Choice<'_>> = alternatives
                    .iter()
                    .zip(&idx)
                    .map(|(alt, &i)| match alt {
                        None => Choice::Keep,
                        Some(v) => {
                            coef *= &v[i].1;
                            Choice::Replace(&v[i].0)
                        }
                    })
                    .collect();
                let (nt, s) = t.rebuild(&choices);
                out.add_signed(nt, &coef, s);
                // Odometer over the replaced vertices.
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break 'combos;
                    }
                    if let Some(v) = &alternatives[pos] {
                        if idx[pos] + 1 < v.len() {
                            idx[pos] += 1;
                            break;
                        }
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        }
        out
    }
}

impl std::ops::AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        self.add_assign_scaled(rhs, &BigInt::one());
    }
}

impl std::ops::SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        self.add_assign_scaled(rhs, &-BigInt::one());
    }
}

impl std::ops::Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::Neg for Element {
    type Output = Element;
    fn neg(mut self) -> Element {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::label::Label;

    #[test]
    fn cancellation_removes_terms() {
        let t = Tree::corolla(Label::m(2));
        let a = Element::basis(t.clone());
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.arity(), 2);
        let s = &a + &a;
        assert_eq!(s.coefficient(&t), BigInt::from(2));
    }

    #[test]
    fn negation() {
        let t = Tree::corolla(Label::J);
        let a = -Element::basis(t.clone());
        assert_eq!(a.coefficient(&t), BigInt::from(-1));
        assert_eq!(a.degree(), -1);
    }
}
