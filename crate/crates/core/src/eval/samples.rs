//! Small instances and random generators for tests and benchmarks.

use num_rational::BigRational;
use rand::Rng;

use super::checks::push_forward;
use super::{invert, FiniteAlgebra, FiniteMorphism, Module, MultiMap};
use crate::kernel::{Label, Ring};

fn int(ring: Ring, c: i64) -> BigRational {
    ring.from_int(&c.into())
}

fn unit_row(dim: usize) -> Vec<BigRational> {
    (0..dim).map(|k| BigRational::from_integer(i64::from(k == 0).into())).collect()
}

/// A graded algebra from its multiplication table on basis indices, with
/// basis vector 0 the unit and `i` the unit.
fn from_products(basis: &[(&str, i64)], products: &[(usize, usize, usize, i64)], ring: Ring) -> FiniteAlgebra {
    let mut a = FiniteAlgebra::new(Module::new(basis));
    let n = a.dim();
    let mut m2 = a.zero_map(2, 0);
    for y in 0..n {
        m2.set(&[0, y], y, int(ring, 1));
        m2.set(&[y, 0], y, int(ring, 1));
    }
    for &(x, y, o, c) in products {
        m2.set(&[x, y], o, int(ring, c));
    }
    a.ops.insert(Label::m(2), m2);
    a.ops.insert(Label::I, MultiMap::element(0, n, &unit_row(n)));
    a
}

/// `k[x]/(x^2)` with `x` in degree `d`, strictly unital, `m1 = 0`.
pub fn dual_numbers(d: i64) -> FiniteAlgebra {
    from_products(&[("1", 0), ("x", d)], &[], Ring::Rationals)
}

/// `k[e]/(e^2)` with `e` in degree -1 and `e m1 = 1`: an acyclic
/// dg-algebra.
pub fn acyclic(ring: Ring) -> FiniteAlgebra {
    let mut a = from_products(&[("1", 0), ("e", -1)], &[], ring);
    a.differential.set(&[1], 0, int(ring, 1));
    a
}

/// `k ⊕ ka ⊕ kb` with `a`, `b` in degree 1 and all products of `a`, `b`
/// zero.
pub fn square_zero(ring: Ring) -> FiniteAlgebra {
    from_products(&[("1", 0), ("a", 1), ("b", 1)], &[], ring)
}

/// The exterior algebra on `a`, `b` in degree 1.
pub fn exterior(ring: Ring) -> FiniteAlgebra {
    from_products(&[("1", 0), ("a", 1), ("b", 1), ("ab", 2)], &[(1, 2, 3, 1), (2, 1, 3, -1)], ring)
}

/// A random map of the given arity and degree with small integer entries
/// on degree-compatible positions.
pub fn random_map(rng: &mut impl Rng, ring: Ring, m: &Module, arity: usize, degree: i64) -> MultiMap {
    let mut out = MultiMap::zero(arity, degree, m.dim(), m.dim());
    for r in 0..out.rows() {
        let t = out.tuple(r);
        let d: i64 = t.iter().map(|&x| m.degrees[x]).sum::<i64>() + degree;
        for o in 0..m.dim() {
            if m.degrees[o] == d && rng.gen_bool(0.5) {
                out.set(&t, o, int(ring, rng.gen_range(-3..=3)));
            }
        }
    }
    out
}

/// A random endomorphism of `m` with invertible `f1` and components `f_n`
/// up to `n_max`.
pub fn random_morphism(rng: &mut impl Rng, ring: Ring, m: &Module, n_max: u32) -> FiniteMorphism {
    let mut f = FiniteMorphism::default();
    loop {
        let f1 = random_map(rng, ring, m, 1, 0);
        if invert(ring, &f1).is_some() {
            f.components.insert(Label::f(1), f1);
            break;
        }
    }
    for n in 2..=n_max {
        f.components.insert(Label::f(n), random_map(rng, ring, m, n as usize, 1 - n as i64));
    }
    f
}

/// A random A∞-algebra on the module of `a`, with a morphism to it from
/// `a`: the push-forward of `a` along a random morphism.
pub fn random_ainf(rng: &mut impl Rng, ring: Ring, a: &FiniteAlgebra, n_max: u32) -> (FiniteAlgebra, FiniteMorphism) {
    let f = random_morphism(rng, ring, &a.module, n_max);
    let b = push_forward(ring, a, &f, n_max).expect("f1 is invertible");
    (b, f)
}
