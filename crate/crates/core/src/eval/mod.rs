//! Finite-dimensional algebras and morphisms, and the evaluation of
//! symbolic elements on them.
//!
//! Maps act from the right and tensor products of maps follow the Koszul
//! rule `(x ⊗ y).(f ⊗ g) = (-1)^(deg y · deg f) x.f ⊗ y.g`. A basis tree
//! is evaluated through its decomposition into root and subtrees, with the
//! sign that relates this decomposition to the tree's canonical order, so
//! that evaluation respects operadic composition.

pub mod checks;
pub mod instance;
pub mod samples;

use std::borrow::Cow;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::linalg;
use crate::kernel::ring::{Fp, Q};
use crate::kernel::{Element, Label, Ring, Slot, Tree};

/// A finite graded module with named basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
}

impl Module {
    pub fn new(basis: &[(&str, i64)]) -> Module {
        Module {
            names: basis.iter().map(|(n, _)| n.to_string()).collect(),
            degrees: basis.iter().map(|(_, d)| *d).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A multilinear map `In^⊗arity → Out` of a fixed degree, stored densely:
/// one output vector per tuple of input basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    arity: usize,
    degree: i64,
    in_dim: usize,
    out_dim: usize,
    data: Vec<BigRational>,
}

impl MultiMap {
    pub fn zero(arity: usize, degree: i64, in_dim: usize, out_dim: usize) -> MultiMap {
        let rows = in_dim.pow(arity as u32);
        MultiMap { arity, degree, in_dim, out_dim, data: vec![BigRational::zero(); rows * out_dim] }
    }

    pub fn identity(dim: usize) -> MultiMap {
        let mut m = MultiMap::zero(1, 0, dim, dim);
        for x in 0..dim {
            m.set(&[x], x, BigRational::one());
        }
        m
    }

    /// A nullary map, i.e. a vector.
    pub fn element(degree: i64, in_dim: usize, v: &[BigRational]) -> MultiMap {
        MultiMap { arity: 0, degree, in_dim, out_dim: v.len(), data: v.to_vec() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn rows(&self) -> usize {
        self.in_dim.pow(self.arity as u32)
    }

    fn row_index(&self, inputs: &[usize]) -> usize {
        debug_assert_eq!(inputs.len(), self.arity);
        inputs.iter().fold(0, |acc, &x| acc * self.in_dim + x)
    }

    /// The input tuple of a row.
    pub fn tuple(&self, mut row: usize) -> Vec<usize> {
        let mut t = vec![0; self.arity];
        for p in (0..self.arity).rev() {
            t[p] = row % self.in_dim;
            row /= self.in_dim;
        }
        t
    }

    pub fn row(&self, inputs: &[usize]) -> &[BigRational] {
        let r = self.row_index(inputs);
        &self.data[r * self.out_dim..(r + 1) * self.out_dim]
    }

    fn row_at(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.out_dim..(r + 1) * self.out_dim]
    }

    pub fn get(&self, inputs: &[usize], out: usize) -> &BigRational {
        &self.row(inputs)[out]
    }

    pub fn set(&mut self, inputs: &[usize], out: usize, value: BigRational) {
        let r = self.row_index(inputs);
        self.data[r * self.out_dim + out] = value;
    }

    pub fn entries_mut(&mut self) -> impl Iterator<Item = &mut BigRational> {
        self.data.iter_mut()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn same_shape(&self, other: &MultiMap) -> bool {
        (self.arity, self.in_dim, self.out_dim) == (other.arity, other.in_dim, other.out_dim)
    }

    /// `self += c · other` over `ring`.
    pub fn add_scaled(&mut self, ring: Ring, other: &MultiMap, c: &BigRational) {
        debug_assert!(self.same_shape(other));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = ring.add(a, &ring.mul(c, b));
            }
        }
    }

    /// The nonzero entries as `(inputs, output, value)`.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, usize, BigRational)> {
        let mut out = Vec::new();
        for r in 0..self.rows() {
            for (o, v) in self.row_at(r).iter().enumerate() {
                if !v.is_zero() {
                    out.push((self.tuple(r), o, v.clone()));
                }
            }
        }
        out
    }

    /// First entry where the two maps differ.
    pub fn first_difference(&self, other: &MultiMap) -> Option<(Vec<usize>, usize)> {
        if !self.same_shape(other) {
            return Some((Vec::new(), 0));
        }
        let i = self.data.iter().zip(&other.data).position(|(a, b)| a != b)?;
        Some((self.tuple(i / self.out_dim), i % self.out_dim))
    }

    /// First nonzero entry whose degree is inconsistent.
    pub fn degree_violation(&self, input: &Module, output: &Module) -> Option<(Vec<usize>, usize)> {
        for r in 0..self.rows() {
            let t = self.tuple(r);
            let d: i64 = t.iter().map(|&x| input.degrees[x]).sum::<i64>() + self.degree;
            for (o, v) in self.row_at(r).iter().enumerate() {
                if !v.is_zero() && output.degrees[o] != d {
                    return Some((t, o));
                }
            }
        }
        None
    }

    pub fn reduce(&mut self, ring: Ring) -> Result<()> {
        for x in &mut self.data {
            *x = ring.reduce(x)?;
        }
        Ok(())
    }

    /// `self` followed by the unary map `g`.
    pub fn then(&self, ring: Ring, g: &MultiMap) -> MultiMap {
        debug_assert_eq!(g.arity, 1);
        let mut out = MultiMap::zero(self.arity, self.degree + g.degree, self.in_dim, g.out_dim);
        for r in 0..self.rows() {
            for (y, c) in self.row_at(r).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (o, e) in g.row(&[y]).iter().enumerate() {
                    if !e.is_zero() {
                        let idx = r * out.out_dim + o;
                        out.data[idx] = ring.add(&out.data[idx], &ring.mul(c, e));
                    }
                }
            }
        }
        out
    }
}

/// Parity of the Koszul sign picked up by `(a_1 ⊗ ... ⊗ a_N).(x_1 ⊗ ... ⊗ x_k)`
/// where `x_p` eats the block `blocks[p]`: each `x_p` passes the inputs of
/// the later blocks.
fn koszul_blocks(map_degrees: &[i64], block_degrees: &[i64]) -> bool {
    let mut later: i64 = block_degrees.iter().sum();
    let mut odd = false;
    for (d, b) in map_degrees.iter().zip(block_degrees) {
        later -= b;
        if d.rem_euclid(2) == 1 && later.rem_euclid(2) == 1 {
            odd = !odd;
        }
    }
    odd
}

/// `(x_1 ⊗ ... ⊗ x_k) · root` for maps sharing their input module.
pub fn tensor_then(ring: Ring, input: &Module, xs: &[&MultiMap], root: &MultiMap) -> Result<MultiMap> {
    if xs.len() != root.arity {
        return Err(Error::ArityMismatch { expected: root.arity, found: xs.len() });
    }
    let arity: usize = xs.iter().map(|x| x.arity).sum();
    let degree = xs.iter().map(|x| x.degree).sum::<i64>() + root.degree;
    let mut out = MultiMap::zero(arity, degree, input.dim(), root.out_dim);
    let map_degrees: Vec<i64> = xs.iter().map(|x| x.degree).collect();
    for r in 0..out.rows() {
        let t = out.tuple(r);
        let mut blocks = Vec::with_capacity(xs.len());
        let mut block_degrees = Vec::with_capacity(xs.len());
        let mut pos = 0;
        for x in xs {
            let b = &t[pos..pos + x.arity];
            block_degrees.push(b.iter().map(|&i| input.degrees[i]).sum());
            blocks.push(b);
            pos += x.arity;
        }
        let negative = koszul_blocks(&map_degrees, &block_degrees);
        // Expand the tensor product of the sparse rows.
        let mut partial: Vec<(Vec<usize>, BigRational)> = vec![(Vec::new(), BigRational::one())];
        for (x, b) in xs.iter().zip(&blocks) {
            let row = x.row(b);
            let mut next = Vec::new();
            for (idx, c) in &partial {
                for (o, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        let mut i = idx.clone();
                        i.push(o);
                        next.push((i, ring.mul(c, v)));
                    }
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        for (idx, c) in partial {
            let c = if negative { ring.neg(&c) } else { c };
            for (o, e) in root.row(&idx).iter().enumerate() {
                if !e.is_zero() {
                    let k = r * out.out_dim + o;
                    out.data[k] = ring.add(&out.data[k], &ring.mul(&c, e));
                }
            }
        }
    }
    Ok(out)
}

/// A finite algebra: a module, its differential `m1` and the structure
/// maps keyed by generator.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    pub module: Module,
    pub differential: MultiMap,
    pub ops: BTreeMap<Label, MultiMap>,
}

impl FiniteAlgebra {
    pub fn new(module: Module) -> FiniteAlgebra {
        let n = module.dim();
        FiniteAlgebra { module, differential: MultiMap::zero(1, 1, n, n), ops: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn zero_map(&self, arity: usize, degree: i64) -> MultiMap {
        MultiMap::zero(arity, degree, self.dim(), self.dim())
    }

    /// The map of an operad generator. Higher operations (`m_n` for
    /// `n >= 3` and the semicolon generators) default to zero.
    pub fn op(&self, ring: Ring, label: &Label) -> Result<Cow<'_, MultiMap>> {
        if let Some(m) = self.ops.get(label) {
            return Ok(Cow::Borrowed(m));
        }
        match label {
            Label::M(p) if label.is_well_formed() && !(p.len() == 1 && p[0] == 2) => {
                Ok(Cow::Owned(self.zero_map(label.arity(), label.degree())))
            }
            Label::Mu(k) => Ok(Cow::Owned(self.iterated_product(ring, *k)?)),
            _ => Err(Error::MissingConstant(label.to_string())),
        }
    }

    /// `m^(k)` of an associative algebra: iterated `m2`, with `1su` for `k = 0`.
    fn iterated_product(&self, ring: Ring, k: u32) -> Result<MultiMap> {
        match k {
            0 => self.ops.get(&Label::Unit).cloned().ok_or_else(|| Error::MissingConstant("1su".into())),
            1 => Ok(MultiMap::identity(self.dim())),
            _ => {
                let m2 = self.ops.get(&Label::m(2)).ok_or_else(|| Error::MissingConstant("m2".into()))?;
                let mut acc = MultiMap::identity(self.dim());
                for _ in 1..k {
                    let id = MultiMap::identity(self.dim());
                    acc = tensor_then(ring, &self.module, &[&acc, &id], m2)?;
                }
                Ok(acc)
            }
        }
    }

    /// Entries of the stored tables that break degree bookkeeping.
    pub fn degree_problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut tables: Vec<(String, &MultiMap, i64, usize)> =
            vec![("m1".into(), &self.differential, 1, 1)];
        for (l, m) in &self.ops {
            tables.push((l.to_string(), m, l.degree(), l.arity()));
        }
        for (name, m, degree, arity) in tables {
            if m.degree != degree || m.arity != arity {
                out.push(format!("{name} has arity {} and degree {}", m.arity, m.degree));
            } else if m.in_dim != self.dim() || m.out_dim != self.dim() {
                out.push(format!("{name} has the wrong dimensions"));
            } else if let Some((t, o)) = m.degree_violation(&self.module, &self.module) {
                out.push(format!("{name}{} -> {} breaks degrees", self.tuple_names(&t), self.module.names[o]));
            }
        }
        out
    }

    pub fn tuple_names(&self, t: &[usize]) -> String {
        let names: Vec<&str> = t.iter().map(|&i| self.module.names[i].as_str()).collect();
        format!("({})", names.join(","))
    }
}

/// Components of a morphism of algebras over a bimodule, keyed by
/// generator on floor 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FiniteMorphism {
    pub components: BTreeMap<Label, MultiMap>,
}

impl FiniteMorphism {
    /// The map of a bimodule generator; the semicolon generators, `v` and
    /// `f_n` for `n >= 2` default to zero.
    pub fn component(&self, label: &Label, in_dim: usize, out_dim: usize) -> Result<Cow<'_, MultiMap>> {
        let key = label.with_floor(1);
        if let Some(m) = self.components.get(&key) {
            return Ok(Cow::Borrowed(m));
        }
        match &key {
            Label::F(p, _) if !(p.len() == 1 && p[0] == 1) => {
                Ok(Cow::Owned(MultiMap::zero(key.arity(), key.degree(), in_dim, out_dim)))
            }
            Label::V(_) => Ok(Cow::Owned(MultiMap::zero(0, -1, in_dim, out_dim))),
            _ => Err(Error::MissingConstant(key.to_string())),
        }
    }

    pub fn degree_problems(&self, source: &FiniteAlgebra, target: &FiniteAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        for (l, m) in &self.components {
            if m.degree != l.degree() || m.arity != l.arity() {
                out.push(format!("{l} has arity {} and degree {}", m.arity, m.degree));
            } else if m.in_dim != source.dim() || m.out_dim != target.dim() {
                out.push(format!("{l} has the wrong dimensions"));
            } else if let Some((t, o)) = m.degree_violation(&source.module, &target.module) {
                out.push(format!("{l}{} -> {} breaks degrees", source.tuple_names(&t), target.module.names[o]));
            }
        }
        out
    }
}

/// A chain of algebras `A_0 → A_1 → ... → A_r` joined by morphisms: the
/// morphism on floor `q` goes from `A_(q-1)` to `A_q`. Inputs live in `A_0`
/// and values in `A_r`.
pub struct Context<'a> {
    pub ring: Ring,
    pub algebras: Vec<&'a FiniteAlgebra>,
    pub floors: Vec<&'a FiniteMorphism>,
}

impl<'a> Context<'a> {
    pub fn algebra(ring: Ring, a: &'a FiniteAlgebra) -> Context<'a> {
        Context { ring, algebras: vec![a], floors: Vec::new() }
    }

    pub fn morphism(ring: Ring, a: &'a FiniteAlgebra, f: &'a FiniteMorphism, b: &'a FiniteAlgebra) -> Context<'a> {
        Context { ring, algebras: vec![a, b], floors: vec![f] }
    }

    fn top(&self) -> usize {
        self.floors.len()
    }

    fn input(&self) -> &Module {
        &self.algebras[0].module
    }

    fn eval_tree(&self, t: &Tree, level: usize) -> Result<MultiMap> {
        let node = match t.root() {
            Slot::Input => {
                if level != 0 {
                    return Err(Error::Invalid(format!("an input sits below {level} floors")));
                }
                return Ok(MultiMap::identity(self.algebras[0].dim()));
            }
            Slot::Node(n) => n,
        };
        let (map, child_level) = match node.label.floor() {
            Some(q) => {
                if q as usize != level || level == 0 {
                    return Err(Error::Invalid(format!("`{}` found at level {level}", node.label)));
                }
                let (a, b) = (self.algebras[level - 1], self.algebras[level]);
                (self.floors[level - 1].component(&node.label, a.dim(), b.dim())?, level - 1)
            }
            None => (self.algebras[level].op(self.ring, &node.label)?, level),
        };
        let input_dim = self.algebras[0].dim();
        let mut map = map.into_owned();
        // Structure maps are stored on their own module; as a factor of a
        // composite, a nullary map takes no inputs and keeps its values.
        if map.arity == 0 {
            map.in_dim = input_dim;
        }
        if node.children.is_empty() {
            return Ok(map);
        }
        let subtrees: Vec<Tree> = node
            .children
            .iter()
            .map(|c| match c {
                Slot::Input => Tree::unit(),
                other => Tree::canonicalize(other.clone()).0,
            })
            .collect();
        let refs: Vec<&Tree> = subtrees.iter().collect();
        let (_, sign) = Tree::graft(&refs, &Tree::corolla(node.label.clone()))?;
        let mut parts = Vec::with_capacity(subtrees.len());
        for s in &subtrees {
            let mut m = self.eval_tree(s, child_level)?;
            m.in_dim = input_dim;
            parts.push(m);
        }
        let prefs: Vec<&MultiMap> = parts.iter().collect();
        let mut out = tensor_then(self.ring, self.input(), &prefs, &map)?;
        if sign < 0 {
            out.entries_mut().for_each(|x| *x = -x.clone());
            out.reduce(self.ring)?;
        }
        Ok(out)
    }

    /// The multilinear map `A_0^⊗n → A_r` of a symbolic element.
    pub fn evaluate(&self, x: &Element) -> Result<MultiMap> {
        let top = self.algebras[self.top()];
        let mut out = MultiMap::zero(x.arity(), x.degree(), self.algebras[0].dim(), top.dim());
        for (t, c) in x.terms() {
            let m = self.eval_tree(t, self.top())?;
            out.add_scaled(self.ring, &m, &self.ring.from_int(c));
        }
        Ok(out)
    }

    /// `f∂ = f·m1 - (-1)^deg f Σ (1^⊗a ⊗ m1 ⊗ 1^⊗c)·f` in the complex of
    /// maps `A_0^⊗n → A_r`.
    pub fn bracket(&self, f: &MultiMap) -> MultiMap {
        let ring = self.ring;
        let source = self.algebras[0];
        let target = self.algebras[self.top()];
        let mut out = f.then(ring, &target.differential);
        let outer_odd = f.degree.rem_euclid(2) == 1;
        for r in 0..out.rows() {
            let t = out.tuple(r);
            for a in 0..t.len() {
                let later: i64 = t[a + 1..].iter().map(|&x| source.module.degrees[x]).sum();
                // `-(-1)^deg f` times the Koszul sign of m1 passing the later inputs.
                let negative = !outer_odd ^ (later.rem_euclid(2) == 1);
                let d = source.differential.row(&[t[a]]);
                for (y, c) in d.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut u = t.clone();
                    u[a] = y;
                    let c = if negative { ring.neg(c) } else { c.clone() };
                    for (o, e) in f.row(&u).iter().enumerate() {
                        if !e.is_zero() {
                            let k = r * out.out_dim + o;
                            out.data[k] = ring.add(&out.data[k], &ring.mul(&c, e));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Whether `target` lies in the span of `vectors` over `ring`.
pub fn ring_in_span(ring: Ring, vectors: &[Vec<(usize, BigRational)>], target: &[(usize, BigRational)]) -> bool {
    match ring {
        Ring::Rationals => linalg::in_span(&Q, vectors.to_vec(), target.to_vec()),
        Ring::Prime(p) => {
            use crate::kernel::ring::Field;
            let f = Fp(p);
            let conv = |v: &[(usize, BigRational)]| -> Vec<(usize, u64)> {
                v.iter().map(|(i, x)| (*i, f.from_rational(x))).filter(|(_, x)| *x != 0).collect()
            };
            linalg::in_span(&f, vectors.iter().map(|v| conv(v)).collect(), conv(target))
        }
    }
}

/// Sparse form of a dense vector.
pub fn sparse(v: &[BigRational]) -> Vec<(usize, BigRational)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Inverse of a square unary map over `ring`, if it is invertible.
pub fn invert(ring: Ring, m: &MultiMap) -> Option<MultiMap> {
    let n = m.in_dim;
    if m.arity != 1 || m.out_dim != n {
        return None;
    }
    // Rows of `m` are images of basis vectors; invert the matrix [m | I].
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = m.row(&[i]).to_vec();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = ring.inv(&a[col][col]);
        for x in a[col].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let c = a[r][col].clone();
                for k in 0..2 * n {
                    let v = ring.mul(&c, &a[col][k]);
                    a[r][k] = ring.add(&a[r][k], &ring.neg(&v));
                }
            }
        }
    }
    let mut out = MultiMap::zero(1, -m.degree, n, n);
    for (i, row) in a.iter().enumerate() {
        for j in 0..n {
            out.set(&[i], j, row[n + j].clone());
        }
    }
    Some(out)
}
