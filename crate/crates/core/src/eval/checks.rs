//! Relation checkers for finite instances, Fukaya's `A⁺`, composition and
//! push-forward of morphisms, and unitality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{invert, ring_in_span, sparse, tensor_then, Context, FiniteAlgebra, FiniteMorphism, Module, MultiMap};
use crate::bimodule::f1_boundary;
use crate::coalgebra;
use crate::differential::label_boundary;
use crate::error::{Error, Result};
use crate::kernel::{Element, Label, Ring, Slot, Tree};
use crate::operad::generators;
use crate::presentation::Presentation;
use crate::report::Report;

fn witness(label: &str, src: &FiniteAlgebra, dst: &FiniteAlgebra, lhs: &MultiMap, rhs: &MultiMap) -> Option<String> {
    let (t, o) = lhs.first_difference(rhs)?;
    if !lhs.same_shape(rhs) {
        return Some(format!("{label}: shapes differ"));
    }
    Some(format!(
        "{label}{} -> {}: [g,m1] = {}, boundary = {}",
        src.tuple_names(&t),
        dst.module.names[o],
        lhs.get(&t, o),
        rhs.get(&t, o)
    ))
}

fn degrees(report: &mut Report, problems: Vec<String>) {
    report.record("degrees", problems.into_iter().next());
}

fn m1_squared(ring: Ring, a: &FiniteAlgebra) -> Option<String> {
    let sq = a.differential.then(ring, &a.differential);
    sq.nonzero().first().map(|(t, o, v)| format!("m1 m1{} -> {} = {v}", a.tuple_names(t), a.module.names[*o]))
}

/// Compares `[g, m1]` with the evaluated symbolic boundary of `g` for each
/// generator, in parallel.
fn relations(ctx: &Context<'_>, pres: Presentation, gens: &[Label], map: impl Fn(&Label) -> Result<MultiMap> + Sync) -> Result<Report> {
    let src = ctx.algebras[0];
    let dst = ctx.algebras[ctx.floors.len()];
    let results: Vec<Result<(String, Option<String>)>> = gens
        .par_iter()
        .map(|g| {
            let lhs = ctx.bracket(&map(g)?);
            let rhs = ctx.evaluate(&label_boundary(pres, g)?)?;
            let name = g.to_string();
            Ok((format!("relation.{name}"), witness(&name, src, dst, &lhs, &rhs)))
        })
        .collect();
    let mut report = Report::new();
    for r in results {
        let (id, w) = r?;
        report.record(id, w);
    }
    Ok(report)
}

/// The A∞ relations up to arity `n_max`.
pub fn check_ainf_algebra(ring: Ring, a: &FiniteAlgebra, n_max: u32) -> Result<Report> {
    let mut report = Report::new();
    degrees(&mut report, a.degree_problems());
    report.record("m1.squared", m1_squared(ring, a));
    let ctx = Context::algebra(ring, a);
    let gens = generators(Presentation::AInf, n_max);
    let rel = relations(&ctx, Presentation::AInf, &gens, |g| Ok(a.op(ring, g)?.into_owned()))?;
    report.extend("", rel);
    Ok(report)
}

/// The relations of a homotopy unital algebra for generators with
/// `n + k <= bound`, `i` included.
pub fn check_hu_algebra(ring: Ring, a: &FiniteAlgebra, bound: u32) -> Result<Report> {
    let mut report = Report::new();
    degrees(&mut report, a.degree_problems());
    report.record("m1.squared", m1_squared(ring, a));
    let ctx = Context::algebra(ring, a);
    let gens = generators(Presentation::AHu, bound);
    let rel = relations(&ctx, Presentation::AHu, &gens, |g| Ok(a.op(ring, g)?.into_owned()))?;
    report.extend("", rel);
    Ok(report)
}

/// Splits an input tuple at the positions of `j`: the pattern of block
/// sizes, the remaining inputs, and the parity of the sign picked up by
/// each `j` passing the later inputs.
fn split_at_j(t: &[usize], j: usize, degrees: &[i64]) -> (Vec<u32>, Vec<usize>, bool) {
    let mut pattern = vec![0u32];
    let mut rest = Vec::new();
    let mut odd = false;
    for (p, &x) in t.iter().enumerate() {
        if x == j {
            pattern.push(0);
            let later: i64 = t[p + 1..].iter().filter(|&&y| y != j).map(|&y| degrees[y]).sum();
            odd ^= later.rem_euclid(2) == 1;
        } else {
            *pattern.last_mut().expect("nonempty") += 1;
            rest.push(x);
        }
    }
    (pattern, rest, odd)
}

fn plus_module(m: &Module) -> Module {
    let mut out = m.clone();
    out.names.push("1su".into());
    out.degrees.push(0);
    out.names.push("j".into());
    out.degrees.push(-1);
    out
}

/// Copies `row` (indexed by the smaller module) into `out` at `dst`.
fn put(out: &mut MultiMap, dst: &[usize], row: &[BigRational], ring: Ring, negative: bool) {
    for (o, v) in row.iter().enumerate() {
        if !v.is_zero() {
            out.set(dst, o, if negative { ring.neg(v) } else { v.clone() });
        }
    }
}

/// Fukaya's `A⁺ = A ⊕ k1su ⊕ kj`: `1su` a strict unit, `j m1 = 1su - i`,
/// and `m_(n1;...;nk)` recovered by inserting `j` between the blocks.
/// Operations are built up to arity `n_max`.
pub fn fukaya_plus(ring: Ring, a: &FiniteAlgebra, n_max: u32) -> Result<FiniteAlgebra> {
    let d = a.dim();
    let (su, j) = (d, d + 1);
    let mut plus = FiniteAlgebra::new(plus_module(&a.module));
    let i = a.op(ring, &Label::I)?;
    for x in 0..d {
        put(&mut plus.differential, &[x], a.differential.row(&[x]), ring, false);
    }
    plus.differential.set(&[j], su, BigRational::one());
    put(&mut plus.differential, &[j], i.row(&[]), ring, true);
    for n in 2..=n_max as usize {
        let mut m = plus.zero_map(n, 2 - n as i64);
        for r in 0..m.rows() {
            let t = m.tuple(r);
            let units = t.iter().filter(|&&x| x == su).count();
            if units > 0 {
                if n == 2 && units == 1 {
                    let other = if t[0] == su { t[1] } else { t[0] };
                    m.set(&t, other, BigRational::one());
                } else if n == 2 {
                    m.set(&t, su, BigRational::one());
                }
                continue;
            }
            let (pattern, rest, odd) = split_at_j(&t, j, &plus.module.degrees);
            let op = a.op(ring, &Label::M(pattern))?;
            put(&mut m, &t, op.row(&rest), ring, odd);
        }
        plus.ops.insert(Label::m(n as u32), m);
    }
    plus.ops.insert(Label::Unit, MultiMap::element(0, d + 2, &unit_vector(d + 2, su)));
    Ok(plus)
}

fn unit_vector(dim: usize, at: usize) -> Vec<BigRational> {
    (0..dim).map(|k| if k == at { BigRational::one() } else { BigRational::zero() }).collect()
}

/// First entry of `m` on inputs from `allowed` with a nonzero coefficient
/// outside the first `inside` basis vectors.
fn leaves(m: &MultiMap, allowed: impl Fn(usize) -> bool, inside: usize, names: &Module) -> Option<String> {
    for (t, o, v) in m.nonzero() {
        if t.iter().all(|&x| allowed(x)) && o >= inside {
            let ins: Vec<&str> = t.iter().map(|&x| names.names[x].as_str()).collect();
            return Some(format!("({}) -> {} = {v}", ins.join(","), names.names[o]));
        }
    }
    None
}

/// Conditions (1)–(4) for `A⁺`, each reported on its own so that weaker
/// notions can be read off.
pub fn check_fukaya(ring: Ring, a: &FiniteAlgebra, n_max: u32) -> Result<Report> {
    let plus = fukaya_plus(ring, a, n_max)?;
    let d = a.dim();
    let (su, j) = (d, d + 1);
    let mut report = Report::new();
    // (1) A⁺ is a strictly unital A∞-algebra.
    let ainf = check_ainf_algebra(ring, &plus, n_max)?;
    report.extend("fukaya.1.", ainf);
    let mut unit = None;
    if !plus.differential.row(&[su]).iter().all(Zero::is_zero) {
        unit = Some("m1(1su) != 0".to_string());
    }
    for n in 2..=n_max as usize {
        let m = &plus.ops[&Label::m(n as u32)];
        for r in 0..m.rows() {
            let t = m.tuple(r);
            let Some(p) = t.iter().position(|&x| x == su) else { continue };
            let expected: Vec<BigRational> = if n == 2 {
                unit_vector(d + 2, t[1 - p])
            } else {
                vec![BigRational::zero(); d + 2]
            };
            if unit.is_none() && m.row(&t) != expected.as_slice() {
                unit = Some(format!("m{n}{} is not strictly unital", plus.tuple_names(&t)));
            }
        }
    }
    report.record("fukaya.1.unit", unit);
    // (2) 1su - j m1⁺ lies in A.
    let mut two = plus.differential.row(&[j]).to_vec();
    two[su] = ring.add(&two[su], &BigRational::from_integer((-1).into()));
    let two: Vec<BigRational> = two.iter().map(|x| ring.neg(x)).collect();
    let w2 = (d..d + 2).find(|&k| !two[k].is_zero()).map(|k| format!("component on {}", plus.module.names[k]));
    report.record("fukaya.2", w2);
    // (3) m⁺ restricted to A is m; (4) inputs from A ⊕ kj stay in A for n > 1.
    let mut w3 = None;
    let mut w4 = None;
    for n in 1..=n_max as usize {
        let m = if n == 1 { plus.differential.clone() } else { plus.ops[&Label::m(n as u32)].clone() };
        let base = if n == 1 { a.differential.clone() } else { a.op(ring, &Label::m(n as u32))?.into_owned() };
        for r in 0..base.rows() {
            let t = base.tuple(r);
            let mut expected = base.row(&t).to_vec();
            expected.extend([BigRational::zero(), BigRational::zero()]);
            if w3.is_none() && m.row(&t) != expected.as_slice() {
                w3 = Some(format!("m{n}{}", a.tuple_names(&t)));
            }
        }
        if n > 1 && w4.is_none() {
            w4 = leaves(&m, |x| x != su, d, &plus.module).map(|w| format!("m{n}{w}"));
        }
    }
    report.record("fukaya.3", w3);
    report.record("fukaya.4", w4);
    Ok(report)
}

/// The A∞-morphism relations up to arity `n_max`.
pub fn check_ainf_morphism(ring: Ring, a: &FiniteAlgebra, f: &FiniteMorphism, b: &FiniteAlgebra, n_max: u32) -> Result<Report> {
    let mut report = Report::new();
    degrees(&mut report, f.degree_problems(a, b));
    let ctx = Context::morphism(ring, a, f, b);
    let gens = generators(Presentation::F1, n_max);
    let rel = relations(&ctx, Presentation::F1, &gens, |g| Ok(f.component(g, a.dim(), b.dim())?.into_owned()))?;
    report.extend("", rel);
    Ok(report)
}

/// The relations of a homotopy unital morphism for generators with
/// `n + k <= bound`, `v` included.
pub fn check_hu_morphism_relations(
    ring: Ring,
    a: &FiniteAlgebra,
    f: &FiniteMorphism,
    b: &FiniteAlgebra,
    bound: u32,
) -> Result<Report> {
    let mut report = Report::new();
    degrees(&mut report, f.degree_problems(a, b));
    let ctx = Context::morphism(ring, a, f, b);
    let gens = generators(Presentation::F1Hu, bound);
    let rel = relations(&ctx, Presentation::F1Hu, &gens, |g| Ok(f.component(g, a.dim(), b.dim())?.into_owned()))?;
    report.extend("", rel);
    Ok(report)
}

/// `f⁺: A⁺ → B⁺`: `1su` goes to `1su`, `j` to `v + j`, and `f_(n1;...;nk)`
/// is recovered by inserting `j` between the blocks.
pub fn morphism_plus(ring: Ring, a: &FiniteAlgebra, f: &FiniteMorphism, b: &FiniteAlgebra, n_max: u32) -> Result<FiniteMorphism> {
    let (da, db) = (a.dim(), b.dim());
    let (su, j) = (da, da + 1);
    let degrees = plus_module(&a.module).degrees;
    let mut out = FiniteMorphism::default();
    for n in 1..=n_max as usize {
        let mut m = MultiMap::zero(n, 1 - n as i64, da + 2, db + 2);
        for r in 0..m.rows() {
            let t = m.tuple(r);
            if t.contains(&su) {
                if n == 1 {
                    m.set(&t, db, BigRational::one());
                }
                continue;
            }
            if n == 1 && t[0] == j {
                let v = f.component(&Label::V(1), da, db)?;
                put(&mut m, &t, v.row(&[]), ring, false);
                m.set(&t, db + 1, BigRational::one());
                continue;
            }
            let (pattern, rest, odd) = split_at_j(&t, j, &degrees);
            let c = f.component(&Label::F(pattern, 1), da, db)?;
            put(&mut m, &t, c.row(&rest), ring, odd);
        }
        out.components.insert(Label::f(n as u32), m);
    }
    Ok(out)
}

/// Conditions (1)–(4) for `f⁺` together with the relations of `f` itself.
pub fn check_hu_morphism(ring: Ring, a: &FiniteAlgebra, f: &FiniteMorphism, b: &FiniteAlgebra, bound: u32) -> Result<Report> {
    let mut report = check_hu_morphism_relations(ring, a, f, b, bound)?;
    let (ap, bp) = (fukaya_plus(ring, a, bound)?, fukaya_plus(ring, b, bound)?);
    let fp = morphism_plus(ring, a, f, b, bound)?;
    let (da, db) = (a.dim(), b.dim());
    let (su, j) = (da, da + 1);
    // (1) f⁺ is a strictly unital A∞-morphism.
    report.extend("plus.1.", check_ainf_morphism(ring, &ap, &fp, &bp, bound)?);
    let mut unit = None;
    for (l, m) in &fp.components {
        for r in 0..m.rows() {
            let t = m.tuple(r);
            if !t.contains(&su) {
                continue;
            }
            let expected = if m.arity() == 1 { unit_vector(db + 2, db) } else { vec![BigRational::zero(); db + 2] };
            if unit.is_none() && m.row(&t) != expected.as_slice() {
                unit = Some(format!("{l}{} is not strictly unital", ap.tuple_names(&t)));
            }
        }
    }
    report.record("plus.1.unit", unit);
    // (2) v = j f1⁺ - j lies in B.
    let f1 = &fp.components[&Label::f(1)];
    let mut v = f1.row(&[j]).to_vec();
    v[db + 1] = ring.add(&v[db + 1], &BigRational::from_integer((-1).into()));
    let w2 = (db..db + 2).find(|&k| !v[k].is_zero()).map(|k| format!("component on {}", bp.module.names[k]));
    report.record("plus.2", w2);
    // (3) f⁺ restricted to A is f; (4) inputs from A ⊕ kj land in B for n > 1.
    let mut w3 = None;
    let mut w4 = None;
    for (l, m) in &fp.components {
        let base = f.component(l, da, db)?;
        for r in 0..base.rows() {
            let t = base.tuple(r);
            let mut expected = base.row(&t).to_vec();
            expected.extend([BigRational::zero(), BigRational::zero()]);
            if w3.is_none() && m.row(&t) != expected.as_slice() {
                w3 = Some(format!("{l}{}", a.tuple_names(&t)));
            }
        }
        if m.arity() > 1 && w4.is_none() {
            w4 = leaves(m, |x| x != su, db, &bp.module).map(|w| format!("{l}{w}"));
        }
    }
    report.record("plus.3", w3);
    report.record("plus.4", w4);
    Ok(report)
}

/// `(g·h)` on the generators of `pres` (`F1` or `F1^hu`) up to `bound`,
/// evaluated from the comultiplication.
pub fn compose_morphisms(
    ring: Ring,
    chain: (&FiniteAlgebra, &FiniteAlgebra, &FiniteAlgebra),
    g: &FiniteMorphism,
    h: &FiniteMorphism,
    pres: Presentation,
    bound: u32,
) -> Result<FiniteMorphism> {
    let (a, b, c) = chain;
    let ctx = Context { ring, algebras: vec![a, b, c], floors: vec![g, h] };
    let gens = generators(pres, bound);
    let maps: Vec<Result<(Label, MultiMap)>> = gens
        .par_iter()
        .map(|l| {
            let d = coalgebra::delta(pres, &Element::basis(Tree::corolla(l.clone())), 1)?;
            Ok((l.clone(), ctx.evaluate(&d)?))
        })
        .collect();
    let mut out = FiniteMorphism::default();
    for m in maps {
        let (l, m) = m?;
        out.components.insert(l, m);
    }
    Ok(out)
}

/// `id_1 = 1`, every other component zero.
pub fn identity_morphism(a: &FiniteAlgebra) -> FiniteMorphism {
    let mut f = FiniteMorphism::default();
    f.components.insert(Label::f(1), MultiMap::identity(a.dim()));
    f
}

/// The unique A∞ structure on the module of `a` making `f` (with
/// invertible `f1`) an A∞-morphism, up to arity `n_max`. The unit `i` is
/// carried along when present.
pub fn push_forward(ring: Ring, a: &FiniteAlgebra, f: &FiniteMorphism, n_max: u32) -> Result<FiniteAlgebra> {
    let f1 = f.component(&Label::f(1), a.dim(), a.dim())?.into_owned();
    let inv = invert(ring, &f1).ok_or_else(|| Error::Invalid("f1 is not invertible".into()))?;
    let mut b = FiniteAlgebra::new(a.module.clone());
    b.differential = inv.then(ring, &a.differential).then(ring, &f1);
    for n in 2..=n_max {
        b.ops.insert(Label::m(n), b.zero_map(n as usize, 2 - n as i64));
        let fd = f1_boundary(n, 1);
        let (rest, lhs) = {
            let ctx = Context::morphism(ring, a, f, &b);
            let fnn = f.component(&Label::f(n), a.dim(), b.dim())?.into_owned();
            (ctx.evaluate(&fd)?, ctx.bracket(&fnn))
        };
        let f1s: Vec<Tree> = (0..n).map(|_| Tree::corolla(Label::f(1))).collect();
        let refs: Vec<&Tree> = f1s.iter().collect();
        let (t, s) = Tree::graft(&refs, &Tree::corolla(Label::m(n)))?;
        let k = fd.coefficient(&t) * BigInt::from(s);
        if k != BigInt::one() && k != -BigInt::one() {
            return Err(Error::Invalid(format!("unexpected coefficient {k} of (f1⊗...⊗f1)m{n}")));
        }
        let mut target = lhs;
        target.add_scaled(ring, &rest, &BigRational::from_integer((-1).into()));
        if k == -BigInt::one() {
            target.entries_mut().for_each(|x| *x = ring.neg(x));
        }
        let invs: Vec<&MultiMap> = (0..n).map(|_| &inv).collect();
        let mn = tensor_then(ring, &b.module, &invs, &target)?;
        b.ops.insert(Label::m(n), mn);
    }
    if let Some(i) = a.ops.get(&Label::I) {
        let mut fi = MultiMap::zero(0, 0, b.dim(), b.dim());
        for (y, c) in i.row(&[]).iter().enumerate() {
            if !c.is_zero() {
                for (o, e) in f1.row(&[y]).iter().enumerate() {
                    let cur = fi.get(&[], o).clone();
                    fi.set(&[], o, ring.add(&cur, &ring.mul(c, e)));
                }
            }
        }
        b.ops.insert(Label::I, fi);
    }
    Ok(b)
}

fn flatten(m: &MultiMap) -> Vec<(usize, BigRational)> {
    let mut out = Vec::new();
    for (t, o, v) in m.nonzero() {
        let row = t.iter().fold(0, |acc, &x| acc * m.in_dim() + x);
        out.push((row * m.out_dim() + o, v));
    }
    out
}

/// Whether the degree-0 unary map `d` is `h m1 + m1 h` for some `h` of
/// degree -1.
fn null_homotopic(ctx: &Context<'_>, a: &FiniteAlgebra, d: &MultiMap) -> bool {
    let n = a.dim();
    let mut images = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if a.module.degrees[y] == a.module.degrees[x] - 1 {
                let mut h = MultiMap::zero(1, -1, n, n);
                h.set(&[x], y, BigRational::one());
                images.push(flatten(&ctx.bracket(&h)));
            }
        }
    }
    ring_in_span(ctx.ring, &images, &flatten(d))
}

/// `i` is a cycle and `1 - (1⊗i)m2`, `1 - (i⊗1)m2` are null-homotopic.
pub fn check_unitality(ring: Ring, a: &FiniteAlgebra) -> Result<Report> {
    let mut report = Report::new();
    let ctx = Context::algebra(ring, a);
    let i = a.op(ring, &Label::I)?;
    let im1 = i.then(ring, &a.differential);
    report.record("i.cycle", (!im1.is_zero()).then(|| "i m1 != 0".to_string()));
    for (id, unit_left) in [("unit.right", false), ("unit.left", true)] {
        let children = if unit_left {
            vec![Slot::node(Label::I, vec![]), Slot::Input]
        } else {
            vec![Slot::Input, Slot::node(Label::I, vec![])]
        };
        let mut e = Element::basis(Tree::unit());
        e -= &Element::basis(Tree::from_shape(Slot::node(Label::m(2), children)));
        let d = ctx.evaluate(&e)?;
        report.record(id, (!null_homotopic(&ctx, a, &d)).then(|| "not null-homotopic".to_string()));
    }
    Ok(report)
}

/// The cycles `i^A f1` and `i^B` differ by a boundary.
pub fn check_unital_morphism(ring: Ring, a: &FiniteAlgebra, f: &FiniteMorphism, b: &FiniteAlgebra) -> Result<Report> {
    let mut report = Report::new();
    for (id, alg) in [("i.cycle.source", a), ("i.cycle.target", b)] {
        let im1 = alg.op(ring, &Label::I)?.then(ring, &alg.differential);
        report.record(id, (!im1.is_zero()).then(|| "i m1 != 0".to_string()));
    }
    let ctx = Context::morphism(ring, a, f, b);
    let mut e = Element::basis(Tree::from_shape(Slot::node(Label::f(1), vec![Slot::node(Label::I, vec![])])));
    e -= &Element::basis(Tree::corolla(Label::I));
    let diff = ctx.evaluate(&e)?;
    let boundaries: Vec<Vec<(usize, BigRational)>> = (0..b.dim()).map(|x| sparse(b.differential.row(&[x]))).collect();
    let ok = ring_in_span(ring, &boundaries, &sparse(diff.row(&[])));
    report.record("unit", (!ok).then(|| "i^A f1 - i^B is not a boundary".to_string()));
    Ok(report)
}

/// `a` with explicit zero tables for every missing generator of `pres` up
/// to `bound`, so that each entry can be inspected or mutated.
pub fn with_zero_tables(a: &FiniteAlgebra, pres: Presentation, bound: u32) -> FiniteAlgebra {
    let mut out = a.clone();
    for g in generators(pres, bound) {
        if g != Label::I && !out.ops.contains_key(&g) {
            out.ops.insert(g.clone(), out.zero_map(g.arity(), g.degree()));
        }
    }
    out
}
