//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use ainf_core::basis::basis_exact;
use ainf_core::eval::checks::*;
use ainf_core::eval::samples::{acyclic, dual_numbers, random_ainf, random_morphism, square_zero};
use ainf_core::eval::{FiniteAlgebra, FiniteMorphism};
use ainf_core::kernel::{Label, Ring};
use ainf_core::report::Report;
use ainf_core::verify::{self, Options};
use ainf_core::Presentation;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

/// Planar trees with `n` leaves and every vertex of arity at least 2,
/// written the way trees print.
fn planar_trees(n: usize) -> Vec<String> {
    fn forests(n: usize, parts: usize) -> Vec<Vec<String>> {
        if parts == 0 {
            return if n == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 1..=n + 1 - parts {
            let heads = if first == 1 { vec!["·".to_string()] } else { planar_trees(first) };
            for rest in forests(n - first, parts - 1) {
                for h in &heads {
                    let mut v = vec![h.clone()];
                    v.extend(rest.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }
    let mut out = Vec::new();
    for k in 2..=n {
        for children in forests(n, k) {
            out.push(format!("m{k}({})", children.join(",")));
        }
    }
    out
}

fn report_verdict(r: &Report, time: Duration, limit: Option<Duration>) -> Verdict {
    let summary = format!("{} checks in {:.1} s", r.checks.len(), time.as_secs_f64());
    if let Some(c) = r.failures().next() {
        return Err(format!("{summary}; {} fails: {}", c.id, c.witness.clone().unwrap_or_default()));
    }
    if r.checks.is_empty() {
        return Err("no checks ran".into());
    }
    match limit {
        Some(l) if time > l => Err(format!("{summary}, over the {} s limit", l.as_secs())),
        _ => Ok(summary),
    }
}

fn basis_counts() -> Verdict {
    let start = Instant::now();
    let expected = [1, 1, 3, 11, 45, 197];
    let mut got = Vec::new();
    for n in 1..=6 {
        let trees = basis_exact(Presentation::AInf, n, 0).map_err(|e| e.to_string())?;
        got.push(trees.len());
        if n >= 2 {
            let engine: BTreeSet<String> = trees.iter().map(|t| t.to_string()).collect();
            let oracle: BTreeSet<String> = planar_trees(n).into_iter().collect();
            if engine != oracle {
                return Err(format!("arity {n}: engine and enumeration oracle differ"));
            }
        }
    }
    let time = start.elapsed();
    if got != expected {
        return Err(format!("dims {got:?}"));
    }
    if time > Duration::from_secs(5) {
        return Err(format!("{:.1} s", time.as_secs_f64()));
    }
    Ok(format!("dims {got:?} in {:.2} s", time.as_secs_f64()))
}

fn suite(f: impl FnOnce(&Options) -> ainf_core::Result<Report>, limit: Option<u64>) -> Verdict {
    let start = Instant::now();
    let r = f(&Options::default()).map_err(|e| e.to_string())?;
    report_verdict(&r, start.elapsed(), limit.map(Duration::from_secs))
}

fn require(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn passes(r: ainf_core::Result<Report>, what: &str) -> Result<(), String> {
    match r {
        Ok(r) if r.passed() => Ok(()),
        Ok(r) => Err(format!("{what}: {}", r.failures().next().map(|c| c.id.clone()).unwrap_or_default())),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

fn full_check(ring: Ring, a: &FiniteAlgebra) -> bool {
    let ok = |r: ainf_core::Result<Report>| r.map(|r| r.passed()).unwrap_or(false);
    ok(check_ainf_algebra(ring, a, 4)) && ok(check_hu_algebra(ring, a, 4)) && ok(check_fukaya(ring, a, 3))
}

fn same(f: &FiniteMorphism, g: &FiniteMorphism, n: u32) -> bool {
    (1..=n).all(|k| {
        let l = Label::f(k);
        match (f.components.get(&l), g.components.get(&l)) {
            (Some(x), Some(y)) => x == y,
            (Some(x), None) | (None, Some(x)) => x.is_zero(),
            (None, None) => true,
        }
    })
}

fn evaluator() -> Verdict {
    let start = Instant::now();
    // A strictly unital two-dimensional dg-algebra with explicit zero tables.
    let mut mutations = 0;
    for ring in [Ring::Rationals, Ring::Prime(101)] {
        let a = with_zero_tables(&dual_numbers(10), Presentation::AHu, 4);
        passes(check_ainf_algebra(ring, &a, 4), "ainf")?;
        passes(check_hu_algebra(ring, &a, 4), "hu")?;
        passes(check_fukaya(ring, &a, 3), "fukaya")?;
        let mut tables = vec![None];
        tables.extend(a.ops.keys().cloned().map(Some));
        for key in tables {
            let m = key.as_ref().map_or(&a.differential, |k| &a.ops[k]);
            for r in 0..m.rows() {
                let t = m.tuple(r);
                for o in 0..a.dim() {
                    let mut c = a.clone();
                    let table = match &key {
                        None => &mut c.differential,
                        Some(k) => c.ops.get_mut(k).expect("present"),
                    };
                    let v = ring.add(table.get(&t, o), &BigRational::from_integer(1.into()));
                    table.set(&t, o, v);
                    require(!full_check(ring, &c), &format!("mutation of {key:?} at {t:?} -> {o} passes"))?;
                    mutations += 1;
                }
            }
        }
    }
    // Random morphisms between two- and three-dimensional A∞-algebras.
    let n = 4;
    let mut compositions = 0;
    for (seed, ring) in [(1u64, Ring::Rationals), (2, Ring::Prime(101)), (3, Ring::Prime(101)), (4, Ring::Rationals)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = if seed % 2 == 0 { square_zero(ring) } else { acyclic(ring) };
        let (a, _) = random_ainf(&mut rng, ring, &base, n);
        let mut chain = vec![a];
        let mut maps = Vec::new();
        for _ in 0..3 {
            let prev = chain.last().expect("nonempty");
            let f = random_morphism(&mut rng, ring, &prev.module, n);
            let next = push_forward(ring, prev, &f, n).map_err(|e| e.to_string())?;
            passes(check_ainf_morphism(ring, prev, &f, &next, n), "random morphism")?;
            maps.push(f);
            chain.push(next);
        }
        let (a, b, c, d) = (&chain[0], &chain[1], &chain[2], &chain[3]);
        let (f, g, h) = (&maps[0], &maps[1], &maps[2]);
        let comp = |x, y, z, p, q| compose_morphisms(ring, (x, y, z), p, q, Presentation::F1, n).map_err(|e| e.to_string());
        let fg = comp(a, b, c, f, g)?;
        let gh = comp(b, c, d, g, h)?;
        require(same(&comp(a, c, d, &fg, h)?, &comp(a, b, d, f, &gh)?, n), "composition is not associative")?;
        passes(check_ainf_morphism(ring, a, &fg, c, n), "composite")?;
        passes(check_ainf_morphism(ring, b, &gh, d, n), "composite")?;
        let (ia, ib) = (identity_morphism(a), identity_morphism(b));
        require(same(&comp(a, a, b, &ia, f)?, f, n), "left unit")?;
        require(same(&comp(a, b, b, f, &ib)?, f, n), "right unit")?;
        compositions += 1;
    }
    Ok(format!(
        "{mutations} mutations caught, {compositions} random chains in {:.1} s",
        start.elapsed().as_secs_f64()
    ))
}

fn determinism() -> Verdict {
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_ainf"))
            .args(["verify", "--suite", "all", "--json"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit status {}", out.status));
        }
        Ok(out.stdout)
    };
    let first = run()?;
    let second = run()?;
    require(first == second, "the two reports differ")?;
    Ok(format!("{} identical bytes twice", first.len()))
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("basis counts", Box::new(basis_counts)),
        ("d squared", Box::new(|| suite(verify::dsq, Some(120)))),
        ("anchored differentials", Box::new(|| suite(|_| verify::anchors(), None))),
        ("homotopy lemma", Box::new(|| suite(verify::homotopy, Some(60)))),
        ("homology", Box::new(|| suite(verify::homology_suite, Some(120)))),
        ("coalgebra", Box::new(|| suite(verify::coalgebra, None))),
        ("evaluator", Box::new(evaluator)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
