//! Verification suites over the shipped presentations, reported check by
//! check in a fixed order.

use std::time::Instant;

use rayon::prelude::*;

use crate::coalgebra;
use crate::differential::{d_squared_failures, label_boundary};
use crate::error::{Error, Result};
use crate::homology::homology;
use crate::homotopy::verify_lemma;
use crate::kernel::{Element, Label, Ring, Tree};
use crate::notation::{format_element, parse_element, parse_label};
use crate::operad::generators;
use crate::presentation::Presentation;
use crate::report::{Check, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Anchors,
    Dsq,
    Homotopy,
    Coalgebra,
    Homology,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "anchors" => Suite::Anchors,
            "dsq" => Suite::Dsq,
            "homotopy" => Suite::Homotopy,
            "coalgebra" => Suite::Coalgebra,
            "homology" => Suite::Homology,
            "all" => Suite::All,
            _ => return Err(Error::Invalid(format!("unknown suite `{s}`"))),
        })
    }
}

/// Bounds for the suites. `arity_max` overrides every per-suite default.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub arity_max: Option<u32>,
    pub degree_min: Option<i64>,
    pub timing: bool,
}

impl Options {
    fn bound(&self, default: u32) -> u32 {
        self.arity_max.unwrap_or(default)
    }
}

fn first(v: &[String]) -> Option<String> {
    v.first().map(|s| format!("{s} ({} failing)", v.len()))
}

/// Boundaries of the generators fixed by hand.
pub const ANCHORS: [(&str, &str, &str); 7] = [
    ("ainf", "m2", "0"),
    ("ainf", "m3", "m2(m2(·,·),·) - m2(·,m2(·,·))"),
    ("ainf-hu", "m1;0", "1 - m2(·,i)"),
    ("ainf-hu", "m0;1", "1 - m2(i,·)"),
    ("f1", "f1", "0"),
    ("f1", "f2", "f1(m2(·,·)) - m2(f1(·),f1(·))"),
    ("f1-hu", "v", "i - f1(i)"),
];

pub fn anchors() -> Result<Report> {
    let mut report = Report::new();
    for (p, l, expected) in ANCHORS {
        let pres: Presentation = p.parse()?;
        let label = parse_label(l)?;
        let got = label_boundary(pres, &label)?;
        let want = parse_element(expected, Some((label.arity(), label.degree() + 1)))?;
        let w = (got != want).then(|| format!("got {}", format_element(&got)));
        report.record(format!("anchors.{p}.{l}"), w);
    }
    let vd = coalgebra::v_delta()?;
    let w = (vd != coalgebra::v_delta_expected()).then(|| format!("got {}", format_element(&vd)));
    report.record("anchors.f1-hu.v-delta", w);
    let i = Element::basis(Tree::corolla(Label::I));
    let di = coalgebra::delta(Presentation::F1Hu, &i, 1)?;
    report.record("anchors.f1-hu.rho-empty-delta", (di != i).then(|| format!("got {}", format_element(&di))));
    Ok(report)
}

/// `∂² = 0` on the generators of A∞ (`n <= 8`), A∞^hu (`n + k <= 7`), F1
/// (`n <= 7`) and F1^hu (`n + k <= 6`), one check per generator.
pub fn dsq(opts: &Options) -> Result<Report> {
    let plan = [
        (Presentation::AInf, opts.bound(8)),
        (Presentation::AHu, opts.bound(7)),
        (Presentation::F1, opts.bound(7)),
        (Presentation::F1Hu, opts.bound(6)),
    ];
    let mut jobs = Vec::new();
    for (pres, bound) in plan {
        for g in generators(pres, bound) {
            jobs.push((pres, g));
        }
    }
    let results: Vec<Result<Check>> = jobs
        .par_iter()
        .map(|(pres, g)| {
            let start = Instant::now();
            let bad = d_squared_failures(*pres, std::slice::from_ref(g))?;
            let witness = bad.first().map(|(_, e)| format!("∂∂ = {}", format_element(e)));
            Ok(Check {
                id: format!("dsq.{pres}.{g}"),
                status: if witness.is_some() { Status::Fail } else { Status::Pass },
                witness,
                timing_ms: opts.timing.then(|| start.elapsed().as_millis()),
            })
        })
        .collect();
    let mut report = Report::new();
    for r in results {
        report.checks.push(r?);
    }
    Ok(report)
}

/// The homotopy lemma on `F̄1` up to arity 6.
pub fn homotopy(opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let r = verify_lemma(opts.bound(6) as usize)?;
    let ms = opts.timing.then(|| start.elapsed().as_millis());
    let mut report = Report::new();
    for (id, fails) in [
        ("homotopy.identity", &r.identity_failures),
        ("homotopy.closed-form", &r.closed_form_failures),
        ("homotopy.filtration", &r.filtration_failures),
        ("homotopy.chain-map", &r.chain_map_failures),
        ("homotopy.neumann", &r.neumann_failures),
    ] {
        report.record(id, first(fails));
    }
    report.record("homotopy.keys", (r.keys == 0).then(|| "no keys".to_string()));
    if let Some(c) = report.checks.last_mut() {
        c.timing_ms = ms;
    }
    Ok(report)
}

/// Coassociativity, counitality and the chain map property of `Δ` on F1
/// (`n <= 6`) and F1^hu (`n + k <= 5`).
pub fn coalgebra(opts: &Options) -> Result<Report> {
    let mut report = Report::new();
    for (pres, bound) in [(Presentation::F1, opts.bound(6)), (Presentation::F1Hu, opts.bound(6).saturating_sub(1))] {
        let start = Instant::now();
        let r = coalgebra::verify(pres, bound)?;
        let p = pres.name();
        report.record(format!("coalgebra.{p}.coassociative"), first(&r.coassociativity_failures));
        report.record(format!("coalgebra.{p}.counital"), first(&r.counit_failures));
        report.record(format!("coalgebra.{p}.chain-map"), first(&r.chain_map_failures));
        if pres == Presentation::F1Hu {
            report.record(format!("coalgebra.{p}.closed"), first(&r.closure_failures));
        }
        if let Some(c) = report.checks.last_mut() {
            c.timing_ms = opts.timing.then(|| start.elapsed().as_millis());
        }
    }
    Ok(report)
}

/// The homology plan: presentation, arity, degree window and the unit
/// filtration level (see `homology`).
pub fn homology_plan(opts: &Options) -> Vec<(Presentation, usize, i64, i64, usize)> {
    let mut plan = Vec::new();
    let lo = opts.degree_min.unwrap_or(-2);
    let (a, f) = match opts.arity_max {
        Some(n) => (n as usize, n as usize),
        None => (5, 5),
    };
    for n in 1..=a {
        plan.push((Presentation::AInf, n, 2 - n as i64, 1, 0));
    }
    for n in 1..=f {
        plan.push((Presentation::F1, n, 1 - n as i64, 1, 0));
    }
    let h = opts.arity_max.map_or(4, |n| n.min(4)) as usize;
    for n in 0..=h {
        plan.push((Presentation::AHu, n, lo, 1, 2));
    }
    for n in 0..=h {
        plan.push((Presentation::F1Hu, n, lo, 1, if n >= 4 { 1 } else { 2 }));
    }
    plan
}

/// Homology over the rationals: one-dimensional in degree 0 and zero
/// elsewhere, as for `As(n)` (`n >= 1`) and `Ass(n)` (`n >= 0`). The
/// homotopy unital complexes are infinite in each degree; they are
/// computed on the subcomplex of trees with at most `C` unit insertions.
pub fn homology_suite(opts: &Options) -> Result<Report> {
    let plan = homology_plan(opts);
    let results: Vec<Result<Check>> = plan
        .par_iter()
        .map(|&(pres, n, lo, hi, c)| {
            let start = Instant::now();
            let h = homology(pres, n, lo, hi, c, Ring::Rationals)?;
            let bad: Vec<String> = h
                .iter()
                .filter(|d| d.homology != usize::from(d.degree == 0))
                .map(|d| format!("H_{} = {}", d.degree, d.homology))
                .collect();
            let dims: Vec<String> = h.iter().map(|d| format!("{}:{}", d.degree, d.homology)).collect();
            Ok(Check {
                id: format!("homology.{pres}.n{n}"),
                status: if bad.is_empty() { Status::Pass } else { Status::Fail },
                witness: (!bad.is_empty()).then(|| format!("{} (dims {})", bad.join(", "), dims.join(" "))),
                timing_ms: opts.timing.then(|| start.elapsed().as_millis()),
            })
        })
        .collect();
    let mut report = Report::new();
    for r in results {
        report.checks.push(r?);
    }
    Ok(report)
}

pub fn run(suite: Suite, opts: &Options) -> Result<Report> {
    let mut report = Report::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Anchors {
        report.extend("", anchors()?);
    }
    if all || suite == Suite::Dsq {
        report.extend("", dsq(opts)?);
    }
    if all || suite == Suite::Homotopy {
        report.extend("", homotopy(opts)?);
    }
    if all || suite == Suite::Coalgebra {
        report.extend("", coalgebra(opts)?);
    }
    if all || suite == Suite::Homology {
        report.extend("", homology_suite(opts)?);
    }
    report.sort();
    Ok(report)
}
