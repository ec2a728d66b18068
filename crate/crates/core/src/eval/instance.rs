//! JSON instance documents.
//!
//! ```json
//! {"ring": "Q",
//!  "module": [{"name": "1", "degree": 0}, {"name": "x", "degree": 10}],
//!  "operations": {"m_2": [{"in": ["x", "1"], "out": "x", "coef": "1"}],
//!                 "i": [{"in": [], "out": "1", "coef": "1"}]}}
//! ```
//!
//! Top-level `module`/`operations` describe the algebra `A`; more algebras
//! go under `algebras`, and `morphisms` name their source and target
//! (both default to `A`). `m_1` is the differential.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{FiniteAlgebra, FiniteMorphism, Module, MultiMap};
use crate::error::{Error, Result};
use crate::kernel::{Label, Ring};
use crate::notation::parse_label;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    #[serde(rename = "in")]
    pub inputs: Vec<String>,
    pub out: String,
    pub coef: String,
}

pub type Tables = BTreeMap<String, Vec<Entry>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub module: Vec<BasisEntry>,
    #[serde(default)]
    pub operations: Tables,
}

fn default_algebra() -> String {
    "A".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    #[serde(default = "default_algebra")]
    pub source: String,
    #[serde(default = "default_algebra")]
    pub target: String,
    #[serde(default)]
    pub components: Tables,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<Vec<BasisEntry>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub operations: Tables,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDocument>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDocument>,
}

/// A morphism together with the names of its source and target.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedMorphism {
    pub source: String,
    pub target: String,
    pub map: FiniteMorphism,
}

/// A validated document.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub ring: Ring,
    pub algebras: BTreeMap<String, FiniteAlgebra>,
    pub morphisms: BTreeMap<String, NamedMorphism>,
}

fn err<T>(path: impl Into<String>, msg: impl Into<String>) -> Result<T> {
    Err(Error::Instance { path: path.into(), msg: msg.into() })
}

/// `m_1;0` → `m1;0`; the underscore is optional.
fn key_label(path: &str, key: &str) -> Result<Label> {
    let k = match key.char_indices().nth(1) {
        Some((i, '_')) => format!("{}{}", &key[..i], &key[i + 1..]),
        _ => key.to_string(),
    };
    parse_label(&k).or_else(|_| err(path, format!("`{key}` is not a generator key")))
}

fn label_key(l: &Label) -> String {
    let s = l.to_string();
    match l {
        Label::M(_) | Label::F(..) => format!("{}_{}", &s[..1], &s[1..]),
        _ => s,
    }
}

fn module(path: &str, entries: &[BasisEntry]) -> Result<Module> {
    let mut m = Module { names: Vec::new(), degrees: Vec::new() };
    for (k, e) in entries.iter().enumerate() {
        if m.index(&e.name).is_some() {
            return err(format!("{path}[{k}]"), format!("basis name `{}` repeated", e.name));
        }
        m.names.push(e.name.clone());
        m.degrees.push(e.degree);
    }
    Ok(m)
}

fn table(
    ring: Ring,
    path: &str,
    entries: &[Entry],
    arity: usize,
    degree: i64,
    input: &Module,
    output: &Module,
) -> Result<MultiMap> {
    let mut m = MultiMap::zero(arity, degree, input.dim(), output.dim());
    for (k, e) in entries.iter().enumerate() {
        let here = format!("{path}[{k}]");
        if e.inputs.len() != arity {
            return err(here, format!("expected {arity} inputs, found {}", e.inputs.len()));
        }
        let mut t = Vec::with_capacity(arity);
        for (p, name) in e.inputs.iter().enumerate() {
            match input.index(name) {
                Some(x) => t.push(x),
                None => return err(format!("{here}.in[{p}]"), format!("unknown basis element `{name}`")),
            }
        }
        let Some(o) = output.index(&e.out) else {
            return err(format!("{here}.out"), format!("unknown basis element `{}`", e.out));
        };
        let c = BigRational::from_str(e.coef.trim()).or_else(|_| err(format!("{here}.coef"), format!("`{}` is not a fraction", e.coef)))?;
        let c = ring.reduce(&c).or_else(|e| err(format!("{here}.coef"), e.to_string()))?;
        let cur = m.get(&t, o).clone();
        m.set(&t, o, ring.add(&cur, &c));
    }
    Ok(m)
}

fn algebra(ring: Ring, path: &str, doc: &AlgebraDocument) -> Result<FiniteAlgebra> {
    let module = module(&format!("{path}module"), &doc.module)?;
    let mut a = FiniteAlgebra::new(module);
    for (key, entries) in &doc.operations {
        let here = format!("{path}operations.{key}");
        if key == "m_1" || key == "m1" {
            a.differential = table(ring, &here, entries, 1, 1, &a.module, &a.module)?;
            continue;
        }
        let l = key_label(&here, key)?;
        if l.is_middle() || matches!(l, Label::Mu(_)) {
            return err(here, format!("`{key}` is not an algebra operation"));
        }
        let m = table(ring, &here, entries, l.arity(), l.degree(), &a.module, &a.module)?;
        a.ops.insert(l, m);
    }
    Ok(a)
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Instance> {
        let doc: InstanceDocument =
            serde_json::from_str(text).or_else(|e| err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        Instance::from_document(&doc)
    }

    pub fn from_document(doc: &InstanceDocument) -> Result<Instance> {
        let ring = match &doc.ring {
            RingSpec::Named(s) if s == "Q" => Ring::Rationals,
            RingSpec::Named(s) => return err("ring", format!("unknown ring `{s}`")),
            RingSpec::Prime { fp } => Ring::prime(*fp).or_else(|e| err("ring.Fp", e.to_string()))?,
        };
        let mut algebras = BTreeMap::new();
        match &doc.module {
            Some(m) => {
                let top = AlgebraDocument { module: m.clone(), operations: doc.operations.clone() };
                algebras.insert("A".to_string(), algebra(ring, "", &top)?);
            }
            None if !doc.operations.is_empty() => return err("operations", "operations given without a module"),
            None => {}
        }
        for (name, a) in &doc.algebras {
            if algebras.contains_key(name) {
                return err(format!("algebras.{name}"), "algebra `A` is already given at top level");
            }
            algebras.insert(name.clone(), algebra(ring, &format!("algebras.{name}."), a)?);
        }
        let mut morphisms = BTreeMap::new();
        for (name, m) in &doc.morphisms {
            let path = format!("morphisms.{name}");
            let Some(src) = algebras.get(&m.source) else {
                return err(format!("{path}.source"), format!("unknown algebra `{}`", m.source));
            };
            let Some(dst) = algebras.get(&m.target) else {
                return err(format!("{path}.target"), format!("unknown algebra `{}`", m.target));
            };
            let mut f = FiniteMorphism::default();
            for (key, entries) in &m.components {
                let here = format!("{path}.components.{key}");
                let l = key_label(&here, key)?;
                if !matches!(l, Label::F(..) | Label::V(_)) || l.floor() != Some(1) {
                    return err(here, format!("`{key}` is not a morphism component"));
                }
                let t = table(ring, &here, entries, l.arity(), l.degree(), &src.module, &dst.module)?;
                f.components.insert(l, t);
            }
            morphisms.insert(name.clone(), NamedMorphism { source: m.source.clone(), target: m.target.clone(), map: f });
        }
        Ok(Instance { ring, algebras, morphisms })
    }

    /// The document of this instance; every algebra goes under `algebras`.
    pub fn to_document(&self) -> InstanceDocument {
        let ring = match self.ring {
            Ring::Rationals => RingSpec::Named("Q".into()),
            Ring::Prime(p) => RingSpec::Prime { fp: p },
        };
        let entries = |m: &MultiMap, input: &Module, output: &Module| -> Vec<Entry> {
            m.nonzero()
                .into_iter()
                .map(|(t, o, c)| Entry {
                    inputs: t.iter().map(|&x| input.names[x].clone()).collect(),
                    out: output.names[o].clone(),
                    coef: c.to_string(),
                })
                .collect()
        };
        let mut algebras = BTreeMap::new();
        for (name, a) in &self.algebras {
            let module = a.module.names.iter().zip(&a.module.degrees).map(|(n, d)| BasisEntry { name: n.clone(), degree: *d }).collect();
            let mut operations = Tables::new();
            if !a.differential.is_zero() {
                operations.insert("m_1".into(), entries(&a.differential, &a.module, &a.module));
            }
            for (l, m) in &a.ops {
                operations.insert(label_key(l), entries(m, &a.module, &a.module));
            }
            algebras.insert(name.clone(), AlgebraDocument { module, operations });
        }
        let mut morphisms = BTreeMap::new();
        for (name, m) in &self.morphisms {
            let (src, dst) = (&self.algebras[&m.source].module, &self.algebras[&m.target].module);
            let components = m.map.components.iter().map(|(l, t)| (label_key(l), entries(t, src, dst))).collect();
            morphisms.insert(
                name.clone(),
                MorphismDocument { source: m.source.clone(), target: m.target.clone(), components },
            );
        }
        InstanceDocument { ring, module: None, operations: Tables::new(), algebras, morphisms }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("documents serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = r#"{
        "ring": "Q",
        "module": [{"name": "1", "degree": 0}, {"name": "x", "degree": 10}],
        "operations": {
            "m_2": [{"in": ["1", "1"], "out": "1", "coef": "1"},
                    {"in": ["1", "x"], "out": "x", "coef": "1"},
                    {"in": ["x", "1"], "out": "x", "coef": "1"}],
            "i": [{"in": [], "out": "1", "coef": "1"}],
            "m_1;0": []
        },
        "morphisms": {"id": {"components": {"f_1": [
            {"in": ["1"], "out": "1", "coef": "1"}, {"in": ["x"], "out": "x", "coef": "1"}]}}}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let inst = Instance::from_json(DUAL).unwrap();
        let a = &inst.algebras["A"];
        assert_eq!(a.dim(), 2);
        assert_eq!(a.ops.len(), 3);
        assert!(a.ops.contains_key(&Label::M(vec![1, 0])));
        let again = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn diagnostics() {
        let bad = DUAL.replace(r#""out": "x", "coef": "1"}],"#, r#""out": "y", "coef": "1"}],"#);
        match Instance::from_json(&bad).unwrap_err() {
            Error::Instance { path, .. } => assert_eq!(path, "operations.m_2[2].out"),
            e => panic!("{e:?}"),
        }
        let bad = DUAL.replace("m_1;0", "m_1;x");
        assert!(matches!(Instance::from_json(&bad), Err(Error::Instance { .. })));
        let bad = DUAL.replace(r#""coef": "1"}],
            "m_1;0""#, r#""coef": "1/0"}],
            "m_1;0""#);
        assert!(Instance::from_json(&bad).is_err());
        assert!(Instance::from_json("{\"ring\": \"Q\", ").is_err());
    }

    #[test]
    fn prime_ring_reduces() {
        let doc = DUAL.replace("\"ring\": \"Q\"", "\"ring\": {\"Fp\": 101}").replace("\"coef\": \"1\"}]}}}", "\"coef\": \"1/2\"}]}}}");
        let inst = Instance::from_json(&doc).unwrap();
        assert_eq!(inst.ring, Ring::Prime(101));
        let f1 = &inst.morphisms["id"].map.components[&Label::f(1)];
        assert_eq!(f1.get(&[1], 1), &BigRational::from_integer(51.into()));
    }
}
