//! Text notation for labels, trees and elements.
//!
//! Trees are written as `label(child, ...)` with `·` (or `.`) for an input
//! and `1` for the unit tree; a bare label of positive arity stands for its
//! corolla. A tree string names a basis tree, read in its canonical vertex
//! order, so parsing never introduces a sign. Elements are sums such as
//! `m2(m2(·,·),·) - 2 m2(·,m2(·,·))`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::kernel::{Element, Label, Slot, Tree};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<u32> {
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return None;
        }
        self.pos += digits.len();
        digits.parse().ok()
    }

    fn pattern(&mut self) -> Result<Vec<u32>> {
        let mut p = vec![match self.number() {
            Some(n) => n,
            None => return self.err("expected an arity"),
        }];
        while self.rest().starts_with(';') {
            self.pos += 1;
            match self.number() {
                Some(n) => p.push(n),
                None => return self.err("expected an arity after `;`"),
            }
        }
        Ok(p)
    }

    fn floor(&mut self) -> Result<u8> {
        if self.rest().starts_with('@') {
            self.pos += 1;
            match self.number() {
                Some(q) if (1..=u8::MAX as u32).contains(&q) => Ok(q as u8),
                _ => self.err("expected a floor number"),
            }
        } else {
            Ok(1)
        }
    }

    fn label(&mut self) -> Result<Label> {
        self.skip_ws();
        let r = self.rest();
        let label = if r.starts_with("mu") {
            self.pos += 2;
            match self.number() {
                Some(k) => Label::Mu(k),
                None => return self.err("expected an arity after `mu`"),
            }
        } else if r.starts_with("1su") {
            self.pos += 3;
            Label::Unit
        } else if r.starts_with("1F") {
            self.pos += 2;
            Label::UnitF(self.floor()?)
        } else if r.starts_with('m') {
            self.pos += 1;
            Label::M(self.pattern()?)
        } else if r.starts_with('f') {
            self.pos += 1;
            let p = self.pattern()?;
            Label::F(p, self.floor()?)
        } else if r.starts_with('v') {
            self.pos += 1;
            Label::V(self.floor()?)
        } else if r.starts_with('i') {
            self.pos += 1;
            Label::I
        } else if r.starts_with('j') {
            self.pos += 1;
            Label::J
        } else {
            return self.err("expected a label");
        };
        if !label.is_well_formed() {
            return self.err(format!("`{label}` is not a generator"));
        }
        Ok(label)
    }

    fn slot(&mut self) -> Result<Slot> {
        if self.eat("·") || self.eat(".") {
            return Ok(Slot::Input);
        }
        let label = self.label()?;
        if !self.eat("(") {
            let a = label.arity();
            return Ok(Slot::node(label, vec![Slot::Input; a]));
        }
        let mut children = Vec::new();
        if !self.eat(")") {
            loop {
                children.push(self.slot()?);
                if self.eat(")") {
                    break;
                }
                if !self.eat(",") {
                    return self.err("expected `,` or `)`");
                }
            }
        }
        if children.len() != label.arity() {
            return self.err(format!("`{label}` takes {} arguments, found {}", label.arity(), children.len()));
        }
        Ok(Slot::node(label, children))
    }

    fn tree(&mut self) -> Result<Tree> {
        self.skip_ws();
        let r = self.rest();
        // `1` alone is the unit tree; `1su` and `1F` are labels.
        if r.starts_with('1') && !r.starts_with("1su") && !r.starts_with("1F") {
            self.pos += 1;
            return Ok(Tree::unit());
        }
        Ok(Tree::from_shape(self.slot()?))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

pub fn parse_label(s: &str) -> Result<Label> {
    let mut p = Parser { src: s, pos: 0 };
    let l = p.label()?;
    p.finish()?;
    Ok(l)
}

pub fn parse_tree(s: &str) -> Result<Tree> {
    let mut p = Parser { src: s, pos: 0 };
    let t = p.tree()?;
    p.finish()?;
    Ok(t)
}

/// Parses a sum of integer multiples of trees. `shape` gives the arity and
/// degree of `0`, which has no terms to infer them from.
pub fn parse_element(s: &str, shape: Option<(usize, i64)>) -> Result<Element> {
    let mut p = Parser { src: s, pos: 0 };
    let mut out: Option<Element> = None;
    let mut first = true;
    loop {
        p.skip_ws();
        if p.pos == s.len() {
            break;
        }
        let mut negative = false;
        if p.eat("+") {
            if first {
                return p.err("leading `+`");
            }
        } else if p.eat("-") {
            negative = true;
        } else if !first {
            return p.err("expected `+` or `-`");
        }
        p.skip_ws();
        let digits: String = p.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        let mut coef = BigInt::one();
        let after = &p.rest()[digits.len()..];
        let is_coefficient = !digits.is_empty() && !after.starts_with("su") && !after.starts_with('F');
        if is_coefficient {
            // `0` alone is the empty sum.
            if digits == "0" && first && after.trim().is_empty() {
                break;
            }
            let lone_unit = digits == "1" && !after.trim_start().starts_with('*') && {
                let a = after.trim_start();
                a.is_empty() || a.starts_with('+') || a.starts_with('-')
            };
            if !lone_unit {
                coef = digits.parse().expect("digits");
                p.pos += digits.len();
                p.eat("*");
            }
        }
        if negative {
            coef = -coef;
        }
        let t = p.tree()?;
        let e = out.get_or_insert_with(|| Element::zero(t.arity(), t.degree()));
        if (t.arity(), t.degree()) != (e.arity(), e.degree()) {
            return p.err(format!("`{t}` does not match arity {} and degree {}", e.arity(), e.degree()));
        }
        e.add_term(t, coef);
        first = false;
    }
    match (out, shape) {
        (Some(e), Some((a, d))) if (e.arity(), e.degree()) != (a, d) => Err(Error::Shape(format!(
            "expected arity {a} and degree {d}, found arity {} and degree {}",
            e.arity(),
            e.degree()
        ))),
        (Some(e), _) => Ok(e),
        (None, Some((a, d))) => Ok(Element::zero(a, d)),
        (None, None) => Err(Error::Parse { pos: 0, msg: "an empty sum needs an arity and degree".into() }),
    }
}

pub fn format_element(x: &Element) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (t, c)) in x.terms().enumerate() {
        let sep = match (i, c.is_negative()) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out.push_str(sep);
        let a = c.abs();
        if !a.is_one() {
            let _ = write!(out, "{a} ");
        }
        let _ = write!(out, "{t}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::ainf_boundary;

    #[test]
    fn labels_round_trip() {
        for s in ["m2", "m1;0", "m0;0;0", "mu3", "mu0", "i", "j", "1su", "f2", "f1;0@2", "v", "v@2", "1F", "1F@2"] {
            assert_eq!(parse_label(s).unwrap().to_string(), s);
        }
        assert!(parse_label("m1").is_err());
        assert!(parse_label("x").is_err());
    }

    #[test]
    fn trees() {
        let t = parse_tree("m2(m2(·,·),.)").unwrap();
        assert_eq!(t.to_string(), "m2(m2(·,·),·)");
        assert_eq!(parse_tree("m3").unwrap(), Tree::corolla(Label::m(3)));
        assert!(parse_tree("1").unwrap().is_unit());
        assert_eq!(parse_tree("m2(i,·)").unwrap().arity(), 1);
        assert!(parse_tree("m2(·)").is_err());
        assert!(parse_tree("m2(·,·) x").is_err());
    }

    #[test]
    fn elements_round_trip() {
        let x = ainf_boundary(4);
        let s = format_element(&x);
        assert_eq!(parse_element(&s, None).unwrap(), x);
        let y = parse_element("1 - m2(i,·)", None).unwrap();
        assert_eq!(y.len(), 2);
        assert_eq!(parse_element(&format_element(&y), None).unwrap(), y);
        let z = parse_element("3 m2 - 2*m2", None).unwrap();
        assert_eq!(format_element(&z), "m2(·,·)");
        assert!(parse_element("0", Some((2, 0))).unwrap().is_zero());
        assert!(parse_element("0", None).is_err());
        assert!(parse_element("m2 + m3", None).is_err());
    }
}
