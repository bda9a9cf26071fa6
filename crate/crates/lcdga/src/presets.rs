//! Catalog of example closures with their customary crossing names, satellite
//! boxes and base points.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::spec::{detect_satellite, ClosureSpec};
use crate::symbol::Var;
use std::collections::BTreeMap;

fn t_column(r: usize, strands: &[usize]) -> BTreeMap<usize, BTreeMap<usize, Laurent>> {
    let col: BTreeMap<usize, Laurent> = strands.iter().enumerate().map(|(i, &s)| (s, Laurent::var(Var::new(&format!("t{}", i + 1))))).collect();
    [(r, col)].into_iter().collect()
}

/// `D̃_n`: `(σ2σ1σ3σ2)^4 σ3^2 σ1^{n-2}` on 4 strands. The first sixteen
/// crossings are named `a16..a1`, then `a17, a18` and the box `a19, a20, …`.
pub fn d_n(n: usize) -> Result<ClosureSpec> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("d_n needs n >= 4, got {n}")));
    }
    let mut letters = [2, 1, 3, 2].repeat(4);
    letters.extend([3, 3]);
    letters.extend(std::iter::repeat_n(1, n - 2));
    let word = BraidWord::new(4, letters)?;
    let mut labels: Vec<String> = (1..=16).rev().map(|i| format!("a{i}")).collect();
    labels.extend((17..=16 + n).map(|i| format!("a{i}")));
    let r = word.len();
    let sat = detect_satellite(&word, 18, r, 0, 2)?;
    ClosureSpec::new(&format!("d{n}"), word, labels, t_column(r, &[0, 1, 2, 3]), Some(sat))
}

/// `Λ_n`: `(σ2σ1σ1σ2)^3 σ1^n` on 3 strands, crossings `a12..a1` then the box
/// `a13, a14, …`; base points `t1, t2` on the box's right edge and `t3` on
/// the third strand, which lies on the stabilized unknot component.
pub fn lambda_n(n: usize) -> Result<ClosureSpec> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("lambda_n needs n >= 1, got {n}")));
    }
    let mut letters = [2, 1, 1, 2].repeat(3);
    letters.extend(std::iter::repeat_n(1, n));
    let word = BraidWord::new(3, letters)?;
    let mut labels: Vec<String> = (1..=12).rev().map(|i| format!("a{i}")).collect();
    labels.extend((13..13 + n).map(|i| format!("a{i}")));
    let r = word.len();
    let sat = detect_satellite(&word, 12, r, 0, 2)?;
    ClosureSpec::new(&format!("lambda{n}"), word, labels, t_column(r, &[0, 1, 2]), Some(sat))
}

/// `D̃_4` with the named crossings removed.
fn d4_without(name: &str, remove: &[&str]) -> Result<ClosureSpec> {
    let d4 = d_n(4)?;
    let drop: Vec<usize> = remove.iter().map(|l| d4.position(l)).collect::<Result<_>>()?;
    let word = d4.word().without(&drop);
    let labels: Vec<String> = d4.labels().iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, l)| l.clone()).collect();
    let r = word.len();
    let box_start = labels.iter().position(|l| l == "a19").unwrap();
    let sat = detect_satellite(&word, box_start, r, 0, 2)?;
    ClosureSpec::new(name, word, labels, t_column(r, &[0, 1, 2, 3]), Some(sat))
}

/// `β12`: `D̃_4` without `a18`.
pub fn b12() -> Result<ClosureSpec> {
    d4_without("b12", &["a18"])
}

/// `β21`: `D̃_4` without `a20`.
pub fn b21() -> Result<ClosureSpec> {
    d4_without("b21", &["a20"])
}

/// `β11`: `D̃_4` without `a18` and `a20`.
pub fn b11() -> Result<ClosureSpec> {
    d4_without("b11", &["a18", "a20"])
}

/// `T(p, q)`: `(σ1⋯σ_{p-1})^{p+q}`, crossings `a1..ar`, base points
/// `t1..tp` at the right end; the whole word is the box.
pub fn torus(p: usize, q: usize) -> Result<ClosureSpec> {
    if p < 2 || q < 1 {
        return Err(Error::OutOfRange(format!("torus needs p >= 2 and q >= 1, got ({p}, {q})")));
    }
    let word = BraidWord::new(p, (1..p).collect())?.pow(p + q);
    let r = word.len();
    let labels = (1..=r).map(|i| format!("a{i}")).collect();
    let sat = detect_satellite(&word, 0, r, 0, p)?;
    let strands: Vec<usize> = (0..p).collect();
    ClosureSpec::new(&format!("torus{p}_{q}"), word, labels, t_column(r, &strands), Some(sat))
}

/// Knot words of the ten-crossing examples.
pub fn knot_word(name: &str) -> Result<BraidWord> {
    let text = match name {
        "m10_145" => "2 1 3 2 2 1 3 2 2 1 3 2 2 1 3 2 2 1 3",
        "10_154" => "2 1 3 2 2 1 3 2 2 1 3 2 2 2 1 1 3 2 1 3 3",
        "m10_161" => "2 2 1 1 2 2 1 1 2 2 1 1 2 1",
        "10_139" => "2 2 1 1 2 2 1 1 2 2 1 1 2 1 1 1",
        "m10_152" => "2 1 1 2 2 1 1 2 2 1 2 1 1 2 2 1",
        _ => return Err(Error::UnknownFamily(name.to_string())),
    };
    let strands = if name == "m10_145" || name == "10_154" { 4 } else { 3 };
    BraidWord::parse(text, strands)
}

pub const KNOTS: [&str; 5] = ["m10_145", "10_154", "m10_161", "10_139", "m10_152"];

pub fn knot(name: &str) -> Result<ClosureSpec> {
    let name = name.strip_prefix("knot_").unwrap_or(name);
    ClosureSpec::standard(name, knot_word(name)?)
}

/// Family by name and parameters: `d_n [n]`, `lambda_n [n]`, `b11`, `b12`,
/// `b21`, `torus [p, q]`, `knot_<name>`.
pub fn family_preset(name: &str, params: &[usize]) -> Result<ClosureSpec> {
    let one = |what: &str| -> Result<usize> {
        match params {
            [n] => Ok(*n),
            _ => Err(Error::OutOfRange(format!("{what} takes one parameter"))),
        }
    };
    match name {
        "d_n" => d_n(one("d_n")?),
        "lambda_n" => lambda_n(one("lambda_n")?),
        "b11" => b11(),
        "b12" => b12(),
        "b21" => b21(),
        "torus" => match params {
            [p, q] => torus(*p, *q),
            _ => Err(Error::OutOfRange("torus takes two parameters".into())),
        },
        _ if name.starts_with("knot_") => knot(name),
        _ => Err(Error::UnknownFamily(name.to_string())),
    }
}

/// Parses a family string: `d4`, `lambda2`, `b11`, `torus:2,3`,
/// `knot_m10_145`, or the long forms `d_n:4`, `lambda_n:2`.
pub fn parse_family(text: &str) -> Result<ClosureSpec> {
    let t = text.trim();
    let nums = |s: &str| -> Result<Vec<usize>> {
        s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| Error::UnknownFamily(text.to_string()))).collect()
    };
    if let Some((head, rest)) = t.split_once(':') {
        let params = nums(rest)?;
        return family_preset(head, &params);
    }
    if t.starts_with("knot_") || KNOTS.contains(&t) {
        return knot(t);
    }
    if matches!(t, "b11" | "b12" | "b21") {
        return family_preset(t, &[]);
    }
    if let Some(n) = t.strip_prefix("lambda") {
        return lambda_n(n.parse().map_err(|_| Error::UnknownFamily(text.to_string()))?);
    }
    if let Some(n) = t.strip_prefix('d') {
        return d_n(n.parse().map_err(|_| Error::UnknownFamily(text.to_string()))?);
    }
    Err(Error::UnknownFamily(text.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_components() {
        let d4 = d_n(4).unwrap();
        assert_eq!(d4.len(), 20);
        assert_eq!(d4.word().letters()[16..], [3, 3, 1, 1]);
        assert_eq!(d4.label(0), "a16");
        assert_eq!(d4.label(19), "a20");
        assert_eq!(d4.component_count(), 4);
        assert_eq!(lambda_n(1).unwrap().component_count(), 2);
        assert_eq!(torus(2, 3).unwrap().word().letters(), &[1, 1, 1, 1, 1]);
        assert_eq!(torus(3, 3).unwrap().component_count(), 3);
        assert_eq!(torus(2, 4).unwrap().component_count(), 2);
        for k in KNOTS {
            assert_eq!(knot(k).unwrap().component_count(), 1, "{k}");
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_family("d4").unwrap(), d_n(4).unwrap());
        assert_eq!(parse_family("d_n:5").unwrap(), d_n(5).unwrap());
        assert_eq!(parse_family("torus:2,3").unwrap(), torus(2, 3).unwrap());
        assert!(parse_family("d3").is_err());
        assert!(parse_family("e8").is_err());
    }

    #[test]
    fn d4_groups() {
        let d4 = d_n(4).unwrap();
        let sat = d4.satellite().unwrap();
        let named: Vec<Vec<&str>> = sat.groups.iter().map(|g| g.positions.iter().map(|&p| d4.label(p)).collect()).collect();
        assert!(named.contains(&vec!["a11", "a9"]));
    }
}
