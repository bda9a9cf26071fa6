//! Process-wide interning of coefficient variables and DGA generator names.
//!
//! Identifiers compare by interning order, which depends on the order in which
//! names were first seen. Nothing observable depends on that order: serialized
//! output is always sorted by name-derived keys.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

#[derive(Default)]
struct Table {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Table {
    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }
}

fn vars() -> &'static RwLock<Table> {
    static T: OnceLock<RwLock<Table>> = OnceLock::new();
    T.get_or_init(Default::default)
}

fn gens() -> &'static RwLock<Table> {
    static T: OnceLock<RwLock<Table>> = OnceLock::new();
    T.get_or_init(Default::default)
}

fn lookup(t: &'static RwLock<Table>, name: &str) -> u32 {
    if let Some(&i) = t.read().unwrap().index.get(name) {
        return i;
    }
    t.write().unwrap().intern(name)
}

/// An invertible commuting coefficient variable such as `t1` or `s9`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    pub fn new(name: &str) -> Var {
        Var(lookup(vars(), name))
    }

    pub fn name(self) -> String {
        vars().read().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A noncommuting DGA generator such as `a9` or `c1_2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(u32);

impl Gen {
    pub fn new(name: &str) -> Gen {
        Gen(lookup(gens(), name))
    }

    pub fn name(self) -> String {
        gens().read().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Sort key that orders names like `a2 < a10 < b1`: alphabetic prefix, then
/// the embedded integers numerically.
pub fn natural_key(name: &str) -> Vec<(String, u64)> {
    let mut out = Vec::new();
    let mut text = String::new();
    let mut digits = String::new();
    for ch in name.chars() {
        if ch.is_ascii_digit() {
            digits.push(ch);
        } else {
            if !digits.is_empty() {
                out.push((std::mem::take(&mut text), digits.parse().unwrap_or(u64::MAX)));
                digits.clear();
            }
            text.push(ch);
        }
    }
    out.push((text, if digits.is_empty() { 0 } else { digits.parse().unwrap_or(u64::MAX) }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        assert_eq!(Var::new("t1"), Var::new("t1"));
        assert_ne!(Var::new("t1"), Var::new("t2"));
        assert_eq!(Gen::new("a9").name(), "a9");
    }

    #[test]
    fn natural_order() {
        let mut v = vec!["a10", "a2", "c1_2", "a1", "c1_10", "c1_3"];
        v.sort_by_key(|s| natural_key(s));
        assert_eq!(v, vec!["a1", "a2", "a10", "c1_2", "c1_3", "c1_10"]);
    }
}
