//! Coefficient rings presented as Laurent rings modulo unit-monomial relations.

use crate::error::{Error, Result};
use crate::laurent::{Laurent, Monomial};
use crate::symbol::Var;
use std::collections::{BTreeMap, HashMap};

/// `ℤ[v^{±1} : v ∈ variables]` with some variables eliminated by signed
/// monomials in the remaining free ones.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoefficientRing {
    variables: Vec<Var>,
    solved: BTreeMap<Var, Laurent>,
}

/// A relation `lhs = value` where `lhs` is a signed monomial and `value` is ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitRelation {
    pub lhs: Laurent,
    pub value: i32,
}

impl UnitRelation {
    pub fn minus_one(lhs: Laurent) -> UnitRelation {
        UnitRelation { lhs, value: -1 }
    }
}

impl CoefficientRing {
    pub fn new(variables: Vec<Var>) -> CoefficientRing {
        let mut seen = Vec::new();
        for v in variables {
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        CoefficientRing { variables: seen, solved: BTreeMap::new() }
    }

    /// Declared variables, free and solved, in declaration order.
    pub fn variables(&self) -> &[Var] {
        &self.variables
    }

    pub fn free_variables(&self) -> Vec<Var> {
        self.variables.iter().copied().filter(|v| !self.solved.contains_key(v)).collect()
    }

    pub fn rank(&self) -> usize {
        self.variables.len() - self.solved.len()
    }

    pub fn solved(&self) -> &BTreeMap<Var, Laurent> {
        &self.solved
    }

    pub fn is_solved(&self, v: Var) -> bool {
        self.solved.contains_key(&v)
    }

    /// Adds variables not yet declared.
    pub fn extend(&mut self, vars: impl IntoIterator<Item = Var>) {
        for v in vars {
            if !self.variables.contains(&v) {
                self.variables.push(v);
            }
        }
    }

    pub fn substitution(&self) -> HashMap<Var, Laurent> {
        self.solved.iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    /// Image under an automorphism of the free variables given by `sub`
    /// (for example sign flips or a permutation): solved values are
    /// rewritten accordingly.
    pub fn twisted(&self, sub: &HashMap<Var, Laurent>) -> CoefficientRing {
        let solved = self.solved.iter().map(|(k, v)| (*k, v.substitute(sub))).collect();
        CoefficientRing { variables: self.variables.clone(), solved }
    }

    /// Canonical representative in the free variables.
    pub fn reduce(&self, x: &Laurent) -> Laurent {
        if self.solved.is_empty() {
            return x.clone();
        }
        x.substitute(&self.substitution())
    }

    /// Solves `w = -1` relations, eliminating for each relation the first
    /// variable of `eliminable` (in the given preference order) that occurs
    /// with exponent ±1.
    pub fn solve_unit_relations(&self, relations: &[Laurent], eliminable: &[Var]) -> Result<CoefficientRing> {
        let rels: Vec<UnitRelation> = relations.iter().cloned().map(UnitRelation::minus_one).collect();
        self.solve_relations(&rels, eliminable)
    }

    /// General form of [`solve_unit_relations`](Self::solve_unit_relations)
    /// with right-hand sides ±1. Relations that reduce to a true constant
    /// identity are accepted as redundant.
    pub fn solve_relations(&self, relations: &[UnitRelation], eliminable: &[Var]) -> Result<CoefficientRing> {
        let mut ring = self.clone();
        for rel in relations {
            if rel.value.abs() != 1 {
                return Err(Error::Inconsistent(format!("right-hand side {} is not a unit", rel.value)));
            }
            let reduced = ring.reduce(&rel.lhs);
            let (sign, mono) = reduced.as_unit().ok_or_else(|| Error::NotTriangular(format!("relation {} is not a signed monomial", rel.lhs)))?;
            if mono.is_one() {
                if sign != rel.value {
                    return Err(Error::Inconsistent(format!("relation {} = {} reduces to {} = {}", rel.lhs, rel.value, sign, rel.value)));
                }
                continue;
            }
            let pick = eliminable
                .iter()
                .copied()
                .find(|v| !ring.solved.contains_key(v) && mono.exponent(*v).abs() == 1)
                .ok_or_else(|| Error::NotTriangular(format!("no eliminable variable in relation {} = {}", reduced, rel.value)))?;
            // sign * pick^e * rest = value  =>  pick^e = sign*value * rest^{-1}
            let e = mono.exponent(pick);
            let rest = Monomial::from_pairs(mono.pairs().iter().copied().filter(|(v, _)| *v != pick));
            let value = Laurent::term(sign * rel.value, rest.inv());
            let value = if e == 1 { value } else { value.unit_inverse().unwrap() };
            let single: HashMap<Var, Laurent> = [(pick, value.clone())].into_iter().collect();
            for v in ring.solved.values_mut() {
                *v = v.substitute(&single);
            }
            ring.solved.insert(pick, value);
            if !ring.variables.contains(&pick) {
                ring.variables.push(pick);
            }
        }
        Ok(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;

    fn var(n: &str) -> Var {
        Var::new(n)
    }

    #[test]
    fn single_relation() {
        let r = CoefficientRing::new(vec![var("rg_t")]);
        let out = r.solve_unit_relations(&[Laurent::var(var("rg_t"))], &[var("rg_t")]).unwrap();
        assert_eq!(out.solved()[&var("rg_t")], Laurent::constant(-1));
        assert_eq!(out.rank(), 0);
    }

    #[test]
    fn inconsistent_relations() {
        let r = CoefficientRing::new(vec![var("rg_u")]);
        let rels = [UnitRelation { lhs: Laurent::var(var("rg_u")), value: -1 }, UnitRelation { lhs: Laurent::var(var("rg_u")), value: 1 }];
        assert!(matches!(r.solve_relations(&rels, &[var("rg_u")]), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn triangular_elimination_substitutes_back() {
        let vars: Vec<Var> = ["rg_a", "rg_b", "rg_x"].iter().map(|n| var(n)).collect();
        let r = CoefficientRing::new(vars.clone());
        let rels = [parse_laurent("-rg_a*rg_x^-1").unwrap(), parse_laurent("rg_b*rg_a").unwrap()];
        let out = r.solve_unit_relations(&rels, &[var("rg_a"), var("rg_b")]).unwrap();
        assert_eq!(out.free_variables(), vec![var("rg_x")]);
        for rel in &rels {
            assert_eq!(out.reduce(rel), Laurent::constant(-1));
        }
        for v in out.solved().values() {
            assert!(v.variables().iter().all(|x| !out.is_solved(*x)));
        }
    }

    #[test]
    fn missing_eliminable_is_reported() {
        let r = CoefficientRing::new(vec![var("rg_p")]);
        let res = r.solve_unit_relations(&[Laurent::var(var("rg_p"))], &[]);
        assert!(matches!(res, Err(Error::NotTriangular(_))));
    }
}
