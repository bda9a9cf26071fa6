//! Augmentations induced by decomposable fillings: pinching sequences closed
//! off by minimum cobordisms, restrictions and integer specializations.

use crate::cobordism::{saddle_map_with, unknot_augmentation, Augmentation, SaddleOptions};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::map::DgaMap;
use crate::ring::UnitRelation;
use crate::spec::ClosureSpec;
use crate::symbol::{Gen, Var};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::HashMap;

/// A pinching sequence and the resulting augmentation.
#[derive(Clone, Debug)]
pub struct Filling {
    pub pinches: Vec<String>,
    /// Closure before each saddle, and the saddle map.
    pub stages: Vec<(ClosureSpec, DgaMap)>,
    /// The final unlink closure.
    pub bottom: ClosureSpec,
    pub augmentation: Augmentation,
}

impl Filling {
    /// Genus of the filling from pinch count, component count and minima.
    pub fn genus(&self) -> i64 {
        let l = self.pinches.len() as i64;
        let m = self.augmentation.spec.component_count() as i64;
        let k = self.bottom.component_count() as i64;
        (l - m - k + 2) / 2
    }

    /// Free rank of the coefficient ring: `2g + 2m - 2`, plus one for every
    /// base point beyond the first on a component.
    pub fn expected_rank(&self) -> i64 {
        let spec = &self.augmentation.spec;
        let m = spec.component_count() as i64;
        let extra: i64 = spec.basepoints_by_component().iter().map(|c| c.len().saturating_sub(1) as i64).sum();
        2 * self.genus() + 2 * m - 2 + extra
    }
}

pub fn filling_augmentation(spec: &ClosureSpec, pinches: &[&str]) -> Result<Filling> {
    filling_augmentation_with(spec, pinches, &SaddleOptions::default())
}

pub fn filling_augmentation_with(spec: &ClosureSpec, pinches: &[&str], opts: &SaddleOptions) -> Result<Filling> {
    let mut cur = spec.clone();
    let mut stages = Vec::new();
    for name in pinches {
        let pos = cur.position(name)?;
        let (next, map) = saddle_map_with(&cur, pos, opts)?;
        stages.push((cur, map));
        cur = next;
    }
    let bottom_aug = unknot_augmentation(&cur)?;
    let ring = bottom_aug.ring.clone();
    let mut values = bottom_aug.values.clone();
    for (_, map) in stages.iter().rev() {
        values = map.pull_back(&values, &|c| ring.reduce(c))?;
        for v in values.values_mut() {
            *v = ring.reduce(v);
        }
    }
    let augmentation = Augmentation { spec: spec.clone(), ring, values };
    Ok(Filling { pinches: pinches.iter().map(|s| s.to_string()).collect(), stages, bottom: cur, augmentation })
}

/// `ε` of the product of all base-point labels. For a filling augmentation
/// this is `(−1)^m` with `m` the number of components.
pub fn basepoint_product(aug: &Augmentation) -> Laurent {
    let all = aug.spec.basepoints_by_component().into_iter().flatten().fold(Laurent::one(), |acc, l| &acc * &l);
    aug.ring.reduce(&all)
}

/// Whether [`basepoint_product`] equals `(−1)^m`.
pub fn basepoint_sign_holds(aug: &Augmentation) -> bool {
    let m = aug.spec.component_count();
    let want = if m.is_multiple_of(2) { Laurent::one() } else { -Laurent::one() };
    basepoint_product(aug) == want
}

/// Imposes `v = ±1` for the given base-point variables and re-solves, with
/// the remaining free variables eliminated in reverse declaration order.
pub fn restrict_augmentation(aug: &Augmentation, designation: &[(Var, i32)]) -> Result<(Augmentation, Vec<UnitRelation>)> {
    let mut rels = Vec::new();
    for (v, value) in designation {
        if value.abs() != 1 {
            return Err(Error::OutOfRange(format!("designation {} = {value} is not ±1", v.name())));
        }
        rels.push(UnitRelation { lhs: aug.ring.reduce(&Laurent::var(*v)), value: *value });
    }
    let mut elim = aug.ring.free_variables();
    elim.reverse();
    let ring = aug.ring.solve_relations(&rels, &elim)?;
    let values = aug.values.iter().map(|(g, x)| (*g, ring.reduce(x))).collect();
    Ok((Augmentation { spec: aug.spec.clone(), ring, values }, rels))
}

/// One integer specialization of an augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerAugmentation {
    pub signs: Vec<(Var, i8)>,
    pub values: Vec<(Gen, BigInt)>,
}

/// Sign assignment number `idx`: bit `i` set means the `i`-th variable is −1.
pub fn sign_assignment(vars: &[Var], idx: u64) -> HashMap<Var, i8> {
    vars.iter().enumerate().map(|(i, v)| (*v, if idx >> i & 1 == 1 { -1 } else { 1 })).collect()
}

/// All `2^rank` specializations to ℤ, each checked to annihilate `∂`.
pub fn enumerate_integer_augmentations(aug: &Augmentation) -> Result<Vec<IntegerAugmentation>> {
    let free = aug.ring.free_variables();
    if free.len() > 24 {
        return Err(Error::OutOfRange(format!("{} free variables is too many to enumerate", free.len())));
    }
    let applied = aug.applied_differential();
    let ordered = aug.ordered_values();
    (0..1u64 << free.len())
        .into_par_iter()
        .map(|idx| {
            let signs = sign_assignment(&free, idx);
            for (_, _, p) in applied.entries() {
                if !p.constant().eval_signs(&signs).is_zero() {
                    return Err(Error::Internal(format!("specialization {idx} does not annihilate the differential")));
                }
            }
            Ok(IntegerAugmentation {
                signs: free.iter().map(|v| (*v, signs[v])).collect(),
                values: ordered.iter().map(|(g, x)| (*g, x.eval_signs(&signs))).collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{d_n, torus};

    #[test]
    fn trefoil_filling() {
        let spec = torus(2, 3).unwrap();
        let f = filling_augmentation(&spec, &["a1", "a2", "a3"]).unwrap();
        assert!(f.augmentation.annihilates_differential());
        assert_eq!(f.genus(), 1);
        assert_eq!(f.augmentation.ring.rank() as i64, f.expected_rank());
        assert_eq!(basepoint_product(&f.augmentation), -Laurent::one());
        let ints = enumerate_integer_augmentations(&f.augmentation).unwrap();
        assert_eq!(ints.len(), 1 << f.augmentation.ring.rank());
    }

    #[test]
    fn d4_products_and_restriction() {
        let spec = d_n(4).unwrap();
        let f = filling_augmentation(&spec, &crate::worked::D4_PINCHES).unwrap();
        assert_eq!(basepoint_product(&f.augmentation), Laurent::one());
        assert!(basepoint_sign_holds(&f.augmentation));
        let (r, rels) = restrict_augmentation(&f.augmentation, &[(Var::new("s9"), 1)]).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(r.ring.rank(), 7);
        assert!(r.annihilates_differential());
        assert!(restrict_augmentation(&f.augmentation, &[(Var::new("s9"), 2)]).is_err());
    }
}
