//! Algebra maps between closure DGAs.
//!
//! A map is stored by its images of the degree-0 generators, a ring map on
//! coefficient variables and a conjugator pair `(G, G^{-1})` acting on the
//! chord matrix as `C ↦ G C G^{-1}`. It is a chain map exactly when
//! `Φ(P_src) G = G P_tgt`.

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::matrix::NcMatrix;
use crate::nc::NcPoly;
use crate::spec::ClosureSpec;
use crate::symbol::{natural_key, Gen, Var};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct DgaMap {
    source: ClosureSpec,
    target: ClosureSpec,
    images: HashMap<Gen, NcPoly>,
    ring_map: HashMap<Var, Laurent>,
    conj: NcMatrix,
    conj_inv: NcMatrix,
}

impl DgaMap {
    /// Generators of the source without an image are sent to themselves.
    pub fn new(
        source: &ClosureSpec,
        target: &ClosureSpec,
        mut images: HashMap<Gen, NcPoly>,
        ring_map: HashMap<Var, Laurent>,
        conj: NcMatrix,
        conj_inv: NcMatrix,
    ) -> DgaMap {
        for g in source.crossing_gens() {
            images.entry(g).or_insert_with(|| NcPoly::gen(g));
        }
        let ring_map = ring_map.into_iter().filter(|(v, x)| *x != Laurent::var(*v)).collect();
        DgaMap { source: source.clone(), target: target.clone(), images, ring_map, conj, conj_inv }
    }

    /// Map fixing every crossing, with a conjugator.
    pub fn conjugation(source: &ClosureSpec, target: &ClosureSpec, conj: NcMatrix, conj_inv: NcMatrix) -> DgaMap {
        DgaMap::new(source, target, HashMap::new(), HashMap::new(), conj, conj_inv)
    }

    pub fn identity(spec: &ClosureSpec) -> DgaMap {
        let n = spec.strands();
        DgaMap::conjugation(spec, spec, NcMatrix::identity(n), NcMatrix::identity(n))
    }

    pub fn source(&self) -> &ClosureSpec {
        &self.source
    }

    pub fn target(&self) -> &ClosureSpec {
        &self.target
    }

    pub fn images(&self) -> &HashMap<Gen, NcPoly> {
        &self.images
    }

    /// Images of the source crossings in position order.
    pub fn ordered_images(&self) -> Vec<(Gen, NcPoly)> {
        self.source.crossing_gens().into_iter().map(|g| (g, self.images[&g].clone())).collect()
    }

    pub fn ring_map(&self) -> &HashMap<Var, Laurent> {
        &self.ring_map
    }

    /// Ring map entries sorted by variable name.
    pub fn ordered_ring_map(&self) -> Vec<(Var, Laurent)> {
        let mut v: Vec<(Var, Laurent)> = self.ring_map.iter().map(|(a, b)| (*a, b.clone())).collect();
        v.sort_by_key(|(a, _)| natural_key(&a.name()));
        v
    }

    pub fn conjugator(&self) -> (&NcMatrix, &NcMatrix) {
        (&self.conj, &self.conj_inv)
    }

    pub fn map_scalar(&self, x: &Laurent) -> Laurent {
        if self.ring_map.is_empty() {
            x.clone()
        } else {
            x.substitute(&self.ring_map)
        }
    }

    /// Image of a source generator; chords map to `(G C G^{-1})_ij`.
    pub fn image(&self, g: Gen) -> Result<NcPoly> {
        if let Some(p) = self.images.get(&g) {
            return Ok(p.clone());
        }
        let (i, j) = parse_chord(&g.name()).ok_or_else(|| Error::UnknownGenerator(g.name()))?;
        let n = self.source.strands();
        if i >= n || j >= n {
            return Err(Error::UnknownGenerator(g.name()));
        }
        let mut out = NcPoly::zero();
        for k in 0..n {
            let a = self.conj.get(i, k);
            if a.is_zero() {
                continue;
            }
            for l in 0..n {
                let b = self.conj_inv.get(l, j);
                if b.is_zero() {
                    continue;
                }
                out += &(&(a * &NcPoly::gen(crate::dga::chord_gen(k, l))) * b);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, x: &NcPoly) -> Result<NcPoly> {
        let mut gens = HashMap::new();
        for g in x.generators() {
            gens.insert(g, self.image(g)?);
        }
        x.substitute_with(&gens, &self.ring_map, false)
    }

    /// Entrywise image of a matrix.
    pub fn apply_matrix(&self, m: &NcMatrix) -> Result<NcMatrix> {
        m.try_map(|p| self.apply(p))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &DgaMap) -> Result<DgaMap> {
        let mut images = HashMap::new();
        for (g, p) in &self.images {
            images.insert(*g, next.apply(p)?);
        }
        let mut ring_map = HashMap::new();
        for v in self.source.variables().into_iter().chain(self.ring_map.keys().copied()) {
            let x = self.ring_map.get(&v).cloned().unwrap_or_else(|| Laurent::var(v));
            ring_map.insert(v, next.map_scalar(&x));
        }
        for (v, x) in &next.ring_map {
            ring_map.entry(*v).or_insert_with(|| x.clone());
        }
        let conj = &next.apply_matrix(&self.conj)? * &next.conj;
        let conj_inv = &next.conj_inv * &next.apply_matrix(&self.conj_inv)?;
        Ok(DgaMap::new(&self.source, &next.target, images, ring_map, conj, conj_inv))
    }

    /// Image of the source path matrix, built factor by factor.
    pub fn image_of_path_matrix(&self) -> NcMatrix {
        let spec = &self.source;
        let n = spec.strands();
        let col = |c: usize| -> Vec<Laurent> { spec.column(c).iter().map(|x| self.map_scalar(x)).collect() };
        let mut m = NcMatrix::identity(n).mul_diag_right(&col(0));
        for (p, &k) in spec.word().letters().iter().enumerate() {
            m = m.mul_path_factor_right(k - 1, &self.images[&spec.crossing_gen(p)]);
            m = m.mul_diag_right(&col(p + 1));
        }
        m
    }

    /// Chain-map check `Φ(P_src) G = G P_tgt` together with `G G^{-1} = 1`.
    pub fn verify(&self) -> Result<()> {
        if !(&self.conj * &self.conj_inv).is_identity() {
            return Err(Error::Internal("conjugator and its inverse do not multiply to the identity".into()));
        }
        let lhs = &self.image_of_path_matrix() * &self.conj;
        let rhs = &self.conj * &self.target.path_matrix();
        if lhs != rhs {
            let n = lhs.rows();
            for i in 0..n {
                for j in 0..n {
                    if lhs.get(i, j) != rhs.get(i, j) {
                        return Err(Error::Internal(format!(
                            "chain map check fails at entry ({}, {}): {} versus {}",
                            i + 1,
                            j + 1,
                            lhs.get(i, j).pretty(),
                            rhs.get(i, j).pretty()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_chain_map(&self) -> bool {
        self.verify().is_ok()
    }

    /// Agreement on degree-0 generators and on the ring.
    pub fn agrees_in_degree_zero(&self, other: &DgaMap) -> bool {
        if self.images != other.images {
            return false;
        }
        let vars: Vec<Var> = self.ring_map.keys().chain(other.ring_map.keys()).copied().collect();
        vars.iter().all(|v| self.map_scalar(&Laurent::var(*v)) == other.map_scalar(&Laurent::var(*v)))
    }

    /// Degree-0 generators and ring variables fixed.
    pub fn is_identity_in_degree_zero(&self) -> bool {
        self.ring_map.is_empty() && self.images.iter().all(|(g, p)| *p == NcPoly::gen(*g))
    }

    /// Identity on every generator: degree-0 identity and a conjugator that
    /// is a scalar multiple of the identity.
    pub fn is_identity(&self) -> bool {
        self.is_identity_in_degree_zero() && conjugator_is_central(&self.conj)
    }

    /// Commutative pull-back: values on the source crossings from values on
    /// the target crossings, coefficients sent through `coeff`.
    pub fn pull_back(&self, values: &HashMap<Gen, Laurent>, coeff: &dyn Fn(&Laurent) -> Laurent) -> Result<HashMap<Gen, Laurent>> {
        let mut out = HashMap::new();
        for (g, p) in &self.images {
            let mapped = p.map_coefficients(coeff);
            out.insert(*g, mapped.evaluate(values)?);
        }
        Ok(out)
    }
}

fn conjugator_is_central(g: &NcMatrix) -> bool {
    let d = g.get(0, 0);
    d.as_scalar().is_some() && g.entries().all(|(i, j, p)| if i == j { p == d } else { p.is_zero() })
}

/// Zero-based indices of a chord name `c{i}_{j}`.
pub fn parse_chord(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('c')?;
    let (i, j) = rest.split_once('_')?;
    let i: usize = i.parse().ok()?;
    let j: usize = j.parse().ok()?;
    if i == 0 || j == 0 {
        return None;
    }
    Some((i - 1, j - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::dga::ClosureDga;

    #[test]
    fn identity_is_chain_map() {
        let spec = ClosureSpec::standard("t", BraidWord::new(2, vec![1, 1, 1]).unwrap()).unwrap();
        let id = DgaMap::identity(&spec);
        id.verify().unwrap();
        assert!(id.is_identity());
        let c = NcPoly::gen(crate::dga::chord_gen(0, 1));
        assert_eq!(id.apply(&c).unwrap(), c);
    }

    #[test]
    fn link_automorphism_chain_map() {
        let word = BraidWord::new(2, vec![1, 1]).unwrap();
        let spec = ClosureSpec::standard("h", word).unwrap();
        let dga = ClosureDga::build(&spec);
        let s = Laurent::var(Var::new("mp_s"));
        let omega = dga.link_automorphism(&[s.clone(), Laurent::one()]).unwrap();
        omega.verify().unwrap();
        let a1 = Gen::new("a1");
        let info = dga.info(a1).unwrap();
        assert_ne!(info.r, info.c);
        assert_eq!(omega.images()[&a1].len(), 1);
        let knot = ClosureSpec::standard("k", BraidWord::new(2, vec![1, 1, 1]).unwrap()).unwrap();
        let om = ClosureDga::build(&knot).link_automorphism(&[s]).unwrap();
        assert!(om.is_identity_in_degree_zero());
        assert!(ClosureDga::build(&spec).link_automorphism(&[Laurent::one()]).is_err());
    }

    #[test]
    fn chords_parse() {
        assert_eq!(parse_chord("c3_12"), Some((2, 11)));
        assert_eq!(parse_chord("a3"), None);
    }
}
