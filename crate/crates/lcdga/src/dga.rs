//! The contact DGA of a (−1)-closure: crossings of degree 0, chords `c_ij` of
//! degree 1 with `∂C = 1 + P_β`.

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::map::DgaMap;
use crate::matrix::NcMatrix;
use crate::nc::NcPoly;
use crate::ring::CoefficientRing;
use crate::spec::ClosureSpec;
use crate::symbol::Gen;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Crossing,
    Chord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInfo {
    pub gen: Gen,
    pub kind: GeneratorKind,
    pub degree: u8,
    /// Component at which the chord ends (`r`) and starts (`c`).
    pub r: usize,
    pub c: usize,
    /// Crossing position for crossings, row index for chords.
    pub position: usize,
    /// Zero-based strand pair: `(k-1, k)` for σ_k, `(i, j)` for `c_ij`.
    pub strands: (usize, usize),
}

/// Name of the chord `c_ij` (zero-based indices).
pub fn chord_name(i: usize, j: usize) -> String {
    format!("c{}_{}", i + 1, j + 1)
}

pub fn chord_gen(i: usize, j: usize) -> Gen {
    Gen::new(&chord_name(i, j))
}

#[derive(Clone, Debug)]
pub struct ClosureDga {
    spec: ClosureSpec,
    generators: Vec<GeneratorInfo>,
    index: HashMap<Gen, usize>,
    differential: HashMap<Gen, NcPoly>,
    ring: CoefficientRing,
}

/// Result of [`ClosureDga::check_structure`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub d_squared: Vec<String>,
    pub composability: Vec<String>,
    pub grading: Vec<String>,
    pub path_matrix: Vec<String>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.d_squared.is_empty() && self.composability.is_empty() && self.grading.is_empty() && self.path_matrix.is_empty()
    }

    pub fn violations(&self) -> Vec<String> {
        let mut v = self.d_squared.clone();
        v.extend(self.composability.iter().cloned());
        v.extend(self.grading.iter().cloned());
        v.extend(self.path_matrix.iter().cloned());
        v
    }
}

impl ClosureDga {
    pub fn build(spec: &ClosureSpec) -> ClosureDga {
        let n = spec.strands();
        let threads = spec.word().threads();
        let comps = spec.components();
        let mut generators = Vec::new();
        for (p, &k) in spec.word().letters().iter().enumerate() {
            generators.push(GeneratorInfo {
                gen: spec.crossing_gen(p),
                kind: GeneratorKind::Crossing,
                degree: 0,
                r: comps[threads[p][k]],
                c: comps[threads[p][k - 1]],
                position: p,
                strands: (k - 1, k),
            });
        }
        for i in 0..n {
            for j in 0..n {
                generators.push(GeneratorInfo {
                    gen: chord_gen(i, j),
                    kind: GeneratorKind::Chord,
                    degree: 1,
                    r: comps[i],
                    c: comps[j],
                    position: i,
                    strands: (i, j),
                });
            }
        }
        let index = generators.iter().enumerate().map(|(i, g)| (g.gen, i)).collect();
        let p = spec.path_matrix();
        let mut differential = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let mut d = p.get(i, j).clone();
                if i == j {
                    d = &d + &NcPoly::one();
                }
                differential.insert(chord_gen(i, j), d);
            }
        }
        let ring = CoefficientRing::new(spec.variables());
        ClosureDga { spec: spec.clone(), generators, index, differential, ring }
    }

    pub fn spec(&self) -> &ClosureSpec {
        &self.spec
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.generators
    }

    pub fn info(&self, g: Gen) -> Option<&GeneratorInfo> {
        self.index.get(&g).map(|&i| &self.generators[i])
    }

    pub fn generator(&self, name: &str) -> Result<&GeneratorInfo> {
        self.info(Gen::new(name)).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn degree(&self, g: Gen) -> u8 {
        self.info(g).map_or(0, |i| i.degree)
    }

    pub fn degree_zero(&self) -> Vec<Gen> {
        self.generators.iter().filter(|g| g.degree == 0).map(|g| g.gen).collect()
    }

    pub fn degree_one(&self) -> Vec<Gen> {
        self.generators.iter().filter(|g| g.degree == 1).map(|g| g.gen).collect()
    }

    /// Differential of a generator (zero for crossings).
    pub fn d_gen(&self, g: Gen) -> NcPoly {
        self.differential.get(&g).cloned().unwrap_or_default()
    }

    /// Differential extended by the graded Leibniz rule.
    pub fn differential(&self, x: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in x.terms() {
            let mut sign = 1i32;
            for (i, g) in w.iter().enumerate() {
                let dg = self.d_gen(*g);
                if !dg.is_zero() {
                    let left = NcPoly::term(Laurent::constant(sign), w[..i].to_vec());
                    let right = NcPoly::term(Laurent::one(), w[i + 1..].to_vec());
                    out += &(&(&left * &dg) * &right).scale(c);
                }
                if self.degree(*g) % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        out
    }

    /// Matrix of chords `C`.
    pub fn chord_matrix(&self) -> NcMatrix {
        let n = self.spec.strands();
        let mut m = NcMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, NcPoly::gen(chord_gen(i, j)));
            }
        }
        m
    }

    /// Endpoint check for a word: consecutive letters compose and the outer
    /// endpoints are `(r, c)`. The empty word requires `r == c`.
    pub fn composable(&self, word: &[Gen], r: usize, c: usize) -> bool {
        let mut cur = r;
        for g in word {
            match self.info(*g) {
                Some(info) if info.r == cur => cur = info.c,
                _ => return false,
            }
        }
        cur == c
    }

    pub fn check_structure(&self) -> StructureReport {
        let mut report = StructureReport::default();
        let n = self.spec.strands();
        let p = self.spec.path_matrix();
        for info in &self.generators {
            let d = self.d_gen(info.gen);
            let dd = self.differential(&d);
            if !dd.is_zero() {
                report.d_squared.push(format!("d^2({}) = {}", info.gen.name(), dd.pretty()));
            }
            for (w, _) in d.terms() {
                if !self.composable(w, info.r, info.c) {
                    let word: Vec<String> = w.iter().map(|g| g.name()).collect();
                    report.composability.push(format!("d({}) contains non-composable word {}", info.gen.name(), word.join("*")));
                }
                let deg: u32 = w.iter().map(|g| self.degree(*g) as u32).sum();
                if deg + 1 != info.degree as u32 {
                    let word: Vec<String> = w.iter().map(|g| g.name()).collect();
                    report.grading.push(format!("d({}) contains word {} of degree {deg}", info.gen.name(), word.join("*")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut expect = p.get(i, j).clone();
                if i == j {
                    expect = &expect + &NcPoly::one();
                }
                if self.d_gen(chord_gen(i, j)) != expect {
                    report.path_matrix.push(format!("d({}) differs from (1 + P)_{}{}", chord_name(i, j), i + 1, j + 1));
                }
            }
        }
        report
    }

    /// Replaces the differential of one generator; for testing the checks.
    pub fn with_differential(mut self, g: Gen, d: NcPoly) -> ClosureDga {
        self.differential.insert(g, d);
        self
    }

    /// `Ω(a) = u_{r(a)} u_{c(a)}^{-1} a`, one unit per component.
    pub fn link_automorphism(&self, units: &[Laurent]) -> Result<DgaMap> {
        let m = self.spec.component_count();
        if units.len() != m {
            return Err(Error::OutOfRange(format!("{} units for {m} components", units.len())));
        }
        let mut inv = Vec::new();
        for u in units {
            inv.push(u.unit_inverse().ok_or_else(|| Error::InvalidSpec(format!("{u} is not a unit")))?);
        }
        let mut images = HashMap::new();
        for info in self.generators.iter().filter(|g| g.degree == 0) {
            let scale = &units[info.r] * &inv[info.c];
            images.insert(info.gen, NcPoly::gen(info.gen).scale(&scale));
        }
        let comps = self.spec.components();
        let g: Vec<Laurent> = comps.iter().map(|&c| units[c].clone()).collect();
        let ginv: Vec<Laurent> = comps.iter().map(|&c| inv[c].clone()).collect();
        let map = DgaMap::new(&self.spec, &self.spec, images, HashMap::new(), NcMatrix::diagonal(&g), NcMatrix::diagonal(&ginv));
        map.verify()?;
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::symbol::Var;
    use std::collections::BTreeMap;

    #[test]
    fn unknot_differential() {
        let word = BraidWord::new(1, vec![]).unwrap();
        let spec = ClosureSpec::standard("u", word).unwrap();
        let dga = ClosureDga::build(&spec);
        let d = dga.d_gen(chord_gen(0, 0));
        assert_eq!(d, &NcPoly::one() + &NcPoly::scalar(Laurent::var(Var::new("t1"))));
        assert!(dga.check_structure().ok());
    }

    #[test]
    fn two_crossing_path_matrix() {
        let word = BraidWord::new(2, vec![1, 1]).unwrap();
        let spec = ClosureSpec::new("x", word, vec!["a1".into(), "a2".into()], BTreeMap::new(), None).unwrap();
        let p = spec.path_matrix();
        let a1 = NcPoly::gen(Gen::new("a1"));
        let a2 = NcPoly::gen(Gen::new("a2"));
        assert_eq!(*p.get(0, 0), NcPoly::one());
        assert_eq!(*p.get(0, 1), a2);
        assert_eq!(*p.get(1, 0), a1);
        assert_eq!(*p.get(1, 1), &NcPoly::one() + &(&a1 * &a2));
    }

    #[test]
    fn corrupted_differential_is_flagged() {
        let word = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let spec = ClosureSpec::standard("t", word).unwrap();
        let dga = ClosureDga::build(&spec);
        assert!(dga.check_structure().ok());
        let g = chord_gen(1, 1);
        let bad = -dga.d_gen(g);
        let report = dga.with_differential(g, bad).check_structure();
        assert!(report.composability.is_empty());
        assert!(!report.path_matrix.is_empty());
    }

    #[test]
    fn leibniz_signs() {
        let word = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let spec = ClosureSpec::standard("t", word).unwrap();
        let dga = ClosureDga::build(&spec);
        let c = NcPoly::gen(chord_gen(0, 0));
        let a = NcPoly::gen(Gen::new("a1"));
        assert_eq!(dga.differential(&(&c * &a)), &dga.d_gen(chord_gen(0, 0)) * &a);
        let cc = &c * &c;
        let d = dga.differential(&cc);
        let dc = dga.d_gen(chord_gen(0, 0));
        assert_eq!(d, &(&dc * &c) - &(&c * &dc));
        assert!(dga.differential(&NcPoly::one()).is_zero());
    }
}
