//! Closure specifications: a braid word with crossing labels, base-point
//! columns and optional satellite metadata.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::matrix::NcMatrix;
use crate::nc::NcPoly;
use crate::symbol::{natural_key, Gen, Var};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// The cabled strand passes over: the group transforms as `h ↦ P_γ h`.
    Over,
    /// The cabled strand passes under: the group transforms as a row vector
    /// times `P_γ^{-1}`.
    Under,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Over => "over",
            GroupKind::Under => "under",
        }
    }
}

/// Crossings coming from one crossing of the pattern braid with the cabled
/// strand, ordered by increasing letter index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingGroup {
    pub positions: Vec<usize>,
    pub kind: GroupKind,
}

/// The satellite box and the crossing groups around it. Positions are
/// zero-based crossing indices; the box occupies `box_start..box_end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Satellite {
    pub box_start: usize,
    pub box_end: usize,
    pub cable_lo: usize,
    pub cable_len: usize,
    pub groups: Vec<CrossingGroup>,
}

impl Satellite {
    pub fn in_box(&self, pos: usize) -> bool {
        pos >= self.box_start && pos < self.box_end
    }
}

/// A decorated (−1)-closure. Column `l` sits after the `l`-th crossing, so
/// columns run over `0..=r`; strands are zero-based positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureSpec {
    name: String,
    word: BraidWord,
    labels: Vec<String>,
    basepoints: BTreeMap<usize, BTreeMap<usize, Laurent>>,
    satellite: Option<Satellite>,
}

impl ClosureSpec {
    pub fn new(
        name: &str,
        word: BraidWord,
        labels: Vec<String>,
        basepoints: BTreeMap<usize, BTreeMap<usize, Laurent>>,
        satellite: Option<Satellite>,
    ) -> Result<ClosureSpec> {
        let spec = ClosureSpec { name: name.to_string(), word, labels, basepoints, satellite };
        spec.validate()?;
        Ok(spec)
    }

    /// Default labels `a1..ar` and one base point `t_c` per component at the
    /// right end of its least strand.
    pub fn standard(name: &str, word: BraidWord) -> Result<ClosureSpec> {
        let labels = (1..=word.len()).map(|i| format!("a{i}")).collect();
        let comps = word.components();
        let r = word.len();
        let mut col = BTreeMap::new();
        let mut done = Vec::new();
        for (pos, &c) in comps.iter().enumerate() {
            if !done.contains(&c) {
                done.push(c);
                col.insert(pos, Laurent::var(Var::new(&format!("t{}", done.len()))));
            }
        }
        let mut basepoints = BTreeMap::new();
        basepoints.insert(r, col);
        ClosureSpec::new(name, word, labels, basepoints, None)
    }

    fn validate(&self) -> Result<()> {
        let r = self.word.len();
        let n = self.word.strands();
        if self.labels.len() != r {
            return Err(Error::InvalidSpec(format!("{} labels for {} crossings", self.labels.len(), r)));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &self.labels {
            if l.is_empty() || l.starts_with('c') && l[1..].contains('_') {
                return Err(Error::InvalidSpec(format!("bad crossing label `{l}`")));
            }
            if !seen.insert(l) {
                return Err(Error::InvalidSpec(format!("duplicate crossing label `{l}`")));
            }
        }
        for (&col, cells) in &self.basepoints {
            if col > r {
                return Err(Error::InvalidSpec(format!("base-point column {col} beyond {r}")));
            }
            for (&s, lab) in cells {
                if s >= n {
                    return Err(Error::InvalidSpec(format!("base point on strand {} of {n}", s + 1)));
                }
                if lab.as_unit().is_none() {
                    return Err(Error::InvalidSpec(format!("base-point label {lab} is not a signed monomial")));
                }
            }
        }
        if let Some(sat) = &self.satellite {
            if sat.box_start > sat.box_end || sat.box_end > r || sat.cable_lo + sat.cable_len > n {
                return Err(Error::InvalidSpec("satellite box out of range".into()));
            }
            for p in sat.box_start..sat.box_end {
                let k = self.word.letters()[p];
                if k - 1 < sat.cable_lo || k >= sat.cable_lo + sat.cable_len {
                    return Err(Error::InvalidSpec(format!("box crossing {} leaves the cable", self.labels[p])));
                }
            }
            let mut covered: Vec<usize> = sat.groups.iter().flat_map(|g| g.positions.clone()).collect();
            covered.sort();
            let expected = satellite_crossings(&self.word, sat)?;
            if covered != expected {
                return Err(Error::InvalidSpec("crossing groups do not partition the satellite crossings".into()));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> ClosureSpec {
        self.name = name.to_string();
        self
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn strands(&self) -> usize {
        self.word.strands()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, pos: usize) -> &str {
        &self.labels[pos]
    }

    pub fn crossing_gen(&self, pos: usize) -> Gen {
        Gen::new(&self.labels[pos])
    }

    pub fn crossing_gens(&self) -> Vec<Gen> {
        self.labels.iter().map(|l| Gen::new(l)).collect()
    }

    /// Zero-based position of the crossing with the given label.
    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownGenerator(label.to_string()))
    }

    pub fn basepoints(&self) -> &BTreeMap<usize, BTreeMap<usize, Laurent>> {
        &self.basepoints
    }

    pub fn satellite(&self) -> Option<&Satellite> {
        self.satellite.as_ref()
    }

    pub fn without_satellite(mut self) -> ClosureSpec {
        self.satellite = None;
        self
    }

    /// Diagonal entries of `D(t_l)`.
    pub fn column(&self, col: usize) -> Vec<Laurent> {
        let mut d = vec![Laurent::one(); self.strands()];
        if let Some(cells) = self.basepoints.get(&col) {
            for (&s, lab) in cells {
                d[s] = lab.clone();
            }
        }
        d
    }

    pub fn column_is_trivial(&self, col: usize) -> bool {
        self.column(col).iter().all(|x| x.is_one())
    }

    /// Coefficient variables, t-variables first, each group in natural order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = Vec::new();
        for cells in self.basepoints.values() {
            for lab in cells.values() {
                for v in lab.variables() {
                    if !vs.contains(&v) {
                        vs.push(v);
                    }
                }
            }
        }
        vs.sort_by_key(|v| {
            let n = v.name();
            (!n.starts_with('t'), natural_key(&n))
        });
        vs
    }

    /// `components()[left position]`.
    pub fn components(&self) -> Vec<usize> {
        self.word.components()
    }

    pub fn component_count(&self) -> usize {
        self.word.component_count()
    }

    /// Component of the strand found at `pos` in column `col`.
    pub fn component_at(&self, col: usize, pos: usize) -> usize {
        let threads = self.word.threads();
        self.components()[threads[col][pos]]
    }

    /// Components touched by each base point, as `(component, label)`.
    pub fn basepoints_by_component(&self) -> Vec<Vec<Laurent>> {
        let threads = self.word.threads();
        let comps = self.components();
        let mut out = vec![Vec::new(); self.component_count()];
        for (&col, cells) in &self.basepoints {
            for (&s, lab) in cells {
                out[comps[threads[col][s]]].push(lab.clone());
            }
        }
        out
    }

    /// Components carrying no base point.
    pub fn components_without_basepoints(&self) -> Vec<usize> {
        self.basepoints_by_component().iter().enumerate().filter(|(_, v)| v.is_empty()).map(|(i, _)| i).collect()
    }

    /// Path matrix `D(t_from) P(a_from) D(t_{from+1}) ⋯ P(a_{to-1}) D(t_to)`.
    pub fn path_product(&self, from: usize, to: usize) -> NcMatrix {
        self.path_product_with(from, to, &|p| NcPoly::gen(self.crossing_gen(p)))
    }

    /// Path product with the crossing at position `p` replaced by `entry(p)`.
    pub fn path_product_with(&self, from: usize, to: usize, entry: &dyn Fn(usize) -> NcPoly) -> NcMatrix {
        let n = self.strands();
        let mut m = NcMatrix::identity(n).mul_diag_right(&self.column(from));
        for p in from..to {
            let k = self.word.letters()[p];
            m = m.mul_path_factor_right(k - 1, &entry(p));
            m = m.mul_diag_right(&self.column(p + 1));
        }
        m
    }

    /// Inverse of [`path_product`](Self::path_product).
    pub fn path_product_inverse(&self, from: usize, to: usize) -> NcMatrix {
        self.path_product_inverse_with(from, to, &|p| NcPoly::gen(self.crossing_gen(p)))
    }

    pub fn path_product_inverse_with(&self, from: usize, to: usize, entry: &dyn Fn(usize) -> NcPoly) -> NcMatrix {
        let n = self.strands();
        let inv = |d: Vec<Laurent>| -> Vec<Laurent> { d.iter().map(|x| x.unit_inverse().unwrap()).collect() };
        let mut m = NcMatrix::identity(n).mul_diag_left(&inv(self.column(from)));
        for p in from..to {
            let k = self.word.letters()[p];
            m = m.mul_path_factor_inverse_left(k - 1, &entry(p));
            m = m.mul_diag_left(&inv(self.column(p + 1)));
        }
        m
    }

    /// The full path matrix `P_β`.
    pub fn path_matrix(&self) -> NcMatrix {
        self.path_product(0, self.len())
    }

    /// Path matrix of the satellite box restricted to the cable block,
    /// including base points in the box interior and on its right edge.
    /// Base points off the cable only contribute diagonal entries, which are
    /// dropped.
    pub fn box_matrix(&self) -> Result<NcMatrix> {
        let sat = self.satellite.as_ref().ok_or_else(|| Error::NoSatellite(self.name.clone()))?;
        let full = self.path_product(sat.box_start, sat.box_end);
        let left = self.column(sat.box_start);
        // Remove the left-edge column, which belongs outside the box.
        let inv: Vec<Laurent> = left.iter().map(|x| x.unit_inverse().unwrap()).collect();
        let m = full.mul_diag_left(&inv);
        for i in 0..self.strands() {
            for j in 0..self.strands() {
                let inside = |x: usize| x >= sat.cable_lo && x < sat.cable_lo + sat.cable_len;
                if i != j && !(inside(i) && inside(j)) && !m.get(i, j).is_zero() {
                    return Err(Error::InvalidSpec("box base points outside the cable".into()));
                }
            }
        }
        Ok(m.block(sat.cable_lo, sat.cable_len))
    }

    /// Rotation `σ_{k_{j+1}}⋯σ_{k_r}σ_{k_1}⋯σ_{k_j}` with labels carried along.
    /// The new column 0 is empty and the old end columns merge.
    pub fn rotated(&self, j: usize) -> ClosureSpec {
        let r = self.len();
        if r == 0 {
            return self.clone().without_satellite();
        }
        let mut labels = self.labels[j..].to_vec();
        labels.extend_from_slice(&self.labels[..j]);
        let mut cols: BTreeMap<usize, Vec<Laurent>> = BTreeMap::new();
        for new_col in 1..=r {
            let d = if new_col == r - j {
                mul_diag(&self.column(r), &self.column(0))
            } else if new_col < r - j {
                self.column(j + new_col)
            } else {
                self.column(new_col - (r - j))
            };
            cols.insert(new_col, d);
        }
        ClosureSpec { name: self.name.clone(), word: self.word.rotated(j), labels, basepoints: cells_from_columns(&cols), satellite: None }
    }

    /// Replaces the crossing at `pos` by the base-point pair `−s^{-1}` (lower
    /// strand) and `s` (upper strand), merged into a single column.
    pub fn pinched(&self, pos: usize, s: Var) -> ClosureSpec {
        let r = self.len();
        let k = self.word.letters()[pos];
        let mut sad = vec![Laurent::one(); self.strands()];
        sad[k - 1] = Laurent::signed_var(-1, s, -1);
        sad[k] = Laurent::var(s);
        let mut cols: BTreeMap<usize, Vec<Laurent>> = BTreeMap::new();
        for c in 0..=r {
            if c == pos + 1 {
                continue;
            }
            let new_c = if c > pos { c - 1 } else { c };
            let d = if c == pos { mul_diag(&mul_diag(&self.column(pos), &sad), &self.column(pos + 1)) } else { self.column(c) };
            cols.insert(new_c, d);
        }
        let mut labels = self.labels.clone();
        labels.remove(pos);
        let satellite = self.satellite.as_ref().and_then(|sat| pinch_satellite(sat, pos));
        ClosureSpec { name: self.name.clone(), word: self.word.without(&[pos]), labels, basepoints: cells_from_columns(&cols), satellite }
    }

    /// Same spec with the base-point table replaced.
    pub fn with_basepoints(&self, basepoints: BTreeMap<usize, BTreeMap<usize, Laurent>>) -> Result<ClosureSpec> {
        ClosureSpec::new(&self.name, self.word.clone(), self.labels.clone(), basepoints, self.satellite.clone())
    }

    pub fn with_satellite(&self, satellite: Option<Satellite>) -> Result<ClosureSpec> {
        ClosureSpec::new(&self.name, self.word.clone(), self.labels.clone(), self.basepoints.clone(), satellite)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<ClosureSpec> {
        ClosureSpec::new(&self.name, self.word.clone(), labels, self.basepoints.clone(), self.satellite.clone())
    }
}

pub(crate) fn mul_diag(a: &[Laurent], b: &[Laurent]) -> Vec<Laurent> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

pub(crate) fn cells_from_columns(cols: &BTreeMap<usize, Vec<Laurent>>) -> BTreeMap<usize, BTreeMap<usize, Laurent>> {
    let mut out = BTreeMap::new();
    for (&c, d) in cols {
        let cells: BTreeMap<usize, Laurent> = d.iter().enumerate().filter(|(_, x)| !x.is_one()).map(|(i, x)| (i, x.clone())).collect();
        if !cells.is_empty() {
            out.insert(c, cells);
        }
    }
    out
}

fn pinch_satellite(sat: &Satellite, pos: usize) -> Option<Satellite> {
    if sat.groups.iter().any(|g| g.positions.contains(&pos)) {
        return None;
    }
    let shift = |p: usize| if p > pos { p - 1 } else { p };
    let (box_start, box_end) = if sat.in_box(pos) { (sat.box_start, sat.box_end - 1) } else { (shift(sat.box_start), shift(sat.box_end)) };
    Some(Satellite {
        box_start,
        box_end,
        cable_lo: sat.cable_lo,
        cable_len: sat.cable_len,
        groups: sat.groups.iter().map(|g| CrossingGroup { positions: g.positions.iter().map(|&p| shift(p)).collect(), kind: g.kind }).collect(),
    })
}

/// Zero-based positions of crossings outside the box that involve exactly one
/// cable strand.
fn satellite_crossings(word: &BraidWord, sat: &Satellite) -> Result<Vec<usize>> {
    let threads = word.threads();
    let cable: Vec<usize> = (sat.cable_lo..sat.cable_lo + sat.cable_len).map(|p| threads[sat.box_start][p]).collect();
    let mut out = Vec::new();
    for (p, &k) in word.letters().iter().enumerate() {
        if sat.in_box(p) {
            continue;
        }
        let x = cable.contains(&threads[p][k - 1]);
        let y = cable.contains(&threads[p][k]);
        if x && y {
            return Err(Error::NotAGroup(format!("cable strands cross at position {} outside the box", p + 1)));
        }
        if x || y {
            out.push(p);
        }
    }
    Ok(out)
}

/// Detects the crossing groups of a satellite from strand threads: a strand
/// crossing the cable left to right produces one group, of over type when it
/// moves up through the cable.
pub fn detect_satellite(word: &BraidWord, box_start: usize, box_end: usize, cable_lo: usize, cable_len: usize) -> Result<Satellite> {
    let threads = word.threads();
    let cable: Vec<usize> = (cable_lo..cable_lo + cable_len).map(|p| threads[box_start][p]).collect();
    let mut open: HashMap<usize, (GroupKind, Vec<usize>)> = HashMap::new();
    let mut groups = Vec::new();
    for (p, &k) in word.letters().iter().enumerate() {
        if p >= box_start && p < box_end {
            continue;
        }
        let lo = threads[p][k - 1];
        let hi = threads[p][k];
        let (u, kind) = match (cable.contains(&lo), cable.contains(&hi)) {
            (true, true) => return Err(Error::NotAGroup(format!("cable strands cross at position {} outside the box", p + 1))),
            (false, false) => continue,
            (false, true) => (lo, GroupKind::Over),
            (true, false) => (hi, GroupKind::Under),
        };
        let entry = open.entry(u).or_insert((kind, Vec::new()));
        if entry.0 != kind {
            return Err(Error::NotAGroup(format!("strand reverses direction inside a group at position {}", p + 1)));
        }
        entry.1.push(p);
        if entry.1.len() == cable_len {
            let (kind, mut positions) = open.remove(&u).unwrap();
            positions.sort_by_key(|&q| word.letters()[q]);
            groups.push(CrossingGroup { positions, kind });
        }
    }
    if !open.is_empty() {
        return Err(Error::NotAGroup("a strand crosses the cable only partially".into()));
    }
    Ok(Satellite { box_start, box_end, cable_lo, cable_len, groups })
}

/// `Λ(β, i; γ)`: strand `i` (one-based) of `β` cabled into the strands of
/// `γ`, with `γ` placed at the right end and base points `t1..tM` on the box's
/// right edge. Remaining components get one base point each.
pub fn satellite(beta: &BraidWord, i: usize, gamma: &BraidWord) -> Result<ClosureSpec> {
    let n = beta.strands();
    if i == 0 || i > n {
        return Err(Error::OutOfRange(format!("strand {i} of {n}")));
    }
    let c0 = i - 1;
    if beta.permutation()[c0] != c0 {
        return Err(Error::InvalidSpec(format!("strand {i} is not fixed by the permutation of the pattern braid")));
    }
    let m = gamma.strands();
    let total = n + m - 1;
    let mut letters = Vec::new();
    let mut c = c0;
    // New zero-based position of an old non-cable position.
    let place = |q: usize, c: usize| if q < c { q } else { q + m - 1 };
    for &k in beta.letters() {
        let (lo, hi) = (k - 1, k);
        if lo == c {
            // The cable moves up; the strand above it moves down through it.
            for j in (1..=m).rev() {
                letters.push(c + j);
            }
            c += 1;
        } else if hi == c {
            // The cable moves down; the strand below it moves up through it.
            for j in 0..m {
                letters.push(lo + 1 + j);
            }
            c -= 1;
        } else {
            letters.push(place(lo, c) + 1);
        }
    }
    let box_start = letters.len();
    for &g in gamma.letters() {
        letters.push(c + g);
    }
    let word = BraidWord::new(total, letters)?;
    let r = word.len();
    let sat = detect_satellite(&word, box_start, r, c, m)?;
    let mut col = BTreeMap::new();
    for j in 0..m {
        col.insert(c + j, Laurent::var(Var::new(&format!("t{}", j + 1))));
    }
    let comps = word.components();
    let threads = word.threads();
    let cable_comps: Vec<usize> = (c..c + m).map(|p| comps[threads[r][p]]).collect();
    let mut next = m + 1;
    let mut done = cable_comps.clone();
    for pos in 0..total {
        let comp = comps[threads[r][pos]];
        if !done.contains(&comp) {
            done.push(comp);
            col.insert(pos, Laurent::var(Var::new(&format!("t{next}"))));
            next += 1;
        }
    }
    let mut basepoints = BTreeMap::new();
    basepoints.insert(r, col);
    let labels = (1..=r).map(|i| format!("a{i}")).collect();
    ClosureSpec::new("satellite", word, labels, basepoints, Some(sat))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_from_satellite() {
        let beta = BraidWord::new(2, vec![1; 6]).unwrap();
        let gamma = BraidWord::new(2, vec![1]).unwrap();
        let spec = satellite(&beta, 1, &gamma).unwrap();
        let expect: Vec<usize> = [2, 1, 1, 2].repeat(3).into_iter().chain([1]).collect();
        assert_eq!(spec.word().letters(), &expect[..]);
        let sat = spec.satellite().unwrap();
        assert_eq!(sat.groups.len(), 6);
        assert_eq!(sat.groups[0].kind, GroupKind::Under);
        assert_eq!(sat.groups[1].kind, GroupKind::Over);
    }

    #[test]
    fn trefoil_box_is_whole_word() {
        let beta = BraidWord::new(1, vec![]).unwrap();
        let gamma = BraidWord::new(2, vec![1; 5]).unwrap();
        let spec = satellite(&beta, 1, &gamma).unwrap();
        assert_eq!(spec.word().letters(), &[1, 1, 1, 1, 1]);
        let sat = spec.satellite().unwrap();
        assert_eq!((sat.box_start, sat.box_end), (0, 5));
        assert!(sat.groups.is_empty());
    }

    #[test]
    fn satellite_rejects_moving_strand() {
        let beta = BraidWord::new(2, vec![1]).unwrap();
        let gamma = BraidWord::new(2, vec![1]).unwrap();
        assert!(satellite(&beta, 1, &gamma).is_err());
    }

    #[test]
    fn rotation_preserves_path_matrix_up_to_conjugation() {
        let word = BraidWord::new(3, vec![1, 2, 1, 2, 1, 2]).unwrap();
        let spec = ClosureSpec::standard("x", word).unwrap();
        let j = 2;
        let rot = spec.rotated(j);
        let g = spec.path_product(0, j);
        let ginv = spec.path_product_inverse(0, j);
        assert!((&g * &ginv).is_identity());
        assert_eq!(spec.path_matrix(), &(&g * &rot.path_matrix()) * &ginv);
    }
}
