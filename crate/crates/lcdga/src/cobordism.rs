//! Maps for elementary cobordisms: base-point moves, Reidemeister III,
//! rotation of the closure, saddles and the minimum (unknot) cobordism.

use crate::braid::{contains_half_twist_linear, HALF_TWIST_DEPTH};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::map::DgaMap;
use crate::matrix::NcMatrix;
use crate::nc::NcPoly;
use crate::ring::CoefficientRing;
use crate::spec::ClosureSpec;
use crate::symbol::{Gen, Var};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// Moves the base-point cell at `(col, strand)` one step. Moving right from
/// the last column wraps to column 0 and moving left from column 0 wraps to
/// the last column.
pub fn basepoint_move(spec: &ClosureSpec, col: usize, strand: usize, dir: Direction) -> Result<(ClosureSpec, DgaMap)> {
    let r = spec.len();
    let n = spec.strands();
    if col > r || strand >= n {
        return Err(Error::BadMove(format!("no cell at column {col}, strand {}", strand + 1)));
    }
    let lab = spec.column(col)[strand].clone();
    if lab.is_one() {
        return Err(Error::BadMove(format!("no base point at column {col}, strand {}", strand + 1)));
    }
    let inv = lab.unit_inverse().unwrap();
    let mut cells = spec.basepoints().clone();
    take_cell(&mut cells, col, strand);
    let mut images = HashMap::new();
    let mut conj = vec![Laurent::one(); n];
    let mut conj_inv = vec![Laurent::one(); n];
    let (new_col, new_strand) = match dir {
        Direction::Right if col == r => {
            conj[strand] = inv.clone();
            conj_inv[strand] = lab.clone();
            (0, strand)
        }
        Direction::Left if col == 0 => {
            conj[strand] = lab.clone();
            conj_inv[strand] = inv.clone();
            (r, strand)
        }
        _ => {
            let (p, new_col) = match dir {
                Direction::Right => (col, col + 1),
                Direction::Left => (col - 1, col - 1),
            };
            let k = spec.word().letters()[p];
            let g = spec.crossing_gen(p);
            let new_strand = if strand == k - 1 {
                images.insert(g, NcPoly::gen(g).scale(&lab));
                k
            } else if strand == k {
                images.insert(g, NcPoly::gen(g).scale(&inv));
                k - 1
            } else {
                strand
            };
            (new_col, new_strand)
        }
    };
    put_cell(&mut cells, new_col, new_strand, &lab);
    let target = spec.with_basepoints(cells)?.without_satellite();
    let map = DgaMap::new(spec, &target, images, HashMap::new(), NcMatrix::diagonal(&conj), NcMatrix::diagonal(&conj_inv));
    Ok((target, map))
}

fn take_cell(cells: &mut BTreeMap<usize, BTreeMap<usize, Laurent>>, col: usize, strand: usize) {
    if let Some(c) = cells.get_mut(&col) {
        c.remove(&strand);
        if c.is_empty() {
            cells.remove(&col);
        }
    }
}

fn put_cell(cells: &mut BTreeMap<usize, BTreeMap<usize, Laurent>>, col: usize, strand: usize, lab: &Laurent) {
    let c = cells.entry(col).or_default();
    let v = c.get(&strand).map_or(lab.clone(), |x| x * lab);
    if v.is_one() {
        c.remove(&strand);
    } else {
        c.insert(strand, v);
    }
    if c.is_empty() {
        cells.remove(&col);
    }
}

/// Reidemeister III on the crossings at positions `pos..pos+3`, which must
/// read `σ_iσ_{i+1}σ_i` or `σ_{i+1}σ_iσ_{i+1}` with no base points between
/// them. The outer crossings trade places and the middle one picks up the
/// product of the outer ones.
pub fn riii_move(spec: &ClosureSpec, pos: usize) -> Result<(ClosureSpec, DgaMap)> {
    let r = spec.len();
    if pos + 3 > r {
        return Err(Error::BadMove(format!("no crossing triple at position {}", pos + 1)));
    }
    let l = &spec.word().letters()[pos..pos + 3];
    let forward = if l[0] == l[2] && l[1] == l[0] + 1 {
        true
    } else if l[0] == l[2] && l[0] == l[1] + 1 {
        false
    } else {
        return Err(Error::BadMove(format!("letters {:?} do not form a Reidemeister III triple", l)));
    };
    if !spec.column_is_trivial(pos + 1) || !spec.column_is_trivial(pos + 2) {
        return Err(Error::BadMove("base points inside the Reidemeister III triple".into()));
    }
    let mut letters = spec.word().letters().to_vec();
    let (i, j) = (l[0], l[1]);
    letters[pos] = j;
    letters[pos + 1] = i;
    letters[pos + 2] = j;
    let mut labels = spec.labels().to_vec();
    labels.swap(pos, pos + 2);
    let word = crate::braid::BraidWord::new(spec.strands(), letters)?;
    let target = ClosureSpec::new(spec.name(), word, labels, spec.basepoints().clone(), None)?;
    let g1 = NcPoly::gen(spec.crossing_gen(pos));
    let g2 = spec.crossing_gen(pos + 1);
    let g3 = NcPoly::gen(spec.crossing_gen(pos + 2));
    let img = if forward { &NcPoly::gen(g2) + &(&g3 * &g1) } else { &NcPoly::gen(g2) - &(&g1 * &g3) };
    let mut images = HashMap::new();
    images.insert(g2, img);
    let n = spec.strands();
    let map = DgaMap::new(spec, &target, images, HashMap::new(), NcMatrix::identity(n), NcMatrix::identity(n));
    Ok((target, map))
}

/// Planar isotopy exchanging the crossings at `pos` and `pos+1`, whose
/// letters must differ by at least 2 with no base points between them.
/// Crossings keep their names, so the map fixes every generator.
pub fn commute_move(spec: &ClosureSpec, pos: usize) -> Result<(ClosureSpec, DgaMap)> {
    if pos + 2 > spec.len() {
        return Err(Error::BadMove(format!("no crossing pair at position {}", pos + 1)));
    }
    let (i, j) = (spec.word().letters()[pos], spec.word().letters()[pos + 1]);
    if i.abs_diff(j) < 2 {
        return Err(Error::BadMove(format!("letters {i} and {j} do not commute")));
    }
    if !spec.column_is_trivial(pos + 1) {
        return Err(Error::BadMove("base points between the crossings".into()));
    }
    let mut letters = spec.word().letters().to_vec();
    letters.swap(pos, pos + 1);
    let mut labels = spec.labels().to_vec();
    labels.swap(pos, pos + 1);
    let word = crate::braid::BraidWord::new(spec.strands(), letters)?;
    let target = ClosureSpec::new(spec.name(), word, labels, spec.basepoints().clone(), None)?;
    let n = spec.strands();
    Ok((target.clone(), DgaMap::conjugation(spec, &target, NcMatrix::identity(n), NcMatrix::identity(n))))
}

/// Moves the first `j` crossings to the end. Crossings keep their names and
/// chords are conjugated by the path product of the moved prefix.
pub fn rotate_closure(spec: &ClosureSpec, j: usize) -> Result<(ClosureSpec, DgaMap)> {
    if spec.is_empty() {
        return Err(Error::BadMove("cannot rotate an empty braid".into()));
    }
    let j = j % spec.len();
    let target = spec.rotated(j);
    let g = spec.path_product(0, j);
    let ginv = spec.path_product_inverse(0, j);
    Ok((target.clone(), DgaMap::conjugation(spec, &target, g, ginv)))
}

/// Variable name for the saddle at a crossing: `s9` for `a9`, `s_x` otherwise.
pub fn saddle_variable(label: &str) -> Var {
    match label.strip_prefix('a') {
        Some(rest) if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) => Var::new(&format!("s{rest}")),
        _ => Var::new(&format!("s_{label}")),
    }
}

/// Properness certificate: the open word running from just after the crossing
/// around the closure to just before it contains a half twist. A half twist
/// that only appears by reading across the crossing does not count.
pub fn certify_proper(spec: &ClosureSpec, pos: usize) -> bool {
    let letters = spec.word().letters();
    let rest: Vec<usize> = letters[pos + 1..].iter().chain(&letters[..pos]).copied().collect();
    contains_half_twist_linear(&rest, spec.strands(), HALF_TWIST_DEPTH)
}

/// Options for [`saddle_map_with`].
#[derive(Clone, Debug)]
pub struct SaddleOptions {
    pub check_proper: bool,
    pub verify: bool,
    pub variable: Option<Var>,
}

impl Default for SaddleOptions {
    fn default() -> Self {
        SaddleOptions { check_proper: true, verify: true, variable: None }
    }
}

/// The saddle map at the crossing in position `pos`.
pub fn saddle_map(spec: &ClosureSpec, pos: usize) -> Result<(ClosureSpec, DgaMap)> {
    saddle_map_with(spec, pos, &SaddleOptions::default())
}

/// The two halves of the saddle map on the rotated closure, kept for
/// inspection.
#[derive(Clone, Debug)]
pub struct SaddleParts {
    pub forward: HashMap<Gen, NcPoly>,
    pub backward: HashMap<Gen, NcPoly>,
}

pub fn saddle_map_with(spec: &ClosureSpec, pos: usize, opts: &SaddleOptions) -> Result<(ClosureSpec, DgaMap)> {
    let (target, map, _) = saddle_map_parts(spec, pos, opts)?;
    Ok((target, map))
}

/// Saddle map together with the forward and backward propagation images.
pub fn saddle_map_parts(spec: &ClosureSpec, pos: usize, opts: &SaddleOptions) -> Result<(ClosureSpec, DgaMap, SaddleParts)> {
    if pos >= spec.len() {
        return Err(Error::OutOfRange(format!("crossing position {} of {}", pos + 1, spec.len())));
    }
    let label = spec.label(pos).to_string();
    if opts.check_proper && !certify_proper(spec, pos) {
        return Err(Error::NotProper(label));
    }
    let s = opts.variable.unwrap_or_else(|| saddle_variable(&label));
    if spec.variables().contains(&s) {
        return Err(Error::InvalidSpec(format!("saddle variable {} already in use", s.name())));
    }
    let (rot, to_rot) = rotate_closure(spec, pos)?;
    let (rot_minus, front, parts) = saddle_front(&rot, s)?;
    let target = spec.pinched(pos, s);
    // Back from the pinched rotated closure: conjugate by the inverse prefix.
    // The prefix shares its names and columns with the source.
    let xl_inv = spec.path_product_inverse(0, pos);
    let xl = spec.path_product(0, pos);
    let back = DgaMap::conjugation(&rot_minus, &target, xl_inv, xl);
    let map = to_rot.then(&front)?.then(&back)?;
    if opts.verify {
        map.verify()?;
    }
    Ok((target, map, parts))
}

/// Saddle at the first crossing of a closure whose column 0 is empty.
fn saddle_front(spec: &ClosureSpec, s: Var) -> Result<(ClosureSpec, DgaMap, SaddleParts)> {
    if !spec.column_is_trivial(0) {
        return Err(Error::Internal("front saddle needs an empty first column".into()));
    }
    let r = spec.len();
    let n = spec.strands();
    let letters = spec.word().letters();
    let k = letters[0];
    let sv = Laurent::var(s);
    let sinv = Laurent::signed_var(1, s, -1);
    let inv = |d: &[Laurent]| -> Vec<Laurent> { d.iter().map(|x| x.unit_inverse().unwrap()).collect() };

    // T← = 1 + s^{-1} E_{k,k+1}, T→ = 1 + s^{-1} E_{k+1,k}.
    let mut t_left = NcMatrix::identity(n);
    t_left.set(k - 1, k, NcPoly::scalar(sinv.clone()));
    let mut t_left_inv = NcMatrix::identity(n);
    t_left_inv.set(k - 1, k, NcPoly::scalar(-&sinv));
    let mut t_right = NcMatrix::identity(n);
    t_right.set(k, k - 1, NcPoly::scalar(sinv.clone()));

    // Forward sweep, left to right.
    let mut forward: HashMap<Gen, NcPoly> = HashMap::new();
    let d1 = spec.column(1);
    let mut t = t_right.mul_diag_left(&inv(&d1)).mul_diag_right(&d1);
    for (p, &kp) in letters.iter().enumerate().take(r).skip(1) {
        let a = NcPoly::gen(spec.crossing_gen(p));
        let x = t.get(kp, kp - 1).clone();
        let ax = &a + &x;
        t = t.mul_path_factor_right(kp - 1, &a).mul_path_factor_inverse_left(kp - 1, &ax);
        let d = spec.column(p + 1);
        t = t.mul_diag_left(&inv(&d)).mul_diag_right(&d);
        let img = &a - &x.substitute(&forward);
        forward.insert(spec.crossing_gen(p), img);
    }
    if !t.is_identity() {
        return Err(Error::Internal(format!("forward sweep leaves {}", t.pretty())));
    }

    // Backward sweep, right to left.
    let mut backward: HashMap<Gen, NcPoly> = HashMap::new();
    let dr = spec.column(r);
    let mut u = t_left.mul_diag_left(&dr).mul_diag_right(&inv(&dr));
    for p in (1..r).rev() {
        let kp = letters[p];
        let a = NcPoly::gen(spec.crossing_gen(p));
        let y = u.get(kp - 1, kp).clone();
        let ay = &a + &y;
        u = u.mul_path_factor_inverse_right(kp - 1, &ay).mul_path_factor_left(kp - 1, &a);
        if p > 1 {
            let d = spec.column(p);
            u = u.mul_diag_left(&d).mul_diag_right(&inv(&d));
        }
        let img = &a - &y.substitute(&backward);
        backward.insert(spec.crossing_gen(p), img);
    }
    if !u.is_identity() {
        return Err(Error::Internal(format!("backward sweep leaves {}", u.pretty())));
    }

    let mut images = HashMap::new();
    images.insert(spec.crossing_gen(0), NcPoly::scalar(sv));
    for p in 1..r {
        let g = spec.crossing_gen(p);
        images.insert(g, forward[&g].substitute(&backward));
    }
    let target = spec.pinched(0, s);
    let map = DgaMap::new(spec, &target, images, HashMap::new(), t_left, t_left_inv);
    Ok((target, map, SaddleParts { forward, backward }))
}

/// Augmentation of a closure into a quotient ring; degree-1 chords map to 0.
#[derive(Clone, Debug)]
pub struct Augmentation {
    pub spec: ClosureSpec,
    pub ring: CoefficientRing,
    pub values: HashMap<Gen, Laurent>,
}

impl Augmentation {
    pub fn value(&self, name: &str) -> Result<Laurent> {
        if let Some(v) = self.values.get(&Gen::new(name)) {
            return Ok(v.clone());
        }
        if crate::map::parse_chord(name).is_some() {
            return Ok(Laurent::zero());
        }
        if self.ring.variables().iter().any(|v| v.name() == name) {
            return Ok(self.ring.reduce(&Laurent::var(Var::new(name))));
        }
        Err(Error::UnknownGenerator(name.to_string()))
    }

    /// Composite with an automorphism of the free variables of the ring.
    pub fn twisted(&self, sub: &HashMap<Var, Laurent>) -> Augmentation {
        let values = self.values.iter().map(|(g, v)| (*g, v.substitute(sub))).collect();
        Augmentation { spec: self.spec.clone(), ring: self.ring.twisted(sub), values }
    }

    /// Crossing values in position order.
    pub fn ordered_values(&self) -> Vec<(Gen, Laurent)> {
        self.spec.crossing_gens().into_iter().map(|g| (g, self.values[&g].clone())).collect()
    }

    /// `ε(1 + P_β)` in the quotient ring; zero exactly when `ε∘∂ = 0`.
    pub fn applied_differential(&self) -> NcMatrix {
        let spec = &self.spec;
        let entry = |p: usize| NcPoly::scalar(self.values[&spec.crossing_gen(p)].clone());
        let m = spec.path_product_with(0, spec.len(), &entry);
        let m = m.map(|x| NcPoly::scalar(self.ring.reduce(&x.constant())));
        m.add(&NcMatrix::identity(spec.strands()))
    }

    pub fn annihilates_differential(&self) -> bool {
        self.applied_differential().entries().all(|(_, _, p)| p.is_zero())
    }
}

/// Relations `∏ labels = -1`, one per component.
pub fn unknot_relations(spec: &ClosureSpec) -> Result<Vec<Laurent>> {
    if spec.word().permutation().iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::NotUnlink("the permutation is not the identity".into()));
    }
    let dga = crate::dga::ClosureDga::build(spec);
    for info in dga.generators().iter().filter(|g| g.degree == 0) {
        if info.r == info.c {
            return Err(Error::NotUnlink(format!("crossing {} joins a component to itself", info.gen.name())));
        }
    }
    let mut rels = Vec::new();
    for labs in spec.basepoints_by_component() {
        rels.push(labs.iter().fold(Laurent::one(), |acc, l| &acc * l));
    }
    Ok(rels)
}

/// Eliminable variables: t-class first, then the remaining variables in
/// reverse declaration order.
pub fn elimination_order(vars: &[Var]) -> Vec<Var> {
    let mut out: Vec<Var> = vars.iter().copied().filter(|v| v.name().starts_with('t')).collect();
    out.extend(vars.iter().rev().copied().filter(|v| !v.name().starts_with('t')));
    out
}

/// The augmentation of an unlink closure induced by minimum cobordisms.
pub fn unknot_augmentation(spec: &ClosureSpec) -> Result<Augmentation> {
    let rels = unknot_relations(spec)?;
    let vars = spec.variables();
    let ring = CoefficientRing::new(vars.clone()).solve_unit_relations(&rels, &elimination_order(&vars))?;
    let values = spec.crossing_gens().into_iter().map(|g| (g, Laurent::zero())).collect();
    Ok(Augmentation { spec: spec.clone(), ring, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn spec(n: usize, l: &[usize]) -> ClosureSpec {
        ClosureSpec::standard("t", BraidWord::new(n, l.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn basepoint_moves_are_chain_maps() {
        let s = spec(2, &[1, 1, 1]);
        let (s1, m1) = basepoint_move(&s, 3, 0, Direction::Left).unwrap();
        m1.verify().unwrap();
        let (_, m2) = basepoint_move(&s1, 2, 1, Direction::Right).unwrap();
        m2.verify().unwrap();
        assert!(m1.then(&m2).unwrap().is_identity_in_degree_zero());
        let (_, w) = basepoint_move(&s, 3, 0, Direction::Right).unwrap();
        w.verify().unwrap();
        assert!(basepoint_move(&s, 1, 0, Direction::Right).is_err());
    }

    #[test]
    fn loop_around_a_knot_is_identity() {
        let mut cur = spec(2, &[1, 1, 1]);
        let mut total = DgaMap::identity(&cur);
        let (mut col, mut strand) = (3usize, 0usize);
        for _ in 0..8 {
            let (next, m) = basepoint_move(&cur, col, strand, Direction::Right).unwrap();
            total = total.then(&m).unwrap();
            if col == 3 {
                col = 0;
            } else {
                let k = cur.word().letters()[col];
                if strand == k - 1 {
                    strand = k;
                } else if strand == k {
                    strand = k - 1;
                }
                col += 1;
            }
            cur = next;
        }
        assert_eq!((col, strand), (3, 0));
        total.verify().unwrap();
        assert!(total.is_identity());
    }

    #[test]
    fn riii_both_directions() {
        let s = spec(3, &[1, 2, 1, 2, 1, 2]);
        let (t, m) = riii_move(&s, 0).unwrap();
        m.verify().unwrap();
        assert_eq!(t.word().letters(), &[2, 1, 2, 2, 1, 2]);
        let a2 = Gen::new("a2");
        assert_eq!(m.images()[&a2], &NcPoly::gen(a2) + &(&NcPoly::gen(Gen::new("a3")) * &NcPoly::gen(Gen::new("a1"))));
        let (_, back) = riii_move(&t, 0).unwrap();
        back.verify().unwrap();
        assert!(m.then(&back).unwrap().is_identity());
        assert!(riii_move(&s, 4).is_err());
    }

    #[test]
    fn rotation_is_chain_map() {
        let s = spec(3, &[1, 2, 1, 2, 1, 2, 1]);
        for j in 0..7 {
            let (_, m) = rotate_closure(&s, j).unwrap();
            m.verify().unwrap();
        }
    }

    #[test]
    fn saddle_on_trefoil() {
        let s = spec(2, &[1, 1, 1, 1, 1]);
        for pos in 0..5 {
            let (t, m) = saddle_map(&s, pos).unwrap();
            m.verify().unwrap();
            assert_eq!(t.len(), 4);
        }
    }

    #[test]
    fn unknot_relation_signs() {
        let u = ClosureSpec::standard("u", BraidWord::new(1, vec![]).unwrap()).unwrap();
        let aug = unknot_augmentation(&u).unwrap();
        assert_eq!(aug.value("t1").unwrap(), Laurent::constant(-1));
        let mut cells = BTreeMap::new();
        cells.insert(0, [(0, Laurent::constant(-1))].into_iter().collect());
        let neg = u.with_basepoints(cells).unwrap();
        assert!(unknot_augmentation(&neg).is_ok());
        let mut cells = BTreeMap::new();
        cells.insert(0, [(0, Laurent::one())].into_iter().collect());
        assert!(matches!(unknot_augmentation(&neg.with_basepoints(cells).unwrap()), Err(Error::Inconsistent(_))));
        let mut cells = BTreeMap::new();
        cells.insert(0, [(0, Laurent::var(Var::new("cb_x")).pow(2))].into_iter().collect());
        assert!(unknot_augmentation(&neg.with_basepoints(cells).unwrap()).is_err());
    }
}
