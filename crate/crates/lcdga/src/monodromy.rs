//! Loop monodromies: the satellite-box loop ϑ, the Kálmán loop δ on torus
//! links, iteration and order detection.

use crate::cobordism::{basepoint_move, commute_move, riii_move, rotate_closure, Direction};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::map::DgaMap;
use crate::matrix::NcMatrix;
use crate::nc::NcPoly;
use crate::spec::{ClosureSpec, GroupKind};
use crate::symbol::{Gen, Var};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Path matrix `P_γ` of the satellite box and its inverse, both `M × M`.
pub fn box_matrices(spec: &ClosureSpec) -> Result<(NcMatrix, NcMatrix)> {
    let sat = spec.satellite().ok_or_else(|| Error::NoSatellite(spec.name().to_string()))?;
    let p = spec.box_matrix()?;
    let left = spec.column(sat.box_start);
    let inv = spec.path_product_inverse(sat.box_start, sat.box_end).mul_diag_right(&left);
    Ok((p, inv.block(sat.cable_lo, sat.cable_len)))
}

/// The ϑ-loop map: chords conjugated by the block extension of `P_γ`,
/// over-type groups sent to `P_γ h`, under-type groups to `h P_γ^{-1}` (row
/// vector), all other crossings fixed.
pub fn theta_map(spec: &ClosureSpec) -> Result<DgaMap> {
    let (p, pinv) = box_matrices(spec)?;
    group_action(spec, &p, &pinv)
}

/// `ϑ^{-1}`: over-type groups sent to `P_γ^{-1} h`, under-type groups to
/// `h P_γ`, conjugator and its inverse exchanged.
pub fn theta_inverse(spec: &ClosureSpec) -> Result<DgaMap> {
    let (p, pinv) = box_matrices(spec)?;
    group_action(spec, &pinv, &p)
}

/// Over-type groups sent to `a h`, under-type groups to `h b` with `b = a^{-1}`,
/// chords conjugated by the block extension of `a`.
fn group_action(spec: &ClosureSpec, a: &NcMatrix, b: &NcMatrix) -> Result<DgaMap> {
    let sat = spec.satellite().ok_or_else(|| Error::NoSatellite(spec.name().to_string()))?;
    let mut images = HashMap::new();
    for group in &sat.groups {
        let h: Vec<NcPoly> = group.positions.iter().map(|&q| NcPoly::gen(spec.crossing_gen(q))).collect();
        for (i, &q) in group.positions.iter().enumerate() {
            let mut img = NcPoly::zero();
            for (j, hj) in h.iter().enumerate() {
                img += &match group.kind {
                    GroupKind::Over => a.get(i, j) * hj,
                    GroupKind::Under => hj * b.get(j, i),
                };
            }
            images.insert(spec.crossing_gen(q), img);
        }
    }
    let n = spec.strands();
    let g = NcMatrix::embed(a, n, sat.cable_lo);
    let ginv = NcMatrix::embed(b, n, sat.cable_lo);
    Ok(DgaMap::new(spec, spec, images, HashMap::new(), g, ginv))
}

/// Generators of the satellite groups, in group order.
pub fn group_gens(spec: &ClosureSpec) -> Vec<Gen> {
    spec.satellite().map(|sat| sat.groups.iter().flat_map(|g| g.positions.iter().map(|&q| spec.crossing_gen(q))).collect()).unwrap_or_default()
}

/// One elementary move of a factorized loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Commute(usize),
    Riii(usize),
    Rotate(usize),
    Basepoint { col: usize, strand: usize, dir: Direction },
    Relabel,
}

/// A map from a closure to itself, with the elementary moves realizing it
/// when they are known.
#[derive(Clone, Debug)]
pub struct LoopMap {
    pub map: DgaMap,
    pub factorization: Option<Vec<Move>>,
}

struct Walk {
    cur: ClosureSpec,
    map: DgaMap,
    moves: Vec<Move>,
}

impl Walk {
    fn step(&mut self, mv: Move, (next, m): (ClosureSpec, DgaMap)) -> Result<()> {
        self.map = self.map.then(&m)?;
        self.cur = next;
        self.moves.push(mv);
        Ok(())
    }

    fn commute(&mut self, pos: usize) -> Result<()> {
        let r = commute_move(&self.cur, pos)?;
        self.step(Move::Commute(pos), r)
    }

    fn riii(&mut self, pos: usize) -> Result<()> {
        let r = riii_move(&self.cur, pos)?;
        self.step(Move::Riii(pos), r)
    }

    /// Moves the crossing named `name` left by one Reidemeister III move,
    /// first commuting other crossings out of the way. Positions below
    /// `floor` are not touched.
    fn advance(&mut self, name: &str, floor: usize) -> Result<()> {
        let s = self.cur.position(name)?;
        let letters = self.cur.word().letters().to_vec();
        let (b, x) = (letters[s], letters[s - 1]);
        if b.abs_diff(x) >= 2 {
            return self.commute(s - 1);
        }
        if b == x || s < floor + 2 {
            return Err(Error::BadMove(format!("crossing {name} cannot pass position {}", s)));
        }
        // Find a copy of `b` to the left that slides up next to `x`.
        let mut j = s - 2;
        while letters[j] != b {
            if j == floor || letters[j].abs_diff(b) < 2 {
                return Err(Error::BadMove(format!("crossing {name} cannot pass position {}", s)));
            }
            j -= 1;
        }
        for p in j..s - 2 {
            self.commute(p)?;
        }
        self.riii(s - 2)
    }

    /// Moves the base point at `(col, strand)` one column and returns its
    /// new strand.
    fn slide(&mut self, col: usize, strand: usize, dir: Direction) -> Result<usize> {
        let p = match dir {
            Direction::Left => col - 1,
            Direction::Right => col,
        };
        let k = self.cur.word().letters()[p];
        let moved = basepoint_move(&self.cur, col, strand, dir)?;
        self.step(Move::Basepoint { col, strand, dir }, moved)?;
        Ok(if strand + 1 == k {
            k
        } else if strand == k {
            k - 1
        } else {
            strand
        })
    }

    /// Brings the word back to `target` letter by letter using far
    /// commutations only.
    fn reorder(&mut self, target: &[usize]) -> Result<()> {
        for (p, &want) in target.iter().enumerate() {
            let letters = self.cur.word().letters().to_vec();
            let q = (p..letters.len())
                .find(|&q| letters[q] == want)
                .filter(|&q| letters[p..q].iter().all(|&x| x.abs_diff(want) >= 2))
                .ok_or_else(|| Error::BadMove("word is not a reordering by far commutations".into()))?;
            for k in (p..q).rev() {
                self.commute(k)?;
            }
        }
        Ok(())
    }
}

/// The ϑ-loop as a composite of elementary moves: each box crossing is
/// pushed left around the closure through the satellite groups by
/// Reidemeister III and far commutations, the box is rotated back to the
/// right end, the base points slide back across it, and crossings are
/// renamed positionally. The box must sit at the right end of the word
/// with base points only after it.
pub fn theta_factorized(spec: &ClosureSpec) -> Result<LoopMap> {
    let sat = spec.satellite().ok_or_else(|| Error::NoSatellite(spec.name().to_string()))?.clone();
    let r = spec.len();
    if sat.box_end != r || spec.basepoints().keys().any(|&c| c != r) {
        return Err(Error::InvalidSpec("factorized ϑ expects the box at the right end followed by the base points".into()));
    }
    let names: Vec<String> = (sat.box_start..r).map(|q| spec.label(q).to_string()).collect();
    let mut walk = Walk { cur: spec.clone().without_satellite(), map: DgaMap::identity(spec), moves: Vec::new() };
    let budget = 4 * r * r + 16;
    for (idx, name) in names.iter().enumerate() {
        while walk.cur.position(name)? > idx {
            if walk.moves.len() > budget {
                return Err(Error::Internal("box push did not terminate".into()));
            }
            walk.advance(name, idx)?;
        }
    }
    // The base points on the cable travel with the box, the others stay.
    let len = names.len();
    let cable = sat.cable_lo..sat.cable_lo + sat.cable_len;
    let cells: Vec<usize> = spec.basepoints().get(&r).map(|x| x.keys().copied().collect()).unwrap_or_default();
    for &start in cells.iter().filter(|s| cable.contains(s)) {
        let mut strand = start;
        for c in (len + 1..=r).rev() {
            strand = walk.slide(c, strand, Direction::Left)?;
        }
    }
    let rotated = rotate_closure(&walk.cur, len)?;
    walk.step(Move::Rotate(len), rotated)?;
    for &strand in cells.iter().filter(|s| !cable.contains(s)) {
        for c in r - len..r {
            walk.slide(c, strand, Direction::Right)?;
        }
    }
    walk.reorder(spec.word().letters())?;
    let back = relabel(&walk.cur, spec)?;
    walk.map = walk.map.then(&back)?;
    walk.moves.push(Move::Relabel);
    Ok(LoopMap { map: walk.map, factorization: Some(walk.moves) })
}

/// Inverse of a map sending every crossing to a unit multiple of a crossing
/// and with a ring map permuting signed monomials.
pub fn invert_monomial_map(map: &DgaMap) -> Result<DgaMap> {
    let mut ring_inv: HashMap<Var, Laurent> = HashMap::new();
    for (v, x) in map.ring_map() {
        let (sign, mono) = x.as_unit().ok_or_else(|| Error::Internal("ring map is not monomial".into()))?;
        match mono.pairs() {
            [(w, e)] if e.abs() == 1 => {
                let back = Laurent::signed_var(sign, *v, *e);
                ring_inv.insert(*w, back);
            }
            _ => return Err(Error::Internal("ring map is not a signed permutation".into())),
        }
    }
    let scalar_inv = |x: &Laurent| -> Laurent { x.substitute(&ring_inv) };
    let mut images = HashMap::new();
    for (g, p) in map.images() {
        let (word, coeff) = match p.terms().collect::<Vec<_>>()[..] {
            [(w, c)] if w.len() == 1 => (w[0], c.clone()),
            _ => return Err(Error::Internal(format!("image of {} is not a unit multiple of a crossing", g.name()))),
        };
        let u = scalar_inv(&coeff).unit_inverse().ok_or_else(|| Error::Internal(format!("image of {} has a non-unit coefficient", g.name())))?;
        images.insert(word, NcPoly::gen(*g).scale(&u));
    }
    let partial = DgaMap::new(map.target(), map.source(), images.clone(), ring_inv.clone(), NcMatrix::identity(1), NcMatrix::identity(1));
    let (g, ginv) = map.conjugator();
    let conj = partial.apply_matrix(ginv)?;
    let conj_inv = partial.apply_matrix(g)?;
    Ok(DgaMap::new(map.target(), map.source(), images, ring_inv, conj, conj_inv))
}

/// Renames crossings and base-point variables of `from` positionally onto
/// `to`, which must have the same word and base-point cells.
fn relabel(from: &ClosureSpec, to: &ClosureSpec) -> Result<DgaMap> {
    if from.word() != to.word() {
        return Err(Error::Internal("relabel between different words".into()));
    }
    let mut images = HashMap::new();
    for p in 0..from.len() {
        images.insert(from.crossing_gen(p), NcPoly::gen(to.crossing_gen(p)));
    }
    let mut ring = HashMap::new();
    for col in 0..=from.len() {
        for (a, b) in from.column(col).iter().zip(to.column(col)) {
            if a.is_one() && b.is_one() {
                continue;
            }
            let (sa, ma) = a.as_unit().ok_or_else(|| Error::Internal("non-unit label".into()))?;
            let (sb, mb) = b.as_unit().ok_or_else(|| Error::Internal("non-unit label".into()))?;
            match (ma.pairs(), sa == sb) {
                ([(v, 1)], true) => {
                    ring.insert(*v, Laurent::term(BigInt::one(), mb));
                }
                _ => return Err(Error::Internal("base points do not correspond".into())),
            }
        }
    }
    let n = from.strands();
    Ok(DgaMap::new(from, to, images, ring, NcMatrix::identity(n), NcMatrix::identity(n)))
}

/// Geometric Kálmán move: the first `p-1` crossings travel around the closure
/// to the right end, then the base points slide left back to their column.
pub fn kalman_forward(spec: &ClosureSpec, moved: usize) -> Result<DgaMap> {
    let r = spec.len();
    let (mut cur, mut total) = rotate_closure(spec, moved)?;
    let col = r - moved;
    let cells: Vec<usize> = cur.basepoints().get(&col).map(|c| c.keys().copied().collect()).unwrap_or_default();
    if cur.basepoints().keys().any(|&c| c != col) {
        return Err(Error::InvalidSpec("Kálmán move expects a single base-point column".into()));
    }
    // Slide each base point left to column 0 and wrap to the right end.
    let threads = cur.word().threads();
    for start in cells {
        let thread = threads[col][start];
        for c in (1..=col).rev() {
            let strand = threads[c].iter().position(|&x| x == thread).unwrap();
            let (next, m) = basepoint_move(&cur, c, strand, Direction::Left)?;
            total = total.then(&m)?;
            cur = next;
        }
        let strand = threads[0].iter().position(|&x| x == thread).unwrap();
        let (next, m) = basepoint_move(&cur, 0, strand, Direction::Left)?;
        total = total.then(&m)?;
        cur = next;
    }
    let back = relabel(&cur, spec)?;
    total.then(&back)
}

/// The Kálmán loop `δ` on `T(p, q)` in the direction of the DGA map of the
/// cobordism (end to start), matching `a_i ↦ t^{±1} a_{i+1} t^{∓1}`.
pub fn kalman_map(p: usize, q: usize) -> Result<DgaMap> {
    let spec = crate::presets::torus(p, q)?;
    invert_monomial_map(&kalman_forward(&spec, p - 1)?)
}

/// `k`-fold composite; `k = 0` is the identity.
pub fn iterate(map: &DgaMap, k: usize) -> Result<DgaMap> {
    let mut out = DgaMap::identity(map.source());
    for _ in 0..k {
        out = out.then(map)?;
    }
    Ok(out)
}

const SHADOW_PRIME: u64 = (1 << 61) - 1;

fn mod_pow(base: u64, e: i64) -> u64 {
    let p = BigInt::from(SHADOW_PRIME);
    let b = BigInt::from(base);
    let r = if e >= 0 { b.modpow(&BigInt::from(e), &p) } else { b.modpow(&BigInt::from(SHADOW_PRIME - 2), &p).modpow(&BigInt::from(-e), &p) };
    r.to_u64().unwrap()
}

fn shadow_laurent(x: &Laurent, point: &HashMap<Var, u64>) -> u64 {
    let p = BigInt::from(SHADOW_PRIME);
    let mut acc = BigInt::zero();
    for (m, c) in x.terms() {
        let mut t = c.mod_floor(&p);
        for (v, e) in m.pairs() {
            t = t * BigInt::from(mod_pow(point[v], *e as i64)) % &p;
        }
        acc = (acc + t) % &p;
    }
    acc.to_u64().unwrap()
}

fn shadow_poly(x: &NcPoly, vars: &HashMap<Var, u64>, gens: &HashMap<Gen, u64>) -> u64 {
    let p = BigInt::from(SHADOW_PRIME);
    let mut acc = BigInt::zero();
    for (w, c) in x.terms() {
        let mut t = BigInt::from(shadow_laurent(c, vars));
        for g in w {
            t = t * BigInt::from(gens[g]) % &p;
        }
        acc = (acc + t) % &p;
    }
    acc.to_u64().unwrap()
}

/// Least `k ≤ max_k` with `map^k` the identity on crossings and the ring.
/// Candidates are screened in a commutative shadow over a prime field and
/// confirmed symbolically.
pub fn order(map: &DgaMap, max_k: usize) -> Result<Option<usize>> {
    let spec = map.source();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut vars: HashMap<Var, u64> = HashMap::new();
    for v in spec.variables().into_iter().chain(map.ring_map().keys().copied()) {
        vars.entry(v).or_insert_with(|| rng.gen_range(2..SHADOW_PRIME));
    }
    for x in map.ring_map().values() {
        for v in x.variables() {
            vars.entry(v).or_insert_with(|| rng.gen_range(2..SHADOW_PRIME));
        }
    }
    let start_gens: HashMap<Gen, u64> = spec.crossing_gens().into_iter().map(|g| (g, rng.gen_range(2..SHADOW_PRIME))).collect();
    let mut gens = start_gens.clone();
    let mut cur_vars = vars.clone();
    for k in 1..=max_k {
        let next_gens: HashMap<Gen, u64> = map.images().iter().map(|(g, p)| (*g, shadow_poly(p, &cur_vars, &gens))).collect();
        let next_vars: HashMap<Var, u64> = vars
            .keys()
            .map(|v| {
                let x = map.ring_map().get(v).cloned().unwrap_or_else(|| Laurent::var(*v));
                (*v, shadow_laurent(&x, &cur_vars))
            })
            .collect();
        gens = next_gens;
        cur_vars = next_vars;
        if gens == start_gens && cur_vars == vars && iterate(map, k)?.is_identity_in_degree_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Commutative action of ϑ on an over-type group: `ε(ϑ^k(h)) = ε(P_γ)^k ε(h)`.
pub fn commutative_box_matrix(spec: &ClosureSpec, values: &HashMap<Gen, Laurent>, reduce: &dyn Fn(&Laurent) -> Laurent) -> Result<Vec<Vec<Laurent>>> {
    let (p, _) = box_matrices(spec)?;
    let m = p.rows();
    let mut out = vec![vec![Laurent::zero(); m]; m];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = reduce(&p.get(i, j).evaluate(values)?);
        }
    }
    Ok(out)
}

/// Sign of an integer as ±1 (0 for zero).
pub fn signum(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn trefoil_delta_matches_formula() {
        let d = kalman_map(2, 3).unwrap();
        d.verify().unwrap();
        let t1 = Laurent::var(Var::new("t1"));
        let t2 = Laurent::var(Var::new("t2"));
        let a = |i: usize| NcPoly::gen(Gen::new(&format!("a{i}")));
        let t12 = &t1 * &t2.unit_inverse().unwrap();
        let t21 = t12.unit_inverse().unwrap();
        assert_eq!(d.images()[&Gen::new("a1")], a(2).scale(&t12));
        assert_eq!(d.images()[&Gen::new("a2")], a(3).scale(&t21));
        assert_eq!(d.images()[&Gen::new("a3")], a(4).scale(&t12));
        assert_eq!(d.images()[&Gen::new("a4")], a(5).scale(&t21));
        assert_eq!(d.images()[&Gen::new("a5")], a(1));
        assert_eq!(order(&d, 10).unwrap(), Some(5));
    }

    #[test]
    fn theta_is_chain_map() {
        for spec in [presets::d_n(4).unwrap(), presets::lambda_n(1).unwrap(), presets::torus(2, 3).unwrap()] {
            let th = theta_map(&spec).unwrap();
            th.verify().unwrap();
            let inv = theta_inverse(&spec).unwrap();
            inv.verify().unwrap();
            assert!(th.then(&inv).unwrap().is_identity());
            assert!(inv.then(&th).unwrap().is_identity());
        }
    }

    #[test]
    fn d4_theta_has_no_small_order() {
        let th = theta_map(&presets::d_n(4).unwrap()).unwrap();
        assert_eq!(order(&th, 50).unwrap(), None);
    }

    #[test]
    fn factorized_theta_matches_on_groups() {
        for spec in [presets::d_n(4).unwrap(), presets::lambda_n(1).unwrap()] {
            let lp = theta_factorized(&spec).unwrap();
            lp.map.verify().unwrap();
            let th = theta_map(&spec).unwrap();
            for g in group_gens(&spec) {
                assert_eq!(lp.map.image(g).unwrap(), th.image(g).unwrap(), "{}", g.name());
            }
            assert!(lp.map.agrees_in_degree_zero(&th));
            assert!(lp.factorization.unwrap().iter().any(|m| matches!(m, Move::Riii(_))));
        }
    }
}
