//! The growth invariant `E(k, a)`, positivity certificates for loop orbits of
//! filling augmentations, and the stabilization transfer identity.

use crate::cobordism::{saddle_map, Augmentation};
use crate::error::{Error, Result};
use crate::fillings::{filling_augmentation, sign_assignment};
use crate::laurent::Laurent;
use crate::map::DgaMap;
use crate::monodromy::{box_matrices, iterate, theta_map};
use crate::nc::NcPoly;
use crate::ring::UnitRelation;
use crate::spec::{ClosureSpec, GroupKind};
use crate::symbol::{Gen, Var};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use std::collections::HashMap;

/// Square matrix of commutative Laurent polynomials.
pub type LMatrix = Vec<Vec<Laurent>>;

/// Square integer matrix.
pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn lmat_mul(a: &LMatrix, b: &LMatrix) -> LMatrix {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Laurent::zero();
                    for (k, row) in b.iter().enumerate() {
                        acc = &acc + &(&a[i][k] * &row[j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn lmat_vec(a: &LMatrix, v: &[Laurent]) -> Vec<Laurent> {
    a.iter().map(|row| row.iter().zip(v).fold(Laurent::zero(), |acc, (x, y)| &acc + &(x * y))).collect()
}

pub fn zmat_mul(a: &ZMatrix, b: &ZMatrix) -> ZMatrix {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

pub fn zmat_pow(a: &ZMatrix, k: usize) -> ZMatrix {
    let n = a.len();
    let mut out: ZMatrix = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect()).collect();
    for _ in 0..k {
        out = zmat_mul(&out, a);
    }
    out
}

fn zmat_vec(a: &ZMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Commutative action of the ϑ-loop on one satellite group: the augmented
/// group vector evolves as `v ↦ A v`.
#[derive(Clone, Debug)]
pub struct OrbitData {
    /// Group generators in the requested order.
    pub generators: Vec<Gen>,
    pub kind: GroupKind,
    /// `A = ε(P_γ)` for over-type groups, `ε(P_γ^{-1})ᵀ` for under-type ones,
    /// in the requested order.
    pub matrix: LMatrix,
    /// `ε` of the generators.
    pub start: Vec<Laurent>,
}

/// Orbit data of `aug` for the satellite group made of `generators`.
pub fn orbit_data(aug: &Augmentation, generators: &[&str]) -> Result<OrbitData> {
    let spec = &aug.spec;
    let sat = spec.satellite().ok_or_else(|| Error::NoSatellite(spec.name().to_string()))?;
    let gens: Vec<Gen> = generators.iter().map(|g| Gen::new(g)).collect();
    let group = sat
        .groups
        .iter()
        .find(|g| {
            let names: Vec<Gen> = g.positions.iter().map(|&p| spec.crossing_gen(p)).collect();
            names.len() == gens.len() && gens.iter().all(|x| names.contains(x))
        })
        .ok_or_else(|| Error::NotAGroup(generators.join(",")))?;
    let order: Vec<usize> = gens.iter().map(|g| group.positions.iter().position(|&p| spec.crossing_gen(p) == *g).unwrap()).collect();
    let (p, pinv) = box_matrices(spec)?;
    let ring = &aug.ring;
    let eps = |x: &NcPoly| -> Result<Laurent> { Ok(ring.reduce(&x.map_coefficients(|c| ring.reduce(c)).evaluate(&aug.values)?)) };
    let m = order.len();
    let mut matrix = vec![vec![Laurent::zero(); m]; m];
    for (i, &gi) in order.iter().enumerate() {
        for (j, &gj) in order.iter().enumerate() {
            matrix[i][j] = match group.kind {
                GroupKind::Over => eps(p.get(gi, gj))?,
                GroupKind::Under => eps(pinv.get(gj, gi))?,
            };
        }
    }
    let start = gens.iter().map(|g| aug.value(&g.name())).collect::<Result<Vec<_>>>()?;
    Ok(OrbitData { generators: gens, kind: group.kind, matrix, start })
}

impl OrbitData {
    /// Symbolic values `ε(ϑ^k(a))` for `k = 0..=k_max`, one vector per `k`.
    pub fn values(&self, aug: &Augmentation, k_max: usize) -> Vec<Vec<Laurent>> {
        let mut out = vec![self.start.clone()];
        for _ in 0..k_max {
            let next = lmat_vec(&self.matrix, out.last().unwrap());
            out.push(next.iter().map(|x| aug.ring.reduce(x)).collect());
        }
        out
    }

    /// Integer specialization of the matrix and start vector.
    fn specialize(&self, signs: &HashMap<Var, i8>) -> (ZMatrix, Vec<BigInt>) {
        let m = self.matrix.iter().map(|r| r.iter().map(|x| x.eval_signs(signs)).collect()).collect();
        let v = self.start.iter().map(|x| x.eval_signs(signs)).collect();
        (m, v)
    }
}

/// `(ε∘ϑ^k)(a)` for `k = 0..=k_max` and every generator of the group.
pub fn orbit_values(aug: &Augmentation, generators: &[&str], k_max: usize) -> Result<Vec<Vec<Laurent>>> {
    Ok(orbit_data(aug, generators)?.values(aug, k_max))
}

/// `E(k, a)` for `k = 0..=k_max`: the maximum of `|η(ε(ϑ^k(a)))|` over all
/// ring maps `η: R → ℤ`, that is over all sign assignments of the free
/// variables. Computed by integer matrix powers per assignment.
pub fn e_values(aug: &Augmentation, generators: &[&str], generator: &str, k_max: usize) -> Result<Vec<BigInt>> {
    let data = orbit_data(aug, generators)?;
    let idx = data.generators.iter().position(|g| g.name() == generator).ok_or_else(|| Error::UnknownGenerator(generator.to_string()))?;
    let free = aug.ring.free_variables();
    if free.len() > 24 {
        return Err(Error::OutOfRange(format!("{} free variables is too many to enumerate", free.len())));
    }
    let per_assignment: Vec<Vec<BigInt>> = (0..1u64 << free.len())
        .into_par_iter()
        .map(|bits| {
            let signs = sign_assignment(&free, bits);
            let (m, mut v) = data.specialize(&signs);
            let mut row = vec![v[idx].abs()];
            for _ in 0..k_max {
                v = zmat_vec(&m, &v);
                row.push(v[idx].abs());
            }
            row
        })
        .collect();
    Ok((0..=k_max).map(|k| per_assignment.iter().map(|r| r[k].clone()).max().unwrap()).collect())
}

/// `E(k, a)` for a single `k`.
pub fn e_value(aug: &Augmentation, generators: &[&str], generator: &str, k: usize) -> Result<BigInt> {
    Ok(e_values(aug, generators, generator, k)?.pop().unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    EntireCertified,
    MonotoneUpToK,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::EntireCertified => "entire_certified",
            Verdict::MonotoneUpToK => "monotone_up_to_K",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Orbit-entirety certificate for a two-element over-type group `(x, y)`.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// The generator whose growth is measured (`y`).
    pub generator: Gen,
    /// The other generator of the pair (`x`).
    pub companion: Gen,
    pub m0: LMatrix,
    /// `N = ε((x 1; y 0))`.
    pub n: LMatrix,
    /// `M1 = N^{-1} M0 N`.
    pub m1: LMatrix,
    /// Sign flips making `M1` coefficientwise nonnegative, if found.
    pub flips: Option<Vec<Var>>,
    pub m1_flipped: Option<LMatrix>,
    /// All-ones evaluation of the flipped `M1`.
    pub z: Option<ZMatrix>,
    /// `E(k, y)` for `k = 0..=k_max`.
    pub e: Vec<BigInt>,
    pub verdict: Verdict,
}

/// `N`, `N^{-1}` and `M1 = N^{-1} M0 N` for the pair `(x, y)`.
fn conjugated(data: &OrbitData, aug: &Augmentation) -> Result<(LMatrix, LMatrix)> {
    if data.generators.len() != 2 || data.kind != GroupKind::Over {
        return Err(Error::NotAGroup("certificates need a two-element over-type group".into()));
    }
    let x = data.start[0].clone();
    let y = data.start[1].clone();
    let yi = y.unit_inverse().ok_or_else(|| Error::Internal(format!("ε({}) is not a unit", data.generators[1].name())))?;
    let n = vec![vec![x.clone(), Laurent::one()], vec![y, Laurent::zero()]];
    let ninv = vec![vec![Laurent::zero(), yi.clone()], vec![Laurent::one(), -&(&x * &yi)]];
    let m1 = lmat_mul(&lmat_mul(&ninv, &data.matrix), &n);
    let m1 = m1.iter().map(|r| r.iter().map(|e| aug.ring.reduce(e)).collect()).collect();
    Ok((n, m1))
}

pub fn flip_matrix(m: &LMatrix, flips: &[Var]) -> LMatrix {
    m.iter().map(|r| r.iter().map(|x| x.flip(flips)).collect()).collect()
}

/// All-ones matrix of a flipped `M1` when every entry is a nonzero Laurent
/// polynomial with nonnegative coefficients.
pub fn positivity(m1: &LMatrix, flips: &[Var]) -> Option<(LMatrix, ZMatrix)> {
    let f = flip_matrix(m1, flips);
    if f.iter().flatten().any(|x| x.is_zero() || !x.all_coefficients_nonnegative()) {
        return None;
    }
    let z = f.iter().map(|r| r.iter().map(|x| x.eval_ones()).collect()).collect();
    Some((f, z))
}

/// The sufficient condition for strict growth of `(Z^k)_{11}`: positive
/// entries and `Z_{11} ≥ 2`, so `(Z^{k+1})_{11} = Z_{11}(Z^k)_{11} + Z_{12}(Z^k)_{21} > (Z^k)_{11}`.
pub fn z_certifies(z: &ZMatrix) -> bool {
    z.iter().flatten().all(|x| *x >= BigInt::one()) && z[0][0] >= BigInt::from(2)
}

/// Flip search: `preferred` first, then all subsets of the free variables by
/// size and then lexicographically.
pub fn find_flips(m1: &LMatrix, free: &[Var], preferred: Option<&[Var]>) -> Option<(Vec<Var>, LMatrix, ZMatrix)> {
    if let Some(p) = preferred {
        if let Some((f, z)) = positivity(m1, p) {
            if z_certifies(&z) {
                return Some((p.to_vec(), f, z));
            }
        }
    }
    if free.len() > 20 {
        return None;
    }
    let mut subsets: Vec<u64> = (0..1u64 << free.len()).collect();
    subsets.sort_by_key(|&b| (b.count_ones(), (0..free.len()).filter(|i| b >> i & 1 == 1).collect::<Vec<_>>()));
    subsets.par_iter().find_map_first(|&bits| {
        let flips: Vec<Var> = (0..free.len()).filter(|i| bits >> i & 1 == 1).map(|i| free[i]).collect();
        positivity(m1, &flips).filter(|(_, z)| z_certifies(z)).map(|(f, z)| (flips, f, z))
    })
}

fn strictly_increasing(e: &[BigInt]) -> bool {
    e.windows(2).all(|w| w[1] > w[0])
}

/// Certificate for the orbit of `aug` under ϑ on the pair `(x, y)`.
pub fn certificate_for(aug: &Augmentation, pair: (&str, &str), k_max: usize, preferred: Option<&[Var]>) -> Result<Certificate> {
    let data = orbit_data(aug, &[pair.0, pair.1])?;
    let (n, m1) = conjugated(&data, aug)?;
    let free = aug.ring.free_variables();
    let found = find_flips(&m1, &free, preferred);
    let e = e_values(aug, &[pair.0, pair.1], pair.1, k_max)?;
    let (flips, m1_flipped, z) = match found {
        Some((f, m, z)) => (Some(f), Some(m), Some(z)),
        None => (None, None, None),
    };
    let verdict = if let Some(z) = z.as_ref() {
        let agrees = (0..=k_max).all(|k| zmat_pow(z, k)[0][0] == e[k]);
        if !agrees {
            return Err(Error::Internal("E disagrees with the all-ones matrix power".into()));
        }
        Verdict::EntireCertified
    } else if strictly_increasing(&e) {
        Verdict::MonotoneUpToK
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate { generator: Gen::new(pair.1), companion: Gen::new(pair.0), m0: data.matrix, n, m1, flips, m1_flipped, z, e, verdict })
}

/// Filling augmentation for `pinches`, then its certificate.
pub fn entirety_certificate(
    spec: &ClosureSpec,
    pinches: &[&str],
    pair: (&str, &str),
    k_max: usize,
    preferred: Option<&[Var]>,
) -> Result<Certificate> {
    let filling = filling_augmentation(spec, pinches)?;
    certificate_for(&filling.augmentation, pair, k_max, preferred)
}

/// Certificate for a restricted augmentation. The unrestricted certificate's
/// maximizing point (flipped variables −1, the rest +1) must satisfy the
/// restriction; then the maximum over the restricted sign assignments is the
/// same and the orbit stays entire. Brute force confirms `E` up to `k_max`.
pub fn restricted_certificate(
    full: &Certificate,
    original: &Augmentation,
    restricted: &Augmentation,
    relations: &[UnitRelation],
    k_max: usize,
) -> Result<(bool, Vec<BigInt>, Verdict)> {
    let pair = (full.companion.name(), full.generator.name());
    let e = e_values(restricted, &[&pair.0, &pair.1], &pair.1, k_max)?;
    let (Some(flips), Some(z)) = (&full.flips, &full.z) else {
        let v = if strictly_increasing(&e) { Verdict::MonotoneUpToK } else { Verdict::Inconclusive };
        return Ok((false, e, v));
    };
    let free = original.ring.free_variables();
    let point: HashMap<Var, i8> = free.iter().map(|v| (*v, if flips.contains(v) { -1 } else { 1 })).collect();
    let satisfied = relations.iter().all(|r| r.lhs.eval_signs(&point) == BigInt::from(r.value));
    let agrees = (0..=k_max).all(|k| zmat_pow(z, k)[0][0] == e[k]);
    let verdict = if satisfied && agrees {
        Verdict::EntireCertified
    } else if strictly_increasing(&e) {
        Verdict::MonotoneUpToK
    } else {
        Verdict::Inconclusive
    };
    Ok((satisfied, e, verdict))
}

/// Outcome of the stabilization transfer check.
#[derive(Clone, Debug)]
pub struct TransferReport {
    /// Generators compared for every `m`.
    pub generators: Vec<Gen>,
    pub m_max: usize,
    /// `(m, generator)` pairs where the identity fails.
    pub failures: Vec<(usize, Gen)>,
    /// `Φ_Σ(P_2) = P_1` on the box path matrices.
    pub path_matrix_identity: bool,
}

impl TransferReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.path_matrix_identity
    }
}

/// Checks `(ε_L∘ϑ_1^m)(a) = (ε_L∘Φ_Σ∘ϑ_2^m)(a)` for `m ≤ m_max` and every
/// crossing `a` outside the box. `big` has the longer box; `box_pinches` are
/// interior box crossings resolved by `Σ`; `filling` is the pinching sequence
/// of `L` on the smaller closure.
pub fn transfer_check(big: &ClosureSpec, box_pinches: &[&str], filling: &[&str], m_max: usize) -> Result<TransferReport> {
    let sat = big.satellite().ok_or_else(|| Error::NoSatellite(big.name().to_string()))?.clone();
    let mut small = big.clone();
    let mut sigma = DgaMap::identity(big);
    for name in box_pinches {
        let pos = small.position(name)?;
        let big_pos = big.position(name)?;
        if !sat.in_box(big_pos) || big_pos == sat.box_start || big_pos + 1 == sat.box_end {
            return Err(Error::OutOfRange(format!("{name} is not an interior box crossing")));
        }
        let (next, map) = saddle_map(&small, pos)?;
        sigma = sigma.then(&map)?;
        small = next;
    }
    let aug = filling_augmentation(&small, filling)?.augmentation;
    let ring = aug.ring.clone();
    let eps = |p: &NcPoly| -> Result<Laurent> { Ok(ring.reduce(&p.map_coefficients(|c| ring.reduce(c)).evaluate(&aug.values)?)) };
    let theta1 = theta_map(&small)?;
    let theta2 = theta_map(big)?;
    let generators: Vec<Gen> = (0..big.len()).filter(|&p| !sat.in_box(p)).map(|p| big.crossing_gen(p)).collect();
    let mut failures = Vec::new();
    for m in 0..=m_max {
        let t1 = iterate(&theta1, m)?;
        let t2 = iterate(&theta2, m)?;
        for g in &generators {
            let lhs = eps(&t1.image(*g)?)?;
            let rhs = eps(&sigma.apply(&t2.image(*g)?)?)?;
            if lhs != rhs {
                failures.push((m, *g));
            }
        }
    }
    let (p2, _) = box_matrices(big)?;
    let (p1, _) = box_matrices(&small)?;
    let path_matrix_identity = sigma.apply_matrix(&p2)? == p1;
    Ok(TransferReport { generators, m_max, failures, path_matrix_identity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn d4_aug() -> Augmentation {
        let d4 = presets::d_n(4).unwrap();
        filling_augmentation(&d4, &["a9", "a10", "a11", "a12", "a13", "a14", "a15", "a16"]).unwrap().augmentation
    }

    #[test]
    fn zero_iterate_is_the_augmentation() {
        let aug = d4_aug();
        let v = orbit_values(&aug, &["a11", "a9"], 0).unwrap();
        assert_eq!(v[0][1], Laurent::var(Var::new("s9")));
        assert_eq!(e_value(&aug, &["a11", "a9"], "a9", 0).unwrap(), BigInt::one());
    }

    #[test]
    fn symbolic_orbit_agrees_with_integer_orbit() {
        let aug = d4_aug();
        let sym = orbit_values(&aug, &["a11", "a9"], 2).unwrap();
        let free = aug.ring.free_variables();
        let e2 = sign_assignment_max(&sym[2][1], &free);
        assert_eq!(e2, e_value(&aug, &["a11", "a9"], "a9", 2).unwrap());
    }

    fn sign_assignment_max(x: &Laurent, free: &[Var]) -> BigInt {
        (0..1u64 << free.len()).map(|b| x.eval_signs(&sign_assignment(free, b)).abs()).max().unwrap()
    }

    #[test]
    fn non_group_is_rejected() {
        let aug = d4_aug();
        assert!(matches!(orbit_data(&aug, &["a9", "a10"]), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn z_condition() {
        let z = vec![vec![BigInt::from(5), BigInt::from(2)], vec![BigInt::from(2), BigInt::from(1)]];
        assert!(z_certifies(&z));
        let z = vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(2), BigInt::from(1)]];
        assert!(!z_certifies(&z));
    }
}
