//! Worked examples with their published values, and the checks that replay
//! them: filling augmentations, flipped matrices, certificates, the Kálmán
//! loop, saddle test vectors, stabilization transfer and the restricted
//! augmentation.

use crate::cobordism::saddle_map;
use crate::distinguisher::{certificate_for, restricted_certificate, transfer_check, zmat_pow, Certificate, Verdict, ZMatrix};
use crate::error::Result;
use crate::fillings::{filling_augmentation, restrict_augmentation, Filling};
use crate::laurent::{parse_laurent, Laurent};
use crate::map::DgaMap;
use crate::monodromy::{iterate, kalman_map, order};
use crate::nc::parse_nc;
use crate::presets::parse_family;
use crate::ring::UnitRelation;
use crate::symbol::{Gen, Var};
use num_bigint::BigInt;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The published values contradict themselves and the computed values
    /// reproduce the rest of the published data.
    Misprint,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Misprint => "misprint",
        }
    }
}

/// One named comparison.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A family with its pinching sequence and the published results.
#[derive(Clone, Debug)]
pub struct WorkedFamily {
    pub key: &'static str,
    pub family: &'static str,
    pub pinches: &'static [&'static str],
    /// `(companion, generator)`: the orbit vector is `(companion, generator)ᵀ`.
    pub pair: (&'static str, &'static str),
    pub flips: &'static [&'static str],
    pub values: &'static [(&'static str, &'static str)],
    /// Flipped `M₁` entries `m11, m12, m21, m22`.
    pub m1: [&'static str; 4],
    pub rank: usize,
    /// Published values that contradict `ε∘∂ = 0`.
    pub misprinted: &'static [&'static str],
}

pub const D4_PINCHES: [&str; 8] = ["a9", "a10", "a11", "a12", "a13", "a14", "a15", "a16"];
pub const LAMBDA1_PINCHES: [&str; 7] = ["a10", "a9", "a8", "a7", "a6", "a5", "a12"];
pub const LAMBDA2_PINCHES: [&str; 8] = ["a10", "a9", "a8", "a7", "a6", "a5", "a12", "a11"];

/// `E(k, a9)` for `D̃4`, `k = 0..=10`.
pub const D4_E: [u64; 11] = [1, 5, 29, 169, 985, 5741, 33461, 195025, 1136689, 6625109, 38613965];

pub fn families() -> Vec<WorkedFamily> {
    vec![
        WorkedFamily {
            key: "d4",
            family: "d4",
            pinches: &D4_PINCHES,
            pair: ("a11", "a9"),
            flips: &["s11", "s12", "s15", "s16"],
            values: &[
                ("a9", "s9"),
                ("a11", "s11"),
                ("t1", "-s11*s15"),
                ("t2", "-s9*s12*s13*s16/(s11*s15)"),
                ("a19", "s9/s11 - s9*s12*s13/(s11^2*s15)"),
                (
                    "a20",
                    "-s11^3*s15^2/(s9^2*s12*s13*s16) + s11^2*s15/(s9*s12*s13) - s11^2*s15^2/(s9*s10*s13*s16) \
                     + s11^2*s14*s15^2/(s9*s12*s13^2*s16)",
                ),
            ],
            m1: [
                "s9*s13*s12^2/(s10*s11) + s9*s14*s12/s11 + s9*s15*s12/s10 + s9*s14*s15/s13 + s9*s16",
                "s12*s13/s11 + s15",
                "s9*s13*s12^2/s10 + s9*s14*s12",
                "s12*s13",
            ],
            rank: 8,
            misprinted: &[],
        },
        WorkedFamily {
            key: "b12",
            family: "b12",
            pinches: &["a9", "a10", "a11", "a12", "a13", "a15", "a16"],
            pair: ("a11", "a9"),
            flips: &["s11", "s12", "s15", "s16"],
            values: &[
                ("t1", "-s11*s15"),
                ("t2", "-s9*s12*s13*s16/(s11*s15)"),
                ("a9", "s9"),
                ("a11", "s11"),
                ("a19", "s9/s11 + s12*s13*s9/(s11^2*s15)"),
                ("a20", "-s15^2*s11^3/(s9^2*s12*s13*s16) - s15*s11^2/(s9*s12*s13) - s15^2*s11^2/(s9*s10*s13*s16)"),
            ],
            m1: ["s9*s13*s12^2/(s10*s11) + s9*s15*s12/s10 + s9*s16", "s12*s13/s11 + s15", "s9*s12^2*s13/s10", "s12*s13"],
            rank: 7,
            misprinted: &["a19", "a20"],
        },
        WorkedFamily {
            key: "b21",
            family: "b21",
            pinches: &["a9", "a10", "a11", "a12", "a13", "a14", "a16"],
            pair: ("a11", "a9"),
            flips: &["s11", "s12", "s16"],
            values: &[
                ("t1", "s9*s12*s13/s11"),
                ("t2", "-s11*s16"),
                ("a9", "s9"),
                ("a11", "s11"),
                ("a19", "s9*s13*s12^2/(s10*s11^2*s16) + s13*s12/(s11*s16) - s9*s14*s12/(s11^2*s16) + s9/s11"),
            ],
            m1: ["s9*s13*s12^2/(s10*s11) + s9*s14*s12/s11 + s9*s16", "s12*s13/s11", "s9*s13*s12^2/s10 + s9*s14*s12", "s12*s13"],
            rank: 7,
            misprinted: &[],
        },
        WorkedFamily {
            key: "b11",
            family: "b11",
            pinches: &["a9", "a10", "a11", "a12", "a13", "a16"],
            pair: ("a11", "a9"),
            flips: &["s11", "s12", "s16"],
            values: &[
                ("t1", "s9*s12*s13/s11"),
                ("t2", "-s11*s16"),
                ("t3", "-1/(s10*s16)"),
                ("t4", "s10/(s9*s12*s13)"),
                ("a9", "s9"),
                ("a11", "s11"),
                ("a19", "s9*s13*s12^2/(s10*s11^2*s16) + s13*s12/(s11*s16) + s9/s11"),
            ],
            m1: ["s9*s13*s12^2/(s10*s11) + s9*s16", "s12*s13/s11", "s9*s12^2*s13/s10", "s12*s13"],
            rank: 6,
            misprinted: &[],
        },
        WorkedFamily {
            key: "lambda1",
            family: "lambda1",
            pinches: &LAMBDA1_PINCHES,
            pair: ("a10", "a9"),
            flips: &["s5", "s7", "s8", "s10"],
            values: &[
                ("t1", "s5*s8*s9/(s6*s7*s10)"),
                ("t2", "-s6*s7*s10*s12"),
                ("a9", "s9"),
                ("a10", "s10"),
                (
                    "a13",
                    "s5/s6 - s7/s8 + s9/s10 + s5*s8/(s6^2*s7^2*s10*s12) - s5/(s6^2*s7^2*s9*s10*s12) \
                     + 1/(s6*s7*s8*s9*s10*s12)",
                ),
            ],
            m1: [
                "s6*s10*s12*s7^2/s8 + s6*s9*s12*s7 + s5*s10*s12*s7 + s5/(s6*s7*s9) + 1/(s8*s9)",
                "s5*s8/(s6*s7*s10)",
                "s5*s7*s12*s10^2 + s6*s7^2*s12*s10^2/s8 + s5*s10/(s6*s7*s9) + s10/(s8*s9)",
                "s5*s8/(s6*s7)",
            ],
            rank: 7,
            misprinted: &[],
        },
        WorkedFamily {
            key: "lambda2",
            family: "lambda2",
            pinches: &LAMBDA2_PINCHES,
            pair: ("a10", "a9"),
            flips: &["s5", "s7", "s8", "s10"],
            values: &[
                ("t1", "-s6*s7*s10*s11"),
                ("t2", "-s5*s8*s9*s12/(s6*s7*s10*s11)"),
                ("a9", "s9"),
                ("a10", "s10"),
                ("a13", "s5/s6 - s7/s8 + s9/s10 - s5*s8*s9/(s6^2*s7^2*s10^2*s11)"),
                (
                    "a14",
                    "s6^2*s7^2*s10^2*s11/(s5*s8*s9) - s6^3*s7^3*s10^3*s11^2/(s5^2*s8^3*s9^3*s12) \
                     + s6^2*s7^2*s10^3*s11^2/(s5*s8^2*s9^3*s12) - s6^2*s7^2*s10^3*s11^2/(s5*s8*s9^2*s12)",
                ),
            ],
            m1: [
                "s6^2*s10^2*s11*s7^3/(s5*s8^3*s9^2) + 2*s6*s10^2*s11*s7^2/(s8^2*s9^2) + s6^2*s10*s11*s7^2/(s5*s8^2*s9) \
                 + s6*s10*s12*s7^2/s8 + s5*s10^2*s11*s7/(s8*s9^2) + s6*s10*s11*s7/(s8*s9) + s6*s9*s12*s7 \
                 + s5*s10*s12*s7 + s5/(s6*s7*s9) + 1/(s8*s9)",
                "s6*s10*s11*s7^2/(s8*s9) + s6*s11*s7 + s5*s10*s11*s7/s9 + s5*s8/(s6*s7*s10)",
                "s5*s7*s11*s10^3/(s8*s9^2) + 2*s6*s7^2*s11*s10^3/(s8^2*s9^2) + s6^2*s7^3*s11*s10^3/(s5*s8^3*s9^2) \
                 + s5*s7*s12*s10^2 + s6*s7^2*s12*s10^2/s8 + s5*s10/(s6*s7*s9) + s10/(s8*s9)",
                "s5*s7*s11*s10^2/s9 + s6*s7^2*s11*s10^2/(s8*s9) + s5*s8/(s6*s7)",
            ],
            rank: 8,
            misprinted: &[],
        },
    ]
}

pub fn family(key: &str) -> Option<WorkedFamily> {
    families().into_iter().find(|f| f.key == key)
}

fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::new(n)).collect()
}

/// Everything computed for one worked family.
pub struct FamilyRun {
    pub filling: Filling,
    pub certificate: Certificate,
    pub checks: Vec<Check>,
}

pub fn run_family(f: &WorkedFamily, k_max: usize) -> Result<FamilyRun> {
    let spec = parse_family(f.family)?;
    let filling = filling_augmentation(&spec, f.pinches)?;
    let aug = &filling.augmentation;
    let ring = &aug.ring;
    let mut checks = Vec::new();
    checks.push(Check::new(format!("{}: augmentation annihilates the differential", f.key), aug.annihilates_differential(), ""));
    let mut with_display = aug.clone();
    for (name, text) in f.values {
        let want = ring.reduce(&parse_laurent(text)?);
        let got = aug.value(name)?;
        let ok = got == want;
        let mut check = Check::new(format!("{}: ε({name})", f.key), ok, format!("computed {got}; published {want}"));
        if !ok && f.misprinted.contains(name) {
            check.status = Status::Misprint;
        }
        checks.push(check);
        if let Some(g) = aug.spec.crossing_gens().into_iter().find(|g| g.name() == *name) {
            with_display.values.insert(g, want);
        }
    }
    if !f.misprinted.is_empty() {
        checks.push(Check::new(
            format!("{}: published values violate ε∘∂ = 0", f.key),
            !with_display.annihilates_differential(),
            format!("published {} substituted", f.misprinted.join(", ")),
        ));
    }
    let rank = ring.rank();
    checks.push(Check::new(
        format!("{}: free rank", f.key),
        rank == f.rank && rank as i64 == filling.expected_rank(),
        format!("rank {rank}, expected {}, genus {}", f.rank, filling.genus()),
    ));
    let preferred = vars(f.flips);
    let certificate = certificate_for(aug, f.pair, k_max, Some(&preferred))?;
    let flips_ok = certificate.flips.as_deref() == Some(&preferred[..]);
    checks.push(Check::new(format!("{}: published flip set certifies", f.key), flips_ok, format!("{:?}", certificate.flips)));
    if let Some(m) = &certificate.m1_flipped {
        for (idx, text) in f.m1.iter().enumerate() {
            let (i, j) = (idx / 2, idx % 2);
            let want = ring.reduce(&parse_laurent(text)?);
            checks.push(Check::new(
                format!("{}: flipped m{}{}", f.key, i + 1, j + 1),
                m[i][j] == want,
                format!("computed {}; published {want}", m[i][j]),
            ));
        }
    } else {
        checks.push(Check::new(format!("{}: flipped M1", f.key), false, "no flip set makes M1 nonnegative"));
    }
    checks.push(Check::new(
        format!("{}: orbit certified entire", f.key),
        certificate.verdict == Verdict::EntireCertified,
        certificate.verdict.as_str(),
    ));
    Ok(FamilyRun { filling, certificate, checks })
}

fn zmatrix(rows: [[i64; 2]; 2]) -> ZMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// `D̃4` extras: `Z = [[5,2],[2,1]]` and the `E` sequence.
pub fn d4_growth_checks(cert: &Certificate) -> Vec<Check> {
    let z = zmatrix([[5, 2], [2, 1]]);
    let mut out = vec![Check::new("d4: all-ones evaluation", cert.z.as_ref() == Some(&z), format!("{:?}", cert.z))];
    let want: Vec<BigInt> = D4_E.iter().map(|&x| BigInt::from(x)).collect();
    let n = want.len().min(cert.e.len());
    out.push(Check::new(
        "d4: E(k, a9)",
        cert.e.len() >= want.len() && cert.e[..n] == want[..n],
        format!("{:?}", cert.e.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    ));
    let powers = (0..cert.e.len()).all(|k| zmat_pow(&z, k)[0][0] == cert.e[k]);
    out.push(Check::new("d4: E(k, a9) is the top-left entry of Z^k", powers, ""));
    out.push(Check::new("d4: E strictly increasing", cert.e.windows(2).all(|w| w[0] < w[1]), ""));
    out
}

/// Kálmán loop orders.
pub fn kalman_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let delta = kalman_map(2, 3)?;
    let ord = order(&delta, 12)?;
    out.push(Check::new("kalman (2,3): order 5", ord == Some(5), format!("{ord:?}")));
    let t = |i: usize| format!("t{i}");
    let expected = [
        ("a1", format!("{}^-1*a2*{}", t(2), t(1))),
        ("a2", format!("{}^-1*a3*{}", t(1), t(2))),
        ("a3", format!("{}^-1*a4*{}", t(2), t(1))),
        ("a4", format!("{}^-1*a5*{}", t(1), t(2))),
        ("a5", "a1".to_string()),
    ];
    let images_ok =
        expected.iter().all(|(g, text)| parse_nc(text).map(|want| delta.image(Gen::new(g)).map(|got| got == want).unwrap_or(false)).unwrap_or(false));
    out.push(Check::new("kalman (2,3): images", images_ok, ""));
    for (p, q) in [(2, 5), (2, 7), (3, 4)] {
        let d = kalman_map(p, q)?;
        let ok = iterate(&d, p + q)?.is_identity_in_degree_zero();
        out.push(Check::new(format!("kalman ({p},{q}): δ^{} is the identity", p + q), ok, ""));
    }
    Ok(out)
}

/// The saddle at `a9` on `D̃4` and the per-stage images along the filling.
pub fn saddle_checks() -> Result<Vec<Check>> {
    let d4 = parse_family("d4")?;
    let (_, first) = saddle_map(&d4, d4.position("a9")?)?;
    let mut out = Vec::new();
    let vectors =
        [("a14", "a14 - a13*a11*s9^-1"), ("a15", "a15 - s9^-1*a10*a13"), ("a16", "a16 - s9^-1 - s9^-1*a10*a14 - (a15 - s9^-1*a10*a13)*a11*s9^-1")];
    for (g, text) in vectors {
        out.push(image_check(&format!("saddle a9: image of {g}"), &first, g, text)?);
    }
    let filling = filling_augmentation(&d4, &D4_PINCHES)?;
    let stage = |name: &str| -> &DgaMap {
        let i = filling.pinches.iter().position(|p| p == name).unwrap();
        &filling.stages[i].1
    };
    let stages = [
        ("a9", "a20", "a20 - t1*a11*s9^-1*t2^-1"),
        ("a10", "a20", "a20 - t1*a12*s10^-1*t2^-1"),
        ("a13", "a20", "a20 + t1*s13^-1*a14*t2^-1"),
        ("a15", "a20", "a20 + t1*s15^-1*a16*t2^-1"),
        ("a11", "a19", "a19 + s9*s11^-1"),
        ("a15", "a19", "a19 - s9*s11^-1*s12*s13*s15^-1*s11^-1"),
    ];
    for (at, g, text) in stages {
        out.push(image_check(&format!("stage {at}: image of {g}"), stage(at), g, text)?);
    }
    Ok(out)
}

fn image_check(name: &str, map: &DgaMap, g: &str, text: &str) -> Result<Check> {
    let want = parse_nc(text)?;
    let got = map.image(Gen::new(g))?;
    Ok(Check::new(name, got == want, format!("computed {got}; published {want}")))
}

/// Stabilization transfer for `D̃5 → D̃4` and `Λ3 → Λ2`.
pub fn transfer_checks(m_max: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, family, pinch, filling) in [("d5 -> d4", "d5", "a20", &D4_PINCHES[..]), ("lambda3 -> lambda2", "lambda3", "a14", &LAMBDA2_PINCHES[..])]
    {
        let r = transfer_check(&parse_family(family)?, &[pinch], filling, m_max)?;
        out.push(Check::new(
            format!("transfer {name}: orbit values for m <= {m_max}"),
            r.failures.is_empty(),
            format!("{} generators, {} failures", r.generators.len(), r.failures.len()),
        ));
        out.push(Check::new(format!("transfer {name}: path matrix identity"), r.path_matrix_identity, ""));
    }
    Ok(out)
}

/// Published restriction relations for `β11`, as `(lhs, value)`.
pub const B11_RELATIONS: [(&str, i32); 3] = [("s9*s12*s13/s11", 1), ("s11*s16", 1), ("s10*s16", -1)];
pub const B11_DESIGNATION: [(&str, i32); 4] = [("t1", 1), ("t2", -1), ("t3", 1), ("t4", -1)];
pub const B11_ASSIGNMENT: [(&str, i8); 6] = [("s9", 1), ("s10", 1), ("s11", -1), ("s12", -1), ("s13", 1), ("s16", -1)];

fn equivalent(a: &UnitRelation, lhs: &Laurent, value: i32) -> bool {
    let inv = lhs.unit_inverse();
    let forms = [(lhs.clone(), value), (-lhs, -value)];
    forms.iter().any(|(l, v)| a.lhs == *l && a.value == *v)
        || inv.is_some_and(|i| [(i.clone(), value), (-&i, -value)].iter().any(|(l, v)| a.lhs == *l && a.value == *v))
}

pub fn restriction_checks(k_max: usize) -> Result<Vec<Check>> {
    let f = family("b11").expect("b11 is catalogued");
    let run = run_family(&f, k_max)?;
    let aug = &run.filling.augmentation;
    let designation: Vec<(Var, i32)> = B11_DESIGNATION.iter().map(|(n, v)| (Var::new(n), *v)).collect();
    let (restricted, rels) = restrict_augmentation(aug, &designation)?;
    let mut out = Vec::new();
    let published: Vec<(Laurent, i32)> = B11_RELATIONS.iter().map(|(t, v)| Ok((parse_laurent(t)?, *v))).collect::<Result<_>>()?;
    let all_found = published.iter().all(|(l, v)| rels.iter().any(|r| equivalent(r, l, *v)));
    out.push(Check::new(
        "b11 restriction: published relations",
        all_found,
        rels.iter().map(|r| format!("{} = {}", r.lhs, r.value)).collect::<Vec<_>>().join(", "),
    ));
    let redundant = restricted.ring.reduce(&Laurent::var(Var::new("t4"))) == Laurent::constant(-1);
    out.push(Check::new("b11 restriction: fourth relation redundant", redundant, ""));
    out.push(Check::new(
        "b11 restriction: rank",
        restricted.ring.rank() + 3 == aug.ring.rank(),
        format!("{} -> {}", aug.ring.rank(), restricted.ring.rank()),
    ));
    let point: HashMap<Var, i8> = B11_ASSIGNMENT.iter().map(|(n, v)| (Var::new(n), *v)).collect();
    let holds = published.iter().all(|(l, v)| l.eval_signs(&point) == BigInt::from(*v));
    out.push(Check::new("b11 restriction: assignment satisfies the relations", holds, ""));
    let (satisfied, e, verdict) = restricted_certificate(&run.certificate, aug, &restricted, &rels, k_max)?;
    out.push(Check::new(
        "b11 restriction: certificate maximizer satisfies the relations",
        satisfied,
        format!("E = {:?}", e.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    ));
    out.push(Check::new("b11 restriction: restricted orbit certified entire", verdict == Verdict::EntireCertified, verdict.as_str()));
    Ok(out)
}

pub const SUITES: [&str; 10] = ["d4", "b12", "b21", "b11", "lambda1", "lambda2", "kalman", "saddle", "transfer", "restricted"];

/// Runs one named suite, or all of them for `all`.
pub fn run_suite(name: &str, k_max: usize) -> Result<Vec<Check>> {
    if name == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            out.extend(run_suite(s, k_max)?);
        }
        return Ok(out);
    }
    match name {
        "kalman" => kalman_checks(),
        "saddle" => saddle_checks(),
        "transfer" => transfer_checks(3),
        "restricted" => restriction_checks(k_max),
        _ => {
            let f = family(name).ok_or_else(|| crate::Error::UnknownFamily(name.to_string()))?;
            let run = run_family(&f, k_max)?;
            let mut checks = run.checks;
            if name == "d4" {
                checks.extend(d4_growth_checks(&run.certificate));
            }
            Ok(checks)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogued_values_parse() {
        for f in families() {
            for (_, t) in f.values {
                parse_laurent(t).unwrap();
            }
            for t in f.m1 {
                assert!(parse_laurent(t).unwrap().all_coefficients_nonnegative(), "{}", f.key);
            }
        }
    }

    #[test]
    fn kalman_suite_passes() {
        for c in kalman_checks().unwrap() {
            assert!(c.passed(), "{} {}", c.name, c.detail);
        }
    }
}
