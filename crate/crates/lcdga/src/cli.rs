//! Command-line front end. [`run`] parses arguments, runs one command and
//! returns the exit code together with what goes to standard output, so the
//! binary and the tests share one path.

use crate::braid::BraidWord;
use crate::cobordism::{saddle_map_with, SaddleOptions};
use crate::dga::ClosureDga;
use crate::distinguisher::{certificate_for, Verdict};
use crate::error::Error;
use crate::fillings::{basepoint_product, basepoint_sign_holds, filling_augmentation_with, restrict_augmentation, Filling};
use crate::json;
use crate::map::DgaMap;
use crate::monodromy::{iterate, kalman_map, order, theta_map};
use crate::presets::parse_family;
use crate::spec::ClosureSpec;
use crate::symbol::{Gen, Var};
use crate::worked::{self, Check, Status};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "lcdga", version, about = "Contact DGAs of (-1)-closures of positive braids, filling augmentations and loop orbits")]
pub struct Cli {
    /// Emit the canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include large intermediates (conjugators, full maps).
    #[arg(long, global = true)]
    pub full: bool,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true, env = "LCDGA_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generators, gradings and differential of a closure.
    Dga(Target),
    /// Saddle maps along a pinching sequence.
    Pinch(PinchArgs),
    /// Filling augmentation for a pinching sequence.
    Fill(FillArgs),
    /// Loop monodromy: the Kálmán loop on torus links, the box loop otherwise.
    Monodromy(MonodromyArgs),
    /// Orbit-entirety certificate for a filling augmentation.
    Distinguish(DistinguishArgs),
    /// Structural checks, chain-map checks and randomized testing.
    Check(CheckArgs),
    /// Replays the worked examples against their published values.
    PaperSuite(SuiteArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Preset family: d4, d_n:5, lambda2, b11, b12, b21, torus:2,3, knot_m10_145.
    #[arg(long)]
    pub family: Option<String>,
    /// Positive braid word, letters separated by spaces or commas.
    #[arg(long)]
    pub braid: Option<String>,
    /// Strand count for --braid.
    #[arg(long)]
    pub strands: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PinchArgs {
    #[command(flatten)]
    pub target: Target,
    /// Crossing labels to pinch, in order.
    #[arg(long, value_delimiter = ',', required = true)]
    pub at: Vec<String>,
    /// Check every saddle map symbolically against both differentials.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct FillArgs {
    #[command(flatten)]
    pub target: Target,
    /// Pinching sequence; defaults to the catalogued one for worked families.
    #[arg(long, value_delimiter = ',')]
    pub pinch: Vec<String>,
    /// Designations such as `t1=1,t2=-1` imposed after filling.
    #[arg(long)]
    pub restrict: Option<String>,
}

#[derive(Args, Debug)]
pub struct MonodromyArgs {
    #[command(flatten)]
    pub target: Target,
    /// Power of the loop.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Generators whose images are reported; all crossings by default.
    #[arg(long, value_delimiter = ',')]
    pub apply: Vec<String>,
    /// Report the order of the loop (searched up to --max-order).
    #[arg(long)]
    pub order: bool,
    #[arg(long, default_value_t = 60)]
    pub max_order: usize,
}

#[derive(Args, Debug)]
pub struct DistinguishArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, value_delimiter = ',')]
    pub pinch: Vec<String>,
    /// Over-type pair `x,y`; the growth of `y` is measured.
    #[arg(long, value_delimiter = ',')]
    pub pair: Vec<String>,
    #[arg(long, default_value_t = 10)]
    pub kmax: usize,
    /// Preferred flip set, tried before the search.
    #[arg(long, value_delimiter = ',')]
    pub flips: Vec<String>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub target: Target,
    /// Also fill along this sequence and check every stage.
    #[arg(long, value_delimiter = ',')]
    pub pinch: Vec<String>,
    /// Number of random admissible braids to test.
    #[arg(long)]
    pub fuzz: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum crossings of a random braid.
    #[arg(long, default_value_t = 12)]
    pub max_len: usize,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// One of d4, b12, b21, b11, lambda1, lambda2, kalman, saddle, transfer, restricted, all.
    #[arg(default_value = "all")]
    pub name: String,
    #[arg(long, default_value_t = 10)]
    pub kmax: usize,
}

/// What a command produced.
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub text: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(command: &'static str, inputs: Value) -> Report {
        Report { command, inputs, outputs: Value::Null, text: Vec::new(), checks: Vec::new() }
    }

    /// Misprints are reported but do not fail the run.
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self.checks.iter().map(|c| json!({"name": c.name, "status": c.status.as_str(), "detail": c.detail})).collect();
        json::envelope(self.command, self.inputs.clone(), self.outputs.clone(), Value::Array(checks))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Misprint => "MISPRINT",
            };
            if c.detail.is_empty() {
                out.push_str(&format!("{tag} {}\n", c.name));
            } else {
                out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}

/// Exit code and standard output / standard error text of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
                _ => Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: text },
            };
        }
    };
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Internal(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.to_json()).expect("reports serialize");
                s.push('\n');
                s
            } else {
                report.to_text()
            };
            let code = if report.failed() { EXIT_FAILED } else { EXIT_OK };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = match e {
                Error::Internal(_) => EXIT_FAILED,
                _ => EXIT_INVALID,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn dispatch(cli: &Cli) -> crate::Result<Report> {
    match &cli.command {
        Command::Dga(t) => cmd_dga(t),
        Command::Pinch(a) => cmd_pinch(a, cli.full),
        Command::Fill(a) => cmd_fill(a),
        Command::Monodromy(a) => cmd_monodromy(a, cli.full),
        Command::Distinguish(a) => cmd_distinguish(a),
        Command::Check(a) => cmd_check(a),
        Command::PaperSuite(a) => cmd_paper_suite(a),
    }
}

impl Target {
    fn resolve(&self) -> crate::Result<ClosureSpec> {
        match (&self.family, &self.braid) {
            (Some(f), None) => parse_family(f),
            (None, Some(b)) => {
                let strands = self
                    .strands
                    .or_else(|| b.split(|c: char| c == ',' || c.is_whitespace()).filter_map(|x| x.parse::<usize>().ok()).max().map(|m| m + 1))
                    .ok_or_else(|| Error::InvalidWord(format!("cannot read `{b}`")))?;
                ClosureSpec::standard("braid", BraidWord::parse(b, strands)?)
            }
            (Some(_), Some(_)) => Err(Error::InvalidSpec("give either --family or --braid, not both".into())),
            (None, None) => Err(Error::InvalidSpec("one of --family or --braid is required".into())),
        }
    }

    fn inputs(&self) -> Value {
        json!({"family": self.family, "braid": self.braid, "strands": self.strands})
    }

    fn worked(&self) -> Option<worked::WorkedFamily> {
        let f = self.family.as_deref()?;
        worked::families().into_iter().find(|w| w.family == f || w.key == f)
    }
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(|s| s.as_str()).collect()
}

fn pinches_or_default(target: &Target, given: &[String]) -> crate::Result<Vec<String>> {
    if !given.is_empty() {
        return Ok(given.to_vec());
    }
    target
        .worked()
        .map(|w| w.pinches.iter().map(|s| s.to_string()).collect())
        .ok_or_else(|| Error::InvalidSpec("--pinch is required for this family".into()))
}

/// Fills and rewrites the unlink error as a diagnostic about the sequence.
fn fill(spec: &ClosureSpec, pinches: &[String]) -> crate::Result<Filling> {
    let names = strs(pinches);
    filling_augmentation_with(spec, &names, &SaddleOptions::default()).map_err(|e| match e {
        Error::NotUnlink(why) => Error::NotUnlink(format!(
            "after pinching {} the closure is not an unlink ({why}); the sequence must pinch until only unknots remain",
            pinches.join(",")
        )),
        other => other,
    })
}

pub fn cmd_dga(t: &Target) -> crate::Result<Report> {
    let spec = t.resolve()?;
    let dga = ClosureDga::build(&spec);
    let mut r = Report::new("dga", t.inputs());
    r.text.push(format!("{}: strands {}, crossings {}, components {}", spec.name(), spec.strands(), spec.len(), spec.component_count()));
    r.text.push(format!("coefficients: {}", names_text(dga.ring().variables())));
    for g in dga.degree_one() {
        r.text.push(format!("∂{} = {}", g.name(), dga.d_gen(g)));
    }
    let rep = dga.check_structure();
    r.checks.push(Check::new("∂² = 0, composability and grading", rep.ok(), rep.violations().join("; ")));
    r.outputs = json::dga(&dga);
    Ok(r)
}

fn names_text(vars: &[Var]) -> String {
    let mut v: Vec<String> = vars.iter().map(|x| x.name()).collect();
    v.sort_by_cached_key(|n| crate::symbol::natural_key(n));
    v.join(", ")
}

fn changed_images(m: &DgaMap) -> Vec<(Gen, String)> {
    m.ordered_images().into_iter().filter(|(g, x)| *x != crate::nc::NcPoly::gen(*g)).map(|(g, x)| (g, x.to_string())).collect()
}

pub fn cmd_pinch(a: &PinchArgs, full: bool) -> crate::Result<Report> {
    let mut cur = a.target.resolve()?;
    let mut r = Report::new("pinch", json!({"target": a.target.inputs(), "at": a.at, "verify": a.verify}));
    let opts = SaddleOptions { check_proper: true, verify: false, variable: None };
    let mut stages = Vec::new();
    for label in &a.at {
        let pos = cur.position(label)?;
        let (next, map) = saddle_map_with(&cur, pos, &opts)?;
        r.text.push(format!("saddle at {label}:"));
        for (g, x) in changed_images(&map) {
            r.text.push(format!("  {} ↦ {x}", g.name()));
        }
        if a.verify {
            let outcome = map.verify();
            r.checks.push(Check::new(format!("chain map at {label}"), outcome.is_ok(), outcome.err().map(|e| e.to_string()).unwrap_or_default()));
        }
        stages.push(json!({"crossing": label, "map": json::map(&map, full)}));
        cur = next;
    }
    r.text.push(format!("result: crossings {}, components {}", cur.len(), cur.component_count()));
    r.outputs = json!({"stages": stages, "result": json::spec(&cur)});
    Ok(r)
}

fn parse_designation(text: &str) -> crate::Result<Vec<(Var, i32)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (name, value) = item.split_once('=').ok_or_else(|| Error::Parse(format!("designation `{item}` is not of the form name=±1")))?;
            let value: i32 = value.trim().parse().map_err(|_| Error::Parse(format!("designation `{item}` has no integer value")))?;
            Ok((Var::new(name.trim()), value))
        })
        .collect()
}

pub fn cmd_fill(a: &FillArgs) -> crate::Result<Report> {
    let spec = a.target.resolve()?;
    let pinches = pinches_or_default(&a.target, &a.pinch)?;
    let f = fill(&spec, &pinches)?;
    let aug = &f.augmentation;
    let mut r = Report::new("fill", json!({"target": a.target.inputs(), "pinch": pinches, "restrict": a.restrict}));
    r.text.push(format!("pinches: {}", pinches.join(", ")));
    r.text.push(format!("genus {}, free rank {}", f.genus(), aug.ring.rank()));
    for (g, x) in aug.ordered_values() {
        r.text.push(format!("ε({}) = {x}", g.name()));
    }
    for labels in spec.basepoints_by_component() {
        for l in labels {
            r.text.push(format!("ε({l}) = {}", aug.ring.reduce(&l)));
        }
    }
    r.checks.push(Check::new("ε∘∂ = 0", aug.annihilates_differential(), ""));
    r.checks.push(Check::new("ε of the base-point product is (−1)^m", basepoint_sign_holds(aug), basepoint_product(aug).to_string()));
    r.checks.push(Check::new(
        "free rank matches the genus",
        aug.ring.rank() as i64 == f.expected_rank(),
        format!("rank {}, expected {}", aug.ring.rank(), f.expected_rank()),
    ));
    let mut outputs = json!({"genus": f.genus(), "augmentation": json::augmentation(aug)});
    if let Some(text) = &a.restrict {
        let designation = parse_designation(text)?;
        let (restricted, rels) = restrict_augmentation(aug, &designation)?;
        r.text.push("restricted:".into());
        for rel in &rels {
            r.text.push(format!("  {} = {}", rel.lhs, rel.value));
        }
        r.text.push(format!("  free rank {}", restricted.ring.rank()));
        r.checks.push(Check::new("restricted ε∘∂ = 0", restricted.annihilates_differential(), ""));
        outputs["relations"] = json::relations(&rels);
        outputs["restricted"] = json::augmentation(&restricted);
    }
    r.outputs = outputs;
    Ok(r)
}

fn torus_params(t: &Target) -> Option<(usize, usize)> {
    let rest = t.family.as_deref()?.strip_prefix("torus:")?;
    let (p, q) = rest.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

pub fn cmd_monodromy(a: &MonodromyArgs, full: bool) -> crate::Result<Report> {
    let (kind, map) = match torus_params(&a.target) {
        Some((p, q)) => ("kalman", kalman_map(p, q)?),
        None => ("theta", theta_map(&a.target.resolve()?)?),
    };
    let mut r =
        Report::new("monodromy", json!({"target": a.target.inputs(), "k": a.k, "apply": a.apply, "order": a.order, "max_order": a.max_order}));
    let power = iterate(&map, a.k)?;
    r.text.push(format!("{kind} loop, power {}", a.k));
    let mut images = Vec::new();
    if a.apply.is_empty() {
        for (g, x) in power.ordered_images() {
            images.push((g, x));
        }
    } else {
        for name in &a.apply {
            let g = Gen::new(name);
            if !map.source().crossing_gens().contains(&g) && crate::map::parse_chord(name).is_none() {
                return Err(Error::UnknownGenerator(name.clone()));
            }
            images.push((g, power.image(g)?));
        }
    }
    for (g, x) in &images {
        r.text.push(format!("  {} ↦ {x}", g.name()));
    }
    let mut outputs = json!({
        "loop": kind,
        "images": json::by_gen(images.iter().map(|(g, x)| (*g, json::nc_poly(x)))),
    });
    if full {
        outputs["map"] = json::map(&power, true);
    }
    if a.order {
        let ord = order(&map, a.max_order)?;
        match ord {
            Some(k) => r.text.push(format!("order {k}")),
            None => r.text.push(format!("order > {}", a.max_order)),
        }
        outputs["order"] = json!(ord);
    }
    r.outputs = outputs;
    Ok(r)
}

pub fn cmd_distinguish(a: &DistinguishArgs) -> crate::Result<Report> {
    let spec = a.target.resolve()?;
    let worked = a.target.worked();
    let pinches = pinches_or_default(&a.target, &a.pinch)?;
    let pair: (String, String) = match (a.pair.as_slice(), &worked) {
        ([x, y], _) => (x.clone(), y.clone()),
        ([], Some(w)) => (w.pair.0.to_string(), w.pair.1.to_string()),
        _ => return Err(Error::InvalidSpec("--pair takes two crossing labels `x,y`".into())),
    };
    let preferred: Vec<Var> = if a.flips.is_empty() {
        worked.map(|w| w.flips.iter().map(|n| Var::new(n)).collect()).unwrap_or_default()
    } else {
        a.flips.iter().map(|n| Var::new(n)).collect()
    };
    let f = fill(&spec, &pinches)?;
    let pref = if preferred.is_empty() { None } else { Some(&preferred[..]) };
    let cert = certificate_for(&f.augmentation, (&pair.0, &pair.1), a.kmax, pref)?;
    let mut r = Report::new(
        "distinguish",
        json!({"target": a.target.inputs(), "pinch": pinches, "pair": [pair.0, pair.1], "kmax": a.kmax, "flips": a.flips}),
    );
    match &cert.flips {
        Some(fl) => r.text.push(format!("flips: {}", names_text(fl))),
        None => r.text.push("flips: none found".into()),
    }
    if let Some(m) = &cert.m1_flipped {
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                r.text.push(format!("m{}{} = {x}", i + 1, j + 1));
            }
        }
    }
    if let Some(z) = &cert.z {
        let rows: Vec<String> = z.iter().map(|row| format!("[{}]", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
        r.text.push(format!("Z = [{}]", rows.join(", ")));
    }
    r.text.push(format!("E(k, {}) for k = 0..{}: {}", pair.1, a.kmax, cert.e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
    r.text.push(format!("verdict: {}", cert.verdict.as_str()));
    r.checks.push(Check::new("orbit certified entire", cert.verdict == Verdict::EntireCertified, cert.verdict.as_str()));
    r.outputs = json::certificate(&cert);
    Ok(r)
}

pub fn cmd_check(a: &CheckArgs) -> crate::Result<Report> {
    let mut r = Report::new("check", json!({"target": a.target.inputs(), "pinch": a.pinch, "fuzz": a.fuzz, "seed": a.seed, "max_len": a.max_len}));
    let mut outputs = serde_json::Map::new();
    if a.target.family.is_some() || a.target.braid.is_some() {
        let spec = a.target.resolve()?;
        let rep = ClosureDga::build(&spec).check_structure();
        r.checks.push(Check::new(format!("{}: ∂² = 0", spec.name()), rep.d_squared.is_empty(), rep.d_squared.join("; ")));
        r.checks.push(Check::new(
            format!("{}: link-grading composability", spec.name()),
            rep.composability.is_empty() && rep.grading.is_empty(),
            [rep.composability.clone(), rep.grading.clone()].concat().join("; "),
        ));
        r.checks.push(Check::new(format!("{}: path matrix", spec.name()), rep.path_matrix.is_empty(), rep.path_matrix.join("; ")));
        if !a.pinch.is_empty() {
            let f = fill(&spec, &a.pinch)?;
            for (label, (_, map)) in f.pinches.iter().zip(&f.stages) {
                let outcome = map.verify();
                r.checks.push(Check::new(
                    format!("{}: chain map at {label}", spec.name()),
                    outcome.is_ok(),
                    outcome.err().map(|e| e.to_string()).unwrap_or_default(),
                ));
            }
            let aug = &f.augmentation;
            r.checks.push(Check::new(format!("{}: ε∘∂ = 0", spec.name()), aug.annihilates_differential(), ""));
            r.checks.push(Check::new(
                format!("{}: ε of the base-point product is (−1)^m", spec.name()),
                basepoint_sign_holds(aug),
                basepoint_product(aug).to_string(),
            ));
            r.checks.push(Check::new(
                format!("{}: free rank", spec.name()),
                aug.ring.rank() as i64 == f.expected_rank(),
                format!("rank {}, expected {}", aug.ring.rank(), f.expected_rank()),
            ));
        }
    }
    if let Some(n) = a.fuzz {
        let cases = crate::fuzz::fuzz_chain_maps(a.seed, n, a.max_len);
        outputs.insert("fuzz_cases".into(), json!(cases.len()));
        r.checks.extend(cases);
    }
    if r.checks.is_empty() {
        return Err(Error::InvalidSpec("nothing to check: give --family, --braid or --fuzz".into()));
    }
    r.outputs = Value::Object(outputs);
    Ok(r)
}

pub fn cmd_paper_suite(a: &SuiteArgs) -> crate::Result<Report> {
    if a.name != "all" && !worked::SUITES.contains(&a.name.as_str()) {
        return Err(Error::UnknownFamily(format!("{} (suites: {}, all)", a.name, worked::SUITES.join(", "))));
    }
    let mut r = Report::new("paper-suite", json!({"name": a.name, "kmax": a.kmax}));
    r.checks = worked::run_suite(&a.name, a.kmax)?;
    let count = |s: Status| r.checks.iter().filter(|c| c.status == s).count();
    r.outputs = json!({
        "pass": count(Status::Pass),
        "fail": count(Status::Fail),
        "misprint": count(Status::Misprint),
    });
    Ok(r)
}
