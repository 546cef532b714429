//! Command-line front end. `execute` is the whole program minus process
//! exit, so it can be driven from tests.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::PrimePower;
use crate::classifier::{classify, classify_base, ClassBase, ClassifyError};
use crate::decomposer::{decompose, CaseUsed, DecomposeError, Decomposition};
use crate::homology::{
    chain_homology, homology_of_manifold, homology_of_term, smith_normal_form, suspend, GradedAbelianGroup,
};
use crate::manifold::{validate, ManifoldSpec, Pi1Class, ValidationErrors};
use crate::syntax::{parse_gauge, parse_group, parse_matrix, parse_pi1, parse_primes, parse_term, ParseError};
use crate::terms::{wedge, GaugeBase, GaugeExpr, LoopFactor, SpaceTerm, Stabilization};

#[derive(Debug, Parser)]
#[command(
    name = "gaugesplit",
    version,
    about = "Suspension splittings and gauge-group decompositions of 4-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Fundamental group, e.g. `Z*Z*Z/9`, `Z/27`, `1`.
    #[arg(long)]
    pi1: Option<String>,
    /// Rank of H^2(M).
    #[arg(long)]
    b2: Option<u32>,
    /// Whether the suspended attaching map of the top cell is null: `trivial` or `nontrivial`.
    #[arg(long = "sigma-f")]
    sigma_f: Option<String>,
    /// Alias for --sigma-f: `true` means trivial.
    #[arg(long)]
    spin: Option<String>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Suspension splitting and gauge-group decomposition.
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        group: Option<String>,
        /// Bundle class.
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        /// Stabilization count for mixed groups: an integer or `symbolic`.
        #[arg(long)]
        d: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Suspension splitting only.
    Suspension {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        d: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Integral homology of a manifold description or of a wedge term.
    Homology {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        term: Option<String>,
        /// Report the homology of the suspension instead.
        #[arg(long)]
        suspension: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Is G_t ~ G_s?
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Query the raw S4 or CP2 tables instead of a manifold.
        #[arg(long)]
        base: Option<String>,
        /// SU(n), Sp(n) or G2.
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        /// Primes for p-local verdicts, comma separated.
        #[arg(long)]
        primes: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Smith normal form invariant factors of an integer matrix.
    Snf {
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Homology of a chain complex given by its boundary matrices, lowest first.
    Chain {
        /// Boundary maps C1->C0, C2->C1, ... separated by `;`.
        #[arg(long)]
        boundaries: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Echo a manifold description, term, or gauge expression in normal form.
    Parse {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        term: Option<String>,
        #[arg(long)]
        gauge: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Validation(#[from] ValidationErrors),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DecomposeError> for CliError {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::Invalid(v) => CliError::Validation(v),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Invalid(v) => CliError::Validation(v),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn parse_flag(value: &str, flag: &str) -> Result<bool, CliError> {
    match value {
        "trivial" | "true" => Ok(true),
        "nontrivial" | "false" => Ok(false),
        "spin" if flag == "--spin" => Ok(true),
        "non-spin" if flag == "--spin" => Ok(false),
        other => Err(usage(format!("invalid value {other:?} for {flag}"))),
    }
}

impl SpecArgs {
    fn is_empty(&self) -> bool {
        self.pi1.is_none() && self.b2.is_none() && self.sigma_f.is_none() && self.spin.is_none()
    }

    fn to_spec(&self) -> Result<ManifoldSpec, CliError> {
        let pi1 = parse_pi1(self.pi1.as_deref().ok_or_else(|| usage("missing --pi1"))?)?;
        let b2 = self.b2.ok_or_else(|| usage("missing --b2"))?;
        let sigma = self
            .sigma_f
            .as_deref()
            .map(|v| parse_flag(v, "--sigma-f"))
            .transpose()?;
        let spin = self.spin.as_deref().map(|v| parse_flag(v, "--spin")).transpose()?;
        let trivial = match (sigma, spin) {
            (Some(a), Some(b)) if a != b => return Err(usage("--sigma-f and --spin disagree")),
            (a, b) => a.or(b).unwrap_or(true),
        };
        let spec = ManifoldSpec::new(pi1, b2, trivial);
        Ok(validate(&spec)?)
    }
}

fn parse_d(d: Option<&str>) -> Result<Option<u32>, CliError> {
    match d {
        None | Some("symbolic") => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("invalid value {v:?} for --d"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub kind: String,
    pub dim: u32,
    pub modulus: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub loop_order: u32,
    pub modulus: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeJson {
    pub base: String,
    pub t: i64,
    pub factors: Vec<FactorJson>,
    /// An integer, or `"d"` when symbolic.
    pub stabilization: Value,
}

pub fn summand_json(s: &SpaceTerm) -> SummandJson {
    let kind = match s {
        SpaceTerm::Point => "point",
        SpaceTerm::Sphere(_) => "sphere",
        SpaceTerm::Moore { .. } => "moore",
        SpaceTerm::SuspCp2 => "suspcp2",
        SpaceTerm::Wedge(_) => "wedge",
    };
    SummandJson {
        kind: kind.to_string(),
        dim: s.dim(),
        modulus: s.modulus().map(|q| q.value()),
    }
}

pub fn summand_from_json(j: &SummandJson) -> Result<SpaceTerm, ParseError> {
    let bad = || ParseError::Syntax {
        what: "summand object",
        input: format!("{j:?}"),
    };
    match (j.kind.as_str(), j.modulus) {
        ("sphere", None) if j.dim >= 1 => Ok(SpaceTerm::Sphere(j.dim)),
        ("moore", Some(q)) if j.dim >= 2 => Ok(SpaceTerm::Moore {
            dim: j.dim,
            modulus: PrimePower::from_value(q)?,
        }),
        ("suspcp2", None) if j.dim == 5 => Ok(SpaceTerm::SuspCp2),
        ("point", None) => Ok(SpaceTerm::Point),
        _ => Err(bad()),
    }
}

fn stabilization_json(s: Stabilization) -> Value {
    match s {
        Stabilization::Fixed(d) => json!(d),
        Stabilization::Symbolic => json!("d"),
    }
}

pub fn gauge_json(g: &GaugeExpr) -> GaugeJson {
    GaugeJson {
        base: g.base.as_str().to_string(),
        t: g.t,
        factors: g
            .factors()
            .iter()
            .map(|f| FactorJson {
                loop_order: f.loop_order,
                modulus: f.modulus.map(|q| q.value()),
            })
            .collect(),
        stabilization: stabilization_json(g.stabilization),
    }
}

pub fn gauge_from_json(j: &GaugeJson) -> Result<GaugeExpr, ParseError> {
    let bad = |what| ParseError::Syntax {
        what,
        input: format!("{j:?}"),
    };
    let base = match j.base.as_str() {
        "S^4" => GaugeBase::S4,
        "CP^2" => GaugeBase::Cp2,
        _ => return Err(bad("gauge base")),
    };
    let stabilization = match &j.stabilization {
        Value::String(s) if s == "d" => Stabilization::Symbolic,
        Value::Number(n) => Stabilization::Fixed(
            n.as_u64()
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| bad("stabilization"))?,
        ),
        _ => return Err(bad("stabilization")),
    };
    let factors = j
        .factors
        .iter()
        .map(|f| {
            Ok(LoopFactor {
                loop_order: f.loop_order,
                modulus: f.modulus.map(PrimePower::from_value).transpose()?,
            })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(GaugeExpr::new(base, j.t, factors, stabilization))
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    let summands: Vec<SummandJson> = d.suspension.display_order().iter().map(summand_json).collect();
    json!({
        "case": d.case_used.as_str(),
        "group": d.group,
        "suspension": summands,
        "gauge": gauge_json(&d.gauge),
        "text": d.to_string(),
    })
}

/// Rebuilds a decomposition from the JSON emitted by `decompose --json`.
pub fn decomposition_from_json(v: &Value) -> Result<Decomposition, ParseError> {
    let bad = |what| ParseError::Syntax {
        what,
        input: v.to_string(),
    };
    let summands: Vec<SummandJson> =
        serde_json::from_value(v["suspension"].clone()).map_err(|_| bad("suspension list"))?;
    let gauge: GaugeJson = serde_json::from_value(v["gauge"].clone()).map_err(|_| bad("gauge object"))?;
    let case_used = match v["case"].as_str() {
        Some("simply-connected") => CaseUsed::SimplyConnected,
        Some("free") => CaseUsed::Free,
        Some("cyclic") => CaseUsed::Cyclic,
        Some("mixed") => CaseUsed::Mixed,
        _ => return Err(bad("case")),
    };
    let group = match v["group"].as_str() {
        Some(g) => Some(parse_group(g)?),
        None => None,
    };
    let suspension = wedge(summands.iter().map(summand_from_json).collect::<Result<Vec<_>, _>>()?);
    let gauge = gauge_from_json(&gauge)?;
    Ok(Decomposition {
        suspension,
        stabilization: gauge.stabilization,
        gauge,
        case_used,
        group,
    })
}

fn homology_json(g: &GradedAbelianGroup) -> Value {
    let degrees: Vec<Value> = g
        .degrees()
        .iter()
        .enumerate()
        .map(|(i, h)| json!({"degree": i, "free_rank": h.free_rank, "torsion": h.torsion()}))
        .collect();
    json!(degrees)
}

fn case_name(spec: &ManifoldSpec) -> &'static str {
    match spec.pi1_class() {
        Pi1Class::Trivial => "simply-connected",
        Pi1Class::Free(_) => "free",
        Pi1Class::CyclicOddPrimePower(..) => "cyclic",
        Pi1Class::MixedFreeProduct => "mixed",
    }
}

fn emit(json_mode: bool, text: String, value: Value) -> String {
    if json_mode {
        value.to_string()
    } else {
        text
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Decompose { spec, group, t, d, out } => {
            let spec = spec.to_spec()?;
            let group = group.as_deref().map(parse_group).transpose()?;
            let dec = decompose(&spec, group, t, parse_d(d.as_deref())?)?;
            Ok(emit(out.json, dec.to_string(), decomposition_json(&dec)))
        }
        Command::Suspension { spec, d, out } => {
            let spec = spec.to_spec()?;
            let dec = decompose(&spec, None, 0, parse_d(d.as_deref())?)?;
            let summands: Vec<SummandJson> = dec.suspension.display_order().iter().map(summand_json).collect();
            let value = json!({
                "case": dec.case_used.as_str(),
                "suspension": summands,
                "stabilization": stabilization_json(dec.stabilization),
                "text": dec.render_suspension(),
            });
            Ok(emit(out.json, dec.render_suspension(), value))
        }
        Command::Homology {
            spec,
            term,
            suspension,
            out,
        } => {
            let mut g = match term {
                Some(t) if spec.is_empty() => homology_of_term(&parse_term(&t)?).map_err(|e| usage(e.to_string()))?,
                Some(_) => return Err(usage("--term cannot be combined with manifold flags")),
                None => homology_of_manifold(&spec.to_spec()?),
            };
            if suspension {
                g = suspend(&g).map_err(|e| usage(e.to_string()))?;
            }
            let value = json!({"suspended": suspension, "homology": homology_json(&g)});
            Ok(emit(out.json, g.to_string(), value))
        }
        Command::Classify {
            spec,
            base,
            group,
            t,
            s,
            primes,
            out,
        } => {
            let group = parse_group(&group)?;
            let primes = parse_primes(primes.as_deref().unwrap_or(""))?;
            let (verdict, case) = match base {
                Some(b) if spec.is_empty() => {
                    let base = match b.as_str() {
                        "S4" | "S^4" => ClassBase::S4,
                        "CP2" | "CP^2" => ClassBase::Cp2,
                        other => return Err(usage(format!("invalid value {other:?} for --base"))),
                    };
                    (classify_base(group, base, t, s, &primes)?, Value::Null)
                }
                Some(_) => return Err(usage("--base cannot be combined with manifold flags")),
                None => {
                    let spec = spec.to_spec()?;
                    (classify(group, &spec, t, s, &primes)?, json!(case_name(&spec)))
                }
            };
            let value = json!({"case": case, "group": group, "t": t, "s": s, "verdict": verdict});
            Ok(emit(out.json, verdict.to_string(), value))
        }
        Command::Snf { matrix, out } => {
            let snf = smith_normal_form(&parse_matrix(&matrix)?);
            let factors: Vec<String> = snf.invariant_factors.iter().map(ToString::to_string).collect();
            let value = json!({"invariant_factors": factors, "rank": snf.rank});
            Ok(emit(out.json, factors.join(" "), value))
        }
        Command::Chain { boundaries, out } => {
            let mats = boundaries
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(parse_matrix)
                .collect::<Result<Vec<_>, _>>()?;
            let g = chain_homology(&mats).map_err(|e| usage(e.to_string()))?;
            let value = json!({"homology": homology_json(&g)});
            Ok(emit(out.json, g.to_string(), value))
        }
        Command::Parse { spec, term, gauge, out } => match (term, gauge, spec.is_empty()) {
            (Some(t), None, true) => {
                let t = parse_term(&t)?;
                let summands: Vec<SummandJson> = t.display_order().iter().map(summand_json).collect();
                Ok(emit(
                    out.json,
                    t.to_string(),
                    json!({"term": t.to_string(), "summands": summands}),
                ))
            }
            (None, Some(g), true) => {
                let g = parse_gauge(&g)?;
                Ok(emit(
                    out.json,
                    g.to_string(),
                    json!({"gauge": g.to_string(), "value": gauge_json(&g)}),
                ))
            }
            (None, None, false) => {
                let spec = spec.to_spec()?;
                let cyclic: Vec<Value> = spec
                    .pi1
                    .cyclic_factors()
                    .iter()
                    .map(|c| json!({"p": c.prime(), "r": c.exponent()}))
                    .collect();
                let value = json!({
                    "pi1": spec.pi1.to_string(),
                    "free_rank": spec.pi1.free_rank(),
                    "cyclic": cyclic,
                    "b2": spec.b2,
                    "sigma_f_trivial": spec.sigma_f_trivial,
                    "case": case_name(&spec),
                });
                Ok(emit(out.json, spec.to_string(), value))
            }
            _ => Err(usage("parse takes exactly one of --term, --gauge, or manifold flags")),
        },
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {first}\n"),
            };
        }
    };
    match run(cli) {
        Ok(text) => Outcome {
            code: 0,
            stdout: format!("{text}\n"),
            stderr: String::new(),
        },
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        execute(std::iter::once("gaugesplit").chain(args.iter().copied()))
    }

    #[test]
    fn decompose_text() {
        let out = run_args(&[
            "decompose",
            "--pi1",
            "Z/3",
            "--b2",
            "2",
            "--sigma-f",
            "nontrivial",
            "--t",
            "4",
        ]);
        assert_eq!(out.code, 0);
        assert_eq!(
            out.stdout.trim_end(),
            "SM = SCP^2 v P^4(3) v S^3 v P^3(3); G_4(M) = G_4(CP^2) x O^3G{3} x O^2G x O^2G{3}"
        );
    }

    #[test]
    fn classify_text() {
        let out = run_args(&[
            "classify", "--group", "SU(2)", "--pi1", "Z", "--b2", "0", "--spin", "true", "--t", "5", "--s", "17",
        ]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("integral: Yes"), "{}", out.stdout);
    }

    #[test]
    fn snf_text() {
        let out = run_args(&["snf", "--matrix", "[[1,0],[0,1]]"]);
        assert_eq!(out.stdout, "1 1\n");
    }

    #[test]
    fn exit_codes() {
        let out = run_args(&["decompose", "--pi1", "Z/2", "--b2", "1", "--t", "1"]);
        assert_eq!(out.code, 2);
        assert_eq!(out.stderr, "error: even torsion prime\n");
        let out = run_args(&[
            "decompose",
            "--pi1",
            "1",
            "--b2",
            "0",
            "--sigma-f",
            "nontrivial",
            "--t",
            "1",
        ]);
        assert_eq!(out.code, 2);
        assert_eq!(out.stderr, "error: nontrivial Σf with b2 = 0\n");
        let out = run_args(&[
            "decompose",
            "--pi1",
            "1",
            "--b2",
            "1",
            "--sigma-f",
            "trivial",
            "--spin",
            "false",
            "--t",
            "1",
        ]);
        assert_eq!(out.code, 1);
        let out = run_args(&["decompose", "--b2", "1", "--t", "1"]);
        assert_eq!(out.code, 1);
        let out = run_args(&["frobnicate"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.starts_with("error:"));
        assert_eq!(out.stderr.lines().count(), 1);
        let out = run_args(&["decompose", "--pi1", "Z*Z/3", "--b2", "1", "--t", "1", "--d", "-1"]);
        assert_eq!(out.code, 1);
    }

    #[test]
    fn negative_t() {
        let out = run_args(&["decompose", "--pi1", "1", "--b2", "0", "--t", "-3"]);
        assert_eq!(out.stdout, "SM = S^5; G_-3(M) = G_-3(S^4)\n");
    }

    #[test]
    fn json_round_trip() {
        for args in [
            vec![
                "decompose",
                "--pi1",
                "Z*Z/3",
                "--b2",
                "1",
                "--t",
                "7",
                "--group",
                "SU(3)",
                "--json",
            ],
            vec![
                "decompose",
                "--pi1",
                "Z*Z/3*Z/25",
                "--b2",
                "2",
                "--sigma-f",
                "nontrivial",
                "--t",
                "2",
                "--d",
                "2",
                "--json",
            ],
            vec!["decompose", "--pi1", "Z/9", "--b2", "0", "--t", "0", "--json"],
        ] {
            let out = run_args(&args);
            assert_eq!(out.code, 0, "{}", out.stderr);
            let v: Value = serde_json::from_str(&out.stdout).unwrap();
            let back = decomposition_from_json(&v).unwrap();
            assert_eq!(back.to_string(), v["text"].as_str().unwrap());
            let mut text_args = args.clone();
            text_args.pop();
            assert_eq!(run_args(&text_args).stdout.trim_end(), back.to_string());
        }
    }

    #[test]
    fn homology_and_parse() {
        let out = run_args(&["homology", "--pi1", "Z/3", "--b2", "1", "--suspension"]);
        assert_eq!(out.stdout, "H0 = Z\nH1 = 0\nH2 = Z/3\nH3 = Z + Z/3\nH4 = 0\nH5 = Z\n");
        let out = run_args(&["homology", "--term", "SCP^2 v P^3(9)"]);
        assert_eq!(out.stdout, "H0 = Z\nH1 = 0\nH2 = Z/9\nH3 = Z\nH4 = 0\nH5 = Z\n");
        let out = run_args(&["parse", "--pi1", "Z/27 * Z/5 * Z", "--b2", "3", "--spin", "false"]);
        assert_eq!(out.stdout, "pi1 = Z*Z/5*Z/27; b2 = 3; sigma-f = nontrivial\n");
        let out = run_args(&["parse", "--term", "S^3 v S^5 v *"]);
        assert_eq!(out.stdout, "S^5 v S^3\n");
        let out = run_args(&["chain", "--boundaries", "[[0]];[[9]]"]);
        assert_eq!(out.stdout, "H0 = Z\nH1 = Z/9\nH2 = 0\nH3 = 0\nH4 = 0\nH5 = 0\n");
    }

    #[test]
    fn classify_base_flag() {
        let out = run_args(&[
            "classify", "--group", "SU(5)", "--base", "S4", "--t", "1", "--s", "2", "--primes", "2",
        ]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("p=2: No"), "{}", out.stdout);
        let out = run_args(&["classify", "--group", "SU(5)", "--base", "S5", "--t", "1", "--s", "2"]);
        assert_eq!(out.code, 1);
    }

    #[test]
    fn deterministic() {
        let args = ["decompose", "--pi1", "Z*Z*Z/9*Z/5", "--b2", "3", "--t", "11", "--json"];
        assert_eq!(run_args(&args), run_args(&args));
    }
}
