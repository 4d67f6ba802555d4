//! `qdual` command-line front end: argument parsing, dispatch to
//! `qdual-core`, and deterministic JSON output.
//!
//! Every response is one JSON object with the keys `input`, `result` and
//! `engine`. Rationals are strings (`"3/2"`), weights are arrays of them in
//! the fundamental-weight basis, and object keys are sorted.

use std::ffi::OsString;

use clap::{Args, CommandFactory, Parser, Subcommand};
use serde_json::{json, Map, Value};

use qdual_core::number::{fmt_rat, parse_rat};
use qdual_core::params::{self, PsiOutcome};
use qdual_core::qnum::{qnum_base, QValue, Sign};
use qdual_core::rootsys::{self, Root};
use qdual_core::unitarity::{self, ScanOptions, UnitarityVerdict};
use qdual_core::weights;
use qdual_core::weyl;
use qdual_core::{
    CategoryOParam, ComplexScalar, ComplexWeight, Error, HalfInt, ParamPair, QParam, Rat,
    RootSystem, Weight, WeylWord,
};

/// Subcommand path and the library operation it runs. `unitary decide` is
/// the one composite: rank-one decision, type-A shift, or scan.
pub const DISPATCH: &[(&str, &str)] = &[
    ("root info", "build_root_system"),
    ("root pairing", "pairing"),
    ("root coroot-pairing", "coroot_pairing"),
    ("root roots", "positive_roots"),
    ("weyl reflect", "reflect"),
    ("weyl apply", "apply_word"),
    ("weyl dominant", "dominant_representative"),
    ("weyl dot", "dot_apply"),
    ("weyl orbit", "orbit"),
    ("weyl longest", "longest_word"),
    ("weight mult", "freudenthal_multiplicity"),
    ("weight dim", "weyl_dimension"),
    ("weight ktype-mult", "ktype_multiplicity"),
    ("weight spins", "sl2_spin_content"),
    ("param dominant", "is_dominant"),
    ("param small", "is_small"),
    ("param almost-real", "is_almost_real"),
    ("param x-reduce", "x_reduce"),
    ("param equiv", "equivalent"),
    ("param canonical", "canonicalize"),
    ("param hermitian", "hermitian_exists"),
    ("param reduce-a", "reduce_small_typeA"),
    ("param gap-oracle", "coweight_gap_oracle"),
    ("param cat-o", "from_category_O"),
    ("param to-cat-o", "to_category_O"),
    ("param psi", "psi_nonvanishing"),
    ("param min-ktype", "minimal_ktype"),
    ("param embedding", "embedding_direction"),
    ("unitary qnum", "qnum"),
    ("unitary eigen", "rank_one_eigenvalue"),
    ("unitary rank1-det", "rank_one_det"),
    ("unitary det", "intertwiner_det"),
    ("unitary rank1", "signature_rank1"),
    ("unitary scan", "unitarity_scan"),
    ("unitary compare", "compare_q_classical"),
    ("unitary shift-a", "typeA_shift_reduce"),
    ("unitary decide", "decide"),
];

#[derive(Parser, Debug)]
#[command(name = "qdual", version, about = "Exact unitary-dual computations for q-deformed complex groups")]
pub struct Cli {
    #[command(subcommand)]
    group: Group,
    /// Deformation parameter 0 < q <= 1, as p/q.
    #[arg(allow_hyphen_values = true, long, global = true, default_value = "1/2")]
    q: String,
    /// K-type levels above the minimal K-type examined by scans.
    #[arg(allow_hyphen_values = true, long, global = true, default_value_t = 12)]
    cutoff: u32,
    /// Uniform samples along continuity paths.
    #[arg(allow_hyphen_values = true, long, global = true, default_value_t = 64)]
    steps: u32,
    /// Worker threads for K-type scans.
    #[arg(allow_hyphen_values = true, long, global = true)]
    jobs: Option<usize>,
    /// Pretty-print with this many spaces; compact when absent.
    #[arg(allow_hyphen_values = true, long = "json-indent", global = true)]
    json_indent: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Cartan data and roots.
    Root {
        #[command(subcommand)]
        cmd: RootCmd,
    },
    /// Weyl group actions.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Weight multiplicities and K-types.
    Weight {
        #[command(subcommand)]
        cmd: WeightCmd,
    },
    /// The parameter space (P x X)/W.
    Param {
        #[command(subcommand)]
        cmd: ParamCmd,
    },
    /// q-numbers, intertwiners and unitarity.
    Unitary {
        #[command(subcommand)]
        cmd: UnitaryCmd,
    },
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Cartan type such as A2, B3, G2.
    #[arg(value_name = "TYPE")]
    ty: String,
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// λ in the weight lattice, e.g. 1,0 (or 0 for the zero weight).
    #[arg(allow_hyphen_values = true, long)]
    lambda: String,
    /// Real part of ν.
    #[arg(allow_hyphen_values = true, long = "nu-re", default_value = "0")]
    nu_re: String,
    /// Imaginary part of ν in units of 2π/|log q|.
    #[arg(allow_hyphen_values = true, long = "nu-im", default_value = "0")]
    nu_im: String,
}

#[derive(Args, Debug)]
struct CatOArgs {
    #[arg(allow_hyphen_values = true, long = "big-re")]
    big_re: String,
    #[arg(allow_hyphen_values = true, long = "big-im", default_value = "0")]
    big_im: String,
    #[arg(allow_hyphen_values = true, long = "prime-re")]
    prime_re: String,
    #[arg(allow_hyphen_values = true, long = "prime-im", default_value = "0")]
    prime_im: String,
}

#[derive(Args, Debug)]
struct ScalarArgs {
    #[arg(allow_hyphen_values = true, long = "z-re", default_value = "0")]
    z_re: String,
    #[arg(allow_hyphen_values = true, long = "z-im", default_value = "0")]
    z_im: String,
}

#[derive(Subcommand, Debug)]
enum RootCmd {
    /// Cartan matrix, form, ρ and Weyl group order.
    Info(TypeArg),
    /// (x, y) under the normalized form.
    Pairing {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        x: String,
        #[arg(allow_hyphen_values = true, long)]
        y: String,
    },
    /// (x, α^∨) for a positive root α given in ω coordinates.
    CorootPairing {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        x: String,
        #[arg(allow_hyphen_values = true, long)]
        root: String,
    },
    /// All positive roots.
    Roots(TypeArg),
}

#[derive(Subcommand, Debug)]
enum WeylCmd {
    Reflect {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        index: usize,
        #[arg(allow_hyphen_values = true, long)]
        weight: String,
    },
    /// Apply a word (last letter acts first).
    Apply {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long, default_value = "")]
        word: String,
        #[arg(allow_hyphen_values = true, long)]
        weight: String,
    },
    Dominant {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        weight: String,
    },
    /// w.x = w(x + ρ) − ρ.
    Dot {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long, default_value = "")]
        word: String,
        #[arg(allow_hyphen_values = true, long)]
        weight: String,
    },
    Orbit {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        weight: String,
    },
    Longest(TypeArg),
}

#[derive(Subcommand, Debug)]
enum WeightCmd {
    /// dim V(μ)_λ.
    Mult {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        mu: String,
        #[arg(allow_hyphen_values = true, long)]
        lambda: String,
    },
    Dim {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        mu: String,
    },
    /// Spin content of V(μ)_λ under sl2 of a simple root.
    Spins {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        mu: String,
        #[arg(allow_hyphen_values = true, long)]
        lambda: String,
        #[arg(allow_hyphen_values = true, long)]
        index: usize,
    },
    /// Multiplicity of the K-type μ in the principal series with parameter λ.
    KtypeMult {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        mu: String,
        #[arg(allow_hyphen_values = true, long)]
        lambda: String,
    },
}

#[derive(Subcommand, Debug)]
enum ParamCmd {
    Dominant {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long = "nu-re")]
        nu_re: String,
        #[arg(allow_hyphen_values = true, long = "nu-im", default_value = "0")]
        nu_im: String,
    },
    Small {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        x: String,
    },
    AlmostReal {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long = "nu-re", default_value = "0")]
        nu_re: String,
        #[arg(allow_hyphen_values = true, long = "nu-im", default_value = "0")]
        nu_im: String,
    },
    XReduce {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long = "nu-re", default_value = "0")]
        nu_re: String,
        #[arg(allow_hyphen_values = true, long = "nu-im", default_value = "0")]
        nu_im: String,
    },
    Equiv {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
        #[arg(allow_hyphen_values = true, long)]
        lambda2: String,
        #[arg(allow_hyphen_values = true, long = "nu2-re", default_value = "0")]
        nu2_re: String,
        #[arg(allow_hyphen_values = true, long = "nu2-im", default_value = "0")]
        nu2_im: String,
    },
    Canonical {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
    },
    Hermitian {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
    },
    /// λ with x − λ small, for type A.
    ReduceA {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        x: String,
    },
    GapOracle {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long, default_value_t = 10)]
        bound: u32,
    },
    /// (Λ, Λ') to (λ, ν).
    CatO {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        c: CatOArgs,
    },
    /// (λ, ν) to (Λ, Λ').
    ToCatO {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
    },
    Psi {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        c: CatOArgs,
    },
    MinKtype {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        lambda: String,
    },
    Embedding {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
    },
}

#[derive(Subcommand, Debug)]
enum UnitaryCmd {
    /// (t)_{q^base}.
    Qnum {
        #[arg(allow_hyphen_values = true, long = "t-re")]
        t_re: String,
        #[arg(allow_hyphen_values = true, long = "t-im", default_value = "0")]
        t_im: String,
        #[arg(allow_hyphen_values = true, long, default_value = "1")]
        base: String,
    },
    /// Rank-one eigenvalue on spin s.
    Eigen {
        #[arg(allow_hyphen_values = true, long = "alpha-len-sq", default_value = "2")]
        alpha_len_sq: String,
        #[arg(allow_hyphen_values = true, long)]
        m: String,
        #[arg(allow_hyphen_values = true, long)]
        s: String,
        #[command(flatten)]
        z: ScalarArgs,
    },
    Rank1Det {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        mu: String,
        #[arg(allow_hyphen_values = true, long)]
        lambda: String,
        #[arg(allow_hyphen_values = true, long)]
        index: usize,
        #[command(flatten)]
        z: ScalarArgs,
    },
    /// Determinant of the intertwiner for a reduced word on the K-type μ.
    Det {
        #[command(flatten)]
        t: TypeArg,
        #[arg(allow_hyphen_values = true, long)]
        mu: String,
        #[command(flatten)]
        p: ParamArgs,
        #[arg(allow_hyphen_values = true, long, default_value = "")]
        word: String,
    },
    Rank1 {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
    },
    Scan {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
    },
    Compare {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
        /// Comma-separated q values; defaults to --q.
        #[arg(allow_hyphen_values = true, long)]
        qs: Option<String>,
    },
    ShiftA {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
    },
    /// Unitarity verdict by the best available method.
    Decide {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        p: ParamArgs,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let engine = json!({ "q": cli.q, "cutoff": cli.cutoff });
    let mut input = Map::new();
    let outcome = cli.q.parse::<QParam>().and_then(|q| {
        let ctx = Ctx {
            q,
            opts: ScanOptions {
                cutoff: cli.cutoff,
                steps: cli.steps,
                jobs: cli.jobs,
            },
        };
        dispatch(&cli.group, &ctx, &mut input)
    });
    match outcome {
        Ok(result) => {
            let doc = json!({ "input": Value::Object(input), "result": result, "engine": engine });
            Output {
                code: EXIT_OK,
                stdout: render(&doc, cli.json_indent),
                stderr: String::new(),
            }
        }
        Err(e) if e.is_domain() => {
            let doc = json!({
                "input": Value::Object(input),
                "error": { "kind": error_kind(&e), "message": e.to_string() },
                "engine": engine,
            });
            Output {
                code: EXIT_DOMAIN,
                stdout: render(&doc, cli.json_indent),
                stderr: String::new(),
            }
        }
        Err(e) => {
            let mut help = Cli::command();
            Output {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {e}\n\n{}\n", help.render_usage()),
            }
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::WrongType { .. } => "WrongType",
        Error::NonIntegralDifference(_) => "NonIntegralDifference",
        Error::PoleInDenominator(_) => "PoleInDenominator",
        Error::PoleOnPath(_) => "PoleOnPath",
        Error::NotAlmostReal => "NotAlmostReal",
        Error::OrbitTooLarge { .. } => "OrbitTooLarge",
        Error::NotDominant(_) => "NotDominant",
        Error::NotIntegral(_) => "NotIntegral",
        Error::NotHalfInteger(_) => "NotHalfInteger",
        Error::NotReduced { .. } => "NotReduced",
        _ => "Usage",
    }
}

fn render(doc: &Value, indent: Option<usize>) -> String {
    let mut out = match indent {
        None => serde_json::to_string(doc).expect("serializable"),
        Some(n) => {
            let pad = vec![b' '; n];
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
            let mut buf = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
            serde::Serialize::serialize(doc, &mut ser).expect("serializable");
            String::from_utf8(buf).expect("utf-8")
        }
    };
    out.push('\n');
    out
}

struct Ctx {
    q: QParam,
    opts: ScanOptions,
}

type Res = qdual_core::Result<Value>;

fn system(t: &TypeArg, input: &mut Map<String, Value>) -> qdual_core::Result<RootSystem> {
    let rs = RootSystem::parse(&t.ty)?;
    input.insert("type".into(), Value::String(rs.label()));
    Ok(rs)
}

fn weight(rs: &RootSystem, s: &str, name: &str, input: &mut Map<String, Value>) -> qdual_core::Result<Weight> {
    let w = if s.trim() == "0" {
        Weight::zero(rs.rank())
    } else {
        s.parse::<Weight>()?
    };
    if w.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: w.rank(),
        });
    }
    input.insert(name.into(), weight_json(&w));
    Ok(w)
}

fn complex(
    rs: &RootSystem,
    re: &str,
    im: &str,
    name: &str,
    input: &mut Map<String, Value>,
) -> qdual_core::Result<ComplexWeight> {
    let mut scratch = Map::new();
    let nu = ComplexWeight::new(
        weight(rs, re, "re", &mut scratch)?,
        weight(rs, im, "im", &mut scratch)?,
    );
    input.insert(name.into(), complex_json(&nu));
    Ok(nu)
}

fn param(rs: &RootSystem, p: &ParamArgs, input: &mut Map<String, Value>) -> qdual_core::Result<ParamPair> {
    let lambda = weight(rs, &p.lambda, "lambda", input)?;
    let nu = complex(rs, &p.nu_re, &p.nu_im, "nu", input)?;
    Ok(ParamPair::new(lambda, nu))
}

fn cat_o(rs: &RootSystem, c: &CatOArgs, input: &mut Map<String, Value>) -> qdual_core::Result<CategoryOParam> {
    Ok(CategoryOParam {
        big_lambda: complex(rs, &c.big_re, &c.big_im, "big_lambda", input)?,
        lambda_prime: complex(rs, &c.prime_re, &c.prime_im, "lambda_prime", input)?,
    })
}

fn rational(s: &str, name: &str, input: &mut Map<String, Value>) -> qdual_core::Result<Rat> {
    let r = parse_rat(s)?;
    input.insert(name.into(), rat_json(&r));
    Ok(r)
}

fn scalar(z: &ScalarArgs, input: &mut Map<String, Value>) -> qdual_core::Result<ComplexScalar> {
    let re = parse_rat(&z.z_re)?;
    let im = parse_rat(&z.z_im)?;
    input.insert("z".into(), json!({ "re": rat_json(&re), "im": rat_json(&im) }));
    Ok(ComplexScalar::new(re, im))
}

fn half_int(s: &str, name: &str, input: &mut Map<String, Value>) -> qdual_core::Result<HalfInt> {
    HalfInt::from_rat(&rational(s, name, input)?)
}

fn word(s: &str, input: &mut Map<String, Value>) -> qdual_core::Result<WeylWord> {
    let w: WeylWord = s.parse()?;
    input.insert("word".into(), word_json(&w));
    Ok(w)
}

fn index(rs: &RootSystem, i: usize, input: &mut Map<String, Value>) -> qdual_core::Result<usize> {
    if i == 0 || i > rs.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: rs.rank(),
        });
    }
    input.insert("index".into(), json!(i));
    Ok(i)
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn weight_json(w: &Weight) -> Value {
    Value::Array(w.coords().iter().map(rat_json).collect())
}

fn complex_json(nu: &ComplexWeight) -> Value {
    json!({ "re": weight_json(&nu.re), "im": weight_json(&nu.im) })
}

fn word_json(w: &WeylWord) -> Value {
    json!(w.letters())
}

fn param_json(p: &ParamPair) -> Value {
    json!({ "lambda": weight_json(&p.lambda), "nu": complex_json(&p.nu) })
}

fn root_json(r: &Root) -> Value {
    json!({
        "weight": weight_json(&r.weight),
        "simple_coeffs": r.simple_coeffs,
        "coroot_coeffs": r.coroot_coeffs,
        "length_sq": rat_json(&r.length_sq),
    })
}

fn sign_json(s: Option<Sign>) -> Value {
    s.map_or(Value::Null, |s| Value::String(s.to_string()))
}

fn qvalue_json(v: &QValue) -> Value {
    json!({
        "value": { "re": v.value.re, "im": v.value.im },
        "exact": v.exact.as_ref().map_or(Value::Null, rat_json),
        "exact_sign": sign_json(v.exact_sign),
        "unit_modulus": v.is_unit_modulus,
    })
}

fn verdict_json(v: &UnitarityVerdict) -> Value {
    json!({
        "verdict": v.kind.to_string(),
        "witness": v.witness.as_ref().map_or(Value::Null, |(mu, t)| json!({ "ktype": weight_json(mu), "t": rat_json(t) })),
        "cutoff": v.cutoff.map_or(Value::String("inf".into()), |c| json!(c)),
        "certified_ktypes": v.certified_ktypes,
    })
}

fn dispatch(group: &Group, ctx: &Ctx, input: &mut Map<String, Value>) -> Res {
    match group {
        Group::Root { cmd } => {
            input.insert("command".into(), json!(format!("root {}", root_name(cmd))));
            root_cmd(cmd, input)
        }
        Group::Weyl { cmd } => {
            input.insert("command".into(), json!(format!("weyl {}", weyl_name(cmd))));
            weyl_cmd(cmd, input)
        }
        Group::Weight { cmd } => {
            input.insert("command".into(), json!(format!("weight {}", weight_name(cmd))));
            weight_cmd(cmd, input)
        }
        Group::Param { cmd } => {
            input.insert("command".into(), json!(format!("param {}", param_name(cmd))));
            param_cmd(cmd, ctx, input)
        }
        Group::Unitary { cmd } => {
            input.insert("command".into(), json!(format!("unitary {}", unitary_name(cmd))));
            unitary_cmd(cmd, ctx, input)
        }
    }
}

fn root_name(c: &RootCmd) -> &'static str {
    match c {
        RootCmd::Info(_) => "info",
        RootCmd::Pairing { .. } => "pairing",
        RootCmd::CorootPairing { .. } => "coroot-pairing",
        RootCmd::Roots(_) => "roots",
    }
}

fn weyl_name(c: &WeylCmd) -> &'static str {
    match c {
        WeylCmd::Reflect { .. } => "reflect",
        WeylCmd::Apply { .. } => "apply",
        WeylCmd::Dominant { .. } => "dominant",
        WeylCmd::Dot { .. } => "dot",
        WeylCmd::Orbit { .. } => "orbit",
        WeylCmd::Longest(_) => "longest",
    }
}

fn weight_name(c: &WeightCmd) -> &'static str {
    match c {
        WeightCmd::Mult { .. } => "mult",
        WeightCmd::Dim { .. } => "dim",
        WeightCmd::Spins { .. } => "spins",
        WeightCmd::KtypeMult { .. } => "ktype-mult",
    }
}

fn param_name(c: &ParamCmd) -> &'static str {
    match c {
        ParamCmd::Dominant { .. } => "dominant",
        ParamCmd::Small { .. } => "small",
        ParamCmd::AlmostReal { .. } => "almost-real",
        ParamCmd::XReduce { .. } => "x-reduce",
        ParamCmd::Equiv { .. } => "equiv",
        ParamCmd::Canonical { .. } => "canonical",
        ParamCmd::Hermitian { .. } => "hermitian",
        ParamCmd::ReduceA { .. } => "reduce-a",
        ParamCmd::GapOracle { .. } => "gap-oracle",
        ParamCmd::CatO { .. } => "cat-o",
        ParamCmd::ToCatO { .. } => "to-cat-o",
        ParamCmd::Psi { .. } => "psi",
        ParamCmd::MinKtype { .. } => "min-ktype",
        ParamCmd::Embedding { .. } => "embedding",
    }
}

fn unitary_name(c: &UnitaryCmd) -> &'static str {
    match c {
        UnitaryCmd::Qnum { .. } => "qnum",
        UnitaryCmd::Eigen { .. } => "eigen",
        UnitaryCmd::Rank1Det { .. } => "rank1-det",
        UnitaryCmd::Det { .. } => "det",
        UnitaryCmd::Rank1 { .. } => "rank1",
        UnitaryCmd::Scan { .. } => "scan",
        UnitaryCmd::Compare { .. } => "compare",
        UnitaryCmd::ShiftA { .. } => "shift-a",
        UnitaryCmd::Decide { .. } => "decide",
    }
}

fn root_cmd(cmd: &RootCmd, input: &mut Map<String, Value>) -> Res {
    match cmd {
        RootCmd::Info(t) => {
            let rs = system(t, input)?;
            let form: Vec<Vec<Value>> = rs.form().iter().map(|row| row.iter().map(rat_json).collect()).collect();
            Ok(json!({
                "type": rs.label(),
                "rank": rs.rank(),
                "cartan": rs.cartan(),
                "form": form,
                "form_determinant": rat_json(&rs.form_determinant()),
                "symmetrizer": rs.symmetrizer(),
                "positive_roots": rs.positive_roots().len(),
                "highest_root": weight_json(&rs.highest_root().weight),
                "rho": weight_json(rs.rho()),
                "weyl_order": rs.weyl_order().to_string(),
            }))
        }
        RootCmd::Pairing { t, x, y } => {
            let rs = system(t, input)?;
            let x = weight(&rs, x, "x", input)?;
            let y = weight(&rs, y, "y", input)?;
            Ok(json!({ "pairing": rat_json(&rootsys::pairing(&rs, &x, &y)?) }))
        }
        RootCmd::CorootPairing { t, x, root } => {
            let rs = system(t, input)?;
            let x = weight(&rs, x, "x", input)?;
            let r = weight(&rs, root, "root", input)?;
            let alpha = rs
                .positive_roots()
                .iter()
                .find(|b| b.weight == r)
                .ok_or_else(|| Error::Parse(format!("{r} is not a positive root of {}", rs.label())))?;
            Ok(json!({ "pairing": rat_json(&rootsys::coroot_pairing(&rs, &x, alpha)?) }))
        }
        RootCmd::Roots(t) => {
            let rs = system(t, input)?;
            let roots: Vec<Value> = rootsys::positive_roots(&rs).iter().map(root_json).collect();
            Ok(json!({ "count": roots.len(), "roots": roots }))
        }
    }
}

fn weyl_cmd(cmd: &WeylCmd, input: &mut Map<String, Value>) -> Res {
    match cmd {
        WeylCmd::Reflect { t, index: i, weight: w } => {
            let rs = system(t, input)?;
            let i = index(&rs, *i, input)?;
            let x = weight(&rs, w, "weight", input)?;
            Ok(json!({ "image": weight_json(&weyl::reflect(&rs, i, &x)?) }))
        }
        WeylCmd::Apply { t, word: w, weight: x } => {
            let rs = system(t, input)?;
            let w = word(w, input)?;
            let x = weight(&rs, x, "weight", input)?;
            Ok(json!({ "image": weight_json(&weyl::apply_word(&rs, &w, &x)?) }))
        }
        WeylCmd::Dominant { t, weight: x } => {
            let rs = system(t, input)?;
            let x = weight(&rs, x, "weight", input)?;
            let (d, w) = weyl::dominant_representative(&rs, &x)?;
            Ok(json!({ "dominant": weight_json(&d), "word": word_json(&w) }))
        }
        WeylCmd::Dot { t, word: w, weight: x } => {
            let rs = system(t, input)?;
            let w = word(w, input)?;
            let x = weight(&rs, x, "weight", input)?;
            Ok(json!({ "image": weight_json(&weyl::dot_apply(&rs, &w, &x)?) }))
        }
        WeylCmd::Orbit { t, weight: x } => {
            let rs = system(t, input)?;
            let x = weight(&rs, x, "weight", input)?;
            let orbit = weyl::orbit(&rs, &x)?;
            let points: Vec<Value> = orbit.iter().map(weight_json).collect();
            Ok(json!({ "size": points.len(), "orbit": points }))
        }
        WeylCmd::Longest(t) => {
            let rs = system(t, input)?;
            let w = weyl::longest_word(&rs);
            Ok(json!({ "word": word_json(&w), "length": w.len() }))
        }
    }
}

fn weight_cmd(cmd: &WeightCmd, input: &mut Map<String, Value>) -> Res {
    match cmd {
        WeightCmd::Mult { t, mu, lambda } => {
            let rs = system(t, input)?;
            let mu = weight(&rs, mu, "mu", input)?;
            let lam = weight(&rs, lambda, "lambda", input)?;
            Ok(json!({ "multiplicity": weights::freudenthal_multiplicity(&rs, &mu, &lam)? }))
        }
        WeightCmd::Dim { t, mu } => {
            let rs = system(t, input)?;
            let mu = weight(&rs, mu, "mu", input)?;
            Ok(json!({ "dimension": weights::weyl_dimension(&rs, &mu)?.to_string() }))
        }
        WeightCmd::Spins { t, mu, lambda, index: i } => {
            let rs = system(t, input)?;
            let mu = weight(&rs, mu, "mu", input)?;
            let lam = weight(&rs, lambda, "lambda", input)?;
            let i = index(&rs, *i, input)?;
            let spins = weights::sl2_spin_content(&rs, &mu, &lam, i)?;
            let map: Map<String, Value> = spins.iter().map(|(s, n)| (s.to_string(), json!(n))).collect();
            Ok(json!({
                "spins": map,
                "total": spins.total(),
                "multiplicity_free": spins.is_multiplicity_free(),
            }))
        }
        WeightCmd::KtypeMult { t, mu, lambda } => {
            let rs = system(t, input)?;
            let mu = weight(&rs, mu, "mu", input)?;
            let lam = weight(&rs, lambda, "lambda", input)?;
            Ok(json!({ "multiplicity": weights::ktype_multiplicity(&rs, &mu, &lam)? }))
        }
    }
}

fn param_cmd(cmd: &ParamCmd, ctx: &Ctx, input: &mut Map<String, Value>) -> Res {
    match cmd {
        ParamCmd::Dominant { t, nu_re, nu_im } => {
            let rs = system(t, input)?;
            let nu = complex(&rs, nu_re, nu_im, "nu", input)?;
            Ok(json!({ "dominant": params::is_dominant(&rs, &ctx.q, &nu) }))
        }
        ParamCmd::Small { t, x } => {
            let rs = system(t, input)?;
            let x = weight(&rs, x, "x", input)?;
            Ok(json!({ "small": params::is_small(&rs, &x) }))
        }
        ParamCmd::AlmostReal { t, nu_re, nu_im } => {
            let rs = system(t, input)?;
            let nu = complex(&rs, nu_re, nu_im, "nu", input)?;
            Ok(json!({ "almost_real": params::is_almost_real(&rs, &nu) }))
        }
        ParamCmd::XReduce { t, nu_re, nu_im } => {
            let rs = system(t, input)?;
            let nu = complex(&rs, nu_re, nu_im, "nu", input)?;
            Ok(json!({ "nu": complex_json(&params::x_reduce(&rs, &nu)) }))
        }
        ParamCmd::Equiv { t, p, lambda2, nu2_re, nu2_im } => {
            let rs = system(t, input)?;
            let p1 = param(&rs, p, input)?;
            let p2 = ParamPair::new(
                weight(&rs, lambda2, "lambda2", input)?,
                complex(&rs, nu2_re, nu2_im, "nu2", input)?,
            );
            Ok(json!({ "equivalent": params::equivalent(&rs, &p1, &p2)? }))
        }
        ParamCmd::Canonical { t, p } => {
            let rs = system(t, input)?;
            let p = param(&rs, p, input)?;
            let (c, w) = params::canonicalize(&rs, &p)?;
            Ok(json!({ "canonical": param_json(&c), "word": word_json(&w) }))
        }
        ParamCmd::Hermitian { t, p } => {
            let rs = system(t, input)?;
            let p = param(&rs, p, input)?;
            let w = params::hermitian_exists(&rs, &p)?;
            Ok(json!({ "exists": w.is_some(), "witness": w.as_ref().map_or(Value::Null, word_json) }))
        }
        ParamCmd::ReduceA { t, x } => {
            let rs = system(t, input)?;
            let x = weight(&rs, x, "x", input)?;
            let lam = params::reduce_small_typeA(&rs, &x)?;
            Ok(json!({ "lambda": weight_json(&lam), "remainder": weight_json(&(&x - &lam)) }))
        }
        ParamCmd::GapOracle { t, bound } => {
            let rs = system(t, input)?;
            input.insert("bound".into(), json!(bound));
            Ok(json!({ "holds": params::coweight_gap_oracle(&rs, *bound) }))
        }
        ParamCmd::CatO { t, c } => {
            let rs = system(t, input)?;
            let c = cat_o(&rs, c, input)?;
            Ok(param_json(&params::from_category_o(&rs, &c)?))
        }
        ParamCmd::ToCatO { t, p } => {
            let rs = system(t, input)?;
            let p = param(&rs, p, input)?;
            let c = params::to_category_o(&rs, &p)?;
            Ok(json!({ "big_lambda": complex_json(&c.big_lambda), "lambda_prime": complex_json(&c.lambda_prime) }))
        }
        ParamCmd::Psi { t, c } => {
            let rs = system(t, input)?;
            let c = cat_o(&rs, c, input)?;
            Ok(match params::psi_nonvanishing(&rs, &c)? {
                PsiOutcome::Nonzero => json!({ "nonvanishing": true, "root": Value::Null }),
                PsiOutcome::Vanishes(r) => json!({ "nonvanishing": false, "root": weight_json(&r.weight) }),
            })
        }
        ParamCmd::MinKtype { t, lambda } => {
            let rs = system(t, input)?;
            let lam = weight(&rs, lambda, "lambda", input)?;
            Ok(json!({ "ktype": weight_json(&params::minimal_ktype(&rs, &lam)?) }))
        }
        ParamCmd::Embedding { t, p } => {
            let rs = system(t, input)?;
            let p = param(&rs, p, input)?;
            Ok(json!({ "direction": params::embedding_direction(&rs, &ctx.q, &p)?.to_string() }))
        }
    }
}

fn unitary_cmd(cmd: &UnitaryCmd, ctx: &Ctx, input: &mut Map<String, Value>) -> Res {
    match cmd {
        UnitaryCmd::Qnum { t_re, t_im, base } => {
            let re = rational(t_re, "t_re", input)?;
            let im = rational(t_im, "t_im", input)?;
            let d = rational(base, "base", input)?;
            Ok(qvalue_json(&qnum_base(&ctx.q, &d, &ComplexScalar::new(re, im))))
        }
        UnitaryCmd::Eigen { alpha_len_sq, m, s, z } => {
            let len = rational(alpha_len_sq, "alpha_len_sq", input)?;
            let m = half_int(m, "m", input)?;
            let s = half_int(s, "s", input)?;
            let z = scalar(z, input)?;
            Ok(qvalue_json(&unitarity::rank_one_eigenvalue(&ctx.q, &len, m, s, &z)?))
        }
        UnitaryCmd::Rank1Det { t, mu, lambda, index: i, z } => {
            let rs = system(t, input)?;
            let mu = weight(&rs, mu, "mu", input)?;
            let lam = weight(&rs, lambda, "lambda", input)?;
            let i = index(&rs, *i, input)?;
            let z = scalar(z, input)?;
            Ok(qvalue_json(&unitarity::rank_one_det(&rs, &ctx.q, &mu, &lam, i, &z)?))
        }
        UnitaryCmd::Det { t, mu, p, word: w } => {
            let rs = system(t, input)?;
            let mu = weight(&rs, mu, "mu", input)?;
            let p = param(&rs, p, input)?;
            let w = word(w, input)?;
            Ok(qvalue_json(&unitarity::intertwiner_det(&rs, &ctx.q, &mu, &p, &w)?))
        }
        UnitaryCmd::Rank1 { t, p } => {
            let rs = system(t, input)?;
            let p = param(&rs, p, input)?;
            Ok(verdict_json(&unitarity::signature_rank1(&rs, &ctx.q, &p, ctx.opts.cutoff)?))
        }
        UnitaryCmd::Scan { t, p } => {
            let rs = system(t, input)?;
            let p = param(&rs, p, input)?;
            Ok(verdict_json(&unitarity::unitarity_scan_with(&rs, &ctx.q, &p, &ctx.opts)?))
        }
        UnitaryCmd::Compare { t, p, qs } => {
            let rs = system(t, input)?;
            let p = param(&rs, p, input)?;
            let qs: Vec<QParam> = match qs {
                Some(list) => list.split(',').map(|s| s.trim().parse()).collect::<qdual_core::Result<_>>()?,
                None => vec![ctx.q.clone()],
            };
            input.insert("qs".into(), json!(qs.iter().map(|q| q.to_string()).collect::<Vec<_>>()));
            let report = unitarity::compare_q_classical(&rs, &p, &qs, &ctx.opts)?;
            let verdicts: Vec<Value> = report
                .verdicts
                .iter()
                .map(|(q, v)| {
                    let mut obj = verdict_json(v);
                    obj["q"] = json!(q.to_string());
                    obj
                })
                .collect();
            Ok(json!({ "agree": report.agree, "verdicts": verdicts }))
        }
        UnitaryCmd::ShiftA { t, p } => {
            let rs = system(t, input)?;
            let p = param(&rs, p, input)?;
            Ok(param_json(&unitarity::typeA_shift_reduce(&rs, &p)?))
        }
        UnitaryCmd::Decide { t, p } => {
            let rs = system(t, input)?;
            let p = param(&rs, p, input)?;
            Ok(verdict_json(&unitarity::decide(&rs, &ctx.q, &p, &ctx.opts)?))
        }
    }
}

/// Every leaf subcommand path known to the argument parser.
pub fn leaf_commands() -> Vec<String> {
    let mut out = Vec::new();
    for group in Cli::command().get_subcommands() {
        for leaf in group.get_subcommands() {
            out.push(format!("{} {}", group.get_name(), leaf.get_name()));
        }
    }
    out.sort();
    out
}
