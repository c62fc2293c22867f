use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use poscomp::dual::{self, AlgebraInstance, AxiomConfig, MultOp, TheoryOp, TopReading, ValuedMap};
use poscomp::format::{
    self, ApproximantDoc, CoalgebraDoc, CoconeDoc, ConeDoc, DensityDoc, FormatError, HomDoc,
    MapDoc, MetricDoc, MetricSubsetDoc, ParallelDoc, PartialMapDoc, PosetDoc, SeparationDoc,
    SeqDoc, SubsetDoc, ValuedMapDoc,
};
use poscomp::metric;
use poscomp::poscomp::{self as pc, LimitMode};
use poscomp::poset::PosetError;
use poscomp::quantale::{self as q, Rat01};
use poscomp::seq;
use poscomp::vietoris;

use crate::report::{Item, Report, Status};
use crate::suite::{self, SuiteConfig};

#[derive(Parser, Debug)]
#[command(
    name = "poscomp",
    version,
    about = "Exact finite ordered spaces, their duals and Vietoris coalgebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub group: Group,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// Grid denominator for scalars and enumerated maps
    #[arg(long, global = true)]
    pub grid: Option<u32>,
    /// Closure depth for generated subalgebras
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Tolerance P/Q
    #[arg(long, global = true)]
    pub eps: Option<String>,
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest poset size in exhaustive sweeps
    #[arg(long = "max-size", global = true)]
    pub max_size: Option<usize>,
    /// Write the JSON report here instead of standard output
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Operations of the unit interval quantale
    Quantale {
        #[command(subcommand)]
        cmd: QuantaleCmd,
    },
    /// Finite posets, limits and colimits
    Poset {
        #[command(subcommand)]
        cmd: PosetCmd,
    },
    /// The upper-set hyperspace monad
    Vietoris {
        #[command(subcommand)]
        cmd: VietorisCmd,
    },
    /// Coalgebras of the hyperspace monad
    Coalg {
        #[command(subcommand)]
        cmd: CoalgCmd,
    },
    /// The algebra of monotone [0,1]-valued maps
    Dual {
        #[command(subcommand)]
        cmd: DualCmd,
    },
    /// Sequence operators
    Delta {
        #[command(subcommand)]
        cmd: DeltaCmd,
    },
    /// Finite metric spaces
    Metric {
        #[command(subcommand)]
        cmd: MetricCmd,
    },
    /// Property suites
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
    /// Parse, re-serialize and re-parse value files
    Roundtrip { files: Vec<PathBuf> },
}

#[derive(Subcommand, Debug)]
pub enum QuantaleCmd {
    /// u ⊙ v
    Tensor { u: String, v: String },
    /// v ⋔ u
    Pitchfork { v: String, u: String },
    /// v ⊖ u
    Minus { v: String, u: String },
    /// u ⊕ v
    Oplus { u: String, v: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Poscomp,
    CompactHausdorff,
}

#[derive(Subcommand, Debug)]
pub enum PosetCmd {
    /// Parse a poset file and print its cover relation
    Validate { file: PathBuf },
    /// Product of two posets with its projections
    Product { left: PathBuf, right: PathBuf },
    /// Equalizer of the pair {"f": map, "g": map}
    Equalizer { file: PathBuf },
    /// Surjection-embedding factorization of a map file
    Factorize { file: PathBuf },
    /// Whether the legs of a cone file form an initial cone
    Initial { file: PathBuf },
    /// Whether a cone over a codirected diagram is a limit
    LimitCheck {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Poscomp)]
        mode: ModeArg,
    },
    /// Whether a set cocone over a filtered diagram is a colimit
    ColimitCheck { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum VietorisCmd {
    /// Upper sets of a poset ordered by reverse inclusion
    Object { file: PathBuf },
    /// Direct-image map Vf of a map file
    Map { file: PathBuf },
    /// The unit x ↦ ↑x
    Unit { file: PathBuf },
    /// The multiplication taking unions
    Mult { file: PathBuf },
    /// Check the unit and associativity laws at one poset
    MonadLaws { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CoalgCmd {
    /// Whether a map is a coalgebra homomorphism
    CheckHom { file: PathBuf },
    /// Reflexivity and transitivity of a coalgebra in both readings
    Classify { file: PathBuf },
    /// Kleisli composite `second ∘ first`
    Compose { second: PathBuf, first: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OpArg {
    Bottom,
    Top,
    Join,
    Mult,
    Tensor,
    Power,
    Minus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MultArg {
    Lukasiewicz,
    TruncatedSum,
}

impl From<MultArg> for MultOp {
    fn from(m: MultArg) -> Self {
        match m {
            MultArg::Lukasiewicz => MultOp::Lukasiewicz,
            MultArg::TruncatedSum => MultOp::TruncatedSum,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TopArg {
    Greatest,
    Verbatim,
}

#[derive(Subcommand, Debug)]
pub enum DualCmd {
    /// Apply one operation pointwise to valued-map files
    Op {
        #[arg(long, value_enum)]
        op: OpArg,
        /// Scalar for the unary operations
        #[arg(long)]
        scalar: Option<String>,
        /// Poset for the nullary operations
        #[arg(long)]
        poset: Option<PathBuf>,
        files: Vec<PathBuf>,
    },
    /// Precompose a valued map with a monotone map
    Precompose { map: PathBuf, valued: PathBuf },
    /// Check the axioms on [0,1] (no file) or on CX for a poset file
    CheckAxioms {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MultArg::Lukasiewicz)]
        mult: MultArg,
        #[arg(long, value_enum, default_value_t = TopArg::Greatest)]
        top: TopArg,
        /// Largest number of carrier elements used as samples
        #[arg(long, default_value_t = 12)]
        samples: usize,
    },
    /// Indicator maps of all upper sets
    Indicators { file: PathBuf },
    /// Closure of the given valued maps
    Closure { files: Vec<PathBuf> },
    /// Approximate targets from generators (default: principal indicators)
    Density { file: PathBuf },
    /// Least monotone extension of a partial assignment
    Extend { file: PathBuf },
    /// Separating family for disjoint sets A and B
    Separate { file: PathBuf },
    /// Pairs of maps whose agreement set is a given subset
    EqPresent { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum DeltaCmd {
    /// δ = lim ∘ γ ∘ μ
    Eval {
        file: Option<PathBuf>,
        #[arg(long)]
        seq: Option<PathBuf>,
    },
    /// Running join
    Mu { file: PathBuf },
    /// Clipping recursion vₙ₊₁ = min(uₙ₊₁, vₙ + 2⁻ⁿ)
    Gamma { file: PathBuf },
    /// Membership in 𝒞
    InC { file: PathBuf },
    /// Limit of a 𝒞-sequence
    Lim { file: PathBuf },
    /// Build a 𝒞-sequence from {"samples": [...], "target": ...}
    Approx {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long)]
        uniform: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum MetricCmd {
    /// Specialisation order x ≤ y ⟺ d(x,y) = 0
    Order { file: PathBuf },
    /// max(d(x,y), d(y,x))
    Symmetrize { file: PathBuf },
    /// Whether distinct points are at positive distance
    Separated { file: PathBuf },
    /// The {0,1}-valued metric of a poset file
    Canonical { file: PathBuf },
    /// Product metric Σₙ 2^{-(n+1)} dₙ
    Product { files: Vec<PathBuf> },
    /// Net whose distance functionals form an initial cone
    Net { file: PathBuf },
    /// Check the initiality inequality for a given subset
    CheckInitial { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SuiteCmd {
    Run {
        /// Restrict to these suites
        #[arg(long)]
        only: Vec<String>,
    },
}

/// Each verb with the library operations it exposes.
pub const VERBS: &[(&str, &[&str])] = &[
    ("quantale tensor", &["luk_tensor"]),
    ("quantale pitchfork", &["pitchfork"]),
    ("quantale minus", &["trunc_minus"]),
    ("quantale oplus", &["oplus"]),
    ("poset validate", &["validate_poset"]),
    ("poset product", &["product"]),
    ("poset equalizer", &["equalizer"]),
    ("poset factorize", &["image_factorize"]),
    ("poset initial", &["is_initial_cone"]),
    ("poset limit-check", &["limit_check"]),
    ("poset colimit-check", &["colimit_check_set"]),
    ("vietoris object", &["vietoris_object"]),
    ("vietoris map", &["vietoris_map"]),
    ("vietoris unit", &["unit"]),
    ("vietoris mult", &["mult"]),
    ("vietoris monad-laws", &[]),
    ("coalg check-hom", &["is_coalgebra_hom"]),
    ("coalg classify", &["classify"]),
    ("coalg compose", &["kleisli_compose"]),
    ("dual op", &["pointwise_op"]),
    ("dual precompose", &["hom_action"]),
    ("dual check-axioms", &["check_axioms"]),
    ("dual indicators", &["upset_indicators"]),
    ("dual closure", &["generate_closure"]),
    ("dual density", &["density_check"]),
    ("dual extend", &["monotone_extend"]),
    ("dual separate", &["separating_family"]),
    ("dual eq-present", &["equalizer_presentation"]),
    ("delta eval", &["delta"]),
    ("delta mu", &["mu"]),
    ("delta gamma", &["gamma"]),
    ("delta in-c", &["in_class_C"]),
    ("delta lim", &["lim_seq"]),
    ("delta approx", &["build_C_approximant"]),
    ("metric order", &["order_of"]),
    ("metric symmetrize", &["symmetrize"]),
    ("metric separated", &["is_separated"]),
    ("metric canonical", &["canonical_metric"]),
    ("metric product", &["product_metric"]),
    ("metric net", &["epsilon_net"]),
    ("metric check-initial", &["check_yoneda_initial"]),
    ("suite run", &[]),
    ("roundtrip", &["roundtrip"]),
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    File { path: String, message: String },
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("{0}")]
    Rational(#[from] q::RatError),
    #[error("{0}")]
    Dual(#[from] dual::DualError),
    #[error("{0}")]
    Diagram(#[from] pc::DiagramError),
    #[error("{0}")]
    Vietoris(#[from] vietoris::VietorisError),
    #[error("{0}")]
    Seq(#[from] seq::SeqError),
    #[error("{0}")]
    Metric(#[from] metric::MetricError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// The item name a report uses for this error.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::File { .. } => "FileError",
            CliError::Format(FormatError::Poset(PosetError::Cycle(..))) => "CycleError",
            CliError::Format(FormatError::Poset(_)) => "PosetError",
            CliError::Format(FormatError::Map(_)) => "MapError",
            CliError::Format(FormatError::Diagram(_)) | CliError::Diagram(_) => "DiagramError",
            CliError::Format(FormatError::Vietoris(_)) | CliError::Vietoris(_) => "CoalgebraError",
            CliError::Format(FormatError::Dual(_)) | CliError::Dual(_) => "DualError",
            CliError::Format(FormatError::Seq(_)) | CliError::Seq(_) => "SequenceError",
            CliError::Format(FormatError::Metric(_)) | CliError::Metric(_) => "MetricError",
            CliError::Format(_) | CliError::Rational(_) => "ParseError",
            CliError::Usage(_) => "UsageError",
        }
    }
}

type Outcome = Result<(Vec<Item>, Option<Value>), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::File {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Format(FormatError::Json(e)))
}

fn rat(s: &str) -> Result<Rat01, CliError> {
    Ok(s.parse()?)
}

fn done(name: &str, result: Value) -> Outcome {
    Ok((vec![Item::pass(name)], Some(result)))
}

fn verdict(name: &str, ok: bool, result: Value) -> Outcome {
    Ok((vec![Item::verdict(name, ok)], Some(result)))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn valued(m: &ValuedMap) -> Value {
    to_value(&ValuedMapDoc::from_valued(m))
}

impl Cli {
    pub fn command_name(&self) -> String {
        let (group, verb) = match &self.group {
            Group::Quantale { cmd } => ("quantale", format!("{cmd:?}")),
            Group::Poset { cmd } => ("poset", format!("{cmd:?}")),
            Group::Vietoris { cmd } => ("vietoris", format!("{cmd:?}")),
            Group::Coalg { cmd } => ("coalg", format!("{cmd:?}")),
            Group::Dual { cmd } => ("dual", format!("{cmd:?}")),
            Group::Delta { cmd } => ("delta", format!("{cmd:?}")),
            Group::Metric { cmd } => ("metric", format!("{cmd:?}")),
            Group::Suite { cmd } => ("suite", format!("{cmd:?}")),
            Group::Roundtrip { .. } => return "roundtrip".into(),
        };
        let head = verb.split([' ', '{', '(']).next().unwrap_or_default();
        format!("{group} {}", kebab(head))
    }
}

fn kebab(camel: &str) -> String {
    let mut out = String::new();
    for (i, c) in camel.chars().enumerate() {
        if c.is_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

/// Runs one command and assembles its report; timing is left at zero.
pub fn run(cli: &Cli) -> Report {
    let name = cli.command_name();
    match dispatch(cli) {
        Ok((items, result)) => Report::new(&name, cli.flags.seed, items, result),
        Err(e) => Report::new(
            &name,
            cli.flags.seed,
            vec![Item::error(e.kind(), e.to_string())],
            None,
        ),
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let f = &cli.flags;
    match &cli.group {
        Group::Quantale { cmd } => quantale(cmd),
        Group::Poset { cmd } => poset(cmd),
        Group::Vietoris { cmd } => vietoris_cmd(cmd),
        Group::Coalg { cmd } => coalg(cmd),
        Group::Dual { cmd } => dual_cmd(cmd, f),
        Group::Delta { cmd } => delta(cmd),
        Group::Metric { cmd } => metric_cmd(cmd),
        Group::Suite { cmd } => suite_cmd(cmd, f),
        Group::Roundtrip { files } => roundtrip(files),
    }
}

fn quantale(cmd: &QuantaleCmd) -> Outcome {
    let (name, v) = match cmd {
        QuantaleCmd::Tensor { u, v } => ("u⊙v", q::luk_tensor(&rat(u)?, &rat(v)?)),
        QuantaleCmd::Pitchfork { v, u } => ("v⋔u", q::pitchfork(&rat(v)?, &rat(u)?)),
        QuantaleCmd::Minus { v, u } => ("v⊖u", q::trunc_minus(&rat(v)?, &rat(u)?)),
        QuantaleCmd::Oplus { u, v } => ("u⊕v", q::oplus(&rat(u)?, &rat(v)?)),
    };
    done(name, json!(v))
}

fn poset(cmd: &PosetCmd) -> Outcome {
    match cmd {
        PosetCmd::Validate { file } => {
            let x = load::<PosetDoc>(file)?.to_poset()?;
            done("valid poset", to_value(&PosetDoc::from_poset(&x)))
        }
        PosetCmd::Product { left, right } => {
            let x = load::<PosetDoc>(left)?.to_poset()?;
            let y = load::<PosetDoc>(right)?.to_poset()?;
            let p = pc::product(&x, &y);
            done(
                "product",
                json!({
                    "poset": PosetDoc::from_poset(&p.poset),
                    "first": MapDoc::from_map(&p.first),
                    "second": MapDoc::from_map(&p.second),
                }),
            )
        }
        PosetCmd::Equalizer { file } => {
            let doc: ParallelDoc = load(file)?;
            let (e, m) = pc::equalizer(&doc.f.to_map()?, &doc.g.to_map()?)?;
            done(
                "equalizer",
                json!({"poset": PosetDoc::from_poset(&e), "inclusion": MapDoc::from_map(&m)}),
            )
        }
        PosetCmd::Factorize { file } => {
            let f = load::<MapDoc>(file)?.to_map()?;
            let (e, m) = pc::image_factorize(&f);
            done(
                "image factorization",
                json!({"surjection": MapDoc::from_map(&e), "embedding": MapDoc::from_map(&m)}),
            )
        }
        PosetCmd::Initial { file } => {
            let (_, c) = load::<ConeDoc>(file)?.to_cone()?;
            verdict(
                "initial cone",
                pc::is_initial_cone(&c),
                json!(pc::is_initial_cone(&c)),
            )
        }
        PosetCmd::LimitCheck { file, mode } => {
            let (d, c) = load::<ConeDoc>(file)?.to_cone()?;
            let mode = match mode {
                ModeArg::Poscomp => LimitMode::PosComp,
                ModeArg::CompactHausdorff => LimitMode::CompactHausdorff,
            };
            let ok = pc::limit_check(&d, &c, mode)?;
            verdict("limit cone", ok, json!(ok))
        }
        PosetCmd::ColimitCheck { file } => {
            let (d, c) = load::<CoconeDoc>(file)?.to_cocone()?;
            let ok = pc::colimit_check_set(&d, &c)?;
            verdict("colimit cocone", ok, json!(ok))
        }
    }
}

fn vietoris_cmd(cmd: &VietorisCmd) -> Outcome {
    match cmd {
        VietorisCmd::Object { file } => {
            let x = load::<PosetDoc>(file)?.to_poset()?;
            let v = vietoris::vietoris_object(&x);
            done("hyperspace", to_value(&PosetDoc::from_poset(v.poset())))
        }
        VietorisCmd::Map { file } => {
            let f = load::<MapDoc>(file)?.to_map()?;
            done(
                "Vf",
                to_value(&MapDoc::from_map(&vietoris::vietoris_map(&f))),
            )
        }
        VietorisCmd::Unit { file } => {
            let x = load::<PosetDoc>(file)?.to_poset()?;
            done("e_X", to_value(&MapDoc::from_map(&vietoris::unit(&x))))
        }
        VietorisCmd::Mult { file } => {
            let x = load::<PosetDoc>(file)?.to_poset()?;
            done("m_X", to_value(&MapDoc::from_map(&vietoris::mult(&x))))
        }
        VietorisCmd::MonadLaws { file } => {
            let x = load::<PosetDoc>(file)?.to_poset()?;
            Ok((suite::monad_laws_at(&x), None))
        }
    }
}

fn coalg(cmd: &CoalgCmd) -> Outcome {
    match cmd {
        CoalgCmd::CheckHom { file } => {
            let (f, c1, c2) = load::<HomDoc>(file)?.to_parts()?;
            let ok = vietoris::is_coalgebra_hom(&f, &c1, &c2);
            verdict("coalgebra homomorphism", ok, json!(ok))
        }
        CoalgCmd::Classify { file } => {
            let c = load::<CoalgebraDoc>(file)?.to_coalgebra()?;
            done("classification", to_value(&vietoris::classify(&c)))
        }
        CoalgCmd::Compose { second, first } => {
            let b = load::<CoalgebraDoc>(second)?.to_coalgebra()?;
            let a = load::<CoalgebraDoc>(first)?.to_coalgebra()?;
            let c = vietoris::kleisli_compose(&b, &a)?;
            done("composite", to_value(&CoalgebraDoc::from_coalgebra(&c)))
        }
    }
}

fn load_valued(path: &Path) -> Result<ValuedMap, CliError> {
    Ok(load::<ValuedMapDoc>(path)?.to_valued()?)
}

fn dual_cmd(cmd: &DualCmd, f: &Flags) -> Outcome {
    match cmd {
        DualCmd::Op {
            op,
            scalar,
            poset,
            files,
        } => {
            let args = files
                .iter()
                .map(|p| load_valued(p))
                .collect::<Result<Vec<_>, _>>()?;
            let space = match (poset, args.first()) {
                (Some(p), _) => load::<PosetDoc>(p)?.to_poset()?,
                (None, Some(a)) => a.space().clone(),
                (None, None) => {
                    return Err(CliError::Usage("nullary operations need --poset".into()))
                }
            };
            let need_scalar = || -> Result<Rat01, CliError> {
                rat(scalar
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("this operation needs --scalar".into()))?)
            };
            let op = match op {
                OpArg::Bottom => TheoryOp::Bottom,
                OpArg::Top => TheoryOp::Top,
                OpArg::Join => TheoryOp::Join,
                OpArg::Mult => TheoryOp::Mult(MultOp::Lukasiewicz),
                OpArg::Tensor => TheoryOp::Tensor(need_scalar()?),
                OpArg::Power => TheoryOp::Power(need_scalar()?),
                OpArg::Minus => TheoryOp::Minus(need_scalar()?),
            };
            let refs: Vec<&ValuedMap> = args.iter().collect();
            let out = dual::pointwise_op(&space, &op, &refs)?;
            done(&op.symbol(), valued(&out))
        }
        DualCmd::Precompose { map, valued: v } => {
            let g = load::<MapDoc>(map)?.to_map()?;
            let psi = load_valued(v)?;
            let out = dual::hom_action(&g)(&psi)?;
            done("ψ∘f", valued(&out))
        }
        DualCmd::CheckAxioms {
            file,
            mult,
            top,
            samples,
        } => {
            let inst = match file {
                None => AlgebraInstance::unit_interval(f.grid.unwrap_or(8), (*mult).into()),
                Some(p) => {
                    let x = load::<PosetDoc>(p)?.to_poset()?;
                    AlgebraInstance::grid_cx(&x, f.grid.unwrap_or(4), (*mult).into())
                }
            };
            let cfg = AxiomConfig {
                top: match top {
                    TopArg::Greatest => TopReading::Greatest,
                    TopArg::Verbatim => TopReading::Verbatim,
                },
                ..AxiomConfig::default()
            };
            let picked = inst.spread_samples(*samples);
            let rep = dual::check_axioms(&inst, &picked, &cfg)?;
            let items = rep
                .results
                .iter()
                .map(|r| Item {
                    name: r.axiom.clone(),
                    status: if r.status == dual::Status::Pass {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                    anchor: Some(r.axiom.clone()),
                    cases: Some(r.cases),
                    witness: r.witness.as_ref().map(to_value),
                })
                .collect();
            Ok((
                items,
                Some(json!({"carrier": inst.carrier().len(), "samples": picked.len()})),
            ))
        }
        DualCmd::Indicators { file } => {
            let x = load::<PosetDoc>(file)?.to_poset()?;
            let maps: Vec<Value> = dual::upset_indicators(&x).iter().map(valued).collect();
            done("indicators", json!(maps))
        }
        DualCmd::Closure { files } => {
            let gens = files
                .iter()
                .map(|p| load_valued(p))
                .collect::<Result<Vec<_>, _>>()?;
            let cl = dual::generate_closure(&gens, f.depth.unwrap_or(1), f.grid.unwrap_or(4))?;
            let maps: Vec<Value> = cl.iter().map(valued).collect();
            done("closure", json!({"size": cl.len(), "maps": maps}))
        }
        DualCmd::Density { file } => {
            let input = load::<DensityDoc>(file)?.to_parts()?;
            let gens = input
                .generators
                .unwrap_or_else(|| dual::upset_indicators(&input.space));
            let eps = match &f.eps {
                Some(e) => rat(e)?,
                None => Rat01::zero(),
            };
            let rep = dual::density_check(
                &input.space,
                &gens,
                &input.targets,
                &eps,
                f.depth.unwrap_or(2),
                f.grid.unwrap_or(4),
            )?;
            let mut items = vec![Item::verdict(
                "generators separate and are initial",
                rep.precondition_holds,
            )];
            for (k, it) in rep.items.iter().enumerate() {
                items.push(
                    Item::verdict(format!("target {k} within ε"), it.within_epsilon)
                        .with_witness(to_value(it)),
                );
            }
            Ok((items, Some(to_value(&rep))))
        }
        DualCmd::Extend { file } => {
            let (x, partial) = load::<PartialMapDoc>(file)?.to_parts()?;
            let m = dual::monotone_extend(&x, &partial)?;
            done("least monotone extension", valued(&m))
        }
        DualCmd::Separate { file } => {
            let sep = load::<SeparationDoc>(file)?.to_parts()?;
            let fam = dual::separating_family(&sep.space, &sep.a, &sep.b, &sep.u)?;
            done(
                "separating family",
                json!(fam.iter().map(valued).collect::<Vec<_>>()),
            )
        }
        DualCmd::EqPresent { file } => {
            let (x, a) = load::<SubsetDoc>(file)?.to_parts()?;
            let pairs = dual::equalizer_presentation(&x, &a)?;
            let agree = dual::agreement_set(&x, &pairs);
            let pairs_json: Vec<Value> = pairs
                .iter()
                .map(|(h, k)| json!({"h": valued(h), "k": valued(k)}))
                .collect();
            verdict(
                "agreement set equals A",
                agree == a,
                json!({"pairs": pairs_json, "agreement": SubsetDoc::from_parts(&x, &agree).subset}),
            )
        }
    }
}

fn load_seq(path: &Path) -> Result<seq::Seq01, CliError> {
    Ok(load::<SeqDoc>(path)?.to_seq()?)
}

fn delta(cmd: &DeltaCmd) -> Outcome {
    match cmd {
        DeltaCmd::Eval { file, seq: flag } => {
            let path = flag
                .as_ref()
                .or(file.as_ref())
                .ok_or_else(|| CliError::Usage("delta eval needs a sequence file".into()))?;
            let s = load_seq(path)?;
            done("δ", json!(seq::delta(&s)))
        }
        DeltaCmd::Mu { file } => done("μ", to_value(&SeqDoc::from_seq(&seq::mu(&load_seq(file)?)))),
        DeltaCmd::Gamma { file } => done(
            "γ",
            to_value(&SeqDoc::from_seq(&seq::gamma(&load_seq(file)?))),
        ),
        DeltaCmd::InC { file } => {
            let ok = seq::in_class_c(&load_seq(file)?);
            verdict("in 𝒞", ok, json!(ok))
        }
        DeltaCmd::Lim { file } => {
            let s = load_seq(file)?;
            done("lim", json!(seq::lim_seq(&s, &Rat01::zero())?))
        }
        DeltaCmd::Approx { file, k, uniform } => {
            let doc: ApproximantDoc = load(file)?;
            let shift = if *uniform {
                seq::Shift::Uniform
            } else {
                seq::Shift::Excess
            };
            let s = seq::build_c_approximant(&doc.samples, &doc.target, *k, shift)?;
            done("𝒞-approximant", to_value(&SeqDoc::from_seq(&s)))
        }
    }
}

fn load_metric(path: &Path) -> Result<metric::FinMetric, CliError> {
    Ok(load::<MetricDoc>(path)?.to_metric()?)
}

fn metric_cmd(cmd: &MetricCmd) -> Outcome {
    match cmd {
        MetricCmd::Order { file } => {
            let m = load_metric(file)?;
            let o = metric::order_of(&m);
            let n = m.len();
            let pairs: Vec<(String, String)> = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| x != y && o.le(x, y))
                .map(|(x, y)| (m.names()[x].clone(), m.names()[y].clone()))
                .collect();
            let poset = o.to_poset().map(|p| PosetDoc::from_poset(&p));
            done(
                "specialisation order",
                json!({"leq": pairs, "separated": metric::is_separated(&m), "poset": poset}),
            )
        }
        MetricCmd::Symmetrize { file } => done(
            "symmetrization",
            to_value(&MetricDoc::from_metric(&metric::symmetrize(&load_metric(
                file,
            )?))),
        ),
        MetricCmd::Separated { file } => {
            let ok = metric::is_separated(&load_metric(file)?);
            verdict("separated", ok, json!(ok))
        }
        MetricCmd::Canonical { file } => {
            let x = load::<PosetDoc>(file)?.to_poset()?;
            done(
                "canonical metric",
                to_value(&MetricDoc::from_metric(&metric::canonical_metric(&x))),
            )
        }
        MetricCmd::Product { files } => {
            let ms = files
                .iter()
                .map(|p| load_metric(p))
                .collect::<Result<Vec<_>, _>>()?;
            let p = metric::product_metric(&ms)?;
            let separated = metric::is_separated(&p);
            let order = metric::order_of(&p);
            let factors: Vec<_> = ms.iter().map(metric::order_of).collect();
            let n = p.len();
            let sizes: Vec<usize> = ms.iter().map(|m| m.len()).collect();
            let coords = |mut k: usize| -> Vec<usize> {
                let mut c = vec![0; sizes.len()];
                for (i, s) in sizes.iter().enumerate().rev() {
                    c[i] = k % s;
                    k /= s;
                }
                c
            };
            let agrees = (0..n).all(|a| {
                (0..n).all(|b| {
                    let (ca, cb) = (coords(a), coords(b));
                    order.le(a, b) == factors.iter().enumerate().all(|(i, o)| o.le(ca[i], cb[i]))
                })
            });
            Ok((
                vec![
                    Item::pass("product metric"),
                    Item::verdict("order of product = product of orders", agrees),
                ],
                Some(json!({"metric": MetricDoc::from_metric(&p), "separated": separated})),
            ))
        }
        MetricCmd::Net { file } => {
            let m = load_metric(file)?;
            let net = metric::epsilon_net(&m);
            let ok = metric::check_yoneda_initial(&m, &net);
            let names: Vec<&str> = net.ones().map(|i| m.names()[i].as_str()).collect();
            verdict("net is initial", ok, json!(names))
        }
        MetricCmd::CheckInitial { file } => {
            let (m, s) = load::<MetricSubsetDoc>(file)?.to_parts()?;
            let ok = metric::check_yoneda_initial(&m, &s);
            verdict("distance functionals are initial", ok, json!(ok))
        }
    }
}

fn suite_cmd(cmd: &SuiteCmd, f: &Flags) -> Outcome {
    let SuiteCmd::Run { only } = cmd;
    let cfg = SuiteConfig {
        seed: f.seed,
        max_size: f.max_size.unwrap_or(4),
        grid: f.grid,
    };
    for name in only {
        if !suite::SUITES.iter().any(|(n, _)| n == name) {
            return Err(CliError::Usage(format!("unknown suite {name:?}")));
        }
    }
    let items = if only.is_empty() {
        suite::run_all(&cfg)
    } else {
        suite::SUITES
            .iter()
            .filter(|(n, _)| only.iter().any(|o| o == n))
            .flat_map(|(n, run)| {
                run(&cfg).into_iter().map(move |mut it| {
                    it.name = format!("{n}: {}", it.name);
                    it
                })
            })
            .collect()
    };
    Ok((items, None))
}

fn roundtrip(files: &[PathBuf]) -> Outcome {
    if files.is_empty() {
        return Err(CliError::Usage("roundtrip needs at least one file".into()));
    }
    let mut items = Vec::new();
    let mut canonical = BTreeMap::new();
    for p in files {
        let text = read(p)?;
        let doc = format::Document::from_json(&text)?;
        let ok = format::roundtrip(&text)?;
        items.push(Item::verdict(p.display().to_string(), ok).with_witness(json!(doc.kind())));
        canonical.insert(p.display().to_string(), doc.to_value());
    }
    Ok((items, Some(to_value(&canonical))))
}
