use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bruhat_cluster::cgl::{self, CGLPresentation, NFPoly};
use bruhat_cluster::coxeter::{check_xi, gamma_subset, xi_enumerate, CartanData, DoubleWordData, Perm};
use bruhat_cluster::dbc::{
    bfz_seed, bz_seed, sigma_seed, BowtiePresentation, BzVariant, FrameConvention, GradingComponent,
};
use bruhat_cluster::json::{self, BzJson, CartanJson, DoubleWordJson, PresentationJson, SeedJson};
use bruhat_cluster::seed::QuantumSeed;
use bruhat_cluster::verify::{verify_double_word, verify_seed, VerifyOptions};
use bruhat_cluster::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bruhat-cluster", version, about = "Quantum seeds of double Bruhat cells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit seeds for a pair of reduced words.
    Seed(SeedArgs),
    /// Apply a sequence of mutations with a compatibility check at each step.
    Mutate(MutateArgs),
    /// Run the verification sweeps and report per named check.
    Verify(VerifyArgs),
    /// List the permutations in Xi_n (or Gamma_n).
    XiList(XiArgs),
    /// Normal form of a product of generators in a shipped or supplied presentation.
    CglNf(CglArgs),
}

#[derive(Args, Clone)]
struct WordArgs {
    /// Cartan type such as `A2`, or a family letter together with --rank.
    #[arg(long = "type")]
    cartan_type: String,
    /// Rank when --type is a bare family letter.
    #[arg(long)]
    rank: Option<usize>,
    /// Comma-separated reduced word for w (may be empty).
    #[arg(long, default_value = "")]
    w: String,
    /// Comma-separated reduced word for u (may be empty).
    #[arg(long, default_value = "")]
    u: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    PlainLabels,
    OwnLabels,
}

#[derive(Clone, Copy, ValueEnum)]
enum Grading {
    First,
    Second,
}

#[derive(Args, Clone)]
struct SeedArgs {
    #[command(flatten)]
    words: WordArgs,
    /// `id`, `wN`, `all-xi` or a comma-separated permutation of 1..N+M.
    #[arg(long, default_value = "id")]
    sigma: String,
    /// Berenstein-Zelevinsky seed on the plain labels.
    #[arg(long, conflicts_with_all = ["mbz", "bfz"])]
    bz: bool,
    /// Berenstein-Zelevinsky seed on the modified labels.
    #[arg(long, conflicts_with = "bfz")]
    mbz: bool,
    /// Seed at the longest element with the BFZ exchange matrix.
    #[arg(long)]
    bfz: bool,
    /// Graded reduction of a BZ-type seed by its first r indices.
    #[arg(long)]
    reduce: bool,
    /// Labels used for the frame of a BZ-type seed.
    #[arg(long, value_enum, default_value = "plain-labels")]
    convention: Convention,
    /// Degree component used by --reduce.
    #[arg(long, value_enum, default_value = "first")]
    grading: Grading,
    /// Write the JSON output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MutateArgs {
    /// Seed JSON file; otherwise the seed is generated from the word flags.
    #[arg(long)]
    seed: Option<PathBuf>,
    #[arg(long = "type")]
    cartan_type: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, default_value = "")]
    w: String,
    #[arg(long, default_value = "")]
    u: String,
    #[arg(long, default_value = "id")]
    sigma: String,
    #[arg(long)]
    bz: bool,
    #[arg(long)]
    mbz: bool,
    #[arg(long)]
    bfz: bool,
    #[arg(long)]
    reduce: bool,
    #[arg(long, value_enum, default_value = "plain-labels")]
    convention: Convention,
    #[arg(long, value_enum, default_value = "first")]
    grading: Grading,
    /// Comma-separated 1-based mutation indices.
    #[arg(long)]
    sequence: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify a single seed JSON file instead of a pair of words.
    #[arg(long)]
    seed: Option<PathBuf>,
    #[arg(long = "type")]
    cartan_type: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, default_value = "")]
    w: String,
    #[arg(long, default_value = "")]
    u: String,
    /// Check the seeds for every member of Xi instead of a representative subset.
    #[arg(long)]
    all_xi: bool,
    #[arg(long, value_enum, default_value = "plain-labels")]
    convention: Convention,
    #[arg(long, value_enum, default_value = "first")]
    grading: Grading,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct XiArgs {
    /// Permutation length.
    #[arg(long)]
    n: usize,
    /// List only the subset Gamma_n with its (i, j) labels.
    #[arg(long)]
    gamma: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CglArgs {
    /// `sl2`, `a2` or a presentation JSON file.
    #[arg(long, default_value = "sl2")]
    presentation: String,
    /// Apply the shipped normalizing rescaling (a2 only).
    #[arg(long)]
    rescaled: bool,
    /// Comma-separated 1-based generator indices, multiplied left to right.
    #[arg(long, default_value = "")]
    word: String,
    /// Print the presentation and its audit instead of a product.
    #[arg(long)]
    show: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Invalid(String),
    Incompatible(Value),
    Checks(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Invalid(format!("bad {what}: {s:?}"))))
        .collect()
}

fn parse_cartan(label: &str, rank: Option<usize>) -> Result<CartanData, Failure> {
    Ok(match rank {
        Some(r) => CartanJson { family: label.to_string(), rank: r }.to_cartan()?,
        None => CartanData::from_label(label)?,
    })
}

fn convention(c: Convention) -> FrameConvention {
    match c {
        Convention::PlainLabels => FrameConvention::PlainLabels,
        Convention::OwnLabels => FrameConvention::OwnLabels,
    }
}

fn grading(g: Grading) -> GradingComponent {
    match g {
        Grading::First => GradingComponent::First,
        Grading::Second => GradingComponent::Second,
    }
}

fn parse_sigma(s: &str, pres: &BowtiePresentation) -> Result<Vec<Perm>, Failure> {
    let n = pres.len();
    Ok(match s {
        "id" => vec![(0..n).collect()],
        "wN" => vec![pres.longest()],
        "all-xi" => xi_enumerate(n).collect(),
        _ => {
            let p = parse_list(s, "sigma")?;
            if p.len() != n || p.iter().any(|&x| x == 0 || x > n) {
                return Err(Failure::Invalid(format!("sigma must permute 1..{n}")));
            }
            let p: Perm = p.iter().map(|x| x - 1).collect();
            check_xi(&p)?;
            vec![p]
        }
    })
}

fn one_based(p: &[usize]) -> Vec<usize> {
    p.iter().map(|x| x + 1).collect()
}

fn header(cartan: &CartanData, w: &[usize], u: &[usize]) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("cartan".into(), json!(CartanJson::from(cartan)));
    m.insert("w".into(), json!(w));
    m.insert("u".into(), json!(u));
    m
}

struct Generated {
    cartan: CartanData,
    w: Vec<usize>,
    u: Vec<usize>,
    /// `(description, seed, extra fields)`.
    seeds: Vec<(Value, QuantumSeed)>,
}

#[allow(clippy::too_many_arguments)]
fn generate(
    words: &WordArgs,
    sigma: &str,
    bz: bool,
    mbz: bool,
    bfz: bool,
    reduce: bool,
    conv: Convention,
    grad: Grading,
) -> Result<Generated, Failure> {
    let cartan = parse_cartan(&words.cartan_type, words.rank)?;
    let w = parse_list(&words.w, "w")?;
    let u = parse_list(&words.u, "u")?;
    let pres = BowtiePresentation::build(&cartan, &w, &u)?;
    let mut seeds = Vec::new();
    if bz || mbz {
        let variant = if bz { BzVariant::Plain } else { BzVariant::Modified };
        let data = bz_seed(&cartan, &w, &u, variant, convention(conv))?;
        let mut desc = serde_json::to_value(BzJson::from(&data)).expect("serializable");
        let seed = if reduce {
            let red = data.reduced(grading(grad))?;
            desc["reduced"] = json!(true);
            red
        } else {
            data.seed.clone()
        };
        desc.as_object_mut().expect("object").remove("seed");
        seeds.push((desc, seed));
    } else if reduce {
        return Err(Failure::Invalid("--reduce applies to --bz or --mbz seeds".into()));
    } else if bfz {
        seeds.push((json!({"kind": "bfz"}), bfz_seed(&pres)?));
    } else {
        for p in parse_sigma(sigma, &pres)? {
            let s = sigma_seed(&pres, &p)?;
            seeds.push((json!({"kind": "sigma", "sigma": one_based(&p)}), s));
        }
    }
    Ok(Generated { cartan, w, u, seeds })
}

fn cmd_seed(a: &SeedArgs) -> Outcome {
    let g = generate(&a.words, &a.sigma, a.bz, a.mbz, a.bfz, a.reduce, a.convention, a.grading)?;
    let mut out = header(&g.cartan, &g.w, &g.u);
    let dwd = DoubleWordData::new(&g.cartan, &g.w, &g.u)?;
    out.insert("double_word".into(), json!(DoubleWordJson::from(&dwd)));
    let seeds: Vec<Value> = g
        .seeds
        .iter()
        .map(|(desc, s)| {
            let mut v = desc.clone();
            v["seed"] = json!(SeedJson::from(s));
            v
        })
        .collect();
    out.insert("seeds".into(), Value::Array(seeds));
    Ok(Value::Object(out))
}

fn read_file(p: &Path) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))
}

fn cmd_mutate(a: &MutateArgs) -> Outcome {
    let start = match (&a.seed, &a.cartan_type) {
        (Some(path), _) => json::seed_from_str(&read_file(path)?)?,
        (None, Some(t)) => {
            let words = WordArgs { cartan_type: t.clone(), rank: a.rank, w: a.w.clone(), u: a.u.clone() };
            let mut g = generate(&words, &a.sigma, a.bz, a.mbz, a.bfz, a.reduce, a.convention, a.grading)?;
            if g.seeds.len() != 1 {
                return Err(Failure::Invalid("mutate needs exactly one seed".into()));
            }
            g.seeds.remove(0).1
        }
        (None, None) => return Err(Failure::Invalid("give --seed or --type".into())),
    };
    let sequence = parse_list(&a.sequence, "sequence")?;
    let mut steps = Vec::new();
    let rep = start.check_compatible();
    steps.push(json!({"step": 0, "compatible": rep.pass, "summary": rep.summary()}));
    if !rep.pass {
        return Err(Failure::Incompatible(json!({"error": "initial seed is not compatible", "steps": steps})));
    }
    let mut current = start.clone();
    for (i, &k) in sequence.iter().enumerate() {
        if k == 0 || k > current.size() {
            return Err(Failure::Invalid(format!("mutation index {k} out of range")));
        }
        current = match current.mutate(k - 1) {
            Ok(s) => s,
            Err(Error::NotExchangeable(k)) => return Err(Failure::Invalid(format!("index {k} is not exchangeable"))),
            Err(e) => {
                steps.push(json!({"step": i + 1, "index": k, "compatible": false, "summary": e.to_string()}));
                return Err(Failure::Incompatible(json!({"error": "incompatible intermediate", "steps": steps})));
            }
        };
        let rep = current.check_compatible();
        steps.push(json!({"step": i + 1, "index": k, "compatible": rep.pass, "summary": rep.summary()}));
        if !rep.pass {
            return Err(Failure::Incompatible(json!({"error": "incompatible intermediate", "steps": steps})));
        }
    }
    Ok(json!({
        "sequence": sequence,
        "steps": steps,
        "returns_to_start": current == start,
        "seed": SeedJson::from(&current),
    }))
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let report = match (&a.seed, &a.cartan_type) {
        (Some(path), _) => {
            let seed = json::seed_from_str(&read_file(path)?)?;
            verify_seed(&seed, &path.display().to_string())
        }
        (None, Some(t)) => {
            let cartan = parse_cartan(t, a.rank)?;
            let w = parse_list(&a.w, "w")?;
            let u = parse_list(&a.u, "u")?;
            let opts =
                VerifyOptions { all_xi: a.all_xi, convention: convention(a.convention), component: grading(a.grading) };
            verify_double_word(&cartan, &w, &u, opts)?
        }
        (None, None) => return Err(Failure::Invalid("give --seed or --type".into())),
    };
    let v = serde_json::to_value(&report).expect("serializable");
    if report.pass {
        Ok(v)
    } else {
        Err(Failure::Checks(v))
    }
}

fn cmd_xi(a: &XiArgs) -> Outcome {
    if a.gamma {
        let list: Vec<Value> =
            gamma_subset(a.n).into_iter().map(|((i, j), p)| json!({"i": i, "j": j, "sigma": one_based(&p)})).collect();
        Ok(json!({"n": a.n, "count": list.len(), "gamma": list}))
    } else {
        let list: Vec<Vec<usize>> = xi_enumerate(a.n).map(|p| one_based(&p)).collect();
        Ok(json!({"n": a.n, "count": list.len(), "xi": list}))
    }
}

fn load_presentation(a: &CglArgs) -> Result<CGLPresentation, Failure> {
    let pres = match a.presentation.as_str() {
        "sl2" => cgl::sl2_presentation(),
        "a2" => cgl::a2_presentation(),
        path => json::presentation_from_str(&read_file(Path::new(path))?)?,
    };
    if !a.rescaled {
        return Ok(pres);
    }
    if a.presentation != "a2" {
        return Err(Failure::Invalid("--rescaled is only defined for a2".into()));
    }
    Ok(pres.rescale(&cgl::a2_rescaling())?.0)
}

fn cmd_cgl(a: &CglArgs) -> Outcome {
    let pres = load_presentation(a)?;
    if a.show {
        let audit = pres.audit(200, 0);
        return Ok(json!({"presentation": PresentationJson::from(&pres), "audit": audit}));
    }
    let word = parse_list(&a.word, "word")?;
    if let Some(&k) = word.iter().find(|&&k| k == 0 || k > pres.n) {
        return Err(Failure::Invalid(format!("generator {k} out of range 1..={}", pres.n)));
    }
    let gens: Vec<NFPoly> = word.iter().map(|&k| pres.gen(k - 1)).collect();
    let refs: Vec<&NFPoly> = gens.iter().collect();
    let p = cgl::nf_product(&pres, &refs)?;
    let leading = p.leading_term().ok().map(|(c, f)| json!({"coeff": json::laurent_json(&c), "exponent": f}));
    Ok(json!({"word": word, "text": p.to_string(), "terms": json::poly_json(&p), "leading": leading}))
}

fn emit(v: &Value, out: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Seed(a) => (cmd_seed(a), a.out.clone()),
        Command::Mutate(a) => (cmd_mutate(a), a.out.clone()),
        Command::Verify(a) => (cmd_verify(a), a.out.clone()),
        Command::XiList(a) => (cmd_xi(a), a.out.clone()),
        Command::CglNf(a) => (cmd_cgl(a), a.out.clone()),
    };
    let (value, code) = match result {
        Ok(v) => (v, 0),
        Err(Failure::Invalid(msg)) => {
            eprintln!("{}", json!({"error": "validation", "message": msg}));
            return ExitCode::from(2);
        }
        Err(Failure::Incompatible(v)) => {
            eprintln!("{v}");
            return ExitCode::from(3);
        }
        Err(Failure::Checks(v)) => (v, 1),
    };
    if let Err(msg) = emit(&value, out.as_deref()) {
        eprintln!("{}", json!({"error": "io", "message": msg}));
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
