use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use metaquiver::exec::{set_max_threads, Execution};
use metaquiver::grading_algebra::{GradedPresentation, GradingError};
use metaquiver::groups::{check_conditions, choose_representatives, GroupError, MetacyclicParams, RepSystem};
use metaquiver::lattice::{swap_move, Cut, CutSpec, Lattice, LatticeError};
use metaquiver::mckay::{
    mckay_abelian, mckay_metacyclic, phi_morphism, psi_morphism, tilde_quiver, McKayData, McKayError,
};
use metaquiver::quiver::Path;
use metaquiver::superpotential::{
    check_twisted_cyclicity, coefficient, embedded_shape, homogeneity_degree, superpotential_with,
    support_correspondence, Superpotential, SuperpotentialError,
};

const EXIT_CODES: &str = "Exit codes:
  0  success
  2  usage error (bad arguments or input)
  3  group conditions violated
  4  verification failure";

const GOLDEN_M21: &str = include_str!("../../metaquiver/fixtures/golden_m21.json");

#[derive(Parser)]
#[command(name = "metaquiver", version, about = "McKay quivers, twisted superpotentials and cut gradings for metacyclic groups", after_help = EXIT_CODES)]
struct Cli {
    /// Cap on worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check conditions M1-M7 and print derived values.
    Check {
        m: u64,
        r: u64,
        s: u64,
        t: u64,
        #[arg(long)]
        json: bool,
    },
    /// Export Q_A, Q_G or the comparison quiver.
    Quiver {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Which::G)]
        which: Which,
        #[arg(long, value_enum, default_value_t = QuiverFormat::Dot)]
        format: QuiverFormat,
        /// Mark degrees induced by a cut (`canonical:l,k` or a cut JSON file).
        #[arg(long)]
        cut: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List superpotential terms and run verifications.
    Superpotential {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Which::G)]
        which: Which,
        #[arg(long, value_enum)]
        verify: Vec<Verify>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Grade Q_G by a cut and report on the degree-0 algebra.
    Grade {
        #[command(flatten)]
        group: GroupArgs,
        /// `canonical:l,k` or a cut JSON file.
        #[arg(long)]
        cut: String,
        /// Swap degrees at the split vertex j^(l), given as `j,l`; repeatable.
        #[arg(long)]
        swap: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rerun a pinned example and diff it against its fixture.
    Reproduce {
        /// `s3-m21` or `bin-dih`.
        id: String,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Group parameters `m,r,s,t`.
    #[arg(long, value_parser = parse_group)]
    group: [u64; 4],
    /// Use the embedded group G' in GL(s+1).
    #[arg(long)]
    embedded: bool,
    /// Representatives of the orbits, comma separated.
    #[arg(long, value_delimiter = ',')]
    reps: Option<Vec<u64>>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    A,
    G,
    Tilde,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuiverFormat {
    Dot,
    Json,
    Tikz,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verify {
    Cyclicity,
    Support,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Condition(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Condition(_) => 3,
            Failure::Verification(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Condition(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::InvalidInput(_) | GroupError::InvalidRepresentatives(_) => Failure::Usage(e.to_string()),
            GroupError::ConditionViolation(_) | GroupError::NoClosedRepresentatives(_) => {
                Failure::Condition(e.to_string())
            }
            GroupError::NonIntegral(_) => Failure::Verification(e.to_string()),
        }
    }
}

impl From<McKayError> for Failure {
    fn from(e: McKayError) -> Self {
        match e {
            McKayError::Group(g) => g.into(),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Range { .. } | LatticeError::BadPoint(_) | LatticeError::BadDirection(_) => {
                Failure::Usage(e.to_string())
            }
            LatticeError::Incompatible(_) | LatticeError::SwapPrecondition(..) => Failure::Condition(e.to_string()),
            LatticeError::McKay(m) => m.into(),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl From<SuperpotentialError> for Failure {
    fn from(e: SuperpotentialError) -> Self {
        Failure::Verification(e.to_string())
    }
}

impl From<GradingError> for Failure {
    fn from(e: GradingError) -> Self {
        Failure::Verification(e.to_string())
    }
}

fn parse_group(s: &str) -> Result<[u64; 4], String> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|v: Vec<u64>| format!("expected m,r,s,t, got {} values", v.len()))
}

struct Context {
    exec: Execution,
}

struct Job {
    reps: RepSystem,
    embedded: bool,
}

impl Job {
    fn new(g: &GroupArgs) -> Result<Job, Failure> {
        let [m, r, s, t] = g.group;
        let params = MetacyclicParams::new(m, r, s, t)?;
        let reps = match &g.reps {
            Some(list) => RepSystem::with_representatives(&params, list)?,
            None => choose_representatives(&params)?,
        };
        Ok(Job {
            reps,
            embedded: g.embedded,
        })
    }

    fn params(&self) -> &MetacyclicParams {
        self.reps.params()
    }

    fn qa(&self) -> Result<McKayData, Failure> {
        Ok(mckay_abelian(self.params(), self.embedded)?)
    }

    fn qg(&self) -> Result<McKayData, Failure> {
        Ok(mckay_metacyclic(&self.reps, self.embedded)?)
    }
}

fn parse_cut(lat: &Lattice, text: &str) -> Result<Cut, Failure> {
    if let Some(rest) = text.strip_prefix("canonical:") {
        let nums: Vec<u64> = rest
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Usage(format!("cut {text:?}: {e}")))?;
        let [l, k] = nums[..] else {
            return Err(Failure::Usage(format!("cut {text:?}: expected canonical:l,k")));
        };
        return Ok(lat.canonical_cut(l, k)?);
    }
    let raw = fs::read_to_string(text).map_err(|e| Failure::Usage(format!("cut file {text}: {e}")))?;
    let spec: CutSpec = serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("cut file {text}: {e}")))?;
    Ok(lat.cut_from_spec(&spec)?)
}

fn parse_swap(text: &str) -> Result<(u64, u64), Failure> {
    let nums: Vec<u64> = text
        .split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("swap {text:?}: {e}")))?;
    match nums[..] {
        [j, l] => Ok((j, l)),
        _ => Err(Failure::Usage(format!("swap {text:?}: expected j,l"))),
    }
}

/// Gradings of Q_A, Q̃_G and Q_G induced by a cut.
fn induced(job: &Job, cut_text: &str) -> Result<(Lattice, Cut, metaquiver::lattice::InducedGrading), Failure> {
    let lat = Lattice::new(job.params(), job.embedded)?;
    let cut = parse_cut(&lat, cut_text)?;
    if let Some(w) = lat.case_warning(&cut) {
        eprintln!("warning: {w}");
    }
    let tilde = tilde_quiver(&job.reps, job.embedded)?;
    let g = lat.induce_grading(&cut, &job.qa()?, &tilde, &job.qg()?)?;
    Ok((lat, cut, g))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn cmd_check(m: u64, r: u64, s: u64, t: u64, json: bool) -> Result<(), Failure> {
    let rep = check_conditions(m, r, s, t)?;
    if json {
        print!("{}", to_json_text(&serde_json::to_value(&rep).expect("serialisable")));
    } else {
        println!("group (m,r,s,t) = ({m},{r},{s},{t})");
        for (name, ok) in rep.flags() {
            println!("  {name}  {}", if ok { "pass" } else { "FAIL" });
        }
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        println!("  c = {}, n = {}, b = {}, u = {}, case {}", rep.c, opt(rep.n), opt(rep.b), rep.u, rep.case);
    }
    if rep.all_hold() {
        Ok(())
    } else {
        Err(Failure::Condition(format!("conditions violated: {}", rep.failures().join(", "))))
    }
}

fn cmd_quiver(
    job: &Job,
    which: Which,
    format: QuiverFormat,
    cut: Option<&str>,
    output: &Option<PathBuf>,
) -> Result<(), Failure> {
    let grading = cut.map(|c| induced(job, c)).transpose()?.map(|(_, _, g)| g);
    let (quiver, name, g, mckay) = match which {
        Which::A => {
            let d = job.qa()?;
            let json = d.to_json(grading.as_ref().map(|g| &g.on_a));
            (d.quiver, "QA", grading.map(|g| g.on_a), Some(json))
        }
        Which::G => {
            let d = job.qg()?;
            let json = d.to_json(grading.as_ref().map(|g| &g.on_g));
            (d.quiver, "QG", grading.map(|g| g.on_g), Some(json))
        }
        Which::Tilde => {
            let t = tilde_quiver(&job.reps, job.embedded)?;
            (t.quiver, "QtildeG", grading.map(|g| g.on_tilde), None)
        }
    };
    let text = match format {
        QuiverFormat::Dot => quiver.to_dot(name, g.as_ref()),
        QuiverFormat::Tikz => quiver.to_tikz(g.as_ref()),
        QuiverFormat::Json => {
            let v = mckay.unwrap_or_else(|| serde_json::to_value(quiver.to_json(g.as_ref())).expect("serialisable"));
            to_json_text(&v)
        }
    };
    emit(output, &text)
}

fn cmd_superpotential(
    ctx: &Context,
    job: &Job,
    which: Which,
    verify: &[Verify],
    format: Format,
    output: &Option<PathBuf>,
) -> Result<(), Failure> {
    let data = match which {
        Which::A => job.qa()?,
        Which::G => job.qg()?,
        Which::Tilde => return Err(Failure::Usage("the comparison quiver carries no superpotential".into())),
    };
    let w = superpotential_with(&data, ctx.exec)?;
    if w.terms.is_empty() {
        return Err(Failure::Verification("superpotential has empty support".into()));
    }
    let mut checks = serde_json::Map::new();
    let mut failures = Vec::new();
    if verify.contains(&Verify::Cyclicity) {
        let rep = check_twisted_cyclicity(&data.quiver, &w);
        if !rep.exact {
            failures.push(format!("twisted cyclicity fails at {:?}", rep.witness));
        }
        checks.insert("cyclicity".into(), serde_json::to_value(&rep).expect("serialisable"));
    }
    if verify.contains(&Verify::Support) {
        let (wa, wg) = match which {
            Which::A => (w.clone(), superpotential_with(&job.qg()?, ctx.exec)?),
            _ => (superpotential_with(&job.qa()?, ctx.exec)?, w.clone()),
        };
        let tilde = tilde_quiver(&job.reps, job.embedded)?;
        let phi = phi_morphism(&job.qa()?, &tilde)?;
        let psi = psi_morphism(&job.qg()?, &tilde)?;
        let rep = support_correspondence(&wa, &wg, &phi, &psi);
        if !rep.subset {
            failures.push("Ψ(supp ω_G) is not contained in Φ(supp ω_A)".into());
        }
        checks.insert("support".into(), serde_json::to_value(&rep).expect("serialisable"));
    }
    let text = match format {
        Format::Json => {
            let mut v = w.to_json();
            v["checks"] = serde_json::Value::Object(checks);
            to_json_text(&v)
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "degree {}, {} terms", w.degree, w.terms.len()).unwrap();
            for (p, c) in &w.terms {
                writeln!(s, "  {c}  {}", p.display(&data.quiver)).unwrap();
            }
            if let Some(serde_json::Value::Object(c)) = checks.get("cyclicity") {
                writeln!(s, "cyclicity: exact={} support_closed={}", c["exact"], c["support_closed"]).unwrap();
            }
            if let Some(serde_json::Value::Object(c)) = checks.get("support") {
                writeln!(s, "support: subset={} equal={}", c["subset"], c["equal"]).unwrap();
            }
            s
        }
    };
    emit(output, &text)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failures.join("; ")))
    }
}

fn cmd_grade(
    ctx: &Context,
    job: &Job,
    cut_text: &str,
    swaps: &[String],
    format: Format,
    output: &Option<PathBuf>,
) -> Result<(), Failure> {
    let (lat, cut, induced) = induced(job, cut_text)?;
    let qg = job.qg()?;
    let mut g = induced.on_g;
    for s in swaps {
        let (j, l) = parse_swap(s)?;
        g = swap_move(&qg, &g, j, l)?;
    }
    let w = superpotential_with(&qg, ctx.exec)?;
    let degree = homogeneity_degree(&w, &g).map_err(|(a, b)| {
        Failure::Verification(format!(
            "ω is not homogeneous: {} and {}",
            a.display(&qg.quiver),
            b.display(&qg.quiver)
        ))
    })?;
    let pres = GradedPresentation::new(&qg.quiver, &w, &g)?;
    // after swaps sl need not bound degree-0 paths; any acyclic degree-0 quiver is bounded by its vertex count
    let bound = match (swaps.is_empty(), lat.path_bound(&cut)) {
        (true, Some(b)) => b,
        _ => qg.quiver.num_vertices(),
    };
    let report = pres.report(bound);
    let text = match format {
        Format::Json => to_json_text(&serde_json::json!({
            "quiver": qg.to_json(Some(&g)),
            "homogeneity_degree": degree,
            "bound": bound,
            "degree0": report,
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "degree-1 arrows:").unwrap();
            for a in g.arrows_of_degree(1) {
                writeln!(s, "  {}", qg.quiver.arrow(a).label).unwrap();
            }
            writeln!(s, "homogeneity degree: {}", degree.map_or("-".into(), |d| d.to_string())).unwrap();
            writeln!(s, "finite: {} (bound {bound})", report.finite).unwrap();
            if let Some(d) = report.dimension {
                writeln!(s, "dimension: {d}").unwrap();
            }
            writeln!(
                s,
                "degree-0 quiver: {} vertices, {} arrows, {} relations",
                report.degree0_vertices, report.degree0_arrows, report.degree0_relations
            )
            .unwrap();
            if let Some(k) = &report.dynkin {
                writeln!(s, "type: {k}").unwrap();
            }
            s
        }
    };
    emit(output, &text)?;
    if degree != Some(1) || !report.finite {
        return Err(Failure::Verification(format!(
            "expected a degree-1 superpotential and finite degree-0 part, got degree {degree:?}, finite {}",
            report.finite
        )));
    }
    Ok(())
}

fn line(out: &mut String, ok: bool, what: &str, detail: impl std::fmt::Display) -> bool {
    writeln!(out, "{} {what}: {detail}", if ok { "ok  " } else { "DIFF" }).unwrap();
    ok
}

fn reproduce_m21(ctx: &Context) -> Result<(String, bool), Failure> {
    let golden: serde_json::Value = serde_json::from_str(GOLDEN_M21).expect("fixture is valid JSON");
    let params = MetacyclicParams::new(21, 4, 3, 0)?;
    let reps = RepSystem::with_representatives(&params, &[0, 4, 7, 8, 9, 12, 13, 14, 17])?;
    let job = Job { reps, embedded: false };
    let (lat, cut, induced) = induced(&job, "canonical:1,1")?;
    let qg = job.qg()?;
    let w = superpotential_with(&qg, ctx.exec)?;
    let pres = GradedPresentation::new(&qg.quiver, &w, &induced.on_g)?;
    let bound = lat.path_bound(&cut).expect("canonical");
    let (sub, _) = pres.degree_zero_quiver();
    let paths: usize = (0..bound)
        .map(|len| if len == 0 { sub.num_vertices() } else { sub.paths_of_length(len).len() })
        .sum();
    let mut labels: Vec<String> = induced
        .on_g
        .arrows_of_degree(1)
        .into_iter()
        .map(|a| qg.quiver.arrow(a).label.clone())
        .collect();
    labels.sort();
    let got = serde_json::json!({
        "qg_vertices": qg.quiver.num_vertices(),
        "qg_arrows": qg.quiver.num_arrows(),
        "degree_one_arrows": induced.on_g.arrows_of_degree(1).len(),
        "support_size": w.terms.len(),
        "degree_zero_relations": pres.degree_zero_relations().len(),
        "degree_zero_paths": paths,
        "dimension": pres.dimension_with(ctx.exec)?,
        "degree_one_labels": labels,
    });
    let mut out = String::new();
    let mut all = true;
    for key in got.as_object().expect("object").keys() {
        let ok = got[key] == golden[key];
        all &= line(&mut out, ok, key, if ok { got[key].to_string() } else { format!("{} vs fixture {}", got[key], golden[key]) });
    }
    // the worked coefficient along 12 → 8 → 7^(ℓ) → 12
    for l in 0..3 {
        let labels = [
            "x^{12}_{0,1}".to_string(),
            format!("x^{{8({l})}}_{{0,0}}"),
            format!("x^{{({l})7}}_{{2,0}}"),
        ];
        let ids = labels.iter().map(|x| qg.quiver.find_arrow(x).expect("pinned label")).collect();
        let p = Path::from_arrows(&qg.quiver, ids).expect("composable");
        let c = coefficient(&qg, &p)?;
        writeln!(out, "     c[{}] = {c}", p.display(&qg.quiver)).unwrap();
    }
    Ok((out, all))
}

fn reproduce_bin_dih(ctx: &Context) -> Result<(String, bool), Failure> {
    let params = MetacyclicParams::family_m_hat(2, 2)?;
    let reps = choose_representatives(&params)?;
    let job = Job { reps, embedded: true };
    let (lat, cut, induced) = induced(&job, "canonical:2,1")?;
    let (qa, qg) = (job.qa()?, job.qg()?);
    let wa = superpotential_with(&qa, ctx.exec)?;
    let wg = superpotential_with(&qg, ctx.exec)?;
    let base = mckay_metacyclic(&job.reps, false)?;
    let wb: Superpotential = superpotential_with(&base, ctx.exec)?;
    let tilde = tilde_quiver(&job.reps, true)?;
    let support = support_correspondence(&wa, &wg, &phi_morphism(&qa, &tilde)?, &psi_morphism(&qg, &tilde)?);
    let shape = embedded_shape(&qg, &wg, &wb);
    let pres = GradedPresentation::new(&qg.quiver, &wg, &induced.on_g)?;
    let bound = lat.path_bound(&cut).expect("canonical");
    let cyc = check_twisted_cyclicity(&qg.quiver, &wg);
    let mut out = String::new();
    let mut all = true;
    all &= line(&mut out, true, "group", format!("(12,5,2,6) embedded, {} vertices, {} arrows", qg.quiver.num_vertices(), qg.quiver.num_arrows()));
    all &= line(&mut out, cyc.exact, "twisted cyclicity", cyc.exact);
    all &= line(&mut out, support.equal, "support correspondence", format!("{} paths", support.psi_image));
    all &= line(&mut out, shape.forward && shape.backward, "embedded shape", format!("{} terms from {}", wg.terms.len(), wb.terms.len()));
    all &= line(&mut out, pres.omega_degree == Some(1), "homogeneity degree", format!("{:?}", pres.omega_degree));
    let finite = pres.is_finite_dimensional(bound);
    all &= line(&mut out, finite, "finite with bound", bound);
    if finite {
        line(&mut out, true, "dimension", pres.dimension_with(ctx.exec)?);
    }
    Ok((out, all))
}

fn cmd_reproduce(ctx: &Context, id: &str) -> Result<(), Failure> {
    let (text, ok) = match id {
        "s3-m21" => reproduce_m21(ctx)?,
        "bin-dih" => reproduce_bin_dih(ctx)?,
        other => return Err(Failure::Usage(format!("unknown example {other:?}; known: s3-m21, bin-dih"))),
    };
    print!("{text}");
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{id}: differences from the fixture")))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let exec = match cli.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be positive".into())),
        Some(1) => Execution::Sequential,
        Some(n) => {
            set_max_threads(n).map_err(Failure::Usage)?;
            Execution::Parallel
        }
        None => Execution::Parallel,
    };
    let ctx = Context { exec };
    match cli.command {
        Command::Check { m, r, s, t, json } => cmd_check(m, r, s, t, json),
        Command::Quiver {
            group,
            which,
            format,
            cut,
            output,
        } => cmd_quiver(&Job::new(&group)?, which, format, cut.as_deref(), &output),
        Command::Superpotential {
            group,
            which,
            verify,
            format,
            output,
        } => cmd_superpotential(&ctx, &Job::new(&group)?, which, &verify, format, &output),
        Command::Grade {
            group,
            cut,
            swap,
            format,
            output,
        } => cmd_grade(&ctx, &Job::new(&group)?, &cut, &swap, format, &output),
        Command::Reproduce { id } => cmd_reproduce(&ctx, &id),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
