//! Command-line front end. Every command writes a plain-text report followed
//! by a `[result]` block of `key=value` lines.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    brenner_bound_check, count_bound_check, count_by_dimvector, find_multisections, hom_order, placement_violations,
    multisection_parts, variety_dimension_formulas, vertex_set, MultisectionParts,
};
use crate::error::{AlgebraError, AnalysisError, OpError};
use crate::fixtures;
use crate::forms::{euler_form, tits_form, weak_nonnegativity_box, BoxVerdict, UnitForm, DEFAULT_BOX};
use crate::io::{quiver_to_dot, tquiver_to_dot, write_algebra, write_tquiver};
use crate::ops::{run_script, seed_multicoil, Multicoil, OperationScript, Seed};
use crate::qalg::Algebra;
use crate::reps::{format_dimvec, global_dimension, DimVec};
use crate::tquiver::{classify_tube, coherence_check, cyclic_vertices, is_almost_cyclic, TranslationQuiver};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "arquiver", version, about = "Bound quiver algebras, translation quivers and admissible operations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate an algebra (`.qa` or fixture name), translation
    /// quiver (`.tq`), representation (`.rep`, needs `--algebra`) or script.
    Validate {
        input: String,
        #[arg(long)]
        algebra: Option<String>,
        /// Cap for projective resolutions.
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Integral quadratic forms of an algebra.
    Forms {
        #[command(subcommand)]
        form: FormsCommand,
    },
    Tube {
        #[command(subcommand)]
        cmd: TubeCommand,
    },
    Surgery {
        #[command(subcommand)]
        cmd: SurgeryCommand,
    },
    Analyze {
        #[command(subcommand)]
        cmd: AnalyzeCommand,
    },
    Export {
        #[command(subcommand)]
        cmd: ExportCommand,
    },
    /// Run the acceptance checks on the shipped examples.
    VerifyPaper {
        /// Restrict to criteria touching a module (`forms`, `ops`, ...) or
        /// to one criterion number.
        #[arg(long)]
        only: Option<String>,
        /// Print every sub-check.
        #[arg(long, short)]
        verbose: bool,
    },
}

#[derive(Debug, Args)]
pub struct AlgebraArg {
    /// Fixture name (`FIX-A23`, ...) or algebra file.
    pub algebra: String,
    #[arg(long, default_value_t = 8)]
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormKind {
    Tits,
    Euler,
}

#[derive(Debug, Subcommand)]
pub enum FormsCommand {
    Tits(AlgebraArg),
    Euler(AlgebraArg),
    /// Search the box `0 <= x_i <= B` for a negative value.
    WeakNonneg {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long = "box", default_value_t = DEFAULT_BOX)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = FormKind::Tits)]
        form: FormKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum TubeCommand {
    /// Print a stable tube as a translation quiver file.
    Build {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 6)]
        window: usize,
        /// Algebra over which the mouth modules live.
        #[arg(long, requires = "mouth")]
        algebra: Option<String>,
        /// Mouth modules in translation order, e.g. `S6,S7,E`.
        #[arg(long, value_delimiter = ',')]
        mouth: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SurgeryCommand {
    /// Replay an operation script (`FIX-multicoil` or a file).
    Run {
        script: String,
        /// Override the window of every seed tube.
        #[arg(long)]
        window: Option<usize>,
        /// Directory for `algebra.qa`, `component.tq`, `component.dot` and `ledger.txt`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCommand {
    /// Check a multisection and print its parts, or search for one.
    Multisection {
        /// `FIX-B8-component` or a translation quiver file.
        component: String,
        #[arg(long, value_delimiter = ',', conflicts_with = "search")]
        delta: Vec<String>,
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_candidates: u64,
    },
    /// Number of middle terms of almost split sequences.
    SxBound { component: String },
    /// Count vertices by dimension-vector label.
    CountDim {
        component: String,
        /// A single label to count, e.g. `5:1,6:2`.
        #[arg(long)]
        dim: Option<String>,
        /// Bound to compare against; defaults to the support rank.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare two modules through their Hom profiles on a test family.
    HomOrder {
        #[arg(long)]
        algebra: String,
        m: String,
        n: String,
        /// Test modules; defaults to all simples, projectives and injectives.
        #[arg(long)]
        family: Vec<String>,
    },
    /// Orbit and variety dimensions at a module.
    OrbitDim {
        #[arg(long)]
        algebra: String,
        module: String,
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExportCommand {
    /// DOT for an algebra's quiver, a translation quiver or a script's result.
    Dot {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A report and its exit code.
pub struct Report {
    pub text: String,
    pub kv: Vec<(String, String)>,
    pub code: i32,
}

impl Report {
    fn new() -> Self {
        Report { text: String::new(), kv: Vec::new(), code: EXIT_OK }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn kv(&mut self, k: &str, v: impl ToString) {
        self.kv.push((k.to_string(), v.to_string()));
    }

    fn render(&self) -> String {
        let mut out = self.text.clone();
        if !self.kv.is_empty() {
            out.push_str("[result]\n");
            for (k, v) in &self.kv {
                writeln!(out, "{k}={v}").unwrap();
            }
        }
        out
    }
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    fn invalid(msg: impl ToString) -> Self {
        Failure { code: EXIT_INVALID, msg: msg.to_string() }
    }
}

fn algebra_code(e: &AlgebraError) -> i32 {
    match e {
        AlgebraError::InfiniteGlobalDimensionWithinCap(_) | AlgebraError::ResolutionCapExceeded(_) => EXIT_TRUNCATED,
        _ => EXIT_INVALID,
    }
}

fn op_code(e: &OpError) -> i32 {
    match e {
        OpError::AmbiguousAtBoundary(_) | OpError::BoundaryTooTight(_) | OpError::GammaHatInfinite(_) => EXIT_TRUNCATED,
        OpError::Algebra(a) => algebra_code(a),
        OpError::AtStep { source, .. } => op_code(source),
        _ => EXIT_INVALID,
    }
}

impl From<OpError> for Failure {
    fn from(e: OpError) -> Self {
        Failure { code: op_code(&e), msg: e.to_string() }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure { code: algebra_code(&e), msg: e.to_string() }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Algebra(a) => a.into(),
            e => Failure::invalid(e),
        }
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::invalid(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e)
    }
}

type Res = Result<Report, Failure>;

/// Parse `args` (including the program name), run the command and write its
/// report to `out`. Returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let _ = out.write_all(r.render().as_bytes());
            r.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

pub fn execute(cmd: &Command) -> Res {
    match cmd {
        Command::Validate { input, algebra, cap } => validate(input, algebra.as_deref(), *cap),
        Command::Forms { form } => forms(form),
        Command::Tube { cmd: TubeCommand::Build { rank, window, algebra, mouth, out } } => {
            tube_build(*rank, *window, algebra.as_deref(), mouth, out.as_deref())
        }
        Command::Surgery { cmd: SurgeryCommand::Run { script, window, out } } => surgery_run(script, *window, out.as_deref()),
        Command::Analyze { cmd } => analyze(cmd),
        Command::Export { cmd: ExportCommand::Dot { input, out } } => export_dot(input, out.as_deref()),
        Command::VerifyPaper { only, verbose } => verify_paper(only.as_deref(), *verbose),
    }
}

fn ext(path: &str) -> Option<&str> {
    Path::new(path).extension().and_then(|e| e.to_str())
}

fn is_tquiver(input: &str) -> bool {
    ext(input) == Some("tq") || input.eq_ignore_ascii_case("FIX-B8-component")
}

fn is_script(input: &str) -> bool {
    ext(input) == Some("script") || input.eq_ignore_ascii_case("FIX-multicoil")
}

fn validate(input: &str, algebra: Option<&str>, cap: usize) -> Res {
    if is_tquiver(input) {
        let g = fixtures::load_tquiver(input)?;
        g.validate().map_err(Failure::invalid)?;
        return Ok(describe_tquiver(&g));
    }
    if is_script(input) {
        let s = fixtures::load_script(input)?;
        let mut r = Report::new();
        r.line(format!("script with {} seed(s) and {} operation(s)", s.seeds.len(), s.ops.len()));
        r.text.push_str(&s.to_string());
        r.kv("seeds", s.seeds.len());
        r.kv("ops", s.ops.len());
        return Ok(r);
    }
    if ext(input) == Some("rep") {
        let a = fixtures::load(algebra.ok_or_else(|| Failure::invalid("a representation needs --algebra"))?)?;
        let m = fixtures::load_module(&a, input)?;
        let mut r = Report::new();
        r.line(format!("representation of dimension vector {}", format_dimvec(&m.dimension_vector())));
        r.kv("total_dim", m.total_dim());
        r.kv("end", crate::reps::end_dim(&m));
        return Ok(r);
    }
    let a = fixtures::load(input)?;
    describe_algebra(&a, cap)
}

fn describe_algebra(a: &Algebra, cap: usize) -> Res {
    let q = a.quiver();
    let mut r = Report::new();
    r.line(format!("vertices ({}): {}", q.vertex_count(), q.vertices().join(" ")));
    r.line(format!("arrows ({}):", q.arrow_count()));
    for ar in q.arrows() {
        r.line(format!("  {}: {} -> {}", ar.id, q.vertex_id(ar.source), q.vertex_id(ar.target)));
    }
    r.line(format!("relations ({}):", a.relations().len()));
    for rel in a.relations() {
        r.line(format!("  {}", rel.display(q)));
    }
    r.line(format!("dimension {}", a.dim()));
    r.kv("vertices", q.vertex_count());
    r.kv("arrows", q.arrow_count());
    r.kv("relations", a.relations().len());
    r.kv("dim", a.dim());
    r.kv("triangular", a.is_triangular());
    if a.is_triangular() {
        match global_dimension(a, cap) {
            Ok(g) => {
                r.line(format!("global dimension {g}"));
                r.kv("gldim", g);
            }
            Err(e) => {
                r.line(format!("global dimension: {e}"));
                r.kv("gldim", format!(">{cap}"));
                r.code = algebra_code(&e);
            }
        }
    }
    Ok(r)
}

fn describe_tquiver(g: &TranslationQuiver) -> Report {
    let mut r = Report::new();
    let count = |f: &dyn Fn(usize) -> bool| (0..g.len()).filter(|&x| f(x)).count();
    let (p, i, b) = (count(&|x| g.is_proj(x)), count(&|x| g.is_inj(x)), count(&|x| g.is_boundary(x)));
    r.line(format!("{} vertices, {} arrows; {p} projective, {i} injective, {b} boundary", g.len(), g.arrow_count()));
    let coh = coherence_check(g);
    r.line(format!("coherent: {}", coh.passed()));
    for &x in &coh.failures {
        r.line(format!("  no boundary-reaching sectional path at {}", g.id(x)));
    }
    let cyc = cyclic_vertices(g).len();
    r.line(format!("cyclic part: {cyc} vertices; almost cyclic: {}", is_almost_cyclic(g)));
    r.kv("vertices", g.len());
    r.kv("arrows", g.arrow_count());
    r.kv("projective", p);
    r.kv("injective", i);
    r.kv("boundary", b);
    r.kv("coherent", coh.passed());
    r.kv("cyclic", cyc);
    r.kv("almost_cyclic", is_almost_cyclic(g));
    r.kv("tube", format!("{:?}", classify_tube(g)));
    r
}

fn write_form(r: &mut Report, name: &str, f: &UnitForm) {
    r.line(format!("{name} = {f}"));
    let ids = f.ids();
    r.line(format!("coefficients (upper triangle) over {}:", ids.join(" ")));
    for i in 0..ids.len() {
        let row: Vec<String> = (0..ids.len()).map(|j| if j < i { ".".into() } else { f.coefficient(i, j).to_string() }).collect();
        r.line(format!("  {}", row.join(" ")));
    }
    r.kv("form", name);
    r.kv("rank", f.rank());
    for i in 0..ids.len() {
        for j in i..ids.len() {
            let c = f.coefficient(i, j);
            if c != 0 {
                r.kv(&format!("c[{},{}]", ids[i], ids[j]), c);
            }
        }
    }
}

fn form_of(a: &Algebra, kind: FormKind, cap: usize, r: &mut Report) -> Result<UnitForm, Failure> {
    Ok(match kind {
        FormKind::Tits => {
            let t = tits_form(a)?;
            if let Some(w) = &t.warning {
                r.line(format!("warning: {w}"));
            }
            t.form
        }
        FormKind::Euler => euler_form(a, cap)?,
    })
}

fn forms(cmd: &FormsCommand) -> Res {
    let mut r = Report::new();
    match cmd {
        FormsCommand::Tits(arg) | FormsCommand::Euler(arg) => {
            let kind = if matches!(cmd, FormsCommand::Tits(_)) { FormKind::Tits } else { FormKind::Euler };
            let a = fixtures::load(&arg.algebra)?;
            let f = form_of(&a, kind, arg.cap, &mut r)?;
            write_form(&mut r, if matches!(kind, FormKind::Tits) { "q" } else { "chi" }, &f);
        }
        FormsCommand::WeakNonneg { alg, bound, form } => {
            let a = fixtures::load(&alg.algebra)?;
            let f = form_of(&a, *form, alg.cap, &mut r)?;
            write_form(&mut r, if matches!(form, FormKind::Tits) { "q" } else { "chi" }, &f);
            match weak_nonnegativity_box(&f, *bound) {
                BoxVerdict::Pass { bound } => {
                    r.line(format!("weakly nonnegative on the box [0, {bound}]^n (bounded check)"));
                    r.kv("weak_nonneg", "pass");
                }
                BoxVerdict::Counterexample { x, value } => {
                    r.line(format!("counterexample x = {x:?} with value {value}"));
                    r.kv("weak_nonneg", "fail");
                    r.kv("witness", format!("{x:?}"));
                    r.kv("value", value);
                    r.code = EXIT_INVALID;
                }
            }
            r.kv("box", bound);
        }
    }
    Ok(r)
}

fn tube_build(rank: usize, window: usize, algebra: Option<&str>, mouth: &[String], out: Option<&Path>) -> Res {
    if rank == 0 || window == 0 {
        return Err(Failure::invalid("rank and window must be positive"));
    }
    if algebra.is_some() && mouth.len() != rank {
        return Err(Failure::invalid(format!("{} mouth modules for rank {rank}", mouth.len())));
    }
    let seed = Seed::Tube { rank, window, algebra: algebra.map(str::to_string), mouth: mouth.to_vec(), name: None };
    let mc = seed_multicoil(&[seed], fixtures::resolve)?;
    let text = write_tquiver(&mc.quiver);
    let mut r = Report::new();
    match out {
        Some(p) => {
            std::fs::write(p, &text)?;
            r.line(format!("wrote {}", p.display()));
        }
        None => r.text.push_str(&text),
    }
    r.kv("vertices", mc.quiver.len());
    r.kv("arrows", mc.quiver.arrow_count());
    Ok(r)
}

fn with_window(mut s: OperationScript, window: Option<usize>) -> OperationScript {
    if let Some(w) = window {
        for seed in &mut s.seeds {
            if let Seed::Tube { window, .. } = seed {
                *window = w;
            }
        }
    }
    s
}

fn ledger_text(mc: &Multicoil) -> String {
    let mut out = String::new();
    for s in &mc.steps {
        writeln!(
            out,
            "step {} {} pivot={} shape={} ext={} inserted={} removed={}",
            s.step,
            s.op,
            s.pivot,
            s.shape,
            s.ext,
            s.inserted.join(","),
            s.removed.join(",")
        )
        .unwrap();
    }
    for e in &mc.ledger {
        let label = e.label.as_ref().map(format_dimvec).unwrap_or_else(|| "?".into());
        writeln!(
            out,
            "vertex {} step={} op={} piece={} label={} parts={} extra={}",
            e.id,
            e.step,
            e.op,
            e.piece,
            label,
            e.parts.join("+"),
            format_dimvec(&e.extra)
        )
        .unwrap();
    }
    out
}

fn surgery_run(script: &str, window: Option<usize>, out: Option<&Path>) -> Res {
    let s = with_window(fixtures::load_script(script)?, window);
    let mc = run_script(&s, fixtures::resolve)?;
    mc.quiver.validate().map_err(Failure::invalid)?;
    let mut r = describe_tquiver(&mc.quiver);
    for s in &mc.steps {
        let new: Vec<&str> = s.inserted.iter().map(String::as_str).filter(|id| !id.contains('@')).collect();
        r.line(format!(
            "step {}: {} at {} ({}), ext vertex {}, {} vertices inserted, {} removed; new ids {}",
            s.step,
            s.op,
            s.pivot,
            s.shape,
            s.ext,
            s.inserted.len(),
            s.removed.len(),
            if new.is_empty() { "-".to_string() } else { new.join(",") }
        ));
    }
    let bad_ledger = mc.ledger_violations();
    let bad_rays = mc.accounting_violations();
    r.line(format!("ledger: {} entries, {} label violations", mc.ledger.len(), bad_ledger.len()));
    if let Some(a) = &mc.algebra {
        r.line(format!("algebra: {} vertices, {} arrows, {} relations", a.vertex_count(), a.quiver().arrow_count(), a.relations().len()));
        r.kv("algebra_vertices", a.vertex_count());
        r.kv("algebra_arrows", a.quiver().arrow_count());
    }
    for n in &mc.notes {
        r.line(format!("note: {n}"));
    }
    r.kv("steps", mc.steps.len());
    r.kv("ledger_violations", bad_ledger.len());
    r.kv("accounting_violations", bad_rays.len());
    if !bad_ledger.is_empty() || !bad_rays.is_empty() {
        r.code = EXIT_INVALID;
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        if let Some(a) = &mc.algebra {
            std::fs::write(dir.join("algebra.qa"), write_algebra(a))?;
        }
        std::fs::write(dir.join("component.tq"), write_tquiver(&mc.quiver))?;
        std::fs::write(dir.join("component.dot"), tquiver_to_dot(&mc.quiver, "component"))?;
        std::fs::write(dir.join("ledger.txt"), ledger_text(&mc))?;
        r.line(format!("wrote artifacts to {}", dir.display()));
    }
    Ok(r)
}

fn parse_dimvec(s: &str) -> Result<DimVec, Failure> {
    let mut d = DimVec::new();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once(':').ok_or_else(|| Failure::invalid(format!("expected id:count, got `{part}`")))?;
        let v: i64 = v.trim().parse().map_err(|_| Failure::invalid(format!("bad count in `{part}`")))?;
        *d.entry(k.trim().to_string()).or_default() += v;
    }
    Ok(d)
}

fn set_line(g: &TranslationQuiver, name: &str, s: &crate::analysis::VSet) -> String {
    format!("{name} = {{{}}}", MultisectionParts::ids(g, s).into_iter().collect::<Vec<_>>().join(", "))
}

fn analyze(cmd: &AnalyzeCommand) -> Res {
    let mut r = Report::new();
    match cmd {
        AnalyzeCommand::Multisection { component, delta, search, max_candidates } => {
            let g = fixtures::load_tquiver(component)?;
            g.validate().map_err(Failure::invalid)?;
            let deltas = if *search {
                let found = find_multisections(&g, g.len(), *max_candidates)
                    .ok_or_else(|| Failure { code: EXIT_TRUNCATED, msg: "candidate budget exhausted".into() })?;
                r.line(format!("{} multisection(s) found", found.len()));
                r.kv("found", found.len());
                found
            } else {
                if delta.is_empty() {
                    return Err(Failure::invalid("give --delta or --search"));
                }
                let ids: Vec<&str> = delta.iter().map(String::as_str).collect();
                vec![vertex_set(&g, &ids)?]
            };
            for d in &deltas {
                let p = multisection_parts(&g, d)?;
                for (name, s) in [
                    ("delta", &p.delta),
                    ("l'", &p.l_prime),
                    ("r'", &p.r_prime),
                    ("l''", &p.l_second),
                    ("r''", &p.r_second),
                    ("left", &p.left),
                    ("core", &p.core),
                    ("right", &p.right),
                ] {
                    r.line(set_line(&g, name, s));
                }
                let bad = placement_violations(&g, &p);
                r.line(format!("part structure violations: {}", bad.len()));
                r.kv("left", p.left.len());
                r.kv("core", p.core.len());
                r.kv("right", p.right.len());
                r.kv("violations", bad.len());
                if !bad.is_empty() {
                    r.code = EXIT_INVALID;
                }
            }
        }
        AnalyzeCommand::SxBound { component } => {
            let g = fixtures::load_tquiver(component)?;
            g.validate().map_err(Failure::invalid)?;
            let rep = brenner_bound_check(&g);
            r.line(format!("max s(X) = {}", rep.max_s));
            for &(x, s) in &rep.large {
                r.line(format!("  s({}) = {s}", g.id(x)));
            }
            for &x in &rep.failures {
                r.line(format!("  bound violated at {}", g.id(x)));
            }
            r.kv("max_s", rep.max_s);
            r.kv("passed", rep.passed());
            if !rep.passed() {
                r.code = EXIT_INVALID;
            }
        }
        AnalyzeCommand::CountDim { component, dim, n } => {
            let g = fixtures::load_tquiver(component)?;
            g.validate().map_err(Failure::invalid)?;
            if let Some(d) = dim {
                let d = parse_dimvec(d)?;
                let hits = count_by_dimvector(&g, &d);
                let names: Vec<&str> = hits.iter().map(|&x| g.id(x)).collect();
                r.line(format!("{} vertices with label {}: {}", hits.len(), format_dimvec(&d), names.join(", ")));
                r.kv("count", hits.len());
            }
            let rep = count_bound_check(&g, *n, 0);
            r.line(format!("bound n = {}, largest count {}", rep.n, rep.max_count));
            for (label, xs) in &rep.repeated {
                r.line(format!("  {label}: {}", xs.len()));
            }
            r.kv("n", rep.n);
            r.kv("max_count", rep.max_count);
            r.kv("over", rep.over.len());
            if !rep.over.is_empty() {
                r.code = EXIT_INVALID;
            }
        }
        AnalyzeCommand::HomOrder { algebra, m, n, family } => {
            let a = fixtures::load(algebra)?;
            let mm = fixtures::load_module(&a, m)?;
            let nn = fixtures::load_module(&a, n)?;
            let (names, fam) = if family.is_empty() {
                let mut names = Vec::new();
                for kind in ["S", "P", "I"] {
                    for v in a.quiver().vertices() {
                        names.push(format!("{kind}{v}"));
                    }
                }
                let fam = names.iter().map(|s| fixtures::load_module(&a, s)).collect::<Result<Vec<_>, _>>()?;
                (names, fam)
            } else {
                (family.clone(), family.iter().map(|s| fixtures::load_module(&a, s)).collect::<Result<Vec<_>, _>>()?)
            };
            let v = hom_order(&mm, &nn, &fam)?;
            r.line(format!("{m} {} {n} on {} test modules", v.order, fam.len()));
            for (k, name) in names.iter().enumerate() {
                let (a1, b1) = v.covariant[k];
                let (a2, b2) = v.contravariant[k];
                r.line(format!("  {name}: Hom(M,-) {a1} vs {b1}; Hom(-,M) {a2} vs {b2}"));
            }
            r.kv("order", v.order);
            r.kv("profiles_agree", v.profiles_agree);
        }
        AnalyzeCommand::OrbitDim { algebra, module, cap } => {
            let a = fixtures::load(algebra)?;
            let m = fixtures::load_module(&a, module)?;
            let v = variety_dimension_formulas(&a, &m, *cap)?;
            r.line(format!("d = {:?}", v.d));
            r.line(format!("dim G(d) = {}, dim End = {}, dim O(M) = {}", v.dim_group, v.end, v.orbit));
            r.line(format!("dim Ext^1 = {}, dim Ext^2 = {}", v.ext1, v.ext2));
            r.line(format!("q(d) = {}, chi(d) = {}, dim G(d) - q(d) = {}", v.tits, v.euler, v.periodic_variety_dim));
            r.kv("dim_group", v.dim_group);
            r.kv("end", v.end);
            r.kv("orbit", v.orbit);
            r.kv("ext1", v.ext1);
            r.kv("ext2", v.ext2);
            r.kv("tits", v.tits);
            r.kv("euler", v.euler);
            r.kv("euler_identity", v.euler_identity());
        }
    }
    Ok(r)
}

fn export_dot(input: &str, out: Option<&Path>) -> Res {
    let dot = if is_tquiver(input) {
        tquiver_to_dot(&fixtures::load_tquiver(input)?, "component")
    } else if is_script(input) {
        tquiver_to_dot(&run_script(&fixtures::load_script(input)?, fixtures::resolve)?.quiver, "component")
    } else {
        quiver_to_dot(fixtures::load(input)?.quiver(), "quiver")
    };
    let mut r = Report::new();
    match out {
        Some(p) => {
            std::fs::write(p, &dot)?;
            r.line(format!("wrote {}", p.display()));
        }
        None => r.text.push_str(&dot),
    }
    Ok(r)
}

fn verify_paper(only: Option<&str>, verbose: bool) -> Res {
    let outcomes = verify::run(only);
    if outcomes.is_empty() {
        return Err(Failure::invalid(format!("no criterion matches `{}`", only.unwrap_or(""))));
    }
    let mut r = Report::new();
    for o in &outcomes {
        r.line(o.to_string());
        if let Some((_, why)) = verify::KNOWN_DEVIATIONS.iter().find(|(id, _)| *id == o.id) {
            r.line(format!("  known deviation: {why}"));
        }
        if verbose || !o.passed {
            for d in &o.details {
                if verbose || !d.starts_with("[ok]") {
                    r.line(format!("  {d}"));
                }
            }
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    r.line(format!("{passed}/{} criteria passed", outcomes.len()));
    r.kv("passed", passed);
    r.kv("total", outcomes.len());
    if passed != outcomes.len() {
        r.code = EXIT_INVALID;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with(std::iter::once("arquiver").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn validate_a23_lists_relations() {
        let (code, out, _) = run(&["validate", "FIX-A23"]);
        assert_eq!(code, 0);
        assert!(out.contains("vertices=23"));
        assert!(out.contains("relations=12"));
        assert!(out.contains("alpha beta - sigma gamma") || out.contains("alpha*beta - sigma*gamma"), "{out}");
    }

    #[test]
    fn empty_algebra_file_is_a_parse_error() {
        let dir = std::env::temp_dir().join(format!("arquiver-empty-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("empty.qa");
        std::fs::write(&p, "").unwrap();
        let (code, _, err) = run(&["validate", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.contains("error"));
    }

    #[test]
    fn weak_nonneg_on_d5t() {
        let (code, out, _) = run(&["forms", "weak-nonneg", "FIX-D5t", "--box", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("weak_nonneg=pass"));
        let (code, out, _) = run(&["forms", "weak-nonneg", "FIX-K2", "--box", "2"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn forms_emit_coefficients() {
        let (code, out, _) = run(&["forms", "tits", "FIX-K2"]);
        assert_eq!(code, 0);
        assert!(out.contains("c[1,2]=-2") || out.contains("=-2"), "{out}");
        let (_, euler, _) = run(&["forms", "euler", "FIX-K2"]);
        assert_eq!(out.split("[result]").nth(1).map(|s| s.replace("form=q", "")), euler.split("[result]").nth(1).map(|s| s.replace("form=chi", "")));
    }

    #[test]
    fn surgery_errors_carry_the_step() {
        let dir = std::env::temp_dir().join(format!("arquiver-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("bad.script");
        std::fs::write(&p, "seed tube rank=2 window=6\nop ad1 pivot=nowhere t=1\n").unwrap();
        let (code, _, err) = run(&["surgery", "run", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.contains("step 1"), "{err}");
    }

    #[test]
    fn empty_script_echoes_the_seed() {
        let dir = std::env::temp_dir().join(format!("arquiver-seed-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("seed.script");
        std::fs::write(&p, "seed tube rank=2 window=4\n").unwrap();
        let (code, out, _) = run(&["surgery", "run", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("vertices=8"), "{out}");
        assert!(out.contains("steps=0"));
    }

    #[test]
    fn multisection_of_b8() {
        let delta = fixtures::B8_DELTA.join(",");
        let (code, out, _) = run(&["analyze", "multisection", "FIX-B8-component", "--delta", &delta]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("core=3") || out.contains("core = {"), "{out}");
        let (code, _, err) = run(&["analyze", "multisection", "FIX-B8-component", "--delta", "I1,I2"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.contains("not a multisection"));
    }

    #[test]
    fn hom_order_over_a2() {
        let (code, out, _) = run(&["analyze", "hom-order", "--algebra", "FIX-A2", "P1", "S1,S2"]);
        assert_eq!(code, 0);
        assert!(out.contains("order=<="), "{out}");
    }

    #[test]
    fn tube_build_round_trips() {
        let (code, out, _) = run(&["tube", "build", "--rank", "3", "--window", "4"]);
        assert_eq!(code, 0);
        let body = out.split("[result]").next().unwrap();
        assert_eq!(crate::io::parse_tquiver(body).unwrap().len(), 12);
    }

    #[test]
    fn unknown_only_filter_is_rejected() {
        let (code, _, _) = run(&["verify-paper", "--only", "nothing"]);
        assert_eq!(code, EXIT_INVALID);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["frobnicate"]).0, EXIT_INVALID);
        assert_eq!(run(&["--help"]).0, EXIT_OK);
    }
}
