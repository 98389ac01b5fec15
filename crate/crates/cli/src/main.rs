use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use invtqft::algebra::{Algebra, FieldTag};
use invtqft::azu::{azumaya_map, center, circle_value, separability_idempotent, symmetric_frobenius_form, CriterionReport};
use invtqft::bord2::{compose, pants_decompose_with, parse_bordism, replay, Bordism2Canonical, Layer, Strategy, SurfaceState, DEFAULT_GENUS_CAP};
use invtqft::corpus::{builtin_corpus, builtin_ineligible, filter_field, run_harness, AnyAlgebra};
use invtqft::exactlin::{parse_rational, Field, Matrix, DEFAULT_TOLERANCE};
use invtqft::frob::FrobeniusAlgebra;
use invtqft::inv::{crane_yetter, euler_theory, is_modular, parse_manifold, parse_mtc, signature};
use invtqft::par::Exec;
use invtqft::report::{digest, Outcome, RunReport};
use invtqft::suite::{load_algebra_dir, run_suite, Config, Status};
use invtqft::tang::{parse_structure, pi0_nullholonomic_reduction_s1, pi0_total_reduction_s1, restrict_to_dim2_from_data, spherophilic};
use invtqft::Error;

#[derive(Parser)]
#[command(name = "invtqft", version, about = "Exact evaluators for 2D field theories and their invertibility checks")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Restrict or check the ground field: Q, F2, F3 or F5.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true)]
    genus_cap: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print key=value records instead of the plain report.
    #[arg(long, global = true)]
    records: bool,
    /// Run corpus items one at a time.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bordism calculus.
    #[command(subcommand)]
    Bord(BordCmd),
    /// Commutative Frobenius algebras.
    #[command(subcommand)]
    Frob(FrobCmd),
    /// Once-extended theories from algebras.
    #[command(subcommand)]
    Azu(AzuCmd),
    /// Tangential structures.
    #[command(subcommand)]
    Tang(TangCmd),
    /// Invertible theories.
    #[command(subcommand)]
    Inv(InvCmd),
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Subcommand)]
enum BordCmd {
    /// Glue bordisms left to right.
    Compose {
        #[arg(required = true, num_args = 1..)]
        bordisms: Vec<String>,
    },
    Decompose {
        bordism: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Stacked)]
        strategy: StrategyArg,
    },
    /// Shortest surgery path between closed surfaces, e.g. `{0} {1}`.
    SurgeryPath { from: String, to: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Stacked,
    Nested,
}

#[derive(Subcommand)]
enum FrobCmd {
    Eval { algebra: PathBuf, bordism: String },
    Check { algebra: PathBuf },
}

#[derive(Subcommand)]
enum AzuCmd {
    Center { algebra: PathBuf },
    Azumaya { algebra: PathBuf },
    Circle { algebra: PathBuf },
    /// Runs the torus criterion on a corpus: `builtin`, a directory of `.alg` files, or one file.
    Harness {
        #[arg(default_value = "builtin")]
        corpus: String,
    },
}

#[derive(Subcommand)]
enum TangCmd {
    Spherophilic {
        structure: PathBuf,
    },
    Reduce {
        structure: PathBuf,
        #[arg(long, value_enum, default_value_t = ReduceMode::Total)]
        mode: ReduceMode,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceMode {
    Total,
    Nullholonomic,
}

#[derive(Subcommand)]
enum InvCmd {
    Cy { mtc: PathBuf, manifold: PathBuf },
    Modular { mtc: PathBuf },
    /// `λ^χ` for a rational λ.
    Euler {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        bordism: String,
    },
}

#[derive(Subcommand)]
enum ReportCmd {
    All { config: PathBuf },
}

type Res<T> = Result<T, Error>;

struct Ctx {
    opts: GlobalOpts,
    field: Option<FieldTag>,
    tolerance: f64,
    inputs: Vec<Vec<u8>>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Res<String> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.inputs.push(text.clone().into_bytes());
        Ok(text)
    }

    fn arg(&mut self, s: &str) {
        self.inputs.push(s.as_bytes().to_vec());
    }

    fn exec(&self) -> Exec {
        if self.opts.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    fn genus_cap(&self) -> u32 {
        self.opts.genus_cap.unwrap_or(DEFAULT_GENUS_CAP)
    }

    /// A named bordism (`pants`, `genus:2`, `id:3`, ...) or a bordism file.
    fn bordism(&mut self, s: &str) -> Res<Bordism2Canonical> {
        if let Some(b) = Bordism2Canonical::named(s) {
            self.arg(s);
            return Ok(b);
        }
        let path = Path::new(s);
        if !path.exists() {
            return Err(Error::Config(format!("`{s}` is neither a named bordism nor a file")));
        }
        let text = self.read(path)?;
        parse_bordism(&text, s)
    }

    fn algebra(&mut self, path: &Path) -> Res<AnyAlgebra> {
        let a = AnyAlgebra::load(path)?;
        self.read(path)?;
        if let Some(f) = self.field {
            if a.field() != f {
                return Err(Error::Config(format!("{} is over {}, but --field {} was given", path.display(), a.field(), f)));
            }
        }
        Ok(a)
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) | Error::NotFound { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli) {
        Ok((mut report, records)) => {
            report.wall_time = Some(start.elapsed());
            if records {
                print!("{}", report.to_records());
            } else {
                print!("{}", report.render());
            }
            ExitCode::from(report.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn run(cli: Cli) -> Res<(RunReport, bool)> {
    let field = cli.opts.field.as_deref().map(FieldTag::parse).transpose()?;
    let tolerance = cli.opts.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    if !tolerance.is_finite() || tolerance < 0.0 {
        return Err(Error::Config(format!("tolerance must be a non-negative number, got {tolerance}")));
    }
    let records = cli.opts.records;
    let mut ctx = Ctx { opts: cli.opts, field, tolerance, inputs: vec![] };
    let (name, items, outcome, warnings) = match cli.command {
        Command::Bord(c) => bord(&mut ctx, c)?,
        Command::Frob(c) => frob(&mut ctx, c)?,
        Command::Azu(c) => azu(&mut ctx, c)?,
        Command::Tang(c) => tang(&mut ctx, c)?,
        Command::Inv(c) => inv(&mut ctx, c)?,
        Command::Report(ReportCmd::All { config }) => report_all(&mut ctx, &config)?,
    };
    let flags = format!(
        "field={:?} tolerance={} genus_cap={} seed={}",
        ctx.field.map(|f| f.to_string()),
        ctx.tolerance,
        ctx.genus_cap(),
        ctx.opts.seed.unwrap_or(0)
    );
    let mut parts = vec![name.clone().into_bytes(), flags.into_bytes()];
    parts.extend(ctx.inputs);
    let mut r = RunReport::new(name, digest(parts));
    for i in items {
        r.item(i);
    }
    for w in warnings {
        r.warn(w);
    }
    r.record(outcome);
    Ok((r, records))
}

type Out = (String, Vec<String>, Outcome, Vec<String>);

fn pass(name: &str, items: Vec<String>) -> Res<Out> {
    Ok((name.to_string(), items, Outcome::Pass, vec![]))
}

fn matrix_lines<F: Field>(m: &Matrix<F>) -> Vec<String> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect()
}

fn layer_line(l: &Layer) -> String {
    l.0.iter().map(|e| format!("{e:?}").to_lowercase()).collect::<Vec<_>>().join(" | ")
}

fn bord(ctx: &mut Ctx, c: BordCmd) -> Res<Out> {
    match c {
        BordCmd::Compose { bordisms } => {
            let mut acc = ctx.bordism(&bordisms[0])?;
            for b in &bordisms[1..] {
                acc = compose(&acc, &ctx.bordism(b)?)?;
            }
            let mut items = vec![format!("source {} target {}", acc.source().circles, acc.target().circles), format!("euler characteristic {}", acc.euler_characteristic())];
            items.extend(acc.to_string().lines().map(str::to_string));
            pass("bord compose", items)
        }
        BordCmd::Decompose { bordism, strategy } => {
            let b = ctx.bordism(&bordism)?;
            let s = match strategy {
                StrategyArg::Stacked => Strategy::Stacked,
                StrategyArg::Nested => Strategy::Nested,
            };
            let layers = pants_decompose_with(&b, s);
            let mut items = vec![format!("{} layers", layers.len())];
            items.extend(layers.iter().enumerate().map(|(i, l)| format!("layer {i}: {}", layer_line(l))));
            pass("bord decompose", items)
        }
        BordCmd::SurgeryPath { from, to } => {
            ctx.arg(&from);
            ctx.arg(&to);
            let parse = |s: &str| SurfaceState::parse(s).ok_or_else(|| Error::Config(format!("bad surface state `{s}`; expected e.g. {{0,2}}")));
            let (s, t) = (parse(&from)?, parse(&to)?);
            let path = invtqft::bord2::surgery_path(&s, &t, ctx.genus_cap())?;
            let mut items = vec![format!("{s} -> {t}: {} moves", path.len())];
            let mut cur = s.clone();
            for m in &path {
                let next = replay(&cur, std::slice::from_ref(m))?;
                items.push(format!("{m}: {cur} -> {next}  (χ {} -> {})", cur.euler_characteristic(), next.euler_characteristic()));
                cur = next;
            }
            let ok = cur == t;
            items.push(format!("replay {}", if ok { "verified" } else { "MISMATCH" }));
            Ok(("bord surgery-path".into(), items, if ok { Outcome::Pass } else { Outcome::Fail }, vec![]))
        }
    }
}

fn need_frobenius<F: Field>(a: &Algebra<F>) -> Res<FrobeniusAlgebra<F>> {
    if !a.is_commutative() {
        return Err(Error::Unsupported(format!("{} is not commutative; use the azu commands", a.name())));
    }
    let f = match a.form() {
        Some(form) => FrobeniusAlgebra::new(a.clone(), form.to_vec()),
        None => FrobeniusAlgebra::new(a.clone(), symmetric_frobenius_form(a).ok_or_else(|| Error::Precondition(format!("{} has no nondegenerate form", a.name())))?),
    };
    let v = f.validate();
    if !v.is_valid() {
        return Err(Error::Precondition(format!("{}: {}", a.name(), v.violations.join(", "))));
    }
    Ok(f)
}

fn frob_eval<F: Field>(a: &Algebra<F>, b: &Bordism2Canonical) -> Res<Vec<String>> {
    let f = need_frobenius(a)?;
    let m = f.evaluate(b)?;
    let mut items = vec![format!("{}: Z(b) is {}x{}", a.name(), m.rows(), m.cols())];
    items.extend(matrix_lines(&m));
    Ok(items)
}

fn frob_check<F: Field>(a: &Algebra<F>) -> Res<(Vec<String>, Outcome)> {
    let f = need_frobenius(a)?;
    let torus = f.closed_surface(1)?;
    let v = f.is_invertible_theory();
    let items = vec![
        format!("{} over {}, dim {}", a.name(), F::tag(), a.dim()),
        format!("counit ({})", f.counit.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        "frobenius axioms hold".to_string(),
        format!("Z(T^2) = {torus}"),
        format!("invertible theory: {}{}", v.invertible, v.witness.map(|w| format!(" ({w})")).unwrap_or_default()),
    ];
    Ok((items, Outcome::Pass))
}

fn frob(ctx: &mut Ctx, c: FrobCmd) -> Res<Out> {
    match c {
        FrobCmd::Eval { algebra, bordism } => {
            let a = ctx.algebra(&algebra)?;
            let b = ctx.bordism(&bordism)?;
            let items = match &a {
                AnyAlgebra::Q(x) => frob_eval(x, &b)?,
                AnyAlgebra::F2(x) => frob_eval(x, &b)?,
                AnyAlgebra::F3(x) => frob_eval(x, &b)?,
                AnyAlgebra::F5(x) => frob_eval(x, &b)?,
            };
            pass("frob eval", items)
        }
        FrobCmd::Check { algebra } => {
            let a = ctx.algebra(&algebra)?;
            let (items, o) = match &a {
                AnyAlgebra::Q(x) => frob_check(x)?,
                AnyAlgebra::F2(x) => frob_check(x)?,
                AnyAlgebra::F3(x) => frob_check(x)?,
                AnyAlgebra::F5(x) => frob_check(x)?,
            };
            Ok(("frob check".into(), items, o, vec![]))
        }
    }
}

fn center_lines<F: Field>(a: &Algebra<F>) -> Vec<String> {
    let z = center(a);
    let mut items = vec![format!("{}: center dim {}", a.name(), z.len())];
    items.extend(z.iter().map(|v| format!("  ({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))));
    items
}

fn azumaya_lines<F: Field>(a: &Algebra<F>) -> Vec<String> {
    let n = a.dim();
    let r = azumaya_map(a).rank();
    vec![
        format!("{}: A⊗A^op -> End(A) rank {r}/{}", a.name(), n * n),
        format!("separable: {}", separability_idempotent(a).is_some()),
        format!("azumaya: {}", r == n * n),
    ]
}

fn circle_lines<F: Field>(a: &Algebra<F>) -> Vec<String> {
    let c = circle_value(a);
    vec![format!("{}: dim A⊗_(A^e) A = {}, dim Z(A) = {}", a.name(), c.dim, center(a).len())]
}

fn azu(ctx: &mut Ctx, c: AzuCmd) -> Res<Out> {
    let single = |ctx: &mut Ctx, p: &Path, f: fn(&AnyAlgebra) -> Vec<String>| -> Res<Vec<String>> { Ok(f(&ctx.algebra(p)?)) };
    match c {
        AzuCmd::Center { algebra } => pass("azu center", single(ctx, &algebra, |a| match a {
            AnyAlgebra::Q(x) => center_lines(x),
            AnyAlgebra::F2(x) => center_lines(x),
            AnyAlgebra::F3(x) => center_lines(x),
            AnyAlgebra::F5(x) => center_lines(x),
        })?),
        AzuCmd::Azumaya { algebra } => pass("azu azumaya", single(ctx, &algebra, |a| match a {
            AnyAlgebra::Q(x) => azumaya_lines(x),
            AnyAlgebra::F2(x) => azumaya_lines(x),
            AnyAlgebra::F3(x) => azumaya_lines(x),
            AnyAlgebra::F5(x) => azumaya_lines(x),
        })?),
        AzuCmd::Circle { algebra } => pass("azu circle", single(ctx, &algebra, |a| match a {
            AnyAlgebra::Q(x) => circle_lines(x),
            AnyAlgebra::F2(x) => circle_lines(x),
            AnyAlgebra::F3(x) => circle_lines(x),
            AnyAlgebra::F5(x) => circle_lines(x),
        })?),
        AzuCmd::Harness { corpus } => {
            ctx.arg(&corpus);
            let algs = if corpus == "builtin" {
                let mut c = builtin_corpus();
                c.extend(builtin_ineligible());
                c
            } else {
                let p = Path::new(&corpus);
                let algs = if p.is_dir() { load_algebra_dir(p)? } else { vec![AnyAlgebra::load(p)?] };
                for a in &algs {
                    ctx.arg(&invtqft_format(a));
                }
                algs
            };
            let algs = filter_field(algs, ctx.field);
            let reports = run_harness(&algs, ctx.exec());
            Ok(harness_out(&reports))
        }
    }
}

fn invtqft_format(a: &AnyAlgebra) -> String {
    match a {
        AnyAlgebra::Q(x) => invtqft::algebra::format_algebra(x),
        AnyAlgebra::F2(x) => invtqft::algebra::format_algebra(x),
        AnyAlgebra::F3(x) => invtqft::algebra::format_algebra(x),
        AnyAlgebra::F5(x) => invtqft::algebra::format_algebra(x),
    }
}

fn harness_out(reports: &[CriterionReport]) -> Out {
    let mut items = vec!["field name dim center circle azumaya saddle verdict".to_string()];
    let mut warnings = vec![];
    let mut outcome = Outcome::Pass;
    for r in reports {
        items.push(format!("{} {}", r.field, r));
        if !r.consistent() {
            outcome = Outcome::Fail;
        }
    }
    let eligible = reports.iter().filter(|r| r.is_eligible()).count();
    items.push(format!("checked {eligible} eligible of {} algebras", reports.len()));
    if reports.is_empty() {
        warnings.push("empty corpus; the check is vacuous".to_string());
    }
    ("azu harness".into(), items, outcome, warnings)
}

fn tang(ctx: &mut Ctx, c: TangCmd) -> Res<Out> {
    match c {
        TangCmd::Spherophilic { structure } => {
            let text = ctx.read(&structure)?;
            let t = parse_structure(&text, &structure.display().to_string())?;
            let mut items = vec![];
            let t2 = if t.d == 2 {
                t
            } else {
                items.push(format!("restricted from d = {} to d = 2", t.d));
                restrict_to_dim2_from_data(&t)?
            };
            let r = spherophilic(&t2)?;
            for ((name, ok), comp) in r.per_component.iter().zip(&t2.components) {
                items.push(format!("{name}: generator {} spherophilic {ok}", comp.pi2_generator));
            }
            items.push(format!("spherophilic: {}", r.all()));
            pass("tang spherophilic", items)
        }
        TangCmd::Reduce { structure, mode } => {
            let text = ctx.read(&structure)?;
            let t = parse_structure(&text, &structure.display().to_string())?;
            let (label, counts) = match mode {
                ReduceMode::Total => ("total", pi0_total_reduction_s1(&t)?),
                ReduceMode::Nullholonomic => ("null-holonomic", pi0_nullholonomic_reduction_s1(&t)?),
            };
            let mut items: Vec<String> = t.components.iter().zip(&counts).map(|(c, n)| format!("{}: {n}", c.name)).collect();
            items.push(format!("{label} components over S^1: {}", counts.iter().sum::<u64>()));
            pass("tang reduce", items)
        }
    }
}

fn inv(ctx: &mut Ctx, c: InvCmd) -> Res<Out> {
    let tol = ctx.tolerance;
    match c {
        InvCmd::Cy { mtc, manifold } => {
            let m = parse_mtc(&ctx.read(&mtc)?, &mtc.display().to_string())?;
            let w = parse_manifold(&ctx.read(&manifold)?, &manifold.display().to_string())?;
            let cy = crane_yetter(&m, &w, tol)?;
            let items = vec![
                format!("manifold {}: chi {} sigma {} p1 {}", w.name, cy.chi, cy.sigma, cy.p1),
                format!("D = {:.12}  kappa = {:.12}{:+.12}i", cy.global_dim, cy.kappa.re, cy.kappa.im),
                format!("CY = {:.12}{:+.12}i", cy.value.re, cy.value.im),
            ];
            Ok(("inv cy".into(), items, Outcome::Pass, m.warnings(tol)))
        }
        InvCmd::Modular { mtc } => {
            let m = parse_mtc(&ctx.read(&mtc)?, &mtc.display().to_string())?;
            let v = is_modular(&m, tol)?;
            let names: Vec<&str> = v.transparent.iter().map(|&i| m.labels[i].as_str()).collect();
            let items = vec![
                format!("transparent objects: {}", names.join(" ")),
                format!("rank S = {}/{}", v.s_rank, m.rank()),
                format!("dim Z(T^3) = {}", v.torus_dim),
                format!("modular: {}", v.modular),
                if v.modular { "Crane-Yetter theory is invertible".to_string() } else { "invertibility of Crane-Yetter is not concluded".to_string() },
            ];
            Ok(("inv modular".into(), items, Outcome::Pass, v.warnings))
        }
        InvCmd::Euler { lambda, bordism } => {
            ctx.arg(&lambda);
            let l = parse_rational(&lambda).ok_or_else(|| Error::Config(format!("bad rational `{lambda}`")))?;
            let b = ctx.bordism(&bordism)?;
            let v = euler_theory(&l, &b)?;
            pass("inv euler", vec![format!("chi = {}", b.euler_characteristic()), format!("value = {v}")])
        }
    }
}

fn report_all(ctx: &mut Ctx, path: &Path) -> Res<Out> {
    let text = ctx.read(path)?;
    let mut cfg = Config::parse(&text)?;
    if let Some(s) = ctx.opts.seed {
        cfg.seed = s;
    }
    if let Some(t) = ctx.opts.tolerance {
        cfg.tolerance = t;
    }
    if let Some(g) = ctx.opts.genus_cap {
        cfg.genus_cap = g;
    }
    let base = path.parent().unwrap_or(Path::new("."));
    for f in cfg.mtc.iter().chain(&cfg.manifolds).chain(cfg.structures.iter().map(|s| &s.path)) {
        if let Ok(t) = std::fs::read(base.join(f)) {
            ctx.inputs.push(t);
        }
    }
    for m in &cfg.manifolds {
        // fail early on a bad form so the error carries the file name
        if let Ok(t) = std::fs::read_to_string(base.join(m)) {
            let w = parse_manifold(&t, m)?;
            signature(&w.form)?;
        }
    }
    let sections = run_suite(&cfg, base, ctx.exec());
    let mut items = vec![];
    let mut outcome = Outcome::Pass;
    for s in &sections {
        items.push(format!("[{}] {}: {}", s.id, s.title, s.status));
        items.extend(s.lines.iter().map(|l| format!("    {l}")));
        outcome = outcome.max(match &s.status {
            Status::Pass | Status::Skipped(_) => Outcome::Pass,
            Status::Fail | Status::Error(_) => Outcome::Fail,
        });
    }
    let passed = sections.iter().filter(|s| s.status == Status::Pass).count();
    items.push(format!("{passed}/{} sections passed", sections.len()));
    Ok(("report all".into(), items, outcome, vec![]))
}
