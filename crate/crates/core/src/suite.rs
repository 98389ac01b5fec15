//! The full check suite behind `report all`, driven by a TOML config.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use crate::algebra::Algebra;
use crate::azu::CriterionReport;
use crate::bord2::{
    compose, moves, pants_decompose_with, replay, surgery_apply, surgery_path, tensor, Bordism2Canonical, Strategy, SurfaceState,
    DEFAULT_GENUS_CAP,
};
use crate::corpus::{bordism_corpus, builtin_corpus, builtin_ineligible, composable_pairs, frobenius, frobenius_corpus_q, run_harness, AnyAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, DEFAULT_TOLERANCE, F2, Q};
use crate::frob::{torus_counterexample_exhibit, FrobeniusAlgebra};
use crate::inv::{crane_yetter, euler_theory, is_modular, parse_manifold, parse_mtc, signature, FourManifold, MtcData};
use crate::par::Exec;
use crate::tang::{
    parse_structure, pi0_nullholonomic_reduction_s1, pi0_total_reduction_s1, reference_structures, restrict_to_dim2, spherophilic, Pi1F,
    StructureComponent, TangentialStructureData,
};

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_genus_cap() -> u32 {
    DEFAULT_GENUS_CAP
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StructurePin {
    pub path: String,
    pub total: u64,
    pub null: u64,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CyPin {
    pub mtc: String,
    pub manifold: String,
    pub value: [f64; 2],
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SignaturePin {
    pub manifold: String,
    pub sigma: i64,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModularPin {
    pub mtc: String,
    pub modular: bool,
    pub torus_dim: usize,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default)]
    pub cy: Vec<CyPin>,
    #[serde(default)]
    pub signature: Vec<SignaturePin>,
    #[serde(default)]
    pub modular: Vec<ModularPin>,
}

/// Paths are relative to the config file's directory.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_genus_cap")]
    pub genus_cap: u32,
    /// `builtin` or a directory of `.alg` files.
    #[serde(default)]
    pub corpus: Option<String>,
    #[serde(default)]
    pub mtc: Vec<String>,
    #[serde(default)]
    pub manifolds: Vec<String>,
    #[serde(default)]
    pub structures: Vec<StructurePin>,
    #[serde(default)]
    pub expect: Expectations,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            tolerance: DEFAULT_TOLERANCE,
            genus_cap: DEFAULT_GENUS_CAP,
            corpus: None,
            mtc: vec![],
            manifolds: vec![],
            structures: vec![],
            expect: Expectations::default(),
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let c: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.tolerance.is_finite() || self.tolerance < 0.0 {
            return Err(Error::Config(format!("tolerance must be a non-negative number, got {}", self.tolerance)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
    Error(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::Fail => f.write_str("FAIL"),
            Status::Skipped(why) => write!(f, "skipped ({why})"),
            Status::Error(e) => write!(f, "error ({e})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub lines: Vec<String>,
}

#[derive(Default)]
struct Checks {
    lines: Vec<String>,
    ok: bool,
    started: bool,
}

impl Checks {
    fn new() -> Self {
        Checks { lines: vec![], ok: true, started: true }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        let what = what.into();
        if !cond {
            self.ok = false;
            self.lines.push(format!("FAILED {what}"));
        } else {
            self.lines.push(what);
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn finish(self, id: u8, title: &'static str) -> Section {
        debug_assert!(self.started);
        Section { id, title, status: if self.ok { Status::Pass } else { Status::Fail }, lines: self.lines }
    }
}

fn section_error(id: u8, title: &'static str, e: Error) -> Section {
    Section { id, title, status: Status::Error(e.to_string()), lines: vec![] }
}

fn load_corpus(cfg: &Config, base: &Path) -> Result<(Vec<AnyAlgebra>, bool)> {
    match cfg.corpus.as_deref() {
        None | Some("builtin") => {
            let mut c = builtin_corpus();
            c.extend(builtin_ineligible());
            Ok((c, true))
        }
        Some(dir) => Ok((load_algebra_dir(&base.join(dir))?, false)),
    }
}

/// Every `.alg` file in `dir`, sorted by file name.
pub fn load_algebra_dir(dir: &Path) -> Result<Vec<AnyAlgebra>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "alg"))
        .collect();
    paths.sort();
    paths.iter().map(|p| AnyAlgebra::load(p)).collect()
}

fn load_named<T>(base: &Path, files: &[String], parse: fn(&str, &str) -> Result<T>) -> Result<BTreeMap<String, T>> {
    let mut out = BTreeMap::new();
    for f in files {
        let path = base.join(f);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        out.insert(stem, parse(&text, &path.display().to_string())?);
    }
    Ok(out)
}

/// Runs every section. Paths in `cfg` resolve against `base`.
pub fn run_suite(cfg: &Config, base: &Path, exec: Exec) -> Vec<Section> {
    let mut out = Vec::new();
    match load_corpus(cfg, base) {
        Ok((corpus, builtin)) => {
            let reports = run_harness(&corpus, exec);
            out.push(base_case(&reports, builtin));
            out.push(circle_center(&reports));
            out.push(saddle_dichotomy(&reports));
            out.push(frobenius_evaluation(&corpus, cfg.seed, exec));
        }
        Err(e) => {
            for (id, title) in [(1, TITLES[0]), (2, TITLES[1]), (3, TITLES[2]), (4, TITLES[3])] {
                out.push(section_error(id, title, e.clone()));
            }
        }
    }
    out.push(surgery_engine(cfg.genus_cap));
    out.push(spherophilia_table());
    out.push(match reduction_counts(cfg, base) {
        Ok(s) => s,
        Err(e) => section_error(7, TITLES[6], e),
    });
    out.push(crane_yetter_section(cfg, base));
    out.push(euler_section(cfg.seed));
    out.push(negative_exhibit());
    out
}

pub const TITLES: [&str; 10] = [
    "base-case theorem instances",
    "circle value equals center",
    "saddle invertibility dichotomy",
    "Frobenius evaluation",
    "surgery engine",
    "spherophilia table",
    "dimensional-reduction counting",
    "Crane-Yetter values and modularity",
    "Euler theory",
    "torus counterexamples without extension",
];

pub fn base_case(reports: &[CriterionReport], builtin: bool) -> Section {
    let mut c = Checks::new();
    for r in reports {
        c.note(format!("{r}"));
    }
    let violations = reports.iter().filter(|r| !r.consistent()).count();
    c.expect(violations == 0, format!("violations: {violations}"));
    if reports.is_empty() {
        c.note("warning: empty corpus, check is vacuous");
    }
    if builtin {
        let eligible = reports.iter().filter(|r| r.is_eligible() && r.field != "F2").count();
        c.expect(eligible >= 15, format!("eligible algebras over Q, F3, F5: {eligible}"));
        let find = |name: &str| reports.iter().find(|r| r.name == name);
        if let Some(m2) = find("M2(Q)") {
            c.expect(m2.circle == 1 && m2.azumaya_rank == 16, format!("M2(Q): circle {} azumaya {}/16", m2.circle, m2.azumaya_rank));
        }
        if let Some(z2) = find("Q[Z/2]") {
            c.expect(z2.circle == 2 && z2.azumaya_rank < 4, format!("Q[Z/2]: circle {} azumaya {}/4", z2.circle, z2.azumaya_rank));
        }
        if let Some(s3) = find("Q[S3]") {
            c.expect(s3.circle == 3, format!("Q[S3]: circle {}", s3.circle));
        }
    }
    c.finish(1, TITLES[0])
}

pub fn circle_center(reports: &[CriterionReport]) -> Section {
    let mut c = Checks::new();
    for r in reports.iter().filter(|r| r.is_eligible()) {
        c.expect(r.circle == r.center, format!("{}: circle {} center {}", r.name, r.circle, r.center));
    }
    c.finish(2, TITLES[1])
}

pub fn saddle_dichotomy(reports: &[CriterionReport]) -> Section {
    let mut c = Checks::new();
    for r in reports.iter().filter(|r| r.is_eligible()) {
        let inv = r.saddle_invertible == Some(true);
        c.expect(inv == r.is_azumaya(), format!("{}: saddle invertible {inv}, Azumaya {}", r.name, r.is_azumaya()));
        if r.is_azumaya() {
            c.expect(r.composite_identity == Some(true), format!("{}: saddle and co-saddle composites are identities", r.name));
        }
    }
    c.finish(3, TITLES[2])
}

fn torus_is_dim<F: Field>(a: &Algebra<F>) -> Option<bool> {
    let f = frobenius(a)?;
    Some(f.closed_surface(1).ok()? == F::from_i64(a.dim() as i64))
}

fn pair_laws<F: Field>(a: &FrobeniusAlgebra<F>, pairs: &[(Bordism2Canonical, Bordism2Canonical)]) -> Result<usize> {
    let mut bad = 0;
    for (b1, b2) in pairs {
        let glued = compose(b1, b2)?;
        if a.evaluate(&glued)? != a.evaluate(b2)?.mul(&a.evaluate(b1)?) {
            bad += 1;
        }
        if a.evaluate(&tensor(b1, b2))? != a.evaluate(b1)?.kron(&a.evaluate(b2)?) {
            bad += 1;
        }
        if a.evaluate_with(&glued, Strategy::Stacked)? != a.evaluate_with(&glued, Strategy::Nested)? {
            bad += 1;
        }
        let full = pants_decompose_with(&glued, Strategy::Nested);
        if a.evaluate_layers(glued.source().circles, &full)? != a.evaluate(&glued)? {
            bad += 1;
        }
    }
    Ok(bad)
}

pub fn frobenius_evaluation(corpus: &[AnyAlgebra], seed: u64, exec: Exec) -> Section {
    let mut c = Checks::new();
    let z2 = FrobeniusAlgebra::new(Algebra::<Q>::cyclic_group(2), vec![Q::from_i64(1), Q::from_i64(0)]);
    for g in 0..=3u32 {
        let v = z2.evaluate(&Bordism2Canonical::closed(g));
        c.expect(v.as_ref().ok() == Some(&Matrix::scalar(Q::from_i64(1 << g))), format!("Q[Z/2] genus {g}: {}", v.map(|m| m[(0, 0)].to_string()).unwrap_or_default()));
        for s in [Strategy::Stacked, Strategy::Nested] {
            let layers = pants_decompose_with(&Bordism2Canonical::closed(g), s);
            let m = z2.evaluate_layers(0, &layers);
            c.expect(m.ok() == Some(Matrix::scalar(Q::from_i64(1 << g))), format!("Q[Z/2] genus {g} via {s:?} layers"));
        }
    }
    let tori: Vec<Option<bool>> = exec.map(corpus, |a| match a {
        AnyAlgebra::Q(x) => torus_is_dim(x),
        AnyAlgebra::F2(x) => torus_is_dim(x),
        AnyAlgebra::F3(x) => torus_is_dim(x),
        AnyAlgebra::F5(x) => torus_is_dim(x),
    });
    let checked = tori.iter().flatten().count();
    let frob_q = frobenius_corpus_q();
    let extra = frob_q.iter().filter(|f| f.closed_surface(1).ok() == Some(Q::from_i64(f.dim() as i64))).count();
    c.expect(tori.iter().flatten().all(|&b| b) && extra == frob_q.len(), format!("Z(T^2) = dim A on {} algebras", checked + frob_q.len()));

    let pairs = composable_pairs(&bordism_corpus(), seed, 150);
    let qq = FrobeniusAlgebra::new(Algebra::<Q>::ground().product(&Algebra::ground()), vec![Q::from_i64(1), Q::from_i64(1)]);
    let f2z3 = FrobeniusAlgebra::new(Algebra::<F2>::cyclic_group(3), vec![F2::new(1), F2::new(0), F2::new(0)]);
    let bad = pair_laws(&z2, &pairs).and_then(|x| Ok(x + pair_laws(&qq, &pairs)? + pair_laws(&f2z3, &pairs)?));
    match bad {
        Ok(n) => c.expect(n == 0 && pairs.len() >= 100, format!("functoriality and decomposition invariance on {} pairs, seed {seed}: {n} mismatches", pairs.len())),
        Err(e) => c.expect(false, format!("pair evaluation error: {e}")),
    }

    // dimension one: cylinder = (cap then cup) · Z(S²)^{-1}
    for lam in [Q::from_i64(2), Q::new((-1).into(), 3.into())] {
        let k = FrobeniusAlgebra::new(Algebra::<Q>::ground(), vec![lam.clone()]);
        let cc = compose(&Bordism2Canonical::cap(), &Bordism2Canonical::cup()).expect("composable");
        let sphere = k.closed_surface(0).expect("nondegenerate");
        let lhs = k.evaluate(&cc).expect("valid").scale(&Field::inv(&sphere).expect("nonzero"));
        c.expect(lhs == k.evaluate(&Bordism2Canonical::cylinder()).expect("valid"), format!("dim-1 sphere identity, λ = {lam}"));
    }
    c.finish(4, TITLES[3])
}

/// Closed surfaces of total genus `≤ max_genus` with `1..=max_components` components.
pub fn enumerate_states(max_genus: u32, max_components: usize) -> Vec<SurfaceState> {
    fn go(out: &mut Vec<SurfaceState>, cur: &mut Vec<u32>, min: u32, left: u32, slots: usize) {
        if !cur.is_empty() {
            out.push(SurfaceState::new(cur.clone()));
        }
        if slots == 0 {
            return;
        }
        for g in min..=left {
            cur.push(g);
            go(out, cur, g, left - g, slots - 1);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut out, &mut Vec::new(), 0, max_genus, max_components);
    out
}

pub fn surgery_engine(genus_cap: u32) -> Section {
    let mut c = Checks::new();
    let st = |s: &str| SurfaceState::parse(s).expect("literal state");
    let mut cases = vec![("{0}".to_string(), 1usize), ("{1,1}".to_string(), 2)];
    cases.extend((1..=4u32).map(|g| (format!("{{{g}}}"), g.abs_diff(1) as usize)));
    for (s, want) in &cases {
        let from = st(s);
        match surgery_path(&from, &st("{1}"), genus_cap) {
            Ok(p) => {
                let end = replay(&from, &p);
                c.expect(p.len() == *want && end.ok() == Some(st("{1}")), format!("{s} -> {{1}}: {} moves", p.len()));
            }
            Err(e) => c.expect(false, format!("{s} -> {{1}}: {e}")),
        }
    }
    let states = enumerate_states(4, 4);
    let unreachable: Vec<String> = states.iter().filter(|s| surgery_path(s, &st("{1}"), genus_cap.max(4)).is_err()).map(|s| s.to_string()).collect();
    c.expect(unreachable.is_empty(), format!("{} states of total genus <= 4 reach {{1}}; unreachable: {unreachable:?}", states.len()));
    let mut flips = 0;
    let mut bad = 0;
    for s in &states {
        for m in moves(s) {
            let next = surgery_apply(s, &m).expect("generated move");
            flips += 1;
            if (next.euler_characteristic() - s.euler_characteristic()).abs() != 2 {
                bad += 1;
            }
        }
    }
    c.expect(bad == 0, format!("{flips} moves change χ by ±2 ({bad} exceptions)"));
    c.finish(5, TITLES[4])
}

pub fn spherophilia_table() -> Section {
    let mut c = Checks::new();
    let expected = [("orientation", true), ("spin", true), ("stable framing", true), ("tangential 2-framing", false)];
    for ((name, g), (_, want)) in reference_structures().into_iter().zip(expected) {
        let t = TangentialStructureData { d: 2, components: vec![StructureComponent { name: name.into(), pi1_f: Pi1F::Finite(1), pi2_generator: g, pi2_bod_image_order: 1 }] };
        let got = spherophilic(&t).map(|r| r.all()).unwrap_or(!want);
        c.expect(got == want, format!("{name}: generator {g}, spherophilic {got}"));
    }
    let mut cases = 0;
    for d in 3..=6 {
        for onto in [true, false] {
            let t = TangentialStructureData { d, components: vec![StructureComponent { name: "x".into(), pi1_f: Pi1F::Finite(2), pi2_generator: 1, pi2_bod_image_order: 2 }] };
            let ok = restrict_to_dim2(&t, &[onto]).and_then(|r| spherophilic(&r)).map(|r| r.all()).unwrap_or(false);
            c.expect(ok, format!("d = {d}, π₂X onto Z/2 = {onto}: restriction spherophilic"));
            cases += 1;
        }
    }
    c.note(format!("{cases} restriction cases"));
    c.finish(6, TITLES[5])
}

pub fn reduction_counts(cfg: &Config, base: &Path) -> Result<Section> {
    if cfg.structures.is_empty() {
        return Ok(Section { id: 7, title: TITLES[6], status: Status::Skipped("no structure files configured".into()), lines: vec![] });
    }
    let mut c = Checks::new();
    for pin in &cfg.structures {
        let path = base.join(&pin.path);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let t = parse_structure(&text, &pin.path)?;
        let total = pi0_total_reduction_s1(&t)?;
        let null = pi0_nullholonomic_reduction_s1(&t)?;
        let per_component_ok = t.components.iter().zip(total.iter().zip(&null)).all(|(comp, (&tot, &nul))| {
            matches!(nul, 1 | 2) && nul <= tot && comp.pi1_f == Pi1F::Finite(tot) && ((nul == tot) == (comp.pi2_bod_image_order == tot))
        });
        let (ts, ns): (u64, u64) = (total.iter().sum(), null.iter().sum());
        c.expect(per_component_ok && ts == pin.total && ns == pin.null, format!("{}: total {ts} (pinned {}), null-holonomic {ns} (pinned {})", pin.path, pin.total, pin.null));
    }
    Ok(c.finish(7, TITLES[6]))
}

fn approx(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

pub fn crane_yetter_section(cfg: &Config, base: &Path) -> Section {
    let title = TITLES[7];
    if cfg.mtc.is_empty() {
        return Section { id: 8, title, status: Status::Skipped("no MTC files configured".into()), lines: vec![] };
    }
    let loaded = load_named(base, &cfg.mtc, parse_mtc).and_then(|m| Ok((m, load_named(base, &cfg.manifolds, parse_manifold)?)));
    let (mtcs, manifolds): (BTreeMap<String, MtcData>, BTreeMap<String, FourManifold>) = match loaded {
        Ok(x) => x,
        Err(e) => return section_error(8, title, e),
    };
    let tol = cfg.tolerance;
    let mut c = Checks::new();
    for (mn, m) in &mtcs {
        for (wn, w) in &manifolds {
            match crane_yetter(m, w, tol) {
                Ok(cy) => {
                    c.note(format!("CY({mn}, {wn}) = {:.12}{:+.12}i  chi {} sigma {} p1 {} kappa {:.12}{:+.12}i", cy.value.re, cy.value.im, cy.chi, cy.sigma, cy.p1, cy.kappa.re, cy.kappa.im));
                    let trivial = m.rank() == 1 && m.dims[0] == Complex64::new(1.0, 0.0) && m.twists[0] == Complex64::new(1.0, 0.0);
                    if trivial {
                        c.expect(cy.value == Complex64::new(1.0, 0.0), format!("{mn} (trivial) on {wn} is exactly 1"));
                    }
                }
                Err(e) => c.note(format!("CY({mn}, {wn}): {e}")),
            }
        }
        // multiplicativity under disjoint union
        for (an, a) in &manifolds {
            for (bn, b) in &manifolds {
                if let (Ok(x), Ok(y), Ok(z)) = (crane_yetter(m, a, tol), crane_yetter(m, b, tol), crane_yetter(m, &a.disjoint_union(b), tol)) {
                    let scale = x.value.norm().max(1.0) * y.value.norm().max(1.0);
                    if !approx(z.value, x.value * y.value, tol * scale) {
                        c.expect(false, format!("{mn}: CY({an} ⊔ {bn}) is not multiplicative"));
                    }
                }
            }
        }
    }
    for pin in &cfg.expect.cy {
        let got = mtcs.get(&pin.mtc).zip(manifolds.get(&pin.manifold)).map(|(m, w)| crane_yetter(m, w, tol));
        let want = Complex64::new(pin.value[0], pin.value[1]);
        let ok = matches!(&got, Some(Ok(cy)) if approx(cy.value, want, tol));
        c.expect(ok, format!("CY({}, {}) = {} within {tol:e}", pin.mtc, pin.manifold, want));
    }
    for pin in &cfg.expect.signature {
        let got = manifolds.get(&pin.manifold).map(|w| signature(&w.form));
        let ok = matches!(got, Some(Ok(s)) if s == pin.sigma);
        c.expect(ok, format!("{}: σ = {}, p1 = {}", pin.manifold, pin.sigma, 3 * pin.sigma));
    }
    for pin in &cfg.expect.modular {
        match mtcs.get(&pin.mtc).map(|m| is_modular(m, tol)) {
            Some(Ok(v)) => {
                for w in &v.warnings {
                    c.note(format!("warning: {}: {w}", pin.mtc));
                }
                c.expect(v.modular == pin.modular && v.torus_dim == pin.torus_dim, format!("{}: modular {} dim Z(T^3) {}", pin.mtc, v.modular, v.torus_dim));
            }
            Some(Err(e)) => c.expect(false, format!("{}: {e}", pin.mtc)),
            None => c.expect(false, format!("{}: not loaded", pin.mtc)),
        }
    }
    c.finish(8, title)
}

pub fn euler_section(seed: u64) -> Section {
    let mut c = Checks::new();
    let pairs = composable_pairs(&bordism_corpus(), seed, usize::MAX);
    let lambdas = [Q::from_i64(3), Q::new(1.into(), 2.into()), Q::from_i64(-2)];
    let mut bad = 0;
    for lam in &lambdas {
        for (b1, b2) in &pairs {
            let e = |b: &Bordism2Canonical| euler_theory(lam, b).expect("nonzero λ");
            if e(&compose(b1, b2).expect("composable")) != e(b1) * e(b2) || e(&tensor(b1, b2)) != e(b1) * e(b2) {
                bad += 1;
            }
        }
    }
    c.expect(bad == 0, format!("functor laws on {} pairs for {} values of λ", pairs.len(), lambdas.len()));
    let three = Q::from_i64(3);
    let pants = euler_theory(&three, &Bordism2Canonical::pants()).ok();
    c.expect(pants == Some(Q::new(1.into(), 3.into())), format!("pants, λ = 3: {}", pants.map(|x| x.to_string()).unwrap_or_default()));
    let g2 = euler_theory(&three, &Bordism2Canonical::closed(2)).ok();
    c.expect(g2 == Some(Q::new(1.into(), 9.into())), format!("closed genus 2, λ = 3: {}", g2.map(|x| x.to_string()).unwrap_or_default()));
    c.finish(9, TITLES[8])
}

pub fn negative_exhibit() -> Section {
    let mut c = Checks::new();
    let mut count = 0;
    match torus_counterexample_exhibit(&frobenius_corpus_q()) {
        Ok(rows) => {
            for r in &rows {
                c.note(format!("{}: Z(T^2) = {} invertible scalar {}, theory invertible {}", r.name, r.torus, r.torus_invertible, r.theory_invertible));
            }
            count += rows.iter().filter(|r| r.is_counterexample()).count();
        }
        Err(e) => c.expect(false, e.to_string()),
    }
    let f2z3 = FrobeniusAlgebra::new(Algebra::<F2>::cyclic_group(3), vec![F2::new(1), F2::new(0), F2::new(0)]);
    if let Ok(rows) = torus_counterexample_exhibit(&[f2z3]) {
        c.note(format!("{}: Z(T^2) = {}", rows[0].name, rows[0].torus));
        count += rows.iter().filter(|r| r.is_counterexample()).count();
    }
    c.expect(count >= 3, format!("{count} algebras with invertible torus scalar and non-invertible theory"));
    c.finish(10, TITLES[9])
}
