//! Acceptance criteria 1-10. Runs as a plain binary: one PASS/FAIL line per
//! criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;

use invtqft::algebra::Algebra;
use invtqft::azu::{azumaya_map, circle_value, ExtendedTheory};
use invtqft::bord2::{compose, moves, pants_decompose_with, replay, surgery_apply, surgery_path, tensor, Bordism2Canonical, Strategy, SurfaceState, TwoCell};
use invtqft::corpus::{bordism_corpus, builtin_corpus, builtin_ineligible, composable_pairs, frobenius, frobenius_corpus_q, run_harness, AnyAlgebra};
use invtqft::exactlin::{Field, Matrix, F2, F3, F5, Q};
use invtqft::frob::{torus_counterexample_exhibit, FrobeniusAlgebra};
use invtqft::inv::{crane_yetter, e8_form, euler_theory, is_modular, parse_manifold, parse_mtc, signature, FourManifold, MtcData};
use invtqft::par::Exec;
use invtqft::tang::{parse_structure, pi0_nullholonomic_reduction_s1, pi0_total_reduction_s1, reference_structures, restrict_to_dim2, spherophilic, Pi1F, StructureComponent, TangentialStructureData};

type Check = Result<(), Vec<String>>;

#[derive(Default)]
struct Failures(Vec<String>);

impl Failures {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn done(self) -> Check {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(self.0)
        }
    }
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn data(p: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(p)
}

fn corpus() -> Vec<AnyAlgebra> {
    let mut c = builtin_corpus();
    c.extend(builtin_ineligible());
    c
}

fn circle_dim(a: &AnyAlgebra) -> usize {
    a.circle_dim()
}

fn criterion_1() -> Check {
    let mut f = Failures::default();
    let algs = corpus();
    let reports = run_harness(&algs, Exec::default());
    let core = reports.iter().filter(|r| r.is_eligible() && r.field != "F2").count();
    f.check(core >= 15, || format!("only {core} eligible algebras over Q, F3, F5"));
    for (a, r) in algs.iter().zip(&reports) {
        if !r.is_eligible() {
            continue;
        }
        let n = a.dim();
        let circle_one = circle_dim(a) == 1;
        let azumaya = a.azumaya_rank() == n * n;
        let cells = r.saddle_invertible == Some(true) && r.generators_invertible == Some(true);
        f.check(circle_one == azumaya && azumaya == cells, || format!("{}: circle=1 {circle_one}, Azumaya {azumaya}, 2-cells invertible {cells}", r.name));
        f.check(r.consistent(), || format!("{}: harness reports {}", r.name, r.verdict()));
    }
    let m2 = Algebra::<Q>::matrix(2);
    f.check(circle_value(&m2).dim == 1 && azumaya_map(&m2).rank() == 16, || "M2(Q) pins".into());
    let z2 = Algebra::<Q>::cyclic_group(2);
    f.check(circle_value(&z2).dim == 2 && azumaya_map(&z2).rank() < 4, || "Q[Z/2] pins".into());
    f.check(circle_value(&Algebra::<Q>::symmetric_group_3()).dim == 3, || "Q[S3] pin".into());
    let f2z2 = reports.iter().find(|r| r.name == "F2[Z/2]");
    f.check(f2z2.is_some_and(|r| !r.is_eligible() && r.verdict() == "ineligible: not separable"), || "F2[Z/2] must be ineligible".into());
    f.done()
}

fn criterion_2() -> Check {
    let mut f = Failures::default();
    // centers from conjugacy classes and simple factors
    let pinned = [
        ("Q", 1),
        ("M2(Q)", 1),
        ("M3(Q)", 1),
        ("Q[Z/2]", 2),
        ("Q[Z/3]", 3),
        ("Q[Z/4]", 4),
        ("Q[Z/5]", 5),
        ("Q[Z/6]", 6),
        ("Q[S3]", 3),
        ("Q[Q8]", 5),
        ("Q×Q", 2),
        ("Q×M2(Q)", 2),
        ("M2(Q)×M2(Q)", 2),
        ("F5[S3]", 3),
        ("F3×M2(F3)", 2),
    ];
    let algs = builtin_corpus();
    for a in &algs {
        let c = a.center_dim();
        f.check(circle_dim(a) == c, || format!("{}: circle {} center {c}", a.name(), circle_dim(a)));
    }
    for (name, want) in pinned {
        match algs.iter().find(|a| a.name() == name) {
            Some(a) => f.check(a.center_dim() == want, || format!("{name}: center {} expected {want}", a.center_dim())),
            None => f.check(false, || format!("{name} missing from corpus")),
        }
    }
    f.done()
}

fn saddle_checks<F: Field>(a: &Algebra<F>, f: &mut Failures) {
    let t = match ExtendedTheory::new(a) {
        Ok(t) => t,
        Err(e) => return f.check(false, || format!("{}: {e}", a.name())),
    };
    let n = a.dim();
    let azumaya = azumaya_map(a).rank() == n * n;
    let s = t.two_cell(TwoCell::Saddle);
    let cs = t.two_cell(TwoCell::CoSaddle);
    f.check(s.is_invertible() == azumaya, || format!("{}: saddle invertible {} but Azumaya {azumaya}", a.name(), s.is_invertible()));
    if azumaya {
        let sc = cs.then(&s).map(|m| m.matrix.is_identity()).unwrap_or(false);
        let cs_s = s.then(&cs).map(|m| m.matrix.is_identity()).unwrap_or(false);
        f.check(sc && cs_s, || format!("{}: saddle and co-saddle are not mutually inverse", a.name()));
    }
}

fn criterion_3() -> Check {
    let mut f = Failures::default();
    for a in builtin_corpus() {
        match &a {
            AnyAlgebra::Q(x) => saddle_checks(x, &mut f),
            AnyAlgebra::F2(x) => saddle_checks(x, &mut f),
            AnyAlgebra::F3(x) => saddle_checks(x, &mut f),
            AnyAlgebra::F5(x) => saddle_checks(x, &mut f),
        }
    }
    f.done()
}

fn torus_dim<F: Field>(a: &Algebra<F>) -> Option<bool> {
    let fr = frobenius(a)?;
    Some(fr.closed_surface(1).ok()? == F::from_i64(a.dim() as i64))
}

fn laws<F: Field>(a: &FrobeniusAlgebra<F>, pairs: &[(Bordism2Canonical, Bordism2Canonical)], f: &mut Failures) {
    for (b1, b2) in pairs {
        let glued = compose(b1, b2).expect("composable");
        let z = |b: &Bordism2Canonical| a.evaluate(b).expect("evaluates");
        f.check(z(&glued) == z(b2).mul(&z(b1)), || format!("{}: Z(b2∘b1) != Z(b2)Z(b1)", a.algebra.name()));
        f.check(z(&tensor(b1, b2)) == z(b1).kron(&z(b2)), || format!("{}: Z(b1⊔b2) != Z(b1)⊗Z(b2)", a.algebra.name()));
        let st = a.evaluate_with(&glued, Strategy::Stacked).unwrap();
        let ne = a.evaluate_with(&glued, Strategy::Nested).unwrap();
        f.check(st == ne, || format!("{}: decompositions disagree", a.algebra.name()));
    }
}

fn criterion_4() -> Check {
    let mut f = Failures::default();
    let z2 = FrobeniusAlgebra::new(Algebra::<Q>::cyclic_group(2), vec![Q::from_i64(1), Q::from_i64(0)]);
    for (g, want) in [(0u32, 1i64), (1, 2), (2, 4), (3, 8)] {
        let v = z2.evaluate(&Bordism2Canonical::closed(g)).unwrap();
        f.check(v == Matrix::scalar(Q::from_i64(want)), || format!("Q[Z/2] genus {g}: {}", v.row(0)[0]));
        for s in [Strategy::Stacked, Strategy::Nested] {
            let m = z2.evaluate_layers(0, &pants_decompose_with(&Bordism2Canonical::closed(g), s)).unwrap();
            f.check(m == Matrix::scalar(Q::from_i64(want)), || format!("Q[Z/2] genus {g} via {s:?} layers"));
        }
    }
    let mut commutative = 0;
    for a in corpus() {
        let r = match &a {
            AnyAlgebra::Q(x) => torus_dim(x),
            AnyAlgebra::F2(x) => torus_dim(x),
            AnyAlgebra::F3(x) => torus_dim(x),
            AnyAlgebra::F5(x) => torus_dim(x),
        };
        if let Some(ok) = r {
            commutative += 1;
            f.check(ok, || format!("{}: Z(T^2) != dim", a.name()));
        }
    }
    for a in frobenius_corpus_q() {
        f.check(a.closed_surface(1).unwrap() == Q::from_i64(a.dim() as i64), || format!("{}: Z(T^2) != dim", a.algebra.name()));
    }
    f.check(commutative >= 20, || format!("only {commutative} commutative corpus algebras"));

    let pairs = composable_pairs(&bordism_corpus(), 0, 150);
    f.check(pairs.len() >= 100, || format!("{} pairs", pairs.len()));
    laws(&z2, &pairs, &mut f);
    let qq = Algebra::<Q>::ground().product(&Algebra::ground());
    laws(&FrobeniusAlgebra::new(qq, vec![Q::from_i64(1), q(1, 2)]), &pairs, &mut f);
    let f3 = Algebra::<F3>::cyclic_group(2);
    laws(&FrobeniusAlgebra::new(f3, vec![F3::new(1), F3::new(0)]), &pairs, &mut f);
    let f5 = Algebra::<F5>::cyclic_group(3);
    laws(&FrobeniusAlgebra::new(f5, vec![F5::new(2), F5::new(0), F5::new(0)]), &pairs, &mut f);

    for lam in [Q::from_i64(2), q(-1, 3), Q::from_i64(7)] {
        let k = FrobeniusAlgebra::new(Algebra::<Q>::ground(), vec![lam.clone()]);
        let cc = compose(&Bordism2Canonical::cap(), &Bordism2Canonical::cup()).unwrap();
        let sphere = k.evaluate(&Bordism2Canonical::closed(0)).unwrap().row(0)[0].clone();
        f.check(sphere == lam, || "dim-1 sphere value".into());
        let lhs = k.evaluate(&cc).unwrap().scale(&sphere.inv().unwrap());
        f.check(lhs == k.evaluate(&Bordism2Canonical::cylinder()).unwrap(), || format!("dim-1 cylinder identity, λ = {lam}"));
    }
    f.done()
}

fn criterion_5() -> Check {
    let mut f = Failures::default();
    let st = |s: &str| SurfaceState::parse(s).unwrap();
    let one = st("{1}");
    let mut cases = vec![("{0}", 1usize), ("{1,1}", 2)];
    let names: Vec<String> = (1..=4).map(|g| format!("{{{g}}}")).collect();
    for (g, n) in (1..=4u32).zip(&names) {
        cases.push((n.as_str(), (g as i64 - 1).unsigned_abs() as usize));
    }
    for (s, want) in cases {
        let p = surgery_path(&st(s), &one, 8).unwrap();
        f.check(p.len() == want, || format!("{s} -> {{1}}: {} moves, expected {want}", p.len()));
        f.check(replay(&st(s), &p).unwrap() == one, || format!("{s}: replay does not end at {{1}}"));
    }
    // every closed orientable surface of total genus <= 4, up to 4 components
    let mut states = Vec::new();
    for a in 0..=4u32 {
        for b in 0..=a {
            for c in 0..=b {
                for d in 0..=c {
                    let total = a + b + c + d;
                    if total > 4 {
                        continue;
                    }
                    for k in 1..=4 {
                        let gs: Vec<u32> = [a, b, c, d][..k].to_vec();
                        if gs.iter().sum::<u32>() == total && [a, b, c, d][k..].iter().all(|&x| x == 0) {
                            states.push(SurfaceState::new(gs));
                        }
                    }
                }
            }
        }
    }
    states.sort_by_key(|s| s.to_string());
    states.dedup();
    f.check(states.len() == 37, || format!("{} states enumerated", states.len()));
    for s in &states {
        match surgery_path(s, &one, 8) {
            Ok(p) => f.check(replay(s, &p).unwrap() == one, || format!("{s}: bad replay")),
            Err(e) => f.check(false, || format!("{s}: {e}")),
        }
        for m in moves(s) {
            let t = surgery_apply(s, &m).unwrap();
            f.check((t.euler_characteristic() - s.euler_characteristic()).abs() == 2, || format!("{s} {m}: χ change not ±2"));
        }
    }
    f.done()
}

fn criterion_6() -> Check {
    let mut f = Failures::default();
    let expected = [("orientation", true), ("spin", true), ("stable framing", true), ("tangential 2-framing", false)];
    let refs = reference_structures();
    f.check(refs.len() == 4, || "four reference structures".into());
    for ((name, g), (want_name, want)) in refs.into_iter().zip(expected) {
        f.check(name == want_name, || format!("reference order: {name}"));
        let t = TangentialStructureData { d: 2, components: vec![StructureComponent::new(name, Pi1F::Finite(1), g, 1).unwrap()] };
        let got = spherophilic(&t).unwrap().all();
        f.check(got == want, || format!("{name}: spherophilic {got}"));
    }
    let mut cases = 0;
    for d in [3, 4, 5, 6] {
        for onto in [true, false] {
            let t = TangentialStructureData { d, components: vec![StructureComponent::new("x", Pi1F::Finite(2), 1, 2).unwrap()] };
            let r = restrict_to_dim2(&t, &[onto]).unwrap();
            f.check(r.d == 2 && spherophilic(&r).unwrap().all(), || format!("d = {d}, onto {onto}: restriction not spherophilic"));
            cases += 1;
        }
    }
    f.check(cases == 8, || "eight restriction cases".into());
    f.done()
}

fn criterion_7() -> Check {
    let mut f = Failures::default();
    let pins: [(&str, &[u64], &[u64]); 6] = [
        ("orientation_d3.tang", &[1], &[1]),
        ("spin_d3.tang", &[2], &[2]),
        ("framing_d3.tang", &[2], &[2]),
        ("orientation_spin_d4.tang", &[1, 2], &[1, 2]),
        ("cyclic6_d3.tang", &[6], &[2]),
        ("mixed_d5.tang", &[2, 3], &[2, 1]),
    ];
    for (file, total, null) in pins {
        let path = data(&format!("structures/{file}"));
        let t = parse_structure(&std::fs::read_to_string(&path).unwrap(), file).unwrap();
        let tot = pi0_total_reduction_s1(&t).unwrap();
        let nul = pi0_nullholonomic_reduction_s1(&t).unwrap();
        f.check(tot == total && nul == null, || format!("{file}: total {tot:?} null {nul:?}"));
        for (c, (&a, &b)) in t.components.iter().zip(tot.iter().zip(&nul)) {
            f.check(Pi1F::Finite(a) == c.pi1_f && (b == 1 || b == 2) && b <= a, || format!("{file}/{}: bounds", c.name));
        }
    }
    f.done()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mtc(labels: &[&str], dims: &[f64], twists: &[Complex64], s: &[&[f64]]) -> MtcData {
    let rows: Vec<Vec<Complex64>> = s.iter().map(|r| r.iter().map(|&x| c(x, 0.0)).collect()).collect();
    MtcData {
        labels: labels.iter().map(|s| s.to_string()).collect(),
        dims: dims.iter().map(|&d| c(d, 0.0)).collect(),
        twists: twists.to_vec(),
        s_tilde: Some(Matrix::from_rows(&rows, labels.len())),
    }
}

fn criterion_8() -> Check {
    let mut f = Failures::default();
    let tol = 1e-9;
    let one = c(1.0, 0.0);
    let trivial = mtc(&["1"], &[1.0], &[one], &[&[1.0]]);
    let semion = mtc(&["1", "s"], &[1.0, 1.0], &[one, c(0.0, 1.0)], &[&[1.0, 1.0], &[1.0, -1.0]]);
    let toric = mtc(
        &["1", "e", "m", "f"],
        &[1.0; 4],
        &[one, one, one, c(-1.0, 0.0)],
        &[&[1.0, 1.0, 1.0, 1.0], &[1.0, 1.0, -1.0, -1.0], &[1.0, -1.0, 1.0, -1.0], &[1.0, -1.0, -1.0, 1.0]],
    );
    let rep_z2 = mtc(&["1", "sgn"], &[1.0, 1.0], &[one, one], &[&[1.0, 1.0], &[1.0, 1.0]]);
    for (file, m) in [("trivial", &trivial), ("semion", &semion), ("toric", &toric), ("rep_z2", &rep_z2)] {
        let path = data(&format!("mtc/{file}.mtc"));
        let parsed = parse_mtc(&std::fs::read_to_string(&path).unwrap(), file).unwrap();
        f.check(&parsed == m, || format!("mtc/{file}.mtc disagrees with the in-test data"));
    }
    let s4 = FourManifold { name: "S4".into(), chi: 2, form: vec![] };
    let cp2 = FourManifold { name: "CP2".into(), chi: 3, form: vec![vec![1]] };
    let s2s2 = FourManifold { name: "S2xS2".into(), chi: 4, form: vec![vec![0, 1], vec![1, 0]] };
    let e8 = FourManifold { name: "E8".into(), chi: 10, form: e8_form() };
    let e8_file = parse_manifold(&std::fs::read_to_string(data("manifolds/e8.mfd")).unwrap(), "e8").unwrap();
    f.check(signature(&e8_file.form).ok() == Some(8), || "data/manifolds/e8.mfd signature".into());
    for w in [&s4, &cp2, &s2s2, &e8, &cp2.disjoint_union(&e8)] {
        let v = crane_yetter(&trivial, w, tol).unwrap().value;
        f.check(v == one, || format!("trivial MTC on {}: {v}", w.name));
    }
    let v = crane_yetter(&toric, &s4, tol).unwrap().value;
    f.check((v - c(4.0, 0.0)).norm() <= tol, || format!("toric on S4: {v}"));
    let v = crane_yetter(&semion, &cp2, tol).unwrap().value;
    f.check((v - c(2.0, 2.0)).norm() <= tol, || format!("semion on CP2: {v}"));
    let cy = crane_yetter(&semion, &e8, tol).unwrap();
    f.check(cy.sigma == 8 && cy.p1 == 24, || format!("E8: σ {} p1 {}", cy.sigma, cy.p1));
    let tv = is_modular(&toric, tol).unwrap();
    f.check(tv.modular && tv.torus_dim == 1, || "toric code should be modular".into());
    let sv = is_modular(&semion, tol).unwrap();
    f.check(sv.modular, || "semion should be modular".into());
    let rv = is_modular(&rep_z2, tol).unwrap();
    f.check(!rv.modular && rv.torus_dim == 2, || format!("Rep(Z/2): modular {} dim {}", rv.modular, rv.torus_dim));
    f.done()
}

fn criterion_9() -> Check {
    let mut f = Failures::default();
    let pairs = composable_pairs(&bordism_corpus(), 0, usize::MAX);
    for lam in [Q::from_i64(3), q(2, 5), Q::from_i64(-1)] {
        let e = |b: &Bordism2Canonical| euler_theory(&lam, b).unwrap();
        for (b1, b2) in &pairs {
            let p = e(b1) * e(b2);
            f.check(e(&compose(b1, b2).unwrap()) == p && e(&tensor(b1, b2)) == p, || format!("functor laws fail for λ = {lam}"));
        }
        f.check(e(&Bordism2Canonical::cylinder()) == Q::from_i64(1), || "cylinder must map to 1".into());
    }
    let three = Q::from_i64(3);
    f.check(euler_theory(&three, &Bordism2Canonical::pants()).unwrap() == q(1, 3), || "pants, λ = 3".into());
    f.check(euler_theory(&three, &Bordism2Canonical::closed(2)).unwrap() == q(1, 9), || "genus 2, λ = 3".into());
    f.check(euler_theory(&Q::from_i64(0), &Bordism2Canonical::pants()).is_err(), || "λ = 0 must be rejected".into());
    f.done()
}

fn criterion_10() -> Check {
    let mut f = Failures::default();
    let rows = torus_counterexample_exhibit(&frobenius_corpus_q()).unwrap();
    let hits: Vec<_> = rows.iter().filter(|r| r.is_counterexample()).collect();
    f.check(hits.len() >= 3, || format!("{} counterexamples", hits.len()));
    for r in &hits {
        f.check(r.torus_invertible && !r.theory_invertible, || format!("{}: inconsistent row", r.name));
    }
    let z2 = rows.iter().find(|r| r.name == "Q[Z/2]");
    f.check(z2.is_some_and(|r| r.is_counterexample() && r.torus == "2"), || "Q[Z/2] should be a counterexample with torus 2".into());
    let k = rows.iter().find(|r| r.name == "Q");
    f.check(k.is_some_and(|r| !r.is_counterexample() && r.theory_invertible), || "Q is invertible".into());
    let f2 = FrobeniusAlgebra::new(Algebra::<F2>::cyclic_group(3), vec![F2::new(1), F2::new(0), F2::new(0)]);
    let r = torus_counterexample_exhibit(&[f2]).unwrap();
    f.check(r[0].is_counterexample(), || "F2[Z/3] has Z(T^2) = 1 but dim 3".into());
    f.done()
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("base-case theorem instances", criterion_1),
        ("circle value equals center", criterion_2),
        ("saddle invertibility dichotomy", criterion_3),
        ("Frobenius evaluation", criterion_4),
        ("surgery engine", criterion_5),
        ("spherophilia table", criterion_6),
        ("dimensional-reduction counting", criterion_7),
        ("Crane-Yetter values and modularity", criterion_8),
        ("Euler theory", criterion_9),
        ("torus counterexamples without extension", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(()) => println!("criterion {:>2} {name} ... PASS ({:.2}s)", i + 1, t.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name} ... FAIL", i + 1);
                for w in why.iter().take(20) {
                    println!("    {w}");
                }
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
