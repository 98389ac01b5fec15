//! Invertible theories: the Euler theory on 2-bordisms and Crane–Yetter
//! values of 4-manifolds from modular data.
//!
//! Conventions: `λ₁ = D`, and `λ₂^{p₁}` is evaluated as `κ^σ` with
//! `κ = p₊/D` and `p₁ = 3σ`, which avoids choosing a cube root.

use num_complex::Complex64;
use num_traits::Signed;

use crate::bord2::Bordism2Canonical;
use crate::error::{Error, Result};
use crate::exactlin::{complex_rank, Field, Matrix, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct MtcData {
    pub labels: Vec<String>,
    pub dims: Vec<Complex64>,
    pub twists: Vec<Complex64>,
    pub s_tilde: Option<Matrix<Complex64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourManifold {
    pub name: String,
    pub chi: i64,
    pub form: Vec<Vec<i64>>,
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

impl MtcData {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Violated data conventions; these are warnings, not errors.
    pub fn warnings(&self, tol: f64) -> Vec<String> {
        let mut w = Vec::new();
        let one = Complex64::new(1.0, 0.0);
        if self.dims.first().is_none_or(|d| !close(*d, one, tol)) || self.twists.first().is_none_or(|t| !close(*t, one, tol)) {
            w.push("label 0 is not a unit (d₀ = θ₀ = 1)".into());
        }
        for (l, t) in self.labels.iter().zip(&self.twists) {
            if (t.norm() - 1.0).abs() > tol {
                w.push(format!("twist of {l} has modulus {}", t.norm()));
            }
        }
        if let Some(s) = &self.s_tilde {
            let n = self.rank();
            if (0..n).any(|i| (0..n).any(|j| !close(s[(i, j)], s[(j, i)], tol))) {
                w.push("S is not symmetric".into());
            }
            if (0..n).any(|j| !close(s[(0, j)], self.dims[j], tol)) {
                w.push("S row 0 differs from the dimensions".into());
            }
        }
        w
    }

    pub fn trivial() -> Self {
        let one = Complex64::new(1.0, 0.0);
        MtcData { labels: vec!["1".into()], dims: vec![one], twists: vec![one], s_tilde: Some(Matrix::identity(1)) }
    }
}

impl FourManifold {
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let (n, m) = (self.form.len(), other.form.len());
        let mut form = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            form[i][..n].copy_from_slice(&self.form[i]);
        }
        for i in 0..m {
            form[n + i][n..].copy_from_slice(&other.form[i]);
        }
        FourManifold { name: format!("{} ⊔ {}", self.name, other.name), chi: self.chi + other.chi, form }
    }
}

/// Signature and determinant from rational congruence diagonalization.
pub fn diagonalize(q: &[Vec<i64>]) -> Result<(i64, Q)> {
    let n = q.len();
    if q.iter().any(|r| r.len() != n) || (0..n).any(|i| (0..n).any(|j| q[i][j] != q[j][i])) {
        return Err(Error::Precondition("intersection form must be a symmetric square matrix".into()));
    }
    let mut a: Vec<Vec<Q>> = q.iter().map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect();
    let mut sig = 0i64;
    let mut det = Q::from_i64(1);
    for k in 0..n {
        // bring a nonzero diagonal entry to (k, k)
        let piv = (k..n).find(|&i| !Field::is_zero(&a[i][i]));
        let piv = match piv {
            Some(p) => p,
            None => {
                let off = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !Field::is_zero(&a[i][j]));
                let Some((i, j)) = off else {
                    return Ok((sig, Q::from_i64(0)));
                };
                // row_i += row_j, col_i += col_j makes a_ii = 2 a_ij
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] = a[i][c].clone() + v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] = a[r][i].clone() + v;
                }
                i
            }
        };
        a.swap(k, piv);
        for row in a.iter_mut() {
            row.swap(k, piv);
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            if Field::is_zero(&a[i][k]) {
                continue;
            }
            let f = a[i][k].clone() / p.clone();
            for c in k..n {
                let v = f.clone() * a[k][c].clone();
                a[i][c] = a[i][c].clone() - v;
            }
            for r in k..n {
                let v = f.clone() * a[r][k].clone();
                a[r][i] = a[r][i].clone() - v;
            }
        }
        sig += if p.is_positive() { 1 } else { -1 };
        det *= p;
    }
    Ok((sig, det))
}

pub fn signature(q: &[Vec<i64>]) -> Result<i64> {
    diagonalize(q).map(|r| r.0)
}

/// The `E₈` Cartan matrix, a positive definite even unimodular form.
pub fn e8_form() -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    // chain 0-1-2-3-4-5-6 with node 7 attached to node 4
    for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
        m[i][j] = -1;
        m[j][i] = -1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussSums {
    pub global_dim: f64,
    pub p_plus: Complex64,
    pub p_minus: Complex64,
}

pub fn gauss_sums(m: &MtcData) -> GaussSums {
    let mut d2 = 0.0;
    let mut p_plus = Complex64::new(0.0, 0.0);
    let mut p_minus = Complex64::new(0.0, 0.0);
    for (d, t) in m.dims.iter().zip(&m.twists) {
        let dd = d * d;
        d2 += dd.re;
        p_plus += t * dd;
        p_minus += t.inv() * dd;
    }
    GaussSums { global_dim: d2.sqrt(), p_plus, p_minus }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CraneYetter {
    pub value: Complex64,
    pub chi: i64,
    pub sigma: i64,
    pub p1: i64,
    pub kappa: Complex64,
    pub global_dim: f64,
}

/// `D^χ · κ^σ`.
pub fn crane_yetter(m: &MtcData, w: &FourManifold, tol: f64) -> Result<CraneYetter> {
    let g = gauss_sums(m);
    if g.p_plus.norm() <= tol {
        return Err(Error::Precondition("anomalous data: p₊ = 0".into()));
    }
    let sigma = signature(&w.form)?;
    let kappa = g.p_plus / g.global_dim;
    let value = Complex64::new(g.global_dim.powi(w.chi as i32), 0.0) * kappa.powi(sigma as i32);
    Ok(CraneYetter { value, chi: w.chi, sigma, p1: 3 * sigma, kappa, global_dim: g.global_dim })
}

/// Labels `i` with `S̃_ij = d_i d_j` for every `j`.
pub fn transparent_objects(m: &MtcData, tol: f64) -> Result<Vec<usize>> {
    let s = m.s_tilde.as_ref().ok_or_else(|| Error::Precondition("S matrix missing".into()))?;
    let n = m.rank();
    Ok((0..n).filter(|&i| (0..n).all(|j| close(s[(i, j)], m.dims[i] * m.dims[j], tol))).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModularVerdict {
    pub modular: bool,
    pub transparent: Vec<usize>,
    /// `dim Z(T³)`, the number of transparent simples.
    pub torus_dim: usize,
    pub s_rank: usize,
    pub warnings: Vec<String>,
}

/// Modular iff the unit is the only transparent simple; cross-checked against
/// invertibility of `S̃`.
pub fn is_modular(m: &MtcData, tol: f64) -> Result<ModularVerdict> {
    let transparent = transparent_objects(m, tol)?;
    let s = m.s_tilde.as_ref().expect("checked above");
    let s_rank = complex_rank(s, tol);
    let modular = transparent.len() == 1;
    if modular != (s_rank == m.rank()) {
        return Err(Error::DataInconsistency(format!("{} transparent simples but S has rank {} of {}", transparent.len(), s_rank, m.rank())));
    }
    let mut warnings = m.warnings(tol);
    if modular {
        let g = gauss_sums(m);
        let lhs = g.p_plus * g.p_minus;
        if (lhs - Complex64::new(g.global_dim * g.global_dim, 0.0)).norm() > tol * g.global_dim.powi(2).max(1.0) {
            warnings.push(format!("p₊p₋ = {lhs} differs from D² = {}", g.global_dim.powi(2)));
        }
    }
    Ok(ModularVerdict { modular, torus_dim: transparent.len(), transparent, s_rank, warnings })
}

/// `λ^{χ(b)}`; the source circles have `χ = 0`, so this is the relative Euler
/// characteristic.
pub fn euler_theory<F: Field>(lambda: &F, b: &Bordism2Canonical) -> Result<F> {
    if lambda.is_zero() {
        return Err(Error::Precondition("λ must be nonzero".into()));
    }
    Ok(lambda.pow(b.euler_characteristic()).expect("nonzero base"))
}

fn parse_complex(s: &str) -> Option<Complex64> {
    match s.split_once(',') {
        Some((re, im)) => Some(Complex64::new(re.trim().parse().ok()?, im.trim().parse().ok()?)),
        None => Some(Complex64::new(s.trim().parse().ok()?, 0.0)),
    }
}

/// Reads the MTC format:
///
/// ```text
/// labels 1 s
/// dims 1 1
/// twists 1,0 0,1
/// S
/// 1 1
/// 1 -1
/// ```
pub fn parse_mtc(text: &str, file: &str) -> Result<MtcData> {
    let mut labels = None;
    let mut dims = None;
    let mut twists = None;
    let mut s_rows: Option<Vec<Vec<Complex64>>> = None;
    let mut in_s = false;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let key = words.next().unwrap();
        let complexes = |ws: std::str::SplitWhitespace| -> Result<Vec<Complex64>> {
            ws.map(|w| parse_complex(w).ok_or_else(|| Error::parse(file, ln, format!("bad number `{w}`")))).collect()
        };
        match key {
            "labels" => {
                labels = Some(words.map(str::to_string).collect::<Vec<_>>());
                in_s = false;
            }
            "dims" => {
                dims = Some(complexes(words)?);
                in_s = false;
            }
            "twists" => {
                twists = Some(complexes(words)?);
                in_s = false;
            }
            "S" => {
                in_s = true;
                s_rows = Some(Vec::new());
            }
            _ if in_s => {
                let row = complexes(line.split_whitespace())?;
                s_rows.as_mut().unwrap().push(row);
            }
            other => return Err(Error::parse(file, ln, format!("unknown keyword `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let labels = labels.ok_or_else(|| Error::parse(file, last, "missing `labels`"))?;
    let n = labels.len();
    let dims = dims.ok_or_else(|| Error::parse(file, last, "missing `dims`"))?;
    let twists = twists.ok_or_else(|| Error::parse(file, last, "missing `twists`"))?;
    if dims.len() != n || twists.len() != n {
        return Err(Error::parse(file, last, format!("expected {n} dims and twists")));
    }
    let s_tilde = match s_rows {
        None => None,
        Some(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::parse(file, last, format!("S must be {n}x{n}")));
            }
            Some(Matrix::from_rows(&rows, n))
        }
    };
    Ok(MtcData { labels, dims, twists, s_tilde })
}

/// Reads the manifold format: `name`, `chi`, then `form` followed by matrix rows
/// (no rows for an empty form).
pub fn parse_manifold(text: &str, file: &str) -> Result<FourManifold> {
    let mut name = None;
    let mut chi = None;
    let mut form: Option<Vec<Vec<i64>>> = None;
    let mut in_form = false;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "name" => {
                name = Some(rest.trim().to_string());
                in_form = false;
            }
            "chi" => {
                chi = Some(rest.trim().parse::<i64>().map_err(|_| Error::parse(file, ln, "expected `chi <int>`"))?);
                in_form = false;
            }
            "form" => {
                in_form = true;
                form = Some(Vec::new());
            }
            _ if in_form => {
                let row = line.split_whitespace().map(|w| w.parse::<i64>().map_err(|_| Error::parse(file, ln, format!("bad entry `{w}`")))).collect::<Result<Vec<_>>>()?;
                form.as_mut().unwrap().push(row);
            }
            other => return Err(Error::parse(file, ln, format!("unknown keyword `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let chi = chi.ok_or_else(|| Error::parse(file, last, "missing `chi`"))?;
    let form = form.unwrap_or_default();
    let n = form.len();
    if form.iter().any(|r| r.len() != n) {
        return Err(Error::parse(file, last, "form must be square"));
    }
    let name = name.unwrap_or_else(|| std::path::Path::new(file).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    Ok(FourManifold { name, chi, form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::DEFAULT_TOLERANCE as TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn semion() -> MtcData {
        parse_mtc("labels 1 s\ndims 1 1\ntwists 1 0,1\nS\n1 1\n1 -1\n", "semion.mtc").unwrap()
    }

    fn toric() -> MtcData {
        let text = "labels 1 e m f\ndims 1 1 1 1\ntwists 1 1 1 -1\nS\n1 1 1 1\n1 1 -1 -1\n1 -1 1 -1\n1 -1 -1 1\n";
        parse_mtc(text, "toric.mtc").unwrap()
    }

    fn manifold(chi: i64, form: Vec<Vec<i64>>) -> FourManifold {
        FourManifold { name: "w".into(), chi, form }
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&[vec![0, 1], vec![1, 0]]).unwrap(), 0);
        assert_eq!(signature(&[]).unwrap(), 0);
        let (s, det) = diagonalize(&e8_form()).unwrap();
        assert_eq!((s, det), (8, Q::from_i64(1)));
        assert_eq!(signature(&[vec![-1]]).unwrap(), -1);
        assert!(signature(&[vec![0, 1], vec![2, 0]]).is_err());
    }

    #[test]
    fn gauss_sum_examples() {
        let g = gauss_sums(&MtcData::trivial());
        assert_eq!((g.global_dim, g.p_plus), (1.0, c(1.0, 0.0)));
        let g = gauss_sums(&semion());
        assert!((g.global_dim - 2f64.sqrt()).abs() < TOL && close(g.p_plus, c(1.0, 1.0), TOL));
        let g = gauss_sums(&toric());
        assert!((g.global_dim - 2.0).abs() < TOL && close(g.p_plus, c(2.0, 0.0), TOL));
    }

    #[test]
    fn crane_yetter_examples() {
        let s4 = manifold(2, vec![]);
        let cp2 = manifold(3, vec![vec![1]]);
        assert_eq!(crane_yetter(&MtcData::trivial(), &cp2, TOL).unwrap().value, c(1.0, 0.0));
        assert!(close(crane_yetter(&toric(), &s4, TOL).unwrap().value, c(4.0, 0.0), TOL));
        let cy = crane_yetter(&semion(), &cp2, TOL).unwrap();
        assert!(close(cy.value, c(2.0, 2.0), TOL));
        assert_eq!((cy.sigma, cy.p1), (1, 3));
    }

    #[test]
    fn modularity() {
        let v = is_modular(&toric(), TOL).unwrap();
        assert!(v.modular && v.torus_dim == 1 && v.warnings.is_empty());
        let rep = parse_mtc("labels 1 x\ndims 1 1\ntwists 1 1\nS\n1 1\n1 1\n", "rep.mtc").unwrap();
        let v = is_modular(&rep, TOL).unwrap();
        assert!(!v.modular && v.torus_dim == 2);
        assert!(is_modular(&semion(), TOL).unwrap().modular);
        // one transparent row, yet S is singular
        let bad = parse_mtc("labels 1 x y\ndims 1 1 1\ntwists 1 1 1\nS\n1 1 1\n1 0 0\n1 0 0\n", "bad.mtc").unwrap();
        assert!(matches!(is_modular(&bad, TOL), Err(Error::DataInconsistency(_))));
    }

    #[test]
    fn euler_values() {
        let three = Q::from_i64(3);
        assert_eq!(euler_theory(&three, &Bordism2Canonical::cylinder()).unwrap(), Q::from_i64(1));
        assert_eq!(euler_theory(&three, &Bordism2Canonical::pants()).unwrap(), Q::new(1.into(), 3.into()));
        assert_eq!(euler_theory(&three, &Bordism2Canonical::closed(2)).unwrap(), Q::new(1.into(), 9.into()));
        assert!(euler_theory(&Q::from_i64(0), &Bordism2Canonical::cylinder()).is_err());
    }

    #[test]
    fn manifold_file() {
        let m = parse_manifold("name CP2\nchi 3\nform\n1\n", "cp2.mfd").unwrap();
        assert_eq!((m.chi, m.form.clone()), (3, vec![vec![1]]));
        let s4 = parse_manifold("chi 2\nform\n", "s4.mfd").unwrap();
        assert_eq!(s4.name, "s4");
        assert!(s4.form.is_empty());
    }
}
