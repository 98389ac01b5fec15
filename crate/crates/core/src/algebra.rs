//! Finite-dimensional unital algebras given by structure constants.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactlin::{parse_rational, rational_into, Field, Matrix, Q};

/// `b_i * b_j = Σ_k c[i][j][k] b_k`, stored sparsely.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F: Field> {
    name: String,
    dim: usize,
    table: Vec<Vec<(usize, F)>>,
    unit: Vec<F>,
    /// Elements generating the algebra; actions are only ever stored for these.
    generators: Vec<Vec<F>>,
    /// A linear form supplied with the data (`trace` or `counit` line).
    form: Option<Vec<F>>,
}

fn basis_vec<F: Field>(dim: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); dim];
    v[i] = F::one();
    v
}

fn add_into<F: Field>(acc: &mut [F], v: &[F], s: &F) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + s.clone() * x.clone();
        }
    }
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from `product(i, j)` (sparse coefficients of `b_i b_j`).
    pub fn from_fn(name: impl Into<String>, dim: usize, unit: Vec<F>, mut product: impl FnMut(usize, usize) -> Vec<(usize, F)>) -> Self {
        assert_eq!(unit.len(), dim);
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut entry: Vec<(usize, F)> = product(i, j).into_iter().filter(|(_, c)| !c.is_zero()).collect();
                entry.sort_by_key(|e| e.0);
                table.push(entry);
            }
        }
        let generators = (0..dim).map(|i| basis_vec(dim, i)).collect();
        Algebra { name: name.into(), dim, table, unit, generators, form: None }
    }

    pub fn with_generators(mut self, generators: Vec<Vec<F>>) -> Self {
        self.generators = generators;
        self
    }

    pub fn with_form(mut self, form: Vec<F>) -> Self {
        assert_eq!(form.len(), self.dim);
        self.form = Some(form);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn generators(&self) -> &[Vec<F>] {
        &self.generators
    }

    pub fn form(&self) -> Option<&[F]> {
        self.form.as_deref()
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        basis_vec(self.dim, i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (k, c) in self.basis_product(i, j) {
                    out[*k] = out[*k].clone() + ab.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ x v`.
    pub fn left_mult(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_columns(&cols, self.dim)
    }

    /// Matrix of `v ↦ v x`.
    pub fn right_mult(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(&self.basis(j), x)).collect();
        Matrix::from_columns(&cols, self.dim)
    }

    /// Applies a linear form.
    pub fn eval_form(form: &[F], x: &[F]) -> F {
        form.iter().zip(x).fold(F::zero(), |acc, (a, b)| if b.is_zero() { acc } else { acc + a.clone() * b.clone() })
    }

    pub fn is_associative(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                (0..self.dim).all(|k| {
                    let (bi, bj, bk) = (self.basis(i), self.basis(j), self.basis(k));
                    self.mul(&self.mul(&bi, &bj), &bk) == self.mul(&bi, &self.mul(&bj, &bk))
                })
            })
        })
    }

    pub fn is_unital(&self) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis(i);
            self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Axiom violations; empty for a valid algebra.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.is_associative() {
            out.push("associativity".to_string());
        }
        if !self.is_unital() {
            out.push("unit".to_string());
        }
        out
    }

    pub fn opposite(&self) -> Self {
        let table = (0..self.dim).flat_map(|i| (0..self.dim).map(move |j| (i, j))).map(|(i, j)| self.basis_product(j, i).to_vec()).collect();
        Algebra {
            name: format!("{}^op", self.name),
            dim: self.dim,
            table,
            unit: self.unit.clone(),
            generators: self.generators.clone(),
            form: self.form.clone(),
        }
    }

    /// `self ⊗ other` with basis `b_i ⊗ c_j` at index `i * other.dim + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let unit = kron_vec(&self.unit, &other.unit);
        let mut gens: Vec<Vec<F>> = self.generators.iter().map(|g| kron_vec(g, &other.unit)).collect();
        gens.extend(other.generators.iter().map(|h| kron_vec(&self.unit, h)));
        let alg = Algebra::from_fn(format!("{}⊗{}", self.name, other.name), n * m, unit, |p, q| {
            let (i, j, k, l) = (p / m, p % m, q / m, q % m);
            let mut out = Vec::new();
            for (a, x) in self.basis_product(i, k) {
                for (b, y) in other.basis_product(j, l) {
                    out.push((a * m + b, x.clone() * y.clone()));
                }
            }
            out
        });
        let form = match (&self.form, &other.form) {
            (Some(f), Some(g)) => Some(kron_vec(f, g)),
            _ => None,
        };
        Algebra { form, ..alg.with_generators(gens) }
    }

    /// `self ⊗ self^op`.
    pub fn enveloping(&self) -> Self {
        self.tensor(&self.opposite()).renamed(format!("{}^e", self.name))
    }

    /// Direct product `self × other`, basis of `self` first.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let unit: Vec<F> = self.unit.iter().chain(&other.unit).cloned().collect();
        let alg = Algebra::from_fn(format!("{}×{}", self.name, other.name), n + m, unit, |i, j| {
            if i < n && j < n {
                self.basis_product(i, j).to_vec()
            } else if i >= n && j >= n {
                other.basis_product(i - n, j - n).iter().map(|(k, c)| (k + n, c.clone())).collect()
            } else {
                vec![]
            }
        });
        let pad = |v: &[F], left: bool| -> Vec<F> {
            if left {
                v.iter().cloned().chain(std::iter::repeat_n(F::zero(), m)).collect()
            } else {
                std::iter::repeat_n(F::zero(), n).chain(v.iter().cloned()).collect()
            }
        };
        let mut gens: Vec<Vec<F>> = vec![pad(&self.unit, true)];
        gens.extend(self.generators.iter().map(|g| pad(g, true)));
        gens.extend(other.generators.iter().map(|g| pad(g, false)));
        let form = match (&self.form, &other.form) {
            (Some(f), Some(g)) => Some(f.iter().chain(g).cloned().collect()),
            _ => None,
        };
        Algebra { form, ..alg.with_generators(gens) }
    }

    /// The ground field as a 1-dimensional algebra.
    pub fn ground() -> Self {
        Algebra::from_fn(F::tag(), 1, vec![F::one()], |_, _| vec![(0, F::one())])
    }

    /// Group algebra from a multiplication table on `0..order` (0 the identity).
    pub fn group(name: impl Into<String>, order: usize, mult: impl Fn(usize, usize) -> usize, generators: &[usize]) -> Self {
        let gens = generators.iter().map(|&g| basis_vec(order, g)).collect();
        Algebra::from_fn(name, order, basis_vec(order, 0), |i, j| vec![(mult(i, j), F::one())]).with_generators(gens)
    }

    pub fn cyclic_group(n: usize) -> Self {
        let gens: &[usize] = if n > 1 { &[1] } else { &[] };
        Self::group(format!("{}[Z/{n}]", F::tag()), n, |a, b| (a + b) % n, gens)
    }

    /// The symmetric group on three letters.
    pub fn symmetric_group_3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        Self::group(
            format!("{}[S3]", F::tag()),
            6,
            |a, b| {
                let (p, q) = (perms[a], perms[b]);
                index([p[q[0]], p[q[1]], p[q[2]]])
            },
            &[1, 4],
        )
    }

    /// The quaternion group; element `2u + s` is `±{1,i,j,k}[u]` with sign bit `s`.
    pub fn quaternion_group() -> Self {
        // unit products: (sign, unit) for 1,i,j,k
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        Self::group(
            format!("{}[Q8]", F::tag()),
            8,
            |a, b| {
                let (s, u) = T[a / 2][b / 2];
                2 * u + (s + a % 2 + b % 2) % 2
            },
            &[2, 4],
        )
    }

    /// Full matrix algebra; `E_ij` at index `i * n + j`.
    pub fn matrix(n: usize) -> Self {
        let unit = (0..n * n).map(|p| if p / n == p % n { F::one() } else { F::zero() }).collect();
        let mut gens: Vec<Vec<F>> = Vec::new();
        for i in 0..n.saturating_sub(1) {
            gens.push(basis_vec(n * n, i * n + i + 1));
            gens.push(basis_vec(n * n, (i + 1) * n + i));
        }
        if n == 1 {
            gens.push(basis_vec(1, 0));
        }
        Algebra::from_fn(format!("M{n}({})", F::tag()), n * n, unit, |p, q| {
            let (i, j, k, l) = (p / n, p % n, q / n, q % n);
            if j == k {
                vec![(i * n + l, F::one())]
            } else {
                vec![]
            }
        })
        .with_generators(gens)
    }

    /// Upper-triangular 2×2 matrices with basis `E11, E12, E22`.
    pub fn upper_triangular_2() -> Self {
        let pos = |i: usize, j: usize| match (i, j) {
            (0, 0) => Some(0),
            (0, 1) => Some(1),
            (1, 1) => Some(2),
            _ => None,
        };
        let coords = [(0, 0), (0, 1), (1, 1)];
        Algebra::from_fn(format!("T2({})", F::tag()), 3, vec![F::one(), F::zero(), F::one()], |p, q| {
            let ((i, j), (k, l)) = (coords[p], coords[q]);
            if j == k {
                vec![(pos(i, l).unwrap(), F::one())]
            } else {
                vec![]
            }
        })
    }
}

pub fn kron_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.clone() * y.clone());
        }
    }
    out
}

/// `Σ_i s_i v_i`.
pub fn combine<F: Field>(dim: usize, terms: impl IntoIterator<Item = (F, Vec<F>)>) -> Vec<F> {
    let mut acc = vec![F::zero(); dim];
    for (s, v) in terms {
        add_into(&mut acc, &v, &s);
    }
    acc
}

/// Field tag named on an algebra file's `field` line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Q,
    F2,
    F3,
    F5,
}

impl FieldTag {
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.split_whitespace().collect();
        match compact.as_str() {
            "Q" => Ok(FieldTag::Q),
            "F2" | "Fp2" => Ok(FieldTag::F2),
            "F3" | "Fp3" => Ok(FieldTag::F3),
            "F5" | "Fp5" => Ok(FieldTag::F5),
            other => {
                let p = other.trim_start_matches("Fp").trim_start_matches('F');
                if p.parse::<u64>().is_ok() {
                    Err(Error::Unsupported(format!("field F{p}; supported fields are Q, F2, F3, F5")))
                } else {
                    Err(Error::Config(format!("unknown field `{s}`")))
                }
            }
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::Q => "Q",
            FieldTag::F2 => "F2",
            FieldTag::F3 => "F3",
            FieldTag::F5 => "F5",
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldTag::Q => 0,
            FieldTag::F2 => 2,
            FieldTag::F3 => 3,
            FieldTag::F5 => 5,
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parsed contents of an algebra file, coefficients still rational.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub field: FieldTag,
    pub dim: usize,
    pub mults: Vec<(usize, usize, Vec<(usize, Q)>)>,
    pub unit: Vec<Q>,
    pub counit: Option<Vec<Q>>,
    pub trace: Option<Vec<Q>>,
}

fn parse_tuple(s: &str, file: &str, line: usize) -> Result<Vec<Q>> {
    let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(|| Error::parse(file, line, "expected `(c_1,...,c_n)`"))?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner.split(',').map(|t| parse_rational(t.trim()).ok_or_else(|| Error::parse(file, line, format!("bad coefficient `{}`", t.trim())))).collect()
}

/// Reads the line-oriented algebra format. Basis indices are 0-based.
///
/// ```text
/// # Q[Z/2]
/// field Q
/// dim 2
/// mult 0 0 -> (0:1)
/// mult 0 1 -> (1:1)
/// mult 1 0 -> (1:1)
/// mult 1 1 -> (0:1)
/// unit (1,0)
/// counit (1,0)
/// ```
pub fn parse_algebra(text: &str, file: &str) -> Result<AlgebraFile> {
    let mut field = None;
    let mut dim: Option<usize> = None;
    let mut name = None;
    let mut mults = Vec::new();
    let (mut unit, mut counit, mut trace) = (None, None, None);
    let check_len = |v: &Vec<Q>, dim: Option<usize>, ln: usize, what: &str| -> Result<()> {
        match dim {
            None => Err(Error::parse(file, ln, format!("`{what}` before `dim`"))),
            Some(d) if d != v.len() => Err(Error::parse(file, ln, format!("`{what}` has {} entries, expected {d}", v.len()))),
            _ => Ok(()),
        }
    };
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "name" => name = Some(rest.to_string()),
            "field" => {
                field = Some(FieldTag::parse(rest).map_err(|e| match e {
                    Error::Config(m) => Error::parse(file, ln, m),
                    other => other,
                })?)
            }
            "dim" => dim = Some(rest.parse().map_err(|_| Error::parse(file, ln, "bad dimension"))?),
            "mult" => {
                let d = dim.ok_or_else(|| Error::parse(file, ln, "`mult` before `dim`"))?;
                let (lhs, rhs) = rest.split_once("->").ok_or_else(|| Error::parse(file, ln, "expected `mult i j -> (k:c, ...)`"))?;
                let ij: Vec<usize> = lhs.split_whitespace().map(|t| t.parse().map_err(|_| Error::parse(file, ln, format!("bad index `{t}`")))).collect::<Result<_>>()?;
                if ij.len() != 2 || ij[0] >= d || ij[1] >= d {
                    return Err(Error::parse(file, ln, "expected two basis indices below dim"));
                }
                let inner = rhs.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(|| Error::parse(file, ln, "expected `(k:c, ...)`"))?;
                let mut terms = Vec::new();
                for t in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    let (k, c) = t.split_once(':').ok_or_else(|| Error::parse(file, ln, format!("bad term `{t}`")))?;
                    let k: usize = k.trim().parse().map_err(|_| Error::parse(file, ln, format!("bad index `{k}`")))?;
                    if k >= d {
                        return Err(Error::parse(file, ln, format!("index {k} out of range")));
                    }
                    let c = parse_rational(c.trim()).ok_or_else(|| Error::parse(file, ln, format!("bad coefficient `{c}`")))?;
                    terms.push((k, c));
                }
                mults.push((ij[0], ij[1], terms));
            }
            "unit" | "counit" | "trace" => {
                let v = parse_tuple(rest, file, ln)?;
                check_len(&v, dim, ln, key)?;
                match key {
                    "unit" => unit = Some(v),
                    "counit" => counit = Some(v),
                    _ => trace = Some(v),
                }
            }
            other => return Err(Error::parse(file, ln, format!("unknown keyword `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let field = field.ok_or_else(|| Error::parse(file, last, "missing `field` line"))?;
    let dim = dim.ok_or_else(|| Error::parse(file, last, "missing `dim` line"))?;
    let unit = unit.ok_or_else(|| Error::parse(file, last, "missing `unit` line"))?;
    let name = name.unwrap_or_else(|| {
        std::path::Path::new(file).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| file.to_string())
    });
    Ok(AlgebraFile { name, field, dim, mults, unit, counit, trace })
}

impl AlgebraFile {
    /// Converts coefficients into `F`; fails if a denominator vanishes there.
    pub fn to_algebra<F: Field>(&self) -> Result<Algebra<F>> {
        let conv = |v: &[Q]| -> Result<Vec<F>> {
            v.iter().map(|q| rational_into::<F>(q).ok_or_else(|| Error::Precondition(format!("coefficient {q} undefined over {}", F::tag())))).collect()
        };
        let mut table: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.dim * self.dim];
        for (i, j, terms) in &self.mults {
            let mut entry = Vec::new();
            for (k, c) in terms {
                let c = rational_into::<F>(c).ok_or_else(|| Error::Precondition(format!("coefficient {c} undefined over {}", F::tag())))?;
                entry.push((*k, c));
            }
            table[i * self.dim + j] = entry;
        }
        let mut alg = Algebra::from_fn(self.name.clone(), self.dim, conv(&self.unit)?, |i, j| std::mem::take(&mut table[i * self.dim + j]));
        if let Some(f) = self.trace.as_ref().or(self.counit.as_ref()) {
            alg = alg.with_form(conv(f)?);
        }
        Ok(alg)
    }
}

/// Writes an algebra in the file format read by [`parse_algebra`].
pub fn format_algebra<F: Field>(a: &Algebra<F>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "name {}", a.name());
    let _ = writeln!(s, "field {}", F::tag());
    let _ = writeln!(s, "dim {}", a.dim());
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let t = a.basis_product(i, j);
            if !t.is_empty() {
                let terms: Vec<String> = t.iter().map(|(k, c)| format!("{k}:{c}")).collect();
                let _ = writeln!(s, "mult {i} {j} -> ({})", terms.join(", "));
            }
        }
    }
    let tuple = |v: &[F]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let _ = writeln!(s, "unit ({})", tuple(a.unit()));
    if let Some(f) = a.form() {
        let _ = writeln!(s, "trace ({})", tuple(f));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{F2, F3};

    #[test]
    fn builtins_are_associative_and_unital() {
        assert!(Algebra::<Q>::matrix(2).violations().is_empty());
        assert!(Algebra::<Q>::matrix(3).violations().is_empty());
        assert!(Algebra::<Q>::symmetric_group_3().violations().is_empty());
        assert!(Algebra::<Q>::quaternion_group().violations().is_empty());
        assert!(Algebra::<F3>::cyclic_group(4).violations().is_empty());
        assert!(Algebra::<Q>::upper_triangular_2().violations().is_empty());
        let p = Algebra::<Q>::ground().product(&Algebra::matrix(2));
        assert!(p.violations().is_empty());
        let e = Algebra::<Q>::matrix(2).enveloping();
        assert_eq!(e.dim(), 16);
        assert!(e.is_unital());
    }

    #[test]
    fn group_tables_are_nonabelian_where_expected() {
        assert!(!Algebra::<Q>::symmetric_group_3().is_commutative());
        assert!(!Algebra::<Q>::quaternion_group().is_commutative());
        assert!(Algebra::<Q>::cyclic_group(5).is_commutative());
    }

    #[test]
    fn opposite_reverses_products() {
        let a = Algebra::<Q>::matrix(2);
        let op = a.opposite();
        let (x, y) = (a.basis(1), a.basis(2));
        assert_eq!(op.mul(&x, &y), a.mul(&y, &x));
    }

    #[test]
    fn file_round_trip() {
        let a = Algebra::<Q>::cyclic_group(3).with_form(vec![Q::from_i64(1), Q::from_i64(0), Q::from_i64(0)]);
        let text = format_algebra(&a);
        let parsed = parse_algebra(&text, "z3.alg").unwrap();
        let b: Algebra<Q> = parsed.to_algebra().unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.basis_product(2, 2), a.basis_product(2, 2));
        assert_eq!(b.form(), a.form());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "field Q\ndim 2\nmult 0 5 -> (0:1)\n";
        match parse_algebra(text, "bad.alg") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(FieldTag::parse("F7"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn half_is_undefined_in_characteristic_two() {
        let text = "field F2\ndim 1\nmult 0 0 -> (0:1/2)\nunit (1)\n";
        let f = parse_algebra(text, "half.alg").unwrap();
        assert!(f.to_algebra::<F2>().is_err());
    }
}
