//! Degree types and symmetric matrices of homogeneous forms.
//!
//! A degree type `(d_1 <= ... <= d_h)` with surface degree `d = sum d_i` and
//! parity `delta` prescribes entry `(i, j)` to be a form of degree
//! `(d_i + d_j) / 2` (zero when negative). The source twists are
//! `l_j = (d + delta + d_j) / 2` and target twists `r_i = (d + delta - d_i) / 2`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerator::{self, ConstraintFlags};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{monomials_of_degree, parse_poly, Field, Polynomial, Ring};
use crate::rng::SeededRng;

/// Number of ambient variables: coordinates `x0..x3` of projective 3-space.
pub const AMBIENT_VARS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeType {
    d: u32,
    delta: u8,
    d_tuple: Vec<i64>,
    ell: Vec<i64>,
    r: Vec<i64>,
}

impl DegreeType {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn delta(&self) -> u8 {
        self.delta
    }

    pub fn tuple(&self) -> &[i64] {
        &self.d_tuple
    }

    pub fn h(&self) -> usize {
        self.d_tuple.len()
    }

    /// Source twists `l_j`.
    pub fn ell(&self) -> &[i64] {
        &self.ell
    }

    /// Target twists `r_i`.
    pub fn r(&self) -> &[i64] {
        &self.r
    }

    /// Prescribed degree of entry `(i, j)`; negative means the entry is zero.
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        (self.d_tuple[i] + self.d_tuple[j]) / 2
    }

    /// Which of the pairing/positivity constraints hold.
    pub fn constraint_flags(&self) -> ConstraintFlags {
        enumerator::constraint_flags(self.d, self.delta, &self.d_tuple)
    }
}

impl fmt::Display for DegreeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_tuple(&self.d_tuple))
    }
}

/// `(d1,...,dh)` without spaces.
pub fn format_tuple(t: &[i64]) -> String {
    let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Parses `(2,2)`, `2,2` or `(-1, 1, 5)`.
pub fn parse_tuple(text: &str) -> Result<Vec<i64>> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidDegreeType(format!("cannot read `{}` in `{text}`", s.trim())))
        })
        .collect()
}

/// Checks parity, ordering and the sum, and computes the twists.
pub fn validate_degree_type(d: u32, delta: u8, d_tuple: &[i64]) -> Result<DegreeType> {
    if d == 0 {
        return Err(Error::InvalidDegreeType("surface degree must be positive".into()));
    }
    if delta > 1 {
        return Err(Error::InvalidDegreeType(format!("delta must be 0 or 1, got {delta}")));
    }
    if d_tuple.is_empty() {
        return Err(Error::InvalidDegreeType("empty tuple".into()));
    }
    if let Some(k) = (1..d_tuple.len()).find(|&k| d_tuple[k] < d_tuple[k - 1]) {
        return Err(Error::InvalidDegreeType(format!("tuple not nondecreasing at index {}", k + 1)));
    }
    let parity = (d as i64 - delta as i64).rem_euclid(2);
    if let Some(k) = d_tuple.iter().position(|&v| v.rem_euclid(2) != parity) {
        return Err(Error::InvalidDegreeType(format!(
            "parity: d_{} = {} but entries must be congruent to d + delta = {} mod 2",
            k + 1,
            d_tuple[k],
            d as i64 + delta as i64
        )));
    }
    let sum: i64 = d_tuple.iter().sum();
    if sum != d as i64 {
        return Err(Error::InvalidDegreeType(format!("entries sum to {sum}, expected d = {d}")));
    }
    let base = d as i64 + delta as i64;
    let ell = d_tuple.iter().map(|&v| (base + v) / 2).collect();
    let r = d_tuple.iter().map(|&v| (base - v) / 2).collect();
    Ok(DegreeType { d, delta, d_tuple: d_tuple.to_vec(), ell, r })
}

/// A hypersurface `{f = 0}` in projective 3-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub f: Polynomial,
    pub d: u32,
    pub provenance: String,
}

impl SurfaceSpec {
    pub fn new(f: Polynomial, provenance: impl Into<String>) -> Result<SurfaceSpec> {
        if f.ring().nvars() != AMBIENT_VARS {
            return Err(Error::ContextMismatch(format!(
                "surfaces live in {AMBIENT_VARS} variables, got {}",
                f.ring().nvars()
            )));
        }
        if f.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let d = f.total_degree().expect("nonzero");
        Ok(SurfaceSpec { f, d, provenance: provenance.into() })
    }

    pub fn ring(&self) -> Ring {
        self.f.ring()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricFormMatrix {
    degree_type: DegreeType,
    ring: Ring,
    entries: Vec<Vec<Polynomial>>,
}

impl SymmetricFormMatrix {
    /// Validates shape, symmetry and entry degrees.
    pub fn new(degree_type: DegreeType, ring: Ring, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let h = degree_type.h();
        if entries.len() != h || entries.iter().any(|row| row.len() != h) {
            return Err(Error::InvalidMatrix(format!("expected a {h}x{h} matrix")));
        }
        for i in 0..h {
            for j in 0..h {
                let e = &entries[i][j];
                ring.check_same(&e.ring())?;
                if *e != entries[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                if e.is_zero() {
                    continue;
                }
                let want = degree_type.entry_degree(i, j);
                if want < 0 || !e.is_homogeneous() || e.total_degree() != Some(want as u32) {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i},{j}) must be zero or a form of degree {want}"
                    )));
                }
            }
        }
        Ok(SymmetricFormMatrix { degree_type, ring, entries })
    }

    pub fn degree_type(&self) -> &DegreeType {
        &self.degree_type
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn h(&self) -> usize {
        self.entries.len()
    }

    /// Applies `g` to every entry (used for coordinate changes and restrictions).
    pub fn map_entries<F>(&self, ring: Ring, g: F) -> Result<SymmetricFormMatrix>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(&g).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SymmetricFormMatrix::new(self.degree_type.clone(), ring, entries)
    }
}

/// Fills every admissible entry with a dense random form.
///
/// Draw order: upper triangle row by row (`i <= j`), and within an entry the
/// monomials of the prescribed degree in descending grevlex order.
pub fn random_symmetric_matrix(dt: &DegreeType, field: Field, seed: u64) -> SymmetricFormMatrix {
    let ring = Ring::new(AMBIENT_VARS, field);
    let h = dt.h();
    let mut rng = SeededRng::new(seed);
    let mut entries = vec![vec![Polynomial::zero(ring); h]; h];
    for i in 0..h {
        for j in i..h {
            let e = dt.entry_degree(i, j);
            if e < 0 {
                continue;
            }
            let terms: Vec<_> = monomials_of_degree(AMBIENT_VARS, e as u32)
                .into_iter()
                .map(|m| (m, rng.scalar(field)))
                .collect();
            let p = Polynomial::from_terms(ring, terms);
            entries[j][i] = p.clone();
            entries[i][j] = p;
        }
    }
    SymmetricFormMatrix::new(dt.clone(), ring, entries).expect("generated entries match the degree type")
}

/// Determinant of the square submatrix on `rows x cols` by cofactor
/// expansion along rows, memoized on the set of remaining columns.
fn sub_determinant(entries: &[Vec<Polynomial>], ring: Ring, rows: &[usize], cols: &[usize]) -> Polynomial {
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    let full: u64 = (1u64 << cols.len()) - 1;
    expand(entries, ring, rows, cols, 0, full, &mut memo)
}

fn expand(
    entries: &[Vec<Polynomial>],
    ring: Ring,
    rows: &[usize],
    cols: &[usize],
    depth: usize,
    mask: u64,
    memo: &mut HashMap<u64, Polynomial>,
) -> Polynomial {
    if depth == rows.len() {
        return Polynomial::one(ring);
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let row = rows[depth];
    let mut acc = Polynomial::zero(ring);
    let mut sign_positive = true;
    for (k, &col) in cols.iter().enumerate() {
        if mask & (1 << k) == 0 {
            continue;
        }
        let a = &entries[row][col];
        if !a.is_zero() {
            let sub = expand(entries, ring, rows, cols, depth + 1, mask & !(1 << k), memo);
            let term = a * &sub;
            acc = if sign_positive { &acc + &term } else { &acc - &term };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// `det(M)` in the ring of the entries, possibly zero.
pub fn determinant_polynomial(m: &SymmetricFormMatrix) -> Polynomial {
    let idx: Vec<usize> = (0..m.h()).collect();
    sub_determinant(&m.entries, m.ring, &idx, &idx)
}

/// `det(M)` as a surface; errors when the determinant vanishes identically.
pub fn determinant(m: &SymmetricFormMatrix) -> Result<SurfaceSpec> {
    let f = determinant_polynomial(m);
    if f.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    debug_assert_eq!(f.total_degree(), Some(m.degree_type.d()));
    SurfaceSpec::new(f, format!("det of {} matrix", m.degree_type))
}

/// All `k x k` minors, one per unordered pair of row/column selections
/// (`minor(I, J) = minor(J, I)` by symmetry). Zero minors are included.
pub fn minors_ideal_generators(m: &SymmetricFormMatrix, k: usize) -> Vec<Polynomial> {
    let h = m.h();
    assert!((1..=h).contains(&k), "minor size must lie in 1..={h}");
    let subsets = k_subsets(h, k);
    let mut selections = Vec::new();
    for a in 0..subsets.len() {
        for b in a..subsets.len() {
            selections.push((a, b));
        }
    }
    selections
        .par_iter()
        .map(|&(a, b)| sub_determinant(&m.entries, m.ring, &subsets[a], &subsets[b]))
        .collect()
}

/// Degree of the minor on `rows x cols`: half the sum of the selected `d_i`.
pub fn minor_degree(dt: &DegreeType, rows: &[usize], cols: &[usize]) -> i64 {
    let s: i64 = rows.iter().chain(cols).map(|&i| dt.tuple()[i]).sum();
    s / 2
}

pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `A^T M A` for a constant invertible `A` that only mixes indices of equal degree.
pub fn congruence_transform(m: &SymmetricFormMatrix, a: &Matrix) -> Result<SymmetricFormMatrix> {
    let h = m.h();
    let field = m.ring.field();
    if a.len() != h || a.iter().any(|row| row.len() != h) {
        return Err(Error::InvalidMatrix(format!("congruence matrix must be {h}x{h}")));
    }
    let t = m.degree_type.tuple();
    for i in 0..h {
        for j in 0..h {
            if a[i][j].field() != field {
                return Err(Error::ContextMismatch("congruence matrix over a different field".into()));
            }
            if !a[i][j].is_zero() && t[i] != t[j] {
                return Err(Error::BlockStructure { row: i, col: j });
            }
        }
    }
    if linalg::determinant(field, a).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let ring = m.ring;
    // (M A)_{kj}
    let ma: Vec<Vec<Polynomial>> = (0..h)
        .map(|k| {
            (0..h)
                .map(|j| {
                    (0..h).fold(Polynomial::zero(ring), |acc, l| {
                        &acc + &m.entries[k][l].scale(&a[l][j]).expect("same field")
                    })
                })
                .collect()
        })
        .collect();
    let mut out = vec![vec![Polynomial::zero(ring); h]; h];
    for i in 0..h {
        for j in i..h {
            let v = (0..h).fold(Polynomial::zero(ring), |acc, k| {
                &acc + &ma[k][j].scale(&a[k][i]).expect("same field")
            });
            out[j][i] = v.clone();
            out[i][j] = v;
        }
    }
    SymmetricFormMatrix::new(m.degree_type.clone(), ring, out)
}

/// Random invertible constant matrix that is block diagonal on runs of
/// equal `d_i`.
pub fn random_block_congruence(dt: &DegreeType, field: Field, seed: u64) -> Matrix {
    let h = dt.h();
    let mut rng = SeededRng::new(seed);
    let mut a = vec![vec![field.zero(); h]; h];
    let t = dt.tuple();
    let mut start = 0;
    while start < h {
        let mut end = start;
        while end < h && t[end] == t[start] {
            end += 1;
        }
        let block = rng.invertible_matrix(field, end - start);
        for (bi, row) in block.into_iter().enumerate() {
            for (bj, v) in row.into_iter().enumerate() {
                a[start + bi][start + bj] = v;
            }
        }
        start = end;
    }
    a
}

/// JSON representation of a field: `"Q"` or `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u32,
    },
}

impl FieldJson {
    pub fn from_field(f: Field) -> FieldJson {
        match f {
            Field::Rational => FieldJson::Named("Q".into()),
            Field::Prime(p) => FieldJson::Prime { fp: p },
        }
    }

    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldJson::Named(s) if s == "Q" => Ok(Field::Rational),
            FieldJson::Named(s) => Err(Error::InvalidField(format!("unknown field `{s}`"))),
            FieldJson::Prime { fp } => Field::prime(*fp),
        }
    }
}

/// On-disk matrix format. The upper triangle is authoritative; lower
/// entries are ignored on read and written as mirrors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: FieldJson,
    pub d: u32,
    pub delta: u8,
    pub degree_type: Vec<i64>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &SymmetricFormMatrix) -> MatrixFile {
        MatrixFile {
            field: FieldJson::from_field(m.ring.field()),
            d: m.degree_type.d(),
            delta: m.degree_type.delta(),
            degree_type: m.degree_type.tuple().to_vec(),
            entries: m.entries.iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<SymmetricFormMatrix> {
        let field = self.field.to_field()?;
        let dt = validate_degree_type(self.d, self.delta, &self.degree_type)?;
        let h = dt.h();
        if self.entries.len() != h || self.entries.iter().any(|r| r.len() != h) {
            return Err(Error::InvalidMatrix(format!("expected a {h}x{h} entries array")));
        }
        let ring = Ring::new(AMBIENT_VARS, field);
        let mut entries = vec![vec![Polynomial::zero(ring); h]; h];
        for i in 0..h {
            for j in i..h {
                let p = parse_poly(&self.entries[i][j], ring)?;
                entries[j][i] = p.clone();
                entries[i][j] = p;
            }
        }
        SymmetricFormMatrix::new(dt, ring, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<MatrixFile> {
        Ok(serde_json::from_str(text)?)
    }
}

/// On-disk surface format: a single form plus free-form provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub field: FieldJson,
    pub d: u32,
    pub poly: String,
    #[serde(default)]
    pub provenance: String,
}

impl SurfaceFile {
    pub fn from_surface(s: &SurfaceSpec) -> SurfaceFile {
        SurfaceFile {
            field: FieldJson::from_field(s.ring().field()),
            d: s.d,
            poly: s.f.to_string(),
            provenance: s.provenance.clone(),
        }
    }

    pub fn to_surface(&self) -> Result<SurfaceSpec> {
        let ring = Ring::new(AMBIENT_VARS, self.field.to_field()?);
        let s = SurfaceSpec::new(parse_poly(&self.poly, ring)?, self.provenance.clone())?;
        if s.d != self.d {
            return Err(Error::InvalidMatrix(format!("declared degree {} but form has degree {}", self.d, s.d)));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FP: Field = Field::Prime(31991);

    fn ring() -> Ring {
        Ring::new(4, FP)
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, ring()).unwrap()
    }

    #[test]
    fn twists() {
        let dt = validate_degree_type(4, 0, &[2, 2]).unwrap();
        assert_eq!(dt.ell(), &[3, 3]);
        assert_eq!(dt.r(), &[1, 1]);
        let dt = validate_degree_type(4, 1, &[1, 1, 1, 1]).unwrap();
        assert_eq!(dt.ell(), &[3, 3, 3, 3]);
        assert_eq!(dt.r(), &[2, 2, 2, 2]);
        for (l, r) in dt.ell().iter().zip(dt.r()) {
            assert_eq!(l + r, 5);
        }
    }

    #[test]
    fn degree_type_errors() {
        let parity = validate_degree_type(4, 0, &[1, 3]).unwrap_err();
        assert!(parity.to_string().contains("parity"), "{parity}");
        assert!(validate_degree_type(4, 0, &[2, 4]).unwrap_err().to_string().contains("sum"));
        assert!(validate_degree_type(4, 0, &[4, 0]).unwrap_err().to_string().contains("nondecreasing"));
        assert!(validate_degree_type(4, 2, &[2, 2]).is_err());
    }

    #[test]
    fn tuple_text() {
        assert_eq!(parse_tuple("(-1, 1,5)").unwrap(), vec![-1, 1, 5]);
        assert_eq!(format_tuple(&[-1, 1, 5]), "(-1,1,5)");
        assert!(parse_tuple("(a,b)").is_err());
    }

    #[test]
    fn random_matrix_shapes() {
        let dt = validate_degree_type(4, 0, &[2, 2]).unwrap();
        let m = random_symmetric_matrix(&dt, FP, 1);
        assert_eq!(m.h(), 2);
        assert!(m.entries().iter().flatten().all(|e| e.total_degree() == Some(2) && e.len() == 10));
        assert_eq!(determinant(&m).unwrap().d, 4);
        assert_eq!(random_symmetric_matrix(&dt, FP, 1), m);
        assert_ne!(random_symmetric_matrix(&dt, FP, 2), m);

        let dt5 = validate_degree_type(5, 0, &[1, 1, 1, 1, 1]).unwrap();
        let m5 = random_symmetric_matrix(&dt5, FP, 3);
        assert_eq!(m5.h(), 5);
        assert!(m5.entries().iter().flatten().all(|e| e.total_degree() == Some(1)));
    }

    #[test]
    fn negative_degree_entries_are_zero() {
        let dt = validate_degree_type(4, 1, &[-1, -1, 3, 3]).unwrap();
        let m = random_symmetric_matrix(&dt, FP, 4);
        assert!(m.entry(0, 0).is_zero() && m.entry(0, 1).is_zero());
        assert_eq!(m.entry(0, 2).total_degree(), Some(1));
        assert_eq!(m.entry(2, 3).total_degree(), Some(3));
    }

    fn build(dt: &[i64], d: u32, delta: u8, rows: &[&[&str]]) -> SymmetricFormMatrix {
        let dt = validate_degree_type(d, delta, dt).unwrap();
        let entries = rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect();
        SymmetricFormMatrix::new(dt, ring(), entries).unwrap()
    }

    #[test]
    fn small_determinants() {
        let q1 = "x0^2 + x1*x2";
        let q2 = "x3^2 - x0*x1";
        let m = build(&[2, 2], 4, 0, &[&[q1, "0"], &["0", q2]]);
        assert_eq!(determinant(&m).unwrap().f, &p(q1) * &p(q2));
        let m = build(&[2, 2], 4, 0, &[&["0", "x0^2"], &["x0^2", "x1^2"]]);
        assert_eq!(determinant(&m).unwrap().f, -&p("x0^4"));
        let (a, b, c) = ("x0^2", "x1*x2", "x3^2 + x0*x1");
        let m = build(&[2, 2], 4, 0, &[&[a, b], &[b, c]]);
        let f = determinant(&m).unwrap();
        assert_eq!(f.f, &(&p(a) * &p(c)) - &(&p(b) * &p(b)));
        assert_eq!(f.d, 4);
        let zero = build(&[2, 2], 4, 0, &[&["x0^2", "x0*x1"], &["x0*x1", "x1^2"]]);
        assert_eq!(determinant(&zero), Err(Error::ZeroDeterminant));
    }

    #[test]
    fn asymmetric_or_misdegreed_entries_rejected() {
        let dt = validate_degree_type(4, 0, &[2, 2]).unwrap();
        let bad = vec![vec![p("x0^2"), p("x1^2")], vec![p("x2^2"), p("x3^2")]];
        assert!(SymmetricFormMatrix::new(dt.clone(), ring(), bad).is_err());
        let bad = vec![vec![p("x0"), p("x1^2")], vec![p("x1^2"), p("x3^2")]];
        assert!(SymmetricFormMatrix::new(dt, ring(), bad).is_err());
    }

    #[test]
    fn minors() {
        let (a, b, c) = ("x0^2", "x1*x2", "x3^2 + x0*x1");
        let m = build(&[2, 2], 4, 0, &[&[a, b], &[b, c]]);
        assert_eq!(minors_ideal_generators(&m, 1), vec![p(a), p(b), p(c)]);
        assert_eq!(minors_ideal_generators(&m, 2), vec![determinant(&m).unwrap().f]);
    }

    #[test]
    fn minor_degrees_follow_the_type() {
        let dt = validate_degree_type(5, 0, &[1, 1, 3]).unwrap();
        let m = random_symmetric_matrix(&dt, FP, 11);
        let minors = minors_ideal_generators(&m, 2);
        assert_eq!(minors.len(), 6);
        let subsets = k_subsets(3, 2);
        let mut k = 0;
        for a in 0..subsets.len() {
            for b in a..subsets.len() {
                let want = minor_degree(&dt, &subsets[a], &subsets[b]);
                assert!(minors[k].is_homogeneous());
                assert_eq!(minors[k].total_degree(), Some(want as u32));
                k += 1;
            }
        }
        let degrees: Vec<u32> = minors.iter().map(|q| q.total_degree().unwrap()).collect();
        assert_eq!(degrees, vec![2, 3, 3, 4, 4, 4]);
    }

    #[test]
    fn congruence_scaling() {
        let dt = validate_degree_type(4, 0, &[2, 2]).unwrap();
        let m = random_symmetric_matrix(&dt, FP, 5);
        let id = linalg::identity(FP, 2);
        assert_eq!(congruence_transform(&m, &id).unwrap(), m);
        let two: Matrix = (0..2).map(|i| (0..2).map(|j| FP.from_i64(2 * (i == j) as i64)).collect()).collect();
        let t = congruence_transform(&m, &two).unwrap();
        let f = determinant(&m).unwrap().f;
        assert_eq!(determinant(&t).unwrap().f, f.scale(&FP.from_i64(16)).unwrap());
    }

    #[test]
    fn congruence_rejects_mixed_blocks() {
        let dt = validate_degree_type(5, 0, &[1, 1, 3]).unwrap();
        let m = random_symmetric_matrix(&dt, FP, 5);
        let mut a = linalg::identity(FP, 3);
        a[0][2] = FP.one();
        assert_eq!(congruence_transform(&m, &a), Err(Error::BlockStructure { row: 0, col: 2 }));
        let mut s = linalg::identity(FP, 3);
        s[1] = s[0].clone();
        assert_eq!(congruence_transform(&m, &s), Err(Error::SingularMatrix));
    }

    #[test]
    fn matrix_file_roundtrip() {
        let dt = validate_degree_type(5, 0, &[1, 1, 3]).unwrap();
        let m = random_symmetric_matrix(&dt, FP, 8);
        let json = MatrixFile::from_matrix(&m).to_json();
        assert!(json.contains("\"Fp\": 31991"));
        let back = MatrixFile::from_json(&json).unwrap().to_matrix().unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_file_upper_triangle_wins() {
        let text = r#"{"field": "Q", "d": 4, "delta": 0, "degree_type": [2, 2],
            "entries": [["x0^2", "x1*x2"], ["garbage", "x3^2"]]}"#;
        let m = MatrixFile::from_json(text).unwrap().to_matrix().unwrap();
        assert_eq!(m.ring().field(), Field::Rational);
        assert_eq!(m.entry(1, 0), m.entry(0, 1));
        let bad = r#"{"field": {"Fp": 9}, "d": 4, "delta": 0, "degree_type": [2, 2], "entries": [["0","0"],["0","0"]]}"#;
        assert!(MatrixFile::from_json(bad).unwrap().to_matrix().is_err());
    }
}
