//! Hilbert functions and Euler characteristics of `coker(M)`.
//!
//! A symmetric matrix of type `(d_1, ..., d_h)` is read as a graded map
//! `⊕ S(-l_j) -> ⊕ S(-r_i)`; its cokernel stands in for the sheaf it
//! presents. On a plane section (`n = 3`) the cokernel lives on a curve and
//! `h1(m)` is defined as `h0(m) - chi(m)`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::nodes::NodeReport;
use crate::poly::{linear_form, monomials_of_degree, Monomial, Polynomial};
use crate::rng::SeededRng;
use crate::symmat::{determinant_polynomial, SymmetricFormMatrix, AMBIENT_VARS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    matrix: SymmetricFormMatrix,
}

impl GradedPresentation {
    /// The presentation of a surface sheaf in four variables.
    pub fn surface(m: &SymmetricFormMatrix) -> Result<GradedPresentation> {
        if m.ring().nvars() != AMBIENT_VARS {
            return Err(Error::InvalidPresentation(format!(
                "surface presentations need {AMBIENT_VARS} variables"
            )));
        }
        GradedPresentation::new(m.clone())
    }

    /// Restriction to the plane `x3 = c0 x0 + c1 x1 + c2 x2`, with the `c`
    /// drawn from the seed.
    pub fn plane_section(m: &SymmetricFormMatrix, seed: u64) -> Result<GradedPresentation> {
        if m.ring().nvars() != AMBIENT_VARS {
            return Err(Error::InvalidPresentation(format!(
                "sections are taken of presentations in {AMBIENT_VARS} variables"
            )));
        }
        let plane = m.ring().with_nvars(AMBIENT_VARS - 1);
        let mut rng = SeededRng::new(seed);
        let coeffs: Vec<_> = (0..AMBIENT_VARS - 1).map(|_| rng.scalar(plane.field())).collect();
        let mut images: Vec<Polynomial> = (0..AMBIENT_VARS - 1).map(|i| plane.var(i)).collect();
        images.push(linear_form(plane, &coeffs));
        let restricted = m.map_entries(plane, |p| p.substitute(plane, &images))?;
        GradedPresentation::new(restricted)
    }

    /// Rejects matrices with vanishing determinant.
    pub fn new(matrix: SymmetricFormMatrix) -> Result<GradedPresentation> {
        if determinant_polynomial(&matrix).is_zero() {
            return Err(Error::InvalidPresentation("determinant vanishes identically".into()));
        }
        Ok(GradedPresentation { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.ring().nvars()
    }

    pub fn d(&self) -> u32 {
        self.matrix.degree_type().d()
    }

    pub fn delta(&self) -> u8 {
        self.matrix.degree_type().delta()
    }

    pub fn target_degrees(&self) -> &[i64] {
        self.matrix.degree_type().r()
    }

    pub fn source_degrees(&self) -> &[i64] {
        self.matrix.degree_type().ell()
    }

    pub fn matrix(&self) -> &SymmetricFormMatrix {
        &self.matrix
    }
}

fn monomials(n: usize, degree: i64) -> Vec<Monomial> {
    if degree < 0 {
        Vec::new()
    } else {
        monomials_of_degree(n, degree as u32)
    }
}

/// `dim coker(M)_m`: target dimension minus the rank of the degree-`m` block.
pub fn hilbert_function_coker(p: &GradedPresentation, m: i64) -> usize {
    let n = p.n();
    let field = p.matrix.ring().field();
    let mut offsets = Vec::new();
    let mut index: Vec<HashMap<Monomial, usize>> = Vec::new();
    let mut width = 0;
    for &r in p.target_degrees() {
        offsets.push(width);
        let basis = monomials(n, m - r);
        width += basis.len();
        index.push(basis.into_iter().enumerate().map(|(k, u)| (u, k)).collect());
    }
    if width == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    for (j, &l) in p.source_degrees().iter().enumerate() {
        for u in monomials(n, m - l) {
            let mut row = vec![field.zero(); width];
            for i in 0..p.matrix.h() {
                for (mono, c) in p.matrix.entry(i, j).terms() {
                    row[offsets[i] + index[i][&mono.mul(&u)]] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    width - if rows.is_empty() { 0 } else { linalg::rank(field, &rows) }
}

/// Hilbert polynomial of the polynomial ring in `n` variables, `binom(a + n - 1, n - 1)`
/// as a polynomial in `a`.
pub fn ambient_hilbert_polynomial(n: usize, a: i64) -> i64 {
    let mut num = 1i64;
    let mut den = 1i64;
    for k in 1..n as i64 {
        num *= a + k;
        den *= k;
    }
    num / den
}

/// `chi(F(m)) = sum B(m - r_i) - sum B(m - l_j)`.
pub fn chi_from_resolution(p: &GradedPresentation, m: i64) -> i64 {
    let n = p.n();
    let plus: i64 = p.target_degrees().iter().map(|&r| ambient_hilbert_polynomial(n, m - r)).sum();
    let minus: i64 = p.source_degrees().iter().map(|&l| ambient_hilbert_polynomial(n, m - l)).sum();
    plus - minus
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub m: i64,
    pub h0: i64,
    /// Present only for curve tables.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<i64>,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub rows: Vec<CohomologyRow>,
}

impl CohomologyTable {
    pub fn row(&self, m: i64) -> Option<&CohomologyRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.rows).expect("serializable")
    }

    /// Right-aligned columns with a header line.
    pub fn to_text(&self) -> String {
        let curve = self.rows.iter().any(|r| r.h1.is_some());
        let mut out = String::new();
        if curve {
            let _ = writeln!(out, "{:>4} {:>6} {:>6} {:>6}", "m", "h0", "h1", "chi");
        } else {
            let _ = writeln!(out, "{:>4} {:>6} {:>6}", "m", "h0", "chi");
        }
        for r in &self.rows {
            match r.h1 {
                Some(h1) => {
                    let _ = writeln!(out, "{:>4} {:>6} {:>6} {:>6}", r.m, r.h0, h1, r.chi);
                }
                None => {
                    let _ = writeln!(out, "{:>4} {:>6} {:>6}", r.m, r.h0, r.chi);
                }
            }
        }
        out
    }
}

/// `h0`, `chi` and, for plane sections, `h1 = h0 - chi` over a range of twists.
pub fn cohomology_table(p: &GradedPresentation, range: RangeInclusive<i64>) -> Result<CohomologyTable> {
    let curve = p.n() == AMBIENT_VARS - 1;
    let mut rows = Vec::new();
    for m in range {
        let h0 = hilbert_function_coker(p, m) as i64;
        let chi = chi_from_resolution(p, m);
        let h1 = if curve {
            let h1 = h0 - chi;
            if h1 < 0 {
                return Err(Error::NegativeH1 { twist: m, h0, chi });
            }
            Some(h1)
        } else {
            None
        };
        rows.push(CohomologyRow { m, h0, h1, chi });
    }
    Ok(CohomologyTable { rows })
}

/// `h1(m) = h0(d - 3 + delta - m)` for every `m` in the range, with both
/// sides computed from independent Hilbert-function ranks.
pub fn duality_symmetry_check(p: &GradedPresentation, range: RangeInclusive<i64>) -> Result<bool> {
    if p.n() != AMBIENT_VARS - 1 {
        return Err(Error::InvalidPresentation("duality is checked on plane sections".into()));
    }
    if range.end() <= range.start() {
        return Err(Error::RangeTooSmall(format!("{}..={}", range.start(), range.end())));
    }
    let center = p.d() as i64 - 3 + p.delta() as i64;
    let table = cohomology_table(p, range)?;
    Ok(table
        .rows
        .iter()
        .all(|row| row.h1 == Some(hilbert_function_coker(p, center - row.m) as i64)))
}

/// `4 chi(F) = 8 - t` for a quartic surface presentation.
pub fn check_chi_node_formula(p: &GradedPresentation, report: &NodeReport) -> Result<bool> {
    if p.d() != 4 {
        return Err(Error::NotQuartic(p.d()));
    }
    if p.n() != AMBIENT_VARS {
        return Err(Error::InvalidPresentation("the node formula concerns surface presentations".into()));
    }
    Ok(chi_identity_holds(chi_from_resolution(p, 0), report.t))
}

/// `4 chi = 8 - t`.
pub fn chi_identity_holds(chi: i64, t: usize) -> bool {
    4 * chi == 8 - t as i64
}
