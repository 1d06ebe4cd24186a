//! Dense exact linear algebra over a [`Field`], plus dense univariate
//! polynomials for characteristic-polynomial work.

use crate::error::{Error, Result};
use crate::poly::{Field, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(field: Field, n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| field.from_i64((i == j) as i64)).collect()).collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(field: Field, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| &acc + &(&row[k] * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn determinant(field: Field, a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return field.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv().expect("pivot nonzero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let v = &m[r][c] - &(&factor * &m[col][c]);
                m[r][c] = v;
            }
        }
    }
    det
}

pub fn inverse(field: Field, a: &[Vec<Scalar>]) -> Result<Matrix> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| field.from_i64((i == j) as i64)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        m.swap(piv, col);
        let inv = m[col][col].inv().expect("pivot nonzero");
        for c in 0..2 * n {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..2 * n {
                let v = &m[r][c] - &(&factor * &m[col][c]);
                m[r][c] = v;
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank of a matrix given by its rows.
pub fn rank(field: Field, rows: &[Vec<Scalar>]) -> usize {
    match field {
        Field::Prime(p) => {
            let rows: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| r.iter().map(|c| c.residue_value().expect("residue")).collect())
                .collect();
            rank_mod_p(rows, p)
        }
        Field::Rational => rank_generic(rows.to_vec()),
    }
}

fn rank_generic(mut m: Matrix) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(piv, rank);
        let inv = m[rank][col].inv().expect("pivot nonzero");
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..cols {
                let v = &m[r][c] - &(&factor * &m[rank][c]);
                m[r][c] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_p` by incremental row echelon insertion. Rows may be long
/// and sparse; each incoming row is reduced only against existing pivots.
pub fn rank_mod_p(rows: Vec<Vec<u32>>, p: u32) -> usize {
    let mut echelon = ModEchelon::new(rows.first().map_or(0, |r| r.len()), p);
    for row in rows {
        echelon.insert(row);
    }
    echelon.rank()
}

/// Row echelon form over `F_p` built one row at a time.
pub struct ModEchelon {
    width: usize,
    p: u64,
    /// pivot_rows[c] is a row with leading entry 1 in column c
    pivot_rows: Vec<Option<Vec<u32>>>,
    rank: usize,
}

impl ModEchelon {
    pub fn new(width: usize, p: u32) -> ModEchelon {
        ModEchelon { width, p: p as u64, pivot_rows: vec![None; width], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Returns true when the row was independent of the rows inserted so far.
    pub fn insert(&mut self, mut row: Vec<u32>) -> bool {
        debug_assert_eq!(row.len(), self.width);
        let p = self.p;
        for col in 0..self.width {
            let v = row[col] as u64;
            if v == 0 {
                continue;
            }
            match &self.pivot_rows[col] {
                Some(piv) => {
                    let factor = p - v;
                    for c in col..self.width {
                        let pc = piv[c] as u64;
                        if pc != 0 {
                            row[c] = ((row[c] as u64 + factor * pc) % p) as u32;
                        }
                    }
                }
                None => {
                    let inv = mod_inv(v, p);
                    for x in row[col..].iter_mut() {
                        *x = ((*x as u64 * inv) % p) as u32;
                    }
                    self.pivot_rows[col] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

fn mod_inv(v: u64, p: u64) -> u64 {
    let (mut acc, mut base, mut e) = (1u64, v % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Dense univariate polynomial, coefficients from low to high degree,
/// without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &self.field.from_i64(k as i64))
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    fn rem(&self, divisor: &UniPoly) -> UniPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv().expect("nonzero");
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let q = &r[top] * &lead_inv;
            if !q.is_zero() {
                for k in 0..=dd {
                    let v = &r[top - dd + k] - &(&q * &divisor.coeffs[k]);
                    r[top - dd + k] = v;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(self.field, r)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.coeffs.last() {
            None => a,
            Some(lead) => {
                let inv = lead.inv().expect("nonzero");
                UniPoly::new(a.field, a.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// True when `gcd(f, f')` is constant and `f'` is nonzero (or `f` is constant).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }
}

/// Characteristic polynomial `det(x I - M)` via reduction to Hessenberg form.
pub fn char_poly(field: Field, m: &[Vec<Scalar>]) -> UniPoly {
    let n = m.len();
    let mut h: Matrix = m.to_vec();
    for col in 1..n.saturating_sub(1) {
        let Some(piv) = (col..n).find(|&r| !h[r][col - 1].is_zero()) else {
            continue;
        };
        if piv != col {
            h.swap(piv, col);
            for row in h.iter_mut() {
                row.swap(piv, col);
            }
        }
        let inv = h[col][col - 1].inv().expect("pivot nonzero");
        for j in col + 1..n {
            if h[j][col - 1].is_zero() {
                continue;
            }
            let u = &h[j][col - 1] * &inv;
            for c in 0..n {
                let v = &h[j][c] - &(&u * &h[col][c]);
                h[j][c] = v;
            }
            for row in h.iter_mut() {
                let v = &row[col] + &(&u * &row[j]);
                row[col] = v;
            }
        }
    }
    // p[k] = characteristic polynomial of the leading k x k block
    let x = UniPoly::new(field, vec![field.zero(), field.one()]);
    let mut p: Vec<UniPoly> = vec![UniPoly::new(field, vec![field.one()])];
    for k in 1..=n {
        let shift = UniPoly::new(field, vec![-&h[k - 1][k - 1]]);
        let mut pk = mul_uni(&add_uni(&x, &shift), &p[k - 1]);
        let mut t = field.one();
        for i in (1..k).rev() {
            t = &t * &h[i][i - 1];
            let c = &h[i - 1][k - 1] * &t;
            if !c.is_zero() {
                let term = UniPoly::new(field, p[i - 1].coeffs.iter().map(|a| -&(a * &c)).collect());
                pk = add_uni(&pk, &term);
            }
        }
        p.push(pk);
    }
    p.pop().expect("nonempty")
}

fn add_uni(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let z = a.field.zero();
    let coeffs = (0..n)
        .map(|k| a.coeffs.get(k).unwrap_or(&z) + b.coeffs.get(k).unwrap_or(&z))
        .collect();
    UniPoly::new(a.field, coeffs)
}

fn mul_uni(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::new(a.field, Vec::new());
    }
    let mut out = vec![a.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    UniPoly::new(a.field, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(field: Field, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect()
    }

    #[test]
    fn determinant_and_inverse() {
        let f = Field::Rational;
        let a = mat(f, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(f, &a), f.from_i64(18));
        let inv = inverse(f, &a).unwrap();
        assert_eq!(mat_mul(f, &a, &inv), identity(f, 3));
        let s = mat(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(f, &s), Err(Error::SingularMatrix));
    }

    #[test]
    fn ranks_agree_across_fields() {
        let rows: &[&[i64]] = &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4]];
        assert_eq!(rank(Field::Rational, &mat(Field::Rational, rows)), 2);
        assert_eq!(rank(Field::Prime(31991), &mat(Field::Prime(31991), rows)), 2);
        // over F_2-adjacent primes the rank may drop
        let r: &[&[i64]] = &[&[1, 1], &[1, 4]];
        assert_eq!(rank(Field::Prime(3), &mat(Field::Prime(3), r)), 1);
    }

    #[test]
    fn char_poly_matches_determinant_at_points() {
        let f = Field::Prime(31991);
        let a = mat(f, &[&[0, 1, 5, 2], &[3, 0, 0, 1], &[7, 2, 1, 0], &[0, 0, 4, 9]]);
        let cp = char_poly(f, &a);
        assert_eq!(cp.degree(), Some(4));
        for x in [0i64, 1, 2, 17, 1000] {
            let xi: Matrix = (0..4)
                .map(|i| (0..4).map(|j| &f.from_i64(if i == j { x } else { 0 }) - &a[i][j]).collect())
                .collect();
            assert_eq!(cp.eval(&f.from_i64(x)), determinant(f, &xi));
        }
    }

    #[test]
    fn char_poly_of_nilpotent_and_empty() {
        let f = Field::Rational;
        let n = mat(f, &[&[0, 0], &[1, 0]]);
        assert_eq!(char_poly(f, &n).coeffs(), &[f.zero(), f.zero(), f.one()]);
        assert!(!char_poly(f, &n).is_squarefree());
        assert_eq!(char_poly(f, &[]).degree(), Some(0));
    }

    #[test]
    fn squarefree_detection() {
        let f = Field::Prime(7);
        // (x-1)(x-2) = x^2 - 3x + 2
        let g = UniPoly::new(f, vec![f.from_i64(2), f.from_i64(-3), f.one()]);
        assert!(g.is_squarefree());
        // (x-1)^2
        let h = UniPoly::new(f, vec![f.one(), f.from_i64(-2), f.one()]);
        assert!(!h.is_squarefree());
        // x^7 - 1 = (x-1)^7 over F_7, derivative vanishes
        let mut c = vec![f.zero(); 8];
        c[0] = f.from_i64(-1);
        c[7] = f.one();
        assert!(!UniPoly::new(f, c).is_squarefree());
    }
}
