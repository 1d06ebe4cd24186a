use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use super::monomial::{Monomial, TermOrder, MAX_VARS};
use crate::error::{Error, Result};
use crate::linalg;

/// Ring context: number of variables and coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    nvars: usize,
    field: Field,
}

impl Ring {
    pub fn new(nvars: usize, field: Field) -> Ring {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Ring { nvars, field }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    /// Same field, different number of variables.
    pub fn with_nvars(&self, nvars: usize) -> Ring {
        Ring::new(nvars, self.field)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(*self, i)
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::constant(*self, c)
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "{} variables over {} vs {} variables over {}",
                self.nvars, self.field, other.nvars, other.field
            )))
        }
    }
}

/// Sparse polynomial. Terms are stored in strictly descending grevlex order
/// with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Polynomial {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn constant(ring: Ring, c: Scalar) -> Polynomial {
        Polynomial::monomial(ring, Monomial::one(ring.nvars), c)
    }

    pub fn one(ring: Ring) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn var(ring: Ring, i: usize) -> Polynomial {
        Polynomial::monomial(ring, Monomial::var(ring.nvars, i), ring.field.one())
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Scalar) -> Polynomial {
        debug_assert_eq!(m.nvars(), ring.nvars);
        if c.is_zero() {
            Polynomial::zero(ring)
        } else {
            Polynomial { ring, terms: vec![(m, c)] }
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial::from_map(ring, acc)
    }

    fn from_map(ring: Ring, map: HashMap<Monomial, Scalar>) -> Polynomial {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| TermOrder::Grevlex.cmp(&b.0, &a.0));
        Polynomial { ring, terms }
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term with respect to grevlex.
    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// Maximal total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        // grevlex is degree-compatible, so the first term has maximal degree
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// True for the zero polynomial and for polynomials all of whose terms
    /// share one total degree.
    pub fn is_homogeneous(&self) -> bool {
        match self.total_degree() {
            None => true,
            Some(d) => self.terms.iter().all(|(m, _)| m.degree() == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        Ok(self.product(other))
    }

    /// Multiplies by a scalar of the ring's field.
    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        if c.field() != self.ring.field {
            return Err(Error::ContextMismatch(format!(
                "scalar over {} applied to polynomial over {}",
                c.field(),
                self.ring.field
            )));
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(self.ring));
        }
        Ok(Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        })
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match TermOrder::Grevlex.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (*m, if subtract { -c } else { c.clone() })));
        Polynomial { ring: self.ring, terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.ring);
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let v = e.get_mut();
                        *v = &*v + &c;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Polynomial::from_map(self.ring, acc)
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        if i >= self.ring.nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.ring.nvars });
        }
        let field = self.ring.field;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(i);
            if e == 0 {
                return None;
            }
            let mut dm = *m;
            dm.set_exponent(i, e - 1);
            Some((dm, c * &field.from_i64(e as i64)))
        });
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.ring.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Substitutes `x_i -> images[i]`; all images must live in `target`.
    pub fn substitute(&self, target: Ring, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars {
            return Err(Error::ContextMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars
            )));
        }
        for img in images {
            target.check_same(&img.ring)?;
        }
        if target.field != self.ring.field {
            return Err(Error::ContextMismatch("substitution changes the field".into()));
        }
        // powers[i][k] = images[i]^k, grown on demand
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|_| vec![Polynomial::one(target)]).collect();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().product(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.product(&powers[i][e]);
                }
            }
            for (tm, tc) in term.terms {
                match acc.get_mut(&tm) {
                    Some(v) => *v = &*v + &tc,
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Ok(Polynomial::from_map(target, acc))
    }

    /// `f(A x)`: substitutes `x_i -> sum_j A[i][j] x_j`. `A` must be invertible.
    pub fn linear_change(&self, a: &[Vec<Scalar>]) -> Result<Polynomial> {
        let n = self.ring.nvars;
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMatrix(format!("linear change must be {n}x{n}")));
        }
        if a.iter().flatten().any(|c| c.field() != self.ring.field) {
            return Err(Error::ContextMismatch("matrix entries over a different field".into()));
        }
        if linalg::determinant(self.ring.field, a).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<Polynomial> = a.iter().map(|row| linear_form(self.ring, row)).collect();
        self.substitute(self.ring, &images)
    }

    /// Sets `x_chart = 1`, producing a polynomial in the remaining variables
    /// (indices above `chart` shift down by one).
    pub fn dehomogenize(&self, chart: usize) -> Result<Polynomial> {
        let n = self.ring.nvars;
        if chart >= n {
            return Err(Error::IndexOutOfRange { index: chart, nvars: n });
        }
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.drop_variable(chart))
    }

    /// Evaluates `x_var = 1` without requiring homogeneity.
    pub(crate) fn drop_variable(&self, var: usize) -> Polynomial {
        let target = self.ring.with_nvars(self.ring.nvars - 1);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Vec::with_capacity(target.nvars);
            for (i, &x) in m.exponents().iter().enumerate() {
                if i != var {
                    e.push(x as u32);
                }
            }
            (Monomial::from_exponents(&e), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Re-indexes variables into a larger ring: `x_i -> x_{mapping[i]}`.
    pub fn embed(&self, target: Ring, mapping: &[usize]) -> Polynomial {
        assert_eq!(mapping.len(), self.ring.nvars);
        assert_eq!(target.field, self.ring.field);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; target.nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[mapping[i]] += x as u32;
            }
            (Monomial::from_exponents(&e), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars);
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v = &v * &point[i].pow(e as u64);
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Scales so the grevlex-leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")).expect("same field"),
        }
    }
}

/// `sum_j coeffs[j] * x_j`.
pub fn linear_form(ring: Ring, coeffs: &[Scalar]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        coeffs.iter().enumerate().map(|(j, c)| (Monomial::var(ring.nvars, j), c.clone())),
    )
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; see [`Polynomial::checked_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring4() -> Ring {
        Ring::new(4, Field::Prime(31991))
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, ring4()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x0+x1") * &p("x0-x1"), p("x0^2 - x1^2"));
    }

    #[test]
    fn additive_identity_and_zero_scale() {
        let f = p("x0^2*x1 - 3*x2*x3^2");
        assert_eq!(&f + &Polynomial::zero(ring4()), f);
        assert!(f.scale(&ring4().field().zero()).unwrap().is_zero());
    }

    #[test]
    fn mismatched_rings_error() {
        let g = Polynomial::var(Ring::new(3, Field::Prime(31991)), 0);
        assert!(matches!(p("x0").checked_add(&g), Err(Error::ContextMismatch(_))));
        let h = Polynomial::var(Ring::new(4, Field::Prime(7)), 0);
        assert!(p("x0").checked_mul(&h).is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x0^2*x1").partial_derivative(0).unwrap(), p("2*x0*x1"));
        assert!(p("x0^3").partial_derivative(1).unwrap().is_zero());
        let r5 = Ring::new(4, Field::Prime(5));
        let f = parse_poly("x0^5", r5).unwrap();
        assert!(f.partial_derivative(0).unwrap().is_zero());
        assert!(matches!(f.partial_derivative(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn linear_changes() {
        let f = p("x0^2*x1");
        let field = ring4().field();
        let id: Vec<Vec<Scalar>> = (0..4)
            .map(|i| (0..4).map(|j| field.from_i64((i == j) as i64)).collect())
            .collect();
        assert_eq!(f.linear_change(&id).unwrap(), f);
        let mut swap = id.clone();
        swap.swap(0, 1);
        assert_eq!(f.linear_change(&swap).unwrap(), p("x1^2*x0"));
        let mut singular = id.clone();
        singular[3] = singular[2].clone();
        assert_eq!(f.linear_change(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn linear_change_inverse_roundtrip() {
        let field = ring4().field();
        let a: Vec<Vec<Scalar>> = [[1, 2, 0, 0], [0, 1, 3, 0], [0, 0, 1, 4], [5, 0, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        let inv = linalg::inverse(field, &a).unwrap();
        let f = p("x0^2*x1 - 3*x2*x3^2 + x1^3");
        assert_eq!(f.linear_change(&a).unwrap().linear_change(&inv).unwrap(), f);
    }

    #[test]
    fn dehomogenization() {
        assert_eq!(
            p("x0*x3 - x1*x2").dehomogenize(3).unwrap(),
            parse_poly("x0 - x1*x2", Ring::new(3, Field::Prime(31991))).unwrap()
        );
        assert!(p("x3^4").dehomogenize(3).unwrap().is_constant());
        assert_eq!(p("x0 + 1").dehomogenize(3), Err(Error::NotHomogeneous));
        let g = p("x0^2 + x1*x2").dehomogenize(3).unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn eval_and_homogeneity() {
        let f = p("x0^2 + 2*x1*x3");
        let field = ring4().field();
        let pt: Vec<Scalar> = [1, 2, 3, 4].iter().map(|&v| field.from_i64(v)).collect();
        assert_eq!(f.eval(&pt), field.from_i64(17));
        assert!(f.is_homogeneous());
        assert!(!p("x0 + 1").is_homogeneous());
    }
}
