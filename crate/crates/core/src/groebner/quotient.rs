use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{Field, Monomial, Polynomial};
use crate::rng::SeededRng;

/// Fresh random linear forms tried before a squarefree check reports
/// "not certified".
pub const SQUAREFREE_RETRIES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Colength {
    Finite(usize),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<usize> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

/// Standard monomials of a zero-dimensional quotient, ascending in the
/// basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub staircase: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn len(&self) -> usize {
        self.staircase.len()
    }

    pub fn is_empty(&self) -> bool {
        self.staircase.is_empty()
    }
}

/// The monomials outside the leading-term ideal, or `None` when there are
/// infinitely many.
pub fn staircase(g: &GroebnerBasis) -> Option<QuotientBasis> {
    let n = g.ring().nvars();
    let lms = g.leading_monomials();
    let covered: HashSet<usize> = lms.iter().filter_map(|m| m.pure_power_of()).collect();
    if lms.iter().any(|m| m.is_one()) {
        return Some(QuotientBasis { staircase: Vec::new() });
    }
    if covered.len() < n {
        return None;
    }
    let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([Monomial::one(n)]);
    seen.insert(Monomial::one(n));
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        out.push(m);
        for i in 0..n {
            let next = m.mul(&Monomial::var(n, i));
            if standard(&next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let order = g.order();
    out.sort_by(|a, b| order.cmp(a, b));
    Some(QuotientBasis { staircase: out })
}

pub fn staircase_colength(g: &GroebnerBasis) -> Colength {
    match staircase(g) {
        Some(b) => Colength::Finite(b.len()),
        None => Colength::Infinite,
    }
}

/// Matrix of `u -> normal_form(l * u)` on the staircase basis: entry
/// `(i, j)` is the coefficient of `staircase[i]` in the image of `staircase[j]`.
pub fn multiplication_matrix(l: &Polynomial, g: &GroebnerBasis) -> Result<Matrix> {
    g.ring().check_same(&l.ring())?;
    let basis = staircase(g).ok_or(Error::InfiniteStaircase)?;
    let field = g.ring().field();
    let index: HashMap<Monomial, usize> =
        basis.staircase.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let k = basis.len();
    let mut m = vec![vec![field.zero(); k]; k];
    for (j, u) in basis.staircase.iter().enumerate() {
        let image = g.normal_form(&l.mul_term(u, &field.one()))?;
        for (mono, c) in image.terms() {
            let i = index[mono];
            m[i][j] = c.clone();
        }
    }
    Ok(m)
}

/// True certifies that the quotient is reduced: the characteristic
/// polynomial of a random linear form's multiplication matrix is squarefree.
/// False means "not certified" after [`SQUAREFREE_RETRIES`] attempts.
pub fn squarefree_certificate(g: &GroebnerBasis, seed: u64) -> Result<bool> {
    let basis = staircase(g).ok_or(Error::InfiniteStaircase)?;
    let field = g.ring().field();
    if let Field::Prime(p) = field {
        if (p as usize) <= basis.len() {
            return Err(Error::FieldTooSmall { characteristic: p, colength: basis.len() });
        }
    }
    let mut rng = SeededRng::new(seed);
    let n = g.ring().nvars();
    for _ in 0..SQUAREFREE_RETRIES {
        let coeffs: Vec<_> = (0..n).map(|_| rng.scalar(field)).collect();
        let l = crate::poly::linear_form(g.ring(), &coeffs);
        let m = multiplication_matrix(&l, g)?;
        if linalg::char_poly(field, &m).is_squarefree() {
            return Ok(true);
        }
    }
    Ok(false)
}
