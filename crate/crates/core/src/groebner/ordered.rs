//! Working representation for reduction: terms sorted ascending in a given
//! order, so the leading term sits at the end of the vector.

use std::cmp::Ordering;

use crate::poly::{Monomial, Polynomial, Ring, Scalar, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OrderedPoly {
    pub terms: Vec<(Monomial, Scalar)>,
}

impl OrderedPoly {
    pub fn from_poly(p: &Polynomial, order: TermOrder) -> OrderedPoly {
        let mut terms = p.terms().to_vec();
        if order != TermOrder::Grevlex {
            terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        } else {
            terms.reverse();
        }
        OrderedPoly { terms }
    }

    pub fn to_poly(&self, ring: Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    pub fn lc(&self) -> &Scalar {
        &self.terms.last().expect("nonzero polynomial").1
    }

    pub fn monic(mut self) -> OrderedPoly {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero");
                for (_, a) in self.terms.iter_mut() {
                    *a = &*a * &inv;
                }
            }
        }
        self
    }

    /// `self - c * m * other`, where multiplying `other` by `m` keeps its
    /// terms sorted because term orders are multiplicative.
    pub fn sub_scaled(&self, c: &Scalar, m: &Monomial, other: &OrderedPoly, order: TermOrder) -> OrderedPoly {
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(m);
            match order.cmp(&a[i].0, &bm) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((bm, -&(c * &b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].1 - &(c * &b[j].1);
                    if !v.is_zero() {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (bm, bc) in &b[j..] {
            out.push((bm.mul(m), -&(c * bc)));
        }
        OrderedPoly { terms: out }
    }

    /// S-polynomial of two monic-or-not polynomials.
    pub fn s_poly(f: &OrderedPoly, g: &OrderedPoly, order: TermOrder) -> OrderedPoly {
        let l = f.lm().lcm(g.lm());
        let mf = f.lm().quotient(&l).expect("lcm divisible");
        let mg = g.lm().quotient(&l).expect("lcm divisible");
        let finv = f.lc().inv().expect("nonzero");
        let zero = OrderedPoly { terms: Vec::new() };
        // (1/lc f) mf f - (1/lc g) mg g
        let a = zero.sub_scaled(&-&finv, &mf, f, order);
        let ginv = g.lc().inv().expect("nonzero");
        a.sub_scaled(&ginv, &mg, g, order)
    }
}

/// Full reduction of `f` modulo the divisors: afterwards no term is
/// divisible by a divisor's leading monomial.
pub(crate) fn reduce<'a, I>(f: &OrderedPoly, divisors: I, order: TermOrder) -> OrderedPoly
where
    I: IntoIterator<Item = &'a OrderedPoly> + Clone,
{
    let divs: Vec<&OrderedPoly> = divisors.into_iter().collect();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((m, c)) = p.terms.last() {
        match divs.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let q = g.lm().quotient(m).expect("divides");
                let coef = c * &g.lc().inv().expect("nonzero");
                p = p.sub_scaled(&coef, &q, g, order);
            }
            None => {
                rem.push(p.terms.pop().expect("nonempty"));
            }
        }
    }
    rem.reverse();
    OrderedPoly { terms: rem }
}
