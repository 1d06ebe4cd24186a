use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Upper bound on ring size: four ambient coordinates plus auxiliary
/// variables for saturation and radical tests.
pub const MAX_VARS: usize = 8;

/// A power product `x0^e0 * ... * x(n-1)^e(n-1)` stored inline.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Monomial { exps: [0; MAX_VARS], nvars: nvars as u8 }
    }

    pub fn var(nvars: usize, index: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[index] = 1;
        m
    }

    /// Panics if an exponent exceeds `u16::MAX` or there are too many variables.
    pub fn from_exponents(exps: &[u32]) -> Monomial {
        let mut m = Monomial::one(exps.len());
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub(crate) fn set_exponent(&mut self, i: usize, e: u32) {
        self.exps[i] = u16::try_from(e).expect("exponent overflow");
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exponents().iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents().iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut m = *self;
        for i in 0..self.nvars() {
            m.exps[i] = m.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..self.nvars() {
            m.exps[i] -= self.exps[i];
        }
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..self.nvars() {
            m.exps[i] = m.exps[i].max(other.exps[i]);
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// The single variable this monomial is a pure power of, if any.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e >= 2 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    /// Graded reverse lexicographic with `x0 > x1 > ...`.
    Grevlex,
    /// Pure lexicographic with `x0 > x1 > ...`.
    Lex,
    /// Variables `[0, split)` form the eliminated block; grevlex inside each block.
    Block { split: usize },
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            TermOrder::Grevlex => grevlex_range(a, b, 0, a.nvars()),
            TermOrder::Lex => a.exponents().cmp(b.exponents()),
            TermOrder::Block { split } => grevlex_range(a, b, 0, split)
                .then_with(|| grevlex_range(a, b, split, a.nvars())),
        }
    }
}

#[inline]
fn grevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let da: u32 = a.exps[lo..hi].iter().map(|&e| e as u32).sum();
    let db: u32 = b.exps[lo..hi].iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (lo..hi).rev() {
            if a.exps[i] != b.exps[i] {
                // smaller exponent in the last differing variable wins
                return b.exps[i].cmp(&a.exps[i]);
            }
        }
        Ordering::Equal
    })
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// descending grevlex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill(&mut out, &mut exps, 0, degree);
    out.sort_by(|a, b| TermOrder::Grevlex.cmp(b, a));
    out
}

/// All monomials of total degree at most `degree`, descending grevlex.
pub fn monomials_up_to_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..=degree).rev().flat_map(|k| monomials_of_degree(nvars, k)).collect();
    out.dedup();
    out
}

fn fill(out: &mut Vec<Monomial>, exps: &mut [u32], pos: usize, left: u32) {
    if exps.is_empty() {
        if left == 0 {
            out.push(Monomial::one(0));
        }
        return;
    }
    if pos == exps.len() - 1 {
        exps[pos] = left;
        out.push(Monomial::from_exponents(exps));
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        fill(out, exps, pos + 1, left - e);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Reference grevlex: compare (degree, -e_{n-1}, -e_{n-2}, ...) lexicographically.
    fn grevlex_key(a: &Monomial) -> Vec<i64> {
        let mut k = vec![a.degree() as i64];
        k.extend(a.exponents().iter().rev().map(|&e| -(e as i64)));
        k
    }

    #[test]
    fn grevlex_small_chain() {
        let o = TermOrder::Grevlex;
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn grevlex_matches_reference_key() {
        let all = monomials_up_to_degree(3, 4);
        for a in &all {
            for b in &all {
                assert_eq!(
                    TermOrder::Grevlex.cmp(a, b),
                    grevlex_key(a).cmp(&grevlex_key(b)),
                    "{a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn one_is_minimal() {
        let one = Monomial::one(3);
        for order in [TermOrder::Grevlex, TermOrder::Lex, TermOrder::Block { split: 1 }] {
            for b in monomials_up_to_degree(3, 3).iter().filter(|b| !b.is_one()) {
                assert_eq!(order.cmp(b, &one), Ordering::Greater);
            }
        }
    }

    #[test]
    fn lex_first_variable_dominates() {
        assert_eq!(TermOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 100])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = TermOrder::Block { split: 1 };
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn orders_are_multiplicative() {
        let all = monomials_up_to_degree(3, 3);
        let w = m(&[1, 2, 0]);
        for order in [TermOrder::Grevlex, TermOrder::Lex, TermOrder::Block { split: 2 }] {
            for a in &all {
                for b in &all {
                    assert_eq!(order.cmp(a, b), order.cmp(&a.mul(&w), &b.mul(&w)));
                }
            }
        }
    }

    #[test]
    fn degree_counts() {
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one(3)]);
        assert_eq!(monomials_up_to_degree(3, 2).len(), 10);
    }
}
