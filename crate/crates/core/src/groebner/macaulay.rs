//! Colength by pure linear algebra, independent of any Groebner computation.
//!
//! For a cap `m`, the span of all products `u * g` (generator `g`, monomial
//! `u`, total degree at most `m`) is a subspace of `R_{<=m}`. Its codimension
//! stabilizes at the colength of a zero-dimensional ideal without solutions
//! at infinity; two consecutive caps agreeing is taken as stabilization.

use std::collections::HashMap;

use super::Ideal;
use crate::linalg::{self, ModEchelon};
use crate::poly::{monomials_up_to_degree, Field, Monomial, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MacaulayOutcome {
    Count(usize),
    /// Codimensions at caps `D - 1` and `D` differ.
    Inconclusive { below: usize, at: usize },
}

/// Largest cap tried by [`macaulay_colength`] beyond the default.
const MAX_EXTRA_CAP: u32 = 24;

/// `dim R_{<=m} / span{u * g : deg(u * g) <= m}`.
pub fn truncated_codimension(ideal: &Ideal, m: u32) -> usize {
    let n = ideal.ring().nvars();
    let columns = monomials_up_to_degree(n, m);
    let index: HashMap<Monomial, usize> = columns.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let width = columns.len();
    let field = ideal.ring().field();
    let mut rank = 0;
    match field {
        Field::Prime(p) => {
            let mut ech = ModEchelon::new(width, p);
            for g in ideal.generators() {
                let dg = g.total_degree().unwrap_or(0);
                if dg > m {
                    continue;
                }
                for u in monomials_up_to_degree(n, m - dg) {
                    let mut row = vec![0u32; width];
                    for (mono, c) in g.terms() {
                        row[index[&mono.mul(&u)]] = c.residue_value().expect("residue");
                    }
                    ech.insert(row);
                    if ech.rank() == width {
                        return 0;
                    }
                }
            }
            rank = ech.rank();
        }
        Field::Rational => {
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for g in ideal.generators() {
                let dg = g.total_degree().unwrap_or(0);
                if dg > m {
                    continue;
                }
                for u in monomials_up_to_degree(n, m - dg) {
                    let mut row = vec![field.zero(); width];
                    for (mono, c) in g.terms() {
                        row[index[&mono.mul(&u)]] = c.clone();
                    }
                    rows.push(row);
                }
            }
            if !rows.is_empty() {
                rank = linalg::rank(field, &rows);
            }
        }
    }
    width - rank
}

/// Codimension at caps `cap - 1` and `cap`; a count when they agree.
pub fn macaulay_colength_oracle(ideal: &Ideal, cap: u32) -> MacaulayOutcome {
    let below = truncated_codimension(ideal, cap.saturating_sub(1));
    let at = truncated_codimension(ideal, cap);
    if below == at {
        MacaulayOutcome::Count(at)
    } else {
        MacaulayOutcome::Inconclusive { below, at }
    }
}

/// Default cap: three times the largest generator degree.
pub fn default_cap(ideal: &Ideal) -> u32 {
    3 * ideal.max_degree().max(1)
}

/// Runs the oracle from the default cap, raising it until conclusive.
/// Returns the count and the cap that produced it.
pub fn macaulay_colength(ideal: &Ideal) -> Option<(usize, u32)> {
    let start = default_cap(ideal);
    let mut previous = truncated_codimension(ideal, start - 1);
    for cap in start..=start + MAX_EXTRA_CAP {
        let current = truncated_codimension(ideal, cap);
        if current == previous {
            return Some((current, cap));
        }
        previous = current;
    }
    None
}
