use super::{buchberger, GroebnerConfig, Ideal};
use crate::error::Result;
use crate::poly::{Monomial, Polynomial, Ring, TermOrder};

/// Generators of `I ∩ k[x_first..]`: the ideal with the first `first`
/// variables eliminated, as an ideal in the remaining variables.
pub fn eliminate(ideal: &Ideal, first: usize, config: &GroebnerConfig) -> Result<Ideal> {
    let ring = ideal.ring();
    let g = buchberger(ideal, TermOrder::Block { split: first }, config)?;
    let target = ring.with_nvars(ring.nvars() - first);
    let kept = g
        .elements()
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| (0..first).all(|i| m.exponent(i) == 0)))
        .map(|p| {
            let mut q = p.clone();
            for _ in 0..first {
                q = q.drop_variable(0);
            }
            debug_assert_eq!(q.ring(), target);
            q
        })
        .collect();
    Ideal::new(target, kept)
}

/// `I + (t f - 1)` in a ring with a fresh first variable `t`.
fn rabinowitsch(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let ring = ideal.ring();
    ring.check_same(&f.ring())?;
    let n = ring.nvars();
    let ext = Ring::new(n + 1, ring.field());
    let shift: Vec<usize> = (1..=n).collect();
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.embed(ext, &shift)).collect();
    let t = Polynomial::monomial(ext, Monomial::var(n + 1, 0), ring.field().one());
    gens.push(&(&t * &f.embed(ext, &shift)) - &Polynomial::one(ext));
    Ideal::new(ext, gens)
}

/// The saturation `I : f^∞`, returned as the reduced grevlex basis of the
/// eliminated ideal.
pub fn saturate(ideal: &Ideal, f: &Polynomial, config: &GroebnerConfig) -> Result<Ideal> {
    let eliminated = eliminate(&rabinowitsch(ideal, f)?, 1, config)?;
    Ok(buchberger(&eliminated, TermOrder::Grevlex, config)?.to_ideal())
}

/// Whether `f` lies in the radical of `I`, decided by `1 ∈ I + (t f - 1)`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    Ok(buchberger(&rabinowitsch(ideal, f)?, TermOrder::Grevlex, config)?.is_unit())
}
