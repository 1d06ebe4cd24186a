//! Groebner bases by Buchberger's algorithm, and what is built on them:
//! normal forms, elimination, saturation, radical membership, quotient
//! staircases, multiplication matrices and a Macaulay-matrix colength oracle.

mod elimination;
mod macaulay;
mod ordered;
mod quotient;

use std::cmp::Ordering;

pub use elimination::{eliminate, radical_membership, saturate};
pub use macaulay::{
    default_cap, macaulay_colength, macaulay_colength_oracle, truncated_codimension, MacaulayOutcome,
};
pub use quotient::{
    multiplication_matrix, squarefree_certificate, staircase, staircase_colength, Colength,
    QuotientBasis, SQUAREFREE_RETRIES,
};

use ordered::{reduce, OrderedPoly};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Ring, TermOrder};

/// Default number of critical pairs Buchberger may process before giving up.
pub const DEFAULT_PAIR_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub pair_budget: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { pair_budget: DEFAULT_PAIR_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            ring.check_same(&g.ring())?;
        }
        Ok(Ideal { ring, generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Sum of ideals.
    pub fn add(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.ring, gens)
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0)
    }
}

/// A reduced Groebner basis: monic elements sorted by ascending leading
/// monomial, no leading monomial dividing another, all tails reduced.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: TermOrder,
    elements: Vec<Polynomial>,
    ordered: Vec<OrderedPoly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    fn from_ordered(ring: Ring, order: TermOrder, mut ordered: Vec<OrderedPoly>) -> GroebnerBasis {
        ordered.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        let elements = ordered.iter().map(|p| p.to_poly(ring)).collect();
        GroebnerBasis { ring, order, elements, ordered }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.ordered.iter().map(|p| *p.lm()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.ordered.len() == 1 && self.ordered[0].lm().is_one()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal { ring: self.ring, generators: self.elements.clone() }
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&f.ring())?;
        let r = reduce(&OrderedPoly::from_poly(f, self.order), self.ordered.iter(), self.order);
        Ok(r.to_poly(self.ring))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Post-hoc check: every S-polynomial (no criteria applied) reduces to
    /// zero, and the basis is reduced.
    pub fn audit(&self) -> bool {
        let g = &self.ordered;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let s = OrderedPoly::s_poly(&g[i], &g[j], self.order);
                if !reduce(&s, g.iter(), self.order).is_zero() {
                    return false;
                }
            }
        }
        g.iter().enumerate().all(|(i, p)| {
            p.lc().is_one()
                && p.terms.iter().all(|(m, _)| {
                    g.iter().enumerate().all(|(k, q)| k == i || !q.lm().divides(m))
                })
        })
    }

    /// Dump in the polynomial text grammar, one element per line.
    pub fn dump(&self) -> String {
        self.elements.iter().map(|p| format!("{p}\n")).collect()
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Groebner basis by Buchberger's algorithm with Gebauer-Moeller
/// pair elimination (coprime and chain criteria) and normal selection
/// (smallest lcm degree first).
pub fn buchberger(ideal: &Ideal, order: TermOrder, config: &GroebnerConfig) -> Result<GroebnerBasis> {
    let ring = ideal.ring;
    let mut state = BuchbergerState { order, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };

    for g in &ideal.generators {
        let f = OrderedPoly::from_poly(g, order);
        let h = reduce(&f, state.active_polys(), order);
        if !h.is_zero() {
            if h.lm().is_one() {
                return Ok(unit_basis(ring, order));
            }
            state.update(h.monic());
        }
    }

    let mut processed = 0usize;
    while !state.pairs.is_empty() {
        if processed >= config.pair_budget {
            return Err(Error::PairBudgetExhausted { budget: config.pair_budget });
        }
        let pick = state.select_pair();
        let pair = state.pairs.swap_remove(pick);
        processed += 1;
        let s = OrderedPoly::s_poly(&state.polys[pair.i], &state.polys[pair.j], order);
        let h = reduce(&s, state.active_polys(), order);
        if !h.is_zero() {
            if h.lm().is_one() {
                return Ok(unit_basis(ring, order));
            }
            state.update(h.monic());
        }
    }

    // active elements already form a minimal basis; reduce tails
    let minimal: Vec<OrderedPoly> = state
        .active
        .iter()
        .enumerate()
        .filter(|(_, &a)| a)
        .map(|(k, _)| state.polys[k].clone())
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, p) in minimal.iter().enumerate() {
        let lead = p.terms.last().cloned().expect("nonzero");
        let tail = OrderedPoly { terms: p.terms[..p.terms.len() - 1].to_vec() };
        let others = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, q)| q);
        let mut r = reduce(&tail, others, order);
        r.terms.push(lead);
        reduced.push(r.monic());
    }
    Ok(GroebnerBasis::from_ordered(ring, order, reduced))
}

fn unit_basis(ring: Ring, order: TermOrder) -> GroebnerBasis {
    let one = OrderedPoly::from_poly(&Polynomial::one(ring), order);
    GroebnerBasis::from_ordered(ring, order, vec![one])
}

struct BuchbergerState {
    order: TermOrder,
    polys: Vec<OrderedPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl BuchbergerState {
    fn active_polys(&self) -> impl Iterator<Item = &OrderedPoly> + Clone {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p)
    }

    fn select_pair(&self) -> usize {
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = a.lcm.degree().cmp(&b.lcm.degree()).then_with(|| order.cmp(&a.lcm, &b.lcm));
            if c == Ordering::Less {
                best = k;
            }
        }
        best
    }

    /// Gebauer-Moeller update with the new basis element `h`.
    fn update(&mut self, h: OrderedPoly) {
        let hidx = self.polys.len();
        let lm_h = *h.lm();
        self.polys.push(h);
        self.active.push(true);

        let mut candidates: Vec<Pair> = (0..hidx)
            .filter(|&g| self.active[g])
            .map(|g| Pair { i: g, j: hidx, lcm: self.polys[g].lm().lcm(&lm_h) })
            .collect();
        let coprime = |p: &Pair, polys: &Vec<OrderedPoly>| polys[p.i].lm().is_coprime(&lm_h);

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let dominated = |q: &Pair| q.lcm.divides(&p.lcm);
            if coprime(&p, &self.polys)
                || (!candidates.iter().any(dominated) && !kept.iter().any(dominated))
            {
                kept.push(p);
            }
        }
        // drop pairs with coprime leading monomials (first criterion)
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|p| !coprime(p, &self.polys)).collect();

        // chain criterion on old pairs: h's leading monomial splits them
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && polys[p.i].lm().lcm(&lm_h) != p.lcm
                && polys[p.j].lm().lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(new_pairs);

        for g in 0..hidx {
            if self.active[g] && lm_h.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Field};
    use crate::rng::SeededRng;

    fn ring(n: usize) -> Ring {
        Ring::new(n, Field::Prime(31991))
    }

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        let r = ring(n);
        Ideal::new(r, gens.iter().map(|s| parse_poly(s, r).unwrap()).collect()).unwrap()
    }

    fn gb(n: usize, gens: &[&str]) -> GroebnerBasis {
        buchberger(&ideal(n, gens), TermOrder::Grevlex, &GroebnerConfig::default()).unwrap()
    }

    #[test]
    fn variables_are_a_basis() {
        let g = gb(3, &["x0", "x1"]);
        assert_eq!(g.elements().len(), 2);
        assert_eq!(g.to_ideal(), ideal(3, &["x1", "x0"]));
    }

    #[test]
    fn unit_ideal() {
        let g = gb(3, &["1"]);
        assert!(g.is_unit());
        assert!(gb(2, &["x0", "x0 - 1"]).is_unit());
    }

    #[test]
    fn small_basis_passes_audit() {
        let g = gb(2, &["x0^2", "x0*x1 - x0"]);
        assert!(g.audit());
        // x0*x1 - x0 and x0^2 already reduced
        assert_eq!(g.elements().len(), 2);
    }

    #[test]
    fn idempotent() {
        let cfg = GroebnerConfig::default();
        let g = gb(3, &["x0^2 + x1*x2 - 1", "x1^2 - x0*x2", "x2^3 - x0 + 2"]);
        assert!(g.audit());
        let again = buchberger(&g.to_ideal(), TermOrder::Grevlex, &cfg).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn lex_basis_triangularizes() {
        let cfg = GroebnerConfig::default();
        let g = buchberger(&ideal(2, &["x0^2 + x1^2 - 5", "x0 - x1 - 1"]), TermOrder::Lex, &cfg).unwrap();
        assert!(g.audit());
        // last element is univariate in x1
        let last = &g.elements()[0];
        assert!(last.terms().iter().all(|(m, _)| m.exponent(0) == 0));
    }

    #[test]
    fn normal_form_basics() {
        let g = gb(2, &["x0"]);
        let r = ring(2);
        assert!(g.normal_form(&parse_poly("x0^2", r).unwrap()).unwrap().is_zero());
        let x1 = parse_poly("x1", r).unwrap();
        assert_eq!(g.normal_form(&x1).unwrap(), x1);
    }

    #[test]
    fn normal_form_kills_ideal_members() {
        let gens = ["x0^2 + x1*x2 - 1", "x1^2 - x0*x2", "x2^3 - x0 + 2"];
        let g = gb(3, &gens);
        let r = ring(3);
        let mut rng = SeededRng::new(5);
        for _ in 0..20 {
            let mut member = Polynomial::zero(r);
            for s in gens {
                let gi = parse_poly(s, r).unwrap();
                let mult = Polynomial::from_terms(
                    r,
                    crate::poly::monomials_up_to_degree(3, 2)
                        .into_iter()
                        .map(|m| (m, rng.scalar(r.field()))),
                );
                member = &member + &(&gi * &mult);
            }
            assert!(g.normal_form(&member).unwrap().is_zero());
            // idempotence
            let extra = parse_poly("x0*x1*x2 + x1 + 7", r).unwrap();
            let nf = g.normal_form(&(&member + &extra)).unwrap();
            assert_eq!(g.normal_form(&nf).unwrap(), nf);
            assert_eq!(nf, g.normal_form(&extra).unwrap());
        }
    }

    #[test]
    fn pair_budget_is_enforced() {
        let cfg = GroebnerConfig { pair_budget: 1 };
        let i = ideal(3, &["x0*x1 - x2^2", "x0*x2 - x1^2", "x1*x2 - x0^2 + 1"]);
        assert_eq!(
            buchberger(&i, TermOrder::Grevlex, &cfg),
            Err(Error::PairBudgetExhausted { budget: 1 })
        );
    }

    #[test]
    fn rational_coefficients() {
        let r = Ring::new(2, Field::Rational);
        let i = Ideal::new(
            r,
            vec![parse_poly("3*x0^2 - 2*x1", r).unwrap(), parse_poly("x0*x1 - 1/2", r).unwrap()],
        )
        .unwrap();
        let g = buchberger(&i, TermOrder::Grevlex, &GroebnerConfig::default()).unwrap();
        assert!(g.audit());
        assert_eq!(staircase_colength(&g), Colength::Finite(3));
    }
}
