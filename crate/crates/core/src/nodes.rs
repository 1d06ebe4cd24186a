//! Singular loci of determinantal surfaces.
//!
//! Nodes are counted as the colength of the affine Jacobian scheme after a
//! generic linear change of coordinates, in the chart `x3 = 1`. Working in
//! the chart discards everything on `x3 = 0`, which is the saturation with
//! respect to `x3`; the change of coordinates makes that hyperplane miss the
//! singular points, and a second independent change audits this.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, radical_membership, squarefree_certificate, staircase_colength, Colength, GroebnerBasis,
    GroebnerConfig, Ideal,
};
use crate::linalg::{self, Matrix};
use crate::poly::{Field, Polynomial, Ring, Scalar, TermOrder};
use crate::rng::SeededRng;
use crate::symmat::{minors_ideal_generators, SurfaceSpec, SymmetricFormMatrix, AMBIENT_VARS};

/// Variable set to 1 after the coordinate change.
pub const CHART: usize = 3;

/// Largest prime for which rational points are enumerated exhaustively.
pub const MAX_ENUMERATION_PRIME: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartReport {
    /// Seed of the coordinate change used for this chart.
    pub seed: u64,
    pub colength: usize,
    pub basis_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub t: usize,
    pub reduced_certified: bool,
    pub rank_drop_consistent: Option<bool>,
    #[serde(rename = "per_chart")]
    pub charts: Vec<ChartReport>,
    #[serde(rename = "coordinate_change_seed")]
    pub seed: u64,
}

impl NodeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// `(f, df/dx0, ..., df/dx3)` in the ring of the surface.
pub fn singular_ideal(s: &SurfaceSpec) -> Ideal {
    let mut gens = vec![s.f.clone()];
    gens.extend(s.f.gradient());
    Ideal::new(s.ring(), gens).expect("same ring")
}

/// Seeds of the two coordinate changes derived from a report seed.
pub fn chart_seeds(seed: u64) -> [u64; 2] {
    let mut rng = SeededRng::new(seed);
    [rng.next_u64(), rng.next_u64()]
}

/// The random invertible change of coordinates for a chart seed.
pub fn coordinate_change(field: Field, chart_seed: u64) -> Matrix {
    SeededRng::new(chart_seed).invertible_matrix(field, AMBIENT_VARS)
}

/// Applies `x -> A x` and sets `x3 = 1`.
pub fn to_chart(p: &Polynomial, a: &Matrix) -> Result<Polynomial> {
    p.linear_change(a)?.dehomogenize(CHART)
}

/// Singular ideal of `s` moved by `a` into the affine chart.
pub fn affine_singular_ideal(s: &SurfaceSpec, a: &Matrix) -> Result<Ideal> {
    let gens = singular_ideal(s)
        .generators()
        .iter()
        .map(|g| to_chart(g, a))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(s.ring().with_nvars(AMBIENT_VARS - 1), gens)
}

fn chart_basis(s: &SurfaceSpec, chart_seed: u64, cfg: &GroebnerConfig) -> Result<(GroebnerBasis, ChartReport)> {
    let a = coordinate_change(s.ring().field(), chart_seed);
    let ideal = affine_singular_ideal(s, &a)?;
    let g = buchberger(&ideal, TermOrder::Grevlex, cfg)?;
    let colength = match staircase_colength(&g) {
        Colength::Finite(n) => n,
        Colength::Infinite => return Err(Error::InfiniteColength),
    };
    let report = ChartReport { seed: chart_seed, colength, basis_size: g.elements().len() };
    Ok((g, report))
}

/// Counts singular points with multiplicity in two independent generic
/// charts and certifies that the count is a count of ordinary nodes.
pub fn count_nodes(s: &SurfaceSpec, seed: u64, cfg: &GroebnerConfig) -> Result<NodeReport> {
    let [s1, s2] = chart_seeds(seed);
    let (first, second) = rayon::join(|| chart_basis(s, s1, cfg), || chart_basis(s, s2, cfg));
    let (g, c1) = first?;
    let (_, c2) = second?;
    if c1.colength != c2.colength {
        return Err(Error::ChartDisagreement { first: c1.colength, second: c2.colength });
    }
    let reduced_certified = c1.colength == 0 || squarefree_certificate(&g, seed)?;
    Ok(NodeReport { t: c1.colength, reduced_certified, rank_drop_consistent: None, charts: vec![c1, c2], seed })
}

/// Whether the node scheme is the locus where `M` drops rank by two: in the
/// first chart of `report`, the `(h-1)`-minors have colength `t` and every
/// Jacobian generator and every minor lie in each other's radical.
///
/// Membership is first tried in the ideal itself and only then in the radical.
pub fn rank_drop_check(m: &SymmetricFormMatrix, report: &NodeReport, cfg: &GroebnerConfig) -> Result<bool> {
    let h = m.h();
    if h < 2 {
        return Ok(report.t == 0);
    }
    let s = crate::symmat::determinant(m)?;
    let a = coordinate_change(s.ring().field(), report.charts[0].seed);
    let jac = affine_singular_ideal(&s, &a)?;
    let minors: Vec<Polynomial> = minors_ideal_generators(m, h - 1)
        .iter()
        .map(|q| to_chart(q, &a))
        .collect::<Result<_>>()?;
    let minors = Ideal::new(jac.ring(), minors)?;
    let (gj, gm) = rayon::join(
        || buchberger(&jac, TermOrder::Grevlex, cfg),
        || buchberger(&minors, TermOrder::Grevlex, cfg),
    );
    let (gj, gm) = (gj?, gm?);
    if staircase_colength(&gm) != Colength::Finite(report.t) {
        return Ok(false);
    }
    Ok(contained_in_radical(&jac, &minors, &gm, cfg)? && contained_in_radical(&minors, &jac, &gj, cfg)?)
}

fn contained_in_radical(from: &Ideal, into: &Ideal, basis: &GroebnerBasis, cfg: &GroebnerConfig) -> Result<bool> {
    for f in from.generators() {
        if !basis.contains(f)? && !radical_membership(f, into, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point of projective 3-space scaled so its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointP3 {
    coords: Vec<Scalar>,
}

impl PointP3 {
    pub fn new(coords: Vec<Scalar>) -> Result<PointP3> {
        if coords.len() != AMBIENT_VARS {
            return Err(Error::InvalidMatrix(format!("a point needs {AMBIENT_VARS} coordinates")));
        }
        let last = coords.iter().rposition(|c| !c.is_zero()).ok_or_else(|| {
            Error::InvalidMatrix("all coordinates vanish".into())
        })?;
        let inv = coords[last].inv().expect("nonzero");
        Ok(PointP3 { coords: coords.iter().map(|c| c * &inv).collect() })
    }

    pub fn from_i64(field: Field, coords: [i64; 4]) -> Result<PointP3> {
        PointP3::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart(&self) -> usize {
        self.coords.iter().rposition(|c| !c.is_zero()).expect("nonzero point")
    }
}

impl fmt::Display for PointP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HessianRank {
    /// Rank of the 4x4 matrix of second partials.
    pub projective: usize,
    /// Rank of the 3x3 Hessian of the dehomogenization at the point's chart.
    pub affine: usize,
}

impl HessianRank {
    /// A singular point with full-rank affine Hessian is an ordinary node.
    pub fn is_node(&self) -> bool {
        self.affine == AMBIENT_VARS - 1
    }
}

fn hessian_at(f: &Polynomial, point: &[Scalar]) -> Result<Matrix> {
    let n = f.ring().nvars();
    let first: Vec<Polynomial> = (0..n).map(|i| f.partial_derivative(i)).collect::<Result<_>>()?;
    (0..n)
        .map(|i| (0..n).map(|j| Ok(first[i].partial_derivative(j)?.eval(point))).collect())
        .collect()
}

/// Hessian ranks of `f` at a point of the surface. In characteristic `p`
/// the criterion is only meaningful when `p` does not divide `d - 1` and
/// `p > 2`; at smooth points the ranks are informational.
pub fn hessian_rank_at_point(s: &SurfaceSpec, point: &PointP3) -> Result<HessianRank> {
    let field = s.ring().field();
    if point.coords.iter().any(|c| c.field() != field) {
        return Err(Error::ContextMismatch("point over a different field".into()));
    }
    if !s.f.eval(&point.coords).is_zero() {
        return Err(Error::NotOnSurface);
    }
    let projective = linalg::rank(field, &hessian_at(&s.f, &point.coords)?);
    let chart = point.chart();
    let g = s.f.dehomogenize(chart)?;
    let affine_point: Vec<Scalar> =
        point.coords.iter().enumerate().filter(|&(i, _)| i != chart).map(|(_, c)| c.clone()).collect();
    let affine = linalg::rank(field, &hessian_at(&g, &affine_point)?);
    Ok(HessianRank { projective, affine })
}

/// Every `F_p`-rational point where `f` and its gradient vanish.
pub fn enumerate_rational_singular_points(s: &SurfaceSpec) -> Result<Vec<PointP3>> {
    let field = s.ring().field();
    let p = match field {
        Field::Prime(p) if p <= MAX_ENUMERATION_PRIME => p,
        Field::Prime(p) => {
            return Err(Error::FieldTooLarge(format!("exhaustive search needs p <= {MAX_ENUMERATION_PRIME}, got {p}")))
        }
        Field::Rational => return Err(Error::FieldTooLarge("exhaustive search needs a finite field".into())),
    };
    let gens = singular_ideal(s).generators().to_vec();
    let mut out = Vec::new();
    for last in 0..AMBIENT_VARS {
        let free = last as u32;
        for code in 0..(p as u64).pow(free) {
            let mut coords = vec![field.zero(); AMBIENT_VARS];
            let mut rest = code;
            for c in coords.iter_mut().take(last) {
                *c = field.from_u64(rest % p as u64);
                rest /= p as u64;
            }
            coords[last] = field.one();
            if gens.iter().all(|g| g.eval(&coords).is_zero()) {
                out.push(PointP3 { coords });
            }
        }
    }
    Ok(out)
}

/// Convenience: the surface ring for a field.
pub fn ambient_ring(field: Field) -> Ring {
    Ring::new(AMBIENT_VARS, field)
}
