//! Search for a 16-nodal quartic in the family
//!
//! ```text
//! x0^4 + x1^4 + x2^4 + x3^4 + A (x0^2 x1^2 + x2^2 x3^2) + B (x0^2 x2^2 + x1^2 x3^2)
//!      + C (x0^2 x3^2 + x1^2 x2^2) + D x0 x1 x2 x3
//! ```
//!
//! over `F_p`. `A, B, C` are drawn from the seeded generator and `D` solves
//! `D^2 = 4 (A^2 + B^2 + C^2 - ABC - 4)`; draws where the right-hand side is
//! not a square are skipped. Each candidate is accepted only when its node
//! report certifies `t = 16`.

use nodal_core::groebner::GroebnerConfig;
use nodal_core::nodes::{ambient_ring, count_nodes, NodeReport};
use nodal_core::poly::{Field, Monomial, Polynomial, Scalar};
use nodal_core::rng::SeededRng;
use nodal_core::symmat::SurfaceSpec;
use nodal_core::{Error, Result};
use serde::{Deserialize, Serialize};

pub const KUMMER_NODES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerParameters {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerHit {
    pub surface: SurfaceSpec,
    pub report: NodeReport,
    pub parameters: KummerParameters,
    /// Draws consumed, including the successful one.
    pub attempts: usize,
}

/// Square root in `F_p` by Tonelli-Shanks, `None` for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    if pow(a, (p - 1) / 2) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow(z, (p - 1) / 2) == p - 1).expect("odd prime has a non-residue");
    let (mut m, mut c, mut t, mut r) = (s, pow(z, q), pow(a, q), pow(a, q.div_ceil(2)));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow(c, 1 << (m - i - 1));
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

/// The family member with the given parameters.
pub fn kummer_quartic(field: Field, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Polynomial {
    let ring = ambient_ring(field);
    let mono = |e: [u32; 4]| Monomial::from_exponents(&e);
    let one = field.one();
    let terms = vec![
        (mono([4, 0, 0, 0]), one.clone()),
        (mono([0, 4, 0, 0]), one.clone()),
        (mono([0, 0, 4, 0]), one.clone()),
        (mono([0, 0, 0, 4]), one),
        (mono([2, 2, 0, 0]), a.clone()),
        (mono([0, 0, 2, 2]), a.clone()),
        (mono([2, 0, 2, 0]), b.clone()),
        (mono([0, 2, 0, 2]), b.clone()),
        (mono([2, 0, 0, 2]), c.clone()),
        (mono([0, 2, 2, 0]), c.clone()),
        (mono([1, 1, 1, 1]), d.clone()),
    ];
    Polynomial::from_terms(ring, terms)
}

/// Tries up to `budget` parameter draws; `Ok(None)` when nothing certified turns up.
pub fn kummer_search(p: u32, budget: usize, seed: u64, cfg: &GroebnerConfig) -> Result<Option<KummerHit>> {
    let field = Field::prime(p)?;
    if (p as usize) <= KUMMER_NODES {
        return Err(Error::FieldTooSmall { characteristic: p, colength: KUMMER_NODES });
    }
    let mut rng = SeededRng::new(seed);
    for attempt in 1..=budget {
        let (a, b, c) = (rng.scalar(field), rng.scalar(field), rng.scalar(field));
        let report_seed = rng.next_u64();
        let four = field.from_i64(4);
        let sum = &(&(&a * &a) + &(&b * &b)) + &(&c * &c);
        let rhs = &(&(&sum - &(&(&a * &b) * &c)) - &four) * &four;
        let Some(root) = sqrt_mod(rhs.residue_value().expect("prime field") as u64, p as u64) else {
            continue;
        };
        let d = field.from_u64(root);
        let f = kummer_quartic(field, &a, &b, &c, &d);
        let Ok(surface) = SurfaceSpec::new(f, format!("kummer-search p={p} seed={seed} attempt={attempt}")) else {
            continue;
        };
        let report = match count_nodes(&surface, report_seed, cfg) {
            Ok(r) => r,
            Err(Error::InfiniteColength | Error::ChartDisagreement { .. }) => continue,
            Err(e) => return Err(e),
        };
        if report.t == KUMMER_NODES && report.reduced_certified {
            let parameters =
                KummerParameters { a: a.to_string(), b: b.to_string(), c: c.to_string(), d: d.to_string() };
            return Ok(Some(KummerHit { surface, report, parameters, attempts: attempt }));
        }
    }
    Ok(None)
}
