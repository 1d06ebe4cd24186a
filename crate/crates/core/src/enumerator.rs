//! Admissible degree types for a given `(d, delta)`.
//!
//! Constraints, with 1-based indices and `h` the tuple length:
//!
//! * (i)   `d_i + d_{h+1-i} > 0`
//! * (ii)  `d_i + d_{h-i} > 0`
//! * (iii) `r_i > 0`, i.e. `d_i <= d + delta - 2`
//! * (iv)  `d_i + d_{h-1-i} > 0`
//!
//! A pairing with shift `k` is checked only for indices where both
//! `i` and `h+k-i` lie in `1..=h`.
//!
//! Search window: entries lie in `[-(d+1), d+1]`. Under (i) and (iii)
//! the smallest entry is `d_1 > -d_h >= -(d + delta - 2)`, so
//! `d_1 >= -(d + delta) + 3` and the window never cuts anything.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmat::{validate_degree_type, DegreeType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Constraint {
    I,
    II,
    III,
    IV,
}

impl Constraint {
    pub const ALL: [Constraint; 4] = [Constraint::I, Constraint::II, Constraint::III, Constraint::IV];

    pub fn label(self) -> &'static str {
        match self {
            Constraint::I => "i",
            Constraint::II => "ii",
            Constraint::III => "iii",
            Constraint::IV => "iv",
        }
    }

    fn shift(self) -> Option<i64> {
        match self {
            Constraint::I => Some(1),
            Constraint::II => Some(0),
            Constraint::IV => Some(-1),
            Constraint::III => None,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

/// Which constraints a tuple satisfies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintFlags {
    pub pairing_k1: bool,
    pub pairing_k0: bool,
    pub positivity_r: bool,
    pub pairing_kminus1: bool,
}

impl ConstraintFlags {
    pub fn holds(&self, c: Constraint) -> bool {
        match c {
            Constraint::I => self.pairing_k1,
            Constraint::II => self.pairing_k0,
            Constraint::III => self.positivity_r,
            Constraint::IV => self.pairing_kminus1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintProfile {
    pub apply_pairing_k1: bool,
    pub apply_pairing_k0: bool,
    pub apply_positivity_r: bool,
    pub apply_pairing_kminus1: bool,
    /// Largest tuple length searched; `None` means `2d`.
    pub h_max: Option<usize>,
}

impl Default for ConstraintProfile {
    /// Profile `{i, iii}`.
    fn default() -> Self {
        ConstraintProfile::from_constraints(&[Constraint::I, Constraint::III])
    }
}

impl ConstraintProfile {
    pub fn from_constraints(cs: &[Constraint]) -> ConstraintProfile {
        ConstraintProfile {
            apply_pairing_k1: cs.contains(&Constraint::I),
            apply_pairing_k0: cs.contains(&Constraint::II),
            apply_positivity_r: cs.contains(&Constraint::III),
            apply_pairing_kminus1: cs.contains(&Constraint::IV),
            h_max: None,
        }
    }

    /// Profile `{i, ii, iii, iv}`: square-free determinant and smooth plane section.
    pub fn smooth_section() -> ConstraintProfile {
        ConstraintProfile::from_constraints(&Constraint::ALL)
    }

    pub fn none() -> ConstraintProfile {
        ConstraintProfile::from_constraints(&[])
    }

    /// `default`, `smooth-section`, `none`, or a comma list such as `i,iii`.
    pub fn parse(text: &str) -> Result<ConstraintProfile> {
        match text.trim() {
            "default" => return Ok(ConstraintProfile::default()),
            "smooth-section" => return Ok(ConstraintProfile::smooth_section()),
            "none" | "" => return Ok(ConstraintProfile::none()),
            _ => {}
        }
        let mut cs = Vec::new();
        for part in text.trim().trim_start_matches('{').trim_end_matches('}').split(',') {
            let part = part.trim().trim_start_matches('(').trim_end_matches(')');
            let c = Constraint::ALL
                .into_iter()
                .find(|c| c.label() == part)
                .ok_or_else(|| Error::InvalidDegreeType(format!("unknown constraint `{part}`")))?;
            cs.push(c);
        }
        Ok(ConstraintProfile::from_constraints(&cs))
    }

    pub fn enabled(&self) -> Vec<Constraint> {
        Constraint::ALL.into_iter().filter(|&c| self.applies(c)).collect()
    }

    pub fn applies(&self, c: Constraint) -> bool {
        match c {
            Constraint::I => self.apply_pairing_k1,
            Constraint::II => self.apply_pairing_k0,
            Constraint::III => self.apply_positivity_r,
            Constraint::IV => self.apply_pairing_kminus1,
        }
    }

    pub fn with_h_max(mut self, h_max: usize) -> ConstraintProfile {
        self.h_max = Some(h_max);
        self
    }

    pub fn h_max_for(&self, d: u32) -> usize {
        self.h_max.unwrap_or(2 * d as usize)
    }
}

impl fmt::Display for ConstraintProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.enabled().into_iter().map(|c| c.label()).collect();
        write!(f, "{{{}}}", labels.join(", "))
    }
}

/// A reason a tuple is not admissible. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Empty,
    Parity { index: usize, value: i64 },
    Sum { sum: i64, expected: i64 },
    NotNondecreasing { index: usize },
    Pairing { constraint: Constraint, i: usize, j: usize, sum: i64 },
    Positivity { index: usize, r: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty tuple"),
            Violation::Parity { index, value } => write!(f, "parity: d_{index} = {value}"),
            Violation::Sum { sum, expected } => write!(f, "sum: {sum} != {expected}"),
            Violation::NotNondecreasing { index } => write!(f, "order: d_{index} < d_{}", index - 1),
            Violation::Pairing { constraint, i, j, sum } => {
                write!(f, "{constraint}: d_{i} + d_{j} = {sum}")
            }
            Violation::Positivity { index, r } => write!(f, "(iii): r_{index} = {r}"),
        }
    }
}

fn pairing_witness(t: &[i64], k: i64) -> Option<(usize, usize, i64)> {
    let h = t.len() as i64;
    (1..=h).find_map(|i| {
        let j = h + k - i;
        if !(1..=h).contains(&j) {
            return None;
        }
        let s = t[(i - 1) as usize] + t[(j - 1) as usize];
        (s <= 0).then_some((i as usize, j as usize, s))
    })
}

fn positivity_witness(d: u32, delta: u8, t: &[i64]) -> Option<(usize, i64)> {
    let base = d as i64 + delta as i64;
    t.iter().enumerate().find_map(|(k, &v)| {
        let r = (base - v).div_euclid(2);
        (r <= 0).then_some((k + 1, r))
    })
}

fn constraint_violation(c: Constraint, d: u32, delta: u8, t: &[i64]) -> Option<Violation> {
    match c.shift() {
        Some(k) => pairing_witness(t, k).map(|(i, j, sum)| Violation::Pairing { constraint: c, i, j, sum }),
        None => positivity_witness(d, delta, t).map(|(index, r)| Violation::Positivity { index, r }),
    }
}

pub fn constraint_flags(d: u32, delta: u8, t: &[i64]) -> ConstraintFlags {
    let ok = |c| constraint_violation(c, d, delta, t).is_none();
    ConstraintFlags {
        pairing_k1: ok(Constraint::I),
        pairing_k0: ok(Constraint::II),
        positivity_r: ok(Constraint::III),
        pairing_kminus1: ok(Constraint::IV),
    }
}

/// Every structural problem plus every violated constraint enabled in `profile`,
/// each with its first witnessing index.
pub fn explain_rejection(d: u32, delta: u8, t: &[i64], profile: &ConstraintProfile) -> Vec<Violation> {
    let mut out = Vec::new();
    if t.is_empty() {
        out.push(Violation::Empty);
        return out;
    }
    let parity = (d as i64 - delta as i64).rem_euclid(2);
    let parity_ok = match t.iter().position(|v| v.rem_euclid(2) != parity) {
        Some(k) => {
            out.push(Violation::Parity { index: k + 1, value: t[k] });
            false
        }
        None => true,
    };
    let sum: i64 = t.iter().sum();
    if sum != d as i64 {
        out.push(Violation::Sum { sum, expected: d as i64 });
    }
    if let Some(k) = (1..t.len()).find(|&k| t[k] < t[k - 1]) {
        out.push(Violation::NotNondecreasing { index: k + 1 });
    }
    // twists are not integers without parity, so the constraints are moot
    if !parity_ok {
        return out;
    }
    for c in profile.enabled() {
        out.extend(constraint_violation(c, d, delta, t));
    }
    out
}

/// All admissible types, sorted by length and then lexicographically.
pub fn enumerate_degree_types(d: u32, delta: u8, profile: &ConstraintProfile) -> Vec<DegreeType> {
    assert!(d >= 1 && delta <= 1, "need d >= 1 and delta in {{0, 1}}");
    let window = d as i64 + 1;
    let parity = (d as i64 - delta as i64).rem_euclid(2);
    let mut lo = -window;
    if lo.rem_euclid(2) != parity {
        lo += 1;
    }
    let mut hi = window;
    if profile.apply_positivity_r {
        hi = hi.min(d as i64 + delta as i64 - 2);
    }
    if hi.rem_euclid(2) != parity {
        hi -= 1;
    }
    let mut out = Vec::new();
    for h in 1..=profile.h_max_for(d) {
        let mut cur = Vec::with_capacity(h);
        extend(&mut cur, h, d as i64, lo, hi, &mut |t: &[i64]| {
            if explain_rejection(d, delta, t, profile).is_empty() {
                out.push(validate_degree_type(d, delta, t).expect("admissible tuples validate"));
            }
        });
    }
    out
}

/// Nondecreasing tuples of length `h` over `lo, lo+2, ..., hi` summing to `target`.
fn extend(cur: &mut Vec<i64>, h: usize, target: i64, lo: i64, hi: i64, emit: &mut dyn FnMut(&[i64])) {
    if cur.len() == h {
        if target == 0 {
            emit(cur);
        }
        return;
    }
    if lo > hi {
        return;
    }
    let left = (h - cur.len()) as i64;
    if target < lo * left || target > hi * left {
        return;
    }
    let mut v = lo;
    while v <= hi {
        cur.push(v);
        extend(cur, h, target - v, v, hi, emit);
        cur.pop();
        v += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuples(d: u32, delta: u8, p: &ConstraintProfile) -> Vec<Vec<i64>> {
        enumerate_degree_types(d, delta, p).into_iter().map(|t| t.tuple().to_vec()).collect()
    }

    #[test]
    fn default_profile_lists() {
        let p = ConstraintProfile::default();
        assert_eq!(tuples(4, 0, &p), vec![vec![2, 2], vec![0, 2, 2], vec![0, 0, 2, 2]]);
        assert_eq!(
            tuples(4, 1, &p),
            vec![vec![1, 3], vec![-1, -1, 3, 3], vec![-1, 1, 1, 3], vec![1, 1, 1, 1]]
        );
        assert_eq!(
            tuples(5, 0, &p),
            vec![vec![-1, 3, 3], vec![1, 1, 3], vec![-1, -1, 1, 3, 3], vec![-1, 1, 1, 1, 3], vec![1, 1, 1, 1, 1]]
        );
    }

    #[test]
    fn smooth_section_lists() {
        let p = ConstraintProfile::smooth_section();
        assert_eq!(tuples(4, 0, &p), vec![vec![2, 2]]);
        assert_eq!(tuples(4, 1, &p), vec![vec![1, 3], vec![1, 1, 1, 1]]);
        assert_eq!(tuples(5, 0, &p), vec![vec![1, 1, 3], vec![1, 1, 1, 1, 1]]);
    }

    #[test]
    fn cubic_includes_linear_type() {
        assert!(tuples(3, 0, &ConstraintProfile::default()).contains(&vec![1, 1, 1]));
    }

    #[test]
    fn rejections() {
        let p = ConstraintProfile::default();
        assert_eq!(explain_rejection(4, 0, &[0, 4], &p), vec![Violation::Positivity { index: 2, r: 0 }]);
        assert!(matches!(explain_rejection(4, 0, &[1, 3], &p)[..], [Violation::Parity { .. }]));
        assert_eq!(explain_rejection(5, 0, &[-1, 1, 5], &p), vec![Violation::Positivity { index: 3, r: 0 }]);
        let all = explain_rejection(5, 0, &[-1, 1, 5], &ConstraintProfile::smooth_section());
        assert_eq!(all.len(), 3);
        assert_eq!(all[0].to_string(), "(ii): d_1 + d_2 = 0");
        assert_eq!(Violation::Positivity { index: 2, r: 0 }.to_string(), "(iii): r_2 = 0");
    }

    #[test]
    fn profile_text() {
        assert_eq!(ConstraintProfile::parse("i,iii").unwrap(), ConstraintProfile::default());
        assert_eq!(ConstraintProfile::parse("smooth-section").unwrap(), ConstraintProfile::smooth_section());
        assert_eq!(ConstraintProfile::default().to_string(), "{i, iii}");
        assert!(ConstraintProfile::parse("v").is_err());
    }

    #[test]
    fn flags_recorded_on_types() {
        let dt = validate_degree_type(5, 0, &[-1, 1, 5]).unwrap();
        let f = dt.constraint_flags();
        assert!(f.pairing_k1 && !f.pairing_k0 && !f.positivity_r && !f.pairing_kminus1);
    }
}
