//! Brieskorn homology spheres and their Milnor fibers.
//!
//! Everything here is integer arithmetic. The signature of the Milnor fiber
//! is computed by Brieskorn's lattice-point count; the closed forms for the
//! `(p, q, npq - 1)` family are kept separate so the two can be compared.

use std::fmt;

use num::integer::gcd;
use serde::Serialize;
use thiserror::Error;

use crate::front::{FrontError, TorusKnotParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrieskornError {
    #[error("invalid Brieskorn triple ({0}, {1}, {2}): need entries >= 2, pairwise coprime")]
    InvalidTriple(i64, i64, i64),
    #[error(transparent)]
    InvalidParams(#[from] FrontError),
    #[error("n must be positive, got {0}")]
    InvalidMultiplier(i64),
    #[error("third multiplicity {0} is below 2")]
    DegenerateThirdMultiplicity(i64),
    #[error("lattice point {point:?} has integral weighted sum")]
    InternalIntegralSum { point: [i64; 3] },
    #[error("closed form {value} is not divisible by {divisor}")]
    NonIntegralResult { value: i64, divisor: i64 },
    #[error("arithmetic overflow for triple ({0}, {1}, {2})")]
    Overflow(i64, i64, i64),
    #[error("lattice {quantity} = {lattice} disagrees with closed form {closed}")]
    ClosedFormMismatch {
        quantity: &'static str,
        lattice: i64,
        closed: i64,
    },
}

impl BrieskornError {
    pub fn name(&self) -> &'static str {
        match self {
            BrieskornError::InvalidTriple(..) => "InvalidTriple",
            BrieskornError::InvalidParams(e) => e.name(),
            BrieskornError::InvalidMultiplier(_) => "InvalidMultiplier",
            BrieskornError::DegenerateThirdMultiplicity(_) => "DegenerateThirdMultiplicity",
            BrieskornError::InternalIntegralSum { .. } => "InternalIntegralSum",
            BrieskornError::NonIntegralResult { .. } => "NonIntegralResult",
            BrieskornError::Overflow(..) => "Overflow",
            BrieskornError::ClosedFormMismatch { .. } => "ClosedFormMismatch",
        }
    }
}

/// Pairwise coprime multiplicities `(p1, p2, p3)`, each at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "[i64; 3]")]
pub struct BrieskornTriple([i64; 3]);

impl From<BrieskornTriple> for [i64; 3] {
    fn from(t: BrieskornTriple) -> Self {
        t.0
    }
}

impl BrieskornTriple {
    pub fn new(p1: i64, p2: i64, p3: i64) -> Result<Self, BrieskornError> {
        let ps = [p1, p2, p3];
        let coprime = gcd(p1, p2) == 1 && gcd(p1, p3) == 1 && gcd(p2, p3) == 1;
        if ps.iter().any(|&p| p < 2) || !coprime {
            return Err(BrieskornError::InvalidTriple(p1, p2, p3));
        }
        // keep every p_i * p_j * x_k sum comfortably inside i64
        let bounded = p1
            .checked_mul(p2)
            .and_then(|x| x.checked_mul(p3))
            .and_then(|x| x.checked_mul(4))
            .is_some();
        if !bounded {
            return Err(BrieskornError::Overflow(p1, p2, p3));
        }
        Ok(BrieskornTriple(ps))
    }

    pub fn entries(&self) -> [i64; 3] {
        self.0
    }

    pub fn sorted(&self) -> BrieskornTriple {
        let mut ps = self.0;
        ps.sort_unstable();
        BrieskornTriple(ps)
    }

    pub fn product(&self) -> i64 {
        self.0.iter().product()
    }

    /// `(p1 - 1)(p2 - 1)(p3 - 1)`.
    pub fn b2(&self) -> i64 {
        self.0.iter().map(|p| p - 1).product()
    }
}

impl fmt::Display for BrieskornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "Sigma({a},{b},{c})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A Brieskorn sphere with an explicit orientation; `Plus` is the canonical
/// orientation as the link of the singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrientedBrieskorn {
    pub triple: BrieskornTriple,
    pub sign: Sign,
}

impl OrientedBrieskorn {
    pub fn reversed(self) -> Self {
        OrientedBrieskorn {
            triple: self.triple,
            sign: self.sign.flip(),
        }
    }
}

impl fmt::Display for OrientedBrieskorn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign, self.triple)
    }
}

/// Unnormalized Seifert invariants with `q1 p2 p3 + p1 q2 p3 + p1 p2 q3 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertData {
    pub q1: i64,
    pub q2: i64,
    pub q3: i64,
}

impl SeifertData {
    pub fn weighted_sum(&self, t: &BrieskornTriple) -> i64 {
        let [p1, p2, p3] = t.entries();
        self.q1 * p2 * p3 + p1 * self.q2 * p3 + p1 * p2 * self.q3
    }
}

/// Ordering used to pick a canonical solution: smallest `|q1|`, positive
/// `q1` before negative, then the same for `q2` and `q3`.
pub fn seifert_key(q: [i64; 3]) -> [(i64, bool); 3] {
    q.map(|x| (x.abs(), x < 0))
}

/// Residues of `x mod m` with the smallest absolute value (one or two of them).
fn small_residues(x: i64, m: i64) -> Vec<i64> {
    let r = x.rem_euclid(m);
    if r == 0 {
        vec![0]
    } else if 2 * r == m {
        vec![r, r - m]
    } else if 2 * r < m {
        vec![r]
    } else {
        vec![r - m]
    }
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = num::integer::Integer::extended_gcd(&a.rem_euclid(m), &m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

pub fn seifert_data(t: &BrieskornTriple) -> SeifertData {
    let [p1, p2, p3] = t.entries();
    let mut best: Option<[i64; 3]> = None;
    // q1 p2 p3 ≡ 1 (mod p1)
    for q1 in small_residues(mod_inverse(p2 * p3, p1), p1) {
        let rest = 1 - q1 * p2 * p3;
        debug_assert_eq!(rest % p1, 0);
        // q2 p3 + q3 p2 = m, so q2 p3 ≡ m (mod p2)
        let m = rest / p1;
        for q2 in small_residues(m.rem_euclid(p2) * mod_inverse(p3, p2), p2) {
            let q3 = (m - q2 * p3) / p2;
            let cand = [q1, q2, q3];
            if best.is_none_or(|b| seifert_key(cand) < seifert_key(b)) {
                best = Some(cand);
            }
        }
    }
    let [q1, q2, q3] = best.expect("coprime triple always has Seifert data");
    let data = SeifertData { q1, q2, q3 };
    assert_eq!(data.weighted_sum(t), 1);
    data
}

/// `±1/n` surgery on the right-handed torus knot `T(p,q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurgeryDescription {
    pub knot: TorusKnotParams,
    pub n: i64,
    pub sign: Sign,
}

impl SurgeryDescription {
    pub fn new(p: i64, q: i64, n: i64, sign: Sign) -> Result<Self, BrieskornError> {
        let knot = TorusKnotParams::new(p, q)?;
        if n < 1 {
            return Err(BrieskornError::InvalidMultiplier(n));
        }
        Ok(SurgeryDescription { knot, n, sign })
    }
}

/// `+1/n` surgery gives `-Σ(p,q,npq-1)`, `-1/n` surgery gives `+Σ(p,q,npq+1)`.
pub fn surgery_to_brieskorn(s: &SurgeryDescription) -> Result<OrientedBrieskorn, BrieskornError> {
    let (p, q) = (s.knot.p(), s.knot.q());
    let third = s.n * p * q - s.sign.value();
    if third < 2 {
        return Err(BrieskornError::DegenerateThirdMultiplicity(third));
    }
    Ok(OrientedBrieskorn {
        triple: BrieskornTriple::new(p, q, third)?,
        sign: s.sign.flip(),
    })
}

/// Brieskorn's signed lattice-point count for the signature of the Milnor
/// fiber.
///
/// Over `0 < x_i < p_i`, with `T = x1 p2 p3 + x2 p1 p3 + x3 p1 p2` and
/// `A = p1 p2 p3`, points with `T/A` in `(0,1)` or `(2,3)` count `+1` and
/// points with `T/A` in `(1,2)` count `-1`.
pub fn sigma_lattice(t: &BrieskornTriple) -> Result<i64, BrieskornError> {
    let [p1, p2, p3] = t.entries();
    let a = t.product();
    let (w1, w2, w3) = (p2 * p3, p1 * p3, p1 * p2);
    let mut sigma = 0i64;
    for x1 in 1..p1 {
        for x2 in 1..p2 {
            let base = x1 * w1 + x2 * w2;
            for x3 in 1..p3 {
                let total = base + x3 * w3;
                if total % a == 0 {
                    return Err(BrieskornError::InternalIntegralSum {
                        point: [x1, x2, x3],
                    });
                }
                if total > a && total < 2 * a {
                    sigma -= 1;
                } else {
                    sigma += 1;
                }
            }
        }
    }
    Ok(sigma)
}

fn family_params(p: i64, q: i64, n: i64) -> Result<TorusKnotParams, BrieskornError> {
    let params = TorusKnotParams::new(p, q)?;
    if n < 1 {
        return Err(BrieskornError::InvalidMultiplier(n));
    }
    Ok(params)
}

/// Signature of the `(p, q, npq - 1)` Milnor fiber: `-n(p²-1)(q²-1)/3`.
pub fn sigma_closed_form(p: i64, q: i64, n: i64) -> Result<i64, BrieskornError> {
    family_params(p, q, n)?;
    let value = -n * (p * p - 1) * (q * q - 1);
    if value % 3 != 0 {
        return Err(BrieskornError::NonIntegralResult { value, divisor: 3 });
    }
    Ok(value / 3)
}

/// θ of `∂Φ(p, q, npq - 1)`: `(p-1)(q-1)(4 - n(pq-p-q-1)) - 2`.
pub fn theta_closed_form(p: i64, q: i64, n: i64) -> Result<i64, BrieskornError> {
    family_params(p, q, n)?;
    Ok((p - 1) * (q - 1) * (4 - n * (p * q - p - q - 1)) - 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MilnorInvariants {
    pub b2: i64,
    pub chi: i64,
    pub sigma: i64,
    pub theta_boundary: i64,
    pub c1: i64,
}

/// If some entry equals `n * (product of the other two) - 1`, returns the
/// remaining pair (sorted) and `n`.
pub fn family_member(t: &BrieskornTriple) -> Option<(i64, i64, i64)> {
    let ps = t.entries();
    (0..3).find_map(|k| {
        let third = ps[k];
        let mut pair = [ps[(k + 1) % 3], ps[(k + 2) % 3]];
        pair.sort_unstable();
        let pq = pair[0] * pair[1];
        ((third + 1) % pq == 0).then(|| (pair[0], pair[1], (third + 1) / pq))
    })
}

/// Euler characteristic, signature and boundary θ of the Milnor fiber.
///
/// For members of the `(p, q, npq - 1)` family the lattice count is checked
/// against both closed forms.
pub fn milnor_invariants(t: &BrieskornTriple) -> Result<MilnorInvariants, BrieskornError> {
    let b2 = t.b2();
    let chi = b2 + 1;
    let sigma = sigma_lattice(t)?;
    let theta_boundary = -2 * chi - 3 * sigma;
    if let Some((p, q, n)) = family_member(t) {
        let closed = sigma_closed_form(p, q, n)?;
        if closed != sigma {
            return Err(BrieskornError::ClosedFormMismatch {
                quantity: "sigma",
                lattice: sigma,
                closed,
            });
        }
        let closed = theta_closed_form(p, q, n)?;
        if closed != theta_boundary {
            return Err(BrieskornError::ClosedFormMismatch {
                quantity: "theta",
                lattice: theta_boundary,
                closed,
            });
        }
    }
    Ok(MilnorInvariants {
        b2,
        chi,
        sigma,
        theta_boundary,
        c1: 0,
    })
}

/// Sorted, deduplicated triples from the families `Σ(p, np+ε, np+2ε)` with
/// `p` odd, `Σ(p, np-1, np+1)` with `p` even and `n` odd, plus `Σ(2,3,13)`.
pub fn casson_harer_families(p_max: i64, n_max: i64) -> Vec<BrieskornTriple> {
    let mut out = vec![BrieskornTriple::new(2, 3, 13).expect("valid")];
    for p in 2..=p_max {
        for n in 1..=n_max {
            let mut candidates = Vec::new();
            if p % 2 == 1 {
                for eps in [1, -1] {
                    candidates.push((p, n * p + eps, n * p + 2 * eps));
                }
            } else if n % 2 == 1 {
                candidates.push((p, n * p - 1, n * p + 1));
            }
            out.extend(
                candidates
                    .into_iter()
                    .filter_map(|(a, b, c)| BrieskornTriple::new(a, b, c).ok())
                    .map(|t| t.sorted()),
            );
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}
