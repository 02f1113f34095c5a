//! Embedding and filling criteria phrased in terms of `(tb, r)` data.

use serde::Serialize;
use thiserror::Error;

use crate::brieskorn::{self, BrieskornError, BrieskornTriple, OrientedBrieskorn, Sign};
use crate::front::{
    reachable, stabilize_invariants, FrontError, LegendrianInvariants, StabilizationSchedule,
    TorusKnotParams,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("(p, q, pq + ε) = ({p}, {q}, {r}) is excluded")]
    ExcludedCase { p: i64, q: i64, r: i64 },
    #[error("ε must be +1 or -1, got {0}")]
    InvalidEpsilon(i64),
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error(transparent)]
    Brieskorn(#[from] BrieskornError),
}

impl CriteriaError {
    pub fn name(&self) -> &'static str {
        match self {
            CriteriaError::ExcludedCase { .. } => "ExcludedCase",
            CriteriaError::InvalidEpsilon(_) => "InvalidEpsilon",
            CriteriaError::Front(e) => e.name(),
            CriteriaError::Brieskorn(e) => e.name(),
        }
    }
}

/// Embedding of a single 2-handle `B⁴ ∪ h` with framing `n` in the ruled
/// surface `S_m` as a section class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HirzQuery {
    pub known: LegendrianInvariants,
    pub n: i64,
    pub m: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HirzVerdict {
    pub embeddable: bool,
    pub schedule: Option<StabilizationSchedule>,
}

/// Needs `m ≡ n (mod 2)` and a representative with `tb = n + 1`, `r = n + 2`.
/// The orientation of the knot is taken as given.
pub fn hirz_check(query: &HirzQuery) -> HirzVerdict {
    let parity = (query.m as i64 - query.n).rem_euclid(2) == 0;
    let target = LegendrianInvariants::new(query.n + 1, query.n + 2);
    let schedule = if parity {
        reachable(query.known, target)
    } else {
        None
    };
    HirzVerdict {
        embeddable: schedule.is_some(),
        schedule,
    }
}

fn epsilon(eps: i64) -> Result<Sign, CriteriaError> {
    Sign::from_int(eps).ok_or(CriteriaError::InvalidEpsilon(eps))
}

fn check_excluded(params: &TorusKnotParams, sign: Sign) -> Result<(), CriteriaError> {
    let (p, q) = (params.p(), params.q());
    if sign == Sign::Minus && matches!((p, q), (2, 3) | (2, 5)) {
        return Err(CriteriaError::ExcludedCase { p, q, r: p * q - 1 });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbedPlan {
    pub source: LegendrianInvariants,
    pub target: LegendrianInvariants,
    pub framing: i64,
    pub schedule: StabilizationSchedule,
    pub boundary: OrientedBrieskorn,
    /// Intersection forms of the positive and negative regions.
    pub split_forms: (String, String),
}

/// Stabilization of the maximal torus knot front that embeds `Σ(p, q, pq+ε)`
/// in an odd ruled surface: `(l-1, l)` zig-zags to `(0, 1)` for `ε = +1`,
/// `(l-3, l)` zig-zags to `(2, 3)` for `ε = -1`.
pub fn brieskorn_embed_plan(p: i64, q: i64, eps: i64) -> Result<EmbedPlan, CriteriaError> {
    let params = TorusKnotParams::new(p, q)?;
    let sign = epsilon(eps)?;
    check_excluded(&params, sign)?;
    let l = params.l() as u64;
    let source = params.max_tb_invariants();
    let (schedule, target, boundary_sign) = match sign {
        Sign::Plus => (
            StabilizationSchedule::new(l - 1, l),
            LegendrianInvariants::new(0, 1),
            Sign::Plus,
        ),
        Sign::Minus => (
            StabilizationSchedule::new(l - 3, l),
            LegendrianInvariants::new(2, 3),
            Sign::Minus,
        ),
    };
    assert_eq!(stabilize_invariants(source, schedule), target);
    assert_eq!(reachable(source, target), Some(schedule));
    let triple = BrieskornTriple::new(p, q, p * q + eps)?;
    Ok(EmbedPlan {
        source,
        target,
        framing: target.tb - 1,
        schedule,
        boundary: OrientedBrieskorn {
            triple,
            sign: boundary_sign,
        },
        split_forms: ("⟨+1⟩".to_string(), "⟨−1⟩".to_string()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub theta_embed: i64,
    pub theta_milnor: i64,
    pub homotopic: bool,
    pub b2: i64,
    pub b2_mod3: i64,
}

/// θ of the contact structure from the ruled-surface embedding.
pub const THETA_EMBED: i64 = -2;

/// Compares the embedding contact structure on `Σ(p, q, pq+ε)` with the
/// Milnor fiber one.
pub fn prop_theta_check(p: i64, q: i64, eps: i64) -> Result<ThetaReport, CriteriaError> {
    let params = TorusKnotParams::new(p, q)?;
    let sign = epsilon(eps)?;
    check_excluded(&params, sign)?;
    let triple = BrieskornTriple::new(p, q, p * q + eps)?;
    let b2 = triple.b2();
    let theta_milnor = match sign {
        Sign::Minus => brieskorn::theta_closed_form(p, q, 1)?,
        Sign::Plus => brieskorn::milnor_invariants(&triple)?.theta_boundary,
    };
    let report = ThetaReport {
        theta_embed: THETA_EMBED,
        theta_milnor,
        homotopic: theta_milnor == THETA_EMBED,
        b2,
        b2_mod3: b2.rem_euclid(3),
    };
    debug_assert!(!report.homotopic || report.b2_mod3 == 0);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaveVerdict {
    pub feasible: bool,
    pub target: Option<LegendrianInvariants>,
    pub schedule: Option<StabilizationSchedule>,
}

/// Surgery with coefficient `k` on `K'` has a pseudoconcave filling when the
/// mirror reaches `tb = 1 - k` with `±r = tb + 1`. The `+` sign is tried
/// first.
pub fn cave_check(mirror: LegendrianInvariants, k: i64) -> CaveVerdict {
    let tb = 1 - k;
    [
        LegendrianInvariants::new(tb, tb + 1),
        LegendrianInvariants::new(tb, -(tb + 1)),
    ]
    .into_iter()
    .find_map(|target| reachable(mirror, target).map(|s| (target, s)))
    .map_or(
        CaveVerdict {
            feasible: false,
            target: None,
            schedule: None,
        },
        |(target, s)| CaveVerdict {
            feasible: true,
            target: Some(target),
            schedule: Some(s),
        },
    )
}

/// Whether `tb₁`, `tb₂` can belong to Legendrian representatives of a knot
/// and its mirror.
pub fn mirror_pair_check(tb1: i64, tb2: i64) -> bool {
    tb1 + tb2 <= -2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FlipVerdict {
    pub feasible: bool,
    /// Net number of up-to-down flips; negative means down-to-up.
    pub flips: Option<i64>,
}

/// Flipping an up zig-zag to a down one raises `r` by 2 and vice versa.
pub fn flip_reach(r0: i64, up: u64, down: u64, target: i64) -> FlipVerdict {
    let delta = target - r0;
    let feasible = delta % 2 == 0 && -2 * (down as i64) <= delta && delta <= 2 * (up as i64);
    FlipVerdict {
        feasible,
        flips: feasible.then_some(delta / 2),
    }
}

/// Slice-genus bound `tb + |r| <= 2g - 1`.
pub fn slice_genus_check(inv: LegendrianInvariants, genus: u64) -> bool {
    inv.tb + inv.r.abs() < 2 * genus as i64
}
