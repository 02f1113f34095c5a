//! Stein handlebodies given by Legendrian 2-handle data.
//!
//! A 2-handle attached along a Legendrian knot `K` carries framing
//! `tb(K) - 1`, and the Chern class evaluates on it as `r(K)`. With no
//! 1-handles the linking matrix is the intersection form, which is all that
//! [`analyze`] needs to produce `χ`, `σ`, `det`, `c₁²` and the boundary θ.

#![allow(clippy::needless_range_loop)]

use std::fmt::Write as _;

use num::traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::brieskorn::{BrieskornError, BrieskornTriple, OrientedBrieskorn, Sign};
use crate::front::{FrontDiagram, FrontError, TorusKnotParams};
use crate::linalg::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HandlebodyError {
    #[error("line {line}: cannot parse {text:?}")]
    MalformedToken { line: usize, text: String },
    #[error("handle {index}: framing {framing} differs from tb - 1 = {expected}")]
    FramingMismatch {
        index: usize,
        framing: i64,
        expected: i64,
    },
    #[error("linking matrix is not symmetric at ({i}, {j})")]
    AsymmetricLinking { i: usize, j: usize },
    #[error("handle {index}: rotation number {r} and framing {framing} have different parity")]
    ParityViolation { index: usize, r: i64, framing: i64 },
    #[error("linking matrix has size {rows}, expected {handles}")]
    DimensionMismatch { rows: usize, handles: usize },
    #[error("(p, q, n) = ({p}, {q}, {n}) bounds Σ(2,3,5), which has no negative tight contact structure")]
    ExcludedCase { p: i64, q: i64, n: i64 },
    #[error("the n = 1 nucleus needs 2l - 3 >= 0 zig-zags, got l = {l}")]
    ScheduleInfeasible { l: i64 },
    #[error("n must be positive, got {0}")]
    InvalidMultiplier(i64),
    #[error("value does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error(transparent)]
    Brieskorn(#[from] BrieskornError),
}

impl HandlebodyError {
    pub fn name(&self) -> &'static str {
        match self {
            HandlebodyError::MalformedToken { .. } => "MalformedToken",
            HandlebodyError::FramingMismatch { .. } => "FramingMismatch",
            HandlebodyError::AsymmetricLinking { .. } => "AsymmetricLinking",
            HandlebodyError::ParityViolation { .. } => "ParityViolation",
            HandlebodyError::DimensionMismatch { .. } => "DimensionMismatch",
            HandlebodyError::ExcludedCase { .. } => "ExcludedCase",
            HandlebodyError::ScheduleInfeasible { .. } => "ScheduleInfeasible",
            HandlebodyError::InvalidMultiplier(_) => "InvalidMultiplier",
            HandlebodyError::Overflow => "Overflow",
            HandlebodyError::Front(e) => e.name(),
            HandlebodyError::Brieskorn(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TwoHandle {
    pub tb: i64,
    pub r: i64,
    pub framing: i64,
}

impl TwoHandle {
    /// Handle with the Stein framing `tb - 1`.
    pub fn stein(tb: i64, r: i64) -> Self {
        TwoHandle {
            tb,
            r,
            framing: tb - 1,
        }
    }
}

/// Validated Stein handlebody data: 1-handle count, 2-handles and the
/// symmetric linking matrix whose diagonal holds the framings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinKirbyData {
    one_handles: u64,
    two_handles: Vec<TwoHandle>,
    linking: Vec<Vec<i64>>,
}

impl SteinKirbyData {
    pub fn new(
        one_handles: u64,
        two_handles: Vec<TwoHandle>,
        linking: Vec<Vec<i64>>,
    ) -> Result<Self, HandlebodyError> {
        let k = two_handles.len();
        if linking.len() != k || linking.iter().any(|row| row.len() != k) {
            return Err(HandlebodyError::DimensionMismatch {
                rows: linking.len(),
                handles: k,
            });
        }
        for (index, h) in two_handles.iter().enumerate() {
            if h.framing != h.tb - 1 {
                return Err(HandlebodyError::FramingMismatch {
                    index,
                    framing: h.framing,
                    expected: h.tb - 1,
                });
            }
            if linking[index][index] != h.framing {
                return Err(HandlebodyError::FramingMismatch {
                    index,
                    framing: linking[index][index],
                    expected: h.framing,
                });
            }
        }
        for i in 0..k {
            for j in 0..i {
                if linking[i][j] != linking[j][i] {
                    return Err(HandlebodyError::AsymmetricLinking { i: j, j: i });
                }
            }
        }
        if one_handles == 0 {
            if let Some((index, h)) = two_handles
                .iter()
                .enumerate()
                .find(|(_, h)| (h.r - h.framing).rem_euclid(2) != 0)
            {
                return Err(HandlebodyError::ParityViolation {
                    index,
                    r: h.r,
                    framing: h.framing,
                });
            }
        }
        Ok(SteinKirbyData {
            one_handles,
            two_handles,
            linking,
        })
    }

    /// Builds the matrix from framings and the listed off-diagonal entries.
    pub fn from_links(
        one_handles: u64,
        two_handles: Vec<TwoHandle>,
        links: &[(usize, usize, i64)],
    ) -> Result<Self, HandlebodyError> {
        let k = two_handles.len();
        let mut linking = vec![vec![0; k]; k];
        for (i, h) in two_handles.iter().enumerate() {
            linking[i][i] = h.framing;
        }
        for &(i, j, v) in links {
            linking[i][j] = v;
            linking[j][i] = v;
        }
        SteinKirbyData::new(one_handles, two_handles, linking)
    }

    pub fn one_handles(&self) -> u64 {
        self.one_handles
    }

    pub fn two_handles(&self) -> &[TwoHandle] {
        &self.two_handles
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn rotation_vector(&self) -> Vec<i64> {
        self.two_handles.iter().map(|h| h.r).collect()
    }

    /// `1 - n₁ + n₂`.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.one_handles as i64 + self.two_handles.len() as i64
    }

    /// Same handlebody with 2-handles reordered: handle `i` of the result is
    /// handle `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, HandlebodyError> {
        let handles = perm.iter().map(|&i| self.two_handles[i]).collect();
        let linking = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.linking[i][j]).collect())
            .collect();
        SteinKirbyData::new(self.one_handles, handles, linking)
    }

    /// Kirby file text; reparsing it gives back `self`.
    pub fn to_text(&self) -> String {
        let mut out = format!("1-handles {}\n", self.one_handles);
        for h in &self.two_handles {
            let _ = writeln!(out, "handle tb={} r={} framing={}", h.tb, h.r, h.framing);
        }
        let k = self.two_handles.len();
        for i in 0..k {
            for j in i + 1..k {
                if self.linking[i][j] != 0 {
                    let _ = writeln!(out, "lk {i} {j} {}", self.linking[i][j]);
                }
            }
        }
        out
    }
}

fn parse_keyed(token: &str, key: &str) -> Option<i64> {
    token.strip_prefix(key)?.strip_prefix('=')?.parse().ok()
}

/// Parses the Kirby file format: `1-handles n`, then `handle tb=.. r=..
/// framing=..` lines, then `lk i j v` lines with `i < j`.
pub fn parse_kirby(text: &str) -> Result<SteinKirbyData, HandlebodyError> {
    let mut one_handles = None;
    let mut handles = Vec::new();
    let mut links: Vec<(usize, usize, i64)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = || HandlebodyError::MalformedToken {
            line: n + 1,
            text: raw.to_string(),
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["1-handles", count] if one_handles.is_none() && handles.is_empty() => {
                one_handles = Some(count.parse::<u64>().map_err(|_| malformed())?);
            }
            ["handle", tb, r, framing] if one_handles.is_some() && links.is_empty() => {
                let (Some(tb), Some(r), Some(framing)) = (
                    parse_keyed(tb, "tb"),
                    parse_keyed(r, "r"),
                    parse_keyed(framing, "framing"),
                ) else {
                    return Err(malformed());
                };
                handles.push(TwoHandle { tb, r, framing });
            }
            ["lk", i, j, v] if one_handles.is_some() => {
                let i: usize = i.parse().map_err(|_| malformed())?;
                let j: usize = j.parse().map_err(|_| malformed())?;
                let v: i64 = v.parse().map_err(|_| malformed())?;
                if i == j || i >= handles.len() || j >= handles.len() {
                    return Err(malformed());
                }
                let (a, b) = (i.min(j), i.max(j));
                if let Some(&(_, _, prev)) = links.iter().find(|&&(x, y, _)| (x, y) == (a, b)) {
                    if prev != v {
                        return Err(HandlebodyError::AsymmetricLinking { i: a, j: b });
                    }
                }
                links.push((a, b, v));
            }
            _ => return Err(malformed()),
        }
    }
    let one_handles = one_handles.ok_or(HandlebodyError::MalformedToken {
        line: 0,
        text: "missing `1-handles` line".to_string(),
    })?;
    SteinKirbyData::from_links(one_handles, handles, &links)
}

/// Stein handlebody of a Legendrian link in `S³`: one 2-handle per component.
pub fn from_front(front: &FrontDiagram) -> Result<SteinKirbyData, HandlebodyError> {
    let k = front.component_count();
    let mut handles = Vec::with_capacity(k);
    let mut linking = vec![vec![0; k]; k];
    for i in 0..k {
        let inv = front.invariants(i)?;
        let h = TwoHandle::stein(inv.tb, inv.r);
        linking[i][i] = h.framing;
        handles.push(h);
        for j in 0..i {
            let lk = front.linking_number(i, j)?;
            linking[i][j] = lk;
            linking[j][i] = lk;
        }
    }
    SteinKirbyData::new(0, handles, linking)
}

/// Intersection-form data of a Stein handlebody. Only `chi` is available
/// once 1-handles are present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormAnalysis {
    pub chi: i64,
    pub b2: Option<i64>,
    pub det: Option<i64>,
    pub signature: Option<i64>,
    pub c1_squared: Option<Rational>,
    pub theta_boundary: Option<i64>,
}

pub fn analyze(k: &SteinKirbyData) -> Result<FormAnalysis, HandlebodyError> {
    let chi = k.euler_characteristic();
    let mut out = FormAnalysis {
        chi,
        b2: None,
        det: None,
        signature: None,
        c1_squared: None,
        theta_boundary: None,
    };
    if k.one_handles > 0 {
        return Ok(out);
    }
    let q = k.linking();
    let det = linalg::determinant(q)
        .to_i64()
        .ok_or(HandlebodyError::Overflow)?;
    let signature = linalg::signature(q);
    out.b2 = Some(k.two_handles.len() as i64);
    out.det = Some(det);
    out.signature = Some(signature);
    if det != 0 {
        let c1 = linalg::inverse_form(q, &k.rotation_vector()).expect("nonsingular");
        let c1 = Rational::from_big(&c1).ok_or(HandlebodyError::Overflow)?;
        if det.abs() == 1 {
            let c1 = c1
                .as_integer()
                .expect("unimodular form has integral inverse");
            out.theta_boundary = Some(c1 - 2 * chi - 3 * signature);
        }
        out.c1_squared = Some(c1);
    }
    Ok(out)
}

/// The generalized nucleus `N(p, q, n)`: `T(p,q)` with framing 0 plus a
/// `-n`-framed meridian (for `n = 1`, its blow-down `T(p,q)` with framing 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NucleusData {
    pub kirby: SteinKirbyData,
    pub l: i64,
    pub fiber_genus: i64,
    pub singular_fibers: i64,
    /// Poincaré dual of `c₁(N)` as coefficients of the section and the fiber.
    pub c1_pd: (i64, i64),
    /// `c₁²` of the two-handle nucleus (before any blow-down).
    pub c1_squared: i64,
    /// Boundary of `N`, namely `-Σ(p, q, npq - 1)`.
    pub boundary: OrientedBrieskorn,
    pub blown_down: bool,
}

pub fn nucleus(p: i64, q: i64, n: i64) -> Result<NucleusData, HandlebodyError> {
    let params = TorusKnotParams::new(p, q)?;
    if n < 1 {
        return Err(HandlebodyError::InvalidMultiplier(n));
    }
    if (p, q, n) == (2, 3, 1) {
        return Err(HandlebodyError::ExcludedCase { p, q, n });
    }
    let l = params.l();
    let c1_pd = (2 - 2 * l, 2 + n * (1 - 2 * l));
    let c1_squared = (2 - 2 * l) * (4 - 2 * n * l);
    let boundary = OrientedBrieskorn {
        triple: BrieskornTriple::new(p, q, n * p * q - 1)?,
        sign: Sign::Minus,
    };

    let kirby = if n >= 2 {
        let torus = TwoHandle::stein(1, 2 - 2 * l);
        let meridian = TwoHandle::stein(1 - n, 2 - n);
        let k = SteinKirbyData::from_links(0, vec![torus, meridian], &[(0, 1, 1)])?;
        // The torus handle is the fiber F and the meridian is the section, so
        // the dual class in handle order is (c1_pd.1, c1_pd.0) and Q maps it
        // to the rotation vector.
        let pd = [c1_pd.1, c1_pd.0];
        let q = k.linking();
        let image: Vec<i64> = q
            .iter()
            .map(|row| row[0] * pd[0] + row[1] * pd[1])
            .collect();
        assert_eq!(image, k.rotation_vector());
        assert_eq!(pd[0] * image[0] + pd[1] * image[1], c1_squared);
        k
    } else {
        if 2 * l - 3 < 0 {
            return Err(HandlebodyError::ScheduleInfeasible { l });
        }
        SteinKirbyData::from_links(0, vec![TwoHandle::stein(2, 3 - 2 * l)], &[])?
    };
    Ok(NucleusData {
        kirby,
        l,
        fiber_genus: params.genus(),
        singular_fibers: n * p * q,
        c1_pd,
        c1_squared,
        boundary,
        blown_down: n == 1,
    })
}

/// The Stein homotopy 2-sphere with one 1-handle and two 2-handles along
/// Legendrian Mazur curves with `tb = r = 1`.
///
/// Stored as data only: its Chern class (zero, from the difference of the
/// two rotation numbers) is recorded, not derived. The off-diagonal linking
/// entry is not meaningful with a 1-handle present and is left at 0.
pub fn homotopy_sphere_example() -> (SteinKirbyData, i64) {
    let h = TwoHandle::stein(1, 1);
    let kirby = SteinKirbyData::from_links(1, vec![h, h], &[]).expect("valid data");
    (kirby, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brieskorn::theta_closed_form;
    use crate::front::torus_knot_front;

    #[test]
    fn framing_mismatch_rejected() {
        let ok = parse_kirby("1-handles 0\nhandle tb=1 r=0 framing=0\n").unwrap();
        assert_eq!(ok.linking(), &[vec![0]]);
        let bad = parse_kirby("1-handles 0\nhandle tb=1 r=0 framing=1\n");
        assert!(matches!(
            bad,
            Err(HandlebodyError::FramingMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn parity_and_symmetry() {
        let bad = parse_kirby("1-handles 0\nhandle tb=1 r=1 framing=0\n");
        assert!(matches!(bad, Err(HandlebodyError::ParityViolation { .. })));
        // parity is not enforced with 1-handles
        assert!(parse_kirby("1-handles 1\nhandle tb=1 r=1 framing=0\n").is_ok());
        let asym = "1-handles 0\nhandle tb=1 r=0 framing=0\nhandle tb=1 r=0 framing=0\nlk 0 1 1\nlk 1 0 2\n";
        assert!(matches!(
            parse_kirby(asym),
            Err(HandlebodyError::AsymmetricLinking { .. })
        ));
        let m = vec![vec![0, 1], vec![2, 0]];
        let direct = SteinKirbyData::new(0, vec![TwoHandle::stein(1, 0); 2], m);
        assert!(matches!(
            direct,
            Err(HandlebodyError::AsymmetricLinking { .. })
        ));
    }

    #[test]
    fn malformed_kirby() {
        for text in [
            "handle tb=1 r=0 framing=0",
            "1-handles x",
            "1-handles 0\nhandle tb=1 r=0",
            "1-handles 0\nhandle tb=1 r=0 frame=0",
            "1-handles 0\nhandle tb=1 r=0 framing=0\nlk 0 0 1",
            "1-handles 0\nhandle tb=1 r=0 framing=0\nlk 0 1 1",
            "1-handles 0\n1-handles 0",
            "",
        ] {
            assert!(
                matches!(
                    parse_kirby(text),
                    Err(HandlebodyError::MalformedToken { .. })
                ),
                "{text:?}"
            );
        }
    }

    #[test]
    fn nucleus_round_trip() {
        let n = nucleus(2, 3, 2).unwrap();
        assert_eq!(parse_kirby(&n.kirby.to_text()).unwrap(), n.kirby);
    }

    #[test]
    fn fronts_to_handlebodies() {
        let k = from_front(&torus_knot_front(TorusKnotParams::new(2, 3).unwrap())).unwrap();
        assert_eq!(
            k.two_handles(),
            &[TwoHandle {
                tb: 1,
                r: 0,
                framing: 0
            }]
        );
        assert_eq!(k.linking(), &[vec![0]]);
        let k = from_front(&FrontDiagram::from_word("L 0; R 0").unwrap()).unwrap();
        assert_eq!(
            k.two_handles(),
            &[TwoHandle {
                tb: -1,
                r: 0,
                framing: -2
            }]
        );
        let k = from_front(&FrontDiagram::from_word("L 0; R 0; L 0; R 0").unwrap()).unwrap();
        assert_eq!(k.linking(), &[vec![-2, 0], vec![0, -2]]);
        let hopf =
            from_front(&FrontDiagram::from_word("L 0; L 1; X 0; X 0; R 1; R 0").unwrap()).unwrap();
        assert_eq!(hopf.linking(), &[vec![-2, 1], vec![1, -2]]);
    }

    #[test]
    fn nucleus_2_3_2() {
        let n = nucleus(2, 3, 2).unwrap();
        assert_eq!(
            n.kirby.two_handles(),
            &[
                TwoHandle {
                    tb: 1,
                    r: 0,
                    framing: 0
                },
                TwoHandle {
                    tb: -1,
                    r: 0,
                    framing: -2
                }
            ]
        );
        assert_eq!(
            (n.c1_pd, n.c1_squared, n.fiber_genus, n.singular_fibers),
            ((0, 0), 0, 1, 12)
        );
        let a = analyze(&n.kirby).unwrap();
        assert_eq!(a.chi, 3);
        assert_eq!(a.det, Some(-1));
        assert_eq!(a.signature, Some(0));
        assert_eq!(a.c1_squared, Some(Rational::integer(0)));
        assert_eq!(a.theta_boundary, Some(-6));
        assert_eq!(
            -a.theta_boundary.unwrap(),
            theta_closed_form(2, 3, 2).unwrap()
        );
        assert_eq!(n.boundary.to_string(), "-Sigma(2,3,11)");
    }

    #[test]
    fn nucleus_3_4_2_chern_square() {
        let n = nucleus(3, 4, 2).unwrap();
        assert_eq!(n.c1_squared, 32);
        assert_eq!(
            analyze(&n.kirby).unwrap().c1_squared,
            Some(Rational::integer(32))
        );
    }

    #[test]
    fn blown_down_nucleus() {
        let n = nucleus(3, 4, 1).unwrap();
        assert_eq!(
            n.kirby.two_handles(),
            &[TwoHandle {
                tb: 2,
                r: -3,
                framing: 1
            }]
        );
        assert!(n.blown_down);
        let a = analyze(&n.kirby).unwrap();
        // blowing down the -1 section raises c₁² by one
        assert_eq!(a.c1_squared, Some(Rational::integer(n.c1_squared + 1)));
        assert_eq!(a.theta_boundary, Some(-theta_closed_form(3, 4, 1).unwrap()));
        assert!(matches!(
            nucleus(2, 3, 1),
            Err(HandlebodyError::ExcludedCase { .. })
        ));
        assert!(matches!(nucleus(2, 4, 2), Err(HandlebodyError::Front(_))));
        assert!(matches!(
            nucleus(2, 3, 0),
            Err(HandlebodyError::InvalidMultiplier(0))
        ));
    }

    #[test]
    fn homotopy_sphere_data() {
        let (k, chern) = homotopy_sphere_example();
        let a = analyze(&k).unwrap();
        assert_eq!(a.chi, 2);
        assert_eq!(a.signature, None);
        assert_eq!(chern, 0);
    }

    #[test]
    fn non_unimodular_c1_squared() {
        let k = SteinKirbyData::from_links(
            0,
            vec![TwoHandle::stein(-1, 0), TwoHandle::stein(-2, 1)],
            &[],
        )
        .unwrap();
        // diag(-2, -3), r = (0, 1): c₁² = -1/3, no θ
        let a = analyze(&k).unwrap();
        assert_eq!(a.det, Some(6));
        assert_eq!(a.c1_squared, Some(Rational { num: -1, den: 3 }));
        assert_eq!(a.theta_boundary, None);
    }
}
