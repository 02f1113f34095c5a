//! Legendrian fronts encoded as Morse event words.
//!
//! A front is scanned left to right. Each event acts on the current stack of
//! strands (position 0 is the topmost): a left cusp inserts two strands, a
//! right cusp merges two adjacent strands, and a crossing swaps two adjacent
//! strands. Since crossings in a front are resolved by slope, the word alone
//! determines the Legendrian link.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontError {
    #[error("line {line}: cannot parse {text:?}")]
    MalformedToken { line: usize, text: String },
    #[error("event {index} ({event}) is out of range with {strands} strands")]
    InvalidPosition {
        index: usize,
        event: FrontEvent,
        strands: usize,
    },
    #[error("diagram ends with {strands} open strands")]
    UnbalancedDiagram { strands: usize },
    #[error("diagram has no events")]
    EmptyDiagram,
    #[error("component {index} out of range, diagram has {count}")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("linking number needs two distinct components, got {0} twice")]
    SameComponent(usize),
    #[error("signed crossing count {count} between components {first} and {second} is odd")]
    OddInterCrossingCount {
        first: usize,
        second: usize,
        count: i64,
    },
    #[error("no strand of component {component} passes just before event {at}")]
    InvalidInsertionPoint { component: usize, at: usize },
    #[error("invalid torus knot parameters ({p}, {q}): need 2 <= p < q and gcd(p, q) = 1")]
    InvalidParams { p: i64, q: i64 },
}

impl FrontError {
    /// Variant name, used by the command line for typed error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            FrontError::MalformedToken { .. } => "MalformedToken",
            FrontError::InvalidPosition { .. } => "InvalidPosition",
            FrontError::UnbalancedDiagram { .. } => "UnbalancedDiagram",
            FrontError::EmptyDiagram => "EmptyDiagram",
            FrontError::ComponentOutOfRange { .. } => "ComponentOutOfRange",
            FrontError::SameComponent(_) => "SameComponent",
            FrontError::OddInterCrossingCount { .. } => "OddInterCrossingCount",
            FrontError::InvalidInsertionPoint { .. } => "InvalidInsertionPoint",
            FrontError::InvalidParams { .. } => "InvalidParams",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EventKind {
    LeftCusp,
    RightCusp,
    Crossing,
}

impl EventKind {
    fn token(self) -> &'static str {
        match self {
            EventKind::LeftCusp => "L",
            EventKind::RightCusp => "R",
            EventKind::Crossing => "X",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FrontEvent {
    pub kind: EventKind,
    pub position: usize,
}

impl FrontEvent {
    pub fn left(position: usize) -> Self {
        FrontEvent {
            kind: EventKind::LeftCusp,
            position,
        }
    }

    pub fn right(position: usize) -> Self {
        FrontEvent {
            kind: EventKind::RightCusp,
            position,
        }
    }

    pub fn crossing(position: usize) -> Self {
        FrontEvent {
            kind: EventKind::Crossing,
            position,
        }
    }
}

impl fmt::Display for FrontEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.token(), self.position)
    }
}

/// Thurston-Bennequin invariant and rotation number of an oriented component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LegendrianInvariants {
    pub tb: i64,
    pub r: i64,
}

impl LegendrianInvariants {
    pub const fn new(tb: i64, r: i64) -> Self {
        LegendrianInvariants { tb, r }
    }

    pub fn reversed(self) -> Self {
        LegendrianInvariants {
            tb: self.tb,
            r: -self.r,
        }
    }
}

impl fmt::Display for LegendrianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tb={} r={}", self.tb, self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZigZag {
    /// Two upward cusps; lowers r by one.
    Up,
    /// Two downward cusps; raises r by one.
    Down,
}

impl FromStr for ZigZag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "up" => Ok(ZigZag::Up),
            "down" => Ok(ZigZag::Down),
            other => Err(format!("expected `up` or `down`, got `{other}`")),
        }
    }
}

/// Number of upward and downward zig-zags added to a front.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct StabilizationSchedule {
    pub up: u64,
    pub down: u64,
}

impl StabilizationSchedule {
    pub const fn new(up: u64, down: u64) -> Self {
        StabilizationSchedule { up, down }
    }
}

impl Add for StabilizationSchedule {
    type Output = StabilizationSchedule;

    fn add(self, rhs: Self) -> Self {
        StabilizationSchedule {
            up: self.up + rhs.up,
            down: self.down + rhs.down,
        }
    }
}

impl fmt::Display for StabilizationSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "up={} down={}", self.up, self.down)
    }
}

/// Effect of a zig-zag schedule on the invariants: `(tb - a - b, r - a + b)`.
pub fn stabilize_invariants(
    inv: LegendrianInvariants,
    schedule: StabilizationSchedule,
) -> LegendrianInvariants {
    let up = schedule.up as i64;
    let down = schedule.down as i64;
    LegendrianInvariants {
        tb: inv.tb - up - down,
        r: inv.r - up + down,
    }
}

/// The unique schedule carrying `from` to `to`, if one exists.
///
/// Requires `tb` to drop by at least `|Δr|` with matching parity.
pub fn reachable(
    from: LegendrianInvariants,
    to: LegendrianInvariants,
) -> Option<StabilizationSchedule> {
    let dtb = from.tb - to.tb;
    let dr = to.r - from.r;
    if dtb < dr.abs() || (dtb - dr) % 2 != 0 {
        return None;
    }
    Some(StabilizationSchedule {
        up: ((dtb - dr) / 2) as u64,
        down: ((dtb + dr) / 2) as u64,
    })
}

/// Coprime torus knot parameters `2 <= p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TorusKnotParams {
    p: i64,
    q: i64,
}

impl TorusKnotParams {
    pub fn new(p: i64, q: i64) -> Result<Self, FrontError> {
        if p < 2 || q <= p || num::integer::gcd(p, q) != 1 {
            return Err(FrontError::InvalidParams { p, q });
        }
        Ok(TorusKnotParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `l` with `(p-1)(q-1) = 2l`.
    pub fn l(&self) -> i64 {
        (self.p - 1) * (self.q - 1) / 2
    }

    /// Seifert (and slice) genus of the torus knot, equal to `l`.
    pub fn genus(&self) -> i64 {
        self.l()
    }

    /// Invariants of the positive-braid front: `((p-1)q - p, 0)`.
    pub fn max_tb_invariants(&self) -> LegendrianInvariants {
        LegendrianInvariants::new((self.p - 1) * self.q - self.p, 0)
    }
}

/// Closed positive braid front of `T(p,q)`: `p` nested left cusps, `q` full
/// passes of the braid generators, then `p` right cusps.
pub fn torus_knot_front(params: TorusKnotParams) -> FrontDiagram {
    let p = params.p as usize;
    let q = params.q as usize;
    let mut events = Vec::with_capacity(2 * p + (p - 1) * q);
    events.extend((0..p).map(FrontEvent::left));
    for _ in 0..q {
        events.extend((0..p - 1).map(FrontEvent::crossing));
    }
    events.extend((0..p).rev().map(FrontEvent::right));
    FrontDiagram::new(events, []).expect("torus knot word is always valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Strand {
    born: usize,
    dies: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Cusp {
    event: usize,
    left: bool,
    upper: usize,
    lower: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Crossing {
    event: usize,
    a: usize,
    b: usize,
}

/// Result of scanning a prefix of an event word.
#[derive(Debug, Default)]
struct Sweep {
    stack: Vec<usize>,
    strands: Vec<Strand>,
    cusps: Vec<Cusp>,
    crossings: Vec<Crossing>,
}

fn sweep(events: &[FrontEvent], upto: usize) -> Result<Sweep, FrontError> {
    let mut s = Sweep::default();
    for (index, &event) in events.iter().enumerate().take(upto) {
        let height = s.stack.len();
        let i = event.position;
        let in_range = match event.kind {
            EventKind::LeftCusp => i <= height,
            EventKind::RightCusp | EventKind::Crossing => height >= 2 && i <= height - 2,
        };
        if !in_range {
            return Err(FrontError::InvalidPosition {
                index,
                event,
                strands: height,
            });
        }
        match event.kind {
            EventKind::LeftCusp => {
                let upper = s.strands.len();
                let lower = upper + 1;
                s.strands.push(Strand {
                    born: index,
                    dies: usize::MAX,
                });
                s.strands.push(Strand {
                    born: index,
                    dies: usize::MAX,
                });
                s.stack.splice(i..i, [upper, lower]);
                s.cusps.push(Cusp {
                    event: index,
                    left: true,
                    upper,
                    lower,
                });
            }
            EventKind::RightCusp => {
                let upper = s.stack[i];
                let lower = s.stack[i + 1];
                s.strands[upper].dies = index;
                s.strands[lower].dies = index;
                s.stack.drain(i..i + 2);
                s.cusps.push(Cusp {
                    event: index,
                    left: false,
                    upper,
                    lower,
                });
            }
            EventKind::Crossing => {
                s.crossings.push(Crossing {
                    event: index,
                    a: s.stack[i],
                    b: s.stack[i + 1],
                });
                s.stack.swap(i, i + 1);
            }
        }
    }
    Ok(s)
}

/// One closed component of a front.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub index: usize,
    /// Event index of the left cusp that creates the component's first strand.
    pub first_event: usize,
    /// Stack position of that cusp's upper strand.
    pub position: usize,
    pub left_cusps: usize,
    pub strands: usize,
    /// Whether the orientation is reversed relative to the canonical one.
    pub reversed: bool,
}

/// A validated front diagram together with its traced components and
/// strand orientations.
#[derive(Debug, Clone)]
pub struct FrontDiagram {
    events: Vec<FrontEvent>,
    flips: BTreeSet<usize>,
    cusps: Vec<Cusp>,
    crossings: Vec<Crossing>,
    strand_component: Vec<usize>,
    // +1 rightward, -1 leftward, after applying flips.
    strand_dir: Vec<i64>,
    components: Vec<Component>,
}

impl PartialEq for FrontDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.events == other.events && self.flips == other.flips
    }
}

impl Eq for FrontDiagram {}

impl FrontDiagram {
    pub fn new(
        events: Vec<FrontEvent>,
        flips: impl IntoIterator<Item = usize>,
    ) -> Result<Self, FrontError> {
        if events.is_empty() {
            return Err(FrontError::EmptyDiagram);
        }
        let Sweep {
            stack,
            strands,
            cusps,
            crossings,
        } = sweep(&events, events.len())?;
        if !stack.is_empty() {
            return Err(FrontError::UnbalancedDiagram {
                strands: stack.len(),
            });
        }

        // Each strand is born at a left cusp and dies at a right cusp; index
        // the cusps by event so the traversal can hop across them.
        let mut cusp_at = vec![usize::MAX; events.len()];
        for (k, cusp) in cusps.iter().enumerate() {
            cusp_at[cusp.event] = k;
        }
        let other_end = |cusp: &Cusp, s: usize| {
            if cusp.upper == s {
                cusp.lower
            } else {
                cusp.upper
            }
        };

        let mut strand_component = vec![usize::MAX; strands.len()];
        let mut strand_dir = vec![0i64; strands.len()];
        let mut components = Vec::new();
        for cusp in cusps.iter().filter(|c| c.left) {
            if strand_component[cusp.upper] != usize::MAX {
                continue;
            }
            let index = components.len();
            let start = cusp.upper;
            let mut s = start;
            let mut dir = 1i64;
            let mut count = 0;
            let mut left_cusps = 0;
            loop {
                strand_component[s] = index;
                strand_dir[s] = dir;
                count += 1;
                let next = if dir > 0 {
                    &cusps[cusp_at[strands[s].dies]]
                } else {
                    left_cusps += 1;
                    &cusps[cusp_at[strands[s].born]]
                };
                s = other_end(next, s);
                dir = -dir;
                if s == start {
                    break;
                }
                assert_eq!(
                    strand_component[s],
                    usize::MAX,
                    "strand revisited before closing up"
                );
            }
            assert_eq!(dir, 1, "component closed with inconsistent orientation");
            components.push(Component {
                index,
                first_event: cusp.event,
                position: events[cusp.event].position,
                left_cusps,
                strands: count,
                reversed: false,
            });
        }

        let flips: BTreeSet<usize> = flips.into_iter().collect();
        if let Some(&bad) = flips.iter().find(|&&c| c >= components.len()) {
            return Err(FrontError::ComponentOutOfRange {
                index: bad,
                count: components.len(),
            });
        }
        for &c in &flips {
            components[c].reversed = true;
        }
        for (s, dir) in strand_dir.iter_mut().enumerate() {
            if flips.contains(&strand_component[s]) {
                *dir = -*dir;
            }
        }

        Ok(FrontDiagram {
            events,
            flips,
            cusps,
            crossings,
            strand_component,
            strand_dir,
            components,
        })
    }

    /// Parses a `;`-separated word such as `"L 0; L 1; R 0; R 0"`.
    pub fn from_word(word: &str) -> Result<Self, FrontError> {
        parse_front(&word.replace(';', "\n"))
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    pub fn orientation_flips(&self) -> &BTreeSet<usize> {
        &self.flips
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    /// Largest number of strands present at any point of the scan.
    pub fn max_strands(&self) -> usize {
        let mut height = 0usize;
        let mut max = 0;
        for e in &self.events {
            match e.kind {
                EventKind::LeftCusp => height += 2,
                EventKind::RightCusp => height -= 2,
                EventKind::Crossing => {}
            }
            max = max.max(height);
        }
        max
    }

    fn check_component(&self, c: usize) -> Result<(), FrontError> {
        if c >= self.components.len() {
            return Err(FrontError::ComponentOutOfRange {
                index: c,
                count: self.components.len(),
            });
        }
        Ok(())
    }

    fn crossing_sign(&self, x: &Crossing) -> i64 {
        self.strand_dir[x.a] * self.strand_dir[x.b]
    }

    /// Signs of all crossings in event order.
    pub fn crossing_signs(&self) -> Vec<i64> {
        self.crossings
            .iter()
            .map(|x| self.crossing_sign(x))
            .collect()
    }

    /// Signed count of self-crossings of component `c`.
    pub fn writhe(&self, c: usize) -> Result<i64, FrontError> {
        self.check_component(c)?;
        Ok(self
            .crossings
            .iter()
            .filter(|x| self.strand_component[x.a] == c && self.strand_component[x.b] == c)
            .map(|x| self.crossing_sign(x))
            .sum())
    }

    /// Whether the cusp is traversed from its upper branch to its lower one.
    fn cusp_is_down(&self, cusp: &Cusp) -> bool {
        let upper_dir = self.strand_dir[cusp.upper];
        if cusp.left {
            upper_dir < 0
        } else {
            upper_dir > 0
        }
    }

    pub fn invariants(&self, c: usize) -> Result<LegendrianInvariants, FrontError> {
        let writhe = self.writhe(c)?;
        let mut down = 0i64;
        let mut up = 0i64;
        for cusp in self
            .cusps
            .iter()
            .filter(|k| self.strand_component[k.upper] == c)
        {
            if self.cusp_is_down(cusp) {
                down += 1;
            } else {
                up += 1;
            }
        }
        debug_assert_eq!((down - up) % 2, 0);
        Ok(LegendrianInvariants {
            tb: writhe - self.components[c].left_cusps as i64,
            r: (down - up) / 2,
        })
    }

    pub fn linking_number(&self, c1: usize, c2: usize) -> Result<i64, FrontError> {
        self.check_component(c1)?;
        self.check_component(c2)?;
        if c1 == c2 {
            return Err(FrontError::SameComponent(c1));
        }
        let count: i64 = self
            .crossings
            .iter()
            .filter(|x| {
                let pair = (self.strand_component[x.a], self.strand_component[x.b]);
                pair == (c1, c2) || pair == (c2, c1)
            })
            .map(|x| self.crossing_sign(x))
            .sum();
        if count % 2 != 0 {
            return Err(FrontError::OddInterCrossingCount {
                first: c1,
                second: c2,
                count,
            });
        }
        Ok(count / 2)
    }

    /// Copy of the diagram with the orientation of component `c` toggled.
    pub fn with_reversed(&self, c: usize) -> Result<FrontDiagram, FrontError> {
        self.check_component(c)?;
        let mut flips = self.flips.clone();
        if !flips.remove(&c) {
            flips.insert(c);
        }
        FrontDiagram::new(self.events.clone(), flips)
    }

    /// Adds one zig-zag to component `c` immediately before event `at`
    /// (`at == events().len()` is not allowed since no strands remain), on
    /// the topmost strand of `c` present there.
    pub fn stabilize(&self, c: usize, dir: ZigZag, at: usize) -> Result<FrontDiagram, FrontError> {
        self.check_component(c)?;
        let invalid = FrontError::InvalidInsertionPoint { component: c, at };
        if at >= self.events.len() {
            return Err(invalid);
        }
        let stack = sweep(&self.events, at)?.stack;
        let (i, strand) = stack
            .iter()
            .copied()
            .enumerate()
            .find(|&(_, s)| self.strand_component[s] == c)
            .ok_or(invalid)?;
        let rightward = self.strand_dir[strand] > 0;
        let pair = if rightward == (dir == ZigZag::Down) {
            [FrontEvent::left(i + 1), FrontEvent::right(i)]
        } else {
            [FrontEvent::left(i), FrontEvent::right(i + 1)]
        };
        let mut events = self.events.clone();
        events.splice(at..at, pair);
        // Component order and canonical orientation are unchanged: the new
        // cusp pair lies after the first event of `c`, and every other
        // component keeps its relative order.
        FrontDiagram::new(events, self.flips.iter().copied())
    }

    /// File representation: one event per line, followed by `flip` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        for c in &self.flips {
            out.push_str(&format!("flip {c}\n"));
        }
        out
    }

    /// Single-line form, e.g. `L 0; L 1; R 0; R 0`.
    pub fn word(&self) -> String {
        self.events
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl FromStr for FrontDiagram {
    type Err = FrontError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_front(s)
    }
}

/// Parses the line-oriented front format (`L i`, `R i`, `X i`, trailing
/// `flip c` lines, `#` comments).
pub fn parse_front(text: &str) -> Result<FrontDiagram, FrontError> {
    let mut events = Vec::new();
    let mut flips = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = || FrontError::MalformedToken {
            line: n + 1,
            text: raw.to_string(),
        };
        let mut tokens = line.split_whitespace();
        let (Some(head), Some(arg), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(malformed());
        };
        let value: usize = arg.parse().map_err(|_| malformed())?;
        let event = match head {
            "L" => FrontEvent::left(value),
            "R" => FrontEvent::right(value),
            "X" => FrontEvent::crossing(value),
            "flip" => {
                flips.push(value);
                continue;
            }
            _ => return Err(malformed()),
        };
        if !flips.is_empty() {
            // events may not follow flip lines
            return Err(malformed());
        }
        events.push(event);
    }
    FrontDiagram::new(events, flips)
}
