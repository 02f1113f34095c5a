use std::fmt::Write as _;
use std::fs;

use serde::Serialize;

use steinkit::brieskorn::{
    self, casson_harer_families, seifert_data, sigma_closed_form, sigma_lattice, theta_closed_form,
};
use steinkit::criteria::{self, HirzQuery};
use steinkit::front::{parse_front, stabilize_invariants, torus_knot_front, EventKind};
use steinkit::handlebody::{self, analyze, parse_kirby, FormAnalysis};
use steinkit::{
    BrieskornTriple, FrontDiagram, LegendrianInvariants, MilnorInvariants, OrientedBrieskorn,
    SeifertData, Sign, StabilizationSchedule, TorusKnotParams, ZigZag,
};

use crate::output::{opt, CliError, Output};

type CmdResult = Result<Output, CliError>;

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

#[derive(Serialize)]
struct ComponentStats {
    index: usize,
    first_event: usize,
    left_cusps: usize,
    reversed: bool,
    writhe: i64,
    tb: i64,
    r: i64,
}

#[derive(Serialize)]
struct LinkEntry {
    i: usize,
    j: usize,
    lk: i64,
}

#[derive(Serialize)]
struct FrontStats {
    events: usize,
    left_cusps: usize,
    right_cusps: usize,
    crossings: usize,
    max_strands: usize,
    components: Vec<ComponentStats>,
    linking: Vec<LinkEntry>,
}

fn stats_of(d: &FrontDiagram) -> Result<FrontStats, CliError> {
    let mut components = Vec::new();
    for c in d.components() {
        let inv = d.invariants(c.index)?;
        components.push(ComponentStats {
            index: c.index,
            first_event: c.first_event,
            left_cusps: c.left_cusps,
            reversed: c.reversed,
            writhe: d.writhe(c.index)?,
            tb: inv.tb,
            r: inv.r,
        });
    }
    let k = d.component_count();
    let mut linking = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            linking.push(LinkEntry {
                i,
                j,
                lk: d.linking_number(i, j)?,
            });
        }
    }
    Ok(FrontStats {
        events: d.events().len(),
        left_cusps: d.count(EventKind::LeftCusp),
        right_cusps: d.count(EventKind::RightCusp),
        crossings: d.count(EventKind::Crossing),
        max_strands: d.max_strands(),
        components,
        linking,
    })
}

pub fn front_stats(path: &str) -> CmdResult {
    let d = parse_front(&read(path)?)?;
    let s = stats_of(&d)?;
    let mut t = format!(
        "events={} left_cusps={} right_cusps={} crossings={} max_strands={} components={}\n",
        s.events,
        s.left_cusps,
        s.right_cusps,
        s.crossings,
        s.max_strands,
        s.components.len()
    );
    for c in &s.components {
        let _ = writeln!(
            t,
            "component {}: tb={} r={} writhe={} left_cusps={} first_event={} reversed={}",
            c.index, c.tb, c.r, c.writhe, c.left_cusps, c.first_event, c.reversed
        );
    }
    for e in &s.linking {
        let _ = writeln!(t, "lk({},{})={}", e.i, e.j, e.lk);
    }
    Ok(Output::new(&s, t))
}

#[derive(Serialize)]
struct Stabilized {
    component: usize,
    before: LegendrianInvariants,
    after: LegendrianInvariants,
    front: String,
}

pub fn front_stabilize(path: &str, component: usize, dir: &str, at: usize) -> CmdResult {
    let d = parse_front(&read(path)?)?;
    let dir: ZigZag = dir
        .parse()
        .map_err(|_| CliError::Usage(format!("bad direction {dir}")))?;
    let before = d.invariants(component)?;
    let s = d.stabilize(component, dir, at)?;
    let after = s.invariants(component)?;
    let front = s.to_text();
    let table = format!("# component {component}: {after}\n{front}");
    Ok(Output::new(
        &Stabilized {
            component,
            before,
            after,
            front,
        },
        table,
    ))
}

#[derive(Serialize)]
struct TorusKnotReport {
    p: i64,
    q: i64,
    genus: i64,
    word: String,
    left_cusps: usize,
    crossings: usize,
    schedule: StabilizationSchedule,
    tb: i64,
    r: i64,
}

fn parse_schedule(s: &str) -> Result<StabilizationSchedule, CliError> {
    let bad = || CliError::Usage(format!("--stabilize expects a,b with a,b >= 0, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let up = a.trim().parse().map_err(|_| bad())?;
    let down = b.trim().parse().map_err(|_| bad())?;
    Ok(StabilizationSchedule::new(up, down))
}

pub fn torus_knot(p: i64, q: i64, stabilize: Option<&str>) -> CmdResult {
    let params = TorusKnotParams::new(p, q)?;
    let schedule = stabilize
        .map(parse_schedule)
        .transpose()?
        .unwrap_or_default();
    let mut d = torus_knot_front(params);
    // event 1 always lies after the first left cusp of component 0
    for _ in 0..schedule.up {
        d = d.stabilize(0, ZigZag::Up, 1)?;
    }
    for _ in 0..schedule.down {
        d = d.stabilize(0, ZigZag::Down, 1)?;
    }
    let inv = d.invariants(0)?;
    debug_assert_eq!(
        inv,
        stabilize_invariants(params.max_tb_invariants(), schedule)
    );
    let rep = TorusKnotReport {
        p: params.p(),
        q: params.q(),
        genus: params.genus(),
        word: d.word(),
        left_cusps: d.count(EventKind::LeftCusp),
        crossings: d.count(EventKind::Crossing),
        schedule,
        tb: inv.tb,
        r: inv.r,
    };
    let table = format!(
        "T({},{}) genus={} left_cusps={} crossings={} stabilized {}\n{}\n{}\n",
        rep.p, rep.q, rep.genus, rep.left_cusps, rep.crossings, rep.schedule, rep.word, inv
    );
    Ok(Output::new(&rep, table))
}

#[derive(Serialize)]
struct InvariantsReport {
    triple: BrieskornTriple,
    #[serde(flatten)]
    milnor: MilnorInvariants,
    family: Option<(i64, i64, i64)>,
}

pub fn brieskorn_invariants(p1: i64, p2: i64, p3: i64) -> CmdResult {
    let triple = BrieskornTriple::new(p1, p2, p3)?;
    let m = brieskorn::milnor_invariants(&triple)?;
    let family = brieskorn::family_member(&triple);
    let mut table = format!(
        "{triple}: b2={} chi={} sigma={} theta={} c1={}",
        m.b2, m.chi, m.sigma, m.theta_boundary, m.c1
    );
    if let Some((p, q, n)) = family {
        let _ = write!(table, " family=(p={p},q={q},n={n})");
    }
    Ok(Output::new(
        &InvariantsReport {
            triple,
            milnor: m,
            family,
        },
        table,
    ))
}

#[derive(Serialize)]
struct SeifertReport {
    triple: BrieskornTriple,
    #[serde(flatten)]
    data: SeifertData,
    weighted_sum: i64,
}

pub fn brieskorn_seifert(p1: i64, p2: i64, p3: i64) -> CmdResult {
    let triple = BrieskornTriple::new(p1, p2, p3)?;
    let data = seifert_data(&triple);
    let weighted_sum = data.weighted_sum(&triple);
    let table = format!(
        "{triple}: q1={} q2={} q3={} weighted_sum={weighted_sum}",
        data.q1, data.q2, data.q3
    );
    Ok(Output::new(
        &SeifertReport {
            triple,
            data,
            weighted_sum,
        },
        table,
    ))
}

#[derive(Serialize)]
struct SurgeryReport {
    p: i64,
    q: i64,
    n: i64,
    surgery_sign: Sign,
    result: OrientedBrieskorn,
}

pub fn brieskorn_surgery(p: i64, q: i64, n: i64, sign: &str) -> CmdResult {
    let surgery_sign = match sign {
        "+" | "+1" => Sign::Plus,
        "-" | "-1" => Sign::Minus,
        other => {
            return Err(CliError::Usage(format!(
                "sign must be + or -, got {other:?}"
            )))
        }
    };
    let desc = brieskorn::SurgeryDescription::new(p, q, n, surgery_sign)?;
    let result = brieskorn::surgery_to_brieskorn(&desc)?;
    let s = if surgery_sign == Sign::Plus { "+" } else { "-" };
    let table = format!("{s}1/{n} surgery on T({p},{q}) = {result}");
    Ok(Output::new(
        &SurgeryReport {
            p,
            q,
            n,
            surgery_sign,
            result,
        },
        table,
    ))
}

#[derive(Serialize)]
struct SweepRow {
    p: i64,
    q: i64,
    n: i64,
    r: i64,
    sigma_lattice: i64,
    sigma_closed: i64,
    theta: i64,
    theta_closed: i64,
    agree: bool,
}

#[derive(Serialize)]
struct Sweep {
    rows: Vec<SweepRow>,
    all_agree: bool,
}

fn family_params(pmax: i64, nmax: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for p in 2..=pmax {
        for q in p + 1..=pmax {
            if TorusKnotParams::new(p, q).is_err() {
                continue;
            }
            for n in 1..=nmax {
                out.push((p, q, n));
            }
        }
    }
    out
}

pub fn sigma_sweep(pmax: i64, nmax: i64) -> CmdResult {
    let mut rows = Vec::new();
    for (p, q, n) in family_params(pmax, nmax) {
        let r = n * p * q - 1;
        let t = BrieskornTriple::new(p, q, r)?;
        let lattice = sigma_lattice(&t)?;
        let closed = sigma_closed_form(p, q, n)?;
        // θ = c1² − 3σ − 2χ with c1 = 0 and χ = b2 + 1
        let theta = -3 * lattice - 2 * (t.b2() + 1);
        let theta_closed = theta_closed_form(p, q, n)?;
        rows.push(SweepRow {
            p,
            q,
            n,
            r,
            sigma_lattice: lattice,
            sigma_closed: closed,
            theta,
            theta_closed,
            agree: lattice == closed && theta == theta_closed,
        });
    }
    let all_agree = rows.iter().all(|r| r.agree);
    let mut table = String::from("p q n r sigma_lattice sigma_closed theta theta_closed agree\n");
    for r in &rows {
        let _ = writeln!(
            table,
            "{} {} {} {} {} {} {} {} {}",
            r.p, r.q, r.n, r.r, r.sigma_lattice, r.sigma_closed, r.theta, r.theta_closed, r.agree
        );
    }
    let _ = writeln!(table, "rows={} all_agree={all_agree}", rows.len());
    Ok(Output::new(&Sweep { rows, all_agree }, table))
}

#[derive(Serialize)]
struct Families {
    triples: Vec<BrieskornTriple>,
}

pub fn casson_harer(pmax: i64, nmax: i64) -> CmdResult {
    let triples = casson_harer_families(pmax, nmax);
    let mut table = String::new();
    for t in &triples {
        let _ = writeln!(table, "{t}");
    }
    let _ = writeln!(table, "count={}", triples.len());
    Ok(Output::new(&Families { triples }, table))
}

fn analysis_table(a: &FormAnalysis) -> String {
    format!(
        "chi={} b2={} det={} signature={} c1_squared={} theta={}",
        a.chi,
        opt(&a.b2),
        opt(&a.det),
        opt(&a.signature),
        opt(&a.c1_squared),
        opt(&a.theta_boundary)
    )
}

pub fn handlebody_analyze(path: &str) -> CmdResult {
    let k = parse_kirby(&read(path)?)?;
    let a = analyze(&k)?;
    let table = analysis_table(&a);
    Ok(Output::new(&a, table))
}

#[derive(Serialize)]
struct NucleusReport {
    p: i64,
    q: i64,
    n: i64,
    l: i64,
    fiber_genus: i64,
    singular_fibers: i64,
    c1_pd: (i64, i64),
    c1_squared: i64,
    boundary: OrientedBrieskorn,
    blown_down: bool,
    kirby: String,
    analysis: FormAnalysis,
}

pub fn nucleus(p: i64, q: i64, n: i64) -> CmdResult {
    let nuc = handlebody::nucleus(p, q, n)?;
    let analysis = analyze(&nuc.kirby)?;
    let kirby = nuc.kirby.to_text();
    let mut table = format!(
        "N({p},{q},{n}): l={} fiber_genus={} singular_fibers={} c1_pd=({},{}) c1_squared={} boundary={}",
        nuc.l, nuc.fiber_genus, nuc.singular_fibers, nuc.c1_pd.0, nuc.c1_pd.1, nuc.c1_squared, nuc.boundary
    );
    if nuc.blown_down {
        table.push_str(" blown_down=true");
    }
    let _ = write!(table, "\n{}\n{kirby}", analysis_table(&analysis));
    let report = NucleusReport {
        p,
        q,
        n,
        l: nuc.l,
        fiber_genus: nuc.fiber_genus,
        singular_fibers: nuc.singular_fibers,
        c1_pd: nuc.c1_pd,
        c1_squared: nuc.c1_squared,
        boundary: nuc.boundary,
        blown_down: nuc.blown_down,
        kirby,
        analysis,
    };
    Ok(Output::new(&report, table))
}

fn schedule_text(s: &Option<StabilizationSchedule>) -> String {
    opt(s)
}

pub fn check_hirz(tb: i64, r: i64, n: i64, m: u64) -> CmdResult {
    let v = criteria::hirz_check(&HirzQuery {
        known: LegendrianInvariants::new(tb, r),
        n,
        m,
    });
    let table = format!(
        "embeddable={} schedule={}",
        v.embeddable,
        schedule_text(&v.schedule)
    );
    Ok(Output::new(&v, table))
}

pub fn check_embed(p: i64, q: i64, eps: i64) -> CmdResult {
    let plan = criteria::brieskorn_embed_plan(p, q, eps)?;
    let table = format!(
        "boundary={} source={} target={} framing={} schedule={} split={} + {}",
        plan.boundary,
        plan.source,
        plan.target,
        plan.framing,
        plan.schedule,
        plan.split_forms.0,
        plan.split_forms.1
    );
    Ok(Output::new(&plan, table))
}

pub fn check_prop_theta(p: i64, q: i64, eps: i64) -> CmdResult {
    let rep = criteria::prop_theta_check(p, q, eps)?;
    let table = format!(
        "theta_embed={} theta_milnor={} homotopic={} b2={} b2_mod3={}",
        rep.theta_embed, rep.theta_milnor, rep.homotopic, rep.b2, rep.b2_mod3
    );
    Ok(Output::new(&rep, table))
}

pub fn check_cave(tb: i64, r: i64, k: i64) -> CmdResult {
    let v = criteria::cave_check(LegendrianInvariants::new(tb, r), k);
    let table = format!(
        "feasible={} target={} schedule={}",
        v.feasible,
        opt(&v.target),
        schedule_text(&v.schedule)
    );
    Ok(Output::new(&v, table))
}

pub fn check_flip(r0: i64, up: u64, down: u64, target: i64) -> CmdResult {
    let v = criteria::flip_reach(r0, up, down, target);
    let table = format!("feasible={} flips={}", v.feasible, opt(&v.flips));
    Ok(Output::new(&v, table))
}

#[derive(Serialize)]
struct SliceReport {
    tb: i64,
    r: i64,
    g: u64,
    bound: i64,
    satisfied: bool,
}

pub fn check_slice(tb: i64, r: i64, g: u64) -> CmdResult {
    let satisfied = criteria::slice_genus_check(LegendrianInvariants::new(tb, r), g);
    let bound = 2 * g as i64 - 1;
    let table = format!(
        "tb+|r|={} bound={bound} satisfied={satisfied}",
        tb + r.abs()
    );
    Ok(Output::new(
        &SliceReport {
            tb,
            r,
            g,
            bound,
            satisfied,
        },
        table,
    ))
}
