//! Reproduction reports: recompute each published table and compare it
//! cell by cell with the embedded reference values.

use anyhow::{anyhow, Result};
use gbmux::balance;
use gbmux::pam::{nap_statistics, to_f64, DesignProfile};
use gbmux::stellar::ideal::ideal_stellar_table;
use gbmux::stellar::jump::{cic_gain_matrix, effective_ladder, jump_gain_limits, JumpRule, StellarSpec};
use gbmux::stellar::pam2d::{analyze_2d_pam5, coding_schemes, Selection};
use gbmux::stellar::sphere::limit_scan;
use gbmux::{mux, stats};
use serde::Serialize;

use crate::published::{self, Cmp, Legibility, Published};
use crate::table::{num, Table};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Text(String),
}

impl Value {
    fn int(v: impl ToString) -> Value {
        Value::Text(v.to_string())
    }

    pub fn render(&self) -> String {
        match self {
            Value::Num(x) => num(*x, 6),
            Value::Text(s) => s.clone(),
        }
    }

    fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(*x),
            Value::Text(s) => s.parse().ok(),
        }
    }
}

type Cells = Vec<(String, Value)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    /// Unreadable in the source; never counted against strict mode.
    PaperIllegible,
    /// Computed with nothing published to compare against.
    DerivedOnly,
    /// Known, documented discrepancy.
    Flagged,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::PaperIllegible => "paper-illegible",
            Status::DerivedOnly => "derived-only",
            Status::Flagged => "flagged",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub table: String,
    pub cell: String,
    pub computed: String,
    pub published: Option<String>,
    pub tolerance: Option<f64>,
    pub status: Status,
    pub note: String,
}

pub struct TableSpec {
    pub id: &'static str,
    pub title: &'static str,
    compute: fn() -> Result<Cells>,
}

pub const TABLES: [TableSpec; 19] = [
    TableSpec { id: "P1.TII", title: "multiplexing variants, N_C = 64", compute: p1_variants },
    TableSpec { id: "P1.TXII", title: "arithmetic redundancy of 8-ary data in 9-ary transport", compute: p1_redundancy },
    TableSpec { id: "P2.TXI", title: "normalized average power per design", compute: p2_nap },
    TableSpec { id: "P3.TXI", title: "repeat effects per symmetry group", compute: p3_effects },
    TableSpec { id: "P3.TXVIII", title: "balancing examples, N_E = 72", compute: p3_balancing },
    TableSpec { id: "P3.TXVI", title: "base-5 sub-scrambler error", compute: || subscrambler(5, 3..=6) },
    TableSpec { id: "P3.TXVII", title: "base-9 sub-scrambler error", compute: || subscrambler(9, 4..=7) },
    TableSpec { id: "P4.TIV", title: "2D-PAM5 Euclidean gains", compute: || pam5_gain(|g| Some(g.g_delta), "G_delta") },
    TableSpec { id: "P4.TVIII", title: "2D-PAM5 angular gains", compute: || pam5_gain(|g| g.g_rho, "G_rho") },
    TableSpec { id: "P4.TIX", title: "2D-PAM5 radial gains", compute: || pam5_gain(|g| g.g_p, "G_p") },
    TableSpec { id: "P4.TX", title: "2D-PAM5 coding variants and jump-gain limits", compute: p4_schemes },
    TableSpec { id: "P4.TXV", title: "ideal two-orbit constellation partitioning", compute: p4_ideal },
    TableSpec { id: "P5.TXII", title: "MDI output statistics, ideal rows", compute: p5_stats },
    TableSpec { id: "P6.TVII", title: "grid sphere surface (transmit limit)", compute: p6_surface },
    TableSpec { id: "P6.TVIII", title: "grid ball volume (receive limit)", compute: p6_volume },
    TableSpec { id: "P7.TII", title: "jump gains in the coupled space, N = 16", compute: p7_cic },
    TableSpec { id: "P7.TIV", title: "multiplexing profiles per root type", compute: p7_profiles },
    TableSpec { id: "P7.TVIII", title: "effective per-page coding space", compute: p7_ladders },
    TableSpec { id: "P5.TXII-MC", title: "sampled cross-check of the ideal chain", compute: p5_sampled },
];

pub fn find(id: &str) -> Option<&'static TableSpec> {
    TABLES.iter().find(|t| t.id.eq_ignore_ascii_case(id))
}

pub fn anchor(spec: &TableSpec) -> String {
    format!("{}: {}", spec.id, spec.title)
}

/// Recompute one table and classify every cell.
pub fn evaluate(spec: &TableSpec, tolerance: Option<f64>) -> Result<Vec<ReportRow>> {
    let published: Vec<Published> = published::load()?.into_iter().filter(|p| p.table == spec.id).collect();
    let cells = (spec.compute)()?;
    let mut rows = Vec::with_capacity(cells.len());
    for (cell, value) in &cells {
        let p = published.iter().find(|p| &p.cell == cell);
        rows.push(classify(spec.id, cell, value, p, tolerance));
    }
    for p in &published {
        if !cells.iter().any(|(c, _)| *c == p.cell) {
            rows.push(ReportRow {
                table: spec.id.to_string(),
                cell: p.cell.clone(),
                computed: String::new(),
                published: Some(p.value.clone()),
                tolerance: Some(p.tolerance),
                status: if p.legible == Legibility::No { Status::PaperIllegible } else { Status::Mismatch },
                note: "not computed".into(),
            });
        }
    }
    Ok(rows)
}

fn classify(table: &str, cell: &str, value: &Value, p: Option<&Published>, tol: Option<f64>) -> ReportRow {
    let mut row = ReportRow {
        table: table.to_string(),
        cell: cell.to_string(),
        computed: value.render(),
        published: None,
        tolerance: None,
        status: Status::DerivedOnly,
        note: String::new(),
    };
    let Some(p) = p else { return row };
    let tolerance = match p.cmp {
        Cmp::Abs => tol.unwrap_or(p.tolerance),
        _ => p.tolerance,
    };
    let target: Option<f64> = p.value.parse().ok();
    let ok = match p.cmp {
        Cmp::Eq => row.computed == p.value,
        Cmp::Abs => matches!((value.as_f64(), target), (Some(c), Some(t)) if (c - t).abs() <= tolerance + 1e-12),
        Cmp::Lt => matches!((value.as_f64(), target), (Some(c), Some(t)) if c < t),
    };
    row.status = match (p.legible, ok) {
        (Legibility::No, _) => Status::PaperIllegible,
        (_, true) => Status::Match,
        (Legibility::Flagged, false) => Status::Flagged,
        (Legibility::Yes, false) => Status::Mismatch,
    };
    row.published = Some(p.value.clone());
    row.tolerance = Some(tolerance);
    row.note = match p.cmp {
        Cmp::Lt => format!("bound: computed < {}", p.value),
        _ => p.note.clone(),
    };
    row
}

pub fn rows_table(spec: &TableSpec, rows: &[ReportRow]) -> Table {
    let mut t = Table::new(
        format!("report_{}", spec.id.replace('.', "_").to_ascii_lowercase()),
        anchor(spec),
        &["table", "cell", "computed", "published", "tolerance", "status", "note"],
    );
    for r in rows {
        t.push(vec![
            r.table.clone(),
            r.cell.clone(),
            r.computed.clone(),
            r.published.clone().unwrap_or_default(),
            r.tolerance.map(|x| x.to_string()).unwrap_or_default(),
            r.status.label().to_string(),
            r.note.clone(),
        ]);
    }
    t
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub cells: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub illegible: usize,
    pub derived_only: usize,
    pub flagged: usize,
}

impl Counts {
    pub fn of(rows: &[ReportRow]) -> Counts {
        let mut c = Counts { cells: rows.len(), ..Counts::default() };
        for r in rows {
            match r.status {
                Status::Match => c.matched += 1,
                Status::Mismatch => c.mismatched += 1,
                Status::PaperIllegible => c.illegible += 1,
                Status::DerivedOnly => c.derived_only += 1,
                Status::Flagged => c.flagged += 1,
            }
        }
        c
    }
}

pub fn summary_table(per_table: &[(&TableSpec, Counts)]) -> Table {
    let mut t = Table::new(
        "report_summary",
        "summary of reproduced tables",
        &["table", "title", "cells", "match", "mismatch", "paper-illegible", "derived-only", "flagged"],
    );
    let mut total = Counts::default();
    for (spec, c) in per_table {
        t.push(vec![
            spec.id.into(),
            spec.title.into(),
            c.cells.to_string(),
            c.matched.to_string(),
            c.mismatched.to_string(),
            c.illegible.to_string(),
            c.derived_only.to_string(),
            c.flagged.to_string(),
        ]);
        total.cells += c.cells;
        total.matched += c.matched;
        total.mismatched += c.mismatched;
        total.illegible += c.illegible;
        total.derived_only += c.derived_only;
        total.flagged += c.flagged;
    }
    t.push(vec![
        "total".into(),
        String::new(),
        total.cells.to_string(),
        total.matched.to_string(),
        total.mismatched.to_string(),
        total.illegible.to_string(),
        total.derived_only.to_string(),
        total.flagged.to_string(),
    ]);
    t
}

fn p1_variants() -> Result<Cells> {
    let mut out = Vec::new();
    for v in mux::variant_rows() {
        out.push((format!("NE{}.gcd", v.n_e), Value::int(v.gcd)));
        out.push((format!("NE{}.emax", v.n_e), Value::int(v.e_max)));
        for (e, n) in v.echo_table {
            if let Some(n) = n {
                out.push((format!("NE{}.E{e}", v.n_e), Value::int(n)));
            }
        }
    }
    Ok(out)
}

fn verdict(f: u64, n: u32) -> Value {
    Value::int(if mux::capacity_check(f, n, 8, 9).holds { "<" } else { ">" })
}

fn p1_redundancy() -> Result<Cells> {
    let mut out = Vec::new();
    for n in [4u32, 5, 6, 10, 11, 12, 16, 17, 18] {
        out.push((format!("9^{n}.value"), Value::int(mux::capacity_check(1, n, 8, 9).rhs)));
        for f in [8u64, 4, 2] {
            out.push((format!("{f}x8^{n}"), verdict(f, n)));
            out.push((format!("{f}x8^{n}.value"), Value::int(mux::capacity_check(f, n, 8, 9).lhs)));
        }
    }
    // a carried value 2^k is (2^(k mod 3)) * 8^(k div 3)
    for k in [16u32, 17, 19, 20, 34, 35, 37, 38, 52, 53, 55, 56] {
        let m = k / 3;
        out.push((format!("2^{k}:9^{m}"), verdict(1 << (k % 3), m)));
    }
    for plan in mux::round_plans(8, 72, 64)? {
        let l = plan.label();
        out.push((format!("path.{l}.k"), Value::int(plan.k)));
        out.push((format!("path.{l}.max"), Value::int(plan.max_round)));
        out.push((format!("path.{l}.total"), Value::int(plan.total)));
    }
    Ok(out)
}

fn p2_nap() -> Result<Cells> {
    let mut out = Vec::new();
    let names = ["original", "draft", "extensive", "proposed"];
    for (name, d) in names.iter().zip(DesignProfile::builtins()) {
        let s = nap_statistics(&d)?;
        out.push((format!("{name}.P0"), Value::Num(s.per_page[0])));
        out.push((format!("{name}.P2.4.6"), Value::Num(s.per_page[2])));
        out.push((format!("{name}.P1.3.5.7"), Value::Num(s.per_page[1])));
        out.push((format!("{name}.mean"), Value::Num(to_f64(s.mean))));
        out.push((format!("{name}.sigma"), Value::Num(s.sigma)));
        out.push((format!("{name}.sigma_over_mean_pct"), Value::Num(100.0 * s.ratio)));
    }
    Ok(out)
}

/// `P0+2`, `odd+4`, `even+8`, or the raw page list for other patterns.
pub fn page_pattern(p: &[u32; 8]) -> String {
    let on: Vec<usize> = (0..8).filter(|&i| p[i] > 0).collect();
    let same = on.iter().all(|&i| p[i] == p[on[0]]);
    match on.as_slice() {
        [0] => format!("P0+{}", p[0]),
        [1, 3, 5, 7] if same => format!("odd+{}", p[1]),
        [2, 4, 6] if same => format!("even+{}", p[2]),
        _ => format!("{p:?}"),
    }
}

fn p3_effects() -> Result<Cells> {
    let rep = balance::build_catalog().verify().map_err(|e| anyhow!(e))?;
    let mut out = vec![("points".to_string(), Value::int(rep.total_points))];
    for (g, e) in &rep.effects {
        let l = g.label();
        out.push((format!("{l}.members"), Value::int(rep.member_counts.iter().find(|m| m.0 == *g).map_or(0, |m| m.1))));
        out.push((format!("{l}.dHy"), Value::int(e.dh_y)));
        out.push((format!("{l}.dHx"), Value::int(e.dh_x)));
        out.push((format!("{l}.pages"), Value::Text(page_pattern(&e.dh_page))));
        out.push((format!("{l}.dHz"), Value::int(e.dh_z)));
    }
    Ok(out)
}

pub const BALANCE_TARGETS: [u64; 12] = [576, 1152, 2304, 4608, 1024, 2048, 4096, 8192, 640, 1280, 2560, 5120];

fn p3_balancing() -> Result<Cells> {
    let mut out = Vec::new();
    for hz in BALANCE_TARGETS {
        let s = balance::solve(hz, 72)?;
        out.push((format!("Hz{hz}.Hy:Hx"), Value::Text(format!("{}:{}", s.h_y, s.h_x))));
        out.push((format!("Hz{hz}.Hpage"), Value::int(s.h_page)));
        out.push((format!("Hz{hz}.unbalance"), Value::int(s.unbalance)));
        out.push((format!("Hz{hz}.violations"), Value::int(balance::verify(&s, 72).violations.len())));
    }
    Ok(out)
}

fn subscrambler(base: u32, ks: std::ops::RangeInclusive<u32>) -> Result<Cells> {
    let mut out = vec![("anchor".to_string(), Value::Num(balance::anchor_error(base)))];
    for k in ks {
        out.push((format!("2^{k}"), Value::Num(balance::subscrambler_error(k, base)?)));
    }
    Ok(out)
}

fn selection_cell(s: Selection) -> &'static str {
    match s {
        Selection::PageletYy => "pagelet-YY",
        Selection::PageletXx => "pagelet-XX",
        Selection::PageletYx => "pagelet-YX",
        Selection::PageletXy => "pagelet-XY",
        Selection::PageP0 => "page-P0",
        Selection::PageP1 => "page-P1",
        Selection::Dictionary => "dictionary",
    }
}

fn pam5_gain(pick: fn(&gbmux::stellar::pam2d::SelectionGains) -> Option<f64>, name: &str) -> Result<Cells> {
    Ok(analyze_2d_pam5()
        .iter()
        .filter_map(|g| pick(g).map(|x| (format!("{}.{name}", selection_cell(g.selection)), Value::Num(x))))
        .collect())
}

fn p4_schemes() -> Result<Cells> {
    let mut out = Vec::new();
    for s in coding_schemes() {
        out.push((format!("{}.G_delta", s.name), Value::Num(s.g_delta)));
        if let Some(g) = s.g_rho {
            out.push((format!("{}.G_rho", s.name), Value::Num(g)));
        }
        if let Some(g) = s.g_p {
            out.push((format!("{}.G_p", s.name), Value::Num(g)));
        }
        out.push((format!("{}.total", s.name), Value::Num(s.total)));
    }
    let (single, double) = jump_gain_limits();
    out.push(("limit.single".into(), Value::Num(single)));
    out.push(("limit.double".into(), Value::Num(double)));
    Ok(out)
}

fn p4_ideal() -> Result<Cells> {
    let mut out = Vec::new();
    for p in 2..=8 {
        let r = ideal_stellar_table(p)?;
        let pre = format!("{}:{}:{}", r.dictionary_points, r.page_points, p);
        let denom = (std::f64::consts::PI / r.dphi).round();
        out.push((format!("{pre}.dphi_over_pi"), Value::Text(format!("1/{denom}"))));
        for (name, x) in [
            ("r", r.ratio),
            ("page.delta", r.page_delta),
            ("page.G_delta", r.page_g_delta),
            ("page.G_phi", r.page_g_phi),
            ("page.G_rho", r.page_g_rho),
            ("dict.delta", r.dict_delta),
            ("dict.G_delta", r.dict_g_delta),
        ] {
            out.push((format!("{pre}.{name}"), Value::Num(x)));
        }
    }
    Ok(out)
}

/// Outer-to-inner radius ratio used for each ideal row.
pub const IDEAL_RHO: [(f64, f64); 3] = [(4.0, 0.630), (4.5, 0.6542), (5.0, 0.6986)];

pub fn rule_cell(rule: &str) -> Result<JumpRule> {
    JumpRule::parse(rule).ok_or_else(|| anyhow!("unknown jump rule '{rule}'"))
}

fn p5_stats() -> Result<Cells> {
    let mut out = Vec::new();
    let r = stats::reference_stats();
    for (c, x) in [
        ("power.mean", r.power.mean),
        ("power.sigma", r.power.sigma),
        ("power.min", r.power.peak_min),
        ("power.max", r.power.peak_max),
        ("power.span", r.power.span()),
        ("change.mean", r.change.mean),
        ("change.sigma", r.change.sigma),
        ("change.min", r.change.peak_min),
        ("change.max", r.change.peak_max),
        ("change.span", r.change.span()),
    ] {
        out.push((format!("reference.{c}"), Value::Num(x)));
    }
    for (pts, rho) in IDEAL_RHO {
        let spec = StellarSpec::from_points(pts, rho)?;
        let rules: &[&str] = match pts {
            p if p == 4.0 => &["static"],
            p if p == 4.5 => &["static", "gj", "gj+", "d"],
            _ => &["static", "gj", "gj+", "d", "gj+d"],
        };
        for rule in rules {
            let d = stats::dynamic_stats(&spec, rule_cell(rule)?)?;
            let w = d.report.wobble.unwrap_or(stats::Moments::ZERO);
            let pre = format!("{pts}pts.{rule}");
            for (c, x) in [
                ("power.mean", d.report.power.mean),
                ("power.sigma", d.report.power.sigma),
                ("wobble.mean", w.mean),
                ("change.mean", d.report.change.mean),
                ("change.sigma", d.report.change.sigma),
                ("change.min", d.report.change.peak_min),
                ("change.max", d.report.change.peak_max),
            ] {
                out.push((format!("{pre}.{c}"), Value::Num(x)));
            }
            if let Some(g) = d.gain_j {
                out.push((format!("{pre}.G_J"), Value::Num(g)));
            }
        }
    }
    Ok(out)
}

fn p5_sampled() -> Result<Cells> {
    let spec = StellarSpec::from_points(5.0, 0.6986)?;
    let rule = rule_cell("gj+")?;
    let exact = stats::dynamic_stats(&spec, rule)?.report.change.mean;
    let (mc, se) = stats::monte_carlo_stats(&spec, rule, 200_000, Some(1))?;
    Ok(vec![
        ("5pts.gj+.change.mean.exact".into(), Value::Num(exact)),
        ("5pts.gj+.change.mean.sampled".into(), Value::Num(mc.change.mean)),
        ("5pts.gj+.change.mean.stderr".into(), Value::Num(se)),
        ("5pts.gj+.within_5_stderr".into(), Value::int((mc.change.mean - exact).abs() <= 5.0 * se)),
    ])
}

pub const SPHERE_LEVELS: [usize; 10] = [3, 4, 5, 6, 7, 8, 16, 17, 18, 32];

fn p6_surface() -> Result<Cells> {
    let mut out = Vec::new();
    for m in SPHERE_LEVELS {
        let s = limit_scan(m, 10)?;
        if m == 17 {
            for (n, x) in s.surface.iter().enumerate() {
                out.push((format!("M17.n{}", n + 1), Value::Num(*x)));
            }
            out.push(("M17.n_tx".into(), Value::int(s.n_tx)));
        }
        for (n, x) in s.surface_percent().iter().enumerate() {
            out.push((format!("M{m}.n{}.pct", n + 1), Value::Num(*x)));
        }
    }
    Ok(out)
}

fn p6_volume() -> Result<Cells> {
    let mut out = Vec::new();
    for m in SPHERE_LEVELS {
        let s = limit_scan(m, 9)?;
        for (n, x) in s.volume.iter().enumerate() {
            out.push((format!("M{m}.n{}", n + 1), Value::Num(*x)));
        }
        if m == 17 {
            out.push(("M17.n_rx".into(), Value::int(s.n_rx)));
        }
    }
    Ok(out)
}

fn p7_cic() -> Result<Cells> {
    let mut out = Vec::new();
    for c in cic_gain_matrix(16) {
        let pre = format!("ab{}.cd{}", c.ab_class, c.cd_class);
        if let Some(g) = c.gain {
            out.push((format!("{pre}.gain"), Value::Num(g)));
        }
        out.push((format!("{pre}.invariance"), Value::Text(c.invariance.alias().into())));
    }
    Ok(out)
}

fn p7_profiles() -> Result<Cells> {
    let mut out = Vec::new();
    for t in mux::ROOT_TYPES {
        let p = mux::profile(t)?;
        for (c, v) in [("N_E", p.n_e), ("N_C", p.n_c), ("N_R", p.n_r), ("n_e", p.words as u64), ("k", p.k as u64)] {
            out.push((format!("{t}.{c}"), Value::int(v)));
        }
    }
    Ok(out)
}

fn p7_ladders() -> Result<Cells> {
    let mut out = Vec::new();
    for (label, n) in [("4", 8u64), ("4.5", 9), ("5", 10), ("5.5", 11), ("6", 12)] {
        for (i, e) in effective_ladder(n).iter().enumerate() {
            out.push((format!("{label}pts.step{i}"), Value::int(e.per_page)));
        }
    }
    Ok(out)
}
