//! Subcommand handlers.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use gbmux::balance;
use gbmux::codec::{self, wordfile, Decoder, EventRecord, FramePattern, ScrambleConfig};
use gbmux::stellar::ideal::ideal_stellar_table;
use gbmux::stellar::jump::{cic_gain_matrix, StellarSpec};
use gbmux::stellar::pam2d::{analyze_2d_pam5, coding_schemes};
use gbmux::stellar::sphere::{limit_scan, unit_ball_surface, unit_ball_volume};
use gbmux::{mux, stats};

use crate::report::{self, ReportRow, Status, TableSpec};
use crate::table::{num, opt, Table};
use crate::{BalanceCmd, CodecCmd, Command, Failure, Settings, StatsCmd};

pub fn run(cmd: Command, s: Settings) -> Result<ExitCode, Failure> {
    let out_dir = |o: crate::OutDir| o.out.or_else(|| s.out.clone());
    match cmd {
        Command::Variants(o) => emit(&[variants(&s)?], &s, out_dir(o))?,
        Command::Redundancy(o) => {
            let spec = spec("P1.TXII")?;
            emit(&[report::rows_table(spec, &report::evaluate(spec, s.tolerance)?)], &s, out_dir(o))?
        }
        Command::Symmetries(o) => emit(&[symmetries(&s)?], &s, out_dir(o))?,
        Command::Gains(o) => emit(&gains()?, &s, out_dir(o))?,
        Command::Sphere { levels, max_dim, out } => emit(&[sphere(levels as usize, max_dim as usize)?], &s, out_dir(out))?,
        Command::Cic { views, out } => emit(&[cic(views)?], &s, out_dir(out))?,
        Command::Stats(StatsCmd::Reference(o)) => emit(&[stats_reference()], &s, out_dir(o))?,
        Command::Stats(StatsCmd::Stellar { pts, rule, ratio, mc_samples, out }) => {
            let t = stats_stellar(pts, &rule, ratio, mc_samples, s.seed)?;
            emit(&[t], &s, out_dir(out))?
        }
        Command::Balance(BalanceCmd::Solve { hz, ne }) => balance_solve(hz, ne)?,
        Command::Balance(BalanceCmd::Table(o)) => emit(&[balance_table(&s)?], &s, out_dir(o))?,
        Command::Codec(c) => codec_cmd(c, &s)?,
        Command::Report { tables, all, strict, list, out } => {
            return run_report(&tables, all, strict || s.strict, list, &s, out_dir(out));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn spec(id: &str) -> Result<&'static TableSpec, Failure> {
    report::find(id).ok_or_else(|| {
        let ids: Vec<&str> = report::TABLES.iter().map(|t| t.id).collect();
        Failure::Usage(format!("unknown table '{id}'; known: {}", ids.join(", ")))
    })
}

fn emit(tables: &[Table], s: &Settings, out: Option<PathBuf>) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            for t in tables {
                let path = dir.join(format!("{}.{}", t.name, s.format.extension()));
                fs::write(&path, t.render(s.format)?).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    writeln!(stdout)?;
                }
                stdout.write_all(t.render(s.format)?.as_bytes())?;
            }
        }
    }
    Ok(())
}

/// `match`, or the cells under `prefix` that are not matches.
fn agreement(rows: &[ReportRow], prefix: &str) -> String {
    let off: Vec<String> = rows
        .iter()
        .filter(|r| r.cell.starts_with(prefix) && r.status != Status::Match && r.status != Status::DerivedOnly)
        .map(|r| {
            format!("{} {}: computed {} vs {}", r.status.label(), r.cell, r.computed, r.published.as_deref().unwrap_or("-"))
        })
        .collect();
    if off.is_empty() {
        "match".into()
    } else {
        off.join("; ")
    }
}

fn variants(s: &Settings) -> Result<Table> {
    let rows = report::evaluate(spec("P1.TII").map_err(usage)?, s.tolerance)?;
    let mut t = Table::new(
        "variants",
        "P1.TII: multiplexing variants, N_C = 64, minimum echo duration n_e per modulus E",
        &["N_C", "N_R", "N_E", "GCD", "E_max", "E=2", "E=4", "E=8", "E=16", "E=32", "E=64", "agreement"],
    );
    for v in mux::variant_rows() {
        let mut row = vec![v.n_c.to_string(), v.n_r.to_string(), v.n_e.to_string(), v.gcd.to_string(), v.e_max.to_string()];
        row.extend(v.echo_table.iter().map(|(_, n)| n.map(|x| x.to_string()).unwrap_or_default()));
        row.push(agreement(&rows, &format!("NE{}.", v.n_e)));
        t.push(row);
    }
    Ok(t)
}

fn usage(f: Failure) -> anyhow::Error {
    match f {
        Failure::Usage(m) => anyhow!(m),
        Failure::Run(e) => e,
    }
}

fn symmetries(s: &Settings) -> Result<Table> {
    let cat = balance::build_catalog();
    let rep = cat.verify().map_err(|e| anyhow!(e))?;
    let rows = report::evaluate(spec("P3.TXI").map_err(usage)?, s.tolerance)?;
    let mut t = Table::new(
        "symmetries",
        format!("P3.TXI: symmetry groups and repeat effects over {} points", rep.total_points),
        &["group", "size", "members", "dH_y", "dH_x", "pages", "dH_z", "agreement"],
    );
    for (g, e) in &rep.effects {
        let members = rep.member_counts.iter().find(|m| m.0 == *g).map_or(0, |m| m.1);
        t.push(vec![
            g.label().into(),
            g.size().to_string(),
            members.to_string(),
            e.dh_y.to_string(),
            e.dh_x.to_string(),
            report::page_pattern(&e.dh_page),
            e.dh_z.to_string(),
            agreement(&rows, &format!("{}.", g.label())),
        ]);
    }
    Ok(t)
}

fn gains() -> Result<Vec<Table>> {
    let mut sel = Table::new(
        "gains_2d_pam5",
        "P4.TIV, P4.TVIII, P4.TIX: 2D-PAM5 selection gains in dB",
        &["selection", "points", "delta_min", "G_delta", "angle_min", "G_rho", "radial_min", "G_p"],
    );
    for g in analyze_2d_pam5() {
        sel.push(vec![
            g.selection.label().into(),
            g.points.to_string(),
            num(g.delta_min, 4),
            num(g.g_delta, 4),
            opt(g.angle_min, 4),
            opt(g.g_rho, 4),
            opt(g.radial_min, 4),
            opt(g.g_p, 4),
        ]);
    }
    let mut sch = Table::new("gains_schemes", "P4.TX: 2D-PAM5 coding variants, floored dB", &["scheme", "G_delta", "G_rho", "G_p", "total"]);
    for c in coding_schemes() {
        sch.push(vec![c.name.into(), num(c.g_delta, 3), opt(c.g_rho, 3), opt(c.g_p, 3), num(c.total, 3)]);
    }
    let mut ideal = Table::new(
        "gains_ideal",
        "P4.TXV: ideal two-orbit partitioning, R = 1",
        &["pts_D:P:Q", "dphi", "r", "page_delta", "page_G_delta", "page_G_phi", "page_G_rho", "dict_delta", "dict_G_delta"],
    );
    for p in 2..=8 {
        let r = ideal_stellar_table(p)?;
        ideal.push(vec![
            format!("{}:{}:{}", r.dictionary_points, r.page_points, p),
            num(r.dphi, 6),
            num(r.ratio, 3),
            num(r.page_delta, 3),
            num(r.page_g_delta, 3),
            num(r.page_g_phi, 3),
            num(r.page_g_rho, 3),
            num(r.dict_delta, 3),
            num(r.dict_g_delta, 3),
        ]);
    }
    Ok(vec![sel, sch, ideal])
}

fn sphere(m: usize, max_dim: usize) -> Result<Table> {
    let scan = limit_scan(m, max_dim)?;
    let mut t = Table::new(
        format!("sphere_pam{m}"),
        format!("P6.TVII, P6.TVIII: PAM{m} grid limits, n_TX = {}, n_RX = {}", scan.n_tx, scan.n_rx),
        &["n", "surface", "surface_pct", "ball_surface", "volume", "volume_pct", "ball_volume"],
    );
    let (sp, vp) = (scan.surface_percent(), scan.volume_percent());
    for i in 0..max_dim {
        t.push(vec![
            (i + 1).to_string(),
            num(scan.surface[i], 2),
            num(sp[i], 1),
            num(unit_ball_surface(i + 1), 2),
            num(scan.volume[i], 2),
            num(vp[i], 1),
            num(unit_ball_volume(i + 1), 2),
        ]);
    }
    Ok(t)
}

fn cic(views: usize) -> Result<Table> {
    if views < 4 || views % 4 != 0 {
        bail!("--views must be a positive multiple of 4, got {views}");
    }
    let top = views / 4;
    let mut cols = vec!["cd\\ab".to_string()];
    cols.extend((0..=top).map(|k| format!("class {k}")));
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = Table::new(
        format!("cic_{views}"),
        format!("P7.TII: jump gain in dB and invariance by per-plane move class, N = {views}"),
        &col_refs,
    );
    let m = cic_gain_matrix(views);
    for cd in 0..=top {
        let mut row = vec![format!("class {cd}")];
        for ab in 0..=top {
            let c = m.iter().find(|c| c.ab_class == ab && c.cd_class == cd).expect("full matrix");
            let g = c.gain.map(|g| num(g, 2)).unwrap_or_else(|| "-".into());
            row.push(format!("{g} {}", c.invariance.alias()));
        }
        t.push(row);
    }
    Ok(t)
}

const STATS_COLUMNS: [&str; 17] = [
    "constellation", "G_J", "mean", "sigma", "min", "max", "span", "w_mean", "w_sigma", "w_min", "w_max", "c_mean",
    "c_sigma", "c_min", "c_max", "c_span", "c_mean_stderr",
];

fn stats_row(name: String, gain: Option<f64>, r: &stats::StatsReport, stderr: Option<f64>) -> Vec<String> {
    let mut row = vec![name, opt(gain, 3)];
    let m = |x: &stats::Moments| vec![num(x.mean, 4), num(x.sigma, 4), num(x.peak_min, 4), num(x.peak_max, 4)];
    row.extend(m(&r.power));
    row.push(num(r.power.span(), 4));
    match &r.wobble {
        Some(w) => row.extend(m(w)),
        None => row.extend(std::iter::repeat("n/a".to_string()).take(4)),
    }
    row.extend(m(&r.change));
    row.push(num(r.change.span(), 4));
    row.push(opt(stderr, 5));
    row
}

fn stats_reference() -> Table {
    let mut t = Table::new("stats_reference", "P5.TXII: MDI output statistics, reference 1000BASE-T process", &STATS_COLUMNS);
    t.push(stats_row("reference".into(), None, &stats::reference_stats(), None));
    t
}

fn stats_stellar(pts: f64, rule: &str, ratio: f64, mc: Option<usize>, seed: Option<u64>) -> Result<Table, Failure> {
    let rule = report::rule_cell(rule).map_err(|e| Failure::Usage(e.to_string()))?;
    let spec = StellarSpec::from_points(pts, ratio).map_err(|e| Failure::Usage(e.to_string()))?;
    let name = format!("{pts} pts/P/Q, {rule}, ratio {ratio}");
    let mut t = Table::new(
        "stats_stellar",
        format!("P5.TXII: MDI output statistics, ideal two-orbit constellation, {} views", spec.views),
        &STATS_COLUMNS,
    );
    match mc {
        Some(n) => {
            let seed = seed.ok_or_else(|| Failure::Usage("--mc-samples needs --seed".into()))?;
            let (r, se) = stats::monte_carlo_stats(&spec, rule, n, Some(seed)).map_err(anyhow::Error::from)?;
            t.push(stats_row(format!("{name}, sampled"), rule.gain(&spec), &r, Some(se)));
        }
        None => {
            let d = stats::dynamic_stats(&spec, rule).map_err(anyhow::Error::from)?;
            t.push(stats_row(name, d.gain_j, &d.report, None));
        }
    }
    Ok(t)
}

#[derive(serde::Serialize)]
struct SolveOutput {
    solution: balance::BalanceSolution,
    repeats: Vec<(String, Vec<u64>)>,
    verification: balance::Verification,
}

fn balance_solve(hz: u64, ne: u64) -> Result<()> {
    let solution = balance::solve(hz, ne)?;
    let verification = balance::verify(&solution, ne);
    let repeats = balance::Group::ALL
        .iter()
        .zip(solution.sums)
        .map(|(g, s)| (g.label().to_string(), balance::member_repeats(s, g.members())))
        .collect();
    let out = SolveOutput { solution, repeats, verification };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn balance_table(s: &Settings) -> Result<Table> {
    let rows = report::evaluate(spec("P3.TXVIII").map_err(usage)?, s.tolerance)?;
    let mut cols = vec!["H_z", "H_y", "H_x", "H_page", "unbalance", "p_y", "p_x"];
    let labels: Vec<String> = balance::Group::ALL.iter().map(|g| format!("sum {}", g.label())).collect();
    cols.extend(labels.iter().map(String::as_str));
    cols.push("agreement");
    let mut t = Table::new("balance", "P3.TXV, P3.TXVIII: balancing examples with N_E = 72", &cols);
    for hz in report::BALANCE_TARGETS {
        let sol = balance::solve(hz, 72)?;
        let v = balance::verify(&sol, 72);
        let mut row = vec![
            hz.to_string(),
            sol.h_y.to_string(),
            sol.h_x.to_string(),
            sol.h_page.to_string(),
            sol.unbalance.to_string(),
            num(v.p_y, 5),
            num(v.p_x, 5),
        ];
        row.extend(sol.sums.iter().map(|x| x.to_string()));
        row.push(agreement(&rows, &format!("Hz{hz}.")));
        t.push(row);
    }
    Ok(t)
}

fn run_report(ids: &[String], all: bool, strict: bool, list: bool, s: &Settings, out: Option<PathBuf>) -> Result<ExitCode, Failure> {
    if list {
        for t in &report::TABLES {
            println!("{}\t{}", t.id, t.title);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let specs: Vec<&TableSpec> = if all {
        report::TABLES.iter().collect()
    } else if ids.is_empty() {
        return Err(Failure::Usage("report needs --table ID or --all".into()));
    } else {
        ids.iter().map(|id| spec(id)).collect::<Result<_, _>>()?
    };
    let mut tables = Vec::new();
    let mut counts = Vec::new();
    for sp in specs {
        let rows = report::evaluate(sp, s.tolerance)?;
        counts.push((sp, report::Counts::of(&rows)));
        tables.push(report::rows_table(sp, &rows));
    }
    if all {
        tables.push(report::summary_table(&counts));
    }
    emit(&tables, s, out)?;
    let bad: usize = counts.iter().map(|(_, c)| c.mismatched).sum();
    if strict && bad > 0 {
        eprintln!("strict: {bad} mismatched cell(s)");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn scramble_cfg(no_scramble: bool, seed: Option<u64>) -> ScrambleConfig {
    let d = ScrambleConfig::default();
    ScrambleConfig { enabled: !no_scramble, seed: seed.unwrap_or(d.seed), ..d }
}

fn write_or_stdout(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().lock().write_all(bytes)?),
    }
}

fn sidecar(out: Option<&Path>, explicit: Option<PathBuf>) -> Option<PathBuf> {
    explicit.or_else(|| {
        out.map(|p| {
            let mut s = p.as_os_str().to_owned();
            s.push(".events.json");
            PathBuf::from(s)
        })
    })
}

fn codec_cmd(c: CodecCmd, s: &Settings) -> Result<(), Failure> {
    match c {
        CodecCmd::Encode { input, events, out, events_out, stretch_head, stretch_tail, burst, scramble } => {
            let octets = fs::read(&input).with_context(|| format!("reading {}", input.display()))?;
            let pattern = FramePattern::new(stretch_head, stretch_tail).map_err(|e| Failure::Usage(e.to_string()))?;
            let requested: Vec<u64> = match &events {
                Some(p) => {
                    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                    wordfile::read_events(&text).map_err(anyhow::Error::from)?.iter().map(|e| e.word_index).collect()
                }
                None => Vec::new(),
            };
            let gap = codec::min_gap(pattern) as usize;
            let mut slots = Vec::with_capacity(octets.len());
            for (i, chunk) in octets.chunks(burst.unwrap_or(u64::MAX).min(usize::MAX as u64) as usize).enumerate() {
                if i > 0 {
                    slots.extend(std::iter::repeat(None).take(gap));
                }
                slots.extend(chunk.iter().map(|&b| Some(b)));
            }
            let cfg = scramble_cfg(scramble.no_scramble, s.seed);
            let (words, stats) = codec::encode_stream(&slots, &requested, pattern, &cfg).map_err(anyhow::Error::from)?;
            write_or_stdout(out.as_deref(), wordfile::write_words(&words).as_bytes())?;
            let accepted: Vec<EventRecord> =
                stats.accepted.iter().map(|&w| EventRecord { word_index: w, train_type: None }).collect();
            if let Some(p) = sidecar(out.as_deref(), events_out) {
                fs::write(&p, wordfile::write_events(&accepted) + "\n").with_context(|| format!("writing {}", p.display()))?;
            }
            eprintln!(
                "encoded {} octets into {} words; events accepted {}, dropped {}",
                octets.len(),
                words.len(),
                accepted.len(),
                stats.dropped
            );
        }
        CodecCmd::Decode { input, out, events_out, scramble } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let words = wordfile::read_words(&text).map_err(anyhow::Error::from)?;
            let mut dec = Decoder::new(&scramble_cfg(scramble.no_scramble, s.seed)).map_err(anyhow::Error::from)?;
            let mut octets = Vec::new();
            let mut events = Vec::new();
            for w in words {
                let o = dec.decode(w).map_err(anyhow::Error::from)?;
                octets.extend(o.octets);
                events.extend(o.events);
            }
            octets.extend(dec.finish().map_err(anyhow::Error::from)?);
            write_or_stdout(out.as_deref(), &octets)?;
            if let Some(p) = sidecar(out.as_deref(), events_out) {
                fs::write(&p, wordfile::write_events(&events) + "\n").with_context(|| format!("writing {}", p.display()))?;
            }
            eprintln!("decoded {} octets, {} events", octets.len(), events.len());
        }
    }
    Ok(())
}
