//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.

use gbmux::balance::{self, Group};
use gbmux::codec::{self, Decoder, Encoder, FramePattern, ScrambleConfig};
use gbmux::pam::{nap_statistics, DesignProfile};
use gbmux::stellar::arrange::{arrange_spec, grid_arrange, ideal_powers};
use gbmux::stellar::jump::{cic_gain_matrix, effective_ladder, jump_gain_limits, JumpRule, Orbit, StellarSpec};
use gbmux::stellar::pam2d::{analyze_2d_pam5, coding_schemes, Selection};
use gbmux::stellar::sphere::{grid_surface, grid_volume, levels, limit_scan};
use gbmux::{mux, stats};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

const GAIN_TOL_DB: f64 = 0.05;
const LIMIT_TOL_DB: f64 = 1e-4;
const NAP_TOL: f64 = 0.005;
const NAP_RATIO_TOL_PP: f64 = 0.1;
const SPHERE_TOL: f64 = 0.05;
const MDI_IDEAL_TOL: f64 = 0.001;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn c1_multiplexing_table() -> Outcome {
    let start = Instant::now();
    // N_R, GCD, E_max, n_e for E = 2, 4, ...
    let table: [(u64, u64, u64, &[u32]); 8] = [
        (1, 1, 64, &[45, 90, 135, 179, 224, 267]),
        (2, 2, 32, &[23, 46, 68, 91, 113]),
        (4, 4, 16, &[12, 23, 35, 46]),
        (6, 2, 16, &[8, 16, 24, 31]),
        (8, 8, 8, &[6, 12, 18]),
        (10, 2, 8, &[5, 10, 15]),
        (12, 4, 8, &[5, 9, 13]),
        (14, 2, 8, &[4, 8, 11]),
    ];
    let mut flagged = Vec::new();
    for (nr, gcd, e_max, ne) in table {
        let v = mux::variant(64, nr).map_err(|e| e.to_string())?;
        ensure(v.gcd == gcd && v.e_max == e_max, || format!("N_R={nr}: gcd/E_max {}/{}", v.gcd, v.e_max))?;
        let computed: Vec<u32> = v.echo_table.iter().filter_map(|(_, n)| *n).collect();
        ensure(computed.len() == ne.len(), || format!("N_R={nr}: {} cells vs {}", computed.len(), ne.len()))?;
        for (i, (&c, &p)) in computed.iter().zip(ne).enumerate() {
            let e = 2u64 << i;
            if nr == 1 && e == 64 {
                ensure(c == 269 && p == 267, || format!("flag cell moved: {c} vs {p}"))?;
                flagged.push(format!("(65, E=64) computed {c} vs printed {p}"));
                continue;
            }
            ensure(c == p, || format!("N_R={nr} E={e}: {c} vs {p}"))?;
        }
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("8 rows exact; flagged {}", flagged.join(", ")))
}

fn c2_redundancy() -> Outcome {
    let start = Instant::now();
    // f * 8^n against 9^n
    let main: [(u64, u32, &str, bool); 17] = [
        (8, 4, "32768", false), (4, 4, "16384", false), (2, 4, "8192", false),
        (8, 5, "262144", false), (4, 5, "131072", false), (2, 5, "65536", false),
        (8, 6, "2097152", false), (4, 6, "1048576", false), (2, 6, "524288", true),
        (8, 10, "8589934592", false), (4, 10, "4294967296", false),
        (8, 11, "68719476736", false), (4, 11, "34359738368", false),
        (8, 12, "549755813888", false), (4, 12, "274877906944", true),
        (8, 16, "2251799813685248", false), (8, 17, "18014398509481984", false),
    ];
    for (f, n, lhs, holds) in main {
        let c = mux::capacity_check(f, n, 8, 9);
        ensure(c.lhs.to_string() == lhs && c.holds == holds, || format!("{f}*8^{n}: {} {}", c.lhs, c.holds))?;
    }
    let top = mux::capacity_check(8, 18, 8, 9);
    ensure(
        top.holds && top.lhs.to_string() == "144115188075855872" && top.rhs.to_string() == "150094635296999121",
        || "8*8^18 vs 9^18".into(),
    )?;
    let six = mux::capacity_check(2, 6, 8, 9);
    ensure(six.rhs.to_string() == "531441", || "9^6 string".into())?;
    // carried values 2^k against the next capacity 9^m
    let carried: [(u32, u32, &str, bool); 14] = [
        (16, 5, "65536", false), (17, 5, "131072", false),
        (19, 6, "524288", true), (20, 6, "1048576", false),
        (34, 11, "17179869184", true), (35, 11, "34359738368", false),
        (37, 12, "137438953472", true), (38, 12, "274877906944", true),
        (52, 17, "4503599627370496", true), (53, 17, "9007199254740992", true),
        (55, 18, "36028797018963968", true), (56, 18, "72057594037927936", true),
        (33, 11, "8589934592", true), (36, 12, "68719476736", true),
    ];
    for (k, m, s, below) in carried {
        let lhs = BigUint::from(2u8).pow(k);
        let rhs = BigUint::from(9u8).pow(m);
        ensure(lhs.to_string() == s && (lhs < rhs) == below, || format!("2^{k} vs 9^{m}"))?;
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("{} verdicts exact", main.len() + carried.len() + 1))
}

fn c3_codec_roundtrip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pattern = FramePattern::new(1, 1).map_err(|e| e.to_string())?;
    let gap = codec::min_gap(pattern) as usize;
    let mut slots = Vec::new();
    let mut sent = 0usize;
    while sent < 1_000_000 {
        let n = rng.gen_range(1..1500).min(1_000_000 - sent);
        slots.extend((0..n).map(|_| Some(rng.gen::<u8>())));
        sent += n;
        slots.extend(std::iter::repeat(None).take(gap + rng.gen_range(0..8)));
    }
    let cfg = ScrambleConfig::default();
    let mut enc = Encoder::new(pattern, &cfg).map_err(|e| e.to_string())?;
    let mut dec = Decoder::new(&cfg).map_err(|e| e.to_string())?;
    let input: Vec<u8> = slots.iter().flatten().copied().collect();
    let arrival: Vec<u64> = (0..slots.len() as u64).filter(|&t| slots[t as usize].is_some()).collect();
    let (mut on_wire, mut out, mut out_at, mut events) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for t in 0..slots.len() as u64 + enc.flush_len() {
        let ev = rng.gen_bool(0.02);
        let w = enc.push(slots.get(t as usize).copied().flatten(), ev).map_err(|e| e.to_string())?;
        if w.kind.is_data() {
            on_wire.push(t);
        }
        let o = dec.decode(w).map_err(|e| format!("decode at {t}: {e}"))?;
        for b in o.octets {
            out.push(b);
            out_at.push(t);
        }
        events.extend(o.events.iter().map(|e| e.word_index));
    }
    let tail = dec.finish().map_err(|e| e.to_string())?;
    out_at.extend(std::iter::repeat(u64::MAX).take(tail.len()));
    out.extend(tail);
    let stats = enc.into_stats();
    ensure(out == input, || "octet stream differs".into())?;
    ensure(events == stats.accepted, || "event positions differ".into())?;
    ensure(stats.accepted.len() > 1000, || "too few events accepted".into())?;
    ensure(stats.accepted.windows(2).all(|w| w[1] - w[0] >= codec::EVENT_CYCLE), || "event spacing".into())?;
    ensure(arrival.iter().zip(&on_wire).all(|(a, w)| w - a == 6), || "encode latency != 6".into())?;
    // clear path: octets on words far from any noted word
    let mut clear = 0usize;
    let mut next_ev = 0usize;
    for (i, &w) in on_wire.iter().enumerate() {
        while next_ev + 1 < stats.accepted.len() && stats.accepted[next_ev + 1] <= w {
            next_ev += 1;
        }
        let recent = stats.accepted.get(next_ev).is_some_and(|&e| e <= w && w - e < 3 * codec::EVENT_CYCLE);
        if !recent {
            ensure(out_at[i] - w == codec::DECODE_DELAY, || format!("decode latency {} at word {w}", out_at[i] - w))?;
            clear += 1;
        }
        ensure(out_at[i] >= w + codec::DECODE_DELAY, || "octet released early".into())?;
    }
    ensure(clear > 100_000, || format!("only {clear} clear-path octets"))?;
    within(Duration::from_secs(30), start)?;
    Ok(format!("{} octets, {} events, {clear} clear-path octets at 6+7", input.len(), stats.accepted.len()))
}

fn c4_nap() -> Outcome {
    // P0, even pages, odd pages, mean, sigma, variance, sigma/mean %
    let printed = [
        ("original", [0.56, 0.46, 0.48, 0.48, 0.03, 0.001, 6.56]),
        ("draft", [0.57, 0.46, 0.49, 0.49, 0.04, 0.001, 7.25]),
        ("extensive", [0.60, 0.46, 0.50, 0.50, 0.04, 0.002, 8.60]),
        ("proposed", [0.61, 0.46, 0.51, 0.50, 0.05, 0.002, 9.58]),
    ];
    let mut worst: f64 = 0.0;
    for (name, p) in printed {
        let profile = DesignProfile::by_name(name).map_err(|e| e.to_string())?;
        let s = nap_statistics(&profile).map_err(|e| e.to_string())?;
                let got = [
            s.per_page[0],
            s.per_page[2],
            s.per_page[1],
            gbmux::pam::to_f64(s.mean),
            s.sigma,
            gbmux::pam::to_f64(s.variance),
        ];
        ensure(s.per_page[2] == s.per_page[4] && s.per_page[4] == s.per_page[6], || "even pages differ".into())?;
        ensure(s.per_page[1] == s.per_page[7], || "odd pages differ".into())?;
        for (i, (g, w)) in got.iter().zip(&p[..6]).enumerate() {
            let d = (g - w).abs();
            worst = worst.max(d);
            ensure(d <= NAP_TOL, || format!("{name} field {i}: {g:.4} vs {w}"))?;
        }
        let pct = 100.0 * s.ratio;
        ensure((pct - p[6]).abs() <= NAP_RATIO_TOL_PP, || format!("{name} sigma/mean {pct:.3}% vs {}%", p[6]))?;
    }
    Ok(format!("4 designs, worst deviation {worst:.4}"))
}

fn c5_symmetries() -> Outcome {
    let cat = balance::build_catalog();
    let rep = cat.verify()?;
    ensure(rep.total_points == 625 && rep.distinct, || format!("{} points", rep.total_points))?;
    // dY, dX, page pattern (P0 / odd / even), per-page amount, dZ
    let table: [(Group, u32, u32, &str, u32, u32); 7] = [
        (Group::S2, 0, 1, "p0", 2, 2),
        (Group::S3, 1, 0, "p0", 3, 3),
        (Group::S8, 2, 1, "odd", 2, 8),
        (Group::S16, 4, 2, "odd", 4, 16),
        (Group::S24Even, 4, 6, "even", 8, 24),
        (Group::S24Ten, 6, 3, "odd", 6, 24),
        (Group::S24Odd, 2, 9, "odd", 6, 24),
    ];
    for (g, dy, dx, pages, amount, dz) in table {
        let (_, row) = rep.effects.iter().find(|(x, _)| *x == g).ok_or("missing group")?;
        let want: [u32; 8] = std::array::from_fn(|p| {
            let hit = match pages {
                "p0" => p == 0,
                "odd" => p % 2 == 1,
                _ => p != 0 && p % 2 == 0,
            };
            if hit { amount } else { 0 }
        });
        ensure(
            row.dh_y == dy && row.dh_x == dx && row.dh_page == want && row.dh_z == dz,
            || format!("{}: {row:?}", g.label()),
        )?;
        let members = rep.member_counts.iter().find(|(x, _)| *x == g).map(|m| m.1);
        ensure(members == Some(g.members()), || format!("{} member count", g.label()))?;
    }
    Ok("625 points partitioned, 7 effect rows exact".into())
}

fn c6_balancing() -> Outcome {
    let t = Instant::now();
    let a = balance::solve(576, 72).map_err(|e| e.to_string())?;
    within(Duration::from_secs(10), t)?;
    let v = balance::verify(&a, 72);
    ensure(v.violations.is_empty(), || format!("{:?}", v.violations))?;
    ensure(a.h_page == 72 && a.unbalance.abs() <= 2, || format!("{a:?}"))?;
    ensure((a.h_y, a.h_x) == (116, 114), || format!("576: {}:{}", a.h_y, a.h_x))?;
    let t = Instant::now();
    let b = balance::solve(640, 72).map_err(|e| e.to_string())?;
    within(Duration::from_secs(10), t)?;
    ensure(balance::verify(&b, 72).violations.is_empty(), || "640 infeasible".into())?;
    ensure((b.h_y, b.h_x, b.unbalance) == (128, 128, 0), || format!("640: {}:{}", b.h_y, b.h_x))?;
    Ok("576 -> 116:114 (H_page 72), 640 -> 128:128".into())
}

fn c7_subscrambler() -> Outcome {
    let rows: [(u32, [(u32, f64); 4]); 2] = [
        (5, [(3, 0.40), (4, 0.30), (5, 0.10), (6, 0.07)]),
        (9, [(4, 0.50), (5, 0.20), (6, 0.15), (7, 0.06)]),
    ];
    let mut shown = Vec::new();
    for (base, bounds) in rows {
        ensure(balance::anchor_error(base) == 0.0, || "anchor not exact".into())?;
        for (k, bound) in bounds {
            let e = balance::subscrambler_error(k, base).map_err(|e| e.to_string())?;
            ensure(e < bound, || format!("base {base}, 2^{k}: {e} >= {bound}"))?;
            shown.push(format!("{base}/2^{k}={:.3}%", 100.0 * e));
        }
    }
    ensure((balance::subscrambler_error(7, 9).unwrap() - 0.0546875).abs() < 1e-12, || "base-9/2^7".into())?;
    Ok(shown.join(" "))
}

fn c8_gains() -> Outcome {
    let rows = analyze_2d_pam5();
    let get = |s: Selection| rows.iter().find(|r| r.selection == s).unwrap().clone();
    let checks = [
        ("pagelet G_delta", get(Selection::PageletYy).g_delta, 6.0206),
        ("page G_delta", get(Selection::PageP0).g_delta, 3.789),
        ("dictionary G_delta", get(Selection::Dictionary).g_delta, 2.4988),
        ("YY G_rho", get(Selection::PageletYy).g_rho.unwrap_or(f64::NAN), 1.1598),
        ("XX G_rho", get(Selection::PageletXx).g_rho.unwrap_or(f64::NAN), 2.5),
        ("YX G_rho", get(Selection::PageletYx).g_rho.unwrap_or(f64::NAN), 1.4),
        ("P1 G_rho", get(Selection::PageP1).g_rho.unwrap_or(f64::NAN), 0.665),
        ("YY G_p", get(Selection::PageletYy).g_p.unwrap_or(f64::NAN), 1.4),
        ("YX G_p", get(Selection::PageletYx).g_p.unwrap_or(f64::NAN), 2.141),
        ("P0 G_p", get(Selection::PageP0).g_p.unwrap_or(f64::NAN), 0.9),
        ("dictionary G_p", get(Selection::Dictionary).g_p.unwrap_or(f64::NAN), 0.4),
    ];
    for (name, got, want) in checks {
        ensure((got - want).abs() <= GAIN_TOL_DB, || format!("{name}: {got:.4} vs {want}"))?;
    }
    ensure(get(Selection::PageP0).g_rho.is_none() && get(Selection::PageletXx).g_p.is_none(), || "missing measure present".into())?;
    let totals: Vec<f64> = coding_schemes().iter().map(|s| s.total).collect();
    for (got, want) in totals.iter().zip([3.534, 3.789, 6.596, 2.498]) {
        ensure((got - want).abs() <= GAIN_TOL_DB, || format!("scheme total {got} vs {want}"))?;
    }
    let (single, double) = jump_gain_limits();
    ensure((single - 2.498775).abs() <= LIMIT_TOL_DB, || format!("single limit {single}"))?;
    ensure((double - 3.789347).abs() <= LIMIT_TOL_DB, || format!("double limit {double}"))?;
    Ok(format!("{} entries, schemes {totals:?}, limits {single:.6}/{double:.6}", checks.len()))
}

fn c9_cic() -> Outcome {
    let want = [
        ((1, 0), 0.6), ((2, 0), 1.2), ((3, 0), 1.8), ((4, 0), 2.5),
        ((1, 1), 0.8), ((2, 1), 1.3), ((3, 1), 1.9), ((4, 1), 2.6),
        ((2, 2), 1.7), ((3, 2), 2.2), ((4, 2), 2.8),
        ((3, 3), 2.7), ((4, 3), 3.3), ((4, 4), 3.8),
    ];
    let m = cic_gain_matrix(16);
    let mut checked = 0;
    for ((a, c), g) in want {
        for (x, y) in [(a, c), (c, a)] {
            let cell = m.iter().find(|k| k.ab_class == x && k.cd_class == y).ok_or("missing cell")?;
            let got = cell.gain.ok_or("null cell")?;
            ensure((got - g).abs() <= GAIN_TOL_DB, || format!("({x},{y}): {got:.3} vs {g}"))?;
            checked += 1;
        }
    }
    ensure(m.iter().find(|k| k.ab_class == 0 && k.cd_class == 0).unwrap().gain.is_none(), || "null jump has gain".into())?;
    Ok(format!("{checked} cells within {GAIN_TOL_DB} dB"))
}

fn brute(n: usize, m: usize) -> (u128, u128) {
    let lv = levels(m);
    let r2 = grid_volume(n, m).r_test_sq as i64;
    let (mut ns, mut no) = (0, 0);
    for mut idx in 0..m.pow(n as u32) {
        let mut s = 0;
        for _ in 0..n {
            s += lv[idx % m] * lv[idx % m];
            idx /= m;
        }
        if s == r2 {
            ns += 1;
        } else if s < r2 {
            no += 1;
        }
    }
    (ns, no)
}

fn c10_sphere() -> Outcome {
    let spots = [
        ("S(4,17)", grid_surface(4, 17).map_err(|e| e.to_string())?, 19.80),
        ("S(7,17)", grid_surface(7, 17).map_err(|e| e.to_string())?, 33.00),
        ("V(3,17)", grid_volume(3, 17).volume, 4.20),
        ("V(5,17)", grid_volume(5, 17).volume, 5.28),
        ("V(3,4)", grid_volume(3, 4).volume, 4.39),
        ("V(3,3)", grid_volume(3, 3).volume, 4.43),
    ];
    for (name, got, want) in spots {
        ensure((got - want).abs() <= SPHERE_TOL, || format!("{name}: {got:.3} vs {want}"))?;
    }
    let scan = limit_scan(17, 10).map_err(|e| e.to_string())?;
    ensure((scan.n_tx, scan.n_rx) == (7, 5), || format!("peaks {} / {}", scan.n_tx, scan.n_rx))?;
    for n in 1..=3 {
        for m in 2..=9 {
            let e = grid_volume(n, m);
            ensure(brute(n, m) == (e.n_s, e.n_o), || format!("counts n={n} M={m}"))?;
        }
    }
    let t = Instant::now();
    for m in 2..=32 {
        limit_scan(m, 10).map_err(|e| e.to_string())?;
    }
    within(Duration::from_secs(10), t)?;
    Ok(format!("spot values within {SPHERE_TOL}, n_TX=7 n_RX=5, DP = brute force"))
}

fn c11_mdi() -> Outcome {
    let r = stats::reference_stats();
    ensure((0.3120..=0.3128).contains(&r.power.mean), || format!("mu {}", r.power.mean))?;
    ensure((0.1505..=0.1515).contains(&r.power.sigma), || format!("sigma {}", r.power.sigma))?;
    ensure(r.change.mean == 0.109375, || format!("c_mu {}", r.change.mean))?;
    ensure(r.change.peak_max == 0.5625, || format!("cPk+ {}", r.change.peak_max))?;
    ensure(r.power.peak_min == 0.0 && r.power.peak_max == 1.0, || "power peaks".into())?;
    let spec = StellarSpec::new(16, 0.630).map_err(|e| e.to_string())?;
    let d = stats::dynamic_stats(&spec, JumpRule::STATIC).map_err(|e| e.to_string())?;
    ensure((d.report.power.mean - 0.349).abs() <= MDI_IDEAL_TOL, || format!("ideal mu {}", d.report.power.mean))?;
    ensure(d.report.power.sigma == 0.0, || "ideal sigma".into())?;
    ensure(d.report.wobble == Some(stats::Moments::ZERO), || "ideal wobble (chain)".into())?;
    let (_, w) = stats::wobble_stats(&spec, &ideal_powers(&spec)).map_err(|e| e.to_string())?;
    ensure(w == stats::Moments::ZERO, || "ideal wobble (outline)".into())?;
    Ok(format!(
        "reference mu={:.5} sigma={:.5} c_mu={} cPk+={}; ideal mu={:.4}",
        r.power.mean, r.power.sigma, r.change.mean, r.change.peak_max, d.report.power.mean
    ))
}

fn c12_properties() -> Outcome {
    // arrangement: angular order and radial error on the PAM17 plane
    let mut worst: f64 = 0.0;
    for n in [16usize, 18, 20, 22, 24] {
        let spec = StellarSpec::new(n, 0.7).map_err(|e| e.to_string())?;
        let high: Vec<_> = spec.rooms().into_iter().filter(|r| r.orbit == Orbit::High).collect();
        let o = grid_arrange(&high, 8).map_err(|e| e.to_string())?;
        ensure(o.keeps_angular_order(&(0..n).collect::<Vec<_>>()), || format!("order lost, N={n}"))?;
        ensure(o.max_radial_error() <= 0.5f64.sqrt(), || format!("radial error {}", o.max_radial_error()))?;
        worst = worst.max(o.max_radial_error());
        if let Ok(full) = arrange_spec(&spec, 8) {
            ensure(full.max_radial_error() <= 0.5f64.sqrt(), || "two-orbit radial error".into())?;
        }
    }
    let typical = {
        let spec = StellarSpec::new(20, 0.7).unwrap();
        let high: Vec<_> = spec.rooms().into_iter().filter(|r| r.orbit == Orbit::High).collect();
        let o = grid_arrange(&high, 8).unwrap();
        o.rooms.iter().map(|r| r.radial_error).sum::<f64>() / o.rooms.len() as f64
    };
    ensure(typical < 0.4, || format!("typical radial error {typical}"))?;
    // excluded transits lift the change floor
    let spec = StellarSpec::from_points(5.0, 0.6986).map_err(|e| e.to_string())?;
    for rule in [JumpRule::one_way(1), JumpRule::two_way(1)] {
        let d = stats::dynamic_stats(&spec, rule).map_err(|e| e.to_string())?;
        ensure(d.report.change.peak_min > 0.0, || format!("{rule}: cPk- = 0"))?;
    }
    let gjp = stats::dynamic_stats(&spec, JumpRule::two_way(1)).unwrap().report.change.peak_min;
    ensure((gjp - 0.009).abs() < 0.0015, || format!("GJ+ cPk- {gjp}"))?;
    // ladders
    let sizes = |n| effective_ladder(n).iter().map(|e| e.per_page).collect::<Vec<_>>();
    ensure(sizes(10) == vec![100, 90, 81, 72, 64], || format!("5 pts {:?}", sizes(10)))?;
    ensure(sizes(9) == vec![81, 72, 64], || format!("4.5 pts {:?}", sizes(9)))?;
    ensure(sizes(8) == vec![64], || "static 8".into())?;
    Ok(format!("order kept, max radial error {worst:.3}, typical {typical:.3}; cPk- > 0; ladders exact"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("multiplexing table", c1_multiplexing_table),
        ("redundancy analysis", c2_redundancy),
        ("codec round-trip", c3_codec_roundtrip),
        ("NAP reproduction", c4_nap),
        ("symmetry oracle", c5_symmetries),
        ("balancing", c6_balancing),
        ("sub-scrambler errors", c7_subscrambler),
        ("gain metrics", c8_gains),
        ("CiC matrix", c9_cic),
        ("sphere limits", c10_sphere),
        ("MDI statistics", c11_mdi),
        ("property suite", c12_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
