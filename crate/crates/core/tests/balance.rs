use gbmux::balance::{self, build_catalog, solve, verify, Group};
use gbmux::pam;
use std::time::Instant;

// Table of per-repeat effects: (dH_Y, dH_X, page hits, dH_Z).
const EXPECTED: [(Group, u32, u32, [u32; 8], u32); 7] = [
    (Group::S2, 0, 1, [2, 0, 0, 0, 0, 0, 0, 0], 2),
    (Group::S3, 1, 0, [3, 0, 0, 0, 0, 0, 0, 0], 3),
    (Group::S8, 2, 1, [0, 2, 0, 2, 0, 2, 0, 2], 8),
    (Group::S16, 4, 2, [0, 4, 0, 4, 0, 4, 0, 4], 16),
    (Group::S24Even, 4, 6, [0, 0, 8, 0, 8, 0, 8, 0], 24),
    (Group::S24Ten, 6, 3, [0, 6, 0, 6, 0, 6, 0, 6], 24),
    (Group::S24Odd, 2, 9, [0, 6, 0, 6, 0, 6, 0, 6], 24),
];

#[test]
fn effect_rows_from_raw_points() {
    let cat = build_catalog();
    for (g, dy, dx, pages, dz) in EXPECTED {
        let members: Vec<_> = cat.group(g).collect();
        assert_eq!(members.len(), g.members());
        for s in members {
            // bins counted directly from level values, page from pattern parity table
            let mut bins = [[0u32; 5]; 4];
            let mut ph = [0u32; 8];
            for p in &s.points {
                let l = p.levels();
                for w in 0..4 {
                    bins[w][(l[w] + 2) as usize] += 1;
                }
                let pattern: String = l.iter().map(|v| if v.abs() == 1 { 'X' } else { 'Y' }).collect();
                let page = pam::PAGE_SUBSETS.iter().position(|(a, b)| *a == pattern || *b == pattern).unwrap();
                ph[page] += 1;
            }
            for row in bins {
                assert_eq!([row[0], row[2], row[4]], [dy; 3], "{:?}", g);
                assert_eq!([row[1], row[3]], [dx; 2], "{:?}", g);
            }
            assert_eq!(ph, pages, "{:?}", g);
            assert_eq!(s.points.len() as u32, dz);
        }
    }
}

// Plain enumeration over all seven sums for a small target, no pruning.
fn brute(hz: u64, ne: u64) -> (u64, u64) {
    let page = hz / 8;
    let mut best = (u64::MAX, u64::MAX);
    for s2 in 0..=page / 2 {
        for s3 in 0..=page / 3 {
            if 2 * s2 + 3 * s3 != page || 2 * s2.min(8) + 3 * s3.min(27) < ne {
                continue;
            }
            let s24e = page / 8;
            if 8 * s24e != page || 24 * s24e.min(9) < 3 * ne {
                continue;
            }
            for s8 in 0..=page / 2 {
                for s16 in 0..=page / 4 {
                    for s24t in 0..=page / 6 {
                        for s24o in 0..=page / 6 {
                            if 2 * s8 + 4 * s16 + 6 * s24t + 6 * s24o != page {
                                continue;
                            }
                            if 8 * s8.min(6) + 16 * s16.min(9) + 24 * s24t.min(1) + 24 * s24o.min(4) < 4 * ne {
                                continue;
                            }
                            let hy = s3 + 2 * s8 + 4 * s16 + 4 * s24e + 6 * s24t + 2 * s24o;
                            let hx = s2 + s8 + 2 * s16 + 6 * s24e + 3 * s24t + 9 * s24o;
                            let key = (hy.abs_diff(hx), s2 + s3 + s8 + s16 + s24e + s24t + s24o);
                            best = best.min(key);
                        }
                    }
                }
            }
        }
    }
    best
}

#[test]
fn solver_matches_brute_force() {
    for (hz, ne) in [(576, 72), (640, 72), (768, 64), (512, 40)] {
        let s = solve(hz, ne).unwrap();
        let total: u64 = s.sums.iter().sum();
        assert_eq!((s.unbalance.unsigned_abs(), total), brute(hz, ne), "H_z={hz}");
    }
}

#[test]
fn reported_variants() {
    for (hz, published) in [(576u64, 2u64), (1152, 1), (2304, 2), (4608, 1)] {
        let t = Instant::now();
        let s = solve(hz, 72).unwrap();
        assert!(t.elapsed().as_secs_f64() < 10.0);
        assert!(verify(&s, 72).violations.is_empty(), "{hz}");
        assert!(s.unbalance.unsigned_abs() <= published, "{hz}: {:?}", s);
        assert_eq!(s.h_page, hz / 8);
        println!("{hz}: {:?}", s);
    }
    let s = solve(640, 72).unwrap();
    assert_eq!((s.h_y, s.h_x, s.h_page), (128, 128, 80));
    let s = solve(576, 72).unwrap();
    let v = verify(&s, 72);
    assert!((v.p_y - 116.0 / 576.0).abs() < 0.005);
}

#[test]
fn member_split_is_round_robin() {
    assert_eq!(balance::member_repeats(10, 4), vec![3, 3, 2, 2]);
    assert_eq!(balance::member_repeats(3, 8).iter().sum::<u64>(), 3);
}

#[test]
fn subscrambler_bounds() {
    // (k, base, bound)
    let rows = [(3, 5, 0.40), (4, 5, 0.30), (5, 5, 0.10), (6, 5, 0.07), (4, 9, 0.50), (5, 9, 0.20), (6, 9, 0.15), (7, 9, 0.06)];
    for (k, b, bound) in rows {
        let e = balance::subscrambler_error(k, b).unwrap();
        assert!(e < bound, "k={k} B={b} e={e}");
    }
    for b in [3, 5, 9] {
        let errs: Vec<f64> = (4..30).map(|k| balance::subscrambler_error(k, b).unwrap()).collect();
        assert!(errs.windows(2).all(|w| w[1] <= w[0]));
    }
    assert_eq!(balance::anchor_error(9), 0.0);
}
