//! Acceptance criteria 1–10, one line each.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail in a specific,
//! documented way; any other outcome (including an unexpected pass) makes the
//! target fail.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quadheight::census::{census_ratio, pair_failures, ratio_exceeds, sup_per_class};
use quadheight::scan::{scan_collect, scan_to_csv, ResidueClass, ScanConfig};
use quadheight::verify::sandwich_holds;
use quadheight_core::{
    certificates, decompose_exceptional, is_exceptional, lmin, max_odd_divisor_below_root,
    nonresidue_lmin, nonresidue_lower_bound, oracle_lmin, prime_class_bound, qv_cmp,
    ratio_string, squarefree_sieve, Approx, QuadValue, Rounding, SquarefreeD,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Criterion 2 at d = 83: the printed 0.932966 is 3·10⁻⁵ away from
/// 17/(2√83) = 0.932996…, beyond the 10⁻⁶ tolerance.
const KNOWN_RED: &[(u32, &str)] = &[(2, "d=83")];

struct Verdict {
    failures: Vec<String>,
    note: String,
}

impl Verdict {
    fn new(note: impl Into<String>) -> Self {
        Verdict { failures: Vec::new(), note: note.into() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.check(took <= limit, || format!("took {took:?}, limit {limit:?}"));
    }
}

fn sf(d: u64) -> SquarefreeD {
    SquarefreeD::new(d).expect("square-free")
}

fn qv(d: u64, p: i128, q: i128, den: i128) -> QuadValue {
    QuadValue::new(p, q, den, sf(d)).unwrap()
}

fn dec(s: &str) -> Approx {
    Approx::parse(s).unwrap()
}

fn close(a: &Approx, b: &Approx, tol: &Approx) -> bool {
    (a - b).le_with_slack(&Approx::from_int(0), tol) && (b - a).le_with_slack(&Approx::from_int(0), tol)
}

fn micro() -> Approx {
    Approx::from_ratio(1, 1_000_000)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("appendix values, exact");
    let table: &[(u64, (i128, i128, i128))] = &[
        (293, (17, 0, 1)),
        (173, (13, 0, 1)),
        (53, (7, 0, 1)),
        (29, (5, 0, 1)),
        (437, (19, 1, 2)),
        (1077, (27, 1, 2)),
        // d ≡ 1 mod 4, so ε = ½ applies to √77 + 7.
        (77, (7, 1, 2)),
        (453, (19, 0, 1)),
        (38, (11, 0, 1)),
        (62, (6, 1, 1)),
        (318, (12, 1, 1)),
        (14, (2, 1, 1)),
        (138, (6, 1, 1)),
        (22, (2, 1, 1)),
        (227, (29, 0, 1)),
        (83, (17, 0, 1)),
        (167, (11, 1, 1)),
        (447, (37, 0, 1)),
        (47, (5, 1, 1)),
        (635, (41, 0, 1)),
        (23, (3, 1, 1)),
        (3, (1, 1, 1)),
        (827, (15, 1, 1)),
    ];
    for &(d, (p, q, den)) in table {
        let got = lmin(sf(d)).value;
        let want = qv(d, p, q, den);
        v.check(got == want, || format!("d={d}: got {got}, want {want}"));
    }
    let got = lmin(sf(3053)).value;
    v.check(got == qv(3053, 49, 0, 1), || format!("d=3053: got {got}"));
    let ratio = dec(&ratio_string(&got));
    v.check(close(&ratio, &dec("0.886814"), &micro()), || format!("d=3053 ratio {}", ratio_string(&got)));
    v.within(start, Duration::from_secs(1));
    v
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("printed ratios to 1e-6");
    let printed: &[(u64, &str)] = &[
        (293, "0.993150"),
        (173, "0.988371"),
        (53, "0.961523"),
        (437, "0.954446"),
        (29, "0.928476"),
        (1077, "0.911363"),
        (77, "0.898862"),
        (453, "0.892697"),
        (717, "0.892129"),
        (3053, "0.886814"),
        (398, "0.951129"),
        (38, "0.892217"),
        (62, "0.881000"),
        (318, "0.836463"),
        (14, "0.767261"),
        (138, "0.755376"),
        (22, "0.713200"),
        (227, "0.962398"),
        (83, "0.932966"),
        (167, "0.925602"),
        (447, "0.875019"),
        (47, "0.864662"),
        (635, "0.813517"),
        (23, "0.812771"),
        (3, "0.788675"),
        (827, "0.760800"),
    ];
    for &(d, want) in printed {
        let got = ratio_string(&lmin(sf(d)).value);
        v.check(close(&dec(&got), &dec(want), &micro()), || format!("d={d}: {got} vs printed {want}"));
    }
    v.within(start, Duration::from_secs(1));
    v
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("½√D < L(d) < √D on [2, 10⁴]");
    let records = scan_collect(2, 10_000, 1).unwrap();
    v.check(records.len() == 6082, || format!("{} square-free d", records.len()));
    for rec in &records {
        v.check(sandwich_holds(rec).unwrap(), || format!("d={}", rec.d));
    }
    v.within(start, Duration::from_secs(30));
    v
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("search = brute force on [2, 200]");
    for d in squarefree_sieve(2, 200).iter() {
        let a = lmin(sf(d)).value;
        let b = oracle_lmin(sf(d)).unwrap();
        v.check(a == b, || format!("d={d}: {a} vs {b}"));
    }
    v.within(start, Duration::from_secs(300));
    v
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("census above 0.9; spot window at 10⁹");
    let low = census_ratio(2, 5000, "0.9", 1).unwrap();
    v.check(low == [29, 53, 83, 167, 173, 227, 293, 398, 437, 1077], || format!("[2,5000]: {low:?}"));
    let high = census_ratio(5000, 1_000_000, "0.9", 1).unwrap();
    v.check(high.is_empty(), || format!("[5000,10⁶]: {high:?}"));
    let window = scan_collect(1_000_000_000, 1_000_005_000, 1).unwrap();
    v.check(!window.is_empty(), || "empty window".into());
    for rec in &window {
        v.check(sandwich_holds(rec).unwrap(), || format!("d={}", rec.d));
    }
    v.within(start, Duration::from_secs(30 * 60));
    v
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("pair existence thresholds 827 and 1902773");
    let plain = pair_failures(2, 2_000_000, false, 1).unwrap();
    v.check(plain.last() == Some(&827), || format!("plain failures end at {:?}", plain.last()));
    let even = pair_failures(2, 2_500_000, true, 1).unwrap();
    v.check(even.last() == Some(&1_902_773), || format!("even failures end at {:?}", even.last()));
    v.within(start, Duration::from_secs(20 * 60));
    v
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("non-residue closed form on [2, 10⁴]");
    let mut count = 0;
    for d in squarefree_sieve(2, 10_000).iter() {
        let field = sf(d);
        if !is_exceptional(field) {
            continue;
        }
        count += 1;
        let l = lmin(field).value;
        let formula = nonresidue_lmin(field);
        v.check(formula.as_ref() == Ok(&l), || format!("d={d}: {formula:?} vs {l}"));
        let lower = nonresidue_lower_bound(field, max_odd_divisor_below_root(field));
        v.check(!qv_cmp(&l, &lower).unwrap().is_lt(), || format!("d={d}: below {lower}"));
        let form = decompose_exceptional(field);
        v.check(form.is_ok_and(|f| f.eval() == d as i128), || format!("d={d}: no decomposition"));
    }
    v.check(count == 60, || format!("{count} exceptional d"));
    v.within(start, Duration::from_secs(60));
    v
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("residue-class bounds and suprema");
    let records = scan_collect(2, 10_000, 1).unwrap();
    for rec in &records {
        if rec.d >= 9 && rec.d % 8 == 1 {
            v.check(!ratio_exceeds(&rec.l, 809_017, 1_000_000).unwrap(), || format!("d={} 1 mod 8", rec.d));
        }
        if rec.d >= 4 && rec.d % 3 == 1 {
            v.check(!ratio_exceeds(&rec.l, 891_806, 1_000_000).unwrap(), || format!("d={} 1 mod 3", rec.d));
        }
    }
    for (p, want) in [(3, "0.891805"), (5, "0.956859"), (7, "0.977844"), (13, "0.993713")] {
        let got = prime_class_bound(p);
        v.check(close(&got, &dec(want), &micro()), || {
            format!("p={p}: {}", got.to_decimal(9, Rounding::Truncate))
        });
    }
    let cases = [
        (8, 1, 41, "0.734261"),
        (3, 1, 13, "0.832050"),
        (4, 1, 293, "0.993150"),
        (4, 2, 398, "0.951129"),
        (4, 3, 227, "0.962398"),
    ];
    for (m, r, d, ratio) in cases {
        let class = ResidueClass::new(m, vec![r]).unwrap();
        let sup = sup_per_class(2, 5000, &class, 1).unwrap();
        let rec = &sup[&r];
        v.check(rec.d == d && close(&dec(&rec.ratio), &dec(ratio), &micro()), || {
            format!("{r} mod {m}: d={} ratio {}", rec.d, rec.ratio)
        });
    }
    v.within(start, Duration::from_secs(60));
    v
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("residue certificates on 100 random d in [10⁴, 10⁵]");
    let mut rng = StdRng::seed_from_u64(20240917);
    let slack = Approx::from_ratio(1, 1_000_000_000);
    let mut used = BTreeSet::new();
    while used.len() < 100 {
        let Ok(d) = SquarefreeD::new(rng.random_range(10_000..=100_000)) else {
            continue;
        };
        let certs = match certificates(d) {
            Ok(c) if !c.is_empty() => c,
            Ok(_) => continue,
            Err(e) => {
                v.check(false, || format!("d={d}: {e}"));
                used.insert(d.get());
                continue;
            }
        };
        used.insert(d.get());
        let l = lmin(d).value;
        for c in certs {
            v.check(!qv_cmp(&c.achieved.value, &l).unwrap().is_lt(), || format!("d={d} q={} below L", c.q));
            let ratio = Approx::from_quad(&c.achieved.value.over_sqrt_disc().unwrap());
            v.check(ratio.le_with_slack(&c.bound, &slack), || format!("d={d} q={} above bound", c.q));
        }
    }
    v.within(start, Duration::from_secs(120));
    v
}

fn criterion_10() -> Verdict {
    let start = Instant::now();
    let mut v = Verdict::new("scan CSV determinism and resume");
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: usize, name: &str| {
        let path = dir.path().join(name);
        scan_to_csv(&ScanConfig::new(2, 5000).workers(workers), &path).unwrap();
        fs::read(&path).unwrap()
    };
    let base = run(1, "w1.csv");
    for w in [4, 16] {
        let other = run(w, &format!("w{w}.csv"));
        v.check(other == base, || format!("{w} workers differ"));
    }
    let rows = base.iter().filter(|&&b| b == b'\n').count() as u64 - 1;
    let path = dir.path().join("resumed.csv");
    let ckpt = dir.path().join("resumed.ckpt");
    let mut cfg = ScanConfig::new(2, 5000).workers(4);
    cfg.checkpoint = Some(ckpt.clone());
    cfg.halt_after = Some(rows / 2);
    let first = scan_to_csv(&cfg, &path).unwrap();
    v.check(first.halted, || "scan did not halt".into());
    cfg.halt_after = None;
    scan_to_csv(&cfg, &path).unwrap();
    v.check(fs::read(&path).unwrap() == base, || "resumed output differs".into());
    v.within(start, Duration::from_secs(60));
    v
}

fn main() -> ExitCode {
    let criteria: [fn() -> Verdict; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut unexpected = 0;
    for (i, criterion) in criteria.iter().enumerate() {
        let n = i as u32 + 1;
        let verdict = criterion();
        let known = KNOWN_RED.iter().find(|k| k.0 == n);
        let status = if verdict.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {n:>2} {status}: {}", verdict.note);
        if !verdict.failures.is_empty() {
            line.push_str(&format!(" [{}]", verdict.failures.join("; ")));
        }
        match known {
            Some((_, who)) => {
                let expected = verdict.failures.len() == 1 && verdict.failures[0].starts_with(&format!("{who}:"));
                if expected {
                    line.push_str(" (known, see decisions ledger)");
                } else {
                    unexpected += 1;
                }
            }
            None if !verdict.failures.is_empty() => unexpected += 1,
            None => {}
        }
        println!("{line}");
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria deviate from the expected outcome");
        ExitCode::FAILURE
    }
}
