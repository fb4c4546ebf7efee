//! Acceptance run: one PASS/FAIL line per criterion, then a single assertion
//! so that every line is printed even when an early criterion fails.

use std::time::{Duration, Instant};

use rand::Rng;
use witt_invariants::divided::pi_series;
use witt_invariants::gw::GwElement;
use witt_invariants::sample;
use witt_invariants::verify::{run_suite, Report, RunConfig};

struct Line {
    id: u32,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn cfg(samples: usize, n_max: u32, d_max: u32) -> RunConfig {
    RunConfig { samples, n_max, d_max, ..RunConfig::default() }
}

fn summarize(reports: &[Report]) -> (bool, String) {
    let ok = reports.iter().all(Report::passed);
    let mut parts: Vec<String> =
        reports.iter().map(|r| format!("{} {}/{} failed", r.suite, r.cases_failed, r.cases_total)).collect();
    if let Some(f) = reports.iter().find_map(|r| r.first_failure.as_ref()) {
        parts.push(format!("first failure: {} expected {} got {}", f.inputs, f.expected, f.got));
    }
    (ok, parts.join("; "))
}

fn suites(runs: &[(&str, RunConfig)]) -> (bool, String) {
    let reports: Vec<Report> = runs.iter().map(|(s, c)| run_suite(s, c).expect("known suite")).collect();
    summarize(&reports)
}

/// Elementary symmetric sums of Grothendieck-Pfister elements by subset
/// enumeration, against the divided powers.
fn divided_sum_brute_force() -> (bool, String) {
    let mut rng = sample::rng(3);
    let fields: Vec<_> = (1..=2).flat_map(sample::field_family).collect();
    let (mut cases, mut bad) = (0, Vec::new());
    for i in 0..120 {
        let field = &fields[i % fields.len()];
        let n = rng.gen_range(1..=2);
        let r = rng.gen_range(1..=4);
        let phis: Vec<GwElement> =
            (0..r).map(|_| GwElement::gpfister(field, &sample::slots(field, n, &mut rng)).unwrap()).collect();
        let sum = phis.iter().fold(GwElement::zero(field), |a, p| a.add(p).unwrap());
        let ps = pi_series(n as u32, 4, &sum).unwrap();
        for (d, value) in ps.iter().enumerate() {
            let mut expected = GwElement::zero(field);
            for mask in 0u32..1 << r {
                if mask.count_ones() as usize == d {
                    let term = (0..r)
                        .filter(|i| mask >> i & 1 == 1)
                        .fold(GwElement::one(field), |acc, i| acc.mul(&phis[i]).unwrap());
                    expected = expected.add(&term).unwrap();
                }
            }
            cases += 1;
            if &expected != value {
                bad.push(format!("field={field} n={n} d={d}: expected {expected}, got {value}"));
            }
        }
    }
    (bad.is_empty(), format!("{cases} cases over 120 tuples, {} failed {}", bad.len(), bad.first().cloned().unwrap_or_default()))
}

#[test]
fn acceptance() {
    type Check = Box<dyn Fn() -> (bool, String)>;
    let criteria: Vec<(u32, &str, u64, Check)> = vec![
        (1, "series kernel", 5, Box::new(|| suites(&[("series", RunConfig { prec: 32, n_max: 6, ..cfg(1, 6, 1) })]))),
        (2, "pi vanishing on Grothendieck-Pfister elements", 60, Box::new(|| suites(&[("pi", cfg(200, 3, 5))]))),
        (3, "divided-sum formula vs brute force", 60, Box::new(divided_sum_brute_force)),
        (4, "f-axioms", 60, Box::new(|| suites(&[("f-axioms", cfg(200, 3, 6))]))),
        (5, "g-boundedness and fixed-dimension vanishing", 60, Box::new(|| suites(&[("g-bounds", cfg(200, 3, 6))]))),
        (6, "classification shadow", 60, Box::new(|| suites(&[("classify", cfg(100, 3, 6))]))),
        (7, "product law and parity", 30, Box::new(|| suites(&[("product", cfg(100, 3, 6))]))),
        (8, "restriction", 60, Box::new(|| suites(&[("restrict", cfg(100, 2, 6))]))),
        (9, "similitudes", 60, Box::new(|| suites(&[("simil", cfg(100, 3, 6))]))),
        (10, "ramification", 60, Box::new(|| suites(&[("ram", cfg(100, 3, 6))]))),
        (11, "fixed dimension expansions", 60, Box::new(|| suites(&[("fixed-dim", cfg(60, 1, 8))]))),
        (
            12,
            "α^{++} lemma, descent, divisibility",
            120,
            Box::new(|| suites(&[("coh-ops", cfg(100, 2, 6)), ("delta1", cfg(200, 3, 4))])),
        ),
    ];
    let mut lines = Vec::new();
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let (ok, detail) = check();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(budget);
        lines.push(Line {
            id,
            title,
            ok: ok && in_time,
            detail: format!("{detail}; {:.2}s of {budget}s", elapsed.as_secs_f64()),
        });
    }
    for l in &lines {
        println!("criterion {:>2} {}: {} ({})", l.id, if l.ok { "PASS" } else { "FAIL" }, l.title, l.detail);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.ok).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
