//! One line per acceptance criterion. Tolerances: every comparison is exact
//! equality over the rationals; time budgets are the wall-clock limits below.

mod common;

use std::time::{Duration, Instant};

use common::*;
use latvoa::autos::{self, verify_images, verify_relations};
use latvoa::chars::{verify_display, verify_theorem, DisplayId};
use latvoa::conformal::{build_omega_i, conformal_suite, is_conformal};
use latvoa::hwv::{census_vs_theorem, hw_census};
use latvoa::lattice::{lattice_facts, theta_series};
use latvoa::report::Report;
use latvoa::{Coord, NamedLattice, Q};

const DENOM: i64 = 30;

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_reports(reports: &[Report]) -> Outcome {
    let failures: Vec<String> = reports.iter().flat_map(|r| r.failures().map(|c| c.to_string())).collect();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() { format!("{checks} checks") } else { failures.join("; ") },
    }
}

fn run(n: u32, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            out.pass = false;
            out.detail = format!("{}; over the {:?} budget", out.detail, b);
        }
    }
    println!(
        "{} criterion {n} {name}: {} ({:.2} s)",
        if out.pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64()
    );
    out.pass
}

fn c(n: i64, d: i64) -> Coord {
    Coord::new(n, d)
}

fn lattice_facts_criterion() -> Outcome {
    from_reports(&[lattice_facts().unwrap()])
}

fn conformal_suite_criterion() -> Outcome {
    from_reports(&[conformal_suite::<Q>().unwrap()])
}

fn virasoro_commutators_criterion() -> Outcome {
    let mut r = Report::new("virasoro");
    for i in 1..=4 {
        let v = build_omega_i::<Q>(i).unwrap();
        r.push(is_conformal(&format!("omega^{i}"), &v, Coord::from_integer(4), 2).unwrap().as_check());
    }
    from_reports(&[r])
}

fn automorphism_criterion() -> Outcome {
    from_reports(&[verify_relations::<Q>(Coord::from_integer(4)).unwrap()])
}

fn images_criterion() -> Outcome {
    from_reports(&[verify_images::<Q>().unwrap()])
}

fn displays_criterion() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for id in DisplayId::ALL {
        let want = if id == DisplayId::FModules { 20 } else { 12 };
        assert_eq!(id.default_order(), Coord::from_integer(want));
        for r in verify_display::<Q>(id, Coord::from_integer(want), DENOM).unwrap() {
            count += 1;
            if !r.pass {
                bad.push(r.to_string());
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && count == 11,
        detail: if bad.is_empty() { format!("{count} identities") } else { bad.join("; ") },
    }
}

fn theorem_criterion() -> Outcome {
    let t = verify_theorem::<Q>(Coord::from_integer(15), DENOM).unwrap();
    let leading = t.leading == ["1", "3", "21"];
    Outcome {
        pass: t.identity.pass && leading,
        detail: format!("{}; q^0, q^1, q^2 coefficients {}", t.identity, t.leading.join(", ")),
    }
}

fn census_criterion() -> Outcome {
    let census = hw_census::<Q>(2).unwrap();
    let at = |w: i64| -> Vec<[Coord; 4]> {
        census.iter().filter(|t| t.weight == Coord::from_integer(w)).map(|t| t.h).collect()
    };
    let z = c(0, 1);
    let mut w1 = vec![[z, z, c(2, 3), c(1, 3)], [z, c(3, 5), c(1, 15), c(1, 3)], [c(1, 2), c(1, 10), c(1, 15), c(1, 3)]];
    let mut w2 = vec![
        [z, c(3, 5), c(7, 5), z],
        [c(1, 2), c(1, 10), c(7, 5), z],
        [c(1, 2), c(3, 2), z, z],
        [z, c(3, 5), c(2, 5), c(1, 1)],
        [c(1, 2), c(1, 10), c(2, 5), c(1, 1)],
        [z, z, c(2, 3), c(4, 3)],
        [z, c(3, 5), c(1, 15), c(4, 3)],
        [c(1, 2), c(1, 10), c(1, 15), c(4, 3)],
    ];
    w1.sort();
    w2.sort();
    let exact = at(0) == vec![[z; 4]] && at(1) == w1 && at(2) == w2;
    let simple = census.iter().all(|t| t.multiplicity == 1);
    let report = census_vs_theorem::<Q>(2).unwrap();
    let dims: Vec<String> = report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("descendants"))
        .filter_map(|c| c.detail.clone())
        .collect();
    let bookkeeping = report.pass() && dims.len() == 3;
    Outcome {
        pass: exact && simple && bookkeeping,
        detail: format!(
            "1 + 3 + 8 tuples {}, multiplicities {}, {}",
            if exact { "as listed" } else { "DIFFER" },
            if simple { "all 1" } else { "not all 1" },
            dims.join(" / ")
        ),
    }
}

fn property_criterion() -> Outcome {
    let mut notes = Vec::new();
    let grading = cfg!(debug_assertions);
    notes.push(format!("grading assertion {}", if grading { "on" } else { "OFF" }));

    let l = coset(NamedLattice::L);
    let mut r = rng(20240);
    let mut borcherds_ok = 0;
    for k in 0..50 {
        let (u, v, w) = (random_element(&mut r, &l, 2), random_element(&mut r, &l, 2), random_element(&mut r, &l, 2));
        let (m, n) = (k % 6 - 3, k / 6 % 6 - 3);
        if borcherds_defect(&u, &v, &w, m, n).is_zero() {
            borcherds_ok += 1;
        }
    }
    notes.push(format!("Borcherds {borcherds_ok}/50"));

    let gens = [autos::tau::<Q>().unwrap(), autos::rho().unwrap(), autos::psi1(), autos::psi2(), autos::phi()];
    let mut mult_ok = 0;
    for k in 0..50 {
        let (u, v) = (random_element(&mut r, &l, 2), random_element(&mut r, &l, 2));
        if multiplicativity_defect(&gens[k % gens.len()], &u, &v, (k % 5) as i32 - 3).is_zero() {
            mult_ok += 1;
        }
    }
    notes.push(format!("multiplicativity {mult_ok}/50"));

    let mut theta_ok = true;
    for (_, cs) in all_cosets() {
        let s = theta_series::<Q>(&cs, Coord::from_integer(10), DENOM).unwrap();
        let counts = brute_force_theta(&cs, 10, 8);
        let total: i128 = counts.values().map(|&k| k as i128).sum();
        let series_total: Q = s.terms().map(|(_, k)| *k).sum();
        theta_ok &= series_total == Q::from_integer(total)
            && counts.iter().all(|(e, k)| s.coeff(*e) == Q::from_integer(*k as i128));
    }
    notes.push(format!("theta cross-count to q^10 {}", if theta_ok { "agrees" } else { "DIFFERS" }));

    Outcome { pass: grading && borcherds_ok == 50 && mult_ok == 50 && theta_ok, detail: notes.join(", ") }
}

#[test]
fn acceptance() {
    let sec = Duration::from_secs;
    let results = [
        run(1, "lattice facts", Some(sec(1)), lattice_facts_criterion),
        run(2, "conformal suite", Some(sec(60)), conformal_suite_criterion),
        run(3, "virasoro commutators on weight <= 4", Some(sec(300)), virasoro_commutators_criterion),
        run(4, "automorphism identities on weight <= 4", None, automorphism_criterion),
        run(5, "images of the conformal vectors", None, images_criterion),
        run(6, "character displays", None, displays_criterion),
        run(7, "main decomposition to q^15", Some(sec(60)), theorem_criterion),
        run(8, "highest-weight census", Some(sec(600)), census_criterion),
        run(9, "property suites", None, property_criterion),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria pass", results.len());
    assert_eq!(passed, results.len());
}
