//! One line per acceptance criterion. Criteria listed in
//! `verify::KNOWN_DEVIATIONS` are reported but may fail, and only on the
//! sub-checks recorded here.

use std::process::ExitCode;
use std::time::Instant;

use arquiver::verify::{self, CRITERIA, KNOWN_DEVIATIONS};

/// Sub-checks allowed to fail for a known deviation.
const EXPECTED_FAILURES: &[(usize, &[&str])] =
    &[(3, &["[FAILED] quiver equals the restriction of FIX-A23", "[FAILED] dim B = 62 built, 64 from the fixture"])];

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    let start = Instant::now();
    for c in CRITERIA {
        let t = Instant::now();
        let o = verify::run_one(c.id).expect("criterion exists");
        println!("{o}  ({:.2?})", t.elapsed());
        if o.passed {
            continue;
        }
        let failed: Vec<&String> = o.details.iter().filter(|d| d.starts_with("[FAILED]")).collect();
        for d in &failed {
            println!("    {d}");
        }
        let known = KNOWN_DEVIATIONS.iter().any(|(id, _)| *id == o.id);
        let allowed = EXPECTED_FAILURES.iter().find(|(id, _)| *id == o.id).map(|(_, a)| *a).unwrap_or(&[]);
        let explained = failed.iter().all(|d| allowed.iter().any(|p| d.starts_with(p)));
        if known && explained {
            println!("    known deviation, recorded");
        } else {
            unexpected.push(o.id);
        }
    }
    println!("acceptance finished in {:.2?}", start.elapsed());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
