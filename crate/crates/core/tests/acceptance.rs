//! Runs the twelve acceptance criteria at their full ranges and prints one
//! line per criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use nilcomm::verify::{Suite, VerifyConfig, CRITERIA};

fn main() -> ExitCode {
    let suite = Suite::new(VerifyConfig::default());
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let o = suite.run(id);
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {mark} {} ({:.1}s): {}",
            o.id,
            o.title,
            start.elapsed().as_secs_f64(),
            o.detail
        );
        failed += usize::from(!o.passed);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
