//! Run a couple of the verification suites and print their reports.

use tbi::verify::{run_suite, Suite, SuiteOptions};

fn main() -> tbi::Result<()> {
    let opts = SuiteOptions { primes: vec![3], max: 1, seed: 1 };
    for suite in [Suite::RegularFreeness, Suite::DetectRoundtrip] {
        print!("{}", run_suite(suite, &opts)?.to_markdown());
    }
    Ok(())
}
