//! Runs the default verification suite on all available cores.

use csg::harness::{default_suite, run_suite};

fn main() {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let reports = run_suite(&default_suite(), jobs);
    for r in &reports {
        println!("{r}");
    }
    if reports.iter().any(|r| !r.passed()) {
        std::process::exit(1);
    }
}
